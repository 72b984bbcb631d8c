//! Scalars over K = R or C.
//!
//! Three backends are provided:
//!
//! * [`Backend::Rational`]: arbitrary-precision rationals in lowest terms.
//! * [`Backend::Gaussian`]: pairs of rationals `re + im·i`.
//! * [`Backend::Float`]: binary64 complex values (imaginary part zero for reals),
//!   compared with a caller-declared absolute tolerance.
//!
//! Magnitudes of Gaussian values are never square-rooted: they are carried as
//! the squared modulus, which is a rational and compares exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Gaussian,
    Float,
}

impl Backend {
    pub fn is_exact(self) -> bool {
        !matches!(self, Backend::Float)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Gaussian => "gaussian",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Backend::Rational),
            "gaussian" => Ok(Backend::Gaussian),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Binary64 complex value; `im == 0.0` for real inputs.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

impl Approx {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(Gaussian),
    Float(Approx),
}

impl Scalar {
    pub fn zero(backend: Backend) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(Rational::zero()),
            Backend::Gaussian => Scalar::Gaussian(Gaussian::new(Rational::zero(), Rational::zero())),
            Backend::Float => Scalar::Float(Approx { re: 0.0, im: 0.0 }),
        }
    }

    /// Embeds an exact rational into `backend`.
    pub fn from_rational(q: Rational, backend: Backend) -> Scalar {
        match backend {
            Backend::Rational => Scalar::Rational(q),
            Backend::Gaussian => Scalar::Gaussian(Gaussian::new(q, Rational::zero())),
            Backend::Float => Scalar::Float(Approx {
                re: rational_to_f64(&q),
                im: 0.0,
            }),
        }
    }

    pub fn from_integer(k: i64, backend: Backend) -> Scalar {
        Scalar::from_rational(int(k), backend)
    }

    pub fn gaussian(re: Rational, im: Rational) -> Scalar {
        Scalar::Gaussian(Gaussian::new(re, im))
    }

    pub fn float(re: f64) -> Scalar {
        Scalar::Float(Approx { re, im: 0.0 })
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Gaussian(_) => Backend::Gaussian,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(z) => z.re.is_zero() && z.im.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(Gaussian::new(&a.re + &b.re, &a.im + &b.im)),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(Approx {
                re: a.re + b.re,
                im: a.im + b.im,
            }),
            _ => return Err(Error::MixedBackends(self.backend(), other.backend())),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Gaussian(z) => Scalar::Gaussian(Gaussian::new(-&z.re, -&z.im)),
            Scalar::Float(z) => Scalar::Float(Approx { re: -z.re, im: -z.im }),
        }
    }

    /// Multiplies by a machine integer. Exact on exact backends.
    pub fn mul_int(&self, k: i64) -> Scalar {
        let k_big = BigInt::from(k);
        match self {
            Scalar::Rational(q) => Scalar::Rational(q * &k_big),
            Scalar::Gaussian(z) => Scalar::Gaussian(Gaussian::new(&z.re * &k_big, &z.im * &k_big)),
            Scalar::Float(z) => Scalar::Float(Approx {
                re: z.re * k as f64,
                im: z.im * k as f64,
            }),
        }
    }

    /// Returns `λ·z`; exact on exact backends, `λ` is rounded to binary64 on
    /// the float backend.
    pub fn scale_by_rational(&self, lambda: &Rational) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q * lambda),
            Scalar::Gaussian(z) => Scalar::Gaussian(Gaussian::new(&z.re * lambda, &z.im * lambda)),
            Scalar::Float(z) => {
                let l = rational_to_f64(lambda);
                Scalar::Float(Approx {
                    re: z.re * l,
                    im: z.im * l,
                })
            }
        }
    }

    pub fn magnitude(&self) -> Magnitude {
        match self {
            Scalar::Rational(q) => Magnitude::Abs(q.abs()),
            Scalar::Gaussian(z) => Magnitude::Squared(z.norm_sqr()),
            Scalar::Float(z) => Magnitude::Float(z.abs()),
        }
    }

    /// Total order used to lay sums out canonically: numeric order for reals,
    /// lexicographic `(re, im)` for complex values.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)),
            (Scalar::Float(a), Scalar::Float(b)) => a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)),
            _ => self.backend().cmp(&other.backend()),
        }
    }

    /// Exact real and imaginary parts, when the backend is exact.
    pub fn exact_parts(&self) -> Option<(Rational, Rational)> {
        match self {
            Scalar::Rational(q) => Some((q.clone(), Rational::zero())),
            Scalar::Gaussian(z) => Some((z.re.clone(), z.im.clone())),
            Scalar::Float(_) => None,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => a == b,
            (Scalar::Rational(a), Scalar::Gaussian(b)) | (Scalar::Gaussian(b), Scalar::Rational(a)) => {
                b.im.is_zero() && &b.re == a
            }
            (Scalar::Float(a), Scalar::Float(b)) => a.re == b.re && a.im == b.im,
            _ => false,
        }
    }
}

/// Compares `|u|` with `|v|`. Exact backends compare squared moduli as
/// rationals; no square root is ever taken.
pub fn mag_compare(u: &Scalar, v: &Scalar) -> Result<Ordering> {
    if u.backend() != v.backend() {
        return Err(Error::MixedBackends(u.backend(), v.backend()));
    }
    u.magnitude().try_cmp(&v.magnitude())
}

/// Magnitude of a scalar.
///
/// `Abs` holds `|x|` for real rationals, `Squared` holds `|z|²` for Gaussian
/// rationals, `Float` holds the binary64 modulus.
#[derive(Clone, Debug, PartialEq)]
pub enum Magnitude {
    Abs(Rational),
    Squared(Rational),
    Float(f64),
}

impl Magnitude {
    pub fn is_squared(&self) -> bool {
        matches!(self, Magnitude::Squared(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Magnitude::Abs(q) | Magnitude::Squared(q) => q.is_zero(),
            Magnitude::Float(x) => *x == 0.0,
        }
    }

    pub fn try_cmp(&self, other: &Magnitude) -> Result<Ordering> {
        match (self, other) {
            (Magnitude::Abs(a), Magnitude::Abs(b)) | (Magnitude::Squared(a), Magnitude::Squared(b)) => Ok(a.cmp(b)),
            (Magnitude::Float(a), Magnitude::Float(b)) => Ok(a.total_cmp(b)),
            _ => Err(Error::Internal("comparing magnitudes of different kinds".into())),
        }
    }

    /// Divides the underlying length by `h` (by `h²` in squared form).
    pub fn div_len(&self, h: u32) -> Magnitude {
        let h_big = BigInt::from(h);
        match self {
            Magnitude::Abs(q) => Magnitude::Abs(q / &h_big),
            Magnitude::Squared(q) => Magnitude::Squared(q / (&h_big * &h_big)),
            Magnitude::Float(x) => Magnitude::Float(x / h as f64),
        }
    }

    /// Multiplies the underlying length by `|λ|` (by `λ²` in squared form).
    pub fn scale_len(&self, lambda: &Rational) -> Magnitude {
        match self {
            Magnitude::Abs(q) => Magnitude::Abs(q * lambda.abs()),
            Magnitude::Squared(q) => Magnitude::Squared(q * lambda * lambda),
            Magnitude::Float(x) => Magnitude::Float(x * rational_to_f64(lambda).abs()),
        }
    }

    /// The length of a non-negative rational `q`, in the same form as `self`.
    pub fn like(&self, q: &Rational) -> Magnitude {
        match self {
            Magnitude::Abs(_) => Magnitude::Abs(q.abs()),
            Magnitude::Squared(_) => Magnitude::Squared(q * q),
            Magnitude::Float(_) => Magnitude::Float(rational_to_f64(q).abs()),
        }
    }

    /// A rational `r` with `0 < r ≤` the underlying length, equal to it
    /// whenever the length is rational. Exact forms only.
    pub fn rational_lower_bound(&self) -> Option<Rational> {
        match self {
            Magnitude::Abs(q) => Some(q.clone()),
            Magnitude::Squared(q) => Some(sqrt_lower_bound(q)),
            Magnitude::Float(_) => None,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Abs(q) | Magnitude::Squared(q) => write_rational(f, q),
            Magnitude::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Largest-available rational not exceeding `√q`: exact when `q` is the
/// square of a rational, otherwise a dyadic lower bound with at least 64
/// fractional bits. Positive whenever `q` is.
pub fn sqrt_lower_bound(q: &Rational) -> Rational {
    if !q.is_positive() {
        return Rational::zero();
    }
    let (num, den) = (q.numer(), q.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        return Rational::new(rn, rd);
    }
    let mut bits = 64u32;
    loop {
        let scale = BigInt::one() << (2 * bits);
        let root = ((num * &scale) / den).sqrt();
        if root.is_positive() {
            return Rational::new(root, BigInt::one() << bits);
        }
        bits += 64;
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Formats a rational in the scalar grammar (`p` or `p/q`).
pub fn format_rational(q: &Rational) -> String {
    struct W<'a>(&'a Rational);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_rational(f, self.0)
        }
    }
    W(q).to_string()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write_rational(f, q),
            Scalar::Gaussian(z) => {
                write_rational(f, &z.re)?;
                if !z.im.is_zero() {
                    f.write_str(if z.im.is_negative() { "-" } else { "+" })?;
                    write_rational(f, &z.im.abs())?;
                    f.write_str("i")?;
                }
                Ok(())
            }
            Scalar::Float(z) => {
                write!(f, "{}", z.re)?;
                if z.im != 0.0 {
                    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
                    write!(f, "{sign}{}i", z.im.abs())?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A real literal: its exact value plus the source span, so the float
/// backend can round decimals directly from text.
struct RealToken<'a> {
    value: Rational,
    text: &'a str,
    is_ratio: bool,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn syntax(&self, reason: &'static str) -> Error {
        Error::Syntax {
            text: self.src.to_string(),
            reason,
        }
    }

    fn real(&mut self) -> Result<RealToken<'a>> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let whole = self.digits();
        if whole.is_empty() {
            return Err(self.syntax("expected digits"));
        }
        let mut numer: BigInt = whole.parse().expect("digit string");
        let mut denom = BigInt::one();
        let mut is_ratio = false;
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                let frac = self.digits();
                if frac.is_empty() {
                    return Err(self.syntax("expected digits after '.'"));
                }
                denom = BigInt::from(10u32).pow(frac.len() as u32);
                numer = numer * &denom + frac.parse::<BigInt>().expect("digit string");
            }
            Some(b'/') => {
                self.pos += 1;
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.syntax("expected denominator"));
                }
                if d.bytes().all(|b| b == b'0') {
                    return Err(Error::ZeroDenominator(self.src.to_string()));
                }
                if d.starts_with('0') {
                    return Err(self.syntax("denominator has a leading zero"));
                }
                denom = d.parse().expect("digit string");
                is_ratio = true;
            }
            _ => {}
        }
        if negative {
            numer = -numer;
        }
        Ok(RealToken {
            value: Rational::new(numer, denom),
            text: &self.src[start..self.pos],
            is_ratio,
        })
    }
}

fn token_to_f64(tok: &RealToken<'_>, src: &str) -> Result<f64> {
    let x = if tok.is_ratio {
        rational_to_f64(&tok.value)
    } else {
        tok.text.parse::<f64>().map_err(|_| Error::Syntax {
            text: src.to_string(),
            reason: "not a binary64 literal",
        })?
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Syntax {
            text: src.to_string(),
            reason: "value out of binary64 range",
        })
    }
}

/// Parses `text` under the scalar grammar into `backend`.
///
/// ```text
/// int     := [-]?[0-9]+
/// dec     := int "." [0-9]+
/// rat     := int "/" [1-9][0-9]*
/// real    := int | dec | rat
/// complex := real (("+" | "-") (real)? "i")?
/// ```
///
/// Decimals become exact rationals on exact backends. An imaginary part is
/// rejected by the rational backend.
pub fn parse_scalar(text: &str, backend: Backend) -> Result<Scalar> {
    let mut cur = Cursor { src: text, pos: 0 };
    let re = cur.real()?;
    let mut im: Option<RealToken<'_>> = None;
    let mut im_negative = false;
    if let Some(sign) = cur.peek() {
        if sign != b'+' && sign != b'-' {
            return Err(cur.syntax("unexpected character"));
        }
        im_negative = sign == b'-';
        cur.pos += 1;
        let tok = if cur.peek() == Some(b'i') {
            RealToken {
                value: Rational::one(),
                text: "1",
                is_ratio: false,
            }
        } else {
            cur.real()?
        };
        if cur.peek() != Some(b'i') {
            return Err(cur.syntax("expected 'i'"));
        }
        cur.pos += 1;
        if cur.pos != text.len() {
            return Err(cur.syntax("trailing characters"));
        }
        im = Some(tok);
    }

    match backend {
        Backend::Rational => {
            if im.is_some() {
                return Err(cur.syntax("imaginary part under the rational backend"));
            }
            Ok(Scalar::Rational(re.value))
        }
        Backend::Gaussian => {
            let im_value = match im {
                Some(tok) if im_negative => -tok.value,
                Some(tok) => tok.value,
                None => Rational::zero(),
            };
            Ok(Scalar::gaussian(re.value, im_value))
        }
        Backend::Float => {
            let re_f = token_to_f64(&re, text)?;
            let im_f = match im {
                Some(tok) => {
                    let v = token_to_f64(&tok, text)?;
                    if im_negative {
                        -v
                    } else {
                        v
                    }
                }
                None => 0.0,
            };
            Ok(Scalar::Float(Approx { re: re_f, im: im_f }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::Rational(ratio(p, d))
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_scalar("1/3", Backend::Rational).unwrap(), q(1, 3));
        assert_eq!(parse_scalar("-2.50", Backend::Rational).unwrap(), q(-5, 2));
        assert_eq!(parse_scalar("2.5", Backend::Rational).unwrap(), q(5, 2));
        assert_eq!(
            parse_scalar("1/2+3/4i", Backend::Gaussian).unwrap(),
            Scalar::gaussian(ratio(1, 2), ratio(3, 4))
        );
        assert_eq!(
            parse_scalar("0-i", Backend::Gaussian).unwrap(),
            Scalar::gaussian(int(0), int(-1))
        );
        assert_eq!(parse_scalar("6/4", Backend::Rational).unwrap(), q(3, 2));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "", "-", "1.", ".5", "1/", "1/05", "1 ", "1+2", "1+2j", "i", "1e5", "1+2i3",
        ] {
            assert!(
                matches!(parse_scalar(bad, Backend::Gaussian), Err(Error::Syntax { .. })),
                "{bad:?}"
            );
        }
        assert_eq!(
            parse_scalar("3/0", Backend::Rational),
            Err(Error::ZeroDenominator("3/0".into()))
        );
        assert!(parse_scalar("1+1i", Backend::Rational).is_err());
    }

    #[test]
    fn float_backend_rounds_from_text() {
        let x = parse_scalar("0.1", Backend::Float).unwrap();
        assert_eq!(x, Scalar::float(0.1));
        let y = parse_scalar("1/3", Backend::Float).unwrap();
        assert_eq!(y, Scalar::float(1.0 / 3.0));
    }

    #[test]
    fn gaussian_with_zero_imaginary_equals_rational() {
        let g = parse_scalar("7/2+0i", Backend::Gaussian).unwrap();
        assert_eq!(g, q(7, 2));
        assert_eq!(q(7, 2), g);
        assert_ne!(parse_scalar("7/2+1i", Backend::Gaussian).unwrap(), q(7, 2));
    }

    #[test]
    fn magnitude_comparisons() {
        let a = Scalar::gaussian(int(3), int(4));
        let b = Scalar::gaussian(int(5), int(0));
        assert_eq!(mag_compare(&a, &b).unwrap(), Ordering::Equal);
        assert_eq!(mag_compare(&q(-2, 1), &q(3, 2)).unwrap(), Ordering::Greater);
        assert_eq!(mag_compare(&q(0, 1), &q(1, 1_000_000_000)).unwrap(), Ordering::Less);
        assert_eq!(
            mag_compare(&q(1, 1), &Scalar::float(1.0)),
            Err(Error::MixedBackends(Backend::Rational, Backend::Float))
        );
    }

    #[test]
    fn scaling() {
        assert_eq!(q(9, 1).scale_by_rational(&ratio(1, 36)), q(1, 4));
        assert_eq!(
            Scalar::gaussian(int(1), int(1)).scale_by_rational(&ratio(1, 2)),
            Scalar::gaussian(ratio(1, 2), ratio(1, 2))
        );
        assert!(q(0, 1).scale_by_rational(&ratio(-7, 3)).is_zero());
    }

    #[test]
    fn sqrt_bounds() {
        assert_eq!(sqrt_lower_bound(&ratio(9, 4)), ratio(3, 2));
        let two = int(2);
        let r = sqrt_lower_bound(&two);
        assert!(&r * &r < two);
        assert!(r > ratio(14142, 10000));
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 300);
        let r = sqrt_lower_bound(&(&tiny * int(2)));
        assert!(r.is_positive() && &r * &r <= &tiny * int(2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(p, d)| ratio(p, d))
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            arb_rational().prop_map(Scalar::Rational),
            (arb_rational(), arb_rational()).prop_map(|(a, b)| Scalar::gaussian(a, b)),
        ]
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(s in arb_scalar()) {
            let back = parse_scalar(&s.to_string(), s.backend()).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn float_format_round_trips(x in -1e12f64..1e12, y in -1e6f64..1e6) {
            let s = Scalar::Float(Approx { re: x, im: y });
            let back = parse_scalar(&s.to_string(), Backend::Float).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn exact_addition_associates(a in arb_rational(), b in arb_rational(), c in arb_rational(), k in 0i64..8) {
            let (a, b, c) = (Scalar::Rational(a), Scalar::Rational(b), Scalar::Rational(c));
            let left = a.try_add(&b).unwrap().try_add(&c).unwrap();
            let right = a.try_add(&b.try_add(&c).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            let mut repeated = Scalar::zero(Backend::Rational);
            for _ in 0..k {
                repeated = repeated.try_add(&a).unwrap();
            }
            prop_assert_eq!(a.mul_int(k), repeated);
        }

        #[test]
        fn mag_compare_agrees_with_squared_moduli(u in arb_scalar(), v in arb_scalar()) {
            let (u, v) = match (u, v) {
                (Scalar::Rational(a), Scalar::Rational(b)) => (Scalar::Rational(a), Scalar::Rational(b)),
                (u, v) => (to_gaussian(u), to_gaussian(v)),
            };
            let squared = |s: &Scalar| {
                let (re, im) = s.exact_parts().unwrap();
                &re * &re + &im * &im
            };
            prop_assert_eq!(mag_compare(&u, &v).unwrap(), squared(&u).cmp(&squared(&v)));
        }
    }

    fn to_gaussian(s: Scalar) -> Scalar {
        let (re, im) = s.exact_parts().unwrap();
        Scalar::gaussian(re, im)
    }
}
