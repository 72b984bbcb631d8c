//! B_h verdicts, the separation margin Δ, openness certificates and the
//! U/V split of colliding and non-colliding composition pairs.
//!
//! For a B_h-vector `a` every pair of distinct compositions has distinct sums,
//! and `Δ = min |x·a − y·a|` over such pairs is positive. A perturbation `b`
//! moves `(x − y)·a` by `|(x − y)·b| ≤ ‖x − y‖₁ ‖b‖∞`, and `‖x − y‖₁` reaches
//! `2h` when the supports are disjoint (only `‖x − y‖∞` is bounded by `h`).
//! So the certified radius is `Δ/(2h)`. The radius `Δ/h` is too large in
//! general: `(5, 7)` has Δ = 2 for h = 1, yet `(6, 6)` is at distance 1.

use std::cmp::Ordering;

use crate::closest_pair::closest_pair_sq;
use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::scalar::{Backend, Magnitude, Rational, Scalar};
use crate::sumset::{build_profile, RepresentationProfile, Tolerance, VectorKn};

#[derive(Clone, Debug, PartialEq)]
pub struct BhVerdict {
    pub is_bh: bool,
    pub has_distinct_coords: bool,
    /// First colliding pair `(x, y)` in canonical order, `x` before `y`.
    pub collision_witness: Option<(Composition, Composition)>,
}

/// Proof that the open ∞-ball of radius `Δ/(2h)` around `vector` consists of
/// B_h-vectors. On the Gaussian backend both fields are squared.
#[derive(Clone, Debug, PartialEq)]
pub struct BhCertificate {
    pub delta: Magnitude,
    pub radius: Magnitude,
    pub h: u32,
    pub n: usize,
    pub vector: VectorKn,
}

impl BhCertificate {
    pub fn is_squared(&self) -> bool {
        self.delta.is_squared()
    }

    /// Whether `c` lies in the certified open ball.
    pub fn contains(&self, c: &VectorKn) -> Result<bool> {
        let dist = c.sub(&self.vector)?.inf_norm();
        Ok(dist.try_cmp(&self.radius)? == Ordering::Less)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UVPartition {
    /// `min |(x − y)·a|` over pairs with unequal sums (squared for Gaussians).
    pub delta_u: Magnitude,
    /// Every pair with equal sums, `x` canonically before `y`, sorted.
    pub v_pairs: Vec<(Composition, Composition)>,
    pub u_nonempty: bool,
}

/// Decides whether `a` is a B_h-vector.
///
/// Repeated coordinates fail immediately with witness `(h·e_i, h·e_j)` for the
/// first equal pair `i < j`; otherwise the witness is the first colliding
/// pair in canonical order.
pub fn is_bh(a: &VectorKn, h: u32, tol: Tolerance) -> Result<BhVerdict> {
    analyze(a, h, tol).map(|(verdict, _)| verdict)
}

fn analyze(a: &VectorKn, h: u32, tol: Tolerance) -> Result<(BhVerdict, Option<RepresentationProfile>)> {
    tol.check_for(a.backend())?;
    if h == 0 {
        return Err(Error::InvalidShape { h, n: a.n() });
    }
    if let Some((i, j)) = a.first_repeated_pair(tol) {
        let witness = (
            Composition::concentrated(h, a.n(), i),
            Composition::concentrated(h, a.n(), j),
        );
        let verdict = BhVerdict {
            is_bh: false,
            has_distinct_coords: false,
            collision_witness: Some(witness),
        };
        return Ok((verdict, None));
    }
    let profile = build_profile(a, h, tol)?;
    let witness = profile
        .entries
        .iter()
        .filter(|e| e.reps.len() > 1)
        .min_by(|e, f| e.reps[0].canonical_cmp(&f.reps[0]))
        .map(|e| (e.reps[0].clone(), e.reps[1].clone()));
    let verdict = BhVerdict {
        is_bh: witness.is_none(),
        has_distinct_coords: true,
        collision_witness: witness,
    };
    Ok((verdict, Some(profile)))
}

/// `Δ = min |x·a − y·a|` over distinct compositions.
///
/// Real sums: smallest gap between neighbours after sorting. Gaussian sums:
/// closest pair of points in the plane, compared on exact squared distances,
/// so the result is `Δ²`. The float backend yields an approximate value.
pub fn margin(a: &VectorKn, h: u32) -> Result<Magnitude> {
    let (verdict, profile) = analyze(a, h, Tolerance::EXACT)?;
    if !verdict.is_bh {
        return Err(Error::NotBh { h });
    }
    let profile = profile.expect("profile is built for distinct coordinates");
    min_gap(&profile).ok_or(Error::NoDistinctPairs)
}

/// Certifies the open ball of radius `Δ/(2h)` (`Δ²/4h²` for Gaussians) around
/// a B_h-vector. Exact backends only.
pub fn certify(a: &VectorKn, h: u32) -> Result<BhCertificate> {
    if !a.backend().is_exact() {
        return Err(Error::NotExact(a.backend()));
    }
    let delta = margin(a, h)?;
    let radius = certified_radius(&delta, h);
    Ok(BhCertificate {
        delta,
        radius,
        h,
        n: a.n(),
        vector: a.clone(),
    })
}

/// `Δ/(2h)`, or its square when `delta` is squared.
pub fn certified_radius(delta: &Magnitude, h: u32) -> Magnitude {
    delta.div_len(h).div_len(2)
}

/// Splits the distinct composition pairs into U (unequal sums) and V (equal
/// sums). Exact backends only.
pub fn uv_partition(a: &VectorKn, h: u32) -> Result<UVPartition> {
    let profile = exact_profile(a, h)?;
    let delta_u = min_gap(&profile).ok_or(Error::Degenerate)?;
    let mut v_pairs: Vec<(Composition, Composition)> = profile
        .entries
        .iter()
        .flat_map(|e| {
            e.reps
                .iter()
                .enumerate()
                .flat_map(move |(i, x)| e.reps[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        })
        .collect();
    v_pairs.sort_by(|p, q| p.0.canonical_cmp(&q.0).then_with(|| p.1.canonical_cmp(&q.1)));
    Ok(UVPartition {
        delta_u,
        v_pairs,
        u_nonempty: true,
    })
}

/// Δ_U alone, without listing V.
pub(crate) fn delta_u(a: &VectorKn, h: u32) -> Result<Magnitude> {
    min_gap(&exact_profile(a, h)?).ok_or(Error::Degenerate)
}

fn exact_profile(a: &VectorKn, h: u32) -> Result<RepresentationProfile> {
    if !a.backend().is_exact() {
        return Err(Error::NotExact(a.backend()));
    }
    if a.n() < 2 {
        return Err(Error::Degenerate);
    }
    build_profile(a, h, Tolerance::EXACT)
}

/// Minimum distance between distinct sum values of `profile`, or `None` when
/// fewer than two values exist.
fn min_gap(profile: &RepresentationProfile) -> Option<Magnitude> {
    let values: Vec<&Scalar> = profile.entries.iter().map(|e| &e.value).collect();
    if values.len() < 2 {
        return None;
    }
    match profile.backend {
        Backend::Rational => values
            .windows(2)
            .map(|w| w[1].try_sub(w[0]).expect("uniform backend").magnitude())
            .min_by(|a, b| a.try_cmp(b).expect("same kind")),
        Backend::Gaussian => {
            let pts: Vec<(Rational, Rational)> =
                values.iter().map(|v| v.exact_parts().expect("exact backend")).collect();
            closest_pair_sq(&pts).map(|(d2, _, _)| Magnitude::Squared(d2))
        }
        Backend::Float => {
            let pts: Vec<(f64, f64)> = values
                .iter()
                .map(|v| match v {
                    Scalar::Float(z) => (z.re, z.im),
                    _ => unreachable!("uniform backend"),
                })
                .collect();
            closest_pair_sq(&pts).map(|(d2, _, _)| Magnitude::Float(f64::sqrt(d2)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn v(xs: &[i64]) -> VectorKn {
        VectorKn::from_integers(xs, Backend::Rational).unwrap()
    }

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec(), parts.iter().sum()).unwrap()
    }

    #[test]
    fn verdicts() {
        let yes = is_bh(&v(&[1, 3, 9]), 2, Tolerance::EXACT).unwrap();
        assert!(yes.is_bh && yes.has_distinct_coords && yes.collision_witness.is_none());

        let no = is_bh(&v(&[1, 2, 3]), 2, Tolerance::EXACT).unwrap();
        assert!(!no.is_bh && no.has_distinct_coords);
        assert_eq!(no.collision_witness, Some((c(&[1, 0, 1]), c(&[0, 2, 0]))));

        assert!(is_bh(&v(&[5, 7]), 1, Tolerance::EXACT).unwrap().is_bh);
    }

    #[test]
    fn repeated_coordinates() {
        let r = is_bh(&v(&[2, 5, 2]), 3, Tolerance::EXACT).unwrap();
        assert!(!r.is_bh && !r.has_distinct_coords);
        assert_eq!(r.collision_witness, Some((c(&[3, 0, 0]), c(&[0, 0, 3]))));
    }

    #[test]
    fn margins() {
        assert_eq!(margin(&v(&[1, 3, 9]), 2).unwrap(), Magnitude::Abs(int(2)));
        assert_eq!(margin(&v(&[5, 7]), 1).unwrap(), Magnitude::Abs(int(2)));
        let g = VectorKn::parse(&["0", "0+1i"], Backend::Gaussian).unwrap();
        assert_eq!(margin(&g, 1).unwrap(), Magnitude::Squared(int(1)));
        assert_eq!(margin(&v(&[1, 2, 3]), 2), Err(Error::NotBh { h: 2 }));
        assert_eq!(margin(&v(&[4]), 3), Err(Error::NoDistinctPairs));
    }

    #[test]
    fn certificates() {
        let cert = certify(&v(&[1, 3, 9]), 2).unwrap();
        assert_eq!(cert.delta, Magnitude::Abs(int(2)));
        assert_eq!(cert.radius, Magnitude::Abs(ratio(1, 2)));
        assert!(!cert.is_squared());
        assert_eq!(certify(&v(&[5, 7]), 1).unwrap().radius, Magnitude::Abs(int(1)));
        let half = v(&[1, 3, 9]).scale(&ratio(1, 2));
        assert_eq!(certify(&half, 2).unwrap().radius, Magnitude::Abs(ratio(1, 4)));

        let inside = VectorKn::from_rationals(vec![ratio(5, 4), int(3), int(9)], Backend::Rational).unwrap();
        assert!(cert.contains(&inside).unwrap());
        let edge = VectorKn::from_rationals(vec![ratio(3, 2), int(3), int(9)], Backend::Rational).unwrap();
        assert!(!cert.contains(&edge).unwrap());

        let f = VectorKn::parse(&["1", "3", "9"], Backend::Float).unwrap();
        assert_eq!(certify(&f, 2), Err(Error::NotExact(Backend::Float)));
        assert_eq!(margin(&f, 2).unwrap(), Magnitude::Float(2.0));
    }

    #[test]
    fn delta_over_h_is_not_a_valid_radius() {
        // Both coordinates move by 1 < Δ/h = 2 and collide.
        let a = v(&[5, 7]);
        let cert = certify(&a, 1).unwrap();
        let c = v(&[6, 6]);
        assert_eq!(c.sub(&a).unwrap().inf_norm(), Magnitude::Abs(int(1)));
        assert!(!is_bh(&c, 1, Tolerance::EXACT).unwrap().is_bh);
        assert!(!cert.contains(&c).unwrap());
    }

    #[test]
    fn gaussian_certificate_is_squared() {
        let g = VectorKn::parse(&["0", "3+4i", "1-1i"], Backend::Gaussian).unwrap();
        let cert = certify(&g, 1).unwrap();
        assert!(cert.is_squared());
        // Closest pair: 0 and 1−i, |1−i|² = 2.
        assert_eq!(cert.delta, Magnitude::Squared(int(2)));
        assert_eq!(cert.radius, Magnitude::Squared(ratio(1, 2)));
    }

    #[test]
    fn uv_split() {
        let uv = uv_partition(&v(&[1, 2, 3]), 2).unwrap();
        assert_eq!(uv.delta_u, Magnitude::Abs(int(1)));
        assert_eq!(uv.v_pairs, vec![(c(&[1, 0, 1]), c(&[0, 2, 0]))]);
        assert!(uv.u_nonempty);

        let uv = uv_partition(&v(&[1, 3, 9]), 2).unwrap();
        assert_eq!(uv.delta_u, Magnitude::Abs(int(2)));
        assert!(uv.v_pairs.is_empty());

        assert_eq!(uv_partition(&v(&[0, 0]), 2), Err(Error::Degenerate));
        assert_eq!(uv_partition(&v(&[3]), 2), Err(Error::Degenerate));
    }

    #[test]
    fn uv_of_repeated_coordinates_lists_all_collisions() {
        // Sums for (1,1,2), h=2: 2,2,3,2,3,4 -> groups {2:3 reps, 3:2 reps, 4:1}.
        let uv = uv_partition(&v(&[1, 1, 2]), 2).unwrap();
        assert_eq!(uv.v_pairs.len(), 3 + 1);
        assert_eq!(uv.delta_u, Magnitude::Abs(int(1)));
    }
}
