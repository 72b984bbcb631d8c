//! Weak compositions of `h` into `n` parts: the index set of every h-fold sum.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A point of X(h, n): `n` non-negative parts summing to `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    h: u32,
}

impl Composition {
    /// Validates `parts` against `h`.
    pub fn new(parts: Vec<u32>, h: u32) -> Result<Self> {
        if h == 0 || parts.is_empty() {
            return Err(Error::InvalidShape { h, n: parts.len() });
        }
        let total: u64 = parts.iter().map(|&p| p as u64).sum();
        if total != h as u64 {
            return Err(Error::Internal(format!("parts sum to {total}, not {h}")));
        }
        Ok(Composition { parts, h })
    }

    /// `h·e_i` in X(h, n).
    pub fn concentrated(h: u32, n: usize, i: usize) -> Self {
        let mut parts = vec![0; n];
        parts[i] = h;
        Composition { parts, h }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// Position in the canonical enumeration order: reverse lexicographic,
    /// so `(h, 0, …, 0)` comes first.
    pub fn canonical_cmp(&self, other: &Composition) -> Ordering {
        other.parts.cmp(&self.parts)
    }

    /// Applies a coordinate permutation: part `i` moves to slot `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Composition {
        let mut parts = vec![0; self.parts.len()];
        for (i, &p) in self.parts.iter().enumerate() {
            parts[perm[i]] = p;
        }
        Composition { parts, h: self.h }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Composition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// |X(h, n)| = C(h + n − 1, n − 1).
pub fn count(h: u32, n: usize) -> Result<u64> {
    if h == 0 || n == 0 {
        return Err(Error::InvalidShape { h, n });
    }
    let overflow = || Error::CountOverflow { h, n };
    // C(h + k, k) with k = n − 1, built as a running product of exact binomials.
    let k = (n - 1) as u128;
    let k = k.min(h as u128);
    let top = (h as u128) + (n as u128) - 1;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(top - k + i).ok_or_else(overflow)? / i;
        if acc > u64::MAX as u128 {
            return Err(overflow());
        }
    }
    Ok(acc as u64)
}

/// Streams X(h, n) in reverse lexicographic order, from `(h, 0, …, 0)` to
/// `(0, …, 0, h)`.
pub fn enumerate(h: u32, n: usize) -> Result<Compositions> {
    let remaining = count(h, n)?;
    Ok(Compositions {
        next: Some(Composition::concentrated(h, n, 0)),
        remaining,
    })
}

#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Composition>,
    remaining: u64,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        self.remaining -= 1;
        self.next = successor(&current);
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, usize::try_from(self.remaining).ok())
    }
}

// Move one unit out of the last non-zero part before the tail, and collect
// the whole tail right after it.
fn successor(x: &Composition) -> Option<Composition> {
    let n = x.parts.len();
    if n < 2 {
        return None;
    }
    let i = (0..n - 1).rev().find(|&i| x.parts[i] > 0)?;
    let mut parts = x.parts.clone();
    let tail: u32 = parts[i + 1..].iter().sum();
    parts[i] -= 1;
    for p in &mut parts[i + 1..] {
        *p = 0;
    }
    parts[i + 1] = tail + 1;
    Some(Composition { parts, h: x.h })
}

/// ‖x − y‖∞ for two points of the same X(h, n); always at most `h`.
pub fn diff_inf_norm(x: &Composition, y: &Composition) -> Result<u32> {
    if x.h != y.h || x.n() != y.n() {
        return Err(Error::ShapeMismatch(x.h, x.n(), y.h, y.n()));
    }
    Ok(x.parts
        .iter()
        .zip(&y.parts)
        .map(|(&a, &b)| a.abs_diff(b))
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(h: u32, n: usize) -> Vec<Vec<u32>> {
        enumerate(h, n).unwrap().map(|c| c.parts).collect()
    }

    // Independent enumeration: every vector in [0, h]^n, filtered by sum.
    fn brute(h: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut v = vec![0u32; n];
        loop {
            if v.iter().sum::<u32>() == h {
                out.push(v.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort_by(|a, b| b.cmp(a));
                    return out;
                }
                i -= 1;
                if v[i] < h {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(all(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(all(1, 3), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            all(2, 3),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(all(4, 1), vec![vec![4]]);
    }

    #[test]
    fn matches_brute_force() {
        for h in 1..=4 {
            for n in 1..=5 {
                assert_eq!(all(h, n), brute(h, n), "h={h} n={n}");
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count(2, 3).unwrap(), 6);
        assert_eq!(count(1, 5).unwrap(), 5);
        assert_eq!(count(3, 2).unwrap(), 4);
        assert_eq!(count(5, 10).unwrap(), 2002);
        assert_eq!(count(6, 12).unwrap(), 12376);
        assert_eq!(count(0, 3), Err(Error::InvalidShape { h: 0, n: 3 }));
        assert_eq!(count(1000, 1000), Err(Error::CountOverflow { h: 1000, n: 1000 }));
        assert!(enumerate(1000, 1000).is_err());
    }

    #[test]
    fn stream_length_equals_count() {
        for h in 1..=6 {
            for n in 1..=8 {
                let it = enumerate(h, n).unwrap();
                assert_eq!(it.size_hint().0 as u64, count(h, n).unwrap());
                let mut len = 0u64;
                for c in it {
                    assert_eq!(c.parts.iter().sum::<u32>(), h);
                    assert!(c.parts.iter().all(|&p| p <= h));
                    len += 1;
                }
                assert_eq!(len, count(h, n).unwrap());
            }
        }
    }

    #[test]
    fn inf_norm() {
        let c = |v: Vec<u32>| Composition::new(v, 2).unwrap();
        assert_eq!(diff_inf_norm(&c(vec![2, 0, 0]), &c(vec![0, 2, 0])).unwrap(), 2);
        assert_eq!(diff_inf_norm(&c(vec![1, 1, 0]), &c(vec![1, 1, 0])).unwrap(), 0);
        assert_eq!(diff_inf_norm(&c(vec![1, 1, 0]), &c(vec![0, 1, 1])).unwrap(), 1);
        let other = Composition::new(vec![3, 0, 0], 3).unwrap();
        assert!(matches!(
            diff_inf_norm(&c(vec![2, 0, 0]), &other),
            Err(Error::ShapeMismatch(..))
        ));
    }

    #[test]
    fn inf_norm_bounded_by_h_over_all_pairs() {
        for h in 1..=4 {
            for n in 1..=5 {
                let xs: Vec<_> = enumerate(h, n).unwrap().collect();
                for x in &xs {
                    for y in &xs {
                        let d = diff_inf_norm(x, y).unwrap();
                        assert!(d <= h);
                        assert_eq!(d == 0, x == y);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_order_is_stream_order() {
        let xs: Vec<_> = enumerate(3, 4).unwrap().collect();
        for w in xs.windows(2) {
            assert_eq!(w[0].canonical_cmp(&w[1]), Ordering::Less);
        }
    }
}
