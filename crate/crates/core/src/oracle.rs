//! Brute-force reference for differential testing.
//!
//! Shares no enumeration or grouping code with the main path: sums are
//! formed summand by summand from nondecreasing index multisets, grouped by
//! pairwise equality, and margins are all-pairs minima.

use std::cmp::Ordering;

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::scalar::{Magnitude, Scalar};
use crate::sumset::{ProfileEntry, RepresentationProfile, Tolerance, VectorKn};

pub const DEFAULT_BUDGET: u64 = 100_000;

/// `h` coordinate indices (0-based) in nondecreasing order: the summands of
/// one h-fold sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetIndex(Vec<usize>);

impl MultisetIndex {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn to_composition(&self, n: usize) -> Composition {
        let mut parts = vec![0u32; n];
        for &i in &self.0 {
            parts[i] += 1;
        }
        Composition::new(parts, self.0.len() as u32).expect("h ≥ 1 indices")
    }

    pub fn from_composition(x: &Composition) -> MultisetIndex {
        MultisetIndex(
            x.parts()
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                .collect(),
        )
    }
}

/// All multisets of size `h` over `0..n`, stopping with an error once more
/// than `budget` have been produced.
pub fn multisets(h: u32, n: usize, budget: u64) -> Result<Vec<MultisetIndex>> {
    if h == 0 || n == 0 {
        return Err(Error::InvalidShape { h, n });
    }
    fn extend(cur: &mut Vec<usize>, h: usize, n: usize, out: &mut Vec<MultisetIndex>, budget: u64) -> bool {
        if cur.len() == h {
            out.push(MultisetIndex(cur.clone()));
            return (out.len() as u64) <= budget;
        }
        let start = cur.last().copied().unwrap_or(0);
        for i in start..n {
            cur.push(i);
            let ok = extend(cur, h, n, out, budget);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    if !extend(&mut Vec::with_capacity(h as usize), h as usize, n, &mut out, budget) {
        return Err(Error::BudgetExceeded {
            needed: out.len() as u64,
            budget,
        });
    }
    Ok(out)
}

/// Reference profile with exact (τ = 0) grouping.
pub fn oracle_profile(a: &VectorKn, h: u32, budget: u64) -> Result<RepresentationProfile> {
    let n = a.n();
    let mut groups: Vec<(Scalar, Vec<Composition>)> = Vec::new();
    for m in multisets(h, n, budget)? {
        let mut sum = Scalar::zero(a.backend());
        for &i in m.indices() {
            sum = sum.try_add(&a.coords()[i])?;
        }
        let x = m.to_composition(n);
        match groups.iter_mut().find(|(s, _)| *s == sum) {
            Some((_, reps)) => reps.push(x),
            None => groups.push((sum, vec![x])),
        }
    }
    for (_, reps) in &mut groups {
        reps.sort_by(|x, y| x.canonical_cmp(y));
    }
    groups.sort_by(|(s, _), (t, _)| s.canonical_cmp(t));
    Ok(RepresentationProfile {
        h,
        n,
        backend: a.backend(),
        tolerance: Tolerance::EXACT,
        entries: groups
            .into_iter()
            .map(|(value, reps)| ProfileEntry { value, reps })
            .collect(),
    })
}

/// All-pairs minimum of `|s − t|` over the h-fold sums of a B_h-vector.
pub fn oracle_margin(a: &VectorKn, h: u32, budget: u64) -> Result<Magnitude> {
    let profile = oracle_profile(a, h, budget)?;
    let coords = a.coords();
    let repeated = (0..coords.len()).any(|i| (i + 1..coords.len()).any(|j| coords[i] == coords[j]));
    if repeated || profile.entries.iter().any(|e| e.reps.len() > 1) {
        return Err(Error::NotBh { h });
    }
    let sums: Vec<&Scalar> = profile.entries.iter().map(|e| &e.value).collect();
    let mut best: Option<Magnitude> = None;
    for i in 0..sums.len() {
        for j in 0..sums.len() {
            if i == j {
                continue;
            }
            let d = sums[i].try_sub(sums[j])?.magnitude();
            let better = match &best {
                None => true,
                Some(b) => d.try_cmp(b)? == Ordering::Less,
            };
            if better {
                best = Some(d);
            }
        }
    }
    best.ok_or(Error::NoDistinctPairs)
}
