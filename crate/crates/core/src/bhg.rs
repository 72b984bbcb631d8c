//! B_h[g] membership, multiplicity histograms, finite sweeps over h, and a
//! sampling probe around B_h[g]-vectors.
//!
//! Whether the B_h[g]-vectors form an open set is not known. The probe only
//! collects evidence: it never turns its counts into a verdict.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{is_bh, BhVerdict};
use crate::compositions;
use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::{Backend, Rational, Scalar};
use crate::sumset::{build_profile, Tolerance, VectorKn};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GProfile {
    pub h: u32,
    pub g_max: usize,
    /// multiplicity → number of sums reached by exactly that many compositions
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub center: VectorKn,
    pub h: u32,
    pub g: usize,
    pub samples: u64,
    pub radius: Rational,
    pub seed: u64,
    /// observed g_max → number of samples
    pub frequencies: BTreeMap<usize, usize>,
    pub min_g_max: Option<usize>,
    pub max_g_max: Option<usize>,
    /// Sampled points with g_max > g, keyed by sample index.
    pub counterexamples: Vec<(u64, VectorKn)>,
}

pub fn is_bhg(a: &VectorKn, h: u32, g: usize, tol: Tolerance) -> Result<bool> {
    if g == 0 {
        return Err(Error::NonPositive { what: "g" });
    }
    Ok(g_profile(a, h, tol)?.g_max <= g)
}

pub fn g_profile(a: &VectorKn, h: u32, tol: Tolerance) -> Result<GProfile> {
    let profile = build_profile(a, h, tol)?;
    let mut histogram = BTreeMap::new();
    for e in &profile.entries {
        *histogram.entry(e.reps.len()).or_insert(0) += 1;
    }
    let g_max = histogram.keys().next_back().copied().unwrap_or(0);
    Ok(GProfile { h, g_max, histogram })
}

/// Verdicts for h = 1, …, `max_h`. Fails up front if `|X(max_h, n)|` exceeds
/// `budget`.
pub fn bh_sweep(a: &VectorKn, max_h: u32, budget: u64) -> Result<Vec<(u32, BhVerdict)>> {
    if max_h == 0 {
        return Err(Error::InvalidShape { h: max_h, n: a.n() });
    }
    let needed = compositions::count(max_h, a.n())?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    (1..=max_h)
        .map(|h| is_bh(a, h, Tolerance::EXACT).map(|v| (h, v)))
        .collect()
}

/// Samples `samples` points uniformly on a dyadic grid of the open ∞-ball of
/// `radius` around `a` and tallies their g_max.
///
/// Real coordinates move by `radius·m/2³²` with odd `m`; Gaussian coordinates
/// draw both parts that way and redraw until the modulus is below `radius`.
pub fn probe_openness(
    a: &VectorKn,
    h: u32,
    g: usize,
    samples: u64,
    radius: &Rational,
    seed: u64,
) -> Result<ProbeReport> {
    if !a.backend().is_exact() {
        return Err(Error::NotExact(a.backend()));
    }
    if !num_traits::Signed::is_positive(radius) {
        return Err(Error::NonPositive { what: "radius" });
    }
    if !is_bhg(a, h, g, Tolerance::EXACT)? {
        return Err(Error::Precondition("center is not a B_h[g]-vector"));
    }

    let observed: Vec<(usize, Option<VectorKn>)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let point = sample_point(a, radius, seed, k)?;
            let g_max = g_profile(&point, h, Tolerance::EXACT)?.g_max;
            Ok((g_max, (g_max > g).then_some(point)))
        })
        .collect::<Result<_>>()?;

    let mut frequencies = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (k, (g_max, point)) in observed.into_iter().enumerate() {
        *frequencies.entry(g_max).or_insert(0) += 1;
        if let Some(p) = point {
            counterexamples.push((k as u64, p));
        }
    }
    Ok(ProbeReport {
        center: a.clone(),
        h,
        g,
        samples,
        radius: radius.clone(),
        seed,
        min_g_max: frequencies.keys().next().copied(),
        max_g_max: frequencies.keys().next_back().copied(),
        frequencies,
        counterexamples,
    })
}

fn sample_point(a: &VectorKn, radius: &Rational, seed: u64, index: u64) -> Result<VectorKn> {
    let mut rng = rng::stream(seed, index);
    let offsets: Vec<Scalar> = a
        .coords()
        .iter()
        .map(|_| match a.backend() {
            Backend::Gaussian => loop {
                let re = rng::dyadic_offset(&mut rng, radius);
                let im = rng::dyadic_offset(&mut rng, radius);
                if &re * &re + &im * &im < radius * radius {
                    break Scalar::gaussian(re, im);
                }
            },
            _ => Scalar::Rational(rng::dyadic_offset(&mut rng, radius)),
        })
        .collect();
    let point = a.add(&VectorKn::new(offsets)?)?;
    let dist = point.sub(a)?.inf_norm();
    let limit = dist.like(radius);
    if dist.try_cmp(&limit)? != Ordering::Less {
        return Err(Error::SampleOutsideBall);
    }
    Ok(point)
}

impl ProbeReport {
    /// Every observed g_max of the sampled neighbourhood was at most `g`.
    pub fn locally_constant(&self) -> bool {
        self.counterexamples.is_empty()
    }
}
