//! Constructive density: move any exact vector by less than ε onto a
//! B_h-vector.
//!
//! The perturbation is a contraction `λ·w` of the witness
//! `w = (1, h+1, (h+1)², …)`, whose h-fold sums are base-(h+1) numerals and
//! therefore pairwise distinct. With `‖λw‖∞ < min(ε, Δ_U/h)`, pairs whose sums
//! already differ stay apart, and pairs whose sums coincide are split by `λw`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::analysis::{delta_u, is_bh};
use crate::error::{Error, Result};
use crate::scalar::{Backend, Magnitude, Rational};
use crate::sumset::{Tolerance, VectorKn};

#[derive(Clone, Debug, PartialEq)]
pub struct RepairReport {
    pub input: VectorKn,
    pub h: u32,
    pub epsilon: Rational,
    /// `None` when the input already was a B_h-vector.
    pub witness: Option<VectorKn>,
    pub lambda: Option<Rational>,
    pub delta_u: Option<Magnitude>,
    /// `c − a`.
    pub perturbation: Option<VectorKn>,
    pub output: VectorKn,
    /// Set when every coordinate of the input was equal and a preliminary
    /// spread by a small B_h-vector was applied first.
    pub spread: bool,
    pub verified: bool,
}

/// `((h+1)^0, (h+1)^1, …, (h+1)^(n−1))` over the rationals.
pub fn canonical_witness(h: u32, n: usize) -> Result<VectorKn> {
    if h == 0 || n == 0 {
        return Err(Error::InvalidShape { h, n });
    }
    let base = BigInt::from(u64::from(h) + 1);
    let coords = (0..n).map(|i| Rational::from_integer(base.pow(i as u32))).collect();
    VectorKn::from_rationals(coords, Backend::Rational)
}

fn witness_norm(h: u32, n: usize) -> Rational {
    Rational::from_integer(BigInt::from(u64::from(h) + 1).pow((n - 1) as u32))
}

/// `λ·w` for `λ > 0`.
pub fn contract(w: &VectorKn, lambda: &Rational) -> Result<VectorKn> {
    if !lambda.is_positive() {
        return Err(Error::NonPositive { what: "lambda" });
    }
    Ok(w.scale(lambda))
}

/// A B_h-vector with `‖·‖∞ < δ`: the witness contracted by `δ / (2‖w‖∞)`.
pub fn small_bh_vector(h: u32, n: usize, delta: &Rational) -> Result<VectorKn> {
    if !delta.is_positive() {
        return Err(Error::NonPositive { what: "delta" });
    }
    let w = canonical_witness(h, n)?;
    contract(&w, &(delta / (witness_norm(h, n) * BigInt::from(2))))
}

/// Returns a verified B_h-vector `c` with `‖c − a‖∞ < ε`.
///
/// B_h inputs come back unchanged. Otherwise `λ = min(ε, Δ_U/h) / (2‖w‖∞)`
/// (on Gaussians the minimum is taken in squared form and `λ` uses an exact
/// rational lower bound of its square root). Inputs whose coordinates are all
/// equal have a single h-fold sum; they are first spread by
/// `small_bh_vector(h, n, ε/2)` and then repaired within `ε/2`.
pub fn repair(a: &VectorKn, h: u32, epsilon: &Rational) -> Result<RepairReport> {
    if !epsilon.is_positive() {
        return Err(Error::NonPositive { what: "epsilon" });
    }
    if !a.backend().is_exact() {
        return Err(Error::NotExact(a.backend()));
    }
    if is_bh(a, h, Tolerance::EXACT)?.is_bh {
        return Ok(RepairReport {
            input: a.clone(),
            h,
            epsilon: epsilon.clone(),
            witness: None,
            lambda: None,
            delta_u: None,
            perturbation: None,
            output: a.clone(),
            spread: false,
            verified: true,
        });
    }

    let report = match delta_u(a, h) {
        Ok(du) => perturb(a, h, epsilon, du)?,
        Err(Error::Degenerate) => {
            let half = epsilon / BigInt::from(2);
            let spread = small_bh_vector(h, a.n(), &half)?.embed(a.backend())?;
            let a0 = a.add(&spread)?;
            let mut inner = repair(&a0, h, &half)?;
            inner.perturbation = Some(inner.output.sub(a)?);
            if inner.witness.is_none() {
                inner.witness = Some(canonical_witness(h, a.n())?);
                inner.lambda = Some(&half / (witness_norm(h, a.n()) * BigInt::from(2)));
            }
            inner.input = a.clone();
            inner.epsilon = epsilon.clone();
            inner.spread = true;
            inner
        }
        Err(e) => return Err(e),
    };

    let verified = is_bh(&report.output, h, Tolerance::EXACT)?.is_bh && within(&report.output, a, epsilon)?;
    if !verified {
        return Err(Error::Internal(format!(
            "repaired vector failed verification (h = {h}, epsilon = {epsilon})"
        )));
    }
    Ok(RepairReport { verified, ..report })
}

fn perturb(a: &VectorKn, h: u32, epsilon: &Rational, du: Magnitude) -> Result<RepairReport> {
    let cap = du.div_len(h);
    let eps = cap.like(epsilon);
    let bound = if eps.try_cmp(&cap)? == Ordering::Less { eps } else { cap };
    let bound = bound.rational_lower_bound().ok_or(Error::NotExact(a.backend()))?;
    let w = canonical_witness(h, a.n())?;
    let lambda = bound / (witness_norm(h, a.n()) * BigInt::from(2));
    let b = contract(&w, &lambda)?.embed(a.backend())?;
    let c = a.add(&b)?;
    Ok(RepairReport {
        input: a.clone(),
        h,
        epsilon: epsilon.clone(),
        witness: Some(w),
        lambda: Some(lambda),
        delta_u: Some(du),
        perturbation: Some(b),
        output: c,
        spread: false,
        verified: false,
    })
}

fn within(c: &VectorKn, a: &VectorKn, epsilon: &Rational) -> Result<bool> {
    let dist = c.sub(a)?.inf_norm();
    Ok(dist.try_cmp(&dist.like(epsilon))? == Ordering::Less)
}
