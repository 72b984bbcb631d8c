//! Random integer vectors and how often they are B_h.

use rand::Rng;
use rayon::prelude::*;

use crate::analysis::{is_bh, margin, BhVerdict};
use crate::error::{Error, Result};
use crate::rng;
use crate::scalar::{Backend, Magnitude, Rational};
use crate::sumset::{Tolerance, VectorKn};

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord {
    pub index: u64,
    pub vector: VectorKn,
    pub verdict: BhVerdict,
    /// Δ, present exactly when the vector is B_h (and n ≥ 2).
    pub margin: Option<Magnitude>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleRun {
    pub records: Vec<SampleRecord>,
    pub bh_count: u64,
}

impl SampleRun {
    /// Fraction of B_h samples, `None` for an empty run.
    pub fn rate(&self) -> Option<Rational> {
        let total = self.records.len() as i64;
        (total > 0).then(|| crate::scalar::ratio(self.bh_count as i64, total))
    }
}

/// The `index`-th vector under `seed`: `n` integers uniform in `[−range, range]`.
pub fn sample_vector(n: usize, seed: u64, index: u64, range: i64) -> Result<VectorKn> {
    if range < 0 {
        return Err(Error::NonPositive { what: "range" });
    }
    let mut rng = rng::stream(seed, index);
    let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
    VectorKn::from_integers(&xs, Backend::Rational)
}

pub fn sample(n: usize, h: u32, count: u64, seed: u64, range: i64) -> Result<SampleRun> {
    if n == 0 || h == 0 {
        return Err(Error::InvalidShape { h, n });
    }
    let records: Vec<SampleRecord> = (0..count)
        .into_par_iter()
        .map(|index| {
            let vector = sample_vector(n, seed, index, range)?;
            let verdict = is_bh(&vector, h, Tolerance::EXACT)?;
            let margin = match verdict.is_bh {
                true => match margin(&vector, h) {
                    Ok(m) => Some(m),
                    Err(Error::NoDistinctPairs) => None,
                    Err(e) => return Err(e),
                },
                false => None,
            };
            Ok(SampleRecord {
                index,
                vector,
                verdict,
                margin,
            })
        })
        .collect::<Result<_>>()?;
    let bh_count = records.iter().filter(|r| r.verdict.is_bh).count() as u64;
    Ok(SampleRun { records, bh_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn zero_range_gives_repeated_coordinates() {
        let run = sample(4, 2, 20, 3, 0).unwrap();
        assert_eq!(run.bh_count, 0);
        assert_eq!(run.rate(), Some(ratio(0, 1)));
        assert!(run.records.iter().all(|r| !r.verdict.has_distinct_coords));
    }

    #[test]
    fn empty_run_has_no_rate() {
        let run = sample(4, 2, 0, 3, 10).unwrap();
        assert!(run.records.is_empty());
        assert_eq!(run.rate(), None);
    }

    #[test]
    fn reproducible() {
        assert_eq!(sample(5, 3, 30, 99, 1000).unwrap(), sample(5, 3, 30, 99, 1000).unwrap());
        assert_ne!(
            sample_vector(5, 99, 0, 1000).unwrap(),
            sample_vector(5, 99, 1, 1000).unwrap()
        );
    }
}
