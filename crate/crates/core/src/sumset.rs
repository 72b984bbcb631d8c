//! Vectors in K^n, dot products `x·a`, and representation profiles of the
//! h-fold sumset.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::compositions::{self, Composition};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Backend, Magnitude, Rational, Scalar};

/// Absolute tolerance for approximate equality of float sums. Zero means
/// bit-exact equality, and is the only value exact backends accept.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance(0.0);

    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_finite() && tau >= 0.0 {
            Ok(Tolerance(tau))
        } else {
            Err(Error::InvalidTolerance(tau))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_exact(self) -> bool {
        self.0 == 0.0
    }

    pub(crate) fn check_for(self, backend: Backend) -> Result<()> {
        if backend.is_exact() && !self.is_exact() {
            Err(Error::ToleranceOnExact(backend))
        } else {
            Ok(())
        }
    }
}

/// A vector `(a_1, …, a_n)` whose coordinates share one backend.
/// Coordinates may repeat.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorKn {
    coords: Vec<Scalar>,
    backend: Backend,
}

impl fmt::Display for VectorKn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl VectorKn {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let backend = coords.first().ok_or(Error::EmptyVector)?.backend();
        if let Some(bad) = coords.iter().find(|c| c.backend() != backend) {
            return Err(Error::MixedBackends(backend, bad.backend()));
        }
        Ok(VectorKn { coords, backend })
    }

    pub fn parse<S: AsRef<str>>(elements: &[S], backend: Backend) -> Result<Self> {
        let coords = elements
            .iter()
            .map(|e| parse_scalar(e.as_ref(), backend))
            .collect::<Result<Vec<_>>>()?;
        VectorKn::new(coords)
    }

    pub fn from_rationals(values: Vec<Rational>, backend: Backend) -> Result<Self> {
        VectorKn::new(values.into_iter().map(|q| Scalar::from_rational(q, backend)).collect())
    }

    pub fn from_integers(values: &[i64], backend: Backend) -> Result<Self> {
        VectorKn::new(values.iter().map(|&k| Scalar::from_integer(k, backend)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// First pair `i < j` (lexicographically) with `a_i = a_j`, where float
    /// coordinates within `tol` count as equal.
    pub fn first_repeated_pair(&self, tol: Tolerance) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| approx_eq(&self.coords[i], &self.coords[j], tol))
    }

    pub fn has_distinct_coords(&self) -> bool {
        self.first_repeated_pair(Tolerance::EXACT).is_none()
    }

    pub fn add(&self, other: &VectorKn) -> Result<VectorKn> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        VectorKn::new(coords)
    }

    pub fn sub(&self, other: &VectorKn) -> Result<VectorKn> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorKn {
        VectorKn {
            coords: self.coords.iter().map(Scalar::neg).collect(),
            backend: self.backend,
        }
    }

    pub fn scale(&self, lambda: &Rational) -> VectorKn {
        VectorKn {
            coords: self.coords.iter().map(|c| c.scale_by_rational(lambda)).collect(),
            backend: self.backend,
        }
    }

    /// `a + t·(1, …, 1)`.
    pub fn translate(&self, t: &Scalar) -> Result<VectorKn> {
        let coords = self.coords.iter().map(|c| c.try_add(t)).collect::<Result<Vec<_>>>()?;
        VectorKn::new(coords)
    }

    /// Coordinate `i` moves to slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<VectorKn> {
        if perm.len() != self.n() {
            return Err(Error::DimensionMismatch(perm.len(), self.n()));
        }
        let mut coords = self.coords.clone();
        for (i, &p) in perm.iter().enumerate() {
            coords[p] = self.coords[i].clone();
        }
        Ok(VectorKn {
            coords,
            backend: self.backend,
        })
    }

    /// Re-embeds exact coordinates into another exact backend
    /// (Rational → Gaussian, or Gaussian with zero imaginary parts → Rational).
    pub fn embed(&self, backend: Backend) -> Result<VectorKn> {
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let (re, im) = c.exact_parts().ok_or(Error::NotExact(c.backend()))?;
                match backend {
                    Backend::Gaussian => Ok(Scalar::gaussian(re, im)),
                    Backend::Rational if num_traits::Zero::is_zero(&im) => Ok(Scalar::Rational(re)),
                    _ => Err(Error::MixedBackends(c.backend(), backend)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        VectorKn::new(coords)
    }

    /// `max_i |a_i|`, in the backend's magnitude form.
    pub fn inf_norm(&self) -> Magnitude {
        self.coords
            .iter()
            .map(Scalar::magnitude)
            .max_by(|a, b| a.try_cmp(b).expect("uniform backend"))
            .expect("non-empty vector")
    }
}

pub(crate) fn approx_eq(u: &Scalar, v: &Scalar, tol: Tolerance) -> bool {
    match (u, v) {
        (Scalar::Float(a), Scalar::Float(b)) if !tol.is_exact() => (a.re - b.re).hypot(a.im - b.im) <= tol.value(),
        _ => u == v,
    }
}

/// `x·a = Σ x_i a_i` in the vector's backend.
pub fn dot(x: &Composition, a: &VectorKn) -> Result<Scalar> {
    if x.n() != a.n() {
        return Err(Error::DimensionMismatch(x.n(), a.n()));
    }
    let mut acc = Scalar::zero(a.backend());
    for (&k, c) in x.parts().iter().zip(a.coords()) {
        if k > 0 {
            acc = acc.try_add(&c.mul_int(k as i64))?;
        }
    }
    Ok(acc)
}

/// One value of the sumset with every composition that reaches it.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileEntry {
    pub value: Scalar,
    pub reps: Vec<Composition>,
}

/// The sumset hA grouped by value. Entries are in canonical value order
/// (numeric for reals, `(re, im)` lexicographic for complex); each entry's
/// compositions are in canonical enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationProfile {
    pub h: u32,
    pub n: usize,
    pub backend: Backend,
    pub tolerance: Tolerance,
    pub entries: Vec<ProfileEntry>,
}

impl RepresentationProfile {
    pub fn g_max(&self) -> usize {
        g_max(self)
    }

    pub fn total_reps(&self) -> usize {
        self.entries.iter().map(|e| e.reps.len()).sum()
    }

    /// The induced partition of X(h, n), independent of the sum values:
    /// groups ordered by their first composition.
    pub fn grouping(&self) -> Vec<Vec<Composition>> {
        let mut groups: Vec<Vec<Composition>> = self.entries.iter().map(|e| e.reps.clone()).collect();
        groups.sort_by(|a, b| a[0].canonical_cmp(&b[0]));
        groups
    }
}

/// Largest number of compositions sharing one sum.
pub fn g_max(profile: &RepresentationProfile) -> usize {
    profile.entries.iter().map(|e| e.reps.len()).max().unwrap_or(0)
}

/// All `(composition, x·a)` pairs in canonical enumeration order.
pub(crate) fn sums(a: &VectorKn, h: u32) -> Result<Vec<(Composition, Scalar)>> {
    let comps: Vec<Composition> = compositions::enumerate(h, a.n())?.collect();
    comps.into_par_iter().map(|x| dot(&x, a).map(|s| (x, s))).collect()
}

/// Groups the `count(h, n)` compositions by equal dot product.
///
/// Exact backends (and the float backend at τ = 0) sort the sums and merge
/// equal neighbours. For floats with τ > 0, real sums are chained by single
/// linkage (a new group starts where the sorted gap exceeds τ), complex sums
/// are joined through a τ-grid when their distance is at most τ. A float
/// group's value is its smallest member in canonical order.
pub fn build_profile(a: &VectorKn, h: u32, tol: Tolerance) -> Result<RepresentationProfile> {
    tol.check_for(a.backend())?;
    let sums = sums(a, h)?;
    let groups = if tol.is_exact() {
        group_exact(&sums)
    } else if sums.iter().all(|(_, s)| matches!(s, Scalar::Float(z) if z.im == 0.0)) {
        group_single_linkage(&sums, tol.value())
    } else {
        group_grid(&sums, tol.value())
    };
    let entries = groups
        .into_iter()
        .map(|(lead, idx)| ProfileEntry {
            value: sums[lead].1.clone(),
            reps: idx.iter().map(|&i| sums[i].0.clone()).collect(),
        })
        .collect();
    Ok(RepresentationProfile {
        h,
        n: a.n(),
        backend: a.backend(),
        tolerance: tol,
        entries,
    })
}

// A group is `(lead, members)`: `lead` indexes the sum reported as the
// group's value, `members` index `sums` in increasing (canonical composition)
// order. Groups come in canonical value order.
type Group = (usize, Vec<usize>);

fn sorted_indices(sums: &[(Composition, Scalar)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sums.len()).collect();
    order.par_sort_by(|&i, &j| sums[i].1.canonical_cmp(&sums[j].1).then(i.cmp(&j)));
    order
}

fn group_exact(sums: &[(Composition, Scalar)]) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for i in sorted_indices(sums) {
        match groups.last_mut() {
            Some((lead, g)) if sums[*lead].1 == sums[i].1 => g.push(i),
            _ => groups.push((i, vec![i])),
        }
    }
    groups
}

fn group_single_linkage(sums: &[(Composition, Scalar)], tau: f64) -> Vec<Group> {
    let re = |i: usize| match &sums[i].1 {
        Scalar::Float(z) => z.re,
        _ => unreachable!("float grouping on an exact backend"),
    };
    let mut groups: Vec<Group> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for i in sorted_indices(sums) {
        let v = re(i);
        match groups.last_mut() {
            Some((_, g)) if v - prev <= tau => g.push(i),
            _ => groups.push((i, vec![i])),
        }
        prev = v;
    }
    for (_, g) in &mut groups {
        g.sort_unstable();
    }
    groups
}

fn group_grid(sums: &[(Composition, Scalar)], tau: f64) -> Vec<Group> {
    let pt = |i: usize| match &sums[i].1 {
        Scalar::Float(z) => (z.re, z.im),
        _ => unreachable!("float grouping on an exact backend"),
    };
    let cell = |(x, y): (f64, f64)| ((x / tau).floor() as i64, (y / tau).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..sums.len() {
        grid.entry(cell(pt(i))).or_default().push(i);
    }

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut parent: Vec<usize> = (0..sums.len()).collect();
    for i in 0..sums.len() {
        let (x, y) = pt(i);
        let (cx, cy) = cell((x, y));
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = grid.get(&(cx + dx, cy + dy)) else {
                    continue;
                };
                for &j in bucket {
                    let (u, v) = pt(j);
                    if j > i && (x - u).hypot(y - v) <= tau {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); sums.len()];
    for i in 0..sums.len() {
        let r = find(&mut parent, i);
        members[r].push(i);
    }
    let by_value = |a: &usize, b: &usize| sums[*a].1.canonical_cmp(&sums[*b].1).then(a.cmp(b));
    let mut groups: Vec<Group> = members
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| (*g.iter().min_by(|a, b| by_value(a, b)).expect("non-empty"), g))
        .collect();
    groups.sort_by(|a, b| by_value(&a.0, &b.0));
    groups
}
