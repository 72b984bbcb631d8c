//! Closest pair of points in the plane by divide and conquer, on squared
//! distances so exact coordinates never need a square root.

use crate::scalar::Rational;

/// Coordinate type for [`closest_pair_sq`].
pub trait PlaneCoord: Clone + PartialOrd {
    fn diff_sq(a: &Self, b: &Self) -> Self;
    fn add(a: &Self, b: &Self) -> Self;
}

impl PlaneCoord for Rational {
    fn diff_sq(a: &Self, b: &Self) -> Self {
        let d = a - b;
        &d * &d
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }
}

impl PlaneCoord for f64 {
    fn diff_sq(a: &Self, b: &Self) -> Self {
        (a - b) * (a - b)
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }
}

const BRUTE_FORCE_BELOW: usize = 64;

fn dist_sq<T: PlaneCoord>(p: &(T, T), q: &(T, T)) -> T {
    T::add(&T::diff_sq(&p.0, &q.0), &T::diff_sq(&p.1, &q.1))
}

fn less<T: PartialOrd>(a: &T, b: &T) -> bool {
    a.partial_cmp(b) == Some(std::cmp::Ordering::Less)
}

type Best<T> = Option<(T, usize, usize)>;

fn improve<T: PlaneCoord>(best: &mut Best<T>, pts: &[(T, T)], i: usize, j: usize) {
    let d = dist_sq(&pts[i], &pts[j]);
    if best.as_ref().is_none_or(|(b, _, _)| less(&d, b)) {
        *best = Some((d, i.min(j), i.max(j)));
    }
}

/// Smallest squared distance among `points`, with the indices attaining it.
/// `None` for fewer than two points.
pub fn closest_pair_sq<T: PlaneCoord>(points: &[(T, T)]) -> Option<(T, usize, usize)> {
    if points.len() < 2 {
        return None;
    }
    let mut by_x: Vec<usize> = (0..points.len()).collect();
    by_x.sort_by(|&i, &j| {
        let (p, q) = (&points[i], &points[j]);
        p.0.partial_cmp(&q.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    let (best, _) = recurse(points, &by_x);
    best
}

// Returns the best pair within `idx` (sorted by x) and `idx` re-sorted by y.
fn recurse<T: PlaneCoord>(pts: &[(T, T)], idx: &[usize]) -> (Best<T>, Vec<usize>) {
    let by_y_cmp = |&i: &usize, &j: &usize| pts[i].1.partial_cmp(&pts[j].1).unwrap_or(std::cmp::Ordering::Equal);
    if idx.len() < BRUTE_FORCE_BELOW {
        let mut best = None;
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                improve(&mut best, pts, i, j);
            }
        }
        let mut by_y = idx.to_vec();
        by_y.sort_by(by_y_cmp);
        return (best, by_y);
    }

    let mid = idx.len() / 2;
    let mid_x = pts[idx[mid]].0.clone();
    let (left, left_y) = recurse(pts, &idx[..mid]);
    let (right, right_y) = recurse(pts, &idx[mid..]);
    let mut best = match (left, right) {
        (Some(l), Some(r)) => Some(if less(&r.0, &l.0) { r } else { l }),
        (l, r) => l.or(r),
    };

    let mut by_y = Vec::with_capacity(idx.len());
    let (mut a, mut b) = (0, 0);
    while a < left_y.len() || b < right_y.len() {
        let take_left = b == right_y.len()
            || (a < left_y.len() && by_y_cmp(&left_y[a], &right_y[b]) != std::cmp::Ordering::Greater);
        if take_left {
            by_y.push(left_y[a]);
            a += 1;
        } else {
            by_y.push(right_y[b]);
            b += 1;
        }
    }

    let bound = best
        .as_ref()
        .map(|(d, _, _)| d.clone())
        .expect("both halves hold ≥ 2 points");
    let strip: Vec<usize> = by_y
        .iter()
        .copied()
        .filter(|&i| less(&T::diff_sq(&pts[i].0, &mid_x), &bound))
        .collect();
    for (k, &i) in strip.iter().enumerate() {
        for &j in &strip[k + 1..] {
            let current = &best.as_ref().expect("set above").0;
            if !less(&T::diff_sq(&pts[j].1, &pts[i].1), current) {
                break;
            }
            improve(&mut best, pts, i, j);
        }
    }
    (best, by_y)
}
