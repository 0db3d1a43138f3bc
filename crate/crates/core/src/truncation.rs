//! Truncation sets in `N^n`: finite subsets closed under division by a
//! common positive integer.
//!
//! Every such set splits into orbit lines `N*s` through primitive points `s`
//! (coordinates with gcd 1); on each line the multipliers form an ordinary
//! one-dimensional truncation set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, divisors, gcd_all};
use crate::error::{Error, Result};

/// A point of `N^n` (all coordinates at least 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Point(Vec<u64>);

impl TryFrom<Vec<u64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<u64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<u64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Point {
    pub fn new(coords: Vec<u64>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("a point needs at least one coordinate".into()));
        }
        if coords.contains(&0) {
            return Err(Error::InvalidPoint(format!("{coords:?} has a zero coordinate")));
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn content(&self) -> u64 {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn scale(&self, d: u64) -> Point {
        Point(self.0.iter().map(|&c| c * d).collect())
    }

    /// The point divided by `d`; `d` must divide every coordinate.
    pub fn shrink(&self, d: u64) -> Point {
        debug_assert!(self.0.iter().all(|c| c % d == 0));
        Point(self.0.iter().map(|&c| c / d).collect())
    }

    /// The primitive point on this point's orbit line.
    pub fn primitive(&self) -> Point {
        self.shrink(self.content())
    }

    fn with_coord(&self, i: usize, value: u64) -> Point {
        let mut c = self.0.clone();
        c[i] = value;
        Point(c)
    }
}

/// Returns `d` with `d*u = s`, if it exists.
pub fn divides(u: &Point, s: &Point) -> Result<Option<u64>> {
    if u.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: s.dim() });
    }
    let d = s.0[0] / u.0[0];
    let ok = s.0[0] % u.0[0] == 0 && u.0.iter().zip(&s.0).all(|(&a, &b)| a * d == b);
    Ok(ok.then_some(d))
}

/// A finite division-closed subset of `N^n`, stored in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct TruncationSet {
    n: usize,
    points: BTreeSet<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    n: usize,
    points: Vec<Vec<u64>>,
}

impl TryFrom<RawSet> for TruncationSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        let points = raw.points.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?;
        TruncationSet::new(raw.n, points)
    }
}

impl From<TruncationSet> for RawSet {
    fn from(s: TruncationSet) -> Self {
        RawSet { n: s.n, points: s.points.into_iter().map(|p| p.0).collect() }
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl TruncationSet {
    /// Validates dimensions and division-closure.
    pub fn new(n: usize, points: impl IntoIterator<Item = Point>) -> Result<TruncationSet> {
        if n == 0 {
            return Err(Error::InvalidPoint("dimension must be at least 1".into()));
        }
        let points: BTreeSet<Point> = points.into_iter().collect();
        for p in &points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
        }
        let set = TruncationSet { n, points };
        if let Some((missing, of)) = set.closure_violation() {
            return Err(Error::NotDivisionClosed(format!("{missing} divides {of} but is missing")));
        }
        Ok(set)
    }

    pub fn empty(n: usize) -> TruncationSet {
        TruncationSet { n, points: BTreeSet::new() }
    }

    /// The classical set `{1, ..., m}` in dimension one.
    pub fn interval(m: u64) -> TruncationSet {
        TruncationSet { n: 1, points: (1..=m).map(|k| Point(vec![k])).collect() }
    }

    /// A one-dimensional set from its elements.
    pub fn from_multipliers(mults: &[u64]) -> Result<TruncationSet> {
        TruncationSet::new(1, mults.iter().map(|&k| Point::new(vec![k])).collect::<Result<Vec<_>>>()?)
    }

    fn closure_violation(&self) -> Option<(Point, Point)> {
        for s in &self.points {
            for d in divisors(s.content()).into_iter().skip(1) {
                let u = s.shrink(d);
                if !self.points.contains(&u) {
                    return Some((u, s.clone()));
                }
            }
        }
        None
    }

    pub fn is_division_closed(&self) -> bool {
        self.closure_violation().is_none()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> + '_ {
        self.points.iter()
    }

    pub fn is_subset(&self, other: &TruncationSet) -> bool {
        self.n == other.n && self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &TruncationSet) -> Result<TruncationSet> {
        self.check_dim(other.n)?;
        Ok(TruncationSet { n: self.n, points: self.points.union(&other.points).cloned().collect() })
    }

    pub fn intersection(&self, other: &TruncationSet) -> Result<TruncationSet> {
        self.check_dim(other.n)?;
        Ok(TruncationSet { n: self.n, points: self.points.intersection(&other.points).cloned().collect() })
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch { expected: self.n, found: n });
        }
        Ok(())
    }

    /// For a one-dimensional set, its elements.
    pub fn multipliers(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.0[0]).collect()
    }

    /// `S/(1,...,r,...,1)`: the points `t` whose `i`-th coordinate scaled by
    /// `r` lands in `S`. Axes are 0-based.
    pub fn quotient(&self, axis: usize, r: u64) -> Result<TruncationSet> {
        if axis >= self.n {
            return Err(Error::InvalidPoint(format!("axis {axis} out of range for dimension {}", self.n)));
        }
        if r == 0 {
            return Err(Error::InvalidPoint("quotient factor must be positive".into()));
        }
        let points = self
            .points
            .iter()
            .filter(|s| s.0[axis] % r == 0)
            .map(|s| s.with_coord(axis, s.0[axis] / r))
            .collect();
        Ok(TruncationSet { n: self.n, points })
    }

    /// Multipliers `{d : d*s in S}` of the line through `s`.
    pub fn line_multiples(&self, s: &Point) -> Vec<u64> {
        if s.dim() != self.n {
            return Vec::new();
        }
        let Some(max) = self.points.iter().map(|p| p.0[0]).max() else {
            return Vec::new();
        };
        (1..=max / s.0[0]).filter(|&d| self.points.contains(&s.scale(d))).collect()
    }

    /// Weights `s/u` of the points `u` dividing `s` that lie in `S`, i.e. the
    /// intersection `S ∩ <s>` seen from `s`.
    pub fn line_weights(&self, s: &Point) -> Vec<u64> {
        if s.dim() != self.n {
            return Vec::new();
        }
        divisors(s.content()).into_iter().filter(|&d| self.points.contains(&s.shrink(d))).collect()
    }

    /// Length of the p-typical line `{p^j s} ∩ S`.
    pub fn p_line_length(&self, s: &Point, p: u64) -> usize {
        let mut len = 0;
        let mut cur = s.clone();
        while self.points.contains(&cur) {
            len += 1;
            cur = cur.scale(p);
        }
        len
    }

    /// Splits the set into orbit lines keyed by primitive points.
    pub fn decompose(&self) -> OrbitDecomposition {
        let mut lines: BTreeMap<Point, Vec<u64>> = BTreeMap::new();
        for s in &self.points {
            let c = s.content();
            lines.entry(s.shrink(c)).or_default().push(c);
        }
        for mults in lines.values_mut() {
            mults.sort_unstable();
        }
        OrbitDecomposition { n: self.n, lines }
    }
}

/// `S` as a disjoint union of lines `{d*s : d in M_s}` over primitive `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    n: usize,
    lines: BTreeMap<Point, Vec<u64>>,
}

impl OrbitDecomposition {
    pub fn lines(&self) -> &BTreeMap<Point, Vec<u64>> {
        &self.lines
    }

    pub fn reassemble(&self) -> TruncationSet {
        let points = self.lines.iter().flat_map(|(s, ms)| ms.iter().map(move |&d| s.scale(d))).collect();
        TruncationSet { n: self.n, points }
    }
}

/// The smallest truncation set containing `generators`; for one generator
/// `s` this is `<s>`.
pub fn closure(generators: &[Point]) -> Result<TruncationSet> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidPoint("closure needs at least one generator".into()));
    };
    let n = first.dim();
    let mut points = BTreeSet::new();
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
        for d in divisors(g.content()) {
            points.insert(g.shrink(d));
        }
    }
    Ok(TruncationSet { n, points })
}

/// Validates an axis subset (0-based) against the dimension.
pub(crate) fn axis_mask(n: usize, axes: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &i in axes {
        if i >= n {
            return Err(Error::InvalidPoint(format!("axis {i} out of range for dimension {n}")));
        }
        mask[i] = true;
    }
    Ok(mask)
}

/// `S_q(I) = { s : sum_i floor((s_i - 1) / a_i^[i in I]) <= q - 1 }`, with
/// `axes` the 0-based indices in `I`.
pub fn sq_set(a: &[u64], q: u64, axes: &[usize]) -> Result<TruncationSet> {
    if a.is_empty() {
        return Err(Error::InvalidPoint("exponent tuple must be nonempty".into()));
    }
    if q == 0 {
        return Err(Error::InvalidPoint("q must be positive".into()));
    }
    if a.contains(&0) {
        return Err(Error::InvalidPoint("exponents must be positive".into()));
    }
    let mask = axis_mask(a.len(), axes)?;
    let widths: Vec<u64> = a.iter().zip(&mask).map(|(&ai, &inside)| if inside { ai } else { 1 }).collect();
    let mut points = BTreeSet::new();
    let mut coords = Vec::with_capacity(a.len());
    enumerate_slab(&widths, q - 1, &mut coords, &mut |c| {
        points.insert(Point(c.to_vec()));
    });
    Ok(TruncationSet { n: a.len(), points })
}

/// Visits, in lexicographic order, every `s` with
/// `sum_i floor((s_i - 1)/widths[i]) <= budget`.
pub(crate) fn enumerate_slab(widths: &[u64], budget: u64, coords: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    let depth = coords.len();
    if depth == widths.len() {
        visit(coords);
        return;
    }
    let w = widths[depth];
    for s in 1..=w * (budget + 1) {
        let used = (s - 1) / w;
        coords.push(s);
        enumerate_slab(widths, budget - used, coords, visit);
        coords.pop();
    }
}

/// `binom(n+q-1, n) * prod_{i in I} a_i`, the size of `S_q(I)`.
pub fn cardinality_formula(a: &[u64], q: u64, axes: &[usize]) -> Result<BigUint> {
    let mask = axis_mask(a.len(), axes)?;
    let n = a.len() as u64;
    let prod: BigUint = a.iter().zip(&mask).filter(|(_, &m)| m).map(|(&ai, _)| BigUint::from(ai)).product();
    Ok(binomial(n + q - 1, n) * prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[u64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn set(n: usize, pts: &[&[u64]]) -> TruncationSet {
        TruncationSet::new(n, pts.iter().map(|c| pt(c))).unwrap()
    }

    fn rect(xs: u64, ys: u64) -> TruncationSet {
        let mut pts = Vec::new();
        for x in 1..=xs {
            for y in 1..=ys {
                pts.push(pt(&[x, y]));
            }
        }
        TruncationSet::new(2, pts).unwrap()
    }

    #[test]
    fn divides_examples() {
        assert_eq!(divides(&pt(&[1, 2]), &pt(&[3, 6])).unwrap(), Some(3));
        assert_eq!(divides(&pt(&[1, 2]), &pt(&[2, 3])).unwrap(), None);
        assert_eq!(divides(&pt(&[2, 4]), &pt(&[2, 4])).unwrap(), Some(1));
        assert!(divides(&pt(&[1]), &pt(&[1, 1])).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(&[pt(&[4, 6])]).unwrap(), set(2, &[&[2, 3], &[4, 6]]));
        assert_eq!(closure(&[pt(&[1, 1])]).unwrap(), set(2, &[&[1, 1]]));
        assert_eq!(closure(&[pt(&[2, 2]), pt(&[3, 1])]).unwrap(), set(2, &[&[1, 1], &[2, 2], &[3, 1]]));
    }

    #[test]
    fn rejects_unclosed_sets() {
        let err = TruncationSet::new(2, vec![pt(&[2, 2])]).unwrap_err();
        assert!(matches!(err, Error::NotDivisionClosed(_)));
        assert!(Point::new(vec![0, 1]).is_err());
    }

    #[test]
    fn sq_set_examples() {
        assert_eq!(sq_set(&[2, 3], 1, &[0, 1]).unwrap(), rect(2, 3));
        assert_eq!(sq_set(&[2], 1, &[0]).unwrap(), TruncationSet::interval(2));
        assert_eq!(sq_set(&[2, 3], 1, &[]).unwrap(), set(2, &[&[1, 1]]));
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(cardinality_formula(&[2, 3], 1, &[0, 1]).unwrap(), BigUint::from(6u32));
        assert_eq!(cardinality_formula(&[2, 3], 2, &[0, 1]).unwrap(), BigUint::from(18u32));
        assert_eq!(sq_set(&[2, 3], 2, &[0, 1]).unwrap().len(), 18);
        assert_eq!(cardinality_formula(&[5], 3, &[]).unwrap(), BigUint::from(3u32));
        assert_eq!(sq_set(&[5], 3, &[]).unwrap().len(), 3);
    }

    #[test]
    fn decompose_examples() {
        let d = sq_set(&[2, 3], 1, &[0, 1]).unwrap().decompose();
        let expected: BTreeMap<Point, Vec<u64>> = [
            (pt(&[1, 1]), vec![1, 2]),
            (pt(&[1, 2]), vec![1]),
            (pt(&[1, 3]), vec![1]),
            (pt(&[2, 1]), vec![1]),
            (pt(&[2, 3]), vec![1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.lines(), &expected);

        let single = set(2, &[&[1, 1]]).decompose();
        assert_eq!(single.lines().get(&pt(&[1, 1])), Some(&vec![1]));

        let c = closure(&[pt(&[4, 6])]).unwrap().decompose();
        assert_eq!(c.lines().len(), 1);
        assert_eq!(c.lines().get(&pt(&[2, 3])), Some(&vec![1, 2]));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(rect(2, 3).quotient(1, 3).unwrap(), rect(2, 1));
        assert_eq!(rect(2, 3).quotient(0, 1).unwrap(), rect(2, 3));
        // (t1,t2) with (2t1,t2) in {(2,3),(4,6)}
        let q = closure(&[pt(&[4, 6])]).unwrap().quotient(0, 2).unwrap();
        assert_eq!(q, set(2, &[&[1, 3], &[2, 6]]));
        assert!(q.is_division_closed());
    }

    #[test]
    fn line_intersections() {
        let s = sq_set(&[2, 2], 2, &[0, 1]).unwrap();
        // (3,3) already costs 1 + 1 > q - 1
        assert_eq!(s.line_multiples(&pt(&[1, 1])), vec![1, 2]);
        assert_eq!(s.line_multiples(&pt(&[1, 2])), vec![1, 2]);
        assert_eq!(sq_set(&[2], 2, &[0]).unwrap().line_multiples(&pt(&[1])), vec![1, 2, 3, 4]);
        assert!(s.line_multiples(&pt(&[9, 1])).is_empty());
        assert!(s.line_weights(&pt(&[9, 1])).is_empty());
        let c = closure(&[pt(&[4, 6])]).unwrap();
        assert_eq!(c.line_weights(&pt(&[4, 6])), vec![1, 2]);
    }

    #[test]
    fn p_lines() {
        let s = sq_set(&[2], 2, &[0]).unwrap();
        assert_eq!(s, TruncationSet::interval(4));
        assert_eq!(s.p_line_length(&pt(&[1]), 3), 2);
        assert_eq!(s.p_line_length(&pt(&[5]), 3), 0);
        let t = sq_set(&[2, 2], 1, &[0, 1]).unwrap();
        assert_eq!(t.p_line_length(&pt(&[1, 1]), 3), 1);
    }

    #[test]
    fn json_shape() {
        let s = closure(&[pt(&[2, 2])]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"n":2,"points":[[1,1],[2,2]]}"#);
        assert_eq!(serde_json::from_str::<TruncationSet>(&text).unwrap(), s);
        assert!(serde_json::from_str::<TruncationSet>(r#"{"n":2,"points":[[2,2]]}"#).is_err());
    }
}
