//! p-typical decomposition of `W_S(R)` for `Z_(p)`-algebras `R`.
//!
//! Each orbit line `{k s0 : k in M}` splits further over the multipliers
//! `e in M` prime to `p`: the factor indexed by `(s0, e)` is the p-typical
//! Witt ring on `{1, p, ..., p^(m-1)}` with `m = #{j : e p^j in M}`, and the
//! projection onto it is restriction after the classical Frobenius `F_e`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::Ring;
use crate::truncation::{Point, TruncationSet};

use super::universal::{point_poly, Op};
use super::{eval_line, WittVector};

/// The image of a Witt vector under the p-typical splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTypicalSplit {
    pub p: u64,
    pub source: TruncationSet,
    pub ring: Ring,
    /// Factors keyed by (primitive line point, p-free multiplier); each lives
    /// on the one-dimensional set `{1, p, ..., p^(m-1)}`.
    pub factors: BTreeMap<(Point, u64), WittVector>,
}

/// `{1, p, ..., p^(m-1)}` as a one-dimensional truncation set.
pub fn p_typical_set(p: u64, m: usize) -> TruncationSet {
    let mults: Vec<u64> = (0..m as u32).map(|j| p.pow(j)).collect();
    TruncationSet::from_multipliers(&mults).expect("powers of p are divisor-closed")
}

fn check_local(ring: &Ring, p: u64) -> Result<()> {
    if ring.local_prime() != Some(p) {
        return Err(Error::HypothesisViolation(format!("{ring} is not a Z_({p})-algebra")));
    }
    Ok(())
}

/// Factor shapes `(s0, e) -> m` of the splitting of `set` at `p`.
pub fn factor_shape(set: &TruncationSet, p: u64) -> BTreeMap<(Point, u64), usize> {
    let mut shape = BTreeMap::new();
    for (s0, mults) in set.decompose().lines() {
        for &e in mults.iter().filter(|&&e| e % p != 0) {
            let m = set.p_line_length(&s0.scale(e), p);
            shape.insert((s0.clone(), e), m);
        }
    }
    shape
}

pub fn p_typical_split(x: &WittVector, p: u64) -> Result<PTypicalSplit> {
    check_local(x.ring(), p)?;
    let ring = x.ring();
    let shape = factor_shape(x.set(), p);
    let mut factors = BTreeMap::new();
    let lines = x.set().decompose();
    for ((s0, e), m) in shape {
        let mults = &lines.lines()[&s0];
        let xs = x.line_values(&s0, mults);
        let fset = p_typical_set(p, m);
        let mut comps = Vec::with_capacity(m);
        for j in 0..m as u32 {
            let k = p.pow(j);
            let value = if e == 1 { xs[&k].clone() } else { eval_line(ring, &*point_poly(Op::Frobenius(e), k)?, &xs, None) };
            comps.push((Point::new(vec![k]).expect("positive"), value));
        }
        factors.insert((s0, e), WittVector::from_components(&fset, ring, comps)?);
    }
    Ok(PTypicalSplit { p, source: x.set().clone(), ring: ring.clone(), factors })
}

/// Inverse of [`p_typical_split`].
///
/// The factor component at `(e, p^j)` is `e * x_{e p^j}` plus a polynomial in
/// components at proper divisors of `e p^j`, so the components can be
/// recovered in increasing order, dividing by the unit `e`.
pub fn assemble(split: &PTypicalSplit) -> Result<WittVector> {
    let (p, ring) = (split.p, &split.ring);
    check_local(ring, p)?;
    let expected = factor_shape(&split.source, p);
    let found: BTreeMap<(Point, u64), usize> = split.factors.iter().map(|(k, v)| (k.clone(), v.set().len())).collect();
    if expected != found {
        return Err(Error::SetMismatch("p-typical factors do not match the source truncation set".into()));
    }
    let mut out = Vec::new();
    for (s0, mults) in split.source.decompose().lines() {
        let mut xs: HashMap<u64, _> = HashMap::new();
        for &k in mults {
            let (mut e, mut j) = (k, 0u32);
            while e % p == 0 {
                e /= p;
                j += 1;
            }
            let pj = p.pow(j);
            let y = split.factors[&(s0.clone(), e)].get(&Point::new(vec![pj]).expect("positive"));
            let value = if e == 1 {
                y
            } else {
                let poly = point_poly(Op::Frobenius(e), pj)?;
                let rest = eval_line(ring, &poly, &xs, None);
                let inv = ring
                    .inv_int(&BigInt::from(e))
                    .ok_or_else(|| Error::HypothesisViolation(format!("{e} is not a unit in {ring}")))?;
                ring.mul(&ring.sub(&y, &rest), &inv)
            };
            xs.insert(k, value.clone());
            out.push((s0.scale(k), value));
        }
    }
    WittVector::from_components(&split.source, ring, out)
}

impl PTypicalSplit {
    fn zip(&self, other: &PTypicalSplit, f: impl Fn(&WittVector, &WittVector) -> Result<WittVector>) -> Result<PTypicalSplit> {
        if self.source != other.source || self.p != other.p || self.ring != other.ring {
            return Err(Error::SetMismatch("p-typical splittings of different rings".into()));
        }
        let factors = self
            .factors
            .iter()
            .map(|(key, a)| Ok((key.clone(), f(a, &other.factors[key])?)))
            .collect::<Result<_>>()?;
        Ok(PTypicalSplit { factors, ..self.clone() })
    }

    pub fn add(&self, other: &PTypicalSplit) -> Result<PTypicalSplit> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn mul(&self, other: &PTypicalSplit) -> Result<PTypicalSplit> {
        self.zip(other, |a, b| a.mul(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_of_one_to_four_at_three() {
        let shape = factor_shape(&TruncationSet::interval(4), 3);
        let one = Point::new(vec![1]).unwrap();
        let got: Vec<(u64, usize)> = shape.iter().map(|((s, e), m)| {
            assert_eq!(s, &one);
            (*e, *m)
        }).collect();
        assert_eq!(got, vec![(1, 2), (2, 1), (4, 1)]);
    }

    #[test]
    fn singleton_is_identity() {
        let f3 = Ring::finite_field(3, 1).unwrap();
        let set = TruncationSet::interval(1);
        for c in f3.elements().unwrap() {
            let x = WittVector::from_fn(&set, &f3, |_| c.clone());
            let s = p_typical_split(&x, 3).unwrap();
            assert_eq!(s.factors.len(), 1);
            assert_eq!(s.factors.values().next().unwrap().get(&Point::new(vec![1]).unwrap()), c);
            assert_eq!(assemble(&s).unwrap(), x);
        }
    }

    #[test]
    fn rejects_non_local_rings() {
        let z = Ring::integers();
        let x = WittVector::zero(&TruncationSet::interval(2), &z);
        assert!(matches!(p_typical_split(&x, 3), Err(Error::HypothesisViolation(_))));
        let f2 = Ring::finite_field(2, 1).unwrap();
        let y = WittVector::zero(&TruncationSet::interval(2), &f2);
        assert!(p_typical_split(&y, 3).is_err());
    }
}
