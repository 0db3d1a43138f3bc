//! Witt vectors on truncation sets in `N^n`.
//!
//! `W_S(R)` is `R^S` with the unique functorial ring structure making the
//! ghost map
//!
//! ```text
//! w_s = sum_{d u = s} gcd(u) * x_u^d
//! ```
//!
//! a ring homomorphism. Along an orbit line `{k s0}` (with `s0` primitive)
//! `gcd(k s0) = k`, so the ghost map is the classical one in the multiplier
//! `k`. All arithmetic is therefore done line by line with the classical
//! universal polynomials from [`universal`].

pub mod split;
pub mod universal;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd};
use crate::error::{Error, Result};
use crate::rings::{Elem, MPoly, Ring, RingDescriptor};
use crate::truncation::{Point, TruncationSet};

use universal::{decode_var, point_poly, Op};

pub use split::{assemble, p_typical_split, PTypicalSplit};

/// Solves `x_k = (w_k - sum_{t | k, t < k} t * x_t^{k/t}) / k`.
pub(crate) fn solve_ghost_point(ring: &Ring, k: u64, ghost_k: &Elem, lower: &dyn Fn(u64) -> Elem) -> Result<Elem> {
    let mut acc = ghost_k.clone();
    for t in divisors(k) {
        if t == k {
            break;
        }
        let term = ring.mul_int(&ring.pow(&lower(t), k / t), &BigInt::from(t));
        acc = ring.sub(&acc, &term);
    }
    ring.div_exact(&acc, &BigInt::from(k))
}

/// An element of `W_S(R)`, stored sparsely (absent points are zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    set: TruncationSet,
    ring: Ring,
    components: BTreeMap<Point, Elem>,
}

impl WittVector {
    pub fn zero(set: &TruncationSet, ring: &Ring) -> WittVector {
        WittVector { set: set.clone(), ring: ring.clone(), components: BTreeMap::new() }
    }

    /// The multiplicative unit: 1 at each primitive point, 0 elsewhere.
    pub fn one(set: &TruncationSet, ring: &Ring) -> WittVector {
        let comps = set.points().filter(|p| p.is_primitive()).map(|p| (p.clone(), ring.one()));
        WittVector::from_components(set, ring, comps).expect("points lie in the set")
    }

    pub fn from_components(
        set: &TruncationSet,
        ring: &Ring,
        components: impl IntoIterator<Item = (Point, Elem)>,
    ) -> Result<WittVector> {
        let mut map = BTreeMap::new();
        for (p, x) in components {
            if !set.contains(&p) {
                return Err(Error::SetMismatch(format!("component at {p} lies outside the truncation set")));
            }
            if !ring.contains(&x) {
                return Err(Error::RingMismatch(format!("{x:?}"), ring.to_string()));
            }
            if !ring.is_zero(&x) {
                map.insert(p, x);
            }
        }
        Ok(WittVector { set: set.clone(), ring: ring.clone(), components: map })
    }

    /// Builds a vector from a function of the point.
    pub fn from_fn(set: &TruncationSet, ring: &Ring, mut f: impl FnMut(&Point) -> Elem) -> WittVector {
        let comps: Vec<(Point, Elem)> = set.points().map(|p| (p.clone(), f(p))).collect();
        WittVector::from_components(set, ring, comps).expect("components built from the set")
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn get(&self, p: &Point) -> Elem {
        self.components.get(p).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero components in lexicographic point order.
    pub fn components(&self) -> &BTreeMap<Point, Elem> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn check_compatible(&self, other: &WittVector) -> Result<()> {
        if self.set != other.set {
            return Err(Error::SetMismatch(format!("{} vs {}", self.set, other.set)));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    /// The ghost components `w_s` for every `s` in the set.
    pub fn ghost(&self) -> BTreeMap<Point, Elem> {
        let ring = &self.ring;
        self.set
            .points()
            .map(|s| {
                let c = s.content();
                let mut w = ring.zero();
                for d in divisors(c) {
                    let x = self.get(&s.shrink(d));
                    if ring.is_zero(&x) {
                        continue;
                    }
                    // gcd(s/d) = c/d
                    let term = ring.mul_int(&ring.pow(&x, d), &BigInt::from(c / d));
                    w = ring.add(&w, &term);
                }
                (s.clone(), w)
            })
            .collect()
    }

    /// Inverts the ghost map over a torsion-free ring. Over the integers this
    /// fails with `NonIntegralDivision` unless `ghost` is a ghost image.
    pub fn ghost_inverse(set: &TruncationSet, ring: &Ring, ghost: &BTreeMap<Point, Elem>) -> Result<WittVector> {
        if !ring.is_torsion_free() {
            return Err(Error::Unsupported { op: "ghost_inverse", ring: ring.to_string() });
        }
        let mut solved: BTreeMap<Point, Elem> = BTreeMap::new();
        for (s0, mults) in set.decompose().lines() {
            let mut line: HashMap<u64, Elem> = HashMap::new();
            for &k in mults {
                let s = s0.scale(k);
                let w = ghost.get(&s).cloned().unwrap_or_else(|| ring.zero());
                let x = solve_ghost_point(ring, k, &w, &|t| line[&t].clone())?;
                line.insert(k, x.clone());
                solved.insert(s, x);
            }
        }
        WittVector::from_components(set, ring, solved)
    }

    /// Values of the vector along the line through `s0`, keyed by multiplier.
    fn line_values(&self, s0: &Point, mults: &[u64]) -> HashMap<u64, Elem> {
        mults.iter().map(|&k| (k, self.get(&s0.scale(k)))).collect()
    }

    fn binary(&self, other: &WittVector, op: Op) -> Result<WittVector> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.set.len());
        for (s0, mults) in self.set.decompose().lines() {
            let xs = self.line_values(s0, mults);
            let ys = other.line_values(s0, mults);
            for &k in mults {
                let poly = point_poly(op, k)?;
                let value = eval_line(ring, &poly, &xs, Some(&ys));
                out.push((s0.scale(k), value));
            }
        }
        WittVector::from_components(&self.set, ring, out)
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.binary(other, Op::Sum)
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.binary(other, Op::Product)
    }

    pub fn neg(&self) -> WittVector {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.components.len());
        for (s0, mults) in self.set.decompose().lines() {
            let xs = self.line_values(s0, mults);
            for &k in mults {
                let poly = point_poly(Op::Negation, k).expect("positive multiplier");
                out.push((s0.scale(k), eval_line(ring, &poly, &xs, None)));
            }
        }
        WittVector::from_components(&self.set, ring, out).expect("same set and ring")
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// `n * x` in the additive group of `W_S(R)`.
    pub fn mul_int(&self, n: i64) -> WittVector {
        let mut base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = WittVector::zero(&self.set, &self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("compatible");
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base).expect("compatible");
            }
        }
        acc
    }

    /// Projection onto a smaller truncation set.
    pub fn restrict(&self, target: &TruncationSet) -> Result<WittVector> {
        if !target.is_subset(&self.set) {
            return Err(Error::SetMismatch(format!("{target} is not a subset of {}", self.set)));
        }
        let comps = self.components.iter().filter(|(p, _)| target.contains(p)).map(|(p, x)| (p.clone(), x.clone()));
        WittVector::from_components(target, &self.ring, comps)
    }

    /// `V^i_r : W_{S/(1,..,r,..,1)}(R) -> W_S(R)`; `self` must live on the
    /// quotient of `target` along the 0-based `axis`.
    pub fn verschiebung(&self, target: &TruncationSet, axis: usize, r: u64) -> Result<WittVector> {
        let expected = target.quotient(axis, r)?;
        if expected != self.set {
            return Err(Error::SetMismatch(format!(
                "Verschiebung source must be {expected}, found {}",
                self.set
            )));
        }
        let comps = self.components.iter().map(|(p, x)| {
            let mut c = p.coords().to_vec();
            c[axis] *= r;
            (Point::new(c).expect("positive coordinates"), x.clone())
        });
        WittVector::from_components(target, &self.ring, comps)
    }

    /// `F^i_r : W_S(R) -> W_{S/(1,..,r,..,1)}(R)` along the 0-based `axis`.
    ///
    /// On the line through primitive `s0` with `d = gcd(s0_i, r)` and
    /// `e = r/d` this is the classical `F_e`, landing on the line through
    /// `s0` with `i`-th coordinate divided by `d`.
    pub fn frobenius(&self, axis: usize, r: u64) -> Result<WittVector> {
        let target = self.set.quotient(axis, r)?;
        let ring = &self.ring;
        let mut out = Vec::new();
        for (s0, mults) in self.set.decompose().lines() {
            let d = gcd(s0.coords()[axis], r);
            let e = r / d;
            let mut u0: Vec<u64> = s0.coords().iter().map(|&c| c * e).collect();
            u0[axis] = s0.coords()[axis] / d;
            let u0 = Point::new(u0).expect("positive coordinates");
            let xs = self.line_values(s0, mults);
            for k in mults.iter().filter(|&&m| m % e == 0).map(|&m| m / e) {
                let value = if e == 1 {
                    xs[&k].clone()
                } else {
                    eval_line(ring, &*point_poly(Op::Frobenius(e), k)?, &xs, None)
                };
                out.push((u0.scale(k), value));
            }
        }
        WittVector::from_components(&target, ring, out)
    }

    /// Applies a ring map to every component (e.g. reduction `Z -> Z/m`).
    pub fn map_ring(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Result<WittVector> {
        let comps: Vec<(Point, Elem)> = self.components.iter().map(|(p, x)| (p.clone(), f(x))).collect();
        WittVector::from_components(&self.set, target, comps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RawWitt::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<WittVector> {
        let raw: RawWitt = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        WittVector::try_from(raw)
    }
}

/// Evaluates a universal polynomial with `X_t -> xs[t]` and `Y_t -> ys[t]`.
fn eval_line(ring: &Ring, poly: &MPoly<BigInt>, xs: &HashMap<u64, Elem>, ys: Option<&HashMap<u64, Elem>>) -> Elem {
    let zero = ring.zero();
    ring.eval_poly(poly, &|v| {
        let (is_y, t) = decode_var(v);
        let src = if is_y { ys.expect("binary operation") } else { xs };
        src.get(&t).cloned().unwrap_or_else(|| zero.clone())
    })
}

/// Serialized form: `{"set":…, "ring":…, "components":[[[1,1],"2"], …]}`.
#[derive(Serialize, Deserialize)]
pub struct RawWitt {
    pub set: TruncationSet,
    pub ring: RingDescriptor,
    pub components: Vec<(Point, String)>,
}

impl From<&WittVector> for RawWitt {
    fn from(x: &WittVector) -> Self {
        RawWitt {
            set: x.set.clone(),
            ring: x.ring.descriptor().clone(),
            components: x.components.iter().map(|(p, e)| (p.clone(), x.ring.format(e))).collect(),
        }
    }
}

impl TryFrom<RawWitt> for WittVector {
    type Error = Error;

    fn try_from(raw: RawWitt) -> Result<Self> {
        let ring = Ring::new(raw.ring)?;
        let comps = raw
            .components
            .into_iter()
            .map(|(p, s)| Ok((p, ring.parse(&s)?)))
            .collect::<Result<Vec<_>>>()?;
        WittVector::from_components(&raw.set, &ring, comps)
    }
}

impl Serialize for WittVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawWitt::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WittVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawWitt::deserialize(deserializer)?;
        WittVector::try_from(raw).map_err(serde::de::Error::custom)
    }
}
