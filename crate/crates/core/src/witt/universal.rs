//! Universal integer polynomials for Witt vector arithmetic on
//! one-dimensional truncation sets.
//!
//! For an operation and a point `k`, the polynomial lives in `Z[X_t, Y_t]`
//! with `t | k` (for `frobenius(e)`, `t | e*k`). It depends only on `k`, so
//! the table for a truncation set is the collection of its points'
//! polynomials; these are memoized process-wide and, when `WITT_CACHE_DIR`
//! is set, persisted as canonical JSON.
//!
//! Variable `X_t` has index `2(t-1)` and `Y_t` index `2(t-1)+1`.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::rings::{Elem, MPoly, Monomial, Ring, RingDescriptor};
use crate::truncation::TruncationSet;

use super::solve_ghost_point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Sum,
    Product,
    Negation,
    /// `F_e`, with ghost rule `w_k -> w_{e k}`.
    Frobenius(u64),
}

impl Op {
    fn slug(&self) -> String {
        match self {
            Op::Sum => "sum".into(),
            Op::Product => "product".into(),
            Op::Negation => "negation".into(),
            Op::Frobenius(e) => format!("frobenius{e}"),
        }
    }

    /// Largest variable index `t` involved at point `k`.
    fn reach(&self, k: u64) -> u64 {
        match self {
            Op::Frobenius(e) => e * k,
            _ => k,
        }
    }
}

pub fn x_var(t: u64) -> u32 {
    (2 * (t - 1)) as u32
}

pub fn y_var(t: u64) -> u32 {
    (2 * (t - 1) + 1) as u32
}

/// Decodes a variable index into `(is_y, t)`.
pub fn decode_var(v: u32) -> (bool, u64) {
    (v % 2 == 1, v as u64 / 2 + 1)
}

fn var_names(max_t: u64) -> Vec<String> {
    (1..=max_t).flat_map(|t| [format!("X{t}"), format!("Y{t}")]).collect()
}

fn poly_ring(max_t: u64) -> Ring {
    Ring::polynomial(RingDescriptor::Integers, var_names(max_t)).expect("valid polynomial ring")
}

/// The ghost component `sum_{t|k} t * V_t^{k/t}` in the `X` (or `Y`) variables.
fn formal_ghost(k: u64, y: bool) -> MPoly<BigInt> {
    MPoly::from_terms(divisors(k).into_iter().map(|t| {
        let v = if y { y_var(t) } else { x_var(t) };
        (Monomial::var(v).pow((k / t) as u32), BigInt::from(t))
    }))
}

fn ghost_target(op: Op, k: u64) -> MPoly<BigInt> {
    match op {
        Op::Sum => formal_ghost(k, false).add(&formal_ghost(k, true)),
        Op::Product => formal_ghost(k, false).mul(&formal_ghost(k, true)),
        Op::Negation => formal_ghost(k, false).neg(),
        Op::Frobenius(e) => formal_ghost(e * k, false),
    }
}

/// Runs the ghost inversion recursion at `k`, given the polynomials at the
/// proper divisors of `k`. Integrality is certified by exact division.
fn compute_point(op: Op, k: u64, lower: &dyn Fn(u64) -> Arc<MPoly<BigInt>>) -> Result<MPoly<BigInt>> {
    let ring = poly_ring(op.reach(k));
    let target = Elem::PolyZ(ghost_target(op, k));
    let solved = solve_ghost_point(&ring, k, &target, &|t| Elem::PolyZ((*lower(t)).clone())).map_err(|e| {
        Error::InternalVerificationFailure(format!("universal {} polynomial at {k} is not integral: {e}", op.slug()))
    })?;
    match solved {
        Elem::PolyZ(p) => Ok(p),
        _ => unreachable!("polynomial ring yields polynomials"),
    }
}

type Cache = RwLock<HashMap<(Op, u64), Arc<MPoly<BigInt>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The memoized universal polynomial for `op` at point `k`.
pub fn point_poly(op: Op, k: u64) -> Result<Arc<MPoly<BigInt>>> {
    if k == 0 || matches!(op, Op::Frobenius(0)) {
        return Err(Error::InvalidPoint("truncation set elements and Frobenius indices must be positive".into()));
    }
    if let Some(p) = cache().read().expect("cache lock").get(&(op, k)) {
        return Ok(p.clone());
    }
    let poly = match disk::load(op, k) {
        Some(p) => p,
        None => {
            for t in divisors(k) {
                if t < k {
                    point_poly(op, t)?;
                }
            }
            let lower = |t: u64| cache().read().expect("cache lock")[&(op, t)].clone();
            let p = compute_point(op, k, &lower)?;
            disk::store(op, k, &p);
            p
        }
    };
    // write-once: a racing writer installs the identical canonical polynomial
    let mut guard = cache().write().expect("cache lock");
    Ok(guard.entry((op, k)).or_insert_with(|| Arc::new(poly)).clone())
}

/// Polynomials of one operation over a one-dimensional truncation set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPolynomialTable {
    pub op: Op,
    /// The source truncation set (for Frobenius, the table covers `set/e`).
    pub set: Vec<u64>,
    pub polys: BTreeMap<u64, Arc<MPoly<BigInt>>>,
}

fn table_points(set: &TruncationSet, op: Op) -> Result<Vec<u64>> {
    if set.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: set.dim() });
    }
    let mults = set.multipliers();
    Ok(match op {
        Op::Frobenius(e) => mults.iter().filter(|&&m| m % e == 0).map(|&m| m / e).collect(),
        _ => mults,
    })
}

/// The table of `op` over a one-dimensional truncation set, from the cache.
pub fn universal_polys(set: &TruncationSet, op: Op) -> Result<UniversalPolynomialTable> {
    if let Op::Frobenius(0) = op {
        return Err(Error::InvalidPoint("Frobenius index must be positive".into()));
    }
    let points = table_points(set, op)?;
    let polys = points.iter().map(|&k| Ok((k, point_poly(op, k)?))).collect::<Result<_>>()?;
    Ok(UniversalPolynomialTable { op, set: set.multipliers(), polys })
}

/// Recomputes the table without consulting or filling any cache.
pub fn recompute_polys(set: &TruncationSet, op: Op) -> Result<UniversalPolynomialTable> {
    if let Op::Frobenius(0) = op {
        return Err(Error::InvalidPoint("Frobenius index must be positive".into()));
    }
    let points = table_points(set, op)?;
    let mut local: BTreeMap<u64, Arc<MPoly<BigInt>>> = BTreeMap::new();
    let mut needed: Vec<u64> = points.iter().flat_map(|&k| divisors(k)).collect();
    needed.sort_unstable();
    needed.dedup();
    for k in needed {
        let p = compute_point(op, k, &|t| local[&t].clone())?;
        local.insert(k, Arc::new(p));
    }
    let polys = points.iter().map(|k| (*k, local[k].clone())).collect();
    Ok(UniversalPolynomialTable { op, set: set.multipliers(), polys })
}

impl UniversalPolynomialTable {
    /// Renders each polynomial with variables `X1, Y1, X2, ...`.
    pub fn render(&self) -> BTreeMap<u64, String> {
        let name = |v: u32| {
            let (is_y, t) = decode_var(v);
            format!("{}{t}", if is_y { "Y" } else { "X" })
        };
        self.polys.iter().map(|(k, p)| (*k, p.render(&name))).collect()
    }
}

mod disk {
    //! Optional on-disk persistence under `WITT_CACHE_DIR`.

    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Stored {
        op: Op,
        point: u64,
        terms: Vec<(Vec<(u32, u32)>, String)>,
    }

    fn path(op: Op, k: u64) -> Option<PathBuf> {
        let dir = std::env::var_os("WITT_CACHE_DIR")?;
        Some(PathBuf::from(dir).join(format!("{}-{k}.json", op.slug())))
    }

    pub(super) fn load(op: Op, k: u64) -> Option<MPoly<BigInt>> {
        let text = std::fs::read_to_string(path(op, k)?).ok()?;
        let stored: Stored = serde_json::from_str(&text).ok()?;
        if stored.op != op || stored.point != k {
            return None;
        }
        let mut terms = Vec::with_capacity(stored.terms.len());
        for (pairs, c) in stored.terms {
            terms.push((Monomial::from_pairs(pairs), c.parse::<BigInt>().ok()?));
        }
        Some(MPoly::from_terms(terms))
    }

    pub(super) fn store(op: Op, k: u64, poly: &MPoly<BigInt>) {
        let Some(path) = path(op, k) else { return };
        let stored = Stored {
            op,
            point: k,
            terms: poly.terms().iter().map(|(m, c)| (m.pairs().to_vec(), c.to_string())).collect(),
        };
        let Ok(text) = serde_json::to_string(&stored) else { return };
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        // rename keeps concurrent writers from exposing partial files
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rendered(set: &[u64], op: Op) -> BTreeMap<u64, String> {
        universal_polys(&TruncationSet::from_multipliers(set).unwrap(), op).unwrap().render()
    }

    #[test]
    fn sum_on_one_two() {
        let r = rendered(&[1, 2], Op::Sum);
        assert_eq!(r[&1], "X1 + Y1");
        assert_eq!(r[&2], "-X1*Y1 + X2 + Y2");
    }

    #[test]
    fn product_on_one_two() {
        let r = rendered(&[1, 2], Op::Product);
        assert_eq!(r[&1], "X1*Y1");
        assert_eq!(r[&2], "X1^2*Y2 + Y1^2*X2 + 2*X2*Y2");
    }

    #[test]
    fn degree_one_answers() {
        assert_eq!(rendered(&[1], Op::Sum)[&1], "X1 + Y1");
        assert_eq!(rendered(&[1], Op::Product)[&1], "X1*Y1");
        assert_eq!(rendered(&[1], Op::Negation)[&1], "-X1");
        assert_eq!(rendered(&[1], Op::Frobenius(1))[&1], "X1");
    }

    #[test]
    fn negation_at_two() {
        // ghost: -(X1^2 + 2 X2) = N1^2 + 2 N2 with N1 = -X1
        assert_eq!(rendered(&[1, 2], Op::Negation)[&2], "-X1^2 - X2");
    }

    #[test]
    fn frobenius_two() {
        let r = rendered(&[1, 2], Op::Frobenius(2));
        assert_eq!(r.len(), 1);
        assert_eq!(r[&1], "X1^2 + 2*X2");
    }

    #[test]
    fn cached_equals_recomputed() {
        for op in [Op::Sum, Op::Product, Op::Negation, Op::Frobenius(3)] {
            let set = TruncationSet::interval(12);
            assert_eq!(universal_polys(&set, op).unwrap(), recompute_polys(&set, op).unwrap());
        }
    }
}
