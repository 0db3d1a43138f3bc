//! K-groups of truncated polynomial rings `k[x_1..x_n]/(x_1^a_1, .., x_n^a_n)`
//! over finite fields `k = F_{p^f}`, assembled from Witt groups on the sets
//! `S_q(I)`.
//!
//! Over `F_{p^f}` the Witt group on a truncation set is `⊕ (Z/p^m)^f`, one
//! summand per point `s` with `p ∤ gcd(s)`, where `m` is the length of the
//! p-line `{s, ps, p^2 s, ..}` inside the set. [`khat_brute`] certifies this
//! on small cases by enumerating the group.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::rings::{is_prime, Elem, Ring};
use crate::truncation::{closure, sq_set, Point, TruncationSet};
use crate::witt::WittVector;

/// A finite abelian p-group by its invariant factors, largest first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn from_factors(mut factors: Vec<u64>) -> AbelianGroup {
        factors.retain(|&c| c > 1);
        factors.sort_unstable_by(|a, b| b.cmp(a));
        AbelianGroup { factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors.iter().map(|&c| BigUint::from(c)).product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::from_factors(self.factors.iter().chain(&other.factors).copied().collect())
    }

    /// `G^{⊕ k}`.
    pub fn power(&self, k: u64) -> AbelianGroup {
        let mut factors = Vec::with_capacity(self.factors.len() * k as usize);
        for _ in 0..k {
            factors.extend_from_slice(&self.factors);
        }
        AbelianGroup::from_factors(factors)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let c = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == c).count();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "Z/{c}")?;
            } else {
                write!(f, "(Z/{c})^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// The field `F_{p^f}` and the exponents `a_1..a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub p: u64,
    pub f: u32,
    pub a: Vec<u64>,
}

impl ProblemSpec {
    pub fn new(p: u64, f: u32, a: Vec<u64>) -> Result<ProblemSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidRing("field degree must be positive".into()));
        }
        if a.is_empty() {
            return Err(Error::InvalidPoint("at least one variable is required".into()));
        }
        if let Some(&ai) = a.iter().find(|&&ai| ai < 2) {
            return Err(Error::InvalidPoint(format!("truncation exponent {ai} must be at least 2")));
        }
        Ok(ProblemSpec { p, f, a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn field(&self) -> Result<Ring> {
        Ring::finite_field(self.p, self.f)
    }

    fn check_coprime(&self) -> Result<()> {
        match self.a.iter().find(|&&ai| ai % self.p == 0) {
            Some(ai) => Err(Error::HypothesisViolation(format!(
                "p = {} divides the exponent {ai}; no closed form is available",
                self.p
            ))),
            None => Ok(()),
        }
    }

    fn all_axes(&self) -> Vec<usize> {
        (0..self.n()).collect()
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "k = F_{}^{}, a = ({})", self.p, self.f, a.join(","))
    }
}

/// The p-lines of `set` starting at points with `p ∤ gcd(s)` that also
/// pass `keep`, with their lengths.
fn p_lines(set: &TruncationSet, p: u64, keep: impl Fn(&Point) -> bool) -> Vec<(Point, usize)> {
    set.points()
        .filter(|s| s.content() % p != 0 && keep(s))
        .map(|s| (s.clone(), set.p_line_length(s, p)))
        .collect()
}

fn group_of_lines(lines: &[(Point, usize)], p: u64, f: u32) -> AbelianGroup {
    let mut factors = Vec::with_capacity(lines.len() * f as usize);
    for (_, m) in lines {
        let c = p.pow(*m as u32);
        factors.extend(std::iter::repeat(c).take(f as usize));
    }
    AbelianGroup::from_factors(factors)
}

/// `W_S(F_{p^f})` as an abelian group.
pub fn witt_group(set: &TruncationSet, p: u64, f: u32) -> AbelianGroup {
    group_of_lines(&p_lines(set, p, |_| true), p, f)
}

/// One entry of the reduced page: the vertex `I` (0-based axes) and its group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexGroup {
    pub axes: Vec<usize>,
    /// `log_|k|` of the order, equal to `|S_q(I)|`.
    pub exponent: u64,
    pub group: AbelianGroup,
}

/// Column `s` of `Ê_1^{s, 2q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Column {
    pub s: usize,
    pub vertices: Vec<VertexGroup>,
    /// Sum of the per-vertex exponents: the order of the column is the
    /// product of the vertex orders, `|k|^exponent`.
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1HatRow {
    pub q: u64,
    pub t: u64,
    pub columns: Vec<E1Column>,
    pub order_note: String,
}

/// The column orders are products over `I`; a sum of orders only appears as
/// the sum of `log_|k|` exponents.
pub const ORDER_NOTE: &str = "column order is the product over |I| = s of |k|^|S_q(I)|; the exponents add";

fn subsets_of_size(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(0, n, s, &mut cur, &mut out);
    out
}

/// The row `t = 2q - 1` of the reduced page `Ê_1`.
pub fn e1_hat(spec: &ProblemSpec, q: u64) -> Result<E1HatRow> {
    if q == 0 {
        return Err(Error::InvalidPoint("q must be positive".into()));
    }
    let n = spec.n();
    let mut columns = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut vertices = Vec::new();
        for axes in subsets_of_size(n, s) {
            let set = sq_set(&spec.a, q, &axes)?;
            let exponent = set.len() as u64;
            let group = witt_group(&set, spec.p, spec.f);
            vertices.push(VertexGroup { axes, exponent, group });
        }
        let exponent = vertices.iter().map(|v| v.exponent).sum();
        columns.push(E1Column { s, vertices, exponent });
    }
    Ok(E1HatRow { q, t: 2 * q - 1, columns, order_note: ORDER_NOTE.into() })
}

/// `Ê_1^{s,t}`; zero for even `t`.
fn e1_hat_entry(rows: &HashMap<u64, E1HatRow>, s: usize, t: u64) -> (u64, AbelianGroup) {
    if t % 2 == 0 {
        return (0, AbelianGroup::trivial());
    }
    match rows.get(&t.div_ceil(2)) {
        Some(row) => {
            let col = &row.columns[s];
            let group = col.vertices.iter().fold(AbelianGroup::trivial(), |g, v| g.direct_sum(&v.group));
            (col.exponent, group)
        }
        None => (0, AbelianGroup::trivial()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Entry {
    pub s: usize,
    pub t: u64,
    pub exponent: u64,
    pub group: AbelianGroup,
}

/// The full page `E_1 = Ê_1 ⊗ E(x_1..x_{n-1})`, rows `1 <= t <= 2 q_max - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Page {
    pub spec: ProblemSpec,
    pub q_max: u64,
    pub entries: Vec<E1Entry>,
    pub order_note: String,
}

pub fn e1_full(spec: &ProblemSpec, q_max: u64) -> Result<E1Page> {
    if q_max == 0 {
        return Err(Error::InvalidPoint("q must be positive".into()));
    }
    let n = spec.n();
    let rows: HashMap<u64, E1HatRow> = (1..=q_max).map(|q| Ok((q, e1_hat(spec, q)?))).collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for t in 1..=2 * q_max - 1 {
        for s in 0..=n {
            let (mut exponent, mut group) = (0, AbelianGroup::trivial());
            for k in 0..n.min(t as usize + 1) {
                let mult = binomial((n - 1) as u64, k as u64);
                let mult = u64::try_from(mult).expect("small binomial");
                let (e, g) = e1_hat_entry(&rows, s, t - k as u64);
                exponent += e * mult;
                group = group.direct_sum(&g.power(mult));
            }
            entries.push(E1Entry { s, t, exponent, group });
        }
    }
    Ok(E1Page { spec: spec.clone(), q_max, entries, order_note: ORDER_NOTE.into() })
}

/// Points of `S_q({1..n})` indexing the summands of `K̂_{2q-1}`, with their
/// p-line lengths. Needs no field, so it also describes the answer for a
/// perfect field of characteristic `p` symbolically.
pub fn khat_lines(a: &[u64], p: u64, q: u64) -> Result<Vec<(Point, usize)>> {
    let axes: Vec<usize> = (0..a.len()).collect();
    let set = sq_set(a, q, &axes)?;
    Ok(p_lines(&set, p, |s| s.coords().iter().zip(a).all(|(&si, &ai)| si % ai != 0)))
}

/// Closed form for `K̂_{2q-1}`.
pub fn khat_group(spec: &ProblemSpec, q: u64) -> Result<AbelianGroup> {
    spec.check_coprime()?;
    Ok(group_of_lines(&khat_lines(&spec.a, spec.p, q)?, spec.p, spec.f))
}

/// `binom(n+q-1, n) * prod (a_i - 1)`.
pub fn khat_exponent(a: &[u64], q: u64) -> BigUint {
    let n = a.len() as u64;
    binomial(n + q - 1, n) * a.iter().map(|&ai| BigUint::from(ai - 1)).product::<BigUint>()
}

/// `|k|^khat_exponent`.
pub fn khat_order_formula(spec: &ProblemSpec, q: u64) -> BigUint {
    let e = u32::try_from(khat_exponent(&spec.a, q)).expect("exponent fits u32");
    BigUint::from(spec.p).pow(spec.f).pow(e)
}

fn log_order(group: &AbelianGroup, spec: &ProblemSpec) -> u64 {
    group.factors.iter().map(|&c| c.ilog(spec.p) as u64).sum::<u64>() / spec.f as u64
}

/// Default oracle budget on `|k|^{|S_q|}`.
pub const DEFAULT_BUDGET: u64 = 6561;

/// `W_S(F_{p^f})` as an explicit finite group: elements are encoded in base
/// `|k|` by their components in point order.
struct ExplicitWitt {
    set: TruncationSet,
    ring: Ring,
    points: Vec<Point>,
    elems: Vec<Elem>,
    index: HashMap<Elem, u64>,
    q: u64,
}

impl ExplicitWitt {
    fn new(set: &TruncationSet, ring: &Ring) -> ExplicitWitt {
        let elems = ring.elements().expect("finite field");
        let index = elems.iter().enumerate().map(|(i, x)| (x.clone(), i as u64)).collect();
        ExplicitWitt {
            set: set.clone(),
            ring: ring.clone(),
            points: set.points().cloned().collect(),
            q: elems.len() as u64,
            elems,
            index,
        }
    }

    fn size(&self) -> u64 {
        self.q.pow(self.points.len() as u32)
    }

    fn decode(&self, mut code: u64) -> WittVector {
        let mut comps = Vec::new();
        for p in &self.points {
            comps.push((p.clone(), self.elems[(code % self.q) as usize].clone()));
            code /= self.q;
        }
        WittVector::from_components(&self.set, &self.ring, comps).expect("points of the set")
    }

    fn encode(&self, x: &WittVector) -> u64 {
        self.points.iter().rev().fold(0, |acc, p| acc * self.q + self.index[&x.get(p)])
    }

    fn add(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.encode(&self.decode(a).add(&self.decode(b))?))
    }
}

fn check_budget(q: u64, points: usize, budget: u64) -> Result<()> {
    let needed = BigUint::from(q).pow(points as u32);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { needed: needed.to_string(), budget });
    }
    Ok(())
}

/// Invariant factors of a finite abelian p-group from the sizes
/// `n_j = |{x : p^j x = 0}|`, given as `log_p n_j` for `j = 0, 1, ..`.
pub fn factors_from_profile(p: u64, log_kernel: &[u64]) -> AbelianGroup {
    let mut factors = Vec::new();
    // the number of cyclic factors of exponent >= j is log n_j - log n_{j-1}
    let at_least: Vec<u64> = log_kernel.windows(2).map(|w| w[1] - w[0]).collect();
    for (j, &c) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            factors.push(p.pow(j as u32 + 1));
        }
    }
    AbelianGroup::from_factors(factors)
}

/// `K̂_{2q-1}` computed literally as `W_S(k) / sum_i V^i_{a_i} W_{S/a_i}(k)` by
/// enumerating the group.
pub fn khat_brute(spec: &ProblemSpec, q: u64, budget: u64) -> Result<AbelianGroup> {
    spec.check_coprime()?;
    let ring = spec.field()?;
    let set = sq_set(&spec.a, q, &spec.all_axes())?;
    let size = ring.size().expect("finite field");
    check_budget(size, set.len(), budget)?;
    let big = ExplicitWitt::new(&set, &ring);

    let mut gens: Vec<u64> = Vec::new();
    for (axis, &ai) in spec.a.iter().enumerate() {
        let source = set.quotient(axis, ai)?;
        let small = ExplicitWitt::new(&source, &ring);
        // single-component vectors generate the source group
        let mut basis = Vec::new();
        for p in source.points() {
            for c in ring.elements().expect("finite").into_iter().filter(|c| !ring.is_zero(c)) {
                basis.push(WittVector::from_components(&source, &ring, [(p.clone(), c)])?);
            }
        }
        let images: Vec<WittVector> = basis.iter().map(|x| x.verschiebung(&set, axis, ai)).collect::<Result<_>>()?;
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate().skip(i) {
                let lhs = x.add(y)?.verschiebung(&set, axis, ai)?;
                if lhs != images[i].add(&images[j])? {
                    return Err(Error::InternalVerificationFailure(format!(
                        "V along axis {} by {ai} is not additive at {} and {}",
                        axis + 1,
                        small.encode(x),
                        small.encode(y)
                    )));
                }
            }
        }
        gens.extend(images.iter().map(|v| big.encode(v)));
    }
    gens.sort_unstable();
    gens.dedup();

    // the image subgroup, by closure under adding generators
    let mut in_h = vec![false; big.size() as usize];
    let mut h = vec![0u64];
    in_h[0] = true;
    let mut queue = VecDeque::from([0u64]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = big.add(x, g)?;
            if !in_h[y as usize] {
                in_h[y as usize] = true;
                h.push(y);
                queue.push_back(y);
            }
        }
    }

    // cosets of the image, each with its order in the quotient
    let mut coset = vec![u32::MAX; big.size() as usize];
    let mut orders: Vec<u32> = Vec::new();
    for x in 0..big.size() {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = orders.len() as u32;
        for &y in &h {
            coset[big.add(x, y)? as usize] = id;
        }
        let (mut j, mut cur) = (0u32, x);
        while !in_h[cur as usize] {
            let mut next = 0;
            for _ in 0..spec.p {
                next = big.add(next, cur)?;
            }
            cur = next;
            j += 1;
        }
        orders.push(j);
    }
    let max_j = orders.iter().copied().max().unwrap_or(0);
    let log_kernel: Vec<u64> = (0..=max_j + 1)
        .map(|j| {
            let count = orders.iter().filter(|&&o| o <= j).count() as u64;
            count.ilog(spec.p) as u64
        })
        .collect();
    Ok(factors_from_profile(spec.p, &log_kernel))
}

/// `K̃_m = ⊕_k K̂_{m-k}^{binom(n-1,k)}`, with `K̂` in odd degrees only.
pub fn ktilde_groups(spec: &ProblemSpec, m: u64) -> Result<AbelianGroup> {
    spec.check_coprime()?;
    let n = spec.n();
    let mut group = AbelianGroup::trivial();
    for k in 0..n.min(m as usize + 1) {
        let deg = m - k as u64;
        if deg % 2 == 0 {
            continue;
        }
        let mult = u64::try_from(binomial((n - 1) as u64, k as u64)).expect("small binomial");
        group = group.direct_sum(&khat_group(spec, deg.div_ceil(2))?.power(mult));
    }
    Ok(group)
}

/// The TF group in a given degree at the vertex `I` and weight vector `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TfResult {
    pub degree: u64,
    /// `S_q(I) ∩ <s>`; empty in even degrees.
    pub set: Vec<Point>,
    /// The `d` with `s/d` in the set: the restriction maps `R_d` that land
    /// in a nonzero summand.
    pub weights: Vec<u64>,
    pub group: AbelianGroup,
}

pub fn tf_group(spec: &ProblemSpec, axes: &[usize], s: &Point, degree: u64) -> Result<TfResult> {
    if s.dim() != spec.n() {
        return Err(Error::DimensionMismatch { expected: spec.n(), found: s.dim() });
    }
    if degree % 2 == 0 {
        return Ok(TfResult { degree, set: Vec::new(), weights: Vec::new(), group: AbelianGroup::trivial() });
    }
    let sq = sq_set(&spec.a, degree.div_ceil(2), axes)?;
    let set = sq.intersection(&closure(std::slice::from_ref(s))?)?;
    let weights = sq.line_weights(s);
    let group = witt_group(&set, spec.p, spec.f);
    Ok(TfResult { degree, set: set.points().cloned().collect(), weights, group })
}

/// Result record for `K̂` computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhatReport {
    pub spec: ProblemSpec,
    pub q: u64,
    pub group: AbelianGroup,
    pub order_log_k: u64,
    pub checks: KhatChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhatChecks {
    pub order_formula: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
}

/// Runs [`khat_group`] and checks the order against [`khat_order_formula`];
/// with `oracle` set, also compares against [`khat_brute`].
pub fn khat_report(spec: &ProblemSpec, q: u64, oracle: Option<u64>) -> Result<KhatReport> {
    let group = khat_group(spec, q)?;
    let order_log_k = log_order(&group, spec);
    let order_formula = group.order() == khat_order_formula(spec, q);
    let oracle = match oracle {
        Some(budget) => Some(khat_brute(spec, q, budget)? == group),
        None => None,
    };
    Ok(KhatReport { spec: spec.clone(), q, group, order_log_k, checks: KhatChecks { order_formula, oracle } })
}
