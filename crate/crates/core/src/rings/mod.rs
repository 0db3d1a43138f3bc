//! Exact coefficient rings.
//!
//! A [`Ring`] is a validated, immutable handle built from a
//! [`RingDescriptor`]; ring elements ([`Elem`]) are plain values whose
//! meaning is given by the handle they are used with.

mod fp;
mod mpoly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fp::{default_modulus, is_irreducible, is_prime, FieldCtx};
pub use mpoly::{Coeff, MPoly, Monomial};

/// Serializable description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    Integers,
    Rationals,
    IntegersModM {
        m: u64,
    },
    /// `F_p[t]/(modulus)`; `modulus` is monic of degree `f`, coefficients
    /// low-degree-first. When omitted the least irreducible one is used.
    FiniteField {
        p: u64,
        f: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    PolynomialRing {
        base: Box<RingDescriptor>,
        variables: Vec<String>,
    },
}

impl RingDescriptor {
    pub fn finite_field(p: u64, f: u32) -> Self {
        RingDescriptor::FiniteField { p, f, modulus: None }
    }

    pub fn polynomial(base: RingDescriptor, variables: &[&str]) -> Self {
        RingDescriptor::PolynomialRing {
            base: Box::new(base),
            variables: variables.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::IntegersModM { m } => write!(f, "Z/{m}"),
            RingDescriptor::FiniteField { p, f: deg, .. } => write!(f, "F_{p}^{deg}"),
            RingDescriptor::PolynomialRing { base, variables } => write!(f, "{base}[{}]", variables.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Z,
    Q,
    Zm(u64),
    Ff(FieldCtx),
    PolyZ(Vec<String>),
    PolyQ(Vec<String>),
}

/// A ring element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Ff(Vec<u64>),
    PolyZ(MPoly<BigInt>),
    PolyQ(MPoly<BigRational>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    desc: RingDescriptor,
    kind: Kind,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.desc.fmt(f)
    }
}

impl Ring {
    /// Validates `desc` and builds a ring handle. For finite fields without an
    /// explicit modulus the default one is filled in.
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        let (desc, kind) = match desc {
            RingDescriptor::Integers => (RingDescriptor::Integers, Kind::Z),
            RingDescriptor::Rationals => (RingDescriptor::Rationals, Kind::Q),
            RingDescriptor::IntegersModM { m } => {
                if m < 2 {
                    return Err(Error::InvalidRing(format!("modulus m = {m} must be at least 2")));
                }
                (RingDescriptor::IntegersModM { m }, Kind::Zm(m))
            }
            RingDescriptor::FiniteField { p, f, modulus } => {
                if !is_prime(p) {
                    return Err(Error::InvalidRing(format!("characteristic p = {p} is not prime")));
                }
                if p > u32::MAX as u64 {
                    return Err(Error::InvalidRing(format!("characteristic p = {p} exceeds 32 bits")));
                }
                if f == 0 {
                    return Err(Error::InvalidRing("field degree f must be positive".into()));
                }
                let modulus = match modulus {
                    Some(m) => {
                        if m.len() != f as usize + 1 || m[f as usize] != 1 {
                            return Err(Error::InvalidRing(format!("modulus {m:?} is not monic of degree {f}")));
                        }
                        if m.iter().any(|&c| c >= p) {
                            return Err(Error::InvalidRing(format!("modulus {m:?} has coefficients outside [0,{p})")));
                        }
                        if !is_irreducible(&m, p) {
                            return Err(Error::InvalidRing(format!("modulus {m:?} is reducible over F_{p}")));
                        }
                        m
                    }
                    None => default_modulus(p, f),
                };
                let ctx = FieldCtx { p, f, modulus: modulus.clone() };
                (RingDescriptor::FiniteField { p, f, modulus: Some(modulus) }, Kind::Ff(ctx))
            }
            RingDescriptor::PolynomialRing { base, variables } => {
                let mut seen = std::collections::HashSet::new();
                for v in &variables {
                    let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !valid {
                        return Err(Error::InvalidRing(format!("invalid variable name {v:?}")));
                    }
                    if !seen.insert(v.as_str()) {
                        return Err(Error::InvalidRing(format!("duplicate variable {v:?}")));
                    }
                }
                let kind = match *base {
                    RingDescriptor::Integers => Kind::PolyZ(variables.clone()),
                    RingDescriptor::Rationals => Kind::PolyQ(variables.clone()),
                    ref other => {
                        return Err(Error::InvalidRing(format!(
                            "polynomial rings are supported over Z or Q only, not {other}"
                        )))
                    }
                };
                (RingDescriptor::PolynomialRing { base, variables }, kind)
            }
        };
        Ok(Ring { desc, kind })
    }

    pub fn integers() -> Ring {
        Ring::new(RingDescriptor::Integers).unwrap()
    }

    pub fn rationals() -> Ring {
        Ring::new(RingDescriptor::Rationals).unwrap()
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::IntegersModM { m })
    }

    pub fn finite_field(p: u64, f: u32) -> Result<Ring> {
        Ring::new(RingDescriptor::finite_field(p, f))
    }

    pub fn polynomial(base: RingDescriptor, variables: Vec<String>) -> Result<Ring> {
        Ring::new(RingDescriptor::PolynomialRing { base: Box::new(base), variables })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn field_ctx(&self) -> Option<&FieldCtx> {
        match &self.kind {
            Kind::Ff(ctx) => Some(ctx),
            _ => None,
        }
    }

    /// True for Z, Q and polynomial rings over them.
    pub fn is_torsion_free(&self) -> bool {
        matches!(self.kind, Kind::Z | Kind::Q | Kind::PolyZ(_) | Kind::PolyQ(_))
    }

    /// If every integer prime to `p` is a unit, for a single prime `p`
    /// (Z/p^k and F_{p^f}), returns that `p`.
    pub fn local_prime(&self) -> Option<u64> {
        match &self.kind {
            Kind::Zm(m) => {
                let mut p = 2;
                while p * p <= *m && m % p != 0 {
                    p += 1;
                }
                let p = if m % p == 0 { p } else { *m };
                let mut r = *m;
                while r % p == 0 {
                    r /= p;
                }
                (r == 1).then_some(p)
            }
            Kind::Ff(ctx) => Some(ctx.p),
            _ => None,
        }
    }

    /// Number of elements, for finite rings whose size fits a `u64`.
    pub fn size(&self) -> Option<u64> {
        match &self.kind {
            Kind::Zm(m) => Some(*m),
            Kind::Ff(ctx) => ctx.order(),
            _ => None,
        }
    }

    /// All elements of a finite ring in a fixed order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match &self.kind {
            Kind::Zm(m) => Some((0..*m).map(Elem::Mod).collect()),
            Kind::Ff(ctx) => {
                let q = ctx.order()?;
                Some(
                    (0..q)
                        .map(|mut idx| {
                            let mut v = vec![0u64; ctx.f as usize];
                            for c in v.iter_mut() {
                                *c = idx % ctx.p;
                                idx /= ctx.p;
                            }
                            Elem::Ff(v)
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Variable names of a polynomial ring.
    pub fn variables(&self) -> Option<&[String]> {
        match &self.kind {
            Kind::PolyZ(v) | Kind::PolyQ(v) => Some(v),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        self.embed_i64(0)
    }

    pub fn one(&self) -> Elem {
        self.embed_i64(1)
    }

    pub fn embed_i64(&self, n: i64) -> Elem {
        self.embed_int(&BigInt::from(n))
    }

    /// The image of an integer under the unique ring map `Z -> R`.
    pub fn embed_int(&self, n: &BigInt) -> Elem {
        match &self.kind {
            Kind::Z => Elem::Int(n.clone()),
            Kind::Q => Elem::Rat(BigRational::from_integer(n.clone())),
            Kind::Zm(m) => Elem::Mod(reduce_u64(n, *m)),
            Kind::Ff(ctx) => Elem::Ff(ctx.constant(reduce_u64(n, ctx.p))),
            Kind::PolyZ(_) => Elem::PolyZ(MPoly::constant(n.clone())),
            Kind::PolyQ(_) => Elem::PolyQ(MPoly::constant(BigRational::from_integer(n.clone()))),
        }
    }

    /// The `i`-th variable of a polynomial ring, or the generator `t` of a
    /// finite field when `i == 0`.
    pub fn generator(&self, i: usize) -> Option<Elem> {
        match &self.kind {
            Kind::PolyZ(v) if i < v.len() => Some(Elem::PolyZ(MPoly::var(i as u32))),
            Kind::PolyQ(v) if i < v.len() => Some(Elem::PolyQ(MPoly::var(i as u32))),
            Kind::Ff(ctx) if i == 0 => {
                let mut g = ctx.zero();
                if ctx.f == 1 {
                    // t reduces to minus the constant term of the linear modulus
                    g[0] = (ctx.p - ctx.modulus[0]) % ctx.p;
                } else {
                    g[1] = 1;
                }
                Some(Elem::Ff(g))
            }
            _ => None,
        }
    }

    /// Whether `x` is a canonical element of this ring.
    pub fn contains(&self, x: &Elem) -> bool {
        match (&self.kind, x) {
            (Kind::Z, Elem::Int(_)) | (Kind::Q, Elem::Rat(_)) => true,
            (Kind::Zm(m), Elem::Mod(r)) => r < m,
            (Kind::Ff(ctx), Elem::Ff(v)) => v.len() == ctx.f as usize && v.iter().all(|&c| c < ctx.p),
            (Kind::PolyZ(vars), Elem::PolyZ(p)) => p.max_var().is_none_or(|v| (v as usize) < vars.len()),
            (Kind::PolyQ(vars), Elem::PolyQ(p)) => p.max_var().is_none_or(|v| (v as usize) < vars.len()),
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Mod(r) => *r == 0,
            Elem::Ff(v) => v.iter().all(|&c| c == 0),
            Elem::PolyZ(p) => p.is_zero(),
            Elem::PolyQ(p) => p.is_zero(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Kind::Zm(m), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(((*x as u128 + *y as u128) % *m as u128) as u64),
            (Kind::Ff(ctx), Elem::Ff(x), Elem::Ff(y)) => Elem::Ff(ctx.add(x, y)),
            (_, Elem::PolyZ(x), Elem::PolyZ(y)) => Elem::PolyZ(x.add(y)),
            (_, Elem::PolyQ(x), Elem::PolyQ(y)) => Elem::PolyQ(x.add(y)),
            _ => panic!("element does not belong to {}", self.desc),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.kind, a) {
            (_, Elem::Int(x)) => Elem::Int(-x),
            (_, Elem::Rat(x)) => Elem::Rat(-x),
            (Kind::Zm(m), Elem::Mod(x)) => Elem::Mod((m - x) % m),
            (Kind::Ff(ctx), Elem::Ff(x)) => Elem::Ff(ctx.neg(x)),
            (_, Elem::PolyZ(x)) => Elem::PolyZ(x.neg()),
            (_, Elem::PolyQ(x)) => Elem::PolyQ(x.neg()),
            _ => panic!("element does not belong to {}", self.desc),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x - y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Kind::Ff(ctx), Elem::Ff(x), Elem::Ff(y)) => Elem::Ff(ctx.sub(x, y)),
            (_, Elem::PolyZ(x), Elem::PolyZ(y)) => Elem::PolyZ(x.sub(y)),
            (_, Elem::PolyQ(x), Elem::PolyQ(y)) => Elem::PolyQ(x.sub(y)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Kind::Zm(m), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(fp::mulmod(*x, *y, *m)),
            (Kind::Ff(ctx), Elem::Ff(x), Elem::Ff(y)) => Elem::Ff(ctx.mul(x, y)),
            (_, Elem::PolyZ(x), Elem::PolyZ(y)) => Elem::PolyZ(x.mul(y)),
            (_, Elem::PolyQ(x), Elem::PolyQ(y)) => Elem::PolyQ(x.mul(y)),
            _ => panic!("element does not belong to {}", self.desc),
        }
    }

    pub fn pow(&self, a: &Elem, mut k: u64) -> Elem {
        match a {
            Elem::Int(x) => return Elem::Int(x.pow(k as u32)),
            Elem::PolyZ(x) => return Elem::PolyZ(x.pow(k)),
            Elem::PolyQ(x) => return Elem::PolyQ(x.pow(k)),
            _ => {}
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn mul_int(&self, a: &Elem, n: &BigInt) -> Elem {
        match a {
            Elem::Int(x) => Elem::Int(x * n),
            Elem::PolyZ(x) => Elem::PolyZ(x.scale(n)),
            _ => self.mul(a, &self.embed_int(n)),
        }
    }

    /// Returns `b` with `n * b = a`. Only defined over Z, Q and polynomial
    /// rings over them; over Z-coefficients every coefficient must divide.
    pub fn div_exact(&self, a: &Elem, n: &BigInt) -> Result<Elem> {
        if n.is_zero() {
            return Err(Error::NonIntegralDivision { coefficient: self.format(a), divisor: n.clone() });
        }
        match a {
            Elem::Int(x) => {
                let (q, r) = x.div_rem(n);
                if !r.is_zero() {
                    return Err(Error::NonIntegralDivision { coefficient: x.to_string(), divisor: n.clone() });
                }
                Ok(Elem::Int(q))
            }
            Elem::Rat(x) => Ok(Elem::Rat(x / BigRational::from_integer(n.clone()))),
            Elem::PolyZ(p) => p
                .map_coeffs(|c| {
                    let (q, r) = c.div_rem(n);
                    if r.is_zero() {
                        Ok(q)
                    } else {
                        Err(Error::NonIntegralDivision { coefficient: c.to_string(), divisor: n.clone() })
                    }
                })
                .map(Elem::PolyZ),
            Elem::PolyQ(p) => {
                let d = BigRational::from_integer(n.clone());
                p.map_coeffs(|c| Ok::<_, Error>(c / d.clone())).map(Elem::PolyQ)
            }
            _ => Err(Error::Unsupported { op: "div_exact", ring: self.desc.to_string() }),
        }
    }

    /// The inverse of the integer `n` in this ring, when it is a unit.
    pub fn inv_int(&self, n: &BigInt) -> Option<Elem> {
        match &self.kind {
            Kind::Z => (n.abs().is_one()).then(|| Elem::Int(n.clone())),
            Kind::Q => (!n.is_zero()).then(|| Elem::Rat(BigRational::new(BigInt::one(), n.clone()))),
            Kind::Zm(m) => fp::invmod(reduce_u64(n, *m), *m).map(Elem::Mod),
            Kind::Ff(ctx) => {
                let r = reduce_u64(n, ctx.p);
                fp::invmod(r, ctx.p).map(|x| Elem::Ff(ctx.constant(x)))
            }
            Kind::PolyZ(_) => (n.abs().is_one()).then(|| Elem::PolyZ(MPoly::constant(n.clone()))),
            Kind::PolyQ(_) => {
                (!n.is_zero()).then(|| Elem::PolyQ(MPoly::constant(BigRational::new(BigInt::one(), n.clone()))))
            }
        }
    }

    /// Canonical string form.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Rat(x) => x.to_string(),
            Elem::Mod(x) => x.to_string(),
            Elem::Ff(v) => {
                let p: MPoly<BigInt> =
                    MPoly::from_terms(v.iter().enumerate().map(|(i, &c)| (Monomial::var(0).pow(i as u32), BigInt::from(c))));
                p.render(&|_| "t".to_string())
            }
            Elem::PolyZ(p) => p.render(&|v| self.var_name(v)),
            Elem::PolyQ(p) => p.render(&|v| self.var_name(v)),
        }
    }

    fn var_name(&self, v: u32) -> String {
        self.variables()
            .and_then(|vars| vars.get(v as usize).cloned())
            .unwrap_or_else(|| format!("_v{v}"))
    }

    /// Parses the canonical string form (non-canonical but valid input, such
    /// as an unreduced residue, is reduced).
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let err = || Error::Parse(format!("cannot parse {text:?} as an element of {}", self.desc));
        let trimmed = text.trim();
        match &self.kind {
            Kind::Z => BigInt::from_str(trimmed).map(Elem::Int).map_err(|_| err()),
            Kind::Q => BigRational::from_str(trimmed).map(Elem::Rat).map_err(|_| err()),
            Kind::Zm(_) => BigInt::from_str(trimmed).map(|n| self.embed_int(&n)).map_err(|_| err()),
            Kind::Ff(_) => {
                let terms = mpoly::parse_terms::<BigInt>(
                    trimmed,
                    &|s| BigInt::from_str(s).ok(),
                    &|n| (n == "t").then_some(0),
                )
                .ok_or_else(err)?;
                let mut acc = self.zero();
                let t = self.generator(0).expect("field generator");
                for (m, c) in terms {
                    let deg = m.degree();
                    let term = self.mul(&self.embed_int(&c), &self.pow(&t, deg));
                    acc = self.add(&acc, &term);
                }
                Ok(acc)
            }
            Kind::PolyZ(vars) => {
                let terms = mpoly::parse_terms::<BigInt>(
                    trimmed,
                    &|s| BigInt::from_str(s).ok(),
                    &|n| vars.iter().position(|v| v == n).map(|i| i as u32),
                )
                .ok_or_else(err)?;
                Ok(Elem::PolyZ(MPoly::from_terms(terms)))
            }
            Kind::PolyQ(vars) => {
                let terms = mpoly::parse_terms::<BigRational>(
                    trimmed,
                    &|s| BigRational::from_str(s).ok(),
                    &|n| vars.iter().position(|v| v == n).map(|i| i as u32),
                )
                .ok_or_else(err)?;
                Ok(Elem::PolyQ(MPoly::from_terms(terms)))
            }
        }
    }

    /// Evaluates an integer polynomial, substituting `values(v)` for variable `v`.
    pub fn eval_poly(&self, poly: &MPoly<BigInt>, values: &dyn Fn(u32) -> Elem) -> Elem {
        let mut acc = self.zero();
        for (m, c) in poly.terms() {
            let mut term = self.embed_int(c);
            for &(v, e) in m.pairs() {
                let x = values(v);
                if self.is_zero(&x) {
                    term = self.zero();
                    break;
                }
                term = self.mul(&term, &self.pow(&x, e as u64));
            }
            if !self.is_zero(&term) {
                acc = self.add(&acc, &term);
            }
        }
        acc
    }
}

fn reduce_u64(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_reduction() {
        let r = Ring::integers_mod(4).unwrap();
        assert_eq!(r.embed_i64(7), Elem::Mod(3));
        assert_eq!(r.embed_i64(-1), Elem::Mod(3));
    }

    #[test]
    fn characteristic_of_prime_field() {
        let f3 = Ring::finite_field(3, 1).unwrap();
        assert!(f3.is_zero(&f3.embed_i64(3)));
    }

    #[test]
    fn f4_product() {
        let f4 = Ring::new(RingDescriptor::FiniteField { p: 2, f: 2, modulus: Some(vec![1, 1, 1]) }).unwrap();
        let x = f4.generator(0).unwrap();
        let x1 = f4.add(&x, &f4.one());
        assert_eq!(f4.mul(&x, &x1), f4.one());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Ring::integers_mod(1), Err(Error::InvalidRing(_))));
        assert!(matches!(Ring::finite_field(4, 1), Err(Error::InvalidRing(_))));
        let reducible = RingDescriptor::FiniteField { p: 3, f: 2, modulus: Some(vec![1, 2, 1]) };
        match Ring::new(reducible) {
            Err(Error::InvalidRing(msg)) => assert!(msg.contains("reducible")),
            other => panic!("unexpected {other:?}"),
        }
        let nested = RingDescriptor::polynomial(RingDescriptor::IntegersModM { m: 5 }, &["x"]);
        assert!(Ring::new(nested).is_err());
    }

    #[test]
    fn div_exact_cases() {
        let z = Ring::integers();
        assert_eq!(z.div_exact(&z.embed_i64(10), &BigInt::from(2)).unwrap(), z.embed_i64(5));
        assert!(matches!(
            z.div_exact(&z.embed_i64(7), &BigInt::from(2)),
            Err(Error::NonIntegralDivision { .. })
        ));
        let zxy = Ring::new(RingDescriptor::polynomial(RingDescriptor::Integers, &["X1", "Y1"])).unwrap();
        let a = zxy.parse("2*X1*Y1").unwrap();
        assert_eq!(zxy.div_exact(&a, &BigInt::from(2)).unwrap(), zxy.parse("X1*Y1").unwrap());
        let f3 = Ring::finite_field(3, 1).unwrap();
        assert!(matches!(f3.div_exact(&f3.one(), &BigInt::from(2)), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn descriptor_json() {
        let d = RingDescriptor::FiniteField { p: 3, f: 2, modulus: Some(vec![1, 0, 1]) };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"kind":"finite_field","p":3,"f":2,"modulus":[1,0,1]}"#);
        assert_eq!(serde_json::from_str::<RingDescriptor>(&s).unwrap(), d);
        let z4: RingDescriptor = serde_json::from_str(r#"{"kind":"integers_mod_m","m":4}"#).unwrap();
        assert_eq!(z4, RingDescriptor::IntegersModM { m: 4 });
        let ff: RingDescriptor = serde_json::from_str(r#"{"kind":"finite_field","p":2,"f":3}"#).unwrap();
        let r = Ring::new(ff).unwrap();
        assert_eq!(r.field_ctx().unwrap().modulus, vec![1, 1, 0, 1]);
    }

    #[test]
    fn format_parse_round_trip() {
        let f9 = Ring::finite_field(3, 2).unwrap();
        for x in f9.elements().unwrap() {
            assert_eq!(f9.parse(&f9.format(&x)).unwrap(), x);
        }
        assert_eq!(f9.format(&f9.parse("2*t + 1").unwrap()), "2*t + 1");
        let q = Ring::rationals();
        let x = q.parse("-3/6").unwrap();
        assert_eq!(q.format(&x), "-1/2");
        let qx = Ring::new(RingDescriptor::polynomial(RingDescriptor::Rationals, &["x", "y"])).unwrap();
        let p = qx.parse("1/2*x^2 - 3*x*y + 2/3").unwrap();
        assert_eq!(qx.parse(&qx.format(&p)).unwrap(), p);
    }

    #[test]
    fn local_primes() {
        assert_eq!(Ring::integers_mod(9).unwrap().local_prime(), Some(3));
        assert_eq!(Ring::integers_mod(8).unwrap().local_prime(), Some(2));
        assert_eq!(Ring::integers_mod(7).unwrap().local_prime(), Some(7));
        assert_eq!(Ring::integers_mod(6).unwrap().local_prime(), None);
        assert_eq!(Ring::integers().local_prime(), None);
    }
}
