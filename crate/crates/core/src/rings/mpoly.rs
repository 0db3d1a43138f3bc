//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending graded-lexicographic order with the
//! variable of index 0 largest. Zero coefficients never appear.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Neg;

use num_traits::Num;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                if x.0 != y.0 {
                    // the side carrying the smaller variable index is larger
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient domains usable in [`MPoly`].
pub trait Coeff: Clone + Num + Neg<Output = Self> + fmt::Display + PartialEq {}
impl<T: Clone + Num + Neg<Output = T> + fmt::Display + PartialEq> Coeff for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::from_terms(vec![(Monomial::one(), c)])
    }

    pub fn var(index: u32) -> Self {
        MPoly { terms: vec![(Monomial::var(index), C::one())] }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.iter().filter_map(|(m, _)| m.max_var()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, |c| c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, |c| -c)
    }

    // both inputs are sorted descending; a linear merge keeps the output sorted
    fn merge(&self, other: &Self, sign: impl Fn(C) -> C) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(b[j].1.clone())));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + sign(b[j].1.clone());
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c.clone()))));
        MPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Self::from_map(acc)
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * k.clone())).collect() }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(C::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<MPoly<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((m.clone(), d));
            }
        }
        Ok(MPoly { terms })
    }

    /// Renders with the given variable names, e.g. `2*X1*Y1^2 - X2 + 1`.
    pub fn render(&self, names: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut text = c.to_string();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || text != "1" {
                factors.push(text);
            }
            for &(v, e) in m.pairs() {
                if e == 1 {
                    factors.push(names(v));
                } else {
                    factors.push(format!("{}^{}", names(v), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn accumulate<C: Coeff>(acc: &mut HashMap<Monomial, C>, m: Monomial, c: C) {
    match acc.get_mut(&m) {
        Some(slot) => {
            let old = std::mem::replace(slot, C::zero());
            *slot = old + c;
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// Parses a sum of terms `c*v1^e1*v2^e2` with the given coefficient parser and
/// variable lookup. Accepts `+`/`-` between terms and optional whitespace.
pub(crate) fn parse_terms<C: Coeff>(
    text: &str,
    coeff: &dyn Fn(&str) -> Option<C>,
    var: &dyn Fn(&str) -> Option<u32>,
) -> Option<Vec<(Monomial, C)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (idx, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(idx > 0 && current.ends_with('/')) {
            if idx > 0 {
                if current.is_empty() {
                    return None;
                }
                pieces.push((negative, std::mem::take(&mut current)));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return None;
    }
    pieces.push((negative, current));

    let mut terms = Vec::with_capacity(pieces.len());
    for (neg, body) in pieces {
        let mut c = C::one();
        let mut pairs = Vec::new();
        for factor in body.split('*') {
            if factor.is_empty() {
                return None;
            }
            if factor.starts_with(|ch: char| ch.is_ascii_digit()) {
                c = c * coeff(factor)?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().ok()?),
                None => (factor, 1),
            };
            pairs.push((var(name)?, exp));
        }
        if neg {
            c = -c;
        }
        terms.push((Monomial::from_pairs(pairs), c));
    }
    Some(terms)
}
