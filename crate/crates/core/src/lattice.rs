//! Unimodular integer matrices from the Euclidean algorithm: the compatible
//! quadruple `A, B, B', C` in `GL_2(Z)` for `(s1, s2, a)`, and the reduction of
//! a tuple to `(gcd, 0, .., 0)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// A square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix(pub Vec<Vec<BigInt>>);

impl Matrix {
    pub fn identity(m: usize) -> Matrix {
        Matrix((0..m).map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Matrix {
        Matrix(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn diag(entries: &[BigInt]) -> Matrix {
        let mut m = Matrix::identity(entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.0[i][i] = x.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size();
        Matrix(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &self.0[i][k] * &other.0[k][j]).sum()).collect())
                .collect(),
        )
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.0.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.0.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }
}

impl Serialize for Matrix {
    /// Entries that fit an `i64` are JSON numbers, larger ones strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.0.len()))?;
        for row in &self.0 {
            let entries: Vec<serde_json::Value> = row
                .iter()
                .map(|x| match x.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(x.to_string()),
                })
                .collect();
            rows.serialize_element(&entries)?;
        }
        rows.end()
    }
}

fn mat2(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Matrix {
    Matrix(vec![vec![a, b], vec![c, d]])
}

/// `[[x, y], [v/g, -u/g]]` with `x u + y v = g`, `|x|` minimal (ties to the
/// positive `x`). Sends `(u, v)` to `(g, 0)`.
fn euclid_matrix(u: &BigInt, v: &BigInt) -> (BigInt, Matrix) {
    let ext = u.extended_gcd(v);
    let g = ext.gcd;
    let (u1, v1) = (u / &g, v / &g);
    // solutions are x + k v1, y - k u1
    let mut x = ext.x.mod_floor(&v1);
    if &x * 2 > v1 {
        x -= &v1;
    }
    let y = (&g - &x * u) / v;
    (g, mat2(x, y, v1, -u1))
}

/// Inputs `(s1, s2, a)`, with `g = gcd(s1, s2)`, `e g = gcd(s1, a s2)`, `a = d e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclidFactorization {
    pub s1: u64,
    pub s2: u64,
    pub a: u64,
    pub g: u64,
    pub e: u64,
    pub d: u64,
    #[serde(rename = "A")]
    pub a_mat: Matrix,
    #[serde(rename = "B")]
    pub b_mat: Matrix,
    #[serde(rename = "Bp")]
    pub bp_mat: Matrix,
    #[serde(rename = "C")]
    pub c_mat: Matrix,
    pub verified: bool,
}

impl EuclidFactorization {
    /// Every defining identity, by name.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let big = |x: u64| BigInt::from(x);
        let (s1, s2, a, g, e, d) = (big(self.s1), big(self.s2), big(self.a), big(self.g), big(self.e), big(self.d));
        let zero = BigInt::zero();
        let eg = vec![&e * &g, zero.clone()];
        let (one, ev) = (BigInt::one(), vec![s1.clone(), &e * &s2]);
        vec![
            ("A (s1,s2) = (g,0)", self.a_mat.apply(&[s1.clone(), s2.clone()]) == vec![g.clone(), zero.clone()]),
            ("B (s1,e s2) = (e g,0)", self.b_mat.apply(&ev) == eg),
            ("B' (s1,e s2) = (e g,0)", self.bp_mat.apply(&ev) == eg),
            ("C (s1,a s2) = (e g,0)", self.c_mat.apply(&[s1.clone(), &a * &s2]) == eg),
            (
                "diag(e,1) A = B diag(1,e)",
                Matrix::diag(&[e.clone(), one.clone()]).mul(&self.a_mat) == self.b_mat.mul(&Matrix::diag(&[one.clone(), e.clone()])),
            ),
            (
                "diag(1,d) B' = C diag(1,d)",
                Matrix::diag(&[one.clone(), d.clone()]).mul(&self.bp_mat) == self.c_mat.mul(&Matrix::diag(&[one, d])),
            ),
            ("a = d e", self.a == self.d * self.e),
            (
                "all determinants are ±1",
                [&self.a_mat, &self.b_mat, &self.bp_mat, &self.c_mat].iter().all(|m| m.is_unimodular()),
            ),
        ]
    }
}

/// Builds `A` and `C` by the Euclidean algorithm and reads off `B` and `B'`
/// from the compatibility identities; their integrality is automatic since
/// `e | s1/g` and `d | a s2/(e g)`.
pub fn euclid_factorize(s1: u64, s2: u64, a: u64) -> Result<EuclidFactorization> {
    if s1 == 0 || s2 == 0 || a == 0 {
        return Err(Error::InvalidPoint("s1, s2 and a must be positive".into()));
    }
    let big = |x: u64| BigInt::from(x);
    let (g, a_mat) = euclid_matrix(&big(s1), &big(s2));
    let (eg, c_mat) = euclid_matrix(&big(s1), &(big(a) * big(s2)));
    let e = &eg / &g;
    let d = big(a) / &e;
    let [[a11, a12], [a21, a22]] = entries(&a_mat);
    let b_mat = mat2(&e * a11, a12, a21, a22 / &e);
    let [[c11, c12], [c21, c22]] = entries(&c_mat);
    let bp_mat = mat2(c11, &d * c12, c21 / &d, c22);
    let mut out = EuclidFactorization {
        s1,
        s2,
        a,
        g: g.to_u64().expect("gcd fits"),
        e: e.to_u64().expect("divisor of a"),
        d: d.to_u64().expect("divisor of a"),
        a_mat,
        b_mat,
        bp_mat,
        c_mat,
        verified: false,
    };
    if let Some((name, _)) = out.checks().into_iter().find(|(_, ok)| !ok) {
        return Err(Error::InternalVerificationFailure(format!("({s1},{s2},{a}): {name} fails")));
    }
    out.verified = true;
    Ok(out)
}

fn entries(m: &Matrix) -> [[BigInt; 2]; 2] {
    [[m.0[0][0].clone(), m.0[0][1].clone()], [m.0[1][0].clone(), m.0[1][1].clone()]]
}

/// `(g, M)` with `g = gcd(s)`, `M` unimodular and `M s = (g, 0, .., 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusReduction {
    pub s: Vec<u64>,
    pub g: u64,
    #[serde(rename = "M")]
    pub m: Matrix,
    pub verified: bool,
}

/// Eliminates `s_2, .., s_m` against the first entry one at a time.
pub fn torus_reduce(s: &[u64]) -> Result<TorusReduction> {
    if s.is_empty() || s.contains(&0) {
        return Err(Error::InvalidPoint("tuple must be nonempty with positive entries".into()));
    }
    let n = s.len();
    let mut v: Vec<BigInt> = s.iter().map(|&x| BigInt::from(x)).collect();
    let mut m = Matrix::identity(n);
    for i in 1..n {
        let (g, step) = euclid_matrix(&v[0], &v[i]);
        let mut full = Matrix::identity(n);
        let [[x, y], [z, w]] = entries(&step);
        full.0[0][0] = x;
        full.0[0][i] = y;
        full.0[i][0] = z;
        full.0[i][i] = w;
        m = full.mul(&m);
        v[0] = g;
        v[i] = BigInt::zero();
    }
    let g = v[0].to_u64().expect("gcd fits");
    let mut target = vec![BigInt::zero(); n];
    target[0] = BigInt::from(g);
    let verified = m.apply(&s.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()) == target && m.is_unimodular();
    if !verified {
        return Err(Error::InternalVerificationFailure(format!("reduction of {s:?} fails")));
    }
    Ok(TorusReduction { s: s.to_vec(), g, m, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three_two() {
        let f = euclid_factorize(2, 3, 2).unwrap();
        assert_eq!((f.g, f.e, f.d), (1, 2, 1));
        assert_eq!(f.a_mat, Matrix::from_i64(&[&[-1, 1], &[3, -2]]));
        assert_eq!(f.b_mat, Matrix::from_i64(&[&[-2, 1], &[3, -1]]));
        assert!(f.verified);
    }

    #[test]
    fn a_equal_one() {
        let f = euclid_factorize(12, 18, 1).unwrap();
        assert_eq!((f.e, f.d), (1, 1));
        assert_eq!(f.a_mat, f.b_mat);
        assert_eq!(f.c_mat, f.bp_mat);
        assert_eq!(f.a_mat, f.c_mat);
    }

    #[test]
    fn four_six_nine() {
        let f = euclid_factorize(4, 6, 9).unwrap();
        assert_eq!((f.g, f.e, f.d), (2, 1, 9));
        assert_eq!(f.a_mat, f.b_mat);
        assert!(f.checks().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(euclid_factorize(2, 3, 2).unwrap()).unwrap();
        assert_eq!(v["A"], serde_json::json!([[-1, 1], [3, -2]]));
        assert_eq!(v["Bp"].as_array().unwrap().len(), 2);
        assert_eq!(v["verified"], true);
    }

    #[test]
    fn torus_examples() {
        let r = torus_reduce(&[4, 6, 10]).unwrap();
        assert_eq!(r.g, 2);
        assert_eq!(torus_reduce(&[5]).unwrap().m, Matrix::identity(1));
        let r = torus_reduce(&[1, 7]).unwrap();
        assert_eq!(r.m.apply(&[BigInt::from(1), BigInt::from(7)]), vec![BigInt::from(1), BigInt::zero()]);
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).det(), BigInt::from(-1));
        assert_eq!(Matrix::from_i64(&[&[2, 3], &[4, 5]]).det(), BigInt::from(-2));
    }
}
