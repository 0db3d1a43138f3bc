//! Dense univariate polynomials over a prime field, used to realize
//! `F_{p^f} = F_p[t]/(modulus)`.

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd_i128(a as i128 % p as i128, p as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(p as i128) as u64)
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd_i128(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = invmod(m[dm], p).expect("leading coefficient invertible");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// `x^(p^k) mod m` by k successive p-th powers.
fn frobenius_iter(k: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut x = vec![0u64, 1];
    for _ in 0..k {
        x = powmod_poly(&x, p, m, p);
    }
    x
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial (low-degree-first).
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = trim(modulus.to_vec());
    if m.len() < 2 {
        return false;
    }
    let f = (m.len() - 1) as u32;
    if f == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if poly_sub(&frobenius_iter(f, &m, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(f as u64) {
        let h = poly_sub(&frobenius_iter(f / r as u32, &m, p), &x, p);
        let g = poly_gcd(&m, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `f` over `F_p`, ordering
/// candidates by their coefficients read from degree `f-1` down to degree 0.
pub fn default_modulus(p: u64, f: u32) -> Vec<u64> {
    let mut coeffs = vec![0u64; f as usize];
    loop {
        let mut cand = coeffs.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // increment as a base-p counter with the constant term least significant
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < coeffs.len(), "an irreducible polynomial of every degree exists");
        }
    }
}

/// Arithmetic in `F_p[t]/(modulus)` on fixed-length coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    pub p: u64,
    pub f: u32,
    pub modulus: Vec<u64>,
}

impl FieldCtx {
    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.f as usize]
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.p;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = poly_mul(a, b, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        r
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| mulmod(x, c % self.p, self.p)).collect()
    }

    pub fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&x| x == 0) {
            return None;
        }
        // a^(q-2) in the multiplicative group of order q-1
        let q = (self.p as u128).pow(self.f);
        let mut e = q - 2;
        let mut base = a.to_vec();
        let mut acc = self.constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }

    /// Field size `p^f`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2)); // x^2+x+1
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2+1 over F_3
        assert!(!is_irreducible(&[1, 2, 1], 3)); // (x+1)^2
        assert!(is_irreducible(&[1, 1, 0, 1], 2)); // x^3+x+1
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2)); // (x+1)^4
        // x^4+x^2+1 = (x^2+x+1)^2 over F_2: no roots, still reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn irreducibility_matches_root_and_factor_search() {
        // brute force for degree <= 3: irreducible iff no root
        for p in [2u64, 3, 5] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let poly = [c0, c1, c2, 1];
                        let has_root = (0..p).any(|x| {
                            (c0 + mulmod(c1, x, p) + mulmod(c2, mulmod(x, x, p), p) + powmod(x, 3, p)) % p == 0
                        });
                        assert_eq!(is_irreducible(&poly, p), !has_root, "{poly:?} mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(5, 1), vec![0, 1]);
    }

    #[test]
    fn field_inverse() {
        let ctx = FieldCtx { p: 3, f: 2, modulus: vec![1, 0, 1] };
        for a in 0..3 {
            for b in 0..3 {
                let x = vec![a, b];
                match ctx.inv(&x) {
                    Some(y) => assert_eq!(ctx.mul(&x, &y), ctx.constant(1)),
                    None => assert_eq!(x, ctx.zero()),
                }
            }
        }
    }
}
