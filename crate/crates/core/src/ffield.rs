//! Finite rings used for point counting: prime fields `F_p`, small extension
//! fields `F_{p^e}` (e <= 4) and the quotient `Z/p^2Z`.
//!
//! Ring elements are passed around as `u64` codes. For `F_p` and `Z/p^2Z`
//! the code is the residue in `[0, q)`. For `F_{p^e}` the code packs the
//! coefficient vector `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` as
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so the prime subfield is the
//! codes `0..p` and code order is the odometer order on coefficient vectors
//! (constant term fastest).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest extension degree supported by [`build_extension`].
pub const MAX_EXTENSION_DEGREE: u32 = 4;

/// Extension fields larger than this are refused (log tables are `O(q)`).
const MAX_TABLE_SIZE: u64 = 1 << 24;

/// Largest `p` for which `p^2` residues still multiply inside a `u64`.
const MAX_PRIME: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulusKind {
    PrimeField,
    ExtensionField,
    PrimeSquareQuotient,
}

/// Discrete log / antilog tables for the multiplicative group of `F_{p^e}`.
#[derive(Debug)]
struct LogTables {
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so sums of logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite ring `K` with `q = #K` elements.
#[derive(Clone)]
pub struct ModulusSpec {
    kind: ModulusKind,
    p: u64,
    e: u32,
    modulus_poly: Option<Vec<u64>>,
    q: u64,
    tables: Option<Arc<LogTables>>,
}

impl PartialEq for ModulusSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.p == other.p
            && self.e == other.e
            && self.modulus_poly == other.modulus_poly
    }
}

impl Eq for ModulusSpec {}

impl fmt::Debug for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModulusSpec")
            .field("kind", &self.kind)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus_poly", &self.modulus_poly)
            .field("q", &self.q)
            .finish()
    }
}

impl fmt::Display for ModulusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModulusKind::PrimeField => write!(f, "F_{}", self.p),
            ModulusKind::ExtensionField => write!(f, "F_{}^{}", self.p, self.e),
            ModulusKind::PrimeSquareQuotient => write!(f, "Z/{}^2Z", self.p),
        }
    }
}

impl ModulusSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(ModulusSpec {
            kind: ModulusKind::PrimeField,
            p,
            e: 1,
            modulus_poly: None,
            q: p,
            tables: None,
        })
    }

    pub fn prime_square(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(ModulusSpec {
            kind: ModulusKind::PrimeSquareQuotient,
            p,
            e: 1,
            modulus_poly: None,
            q: p * p,
            tables: None,
        })
    }

    /// `F_{p^e}` with `e` in `1..=4`; `e = 1` gives the prime field.
    pub fn field(p: u64, e: u32) -> Result<Self> {
        build_extension(p, e)
    }

    pub fn kind(&self) -> ModulusKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, coefficients low to high (length `e + 1`).
    pub fn modulus_poly(&self) -> Option<&[u64]> {
        self.modulus_poly.as_deref()
    }

    pub fn is_field(&self) -> bool {
        self.kind != ModulusKind::PrimeSquareQuotient
    }

    /// Characteristic of the additive group's prime subring: `p` for fields, `p^2` for the quotient.
    pub fn char_modulus(&self) -> u64 {
        match self.kind {
            ModulusKind::PrimeSquareQuotient => self.q,
            _ => self.p,
        }
    }

    pub fn contains(&self, code: u64) -> bool {
        code < self.q
    }

    pub fn check(&self, code: u64) -> Result<u64> {
        if code < self.q {
            Ok(code)
        } else {
            Err(Error::NotReduced {
                value: code,
                modulus: self.q,
            })
        }
    }

    /// Image of an integer in the ring.
    pub fn from_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.char_modulus());
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u64().expect("residue fits in u64")
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.char_modulus() as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            ModulusKind::ExtensionField => {
                let p = self.p;
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.e {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            }
            _ => (a + b) % self.q,
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match self.kind {
            ModulusKind::ExtensionField => self.scale(a, self.p - 1),
            _ => (self.q - a) % self.q,
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Multiply by an element `s` of the prime subring (`s < char_modulus`).
    #[inline]
    pub fn scale(&self, a: u64, s: u64) -> u64 {
        match self.kind {
            ModulusKind::ExtensionField => {
                let p = self.p;
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..self.e {
                    out += ((a % p) * s % p) * place;
                    a /= p;
                    place *= p;
                }
                out
            }
            _ => a * s % self.q,
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64
                }
            }
            None => a * b % self.q,
        }
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        if k == 0 {
            return 1 % self.q;
        }
        match &self.tables {
            Some(t) => {
                if a == 0 {
                    0
                } else {
                    let order = self.q - 1;
                    let l = (t.log[a as usize] as u64 * (k % order)) % order;
                    t.exp[l as usize] as u64
                }
            }
            None => {
                let mut base = a % self.q;
                let mut k = k;
                let mut acc = 1 % self.q;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % self.q;
                    }
                    base = base * base % self.q;
                    k >>= 1;
                }
                acc
            }
        }
    }

    /// Multiplicative inverse; only defined for nonzero elements of a field.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if !self.is_field() {
            return Err(Error::UnsupportedModulus(format!(
                "inverse in {self} is not a field operation"
            )));
        }
        if a.is_multiple_of(self.q) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn to_ext(&self, code: u64) -> ExtElem {
        let mut c = code;
        let coeffs = (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect();
        ExtElem { coeffs }
    }

    pub fn from_ext(&self, a: &ExtElem) -> Result<u64> {
        if a.coeffs.len() != self.e as usize {
            return Err(Error::DimensionMismatch {
                expected: self.e as usize,
                got: a.coeffs.len(),
            });
        }
        let mut code = 0;
        for &c in a.coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::NotReduced {
                    value: c,
                    modulus: self.p,
                });
            }
            code = code * self.p + c;
        }
        Ok(code)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= MAX_PRIME {
        return Err(Error::InvalidArgument(format!(
            "prime {p} too large (must be < {MAX_PRIME})"
        )));
    }
    Ok(())
}

/// Element of `F_{p^e}` as a coefficient vector of length exactly `e`, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem {
    pub coeffs: Vec<u64>,
}

impl ExtElem {
    pub fn new(coeffs: Vec<u64>) -> Self {
        ExtElem { coeffs }
    }

    pub fn zero(e: u32) -> Self {
        ExtElem {
            coeffs: vec![0; e as usize],
        }
    }

    pub fn one(e: u32) -> Self {
        let mut coeffs = vec![0; e as usize];
        coeffs[0] = 1;
        ExtElem { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p` (coefficients low to high).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (i, &mc) in m[..dm].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * mc) % p;
            }
        }
    }
    r
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: Option<&[u64]>, p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    match m {
        Some(m) => poly_rem(&prod, m, p),
        None => {
            prod.truncate(a.len());
            prod
        }
    }
}

/// True when the monic `f` (low to high, degree `>= 1`) has no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut c = idx;
            for _ in 0..k {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Deterministic construction of `F_{p^e}`: the modulus is the first monic
/// irreducible of degree `e` when the coefficient tuple `(c_{e-1}, ..., c_0)`
/// is read lexicographically.
pub fn build_extension(p: u64, e: u32) -> Result<ModulusSpec> {
    check_prime(p)?;
    if e == 0 || e > MAX_EXTENSION_DEGREE {
        return Err(Error::ExtensionDegree(e));
    }
    if e == 1 {
        return ModulusSpec::prime_field(p);
    }
    let q = (p as u128).pow(e);
    if q > MAX_TABLE_SIZE as u128 {
        return Err(Error::TooLarge(q));
    }
    let q = q as u64;
    let e_us = e as usize;
    let modulus = (0..q)
        .map(|idx| {
            let mut f = Vec::with_capacity(e_us + 1);
            let mut c = idx;
            for _ in 0..e_us {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");

    let mut spec = ModulusSpec {
        kind: ModulusKind::ExtensionField,
        p,
        e,
        modulus_poly: Some(modulus),
        q,
        tables: None,
    };
    spec.tables = Some(Arc::new(build_log_tables(&spec)));
    Ok(spec)
}

fn build_log_tables(spec: &ModulusSpec) -> LogTables {
    let q = spec.q;
    let order = q - 1;
    let factors = prime_factors(order);
    let m = spec.modulus_poly();
    let p = spec.p;
    let pow_slow = |g: &ExtElem, k: u64| -> Vec<u64> {
        let mut acc = ExtElem::one(spec.e).coeffs;
        let mut base = g.coeffs.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mul_mod(&acc, &base, m, p);
            }
            base = poly_mul_mod(&base, &base, m, p);
            k >>= 1;
        }
        acc
    };
    let one = ExtElem::one(spec.e).coeffs;
    let generator = (2..q)
        .map(|c| spec.to_ext(c))
        .find(|g| factors.iter().all(|&r| pow_slow(g, order / r) != one))
        .expect("multiplicative group of a finite field is cyclic");

    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut cur = one.clone();
    for i in 0..order as usize {
        let code = spec.from_ext(&ExtElem::new(cur.clone())).unwrap();
        exp[i] = code as u32;
        exp[i + order as usize] = code as u32;
        log[code as usize] = i as u32;
        cur = poly_mul_mod(&cur, &generator.coeffs, m, p);
    }
    LogTables { exp, log }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Field arithmetic on coefficient vectors by schoolbook multiplication and
/// reduction modulo the defining polynomial. Independent of the log tables
/// backing [`ModulusSpec::mul`].
pub fn ext_arith(op: ExtOp, a: &ExtElem, b: Option<&ExtElem>, m: &ModulusSpec) -> Result<ExtElem> {
    if !m.is_field() {
        return Err(Error::UnsupportedModulus(format!(
            "{m} is not a field"
        )));
    }
    let e = m.e() as usize;
    let p = m.p();
    let check = |x: &ExtElem| -> Result<()> {
        if x.coeffs.len() != e {
            return Err(Error::DimensionMismatch {
                expected: e,
                got: x.coeffs.len(),
            });
        }
        if let Some(&c) = x.coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::NotReduced { value: c, modulus: p });
        }
        Ok(())
    };
    check(a)?;
    let need_b = || -> Result<&ExtElem> {
        let b = b.ok_or_else(|| Error::InvalidArgument("binary operation needs two operands".into()))?;
        check(b)?;
        Ok(b)
    };
    let out = match op {
        ExtOp::Add => {
            let b = need_b()?;
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % p)
                .collect()
        }
        ExtOp::Neg => a.coeffs.iter().map(|&x| (p - x) % p).collect(),
        ExtOp::Mul => {
            let b = need_b()?;
            let mut r = poly_mul_mod(&a.coeffs, &b.coeffs, m.modulus_poly(), p);
            r.resize(e, 0);
            r
        }
        ExtOp::Inv => {
            if a.is_zero() {
                return Err(Error::DivisionByZero);
            }
            // a^(q-2) by square and multiply
            let mut acc = ExtElem::one(m.e()).coeffs;
            let mut base = a.coeffs.clone();
            let mut k = m.q() - 2;
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly_mul_mod(&acc, &base, m.modulus_poly(), p);
                    acc.resize(e, 0);
                }
                base = poly_mul_mod(&base, &base, m.modulus_poly(), p);
                base.resize(e, 0);
                k >>= 1;
            }
            acc
        }
    };
    Ok(ExtElem::new(out))
}

/// All `q` elements of the ring, in code order.
pub fn enumerate_field(m: &ModulusSpec) -> impl Iterator<Item = u64> {
    0..m.q()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let m = build_extension(3, 2).unwrap();
        assert_eq!(m.modulus_poly(), Some(&[1, 0, 1][..]));
        assert_eq!(m.q(), 9);
    }

    #[test]
    fn e1_is_prime_field() {
        let m = build_extension(5, 1).unwrap();
        assert_eq!(m.kind(), ModulusKind::PrimeField);
        assert_eq!(m.q(), 5);
        assert!(m.modulus_poly().is_none());
    }

    #[test]
    fn f8_modulus() {
        // lex-first over F_2: x^3 (0,0,0), x^3+1 (0,0,1), x^3+x (0,1,0) reducible; x^3+x+1 (0,1,1)
        let m = build_extension(2, 3).unwrap();
        assert_eq!(m.modulus_poly(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(m.q(), 8);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(build_extension(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(build_extension(3, 5), Err(Error::ExtensionDegree(5)));
        assert_eq!(build_extension(3, 0), Err(Error::ExtensionDegree(0)));
    }

    #[test]
    fn square_of_x_plus_1_in_f9() {
        let m = build_extension(3, 2).unwrap();
        let a = ExtElem::new(vec![1, 1]);
        let r = ext_arith(ExtOp::Mul, &a, Some(&a), &m).unwrap();
        assert_eq!(r, ExtElem::new(vec![0, 2]));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let m = build_extension(3, 2).unwrap();
        assert_eq!(
            ext_arith(ExtOp::Inv, &ExtElem::zero(2), None, &m),
            Err(Error::DivisionByZero)
        );
        assert_eq!(m.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn enumeration_orders() {
        let f3 = ModulusSpec::prime_field(3).unwrap();
        assert_eq!(enumerate_field(&f3).collect::<Vec<_>>(), vec![0, 1, 2]);
        let f9 = build_extension(3, 2).unwrap();
        let all: Vec<_> = enumerate_field(&f9).map(|c| f9.to_ext(c)).collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert_eq!(all[8], ExtElem::new(vec![2, 2]));
        assert_eq!(all[8].to_string(), "2x+2");
        let z9 = ModulusSpec::prime_square(3).unwrap();
        assert_eq!(enumerate_field(&z9).collect::<Vec<_>>(), (0..9).collect::<Vec<_>>());
    }

    fn fields() -> Vec<ModulusSpec> {
        [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3)]
            .iter()
            .map(|&(p, e)| build_extension(p, e).unwrap())
            .collect()
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for m in fields() {
            for a in enumerate_field(&m) {
                let ea = m.to_ext(a);
                for b in enumerate_field(&m) {
                    let eb = m.to_ext(b);
                    let mul = ext_arith(ExtOp::Mul, &ea, Some(&eb), &m).unwrap();
                    assert_eq!(m.from_ext(&mul).unwrap(), m.mul(a, b), "{m} {a}*{b}");
                    let add = ext_arith(ExtOp::Add, &ea, Some(&eb), &m).unwrap();
                    assert_eq!(m.from_ext(&add).unwrap(), m.add(a, b));
                }
                let neg = ext_arith(ExtOp::Neg, &ea, None, &m).unwrap();
                assert_eq!(m.from_ext(&neg).unwrap(), m.neg(a));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for m in fields().into_iter().filter(|m| m.q() <= 25) {
            let q = m.q();
            for a in 0..q {
                assert_eq!(m.add(a, m.neg(a)), 0);
                if a != 0 {
                    let ea = m.to_ext(a);
                    let inv = ext_arith(ExtOp::Inv, &ea, None, &m).unwrap();
                    let one = ext_arith(ExtOp::Mul, &ea, Some(&inv), &m).unwrap();
                    assert_eq!(one, ExtElem::one(m.e()));
                    assert_eq!(m.mul(a, m.inv(a).unwrap()), 1);
                }
                // Frobenius
                assert_eq!(m.pow(a, q), a);
                for b in 0..q {
                    assert_eq!(m.add(a, b), m.add(b, a));
                    assert_eq!(m.mul(a, b), m.mul(b, a));
                    for c in 0..q {
                        assert_eq!(m.add(m.add(a, b), c), m.add(a, m.add(b, c)));
                        assert_eq!(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
                        assert_eq!(m.mul(a, m.add(b, c)), m.add(m.mul(a, b), m.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn prime_field_frobenius_and_inverse() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            let m = ModulusSpec::prime_field(p).unwrap();
            for a in 0..p {
                assert_eq!(m.pow(a, p), a);
                if a != 0 {
                    assert_eq!(m.mul(a, m.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let a = build_extension(p, e).unwrap();
            let b = build_extension(p, e).unwrap();
            assert_eq!(a.modulus_poly(), b.modulus_poly());
            assert!(is_irreducible(a.modulus_poly().unwrap(), p));
        }
    }

    #[test]
    fn scale_matches_mul_by_subfield() {
        let m = build_extension(5, 2).unwrap();
        for a in 0..m.q() {
            for s in 0..5 {
                assert_eq!(m.scale(a, s), m.mul(a, s));
            }
        }
    }

    #[test]
    fn negative_integers_reduce() {
        let m = ModulusSpec::prime_square(3).unwrap();
        assert_eq!(m.from_int(&BigInt::from(-1)), 8);
        let f = build_extension(3, 2).unwrap();
        assert_eq!(f.from_int(&BigInt::from(-1)), 2);
        assert_eq!(f.from_i64(7), 1);
    }
}
