//! Exact arithmetic in `Z[zeta]`, `zeta = e(1/p^2)`.
//!
//! Sums of `p^2`-th roots of unity are accumulated as multiplicities in a
//! [`RootCounter`] and then reduced to the canonical basis
//! `zeta^0, ..., zeta^{p(p-1)-1}` using
//! `Phi_{p^2}(x) = sum_{k<p} x^{kp}`. Two sums are equal exactly when their
//! canonical coefficient vectors agree.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Multiplicities `counts[t]` of `zeta^t`, `t` in `0..p^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCounter {
    p: u64,
    counts: Vec<BigInt>,
}

impl RootCounter {
    pub fn new(p: u64) -> Self {
        RootCounter {
            p,
            counts: vec![BigInt::zero(); (p * p) as usize],
        }
    }

    /// Counter from plain machine-word tallies of length `p^2`.
    pub fn from_tallies(p: u64, tallies: &[u64]) -> Self {
        assert_eq!(tallies.len() as u64, p * p, "tally length must be p^2");
        RootCounter {
            p,
            counts: tallies.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// Adds `mult` copies of `zeta^t` (`t` is reduced mod `p^2`).
    pub fn add(&mut self, t: u64, mult: impl Into<BigInt>) {
        let i = (t % (self.p * self.p)) as usize;
        self.counts[i] += mult.into();
    }

    pub fn add_tallies(&mut self, tallies: &[u64]) {
        for (c, &t) in self.counts.iter_mut().zip(tallies) {
            if t != 0 {
                *c += t;
            }
        }
    }

    /// Entrywise sum; associative and commutative, so partial counters may be merged in any order.
    pub fn merge(&mut self, other: &RootCounter) {
        assert_eq!(self.p, other.p);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Total multiplicity (the number of accumulated terms when all counts are nonnegative).
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Image under `t -> -t mod p^2`, i.e. complex conjugation.
    pub fn conjugate(&self) -> RootCounter {
        let m = (self.p * self.p) as usize;
        let mut counts = vec![BigInt::zero(); m];
        for (t, c) in self.counts.iter().enumerate() {
            counts[(m - t) % m] = c.clone();
        }
        RootCounter { p: self.p, counts }
    }

    /// Direct complex value `sum_t counts[t] e(t/p^2)`, without reduction.
    pub fn embed(&self) -> Complex64 {
        embed_coeffs(self.p, &self.counts)
    }
}

fn root(p: u64, t: usize) -> Complex64 {
    let m = (p * p) as f64;
    let (s, c) = (TAU * t as f64 / m).sin_cos();
    Complex64::new(c, s)
}

fn embed_coeffs(p: u64, coeffs: &[BigInt]) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Complex64::new(0.0, 0.0), |acc, (t, c)| {
            acc + root(p, t) * c.to_f64().unwrap_or(f64::NAN)
        })
}

/// Element of `Z[zeta_{p^2}]` in the canonical basis (`p(p-1)` coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElem {
    pub fn zero(p: u64) -> Self {
        CycloElem {
            p,
            coeffs: vec![BigInt::zero(); (p * (p - 1)) as usize],
        }
    }

    /// `k * zeta^t`.
    pub fn monomial(p: u64, t: u64, k: impl Into<BigInt>) -> Self {
        let mut rc = RootCounter::new(p);
        rc.add(t, k);
        canonicalize(&rc)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn add(&self, other: &CycloElem) -> Result<CycloElem> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(CycloElem {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> CycloElem {
        CycloElem {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Sum of absolute coefficient values; scales the embedding error bound.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Complex value in double precision. Each basis root is accurate to a
    /// few ulps, so the absolute error is at most `1e-9 * l1_norm()`.
    pub fn to_complex(&self) -> Complex64 {
        embed_coeffs(self.p, &self.coeffs)
    }
}

/// Reduces a counter to the canonical basis: for `t = p(p-1) + u`,
/// `zeta^t = -sum_{k=0}^{p-2} zeta^{kp+u}`.
pub fn canonicalize(rc: &RootCounter) -> CycloElem {
    let p = rc.p as usize;
    let top = p * (p - 1);
    let mut coeffs: Vec<BigInt> = rc.counts[..top].to_vec();
    for u in 0..p {
        let c = &rc.counts[top + u];
        if c.is_zero() {
            continue;
        }
        for k in 0..p - 1 {
            coeffs[k * p + u] -= c;
        }
    }
    CycloElem { p: rc.p, coeffs }
}

/// Exact equality in `Z[zeta_{p^2}]`.
pub fn cyclo_eq(a: &CycloElem, b: &CycloElem) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::PrimeMismatch(a.p, b.p));
    }
    Ok(a.coeffs == b.coeffs)
}

/// Complex value and its magnitude.
pub fn cyclo_to_complex(a: &CycloElem) -> (Complex64, f64) {
    let z = a.to_complex();
    (z, z.norm())
}
