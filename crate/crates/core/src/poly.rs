//! Integer multivariate forms: parsing, printing, evaluation in the supported
//! rings, formal partial derivatives, and the smoothness screen run before
//! any of the sum engines accept a form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, HypothesisError, Result};
use crate::ffield::{build_extension, ModulusSpec};

/// One monomial with its coefficient; `exps[i]` is the power of `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigInt,
    pub exps: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// A polynomial in `x_1..x_n` with integer coefficients, kept canonical:
/// like terms merged, zero terms dropped, terms sorted by descending degree
/// and then descending exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
    degree: u32,
    homogeneous: bool,
}

impl MultiPoly {
    /// Canonicalizes an arbitrary list of terms. The result may be the zero polynomial.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = Term>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for t in terms {
            if t.exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: t.exps.len(),
                });
            }
            *merged.entry(t.exps).or_insert_with(BigInt::zero) += t.coeff;
        }
        let mut terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| Term { coeff, exps })
            .collect();
        terms.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.exps.cmp(&a.exps)));
        let degree = terms.iter().map(Term::degree).max().unwrap_or(0);
        let homogeneous = terms.iter().all(|t| t.degree() == degree);
        Ok(MultiPoly {
            nvars,
            terms,
            degree,
            homogeneous,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, pt: &[BigInt]) -> Result<BigInt> {
        self.check_len(pt.len())?;
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &k) in pt.iter().zip(&t.exps) {
                v *= num_traits::pow(x.clone(), k as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// `F(pt)` in the ring `m`, reducing after every term.
    pub fn eval_mod(&self, pt: &Point, m: &ModulusSpec) -> Result<u64> {
        self.check_len(pt.0.len())?;
        for &c in &pt.0 {
            m.check(c)?;
        }
        Ok(CompiledPoly::new(self, m).eval(m, &pt.0))
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|t| t.exps[var] > 0).map(|t| {
            let mut exps = t.exps.clone();
            let k = exps[var];
            exps[var] -= 1;
            Term {
                coeff: &t.coeff * BigInt::from(k),
                exps,
            }
        });
        MultiPoly::from_terms(self.nvars, terms).expect("same arity")
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        gradient(self)
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got,
            });
        }
        Ok(())
    }
}

/// `(dF/dx_1, ..., dF/dx_n)` over the integers; vanishing entries are explicit zero polynomials.
pub fn gradient(f: &MultiPoly) -> Vec<MultiPoly> {
    (0..f.nvars).map(|i| f.derivative(i)).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let mag = t.coeff.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = t.exps.iter().all(|&k| k == 0);
            if !mag.is_one() || constant {
                write!(f, "{mag}")?;
            }
            for (v, &k) in t.exps.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "x{}", v + 1)?,
                    k => write!(f, "x{}^{}", v + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

/// A point as ring codes (see [`crate::ffield`] for the encoding).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<u64>);

impl Point {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

/// A polynomial with coefficients pre-reduced into a fixed ring.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    terms: Vec<(u64, Vec<u32>)>,
}

impl CompiledPoly {
    pub(crate) fn new(f: &MultiPoly, m: &ModulusSpec) -> Self {
        let terms = f
            .terms
            .iter()
            .map(|t| (m.from_int(&t.coeff), t.exps.clone()))
            .filter(|(c, _)| *c != 0)
            .collect();
        CompiledPoly { terms }
    }

    #[inline]
    pub(crate) fn eval(&self, m: &ModulusSpec, pt: &[u64]) -> u64 {
        let mut acc = 0;
        for (c, exps) in &self.terms {
            let mut v = *c;
            for (&x, &k) in pt.iter().zip(exps) {
                if k > 0 {
                    v = m.mul(v, m.pow(x, k as u64));
                    if v == 0 {
                        break;
                    }
                }
            }
            acc = m.add(acc, v);
        }
        acc
    }
}

/// `F` together with its gradient, compiled for one ring.
#[derive(Clone, Debug)]
pub(crate) struct CompiledForm {
    pub(crate) f: CompiledPoly,
    pub(crate) grad: Vec<CompiledPoly>,
}

impl CompiledForm {
    pub(crate) fn new(f: &MultiPoly, m: &ModulusSpec) -> Self {
        CompiledForm {
            f: CompiledPoly::new(f, m),
            grad: gradient(f).iter().map(|g| CompiledPoly::new(g, m)).collect(),
        }
    }

    pub(crate) fn grad_at(&self, m: &ModulusSpec, pt: &[u64], out: &mut [u64]) {
        for (o, g) in out.iter_mut().zip(&self.grad) {
            *o = g.eval(m, pt);
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_number(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        match self.digits() {
            Some(d) => d.parse::<u32>().map_err(|_| Error::Parse {
                pos: at,
                msg: format!("{what} too large"),
            }),
            None => self.err(format!("expected {what}")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; self.nvars];
        let mut seen_factor = false;
        if let Some(d) = self.digits() {
            coeff = d.parse::<BigInt>().expect("digit run");
            seen_factor = true;
        }
        loop {
            match self.peek() {
                Some(b'*') if seen_factor => {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected monomial after '*'");
                    }
                }
                Some(b'x') => {
                    self.pos += 1;
                    if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                        return self.err("expected variable index after 'x'");
                    }
                    let idx = self.small_number("variable index")? as usize;
                    if idx == 0 || idx > self.nvars {
                        return Err(Error::VariableOutOfRange {
                            index: idx,
                            nvars: self.nvars,
                        });
                    }
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self.small_number("exponent")?;
                    }
                    exps[idx - 1] += k;
                    seen_factor = true;
                }
                _ => break,
            }
        }
        if !seen_factor {
            return self.err("expected a term");
        }
        Ok(Term { coeff, exps })
    }
}

/// Parses the ASCII grammar
///
/// ```text
/// poly     := term (('+'|'-') term)*
/// term     := [integer] ['*'] monomial*
/// monomial := 'x' index ['^' exponent]
/// ```
///
/// with juxtaposition as multiplication and whitespace ignored. A leading
/// sign on the first term is accepted, as is `*` between monomials.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly> {
    if nvars == 0 {
        return Err(Error::InvalidArgument("nvars must be >= 1".into()));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
    };
    let mut terms = Vec::new();
    let mut sign = BigInt::one();
    match p.peek() {
        Some(b'-') => {
            sign = -sign;
            p.pos += 1;
        }
        Some(b'+') => p.pos += 1,
        _ => {}
    }
    loop {
        let mut t = p.term()?;
        t.coeff *= &sign;
        terms.push(t);
        match p.peek() {
            None => break,
            Some(b'+') => sign = BigInt::one(),
            Some(b'-') => sign = -BigInt::one(),
            Some(c) => return p.err(format!("unexpected character '{}'", c as char)),
        }
        p.pos += 1;
    }
    let poly = MultiPoly::from_terms(nvars, terms)?;
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if poly.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// Smoothness screen
// ---------------------------------------------------------------------------

/// First point found with `F = 0` and `grad F = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularWitness {
    /// Extension degree of the field the witness lives in.
    pub e: u32,
    /// Coordinates as coefficient vectors (low degree first).
    pub coords: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormReport {
    pub p: u64,
    pub kmax: u32,
    pub homogeneous: bool,
    pub degree: u32,
    pub degree_mod_p: u64,
    pub p_divides_degree: bool,
    /// `None` means no witness up to `F_{p^kmax}`.
    pub singular_witness: Option<SingularWitness>,
}

impl FormReport {
    /// The conditions every sum and strata engine requires.
    pub fn hypotheses(&self, nvars: usize) -> std::result::Result<(), HypothesisError> {
        if nvars < 2 {
            return Err(HypothesisError::TooFewVariables(nvars));
        }
        if !self.homogeneous {
            return Err(HypothesisError::NotHomogeneous);
        }
        if self.degree < 2 {
            return Err(HypothesisError::DegreeTooSmall(self.degree));
        }
        if self.p_divides_degree {
            return Err(HypothesisError::PrimeDividesDegree {
                p: self.p,
                degree: self.degree,
            });
        }
        if let Some(w) = &self.singular_witness {
            return Err(HypothesisError::Singular {
                p: self.p,
                e: w.e,
                witness: w.coords.clone(),
            });
        }
        Ok(())
    }
}

/// Calls `f` on the normalized representative of every point of
/// `P^{n-1}(F_q)` (first nonzero coordinate equal to 1), in increasing
/// lexicographic order of the representatives. Stops early when `f` returns
/// `false`.
pub(crate) fn for_each_projective_rep(n: usize, q: u64, mut f: impl FnMut(&[u64]) -> bool) {
    let mut pt = vec![0u64; n];
    for lead in (0..n).rev() {
        pt.fill(0);
        pt[lead] = 1;
        'reps: loop {
            if !f(&pt) {
                return;
            }
            // odometer over the coordinates after `lead`, last fastest
            let mut i = n;
            loop {
                if i == lead + 1 {
                    break 'reps;
                }
                i -= 1;
                pt[i] += 1;
                if pt[i] < q {
                    continue 'reps;
                }
                pt[i] = 0;
            }
        }
    }
}

/// Reports homogeneity, `d mod p`, and searches `F_{p^e}^n \ {0}` for
/// `e = 1..=kmax` for the first point (odometer order) where `F` and every
/// partial derivative vanish.
pub fn analyze_form(f: &MultiPoly, p: u64, kmax: u32) -> Result<FormReport> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be >= 1".into()));
    }
    let mut witness = None;
    for e in 1..=kmax {
        let m = build_extension(p, e)?;
        let form = CompiledForm::new(f, &m);
        let n = f.nvars();
        let mut grad = vec![0u64; n];
        let mut found: Option<Vec<u64>> = None;
        let mut test = |pt: &[u64]| -> bool {
            if form.f.eval(&m, pt) != 0 {
                return true;
            }
            form.grad_at(&m, pt, &mut grad);
            if grad.iter().all(|&g| g == 0) {
                found = Some(pt.to_vec());
                return false;
            }
            true
        };
        if f.is_homogeneous() {
            // both conditions are homogeneous: the least affine witness is a normalized representative
            for_each_projective_rep(n, m.q(), &mut test);
        } else {
            let total = (m.q() as u128).pow(n as u32);
            if total > 1 << 32 {
                return Err(Error::TooLarge(total));
            }
            let mut pt = vec![0u64; n];
            for idx in 1..total as u64 {
                decode_index(idx, m.q(), &mut pt);
                if !test(&pt) {
                    break;
                }
            }
        }
        if let Some(pt) = found {
            witness = Some(SingularWitness {
                e,
                coords: pt.iter().map(|&c| m.to_ext(c).coeffs).collect(),
            });
            break;
        }
    }
    Ok(FormReport {
        p,
        kmax,
        homogeneous: f.is_homogeneous(),
        degree: f.degree(),
        degree_mod_p: f.degree() as u64 % p,
        p_divides_degree: (f.degree() as u64).is_multiple_of(p),
        singular_witness: witness,
    })
}

/// Writes the `idx`-th point of `K^n` in odometer order (last coordinate fastest).
#[inline]
pub(crate) fn decode_index(mut idx: u64, q: u64, out: &mut [u64]) {
    for c in out.iter_mut().rev() {
        *c = idx % q;
        idx /= q;
    }
}
