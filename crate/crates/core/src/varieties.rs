//! Point enumeration for `V_F` and the auxiliary cones `W_{F,h}`, the
//! lift count over `Z/p^2Z`, and dimension estimates from extension counts.
//!
//! `W_{F,h}` is cut out by `F(y) = 0` and `h_i dF/dx_j(y) = h_j dF/dx_i(y)`,
//! i.e. `rank(h; grad F(y)) < 2`. Both conditions are homogeneous in `y`, so
//! `W` is a cone: its affine count over `F_q` is `1 + (q - 1) * (#projective points)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, HypothesisError, Result};
use crate::ffield::{build_extension, ModulusKind, ModulusSpec};
use crate::poly::{analyze_form, decode_index, for_each_projective_rep, CompiledForm, MultiPoly, Point};
use crate::DEFAULT_KMAX;

/// Points per parallel work item. Fixed, so partitions do not depend on the thread count.
const CHUNK: u64 = 1 << 13;

/// Refuse enumerations larger than this many points.
const MAX_ENUMERATION: u128 = 1 << 36;

pub(crate) fn space_size(q: u64, n: usize) -> Result<u64> {
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_ENUMERATION {
        return Err(Error::TooLarge(total));
    }
    Ok(total as u64)
}

#[inline]
fn advance(pt: &mut [u64], q: u64) {
    for c in pt.iter_mut().rev() {
        *c += 1;
        if *c < q {
            return;
        }
        *c = 0;
    }
}

/// Folds `step` over every point of `K^n` in fixed-size chunks processed in
/// parallel; returns the per-chunk accumulators in odometer order.
pub(crate) fn par_scan<A, I, S>(n: usize, q: u64, init: I, step: S) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &[u64]) + Sync,
{
    let total = space_size(q, n)?;
    let nchunks = total.div_ceil(CHUNK);
    Ok((0..nchunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut acc = init();
            let mut pt = vec![0u64; n];
            decode_index(start, q, &mut pt);
            for _ in start..end {
                step(&mut acc, &pt);
                advance(&mut pt, q);
            }
            acc
        })
        .collect())
}

#[inline]
pub(crate) fn rank_below_two(h: &[u64], g: &[u64], m: &ModulusSpec) -> bool {
    let n = h.len();
    for i in 0..n {
        for j in i + 1..n {
            if m.scale(g[j], h[i]) != m.scale(g[i], h[j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    /// Odometer order, last coordinate fastest.
    pub points: Vec<Point>,
    pub count: u64,
}

/// All `x` in `K^n` with `F(x) = 0`.
pub fn enumerate_points(f: &MultiPoly, m: &ModulusSpec) -> Result<PointSet> {
    let form = CompiledForm::new(f, m);
    let chunks = par_scan(
        f.nvars(),
        m.q(),
        Vec::new,
        |acc: &mut Vec<Point>, pt| {
            if form.f.eval(m, pt) == 0 {
                acc.push(Point(pt.to_vec()));
            }
        },
    )?;
    let points: Vec<Point> = chunks.into_iter().flatten().collect();
    Ok(PointSet {
        count: points.len() as u64,
        points,
    })
}

/// `#V_F(K)` without materializing the points.
pub fn count_points(f: &MultiPoly, m: &ModulusSpec) -> Result<u64> {
    let form = CompiledForm::new(f, m);
    let chunks = par_scan(f.nvars(), m.q(), || 0u64, |acc, pt| {
        if form.f.eval(m, pt) == 0 {
            *acc += 1;
        }
    })?;
    Ok(chunks.into_iter().sum())
}

/// The variety `W_{F,h}` over `F_p` and its extensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSpec {
    f: MultiPoly,
    h: Vec<u64>,
    p: u64,
}

impl WSpec {
    pub fn new(f: MultiPoly, h: Vec<u64>, p: u64) -> Result<Self> {
        if h.len() != f.nvars() {
            return Err(Error::DimensionMismatch {
                expected: f.nvars(),
                got: h.len(),
            });
        }
        if let Some(&x) = h.iter().find(|&&x| x >= p) {
            return Err(Error::NotReduced { value: x, modulus: p });
        }
        if !f.is_homogeneous() {
            return Err(HypothesisError::NotHomogeneous.into());
        }
        if f.degree() < 2 {
            return Err(HypothesisError::DegreeTooSmall(f.degree()).into());
        }
        Ok(WSpec { f, h, p })
    }

    pub fn form(&self) -> &MultiPoly {
        &self.f
    }

    pub fn h(&self) -> &[u64] {
        &self.h
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// Points of `W_{F,h}` over `m = F_{p^e}` by exhaustive affine enumeration.
pub fn enumerate_w(w: &WSpec, m: &ModulusSpec) -> Result<PointSet> {
    if !m.is_field() || m.p() != w.p {
        return Err(Error::UnsupportedModulus(format!(
            "W_(F,h) for p = {} needs a field of characteristic {}, got {m}",
            w.p, w.p
        )));
    }
    let n = w.f.nvars();
    let form = CompiledForm::new(&w.f, m);
    let chunks = par_scan(
        n,
        m.q(),
        || (Vec::new(), vec![0u64; n]),
        |(acc, grad): &mut (Vec<Point>, Vec<u64>), pt| {
            if form.f.eval(m, pt) != 0 {
                return;
            }
            form.grad_at(m, pt, grad);
            if rank_below_two(&w.h, grad, m) {
                acc.push(Point(pt.to_vec()));
            }
        },
    )?;
    let points: Vec<Point> = chunks.into_iter().flat_map(|(v, _)| v).collect();
    Ok(PointSet {
        count: points.len() as u64,
        points,
    })
}

/// `#V(F_p)` and `#V(Z/p^2Z)`, the latter both by enumeration and by the
/// lift formula `p^{n-1}(N_1 - 1) + p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCount {
    pub p: u64,
    pub n1: u64,
    pub n2_enumerated: u64,
    /// Suppressed when the hypotheses fail.
    pub n2_formula: Option<u64>,
    pub agree: Option<bool>,
    #[serde(serialize_with = "ser_violation")]
    pub hypothesis_violation: Option<HypothesisError>,
}

fn ser_violation<S: serde::Serializer>(v: &Option<HypothesisError>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(e) => s.serialize_some(&e.to_string()),
        None => s.serialize_none(),
    }
}

/// Runs the smoothness screen at the default depth and returns the first violated hypothesis.
pub fn check_hypotheses(f: &MultiPoly, p: u64) -> Result<()> {
    analyze_form(f, p, DEFAULT_KMAX)?
        .hypotheses(f.nvars())
        .map_err(Error::from)
}

pub fn count_mod_p2(f: &MultiPoly, p: u64) -> Result<LiftCount> {
    let n = f.nvars();
    let violation = match check_hypotheses(f, p) {
        Ok(()) => None,
        Err(Error::Hypothesis(h)) => Some(h),
        Err(e) => return Err(e),
    };
    let n1 = count_points(f, &ModulusSpec::prime_field(p)?)?;
    let n2 = count_points(f, &ModulusSpec::prime_square(p)?)?;
    let formula = violation
        .is_none()
        .then(|| p.pow(n as u32 - 1) * (n1 - 1) + p.pow(n as u32));
    Ok(LiftCount {
        p,
        n1,
        n2_enumerated: n2,
        n2_formula: formula,
        agree: formula.map(|x| x == n2),
        hypothesis_violation: violation,
    })
}

/// Dimension estimate for a cone from its counts over `F_{p^e}`, `e = 1..=kmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimEstimate {
    pub affine_counts: BTreeMap<u32, u64>,
    pub proj_counts: BTreeMap<u32, u64>,
    pub dim_est: usize,
    pub method_note: String,
}

/// `1 + round(log_Q P)` with ties rounded down, clamped to `[1, n-1]`; `0` when `P = 0`.
///
/// Exact: the rounded value is the least `k >= 0` with `P^2 <= Q^{2k+1}`.
pub fn dim_from_projective(proj: u64, q: u64, n: usize) -> usize {
    if proj == 0 {
        return 0;
    }
    let target = (proj as u128) * (proj as u128);
    let step = (q as u128) * (q as u128);
    let mut bound = q as u128;
    let mut k = 0usize;
    while target > bound {
        k += 1;
        bound = bound.saturating_mul(step);
    }
    (1 + k).clamp(1, n.saturating_sub(1).max(1))
}

impl DimEstimate {
    fn from_affine(p: u64, n: usize, affine: Vec<u64>) -> DimEstimate {
        let kmax = affine.len() as u32;
        let mut affine_counts = BTreeMap::new();
        let mut proj_counts = BTreeMap::new();
        for (i, &a) in affine.iter().enumerate() {
            let e = i as u32 + 1;
            affine_counts.insert(e, a);
            proj_counts.insert(e, (a - 1) / (p.pow(e) - 1));
        }
        let q = p.pow(kmax);
        let proj = proj_counts[&kmax];
        let dim_est = dim_from_projective(proj, q, n);
        let method_note = if dim_est == 0 {
            format!("W(F_{q}) = {{0}}; cone point only up to e = {kmax}")
        } else {
            format!("1 + round_half_down(log_{q} {proj}) from projective count over F_{q}")
        };
        DimEstimate {
            affine_counts,
            proj_counts,
            dim_est,
            method_note,
        }
    }
}

struct Level {
    field: ModulusSpec,
    /// Gradients at the normalized projective points of `V_F`, flattened `n` per point.
    grads: Vec<u64>,
}

/// Counts `W_{F,h}` for many `h` at once.
///
/// The projective points of `V_F` over each `F_{p^e}` and their gradients
/// are computed once; `W_{F,h}` is then the subset where `h` and the gradient
/// are proportional.
pub struct WCounter {
    n: usize,
    p: u64,
    kmax: u32,
    levels: Vec<Level>,
}

impl WCounter {
    pub fn new(f: &MultiPoly, p: u64, kmax: u32) -> Result<Self> {
        if kmax == 0 || kmax > crate::ffield::MAX_EXTENSION_DEGREE {
            return Err(Error::ExtensionDegree(kmax));
        }
        if !f.is_homogeneous() {
            return Err(HypothesisError::NotHomogeneous.into());
        }
        if f.degree() < 2 {
            return Err(HypothesisError::DegreeTooSmall(f.degree()).into());
        }
        let n = f.nvars();
        let mut levels = Vec::new();
        for e in 1..=kmax {
            let field = build_extension(p, e)?;
            space_size(field.q(), n.saturating_sub(1))?;
            let form = CompiledForm::new(f, &field);
            let q = field.q();
            // parallel over the first free coordinate value of each representative block
            let leads: Vec<usize> = (0..n).rev().collect();
            let per_lead: Vec<Vec<u64>> = leads
                .par_iter()
                .map(|&lead| {
                    let mut out = Vec::new();
                    let mut grad = vec![0u64; n];
                    let free = n - lead - 1;
                    let mut pt = vec![0u64; n];
                    let mut tail = vec![0u64; free];
                    let total = q.pow(free as u32);
                    for idx in 0..total {
                        decode_index(idx, q, &mut tail);
                        pt[lead] = 1;
                        pt[lead + 1..].copy_from_slice(&tail);
                        if form.f.eval(&field, &pt) == 0 {
                            form.grad_at(&field, &pt, &mut grad);
                            out.extend_from_slice(&grad);
                        }
                    }
                    out
                })
                .collect();
            levels.push(Level {
                field,
                grads: per_lead.concat(),
            });
        }
        Ok(WCounter { n, p, kmax, levels })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    /// Number of projective points of `V_F` over `F_{p^e}`.
    pub fn projective_v_count(&self, e: u32) -> u64 {
        (self.levels[e as usize - 1].grads.len() / self.n) as u64
    }

    /// Affine counts `#W_{F,h}(F_{p^e})` for `e = 1..=kmax`.
    pub fn affine_counts(&self, h: &[u64]) -> Vec<u64> {
        debug_assert_eq!(h.len(), self.n);
        self.levels
            .iter()
            .map(|lvl| {
                let proj = lvl
                    .grads
                    .chunks_exact(self.n)
                    .filter(|g| rank_below_two(h, g, &lvl.field))
                    .count() as u64;
                1 + (lvl.field.q() - 1) * proj
            })
            .collect()
    }

    /// `#W_{F,h}(F_p)`.
    pub fn count_fp(&self, h: &[u64]) -> u64 {
        let lvl = &self.levels[0];
        let proj = lvl
            .grads
            .chunks_exact(self.n)
            .filter(|g| rank_below_two(h, g, &lvl.field))
            .count() as u64;
        1 + (self.p - 1) * proj
    }

    pub fn estimate(&self, h: &[u64]) -> DimEstimate {
        DimEstimate::from_affine(self.p, self.n, self.affine_counts(h))
    }
}

/// Dimension estimate of `W_{F,h}` from its counts over `F_{p^e}`, `e <= kmax`.
pub fn estimate_dim(w: &WSpec, kmax: u32) -> Result<DimEstimate> {
    Ok(WCounter::new(&w.f, w.p, kmax)?.estimate(&w.h))
}

/// Projective points of `V_F` over `m`, normalized, in lexicographic order.
pub fn projective_points(f: &MultiPoly, m: &ModulusSpec) -> Result<Vec<Point>> {
    if m.kind() == ModulusKind::PrimeSquareQuotient {
        return Err(Error::UnsupportedModulus(format!("{m} has no projective space")));
    }
    let form = CompiledForm::new(f, m);
    let mut out = Vec::new();
    for_each_projective_rep(f.nvars(), m.q(), |pt| {
        if form.f.eval(m, pt) == 0 {
            out.push(Point(pt.to_vec()));
        }
        true
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn conic() -> MultiPoly {
        parse_poly("x1^2+x2^2", 2).unwrap()
    }

    fn fermat() -> MultiPoly {
        parse_poly("x1^3+x2^3+x3^3", 3).unwrap()
    }

    #[test]
    fn point_counts() {
        let f3 = ModulusSpec::prime_field(3).unwrap();
        let s = enumerate_points(&conic(), &f3).unwrap();
        assert_eq!(s.points, vec![Point(vec![0, 0])]);
        let f5 = ModulusSpec::prime_field(5).unwrap();
        assert_eq!(enumerate_points(&conic(), &f5).unwrap().count, 9);
        let z9 = ModulusSpec::prime_square(3).unwrap();
        let s = enumerate_points(&conic(), &z9).unwrap();
        assert_eq!(s.count, 9);
        assert!(s.points.iter().all(|p| p.0.iter().all(|c| c % 3 == 0)));
        assert!(s.points.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn w_examples() {
        let f5 = ModulusSpec::prime_field(5).unwrap();
        let w = WSpec::new(conic(), vec![1, 0], 5).unwrap();
        assert_eq!(enumerate_w(&w, &f5).unwrap().points, vec![Point(vec![0, 0])]);
        let w0 = WSpec::new(conic(), vec![0, 0], 5).unwrap();
        assert_eq!(enumerate_w(&w0, &f5).unwrap().count, 9);
        let wf = WSpec::new(fermat(), vec![1, 1, 1], 5).unwrap();
        assert_eq!(enumerate_w(&wf, &f5).unwrap().count, 1);
        let z = ModulusSpec::prime_square(5).unwrap();
        assert!(matches!(enumerate_w(&w, &z), Err(Error::UnsupportedModulus(_))));
        let f7 = ModulusSpec::prime_field(7).unwrap();
        assert!(matches!(enumerate_w(&w, &f7), Err(Error::UnsupportedModulus(_))));
        assert!(matches!(WSpec::new(conic(), vec![5, 0], 5), Err(Error::NotReduced { .. })));
    }

    #[test]
    fn lift_counts() {
        let c = count_mod_p2(&conic(), 3).unwrap();
        assert_eq!((c.n1, c.n2_enumerated, c.n2_formula, c.agree), (1, 9, Some(9), Some(true)));
        let c = count_mod_p2(&conic(), 5).unwrap();
        assert_eq!((c.n1, c.n2_enumerated, c.n2_formula, c.agree), (9, 65, Some(65), Some(true)));
        let c = count_mod_p2(&fermat(), 5).unwrap();
        assert_eq!(c.agree, Some(true));
        // p | d: formula suppressed, violation reported
        let c = count_mod_p2(&fermat(), 3).unwrap();
        assert!(c.n2_formula.is_none());
        assert!(matches!(c.hypothesis_violation, Some(HypothesisError::PrimeDividesDegree { .. })));
    }

    #[test]
    fn dim_rule() {
        assert_eq!(dim_from_projective(0, 25, 3), 0);
        assert_eq!(dim_from_projective(2, 25, 2), 1);
        assert_eq!(dim_from_projective(5, 25, 3), 1); // exact tie 25^(1/2) rounds down
        assert_eq!(dim_from_projective(6, 25, 3), 2);
        assert_eq!(dim_from_projective(36, 25, 3), 2);
        assert_eq!(dim_from_projective(700, 25, 3), 2); // clamped to n - 1
    }

    #[test]
    fn dim_examples() {
        let w = WSpec::new(conic(), vec![1, 0], 5).unwrap();
        let d = estimate_dim(&w, 2).unwrap();
        assert_eq!(d.dim_est, 0);
        assert_eq!(d.affine_counts.values().copied().collect::<Vec<_>>(), vec![1, 1]);

        let w = WSpec::new(conic(), vec![0, 0], 5).unwrap();
        let d = estimate_dim(&w, 2).unwrap();
        assert_eq!(d.affine_counts.values().copied().collect::<Vec<_>>(), vec![9, 49]);
        assert_eq!(d.proj_counts.values().copied().collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(d.dim_est, 1);

        let w = WSpec::new(fermat(), vec![0, 0, 0], 5).unwrap();
        assert_eq!(estimate_dim(&w, 2).unwrap().dim_est, 2);
    }

    #[test]
    fn fast_counts_match_enumeration() {
        let forms = [conic(), fermat(), parse_poly("x1^2x2+x2^2x3+x3^2x1", 3).unwrap()];
        for f in &forms {
            for (p, kmax) in [(5u64, 2u32), (7, 1), (2, 2)] {
                if f.nvars() == 3 && p == 7 {
                    continue;
                }
                let wc = WCounter::new(f, p, kmax).unwrap();
                let n = f.nvars();
                let mut h = vec![0u64; n];
                for idx in 0..p.pow(n as u32) {
                    decode_index(idx, p, &mut h);
                    let fast = wc.affine_counts(&h);
                    for e in 1..=kmax {
                        let m = build_extension(p, e).unwrap();
                        let w = WSpec::new(f.clone(), h.clone(), p).unwrap();
                        assert_eq!(enumerate_w(&w, &m).unwrap().count, fast[e as usize - 1], "{f} h={h:?} e={e}");
                    }
                    assert_eq!(wc.count_fp(&h), fast[0]);
                }
            }
        }
    }

    #[test]
    fn w_is_a_cone_containing_origin() {
        for f in [conic(), fermat()] {
            let n = f.nvars();
            for (p, e) in [(5u64, 1u32), (3, 2), (2, 2)] {
                let m = build_extension(p, e).unwrap();
                for h in [vec![0u64; n], vec![1; n], (0..n as u64).map(|i| i % p).collect()] {
                    let w = WSpec::new(f.clone(), h, p).unwrap();
                    let pts = enumerate_w(&w, &m).unwrap();
                    assert!(pts.points.contains(&Point(vec![0; n])));
                    assert_eq!((pts.count - 1) % (m.q() - 1), 0);
                    let set: std::collections::HashSet<_> = pts.points.iter().cloned().collect();
                    for y in &pts.points {
                        for lam in 1..m.q() {
                            let scaled = Point(y.0.iter().map(|&c| m.mul(c, lam)).collect());
                            assert!(set.contains(&scaled));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn w_at_zero_is_v() {
        for f in [conic(), fermat()] {
            let n = f.nvars();
            for p in [3u64, 5] {
                let m = ModulusSpec::prime_field(p).unwrap();
                let w = WSpec::new(f.clone(), vec![0; n], p).unwrap();
                assert_eq!(enumerate_w(&w, &m).unwrap().points, enumerate_points(&f, &m).unwrap().points);
            }
        }
    }

    #[test]
    fn projective_points_of_conic() {
        let f5 = ModulusSpec::prime_field(5).unwrap();
        let pts = projective_points(&conic(), &f5).unwrap();
        assert_eq!(pts, vec![Point(vec![1, 2]), Point(vec![1, 3])]);
    }
}
