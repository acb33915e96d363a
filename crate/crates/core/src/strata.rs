//! The stratification `G_{F,0} ⊇ G_{F,1} ⊇ ... ⊇ G_{F,n}` of `F_p^n`, where
//! `h` lies in `G_{F,j}` when the estimated dimension of `W_{F,h}` is at
//! least `j`.
//!
//! Membership is only as good as the extension-count estimate behind it: every
//! table carries the `kmax` it was built with.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{decode_index, MultiPoly};
use crate::varieties::{check_hypotheses, space_size, DimEstimate, WCounter};

/// `(j, n + j - 2)` for the least `j` with `h` outside `G_{F,j}`.
pub fn j_from_dim(dim_est: usize, n: usize) -> (usize, usize) {
    let j = dim_est + 1;
    (j, n + j - 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataRow {
    pub h: Vec<u64>,
    pub estimate: DimEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataTable {
    #[serde(serialize_with = "ser_poly")]
    pub poly: MultiPoly,
    pub p: u64,
    pub kmax: u32,
    /// One row per `h` in odometer order (last coordinate fastest).
    pub rows: Vec<StrataRow>,
    /// `#G_{F,j}(F_p)` for `j = 0..=n`.
    pub sizes: Vec<u64>,
}

fn ser_poly<S: serde::Serializer>(f: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

impl StrataTable {
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    fn index_of(&self, h: &[u64]) -> Result<usize> {
        let n = self.nvars();
        if h.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: h.len(),
            });
        }
        let mut idx = 0u64;
        for &x in h {
            if x >= self.p {
                return Err(Error::NotReduced { value: x, modulus: self.p });
            }
            idx = idx * self.p + x;
        }
        Ok(idx as usize)
    }

    pub fn row(&self, h: &[u64]) -> Result<&StrataRow> {
        let i = self.index_of(h)?;
        Ok(&self.rows[i])
    }

    pub fn dim_est(&self, h: &[u64]) -> Result<usize> {
        Ok(self.row(h)?.estimate.dim_est)
    }

    /// `h` in `G_{F,j}` iff the estimated dimension is at least `j`.
    pub fn contains(&self, j: usize, h: &[u64]) -> Result<bool> {
        Ok(self.dim_est(h)? >= j)
    }

    /// Elements of `G_{F,j}` in odometer order.
    pub fn stratum(&self, j: usize) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .filter(|r| r.estimate.dim_est >= j)
            .map(|r| r.h.clone())
            .collect()
    }

    /// `G_{F,j+1} ⊆ G_{F,j}`, `sizes[0] = p^n`, and `0` in `G_{F,j}` for `j <= n - 1`.
    pub fn check_nesting(&self) -> bool {
        let n = self.nvars();
        let zero = vec![0u64; n];
        self.sizes[0] == self.p.pow(n as u32)
            && self.sizes.windows(2).all(|w| w[1] <= w[0])
            && self.dim_est(&zero).map(|d| d + 1 >= n).unwrap_or(false)
    }
}

/// Builds the table for every `h` in `F_p^n`.
pub fn build_strata(f: &MultiPoly, p: u64, kmax: u32) -> Result<StrataTable> {
    check_hypotheses(f, p)?;
    let n = f.nvars();
    let counter = WCounter::new(f, p, kmax)?;
    let total = space_size(p, n)?;
    let rows: Vec<StrataRow> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut h = vec![0u64; n];
            decode_index(idx, p, &mut h);
            let estimate = counter.estimate(&h);
            StrataRow { h, estimate }
        })
        .collect();
    let sizes = (0..=n)
        .map(|j| rows.iter().filter(|r| r.estimate.dim_est >= j).count() as u64)
        .collect();
    Ok(StrataTable {
        poly: f.clone(),
        p,
        kmax,
        rows,
        sizes,
    })
}

/// `(j, exponent)` with `j = dim_est(h) + 1` and exponent `n + j - 2`.
pub fn min_j(t: &StrataTable, h: &[u64]) -> Result<(usize, usize)> {
    Ok(j_from_dim(t.dim_est(h)?, t.nvars()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimRow {
    pub j: usize,
    pub sizes: Vec<u64>,
    /// `#G_{F,j}(F_p) / p^{n-j}` per prime.
    pub ratios: Vec<f64>,
    /// Allowed ceiling for every ratio.
    pub ceiling: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimReport {
    pub primes: Vec<u64>,
    pub kmax: u32,
    pub rows: Vec<CodimRow>,
    pub pass: bool,
}

impl CodimReport {
    pub fn row(&self, j: usize) -> Option<&CodimRow> {
        self.rows.iter().find(|r| r.j == j)
    }
}

/// Ratios `#G_{F,j}(F_p) / p^{n-j}` across a series of primes.
///
/// Each `j` passes when every ratio stays at most `constant`, or, without an
/// explicit constant, at most twice the ratio at the first prime (compared
/// exactly in integers).
pub fn codim_report(series: &[StrataTable], constant: Option<f64>) -> Result<CodimReport> {
    let first = series
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty strata series".into()))?;
    for t in series {
        if t.poly != first.poly || t.kmax != first.kmax {
            return Err(Error::InvalidArgument(
                "strata series must share the form and kmax".into(),
            ));
        }
    }
    if series.windows(2).any(|w| w[1].p <= w[0].p) {
        return Err(Error::InvalidArgument("primes must be strictly increasing".into()));
    }
    let n = first.nvars();
    let primes: Vec<u64> = series.iter().map(|t| t.p).collect();
    let rows: Vec<CodimRow> = (0..=n)
        .map(|j| {
            let sizes: Vec<u64> = series.iter().map(|t| t.sizes[j]).collect();
            let scale = |p: u64| (p as u128).pow((n - j) as u32);
            let ratios: Vec<f64> = sizes
                .iter()
                .zip(&primes)
                .map(|(&s, &p)| s as f64 / scale(p) as f64)
                .collect();
            let (ceiling, pass) = match constant {
                Some(c) => (c, ratios.iter().all(|&r| r <= c)),
                None => {
                    let (s0, p0) = (sizes[0] as u128, primes[0]);
                    // s / p^(n-j) <= 2 s0 / p0^(n-j)
                    let pass = sizes
                        .iter()
                        .zip(&primes)
                        .all(|(&s, &p)| s as u128 * scale(p0) <= 2 * s0 * scale(p));
                    (2.0 * ratios[0], pass)
                }
            };
            CodimRow {
                j,
                sizes,
                ratios,
                ceiling,
                pass,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(CodimReport {
        primes,
        kmax: first.kmax,
        rows,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn conic() -> MultiPoly {
        parse_poly("x1^2+x2^2", 2).unwrap()
    }

    #[test]
    fn conic_at_3_has_trivial_g1() {
        // -1 is not a square mod 3: no rational isotropic direction
        let t = build_strata(&conic(), 3, 2).unwrap();
        assert_eq!(t.sizes, vec![9, 1, 0]);
        assert_eq!(t.stratum(1), vec![vec![0, 0]]);
        assert!(t.check_nesting());
    }

    #[test]
    fn conic_at_5_g1_contains_isotropic_lines() {
        // h = (1,2): W is the line y2 = 2 y1 since F(y1, 2y1) = 5 y1^2
        let t = build_strata(&conic(), 5, 2).unwrap();
        assert_eq!(t.dim_est(&[1, 2]).unwrap(), 1);
        assert_eq!(t.dim_est(&[1, 0]).unwrap(), 0);
        assert_eq!(t.sizes, vec![25, 9, 0]);
    }

    #[test]
    fn min_j_examples() {
        let t = build_strata(&conic(), 5, 2).unwrap();
        assert_eq!(min_j(&t, &[1, 0]).unwrap(), (1, 1));
        assert_eq!(min_j(&t, &[0, 0]).unwrap(), (2, 2));
        assert!(matches!(min_j(&t, &[5, 0]), Err(Error::NotReduced { .. })));
        let f = parse_poly("x1^3+x2^3+x3^3", 3).unwrap();
        let t = build_strata(&f, 5, 2).unwrap();
        assert_eq!(min_j(&t, &[1, 1, 1]).unwrap(), (1, 2));
        assert_eq!(min_j(&t, &[0, 0, 0]).unwrap(), (3, 4));
        assert!(t.check_nesting());
    }

    #[test]
    fn scale_invariance() {
        for (s, n, p) in [("x1^3+x2^3+x3^3", 3, 5u64), ("x1^3+x2^3", 2, 7), ("x1^2x2+x2^2x3+x3^2x1", 3, 5)] {
            let f = parse_poly(s, n).unwrap();
            let t = build_strata(&f, p, 2).unwrap();
            for r in &t.rows {
                for lam in 2..p {
                    let scaled: Vec<u64> = r.h.iter().map(|x| x * lam % p).collect();
                    assert_eq!(t.dim_est(&scaled).unwrap(), r.estimate.dim_est);
                }
            }
        }
    }

    #[test]
    fn codim_series_rules() {
        let tables: Vec<_> = [3u64, 7, 11].iter().map(|&p| build_strata(&conic(), p, 2).unwrap()).collect();
        let r = codim_report(&tables, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.row(0).unwrap().ratios, vec![1.0, 1.0, 1.0]);
        let j1 = r.row(1).unwrap();
        assert_eq!(j1.sizes, vec![1, 1, 1]);
        assert!((j1.ratios[0] - 1.0 / 3.0).abs() < 1e-12);

        let rev: Vec<_> = tables.iter().rev().cloned().collect();
        assert!(codim_report(&rev, None).is_err());
        let other = build_strata(&parse_poly("x1^4+x2^4", 2).unwrap(), 13, 2).unwrap();
        assert!(codim_report(&[tables[0].clone(), other], None).is_err());
        assert!(codim_report(&[], None).is_err());
    }

    #[test]
    fn refuses_bad_hypotheses() {
        let f = parse_poly("x1^3+x2^3+x3^3", 3).unwrap();
        assert!(matches!(build_strata(&f, 3, 2), Err(Error::Hypothesis(_))));
        let lin = parse_poly("x1+x2", 2).unwrap();
        assert!(matches!(build_strata(&lin, 5, 2), Err(Error::Hypothesis(_))));
    }
}
