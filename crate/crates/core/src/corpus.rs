//! Built-in forms used by the CLI and the acceptance suite.

use serde::Serialize;

use crate::error::Result;
use crate::poly::{parse_poly, MultiPoly};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CorpusForm {
    pub name: &'static str,
    pub text: &'static str,
    pub nvars: usize,
    /// Primes at which the form is homogeneous, nonsingular (screened up to
    /// `F_{p^2}`) and `p` does not divide the degree.
    pub primes: &'static [u64],
}

impl CorpusForm {
    pub fn poly(&self) -> Result<MultiPoly> {
        parse_poly(self.text, self.nvars)
    }

    pub fn admits(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }
}

pub const CORPUS: &[CorpusForm] = &[
    CorpusForm {
        name: "diagonal conic",
        text: "x1^2+x2^2",
        nvars: 2,
        primes: &[3, 5, 7, 11, 13, 17, 19, 23, 29, 31],
    },
    CorpusForm {
        name: "binary cubic",
        text: "x1^3+x2^3",
        nvars: 2,
        primes: &[2, 5, 7, 11, 13, 17, 19, 23, 29, 31],
    },
    CorpusForm {
        name: "binary quartic",
        text: "x1^4+x2^4",
        nvars: 2,
        primes: &[3, 5, 7, 11, 13, 17, 19, 23, 29, 31],
    },
    CorpusForm {
        name: "Fermat cubic",
        text: "x1^3+x2^3+x3^3",
        nvars: 3,
        primes: &[2, 5, 7, 11, 13],
    },
    CorpusForm {
        name: "diagonal quartic",
        text: "x1^4+x2^4+x3^4",
        nvars: 3,
        primes: &[3, 5, 7, 11, 13],
    },
    CorpusForm {
        name: "cyclic cubic",
        text: "x1^2x2+x2^2x3+x3^2x1",
        nvars: 3,
        primes: &[2, 5, 7, 11, 13],
    },
];

/// Corpus forms in `n` variables.
pub fn binary_forms() -> impl Iterator<Item = &'static CorpusForm> {
    CORPUS.iter().filter(|f| f.nvars == 2)
}
