//! Lex-segment ideals in `k[x, y]` (with `x > y`), their graded Betti
//! numbers and bidiagonal Hilbert-Burch matrices.

use serde::{Deserialize, Serialize};

use crate::cancel::BettiTable;
use crate::oseq::OSequence;
use crate::poly::{BiPoly, HilbertBurchMatrix, PrimeField};

/// A monomial ideal of `k[x, y]` given by its minimal generators `x^a y^t`,
/// sorted by descending `a` (hence ascending `t`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct MonomialIdeal2 {
    gens: Vec<(u32, u32)>,
}

impl MonomialIdeal2 {
    /// Sorts the generators and checks that none divides another.
    pub fn new(mut gens: Vec<(u32, u32)>) -> Result<Self, String> {
        if gens.is_empty() {
            return Err("a monomial ideal needs at least one generator".into());
        }
        gens.sort_by(|p, q| q.cmp(p));
        for w in gens.windows(2) {
            let ((a0, t0), (a1, t1)) = (w[0], w[1]);
            if a0 == a1 || t1 <= t0 {
                return Err(format!("x^{a1}y^{t1} and x^{a0}y^{t0} are not both minimal"));
            }
        }
        Ok(Self { gens })
    }

    pub fn gens(&self) -> &[(u32, u32)] {
        &self.gens
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|&(a, t)| a + t).collect()
    }

    pub fn contains(&self, a: u32, t: u32) -> bool {
        self.gens.iter().any(|&(ga, gt)| ga <= a && gt <= t)
    }

    /// Hilbert function of `k[x,y]/L` by counting standard monomials; `None`
    /// unless the quotient is Artinian.
    pub fn hilbert_function(&self) -> Option<Vec<u32>> {
        let (a_first, t_first) = self.gens[0];
        let (a_last, t_last) = self.gens[self.gens.len() - 1];
        if t_first != 0 || a_last != 0 {
            return None;
        }
        let top = a_first + t_last;
        let mut hf: Vec<u32> = (0..=top)
            .map(|j| (0..=j).filter(|&t| !self.contains(j - t, t)).count() as u32)
            .collect();
        while hf.last() == Some(&0) {
            hf.pop();
        }
        Some(hf)
    }

    /// Graded Betti numbers: one syzygy at `lcm` of each consecutive pair of generators.
    pub fn betti(&self) -> BettiTable {
        let gens = self.generator_degrees();
        let syz: Vec<u32> = self
            .gens
            .windows(2)
            .map(|w| w[0].0 + w[1].1)
            .collect();
        BettiTable::from_degrees(&gens, &syz).expect("monomial ideal resolution has |syz| = |gens| - 1")
    }

    /// The Hilbert-Burch matrix: column `i` holds `y^{t_{i+1}-t_i}` in row `i`
    /// and `-x^{a_i-a_{i+1}}` in row `i+1`.
    pub fn hb_matrix(&self, field: PrimeField) -> HilbertBurchMatrix {
        let m = self.gens.len();
        assert!(m >= 2, "Hilbert-Burch matrix needs at least two generators");
        let mut entries = vec![vec![BiPoly::zero(field); m - 1]; m];
        for i in 0..m - 1 {
            let ((a0, t0), (a1, t1)) = (self.gens[i], self.gens[i + 1]);
            entries[i][i] = BiPoly::term(field, 1, 0, t1 - t0);
            entries[i + 1][i] = BiPoly::term(field, -1, a0 - a1, 0);
        }
        let rows = self.generator_degrees();
        let cols = self.gens.windows(2).map(|w| w[0].0 + w[1].1).collect();
        HilbertBurchMatrix::new(entries, rows, cols).expect("bidiagonal matrix is well labelled")
    }

    pub fn to_polys(&self, field: PrimeField) -> Vec<BiPoly> {
        self.gens.iter().map(|&(a, t)| BiPoly::term(field, 1, a, t)).collect()
    }
}

impl TryFrom<Vec<(u32, u32)>> for MonomialIdeal2 {
    type Error = String;
    fn try_from(v: Vec<(u32, u32)>) -> Result<Self, String> {
        Self::new(v)
    }
}

impl From<MonomialIdeal2> for Vec<(u32, u32)> {
    fn from(m: MonomialIdeal2) -> Self {
        m.gens
    }
}

impl std::fmt::Display for MonomialIdeal2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|&(a, t)| match (a, t) {
                (0, 0) => "1".to_string(),
                (a, 0) => pow("x", a),
                (0, t) => pow("y", t),
                (a, t) => format!("{}{}", pow("x", a), pow("y", t)),
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn pow(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// The lex-segment ideal with Hilbert function `h`.
///
/// In degree `j` it contains the `j + 1 - h(j)` lex-largest monomials, so
/// `x^a y^t` lies in `L` exactly when `h(a + t) <= a`.
pub fn lex_ideal(h: &OSequence) -> MonomialIdeal2 {
    let d = h.order();
    let gens = (0..=d)
        .map(|i| {
            let a = d - i;
            let t = (0..).find(|&t| h.at((a + t) as i64) <= a).expect("h vanishes eventually");
            (a, t)
        })
        .collect();
    MonomialIdeal2::new(gens).expect("lex segment of an O-sequence is minimally generated")
}

/// Eliahou-Kervaire Betti table of a lex ideal.
pub fn ek_betti(lex: &MonomialIdeal2) -> BettiTable {
    lex.betti()
}

pub fn hb_matrix_lex(lex: &MonomialIdeal2, field: PrimeField) -> HilbertBurchMatrix {
    lex.hb_matrix(field)
}
