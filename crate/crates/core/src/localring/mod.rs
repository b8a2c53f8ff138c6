//! Certification of ideals of `k[[x, y]]` by exact linear algebra on the
//! truncation `S / n^N`.
//!
//! The span of all monomial multiples of the generators, cut off at degree
//! `N`, is row reduced once with columns ordered by degree. Pivots in degree
//! `j` are leading monomials of initial forms of degree `j`, so the Hilbert
//! function and the leading ideal can be read off directly. As soon as some
//! degree `j` is fully pivoted, `n^j ⊆ I + n^{j+1}` and Nakayama gives
//! `n^j ⊆ I`, which makes every answer exact.

mod linalg;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cancel::{BettiTable, CancelError};
use crate::poly::{parse_poly, BiPoly, PolyError, PrimeField};
use linalg::{kernel, DenseBasis, MonomialIndex, SparseEchelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalRingError {
    #[error("no generators given")]
    Empty,
    #[error("truncation order {n} is too small: the Hilbert function has not vanished by degree {}", n.saturating_sub(2))]
    TruncationTooSmall { n: u32 },
    #[error("the quotient is not Artinian up to the truncation cap {cap}")]
    NotArtinian { cap: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("inconsistent Betti table: {0}")]
    Table(#[from] CancelError),
}

/// Generators of an ideal of `k[[x, y]]` with an optional fixed truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPresentation {
    pub gens: Vec<BiPoly>,
    pub truncation: Option<u32>,
}

/// JSON form: `{"gens": [...], "N": 24, "p": 32003}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub gens: Vec<String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(rename = "p", default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

impl LocalPresentation {
    pub fn new(gens: Vec<BiPoly>) -> Self {
        Self { gens, truncation: None }
    }

    pub fn with_truncation(mut self, n: u32) -> Self {
        self.truncation = Some(n);
        self
    }

    /// Parses a JSON presentation; `default_field` applies when `p` is absent.
    pub fn from_json(json: &PresentationJson, default_field: PrimeField) -> Result<Self, LocalRingError> {
        let field = match json.prime {
            Some(p) => PrimeField::new(p)?,
            None => default_field,
        };
        let gens = json
            .gens
            .iter()
            .map(|s| parse_poly(s, field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            gens,
            truncation: json.truncation,
        })
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            gens: self.gens.iter().map(|g| g.to_string()).collect(),
            truncation: self.truncation,
            prime: self.gens.first().map(|g| g.field().modulus()),
        }
    }

    fn field(&self) -> PrimeField {
        self.gens[0].field()
    }

    fn nonzero(&self) -> Vec<&BiPoly> {
        self.gens.iter().filter(|g| !g.is_zero()).collect()
    }

    /// Smallest order among the generators; `n^2` is assumed but not required.
    pub fn order(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.order()).min()
    }
}

/// Per-degree subspaces of forms: `pieces[j]` is the reduced basis of a
/// subspace of the `j + 1` forms of degree `j`, in `x`-descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    field: PrimeField,
    pieces: Vec<DenseBasis>,
}

impl GradedSubspace {
    pub fn top_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    /// Dimension of the degree-`j` piece; degrees past the stored range are full.
    pub fn dim(&self, j: u32) -> usize {
        match self.pieces.get(j as usize) {
            Some(b) => b.rank(),
            None => j as usize + 1,
        }
    }

    /// The reduced basis of degree `j` as forms.
    pub fn basis(&self, j: u32) -> Vec<BiPoly> {
        self.piece(j).rows().iter().map(|r| form(self.field, j, r)).collect()
    }

    fn piece(&self, j: u32) -> DenseBasis {
        match self.pieces.get(j as usize) {
            Some(b) => b.clone(),
            None => DenseBasis::full(self.field, j as usize + 1),
        }
    }

    /// Whether a form of degree `j` lies in the degree-`j` piece.
    pub fn contains(&self, f: &BiPoly) -> bool {
        let Some(j) = f.degree() else { return true };
        if !f.is_homogeneous() {
            return false;
        }
        self.piece(j).contains(&dense_form(f, j))
    }

    /// Minimal homogeneous generators and the graded Betti table of the ideal
    /// these pieces span, assuming it contains every form of degree `> top_degree() - 1`.
    pub fn betti(&self) -> Result<(BettiTable, Vec<BiPoly>), LocalRingError> {
        let f = self.field;
        let top = self.top_degree();
        let mut gens: Vec<(u32, Vec<u32>)> = Vec::new();
        let mut beta0 = BTreeMap::new();
        for j in 0..=top {
            let mut span = DenseBasis::new(f, j as usize + 1);
            if j > 0 {
                for r in self.piece(j - 1).rows() {
                    span.insert(shift(r, 1, 0));
                    span.insert(shift(r, 0, 1));
                }
            }
            for r in self.piece(j).rows() {
                if span.insert(r.clone()) {
                    gens.push((j, r.clone()));
                    *beta0.entry(j).or_insert(0u32) += 1;
                }
            }
        }
        let beta1 = syzygy_degrees(f, &gens, top + 1);
        let table = BettiTable::new(beta0, beta1)?;
        let polys = gens.iter().map(|(j, r)| form(f, *j, r)).collect();
        Ok((table, polys))
    }
}

/// `x^da y^db` times a degree-`j` form given in `x`-descending coordinates.
fn shift(r: &[u32], da: u32, db: u32) -> Vec<u32> {
    let j = r.len() - 1;
    let mut out = vec![0; j + 1 + (da + db) as usize];
    for (b, &c) in r.iter().enumerate() {
        out[b + db as usize] = c;
    }
    out
}

fn form(field: PrimeField, j: u32, r: &[u32]) -> BiPoly {
    BiPoly::from_terms(
        field,
        r.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(b, &c)| (field.signed(c), j - b as u32, b as u32)),
    )
}

fn dense_form(f: &BiPoly, j: u32) -> Vec<u32> {
    let mut v = vec![0; j as usize + 1];
    for ((a, b), c) in f.terms() {
        if a + b == j {
            v[b as usize] = c;
        }
    }
    v
}

/// Degrees of minimal first syzygies among homogeneous `gens`, up to degree `top`.
fn syzygy_degrees(field: PrimeField, gens: &[(u32, Vec<u32>)], top: u32) -> BTreeMap<u32, u32> {
    // domain basis in degree j: pairs (generator i, monomial of degree j - c_i)
    let domain = |j: u32| -> Vec<(usize, u32)> {
        gens.iter()
            .enumerate()
            .filter(|(_, (c, _))| *c <= j)
            .flat_map(|(i, (c, _))| (0..=j - c).map(move |b| (i, b)))
            .collect()
    };
    let mut out = BTreeMap::new();
    let mut prev_kernel: Vec<Vec<u32>> = Vec::new();
    let mut prev_domain: Vec<(usize, u32)> = Vec::new();
    for j in 0..=top {
        let dom = domain(j);
        let images: Vec<Vec<u32>> = dom
            .iter()
            .map(|&(i, b)| {
                let (c, g) = &gens[i];
                shift(g, j - c - b, b)
            })
            .collect();
        let ker = kernel(field, &images, j as usize + 1);
        let pos = |i: usize, b: u32| dom.iter().position(|&p| p == (i, b)).expect("monomial in domain");
        let mut moved = DenseBasis::new(field, dom.len());
        for v in &prev_kernel {
            // multiplying by x keeps the y-exponent, by y raises it
            for dv in [0, 1] {
                let mut w = vec![0; dom.len()];
                for (k, &c) in v.iter().enumerate() {
                    if c != 0 {
                        let (i, b) = prev_domain[k];
                        w[pos(i, b + dv)] = c;
                    }
                }
                moved.insert(w);
            }
        }
        let fresh = ker.len() - moved.rank();
        if fresh > 0 {
            out.insert(j, fresh as u32);
        }
        prev_kernel = ker;
        prev_domain = dom;
    }
    out
}

/// Result of one pass of the truncation engine.
#[derive(Clone, Debug)]
pub struct Analysis {
    field: PrimeField,
    truncation: u32,
    hf: Vec<u32>,
    pieces: GradedSubspace,
    nu: u32,
}

impl Analysis {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// `HF(j)` for `j = 0..=s`; empty for the unit ideal.
    pub fn hilbert_function(&self) -> &[u32] {
        &self.hf
    }

    pub fn pieces(&self) -> &GradedSubspace {
        &self.pieces
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn star_betti(&self) -> Result<(BettiTable, Vec<BiPoly>), LocalRingError> {
        self.pieces.betti()
    }
}

/// Default doubling cap for the truncation order.
pub const DEFAULT_TRUNCATION_CAP: u32 = 128;

/// Runs the engine, doubling `N` from `2 * order + 4` (or the given hint) up to `cap`.
pub fn analyze(pres: &LocalPresentation, cap: u32) -> Result<Analysis, LocalRingError> {
    if pres.nonzero().is_empty() {
        return Err(LocalRingError::Empty);
    }
    if let Some(n) = pres.truncation {
        return analyze_at(pres, n).ok_or(LocalRingError::TruncationTooSmall { n });
    }
    let mut n = 2 * pres.order().unwrap_or(0) + 4;
    loop {
        let n_eff = n.min(cap);
        if let Some(a) = analyze_at(pres, n_eff) {
            return Ok(a);
        }
        if n_eff >= cap {
            return Err(LocalRingError::NotArtinian { cap });
        }
        n *= 2;
    }
}

fn analyze_at(pres: &LocalPresentation, n: u32) -> Option<Analysis> {
    let field = pres.field();
    let gens = pres.nonzero();
    let idx = MonomialIndex::new(n);
    let mut ech = SparseEchelon::new(field, idx.len());

    // multiples m * f grouped by their order deg(m) + ord(f)
    let mut by_order: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n as usize];
    for (k, g) in gens.iter().enumerate() {
        let o = g.order().expect("nonzero");
        for dm in 0..n.saturating_sub(o) {
            for b in 0..=dm {
                by_order[(o + dm) as usize].push((k, b));
            }
        }
    }
    let mut full_at = None;
    for j in 0..n.saturating_sub(1) {
        for &(k, b) in &by_order[j as usize] {
            let g = gens[k];
            let dm = j - g.order().unwrap();
            ech.insert(&idx.row(&g.mul_monomial(dm - b, b)));
        }
        if idx.degree_range(j).all(|c| ech.has_pivot(c)) {
            full_at = Some(j);
            break;
        }
    }
    // only orders up to N - 2 are scanned, so s + 1 <= N - 2 holds here
    let s_plus_1 = full_at?;
    let hf: Vec<u32> = (0..s_plus_1)
        .map(|j| {
            let pivots = idx.degree_range(j).filter(|&c| ech.has_pivot(c)).count() as u32;
            j + 1 - pivots
        })
        .collect();

    // I*_j from the degree-j parts of rows pivoting in degree j, up to s + 1
    let mut pieces = Vec::new();
    for j in 0..=s_plus_1 {
        let range = idx.degree_range(j);
        let base = range.start;
        let mut basis = DenseBasis::new(field, j as usize + 1);
        for c in range.clone() {
            if let Some(row) = ech.pivot_row(c) {
                let mut v = vec![0; j as usize + 1];
                for &(k, val) in row.iter().take_while(|(k, _)| range.contains(k)) {
                    v[k - base] = val;
                }
                basis.insert(v);
            }
        }
        pieces.push(basis);
    }

    let nu = count_generators(field, &gens, s_plus_1 + 1);
    Some(Analysis {
        field,
        truncation: n,
        hf,
        pieces: GradedSubspace { field, pieces },
        nu,
    })
}

/// `dim I / nI`, computed modulo `n^top`; exact once `n^{top-1} ⊆ I`.
fn count_generators(field: PrimeField, gens: &[&BiPoly], top: u32) -> u32 {
    let idx = MonomialIndex::new(top);
    let mut ech = SparseEchelon::new(field, idx.len());
    for g in gens {
        let o = g.order().unwrap();
        for dm in 1..top.saturating_sub(o) {
            for b in 0..=dm {
                ech.insert(&idx.row(&g.mul_monomial(dm - b, b)));
            }
        }
    }
    let before = ech.rank();
    for g in gens {
        ech.insert(&idx.row(g));
    }
    (ech.rank() - before) as u32
}

pub fn hilbert_function(pres: &LocalPresentation) -> Result<Vec<u32>, LocalRingError> {
    Ok(analyze(pres, DEFAULT_TRUNCATION_CAP)?.hf)
}

pub fn leading_ideal_pieces(pres: &LocalPresentation) -> Result<GradedSubspace, LocalRingError> {
    Ok(analyze(pres, DEFAULT_TRUNCATION_CAP)?.pieces)
}

pub fn nu_local(pres: &LocalPresentation) -> Result<u32, LocalRingError> {
    Ok(analyze(pres, DEFAULT_TRUNCATION_CAP)?.nu)
}

pub fn star_betti(pres: &LocalPresentation) -> Result<BettiTable, LocalRingError> {
    Ok(analyze(pres, DEFAULT_TRUNCATION_CAP)?.star_betti()?.0)
}

/// Everything the engine certifies about one presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub prime: u32,
    #[serde(rename = "N")]
    pub truncation: u32,
    pub hf: Vec<u32>,
    pub nu: u32,
    pub nu_star: u32,
    pub beta0: BTreeMap<u32, u32>,
    pub beta1: BTreeMap<u32, u32>,
    pub star_gens: Vec<String>,
}

impl LocalReport {
    pub fn star_table(&self) -> BettiTable {
        BettiTable::new(self.beta0.clone(), self.beta1.clone()).expect("certified table")
    }
}

pub fn certify(pres: &LocalPresentation, cap: u32) -> Result<(LocalReport, Analysis), LocalRingError> {
    let a = analyze(pres, cap)?;
    let (table, gens) = a.star_betti()?;
    let report = LocalReport {
        prime: a.field.modulus(),
        truncation: a.truncation,
        hf: a.hf.clone(),
        nu: a.nu,
        nu_star: table.total0(),
        beta0: table.beta0().clone(),
        beta1: table.beta1().clone(),
        star_gens: gens.iter().map(|g| g.to_string()).collect(),
    };
    Ok((report, a))
}
