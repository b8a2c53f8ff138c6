use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::field::PrimeField;
use super::parse::parse_poly;
use super::PolyError;
use crate::cancel::{Cancellation, CancellationKind};

/// Whether a matrix presents a graded ideal or only a local one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixMode {
    /// Every nonzero entry `(i, j)` is a form of degree `v_j - u_i`.
    Homogeneous,
    /// Entries have order `>= max(v_j - u_i, 0)`; units only where `v_j < u_i`.
    Local,
}

/// An `m x (m-1)` Hilbert-Burch matrix with degree labels.
///
/// Row `i` carries the degree `u_i` of the generator it produces, column `j`
/// the degree `v_j` of the syzygy it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBurchMatrix {
    entries: Vec<Vec<BiPoly>>,
    row_degrees: Vec<u32>,
    col_degrees: Vec<u32>,
    mode: MatrixMode,
}

impl HilbertBurchMatrix {
    pub fn new(
        entries: Vec<Vec<BiPoly>>,
        row_degrees: Vec<u32>,
        col_degrees: Vec<u32>,
    ) -> Result<Self, PolyError> {
        let m = entries.len();
        if m < 2 || row_degrees.len() != m || col_degrees.len() != m - 1 {
            return Err(PolyError::Malformed(format!(
                "expected m x (m-1) entries with matching labels, got {m} rows, {} row labels, {} column labels",
                row_degrees.len(),
                col_degrees.len()
            )));
        }
        if m > 31 {
            return Err(PolyError::Malformed(format!("{m} rows exceeds the supported 31")));
        }
        if let Some(i) = entries.iter().position(|r| r.len() != m - 1) {
            return Err(PolyError::Malformed(format!("row {i} does not have {} entries", m - 1)));
        }
        let mode = classify(&entries, &row_degrees, &col_degrees)?;
        Ok(Self {
            entries,
            row_degrees,
            col_degrees,
            mode,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<BiPoly>] {
        &self.entries
    }

    pub fn row_degrees(&self) -> &[u32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[u32] {
        &self.col_degrees
    }

    pub fn mode(&self) -> MatrixMode {
        self.mode
    }

    pub fn field(&self) -> PrimeField {
        self.entries[0][0].field()
    }

    /// Positions holding an entry with a nonzero constant term.
    pub fn unit_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.coeff(0, 0).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Signed maximal minors: the `i`-th is `(-1)^i det(M without row i)` (rows counted from 0).
    pub fn signed_minors(&self) -> Vec<BiPoly> {
        let dets = maximal_minors(&self.entries);
        dets.into_iter()
            .enumerate()
            .map(|(i, d)| if i % 2 == 0 { d } else { -&d })
            .collect()
    }

    /// Places a unit `1` in the first free slot realizing `cancellation`.
    ///
    /// A slot `(i, j)` qualifies when the entry is zero, `u_i` and `v_j` match
    /// the cancellation's generator and syzygy degrees, and neither row `i`
    /// nor column `j` already holds a unit. Ties go to the smallest `(i, j)`.
    pub fn perturb(&self, cancellation: &Cancellation) -> Result<Self, PolyError> {
        let units = self.unit_positions();
        let (i, j) = (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                self.row_degrees[i] == cancellation.gen_degree()
                    && self.col_degrees[j] == cancellation.syz_degree()
                    && self.entries[i][j].is_zero()
                    && !units.iter().any(|&(r, c)| r == i || c == j)
            })
            .ok_or(PolyError::NoSlot(*cancellation))?;
        let mut next = self.clone();
        next.entries[i][j] = BiPoly::one(self.field());
        if cancellation.kind() == CancellationKind::Negative {
            next.mode = MatrixMode::Local;
        }
        Ok(next)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect())
                .collect(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            mode: Some(self.mode),
        }
    }

    pub fn from_json(json: &MatrixJson, field: PrimeField) -> Result<Self, PolyError> {
        let entries = json
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, field)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = Self::new(entries, json.row_degrees.clone(), json.col_degrees.clone())?;
        if let Some(mode) = json.mode {
            if mode == MatrixMode::Homogeneous && m.mode == MatrixMode::Local {
                return Err(PolyError::Malformed("entries are not homogeneous of the labelled degrees".into()));
            }
        }
        Ok(m)
    }
}

/// Serialized matrix: polynomial strings plus degree labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub entries: Vec<Vec<String>>,
    pub row_degrees: Vec<u32>,
    pub col_degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<MatrixMode>,
}

fn classify(entries: &[Vec<BiPoly>], rows: &[u32], cols: &[u32]) -> Result<MatrixMode, PolyError> {
    let mut homogeneous = true;
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let Some(order) = e.order() else { continue };
            let expected = cols[j] as i64 - rows[i] as i64;
            if !(e.is_homogeneous() && order as i64 == expected) {
                homogeneous = false;
            }
            if (order as i64) < expected.max(0) {
                return Err(PolyError::Malformed(format!(
                    "entry ({i}, {j}) has order {order}, labels require at least {}",
                    expected.max(0)
                )));
            }
        }
    }
    Ok(if homogeneous {
        MatrixMode::Homogeneous
    } else {
        MatrixMode::Local
    })
}

/// All maximal minors of an `m x (m-1)` matrix at once; entry `i` is the
/// determinant with row `i` deleted.
///
/// Columns are expanded left to right, memoizing on the set of rows used so
/// far. On the near-bidiagonal matrices used here this touches few subsets.
fn maximal_minors(entries: &[Vec<BiPoly>]) -> Vec<BiPoly> {
    let m = entries.len();
    let field = entries[0][0].field();
    let mut states: HashMap<u32, BiPoly> = HashMap::new();
    states.insert(0, BiPoly::one(field));
    for col in 0..m - 1 {
        let mut next: HashMap<u32, BiPoly> = HashMap::new();
        for (&mask, acc) in &states {
            for (row, r) in entries.iter().enumerate() {
                let bit = 1u32 << row;
                if mask & bit != 0 || r[col].is_zero() {
                    continue;
                }
                // inversions against rows already chosen that lie below `row`
                let later = (mask >> (row + 1)).count_ones();
                let mut term = acc * &r[col];
                if later % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | bit).or_insert_with(|| BiPoly::zero(field));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    (0..m)
        .map(|i| {
            states
                .get(&(full & !(1u32 << i)))
                .cloned()
                .unwrap_or_else(|| BiPoly::zero(field))
        })
        .collect()
}
