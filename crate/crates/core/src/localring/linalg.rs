//! Row reduction over `F_p`, in two flavours: a sparse semi-echelon form for
//! the truncated Macaulay matrix and a dense reduced echelon form for the
//! small per-degree spaces.

use crate::poly::{BiPoly, PrimeField};

/// Monomials of total degree `< n`, ordered by degree and then by descending
/// `x`-exponent, so `x^a y^b` sits at `(a+b)(a+b+1)/2 + b`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MonomialIndex {
    n: u32,
}

impl MonomialIndex {
    pub(crate) fn new(n: u32) -> Self {
        Self { n }
    }

    pub(crate) fn len(&self) -> usize {
        offset(self.n)
    }

    pub(crate) fn col(&self, a: u32, b: u32) -> usize {
        offset(a + b) + b as usize
    }

    pub(crate) fn degree_range(&self, j: u32) -> std::ops::Range<usize> {
        offset(j)..offset(j + 1)
    }

    /// Sparse row of `f` with all terms of degree `>= n` dropped.
    pub(crate) fn row(&self, f: &BiPoly) -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = f
            .terms()
            .filter(|&((a, b), _)| a + b < self.n)
            .map(|((a, b), c)| (self.col(a, b), c))
            .collect();
        v.sort_unstable();
        v
    }
}

pub(crate) fn offset(j: u32) -> usize {
    let j = j as usize;
    j * (j + 1) / 2
}

/// Semi-echelon form: at most one stored row per pivot column, each row
/// monic at its pivot with zeros to its left.
pub(crate) struct SparseEchelon {
    field: PrimeField,
    width: usize,
    pivots: Vec<Option<Vec<(usize, u32)>>>,
    acc: Vec<u32>,
    rank: usize,
}

impl SparseEchelon {
    pub(crate) fn new(field: PrimeField, width: usize) -> Self {
        Self {
            field,
            width,
            pivots: vec![None; width],
            acc: vec![0; width],
            rank: 0,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `row` and stores it if independent; returns the new pivot column.
    pub(crate) fn insert(&mut self, row: &[(usize, u32)]) -> Option<usize> {
        let Some(&(start, _)) = row.first() else { return None };
        let f = self.field;
        for &(c, v) in row {
            self.acc[c] = v;
        }
        let mut found = None;
        for c in start..self.width {
            let lead = self.acc[c];
            if lead == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(p) => {
                    let neg = f.neg(lead);
                    for &(k, v) in p {
                        self.acc[k] = f.add(self.acc[k], f.mul(neg, v));
                    }
                }
                None => {
                    found = Some(c);
                    break;
                }
            }
        }
        let Some(pc) = found else {
            return None;
        };
        let inv = f.inv(self.acc[pc]);
        let mut stored = Vec::new();
        for k in pc..self.width {
            let v = std::mem::take(&mut self.acc[k]);
            if v != 0 {
                stored.push((k, f.mul(v, inv)));
            }
        }
        self.pivots[pc] = Some(stored);
        self.rank += 1;
        Some(pc)
    }

    pub(crate) fn pivot_row(&self, col: usize) -> Option<&[(usize, u32)]> {
        self.pivots[col].as_deref()
    }

    pub(crate) fn has_pivot(&self, col: usize) -> bool {
        self.pivots[col].is_some()
    }
}

/// Reduced row echelon basis of a subspace of `F_p^width`, rows sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct DenseBasis {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl DenseBasis {
    pub(crate) fn new(field: PrimeField, width: usize) -> Self {
        Self {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn full(field: PrimeField, width: usize) -> Self {
        let mut b = Self::new(field, width);
        for i in 0..width {
            let mut v = vec![0; width];
            v[i] = 1;
            b.insert(v);
        }
        b
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Normal form of `v` modulo the span.
    pub(crate) fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = f.neg(c);
                for k in p..self.width {
                    if r[k] != 0 {
                        v[k] = f.add(v[k], f.mul(neg, r[k]));
                    }
                }
            }
        }
    }

    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span, keeping the basis reduced; `false` if it was already there.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let f = self.field;
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in self.rows.iter_mut() {
            let c = r[p];
            if c != 0 {
                let neg = f.neg(c);
                for k in p..self.width {
                    if v[k] != 0 {
                        r[k] = f.add(r[k], f.mul(neg, v[k]));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }
}

/// Basis of `{ a : sum_i a_i images[i] = 0 }`, by reducing `[image | e_i]`.
pub(crate) fn kernel(field: PrimeField, images: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
    let dim = images.len();
    let mut b = DenseBasis::new(field, width + dim);
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        v.resize(width + dim, 0);
        v[width + i] = 1;
        b.insert(v);
    }
    b.rows
        .iter()
        .zip(&b.pivots)
        .filter(|(_, &p)| p >= width)
        .map(|(r, _)| r[width..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_index_round_trip() {
        let idx = MonomialIndex::new(30);
        let mut seen = 0;
        for j in 0..30 {
            for b in 0..=j {
                let c = idx.col(j - b, b);
                assert_eq!(c, seen);
                assert!(idx.degree_range(j).contains(&c));
                seen += 1;
            }
        }
        assert_eq!(seen, idx.len());
        // x-exponent descending inside a degree
        assert!(idx.col(3, 0) < idx.col(2, 1));
    }

    #[test]
    fn sparse_echelon_rank() {
        let f = PrimeField::default();
        let mut e = SparseEchelon::new(f, 4);
        assert_eq!(e.insert(&[(0, 1), (1, 2)]), Some(0));
        assert_eq!(e.insert(&[(0, 2), (1, 4)]), None);
        assert_eq!(e.insert(&[(0, 1), (2, 1)]), Some(1));
        assert_eq!(e.insert(&[(1, 5), (2, 7)]), Some(2));
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn kernel_dimension() {
        let f = PrimeField::default();
        let images = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1], vec![0, 0, 0]];
        let k = kernel(f, &images, 3);
        assert_eq!(k.len(), 2);
        for a in &k {
            for col in 0..3 {
                let s = (0..4).fold(0, |acc, i| f.add(acc, f.mul(a[i], images[i][col])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn dense_basis_is_canonical() {
        let f = PrimeField::default();
        let mut a = DenseBasis::new(f, 3);
        a.insert(vec![1, 2, 3]);
        a.insert(vec![0, 1, 1]);
        let mut b = DenseBasis::new(f, 3);
        b.insert(vec![1, 3, 4]);
        b.insert(vec![2, 4, 6]);
        b.insert(vec![0, 5, 5]);
        assert_eq!(a, b);
        assert!(a.contains(&[1, 1, 2]));
        assert!(!a.contains(&[0, 0, 1]));
    }
}
