use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fp, PrimeField};

/// Exponent pair `(a, b)` standing for `x^a y^b`.
pub type Monomial = (u32, u32);

/// Sparse polynomial in `x, y` over a prime field. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly {
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl BiPoly {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: i64) -> Self {
        Self::term(field, c, 0, 0)
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn term(field: PrimeField, c: i64, a: u32, b: u32) -> Self {
        let mut p = Self::zero(field);
        p.add_term((a, b), field.reduce(c));
        p
    }

    pub fn x(field: PrimeField) -> Self {
        Self::term(field, 1, 1, 0)
    }

    pub fn y(field: PrimeField) -> Self {
        Self::term(field, 1, 0, 1)
    }

    /// Builds a polynomial from `(coefficient, a, b)` triples; repeated monomials are summed.
    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (i64, u32, u32)>) -> Self {
        let mut p = Self::zero(field);
        for (c, a, b) in terms {
            p.add_term((a, b), field.reduce(c));
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Fp {
        self.field
            .elem(self.terms.get(&(a, b)).copied().unwrap_or(0) as i64)
    }

    /// Terms as `(monomial, residue)` in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Least total degree of a term (`None` for the zero polynomial).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    /// Largest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn homogeneous_part(&self, deg: u32) -> BiPoly {
        Self {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b == deg)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// The initial form: sum of the terms of minimal total degree.
    pub fn initial_form(&self) -> BiPoly {
        match self.order() {
            Some(o) => self.homogeneous_part(o),
            None => self.clone(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.degree()
    }

    /// Drops every term of total degree `>= n`, i.e. the image in `S / n^N`.
    pub fn truncate(&self, n: u32) -> BiPoly {
        Self {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| a + b < n)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    pub fn scale(&self, c: Fp) -> BiPoly {
        debug_assert_eq!(c.field(), self.field);
        if c.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        Self {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|(&m, &v)| (m, f.mul(v, c.value())))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, da: u32, db: u32) -> BiPoly {
        Self {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| ((a + da, b + db), c))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: Fp, y: Fp) -> Fp {
        let f = self.field;
        let mut acc = 0u32;
        for (&(a, b), &c) in &self.terms {
            let t = f.mul(c, f.mul(f.pow(x.value(), a), f.pow(y.value(), b)));
            acc = f.add(acc, t);
        }
        f.elem(acc as i64)
    }

    /// Same polynomial with coefficients negated when the leading (first printed) one is negative.
    pub fn normalize_sign(&self) -> BiPoly {
        match self.display_order().first() {
            Some(&(_, c)) if self.field.signed(c) < 0 => -self,
            _ => self.clone(),
        }
    }

    /// Terms in print order: total degree ascending, then x-exponent descending.
    pub(crate) fn display_order(&self) -> Vec<(Monomial, u32)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| (a1 + b1, *a2).cmp(&(a2 + b2, *a1)));
        v
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        debug_assert_eq!(self.field, rhs.field, "mixed prime fields");
        let mut out = self.clone();
        for (&m, &c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        debug_assert_eq!(self.field, rhs.field, "mixed prime fields");
        let mut out = self.clone();
        for (&m, &c) in &rhs.terms {
            out.add_term(m, self.field.neg(c));
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        debug_assert_eq!(self.field, rhs.field, "mixed prime fields");
        let f = self.field;
        let mut out = BiPoly::zero(f);
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), f.mul(c1, c2));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        let f = self.field;
        BiPoly {
            field: f,
            terms: self.terms.iter().map(|(&m, &c)| (m, f.neg(c))).collect(),
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_order();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in terms.into_iter().enumerate() {
            let c = self.field.signed(c);
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if mag != 1 || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", a), ("y", b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
