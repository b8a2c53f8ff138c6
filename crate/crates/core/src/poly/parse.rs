//! Text format for polynomials: a signed sum of terms `c*x^a*y^b`.
//!
//! `*` between factors is optional, `^1` and a unit coefficient may be
//! omitted, and factors may appear in any order (`2x^2y^4`, `y^4*x^2*2`).
//! Whitespace is ignored. The printer in `bipoly` emits the canonical form,
//! which this parser reads back exactly.

use super::bipoly::BiPoly;
use super::field::PrimeField;
use super::PolyError;

pub fn parse_poly(text: &str, field: PrimeField) -> Result<BiPoly, PolyError> {
    Parser::new(text, field).parse()
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    field: PrimeField,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: PrimeField) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        Self {
            chars,
            idx: 0,
            field,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len())
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn parse(mut self) -> Result<BiPoly, PolyError> {
        let mut out = BiPoly::zero(self.field);
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.idx += 1;
                    false
                }
                Some('-') => {
                    self.idx += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (c, a, b) = self.term()?;
            let c = if negative { self.field.neg(c) } else { c };
            out.add_term((a, b), c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(u32, u32, u32), PolyError> {
        let mut coeff = 1u32;
        let (mut a, mut b) = (0u32, 0u32);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = self.field.mul(coeff, self.field.reduce(n as i64));
                }
                Some(v @ ('x' | 'y')) => {
                    self.idx += 1;
                    let e = if self.peek() == Some('^') {
                        self.idx += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_digit() => {}
                            _ => return Err(self.err("expected exponent after '^'")),
                        }
                        u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?
                    } else {
                        1
                    };
                    if v == 'x' {
                        a += e;
                    } else {
                        b += e;
                    }
                }
                _ => break,
            }
            factors += 1;
            if self.peek() == Some('*') {
                self.idx += 1;
                match self.peek() {
                    Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' => {}
                    _ => return Err(self.err("expected factor after '*'")),
                }
            }
        }
        if factors == 0 {
            return Err(self.err("expected a term"));
        }
        Ok((coeff, a, b))
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        let start = self.pos();
        let mut n: u64 = 0;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            n = n
                .checked_mul(10)
                .and_then(|n| n.checked_add(d as u64))
                .ok_or(PolyError::Parse {
                    pos: start,
                    msg: "number too large".into(),
                })?;
            self.idx += 1;
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn accepts_loose_term_syntax() {
        let p = parse_poly("xy^6 - x^3y^2 + xy^4", f()).unwrap();
        let q = BiPoly::from_terms(f(), [(1, 1, 6), (-1, 3, 2), (1, 1, 4)]);
        assert_eq!(p, q);
        let r = parse_poly("-2x^2y^4 + y^6 + x^4 - x^2y^2", f()).unwrap();
        assert_eq!(r.coeff(2, 4), f().elem(-2));
        assert_eq!(parse_poly("2*x^2*y^4", f()).unwrap(), parse_poly("y^4*x^2*2", f()).unwrap());
        assert_eq!(parse_poly("−x", f()).unwrap(), -&BiPoly::x(f()));
    }

    #[test]
    fn reports_positions() {
        match parse_poly("x^ + y", f()) {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("", f()).is_err());
        assert!(parse_poly("x y", f()).is_ok()); // whitespace ignored: x*y
        assert!(parse_poly("x + z", f()).is_err());
        assert!(parse_poly("x*", f()).is_err());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec((-50i64..50, 0u32..12, 0u32..12), 0..10)) {
            let p = BiPoly::from_terms(f(), terms);
            let text = p.to_string();
            prop_assert_eq!(parse_poly(&text, f()).unwrap(), p);
        }
    }
}
