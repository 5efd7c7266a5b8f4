//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;

/// A polynomial as a list of `(monomial, coefficient)` pairs sorted strictly
/// descending in degrevlex. No zero coefficients; zero is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Fp)>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Multiply the first operand by the constant term of the second.
    Scale,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Fp) -> Self {
        Polynomial::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Fp::ONE)
    }

    pub fn monomial(m: Monomial, c: Fp) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial::monomial(Monomial::var(nvars, i), Fp::ONE)
    }

    /// Build from arbitrary terms: sorts, merges duplicates and drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, Fp)>, field: PrimeField) -> Self {
        terms.sort_by(|a, b| b.0.cmp_degrevlex(&a.0));
        let mut out: Vec<(Monomial, Fp)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { terms: out }
    }

    /// Wrap terms already in canonical order.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Fp)>) -> Self {
        debug_assert!(is_canonical(&terms));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Fp)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Fp)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Fp)> {
        self.terms.first()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Fp {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => Fp::ZERO,
        }
    }

    /// Nonzero constant (degree-zero, unit in S).
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Degree of the leading term (total degree for homogeneous input).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn add(&self, other: &Polynomial, field: PrimeField) -> Polynomial {
        self.axpy(Fp::ONE, &Monomial::one(self.nvars_or(other)), other, field)
    }

    pub fn sub(&self, other: &Polynomial, field: PrimeField) -> Polynomial {
        self.axpy(field.neg(Fp::ONE), &Monomial::one(self.nvars_or(other)), other, field)
    }

    pub fn neg(&self, field: PrimeField) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|&(m, c)| (m, field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: Fp, field: PrimeField) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: Fp, field: PrimeField) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(*a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, field: PrimeField) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = acc.axpy(*c, m, big, field);
        }
        acc
    }

    /// `self + c * m * other`, by a single sorted merge.
    pub fn axpy(&self, c: Fp, m: &Monomial, other: &Polynomial, field: PrimeField) -> Polynomial {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let mut next = other.terms.first().map(|(t, a)| (t.mul(m), field.mul(*a, c)));
        while let Some((om, oc)) = next {
            if i >= self.terms.len() {
                break;
            }
            let (sm, sc) = self.terms[i];
            match sm.cmp_degrevlex(&om) {
                Ordering::Greater => {
                    out.push((sm, sc));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((om, oc));
                    j += 1;
                    next = other.terms.get(j).map(|(t, a)| (t.mul(m), field.mul(*a, c)));
                }
                Ordering::Equal => {
                    let s = field.add(sc, oc);
                    if !s.is_zero() {
                        out.push((sm, s));
                    }
                    i += 1;
                    j += 1;
                    next = other.terms.get(j).map(|(t, a)| (t.mul(m), field.mul(*a, c)));
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while let Some(t) = next {
            out.push(t);
            j += 1;
            next = other.terms.get(j).map(|(t, a)| (t.mul(m), field.mul(*a, c)));
        }
        Polynomial { terms: out }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String], field: PrimeField) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            names,
            field,
        }
    }

    fn nvars_or(&self, other: &Polynomial) -> usize {
        self.terms
            .first()
            .or(other.terms.first())
            .map(|(m, _)| m.nvars())
            .unwrap_or(0)
    }

    pub fn check_invariants(&self) -> bool {
        is_canonical(&self.terms)
    }
}

fn is_canonical(terms: &[(Monomial, Fp)]) -> bool {
    terms.iter().all(|t| !t.1.is_zero())
        && terms
            .windows(2)
            .all(|w| w[0].0.cmp_degrevlex(&w[1].0) == Ordering::Greater)
}

/// Exact arithmetic dispatch. `Scale` multiplies `f` by the constant term of `g`.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp, field: PrimeField) -> Polynomial {
    match op {
        PolyOp::Add => f.add(g, field),
        PolyOp::Sub => f.sub(g, field),
        PolyOp::Mul => f.mul(g, field),
        PolyOp::Scale => f.scale(g.constant_term(), field),
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
    field: PrimeField,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let s = self.field.signed(*c);
            let mag = s.unsigned_abs();
            if s < 0 {
                write!(f, "{}", if idx == 0 { "-" } else { " - " })?;
            } else if idx > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.display_with(self.names))?;
            } else {
                write!(f, "{mag}*{}", m.display_with(self.names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }

    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn add_cancels() {
        let f = field();
        let r = poly_arith(&x().add(&y(), f), &x().neg(f), PolyOp::Add, f);
        assert_eq!(r, y());
    }

    #[test]
    fn times_zero() {
        let f = field();
        assert!(poly_arith(&x().add(&y(), f), &Polynomial::zero(), PolyOp::Mul, f).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let f = field();
        let r = poly_arith(&x().add(&y(), f), &x().sub(&y(), f), PolyOp::Mul, f);
        let expected = x().mul(&x(), f).sub(&y().mul(&y(), f), f);
        assert_eq!(r, expected);
        assert!(r.check_invariants());
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn scale_uses_constant_term() {
        let f = field();
        let three = Polynomial::constant(2, f.element(3));
        let r = poly_arith(&x(), &three, PolyOp::Scale, f);
        assert_eq!(r, x().scale(f.element(3), f));
    }

    #[test]
    fn display_signed_coefficients() {
        let f = field();
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().mul(&x(), f).sub(&y().scale(f.element(2), f), f);
        assert_eq!(p.display_with(&names, f).to_string(), "x^2 - 2*y");
        assert_eq!(p.neg(f).display_with(&names, f).to_string(), "-x^2 + 2*y");
    }
}
