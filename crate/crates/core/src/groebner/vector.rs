//! Elements of free modules S^b, kept as POT-sorted term lists.

use std::cmp::Ordering;

use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// One term `c * m * e_pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Fp,
}

/// Position-over-term comparison: a smaller position index is larger, ties
/// are broken by degrevlex on the monomial.
#[inline]
pub fn cmp_pot(a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => a.cmp_degrevlex(b),
        ord => ord,
    }
}

/// An element of a free module, stored as terms sorted strictly descending in
/// the POT order. Zero is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<Term>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    /// `p * e_pos`.
    pub fn from_poly(pos: usize, p: &Polynomial) -> Self {
        FreeVector {
            terms: p
                .terms()
                .iter()
                .map(|&(mono, coeff)| Term {
                    pos: pos as u32,
                    mono,
                    coeff,
                })
                .collect(),
        }
    }

    pub fn unit(pos: usize, nvars: usize) -> Self {
        FreeVector {
            terms: vec![Term {
                pos: pos as u32,
                mono: Monomial::one(nvars),
                coeff: Fp::ONE,
            }],
        }
    }

    pub fn from_components(components: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in components.iter().enumerate() {
            terms.extend(p.terms().iter().map(|&(mono, coeff)| Term {
                pos: pos as u32,
                mono,
                coeff,
            }));
        }
        FreeVector { terms }
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        let v = FreeVector { terms };
        debug_assert!(v.check_invariants());
        v
    }

    /// Split into `rank` polynomial components.
    pub fn components(&self, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Fp)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos as usize].push((t.mono, t.coeff));
        }
        buckets.into_iter().map(Polynomial::from_sorted_terms).collect()
    }

    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial::from_sorted_terms(
            self.terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mono, t.coeff))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
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

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Largest position index carrying a term, plus one.
    pub fn support_bound(&self) -> usize {
        self.terms.iter().map(|t| t.pos as usize + 1).max().unwrap_or(0)
    }

    /// Largest `deg(m) + shift[pos]` over all terms.
    pub fn top_degree(&self, shifts: &[i32]) -> Option<i32> {
        self.terms
            .iter()
            .map(|t| t.mono.degree() as i32 + shifts[t.pos as usize])
            .max()
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        let mut it = self
            .terms
            .iter()
            .map(|t| t.mono.degree() as i32 + shifts[t.pos as usize]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: Fp, field: PrimeField) -> FreeVector {
        if c.is_zero() {
            return FreeVector::zero();
        }
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn make_monic(&mut self, field: PrimeField) -> Fp {
        let Some(lead) = self.terms.first() else {
            return Fp::ONE;
        };
        let inv = field.inv(lead.coeff);
        for t in &mut self.terms {
            t.coeff = field.mul(t.coeff, inv);
        }
        inv
    }

    /// Multiply every component by the polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial, field: PrimeField) -> FreeVector {
        let mut acc = FreeVector::zero();
        for (m, c) in p.terms() {
            acc = acc.axpy(*c, m, self, field);
        }
        acc
    }

    pub fn add(&self, other: &FreeVector, field: PrimeField) -> FreeVector {
        match other.lead() {
            None => self.clone(),
            Some(t) => self.axpy(Fp::ONE, &Monomial::one(t.mono.nvars()), other, field),
        }
    }

    pub fn sub(&self, other: &FreeVector, field: PrimeField) -> FreeVector {
        match other.lead() {
            None => self.clone(),
            Some(t) => self.axpy(field.neg(Fp::ONE), &Monomial::one(t.mono.nvars()), other, field),
        }
    }

    /// `self + c * m * other`.
    pub fn axpy(&self, c: Fp, m: &Monomial, other: &FreeVector, field: PrimeField) -> FreeVector {
        let mut out = self.clone();
        out.axpy_tail(0, c, m, other, None, field);
        out
    }

    /// In place `self[start..] += c * m * other`, optionally relocating every
    /// term of `other` to position `relocate`. Terms before `start` must all
    /// be larger than the leading term of `c * m * other`.
    pub(crate) fn axpy_tail(
        &mut self,
        start: usize,
        c: Fp,
        m: &Monomial,
        other: &FreeVector,
        relocate: Option<u32>,
        field: PrimeField,
    ) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let scaled = |t: &Term| Term {
            pos: relocate.unwrap_or(t.pos),
            mono: t.mono.mul(m),
            coeff: field.mul(t.coeff, c),
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        out.extend_from_slice(&self.terms[..start]);
        let mut i = start;
        let mut oi = other.terms.iter();
        let mut next = oi.next().map(scaled);
        while let Some(o) = next {
            let Some(s) = self.terms.get(i) else { break };
            match cmp_pot(s.pos, &s.mono, o.pos, &o.mono) {
                Ordering::Greater => {
                    out.push(*s);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o);
                    next = oi.next().map(scaled);
                }
                Ordering::Equal => {
                    let sum = field.add(s.coeff, o.coeff);
                    if !sum.is_zero() {
                        out.push(Term { coeff: sum, ..*s });
                    }
                    i += 1;
                    next = oi.next().map(scaled);
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        if let Some(o) = next {
            out.push(o);
            out.extend(oi.map(scaled));
        }
        self.terms = out;
    }

    /// Rename positions through `map` (entries `None` drop the term). The
    /// map must be order preserving on the surviving positions.
    pub fn remap_positions(&self, map: &[Option<u32>]) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter_map(|t| map[t.pos as usize].map(|pos| Term { pos, ..*t }))
                .collect(),
        }
    }

    /// Keep only positions in `[lo, hi)`, shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter(|t| (lo..hi).contains(&(t.pos as usize)))
                .map(|t| Term {
                    pos: t.pos - lo as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Shift every position up by `offset`.
    pub fn offset(&self, offset: usize) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos + offset as u32,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn check_invariants(&self) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_zero())
            && self
                .terms
                .windows(2)
                .all(|w| cmp_pot(w[0].pos, &w[0].mono, w[1].pos, &w[1].mono) == Ordering::Greater)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let comps = vec![x.add(&y, f), Polynomial::zero(), y.mul(&y, f)];
        let v = FreeVector::from_components(&comps);
        assert!(v.check_invariants());
        assert_eq!(v.components(3), comps);
        assert_eq!(v.lead().unwrap().pos, 0);
    }

    #[test]
    fn pot_prefers_lower_position() {
        let x = Monomial::var(2, 0);
        let one = Monomial::one(2);
        assert_eq!(cmp_pot(0, &one, 1, &x), Ordering::Greater);
        assert_eq!(cmp_pot(1, &x, 1, &one), Ordering::Greater);
    }

    #[test]
    fn axpy_cancels_leading_term() {
        let f = PrimeField::new(101).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let v = FreeVector::from_components(&[x.clone(), y.clone()]);
        let w = v.axpy(f.element(-1), &Monomial::one(2), &v, f);
        assert!(w.is_zero());
        let u = FreeVector::from_poly(0, &x);
        let d = v.sub(&u, f);
        assert_eq!(d.components(2), vec![Polynomial::zero(), y]);
    }
}
