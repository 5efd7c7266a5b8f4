//! Buchberger's algorithm for submodules of S^b with optional lift tracking.
//!
//! Work items (S-pairs and input vectors) are processed in increasing sugar
//! degree, pairs before inputs within a degree. For homogeneous input this is
//! the degree-by-degree strategy, so an input that reduces to zero is exactly
//! an input lying in the span of what came before it; the surviving inputs are
//! a minimal generating set.
//!
//! With lift tracking every element carries its expression in the input
//! generators. Each item that reduces to zero then yields the lift part as a
//! syzygy, and by Schreyer's theorem these generate the full syzygy module.
//! Pair pruning uses the Gebauer-Moeller chain criteria only; the coprime
//! criterion is unsound for syzygies of module elements.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;

use super::vector::FreeVector;

/// Role of an input vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum InputKind {
    /// `f * e_p` for `f` in a Groebner basis of the defining ideal. Pairs
    /// between two such vectors in one position are never formed.
    IdealMultiple,
    /// A vector that never counts as a generator and carries no lift.
    Auxiliary,
    /// A generator: tracked for minimality and, with lifts, a lift basis vector.
    Generator,
}

pub(crate) struct Input {
    pub v: FreeVector,
    pub lift: FreeVector,
    pub kind: InputKind,
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: FreeVector,
    pub lift: FreeVector,
    pub pos: u32,
    pub lead: Monomial,
    pub sugar: i32,
    ideal_multiple: bool,
}

struct PairRec {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

#[derive(Clone, Copy)]
enum Job {
    Pair(usize),
    Input(usize),
}

pub(crate) struct Engine<'a> {
    field: PrimeField,
    shifts: &'a [i32],
    track_lift: bool,
    /// Monic Groebner basis of the ideal as vectors in position 0; lifts are
    /// reduced modulo it component-wise.
    lift_ideal: &'a [FreeVector],
    pub elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<PairRec>,
    pending: Vec<Vec<usize>>,
    pub syzygies: Vec<FreeVector>,
    /// For each input, the element it became (if it survived reduction).
    pub input_elem: Vec<Option<usize>>,
}

impl<'a> Engine<'a> {
    pub fn new(field: PrimeField, shifts: &'a [i32], track_lift: bool, lift_ideal: &'a [FreeVector]) -> Self {
        Engine {
            field,
            shifts,
            track_lift,
            lift_ideal,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); shifts.len()],
            pairs: Vec::new(),
            pending: vec![Vec::new(); shifts.len()],
            syzygies: Vec::new(),
            input_elem: Vec::new(),
        }
    }

    /// Run to completion over `inputs`.
    pub fn run(&mut self, inputs: Vec<Input>) {
        // Ideal multiples go first, ahead of every degree: they form a
        // Groebner basis position by position, so they enter unreduced and
        // their mutual pairs can be skipped. Everything else runs by degree.
        let mut heap: BinaryHeap<Reverse<(i32, u8, usize)>> = BinaryHeap::new();
        let mut jobs: Vec<Job> = Vec::new();
        let mut sugars: Vec<i32> = Vec::new();
        let base = self.input_elem.len();
        self.input_elem.extend(std::iter::repeat_n(None, inputs.len()));
        for (k, inp) in inputs.iter().enumerate() {
            let deg = inp.v.top_degree(self.shifts).unwrap_or(0);
            let key = match inp.kind {
                InputKind::IdealMultiple => (i32::MIN, 0),
                InputKind::Auxiliary => (deg, 1),
                InputKind::Generator => (deg, 2),
            };
            heap.push(Reverse((key.0, key.1, jobs.len())));
            jobs.push(Job::Input(k));
            sugars.push(deg);
        }
        let mut inputs: Vec<Option<Input>> = inputs.into_iter().map(Some).collect();

        while let Some(Reverse((prio, _, seq))) = heap.pop() {
            let (v, lift, kind, input_idx, sugar) = match jobs[seq] {
                Job::Input(k) => {
                    let inp = inputs[k].take().expect("input processed once");
                    (inp.v, inp.lift, inp.kind, Some(k), sugars[k])
                }
                Job::Pair(r) => {
                    if !self.pairs[r].alive {
                        continue;
                    }
                    self.pairs[r].alive = false;
                    let (v, lift) = self.spair(r);
                    (v, lift, InputKind::Auxiliary, None, prio)
                }
            };
            let (v, lift) = self.reduce(v, lift);
            if v.is_zero() {
                if self.track_lift {
                    let lift = self.reduce_lift(lift);
                    if !lift.is_zero() {
                        self.syzygies.push(lift);
                    }
                }
                continue;
            }
            let s = self.add_elem(v, lift, sugar, kind == InputKind::IdealMultiple);
            if let Some(k) = input_idx {
                self.input_elem[base + k] = Some(s);
            }
            for (deg, r) in self.update_pairs(s) {
                heap.push(Reverse((deg, 0, jobs.len())));
                jobs.push(Job::Pair(r));
            }
        }
    }

    fn spair(&self, r: usize) -> (FreeVector, FreeVector) {
        let p = &self.pairs[r];
        let (gi, gj) = (&self.elems[p.i], &self.elems[p.j]);
        let mi = gi.lead.quotient_of(&p.lcm);
        let mj = gj.lead.quotient_of(&p.lcm);
        let minus = self.field.neg(Fp::ONE);
        let v = FreeVector::zero()
            .axpy(Fp::ONE, &mi, &gi.v, self.field)
            .axpy(minus, &mj, &gj.v, self.field);
        let lift = if self.track_lift {
            FreeVector::zero()
                .axpy(Fp::ONE, &mi, &gi.lift, self.field)
                .axpy(minus, &mj, &gj.lift, self.field)
        } else {
            FreeVector::zero()
        };
        (v, lift)
    }

    fn find_divisor(&self, pos: u32, mono: &Monomial) -> Option<usize> {
        self.by_pos[pos as usize]
            .iter()
            .copied()
            .find(|&e| self.elems[e].lead.divides(mono))
    }

    /// Full reduction: highest reducible term first, earliest listed divisor.
    pub fn reduce(&self, mut v: FreeVector, mut lift: FreeVector) -> (FreeVector, FreeVector) {
        let mut k = 0;
        while k < v.len() {
            let t = v.terms()[k];
            match self.find_divisor(t.pos, &t.mono) {
                Some(e) => {
                    let g = &self.elems[e];
                    let m = g.lead.quotient_of(&t.mono);
                    let c = self.field.neg(t.coeff);
                    v.axpy_tail(k, c, &m, &g.v, None, self.field);
                    if self.track_lift {
                        lift.axpy_tail(0, c, &m, &g.lift, None, self.field);
                    }
                }
                None => k += 1,
            }
        }
        (v, lift)
    }

    fn reduce_lift(&self, lift: FreeVector) -> FreeVector {
        reduce_mod_ideal(lift, self.lift_ideal, self.field)
    }

    fn add_elem(&mut self, mut v: FreeVector, lift: FreeVector, sugar: i32, ideal_multiple: bool) -> usize {
        let inv = v.make_monic(self.field);
        let lift = if self.track_lift {
            self.reduce_lift(lift.scale(inv, self.field))
        } else {
            lift
        };
        let lead = *v.lead().expect("nonzero element");
        let idx = self.elems.len();
        self.elems.push(Elem {
            v,
            lift,
            pos: lead.pos,
            lead: lead.mono,
            sugar,
            ideal_multiple,
        });
        idx
    }

    /// Gebauer-Moeller update after adding element `s`; returns new pairs
    /// with their sugar degrees.
    fn update_pairs(&mut self, s: usize) -> Vec<(i32, usize)> {
        let pos = self.elems[s].pos as usize;
        let lead_s = self.elems[s].lead;

        // B: drop pending pairs whose lcm is a proper multiple through s.
        for &r in &self.pending[pos] {
            let p = &self.pairs[r];
            if !p.alive || !lead_s.divides(&p.lcm) {
                continue;
            }
            let lis = self.elems[p.i].lead.lcm(&lead_s);
            let ljs = self.elems[p.j].lead.lcm(&lead_s);
            if lis != p.lcm && ljs != p.lcm {
                self.pairs[r].alive = false;
            }
        }
        self.pending[pos].retain(|&r| self.pairs[r].alive);

        // M and F: keep one pair per minimal lcm among the new pairs.
        let cands: Vec<(usize, Monomial)> = self.by_pos[pos]
            .iter()
            .map(|&i| (i, self.elems[i].lead.lcm(&lead_s)))
            .collect();
        let mut out = Vec::new();
        for (a, &(i, lcm)) in cands.iter().enumerate() {
            let redundant = cands
                .iter()
                .enumerate()
                .any(|(b, (_, other))| b != a && other.divides(&lcm) && (*other != lcm || b < a));
            if redundant {
                continue;
            }
            let (ei, es) = (&self.elems[i], &self.elems[s]);
            if ei.ideal_multiple && es.ideal_multiple {
                continue;
            }
            let sugar = (ei.sugar + lcm.degree() as i32 - ei.lead.degree() as i32)
                .max(es.sugar + lcm.degree() as i32 - es.lead.degree() as i32);
            let r = self.pairs.len();
            self.pairs.push(PairRec {
                i,
                j: s,
                lcm,
                alive: true,
            });
            self.pending[pos].push(r);
            out.push((sugar, r));
        }
        self.by_pos[pos].push(s);
        out
    }

    /// Drop elements whose leading term is divisible by another's (first
    /// listed wins on ties), then tail-reduce the rest against each other.
    pub fn reduced_basis(&self) -> Vec<FreeVector> {
        let n = self.elems.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&a| {
                let ea = &self.elems[a];
                !(0..n).any(|b| {
                    let eb = &self.elems[b];
                    b != a && eb.pos == ea.pos && eb.lead.divides(&ea.lead) && (eb.lead != ea.lead || b < a)
                })
            })
            .collect();
        let mut minimal = Engine::new(self.field, self.shifts, false, &[]);
        for &a in &keep {
            let e = &self.elems[a];
            minimal.by_pos[e.pos as usize].push(minimal.elems.len());
            minimal.elems.push(e.clone());
        }
        let mut out = Vec::with_capacity(keep.len());
        for k in 0..minimal.elems.len() {
            let e = &minimal.elems[k];
            let lead = e.v.terms()[0];
            let tail = FreeVector::from_sorted_terms(e.v.terms()[1..].to_vec());
            let (tail, _) = minimal.reduce(tail, FreeVector::zero());
            let mut terms = vec![lead];
            terms.extend_from_slice(tail.terms());
            out.push(FreeVector::from_sorted_terms(terms));
        }
        out.sort_by(|a, b| {
            let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
            super::vector::cmp_pot(tb.pos, &tb.mono, ta.pos, &ta.mono)
        });
        out
    }
}

/// Reduce each term of `v` modulo a monic Groebner basis of an ideal given as
/// position-0 vectors, relocating reducers to the term's position.
pub(crate) fn reduce_mod_ideal(mut v: FreeVector, ideal: &[FreeVector], field: PrimeField) -> FreeVector {
    if ideal.is_empty() {
        return v;
    }
    let mut k = 0;
    while k < v.len() {
        let t = v.terms()[k];
        match ideal.iter().find(|g| g.lead().is_some_and(|l| l.mono.divides(&t.mono))) {
            Some(g) => {
                let m = g.lead().unwrap().mono.quotient_of(&t.mono);
                v.axpy_tail(k, field.neg(t.coeff), &m, g, Some(t.pos), field);
            }
            None => k += 1,
        }
    }
    v
}
