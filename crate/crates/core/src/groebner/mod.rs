//! Groebner bases of submodules of S^b, syzygies, and kernels over R = S/I.

mod engine;
mod vector;

pub use vector::{cmp_pot, FreeVector, Term};

pub(crate) use engine::{reduce_mod_ideal, Engine, Input, InputKind};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// A reduced Groebner basis in POT-over-degrevlex, sorted by descending
/// leading term, every element monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroebnerBasis {
    pub ambient_rank: usize,
    pub generators: Vec<FreeVector>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn contains(&self, v: &FreeVector, field: PrimeField) -> bool {
        normal_form(v, self, field).is_zero()
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = (u32, Monomial)> + '_ {
        self.generators.iter().map(|g| {
            let t = g.lead().expect("basis elements are nonzero");
            (t.pos, t.mono)
        })
    }
}

/// Number of k-basis elements of a quotient, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(n) => Some(n),
            Dim::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Dim::Finite(0)
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "inf"),
        }
    }
}

/// Reduce `v` fully by `basis`: highest reducible term first, earliest listed
/// divisor wins.
pub fn reduce_by(mut v: FreeVector, basis: &[FreeVector], field: PrimeField) -> FreeVector {
    let mut k = 0;
    while k < v.len() {
        let t = v.terms()[k];
        let hit = basis
            .iter()
            .find(|g| g.lead().is_some_and(|l| l.pos == t.pos && l.mono.divides(&t.mono)));
        match hit {
            Some(g) => {
                let l = g.lead().unwrap();
                let m = l.mono.quotient_of(&t.mono);
                let c = field.neg(field.mul(t.coeff, field.inv(l.coeff)));
                v.axpy_tail(k, c, &m, g, None, field);
            }
            None => k += 1,
        }
    }
    v
}

pub fn normal_form(v: &FreeVector, g: &GroebnerBasis, field: PrimeField) -> FreeVector {
    reduce_by(v.clone(), &g.generators, field)
}

/// Reduced Groebner basis of the S-submodule of S^rank spanned by `gens`.
pub fn buchberger(gens: &[FreeVector], rank: usize, field: PrimeField) -> GroebnerBasis {
    let shifts = vec![0; rank];
    let mut eng = Engine::new(field, &shifts, false, &[]);
    eng.run(
        gens.iter()
            .map(|g| Input {
                v: g.clone(),
                lift: FreeVector::zero(),
                kind: InputKind::Auxiliary,
            })
            .collect(),
    );
    GroebnerBasis {
        ambient_rank: rank,
        generators: eng.reduced_basis(),
        reduced: true,
    }
}

/// Groebner basis of an ideal of S given by polynomial generators.
pub fn ideal_basis(gens: &[Polynomial], field: PrimeField) -> GroebnerBasis {
    let vs: Vec<FreeVector> = gens.iter().map(|p| FreeVector::from_poly(0, p)).collect();
    buchberger(&vs, 1, field)
}

/// The S-module `ideal * S^rank` as input vectors, one per position and
/// basis element.
pub(crate) fn ideal_multiples(ideal: &[FreeVector], rank: usize) -> Vec<Input> {
    let mut out = Vec::with_capacity(ideal.len() * rank);
    for p in 0..rank {
        for f in ideal {
            out.push(Input {
                v: f.offset(p),
                lift: FreeVector::zero(),
                kind: InputKind::IdealMultiple,
            });
        }
    }
    out
}

/// Reduced Groebner basis of `span(cols) + I * S^rank` for homogeneous
/// `cols` graded by `shifts`; its standard monomials are a k-basis of the
/// quotient R^rank / span(cols).
pub(crate) fn quotient_basis(
    cols: &[FreeVector],
    shifts: &[i32],
    ideal: &[FreeVector],
    field: PrimeField,
) -> GroebnerBasis {
    let mut eng = Engine::new(field, shifts, false, &[]);
    let mut inputs = ideal_multiples(ideal, shifts.len());
    inputs.extend(cols.iter().map(|c| Input {
        v: c.clone(),
        lift: FreeVector::zero(),
        kind: InputKind::Auxiliary,
    }));
    eng.run(inputs);
    GroebnerBasis {
        ambient_rank: shifts.len(),
        generators: eng.reduced_basis(),
        reduced: true,
    }
}

/// Indices of a minimal subset of the homogeneous `cands` generating the same
/// submodule of R^rank (R = S/ideal), scanning in degree order and keeping
/// the first occurrence within a degree.
pub(crate) fn minimal_subset(
    cands: &[FreeVector],
    shifts: &[i32],
    ideal: &[FreeVector],
    field: PrimeField,
) -> Vec<usize> {
    let mut eng = Engine::new(field, shifts, false, &[]);
    let mut inputs = ideal_multiples(ideal, shifts.len());
    let n_aug = inputs.len();
    inputs.extend(cands.iter().map(|c| Input {
        v: c.clone(),
        lift: FreeVector::zero(),
        kind: InputKind::Generator,
    }));
    eng.run(inputs);
    (0..cands.len())
        .filter(|&k| eng.input_elem[n_aug + k].is_some())
        .collect()
}

/// Generators of the S-syzygies of `gens` (vectors in S^rank). For homogeneous
/// input the result is a minimal generating set.
pub fn syzygies(gens: &[FreeVector], rank: usize, nvars: usize, field: PrimeField) -> Vec<FreeVector> {
    let zero = vec![0; rank];
    let homogeneous = gens.iter().all(|g| g.is_homogeneous(&zero));
    let col_shifts: Vec<i32> = gens.iter().map(|g| g.top_degree(&zero).unwrap_or(0)).collect();
    kernel_graded(gens, &zero, &col_shifts, &[], &[], homogeneous, nvars, field)
}

/// Kernel of the map R^{cols} -> R^{rows} sending `e_j` to `cols[j]`, modulo
/// the vectors `extra` (which act like additional relations in the target and
/// carry no coordinates in the kernel). `ideal` is the monic Groebner basis of
/// I as position-0 vectors. With `minimize`, input must be homogeneous for
/// `row_shifts`/`col_shifts` and the result is a minimal generating set.
#[allow(clippy::too_many_arguments)]
pub(crate) fn kernel_graded(
    cols: &[FreeVector],
    row_shifts: &[i32],
    col_shifts: &[i32],
    extra: &[FreeVector],
    ideal: &[FreeVector],
    minimize: bool,
    nvars: usize,
    field: PrimeField,
) -> Vec<FreeVector> {
    if cols.is_empty() {
        return Vec::new();
    }
    let mut eng = Engine::new(field, row_shifts, true, ideal);
    let mut inputs = ideal_multiples(ideal, row_shifts.len());
    inputs.extend(extra.iter().map(|v| Input {
        v: v.clone(),
        lift: FreeVector::zero(),
        kind: InputKind::Auxiliary,
    }));
    for (j, c) in cols.iter().enumerate() {
        inputs.push(Input {
            v: c.clone(),
            lift: FreeVector::unit(j, nvars),
            kind: InputKind::Generator,
        });
    }
    eng.run(inputs);
    let mut raw = std::mem::take(&mut eng.syzygies);
    for v in &mut raw {
        v.make_monic(field);
    }
    if !minimize {
        return dedup(raw);
    }
    let keep = minimal_subset(&raw, col_shifts, ideal, field);
    keep.into_iter().map(|k| raw[k].clone()).collect()
}

fn dedup(mut v: Vec<FreeVector>) -> Vec<FreeVector> {
    let mut seen = std::collections::HashSet::new();
    v.retain(|x| !x.is_zero() && seen.insert(x.clone()));
    v
}

/// Row and column degrees making every nonzero entry of `a` homogeneous of
/// degree `col_deg[j] - row_deg[i]`, with `fixed_rows` (if given) pinned.
/// Returns `None` when no such grading exists.
pub fn infer_grading(a: &PolyMatrix, fixed_rows: Option<&[i32]>) -> Option<(Vec<i32>, Vec<i32>)> {
    let (r, c) = (a.rows(), a.cols());
    let mut row: Vec<Option<i32>> = match fixed_rows {
        Some(f) => f.iter().copied().map(Some).collect(),
        None => vec![None; r],
    };
    let mut col: Vec<Option<i32>> = vec![None; c];
    for (_, _, p) in a.entries() {
        if !p.is_homogeneous() {
            return None;
        }
    }
    // BFS over the bipartite graph of nonzero entries
    let mut queue = VecDeque::new();
    let seed = |node: usize, row: &mut [Option<i32>], col: &mut [Option<i32>], q: &mut VecDeque<usize>| {
        if node < r {
            if row[node].is_none() {
                row[node] = Some(0);
            }
        } else if col[node - r].is_none() {
            col[node - r] = Some(0);
        }
        q.push_back(node);
    };
    let order: Vec<usize> = (0..r).filter(|&i| row[i].is_some()).chain(0..r + c).collect();
    let mut visited = vec![false; r + c];
    for start in order {
        if visited[start] {
            continue;
        }
        // skip unpinned columns until a row reaches them, unless isolated
        seed(start, &mut row, &mut col, &mut queue);
        visited[start] = true;
        while let Some(node) = queue.pop_front() {
            if node < r {
                let d = row[node].unwrap();
                for j in 0..c {
                    let p = a.get(node, j);
                    if p.is_zero() {
                        continue;
                    }
                    let want = d + p.degree().unwrap() as i32;
                    match col[j] {
                        Some(v) if v != want => return None,
                        Some(_) => {}
                        None => col[j] = Some(want),
                    }
                    if !visited[r + j] {
                        visited[r + j] = true;
                        queue.push_back(r + j);
                    }
                }
            } else {
                let j = node - r;
                let d = col[j].unwrap();
                for i in 0..r {
                    let p = a.get(i, j);
                    if p.is_zero() {
                        continue;
                    }
                    let want = d - p.degree().unwrap() as i32;
                    match row[i] {
                        Some(v) if v != want => return None,
                        Some(_) => {}
                        None => row[i] = Some(want),
                    }
                    if !visited[i] {
                        visited[i] = true;
                        queue.push_back(i);
                    }
                }
            }
        }
    }
    Some((
        row.into_iter().map(|x| x.unwrap_or(0)).collect(),
        col.into_iter().map(|x| x.unwrap_or(0)).collect(),
    ))
}

/// Columns of `a` as vectors in S^{rows}.
pub fn matrix_columns(a: &PolyMatrix) -> Vec<FreeVector> {
    (0..a.cols())
        .map(|j| FreeVector::from_components(&a.column(j)))
        .collect()
}

/// Generators of ker(A: R^c -> R^r) for R = S/I, `ideal` a Groebner basis of
/// I. Homogeneous matrices give minimal generators.
pub fn kernel_over_quotient(a: &PolyMatrix, ideal: &GroebnerBasis, nvars: usize, field: PrimeField) -> Vec<FreeVector> {
    let cols = matrix_columns(a);
    let g = &ideal.generators;
    match infer_grading(a, None) {
        Some((rows, cs)) => kernel_graded(&cols, &rows, &cs, &[], g, true, nvars, field),
        None => {
            let rows = vec![0; a.rows()];
            kernel_graded(&cols, &rows, &[], &[], g, false, nvars, field)
        }
    }
}

/// Generators of the module colon `{v in R^rank : J v ⊆ span(target)}` for
/// homogeneous `target` (graded by `shifts`) and homogeneous ideal generators
/// `j`. With an empty target this is the annihilator `(0 :_{R^rank} J)`.
pub fn colon(
    target: &[FreeVector],
    shifts: &[i32],
    j: &[Polynomial],
    ideal: &GroebnerBasis,
    nvars: usize,
    field: PrimeField,
) -> Result<Vec<FreeVector>> {
    let rank = shifts.len();
    if j.iter().any(|f| !f.is_homogeneous()) {
        return Err(Error::NonHomogeneousIdeal("colon ideal must be homogeneous".into()));
    }
    let js: Vec<&Polynomial> = j.iter().filter(|f| !f.is_zero()).collect();
    if js.is_empty() {
        // everything is annihilated by the zero ideal
        return Ok((0..rank).map(|p| FreeVector::unit(p, nvars)).collect());
    }
    let mut row_shifts = Vec::with_capacity(rank * js.len());
    for f in &js {
        let d = f.degree().unwrap() as i32;
        row_shifts.extend(shifts.iter().map(|s| s + d));
    }
    let cols: Vec<FreeVector> = (0..rank)
        .map(|p| {
            let mut acc = FreeVector::zero();
            for (t, f) in js.iter().enumerate() {
                acc = acc.add(&FreeVector::from_poly(t * rank + p, f), field);
            }
            acc
        })
        .collect();
    // copies of the target in every block; block t is shifted uniformly by
    // deg f_t so homogeneous targets stay homogeneous there
    let mut extra = Vec::with_capacity(target.len() * js.len());
    for t in 0..js.len() {
        extra.extend(target.iter().map(|u| u.offset(t * rank)));
    }
    Ok(kernel_graded(
        &cols,
        &row_shifts,
        shifts,
        &extra,
        &ideal.generators,
        true,
        nvars,
        field,
    ))
}

/// Number of standard monomials (times basis vectors) of `g`, or infinite.
pub fn std_monomial_count(g: &GroebnerBasis, nvars: usize) -> Dim {
    let mut total = 0usize;
    for p in 0..g.ambient_rank as u32 {
        let leads: Vec<Monomial> = g.leading_terms().filter(|(pos, _)| *pos == p).map(|(_, m)| m).collect();
        if leads.iter().any(Monomial::is_one) {
            continue;
        }
        let mut bounds = vec![0u16; nvars];
        for (v, b) in bounds.iter_mut().enumerate() {
            match leads
                .iter()
                .filter(|m| m.support().eq([v]))
                .map(|m| m.exponent(v))
                .min()
            {
                Some(e) => *b = e,
                None => return Dim::Infinite,
            }
        }
        total += count_box(&bounds, &leads);
    }
    Dim::Finite(total)
}

/// Standard monomials of `leads` inside the box `exps[v] < bounds[v]`.
fn count_box(bounds: &[u16], leads: &[Monomial]) -> usize {
    let n = bounds.len();
    let mut exps = vec![0u16; n];
    let mut count = 0;
    loop {
        let m = Monomial::from_exponents(&exps).expect("within variable limit");
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == n {
                return count;
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

/// Standard monomials of an artinian monomial staircase, in ascending
/// degrevlex order.
pub fn standard_monomials(g: &GroebnerBasis, pos: u32, nvars: usize) -> Option<Vec<Monomial>> {
    let leads: Vec<Monomial> = g.leading_terms().filter(|(p, _)| *p == pos).map(|(_, m)| m).collect();
    if leads.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let mut bounds = vec![0u16; nvars];
    for (v, b) in bounds.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|m| m.support().eq([v]))
            .map(|m| m.exponent(v))
            .min()?;
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    'outer: loop {
        let m = Monomial::from_exponents(&exps).expect("within variable limit");
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut v = 0;
        loop {
            if v == nvars {
                break 'outer;
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
    out.sort_by(|a, b| a.cmp_degrevlex(b));
    Some(out)
}

/// Krull dimension of S/I: the largest set of variables containing the support
/// of no leading monomial of a Groebner basis of I.
pub fn krull_dim(gens: &[Polynomial], nvars: usize, field: PrimeField) -> Result<usize> {
    let g = ideal_basis(gens, field);
    let masks: Vec<u32> = g
        .leading_terms()
        .map(|(_, m)| m.support().fold(0u32, |acc, v| acc | 1 << v))
        .collect();
    (0u32..1 << nvars)
        .filter(|&u| masks.iter().all(|&s| s & !u != 0))
        .map(|u| u.count_ones() as usize)
        .max()
        .ok_or(Error::UnitIdeal)
}
