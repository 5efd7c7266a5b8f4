//! Graded finite presentations of R-modules.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groebner::{
    infer_grading, matrix_columns, minimal_subset, quotient_basis, reduce_mod_ideal, std_monomial_count, Dim, Engine,
    FreeVector, Input, InputKind,
};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{ModuleKey, Ring};

/// M = R^r / (column span of `relations`), with generator `i` in degree
/// `degrees[i]`. Entries are reduced modulo I, there are no zero columns, and
/// every column is homogeneous. Values built through the public constructors
/// are minimally presented.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    relations: PolyMatrix,
    degrees: Vec<i32>,
    label: String,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations && self.degrees == other.degrees
    }
}

impl Eq for ModulePresentation {}

impl ModulePresentation {
    /// Wrap already reduced, homogeneous data without minimalizing.
    pub(crate) fn from_columns_unchecked(cols: &[FreeVector], degrees: Vec<i32>, label: impl Into<String>) -> Self {
        let r = degrees.len();
        let cols: Vec<Vec<Polynomial>> = cols.iter().filter(|c| !c.is_zero()).map(|c| c.components(r)).collect();
        let relations = PolyMatrix::from_columns(r, cols).expect("columns fit the rank");
        ModulePresentation {
            relations,
            degrees,
            label: label.into(),
        }
    }

    /// Presentation with relation matrix `relations` and generator degrees
    /// `degrees`; entries are reduced mod I and the result minimalized.
    pub fn graded(relations: &PolyMatrix, degrees: Vec<i32>, ring: &Ring) -> Result<Self> {
        if relations.rows() != degrees.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator degrees for {} rows",
                degrees.len(),
                relations.rows()
            )));
        }
        let cols: Vec<FreeVector> = matrix_columns(relations)
            .into_iter()
            .map(|c| ring.reduce_vector(c))
            .collect();
        if let Some(j) = cols.iter().position(|c| !c.is_homogeneous(&degrees)) {
            return Err(Error::NonHomogeneousMatrix(format!(
                "column {j} is not homogeneous for the given degrees"
            )));
        }
        let p = ModulePresentation::from_columns_unchecked(&cols, degrees, "");
        Ok(minimal_presentation(&p, ring))
    }

    /// coker(A), with a grading inferred from the entries of A.
    pub fn cokernel(a: &PolyMatrix, ring: &Ring) -> Result<Self> {
        let a = a.map_entries(|p| ring.reduce(p));
        let (rows, _) = infer_grading(&a, None)
            .ok_or_else(|| Error::NonHomogeneousMatrix("no grading makes every entry homogeneous".into()))?;
        ModulePresentation::graded(&a, rows, ring)
    }

    pub fn zero() -> Self {
        ModulePresentation {
            relations: PolyMatrix::zeros(0, 0),
            degrees: Vec::new(),
            label: "0".into(),
        }
    }

    pub fn free(n: usize) -> Self {
        ModulePresentation::free_graded(vec![0; n])
    }

    pub fn free_graded(degrees: Vec<i32>) -> Self {
        let label = match degrees.len() {
            0 => "0".to_string(),
            1 => "R".to_string(),
            n => format!("R^{n}"),
        };
        ModulePresentation {
            relations: PolyMatrix::zeros(degrees.len(), 0),
            degrees,
            label,
        }
    }

    /// k = R/m.
    pub fn residue_field(ring: &Ring) -> Self {
        let n = ring.nvars();
        let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        let a = PolyMatrix::from_rows(vec![vars]).expect("one row");
        ModulePresentation::graded(&a, vec![0], ring)
            .expect("maximal ideal is homogeneous")
            .with_label("k")
    }

    /// The submodule of R^b spanned by the columns of `gens`, modulo the
    /// span of the columns of `rels`.
    pub fn subquotient(gens: &PolyMatrix, rels: &PolyMatrix, ring: &Ring) -> Result<Self> {
        let gens = gens.map_entries(|p| ring.reduce(p));
        let rels = rels.map_entries(|p| ring.reduce(p));
        if gens.rows() != rels.rows() && rels.cols() > 0 && gens.cols() > 0 {
            return Err(Error::DimensionMismatch(format!(
                "generators live in R^{} but relations in R^{}",
                gens.rows(),
                rels.rows()
            )));
        }
        let b = gens.rows().max(rels.rows());
        let pad = |m: &PolyMatrix| {
            if m.rows() == b {
                m.clone()
            } else {
                PolyMatrix::zeros(b, m.cols())
            }
        };
        let both = pad(&gens).hstack(&pad(&rels))?;
        let (ambient, _) = infer_grading(&both, None).ok_or_else(|| {
            Error::NonHomogeneousMatrix("no grading makes generators and relations homogeneous".into())
        })?;
        present_subquotient(&matrix_columns(&gens), &matrix_columns(&rels), &ambient, ring)
    }

    /// The ideal generated by `gens`, as a submodule of R.
    pub fn ideal(gens: &[Polynomial], ring: &Ring) -> Result<Self> {
        let g = PolyMatrix::from_rows(vec![gens.to_vec()])?;
        let g = if gens.is_empty() { PolyMatrix::zeros(1, 0) } else { g };
        ModulePresentation::subquotient(&g, &PolyMatrix::zeros(1, 0), ring)
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        ModulePresentation {
            relations: self.relations.direct_sum(&other.relations),
            degrees,
            label: format!("{} + {}", self.label, other.label),
        }
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: usize) -> ModulePresentation {
        let mut acc = ModulePresentation::zero();
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc.with_label(format!("{}^{n}", self.label))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Number of generators (rows); equals beta_0 for a minimal presentation.
    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        matrix_columns(&self.relations)
    }

    /// Degree of each relation column.
    pub fn column_degrees(&self) -> Vec<i32> {
        self.columns()
            .iter()
            .map(|c| c.top_degree(&self.degrees).unwrap_or(0))
            .collect()
    }

    /// Canonical text of the graded presentation, used as a cache key.
    pub(crate) fn key(&self, ring: &Ring) -> ModuleKey {
        let mut s = format!("{}x{}|", self.relations.rows(), self.relations.cols());
        for d in &self.degrees {
            let _ = write!(s, "{d},");
        }
        s.push('|');
        for (i, j, p) in self.relations.entries() {
            if !p.is_zero() {
                let _ = write!(s, "{i},{j}:{};", ring.show(p));
            }
        }
        s
    }
}

/// Presentation of span(gens) / span(rels) inside a graded free module with
/// generator degrees `ambient`. Every relation must lie in the span of the
/// generators.
pub fn present_subquotient(
    gens: &[FreeVector],
    rels: &[FreeVector],
    ambient: &[i32],
    ring: &Ring,
) -> Result<ModulePresentation> {
    let field = ring.field();
    let ideal = ring.ideal_vectors();
    let gens: Vec<FreeVector> = gens.iter().map(|g| ring.reduce_vector(g.clone())).collect();
    if let Some(j) = gens.iter().chain(rels).position(|g| !g.is_homogeneous(ambient)) {
        return Err(Error::NonHomogeneousMatrix(format!("vector {j} is not homogeneous")));
    }
    let gen_degrees: Vec<i32> = gens.iter().map(|g| g.top_degree(ambient).unwrap_or(0)).collect();

    let mut eng = Engine::new(field, ambient, true, ideal);
    let mut inputs = crate::groebner::ideal_multiples(ideal, ambient.len());
    for (j, g) in gens.iter().enumerate() {
        inputs.push(Input {
            v: g.clone(),
            lift: FreeVector::unit(j, ring.nvars()),
            kind: InputKind::Generator,
        });
    }
    eng.run(inputs);

    let mut cands = Vec::with_capacity(rels.len() + eng.syzygies.len());
    for (k, rel) in rels.iter().enumerate() {
        let (rem, lift) = eng.reduce(rel.clone(), FreeVector::zero());
        if !rem.is_zero() {
            return Err(Error::RelNotInSpan(k));
        }
        let lift = reduce_mod_ideal(lift, ideal, field).scale(field.neg(crate::field::Fp::ONE), field);
        cands.push(lift);
    }
    cands.append(&mut eng.syzygies);
    let keep = minimal_subset(&cands, &gen_degrees, ideal, field);
    let cols: Vec<FreeVector> = keep.into_iter().map(|k| cands[k].clone()).collect();
    let p = ModulePresentation::from_columns_unchecked(&cols, gen_degrees, "");
    Ok(minimal_presentation(&p, ring))
}

/// Remove generators made redundant by relations with a unit entry (pivoting
/// on the lowest (row, column) unit each time), then drop redundant
/// relations.
pub fn minimal_presentation(p: &ModulePresentation, ring: &Ring) -> ModulePresentation {
    let field = ring.field();
    let mut cols = p.columns();
    let mut degrees = p.degrees.clone();
    while let Some((j, l)) = find_unit_pivot(&cols) {
        let pivot = cols.remove(l);
        let u = pivot
            .terms()
            .iter()
            .find(|t| t.pos == j && t.mono.is_one())
            .map(|t| t.coeff)
            .expect("pivot entry");
        let uinv = field.inv(u);
        let mut map: Vec<Option<u32>> = (0..degrees.len() as u32).map(Some).collect();
        map[j as usize] = None;
        for m in map.iter_mut().skip(j as usize + 1) {
            *m = m.map(|v| v - 1);
        }
        cols = cols
            .into_iter()
            .map(|c| {
                let a = c.component(j as usize);
                let c = if a.is_zero() {
                    c
                } else {
                    let factor = a.scale(field.neg(uinv), field);
                    c.add(&pivot.mul_poly(&factor, field), field)
                };
                ring.reduce_vector(c.remap_positions(&map))
            })
            .filter(|c| !c.is_zero())
            .collect();
        degrees.remove(j as usize);
    }
    let keep = minimal_subset(&cols, &degrees, ring.ideal_vectors(), field);
    let cols: Vec<FreeVector> = keep.into_iter().map(|k| cols[k].clone()).collect();
    ModulePresentation::from_columns_unchecked(&cols, degrees, p.label.clone())
}

fn find_unit_pivot(cols: &[FreeVector]) -> Option<(u32, usize)> {
    cols.iter()
        .enumerate()
        .filter_map(|(l, c)| {
            c.terms()
                .iter()
                .filter(|t| t.mono.is_one())
                .map(|t| t.pos)
                .min()
                .map(|j| (j, l))
        })
        .min()
}

/// dim_k of a presented module, possibly infinite.
pub fn dim_k(p: &ModulePresentation, ring: &Ring) -> Dim {
    let g = quotient_basis(&p.columns(), &p.degrees, ring.ideal_vectors(), ring.field());
    std_monomial_count(&g, ring.nvars())
}
