//! Brute-force homological algebra over artinian rings.
//!
//! R and its modules are explicit finite-dimensional vector spaces with one
//! multiplication operator per variable. Free resolutions, Ext and Tor are
//! computed by dense kernels and ranks. The only piece shared with the
//! Groebner pipeline is the extraction of a standard-monomial basis and the
//! normal forms used to write down the multiplication operators.

mod linalg;

pub use linalg::{DenseMatrix, Span};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{quotient_basis, reduce_by, standard_monomials, FreeVector, Term};
use crate::homalg::ModulePresentation;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A module given by its dimension and the matrices of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearModule {
    p: u32,
    dim: usize,
    action: Vec<DenseMatrix>,
}

impl LinearModule {
    pub fn new(p: u32, dim: usize, action: Vec<DenseMatrix>) -> Self {
        debug_assert!(action.iter().all(|a| a.rows() == dim && a.cols() == dim));
        LinearModule { p, dim, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[DenseMatrix] {
        &self.action
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// The operator of a monomial, as a product of variable operators.
    pub fn monomial_operator(&self, m: &Monomial) -> DenseMatrix {
        let mut out = DenseMatrix::identity(self.dim);
        for (v, a) in self.action.iter().enumerate() {
            for _ in 0..m.exponent(v) {
                out = a.mul(&out, self.p);
            }
        }
        out
    }

    pub fn evaluate(&self, f: &Polynomial) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.dim, self.dim);
        for (m, c) in f.terms() {
            out.add_scaled(c.value(), &self.monomial_operator(m), self.p);
        }
        out
    }

    /// The operators commute and every generator of `ideal` acts as zero.
    pub fn check_invariants(&self, ideal: &[Polynomial]) -> bool {
        let commute = self.action.iter().enumerate().all(|(i, a)| {
            self.action[i + 1..]
                .iter()
                .all(|b| a.mul(b, self.p) == b.mul(a, self.p))
        });
        commute && ideal.iter().all(|f| self.evaluate(f).is_zero())
    }

    /// dim_k (0 :_M m).
    pub fn socle_dim(&self) -> usize {
        let stacked = stack(&self.action, self.dim);
        stacked.kernel(self.p).len()
    }

    /// The direct sum with another module over the same ring.
    pub fn direct_sum(&self, other: &LinearModule) -> LinearModule {
        let dim = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = DenseMatrix::zeros(dim, dim);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        LinearModule::new(self.p, dim, action)
    }
}

fn stack(ops: &[DenseMatrix], dim: usize) -> DenseMatrix {
    ops.iter().fold(DenseMatrix::zeros(0, dim), |acc, a| acc.vstack(a))
}

/// R = S/I as a vector space on its standard monomials.
#[derive(Clone, Debug)]
pub struct ArtinianAlgebra {
    p: u32,
    nvars: usize,
    basis: Vec<Monomial>,
    mult_ops: Vec<DenseMatrix>,
    ideal: Vec<Polynomial>,
}

impl ArtinianAlgebra {
    pub fn new(ring: &Ring) -> Result<Self> {
        if !ring.is_artinian() {
            return Err(Error::NotArtinian);
        }
        let n = ring.nvars();
        let basis = standard_monomials(ring.ideal_basis(), 0, n).ok_or(Error::NotArtinian)?;
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let d = basis.len();
        let mult_ops = (0..n)
            .map(|v| {
                let xv = Monomial::var(n, v);
                let mut a = DenseMatrix::zeros(d, d);
                for (j, m) in basis.iter().enumerate() {
                    let prod = ring.reduce(&Polynomial::monomial(m.mul(&xv), crate::field::Fp::ONE));
                    for (mono, c) in prod.terms() {
                        a.set(index[mono], j, c.value());
                    }
                }
                a
            })
            .collect();
        Ok(ArtinianAlgebra {
            p: ring.field().characteristic(),
            nvars: n,
            basis,
            mult_ops,
            ideal: ring.descriptor().ideal.clone(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mult_ops(&self) -> &[DenseMatrix] {
        &self.mult_ops
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn regular_module(&self) -> LinearModule {
        LinearModule::new(self.p, self.dim(), self.mult_ops.clone())
    }

    pub fn residue_field(&self) -> LinearModule {
        LinearModule::new(self.p, 1, vec![DenseMatrix::zeros(1, 1); self.nvars])
    }

    /// Operators of every basis monomial on `m`, in basis order.
    fn basis_operators(&self, m: &LinearModule) -> Vec<DenseMatrix> {
        let mut ops: Vec<DenseMatrix> = Vec::with_capacity(self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            let op = match b.support().next() {
                None => DenseMatrix::identity(m.dim),
                Some(v) => {
                    // b / x_v is standard and comes earlier in ascending order
                    let prev = Monomial::var(self.nvars, v).quotient_of(b);
                    let j = self.basis[..i].iter().position(|c| *c == prev).expect("order ideal");
                    m.action[v].mul(&ops[j], self.p)
                }
            };
            ops.push(op);
        }
        ops
    }

    /// (0 :_R m) as coordinate vectors.
    pub fn socle(&self) -> Vec<Vec<u32>> {
        stack(&self.mult_ops, self.dim()).kernel(self.p)
    }

    /// dim_k of the socle of R, the type of an artinian ring.
    pub fn type_(&self) -> usize {
        self.socle().len()
    }

    /// dim_k M / (0 :_M (0 :_R m)).
    pub fn socle_quotient_dim(&self, m: &LinearModule) -> usize {
        let ops = self.basis_operators(m);
        let soc_ops: Vec<DenseMatrix> = self
            .socle()
            .iter()
            .map(|s| {
                let mut a = DenseMatrix::zeros(m.dim, m.dim);
                for (c, op) in s.iter().zip(&ops) {
                    a.add_scaled(*c, op, self.p);
                }
                a
            })
            .collect();
        if soc_ops.is_empty() {
            return 0;
        }
        m.dim - stack(&soc_ops, m.dim).kernel(self.p).len()
    }

    /// `x_v * w` for `w` in R^b.
    fn free_act(&self, v: usize, w: &[u32]) -> Vec<u32> {
        let d = self.dim();
        w.chunks(d)
            .flat_map(|blk| self.mult_ops[v].apply(blk, self.p))
            .collect()
    }
}

/// Turn a presentation into explicit matrices: the basis is the standard
/// monomials of the relation module, the actions come from normal forms.
pub fn linearize(ring: &Ring, m: &ModulePresentation) -> Result<LinearModule> {
    if !ring.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let n = ring.nvars();
    let field = ring.field();
    let g = quotient_basis(&m.columns(), m.degrees(), ring.ideal_vectors(), field);
    let mut basis = Vec::new();
    for pos in 0..m.num_generators() as u32 {
        let monos = standard_monomials(&g, pos, n).ok_or(Error::NotArtinian)?;
        basis.extend(monos.into_iter().map(|mono| (pos, mono)));
    }
    let index: HashMap<(u32, Monomial), usize> = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let d = basis.len();
    let action = (0..n)
        .map(|v| {
            let xv = Monomial::var(n, v);
            let mut a = DenseMatrix::zeros(d, d);
            for (j, (pos, mono)) in basis.iter().enumerate() {
                let t = FreeVector::from_sorted_terms(vec![Term {
                    pos: *pos,
                    mono: mono.mul(&xv),
                    coeff: crate::field::Fp::ONE,
                }]);
                for t in reduce_by(t, &g.generators, field).terms() {
                    a.set(index[&(t.pos, t.mono)], j, t.coeff.value());
                }
            }
            a
        })
        .collect();
    Ok(LinearModule::new(field.characteristic(), d, action))
}

/// A minimal free resolution F_L -> ... -> F_0 -> M over an artinian algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResolution {
    pub betti: Vec<usize>,
    /// `differentials[i - 1][j]` is the image of the j-th basis vector of F_i
    /// in F_{i-1}, in coordinates (block, standard monomial).
    pub differentials: Vec<Vec<Vec<u32>>>,
}

/// Minimal generators of the submodule spanned by `sub` inside a module
/// whose variable action is `act`: a complement of m*sub inside sub.
fn cover(sub: &[Vec<u32>], len: usize, nvars: usize, p: u32, act: &dyn Fn(usize, &[u32]) -> Vec<u32>) -> Vec<Vec<u32>> {
    let mut span = Span::new(len, p);
    for w in sub {
        for v in 0..nvars {
            span.insert(act(v, w));
        }
    }
    sub.iter().filter(|w| span.insert((*w).clone())).cloned().collect()
}

pub fn resolve(alg: &ArtinianAlgebra, m: &LinearModule, length: usize) -> OracleResolution {
    let (p, d, n) = (alg.p, alg.dim(), alg.nvars);
    let module_act = |v: usize, w: &[u32]| m.action[v].apply(w, p);
    let free_act = |v: usize, w: &[u32]| alg.free_act(v, w);

    // current submodule K of the current ambient V (M first, then F_{i-1})
    let mut sub: Vec<Vec<u32>> = (0..m.dim)
        .map(|i| {
            let mut e = vec![0; m.dim];
            e[i] = 1;
            e
        })
        .collect();
    let mut ambient = m.dim;
    let mut betti = Vec::with_capacity(length + 1);
    let mut differentials = Vec::with_capacity(length);
    for i in 0..=length {
        let act: &dyn Fn(usize, &[u32]) -> Vec<u32> = if i == 0 { &module_act } else { &free_act };
        let gens = cover(&sub, ambient, n, p, act);
        betti.push(gens.len());
        if i < length {
            // columns (j, beta) -> beta * gens[j], built up one variable at a time
            let mut cols: Vec<Vec<u32>> = Vec::with_capacity(gens.len() * d);
            for g in &gens {
                let base = cols.len();
                for (k, b) in alg.basis.iter().enumerate() {
                    let col = match b.support().next() {
                        None => g.clone(),
                        Some(v) => {
                            let prev = Monomial::var(n, v).quotient_of(b);
                            let j = alg.basis[..k].iter().position(|c| *c == prev).expect("order ideal");
                            act(v, &cols[base + j])
                        }
                    };
                    cols.push(col);
                }
            }
            sub = DenseMatrix::from_columns(ambient, &cols).kernel(p);
            ambient = gens.len() * d;
        }
        if i > 0 {
            differentials.push(gens);
        }
    }
    OracleResolution { betti, differentials }
}

/// Matrix of Hom(d_i, N) (when `hom`) or d_i ⊗ N on N^{b_i} and N^{b_{i-1}}.
fn coefficient_matrix(
    images: &[Vec<u32>],
    prev_rank: usize,
    d: usize,
    n_ops: &[DenseMatrix],
    dn: usize,
    hom: bool,
    p: u32,
) -> DenseMatrix {
    let (rows, cols) = if hom {
        (images.len() * dn, prev_rank * dn)
    } else {
        (prev_rank * dn, images.len() * dn)
    };
    let mut out = DenseMatrix::zeros(rows, cols);
    for (jp, g) in images.iter().enumerate() {
        for j in 0..prev_rank {
            for (beta, op) in n_ops.iter().enumerate() {
                let c = g[j * d + beta];
                if c == 0 {
                    continue;
                }
                let (r0, c0) = if hom { (jp * dn, j * dn) } else { (j * dn, jp * dn) };
                for a in 0..dn {
                    for b in 0..dn {
                        let x = op.get(a, b);
                        if x != 0 {
                            let cur = out.get(r0 + a, c0 + b);
                            out.set(r0 + a, c0 + b, ((cur as u64 + c as u64 * x as u64) % p as u64) as u32);
                        }
                    }
                }
            }
        }
    }
    out
}

/// dim_k Ext^i(M, N) for i = 0..=max.
pub fn oracle_ext_dims(alg: &ArtinianAlgebra, m: &LinearModule, n: &LinearModule, max: usize) -> Vec<usize> {
    let res = resolve(alg, m, max + 1);
    let n_ops = alg.basis_operators(n);
    let ranks: Vec<usize> = (0..=max)
        .map(|i| {
            coefficient_matrix(
                &res.differentials[i],
                res.betti[i],
                alg.dim(),
                &n_ops,
                n.dim,
                true,
                alg.p,
            )
            .rank(alg.p)
        })
        .collect();
    (0..=max)
        .map(|i| n.dim * res.betti[i] - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
        .collect()
}

/// dim_k Tor_i(M, N) for i = 0..=max.
pub fn oracle_tor_dims(alg: &ArtinianAlgebra, m: &LinearModule, n: &LinearModule, max: usize) -> Vec<usize> {
    let res = resolve(alg, m, max + 1);
    let n_ops = alg.basis_operators(n);
    // ranks[i] = rank of d_{i+1} ⊗ N
    let ranks: Vec<usize> = (0..=max)
        .map(|i| {
            coefficient_matrix(
                &res.differentials[i],
                res.betti[i],
                alg.dim(),
                &n_ops,
                n.dim,
                false,
                alg.p,
            )
            .rank(alg.p)
        })
        .collect();
    (0..=max)
        .map(|i| n.dim * res.betti[i] - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 })
        .collect()
}

pub fn oracle_ext_dim(alg: &ArtinianAlgebra, m: &LinearModule, n: &LinearModule, i: usize) -> usize {
    oracle_ext_dims(alg, m, n, i)[i]
}

pub fn oracle_tor_dim(alg: &ArtinianAlgebra, m: &LinearModule, n: &LinearModule, i: usize) -> usize {
    oracle_tor_dims(alg, m, n, i)[i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::fixtures;

    #[test]
    fn linearize_small_modules() {
        let r2 = fixtures::r_2();
        let k = linearize(&r2, &ModulePresentation::residue_field(&r2)).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.action().iter().all(DenseMatrix::is_zero));
        let r = linearize(&r2, &ModulePresentation::free(1)).unwrap();
        assert_eq!(r.dim(), 3);
        assert!(r.action()[0].mul(&r.action()[0], r.characteristic()).is_zero());
        assert!(r.check_invariants(&r2.descriptor().ideal));
        assert!(matches!(
            linearize(&fixtures::r_ex(), &ModulePresentation::free(1)),
            Err(Error::NotArtinian)
        ));
    }

    #[test]
    fn algebra_operators_commute() {
        for ring in fixtures::artinian() {
            let alg = ArtinianAlgebra::new(&ring).unwrap();
            assert!(alg.regular_module().check_invariants(alg.ideal()));
            assert_eq!(alg.basis()[0], Monomial::one(ring.nvars()));
        }
    }

    #[test]
    fn ext_and_tor_examples() {
        let rg = fixtures::r_g();
        let alg = ArtinianAlgebra::new(&rg).unwrap();
        let (k, r) = (alg.residue_field(), alg.regular_module());
        assert_eq!(oracle_ext_dims(&alg, &k, &r, 3), vec![1, 0, 0, 0]);
        assert_eq!(oracle_ext_dims(&alg, &r, &k, 3), vec![1, 0, 0, 0]);

        let r2 = fixtures::r_2();
        let alg = ArtinianAlgebra::new(&r2).unwrap();
        let (k, r) = (alg.residue_field(), alg.regular_module());
        assert_eq!(oracle_ext_dim(&alg, &k, &k, 1), 2);
        assert_eq!(oracle_tor_dims(&alg, &k, &k, 4), vec![1, 2, 4, 8, 16]);
        assert_eq!(oracle_tor_dim(&alg, &r, &k, 1), 0);
        assert_eq!(resolve(&alg, &k, 4).betti, vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn socle_and_type() {
        let r2 = ArtinianAlgebra::new(&fixtures::r_2()).unwrap();
        assert_eq!(r2.type_(), 2);
        assert_eq!(r2.socle_quotient_dim(&r2.regular_module()), 1);
        assert_eq!(r2.socle_quotient_dim(&r2.residue_field()), 0);
        let rg = ArtinianAlgebra::new(&fixtures::r_g()).unwrap();
        assert_eq!(rg.type_(), 1);
        assert_eq!(rg.regular_module().socle_dim(), 1);
    }
}
