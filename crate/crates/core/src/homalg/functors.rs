//! Ext and Tor as homology of Hom(F, N) and F ⊗ N, with N presented.

use crate::error::{Error, Result};
use crate::groebner::{kernel_graded, matrix_columns, Dim, FreeVector, Term};
use crate::ring::{Functor, Ring};

use super::presentation::{dim_k, present_subquotient, ModulePresentation};
use super::resolution::free_resolution;

/// Replace every basis vector `e_k` of a free module by the `n0` generators
/// of N: `e_k * c` becomes `c * e_{k * n0 + a}` for the a-th image.
fn tensor_images(images: &[FreeVector], n0: usize) -> Vec<FreeVector> {
    let mut out = Vec::with_capacity(images.len() * n0);
    for v in images {
        for a in 0..n0 {
            let terms: Vec<Term> = v
                .terms()
                .iter()
                .map(|t| Term {
                    pos: t.pos * n0 as u32 + a as u32,
                    ..*t
                })
                .collect();
            // positions k*n0+a keep the POT order of the k's
            out.push(FreeVector::from_sorted_terms(terms));
        }
    }
    out
}

fn twisted(free: &[i32], n: &ModulePresentation) -> Vec<i32> {
    let mut out = Vec::with_capacity(free.len() * n.num_generators());
    for s in free {
        out.extend(n.degrees().iter().map(|r| s + r));
    }
    out
}

/// Relations of N placed in each of `blocks` blocks of N^{blocks}.
fn relation_blocks(n: &ModulePresentation, blocks: usize) -> Vec<FreeVector> {
    let rels = n.columns();
    let n0 = n.num_generators();
    let mut out = Vec::with_capacity(rels.len() * blocks);
    for b in 0..blocks {
        out.extend(rels.iter().map(|r| r.offset(b * n0)));
    }
    out
}

/// Homology at the middle of `A ⊗ N -> B ⊗ N -> C ⊗ N` for free A, B, C,
/// where `incoming` lists the images of A's basis in B and `outgoing` the
/// images of B's basis in C. `mid` and `out` are the degree twists of the
/// bases of B and C.
fn homology_with_coefficients(
    n: &ModulePresentation,
    incoming: &[FreeVector],
    outgoing: &[FreeVector],
    mid: &[i32],
    out: &[i32],
    ring: &Ring,
) -> Result<ModulePresentation> {
    let n0 = n.num_generators();
    if n0 == 0 || mid.is_empty() {
        return Ok(ModulePresentation::zero());
    }
    let mid_shifts = twisted(mid, n);
    let out_shifts = twisted(out, n);
    let cycles = kernel_graded(
        &tensor_images(outgoing, n0),
        &out_shifts,
        &mid_shifts,
        &relation_blocks(n, out.len()),
        ring.ideal_vectors(),
        true,
        ring.nvars(),
        ring.field(),
    );
    let mut boundaries = tensor_images(incoming, n0);
    boundaries.retain(|v| !v.is_zero());
    boundaries.extend(relation_blocks(n, mid.len()));
    present_subquotient(&cycles, &boundaries, &mid_shifts, ring)
}

/// Ext^i_R(M, N) = H^i(Hom(F, N)) with Hom(F_j, N) = N^{b_j}.
pub fn ext_module(m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<ModulePresentation> {
    let res = free_resolution(m, i + 1, ring)?;
    let neg = |d: &[i32]| d.iter().map(|x| -x).collect::<Vec<_>>();
    // Hom(d_{i+1}): the image of the dual basis vector e_j^* is row j of d_{i+1}
    let outgoing = matrix_columns(&res.differential(i + 1).transpose());
    let incoming = if i == 0 {
        Vec::new()
    } else {
        matrix_columns(&res.differential(i).transpose())
    };
    homology_with_coefficients(
        n,
        &incoming,
        &outgoing,
        &neg(&res.degrees[i]),
        &neg(&res.degrees[i + 1]),
        ring,
    )
    .map(|e| e.with_label(format!("Ext^{i}({}, {})", m.label(), n.label())))
}

/// Tor_i^R(M, N) = H_i(F ⊗ N).
pub fn tor_module(m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<ModulePresentation> {
    let res = free_resolution(m, i + 1, ring)?;
    let (outgoing, out) = if i == 0 {
        (vec![FreeVector::zero(); res.betti[0]], Vec::new())
    } else {
        (matrix_columns(res.differential(i)), res.degrees[i - 1].clone())
    };
    let incoming = matrix_columns(res.differential(i + 1));
    homology_with_coefficients(n, &incoming, &outgoing, &res.degrees[i], &out, ring)
        .map(|t| t.with_label(format!("Tor_{i}({}, {})", m.label(), n.label())))
}

/// Hom_R(M, N) from the presentation of M alone: maps R^{b0} -> N killing
/// the relation columns.
pub fn hom_module(m: &ModulePresentation, n: &ModulePresentation, ring: &Ring) -> Result<ModulePresentation> {
    let neg = |d: &[i32]| d.iter().map(|x| -x).collect::<Vec<_>>();
    let outgoing = matrix_columns(&m.relations().transpose());
    homology_with_coefficients(n, &[], &outgoing, &neg(m.degrees()), &neg(&m.column_degrees()), ring)
}

fn memo_dim(functor: Functor, m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<Dim> {
    let key = (functor, m.key(ring), n.key(ring), i);
    if let Some(d) = ring.cached_dim(&key) {
        return Ok(d);
    }
    let module = match functor {
        Functor::Ext => ext_module(m, n, i, ring)?,
        Functor::Tor => tor_module(m, n, i, ring)?,
    };
    let d = dim_k(&module, ring);
    ring.store_dim(key, d);
    Ok(d)
}

/// dim_k Ext^i_R(M, N), possibly infinite.
pub fn ext_dim(m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<Dim> {
    memo_dim(Functor::Ext, m, n, i, ring)
}

/// dim_k Tor_i^R(M, N), possibly infinite.
pub fn tor_dim_any(m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<Dim> {
    memo_dim(Functor::Tor, m, n, i, ring)
}

/// dim_k Tor_i^R(M, N); fails when the module is not of finite length.
pub fn tor_dim(m: &ModulePresentation, n: &ModulePresentation, i: usize, ring: &Ring) -> Result<usize> {
    tor_dim_any(m, n, i, ring)?.finite().ok_or(Error::NotFiniteLength)
}
