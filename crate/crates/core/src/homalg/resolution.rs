//! Minimal graded free resolutions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{kernel_graded, matrix_columns, FreeVector};
use crate::matrix::PolyMatrix;
use crate::ring::Ring;

use super::cache;
use super::presentation::ModulePresentation;

/// F_N -> ... -> F_1 -> F_0 -> M -> 0 with F_i = R^{betti[i]}, the basis of
/// F_i in degrees `degrees[i]`, and `differentials[i - 1]` = d_i as a
/// `betti[i-1] x betti[i]` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub betti: Vec<usize>,
    pub degrees: Vec<Vec<i32>>,
    pub differentials: Vec<PolyMatrix>,
    pub minimal: bool,
    pub truncated_at: usize,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.truncated_at
    }

    /// d_i for 1 <= i <= length.
    pub fn differential(&self, i: usize) -> &PolyMatrix {
        &self.differentials[i - 1]
    }

    /// First index with betti zero, i.e. pd + 1, if seen within the
    /// truncation.
    pub fn vanishing_index(&self) -> Option<usize> {
        self.betti.iter().position(|&b| b == 0)
    }

    /// Truncated copy of length `n <= self.length()`.
    pub fn truncate(&self, n: usize) -> FreeResolution {
        FreeResolution {
            betti: self.betti[..=n].to_vec(),
            degrees: self.degrees[..=n].to_vec(),
            differentials: self.differentials[..n].to_vec(),
            minimal: self.minimal,
            truncated_at: n,
        }
    }
}

/// Minimal free resolution of `p` up to homological degree `steps`, reusing
/// (and extending) cached resolutions of the same module.
pub fn free_resolution(p: &ModulePresentation, steps: usize, ring: &Ring) -> Result<Arc<FreeResolution>> {
    let key = p.key(ring);
    let mut start = ring.cached_resolution(&key);
    if start.as_ref().is_some_and(|r| r.length() >= steps) {
        return Ok(start.unwrap());
    }
    if let Some(dir) = ring.cache_dir() {
        if let Some(res) = cache::load(dir, ring, &key, steps)? {
            let res = Arc::new(res);
            ring.store_resolution(key, res.clone());
            return Ok(res);
        }
    }
    let mut res = match start.take() {
        Some(r) => (*r).clone(),
        None => FreeResolution {
            betti: vec![p.num_generators()],
            degrees: vec![p.degrees().to_vec()],
            differentials: Vec::new(),
            minimal: true,
            truncated_at: 0,
        },
    };
    while res.truncated_at < steps {
        extend_once(&mut res, p, ring)?;
    }
    if let Some(dir) = ring.cache_dir() {
        cache::store(dir, ring, &key, &res)?;
    }
    let res = Arc::new(res);
    ring.store_resolution(key, res.clone());
    Ok(res)
}

fn extend_once(res: &mut FreeResolution, p: &ModulePresentation, ring: &Ring) -> Result<()> {
    let i = res.truncated_at;
    let (matrix, degrees) = if i == 0 {
        (p.relations().clone(), p.column_degrees())
    } else {
        let d = res.differential(i);
        let cols = matrix_columns(d);
        let syz = kernel_graded(
            &cols,
            &res.degrees[i - 1],
            &res.degrees[i],
            &[],
            ring.ideal_vectors(),
            true,
            ring.nvars(),
            ring.field(),
        );
        let degrees: Vec<i32> = syz
            .iter()
            .map(|s| s.top_degree(&res.degrees[i]).expect("syzygies are nonzero"))
            .collect();
        let b = res.betti[i];
        let comps: Vec<_> = syz.iter().map(|s| s.components(b)).collect();
        (PolyMatrix::from_columns(b, comps)?, degrees)
    };
    if !matrix.is_minimal() {
        return Err(Error::Internal(format!("differential d_{} has a unit entry", i + 1)));
    }
    if i >= 1 {
        check_complex(res.differential(i), &matrix, ring, i)?;
    }
    res.betti.push(matrix.cols());
    res.degrees.push(degrees);
    res.differentials.push(matrix);
    res.truncated_at += 1;
    Ok(())
}

/// d_i * d_{i+1} must vanish modulo I.
fn check_complex(d: &PolyMatrix, next: &PolyMatrix, ring: &Ring, i: usize) -> Result<()> {
    let field = ring.field();
    let images = matrix_columns(d);
    for col in matrix_columns(next) {
        let mut acc = FreeVector::zero();
        for t in col.terms() {
            acc.axpy_tail(0, t.coeff, &t.mono, &images[t.pos as usize], None, field);
        }
        if !ring.reduce_vector(acc).is_zero() {
            return Err(Error::Internal(format!("d_{i} * d_{} is not zero", i + 1)));
        }
    }
    Ok(())
}
