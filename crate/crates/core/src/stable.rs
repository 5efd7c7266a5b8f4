//! Syzygies, transposes and duals of modules, and the numerical invariants
//! built from them: depth, type, grade, Betti and Bass numbers,
//! n-torsionfreeness and n-sphericality.

use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{colon, quotient_basis, std_monomial_count, Dim};
use crate::homalg::{ext_dim, free_resolution, hom_module, ModulePresentation};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Grade of a module: a nonnegative integer, or infinite for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(n) => write!(f, "{n}"),
            Grade::Infinite => write!(f, "inf"),
        }
    }
}

/// Omega^n M, the image of d_n in a minimal resolution (Omega^0 M = M).
pub fn syzygy(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<ModulePresentation> {
    if n == 0 {
        return Ok(m.clone());
    }
    let res = free_resolution(m, n + 1, ring)?;
    let cols = crate::groebner::matrix_columns(res.differential(n + 1));
    Ok(
        ModulePresentation::from_columns_unchecked(&cols, res.degrees[n].clone(), "")
            .with_label(format!("Omega^{n}({})", m.label())),
    )
}

/// Auslander transpose: coker of the dual of the minimal presentation map.
pub fn transpose(m: &ModulePresentation, ring: &Ring) -> Result<ModulePresentation> {
    let dual_map = m.relations().transpose();
    let degrees: Vec<i32> = m.column_degrees().iter().map(|d| -d).collect();
    Ok(ModulePresentation::graded(&dual_map, degrees, ring)?.with_label(format!("Tr({})", m.label())))
}

/// M* = Hom_R(M, R).
pub fn dual(m: &ModulePresentation, ring: &Ring) -> Result<ModulePresentation> {
    Ok(hom_module(m, &ModulePresentation::free(1), ring)?.with_label(format!("({})*", m.label())))
}

/// Tr Omega^n M.
pub fn tr_omega(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<ModulePresentation> {
    transpose(&syzygy(m, n, ring)?, ring)
}

/// Smallest i with Ext^i(k, M) != 0.
pub fn depth(m: &ModulePresentation, ring: &Ring) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let k = ModulePresentation::residue_field(ring);
    for i in 0..=ring.nvars() {
        if !ext_dim(&k, m, i, ring)?.is_zero() {
            return Ok(i);
        }
    }
    Err(Error::Internal(format!(
        "Ext^i(k, {}) vanishes for all i <= {}",
        m.label(),
        ring.nvars()
    )))
}

pub fn ring_depth(ring: &Ring) -> Result<usize> {
    depth(&ModulePresentation::free(1), ring)
}

/// r(R) = dim_k Ext^t(k, R), t = depth R.
pub fn ring_type(ring: &Ring) -> Result<usize> {
    let t = ring_depth(ring)?;
    let k = ModulePresentation::residue_field(ring);
    ext_dim(&k, &ModulePresentation::free(1), t, ring)?
        .finite()
        .ok_or(Error::NotFiniteLength)
}

/// Smallest i with Ext^i(M, R) != 0.
pub fn grade(m: &ModulePresentation, ring: &Ring) -> Result<Grade> {
    if m.is_zero() {
        return Ok(Grade::Infinite);
    }
    let r = ModulePresentation::free(1);
    for i in 0..=ring.nvars() {
        if !ext_dim(m, &r, i, ring)?.is_zero() {
            return Ok(Grade::Finite(i));
        }
    }
    Err(Error::Internal(format!(
        "Ext^i({}, R) vanishes for all i <= {}",
        m.label(),
        ring.nvars()
    )))
}

/// dim_k Ext^i(M, R) for i in `range`.
pub fn ext_table(
    m: &ModulePresentation,
    n: &ModulePresentation,
    range: std::ops::RangeInclusive<usize>,
    ring: &Ring,
) -> Result<Vec<(usize, Dim)>> {
    range.map(|i| Ok((i, ext_dim(m, n, i, ring)?))).collect()
}

/// Outcome of an n-torsionfree test together with the Ext table behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionfreeWitness {
    pub holds: bool,
    /// (i, dim_k Ext^i(Tr M, R)) for 1 <= i <= n.
    pub table: Vec<(usize, Dim)>,
}

/// M is n-torsionfree iff Ext^i(Tr M, R) = 0 for 1 <= i <= n.
pub fn is_n_torsionfree(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<TorsionfreeWitness> {
    let tr = transpose(m, ring)?;
    let table = ext_table(&tr, &ModulePresentation::free(1), 1..=n, ring)?;
    Ok(TorsionfreeWitness {
        holds: table.iter().all(|(_, d)| d.is_zero()),
        table,
    })
}

/// Ext^i(M, R) = 0 for 1 <= i <= n-1 and pd M <= n.
pub fn is_n_spherical(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<bool> {
    let res = free_resolution(m, n + 1, ring)?;
    if res.betti[n + 1] != 0 {
        return Ok(false);
    }
    let r = ModulePresentation::free(1);
    for i in 1..n {
        if !ext_dim(m, &r, i, ring)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projective dimension if it is at most `bound`.
pub fn projective_dimension(m: &ModulePresentation, bound: usize, ring: &Ring) -> Result<Option<usize>> {
    if m.is_zero() {
        return Ok(Some(0));
    }
    let res = free_resolution(m, bound + 1, ring)?;
    Ok(res.vanishing_index().map(|i| i - 1))
}

/// Cohen-Macaulay of type one.
pub fn is_gorenstein(ring: &Ring) -> Result<bool> {
    Ok(ring_depth(ring)? == ring.krull_dim() && ring_type(ring)? == 1)
}

/// (0 :_R m) as polynomial generators.
pub fn socle_of_ring(ring: &Ring) -> Result<Vec<Polynomial>> {
    let n = ring.nvars();
    let vars: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let soc = colon(&[], &[0], &vars, ring.ideal_basis(), n, ring.field())?;
    Ok(soc.iter().map(|v| v.component(0)).collect())
}

/// dim_k M / (0 :_M (0 :_R m)).
pub fn socle_quotient_dim(m: &ModulePresentation, ring: &Ring) -> Result<usize> {
    let j0 = socle_of_ring(ring)?;
    if m.is_zero() || j0.is_empty() {
        // (0 :_M 0) = M
        return Ok(0);
    }
    let u = colon(
        &m.columns(),
        m.degrees(),
        &j0,
        ring.ideal_basis(),
        ring.nvars(),
        ring.field(),
    )?;
    let g = quotient_basis(&u, m.degrees(), ring.ideal_vectors(), ring.field());
    std_monomial_count(&g, ring.nvars())
        .finite()
        .ok_or(Error::NotFiniteLength)
}

/// beta_0 .. beta_n.
pub fn betti_numbers(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<Vec<usize>> {
    Ok(free_resolution(m, n, ring)?.betti[..=n].to_vec())
}

/// mu_0 .. mu_n, mu_i = dim_k Ext^i(k, M).
pub fn bass_numbers(m: &ModulePresentation, n: usize, ring: &Ring) -> Result<Vec<usize>> {
    let k = ModulePresentation::residue_field(ring);
    (0..=n)
        .map(|i| ext_dim(&k, m, i, ring)?.finite().ok_or(Error::NotFiniteLength))
        .collect()
}

/// Numerical invariants of a module and its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    /// depth of the module (None for the zero module)
    pub depth: Option<usize>,
    pub ring_depth: usize,
    pub ring_type: usize,
    pub krull_dim: usize,
    pub betti: Vec<usize>,
    pub bass: Vec<usize>,
    /// (i, dim_k Ext^i(M, R))
    pub ext_table: Vec<(usize, Dim)>,
    pub grade: Grade,
}

pub fn invariants(m: &ModulePresentation, bound: usize, ring: &Ring) -> Result<InvariantReport> {
    Ok(InvariantReport {
        depth: if m.is_zero() { None } else { Some(depth(m, ring)?) },
        ring_depth: ring_depth(ring)?,
        ring_type: ring_type(ring)?,
        krull_dim: ring.krull_dim(),
        betti: betti_numbers(m, bound, ring)?,
        bass: bass_numbers(m, bound, ring)?,
        ext_table: ext_table(m, &ModulePresentation::free(1), 0..=bound, ring)?,
        grade: grade(m, ring)?,
    })
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match self.depth {
            Some(d) => writeln!(f, "depth        {d}")?,
            None => writeln!(f, "depth        inf")?,
        }
        writeln!(f, "ring depth   {}", self.ring_depth)?;
        writeln!(f, "ring type    {}", self.ring_type)?;
        writeln!(f, "krull dim    {}", self.krull_dim)?;
        writeln!(f, "grade        {}", self.grade)?;
        writeln!(f, "betti        {}", join(&self.betti))?;
        writeln!(f, "bass         {}", join(&self.bass))?;
        let ext: Vec<String> = self.ext_table.iter().map(|(_, d)| d.to_string()).collect();
        writeln!(f, "ext(-,R)     {}", ext.join(" "))
    }
}
