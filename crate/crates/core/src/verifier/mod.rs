//! One routine per dimension formula or equivalence about syzygies of the
//! residue field, Auslander transposes and n-torsionfree modules. Each
//! returns a report listing every value it computed, so a failure points at
//! the formula and index that broke.
//!
//! Every "for all i" statement is checked up to a bound. [`Formula::OffByOne`]
//! shifts one index in each routine; it exists so tests can confirm that
//! the checks are able to fail.

mod report;

pub use report::{Check, Status, TheoremReport};

use crate::error::{Error, Result};
use crate::groebner::Dim;
use crate::homalg::{ext_dim, ext_module, free_resolution, hom_module, tor_dim_any, ModulePresentation};
use crate::ring::{fixtures, Ring};
use crate::stable::{
    depth, grade, is_gorenstein, is_n_spherical, is_n_torsionfree, projective_dimension, ring_depth, ring_type,
    socle_quotient_dim, syzygy, tr_omega, transpose, Grade,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Formula {
    #[default]
    Stated,
    /// Shift one index of the checked formula by one.
    OffByOne,
}

impl Formula {
    fn shift(self) -> usize {
        match self {
            Formula::Stated => 0,
            Formula::OffByOne => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Options {
    /// Largest homological index checked by "for all i" statements.
    pub bound: usize,
    pub formula: Formula,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bound: 6,
            formula: Formula::Stated,
        }
    }
}

impl Options {
    pub fn with_bound(bound: usize) -> Self {
        Options {
            bound,
            ..Options::default()
        }
    }

    pub fn corrupted(self) -> Self {
        Options {
            formula: Formula::OffByOne,
            ..self
        }
    }
}

fn free1() -> ModulePresentation {
    ModulePresentation::free(1).with_label("R")
}

/// beta_i(M), zero for negative i.
fn beta(m: &ModulePresentation, i: i64, ring: &Ring) -> Result<usize> {
    if i < 0 {
        return Ok(0);
    }
    Ok(free_resolution(m, i as usize, ring)?.betti[i as usize])
}

/// mu_i(M), zero for negative i.
fn mu(m: &ModulePresentation, i: i64, ring: &Ring) -> Result<usize> {
    if i < 0 {
        return Ok(0);
    }
    let k = ModulePresentation::residue_field(ring);
    finite(ext_dim(&k, m, i as usize, ring)?)
}

fn finite(d: Dim) -> Result<usize> {
    d.finite().ok_or(Error::NotFiniteLength)
}

fn show<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// beta_i and dim Ext^i(-, R) for 1 <= i <= bound: invariants of the stable
/// class, since adding free summands only changes index 0.
fn stable_table(m: &ModulePresentation, bound: usize, ring: &Ring) -> Result<(Vec<usize>, Vec<Dim>)> {
    let res = free_resolution(m, bound, ring)?;
    let r = free1();
    let ext = (1..=bound).map(|i| ext_dim(m, &r, i, ring)).collect::<Result<_>>()?;
    Ok((res.betti[1..=bound].to_vec(), ext))
}

fn compare_stable(
    report: &mut TheoremReport,
    what: &str,
    a: &ModulePresentation,
    b: &ModulePresentation,
    bound: usize,
    ring: &Ring,
) -> Result<()> {
    let (ba, ea) = stable_table(a, bound, ring)?;
    let (bb, eb) = stable_table(b, bound, ring)?;
    report.check_eq(format!("{what}: betti 1..{bound}"), show(&ba), show(&bb));
    report.check_eq(format!("{what}: dim Ext^i(-,R) 1..{bound}"), show(&ea), show(&eb));
    Ok(())
}

/// Omega^n M is (n+1)-torsionfree iff Ext^i(C, R) = 0 for 1 <= i <= n+1,
/// C = Tr Omega^{n+1} Tr Omega^n M; when it is, Omega^n M and
/// Omega^{n+1} C agree stably and the grade bounds on Ext^i(M, R) hold.
pub fn verify_thm_2_3(m: &ModulePresentation, n: usize, ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("thm_2_3", ring.label());
    rep.param("M", m.label()).param("n", n).param("bound", opts.bound);
    let om = syzygy(m, n, ring)?;
    let tf = is_n_torsionfree(&om, n + 1, ring)?;
    for (i, d) in &tf.table {
        rep.note(format!("dim Ext^{i}(Tr Omega^{n} M, R)"), d);
    }
    let c = tr_omega(&tr_omega(m, n, ring)?, n + 1, ring)?;
    let top = n + 1 + opts.formula.shift();
    let ext_c: Vec<Dim> = (1..=top)
        .map(|i| ext_dim(&c, &free1(), i, ring))
        .collect::<Result<_>>()?;
    rep.note(format!("dim Ext^i(C, R), i = 1..{top}"), show(&ext_c));
    let vanish = ext_c.iter().all(|d| d.is_zero());
    rep.check_eq(
        format!(
            "Omega^{n} M is {}-torsionfree <=> Ext^i(C,R) = 0 for 1 <= i <= {top}",
            n + 1
        ),
        tf.holds,
        vanish,
    );
    if tf.holds {
        let oc = syzygy(&c, n + 1, ring)?;
        compare_stable(&mut rep, "Omega^n M vs Omega^{n+1} C", &om, &oc, opts.bound, ring)?;
        let cor = verify_cor_2_7(m, n, ring, opts)?;
        rep.checks.extend(cor.checks);
    }
    Ok(rep.finish(false))
}

/// The n-hull of k: W' = Tr Omega^{t-1}(k^r) is t-spherical with
/// Ext^t(W', R) = k^r, and C = Tr Omega^{t+1} Tr Omega^t k has
/// Ext^i(C, R) = 0 for 1 <= i <= t+1.
pub fn verify_cor_2_5(ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("cor_2_5", ring.label());
    rep.param("bound", opts.bound);
    let s = opts.formula.shift();
    let t = ring_depth(ring)?;
    let r = ring_type(ring)?;
    rep.note("depth R", t);
    rep.note("type R", r);
    let k = ModulePresentation::residue_field(ring);
    let rr = free1();
    if t > 0 {
        let w = tr_omega(&k.power(r), t - 1, ring)?;
        let pd = projective_dimension(&w, t + 1, ring)?;
        let pd_text = pd.map_or_else(|| format!("> {}", t + 1), |d| d.to_string());
        rep.check("pd W'", pd_text, t, pd == Some(t));
        for i in 1..t {
            rep.check_eq(
                format!("dim Ext^{i}(W', R)"),
                ext_dim(&w, &rr, i, ring)?,
                Dim::Finite(0),
            );
        }
        rep.check_eq(
            format!("dim Ext^{}(W', R) = r(R)", t + s),
            ext_dim(&w, &rr, t + s, ring)?,
            Dim::Finite(r),
        );
        // a t-spherical W is stably Tr Omega^{t-1} Ext^t(W, R)
        let e = ext_module(&w, &rr, t, ring)?;
        let back = tr_omega(&e, t - 1, ring)?;
        compare_stable(
            &mut rep,
            "W' vs Tr Omega^{t-1} Ext^t(W',R)",
            &w,
            &back,
            opts.bound,
            ring,
        )?;
    }
    let c = tr_omega(&tr_omega(&k, t, ring)?, t + 1, ring)?;
    for i in 1..=t + 1 {
        rep.check_eq(format!("dim Ext^{i}(C, R)"), ext_dim(&c, &rr, i, ring)?, Dim::Finite(0));
    }
    Ok(rep.finish(false))
}

/// If Omega^n M is (n+1)-torsionfree then grade Ext^i(M, R) >= i for
/// 1 <= i <= n.
pub fn verify_cor_2_7(m: &ModulePresentation, n: usize, ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("cor_2_7", ring.label());
    rep.param("M", m.label()).param("n", n);
    let tf = is_n_torsionfree(&syzygy(m, n, ring)?, n + 1, ring)?;
    if !tf.holds {
        return Ok(rep.not_applicable(format!("Omega^{n} M is not {}-torsionfree", n + 1)));
    }
    let rr = free1();
    for i in 1..=n {
        let e = ext_module(m, &rr, i, ring)?;
        let g = grade(&e, ring)?;
        let want = Grade::Finite(i + opts.formula.shift());
        rep.check(format!("grade Ext^{i}(M, R) >= {want}"), g, want, g >= want);
    }
    Ok(rep.finish(false))
}

/// Ext^j(M, N) = Tor_{n-j}(Tr Omega^{n-1} M, N) and the dual statement,
/// plus the Ext^n(M, R) form when M is n-spherical.
pub fn verify_lemma_3_1(
    m: &ModulePresentation,
    n_mod: &ModulePresentation,
    n: usize,
    ring: &Ring,
    opts: Options,
) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("lemma_3_1", ring.label());
    rep.param("M", m.label()).param("N", n_mod.label()).param("n", n);
    if n == 0 {
        return Ok(rep.not_applicable("n must be positive"));
    }
    let rr = free1();
    for i in 1..n {
        if !ext_dim(m, &rr, i, ring)?.is_zero() {
            return Ok(rep.not_applicable(format!("Ext^{i}(M, R) != 0")));
        }
    }
    let s = opts.formula.shift();
    let t = tr_omega(m, n - 1, ring)?;
    for j in 1..n {
        rep.check_eq(
            format!("dim Ext^{j}(M,N) = dim Tor_{}(Tr Omega^{} M, N)", n - j + s, n - 1),
            ext_dim(m, n_mod, j, ring)?,
            tor_dim_any(&t, n_mod, n - j + s, ring)?,
        );
        rep.check_eq(
            format!("dim Tor_{j}(M,N) = dim Ext^{}(Tr Omega^{} M, N)", n - j + s, n - 1),
            tor_dim_any(m, n_mod, j, ring)?,
            ext_dim(&t, n_mod, n - j + s, ring)?,
        );
    }
    let spherical = is_n_spherical(m, n, ring)?;
    rep.note("M is n-spherical", spherical);
    if spherical {
        let e = ext_module(m, &rr, n, ring)?;
        for j in 1..=n {
            rep.check_eq(
                format!("dim Ext^{j}(M,N) = dim Tor_{}(Ext^{n}(M,R), N)", n - j + s),
                ext_dim(m, n_mod, j, ring)?,
                tor_dim_any(&e, n_mod, n - j + s, ring)?,
            );
            rep.check_eq(
                format!("dim Tor_{j}(M,N) = dim Ext^{}(Ext^{n}(M,R), N)", n - j + s),
                tor_dim_any(m, n_mod, j, ring)?,
                ext_dim(&e, n_mod, n - j + s, ring)?,
            );
        }
    }
    Ok(rep.finish(false))
}

/// dim Ext^i(Tr Omega^{j-1} k, M) = beta_{j-i}(M) and
/// dim Tor_i(Tr Omega^{j-1} k, M) = mu_{j-i}(M) for 1 <= i <= bound.
pub fn verify_lemma_3_2(j: usize, m: &ModulePresentation, ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let t = ring_depth(ring)?;
    if t == 0 {
        return Err(Error::DepthZero);
    }
    let mut rep = TheoremReport::new("lemma_3_2", ring.label());
    rep.param("j", j).param("M", m.label()).param("bound", opts.bound);
    if j == 0 || j > t {
        return Ok(rep.not_applicable(format!("need 1 <= j <= depth R = {t}")));
    }
    let s = opts.formula.shift() as i64;
    let k = ModulePresentation::residue_field(ring);
    let tk = tr_omega(&k, j - 1, ring)?;
    for i in 1..=opts.bound {
        let idx = j as i64 - i as i64 + s;
        rep.check_eq(
            format!("dim Ext^{i}(Tr Omega^{} k, M) = beta_{idx}(M)", j - 1),
            ext_dim(&tk, m, i, ring)?,
            Dim::Finite(beta(m, idx, ring)?),
        );
        rep.check_eq(
            format!("dim Tor_{i}(Tr Omega^{} k, M) = mu_{idx}(M)", j - 1),
            tor_dim_any(&tk, m, i, ring)?,
            Dim::Finite(mu(m, idx, ring)?),
        );
    }
    Ok(rep.finish(false))
}

/// Dimensions of Ext^i(Tr Omega^t k, M) for depth M >= t = depth R, with
/// the left side from a resolution of Tr Omega^t k and the right side from
/// resolutions of M and k.
pub fn verify_thm_3_6(m: &ModulePresentation, ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("thm_3_6", ring.label());
    rep.param("M", m.label()).param("bound", opts.bound);
    let t = ring_depth(ring)?;
    if !m.is_zero() {
        let dm = depth(m, ring)?;
        if dm < t {
            return Ok(rep.not_applicable(format!("depth M = {dm} < depth R = {t}")));
        }
    }
    let r = ring_type(ring)?;
    rep.note("depth R", t);
    rep.note("type R", r);
    let s = opts.formula.shift() as i64;
    let k = ModulePresentation::residue_field(ring);
    let tk = tr_omega(&k, t, ring)?;
    let lhs = |i: usize| -> Result<usize> { finite(ext_dim(&tk, m, i, ring)?) };
    for i in 1..=t {
        let idx = (t - i + 1) as i64 + s;
        rep.check_eq(
            format!("(1) dim Ext^{i}(Tr Omega^t k, M) = beta_{idx}(M)"),
            lhs(i)?,
            beta(m, idx, ring)?,
        );
    }
    let diff = lhs(t + 1)? as i64 - lhs(t + 2)? as i64;
    let rhs = beta(m, 0, ring)? as i64 - (r * mu(m, t as i64 + s, ring)?) as i64;
    rep.check_eq(
        format!(
            "(2) dim Ext^{} - dim Ext^{} = beta_0(M) - r(R) mu_{}(M)",
            t + 1,
            t + 2,
            t as i64 + s
        ),
        diff,
        rhs,
    );
    for i in t + 3..=opts.bound.max(t + 3) {
        let idx = i as i64 - 2 + s;
        rep.check_eq(
            format!("(3) dim Ext^{i}(Tr Omega^t k, M) = r(R) mu_{idx}(M)"),
            lhs(i)?,
            r * mu(m, idx, ring)?,
        );
    }
    Ok(rep.finish(false))
}

/// At depth zero: dim Ext^1(Tr k, M) = beta_0(M) - q and
/// dim Ext^2(Tr k, M) = r(R) mu_0(M) - q, q = dim M/(0 :_M (0 :_R m)).
pub fn verify_remark_3_7(m: &ModulePresentation, ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let t = ring_depth(ring)?;
    if t != 0 {
        return Err(Error::DepthNonzero(t));
    }
    let mut rep = TheoremReport::new("remark_3_7", ring.label());
    rep.param("M", m.label());
    let s = opts.formula.shift() as i64;
    let k = ModulePresentation::residue_field(ring);
    let tk = transpose(&k, ring)?;
    let q = socle_quotient_dim(m, ring)? as i64;
    let r = ring_type(ring)? as i64;
    rep.note("dim M/(0:_M(0:_R m))", q);
    let e1 = finite(ext_dim(&tk, m, 1, ring)?)? as i64;
    let e2 = finite(ext_dim(&tk, m, 2, ring)?)? as i64;
    rep.check_eq(
        format!("dim Ext^1(Tr k, M) = beta_{s}(M) - q"),
        e1,
        beta(m, s, ring)? as i64 - q,
    );
    rep.check_eq(
        format!("dim Ext^2(Tr k, M) = r(R) mu_{s}(M) - q"),
        e2,
        r * mu(m, s, ring)? as i64 - q,
    );
    Ok(rep.finish(false))
}

/// Ext^i(Tr Omega^t k, R): zero for 1 <= i <= t+1, of dimension r^2 - 1 at
/// t+2 and r mu_{i-2}(R) beyond.
pub fn verify_cor_3_8(ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("cor_3_8", ring.label());
    rep.param("bound", opts.bound);
    let s = opts.formula.shift();
    let t = ring_depth(ring)?;
    let r = ring_type(ring)?;
    rep.note("depth R", t);
    rep.note("type R", r);
    let rr = free1();
    let k = ModulePresentation::residue_field(ring);
    let tk = tr_omega(&k, t, ring)?;
    let lhs = |i: usize| ext_dim(&tk, &rr, i, ring);
    for i in 1..=t + 1 + s {
        rep.check_eq(format!("(1) dim Ext^{i}(Tr Omega^t k, R) = 0"), lhs(i)?, Dim::Finite(0));
    }
    rep.check_eq(
        format!("(2) dim Ext^{}(Tr Omega^t k, R) = r(R)^2 - 1", t + 2),
        lhs(t + 2)?,
        Dim::Finite(r * r - 1),
    );
    for i in t + 3..=opts.bound.max(t + 3) {
        let idx = i - 2 + s;
        rep.check_eq(
            format!("(3) dim Ext^{i}(Tr Omega^t k, R) = r(R) mu_{idx}(R)"),
            lhs(i)?,
            Dim::Finite(r * mu(&rr, idx as i64, ring)?),
        );
    }
    Ok(rep.finish(false))
}

/// Type one <=> Omega^t k is (t+2)-torsionfree, and some Ext^i(Tr Omega^t k, R)
/// with i >= t+3 vanishes <=> R is Gorenstein, the existential searched in
/// t+3 ..= t+3+bound.
pub fn verify_cor_3_9(ring: &Ring, opts: Options) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("cor_3_9", ring.label());
    rep.param("bound", opts.bound);
    let t = ring_depth(ring)?;
    let r = ring_type(ring)?;
    let k = ModulePresentation::residue_field(ring);
    let level = t + 2 - opts.formula.shift();
    let tf = is_n_torsionfree(&syzygy(&k, t, ring)?, level, ring)?;
    rep.check_eq(
        format!("(1) r(R) = 1 <=> Omega^t k is {level}-torsionfree"),
        r == 1,
        tf.holds,
    );
    let tk = tr_omega(&k, t, ring)?;
    let rr = free1();
    let window: Vec<Dim> = (t + 3..=t + 3 + opts.bound)
        .map(|i| ext_dim(&tk, &rr, i, ring))
        .collect::<Result<_>>()?;
    rep.note(
        format!("dim Ext^i(Tr Omega^t k, R), i = {}..{}", t + 3, t + 3 + opts.bound),
        show(&window),
    );
    let found = window.iter().any(|d| d.is_zero());
    rep.check_eq(
        format!(
            "(2) some Ext^i = 0 with {} <= i <= {} <=> R Gorenstein",
            t + 3,
            t + 3 + opts.bound
        ),
        found,
        is_gorenstein(ring)?,
    );
    // without a zero in the window the existential is only refuted up to the bound
    Ok(rep.finish(!found))
}

/// The worked example: R = k[x,y,z]/(x^2, xy, y^2 z), W = coker (y z)^T,
/// M = ((y) + (z))/im f with f(1) = (y, z).
pub fn reproduce_example(p: u64, opts: Options) -> Result<TheoremReport> {
    if p <= 3 {
        return Err(Error::BadCharacteristic(p));
    }
    let ring = fixtures::r_ex_char(p);
    let mut rep = TheoremReport::new("example", ring.label());
    rep.param("p", p);
    let s = opts.formula.shift();
    let poly = |src: &str| ring.parse_poly(src);
    let col = crate::matrix::PolyMatrix::from_rows(vec![vec![poly("y")?], vec![poly("z")?]])?;
    let w = ModulePresentation::cokernel(&col, &ring)?.with_label("W");
    let gens = crate::matrix::PolyMatrix::from_rows(vec![vec![poly("y")?, poly("0")?], vec![poly("0")?, poly("z")?]])?;
    let m = ModulePresentation::subquotient(&gens, &col, &ring)?.with_label("M");
    let k = ModulePresentation::residue_field(&ring);

    rep.check_eq("krull dim R", ring.krull_dim(), 1);
    rep.check_eq("depth R", ring_depth(&ring)?, 1);
    rep.check_eq("type R", ring_type(&ring)?, 2 + s);
    let hom_kw = crate::homalg::dim_k(&hom_module(&k, &w, &ring)?, &ring);
    rep.check_eq("dim Hom(k, W)", hom_kw, Dim::Finite(2));
    rep.check_eq("depth M", depth(&m, &ring)?, 0);
    rep.check_eq("M is 1-torsionfree", is_n_torsionfree(&m, 1, &ring)?.holds, false);
    let om = syzygy(&m, 1, &ring)?;
    rep.check_eq(
        "Omega M is 2-torsionfree",
        is_n_torsionfree(&om, 2, &ring)?.holds,
        false,
    );
    let ry = ModulePresentation::cokernel(&crate::matrix::PolyMatrix::from_rows(vec![vec![poly("y")?]])?, &ring)?;
    let e2 = ext_module(&ry, &free1(), 2, &ring)?;
    let hom_e2 = crate::homalg::dim_k(&hom_module(&e2, &free1(), &ring)?, &ring);
    rep.note("dim Hom(Ext^2(R/(y), R), R)", hom_e2);
    rep.check_eq("grade Ext^2(R/(y), R)", grade(&e2, &ring)?, Grade::Finite(0));
    Ok(rep.finish(false))
}
