//! Quotient rings R = S/I and the per-ring computation caches.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use crate::groebner::{ideal_basis, krull_dim, reduce_by, FreeVector, GroebnerBasis};
use crate::homalg::FreeResolution;
use crate::monomial::MAX_VARS;
use crate::poly::Polynomial;
use crate::text::parse_polynomial;

/// Characteristic, variable names and homogeneous ideal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub field: PrimeField,
    pub vars: Vec<String>,
    pub ideal: Vec<Polynomial>,
}

impl RingDescriptor {
    pub fn new(field: PrimeField, vars: Vec<String>, ideal: Vec<Polynomial>) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                max: MAX_VARS,
                got: vars.len(),
            });
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Parse(format!("variable `{v}` declared twice")));
            }
        }
        for g in &ideal {
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneousIdeal(g.display_with(&vars, field).to_string()));
            }
        }
        let ideal = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(RingDescriptor { field, vars, ideal })
    }

    /// Parse ideal generators written in the polynomial text grammar.
    pub fn parse(p: u64, vars: &[&str], ideal: &[&str]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let ideal = ideal
            .iter()
            .map(|s| parse_polynomial(s, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        RingDescriptor::new(field, vars, ideal)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// Session-language form: `ring char P vars x,y ideal f, g`.
impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ring char {} vars {}",
            self.field.characteristic(),
            self.vars.join(",")
        )?;
        if !self.ideal.is_empty() {
            let gens: Vec<String> = self
                .ideal
                .iter()
                .map(|g| g.display_with(&self.vars, self.field).to_string())
                .collect();
            write!(f, " ideal {}", gens.join(", "))?;
        }
        Ok(())
    }
}

/// Content key of a graded module presentation (relations text + degrees).
pub(crate) type ModuleKey = String;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Functor {
    Ext,
    Tor,
}

#[derive(Default)]
struct Caches {
    resolutions: HashMap<ModuleKey, Arc<FreeResolution>>,
    dims: HashMap<(Functor, ModuleKey, ModuleKey, usize), crate::groebner::Dim>,
}

/// A ring R = S/I ready for computation: the Groebner basis of I plus shared
/// memo tables for resolutions and Ext/Tor dimensions.
pub struct Ring {
    desc: RingDescriptor,
    label: String,
    gb: GroebnerBasis,
    krull: usize,
    caches: Mutex<Caches>,
    cache_dir: Option<PathBuf>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("label", &self.label)
            .field("desc", &self.desc.to_string())
            .finish()
    }
}

impl Ring {
    pub fn new(desc: RingDescriptor, label: impl Into<String>) -> Result<Self> {
        let gb = ideal_basis(&desc.ideal, desc.field);
        if gb.leading_terms().any(|(_, m)| m.is_one()) {
            return Err(Error::UnitIdeal);
        }
        let krull = krull_dim(&desc.ideal, desc.nvars(), desc.field)?;
        Ok(Ring {
            desc,
            label: label.into(),
            gb,
            krull,
            caches: Mutex::new(Caches::default()),
            cache_dir: None,
        })
    }

    /// Persist resolutions under `dir` (created on demand).
    pub fn with_cache_dir(mut self, dir: Option<PathBuf>) -> Self {
        self.cache_dir = dir;
        self
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> PrimeField {
        self.desc.field
    }

    pub fn nvars(&self) -> usize {
        self.desc.nvars()
    }

    pub fn vars(&self) -> &[String] {
        &self.desc.vars
    }

    pub fn ideal_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Krull dimension of R.
    pub fn krull_dim(&self) -> usize {
        self.krull
    }

    pub fn is_artinian(&self) -> bool {
        self.krull == 0
    }

    pub(crate) fn ideal_vectors(&self) -> &[FreeVector] {
        &self.gb.generators
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    /// Normal form of `p` modulo I.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if p.is_zero() || self.gb.generators.is_empty() {
            return p.clone();
        }
        reduce_by(FreeVector::from_poly(0, p), &self.gb.generators, self.field()).component(0)
    }

    /// Componentwise normal form of a module element modulo I.
    pub fn reduce_vector(&self, v: FreeVector) -> FreeVector {
        crate::groebner::reduce_mod_ideal(v, &self.gb.generators, self.field())
    }

    pub fn parse_poly(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.desc.vars, self.field()).map(|p| self.reduce(&p))
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display_with(&self.desc.vars, self.field()).to_string()
    }

    pub(crate) fn cached_resolution(&self, key: &ModuleKey) -> Option<Arc<FreeResolution>> {
        self.caches.lock().unwrap().resolutions.get(key).cloned()
    }

    pub(crate) fn store_resolution(&self, key: ModuleKey, res: Arc<FreeResolution>) {
        let mut c = self.caches.lock().unwrap();
        let longer = c.resolutions.get(&key).is_some_and(|old| old.length() >= res.length());
        if !longer {
            c.resolutions.insert(key, res);
        }
    }

    pub(crate) fn cached_dim(&self, key: &(Functor, ModuleKey, ModuleKey, usize)) -> Option<crate::groebner::Dim> {
        self.caches.lock().unwrap().dims.get(key).copied()
    }

    pub(crate) fn store_dim(&self, key: (Functor, ModuleKey, ModuleKey, usize), d: crate::groebner::Dim) {
        self.caches.lock().unwrap().dims.insert(key, d);
    }

    /// Drop all in-memory memo tables.
    pub fn clear_caches(&self) {
        *self.caches.lock().unwrap() = Caches::default();
    }
}

/// The fixture rings shipped with the crate, by label.
pub mod fixtures {
    use super::*;

    fn ring(label: &str, p: u64, vars: &[&str], ideal: &[&str]) -> Ring {
        let desc = RingDescriptor::parse(p, vars, ideal).expect("fixture ring parses");
        Ring::new(desc, label).expect("fixture ring is proper")
    }

    /// k[x,y,z]/(x^2, xy, y^2 z): one-dimensional Cohen-Macaulay of type 2.
    pub fn r_ex_char(p: u64) -> Ring {
        ring("R_ex", p, &["x", "y", "z"], &["x^2", "x*y", "y^2*z"])
    }

    pub fn r_ex() -> Ring {
        r_ex_char(DEFAULT_CHARACTERISTIC as u64)
    }

    /// k[x,y]/(x^2, xy, y^2): artinian with square-zero maximal ideal.
    pub fn r_2() -> Ring {
        ring(
            "R_2",
            DEFAULT_CHARACTERISTIC as u64,
            &["x", "y"],
            &["x^2", "x*y", "y^2"],
        )
    }

    /// k[x,y]/(x^2, y^2): artinian Gorenstein.
    pub fn r_g() -> Ring {
        ring("R_g", DEFAULT_CHARACTERISTIC as u64, &["x", "y"], &["x^2", "y^2"])
    }

    pub fn s2() -> Ring {
        ring("S2", DEFAULT_CHARACTERISTIC as u64, &["x", "y"], &[])
    }

    pub fn s3() -> Ring {
        ring("S3", DEFAULT_CHARACTERISTIC as u64, &["x", "y", "z"], &[])
    }

    /// k[x,y,z]/(x^3, y^3, z^3).
    pub fn cube() -> Ring {
        ring(
            "R_cube",
            DEFAULT_CHARACTERISTIC as u64,
            &["x", "y", "z"],
            &["x^3", "y^3", "z^3"],
        )
    }

    /// k[x,y]/(x^3, xy).
    pub fn x3xy() -> Ring {
        ring("R_x3xy", DEFAULT_CHARACTERISTIC as u64, &["x", "y"], &["x^3", "x*y"])
    }

    pub fn all() -> Vec<Ring> {
        vec![r_ex(), r_2(), r_g(), s2(), s3(), cube(), x3xy()]
    }

    pub fn artinian() -> Vec<Ring> {
        vec![r_2(), r_g(), cube()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_display_and_checks() {
        let d = RingDescriptor::parse(32003, &["x", "y", "z"], &["x^2", "x*y", "y^2*z"]).unwrap();
        assert_eq!(d.to_string(), "ring char 32003 vars x,y,z ideal x^2, x*y, y^2*z");
        assert!(matches!(
            RingDescriptor::parse(32003, &["x", "y"], &["x^2 + y"]),
            Err(Error::NonHomogeneousIdeal(_))
        ));
        let s = RingDescriptor::parse(101, &["x", "y"], &[]).unwrap();
        assert_eq!(s.to_string(), "ring char 101 vars x,y");
    }

    #[test]
    fn unit_ideal_rejected() {
        let d = RingDescriptor::parse(32003, &["x"], &["1"]).unwrap();
        assert!(matches!(Ring::new(d, "zero"), Err(Error::UnitIdeal)));
    }

    #[test]
    fn reduction_mod_ideal() {
        let r = fixtures::r_ex();
        let p = r.parse_poly("x^2 + y^2*z + x*z").unwrap();
        assert_eq!(r.show(&p), "x*z");
        assert_eq!(r.krull_dim(), 1);
        assert!(fixtures::r_2().is_artinian());
    }
}
