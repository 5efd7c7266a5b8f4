#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use syzlab_core::homalg::{ext_dim, tor_dim_any};
use syzlab_core::oracle::{linearize, oracle_ext_dims, oracle_tor_dims, ArtinianAlgebra};
use syzlab_core::{Dim, ModulePresentation, Monomial, PolyMatrix, Polynomial, PrimeField, Ring};

pub fn mat(ring: &Ring, rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| ring.parse_poly(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

/// R, k and R/(x_0): the modules every fixture ring is probed with.
pub fn probe_modules(ring: &Ring) -> Vec<ModulePresentation> {
    let x = ring.vars()[0].clone();
    vec![
        ModulePresentation::free(1).with_label("R"),
        ModulePresentation::residue_field(ring),
        ModulePresentation::cokernel(&mat(ring, &[&[x.as_str()]]), ring)
            .unwrap()
            .with_label(format!("R/({x})")),
    ]
}

/// One disagreement between the Groebner pipeline and the dense oracle.
#[derive(Debug)]
pub struct Mismatch {
    pub functor: &'static str,
    pub m: String,
    pub n: String,
    pub i: usize,
    pub pipeline: Dim,
    pub oracle: usize,
}

/// Compares Ext^i and Tor_i dimensions for all pairs of probe modules and
/// 0 <= i <= max; returns the number of comparisons and every mismatch.
pub fn oracle_agreement(ring: &Ring, max: usize) -> (usize, Vec<Mismatch>) {
    let alg = ArtinianAlgebra::new(ring).unwrap();
    let mods = probe_modules(ring);
    let lin: Vec<_> = mods.iter().map(|m| linearize(ring, m).unwrap()).collect();
    let mut count = 0;
    let mut bad = Vec::new();
    for (a, ma) in mods.iter().enumerate() {
        for (b, mb) in mods.iter().enumerate() {
            let ext = oracle_ext_dims(&alg, &lin[a], &lin[b], max);
            let tor = oracle_tor_dims(&alg, &lin[a], &lin[b], max);
            for i in 0..=max {
                for (functor, pipe, orc) in [
                    ("Ext", ext_dim(ma, mb, i, ring).unwrap(), ext[i]),
                    ("Tor", tor_dim_any(ma, mb, i, ring).unwrap(), tor[i]),
                ] {
                    count += 1;
                    if pipe != Dim::Finite(orc) {
                        bad.push(Mismatch {
                            functor,
                            m: ma.label().to_string(),
                            n: mb.label().to_string(),
                            i,
                            pipeline: pipe,
                            oracle: orc,
                        });
                    }
                }
            }
        }
    }
    (count, bad)
}

pub fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u16; nvars];
    fn rec(e: &mut Vec<u16>, i: usize, left: u16, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::from_exponents(e).unwrap());
            return;
        }
        for a in 0..=left {
            e[i] = a;
            rec(e, i + 1, left - a, out);
        }
    }
    rec(&mut e, 0, d, &mut out);
    out
}

pub fn random_homogeneous(rng: &mut ChaCha8Rng, nvars: usize, d: u16, max_terms: usize) -> Polynomial {
    let monos = monomials_of_degree(nvars, d);
    let f = PrimeField::default();
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n)
        .map(|_| (monos[rng.gen_range(0..monos.len())], f.element(rng.gen_range(1..32003))))
        .collect();
    Polynomial::from_terms(terms, f)
}

/// A random matrix with homogeneous entries: row degrees 0, column degrees 1 or 2.
pub fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> PolyMatrix {
    let n = ring.nvars();
    let degs: Vec<u16> = (0..cols).map(|_| rng.gen_range(1..=2)).collect();
    let entries = (0..rows)
        .map(|_| {
            degs.iter()
                .map(|&d| ring.reduce(&random_homogeneous(rng, n, d, 2)))
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(entries).unwrap()
}
