//! Runs every acceptance criterion and prints one line per criterion.
//!
//! Criterion 4 lists R_cube = k[x,y,z]/(x^3,y^3,z^3) among the rings that are
//! not of type one. That ring is an artinian complete intersection, so it is
//! Gorenstein and its socle is spanned by x^2y^2z^2: type one, and the
//! corresponding syzygy is torsionfree to the required level. The line for
//! criterion 4 therefore reports FAIL on that classification, and the test
//! only tolerates that exact discrepancy.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_agreement, probe_modules, random_matrix};
use syzlab_core::groebner::{syzygies, Dim, FreeVector};
use syzlab_core::homalg::{ext_dim, free_resolution, ModulePresentation};
use syzlab_core::oracle::{linearize, oracle_ext_dims, ArtinianAlgebra};
use syzlab_core::ring::fixtures;
use syzlab_core::stable::{
    bass_numbers, depth, is_gorenstein, is_n_torsionfree, projective_dimension, ring_depth, ring_type,
    socle_quotient_dim, syzygy, tr_omega, transpose,
};
use syzlab_core::verifier::*;
use syzlab_core::Ring;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the only failing sub-checks are a known wrong expectation.
    known_discrepancy: bool,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, summary: String) -> Self {
        if failures.is_empty() {
            Outcome {
                pass: true,
                detail: summary,
                known_discrepancy: false,
            }
        } else {
            Outcome {
                pass: false,
                detail: failures.join("; "),
                known_discrepancy: false,
            }
        }
    }
}

/// Collects failed sub-checks of one criterion.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn report(&mut self, r: &TheoremReport) {
        if !matches!(r.status, Status::Pass | Status::BoundedPass) {
            let failing: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.description.as_str())
                .collect();
            self.0.push(format!(
                "{} on {}: {} [{}]",
                r.theorem_id,
                r.ring,
                r.status,
                failing.join(", ")
            ));
        }
    }
}

fn example_reproduction() -> Outcome {
    let mut c = Checks::default();
    let rep = reproduce_example(32003, Options::default()).unwrap();
    c.report(&rep);
    for (what, want) in [
        ("krull dim R", "1"),
        ("depth R", "1"),
        ("type R", "2"),
        ("dim Hom(k, W)", "2"),
        ("depth M", "0"),
        ("M is 1-torsionfree", "false"),
        ("Omega M is 2-torsionfree", "false"),
        ("grade Ext^2(R/(y), R)", "0"),
    ] {
        match rep.checks.iter().find(|ch| ch.description == what) {
            Some(ch) => c.eq(what, ch.lhs.as_str(), want),
            None => c.0.push(format!("{what}: not reported")),
        }
    }
    Outcome::from_failures(c.0, format!("{} checks", rep.checks.len()))
}

fn ext_of_tr_omega_k_on_rex() -> Outcome {
    let mut c = Checks::default();
    let rex = fixtures::r_ex();
    c.report(&verify_cor_3_8(&rex, Options::with_bound(6)).unwrap());
    let k = ModulePresentation::residue_field(&rex);
    let w = tr_omega(&k, 1, &rex).unwrap();
    let r = ModulePresentation::free(1);
    let dims: Vec<Dim> = (1..=6).map(|i| ext_dim(&w, &r, i, &rex).unwrap()).collect();
    let mu = bass_numbers(&r, 4, &rex).unwrap();
    let want: Vec<Dim> = [0, 0, 3, 2 * mu[2], 2 * mu[3], 2 * mu[4]].map(Dim::Finite).to_vec();
    c.eq("dim Ext^1..6(Tr Omega k, R)", dims.clone(), want);
    let shown: Vec<String> = dims.iter().map(Dim::to_string).collect();
    Outcome::from_failures(c.0, format!("dim Ext^1..6 = {}, mu_0..4(R) = {mu:?}", shown.join(" ")))
}

fn depth_zero_on_r2() -> Outcome {
    let mut c = Checks::default();
    let r2 = fixtures::r_2();
    let r = ModulePresentation::free(1);
    let tk = transpose(&ModulePresentation::residue_field(&r2), &r2).unwrap();
    c.eq("dim Ext^1(Tr k, R)", ext_dim(&tk, &r, 1, &r2).unwrap(), Dim::Finite(0));
    c.eq("dim Ext^2(Tr k, R)", ext_dim(&tk, &r, 2, &r2).unwrap(), Dim::Finite(3));
    let q = socle_quotient_dim(&r, &r2).unwrap();
    c.eq("dim R/(0:_R(0:_R m))", q, 1);
    c.report(&verify_remark_3_7(&r, &r2, Options::default()).unwrap());
    c.report(&verify_cor_3_8(&r2, Options::default()).unwrap());

    let alg = ArtinianAlgebra::new(&r2).unwrap();
    let reg = alg.regular_module();
    let lin_tk = linearize(&r2, &tk).unwrap();
    let oracle = oracle_ext_dims(&alg, &lin_tk, &reg, 2);
    c.eq("oracle dim Ext^1,2(Tr k, R)", oracle[1..].to_vec(), vec![0, 3]);
    c.eq("oracle socle quotient of R", alg.socle_quotient_dim(&reg), q);
    c.eq("oracle type", alg.type_(), ring_type(&r2).unwrap());
    Outcome::from_failures(c.0, format!("q = {q}, oracle Ext^1,2 = {:?}", &oracle[1..]))
}

fn type_one_and_torsionfree_syzygy() -> Outcome {
    let mut c = Checks::default();
    // classification as listed: (type one, Omega^t k is (t+2)-torsionfree)
    let listed = [
        ("R_g", true),
        ("S2", true),
        ("R_ex", false),
        ("R_2", false),
        ("R_cube", false),
    ];
    let mut classification_misses = Vec::new();
    let mut rows = Vec::new();
    for ring in fixtures::all() {
        let rep = verify_cor_3_9(&ring, Options::with_bound(6)).unwrap();
        c.report(&rep);
        let t = ring_depth(&ring).unwrap();
        let type_one = ring_type(&ring).unwrap() == 1;
        let k = ModulePresentation::residue_field(&ring);
        let tf = is_n_torsionfree(&syzygy(&k, t, &ring).unwrap(), t + 2, &ring)
            .unwrap()
            .holds;
        c.eq(&format!("{}: type one <=> torsionfree", ring.label()), type_one, tf);
        if let Some(&(_, want)) = listed.iter().find(|(l, _)| *l == ring.label()) {
            if (type_one, tf) != (want, want) {
                classification_misses.push(format!(
                    "{} listed {want}/{want}, computed {type_one}/{tf}",
                    ring.label()
                ));
            }
        }
        // Gorenstein rings show a vanishing Ext inside the window, the others none through t+9
        let tk = tr_omega(&k, t, &ring).unwrap();
        let r = ModulePresentation::free(1);
        let vanishing: Vec<usize> = (t + 3..=t + 9)
            .filter(|&i| ext_dim(&tk, &r, i, &ring).unwrap().is_zero())
            .collect();
        let gor = is_gorenstein(&ring).unwrap();
        c.eq(
            &format!("{}: vanishing found <=> Gorenstein", ring.label()),
            !vanishing.is_empty(),
            gor,
        );
        rows.push(format!("{} {}/{}", ring.label(), type_one, tf));
    }
    let mut out = Outcome::from_failures(c.0, rows.join(", "));
    if out.pass && !classification_misses.is_empty() {
        let only_cube = classification_misses.len() == 1
            && classification_misses[0].starts_with("R_cube listed false/false, computed true/true");
        out = Outcome {
            pass: false,
            detail: format!(
                "{}; equivalence and Gorenstein window hold on all fixtures",
                classification_misses.join("; ")
            ),
            known_discrepancy: only_cube,
        };
    } else if !classification_misses.is_empty() {
        out.detail = format!("{}; {}", out.detail, classification_misses.join("; "));
    }
    out
}

fn ext_against_syzygy_of_k() -> Outcome {
    let mut c = Checks::default();
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    let om = syzygy(&k, 1, &rex).unwrap();
    let rep = verify_thm_3_6(&om, &rex, Options::with_bound(6)).unwrap();
    c.report(&rep);
    for part in ["(1)", "(2)", "(3)"] {
        if !rep.checks.iter().any(|ch| ch.description.starts_with(part)) {
            c.0.push(format!("part {part} not checked"));
        }
    }
    Outcome::from_failures(c.0, format!("{} checks, indices up to 6", rep.checks.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut c = Checks::default();
    let mut total = 0;
    for ring in fixtures::artinian() {
        let (n, bad) = oracle_agreement(&ring, 6);
        total += n;
        for m in bad {
            c.0.push(format!(
                "{}: {}^{}({}, {}) pipeline {} oracle {}",
                ring.label(),
                m.functor,
                m.i,
                m.m,
                m.n,
                m.pipeline,
                m.oracle
            ));
        }
    }
    Outcome::from_failures(
        c.0,
        format!("{total} dimensions agree on {} rings", fixtures::artinian().len()),
    )
}

fn is_complex_and_minimal(ring: &Ring, m: &ModulePresentation, c: &mut Checks) {
    let res = free_resolution(m, 4, ring).unwrap();
    for (i, d) in res.differentials.iter().enumerate() {
        if !d.is_minimal() {
            c.0.push(format!("{}: d_{} has a unit entry", ring.label(), i + 1));
        }
    }
    for w in res.differentials.windows(2) {
        if w[0].cols() == 0 || w[1].cols() == 0 || w[0].rows() == 0 {
            continue;
        }
        let prod = w[0].mul(&w[1], ring.field()).unwrap().map_entries(|p| ring.reduce(p));
        if !prod.is_zero() {
            c.0.push(format!("{}: d.d != 0 for {}", ring.label(), m.label()));
        }
    }
}

fn property_suites() -> Outcome {
    let mut c = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random_rings = [fixtures::r_ex(), fixtures::s2(), fixtures::r_2()];

    // complex property, minimality and syzygy soundness on random cokernels
    for round in 0..12 {
        let ring = &random_rings[round % 3];
        let a = random_matrix(&mut rng, ring, 2, 2);
        let m = ModulePresentation::cokernel(&a, ring).unwrap();
        is_complex_and_minimal(ring, &m, &mut c);
        let cols: Vec<FreeVector> = (0..a.cols())
            .map(|j| FreeVector::from_components(&a.column(j)))
            .collect();
        for s in syzygies(&cols, a.rows(), ring.nvars(), ring.field()) {
            let mut total = FreeVector::zero();
            for (j, coef) in s.components(cols.len()).iter().enumerate() {
                total = total.add(&cols[j].mul_poly(coef, ring.field()), ring.field());
            }
            if !total.is_zero() {
                c.0.push(format!("{}: A s != 0", ring.label()));
            }
        }
    }

    // Omega shifts Ext, Tr Tr M agrees with M stably
    let r = ModulePresentation::free(1);
    for ring in fixtures::all() {
        for m in probe_modules(&ring) {
            let om = syzygy(&m, 1, &ring).unwrap();
            let tt = transpose(&transpose(&m, &ring).unwrap(), &ring).unwrap();
            for i in 1..=4 {
                c.eq(
                    &format!("{}: Ext^{i}(Omega {}, R)", ring.label(), m.label()),
                    ext_dim(&om, &r, i, &ring).unwrap(),
                    ext_dim(&m, &r, i + 1, &ring).unwrap(),
                );
                c.eq(
                    &format!("{}: Ext^{i}(Tr Tr {}, R)", ring.label(), m.label()),
                    ext_dim(&tt, &r, i, &ring).unwrap(),
                    ext_dim(&m, &r, i, &ring).unwrap(),
                );
            }
            let a = free_resolution(&m, 4, &ring).unwrap();
            let b = free_resolution(&tt, 4, &ring).unwrap();
            let padded = |betti: &[usize]| (1..=4).map(|i| betti.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
            c.eq(
                &format!("{}: betti of Tr Tr {}", ring.label(), m.label()),
                padded(&b.betti),
                padded(&a.betti),
            );
        }
    }

    // pd M + depth M = depth S on 10 random modules of finite projective dimension
    let mut tested = 0;
    while tested < 10 {
        let ring = if tested % 2 == 0 {
            fixtures::s2()
        } else {
            fixtures::s3()
        };
        let (rows, cols) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let a = random_matrix(&mut rng, &ring, rows, cols);
        let m = ModulePresentation::cokernel(&a, &ring).unwrap();
        if m.is_zero() {
            continue;
        }
        let pd = projective_dimension(&m, ring.nvars() + 1, &ring).unwrap().unwrap();
        c.eq(
            &format!("{}: pd + depth", ring.label()),
            pd + depth(&m, &ring).unwrap(),
            ring_depth(&ring).unwrap(),
        );
        tested += 1;
    }

    let corpus = corpus_reports(Options::default());
    for rep in &corpus {
        c.report(rep);
    }
    let controls = negative_controls();
    for (name, failed) in &controls {
        if !failed {
            c.0.push(format!("corrupted {name} never fails"));
        }
    }
    Outcome::from_failures(
        c.0,
        format!(
            "{} corpus reports pass, {} corrupted verifiers fail",
            corpus.len(),
            controls.len()
        ),
    )
}

/// The verifiers whose hypotheses concern only the ring and a module, over
/// every fixture and probe module where the hypotheses hold.
fn corpus_reports(opts: Options) -> Vec<TheoremReport> {
    let mut out = Vec::new();
    for ring in fixtures::all() {
        let t = ring_depth(&ring).unwrap();
        let opts = if ring.nvars() > 2 && t > 1 {
            Options { bound: 4, ..opts }
        } else {
            opts
        };
        out.push(verify_cor_3_8(&ring, opts).unwrap());
        out.push(verify_cor_3_9(&ring, opts).unwrap());
        let mut mods = probe_modules(&ring);
        let k = ModulePresentation::residue_field(&ring);
        mods.push(syzygy(&k, t, &ring).unwrap().with_label(format!("Omega^{t} k")));
        for m in &mods {
            let rep = verify_thm_3_6(m, &ring, opts).unwrap();
            if !matches!(rep.status, Status::NotApplicable(_)) {
                out.push(rep);
            }
            for j in 1..=t {
                out.push(verify_lemma_3_2(j, m, &ring, opts).unwrap());
            }
        }
    }
    out
}

fn negative_controls() -> Vec<(&'static str, bool)> {
    let bad = Options::default().corrupted();
    let rex = fixtures::r_ex();
    let r2 = fixtures::r_2();
    let k = ModulePresentation::residue_field(&rex);
    let om = syzygy(&k, 1, &rex).unwrap();
    let tk = tr_omega(&k, 0, &rex).unwrap();
    let free = ModulePresentation::free(1);
    let any = |reports: Vec<TheoremReport>| reports.iter().any(TheoremReport::failed);
    let all = fixtures::all();
    vec![
        ("thm_2_3", any(vec![verify_thm_2_3(&om, 1, &rex, bad).unwrap()])),
        (
            "cor_2_5",
            any(all.iter().map(|r| verify_cor_2_5(r, bad).unwrap()).collect()),
        ),
        ("cor_2_7", any(vec![verify_cor_2_7(&om, 1, &rex, bad).unwrap()])),
        (
            "lemma_3_1",
            any(vec![
                verify_lemma_3_1(&tk, &k, 1, &rex, bad).unwrap(),
                verify_lemma_3_1(&tk, &free, 1, &rex, bad).unwrap(),
            ]),
        ),
        ("lemma_3_2", any(vec![verify_lemma_3_2(1, &free, &rex, bad).unwrap()])),
        (
            "thm_3_6",
            any(vec![
                verify_thm_3_6(&om, &rex, bad).unwrap(),
                verify_thm_3_6(&free, &r2, bad).unwrap(),
            ]),
        ),
        ("remark_3_7", any(vec![verify_remark_3_7(&free, &r2, bad).unwrap()])),
        (
            "cor_3_8",
            any(all.iter().map(|r| verify_cor_3_8(r, bad).unwrap()).collect()),
        ),
        (
            "cor_3_9",
            any(all.iter().map(|r| verify_cor_3_9(r, bad).unwrap()).collect()),
        ),
        ("example", any(vec![reproduce_example(32003, bad).unwrap()])),
    ]
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("worked example invariants on R_ex", example_reproduction),
        (
            "Ext of Tr Omega k on R_ex against Bass numbers",
            ext_of_tr_omega_k_on_rex,
        ),
        ("depth-zero identities on R_2, checked by the oracle", depth_zero_on_r2),
        (
            "type one vs torsionfree syzygy, Gorenstein window",
            type_one_and_torsionfree_syzygy,
        ),
        (
            "Ext(Tr Omega k, Omega k) on R_ex, disjoint pipelines",
            ext_against_syzygy_of_k,
        ),
        (
            "Groebner pipeline vs dense oracle on artinian rings",
            oracle_equivalence,
        ),
        ("property suites, corpus and negative controls", property_suites),
    ];
    let mut unexpected = Vec::new();
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
            known_discrepancy: false,
        });
        let verdict = match (out.pass, out.known_discrepancy) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known wrong expectation)",
            (false, false) => "FAIL",
        };
        // written directly so the lines survive the harness's output capture
        writeln!(
            std::io::stdout().lock(),
            "criterion {} {verdict}: {title} ({:.2}s) {}",
            n + 1,
            start.elapsed().as_secs_f64(),
            out.detail
        )
        .unwrap();
        if !out.pass && !out.known_discrepancy {
            unexpected.push(n + 1);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
