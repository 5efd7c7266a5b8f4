mod common;

use common::mat;
use syzlab_core::ring::fixtures;
use syzlab_core::stable::{syzygy, tr_omega};
use syzlab_core::verifier::*;
use syzlab_core::{Error, ModulePresentation, Ring};

fn opts() -> Options {
    Options::default()
}

fn example_m(rex: &Ring) -> ModulePresentation {
    ModulePresentation::subquotient(
        &mat(rex, &[&["y", "0"], &["0", "z"]]),
        &mat(rex, &[&["y"], &["z"]]),
        rex,
    )
    .unwrap()
    .with_label("M")
}

fn passes(r: &TheoremReport) {
    println!("{r}");
    assert!(matches!(r.status, Status::Pass | Status::BoundedPass), "{r}");
}

#[test]
fn thm_2_3_examples() {
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    let om = syzygy(&k, 1, &rex).unwrap();
    let r = verify_thm_2_3(&om, 1, &rex, opts()).unwrap();
    passes(&r);
    assert!(r.checks[0].lhs == "true");

    let free = ModulePresentation::free(2);
    passes(&verify_thm_2_3(&free, 2, &rex, opts()).unwrap());

    let r = verify_thm_2_3(&example_m(&rex), 1, &rex, opts()).unwrap();
    passes(&r);
    assert_eq!(r.checks[0].lhs, "false");
    assert!(r.notes.iter().any(|(_, v)| v != "0"));
}

#[test]
fn cor_2_5_on_fixtures() {
    for ring in [fixtures::r_ex(), fixtures::s2(), fixtures::r_g()] {
        passes(&verify_cor_2_5(&ring, opts()).unwrap());
    }
}

#[test]
fn cor_2_7_examples() {
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    passes(&verify_cor_2_7(&syzygy(&k, 1, &rex).unwrap(), 1, &rex, opts()).unwrap());
    passes(&verify_cor_2_7(&ModulePresentation::free(1), 3, &rex, opts()).unwrap());
    let r = verify_cor_2_7(&example_m(&rex), 1, &rex, opts()).unwrap();
    assert!(matches!(r.status, Status::NotApplicable(_)));
}

#[test]
fn lemma_3_1_examples() {
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    let tk = tr_omega(&k, 0, &rex).unwrap();
    passes(&verify_lemma_3_1(&tk, &k, 1, &rex, opts()).unwrap());
    passes(&verify_lemma_3_1(&tk, &ModulePresentation::free(1), 1, &rex, opts()).unwrap());
    passes(&verify_lemma_3_1(&ModulePresentation::free(2), &k, 3, &rex, opts()).unwrap());

    let s2 = fixtures::s2();
    let k2 = ModulePresentation::residue_field(&s2);
    passes(&verify_lemma_3_1(&k2, &k2, 2, &s2, opts()).unwrap());
    let t2 = tr_omega(&k2, 1, &s2).unwrap();
    passes(&verify_lemma_3_1(&t2, &k2, 2, &s2, opts()).unwrap());
}

#[test]
fn lemma_3_2_examples() {
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    passes(&verify_lemma_3_2(1, &ModulePresentation::free(1), &rex, opts()).unwrap());
    passes(&verify_lemma_3_2(1, &k, &rex, opts()).unwrap());
    let s3 = fixtures::s3();
    let k3 = ModulePresentation::residue_field(&s3);
    for j in 1..=3 {
        passes(&verify_lemma_3_2(j, &k3, &s3, Options::with_bound(4)).unwrap());
    }
    let r2 = fixtures::r_2();
    assert_eq!(
        verify_lemma_3_2(1, &ModulePresentation::free(1), &r2, opts()).unwrap_err(),
        Error::DepthZero
    );
}

#[test]
fn thm_3_6_examples() {
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    passes(&verify_thm_3_6(&syzygy(&k, 1, &rex).unwrap(), &rex, opts()).unwrap());
    passes(&verify_thm_3_6(&ModulePresentation::free(1), &rex, opts()).unwrap());
    let r = verify_thm_3_6(&k, &rex, opts()).unwrap();
    assert!(matches!(r.status, Status::NotApplicable(_)));

    let r2 = fixtures::r_2();
    let r = verify_thm_3_6(&ModulePresentation::free(1), &r2, opts()).unwrap();
    passes(&r);
    let two = r.checks.iter().find(|c| c.description.starts_with("(2)")).unwrap();
    assert_eq!((two.lhs.as_str(), two.rhs.as_str()), ("-3", "-3"));
}

#[test]
fn remark_3_7_examples() {
    let r2 = fixtures::r_2();
    let r = verify_remark_3_7(&ModulePresentation::free(1), &r2, opts()).unwrap();
    passes(&r);
    assert_eq!(r.checks[0].lhs, "0");
    assert_eq!(r.checks[1].lhs, "3");
    let rg = fixtures::r_g();
    let r = verify_remark_3_7(&ModulePresentation::free(1), &rg, opts()).unwrap();
    passes(&r);
    assert_eq!((r.checks[0].lhs.as_str(), r.checks[1].lhs.as_str()), ("0", "0"));
    let k = ModulePresentation::residue_field(&r2);
    let r = verify_remark_3_7(&k, &r2, opts()).unwrap();
    passes(&r);
    assert_eq!(r.checks[0].lhs, "1");
    let rex = fixtures::r_ex();
    assert_eq!(
        verify_remark_3_7(&ModulePresentation::free(1), &rex, opts()).unwrap_err(),
        Error::DepthNonzero(1)
    );
}

#[test]
fn cor_3_8_and_3_9_on_all_fixtures() {
    for ring in fixtures::all() {
        passes(&verify_cor_3_8(&ring, opts()).unwrap());
        passes(&verify_cor_3_9(&ring, opts()).unwrap());
    }
}

#[test]
fn example_reproduction() {
    for p in [32003, 101] {
        passes(&reproduce_example(p, opts()).unwrap());
    }
    assert!(reproduce_example(3, opts()).is_err());
}

#[test]
fn corrupted_formulas_fail_somewhere() {
    let bad = Options::default().corrupted();
    let rex = fixtures::r_ex();
    let k = ModulePresentation::residue_field(&rex);
    let om = syzygy(&k, 1, &rex).unwrap();
    let tk = tr_omega(&k, 0, &rex).unwrap();
    let r2 = fixtures::r_2();
    let free = ModulePresentation::free(1);
    let any_fail = |reports: Vec<TheoremReport>| reports.iter().any(TheoremReport::failed);

    assert!(any_fail(vec![
        verify_thm_2_3(&om, 1, &rex, bad).unwrap(),
        verify_thm_2_3(&example_m(&rex), 1, &rex, bad).unwrap(),
    ]));
    assert!(any_fail(
        fixtures::all()
            .iter()
            .map(|r| verify_cor_2_5(r, bad).unwrap())
            .collect()
    ));
    assert!(any_fail(vec![verify_cor_2_7(&om, 1, &rex, bad).unwrap()]));
    assert!(any_fail(vec![
        verify_lemma_3_1(&tk, &k, 1, &rex, bad).unwrap(),
        verify_lemma_3_1(&tk, &free, 1, &rex, bad).unwrap(),
    ]));
    assert!(any_fail(vec![verify_lemma_3_2(1, &free, &rex, bad).unwrap()]));
    assert!(any_fail(vec![
        verify_thm_3_6(&om, &rex, bad).unwrap(),
        verify_thm_3_6(&free, &r2, bad).unwrap(),
    ]));
    assert!(any_fail(vec![verify_remark_3_7(&free, &r2, bad).unwrap()]));
    assert!(any_fail(
        fixtures::all()
            .iter()
            .map(|r| verify_cor_3_8(r, bad).unwrap())
            .collect()
    ));
    assert!(any_fail(
        fixtures::all()
            .iter()
            .map(|r| verify_cor_3_9(r, bad).unwrap())
            .collect()
    ));
    assert!(any_fail(vec![reproduce_example(32003, bad).unwrap()]));
}
