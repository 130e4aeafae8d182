//! Randomized sweeps over the factorization pipelines: every successful run
//! must verify by exact recomposition, with all labels checked.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordchain::classify::{classify, member_of, Classification, Family};
use ordchain::constructions::{
    factor_bounded_chain, factor_embedding, factor_open_chain, verify_factorization, FactorLabel,
    Factorization,
};
use ordchain::interval::Interval;
use ordchain::random::random_wrap_map;
use ordchain::subset::SubsetModel;

fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

fn check(fac: &Factorization, context: &str) {
    let report = verify_factorization(fac);
    assert!(report.ok, "{context}: {:?}", report.details);
    for (i, (factor, label)) in fac.factors.iter().enumerate() {
        match label {
            FactorLabel::OrderPreserving => assert!(
                member_of(factor, Family::OrderPreserving, &fac.y),
                "{context}, factor {i}"
            ),
            FactorLabel::Generator => assert!(
                matches!(classify(factor), Classification::OrientationProper { .. }),
                "{context}, factor {i}"
            ),
        }
    }
}

#[test]
fn open_chain_pipeline_over_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let cases = [
        ("(-inf,+inf)", "(-inf,0]"),
        ("(-inf,+inf)", "[0,+inf)"),
        ("(-inf,+inf)", "[0,1]"),
        ("(0,1)", "(0,1/2]"),
        ("(0,1)", "[1/2,1)"),
    ];
    for (x, y) in cases {
        let x = iv(x);
        let y = iv(y);
        for round in 0..20 {
            let alpha = random_wrap_map(&mut rng, &x, &y);
            let fac = factor_open_chain(&alpha, &SubsetModel::from_interval(y.clone()))
                .unwrap_or_else(|e| panic!("x={x} y={y} round={round}: {e}"));
            check(&fac, &format!("x={x} y={y} round={round}"));
        }
    }
}

#[test]
fn bounded_chain_pipeline_over_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    let cases = [
        ("[0,+inf)", "[1,2)"),
        ("[0,+inf)", "[1,2]"),
        ("[0,1]", "[1/4,1/2]"),
        ("[0,1]", "(0,1/2]"),
        ("(-inf,0]", "(-2,-1]"),
        ("(-inf,0]", "[-2,-1]"),
    ];
    for (x, y) in cases {
        let x = iv(x);
        let y = iv(y);
        for round in 0..20 {
            let alpha = random_wrap_map(&mut rng, &x, &y);
            let fac = factor_bounded_chain(&alpha, &SubsetModel::from_interval(y.clone()))
                .unwrap_or_else(|e| panic!("x={x} y={y} round={round}: {e}"));
            check(&fac, &format!("x={x} y={y} round={round}"));
        }
    }
}

#[test]
fn embedding_pipeline_over_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let cases = [
        ("[0,+inf)", "{0} u [1,2) u {3}", "[1,2)"),
        ("[0,1]", "{0} u [1/4,1/2] u {3/4}", "[1/4,1/2]"),
        ("(-inf,0]", "{-5} u (-2,-1] u {0}", "(-2,-1]"),
    ];
    for (x, y, ytilde) in cases {
        let x = iv(x);
        let y: SubsetModel = y.parse().unwrap();
        let ytilde = iv(ytilde);
        let hull = y.hull().unwrap();
        for round in 0..20 {
            // wrap maps whose values stay inside the embedded copy
            let alpha = random_wrap_map(&mut rng, &x, &ytilde)
                .with_codomain(hull.clone())
                .unwrap();
            let fac = factor_embedding(&alpha, &y, &ytilde)
                .unwrap_or_else(|e| panic!("x={x} ytilde={ytilde} round={round}: {e}"));
            assert_eq!(fac.factors.len(), 2);
            check(&fac, &format!("x={x} ytilde={ytilde} round={round}"));
        }
    }
}
