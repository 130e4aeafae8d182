//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The headline results are exact symbolic identities, certificates, and
//! finite brute-force counts, so every check here is an equality — no
//! tolerances beyond the stated runtime budgets.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ordchain::classify::{
    classify, extremum_audit, gap_bounds, ideal_complement, member_of, Classification, Family,
    Overlap,
};
use ordchain::constructions::{
    factor_bounded_chain, factor_embedding, factor_open_chain, gamma_for, obstruction_certificate,
    sandwich, verify_factorization, FactorLabel, Factorization,
};
use ordchain::ext::ExtRat;
use ordchain::finite::{
    closure, enumerate_family, order_preserving_count, relative_rank, FiniteFamily,
};
use ordchain::interval::Interval;
use ordchain::piecewise::PiecewiseMap;
use ordchain::random::{random_point_between, random_wrap_map};
use ordchain::rat::Rat;
use ordchain::subset::SubsetModel;
use ordchain::text::{parse_map, parse_map_file, serialize_map};

fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

fn sm(s: &str) -> SubsetModel {
    s.parse().unwrap()
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn within(budget: Duration, start: Instant, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: &ExtRat, hi: &ExtRat) -> Rat {
    random_point_between(rng, lo, hi)
}

/// Criterion 1: the wrap generator classifies orientation-proper, fails
/// O-membership, and matches its defining rows at the distinguished points,
/// for three random parameter tuples per chain kind.
#[test]
fn criterion_1_generator_display_rows() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let zero = ExtRat::Finite(Rat::from_integer(0.into()));
    let one = ExtRat::Finite(Rat::from_integer(1.into()));

    for _ in 0..3 {
        // closed chain [0,1]: a ↦ d, c ↦ a, b ↦ c
        let c = ExtRat::Finite(rand_rat(&mut rng, &zero, &one));
        let d = ExtRat::Finite(rand_rat(&mut rng, &c, &one));
        let chain = iv("[0,1]");
        let g = gamma_for(&chain, &[c.clone(), d.clone()]).unwrap();
        assert!(matches!(
            classify(&g),
            Classification::OrientationProper { .. }
        ));
        assert!(!member_of(&g, Family::OrderPreserving, &sm("[0,1]")));
        assert_eq!(g.eval(&zero).unwrap(), d);
        assert_eq!(g.eval(&c).unwrap(), zero);
        assert_eq!(g.eval(&one).unwrap(), c);

        // chain with a minimum [0,+inf): a ↦ c, c ↦ a
        let c = ExtRat::Finite(rand_rat(&mut rng, &zero, &ExtRat::PosInf));
        let chain = iv("[0,+inf)");
        let g = gamma_for(&chain, std::slice::from_ref(&c)).unwrap();
        assert!(matches!(
            classify(&g),
            Classification::OrientationProper { .. }
        ));
        assert!(!member_of(&g, Family::OrderPreserving, &sm("[0,+inf)")));
        assert_eq!(g.eval(&zero).unwrap(), c);
        assert_eq!(g.eval(&c).unwrap(), zero);

        // chain with a maximum (-inf,0]: c ↦ l, b ↦ c
        let c = ExtRat::Finite(rand_rat(&mut rng, &ExtRat::NegInf, &zero));
        let l = ExtRat::Finite(rand_rat(&mut rng, &ExtRat::NegInf, &c));
        let chain = iv("(-inf,0]");
        let g = gamma_for(&chain, &[c.clone(), l.clone()]).unwrap();
        assert!(matches!(
            classify(&g),
            Classification::OrientationProper { .. }
        ));
        assert!(!member_of(&g, Family::OrderPreserving, &sm("(-inf,0]")));
        assert_eq!(g.eval(&c).unwrap(), l);
        assert_eq!(g.eval(&zero).unwrap(), c);
    }
    within(Duration::from_secs(1), start, "criterion 1");
    println!("criterion 1: PASS (generator display rows, 3 random tuples per chain kind)");
}

/// Criterion 2: the sandwich pair reproduces the wrap generator exactly, on
/// closed and min-only chains, three parameter tuples each.
#[test]
fn criterion_2_sandwich_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let zero = ExtRat::Finite(Rat::from_integer(0.into()));
    let one = ExtRat::Finite(Rat::from_integer(1.into()));

    for _ in 0..3 {
        let chain = iv("[0,1]");
        let fc = ExtRat::Finite(rand_rat(&mut rng, &zero, &one));
        let fd = ExtRat::Finite(rand_rat(&mut rng, &fc, &one));
        let f = gamma_for(&chain, &[fc, fd]).unwrap();
        let c = ExtRat::Finite(rand_rat(&mut rng, &zero, &one));
        let d = ExtRat::Finite(rand_rat(&mut rng, &c, &one));
        let (hat, tilde) = sandwich(&f, &c, Some(&d)).unwrap();
        let triple = hat.compose(&f).unwrap().compose(&tilde).unwrap();
        assert!(triple.equals(&gamma_for(&chain, &[c, d]).unwrap()));

        let chain = iv("[0,+inf)");
        let f = gamma_for(
            &chain,
            &[ExtRat::Finite(rand_rat(&mut rng, &zero, &ExtRat::PosInf))],
        )
        .unwrap();
        let c = ExtRat::Finite(rand_rat(&mut rng, &zero, &ExtRat::PosInf));
        let (hat, tilde) = sandwich(&f, &c, None).unwrap();
        let triple = hat.compose(&f).unwrap().compose(&tilde).unwrap();
        assert!(triple.equals(&gamma_for(&chain, &[c]).unwrap()));
    }
    within(Duration::from_secs(1), start, "criterion 2");
    println!("criterion 2: PASS (sandwich identity, exact, 3 tuples per chain kind)");
}

fn fixture_suite() -> Vec<(&'static str, u8, &'static str, Option<&'static str>)> {
    vec![
        ("th1_max.map", 1, "(-inf,0]", None),
        ("th1_min.map", 1, "[0,+inf)", None),
        ("th1_both.map", 1, "[0,1]", None),
        ("th1_coinitial.map", 1, "(-inf,0]", None),
        ("th2_minonly.map", 2, "[1,2)", None),
        ("th2_closed.map", 2, "[1/4,1/2]", None),
        ("th3_nonconvex.map", 3, "{0} u [1,2) u {3}", Some("[1,2)")),
        (
            "th3_order_preserving.map",
            3,
            "{0} u [1,2) u {3}",
            Some("[1,2)"),
        ),
    ]
}

fn run_fixture(file: &str, pipeline: u8, y: &str, ytilde: Option<&str>) -> Factorization {
    let alpha = parse_map_file(fixtures_dir().join(file)).unwrap();
    let y = sm(y);
    match pipeline {
        1 => factor_open_chain(&alpha, &y).unwrap(),
        2 => factor_bounded_chain(&alpha, &y).unwrap(),
        3 => factor_embedding(&alpha, &y, &iv(ytilde.unwrap())).unwrap(),
        _ => unreachable!(),
    }
}

/// Criterion 3: the factorization fixture suite (two per pipeline, covering
/// ranges with a maximum, a minimum, both extrema, and the non-convex case)
/// all verify, with every order-preserving label checked.
#[test]
fn criterion_3_factorization_pipelines() {
    let start = Instant::now();
    for (file, pipeline, y, ytilde) in fixture_suite() {
        let fac = run_fixture(file, pipeline, y, ytilde);
        let report = verify_factorization(&fac);
        assert!(report.ok, "{file}: {:?}", report.details);
        for (i, (factor, label)) in fac.factors.iter().enumerate() {
            match label {
                FactorLabel::OrderPreserving => assert!(
                    member_of(factor, Family::OrderPreserving, &fac.y),
                    "{file} factor {i}"
                ),
                FactorLabel::Generator => assert!(
                    matches!(classify(factor), Classification::OrientationProper { .. }),
                    "{file} factor {i}"
                ),
            }
        }
        if pipeline == 3 {
            assert_eq!(fac.factors.len(), 2, "{file}");
        }
    }
    within(Duration::from_secs(5), start, "criterion 3");
    println!("criterion 3: PASS (8 factorization fixtures verified exactly)");
}

/// Criterion 4: 500 random maps in OP(X,Y) \ O(X,Y) over Y = (0,1) all
/// produce valid image gap bounds, pass the extremum audit where it
/// applies, and overlap in at most one point with the min/max coincidence.
#[test]
fn criterion_4_gap_audit_overlap_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let x = Interval::full();
    let y = iv("(0,1)");
    let ym = SubsetModel::from_interval(y.clone());
    let above = |h: &ExtRat| {
        Interval::new(
            ordchain::interval::Bound::open(h.clone()),
            ordchain::interval::Bound::open(y.hi().point.clone()),
        )
    };
    for round in 0..500 {
        let f = random_wrap_map(&mut rng, &x, &y);
        assert!(
            member_of(&f, Family::OrientationPreserving, &ym),
            "round {round}"
        );
        assert!(
            !member_of(&f, Family::OrderPreserving, &ym),
            "round {round}"
        );
        let image = f.image();

        let bounds = gap_bounds(&f, &ym).unwrap();
        assert!(
            bounds.upper.is_some() || bounds.lower.is_some(),
            "round {round}"
        );
        if let Some(h) = &bounds.upper {
            assert_eq!(image.max(), Some(h.clone()), "round {round}");
            if let Ok(gap) = above(h) {
                assert!(image.intersect(&SubsetModel::from_interval(gap)).is_empty());
            }
        }
        if let Some(l) = &bounds.lower {
            assert_eq!(image.min(), Some(l.clone()), "round {round}");
        }

        let audit = extremum_audit(&f, &ym).unwrap();
        assert!(audit.passed(), "round {round}");

        let Classification::OrientationProper { ideal, overlap } = classify(&f) else {
            panic!("round {round}: not orientation-proper");
        };
        let complement = ideal_complement(f.domain(), &ideal);
        let inter = f
            .restrict(&ideal)
            .unwrap()
            .image()
            .intersect(&f.restrict(&complement).unwrap().image());
        match overlap {
            Overlap::Empty => assert!(inter.is_empty(), "round {round}"),
            Overlap::Singleton(c) => {
                assert_eq!(inter.parts().len(), 1, "round {round}");
                assert!(inter.parts()[0].is_singleton());
                assert_eq!(inter.parts()[0].lo().point, c);
                assert_eq!(f.restrict(&ideal).unwrap().image().min(), Some(c.clone()));
                assert_eq!(f.restrict(&complement).unwrap().image().max(), Some(c));
            }
        }
    }
    within(Duration::from_secs(10), start, "criterion 4");
    println!("criterion 4: PASS (500 random maps, zero failures)");
}

/// Criterion 5: brute-force family counts match the closed-form values.
#[test]
fn criterion_5_finite_counts() {
    let start = Instant::now();
    let expected = [(2usize, 3usize), (3, 10), (4, 35), (5, 126)];
    for (n, count) in expected {
        let y: Vec<u8> = (1..=n as u8).collect();
        let o = enumerate_family(n, FiniteFamily::OrderPreserving, &y).unwrap();
        assert_eq!(o.len(), count, "|O({n})|");
        assert_eq!(
            o.len() as u64,
            order_preserving_count(n),
            "binomial cross-check, n = {n}"
        );
    }
    let op2 = enumerate_family(2, FiniteFamily::OrientationPreserving, &[1, 2]).unwrap();
    assert_eq!(op2.len(), 4);
    within(Duration::from_secs(5), start, "criterion 5");
    println!("criterion 5: PASS (|O(n)| = 3, 10, 35, 126; |OP(2)| = 4)");
}

/// Criterion 6: relative ranks by brute force: rank(OP(n) : O(n)) = 1 with a
/// verified witness for n = 3, 4, 5, and the rank identities on O(2), O(3).
#[test]
fn criterion_6_finite_relative_ranks() {
    let start = Instant::now();
    for n in [3usize, 4, 5] {
        let y: Vec<u8> = (1..=n as u8).collect();
        let o = enumerate_family(n, FiniteFamily::OrderPreserving, &y).unwrap();
        let op = enumerate_family(n, FiniteFamily::OrientationPreserving, &y).unwrap();
        let (r, witness) = relative_rank(&op, &o).unwrap();
        assert_eq!(r, 1, "rank(OP({n}) : O({n}))");
        let mut gens = o.clone();
        gens.extend(witness.iter().cloned());
        assert_eq!(
            closure(&gens).unwrap().elements,
            op,
            "witness verifies, n = {n}"
        );
    }
    for n in [2usize, 3] {
        let y: Vec<u8> = (1..=n as u8).collect();
        let o = enumerate_family(n, FiniteFamily::OrderPreserving, &y).unwrap();
        // rank(S : S) = 0
        assert_eq!(relative_rank(&o, &o).unwrap().0, 0);
        // rank(S : A) = rank(S : <A>) on a sample A
        let a = vec![o[0].clone(), o[o.len() - 1].clone()];
        let a_closed = closure(&a).unwrap().elements;
        assert_eq!(
            relative_rank(&o, &a).unwrap().0,
            relative_rank(&o, &a_closed).unwrap().0,
            "n = {n}"
        );
    }
    // rank(S : ∅) = rank S: the brute-force rank of O(2) is 3
    let o2 = enumerate_family(2, FiniteFamily::OrderPreserving, &[1, 2]).unwrap();
    let (rank, witness) = relative_rank(&o2, &[]).unwrap();
    assert_eq!(rank, 3);
    assert_eq!(closure(&witness).unwrap().elements, o2);
    within(Duration::from_secs(60), start, "criterion 6");
    println!("criterion 6: PASS (rank(OP(n):O(n)) = 1 for n = 3, 4, 5; rank identities)");
}

/// Criterion 7: obstruction certificates for 20 random finite generator
/// sets: per-element bounds re-validate, and the witness map's image is
/// exactly the clipped range below h.
#[test]
fn criterion_7_obstruction_certificates() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let x = Interval::full();
    let y = iv("(0,1)");
    let ym = SubsetModel::from_interval(y.clone());
    for round in 0..20 {
        let size = rng.random_range(1..=4usize);
        let g: Vec<PiecewiseMap> = (0..size)
            .map(|_| random_wrap_map(&mut rng, &x, &y))
            .collect();
        let cert = obstruction_certificate(&g, &ym, &x).unwrap();
        assert_eq!(cert.per_element.len(), g.len(), "round {round}");
        for (f, recorded) in g.iter().zip(&cert.per_element) {
            assert_eq!(recorded, &gap_bounds(f, &ym).unwrap(), "round {round}");
            if let Some(u) = &recorded.upper {
                assert!(*u < cert.h, "round {round}: h must clear every upper bound");
            }
            if let Some(l) = &recorded.lower {
                assert!(
                    cert.a < *l,
                    "round {round}: a must sit below every lower bound"
                );
            }
        }
        assert!(cert.b < cert.h, "round {round}");
        assert_eq!(
            cert.alpha.image(),
            ym.clip_at_most(&cert.h),
            "round {round}"
        );
        assert!(member_of(&cert.alpha, Family::OrientationPreserving, &ym));
        assert!(!member_of(&cert.alpha, Family::OrderPreserving, &ym));
    }
    within(Duration::from_secs(5), start, "criterion 7");
    println!("criterion 7: PASS (20 random generator sets, zero failures)");
}

/// Criterion 8: every fixture survives parse → serialize → parse with
/// canonical equality, and the binary honors the exit-code contract.
#[test]
fn criterion_8_cli_round_trip_and_exit_codes() {
    let start = Instant::now();
    let dir = fixtures_dir();
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("map") {
            continue;
        }
        let f = parse_map_file(&path).unwrap();
        let text = serialize_map(&f);
        let g = parse_map(&text).unwrap();
        assert!(f.equals(&g), "{}", path.display());
        assert_eq!(serialize_map(&g), text, "{}", path.display());
        count += 1;
    }
    assert!(
        count >= 8,
        "expected the fixture corpus, found {count} files"
    );

    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args([
            "finite", "relrank", "--n", "4", "--super", "OP", "--sub", "O",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "relrank must exit 0");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("r = 1"), "got: {stdout}");

    // success exits 0, errors exit 2
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args([
            "check",
            dir.join("alpha_star.map").to_str().unwrap(),
            "--y",
            "(0,1)",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args(["check", "no_such_file.map"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // a negative verdict exits 1: the max-only wrap display is not a
    // single relative generator
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args(["gamma", "--chain", "(-inf,0]"])
        .output()
        .unwrap();
    let tmp = std::env::temp_dir().join("ordchain_gamma_max.map");
    std::fs::write(&tmp, out.stdout).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args(["test-generator", tmp.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // the embedding pipeline end to end
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args([
            "factor",
            "--theorem",
            "3",
            dir.join("th3_nonconvex.map").to_str().unwrap(),
            "--y",
            "{0} u [1,2) u {3}",
            "--ytilde",
            "[1,2)",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("verified: true"));

    // ORDCHAIN_FINITE_CAP lifts the default chain-size cap
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .args([
            "finite",
            "enumerate",
            "--n",
            "8",
            "--family",
            "O",
            "--count",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_ordchain"))
        .env("ORDCHAIN_FINITE_CAP", "8")
        .args([
            "finite",
            "enumerate",
            "--n",
            "8",
            "--family",
            "O",
            "--count",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "6435");
    within(Duration::from_secs(5), start, "criterion 8");
    println!("criterion 8: PASS ({count} fixtures round-trip; exit codes honored)");
}
