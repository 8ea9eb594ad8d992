use cohomotopy::factory::{antipodal_quotient, circle, fixture, product, sphere};
use cohomotopy::{compute_f1, FacetComplex, Int, PipelineOptions, PresentedGroup};

fn run(k: FacetComplex) -> cohomotopy::CohomotopyReport {
    let report = compute_f1(k, PipelineOptions::default()).expect("pipeline runs");
    for c in &report.crosschecks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    report
}

fn group(free: usize, torsion: &[i64]) -> PresentedGroup {
    PresentedGroup::new(free, torsion.iter().map(|&d| Int::from(d)).collect())
}

#[test]
fn four_sphere() {
    let r = run(sphere(4).unwrap());
    assert_eq!(r.classification.label(), "IIa");
    assert!(r.f1.is_isomorphic(&group(0, &[2])));
}

#[test]
fn s3_times_s1() {
    let r = run(product(&sphere(3).unwrap(), &circle(3).unwrap()));
    assert_eq!(r.classification.label(), "IIa");
    assert!(r.f1.is_isomorphic(&group(1, &[2])));
}

#[test]
fn s2_times_s2() {
    let r = run(product(&sphere(2).unwrap(), &sphere(2).unwrap()));
    assert!(!r.classification.is_type_one());
    assert!(r.f1.is_isomorphic(&group(0, &[2])));
}

#[test]
fn complex_projective_plane() {
    let r = run(fixture("cp2_9").unwrap());
    assert_eq!(r.classification.label(), "I");
    assert!(r.f1.is_trivial());
}

#[test]
fn four_torus() {
    let c = circle(3).unwrap();
    let t2 = product(&c, &c);
    let t4 = product(&t2, &t2);
    let r = run(t4);
    assert!(r.f1.is_isomorphic(&group(4, &[2])));
}

#[test]
fn rp4() {
    let r = run(antipodal_quotient(4).unwrap());
    assert_eq!(r.classification.label(), "I");
    assert!(r.h1_twisted.is_trivial());
    assert!(r.f1.is_trivial());
}

#[test]
fn rp5() {
    let r = run(antipodal_quotient(5).unwrap());
    assert_eq!(r.classification.label(), "IIb");
    assert!(r.h1_twisted.is_isomorphic(&group(0, &[2])));
    assert!(r.f1.is_isomorphic(&group(0, &[4])));
    for (stage, t) in &r.timings {
        eprintln!("{stage}: {t:?}");
    }
}

#[test]
#[ignore = "slow: 320k facets, about 2 min and 3 GB in release"]
fn rp6() {
    let r = run(antipodal_quotient(6).unwrap());
    assert_eq!(r.classification.label(), "IIa");
    assert!(r.f1.is_isomorphic(&group(0, &[2])));
    for (stage, t) in &r.timings {
        eprintln!("{stage}: {t:?}");
    }
}

#[test]
#[ignore = "slow: 5M facets, needs far more memory than 5 GB"]
fn rp7() {
    let r = run(antipodal_quotient(7).unwrap());
    assert_eq!(r.classification.label(), "IIa");
    assert!(r.f1.is_isomorphic(&group(0, &[2, 2])));
}
