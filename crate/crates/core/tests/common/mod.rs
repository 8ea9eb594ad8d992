#![allow(dead_code)]

use std::sync::OnceLock;

use cohomotopy::factory::{antipodal_quotient, circle, fixture, product, sphere};
use cohomotopy::{FacetComplex, Manifold};

/// Closed manifolds of dimension at least 4 used across the suites.
pub const FIXTURES: [&str; 7] = ["s4", "s3xs1", "t4", "s2xs2", "cp2", "rp4", "rp5"];

pub fn complex(name: &str) -> FacetComplex {
    match name {
        "s4" => sphere(4).unwrap(),
        "s3xs1" => product(&sphere(3).unwrap(), &circle(3).unwrap()),
        "t4" => {
            let c = circle(3).unwrap();
            let t2 = product(&c, &c);
            product(&t2, &t2)
        }
        "s2xs2" => product(&sphere(2).unwrap(), &sphere(2).unwrap()),
        "cp2" => fixture("cp2_9").unwrap(),
        "rp4" => antipodal_quotient(4).unwrap(),
        "rp5" => antipodal_quotient(5).unwrap(),
        other => panic!("unknown fixture {other}"),
    }
}

static CACHE: [OnceLock<Manifold>; FIXTURES.len()] = [const { OnceLock::new() }; FIXTURES.len()];

/// The analyzed manifold, built once per test binary.
pub fn manifold(name: &str) -> &'static Manifold {
    let i = FIXTURES.iter().position(|&f| f == name).expect("known fixture");
    CACHE[i].get_or_init(|| Manifold::new(complex(name)).expect("fixture analyzes"))
}
