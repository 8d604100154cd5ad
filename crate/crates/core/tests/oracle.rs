mod common;

use common::{case, corpus, instances, oracle_coefficient, Case, Quotient};
use ncgraded::syzygy::{solve_linear_equation, EquationInstance};
use ncgraded::{complete_two_sided, parse_presentation};

fn library_dims(c: &Case, max: u32) -> Vec<u64> {
    let p = parse_presentation(&c.text).unwrap();
    let gb = complete_two_sided(&p, max).unwrap();
    gb.dimensions(max)
        .unwrap()
        .iter()
        .map(|d| u64::try_from(d.clone()).unwrap())
        .collect()
}

#[test]
fn normal_word_counts_match_linear_algebra() {
    for c in corpus() {
        let q = Quotient::new(&c, 8);
        assert_eq!(library_dims(&c, 8), q.dims(), "{}", c.name);
    }
}

#[test]
fn oracle_sanity() {
    let q = Quotient::new(&case("comm3"), 5);
    assert_eq!(q.dims(), [1, 3, 6, 10, 15, 21]);
    let q = Quotient::new(&case("x3"), 4);
    assert_eq!(q.dims(), [1, 1, 1, 0, 0]);
}

#[test]
fn syzygies_match_graded_kernel() {
    for (name, coeffs, bound) in instances() {
        let c = case(name);
        let q = Quotient::new(&c, bound as usize);
        let p = parse_presentation(&c.text).unwrap();
        let gb = complete_two_sided(&p, bound).unwrap();
        let polys: Vec<_> = coeffs.iter().map(|e| p.poly(e).unwrap()).collect();
        let s = solve_linear_equation(&EquationInstance::over_algebra(&polys, bound), &gb).unwrap();
        let mut got: Vec<usize> = s.degrees.iter().map(|&d| d as usize).collect();
        got.sort();
        let oracle: Vec<_> = coeffs.iter().map(|e| oracle_coefficient(&c, &q, e)).collect();
        assert_eq!(got, q.syzygy_degrees(&oracle, bound as usize), "{name} {coeffs:?}");
    }
}
