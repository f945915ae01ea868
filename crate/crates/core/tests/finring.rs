mod common;

use std::collections::BTreeSet;

use common::{essential_by_scan, ideals_by_subgroups, ideals_by_subsets, PolyOracle};
use rmring::finring::{format_poly, parse_ring, Decomposition};

fn all_polys(n: u64, degree: usize) -> Vec<Vec<u64>> {
    (0..n.pow(degree as u32))
        .map(|mut k| {
            let mut f: Vec<u64> = (0..degree)
                .map(|_| {
                    let c = k % n;
                    k /= n;
                    c
                })
                .collect();
            f.push(1);
            f
        })
        .collect()
}

fn ideal_sets(ring: &rmring::finring::FiniteRing) -> BTreeSet<Vec<usize>> {
    ring.enumerate_ideals()
        .unwrap()
        .iter()
        .map(|i| i.members().collect())
        .collect()
}

#[test]
fn tables_match_schoolbook_arithmetic() {
    for n in 2..=6u64 {
        for degree in 1..=2 {
            for f in all_polys(n, degree) {
                let oracle = PolyOracle { n, f: f.clone() };
                let ring = parse_ring(&format!("Z{n}[x]/({})", format_poly(&f))).unwrap();
                assert_eq!(ring.order(), oracle.order());
                for i in 0..ring.order() {
                    for j in 0..ring.order() {
                        let (x, y) = (oracle.element(i), oracle.element(j));
                        assert_eq!(ring.mul(i, j), oracle.index(&oracle.mul(&x, &y)));
                        assert_eq!(ring.add(i, j), oracle.index(&oracle.add(&x, &y)));
                    }
                }
            }
        }
    }
}

#[test]
fn nilradical_matches_nilpotent_scan() {
    for n in 2..=8u64 {
        for f in all_polys(n, 2) {
            let oracle = PolyOracle { n, f: f.clone() };
            let ring = parse_ring(&format!("Z{n}[x]/({})", format_poly(&f))).unwrap();
            let expected: Vec<usize> = (0..oracle.order())
                .filter(|&i| oracle.is_nilpotent(&oracle.element(i)))
                .collect();
            let got: Vec<usize> = ring.nilradical().members().collect();
            assert_eq!(got, expected, "{}", ring.descriptor());
        }
    }
}

#[test]
fn example_rings_with_square_zero_x() {
    // Z5[x]/(x^2): the nilradical (x) is prime
    let r5 = parse_ring("Z5[x]/(x^2)").unwrap();
    let nil = r5.nilradical();
    assert_eq!(nil, r5.principal_ideal(r5.element("x").unwrap()));
    assert!(r5.is_prime_ideal(&nil));

    // Z6[x]/(x^2): (x+2)(x+3) = 5x is nilpotent while neither factor is
    let oracle = PolyOracle { n: 6, f: vec![0, 0, 1] };
    assert_eq!(oracle.mul(&[2, 1], &[3, 1]), vec![0, 5]);
    let r6 = parse_ring("Z6[x]/(x^2)").unwrap();
    let (a, b) = (r6.element("x+2").unwrap(), r6.element("x+3").unwrap());
    let prod = r6.mul(a, b);
    assert_eq!(r6.label(prod), "5x");
    let nil = r6.nilradical();
    assert!(nil.contains(prod) && !nil.contains(a) && !nil.contains(b));
    assert!(!r6.is_prime_ideal(&nil));
    let (wa, wb) = r6.non_prime_witness(&nil).unwrap();
    assert_eq!((r6.label(wa), r6.label(wb)), ("x+2", "x+3"));
}

#[test]
fn lattice_matches_subset_filter_up_to_16() {
    let mut rings = vec!["Z2 * Z2 * Z2 * Z2".to_string(), "Z2 * Z8".to_string(), "Z4 * Z4".to_string()];
    for n in 2..=16u64 {
        rings.push(format!("Z{n}"));
    }
    for n in 2..=4u64 {
        for f in all_polys(n, 2) {
            rings.push(format!("Z{n}[x]/({})", format_poly(&f)));
        }
    }
    for d in rings {
        let ring = parse_ring(&d).unwrap();
        assert_eq!(ideal_sets(&ring), ideals_by_subsets(&ring), "{d}");
    }
}

#[test]
fn lattice_matches_subgroup_filter_up_to_36() {
    for d in ["Z6[x]/(x^2)", "Z5[x]/(x^2+2)", "Z2 * Z3 * Z6", "Z2[x]/(x^2) * Z9", "Z36", "Z3 * Z3 * Z4"] {
        let ring = parse_ring(d).unwrap();
        assert_eq!(ideal_sets(&ring), ideals_by_subgroups(&ring), "{d}");
    }
    // both oracles agree where both are feasible
    let ring = parse_ring("Z2[x]/(x^2+x) * Z4").unwrap();
    assert_eq!(ideals_by_subsets(&ring), ideals_by_subgroups(&ring));
}

#[test]
fn essential_matches_definition_scan() {
    for d in ["Z12", "Z8", "Z6[x]/(x^2)", "Z2[x]/(x^2) * Z4", "Z3[x]/(x^2) * Z2 * Z2"] {
        let ring = parse_ring(d).unwrap();
        let all = ideals_by_subgroups(&ring);
        for ideal in ring.enumerate_ideals().unwrap() {
            let members: Vec<usize> = ideal.members().collect();
            assert_eq!(ring.is_essential(&ideal), essential_by_scan(&members, &all), "{d}");
        }
    }
}

#[test]
fn decompositions_of_field_products() {
    let ring = parse_ring("Z30").unwrap();
    match ring.decompose_fields().unwrap() {
        Decomposition::Fields(f) => {
            let mut names = f.field_names();
            names.sort();
            assert_eq!(names, vec!["F2", "F3", "F5"]);
            assert_eq!(f.field_orders.iter().product::<usize>(), 30);
            for cert in &f.certificates {
                assert!(f.maximals[cert.first].contains(cert.left));
                assert!(f.maximals[cert.second].contains(cert.right));
                assert_eq!(ring.add(cert.left, cert.right), ring.identity());
            }
        }
        other => panic!("{other:?}"),
    }
    let f4 = parse_ring("Z2[x]/(x^2+x+1)").unwrap();
    assert!(f4.is_field());
    assert_eq!(f4.composition_length().unwrap(), 1);
    assert!(!parse_ring("Z9").unwrap().decompose_fields().unwrap().is_fields());
}
