//! Stack invariants: the multiplicity recursion and closed forms against the
//! facet count, and the regularity against the rook number.

mod common;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use polyideal::enumerate::{convex_polyominoes, stack_polyominoes};
use polyideal::scalar::binomial;
use polyideal::srcomplex::{build_complex, invariants_from_complex};
use polyideal::stack::*;
use polyideal::Polyomino;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn facet_count(p: &Polyomino) -> u64 {
    build_complex(p).unwrap().facets().unwrap().len() as u64
}

#[test]
fn recursion_counts_facets() {
    for p in stack_polyominoes(9) {
        assert_eq!(multiplicity_recursive::<u64>(&p).unwrap(), facet_count(&p), "{p}");
    }
}

#[test]
fn each_step_splits_the_facets() {
    for p in stack_polyominoes(8) {
        if p.is_rectangle() {
            continue;
        }
        let d = decompose(&p).unwrap();
        assert!(d.p1.is_stack() && d.p2.is_stack(), "{p}");
        assert_eq!(facet_count(&p), facet_count(&d.p1) + facet_count(&d.p2), "{p}");
    }
}

#[test]
fn multiplicity_is_symmetric() {
    for p in stack_polyominoes(9) {
        let e = multiplicity_recursive::<u64>(&p).unwrap();
        assert_eq!(multiplicity_recursive::<u64>(&p.mirror()).unwrap(), e, "{p}");
        let t = p.transpose();
        if t.is_stack() {
            assert_eq!(multiplicity_recursive::<u64>(&t).unwrap(), e, "{p}");
        }
    }
}

#[test]
fn multiplicity_is_generic_over_the_count_type() {
    for p in stack_polyominoes(7) {
        let small = multiplicity_recursive::<u64>(&p).unwrap();
        let big = multiplicity_recursive::<BigUint>(&p).unwrap();
        assert_eq!(BigUint::from(small), big);
    }
    let big = Polyomino::rectangle(40, 40).unwrap();
    let e = multiplicity_recursive::<BigUint>(&big).unwrap();
    assert_eq!(e, binomial::<BigUint>(78, 39));
    assert!(e.to_u64().is_none());
}

#[test]
fn rectangles_match_binomials_and_facets() {
    for m in 2..=7 {
        for n in 2..=7 {
            let p = Polyomino::rectangle(m, n).unwrap();
            let e = multiplicity_recursive::<u64>(&p).unwrap();
            assert_eq!(e, binomial::<u64>(u64::from(m + n - 2), u64::from(m - 1)));
            if m <= 5 && n <= 5 {
                assert_eq!(e, facet_count(&p));
            }
        }
    }
}

#[test]
fn pk_formula_matrix() {
    for big_m in 3..=6 {
        for big_n in 3..=6 {
            for k in 2..big_n {
                let shape = pk_shape(big_m, big_n, k).unwrap();
                assert_eq!(shape.height(big_m), k);
                let closed = multiplicity_pk::<u64>(big_m, big_n, k).unwrap();
                assert_eq!(closed, multiplicity_recursive::<u64>(&shape).unwrap(), "({big_m},{big_n},{k})");
                if shape.vertices().len() <= 30 {
                    assert_eq!(closed, facet_count(&shape));
                }
            }
        }
    }
}

/// One-sided ladders by vertex-column heights; `None` if the parameters are
/// not realizable.
fn random_ladder(rng: &mut StdRng) -> Option<(u32, u32, Vec<u32>)> {
    let big_n = rng.gen_range(2..=5);
    let big_m = rng.gen_range(3..=7);
    let l = rng.gen_range(1..=big_m - 2);
    let mut ks: Vec<u32> = (0..l).map(|_| rng.gen_range(2..=big_n)).collect();
    ks.sort_unstable_by(|a, b| b.cmp(a));
    let shape = ladder_shape(big_m, big_n, &ks).ok()?;
    (shape.cell_count() <= 10).then_some((big_m, big_n, ks))
}

#[test]
fn ladder_matches_recursion_on_random_staircases() {
    let mut rng = StdRng::seed_from_u64(0x1add3);
    let mut tested = 0;
    while tested < 40 {
        let Some((big_m, big_n, ks)) = random_ladder(&mut rng) else { continue };
        let shape = ladder_shape(big_m, big_n, &ks).unwrap();
        let by_ladder = multiplicity_ladder::<u64>(big_m, big_n, &ks).unwrap();
        assert_eq!(by_ladder, multiplicity_recursive::<u64>(&shape).unwrap(), "({big_m},{big_n},{ks:?})");
        tested += 1;
    }
}

/// Multiplicity of the ladder with these vertex heights. Trailing height-1
/// columns hold no cells; a shape with at most one column left is a line,
/// whose coordinate ring is a polynomial ring (`e = 1`).
fn ladder_multiplicity_from_heights(mut heights: Vec<u32>) -> u64 {
    while heights.last() == Some(&1) {
        heights.pop();
    }
    if heights.len() < 2 {
        return 1;
    }
    let cells: Vec<u32> = heights[1..].iter().map(|h| h - 1).collect();
    multiplicity_recursive::<u64>(&Polyomino::from_column_heights(&cells).unwrap()).unwrap()
}

#[test]
fn ladder_one_step_sum() {
    // e(M, N, k_1..k_l) = sum_{j < k_l} e(M-1, N-j, k_1-j, .., k_{l-1}-j).
    for big_n in 2..=5 {
        for big_m in 3..=6 {
            for l in 1..=big_m - 2 {
                let mut ks = vec![big_n; l as usize];
                loop {
                    let whole = multiplicity_ladder::<u64>(big_m, big_n, &ks).unwrap();
                    let kl = *ks.last().unwrap();
                    let sum: u64 = (0..kl)
                        .map(|j| {
                            let mut heights = vec![big_n - j; (big_m - l) as usize];
                            heights.extend(ks[..ks.len() - 1].iter().map(|k| k - j));
                            ladder_multiplicity_from_heights(heights)
                        })
                        .sum();
                    assert_eq!(whole, sum, "({big_m},{big_n},{ks:?})");
                    // Next non-increasing sequence in 2..=N, lexicographically downward.
                    let Some(pos) = ks.iter().rposition(|&k| k > 2) else { break };
                    ks[pos] -= 1;
                    let v = ks[pos];
                    ks[pos + 1..].iter_mut().for_each(|k| *k = v);
                }
            }
        }
    }
}

#[test]
fn numerator_at_one_is_the_multiplicity() {
    for p in stack_polyominoes(9) {
        let inv = invariants_from_complex(&build_complex(&p).unwrap()).unwrap();
        assert_eq!(inv.multiplicity, multiplicity_recursive::<BigUint>(&p).unwrap());
        assert_eq!(inv.regularity as usize + 1, inv.h_vector.len());
        assert_eq!(inv.a_invariant, i64::from(inv.regularity) - i64::from(p.m() + p.n() - 1));
    }
}

#[test]
fn regularity_is_the_rook_number() {
    for p in convex_polyominoes(8) {
        let order = polyideal::toric::variable_order_unchecked(&p);
        if !polyideal::toric::verify_groebner(&p, &order).unwrap() {
            continue;
        }
        let ini = polyideal::toric::leading_term_ideal(&p, order);
        let c = polyideal::srcomplex::FlagComplex::from_initial_ideal(&p, &ini).unwrap();
        assert_eq!(invariants_from_complex(&c).unwrap().regularity, common::rook_number(&p), "{p}");
    }
}

#[test]
fn h_vectors_predict_the_hilbert_function() {
    for p in stack_polyominoes(7) {
        let c = build_complex(&p).unwrap();
        let h: Vec<i64> = invariants_from_complex(&c).unwrap().h_vector.iter().map(|x| x.to_i64().unwrap()).collect();
        let expected: Vec<i64> = common::hilbert_function(&p, 4).into_iter().map(|x| x as i64).collect();
        assert_eq!(common::hilbert_from_h(&h, c.d() as u64, 4), expected, "{p}");
    }
}

#[test]
fn closed_forms_hold_only_when_the_rook_number_allows() {
    // The closed forms predict reg = min{m,n} - 1; the computed value is the rook
    // number, which is smaller on, e.g., thin L-shapes.
    let mut failures = 0;
    for p in stack_polyominoes(8) {
        let inv = invariants_from_complex(&build_complex(&p).unwrap()).unwrap();
        let agrees = regularity_stack(&p).unwrap() == inv.regularity;
        assert_eq!(agrees, a_invariant_stack(&p).unwrap() == inv.a_invariant);
        assert_eq!(agrees, common::rook_number(&p) == p.m().min(p.n()) - 1, "{p}");
        failures += usize::from(!agrees);
    }
    assert!(failures > 0);
    let l_shape = Polyomino::parse_grid("#..\n#..\n###").unwrap();
    let inv = invariants_from_complex(&build_complex(&l_shape).unwrap()).unwrap();
    assert_eq!((inv.regularity, inv.a_invariant), (2, -5));
    assert_eq!((regularity_stack(&l_shape).unwrap(), a_invariant_stack(&l_shape).unwrap()), (3, -4));
}

#[test]
fn report_uses_the_computed_values() {
    let l_shape = Polyomino::parse_grid("#..\n#..\n###").unwrap();
    let r = full_report(&l_shape, &ReportOptions { oracle: true, ..Default::default() }).unwrap();
    assert_eq!((r.a_invariant, r.regularity), (Some(-5), Some(2)));
    assert_eq!(r.methods.a_invariant, Method::Complex);
    let cf = r.closed_form.unwrap();
    assert_eq!((cf.a_invariant, cf.regularity, cf.agrees), (-4, 3, Some(false)));
    let tiny = ReportOptions { max_facet_vertices: 4, ..Default::default() };
    let r = full_report(&l_shape, &tiny).unwrap();
    assert_eq!(r.methods.a_invariant, Method::DirectedCuts);
    assert_eq!((r.a_invariant, r.regularity, r.h_vector), (Some(-5), Some(2), None));
}
