//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use polyideal::bigraph::{BipartiteGraph, MixedSubset, SideSet, DEFAULT_CUT_LIMIT, DEFAULT_SUBSET_BITS};
use polyideal::enumerate::{convex_polyominoes, stack_polyominoes};
use polyideal::gorenstein::*;
use polyideal::scalar::binomial;
use polyideal::srcomplex::*;
use polyideal::stack::*;
use polyideal::toric::*;
use polyideal::{fixtures, Polyomino, Vertex, VertexSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn set(list: &[(u32, u32)]) -> VertexSet {
    list.iter().map(|&t| Vertex::from(t)).collect()
}

fn cells(list: &[(u32, u32)]) -> Polyomino {
    Polyomino::from_cells(list.iter().copied()).unwrap()
}

fn facets(p: &Polyomino) -> Vec<VertexSet> {
    build_complex(p).unwrap().facets().unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1() -> Outcome {
    let p = fixtures::load("ex1");
    let ini = initial_ideal(&p).unwrap();
    let expected: BTreeSet<QuadMonomial> = [[(1, 1), (3, 2)], [(2, 1), (3, 2)], [(2, 1), (1, 2)], [(2, 1), (1, 3)], [(2, 2), (1, 3)]]
        .iter()
        .map(|[a, b]| QuadMonomial::new(Vertex::from(*a), Vertex::from(*b)))
        .collect();
    ensure(ini.generators == expected, "initial ideal differs")?;
    let printed: BTreeSet<VertexSet> = [
        set(&[(1, 1), (2, 1), (2, 2), (2, 3), (3, 1)]),
        set(&[(1, 1), (1, 2), (2, 2), (2, 3), (3, 1)]),
        set(&[(1, 1), (1, 2), (1, 3), (2, 3), (3, 1)]),
        set(&[(1, 2), (2, 2), (2, 3), (3, 1), (3, 2)]),
        set(&[(1, 2), (1, 3), (2, 3), (3, 1), (3, 2)]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<VertexSet> = facets(&p).into_iter().collect();
    ensure(got == printed, "facets differ from F1..F5")?;
    let e = multiplicity_recursive::<u64>(&p).unwrap();
    ensure(e == 5 && got.len() == 5, format!("multiplicity {e}, facets {}", got.len()))?;
    Ok("5 generators, facets F1..F5, e = 5 by facets and recursion".into())
}

fn criterion_2() -> Outcome {
    let p = fixtures::load("ex3");
    let e = multiplicity_recursive::<u64>(&p).unwrap();
    ensure(e == 14, format!("recursion gives {e}"))?;
    let d = decompose(&p).unwrap();
    ensure(d.p1 == cells(&[(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)]), "P1 panel differs")?;
    ensure(d.p2 == cells(&[(1, 1), (2, 1), (2, 2)]), "P2 panel differs")?;
    let count = facets(&p).len();
    ensure(count == 14, format!("facet oracle gives {count}"))?;
    Ok("e = 14, P1/P2 panels match, 14 facets".into())
}

fn criterion_3() -> Outcome {
    for m in 2..=7u32 {
        for n in 2..=7u32 {
            let p = Polyomino::rectangle(m, n).unwrap();
            let expected = binomial::<u64>(u64::from(m + n - 2), u64::from(m - 1));
            let e = multiplicity_recursive::<u64>(&p).unwrap();
            ensure(e == expected, format!("{m}x{n}: recursion {e}, binomial {expected}"))?;
            if m <= 5 && n <= 5 {
                let f = facets(&p).len() as u64;
                ensure(f == expected, format!("{m}x{n}: {f} facets"))?;
            }
        }
    }
    Ok("36 rectangles by formula, 16 by facets".into())
}

fn criterion_4() -> Outcome {
    let fig9 = is_gorenstein_convex(&fixtures::load("fig9")).unwrap();
    let certs: Vec<SideSet> = fig9.certificates.iter().map(|c| c.subset).collect();
    ensure(fig9.is_gorenstein, "fig9 not Gorenstein")?;
    ensure(certs == vec![SideSet::of(&[4]), SideSet::of(&[1, 4])], format!("fig9 certificates {certs:?}"))?;
    let fig8 = is_gorenstein_convex(&fixtures::load("fig8")).unwrap();
    let w = fig8.violator.ok_or("fig8 has no violator")?;
    ensure(
        !fig8.is_gorenstein
            && w.kind == ViolatorKind::Cardinality
            && w.subset.members == SideSet::of(&[4, 5, 6])
            && (w.observed, w.required) == (3, 4),
        format!("fig8 violator {w}"),
    )?;
    for (name, expected) in [("fig12_a", true), ("fig12_b", false)] {
        let p = fixtures::load(name);
        let verdicts = [
            is_gorenstein_stack_subsets(&p).unwrap().is_gorenstein,
            is_gorenstein_stack_corners(&p).unwrap(),
            is_gorenstein_convex(&p).unwrap().is_gorenstein,
        ];
        ensure(verdicts == [expected; 3], format!("{name}: {verdicts:?}"))?;
    }
    Ok(format!("fig9 certificates {{x4}}, {{x1,x4}}; fig8 {w}; fig12_a yes, fig12_b no"))
}

fn criterion_5() -> Outcome {
    let stacks = stack_polyominoes(9);
    let mut failures: Vec<(char, usize, Option<Polyomino>)> =
        "abcdefg".chars().map(|c| (c, 0, None)).collect();
    let mut fail = |item: usize, p: &Polyomino| {
        failures[item].1 += 1;
        let slot = &mut failures[item].2;
        if slot.as_ref().is_none_or(|q| p.cell_count() < q.cell_count()) {
            *slot = Some(p.clone());
        }
    };
    for p in &stacks {
        let (m, n) = (p.m(), p.n());
        let general = is_gorenstein_convex(p).unwrap().is_gorenstein;
        let cor1 = is_gorenstein_stack_subsets(p).unwrap().is_gorenstein;
        let cor2 = is_gorenstein_stack_corners(p).unwrap();
        if !(general == cor1 && cor1 == cor2) {
            fail(0, p);
        }
        let complex = build_complex(p).unwrap();
        let fs = complex.facets().unwrap();
        let q = complex.hilbert_numerator().unwrap();
        let inv = invariants(&q, complex.d()).unwrap();
        if cor1 != inv.h_vector.iter().eq(inv.h_vector.iter().rev()) {
            fail(1, p);
        }
        if multiplicity_recursive::<u64>(p).unwrap() != fs.len() as u64 {
            fail(2, p);
        }
        let deg_q = q.degree().unwrap() as u32;
        if !(inv.regularity == deg_q && deg_q == m.min(n) - 1) {
            fail(3, p);
        }
        let d = (m + n - 1) as i64;
        if !(-inv.a_invariant == i64::from(m.max(n)) && i64::from(m.max(n)) == d - i64::from(deg_q)) {
            fail(4, p);
        }
        if !fs.iter().all(|f| f.len() as u32 == m + n - 1) {
            fail(5, p);
        }
        if !verify_groebner(p, &variable_order(p).unwrap()).unwrap() {
            fail(6, p);
        }
    }
    let total = stacks.len();
    let bad: Vec<String> = failures
        .iter()
        .filter(|f| f.1 > 0)
        .map(|(c, k, p)| {
            let smallest = p.as_ref().unwrap();
            format!("({c}) fails on {k}/{total}, smallest {}", smallest.to_grid().trim_end().replace('\n', "/"))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{total} stacks, items (a)-(g) hold"))
    } else {
        Err(format!("{total} stacks; {}", bad.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    let p = fixtures::load("fig13");
    let g = BipartiteGraph::from_polyomino(&p).unwrap();
    ensure((g.m(), g.n(), g.edges().len()) == (3, 4, 10), "fig13 graph shape")?;
    let packing = g.max_disjoint_directed_cuts(DEFAULT_CUT_LIMIT).unwrap();
    ensure(packing.count == 4, format!("packing {}", packing.count))?;
    let rows = g.row_cut_family();
    let disjoint = rows.iter().enumerate().all(|(k, a)| rows[k + 1..].iter().all(|b| a.edges.is_disjoint(&b.edges)));
    ensure(rows.len() == 4 && disjoint && rows.iter().all(|c| g.is_directed_cut(c.source)), "row-cut family invalid")?;
    let a = invariants_from_complex(&build_complex(&p).unwrap()).unwrap().a_invariant;
    ensure(a == -4 && a_invariant_stack(&p).unwrap() == -4, format!("a-invariant {a}"))?;
    let t1 = MixedSubset::new(SideSet::of(&[3]), SideSet::of(&[2, 3]));
    ensure(g.delta_minus(t1) == set(&[(3, 1)]) && !g.is_directed_cut(t1), "T1 structure")?;
    let t2 = MixedSubset::new(SideSet::of(&[3]), SideSet::of(&[1, 2]));
    ensure(g.is_directed_cut(t2) && g.delta_plus(t2).len() == 4, "T2 structure")?;
    Ok("4 disjoint cuts (row family), a = -4, T1 not a cut, T2 a cut with 4 edges".into())
}

fn criterion_7() -> Outcome {
    let p = fixtures::load("fig14");
    let reg = invariants_from_complex(&build_complex(&p).unwrap()).unwrap().regularity;
    ensure(reg == 3 && regularity_stack(&p).unwrap() == 3, format!("regularity {reg}"))?;
    Ok("reg = 3".into())
}

fn criterion_8() -> Outcome {
    let mut corpus: Vec<Polyomino> =
        fixtures::all().into_iter().map(|(_, p)| p).filter(|p| p.is_convex()).collect();
    corpus.extend(convex_polyominoes(7));
    for p in &corpus {
        let g = BipartiteGraph::from_polyomino(p).unwrap();
        let (m, n) = (g.m(), g.n());
        ensure(g.is_two_connected(), format!("not 2-connected: {p}"))?;
        let hall = g.hall_violator(DEFAULT_SUBSET_BITS).unwrap().is_none();
        ensure(hall == g.has_perfect_matching(), format!("Hall vs matching: {p}"))?;
        for mask in 1..(1u64 << m) - 1 {
            let t = SideSet(mask);
            let ny = g.neighbors_y(t);
            let lemma1 = g.is_neighbor_vertical_interval(t) == g.induced_connected(MixedSubset::new(t, ny));
            let rest_y = ny.complement(n);
            let no_foreign = (1..=m)
                .filter(|&x| !t.contains(x))
                .all(|x| !g.neighbors_y(SideSet::of(&[x])).is_subset(ny));
            let closes = g.neighbors_x(rest_y) == t.complement(m);
            let lemma2 = no_foreign == closes;
            let rest = MixedSubset::new(t.complement(m), rest_y);
            let lemma3 = (closes && g.is_neighbor_horizontal_interval(rest_y))
                == (g.induced_has_edge(rest) && g.induced_connected(rest));
            ensure(lemma1 && lemma2 && lemma3, format!("lemma failure at T={t:?} in {p}"))?;
        }
    }
    Ok(format!("{} convex polyominoes", corpus.len()))
}

fn shifted(f: &VertexSet, (dx, dy): (u32, u32)) -> VertexSet {
    f.iter().map(|v| Vertex::new(v.i + dx, v.j + dy)).collect()
}

fn criterion_9() -> Outcome {
    let f = set(&[(1, 3), (1, 4), (2, 4), (3, 1), (3, 2), (4, 2), (4, 3), (5, 3), (6, 3)]);
    let g = set(&[(1, 3), (1, 4), (2, 4), (3, 2), (3, 3), (4, 3), (5, 3), (6, 1), (6, 2)]);
    ensure(transport_facet(&f, 3, 3, 6) == g && transport_facet_inverse(&g, 3, 3, 6) == f, "figa vector")?;
    let f = set(&[(1, 2), (1, 3), (1, 4), (2, 4), (3, 1), (4, 1), (4, 2), (5, 2)]);
    let g = set(&[(1, 2), (1, 3), (1, 4), (2, 4), (3, 1), (3, 2), (4, 2), (5, 1)]);
    ensure(transport_facet(&f, 3, 2, 5) == g && transport_facet_inverse(&g, 3, 2, 5) == f, "figb vector")?;

    let mut corpus: Vec<Polyomino> = fixtures::all()
        .into_iter()
        .map(|(_, p)| p)
        .filter(|p| p.is_stack() && p.cell_count() <= 8)
        .collect();
    corpus.extend(stack_polyominoes(8));
    let mut checked = 0;
    for p in corpus.iter().filter(|p| !p.is_rectangle()) {
        let d = decompose(p).unwrap();
        let all = facets(p);
        let del = deletion_facets(&all, d.v);
        let lk = link_facets(&all, d.v);
        let (f1, f2) = (facets(&d.p1), facets(&d.p2));
        ensure(del.len() == f1.len() && lk.len() == f2.len(), format!("counts differ on {p}"))?;
        let target: BTreeSet<VertexSet> = f1
            .iter()
            .map(|g| {
                let mut g = shifted(g, d.p1_offset);
                g.extend(d.cone_apex);
                g
            })
            .collect();
        for f in &del {
            let image = transport_facet(f, d.v.i, d.v.j, p.m());
            ensure(target.contains(&image), format!("transport leaves the target on {p}"))?;
            ensure(transport_facet_inverse(&image, d.v.i, d.v.j, p.m()) == *f, format!("round trip on {p}"))?;
        }
        checked += 1;
    }
    Ok(format!("both printed vectors; bijections on {checked} stacks"))
}

fn criterion_10() -> Outcome {
    for (m, n, k, e) in [(3, 3, 2, 5u64), (3, 4, 3, 9)] {
        let closed = multiplicity_pk::<u64>(m, n, k).unwrap();
        let oracle = facets(&pk_shape(m, n, k).unwrap()).len() as u64;
        ensure(closed == e && oracle == e, format!("P_k({m},{n},{k}): formula {closed}, facets {oracle}"))?;
    }
    let mut rng = StdRng::seed_from_u64(10);
    let mut seen = BTreeSet::new();
    while seen.len() < 24 {
        let big_n = rng.gen_range(2..=5u32);
        let big_m = rng.gen_range(3..=7u32);
        let l = rng.gen_range(1..=big_m - 2);
        let mut ks: Vec<u32> = (0..l).map(|_| rng.gen_range(2..=big_n)).collect();
        ks.sort_unstable_by(|a, b| b.cmp(a));
        let shape = ladder_shape(big_m, big_n, &ks).unwrap();
        if shape.cell_count() > 10 || !seen.insert(shape.clone()) {
            continue;
        }
        let ladder = multiplicity_ladder::<u64>(big_m, big_n, &ks).unwrap();
        let rec = multiplicity_recursive::<u64>(&shape).unwrap();
        ensure(ladder == rec, format!("ladder ({big_m},{big_n},{ks:?}): {ladder} vs {rec}"))?;
    }
    Ok(format!("P_k data points; {} distinct random ladders", seen.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("ex1 initial ideal and facets", criterion_1),
        ("ex3 multiplicity and decomposition", criterion_2),
        ("rectangle sweep", criterion_3),
        ("Gorenstein fixtures", criterion_4),
        ("exhaustive stack sweep", criterion_5),
        ("fig13 directed cuts", criterion_6),
        ("fig14 regularity", criterion_7),
        ("graph lemma suites", criterion_8),
        ("facet transport", criterion_9),
        ("convention calibration", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
