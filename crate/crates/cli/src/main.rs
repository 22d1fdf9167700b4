//! `polyideal`: Gorenstein classification and invariants of polyomino ideals.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyideal::bigraph::DEFAULT_SUBSET_BITS;
use polyideal::gorenstein::{
    is_gorenstein_convex_with_limit, is_gorenstein_stack_corners, is_gorenstein_stack_subsets,
    GorensteinVerdict,
};
use polyideal::srcomplex::{
    self, deletion_facets, link_facets, transport_facet, transport_facet_inverse, FlagComplex,
    DEFAULT_MAX_VERTICES,
};
use polyideal::stack::{decompose, multiplicity_recursive, Decomposition, Method};
use polyideal::toric::{self, VarOrder};
use polyideal::{fixtures, full_report, Error, Multiplicity, Polyomino, ReportOptions, Vertex, VertexSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "polyideal", version, about = "Invariants of polyomino ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classification: convexity, stack shape, box size, heights, corners.
    Check(Common),
    /// Gorenstein verdict with a violating subset or the certificates.
    Gorenstein(Common),
    /// a-invariant, regularity, multiplicity, h-vector and how each was obtained.
    Invariants(Common),
    /// Facets of the simplicial complex of the initial ideal.
    Facets(Common),
    /// One step of the multiplicity recursion for a stack polyomino.
    Decompose(Common),
    /// Inner minors, their leading terms and the Gröbner verification verdict.
    Groebner(Common),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "inline"]))]
struct Common {
    /// Grid or JSON file; a bundled fixture name (e.g. `fig8`) also works.
    input: Option<PathBuf>,
    /// Polyomino given on the command line; `/` separates grid rows.
    #[arg(long)]
    inline: Option<String>,
    /// Machine-readable output with sorted keys.
    #[arg(long)]
    json: bool,
    /// Run every brute-force cross-check within the size limits; exit 2 on disagreement.
    #[arg(long)]
    oracle: bool,
    /// Largest side length for exhaustive subset sweeps.
    #[arg(long, default_value_t = DEFAULT_SUBSET_BITS)]
    max_subset_bits: u32,
    /// Largest vertex count for which the complex is enumerated.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_facet_vertices: usize,
    /// Variable order for non-stack inputs, largest first, e.g. `2,3>2,2>1,3>...`.
    #[arg(long)]
    order: Option<String>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_internal() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: format!("oracle disagreement: {}", message.into()) }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    // Usage errors are validation errors: exit 1, not clap's default 2.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: &Command) -> Outcome {
    let (args, handler): (&Common, fn(&Polyomino, &Common) -> Outcome) = match command {
        Command::Check(a) => (a, check),
        Command::Gorenstein(a) => (a, gorenstein),
        Command::Invariants(a) => (a, invariants),
        Command::Facets(a) => (a, facets),
        Command::Decompose(a) => (a, decomposition),
        Command::Groebner(a) => (a, groebner),
    };
    let p = load(args)?;
    handler(&p, args)
}

fn load(args: &Common) -> Result<Polyomino, Failure> {
    let text = match (&args.input, &args.inline) {
        (_, Some(inline)) => inline.replace('/', "\n"),
        (Some(path), None) => match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
                match fixtures::grid(stem).filter(|_| path.components().count() == 1) {
                    Some(grid) => grid.to_string(),
                    None => return Err(usage(format!("cannot read {}: {e}", path.display()))),
                }
            }
        },
        (None, None) => unreachable!("clap requires an input source"),
    };
    Ok(Polyomino::parse(&text)?)
}

fn parse_order(spec: &str) -> Result<VarOrder, Failure> {
    let numbers: Vec<u32> = spec
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("bad number {s} in --order"))))
        .collect::<Result<_, _>>()?;
    if numbers.is_empty() || !numbers.len().is_multiple_of(2) {
        return Err(usage("--order needs a list of i,j pairs"));
    }
    let vars = numbers.chunks(2).map(|c| Vertex::new(c[0], c[1])).collect();
    Ok(VarOrder::from_descending(vars)?)
}

fn order_for(p: &Polyomino, args: &Common) -> Result<VarOrder, Failure> {
    match &args.order {
        Some(spec) => {
            let ord = parse_order(spec)?;
            if !ord.covers(p) {
                return Err(usage("--order must rank exactly the vertices of the polyomino"));
            }
            Ok(ord)
        }
        None => Ok(toric::variable_order_unchecked(p)),
    }
}

/// One line of JSON; `Value` maps keep their keys sorted.
fn to_json(value: impl serde::Serialize) -> String {
    let value: Value = serde_json::to_value(value).expect("reports serialize");
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn vertex_list(set: &VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn check(p: &Polyomino, args: &Common) -> Outcome {
    let convex = p.is_convex();
    let stack = p.is_stack();
    if args.oracle {
        if convex != p.has_monotone_paths() {
            return Err(mismatch("convexity vs monotone paths"));
        }
        let full_bottom = (1..p.m()).all(|c| p.contains(polyideal::Cell::new(c, 1)));
        if stack != (convex && full_bottom) {
            return Err(mismatch("stack shape vs convex with full bottom row"));
        }
    }
    let corners = p.corners();
    if args.json {
        return Ok(to_json(json!({
            "polyomino": true,
            "convex": convex,
            "stack": stack,
            "m": p.m(),
            "n": p.n(),
            "cells": p.cell_count(),
            "heights": p.heights(),
            "corners": corners,
        })));
    }
    let mut out = String::new();
    writeln!(out, "polyomino: {} cells, m={}, n={}", p.cell_count(), p.m(), p.n()).unwrap();
    writeln!(out, "convex: {convex}").unwrap();
    writeln!(out, "stack: {stack}").unwrap();
    let heights: Vec<String> = p.heights().iter().map(u32::to_string).collect();
    writeln!(out, "heights: {}", heights.join(" ")).unwrap();
    writeln!(out, "inside corners: {}", vertex_list(&corners.inside)).unwrap();
    writeln!(out, "outside corners: {}", vertex_list(&corners.outside)).unwrap();
    Ok(out)
}

/// The verdict of the general criterion, checked against the stack criteria and,
/// with `--oracle`, against the symmetry of the h-vector.
fn gorenstein_verdict(p: &Polyomino, args: &Common) -> Result<(GorensteinVerdict, Vec<String>), Failure> {
    let verdict = is_gorenstein_convex_with_limit(p, args.max_subset_bits)?;
    let mut checks = Vec::new();
    if p.is_stack() {
        let subsets = is_gorenstein_stack_subsets(p)?.is_gorenstein;
        let corners = is_gorenstein_stack_corners(p)?;
        if subsets != verdict.is_gorenstein || corners != verdict.is_gorenstein {
            return Err(mismatch(format!(
                "convex criterion {}, subset criterion {subsets}, corner criterion {corners}",
                verdict.is_gorenstein
            )));
        }
        checks.push("stack subset and corner criteria agree".to_string());
    }
    if args.oracle && p.vertices().len() <= args.max_facet_vertices {
        let ini = toric::initial_ideal_with_order(p, order_for(p, args)?);
        match ini {
            Ok(ini) => {
                let c = FlagComplex::from_initial_ideal(p, &ini)?;
                let q = c.hilbert_numerator_with_limit(args.max_facet_vertices)?;
                let h = srcomplex::invariants(&q, c.d())?.h_vector;
                let palindromic = h.iter().eq(h.iter().rev());
                if palindromic != verdict.is_gorenstein {
                    return Err(mismatch(format!("h-vector symmetry {palindromic}")));
                }
                checks.push("h-vector symmetry agrees".to_string());
            }
            Err(Error::GroebnerUnverified) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok((verdict, checks))
}

fn gorenstein(p: &Polyomino, args: &Common) -> Outcome {
    let (verdict, checks) = gorenstein_verdict(p, args)?;
    if args.json {
        return Ok(to_json(json!({ "verdict": verdict, "checks": checks })));
    }
    let mut out = String::new();
    match &verdict.violator {
        Some(w) => writeln!(out, "NOT Gorenstein; {w}").unwrap(),
        None => {
            writeln!(out, "Gorenstein").unwrap();
            for c in &verdict.certificates {
                writeln!(out, "  T={c}").unwrap();
            }
        }
    }
    for c in checks {
        writeln!(out, "check: {c}").unwrap();
    }
    Ok(out)
}

fn invariants(p: &Polyomino, args: &Common) -> Outcome {
    let order = match &args.order {
        Some(_) => Some(order_for(p, args)?),
        None => None,
    };
    let opts = ReportOptions {
        max_facet_vertices: args.max_facet_vertices,
        max_subset_bits: args.max_subset_bits,
        oracle: args.oracle,
        order,
    };
    let r = full_report(p, &opts)?;
    if args.json {
        return Ok(to_json(&r));
    }
    let show = |x: Option<String>| x.unwrap_or_else(|| "unavailable".into());
    let tag = |m: Method| serde_json::to_value(m).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let m = &r.methods;
    let mut out = String::new();
    writeln!(out, "m={}, n={}, stack: {}, dim={}", r.m, r.n, r.stack, r.d).unwrap();
    writeln!(out, "gorenstein: {} [{}]", r.gorenstein, tag(m.gorenstein)).unwrap();
    writeln!(out, "a-invariant: {} [{}]", show(r.a_invariant.map(|a| a.to_string())), tag(m.a_invariant)).unwrap();
    writeln!(out, "regularity: {} [{}]", show(r.regularity.map(|x| x.to_string())), tag(m.regularity)).unwrap();
    writeln!(out, "multiplicity: {} [{}]", show(r.multiplicity.as_ref().map(|x| x.to_string())), tag(m.multiplicity))
        .unwrap();
    let h = r.h_vector.as_ref().map(|h| h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    writeln!(out, "h-vector: {} [{}]", show(h), tag(m.h_vector)).unwrap();
    if let Some(cf) = &r.closed_form {
        writeln!(out, "closed forms: a={}, reg={}", cf.a_invariant, cf.regularity).unwrap();
    }
    for c in &r.checks {
        writeln!(out, "check: {c}").unwrap();
    }
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    Ok(out)
}

fn complex_of(p: &Polyomino, args: &Common) -> Result<FlagComplex, Failure> {
    let ini = toric::initial_ideal_with_order(p, order_for(p, args)?)?;
    Ok(FlagComplex::from_initial_ideal(p, &ini)?)
}

fn facets(p: &Polyomino, args: &Common) -> Outcome {
    let c = complex_of(p, args)?;
    let list = c.facets_with_limit(args.max_facet_vertices)?;
    if args.oracle && p.is_stack() {
        let e: Multiplicity = multiplicity_recursive(p)?;
        if e != Multiplicity::from(list.len()) {
            return Err(mismatch(format!("{} facets, recursion gives {e}", list.len())));
        }
    }
    if args.json {
        return Ok(to_json(json!({ "dimension": c.d() - 1, "count": list.len(), "facets": list })));
    }
    let mut out = String::new();
    writeln!(out, "{} facets of size {}", list.len(), c.d()).unwrap();
    for f in &list {
        writeln!(out, "{}", vertex_list(f)).unwrap();
    }
    Ok(out)
}

/// The facet bijections behind one recursion step.
fn check_decomposition(p: &Polyomino, d: &Decomposition, limit: usize) -> Result<(), Failure> {
    let facets_of = |q: &Polyomino| -> Result<Vec<VertexSet>, Failure> {
        Ok(srcomplex::build_complex(q)?.facets_with_limit(limit)?)
    };
    let all = facets_of(p)?;
    let del = deletion_facets(&all, d.v);
    let lk = link_facets(&all, d.v);
    let (f1, f2) = (facets_of(&d.p1)?, facets_of(&d.p2)?);
    if del.len() != f1.len() || lk.len() != f2.len() {
        return Err(mismatch(format!(
            "deletion/link have {}/{} facets, P1/P2 have {}/{}",
            del.len(),
            lk.len(),
            f1.len(),
            f2.len()
        )));
    }
    let (dx, dy) = d.p1_offset;
    let target: BTreeSet<VertexSet> = f1
        .iter()
        .map(|g| {
            let mut g: VertexSet = g.iter().map(|v| Vertex::new(v.i + dx, v.j + dy)).collect();
            g.extend(d.cone_apex);
            g
        })
        .collect();
    for f in &del {
        let image = transport_facet(f, d.v.i, d.v.j, p.m());
        if !target.contains(&image) || transport_facet_inverse(&image, d.v.i, d.v.j, p.m()) != *f {
            return Err(mismatch(format!("transport of {}", vertex_list(f))));
        }
    }
    Ok(())
}

fn decomposition(p: &Polyomino, args: &Common) -> Outcome {
    let d = decompose(p)?;
    if args.oracle && p.vertices().len() <= args.max_facet_vertices {
        check_decomposition(p, &d, args.max_facet_vertices)?;
    }
    if args.json {
        return Ok(to_json(json!({
            "v": d.v,
            "p1": d.p1,
            "p2": d.p2,
            "p1_offset": d.p1_offset,
            "p2_offset": d.p2_offset,
            "cone_apex": d.cone_apex,
        })));
    }
    let mut out = String::new();
    writeln!(out, "v = {}", d.v).unwrap();
    writeln!(out, "P1 (offset {:?}):\n{}", d.p1_offset, d.p1.to_grid().trim_end()).unwrap();
    writeln!(out, "P2 (offset {:?}):\n{}", d.p2_offset, d.p2.to_grid().trim_end()).unwrap();
    if let Some(apex) = d.cone_apex {
        writeln!(out, "cone apex: {apex}").unwrap();
    }
    Ok(out)
}

fn groebner(p: &Polyomino, args: &Common) -> Outcome {
    let ord = order_for(p, args)?;
    let verified = toric::verify_groebner(p, &ord)?;
    let minors = toric::inner_minors(p);
    if args.oracle {
        for g in &minors {
            if toric::leading_term(g, &ord) != toric::leading_term_generic(g, &ord) {
                return Err(mismatch(format!("leading term of {g}")));
            }
        }
    }
    if args.json {
        let rows: Vec<Value> = minors
            .iter()
            .map(|g| json!({ "minor": g.to_string(), "leading_term": toric::leading_term(g, &ord).to_string() }))
            .collect();
        return Ok(to_json(json!({
            "order": ord.descending(),
            "generators": rows,
            "groebner_basis": verified,
        })));
    }
    let mut out = toric::dump(p, &ord);
    writeln!(out, "Groebner basis: {verified}").unwrap();
    Ok(out)
}
