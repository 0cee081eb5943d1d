//! `verify`: property suites comparing constructions and closed forms with
//! exact computation over a grid of instances.

use std::collections::HashMap;
use std::time::Instant;

use hhkit::automorphism::{
    aut_order, automorphism_group, sample_other_pairs, structural_same_tail, tail_preservation_check, typed_pairs,
    PairClass,
};
use hhkit::coloring::{chi_exact, constructive_coloring, orbit_fractional_coloring, ChiResult, Coloring};
use hhkit::families::{diameter_formula, hh_graph, hh_vertices, kneser_graph, odd_girth_formula, shift_graph};
use hhkit::group::{induced_vertex_permutation, symmetric_vertex_generators, Permutation, DEFAULT_GROUP_CAP};
use hhkit::homomorphism::{induced_violation, lift_kneser_subgraph, orbit_hom, shift_embed, tail_growth_embed, verify_hom, HomCheck};
use hhkit::independence::{
    alpha_prime, best_constructed_set, disjoint_pair, hybrid_set, hybrid_size, is_independent, is_maximal_independent,
    kneser_type_set, kneser_type_size, recursive_type_set, recursive_type_size, reverse_recursive_type_set,
};
use hhkit::structure::{expected_quotient_matrix, quotient_matrix, three_cell_partition};
use hhkit::{Budget, Error, FamilyParams, Graph, Label, Metric, VertexSet};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::report::{metric, ratio, Entry, Report};
use crate::tables::params_map;
use crate::Theorem;

pub const DEFAULT_SEED: u64 = 2024;

/// Instances with at most this many vertices get every pair checked by the
/// distinguisher suite.
const ALL_PAIRS_LIMIT: usize = 200;

pub struct Options {
    pub n_max: Option<u8>,
    pub instances: Option<Vec<FamilyParams>>,
    pub budget: f64,
    pub samples: usize,
    pub seed: u64,
}

fn fp(n: u8, r: u8) -> FamilyParams {
    FamilyParams::new(n, r).expect("grid parameters are valid")
}

/// `r = 2: n = 5..9`, `r = 3: n = 7..9`, `r = 4: n = 9..10`.
pub fn metric_grid() -> Vec<FamilyParams> {
    let mut out: Vec<FamilyParams> = (5..=9).map(|n| fp(n, 2)).collect();
    out.extend((7..=9).map(|n| fp(n, 3)));
    out.extend((9..=10).map(|n| fp(n, 4)));
    out
}

fn default_grid(t: Theorem) -> Vec<FamilyParams> {
    let list = |v: &[(u8, u8)]| v.iter().map(|&(n, r)| fp(n, r)).collect();
    match t {
        Theorem::Recursivebd => list(&[(4, 2), (5, 2), (6, 2), (7, 2), (6, 3), (7, 3)]),
        Theorem::Tailchi => list(&[(4, 2), (5, 2)]),
        Theorem::SNEmbed => list(&[(4, 2), (5, 2), (6, 2), (7, 2)]),
        Theorem::Frachom => list(&[(4, 2), (5, 2), (6, 2)]),
        Theorem::Aut => list(&[(5, 2), (6, 2), (7, 2), (7, 3)]),
        Theorem::Distinguisher => list(&[(5, 2), (6, 2), (7, 2), (9, 3)]),
        Theorem::Twobigsets => list(&[(5, 2), (6, 2), (7, 2), (8, 2), (9, 2), (10, 3)]),
        _ => metric_grid(),
    }
}

fn name_of(t: Theorem) -> &'static str {
    match t {
        Theorem::Diameter => "diameter",
        Theorem::Hhog => "hhog",
        Theorem::Subgraphs => "subgraphs",
        Theorem::Bestindybd => "bestindybd",
        Theorem::Twobigsets => "twobigsets",
        Theorem::Recursivebd => "recursivebd",
        Theorem::Tailchi => "tailchi",
        Theorem::SNEmbed => "s_n_embed",
        Theorem::Frachom => "frachom",
        Theorem::Quotient => "quotient",
        Theorem::Aut => "aut",
        Theorem::Distinguisher => "distinguisher",
    }
}

pub fn verify(t: Theorem, opts: &Options) -> Report {
    let start = Instant::now();
    let budget = Budget::seconds(opts.budget);
    let grid: Vec<FamilyParams> = opts
        .instances
        .clone()
        .unwrap_or_else(|| default_grid(t))
        .into_iter()
        .filter(|p| opts.n_max.is_none_or(|m| p.n <= m))
        .collect();
    let mut ctx = Ctx {
        budget,
        chi_cache: HashMap::new(),
    };
    let mut results = Vec::new();
    let mut witnesses = serde_json::Map::new();
    for &p in &grid {
        let out = match t {
            Theorem::Diameter => diameter(p),
            Theorem::Hhog => hhog(p),
            Theorem::Subgraphs => subgraphs(p),
            Theorem::Bestindybd => bestindybd(p),
            Theorem::Twobigsets => twobigsets(p),
            Theorem::Recursivebd => recursivebd(&mut ctx, p),
            Theorem::Tailchi => tailchi(&mut ctx, p),
            Theorem::SNEmbed => s_n_embed(&mut ctx, p),
            Theorem::Frachom => frachom(p),
            Theorem::Quotient => quotient(p),
            Theorem::Aut => aut(&ctx, p),
            Theorem::Distinguisher => distinguisher(p, opts, &mut witnesses),
        };
        match out {
            Ok(entries) => results.extend(entries),
            Err(e) => results.push(Entry::error(format!("H{p}"), &e)),
        }
    }
    let instances: Vec<String> = grid.iter().map(|p| format!("{}:{}", p.n, p.r)).collect();
    let mut params = params_map(&[
        ("theorem", json!(name_of(t))),
        ("instances", json!(instances)),
        ("budget", json!(opts.budget)),
    ]);
    if t == Theorem::Distinguisher {
        params.insert("seed".into(), json!(opts.seed));
        params.insert("samples".into(), json!(opts.samples));
    }
    Report::new(
        "verify",
        params,
        results,
        Some(serde_json::Value::Object(witnesses)).filter(|w| w.as_object().is_some_and(|m| !m.is_empty())),
        start.elapsed().as_millis() as u64,
    )
}

struct Ctx {
    budget: Budget,
    chi_cache: HashMap<String, ChiResult>,
}

impl Ctx {
    fn chi(&mut self, key: String, g: &Graph) -> ChiResult {
        let budget = self.budget;
        self.chi_cache.entry(key).or_insert_with(|| chi_exact(g, budget)).clone()
    }
}

type Suite = hhkit::Result<Vec<Entry>>;

fn diameter(p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let (f, c) = (diameter_formula(p), g.diameter());
    Ok(vec![Entry::check(
        format!("H{p} diameter"),
        json!({ "formula": metric(f), "computed": metric(c) }),
        f == c,
    )])
}

fn hhog(p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let (f, c) = (odd_girth_formula(p), g.odd_girth());
    let girth = g.girth();
    Ok(vec![
        Entry::check(
            format!("H{p} odd girth"),
            json!({ "formula": metric(f), "computed": metric(c) }),
            f == c,
        ),
        Entry::check(format!("H{p} girth"), json!({ "formula": 4, "computed": metric(girth) }), girth == Metric::Finite(4)),
        Entry::check(format!("H{p} triangle-free"), json!(g.find_triangle().is_none()), g.find_triangle().is_none()),
    ])
}

/// Greedy subgraph of K(n:r) with maximum degree at most `cap`, taking edges
/// in canonical order.
fn capped_subgraph(k: &Graph, cap: usize) -> hhkit::Result<Graph> {
    let mut deg = vec![0usize; k.vertex_count()];
    let mut edges = Vec::new();
    for (u, v) in k.edges() {
        if deg[u] < cap && deg[v] < cap {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(k.vertex_count(), &edges)?.with_labels(k.labels().unwrap_or(&[]).to_vec())
}

fn subgraphs(p: FamilyParams) -> Suite {
    p.require_connected()?;
    let k = kneser_graph(p)?;
    let h = hh_graph(p)?;
    let (num, den) = ((p.n - p.r) as usize, (p.n - 2 * p.r) as usize);
    let cap = (num - 1) / den;
    let mut out = Vec::new();
    if cap > 0 {
        let sub = capped_subgraph(&k, cap)?;
        let m = lift_kneser_subgraph(p, &sub)?;
        let check = verify_hom(&sub, &h, &m)?;
        out.push(Entry::check(
            format!("H{p} lift max degree {cap}"),
            json!({ "edges": sub.edge_count(), "homomorphism": check.is_valid(), "injective": m.is_injective() }),
            check.is_valid() && m.is_injective(),
        ));
    }
    if cap < k.max_degree() {
        let over = capped_subgraph(&k, cap + 1)?;
        let rejected = matches!(lift_kneser_subgraph(p, &over), Err(Error::DegreeCondition { .. }));
        out.push(Entry::check(
            format!("H{p} lift max degree {} rejected", cap + 1),
            json!(rejected),
            rejected,
        ));
    }
    Ok(out)
}

fn bestindybd(p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let mut out = Vec::new();
    let mut set_check = |name: &str, s: &hhkit::VertexSet, expected: u64, maximal: bool| -> hhkit::Result<()> {
        let independent = is_independent(&g, s)?;
        let is_max = !maximal || is_maximal_independent(&g, s)?;
        let mut value = json!({ "size": s.size(), "formula": expected, "independent": independent });
        if maximal {
            value["maximal"] = json!(is_max);
        }
        out.push(Entry::check(
            format!("H{p} {name}"),
            value,
            independent && is_max && s.size() as u64 == expected,
        ));
        Ok(())
    };
    set_check("kneser-type set", &kneser_type_set(p, 1)?, kneser_type_size(p), false)?;
    set_check("recursive-type set", &recursive_type_set(p)?, recursive_type_size(p), false)?;
    set_check("reverse recursive-type set", &reverse_recursive_type_set(p)?, recursive_type_size(p), false)?;
    set_check("hybrid set", &hybrid_set(p)?, hybrid_size(p), true)?;
    let best = best_constructed_set(p)?;
    let recursion = alpha_prime(p)?;
    set_check("best constructed set", &best, hhkit::families::alpha_lower_formula(p), true)?;
    out.push(Entry::check(
        format!("H{p} recursion"),
        json!({ "recursion": recursion, "constructed": best.size() }),
        recursion == best.size() as u64,
    ));
    let disjoint = !recursive_type_set(p)?.intersects(&reverse_recursive_type_set(p)?);
    out.push(Entry::check(format!("H{p} recursive-type sets disjoint"), json!(disjoint), disjoint));
    let (n, r) = (p.n as u64, p.r as u64);
    if n == r * r + 1 {
        let (a, b) = (kneser_type_size(p), hybrid_size(p));
        out.push(Entry::check(
            format!("H{p} regimes agree"),
            json!({ "kneser_type": a, "hybrid": b }),
            a == b,
        ));
    }
    Ok(out)
}

fn twobigsets(p: FamilyParams) -> Suite {
    let (n, r) = (p.n as u64, p.r as u64);
    if n < r * r + 1 {
        return Ok(vec![Entry::info(format!("H{p} disjoint pair"), json!("not applicable: n < r^2 + 1"))]);
    }
    let g = hh_graph(p)?;
    let (a, b) = disjoint_pair(p)?;
    let ok = is_independent(&g, &a)? && is_independent(&g, &b)? && !a.intersects(&b) && a.size() == b.size();
    let size_ok = a.size() as u64 == hybrid_size(p);
    let sigma = induced_vertex_permutation(&g, &Permutation::reversal(p.n))?;
    let mirrored = VertexSet::from_indices(g.vertex_count(), a.iter().map(|v| sigma.apply(v))) == b;
    Ok(vec![Entry::check(
        format!("H{p} disjoint pair"),
        json!({ "sizes": [a.size(), b.size()], "formula": hybrid_size(p), "disjoint": !a.intersects(&b), "mirrored": mirrored }),
        ok && size_ok && mirrored,
    )])
}

fn recursivebd(ctx: &mut Ctx, p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let c = constructive_coloring(p)?;
    let bound = (p.n - 2 * p.r + 2) as u32;
    let proper = c.verify(&g).is_ok();
    let mut out = vec![Entry::check(
        format!("H{p} constructive coloring"),
        json!({ "colors": c.color_count, "bound": bound, "proper": proper }),
        proper && c.color_count <= bound,
    )];
    let res = ctx.chi(format!("H{p}"), &g);
    let Some(chi) = res.chi() else {
        out.push(Entry::inexact(
            format!("H{p} chi"),
            json!({ "lower": res.lower, "upper": res.upper }),
        ));
        return Ok(out);
    };
    out.push(Entry::check(format!("H{p} chi <= n-2r+2"), json!({ "chi": chi, "bound": bound }), chi <= bound));
    if p.n > 2 * p.r {
        let q = fp(p.n - 1, p.r);
        let prev = ctx.chi(format!("H{q}"), &hh_graph(q)?);
        match prev.chi() {
            Some(before) => out.push(Entry::check(
                format!("H{p} chi step"),
                json!({ "previous": before, "chi": chi }),
                chi == before || chi == before + 1,
            )),
            None => out.push(Entry::inexact(format!("H{p} chi step"), json!({ "chi": chi }))),
        }
    }
    Ok(out)
}

fn tailchi(ctx: &mut Ctx, p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let res = ctx.chi(format!("H{p}"), &g);
    let Some(chi) = res.chi() else {
        return Ok(vec![Entry::inexact(
            format!("H{p} tail growth"),
            json!({ "lower": res.lower, "upper": res.upper }),
        )]);
    };
    let shifted = Coloring::new(res.coloring.assignment.iter().map(|c| c + p.n as u32 + 1).collect());
    let m = tail_growth_embed(p, &shifted)?;
    let q = fp(p.n + chi as u8, p.r + 1);
    let target = hh_graph(q)?;
    let check = verify_hom(&g, &target, &m)?;
    Ok(vec![Entry::check(
        format!("H{p} tail growth into H{q}"),
        json!({ "chi": chi, "homomorphism": check.is_valid(), "injective": m.is_injective() }),
        check.is_valid() && m.is_injective(),
    )])
}

fn s_n_embed(ctx: &mut Ctx, p: FamilyParams) -> Suite {
    let n = p.n;
    let s = shift_graph(n)?;
    let h = hh_graph(fp(n, 2))?;
    let m = shift_embed(n)?;
    let hom = verify_hom(&s, &h, &m)? == HomCheck::Valid;
    let induced = induced_violation(&s, &h, &m)?.is_none();
    let mut out = vec![Entry::check(
        format!("S{n} into H({n}:2)"),
        json!({ "vertices": s.vertex_count(), "edges": s.edge_count(), "homomorphism": hom, "induced": induced, "injective": m.is_injective() }),
        hom && induced && m.is_injective(),
    )];
    let cs = ctx.chi(format!("S{n}"), &s);
    let ch = ctx.chi(format!("H({n}:2)"), &h);
    match (cs.chi(), ch.chi()) {
        (Some(a), Some(b)) => out.push(Entry::check(
            format!("S{n} chromatic sandwich"),
            json!({ "shift": a, "hh": b }),
            a <= b && b <= a + 2,
        )),
        _ => out.push(Entry::inexact(format!("S{n} chromatic sandwich"), json!(null))),
    }
    Ok(out)
}

fn frachom(p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let s = best_constructed_set(p)?;
    let gens = symmetric_vertex_generators(&g, p.n)?;
    let m = orbit_hom(&g, &gens, &s)?;
    let expected = Ratio::new(g.vertex_count() as u64, s.size() as u64);
    let valid = m.verify(&g).is_ok();
    let cover = orbit_fractional_coloring(&g, &gens, &s)?;
    let cover_ok = cover.verify(&g).is_ok() && cover.total_weight == expected;
    Ok(vec![
        Entry::check(
            format!("H{p} orbit homomorphism"),
            json!({ "n_prime": m.ground_size, "r_prime": m.image_size, "ratio": ratio(m.ratio()), "set_size": s.size(), "valid": valid }),
            valid && m.ratio() == expected,
        ),
        Entry::check(
            format!("H{p} orbit fractional coloring"),
            json!({ "sets": cover.weighted_sets.len(), "total_weight": ratio(cover.total_weight) }),
            cover_ok,
        ),
    ])
}

fn quotient(p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let part = three_cell_partition(p)?;
    let expected = expected_quotient_matrix(p)?;
    match quotient_matrix(&g, &part) {
        Ok(q) => Ok(vec![Entry::check(
            format!("H{p} quotient"),
            json!({ "computed": q.entries, "expected": expected.entries, "cells": part.sizes() }),
            q == expected,
        )]),
        Err(e) => Ok(vec![Entry::error(format!("H{p} quotient"), &e)]),
    }
}

fn aut(ctx: &Ctx, p: FamilyParams) -> Suite {
    let g = hh_graph(p)?;
    let res = aut_order(&g, ctx.budget);
    let factorial: u128 = (1..=p.n as u128).product();
    let name = format!("H{p} automorphism group order");
    let value = json!({ "order": res.order.to_string(), "n_factorial": factorial.to_string() });
    let mut out = vec![if res.exact {
        Entry::check(name, value, res.order == factorial)
    } else {
        Entry::inexact(name, value)
    }];
    if res.exact && res.order <= 1000 {
        let all = automorphism_group(&g, ctx.budget, DEFAULT_GROUP_CAP)?;
        let ok = tail_preservation_check(&g, &all)?;
        out.push(Entry::check(
            format!("H{p} automorphisms preserve tails"),
            json!({ "group_size": all.len(), "preserved": ok }),
            ok,
        ));
    }
    Ok(out)
}

fn pair_json(g: &Graph, u: usize, v: usize) -> Value {
    let label = |x: usize| g.label(x).map(|l: Label| l.to_string());
    json!([{ "index": u + 1, "label": label(u) }, { "index": v + 1, "label": label(v) }])
}

fn distinguisher(p: FamilyParams, opts: &Options, witnesses: &mut serde_json::Map<String, Value>) -> Suite {
    let g = hh_graph(p)?;
    let verts = hh_vertices(p);
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    let mut first: Option<(usize, usize)> = None;
    let mut check = |u: usize, v: usize| -> hhkit::Result<()> {
        checked += 1;
        if structural_same_tail(&g, u, v)? != (verts[u].tail == verts[v].tail) {
            disagreements += 1;
            first.get_or_insert((u, v));
        }
        Ok(())
    };
    let mode;
    if verts.len() <= ALL_PAIRS_LIMIT {
        mode = "all pairs".to_string();
        for u in 0..verts.len() {
            for v in u + 1..verts.len() {
                check(u, v)?;
            }
        }
    } else {
        mode = format!("typed pairs + {} sampled other pairs (seed {})", opts.samples, opts.seed);
        for (u, v, class) in typed_pairs(p) {
            debug_assert_ne!(class, PairClass::Other);
            check(u, v)?;
        }
        for (u, v) in sample_other_pairs(p, opts.samples, opts.seed)? {
            check(u, v)?;
        }
    }
    if let Some((u, v)) = first {
        witnesses.insert(format!("H{p}"), pair_json(&g, u, v));
    }
    Ok(vec![Entry::check(
        format!("H{p} same-tail distinguisher"),
        json!({ "mode": mode, "pairs": checked, "disagreements": disagreements }),
        disagreements == 0,
    )])
}
