//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hhkit::automorphism::{
    aut_order, automorphism_group, sample_other_pairs, structural_same_tail, tail_preservation_check, typed_pairs,
};
use hhkit::coloring::{chi_exact, fractional_chromatic, Coloring};
use hhkit::families::{
    complete_graph, diameter_formula, hh_graph, hh_vertices, kneser_graph, odd_girth_formula, shift_graph, subset_labels,
};
use hhkit::group::{symmetric_vertex_generators, DEFAULT_GROUP_CAP};
use hhkit::homomorphism::{
    head_hom, induced_violation, kneser_path, lift_kneser_subgraph, orbit_hom, shift_embed, tail_growth_embed, tail_hom,
    verify_hom, HomCheck,
};
use hhkit::independence::{
    alpha_exact, best_constructed_set, disjoint_pair, hybrid_set, hybrid_size, is_independent, is_maximal_independent,
    kneser_type_set, kneser_type_size, recursive_type_set, recursive_type_size,
};
use hhkit::structure::{expected_quotient_matrix, quotient_matrix, three_cell_partition};
use hhkit::{Budget, FamilyParams, Graph, Label, Metric, Subset};
use num_rational::Ratio;

type Outcome = Result<String, String>;

fn fp(n: u8, r: u8) -> FamilyParams {
    FamilyParams::new(n, r).unwrap()
}

fn grid() -> Vec<FamilyParams> {
    let mut out: Vec<FamilyParams> = (5..=9).map(|n| fp(n, 2)).collect();
    out.extend((7..=9).map(|n| fp(n, 3)));
    out.extend((9..=10).map(|n| fp(n, 4)));
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))
}

fn e(err: hhkit::Error) -> String {
    err.to_string()
}

const TABLE1: [(u8, u8, usize); 8] = [
    (4, 2, 6),
    (5, 2, 12),
    (6, 2, 22),
    (7, 2, 37),
    (8, 2, 58),
    (6, 3, 30),
    (7, 3, 60),
    (8, 3, 105),
];

fn table1(alphas: &mut HashMap<(u8, u8), usize>) -> Outcome {
    let start = Instant::now();
    for (n, r, expected) in TABLE1 {
        let res = alpha_exact(&hh_graph(fp(n, r)).map_err(e)?, Budget::seconds(1200.0));
        ensure(res.optimality_certified, || format!("H({n}:{r}) not certified"))?;
        ensure(res.alpha == expected, || format!("H({n}:{r}): {} != {expected}", res.alpha))?;
        alphas.insert((n, r), res.alpha);
    }
    within(start, Duration::from_secs(20 * 60))?;
    Ok(format!("8/8 rows in {:.1}s", start.elapsed().as_secs_f64()))
}

fn table2() -> Outcome {
    let start = Instant::now();
    for (n, r, expected) in [(4, 2, 2), (5, 2, 3), (6, 2, 4), (7, 2, 4), (6, 3, 2), (7, 3, 3)] {
        let g = hh_graph(fp(n, r)).map_err(e)?;
        let res = chi_exact(&g, Budget::seconds(600.0));
        ensure(res.chi() == Some(expected), || {
            format!("H({n}:{r}): bounds {}..{} != {expected}", res.lower, res.upper)
        })?;
        res.coloring.verify(&g).map_err(e)?;
    }
    within(start, Duration::from_secs(10 * 60))?;
    Ok(format!("6/6 rows in {:.2}s", start.elapsed().as_secs_f64()))
}

fn table3(alphas: &HashMap<(u8, u8), usize>) -> Outcome {
    let rows: [(u8, u8, u64, u64); 8] = [
        (4, 2, 2, 1),
        (5, 2, 5, 2),
        (6, 2, 30, 11),
        (7, 2, 105, 37),
        (8, 2, 84, 29),
        (6, 3, 2, 1),
        (7, 3, 7, 3),
        (8, 3, 8, 3),
    ];
    for (n, r, num, den) in rows {
        let alpha = *alphas.get(&(n, r)).ok_or_else(|| format!("no certified alpha for H({n}:{r})"))?;
        let got = fractional_chromatic(fp(n, r), alpha as u64).map_err(e)?;
        ensure(got == Ratio::new(num, den), || format!("H({n}:{r}): {got} != {num}/{den}"))?;
    }
    Ok("8/8 rationals".into())
}

fn diameters() -> Outcome {
    let start = Instant::now();
    for p in grid() {
        let (f, c) = (diameter_formula(p), hh_graph(p).map_err(e)?.diameter());
        ensure(f == c, || format!("H{p}: formula {f:?}, BFS {c:?}"))?;
    }
    within(start, Duration::from_secs(10 * 60))?;
    Ok(format!("{} instances", grid().len()))
}

fn girths() -> Outcome {
    for p in grid() {
        let g = hh_graph(p).map_err(e)?;
        let (f, c) = (odd_girth_formula(p), g.odd_girth());
        ensure(f == c, || format!("H{p}: odd girth formula {f:?}, computed {c:?}"))?;
        ensure(g.girth() == Metric::Finite(4), || format!("H{p}: girth {:?}", g.girth()))?;
    }
    Ok(format!("{} instances", grid().len()))
}

fn quotients() -> Outcome {
    for p in grid() {
        let g = hh_graph(p).map_err(e)?;
        let q = quotient_matrix(&g, &three_cell_partition(p).map_err(e)?).map_err(e)?;
        let want = expected_quotient_matrix(p).map_err(e)?;
        ensure(q == want, || format!("H{p}: {q} != {want}"))?;
    }
    Ok(format!("{} instances", grid().len()))
}

fn independence() -> Outcome {
    let mut pairs = 0;
    for p in grid() {
        let g = hh_graph(p).map_err(e)?;
        let sets = [
            ("kneser-type", kneser_type_set(p, 1).map_err(e)?, kneser_type_size(p)),
            ("recursive-type", recursive_type_set(p).map_err(e)?, recursive_type_size(p)),
            ("hybrid", hybrid_set(p).map_err(e)?, hybrid_size(p)),
        ];
        for (name, s, size) in &sets {
            ensure(s.size() as u64 == *size, || format!("H{p} {name}: {} != {size}", s.size()))?;
            ensure(is_independent(&g, s).map_err(e)?, || format!("H{p} {name} not independent"))?;
        }
        ensure(is_maximal_independent(&g, &sets[2].1).map_err(e)?, || format!("H{p} hybrid not maximal"))?;
        let (n, r) = (p.n as u64, p.r as u64);
        if n == r * r + 1 {
            ensure(kneser_type_size(p) == hybrid_size(p), || format!("H{p}: regimes disagree"))?;
        }
        if n >= r * r + 1 {
            let (a, b) = disjoint_pair(p).map_err(e)?;
            let ok = is_independent(&g, &a).map_err(e)?
                && is_independent(&g, &b).map_err(e)?
                && !a.intersects(&b)
                && a.size() == b.size();
            ensure(ok, || format!("H{p}: bad disjoint pair"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} instances, {pairs} disjoint pairs", grid().len()))
}

fn hom_ok(src: &Graph, dst: &Graph, m: &hhkit::homomorphism::VertexMap, what: &str) -> Result<(), String> {
    match verify_hom(src, dst, m).map_err(e)? {
        HomCheck::Valid => Ok(()),
        HomCheck::Violation(u, v) => Err(format!("{what}: edge ({u},{v}) not preserved")),
    }
}

fn labeled_kneser_subgraph(sets: &[Subset], edges: &[(usize, usize)]) -> Graph {
    Graph::new(sets.len(), edges)
        .unwrap()
        .with_labels(sets.iter().map(|&s| Label::Subset(s)).collect())
        .unwrap()
}

fn homomorphisms() -> Outcome {
    for (n, r) in [(4, 2), (5, 2), (6, 2), (7, 3)] {
        let p = fp(n, r);
        let g = hh_graph(p).map_err(e)?;
        hom_ok(&g, &complete_graph(n).map_err(e)?, &head_hom(p).map_err(e)?, "head_hom")?;
        hom_ok(&g, &kneser_graph(p).map_err(e)?, &tail_hom(p).map_err(e)?, "tail_hom")?;
    }
    for ((n, r), (n2, r2)) in [((4, 2), (6, 3)), ((5, 2), (8, 3))] {
        let p = fp(n, r);
        let g = hh_graph(p).map_err(e)?;
        let chi = chi_exact(&g, Budget::unlimited());
        let m = chi.chi().ok_or("chromatic number not certified")? as u8;
        ensure(n + m == n2, || format!("H({n}:{r}) target is H({}:{r2})", n + m))?;
        let shifted = Coloring::new(chi.coloring.assignment.iter().map(|c| c + n as u32 + 1).collect());
        let emb = tail_growth_embed(p, &shifted).map_err(e)?;
        hom_ok(&g, &hh_graph(fp(n2, r2)).map_err(e)?, &emb, "tail_growth_embed")?;
        ensure(emb.is_injective(), || "tail_growth_embed not injective".into())?;
    }
    for n in 4..=7 {
        let (s, h) = (shift_graph(n).map_err(e)?, hh_graph(fp(n, 2)).map_err(e)?);
        let m = shift_embed(n).map_err(e)?;
        hom_ok(&s, &h, &m, "shift_embed")?;
        ensure(m.is_injective(), || format!("shift_embed({n}) not injective"))?;
        if let Some((u, v)) = induced_violation(&s, &h, &m).map_err(e)? {
            return Err(format!("shift_embed({n}) not induced at ({u},{v})"));
        }
    }
    let p52 = fp(5, 2);
    let h52 = hh_graph(p52).map_err(e)?;
    let cycle: Vec<Subset> = [[1, 2], [3, 4], [1, 5], [2, 3], [4, 5]]
        .iter()
        .map(|s| Subset::from_elements(s.iter().copied()))
        .collect();
    let c5 = labeled_kneser_subgraph(&cycle, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    hom_ok(&c5, &h52, &lift_kneser_subgraph(p52, &c5).map_err(e)?, "lift of a 5-cycle")?;
    let pairs = [([1, 2], [3, 4]), ([1, 3], [2, 5]), ([1, 4], [3, 5]), ([1, 5], [2, 4]), ([2, 3], [4, 5])];
    let ends: Vec<Subset> = pairs
        .iter()
        .flat_map(|(a, b)| [a, b])
        .map(|s| Subset::from_elements(s.iter().copied()))
        .collect();
    let matching: Vec<(usize, usize)> = (0..pairs.len()).map(|i| (2 * i, 2 * i + 1)).collect();
    let mg = labeled_kneser_subgraph(&ends, &matching);
    hom_ok(&mg, &h52, &lift_kneser_subgraph(p52, &mg).map_err(e)?, "lift of a matching")?;
    let k73 = kneser_graph(fp(7, 3)).map_err(e)?;
    let sets = subset_labels(&k73).map_err(e)?;
    let mut paths = 0;
    for x in 0..sets.len() {
        let dist = k73.bfs(x);
        for y in 0..sets.len() {
            if x == y {
                continue;
            }
            let path = kneser_path(7, 3, sets[x], sets[y]).map_err(e)?;
            let walk_ok = path.first() == Some(&sets[x])
                && path.last() == Some(&sets[y])
                && path.windows(2).all(|w| w[0].is_disjoint(w[1]) && w[0].len() == 3);
            ensure(walk_ok, || format!("kneser_path {{{}}} -> {{{}}} is not a walk", sets[x], sets[y]))?;
            ensure(Some((path.len() - 1) as u32) == dist[y], || {
                format!("kneser_path {{{}}} -> {{{}}}: length {} vs BFS {:?}", sets[x], sets[y], path.len() - 1, dist[y])
            })?;
            paths += 1;
        }
    }
    Ok(format!("all maps valid, {} matching edges, {paths} Kneser paths", matching.len()))
}

fn orbit_homs() -> Outcome {
    let mut ratios = Vec::new();
    for (n, want) in [(4u8, Ratio::new(2, 1)), (5, Ratio::new(5, 2)), (6, Ratio::new(30, 11))] {
        let p = fp(n, 2);
        let g = hh_graph(p).map_err(e)?;
        let gens = symmetric_vertex_generators(&g, n).map_err(e)?;
        let s = best_constructed_set(p).map_err(e)?;
        let m = orbit_hom(&g, &gens, &s).map_err(e)?;
        let group: usize = (1..=n as usize).product();
        ensure(m.ground_size == group, || format!("H{p}: |G| = {}", m.ground_size))?;
        ensure(m.image_size * g.vertex_count() == group * s.size(), || {
            format!("H{p}: r' = {} is not |G||S|/|V|", m.image_size)
        })?;
        ensure(m.images.iter().all(|x| x.size() == m.image_size), || format!("H{p}: image sizes vary"))?;
        if let Some((u, v)) = g.edges().find(|&(u, v)| m.images[u].intersects(&m.images[v])) {
            return Err(format!("H{p}: images of edge ({u},{v}) meet"));
        }
        m.verify(&g).map_err(e)?;
        ensure(m.ratio() == want, || format!("H{p}: n'/r' = {} != {want}", m.ratio()))?;
        ratios.push(m.ratio().to_string());
    }
    Ok(format!("n'/r' = {}", ratios.join(", ")))
}

fn automorphisms() -> Outcome {
    let start = Instant::now();
    for ((n, r), want) in [((5, 2), 120u128), ((6, 2), 720), ((7, 2), 5040), ((7, 3), 5040)] {
        let res = aut_order(&hh_graph(fp(n, r)).map_err(e)?, Budget::seconds(900.0));
        ensure(res.exact && res.order == want, || {
            format!("H({n}:{r}): order {} (exact {}) != {want}", res.order, res.exact)
        })?;
    }
    within(start, Duration::from_secs(15 * 60))?;
    let g = hh_graph(fp(5, 2)).map_err(e)?;
    let all = automorphism_group(&g, Budget::unlimited(), DEFAULT_GROUP_CAP).map_err(e)?;
    ensure(all.len() == 120, || format!("enumerated {} automorphisms of H(5:2)", all.len()))?;
    ensure(tail_preservation_check(&g, &all).map_err(e)?, || "H(5:2) tails not preserved".into())?;
    Ok(format!("orders 120, 720, 5040, 5040 in {:.2}s", start.elapsed().as_secs_f64()))
}

fn distinguisher() -> Outcome {
    let mut checked = 0usize;
    let mut test = |g: &Graph, tails: &[Subset], u: usize, v: usize| -> Result<(), String> {
        checked += 1;
        let got = structural_same_tail(g, u, v).map_err(e)?;
        ensure(got == (tails[u] == tails[v]), || format!("disagreement at ({u},{v})"))
    };
    for n in 5..=7 {
        let p = fp(n, 2);
        let g = hh_graph(p).map_err(e)?;
        let tails: Vec<Subset> = hh_vertices(p).iter().map(|v| v.tail).collect();
        for u in 0..tails.len() {
            for v in u + 1..tails.len() {
                test(&g, &tails, u, v)?;
            }
        }
    }
    let p = fp(9, 3);
    let g = hh_graph(p).map_err(e)?;
    let tails: Vec<Subset> = hh_vertices(p).iter().map(|v| v.tail).collect();
    for (u, v, _) in typed_pairs(p) {
        test(&g, &tails, u, v)?;
    }
    let samples = sample_other_pairs(p, 10_000, 2024).map_err(e)?;
    ensure(samples.len() == 10_000, || format!("{} samples", samples.len()))?;
    for (u, v) in samples {
        test(&g, &tails, u, v)?;
    }
    Ok(format!("{checked} pairs, 0 disagreements"))
}

fn structural() -> Outcome {
    for ((n, r), count) in [((4, 2), 3), ((6, 3), 10)] {
        let g = hh_graph(fp(n, r)).map_err(e)?;
        let comps = g.connected_components();
        ensure(comps.len() == count, || format!("H({n}:{r}) has {} components", comps.len()))?;
        let r = r as usize;
        for c in &comps {
            let sub = g.induced_subgraph(&hhkit::VertexSet::from_indices(g.vertex_count(), c.iter().copied()));
            let sides = sub.bipartition().ok_or_else(|| format!("H({n}:{r}) component not bipartite"))?;
            let left = sides.iter().filter(|&&s| s == 0).count();
            let ok = c.len() == 2 * r && left == r && sub.edge_count() == r * r;
            ensure(ok, || format!("H({n}:{r}) component is not K({r},{r})"))?;
        }
    }
    for p in grid() {
        let g = hh_graph(p).map_err(e)?;
        ensure(g.find_triangle().is_none(), || format!("H{p} has a triangle"))?;
    }
    let mut sandwich = Vec::new();
    for n in 4..=7 {
        let s = chi_exact(&shift_graph(n).map_err(e)?, Budget::unlimited()).chi().ok_or("uncertified")?;
        let h = chi_exact(&hh_graph(fp(n, 2)).map_err(e)?, Budget::unlimited()).chi().ok_or("uncertified")?;
        ensure(s <= h && h <= s + 2, || format!("n = {n}: chi(S) = {s}, chi(H) = {h}"))?;
        sandwich.push(format!("{s}<={h}"));
    }
    Ok(format!("components 3 and 10, triangle-free grid, sandwich {}", sandwich.join(" ")))
}

fn main() -> ExitCode {
    let mut alphas = HashMap::new();
    let t1 = table1(&mut alphas);
    let outcomes: Vec<(&str, Outcome)> = vec![
        ("table 1 independence numbers", t1),
        ("table 2 chromatic numbers", table2()),
        ("table 3 fractional chromatic numbers", table3(&alphas)),
        ("diameter formula", diameters()),
        ("girth and odd girth", girths()),
        ("three-cell quotient matrix", quotients()),
        ("independent set constructions", independence()),
        ("homomorphisms", homomorphisms()),
        ("orbit homomorphism", orbit_homs()),
        ("automorphism group orders", automorphisms()),
        ("same-tail distinguisher", distinguisher()),
        ("structural facts", structural()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in outcomes.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
