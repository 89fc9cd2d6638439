//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use wlp_core::complex::{builtin, PseudomanifoldStatus, SimplicialComplex};
use wlp_core::gorenstein::{even_cycle_presentation, idealize, Certainty, Quadric};
use wlp_core::graph::Graph;
use wlp_core::lefschetz::{
    criterion_degree1, criterion_top_degree, socle, wlp_full, wlp_full_with, wlp_in_degree_by_rank, AlgebraModel,
    Certificate, Degree1Case, HilbertSeries, Verdict, WlpOptions,
};
use wlp_core::linalg::{rank, IntMatrix};
use wlp_core::par::{derive_seed, Exec};
use wlp_core::validate::{random_complex, random_graph, random_pseudomanifolds_with_boundary};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wlp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wlp")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn c1_path_seven() -> Outcome {
    #[rustfmt::skip]
    let printed = IntMatrix::from_rows(&[
        vec![1, 0, 1, 0, 0, 0, 0], vec![1, 0, 0, 1, 0, 0, 0], vec![1, 0, 0, 0, 1, 0, 0],
        vec![1, 0, 0, 0, 0, 1, 0], vec![1, 0, 0, 0, 0, 0, 1], vec![0, 1, 0, 1, 0, 0, 0],
        vec![0, 1, 0, 0, 1, 0, 0], vec![0, 1, 0, 0, 0, 1, 0], vec![0, 1, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 1, 0, 0], vec![0, 0, 1, 0, 0, 1, 0], vec![0, 0, 1, 0, 0, 0, 1],
        vec![0, 0, 0, 1, 0, 1, 0], vec![0, 0, 0, 1, 0, 0, 1], vec![0, 0, 0, 0, 1, 0, 1],
    ]);
    let a = AlgebraModel::new(builtin("path_independence(7)").unwrap());
    let m = a.lefschetz_matrix(1).unwrap();
    ensure(m == printed, || format!("matrix differs:\n{m}"))?;
    let r = rank(&m).rank;
    ensure(r == 7, || format!("rank {r}"))?;
    let (code, out) = wlp(&["check", "--builtin", "path_independence(7)", "--degree", "1"]);
    ensure(code == 0 && out.contains("holds-injective"), || format!("cli exit {code}: {out}"))?;
    Ok("15x7 matrix matches, rank 7, cli holds".into())
}

fn c2_small_mixed_complex() -> Outcome {
    let c = builtin("example_2_1").unwrap();
    ensure(c.f_vector().0 == [1, 5, 6, 2], || format!("f-vector {}", c.f_vector()))?;
    let a = AlgebraModel::new(c);
    let series = HilbertSeries(&a.hilbert_function()).to_string();
    ensure(series == "1 + 5t + 6t^2 + 2t^3", || series.clone())?;
    let s = socle(&a);
    ensure(s.degree == 3 && !s.level, || format!("socle {} level {}", s.degree, s.level))?;
    Ok(format!("f (1,5,6,2), {series}, socle 3, not level"))
}

const BATCH: usize = 200;
const BATCH_SEED: u64 = 7;

fn c3_degree_one_equivalence() -> Outcome {
    let (mut agree, mut fails, mut case_two) = (0, 0, 0);
    for k in 0..BATCH {
        let c = random_complex(k, 9, BATCH_SEED).complex;
        let a = AlgebraModel::new(c.clone());
        let by_rank = wlp_in_degree_by_rank(&a, 1).unwrap().verdict;
        let by_criterion = criterion_degree1(&c).verdict;
        ensure(by_rank == by_criterion, || format!("sample {k} {c}: rank {by_rank:?}, criterion {by_criterion:?}"))?;
        agree += 1;
        fails += usize::from(!by_rank.holds());
        if let Some(Certificate::Degree1 { case: Degree1Case::Surjective, .. }) = criterion_degree1(&c).certificate {
            case_two += 1;
        }
    }
    Ok(format!("{agree}/{BATCH} agree ({fails} fail, {case_two} under |E| < |V|)"))
}

/// Bipartite components via a parity union-find.
fn bipartite_components(n: usize, edges: &[(usize, usize)]) -> usize {
    fn find(parent: &mut Vec<usize>, parity: &mut Vec<u8>, v: usize) -> (usize, u8) {
        if parent[v] == v {
            return (v, 0);
        }
        let (root, p) = find(parent, parity, parent[v]);
        parent[v] = root;
        parity[v] ^= p;
        (root, parity[v])
    }
    let (mut parent, mut parity, mut odd) = ((0..n).collect::<Vec<_>>(), vec![0u8; n], vec![false; n]);
    for &(a, b) in edges {
        let ((ra, pa), (rb, pb)) = (find(&mut parent, &mut parity, a), find(&mut parent, &mut parity, b));
        if ra == rb {
            odd[ra] |= pa == pb;
        } else {
            parent[rb] = ra;
            parity[rb] = pa ^ pb ^ 1;
            odd[ra] |= odd[rb];
        }
    }
    (0..n).filter(|&v| find(&mut parent, &mut parity, v).0 == v && !odd[v]).count()
}

fn c4_incidence_rank() -> Outcome {
    use rand::{Rng, SeedableRng};
    let count = 500;
    for k in 0..count {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(4, k));
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.9);
        let g = random_graph(n, p, &mut rng);
        let b = bipartite_components(n, g.edges());
        let r = rank(&g.incidence_matrix()).rank;
        ensure(r == n - b, || format!("graph {k}: rank {r}, |V| - b_G = {}", n - b))?;
    }
    Ok(format!("{count} random graphs"))
}

fn c5_octahedron() -> Outcome {
    let c = builtin("octahedron").unwrap();
    let dual = c.dual_graph().unwrap();
    // the cube graph: 8 vertices, 12 edges, 3-regular, bipartite
    ensure(dual.vertex_count() == 8 && dual.edge_count() == 12, || "dual graph size".into())?;
    ensure((0..8).all(|v| dual.degree(v) == 3), || "dual graph not cubic".into())?;
    ensure(bipartite_components(8, dual.edges()) == 1, || "dual graph not bipartite".into())?;
    let a = AlgebraModel::new(c.clone());
    ensure(criterion_top_degree(&c).unwrap().verdict == Verdict::Fails, || "criterion holds at 2".into())?;
    ensure(wlp_in_degree_by_rank(&a, 2).unwrap().verdict == Verdict::Fails, || "rank holds at 2".into())?;
    ensure(wlp_in_degree_by_rank(&a, 1).unwrap().verdict.holds(), || "rank fails at 1".into())?;
    ensure(criterion_degree1(&c).verdict.holds(), || "criterion fails at 1".into())?;
    Ok("cube dual graph; degree 2 fails, degree 1 holds".into())
}

fn c6_tetrahedron() -> Outcome {
    let c = builtin("tetrahedron_boundary").unwrap();
    let dual = c.dual_graph().unwrap();
    ensure(dual.vertex_count() == 4 && dual.edge_count() == 6, || "dual graph is not K4".into())?;
    ensure(bipartite_components(4, dual.edges()) == 0, || "dual graph bipartite".into())?;
    let a = AlgebraModel::new(c.clone());
    for i in 1..=2 {
        ensure(wlp_in_degree_by_rank(&a, i).unwrap().verdict.holds(), || format!("rank fails at {i}"))?;
    }
    ensure(criterion_degree1(&c).verdict.holds(), || "criterion fails at 1".into())?;
    ensure(criterion_top_degree(&c).unwrap().verdict.holds(), || "criterion fails at 2".into())?;
    Ok("K4 dual graph; degrees 1 and 2 hold".into())
}

fn c7_subdivision() -> Outcome {
    let sd = builtin("tetrahedron_boundary").unwrap().barycentric_subdivision();
    ensure(sd.f_vector().0 == [1, 14, 36, 24], || format!("f-vector {}", sd.f_vector()))?;
    ensure(sd.pseudomanifold_status() == PseudomanifoldStatus::WithoutBoundary, || "has boundary".into())?;
    ensure(criterion_top_degree(&sd).unwrap().verdict == Verdict::Fails, || "criterion holds".into())?;
    let a = AlgebraModel::new(sd);
    ensure(wlp_in_degree_by_rank(&a, 2).unwrap().verdict == Verdict::Fails, || "rank holds".into())?;
    Ok("f (1,14,36,24), closed, degree 2 fails".into())
}

fn c8_with_boundary() -> Outcome {
    let samples = random_pseudomanifolds_with_boundary(60, 8);
    let mut bases = BTreeSet::new();
    for (name, c) in &samples {
        ensure(matches!(c.pseudomanifold_status(), PseudomanifoldStatus::WithBoundary(_)), || {
            format!("{name} has no boundary")
        })?;
        let r = wlp_in_degree_by_rank(&AlgebraModel::new(c.clone()), 2).unwrap();
        ensure(r.verdict.is_surjective(), || format!("{name}: rank {:?} onto {}", r.rank, r.dim_to))?;
        bases.insert(name.split(" minus").next().unwrap().to_string());
    }
    Ok(format!("{} punctured surfaces from {} closed ones, all onto", samples.len(), bases.len()))
}

const EXPECTED_I: [&str; 12] = [
    "-x4*y1", "-x4*y2", "-x3*y1", "-x2*y1 + x4*y3", "x1*y1 - x3*y2", "-x2*y2 + x4*y4",
    "x1*y2", "-x3*y3", "-x2*y3", "x1*y3 - x3*y4", "-x2*y4", "x1*y4",
];

fn c9_gorenstein_example() -> Outcome {
    let t = idealize(&AlgebraModel::new(builtin("cycle(4)").unwrap())).unwrap();
    let h = t.hilbert_function();
    ensure(h == [1, 8, 8, 1], || format!("hilbert {h:?}"))?;
    let r = t.wlp_tilde_degree(1, 3, 9, Exec::default()).unwrap();
    ensure(r.verdict == Verdict::Fails, || format!("degree 1 {:?}", r.verdict))?;
    ensure(r.certainty == Certainty::DeterministicByTheorem, || format!("{:?}", r.certainty))?;
    let p = even_cycle_presentation(2).unwrap();
    let ours: BTreeSet<Quadric> = p.mixed.iter().map(|q| q.normalized()).collect();
    let expected: BTreeSet<Quadric> = EXPECTED_I.iter().map(|s| s.parse::<Quadric>().unwrap().normalized()).collect();
    ensure(ours == expected, || format!("mixed relations differ: {ours:?}"))?;
    Ok("(1,8,8,1), degree 1 fails by theorem, 12 mixed relations match".into())
}

fn c10_even_cycles() -> Outcome {
    for n in [8usize, 10, 12] {
        let t = idealize(&AlgebraModel::new(builtin(&format!("cycle({n})")).unwrap())).unwrap();
        let h = t.hilbert_function();
        ensure(h == [1, 2 * n, 2 * n, 1], || format!("cycle({n}) hilbert {h:?}"))?;
        let r = t.wlp_tilde_degree(1, 3, n as u64, Exec::default()).unwrap();
        ensure(r.verdict == Verdict::Fails, || format!("cycle({n}) degree 1 {:?}", r.verdict))?;
    }
    Ok("n = 8, 10, 12: (1,2n,2n,1), degree 1 fails".into())
}

/// Clique number by trying every vertex subset.
fn brute_clique_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(k, &a)| vs[k + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn c11_socle_bounds() -> Outcome {
    let mut complexes: Vec<(String, SimplicialComplex)> = [
        "cycle(4)", "cycle(7)", "path_independence(7)", "octahedron", "tetrahedron_boundary", "torus_7",
        "example_2_1",
    ]
    .iter()
    .map(|n| (n.to_string(), builtin(n).unwrap()))
    .collect();
    complexes.extend((0..BATCH).map(|k| (format!("sample {k}"), random_complex(k, 9, 11).complex)));
    let mut small = 0;
    for (name, c) in &complexes {
        let socle_degree = socle(&AlgebraModel::new(c.clone())).degree;
        let omega = brute_clique_number(&c.face_skeleton_graph());
        ensure(socle_degree <= omega, || format!("{name}: socle {socle_degree} > clique {omega}"))?;
        let d1 = criterion_degree1(c);
        if matches!(d1.certificate, Some(Certificate::Degree1 { case: Degree1Case::Surjective, .. }))
            && d1.verdict.holds()
        {
            small += 1;
            ensure(socle_degree <= 3, || format!("{name}: socle {socle_degree} under case (ii)"))?;
        }
    }
    Ok(format!("{} complexes, {small} under case (ii)", complexes.len()))
}

fn c12_propagation() -> Outcome {
    let mut cases = 0;
    for k in 0..BATCH {
        let a = AlgebraModel::new(random_complex(k, 9, BATCH_SEED).complex);
        let full = wlp_full_with(&a, WlpOptions { propagate: false, exec: Exec::Sequential });
        let Some(start) = full.degrees.iter().find(|d| d.verdict.is_surjective() && d.dim_from > d.dim_to && d.dim_to > 0)
        else {
            continue;
        };
        cases += 1;
        for d in full.degrees.iter().filter(|d| d.i > start.i) {
            ensure(d.verdict.is_surjective(), || format!("sample {k}: degree {} not onto", d.i))?;
        }
        let shortcut = wlp_full(&a);
        ensure(shortcut.degrees.iter().zip(&full.degrees).all(|(x, y)| x.verdict == y.verdict), || {
            format!("sample {k}: shortcut verdicts differ")
        })?;
    }
    ensure(cases > 0, || "no complex exercised propagation".into())?;
    Ok(format!("{cases} complexes with a surjective drop confirmed"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("path-7 matrix", 1, c1_path_seven),
        ("small mixed-dimension complex", 1, c2_small_mixed_complex),
        ("degree-1 criterion vs rank", 30, c3_degree_one_equivalence),
        ("incidence rank n - b_G", 30, c4_incidence_rank),
        ("octahedron", 1, c5_octahedron),
        ("tetrahedron boundary", 1, c6_tetrahedron),
        ("subdivided tetrahedron", 5, c7_subdivision),
        ("pseudomanifolds with boundary", 30, c8_with_boundary),
        ("idealized square", 1, c9_gorenstein_example),
        ("even-cycle family", 5, c10_even_cycles),
        ("socle and clique bounds", 30, c11_socle_bounds),
        ("surjectivity propagation", 30, c12_propagation),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(*limit) => Err(format!("{msg}, but over the {limit}s limit")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name:<30} {:>8.3}s  {msg}", k + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name:<30} {:>8.3}s  {msg}", k + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
