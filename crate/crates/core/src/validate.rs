//! Seeded random complexes and the invariant suite run against them.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{
    independence_complex, octahedron, tetrahedron_boundary, torus_7, PseudomanifoldStatus, SimplicialComplex,
};
use crate::graph::Graph;
use crate::lefschetz::{
    cross_validate, socle_clique_bound_check, wlp_full_with, AlgebraModel, RouteCheck, WlpOptions,
};
use crate::linalg;
use crate::par::{derive_seed, Exec};

pub const EDGE_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.7];

/// Erdős–Rényi graph `G(m, p)`.
pub fn random_graph(m: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(m, edges).expect("valid edges")
}

/// Downward closure of a few random vertex sets on `1..=m`. Some labels may
/// end up in no facet.
pub fn random_facet_complex(m: usize, rng: &mut impl Rng) -> SimplicialComplex {
    let labels: Vec<u32> = (1..=m as u32).collect();
    let count = rng.gen_range(1..=m + 1);
    let facets: Vec<Vec<u32>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=m.min(4));
            let mut f: Vec<u32> = labels.choose_multiple(rng, size).copied().collect();
            f.sort_unstable();
            f
        })
        .collect();
    SimplicialComplex::from_facets(m as u32, facets).expect("labels in range")
}

/// A single seeded random complex on `m` vertices: the independence complex
/// of `G(m, p)`, or a random facet set when `p` is `None`.
pub fn seeded_complex(m: usize, p: Option<f64>, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match p {
        Some(p) => independence_complex(&random_graph(m, p, &mut rng)),
        None => random_facet_complex(m, &mut rng),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    /// Independence complex of `G(m, p)`.
    Flag { p: f64 },
    FacetSet,
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub index: usize,
    pub origin: Origin,
    pub complex: SimplicialComplex,
}

/// The `index`-th complex of the batch with master seed `seed`. Vertex counts
/// are uniform in `1..=max_vertices`; every fourth sample is a random facet
/// set, the rest are flag complexes cycling through [`EDGE_PROBABILITIES`].
pub fn random_complex(index: usize, max_vertices: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, index as u64));
    let m = rng.gen_range(1..=max_vertices.max(1));
    let (origin, complex) = if index % 4 == 3 {
        (Origin::FacetSet, random_facet_complex(m, &mut rng))
    } else {
        let p = EDGE_PROBABILITIES[index % 4 % EDGE_PROBABILITIES.len()];
        (Origin::Flag { p }, independence_complex(&random_graph(m, p, &mut rng)))
    };
    Sample { index, origin, complex }
}

/// Closed surfaces used to grow pseudomanifolds with boundary.
pub fn closed_surface_pool() -> Vec<(String, SimplicialComplex)> {
    let mut pool = Vec::new();
    for (name, c) in [
        ("tetrahedron_boundary", tetrahedron_boundary()),
        ("octahedron", octahedron()),
        ("torus_7", torus_7()),
    ] {
        pool.push((format!("sd({name})"), c.barycentric_subdivision()));
        pool.push((name.to_string(), c));
    }
    pool
}

/// `count` 2-pseudomanifolds with boundary, each a closed surface from
/// [`closed_surface_pool`] minus one random facet.
pub fn random_pseudomanifolds_with_boundary(count: usize, seed: u64) -> Vec<(String, SimplicialComplex)> {
    let pool = closed_surface_pool();
    (0..count)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, k as u64));
            let (name, closed) = pool.choose(&mut rng).expect("nonempty pool");
            let facet = rng.gen_range(0..closed.facets().len());
            let punctured = closed.without_facet(facet).expect("several facets");
            debug_assert!(matches!(punctured.pseudomanifold_status(), PseudomanifoldStatus::WithBoundary(_)));
            (format!("{name} minus facet {}", closed.facets()[facet]), punctured)
        })
        .collect()
}

/// Outcome of one named invariant on one complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn check(name: &str, holds: bool, detail: impl FnOnce() -> String) -> InvariantCheck {
    InvariantCheck { name: name.into(), holds, detail: if holds { String::new() } else { detail() } }
}

/// Structural invariants of `A(Δ)` that must hold for every complex.
pub fn invariant_suite(complex: &SimplicialComplex) -> Vec<InvariantCheck> {
    let model = AlgebraModel::new(complex.clone());
    let top = model.top_degree();
    let f = complex.f_vector();
    let mut out = Vec::new();

    let hilbert = model.hilbert_function();
    let dims_ok = (0..=top).all(|i| hilbert[i] == f.get(i as isize - 1));
    out.push(check("hilbert-equals-f-vector", dims_ok, || format!("{hilbert:?} vs {:?}", f.0)));

    let graph = complex.face_skeleton_graph();
    let m1 = model.lefschetz_matrix(1).expect("degree 1 exists");
    if top >= 1 {
        let incidence = graph.incidence_matrix().transpose();
        out.push(check("degree-one-is-incidence-transpose", m1 == incidence, || {
            format!("{m1:?} vs {incidence:?}")
        }));
    }
    let rank1 = linalg::rank(&m1).rank;
    let expected = graph.vertex_count() - graph.components().bipartite_count;
    out.push(check("degree-one-rank", rank1 == expected, || format!("rank {rank1}, n - b_G = {expected}")));

    match socle_clique_bound_check(complex) {
        Ok(c) => out.push(check("socle-clique-bound", c.holds(), || format!("{c:?}"))),
        Err(e) => out.push(check("socle-clique-bound", false, || e.to_string())),
    }

    for i in 0..top.saturating_sub(1) {
        let a = model.lefschetz_matrix(i).expect("in range");
        let b = model.lefschetz_matrix(i + 1).expect("in range");
        let composed = b.mul(&a).expect("shapes chain");
        let square = model.square_matrix(i).expect("in range");
        out.push(check(&format!("square-composition-{i}"), composed == square, || {
            format!("{composed:?} vs {square:?}")
        }));
    }

    if complex.pseudomanifold_status() == PseudomanifoldStatus::WithoutBoundary {
        let d = complex.dim();
        let (top_faces, ridges) = (f.get(d), f.get(d - 1));
        out.push(check("closed-ridge-count", (d as usize + 1) * top_faces == 2 * ridges, || {
            format!("f_d = {top_faces}, f_(d-1) = {ridges}")
        }));
    }

    out.push(propagation_check(&model));
    out
}

/// Once some degree is surjective onto a strictly smaller space, every later
/// degree is surjective by rank.
fn propagation_check(model: &AlgebraModel) -> InvariantCheck {
    let report = wlp_full_with(model, WlpOptions { propagate: false, exec: Exec::Sequential });
    let start = report
        .degrees
        .iter()
        .find(|d| d.verdict.is_surjective() && d.dim_from > d.dim_to)
        .map(|d| d.i);
    let bad = start.and_then(|s| report.degrees.iter().find(|d| d.i > s && !d.verdict.is_surjective()));
    check("surjectivity-propagates", bad.is_none(), || {
        format!("surjective from degree {start:?}, not at degree {}", bad.expect("failing degree").i)
    })
}

/// Whether propagation had anything to confirm on this complex.
pub fn propagation_applies(model: &AlgebraModel) -> bool {
    let top = model.top_degree();
    (1..top).any(|i| model.dim(i) > model.dim(i + 1))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleFailure {
    pub index: usize,
    pub origin: Origin,
    pub facets: Vec<Vec<u32>>,
    pub disagreements: Vec<RouteCheck>,
    pub broken_invariants: Vec<InvariantCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationSummary {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub flag_complexes: usize,
    pub facet_set_complexes: usize,
    /// Rank-versus-criterion comparisons made.
    pub route_checks: usize,
    pub invariant_checks: usize,
    /// Complexes with a surjective degree mapping onto a smaller space.
    pub propagation_cases: usize,
    pub disagreements: usize,
    pub invariant_violations: usize,
    pub failures: Vec<SampleFailure>,
}

impl ValidationSummary {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Generates `count` complexes and runs [`cross_validate`] and
/// [`invariant_suite`] on each.
pub fn validate_batch(count: usize, max_vertices: usize, seed: u64, exec: Exec) -> ValidationSummary {
    struct Outcome {
        origin: Origin,
        routes: usize,
        invariants: usize,
        propagation: bool,
        failure: Option<SampleFailure>,
    }
    let outcomes = exec.map_range(count, |index| {
        let sample = random_complex(index, max_vertices, seed);
        let cv = cross_validate(&sample.complex);
        let inv = invariant_suite(&sample.complex);
        let disagreements: Vec<RouteCheck> = cv.disagreements().cloned().collect();
        let broken: Vec<InvariantCheck> = inv.iter().filter(|c| !c.holds).cloned().collect();
        let model = AlgebraModel::new(sample.complex.clone());
        Outcome {
            origin: sample.origin,
            routes: cv.checks.len(),
            invariants: inv.len(),
            propagation: propagation_applies(&model),
            failure: (!disagreements.is_empty() || !broken.is_empty()).then(|| SampleFailure {
                index,
                origin: sample.origin,
                facets: sample.complex.facets().iter().map(|f| f.vertices().to_vec()).collect(),
                disagreements,
                broken_invariants: broken,
            }),
        }
    });
    let failures: Vec<SampleFailure> = outcomes.iter().filter_map(|o| o.failure.clone()).collect();
    ValidationSummary {
        seed,
        count,
        max_vertices,
        flag_complexes: outcomes.iter().filter(|o| matches!(o.origin, Origin::Flag { .. })).count(),
        facet_set_complexes: outcomes.iter().filter(|o| o.origin == Origin::FacetSet).count(),
        route_checks: outcomes.iter().map(|o| o.routes).sum(),
        invariant_checks: outcomes.iter().map(|o| o.invariants).sum(),
        propagation_cases: outcomes.iter().filter(|o| o.propagation).count(),
        disagreements: failures.iter().map(|f| f.disagreements.len()).sum(),
        invariant_violations: failures.iter().map(|f| f.broken_invariants.len()).sum(),
        failures,
    }
}
