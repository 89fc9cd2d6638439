//! Combinatorial WLP criteria. Nothing here computes a matrix rank.

use std::collections::{HashMap, VecDeque};

use super::{
    AlgebraModel, Certificate, ComponentTally, Degree1Case, DegreeReport, LefschetzError, Method,
    Verdict, WlpReport,
};
use crate::complex::{Face, PseudomanifoldStatus, SimplicialComplex};

/// Degree 1 from the 1-skeleton alone.
///
/// With `|E| >= |V|` the map holds iff no component is bipartite. With
/// `|E| < |V|` it holds iff bipartite components are trees and every other
/// component has as many edges as vertices; a holding verdict then extends
/// to every degree.
pub fn criterion_degree1(complex: &SimplicialComplex) -> DegreeReport {
    let labels = complex.vertices();
    let graph = complex.face_skeleton_graph();
    let (v, e) = (graph.vertex_count(), graph.edge_count());
    let summary = graph.components();
    let components: Vec<ComponentTally> = summary
        .components
        .iter()
        .map(|c| ComponentTally {
            vertices: c.vertices.iter().map(|&i| labels[i]).collect(),
            edges: c.edge_count,
            bipartite: c.bipartite,
        })
        .collect();
    let (case, offending) = if e >= v {
        (Degree1Case::Injective, components.iter().position(|c| c.bipartite))
    } else {
        let bad = components.iter().position(|c| {
            if c.bipartite {
                c.edges + 1 != c.vertices.len()
            } else {
                c.edges != c.vertices.len()
            }
        });
        (Degree1Case::Surjective, bad)
    };
    let verdict = if offending.is_none() { Verdict::holding(v, e) } else { Verdict::Fails };
    DegreeReport {
        i: 1,
        dim_from: v,
        dim_to: e,
        verdict,
        method: Method::CriterionDeg1,
        rank: None,
        certificate: Some(Certificate::Degree1 { case, components, offending }),
    }
}

/// Degree `dim Δ` of a pseudomanifold: always holds with boundary, and
/// without boundary holds iff the dual graph is not bipartite.
pub fn criterion_top_degree(complex: &SimplicialComplex) -> Result<DegreeReport, LefschetzError> {
    let d = complex.dim();
    if d < 1 {
        return Err(LefschetzError::ZeroDimensional);
    }
    let i = d as usize;
    let from = complex.faces_of_dim(d - 1).len();
    let to = complex.faces_of_dim(d).len();
    let (verdict, certificate) = match complex.pseudomanifold_status() {
        PseudomanifoldStatus::NotPseudomanifold(_) => return Err(LefschetzError::NotPseudomanifold),
        PseudomanifoldStatus::WithBoundary(boundary) => (
            Verdict::from_rank(to, from, to),
            Certificate::BoundaryChains { preimages: boundary_chains(complex, &boundary) },
        ),
        PseudomanifoldStatus::WithoutBoundary => {
            let bipartition = complex.dual_graph()?.bipartition();
            let verdict =
                if bipartition.is_bipartite() { Verdict::Fails } else { Verdict::holding(from, to) };
            (verdict, Certificate::DualGraph { bipartition })
        }
    };
    Ok(DegreeReport {
        i,
        dim_from: from,
        dim_to: to,
        verdict,
        method: Method::CriterionPseudomanifold,
        rank: None,
        certificate: Some(certificate),
    })
}

/// Explicit preimages of every facet under the top multiplication map.
///
/// Facets are reached by breadth-first search through shared ridges from the
/// boundary facets. A boundary facet is the image of one of its boundary
/// ridges; a facet `F` whose search parent is `P` across ridge `B` is the
/// image of `x_B - preimage(P)`.
fn boundary_chains(complex: &SimplicialComplex, boundary: &[Face]) -> Vec<Vec<(usize, i64)>> {
    let facets = complex.facets();
    let ridge_index = |r: &Face| complex.face_index(r).expect("ridge is a face");
    let mut ridge_to_facets: HashMap<Face, Vec<usize>> = HashMap::new();
    for (k, f) in facets.iter().enumerate() {
        for r in f.subfaces(f.len() - 1) {
            ridge_to_facets.entry(r).or_default().push(k);
        }
    }
    let mut preimages: Vec<Option<Vec<(usize, i64)>>> = vec![None; facets.len()];
    let mut queue = VecDeque::new();
    for b in boundary {
        let k = ridge_to_facets[b][0];
        if preimages[k].is_none() {
            preimages[k] = Some(vec![(ridge_index(b), 1)]);
            queue.push_back(k);
        }
    }
    while let Some(p) = queue.pop_front() {
        let parent = preimages[p].clone().expect("visited");
        for r in facets[p].subfaces(facets[p].len() - 1) {
            for &f in &ridge_to_facets[&r] {
                if preimages[f].is_some() {
                    continue;
                }
                let mut combo = vec![(ridge_index(&r), 1)];
                combo.extend(parent.iter().map(|&(idx, c)| (idx, -c)));
                preimages[f] = Some(combo);
                queue.push_back(f);
            }
        }
    }
    preimages.into_iter().map(|p| p.expect("pseudomanifold is connected")).collect()
}

/// Full WLP verdict for a 2-dimensional pseudomanifold from combinatorics
/// only: degree 1 from the skeleton, degree 2 from the dual graph.
pub fn check_dim2_pseudomanifold(complex: &SimplicialComplex) -> Result<WlpReport, LefschetzError> {
    if complex.dim() != 2 {
        return Err(LefschetzError::NotTwoDimensional(complex.dim()));
    }
    if !complex.pseudomanifold_status().is_pseudomanifold() {
        return Err(LefschetzError::NotPseudomanifold);
    }
    let model = AlgebraModel::new(complex.clone());
    let edge = |i: usize| {
        let (from, to) = (model.dim(i), model.dim(i + 1));
        DegreeReport {
            i,
            dim_from: from,
            dim_to: to,
            verdict: Verdict::holding(from, to),
            method: Method::Trivial,
            rank: Some(from.min(to)),
            certificate: None,
        }
    };
    let degrees = vec![
        edge(0),
        criterion_degree1(complex),
        criterion_top_degree(complex)?,
        edge(3),
    ];
    Ok(WlpReport::assemble(&model, degrees))
}

/// Degree 2 of a closed planar triangulated surface: holds iff the
/// 1-skeleton has a vertex of odd degree. Planarity is not checked; the
/// caller vouches for it through `planar_asserted`.
pub fn eulerian_criterion(
    complex: &SimplicialComplex,
    planar_asserted: bool,
) -> Result<DegreeReport, LefschetzError> {
    if !planar_asserted {
        return Err(LefschetzError::PlanarityNotAsserted);
    }
    if complex.dim() != 2 {
        return Err(LefschetzError::NotTwoDimensional(complex.dim()));
    }
    match complex.pseudomanifold_status() {
        PseudomanifoldStatus::WithoutBoundary => {}
        PseudomanifoldStatus::WithBoundary(_) => return Err(LefschetzError::HasBoundary),
        PseudomanifoldStatus::NotPseudomanifold(_) => return Err(LefschetzError::NotPseudomanifold),
    }
    let graph = complex.face_skeleton_graph();
    let labels = complex.vertices();
    let odd = (0..graph.vertex_count()).find(|&v| graph.degree(v) % 2 == 1);
    let (from, to) = (complex.faces_of_dim(1).len(), complex.faces_of_dim(2).len());
    let verdict = if odd.is_some() { Verdict::holding(from, to) } else { Verdict::Fails };
    Ok(DegreeReport {
        i: 2,
        dim_from: from,
        dim_to: to,
        verdict,
        method: Method::CriterionPseudomanifold,
        rank: None,
        certificate: Some(Certificate::Eulerian { odd_degree_vertex: odd.map(|v| labels[v]) }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Socle {
    /// Top socle degree, `dim Δ + 1`.
    pub degree: usize,
    /// Socle monomials `x_F`, one per facet.
    pub monomials: Vec<Face>,
    /// The socle sits in a single degree, i.e. `Δ` is pure.
    pub level: bool,
}

pub fn socle(model: &AlgebraModel) -> Socle {
    let complex = model.complex();
    Socle {
        degree: model.top_degree(),
        monomials: complex.facets().to_vec(),
        level: complex.is_pure(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleCliqueCheck {
    pub socle_degree: usize,
    pub clique_number: usize,
    /// `Some(socle_degree <= 3)` when degree 1 holds and `dim A_2 <= dim A_1`.
    pub small_socle: Option<bool>,
}

impl SocleCliqueCheck {
    pub fn holds(&self) -> bool {
        self.socle_degree <= self.clique_number && self.small_socle.unwrap_or(true)
    }
}

/// Socle degree against the clique number of the 1-skeleton.
pub fn socle_clique_bound_check(complex: &SimplicialComplex) -> Result<SocleCliqueCheck, LefschetzError> {
    let clique_number = complex.face_skeleton_graph().clique_number()?;
    let socle_degree = (complex.dim() + 1) as usize;
    let deg1 = criterion_degree1(complex);
    let small_socle = (deg1.verdict.holds() && deg1.dim_to <= deg1.dim_from).then_some(socle_degree <= 3);
    Ok(SocleCliqueCheck { socle_degree, clique_number, small_socle })
}
