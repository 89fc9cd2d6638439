//! Weak Lefschetz Property of `A(Δ)`.
//!
//! Two independent routes decide each degree: the exact rank of the
//! multiplication-by-`x_1 + ... + x_n` matrix, and purely combinatorial
//! criteria on the 1-skeleton (degree 1) or the dual graph (top degree of a
//! pseudomanifold). [`cross_validate`] runs both and reports disagreements.

mod algebra;
mod criteria;
mod cross;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexError;
use crate::graph::{Bipartition, GraphError};

pub use algebra::{AlgebraModel, HilbertSeries, LinearForm};
pub use criteria::{
    check_dim2_pseudomanifold, criterion_degree1, criterion_top_degree, eulerian_criterion, socle,
    socle_clique_bound_check, Socle, SocleCliqueCheck,
};
pub use cross::{cross_validate, CrossValidation, RouteCheck};
pub use report::{wlp_full, wlp_full_with, wlp_in_degree_by_rank, WlpOptions};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("linear form is zero")]
    ZeroLinearForm,
    #[error("linear form has {got} coefficients, expected {expected}")]
    FormLength { expected: usize, got: usize },
    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,
    #[error("the top-degree criterion needs a complex of dimension at least 1")]
    ZeroDimensional,
    #[error("complex has dimension {0}, expected 2")]
    NotTwoDimensional(isize),
    #[error("pseudomanifold has boundary")]
    HasBoundary,
    #[error("planarity of the triangulation must be asserted by the caller")]
    PlanarityNotAsserted,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsInjective,
    HoldsSurjective,
    HoldsBijective,
    Fails,
}

impl Verdict {
    /// Verdict for a map `k^from -> k^to` of the given rank.
    pub fn from_rank(rank: usize, from: usize, to: usize) -> Verdict {
        match (rank == from, rank == to) {
            (true, true) => Verdict::HoldsBijective,
            (true, false) => Verdict::HoldsInjective,
            (false, true) => Verdict::HoldsSurjective,
            (false, false) => Verdict::Fails,
        }
    }

    /// The holding verdict forced by the dimensions alone.
    pub fn holding(from: usize, to: usize) -> Verdict {
        Verdict::from_rank(from.min(to), from, to)
    }

    pub fn holds(self) -> bool {
        self != Verdict::Fails
    }

    pub fn is_surjective(self) -> bool {
        matches!(self, Verdict::HoldsSurjective | Verdict::HoldsBijective)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rank,
    CriterionDeg1,
    CriterionPseudomanifold,
    Trivial,
    /// Surjectivity carried up from a lower surjective degree.
    Propagated,
}

/// Which branch of the degree-1 criterion applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree1Case {
    /// `dim A_2 >= dim A_1`
    Injective,
    /// `dim A_2 < dim A_1`
    Surjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTally {
    /// Vertex labels.
    pub vertices: Vec<u32>,
    pub edges: usize,
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Component tally of the 1-skeleton; `offending` indexes the first
    /// component violating the criterion.
    Degree1 {
        case: Degree1Case,
        components: Vec<ComponentTally>,
        offending: Option<usize>,
    },
    /// Dual graph of a closed pseudomanifold: a facet 2-coloring (fails) or
    /// an odd facet cycle (holds). Facets are indexed in sorted order.
    DualGraph { bipartition: Bipartition },
    /// For each facet (sorted order), a signed combination of ridges
    /// (indices into the lex-ordered ridges) mapping onto it.
    BoundaryChains { preimages: Vec<Vec<(usize, i64)>> },
    /// Planar closed surface: a vertex of odd degree in the 1-skeleton, if
    /// any. An odd vertex means the skeleton is not Eulerian.
    Eulerian { odd_degree_vertex: Option<u32> },
    Propagated { from_degree: usize },
}

impl Certificate {
    /// Case (ii) of the degree-1 criterion with a holding verdict settles
    /// every degree.
    pub fn implies_all_degrees(&self, verdict: Verdict) -> bool {
        matches!(self, Certificate::Degree1 { case: Degree1Case::Surjective, .. }) && verdict.holds()
    }
}

/// Outcome for the map `A_i -> A_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub i: usize,
    pub dim_from: usize,
    pub dim_to: usize,
    pub verdict: Verdict,
    pub method: Method,
    pub rank: Option<usize>,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub n: u32,
    pub facets: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleSummary {
    pub degree: usize,
    pub level: bool,
}

/// Versioned report; field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub schema: u32,
    pub complex: ComplexSummary,
    pub f_vector: Vec<usize>,
    pub socle: SocleSummary,
    pub degrees: Vec<DegreeReport>,
    pub wlp: bool,
}

impl WlpReport {
    /// Report over the given degrees; `wlp` is true when all of them hold.
    pub fn assemble(model: &AlgebraModel, degrees: Vec<DegreeReport>) -> WlpReport {
        let complex = model.complex();
        let s = socle(model);
        WlpReport {
            schema: REPORT_SCHEMA,
            complex: ComplexSummary {
                n: complex.vertex_count(),
                facets: complex.facets().iter().map(|f| f.vertices().to_vec()).collect(),
            },
            f_vector: complex.f_vector().0,
            socle: SocleSummary { degree: s.degree, level: s.level },
            wlp: degrees.iter().all(|d| d.verdict.holds()),
            degrees,
        }
    }

    pub fn degree(&self, i: usize) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.i == i)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<WlpReport> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_labels() {
        assert_eq!(Verdict::from_rank(7, 7, 15), Verdict::HoldsInjective);
        assert_eq!(Verdict::from_rank(2, 6, 2), Verdict::HoldsSurjective);
        assert_eq!(Verdict::from_rank(4, 4, 4), Verdict::HoldsBijective);
        assert_eq!(Verdict::from_rank(3, 4, 4), Verdict::Fails);
        assert_eq!(Verdict::holding(12, 8), Verdict::HoldsSurjective);
        assert_eq!(
            serde_json::to_string(&Verdict::HoldsInjective).unwrap(),
            "\"holds-injective\""
        );
        assert_eq!(serde_json::to_string(&Method::CriterionDeg1).unwrap(), "\"criterion-deg1\"");
    }
}
