use serde::{Deserialize, Serialize};

use super::{
    check_dim2_pseudomanifold, criterion_degree1, criterion_top_degree, wlp_full_with,
    wlp_in_degree_by_rank, AlgebraModel, Verdict, WlpOptions,
};
use crate::complex::SimplicialComplex;
use crate::par::Exec;

/// One comparison between a combinatorial route and exact rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub degree: usize,
    pub route: String,
    pub criterion: Verdict,
    pub rank: Verdict,
}

impl RouteCheck {
    /// Routes agree when they give the same holds/fails answer and, when
    /// both hold, the same injective/surjective label.
    pub fn agrees(&self) -> bool {
        self.criterion == self.rank
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub checks: Vec<RouteCheck>,
}

impl CrossValidation {
    pub fn disagreements(&self) -> impl Iterator<Item = &RouteCheck> {
        self.checks.iter().filter(|c| !c.agrees())
    }

    pub fn is_consistent(&self) -> bool {
        self.disagreements().next().is_none()
    }
}

/// Runs every applicable criterion next to the rank computation.
pub fn cross_validate(complex: &SimplicialComplex) -> CrossValidation {
    let model = AlgebraModel::new(complex.clone());
    let top = model.top_degree();
    let rank_at = |i: usize| wlp_in_degree_by_rank(&model, i).expect("degree in range").verdict;
    let ranks: Vec<Verdict> = (0..=top).map(rank_at).collect();
    let mut checks = Vec::new();

    let deg1 = criterion_degree1(complex);
    checks.push(RouteCheck {
        degree: 1,
        route: "criterion-deg1".into(),
        criterion: deg1.verdict,
        rank: ranks[1],
    });
    if deg1.certificate.as_ref().is_some_and(|c| c.implies_all_degrees(deg1.verdict)) {
        for i in 2..=top {
            checks.push(RouteCheck {
                degree: i,
                route: "criterion-deg1-all-degrees".into(),
                criterion: Verdict::holding(model.dim(i), model.dim(i + 1)),
                rank: ranks[i],
            });
        }
    }

    if let Ok(r) = criterion_top_degree(complex) {
        checks.push(RouteCheck {
            degree: r.i,
            route: "criterion-pseudomanifold".into(),
            criterion: r.verdict,
            rank: ranks[r.i],
        });
    }

    if let Ok(rep) = check_dim2_pseudomanifold(complex) {
        for d in &rep.degrees {
            checks.push(RouteCheck {
                degree: d.i,
                route: "dim2-pseudomanifold".into(),
                criterion: d.verdict,
                rank: ranks[d.i],
            });
        }
    }

    let propagated = wlp_full_with(&model, WlpOptions { propagate: true, exec: Exec::Sequential });
    for d in &propagated.degrees {
        checks.push(RouteCheck {
            degree: d.i,
            route: format!("full-{}", serde_json::to_value(d.method).expect("enum").as_str().unwrap_or("?")),
            criterion: d.verdict,
            rank: ranks[d.i],
        });
    }

    CrossValidation { checks }
}
