use super::{AlgebraModel, Certificate, DegreeReport, LefschetzError, Method, Verdict, WlpReport};
use crate::linalg;
use crate::par::Exec;

#[derive(Debug, Clone, Copy)]
pub struct WlpOptions {
    /// Once a degree `i` is surjective with `dim A_i > dim A_{i+1}`, mark
    /// every higher degree surjective without computing its rank. Turning
    /// this off computes every rank, concurrently under `exec`.
    pub propagate: bool,
    pub exec: Exec,
}

impl Default for WlpOptions {
    fn default() -> Self {
        WlpOptions { propagate: true, exec: Exec::default() }
    }
}

/// Decides degree `i` from the rank of the all-ones multiplication matrix.
pub fn wlp_in_degree_by_rank(model: &AlgebraModel, i: usize) -> Result<DegreeReport, LefschetzError> {
    let m = model.lefschetz_matrix(i)?;
    let (from, to) = (model.dim(i), model.dim(i + 1));
    let rank = linalg::rank(&m).rank;
    Ok(DegreeReport {
        i,
        dim_from: from,
        dim_to: to,
        verdict: Verdict::from_rank(rank, from, to),
        method: Method::Rank,
        rank: Some(rank),
        certificate: None,
    })
}

fn trivial(model: &AlgebraModel, i: usize) -> DegreeReport {
    let (from, to) = (model.dim(i), model.dim(i + 1));
    // multiplication by a nonzero form is injective on A_0, and anything
    // maps onto A_{top+1} = 0
    let rank = from.min(to);
    DegreeReport {
        i,
        dim_from: from,
        dim_to: to,
        verdict: Verdict::from_rank(rank, from, to),
        method: Method::Trivial,
        rank: Some(rank),
        certificate: None,
    }
}

pub fn wlp_full(model: &AlgebraModel) -> WlpReport {
    wlp_full_with(model, WlpOptions::default())
}

/// Per-degree verdicts for `i = 0..=dim Δ + 1`.
pub fn wlp_full_with(model: &AlgebraModel, options: WlpOptions) -> WlpReport {
    let top = model.top_degree();
    let by_rank = |i: usize| wlp_in_degree_by_rank(model, i).expect("degree in range");
    let degrees = if options.propagate {
        let mut out = Vec::with_capacity(top + 1);
        let mut surjective_from: Option<usize> = None;
        for i in 0..=top {
            let report = if i == 0 || i == top {
                trivial(model, i)
            } else if let Some(j) = surjective_from {
                DegreeReport {
                    i,
                    dim_from: model.dim(i),
                    dim_to: model.dim(i + 1),
                    verdict: Verdict::holding(model.dim(i), model.dim(i + 1)),
                    method: Method::Propagated,
                    rank: None,
                    certificate: Some(Certificate::Propagated { from_degree: j }),
                }
            } else {
                let r = by_rank(i);
                if r.verdict.is_surjective() && r.dim_from > r.dim_to {
                    surjective_from = Some(i);
                }
                r
            };
            out.push(report);
        }
        out
    } else {
        options.exec.map_range(top + 1, |i| {
            if i == 0 || i == top {
                trivial(model, i)
            } else {
                by_rank(i)
            }
        })
    };
    WlpReport::assemble(model, degrees)
}
