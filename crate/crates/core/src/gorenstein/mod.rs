//! Nagata idealization `R̃ = R ⋉ ω(-d-1)` of a level `R = A(Δ)`.
//!
//! The canonical module is realized as the graded dual of `R`: in degree `i`
//! of `R̃` it contributes the dual basis `y*_G` for the faces `G` of size
//! `d + 1 - i`. A monomial `x_F` acts by `x_F · y*_G = y*_{G \ F}` when
//! `F ⊆ G` and by zero otherwise, and `ω · ω = 0`.

mod presentation;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, PseudomanifoldStatus, SimplicialComplex};
use crate::lefschetz::{AlgebraModel, LinearForm, Verdict};
use crate::linalg::{self, IntMatrix};
use crate::par::{derive_seed, Exec};

pub use presentation::{even_cycle_presentation, Monomial, Presentation, Quadric, Var};

/// Random form coefficients are drawn uniformly from `1..=COEFFICIENT_RANGE`.
pub const COEFFICIENT_RANGE: u64 = 1 << 20;
pub const DEFAULT_TRIALS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GorensteinError {
    #[error("algebra is not level: the complex is not pure")]
    NotLevel,
    #[error("socle degree {0} is too small, need at least 1")]
    SocleDegreeTooSmall(usize),
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("need at least one trial")]
    NoTrials,
    #[error("linear form is zero")]
    ZeroForm,
    #[error("linear form has {got} {part} coefficients, expected {expected}")]
    FormLength { part: &'static str, expected: usize, got: usize },
    #[error("even-cycle presentation needs a >= 2, got {0}")]
    CycleTooShort(usize),
    #[error("cannot parse quadric `{text}`: {message}")]
    ParseQuadric { text: String, message: String },
}

/// A basis element of `R̃`: a face monomial `x_F` or a dual element `y*_G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "part", content = "face", rename_all = "snake_case")]
pub enum TildeBasis {
    Base(Face),
    Dual(Face),
}

/// Graded model of the idealization. Immutable once built.
#[derive(Debug, Clone)]
pub struct IdealizedAlgebra {
    base: AlgebraModel,
    d: usize,
}

/// Builds `R̃` from a level `A(Δ)`.
pub fn idealize(base: &AlgebraModel) -> Result<IdealizedAlgebra, GorensteinError> {
    if !base.complex().is_pure() {
        return Err(GorensteinError::NotLevel);
    }
    let d = base.top_degree();
    if d < 1 {
        return Err(GorensteinError::SocleDegreeTooSmall(d));
    }
    Ok(IdealizedAlgebra { base: base.clone(), d })
}

/// `c_1 x_1 + ... + c_n x_n + Σ_m e_m y*_{F_m}`, with the facets `F_m` in
/// lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TildeLinearForm {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl TildeLinearForm {
    pub fn new(x: Vec<i64>, y: Vec<i64>) -> Result<Self, GorensteinError> {
        if x.iter().chain(&y).all(|&c| c == 0) {
            return Err(GorensteinError::ZeroForm);
        }
        Ok(TildeLinearForm { x, y })
    }

    fn random(n: usize, facets: usize, rng: &mut impl Rng) -> Self {
        let mut draw = |k| (0..k).map(|_| rng.gen_range(1..=COEFFICIENT_RANGE) as i64).collect();
        let x = draw(n);
        let y = draw(facets);
        TildeLinearForm { x, y }
    }
}

impl IdealizedAlgebra {
    pub fn base(&self) -> &AlgebraModel {
        &self.base
    }

    /// Socle degree `d` of the base; `R̃` has socle degree `d + 1`.
    pub fn base_socle_degree(&self) -> usize {
        self.d
    }

    pub fn socle_degree(&self) -> usize {
        self.d + 1
    }

    fn complex(&self) -> &SimplicialComplex {
        self.base.complex()
    }

    /// Dual faces in degree `i` have size `d + 1 - i`.
    fn dual_basis(&self, i: usize) -> &[Face] {
        match (self.d + 1).checked_sub(i) {
            Some(j) => self.base.basis(j),
            None => &[],
        }
    }

    fn base_basis(&self, i: usize) -> &[Face] {
        if i > self.d {
            &[]
        } else {
            self.base.basis(i)
        }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.base_basis(i).len() + self.dual_basis(i).len()
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.d + 1).map(|i| self.dim(i)).collect()
    }

    /// Basis of `R̃_i`: the base faces followed by the dual faces, each in
    /// lex order.
    pub fn basis(&self, i: usize) -> Vec<TildeBasis> {
        let base = self.base_basis(i).iter().cloned().map(TildeBasis::Base);
        let dual = self.dual_basis(i).iter().cloned().map(TildeBasis::Dual);
        base.chain(dual).collect()
    }

    /// Product of two basis elements, which is a basis element or zero.
    pub fn multiply_basis(&self, a: &TildeBasis, b: &TildeBasis) -> Option<TildeBasis> {
        match (a, b) {
            (TildeBasis::Base(f), TildeBasis::Base(g)) => {
                let h = f.disjoint_union(g)?;
                self.complex().contains_face(&h).then_some(TildeBasis::Base(h))
            }
            (TildeBasis::Base(f), TildeBasis::Dual(g)) | (TildeBasis::Dual(g), TildeBasis::Base(f)) => {
                if !f.is_subset_of(g) {
                    return None;
                }
                let rest = f.vertices().iter().fold(g.clone(), |acc, &v| acc.without(v));
                Some(TildeBasis::Dual(rest))
            }
            (TildeBasis::Dual(_), TildeBasis::Dual(_)) => None,
        }
    }

    fn check_degree(&self, i: usize) -> Result<(), GorensteinError> {
        if i > self.d {
            return Err(GorensteinError::DegreeOutOfRange { degree: i, max: self.d });
        }
        Ok(())
    }

    fn check_form(&self, l: &TildeLinearForm) -> Result<(), GorensteinError> {
        let n = self.complex().vertex_count() as usize;
        let facets = self.base.dim(self.d);
        if l.x.len() != n {
            return Err(GorensteinError::FormLength { part: "x", expected: n, got: l.x.len() });
        }
        if l.y.len() != facets {
            return Err(GorensteinError::FormLength { part: "y", expected: facets, got: l.y.len() });
        }
        Ok(())
    }

    /// Matrix of multiplication by `l` from `R̃_i` to `R̃_{i+1}`, in the
    /// bases of [`IdealizedAlgebra::basis`]. Block form
    /// `[[M_i(ℓ_x), 0], [P_i(ℓ_y), M_{d-i}(ℓ_x)ᵀ]]`.
    pub fn tilde_multiplication_matrix(
        &self,
        i: usize,
        l: &TildeLinearForm,
    ) -> Result<IntMatrix, GorensteinError> {
        self.check_degree(i)?;
        self.check_form(l)?;
        let lx = if l.x.iter().all(|&c| c == 0) {
            None
        } else {
            Some(LinearForm::new(l.x.clone()).expect("nonzero"))
        };
        let base_block = |j: usize| match &lx {
            Some(form) => self.base.multiplication_matrix(j, form).expect("degree checked"),
            None => IntMatrix::zeros(self.base.dim(j + 1), self.base.dim(j)),
        };
        let rr = if i < self.d {
            base_block(i)
        } else {
            IntMatrix::zeros(0, self.base.dim(i))
        };
        let ww = base_block(self.d - i).transpose();
        let rw = self.pairing_block(i, &l.y);
        let wr = IntMatrix::zeros(rr.rows(), ww.cols());
        Ok(IntMatrix::block(&rr, &wr, &rw, &ww))
    }

    /// `x_F ↦ x_F · ℓ_y` from `R_i` into `ω` in degree `i + 1`: the entry at
    /// `(y*_H, x_F)` is the coefficient of the facet `F ⊔ H`.
    fn pairing_block(&self, i: usize, y: &[i64]) -> IntMatrix {
        let rows = self.dual_basis(i + 1);
        let cols = self.base_basis(i);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (r, h) in rows.iter().enumerate() {
            for (c, f) in cols.iter().enumerate() {
                if let Some(k) = f.disjoint_union(h).and_then(|g| self.complex().face_index(&g)) {
                    m.set(r, c, y[k]);
                }
            }
        }
        m
    }

    /// Whether the hypotheses of the failure theorem hold at degree `d - 1`:
    /// `d >= 2`, the base is not surjective from degree `d - 1`, and
    /// `dim R_2 + dim R_{d-1} >= dim R_1 + dim R_d`.
    pub fn failure_theorem_applies(&self) -> bool {
        let d = self.d;
        if d < 2 {
            return false;
        }
        let m = self.base.lefschetz_matrix(d - 1).expect("degree in range");
        let surjective = linalg::rank(&m).rank == self.base.dim(d);
        !surjective && self.dim(d - 1) >= self.dim(d)
    }

    /// Decides WLP in degree `i` from random forms. See [`TildeDegreeReport`].
    pub fn wlp_tilde_degree(
        &self,
        i: usize,
        trials: usize,
        seed: u64,
        exec: Exec,
    ) -> Result<TildeDegreeReport, GorensteinError> {
        self.check_degree(i)?;
        if trials == 0 {
            return Err(GorensteinError::NoTrials);
        }
        let n = self.complex().vertex_count() as usize;
        let facets = self.base.dim(self.d);
        let (from, to) = (self.dim(i), self.dim(i + 1));
        let theorem = i + 1 == self.d && self.failure_theorem_applies();
        let base_rows = if i < self.d { self.base.dim(i + 1) } else { 0 };

        let outcomes = exec.map_range(trials, |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let form = TildeLinearForm::random(n, facets, &mut rng);
            let m = self.tilde_multiplication_matrix(i, &form).expect("checked");
            let rank = linalg::rank(&m).rank;
            let restricted = linalg::rank(&m.row_slice(0, base_rows)).rank;
            (rank, restricted)
        });
        let ranks: Vec<usize> = outcomes.iter().map(|o| o.0).collect();
        let max_rank = *ranks.iter().max().expect("at least one trial");
        let verdict = Verdict::from_rank(max_rank, from, to);

        // the base rows of the image only see R_i, so a non-surjective base
        // map caps the rank below dim R̃_{i+1}
        let restriction_deficient =
            theorem.then(|| outcomes.iter().all(|&(_, r)| r < self.base.dim(self.d)));
        let certainty = if theorem && !verdict.holds() && restriction_deficient == Some(true) {
            Certainty::DeterministicByTheorem
        } else {
            Certainty::Probabilistic
        };
        let miss_probability = (!verdict.holds()).then(|| {
            let per_trial = (max_rank + 1) as f64 / COEFFICIENT_RANGE as f64;
            per_trial.powi(trials as i32)
        });

        let all_ones = |j: usize| {
            if j < self.d {
                linalg::rank(&self.base.lefschetz_matrix(j).expect("in range")).rank
            } else {
                0
            }
        };
        Ok(TildeDegreeReport {
            i,
            dim_from: from,
            dim_to: to,
            ranks,
            max_rank,
            block_diagonal_rank: all_ones(i) + all_ones(self.d - i),
            verdict,
            certainty,
            miss_probability,
            restriction_deficient,
            seed,
        })
    }

    /// [`IdealizedAlgebra::wlp_tilde_degree`] for every degree `0..=d`.
    pub fn wlp_tilde_all(
        &self,
        trials: usize,
        seed: u64,
        exec: Exec,
    ) -> Result<Vec<TildeDegreeReport>, GorensteinError> {
        (0..=self.d).map(|i| self.wlp_tilde_degree(i, trials, seed, exec)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    /// Failure at degree `d - 1` forced by the base algebra.
    DeterministicByTheorem,
    /// Read off the ranks at the sampled forms.
    Probabilistic,
}

/// Result of sampling random forms for the map `R̃_i -> R̃_{i+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TildeDegreeReport {
    pub i: usize,
    pub dim_from: usize,
    pub dim_to: usize,
    /// Rank at each sampled form.
    pub ranks: Vec<usize>,
    pub max_rank: usize,
    /// Rank with `ℓ_y = 0`; a lower bound for the generic rank.
    pub block_diagonal_rank: usize,
    pub verdict: Verdict,
    pub certainty: Certainty,
    /// For a failing verdict, an upper bound on the chance that every
    /// sampled form missed a larger generic rank (Schwartz–Zippel on a
    /// nonzero minor of size `max_rank + 1`).
    pub miss_probability: Option<f64>,
    /// When the failure theorem applies: whether the base rows had rank
    /// below `dim R_d` at every sampled form.
    pub restriction_deficient: Option<bool>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Applicable,
    NotPseudomanifold,
    HasBoundary,
    DualGraphNotBipartite,
    DimensionTooSmall,
}

/// Result of checking whether a complex yields a Gorenstein algebra failing
/// WLP via idealization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorGorReport {
    /// Socle degree `d = dim Δ + 1` of `A(Δ)`.
    pub d: usize,
    pub applicability: Applicability,
    /// `f_1 >= f_0`.
    pub edges_at_least_vertices: Option<bool>,
    /// `2 f_{d-2} = d f_{d-1}`.
    pub ridge_count_relation: Option<bool>,
    /// `dim R_2 + dim R_{d-1} >= dim R_1 + dim R_d`.
    pub dimension_inequality: Option<bool>,
    pub hilbert_function: Option<Vec<usize>>,
    pub degree_report: Option<TildeDegreeReport>,
}

impl CorGorReport {
    pub fn confirms_failure(&self) -> bool {
        self.applicability == Applicability::Applicable
            && self.degree_report.as_ref().is_some_and(|r| !r.verdict.holds())
    }
}

/// Checks the closed-pseudomanifold-with-bipartite-dual-graph hypotheses and,
/// when they hold, idealizes and samples degree `d - 1`.
pub fn corgor_check(complex: &SimplicialComplex, trials: usize, seed: u64) -> CorGorReport {
    let d = (complex.dim() + 1) as usize;
    let mut report = CorGorReport {
        d,
        applicability: Applicability::Applicable,
        edges_at_least_vertices: None,
        ridge_count_relation: None,
        dimension_inequality: None,
        hilbert_function: None,
        degree_report: None,
    };
    report.applicability = match complex.pseudomanifold_status() {
        _ if d < 2 => Applicability::DimensionTooSmall,
        PseudomanifoldStatus::NotPseudomanifold(_) => Applicability::NotPseudomanifold,
        PseudomanifoldStatus::WithBoundary(_) => Applicability::HasBoundary,
        PseudomanifoldStatus::WithoutBoundary => {
            let bipartite = complex.dual_graph().map(|g| g.is_bipartite()).unwrap_or(false);
            if bipartite {
                Applicability::Applicable
            } else {
                Applicability::DualGraphNotBipartite
            }
        }
    };
    if report.applicability != Applicability::Applicable {
        return report;
    }
    let f = complex.f_vector();
    let fk = |k: isize| f.get(k);
    report.edges_at_least_vertices = Some(fk(1) >= fk(0));
    report.ridge_count_relation = Some(2 * fk(d as isize - 2) == d * fk(d as isize - 1));
    report.dimension_inequality = Some(fk(1) + fk(d as isize - 2) >= fk(0) + fk(d as isize - 1));

    let model = AlgebraModel::new(complex.clone());
    let tilde = idealize(&model).expect("closed pseudomanifolds are pure");
    report.hilbert_function = Some(tilde.hilbert_function());
    report.degree_report = tilde.wlp_tilde_degree(d - 1, trials, seed, Exec::default()).ok();
    report
}
