use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::LefschetzError;
use crate::complex::{Face, SimplicialComplex};
use crate::linalg::IntMatrix;

/// A linear form `c_1 x_1 + ... + c_n x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    coefficients: Vec<i64>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>) -> Result<Self, LefschetzError> {
        if coefficients.iter().all(|&c| c == 0) {
            return Err(LefschetzError::ZeroLinearForm);
        }
        Ok(LinearForm { coefficients })
    }

    /// `x_1 + ... + x_n`, a Lefschetz element whenever one exists for a
    /// monomial quotient.
    pub fn all_ones(n: usize) -> Self {
        LinearForm { coefficients: vec![1; n.max(1)] }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Coefficient of the variable for vertex label `v` (1-based).
    pub fn coefficient(&self, v: u32) -> i64 {
        self.coefficients[v as usize - 1]
    }
}

/// Graded model of `A(Δ) = k[x_1..x_n] / (x_i^2, I_Δ)`: the degree-`i`
/// monomials are the `(i-1)`-faces, in lex order.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    complex: SimplicialComplex,
}

impl AlgebraModel {
    pub fn new(complex: SimplicialComplex) -> Self {
        AlgebraModel { complex }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Highest nonzero degree, `dim Δ + 1`.
    pub fn top_degree(&self) -> usize {
        (self.complex.dim() + 1) as usize
    }

    pub fn basis(&self, i: usize) -> &[Face] {
        self.complex.faces_of_dim(i as isize - 1)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.basis(i).len()
    }

    /// `dim A_i` for `i = 0..=top_degree`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|i| self.dim(i)).collect()
    }

    fn check_degree(&self, i: usize) -> Result<(), LefschetzError> {
        if i > self.top_degree() {
            return Err(LefschetzError::DegreeOutOfRange {
                degree: i,
                max: self.top_degree(),
            });
        }
        Ok(())
    }

    /// Matrix of multiplication by `form` from `A_i` to `A_{i+1}`. Rows are
    /// indexed by the degree-`(i+1)` basis, columns by the degree-`i` basis;
    /// entry `(G, F)` is the coefficient of the vertex `G \ F` when `F ⊂ G`.
    pub fn multiplication_matrix(
        &self,
        i: usize,
        form: &LinearForm,
    ) -> Result<IntMatrix, LefschetzError> {
        self.check_degree(i)?;
        if form.coefficients().len() != self.complex.vertex_count() as usize {
            return Err(LefschetzError::FormLength {
                expected: self.complex.vertex_count() as usize,
                got: form.coefficients().len(),
            });
        }
        let rows = self.basis(i + 1);
        let mut m = IntMatrix::zeros(rows.len(), self.dim(i));
        for (r, g) in rows.iter().enumerate() {
            for &v in g.vertices() {
                let c = form.coefficient(v);
                if c != 0 {
                    let col = self.complex.face_index(&g.without(v)).expect("closed under subsets");
                    m.set(r, col, c);
                }
            }
        }
        Ok(m)
    }

    /// Multiplication by the all-ones form.
    pub fn lefschetz_matrix(&self, i: usize) -> Result<IntMatrix, LefschetzError> {
        let n = self.complex.vertex_count() as usize;
        self.multiplication_matrix(i, &LinearForm::all_ones(n))
    }

    /// Multiplication by `ℓ² = 2 Σ_{j<k} x_j x_k` from `A_i` to `A_{i+2}`,
    /// assembled straight from the faces rather than by composing maps.
    pub fn square_matrix(&self, i: usize) -> Result<IntMatrix, LefschetzError> {
        self.check_degree(i)?;
        let rows = self.basis(i + 2);
        let mut m = IntMatrix::zeros(rows.len(), self.dim(i));
        for (r, g) in rows.iter().enumerate() {
            for pair in g.vertices().iter().combinations(2) {
                let f = g.without(*pair[0]).without(*pair[1]);
                let col = self.complex.face_index(&f).expect("closed under subsets");
                m.set(r, col, 2);
            }
        }
        Ok(m)
    }
}

/// `1 + 5t + 6t^2 + 2t^3` style rendering of a Hilbert function.
pub struct HilbertSeries<'a>(pub &'a [usize]);

impl fmt::Display for HilbertSeries<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;

    #[test]
    fn dimensions() {
        let a = AlgebraModel::new(builtin("example_2_1").unwrap());
        assert_eq!(a.hilbert_function(), vec![1, 5, 6, 2]);
        let a = AlgebraModel::new(builtin("cycle(4)").unwrap());
        assert_eq!(a.hilbert_function(), vec![1, 4, 4]);
        let a = AlgebraModel::new(SimplicialComplex::from_facets(1, [vec![1]]).unwrap());
        assert_eq!(a.hilbert_function(), vec![1, 1]);
    }

    #[test]
    fn hilbert_series_text() {
        assert_eq!(HilbertSeries(&[1, 5, 6, 2]).to_string(), "1 + 5t + 6t^2 + 2t^3");
        assert_eq!(HilbertSeries(&[1, 1]).to_string(), "1 + t");
    }

    #[test]
    fn top_map_has_no_rows() {
        let a = AlgebraModel::new(builtin("octahedron").unwrap());
        let m = a.lefschetz_matrix(3).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 8));
        assert!(matches!(
            a.lefschetz_matrix(4),
            Err(LefschetzError::DegreeOutOfRange { degree: 4, max: 3 })
        ));
    }

    #[test]
    fn weighted_form_entries() {
        let a = AlgebraModel::new(builtin("cycle(4)").unwrap());
        let form = LinearForm::new(vec![1, 2, 3, 4]).unwrap();
        let m = a.multiplication_matrix(1, &form).unwrap();
        // row 12, column x_1 picks up the coefficient of x_2
        assert_eq!(m.get_i64(0, 0), 2);
        assert_eq!(m.get_i64(0, 1), 1);
        let m0 = a.multiplication_matrix(0, &form).unwrap();
        assert_eq!(m0, IntMatrix::from_rows(&[vec![1], vec![2], vec![3], vec![4]]));
        assert!(LinearForm::new(vec![0, 0]).is_err());
        assert!(a.multiplication_matrix(1, &LinearForm::new(vec![1]).unwrap()).is_err());
    }
}
