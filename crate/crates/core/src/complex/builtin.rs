//! Named complexes used throughout the tests and the CLI.

use super::{independence_complex, ComplexError, SimplicialComplex};
use crate::graph::Graph;

pub const BUILTIN_NAMES: &[&str] = &[
    "cycle(m)",
    "path_independence(m)",
    "octahedron",
    "tetrahedron_boundary",
    "torus_7",
    "example_2_1",
];

/// Looks up a builtin by name. Parametrized families take their size in
/// parentheses: `cycle(4)`, `path_independence(7)`.
pub fn builtin(name: &str) -> Result<SimplicialComplex, ComplexError> {
    let unknown = || ComplexError::UnknownBuiltin(name.to_string());
    let name = name.trim();
    if let Some((family, rest)) = name.split_once('(') {
        let arg: usize = rest
            .strip_suffix(')')
            .and_then(|a| a.trim().parse().ok())
            .ok_or_else(unknown)?;
        return match family.trim() {
            "cycle" if arg >= 3 => Ok(cycle(arg)),
            "path_independence" if arg >= 1 => Ok(path_independence(arg)),
            _ => Err(unknown()),
        };
    }
    match name {
        "octahedron" => Ok(octahedron()),
        "tetrahedron_boundary" => Ok(tetrahedron_boundary()),
        "torus_7" => Ok(torus_7()),
        "example_2_1" => SimplicialComplex::from_facets(5, [vec![1, 2, 3], vec![1, 3, 4], vec![4, 5]]),
        _ => Err(unknown()),
    }
}

/// The 1-dimensional cycle `⟨12, 23, ..., m1⟩`.
pub fn cycle(m: usize) -> SimplicialComplex {
    let m = m as u32;
    let facets = (1..=m).map(|i| vec![i, i % m + 1]);
    SimplicialComplex::from_facets(m, facets).expect("valid cycle")
}

pub fn path_independence(m: usize) -> SimplicialComplex {
    let path = Graph::new(m, (1..m).map(|i| (i - 1, i))).expect("valid path");
    independence_complex(&path)
}

/// Boundary of the cross-polytope; antipodal pairs are (1,2), (3,4), (5,6).
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_facets(6, facets).expect("valid octahedron")
}

pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::from_facets(4, [vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]])
        .expect("valid tetrahedron")
}

/// Möbius' 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// taken mod 7.
pub fn torus_7() -> SimplicialComplex {
    let label = |i: u32| i % 7 + 1;
    let facets = (0..7u32).flat_map(|i| {
        [
            vec![label(i), label(i + 1), label(i + 3)],
            vec![label(i), label(i + 2), label(i + 3)],
        ]
    });
    SimplicialComplex::from_facets(7, facets).expect("valid torus")
}
