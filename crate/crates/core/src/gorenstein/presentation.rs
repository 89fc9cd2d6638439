use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::GorensteinError;
use crate::complex::{cycle, Face};
use crate::linalg::{self, IntMatrix};

/// A variable of `k[x_1..x_n, y_1..y_n]`; all `x` sort before all `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X(u32),
    Y(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(j) => write!(f, "x{j}"),
            Var::Y(j) => write!(f, "y{j}"),
        }
    }
}

/// A degree-2 monomial, stored with its variables in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Var, Var);

impl Monomial {
    pub fn new(a: Var, b: Var) -> Self {
        if a <= b {
            Monomial(a, b)
        } else {
            Monomial(b, a)
        }
    }

    pub fn vars(&self) -> (Var, Var) {
        (self.0, self.1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == self.1 {
            write!(f, "{}^2", self.0)
        } else {
            write!(f, "{}*{}", self.0, self.1)
        }
    }
}

/// A homogeneous quadric: integer combination of degree-2 monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadric {
    terms: Vec<(Monomial, i64)>,
}

impl Quadric {
    /// Sums like terms, drops zeros and sorts by monomial.
    pub fn new(terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Quadric { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Quadric { terms: vec![(m, 1)] }
    }

    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    /// The same quadric scaled so the leading term has coefficient `+1`
    /// (or is positive, when coefficients are not units).
    pub fn normalized(&self) -> Quadric {
        let flip = self.terms.first().is_some_and(|&(_, c)| c < 0);
        let terms = self.terms.iter().map(|&(m, c)| (m, if flip { -c } else { c })).collect();
        Quadric { terms }
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            let sign = match (k, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            match c.unsigned_abs() {
                1 => write!(f, "{sign}{m}")?,
                a => write!(f, "{sign}{a}*{m}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Quadric {
    type Err = GorensteinError;

    /// Parses the rendering of [`Quadric`], e.g. `-x2*y1 + x4*y3` or `x1^2`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |message: &str| GorensteinError::ParseQuadric {
            text: text.to_string(),
            message: message.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if compact.is_empty() {
            return Err(fail("empty"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ if terms.is_empty() => (false, rest),
                _ => return Err(fail("expected + or -")),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let mut coefficient: i64 = 1;
            let mut vars = Vec::new();
            for factor in term.split('*') {
                if let Ok(c) = factor.parse::<i64>() {
                    coefficient *= c;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((name, p)) => (name, p.parse::<usize>().map_err(|_| fail("bad exponent"))?),
                    None => (factor, 1),
                };
                let index = name.get(1..).and_then(|s| s.parse::<u32>().ok()).ok_or_else(|| fail("bad variable"))?;
                let var = match name.as_bytes().first() {
                    Some(b'x') => Var::X(index),
                    Some(b'y') => Var::Y(index),
                    _ => return Err(fail("bad variable")),
                };
                vars.extend(std::iter::repeat(var).take(power));
            }
            if vars.len() != 2 {
                return Err(fail("term is not of degree 2"));
            }
            terms.push((Monomial::new(vars[0], vars[1]), if negative { -coefficient } else { coefficient }));
        }
        Ok(Quadric::new(terms))
    }
}

/// Quadric presentation of the idealization of `A(cycle(2a))` as a quotient
/// of `k[x_1..x_n, y_1..y_n]`. The variable `y_m` stands for the dual of the
/// facet `facets[m - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub n: u32,
    pub facets: Vec<Face>,
    /// Generators of the Stanley–Reisner part: squares and non-edges.
    pub base: Vec<Quadric>,
    /// All `y_j y_k`.
    pub dual_products: Vec<Quadric>,
    /// Relations between `x_j y_m` coming from the module action.
    pub mixed: Vec<Quadric>,
}

/// Edges of the cycle ordered by largest vertex, then the next one down.
fn colex_edges(n: u32) -> Vec<Face> {
    let mut edges: Vec<Face> = cycle(n as usize).facets().to_vec();
    edges.sort_by(|a, b| a.vertices().iter().rev().cmp(b.vertices().iter().rev()));
    edges
}

pub fn even_cycle_presentation(a: usize) -> Result<Presentation, GorensteinError> {
    if a < 2 {
        return Err(GorensteinError::CycleTooShort(a));
    }
    let n = 2 * a as u32;
    let facets = colex_edges(n);
    let is_edge = |j: u32, k: u32| facets.iter().any(|f| f.vertices() == [j, k]);

    let mut base: Vec<Quadric> = (1..=n).map(|j| Quadric::monomial(Monomial::new(Var::X(j), Var::X(j)))).collect();
    for (j, k) in (1..=n).tuple_combinations() {
        if !is_edge(j, k) {
            base.push(Quadric::monomial(Monomial::new(Var::X(j), Var::X(k))));
        }
    }

    let dual_products = (1..=n)
        .combinations_with_replacement(2)
        .map(|p| Quadric::monomial(Monomial::new(Var::Y(p[0]), Var::Y(p[1]))))
        .collect();

    let mut mixed = Vec::new();
    // x_u · y*_{uv} = y*_v: two products for each vertex v
    let mut landing: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for (m, f) in facets.iter().enumerate() {
        let y = Var::Y(m as u32 + 1);
        for j in 1..=n {
            let mono = Monomial::new(Var::X(j), y);
            if f.contains(j) {
                let other = f.without(j).vertices()[0];
                landing.entry(other).or_default().push(mono);
            } else {
                mixed.push(Quadric::monomial(mono));
            }
        }
    }
    for products in landing.values() {
        let [p, q] = products.as_slice() else { unreachable!("each vertex lies on two edges") };
        mixed.push(Quadric::new([(*p, 1), (*q, -1)]));
    }
    mixed.sort();

    Ok(Presentation { n, facets, base, dual_products, mixed })
}

impl Presentation {
    pub fn generators(&self) -> impl Iterator<Item = &Quadric> {
        self.base.iter().chain(&self.dual_products).chain(&self.mixed)
    }

    pub fn generator_count(&self) -> usize {
        self.base.len() + self.dual_products.len() + self.mixed.len()
    }

    /// One generator per line in `x1*y1 - x3*y2` notation.
    pub fn to_text(&self) -> String {
        self.generators().map(|g| format!("{g}\n")).collect()
    }

    fn variables(&self) -> Vec<Var> {
        (1..=self.n).map(Var::X).chain((1..=self.n).map(Var::Y)).collect()
    }

    /// Hilbert function of the quotient in degrees `0..=max_degree`,
    /// computed as the number of degree-`k` monomials minus the rank of the
    /// degree-`k` part of the ideal.
    pub fn quotient_hilbert_function(&self, max_degree: usize) -> Vec<usize> {
        let vars = self.variables();
        let monomials = |k: usize| -> Vec<Vec<Var>> { vars.iter().copied().combinations_with_replacement(k).collect() };
        (0..=max_degree)
            .map(|k| {
                let cols = monomials(k);
                if k < 2 {
                    return cols.len();
                }
                let index: HashMap<&[Var], usize> = cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
                let multipliers = monomials(k - 2);
                let mut m = IntMatrix::zeros(multipliers.len() * self.generator_count(), cols.len());
                let mut row = 0;
                for u in &multipliers {
                    for g in self.generators() {
                        for &(mono, c) in g.terms() {
                            let (p, q) = mono.vars();
                            let mut prod = u.clone();
                            prod.extend([p, q]);
                            prod.sort();
                            m.add_to(row, index[prod.as_slice()], c);
                        }
                        row += 1;
                    }
                }
                cols.len() - linalg::rank(&m).rank
            })
            .collect()
    }
}
