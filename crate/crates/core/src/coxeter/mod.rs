//! Coxeter systems, their diagrams, the Tits form and reflection matrices.

mod classify;
pub mod library;
mod parse;

use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::{Serialize, Serializer};

use crate::exact::{
    cos_pi_over, make_context, two_cos_pi_over, ExactReal, FieldContext, IntRing, Matrix,
};

pub use classify::{degrees_of, order_from_name, Kind, TypeVerdict};
pub use parse::ParseError;

/// Order m_{s,t} of a product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// Coxeter diagram adjacency: m ≥ 3, including ∞.
    pub fn is_edge(self) -> bool {
        !matches!(self, Order::Finite(1 | 2))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => s.serialize_u32(*m),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("empty generator subset")]
    EmptySubset,
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("system is reducible ({0} diagram components); classify each component separately")]
    Reducible(usize),
    #[error("classification table says {table:?} but Gram minors say {minors:?} on {subset:?}")]
    ClassificationMismatch {
        subset: Vec<usize>,
        table: Kind,
        minors: Kind,
    },
}

/// A Coxeter system with its Tits form B and reflection matrices σ_s, all
/// computed exactly at construction.
#[derive(Clone)]
pub struct CoxeterSystem {
    labels: Vec<String>,
    matrix: Vec<Vec<Order>>,
    field: Arc<FieldContext>,
    gram: Matrix,
    sigma: Vec<Matrix>,
    /// For each s, the pairs (t, 2cos(π/m_{s,t})) with t ≠ s and m_{s,t} ≠ 2.
    couplings: Vec<Vec<(usize, ExactReal)>>,
    ring: IntRing,
    /// The same couplings as integral coefficient vectors.
    int_couplings: Vec<Vec<(usize, Vec<i128>)>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("labels", &self.labels)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// Partition of the generators by connected components of the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramComponentization {
    pub components: Vec<Vec<usize>>,
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix and precomputes B and every σ_s.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Order>>) -> Result<Self, ParseError> {
        let n = matrix.len();
        if labels.len() != n {
            return Err(ParseError::Shape(format!(
                "{} labels for a rank-{n} matrix",
                labels.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(ParseError::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if matrix[i][i] != Order::Finite(1) {
                return Err(ParseError::Diagonal { index: i });
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(ParseError::Asymmetric { row: i, col: j });
                }
                if i != j && matches!(matrix[i][j], Order::Finite(0 | 1)) {
                    return Err(ParseError::OffDiagonal { row: i, col: j });
                }
            }
        }
        let field = make_context(matrix.iter().flatten().copied());
        let gram = Matrix::from_fn(n, |i, j| {
            -cos_pi_over(&field, matrix[i][j]).expect("order divides level")
        });
        let couplings: Vec<Vec<(usize, ExactReal)>> = (0..n)
            .map(|s| {
                (0..n)
                    .filter(|&t| t != s && matrix[s][t] != Order::Finite(2))
                    .map(|t| {
                        (
                            t,
                            two_cos_pi_over(&field, matrix[s][t]).expect("order divides level"),
                        )
                    })
                    .collect()
            })
            .collect();
        let sigma = (0..n)
            .map(|s| {
                // column t is u_t - 2B(u_t, u_s) u_s
                let mut m = Matrix::identity(&field, n);
                m[(s, s)] = ExactReal::from_i64(&field, -1);
                for (t, c) in &couplings[s] {
                    m[(s, *t)] = c.clone();
                }
                m
            })
            .collect();
        let ring = IntRing::new(&field);
        let int_couplings = couplings
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(t, c)| {
                        (
                            *t,
                            ring.from_exact(c)
                                .expect("2cos values are small algebraic integers"),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            labels,
            matrix,
            field,
            gram,
            sigma,
            couplings,
            ring,
            int_couplings,
        })
    }

    /// Builds a system with default labels `s0, s1, …`.
    pub fn from_orders(matrix: Vec<Vec<Order>>) -> Result<Self, ParseError> {
        let labels = (0..matrix.len()).map(|i| format!("s{i}")).collect();
        Self::new(labels, matrix)
    }

    /// Parses the plain-text matrix format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_text(text)
    }

    /// Parses the JSON format `{"generators": [...], "matrix": [[...]]}`.
    pub fn parse_json(text: &str) -> Result<Self, ParseError> {
        parse::parse_json(text)
    }

    /// Picks the JSON or text parser from the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse(text)
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<Order>] {
        &self.matrix
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn ring(&self) -> &IntRing {
        &self.ring
    }

    /// Pairs (t, 2cos(π/m_{s,t})) for t ≠ s with m_{s,t} ≠ 2, as integral
    /// coefficient vectors.
    pub fn int_couplings(&self, s: usize) -> &[(usize, Vec<i128>)] {
        &self.int_couplings[s]
    }

    pub fn couplings(&self, s: usize) -> &[(usize, ExactReal)] {
        &self.couplings[s]
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn sigma(&self) -> &[Matrix] {
        &self.sigma
    }

    pub fn sigma_of(&self, s: usize) -> Result<&Matrix, CoxeterError> {
        self.sigma.get(s).ok_or(CoxeterError::UnknownGenerator(s))
    }

    pub fn is_right_angled(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, m)| i == j || matches!(m, Order::Finite(2) | Order::Infinite))
        })
    }

    /// B(x, y) for coordinate vectors in the simple-root basis.
    pub fn form(&self, x: &[ExactReal], y: &[ExactReal]) -> ExactReal {
        let by = self.gram.apply(y);
        let mut acc = ExactReal::zero(&self.field);
        for (a, b) in x.iter().zip(&by) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    pub fn simple_root(&self, s: usize) -> Vec<ExactReal> {
        (0..self.rank())
            .map(|t| {
                if t == s {
                    ExactReal::one(&self.field)
                } else {
                    ExactReal::zero(&self.field)
                }
            })
            .collect()
    }

    /// v ← σ_s(v). Only coordinate s changes.
    pub fn reflect_in_place(&self, s: usize, v: &mut [ExactReal]) {
        let mut acc = -&v[s];
        for (t, c) in &self.couplings[s] {
            if !v[*t].is_zero() {
                acc = &acc + &(c * &v[*t]);
            }
        }
        v[s] = acc;
    }

    /// M ← M·σ_s (column operations).
    pub fn right_multiply_in_place(&self, m: &mut Matrix, s: usize) {
        let n = self.rank();
        for (t, c) in &self.couplings[s] {
            for i in 0..n {
                if !m[(i, s)].is_zero() {
                    let add = c * &m[(i, s)];
                    m[(i, *t)] = &m[(i, *t)] + &add;
                }
            }
        }
        for i in 0..n {
            m[(i, s)] = -&m[(i, s)];
        }
    }

    /// M ← σ_s·M (row operation on row s).
    pub fn left_multiply_in_place(&self, s: usize, m: &mut Matrix) {
        let n = self.rank();
        for j in 0..n {
            let mut acc = -&m[(s, j)];
            for (t, c) in &self.couplings[s] {
                if !m[(*t, j)].is_zero() {
                    acc = &acc + &(c * &m[(*t, j)]);
                }
            }
            m[(s, j)] = acc;
        }
    }

    /// σ of a word (not necessarily reduced).
    pub fn word_matrix(&self, word: &[usize]) -> Matrix {
        let mut m = Matrix::identity(&self.field, self.rank());
        for &s in word {
            self.right_multiply_in_place(&mut m, s);
        }
        m
    }

    /// Connected components of the Coxeter diagram restricted to `subset`,
    /// ordered by least member.
    pub fn components_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(subset.len());
        for (a, &s) in subset.iter().enumerate() {
            for (b, &t) in subset.iter().enumerate().skip(a + 1) {
                if self.matrix[s][t].is_edge() {
                    uf.union(a, b);
                }
            }
        }
        let labels = uf.into_labeling();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (a, &s) in subset.iter().enumerate() {
            match seen.iter().find(|(l, _)| *l == labels[a]) {
                Some(&(_, k)) => blocks[k].push(s),
                None => {
                    seen.push((labels[a], blocks.len()));
                    blocks.push(vec![s]);
                }
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        blocks
    }

    pub fn components(&self) -> DiagramComponentization {
        let all: Vec<usize> = (0..self.rank()).collect();
        DiagramComponentization {
            components: self.components_of(&all),
        }
    }

    /// Restriction to a subset of generators, relabelled in the given order.
    pub fn restrict(&self, subset: &[usize]) -> CoxeterSystem {
        let labels = subset.iter().map(|&s| self.labels[s].clone()).collect();
        let matrix = subset
            .iter()
            .map(|&s| subset.iter().map(|&t| self.matrix[s][t]).collect())
            .collect();
        CoxeterSystem::new(labels, matrix).expect("restriction of a valid matrix")
    }

    /// Text serialization in the matrix format accepted by [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.rank());
        for row in &self.matrix {
            let line: Vec<String> = row.iter().map(Order::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::library;
    use super::*;

    #[test]
    fn sigma_columns() {
        let sys = library::dihedral(Order::Finite(3));
        let s = sys.sigma_of(0).unwrap();
        let us = sys.simple_root(0);
        let ut = sys.simple_root(1);
        assert_eq!(s.apply(&us), us.iter().map(|x| -x).collect::<Vec<_>>());
        // σ_s(u_t) = u_t + u_s when m = 3
        let expect: Vec<ExactReal> = us.iter().zip(&ut).map(|(a, b)| a + b).collect();
        assert_eq!(s.apply(&ut), expect);
        assert!(matches!(
            sys.sigma_of(7),
            Err(CoxeterError::UnknownGenerator(7))
        ));

        let commuting = library::dihedral(Order::Finite(2));
        let ut = commuting.simple_root(1);
        assert_eq!(commuting.sigma_of(0).unwrap().apply(&ut), ut);
    }

    #[test]
    fn gram_entries() {
        let sys = library::dihedral(Order::Finite(3));
        assert_eq!(sys.gram()[(0, 1)].to_string(), "-1/2");
        assert!(sys.gram()[(0, 0)].is_one());
        let inf = library::dihedral(Order::Infinite);
        assert_eq!(inf.gram()[(0, 1)], ExactReal::from_i64(inf.field(), -1));
    }

    #[test]
    fn in_place_updates_match_products() {
        for sys in library::test_systems() {
            let n = sys.rank();
            let word: Vec<usize> = (0..7).map(|i| (i * 5 + 1) % n).collect();
            let mut left = Matrix::identity(sys.field(), n);
            for &s in word.iter().rev() {
                sys.left_multiply_in_place(s, &mut left);
            }
            let prod = word.iter().fold(Matrix::identity(sys.field(), n), |m, &s| {
                m.mul(&sys.sigma()[s])
            });
            assert_eq!(left, prod);
            assert_eq!(sys.word_matrix(&word), prod);
            let mut v = sys.simple_root(0);
            for &s in word.iter().rev() {
                sys.reflect_in_place(s, &mut v);
            }
            assert_eq!(v, prod.column(0));
        }
    }

    #[test]
    fn representation_identities() {
        for sys in library::test_systems() {
            let b = sys.gram();
            for (s, m) in sys.sigma().iter().enumerate() {
                assert!(m.mul(m).is_identity(), "σ_{s}² ≠ 1");
                assert_eq!(&m.transpose().mul(b).mul(m), b);
            }
            for s in 0..sys.rank() {
                for t in 0..sys.rank() {
                    if let Order::Finite(k) = sys.order(s, t) {
                        let st = sys.sigma()[s].mul(&sys.sigma()[t]);
                        let mut p = Matrix::identity(sys.field(), sys.rank());
                        for _ in 0..k {
                            p = p.mul(&st);
                        }
                        assert!(p.is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            library::dihedral(Order::Finite(3)).components().components,
            vec![vec![0, 1]]
        );
        assert_eq!(
            library::dihedral(Order::Finite(2)).components().components,
            vec![vec![0], vec![1]]
        );
        let f = Order::Finite;
        let sys = CoxeterSystem::from_orders(vec![
            vec![f(1), f(3), f(2), f(2)],
            vec![f(3), f(1), f(2), f(2)],
            vec![f(2), f(2), f(1), Order::Infinite],
            vec![f(2), f(2), Order::Infinite, f(1)],
        ])
        .unwrap();
        assert_eq!(sys.components().components, vec![vec![0, 1], vec![2, 3]]);
    }
}
