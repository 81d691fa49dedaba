//! The word problem: ShortLex normal forms, multiplication, descents, balls,
//! minimal coset representatives and finite special subgroups.

mod rep;

use std::cmp::Ordering;
use std::collections::HashMap;

use indexmap::IndexSet;
use serde::Serialize;

use crate::coxeter::CoxeterSystem;
use crate::exact::{Matrix, Overflow};

pub use rep::IntMatrix;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementsError {
    #[error("element budget of {budget} exceeded ({count} elements enumerated)")]
    Budget { budget: usize, count: usize },
    #[error("matrix coefficients overflowed 64-bit integers at length {length}")]
    Overflow { length: usize },
    #[error("generator subset {0:?} is not spherical")]
    NotSpherical(Vec<usize>),
}

/// A group element as its ShortLex normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct GroupElement {
    word: Vec<usize>,
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { word: Vec::new() }
    }

    pub fn generator(s: usize) -> Self {
        Self { word: vec![s] }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn int_matrix(&self, sys: &CoxeterSystem) -> Result<IntMatrix, ElementsError> {
        IntMatrix::from_word(sys, &self.word).map_err(|_| ElementsError::Overflow {
            length: self.length(),
        })
    }

    /// σ(w) over the exact field.
    pub fn matrix(&self, sys: &CoxeterSystem) -> Matrix {
        sys.word_matrix(&self.word)
    }

    pub fn display(&self, sys: &CoxeterSystem) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        let labels = sys.labels();
        self.word
            .iter()
            .map(|&s| labels[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn overflow(length: usize) -> impl Fn(Overflow) -> ElementsError {
    move |_| ElementsError::Overflow { length }
}

/// ShortLex normal form of an arbitrary word: repeatedly peel off the
/// least left descent, read from the signs of σ(w⁻¹) on simple roots.
pub fn normal_form(sys: &CoxeterSystem, word: &[usize]) -> Result<GroupElement, ElementsError> {
    // m = σ(w⁻¹)
    let mut m = IntMatrix::identity(sys);
    for &s in word.iter().rev() {
        m.right_mul_gen(sys, s).map_err(overflow(word.len()))?;
    }
    let mut out = Vec::with_capacity(word.len());
    loop {
        let Some(s) = (0..sys.rank()).find(|&s| m.column_sign(sys, s) < 0) else {
            break;
        };
        out.push(s);
        m.right_mul_gen(sys, s).map_err(overflow(word.len()))?;
    }
    Ok(GroupElement { word: out })
}

/// ℓ(ws) < ℓ(w), decided by the sign of σ(w)(u_s).
pub fn is_right_descent(
    sys: &CoxeterSystem,
    w: &GroupElement,
    s: usize,
) -> Result<bool, ElementsError> {
    Ok(w.int_matrix(sys)?.column_sign(sys, s) < 0)
}

/// ℓ(sw) < ℓ(w).
pub fn is_left_descent(
    sys: &CoxeterSystem,
    w: &GroupElement,
    s: usize,
) -> Result<bool, ElementsError> {
    let rev: Vec<usize> = w.word.iter().rev().copied().collect();
    let m = IntMatrix::from_word(sys, &rev).map_err(overflow(rev.len()))?;
    Ok(m.column_sign(sys, s) < 0)
}

pub fn multiply(
    sys: &CoxeterSystem,
    w: &GroupElement,
    v: &GroupElement,
) -> Result<GroupElement, ElementsError> {
    if v.is_identity() {
        return Ok(w.clone());
    }
    let mut word = w.word.clone();
    word.extend_from_slice(&v.word);
    normal_form(sys, &word)
}

pub fn inverse(sys: &CoxeterSystem, w: &GroupElement) -> Result<GroupElement, ElementsError> {
    let rev: Vec<usize> = w.word.iter().rev().copied().collect();
    normal_form(sys, &rev)
}

/// w·s·w⁻¹.
pub fn conjugate_generator(
    sys: &CoxeterSystem,
    w: &GroupElement,
    s: usize,
) -> Result<GroupElement, ElementsError> {
    let mut word = w.word.clone();
    word.push(s);
    word.extend(w.word.iter().rev());
    normal_form(sys, &word)
}

/// The minimal-length element of wW_T, found by stripping right descents
/// in T.
pub fn min_coset_rep(
    sys: &CoxeterSystem,
    w: &GroupElement,
    subset: &[usize],
) -> Result<GroupElement, ElementsError> {
    let mut u = w.clone();
    let mut m = u.int_matrix(sys)?;
    while let Some(&t) = subset.iter().find(|&&t| m.column_sign(sys, t) < 0) {
        m.right_mul_gen(sys, t).map_err(overflow(u.length()))?;
        u = multiply(sys, &u, &GroupElement::generator(t))?;
    }
    Ok(u)
}

/// All elements of the finite special subgroup W_T in ShortLex order.
pub fn enumerate_special(
    sys: &CoxeterSystem,
    subset: &[usize],
    budget: usize,
) -> Result<Vec<GroupElement>, ElementsError> {
    if !sys.is_spherical(subset) {
        return Err(ElementsError::NotSpherical(subset.to_vec()));
    }
    let ball = Ball::build(sys, subset, None, budget)?;
    Ok(ball.elements)
}

/// Elements of length at most `radius`, ShortLex-sorted, with their
/// integral matrices and right-multiplication adjacency.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    generators: Vec<usize>,
    elements: Vec<GroupElement>,
    matrices: IndexSet<IntMatrix>,
    /// `adjacency[i][s]` is the index of `elements[i]·s` when it lies in the ball.
    adjacency: Vec<Vec<Option<usize>>>,
    layer_starts: Vec<usize>,
    exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallDump {
    pub radius: usize,
    pub generators: Vec<String>,
    pub elements: Vec<Vec<usize>>,
    /// Index pairs `[i, j]` with `i < j`, one per chamber-graph edge.
    pub adjacency: Vec<[usize; 2]>,
    /// Generator labelling each adjacency pair.
    pub edge_generators: Vec<usize>,
    pub growth: Vec<usize>,
    pub exhausted: bool,
}

impl Ball {
    /// Ball of radius `radius` over all generators.
    pub fn new(sys: &CoxeterSystem, radius: usize, budget: usize) -> Result<Self, ElementsError> {
        let all: Vec<usize> = (0..sys.rank()).collect();
        Self::build(sys, &all, Some(radius), budget)
    }

    /// Layered BFS over right multiplication by `generators`. With no radius
    /// the search runs until the subgroup is exhausted or the budget trips.
    ///
    /// Elements are deduplicated by their matrices (σ is faithful); the
    /// normal form of a new element v is s·NF(sv) for the least s with
    /// sv in the previous layer.
    pub fn build(
        sys: &CoxeterSystem,
        generators: &[usize],
        radius: Option<usize>,
        budget: usize,
    ) -> Result<Self, ElementsError> {
        let n = sys.rank();
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut matrices = IndexSet::new();
        matrices.insert(IntMatrix::identity(sys));
        let mut elements = vec![GroupElement::identity()];
        let mut adjacency: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut layer_starts = vec![0usize];
        if budget == 0 {
            return Err(ElementsError::Budget { budget, count: 0 });
        }
        let mut layer = 0usize;
        let exhausted = loop {
            if radius.is_some_and(|r| layer >= r) {
                break false;
            }
            let start = *layer_starts.last().expect("nonempty");
            let end = elements.len();
            let mut fresh: HashMap<IntMatrix, Vec<(usize, usize)>> = HashMap::new();
            let mut fresh_order: Vec<IntMatrix> = Vec::new();
            for i in start..end {
                for &s in &gens {
                    if adjacency[i][s].is_some() {
                        continue;
                    }
                    let mut m = matrices[i].clone();
                    m.right_mul_gen(sys, s).map_err(overflow(layer + 1))?;
                    if let Some(j) = matrices.get_index_of(&m) {
                        // only possible for a descent into the previous layer
                        adjacency[i][s] = Some(j);
                        adjacency[j][s] = Some(i);
                        continue;
                    }
                    match fresh.get_mut(&m) {
                        Some(parents) => parents.push((i, s)),
                        None => {
                            fresh_order.push(m.clone());
                            fresh.insert(m, vec![(i, s)]);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break true;
            }
            if elements.len() + fresh.len() > budget {
                return Err(ElementsError::Budget {
                    budget,
                    count: elements.len() + fresh.len(),
                });
            }
            let mut new_layer: Vec<(GroupElement, IntMatrix)> = Vec::with_capacity(fresh.len());
            for m in fresh_order {
                let mut word = None;
                for &s in &gens {
                    let mut left = m.clone();
                    left.left_mul_gen(sys, s).map_err(overflow(layer + 1))?;
                    if let Some(j) = matrices.get_index_of(&left) {
                        if j >= start {
                            let mut w = Vec::with_capacity(layer + 1);
                            w.push(s);
                            w.extend_from_slice(&elements[j].word);
                            word = Some(w);
                            break;
                        }
                    }
                }
                let word = word.expect("every new element has a left descent");
                new_layer.push((GroupElement { word }, m));
            }
            new_layer.sort_by(|a, b| a.0.cmp(&b.0));
            layer_starts.push(elements.len());
            for (el, m) in new_layer {
                let idx = elements.len();
                for &(parent, s) in &fresh[&m] {
                    adjacency[parent][s] = Some(idx);
                }
                let mut adj = vec![None; n];
                for &(parent, s) in &fresh[&m] {
                    adj[s] = Some(parent);
                }
                adjacency.push(adj);
                elements.push(el);
                matrices.insert(m);
            }
            layer += 1;
        };
        Ok(Self {
            radius: radius.unwrap_or(layer),
            generators: gens,
            elements,
            matrices,
            adjacency,
            layer_starts,
            exhausted,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether the BFS found no elements beyond the last layer, i.e. the
    /// (sub)group is finite and fully enumerated.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn int_matrix(&self, i: usize) -> &IntMatrix {
        &self.matrices[i]
    }

    pub fn neighbor(&self, i: usize, s: usize) -> Option<usize> {
        self.adjacency[i][s]
    }

    pub fn length_of(&self, i: usize) -> usize {
        self.elements[i].length()
    }

    /// Index of the element with matrix `m`.
    pub fn index_of_matrix(&self, m: &IntMatrix) -> Option<usize> {
        self.matrices.get_index_of(m)
    }

    pub fn index_of(&self, sys: &CoxeterSystem, w: &GroupElement) -> Option<usize> {
        if w.length() > self.radius {
            return None;
        }
        let m = w.int_matrix(sys).ok()?;
        self.index_of_matrix(&m)
    }

    /// Number of elements of each length 0..=radius.
    pub fn growth(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.layer_starts.windows(2).map(|w| w[1] - w[0]).collect();
        out.push(self.elements.len() - self.layer_starts.last().copied().unwrap_or(0));
        out
    }

    /// Index range of the elements of length exactly `k`.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        let start = self
            .layer_starts
            .get(k)
            .copied()
            .unwrap_or(self.elements.len());
        let end = self
            .layer_starts
            .get(k + 1)
            .copied()
            .unwrap_or(self.elements.len());
        start..end
    }

    /// Index of elements[i]·elements[j] if both the product and the path to
    /// it stay inside the ball.
    pub fn right_mul_word(&self, i: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(i, |cur, &s| self.adjacency[cur][s])
    }

    /// Undirected chamber-graph edges `(i, j, s)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(s, &j)| j.filter(|&j| i < j).map(|j| (i, j, s)))
        })
    }

    pub fn dump(&self, sys: &CoxeterSystem) -> BallDump {
        let mut adjacency = Vec::new();
        let mut edge_generators = Vec::new();
        for (i, j, s) in self.edges() {
            adjacency.push([i, j]);
            edge_generators.push(s);
        }
        BallDump {
            radius: self.radius,
            generators: sys.labels().to_vec(),
            elements: self.elements.iter().map(|e| e.word.clone()).collect(),
            adjacency,
            edge_generators,
            growth: self.growth(),
            exhausted: self.exhausted,
        }
    }
}
