//! Invariant checks over a Coxeter system and a ball of its Cayley graph.
//! Each returns a [`Check`] carrying the first falsifying witness.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Order};
use crate::davis::{separating_roots, FlagComplexBall};
use crate::elements::{normal_form, Ball, ElementsError, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub cases: usize,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, cases: usize, witness: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            passed: witness.is_none(),
            cases,
            witness,
        }
    }
}

/// σ_s² = 1, σ_sᵀBσ_s = B and (σ_sσ_t)^m = 1 for finite m, all exactly.
pub fn representation(sys: &CoxeterSystem) -> Check {
    let n = sys.rank();
    let b = sys.gram();
    let mut cases = 0;
    let mut witness = None;
    for s in 0..n {
        let sigma = &sys.sigma()[s];
        cases += 2;
        if !sigma.mul(sigma).is_identity() {
            witness.get_or_insert(format!("sigma_{} is not an involution", sys.labels()[s]));
        }
        if sigma.transpose().mul(b).mul(sigma) != *b {
            witness.get_or_insert(format!("sigma_{} does not preserve B", sys.labels()[s]));
        }
        for t in s + 1..n {
            if let Order::Finite(m) = sys.order(s, t) {
                cases += 1;
                let word: Vec<usize> = [s, t]
                    .iter()
                    .copied()
                    .cycle()
                    .take(2 * m as usize)
                    .collect();
                if !sys.word_matrix(&word).is_identity() {
                    witness.get_or_insert(format!(
                        "(sigma_{} sigma_{})^{m} is not the identity",
                        sys.labels()[s],
                        sys.labels()[t]
                    ));
                }
            }
        }
    }
    Check::new("representation", cases, witness)
}

/// Normal forms and integral matrices of the ball are in bijection, with
/// every matrix recomputed from its word and every normal form recomputed
/// by the word-problem solver.
pub fn faithfulness(sys: &CoxeterSystem, ball: &Ball) -> Result<Check, ElementsError> {
    let mut by_matrix: HashMap<IntMatrix, usize> = HashMap::new();
    let mut words = HashSet::new();
    let mut witness = None;
    for (i, w) in ball.elements().iter().enumerate() {
        let m = IntMatrix::from_word(sys, w.word())
            .map_err(|_| ElementsError::Overflow { length: w.length() })?;
        if &m != ball.int_matrix(i) {
            witness.get_or_insert(format!(
                "matrix of {} disagrees with the enumeration",
                w.display(sys)
            ));
        }
        if normal_form(sys, w.word())? != *w {
            witness.get_or_insert(format!("{} is not in normal form", w.display(sys)));
        }
        if let Some(j) = by_matrix.insert(m, i) {
            witness.get_or_insert(format!(
                "{} and {} share a matrix",
                ball.element(j).display(sys),
                w.display(sys)
            ));
        }
        if !words.insert(w.word().to_vec()) {
            witness.get_or_insert(format!("{} enumerated twice", w.display(sys)));
        }
    }
    Ok(Check::new("faithfulness", ball.len(), witness))
}

/// Connected generator subsets of size at most `max_size`.
pub fn connected_subsets(sys: &CoxeterSystem, max_size: usize) -> Vec<Vec<usize>> {
    let n = sys.rank();
    assert!(n < 32, "rank too large for subset enumeration");
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&s| mask >> s & 1 == 1).collect::<Vec<_>>())
        .filter(|t| t.len() <= max_size && sys.components_of(t).len() == 1)
        .collect()
}

/// Table-based and Gram-minor classification agree on every connected
/// subset of size at most 6.
pub fn classification(sys: &CoxeterSystem) -> Check {
    let subsets = connected_subsets(sys, 6);
    let witness = subsets.iter().find_map(|t| {
        let table = sys.classify_by_table(t).ok()?.kind;
        let minors = sys.classify_by_minors(t).ok()?;
        (table != minors).then(|| format!("subset {t:?}: table {table:?}, minors {minors:?}"))
    });
    Check::new("classification", subsets.len(), witness)
}

/// The walls crossed by the normal-form gallery to w are pairwise distinct
/// and number ℓ(w).
pub fn wall_length(sys: &CoxeterSystem, ball: &Ball) -> Result<Check, ElementsError> {
    let mut witness = None;
    for w in ball.elements() {
        let roots = separating_roots(sys, w.word())
            .map_err(|_| ElementsError::Overflow { length: w.length() })?;
        let distinct: HashSet<_> = roots.iter().collect();
        if distinct.len() != w.length() {
            witness.get_or_insert(format!(
                "{} has length {} but {} distinct separating walls",
                w.display(sys),
                w.length(),
                distinct.len()
            ));
        }
    }
    Ok(Check::new("wall_length", ball.len(), witness))
}

pub fn flags(sys: &CoxeterSystem, complex: &FlagComplexBall) -> Check {
    Check::new(
        "davis_flags",
        complex.simplices.len(),
        complex.check_flags(sys).err(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::library;

    #[test]
    fn library_systems_pass() {
        for sys in library::test_systems() {
            assert!(representation(&sys).passed);
            assert!(classification(&sys).passed);
            let ball = Ball::new(&sys, 4, 100_000).unwrap();
            assert!(faithfulness(&sys, &ball).unwrap().passed);
            assert!(wall_length(&sys, &ball).unwrap().passed);
        }
    }

    #[test]
    fn connected_subsets_of_a_path() {
        let sys = library::a3();
        // {0}, {1}, {2}, {0,1}, {1,2}, {0,1,2}
        assert_eq!(connected_subsets(&sys, 6).len(), 6);
    }
}
