use serde::Serialize;

use super::graph::DefiningGraph;
use crate::coxeter::{CoxeterSystem, Order};

/// A generator or its inverse. Ordered g₀ < g₀⁻¹ < g₁ < …
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }
}

/// Partially commutative groups: right-angled Artin groups, or right-angled
/// Coxeter groups when every generator is an involution.
///
/// Two reduced words are equal in the group iff they differ by commuting
/// adjacent letters, so the lexicographically least reduced word is a
/// normal form.
#[derive(Debug, Clone)]
pub struct Commutation {
    n: usize,
    commute: Vec<bool>,
    involutive: bool,
}

impl Commutation {
    pub fn raag(g: &DefiningGraph) -> Self {
        let n = g.len();
        let mut commute = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                commute[a * n + b] = a == b || g.adjacent(a, b);
            }
        }
        Self {
            n,
            commute,
            involutive: false,
        }
    }

    /// `None` unless the system is right-angled.
    pub fn racg(sys: &CoxeterSystem) -> Option<Self> {
        if !sys.is_right_angled() {
            return None;
        }
        let n = sys.rank();
        let mut commute = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                commute[a * n + b] = a == b || sys.order(a, b) == Order::Finite(2);
            }
        }
        Some(Self {
            n,
            commute,
            involutive: true,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.commute[a * self.n + b]
    }

    pub fn inverse(&self, x: Letter) -> Letter {
        if self.involutive {
            x
        } else {
            Letter {
                generator: x.generator,
                inverse: !x.inverse,
            }
        }
    }

    /// The letters of the alphabet in order.
    pub fn alphabet(&self) -> Vec<Letter> {
        (0..self.n)
            .flat_map(|g| {
                if self.involutive {
                    vec![Letter::new(g)]
                } else {
                    vec![Letter::new(g), Letter::inv(g)]
                }
            })
            .collect()
    }

    /// Appends `x` to a reduced word, cancelling against the last letter
    /// that `x` can be shuffled next to.
    pub fn push_reduced(&self, word: &mut Vec<Letter>, x: Letter) {
        let target = self.inverse(x);
        for k in (0..word.len()).rev() {
            if word[k] == target {
                word.remove(k);
                return;
            }
            if !self.commutes(word[k].generator, x.generator) {
                break;
            }
        }
        word.push(x);
    }

    pub fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            self.push_reduced(&mut out, x);
        }
        out
    }

    /// Lexicographically least rearrangement of a reduced word.
    pub fn lex_least(&self, word: &[Letter]) -> Vec<Letter> {
        let mut rest = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let free = rest[..i].iter().all(|y| {
                    y.generator != rest[i].generator
                        && self.commutes(y.generator, rest[i].generator)
                });
                if free && best.is_none_or(|b| rest[i] < rest[b]) {
                    best = Some(i);
                }
            }
            out.push(rest.remove(best.expect("the first letter is always free")));
        }
        out
    }

    pub fn normal_form(&self, word: &[Letter]) -> Vec<Letter> {
        self.lex_least(&self.reduce(word))
    }

    /// Normal form of nf·x for a word already in normal form.
    pub fn multiply_letter(&self, nf: &[Letter], x: Letter) -> Vec<Letter> {
        let mut w = nf.to_vec();
        self.push_reduced(&mut w, x);
        self.lex_least(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::library;
    use crate::elements::IntMatrix;
    use proptest::prelude::*;

    #[test]
    fn free_cancellation_through_commuting_letters() {
        let g = DefiningGraph::path(3);
        let pc = Commutation::raag(&g);
        // a b a⁻¹ with a, b adjacent collapses to b
        let w = pc.normal_form(&[Letter::new(0), Letter::new(1), Letter::inv(0)]);
        assert_eq!(w, vec![Letter::new(1)]);
        // a c a⁻¹ with a, c not adjacent stays
        let w = pc.normal_form(&[Letter::new(0), Letter::new(2), Letter::inv(0)]);
        assert_eq!(w.len(), 3);
        // c b = b c
        assert_eq!(
            pc.normal_form(&[Letter::new(2), Letter::new(1)]),
            vec![Letter::new(1), Letter::new(2)]
        );
    }

    proptest! {
        #[test]
        fn racg_normal_form_agrees_with_matrices(a in proptest::collection::vec(0usize..5, 0..10),
                                                 b in proptest::collection::vec(0usize..5, 0..10)) {
            let sys = library::right_angled_polygon(5);
            let pc = Commutation::racg(&sys).unwrap();
            let letters = |w: &[usize]| w.iter().map(|&s| Letter::new(s)).collect::<Vec<_>>();
            let same_nf = pc.normal_form(&letters(&a)) == pc.normal_form(&letters(&b));
            let same_matrix = IntMatrix::from_word(&sys, &a).unwrap() == IntMatrix::from_word(&sys, &b).unwrap();
            prop_assert_eq!(same_nf, same_matrix);
            let nf = pc.normal_form(&letters(&a));
            let general = crate::elements::normal_form(&sys, &a).unwrap();
            prop_assert_eq!(nf.len(), general.length());
        }
    }
}
