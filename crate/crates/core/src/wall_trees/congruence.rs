use indexmap::IndexSet;
use serde::Serialize;
use thiserror::Error;

use super::modp::{ModMatrix, ModRing};
use crate::coxeter::CoxeterSystem;
use crate::davis::spherical_subsets;
use crate::elements::{enumerate_special, normal_form, ElementsError, GroupElement, IntMatrix};
use crate::exact::Overflow;

/// Primes tried in order when none is given.
pub const PRIME_LADDER: [u32; 4] = [3, 5, 7, 11];

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("{0} is not an odd prime below 65536")]
    NotOddPrime(u32),
    #[error("image of the representation mod {prime} exceeds the budget of {budget} elements; try a larger prime or a smaller system")]
    Budget { prime: u32, budget: usize },
    #[error("no prime in {tried:?} gave a torsion-free kernel within budget")]
    Ladder { tried: Vec<u32> },
    #[error(transparent)]
    Elements(#[from] ElementsError),
}

impl From<Overflow> for CongruenceError {
    fn from(_: Overflow) -> Self {
        CongruenceError::Elements(ElementsError::Overflow { length: 0 })
    }
}

/// Injectivity of the reduction on one maximal spherical special subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalCheck {
    pub subset: Vec<usize>,
    pub order: usize,
    pub image_order: usize,
}

/// Every finite subgroup of W is conjugate into a spherical W_T and the
/// kernel is normal, so the kernel is torsion-free exactly when reduction is
/// injective on each maximal spherical W_T.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub checks: Vec<SphericalCheck>,
    pub torsion_free: bool,
}

/// The kernel W₀ of σ(W) → GL_n(ℤ[θ]/p).
#[derive(Debug, Clone)]
pub struct CongruenceSubgroup {
    prime: u32,
    ramified: bool,
    rank: usize,
    image: IndexSet<ModMatrix>,
    /// `image_adjacency[i][s]`: index of image[i]·σ_s.
    image_adjacency: Vec<Vec<u32>>,
    /// BFS tree: parent index and generator, `u32::MAX` at the root.
    parent: Vec<(u32, usize)>,
    depth: Vec<u32>,
    /// Non-tree Cayley edges (i, s) with i ≤ i·s, sorted by unreduced length.
    schreier: Vec<(u32, usize)>,
    torsion: TorsionReport,
}

impl CongruenceSubgroup {
    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Whether p divides the discriminant of the minimal polynomial of θ.
    pub fn is_ramified(&self) -> bool {
        self.ramified
    }

    pub fn image_order(&self) -> usize {
        self.image.len()
    }

    /// [W : W₀], equal to the image order.
    pub fn index(&self) -> usize {
        self.image.len()
    }

    pub fn torsion(&self) -> &TorsionReport {
        &self.torsion
    }

    pub fn reduce(&self, m: &IntMatrix) -> ModMatrix {
        ModMatrix::from_int(m, self.prime)
    }

    /// Position of σ(w) mod p in the enumerated image.
    pub fn image_index(&self, m: &IntMatrix) -> usize {
        self.image
            .get_index_of(&self.reduce(m))
            .expect("the enumerated image is closed under the generators")
    }

    pub fn image_of_word(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(0usize, |i, &s| self.image_adjacency[i][s] as usize)
    }

    pub fn contains_matrix(&self, m: &IntMatrix) -> bool {
        self.image_index(m) == 0
    }

    pub fn contains(&self, sys: &CoxeterSystem, w: &GroupElement) -> Result<bool, ElementsError> {
        Ok(self.contains_matrix(&w.int_matrix(sys)?))
    }

    /// Whether some generator lies in W₀; never true for odd p.
    pub fn contains_generator(&self) -> bool {
        (0..self.rank).any(|s| self.image_adjacency[0][s] == 0)
    }

    /// A word for the coset representative of image element `i`.
    pub fn coset_word(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.depth[i] as usize);
        while self.parent[i].0 != u32::MAX {
            let (p, s) = self.parent[i];
            word.push(s);
            i = p as usize;
        }
        word.reverse();
        word
    }

    pub fn schreier_count(&self) -> usize {
        self.schreier.len()
    }

    /// Unreduced word u_i·s·u_j⁻¹ of the k-th Schreier generator, where u_j
    /// is the representative of u_i·s. Generators are ordered by this
    /// word's length.
    pub fn schreier_word(&self, k: usize) -> Vec<usize> {
        let (i, s) = self.schreier[k];
        let j = self.image_adjacency[i as usize][s] as usize;
        let mut word = self.coset_word(i as usize);
        word.push(s);
        word.extend(self.coset_word(j).iter().rev());
        word
    }

    pub fn schreier_generator(
        &self,
        sys: &CoxeterSystem,
        k: usize,
    ) -> Result<GroupElement, ElementsError> {
        normal_form(sys, &self.schreier_word(k))
    }

    pub fn schreier_matrix(&self, sys: &CoxeterSystem, k: usize) -> Result<IntMatrix, Overflow> {
        IntMatrix::from_word(sys, &self.schreier_word(k))
    }

    /// The first `count` Schreier generators that are nontrivial in W, in
    /// generator order. Short ones mostly spell relators of W and vanish.
    pub fn nontrivial_schreier(
        &self,
        sys: &CoxeterSystem,
        count: usize,
    ) -> Vec<(usize, IntMatrix)> {
        (0..self.schreier_count())
            .filter_map(|k| {
                self.schreier_matrix(sys, k)
                    .ok()
                    .filter(|m| !m.is_identity())
                    .map(|m| (k, m))
            })
            .take(count)
            .collect()
    }
}

fn check_prime(p: u32) -> Result<(), CongruenceError> {
    if p < 3 || p > u16::MAX as u32 || !crate::exact::poly::is_prime(p as u64) {
        return Err(CongruenceError::NotOddPrime(p));
    }
    Ok(())
}

/// Enumerates σ(W) mod p and its Schreier generators, then certifies
/// torsion-freeness on the spherical special subgroups.
///
/// Primes dividing the discriminant are accepted and flagged: the
/// reduction is still a ring homomorphism and the kernel still has finite
/// index, and the torsion certificate does not depend on ramification.
pub fn congruence_subgroup(
    sys: &CoxeterSystem,
    p: u32,
    budget: usize,
) -> Result<CongruenceSubgroup, CongruenceError> {
    check_prime(p)?;
    let n = sys.rank();
    let ring = ModRing::new(sys.ring(), p);
    let ramified = !sys.field().unramified_at(p as u64);
    let mut image = IndexSet::new();
    image.insert(ModMatrix::identity(sys, p));
    let mut image_adjacency: Vec<Vec<u32>> = Vec::new();
    let mut parent = vec![(u32::MAX, 0usize)];
    let mut depth = vec![0u32];
    let mut head = 0;
    while head < image.len() {
        let mut row = Vec::with_capacity(n);
        for s in 0..n {
            let m = image[head].right_mul_gen(sys, &ring, s);
            let (j, fresh) = image.insert_full(m);
            if fresh {
                if image.len() > budget {
                    return Err(CongruenceError::Budget { prime: p, budget });
                }
                parent.push((head as u32, s));
                depth.push(depth[head] + 1);
            }
            row.push(j as u32);
        }
        image_adjacency.push(row);
        head += 1;
    }
    let mut schreier: Vec<(u32, usize)> = Vec::new();
    for (i, row) in image_adjacency.iter().enumerate() {
        for (s, &j) in row.iter().enumerate() {
            let j = j as usize;
            let tree_edge = parent[j] == (i as u32, s) || parent[i] == (j as u32, s);
            if !tree_edge && i <= j {
                schreier.push((i as u32, s));
            }
        }
    }
    schreier.sort_by_key(|&(i, s)| {
        let j = image_adjacency[i as usize][s] as usize;
        (depth[i as usize] + depth[j], i, s)
    });
    let mut sub = CongruenceSubgroup {
        prime: p,
        ramified,
        rank: n,
        image,
        image_adjacency,
        parent,
        depth,
        schreier,
        torsion: TorsionReport {
            checks: Vec::new(),
            torsion_free: true,
        },
    };
    sub.torsion = torsion_report(sys, &sub)?;
    Ok(sub)
}

fn torsion_report(
    sys: &CoxeterSystem,
    sub: &CongruenceSubgroup,
) -> Result<TorsionReport, CongruenceError> {
    let subsets = spherical_subsets(sys);
    let maximal: Vec<&Vec<usize>> = subsets
        .iter()
        .filter(|t| {
            !subsets
                .iter()
                .any(|u| u.len() > t.len() && t.iter().all(|x| u.contains(x)))
        })
        .collect();
    let mut checks = Vec::new();
    for t in maximal {
        let elems = enumerate_special(sys, t, usize::MAX)?;
        let images: std::collections::HashSet<usize> =
            elems.iter().map(|w| sub.image_of_word(w.word())).collect();
        checks.push(SphericalCheck {
            subset: t.clone(),
            order: elems.len(),
            image_order: images.len(),
        });
    }
    let torsion_free = checks.iter().all(|c| c.order == c.image_order);
    Ok(TorsionReport {
        checks,
        torsion_free,
    })
}

/// First prime of the ladder whose kernel is certified torsion-free within
/// budget. Unramified primes are preferred; ramified ones are tried after.
pub fn congruence_from_ladder(
    sys: &CoxeterSystem,
    budget: usize,
) -> Result<CongruenceSubgroup, CongruenceError> {
    let (good, bad): (Vec<u32>, Vec<u32>) = PRIME_LADDER
        .iter()
        .partition(|&&p| sys.field().unramified_at(p as u64));
    for p in good.into_iter().chain(bad) {
        match congruence_subgroup(sys, p, budget) {
            Ok(sub) if sub.torsion.torsion_free => return Ok(sub),
            Ok(_) | Err(CongruenceError::Budget { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(CongruenceError::Ladder {
        tried: PRIME_LADDER.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{library, Order};

    #[test]
    fn finite_dihedral_reduces_faithfully() {
        let sys = library::dihedral(Order::Finite(3));
        let sub = congruence_subgroup(&sys, 5, 1000).unwrap();
        assert_eq!(sub.image_order(), 6);
        assert!(sub.torsion().torsion_free);
        assert!(!sub.contains_generator());
    }

    #[test]
    fn infinite_dihedral_mod_three() {
        let sys = library::dihedral(Order::Infinite);
        let sub = congruence_subgroup(&sys, 3, 1000).unwrap();
        // σ_s σ_t is unipotent with off-diagonal 2, so (st)^3 ≡ 1 mod 3
        assert_eq!(sub.image_order(), 6);
        let st3 = GroupElement::identity();
        assert!(sub.contains(&sys, &st3).unwrap());
        let w = normal_form(&sys, &[0, 1, 0, 1, 0, 1]).unwrap();
        assert!(sub.contains(&sys, &w).unwrap());
        let w = normal_form(&sys, &[0, 1]).unwrap();
        assert!(!sub.contains(&sys, &w).unwrap());
        for k in 0..sub.schreier_count() {
            let g = sub.schreier_generator(&sys, k).unwrap();
            assert!(sub.contains(&sys, &g).unwrap());
        }
    }

    #[test]
    fn even_and_composite_rejected() {
        let sys = library::dihedral(Order::Infinite);
        assert!(matches!(
            congruence_subgroup(&sys, 2, 10),
            Err(CongruenceError::NotOddPrime(2))
        ));
        assert!(matches!(
            congruence_subgroup(&sys, 9, 10),
            Err(CongruenceError::NotOddPrime(9))
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let sys = library::h3();
        assert!(matches!(
            congruence_subgroup(&sys, 11, 50),
            Err(CongruenceError::Budget { .. })
        ));
    }
}
