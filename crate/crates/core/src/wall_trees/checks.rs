use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::congruence::CongruenceSubgroup;
use super::trees::{translate, OrbitPartition, ProductProjection};
use crate::coxeter::CoxeterSystem;
use crate::davis::{apply_to_root, root_relation, WallInventory, WallRelation};
use crate::elements::{normal_form, Ball, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthMismatch {
    pub chamber: Vec<usize>,
    pub length: usize,
    pub distance_sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperReport {
    pub checked: usize,
    pub interior_mismatches: usize,
    pub boundary_mismatches: usize,
    pub first_mismatch: Option<LengthMismatch>,
}

impl ProperReport {
    pub fn passed(&self) -> bool {
        self.interior_mismatches == 0
    }
}

/// Σᵢ d(pᵢ(e), pᵢ(w)) = ℓ(w) over the ball. Chambers of length below the
/// radius (all neighbours inside the ball) are interior.
pub fn check_properness(proj: &ProductProjection, ball: &Ball) -> ProperReport {
    let mut sums = vec![0usize; ball.len()];
    for t in &proj.trees {
        let dist = t.distances_from(t.component_of[0] as usize);
        for (w, sum) in sums.iter_mut().enumerate() {
            *sum = sum.saturating_add(dist[t.component_of[w] as usize]);
        }
    }
    let mut report = ProperReport {
        checked: 0,
        interior_mismatches: 0,
        boundary_mismatches: 0,
        first_mismatch: None,
    };
    for (w, &sum) in sums.iter().enumerate() {
        report.checked += 1;
        let length = ball.length_of(w);
        if sum == length {
            continue;
        }
        if length < ball.radius() || ball.is_exhausted() {
            report.interior_mismatches += 1;
            report.first_mismatch.get_or_insert(LengthMismatch {
                chamber: ball.element(w).word().to_vec(),
                length,
                distance_sum: sum,
            });
        } else {
            report.boundary_mismatches += 1;
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub elements: usize,
    pub checks: usize,
    pub violations: usize,
    /// (γ, w) pairs skipped because γw left the core of the ball.
    pub boundary_skipped: usize,
    /// (γ, tree, chamber) of the first violation.
    pub first_violation: Option<(Vec<usize>, usize, Vec<usize>)>,
}

/// For γ ∈ W₀ ∩ ball: chambers of a tree vertex with both w and γw in the
/// core must land in a single vertex, so that v ↦ γv is well defined.
pub fn check_equivariance(
    sys: &CoxeterSystem,
    ball: &Ball,
    proj: &ProductProjection,
    gammas: &[usize],
) -> EquivarianceReport {
    let core = ball.radius() / 2;
    let core_chambers: Vec<usize> = (0..ball.len())
        .filter(|&w| ball.length_of(w) <= core)
        .collect();
    let mut report = EquivarianceReport {
        elements: gammas.len(),
        checks: 0,
        violations: 0,
        boundary_skipped: 0,
        first_violation: None,
    };
    for &g in gammas {
        let images: Vec<Option<usize>> = core_chambers
            .iter()
            .map(|&w| {
                translate(sys, ball, g, w)
                    .ok()
                    .flatten()
                    .filter(|&y| ball.length_of(y) <= core)
            })
            .collect();
        report.boundary_skipped += images.iter().filter(|y| y.is_none()).count();
        for (ti, t) in proj.trees.iter().enumerate() {
            let mut vertex_map: std::collections::HashMap<u32, u32> =
                std::collections::HashMap::new();
            for (k, &w) in core_chambers.iter().enumerate() {
                let Some(y) = images[k] else { continue };
                report.checks += 1;
                let (v, gv) = (t.component_of[w], t.component_of[y]);
                if *vertex_map.entry(v).or_insert(gv) != gv {
                    report.violations += 1;
                    report.first_violation.get_or_insert_with(|| {
                        (
                            ball.element(g).word().to_vec(),
                            ti,
                            ball.element(w).word().to_vec(),
                        )
                    });
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossWitness {
    pub gamma: Vec<usize>,
    pub wall: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub elements: usize,
    pub pairs: usize,
    pub equal: usize,
    pub disjoint: usize,
    pub cross: usize,
    pub overflow_skipped: usize,
    pub first_cross: Option<CrossWitness>,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.cross == 0
    }
}

/// Elements of W₀ the dichotomy pairs are spread over, at least.
pub const PAIR_SPREAD: usize = 64;

/// Tests wall_relation(H, γH) ∉ {Cross} on `target` pairs.
///
/// γ runs over W₀ ∩ ball, then over random products of one or two
/// elements of `pool` (indexed Schreier generators); each γ meets a run of
/// consecutive walls from a random offset.
pub fn check_dichotomy(
    sys: &CoxeterSystem,
    sub: &CongruenceSubgroup,
    ball: &Ball,
    inv: &WallInventory,
    pool: &[(usize, IntMatrix)],
    target: usize,
    seed: u64,
) -> DichotomyReport {
    let mut report = DichotomyReport {
        elements: 0,
        pairs: 0,
        equal: 0,
        disjoint: 0,
        cross: 0,
        overflow_skipped: 0,
        first_cross: None,
    };
    if inv.is_empty() {
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // spread the pairs over many elements
    let per_element = target.div_ceil(PAIR_SPREAD).max(1);
    let run =
        |report: &mut DichotomyReport, rng: &mut ChaCha8Rng, g: &IntMatrix, word: &[usize]| {
            report.elements += 1;
            let offset = rng.random_range(0..inv.len());
            for k in 0..inv.len().min(per_element) {
                if report.pairs >= target {
                    return;
                }
                let wall = &inv.walls[(offset + k) % inv.len()];
                let relation = apply_to_root(sys, g, &wall.root)
                    .and_then(|r| root_relation(sys, &wall.root, &r));
                match relation {
                    Ok(WallRelation::Equal) => report.equal += 1,
                    Ok(WallRelation::Disjoint) => report.disjoint += 1,
                    Ok(WallRelation::Cross) => {
                        report.cross += 1;
                        report.first_cross.get_or_insert_with(|| CrossWitness {
                            gamma: normal_form(sys, word)
                                .map(|w| w.word().to_vec())
                                .unwrap_or_else(|_| word.to_vec()),
                            wall: wall.reflection.word().to_vec(),
                        });
                    }
                    Err(_) => {
                        report.overflow_skipped += 1;
                        continue;
                    }
                }
                report.pairs += 1;
            }
        };
    for i in 1..ball.len() {
        if report.pairs >= target {
            return report;
        }
        let m = ball.int_matrix(i);
        if sub.contains_matrix(m) {
            run(&mut report, &mut rng, m, ball.element(i).word());
        }
    }
    let mats = pool;
    if mats.is_empty() {
        return report;
    }
    let mut stalled = 0;
    while report.pairs < target && stalled < 1000 {
        let (a, ma) = &mats[rng.random_range(0..mats.len())];
        let before = report.pairs;
        if rng.random_bool(0.5) {
            run(&mut report, &mut rng, ma, &sub.schreier_word(*a));
        } else {
            let (b, mb) = &mats[rng.random_range(0..mats.len())];
            match ma.mul(sys, mb) {
                Ok(m) if !m.is_identity() => {
                    let mut word = sub.schreier_word(*a);
                    word.extend(sub.schreier_word(*b));
                    run(&mut report, &mut rng, &m, &word);
                }
                Ok(_) => {}
                Err(_) => report.overflow_skipped += 1,
            }
        }
        if report.pairs == before {
            stalled += 1;
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeCounterexample {
    pub gamma: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeReport {
    pub sampled: usize,
    /// Elements for which some core chamber w had γw in the ball.
    pub displacement_tested: usize,
    pub counterexamples: usize,
    pub first_counterexample: Option<FreeCounterexample>,
}

impl FreeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }
}

/// Power lengths checked for displacement growth.
pub const POWERS: usize = 4;

/// Freeness evidence for nontrivial γ ∈ W₀ given as words.
///
/// (a) some orbit tree moves every sampled core chamber: the displacement
/// in tree i is the number of orbit-i walls separating w from γw;
/// (b) ℓ(γʲ), which equals the product displacement by the length identity,
/// is nondecreasing with ℓ(γʲ) ≥ j for j ≤ 4.
pub fn check_free_action(
    sys: &CoxeterSystem,
    ball: &Ball,
    partition: &OrbitPartition,
    separating: &[Vec<u32>],
    gammas: &[Vec<usize>],
) -> FreeReport {
    let core = ball.radius() / 2;
    let mut report = FreeReport {
        sampled: 0,
        displacement_tested: 0,
        counterexamples: 0,
        first_counterexample: None,
    };
    for word in gammas {
        let Ok(gamma) = normal_form(sys, word) else {
            continue;
        };
        if gamma.is_identity() {
            continue;
        }
        report.sampled += 1;
        let fail = |report: &mut FreeReport, reason: String| {
            report.counterexamples += 1;
            report
                .first_counterexample
                .get_or_insert_with(|| FreeCounterexample {
                    gamma: gamma.word().to_vec(),
                    reason,
                });
        };
        let g = ball.index_of(sys, &gamma);
        let gm = gamma.int_matrix(sys).ok();
        let mut candidates: Option<BTreeSet<usize>> = None;
        for w in (0..ball.len()).filter(|&w| ball.length_of(w) <= core) {
            let y = match (g, &gm) {
                (Some(g), _) => translate(sys, ball, g, w).ok().flatten(),
                (None, Some(m)) => m
                    .mul(sys, ball.int_matrix(w))
                    .ok()
                    .and_then(|p| ball.index_of_matrix(&p)),
                _ => None,
            };
            let Some(y) = y else { continue };
            let moved: BTreeSet<usize> = symmetric_difference(&separating[w], &separating[y])
                .map(|h| partition.wall_orbit[h as usize])
                .collect();
            candidates = Some(match candidates {
                None => moved,
                Some(c) => c.intersection(&moved).copied().collect(),
            });
        }
        if let Some(c) = candidates {
            report.displacement_tested += 1;
            if c.is_empty() {
                fail(&mut report, "no tree moves every sampled chamber".into());
                continue;
            }
        }
        let mut prev = 0;
        for j in 1..=POWERS {
            let power: Vec<usize> = word.iter().copied().cycle().take(word.len() * j).collect();
            let Ok(p) = normal_form(sys, &power) else {
                break;
            };
            if p.length() < prev || p.length() < j {
                fail(
                    &mut report,
                    format!("length of power {j} is {}", p.length()),
                );
                break;
            }
            prev = p.length();
        }
    }
    report
}

fn symmetric_difference<'a>(a: &'a [u32], b: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || loop {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                return Some(x);
            }
            (Some(_), Some(&y)) => {
                j += 1;
                return Some(y);
            }
            (Some(&x), None) => {
                i += 1;
                return Some(x);
            }
            (None, Some(&y)) => {
                j += 1;
                return Some(y);
            }
            (None, None) => return None,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    pub ball_size: usize,
    pub ball_in_kernel: usize,
    pub image_order: usize,
    pub product: usize,
    pub exhaustive: bool,
    /// product / ball size; exactly 1 on a finite group.
    pub ratio: f64,
}

impl IndexReport {
    pub fn passed(&self) -> bool {
        !self.exhaustive || self.product == self.ball_size
    }
}

pub fn check_index(sub: &CongruenceSubgroup, ball: &Ball, kernel_in_ball: usize) -> IndexReport {
    let product = kernel_in_ball * sub.image_order();
    IndexReport {
        ball_size: ball.len(),
        ball_in_kernel: kernel_in_ball,
        image_order: sub.image_order(),
        product,
        exhaustive: ball.is_exhausted(),
        ratio: product as f64 / ball.len() as f64,
    }
}
