//! Right-angled Artin groups A(𝒢), their right-angled Coxeter quotients
//! W(𝒢), product decompositions, and an embedding of A(𝒢) as a finite
//! index subgroup of a right-angled Coxeter group.

pub mod coset;
mod graph;
mod pc;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

pub use coset::{coset_enumeration, CosetBudget};
pub use graph::{DefiningGraph, GraphError};
pub use pc::{Commutation, Letter};

use crate::coxeter::{CoxeterError, CoxeterSystem, Kind, Order};
use crate::elements::{normal_form, GroupElement};
use crate::presentation::{commutator, Presentation};

/// ⟨g_v | [g_a, g_b] for each edge ab⟩.
pub fn presentation(g: &DefiningGraph) -> Presentation {
    Presentation {
        generators: g.vertices().to_vec(),
        relators: g.edges().map(|(a, b)| commutator(a, b)).collect(),
    }
}

/// W(𝒢): m = 2 on edges, ∞ on non-edges.
pub fn racg_of(g: &DefiningGraph) -> Result<CoxeterSystem, GraphError> {
    let n = g.len();
    if n == 0 {
        return Err(GraphError::Parse {
            line: 0,
            message: "graph has no vertices".into(),
        });
    }
    let matrix = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match () {
                    _ if a == b => Order::Finite(1),
                    _ if g.adjacent(a, b) => Order::Finite(2),
                    _ => Order::Infinite,
                })
                .collect()
        })
        .collect();
    Ok(CoxeterSystem::new(g.vertices().to_vec(), matrix).expect("right-angled matrices are valid"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RaagDecomposition {
    /// Vertex sets of the complement's components, ordered by least vertex.
    pub factors: Vec<Vec<usize>>,
    pub graphs: Vec<DefiningGraph>,
    /// Factors coincide with the diagram components of W(𝒢).
    pub coherent: bool,
    /// The relators of A(𝒢) among each factor's generators are exactly the
    /// relators of A(𝒢ᵢ).
    pub functorial: bool,
}

impl RaagDecomposition {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }
}

pub fn decompose(g: &DefiningGraph) -> Result<RaagDecomposition, GraphError> {
    let factors = g.complement().components();
    let graphs: Vec<DefiningGraph> = factors.iter().map(|f| g.induced(f)).collect();
    let as_sets = |v: &[Vec<usize>]| {
        v.iter()
            .map(|c| c.iter().copied().collect::<BTreeSet<_>>())
            .collect::<BTreeSet<_>>()
    };
    let diagram = racg_of(g)?.components().components;
    let coherent = as_sets(&factors) == as_sets(&diagram);
    let whole = presentation(g);
    let functorial = factors.iter().zip(&graphs).all(|(f, sub)| {
        let local: HashMap<usize, usize> = f.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let restricted: BTreeSet<Vec<(usize, i64)>> = whole
            .relators
            .iter()
            .filter(|r| r.iter().all(|(v, _)| local.contains_key(v)))
            .map(|r| r.iter().map(|&(v, e)| (local[&v], e)).collect())
            .collect();
        let own: BTreeSet<Vec<(usize, i64)>> = presentation(sub).relators.into_iter().collect();
        restricted == own
    });
    Ok(RaagDecomposition {
        factors,
        graphs,
        coherent,
        functorial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityCheck {
    pub radius: usize,
    pub elements: usize,
    pub collisions: usize,
    /// Injectivity is only sampled on a ball.
    pub spot_check: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DjEmbedding {
    #[serde(skip)]
    pub target: CoxeterSystem,
    pub target_labels: Vec<String>,
    /// Image of each g_v as a normal form in the target.
    pub images: Vec<GroupElement>,
    pub commuting_pairs: usize,
    pub free_pairs: usize,
    pub injectivity: InjectivityCheck,
    pub expected_index: usize,
    /// `None` when coset enumeration ran out of budget.
    pub verified_index: Option<usize>,
}

/// Target on s_v (index v) and t_v (index n+v): t's commute with each other
/// and with s_w for w ≠ v; s_v, s_w commute iff vw is an edge.
pub fn dj_target(g: &DefiningGraph) -> Result<CoxeterSystem, GraphError> {
    let n = g.len();
    if n == 0 {
        return Err(GraphError::Parse {
            line: 0,
            message: "graph has no vertices".into(),
        });
    }
    let labels: Vec<String> = g
        .vertices()
        .iter()
        .map(|v| format!("s_{v}"))
        .chain(g.vertices().iter().map(|v| format!("t_{v}")))
        .collect();
    let order = |a: usize, b: usize| -> Order {
        if a == b {
            return Order::Finite(1);
        }
        let (va, ta) = (a % n, a >= n);
        let (vb, tb) = (b % n, b >= n);
        let commute = match (ta, tb) {
            (true, true) => true,
            (false, false) => g.adjacent(va, vb),
            _ => va != vb,
        };
        if commute {
            Order::Finite(2)
        } else {
            Order::Infinite
        }
    };
    let matrix = (0..2 * n)
        .map(|a| (0..2 * n).map(|b| order(a, b)).collect())
        .collect();
    Ok(CoxeterSystem::new(labels, matrix).expect("right-angled matrices are valid"))
}

fn image_word(n: usize, x: Letter) -> [usize; 2] {
    let v = x.generator;
    if x.inverse {
        [n + v, v]
    } else {
        [v, n + v]
    }
}

/// g_v ↦ s_v t_v, verified three ways: commutators of images vanish
/// exactly on edges (general word problem in the target), distinct normal
/// forms in a RAAG ball of `radius` have distinct images, and coset
/// enumeration of the image subgroup gives index 2^|V|.
pub fn dj_embedding(
    g: &DefiningGraph,
    radius: usize,
    coset_limit: usize,
) -> Result<DjEmbedding, GraphError> {
    let n = g.len();
    let target = dj_target(g)?;
    let images: Vec<GroupElement> = (0..n)
        .map(|v| normal_form(&target, &image_word(n, Letter::new(v))))
        .collect::<Result<_, _>>()?;

    let (mut commuting_pairs, mut free_pairs) = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            let word: Vec<usize> = [
                Letter::new(a),
                Letter::new(b),
                Letter::inv(a),
                Letter::inv(b),
            ]
            .iter()
            .flat_map(|&x| image_word(n, x))
            .collect();
            let trivial = normal_form(&target, &word)?.is_identity();
            if trivial != g.adjacent(a, b) {
                return Err(GraphError::Verification(format!(
                    "commutator of images of {} and {} is {}trivial",
                    g.vertices()[a],
                    g.vertices()[b],
                    if trivial { "" } else { "non" }
                )));
            }
            if trivial {
                commuting_pairs += 1;
            } else {
                free_pairs += 1;
            }
        }
    }

    let injectivity = injectivity_on_ball(g, &target, radius)?;
    if injectivity.collisions > 0 {
        return Err(GraphError::Verification(format!(
            "{} collisions among {} elements of the radius-{radius} ball",
            injectivity.collisions, injectivity.elements
        )));
    }

    let relators: Vec<Vec<usize>> = (0..2 * n)
        .flat_map(|a| (a + 1..2 * n).map(move |b| (a, b)))
        .filter(|&(a, b)| target.order(a, b) == Order::Finite(2))
        .map(|(a, b)| vec![a, b, a, b])
        .collect();
    let subgroup: Vec<Vec<usize>> = (0..n).map(|v| vec![v, n + v]).collect();
    let expected_index = 1usize << n;
    let verified_index = coset_enumeration(2 * n, &relators, &subgroup, coset_limit).ok();
    if let Some(k) = verified_index {
        if k != expected_index {
            return Err(GraphError::Verification(format!(
                "index {k}, expected {expected_index}"
            )));
        }
    }
    Ok(DjEmbedding {
        target_labels: target.labels().to_vec(),
        target,
        images,
        commuting_pairs,
        free_pairs,
        injectivity,
        expected_index,
        verified_index,
    })
}

/// Maps every RAAG normal form of length ≤ radius into the target and
/// counts pairs with equal images. Target normal forms are shuffle normal
/// forms, valid because the target is right-angled.
pub fn injectivity_on_ball(
    g: &DefiningGraph,
    target: &CoxeterSystem,
    radius: usize,
) -> Result<InjectivityCheck, GraphError> {
    let n = g.len();
    let raag = Commutation::raag(g);
    let racg = Commutation::racg(target)
        .ok_or_else(|| GraphError::Verification("target is not right-angled".into()))?;
    let mut seen: HashMap<Vec<Letter>, ()> = HashMap::new();
    let mut images: HashMap<Vec<Letter>, Vec<Letter>> = HashMap::new();
    let mut layer: Vec<(Vec<Letter>, Vec<Letter>)> = vec![(Vec::new(), Vec::new())];
    seen.insert(Vec::new(), ());
    images.insert(Vec::new(), Vec::new());
    let mut collisions = 0;
    let alphabet = raag.alphabet();
    for len in 1..=radius {
        let mut next = Vec::new();
        for (w, img) in &layer {
            for &x in &alphabet {
                let v = raag.multiply_letter(w, x);
                if v.len() != len || seen.contains_key(&v) {
                    continue;
                }
                seen.insert(v.clone(), ());
                let mut u = img.clone();
                for s in image_word(n, x) {
                    u = racg.multiply_letter(&u, Letter::new(s));
                }
                match images.get(&u) {
                    Some(_) => collisions += 1,
                    None => {
                        images.insert(u.clone(), v.clone());
                    }
                }
                next.push((v, u));
            }
        }
        layer = next;
    }
    Ok(InjectivityCheck {
        radius,
        elements: seen.len(),
        collisions,
        spot_check: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RaagVerdict {
    pub pass: bool,
    pub complete: bool,
    pub rank: usize,
    pub reason: Option<String>,
}

/// A(𝒢) survives only if it is free abelian of even rank: 𝒢 complete with
/// an even number of vertices.
pub fn kahler_candidate_raag(g: &DefiningGraph) -> RaagVerdict {
    let complete = g.is_complete();
    let rank = g.len();
    let reason = if !complete {
        let (a, b) = (0..rank)
            .flat_map(|a| (a + 1..rank).map(move |b| (a, b)))
            .find(|&(a, b)| !g.adjacent(a, b))
            .expect("incomplete graphs have a non-edge");
        Some(format!(
            "not complete: {} and {} do not commute, so the group is not abelian",
            g.vertices()[a],
            g.vertices()[b]
        ))
    } else if rank % 2 == 1 {
        Some(format!("odd rank {rank}"))
    } else {
        None
    };
    RaagVerdict {
        pass: reason.is_none(),
        complete,
        rank,
        reason,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoxeterClass {
    Finite,
    Euclidean,
    RecognizedSurfaceType,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    pub generators: Vec<String>,
    pub class: CoxeterClass,
    pub note: String,
}

/// Whether a connected right-angled system has commuting graph a k-cycle,
/// k ≥ 5.
fn is_right_angled_polygon(sys: &CoxeterSystem) -> bool {
    let n = sys.rank();
    if n < 5 || !sys.is_right_angled() {
        return false;
    }
    let commuting: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| sys.order(a, b) == Order::Finite(2))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let graph = DefiningGraph::new(labels, &commuting).expect("simple");
    commuting.len() == n
        && (0..n).all(|v| (0..n).filter(|&w| graph.adjacent(v, w)).count() == 2)
        && graph.components().len() == 1
}

/// Rank 3 with finite orders p, q, r and 1/p + 1/q + 1/r < 1.
fn is_hyperbolic_triangle(sys: &CoxeterSystem) -> bool {
    if sys.rank() != 3 {
        return false;
    }
    let orders = [sys.order(0, 1), sys.order(1, 2), sys.order(0, 2)];
    let Some(ms) = orders
        .iter()
        .map(|o| o.finite())
        .collect::<Option<Vec<u32>>>()
    else {
        return false;
    };
    let (p, q, r) = (ms[0] as u64, ms[1] as u64, ms[2] as u64);
    q * r + p * r + p * q < p * q * r
}

/// Per diagram component: finite, Euclidean, a recognized virtually-surface
/// type (hyperbolic triangle groups, right-angled k-gons with k ≥ 5), or
/// other.
pub fn kahler_candidate_coxeter(sys: &CoxeterSystem) -> Result<Vec<FactorVerdict>, CoxeterError> {
    let mut out = Vec::new();
    for comp in sys.components().components {
        let kind = sys.classify(&comp)?.kind;
        let factor = sys.restrict(&comp);
        let (class, note) = match kind {
            Kind::PositiveDefinite => (CoxeterClass::Finite, "finite".to_string()),
            Kind::Affine => (CoxeterClass::Euclidean, "Euclidean".to_string()),
            Kind::Indefinite if is_hyperbolic_triangle(&factor) => {
                (CoxeterClass::RecognizedSurfaceType, "hyperbolic triangle group, virtually a surface group".to_string())
            }
            Kind::Indefinite if is_right_angled_polygon(&factor) => (
                CoxeterClass::RecognizedSurfaceType,
                "right-angled polygon group, virtually a surface group".to_string(),
            ),
            Kind::Indefinite => (
                CoxeterClass::Other,
                "fails the necessary condition unless virtually a surface group by means this tool cannot certify"
                    .to_string(),
            ),
        };
        out.push(FactorVerdict {
            generators: factor.labels().to_vec(),
            class,
            note,
        });
    }
    Ok(out)
}
