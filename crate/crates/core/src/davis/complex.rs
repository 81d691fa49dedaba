use std::collections::HashMap;

use serde::Serialize;

use crate::coxeter::CoxeterSystem;
use crate::elements::{Ball, ElementsError, GroupElement};

/// A coset uW_T with T spherical and u its minimal representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SphericalCoset {
    pub rep: GroupElement,
    pub subset: Vec<usize>,
}

/// Flags of spherical cosets whose minimal representatives have length at
/// most `radius`.
#[derive(Debug, Clone, Serialize)]
pub struct FlagComplexBall {
    pub radius: usize,
    pub vertices: Vec<SphericalCoset>,
    /// Chains of vertex indices, smallest coset first.
    pub simplices: Vec<Vec<usize>>,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    /// Whether the underlying ball is the whole (finite) group.
    pub exhaustive: bool,
}

fn mask_of(subset: &[usize]) -> u64 {
    subset.iter().fold(0, |m, &s| m | (1 << s))
}

fn members(mask: u64, rank: usize) -> Vec<usize> {
    (0..rank).filter(|&s| mask & (1 << s) != 0).collect()
}

/// All spherical subsets as bitmasks, ordered by size then value.
pub fn spherical_subsets(sys: &CoxeterSystem) -> Vec<Vec<usize>> {
    let n = sys.rank();
    assert!(n < 64, "rank too large for subset enumeration");
    // A subset is spherical only if all its subsets are; grow level by level.
    let mut out: Vec<u64> = vec![0];
    let mut frontier: Vec<u64> = vec![0];
    while !frontier.is_empty() {
        let mut next: Vec<u64> = Vec::new();
        for &m in &frontier {
            let top = 64 - m.leading_zeros() as usize;
            for s in top..n {
                let cand = m | (1 << s);
                let all_faces = (0..n)
                    .filter(|&t| cand & (1 << t) != 0)
                    .all(|t| out.contains(&(cand & !(1 << t))));
                if all_faces && sys.is_spherical(&members(cand, n)) {
                    next.push(cand);
                }
            }
        }
        out.extend(&next);
        frontier = next;
    }
    out.sort_by_key(|m| (m.count_ones(), *m));
    out.into_iter().map(|m| members(m, n)).collect()
}

/// Minimal representative of `elements[i]·W_T` by walking descents in the ball.
fn coset_rep_index(ball: &Ball, mut i: usize, subset: &[usize]) -> usize {
    loop {
        let down = subset.iter().find_map(|&t| {
            ball.neighbor(i, t)
                .filter(|&j| ball.length_of(j) < ball.length_of(i))
        });
        match down {
            Some(j) => i = j,
            None => return i,
        }
    }
}

pub fn davis_ball(
    sys: &CoxeterSystem,
    radius: usize,
    budget: usize,
) -> Result<FlagComplexBall, ElementsError> {
    let ball = Ball::new(sys, radius, budget)?;
    Ok(davis_from_ball(sys, &ball))
}

pub fn davis_from_ball(sys: &CoxeterSystem, ball: &Ball) -> FlagComplexBall {
    let subsets = spherical_subsets(sys);
    let masks: Vec<u64> = subsets.iter().map(|t| mask_of(t)).collect();
    let mut vertices = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for i in 0..ball.len() {
        for (k, t) in subsets.iter().enumerate() {
            if coset_rep_index(ball, i, t) == i {
                index.insert((i, k), vertices.len());
                vertices.push(SphericalCoset {
                    rep: ball.element(i).clone(),
                    subset: t.clone(),
                });
            }
        }
    }
    // Each vertex (u, T) lies in exactly one coset for each spherical T' ⊋ T,
    // so chains from (u, T) follow chains of spherical subsets.
    let supersets: Vec<Vec<usize>> = masks
        .iter()
        .map(|&m| {
            (0..masks.len())
                .filter(|&k| masks[k] != m && masks[k] & m == m)
                .collect()
        })
        .collect();
    let mut simplices = Vec::new();
    let mut owners: Vec<(usize, usize)> = index.keys().copied().collect();
    owners.sort_by_key(|key| index[key]);
    for (i, k) in owners {
        let mut stack: Vec<Vec<(usize, usize)>> = vec![vec![(i, k)]];
        while let Some(chain) = stack.pop() {
            simplices.push(
                chain
                    .iter()
                    .map(|&(j, kk)| index[&(j, kk)])
                    .collect::<Vec<_>>(),
            );
            let &(_, last_k) = chain.last().expect("nonempty");
            for &k2 in supersets[last_k].iter().rev() {
                let j = coset_rep_index(ball, i, &subsets[k2]);
                let mut longer = chain.clone();
                longer.push((j, k2));
                stack.push(longer);
            }
        }
    }
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let dim = simplices.iter().map(Vec::len).max().unwrap_or(0);
    let mut f_vector = vec![0usize; dim];
    for s in &simplices {
        f_vector[s.len() - 1] += 1;
    }
    let euler_characteristic = f_vector
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum();
    FlagComplexBall {
        radius: ball.radius(),
        vertices,
        simplices,
        f_vector,
        euler_characteristic,
        exhaustive: ball.is_exhausted(),
    }
}

impl FlagComplexBall {
    /// Face list, one simplex per line as `f v0 v1 ...`, preceded by the
    /// vertex table.
    pub fn face_list(&self, sys: &CoxeterSystem) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let t: Vec<&str> = v.subset.iter().map(|&s| sys.labels()[s].as_str()).collect();
            out.push_str(&format!(
                "v {i} {} {{{}}}\n",
                v.rep.display(sys),
                t.join(",")
            ));
        }
        for s in &self.simplices {
            let ids: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&format!("f {}\n", ids.join(" ")));
        }
        out
    }

    /// Verifies the chain condition and closure under subchains.
    pub fn check_flags(&self, sys: &CoxeterSystem) -> Result<(), String> {
        use crate::elements::{inverse, multiply};
        let stored: std::collections::HashSet<&Vec<usize>> = self.simplices.iter().collect();
        for chain in &self.simplices {
            for pair in chain.windows(2) {
                let (a, b) = (&self.vertices[pair[0]], &self.vertices[pair[1]]);
                if !a.subset.iter().all(|s| b.subset.contains(s)) || a.subset == b.subset {
                    return Err(format!("subsets not nested in {chain:?}"));
                }
                let quotient = multiply(
                    sys,
                    &inverse(sys, &b.rep).map_err(|e| e.to_string())?,
                    &a.rep,
                )
                .map_err(|e| e.to_string())?;
                if !quotient.word().iter().all(|s| b.subset.contains(s)) {
                    return Err(format!("cosets not nested in {chain:?}"));
                }
            }
            for skip in 0..chain.len() {
                if chain.len() > 1 {
                    let mut face = chain.clone();
                    face.remove(skip);
                    if !stored.contains(&face) {
                        return Err(format!("face {face:?} of {chain:?} missing"));
                    }
                }
            }
        }
        Ok(())
    }
}
