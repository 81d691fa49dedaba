use std::collections::HashMap;

use serde::Serialize;

use crate::coxeter::CoxeterSystem;
use crate::elements::{normal_form, Ball, ElementsError, GroupElement, IntMatrix};
use crate::exact::{ExactReal, IntRing, Overflow};

/// A reflection with its positive root and the chamber-graph edges it
/// crosses inside a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub reflection: GroupElement,
    /// Root coordinates in the simple-root basis, each an integral
    /// coefficient vector in θ.
    pub root: Vec<Vec<i128>>,
    /// Edges `[i, j]` (ball indices, `i < j`) with both ends in the ball.
    pub crossed_edges: Vec<[usize; 2]>,
}

impl Wall {
    pub fn root_exact(&self, sys: &CoxeterSystem) -> Vec<ExactReal> {
        self.root.iter().map(|c| sys.ring().to_exact(c)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WallRelation {
    Equal,
    Cross,
    Disjoint,
}

/// Every wall met by the ball, with the wall of each chamber-graph edge.
#[derive(Debug, Clone)]
pub struct WallInventory {
    pub walls: Vec<Wall>,
    by_root: HashMap<Vec<Vec<i128>>, usize>,
    /// `edge_wall[i][s]`: the wall between chamber i and chamber i·s.
    edge_wall: Vec<Vec<usize>>,
}

impl WallInventory {
    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn wall_of_edge(&self, i: usize, s: usize) -> usize {
        self.edge_wall[i][s]
    }

    pub fn find_root(&self, root: &[Vec<i128>]) -> Option<usize> {
        self.by_root.get(root).copied()
    }
}

/// Makes a root positive (the coordinates are uniformly signed).
pub fn normalize_root(ring: &IntRing, mut root: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let sign = root
        .iter()
        .map(|c| ring.signum(c))
        .find(|&s| s != 0)
        .unwrap_or(0);
    if sign < 0 {
        for c in &mut root {
            for x in c {
                *x = -*x;
            }
        }
    }
    root
}

/// Walls wsw⁻¹ for all w in the ball and all generators s, deduplicated
/// by root; the canonical reflection word is computed once per wall.
pub fn reflections_in_ball(
    sys: &CoxeterSystem,
    ball: &Ball,
) -> Result<WallInventory, ElementsError> {
    let ring = sys.ring();
    let n = sys.rank();
    let mut walls: Vec<Wall> = Vec::new();
    let mut by_root: HashMap<Vec<Vec<i128>>, usize> = HashMap::new();
    let mut edge_wall = vec![vec![usize::MAX; n]; ball.len()];
    for i in 0..ball.len() {
        let m = ball.int_matrix(i);
        for s in 0..n {
            if edge_wall[i][s] != usize::MAX {
                continue;
            }
            let root = normalize_root(ring, m.column(s));
            let id = match by_root.get(&root) {
                Some(&id) => id,
                None => {
                    let w = ball.element(i).word();
                    let mut word = w.to_vec();
                    word.push(s);
                    word.extend(w.iter().rev());
                    let reflection = normal_form(sys, &word)?;
                    by_root.insert(root.clone(), walls.len());
                    walls.push(Wall {
                        reflection,
                        root,
                        crossed_edges: Vec::new(),
                    });
                    walls.len() - 1
                }
            };
            edge_wall[i][s] = id;
            if let Some(j) = ball.neighbor(i, s) {
                edge_wall[j][s] = id;
                walls[id].crossed_edges.push([i.min(j), i.max(j)]);
            }
        }
    }
    for w in &mut walls {
        w.crossed_edges.sort_unstable();
    }
    Ok(WallInventory {
        walls,
        by_root,
        edge_wall,
    })
}

/// αᵀ(2B)β, an element of ℤ[θ].
pub fn twice_form(
    sys: &CoxeterSystem,
    a: &[Vec<i128>],
    b: &[Vec<i128>],
) -> Result<Vec<i128>, Overflow> {
    let ring = sys.ring();
    let d = ring.degree();
    let mut acc = vec![0i128; d];
    let mut two = vec![0i128; d];
    two[0] = 2;
    for s in 0..sys.rank() {
        if b[s].iter().all(|&x| x == 0) {
            continue;
        }
        // diagonal terms 2·a_s·b_s
        let mut col = vec![0i128; d];
        ring.mul_add(&mut col, &two, &b[s])?;
        let mut tmp = vec![0i128; d];
        ring.mul_add(&mut tmp, &a[s], &col)?;
        for x in 0..d {
            acc[x] = acc[x].checked_add(tmp[x]).ok_or(Overflow)?;
        }
    }
    // cross terms −Σ_{s,t} a_s c_st b_t
    for s in 0..sys.rank() {
        if a[s].iter().all(|&x| x == 0) {
            continue;
        }
        for (t, c) in sys.int_couplings(s) {
            if b[*t].iter().all(|&x| x == 0) {
                continue;
            }
            let mut prod = vec![0i128; d];
            ring.mul_add(&mut prod, c, &b[*t])?;
            let mut tmp = vec![0i128; d];
            ring.mul_add(&mut tmp, &a[s], &prod)?;
            for x in 0..d {
                acc[x] = acc[x].checked_sub(tmp[x]).ok_or(Overflow)?;
            }
        }
    }
    Ok(acc)
}

/// Equal if the roots agree; Cross if B(α,β)² < 1, i.e. the reflections
/// generate a finite dihedral group; Disjoint otherwise (including the
/// parabolic case B² = 1).
pub fn wall_relation(sys: &CoxeterSystem, h1: &Wall, h2: &Wall) -> Result<WallRelation, Overflow> {
    root_relation(sys, &h1.root, &h2.root)
}

pub fn root_relation(
    sys: &CoxeterSystem,
    a: &[Vec<i128>],
    b: &[Vec<i128>],
) -> Result<WallRelation, Overflow> {
    if a == b {
        return Ok(WallRelation::Equal);
    }
    let neg: Vec<Vec<i128>> = b.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
    if a == neg.as_slice() {
        return Ok(WallRelation::Equal);
    }
    let ring = sys.ring();
    let x = twice_form(sys, a, b)?;
    // (2B)² − 4 < 0
    let mut sq = vec![0i128; ring.degree()];
    ring.mul_add(&mut sq, &x, &x)?;
    sq[0] = sq[0].checked_sub(4).ok_or(Overflow)?;
    Ok(if ring.signum(&sq) < 0 {
        WallRelation::Cross
    } else {
        WallRelation::Disjoint
    })
}

/// Walls crossed by the gallery from e to w along w's normal form: the
/// i-th is p s_i p⁻¹ with p the (i−1)-prefix.
pub fn separating_walls(sys: &CoxeterSystem, w: &GroupElement) -> Result<Vec<Wall>, ElementsError> {
    let ring = sys.ring();
    let mut prefix = IntMatrix::identity(sys);
    let mut out = Vec::with_capacity(w.length());
    let word = w.word();
    for (i, &s) in word.iter().enumerate() {
        let root = normalize_root(ring, prefix.column(s));
        let mut refl = word[..i].to_vec();
        refl.push(s);
        refl.extend(word[..i].iter().rev());
        out.push(Wall {
            reflection: normal_form(sys, &refl)?,
            root,
            crossed_edges: Vec::new(),
        });
        prefix
            .right_mul_gen(sys, s)
            .map_err(|_| ElementsError::Overflow { length: i + 1 })?;
    }
    Ok(out)
}

/// Roots of the walls separating e from w, read off a prefix walk; cheaper
/// than [`separating_walls`] when reflection words are not needed.
pub fn separating_roots(
    sys: &CoxeterSystem,
    word: &[usize],
) -> Result<Vec<Vec<Vec<i128>>>, Overflow> {
    let ring = sys.ring();
    let mut prefix = IntMatrix::identity(sys);
    let mut out = Vec::with_capacity(word.len());
    for &s in word {
        out.push(normalize_root(ring, prefix.column(s)));
        prefix.right_mul_gen(sys, s)?;
    }
    Ok(out)
}

/// Image of a root under σ(g).
pub fn apply_to_root(
    sys: &CoxeterSystem,
    g: &IntMatrix,
    root: &[Vec<i128>],
) -> Result<Vec<Vec<i128>>, Overflow> {
    let ring = sys.ring();
    let n = sys.rank();
    let d = ring.degree();
    let mut out = vec![vec![0i128; d]; n];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, r) in root.iter().enumerate() {
            if r.iter().any(|&x| x != 0) {
                ring.mul_add(o, g.entry(i, j), r)?;
            }
        }
    }
    Ok(normalize_root(ring, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{library, Order};
    use crate::elements::Ball;

    fn inventory(sys: &CoxeterSystem, r: usize) -> (Ball, WallInventory) {
        let ball = Ball::new(sys, r, 100_000).unwrap();
        let inv = reflections_in_ball(sys, &ball).unwrap();
        (ball, inv)
    }

    #[test]
    fn wall_counts() {
        assert_eq!(
            inventory(&library::dihedral(Order::Finite(3)), 5).1.len(),
            3
        );
        assert_eq!(inventory(&library::rank_one(), 3).1.len(), 1);
        // conjugators of length ≤ 2 give s, t, sts, tst, ststs, tstst
        assert_eq!(inventory(&library::dihedral(Order::Infinite), 2).1.len(), 6);
    }

    #[test]
    fn relations() {
        let sys = library::dihedral(Order::Finite(3));
        let (_, inv) = inventory(&sys, 3);
        let s = &inv.walls[0];
        let t = &inv.walls[1];
        assert_eq!(wall_relation(&sys, s, s).unwrap(), WallRelation::Equal);
        assert_eq!(wall_relation(&sys, s, t).unwrap(), WallRelation::Cross);

        let inf = library::dihedral(Order::Infinite);
        let (_, inv) = inventory(&inf, 2);
        let s = inv
            .walls
            .iter()
            .find(|w| w.reflection.word() == [0])
            .unwrap();
        let tst = inv
            .walls
            .iter()
            .find(|w| w.reflection.word() == [1, 0, 1])
            .unwrap();
        assert_eq!(wall_relation(&inf, s, tst).unwrap(), WallRelation::Disjoint);
        assert_eq!(wall_relation(&inf, tst, s).unwrap(), WallRelation::Disjoint);
    }

    #[test]
    fn separating() {
        let sys = library::dihedral(Order::Finite(3));
        assert!(separating_walls(&sys, &GroupElement::identity())
            .unwrap()
            .is_empty());
        let sts = normal_form(&sys, &[0, 1, 0]).unwrap();
        let walls = separating_walls(&sys, &sts).unwrap();
        assert_eq!(walls.len(), 3);
        let mut words: Vec<Vec<usize>> =
            walls.iter().map(|w| w.reflection.word().to_vec()).collect();
        words.sort();
        assert_eq!(words, vec![vec![0], vec![0, 1, 0], vec![1]]);
    }

    /// Each wall's edges split the finite chamber graph into two halves.
    #[test]
    fn walls_separate_finite_chamber_graphs() {
        for sys in [library::a3(), library::h3()] {
            let ball = Ball::build(&sys, &[0, 1, 2], None, 1000).unwrap();
            let inv = reflections_in_ball(&sys, &ball).unwrap();
            for (id, _) in inv.walls.iter().enumerate() {
                let mut uf = petgraph::unionfind::UnionFind::<usize>::new(ball.len());
                for (i, j, s) in ball.edges() {
                    if inv.wall_of_edge(i, s) != id {
                        uf.union(i, j);
                    }
                }
                let mut labels = uf.into_labeling();
                labels.sort_unstable();
                labels.dedup();
                assert_eq!(labels.len(), 2);
            }
        }
    }

    #[test]
    fn form_matches_exact() {
        let sys = library::triangle(2, 3, 7);
        let (_, inv) = inventory(&sys, 4);
        for a in inv.walls.iter().take(8) {
            for b in inv.walls.iter().take(8) {
                let x = sys
                    .ring()
                    .to_exact(&twice_form(&sys, &a.root, &b.root).unwrap());
                let exact = sys.form(&a.root_exact(&sys), &b.root_exact(&sys)).scale(2);
                assert_eq!(x, exact);
            }
            let self_form = twice_form(&sys, &a.root, &a.root).unwrap();
            assert_eq!(
                sys.ring().to_exact(&self_form),
                ExactReal::from_i64(sys.field(), 2)
            );
        }
    }
}
