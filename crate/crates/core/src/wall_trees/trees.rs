use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::congruence::CongruenceSubgroup;
use crate::coxeter::CoxeterSystem;
use crate::davis::{apply_to_root, WallInventory};
use crate::elements::{Ball, IntMatrix};
use crate::exact::Overflow;

/// A class of walls closed under the W₀-action as far as the ball can see.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallOrbit {
    pub id: usize,
    /// Inventory indices, ascending.
    pub walls: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitPartition {
    pub orbits: Vec<WallOrbit>,
    /// Orbit id of every inventory wall.
    pub wall_orbit: Vec<usize>,
    /// Chambers that share their image mod p with a smaller chamber; each
    /// gives an element of W₀ carrying one chamber's walls onto the other's.
    pub witness_chambers: usize,
    pub schreier_used: usize,
    pub conjugates_checked: usize,
    /// Conjugates landing outside the inventory (boundary truncation).
    pub boundary_misses: usize,
    /// Number of distinct reflections mod p among the walls.
    pub coarse_classes: usize,
    /// Whether each orbit has a single reflection image mod p, as it must.
    pub refines_coarse: bool,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Image index mod p of every chamber of the ball.
pub fn chamber_images(sub: &CongruenceSubgroup, ball: &Ball) -> Vec<usize> {
    (0..ball.len())
        .map(|i| sub.image_index(ball.int_matrix(i)))
        .collect()
}

/// Partitions the inventory into W₀-orbits.
///
/// Two sources of identifications: chambers v, w of the ball with the same
/// image mod p (then wv⁻¹ ∈ W₀ carries the walls around v to those around
/// w), and conjugation of every root by each element of `pool` (matrices
/// of elements of W₀, typically from
/// [`CongruenceSubgroup::nontrivial_schreier`]).
pub fn wall_orbits(
    sys: &CoxeterSystem,
    sub: &CongruenceSubgroup,
    ball: &Ball,
    inv: &WallInventory,
    pool: &[(usize, IntMatrix)],
) -> OrbitPartition {
    let n = sys.rank();
    let mut uf = UnionFind::<usize>::new(inv.len());
    let images = chamber_images(sub, ball);
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut witness_chambers = 0;
    for (v, &img) in images.iter().enumerate() {
        match first.get(&img) {
            Some(&u) => {
                witness_chambers += 1;
                for s in 0..n {
                    uf.union(inv.wall_of_edge(u, s), inv.wall_of_edge(v, s));
                }
            }
            None => {
                first.insert(img, v);
            }
        }
    }
    let mut schreier_used = 0;
    let mut conjugates_checked = 0;
    let mut boundary_misses = 0;
    for (_, g) in pool {
        schreier_used += 1;
        for (h, wall) in inv.walls.iter().enumerate() {
            conjugates_checked += 1;
            match apply_to_root(sys, g, &wall.root)
                .ok()
                .and_then(|r| inv.find_root(&r))
            {
                Some(h2) => {
                    uf.union(h, h2);
                }
                None => boundary_misses += 1,
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut orbits: Vec<WallOrbit> = Vec::new();
    let mut wall_orbit = Vec::with_capacity(inv.len());
    for h in 0..inv.len() {
        let root = uf.find(h);
        let id = *ids.entry(root).or_insert_with(|| {
            orbits.push(WallOrbit {
                id: orbits.len(),
                walls: Vec::new(),
            });
            orbits.len() - 1
        });
        orbits[id].walls.push(h);
        wall_orbit.push(id);
    }
    let keys: Vec<usize> = inv
        .walls
        .iter()
        .map(|w| sub.image_of_word(w.reflection.word()))
        .collect();
    let coarse_classes = keys.iter().collect::<HashSet<_>>().len();
    let refines_coarse = orbits
        .iter()
        .all(|o| o.walls.iter().all(|&h| keys[h] == keys[o.walls[0]]));
    OrbitPartition {
        orbits,
        wall_orbit,
        witness_chambers,
        schreier_used,
        conjugates_checked,
        boundary_misses,
        coarse_classes,
        refines_coarse,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TreeEdge {
    pub source: usize,
    pub target: usize,
    pub wall: usize,
}

/// Components of the ball's chamber graph with the orbit's edges removed,
/// joined by one edge per (component pair, orbit wall).
#[derive(Debug, Clone, Serialize)]
pub struct TreeQuotient {
    pub orbit: usize,
    pub walls: Vec<usize>,
    pub vertex_count: usize,
    pub edges: Vec<TreeEdge>,
    /// Vertices containing a chamber of length at most ⌊R/2⌋. Core chambers
    /// of one true component are joined by a geodesic inside the ball, so
    /// distinct interior vertices are distinct vertices of the tree.
    pub interior: Vec<bool>,
    /// Walls whose edge returns to the component it left.
    pub loops: Vec<usize>,
    /// Walls closing a cycle among interior vertices.
    pub cycle_walls: Vec<usize>,
    #[serde(skip)]
    pub component_of: Vec<u32>,
}

impl TreeQuotient {
    pub fn interior_acyclic(&self) -> bool {
        self.cycle_walls.is_empty()
    }

    pub fn separates(&self) -> bool {
        self.loops.is_empty()
    }

    /// Breadth-first distances from `root` in the quotient graph.
    pub fn distances_from(&self, root: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Graphviz export; edges are labelled by reflection words.
    pub fn to_dot(&self, sys: &CoxeterSystem, inv: &WallInventory) -> String {
        let mut out = format!("graph orbit_{} {{\n", self.orbit);
        for v in 0..self.vertex_count {
            let shape = if self.interior[v] { "circle" } else { "point" };
            out.push_str(&format!("  {v} [shape={shape}];\n"));
        }
        for e in &self.edges {
            let label = inv.walls[e.wall].reflection.display(sys);
            out.push_str(&format!(
                "  {} -- {} [label=\"{}\"];\n",
                e.source, e.target, label
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_tree(ball: &Ball, inv: &WallInventory, orbit: &WallOrbit) -> TreeQuotient {
    let mut member = vec![false; inv.len()];
    for &h in &orbit.walls {
        member[h] = true;
    }
    let mut uf = UnionFind::<usize>::new(ball.len());
    for (i, j, s) in ball.edges() {
        if !member[inv.wall_of_edge(i, s)] {
            uf.union(i, j);
        }
    }
    let mut relabel: HashMap<usize, u32> = HashMap::new();
    let component_of: Vec<u32> = (0..ball.len())
        .map(|i| {
            let next = relabel.len() as u32;
            *relabel.entry(uf.find(i)).or_insert(next)
        })
        .collect();
    let vertex_count = relabel.len();
    let core = ball.radius() / 2;
    let mut interior = vec![false; vertex_count];
    for (i, &c) in component_of.iter().enumerate() {
        if ball.length_of(i) <= core {
            interior[c as usize] = true;
        }
    }
    let mut edge_set: BTreeSet<TreeEdge> = BTreeSet::new();
    let mut loops: BTreeSet<usize> = BTreeSet::new();
    for (i, j, s) in ball.edges() {
        let wall = inv.wall_of_edge(i, s);
        if !member[wall] {
            continue;
        }
        let (a, b) = (component_of[i] as usize, component_of[j] as usize);
        if a == b {
            loops.insert(wall);
        } else {
            edge_set.insert(TreeEdge {
                source: a.min(b),
                target: a.max(b),
                wall,
            });
        }
    }
    let edges: Vec<TreeEdge> = edge_set.into_iter().collect();
    let mut vf = UnionFind::<usize>::new(vertex_count);
    let mut cycle_walls = Vec::new();
    for e in &edges {
        if interior[e.source] && interior[e.target] && !vf.union(e.source, e.target) {
            cycle_walls.push(e.wall);
        }
    }
    TreeQuotient {
        orbit: orbit.id,
        walls: orbit.walls.clone(),
        vertex_count,
        edges,
        interior,
        loops: loops.into_iter().collect(),
        cycle_walls,
        component_of,
    }
}

/// The map F = (p₁, …, p_k) restricted to the ball.
#[derive(Debug, Clone, Serialize)]
pub struct ProductProjection {
    pub trees: Vec<TreeQuotient>,
}

impl ProductProjection {
    pub fn new(ball: &Ball, inv: &WallInventory, partition: &OrbitPartition) -> Self {
        Self {
            trees: partition
                .orbits
                .iter()
                .map(|o| build_tree(ball, inv, o))
                .collect(),
        }
    }

    /// (p₁(w), …, p_k(w)) for ball chamber `w`.
    pub fn assignment(&self, w: usize) -> Vec<usize> {
        self.trees
            .iter()
            .map(|t| t.component_of[w] as usize)
            .collect()
    }
}

/// Walls of the inventory separating the identity chamber from each ball
/// chamber, as sorted inventory indices.
pub fn separating_sets(ball: &Ball, inv: &WallInventory) -> Vec<Vec<u32>> {
    let mut sets: Vec<Vec<u32>> = vec![Vec::new(); ball.len()];
    for x in 1..ball.len() {
        let last = *ball.element(x).word().last().expect("nontrivial");
        let prev = ball
            .neighbor(x, last)
            .expect("prefix of a ball element lies in the ball");
        let mut set = sets[prev].clone();
        let h = inv.wall_of_edge(prev, last) as u32;
        let at = set
            .binary_search(&h)
            .expect_err("geodesic galleries cross each wall once");
        set.insert(at, h);
        sets[x] = set;
    }
    sets
}

/// Index of g·x for ball elements g, x: walks the adjacency, falling back to
/// a matrix product when the path leaves the ball.
pub fn translate(
    sys: &CoxeterSystem,
    ball: &Ball,
    g: usize,
    x: usize,
) -> Result<Option<usize>, Overflow> {
    if let Some(y) = ball.right_mul_word(g, ball.element(x).word()) {
        return Ok(Some(y));
    }
    let m = ball.int_matrix(g).mul(sys, ball.int_matrix(x))?;
    Ok(ball.index_of_matrix(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{library, Order};
    use crate::davis::reflections_in_ball;
    use crate::wall_trees::congruence_subgroup;

    #[test]
    fn finite_dihedral_single_wall_trees() {
        let sys = library::dihedral(Order::Finite(3));
        let ball = Ball::new(&sys, 3, 100).unwrap();
        let inv = reflections_in_ball(&sys, &ball).unwrap();
        let sub = congruence_subgroup(&sys, 5, 100).unwrap();
        let part = wall_orbits(&sys, &sub, &ball, &inv, &sub.nontrivial_schreier(&sys, 64));
        assert_eq!(part.len(), 3);
        for o in &part.orbits {
            let t = build_tree(&ball, &inv, o);
            assert_eq!(t.vertex_count, 2);
            assert_eq!(t.edges.len(), 1);
        }
    }

    #[test]
    fn empty_orbit_gives_single_vertex() {
        let sys = library::dihedral(Order::Infinite);
        let ball = Ball::new(&sys, 4, 100).unwrap();
        let inv = reflections_in_ball(&sys, &ball).unwrap();
        let t = build_tree(
            &ball,
            &inv,
            &WallOrbit {
                id: 0,
                walls: Vec::new(),
            },
        );
        assert_eq!(t.vertex_count, 1);
        assert!(t.edges.is_empty());
    }

    #[test]
    fn infinite_dihedral_line_tree() {
        let sys = library::dihedral(Order::Infinite);
        let ball = Ball::new(&sys, 6, 100).unwrap();
        let inv = reflections_in_ball(&sys, &ball).unwrap();
        let sub = congruence_subgroup(&sys, 3, 100).unwrap();
        let part = wall_orbits(&sys, &sub, &ball, &inv, &sub.nontrivial_schreier(&sys, 64));
        // W₀ = ⟨(st)³⟩ translates the line of chambers by 6
        assert_eq!(part.len(), 6);
        for o in &part.orbits {
            let t = build_tree(&ball, &inv, o);
            assert!(t.interior_acyclic() && t.separates());
            // a path: every vertex has degree at most 2
            let mut deg = vec![0; t.vertex_count];
            for e in &t.edges {
                deg[e.source] += 1;
                deg[e.target] += 1;
            }
            assert!(deg.iter().all(|&d| d <= 2));
            assert_eq!(t.edges.len(), t.vertex_count - 1);
        }
    }
}
