//! Congruence subgroups W₀ of the Tits representation, W₀-orbits of walls,
//! the trees dual to each orbit, and checkers for the facts that make the
//! product of those trees a proper free W₀-space.

mod checks;
mod congruence;
mod modp;
mod trees;

use serde::Serialize;

pub use checks::{
    check_dichotomy, check_equivariance, check_free_action, check_index, check_properness,
    CrossWitness, DichotomyReport, EquivarianceReport, FreeCounterexample, FreeReport, IndexReport,
    LengthMismatch, ProperReport, PAIR_SPREAD, POWERS,
};
pub use congruence::{
    congruence_from_ladder, congruence_subgroup, CongruenceError, CongruenceSubgroup,
    SphericalCheck, TorsionReport, PRIME_LADDER,
};
pub use modp::{ModMatrix, ModRing};
pub use trees::{
    build_tree, chamber_images, separating_sets, translate, wall_orbits, OrbitPartition,
    ProductProjection, TreeEdge, TreeQuotient, WallOrbit,
};

use crate::coxeter::CoxeterSystem;
use crate::davis::{reflections_in_ball, WallInventory};
use crate::elements::{Ball, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreesConfig {
    pub radius: usize,
    /// Fixed prime, or `None` to walk [`PRIME_LADDER`].
    pub prime: Option<u32>,
    pub budget: usize,
    pub seed: u64,
    pub dichotomy_pairs: usize,
    /// Nontrivial Schreier generators used for orbit closure and sampling.
    pub schreier_pool: usize,
    /// Cap on the number of W₀-elements tested for freeness.
    pub free_samples: usize,
}

impl Default for TreesConfig {
    fn default() -> Self {
        Self {
            radius: 8,
            prime: None,
            budget: DEFAULT_BUDGET,
            seed: 0,
            dichotomy_pairs: 10_000,
            schreier_pool: 64,
            free_samples: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupSummary {
    pub prime: u32,
    pub ramified: bool,
    pub image_order: usize,
    pub schreier_generators: usize,
    pub contains_generator: bool,
    pub torsion: TorsionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub count: usize,
    pub witness_chambers: usize,
    pub schreier_used: usize,
    pub conjugates_checked: usize,
    pub boundary_misses: usize,
    pub coarse_classes: usize,
    pub refines_coarse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeSummary {
    pub trees: usize,
    pub max_vertices: usize,
    pub total_edges: usize,
    pub non_separating_walls: usize,
    pub interior_cycles: usize,
}

impl TreeSummary {
    pub fn passed(&self) -> bool {
        self.non_separating_walls == 0 && self.interior_cycles == 0
    }
}

/// Everything the tree construction reports, with boundary statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreesReport {
    pub radius: usize,
    pub ball_size: usize,
    pub ball_exhausted: bool,
    pub walls: usize,
    pub subgroup: SubgroupSummary,
    pub orbits: OrbitSummary,
    pub trees: TreeSummary,
    pub properness: ProperReport,
    pub equivariance: EquivarianceReport,
    pub dichotomy: DichotomyReport,
    pub free_action: FreeReport,
    pub index: IndexReport,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct TreesAnalysis {
    pub subgroup: CongruenceSubgroup,
    pub ball: Ball,
    pub inventory: WallInventory,
    pub partition: OrbitPartition,
    pub projection: ProductProjection,
    pub report: TreesReport,
}

impl TreesAnalysis {
    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        self.projection
            .trees
            .iter()
            .map(|t| t.to_dot(sys, &self.inventory))
            .collect()
    }
}

/// Builds W₀, the ball, its walls, orbits and trees, and runs every checker.
pub fn analyze(sys: &CoxeterSystem, cfg: &TreesConfig) -> Result<TreesAnalysis, CongruenceError> {
    let subgroup = match cfg.prime {
        Some(p) => congruence_subgroup(sys, p, cfg.budget)?,
        None => congruence_from_ladder(sys, cfg.budget)?,
    };
    let ball = Ball::new(sys, cfg.radius, cfg.budget)?;
    let inventory = reflections_in_ball(sys, &ball)?;
    let pool = subgroup.nontrivial_schreier(sys, cfg.schreier_pool.max(cfg.free_samples));
    let partition = wall_orbits(
        sys,
        &subgroup,
        &ball,
        &inventory,
        &pool[..pool.len().min(cfg.schreier_pool)],
    );
    let projection = ProductProjection::new(&ball, &inventory, &partition);

    let kernel: Vec<usize> = (0..ball.len())
        .filter(|&i| subgroup.contains_matrix(ball.int_matrix(i)))
        .collect();
    let nontrivial: Vec<usize> = kernel.iter().copied().filter(|&i| i != 0).collect();
    let sampled: Vec<usize> = nontrivial.iter().copied().take(cfg.free_samples).collect();

    let properness = check_properness(&projection, &ball);
    let equivariance = check_equivariance(sys, &ball, &projection, &sampled);
    let dichotomy = check_dichotomy(
        sys,
        &subgroup,
        &ball,
        &inventory,
        &pool[..pool.len().min(cfg.schreier_pool)],
        cfg.dichotomy_pairs,
        cfg.seed,
    );
    let separating = separating_sets(&ball, &inventory);
    let mut free_words: Vec<Vec<usize>> = sampled
        .iter()
        .map(|&i| ball.element(i).word().to_vec())
        .collect();
    let extra = cfg.free_samples.saturating_sub(free_words.len());
    free_words.extend(
        pool.iter()
            .take(extra)
            .map(|(k, _)| subgroup.schreier_word(*k)),
    );
    let free_action = check_free_action(sys, &ball, &partition, &separating, &free_words);
    let index = check_index(&subgroup, &ball, kernel.len());

    let trees = TreeSummary {
        trees: projection.trees.len(),
        max_vertices: projection
            .trees
            .iter()
            .map(|t| t.vertex_count)
            .max()
            .unwrap_or(0),
        total_edges: projection.trees.iter().map(|t| t.edges.len()).sum(),
        non_separating_walls: projection.trees.iter().map(|t| t.loops.len()).sum(),
        interior_cycles: projection.trees.iter().map(|t| t.cycle_walls.len()).sum(),
    };
    let subgroup_summary = SubgroupSummary {
        prime: subgroup.prime(),
        ramified: subgroup.is_ramified(),
        image_order: subgroup.image_order(),
        schreier_generators: subgroup.schreier_count(),
        contains_generator: subgroup.contains_generator(),
        torsion: subgroup.torsion().clone(),
    };
    let orbits = OrbitSummary {
        count: partition.len(),
        witness_chambers: partition.witness_chambers,
        schreier_used: partition.schreier_used,
        conjugates_checked: partition.conjugates_checked,
        boundary_misses: partition.boundary_misses,
        coarse_classes: partition.coarse_classes,
        refines_coarse: partition.refines_coarse,
    };
    let passed = subgroup_summary.torsion.torsion_free
        && !subgroup_summary.contains_generator
        && orbits.refines_coarse
        && trees.passed()
        && properness.passed()
        && equivariance.violations == 0
        && dichotomy.passed()
        && free_action.passed()
        && index.passed();
    let report = TreesReport {
        radius: cfg.radius,
        ball_size: ball.len(),
        ball_exhausted: ball.is_exhausted(),
        walls: inventory.len(),
        subgroup: subgroup_summary,
        orbits,
        trees,
        properness,
        equivariance,
        dichotomy,
        free_action,
        index,
        passed,
    };
    Ok(TreesAnalysis {
        subgroup,
        ball,
        inventory,
        partition,
        projection,
        report,
    })
}
