//! Balls of the Davis complex, reflections and walls.

mod complex;
mod walls;

pub use complex::{
    davis_ball, davis_from_ball, spherical_subsets, FlagComplexBall, SphericalCoset,
};
pub use walls::{
    apply_to_root, normalize_root, reflections_in_ball, root_relation, separating_roots,
    separating_walls, twice_form, wall_relation, Wall, WallInventory, WallRelation,
};
