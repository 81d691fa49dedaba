//! Closed orientable 2-orbifolds: Euler characteristic, hyperbolicity and
//! fundamental group presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{commutator, Abelianization, Presentation};

#[derive(Debug, Error)]
pub enum OrbifoldError {
    #[error("cone point multiplicity {0} is below 2")]
    Multiplicity(u64),
    #[error("invalid orbifold JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Underlying surface of genus `genus` with cone points of the given
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoOrbifold {
    genus: u64,
    cone_points: Vec<u64>,
}

impl TwoOrbifold {
    pub fn new(genus: u64, cone_points: Vec<u64>) -> Result<Self, OrbifoldError> {
        if let Some(&m) = cone_points.iter().find(|&&m| m < 2) {
            return Err(OrbifoldError::Multiplicity(m));
        }
        Ok(Self { genus, cone_points })
    }

    /// `{"genus": g, "cone_points": [m1, ...]}`; `cone_points` may be omitted.
    pub fn from_json(text: &str) -> Result<Self, OrbifoldError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            genus: u64,
            #[serde(default)]
            cone_points: Vec<u64>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        Self::new(raw.genus, raw.cone_points)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn cone_points(&self) -> &[u64] {
        &self.cone_points
    }

    pub fn with_cone_point(&self, m: u64) -> Result<Self, OrbifoldError> {
        let mut cone_points = self.cone_points.clone();
        cone_points.push(m);
        Self::new(self.genus, cone_points)
    }
}

fn rational(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// χ(S) − Σ (1 − 1/mᵢ) with χ(S) = 2 − 2g.
pub fn euler_char(o: &TwoOrbifold) -> BigRational {
    let surface =
        BigRational::from_integer(BigInt::from(2) - BigInt::from(2) * BigInt::from(o.genus));
    o.cone_points.iter().fold(surface, |acc, &m| {
        acc - (BigRational::one() - rational(1, m))
    })
}

pub fn is_hyperbolic(o: &TwoOrbifold) -> bool {
    euler_char(o).is_negative()
}

/// Generators a₁, b₁, …, a_g, b_g, x₁, …, x_n; relators xᵢ^mᵢ and
/// [a₁,b₁]⋯[a_g,b_g]·x₁⋯x_n. The product relator is dropped when empty.
pub fn orbifold_group_presentation(o: &TwoOrbifold) -> Presentation {
    let g = o.genus as usize;
    let n = o.cone_points.len();
    let mut generators = Vec::with_capacity(2 * g + n);
    for j in 1..=g {
        generators.push(format!("a{j}"));
        generators.push(format!("b{j}"));
    }
    generators.extend((1..=n).map(|i| format!("x{i}")));
    let mut relators: Vec<Vec<(usize, i64)>> = o
        .cone_points
        .iter()
        .enumerate()
        .map(|(i, &m)| vec![(2 * g + i, m as i64)])
        .collect();
    let product: Vec<(usize, i64)> = (0..g)
        .flat_map(|j| commutator(2 * j, 2 * j + 1))
        .chain((0..n).map(|i| (2 * g + i, 1)))
        .collect();
    if !product.is_empty() {
        relators.push(product);
    }
    Presentation {
        generators,
        relators,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldReport {
    pub genus: u64,
    pub cone_points: Vec<u64>,
    pub euler_char: String,
    pub hyperbolic: bool,
    pub presentation: String,
    pub abelianization: Abelianization,
    /// 1 − #generators + Σ over relators 1/(order of the relator's root).
    pub euler_from_presentation: String,
    /// Order of the torsion subgroup of the abelianization, ∏mᵢ / lcm(mᵢ).
    pub expected_torsion_order: String,
    pub consistent: bool,
}

pub fn report(o: &TwoOrbifold) -> OrbifoldReport {
    let chi = euler_char(o);
    let pres = orbifold_group_presentation(o);
    let ab = pres.abelianization();

    // a proper power x^m has root x and counts 1/m; other relators count 1
    let mut from_pres =
        BigRational::one() - BigRational::from_integer(BigInt::from(pres.generators.len()));
    for r in &pres.relators {
        from_pres += match r.as_slice() {
            [(_, m)] if m.unsigned_abs() > 1 => rational(1, m.unsigned_abs()),
            _ => BigRational::one(),
        };
    }
    if pres.relators.len() == o.cone_points.len() {
        // the empty product relator of the bare sphere was dropped
        from_pres += BigRational::one();
    }

    let product: BigInt = o.cone_points.iter().map(|&m| BigInt::from(m)).product();
    let lcm = o
        .cone_points
        .iter()
        .fold(BigInt::one(), |acc, &m| acc.lcm(&BigInt::from(m)));
    let expected = product / lcm;
    let torsion_order: BigInt = ab
        .torsion
        .iter()
        .map(|d| d.parse::<BigInt>().expect("invariant factors are integers"))
        .product();
    let consistent =
        ab.free_rank as u64 == 2 * o.genus && torsion_order == expected && from_pres == chi;

    OrbifoldReport {
        genus: o.genus,
        cone_points: o.cone_points.clone(),
        euler_char: chi.to_string(),
        hyperbolic: chi.is_negative(),
        presentation: pres.to_text(),
        abelianization: ab,
        euler_from_presentation: from_pres.to_string(),
        expected_torsion_order: expected.to_string(),
        consistent,
    }
}

/// Whether χ is exactly zero (Euclidean orbifolds).
pub fn is_euclidean(o: &TwoOrbifold) -> bool {
    euler_char(o).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orb(g: u64, m: &[u64]) -> TwoOrbifold {
        TwoOrbifold::new(g, m.to_vec()).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char(&orb(2, &[])), rational(-2, 1));
        assert_eq!(euler_char(&orb(0, &[2, 3, 7])), rational(-1, 42));
        assert_eq!(euler_char(&orb(0, &[2, 2])), rational(1, 1));
        assert!(is_hyperbolic(&orb(2, &[])));
        assert!(is_hyperbolic(&orb(0, &[2, 3, 7])));
        assert!(!is_hyperbolic(&orb(1, &[])));
        assert!(is_euclidean(&orb(0, &[2, 3, 6])));
    }

    #[test]
    fn presentations() {
        let p = orbifold_group_presentation(&orb(1, &[]));
        assert_eq!(p.to_text(), "< a1, b1 | a1 b1 a1^-1 b1^-1 >");
        assert_eq!(p.abelianization().free_rank, 2);
        let p = orbifold_group_presentation(&orb(0, &[2, 3, 7]));
        assert_eq!(p.to_text(), "< x1, x2, x3 | x1^2, x2^3, x3^7, x1 x2 x3 >");
        assert!(p.abelianization().is_trivial());
        let p = orbifold_group_presentation(&orb(0, &[5]));
        assert_eq!(p.to_text(), "< x1 | x1^5, x1 >");
        assert!(p.abelianization().is_trivial());
    }

    #[test]
    fn reports_are_consistent() {
        for o in [
            orb(0, &[]),
            orb(0, &[2, 2]),
            orb(0, &[2, 3, 7]),
            orb(1, &[3]),
            orb(2, &[4, 6, 6]),
        ] {
            let r = report(&o);
            assert!(r.consistent, "{r:?}");
        }
        assert_eq!(
            report(&orb(0, &[2, 2])).abelianization.torsion,
            vec!["2".to_string()]
        );
    }

    #[test]
    fn json_input() {
        let o = TwoOrbifold::from_json(r#"{"genus": 0, "cone_points": [2, 3, 7]}"#).unwrap();
        assert_eq!(o, orb(0, &[2, 3, 7]));
        assert!(matches!(
            TwoOrbifold::from_json(r#"{"genus": 0, "cone_points": [1]}"#),
            Err(OrbifoldError::Multiplicity(1))
        ));
        assert!(TwoOrbifold::from_json(r#"{"genus": -1}"#).is_err());
    }

    proptest! {
        #[test]
        fn adding_a_cone_point_lowers_chi(g in 0u64..4, ms in proptest::collection::vec(2u64..12, 0..5), m in 2u64..12) {
            let o = orb(g, &ms);
            let o2 = o.with_cone_point(m).unwrap();
            prop_assert_eq!(euler_char(&o) - euler_char(&o2), BigRational::one() - rational(1, m));
            if is_hyperbolic(&o) {
                prop_assert!(is_hyperbolic(&o2));
            }
        }

        #[test]
        fn presentation_matches_chi(g in 0u64..3, ms in proptest::collection::vec(2u64..10, 0..5)) {
            let r = report(&orb(g, &ms));
            prop_assert!(r.consistent, "{:?}", r);
        }
    }
}
