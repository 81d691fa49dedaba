//! Finite group presentations and their abelianizations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// A word as (generator, exponent) syllables.
pub type Relator = Vec<(usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

/// ℤ^free_rank ⊕ ⊕ ℤ/dᵢ with d₁ | d₂ | …, all dᵢ > 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub fn commutator(a: usize, b: usize) -> Relator {
    vec![(a, 1), (b, 1), (a, -1), (b, -1)]
}

impl Presentation {
    /// Relators written out with `^` exponents, one per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("< {} |", self.generators.join(", "));
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        out.push(' ');
        out.push_str(&rels.join(", "));
        out.push_str(" >");
        out
    }

    pub fn word_text(&self, r: &Relator) -> String {
        if r.is_empty() {
            return "1".into();
        }
        r.iter()
            .map(|&(g, e)| match e {
                1 => self.generators[g].clone(),
                _ => format!("{}^{}", self.generators[g], e),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Exponent-sum matrix: one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); self.generators.len()];
                for &(g, e) in r {
                    row[g] += e;
                }
                row
            })
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let diag = smith_diagonal(self.relation_matrix(), self.generators.len());
        let rank = diag.len();
        let torsion = diag
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .map(|d| d.to_string())
            .collect();
        Abelianization {
            free_rank: self.generators.len() - rank,
            torsion,
        }
    }
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
