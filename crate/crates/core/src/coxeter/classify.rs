//! Finite / affine / indefinite classification.
//!
//! Two independent procedures: exact signs of Gram minors, and a diagram
//! table covering every connected positive-definite and affine diagram.

use serde::Serialize;

use super::{CoxeterError, CoxeterSystem, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    PositiveDefinite,
    Affine,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub kind: Kind,
    pub name: Option<String>,
}

impl Kind {
    /// Product rule for diagram-disjoint blocks.
    pub fn combine(kinds: impl IntoIterator<Item = Kind>) -> Kind {
        let mut any_affine = false;
        for k in kinds {
            match k {
                Kind::Indefinite => return Kind::Indefinite,
                Kind::Affine => any_affine = true,
                Kind::PositiveDefinite => {}
            }
        }
        if any_affine {
            Kind::Affine
        } else {
            Kind::PositiveDefinite
        }
    }
}

impl CoxeterSystem {
    /// Minor-based kind of one connected block.
    fn minor_kind(&self, block: &[usize]) -> Kind {
        let b = self.gram().principal(block);
        let pivots = b.leading_pivots();
        if pivots
            .iter()
            .all(|p| p.as_ref().is_some_and(|x| x.signum() > 0))
        {
            return Kind::PositiveDefinite;
        }
        // For a connected diagram, semidefinite and singular means det 0
        // with every proper principal submatrix definite; deleting single
        // vertices suffices by interlacing.
        if !b.determinant().is_zero() {
            return Kind::Indefinite;
        }
        let all_deletions_pd = (0..block.len()).all(|skip| {
            let rest: Vec<usize> = block
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &s)| s)
                .collect();
            rest.is_empty()
                || self
                    .gram()
                    .principal(&rest)
                    .leading_pivots()
                    .iter()
                    .all(|p| p.as_ref().is_some_and(|x| x.signum() > 0))
        });
        if all_deletions_pd {
            Kind::Affine
        } else {
            Kind::Indefinite
        }
    }

    /// Kind from exact Gram minors only, combining over diagram components.
    pub fn classify_by_minors(&self, subset: &[usize]) -> Result<Kind, CoxeterError> {
        self.check_subset(subset)?;
        Ok(Kind::combine(
            self.components_of(subset)
                .iter()
                .map(|c| self.minor_kind(c)),
        ))
    }

    /// Kind and name from the diagram table only.
    pub fn classify_by_table(&self, subset: &[usize]) -> Result<TypeVerdict, CoxeterError> {
        self.check_subset(subset)?;
        let parts: Vec<TypeVerdict> = self
            .components_of(subset)
            .iter()
            .map(|c| table_lookup(self, c))
            .collect();
        Ok(merge(parts))
    }

    fn check_subset(&self, subset: &[usize]) -> Result<(), CoxeterError> {
        if subset.is_empty() {
            return Err(CoxeterError::EmptySubset);
        }
        if let Some(&bad) = subset.iter().find(|&&s| s >= self.rank()) {
            return Err(CoxeterError::UnknownGenerator(bad));
        }
        Ok(())
    }

    /// Classifies W_T, cross-checking the table against exact minors per
    /// component.
    pub fn classify(&self, subset: &[usize]) -> Result<TypeVerdict, CoxeterError> {
        self.check_subset(subset)?;
        let mut parts = Vec::new();
        for c in self.components_of(subset) {
            let table = table_lookup(self, &c);
            let minors = self.minor_kind(&c);
            if table.kind != minors {
                return Err(CoxeterError::ClassificationMismatch {
                    subset: c,
                    table: table.kind,
                    minors,
                });
            }
            parts.push(table);
        }
        Ok(merge(parts))
    }

    pub fn classify_all(&self) -> Result<TypeVerdict, CoxeterError> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.classify(&all)
    }

    /// Whether W_T is finite. The empty subset is spherical.
    pub fn is_spherical(&self, subset: &[usize]) -> bool {
        subset.is_empty()
            || self
                .classify_by_minors(subset)
                .map(|k| k == Kind::PositiveDefinite)
                .unwrap_or(false)
    }

    pub fn is_euclidean_irreducible(&self) -> Result<bool, CoxeterError> {
        let comps = self.components().components;
        if comps.len() > 1 {
            return Err(CoxeterError::Reducible(comps.len()));
        }
        Ok(self.classify_all()?.kind == Kind::Affine)
    }
}

fn merge(parts: Vec<TypeVerdict>) -> TypeVerdict {
    let kind = Kind::combine(parts.iter().map(|p| p.kind));
    let name = parts
        .iter()
        .map(|p| p.name.clone())
        .collect::<Option<Vec<_>>>()
        .map(|names| names.join(" x "));
    TypeVerdict { kind, name }
}

fn verdict(kind: Kind, name: impl Into<String>) -> TypeVerdict {
    TypeVerdict {
        kind,
        name: Some(name.into()),
    }
}

fn indefinite() -> TypeVerdict {
    TypeVerdict {
        kind: Kind::Indefinite,
        name: None,
    }
}

/// Recognizes a connected diagram against the complete lists of spherical
/// and affine irreducible Coxeter diagrams; anything else is indefinite.
fn table_lookup(sys: &CoxeterSystem, block: &[usize]) -> TypeVerdict {
    let n = block.len();
    if n == 1 {
        return verdict(Kind::PositiveDefinite, "A1");
    }
    let mut edges: Vec<(usize, usize, Order)> = Vec::new();
    for (a, &s) in block.iter().enumerate() {
        for (b, &t) in block.iter().enumerate().skip(a + 1) {
            let m = sys.order(s, t);
            if m.is_edge() {
                edges.push((a, b, m));
            }
        }
    }
    if n == 2 {
        return match edges[0].2 {
            Order::Infinite => verdict(Kind::Affine, "affine-A1"),
            Order::Finite(m) => verdict(Kind::PositiveDefinite, format!("I2({m})")),
        };
    }
    if edges.iter().any(|e| e.2 == Order::Infinite) {
        return indefinite();
    }
    let label = |e: &(usize, usize, Order)| e.2.finite().expect("finite edge");
    let mut adj = vec![Vec::new(); n];
    for e in &edges {
        adj[e.0].push((e.1, label(e)));
        adj[e.1].push((e.0, label(e)));
    }
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();

    if edges.len() >= n {
        // Connected with a cycle: only the simply-laced n-cycle is affine.
        let is_cycle = edges.len() == n && degree.iter().all(|&d| d == 2);
        return if is_cycle && edges.iter().all(|e| label(e) == 3) {
            verdict(Kind::Affine, format!("affine-A{}", n - 1))
        } else {
            indefinite()
        };
    }

    let heavy: Vec<u32> = edges.iter().map(label).filter(|&m| m > 3).collect();
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();

    if branches.is_empty() {
        let labels = path_labels(&adj);
        return path_verdict(&labels);
    }

    // Arms from a branch vertex: (length in vertices, labels from the center outwards).
    let arms = |center: usize| -> Vec<(usize, Vec<u32>)> {
        adj[center]
            .iter()
            .map(|&(first, m)| {
                let mut labels = vec![m];
                let (mut prev, mut cur) = (center, first);
                let mut len = 1;
                while degree[cur] == 2 {
                    let &(next, m2) = adj[cur]
                        .iter()
                        .find(|(x, _)| *x != prev)
                        .expect("path continues");
                    labels.push(m2);
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                (len, labels)
            })
            .collect()
    };

    match branches.as_slice() {
        [c] => {
            let mut a = arms(*c);
            a.sort_by_key(|x| x.0);
            let lens: Vec<usize> = a.iter().map(|x| x.0).collect();
            if degree[*c] == 4 {
                return if heavy.is_empty() && lens == [1, 1, 1, 1] {
                    verdict(Kind::Affine, "affine-D4")
                } else {
                    indefinite()
                };
            }
            if degree[*c] != 3 {
                return indefinite();
            }
            if heavy.is_empty() {
                return match lens.as_slice() {
                    [1, 1, k] => verdict(Kind::PositiveDefinite, format!("D{}", k + 3)),
                    [1, 2, 2] => verdict(Kind::PositiveDefinite, "E6"),
                    [1, 2, 3] => verdict(Kind::PositiveDefinite, "E7"),
                    [1, 2, 4] => verdict(Kind::PositiveDefinite, "E8"),
                    [1, 2, 5] => verdict(Kind::Affine, "affine-E8"),
                    [1, 3, 3] => verdict(Kind::Affine, "affine-E7"),
                    [2, 2, 2] => verdict(Kind::Affine, "affine-E6"),
                    _ => indefinite(),
                };
            }
            // affine-B: fork at one end, a single 4 on the terminal edge of
            // the remaining arm.
            if heavy == [4] {
                let long_ok = a.iter().any(|(_, labels)| {
                    labels.last() == Some(&4) && labels[..labels.len() - 1].iter().all(|&m| m == 3)
                });
                let forks_plain = a
                    .iter()
                    .filter(|(len, labels)| *len == 1 && labels == &[3])
                    .count()
                    >= 2;
                if long_ok && forks_plain {
                    return verdict(Kind::Affine, format!("affine-B{}", n - 1));
                }
            }
            indefinite()
        }
        [c1, c2] => {
            if !heavy.is_empty() || degree[*c1] != 3 || degree[*c2] != 3 {
                return indefinite();
            }
            // affine-D_{n-1}: both branch points carry two leaves.
            let leaves = |c: usize| adj[c].iter().filter(|(x, _)| degree[*x] == 1).count();
            if leaves(*c1) == 2 && leaves(*c2) == 2 {
                verdict(Kind::Affine, format!("affine-D{}", n - 1))
            } else {
                indefinite()
            }
        }
        _ => indefinite(),
    }
}

/// Edge labels along a path diagram, read from one end.
fn path_labels(adj: &[Vec<(usize, u32)>]) -> Vec<u32> {
    let start = (0..adj.len())
        .find(|&v| adj[v].len() == 1)
        .expect("path has an end");
    let mut labels = Vec::new();
    let (mut prev, mut cur) = (usize::MAX, start);
    while let Some(&(next, m)) = adj[cur].iter().find(|(x, _)| *x != prev) {
        labels.push(m);
        prev = cur;
        cur = next;
    }
    labels
}

fn path_verdict(labels: &[u32]) -> TypeVerdict {
    let n = labels.len() + 1;
    let heavy: Vec<(usize, u32)> = labels
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, m)| m > 3)
        .collect();
    let last = labels.len() - 1;
    let reversed: Vec<u32> = labels.iter().rev().copied().collect();
    let is = |pattern: &[u32]| labels == pattern || reversed == pattern;
    match heavy.as_slice() {
        [] => verdict(Kind::PositiveDefinite, format!("A{n}")),
        [(i, 4)] if *i == 0 || *i == last => verdict(Kind::PositiveDefinite, format!("B{n}")),
        [(_, 4)] if is(&[3, 4, 3]) => verdict(Kind::PositiveDefinite, "F4"),
        [(_, 4)] if is(&[3, 3, 4, 3]) => verdict(Kind::Affine, "affine-F4"),
        [(_, 5)] if is(&[5, 3]) => verdict(Kind::PositiveDefinite, "H3"),
        [(_, 5)] if is(&[5, 3, 3]) => verdict(Kind::PositiveDefinite, "H4"),
        [(_, 6)] if is(&[6, 3]) => verdict(Kind::Affine, "affine-G2"),
        [(0, 4), (j, 4)] if *j == last => verdict(Kind::Affine, format!("affine-C{}", n - 1)),
        _ => indefinite(),
    }
}

/// Degrees of the basic invariants of a named finite irreducible type; the
/// group order is their product.
pub fn degrees_of(name: &str) -> Option<Vec<u64>> {
    let rank = |s: &str| s.parse::<u64>().ok();
    if let Some(m) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        return Some(vec![2, rank(m)?]);
    }
    let (family, n) = name.split_at(1);
    let n = rank(n)?;
    match (family, n) {
        ("A", n) if n >= 1 => Some((2..=n + 1).collect()),
        ("B", n) if n >= 2 => Some((1..=n).map(|i| 2 * i).collect()),
        ("D", n) if n >= 4 => {
            let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            Some(d)
        }
        ("E", 6) => Some(vec![2, 5, 6, 8, 9, 12]),
        ("E", 7) => Some(vec![2, 6, 8, 10, 12, 14, 18]),
        ("E", 8) => Some(vec![2, 8, 12, 14, 18, 20, 24, 30]),
        ("F", 4) => Some(vec![2, 6, 8, 12]),
        ("H", 3) => Some(vec![2, 6, 10]),
        ("H", 4) => Some(vec![2, 12, 20, 30]),
        _ => None,
    }
}

/// Group order of a (possibly reducible) finite verdict name such as
/// `"A2 x I2(5)"`.
pub fn order_from_name(name: &str) -> Option<u64> {
    name.split(" x ")
        .map(|part| degrees_of(part).map(|d| d.iter().product::<u64>()))
        .product()
}
