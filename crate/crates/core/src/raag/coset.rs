use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coset enumeration defined more than {limit} cosets")]
pub struct CosetBudget {
    pub limit: usize,
}

const UNDEF: usize = usize::MAX;

/// Coset enumeration (HLT strategy) for a group generated by involutions.
///
/// Relators and subgroup generators are words in the generator indices;
/// the relators g² are implicit. Returns the index of the subgroup.
pub fn coset_enumeration(
    generators: usize,
    relators: &[Vec<usize>],
    subgroup: &[Vec<usize>],
    limit: usize,
) -> Result<usize, CosetBudget> {
    let mut t = Table {
        rows: vec![vec![UNDEF; generators]],
        parent: vec![0],
        limit,
    };
    for w in subgroup {
        t.scan_and_fill(0, w)?;
    }
    let mut c = 0;
    while c < t.rows.len() {
        if t.parent[c] == c {
            for r in relators {
                t.scan_and_fill(c, r)?;
                if t.parent[c] != c {
                    break;
                }
            }
            if t.parent[c] == c {
                for x in 0..generators {
                    if t.rows[c][x] == UNDEF {
                        t.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok((0..t.rows.len()).filter(|&c| t.parent[c] == c).count())
}

struct Table {
    rows: Vec<Vec<usize>>,
    /// `parent[c] == c` for live cosets; dead ones point at their survivor.
    parent: Vec<usize>,
    limit: usize,
}

impl Table {
    fn define(&mut self, c: usize, x: usize) -> Result<usize, CosetBudget> {
        if self.rows.len() >= self.limit {
            return Err(CosetBudget { limit: self.limit });
        }
        let d = self.rows.len();
        self.rows.push(vec![UNDEF; self.rows[0].len()]);
        self.parent.push(d);
        self.rows[c][x] = d;
        self.rows[d][x] = c;
        Ok(d)
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.parent[kill] = keep;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.rows[e].len() {
                let f = self.rows[e][x];
                if f == UNDEF {
                    continue;
                }
                self.rows[f][x] = UNDEF;
                let (m, n) = (self.rep(e), self.rep(f));
                if self.rows[m][x] != UNDEF {
                    let target = self.rows[m][x];
                    self.merge(n, target, &mut queue);
                } else if self.rows[n][x] != UNDEF {
                    let target = self.rows[n][x];
                    self.merge(m, target, &mut queue);
                } else {
                    self.rows[m][x] = n;
                    self.rows[n][x] = m;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), CosetBudget> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.rows[f][w[i]] != UNDEF {
                f = self.rows[f][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.rows[b][w[j as usize]] != UNDEF {
                b = self.rows[b][w[j as usize]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i];
                self.rows[f][x] = b;
                self.rows[b][x] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(a: usize, b: usize, m: usize) -> Vec<usize> {
        [a, b].iter().copied().cycle().take(2 * m).collect()
    }

    #[test]
    fn finite_group_orders() {
        // A3: trivial subgroup index is the group order
        let rels = vec![braid(0, 1, 3), braid(1, 2, 3), braid(0, 2, 2)];
        assert_eq!(coset_enumeration(3, &rels, &[], 1000).unwrap(), 24);
        // I2(5) modulo ⟨s⟩
        assert_eq!(
            coset_enumeration(2, &[braid(0, 1, 5)], &[vec![0]], 1000).unwrap(),
            5
        );
    }

    #[test]
    fn rotation_subgroup_of_infinite_dihedral() {
        assert_eq!(coset_enumeration(2, &[], &[vec![0, 1]], 100).unwrap(), 2);
    }

    #[test]
    fn infinite_index_hits_the_budget() {
        assert!(coset_enumeration(2, &[], &[], 50).is_err());
    }
}
