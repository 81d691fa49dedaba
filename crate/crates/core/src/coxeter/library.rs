//! Named systems used by tests, examples and the demo.

use super::{CoxeterSystem, Order};

/// Builds a rank-`n` system from diagram edges; unlisted pairs commute.
pub fn from_edges(n: usize, edges: &[(usize, usize, Order)]) -> CoxeterSystem {
    let mut m = vec![vec![Order::Finite(2); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Order::Finite(1);
    }
    for &(a, b, o) in edges {
        m[a][b] = o;
        m[b][a] = o;
    }
    CoxeterSystem::from_orders(m).expect("library matrices are valid")
}

fn path(labels: &[u32]) -> CoxeterSystem {
    let edges: Vec<_> = labels
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, i + 1, Order::Finite(m)))
        .collect();
    from_edges(labels.len() + 1, &edges)
}

pub fn rank_one() -> CoxeterSystem {
    from_edges(1, &[])
}

pub fn dihedral(m: Order) -> CoxeterSystem {
    from_edges(2, &[(0, 1, m)])
}

pub fn a3() -> CoxeterSystem {
    path(&[3, 3])
}

pub fn b3() -> CoxeterSystem {
    path(&[4, 3])
}

pub fn h3() -> CoxeterSystem {
    path(&[5, 3])
}

/// Rank-3 system with m(0,1) = p, m(1,2) = q, m(0,2) = r.
pub fn triangle(p: u32, q: u32, r: u32) -> CoxeterSystem {
    let f = Order::Finite;
    from_edges(3, &[(0, 1, f(p)), (1, 2, f(q)), (0, 2, f(r))])
}

pub fn affine_a2() -> CoxeterSystem {
    triangle(3, 3, 3)
}

/// Right-angled Coxeter group of a k-gon: neighbours along the cycle commute,
/// all other pairs generate infinite dihedral groups.
pub fn right_angled_polygon(k: usize) -> CoxeterSystem {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let adjacent = b == a + 1 || (a == 0 && b == k - 1);
            if !adjacent {
                edges.push((a, b, Order::Infinite));
            }
        }
    }
    from_edges(k, &edges)
}

/// The representation-soundness test family.
pub fn test_systems() -> Vec<CoxeterSystem> {
    let mut v: Vec<CoxeterSystem> = [3, 4, 5, 6]
        .iter()
        .map(|&m| dihedral(Order::Finite(m)))
        .collect();
    v.push(dihedral(Order::Infinite));
    v.extend([
        a3(),
        b3(),
        h3(),
        affine_a2(),
        triangle(2, 3, 7),
        right_angled_polygon(5),
    ]);
    v
}

/// One connected instance of every spherical and affine family, at small rank.
pub fn classification_zoo() -> Vec<CoxeterSystem> {
    let f = Order::Finite;
    let star = |arms: &[usize]| {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next, f(3)));
                prev = next;
                next += 1;
            }
        }
        from_edges(next, &edges)
    };
    let cycle = |n: usize| {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, f(3))).collect();
        from_edges(n, &edges)
    };
    vec![
        rank_one(),
        dihedral(f(8)),
        path(&[3, 3, 3]),
        path(&[4, 3, 3]),
        star(&[1, 1, 1]),
        star(&[1, 1, 2]),
        star(&[1, 2, 2]),
        star(&[1, 2, 3]),
        star(&[1, 2, 4]),
        path(&[3, 4, 3]),
        path(&[5, 3]),
        path(&[5, 3, 3]),
        dihedral(Order::Infinite),
        cycle(3),
        cycle(4),
        // affine B3 and B4: a fork with a double bond at the far end
        from_edges(4, &[(0, 1, f(3)), (0, 2, f(3)), (0, 3, f(4))]),
        from_edges(5, &[(0, 1, f(3)), (0, 2, f(3)), (0, 3, f(3)), (3, 4, f(4))]),
        path(&[4, 4]),
        path(&[4, 3, 4]),
        path(&[4, 3, 3, 4]),
        star(&[1, 1, 1, 1]),
        from_edges(
            6,
            &[
                (0, 1, f(3)),
                (0, 2, f(3)),
                (0, 3, f(3)),
                (3, 4, f(3)),
                (3, 5, f(3)),
            ],
        ),
        from_edges(
            7,
            &[
                (0, 1, f(3)),
                (0, 2, f(3)),
                (0, 3, f(3)),
                (3, 4, f(3)),
                (4, 5, f(3)),
                (4, 6, f(3)),
            ],
        ),
        star(&[2, 2, 2]),
        star(&[1, 3, 3]),
        star(&[1, 2, 5]),
        path(&[3, 3, 4, 3]),
        path(&[6, 3]),
    ]
}
