#![allow(dead_code, clippy::needless_range_loop)]

use simflow_core::{Rational, SparseMatrix};

/// Rank by elimination on the transpose, scanning rows for pivots with the
/// largest-index nonzero first. Shares nothing with the library routine.
pub fn oracle_rank(a: &SparseMatrix) -> usize {
    let mut m: Vec<Vec<Rational>> = a.transpose().to_dense();
    let ncols = a.nrows();
    let mut rank = 0;
    for c in (0..ncols).rev() {
        let Some(p) = (rank..m.len()).rev().find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for k in 0..ncols {
                let t = &f * &m[rank][k];
                m[i][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combos(n - 1, k);
    for mut c in combos(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all k×k minors.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0;
    for r in combos(rows, k) {
        for c in combos(cols, k) {
            let sub: Vec<Vec<i64>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| m[i][j]).collect())
                .collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Exhaustive maximum s-t flow value of a directed graph via the minimum
/// s-t cut over all vertex bipartitions.
pub fn brute_graph_max_flow(
    n: usize,
    edges: &[(usize, usize)],
    caps: &[i64],
    s: usize,
    t: usize,
) -> i64 {
    let mut best = i64::MAX;
    for mask in 0u32..(1 << n) {
        if mask >> s & 1 == 0 || mask >> t & 1 == 1 {
            continue;
        }
        let cut: i64 = edges
            .iter()
            .zip(caps)
            .filter(|((a, b), _)| mask >> a & 1 == 1 && mask >> b & 1 == 0)
            .map(|(_, c)| *c)
            .sum();
        best = best.min(cut);
    }
    best
}

/// Exhaustive minimum-weight edge set whose removal disconnects t from s in
/// the underlying undirected graph.
pub fn brute_undirected_edge_cut(
    n: usize,
    edges: &[(usize, usize)],
    w: &[i64],
    s: usize,
    t: usize,
) -> i64 {
    let m = edges.len();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << m) {
        let weight: i64 = (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| w[j]).sum();
        if weight >= best {
            continue;
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for (j, &(a, b)) in edges.iter().enumerate() {
            if mask >> j & 1 == 0 {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp[ra] = rb;
            }
        }
        if find(&mut comp, s) != find(&mut comp, t) {
            best = weight;
        }
    }
    best
}
