//! Integer kernel for sweep-scale exact computation on small graphs.
//!
//! Ground the last vertex and let `M` be the Laplacian with that row and
//! column removed. `M` is positive definite with `det M = tau`, the number
//! of spanning trees, and all effective resistances are ratios of integers:
//! `r(i, j) = (B_ii + B_jj - 2 B_ij) / tau` where `B = adj(M)` is the
//! integer adjugate (rows and columns of the ground vertex read as zero).
//! `B` is produced by fraction-free Gauss-Jordan elimination (Bareiss
//! division rule), so the whole pipeline stays in machine integers: no
//! allocation, no gcd until a final value is reduced.
//!
//! Edge insertion is a rank-one update: with `b = e_u - e_w` restricted to
//! the grounded coordinates and `g = B b`,
//! `tau' = tau + b^T g` and `B' = (tau' B - g g^T) / tau` entrywise.
//!
//! Everything is `i128` with checked arithmetic; `None` means an overflow or
//! a singular (disconnected) input, and callers fall back to the
//! arbitrary-precision route. The values this crate sweeps over are far
//! inside range: spanning-tree counts of graphs on <= 13 vertices.

use num_rational::Ratio;

use crate::graph::Graph;
use crate::Rational128;

#[derive(Debug, Clone)]
pub struct IntKernel {
    n: usize,
    m: i128,
    deg: Vec<i128>,
    tau: i128,
    /// Adjugate of the grounded Laplacian, (n-1) x (n-1), row-major.
    b: Vec<i128>,
    /// Cached B * d over the grounded coordinates.
    bd: Vec<i128>,
    /// sum_i d_i B_ii.
    s1: i128,
    /// d^T B d.
    s2: i128,
}

fn checked_dot(a: &[i128], b: &[i128]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc = acc.checked_add(x.checked_mul(*y)?)?;
    }
    Some(acc)
}

/// Fraction-free Gauss-Jordan on `[M | I]`; returns `(det, adjugate)`.
fn bareiss_adjugate(m: &[i128], nn: usize) -> Option<(i128, Vec<i128>)> {
    if nn == 0 {
        return Some((1, Vec::new()));
    }
    let width = 2 * nn;
    let mut aug = vec![0i128; nn * width];
    for i in 0..nn {
        for j in 0..nn {
            aug[i * width + j] = m[i * nn + j];
        }
        aug[i * width + nn + i] = 1;
    }

    let mut prev: i128 = 1;
    for k in 0..nn {
        let pivot = aug[k * width + k];
        if pivot == 0 {
            return None; // singular: grounded Laplacian of a disconnected graph
        }
        for i in 0..nn {
            if i == k {
                continue;
            }
            let factor = aug[i * width + k];
            for j in 0..width {
                let lhs = pivot.checked_mul(aug[i * width + j])?;
                let rhs = factor.checked_mul(aug[k * width + j])?;
                // Bareiss guarantees the division below is exact.
                let num = lhs.checked_sub(rhs)?;
                aug[i * width + j] = num / prev;
            }
        }
        prev = pivot;
    }

    let det = aug[(nn - 1) * width + nn - 1];
    debug_assert!((0..nn).all(|i| aug[i * width + i] == det));
    let mut adj = vec![0i128; nn * nn];
    for i in 0..nn {
        adj[i * nn..(i + 1) * nn].copy_from_slice(&aug[i * width + nn..i * width + 2 * nn]);
    }
    Some((det, adj))
}

/// Builds the kernel for an unweighted connected graph on >= 2 vertices.
/// `None` for anything else, or on arithmetic overflow.
pub fn int_kernel(g: &Graph) -> Option<IntKernel> {
    if g.is_weighted() || g.n() < 2 {
        return None;
    }
    int_kernel_from_edges(g.n(), g.edges())
}

/// Same, from a bare edge list (no validation beyond connectivity, which
/// shows up as a singular matrix). Lets sweep loops skip graph construction.
pub fn int_kernel_from_edges(n: usize, edges: &[(usize, usize)]) -> Option<IntKernel> {
    if n < 2 {
        return None;
    }
    let nn = n - 1;
    let mut lap = vec![0i128; nn * nn];
    let mut deg = vec![0i128; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        if u < nn {
            lap[u * nn + u] += 1;
        }
        if v < nn {
            lap[v * nn + v] += 1;
        }
        if u < nn && v < nn {
            lap[u * nn + v] -= 1;
            lap[v * nn + u] -= 1;
        }
    }
    let (tau, b) = bareiss_adjugate(&lap, nn)?;
    if tau <= 0 {
        return None;
    }
    IntKernel::from_parts(n, edges.len() as i128, deg, tau, b)
}

impl IntKernel {
    fn from_parts(n: usize, m: i128, deg: Vec<i128>, tau: i128, b: Vec<i128>) -> Option<Self> {
        let nn = n - 1;
        let mut bd = vec![0i128; nn];
        for i in 0..nn {
            bd[i] = checked_dot(&b[i * nn..(i + 1) * nn], &deg[..nn])?;
        }
        let mut s1: i128 = 0;
        for i in 0..nn {
            s1 = s1.checked_add(deg[i].checked_mul(b[i * nn + i])?)?;
        }
        let s2 = checked_dot(&bd, &deg[..nn])?;
        Some(IntKernel {
            n,
            m,
            deg,
            tau,
            b,
            bd,
            s1,
            s2,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Spanning tree count of the graph.
    pub fn tree_count(&self) -> i128 {
        self.tau
    }

    #[inline]
    fn bget(&self, i: usize, j: usize) -> i128 {
        let nn = self.n - 1;
        if i >= nn || j >= nn {
            0
        } else {
            self.b[i * nn + j]
        }
    }

    #[inline]
    fn bd_get(&self, i: usize) -> i128 {
        if i >= self.n - 1 {
            0
        } else {
            self.bd[i]
        }
    }

    /// Effective resistance between two vertices, exact.
    pub fn resistance(&self, i: usize, j: usize) -> Rational128 {
        if i == j {
            return Ratio::from_integer(0);
        }
        let num = self.bget(i, i) + self.bget(j, j) - 2 * self.bget(i, j);
        Ratio::new(num, self.tau)
    }

    /// Kemeny's constant, exact: `(2m s1 - s2) / (2m tau)`.
    pub fn kemeny(&self) -> Option<Rational128> {
        let two_m = 2 * self.m;
        let num = two_m.checked_mul(self.s1)?.checked_sub(self.s2)?;
        Some(Ratio::new(num, two_m.checked_mul(self.tau)?))
    }

    /// Moment of a vertex, exact: `(s1 + 2m B_vv - 2 (Bd)_v) / tau`.
    pub fn moment(&self, v: usize) -> Option<Rational128> {
        let num = self
            .s1
            .checked_add((2 * self.m).checked_mul(self.bget(v, v))?)?
            .checked_sub(2 * self.bd_get(v))?;
        Some(Ratio::new(num, self.tau))
    }

    /// Rank-one update adding the non-edge `(u, w)`.
    pub fn with_edge(&self, u: usize, w: usize) -> Option<IntKernel> {
        debug_assert!(u != w && u < self.n && w < self.n);
        let nn = self.n - 1;
        let mut g = vec![0i128; nn];
        for i in 0..nn {
            g[i] = self.bget(i, u) - self.bget(i, w);
        }
        let gu = if u < nn { g[u] } else { 0 };
        let gw = if w < nn { g[w] } else { 0 };
        let beta = gu.checked_sub(gw)?;
        let tau_new = self.tau.checked_add(beta)?;

        let mut b_new = vec![0i128; nn * nn];
        for i in 0..nn {
            for j in 0..nn {
                let lhs = tau_new.checked_mul(self.b[i * nn + j])?;
                let rhs = g[i].checked_mul(g[j])?;
                // Divides exactly: the updated adjugate is integer.
                let num = lhs.checked_sub(rhs)?;
                b_new[i * nn + j] = num / self.tau;
            }
        }

        let mut deg = self.deg.clone();
        deg[u] += 1;
        deg[w] += 1;
        IntKernel::from_parts(self.n, self.m + 1, deg, tau_new, b_new)
    }

    /// Kemeny's constant after adding a set of non-edges, without mutating.
    pub fn kemeny_after_edges(&self, set: &[(usize, usize)]) -> Option<Rational128> {
        match set {
            [] => self.kemeny(),
            [(u, w)] => self.kemeny_after_one_edge(*u, *w),
            [e1, e2] => self.kemeny_after_two_edges(*e1, *e2),
            [first, rest @ ..] => {
                let mut kernel = self.with_edge(first.0, first.1)?;
                for &(u, w) in &rest[..rest.len() - 1] {
                    kernel = kernel.with_edge(u, w)?;
                }
                let last = rest[rest.len() - 1];
                kernel.kemeny_after_one_edge(last.0, last.1)
            }
        }
    }

    /// Two chained rank-one updates carried entirely through O(n) vectors;
    /// the intermediate adjugate is never materialized.
    fn kemeny_after_two_edges(
        &self,
        (u1, w1): (usize, usize),
        (u2, w2): (usize, usize),
    ) -> Option<Rational128> {
        let nn = self.n - 1;
        let at = |v: &[i128], i: usize| if i < nn { v[i] } else { 0 };
        let tau0 = self.tau;

        let mut g1 = vec![0i128; nn];
        for i in 0..nn {
            g1[i] = self.bget(i, u1) - self.bget(i, w1);
        }
        let tau1 = tau0.checked_add(at(&g1, u1) - at(&g1, w1))?;

        // ghat = B' b2 where B' is the adjugate after the first edge:
        // ghat_i = (tau1 (B_{i,u2} - B_{i,w2}) - g1_i (g1_{u2} - g1_{w2})) / tau0.
        let q = at(&g1, u2) - at(&g1, w2);
        let mut ghat = vec![0i128; nn];
        for i in 0..nn {
            let h = self.bget(i, u2) - self.bget(i, w2);
            let num = tau1.checked_mul(h)?.checked_sub(g1[i].checked_mul(q)?)?;
            ghat[i] = num / tau0;
        }
        let tau2 = tau1.checked_add(at(&ghat, u2) - at(&ghat, w2))?;

        // Final degrees: bump both endpoints of both edges.
        let bump = |i: usize| -> i128 {
            let mut b = 0;
            for &v in [u1, w1, u2, w2].iter() {
                if v == i {
                    b += 1;
                }
            }
            b
        };

        // s1'' = sum_i d''_i B''_ii through the two diagonal update rules.
        let mut s1_new: i128 = 0;
        for i in 0..nn {
            let d = self.deg[i] + bump(i);
            let diag1 = (tau1.checked_mul(self.b[i * nn + i])? - g1[i].checked_mul(g1[i])?) / tau0;
            let diag2 = (tau2.checked_mul(diag1)? - ghat[i].checked_mul(ghat[i])?) / tau1;
            s1_new = s1_new.checked_add(d.checked_mul(diag2)?)?;
        }

        // d''^T B d'' from the cached aggregates; delta has <= 4 entries.
        let mut dbd = self.s2;
        for &v in [u1, w1, u2, w2].iter() {
            dbd = dbd.checked_add(2 * self.bd_get(v))?;
        }
        for &a in [u1, w1, u2, w2].iter() {
            for &b in [u1, w1, u2, w2].iter() {
                dbd = dbd.checked_add(self.bget(a, b))?;
            }
        }
        // g1^T d'' and ghat^T d''.
        let mut g1d = checked_dot(&g1, &self.deg[..nn])?;
        let mut ghatd = checked_dot(&ghat, &self.deg[..nn])?;
        for &v in [u1, w1, u2, w2].iter() {
            g1d = g1d.checked_add(at(&g1, v))?;
            ghatd = ghatd.checked_add(at(&ghat, v))?;
        }
        // Push d''^T B d'' through both updates.
        let dbd1 = (tau1.checked_mul(dbd)?.checked_sub(g1d.checked_mul(g1d)?)?) / tau0;
        let s2_new = (tau2
            .checked_mul(dbd1)?
            .checked_sub(ghatd.checked_mul(ghatd)?)?)
            / tau1;

        let two_m = 2 * (self.m + 2);
        let num = two_m.checked_mul(s1_new)?.checked_sub(s2_new)?;
        Some(Ratio::new(num, two_m.checked_mul(tau2)?))
    }

    /// O(n) Kemeny evaluation after a single edge insertion: only the
    /// aggregate sums are updated, never the full adjugate.
    fn kemeny_after_one_edge(&self, u: usize, w: usize) -> Option<Rational128> {
        let nn = self.n - 1;
        let mut g = vec![0i128; nn];
        for i in 0..nn {
            g[i] = self.bget(i, u) - self.bget(i, w);
        }
        let gu = if u < nn { g[u] } else { 0 };
        let gw = if w < nn { g[w] } else { 0 };
        let tau_new = self.tau.checked_add(gu - gw)?;
        let m_new = self.m + 1;

        // Updated degree vector is d + e_u + e_w.
        let diag_sum = {
            // sum_i d'_i B_ii
            let mut acc = self.s1;
            acc = acc.checked_add(self.bget(u, u))?;
            acc = acc.checked_add(self.bget(w, w))?;
            acc
        };
        let g_sq_sum = {
            // sum_i d'_i g_i^2
            let mut acc: i128 = 0;
            for i in 0..nn {
                let mut d = self.deg[i];
                if i == u {
                    d += 1;
                }
                if i == w {
                    d += 1;
                }
                acc = acc.checked_add(d.checked_mul(g[i].checked_mul(g[i])?)?)?;
            }
            acc
        };
        // s1' = (tau' * sum d'_i B_ii - sum d'_i g_i^2) / tau
        let s1_num = tau_new.checked_mul(diag_sum)?.checked_sub(g_sq_sum)?;
        let s1_new = s1_num / self.tau;

        // d'^T B d' = s2 + 2 (Bd)_u + 2 (Bd)_w + B_uu + 2 B_uw + B_ww
        let dbd = self
            .s2
            .checked_add(2 * self.bd_get(u))?
            .checked_add(2 * self.bd_get(w))?
            .checked_add(self.bget(u, u))?
            .checked_add(2 * self.bget(u, w))?
            .checked_add(self.bget(w, w))?;
        // g^T d'
        let gd = {
            let mut acc = checked_dot(&g, &self.deg[..nn])?;
            acc = acc.checked_add(gu)?;
            acc = acc.checked_add(gw)?;
            acc
        };
        // s2' = (tau' * d'^T B d' - (g^T d')^2) / tau
        let s2_num = tau_new.checked_mul(dbd)?.checked_sub(gd.checked_mul(gd)?)?;
        let s2_new = s2_num / self.tau;

        let two_m = 2 * m_new;
        let num = two_m.checked_mul(s1_new)?.checked_sub(s2_new)?;
        Some(Ratio::new(num, two_m.checked_mul(tau_new)?))
    }
}

/// Kemeny's constant of a small unweighted connected graph, exact.
pub fn kemeny_i128(g: &Graph) -> Option<Rational128> {
    int_kernel(g)?.kemeny()
}

/// Moment of a vertex of a small unweighted connected graph, exact.
pub fn moment_i128(g: &Graph, v: usize) -> Option<Rational128> {
    int_kernel(g)?.moment(v)
}
