//! Wick's theorem for number-conserving Gaussian fermion states.
//!
//! A product `o_1 o_2 ... o_2n` of operators that are each linear in `a_l`,
//! `a_l†` has expectation `Pf(M)` with `M_pq = <o_p o_q>` for `p < q`. The
//! Jordan-Wigner string is expanded with `1 − 2 n_l = (a_l† + a_l)(a_l† − a_l)`
//! so that a string correlator over `m` bonds is a single `2m × 2m` Pfaffian.

use crate::spectrum::CorrelatorTable;

/// Source of two-point contractions between sites.
pub trait Contractions {
    /// `<a_i† a_j>`
    fn particle(&self, i: usize, j: usize) -> f64;

    /// `<a_i a_j†>`
    fn hole(&self, i: usize, j: usize) -> f64 {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - self.particle(j, i)
    }
}

impl Contractions for CorrelatorTable {
    fn particle(&self, i: usize, j: usize) -> f64 {
        CorrelatorTable::particle(self, j as i64 - i as i64)
    }

    fn hole(&self, i: usize, j: usize) -> f64 {
        CorrelatorTable::hole(self, j as i64 - i as i64)
    }
}

/// `creation · a_site† + annihilation · a_site`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermionOp {
    pub site: usize,
    pub creation: f64,
    pub annihilation: f64,
}

impl FermionOp {
    pub fn create(site: usize) -> Self {
        Self {
            site,
            creation: 1.0,
            annihilation: 0.0,
        }
    }

    pub fn annihilate(site: usize) -> Self {
        Self {
            site,
            creation: 0.0,
            annihilation: 1.0,
        }
    }

    /// `a† + a`
    pub fn majorana_plus(site: usize) -> Self {
        Self {
            site,
            creation: 1.0,
            annihilation: 1.0,
        }
    }

    /// `a† − a`
    pub fn majorana_minus(site: usize) -> Self {
        Self {
            site,
            creation: 1.0,
            annihilation: -1.0,
        }
    }
}

/// `<p q>` for two linear operators; anomalous terms are zero.
pub fn contraction<C: Contractions + ?Sized>(p: &FermionOp, q: &FermionOp, ctx: &C) -> f64 {
    let mut value = 0.0;
    if p.creation != 0.0 && q.annihilation != 0.0 {
        value += p.creation * q.annihilation * ctx.particle(p.site, q.site);
    }
    if p.annihilation != 0.0 && q.creation != 0.0 {
        value += p.annihilation * q.creation * ctx.hole(p.site, q.site);
    }
    value
}

/// Expectation of the ordered product `ops[0] ops[1] ...`.
pub fn expectation<C: Contractions + ?Sized>(ops: &[FermionOp], ctx: &C) -> f64 {
    let n = ops.len();
    if n == 0 {
        return 1.0;
    }
    if n % 2 == 1 {
        return 0.0;
    }
    let mut m = vec![0.0; n * n];
    for p in 0..n {
        for q in p + 1..n {
            let v = contraction(&ops[p], &ops[q], ctx);
            m[p * n + q] = v;
            m[q * n + p] = -v;
        }
    }
    pfaffian(&mut m, n)
}

/// Pfaffian of a real antisymmetric `n × n` matrix stored row-major.
///
/// Parlett-Reid tridiagonalization with partial pivoting; `a` is overwritten.
pub fn pfaffian(a: &mut [f64], n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "matrix storage does not match n = {n}");
    if n % 2 == 1 {
        return 0.0;
    }
    let at = |r: usize, c: usize| r * n + c;
    let mut result = 1.0;
    let mut tau = Vec::with_capacity(n);
    let mut col = Vec::with_capacity(n);
    for k in (0..n.saturating_sub(1)).step_by(2) {
        let mut kp = k + 1;
        let mut best = a[at(k + 1, k)].abs();
        for i in k + 2..n {
            let v = a[at(i, k)].abs();
            if v > best {
                best = v;
                kp = i;
            }
        }
        if kp != k + 1 {
            for c in 0..n {
                a.swap(at(k + 1, c), at(kp, c));
            }
            for r in 0..n {
                a.swap(at(r, k + 1), at(r, kp));
            }
            result = -result;
        }
        let pivot = a[at(k, k + 1)];
        if pivot == 0.0 {
            return 0.0;
        }
        result *= pivot;
        if k + 2 < n {
            tau.clear();
            col.clear();
            tau.extend((k + 2..n).map(|j| a[at(k, j)] / pivot));
            col.extend((k + 2..n).map(|i| a[at(i, k + 1)]));
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    a[at(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
    }
    result
}

/// `<a_i† (1 − 2n_{i+1}) ... (1 − 2n_{j−1}) a_j>` for `i < j`: the
/// off-diagonal entry `<S_i^- S_j^+>` of the pair density matrix.
pub fn string_correlator<C: Contractions + ?Sized>(i: usize, j: usize, ctx: &C) -> f64 {
    assert!(i < j, "string correlator needs i < j (got {i}, {j})");
    let mut ops = Vec::with_capacity(2 * (j - i));
    ops.push(FermionOp::create(i));
    for l in i + 1..j {
        ops.push(FermionOp::majorana_plus(l));
        ops.push(FermionOp::majorana_minus(l));
    }
    ops.push(FermionOp::annihilate(j));
    expectation(&ops, ctx)
}
