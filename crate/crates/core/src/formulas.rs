//! Closed-form decomposition and counting formulas in terms of `(p, n, m, s)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::group::GroupParams;
use crate::rational::{RationalCounts, SimpleComponent, WedderburnDecomposition};

fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn phi(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        pow(p, e) - pow(p, e - 1)
    }
}

/// Which case of the decomposition formula a parameter set falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Abelian,
    /// `n - s >= m`.
    QuotientDominates,
    /// `m = (n - s) + k` with `1 <= k <= s`.
    SmallExcess {
        k: u32,
    },
    /// `m = (n - s) + k` with `k > s`.
    LargeExcess {
        k: u32,
    },
}

pub fn branch(params: &GroupParams) -> Branch {
    if params.is_abelian() {
        return Branch::Abelian;
    }
    let ns = params.n() - params.s();
    if ns >= params.m() {
        Branch::QuotientDominates
    } else {
        let k = params.m() - ns;
        if k <= params.s() {
            Branch::SmallExcess { k }
        } else {
            Branch::LargeExcess { k }
        }
    }
}

/// `QG` for `G = C_{p^n} x C_{p^m}`; the arguments are swapped if `n < m`.
pub fn abelian_closed_form(p: u64, n: u32, m: u32) -> WedderburnDecomposition {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    let mut comps = vec![SimpleComponent::new(1, 0, 1)];
    for lam in 1..=m {
        comps.push(SimpleComponent::new(1, lam, pow(p, lam) + pow(p, lam - 1)));
    }
    for lam in m + 1..=n {
        comps.push(SimpleComponent::new(1, lam, pow(p, m)));
    }
    WedderburnDecomposition::new(p, comps)
}

/// Simple components of the linear part (`G/G' = C_{p^(n-s)} x C_{p^m}`).
fn linear_part(p: u64, ns: u32, m: u32) -> Vec<SimpleComponent> {
    abelian_closed_form(p, ns, m).components().to_vec()
}

/// The decomposition of `QG` read off from `(p, n, m, s)`.
pub fn wedderburn_closed_form(params: &GroupParams) -> Result<WedderburnDecomposition> {
    let p = params.p();
    let (n, m, s) = (params.n(), params.m(), params.s());
    if params.is_abelian() {
        let d = abelian_closed_form(p, n, m);
        d.check_dimension(params.order())?;
        return Ok(d);
    }
    let ns = n - s;
    let mut comps = linear_part(p, ns, m);
    match branch(params) {
        Branch::QuotientDominates => {
            for t in 1..=s {
                comps.push(SimpleComponent::new(pow(p, t), ns, pow(p, m - t)));
            }
        }
        Branch::SmallExcess { k } => {
            for t in 1..k {
                comps.push(SimpleComponent::new(pow(p, t), ns, pow(p, ns)));
                for lam in ns + 1..=m - t {
                    comps.push(SimpleComponent::new(pow(p, t), lam, phi(p, ns)));
                }
            }
            for t in k..=s {
                comps.push(SimpleComponent::new(pow(p, t), ns, pow(p, m - t)));
            }
        }
        Branch::LargeExcess { .. } => {
            for t in 1..=s {
                comps.push(SimpleComponent::new(pow(p, t), ns, pow(p, ns)));
                for lam in ns + 1..=m - t {
                    comps.push(SimpleComponent::new(pow(p, t), lam, phi(p, ns)));
                }
            }
        }
        Branch::Abelian => unreachable!(),
    }
    let d = WedderburnDecomposition::new(p, comps);
    d.check_dimension(params.order())?;
    Ok(d)
}

/// Rational irreducible counts for `C_{p^n} x C_{p^m}`, by `lambda` with
/// degree `phi(p^lambda)`.
pub fn abelian_rational_counts(p: u64, n: u32, m: u32) -> RationalCounts {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    let mut counts = RationalCounts::new(p);
    counts.add(0, 1);
    for lam in 1..=m {
        counts.add(lam, pow(p, lam - 1) * (p + 1));
    }
    for lam in m + 1..=n {
        counts.add(lam, pow(p, m));
    }
    counts
}

/// Counts of irreducible rational representations by degree `phi(p^lambda)`.
///
/// A class with center `Q(zeta_{p^L})` and matrix size `p^t` has degree
/// `p^t phi(p^L) = phi(p^(L+t))`, which is why the nonlinear entries sit at
/// `lambda = n - s + t`.
pub fn rational_counts_closed_form(params: &GroupParams) -> RationalCounts {
    let p = params.p();
    let (n, m, s) = (params.n(), params.m(), params.s());
    if params.is_abelian() {
        return abelian_rational_counts(p, n, m);
    }
    let ns = n - s;
    let mut counts = RationalCounts::new(p);
    counts.add(0, 1);
    match branch(params) {
        Branch::QuotientDominates => {
            for lam in 1..=m {
                counts.add(lam, pow(p, lam - 1) * (p + 1));
            }
            for lam in m + 1..=ns {
                counts.add(lam, pow(p, m));
            }
            for t in 1..=s {
                counts.add(ns + t, pow(p, m - t));
            }
        }
        Branch::SmallExcess { k } => {
            for lam in 1..=ns {
                counts.add(lam, pow(p, lam - 1) * (p + 1));
            }
            for t in 1..k {
                counts.add(ns + t, 2 * pow(p, ns) + (t as u64 - 1) * phi(p, ns));
            }
            counts.add(
                ns + k,
                pow(p, ns) + (k as u64 - 1) * phi(p, ns) + pow(p, m - k),
            );
            for t in k + 1..=s {
                counts.add(ns + t, pow(p, m - t));
            }
        }
        Branch::LargeExcess { .. } => {
            for lam in 1..=ns {
                counts.add(lam, pow(p, lam - 1) * (p + 1));
            }
            for t in 1..=s {
                counts.add(ns + t, 2 * pow(p, ns) + (t as u64 - 1) * phi(p, ns));
            }
            for lam in n + 1..=m {
                counts.add(lam, pow(p, ns) + s as u64 * phi(p, ns));
            }
        }
        Branch::Abelian => unreachable!(),
    }
    counts
}

/// Complex irreducible counts keyed by degree.
pub fn complex_counts_closed_form(params: &GroupParams) -> BTreeMap<u64, u64> {
    let p = params.p();
    let (n, m, s) = (params.n(), params.m(), params.s());
    if params.is_abelian() {
        return BTreeMap::from([(1, params.order())]);
    }
    let mut out = BTreeMap::from([(1, pow(p, n + m - s))]);
    for t in 1..=s {
        out.insert(pow(p, t), phi(p, n - s) * pow(p, m - t));
    }
    out
}

/// `p^(n+m-s) + p^(n+m-s-1) - p^(n+m-2s-1)`: the number of irreducible
/// complex characters (and of conjugacy classes).
pub fn complex_total_closed_form(params: &GroupParams) -> u64 {
    if params.is_abelian() {
        return params.order();
    }
    let p = params.p();
    let (n, m, s) = (params.n(), params.m(), params.s());
    pow(p, n + m - s) + pow(p, n + m - s - 1) - pow(p, n + m - 2 * s - 1)
}

/// `sum_{k=0}^{m} (n + m + 1 - 2k) phi(p^k)` for `C_{p^n} x C_{p^m}`, `n >= m`.
pub fn abelian_total_count(p: u64, n: u32, m: u32) -> u64 {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    (0..=m)
        .map(|k| (n + m + 1 - 2 * k) as u64 * phi(p, k))
        .sum()
}

fn big_phi(p: &BigUint, e: u32) -> BigUint {
    if e == 0 {
        BigUint::one()
    } else {
        p.pow(e) - p.pow(e - 1)
    }
}

/// Evaluates both sides of
/// `p^(n+m) = 1 + sum_{r=1}^{m} phi(p^r)(2 sum_{k<r} phi(p^k) + phi(p^r))
///            + sum_{r=m+1}^{n} phi(p^r) sum_{k<=m} phi(p^k)`
/// in exact integers.
pub fn counting_identity_check(p: u64, n: u32, m: u32) -> bool {
    let bp = BigUint::from(p);
    let lhs = bp.pow(n + m);
    let mut rhs = BigUint::one();
    for r in 1..=m {
        let mut inner = BigUint::zero();
        for k in 0..r {
            inner += big_phi(&bp, k) * 2u32;
        }
        inner += big_phi(&bp, r);
        rhs += big_phi(&bp, r) * inner;
    }
    let tail: BigUint = (0..=m).map(|k| big_phi(&bp, k)).sum();
    for r in m + 1..=n {
        rhs += big_phi(&bp, r) * &tail;
    }
    lhs == rhs
}
