//! The split metacyclic group `<a, b | a^(p^n) = b^(p^m) = 1, b a b^-1 = a^r>`.

use std::fmt;

use crate::arith::{
    checked_pow, is_prime, multiplicative_order, split_r, PrimePower, FORMULA_ORDER_BOUND,
    ORACLE_ORDER_BOUND,
};
use crate::error::{Error, Result};

/// Validated presentation data `(p, n, m, r)` together with the derived
/// `s` (order of `r` mod `p^n` is `p^s`) and `k` (`r = 1 + k p^(n-s)`).
///
/// Abelian parameters (`r = 1`, `s = k = 0`) are a separate, explicitly
/// constructed state; see [`GroupParams::abelian`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupParams {
    p: u64,
    n: u32,
    m: u32,
    r: u64,
    s: u32,
    k: u64,
    abelian: bool,
    pn: u64,
    pm: u64,
    // r^j mod p^n for j < p^s; r has order p^s so this covers every j.
    r_powers: Vec<u64>,
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn check_order(p: u64, n: u32, m: u32) -> Result<()> {
    let order = (p as u128).checked_pow(n + m);
    match order {
        Some(o) if o <= FORMULA_ORDER_BOUND as u128 => Ok(()),
        _ => Err(Error::SizeBound {
            order: order.unwrap_or(u128::MAX),
            bound: FORMULA_ORDER_BOUND,
        }),
    }
}

impl GroupParams {
    /// Validates a non-abelian presentation. `r` is reduced mod `p^n` first.
    pub fn new(p: u64, n: u32, m: u32, r: i64) -> Result<Self> {
        check_prime(p)?;
        if n < 2 {
            return Err(Error::InvalidExponent(format!("need n >= 2, got n = {n}")));
        }
        if m < 1 {
            return Err(Error::InvalidExponent(format!("need m >= 1, got m = {m}")));
        }
        check_order(p, n, m)?;
        let pn = checked_pow(p, n)?;
        let r = r.rem_euclid(pn as i64);
        let (k, s) = split_r(r, p, n)?;
        if s > m {
            return Err(Error::OrderExceedsM { p, s, m });
        }
        let r = r as u64;
        let ps = checked_pow(p, s)?;
        let mut r_powers = Vec::with_capacity(ps as usize);
        let mut x = 1u64;
        for _ in 0..ps {
            r_powers.push(x);
            x = (x as u128 * r as u128 % pn as u128) as u64;
        }
        debug_assert_eq!(multiplicative_order(r as i64, &PrimePower::new(p, n)?)?, ps);
        Ok(GroupParams {
            p,
            n,
            m,
            r,
            s,
            k,
            abelian: false,
            pn,
            pm: checked_pow(p, m)?,
            r_powers,
        })
    }

    /// The presentation with the canonical `r = 1 + p^(n-s)`; the group
    /// depends only on `(p, n, m, s)`.
    pub fn from_s(p: u64, n: u32, m: u32, s: u32) -> Result<Self> {
        check_prime(p)?;
        if s == 0 || s >= n {
            return Err(Error::InvalidExponent(format!(
                "need 1 <= s <= n - 1, got s = {s}, n = {n}"
            )));
        }
        let r = 1 + checked_pow(p, n - s)?;
        Self::new(p, n, m, r as i64)
    }

    /// `C_{p^n} x C_{p^m}` (presentation with `r = 1`).
    pub fn abelian(p: u64, n: u32, m: u32) -> Result<Self> {
        check_prime(p)?;
        check_order(p, n, m)?;
        Ok(GroupParams {
            p,
            n,
            m,
            r: 1,
            s: 0,
            k: 0,
            abelian: true,
            pn: checked_pow(p, n)?,
            pm: checked_pow(p, m)?,
            r_powers: vec![1],
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn is_abelian(&self) -> bool {
        self.abelian
    }
    /// `p^n`, the order of `a`.
    pub fn order_a(&self) -> u64 {
        self.pn
    }
    /// `p^m`, the order of `b`.
    pub fn order_b(&self) -> u64 {
        self.pm
    }

    pub fn order(&self) -> u64 {
        self.pn * self.pm
    }

    /// `1 + p^(n-s)`, or 1 for abelian parameters.
    pub fn canonical_r(&self) -> u64 {
        if self.abelian {
            1
        } else {
            1 + self.p.pow(self.n - self.s)
        }
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    /// Ambient cyclotomic level holding every character value.
    pub fn ambient_level(&self) -> u32 {
        self.n.max(self.m)
    }

    /// `r^j mod p^n`.
    pub fn r_pow(&self, j: u64) -> u64 {
        self.r_powers[(j % self.r_powers.len() as u64) as usize]
    }

    /// Every non-abelian parameter set `(n, m, s)` for `p` with
    /// `p^(n+m) <= max_order`, each with its canonical `r`, ordered by
    /// `(n, m, s)`.
    pub fn enumerate(p: u64, max_order: u64) -> Result<Vec<GroupParams>> {
        check_prime(p)?;
        if max_order > FORMULA_ORDER_BOUND {
            return Err(Error::SizeBound {
                order: max_order as u128,
                bound: FORMULA_ORDER_BOUND,
            });
        }
        let mut out = Vec::new();
        let fits = |e: u32| (p as u128).pow(e) <= max_order as u128;
        let mut n = 2;
        while fits(n + 1) {
            let mut m = 1;
            while fits(n + m) {
                for s in 1..=(n - 1).min(m) {
                    out.push(Self::from_s(p, n, m, s)?);
                }
                m += 1;
            }
            n += 1;
        }
        Ok(out)
    }

    pub fn ensure_oracle_scale(&self) -> Result<()> {
        if self.order() > ORACLE_ORDER_BOUND {
            return Err(Error::SizeBound {
                order: self.order() as u128,
                bound: ORACLE_ORDER_BOUND,
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { i: 0, j: 0 }
    }

    pub fn a(&self) -> GroupElement {
        GroupElement {
            i: 1 % self.pn,
            j: 0,
        }
    }

    pub fn b(&self) -> GroupElement {
        GroupElement {
            i: 0,
            j: 1 % self.pm,
        }
    }

    /// The element `a^i b^j`, exponents reduced.
    pub fn element(&self, i: i64, j: i64) -> GroupElement {
        GroupElement {
            i: i.rem_euclid(self.pn as i64) as u64,
            j: j.rem_euclid(self.pm as i64) as u64,
        }
    }

    /// `(a^i b^j)(a^i' b^j') = a^(i + i' r^j) b^(j + j')`.
    pub fn multiply(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let twisted = h.i as u128 * self.r_pow(g.j) as u128 % self.pn as u128;
        GroupElement {
            i: ((g.i as u128 + twisted) % self.pn as u128) as u64,
            j: (g.j + h.j) % self.pm,
        }
    }

    pub fn inverse(&self, g: GroupElement) -> GroupElement {
        // (a^i b^j)^-1 = b^-j a^-i = a^(-i r^-j) b^-j
        let j_inv = (self.pm - g.j) % self.pm;
        let i = (self.pn - g.i) % self.pn;
        let i = (i as u128 * self.r_pow(j_inv) as u128 % self.pn as u128) as u64;
        GroupElement { i, j: j_inv }
    }

    pub fn power(&self, g: GroupElement, mut e: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g h g^-1`.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.multiply(self.multiply(g, h), self.inverse(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.pn).flat_map(move |i| (0..self.pm).map(move |j| GroupElement { i, j }))
    }

    fn index(&self, g: GroupElement) -> usize {
        (g.i * self.pm + g.j) as usize
    }

    /// Conjugacy classes by orbit closure under conjugation by `a` and `b`.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<GroupElement>>> {
        self.ensure_oracle_scale()?;
        let mut seen = vec![false; self.order() as usize];
        let gens = [self.a(), self.b()];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[self.index(g)] {
                continue;
            }
            seen[self.index(g)] = true;
            let mut class = vec![g];
            let mut cursor = 0;
            while cursor < class.len() {
                let x = class[cursor];
                cursor += 1;
                for &t in &gens {
                    let y = self.conjugate(t, x);
                    if !seen[self.index(y)] {
                        seen[self.index(y)] = true;
                        class.push(y);
                    }
                }
            }
            class.sort();
            classes.push(class);
        }
        Ok(classes)
    }

    /// Subgroup generated by all commutators `[g, h] = g h g^-1 h^-1`.
    pub fn commutator_subgroup(&self) -> Result<Vec<GroupElement>> {
        self.ensure_oracle_scale()?;
        let mut seen = vec![false; self.order() as usize];
        let mut gens = Vec::new();
        for g in self.elements() {
            for h in self.elements() {
                let c = self.multiply(
                    self.multiply(g, h),
                    self.multiply(self.inverse(g), self.inverse(h)),
                );
                if !seen[self.index(c)] {
                    seen[self.index(c)] = true;
                    gens.push(c);
                }
            }
        }
        // close under multiplication
        let mut members = gens.clone();
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor];
            cursor += 1;
            for &c in &gens {
                let y = self.multiply(x, c);
                if !seen[self.index(y)] {
                    seen[self.index(y)] = true;
                    members.push(y);
                }
            }
        }
        members.sort();
        Ok(members)
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.abelian {
            write!(f, "C_{}^{} x C_{}^{}", self.p, self.n, self.p, self.m)
        } else {
            write!(
                f,
                "<a, b | a^({p}^{n}) = b^({p}^{m}) = 1, bab^-1 = a^{r}>",
                p = self.p,
                n = self.n,
                m = self.m,
                r = self.r
            )
        }
    }
}

/// Normal form `a^i b^j` with `0 <= i < p^n`, `0 <= j < p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub i: u64,
    pub j: u64,
}
