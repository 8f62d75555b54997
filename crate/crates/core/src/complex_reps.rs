//! Irreducible complex characters of `C_{p^n} x| C_{p^m}` by the little-group
//! method, with `N = <a>` and `H = <b>`.
//!
//! `b` acts on `Irr(<a>) = {chi_x : a -> zeta^x}` by `chi_x -> chi_{r x}`.
//! Fixed points are `chi_{lambda p^s}`; every other orbit is
//! `{chi_{r^i l p^(s-t)}}` of size `p^t` with inertia group `<a, b^(p^t)>`.

use serde::{Deserialize, Serialize};

use crate::arith::p_adic_valuation;
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams};

/// An orbit of `<b>` on `Irr(<a>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitDescriptor {
    /// The fixed character `chi_{lambda p^s}`, `0 <= lambda < p^(n-s)`.
    Linear { lambda: u64 },
    /// The orbit of `chi_{l p^(s-t)}`; `l` is the least member of its orbit
    /// under multiplication by `r` mod `p^(n-s+t)`.
    Induced { t: u32, l: u64 },
}

impl OrbitDescriptor {
    pub fn size(&self, params: &GroupParams) -> u64 {
        match *self {
            OrbitDescriptor::Linear { .. } => 1,
            OrbitDescriptor::Induced { t, .. } => params.pow_p(t),
        }
    }

    /// Index `x` of the representative `chi_x`.
    pub fn representative(&self, params: &GroupParams) -> u64 {
        match *self {
            OrbitDescriptor::Linear { lambda } => lambda * params.pow_p(params.s()),
            OrbitDescriptor::Induced { t, l } => l * params.pow_p(params.s() - t),
        }
    }

    /// Indices `x` of every `chi_x` in the orbit, in the order
    /// `x, r x, r^2 x, ...`.
    pub fn members(&self, params: &GroupParams) -> Vec<u64> {
        let x = self.representative(params) as u128;
        let pn = params.order_a() as u128;
        (0..self.size(params))
            .map(|i| (x * params.r_pow(i) as u128 % pn) as u64)
            .collect()
    }
}

/// Enumerates the orbits of `<b>` on `Irr(<a>)` by walking every index.
pub fn orbit_decomposition(params: &GroupParams) -> Result<Vec<OrbitDescriptor>> {
    if params.is_abelian() {
        return Err(Error::AbelianPresentation {
            p: params.p(),
            n: params.n(),
        });
    }
    let pn = params.order_a();
    let p = params.p();
    let s = params.s();
    let mut seen = vec![false; pn as usize];
    let mut orbits = Vec::new();
    for x in 0..pn {
        if seen[x as usize] {
            continue;
        }
        let mut orbit = vec![x];
        seen[x as usize] = true;
        let mut y = (x as u128 * params.r() as u128 % pn as u128) as u64;
        while y != x {
            seen[y as usize] = true;
            orbit.push(y);
            y = (y as u128 * params.r() as u128 % pn as u128) as u64;
        }
        if orbit.len() == 1 {
            let step = params.pow_p(s);
            if x % step != 0 {
                return Err(Error::Inconsistent(format!(
                    "fixed character chi_{x} is not a multiple of p^s"
                )));
            }
            orbits.push(OrbitDescriptor::Linear { lambda: x / step });
        } else {
            let v = p_adic_valuation(x as i64, p)?;
            let t = s - v;
            if params.pow_p(t) != orbit.len() as u64 {
                return Err(Error::Inconsistent(format!(
                    "orbit of chi_{x} has size {}, expected p^{t}",
                    orbit.len()
                )));
            }
            let scale = params.pow_p(v);
            let l = orbit.iter().map(|y| y / scale).min().unwrap_or(0);
            orbits.push(OrbitDescriptor::Induced { t, l });
        }
    }
    orbits.sort();
    Ok(orbits)
}

/// A complex irreducible character `theta_{chi, omega}`.
///
/// For a linear orbit `omega = zeta_{p^m}^u`; for an induced orbit of size
/// `p^t`, `omega = zeta_{p^(m-t)}^u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrreducibleCharacter {
    pub orbit: OrbitDescriptor,
    pub u: u64,
    pub degree: u64,
}

impl IrreducibleCharacter {
    pub fn is_linear(&self) -> bool {
        matches!(self.orbit, OrbitDescriptor::Linear { .. })
    }

    /// `t` with `degree = p^t`.
    pub fn t(&self) -> u32 {
        match self.orbit {
            OrbitDescriptor::Linear { .. } => 0,
            OrbitDescriptor::Induced { t, .. } => t,
        }
    }

    /// Level of the cyclic group `omega` ranges over (`p^(m-t)`-th roots).
    pub fn omega_level(&self, params: &GroupParams) -> u32 {
        params.m() - self.t()
    }
}

/// All of `Irr(G)`, orbit by orbit. Oracle scale only.
pub fn enumerate_irreducibles(params: &GroupParams) -> Result<Vec<IrreducibleCharacter>> {
    params.ensure_oracle_scale()?;
    let mut out = Vec::new();
    for orbit in orbit_decomposition(params)? {
        let degree = orbit.size(params);
        let t = match orbit {
            OrbitDescriptor::Linear { .. } => 0,
            OrbitDescriptor::Induced { t, .. } => t,
        };
        let count = params.pow_p(params.m() - t);
        out.extend((0..count).map(|u| IrreducibleCharacter { orbit, u, degree }));
    }
    Ok(out)
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

/// `psi(a^i b^j)`, expressed at the ambient level `max(n, m)`.
pub fn character_value(
    ch: &IrreducibleCharacter,
    g: GroupElement,
    params: &GroupParams,
) -> CyclotomicElement {
    let p = params.p();
    let level = params.ambient_level();
    let q = params.pow_p(level);
    let a_scale = params.pow_p(level - params.n());
    match ch.orbit {
        OrbitDescriptor::Linear { lambda } => {
            let x = lambda * params.pow_p(params.s());
            let e_a = mulmod(mulmod(x, g.i, q), a_scale, q);
            let e_b = mulmod(mulmod(ch.u, g.j, q), params.pow_p(level - params.m()), q);
            CyclotomicElement::root_power_u(p, level, (e_a + e_b) % q)
        }
        OrbitDescriptor::Induced { t, l } => {
            let pt = params.pow_p(t);
            if !g.i.is_multiple_of(pt) || !g.j.is_multiple_of(pt) {
                return CyclotomicElement::zero(p);
            }
            let x = l * params.pow_p(params.s() - t);
            let e_a = mulmod(mulmod(g.i, x, q), a_scale, q);
            let omega_scale = params.pow_p(level - (params.m() - t));
            let e_b = mulmod(mulmod(ch.u, g.j / pt, q), omega_scale, q);
            CyclotomicElement::root_power_u(p, level, (e_a + e_b) % q).scale_int(pt as i64)
        }
    }
}

/// Values of `ch` on every element, in [`GroupParams::elements`] order.
pub fn value_table(ch: &IrreducibleCharacter, params: &GroupParams) -> Vec<CyclotomicElement> {
    params
        .elements()
        .map(|g| character_value(ch, g, params))
        .collect()
}

/// Square matrix over a cyclotomic field; entries row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix {
    dim: usize,
    entries: Vec<CyclotomicElement>,
}

impl RepMatrix {
    pub fn zeros(p: u64, dim: usize) -> Self {
        RepMatrix {
            dim,
            entries: vec![CyclotomicElement::zero(p); dim * dim],
        }
    }

    pub fn identity(p: u64, dim: usize) -> Self {
        let mut m = Self::zeros(p, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = CyclotomicElement::one(p);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &CyclotomicElement {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: CyclotomicElement) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn mul(&self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let p = self.entries[0].p();
        let mut out = Self::zeros(p, d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * d + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> RepMatrix {
        let p = self.entries[0].p();
        let mut acc = Self::identity(p, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> CyclotomicElement {
        let p = self.entries[0].p();
        (0..self.dim).fold(CyclotomicElement::zero(p), |acc, i| &acc + self.get(i, i))
    }

    /// `trace(self * rhs)` without forming the product.
    pub fn trace_of_product(&self, rhs: &RepMatrix) -> CyclotomicElement {
        let d = self.dim;
        let p = self.entries[0].p();
        let mut acc = CyclotomicElement::zero(p);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                let b = rhs.get(k, i);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }
}

/// Images of `a` and `b` under the representation affording `ch`: a diagonal
/// matrix of `zeta^(r^c l p^(s-t))` and the cyclic shift with `omega` in the
/// bottom-left corner.
pub fn materialize_matrices(
    ch: &IrreducibleCharacter,
    params: &GroupParams,
) -> (RepMatrix, RepMatrix) {
    let p = params.p();
    let level = params.ambient_level();
    let q = params.pow_p(level);
    let a_scale = params.pow_p(level - params.n());
    let members = ch.orbit.members(params);
    let d = members.len();
    let mut a = RepMatrix::zeros(p, d);
    for (c, x) in members.iter().enumerate() {
        a.set(
            c,
            c,
            CyclotomicElement::root_power_u(p, level, mulmod(*x, a_scale, q)),
        );
    }
    let omega_scale = params.pow_p(level - ch.omega_level(params));
    let omega = CyclotomicElement::root_power_u(p, level, mulmod(ch.u, omega_scale, q));
    let mut b = RepMatrix::zeros(p, d);
    for c in 0..d - 1 {
        b.set(c, c + 1, CyclotomicElement::one(p));
    }
    b.set(d - 1, 0, omega);
    (a, b)
}
