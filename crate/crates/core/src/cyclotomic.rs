//! Exact arithmetic in prime-power cyclotomic fields `Q(zeta_{p^N})`.
//!
//! Elements are stored in the power basis `zeta^0, ..., zeta^(phi(p^N)-1)`
//! after reduction modulo `Phi_{p^N}(x) = sum_{j<p} x^(j p^(N-1))`. Only the
//! nonzero coordinates are kept, so sparse values (roots of unity, zero
//! matrix entries) stay cheap at high levels.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Q(zeta_{p^level})`.
#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    p: u64,
    level: u32,
    // sorted by exponent, nonzero coefficients, exponents < phi(p^level)
    terms: Vec<(u64, BigRational)>,
}

fn modulus(p: u64, level: u32) -> u64 {
    p.checked_pow(level)
        .expect("cyclotomic level overflows u64")
}

fn phi(p: u64, level: u32) -> u64 {
    if level == 0 {
        1
    } else {
        let q = modulus(p, level);
        q - q / p
    }
}

/// Brings exponents (already taken mod `p^level`) into the reduced range.
fn reduce<I>(p: u64, level: u32, raw: I) -> Vec<(u64, BigRational)>
where
    I: IntoIterator<Item = (u64, BigRational)>,
{
    let q = modulus(p, level);
    let bound = phi(p, level);
    let block = q / p;
    let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (e, c) in raw {
        let e = e % q;
        if e < bound {
            *out.entry(e).or_insert_with(BigRational::zero) += c;
        } else {
            // zeta^((p-1)p^(N-1) + d) = -sum_{j<p-1} zeta^(j p^(N-1) + d)
            let d = e - bound;
            for j in 0..p - 1 {
                *out.entry(j * block + d).or_insert_with(BigRational::zero) -= &c;
            }
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl CyclotomicElement {
    pub fn zero(p: u64) -> Self {
        CyclotomicElement {
            p,
            level: 0,
            terms: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: u64, value: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(p: u64, value: BigRational) -> Self {
        let terms = if value.is_zero() {
            Vec::new()
        } else {
            vec![(0, value)]
        };
        CyclotomicElement { p, level: 0, terms }
    }

    /// `zeta_{p^level}^e`, with `e` taken mod `p^level`.
    pub fn root_power(p: u64, level: u32, e: i64) -> Self {
        debug_assert!(p % 2 == 1, "prime-power cyclotomics need an odd prime");
        let q = modulus(p, level) as i64;
        let e = e.rem_euclid(q) as u64;
        CyclotomicElement {
            p,
            level,
            terms: reduce(p, level, [(e, BigRational::one())]),
        }
    }

    /// Like [`root_power`](Self::root_power) for an exponent that is already
    /// a nonnegative residue (or any `u64`, reduced here).
    pub fn root_power_u(p: u64, level: u32, e: u64) -> Self {
        let q = modulus(p, level);
        CyclotomicElement {
            p,
            level,
            terms: reduce(p, level, [(e % q, BigRational::one())]),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The ambient level `N`; see [`minimal_level`](Self::minimal_level) for
    /// the smallest field containing the element.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero power-basis coordinates as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> &[(u64, BigRational)] {
        &self.terms
    }

    /// Dense coordinate vector of length `phi(p^level)`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); phi(self.p, self.level) as usize];
        for (e, c) in &self.terms {
            v[*e as usize] = c.clone();
        }
        v
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Re-expresses the element in `Q(zeta_{p^level})` for `level >= self.level()`.
    pub fn lift(&self, level: u32) -> Self {
        assert!(level >= self.level, "cannot lift to a smaller level");
        let stretch = modulus(self.p, level - self.level);
        CyclotomicElement {
            p: self.p,
            level,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * stretch, c.clone()))
                .collect(),
        }
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level), other.lift(level));
        let mut out: BTreeMap<u64, BigRational> = a.terms.into_iter().collect();
        for (e, c) in b.terms {
            *out.entry(e).or_insert_with(BigRational::zero) += c;
        }
        Ok(CyclotomicElement {
            p: self.p,
            level,
            terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let level = self.level.max(other.level);
        if self.is_zero() || other.is_zero() {
            return Ok(CyclotomicElement {
                p: self.p,
                level,
                terms: Vec::new(),
            });
        }
        let (a, b) = (self.lift(level), other.lift(level));
        let q = modulus(self.p, level);
        let mut raw: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                *raw.entry((ea + eb) % q).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Ok(CyclotomicElement {
            p: self.p,
            level,
            terms: reduce(self.p, level, raw),
        })
    }

    fn neg_ref(&self) -> Self {
        CyclotomicElement {
            p: self.p,
            level: self.level,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return CyclotomicElement {
                p: self.p,
                level: self.level,
                terms: Vec::new(),
            };
        }
        CyclotomicElement {
            p: self.p,
            level: self.level,
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(factor)))
    }

    /// Image under `sigma_alpha: zeta_{p^N} -> zeta_{p^N}^alpha`, with `alpha`
    /// read mod `p^N`.
    pub fn galois_apply(&self, alpha: i64) -> Result<Self> {
        if alpha.rem_euclid(self.p as i64) == 0 {
            return Err(Error::NotCoprime {
                value: alpha,
                p: self.p,
            });
        }
        let q = modulus(self.p, self.level);
        let alpha = alpha.rem_euclid(q as i64) as u128;
        let raw = self
            .terms
            .iter()
            .map(|(e, c)| (((*e as u128 * alpha) % q as u128) as u64, c.clone()));
        Ok(CyclotomicElement {
            p: self.p,
            level: self.level,
            terms: reduce(self.p, self.level, raw),
        })
    }

    /// Complex conjugate, i.e. `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit mod p")
    }

    /// Least `L` with the element in `Q(zeta_{p^L})`.
    ///
    /// The power basis of `Q(zeta_{p^L})` is the subset of exponents divisible
    /// by `p^(N-L)`, so membership is a support check.
    pub fn minimal_level(&self) -> u32 {
        (0..=self.level)
            .find(|&l| {
                let step = modulus(self.p, self.level - l);
                self.terms.iter().all(|(e, _)| e % step == 0)
            })
            .unwrap_or(self.level)
    }
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let level = self.level.max(other.level);
        self.lift(level).terms == other.lift(level).terms
    }
}

impl Eq for CyclotomicElement {}

impl<'a> Add<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: Self) -> CyclotomicElement {
        self.checked_add(rhs).expect("prime mismatch in add")
    }
}

impl<'a> Sub<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: Self) -> CyclotomicElement {
        self.checked_sub(rhs).expect("prime mismatch in sub")
    }
}

impl<'a> Mul<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: Self) -> CyclotomicElement {
        self.checked_mul(rhs).expect("prime mismatch in mul")
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.neg_ref()
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.neg_ref()
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let q = modulus(self.p, self.level);
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z{q}")?,
                (_, true) => write!(f, "z{q}^{e}")?,
                (1, false) => write!(f, "{mag}*z{q}")?,
                (_, false) => write!(f, "{mag}*z{q}^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(p: u64, level: u32, e: i64) -> CyclotomicElement {
        CyclotomicElement::root_power(p, level, e)
    }

    /// Membership oracle: x lies in Q(zeta_{p^L}) iff every sigma_alpha with
    /// alpha = 1 mod p^L fixes it.
    fn oracle_level(x: &CyclotomicElement) -> u32 {
        let n = x.level();
        let p = x.p();
        let q = modulus(p, n) as i64;
        (0..=n)
            .find(|&l| {
                let step = modulus(p, l) as i64;
                (0..q / step.max(1))
                    .map(|t| 1 + t * step)
                    .filter(|a| a % p as i64 != 0)
                    .all(|a| x.galois_apply(a).unwrap() == *x)
            })
            .unwrap()
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(z(3, 1, 0), CyclotomicElement::one(3));
        let expected = &(-&CyclotomicElement::one(3)) - &z(3, 1, 1);
        assert_eq!(z(3, 1, 2), expected);
        assert_eq!(z(3, 2, 9), CyclotomicElement::one(3));
        assert_eq!(z(3, 2, -1), z(3, 2, 8));
    }

    #[test]
    fn add_mul_examples() {
        assert_eq!(
            &z(3, 1, 1) + &z(3, 1, 2),
            CyclotomicElement::from_integer(3, -1)
        );
        assert_eq!(&z(3, 2, 3) * &z(3, 2, 6), CyclotomicElement::one(3));
        // level coercion: zeta_3 = zeta_9^3
        assert_eq!(z(3, 1, 1), z(3, 2, 3));
        assert_eq!(&z(3, 1, 1) * &z(3, 2, 6), CyclotomicElement::one(3));
    }

    #[test]
    fn mismatched_primes_rejected() {
        assert_eq!(
            z(3, 1, 1).checked_add(&z(5, 1, 1)),
            Err(Error::PrimeMismatch { left: 3, right: 5 })
        );
        assert!(z(3, 1, 1).checked_mul(&z(5, 1, 1)).is_err());
        assert_ne!(CyclotomicElement::one(3), CyclotomicElement::one(5));
    }

    #[test]
    fn root_sum_example() {
        // sum_{i<3} zeta_27^{10^i}
        let mut acc = CyclotomicElement::zero(3);
        let mut e = 1i64;
        for _ in 0..3 {
            acc = &acc + &z(3, 3, e);
            e = e * 10 % 27;
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn galois_examples() {
        let x = &z(3, 2, 1) + &CyclotomicElement::from_integer(3, 5);
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert_eq!(z(3, 2, 1).galois_apply(4).unwrap(), z(3, 2, 4));
        assert!(z(3, 2, 1).galois_apply(6).is_err());
        assert_eq!(z(5, 2, 7).conj(), z(5, 2, -7));
    }

    #[test]
    fn minimal_level_examples() {
        assert_eq!(CyclotomicElement::from_integer(3, 7).minimal_level(), 0);
        assert_eq!(z(3, 2, 3).minimal_level(), 1);
        let x = &(&z(3, 3, 1) + &z(3, 3, 10)) + &z(3, 3, 19);
        assert_eq!(x.minimal_level(), oracle_level(&x));
        assert_eq!(x.minimal_level(), 0);
        // trace of zeta_27 down to Q(zeta_9): sum over alpha = 1 mod 9
        let tr = &(&z(3, 3, 1) + &z(3, 3, 1 + 9 * 5)) + &z(3, 3, 1 + 9 * 10);
        assert_eq!(tr.minimal_level(), oracle_level(&tr));
        let y = &z(3, 3, 6) + &z(3, 3, 9);
        assert_eq!(y.minimal_level(), 2);
        assert_eq!(oracle_level(&y), 2);
    }

    #[test]
    fn root_orders_are_exact() {
        for (p, n) in [(3u64, 3u32), (5, 2), (7, 2)] {
            let q = modulus(p, n) as i64;
            for e in -2 * q..2 * q {
                assert_eq!(z(p, n, e) == CyclotomicElement::one(p), e % q == 0);
            }
        }
    }

    #[test]
    fn root_sums_vanish() {
        for p in [3u64, 5] {
            for big_m in 1..=5u32 {
                let pm = modulus(p, big_m);
                for small_s in 1..big_m {
                    let ps = modulus(p, small_s);
                    let step = modulus(p, big_m - small_s);
                    for k in (1..ps).filter(|k| k % p != 0) {
                        let base = 1 + k * step;
                        let mut e = 1u64;
                        let mut acc = CyclotomicElement::zero(p);
                        for _ in 0..ps {
                            acc = &acc + &CyclotomicElement::root_power_u(p, big_m, e);
                            e = (e as u128 * base as u128 % pm as u128) as u64;
                        }
                        assert!(acc.is_zero(), "p={p} M={big_m} S={small_s} k={k}");
                    }
                }
            }
        }
    }

    fn element(p: u64, level: u32) -> impl Strategy<Value = CyclotomicElement> {
        let q = modulus(p, level) as i64;
        prop::collection::vec((0..q, -5i64..=5), 0..6).prop_map(move |terms| {
            terms
                .into_iter()
                .fold(CyclotomicElement::zero(p), |acc, (e, c)| {
                    &acc + &z(p, level, e).scale_int(c)
                })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in element(3, 3), b in element(3, 2), c in element(3, 3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn galois_composition(x in element(5, 2), alpha in 1i64..25, beta in 1i64..25) {
            prop_assume!(alpha % 5 != 0 && beta % 5 != 0);
            let lhs = x.galois_apply(alpha).unwrap().galois_apply(beta).unwrap();
            prop_assert_eq!(lhs, x.galois_apply(alpha * beta % 25).unwrap());
        }

        #[test]
        fn galois_is_a_ring_map(a in element(3, 3), b in element(3, 3), alpha in 1i64..27) {
            prop_assume!(alpha % 3 != 0);
            let lhs = (&a * &b).galois_apply(alpha).unwrap();
            let rhs = &a.galois_apply(alpha).unwrap() * &b.galois_apply(alpha).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn minimal_level_matches_fixed_field_oracle(x in element(3, 3)) {
            prop_assert_eq!(x.minimal_level(), oracle_level(&x));
        }
    }

    #[test]
    fn galois_permutes_primitive_roots() {
        let (p, n) = (5u64, 2u32);
        let q = modulus(p, n) as i64;
        for alpha in (1..q).filter(|a| a % p as i64 != 0) {
            let mut images: Vec<i64> = (0..q)
                .filter(|e| e % p as i64 != 0)
                .map(|e| {
                    let img = z(p, n, e).galois_apply(alpha).unwrap();
                    (0..q).find(|&f| z(p, n, f) == img).unwrap()
                })
                .collect();
            images.sort();
            let expected: Vec<i64> = (0..q).filter(|e| e % p as i64 != 0).collect();
            assert_eq!(images, expected);
            let r = CyclotomicElement::from_integer(p, 3);
            assert_eq!(r.galois_apply(alpha).unwrap(), r);
        }
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(z(3, 2, 2).to_string(), "z9^2");
        assert_eq!(CyclotomicElement::zero(3).to_string(), "0");
        assert_eq!(z(3, 1, 2).to_string(), "-1 - z3");
    }
}
