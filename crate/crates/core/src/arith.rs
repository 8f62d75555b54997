//! Number-theoretic primitives: prime powers, multiplicative orders modulo
//! `p^n`, p-adic valuations, and the canonical splitting `r = 1 + k p^(n-s)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest group order accepted by the closed-form paths.
pub const FORMULA_ORDER_BOUND: u64 = 10_000_000;

/// Largest group order accepted by the brute-force and character-theoretic
/// oracle paths.
pub const ORACLE_ORDER_BOUND: u64 = 10_000;

/// Trial division. Inputs are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp`, failing instead of wrapping.
pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::InvalidExponent(format!("{base}^{exp} overflows u64")))
}

/// `p^exp` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    exp: u32,
    value: u64,
}

impl PrimePower {
    pub fn new(p: u64, exp: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let value = checked_pow(p, exp)?;
        Ok(PrimePower { p, exp, value })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn phi(&self) -> u64 {
        euler_phi_prime_power(self)
    }
}

/// Modular exponentiation with 128-bit intermediates.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Least `e >= 1` with `r^e = 1 (mod q)`, searched over the divisors of
/// `phi(q)` in increasing order.
pub fn multiplicative_order(r: i64, modulus: &PrimePower) -> Result<u64> {
    let q = modulus.value();
    if q < 2 {
        return Err(Error::TrivialModulus);
    }
    if r.rem_euclid(modulus.p() as i64) == 0 {
        return Err(Error::NotCoprime {
            value: r,
            p: modulus.p(),
        });
    }
    let r = r.rem_euclid(q as i64) as u64;
    divisors(modulus.phi())
        .into_iter()
        .find(|&d| pow_mod(r, d, q) == 1)
        .ok_or_else(|| Error::Inconsistent(format!("no order found for {r} mod {q}")))
}

/// Exponent of `p` in the nonzero integer `x`.
pub fn p_adic_valuation(x: i64, p: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::ZeroValuation);
    }
    let mut x = x.unsigned_abs();
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Ok(v)
}

/// [`p_adic_valuation`] for arbitrary-precision integers.
pub fn p_adic_valuation_big(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, rem) = x.div_rem(&p);
        if !rem.is_zero() {
            return Ok(v);
        }
        x = q;
        v += 1;
    }
}

pub fn euler_phi_prime_power(q: &PrimePower) -> u64 {
    if q.exp() == 0 {
        1
    } else {
        q.value() - q.value() / q.p()
    }
}

/// Splits `r` (taken mod `p^n`) as `1 + k p^(n-s)` with `1 <= k < p^s` and
/// `p` not dividing `k`. Returns `(k, s)`.
///
/// The order of such an `r` modulo `p^n` is exactly `p^s`; that is checked
/// against [`multiplicative_order`] before returning.
pub fn split_r(r: i64, p: u64, n: u32) -> Result<(u64, u32)> {
    let modulus = PrimePower::new(p, n)?;
    let q = modulus.value() as i64;
    let r = r.rem_euclid(q);
    if r % p as i64 == 0 {
        return Err(Error::NotCoprime { value: r, p });
    }
    if r % p as i64 != 1 {
        return Err(Error::NotPPowerOrder { r: r as u64, p, n });
    }
    if r == 1 {
        return Err(Error::AbelianPresentation { p, n });
    }
    let v = p_adic_valuation(r - 1, p)?;
    let s = n - v;
    let k = (r as u64 - 1) / checked_pow(p, v)?;
    let order = multiplicative_order(r, &modulus)?;
    if order != checked_pow(p, s)? {
        return Err(Error::Inconsistent(format!(
            "order of {r} mod {p}^{n} is {order}, expected {p}^{s}"
        )));
    }
    Ok((k, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(r: u64, q: u64) -> u64 {
        let mut x = r % q;
        let mut e = 1;
        while x != 1 {
            x = x * r % q;
            e += 1;
        }
        e
    }

    #[test]
    fn order_examples() {
        let q = PrimePower::new(3, 4).unwrap();
        assert_eq!(multiplicative_order(10, &q).unwrap(), 9);
        assert_eq!(multiplicative_order(1, &q).unwrap(), 1);
        assert_eq!(
            multiplicative_order(4, &PrimePower::new(3, 3).unwrap()).unwrap(),
            9
        );
        // order of 2 mod 9 is 6
        assert_eq!(
            multiplicative_order(2, &PrimePower::new(3, 2).unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn order_rejects_multiples_of_p() {
        let q = PrimePower::new(5, 2).unwrap();
        assert!(matches!(
            multiplicative_order(10, &q),
            Err(Error::NotCoprime { .. })
        ));
        assert_eq!(
            multiplicative_order(2, &PrimePower::new(5, 0).unwrap()),
            Err(Error::TrivialModulus)
        );
    }

    #[test]
    fn order_matches_brute_force() {
        for (p, n) in [(3u64, 5u32), (5, 3), (7, 3)] {
            let q = PrimePower::new(p, n).unwrap();
            for r in 1..q.value() {
                if r % p == 0 {
                    continue;
                }
                assert_eq!(
                    multiplicative_order(r as i64, &q).unwrap(),
                    brute_order(r, q.value())
                );
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(9, 3).unwrap(), 2);
        assert_eq!(p_adic_valuation(10, 3).unwrap(), 0);
        assert_eq!(p_adic_valuation(63, 3).unwrap(), 2);
        assert_eq!(p_adic_valuation(-27, 3).unwrap(), 3);
        assert_eq!(p_adic_valuation(0, 3), Err(Error::ZeroValuation));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi_prime_power(&PrimePower::new(3, 0).unwrap()), 1);
        assert_eq!(euler_phi_prime_power(&PrimePower::new(3, 2).unwrap()), 6);
        assert_eq!(euler_phi_prime_power(&PrimePower::new(5, 3).unwrap()), 100);
    }

    #[test]
    fn prime_power_validation() {
        assert_eq!(PrimePower::new(2, 3), Err(Error::EvenPrime));
        assert_eq!(PrimePower::new(9, 1), Err(Error::NotPrime(9)));
        assert!(PrimePower::new(3, 60).is_err());
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_r(10, 3, 4).unwrap(), (1, 2));
        assert_eq!(split_r(4, 3, 2).unwrap(), (1, 1));
        // order of 51 mod 125 is 5 by brute force
        assert_eq!(brute_order(51, 125), 5);
        assert_eq!(split_r(51, 5, 3).unwrap(), (2, 1));
        // normalised mod p^n first
        assert_eq!(split_r(10 + 81, 3, 4).unwrap(), (1, 2));
    }

    #[test]
    fn split_errors() {
        assert!(matches!(
            split_r(2, 3, 2),
            Err(Error::NotPPowerOrder { .. })
        ));
        assert!(matches!(
            split_r(28, 3, 3),
            Err(Error::AbelianPresentation { .. })
        ));
        assert!(matches!(split_r(3, 3, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn split_round_trip_and_order() {
        // exhaustive over p in {3,5,7}, n <= 6 where p^n stays small
        for p in [3u64, 5, 7] {
            for n in 2..=6u32 {
                let q = checked_pow(p, n).unwrap();
                if q > 200_000 {
                    continue;
                }
                let modulus = PrimePower::new(p, n).unwrap();
                for s in 1..n {
                    let step = checked_pow(p, n - s).unwrap();
                    for k in 1..checked_pow(p, s).unwrap() {
                        if k % p == 0 {
                            continue;
                        }
                        let r = (1 + k * step) % q;
                        assert_eq!(
                            multiplicative_order(r as i64, &modulus).unwrap(),
                            checked_pow(p, s).unwrap()
                        );
                        let (k2, s2) = split_r(r as i64, p, n).unwrap();
                        assert_eq!((k2, s2), (k, s));
                        assert_eq!((1 + k2 * checked_pow(p, n - s2).unwrap()) % q, r);
                    }
                }
            }
        }
    }

    #[test]
    fn valuation_of_power_differences() {
        for p in [3u64, 5] {
            for a in 2u64..50 {
                if a % p == 0 {
                    continue;
                }
                let f = brute_order(a, p);
                for m in (f..=100).step_by(f as usize) {
                    let lhs = BigInt::from(a).pow(m as u32) - 1;
                    let base = BigInt::from(a).pow(f as u32) - 1;
                    assert_eq!(
                        p_adic_valuation_big(&lhs, p).unwrap(),
                        p_adic_valuation_big(&base, p).unwrap()
                            + p_adic_valuation(m as i64, p).unwrap(),
                        "p={p} a={a} m={m}"
                    );
                }
            }
        }
    }
}
