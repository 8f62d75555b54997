//! Exact consistency checks on the character-theoretic side: orthogonality,
//! class-function property, explicit matrix relations, and agreement of the
//! parameter-level Galois action with the value-level one.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{multiplicative_order, PrimePower};
use crate::complex_reps::{
    character_value, enumerate_irreducibles, materialize_matrices, value_table,
    IrreducibleCharacter, RepMatrix,
};
use crate::cyclotomic::CyclotomicElement;
use crate::error::Result;
use crate::group::GroupParams;
use crate::rational::{character_field_level, galois_act};

/// Result of one check suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        // keep reports short
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

/// Which pairs of characters the orthogonality check visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    All,
    /// `count` pairs drawn with a fixed seed; half of them diagonal.
    Random {
        count: usize,
        seed: u64,
    },
}

/// `(1/|G|) sum_g psi(g) conj(chi(g))`, exactly.
pub fn inner_product(
    left: &[CyclotomicElement],
    right_conj: &[CyclotomicElement],
    order: u64,
) -> CyclotomicElement {
    let p = left[0].p();
    let sum = left
        .iter()
        .zip(right_conj)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(CyclotomicElement::zero(p), |acc, (a, b)| &acc + &(a * b));
    sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(order)))
}

/// First orthogonality relation over the selected pairs.
pub fn orthogonality(params: &GroupParams, selection: PairSelection) -> Result<CheckOutcome> {
    params.ensure_oracle_scale()?;
    let chars = enumerate_irreducibles(params)?;
    let pairs: Vec<(usize, usize)> = match selection {
        PairSelection::All => (0..chars.len())
            .flat_map(|i| (i..chars.len()).map(move |j| (i, j)))
            .collect(),
        PairSelection::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx: Vec<usize> = (0..chars.len()).collect();
            (0..count)
                .map(|c| {
                    let i = *idx.choose(&mut rng).expect("nonempty");
                    let j = if c % 2 == 0 {
                        i
                    } else {
                        *idx.choose(&mut rng).expect("nonempty")
                    };
                    (i, j)
                })
                .collect()
        }
    };
    let mut needed: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    needed.sort();
    needed.dedup();
    let mut tables: Vec<Option<(Vec<CyclotomicElement>, Vec<CyclotomicElement>)>> =
        vec![None; chars.len()];
    for &i in &needed {
        let values = value_table(&chars[i], params);
        let conj = values.iter().map(|v| v.conj()).collect();
        tables[i] = Some((values, conj));
    }
    let p = params.p();
    let mut outcome = CheckOutcome::new("orthogonality");
    for (i, j) in pairs {
        let left = &tables[i].as_ref().expect("table built").0;
        let right = &tables[j].as_ref().expect("table built").1;
        let ip = inner_product(left, right, params.order());
        let expected = CyclotomicElement::from_integer(p, i64::from(chars[i] == chars[j]));
        outcome.record(ip == expected, || {
            format!("<{:?}, {:?}> = {ip}", chars[i], chars[j])
        });
    }
    Ok(outcome)
}

/// Every character is constant on every brute-force conjugacy class.
pub fn class_functions(params: &GroupParams) -> Result<CheckOutcome> {
    let classes = params.conjugacy_classes()?;
    let chars = enumerate_irreducibles(params)?;
    let mut outcome = CheckOutcome::new("class functions");
    for ch in &chars {
        for class in &classes {
            let first = character_value(ch, class[0], params);
            let ok = class[1..]
                .iter()
                .all(|&g| character_value(ch, g, params) == first);
            outcome.record(ok, || {
                format!("{ch:?} not constant on class of {:?}", class[0])
            });
        }
    }
    Ok(outcome)
}

fn scalar_identity(p: u64, dim: usize) -> RepMatrix {
    RepMatrix::identity(p, dim)
}

/// Presentation relations and the trace identity for one character's
/// explicit matrices.
pub fn matrix_relations(params: &GroupParams, ch: &IrreducibleCharacter) -> CheckOutcome {
    let p = params.p();
    let (a, b) = materialize_matrices(ch, params);
    let id = scalar_identity(p, a.dim());
    let mut outcome = CheckOutcome::new("matrix relations");
    outcome.record(a.pow(params.order_a()) == id, || {
        format!("{ch:?}: A^(p^n) != I")
    });
    outcome.record(b.pow(params.order_b()) == id, || {
        format!("{ch:?}: B^(p^m) != I")
    });
    let b_inv = b.pow(params.order_b() - 1);
    outcome.record(b.mul(&a).mul(&b_inv) == a.pow(params.r()), || {
        format!("{ch:?}: B A B^-1 != A^r")
    });
    // traces of A^i B^j against the closed character formula
    let mut a_powers = Vec::with_capacity(params.order_a() as usize);
    let mut cur = id.clone();
    for _ in 0..params.order_a() {
        a_powers.push(cur.clone());
        cur = cur.mul(&a);
    }
    let mut b_power = id;
    for j in 0..params.order_b() {
        for (i, ai) in a_powers.iter().enumerate() {
            let g = params.element(i as i64, j as i64);
            let trace = ai.trace_of_product(&b_power);
            outcome.record(trace == character_value(ch, g, params), || {
                format!("{ch:?}: trace mismatch at a^{i} b^{j}")
            });
        }
        b_power = b_power.mul(&b);
    }
    outcome
}

/// One character of each degree (the first in enumeration order).
pub fn sample_per_degree(params: &GroupParams) -> Result<Vec<IrreducibleCharacter>> {
    let mut out: Vec<IrreducibleCharacter> = Vec::new();
    for ch in enumerate_irreducibles(params)? {
        if !out.iter().any(|c| c.degree == ch.degree) {
            out.push(ch);
        }
    }
    Ok(out)
}

/// A generator of `(Z/p^N)^*` (cyclic for odd `p`).
pub fn unit_group_generator(p: u64, level: u32) -> u64 {
    if level == 0 {
        return 1;
    }
    let modulus = PrimePower::new(p, level).expect("odd prime");
    (2..modulus.value())
        .filter(|g| g % p != 0)
        .find(|&g| multiplicative_order(g as i64, &modulus) == Ok(modulus.phi()))
        .expect("(Z/p^N)^* is cyclic for odd p")
}

/// For each alpha, applying `sigma_alpha` to every value of `psi` gives the
/// values of [`galois_act`]`(psi, alpha)`.
pub fn galois_action_agrees(params: &GroupParams, alphas: &[i64]) -> Result<CheckOutcome> {
    params.ensure_oracle_scale()?;
    let chars = enumerate_irreducibles(params)?;
    let mut outcome = CheckOutcome::new("galois action");
    for ch in &chars {
        let values = value_table(ch, params);
        for &alpha in alphas {
            let image = galois_act(ch, alpha, params)?;
            let image_values = value_table(&image, params);
            let ok = values
                .iter()
                .zip(&image_values)
                .all(|(v, w)| v.galois_apply(alpha).map(|x| x == *w).unwrap_or(false));
            outcome.record(ok, || {
                format!("{ch:?} under sigma_{alpha} is not {image:?}")
            });
        }
    }
    Ok(outcome)
}

/// The field level computed from parameters equals the smallest level
/// containing every value of the character.
pub fn field_levels_agree(params: &GroupParams) -> Result<CheckOutcome> {
    params.ensure_oracle_scale()?;
    let mut outcome = CheckOutcome::new("character fields");
    for ch in enumerate_irreducibles(params)? {
        let from_values = value_table(&ch, params)
            .iter()
            .map(|v| v.minimal_level())
            .max()
            .unwrap_or(0);
        let from_params = character_field_level(&ch, params);
        outcome.record(from_values == from_params, || {
            format!("{ch:?}: values generate level {from_values}, parameters give {from_params}")
        });
    }
    Ok(outcome)
}

/// Every suite, sized for the group: all orthogonality pairs up to order 243,
/// 100 random pairs above that.
pub fn deep_checks(params: &GroupParams) -> Result<Vec<CheckOutcome>> {
    params.ensure_oracle_scale()?;
    let mut out = Vec::new();
    if params.is_abelian() {
        return Ok(out);
    }
    let selection = if params.order() <= 243 {
        PairSelection::All
    } else {
        PairSelection::Random {
            count: 100,
            seed: params.order() ^ params.r(),
        }
    };
    out.push(orthogonality(params, selection)?);
    out.push(class_functions(params)?);
    let mut matrices = CheckOutcome::new("matrix relations");
    for ch in sample_per_degree(params)? {
        let o = matrix_relations(params, &ch);
        matrices.checked += o.checked;
        matrices.failures.extend(o.failures);
    }
    out.push(matrices);
    let gen = unit_group_generator(params.p(), params.ambient_level()) as i64;
    out.push(galois_action_agrees(params, &[gen, -1])?);
    out.push(field_levels_agree(params)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(unit_group_generator(3, 2), 2);
        assert_eq!(unit_group_generator(5, 2), 2);
        assert_eq!(unit_group_generator(7, 1), 3);
    }

    #[test]
    fn small_group_passes_everything() {
        let g = GroupParams::new(3, 2, 1, 4).unwrap();
        for outcome in deep_checks(&g).unwrap() {
            assert!(outcome.passed(), "{outcome:?}");
            assert!(outcome.checked > 0);
        }
    }

    #[test]
    fn wrong_character_breaks_trace_identity() {
        let g = GroupParams::new(3, 2, 1, 4).unwrap();
        let chars = enumerate_irreducibles(&g).unwrap();
        let ch = chars.iter().find(|c| !c.is_linear()).unwrap();
        let (a, b) = materialize_matrices(ch, &g);
        let other = chars
            .iter()
            .find(|c| !c.is_linear() && c.orbit != ch.orbit)
            .unwrap();
        let g_elem = g.element(3, 0);
        let trace = a.pow(3).trace_of_product(&RepMatrix::identity(3, b.dim()));
        assert_ne!(trace, character_value(other, g_elem, &g));
        assert_eq!(trace, character_value(ch, g_elem, &g));
    }
}
