//! Rational representation theory from the character side: Galois conjugacy
//! classes of `Irr(G)`, character fields, and the simple components they
//! determine.
//!
//! Every irreducible character of an odd-order p-group has Schur index 1
//! over `Q`, so a Galois class of `psi` contributes exactly one simple
//! component `M_{psi(1)}(Q(psi))`, and `Q(psi)` is always `Q(zeta_{p^L})`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::p_adic_valuation;
use crate::complex_reps::{enumerate_irreducibles, IrreducibleCharacter, OrbitDescriptor};
use crate::error::{Error, Result};
use crate::group::GroupParams;

/// One summand `multiplicity * M_{matrix_size}(Q(zeta_{p^center_level}))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleComponent {
    #[serde(rename = "q")]
    pub matrix_size: u64,
    #[serde(rename = "lambda")]
    pub center_level: u32,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
}

impl SimpleComponent {
    pub fn new(matrix_size: u64, center_level: u32, multiplicity: u64) -> Self {
        SimpleComponent {
            matrix_size,
            center_level,
            multiplicity,
        }
    }
}

/// A multiset of simple components, merged on `(matrix_size, center_level)`
/// and sorted ascending by that key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedderburnDecomposition {
    p: u64,
    components: Vec<SimpleComponent>,
}

/// A `(matrix_size, center_level)` key whose multiplicities differ between
/// two decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentDiff {
    pub matrix_size: u64,
    pub center_level: u32,
    pub left: u64,
    pub right: u64,
}

fn phi(p: u64, level: u32) -> u128 {
    if level == 0 {
        1
    } else {
        let q = (p as u128).pow(level);
        q - q / p as u128
    }
}

impl WedderburnDecomposition {
    pub fn new<I>(p: u64, components: I) -> Self
    where
        I: IntoIterator<Item = SimpleComponent>,
    {
        let mut merged: BTreeMap<(u64, u32), u64> = BTreeMap::new();
        for c in components {
            *merged.entry((c.matrix_size, c.center_level)).or_default() += c.multiplicity;
        }
        WedderburnDecomposition {
            p,
            components: merged
                .into_iter()
                .filter(|(_, mult)| *mult > 0)
                .map(|((q, l), mult)| SimpleComponent::new(q, l, mult))
                .collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.components
    }

    /// `sum mult * q^2 * phi(p^lambda)`, the Q-dimension.
    pub fn dimension(&self) -> u128 {
        self.components
            .iter()
            .map(|c| {
                c.multiplicity as u128
                    * (c.matrix_size as u128).pow(2)
                    * phi(self.p, c.center_level)
            })
            .sum()
    }

    /// Number of simple components counted with multiplicity.
    pub fn component_count(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    pub fn check_dimension(&self, order: u64) -> Result<()> {
        let dim = self.dimension();
        if dim != order as u128 {
            return Err(Error::Inconsistent(format!(
                "dimension identity fails: sum of component dimensions is {dim}, |G| = {order}"
            )));
        }
        Ok(())
    }

    /// Keys where the two multisets disagree; empty iff equal.
    pub fn diff(&self, other: &WedderburnDecomposition) -> Vec<ComponentDiff> {
        let mut keys: BTreeMap<(u64, u32), (u64, u64)> = BTreeMap::new();
        for c in &self.components {
            keys.entry((c.matrix_size, c.center_level)).or_default().0 = c.multiplicity;
        }
        for c in &other.components {
            keys.entry((c.matrix_size, c.center_level)).or_default().1 = c.multiplicity;
        }
        keys.into_iter()
            .filter(|(_, (l, r))| l != r)
            .map(|((q, lam), (left, right))| ComponentDiff {
                matrix_size: q,
                center_level: lam,
                left,
                right,
            })
            .collect()
    }
}

/// Compact text form, e.g. `Q + 4*Q(z3) + 12*Q(z9) + 3*M3(Q(z9)) + M9(Q(z9))`.
impl fmt::Display for WedderburnDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let field = if c.center_level == 0 {
                    "Q".to_string()
                } else {
                    format!("Q(z{})", self.p.pow(c.center_level))
                };
                let body = if c.matrix_size == 1 {
                    field
                } else {
                    format!("M{}({})", c.matrix_size, field)
                };
                if c.multiplicity == 1 {
                    body
                } else {
                    format!("{}*{}", c.multiplicity, body)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Counts of irreducible rational representations, keyed by `lambda` where
/// the representation has degree `phi(p^lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCounts {
    pub p: u64,
    pub by_lambda: BTreeMap<u32, u64>,
}

impl RationalCounts {
    pub fn new(p: u64) -> Self {
        RationalCounts {
            p,
            by_lambda: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, lambda: u32, count: u64) {
        if count > 0 {
            *self.by_lambda.entry(lambda).or_default() += count;
        }
    }

    /// The same table keyed by the actual degree `phi(p^lambda)`.
    pub fn by_degree(&self) -> BTreeMap<u64, u64> {
        self.by_lambda
            .iter()
            .map(|(l, c)| (phi(self.p, *l) as u64, *c))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.by_lambda.values().sum()
    }
}

/// Level of `x` in `Z/p^e`: the order of `zeta_{p^e}^x` is `p^level`.
fn root_level(x: u64, e: u32, p: u64) -> u32 {
    let q = p.pow(e);
    let x = x % q;
    if x == 0 {
        0
    } else {
        e - p_adic_valuation(x as i64, p).expect("nonzero")
    }
}

/// A character `chi_{i,j}: a -> zeta_{p^n}^i, b -> zeta_{p^m}^j` of
/// `C_{p^n} x C_{p^m}`.
pub type AbelianCharacter = (u64, u64);

/// Galois class of characters of an abelian group `C_{p^n} x C_{p^m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianClass {
    pub representative: AbelianCharacter,
    pub members: Vec<AbelianCharacter>,
    /// `Q(chi) = Q(zeta_{p^level})`.
    pub level: u32,
}

/// Galois classes of `Irr(C_{p^n} x C_{p^m})` under
/// `sigma_alpha: chi_{i,j} -> chi_{alpha i, alpha j}`.
pub fn abelian_galois_classes(p: u64, n: u32, m: u32) -> Vec<AbelianClass> {
    let (pn, pm) = (p.pow(n), p.pow(m));
    let big = p.pow(n.max(m));
    let units: Vec<u64> = (1..=big).filter(|a| a % p != 0 || big == 1).collect();
    let mut seen = vec![false; (pn * pm) as usize];
    let mut classes = Vec::new();
    for i in 0..pn {
        for j in 0..pm {
            if seen[(i * pm + j) as usize] {
                continue;
            }
            let mut members = Vec::new();
            for &a in &units {
                let img = (a * i % pn, a * j % pm);
                let idx = (img.0 * pm + img.1) as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    members.push(img);
                }
            }
            members.sort();
            classes.push(AbelianClass {
                representative: members[0],
                members,
                level: root_level(i, n, p).max(root_level(j, m, p)),
            });
        }
    }
    classes.sort_by_key(|c| c.representative);
    classes
}

/// Orbit of `Irr(G)` under `Gal(Q(psi)/Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisClass {
    /// Lexicographically least member.
    pub representative: IrreducibleCharacter,
    pub members: Vec<IrreducibleCharacter>,
    pub size: u64,
}

/// `L` with `Q(psi) = Q(zeta_{p^L})`.
pub fn character_field_level(ch: &IrreducibleCharacter, params: &GroupParams) -> u32 {
    let p = params.p();
    let ns = params.n() - params.s();
    match ch.orbit {
        OrbitDescriptor::Linear { lambda } => {
            root_level(lambda, ns, p).max(root_level(ch.u, params.m(), p))
        }
        OrbitDescriptor::Induced { t, .. } => ns.max(root_level(ch.u, params.m() - t, p)),
    }
}

fn canonical_orbit_label(l: u64, t: u32, params: &GroupParams) -> u64 {
    let modulus = params.pow_p(params.n() - params.s() + t) as u128;
    (0..params.pow_p(t))
        .map(|i| (l as u128 * params.r_pow(i) as u128 % modulus) as u64)
        .min()
        .expect("orbit is nonempty")
}

/// `psi^(sigma_alpha)` computed on parameters.
pub fn galois_act(
    ch: &IrreducibleCharacter,
    alpha: i64,
    params: &GroupParams,
) -> Result<IrreducibleCharacter> {
    let p = params.p();
    if alpha.rem_euclid(p as i64) == 0 {
        return Err(Error::NotCoprime { value: alpha, p });
    }
    let big = params.pow_p(params.ambient_level()) as i64;
    let alpha = alpha.rem_euclid(big) as u128;
    let scale = |x: u64, modulus: u64| (x as u128 * alpha % modulus as u128) as u64;
    let orbit = match ch.orbit {
        OrbitDescriptor::Linear { lambda } => OrbitDescriptor::Linear {
            lambda: scale(lambda, params.pow_p(params.n() - params.s())),
        },
        OrbitDescriptor::Induced { t, l } => {
            let modulus = params.pow_p(params.n() - params.s() + t);
            OrbitDescriptor::Induced {
                t,
                l: canonical_orbit_label(scale(l, modulus), t, params),
            }
        }
    };
    Ok(IrreducibleCharacter {
        orbit,
        u: scale(ch.u, params.pow_p(ch.omega_level(params))),
        degree: ch.degree,
    })
}

/// Partitions a complete list of irreducible characters into Galois classes.
///
/// Linear characters are classed as characters of
/// `G/G' = C_{p^(n-s)} x C_{p^m}`; the nonlinear ones by orbit closure of the
/// parameter action [`galois_act`].
pub fn galois_classes(
    chars: &[IrreducibleCharacter],
    params: &GroupParams,
) -> Result<Vec<GaloisClass>> {
    if params.is_abelian() {
        return Err(Error::AbelianPresentation {
            p: params.p(),
            n: params.n(),
        });
    }
    let got: u128 = chars.iter().map(|c| (c.degree as u128).pow(2)).sum();
    let present: HashSet<IrreducibleCharacter> = chars.iter().copied().collect();
    if got != params.order() as u128 || present.len() != chars.len() {
        return Err(Error::IncompleteCharacters {
            got,
            expected: params.order() as u128,
        });
    }
    let missing = || Error::IncompleteCharacters {
        got,
        expected: params.order() as u128,
    };

    let mut classes = Vec::new();
    let ns = params.n() - params.s();
    for ac in abelian_galois_classes(params.p(), ns, params.m()) {
        let members: Vec<IrreducibleCharacter> = ac
            .members
            .iter()
            .map(|&(lambda, u)| IrreducibleCharacter {
                orbit: OrbitDescriptor::Linear { lambda },
                u,
                degree: 1,
            })
            .collect();
        if members.iter().any(|m| !present.contains(m)) {
            return Err(missing());
        }
        classes.push(GaloisClass {
            representative: members[0],
            size: members.len() as u64,
            members,
        });
    }

    let p = params.p();
    let big = params.pow_p(params.ambient_level());
    let units: Vec<i64> = (1..big as i64).filter(|a| a % p as i64 != 0).collect();
    let mut seen: HashSet<IrreducibleCharacter> = HashSet::new();
    for ch in chars.iter().filter(|c| !c.is_linear()) {
        if seen.contains(ch) {
            continue;
        }
        let mut members = Vec::new();
        for &a in &units {
            let img = galois_act(ch, a, params)?;
            if !present.contains(&img) {
                return Err(missing());
            }
            if seen.insert(img) {
                members.push(img);
            }
        }
        members.sort();
        classes.push(GaloisClass {
            representative: members[0],
            size: members.len() as u64,
            members,
        });
    }
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

/// One component `M_{psi(1)}(Q(psi))` per class.
pub fn wedderburn_from_classes(
    classes: &[GaloisClass],
    params: &GroupParams,
) -> Result<WedderburnDecomposition> {
    let decomposition = WedderburnDecomposition::new(
        params.p(),
        classes.iter().map(|c| {
            SimpleComponent::new(
                c.representative.degree,
                character_field_level(&c.representative, params),
                1,
            )
        }),
    );
    decomposition.check_dimension(params.order())?;
    Ok(decomposition)
}

/// `lambda` with `phi(p^lambda) = degree`.
fn degree_index(p: u64, degree: u128) -> Option<u32> {
    (0..64).find(|&l| phi(p, l) == degree)
}

/// Degree table of the rational irreducibles, `deg = psi(1) * [Q(psi):Q]`.
pub fn rational_counts_from_classes(
    classes: &[GaloisClass],
    params: &GroupParams,
) -> Result<RationalCounts> {
    let p = params.p();
    let mut counts = RationalCounts::new(p);
    for c in classes {
        let level = character_field_level(&c.representative, params);
        let degree = c.representative.degree as u128 * phi(p, level);
        let lambda = degree_index(p, degree).ok_or_else(|| {
            Error::Inconsistent(format!(
                "rational degree {degree} is not phi of a power of {p}"
            ))
        })?;
        counts.add(lambda, 1);
    }
    Ok(counts)
}

/// Complex degree table from the enumerated irreducibles.
pub fn complex_counts_from_characters(chars: &[IrreducibleCharacter]) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for c in chars {
        *out.entry(c.degree).or_default() += 1;
    }
    out
}

/// Everything the character-theoretic route produces for one group.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub decomposition: WedderburnDecomposition,
    pub complex_counts: BTreeMap<u64, u64>,
    pub rational_counts: RationalCounts,
}

/// Decomposition of `QG` from Galois classes of the little-group characters
/// (or of `Irr(C_{p^n} x C_{p^m})` for abelian parameters).
pub fn oracle(params: &GroupParams) -> Result<OracleResult> {
    params.ensure_oracle_scale()?;
    let p = params.p();
    if params.is_abelian() {
        let classes = abelian_galois_classes(p, params.n(), params.m());
        let mut rational_counts = RationalCounts::new(p);
        for c in &classes {
            rational_counts.add(c.level, 1);
        }
        let decomposition = WedderburnDecomposition::new(
            p,
            classes.iter().map(|c| SimpleComponent::new(1, c.level, 1)),
        );
        decomposition.check_dimension(params.order())?;
        return Ok(OracleResult {
            decomposition,
            complex_counts: BTreeMap::from([(1, params.order())]),
            rational_counts,
        });
    }
    let chars = enumerate_irreducibles(params)?;
    let classes = galois_classes(&chars, params)?;
    Ok(OracleResult {
        decomposition: wedderburn_from_classes(&classes, params)?,
        complex_counts: complex_counts_from_characters(&chars),
        rational_counts: rational_counts_from_classes(&classes, params)?,
    })
}

/// Shorthand for `oracle(params)?.decomposition`.
pub fn oracle_decomposition(params: &GroupParams) -> Result<WedderburnDecomposition> {
    Ok(oracle(params)?.decomposition)
}

/// `[Q(zeta_{p^level}) : Q]`.
pub fn field_degree(p: u64, level: u32) -> u64 {
    phi(p, level) as u64
}
