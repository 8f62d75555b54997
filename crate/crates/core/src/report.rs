//! Serializable reports and the compact text grammar.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{
    complex_counts_closed_form, rational_counts_closed_form, wedderburn_closed_form,
};
use crate::group::GroupParams;
use crate::rational::{oracle, ComponentDiff, SimpleComponent, WedderburnDecomposition};

/// Which computation produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "closed_form")]
    ClosedForm,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "both (verified)")]
    Verified,
}

/// Parameters, components and count tables for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub r: u64,
    pub s: u32,
    pub k: u64,
    pub order: u64,
    pub canonical_r: u64,
    pub components: Vec<SimpleComponent>,
    /// Complex irreducibles keyed by degree.
    pub complex_counts: BTreeMap<u64, u64>,
    /// Rational irreducibles keyed by degree `phi(p^lambda)`.
    pub rational_counts: BTreeMap<u64, u64>,
    pub provenance: Provenance,
}

impl DecompositionReport {
    fn assemble(
        params: &GroupParams,
        decomposition: &WedderburnDecomposition,
        complex_counts: BTreeMap<u64, u64>,
        rational_counts: BTreeMap<u64, u64>,
        provenance: Provenance,
    ) -> Self {
        DecompositionReport {
            p: params.p(),
            n: params.n(),
            m: params.m(),
            r: params.r(),
            s: params.s(),
            k: params.k(),
            order: params.order(),
            canonical_r: params.canonical_r(),
            components: decomposition.components().to_vec(),
            complex_counts,
            rational_counts,
            provenance,
        }
    }

    pub fn closed_form(params: &GroupParams) -> Result<Self> {
        let d = wedderburn_closed_form(params)?;
        Ok(Self::assemble(
            params,
            &d,
            complex_counts_closed_form(params),
            rational_counts_closed_form(params).by_degree(),
            Provenance::ClosedForm,
        ))
    }

    pub fn oracle(params: &GroupParams) -> Result<Self> {
        let o = oracle(params)?;
        Ok(Self::assemble(
            params,
            &o.decomposition,
            o.complex_counts,
            o.rational_counts.by_degree(),
            Provenance::Oracle,
        ))
    }

    /// The closed-form report, provided the oracle agrees on every table.
    pub fn verified(params: &GroupParams) -> Result<Self> {
        let outcome = Verification::run(params)?;
        if !outcome.agrees() {
            return Err(Error::Inconsistent(outcome.summary()));
        }
        let mut report = outcome.closed_form;
        report.provenance = Provenance::Verified;
        Ok(report)
    }

    pub fn decomposition(&self) -> WedderburnDecomposition {
        WedderburnDecomposition::new(self.p, self.components.iter().copied())
    }

    /// The decomposition in the compact text grammar.
    pub fn text(&self) -> String {
        self.decomposition().to_string()
    }
}

/// Closed form and oracle side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub closed_form: DecompositionReport,
    pub oracle: DecompositionReport,
}

impl Verification {
    pub fn run(params: &GroupParams) -> Result<Self> {
        params.ensure_oracle_scale()?;
        Ok(Verification {
            closed_form: DecompositionReport::closed_form(params)?,
            oracle: DecompositionReport::oracle(params)?,
        })
    }

    pub fn component_diff(&self) -> Vec<ComponentDiff> {
        self.closed_form
            .decomposition()
            .diff(&self.oracle.decomposition())
    }

    pub fn agrees(&self) -> bool {
        self.component_diff().is_empty()
            && self.closed_form.complex_counts == self.oracle.complex_counts
            && self.closed_form.rational_counts == self.oracle.rational_counts
    }

    /// Human-readable description of every disagreement.
    pub fn summary(&self) -> String {
        let mut lines = Vec::new();
        for d in self.component_diff() {
            lines.push(format!(
                "M{}(Q(z{})): closed form {} vs oracle {}",
                d.matrix_size,
                self.closed_form.p.pow(d.center_level),
                d.left,
                d.right
            ));
        }
        if self.closed_form.complex_counts != self.oracle.complex_counts {
            lines.push(format!(
                "complex counts: closed form {:?} vs oracle {:?}",
                self.closed_form.complex_counts, self.oracle.complex_counts
            ));
        }
        if self.closed_form.rational_counts != self.oracle.rational_counts {
            lines.push(format!(
                "rational counts: closed form {:?} vs oracle {:?}",
                self.closed_form.rational_counts, self.oracle.rational_counts
            ));
        }
        lines.join("\n")
    }
}

fn parse_field(text: &str, p: u64) -> Result<u32> {
    if text == "Q" {
        return Ok(0);
    }
    let q = text
        .strip_prefix("Q(z")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected Q or Q(z<p^k>), got {text:?}")))?;
    let mut q: u64 = q
        .parse()
        .map_err(|_| Error::Parse(format!("bad root order in {text:?}")))?;
    let mut level = 0;
    while q > 1 && q.is_multiple_of(p) {
        q /= p;
        level += 1;
    }
    if q != 1 || level == 0 {
        return Err(Error::Parse(format!(
            "{text:?} is not Q(z{p}^k) with k >= 1"
        )));
    }
    Ok(level)
}

fn parse_term(term: &str, p: u64) -> Result<SimpleComponent> {
    let (mult, body) = match term.split_once('*') {
        Some((m, b)) => (
            m.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?,
            b,
        ),
        None => (1, term),
    };
    if mult == 0 {
        return Err(Error::Parse(format!("zero multiplicity in {term:?}")));
    }
    let (size, field) = match body.strip_prefix('M') {
        Some(rest) => {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("missing field in {term:?}")))?;
            let size: u64 = rest[..open]
                .parse()
                .map_err(|_| Error::Parse(format!("bad matrix size in {term:?}")))?;
            let field = rest[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {term:?}")))?;
            if size < 2 {
                return Err(Error::Parse(format!("matrix size below 2 in {term:?}")));
            }
            (size, field)
        }
        None => (1, body),
    };
    Ok(SimpleComponent::new(size, parse_field(field, p)?, mult))
}

/// Reads the compact grammar back into a decomposition.
pub fn parse_decomposition(text: &str, p: u64) -> Result<WedderburnDecomposition> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty decomposition".into()));
    }
    let comps = text
        .split(" + ")
        .map(|t| parse_term(t.trim(), p))
        .collect::<Result<Vec<_>>>()?;
    Ok(WedderburnDecomposition::new(p, comps))
}
