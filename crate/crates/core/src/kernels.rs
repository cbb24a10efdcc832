//! Certification of diagonal kernels `K(z, w) = Σ c(α) z^α conj(w)^α`.
//!
//! The kernel is complete Nevanlinna-Pick exactly when the renewal solution
//! `q` of `c` is non-negative. Either positivity condition certifies this; a
//! negative `q(γ)` refutes it. Everything is scoped to the truncation degree.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kaluza::{b_from_c, check_theorem1, check_theorem2, CheckReport};
use crate::monoid::{MultiIndex, MultiIndexMonoid};
use crate::rational::{self, factorial, Rational};
use crate::series::{solve_renewal, CoeffTable, MultiTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CnpCertifiedThm1,
    CnpCertifiedThm2,
    CnpCertifiedBoth,
    /// `q >= 0` up to the truncation degree, but neither condition holds.
    CnpWitnessed,
    NotCnp,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        matches!(
            self,
            Verdict::CnpCertifiedThm1 | Verdict::CnpCertifiedThm2 | Verdict::CnpCertifiedBoth
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedValue {
    pub idx: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub val: Rational,
}

impl IndexedValue {
    fn new(idx: &MultiIndex, val: Rational) -> Self {
        IndexedValue {
            idx: idx.components().to_vec(),
            val,
        }
    }
}

/// Invariant: `verdict == NotCnp` iff `witness.is_some()` iff `negatives` is
/// non-empty; `witness` is the first entry of `negatives` in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub verdict: Verdict,
    pub checked_degree: usize,
    pub thm1: CheckReport,
    pub thm2: CheckReport,
    pub q_min: IndexedValue,
    pub witness: Option<IndexedValue>,
    pub negatives: Vec<IndexedValue>,
    pub dbr_b: Option<MultiTable>,
}

/// `c(α) = 1 / ‖z^α‖²` from squared norms given for every `|α| <= N`.
pub fn coeffs_from_norms(
    norms: &BTreeMap<MultiIndex, Rational>,
    max_degree: usize,
) -> Result<MultiTable> {
    let dim = norms
        .keys()
        .next()
        .map(MultiIndex::dim)
        .ok_or_else(|| Error::MissingIndex("(empty norm map)".into()))?;
    if let Some(k) = norms.keys().find(|k| k.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: k.dim(),
        });
    }
    let table = CoeffTable::try_from_fn(MultiIndexMonoid::new(dim), max_degree, |a| {
        norms
            .get(a)
            .cloned()
            .ok_or_else(|| Error::MissingIndex(a.to_string()))
    })?;
    coeffs_from_norm_table(&table)
}

pub fn coeffs_from_norm_table(norms: &MultiTable) -> Result<MultiTable> {
    norms.require_positive()?;
    if !norms.identity_value().is_one() {
        return Err(Error::NotUnital(rational::format(norms.identity_value())));
    }
    Ok(norms.map(|_, v| v.recip()))
}

/// Squared norms `(m+1)!(n+1)!/(m+n)!` of the monomials in the two-variable
/// Besov-type space; their reciprocals are the Lebesgue² coefficients.
pub fn besov_norm_table(max_degree: usize) -> Result<MultiTable> {
    CoeffTable::from_fn(MultiIndexMonoid::new(2), max_degree, |a| {
        let (m, n) = (a.components()[0] as u64, a.components()[1] as u64);
        Rational::new(factorial(m + 1) * factorial(n + 1), factorial(m + n))
    })
}

/// Runs both checks and the renewal solve. Non-positive tables are accepted;
/// their check reports list the offending entries and never pass.
pub fn certify(c: &MultiTable) -> Result<CertReport> {
    c.require_unital()?;
    let positive = c.require_positive().is_ok();
    let ((thm1, thm2), q) = rayon::join(
        || {
            if positive {
                rayon::join(|| check_theorem1(c), || check_theorem2(c))
            } else {
                (Ok(CheckReport::inapplicable(c)), Ok(CheckReport::inapplicable(c)))
            }
        },
        || solve_renewal(c),
    );
    let (thm1, thm2, q) = (thm1?, thm2?, q?);

    let negatives: Vec<IndexedValue> = q
        .iter()
        .filter(|(_, v)| v.is_negative())
        .map(|(k, v)| IndexedValue::new(k, v.clone()))
        .collect();
    let (min_at, min_val) = q.min_entry();
    let q_min = IndexedValue::new(&min_at, min_val);
    let witness = negatives.first().cloned();

    let verdict = match (witness.is_some(), thm1.passed, thm2.passed) {
        (true, _, _) => Verdict::NotCnp,
        (false, true, true) => Verdict::CnpCertifiedBoth,
        (false, true, false) => Verdict::CnpCertifiedThm1,
        (false, false, true) => Verdict::CnpCertifiedThm2,
        (false, false, false) => Verdict::CnpWitnessed,
    };
    let dbr_b = if thm1.passed { Some(b_from_c(c)?) } else { None };

    Ok(CertReport {
        verdict,
        checked_degree: c.max_degree(),
        thm1,
        thm2,
        q_min,
        witness,
        negatives,
        dbr_b,
    })
}
