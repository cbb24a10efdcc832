//! Decidable sufficient conditions for non-negativity of the renewal solution,
//! and the constructions linking coefficient, ratio and `b` tables.
//!
//! All comparisons are exact and non-strict: equality passes. Every verdict is
//! scoped to the truncation degree of the input table.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{GradedMonoid, MultiIndex, MultiIndexMonoid, Word, WordMonoid};
use crate::rational::{self, Rational};
use crate::series::{CoeffTable, MultiTable, WordTable};

/// Identifies the inequality a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `r(α) <= 1`.
    #[serde(rename = "thm1.bound")]
    RatioBound,
    /// `r(α) <= r(α + e_k)`.
    #[serde(rename = "thm1.edge")]
    RatioEdge,
    /// `c(α) <= |α|!/α!`.
    #[serde(rename = "thm2.bound")]
    MultinomialBound,
    #[serde(rename = "thm2.ratio.offdiag")]
    CrossRatioOffDiag,
    #[serde(rename = "thm2.ratio.diag")]
    CrossRatioDiag,
    /// `f(av)/f(v) <= f(avb)/f(vb)` on words.
    #[serde(rename = "word.ratio")]
    WordRatio,
    #[serde(rename = "kaluza.bound")]
    SequenceBound,
    #[serde(rename = "kaluza.monotone")]
    SequenceMonotone,
    /// A coefficient that the conditions require to be positive is not.
    #[serde(rename = "hyp.positive")]
    Positivity,
}

/// One failing inequality `lhs <= rhs`, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub cond: Condition,
    pub at: Vec<Vec<u32>>,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checked_degree: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from_violations(checked_degree: usize, violations: Vec<Violation>) -> Self {
        CheckReport {
            passed: violations.is_empty(),
            checked_degree,
            violations,
        }
    }

    /// Report for a table whose entries are not all positive, so that the
    /// conditions do not apply.
    pub fn inapplicable<M: GradedMonoid>(c: &CoeffTable<M>) -> Self {
        let violations = c
            .iter()
            .filter(|(_, v)| !v.is_positive())
            .map(|(k, v)| Violation {
                cond: Condition::Positivity,
                at: vec![c.monoid().to_raw(k)],
                lhs: v.clone(),
                rhs: Rational::zero(),
            })
            .collect();
        Self::from_violations(c.max_degree(), violations)
    }

    pub fn find(&self, cond: Condition, at: &[Vec<u32>]) -> Option<&Violation> {
        self.violations
            .iter()
            .find(|v| v.cond == cond && v.at == at)
    }
}

/// `r(0) = 0` and `r(α) = c(α) / Σ_{β ∈ P_α} c(β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable(MultiTable);

impl RatioTable {
    pub fn new(table: MultiTable) -> Result<Self> {
        let zero = table.monoid().identity();
        if !table[&zero].is_zero() {
            return Err(Error::InvalidRatio {
                at: zero.to_string(),
                reason: format!("must be 0, found {}", rational::format(&table[&zero])),
            });
        }
        if let Some((a, v)) = table.iter().skip(1).find(|(_, v)| !v.is_positive()) {
            return Err(Error::InvalidRatio {
                at: a.to_string(),
                reason: format!("must be positive, found {}", rational::format(v)),
            });
        }
        Ok(RatioTable(table))
    }

    /// Builds `r` from its values off the origin.
    pub fn from_fn(
        dim: usize,
        max_degree: usize,
        mut f: impl FnMut(&MultiIndex) -> Rational,
    ) -> Result<Self> {
        let t = CoeffTable::from_fn(MultiIndexMonoid::new(dim), max_degree, |a| {
            if a.is_zero() {
                Rational::zero()
            } else {
                f(a)
            }
        })?;
        Self::new(t)
    }

    pub fn table(&self) -> &MultiTable {
        &self.0
    }

    pub fn into_table(self) -> MultiTable {
        self.0
    }

    pub fn get(&self, a: &MultiIndex) -> Option<&Rational> {
        self.0.get(a)
    }
}

impl std::ops::Index<&MultiIndex> for RatioTable {
    type Output = Rational;

    fn index(&self, a: &MultiIndex) -> &Rational {
        &self.0[a]
    }
}

fn require_hypotheses<M: GradedMonoid>(c: &CoeffTable<M>) -> Result<()> {
    c.require_unital()?;
    c.require_positive()
}

fn predecessor_sum(c: &MultiTable, a: &MultiIndex) -> Rational {
    (0..a.dim())
        .filter(|&k| a.components()[k] > 0)
        .map(|k| {
            let mut p = a.components().to_vec();
            p[k] -= 1;
            c[&MultiIndex::new(p)].clone()
        })
        .sum()
}

pub fn ratio_table(c: &MultiTable) -> Result<RatioTable> {
    require_hypotheses(c)?;
    let t = c.map(|a, v| {
        if a.is_zero() {
            Rational::zero()
        } else {
            v / predecessor_sum(c, a)
        }
    });
    Ok(RatioTable(t))
}

/// `r` bounded by one and non-decreasing along every edge `α → α + e_k`.
///
/// Edges suffice: a function vanishing at the origin is non-decreasing for
/// the componentwise order iff it is along every covering pair.
pub fn check_theorem1(c: &MultiTable) -> Result<CheckReport> {
    let r = ratio_table(c)?;
    let n = c.max_degree();
    let dim = c.monoid().dim();
    let one = Rational::one();
    let mut violations = Vec::new();
    for (a, ra) in r.table().iter() {
        if *ra > one {
            violations.push(Violation {
                cond: Condition::RatioBound,
                at: vec![a.components().to_vec()],
                lhs: ra.clone(),
                rhs: one.clone(),
            });
        }
        if a.degree() < n {
            for k in 0..dim {
                let b = a.bump(k);
                let rb = &r[&b];
                if ra > rb {
                    violations.push(Violation {
                        cond: Condition::RatioEdge,
                        at: vec![a.components().to_vec(), b.components().to_vec()],
                        lhs: ra.clone(),
                        rhs: rb.clone(),
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violations(n, violations))
}

/// Right-hand side of the cross-ratio condition at `α`, `i`, `j` (zero-based).
pub fn cross_ratio_bound(a: &MultiIndex, i: usize, j: usize) -> Rational {
    let deg = a.degree() as i64;
    if i != j {
        rational::ratio(deg + 1, deg + 2)
    } else {
        let ai = a.components()[i] as i64;
        rational::ratio((deg + 1) * (ai + 2), (deg + 2) * (ai + 1))
    }
}

/// `c(α) <= |α|!/α!` for all stored `α`, and for `|α| <= N - 2`
/// `c(α+e_i) c(α+e_j) / (c(α) c(α+e_i+e_j)) <= cross_ratio_bound(α, i, j)`.
///
/// The cross ratio is symmetric in `i, j`; only `i <= j` is reported.
pub fn check_theorem2(c: &MultiTable) -> Result<CheckReport> {
    require_hypotheses(c)?;
    let n = c.max_degree();
    let dim = c.monoid().dim();
    let mut violations = Vec::new();
    for (a, ca) in c.iter() {
        let bound = Rational::from_integer(a.multinomial());
        if *ca > bound {
            violations.push(Violation {
                cond: Condition::MultinomialBound,
                at: vec![a.components().to_vec()],
                lhs: ca.clone(),
                rhs: bound,
            });
        }
        if a.degree() + 2 > n {
            continue;
        }
        for i in 0..dim {
            for j in i..dim {
                let ai = a.bump(i);
                let aj = a.bump(j);
                let aij = ai.bump(j);
                let lhs = (&c[&ai] * &c[&aj]) / (ca * &c[&aij]);
                let rhs = cross_ratio_bound(a, i, j);
                if lhs > rhs {
                    violations.push(Violation {
                        cond: if i == j {
                            Condition::CrossRatioDiag
                        } else {
                            Condition::CrossRatioOffDiag
                        },
                        at: vec![
                            a.components().to_vec(),
                            MultiIndex::unit(dim, i).components().to_vec(),
                            MultiIndex::unit(dim, j).components().to_vec(),
                        ],
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violations(n, violations))
}

/// `f(av)/f(v) <= f(avb)/f(vb)` for all letters `a, b` and words `v` with
/// `|avb| <= N`. Witnesses are reported as `[a, v, b]`.
pub fn check_word_condition(f: &WordTable) -> Result<CheckReport> {
    require_hypotheses(f)?;
    let n = f.max_degree();
    let monoid = *f.monoid();
    let letters: Vec<Word> = monoid.generators();
    let mut violations = Vec::new();
    for (v, fv) in f.iter() {
        if v.len() + 2 > n {
            break;
        }
        for a in &letters {
            let av = a.concat(v);
            let lhs = &f[&av] / fv;
            for b in &letters {
                let vb = v.concat(b);
                let rhs = &f[&av.concat(b)] / &f[&vb];
                if lhs > rhs {
                    violations.push(Violation {
                        cond: Condition::WordRatio,
                        at: vec![
                            a.letters().to_vec(),
                            v.letters().to_vec(),
                            b.letters().to_vec(),
                        ],
                        lhs: lhs.clone(),
                        rhs,
                    });
                }
            }
        }
    }
    Ok(CheckReport::from_violations(n, violations))
}

/// Kaluza's hypothesis with bound one: `s_n / s_{n-1}` non-decreasing and at
/// most one.
pub fn check_kaluza_1d(s: &[Rational]) -> Result<CheckReport> {
    let Some(first) = s.first() else {
        return Err(Error::LengthShortfall { needed: 1, found: 0 });
    };
    if !first.is_one() {
        return Err(Error::NotUnital(rational::format(first)));
    }
    if let Some((i, v)) = s.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NonPositive {
            at: i.to_string(),
            value: rational::format(v),
        });
    }
    let ratios: Vec<Rational> = s.windows(2).map(|w| &w[1] / &w[0]).collect();
    let one = Rational::one();
    let mut violations = Vec::new();
    for (i, r) in ratios.iter().enumerate() {
        let n = i as u32 + 1;
        if *r > one {
            violations.push(Violation {
                cond: Condition::SequenceBound,
                at: vec![vec![n]],
                lhs: r.clone(),
                rhs: one.clone(),
            });
        }
        if let Some(next) = ratios.get(i + 1) {
            if r > next {
                violations.push(Violation {
                    cond: Condition::SequenceMonotone,
                    at: vec![vec![n], vec![n + 1]],
                    lhs: r.clone(),
                    rhs: next.clone(),
                });
            }
        }
    }
    Ok(CheckReport::from_violations(s.len() - 1, violations))
}

/// `c(0) = 1`, `c(α) = r(α) Σ_{β ∈ P_α} c(β)`.
pub fn c_from_r(r: &RatioTable) -> Result<MultiTable> {
    let t = r.table();
    let mut done: HashMap<MultiIndex, Rational> = HashMap::with_capacity(t.len());
    CoeffTable::from_fn(*t.monoid(), t.max_degree(), |a| {
        let v = if a.is_zero() {
            Rational::one()
        } else {
            let s: Rational = t
                .monoid()
                .predecessors(a)
                .expect("non-zero index")
                .iter()
                .map(|p| &done[p])
                .sum();
            &t[a] * s
        };
        done.insert(a.clone(), v.clone());
        v
    })
}

/// `b(0) = 0`, `b(α) = (1 - r(α)) Σ_{β ∈ P_α} c(β)`.
///
/// Non-negative exactly when `r <= 1`; the table itself is returned either way.
pub fn b_from_c(c: &MultiTable) -> Result<MultiTable> {
    require_hypotheses(c)?;
    Ok(c.map(|a, v| {
        if a.is_zero() {
            Rational::zero()
        } else {
            predecessor_sum(c, a) - v
        }
    }))
}

/// `c(α) = |α|!/α! - Σ_{β <= α} (|α-β|!/(α-β)!) b(β)`.
pub fn c_from_b(b: &MultiTable) -> Result<MultiTable> {
    if !b.identity_value().is_zero() {
        return Err(Error::NonzeroAtIdentity(rational::format(b.identity_value())));
    }
    let monoid = *b.monoid();
    CoeffTable::from_fn(monoid, b.max_degree(), |a| {
        let mut acc = Rational::from_integer(a.multinomial());
        for (beta, rest) in monoid.decompositions(a) {
            let bb = &b[&beta];
            if !bb.is_zero() {
                acc -= Rational::from_integer(rest.multinomial()) * bb;
            }
        }
        acc
    })
}

/// `c(α) = (|α|!/α!) Π_i s_{i, α_i}` for one sequence per axis.
pub fn product_coeffs(seqs: &[Vec<Rational>], max_degree: usize) -> Result<MultiTable> {
    if seqs.is_empty() {
        return Err(Error::Malformed("need at least one sequence".into()));
    }
    for (i, s) in seqs.iter().enumerate() {
        if s.len() <= max_degree {
            return Err(Error::LengthShortfall {
                needed: max_degree + 1,
                found: s.len(),
            });
        }
        if !s[0].is_one() {
            return Err(Error::NotUnital(format!(
                "sequence {} starts at {}",
                i + 1,
                rational::format(&s[0])
            )));
        }
        if let Some((n, v)) = s.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositive {
                at: format!("sequence {} term {n}", i + 1),
                value: rational::format(v),
            });
        }
    }
    CoeffTable::from_fn(MultiIndexMonoid::new(seqs.len()), max_degree, |a| {
        a.components()
            .iter()
            .zip(seqs)
            .fold(Rational::from_integer(a.multinomial()), |acc, (&k, s)| {
                acc * &s[k as usize]
            })
    })
}

/// Embeds a one-variable sequence as a `d = 1` table.
pub fn sequence_table(s: &[Rational]) -> Result<MultiTable> {
    if s.is_empty() {
        return Err(Error::LengthShortfall { needed: 1, found: 0 });
    }
    CoeffTable::from_fn(MultiIndexMonoid::new(1), s.len() - 1, |a| {
        s[a.components()[0] as usize].clone()
    })
}

pub fn word_table_from_fn(
    dim: usize,
    max_degree: usize,
    f: impl FnMut(&Word) -> Rational,
) -> Result<WordTable> {
    CoeffTable::from_fn(WordMonoid::new(dim), max_degree, f)
}
