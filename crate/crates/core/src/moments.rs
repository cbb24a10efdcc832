//! Coefficient tables of `∫ 1/(1 - Σ t_j z_j) dμ(t)` for probability measures
//! on `[0, 1]^d` with exactly computable moments.
//!
//! Product measures give `c(α) = (|α|!/α!) Π_i s_{i, α_i}` with the moment
//! sequences `s_{i,n} = ∫ t^n dμ_i`. Finite atomic measures on the cube give
//! `c(α) = (|α|!/α!) Σ_k w_k t_k^α`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kaluza::product_coeffs;
use crate::monoid::MultiIndexMonoid;
use crate::rational::{self, pow, Rational};
use crate::series::{CoeffTable, MultiTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    #[serde(with = "rational::serde_str")]
    pub w: Rational,
}

/// A probability measure on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureSpec1D {
    Lebesgue,
    Atomic { atoms: Vec<Atom> },
}

impl MeasureSpec1D {
    pub fn point_mass(t: Rational) -> Self {
        MeasureSpec1D::Atomic {
            atoms: vec![Atom { t, w: Rational::one() }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec1D::Lebesgue => Ok(()),
            MeasureSpec1D::Atomic { atoms } => {
                validate_weights(atoms.iter().map(|a| &a.w))?;
                for a in atoms {
                    check_unit_interval(&a.t)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomD {
    #[serde(with = "rational::serde_str_vec")]
    pub t: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub w: Rational,
}

/// A finite atomic probability measure on `[0, 1]^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicMeasureD {
    pub atoms: Vec<AtomD>,
}

impl AtomicMeasureD {
    pub fn dim(&self) -> usize {
        self.atoms.first().map_or(0, |a| a.t.len())
    }

    pub fn validate(&self) -> Result<()> {
        validate_weights(self.atoms.iter().map(|a| &a.w))?;
        let dim = self.dim();
        if dim == 0 {
            return Err(Error::InvalidMeasure("atoms need at least one coordinate".into()));
        }
        for a in &self.atoms {
            if a.t.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.t.len(),
                });
            }
            for t in &a.t {
                check_unit_interval(t)?;
            }
        }
        Ok(())
    }
}

/// On-disk measure description: a product of one-dimensional factors, or a
/// finite atomic measure on the cube.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureFile {
    Product {
        axes: Vec<MeasureSpec1D>,
    },
    Atomic {
        #[serde(rename = "atomsD")]
        atoms_d: Vec<AtomD>,
    },
}

fn validate_weights<'a>(weights: impl Iterator<Item = &'a Rational>) -> Result<()> {
    let mut total = Rational::zero();
    let mut count = 0;
    for w in weights {
        if !w.is_positive() {
            return Err(Error::InvalidMeasure(format!(
                "weight {} is not positive",
                rational::format(w)
            )));
        }
        total += w;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidMeasure("no atoms".into()));
    }
    if !total.is_one() {
        return Err(Error::InvalidMeasure(format!(
            "weights sum to {}",
            rational::format(&total)
        )));
    }
    Ok(())
}

fn check_unit_interval(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::InvalidMeasure(format!(
            "location {} outside [0, 1]",
            rational::format(t)
        )));
    }
    Ok(())
}

/// Moments `s_0, ..., s_N` of a measure on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentSequence(#[serde(with = "rational::serde_str_vec")] pub Vec<Rational>);

impl MomentSequence {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

pub fn moments(m: &MeasureSpec1D, max_degree: usize) -> Result<MomentSequence> {
    m.validate()?;
    let values = match m {
        MeasureSpec1D::Lebesgue => (0..=max_degree)
            .map(|n| rational::ratio(1, n as i64 + 1))
            .collect(),
        MeasureSpec1D::Atomic { atoms } => (0..=max_degree)
            .map(|n| {
                atoms
                    .iter()
                    .map(|a| &a.w * pow(&a.t, n as u32))
                    .sum::<Rational>()
            })
            .collect(),
    };
    Ok(MomentSequence(values))
}

pub fn product_measure_coeffs(specs: &[MeasureSpec1D], max_degree: usize) -> Result<MultiTable> {
    if specs.is_empty() {
        return Err(Error::InvalidMeasure("need at least one axis".into()));
    }
    let seqs = specs
        .iter()
        .map(|s| moments(s, max_degree).map(|m| m.0))
        .collect::<Result<Vec<_>>>()?;
    product_coeffs(&seqs, max_degree)
}

pub fn atomic_coeffs(m: &AtomicMeasureD, max_degree: usize) -> Result<MultiTable> {
    m.validate()?;
    CoeffTable::from_fn(MultiIndexMonoid::new(m.dim()), max_degree, |alpha| {
        let mixed: Rational = m
            .atoms
            .iter()
            .map(|atom| {
                alpha
                    .components()
                    .iter()
                    .zip(&atom.t)
                    .fold(atom.w.clone(), |acc, (&k, t)| acc * pow(t, k))
            })
            .sum();
        Rational::from_integer(alpha.multinomial()) * mixed
    })
}

/// `½(δ_(a,0) + δ_(0,a))`.
pub fn two_point_mixture(a: Rational) -> AtomicMeasureD {
    let half = rational::ratio(1, 2);
    AtomicMeasureD {
        atoms: vec![
            AtomD {
                t: vec![a.clone(), Rational::zero()],
                w: half.clone(),
            },
            AtomD {
                t: vec![Rational::zero(), a],
                w: half,
            },
        ],
    }
}
