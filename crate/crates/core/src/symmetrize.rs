//! Word-level route to the multi-index renewal solution.
//!
//! A multi-index table `c` is lifted to words by spreading `c(α)` evenly over
//! the fiber of `α` under letter counting. The lifted renewal equation is
//! solved on words and pushed back down by fiber sums. Since fiber summation
//! turns word convolution into multi-index convolution, the result solves the
//! original equation and, by uniqueness, equals the direct solution. Storage
//! is exponential in the degree, so this path serves as a test oracle.

use num_traits::Zero;

use crate::error::Result;
use crate::monoid::{abelianize, fiber, GradedMonoid, MultiIndexMonoid, WordMonoid};
use crate::rational::Rational;
use crate::series::{solve_renewal, CoeffTable, MultiTable, WordTable};

/// Default guard for lifted tables: `d^N <= 4096`, i.e. `N <= 12` at `d = 2`
/// and `N <= 7` at `d = 3`.
pub const DEFAULT_LIFT_GUARD: u64 = 4096;

/// Word table `f(w) = c(φ(w)) / N(φ(w))` together with its source.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedTable {
    words: WordTable,
    source: MultiTable,
}

impl LiftedTable {
    pub fn words(&self) -> &WordTable {
        &self.words
    }

    pub fn source(&self) -> &MultiTable {
        &self.source
    }

    pub fn into_words(self) -> WordTable {
        self.words
    }
}

pub fn lift(c: &MultiTable) -> Result<LiftedTable> {
    lift_guarded(c, DEFAULT_LIFT_GUARD)
}

pub fn lift_guarded(c: &MultiTable, guard: u64) -> Result<LiftedTable> {
    c.require_unital()?;
    let dim = c.monoid().dim();
    let words = CoeffTable::from_fn_guarded(WordMonoid::new(dim), c.max_degree(), guard, |w| {
        let alpha = abelianize(w, dim);
        &c[&alpha] / Rational::from_integer(alpha.multinomial())
    })?;
    Ok(LiftedTable {
        words,
        source: c.clone(),
    })
}

/// Fiber sums `Sg(α) = Σ_{φ(w) = α} g(w)`.
pub fn symmetrize(g: &WordTable) -> Result<MultiTable> {
    let dim = g.monoid().dim();
    CoeffTable::from_fn(MultiIndexMonoid::new(dim), g.max_degree(), |alpha| {
        fiber(alpha)
            .iter()
            .fold(Rational::zero(), |acc, w| acc + &g[w])
    })
}

/// `S(solve_renewal(lift(c)))`; equal to `solve_renewal(c)` entry by entry.
pub fn solve_via_words(c: &MultiTable) -> Result<MultiTable> {
    solve_via_words_guarded(c, DEFAULT_LIFT_GUARD)
}

pub fn solve_via_words_guarded(c: &MultiTable, guard: u64) -> Result<MultiTable> {
    let lifted = lift_guarded(c, guard)?;
    symmetrize(&solve_renewal(lifted.words())?)
}
