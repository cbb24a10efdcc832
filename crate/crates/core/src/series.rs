//! Degree-truncated coefficient tables over a graded monoid.
//!
//! A [`CoeffTable`] stores one exact value for every element of degree at
//! most `N`, in canonical order. Convolution and the renewal solver work level
//! by level; entries of one level only read strictly lower levels, so a level
//! is computed with a parallel map whose output order is fixed.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monoid::{GradedMonoid, IndexKind, MultiIndex, MultiIndexMonoid, WordMonoid};
use crate::rational::{self, Rational};

/// Default bound on the size of the top level of a word table.
pub const DEFAULT_WORD_GUARD: u64 = 1_000_000;

/// Levels smaller than this are computed sequentially.
const PAR_THRESHOLD: usize = 64;

/// Element layout shared by all tables of one shape.
#[derive(Debug)]
struct Layout<M: GradedMonoid> {
    keys: Vec<M::Element>,
    level_starts: Vec<usize>,
    position: HashMap<M::Element, usize>,
}

impl<M: GradedMonoid> Layout<M> {
    fn build(monoid: &M, max_degree: usize, guard: u64) -> Result<Self> {
        if M::KIND == IndexKind::Word && monoid.level_size(max_degree) > guard as u128 {
            return Err(Error::GuardExceeded {
                dim: monoid.dim(),
                degree: max_degree,
                limit: guard,
            });
        }
        let mut keys = Vec::new();
        let mut level_starts = Vec::with_capacity(max_degree + 2);
        for n in 0..=max_degree {
            level_starts.push(keys.len());
            keys.extend(monoid.enumerate(n));
        }
        level_starts.push(keys.len());
        let position = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(Layout {
            keys,
            level_starts,
            position,
        })
    }
}

/// Exact coefficients `f(w)` for all `w` with `degree(w) <= max_degree`.
#[derive(Clone)]
pub struct CoeffTable<M: GradedMonoid> {
    monoid: M,
    max_degree: usize,
    layout: Arc<Layout<M>>,
    values: Vec<Rational>,
}

pub type MultiTable = CoeffTable<MultiIndexMonoid>;
pub type WordTable = CoeffTable<WordMonoid>;

impl<M: GradedMonoid> PartialEq for CoeffTable<M> {
    fn eq(&self, other: &Self) -> bool {
        self.monoid == other.monoid
            && self.max_degree == other.max_degree
            && self.values == other.values
    }
}

impl<M: GradedMonoid> fmt::Debug for CoeffTable<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in self.iter() {
            m.entry(&format_args!("{k}"), &format_args!("{}", rational::format(v)));
        }
        m.finish()
    }
}

impl<M: GradedMonoid> CoeffTable<M> {
    pub fn from_fn(
        monoid: M,
        max_degree: usize,
        f: impl FnMut(&M::Element) -> Rational,
    ) -> Result<Self> {
        Self::from_fn_guarded(monoid, max_degree, DEFAULT_WORD_GUARD, f)
    }

    /// Like [`from_fn`](Self::from_fn) with an explicit word-table guard.
    pub fn from_fn_guarded(
        monoid: M,
        max_degree: usize,
        guard: u64,
        mut f: impl FnMut(&M::Element) -> Rational,
    ) -> Result<Self> {
        let layout = Arc::new(Layout::build(&monoid, max_degree, guard)?);
        let values = layout.keys.iter().map(&mut f).collect();
        Ok(CoeffTable {
            monoid,
            max_degree,
            layout,
            values,
        })
    }

    pub fn try_from_fn(
        monoid: M,
        max_degree: usize,
        mut f: impl FnMut(&M::Element) -> Result<Rational>,
    ) -> Result<Self> {
        let layout = Arc::new(Layout::build(&monoid, max_degree, DEFAULT_WORD_GUARD)?);
        let values = layout.keys.iter().map(&mut f).collect::<Result<_>>()?;
        Ok(CoeffTable {
            monoid,
            max_degree,
            layout,
            values,
        })
    }

    /// Builds a table from explicit entries; every element of degree at most
    /// `max_degree` must appear exactly once.
    pub fn from_entries(
        monoid: M,
        max_degree: usize,
        entries: impl IntoIterator<Item = (M::Element, Rational)>,
    ) -> Result<Self> {
        let layout = Arc::new(Layout::build(&monoid, max_degree, DEFAULT_WORD_GUARD)?);
        let mut values: Vec<Option<Rational>> = vec![None; layout.keys.len()];
        for (k, v) in entries {
            monoid.validate(&k)?;
            let pos = *layout
                .position
                .get(&k)
                .ok_or_else(|| Error::InvalidElement(format!("{k} exceeds degree {max_degree}")))?;
            if values[pos].replace(v).is_some() {
                return Err(Error::DuplicateIndex(k.to_string()));
            }
        }
        let values = values
            .into_iter()
            .zip(&layout.keys)
            .map(|(v, k)| v.ok_or_else(|| Error::MissingIndex(k.to_string())))
            .collect::<Result<_>>()?;
        Ok(CoeffTable {
            monoid,
            max_degree,
            layout,
            values,
        })
    }

    pub fn zeros(monoid: M, max_degree: usize) -> Result<Self> {
        Self::from_fn(monoid, max_degree, |_| Rational::zero())
    }

    /// A table with the same shape as `self` and new values.
    fn with_values(&self, values: Vec<Rational>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        CoeffTable {
            monoid: self.monoid.clone(),
            max_degree: self.max_degree,
            layout: Arc::clone(&self.layout),
            values,
        }
    }

    pub fn map(&self, mut f: impl FnMut(&M::Element, &Rational) -> Rational) -> Self {
        let values = self
            .layout
            .keys
            .iter()
            .zip(&self.values)
            .map(|(k, v)| f(k, v))
            .collect();
        self.with_values(values)
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: &M::Element) -> Option<&Rational> {
        self.layout.position.get(x).map(|&i| &self.values[i])
    }

    /// Entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&M::Element, &Rational)> {
        self.layout.keys.iter().zip(&self.values)
    }

    pub fn keys(&self) -> &[M::Element] {
        &self.layout.keys
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Entries of degree exactly `n`.
    pub fn level(&self, n: usize) -> impl Iterator<Item = (&M::Element, &Rational)> {
        let (lo, hi) = if n <= self.max_degree {
            (self.layout.level_starts[n], self.layout.level_starts[n + 1])
        } else {
            (0, 0)
        };
        self.layout.keys[lo..hi].iter().zip(&self.values[lo..hi])
    }

    /// Restriction to degrees at most `n <= max_degree`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        let n = n.min(self.max_degree);
        Self::from_fn(self.monoid.clone(), n, |k| self[k].clone())
    }

    pub fn identity_value(&self) -> &Rational {
        &self.values[0]
    }

    pub fn is_unital(&self) -> bool {
        self.values[0].is_one()
    }

    pub fn require_unital(&self) -> Result<()> {
        if self.is_unital() {
            Ok(())
        } else {
            Err(Error::NotUnital(rational::format(&self.values[0])))
        }
    }

    /// First entry in canonical order that is not strictly positive.
    pub fn require_positive(&self) -> Result<()> {
        match self.iter().find(|(_, v)| !v.is_positive()) {
            Some((k, v)) => Err(Error::NonPositive {
                at: k.to_string(),
                value: rational::format(v),
            }),
            None => Ok(()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// Entries with negative value, in canonical order.
    pub fn negative_entries(&self) -> Vec<(M::Element, Rational)> {
        self.iter()
            .filter(|(_, v)| v.is_negative())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Smallest value; ties go to the first entry in canonical order.
    pub fn min_entry(&self) -> (M::Element, Rational) {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate().skip(1) {
            if *v < self.values[best] {
                best = i;
            }
        }
        (self.layout.keys[best].clone(), self.values[best].clone())
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.monoid.dim() != other.monoid.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.monoid.dim(),
                found: other.monoid.dim(),
            });
        }
        if self.max_degree != other.max_degree {
            return Err(Error::DegreeMismatch {
                left: self.max_degree,
                right: other.max_degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_values(
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_values(
            self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        ))
    }

    fn pos(&self, x: &M::Element) -> usize {
        self.layout.position[x]
    }
}

impl<M: GradedMonoid> std::ops::Index<&M::Element> for CoeffTable<M> {
    type Output = Rational;

    fn index(&self, x: &M::Element) -> &Rational {
        self.get(x)
            .unwrap_or_else(|| panic!("{x} is not stored in this table"))
    }
}

/// `δ_e`: one at the identity and zero elsewhere.
pub fn delta<M: GradedMonoid>(monoid: M, max_degree: usize) -> Result<CoeffTable<M>> {
    let e = monoid.identity();
    CoeffTable::from_fn(monoid, max_degree, |x| {
        if *x == e {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn map_ordered<E, F>(keys: &[E], f: F) -> Vec<Rational>
where
    E: Sync,
    F: Fn(&E) -> Rational + Sync,
{
    if keys.len() >= PAR_THRESHOLD {
        keys.par_iter().map(&f).collect()
    } else {
        keys.iter().map(f).collect()
    }
}

/// `(f * g)(w) = Σ_{uv = w} f(u) g(v)`, exact up to the truncation degree.
pub fn convolve<M: GradedMonoid>(f: &CoeffTable<M>, g: &CoeffTable<M>) -> Result<CoeffTable<M>> {
    f.check_compatible(g)?;
    let monoid = f.monoid();
    let values = map_ordered(f.keys(), |w| {
        monoid
            .decompositions(w)
            .iter()
            .fold(Rational::zero(), |acc, (u, v)| acc + &f[u] * &g[v])
    });
    Ok(f.with_values(values))
}

/// Unique solution `q` of `c = δ_e + c * q` up to the truncation degree.
///
/// `q(e) = 0` and, for `w ≠ e`,
/// `q(w) = c(w) - Σ_{uv = w, v ≠ w} c(u) q(v)`.
pub fn solve_renewal<M: GradedMonoid>(c: &CoeffTable<M>) -> Result<CoeffTable<M>> {
    c.require_unital()?;
    let monoid = c.monoid();
    let e = monoid.identity();
    let mut q = vec![Rational::zero(); c.len()];
    for n in 1..=c.max_degree {
        let (lo, hi) = (c.layout.level_starts[n], c.layout.level_starts[n + 1]);
        let level = &c.layout.keys[lo..hi];
        let done = &q[..lo];
        let fresh = map_ordered(level, |w| {
            let mut acc = c[w].clone();
            for (u, v) in monoid.decompositions(w) {
                // u = e is the term being solved for; v = e contributes q(e) = 0
                if u == e || v == e {
                    continue;
                }
                acc -= &c[&u] * &done[c.pos(&v)];
            }
            acc
        });
        for (slot, v) in q[lo..hi].iter_mut().zip(fresh) {
            *slot = v;
        }
    }
    Ok(c.with_values(q))
}

/// `c - δ_e - c * q`; zero exactly when `q` solves the renewal equation.
pub fn residual<M: GradedMonoid>(c: &CoeffTable<M>, q: &CoeffTable<M>) -> Result<CoeffTable<M>> {
    let conv = convolve(c, q)?;
    let d = delta(c.monoid().clone(), c.max_degree())?;
    c.sub(&d)?.sub(&conv)
}

/// Coefficients `|α|!/α!` of `1/(1 - z_1 - ... - z_d)`.
pub fn multinomial_table(dim: usize, max_degree: usize) -> Result<MultiTable> {
    CoeffTable::from_fn(MultiIndexMonoid::new(dim), max_degree, |a| {
        Rational::from_integer(a.multinomial())
    })
}

/// A point of `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint(pub Vec<Complex64>);

impl EvalPoint {
    pub fn real(coords: &[f64]) -> Self {
        EvalPoint(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }
}

/// Truncated sum `Σ_{|α| <= N} f(α) z^α` in floating point.
pub fn evaluate(f: &MultiTable, z: &EvalPoint) -> Result<Complex64> {
    let dim = f.monoid().dim();
    if z.0.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: z.0.len(),
        });
    }
    let norm = z.l1_norm();
    if norm.is_nan() || norm >= 1.0 {
        return Err(Error::OutsideBall(norm.to_string()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (alpha, v) in f.iter() {
        let coeff = v.to_f64().unwrap_or(f64::NAN);
        let mono: Complex64 = alpha
            .components()
            .iter()
            .zip(&z.0)
            .map(|(&a, zj)| zj.powu(a))
            .product();
        sum += mono * coeff;
    }
    Ok(sum)
}

/// The polynomial `1 - z_1 - ... - z_d` as a table.
pub fn one_minus_linear(dim: usize, max_degree: usize) -> Result<MultiTable> {
    CoeffTable::from_fn(MultiIndexMonoid::new(dim), max_degree, |a: &MultiIndex| {
        match a.degree() {
            0 => Rational::one(),
            1 => -Rational::one(),
            _ => Rational::zero(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Word, WordMonoid};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.to_vec())
    }

    fn ones_1d(n: usize) -> MultiTable {
        CoeffTable::from_fn(MultiIndexMonoid::new(1), n, |_| int(1)).unwrap()
    }

    fn seq(t: &MultiTable) -> Vec<Rational> {
        t.values().to_vec()
    }

    /// Independent route for d = 1: invert the series and read off `1 - 1/c`.
    fn oracle_q_1d(c: &[Rational]) -> Vec<Rational> {
        let mut h = vec![Rational::zero(); c.len()];
        h[0] = Rational::one() / &c[0];
        for n in 1..c.len() {
            let s: Rational = (1..=n).map(|k| &c[k] * &h[n - k]).sum();
            h[n] = -s / &c[0];
        }
        let mut q: Vec<Rational> = h.iter().map(|x| -x).collect();
        q[0] += Rational::one();
        q
    }

    #[test]
    fn delta_examples() {
        let d = delta(MultiIndexMonoid::new(2), 2).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d[&mi(&[0, 0])], int(1));
        assert!(d.iter().skip(1).all(|(_, v)| v.is_zero()));

        let w = delta(WordMonoid::new(2), 1).unwrap();
        assert_eq!(w[&Word::empty()], int(1));
        assert_eq!(w[&Word::new(vec![1])], int(0));
        assert_eq!(w[&Word::new(vec![2])], int(0));

        let z = delta(MultiIndexMonoid::new(3), 0).unwrap();
        assert_eq!(seq(&z), vec![int(1)]);
    }

    #[test]
    fn convolution_examples() {
        let g = multinomial_table(2, 4).unwrap();
        let d = delta(MultiIndexMonoid::new(2), 4).unwrap();
        assert_eq!(convolve(&d, &g).unwrap(), g);
        assert_eq!(convolve(&g, &d).unwrap(), g);

        let ones = ones_1d(5);
        let sq = convolve(&ones, &ones).unwrap();
        assert_eq!(seq(&sq), (1..=6).map(int).collect::<Vec<_>>());

        let ones2 = CoeffTable::from_fn(MultiIndexMonoid::new(2), 3, |_| int(1)).unwrap();
        let sq2 = convolve(&ones2, &ones2).unwrap();
        assert_eq!(sq2[&mi(&[1, 1])], int(4));
    }

    #[test]
    fn convolution_rejects_mismatched_tables() {
        let a = ones_1d(3);
        let b = ones_1d(4);
        assert!(matches!(convolve(&a, &b), Err(Error::DegreeMismatch { .. })));
        let c = multinomial_table(2, 3).unwrap();
        let d = multinomial_table(3, 3).unwrap();
        assert!(matches!(convolve(&c, &d), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn renewal_examples() {
        let q = solve_renewal(&ones_1d(6)).unwrap();
        let mut expected = vec![int(0); 7];
        expected[1] = int(1);
        assert_eq!(seq(&q), expected);

        let q = solve_renewal(&multinomial_table(2, 6).unwrap()).unwrap();
        for (a, v) in q.iter() {
            let want = if a.degree() == 1 { int(1) } else { int(0) };
            assert_eq!(*v, want, "at {a}");
        }
    }

    #[test]
    fn renewal_requires_unital_table() {
        let c = CoeffTable::from_fn(MultiIndexMonoid::new(1), 3, |_| int(2)).unwrap();
        assert_eq!(solve_renewal(&c), Err(Error::NotUnital("2/1".into())));
    }

    #[test]
    fn renewal_matches_series_inversion_in_one_variable() {
        let c: Vec<Rational> = vec![int(1), ratio(1, 2), ratio(1, 3), ratio(3, 7), ratio(-2, 5), int(4)];
        let table = CoeffTable::from_entries(
            MultiIndexMonoid::new(1),
            5,
            c.iter().enumerate().map(|(i, v)| (mi(&[i as u32]), v.clone())),
        )
        .unwrap();
        assert_eq!(seq(&solve_renewal(&table).unwrap()), oracle_q_1d(&c));
    }

    #[test]
    fn residual_examples() {
        let c = multinomial_table(3, 4).unwrap();
        assert!(residual(&c, &solve_renewal(&c).unwrap()).unwrap().is_zero());

        let d = delta(MultiIndexMonoid::new(2), 3).unwrap();
        let z = CoeffTable::zeros(MultiIndexMonoid::new(2), 3).unwrap();
        assert!(residual(&d, &z).unwrap().is_zero());

        let c = ones_1d(2);
        let q = CoeffTable::from_entries(
            MultiIndexMonoid::new(1),
            2,
            [(mi(&[0]), int(0)), (mi(&[1]), int(1)), (mi(&[2]), int(1))],
        )
        .unwrap();
        assert_eq!(seq(&residual(&c, &q).unwrap()), vec![int(0), int(0), int(-1)]);
    }

    #[test]
    fn perturbed_solution_has_nonzero_residual() {
        let c = multinomial_table(2, 4).unwrap();
        let q = solve_renewal(&c).unwrap();
        for k in q.keys().iter().skip(1) {
            let bumped = q.map(|x, v| if x == k { v + ratio(1, 7) } else { v.clone() });
            assert!(!residual(&c, &bumped).unwrap().is_zero());
        }
    }

    #[test]
    fn multinomial_table_examples() {
        assert_eq!(multinomial_table(2, 3).unwrap()[&mi(&[1, 1])], int(2));
        assert_eq!(multinomial_table(3, 3).unwrap()[&mi(&[1, 1, 1])], int(6));
        for d in 1..=4 {
            assert_eq!(*multinomial_table(d, 2).unwrap().identity_value(), int(1));
        }
    }

    #[test]
    fn evaluate_examples() {
        let d = delta(MultiIndexMonoid::new(2), 3).unwrap();
        let v = evaluate(&d, &EvalPoint::real(&[0.3, -0.4])).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));

        let v = evaluate(&ones_1d(20), &EvalPoint::real(&[0.5])).unwrap();
        assert!((v.re - 2.0).abs() < 1e-5 && v.im == 0.0);

        let m = multinomial_table(2, 30).unwrap();
        let v = evaluate(&m, &EvalPoint::real(&[0.25, 0.25])).unwrap();
        assert!((v.re - 2.0).abs() < 1e-5);

        let z = EvalPoint(vec![Complex64::new(0.0, 0.25), Complex64::new(0.0, 0.25)]);
        let v = evaluate(&m, &z).unwrap();
        let exact = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -0.5);
        assert!((v - exact).norm() < 1e-6);
    }

    #[test]
    fn evaluate_rejects_points_outside_ball() {
        let m = multinomial_table(2, 3).unwrap();
        assert!(matches!(
            evaluate(&m, &EvalPoint::real(&[0.5, 0.5])),
            Err(Error::OutsideBall(_))
        ));
        assert!(evaluate(&m, &EvalPoint::real(&[0.5])).is_err());
    }

    #[test]
    fn word_guard_is_enforced() {
        let err = CoeffTable::from_fn(WordMonoid::new(2), 20, |_| int(1)).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
        assert!(CoeffTable::from_fn_guarded(WordMonoid::new(2), 5, 16, |_| int(1)).is_err());
        assert!(CoeffTable::from_fn_guarded(WordMonoid::new(2), 4, 16, |_| int(1)).is_ok());
    }

    #[test]
    fn from_entries_rejects_gaps_and_duplicates() {
        let m = MultiIndexMonoid::new(1);
        let e = CoeffTable::from_entries(m, 1, [(mi(&[0]), int(1))]).unwrap_err();
        assert!(matches!(e, Error::MissingIndex(_)));
        let e = CoeffTable::from_entries(m, 0, [(mi(&[0]), int(1)), (mi(&[0]), int(1))]).unwrap_err();
        assert!(matches!(e, Error::DuplicateIndex(_)));
        let e = CoeffTable::from_entries(m, 0, [(mi(&[0]), int(1)), (mi(&[1]), int(1))]).unwrap_err();
        assert!(matches!(e, Error::InvalidElement(_)));
    }

    #[test]
    fn large_levels_take_the_parallel_path() {
        // d = 3, N = 12 has levels above the sequential threshold
        let c = multinomial_table(3, 12).unwrap();
        let q = solve_renewal(&c).unwrap();
        assert!(q.iter().all(|(a, v)| *v == if a.degree() == 1 { int(1) } else { int(0) }));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
    }

    fn multi_table(dim: usize, n: usize, unital: bool) -> impl Strategy<Value = MultiTable> {
        let len = (0..=n)
            .map(|k| MultiIndexMonoid::new(dim).level_size(k) as usize)
            .sum::<usize>();
        prop::collection::vec(small_rational(), len).prop_map(move |vals| {
            let mut it = vals.into_iter();
            let mut first = true;
            CoeffTable::from_fn(MultiIndexMonoid::new(dim), n, |_| {
                let v = it.next().unwrap();
                if first && unital {
                    first = false;
                    return int(1);
                }
                first = false;
                v
            })
            .unwrap()
        })
    }

    fn word_table(dim: usize, n: usize) -> impl Strategy<Value = WordTable> {
        let len = (0..=n).map(|k| dim.pow(k as u32)).sum::<usize>();
        prop::collection::vec(small_rational(), len).prop_map(move |vals| {
            let mut it = vals.into_iter();
            CoeffTable::from_fn(WordMonoid::new(dim), n, |_| it.next().unwrap()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn renewal_solution_has_zero_residual(c in multi_table(2, 4, true)) {
            let q = solve_renewal(&c).unwrap();
            prop_assert!(residual(&c, &q).unwrap().is_zero());
            prop_assert!(q.identity_value().is_zero());
            for (a, v) in q.level(1) {
                prop_assert_eq!(v, &c[a]);
            }
        }

        #[test]
        fn renewal_is_stable_under_truncation(c in multi_table(2, 5, true)) {
            let full = solve_renewal(&c).unwrap();
            let low = solve_renewal(&c.truncate(3).unwrap()).unwrap();
            for (a, v) in low.iter() {
                prop_assert_eq!(v, &full[a]);
            }
        }

        #[test]
        fn multi_convolution_is_commutative_and_associative(
            f in multi_table(2, 3, false),
            g in multi_table(2, 3, false),
            h in multi_table(2, 3, false),
        ) {
            prop_assert_eq!(convolve(&f, &g).unwrap(), convolve(&g, &f).unwrap());
            prop_assert_eq!(
                convolve(&convolve(&f, &g).unwrap(), &h).unwrap(),
                convolve(&f, &convolve(&g, &h).unwrap()).unwrap()
            );
        }

        #[test]
        fn word_convolution_is_associative(
            f in word_table(2, 3),
            g in word_table(2, 3),
            h in word_table(2, 3),
        ) {
            prop_assert_eq!(
                convolve(&convolve(&f, &g).unwrap(), &h).unwrap(),
                convolve(&f, &convolve(&g, &h).unwrap()).unwrap()
            );
            let d = delta(WordMonoid::new(2), 3).unwrap();
            prop_assert_eq!(convolve(&d, &f).unwrap(), f.clone());
            prop_assert_eq!(convolve(&f, &d).unwrap(), f);
        }
    }

    #[test]
    fn word_convolution_is_not_commutative() {
        let m = WordMonoid::new(2);
        let f = CoeffTable::from_fn(m, 2, |w| if w.letters() == [1] { int(1) } else { int(0) }).unwrap();
        let g = CoeffTable::from_fn(m, 2, |w| if w.letters() == [2] { int(1) } else { int(0) }).unwrap();
        let fg = convolve(&f, &g).unwrap();
        let gf = convolve(&g, &f).unwrap();
        assert_eq!(fg[&Word::new(vec![1, 2])], int(1));
        assert_eq!(gf[&Word::new(vec![1, 2])], int(0));
        assert_ne!(fg, gf);
    }
}
