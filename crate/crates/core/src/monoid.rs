//! Strongly graded monoids: multi-indices `N_0^d` under addition and words
//! over the alphabet `{1, ..., d}` under concatenation.
//!
//! Both satisfy the two structural conditions the renewal solver relies on:
//! the degree function has trivial kernel, and left factors of degree one
//! cancel on the right. Every level is enumerated in graded lexicographic
//! order, which is the canonical order of all tables and all JSON output.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    MultiIndex,
    Word,
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexKind::MultiIndex => f.write_str("multiindex"),
            IndexKind::Word => f.write_str("word"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedIndexSet {
    pub kind: IndexKind,
    pub dim: usize,
}

/// Element of `N_0^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// Unit vector `e_k` with a zero-based `k`.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut c = vec![0; dim];
        c[k] = 1;
        MultiIndex(c)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + e_k`.
    pub fn bump(&self, k: usize) -> MultiIndex {
        let mut c = self.0.clone();
        c[k] += 1;
        MultiIndex(c)
    }

    /// `self - other`, or `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `|α|! / α!` as an integer.
    pub fn multinomial(&self) -> BigInt {
        let den = self
            .0
            .iter()
            .fold(BigInt::from(1), |acc, &a| acc * factorial(a as u64));
        factorial(self.degree() as u64) / den
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Element of the free monoid on letters `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("\"\"");
        }
        let sep = if self.0.iter().all(|&l| l < 10) { "" } else { "." };
        f.write_str("\"")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("\"")
    }
}

/// Common interface of the shipped graded monoids.
pub trait GradedMonoid: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Element: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync;

    const KIND: IndexKind;

    fn with_dim(dim: usize) -> Self;

    fn dim(&self) -> usize;

    fn index_set(&self) -> GradedIndexSet {
        GradedIndexSet {
            kind: Self::KIND,
            dim: self.dim(),
        }
    }

    fn identity(&self) -> Self::Element;

    fn degree(&self, x: &Self::Element) -> usize;

    /// Checks that `x` belongs to this monoid (dimension, letter range).
    fn validate(&self, x: &Self::Element) -> Result<()>;

    fn compose(&self, x: &Self::Element, y: &Self::Element) -> Result<Self::Element>;

    /// The pairs `(u, v)` with `uv = w`.
    fn decompositions(&self, w: &Self::Element) -> Vec<(Self::Element, Self::Element)>;

    /// The elements `v` with `xv = w` for some `x` of degree one.
    fn predecessors(&self, w: &Self::Element) -> Result<Vec<Self::Element>>;

    /// All elements of degree `n` in canonical order.
    fn enumerate(&self, n: usize) -> Vec<Self::Element>;

    /// Number of elements of degree `n`, saturating.
    fn level_size(&self, n: usize) -> u128;

    /// Degree-one elements in canonical order.
    fn generators(&self) -> Vec<Self::Element> {
        self.enumerate(1)
    }

    fn parse_raw(&self, raw: &[u32]) -> Result<Self::Element>;

    fn to_raw(&self, x: &Self::Element) -> Vec<u32>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndexMonoid {
    dim: usize,
}

impl MultiIndexMonoid {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        MultiIndexMonoid { dim }
    }
}

fn compositions(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if parts == 1 {
        prefix.push(total);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for a in 0..=total {
        prefix.push(a);
        compositions(parts - 1, total - a, prefix, out);
        prefix.pop();
    }
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

impl GradedMonoid for MultiIndexMonoid {
    type Element = MultiIndex;

    const KIND: IndexKind = IndexKind::MultiIndex;

    fn with_dim(dim: usize) -> Self {
        MultiIndexMonoid::new(dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn identity(&self) -> MultiIndex {
        MultiIndex::zero(self.dim)
    }

    fn degree(&self, x: &MultiIndex) -> usize {
        x.degree()
    }

    fn validate(&self, x: &MultiIndex) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn compose(&self, x: &MultiIndex, y: &MultiIndex) -> Result<MultiIndex> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(x.add(y))
    }

    fn decompositions(&self, w: &MultiIndex) -> Vec<(MultiIndex, MultiIndex)> {
        // odometer over all β ≤ w, ascending lexicographic
        let bound = w.components();
        let mut beta = vec![0u32; bound.len()];
        let mut out = Vec::new();
        loop {
            let b = MultiIndex(beta.clone());
            let rest = w.checked_sub(&b).expect("beta <= w");
            out.push((b, rest));
            let mut k = bound.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if beta[k] < bound[k] {
                    beta[k] += 1;
                    for slot in beta.iter_mut().skip(k + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }

    fn predecessors(&self, w: &MultiIndex) -> Result<Vec<MultiIndex>> {
        if w.is_zero() {
            return Err(Error::IdentityHasNoPredecessors);
        }
        Ok((0..self.dim)
            .filter(|&k| w.0[k] > 0)
            .map(|k| {
                let mut c = w.0.clone();
                c[k] -= 1;
                MultiIndex(c)
            })
            .collect())
    }

    fn enumerate(&self, n: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        compositions(self.dim, n as u32, &mut Vec::with_capacity(self.dim), &mut out);
        out
    }

    fn level_size(&self, n: usize) -> u128 {
        binomial_u128((n + self.dim - 1) as u128, (self.dim - 1) as u128)
    }

    fn generators(&self) -> Vec<MultiIndex> {
        // e_1, ..., e_d; the letter order, not the lexicographic one
        (0..self.dim).map(|k| MultiIndex::unit(self.dim, k)).collect()
    }

    fn parse_raw(&self, raw: &[u32]) -> Result<MultiIndex> {
        let x = MultiIndex(raw.to_vec());
        self.validate(&x)?;
        Ok(x)
    }

    fn to_raw(&self, x: &MultiIndex) -> Vec<u32> {
        x.0.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordMonoid {
    dim: usize,
}

impl WordMonoid {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "alphabet must be non-empty");
        WordMonoid { dim }
    }

    /// Letter `k` (zero-based) as a one-letter word.
    pub fn letter(&self, k: usize) -> Word {
        Word(vec![k as u32 + 1])
    }
}

impl GradedMonoid for WordMonoid {
    type Element = Word;

    const KIND: IndexKind = IndexKind::Word;

    fn with_dim(dim: usize) -> Self {
        WordMonoid::new(dim)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn degree(&self, x: &Word) -> usize {
        x.len()
    }

    fn validate(&self, x: &Word) -> Result<()> {
        match x.0.iter().find(|&&l| l == 0 || l as usize > self.dim) {
            Some(l) => Err(Error::InvalidElement(format!(
                "letter {l} outside 1..={}",
                self.dim
            ))),
            None => Ok(()),
        }
    }

    fn compose(&self, x: &Word, y: &Word) -> Result<Word> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(x.concat(y))
    }

    fn decompositions(&self, w: &Word) -> Vec<(Word, Word)> {
        (0..=w.len())
            .map(|i| (Word(w.0[..i].to_vec()), Word(w.0[i..].to_vec())))
            .collect()
    }

    fn predecessors(&self, w: &Word) -> Result<Vec<Word>> {
        if w.is_empty() {
            return Err(Error::IdentityHasNoPredecessors);
        }
        Ok(vec![Word(w.0[1..].to_vec())])
    }

    fn enumerate(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = vec![1u32; n];
        loop {
            out.push(Word(cur.clone()));
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if (cur[k] as usize) < self.dim {
                    cur[k] += 1;
                    for slot in cur.iter_mut().skip(k + 1) {
                        *slot = 1;
                    }
                    break;
                }
            }
        }
    }

    fn level_size(&self, n: usize) -> u128 {
        (self.dim as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
    }

    fn parse_raw(&self, raw: &[u32]) -> Result<Word> {
        let w = Word(raw.to_vec());
        self.validate(&w)?;
        Ok(w)
    }

    fn to_raw(&self, x: &Word) -> Vec<u32> {
        x.0.clone()
    }
}

pub fn partial_leq(alpha: &MultiIndex, beta: &MultiIndex) -> Result<bool> {
    if alpha.dim() != beta.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            found: beta.dim(),
        });
    }
    Ok(alpha.leq(beta))
}

/// `N(α) = |α|!/α!`, the number of words with letter counts `α`.
pub fn multinomial(alpha: &MultiIndex) -> Rational {
    Rational::from_integer(alpha.multinomial())
}

/// Letter counts of `w`: the canonical map from words onto multi-indices.
pub fn abelianize(w: &Word, dim: usize) -> MultiIndex {
    let mut c = vec![0u32; dim];
    for &l in w.letters() {
        c[l as usize - 1] += 1;
    }
    MultiIndex(c)
}

/// All words with letter counts `alpha`, in lexicographic order.
pub fn fiber(alpha: &MultiIndex) -> Vec<Word> {
    let mut letters: Vec<u32> = alpha
        .components()
        .iter()
        .enumerate()
        .flat_map(|(k, &a)| std::iter::repeat_n(k as u32 + 1, a as usize))
        .collect();
    let mut out = vec![Word(letters.clone())];
    while next_permutation(&mut letters) {
        out.push(Word(letters.clone()));
    }
    out
}

fn next_permutation(xs: &mut [u32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
