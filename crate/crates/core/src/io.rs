//! JSON form of coefficient tables.
//!
//! Entries are written in canonical order with reduced fractions, so equal
//! tables serialize to identical bytes.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monoid::{GradedMonoid, IndexKind, MultiIndexMonoid, WordMonoid};
use crate::rational::{self, Rational};
use crate::series::{CoeffTable, MultiTable, WordTable};

/// What the values of a table file mean. Absent means coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableContent {
    Coefficients,
    SquaredNorms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub idx: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub val: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub kind: IndexKind,
    pub dim: usize,
    pub max_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content: Option<TableContent>,
    pub entries: Vec<EntryJson>,
}

impl TableJson {
    pub fn from_table<M: GradedMonoid>(t: &CoeffTable<M>) -> Self {
        TableJson {
            kind: M::KIND,
            dim: t.monoid().dim(),
            max_degree: t.max_degree(),
            content: None,
            entries: t
                .iter()
                .map(|(k, v)| EntryJson {
                    idx: t.monoid().to_raw(k),
                    val: v.clone(),
                })
                .collect(),
        }
    }

    pub fn with_content(mut self, content: TableContent) -> Self {
        self.content = Some(content);
        self
    }

    pub fn content(&self) -> TableContent {
        self.content.unwrap_or(TableContent::Coefficients)
    }

    pub fn into_table<M: GradedMonoid>(self) -> Result<CoeffTable<M>> {
        if self.kind != M::KIND {
            return Err(Error::KindMismatch {
                expected: M::KIND.to_string(),
                found: self.kind.to_string(),
            });
        }
        if self.dim == 0 {
            return Err(Error::Malformed("dim must be at least 1".into()));
        }
        let monoid = M::with_dim(self.dim);
        let entries = self
            .entries
            .into_iter()
            .map(|e| monoid.parse_raw(&e.idx).map(|k| (k, e.val)))
            .collect::<Result<Vec<_>>>()?;
        CoeffTable::from_entries(monoid, self.max_degree, entries)
    }

    pub fn into_any(self) -> Result<AnyTable> {
        match self.kind {
            IndexKind::MultiIndex => self.into_table().map(AnyTable::Multi),
            IndexKind::Word => self.into_table().map(AnyTable::Word),
        }
    }
}

impl<M: GradedMonoid> Serialize for CoeffTable<M> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson::from_table(self).serialize(s)
    }
}

/// A parsed table of either index kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTable {
    Multi(MultiTable),
    Word(WordTable),
}

impl AnyTable {
    pub fn kind(&self) -> IndexKind {
        match self {
            AnyTable::Multi(_) => IndexKind::MultiIndex,
            AnyTable::Word(_) => IndexKind::Word,
        }
    }
}

pub fn parse_table_json(text: &str) -> Result<TableJson> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn multi_table_from_json(text: &str) -> Result<MultiTable> {
    parse_table_json(text)?.into_table::<MultiIndexMonoid>()
}

pub fn word_table_from_json(text: &str) -> Result<WordTable> {
    parse_table_json(text)?.into_table::<WordMonoid>()
}

/// Pretty JSON followed by a newline.
pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Malformed(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
