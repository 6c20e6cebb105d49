use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_FACTS: &str = include_str!("../../data/default.facts");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactTag {
    TorsionExistence,
    BieberbachNonexistence,
    SpSolvability,
    OrderBound,
    CocycleOrder,
    SemidirectSplit,
}

impl FactTag {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "torsion-existence" => FactTag::TorsionExistence,
            "bieberbach-nonexistence" => FactTag::BieberbachNonexistence,
            "sp-solvability" => FactTag::SpSolvability,
            "order-bound" => FactTag::OrderBound,
            "cocycle-order" => FactTag::CocycleOrder,
            "semidirect-split" => FactTag::SemidirectSplit,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FactTag::TorsionExistence => "torsion-existence",
            FactTag::BieberbachNonexistence => "bieberbach-nonexistence",
            FactTag::SpSolvability => "sp-solvability",
            FactTag::OrderBound => "order-bound",
            FactTag::CocycleOrder => "cocycle-order",
            FactTag::SemidirectSplit => "semidirect-split",
        }
    }
}

/// An external classification result, consumed and never recomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub id: String,
    pub tag: FactTag,
    pub params: BTreeMap<String, String>,
    pub citation: String,
}

impl Fact {
    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    pub fn int(&self, key: &str) -> Option<i64> {
        self.param(key)?.parse().ok()
    }

    pub fn group(&self) -> Option<&str> {
        self.param("group")
    }

    /// Inclusive range from `dims=a..b`.
    pub fn dims(&self) -> Option<(i64, i64)> {
        let (a, b) = self.param("dims")?.split_once("..")?;
        Some((a.parse().ok()?, b.parse().ok()?))
    }

    pub fn covers_dim(&self, d: i64) -> bool {
        self.dims().is_some_and(|(a, b)| a <= d && d <= b)
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{} | {} | {} | {}",
            self.id,
            self.tag.as_str(),
            params.join(" "),
            self.citation
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactTable {
    facts: Vec<Fact>,
}

impl FactTable {
    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.id == id)
    }

    pub fn with_tag(&self, tag: FactTag) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(move |f| f.tag == tag)
    }

    pub fn push(&mut self, fact: Fact) -> Result<()> {
        if fact.citation.trim().is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("fact {} has no citation", fact.id),
            });
        }
        self.facts.push(fact);
        Ok(())
    }

    /// Table without the facts whose id is listed.
    pub fn without(&self, ids: &[&str]) -> FactTable {
        FactTable {
            facts: self
                .facts
                .iter()
                .filter(|f| !ids.contains(&f.id.as_str()))
                .cloned()
                .collect(),
        }
    }
}

/// Line-oriented records "id | tag | k=v ... | citation"; `#` starts a comment.
pub fn parse_facts(text: &str) -> Result<FactTable> {
    let mut table = FactTable::default();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.splitn(4, '|').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err("expected four '|'-separated fields".into()));
        }
        let tag =
            FactTag::parse(fields[1]).ok_or_else(|| err(format!("unknown tag {:?}", fields[1])))?;
        let mut params = BTreeMap::new();
        for kv in fields[2].split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| err(format!("parameter {kv:?} is not key=value")))?;
            params.insert(k.to_string(), v.to_string());
        }
        if fields[0].is_empty() {
            return Err(err("missing identifier".into()));
        }
        if fields[3].is_empty() {
            return Err(err(format!("fact {} has no citation", fields[0])));
        }
        table.facts.push(Fact {
            id: fields[0].to_string(),
            tag,
            params,
            citation: fields[3].to_string(),
        });
    }
    Ok(table)
}

pub fn load_facts(path: &Path) -> Result<FactTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_facts(&text)
}

pub fn default_facts() -> FactTable {
    parse_facts(DEFAULT_FACTS).expect("built-in fact table parses")
}
