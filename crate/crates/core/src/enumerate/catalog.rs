use std::sync::Arc;

use crate::character::{character_table, rationalize, CharacterMultiset, RationalTable};
use crate::error::{Error, Result};
use crate::group::catalog::{catalog_group, CATALOG_IDS};

/// One minimal perfect group with its rational irreducibles and the
/// exterior squares and pairwise tensor products of those characters.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub name: &'static str,
    pub table: RationalTable,
    wedges: Vec<CharacterMultiset>,
    tensors: Vec<Vec<CharacterMultiset>>,
}

struct Spec {
    id: &'static str,
    name: &'static str,
    faithful: &'static str,
    other: &'static str,
    /// Degrees of the characters checked at build time.
    degrees: &'static [i64],
    /// Only faithful characters of degree <= 10 are checked for non-simple groups.
    simple: bool,
    swaps: &'static [(&'static str, &'static str)],
}

const SPECS: [Spec; 6] = [
    Spec {
        id: "A5",
        name: "A5",
        faithful: "rho",
        other: "rho",
        degrees: &[4, 5, 6],
        simple: true,
        swaps: &[],
    },
    Spec {
        id: "PSL27",
        name: "PSL(2,7)",
        faithful: "tau",
        other: "tau",
        degrees: &[6, 6, 7, 8],
        simple: true,
        swaps: &[],
    },
    Spec {
        id: "SL28",
        name: "SL(2,8)",
        faithful: "psi",
        other: "psi",
        degrees: &[7, 8, 21, 27],
        simple: true,
        swaps: &[],
    },
    // pi8a is the degree-8 character whose exterior square has three trivial summands
    Spec {
        id: "SL25",
        name: "SL(2,5)",
        faithful: "pi",
        other: "rhohat",
        degrees: &[8, 8],
        simple: false,
        swaps: &[("pi8a", "pi8b")],
    },
    Spec {
        id: "SL27",
        name: "SL(2,7)",
        faithful: "xi",
        other: "tauhat",
        degrees: &[8],
        simple: false,
        swaps: &[],
    },
    Spec {
        id: "L32N23",
        name: "L3(2)N2^3",
        faithful: "lambda",
        other: "tauhat",
        degrees: &[7, 7],
        simple: false,
        swaps: &[],
    },
];

fn spec(id: &str) -> Result<&'static Spec> {
    SPECS
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownGroup(id.to_string()))
}

/// Display name of a catalog group identifier.
pub fn display_name(id: &str) -> &str {
    spec(id).map(|s| s.name).unwrap_or(id)
}

/// Catalog identifier for a display name or identifier.
pub fn resolve_id(name: &str) -> Result<&'static str> {
    SPECS
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(name) || s.name.eq_ignore_ascii_case(name))
        .map(|s| s.id)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Rational table of a catalog group with the catalog labels.
pub fn labelled_table(id: &str) -> Result<RationalTable> {
    let s = spec(id)?;
    let g = Arc::new(catalog_group(id)?);
    let t = character_table(g)?;
    let mut rt = rationalize(&t, &|faithful| {
        if faithful { s.faithful } else { s.other }.to_string()
    })?;
    for (a, b) in s.swaps {
        rt.swap_labels(a, b)?;
    }
    Ok(rt)
}

impl CatalogEntry {
    pub fn build(id: &str) -> Result<Self> {
        let s = spec(id)?;
        let table = labelled_table(id)?;
        let checked: Vec<i64> = table
            .characters
            .iter()
            .filter(|c| !c.is_trivial() && (s.simple || (c.is_faithful() && c.degree <= 10)))
            .map(|c| c.degree)
            .collect();
        if checked != s.degrees {
            return Err(Error::CatalogMismatch {
                group: s.name.to_string(),
                detail: format!("degrees {checked:?}, expected {:?}", s.degrees),
            });
        }
        let r = table.len();
        let single = |i: usize| CharacterMultiset::single(r, i, 1);
        let wedges = (0..r)
            .map(|i| table.exterior_square(&single(i)))
            .collect::<Result<Vec<_>>>()?;
        let tensors = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| table.tensor(&single(i), &single(j)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogEntry {
            id: s.id,
            name: s.name,
            table,
            wedges,
            tensors,
        })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.table.characters[i].label
    }

    pub fn degree(&self, m: &CharacterMultiset) -> i64 {
        self.table.degree(m)
    }

    pub fn format(&self, m: &CharacterMultiset) -> String {
        self.table.format(m)
    }

    /// Exterior square of a single irreducible from the cache.
    pub fn wedge_of(&self, i: usize) -> &CharacterMultiset {
        &self.wedges[i]
    }

    pub fn tensor_of(&self, i: usize, j: usize) -> &CharacterMultiset {
        &self.tensors[i][j]
    }

    /// `wedge(sum k_i x_i) = sum k_i wedge(x_i) + sum C(k_i, 2) x_i x_i + sum_{i<j} k_i k_j x_i x_j`.
    pub fn wedge(&self, m: &CharacterMultiset) -> CharacterMultiset {
        let r = self.len();
        let mut counts = vec![0u32; r];
        let support = m.support();
        let mut add = |x: &CharacterMultiset, k: u32| {
            for (c, v) in counts.iter_mut().zip(x.counts()) {
                *c += k * v;
            }
        };
        for (a, &i) in support.iter().enumerate() {
            let k = m.get(i);
            add(&self.wedges[i], k);
            add(&self.tensors[i][i], k * (k - 1) / 2);
            for &j in &support[a + 1..] {
                add(&self.tensors[i][j], k * m.get(j));
            }
        }
        CharacterMultiset::from_counts(counts)
    }

    pub fn tensor(&self, a: &CharacterMultiset, b: &CharacterMultiset) -> CharacterMultiset {
        let mut counts = vec![0u32; self.len()];
        for i in a.support() {
            for j in b.support() {
                let k = a.get(i) * b.get(j);
                for (c, v) in counts.iter_mut().zip(self.tensors[i][j].counts()) {
                    *c += k * v;
                }
            }
        }
        CharacterMultiset::from_counts(counts)
    }
}

/// Entries for the six catalog groups, in catalog order.
pub fn build_catalog() -> Result<Vec<CatalogEntry>> {
    CATALOG_IDS
        .iter()
        .map(|id| CatalogEntry::build(id))
        .collect()
}
