use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Character of an irreducible rational representation.
#[derive(Debug, Clone)]
pub struct RationalCharacter {
    pub label: String,
    pub degree: i64,
    pub values: Vec<i64>,
    /// Classes on which the value equals the degree.
    pub kernel: Vec<usize>,
    /// 2 when the Galois-orbit sum was doubled.
    pub schur_multiplier: i64,
    pub symplectic: bool,
    /// Indices of the complex constituents in the character table.
    pub constituents: Vec<usize>,
    /// Frobenius–Schur indicator shared by the constituents.
    pub indicator: i64,
    /// `<chi, chi>`.
    pub norm: i64,
    pub class_function: ClassFunction,
}

impl RationalCharacter {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel == [0]
    }
}

/// Multiplicities over the rational irreducibles of one table, by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterMultiset {
    counts: Vec<u32>,
}

impl CharacterMultiset {
    pub fn empty(size: usize) -> Self {
        CharacterMultiset {
            counts: vec![0; size],
        }
    }

    pub fn single(size: usize, index: usize, mult: u32) -> Self {
        let mut m = Self::empty(size);
        m.counts[index] = mult;
        m
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        CharacterMultiset { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> u32 {
        self.counts[i]
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        CharacterMultiset {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self - other` when `other` is dominated by `self`.
    pub fn sub(&self, other: &Self) -> Option<Self> {
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<_>>()?;
        Some(CharacterMultiset { counts })
    }

    /// Number of constituents counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// Indices with non-zero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len())
            .filter(|&i| self.counts[i] > 0)
            .collect()
    }

    /// All sub-multisets, in lexicographic order of count vectors.
    pub fn submultisets(&self) -> Vec<CharacterMultiset> {
        let mut out = vec![Self::empty(self.counts.len())];
        for (i, &c) in self.counts.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for base in &out {
                for k in 0..=c {
                    let mut m = base.clone();
                    m.counts[i] = k;
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Rational irreducibles of a group; index 0 is the trivial character.
#[derive(Debug, Clone)]
pub struct RationalTable {
    pub table: CharacterTable,
    pub characters: Vec<RationalCharacter>,
}

fn to_i64(v: &Cyclotomic) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Internal(format!("rationalized value {v} is not an integer")))
}

/// Galois-orbit sums of the irreducibles, doubled when every constituent has
/// indicator -1. Labels are `prefix(faithful) + degree`, with letters a, b, ...
/// for equal prefix and degree in lexicographic order of value lists.
pub fn rationalize(
    table: &CharacterTable,
    prefix: &dyn Fn(bool) -> String,
) -> Result<RationalTable> {
    let g = table.group().clone();
    let e = g.exponent() as i64;
    let irr = table.irreducibles();
    let mut orbit_of = vec![usize::MAX; irr.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..irr.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = vec![i];
        for a in (2..e).filter(|a| a.gcd(&e) == 1) {
            let vals: Vec<Cyclotomic> = irr[i].values().iter().map(|v| v.galois(a)).collect();
            let j = irr
                .iter()
                .position(|c| c.values() == vals.as_slice())
                .ok_or_else(|| Error::Internal("Galois conjugate missing from the table".into()))?;
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        for &j in &orbit {
            orbit_of[j] = orbits.len();
        }
        orbits.push(orbit);
    }

    let mut chars = Vec::new();
    for orbit in orbits {
        let indicators: Vec<i64> = orbit
            .iter()
            .map(|&j| irr[j].frobenius_schur())
            .collect::<Result<_>>()?;
        let schur = if indicators.iter().all(|&s| s == -1) {
            2
        } else {
            1
        };
        let mut sum = ClassFunction::zero(g.clone());
        for &j in &orbit {
            sum = sum.add(&irr[j])?;
        }
        let cf = sum.scale(schur);
        let values: Vec<i64> = cf.values().iter().map(to_i64).collect::<Result<_>>()?;
        let degree = values[0];
        let kernel = (0..values.len()).filter(|&c| values[c] == degree).collect();
        let mult = trivial_multiplicity(&cf.exterior_square())?;
        chars.push(RationalCharacter {
            label: String::new(),
            degree,
            values,
            kernel,
            schur_multiplier: schur,
            symplectic: degree % 2 == 0 && mult >= 1,
            norm: orbit.len() as i64 * schur * schur,
            indicator: indicators[0],
            constituents: orbit,
            class_function: cf,
        });
    }
    chars.sort_by(|a, b| {
        (!a.is_trivial(), a.degree, &a.values).cmp(&(!b.is_trivial(), b.degree, &b.values))
    });
    // labels
    let names: Vec<String> = chars
        .iter()
        .map(|c| {
            if c.is_trivial() {
                "1".into()
            } else {
                format!("{}{}", prefix(c.is_faithful()), c.degree)
            }
        })
        .collect();
    for i in 0..chars.len() {
        let same: Vec<usize> = (0..chars.len()).filter(|&j| names[j] == names[i]).collect();
        chars[i].label = if same.len() > 1 && names[i] != "1" {
            let pos = same.iter().position(|&j| j == i).expect("present");
            format!("{}{}", names[i], (b'a' + pos as u8) as char)
        } else {
            names[i].clone()
        };
    }
    Ok(RationalTable {
        table: table.clone(),
        characters: chars,
    })
}

fn trivial_multiplicity(f: &ClassFunction) -> Result<i64> {
    let triv = ClassFunction::trivial(f.group().clone());
    to_i64(&f.inner_product(&triv)?)
}

impl RationalTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn characters(&self) -> &[RationalCharacter] {
        &self.characters
    }

    pub fn character_table(&self) -> &CharacterTable {
        &self.table
    }

    /// Exchanges two labels.
    pub fn swap_labels(&mut self, a: &str, b: &str) -> Result<()> {
        let i = self
            .index_of(a)
            .ok_or_else(|| Error::Contract(format!("no rational character labelled {a:?}")))?;
        let j = self
            .index_of(b)
            .ok_or_else(|| Error::Contract(format!("no rational character labelled {b:?}")))?;
        self.characters[i].label = b.to_string();
        self.characters[j].label = a.to_string();
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.label == label)
    }

    pub fn get(&self, label: &str) -> Result<&RationalCharacter> {
        self.index_of(label)
            .map(|i| &self.characters[i])
            .ok_or_else(|| Error::Contract(format!("no rational character labelled {label:?}")))
    }

    pub fn single(&self, label: &str, mult: u32) -> Result<CharacterMultiset> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::Contract(format!("no rational character labelled {label:?}")))?;
        Ok(CharacterMultiset::single(self.len(), i, mult))
    }

    /// Parses "2 rho4 + rho5" style sums (also accepts `⊕` and `2rho4`).
    pub fn parse_multiset(&self, text: &str) -> Result<CharacterMultiset> {
        let mut m = CharacterMultiset::empty(self.len());
        for part in text.split(['+', '⊕']) {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Contract(format!("empty summand in {text:?}")));
            }
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = part[digits.len()..].trim();
            let k = if digits.is_empty() {
                1
            } else {
                digits
                    .parse::<u32>()
                    .map_err(|_| Error::Contract(format!("bad multiplicity in {part:?}")))?
            };
            // a bare number is a multiple of the trivial character
            let label = if rest.is_empty() { "1" } else { rest };
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::Contract(format!("unknown character {label:?}")))?;
            m.counts[i] += k;
        }
        Ok(m)
    }

    pub fn degree(&self, m: &CharacterMultiset) -> i64 {
        m.counts
            .iter()
            .zip(&self.characters)
            .map(|(&k, c)| k as i64 * c.degree)
            .sum()
    }

    pub fn class_function(&self, m: &CharacterMultiset) -> ClassFunction {
        let mut f = ClassFunction::zero(self.group().clone());
        for (&k, c) in m.counts.iter().zip(&self.characters) {
            if k > 0 {
                f = f
                    .add(&c.class_function.scale(k as i64))
                    .expect("same group");
            }
        }
        f
    }

    /// Unique expression of a rational-valued character over the rational irreducibles.
    pub fn decompose(&self, f: &ClassFunction) -> Result<CharacterMultiset> {
        if !Arc::ptr_eq(f.group(), self.group()) {
            return Err(Error::GroupMismatch);
        }
        let vals: Vec<BigInt> = f
            .integer_values()
            .ok_or_else(|| Error::NotACharacter("values are not rational integers".into()))?;
        let classes = self.group().conjugacy_classes();
        let order = BigInt::from(self.group().order());
        let mut counts = Vec::with_capacity(self.len());
        for c in &self.characters {
            let ip: BigInt = classes
                .iter()
                .enumerate()
                .map(|(i, k)| &vals[i] * BigInt::from(c.values[i]) * BigInt::from(k.size))
                .sum();
            let q = BigRational::new(ip, &order * BigInt::from(c.norm));
            if !q.is_integer() || q.is_negative() {
                return Err(Error::NotACharacter(format!(
                    "multiplicity {q} of {}",
                    c.label
                )));
            }
            counts.push(
                q.to_integer()
                    .to_u32()
                    .ok_or_else(|| Error::NotACharacter("multiplicity too large".into()))?,
            );
        }
        let m = CharacterMultiset { counts };
        if self.class_function(&m).values() != f.values() {
            return Err(Error::NotACharacter(
                "not a sum of rational irreducibles".into(),
            ));
        }
        Ok(m)
    }

    pub fn exterior_square(&self, m: &CharacterMultiset) -> Result<CharacterMultiset> {
        self.decompose(&self.class_function(m).exterior_square())
    }

    pub fn tensor(
        &self,
        a: &CharacterMultiset,
        b: &CharacterMultiset,
    ) -> Result<CharacterMultiset> {
        self.decompose(&self.class_function(a).tensor(&self.class_function(b))?)
    }

    pub fn lie_power(&self, m: &CharacterMultiset, k: usize) -> Result<CharacterMultiset> {
        self.decompose(&self.class_function(m).lie_power(k)?)
    }

    pub fn trivial_multiplicity(&self, m: &CharacterMultiset) -> u32 {
        m.counts[0]
    }

    /// Intersection of the constituent kernels is the identity class alone.
    pub fn faithful(&self, m: &CharacterMultiset) -> bool {
        let r = self.group().conjugacy_classes().len();
        (1..r).all(|cls| {
            m.support()
                .iter()
                .any(|&i| !self.characters[i].kernel.contains(&cls))
        })
    }

    /// Every non-symplectic constituent occurs with even multiplicity.
    pub fn symplectic_realizable(&self, m: &CharacterMultiset) -> bool {
        m.support()
            .iter()
            .all(|&i| self.characters[i].symplectic || m.counts[i].is_multiple_of(2))
    }

    pub fn is_symplectic(&self, label: &str) -> Result<bool> {
        Ok(self.get(label)?.symplectic)
    }

    /// "1 + rho4 + 3 rho6"; "0" when empty.
    pub fn format(&self, m: &CharacterMultiset) -> String {
        let parts: Vec<String> = m
            .support()
            .iter()
            .map(|&i| {
                let l = &self.characters[i].label;
                match m.counts[i] {
                    1 => l.clone(),
                    k if l == "1" => format!("{k}"),
                    k => format!("{k} {l}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// One "label: multiplicity" line per constituent.
    pub fn format_records(&self, m: &CharacterMultiset) -> String {
        let mut s = String::new();
        for i in m.support() {
            let _ = writeln!(s, "{}: {}", self.characters[i].label, m.counts[i]);
        }
        s
    }

    /// Trace-vector match: the multiset whose character has these class values.
    pub fn match_traces(&self, traces: &[i64]) -> Result<CharacterMultiset> {
        let f = ClassFunction::from_integers(self.group().clone(), traces)?;
        self.decompose(&f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;
    use crate::group::catalog::catalog_group;

    fn a5() -> RationalTable {
        let t = character_table(Arc::new(catalog_group("A5").unwrap())).unwrap();
        rationalize(&t, &|_| "rho".into()).unwrap()
    }

    #[test]
    fn a5_rational_degrees() {
        let r = a5();
        let labels: Vec<&str> = r.characters.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1", "rho4", "rho5", "rho6"]);
        assert_eq!(r.get("rho6").unwrap().constituents.len(), 2);
        assert!(r.characters.iter().all(|c| c.schur_multiplier == 1));
    }

    #[test]
    fn a5_wedges() {
        let r = a5();
        let rho4 = r.single("rho4", 1).unwrap();
        assert_eq!(r.format(&r.exterior_square(&rho4).unwrap()), "rho6");
        let two = r.single("rho4", 2).unwrap();
        assert_eq!(
            r.format(&r.exterior_square(&two).unwrap()),
            "1 + rho4 + rho5 + 3 rho6"
        );
        assert_eq!(
            r.format(&r.lie_power(&rho4, 3).unwrap()),
            "rho4 + 2 rho5 + rho6"
        );
        let m = r.parse_multiset("rho5 + rho6").unwrap();
        assert_eq!(r.trivial_multiplicity(&r.exterior_square(&m).unwrap()), 0);
    }

    #[test]
    fn flags() {
        let r = a5();
        assert!(!r.is_symplectic("rho4").unwrap());
        assert!(r.symplectic_realizable(&r.single("rho4", 2).unwrap()));
        assert!(!r.symplectic_realizable(&r.single("rho5", 1).unwrap()));
        assert!(r.faithful(&r.single("rho4", 1).unwrap()));
        assert!(!r.faithful(&r.single("1", 3).unwrap()));
    }

    #[test]
    fn parse_and_format() {
        let r = a5();
        let m = r.parse_multiset("2 + rho4 ⊕ 3rho6").unwrap();
        assert_eq!(r.format(&m), "2 + rho4 + 3 rho6");
        assert_eq!(r.degree(&m), 24);
        assert_eq!(r.format_records(&m), "1: 2\nrho4: 1\nrho6: 3\n");
        assert!(r.parse_multiset("rho9").is_err());
    }

    #[test]
    fn decompose_rejects_non_characters() {
        let r = a5();
        let f = r.get("rho4").unwrap().class_function.scale(-1);
        assert!(matches!(r.decompose(&f), Err(Error::NotACharacter(_))));
        let t = character_table(r.group().clone()).unwrap();
        let three = &t.irreducibles()[1];
        assert!(matches!(r.decompose(three), Err(Error::NotACharacter(_))));
    }

    #[test]
    fn submultisets_enumerated() {
        let m = CharacterMultiset::from_counts(vec![0, 2, 1]);
        let subs = m.submultisets();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|s| s.dominated_by(&m)));
    }
}
