use std::fmt;

use crate::character::CharacterMultiset;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::central_isolator_applies;

use super::catalog::CatalogEntry;
use super::facts::{Fact, FactTable, FactTag};
use super::types::{group_pairs, CandidateType, TypePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Central isolator: p-torsion in the crystallographic quotient forces
    /// the second layer to be central.
    R1,
    /// Split witness N_H(C) against a Bieberbach non-existence bound.
    R2,
    /// Splitting and cocycle-order facts.
    R3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Excluded,
    Survives,
}

#[derive(Debug, Clone)]
pub struct ExclusionReport {
    pub candidate: CandidateType,
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    /// Identifiers of the consumed facts.
    pub facts: Vec<String>,
    pub witness: Vec<String>,
}

struct Found {
    rule: Rule,
    facts: Vec<String>,
    witness: Vec<String>,
}

/// Per-group data shared by all candidates of that group.
struct GroupData<'a> {
    entry: &'a CatalogEntry,
    group: &'a FiniteGroup,
    /// (p, subgroup of order p generated by a class representative, Sylow cyclic)
    prime_subgroups: Vec<(usize, usize, Subgroup, bool)>,
}

impl<'a> GroupData<'a> {
    fn new(entry: &'a CatalogEntry) -> Self {
        let group = entry.table.group().as_ref();
        let mut prime_subgroups = Vec::new();
        for g in group.prime_order_class_representatives() {
            let p = group.element_order(g);
            let c = group.subgroup(&[g]);
            let sylow = group.sylow_subgroup(p);
            let cyclic_sylow = sylow.order() == p;
            prime_subgroups.push((p, g, c, cyclic_sylow));
        }
        GroupData {
            entry,
            group,
            prime_subgroups,
        }
    }

    fn values(&self, m: &CharacterMultiset) -> Vec<i64> {
        let t = &self.entry.table;
        let r = self.group.conjugacy_classes().len();
        (0..r)
            .map(|c| {
                m.support()
                    .iter()
                    .map(|&i| m.get(i) as i64 * t.characters[i].values[c])
                    .sum()
            })
            .collect()
    }

    /// No non-zero vector of the module is fixed by the subgroup.
    fn fixed_point_free(&self, m: &CharacterMultiset, c: &Subgroup) -> bool {
        if m.is_empty() {
            return true;
        }
        let v = self.values(m);
        let s: i64 = c.elements.iter().map(|&x| v[self.group.class_of(x)]).sum();
        s == 0
    }

    fn kernel_contains(&self, m: &CharacterMultiset, x: usize) -> bool {
        let v = self.values(m);
        v[self.group.class_of(x)] == v[0]
    }

    /// Order of H / ker(m).
    fn image_order(&self, m: &CharacterMultiset) -> usize {
        let k = (0..self.group.order())
            .filter(|&x| self.kernel_contains(m, x))
            .count();
        self.group.order() / k
    }

    /// Order and cyclicity of the image of `s` in H / ker(m).
    fn image_of(&self, s: &Subgroup, m: &CharacterMultiset) -> (usize, bool) {
        let in_k = s
            .elements
            .iter()
            .filter(|&&x| self.kernel_contains(m, x))
            .count();
        let order = s.order() / in_k;
        let cyclic = s.elements.iter().any(|&x| {
            let mut y = x;
            let mut k = 1;
            while !self.kernel_contains(m, y) {
                y = self.group.mul(y, x);
                k += 1;
            }
            k == order
        });
        (order, cyclic)
    }
}

fn quotient_id<'c>(
    catalog: &'c [CatalogEntry],
    data: &GroupData,
    t: &CharacterMultiset,
) -> Option<&'c str> {
    let order = data.image_order(t);
    if order == data.group.order() {
        return catalog.iter().find(|e| e.id == data.entry.id).map(|e| e.id);
    }
    catalog
        .iter()
        .find(|e| e.table.group().order() == order && e.table.group().is_perfect())
        .map(|e| e.id)
}

fn bieberbach_bound(facts: &FactTable, order: usize, cyclic: bool, rank: i64) -> Option<&Fact> {
    facts.with_tag(FactTag::BieberbachNonexistence).find(|f| {
        f.int("order") == Some(order as i64)
            && f.param("cyclic").map(|c| c == "true") == Some(cyclic)
            && f.int("maxdim").is_some_and(|d| rank <= d)
    })
}

fn rule_r1(
    catalog: &[CatalogEntry],
    data: &GroupData,
    c: &CandidateType,
    facts: &FactTable,
) -> Option<Found> {
    let nontrivial = c.s_23.support().iter().any(|&i| i != 0);
    if !nontrivial {
        return None;
    }
    let t = &data.entry.table;
    for (p, g, sub, _) in &data.prime_subgroups {
        if !central_isolator_applies(*p, c.n as usize, *g, data.group) {
            continue;
        }
        for part in c.s_ab.submultisets() {
            if part.is_empty() {
                continue;
            }
            let rest = c.s_ab.sub(&part).expect("sub-multiset");
            if !data.fixed_point_free(&rest, sub) {
                continue;
            }
            let lift = format!(
                "{} fixes no vector of C{p}, so p-torsion lifts",
                if rest.is_empty() {
                    "0".into()
                } else {
                    t.format(&rest)
                }
            );
            let Some(qid) = quotient_id(catalog, data, &part) else {
                continue;
            };
            let deg = t.degree(&part);
            let fact = facts.with_tag(FactTag::TorsionExistence).find(|f| {
                f.group() == Some(qid) && f.covers_dim(deg) && f.int("p") == Some(*p as i64)
            });
            if let Some(f) = fact {
                return Some(Found {
                    rule: Rule::R1,
                    facts: vec![f.id.clone()],
                    witness: vec![
                        format!("summand {} gives a {deg}-dimensional quotient with holonomy {qid}: {p}-torsion", t.format(&part)),
                        lift,
                        format!("an element of order {p} > n = {} normally generates {}", c.n, data.entry.name),
                        format!("second layer {} is a non-trivial module, not central", t.format(&c.s_23)),
                    ],
                });
            }
        }
    }
    None
}

fn rule_r2(data: &GroupData, c: &CandidateType, facts: &FactTable) -> Option<Found> {
    let t = &data.entry.table;
    for (p, _, sub, cyclic_sylow) in &data.prime_subgroups {
        if !cyclic_sylow {
            continue;
        }
        let normalizer = data.group.normalizer(sub);
        for part in c.s_ab.submultisets() {
            if part.is_empty() || !data.fixed_point_free(&part, sub) {
                continue;
            }
            let rest = c.s_ab.sub(&part).expect("sub-multiset");
            let rank = t.degree(&rest) + c.n;
            let (order, cyclic) = data.image_of(&normalizer, &part);
            if let Some(f) = bieberbach_bound(facts, order, cyclic, rank) {
                return Some(Found {
                    rule: Rule::R2,
                    facts: vec![f.id.clone()],
                    witness: vec![
                        format!(
                            "Sylow {p}-subgroup is cyclic and fixes no vector of {}",
                            t.format(&part)
                        ),
                        format!(
                            "the quotient splits over N(C{p}), image of order {order} ({})",
                            f.param("witness").unwrap_or("?")
                        ),
                        format!(
                            "its preimage is torsion free of Hirsch length {rank} <= {}",
                            f.int("maxdim").unwrap_or(0)
                        ),
                    ],
                });
            }
        }
    }
    None
}

fn rule_r3(data: &GroupData, c: &CandidateType, facts: &FactTable) -> Option<Found> {
    let id = data.entry.id;
    for f in facts.with_tag(FactTag::SemidirectSplit) {
        if f.group() == Some(id) && f.covers_dim(c.m) && c.n <= 3 {
            return Some(Found {
                rule: Rule::R3,
                facts: vec![f.id.clone()],
                witness: vec![
                    format!(
                        "every {}-dimensional crystallographic group with holonomy {} splits",
                        c.m, data.entry.name
                    ),
                    format!(
                        "a torsion-free extension of the non-abelian {} by Z^{} is impossible",
                        data.entry.name, c.n
                    ),
                ],
            });
        }
    }
    for f in facts.with_tag(FactTag::CocycleOrder) {
        if f.group() != Some(id) || !f.covers_dim(c.m) {
            continue;
        }
        let q = f.int("max").unwrap_or(1).max(1) as usize;
        for (p, _, sub, cyclic_sylow) in &data.prime_subgroups {
            if !cyclic_sylow {
                continue;
            }
            let w = data.group.normalizer(sub);
            if gcd(w.order(), q) != 1 {
                continue;
            }
            let cyclic = data.group.is_cyclic(&w);
            if let Some(b) = bieberbach_bound(facts, w.order(), cyclic, c.n) {
                return Some(Found {
                    rule: Rule::R3,
                    facts: vec![f.id.clone(), b.id.clone()],
                    witness: vec![
                        format!("extension classes have order dividing {q}, so the quotient splits over N(C{p}) of order {}", w.order()),
                        format!("its preimage is torsion free of Hirsch length {} <= {}", c.n, b.int("maxdim").unwrap_or(0)),
                    ],
                });
            }
        }
    }
    None
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Applies R1, R2, R3 in order to every candidate.
pub fn apply_exclusions(
    catalog: &[CatalogEntry],
    candidates: &[CandidateType],
    facts: &FactTable,
) -> Result<Vec<ExclusionReport>> {
    let datas: Vec<GroupData> = catalog.iter().map(GroupData::new).collect();
    let mut out = Vec::with_capacity(candidates.len());
    for c in candidates {
        let data = datas
            .iter()
            .find(|d| d.entry.id == c.group)
            .ok_or_else(|| Error::UnknownGroup(c.group.to_string()))?;
        let found = rule_r1(catalog, data, c, facts)
            .or_else(|| rule_r2(data, c, facts))
            .or_else(|| rule_r3(data, c, facts));
        out.push(match found {
            Some(f) => ExclusionReport {
                candidate: c.clone(),
                verdict: Verdict::Excluded,
                rule: Some(f.rule),
                facts: f.facts,
                witness: f.witness,
            },
            None => ExclusionReport {
                candidate: c.clone(),
                verdict: Verdict::Survives,
                rule: None,
                facts: vec![],
                witness: vec![],
            },
        });
    }
    Ok(out)
}

/// A pair survives when at least one of its witnesses does.
pub fn surviving_pairs(reports: &[ExclusionReport]) -> Vec<TypePair> {
    let survivors: Vec<CandidateType> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Survives)
        .map(|r| r.candidate.clone())
        .collect();
    group_pairs(&survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{build_catalog, default_facts, enumerate_types};

    fn keys(reports: &[ExclusionReport]) -> Vec<(&'static str, i64, i64)> {
        surviving_pairs(reports)
            .iter()
            .map(|p| (p.group, p.m, p.n))
            .collect()
    }

    #[test]
    fn rules_and_monotonicity() {
        let cat = build_catalog().unwrap();
        let cands = enumerate_types(&cat, 14).unwrap();
        let facts = default_facts();
        let reps = apply_exclusions(&cat, &cands, &facts).unwrap();
        let find = |g: &str, m: i64, n: i64| {
            reps.iter()
                .find(|r| r.candidate.group == g && r.candidate.m == m && r.candidate.n == n)
                .unwrap()
        };
        let r = find("A5", 5, 4);
        assert_eq!((r.verdict, r.rule), (Verdict::Excluded, Some(Rule::R1)));
        assert_eq!(r.facts, ["torsion-a5"]);
        assert_eq!(find("A5", 4, 6).verdict, Verdict::Survives);
        for r in reps
            .iter()
            .filter(|r| r.candidate.group == "SL25" && r.candidate.m == 8)
        {
            assert_eq!(r.rule, Some(Rule::R2));
            assert_eq!(r.facts, ["bieb-borel20"]);
        }
        assert!(reps
            .iter()
            .filter(|r| r.verdict == Verdict::Excluded)
            .all(|r| !r.facts.is_empty() && !r.witness.is_empty()));

        let none = apply_exclusions(&cat, &cands, &FactTable::default()).unwrap();
        assert!(none.iter().all(|r| r.verdict == Verdict::Survives));

        let base = keys(&reps);
        for f in facts.facts() {
            let fewer = keys(&apply_exclusions(&cat, &cands, &facts.without(&[&f.id])).unwrap());
            assert!(base.iter().all(|k| fewer.contains(k)), "{}", f.id);
        }
    }
}
