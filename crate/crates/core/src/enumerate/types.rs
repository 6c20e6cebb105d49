use crate::character::CharacterMultiset;
use crate::error::{Error, Result};

use super::catalog::CatalogEntry;

/// Candidate lower-central data for a virtually nilpotent S with holonomy H:
/// rational modules for N^ab, N_{2/3} and optionally N_{3/4}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateType {
    pub group: &'static str,
    pub s_ab: CharacterMultiset,
    pub s_23: CharacterMultiset,
    pub s_34: Option<CharacterMultiset>,
    /// Non-empty options for the next layer within the Hirsch-length budget.
    pub s_45: Vec<CharacterMultiset>,
    pub m: i64,
    pub n: i64,
}

impl CandidateType {
    pub fn hirsch_length(&self, entry: &CatalogEntry) -> i64 {
        self.m + self.n + self.s_34.as_ref().map_or(0, |s| entry.degree(s))
    }

    pub fn witness(&self, entry: &CatalogEntry) -> String {
        let mut s = format!(
            "ab = {}; 2/3 = {}",
            entry.format(&self.s_ab),
            entry.format(&self.s_23)
        );
        if let Some(t) = &self.s_34 {
            s.push_str(&format!("; 3/4 = {}", entry.format(t)));
        }
        s
    }
}

/// Candidates sharing a group and type [m, n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePair {
    pub group: &'static str,
    pub m: i64,
    pub n: i64,
    pub witnesses: Vec<CandidateType>,
}

/// Sub-multisets of `bound` of degree at most `max_degree`, empty one included.
pub fn bounded_submultisets(
    entry: &CatalogEntry,
    bound: &CharacterMultiset,
    max_degree: i64,
) -> Vec<CharacterMultiset> {
    fn go(
        entry: &CatalogEntry,
        bound: &CharacterMultiset,
        i: usize,
        left: i64,
        cur: &mut Vec<u32>,
        out: &mut Vec<CharacterMultiset>,
    ) {
        if i == cur.len() {
            out.push(CharacterMultiset::from_counts(cur.clone()));
            return;
        }
        let d = entry.table.characters[i].degree;
        let mut k = 0;
        while k <= bound.get(i) && k as i64 * d <= left {
            cur[i] = k;
            go(entry, bound, i + 1, left - k as i64 * d, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(
        entry,
        bound,
        0,
        max_degree,
        &mut vec![0; entry.len()],
        &mut out,
    );
    out.sort();
    out
}

/// Multisets of non-trivial irreducibles with degree in 1..=max_degree.
fn modules(entry: &CatalogEntry, max_degree: i64) -> Vec<CharacterMultiset> {
    let mut bound = vec![u32::MAX; entry.len()];
    bound[0] = 0;
    for (b, c) in bound.iter_mut().zip(&entry.table.characters) {
        *b = (*b).min((max_degree / c.degree) as u32);
    }
    bounded_submultisets(entry, &CharacterMultiset::from_counts(bound), max_degree)
        .into_iter()
        .filter(|m| !m.is_empty())
        .collect()
}

/// A split S_ab = V0 + V1 with V1 carrying a non-singular invariant
/// alternating form: V1 of even degree at least 6, V0 empty or of degree at least 4.
pub fn symplectic_split(
    entry: &CatalogEntry,
    s_ab: &CharacterMultiset,
) -> Option<(CharacterMultiset, CharacterMultiset)> {
    let t = &entry.table;
    for v1 in s_ab.submultisets() {
        let d1 = t.degree(&v1);
        if d1 < 6 || d1 % 2 != 0 || !t.symplectic_realizable(&v1) {
            continue;
        }
        let v0 = s_ab.sub(&v1).expect("sub-multiset");
        let d0 = t.degree(&v0);
        if d0 == 0 || d0 >= 4 {
            return Some((v0, v1));
        }
    }
    None
}

fn check_hmax(h_max: i64) -> Result<()> {
    if h_max > 14 {
        return Err(Error::OutOfScope(format!(
            "Hirsch length {h_max} is beyond the tabulated range 14"
        )));
    }
    Ok(())
}

/// All (H, S_ab, S_23) meeting the five conditions, in deterministic order.
pub fn enumerate_types(catalog: &[CatalogEntry], h_max: i64) -> Result<Vec<CandidateType>> {
    check_hmax(h_max)?;
    let mut out = Vec::new();
    for entry in catalog {
        let t = &entry.table;
        for s_ab in modules(entry, h_max - 1) {
            if !t.faithful(&s_ab) {
                continue;
            }
            let m = t.degree(&s_ab);
            let wedge = entry.wedge(&s_ab);
            let split_ok = symplectic_split(entry, &s_ab).is_some();
            for s_23 in bounded_submultisets(entry, &wedge, h_max - m) {
                if s_23.is_empty() || (s_23.get(0) > 0 && !split_ok) {
                    continue;
                }
                let n = t.degree(&s_23);
                out.push(CandidateType {
                    group: entry.id,
                    s_ab: s_ab.clone(),
                    s_23,
                    s_34: None,
                    s_45: Vec::new(),
                    m,
                    n,
                });
            }
        }
    }
    sort_candidates(catalog, &mut out);
    Ok(out)
}

fn sort_candidates(catalog: &[CatalogEntry], cs: &mut [CandidateType]) {
    let pos = |id: &str| {
        catalog
            .iter()
            .position(|e| e.id == id)
            .unwrap_or(usize::MAX)
    };
    cs.sort_by(|a, b| {
        (pos(a.group), a.m, a.n, &a.s_ab, &a.s_23, &a.s_34).cmp(&(
            pos(b.group),
            b.m,
            b.n,
            &b.s_ab,
            &b.s_23,
            &b.s_34,
        ))
    });
}

/// Candidates with a non-empty third layer S_34 <= S_ab (x) S_23 inside the
/// budget, each carrying its non-empty fourth-layer options S_45 <= S_ab (x) S_34.
pub fn extend_types_gamma3(
    catalog: &[CatalogEntry],
    candidates: &[CandidateType],
    h_max: i64,
) -> Vec<CandidateType> {
    let mut out = Vec::new();
    for c in candidates {
        let Some(entry) = catalog.iter().find(|e| e.id == c.group) else {
            continue;
        };
        let budget = h_max - c.m - c.n;
        if budget <= 0 {
            continue;
        }
        let bound = entry.tensor(&c.s_ab, &c.s_23);
        for s_34 in bounded_submultisets(entry, &bound, budget) {
            if s_34.is_empty() {
                continue;
            }
            let rest = budget - entry.degree(&s_34);
            let next = entry.tensor(&c.s_ab, &s_34);
            let s_45 = bounded_submultisets(entry, &next, rest)
                .into_iter()
                .filter(|x| !x.is_empty())
                .collect();
            out.push(CandidateType {
                s_34: Some(s_34),
                s_45,
                ..c.clone()
            });
        }
    }
    sort_candidates(catalog, &mut out);
    out
}

/// Groups candidates by (H, m, n), keeping candidate order.
pub fn group_pairs(candidates: &[CandidateType]) -> Vec<TypePair> {
    let mut out: Vec<TypePair> = Vec::new();
    for c in candidates {
        match out.last_mut() {
            Some(p) if p.group == c.group && p.m == c.m && p.n == c.n => {
                p.witnesses.push(c.clone())
            }
            _ => out.push(TypePair {
                group: c.group,
                m: c.m,
                n: c.n,
                witnesses: vec![c.clone()],
            }),
        }
    }
    out
}

/// Re-checks the five conditions from the character table alone.
pub fn verify_candidate(
    entry: &CatalogEntry,
    c: &CandidateType,
    h_max: i64,
) -> std::result::Result<(), String> {
    let t = &entry.table;
    if !t.faithful(&c.s_ab) {
        return Err("abelianization module is not faithful".into());
    }
    if c.s_ab.get(0) > 0 {
        return Err("abelianization module has a trivial summand".into());
    }
    if t.degree(&c.s_ab) != c.m || t.degree(&c.s_23) != c.n {
        return Err("degree bookkeeping".into());
    }
    if c.n < 1 || c.hirsch_length(entry) > h_max {
        return Err(format!(
            "type [{}, {}] violates the rank conditions",
            c.m, c.n
        ));
    }
    let wedge = t.exterior_square(&c.s_ab).map_err(|e| e.to_string())?;
    if !c.s_23.dominated_by(&wedge) {
        return Err("second layer is not a summand of the exterior square".into());
    }
    if let Some(s_34) = &c.s_34 {
        let tensor = t.tensor(&c.s_ab, &c.s_23).map_err(|e| e.to_string())?;
        if !s_34.dominated_by(&tensor) {
            return Err("third layer is not a summand of the tensor product".into());
        }
    }
    if c.s_23.get(0) > 0 {
        let ok = c.s_ab.submultisets().iter().any(|v1| {
            let v0 = c.s_ab.sub(v1).expect("sub-multiset");
            let (d0, d1) = (t.degree(&v0), t.degree(v1));
            d1 >= 6 && d1 % 2 == 0 && t.symplectic_realizable(v1) && (d0 == 0 || d0 >= 4)
        });
        if !ok {
            return Err("trivial second-layer summand without a symplectic summand".into());
        }
    }
    Ok(())
}
