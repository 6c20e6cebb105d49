use std::collections::BTreeMap;
use std::fmt;

use crate::character::CharacterMultiset;
use crate::error::Result;

use super::catalog::{display_name, CatalogEntry};
use super::exclude::{apply_exclusions, surviving_pairs, ExclusionReport, Verdict};
use super::facts::FactTable;
use super::types::{enumerate_types, extend_types_gamma3, group_pairs, CandidateType, TypePair};

/// Published exterior-square decompositions: (group, argument, printed value).
pub const REFERENCE_WEDGES: &[(&str, &str, &str)] = &[
    ("A5", "rho4", "rho6"),
    ("A5", "rho5", "rho4 + rho6"),
    ("A5", "rho6", "rho4 + rho5 + rho6"),
    ("A5", "2 rho4", "1 + rho4 + rho5 + 3 rho6"),
    ("A5", "2 rho5", "1 + 4 rho4 + 2 rho5 + 3 rho6"),
    ("A5", "2 rho6", "2 + 4 rho4 + 6 rho5 + 3 rho6"),
    ("A5", "rho4 + rho5", "5 rho4 + rho5 + 3 rho6"),
    ("A5", "rho4 + rho6", "3 rho4 + 3 rho5 + 3 rho6"),
    ("PSL27", "tau6a", "2 + tau6a + tau7"),
    ("PSL27", "tau6b", "2 + tau6b + tau7"),
    ("PSL27", "tau7", "6 tau6a + tau7 + tau8"),
    ("PSL27", "tau8", "6 tau6a + 2 tau7 + tau8"),
    ("SL25", "pi8a", "3 + rhohat4 + 3 rhohat5 + rhohat6"),
    ("SL25", "pi8b", "6 + 4 rhohat4 + rhohat6"),
    ("SL27", "xi8", "1 + tauhat6b + 2 tauhat7 + tauhat8"),
    ("SL28", "psi7", "psi21"),
    ("SL28", "psi8", "psi7 + psi21"),
    ("L32N23", "lambda7a", "lambda7a + lambda14"),
    ("L32N23", "lambda7b", "lambda7b + lambda14"),
];

/// Claimed trivial multiplicities: (group, argument, m). The claim is at
/// least 14 - m trivial summands, or none when m = 0.
pub const REFERENCE_TRIVIAL: &[(&str, &str, i64)] = &[
    ("A5", "3 rho4", 12),
    ("A5", "2 rho4 + rho5", 13),
    ("PSL27", "2 tau6a", 12),
    ("PSL27", "tau6a + tau6b", 12),
    ("PSL27", "2 tau6b", 12),
    ("PSL27", "tau6a + tau7", 13),
    ("PSL27", "tau6b + tau7", 13),
    ("SL25", "pi8a + rhohat4", 12),
    ("SL25", "pi8b + rhohat4", 12),
    ("SL25", "pi8a + rhohat5", 13),
    ("SL25", "pi8b + rhohat5", 13),
    ("A5", "rho5 + rho6", 0),
];

type PairList = &'static [(i64, i64, &'static [&'static str])];

/// Published (H, [m, n]) list under the five conditions.
pub const REFERENCE_TYPES: PairList = &[
    (4, 6, &["A5"]),
    (5, 4, &["A5"]),
    (5, 6, &["A5"]),
    (6, 1, &["PSL27"]),
    (6, 2, &["PSL27"]),
    (6, 4, &["A5"]),
    (6, 5, &["A5"]),
    (6, 6, &["A5", "PSL27"]),
    (6, 7, &["PSL27"]),
    (6, 8, &["PSL27"]),
    (7, 6, &["PSL27"]),
    (7, 7, &["PSL27", "L32N23"]),
    (8, 1, &["A5", "SL25", "SL27"]),
    (8, 2, &["SL25"]),
    (8, 3, &["SL25"]),
    (8, 4, &["A5", "SL25"]),
    (8, 5, &["A5", "SL25"]),
    (8, 6, &["A5", "PSL27", "SL25"]),
    (9, 4, &["A5"]),
    (9, 5, &["A5"]),
    (10, 1, &["A5"]),
    (10, 4, &["A5"]),
    (12, 1, &["A5", "PSL27", "SL25"]),
    (12, 2, &["A5", "PSL27", "SL25"]),
    (13, 1, &["A5", "PSL27", "SL25"]),
];

/// Published list of types admitting a non-zero third layer.
pub const REFERENCE_GAMMA3: PairList = &[
    (4, 6, &["A5"]),
    (5, 4, &["A5"]),
    (5, 5, &["A5"]),
    (6, 1, &["PSL27"]),
    (6, 2, &["PSL27"]),
    (6, 4, &["A5"]),
    (6, 6, &["A5", "PSL27"]),
    (8, 1, &["A5"]),
    (8, 4, &["A5"]),
    (9, 4, &["A5"]),
];

/// Published final list.
pub const REFERENCE_FINAL: PairList = &[
    (4, 6, &["A5"]),
    (5, 6, &["A5"]),
    (6, 4, &["A5"]),
    (6, 5, &["A5"]),
    (6, 6, &["A5"]),
    (7, 7, &["PSL27"]),
    (8, 6, &["A5", "PSL27"]),
    (9, 5, &["A5"]),
    (10, 1, &["A5"]),
    (10, 4, &["A5"]),
    (12, 1, &["A5"]),
    (12, 2, &["A5"]),
    (13, 1, &["A5"]),
];

/// Published third-layer options on the final list; "0" is the zero module
/// and "2" the trivial module of rank 2.
pub const REFERENCE_THIRD_LAYER: &[(&str, i64, i64, &[&str])] = &[
    ("A5", 4, 6, &["rho4", "0"]),
    ("A5", 6, 4, &["rho4", "0"]),
    ("A5", 6, 6, &["2", "1", "0"]),
    ("A5", 12, 1, &["1", "0"]),
];

#[derive(Debug, Clone)]
pub struct WedgeLine {
    pub group: &'static str,
    pub argument: &'static str,
    pub printed: &'static str,
    pub computed: String,
    pub printed_degree: i64,
    pub expected_degree: i64,
    pub matches: bool,
}

impl WedgeLine {
    pub fn consistent(&self) -> bool {
        self.printed_degree == self.expected_degree
    }
}

fn entry<'c>(catalog: &'c [CatalogEntry], id: &str) -> Result<&'c CatalogEntry> {
    catalog
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| crate::error::Error::UnknownGroup(id.to_string()))
}

pub fn wedge_table(catalog: &[CatalogEntry]) -> Result<Vec<WedgeLine>> {
    REFERENCE_WEDGES
        .iter()
        .map(|&(group, argument, printed)| {
            let e = entry(catalog, group)?;
            let arg = e.table.parse_multiset(argument)?;
            let claimed = e.table.parse_multiset(printed)?;
            let computed = e.table.exterior_square(&arg)?;
            let d = e.degree(&arg);
            Ok(WedgeLine {
                group,
                argument,
                printed,
                computed: e.format(&computed),
                printed_degree: e.degree(&claimed),
                expected_degree: d * (d - 1) / 2,
                matches: claimed == computed,
            })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TrivialClaim {
    pub group: &'static str,
    pub argument: &'static str,
    pub m: i64,
    pub required: u32,
    pub found: u32,
}

impl TrivialClaim {
    pub fn holds(&self) -> bool {
        if self.m == 0 {
            self.found == 0
        } else {
            self.found >= self.required
        }
    }
}

pub fn trivial_claims(catalog: &[CatalogEntry]) -> Result<Vec<TrivialClaim>> {
    REFERENCE_TRIVIAL
        .iter()
        .map(|&(group, argument, m)| {
            let e = entry(catalog, group)?;
            let arg = e.table.parse_multiset(argument)?;
            let found = e.table.trivial_multiplicity(&e.wedge(&arg));
            let required = if m == 0 { 0 } else { (14 - m).max(0) as u32 };
            Ok(TrivialClaim {
                group,
                argument,
                m,
                required,
                found,
            })
        })
        .collect()
}

/// (group, m, n) keys of a pair list.
pub fn pair_keys(pairs: &[TypePair]) -> Vec<(String, i64, i64)> {
    pairs
        .iter()
        .map(|p| (p.group.to_string(), p.m, p.n))
        .collect()
}

pub fn reference_keys(list: PairList) -> Vec<(String, i64, i64)> {
    list.iter()
        .flat_map(|&(m, n, gs)| gs.iter().map(move |g| (g.to_string(), m, n)))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairDiff {
    pub surplus: Vec<(String, i64, i64)>,
    pub missing: Vec<(String, i64, i64)>,
}

impl PairDiff {
    pub fn is_empty(&self) -> bool {
        self.surplus.is_empty() && self.missing.is_empty()
    }
}

pub fn compare_pairs(engine: &[TypePair], reference: PairList) -> PairDiff {
    let ours = pair_keys(engine);
    let theirs = reference_keys(reference);
    PairDiff {
        surplus: ours
            .iter()
            .filter(|k| !theirs.contains(k))
            .cloned()
            .collect(),
        missing: theirs
            .iter()
            .filter(|k| !ours.contains(k))
            .cloned()
            .collect(),
    }
}

/// Everything the report is built from.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub candidates: Vec<CandidateType>,
    pub extended: Vec<CandidateType>,
    pub exclusions: Vec<ExclusionReport>,
    pub survivors: Vec<TypePair>,
}

pub fn run_pipeline(catalog: &[CatalogEntry], facts: &FactTable, h_max: i64) -> Result<Pipeline> {
    let candidates = enumerate_types(catalog, h_max)?;
    let extended = extend_types_gamma3(catalog, &candidates, h_max);
    let exclusions = apply_exclusions(catalog, &candidates, facts)?;
    let survivors = surviving_pairs(&exclusions);
    Ok(Pipeline {
        candidates,
        extended,
        exclusions,
        survivors,
    })
}

/// Third-layer options of a surviving pair over its surviving witnesses, "0" last.
pub fn third_layer_options(catalog: &[CatalogEntry], p: &Pipeline, pair: &TypePair) -> Vec<String> {
    let Ok(e) = entry(catalog, pair.group) else {
        return vec![];
    };
    let mut out: Vec<CharacterMultiset> = Vec::new();
    for c in &p.extended {
        let base = pair
            .witnesses
            .iter()
            .any(|w| w.group == c.group && w.s_ab == c.s_ab && w.s_23 == c.s_23);
        if let (true, Some(s)) = (base, &c.s_34) {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
    }
    out.sort_by(|a, b| e.degree(b).cmp(&e.degree(a)).then(a.cmp(b)));
    let mut names: Vec<String> = out.iter().map(|s| e.format(s)).collect();
    names.push("0".into());
    names
}

fn by_type(
    pairs: &[(String, i64, i64)],
    catalog: &[CatalogEntry],
) -> BTreeMap<(i64, i64), Vec<String>> {
    let mut map: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    let pos = |g: &str| catalog.iter().position(|e| e.id == g).unwrap_or(usize::MAX);
    for (g, m, n) in pairs {
        map.entry((*m, *n)).or_default().push(g.clone());
    }
    for gs in map.values_mut() {
        gs.sort_by_key(|g| pos(g));
        gs.dedup();
    }
    map
}

fn key_text((g, m, n): &(String, i64, i64)) -> String {
    format!("{} [{m},{n}]", display_name(g))
}

#[derive(Debug, Clone)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub sections: Vec<Section>,
    pub discrepancies: Vec<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            writeln!(f, "== {} ==", s.title)?;
            for l in &s.lines {
                writeln!(f, "{l}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "== Discrepancies ==")?;
        if self.discrepancies.is_empty() {
            writeln!(f, "none")?;
        }
        for d in &self.discrepancies {
            writeln!(f, "- {d}")?;
        }
        Ok(())
    }
}

fn diff_lines(what: &str, d: &PairDiff, out: &mut Vec<String>) {
    for k in &d.surplus {
        out.push(format!("{what}: {} computed but not listed", key_text(k)));
    }
    for k in &d.missing {
        out.push(format!("{what}: {} listed but not computed", key_text(k)));
    }
}

fn type_lines(keys: &[(String, i64, i64)], catalog: &[CatalogEntry]) -> Vec<String> {
    by_type(keys, catalog)
        .into_iter()
        .map(|((m, n), gs)| {
            let names: Vec<&str> = gs.iter().map(|g| display_name(g)).collect();
            format!("{:<8} {}", format!("[{m},{n}]"), names.join(", "))
        })
        .collect()
}

pub fn build_report(catalog: &[CatalogEntry], facts: &FactTable) -> Result<Report> {
    let mut sections = Vec::new();
    let mut disc = Vec::new();

    let wedges = wedge_table(catalog)?;
    let mut lines = Vec::new();
    for w in &wedges {
        lines.push(format!(
            "{:<10} wedge({}) = {}",
            display_name(w.group),
            w.argument,
            w.computed
        ));
        if !w.matches {
            let why = if w.consistent() {
                "wrong decomposition".to_string()
            } else {
                format!(
                    "printed degree {} but {} expected",
                    w.printed_degree, w.expected_degree
                )
            };
            disc.push(format!(
                "wedge({}) for {}: printed {}; computed {} ({why})",
                w.argument,
                display_name(w.group),
                w.printed,
                w.computed
            ));
        }
    }
    sections.push(Section {
        title: "Exterior squares".into(),
        lines,
    });

    let mut lines = Vec::new();
    for c in trivial_claims(catalog)? {
        let need = if c.m == 0 {
            "none claimed".to_string()
        } else {
            format!("at least {} claimed", c.required)
        };
        lines.push(format!(
            "{:<10} wedge({}): {} trivial, {need}",
            display_name(c.group),
            c.argument,
            c.found
        ));
        if !c.holds() {
            disc.push(format!(
                "trivial summands of wedge({}) for {}: {} found, {need}",
                c.argument,
                display_name(c.group),
                c.found
            ));
        }
    }
    sections.push(Section {
        title: "Trivial summands".into(),
        lines,
    });

    let p = run_pipeline(catalog, facts, 14)?;
    let pairs = group_pairs(&p.candidates);
    sections.push(Section {
        title: "Candidate types, h <= 14".into(),
        lines: type_lines(&pair_keys(&pairs), catalog),
    });
    diff_lines(
        "candidate types",
        &compare_pairs(&pairs, REFERENCE_TYPES),
        &mut disc,
    );

    let ext = group_pairs(&p.extended);
    let mut lines = type_lines(&pair_keys(&ext), catalog);
    for pair in &ext {
        let Ok(e) = entry(catalog, pair.group) else {
            continue;
        };
        for w in &pair.witnesses {
            let mut l = format!(
                "  {} [{},{}]: {}",
                display_name(pair.group),
                pair.m,
                pair.n,
                w.witness(e)
            );
            if !w.s_45.is_empty() {
                let opts: Vec<String> = w.s_45.iter().map(|s| e.format(s)).collect();
                l.push_str(&format!("; 4/5 = {}", opts.join(" or ")));
            }
            lines.push(l);
        }
    }
    sections.push(Section {
        title: "Types with a non-zero third layer".into(),
        lines,
    });
    diff_lines(
        "third-layer types",
        &compare_pairs(&ext, REFERENCE_GAMMA3),
        &mut disc,
    );

    let mut lines = Vec::new();
    for r in p
        .exclusions
        .iter()
        .filter(|r| r.verdict == Verdict::Excluded)
    {
        let c = &r.candidate;
        let Ok(e) = entry(catalog, c.group) else {
            continue;
        };
        let rule = r.rule.map(|x| x.to_string()).unwrap_or_default();
        let cited = if r.facts.is_empty() {
            "lemma only".to_string()
        } else {
            r.facts.join(", ")
        };
        lines.push(format!(
            "{} [{},{}] {}: {rule} ({cited})",
            display_name(c.group),
            c.m,
            c.n,
            c.witness(e)
        ));
    }
    sections.push(Section {
        title: "Exclusions".into(),
        lines,
    });

    let mut lines = Vec::new();
    for pair in &p.survivors {
        let Ok(e) = entry(catalog, pair.group) else {
            continue;
        };
        let witnesses: Vec<String> = pair.witnesses.iter().map(|w| w.witness(e)).collect();
        let third = third_layer_options(catalog, &p, pair);
        lines.push(format!(
            "{:<8} {:<10} {}; 3/4 = {}",
            format!("[{},{}]", pair.m, pair.n),
            display_name(pair.group),
            witnesses.join(" | "),
            third.join(" or ")
        ));
        if let Some(&(_, _, _, published)) = REFERENCE_THIRD_LAYER
            .iter()
            .find(|r| r.0 == pair.group && r.1 == pair.m && r.2 == pair.n)
        {
            if published
                != third
                    .iter()
                    .map(String::as_str)
                    .collect::<Vec<_>>()
                    .as_slice()
            {
                disc.push(format!(
                    "third layer of {} [{},{}] (informational): listed {}; computed {}",
                    display_name(pair.group),
                    pair.m,
                    pair.n,
                    published.join(" or "),
                    third.join(" or ")
                ));
            }
        }
    }
    sections.push(Section {
        title: "Surviving types".into(),
        lines,
    });
    diff_lines(
        "surviving types",
        &compare_pairs(&p.survivors, REFERENCE_FINAL),
        &mut disc,
    );

    Ok(Report {
        sections,
        discrepancies: disc,
    })
}
