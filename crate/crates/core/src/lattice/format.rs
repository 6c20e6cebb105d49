//! Line-oriented crystal data:
//!
//! ```text
//! group A5          # catalog id, C<n> for a cyclic group, or "matrix"
//! rank 4
//! gen               # one block per generator, rank rows each
//! 0 1 0 0
//! ...
//! cocycle           # optional: "g h : v..." by element index
//! 1 1 : 1 0
//! lift 2            # optional alternative: one translation row per generator
//! 1 0
//! end
//! ```
//!
//! With `group matrix` the holonomy group is the closure of the supplied
//! matrices and acts naturally.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Cocycle2, CrystalData, LatticeAction};
use crate::error::{Error, Result};
use crate::group::{catalog, close_group, Element, Shape, DEFAULT_CAP};

enum Section {
    None,
    Gen,
    Cocycle,
    Lift,
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<i64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad integer {t:?}"),
            })
        })
        .collect()
}

pub fn parse_crystal(text: &str) -> Result<CrystalData> {
    let mut group_id: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut gens: Vec<Vec<i64>> = Vec::new();
    let mut entries: HashMap<(usize, usize), Vec<i64>> = HashMap::new();
    let mut lift: Option<(i64, Vec<Vec<i64>>)> = None;
    let mut section = Section::None;
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: &str| Error::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        match head {
            "group" => {
                group_id = Some(
                    words
                        .next()
                        .ok_or_else(|| perr("missing group id"))?
                        .to_string(),
                );
                continue;
            }
            "rank" => {
                let r = words.next().ok_or_else(|| perr("missing rank"))?;
                rank = Some(r.parse().map_err(|_| perr("bad rank"))?);
                continue;
            }
            "gen" => {
                gens.push(Vec::new());
                section = Section::Gen;
                continue;
            }
            "cocycle" => {
                section = Section::Cocycle;
                continue;
            }
            "lift" => {
                let d = words.next().ok_or_else(|| perr("missing denominator"))?;
                lift = Some((d.parse().map_err(|_| perr("bad denominator"))?, Vec::new()));
                section = Section::Lift;
                continue;
            }
            "end" => break,
            _ => {}
        }
        match section {
            Section::None => return Err(perr("data outside a section")),
            Section::Gen => {
                let row = parse_ints(line, lineno)?;
                gens.last_mut().expect("gen section open").extend(row);
            }
            Section::Cocycle => {
                let (lhs, rhs) = line
                    .split_once(':')
                    .ok_or_else(|| perr("expected \"g h : v...\""))?;
                let idx = parse_ints(lhs, lineno)?;
                if idx.len() != 2 || idx.iter().any(|&i| i < 0) {
                    return Err(perr("expected two element indices"));
                }
                entries.insert((idx[0] as usize, idx[1] as usize), parse_ints(rhs, lineno)?);
            }
            Section::Lift => {
                let row = parse_ints(line, lineno)?;
                lift.as_mut().expect("lift open").1.push(row);
            }
        }
    }
    let id = group_id.ok_or(Error::Parse {
        line: 0,
        msg: "missing group line".into(),
    })?;
    let n = rank.ok_or(Error::Parse {
        line: 0,
        msg: "missing rank line".into(),
    })?;
    let action = if id == "matrix" {
        let elems = gens
            .iter()
            .map(|m| Element::integer(n, m))
            .collect::<Result<Vec<_>>>()?;
        let g = close_group(Shape::Integer(n), &elems, DEFAULT_CAP)?;
        LatticeAction::natural(Arc::new(g))?
    } else {
        let g = catalog::group_by_id(&id)?;
        // generators of the file pair with the group's sorted generators
        LatticeAction::new(Arc::new(g), n, &gens)?
    };
    let cocycle = match lift {
        Some((den, rows)) => {
            if !entries.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    msg: "both cocycle and lift sections given".into(),
                });
            }
            Cocycle2::from_translations(&action, &rows, den)?
        }
        None => Cocycle2::from_entries(&action, &entries)?,
    };
    Ok(CrystalData { action, cocycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_bottle_file() {
        let text = "group C2\nrank 2\ngen\n1 0\n0 -1\ncocycle\n1 1 : 1 0\nend\n";
        let c = parse_crystal(text).unwrap();
        assert!(crate::lattice::is_bieberbach(&c).unwrap().torsion_free);
    }

    #[test]
    fn lift_section_matches_cocycle() {
        let text = "group matrix\nrank 2\ngen\n1 0\n0 -1\nlift 2\n1 0\n";
        let c = parse_crystal(text).unwrap();
        assert_eq!(c.cocycle.value(1, 1), &[1, 0]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_crystal("group C2\nrank x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                msg: "bad rank".into()
            }
        );
        assert!(matches!(
            parse_crystal("rank 1\n"),
            Err(Error::Parse { .. })
        ));
    }
}
