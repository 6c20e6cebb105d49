//! Automorphism specifications for free nilpotent groups:
//!
//! ```text
//! generators w x y z
//! class 3
//! auto sigma
//!   w = W            # upper case is the inverse, 1 the identity
//!   ...
//! order sigma tau    # order of the composite (rightmost applied first)
//! represent A5 sigma tau
//! isotypic 3 rho4    # needs represent
//! ```

use std::fmt;

use super::{
    automorphism_from, automorphism_order, find_representation, hall_basis, isotypic_component,
    layer_lattice_action, parse_word, Automorphism, EndoSpec,
};
use crate::enumerate::labelled_table;
use crate::error::{Error, Result};

const ORDER_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoFile {
    pub names: Vec<char>,
    pub class: usize,
    pub autos: Vec<(String, EndoSpec)>,
    pub orders: Vec<Vec<String>>,
    pub represent: Option<(String, Vec<String>)>,
    pub isotypic: Vec<(usize, String)>,
}

pub fn parse_endo_file(text: &str) -> Result<EndoFile> {
    let mut names: Option<Vec<char>> = None;
    let mut class = 2;
    let mut autos: Vec<(String, Vec<Option<String>>)> = Vec::new();
    let mut orders = Vec::new();
    let mut represent = None;
    let mut isotypic = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "generators" => {
                let mut gs = Vec::new();
                for w in &words[1..] {
                    let mut cs = w.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) if c.is_ascii_lowercase() && !gs.contains(&c) => gs.push(c),
                        _ => return Err(err(format!("bad generator name {w:?}"))),
                    }
                }
                if gs.is_empty() {
                    return Err(err("no generators".into()));
                }
                names = Some(gs);
            }
            "class" => {
                class = words
                    .get(1)
                    .and_then(|c| c.parse().ok())
                    .ok_or_else(|| err("bad class".into()))?;
            }
            "auto" => {
                let n = names
                    .as_ref()
                    .ok_or_else(|| err("auto before generators".into()))?;
                let name = words
                    .get(1)
                    .ok_or_else(|| err("auto without a name".into()))?;
                autos.push((name.to_string(), vec![None; n.len()]));
            }
            "order" => orders.push(words[1..].iter().map(|s| s.to_string()).collect()),
            "represent" => {
                let id = words
                    .get(1)
                    .ok_or_else(|| err("represent without a group".into()))?;
                represent = Some((
                    id.to_string(),
                    words[2..].iter().map(|s| s.to_string()).collect(),
                ));
            }
            "isotypic" => {
                let k = words
                    .get(1)
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| err("bad layer".into()))?;
                let label = words
                    .get(2)
                    .ok_or_else(|| err("isotypic without a character".into()))?;
                isotypic.push((k, label.to_string()));
            }
            _ => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| err(format!("unrecognized line {line:?}")))?;
                let n = names
                    .as_ref()
                    .ok_or_else(|| err("image before generators".into()))?;
                let (_, images) = autos
                    .last_mut()
                    .ok_or_else(|| err("image outside an auto block".into()))?;
                let g = lhs.trim();
                let i = n
                    .iter()
                    .position(|c| g.len() == 1 && g.starts_with(*c))
                    .ok_or_else(|| err(format!("unknown generator {g:?}")))?;
                parse_word(n, rhs).map_err(|e| err(e.to_string()))?;
                images[i] = Some(rhs.trim().to_string());
            }
        }
    }
    let names = names.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing generators line".into(),
    })?;
    let autos = autos
        .into_iter()
        .map(|(name, images)| {
            // unmentioned generators are fixed
            let words: Vec<String> = images
                .into_iter()
                .enumerate()
                .map(|(i, w)| w.unwrap_or_else(|| names[i].to_string()))
                .collect();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            Ok((name, EndoSpec::new(&names, &refs)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoFile {
        names,
        class,
        autos,
        orders,
        represent,
        isotypic,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicLine {
    pub layer: usize,
    pub label: String,
    pub rank: usize,
    /// Hirsch length of the quotient keeping only this component of the layer.
    pub quotient_hirsch: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoVerification {
    pub layer_ranks: Vec<usize>,
    pub autos: Vec<(String, usize)>,
    pub orders: Vec<(Vec<String>, usize)>,
    pub group: Option<String>,
    pub layers: Vec<String>,
    pub isotypic: Vec<IsotypicLine>,
}

impl fmt::Display for EndoVerification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.layer_ranks.iter().map(|r| r.to_string()).collect();
        writeln!(f, "layer ranks {}", ranks.join(" "))?;
        for (name, o) in &self.autos {
            writeln!(f, "auto {name}: order {o}")?;
        }
        for (names, o) in &self.orders {
            writeln!(f, "order {}: {o}", names.join(" "))?;
        }
        if let Some(g) = &self.group {
            writeln!(f, "represent {g}")?;
        }
        for (k, l) in self.layers.iter().enumerate() {
            writeln!(f, "layer {}: {l}", k + 1)?;
        }
        for i in &self.isotypic {
            writeln!(
                f,
                "isotypic {} in layer {}: rank {}, quotient Hirsch length {}",
                i.label, i.layer, i.rank, i.quotient_hirsch
            )?;
        }
        Ok(())
    }
}

fn lookup<'a>(autos: &'a [(String, Automorphism)], name: &str) -> Result<&'a Automorphism> {
    autos
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, a)| a)
        .ok_or_else(|| Error::Contract(format!("unknown automorphism {name:?}")))
}

pub fn verify_endo_file(file: &EndoFile) -> Result<EndoVerification> {
    let basis = hall_basis(file.names.len(), file.class)?;
    let mut autos = Vec::new();
    let mut out = EndoVerification {
        layer_ranks: basis.layer_ranks(),
        autos: Vec::new(),
        orders: Vec::new(),
        group: None,
        layers: Vec::new(),
        isotypic: Vec::new(),
    };
    for (name, spec) in &file.autos {
        let a = automorphism_from(spec, &basis)?;
        out.autos
            .push((name.clone(), automorphism_order(&a, ORDER_CAP)?));
        autos.push((name.clone(), a));
    }
    for names in &file.orders {
        let mut a = Automorphism::identity(&basis);
        for n in names {
            a = a.compose(lookup(&autos, n)?)?;
        }
        out.orders
            .push((names.clone(), automorphism_order(&a, ORDER_CAP)?));
    }
    if let Some((id, gens)) = &file.represent {
        let table = labelled_table(id)?;
        let group = table.group().clone();
        let gens = gens
            .iter()
            .map(|n| lookup(&autos, n).cloned())
            .collect::<Result<Vec<_>>>()?;
        let images = find_representation(&group, &gens)?;
        out.group = Some(id.clone());
        let mut actions = Vec::new();
        for k in 1..=file.class {
            let action = layer_lattice_action(&group, &images, k)?;
            out.layers
                .push(table.format(&table.match_traces(&action.class_traces())?));
            actions.push(action);
        }
        for (k, label) in &file.isotypic {
            let action = actions.get(k.wrapping_sub(1)).ok_or_else(|| {
                Error::Contract(format!("layer {k} is beyond class {}", file.class))
            })?;
            let rank = isotypic_component(action, table.get(label)?)?.cols();
            let below: usize = out.layer_ranks[..k - 1].iter().sum();
            out.isotypic.push(IsotypicLine {
                layer: *k,
                label: label.clone(),
                rank,
                quotient_hirsch: below + rank,
            });
        }
    } else if !file.isotypic.is_empty() {
        return Err(Error::Contract("isotypic needs a represent line".into()));
    }
    Ok(out)
}
