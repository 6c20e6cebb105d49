use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use tfns_core::bounds::{
    e_bound, filter_minimal_simple, gcd_sl_orders, group_order, min_degree_cyclic,
};
use tfns_core::enumerate::report::run_pipeline;
use tfns_core::enumerate::{
    build_catalog, build_report, default_facts, display_name, extend_types_gamma3, group_pairs,
    labelled_table, load_facts, resolve_id, CandidateType, CatalogEntry, FactTable, Verdict,
};
use tfns_core::lattice::{is_bieberbach, parse_crystal};
use tfns_core::nilpotent::{parse_endo_file, verify_endo_file};
use tfns_core::Error;

#[derive(Parser)]
#[command(
    name = "tfns",
    version,
    about = "Character, lattice and candidate computations for small TFNS groups"
)]
struct Cli {
    /// Emit tab-separated records instead of aligned text.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog groups, or the rational irreducibles of one group.
    Catalog { group: Option<String> },
    /// Print the character table of a catalog group.
    Chartab {
        group: String,
        /// Rational irreducibles instead of complex ones.
        #[arg(long)]
        rational: bool,
    },
    /// Decompose the exterior square of a rational character, e.g. `wedge A5 2 rho4`.
    Wedge {
        group: String,
        #[arg(required = true, num_args = 1..)]
        character: Vec<String>,
    },
    /// Decompose a trace vector (one integer per class) or a tensor product.
    Decompose(DecomposeArgs),
    /// Numerical bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Enumerate candidate types.
    Enumerate {
        #[arg(long, default_value_t = 14)]
        hmax: i64,
        /// Only types admitting a non-zero third layer.
        #[arg(long)]
        gamma3: bool,
    },
    /// Apply the exclusion rules.
    Exclude(FactArgs),
    /// Decide whether a crystal data file describes a Bieberbach group.
    Bieberbach { file: PathBuf },
    /// Free nilpotent automorphism checks.
    Nilpotent {
        #[command(subcommand)]
        which: NilpotentCommand,
    },
    /// Regenerate the tables and the discrepancy appendix.
    Report(FactArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    group: String,
    /// Two characters whose tensor product is decomposed.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    tensor: Option<Vec<String>>,
    #[arg(allow_negative_numbers = true)]
    traces: Vec<i64>,
}

#[derive(Args)]
struct FactArgs {
    /// Fact table; the built-in table when omitted.
    #[arg(long)]
    facts: Option<PathBuf>,
    #[arg(long, default_value_t = 14)]
    hmax: i64,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Exponent bound e_n(p).
    E { n: u64, p: u64 },
    /// Least degree of a faithful rational representation of a cyclic group.
    Mindeg { m: u64 },
    /// gcd of |SL(d,p)| over the first COUNT odd primes p > M.
    SlGcd { d: u32, m: u64, count: usize },
    /// Minimal simple groups with a faithful rational representation of degree n.
    Simple { n: u64 },
}

#[derive(Subcommand)]
enum NilpotentCommand {
    /// Check the automorphisms of a specification file.
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Contract(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownGroup(_) => Failure::Usage(e.to_string()),
            _ => Failure::Contract(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

type Out = Result<Vec<String>, Failure>;

fn tsv(fields: &[&str]) -> String {
    fields.join("\t")
}

fn catalog_entry(name: &str) -> Result<CatalogEntry, Failure> {
    Ok(CatalogEntry::build(resolve_id(name)?)?)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn facts(path: &Option<PathBuf>) -> Result<FactTable, Failure> {
    match path {
        Some(p) => {
            read(p)?;
            Ok(load_facts(p)?)
        }
        None => Ok(default_facts()),
    }
}

fn catalog(group: &Option<String>, machine: bool) -> Out {
    let mut out = Vec::new();
    let Some(name) = group else {
        for e in build_catalog()? {
            let g = e.table.group();
            let classes = g.conjugacy_classes().len();
            if machine {
                out.push(tsv(&[
                    "group",
                    e.id,
                    e.name,
                    &g.order().to_string(),
                    &classes.to_string(),
                ]));
            } else {
                out.push(format!(
                    "{:<8} {:<10} order {:<5} classes {classes}",
                    e.id,
                    e.name,
                    g.order()
                ));
            }
        }
        return Ok(out);
    };
    let e = catalog_entry(name)?;
    for c in e.table.characters() {
        let faithful = c.is_faithful();
        if machine {
            let f = |b: bool| if b { "1" } else { "0" };
            out.push(tsv(&[
                "char",
                e.id,
                &c.label,
                &c.degree.to_string(),
                f(faithful),
                f(c.symplectic),
                &c.indicator.to_string(),
            ]));
        } else {
            let mut flags = Vec::new();
            if faithful {
                flags.push("faithful");
            }
            if c.symplectic {
                flags.push("symplectic");
            }
            out.push(
                format!(
                    "{:<10} degree {:<3} indicator {:>2}  {}",
                    c.label,
                    c.degree,
                    c.indicator,
                    flags.join(" ")
                )
                .trim_end()
                .to_string(),
            );
        }
    }
    Ok(out)
}

fn chartab(group: &str, rational: bool, machine: bool) -> Out {
    let t = labelled_table(resolve_id(group)?)?;
    let g = t.group();
    let classes = g.conjugacy_classes();
    let mut out = Vec::new();
    let head: Vec<String> = classes
        .iter()
        .map(|c| format!("{}/{}", c.element_order, c.size))
        .collect();
    let rows: Vec<(String, Vec<String>)> = if rational {
        t.characters()
            .iter()
            .map(|c| {
                (
                    c.label.clone(),
                    c.values.iter().map(|v| v.to_string()).collect(),
                )
            })
            .collect()
    } else {
        t.character_table()
            .irreducibles()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                (
                    format!("X{}", i + 1),
                    x.values().iter().map(|v| v.to_string()).collect(),
                )
            })
            .collect()
    };
    if machine {
        out.push(format!("classes\t{}", head.join("\t")));
        for (l, vs) in rows {
            out.push(format!("row\t{l}\t{}", vs.join("\t")));
        }
        return Ok(out);
    }
    let width = rows
        .iter()
        .flat_map(|(_, v)| v.iter().map(String::len))
        .chain(head.iter().map(String::len))
        .max()
        .unwrap_or(1);
    let cells = |vs: &[String]| {
        vs.iter()
            .map(|v| format!("{v:>width$}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push(format!("{:<10} {}", "", cells(&head)));
    for (l, vs) in rows {
        out.push(format!("{l:<10} {}", cells(&vs)));
    }
    Ok(out)
}

fn wedge(group: &str, character: &[String], machine: bool) -> Out {
    let e = catalog_entry(group)?;
    let m = e.table.parse_multiset(&character.join(" "))?;
    let w = e.wedge(&m);
    Ok(vec![if machine {
        e.table.format_records(&w).trim_end().to_string()
    } else {
        e.format(&w)
    }])
}

fn decompose(args: &DecomposeArgs, machine: bool) -> Out {
    let e = catalog_entry(&args.group)?;
    let m = match &args.tensor {
        Some(ab) => {
            if !args.traces.is_empty() {
                return Err(Failure::Usage(
                    "give either --tensor or a trace vector".into(),
                ));
            }
            let a = e.table.parse_multiset(&ab[0])?;
            let b = e.table.parse_multiset(&ab[1])?;
            e.tensor(&a, &b)
        }
        None => {
            let classes = e.table.group().conjugacy_classes().len();
            if args.traces.len() != classes {
                return Err(Failure::Usage(format!(
                    "expected {classes} class values, got {}",
                    args.traces.len()
                )));
            }
            e.table.match_traces(&args.traces)?
        }
    };
    Ok(vec![if machine {
        e.table.format_records(&m).trim_end().to_string()
    } else {
        e.format(&m)
    }])
}

fn bounds(which: &BoundsCommand, machine: bool) -> Out {
    Ok(match which {
        BoundsCommand::E { n, p } => vec![e_bound(*n, *p).to_string()],
        BoundsCommand::Mindeg { m } => vec![min_degree_cyclic(*m).to_string()],
        BoundsCommand::SlGcd { d, m, count } => {
            let r = gcd_sl_orders(*d, *m, *count)?;
            let stable = if r.stable { "stable" } else { "unstable" };
            if machine {
                vec![tsv(&[
                    "gcd",
                    &r.gcd.to_string(),
                    stable,
                    &r.primes.len().to_string(),
                ])]
            } else {
                vec![format!(
                    "{} ({stable} over {} primes up to {})",
                    r.gcd,
                    r.primes.len(),
                    r.primes.last().unwrap_or(&0)
                )]
            }
        }
        BoundsCommand::Simple { n } => filter_minimal_simple(*n)?
            .iter()
            .map(|c| {
                let orders: Vec<String> = c.cyclic_orders.iter().map(|o| o.to_string()).collect();
                let flag = if c.has_order_13 { "order-13" } else { "" };
                if machine {
                    tsv(&[
                        "simple",
                        &c.name,
                        &group_order(c).to_string(),
                        &orders.join(","),
                        flag,
                    ])
                } else {
                    format!(
                        "{:<10} order {:<8} cyclic {:<12} {flag}",
                        c.name,
                        group_order(c),
                        orders.join(",")
                    )
                    .trim_end()
                    .to_string()
                }
            })
            .collect(),
    })
}

fn candidate_line(e: &CatalogEntry, c: &CandidateType, machine: bool) -> String {
    if machine {
        let s34 = c.s_34.as_ref().map(|s| e.format(s)).unwrap_or_default();
        tsv(&[
            "candidate",
            e.id,
            &c.m.to_string(),
            &c.n.to_string(),
            &e.format(&c.s_ab),
            &e.format(&c.s_23),
            &s34,
        ])
    } else {
        format!("  {}", c.witness(e))
    }
}

fn enumerate(hmax: i64, gamma3: bool, machine: bool) -> Out {
    let cat = build_catalog()?;
    let mut cands = tfns_core::enumerate::enumerate_types(&cat, hmax)?;
    if gamma3 {
        cands = extend_types_gamma3(&cat, &cands, hmax);
    }
    let mut out = Vec::new();
    for p in group_pairs(&cands) {
        let e = cat.iter().find(|e| e.id == p.group).expect("catalog group");
        if !machine {
            out.push(format!("{} [{},{}]", display_name(p.group), p.m, p.n));
        }
        out.extend(p.witnesses.iter().map(|c| candidate_line(e, c, machine)));
    }
    Ok(out)
}

fn exclude(args: &FactArgs, machine: bool) -> Out {
    let cat = build_catalog()?;
    let p = run_pipeline(&cat, &facts(&args.facts)?, args.hmax)?;
    let mut out = Vec::new();
    for r in &p.exclusions {
        let c = &r.candidate;
        let e = cat.iter().find(|e| e.id == c.group).expect("catalog group");
        let verdict = if r.verdict == Verdict::Excluded {
            "excluded"
        } else {
            "survives"
        };
        let rule = r.rule.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        if machine {
            out.push(tsv(&[
                verdict,
                e.id,
                &c.m.to_string(),
                &c.n.to_string(),
                &e.format(&c.s_ab),
                &e.format(&c.s_23),
                &rule,
                &r.facts.join(","),
            ]));
        } else {
            out.push(format!(
                "{} [{},{}] {}: {verdict}",
                display_name(c.group),
                c.m,
                c.n,
                c.witness(e)
            ));
            if r.verdict == Verdict::Excluded {
                out.push(format!("    {rule} using {}", r.facts.join(", ")));
                out.extend(r.witness.iter().map(|w| format!("    {w}")));
            }
        }
    }
    if !machine {
        out.push(String::new());
        out.push("surviving types:".into());
        for pair in &p.survivors {
            out.push(format!(
                "  {} [{},{}]",
                display_name(pair.group),
                pair.m,
                pair.n
            ));
        }
    }
    Ok(out)
}

fn bieberbach(file: &Path, machine: bool) -> Out {
    let data = parse_crystal(&read(file)?)?;
    let v = is_bieberbach(&data)?;
    let g = data.action.group();
    let mut out = Vec::new();
    for (rep, class) in &v.checks {
        let cls: Vec<String> = class.iter().map(|x| x.to_string()).collect();
        let order = g.element_order(*rep).to_string();
        if machine {
            out.push(tsv(&["check", &rep.to_string(), &order, &cls.join(",")]));
        } else {
            out.push(format!(
                "element {rep} of order {order}: restriction class [{}]",
                cls.join(", ")
            ));
        }
    }
    let verdict = if v.torsion_free {
        "torsion-free"
    } else {
        "torsion"
    };
    match (v.witness, machine) {
        (Some(w), true) => out.push(tsv(&[verdict, &w.to_string()])),
        (Some(w), false) => out.push(format!("{verdict}: the extension splits over element {w}")),
        (None, true) => out.push(verdict.to_string()),
        (None, false) => out.push(format!("{verdict}: Bieberbach")),
    }
    Ok(out)
}

fn nilpotent(which: &NilpotentCommand, machine: bool) -> Out {
    let NilpotentCommand::Verify { file } = which;
    let spec = parse_endo_file(&read(file)?)?;
    let v = verify_endo_file(&spec)?;
    if !machine {
        return Ok(v.to_string().lines().map(String::from).collect());
    }
    let mut out = vec![format!(
        "ranks\t{}",
        v.layer_ranks
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\t")
    )];
    out.extend(
        v.autos
            .iter()
            .map(|(n, o)| tsv(&["auto", n, &o.to_string()])),
    );
    out.extend(
        v.orders
            .iter()
            .map(|(ns, o)| tsv(&["order", &ns.join(" "), &o.to_string()])),
    );
    out.extend(
        v.layers
            .iter()
            .enumerate()
            .map(|(k, l)| tsv(&["layer", &(k + 1).to_string(), l])),
    );
    out.extend(v.isotypic.iter().map(|i| {
        tsv(&[
            "isotypic",
            &i.layer.to_string(),
            &i.label,
            &i.rank.to_string(),
            &i.quotient_hirsch.to_string(),
        ])
    }));
    Ok(out)
}

fn report(args: &FactArgs, machine: bool) -> Out {
    let cat = build_catalog()?;
    let r = build_report(&cat, &facts(&args.facts)?)?;
    if !machine {
        return Ok(r.to_string().lines().map(String::from).collect());
    }
    let mut out = Vec::new();
    for s in &r.sections {
        out.extend(s.lines.iter().map(|l| tsv(&["line", &s.title, l.trim()])));
    }
    out.extend(r.discrepancies.iter().map(|d| tsv(&["discrepancy", d])));
    Ok(out)
}

fn run(cli: &Cli) -> Out {
    let m = cli.machine;
    match &cli.command {
        Command::Catalog { group } => catalog(group, m),
        Command::Chartab { group, rational } => chartab(group, *rational, m),
        Command::Wedge { group, character } => wedge(group, character, m),
        Command::Decompose(args) => decompose(args, m),
        Command::Bounds { which } => bounds(which, m),
        Command::Enumerate { hmax, gamma3 } => enumerate(*hmax, *gamma3, m),
        Command::Exclude(args) => exclude(args, m),
        Command::Bieberbach { file } => bieberbach(file, m),
        Command::Nilpotent { which } => nilpotent(which, m),
        Command::Report(args) => report(args, m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(lines) => {
            let mut out = std::io::stdout().lock();
            for l in lines {
                // a closed pipe ends output quietly
                if writeln!(out, "{l}").is_err() {
                    break;
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contract(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
