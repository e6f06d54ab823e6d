use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use shard_order::export::{
    hasse_dot, hasse_json, preorder_from_json, ChainReport, PartitionJson, PreorderJson,
};
use shard_order::lattice::{build_lattice_capped, DEFAULT_CAP};
use shard_order::shard::shard_count;
use shard_order::shelling::max_label_multiplicities;
use shard_order::sortable::{c_sortables, noncrossing_preorders};
use shard_order::verify::{run_suite, Suite, SuiteReport};
use shard_order::{
    count_decreasing_chains, enumerate_shards, increasing_chain, intersect, leq, lower_shards,
    mobius, mu, noncrossing_order_of_partition, CoxeterElement, Permutation, PermutationPreorder,
    Shard,
};

/// Largest n for commands that touch one element at a time.
const ELEMENT_CAP: usize = 9;

#[derive(Parser)]
#[command(
    name = "shard-order",
    version,
    about = "The shard intersection order on permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run above the size cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct Endpoints {
    #[arg(long = "n")]
    n: Option<usize>,
    /// Lower end of the interval, as a permutation. Defaults to the identity.
    #[arg(long)]
    bottom: Option<String>,
    /// Upper end of the interval, as a permutation. Defaults to the reversal.
    #[arg(long)]
    top: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation to its pre-order.
    Map {
        perm: String,
        #[command(flatten)]
        output: Output,
    },
    /// Pre-order JSON (argument, or `-` for stdin) back to its permutation.
    Unmap {
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// Hasse diagram of the whole lattice.
    Hasse {
        #[arg(long = "n")]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// All shards for `--n`, or the lower shards of `--perm`.
    Shards {
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long)]
        perm: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Möbius number of an interval.
    Mobius {
        #[command(flatten)]
        endpoints: Endpoints,
        #[command(flatten)]
        output: Output,
    },
    /// Increasing chain, decreasing-chain count and Möbius number of an interval.
    Chains {
        #[command(flatten)]
        endpoints: Endpoints,
        #[command(flatten)]
        output: Output,
    },
    /// Same as `verify --suite el`.
    ElVerify {
        #[arg(long = "n")]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// c-sortable permutations, or whether `--perm` is c-sortable.
    Sortable {
        /// Generator indices, e.g. `2,1,3`.
        #[arg(long)]
        coxeter: String,
        #[arg(long)]
        perm: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Noncrossing pre-orders for `--coxeter`, or the one with blocks `--blocks`.
    Noncrossing {
        #[arg(long)]
        coxeter: Option<String>,
        /// Block list such as `[[1,3],[2]]`, or a partition JSON object.
        #[arg(long)]
        blocks: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a self-check suite.
    Verify {
        #[arg(long = "n")]
        n: usize,
        /// One of roundtrip, geometry, lattice, el, mobius, sortable, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        output: Output,
    },
}

fn check_cap(n: usize, cap: usize, force: bool) -> Result<()> {
    if n > cap && !force {
        bail!("n = {n} exceeds the cap of {cap}; pass --force to run anyway");
    }
    Ok(())
}

fn emit(output: &Output, body: String) -> Result<()> {
    let mut body = body;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &output.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(body.as_bytes())
            .context("writing stdout"),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn no_dot(output: &Output) -> Result<()> {
    if output.format == Format::Dot {
        bail!("DOT output is only available for `hasse`");
    }
    Ok(())
}

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn parse_coxeter(s: &str) -> Result<CoxeterElement> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(input.to_string())
    }
}

fn interval(
    endpoints: &Endpoints,
    force: bool,
) -> Result<(PermutationPreorder, PermutationPreorder)> {
    let bottom = endpoints.bottom.as_deref().map(parse_perm).transpose()?;
    let top = endpoints.top.as_deref().map(parse_perm).transpose()?;
    let n = endpoints
        .n
        .or(bottom.as_ref().map(|p| p.n()))
        .or(top.as_ref().map(|p| p.n()))
        .ok_or_else(|| anyhow!("give --n or an endpoint"))?;
    for p in bottom.iter().chain(&top) {
        if p.n() != n {
            bail!("endpoint {p} is not in S_{n}");
        }
    }
    // an explicit interval may be small; the full one is the whole lattice
    let cap = if bottom.is_some() && top.is_some() {
        ELEMENT_CAP
    } else {
        DEFAULT_CAP
    };
    check_cap(n, cap, force)?;
    let bottom = mu(&bottom.unwrap_or_else(|| Permutation::identity(n)));
    let top = mu(&top.unwrap_or_else(|| Permutation::reversal(n)));
    if !leq(&bottom, &top) {
        bail!("{bottom} is not below {top} in the shard intersection order");
    }
    Ok((bottom, top))
}

#[derive(Serialize)]
struct ShardEntry {
    shard: String,
    constraints: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct ShardListing {
    n: usize,
    count: u64,
    shards: Vec<ShardEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equalities: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inequalities: Option<Vec<[usize; 2]>>,
}

fn shard_entry(s: &Shard) -> ShardEntry {
    ShardEntry {
        shard: s.to_string(),
        constraints: s.constraints().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

#[derive(Serialize)]
struct MobiusReport {
    interval: [String; 2],
    mobius: i64,
    decreasing_chains: u64,
}

#[derive(Serialize)]
struct SortableReport {
    coxeter: Vec<usize>,
    cycle: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sortable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutations: Option<Vec<String>>,
}

fn suite_text(r: &SuiteReport) -> String {
    let mut out = format!(
        "{} {} n={}: {} checks",
        if r.passed { "PASS" } else { "FAIL" },
        r.suite,
        r.n,
        r.checks
    );
    for (k, v) in &r.facts {
        out.push_str(&format!(", {k}={v}"));
    }
    for f in &r.failures {
        out.push_str(&format!("\n  {f}"));
    }
    out
}

fn run_verify(n: usize, suites: &[Suite], output: &Output) -> Result<bool> {
    no_dot(output)?;
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, n, output.force).map_err(|e| anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let body = match output.format {
        Format::Text => reports
            .iter()
            .map(suite_text)
            .collect::<Vec<_>>()
            .join("\n"),
        _ if reports.len() == 1 => to_json(&reports[0]),
        _ => to_json(&reports),
    };
    emit(output, body)?;
    Ok(passed)
}

/// Runs one command. `Ok(false)` means the command ran but a check failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Map { perm, output } => {
            no_dot(&output)?;
            let p = parse_perm(&perm)?;
            check_cap(p.n(), ELEMENT_CAP, output.force)?;
            let w = mu(&p);
            let body = match output.format {
                Format::Text => w.as_preorder().to_string(),
                _ => to_json(&PreorderJson::from_preorder(&w)),
            };
            emit(&output, body)?;
        }
        Command::Unmap { input, output } => {
            no_dot(&output)?;
            let w = preorder_from_json(&read_input(&input)?).map_err(|e| anyhow!("{e}"))?;
            let body = match output.format {
                Format::Text => w.to_string(),
                _ => to_json(&w.to_permutation().to_string()),
            };
            emit(&output, body)?;
        }
        Command::Hasse { n, output } => {
            check_cap(n, DEFAULT_CAP, output.force)?;
            let lattice = build_lattice_capped(n, usize::MAX).map_err(|e| anyhow!("{e}"))?;
            let body = match output.format {
                Format::Json => hasse_json(&lattice),
                Format::Dot => hasse_dot(&lattice),
                Format::Text => lattice
                    .hasse_edges()
                    .into_iter()
                    .map(|(a, b)| {
                        format!("{} < {}", lattice.permutation(a), lattice.permutation(b))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&output, body)?;
        }
        Command::Shards { n, perm, output } => {
            no_dot(&output)?;
            let listing = match (n, perm) {
                (_, Some(perm)) => {
                    let p = parse_perm(&perm)?;
                    if n.is_some_and(|n| n != p.n()) {
                        bail!("--perm {p} is not in S_{}", n.unwrap());
                    }
                    check_cap(p.n(), ELEMENT_CAP, output.force)?;
                    let shards = lower_shards(&p);
                    let g = intersect(p.n(), &shards).map_err(|e| anyhow!("{e}"))?;
                    let pairs =
                        |v: Vec<(usize, usize)>| v.into_iter().map(|(a, b)| [a, b]).collect();
                    ShardListing {
                        n: p.n(),
                        count: shards.len() as u64,
                        shards: shards.iter().map(shard_entry).collect(),
                        permutation: Some(p.to_string()),
                        equalities: Some(pairs(g.equalities())),
                        inequalities: Some(pairs(g.inequalities())),
                    }
                }
                (Some(n), None) => {
                    check_cap(n, ELEMENT_CAP, output.force)?;
                    ShardListing {
                        n,
                        count: shard_count(n),
                        shards: enumerate_shards(n).iter().map(shard_entry).collect(),
                        permutation: None,
                        equalities: None,
                        inequalities: None,
                    }
                }
                (None, None) => bail!("give --n or --perm"),
            };
            let body = match output.format {
                Format::Text => listing
                    .shards
                    .iter()
                    .map(|s| s.shard.clone())
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ => to_json(&listing),
            };
            emit(&output, body)?;
        }
        Command::Mobius { endpoints, output } => {
            no_dot(&output)?;
            let (bottom, top) = interval(&endpoints, output.force)?;
            let m = mobius(&bottom, &top).map_err(|e| anyhow!("{e}"))?;
            let d = count_decreasing_chains(&bottom, &top).map_err(|e| anyhow!("{e}"))?;
            let body = match output.format {
                Format::Text => m.to_string(),
                _ => to_json(&MobiusReport {
                    interval: [bottom.to_string(), top.to_string()],
                    mobius: m,
                    decreasing_chains: d,
                }),
            };
            emit(&output, body)?;
        }
        Command::Chains { endpoints, output } => {
            no_dot(&output)?;
            let (bottom, top) = interval(&endpoints, output.force)?;
            let chain = increasing_chain(&bottom, &top).map_err(|e| anyhow!("{e}"))?;
            let report = ChainReport {
                interval: [bottom.to_string(), top.to_string()],
                increasing: chain.label_word(),
                decreasing_count: count_decreasing_chains(&bottom, &top)
                    .map_err(|e| anyhow!("{e}"))?,
                mobius: mobius(&bottom, &top).map_err(|e| anyhow!("{e}"))?,
                max_label_multiplicity: max_label_multiplicities(&bottom, &top)
                    .map_err(|e| anyhow!("{e}"))?,
            };
            let body = match output.format {
                Format::Text => {
                    let path: Vec<String> = chain.elements.iter().map(|w| w.to_string()).collect();
                    format!(
                        "increasing chain {} labels {:?}\ndecreasing chains {}\nmobius {}",
                        path.join(" < "),
                        report.increasing,
                        report.decreasing_count,
                        report.mobius
                    )
                }
                _ => to_json(&report),
            };
            emit(&output, body)?;
        }
        Command::ElVerify { n, output } => return run_verify(n, &[Suite::El], &output),
        Command::Verify { n, suite, output } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(|e| anyhow!("{e}"))?]
            };
            return run_verify(n, &suites, &output);
        }
        Command::Sortable {
            coxeter,
            perm,
            output,
        } => {
            no_dot(&output)?;
            let c = parse_coxeter(&coxeter)?;
            check_cap(c.n(), ELEMENT_CAP, output.force)?;
            let mut report = SortableReport {
                coxeter: c.word().to_vec(),
                cycle: c.cycle().cycle.clone(),
                permutation: None,
                sortable: None,
                count: None,
                permutations: None,
            };
            match perm {
                Some(perm) => {
                    let p = parse_perm(&perm)?;
                    let ok = shard_order::is_c_sortable(&p, &c).map_err(|e| anyhow!("{e}"))?;
                    report.permutation = Some(p.to_string());
                    report.sortable = Some(ok);
                }
                None => {
                    let all: Vec<String> = c_sortables(&c).iter().map(|p| p.to_string()).collect();
                    report.count = Some(all.len());
                    report.permutations = Some(all);
                }
            }
            let body = match output.format {
                Format::Text => match (report.sortable, &report.permutations) {
                    (Some(ok), _) => ok.to_string(),
                    (_, Some(all)) => all.join("\n"),
                    _ => unreachable!(),
                },
                _ => to_json(&report),
            };
            emit(&output, body)?;
        }
        Command::Noncrossing {
            coxeter,
            blocks,
            output,
        } => {
            no_dot(&output)?;
            let (c, blocks) = match (coxeter, blocks) {
                (coxeter, Some(blocks)) => {
                    let blocks = read_input(&blocks)?;
                    if let Ok(part) = serde_json::from_str::<PartitionJson>(&blocks) {
                        let c = part.coxeter_element().map_err(|e| anyhow!("{e}"))?;
                        (c, Some(part.blocks))
                    } else {
                        let list: Vec<Vec<usize>> = serde_json::from_str(&blocks)
                            .context("--blocks is not a block list")?;
                        let coxeter = coxeter.ok_or_else(|| anyhow!("--blocks needs --coxeter"))?;
                        (parse_coxeter(&coxeter)?, Some(list))
                    }
                }
                (Some(coxeter), None) => (parse_coxeter(&coxeter)?, None),
                (None, None) => bail!("give --coxeter"),
            };
            let single = blocks.is_some();
            let found = match blocks {
                Some(blocks) => {
                    check_cap(c.n(), ELEMENT_CAP, output.force)?;
                    vec![noncrossing_order_of_partition(&blocks, &c).map_err(|e| anyhow!("{e}"))?]
                }
                None => {
                    check_cap(c.n(), DEFAULT_CAP, output.force)?;
                    noncrossing_preorders(&c).map_err(|e| anyhow!("{e}"))?
                }
            };
            let body = match output.format {
                Format::Text => found
                    .iter()
                    .map(|w| w.as_preorder().to_string())
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ if single => to_json(&PreorderJson::from_preorder(&found[0])),
                _ => to_json(
                    &found
                        .iter()
                        .map(PreorderJson::from_preorder)
                        .collect::<Vec<_>>(),
                ),
            };
            emit(&output, body)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
