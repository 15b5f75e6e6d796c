use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use flab_core::hypercenter::Method;
use flab_core::series;
use flab_core::verify::{self, CheckName, CheckParams, Format};
use flab_core::{Analysis, Caps, FlabError, FormationExpr, Subgroup, SubgroupFunctor};

#[derive(Parser)]
#[command(
    name = "flab",
    version,
    about = "Formation hypercenters and subgroup intersections of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Z_F, Int_F, NI_F, Delta_F and SI for one group.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formation: String,
        #[arg(long, value_enum, default_value_t = Sigma::Sylow)]
        sigma: Sigma,
    },
    /// Run a check (or `all`) over a corpus.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        formation: Option<String>,
        /// Preset (singletons, 23, 23-5, 25-37), `cross[...]`, or blocks like `{2,3};{5}`.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, value_enum)]
        sigma: Option<Sigma>,
        /// `builtin` or a file with one group spec per line.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long, env = "FLAB_MAX_ORDER")]
        max_order: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
        /// Report elapsed_ms as 0.
        #[arg(long)]
        no_timing: bool,
        /// Seed for the lemma sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summarize the subgroup lattice of one group.
    Lattice {
        #[arg(long)]
        group: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sigma {
    Sylow,
    Cyclic,
    Maximal,
}

impl Sigma {
    fn functor(self) -> SubgroupFunctor {
        match self {
            Sigma::Sylow => SubgroupFunctor::Sylow,
            Sigma::Cyclic => SubgroupFunctor::CyclicPrimary,
            Sigma::Maximal => SubgroupFunctor::Maximal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Table,
    Json,
}

/// Errors caused by bad input, reported with exit status 2.
fn is_usage(err: &anyhow::Error) -> bool {
    if err.downcast_ref::<std::io::Error>().is_some() {
        return true;
    }
    matches!(
        err.downcast_ref::<FlabError>(),
        Some(FlabError::Parse { .. } | FlabError::Usage(_) | FlabError::OrderCap { .. } | FlabError::BadAction(_))
    )
}

fn load_group(spec: &str) -> anyhow::Result<Analysis> {
    let g = flab_core::parse_spec(spec)?.build(Caps::from_env())?;
    Ok(Analysis::from_group(g)?)
}

fn show(label: &str, h: &Subgroup) {
    println!("{label:<10} order {:>5}  {:?}", h.order(), h.fingerprint());
}

fn analyze(group: &str, formation: &str, sigma: Sigma) -> anyhow::Result<bool> {
    let f = FormationExpr::parse(formation)?;
    let a = load_group(group)?;
    let sigma = sigma.functor();
    println!("group      {group}");
    println!("order      {}", a.group().order());
    println!("formation  {f}");
    println!("member     {}", f.member(a.cayley()));
    show("Z_F", &a.hypercenter(&f, Method::Auto)?);
    show("Int_F", &a.int_f(&f));
    show("NI_F", &a.ni_f(&f));
    show("Delta_F", &a.delta_f(&f));
    show(&format!("SI_{sigma}"), &a.si_sigma(&f, &sigma));
    Ok(true)
}

fn lattice(group: &str) -> anyhow::Result<bool> {
    let a = load_group(group)?;
    let l = a.lattice();
    let c = a.cayley();
    println!("group      {group}");
    println!("order      {}", a.group().order());
    println!("subgroups  {} in {} classes", l.len(), l.conjugacy_classes().len());
    println!("normal     {}", l.normal_subgroups().len());
    let maximal: Vec<usize> = l.maximal_in(l.top()).iter().map(|&i| l.get(i).order()).collect();
    println!("maximal    {maximal:?}");
    println!("frattini   {}", a.frattini().order());
    println!("soluble    {}", series::is_soluble(c));
    println!("{:>6}  {:>9}  {:>7}", "order", "subgroups", "classes");
    let classes = l.class_counts_by_order();
    for (order, count) in l.counts_by_order() {
        println!(
            "{order:>6}  {count:>9}  {:>7}",
            classes.get(&order).copied().unwrap_or(0)
        );
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    check: &str,
    formation: Option<String>,
    partition: Option<String>,
    sigma: Option<Sigma>,
    corpus: &str,
    max_order: Option<u64>,
    format: OutFormat,
    no_timing: bool,
    seed: u64,
) -> anyhow::Result<bool> {
    let names: Vec<CheckName> = if check == "all" {
        CheckName::ALL.to_vec()
    } else {
        vec![check.parse()?]
    };
    let max_order = max_order.unwrap_or(verify::DEFAULT_MAX_ORDER);
    let params = CheckParams {
        formation: formation.as_deref().map(FormationExpr::parse).transpose()?,
        partition: partition.as_deref().map(verify::parse_partition).transpose()?,
        sigma: sigma.map(Sigma::functor),
        max_order,
        timing: !no_timing,
        seed,
    };
    let from_file = corpus != "builtin";
    let corpus = if !from_file {
        verify::build_corpus(max_order, &[])?
    } else {
        let path = PathBuf::from(corpus);
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading corpus {}", path.display()))?;
        verify::corpus_from_specs(max_order, &verify::parse_corpus_file(&text)?)?
    };
    if from_file {
        for name in &corpus.skipped {
            eprintln!("skipped {name}: order exceeds {max_order}");
        }
    } else if !corpus.skipped.is_empty() {
        eprintln!("{} builtin groups above order {max_order} left out", corpus.skipped.len());
    }
    let format = match format {
        OutFormat::Table => Format::Table,
        OutFormat::Json => Format::Json,
    };
    let mut ok = true;
    for name in names {
        let reports = verify::run_check(name, &params, &corpus)?;
        print!("{}", verify::render_report(&reports, format));
        if format == Format::Table {
            println!();
        }
        ok &= !reports.iter().any(|r| r.failed());
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            group,
            formation,
            sigma,
        } => analyze(&group, &formation, sigma),
        Command::Lattice { group } => lattice(&group),
        Command::Verify {
            check,
            formation,
            partition,
            sigma,
            corpus,
            max_order,
            format,
            no_timing,
            seed,
        } => run_verify(
            &check, formation, partition, sigma, &corpus, max_order, format, no_timing, seed,
        ),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) { 2 } else { 1 })
        }
    }
}
