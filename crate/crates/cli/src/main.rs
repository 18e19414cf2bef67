//! `onerel`: command-line front end for the word-problem toolkit.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onerel::stephen::Budget;

use config::{parse_budget, Config, Format};

#[derive(Parser)]
#[command(name = "onerel", version, about = "Word problems for inverse monoids, right-angled Artin groups and HNN extensions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML config file (keys: default_budget, output_dir, format, frugal_expansion).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Default expansion budget as ROUNDS,VERTICES.
    #[arg(long, global = true, env = "ONEREL_BUDGET", value_parser = parse_budget)]
    default_budget: Option<Budget>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetOpts {
    /// Maximum expansion rounds.
    #[arg(long)]
    rounds: Option<usize>,
    /// Maximum live vertices per approximant.
    #[arg(long)]
    vertices: Option<usize>,
    /// Sew `1 → r` loops only at the two roots.
    #[arg(long)]
    frugal_expansion: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// `e·r₁ = 1, r₂ = 1, …`
    Dagger,
    /// `e = 1, r₁ = 1, …`
    Split,
    /// `rᵢ = 1, aa⁻¹ = 1, a⁻¹a = 1, tw_jt⁻¹tw_j⁻¹t⁻¹ = 1`
    Expanded,
}

#[derive(Subcommand)]
enum Command {
    /// Free reduction of a word.
    Reduce { word: String },
    /// Formal inverse of a word.
    Inv { word: String },
    /// All prefixes of a word, shortest first.
    Prefixes { word: String },
    /// Equality in the free inverse monoid.
    FimEq { u: String, v: String },
    /// Munn tree of a word.
    Munn {
        word: String,
        /// Write the tree as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Budgeted equality test in a presented inverse monoid.
    Stephen {
        /// Presentation JSON.
        presentation: PathBuf,
        u: String,
        v: String,
        #[command(flatten)]
        budget: BudgetOpts,
        /// Print the per-round trace of both towers.
        #[arg(long)]
        trace: bool,
        /// Write every approximant as DOT into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Budgeted right invertibility (`ww⁻¹ = 1`).
    RightInv {
        presentation: PathBuf,
        word: String,
        #[command(flatten)]
        budget: BudgetOpts,
    },
    /// Prefixes of the relators of a special presentation.
    PrefixGens { presentation: PathBuf },
    /// Normal form in a right-angled Artin group.
    RaagNf {
        word: String,
        /// Graph JSON; defaults to the path a–b–c–d.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Equality in a right-angled Artin group.
    RaagEq {
        u: String,
        v: String,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Membership in the parabolic subgroup generated by `--delta`.
    Parabolic {
        word: String,
        #[arg(long, value_delimiter = ',', required = true)]
        delta: Vec<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Britton reduction and triviality in an HNN extension of a RAAG.
    HnnWp {
        word: String,
        /// HNN JSON; defaults to A(P4, psi).
        #[arg(long)]
        hnn: Option<PathBuf>,
    },
    /// Image of an A(P4) word under the embedding into A(P4, psi).
    Theta { word: String },
    /// Triviality in Gp<a, z | a z a z^-1 a^-1 z a^-1 z^-1>.
    OneRelatorWp { word: String },
    /// Product in H * FG(t); syllables are element names of H or powers `t^k`.
    FpMul {
        x: String,
        y: String,
        /// `z<n>`, `s3`, or a table file (.json or .csv).
        #[arg(long, default_value = "z2")]
        group: String,
    },
    /// Checks `tht⁻¹ ∈ ⟨{t} ∪ H ∪ tWt⁻¹⟩ ⇔ h ∈ ⟨W⟩` for one `h`.
    KeyClaim {
        h: String,
        /// Element names generating T.
        #[arg(long, value_delimiter = ',')]
        w: Vec<String>,
        #[arg(long, default_value = "z2")]
        group: String,
        /// Defaults to |H|.
        #[arg(long)]
        max_factors: Option<usize>,
    },
    /// Compiles a group and a word set into an inverse monoid presentation.
    Construct {
        /// `headline`, `free`, or a group presentation JSON.
        group: String,
        /// JSON list of words.
        wset: PathBuf,
        #[arg(long, default_value = "t")]
        stable: String,
        #[arg(long, value_enum, default_value = "dagger")]
        form: Form,
        /// Write the presentation JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the instance JSON (for member-query and certify) here.
        #[arg(long)]
        instance_out: Option<PathBuf>,
    },
    /// Builds the right-invertibility query for `u ∈ T`, optionally running it.
    MemberQuery {
        /// Instance JSON written by `construct --instance-out`.
        instance: PathBuf,
        u: String,
        /// Run the expansion with this ROUNDS,VERTICES budget.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<Budget>,
        /// Run the expansion with the default budget.
        #[arg(long)]
        run: bool,
        #[arg(long)]
        frugal_expansion: bool,
        /// Write the query bundle JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks a forward certificate `u = w_{j1} … w_{jl}` in G.
    Certify {
        instance: PathBuf,
        u: String,
        /// 1-based indices into W.
        #[arg(long, value_delimiter = ',')]
        factors: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the acceptance criteria and writes their JSON and DOT artifacts.
    Suite {
        /// Artifact directory; defaults to `onerel-suite` under the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run a single criterion (1 to 9) without the determinism rerun.
        #[arg(long)]
        only: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Config::resolve(cli.config.as_deref(), cli.default_budget, cli.format)
        .and_then(|cfg| commands::run(&cfg, cli.command).map(|out| (cfg, out)));
    match result {
        Ok((cfg, out)) => {
            match cfg.format {
                Format::Text => {
                    if !out.text.is_empty() {
                        println!("{}", out.text);
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
