use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use numberless::analysis::{lasso_prob, noisy_sweep, value_lower_bound, LassoWord, SearchBudget};
use numberless::constructions::{
    buchi_reduction, build_simulation, encode_word, fair_coin, instantiate_simulation, FairCoinShape,
};
use numberless::io::{export_dot_npa, export_dot_pa, parse_document, AutomatonDocument, Document, Kind, Parameters};
use numberless::montecarlo::{hoeffding_radius, monte_carlo_accept};
use numberless::rational::{format_rational, parse_rational, to_f64, Rational};
use numberless::verification::{
    fair_coin_suite, fig1_case_study, simulation_suite, CaseStudyRow, PropReport, SuiteConfig, Verdict,
};
use numberless::{Error, Exec, ProbAutomaton, SimplePa};

const BUILTIN_FIG1: &str = "builtin:fig1";

#[derive(Parser)]
#[command(name = "numberless", version, about = "Exact probabilistic and numberless automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Automaton document (JSON), or `builtin:fig1`.
    #[arg(long, short = 'a')]
    automaton: String,
    /// Binds a document parameter, e.g. `--set x=3/4`.
    #[arg(long = "set", value_name = "NAME=P/Q")]
    set: Vec<String>,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Acceptance probability of a word.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long, short = 'w', default_value = "")]
        word: String,
    },
    /// Probability of reaching a set of states from a state.
    Reach {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long, default_value = "")]
        word: String,
        /// Comma-separated target states.
        #[arg(long)]
        to: String,
    },
    /// Lower bound on the value by bounded search.
    Search {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Distributions kept per layer; 0 keeps all.
        #[arg(long, default_value_t = 0)]
        beam: usize,
    },
    /// Builds the fair-coin automaton of a simple automaton.
    FairCoin {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        output: Output,
    },
    /// Builds the numberless simulation automaton.
    SimulateBuild {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Builds an instance of the simulation automaton.
    SimulateInstantiate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        theta: String,
        #[command(flatten)]
        output: Output,
    },
    /// Image of a word of the fair-coin alphabet under hat.
    Hat {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Each letter followed by 2k sharps.
    Encode {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        k: usize,
    },
    /// The fairness checker of the simulation, as a deterministic automaton.
    FairnessDfa {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Büchi reduction.
    Buchi {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Probability that `stem cycle^ω` is accepted by a Büchi automaton.
    Lasso {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "")]
        stem: String,
        #[arg(long)]
        cycle: String,
    },
    /// Value lower bounds over a grid around an instance.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 3)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        beam: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized exact checks of the construction identities.
    CheckProps {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Acceptance of (i a^n f)^m on the six-state example.
    CaseStudy {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
        #[arg(long, default_value_t = 4096)]
        m_max: u64,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[command(flatten)]
        output: Output,
    },
    /// Graphviz rendering.
    ExportDot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled acceptance frequency with its Hoeffding radius.
    MonteCarlo {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn rational(text: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(text)?)
}

fn show(r: &Rational) -> String {
    format!("{}\t{}", format_rational(r), to_f64(r))
}

impl Input {
    fn document(&self) -> Result<Document, Failure> {
        let text = if self.automaton == BUILTIN_FIG1 {
            numberless::io::FIG1_DOCUMENT.to_string()
        } else {
            fs::read_to_string(&self.automaton)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", self.automaton)))?
        };
        Ok(parse_document(&text)?)
    }

    fn parameters(&self) -> Result<Parameters, Failure> {
        let mut params = Parameters::new();
        for binding in &self.set {
            let (name, value) = binding
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("expected NAME=P/Q, got {binding:?}")))?;
            params.insert(name.trim().to_string(), rational(value.trim())?);
        }
        Ok(params)
    }

    fn pa(&self) -> Result<ProbAutomaton, Failure> {
        Ok(self.document()?.to_pa(&self.parameters()?)?)
    }

    fn simple(&self) -> Result<SimplePa, Failure> {
        Ok(SimplePa::new(self.pa()?)?)
    }
}

fn emit(output: &Output, text: &str) -> CliResult {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(text.as_bytes()))
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Eval { input, word } => {
            let pa = input.pa()?;
            let w = pa.skeleton().word(&word)?;
            println!("{}", show(&pa.accept_prob(&w)?));
        }
        Command::Reach { input, from, word, to } => {
            let pa = input.pa()?;
            let sk = pa.skeleton();
            let targets = to
                .split(',')
                .map(|s| sk.state(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let p = pa.reach_prob(sk.state(&from)?, &sk.word(&word)?, &targets)?;
            println!("{}", show(&p));
        }
        Command::Search { input, max_len, beam } => {
            let pa = input.pa()?;
            let r = value_lower_bound(&pa, SearchBudget::beam(max_len, beam))?;
            println!("{}", show(&r.probability));
            println!("word\t{}", pa.skeleton().render_word(&r.word));
            println!("explored\t{}", r.explored);
        }
        Command::FairCoin { input, lambda, output } => {
            let b = fair_coin(&input.simple()?, &rational(&lambda)?)?;
            let doc = AutomatonDocument::from_pa("fair_coin", Kind::Pa, &b.automaton);
            emit(&output, &doc.to_canonical())?;
        }
        Command::SimulateBuild { input, output } => {
            let c = build_simulation(&input.simple()?)?;
            emit(&output, &AutomatonDocument::from_npa("simulation", &c.npa).to_canonical())?;
        }
        Command::SimulateInstantiate {
            input,
            lambda,
            theta,
            output,
        } => {
            let c = build_simulation(&input.simple()?)?;
            let inst = instantiate_simulation(&c, &rational(&lambda)?, &rational(&theta)?)?;
            emit(
                &output,
                &AutomatonDocument::from_pa("simulation_instance", Kind::Pa, &inst).to_canonical(),
            )?;
        }
        Command::Hat { input, word } => {
            let c = build_simulation(&input.simple()?)?;
            let u = c.base_skeleton().word(&word)?;
            println!("{}", c.npa.skeleton().render_word(&c.hat(&u)?));
        }
        Command::Encode { input, word, k } => {
            let shape = FairCoinShape::new(&input.simple()?)?;
            let u = input.pa()?.skeleton().word(&word)?;
            println!("{}", shape.skeleton().render_word(&encode_word(&u, k, shape.sharp())));
        }
        Command::FairnessDfa { input, output } => {
            let c = build_simulation(&input.simple()?)?;
            let dfa = c.checker.to_automaton(c.base_skeleton())?;
            emit(&output, &AutomatonDocument::from_pa("fairness", Kind::Pa, &dfa).to_canonical())?;
        }
        Command::Buchi { input, output } => {
            let ba = buchi_reduction(&input.pa()?)?;
            emit(
                &output,
                &AutomatonDocument::from_pa("buchi", Kind::Pba, &ba.automaton).to_canonical(),
            )?;
        }
        Command::Lasso { input, stem, cycle } => {
            let ba = input.document()?.to_buchi(&input.parameters()?)?;
            let sk = ba.skeleton();
            let word = LassoWord::new(sk.word(&stem)?, sk.word(&cycle)?)?;
            println!("{}", show(&lasso_prob(&ba, &word)?));
        }
        Command::Sweep {
            input,
            eps,
            grid,
            max_len,
            beam,
            output,
        } => {
            let doc = input.document()?;
            let center = doc.to_pa(&input.parameters()?)?;
            let npa = doc.to_npa()?;
            let pts = noisy_sweep(
                &npa,
                center.transitions(),
                &rational(&eps)?,
                grid,
                SearchBudget::beam(max_len, beam),
            )?;
            let sk = npa.skeleton();
            let mut csv = String::from("point,offsets,bound,bound_float,word\n");
            for (i, p) in pts.iter().enumerate() {
                let offsets: Vec<_> = p.offsets.iter().map(format_rational).collect();
                csv.push_str(&format!(
                    "{i},{},{},{},{}\n",
                    offsets.join(";"),
                    format_rational(&p.bound.probability),
                    to_f64(&p.bound.probability),
                    sk.render_word(&p.bound.word)
                ));
            }
            emit(&output, &csv)?;
        }
        Command::CheckProps { seed, trials, output } => {
            let cfg = SuiteConfig::default();
            let mut reports = fair_coin_suite(seed, trials, &cfg, Exec::default())?;
            reports.extend(simulation_suite(seed, trials, &cfg, Exec::default())?);
            let mut csv = format!("{}\n", PropReport::CSV_HEADER);
            for r in &reports {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            emit(&output, &csv)?;
            let violated = reports.iter().filter(|r| r.verdict == Verdict::Violated).count();
            eprintln!("{} checks, {violated} violated", reports.len());
            if violated > 0 {
                return Err(Failure::Violation(format!("{violated} checks violated")));
            }
        }
        Command::CaseStudy {
            x,
            y,
            n_max,
            m_max,
            eps,
            output,
        } => {
            let cs = fig1_case_study(&rational(&x)?, &rational(&y)?, n_max, m_max, &rational(&eps)?)?;
            let mut csv = format!("{}\n", CaseStudyRow::CSV_HEADER);
            for r in &cs.rows {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            emit(&output, &csv)?;
            match cs.first_above {
                Some((n, m)) => eprintln!("first row above 1 - {eps}: n={n} m={m}"),
                None => eprintln!("no row above 1 - {eps}"),
            }
        }
        Command::ExportDot { input, output } => {
            let doc = input.document()?;
            let dot = if doc.kind() == Kind::Npa && input.set.is_empty() {
                export_dot_npa(doc.name(), &doc.to_npa()?)
            } else {
                export_dot_pa(doc.name(), &doc.to_pa(&input.parameters()?)?)
            };
            emit(&output, &dot)?;
        }
        Command::MonteCarlo {
            input,
            word,
            samples,
            seed,
        } => {
            let pa = input.pa()?;
            let w = pa.skeleton().word(&word)?;
            let estimate = monte_carlo_accept(&pa, &w, samples, seed)?;
            println!("estimate\t{estimate}");
            println!("exact\t{}", show(&pa.accept_prob(&w)?));
            println!("radius_95\t{}", hoeffding_radius(samples, 0.05));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
