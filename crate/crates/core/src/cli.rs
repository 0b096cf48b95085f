//! Command-line front end. The binary only parses arguments, sizes the
//! thread pool and maps [`CliError`] to an exit code.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::circuit::{load_circuit, matrix_from_rows, Circuit, GaussianRows, LocalBasis};
use crate::exactnum::rational::format_rational;
use crate::exactnum::{BigRational, ExactMatrix};
use crate::generate::{random_circuit, CircuitSpec};
use crate::lbf::{run_lbf, LbfConfig, LbfError, LbfInput, LbfOutcome};
use crate::oracle::{check_concordant, dense_marginals, evolve, DenseEvolution, DEFAULT_DENSE_CAP};
use crate::simulator::{
    build_update_rule, exact_marginals, sample_from_rule, HeraldedFailure, MeasurementSpec,
    MeasurementTarget, SimError, Strategy, UpdateRule, DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Parser)]
#[command(name = "concordant", version, about = "Exact classical simulation of concordant circuits")]
pub struct Cli {
    /// Worker threads for shot sampling (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Circuit JSON file.
    #[arg(long)]
    pub circuit: PathBuf,
    /// lbf, clifford12 or auto.
    #[arg(long, default_value = "auto")]
    pub strategy: Strategy,
    /// Seed for the finder's random instances.
    #[arg(long, default_value_t = 0)]
    pub lbf_seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample measurement outcomes.
    Simulate {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated `qudit:Z` or `qudit:FILE`; all qudits in Z if omitted.
        #[arg(long)]
        measure: Option<String>,
    },
    /// Dump the update rule as text.
    UpdateRule {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact outcome distribution.
    Marginals {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        measure: Option<String>,
    },
    /// Cross-check the update rule against dense evolution.
    Verify {
        #[command(flatten)]
        circuit: CircuitArgs,
    },
    /// Run the local-basis finder on one gate (0-based), after threading the
    /// basis through the gates before it.
    Lbf {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        gate: usize,
        #[arg(long, default_value_t = 0)]
        lbf_seed: u64,
    },
    /// Synthesize a random concordant circuit.
    Gen {
        /// Comma-separated local dimensions, e.g. `2,2,3`.
        #[arg(long)]
        qudits: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        gates: usize,
        #[arg(long, default_value_t = 2)]
        max_support: usize,
        #[arg(long, default_value_t = 9)]
        max_support_dim: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the planted basis after every gate.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Heralded(String),
    #[error("{0}")]
    Promise(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) | Self::Io(_) => 1,
            Self::Heralded(_) => 2,
            Self::Promise(_) | Self::Mismatch(_) => 3,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Heralded(h) => Self::Heralded(h.to_string()),
            e if e.is_promise_violation() => Self::Promise(e.to_string()),
            e => Self::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Circuit, CliError> {
    load_circuit(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse `0:Z,1:X,2:basis.json`. A basis file holds a JSON list of projector
/// matrices with entries in the circuit scalar format.
pub fn parse_measure_spec(text: &str, dims: &[usize]) -> Result<MeasurementSpec, CliError> {
    let mut targets = Vec::new();
    for token in text.split(',') {
        let bad = |why: &str| CliError::Input(format!("bad measurement token `{token}`: {why}"));
        let (q, kind) = token.trim().split_once(':').ok_or_else(|| bad("expected qudit:Z, qudit:X or qudit:FILE"))?;
        let qudit: usize = q.trim().parse().map_err(|_| bad("qudit is not an index"))?;
        let &d = dims.get(qudit).ok_or_else(|| bad("qudit out of range"))?;
        if targets.iter().any(|t: &MeasurementTarget| t.qudit == qudit) {
            return Err(bad("qudit listed twice"));
        }
        let basis = match kind.trim() {
            "Z" => crate::circuit::computational_projectors(d),
            "X" if d == 2 => crate::generate::plus_minus_basis(),
            "X" => return Err(bad("X needs a qubit")),
            "" => return Err(bad("missing basis")),
            file => {
                let text = std::fs::read_to_string(file).map_err(|e| bad(&e.to_string()))?;
                let rows: Vec<GaussianRows> = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
                let projs: Vec<ExactMatrix> = rows
                    .into_iter()
                    .map(matrix_from_rows)
                    .collect::<Result<_, _>>()
                    .map_err(|e| bad(&e.to_string()))?;
                LocalBasis::new(vec![projs.clone()]).map_err(|e| bad(&e.to_string()))?;
                projs
            }
        };
        targets.push(MeasurementTarget { qudit, basis });
    }
    MeasurementSpec::new(targets, dims).map_err(|e| CliError::Input(e.to_string()))
}

fn measure_spec(text: Option<&str>, circuit: &Circuit) -> Result<MeasurementSpec, CliError> {
    let dims = circuit.register().dims();
    match text {
        Some(t) => parse_measure_spec(t, dims),
        None => Ok(MeasurementSpec::computational(&(0..dims.len()).collect::<Vec<_>>(), dims)?),
    }
}

fn build(circuit: &Circuit, args: &CircuitArgs) -> Result<UpdateRule, CliError> {
    let config = LbfConfig {
        seed: args.lbf_seed,
        ..LbfConfig::default()
    };
    Ok(build_update_rule(circuit, args.strategy, &config)?.into_rule()?)
}

fn exact_json(m: &BTreeMap<String, BigRational>) -> String {
    let m: BTreeMap<&String, String> = m.iter().map(|(k, v)| (k, format_rational(v))).collect();
    serde_json::to_string_pretty(&m).expect("strings serialize")
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(d) if d >= 2 => Ok(d),
            _ => Err(CliError::Input(format!("bad qudit dimension `{t}`"))),
        })
        .collect()
}

/// Run one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate {
            circuit,
            shots,
            seed,
            measure,
        } => {
            let c = load(&circuit.circuit)?;
            let spec = measure_spec(measure.as_deref(), &c)?;
            let rule = build(&c, circuit)?;
            let mut report = sample_from_rule(&rule, c.initial(), &spec, *shots, *seed);
            match exact_marginals(&rule, c.initial(), &spec, DEFAULT_ENUMERATION_CAP) {
                Ok(m) => report.exact = Some(m.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()),
                Err(SimError::TooLarge { .. }) => {}
                Err(e) => return Err(e.into()),
            }
            writeln!(out, "{}", report.to_json())?;
        }
        Command::UpdateRule { circuit, output } => {
            let c = load(&circuit.circuit)?;
            let rule = build(&c, circuit)?;
            write_or_print(output.as_deref(), &rule.to_text(), out)?;
        }
        Command::Marginals { circuit, measure } => {
            let c = load(&circuit.circuit)?;
            let spec = measure_spec(measure.as_deref(), &c)?;
            let rule = build(&c, circuit)?;
            let m = exact_marginals(&rule, c.initial(), &spec, DEFAULT_ENUMERATION_CAP)?;
            writeln!(out, "{}", exact_json(&m))?;
        }
        Command::Verify { circuit } => verify(&load(&circuit.circuit)?, circuit, out)?,
        Command::Lbf {
            circuit,
            gate,
            lbf_seed,
        } => lbf_probe(&load(circuit)?, *gate, *lbf_seed, out)?,
        Command::Gen {
            qudits,
            seed,
            gates,
            max_support,
            max_support_dim,
            output,
            truth,
        } => {
            let dims = parse_dims(qudits)?;
            if *max_support == 0 || *max_support_dim < 2 {
                return Err(CliError::Input("support limits must allow at least one qudit".into()));
            }
            let t = random_circuit(
                &CircuitSpec {
                    dims,
                    gates: *gates,
                    max_support: *max_support,
                    max_support_dim: *max_support_dim,
                },
                *seed,
            );
            write_or_print(output.as_deref(), &(t.circuit.to_json() + "\n"), out)?;
            if let Some(path) = truth {
                let bases: Vec<Vec<Vec<GaussianRows>>> = t
                    .bases
                    .iter()
                    .map(|b| b.iter().map(|ps| ps.iter().map(ExactMatrix::to_rows).collect()).collect())
                    .collect();
                let text = serde_json::to_string_pretty(&bases).expect("matrices serialize");
                write_or_print(Some(path), &text, out)?;
            }
        }
    }
    Ok(())
}

fn verify(c: &Circuit, args: &CircuitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rule = build(c, args)?;
    let mut dense =
        DenseEvolution::start(c, DEFAULT_DENSE_CAP).map_err(|e| CliError::Input(e.to_string()))?;
    let mut basis = c.initial().basis().clone();
    let mut failures = Vec::new();
    let concordant = check_concordant(&dense, &basis);
    writeln!(out, "step 0: {}", if concordant { "concordant" } else { "NOT concordant" })?;
    if !concordant {
        failures.push("initial state".to_string());
    }
    for (g, step) in c.gates().iter().zip(&rule.steps) {
        dense = evolve(&dense, g).map_err(|e| CliError::Input(e.to_string()))?;
        // Bases are always present in freshly built rules.
        for (&j, projs) in step.support().iter().zip(step.new_basis.iter().flatten()) {
            basis.set_qudit(j, projs.clone());
        }
        let ok = check_concordant(&dense, &basis);
        writeln!(
            out,
            "step {} support {:?}: {}",
            step.t,
            step.support(),
            if ok { "concordant" } else { "NOT concordant" }
        )?;
        if !ok {
            failures.push(format!("step {}", step.t));
        }
    }
    let dims = c.register().dims();
    let spec = MeasurementSpec::computational(&(0..dims.len()).collect::<Vec<_>>(), dims)?;
    let want = dense_marginals(&dense, &spec).map_err(|e| CliError::Input(e.to_string()))?;
    let got = exact_marginals(&rule, c.initial(), &spec, DEFAULT_ENUMERATION_CAP)?;
    let equal = want == got;
    writeln!(out, "marginals: {}", if equal { "equal" } else { "DIFFER" })?;
    if !equal {
        failures.push("marginals".into());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failures.join(", ")))
    }
}

fn lbf_probe(c: &Circuit, gate: usize, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let gates = c.gates();
    if gate >= gates.len() {
        return Err(CliError::Input(format!("gate {gate} out of range (circuit has {})", gates.len())));
    }
    let config = LbfConfig {
        seed,
        ..LbfConfig::default()
    };
    let mut basis = c.initial().basis().clone();
    for (t, g) in gates.iter().enumerate().take(gate + 1) {
        let prev = LocalBasis::new(g.support().iter().map(|&j| basis.qudit(j).to_vec()).collect())
            .expect("restriction of a valid basis");
        let outcome = run_lbf(&LbfInput { gate: g, prev: &prev }, &config).map_err(|e| match e {
            LbfError::PromiseViolation(_) | LbfError::NoPermutation(_) => CliError::Promise(format!("gate {t}: {e}")),
            e => CliError::Input(format!("gate {t}: {e}")),
        })?;
        match outcome {
            LbfOutcome::Success(s) if t == gate => {
                let dump = s.dump(&prev.dims());
                writeln!(out, "{}", serde_json::to_string_pretty(&dump).expect("dump serializes"))?;
            }
            LbfOutcome::Success(s) => {
                for (&j, projs) in g.support().iter().zip(s.basis) {
                    basis.set_qudit(j, projs);
                }
            }
            LbfOutcome::Incompatible(witness) => {
                let h = HeraldedFailure {
                    t: t + 1,
                    support: g.support().to_vec(),
                    witness,
                };
                writeln!(out, "gate {t}: {h}")?;
                writeln!(out, "commutator witness on qudit {}:", h.witness.qudit)?;
                for row in h.witness.commutator.to_rows() {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    writeln!(out, "  [{}]", cells.join(", "))?;
                }
                return Err(CliError::Heralded(h.to_string()));
            }
        }
    }
    Ok(())
}
