//! Update rules and output statistics.
//!
//! A concordant circuit is replaced by an equivalent one made of dit-string
//! permutations plus local-basis replacements. Trajectories only need the
//! permutations and the final basis; intermediate bases are kept for dumps.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{
    digits_of, format_dits, index_of, Circuit, CircuitError, Gate, InitialState, LocalBasis, PermutationGate,
};
use crate::cliffordsym::{affine_group, diagnose_degeneracy12, CliffordError, DiagonalProductState, ReversibleCircuit};
use crate::exactnum::rational::format_rational;
use crate::exactnum::{BigRational, ExactMatrix, GaussianRational, Matrix};
use crate::lbf::{run_lbf, LbfConfig, LbfError, LbfInput, LbfOutcome, Witness};

/// Default cap on the number of initial strings [`exact_marginals`] enumerates.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Lbf(#[from] LbfError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("{0}")]
    Heralded(Box<HeraldedFailure>),
    #[error("strategy unavailable: {0}")]
    StrategyUnavailable(String),
    #[error("enumeration of {size} strings exceeds the cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("invalid measurement: {0}")]
    Measurement(String),
}

impl SimError {
    /// Promise violations are reported separately from heralds and input errors.
    pub fn is_promise_violation(&self) -> bool {
        matches!(self, SimError::Lbf(LbfError::PromiseViolation(_) | LbfError::NoPermutation(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Lbf,
    Clifford12,
    Auto,
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lbf" => Ok(Self::Lbf),
            "clifford12" => Ok(Self::Clifford12),
            "auto" => Ok(Self::Auto),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lbf => "lbf",
            Self::Clifford12 => "clifford12",
            Self::Auto => "auto",
        })
    }
}

/// One time step: apply `permutation` on `support`, then switch the support
/// qudits to `new_basis` (absent once stripped).
#[derive(Debug, Clone, PartialEq)]
pub struct RuleStep {
    /// 1-based gate index.
    pub t: usize,
    pub permutation: PermutationGate,
    pub new_basis: Option<Vec<Vec<ExactMatrix>>>,
}

impl RuleStep {
    pub fn support(&self) -> &[usize] {
        self.permutation.support()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpdateRule {
    pub dims: Vec<usize>,
    pub strategy: Strategy,
    pub steps: Vec<RuleStep>,
    pub final_basis: LocalBasis,
}

/// Incompatible local bases at step `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeraldedFailure {
    pub t: usize,
    pub support: Vec<usize>,
    pub witness: Box<Witness>,
}

impl fmt::Display for HeraldedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Local-basis ambiguity at time step {} (support {:?}): candidates {:?} and {:?} have incompatible unique bases on support qudit {}",
            self.t, self.support, self.witness.k.subset, self.witness.k_prime.subset, self.witness.qudit
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuildOutcome {
    Rule(UpdateRule),
    Heralded(HeraldedFailure),
}

impl BuildOutcome {
    pub fn into_rule(self) -> Result<UpdateRule, SimError> {
        match self {
            Self::Rule(r) => Ok(r),
            Self::Heralded(h) => Err(SimError::Heralded(Box::new(h))),
        }
    }
}

fn restrict(basis: &LocalBasis, support: &[usize]) -> LocalBasis {
    LocalBasis::new(support.iter().map(|&j| basis.qudit(j).to_vec()).collect()).expect("restriction of a valid basis")
}

/// Thread the local basis through the circuit gate by gate.
pub fn build_update_rule(circuit: &Circuit, strategy: Strategy, config: &LbfConfig) -> Result<BuildOutcome, SimError> {
    match strategy {
        Strategy::Lbf => build_lbf(circuit, config),
        Strategy::Clifford12 => build_clifford12(circuit).map(BuildOutcome::Rule),
        Strategy::Auto => {
            if clifford12_applicable(circuit) {
                match build_clifford12(circuit) {
                    Ok(rule) => return Ok(BuildOutcome::Rule(rule)),
                    Err(SimError::StrategyUnavailable(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            build_lbf(circuit, config)
        }
    }
}

fn clifford12_applicable(circuit: &Circuit) -> bool {
    circuit.register().dims().iter().all(|&d| d == 2) && circuit.gates().iter().all(|g| g.support().len() <= 2)
}

fn build_lbf(circuit: &Circuit, config: &LbfConfig) -> Result<BuildOutcome, SimError> {
    let mut basis = circuit.initial().basis().clone();
    let mut steps = Vec::with_capacity(circuit.gates().len());
    for (k, gate) in circuit.gates().iter().enumerate() {
        let t = k + 1;
        let prev = restrict(&basis, gate.support());
        match run_lbf(&LbfInput { gate, prev: &prev }, config)? {
            LbfOutcome::Success(s) => {
                for (&j, projs) in gate.support().iter().zip(&s.basis) {
                    basis.set_qudit(j, projs.clone());
                }
                steps.push(RuleStep {
                    t,
                    permutation: s.permutation,
                    new_basis: Some(s.basis),
                });
            }
            LbfOutcome::Incompatible(witness) => {
                return Ok(BuildOutcome::Heralded(HeraldedFailure {
                    t,
                    support: gate.support().to_vec(),
                    witness,
                }))
            }
        }
    }
    Ok(BuildOutcome::Rule(UpdateRule {
        dims: circuit.register().dims().to_vec(),
        strategy: Strategy::Lbf,
        steps,
        final_basis: basis,
    }))
}

/// Classical step for a gate that maps degeneracy blocks of the current
/// state onto sets of basis strings, without changing the basis.
fn classical_step(gate: &Gate, prev: &LocalBasis, blocks: &[Vec<usize>]) -> Option<Vec<usize>> {
    let local_dims = prev.dims();
    let local: Vec<usize> = (0..local_dims.len()).collect();
    let d = gate.dim();
    let pis: Vec<ExactMatrix> = (0..d)
        .map(|x| prev.embed_projector(&local, &digits_of(x, &local_dims)).expect("in range"))
        .collect();
    let mut map = vec![usize::MAX; d];
    for block in blocks {
        let sum = block.iter().fold(Matrix::filled(d, d, GaussianRational::zero()), |a, &x| a.plus(&pis[x]));
        let image = gate.conjugate_projector(&sum).ok()?;
        // The image must be a sum of basis projectors; collect which ones.
        let targets: Vec<usize> = (0..d).filter(|&y| !image.trace_of_product(&pis[y]).is_zero()).collect();
        let rebuilt = targets.iter().fold(Matrix::filled(d, d, GaussianRational::zero()), |a, &y| a.plus(&pis[y]));
        if targets.len() != block.len() || rebuilt != image {
            return None;
        }
        for (&x, &y) in block.iter().zip(&targets) {
            map[x] = y;
        }
    }
    Some(map)
}

fn build_clifford12(circuit: &Circuit) -> Result<UpdateRule, SimError> {
    if !clifford12_applicable(circuit) {
        return Err(SimError::StrategyUnavailable(
            "clifford12 needs a qubit register and gates on at most two qubits".into(),
        ));
    }
    let n = circuit.register().len();
    let initial = circuit.initial();
    let q = initial.probs().iter().map(|p| &p[0] - &p[1]).collect();
    let state = DiagonalProductState::new(q)?;
    let basis = initial.basis().clone();
    let mut history = ReversibleCircuit::empty(n);
    let mut steps = Vec::new();
    for (k, gate) in circuit.gates().iter().enumerate() {
        let t = k + 1;
        let support = gate.support();
        let blocks = diagnose_degeneracy12(&state, &history, support)?;
        let prev = restrict(&basis, support);
        let map = classical_step(gate, &prev, &blocks)
            .ok_or_else(|| SimError::StrategyUnavailable(format!("gate {t} is not classical in the current basis")))?;
        // Every permutation of one or two bits is affine.
        let action = affine_group(n, support)?
            .into_iter()
            .find(|c| support_action(c, support) == map)
            .expect("affine group covers all permutations of two bits");
        history = history.then(&action);
        steps.push(RuleStep {
            t,
            permutation: PermutationGate::new(support.to_vec(), map)?,
            new_basis: Some(prev.into_inner()),
        });
    }
    Ok(UpdateRule {
        dims: circuit.register().dims().to_vec(),
        strategy: Strategy::Clifford12,
        steps,
        final_basis: basis,
    })
}

fn support_action(c: &ReversibleCircuit, support: &[usize]) -> Vec<usize> {
    let k = support.len();
    (0..1usize << k)
        .map(|x| {
            let mut bits = vec![false; c.n];
            for (i, &q) in support.iter().enumerate() {
                bits[q] = x >> (k - 1 - i) & 1 == 1;
            }
            c.apply_bits(&mut bits);
            support.iter().fold(0, |acc, &q| acc << 1 | bits[q] as usize)
        })
        .collect()
}

impl UpdateRule {
    /// Same rule without intermediate bases; trajectories and marginals only
    /// need the permutations and the final basis.
    pub fn stripped(&self) -> Self {
        let mut r = self.clone();
        for s in &mut r.steps {
            s.new_basis = None;
        }
        r
    }

    /// Apply the composed permutations to a full dit string.
    pub fn transport(&self, s_in: &[usize]) -> Vec<usize> {
        let mut s = s_in.to_vec();
        for step in &self.steps {
            let support = step.support();
            let dims: Vec<usize> = support.iter().map(|&j| self.dims[j]).collect();
            let local: Vec<usize> = support.iter().map(|&j| s[j]).collect();
            let out = digits_of(step.permutation.apply(index_of(&local, &dims)), &dims);
            for (&j, v) in support.iter().zip(out) {
                s[j] = v;
            }
        }
        s
    }

    /// Text dump: permutation tables and basis projectors per step.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "register {}", dims.join(","));
        let _ = writeln!(out, "strategy {}", self.strategy);
        for step in &self.steps {
            let support = step.support();
            let sd: Vec<usize> = support.iter().map(|&j| self.dims[j]).collect();
            let _ = writeln!(out, "step {} support {:?}", step.t, support);
            for (x, &y) in step.permutation.map().iter().enumerate() {
                if x != y {
                    let _ = writeln!(
                        out,
                        "  {} -> {}",
                        format_dits(&digits_of(x, &sd), &sd),
                        format_dits(&digits_of(y, &sd), &sd)
                    );
                }
            }
            if let Some(basis) = &step.new_basis {
                for (&j, projs) in support.iter().zip(basis) {
                    write_basis(&mut out, j, projs);
                }
            }
        }
        let _ = writeln!(out, "final");
        for j in 0..self.dims.len() {
            write_basis(&mut out, j, self.final_basis.qudit(j));
        }
        out
    }
}

fn write_basis(out: &mut String, j: usize, projs: &[ExactMatrix]) {
    let _ = writeln!(out, "  qudit {j}");
    for p in projs {
        let rows: Vec<String> = p
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        let _ = writeln!(out, "    [{}]", rows.join(", "));
    }
}

/// Draw an index from an exact distribution using fair random bits: the
/// dyadic interval of the bits drawn so far is refined until it fits inside
/// one cumulative bucket.
pub fn sample_index<R: Rng>(probs: &[BigRational], rng: &mut R) -> usize {
    let mut cumulative = Vec::with_capacity(probs.len() + 1);
    let mut acc = BigRational::zero();
    cumulative.push(acc.clone());
    for p in probs {
        acc += p;
        cumulative.push(acc.clone());
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut lo = BigRational::zero();
    let mut width = BigRational::one();
    loop {
        width *= &half;
        if rng.gen::<bool>() {
            lo += &width;
        }
        let hi = &lo + &width;
        // First bucket whose upper end exceeds lo.
        let k = cumulative[1..].iter().position(|c| *c > lo).expect("probabilities sum to one");
        if hi <= cumulative[k + 1] {
            return k;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub s_in: Vec<usize>,
    pub s_out: Vec<usize>,
}

pub fn sample_trajectory<R: Rng>(rule: &UpdateRule, init: &InitialState, rng: &mut R) -> Trajectory {
    let s_in: Vec<usize> = init.probs().iter().map(|p| sample_index(p, rng)).collect();
    let s_out = rule.transport(&s_in);
    Trajectory { s_in, s_out }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementTarget {
    pub qudit: usize,
    pub basis: Vec<ExactMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSpec {
    pub targets: Vec<MeasurementTarget>,
}

impl MeasurementSpec {
    pub fn new(targets: Vec<MeasurementTarget>, dims: &[usize]) -> Result<Self, SimError> {
        for t in &targets {
            let d = *dims
                .get(t.qudit)
                .ok_or_else(|| SimError::Measurement(format!("qudit {} out of range", t.qudit)))?;
            LocalBasis::new(vec![t.basis.clone()])
                .ok()
                .filter(|b| b.dims() == [d])
                .ok_or_else(|| SimError::Measurement(format!("basis for qudit {} is not a complete rank-1 basis", t.qudit)))?;
        }
        Ok(Self { targets })
    }

    /// Computational-basis measurement of the listed qudits.
    pub fn computational(qudits: &[usize], dims: &[usize]) -> Result<Self, SimError> {
        let targets = qudits
            .iter()
            .map(|&q| {
                let d = *dims.get(q).ok_or_else(|| SimError::Measurement(format!("qudit {q} out of range")))?;
                Ok(MeasurementTarget {
                    qudit: q,
                    basis: crate::circuit::computational_projectors(d),
                })
            })
            .collect::<Result<_, SimError>>()?;
        Ok(Self { targets })
    }

    fn outcome_dims(&self) -> Vec<usize> {
        self.targets.iter().map(|t| t.basis.len()).collect()
    }
}

/// `Tr(B_k F)` for every target, with `F` the final-basis projector of the
/// target's dit in `s_out`.
pub fn measure_probabilities(rule: &UpdateRule, s_out: &[usize], spec: &MeasurementSpec) -> Vec<Vec<BigRational>> {
    spec.targets
        .iter()
        .map(|t| {
            let f = rule.final_basis.projector(t.qudit, s_out[t.qudit]);
            t.basis.iter().map(|b| b.trace_of_product(f).re).collect()
        })
        .collect()
}

// Outcome distributions indexed by target then by final-basis dit.
struct MeasureTable(Vec<Vec<Vec<BigRational>>>);

impl MeasureTable {
    fn new(rule: &UpdateRule, spec: &MeasurementSpec) -> Self {
        Self(
            spec.targets
                .iter()
                .map(|t| {
                    rule.final_basis
                        .qudit(t.qudit)
                        .iter()
                        .map(|f| t.basis.iter().map(|b| b.trace_of_product(f).re).collect())
                        .collect()
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<BTreeMap<String, String>>,
}

impl SampleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Sample `shots` trajectories and measurement outcomes. Each shot draws from
/// its own ChaCha stream, so reports do not depend on the thread count.
pub fn sample_from_rule(
    rule: &UpdateRule,
    init: &InitialState,
    spec: &MeasurementSpec,
    shots: u64,
    seed: u64,
) -> SampleReport {
    let table = MeasureTable::new(rule, spec);
    let odims = spec.outcome_dims();
    let counts = (0..shots)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<String, u64>, shot| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shot);
            let traj = sample_trajectory(rule, init, &mut rng);
            let outcome: Vec<usize> = spec
                .targets
                .iter()
                .zip(&table.0)
                .map(|(t, per_dit)| sample_index(&per_dit[traj.s_out[t.qudit]], &mut rng))
                .collect();
            *acc.entry(format_dits(&outcome, &odims)).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    SampleReport {
        shots,
        seed,
        counts,
        exact: None,
    }
}

/// Options for [`run_shots`].
#[derive(Debug, Clone)]
pub struct ShotOptions {
    pub strategy: Strategy,
    pub lbf: LbfConfig,
    /// Attach exact probabilities when enumeration fits under this cap.
    pub exact_cap: Option<usize>,
}

impl Default for ShotOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            lbf: LbfConfig::default(),
            exact_cap: None,
        }
    }
}

pub fn run_shots(
    circuit: &Circuit,
    spec: &MeasurementSpec,
    shots: u64,
    seed: u64,
    options: &ShotOptions,
) -> Result<SampleReport, SimError> {
    let rule = build_update_rule(circuit, options.strategy, &options.lbf)?.into_rule()?;
    let mut report = sample_from_rule(&rule, circuit.initial(), spec, shots, seed);
    if let Some(cap) = options.exact_cap {
        let exact = exact_marginals(&rule, circuit.initial(), spec, cap)?;
        report.exact = Some(exact.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect());
    }
    Ok(report)
}

/// Exact outcome distribution by enumerating every initial string of nonzero
/// probability through the rule.
pub fn exact_marginals(
    rule: &UpdateRule,
    init: &InitialState,
    spec: &MeasurementSpec,
    cap: usize,
) -> Result<BTreeMap<String, BigRational>, SimError> {
    let support: Vec<Vec<usize>> = init
        .probs()
        .iter()
        .map(|p| (0..p.len()).filter(|&k| !p[k].is_zero()).collect())
        .collect();
    let size = support
        .iter()
        .try_fold(1usize, |acc, s| acc.checked_mul(s.len()))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(SimError::TooLarge { size, cap });
    }
    let table = MeasureTable::new(rule, spec);
    let odims = spec.outcome_dims();
    let sizes: Vec<usize> = support.iter().map(Vec::len).collect();
    let mut out: BTreeMap<String, BigRational> = BTreeMap::new();
    for i in 0..size {
        let pick = digits_of(i, &sizes);
        let s_in: Vec<usize> = pick.iter().zip(&support).map(|(&k, s)| s[k]).collect();
        let weight = s_in
            .iter()
            .zip(init.probs())
            .fold(BigRational::one(), |acc, (&k, p)| acc * &p[k]);
        let s_out = rule.transport(&s_in);
        let dists: Vec<&Vec<BigRational>> =
            spec.targets.iter().zip(&table.0).map(|(t, per)| &per[s_out[t.qudit]]).collect();
        // Product over targets of the per-target outcome distributions.
        let mut partial: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), weight)];
        for dist in dists {
            partial = partial
                .into_iter()
                .flat_map(|(o, w)| {
                    dist.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(move |(k, p)| {
                        let mut o = o.clone();
                        o.push(k);
                        (o, &w * p)
                    })
                })
                .collect();
        }
        for (o, w) in partial {
            *out.entry(format_dits(&o, &odims)).or_insert_with(BigRational::zero) += w;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::ratio;

    #[test]
    fn exact_sampler_frequencies() {
        let probs = vec![ratio(1, 3), BigRational::zero(), ratio(2, 3)];
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let mut counts = [0usize; 3];
        for _ in 0..3000 {
            counts[sample_index(&probs, &mut rng)] += 1;
        }
        assert_eq!(counts[1], 0);
        assert!((900..1100).contains(&counts[0]), "{counts:?}");
    }

    #[test]
    fn point_mass_needs_no_luck() {
        let probs = vec![BigRational::zero(), BigRational::one()];
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        assert!((0..50).all(|_| sample_index(&probs, &mut rng) == 1));
    }
}
