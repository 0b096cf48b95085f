//! Cross-check the update rule of a random concordant circuit against dense
//! density-matrix evolution.

use concordant::generate::{random_circuit, CircuitSpec};
use concordant::lbf::LbfConfig;
use concordant::oracle::{check_concordant, dense_marginals, evolve, DenseEvolution, DEFAULT_DENSE_CAP};
use concordant::simulator::{build_update_rule, exact_marginals, MeasurementSpec, Strategy, DEFAULT_ENUMERATION_CAP};

fn main() {
    let spec = CircuitSpec {
        dims: vec![2, 3, 2, 2],
        gates: 10,
        max_support: 2,
        max_support_dim: 6,
    };
    let c = random_circuit(&spec, 2024).circuit;
    let rule = build_update_rule(&c, Strategy::Lbf, &LbfConfig::default()).unwrap().into_rule().unwrap();
    let mut dense = DenseEvolution::start(&c, DEFAULT_DENSE_CAP).unwrap();
    let mut basis = c.initial().basis().clone();
    for (g, step) in c.gates().iter().zip(&rule.steps) {
        dense = evolve(&dense, g).unwrap();
        for (&j, projs) in step.support().iter().zip(step.new_basis.iter().flatten()) {
            basis.set_qudit(j, projs.clone());
        }
        println!("step {:>2} on {:?}: concordant {}", step.t, step.support(), check_concordant(&dense, &basis));
    }
    let m = MeasurementSpec::computational(&[0, 1, 2, 3], c.register().dims()).unwrap();
    let same = dense_marginals(&dense, &m).unwrap() == exact_marginals(&rule, c.initial(), &m, DEFAULT_ENUMERATION_CAP).unwrap();
    println!("marginals equal: {same}");
}
