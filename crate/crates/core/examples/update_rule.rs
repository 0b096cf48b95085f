//! Build and print the update rule of a small reversible circuit, then run
//! shots against it.

use concordant::circuit::{Circuit, InitialState, LocalBasis, QuditRegister};
use concordant::exactnum::rational::ratio;
use concordant::generate::{cnot, not_gate};
use concordant::simulator::{run_shots, MeasurementSpec, ShotOptions};

fn main() {
    let probs = vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(1, 1), ratio(0, 1)], vec![ratio(1, 2), ratio(1, 2)]];
    let initial = InitialState::new(LocalBasis::computational(&[2, 2, 2]), probs).unwrap();
    let gates = vec![cnot(vec![0, 1]), not_gate(vec![2]), cnot(vec![1, 2])];
    let c = Circuit::new(QuditRegister::qubits(3), initial, gates).unwrap();
    let opts = ShotOptions {
        exact_cap: Some(1 << 10),
        ..ShotOptions::default()
    };
    let rule = concordant::simulator::build_update_rule(&c, opts.strategy, &opts.lbf).unwrap().into_rule().unwrap();
    print!("{}", rule.stripped().to_text());
    let spec = MeasurementSpec::computational(&[0, 1, 2], c.register().dims()).unwrap();
    println!("{}", run_shots(&c, &spec, 1000, 3, &opts).unwrap().to_json());
}
