//! Two gates for which the local-basis finder must herald a failure rather
//! than guess a basis.

use concordant::circuit::LocalBasis;
use concordant::generate::{g_exc1, g_exc2};
use concordant::lbf::{run_lbf, LbfConfig, LbfInput, LbfOutcome};

fn main() {
    let prev = LocalBasis::computational(&[2, 2]);
    for (name, gate) in [("exc1", g_exc1(vec![0, 1])), ("exc2", g_exc2(vec![0, 1]))] {
        match run_lbf(&LbfInput { gate: &gate, prev: &prev }, &LbfConfig::default()).unwrap() {
            LbfOutcome::Incompatible(w) => println!(
                "{name}: candidates {:?} and {:?} disagree on qudit {}",
                w.k.subset, w.k_prime.subset, w.qudit
            ),
            LbfOutcome::Success(_) => println!("{name}: unexpectedly resolved"),
        }
    }
}
