//! Run the local-basis finder on a CNOT whose inputs live in the |+>, |->
//! basis: the gate acts there as a CNOT with control and target swapped.

use concordant::circuit::LocalBasis;
use concordant::generate::{cnot, plus_minus_basis};
use concordant::lbf::{run_lbf, LbfConfig, LbfInput, LbfOutcome};

fn main() {
    let gate = cnot(vec![0, 1]);
    let prev = LocalBasis::new(vec![plus_minus_basis(), plus_minus_basis()]).unwrap();
    match run_lbf(&LbfInput { gate: &gate, prev: &prev }, &LbfConfig::default()).unwrap() {
        LbfOutcome::Success(s) => {
            let dump = s.dump(&[2, 2]);
            println!("{}", serde_json::to_string_pretty(&dump.permutation).unwrap());
            println!("blocks {:?}", dump.partition);
        }
        LbfOutcome::Incompatible(w) => println!("heralded on qudit {}", w.qudit),
    }
}
