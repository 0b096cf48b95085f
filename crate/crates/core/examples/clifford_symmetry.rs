//! Symmetries of diagonal product states under NOT/CNOT circuits, and the
//! degeneracy blocks they induce on a two-qubit support.

use concordant::cliffordsym::{
    diagnose_degeneracy12, symmetry_test_counted, DiagonalProductState, ReversibleCircuit, ReversibleGate,
};
use concordant::exactnum::rational::ratio;
use concordant::exactnum::BigRational;
use num_traits::Zero;

fn main() {
    // Qubits 0 and 1 share a bias, qubit 2 is maximally mixed.
    let state = DiagonalProductState::new(vec![ratio(1, 3), ratio(1, 3), BigRational::zero()]).unwrap();
    let candidates = [
        ("swap(0,1)", vec![ReversibleGate::Swap(0, 1)]),
        ("not(2)", vec![ReversibleGate::Not(2)]),
        ("not(0)", vec![ReversibleGate::Not(0)]),
        ("cnot(0->2)", vec![ReversibleGate::Cnot { control: 0, target: 2 }]),
        ("cnot(2->0)", vec![ReversibleGate::Cnot { control: 2, target: 0 }]),
    ];
    for (name, gates) in candidates {
        let s = ReversibleCircuit::new(3, gates).unwrap();
        let r = symmetry_test_counted(&state, &s);
        println!("{name:>11}: symmetric {} ({} evaluations)", r.symmetric, r.evaluations);
    }
    let blocks = diagnose_degeneracy12(&state, &ReversibleCircuit::empty(3), &[0, 1]).unwrap();
    println!("degeneracy blocks on [0, 1]: {blocks:?}");
}
