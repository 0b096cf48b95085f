//! Decompose a classical-quantum state on one qubit into projectors and
//! conditional states.

use concordant::circuit::QuditRegister;
use concordant::exactnum::rational::ratio;
use concordant::exactnum::{ExactMatrix, GaussianRational as G};
use concordant::frase::{frase_decompose, reconstruct, DenseState};

fn main() {
    // rho = 1/2 |+><+| (x) |0><0| + 1/2 |-><-| (x) |1><1|
    let h = G::from(ratio(1, 4));
    let m = ExactMatrix::from_fn(4, 4, |r, c| {
        let (a, x) = (r / 2, r % 2);
        let (b, y) = (c / 2, c % 2);
        if x != y {
            return G::zero();
        }
        // <a|+><+|b> = 1/2, <a|-><-|b> = (-1)^(a+b) / 2
        let sign = if x == 1 && a != b { -1 } else { 1 };
        h.scale(&ratio(sign, 1))
    });
    let state = DenseState::new(QuditRegister::qubits(2), m).unwrap();
    let frases = frase_decompose(&state, &[0]).unwrap();
    for f in &frases {
        println!("projector {:?}", f.projector.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
        println!("  rank {}, conditional state trace {}", f.rank, f.sove.operator.trace());
    }
    assert_eq!(reconstruct(&state, &[0], &frases), *state.matrix());
}
