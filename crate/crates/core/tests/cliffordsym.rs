use concordant::circuit::QuditRegister;
use concordant::cliffordsym::{
    diagnose_degeneracy12, propagate_pauli, symmetry_test, symmetry_test_counted, DiagonalProductState, PauliProduct,
    ReversibleCircuit, ReversibleGate,
};
use concordant::exactnum::rational::{rat, ratio};
use concordant::exactnum::{BigRational, ExactMatrix, GaussianRational as G, Matrix};
use concordant::frase::{frase_decompose, DenseState};
use proptest::prelude::*;

// Dense oracle: Pauli products and permutation matrices as explicit matrices.
fn pauli_matrix(p: &PauliProduct) -> ExactMatrix {
    let x = Matrix::from_rows(vec![vec![G::zero(), G::one()], vec![G::one(), G::zero()]]);
    let z = Matrix::from_rows(vec![vec![G::one(), G::zero()], vec![G::zero(), G::from_int(-1)]]);
    let id = Matrix::identity_like(2, &G::zero());
    let mut m = Matrix::identity_like(1, &G::zero());
    for j in 0..p.len() {
        let mut f = id.clone();
        if p.x[j] {
            f = f.mul(&x);
        }
        if p.z[j] {
            f = f.mul(&z);
        }
        m = m.kron(&f);
    }
    let phase = [G::one(), G::i(), G::from_int(-1), -G::i()][p.phase as usize].clone();
    m.scale(&phase)
}

fn permutation_matrix(c: &ReversibleCircuit) -> ExactMatrix {
    let perm = c.permutation();
    Matrix::from_fn(perm.len(), perm.len(), |r, col| if perm[col] == r { G::one() } else { G::zero() })
}

fn gate_strategy(n: usize) -> impl Strategy<Value = ReversibleGate> {
    (0..3usize, 0..n, 1..n).prop_map(move |(kind, a, shift)| {
        let b = (a + shift) % n;
        match kind {
            0 => ReversibleGate::Not(a),
            1 => ReversibleGate::Cnot { control: a, target: b },
            _ => ReversibleGate::Swap(a, b),
        }
    })
}

fn circuit_strategy(n: usize, len: usize) -> impl Strategy<Value = ReversibleCircuit> {
    prop::collection::vec(gate_strategy(n), 0..=len).prop_map(move |g| ReversibleCircuit::new(n, g).unwrap())
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliProduct> {
    (0..4u8, prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n))
        .prop_map(|(phase, x, z)| PauliProduct { phase, x, z })
}

// q values drawn from a small set so coincidences (and hence symmetries) occur.
fn state_strategy(n: usize) -> impl Strategy<Value = DiagonalProductState> {
    prop::collection::vec(prop::sample::select(vec![(1, 1), (-1, 1), (0, 1), (1, 2), (-1, 2), (1, 3)]), n)
        .prop_map(|q| DiagonalProductState::new(q.into_iter().map(|(a, b)| ratio(a, b)).collect()).unwrap())
}

fn dense_symmetric(state: &DiagonalProductState, c: &ReversibleCircuit) -> bool {
    let p = state.probabilities();
    let perm = c.permutation();
    (0..p.len()).all(|x| p[perm[x]] == p[x])
}

#[test]
fn single_gate_rules() {
    let c = ReversibleCircuit::new(2, vec![ReversibleGate::Cnot { control: 0, target: 1 }]).unwrap();
    let zz = PauliProduct::z_on(2, 0).mul(&PauliProduct::z_on(2, 1));
    assert_eq!(propagate_pauli(&c, &PauliProduct::z_on(2, 1)), zz);
    let not = ReversibleCircuit::new(1, vec![ReversibleGate::Not(0)]).unwrap();
    assert_eq!(propagate_pauli(&not, &PauliProduct::z_on(1, 0)), PauliProduct::z_on(1, 0).negated());
}

#[test]
fn symmetry_examples() {
    let swap = ReversibleCircuit::new(2, vec![ReversibleGate::Swap(0, 1)]).unwrap();
    let eq = DiagonalProductState::new(vec![ratio(1, 3), ratio(1, 3)]).unwrap();
    assert!(symmetry_test(&eq, &swap));
    let not = ReversibleCircuit::new(1, vec![ReversibleGate::Not(0)]).unwrap();
    assert!(symmetry_test(&DiagonalProductState::new(vec![rat(0)]).unwrap(), &not));
    assert!(!symmetry_test(&DiagonalProductState::new(vec![rat(1)]).unwrap(), &not));
}

#[test]
fn symmetry_test_costs_two_n_evaluations() {
    for n in 1..=6 {
        let state = DiagonalProductState::new(vec![ratio(1, 2); n]).unwrap();
        let gates = (0..n).map(ReversibleGate::Not).collect();
        let report = symmetry_test_counted(&state, &ReversibleCircuit::new(n, gates).unwrap());
        assert_eq!(report.evaluations, 2 * n);
        assert!(!report.symmetric);
    }
}

#[test]
fn degeneracy_of_fresh_qubits() {
    let empty = ReversibleCircuit::empty(1);
    let mixed = DiagonalProductState::new(vec![rat(0)]).unwrap();
    assert_eq!(diagnose_degeneracy12(&mixed, &empty, &[0]).unwrap(), vec![vec![0, 1]]);
    let pure = DiagonalProductState::new(vec![rat(1)]).unwrap();
    assert_eq!(diagnose_degeneracy12(&pure, &empty, &[0]).unwrap(), vec![vec![0], vec![1]]);
    assert!(diagnose_degeneracy12(&pure, &ReversibleCircuit::empty(3), &[0, 1, 2]).is_err());
}

#[test]
fn cnot_history_blocks() {
    // Control polarized, target mixed: after CNOT the pair has distribution
    // p(00) = p(01) = 3/8, p(10) = p(11) = 1/8.
    let state = DiagonalProductState::new(vec![ratio(1, 2), rat(0)]).unwrap();
    let history = ReversibleCircuit::new(2, vec![ReversibleGate::Cnot { control: 0, target: 1 }]).unwrap();
    assert_eq!(diagnose_degeneracy12(&state, &history, &[0, 1]).unwrap(), vec![vec![0, 1], vec![2, 3]]);
    assert_eq!(diagnose_degeneracy12(&state, &history, &[1]).unwrap(), vec![vec![0, 1]]);
}

fn frase_blocks(state: &DiagonalProductState, history: &ReversibleCircuit, support: &[usize]) -> Vec<Vec<usize>> {
    let n = state.len();
    let p = state.probabilities();
    let perm = history.permutation();
    let mut evolved = vec![BigRational::default(); p.len()];
    for x in 0..p.len() {
        evolved[perm[x]] = p[x].clone();
    }
    let rho = Matrix::from_fn(p.len(), p.len(), |r, c| if r == c { G::from(evolved[r].clone()) } else { G::zero() });
    let dense = DenseState::new(QuditRegister::qubits(n), rho).unwrap();
    let mut blocks: Vec<Vec<usize>> = frase_decompose(&dense, support)
        .unwrap()
        .iter()
        .map(|f| (0..f.projector.rows()).filter(|&k| !f.projector.get(k, k).is_zero()).collect())
        .collect();
    blocks.sort();
    blocks
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagation_matches_dense(c in circuit_strategy(4, 20), p in pauli_strategy(4)) {
        let s = permutation_matrix(&c);
        let dense = s.adjoint().mul(&pauli_matrix(&p)).mul(&s);
        prop_assert_eq!(pauli_matrix(&propagate_pauli(&c, &p)), dense);
    }

    #[test]
    fn propagation_is_a_homomorphism(a in circuit_strategy(3, 8), b in circuit_strategy(3, 8), p in pauli_strategy(3)) {
        let ab = a.then(&b);
        prop_assert_eq!(propagate_pauli(&ab, &p), propagate_pauli(&a, &propagate_pauli(&b, &p)));
    }

    #[test]
    fn symmetry_matches_dense(state in state_strategy(3), c in circuit_strategy(3, 6)) {
        prop_assert_eq!(symmetry_test(&state, &c), dense_symmetric(&state, &c));
    }

    #[test]
    fn degeneracy_matches_frase(
        state in state_strategy(4),
        history in circuit_strategy(4, 6),
        a in 0..4usize,
        shift in 0..4usize,
    ) {
        let support: Vec<usize> = if shift == 0 { vec![a] } else { vec![a, (a + shift) % 4] };
        let mut got = diagnose_degeneracy12(&state, &history, &support).unwrap();
        got.sort();
        prop_assert_eq!(got, frase_blocks(&state, &history, &support));
    }
}
