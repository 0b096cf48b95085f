use concordant::circuit::{digits_of, LocalBasis, QuditRegister};
use concordant::exactnum::rational::ratio;
use concordant::exactnum::{ExactMatrix, GaussianRational as G, Matrix};
use concordant::frase::{
    frase_decompose, frase_decompose_in_basis, orthogonality_check, reconstruct, sove_of, total_rank, DenseState,
    FraseError,
};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> G {
    G::from(ratio(n, d))
}

fn diag(xs: &[G]) -> ExactMatrix {
    Matrix::from_fn(xs.len(), xs.len(), |r, c| if r == c { xs[r].clone() } else { G::zero() })
}

fn bases() -> Vec<Vec<ExactMatrix>> {
    let c = |a: i64, b: i64, d: i64| G::new(ratio(a, d), ratio(b, d));
    let pyth = vec![
        Matrix::from_rows(vec![vec![q(9, 25), q(12, 25)], vec![q(12, 25), q(16, 25)]]),
        Matrix::from_rows(vec![vec![q(16, 25), q(-12, 25)], vec![q(-12, 25), q(9, 25)]]),
    ];
    let y = vec![
        Matrix::from_rows(vec![vec![q(1, 2), c(0, -1, 2)], vec![c(0, 1, 2), q(1, 2)]]),
        Matrix::from_rows(vec![vec![q(1, 2), c(0, 1, 2)], vec![c(0, -1, 2), q(1, 2)]]),
    ];
    vec![LocalBasis::computational(&[2]).qudit(0).to_vec(), pyth, y]
}

#[test]
fn classical_correlation_gives_two_frases() {
    let rho = diag(&[q(1, 2), G::zero(), G::zero(), q(1, 2)]);
    let s = DenseState::new(QuditRegister::qubits(2), rho.clone()).unwrap();
    let f = frase_decompose(&s, &[1]).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.rank == 1));
    assert_ne!(f[0].sove, f[1].sove);
    assert!(orthogonality_check(&f[0], &f[1]));
    assert!(!orthogonality_check(&f[0], &f[0]));
    assert_eq!(reconstruct(&s, &[1], &f), rho);
}

#[test]
fn maximally_mixed_is_one_frase() {
    let rho = diag(&[q(1, 4), q(1, 4), q(1, 4), q(1, 4)]);
    let s = DenseState::new(QuditRegister::qubits(2), rho).unwrap();
    let f = frase_decompose(&s, &[1]).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].rank, 2);
    let zero = diag(&[G::one(), G::zero()]);
    assert_eq!(sove_of(&s, &[1], &zero).unwrap().operator, diag(&[q(1, 4), q(1, 4)]));
}

#[test]
fn product_state_sove() {
    let rho_a = Matrix::from_rows(vec![vec![q(1, 2), q(1, 4)], vec![q(1, 4), q(1, 2)]]);
    let zero = diag(&[G::one(), G::zero()]);
    let s = DenseState::new(QuditRegister::qubits(2), rho_a.kron(&zero)).unwrap();
    assert_eq!(sove_of(&s, &[1], &zero).unwrap().operator, rho_a);
    let plus = Matrix::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 2)]]);
    assert_eq!(sove_of(&s, &[1], &plus), Err(FraseError::NotAnEigenprojector));
}

#[test]
fn bell_state_is_not_quantum_classical() {
    let h = q(1, 2);
    let rho = Matrix::from_rows(vec![
        vec![h.clone(), G::zero(), G::zero(), h.clone()],
        vec![G::zero(); 4],
        vec![G::zero(); 4],
        vec![h.clone(), G::zero(), G::zero(), h],
    ]);
    let s = DenseState::new(QuditRegister::qubits(2), rho).unwrap();
    assert_eq!(frase_decompose(&s, &[1]), Err(FraseError::NotQuantumClassical));
}

/// rho = sum_x p(x) pi_x in a product basis with correlated weights.
fn concordant_state(choice: &[usize], weights: &[u8]) -> (DenseState, LocalBasis) {
    let all = bases();
    let basis = LocalBasis::new(choice.iter().map(|&c| all[c].clone()).collect()).unwrap();
    let dims = vec![2; choice.len()];
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    let n = 1 << choice.len();
    let mut rho = Matrix::filled(n, n, G::zero());
    let support: Vec<usize> = (0..choice.len()).collect();
    for x in 0..n {
        let p = basis.embed_projector(&support, &digits_of(x, &dims)).unwrap();
        rho = rho.plus(&p.scale(&q(weights[x] as i64, total)));
    }
    (DenseState::new(QuditRegister::qubits(choice.len()), rho).unwrap(), basis)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discovery_matches_basis_grouping(
        choice in proptest::collection::vec(0usize..3, 3),
        weights in proptest::collection::vec(1u8..4, 8),
    ) {
        let (s, basis) = concordant_state(&choice, &weights);
        let b = [1usize, 2];
        let sub = LocalBasis::new(vec![basis.qudit(1).to_vec(), basis.qudit(2).to_vec()]).unwrap();
        let found = frase_decompose(&s, &b).unwrap();
        let known = frase_decompose_in_basis(&s, &b, &sub).unwrap();
        prop_assert_eq!(&found, &known);
        prop_assert_eq!(total_rank(&found), 4);
        prop_assert_eq!(reconstruct(&s, &b, &found), s.matrix().clone());
        for (i, f) in found.iter().enumerate() {
            for g in &found[i + 1..] {
                prop_assert!(f.sove != g.sove);
                prop_assert!(orthogonality_check(f, g));
            }
        }
    }
}
