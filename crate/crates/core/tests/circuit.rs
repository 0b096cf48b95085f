use concordant::circuit::{load_circuit, CircuitError, Gate, LocalBasis};
use concordant::exactnum::rational::ratio;
use concordant::exactnum::{ExactMatrix, GaussianRational as G, Matrix};

fn real(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| G::from_int(x)).collect()).collect())
}

fn plus_minus_basis() -> Vec<ExactMatrix> {
    let h = G::from(ratio(1, 2));
    vec![
        real(&[&[1, 1], &[1, 1]]).scale(&h),
        real(&[&[1, -1], &[-1, 1]]).scale(&h),
    ]
}

#[test]
fn hadamard_maps_zero_to_plus() {
    let h = Gate::from_int_rows(vec![0], &[&[1, 1], &[1, -1]], 2).unwrap();
    let zero = real(&[&[1, 0], &[0, 0]]);
    let out = h.conjugate_projector(&zero).unwrap();
    assert_eq!(out, plus_minus_basis()[0]);
}

#[test]
fn cnot_maps_plus_zero_to_bell() {
    let cnot = Gate::from_int_rows(
        vec![0, 1],
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
        1,
    )
    .unwrap();
    let zero = real(&[&[1, 0], &[0, 0]]);
    let p = plus_minus_basis()[0].kron(&zero);
    let bell = real(&[&[1, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 1]]).scale(&G::from(ratio(1, 2)));
    assert_eq!(cnot.conjugate_projector(&p).unwrap(), bell);
}

#[test]
fn surd_phase_gate_has_no_gaussian_form() {
    // diag(1, e^{i pi/4}) would need (1+i)/sqrt2 next to an entry of modulus 1.
    for n in 1..=8u64 {
        for m in [
            Matrix::from_rows(vec![vec![G::one(), G::zero()], vec![G::zero(), G::from_ints(1, 1)]]),
            Matrix::from_rows(vec![vec![G::from_int(2), G::zero()], vec![G::zero(), G::from_ints(1, 1)]]),
        ] {
            assert!(matches!(Gate::new(vec![0], m, n), Err(CircuitError::Validation(_))));
        }
    }
}

#[test]
fn embed_plus_minus() {
    let basis = LocalBasis::new(vec![plus_minus_basis(), plus_minus_basis()]).unwrap();
    let p = basis.embed_projector(&[0, 1], &[0, 1]).unwrap();
    let q = G::from(ratio(1, 4));
    for r in 0..4 {
        for c in 0..4 {
            assert!(p.get(r, c) == &q || p.get(r, c) == &-q.clone());
        }
    }
    let comp = LocalBasis::computational(&[2, 2]);
    let s = comp.embed_subset(&[0, 1], &[vec![0, 0], vec![1, 1]]).unwrap();
    assert_eq!(s, real(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]]));
}

const DOC: &str = r#"{"dims":[2,2],
 "initial":{"probs":[["1/2","1/2"],["1","0"]],
   "basis":[[ [["1","0"],["0","0"]], [["0","0"],["0","1"]] ],
            [ [["1/2","1/2"],["1/2","1/2"]], [["1/2","-1/2"],["-1/2","1/2"]] ]]},
 "gates":[{"support":[0,1],"radicand":1,
   "matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","0","1"],["0","0","1","0"]]},
   {"support":[1],"radicand":2,"matrix":[["1","0+1 i"],["0+1 i","1"]]}]}"#;

#[test]
fn document_round_trip() {
    let c = load_circuit(DOC).unwrap();
    let again = load_circuit(&c.to_json()).unwrap();
    assert_eq!(c, again);
}

#[test]
fn rejects_bad_documents() {
    let unknown = DOC.replacen("\"dims\"", "\"extra\":1,\"dims\"", 1);
    assert!(matches!(load_circuit(&unknown), Err(CircuitError::Parse(_))));
    let unnormalized = DOC.replacen("[\"1\",\"0\"]]", "[\"1\",\"1\"]]", 1);
    assert!(matches!(load_circuit(&unnormalized), Err(CircuitError::Validation(_))));
    let non_unitary = DOC.replacen("\"radicand\":2", "\"radicand\":3", 1);
    assert!(matches!(load_circuit(&non_unitary), Err(CircuitError::Validation(_))));
    let bad_proj = DOC.replacen("[[\"1\",\"0\"],[\"0\",\"0\"]]", "[[\"1\",\"1\"],[\"0\",\"0\"]]", 1);
    assert!(matches!(load_circuit(&bad_proj), Err(CircuitError::Validation(_))));
    assert!(matches!(load_circuit("{"), Err(CircuitError::Parse(_))));
}
