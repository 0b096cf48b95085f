//! Exact linear algebra: integer null spaces, real root isolation and the
//! spectral blocks of a Hermitian matrix with irrational eigenvalues.

use concordant::exactnum::eigen::spectral_blocks;
use concordant::exactnum::rational::ratio;
use concordant::exactnum::{bareiss_eliminate, isolate_real_roots, ExactMatrix, GaussianRational as G, IntPolynomial};

fn main() {
    let a = ExactMatrix::from_rows(vec![
        vec![G::from_int(1), G::from_ints(0, 1), G::from_int(2)],
        vec![G::from_int(2), G::from_ints(0, 2), G::from_int(4)],
    ]);
    let e = bareiss_eliminate(&a);
    println!("pivots {:?}", e.pivot_columns);
    for v in &e.null_space {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("null vector [{}]", shown.join(", "));
    }

    // x^3 - 2: one real root, refined to 2^-30.
    let p = IntPolynomial::from_i64(&[-2, 0, 0, 1]);
    for mut root in isolate_real_roots(&p).unwrap() {
        root.refine_to(&ratio(1, 1 << 30));
        let (lo, hi) = root.enclosure();
        println!("cube root of 2 in [{lo}, {hi}]");
    }

    // Eigenvalues 1 +- sqrt(2) and 3: one irrational pair, one rational block.
    let h = ExactMatrix::from_rows(vec![
        vec![G::from_int(1), G::from_int(1), G::from_int(0)],
        vec![G::from_int(1), G::from_int(-1), G::from_int(0)],
        vec![G::from_int(0), G::from_int(0), G::from_int(3)],
    ]);
    let h = h.plus(&ExactMatrix::identity_like(3, &G::zero()));
    for b in spectral_blocks(&h).unwrap() {
        println!("factor {:?}, rank {}, rational {}", b.factor, b.rank(), b.is_rational());
    }
}
