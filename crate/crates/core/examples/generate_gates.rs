//! Synthesize gates with a planted basis change and check that the finder
//! recovers an equivalent update.

use concordant::generate::random_lbf_gate;
use concordant::lbf::{run_lbf, LbfConfig, LbfInput, LbfOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    for dims in [vec![2], vec![3], vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
        let mut ok = 0;
        for _ in 0..10 {
            let truth = random_lbf_gate(&dims, &mut rng);
            let input = LbfInput {
                gate: &truth.gate,
                prev: &truth.prev,
            };
            if let LbfOutcome::Success(s) = run_lbf(&input, &LbfConfig::default()).unwrap() {
                // The planted bases must come back exactly, up to order.
                let same = s.basis.iter().zip(&truth.next).all(|(got, want)| {
                    got.len() == want.len() && want.iter().all(|p| got.contains(p))
                });
                ok += usize::from(same);
            }
        }
        println!("dims {dims:?}: {ok}/10 recovered");
    }
}
