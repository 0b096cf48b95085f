//! One clean qubit: the control's <X> equals the normalized trace of a
//! phase oracle, computed exactly and by sampling.

use concordant::exactnum::rational::format_rational;
use concordant::exactnum::BigRational;
use concordant::generate::{dqc1_circuit, dqc1_fixtures, plus_minus_basis};
use concordant::lbf::LbfConfig;
use concordant::simulator::{
    build_update_rule, exact_marginals, sample_from_rule, MeasurementSpec, MeasurementTarget, Strategy,
    DEFAULT_ENUMERATION_CAP,
};
use num_traits::Zero;

fn main() {
    let n = 6;
    for monomials in dqc1_fixtures() {
        let c = dqc1_circuit(n, &monomials);
        let rule = build_update_rule(&c, Strategy::Auto, &LbfConfig::default()).unwrap().into_rule().unwrap();
        let spec = MeasurementSpec::new(
            vec![MeasurementTarget {
                qudit: 0,
                basis: plus_minus_basis(),
            }],
            c.register().dims(),
        )
        .unwrap();
        let exact = exact_marginals(&rule, c.initial(), &spec, DEFAULT_ENUMERATION_CAP).unwrap();
        let p = |k: &str| exact.get(k).cloned().unwrap_or_else(BigRational::zero);
        let x = p("0") - p("1");
        let report = sample_from_rule(&rule, c.initial(), &spec, 100_000, 1);
        let count = |k: &str| *report.counts.get(k).unwrap_or(&0) as f64;
        let estimate = (count("0") - count("1")) / 1e5;
        println!("f = {monomials:?}: <X> = {} exactly, {estimate:.4} from 1e5 shots", format_rational(&x));
    }
}
