//! Exact bicritical maps whose pullback map is not constant.
use pullback::bicritical::{nonconstancy_witness, BicriticalClass, Case};

fn main() {
    for case in [Case::SplitFixed, Case::TwoCycle, Case::SharedImage] {
        let c = BicriticalClass::new(3, 1, 2, case).unwrap();
        let w = nonconstancy_witness(&c).unwrap();
        println!("{case:?}: t' = {:?}, t values {:?}", w.t_primes, w.t_values.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    }
}
