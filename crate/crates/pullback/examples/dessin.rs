//! A permutation triple: validity, passport, genus and deck group.
use pullback::monodromy::{deck_group, validate_triple, PermutationTriple};

fn main() {
    let t = PermutationTriple::from_cycles(4, &[vec![1, 2, 3]], &[vec![1, 3, 4]], &[vec![2, 4, 3]]).unwrap();
    let r = validate_triple(&t);
    println!("{r:?}");
    println!("deck group order {}", deck_group(&t).unwrap().len());
}
