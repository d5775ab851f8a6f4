//! Fixtures shared by unit tests.

use crate::action::Action;
use crate::group::{cyclic, symmetric, FiniteGroup};
use crate::hom::Homomorphism;

/// `Z2` acting on `Zn` by negation.
pub(crate) fn inversion_action(n: usize) -> Action {
    let z2 = cyclic(2).unwrap();
    let zn = cyclic(n).unwrap();
    let table = vec![(0..n).collect(), (0..n).map(|x| (n - x) % n).collect()];
    Action::new(&z2, &zn, table).unwrap()
}

/// `(S3, inversion of Z2 on Z3, Z3 -> <(0 1 2)>, Z2 -> <(1 2)>)`.
pub(crate) fn inversion_into_s3() -> (FiniteGroup, Action, Homomorphism, Homomorphism) {
    let s3 = symmetric(3).unwrap();
    let z3 = cyclic(3).unwrap();
    let z2 = cyclic(2).unwrap();
    // lexicographic S3: 3 = [1,2,0] is a 3-cycle, 1 = [0,2,1] a transposition
    let f = Homomorphism::new(&z3, &s3, vec![0, 3, s3.mul(3, 3)]).unwrap();
    let g = Homomorphism::new(&z2, &s3, vec![0, 1]).unwrap();
    (s3, inversion_action(3), f, g)
}
