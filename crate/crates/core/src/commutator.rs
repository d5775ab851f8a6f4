//! Relative commutativity and relative commutators.
//!
//! For a jointly generating cospan `(k: X -> A, s: B -> A)` and coterminal
//! arrows `f: X -> Y`, `g: B -> Y`:
//!
//! * a *cooperator* is a homomorphism `phi: A -> Y` with `phi.k = f` and
//!   `phi.s = g`; it is unique when it exists;
//! * the *relative commutator* is the image, under `[f, g]`, of the kernel of
//!   `[k, s]: X + B -> A`. The free product is never built. The joint image
//!   `R` of `X + B` in `A x Y` is generated by the pairs `(k(x), f(x))` and
//!   `(s(b), g(b))`, and the commutator is the fiber `{y : (0, y) in R}`.
//!
//! The word oracle enumerates reduced alternating words of `X + B` directly
//! and is kept as an independent check of the fiber method.

use std::collections::{HashSet, VecDeque};

use crate::action::{semidirect_product, Action};
use crate::group::{direct_product, subgroup_closure, FiniteGroup, Subgroup};
use crate::hom::{Cospan, Homomorphism};
use crate::limits::{fiber_cap, search_budget};
use crate::search::UNSET;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Fiber,
    WordOracle,
}

#[derive(Clone, Debug)]
pub struct CommutatorResult {
    pub value: Subgroup,
    pub method: Method,
    pub cospan: Cospan,
}

impl CommutatorResult {
    pub fn is_trivial(&self) -> bool {
        self.value.is_trivial()
    }

    /// Reported only; normality is not guaranteed in general.
    pub fn is_normal(&self) -> bool {
        self.value.is_normal()
    }
}

fn check_inputs(c: &Cospan, f: &Homomorphism, g: &Homomorphism) -> Result<()> {
    if f.source() != c.left().source() || g.source() != c.right().source() {
        return Err(Error::DomainMismatch("f and g must start at the cospan's feet".into()));
    }
    if f.target() != g.target() {
        return Err(Error::DomainMismatch("f and g must be coterminal".into()));
    }
    if !c.is_jointly_generating() {
        return Err(Error::CospanNotExtremallyEpic);
    }
    Ok(())
}

/// Generator pairs `(k(x), f(x))`, `(s(b), g(b))` of the joint image.
fn generator_pairs(c: &Cospan, f: &Homomorphism, g: &Homomorphism) -> Vec<(usize, usize)> {
    let left = f.source().generators().iter().map(|&x| (c.left().apply(x), f.apply(x)));
    let right = g.source().generators().iter().map(|&b| (c.right().apply(b), g.apply(b)));
    left.chain(right).collect()
}

/// The unique `phi` with `phi.k = f` and `phi.s = g`, if it exists.
///
/// Values are forced breadth-first from `phi(0) = 0` along the generators;
/// a conflict, or a failed check of the full multiplication table and of
/// both triangles, means there is no cooperator.
pub fn cooperator(c: &Cospan, f: &Homomorphism, g: &Homomorphism) -> Result<Option<Homomorphism>> {
    check_inputs(c, f, g)?;
    let a = c.apex();
    let y = f.target();
    let pairs = generator_pairs(c, f, g);
    let mut phi = vec![UNSET; a.order()];
    phi[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for &(ga, gy) in &pairs {
            let next = a.mul(t, ga);
            let val = y.mul(phi[t], gy);
            if phi[next] == UNSET {
                phi[next] = val;
                queue.push_back(next);
            } else if phi[next] != val {
                return Ok(None);
            }
        }
    }
    debug_assert!(phi.iter().all(|&v| v != UNSET));
    for s in a.elements() {
        for t in a.elements() {
            if phi[a.mul(s, t)] != y.mul(phi[s], phi[t]) {
                return Ok(None);
            }
        }
    }
    let left_ok = f.source().elements().all(|x| phi[c.left().apply(x)] == f.apply(x));
    let right_ok = g.source().elements().all(|b| phi[c.right().apply(b)] == g.apply(b));
    if !(left_ok && right_ok) {
        return Ok(None);
    }
    Ok(Some(Homomorphism::new(a, y, phi)?))
}

/// The `(k, s)`-commutator of `f` and `g` by the fiber method.
pub fn relative_commutator(c: &Cospan, f: &Homomorphism, g: &Homomorphism) -> Result<CommutatorResult> {
    check_inputs(c, f, g)?;
    let a = c.apex();
    let y = f.target();
    let (na, ny) = (a.order(), y.order());
    let ambient = na.saturating_mul(ny);
    if ambient > fiber_cap() {
        return Err(Error::SizeCapExceeded { order: ambient, cap: fiber_cap() });
    }
    let pairs = generator_pairs(c, f, g);
    let mut seen = vec![0u64; ambient.div_ceil(64)];
    seen[0] |= 1;
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    let mut fiber = vec![0usize];
    while let Some((s, t)) = queue.pop_front() {
        for &(ga, gy) in &pairs {
            let (s2, t2) = (a.mul(s, ga), y.mul(t, gy));
            let idx = s2 * ny + t2;
            if seen[idx / 64] & (1 << (idx % 64)) == 0 {
                seen[idx / 64] |= 1 << (idx % 64);
                if s2 == 0 {
                    fiber.push(t2);
                }
                queue.push_back((s2, t2));
            }
        }
    }
    let value = Subgroup::from_elements(y, &fiber)
        .map_err(|e| Error::InternalCrossCheckFailure(format!("fiber is not a subgroup: {e}")))?;
    Ok(CommutatorResult { value, method: Method::Fiber, cospan: c.clone() })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    Start,
    Left,
    Right,
}

/// Cumulative word-oracle values for word lengths `0..=max_len`.
///
/// Layer `L` holds the images in `A x Y` of every reduced alternating word
/// of length `L` (letters are non-identity elements of `X` or `B`, and
/// consecutive letters come from different factors), tagged by the factor
/// of the last letter. Words with the same tagged image have the same
/// extensions, so each layer keeps one copy of each.
pub fn word_oracle_layers(
    c: &Cospan,
    f: &Homomorphism,
    g: &Homomorphism,
    max_len: usize,
) -> Result<Vec<Subgroup>> {
    check_inputs(c, f, g)?;
    let a = c.apex();
    let y = f.target();
    let x_letters: Vec<(usize, usize)> =
        (1..f.source().order()).map(|x| (c.left().apply(x), f.apply(x))).collect();
    let b_letters: Vec<(usize, usize)> =
        (1..g.source().order()).map(|b| (c.right().apply(b), g.apply(b))).collect();
    let budget = search_budget();
    let mut work = 0u64;
    let mut collected = vec![0usize];
    let mut layer: HashSet<(usize, usize, Side)> = HashSet::from([(0, 0, Side::Start)]);
    let mut values = vec![subgroup_closure(y, &collected)];
    for _ in 0..max_len {
        let mut next = HashSet::new();
        for &(s, t, side) in &layer {
            let mut extend = |letters: &[(usize, usize)], tag: Side| -> Result<()> {
                for &(ga, gy) in letters {
                    work += 1;
                    if work > budget {
                        return Err(Error::SearchBudgetExceeded(budget));
                    }
                    next.insert((a.mul(s, ga), y.mul(t, gy), tag));
                }
                Ok(())
            };
            if side != Side::Left {
                extend(&x_letters, Side::Left)?;
            }
            if side != Side::Right {
                extend(&b_letters, Side::Right)?;
            }
        }
        collected.extend(next.iter().filter(|(s, _, _)| *s == 0).map(|&(_, t, _)| t));
        values.push(subgroup_closure(y, &collected));
        layer = next;
    }
    Ok(values)
}

/// Subgroup generated by `[f, g](w)` over words `w` of length at most
/// `max_len` in the kernel of `[k, s]`.
pub fn word_oracle_commutator(
    c: &Cospan,
    f: &Homomorphism,
    g: &Homomorphism,
    max_len: usize,
) -> Result<CommutatorResult> {
    let value = word_oracle_layers(c, f, g, max_len)?.pop().expect("at least length 0");
    Ok(CommutatorResult { value, method: Method::WordOracle, cospan: c.clone() })
}

/// Outcome of running the word oracle until it stabilizes.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub oracle: Subgroup,
    pub fiber: Subgroup,
    /// Word length at which two consecutive lengths agreed with the fiber
    /// method, or `None` if that never happened within the limit.
    pub saturated_at: Option<usize>,
}

pub fn saturate_word_oracle(
    c: &Cospan,
    f: &Homomorphism,
    g: &Homomorphism,
    max_len: usize,
) -> Result<Saturation> {
    let fiber = relative_commutator(c, f, g)?.value;
    let layers = word_oracle_layers(c, f, g, max_len)?;
    let saturated_at = (1..layers.len()).find(|&l| layers[l] == layers[l - 1] && layers[l] == fiber);
    let oracle = layers.last().cloned().expect("at least length 0");
    Ok(Saturation { oracle, fiber, saturated_at })
}

/// Commutator over the product cospan `((1, 0), (0, 1))` into `X x B`.
pub fn huq_commutator(f: &Homomorphism, g: &Homomorphism) -> Result<CommutatorResult> {
    let c = Cospan::product(f.source(), g.source())?;
    relative_commutator(&c, f, g)
}

/// Commutator over the cospan `(k, e)` of the split extension of `xi`.
pub fn twisted_commutator(xi: &Action, f: &Homomorphism, g: &Homomorphism) -> Result<CommutatorResult> {
    let ext = semidirect_product(xi)?;
    relative_commutator(&ext.cospan(), f, g)
}

/// Cooperator over the cospan `(k, e)` of the split extension of `xi`.
pub fn twisted_cooperator(xi: &Action, f: &Homomorphism, g: &Homomorphism) -> Result<Option<Homomorphism>> {
    let ext = semidirect_product(xi)?;
    cooperator(&ext.cospan(), f, g)
}

/// Commutator over the identity cospan; trivial exactly when `f = g`.
pub fn difference_commutator(f: &Homomorphism, g: &Homomorphism) -> Result<CommutatorResult> {
    if f.source() != g.source() {
        return Err(Error::DomainMismatch("difference commutator needs a common source".into()));
    }
    relative_commutator(&Cospan::identity(f.source()), f, g)
}

/// The cospan `((1_Y, 0), (f, 1_X))` into `Y x X`.
pub fn subtractor_cospan(f: &Homomorphism) -> Result<Cospan> {
    let (x, y) = (f.source(), f.target());
    let p = direct_product(y, x)?;
    let graph = Homomorphism::new(x, &p.group, x.elements().map(|a| p.pair(f.apply(a), a)).collect())?;
    Cospan::new(p.inj_left, graph)
}

/// A subtractor of `f: X -> Y` along `g: Y -> Z`: the cooperator of `g` and
/// `0: X -> Z` over [`subtractor_cospan`].
pub fn subtractor(f: &Homomorphism, g: &Homomorphism) -> Result<Option<Homomorphism>> {
    if f.target() != g.source() {
        return Err(Error::DomainMismatch("subtractor needs f: X -> Y and g: Y -> Z".into()));
    }
    let c = subtractor_cospan(f)?;
    cooperator(&c, g, &Homomorphism::zero(f.source(), g.target()))
}

/// Brute-force `<[a, b] : a in K, b in L>` for subgroups of a common group.
pub fn classical_commutator(k: &Subgroup, l: &Subgroup) -> Subgroup {
    let g: &FiniteGroup = k.parent();
    let comms: Vec<usize> = k
        .elements()
        .iter()
        .flat_map(|&a| l.elements().iter().map(move |&b| g.commutator(a, b)))
        .collect();
    subgroup_closure(g, &comms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::testing::*;

    #[test]
    fn product_cooperator_is_pointwise_product() {
        let z2 = cyclic(2).unwrap();
        let z3 = cyclic(3).unwrap();
        let z6 = cyclic(6).unwrap();
        let f = Homomorphism::new(&z2, &z6, vec![0, 3]).unwrap();
        let g = Homomorphism::new(&z3, &z6, vec![0, 2, 4]).unwrap();
        let c = Cospan::product(&z2, &z3).unwrap();
        let phi = cooperator(&c, &f, &g).unwrap().unwrap();
        for x in 0..2 {
            for b in 0..3 {
                assert_eq!(phi.apply(x * 3 + b), z6.mul(f.apply(x), g.apply(b)));
            }
        }
    }

    #[test]
    fn identity_cospan_cooperates_only_equal_maps() {
        let z3 = cyclic(3).unwrap();
        let id = Homomorphism::identity(&z3);
        let inv = Homomorphism::new(&z3, &z3, vec![0, 2, 1]).unwrap();
        let c = Cospan::identity(&z3);
        assert!(cooperator(&c, &id, &inv).unwrap().is_none());
        assert!(cooperator(&c, &id, &id).unwrap().is_some());
    }

    #[test]
    fn twisted_inversion_cooperator_into_s3() {
        let (s3, xi, f, g) = inversion_into_s3();
        let phi = twisted_cooperator(&xi, &f, &g).unwrap().unwrap();
        assert!(phi.is_bijective());
        assert_eq!(phi.target(), &s3);
        assert!(twisted_commutator(&xi, &f, &g).unwrap().is_trivial());
    }

    #[test]
    fn commutator_examples() {
        let s3 = symmetric(3).unwrap();
        let id = Homomorphism::identity(&s3);
        assert!(difference_commutator(&id, &id).unwrap().is_trivial());
        let c = Cospan::zero_object(&s3, &s3);
        let zero = Homomorphism::zero(&s3, &s3);
        let v = relative_commutator(&c, &id, &zero).unwrap();
        assert!(v.value.is_whole());
        let h = huq_commutator(&id, &id).unwrap();
        assert_eq!(h.value.order(), 3);
        assert!(h.is_normal());
        let z6 = cyclic(6).unwrap();
        let id6 = Homomorphism::identity(&z6);
        assert!(huq_commutator(&id6, &id6).unwrap().is_trivial());
        assert!(huq_commutator(&zero, &id).unwrap().is_trivial());
    }

    #[test]
    fn huq_of_two_transpositions() {
        let s3 = symmetric(3).unwrap();
        let (_, i1) = subgroup_closure(&s3, &[1]).to_group();
        let (_, i2) = subgroup_closure(&s3, &[5]).to_group();
        assert_eq!(huq_commutator(&i1, &i2).unwrap().value.order(), 3);
    }

    #[test]
    fn twisted_examples() {
        let z3 = cyclic(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let xi = inversion_action(3);
        let id = Homomorphism::identity(&z3);
        let zero = Homomorphism::zero(&z2, &z3);
        assert!(twisted_commutator(&xi, &id, &zero).unwrap().value.is_whole());
        let triv = Action::trivial(&z2, &z3);
        let t = twisted_commutator(&triv, &id, &zero).unwrap();
        assert_eq!(t.value, huq_commutator(&id, &zero).unwrap().value);
    }

    #[test]
    fn difference_examples() {
        let z3 = cyclic(3).unwrap();
        let id = Homomorphism::identity(&z3);
        let inv = Homomorphism::new(&z3, &z3, vec![0, 2, 1]).unwrap();
        assert!(difference_commutator(&id, &inv).unwrap().value.is_whole());
    }

    #[test]
    fn subtractors() {
        let z4 = cyclic(4).unwrap();
        let id4 = Homomorphism::identity(&z4);
        let phi = subtractor(&id4, &id4).unwrap().unwrap();
        for y in 0..4 {
            for x in 0..4 {
                assert_eq!(phi.apply(y * 4 + x), z4.mul(y, z4.inv(x)));
            }
        }
        let s3 = symmetric(3).unwrap();
        let id = Homomorphism::identity(&s3);
        assert!(subtractor(&id, &id).unwrap().is_none());
        let zero = Homomorphism::zero(&s3, &s3);
        assert!(subtractor(&id, &zero).unwrap().is_some());
    }

    #[test]
    fn word_oracle_examples() {
        let s3 = symmetric(3).unwrap();
        let id = Homomorphism::identity(&s3);
        let c = Cospan::product(&s3, &s3).unwrap();
        assert!(word_oracle_commutator(&c, &id, &id, 0).unwrap().value.is_trivial());
        assert_eq!(word_oracle_commutator(&c, &id, &id, 4).unwrap().value.order(), 3);
        let z2 = cyclic(2).unwrap();
        let c2 = Cospan::product(&z2, &z2).unwrap();
        let p = c2.apex().clone();
        let (l, r) = (c2.left().clone(), c2.right().clone());
        for len in 0..6 {
            assert!(word_oracle_commutator(&c2, &l, &r, len).unwrap().is_trivial());
        }
        let sat = saturate_word_oracle(&c, &id, &id, 6).unwrap();
        assert!(sat.saturated_at.is_some());
        assert_eq!(sat.oracle, sat.fiber);
        let _ = p;
    }

    #[test]
    fn preconditions() {
        let s3 = symmetric(3).unwrap();
        let z3 = cyclic(3).unwrap();
        let z2 = cyclic(2).unwrap();
        let c = Cospan::new(Homomorphism::zero(&z3, &s3), Homomorphism::zero(&z2, &s3)).unwrap();
        let f = Homomorphism::zero(&z3, &z2);
        let g = Homomorphism::identity(&z2);
        assert!(matches!(cooperator(&c, &f, &g), Err(Error::CospanNotExtremallyEpic)));
        assert!(matches!(relative_commutator(&c, &f, &g), Err(Error::CospanNotExtremallyEpic)));
    }
}
