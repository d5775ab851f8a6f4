//! Homomorphisms, kernels and images, enumeration, and cospans.

use std::fmt;

use crate::group::{direct_product, subgroup_closure, FiniteGroup, Subgroup};
use crate::search;
use crate::{Error, Result};

/// A validated group homomorphism stored as an image table.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({} -> {}: {:?})",
            self.source.label(),
            self.target.label(),
            self.map
        )
    }
}

impl Homomorphism {
    /// Validates `map` as a homomorphism `source -> target`.
    ///
    /// The multiplicativity check runs over every edge `a -> a*g` of the
    /// Cayley graph for the source's generating sequence, which is
    /// equivalent to checking all pairs.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::DomainMismatch(format!(
                "map has {} entries but source has order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::DomainMismatch(format!(
                "image {bad} out of range for target of order {}",
                target.order()
            )));
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism(0, 0));
        }
        for &g in source.generators() {
            for a in source.elements() {
                if map[source.mul(a, g)] != target.mul(map[a], map[g]) {
                    return Err(Error::NotHomomorphism(a, g));
                }
            }
        }
        Ok(Homomorphism { source: source.clone(), target: target.clone(), map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Homomorphism { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self . inner`.
    pub fn after(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        compose(self, inner)
    }

    pub fn kernel(&self) -> Subgroup {
        let els: Vec<usize> = self.source.elements().filter(|&x| self.map[x] == 0).collect();
        Subgroup::from_elements(&self.source, &els).expect("kernel is a subgroup")
    }

    pub fn image(&self) -> Subgroup {
        subgroup_closure(&self.target, &self.map)
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&v| v == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().skip(1).all(|&v| v != 0)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let pts: Vec<usize> = sub.elements().iter().map(|&x| self.map[x]).collect();
        subgroup_closure(&self.target, &pts)
    }

    /// Preimage of a target element, if it lies in the image.
    pub fn preimage_of(&self, y: usize) -> Option<usize> {
        self.map.iter().position(|&v| v == y)
    }
}

pub fn make_hom(g: &FiniteGroup, h: &FiniteGroup, map: Vec<usize>) -> Result<Homomorphism> {
    Homomorphism::new(g, h, map)
}

/// `(kernel, image)` of `h`.
pub fn kernel_image(h: &Homomorphism) -> (Subgroup, Subgroup) {
    (h.kernel(), h.image())
}

/// Pointwise composite `outer . inner`.
pub fn compose(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
    if inner.target != outer.source {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            outer.source.label(),
            outer.target.label(),
            inner.source.label(),
            inner.target.label()
        )));
    }
    let map = inner.map.iter().map(|&x| outer.map[x]).collect();
    Homomorphism::new(&inner.source, &outer.target, map)
}

/// All homomorphisms `g -> h`, ordered lexicographically by image table.
pub fn all_homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Homomorphism>> {
    Ok(search::homomorphisms(g, h)?
        .into_iter()
        .map(|map| Homomorphism { source: g.clone(), target: h.clone(), map })
        .collect())
}

/// Some isomorphism `g -> h`, or `None`. Deterministic; identity on equal tables.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Homomorphism>> {
    if g == h {
        return Ok(Some(Homomorphism { source: g.clone(), target: h.clone(), map: g.elements().collect() }));
    }
    Ok(search::first_isomorphism(g, h)?
        .map(|map| Homomorphism { source: g.clone(), target: h.clone(), map }))
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Two coterminal homomorphisms `left: X -> A` and `right: B -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cospan {
    left: Homomorphism,
    right: Homomorphism,
}

impl Cospan {
    pub fn new(left: Homomorphism, right: Homomorphism) -> Result<Self> {
        if left.target != right.target {
            return Err(Error::DomainMismatch("cospan legs have different codomains".into()));
        }
        Ok(Cospan { left, right })
    }

    /// `((1_X, 0), (0, 1_B))` into `X x B`.
    pub fn product(x: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let p = direct_product(x, b)?;
        Ok(Cospan { left: p.inj_left, right: p.inj_right })
    }

    /// `(1_X, 1_X)`.
    pub fn identity(x: &FiniteGroup) -> Self {
        Cospan { left: Homomorphism::identity(x), right: Homomorphism::identity(x) }
    }

    /// Both legs into the trivial group.
    pub fn zero_object(x: &FiniteGroup, b: &FiniteGroup) -> Self {
        let z = FiniteGroup::trivial();
        Cospan { left: Homomorphism::zero(x, &z), right: Homomorphism::zero(b, &z) }
    }

    pub fn left(&self) -> &Homomorphism {
        &self.left
    }

    pub fn right(&self) -> &Homomorphism {
        &self.right
    }

    /// Common codomain `A`.
    pub fn apex(&self) -> &FiniteGroup {
        &self.left.target
    }

    /// Whether the images of the two legs generate the apex. In groups this
    /// is exactly extremal epicity of the cospan.
    pub fn is_jointly_generating(&self) -> bool {
        let seed: Vec<usize> = self
            .left
            .source
            .generators()
            .iter()
            .map(|&x| self.left.apply(x))
            .chain(self.right.source.generators().iter().map(|&b| self.right.apply(b)))
            .collect();
        subgroup_closure(self.apex(), &seed).is_whole()
    }
}

pub fn is_jointly_generating(c: &Cospan) -> bool {
    c.is_jointly_generating()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, klein4, normal_closure, symmetric};

    fn sign(s3: &FiniteGroup) -> Homomorphism {
        let z2 = cyclic(2).unwrap();
        all_homomorphisms(s3, &z2).unwrap().into_iter().find(|h| !h.is_zero()).unwrap()
    }

    #[test]
    fn make_hom_cases() {
        let z3 = cyclic(3).unwrap();
        let z2 = cyclic(2).unwrap();
        assert!(make_hom(&z3, &z3, vec![0, 1, 2]).is_ok());
        assert!(make_hom(&z3, &z2, vec![0, 0, 0]).is_ok());
        assert!(matches!(
            make_hom(&z3, &z3, vec![0, 1, 0]),
            Err(Error::NotHomomorphism(..))
        ));
        assert!(make_hom(&z3, &z3, vec![0, 1]).is_err());
    }

    #[test]
    fn kernels_and_images() {
        let s3 = symmetric(3).unwrap();
        let (k, i) = kernel_image(&Homomorphism::identity(&s3));
        assert!(k.is_trivial() && i.is_whole());
        let (k, i) = kernel_image(&Homomorphism::zero(&s3, &s3));
        assert!(k.is_whole() && i.is_trivial());
        let (k, i) = kernel_image(&sign(&s3));
        assert_eq!(k.order(), 3);
        assert!(i.is_whole());
    }

    #[test]
    fn composition() {
        let s3 = symmetric(3).unwrap();
        let sgn = sign(&s3);
        assert!(compose(&Homomorphism::identity(&s3), &sgn).is_err());
        assert_eq!(compose(&Homomorphism::identity(sgn.target()), &sgn).unwrap(), sgn);
        let (_, incl) = normal_closure(&s3, &[3]).to_group();
        assert!(compose(&sgn, &incl).unwrap().is_zero());
    }

    #[test]
    fn hom_counts() {
        let z2 = cyclic(2).unwrap();
        let z3 = cyclic(3).unwrap();
        let s3 = symmetric(3).unwrap();
        assert_eq!(all_homomorphisms(&z2, &z2).unwrap().len(), 2);
        assert_eq!(all_homomorphisms(&z3, &z2).unwrap().len(), 1);
        assert_eq!(all_homomorphisms(&s3, &z2).unwrap().len(), 2);
        assert_eq!(all_homomorphisms(&s3, &s3).unwrap().len(), 10);
        let homs = all_homomorphisms(&s3, &s3).unwrap();
        assert!(homs.windows(2).all(|w| w[0].map() < w[1].map()));
    }

    #[test]
    fn isomorphisms() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(find_isomorphism(&s3, &s3).unwrap().unwrap(), Homomorphism::identity(&s3));
        assert!(find_isomorphism(&cyclic(4).unwrap(), &klein4().unwrap()).unwrap().is_none());
        let p = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let iso = find_isomorphism(&cyclic(6).unwrap(), &p.group).unwrap().unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn joint_generation() {
        let x = cyclic(3).unwrap();
        let b = cyclic(2).unwrap();
        assert!(Cospan::product(&x, &b).unwrap().is_jointly_generating());
        let s3 = symmetric(3).unwrap();
        let zero = Cospan::new(Homomorphism::zero(&x, &s3), Homomorphism::zero(&b, &s3)).unwrap();
        assert!(!zero.is_jointly_generating());
        // lexicographic S3: 1 = (1 2), 2 = (0 1)
        let (t1, i1) = subgroup_closure(&s3, &[1]).to_group();
        let (_, i2) = subgroup_closure(&s3, &[2]).to_group();
        assert_eq!(t1.order(), 2);
        assert!(Cospan::new(i1, i2).unwrap().is_jointly_generating());
    }
}
