//! Reflexive graphs of groups: normalization, connectedness, components,
//! pullbacks and (star-)multiplicativity.

use crate::commutator::{cooperator, relative_commutator};
use crate::group::{normal_closure, quotient, FiniteGroup, Quotient};
use crate::hom::{all_homomorphisms, compose, Cospan, Homomorphism};
use crate::limits::{check_order, fiber_cap};
use crate::search::UNSET;
use crate::xmod::{check_pcm, PrecrossedCandidate};
use crate::{Error, Result};

/// `(C1, C0, d, c, e)` with `d.e = c.e = 1`.
#[derive(Clone, Debug)]
pub struct ReflexiveGraph {
    c1: FiniteGroup,
    c0: FiniteGroup,
    d: Homomorphism,
    c: Homomorphism,
    e: Homomorphism,
}

impl ReflexiveGraph {
    pub fn new(d: Homomorphism, c: Homomorphism, e: Homomorphism) -> Result<Self> {
        let c1 = d.source().clone();
        let c0 = d.target().clone();
        if c.source() != &c1 || c.target() != &c0 || e.source() != &c0 || e.target() != &c1 {
            return Err(Error::DomainMismatch("graph arrows do not match".into()));
        }
        let id = Homomorphism::identity(&c0);
        if compose(&d, &e)? != id || compose(&c, &e)? != id {
            return Err(Error::DomainMismatch("e is not a common section of d and c".into()));
        }
        Ok(ReflexiveGraph { c1, c0, d, c, e })
    }

    /// The graph with `C1 = C0` and all three arrows the identity.
    pub fn discrete(g: &FiniteGroup) -> Self {
        let id = Homomorphism::identity(g);
        ReflexiveGraph { c1: g.clone(), c0: g.clone(), d: id.clone(), c: id.clone(), e: id }
    }

    pub fn arrows(&self) -> &FiniteGroup {
        &self.c1
    }

    pub fn objects(&self) -> &FiniteGroup {
        &self.c0
    }

    pub fn domain(&self) -> &Homomorphism {
        &self.d
    }

    pub fn codomain(&self) -> &Homomorphism {
        &self.c
    }

    pub fn unit(&self) -> &Homomorphism {
        &self.e
    }

    /// The kernel of `d` as a group, with its inclusion into `C1`.
    pub fn kernel_inclusion(&self) -> Homomorphism {
        self.d.kernel().to_group().1
    }
}

/// `(X:B, B, d, c, e)` where `c` is the connecting map of a precrossed module.
pub fn graph_of_precrossed(cand: &PrecrossedCandidate) -> Result<ReflexiveGraph> {
    let (_, c) = check_pcm(cand)?;
    let c = c.ok_or(Error::PcmFails)?;
    let ext = cand.extension();
    ReflexiveGraph::new(ext.d().clone(), c, ext.e().clone())
}

/// `c . k` with `k` the kernel inclusion of `d`.
pub fn normalization(g: &ReflexiveGraph) -> Homomorphism {
    compose(&g.c, &g.kernel_inclusion()).expect("kernel lands in C1")
}

fn pairing_image_size(g: &ReflexiveGraph) -> usize {
    let n0 = g.c0.order();
    let mut hit = vec![false; n0 * n0];
    for t in g.c1.elements() {
        hit[g.d.apply(t) * n0 + g.c.apply(t)] = true;
    }
    hit.iter().filter(|&&h| h).count()
}

fn cross_check(what: &str, direct: bool, via_normalization: bool) -> Result<bool> {
    if direct != via_normalization {
        return Err(Error::InternalCrossCheckFailure(format!(
            "{what}: pairing says {direct}, normalization says {via_normalization}"
        )));
    }
    Ok(direct)
}

/// Whether `(d, c)` is jointly monic.
pub fn is_reflexive_relation(g: &ReflexiveGraph) -> Result<bool> {
    let direct = pairing_image_size(g) == g.c1.order();
    cross_check("reflexive relation", direct, normalization(g).is_injective())
}

/// Whether `(d, c): C1 -> C0 x C0` is surjective.
pub fn is_connected(g: &ReflexiveGraph) -> Result<bool> {
    let n0 = g.c0.order();
    let direct = pairing_image_size(g) == n0 * n0;
    cross_check("connectedness", direct, normalization(g).is_surjective())
}

/// `C0` modulo the normal closure of `{d(t) c(t)^-1}`.
pub fn pi0(g: &ReflexiveGraph) -> Result<Quotient> {
    let relators: Vec<usize> = g
        .c1
        .elements()
        .map(|t| g.c0.mul(g.d.apply(t), g.c0.inv(g.c.apply(t))))
        .collect();
    let q = quotient(&g.c0, &normal_closure(&g.c0, &relators))?;
    let connected = is_connected(g)?;
    if q.group.is_trivial() != connected {
        return Err(Error::InternalCrossCheckFailure(format!(
            "pi0 trivial {}, connected {connected}",
            q.group.is_trivial()
        )));
    }
    Ok(q)
}

/// `G x_K H` with its projections. Members are pairs in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: FiniteGroup,
    pub proj_left: Homomorphism,
    pub proj_right: Homomorphism,
    pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
    right_order: usize,
}

impl Pullback {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Index of the pair `(g, h)`, if it lies in the pullback.
    pub fn index_of(&self, g: usize, h: usize) -> Option<usize> {
        match self.index[g * self.right_order + h] {
            UNSET => None,
            i => Some(i),
        }
    }

    /// The induced arrow `t -> (a(t), b(t))` of a commuting cone.
    pub fn induce(&self, a: &Homomorphism, b: &Homomorphism) -> Result<Homomorphism> {
        if a.source() != b.source()
            || a.target() != self.proj_left.target()
            || b.target() != self.proj_right.target()
        {
            return Err(Error::DomainMismatch("cone legs do not match the pullback".into()));
        }
        let map = a
            .source()
            .elements()
            .map(|t| {
                self.index_of(a.apply(t), b.apply(t))
                    .ok_or_else(|| Error::DomainMismatch("cone does not commute".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(a.source(), &self.group, map)
    }
}

pub fn pullback(p: &Homomorphism, q: &Homomorphism) -> Result<Pullback> {
    if p.target() != q.target() {
        return Err(Error::DomainMismatch("pullback legs have different codomains".into()));
    }
    let (g, h) = (p.source(), q.source());
    let ambient = g.order().saturating_mul(h.order());
    if ambient > fiber_cap() {
        return Err(Error::SizeCapExceeded { order: ambient, cap: fiber_cap() });
    }
    let mut index = vec![UNSET; ambient];
    let mut pairs = Vec::new();
    for a in g.elements() {
        for b in h.elements() {
            if p.apply(a) == q.apply(b) {
                index[a * h.order() + b] = pairs.len();
                pairs.push((a, b));
            }
        }
    }
    check_order(pairs.len())?;
    let nh = h.order();
    let group = FiniteGroup::from_fn(pairs.len(), format!("{}x{}", g.label(), h.label()), |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        index[g.mul(a, c) * nh + h.mul(b, d)]
    })?;
    let proj_left = Homomorphism::new(&group, g, pairs.iter().map(|p| p.0).collect())?;
    let proj_right = Homomorphism::new(&group, h, pairs.iter().map(|p| p.1).collect())?;
    Ok(Pullback { group, proj_left, proj_right, pairs, index, right_order: nh })
}

/// Whether a multiplication exists on `C1 x_C0 X` (over `d` and `c.k`),
/// decided both by a cooperator and by the commutator `<1_X, 1_X>`.
pub fn is_star_multiplicative(g: &ReflexiveGraph) -> Result<bool> {
    let k = g.kernel_inclusion();
    let x = k.source();
    let ck = compose(&g.c, &k)?;
    let pb = pullback(&g.d, &ck)?;
    let left = pb.induce(&k, &Homomorphism::zero(x, x))?;
    let eck = compose(&g.e, &ck)?;
    let right = pb.induce(&eck, &Homomorphism::identity(x))?;
    let cospan = Cospan::new(left, right)?;
    let id = Homomorphism::identity(x);
    let coop = cooperator(&cospan, &id, &id)?.is_some();
    let vanishes = relative_commutator(&cospan, &id, &id)?.is_trivial();
    if coop != vanishes {
        return Err(Error::InternalCrossCheckFailure(format!(
            "star-multiplication: cooperator {coop}, commutator trivial {vanishes}"
        )));
    }
    Ok(coop)
}

/// Whether some `m: C1 x_C0 C1 -> C1` satisfies `m(t, ed(t)) = t` and
/// `m(ec(t), t) = t`.
///
/// The two sections generate the pullback of any reflexive graph of groups,
/// so the forced construction decides the question; exhaustive search is
/// kept for the case where they do not.
pub fn is_multiplicative(g: &ReflexiveGraph) -> Result<bool> {
    let pb = pullback(&g.d, &g.c)?;
    let id = Homomorphism::identity(&g.c1);
    let ed = compose(&g.e, &g.d)?;
    let ec = compose(&g.e, &g.c)?;
    let s1 = pb.induce(&id, &ed)?;
    let s2 = pb.induce(&ec, &id)?;
    let cospan = Cospan::new(s1.clone(), s2.clone())?;
    let found = if cospan.is_jointly_generating() {
        cooperator(&cospan, &id, &id)?.is_some()
    } else {
        all_homomorphisms(&pb.group, &g.c1)?
            .iter()
            .any(|m| compose(m, &s1).ok() == Some(id.clone()) && compose(m, &s2).ok() == Some(id.clone()))
    };
    if found && !is_star_multiplicative(g)? {
        return Err(Error::InternalCrossCheckFailure(
            "multiplicative graph is not star-multiplicative".into(),
        ));
    }
    Ok(found)
}
