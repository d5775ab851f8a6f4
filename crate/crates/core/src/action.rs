//! Group actions, semidirect products, and split short exact sequences.
//!
//! An action of `B` on `X` is stored as one permutation table of `X` per
//! element of `B`. The semidirect product `X : B` is realized on pairs, with
//! `(x, b)` at index `x + |X|*b`, and multiplication
//! `(x, b)(x', b') = (x * b.x', b * b')`.

use crate::commutator::cooperator;
use crate::group::{automorphism_group, AutomorphismGroup, FiniteGroup};
use crate::hom::{all_homomorphisms, Cospan, Homomorphism};
use crate::limits::check_order;
use crate::search::UNSET;
use crate::{Error, Result};

/// An action of `actor` on `acted` by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    actor: FiniteGroup,
    acted: FiniteGroup,
    table: Vec<Vec<usize>>,
}

impl Action {
    /// Validates a table of `|actor|` permutations of `acted`.
    pub fn new(actor: &FiniteGroup, acted: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != actor.order() || table.iter().any(|row| row.len() != acted.order()) {
            return Err(Error::DomainMismatch(format!(
                "action table must be {} x {}",
                actor.order(),
                acted.order()
            )));
        }
        if table.iter().flatten().any(|&v| v >= acted.order()) {
            return Err(Error::DomainMismatch("action table entry out of range".into()));
        }
        if table[0].iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::IdentityNotFixed);
        }
        for (b, perm) in table.iter().enumerate() {
            if !is_automorphism(acted, perm) {
                return Err(Error::NotAutomorphism(b));
            }
        }
        // functoriality in the second slot reduces to the generators
        for &g in actor.generators() {
            for b in actor.elements() {
                let bg = &table[actor.mul(b, g)];
                if acted.elements().any(|x| bg[x] != table[b][table[g][x]]) {
                    return Err(Error::NotFunctorial(b, g));
                }
            }
        }
        Ok(Action { actor: actor.clone(), acted: acted.clone(), table })
    }

    pub fn trivial(actor: &FiniteGroup, acted: &FiniteGroup) -> Self {
        let id: Vec<usize> = acted.elements().collect();
        Action { actor: actor.clone(), acted: acted.clone(), table: vec![id; actor.order()] }
    }

    /// `x . x' = x * x' * x^-1`.
    pub fn conjugation(x: &FiniteGroup) -> Self {
        let table = x.elements().map(|g| x.elements().map(|y| x.conj(g, y)).collect()).collect();
        Action { actor: x.clone(), acted: x.clone(), table }
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn acted(&self) -> &FiniteGroup {
        &self.acted
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `b . x`.
    #[inline]
    pub fn act(&self, b: usize, x: usize) -> usize {
        self.table[b][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|p| p.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// The action as a homomorphism `actor -> Aut(acted)`.
    pub fn to_automorphism_hom(&self, aut: &AutomorphismGroup) -> Result<Homomorphism> {
        let map = self
            .table
            .iter()
            .map(|p| {
                aut.automorphisms
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| Error::DomainMismatch("automorphism group of another group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(&self.actor, &aut.group, map)
    }
}

fn is_automorphism(g: &FiniteGroup, perm: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    for &v in perm {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    perm[0] == 0
        && g.generators()
            .iter()
            .all(|&s| g.elements().all(|a| perm[g.mul(a, s)] == g.mul(perm[a], perm[s])))
}

pub fn validate_action(actor: &FiniteGroup, acted: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Action> {
    Action::new(actor, acted, table)
}

/// The two canonical actions.
#[derive(Clone, Debug)]
pub enum CanonicalAction {
    Trivial { actor: FiniteGroup, acted: FiniteGroup },
    Conjugation(FiniteGroup),
}

pub fn canonical_action(kind: &CanonicalAction) -> Action {
    match kind {
        CanonicalAction::Trivial { actor, acted } => Action::trivial(actor, acted),
        CanonicalAction::Conjugation(x) => Action::conjugation(x),
    }
}

/// Split short exact sequence `X --k--> T <--e-- B` with retraction `d: T -> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension {
    k: Homomorphism,
    d: Homomorphism,
    e: Homomorphism,
}

impl SplitExtension {
    /// Checks `d.e = 1`, `d.k = 0`, `k` injective and `im k = ker d`.
    pub fn new(k: Homomorphism, d: Homomorphism, e: Homomorphism) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidExtension(m.into()));
        if k.target() != d.source() || e.target() != d.source() || e.source() != d.target() {
            return bad("arrows do not fit together");
        }
        if (0..e.source().order()).any(|b| d.apply(e.apply(b)) != b) {
            return bad("d . e is not the identity");
        }
        if !k.map().iter().all(|&t| d.apply(t) == 0) {
            return bad("d . k is not zero");
        }
        if !k.is_injective() {
            return bad("k is not injective");
        }
        if k.source().order() != d.kernel().order() {
            return bad("image of k is not the kernel of d");
        }
        Ok(SplitExtension { k, d, e })
    }

    /// Kernel inclusion `k: X -> T`.
    pub fn k(&self) -> &Homomorphism {
        &self.k
    }

    /// Retraction `d: T -> B`.
    pub fn d(&self) -> &Homomorphism {
        &self.d
    }

    /// Section `e: B -> T`.
    pub fn e(&self) -> &Homomorphism {
        &self.e
    }

    pub fn middle(&self) -> &FiniteGroup {
        self.k.target()
    }

    pub fn kernel_object(&self) -> &FiniteGroup {
        self.k.source()
    }

    pub fn base(&self) -> &FiniteGroup {
        self.d.target()
    }

    /// The cospan `(k, e)`.
    pub fn cospan(&self) -> Cospan {
        Cospan::new(self.k.clone(), self.e.clone()).expect("k and e share a codomain")
    }
}

/// `X : B` on pairs, with `k(x) = (x,0)`, `e(b) = (0,b)`, `d(x,b) = b`.
pub fn semidirect_product(xi: &Action) -> Result<SplitExtension> {
    let (x, b) = (xi.acted(), xi.actor());
    let (nx, nb) = (x.order(), b.order());
    check_order(nx.saturating_mul(nb))?;
    let label = format!("{}:{}", x.label(), b.label());
    let t = FiniteGroup::from_fn(nx * nb, label, |p, q| {
        let (x1, b1) = (p % nx, p / nx);
        let (x2, b2) = (q % nx, q / nx);
        x.mul(x1, xi.act(b1, x2)) + nx * b.mul(b1, b2)
    })?;
    let k = Homomorphism::new(x, &t, (0..nx).collect())?;
    let d = Homomorphism::new(&t, b, (0..nx * nb).map(|p| p / nx).collect())?;
    let e = Homomorphism::new(b, &t, (0..nb).map(|q| nx * q).collect())?;
    SplitExtension::new(k, d, e)
}

/// `b . x = k^-1(e(b) k(x) e(b)^-1)`.
pub fn action_from_extension(ext: &SplitExtension) -> Result<Action> {
    let t = ext.middle();
    let (x, b) = (ext.kernel_object(), ext.base());
    let mut k_inv = vec![UNSET; t.order()];
    for xi in x.elements() {
        k_inv[ext.k.apply(xi)] = xi;
    }
    let mut table = Vec::with_capacity(b.order());
    for bi in b.elements() {
        let eb = ext.e.apply(bi);
        let mut row = Vec::with_capacity(x.order());
        for xi in x.elements() {
            let y = k_inv[t.conj(eb, ext.k.apply(xi))];
            if y == UNSET {
                return Err(Error::ConjugateEscapesKernel { b: bi, x: xi });
            }
            row.push(y);
        }
        table.push(row);
    }
    Action::new(b, x, table)
}

/// All actions of `b` on `x`: `Hom(b, Aut(x))` evaluated as permutation tables.
pub fn all_actions(b: &FiniteGroup, x: &FiniteGroup) -> Result<Vec<Action>> {
    let aut = automorphism_group(x)?;
    Ok(all_homomorphisms(b, &aut.group)?
        .into_iter()
        .map(|h| Action {
            actor: b.clone(),
            acted: x.clone(),
            table: h.map().iter().map(|&i| aut.eval(i).to_vec()).collect(),
        })
        .collect())
}

/// Whether `f(b . x) = g(b) .' f(x)` for all `b`, `x`.
pub fn is_equivariant(f: &Homomorphism, g: &Homomorphism, xi: &Action, xi2: &Action) -> Result<bool> {
    if f.source() != xi.acted() || g.source() != xi.actor() || f.target() != xi2.acted() || g.target() != xi2.actor() {
        return Err(Error::DomainMismatch("equivariance square does not fit the actions".into()));
    }
    Ok(xi.actor().elements().all(|b| {
        let gb = g.apply(b);
        xi.acted().elements().all(|x| f.apply(xi.act(b, x)) == xi2.act(gb, f.apply(x)))
    }))
}

/// An isomorphism `T -> T'` commuting with `k`, `d` and `e`, if one exists.
/// Such a map is forced on the generators `k(X)` and `e(B)`.
pub fn extension_isomorphism(a: &SplitExtension, b: &SplitExtension) -> Result<Option<Homomorphism>> {
    if a.kernel_object() != b.kernel_object() || a.base() != b.base() {
        return Ok(None);
    }
    let Some(phi) = cooperator(&a.cospan(), b.k(), b.e())? else {
        return Ok(None);
    };
    let commutes_with_d = a.middle().elements().all(|t| b.d().apply(phi.apply(t)) == a.d().apply(t));
    Ok((phi.is_bijective() && commutes_with_d).then_some(phi))
}
