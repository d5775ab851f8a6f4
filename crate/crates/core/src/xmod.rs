//! Precrossed and crossed modules as vanishing twisted commutators.
//!
//! A pair `(d: X -> B, xi)` is precrossed when `<d, 1_B>_xi` is trivial and
//! crossed when additionally `<k, e.d>` twisted by the conjugation action of
//! `X` is trivial. Each condition is computed twice: through the commutator
//! and cooperator over the relevant split extension, and through the
//! classical pointwise identity. Any disagreement is reported as an
//! [`Error::InternalCrossCheckFailure`].

use std::fmt;

use rayon::prelude::*;

use crate::action::{all_actions, semidirect_product, Action, SplitExtension};
use crate::commutator::{cooperator, huq_commutator, relative_commutator};
use crate::group::{center, FiniteGroup};
use crate::hom::{all_homomorphisms, compose, Homomorphism};
use crate::search::UNSET;
use crate::{Error, Result};

/// A boundary map together with an action of its codomain on its domain.
#[derive(Clone, Debug)]
pub struct PrecrossedCandidate {
    boundary: Homomorphism,
    action: Action,
    extension: SplitExtension,
}

impl PrecrossedCandidate {
    pub fn new(boundary: Homomorphism, action: Action) -> Result<Self> {
        if boundary.source() != action.acted() || boundary.target() != action.actor() {
            return Err(Error::DomainMismatch(
                "boundary must go from the acted group to the actor".into(),
            ));
        }
        let extension = semidirect_product(&action)?;
        Ok(PrecrossedCandidate { boundary, action, extension })
    }

    pub fn boundary(&self) -> &Homomorphism {
        &self.boundary
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn extension(&self) -> &SplitExtension {
        &self.extension
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    NormalSubobject,
    CentralExtension,
    General,
    NotXmod,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NormalSubobject => "normal-subobject",
            Classification::CentralExtension => "central-extension",
            Classification::General => "general",
            Classification::NotXmod => "not-xmod",
        })
    }
}

#[derive(Clone, Debug)]
pub struct XModReport {
    pub pcm: bool,
    pub pff: bool,
    pub is_precrossed: bool,
    pub is_crossed: bool,
    /// Witness `c: X:B -> B` with `c.e = 1` and `c.k = d`, present iff `pcm`.
    pub connecting_map: Option<Homomorphism>,
    pub classification: Classification,
}

fn disagree(what: &str, detail: String) -> Error {
    Error::InternalCrossCheckFailure(format!("{what}: {detail}"))
}

/// Precrossed module condition, with its connecting map when it holds.
pub fn check_pcm(cand: &PrecrossedCandidate) -> Result<(bool, Option<Homomorphism>)> {
    let ext = &cand.extension;
    let b = cand.action.actor();
    let id_b = Homomorphism::identity(b);
    let cospan = ext.cospan();
    let vanishes = relative_commutator(&cospan, &cand.boundary, &id_b)?.is_trivial();
    let c = cooperator(&cospan, &cand.boundary, &id_b)?;
    let equivariant = is_boundary_equivariant(&cand.boundary, &cand.action);
    if vanishes != c.is_some() || vanishes != equivariant {
        return Err(disagree(
            "PCM",
            format!("commutator trivial {vanishes}, cooperator {}, equivariant {equivariant}", c.is_some()),
        ));
    }
    if let Some(c) = &c {
        if compose(c, ext.e())? != id_b || compose(c, ext.k())? != cand.boundary {
            return Err(disagree("PCM", "connecting map fails its triangles".into()));
        }
    }
    Ok((vanishes, c))
}

/// `d(b . x) = b d(x) b^-1` for all `b`, `x`.
pub fn is_boundary_equivariant(boundary: &Homomorphism, xi: &Action) -> bool {
    let b = xi.actor();
    b.elements().all(|g| {
        xi.acted()
            .elements()
            .all(|x| boundary.apply(xi.act(g, x)) == b.conj(g, boundary.apply(x)))
    })
}

/// `d(x) . x' = x x' x^-1` for all `x`, `x'`.
pub fn satisfies_peiffer_identity(boundary: &Homomorphism, xi: &Action) -> bool {
    let x = xi.acted();
    x.elements()
        .all(|a| x.elements().all(|y| xi.act(boundary.apply(a), y) == x.conj(a, y)))
}

/// Peiffer condition.
pub fn check_pff(cand: &PrecrossedCandidate) -> Result<bool> {
    let x = cand.action.acted();
    let ext = &cand.extension;
    let conj_ext = semidirect_product(&Action::conjugation(x))?;
    let cospan = conj_ext.cospan();
    let e_d = compose(ext.e(), &cand.boundary)?;
    let vanishes = relative_commutator(&cospan, ext.k(), &e_d)?.is_trivial();
    let coop = cooperator(&cospan, ext.k(), &e_d)?.is_some();
    let peiffer = satisfies_peiffer_identity(&cand.boundary, &cand.action);
    if vanishes != coop || vanishes != peiffer {
        return Err(disagree(
            "PFF",
            format!("commutator trivial {vanishes}, cooperator {coop}, Peiffer identity {peiffer}"),
        ));
    }
    Ok(vanishes)
}

pub fn analyze(cand: &PrecrossedCandidate) -> Result<XModReport> {
    let (pcm, connecting_map) = check_pcm(cand)?;
    let pff = check_pff(cand)?;
    let d = &cand.boundary;
    let classification = if !(pcm && pff) {
        Classification::NotXmod
    } else if d.is_injective() {
        Classification::NormalSubobject
    } else if d.is_surjective() && is_central(d)? {
        Classification::CentralExtension
    } else {
        Classification::General
    };
    Ok(XModReport {
        pcm,
        pff,
        is_precrossed: pcm,
        is_crossed: pcm && pff,
        connecting_map,
        classification,
    })
}

/// Whether the kernel of `d` Huq-commutes with `1_X`; cross-checked against
/// containment of the kernel in the center.
pub fn is_central(d: &Homomorphism) -> Result<bool> {
    let x = d.source();
    let kernel = d.kernel();
    let (_, incl) = kernel.to_group();
    let huq = huq_commutator(&incl, &Homomorphism::identity(x))?.is_trivial();
    let classical = kernel.is_subset_of(&center(x));
    if huq != classical {
        return Err(disagree("centrality", format!("Huq {huq}, kernel in center {classical}")));
    }
    Ok(huq)
}

/// For a central surjection `d`, the action `b . x = x0 x x0^-1` with
/// `d(x0) = b`; `None` when `d` is not central.
pub fn action_for_central_extension(d: &Homomorphism) -> Result<Option<Action>> {
    if !d.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !is_central(d)? {
        return Ok(None);
    }
    let (x, b) = (d.source(), d.target());
    let mut table = vec![vec![UNSET; x.order()]; b.order()];
    for x0 in x.elements() {
        let row = &mut table[d.apply(x0)];
        for y in x.elements() {
            let v = x.conj(x0, y);
            if row[y] != UNSET && row[y] != v {
                return Err(disagree("central action", format!("depends on the preimage of {}", d.apply(x0))));
            }
            row[y] = v;
        }
    }
    Ok(Some(Action::new(b, x, table)?))
}

/// For an injective `incl: X -> B` with normal image, the conjugation of
/// `B` restricted to `X`; `None` when the image is not normal.
pub fn normal_subobject_action(incl: &Homomorphism) -> Result<Option<Action>> {
    if !incl.is_injective() {
        return Err(Error::NotInjective);
    }
    let image = incl.image();
    if !image.is_normal() {
        return Ok(None);
    }
    let (x, b) = (incl.source(), incl.target());
    let mut back = vec![UNSET; b.order()];
    for a in x.elements() {
        back[incl.apply(a)] = a;
    }
    let table = b
        .elements()
        .map(|g| x.elements().map(|a| back[b.conj(g, incl.apply(a))]).collect())
        .collect();
    Ok(Some(Action::new(b, x, table)?))
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub boundary_index: usize,
    pub action_index: usize,
    pub candidate: PrecrossedCandidate,
    pub report: XModReport,
}

/// Counts over a census.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub candidates: usize,
    pub precrossed: usize,
    pub crossed: usize,
    pub normal_subobject: usize,
    pub central_extension: usize,
    pub general: usize,
}

impl CensusSummary {
    pub fn of(entries: &[CensusEntry]) -> Self {
        let mut s = CensusSummary { candidates: entries.len(), ..Default::default() };
        for e in entries {
            s.precrossed += e.report.is_precrossed as usize;
            s.crossed += e.report.is_crossed as usize;
            match e.report.classification {
                Classification::NormalSubobject => s.normal_subobject += 1,
                Classification::CentralExtension => s.central_extension += 1,
                Classification::General => s.general += 1,
                Classification::NotXmod => {}
            }
        }
        s
    }
}

/// Every pair `(d, xi)` with `d in Hom(X, B)` and `xi` an action of `B` on
/// `X`, analyzed. Ordered by `d`, then `xi`, in enumeration order.
pub fn census(x: &FiniteGroup, b: &FiniteGroup) -> Result<Vec<CensusEntry>> {
    let boundaries = all_homomorphisms(x, b)?;
    let actions = all_actions(b, x)?;
    let jobs: Vec<(usize, usize)> = (0..boundaries.len())
        .flat_map(|i| (0..actions.len()).map(move |j| (i, j)))
        .collect();
    jobs.into_par_iter()
        .map(|(i, j)| {
            let candidate = PrecrossedCandidate::new(boundaries[i].clone(), actions[j].clone())?;
            let report = analyze(&candidate)?;
            Ok(CensusEntry { boundary_index: i, action_index: j, candidate, report })
        })
        .collect()
}
