//! A suite of exhaustive consistency checks over small catalog groups.
//!
//! Every statement pairs two independent computations of the same fact and
//! counts the instances where they disagree.

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;

use crate::action::{action_from_extension, all_actions, extension_isomorphism, is_equivariant, semidirect_product, Action};
use crate::commutator::{
    classical_commutator, cooperator, difference_commutator, huq_commutator, relative_commutator,
    saturate_word_oracle, twisted_commutator,
};
use crate::graph::{
    graph_of_precrossed, is_connected, is_multiplicative, is_reflexive_relation, is_star_multiplicative, normalization,
    pi0,
};
use crate::group::{all_subgroups, automorphism_group, center, normal_closure, quotient, FiniteGroup};
use crate::hom::{all_homomorphisms, are_isomorphic, compose, Cospan, Homomorphism};
use crate::io::catalog;
use crate::xmod::{analyze, census, check_pcm, is_central, CensusEntry, PrecrossedCandidate};
use crate::Result;

/// Outcome of one statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementReport {
    pub id: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub millis: u128,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

impl StatementReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn check_result(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                self.instances += 1;
                self.fail(format!("{}: {e}", what()));
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(msg);
    }
}

type Named = (String, FiniteGroup);

type CensusRows = Vec<(String, String, Result<Vec<CensusEntry>>)>;

/// The instance space of a suite run.
pub struct Suite {
    groups: Vec<Named>,
    pair_bound: usize,
    graph_bound: usize,
    census: OnceLock<CensusRows>,
}

type Statement = fn(&Suite) -> Tally;

const STATEMENTS: &[(&str, Statement)] = &[
    ("group-axioms", group_axioms),
    ("normal-closure-quotient", normal_closure_quotient),
    ("composite-kernel-image", composite_kernel_image),
    ("commutator-detects-cooperator", detection),
    ("direct-image", direct_image),
    ("postcomposition", postcomposition),
    ("precomposition", precomposition),
    ("word-oracle-saturation", word_oracle),
    ("trivial-action-is-huq", trivial_action_is_huq),
    ("huq-is-classical", huq_is_classical),
    ("difference-detection", difference_detection),
    ("equivariance-lemma", equivariance_lemma),
    ("equivariance-corollary", equivariance_corollary),
    ("semidirect-conjugation", semidirect_conjugation),
    ("action-extension-round-trip", action_extension_round_trip),
    ("precrossed-condition", precrossed_condition),
    ("peiffer-star-multiplicative", peiffer_star_multiplicative),
    ("crossed-multiplicative", crossed_multiplicative),
    ("centrality-lemma", centrality_lemma),
    ("monic-boundary", monic_boundary),
    ("surjective-boundary", surjective_boundary),
    ("normalization-lemmas", normalization_lemmas),
    ("components-cokernel", components_cokernel),
];

/// Statement identifiers in report order.
pub fn statement_ids() -> Vec<&'static str> {
    STATEMENTS.iter().map(|s| s.0).collect()
}

impl Suite {
    /// Catalog groups of order at most `max_order`; pairs `(X, B)` with
    /// `|X||B| <= 6 max_order`; graphs with `|C1| <= 2 max_order`.
    pub fn new(max_order: usize) -> Self {
        let groups = catalog()
            .groups
            .into_iter()
            .filter(|(_, g)| g.order() <= max_order)
            .collect();
        Suite::with_groups(groups, 6 * max_order, 2 * max_order)
    }

    pub fn with_groups(groups: Vec<(String, FiniteGroup)>, pair_bound: usize, graph_bound: usize) -> Self {
        Suite { groups, pair_bound, graph_bound, census: OnceLock::new() }
    }

    fn pairs(&self, bound: usize) -> impl Iterator<Item = (&Named, &Named)> {
        self.groups
            .iter()
            .flat_map(move |x| self.groups.iter().map(move |b| (x, b)))
            .filter(move |(x, b)| x.1.order() * b.1.order() <= bound)
    }

    /// `(X, B, xi)` for every action with `|X||B|` within `bound`.
    fn actions(&self, bound: usize) -> Vec<(&Named, &Named, Action)> {
        self.pairs(bound)
            .flat_map(|(x, b)| {
                all_actions(&b.1, &x.1)
                    .unwrap_or_default()
                    .into_iter()
                    .map(move |xi| (x, b, xi))
            })
            .collect()
    }

    fn census(&self) -> &[(String, String, Result<Vec<CensusEntry>>)] {
        self.census.get_or_init(|| {
            self.pairs(self.pair_bound)
                .map(|(x, b)| (x.0.clone(), b.0.clone(), census(&x.1, &b.1)))
                .collect()
        })
    }

    fn census_entries(&self, t: &mut Tally) -> Vec<(&str, &str, &CensusEntry)> {
        let mut out = Vec::new();
        for (x, b, r) in self.census() {
            match r {
                Ok(entries) => out.extend(entries.iter().map(|e| (x.as_str(), b.as_str(), e))),
                Err(e) => {
                    t.instances += 1;
                    t.fail(format!("census {x} {b}: {e}"));
                }
            }
        }
        out
    }

    /// Runs every statement; reports are in [`statement_ids`] order.
    pub fn run(&self) -> Vec<StatementReport> {
        self.census();
        STATEMENTS
            .par_iter()
            .map(|&(id, f)| {
                let start = Instant::now();
                let t = f(self);
                StatementReport {
                    id,
                    instances: t.instances,
                    failures: t.failures,
                    millis: start.elapsed().as_millis(),
                    first_failure: t.first_failure,
                }
            })
            .collect()
    }
}

fn group_axioms(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (name, g) in &s.groups {
        t.check(FiniteGroup::validate(&g.rows()).is_ok(), || format!("{name} fails validation"));
        t.check(g.order() % center(g).order() == 0, || format!("{name}: center order"));
        match automorphism_group(g) {
            Ok(aut) => {
                let ok = aut.eval(0).iter().enumerate().all(|(i, &v)| i == v)
                    && (0..aut.group.order()).all(|i| {
                        let m = aut.eval(i);
                        g.elements().all(|a| g.elements().all(|b| m[g.mul(a, b)] == g.mul(m[a], m[b])))
                    })
                    && {
                        let mut maps: Vec<&[usize]> = (0..aut.group.order()).map(|i| aut.eval(i)).collect();
                        maps.sort();
                        maps.windows(2).all(|w| w[0] != w[1])
                    };
                t.check(ok, || format!("{name}: automorphism evaluation"));
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t
}

fn normal_closure_quotient(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (name, g) in &s.groups {
        for a in g.elements() {
            let n = normal_closure(g, &[a]);
            let r = quotient(g, &n).map(|q| q.projection.apply(a) == 0 && q.projection.kernel() == n);
            t.check_result(r, || format!("{name} mod <<{a}>>"));
        }
    }
    t
}

fn composite_kernel_image(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let small: Vec<&Named> = s.groups.iter().filter(|g| g.1.order() <= 6).collect();
    for x in &small {
        for y in &small {
            let Ok(inner) = all_homomorphisms(&x.1, &y.1) else { continue };
            for z in &small {
                let Ok(outer) = all_homomorphisms(&y.1, &z.1) else { continue };
                for g in &inner {
                    for h in &outer {
                        let r = compose(h, g).map(|hg| {
                            hg.image().is_subset_of(&h.image()) && g.kernel().is_subset_of(&hg.kernel())
                        });
                        t.check_result(r, || format!("{} -> {} -> {}", x.0, y.0, z.0));
                    }
                }
            }
        }
    }
    t
}

/// Semidirect and product cospans over pairs within the bound.
fn cospans(s: &Suite) -> Vec<(String, Cospan)> {
    let mut out: Vec<(String, Cospan)> = s
        .actions(s.pair_bound)
        .into_iter()
        .filter_map(|(x, b, xi)| {
            semidirect_product(&xi).ok().map(|e| (format!("{}:{}", x.0, b.0), e.cospan()))
        })
        .collect();
    for (x, b) in s.pairs(s.pair_bound) {
        if let Ok(c) = Cospan::product(&x.1, &b.1) {
            out.push((format!("{}x{}", x.0, b.0), c));
        }
    }
    out
}

/// Calls `body` on every `(f, g)` from the feet of `c` into each target in `ys`.
fn for_each_pair(c: &Cospan, ys: &[&Named], mut body: impl FnMut(&Named, &Homomorphism, &Homomorphism)) {
    for y in ys {
        let (Ok(fs), Ok(gs)) = (all_homomorphisms(c.left().source(), &y.1), all_homomorphisms(c.right().source(), &y.1))
        else {
            continue;
        };
        for f in &fs {
            for g in &gs {
                body(y, f, g);
            }
        }
    }
}

fn detection(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let ys: Vec<&Named> = s.groups.iter().collect();
    for (name, c) in cospans(s) {
        for_each_pair(&c, &ys, |y, f, g| {
            let r = (|| Ok(cooperator(&c, f, g)?.is_some() == relative_commutator(&c, f, g)?.is_trivial()))();
            t.check_result(r, || format!("{name} into {}", y.0));
        });
    }
    t
}

fn direct_image(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let ys: Vec<&Named> = s.groups.iter().filter(|g| g.1.order() <= 6).collect();
    for (name, c) in cospans(s).into_iter().filter(|(_, c)| c.apex().order() <= s.graph_bound) {
        for_each_pair(&c, &ys, |y, f, g| {
            for z in &ys {
                let Ok(hs) = all_homomorphisms(&y.1, &z.1) else { continue };
                for h in &hs {
                    let r = (|| {
                        let base = relative_commutator(&c, f, g)?.value;
                        let pushed = relative_commutator(&c, &compose(h, f)?, &compose(h, g)?)?.value;
                        Ok(pushed == h.image_of(&base))
                    })();
                    t.check_result(r, || format!("{name} into {} then {}", y.0, z.0));
                }
            }
        });
    }
    t
}

fn postcomposition(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let ys: Vec<&Named> = s.groups.iter().filter(|g| g.1.order() <= 6).collect();
    for (name, c) in cospans(s).into_iter().filter(|(_, c)| c.apex().order() <= s.graph_bound) {
        for_each_pair(&c, &ys, |y, f, g| {
            for z in &ys {
                let Ok(hs) = all_homomorphisms(&y.1, &z.1) else { continue };
                for h in &hs {
                    let r = (|| {
                        let phi = cooperator(&c, f, g)?;
                        let psi = cooperator(&c, &compose(h, f)?, &compose(h, g)?)?;
                        Ok(match (phi, psi) {
                            (Some(phi), Some(psi)) => compose(h, &phi)? == psi,
                            (Some(_), None) => false,
                            (None, Some(_)) => !h.is_injective(),
                            (None, None) => true,
                        })
                    })();
                    t.check_result(r, || format!("{name} into {} then {}", y.0, z.0));
                }
            }
        });
    }
    t
}

/// Cospan morphisms between semidirect cospans: `(x, y)` with `k x` and `s y`
/// cooperating over the source cospan.
fn precomposition(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let bound = s.graph_bound.min(12);
    let exts: Vec<(String, Cospan)> = s
        .actions(bound)
        .into_iter()
        .filter_map(|(x, b, xi)| semidirect_product(&xi).ok().map(|e| (format!("{}:{}", x.0, b.0), e.cospan())))
        .collect();
    for (n1, c1) in &exts {
        for (n2, c) in &exts {
            let (Ok(xs), Ok(ys)) = (
                all_homomorphisms(c1.left().source(), c.left().source()),
                all_homomorphisms(c1.right().source(), c.right().source()),
            ) else {
                continue;
            };
            let targets = [c.left().source().clone(), c.right().source().clone()];
            for x in &xs {
                for y in &ys {
                    let r = (|| -> Result<Option<bool>> {
                        let Some(psi) = cooperator(c1, &compose(c.left(), x)?, &compose(c.right(), y)?)? else {
                            return Ok(None);
                        };
                        let mut ok = true;
                        for target in &targets {
                            let fs = all_homomorphisms(c.left().source(), target)?;
                            let gs = all_homomorphisms(c.right().source(), target)?;
                            for f in &fs {
                                for g in &gs {
                                    if let Some(phi) = cooperator(c, f, g)? {
                                        let lhs = cooperator(c1, &compose(f, x)?, &compose(g, y)?)?;
                                        ok &= lhs == Some(compose(&phi, &psi)?);
                                    }
                                }
                            }
                        }
                        Ok(Some(ok))
                    })();
                    match r {
                        Ok(None) => {}
                        Ok(Some(ok)) => t.check(ok, || format!("{n1} -> {n2}")),
                        Err(e) => t.check(false, || format!("{n1} -> {n2}: {e}")),
                    }
                }
            }
        }
    }
    t
}

fn word_oracle(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let ys: Vec<&Named> = s.groups.iter().filter(|g| g.1.order() <= 12).collect();
    for (name, c) in cospans(s).into_iter().filter(|(_, c)| c.apex().order() <= 12) {
        for_each_pair(&c, &ys, |y, f, g| {
            let r = saturate_word_oracle(&c, f, g, 2 * c.apex().order() + 2)
                .map(|sat| sat.saturated_at.is_some() && sat.oracle == sat.fiber);
            t.check_result(r, || format!("{name} into {}", y.0));
        });
    }
    t
}

fn trivial_action_is_huq(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let gs: Vec<&Named> = s.groups.iter().filter(|g| g.1.order() <= 12).collect();
    for x in &gs {
        for b in &gs {
            let xi = Action::trivial(&b.1, &x.1);
            let c = Cospan::product(&x.1, &b.1);
            for y in &gs {
                let Ok(c) = &c else { continue };
                for_each_pair(c, &[y], |_, f, g| {
                    let r = (|| Ok(twisted_commutator(&xi, f, g)?.value == huq_commutator(f, g)?.value))();
                    t.check_result(r, || format!("{} and {} into {}", x.0, b.0, y.0));
                });
            }
        }
    }
    t
}

fn huq_is_classical(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (name, g) in &s.groups {
        let subs: Vec<_> = all_subgroups(g).iter().map(|h| (h.clone(), h.to_group().1)).collect();
        for (k, ik) in &subs {
            for (l, il) in &subs {
                let r = huq_commutator(ik, il).map(|c| c.value == classical_commutator(k, l));
                t.check_result(r, || format!("{name}: {:?} {:?}", k.elements(), l.elements()));
            }
        }
    }
    t
}

fn difference_detection(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for x in &s.groups {
        for y in &s.groups {
            let Ok(homs) = all_homomorphisms(&x.1, &y.1) else { continue };
            for f in &homs {
                for g in &homs {
                    let r = difference_commutator(f, g).map(|c| c.is_trivial() == (f == g));
                    t.check_result(r, || format!("{} -> {}", x.0, y.0));
                }
            }
        }
    }
    t
}

fn equivariance_lemma(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let ys: Vec<&Named> = s.groups.iter().collect();
    for (x, b, xi) in s.actions(s.pair_bound) {
        let Ok(ext) = semidirect_product(&xi) else { continue };
        let c = ext.cospan();
        for_each_pair(&c, &ys, |y, f, g| {
            let r = (|| {
                let eq = is_equivariant(f, g, &xi, &Action::conjugation(&y.1))?;
                let coop = cooperator(&c, f, g)?.is_some();
                let vanishes = relative_commutator(&c, f, g)?.is_trivial();
                Ok(eq == coop && coop == vanishes)
            })();
            t.check_result(r, || format!("{} on {} into {}", b.0, x.0, y.0));
        });
    }
    t
}

fn equivariance_corollary(s: &Suite) -> Tally {
    let mut t = Tally::default();
    let bound = s.graph_bound;
    let acts = s.actions(bound);
    let exts: Vec<_> = acts.iter().filter_map(|(x, b, xi)| Some((x, b, xi, semidirect_product(xi).ok()?))).collect();
    for (x, b, xi, ext) in &exts {
        for (x2, b2, xi2, ext2) in &exts {
            let (Ok(fs), Ok(gs)) = (all_homomorphisms(&x.1, &x2.1), all_homomorphisms(&b.1, &b2.1)) else {
                continue;
            };
            for f in &fs {
                for g in &gs {
                    let r = (|| {
                        let eq = is_equivariant(f, g, xi, xi2)?;
                        let coop = cooperator(&ext.cospan(), &compose(ext2.k(), f)?, &compose(ext2.e(), g)?)?;
                        Ok(eq == coop.is_some())
                    })();
                    t.check_result(r, || format!("{} on {} to {} on {}", b.0, x.0, b2.0, x2.0));
                }
            }
        }
    }
    t
}

fn semidirect_conjugation(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, xi) in s.actions(s.pair_bound) {
        let r = semidirect_product(&xi).map(|ext| {
            let m = ext.middle();
            b.1.elements().all(|bi| {
                x.1.elements()
                    .all(|xe| ext.k().apply(xi.act(bi, xe)) == m.conj(ext.e().apply(bi), ext.k().apply(xe)))
            })
        });
        t.check_result(r, || format!("{} on {}", b.0, x.0));
    }
    t
}

fn action_extension_round_trip(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, xi) in s.actions(s.pair_bound) {
        let r = (|| {
            let ext = semidirect_product(&xi)?;
            let back = action_from_extension(&ext)?;
            let again = semidirect_product(&back)?;
            Ok(back == xi && extension_isomorphism(&ext, &again)?.is_some())
        })();
        t.check_result(r, || format!("{} on {}", b.0, x.0));
    }
    t
}

fn precrossed_condition(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in s.census_entries(&mut t) {
        let r = check_pcm(&e.candidate).map(|(pcm, c)| {
            pcm == e.report.pcm
                && c.is_some() == pcm
                && pcm == crate::xmod::is_boundary_equivariant(e.candidate.boundary(), e.candidate.action())
        });
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

fn small_precrossed<'a>(s: &'a Suite, t: &mut Tally) -> Vec<(&'a str, &'a str, &'a CensusEntry)> {
    s.census_entries(t)
        .into_iter()
        .filter(|(_, _, e)| e.report.pcm && e.candidate.extension().middle().order() <= s.graph_bound)
        .collect()
}

fn peiffer_star_multiplicative(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in small_precrossed(s, &mut t) {
        let r = graph_of_precrossed(&e.candidate).and_then(|g| Ok(is_star_multiplicative(&g)? == e.report.pff));
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

fn crossed_multiplicative(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in small_precrossed(s, &mut t) {
        let r = graph_of_precrossed(&e.candidate).and_then(|g| {
            let m = is_multiplicative(&g)?;
            Ok(m == e.report.is_crossed && m == is_star_multiplicative(&g)?)
        });
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

fn centrality_lemma(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in s.census_entries(&mut t) {
        if !e.report.is_crossed {
            continue;
        }
        let d = e.candidate.boundary();
        let (_, kappa) = d.kernel().to_group();
        let r = huq_commutator(&kappa, &Homomorphism::identity(d.source())).map(|c| c.is_trivial());
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

fn monic_boundary(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (name, g) in &s.groups {
        for sub in all_subgroups(g) {
            let (_, incl) = sub.to_group();
            let r = (|| {
                let mut precrossed = 0;
                let mut all_crossed = true;
                for xi in all_actions(g, incl.source())? {
                    let rep = analyze(&PrecrossedCandidate::new(incl.clone(), xi)?)?;
                    if rep.pcm {
                        precrossed += 1;
                        all_crossed &= rep.pff;
                    }
                }
                Ok(if sub.is_normal() { precrossed == 1 && all_crossed } else { precrossed == 0 })
            })();
            t.check_result(r, || format!("{name}: {:?}", sub.elements()));
        }
    }
    t
}

fn surjective_boundary(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for x in &s.groups {
        for b in &s.groups {
            if x.1.order() % b.1.order() != 0 {
                continue;
            }
            let Ok(homs) = all_homomorphisms(&x.1, &b.1) else { continue };
            for d in homs.into_iter().filter(|d| d.is_surjective()) {
                let r = (|| {
                    let mut crossed = 0;
                    for xi in all_actions(&b.1, &x.1)? {
                        crossed += analyze(&PrecrossedCandidate::new(d.clone(), xi)?)?.is_crossed as usize;
                    }
                    let central = d.kernel().is_subset_of(&center(&x.1));
                    Ok(central == is_central(&d)? && if central { crossed == 1 } else { crossed == 0 })
                })();
                t.check_result(r, || format!("{} -> {}: {:?}", x.0, b.0, d.map()));
            }
        }
    }
    t
}

fn normalization_lemmas(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in small_precrossed(s, &mut t) {
        let r = graph_of_precrossed(&e.candidate).and_then(|g| {
            let n = normalization(&g);
            Ok(is_reflexive_relation(&g)? == n.is_injective() && is_connected(&g)? == n.is_surjective())
        });
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

fn components_cokernel(s: &Suite) -> Tally {
    let mut t = Tally::default();
    for (x, b, e) in small_precrossed(s, &mut t) {
        let r = graph_of_precrossed(&e.candidate).and_then(|g| {
            let q = pi0(&g)?;
            let d = e.candidate.boundary();
            let coker = quotient(d.target(), &normal_closure(d.target(), d.map()))?;
            Ok(q.group.is_trivial() == is_connected(&g)? && are_isomorphic(&q.group, &coker.group)?)
        });
        t.check_result(r, || format!("{x} -> {b} #{}/{}", e.boundary_index, e.action_index));
    }
    t
}

/// Runs the suite for catalog groups of order at most `max_order`.
pub fn verify(max_order: usize) -> Vec<StatementReport> {
    Suite::new(max_order).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_suite_passes() {
        let reports = verify(4);
        assert_eq!(reports.len(), STATEMENTS.len());
        for r in &reports {
            assert!(r.passed(), "{} failed: {:?}", r.id, r.first_failure);
            assert!(r.instances > 0, "{} ran no instances", r.id);
        }
    }
}
