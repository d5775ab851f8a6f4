//! Backtracking over images of a generating sequence.
//!
//! A map defined on generators extends to at most one homomorphism. The
//! extension is computed by walking the Cayley graph of the source: every
//! edge `x -> x*g` forces `map(x*g) = map(x)*image(g)`, and a conflict on any
//! edge means no homomorphism exists. Consistency on every edge of the
//! Cayley graph is also sufficient.

use std::collections::VecDeque;

use crate::group::FiniteGroup;
use crate::limits::search_budget;
use crate::{Error, Result};

pub(crate) const UNSET: usize = usize::MAX;

pub(crate) struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    pub(crate) fn new() -> Self {
        Budget { used: 0, limit: search_budget() }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Extends `images[i]` for `gens[i]` over the subgroup `<gens>` of `src`.
/// Entries outside the subgroup stay [`UNSET`]. Returns `None` on conflict.
pub(crate) fn extend(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![UNSET; src.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x];
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(fx, h);
            if map[y] == UNSET {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    All,
    Bijective,
    FirstBijective,
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: &'a [usize],
    candidates: Vec<Vec<usize>>,
    mode: Mode,
    budget: Budget,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, images: &mut Vec<usize>) -> Result<bool> {
        let depth = images.len();
        for ci in 0..self.candidates[depth].len() {
            let h = self.candidates[depth][ci];
            self.budget.tick()?;
            images.push(h);
            if let Some(map) = extend(self.src, self.dst, &self.gens[..=depth], images) {
                let injective_so_far = self.mode == Mode::All || partial_injective(&map, self.dst.order());
                if injective_so_far {
                    if depth + 1 == self.gens.len() {
                        self.found.push(map);
                        if self.mode == Mode::FirstBijective {
                            return Ok(true);
                        }
                    } else if self.run(images)? {
                        return Ok(true);
                    }
                }
            }
            images.pop();
        }
        Ok(false)
    }
}

fn partial_injective(map: &[usize], target_order: usize) -> bool {
    let mut seen = vec![false; target_order];
    for &v in map.iter().filter(|&&v| v != UNSET) {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

fn search(src: &FiniteGroup, dst: &FiniteGroup, mode: Mode) -> Result<Vec<Vec<usize>>> {
    if mode != Mode::All && src.order() != dst.order() {
        return Ok(Vec::new());
    }
    let gens = src.generators();
    if gens.is_empty() {
        return Ok(vec![vec![0]]);
    }
    let candidates = gens
        .iter()
        .map(|&g| {
            let og = src.elem_order(g);
            dst.elements()
                .filter(|&h| match mode {
                    Mode::All => og.is_multiple_of(dst.elem_order(h)),
                    _ => og == dst.elem_order(h),
                })
                .collect()
        })
        .collect();
    let mut s = Search { src, dst, gens, candidates, mode, budget: Budget::new(), found: Vec::new() };
    s.run(&mut Vec::with_capacity(gens.len()))?;
    let mut found = s.found;
    found.sort_unstable();
    Ok(found)
}

/// Every homomorphism table `src -> dst`, sorted lexicographically.
pub(crate) fn homomorphisms(src: &FiniteGroup, dst: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    search(src, dst, Mode::All)
}

/// First bijective homomorphism in search order.
pub(crate) fn first_isomorphism(src: &FiniteGroup, dst: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    if src.order() != dst.order() || src.order_profile() != dst.order_profile() {
        return Ok(None);
    }
    Ok(search(src, dst, Mode::FirstBijective)?.into_iter().next())
}

/// Every automorphism table of `g`, sorted lexicographically (identity first).
pub(crate) fn automorphisms(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    search(g, g, Mode::Bijective)
}
