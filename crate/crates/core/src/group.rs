//! Finite groups as multiplication tables over element indices.
//!
//! Every group pins its identity at index 0. Groups are cheap to clone
//! (shared, immutable storage) and compare by table identity; structural
//! comparison goes through [`crate::hom::find_isomorphism`].

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::hom::Homomorphism;
use crate::limits::check_order;
use crate::{Error, Result};

struct GroupData {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    label: String,
    generators: OnceLock<Vec<usize>>,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order && self.0.table == other.0.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.label, self.0.order)
    }
}

impl FiniteGroup {
    /// Validates a square table as a group with identity at index 0.
    ///
    /// Associativity is checked exhaustively with Light's test: the set of
    /// elements `g` with `(x*g)*y = x*(g*y)` for all `x, y` is closed under
    /// the product, so it suffices to check a set of elements that generates
    /// the whole table under right multiplication.
    pub fn validate(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadTable(format!(
                        "entry ({a},{b}) = {v} out of range [0,{n})"
                    )));
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(n, flat, "G")
    }

    /// Builds a group from a flat row-major table, verifying all axioms.
    pub(crate) fn from_flat(n: usize, table: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::NoIdentityAtZero(a));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            let b = (0..n).find(|&b| at(a, b) == 0).ok_or(Error::MissingInverse(a))?;
            if at(b, a) != 0 {
                return Err(Error::MissingInverse(a));
            }
            *slot = b as u32;
        }
        // Light's associativity test over a right-multiplication generating set.
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut count = 1;
        let mut gens: Vec<usize> = Vec::new();
        while count < n {
            let g = (0..n).find(|&x| !reached[x]).expect("unreached element");
            for x in 0..n {
                for y in 0..n {
                    if at(at(x, g), y) != at(x, at(g, y)) {
                        return Err(Error::NotAssociative(x, g, y));
                    }
                }
            }
            gens.push(g);
            let mut queue: VecDeque<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = queue.pop_front() {
                for &h in &gens {
                    let y = at(x, h);
                    if !reached[y] {
                        reached[y] = true;
                        count += 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Self::assemble(n, table, inv, label.into()))
    }

    fn assemble(n: usize, table: Vec<u32>, inv: Vec<u32>, label: String) -> Self {
        let mut elem_orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            elem_orders[a] = k;
        }
        elem_orders[0] = 1;
        FiniteGroup(Arc::new(GroupData {
            order: n,
            table,
            inv,
            elem_orders,
            label,
            generators: OnceLock::new(),
        }))
    }

    /// Builds a group from a closure that multiplies element indices.
    pub(crate) fn from_fn(
        n: usize,
        label: impl Into<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        check_order(n)?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b) as u32);
            }
        }
        Self::from_flat(n, table, label)
    }

    /// Same group, different label. Labels take no part in equality.
    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let d = &self.0;
        FiniteGroup(Arc::new(GroupData {
            order: d.order,
            table: d.table.clone(),
            inv: d.inv.clone(),
            elem_orders: d.elem_orders.clone(),
            label: label.into(),
            generators: OnceLock::new(),
        }))
    }

    pub fn trivial() -> Self {
        Self::assemble(1, vec![0], vec![0], "Z1".into())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// Order of the element `a`.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.0.elem_orders[a] as usize
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.0.order;
        self.0.table[a * n..(a + 1) * n].iter().map(|&v| v as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.elements().map(|a| self.row(a).collect()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating sequence: repeatedly adds the smallest element not
    /// yet in the generated subgroup.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| {
            let n = self.order();
            let mut gens = Vec::new();
            let mut inside = vec![false; n];
            inside[0] = true;
            let mut members = vec![0usize];
            while members.len() < n {
                let g = (0..n).find(|&x| !inside[x]).expect("missing element");
                gens.push(g);
                let mut queue: VecDeque<usize> = members.iter().copied().collect();
                while let Some(x) = queue.pop_front() {
                    for &h in &gens {
                        let y = self.mul(x, h);
                        if !inside[y] {
                            inside[y] = true;
                            members.push(y);
                            queue.push_back(y);
                        }
                    }
                }
            }
            gens
        })
    }

    /// Sorted multiset of element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.elem_order(a)).collect();
        v.sort_unstable();
        v
    }
}

/// A subgroup of a finite group, stored as a sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup of {} {:?}", self.parent.label(), self.elements)
    }
}

impl Subgroup {
    fn from_mask(parent: &FiniteGroup, mask: Vec<bool>) -> Self {
        let elements = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup { parent: parent.clone(), elements, mask }
    }

    /// Checks that `elements` is a subgroup of `parent`.
    pub fn from_elements(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        for &e in elements {
            if e >= parent.order() {
                return Err(Error::BadTable(format!("element {e} out of range")));
            }
            mask[e] = true;
        }
        if !mask[0] {
            return Err(Error::BadTable("subgroup must contain the identity".into()));
        }
        let sub = Self::from_mask(parent, mask);
        for &a in &sub.elements {
            if !sub.mask[parent.inv(a)] {
                return Err(Error::BadTable(format!("not closed under inverse at {a}")));
            }
            for &b in &sub.elements {
                if !sub.mask[parent.mul(a, b)] {
                    return Err(Error::BadTable(format!("not closed at ({a},{b})")));
                }
            }
        }
        Ok(sub)
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Self::from_mask(parent, mask)
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.mask[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// First conjugate `g*n*g^-1` escaping the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let g = &self.parent;
        for &by in g.generators() {
            for &element in &self.elements {
                if !self.contains(g.conj(by, element)) {
                    return Some((element, by));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// Reifies the subgroup as a standalone group (element `i` is the
    /// `i`-th smallest member) together with its inclusion.
    pub fn to_group(&self) -> (FiniteGroup, Homomorphism) {
        let mut index = vec![usize::MAX; self.parent.order()];
        for (i, &e) in self.elements.iter().enumerate() {
            index[e] = i;
        }
        let p = &self.parent;
        let els = &self.elements;
        let group = FiniteGroup::from_fn(els.len(), format!("sub({})", p.label()), |a, b| {
            index[p.mul(els[a], els[b])]
        })
        .expect("subgroup of a valid group is a group");
        let incl = Homomorphism::new(&group, p, els.clone())
            .expect("inclusion of a subgroup is a homomorphism");
        (group, incl)
    }
}

/// Least subgroup containing `seed`, by worklist closure.
pub fn subgroup_closure(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = seed.iter().copied().filter(|&s| s != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    closure_with(g, vec![0], &gens)
}

fn closure_with(g: &FiniteGroup, start: Vec<usize>, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    let mut queue = VecDeque::new();
    for s in start {
        if !mask[s] {
            mask[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &h in gens {
            let y = g.mul(x, h);
            if !mask[y] {
                mask[y] = true;
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_mask(g, mask)
}

/// Least normal subgroup containing `seed`.
///
/// Closes the seed, then repeatedly adds conjugates of the current
/// subgroup's members by generators of `g` until nothing escapes.
pub fn normal_closure(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = seed.iter().copied().filter(|&s| s != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut sub = closure_with(g, vec![0], &gens);
    loop {
        match sub.normality_witness() {
            None => return sub,
            Some((element, by)) => {
                gens.push(g.conj(by, element));
                sub = closure_with(g, sub.elements.clone(), &gens);
            }
        }
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let mask = g
        .elements()
        .map(|z| gens.iter().all(|&a| g.mul(z, a) == g.mul(a, z)))
        .collect();
    Subgroup::from_mask(g, mask)
}

/// Every subgroup of `g`, sorted by element list.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Vec<usize>> = g
        .elements()
        .map(|a| subgroup_closure(g, &[a]).elements.clone())
        .collect();
    let cyclic_gens: Vec<usize> = {
        let mut reps = Vec::new();
        for c in &cyclic {
            // any element generating c
            if let Some(&a) = c.iter().find(|&&a| g.elem_order(a) == c.len()) {
                reps.push(a);
            }
        }
        reps
    };
    let mut seen: BTreeSet<Vec<usize>> = cyclic.clone();
    let mut queue: VecDeque<Vec<usize>> = cyclic.into_iter().collect();
    while let Some(s) = queue.pop_front() {
        for &a in &cyclic_gens {
            if s.binary_search(&a).is_ok() {
                continue;
            }
            let joined = closure_with(g, s.clone(), &[s.clone(), vec![a]].concat());
            if seen.insert(joined.elements.clone()) {
                queue.push_back(joined.elements);
            }
        }
    }
    seen.into_iter()
        .map(|els| {
            let mut mask = vec![false; g.order()];
            for e in els {
                mask[e] = true;
            }
            Subgroup::from_mask(g, mask)
        })
        .collect()
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Homomorphism,
    /// Minimal element of each coset, in coset-index order.
    pub representatives: Vec<usize>,
}

/// `g / n`, cosets indexed by their minimal element in increasing order.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if n.parent() != g {
        return Err(Error::DomainMismatch("subgroup of a different group".into()));
    }
    if let Some((element, by)) = n.normality_witness() {
        return Err(Error::NotNormal { element, by });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset[a] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(a);
        for &m in n.elements() {
            coset[g.mul(a, m)] = idx;
        }
    }
    let label = format!("{}/N{}", g.label(), n.order());
    let group = FiniteGroup::from_fn(reps.len(), label, |i, j| coset[g.mul(reps[i], reps[j])])?;
    let projection = Homomorphism::new(g, &group, coset)?;
    Ok(Quotient { group, projection, representatives: reps })
}

/// Catalog families accepted by [`builtin_group`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Symmetric,
    Quaternion8,
    Klein4,
}

pub fn builtin_group(kind: GroupKind, n: usize) -> Result<FiniteGroup> {
    match kind {
        GroupKind::Cyclic => cyclic(n),
        GroupKind::Dihedral => dihedral(n),
        GroupKind::Symmetric => symmetric(n),
        GroupKind::Quaternion8 => quaternion8(),
        GroupKind::Klein4 => klein4(),
    }
}

fn need_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::BadTable("parameter must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    need_positive(n)?;
    FiniteGroup::from_fn(n, format!("Z{n}"), |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`; `r^i s^j` sits at index `i + n*j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    need_positive(n)?;
    check_order(2 * n)?;
    FiniteGroup::from_fn(2 * n, format!("D{n}"), |a, b| {
        let (i, s) = (a % n, a / n);
        let (j, t) = (b % n, b / n);
        let rot = if s == 0 { (i + j) % n } else { (i + n - j) % n };
        rot + n * ((s + t) % 2)
    })
}

/// Symmetric group on `n` points; permutations in lexicographic order,
/// composed as functions: `(p*q)(i) = p(q(i))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    need_positive(n)?;
    let mut order: usize = 1;
    for k in 2..=n {
        order = order.saturating_mul(k);
        check_order(order)?;
    }
    let perms = permutations(n);
    let index: HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    FiniteGroup::from_fn(perms.len(), format!("S{n}"), |a, b| {
        let (p, q) = (&perms[a], &perms[b]);
        let r: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
        index[r.as_slice()]
    })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Quaternion group: index `2*u + s` stands for `(-1)^s * q_u` with
/// `q = (1, i, j, k)`.
pub fn quaternion8() -> Result<FiniteGroup> {
    // (sign, unit) of q_u * q_v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, "Q8", |a, b| {
        let (sign, unit) = UNIT[a / 2][b / 2];
        2 * unit + (sign + a % 2 + b % 2) % 2
    })
}

pub fn klein4() -> Result<FiniteGroup> {
    FiniteGroup::from_fn(4, "klein4", |a, b| a ^ b)
}

/// A direct product with its projections and injections.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub proj_left: Homomorphism,
    pub proj_right: Homomorphism,
    pub inj_left: Homomorphism,
    pub inj_right: Homomorphism,
}

impl DirectProduct {
    /// Index of the pair `(g, h)`.
    pub fn pair(&self, g: usize, h: usize) -> usize {
        g * self.proj_right.target().order() + h
    }
}

/// `g x h` on lexicographically ordered pairs: `(a, b)` at `a*|h| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<DirectProduct> {
    let (m, n) = (g.order(), h.order());
    check_order(m.saturating_mul(n))?;
    let label = format!("{}x{}", g.label(), h.label());
    let group = FiniteGroup::from_fn(m * n, label, |a, b| {
        g.mul(a / n, b / n) * n + h.mul(a % n, b % n)
    })?;
    let proj_left = Homomorphism::new(&group, g, (0..m * n).map(|a| a / n).collect())?;
    let proj_right = Homomorphism::new(&group, h, (0..m * n).map(|a| a % n).collect())?;
    let inj_left = Homomorphism::new(g, &group, (0..m).map(|a| a * n).collect())?;
    let inj_right = Homomorphism::new(h, &group, (0..n).collect())?;
    Ok(DirectProduct { group, proj_left, proj_right, inj_left, inj_right })
}

/// `Aut(g)` realized as a group; element `i` evaluates to `automorphisms[i]`
/// and the product is composition: `eval(i*j) = eval(i) . eval(j)`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    pub automorphisms: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn eval(&self, i: usize) -> &[usize] {
        &self.automorphisms[i]
    }
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    let automorphisms: Vec<Vec<usize>> = crate::search::automorphisms(g)?;
    check_order(automorphisms.len())?;
    let index: HashMap<&[usize], usize> = automorphisms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let group = FiniteGroup::from_fn(automorphisms.len(), format!("Aut({})", g.label()), |i, j| {
        let (p, q) = (&automorphisms[i], &automorphisms[j]);
        let r: Vec<usize> = q.iter().map(|&x| p[x]).collect();
        index[r.as_slice()]
    })?;
    Ok(AutomorphismGroup { group, automorphisms })
}
