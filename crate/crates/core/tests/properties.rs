use proptest::prelude::*;
use proptest::sample::select;

use xmod::action::{all_actions, semidirect_product};
use xmod::commutator::{cooperator, difference_commutator, relative_commutator};
use xmod::group::{automorphism_group, center, normal_closure, quotient, subgroup_closure, FiniteGroup};
use xmod::hom::{all_homomorphisms, compose, find_isomorphism, Homomorphism};
use xmod::io::{catalog, parse, serialize, Workspace};

const NAMES: [&str; 12] = ["Z1", "Z2", "Z3", "Z4", "Z6", "klein4", "S3", "D4", "Q8", "Z2xZ4", "D5", "Z8"];

fn group(name: &str) -> FiniteGroup {
    catalog().groups[name].clone()
}

fn any_group() -> impl Strategy<Value = FiniteGroup> {
    select(NAMES.to_vec()).prop_map(group)
}

/// A copy of `g` with elements renumbered by `perm` (identity kept at 0).
fn relabel(g: &FiniteGroup, seed: u64) -> FiniteGroup {
    let n = g.order();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut s = seed;
    for i in (1..rest.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        rest.swap(i, (s >> 33) as usize % (i + 1));
    }
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    let mut back = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        back[p] = i;
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| perm[g.mul(back[a], back[b])]).collect()).collect();
    FiniteGroup::validate(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_idempotent_and_monotone(g in any_group(), seed in prop::collection::vec(0usize..64, 0..4), extra in 0usize..64) {
        let seed: Vec<usize> = seed.into_iter().map(|a| a % g.order()).collect();
        let h = subgroup_closure(&g, &seed);
        prop_assert_eq!(subgroup_closure(&g, h.elements()), h.clone());
        let mut bigger = seed.clone();
        bigger.push(extra % g.order());
        prop_assert!(h.is_subset_of(&subgroup_closure(&g, &bigger)));
    }

    #[test]
    fn quotient_kills_exactly_the_normal_closure(g in any_group(), seed in prop::collection::vec(0usize..64, 0..3)) {
        let seed: Vec<usize> = seed.into_iter().map(|a| a % g.order()).collect();
        let n = normal_closure(&g, &seed);
        let q = quotient(&g, &n).unwrap();
        prop_assert!(seed.iter().all(|&s| q.projection.apply(s) == 0));
        prop_assert_eq!(q.projection.kernel(), n);
        prop_assert_eq!(g.order() % center(&g).order(), 0);
    }

    #[test]
    fn automorphisms_preserve_the_table(g in any_group()) {
        let aut = automorphism_group(&g).unwrap();
        prop_assert!(aut.eval(0).iter().enumerate().all(|(i, &v)| i == v));
        for i in 0..aut.group.order() {
            let m = aut.eval(i);
            prop_assert!(Homomorphism::new(&g, &g, m.to_vec()).unwrap().is_bijective());
        }
    }

    #[test]
    fn hom_counts_are_isomorphism_invariant(g in any_group(), h in any_group(), s in any::<u64>()) {
        let g2 = relabel(&g, s);
        prop_assert_eq!(all_homomorphisms(&g, &h).unwrap().len(), all_homomorphisms(&g2, &h).unwrap().len());
        prop_assert_eq!(all_homomorphisms(&h, &g).unwrap().len(), all_homomorphisms(&h, &g2).unwrap().len());
        prop_assert!(find_isomorphism(&g, &g2).unwrap().is_some());
        prop_assert_eq!(find_isomorphism(&g, &h).unwrap().is_some(), find_isomorphism(&h, &g).unwrap().is_some());
    }

    #[test]
    fn composite_kernel_and_image(a in any_group(), b in any_group(), c in any_group(), i in any::<usize>(), j in any::<usize>()) {
        let gs = all_homomorphisms(&a, &b).unwrap();
        let hs = all_homomorphisms(&b, &c).unwrap();
        let g = &gs[i % gs.len()];
        let h = &hs[j % hs.len()];
        let hg = compose(h, g).unwrap();
        prop_assert!(hg.image().is_subset_of(&h.image()));
        prop_assert!(g.kernel().is_subset_of(&hg.kernel()));
    }

    #[test]
    fn difference_commutator_detects_equality(x in any_group(), y in any_group(), i in any::<usize>(), j in any::<usize>()) {
        let hs = all_homomorphisms(&x, &y).unwrap();
        let (f, g) = (&hs[i % hs.len()], &hs[j % hs.len()]);
        prop_assert_eq!(difference_commutator(f, g).unwrap().is_trivial(), f == g);
    }

    #[test]
    fn postcomposition_preserves_cooperators(
        x in select(vec!["Z2", "Z3", "Z4", "klein4", "S3"]),
        b in select(vec!["Z2", "Z3", "klein4"]),
        y in select(vec!["Z2", "Z4", "S3", "D4"]),
        z in select(vec!["Z1", "Z2", "S3", "Q8"]),
        picks in any::<(usize, usize, usize, usize)>(),
    ) {
        let (x, b, y, z) = (group(x), group(b), group(y), group(z));
        let acts = all_actions(&b, &x).unwrap();
        let c = semidirect_product(&acts[picks.0 % acts.len()]).unwrap().cospan();
        let fs = all_homomorphisms(&x, &y).unwrap();
        let gs = all_homomorphisms(&b, &y).unwrap();
        let hs = all_homomorphisms(&y, &z).unwrap();
        let (f, g, h) = (&fs[picks.1 % fs.len()], &gs[picks.2 % gs.len()], &hs[picks.3 % hs.len()]);
        let hf = compose(h, f).unwrap();
        let hg = compose(h, g).unwrap();
        let base = relative_commutator(&c, f, g).unwrap().value;
        prop_assert_eq!(relative_commutator(&c, &hf, &hg).unwrap().value, h.image_of(&base));
        if let Some(phi) = cooperator(&c, f, g).unwrap() {
            prop_assert_eq!(cooperator(&c, &hf, &hg).unwrap(), Some(compose(h, &phi).unwrap()));
        } else if h.is_injective() {
            prop_assert!(cooperator(&c, &hf, &hg).unwrap().is_none());
        }
    }

    #[test]
    fn workspace_round_trips(names in prop::collection::btree_set(select(NAMES.to_vec()), 1..4), picks in prop::collection::vec(any::<(usize, usize, usize)>(), 0..4)) {
        let names: Vec<&str> = names.into_iter().collect();
        let mut w = Workspace::new();
        for n in &names {
            w.add_group(n, &group(n));
        }
        for (k, (i, j, m)) in picks.into_iter().enumerate() {
            let (a, b) = (names[i % names.len()], names[j % names.len()]);
            let hs = all_homomorphisms(&group(a), &group(b)).unwrap();
            w.add_hom(&format!("h{k}"), a, b, hs[m % hs.len()].clone());
            let acts = all_actions(&group(a), &group(b)).unwrap();
            w.add_action(&format!("a{k}"), a, b, acts[m % acts.len()].clone());
        }
        let text = serialize(&w);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(serialize(&back), text);
    }
}
