use std::sync::Arc;

use convkit_core::cascade::{contour_along, shape_nodes, Cascade, Multifilter};
use convkit_core::classes::all_spaces;
use convkit_core::family::{rel_image, rel_preimage};
use convkit_core::{FamilyOfSets, Filter, FiniteSpace, GroundSet, ProductIndex, Relation, Subset};
use proptest::prelude::*;

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    (0u32..1 << n).prop_map(move |b| Subset::raw(n, b))
}

fn family(n: usize) -> impl Strategy<Value = FamilyOfSets> {
    prop::collection::vec(subset(n), 0..6).prop_map(move |g| FamilyOfSets::up_close(n, g).unwrap())
}

fn space(n: usize) -> impl Strategy<Value = FiniteSpace> {
    prop::collection::vec(0u32..1 << n, n).prop_map(move |masks| {
        let masks: Vec<u32> = masks.iter().enumerate().map(|(x, m)| m | 1 << x).collect();
        FiniteSpace::from_masks(&masks).unwrap()
    })
}

fn members(f: &FamilyOfSets) -> Vec<Subset> {
    f.members().collect()
}

fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32)).map(|mut c| (0..n).map(|_| { let d = c % m; c /= m; d }).collect()).collect()
}

fn ground(n: usize) -> Arc<GroundSet> {
    Arc::new(GroundSet::standard(n).unwrap())
}

proptest! {
    #[test]
    fn up_close_is_idempotent(f in family(4)) {
        let again = FamilyOfSets::up_close(4, members(&f)).unwrap();
        prop_assert_eq!(&again, &f);
        for a in members(&f) {
            for b in Subset::all(4).filter(|b| a.is_subset_of(*b)) {
                prop_assert!(f.contains(b));
            }
        }
    }

    #[test]
    fn mesh_is_symmetric_and_pairwise(a in family(4), b in family(4)) {
        let pairwise = members(&a).iter().all(|x| members(&b).iter().all(|y| x.meets(*y)));
        prop_assert_eq!(a.mesh(&b), pairwise);
        prop_assert_eq!(a.mesh(&b), b.mesh(&a));
    }

    #[test]
    fn grill_is_involutive(a in family(4)) {
        let g = a.grill();
        let by_hand: Vec<Subset> =
            Subset::all(4).filter(|s| members(&a).iter().all(|m| s.meets(*m))).collect();
        prop_assert_eq!(members(&g), by_hand);
        prop_assert_eq!(g.grill(), a);
    }

    #[test]
    fn image_distributes_over_meets(rows in prop::collection::vec(0u32..8, 3), f in subset(3), g in subset(3)) {
        let r = Relation::from_rows(3, rows.iter().map(|&b| Subset::raw(3, b)).collect()).unwrap();
        let (f, g) = (Filter::principal(f), Filter::principal(g));
        prop_assert_eq!(r.image(f.meet(g)), r.image(f).meet(r.image(g)));
    }

    #[test]
    fn closure_and_adherence_laws(sp in space(4), a in subset(4), b in subset(4)) {
        let cl = sp.closure(a);
        prop_assert!(a.is_subset_of(cl));
        prop_assert_eq!(sp.closure(cl), cl);
        prop_assert!(sp.is_closed(cl));
        prop_assert!(a.is_subset_of(sp.adh_set(a)));
        if a.is_subset_of(b) {
            prop_assert!(sp.closure(a).is_subset_of(sp.closure(b)));
            prop_assert!(sp.adh_set(a).is_subset_of(sp.adh_set(b)));
        }
    }

    #[test]
    fn topologize_is_a_reflector(sp in space(4)) {
        let t = sp.topologize();
        prop_assert!(t.is_topology());
        prop_assert!(sp.is_finer_than(&t));
        prop_assert_eq!(&t.topologize(), &t);
        if sp.is_topology() {
            prop_assert_eq!(&t, &sp);
        }
    }

    #[test]
    fn contour_along_is_monotone(f in subset(3), f2 in subset(3), g in prop::collection::vec(subset(3), 3), x in 0usize..3, h in subset(3)) {
        let gs: Vec<Filter> = g.iter().map(|&k| Filter::principal(k)).collect();
        let base = contour_along(Filter::principal(f), &gs).unwrap();
        // a finer outer filter gives a finer contour
        let finer = contour_along(Filter::principal(f.intersection(f2)), &gs).unwrap();
        prop_assert!(finer.finer(base));
        // so does a finer filter at one point
        let mut gs2 = gs.clone();
        gs2[x] = Filter::principal(g[x].intersection(h));
        prop_assert!(contour_along(Filter::principal(f), &gs2).unwrap().finer(base));
    }

    #[test]
    fn contour_ignores_interior_labels(kernels in prop::collection::vec(0u32..4, 3), leaves in prop::collection::vec(0usize..3, 4), pick in 0usize..3) {
        // root with two children, each with two leaves
        let mut nodes = shape_nodes(&[2, 2, 0, 0, 2, 0, 0]);
        for (v, &k) in [0usize, 1, 4].iter().zip(&kernels) {
            nodes[*v].filter = Some(Subset::raw(2, k));
        }
        let labels = vec![0, 0, leaves[0], leaves[1], 0, leaves[2], leaves[3]];
        let phi = Multifilter::new(Cascade::new(nodes).unwrap(), labels, 3).unwrap();
        let moved = phi.relabel_interior(|v| v + pick);
        prop_assert_eq!(phi.contour().filter, moved.contour().filter);
    }
}

#[test]
fn grill_triple_equivalence() {
    for (nx, ny) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let index = ProductIndex::new(nx, ny).unwrap();
        for h in Subset::all(index.size()) {
            let hf = Filter::principal(h);
            for f in Filter::all(nx) {
                for g in Filter::all(ny) {
                    let product = Filter::principal(index.rectangle(f.kernel(), g.kernel()));
                    let direct = hf.mesh(product);
                    let forward = rel_image(index, hf, f).unwrap().mesh(g);
                    let backward = rel_preimage(index, hf, g).unwrap().mesh(f);
                    assert!(direct == forward && forward == backward, "{h:?} {f:?} {g:?}");
                }
            }
        }
    }
}

#[test]
fn constructions_stay_centered_and_continuity_matches() {
    for n in 1..=3 {
        for m in 1..=3 {
            let (xs, ys) = (all_spaces(n).unwrap(), all_spaces(m).unwrap());
            for f in all_maps(n, m) {
                let surjective = (0..m).all(|y| f.contains(&y));
                for xi in &xs {
                    let fx = surjective.then(|| xi.final_(ground(m), &f).unwrap());
                    if let Some(fx) = &fx {
                        assert!(xi.final_adh_identity_check(&f, m).unwrap());
                        assert!(xi.is_continuous(&f, fx));
                    }
                    for tau in &ys {
                        let pre = FiniteSpace::initial(tau, ground(n), &f).unwrap();
                        let cont = xi.is_continuous(&f, tau);
                        assert_eq!(cont, xi.is_finer_than(&pre));
                        if let Some(fx) = &fx {
                            assert_eq!(cont, fx.is_finer_than(tau));
                        }
                    }
                }
            }
        }
    }
    let xs = all_spaces(2).unwrap();
    for a in &xs {
        for b in &xs {
            let p = a.product(b).unwrap();
            assert!((0..p.n()).all(|z| p.pointlim(z).contains(z)));
        }
    }
}

#[test]
fn every_finite_space_is_pretopological() {
    for n in 1..=3 {
        for sp in all_spaces(n).unwrap() {
            for x in 0..n {
                assert!(sp.lim(sp.vicinity(x)).contains(x));
                assert_eq!(sp.vicinity_of_filter(Filter::point(n, x)), sp.vicinity(x));
            }
            if sp.is_topology() {
                assert!(sp.is_p_diagonal());
            }
        }
    }
}
