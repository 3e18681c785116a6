use convkit_fan::battery::{random_grid, random_transversal};
use convkit_fan::syntax::render;
use convkit_fan::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const COLS: u64 = 30;
const ROWS: u64 = 90;

fn grid(seed: u64) -> GridSet {
    random_grid(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn agrees(g: &GridSet, f: impl Fn(u64, u64) -> bool) -> bool {
    (0..COLS).all(|n| (0..ROWS).all(|j| g.contains(n, j) == f(n, j)))
}

fn fan_all() -> SymFilter {
    SymFilter::Fan(Support::AllColumns)
}

fn fan_cofin() -> SymFilter {
    SymFilter::Fan(Support::CofinitelyManyColumns)
}

proptest! {
    #[test]
    fn boolean_ops_agree_pointwise(s in any::<u64>(), t in any::<u64>()) {
        let (a, b) = (grid(s), grid(t));
        prop_assert!(agrees(&a.union(&b), |n, j| a.contains(n, j) || b.contains(n, j)));
        prop_assert!(agrees(&a.intersection(&b), |n, j| a.contains(n, j) && b.contains(n, j)));
        prop_assert!(agrees(&a.difference(&b), |n, j| a.contains(n, j) && !b.contains(n, j)));
        prop_assert!(agrees(&a.complement(), |n, j| !a.contains(n, j)));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.union(&b), b.union(&a));
    }

    #[test]
    fn column_predicates_agree_with_columns(s in any::<u64>()) {
        let a = grid(s);
        let inf = a.infinite_columns();
        let full = a.full_columns();
        let nonempty = a.nonempty_columns();
        for n in 0..COLS {
            let c = a.col(n);
            prop_assert_eq!(inf.contains(n), c.is_infinite());
            prop_assert_eq!(full.contains(n), c.is_full());
            prop_assert_eq!(nonempty.contains(n), !c.is_empty());
        }
    }

    #[test]
    fn fan_memberships_are_ordered(s in any::<u64>()) {
        let a = grid(s);
        let all = sym_member(&a, &fan_all()).unwrap();
        let cofin = sym_member(&a, &fan_cofin()).unwrap();
        let blocks = sym_member(&a, &SymFilter::ColumnBlocks).unwrap();
        prop_assert!(!all || cofin);
        prop_assert!(!blocks || cofin);
        prop_assert_eq!(cofin, contour_member(&a).unwrap());
    }

    #[test]
    fn witness_lives_inside_and_converges(s in any::<u64>()) {
        let a = grid(s);
        let meshes = sym_mesh(&SymFilter::Principal(a.clone()), &fan_all()).unwrap();
        match frechet_witness(&a) {
            Ok(w) => {
                prop_assert!(meshes);
                prop_assert!(check_frechet_witness(&a, &w).unwrap());
                prop_assert!(w.point_set().unwrap().is_subset_of(&a));
            }
            Err(FanError::NotMeshing(_)) => prop_assert!(!meshes),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn refuter_certificate_is_disjoint(s in any::<u64>()) {
        let sigma = random_transversal(&mut ChaCha8Rng::seed_from_u64(s));
        let cert = strong_frechet_refuter(&SymFilter::ColumnBlocks, &sigma).unwrap();
        prop_assert!(cert.verified());
        prop_assert!((0..COLS).all(|n| (0..ROWS).all(|j| !(cert.u.contains(n, j) && cert.range.contains(n, j)))));
        prop_assert!((0..COLS).all(|n| cert.u.col(n).is_cofinite()));
        prop_assert!(!sym_finer(&fan_all(), &sigma.filter()).unwrap());
        prop_assert_eq!(parse_filter(&render(&sigma.filter())).unwrap(), sigma.filter());
    }

    #[test]
    fn diagonal_escapes_affine_chains(p in 0i64..4, q in 0i64..4, r in 0i64..8) {
        let chain = Chain::AffineTails { p, q, r };
        let u = diagonal_escape(&chain).unwrap();
        prop_assert!(check_escape(&chain, &u, 25).unwrap());
        for k in 0..25 {
            prop_assert!(sym_member(&chain.member(k), &fan_all()).unwrap());
        }
    }

    #[test]
    fn diagonal_escapes_grid_tail_chains(a in 0i64..3, b in 0i64..5, c in 0i64..3, d in 0i64..5) {
        let chain = Chain::GridTails { a: Aff::new(a, b), b: Aff::new(c, d) };
        let u = diagonal_escape(&chain).unwrap();
        prop_assert!(check_escape(&chain, &u, 25).unwrap());
    }

    #[test]
    fn mesh_is_symmetric(s in any::<u64>(), t in any::<u64>()) {
        let (a, b) = (SymFilter::Principal(grid(s)), SymFilter::Principal(grid(t)));
        for f in [&a, &fan_all(), &fan_cofin(), &SymFilter::ColumnBlocks] {
            prop_assert_eq!(sym_mesh(f, &b).unwrap(), sym_mesh(&b, f).unwrap());
        }
    }
}

#[test]
fn battery_of_a_thousand() {
    let r = convkit_fan::battery::run_battery(2024, 1000).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}
