mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use updp::format::{format_paths, parse_instance, parse_paths, serialize_instance};
use updp::graph::{validate, Instance};
use updp::oracle::{exact_solve, OracleStatus, SearchBudget};
use updp::rightmost::{reachable_from, rightmost_path};
use updp::solver::{route_in_order, solve, solve_with, verify_solution, SolverOptions, Status};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_instances_validate(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 8);
        prop_assert!(validate(&inst).is_ok());
    }

    #[test]
    fn serialize_round_trips(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 8);
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn solver_is_sound_and_reproducible(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 8);
        let out = solve(&inst);
        if out.status == Status::Solved {
            let ps = out.solution.unwrap();
            prop_assert!(verify_solution(&inst, &ps).is_ok());
            let again = route_in_order(&inst, out.permutation.as_ref().unwrap()).unwrap();
            prop_assert_eq!(again, ps);
        }
    }

    #[test]
    fn parallel_matches_sequential(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), 8);
        let seq = solve(&inst);
        let par = solve_with(&inst, &SolverOptions { parallel: true, ..Default::default() }).unwrap();
        prop_assert_eq!(seq.status, par.status);
        prop_assert_eq!(seq.permutation, par.permutation);
        prop_assert_eq!(seq.solution, par.solution);
    }

    #[test]
    fn oracle_ignores_pair_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 7);
        let base = exact_solve(&inst, SearchBudget::default());
        let mut pairs = inst.pairs.clone();
        pairs.shuffle(&mut r);
        let shuffled = Instance::new(inst.drawing.clone(), pairs);
        let other = exact_solve(&shuffled, SearchBudget::default());
        prop_assert_eq!(base.status, other.status);
        if let Some(ps) = other.solution {
            prop_assert!(verify_solution(&shuffled, &ps).is_ok());
        }
        prop_assert_ne!(base.status, OracleStatus::BudgetExceeded);
    }

    #[test]
    fn rightmost_exists_iff_reachable(seed in any::<u64>()) {
        let d = random_drawing(&mut rng(seed), 10);
        for s in 0..d.vertex_count() {
            let reach = reachable_from(&d, s);
            for t in 0..d.vertex_count() {
                let p = rightmost_path(&d, s, t);
                prop_assert_eq!(p.is_some(), reach.contains(&t));
                if let Some(p) = p {
                    prop_assert_eq!((p.source(), p.target()), (s, t));
                }
            }
        }
    }

    #[test]
    fn path_vertices_rise_along_the_path(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_drawing(&mut r, 10);
        let ps = random_disjoint_paths(&mut r, &d, 4);
        for p in &ps.paths {
            let poly = d.polyline(p);
            prop_assert!(poly.windows(2).all(|w| w[0].y < w[1].y));
        }
    }

    #[test]
    fn path_lists_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_drawing(&mut r, 10);
        let ps = random_disjoint_paths(&mut r, &d, 4);
        prop_assert_eq!(parse_paths(&format_paths(&d, &ps), &d).unwrap(), ps);
    }
}
