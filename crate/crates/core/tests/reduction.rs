use proptest::prelude::*;

use updp::format::{parse_instance, serialize_instance};
use updp::graph::validate;
use updp::reduction::{
    assignment_from_solution, parse_dimacs, parse_labels, recover, reduce, witness_from_assignment, write_labels, Cnf,
};
use updp::solver::verify_solution;

fn cnf_strategy() -> impl Strategy<Value = Cnf> {
    (1usize..=3).prop_flat_map(|n| {
        let lit = (1..=n, any::<bool>());
        prop::collection::vec(prop::collection::vec(lit, 1..=3), 1..=3).prop_map(move |clauses| Cnf { n, clauses })
    })
}

#[test]
fn two_variable_example_from_text() {
    let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
    let out = reduce(&f).unwrap();
    let ps = witness_from_assignment(&out, &[true, false]).unwrap();
    assert!(verify_solution(&out.instance, &ps).is_ok());
    assert_eq!(assignment_from_solution(&out, &ps).unwrap(), vec![true, false]);
}

#[test]
fn files_round_trip_through_text() {
    let f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-3 0\n").unwrap();
    let out = reduce(&f).unwrap();
    let inst = parse_instance(&serialize_instance(&out.instance)).unwrap();
    let back = recover(inst, &parse_labels(&write_labels(&out)).unwrap()).unwrap();
    assert_eq!(back.cnf, f);
    let ps = witness_from_assignment(&back, &[false, false, false]).unwrap();
    assert!(verify_solution(&back.instance, &ps).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witnesses_round_trip(f in cnf_strategy()) {
        let out = reduce(&f).unwrap();
        prop_assert!(validate(&out.instance).is_ok());
        for m in 0u32..1 << f.n {
            let beta: Vec<bool> = (0..f.n).map(|i| m >> i & 1 == 1).collect();
            match witness_from_assignment(&out, &beta) {
                Some(ps) => {
                    prop_assert!(f.satisfied_by(&beta));
                    prop_assert!(verify_solution(&out.instance, &ps).is_ok());
                    prop_assert_eq!(assignment_from_solution(&out, &ps).unwrap(), beta);
                }
                None => prop_assert!(!f.satisfied_by(&beta)),
            }
        }
    }
}
