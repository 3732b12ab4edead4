//! Randomized cross-checks of the solver stack: independent solvers agree,
//! restricted cut families lose nothing, solved parameters survive the
//! brute-force oracles, and the algebraic invariants of the program hold.

use ising_embed::cuts::{all_subsets, connected_cuts, tree_edge_cuts};
use ising_embed::graph::Graph;
use ising_embed::ising::{brute_force_minimum, evaluate, IsingModel, SpinAssignment};
use ising_embed::lp::{build_lp, resolved_min_check, solve_dense, solve_simplex};
use ising_embed::oracle::{verify_equivalence, verify_solution_gap, verify_sufficiency};
use ising_embed::preprocess::preprocess;
use ising_embed::setter::{set_parameters, SetterOptions};
use ising_embed::subproblem::{
    assign_outer_strengths, extract_instance, OuterStrategy, SubproblemInstance,
};
use ising_embed::testgen;
use proptest::prelude::*;
use rand::Rng;

fn scaled_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solvers_agree_on_random_instances(n in 2usize..7, seed in any::<u64>()) {
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let lp = build_lp(&inst, &all_subsets(&inst.graph).unwrap()).unwrap();
        let active = solve_simplex(&lp).unwrap();
        let dense = solve_dense(&lp).unwrap();
        prop_assert!(
            scaled_eq(active.theta, dense.theta, 1e-7),
            "active {} vs dense {}",
            active.theta,
            dense.theta
        );
    }

    #[test]
    fn connected_family_loses_nothing(n in 2usize..7, extra in 0usize..3, seed in any::<u64>()) {
        // Instances over connected non-tree graphs: the connected family must
        // reach the optimum of all subsets.
        let mut rng = testgen::rng_from_seed(seed);
        let graph = testgen::random_connected_graph(n, extra, &mut rng);
        let sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..5.0)).collect();
        let total: f64 = sigma.iter().sum();
        let inst = SubproblemInstance {
            graph,
            sigma,
            lambda: rng.gen_range(0.0..0.9 * total),
            gamma: rng.gen_range(0.05..2.0),
        };
        let t_all = solve_simplex(&build_lp(&inst, &all_subsets(&inst.graph).unwrap()).unwrap())
            .unwrap()
            .theta;
        let t_conn =
            solve_simplex(&build_lp(&inst, &connected_cuts(&inst.graph).unwrap()).unwrap())
                .unwrap()
                .theta;
        prop_assert!(scaled_eq(t_conn, t_all, 1e-6), "connected {t_conn} vs all {t_all}");
    }

    #[test]
    fn tree_family_is_exact_on_trees(n in 2usize..7, seed in any::<u64>()) {
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let t_all = solve_simplex(&build_lp(&inst, &all_subsets(&inst.graph).unwrap()).unwrap())
            .unwrap()
            .theta;
        let t_tree =
            solve_simplex(&build_lp(&inst, &tree_edge_cuts(&inst.graph).unwrap()).unwrap())
                .unwrap()
                .theta;
        prop_assert!(scaled_eq(t_tree, t_all, 1e-6), "tree {t_tree} vs all {t_all}");
    }

    #[test]
    fn solution_respects_unresolved_bounds(n in 2usize..7, seed in any::<u64>()) {
        // The optimum satisfies the min form of every cut bound, and some
        // bound is attained (otherwise theta could decrease).
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let family = all_subsets(&inst.graph).unwrap();
        let wd = solve_simplex(&build_lp(&inst, &family).unwrap()).unwrap();
        let mut best_bound = f64::NEG_INFINITY;
        for cut in &family.cuts {
            let bound = resolved_min_check(&inst, &cut.members, &wd.omega);
            prop_assert!(wd.theta >= bound - 1e-7 * (1.0 + bound.abs()));
            best_bound = best_bound.max(bound);
        }
        // theta sits on a cut bound or on a box constraint |omega_q|.
        let on_box = wd.omega.iter().any(|w| scaled_eq(w.abs(), wd.theta, 1e-6));
        prop_assert!(
            scaled_eq(wd.theta, best_bound, 1e-6) || on_box,
            "theta {} exceeds every bound (best {best_bound}) without a box certificate",
            wd.theta
        );
    }

    #[test]
    fn solved_parameters_pass_sufficiency(n in 2usize..6, seed in any::<u64>()) {
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let family = tree_edge_cuts(&inst.graph).unwrap();
        let wd = solve_simplex(&build_lp(&inst, &family).unwrap()).unwrap();
        let report = verify_sufficiency(&inst, wd.theta, &wd.omega, 2.0 * inst.gamma).unwrap();
        prop_assert!(
            report.pass,
            "margin {} below {}",
            report.worst_margin,
            report.required_gap
        );
    }

    #[test]
    fn homogeneity_in_all_parameters(n in 2usize..6, seed in any::<u64>(), c in 0.25f64..8.0) {
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let family = tree_edge_cuts(&inst.graph).unwrap();
        let base = solve_simplex(&build_lp(&inst, &family).unwrap()).unwrap().theta;
        let scaled = SubproblemInstance {
            graph: inst.graph.clone(),
            sigma: inst.sigma.iter().map(|s| s * c).collect(),
            lambda: inst.lambda * c,
            gamma: inst.gamma * c,
        };
        let t = solve_simplex(&build_lp(&scaled, &family).unwrap()).unwrap().theta;
        prop_assert!(scaled_eq(t, c * base, 1e-7), "{t} vs {c} * {base}");
    }

    #[test]
    fn theta_is_monotone_in_gamma(n in 2usize..6, seed in any::<u64>(), bump in 0.01f64..2.0) {
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let family = tree_edge_cuts(&inst.graph).unwrap();
        let t1 = solve_simplex(&build_lp(&inst, &family).unwrap()).unwrap().theta;
        let wider = SubproblemInstance {
            graph: inst.graph.clone(),
            sigma: inst.sigma.clone(),
            lambda: inst.lambda,
            gamma: inst.gamma + bump,
        };
        let t2 = solve_simplex(&build_lp(&wider, &family).unwrap()).unwrap().theta;
        prop_assert!(t2 >= t1 - 1e-9 * (1.0 + t1.abs()));
    }

    #[test]
    fn theta_invariant_under_relabeling(n in 2usize..6, seed in any::<u64>()) {
        // Renaming inner vertices (which permutes dense indices and with
        // them constraint order) must not move the optimum.
        let inst = testgen::random_instance(n, &mut testgen::rng_from_seed(seed));
        let name = |i: usize| format!("r{:02}", n - 1 - i);
        let relabeled_graph = Graph::new(
            (0..n).map(name),
            inst.graph
                .edges()
                .iter()
                .map(|&(u, v)| (name(u), name(v))),
        )
        .unwrap();
        let mut sigma = vec![0.0; n];
        for i in 0..n {
            sigma[relabeled_graph.index_of(&name(i)).unwrap()] = inst.sigma[i];
        }
        let relabeled = SubproblemInstance {
            graph: relabeled_graph,
            sigma,
            lambda: inst.lambda,
            gamma: inst.gamma,
        };
        let t1 = solve_simplex(&build_lp(&inst, &tree_edge_cuts(&inst.graph).unwrap()).unwrap())
            .unwrap()
            .theta;
        let t2 = solve_simplex(
            &build_lp(&relabeled, &tree_edge_cuts(&relabeled.graph).unwrap()).unwrap(),
        )
        .unwrap()
        .theta;
        prop_assert!(scaled_eq(t2, t1, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sigma_totals_match_incident_strengths(seed in any::<u64>()) {
        // Both split strategies preserve each vertex's total outer strength.
        let mut rng = testgen::rng_from_seed(seed);
        let logical = testgen::random_connected_graph(rng.gen_range(2..=5), 2, &mut rng);
        let model = testgen::random_model(&logical, &mut rng);
        let (hardware, phi) = testgen::random_embedding(&logical, 3, &mut rng);
        let structure =
            ising_embed::embedding::build_embedded_structure(&logical, &hardware, &phi).unwrap();
        for strategy in [OuterStrategy::UniformSplit, OuterStrategy::SingleEdge] {
            let assignment = assign_outer_strengths(&model, &structure, strategy).unwrap();
            for (vi, v) in logical.ids().iter().enumerate() {
                let incident: f64 = logical
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| a == vi || b == vi)
                    .map(|(e, _)| model.strengths()[e].abs())
                    .sum();
                let inst =
                    extract_instance(v, &model, &structure, &assignment, 0.5, true).unwrap();
                prop_assert!(
                    scaled_eq(inst.sigma_total(), incident, 1e-9),
                    "{v} under {strategy:?}: {} vs {incident}",
                    inst.sigma_total()
                );
            }
        }
    }

    #[test]
    fn preprocessing_preserves_the_minimum(n in 2usize..7, extra in 0usize..3, seed in any::<u64>()) {
        // Weights drawn wide enough that domination is common; the reduced
        // model plus offset must keep the ground value, and evaluating any
        // reduced assignment extended by the fixed spins must match exactly.
        let mut rng = testgen::rng_from_seed(seed);
        let graph = testgen::random_connected_graph(n, extra, &mut rng);
        let strengths: Vec<f64> = (0..graph.edge_count())
            .map(|_| {
                let m = rng.gen_range(0.25..1.0);
                if rng.gen_bool(0.5) { m } else { -m }
            })
            .collect();
        let weights: Vec<f64> = (0..n)
            .map(|v| {
                let incident: f64 = graph
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| a == v || b == v)
                    .map(|(e, _)| strengths[e].abs())
                    .sum();
                rng.gen_range(-1.6..1.6) * incident
            })
            .collect();
        let model = IsingModel::new(graph, weights, strengths).unwrap();
        let result = preprocess(&model, false).unwrap();

        let full_min = brute_force_minimum(&model).unwrap().value;
        let reduced_min = brute_force_minimum(&result.reduced).unwrap().value;
        prop_assert!(
            (full_min - (reduced_min + result.offset)).abs() < 1e-9,
            "{full_min} vs {reduced_min} + {}",
            result.offset
        );

        let k = result.reduced.graph().vertex_count();
        for mask in 0..(1u32 << k) {
            let spins: Vec<i8> = (0..k).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
            let t = SpinAssignment::from_dense(result.reduced.graph(), &spins);
            let mut extended: Vec<(String, i8)> =
                t.iter().map(|(id, s)| (id.to_string(), s)).collect();
            extended.extend(result.fixed.iter().map(|(id, &s)| (id.clone(), s)));
            let full = SpinAssignment::new(extended).unwrap();
            let lhs = evaluate(&model, &full).unwrap();
            let rhs = evaluate(&result.reduced, &t).unwrap() + result.offset;
            prop_assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn end_to_end_ground_states_survive(seed in any::<u64>()) {
        let mut rng = testgen::rng_from_seed(seed);
        let logical = testgen::random_connected_graph(rng.gen_range(2..=4), 1, &mut rng);
        let model = testgen::random_model(&logical, &mut rng);
        let (hardware, phi) = testgen::random_embedding(&logical, 2, &mut rng);
        let opts = SetterOptions {
            gamma: 0.35,
            ..SetterOptions::default()
        };
        let embedded = set_parameters(&model, &hardware, &phi, &opts).unwrap();

        let equivalence = verify_equivalence(&embedded).unwrap();
        prop_assert!(equivalence.pass(), "{equivalence:?}");
        for (v, report) in verify_solution_gap(&embedded).unwrap() {
            prop_assert!(report.pass, "vertex {v}: margin {}", report.worst_margin);
        }
    }
}
