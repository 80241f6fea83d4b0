mod common;

use tiltmut::algebra::{compile, parse};
use tiltmut::cluster::{good_graph, good_mutation, linear_quiver, type_a_relations};
use tiltmut::homology::{cartan, global_dimension, s_matrix, SMode};
use tiltmut::matops::{quiver_mutate, Sign};
use tiltmut::mutation::{mutate, tilting_status, Verdict};
use tiltmut::{Caps, Error};

use common::*;

#[test]
fn d5_presentations_reproduce_the_cartan_matrices() {
    assert_eq!(cartan(&algebra("d5_lambda.alg")), matrix("d5_lambda.mat"));
    assert_eq!(cartan(&algebra("d5_lambda_prime.alg")), matrix("d5_lambda_prime.mat"));
}

#[test]
fn d5_mutation_at_3_is_good() {
    let lambda = algebra("d5_lambda.alg");
    let prime = algebra("d5_lambda_prime.alg");
    let g = good_mutation(&lambda, &prime, 3).unwrap();
    assert!(g.bb_on_left && g.bb_on_right_op && g.good);
    let c = g.corroboration.unwrap();
    assert!(c.ok(), "{c:?}");
}

#[test]
fn d5_asymmetry_by_resolutions() {
    let lambda = algebra("d5_lambda.alg");
    let formula = s_matrix(&lambda, SMode::Formula, 16).unwrap();
    match s_matrix(&lambda, SMode::Resolved, 16) {
        Ok(resolved) => assert_eq!(resolved, formula),
        Err(e) => assert!(e.is_cap(), "{e}"),
    }
}

#[test]
fn star_mutations_round_trip() {
    let caps = Caps::default();
    let a = algebra("star.alg");
    for sign in [Sign::Minus, Sign::Plus] {
        let (_, report) = mutate(&a, 4, sign, &caps).unwrap();
        assert_eq!(report.round_trip_ok, Some(true));
        assert_ne!(report.euler_transport_ok, Some(false));
        assert!(report.extended_quiver_after.is_some());
    }
}

#[test]
fn hexagon_mutated_is_hereditary() {
    let b = algebra("hexagon_mutated.alg");
    assert_eq!(global_dimension(&b, 8).finite(), Some(1));
    let a = algebra("hexagon.alg");
    assert_eq!(global_dimension(&a, 8).finite(), Some(2));
}

#[test]
fn type_a_relations_from_oriented_triangles() {
    let caps = Caps::default();
    assert!(type_a_relations(&linear_quiver(3), &caps).unwrap().relations.is_empty());
    let cycle = quiver(3, &[(1, 2), (2, 3), (3, 1)]);
    assert_eq!(type_a_relations(&cycle, &caps).unwrap().relations.len(), 3);
    let q = parse(&fixture("a4_triangle.quiver")).unwrap().quiver;
    let p = type_a_relations(&q, &caps).unwrap();
    assert_eq!(p.relations.len(), 3);
    let b = compile(&p, &caps).unwrap();
    assert_eq!(b.n(), 4);
}

#[test]
fn non_type_a_quivers_are_rejected() {
    let kronecker = quiver(2, &[(1, 2), (1, 2)]);
    assert!(matches!(
        type_a_relations(&kronecker, &Caps::default()),
        Err(Error::NotTypeA(_))
    ));
    assert!(good_graph(&kronecker, &Caps::default()).is_err());
}

#[test]
fn a2_graph_has_a_single_node() {
    let g = good_graph(&linear_quiver(2), &Caps::default()).unwrap();
    assert_eq!(g.nodes.len(), 1);
    assert_eq!(g.edges.len(), 2);
    assert!(g.edges.iter().all(|e| e.from == 0 && e.to == 0));
}

#[test]
fn a4_graph_edges_come_in_pairs() {
    let caps = Caps::default();
    assert_eq!(good_graph(&linear_quiver(3), &caps).unwrap().nodes.len(), 4);
    let g = good_graph(&linear_quiver(4), &caps).unwrap();
    assert_eq!(g.nodes.len(), 6);
    for e in &g.edges {
        let q = &g.nodes[e.from].quiver;
        let back = quiver_mutate(&quiver_mutate(q, e.vertex).unwrap(), e.vertex).unwrap();
        assert!(back.same_arrows(q));
        assert!(g.edges.iter().any(|f| f.from == e.to && f.to == e.from));
    }
    assert!(g.to_dot().starts_with("digraph"));
}

#[test]
fn semisimple_good_mutation_is_not_defined() {
    let p = parse("vertices 2\n").unwrap();
    let b = compile(&p, &Caps::default()).unwrap();
    assert!(matches!(good_mutation(&b, &b, 1), Err(Error::NotDefined { .. })));
    assert_eq!(
        tilting_status(&b, 1, Sign::Minus).unwrap().verdict,
        Verdict::TiltingComplex
    );
}
