//! Hand-traced protocol runs on three small trees, frozen exactly.

mod common;

use cakenet::rational::ratio;
use cakenet::verify::{check_slice_ledger, slice_counts, SliceCount};
use cakenet::{
    alg_descendant, allocation_tree, check_envy_free, check_partition, check_proportional,
    cut_count, descendant_closure, CutConvention, Density, Piece, RootedTree,
};
use common::piece;

fn uniform(n: usize) -> Vec<Density> {
    vec![Density::uniform(); n]
}

#[test]
fn single_vertex_gets_everything() {
    let t = RootedTree::from_parents(&[None]).unwrap();
    let d = vec![common::step(&[(0, 1), (1, 3), (1, 1)], &[(5, 1), (1, 2)])];
    for a in [
        allocation_tree(&t, &d).unwrap(),
        alg_descendant(&t, &d).unwrap(),
    ] {
        assert_eq!(a.pieces, vec![Piece::whole()]);
        assert_eq!(cut_count(&a, CutConvention::True), 0);
    }
    assert_eq!(
        cut_count(&allocation_tree(&t, &d).unwrap(), CutConvention::Paper),
        0
    );
    assert_eq!(
        cut_count(&alg_descendant(&t, &d).unwrap(), CutConvention::Paper),
        0
    );
}

#[test]
fn two_node_tree_halves() {
    let t = RootedTree::from_parents(&[None, Some(0)]).unwrap();
    let a = allocation_tree(&t, &uniform(2)).unwrap();
    assert_eq!(
        a.pieces,
        vec![piece(&[(1, 2, 1, 1)]), piece(&[(0, 1, 1, 2)])]
    );
    assert_eq!(cut_count(&a, CutConvention::Paper), 3);
    assert_eq!(cut_count(&a, CutConvention::True), 1);
    assert!(check_envy_free(&a, &t.as_graph(), &uniform(2)).satisfied);
}

#[test]
fn star_with_two_leaves_by_thirds() {
    let t = RootedTree::from_parents(&[None, Some(0), Some(0)]).unwrap();
    let a = allocation_tree(&t, &uniform(3)).unwrap();
    assert_eq!(
        a.pieces,
        vec![
            piece(&[(2, 3, 1, 1)]),
            piece(&[(0, 1, 1, 3)]),
            piece(&[(1, 3, 2, 3)])
        ]
    );
    assert_eq!(cut_count(&a, CutConvention::Paper), 2 + 2 + 2);

    let a = alg_descendant(&t, &uniform(3)).unwrap();
    assert_eq!(
        a.pieces,
        vec![
            piece(&[(2, 3, 1, 1)]),
            piece(&[(0, 1, 1, 3)]),
            piece(&[(1, 3, 2, 3)])
        ]
    );
    let counts = slice_counts(&a).unwrap();
    assert_eq!(
        counts,
        vec![
            SliceCount {
                received: 0,
                kept: 1
            },
            SliceCount {
                received: 1,
                kept: 1
            },
            SliceCount {
                received: 1,
                kept: 1
            },
        ]
    );
    assert!(check_slice_ledger(&a, &t));
}

#[test]
fn three_path_descendant_trace() {
    let t = RootedTree::from_parents(&[None, Some(0), Some(1)]).unwrap();
    let f: Vec<u32> = t
        .f_values()
        .unwrap()
        .iter()
        .map(|x| x.try_into().unwrap())
        .collect();
    assert_eq!(f, vec![6, 3, 2]);

    let d = uniform(3);
    let a = alg_descendant(&t, &d).unwrap();
    // r: sixths; a takes three, b one, r keeps [2/3, 1).
    // a: thirds of [0, 1/2); b takes [0, 1/6).
    // b: halves (by value) of [0, 1/6) ∪ [1/2, 2/3), keeps both.
    assert_eq!(
        a.pieces,
        vec![
            piece(&[(2, 3, 1, 1)]),
            piece(&[(1, 6, 1, 2)]),
            piece(&[(0, 1, 1, 6), (1, 2, 2, 3)]),
        ]
    );
    let ledger = a.ledger.as_ref().unwrap();
    let from_root: Vec<_> = ledger
        .received(2)
        .filter(|r| r.from == 0)
        .map(|r| r.piece.clone())
        .collect();
    assert_eq!(from_root, vec![piece(&[(1, 2, 2, 3)])]);
    assert_eq!(ledger.received(1).count(), 3);
    assert_eq!(ledger.received(2).count(), 2);
    assert!(check_slice_ledger(&a, &t));

    assert_eq!(cut_count(&a, CutConvention::Paper), 5 + 2 + 1);
    assert_eq!(cut_count(&a, CutConvention::True), 5);

    let g = descendant_closure(&t);
    assert!(check_partition(&a));
    let report = check_proportional(&a, &g, &d);
    assert!(report.satisfied, "{report:?}");
    for (dv, pv) in d.iter().zip(&a.pieces) {
        assert_eq!(cakenet::measure(dv, pv), ratio(1, 3));
    }
}

#[test]
fn three_path_descendant_with_skewed_agents() {
    let t = RootedTree::from_parents(&[None, Some(0), Some(1)]).unwrap();
    let d = vec![
        common::step(&[(0, 1), (1, 2), (1, 1)], &[(2, 1), (0, 1)]),
        common::step(&[(0, 1), (1, 2), (1, 1)], &[(0, 1), (2, 1)]),
        common::step(&[(0, 1), (1, 4), (3, 4), (1, 1)], &[(0, 1), (2, 1), (0, 1)]),
    ];
    let a = alg_descendant(&t, &d).unwrap();
    let g = descendant_closure(&t);
    assert!(check_partition(&a));
    assert!(check_proportional(&a, &g, &d).satisfied);
    assert!(check_slice_ledger(&a, &t));
}
