//! Structural properties of the Weyl extension on the worked groups.

use f1_core::blueprint::{check_morphism, gl2, sl2, Budget, ThreeValued};
use f1_core::titsweyl::{
    matrix_comultiplication, matrix_counit, weyl_group, TorusType,
};

#[test]
fn comultiplication_and_counit_are_confirmed() {
    for (b, det) in [(sl2(), None), (gl2(), Some(4))] {
        let t = f1_core::blueprint::tensor(&b, &b);
        let delta = matrix_comultiplication(&b, 2, det);
        let eps = matrix_counit(&b, 2, det);
        assert_eq!(
            check_morphism(&b, &t, &delta, false, &Budget::default()).unwrap(),
            ThreeValued::Yes
        );
        assert_eq!(
            check_morphism(&b, &f1_core::blueprint::Blueprint::f1(), &eps, false, &Budget::default())
                .unwrap(),
            ThreeValued::Yes
        );
    }
}

#[test]
fn tables_are_groups_with_permutation_rows() {
    for (b, det, expected_order) in [(sl2(), None, 2usize), (gl2(), Some(4), 2)] {
        let delta = matrix_comultiplication(&b, 2, det);
        let eps = matrix_counit(&b, 2, det);
        let w = weyl_group(&b, &delta, &eps, &Budget::default()).unwrap();
        assert_eq!(w.table.len(), expected_order);
        let n = w.table.len();
        for i in 0..n {
            let mut row: Vec<usize> = w.table[i].clone();
            row.sort_unstable();
            assert_eq!(row, (0..n).collect::<Vec<_>>(), "row {} is not a permutation", i);
            let mut col: Vec<usize> = (0..n).map(|j| w.table[j][i]).collect();
            col.sort_unstable();
            assert_eq!(col, (0..n).collect::<Vec<_>>(), "column {} is not a permutation", i);
        }
    }
}

#[test]
fn identity_component_is_the_plain_torus() {
    // The counit's kernel component must classify as the torus without the
    // sign class, in the rank of the group.
    let b = sl2();
    let delta = matrix_comultiplication(&b, 2, None);
    let eps = matrix_counit(&b, 2, None);
    let w = weyl_group(&b, &delta, &eps, &Budget::default()).unwrap();
    assert_eq!(w.components[w.identity].torus_type, TorusType::F1Torus(1));

    let b = gl2();
    let delta = matrix_comultiplication(&b, 2, Some(4));
    let eps = matrix_counit(&b, 2, Some(4));
    let w = weyl_group(&b, &delta, &eps, &Budget::default()).unwrap();
    assert_eq!(w.components[w.identity].torus_type, TorusType::F1Torus(2));
}
