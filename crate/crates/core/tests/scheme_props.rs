//! Topology laws on computed posets and the projective point counts.

use f1_core::blueprint::{sl2, Blueprint};
use f1_core::monoid::Monomial;
use f1_core::scheme::{scheme_points, spec, standard_scheme, SchemeKind, SpecPoset};

/// Principal opens on a computed poset, through ideal membership.
fn principal_open(b: &Blueprint, poset: &SpecPoset, h: &Monomial) -> Vec<usize> {
    let n = b.ngens();
    (0..poset.points.len())
        .filter(|&i| {
            let gens: Vec<Monomial> = poset.points[i]
                .prime
                .generators
                .iter()
                .map(|&k| Monomial::gen(n, k))
                .collect();
            !b.engine().ideal(&gens).contains(h)
        })
        .collect()
}

#[test]
fn principal_opens_obey_the_product_law() {
    let b = sl2();
    let poset = spec(&b, "SL2").unwrap();
    let n = b.ngens();
    let one = Monomial::one(n);
    assert_eq!(principal_open(&b, &poset, &one).len(), poset.points.len());
    assert!(principal_open(&b, &poset, &Monomial::Zero).is_empty());
    for g in 0..n {
        for h in 0..n {
            let ug = principal_open(&b, &poset, &Monomial::gen(n, g));
            let uh = principal_open(&b, &poset, &Monomial::gen(n, h));
            let ugh = principal_open(&b, &poset, &Monomial::gen(n, g).mul(&Monomial::gen(n, h)));
            let inter: Vec<usize> =
                ug.iter().copied().filter(|i| uh.contains(i)).collect();
            assert_eq!(ugh, inter, "U_gh = U_g ∩ U_h fails at ({}, {})", g, h);
        }
    }
}

#[test]
fn opens_are_downward_closed_in_the_specialization_order() {
    let b = sl2();
    let poset = spec(&b, "SL2").unwrap();
    let n = b.ngens();
    for g in 0..n {
        let open = principal_open(&b, &poset, &Monomial::gen(n, g));
        for &i in &open {
            for j in 0..poset.points.len() {
                if poset.leq(j, i) {
                    assert!(open.contains(&j));
                }
            }
        }
    }
}

/// Stalk sanity: localizing at a point's complement leaves exactly the
/// primes at or below that point.
#[test]
fn localizations_match_the_downset() {
    use f1_core::monoid::{enumerate_primes, MonoidPresentation, PrimeBudget};
    let b = Blueprint::from_monoid(MonoidPresentation::free(vec!["T1", "T2"]));
    let poset = spec(&b, "A2").unwrap();
    for i in 0..poset.points.len() {
        let below = (0..poset.points.len()).filter(|&j| poset.leq(j, i)).count();
        let stalk_primes =
            enumerate_primes(&poset.points[i].localization, &PrimeBudget::default()).unwrap();
        assert_eq!(stalk_primes.len(), below, "at {}", poset.points[i].id);
    }
}

#[test]
fn projective_point_counts_up_to_four() {
    for n in 1..=4usize {
        let x = standard_scheme(SchemeKind::Projective(n));
        let p = scheme_points(&x).unwrap();
        assert_eq!(p.points.len(), (1usize << (n + 1)) - 1, "n = {}", n);
    }
}

#[test]
fn projective_plane_hasse_matches_the_support_order() {
    let x = standard_scheme(SchemeKind::Projective(2));
    let p = scheme_points(&x).unwrap();
    // Supports shrink along specialization: each cover drops exactly one
    // coordinate.
    for &(a, b) in &p.hasse {
        let sa = support(&p.points[a].id);
        let sb = support(&p.points[b].id);
        assert_eq!(sa.len(), sb.len() + 1);
        assert!(sb.iter().all(|x| sa.contains(x)));
    }
}

fn support(id: &str) -> Vec<usize> {
    id.trim_matches(['[', ']'])
        .split(':')
        .enumerate()
        .filter(|(_, v)| *v == "1")
        .map(|(i, _)| i)
        .collect()
}
