//! Cross-checks between the Gröbner word-problem route and the independent
//! breadth-first closure oracle, plus the prime-enumeration properties.

use f1_core::monoid::{
    enumerate_primes, ideal_member, localize, word_equal, MonoidIdeal, MonoidPresentation,
    Monomial, PrimeBudget, PrimeIdeal,
};
use f1_core::wordcheck::{bfs_word_equal, Decision};

/// The presentation corpus: free monoids, split tori, truncations and the
/// pair model of the multiplicative group.
fn corpus() -> Vec<MonoidPresentation> {
    vec![
        MonoidPresentation::point(),
        MonoidPresentation::free(vec!["T"]),
        MonoidPresentation::free(vec!["T1", "T2"]),
        MonoidPresentation::free(vec!["T"]).with_inverted(0),
        MonoidPresentation::free(vec!["T0", "T1"])
            .with_relation(Monomial::word(vec![1, 1]), Monomial::one(2)),
        MonoidPresentation::free(vec!["T"])
            .with_relation(Monomial::word(vec![2]), Monomial::word(vec![3])),
        MonoidPresentation::free(vec!["x", "y"])
            .with_relation(Monomial::word(vec![1, 1]), Monomial::Zero),
        MonoidPresentation::free(vec!["z"])
            .with_relation(Monomial::word(vec![3]), Monomial::one(1)),
    ]
}

fn sample_words(pres: &MonoidPresentation) -> Vec<Monomial> {
    let n = pres.ngens();
    let mut out = vec![Monomial::Zero, Monomial::one(n)];
    for i in 0..n {
        out.push(Monomial::gen(n, i));
        let mut sq = vec![0i64; n];
        sq[i] = 2;
        out.push(Monomial::word(sq.clone()));
        if pres.inverted.contains(&i) {
            let mut inv = vec![0i64; n];
            inv[i] = -1;
            out.push(Monomial::word(inv));
        }
        for j in (i + 1)..n {
            let mut w = vec![0i64; n];
            w[i] = 1;
            w[j] = 1;
            out.push(Monomial::word(w.clone()));
            w[i] = 2;
            out.push(Monomial::word(w));
        }
    }
    out
}

#[test]
fn groebner_agrees_with_the_bfs_oracle() {
    for pres in corpus() {
        let words = sample_words(&pres);
        for u in &words {
            for v in &words {
                let fast = word_equal(&pres, u, v);
                match bfs_word_equal(&pres, u, v, 12, 20_000) {
                    Decision::Equal => assert!(fast, "{:?}: {:?} vs {:?}", pres, u, v),
                    Decision::Unequal => assert!(!fast, "{:?}: {:?} vs {:?}", pres, u, v),
                    Decision::Undecided => {}
                }
            }
        }
    }
}

#[test]
fn word_equality_is_an_equivalence() {
    for pres in corpus() {
        let words = sample_words(&pres);
        for u in &words {
            assert!(word_equal(&pres, u, u));
            for v in &words {
                assert_eq!(word_equal(&pres, u, v), word_equal(&pres, v, u));
                for w in &words {
                    if word_equal(&pres, u, v) && word_equal(&pres, v, w) {
                        assert!(word_equal(&pres, u, w));
                    }
                }
            }
        }
    }
}

/// Brute-force prime test for the free monoid: a subset S of generators is
/// prime iff the ideal of words touching S misses 1 and the complement is
/// closed under products, which always holds there.
#[test]
fn free_monoid_has_all_subset_primes() {
    for n in 0..=4usize {
        let gens: Vec<String> = (1..=n).map(|i| format!("T{}", i)).collect();
        let pres = MonoidPresentation::free(gens);
        let primes = enumerate_primes(&pres, &PrimeBudget::default()).unwrap();
        assert_eq!(primes.len(), 1 << n);
        // Direct closure check: every subset occurs.
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            assert!(primes.contains(&PrimeIdeal::new(subset)));
        }
    }
}

#[test]
fn primes_survive_localization_exactly_when_missing_s() {
    let pres = MonoidPresentation::free(vec!["T1", "T2", "T3"]);
    let s = vec![Monomial::gen(3, 0)];
    let loc = localize(&pres, &s).unwrap();
    let before = enumerate_primes(&pres, &PrimeBudget::default()).unwrap();
    let after = enumerate_primes(&loc, &PrimeBudget::default()).unwrap();
    let expected: Vec<&PrimeIdeal> = before
        .iter()
        .filter(|p| !p.generators.contains(&0))
        .collect();
    assert_eq!(after.len(), expected.len());
    for p in expected {
        // The surviving primes keep their generator subsets under the
        // identity embedding.
        assert!(after.iter().any(|q| q.generators == p.generators));
    }
}

#[test]
fn enumerated_primes_pass_the_definition() {
    for pres in corpus() {
        let n = pres.ngens();
        let primes = enumerate_primes(&pres, &PrimeBudget::default()).unwrap();
        for p in &primes {
            let ideal = MonoidIdeal {
                generators: p.generators.iter().map(|&i| Monomial::gen(n, i)).collect(),
            };
            assert!(!ideal_member(&pres, &Monomial::one(n), &ideal));
            let outside: Vec<usize> = (0..n).filter(|i| !p.generators.contains(i)).collect();
            for &g in &outside {
                for &h in &outside {
                    let prod = Monomial::gen(n, g).mul(&Monomial::gen(n, h));
                    assert!(!ideal_member(&pres, &prod, &ideal));
                }
            }
        }
    }
}
