use acyclic_spectra::auditor::{screen_multiplicity_list, BoundCheck};
use acyclic_spectra::exactpoly::{Poly, Rational};
use acyclic_spectra::graphs::{random_tree, star_graph};
use acyclic_spectra::polymatrix::invariant_factor_multiplicities;
use acyclic_spectra::spectra::{
    eigen_structure, minimal_polynomial, planted_spectrum_matrix, sample_s, twin_pendant_fixture,
    EntryPool,
};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[test]
fn charpoly_and_snf_multiplicities_agree() {
    // the Yun route and the invariant-factor route must assign identical
    // per-multiplicity square-free factors
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for case in 0..40 {
        let a = if case % 2 == 0 {
            let n = 2 + (rng.next_u64() % 6) as usize;
            let t = random_tree(n, &mut rng);
            sample_s(t.as_graph(), rng.next_u64(), EntryPool::default())
        } else {
            let (_, m, _) = twin_pendant_fixture(3 + (rng.next_u64() % 4) as usize, rng.next_u64(), EntryPool::default());
            m
        };
        let s = eigen_structure(&a);
        let snf = a.characteristic_matrix().smith_normal_form().unwrap();
        let by_snf = invariant_factor_multiplicities(&snf).unwrap();
        assert_eq!(by_snf.len(), s.factors.len());
        for (g, m) in &s.factors {
            assert_eq!(by_snf.get(m), Some(g), "multiplicity {m}");
        }
    }
}

#[test]
fn structure_shape_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for _ in 0..30 {
        let n = 1 + (rng.next_u64() % 7) as usize;
        let t = random_tree(n, &mut rng);
        let a = sample_s(t.as_graph(), rng.next_u64(), EntryPool::default());
        let s = eigen_structure(&a);
        let total: usize = s.groups.iter().map(|g| g.multiplicity).sum();
        assert_eq!(total, n);
        assert_eq!(s.q, s.groups.len());
        assert!(s.charpoly.leading().unwrap().is_one());
        assert_eq!(s.charpoly.degree(), Some(n));
        // trace = -(coefficient of x^(n-1))
        assert_eq!(a.trace(), -s.charpoly.coeff(n - 1));
        // minimal polynomial divides charpoly, and charpoly divides minpoly^n
        let mp = minimal_polynomial(&a).unwrap();
        assert!(mp.divides(&s.charpoly));
        assert!(s.charpoly.divides(&mp.pow(n)));
    }
}

#[test]
fn cayley_recovers_planted_multiset() {
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for case in 0..25 {
        let mut remaining = 2 + (rng.next_u64() % 5) as usize;
        let mut planted: Vec<(Rational, usize)> = Vec::new();
        let mut v = -3i64;
        while remaining > 0 {
            let m = 1 + (rng.next_u64() as usize % remaining.min(3));
            planted.push((Rational::from_int(v), m));
            v += 1 + (rng.next_u64() % 3) as i64;
            remaining -= m;
        }
        let a = planted_spectrum_matrix(&planted, 7000 + case, EntryPool::default()).unwrap();
        let s = eigen_structure(&a);
        let got: Vec<(Rational, usize)> = s
            .groups
            .iter()
            .map(|g| match &g.root {
                acyclic_spectra::spectra::RootLocator::Exact(r) => (r.clone(), g.multiplicity),
                other => panic!("planted roots are rational, got {other:?}"),
            })
            .collect();
        assert_eq!(got, planted);
        // the charpoly is exactly the product of planted linear powers
        let mut expect = Poly::one();
        for (value, m) in &planted {
            expect = &expect * &Poly::linear_root(value).pow(*m);
        }
        assert_eq!(s.charpoly, expect);
    }
}

#[test]
fn screening_is_sound_on_sampled_matrices() {
    // the necessary conditions never reject the multiplicity list of an
    // actual matrix on its own tree
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    for case in 0..60 {
        let (t, a) = if case % 3 == 0 {
            let (t, a, _) = twin_pendant_fixture(3 + (rng.next_u64() % 5) as usize, rng.next_u64(), EntryPool::default());
            (t, a)
        } else {
            let n = 2 + (rng.next_u64() % 9) as usize;
            let t = random_tree(n, &mut rng);
            let a = sample_s(t.as_graph(), rng.next_u64(), EntryPool::default());
            (t, a)
        };
        let s = eigen_structure(&a);
        let report = screen_multiplicity_list(&t, &s.multiplicity_list(), 14).unwrap();
        assert!(report.passed(), "sound screen rejected {:?}", s.multiplicity_list());
    }
}

#[test]
fn star_adjacency_has_known_structure() {
    // K_(1,m): eigenvalues -sqrt(m), 0^(m-1), sqrt(m); m >= 3 so that the
    // kernel multiplicity is distinguishable from the simple extremes
    for m in 3usize..=6 {
        let star = star_graph(m + 1).unwrap();
        let a = acyclic_spectra::spectra::RatSymMatrix::adjacency(star.as_graph());
        let s = eigen_structure(&a);
        assert_eq!(s.multiplicity_list(), vec![1, m - 1, 1]);
        assert_eq!(
            s.factor_of_multiplicity(m - 1).unwrap(),
            &Poly::x()
        );
    }
}

#[test]
fn bound_audit_enum_covers_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(904);
    for _ in 0..25 {
        let n = 2 + (rng.next_u64() % 8) as usize;
        let t = random_tree(n, &mut rng);
        let a = sample_s(t.as_graph(), rng.next_u64(), EntryPool::default());
        for check in [
            BoundCheck::MaxMultLePathCover,
            BoundCheck::QGeDiameterPlusOne,
            BoundCheck::ExtremesSimple,
        ] {
            let report = acyclic_spectra::auditor::audit_bounds(&a, t.as_graph(), &check).unwrap();
            assert!(report.passed());
        }
    }
}
