use acyclic_spectra::graphs::{
    delete_paths, find_special_path, max_coverage_by_k_paths, max_coverage_dp, path_cover_number,
    path_cover_number_bruteforce, random_path_family, random_tree, whirl, PathFamily, Tree,
};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn degree_in(t: &Tree, v: u32) -> usize {
    t.degree(v)
}

#[test]
fn special_path_postconditions_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..250 {
        let n = 1 + (rng.next_u64() % 12) as usize;
        let t = random_tree(n, &mut rng);
        let p = find_special_path(&t);
        let family = PathFamily::new(t.as_graph(), vec![p.clone()]).unwrap();
        assert_eq!(family.len(), 1);
        if p.len() == t.n() {
            continue; // the tree is a bare path
        }
        assert_eq!(degree_in(&t, p[0]), 1, "start must be pendant in {t:?}");
        assert_eq!(degree_in(&t, *p.last().unwrap()), 1, "end must be pendant");
        let high = p.iter().filter(|&&v| degree_in(&t, v) >= 3).count();
        assert!(high <= 1, "at most one high-degree vertex on {p:?} of {t:?}");
    }
}

#[test]
fn greedy_cover_matches_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..150 {
        let n = 1 + (rng.next_u64() % 10) as usize;
        let t = random_tree(n, &mut rng);
        let (p, family) = path_cover_number(&t);
        assert_eq!(family.covered().len(), n);
        assert_eq!(p, path_cover_number_bruteforce(&t, 14).unwrap(), "{t:?}");
    }
}

#[test]
fn removing_the_special_path_drops_cover_number_by_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    for _ in 0..120 {
        let n = 2 + (rng.next_u64() % 9) as usize;
        let t = random_tree(n, &mut rng);
        let p = find_special_path(&t);
        if p.len() == t.n() {
            continue;
        }
        let family = PathFamily::new(t.as_graph(), vec![p]).unwrap();
        let (rest, _) = delete_paths(&t, &family).unwrap();
        // p over the forest = sum over components
        let mut rest_cover = 0;
        for comp in rest.connected_components() {
            let keep: std::collections::BTreeSet<u32> = comp.into_iter().collect();
            let (sub, _) = rest.induced(&keep).unwrap();
            let sub_tree = Tree::new(sub).unwrap();
            rest_cover += path_cover_number_bruteforce(&sub_tree, 14).unwrap();
        }
        let full = path_cover_number_bruteforce(&t, 14).unwrap();
        assert_eq!(full, rest_cover + 1, "{t:?}");
    }
}

/// AHU canonical form of a rooted tree: sorted child encodings.
fn ahu_encode(t: &Tree, v: u32, parent: u32) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu_encode(t, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.join(""))
}

/// Unlabeled-tree equality via centroid-rooted AHU encodings.
fn trees_isomorphic(a: &Tree, b: &Tree) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let canon = |t: &Tree| -> Vec<String> {
        // try every root; the minimum encoding is canonical (n is small here)
        let mut encodings: Vec<String> =
            t.vertices().map(|v| ahu_encode(t, v, 0)).collect();
        encodings.sort();
        encodings
    };
    canon(a) == canon(b)
}

#[test]
fn generated_whirl_matches_the_example_tree() {
    let w = whirl(3, 1).unwrap();
    assert!(trees_isomorphic(
        &w.tree,
        &acyclic_spectra::graphs::figure2_tree()
    ));
    assert!(!trees_isomorphic(
        &w.tree,
        &acyclic_spectra::graphs::figure6_tree()
    ));
}

#[test]
fn whirl_parameter_grid() {
    for k in 2..=5 {
        for ell in 1..=4 {
            let w = whirl(k, ell).unwrap();
            assert_eq!(w.tree.diameter().unwrap(), 2 * ell + 2);
            assert_eq!(path_cover_number(&w.tree).0, k + 1);
        }
    }
}

#[test]
fn deletion_leaves_a_forest() {
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    for _ in 0..150 {
        let n = 2 + (rng.next_u64() % 10) as usize;
        let t = random_tree(n, &mut rng);
        let k = 1 + (rng.next_u64() % 3) as usize;
        let k = k.min(n);
        let f = random_path_family(&t, k, &mut rng);
        let (rest, _) = delete_paths(&t, &f).unwrap();
        // acyclic: every component has |V| - 1 edges
        let mut edge_total = 0;
        for comp in rest.connected_components() {
            let keep: std::collections::BTreeSet<u32> = comp.iter().copied().collect();
            let (sub, _) = rest.induced(&keep).unwrap();
            assert_eq!(sub.edges().len(), comp.len() - 1);
            edge_total += sub.edges().len();
        }
        assert_eq!(edge_total, rest.edges().len());
    }
}

#[test]
fn coverage_strategies_agree_and_full_cover_at_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for _ in 0..80 {
        let n = 2 + (rng.next_u64() % 9) as usize;
        let t = random_tree(n, &mut rng);
        let (p, _) = path_cover_number(&t);
        for k in 1..=p {
            let (cov, family) = max_coverage_by_k_paths(&t, k, 14).unwrap();
            assert_eq!(cov, max_coverage_dp(&t, k));
            assert_eq!(family.covered().len(), cov);
            assert!(family.len() <= k);
        }
        let (cov, _) = max_coverage_by_k_paths(&t, p, 14).unwrap();
        assert_eq!(cov, n, "p disjoint paths cover everything");
    }
}
