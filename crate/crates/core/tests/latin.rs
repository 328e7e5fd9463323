use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, Rng, SeedableRng};
use tropnet::latin::*;

fn sq(rows: &[&[usize]]) -> LatinSquare {
    LatinSquare::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn order4_pair() -> OlsPair {
    OlsPair::new(
        sq(&[&[1, 2, 3, 4], &[2, 1, 4, 3], &[3, 4, 1, 2], &[4, 3, 2, 1]]),
        sq(&[&[1, 2, 3, 4], &[3, 4, 1, 2], &[4, 3, 2, 1], &[2, 1, 4, 3]]),
    )
    .unwrap()
}

fn order3_pair() -> OlsPair {
    OlsPair::new(sq(&[&[1, 2, 3], &[2, 3, 1], &[3, 1, 2]]), sq(&[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]])).unwrap()
}

/// Orbit minimum by enumerating every group element, relabelings included.
fn brute_force_canonical(p: &OlsPair) -> Vec<u8> {
    use itertools::Itertools;
    let d = p.order();
    let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
    let mut best: Option<Vec<u8>> = None;
    for swap in [false, true] {
        for rows in &perms {
            for cols in &perms {
                for r1 in &perms {
                    for r2 in &perms {
                        let g = GroupElement {
                            rows: rows.clone(),
                            cols: cols.clone(),
                            relabel_first: r1.iter().map(|v| v + 1).collect(),
                            relabel_second: r2.iter().map(|v| v + 1).collect(),
                            swap,
                        };
                        let k = p.transform(&g).key();
                        if best.as_ref().is_none_or(|b| k < *b) {
                            best = Some(k);
                        }
                    }
                }
            }
        }
    }
    best.unwrap()
}

fn random_element(d: usize, rng: &mut StdRng) -> GroupElement {
    let mut perm = || {
        let mut v: Vec<usize> = (0..d).collect();
        v.shuffle(rng);
        v
    };
    let rows = perm();
    let cols = perm();
    let relabel_first = perm().into_iter().map(|v| v + 1).collect();
    let relabel_second = perm().into_iter().map(|v| v + 1).collect();
    GroupElement { rows, cols, relabel_first, relabel_second, swap: rng.gen_bool(0.5) }
}


#[test]
fn displayed_squares_are_latin_and_orthogonal() {
    let p = order4_pair();
    assert!(is_latin(&p.first.rows()).unwrap());
    assert!(are_orthogonal(&p.first, &p.second).unwrap());
    let q = order3_pair();
    assert!(are_orthogonal(&q.first, &q.second).unwrap());
}

#[test]
fn order4_pair_is_its_own_canonical_form() {
    let p = order4_pair();
    assert_eq!(canonical_form(&p), p);
    assert_eq!(brute_force_canonical(&p), p.key());
}

#[test]
fn order3_pair_is_its_own_canonical_form() {
    let p = order3_pair();
    assert_eq!(canonical_form(&p), p);
    assert_eq!(brute_force_canonical(&p), p.key());
}

#[test]
fn enumeration_finds_single_classes() {
    assert_eq!(enumerate_ols(3).unwrap(), vec![order3_pair()]);
    assert_eq!(enumerate_ols(4).unwrap(), vec![order4_pair()]);
    assert!(enumerate_ols(2).unwrap().is_empty());
}

#[test]
fn raw_pairs_all_collapse_to_the_listed_class() {
    for (d, expect) in [(3, order3_pair()), (4, order4_pair())] {
        let raw = raw_ols_pairs(d).unwrap();
        assert!(!raw.is_empty());
        for p in raw {
            assert_eq!(canonical_form(&p), expect);
        }
    }
}

#[test]
fn swap_and_row_permutation_do_not_change_canonical_form() {
    let p = order4_pair();
    let swapped = OlsPair { first: p.second.clone(), second: p.first.clone() };
    assert_eq!(canonical_form(&swapped), canonical_form(&p));
    let g = GroupElement {
        rows: vec![2, 0, 3, 1],
        cols: vec![0, 1, 2, 3],
        relabel_first: vec![1, 2, 3, 4],
        relabel_second: vec![1, 2, 3, 4],
        swap: false,
    };
    assert_eq!(canonical_form(&p.transform(&g)), canonical_form(&p));
}

#[test]
fn canonical_form_is_constant_on_100_random_orbit_elements() {
    let mut rng = StdRng::seed_from_u64(7);
    for (d, p) in [(3, order3_pair()), (4, order4_pair())] {
        let c = canonical_form(&p);
        assert_eq!(canonical_form(&c), c);
        for _ in 0..100 {
            let img = p.transform(&random_element(d, &mut rng));
            assert!(are_orthogonal(&img.first, &img.second).unwrap());
            assert_eq!(canonical_form(&img), c);
        }
    }
}

proptest! {
    #[test]
    fn orthogonality_is_symmetric(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let raw = raw_ols_pairs(4).unwrap();
        let p = raw.choose(&mut rng).unwrap();
        let g = random_element(4, &mut rng);
        let img = p.transform(&g);
        let other = order4_pair().second;
        prop_assert_eq!(are_orthogonal(&img.first, &other).unwrap(), are_orthogonal(&other, &img.first).unwrap());
    }
}
