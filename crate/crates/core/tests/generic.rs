use std::collections::HashSet;

use g6census::groupact::{gl5, wedge2_unchecked};
use g6census::linalg::Subspace64;
use g6census::orbitree::binomial;
use g6census::smoothcert::{counts_from_closed, counts_from_lanes};
use g6census::strata::generic::*;
use g6census::strata::Shard;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn dual_tree_satisfies_burnside() {
    let tree = dual_tree(4).unwrap();
    tree.check_counts(|k| independent_subsets(k)).unwrap();
    let sizes: Vec<usize> = (0..=4).map(|k| tree.level(k).len()).collect();
    assert_eq!(sizes, [1, 2, 9, 112, 6306]);
    // sanity of the closed form against the plain binomial at level 1 and 2
    assert_eq!(independent_subsets(1), binomial(1023, 1));
    assert_eq!(independent_subsets(2), binomial(1023, 2));
}

#[test]
fn generic_census() {
    let surfaces = surfaces().unwrap();
    assert_eq!(surfaces.len(), 17);
    assert_eq!(surfaces.iter().filter(|s| s.is_smooth()).count(), 7);
    for s in surfaces {
        assert_eq!(s.quotient_dim, QUADRICS as usize);
        assert_eq!(s.ideal.dim(), 5);
    }

    // stabilizers against a scan of GL_5
    let spans: Vec<Subspace64> =
        surfaces.iter().map(|s| Subspace64::from_vectors(s.forms.iter().map(|&f| u64::from(f)))).collect();
    let mut brute = vec![0usize; surfaces.len()];
    for a in gl5().iter() {
        let g = wedge2_unchecked(a).transpose();
        for (i, s) in surfaces.iter().enumerate() {
            if s.forms.iter().all(|&f| spans[i].contains(u64::from(g.apply(u32::from(f))))) {
                brute[i] += 1;
            }
        }
    }
    let stabs: Vec<usize> = surfaces.iter().map(|s| s.stabilizer.len()).collect();
    assert_eq!(brute, stabs);

    // smooth del Pezzo surfaces: Aut is the centralizer of Frobenius in S_5
    let mut smooth: Vec<(u64, usize)> =
        surfaces.iter().filter(|s| s.is_smooth()).map(|s| (s.signature.points[0], s.stabilizer.len())).collect();
    smooth.sort_unstable();
    assert_eq!(smooth, [(5, 5), (5, 6), (7, 4), (7, 8), (9, 6), (11, 12), (15, 120)]);

    let classes = enumerate(Shard::ALL).unwrap();
    let mass: Ratio<i64> = classes.iter().map(|c| Ratio::new(1, c.fixing.len() as i64)).sum();
    assert_eq!(classes.len(), 48_896);
    assert_eq!(mass, Ratio::from_integer(48_413));
    let models: HashSet<String> = classes.iter().map(|c| c.model_string()).collect();
    assert_eq!(models.len(), classes.len());
    assert!(classes.iter().all(|c| genus_six_counts(&c.counts)));

    // orbit-stabilizer against a plain count of the smooth sections
    for s in surfaces {
        let mut sections = 0usize;
        s.table.sweep(0, &s.class_basis(), |_, lanes| {
            let counts = counts_from_closed(&counts_from_lanes(lanes, s.table.degrees()));
            if genus_six_counts(&counts) {
                sections += 1;
            }
        });
        let orbit_total: usize =
            classes.iter().filter(|c| c.surface == s.index).map(|c| s.stabilizer.len() / c.fixing.len()).sum();
        assert_eq!(orbit_total, sections, "surface {}", s.index);
    }
}

#[test]
fn stabilizer_acts_on_quadric_classes() {
    let surfaces = surfaces().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for s in surfaces {
        let ideal = s.ideal.basis().to_vec();
        for _ in 0..50 {
            let q = rng.gen::<u64>() & ((1 << QUADRICS) - 1);
            let i = ideal[rng.gen_range(0..ideal.len())];
            let g = rng.gen_range(0..s.stabilizer.len());
            assert_eq!(s.act(g, q), s.act(g, q ^ i));
            assert_eq!(s.act(g, s.reduce(q)), s.act(g, q));
        }
    }
}

/// Sections with the counts of two rational quintics really are singular at
/// a point of degree 7.
#[test]
fn split_sections_are_singular() {
    let surfaces = surfaces().unwrap();
    let mut split = 0;
    for s in surfaces {
        s.table.sweep(0, &s.class_basis(), |q, lanes| {
            let counts = counts_from_closed(&counts_from_lanes(lanes, s.table.degrees()));
            if SPLIT_SIGNATURES.contains(&counts) {
                split += 1;
                assert!(!genus_six_counts(&counts));
                assert!(s.singular_in_degree_seven(q), "surface {} quadric {q:06x}", s.index);
            }
        });
    }
    assert!(split > 0);
}
