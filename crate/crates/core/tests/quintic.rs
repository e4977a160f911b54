use g6census::polyform::{Form, LinMap};
use g6census::smoothcert::certify_form;
use g6census::strata::formclass::orbit_min;
use g6census::strata::quintic::{enumerate, space, substitution_maps};
use g6census::strata::Shard;
use num_rational::Ratio;

#[test]
fn quintic_census() {
    let (classes, smooth) = enumerate(Shard::ALL);
    assert_eq!(smooth, 688_128);
    let orbit_total: u64 = classes.iter().map(|c| 168 / c.stabilizer.len() as u64).sum();
    assert_eq!(orbit_total, smooth);
    let mass: Ratio<i64> = classes.iter().map(|c| Ratio::new(1, c.stabilizer.len() as i64)).sum();
    assert_eq!(classes.len(), 4204);
    assert_eq!(mass, Ratio::from_integer(4096));
    for c in &classes {
        assert!(c.counts[0] <= 10);
    }
}

#[test]
fn fermat_quintic_has_one_class() {
    let sp = space();
    let fermat = Form::from_monomials(sp.clone(), &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]]);
    assert!(certify_form(&fermat).smooth);
    let maps: &[LinMap] = substitution_maps();
    let rep = orbit_min(fermat.coeffs, maps);
    let (classes, _) = enumerate(Shard::ALL);
    assert_eq!(classes.iter().filter(|c| c.form == rep).count(), 1);
}
