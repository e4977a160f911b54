use std::collections::HashSet;

use g6census::strata::bielliptic::{enumerate, run};
use g6census::strata::Shard;
use g6census::weilzeta::counts_to_lpoly;
use num_rational::Ratio;

#[test]
fn bielliptic_census() {
    let classes = enumerate(Shard::ALL).unwrap();
    let mass: Ratio<i64> = classes.iter().map(|c| Ratio::new(1, c.automorphisms.len() as i64)).sum();
    eprintln!("bielliptic classes {} mass {}", classes.len(), mass);
    let models: HashSet<String> = classes.iter().map(|c| c.model_string()).collect();
    assert_eq!(models.len(), classes.len());
    for c in &classes {
        assert!(counts_to_lpoly(&c.counts, 2, 6).is_ok(), "{}", c.model_string());
    }
    assert_eq!(classes.len(), 1530);
    assert_eq!(mass, Ratio::from_integer(744));
}

#[test]
fn shards_partition_the_stratum() {
    let whole: usize = run(Shard::ALL).unwrap().len();
    let parts: usize = (0..3).map(|i| run(Shard::new(i, 3).unwrap()).unwrap().len()).sum();
    assert_eq!(whole, parts);
}
