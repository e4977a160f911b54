//! Canonical forms under a finite group acting linearly on coefficient vectors.

use crate::polyform::LinMap;

/// Returns the indices of the maps fixing `f` when `f` is the minimum of
/// its orbit under `maps` (restricted to `subset`), and None otherwise.
pub fn canonical_stabilizer(f: u64, maps: &[LinMap], subset: &[usize]) -> Option<Vec<usize>> {
    let mut fixing = Vec::new();
    for &i in subset {
        let img = maps[i].apply(f);
        if img < f {
            return None;
        }
        if img == f {
            fixing.push(i);
        }
    }
    Some(fixing)
}

/// Minimum of the orbit of `f`.
pub fn orbit_min(f: u64, maps: &[LinMap]) -> u64 {
    maps.iter().map(|m| m.apply(f)).min().unwrap_or(f)
}
