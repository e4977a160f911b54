//! Smooth plane quintics over F_2, up to GL_3(F_2).
//!
//! The whole space of ternary quintics is swept; a smooth form is kept when
//! it is the minimum of its orbit. Automorphisms of a smooth plane quintic
//! are projectivities, so the stabilizer of the form is Aut(C).

use std::sync::{Arc, OnceLock};

use crate::census::CurveRecord;
use crate::error::{CensusError, Result};
use crate::groupact::{fingerprint, gl3, F2Mat};
use crate::polyform::{FormSpace, LinMap};
use crate::smoothcert::{counts_from_closed, counts_from_lanes, form_space_table, SweepTable};
use crate::strata::formclass::canonical_stabilizer;
use crate::strata::{Shard, Stratum};

pub const NCOEFFS: u32 = 21;
/// Sweep blocks are indexed by the top coefficient bits.
const BLOCK_BITS: u32 = 13;

pub fn space() -> Arc<FormSpace> {
    FormSpace::new(&[(3, 5)])
}

/// F -> F(M x) for every M in GL_3(F_2), in the order of `gl3()`.
pub fn substitution_maps() -> &'static [LinMap] {
    static MAPS: OnceLock<Vec<LinMap>> = OnceLock::new();
    MAPS.get_or_init(|| {
        let sp = space();
        gl3()
            .iter()
            .map(|m| {
                let rows: Vec<u32> = m.rows().iter().map(|&r| u32::from(r)).collect();
                LinMap::from_columns(&sp.substitution_columns(&[rows]))
            })
            .collect()
    })
}

fn table() -> &'static SweepTable {
    static T: OnceLock<SweepTable> = OnceLock::new();
    T.get_or_init(|| form_space_table(&space()))
}

#[derive(Clone, Debug)]
pub struct QuinticClass {
    pub form: u64,
    pub stabilizer: Vec<F2Mat>,
    pub counts: [i64; 6],
}

impl QuinticClass {
    pub fn model_string(&self) -> String {
        model_string(self.form)
    }
}

pub fn model_string(form: u64) -> String {
    format!("quintic:{form:06x}")
}

pub fn parse_model(s: &str) -> Result<u64> {
    s.strip_prefix("quintic:")
        .and_then(|h| u64::from_str_radix(h, 16).ok())
        .filter(|&f| f < 1 << NCOEFFS)
        .ok_or_else(|| CensusError::InvalidArgument(format!("bad quintic model {s:?}")))
}

/// Classes with canonical form in the shard's blocks, and the number of
/// smooth forms seen.
pub fn enumerate(shard: Shard) -> (Vec<QuinticClass>, u64) {
    let t = table();
    let maps = substitution_maps();
    let all: Vec<usize> = (0..maps.len()).collect();
    let basis: Vec<u64> = (0..BLOCK_BITS).map(|i| 1u64 << i).collect();
    let mut classes = Vec::new();
    let mut smooth = 0u64;
    for block in 0..1u64 << (NCOEFFS - BLOCK_BITS) {
        if !shard.owns(block as usize) {
            continue;
        }
        t.sweep(block << BLOCK_BITS, &basis, |f, lanes| {
            smooth += 1;
            if let Some(fix) = canonical_stabilizer(f, maps, &all) {
                classes.push(QuinticClass {
                    form: f,
                    stabilizer: fix.iter().map(|&i| gl3()[i]).collect(),
                    counts: counts_from_closed(&counts_from_lanes(lanes, t.degrees())),
                });
            }
        });
    }
    (classes, smooth)
}

pub fn run(shard: Shard) -> Result<Vec<CurveRecord>> {
    enumerate(shard)
        .0
        .into_iter()
        .map(|c| CurveRecord::new(Stratum::Quintic, c.model_string(), c.counts, &fingerprint(&c.stabilizer)?))
        .collect()
}
