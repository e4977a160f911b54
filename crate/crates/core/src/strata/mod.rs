//! The six strata of the census and a common entry point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::census::{sort_records, CurveRecord};
use crate::error::{CensusError, Result};

pub mod bielliptic;
pub mod formclass;
pub mod generic;
pub mod hyperelliptic;
pub mod quintic;
pub mod trigonal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    Hyp,
    Biell,
    Quintic,
    T0,
    T2,
    Bn,
}

impl Stratum {
    pub const ALL: [Stratum; 6] =
        [Stratum::Hyp, Stratum::Biell, Stratum::Quintic, Stratum::T0, Stratum::T2, Stratum::Bn];

    pub fn tag(self) -> &'static str {
        match self {
            Stratum::Hyp => "hyp",
            Stratum::Biell => "biell",
            Stratum::Quintic => "quintic",
            Stratum::T0 => "t0",
            Stratum::T2 => "t2",
            Stratum::Bn => "bn",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Stratum {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Stratum> {
        Stratum::ALL
            .into_iter()
            .find(|st| st.tag() == s)
            .ok_or_else(|| CensusError::InvalidArgument(format!("unknown stratum {s:?}")))
    }
}

/// Shard `index` of `count`: a stratum's work items are dealt round-robin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };

    pub fn new(index: usize, count: usize) -> Result<Shard> {
        if count == 0 || index >= count {
            return Err(CensusError::InvalidArgument(format!("bad shard {index}/{count}")));
        }
        Ok(Shard { index, count })
    }

    pub fn owns(&self, item: usize) -> bool {
        item % self.count == self.index
    }
}

impl FromStr for Shard {
    type Err = CensusError;
    /// Parses `i/n` with 0 <= i < n.
    fn from_str(s: &str) -> Result<Shard> {
        let bad = || CensusError::InvalidArgument(format!("shard must look like i/n, got {s:?}"));
        let (i, n) = s.split_once('/').ok_or_else(bad)?;
        Shard::new(i.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?)
    }
}

/// Enumerates one stratum (or one shard of it), sorted by canonical id.
pub fn run(stratum: Stratum, shard: Shard) -> Result<Vec<CurveRecord>> {
    let mut recs = match stratum {
        Stratum::Hyp => hyperelliptic::run(shard)?,
        Stratum::Biell => bielliptic::run(shard)?,
        Stratum::Quintic => quintic::run(shard)?,
        Stratum::T0 => trigonal::run_t0(shard)?,
        Stratum::T2 => trigonal::run_t2(shard)?,
        Stratum::Bn => generic::run(shard)?,
    };
    sort_records(&mut recs);
    Ok(recs)
}
