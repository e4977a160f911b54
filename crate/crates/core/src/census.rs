//! Census records, JSONL persistence, verification and reporting.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{CensusError, Result};
use crate::groupact::GroupFingerprint;
use crate::strata::Stratum;
use crate::weilzeta;

/// One isomorphism class of curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub stratum: Stratum,
    pub model: String,
    /// N_1..N_6
    pub counts: Vec<i64>,
    /// a_0..a_12
    pub lpoly: Vec<i64>,
    pub aut_order: u64,
    pub aut_fingerprint: String,
    pub canonical_id: String,
}

impl CurveRecord {
    /// Builds a record, deriving the L-polynomial from the counts.
    pub fn new(
        stratum: Stratum,
        model: String,
        counts: [i64; 6],
        fingerprint: &GroupFingerprint,
    ) -> Result<CurveRecord> {
        let w = weilzeta::counts_to_lpoly(&counts, 2, 6)?;
        let name = fingerprint
            .name()
            .ok_or_else(|| CensusError::Degenerate(format!("unrecognised automorphism group {fingerprint:?}")))?;
        Ok(CurveRecord {
            stratum,
            canonical_id: model.clone(),
            model,
            counts: counts.to_vec(),
            lpoly: w.lpoly,
            aut_order: fingerprint.order,
            aut_fingerprint: name.to_string(),
        })
    }

    pub fn sort_key(&self) -> (Stratum, &str) {
        (self.stratum, &self.canonical_id)
    }
}

pub fn sort_records(records: &mut [CurveRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

pub fn write_jsonl<W: Write>(w: &mut W, records: &[CurveRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<CurveRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CurveRecord =
            serde_json::from_str(&line).map_err(|e| CensusError::Parse { line: i + 1, msg: e.to_string() })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn load_jsonl(path: &Path) -> Result<Vec<CurveRecord>> {
    read_jsonl(std::io::BufReader::new(std::fs::File::open(path)?))
}

pub fn save_jsonl(path: &Path, records: &[CurveRecord]) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_jsonl(&mut f, records)?;
    f.flush()?;
    Ok(())
}

type Q = Ratio<i128>;

/// Unweighted and weighted (Σ 1/#Aut) counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub classes: u64,
    pub mass: Q,
}

impl Tally {
    fn add(&mut self, aut: u64) {
        self.classes += 1;
        self.mass += Q::new(1, aut as i128);
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Per-stratum rows and global statistics of a census.
#[derive(Clone, Debug, Default)]
pub struct CensusSummary {
    pub rows: BTreeMap<Stratum, Tally>,
    pub total: Tally,
    /// Σ N_1 / #Aut
    pub marked_one: Q,
    /// Σ (C(N_1,2) + (N_2 - N_1)/2) / #Aut
    pub marked_unordered_pairs: Q,
    /// Σ N_1 (N_1 - 1) / #Aut
    pub marked_ordered_pairs: Q,
    pub max_n1: i64,
    pub max_n1_records: u64,
    pub supersingular_records: u64,
    pub supersingular_lpolys: u64,
    pub records_with_n4_zero: u64,
    pub records_with_special_counts: u64,
    pub distinct_lpolys: u64,
    pub max_lpoly_multiplicity: u64,
    pub newton_polygons: u64,
    pub fingerprints: BTreeMap<String, u64>,
    pub non_admissible: u64,
}

pub const SPECIAL_COUNTS: [i64; 6] = [0, 0, 0, 20, 15, 90];

pub fn summarize(records: &[CurveRecord]) -> CensusSummary {
    let mut s = CensusSummary::default();
    let mut lpolys: HashMap<&[i64], u64> = HashMap::new();
    let mut ss_lpolys: HashSet<&[i64]> = HashSet::new();
    let mut newton: HashSet<Vec<String>> = HashSet::new();
    for r in records {
        s.rows.entry(r.stratum).or_default().add(r.aut_order);
        s.total.add(r.aut_order);
        let a = r.aut_order as i128;
        let n1 = r.counts[0] as i128;
        let n2 = r.counts[1] as i128;
        s.marked_one += Q::new(n1, a);
        s.marked_unordered_pairs += Q::new(n1 * (n1 - 1) / 2, a) + Q::new(n2 - n1, 2 * a);
        s.marked_ordered_pairs += Q::new(n1 * (n1 - 1), a);
        if r.counts[0] > s.max_n1 {
            s.max_n1 = r.counts[0];
            s.max_n1_records = 0;
        }
        if r.counts[0] == s.max_n1 {
            s.max_n1_records += 1;
        }
        if weilzeta::is_supersingular(&r.lpoly) {
            s.supersingular_records += 1;
            ss_lpolys.insert(&r.lpoly);
        }
        if r.counts[3] == 0 {
            s.records_with_n4_zero += 1;
        }
        if r.counts == SPECIAL_COUNTS {
            s.records_with_special_counts += 1;
        }
        *lpolys.entry(&r.lpoly).or_default() += 1;
        newton.insert(weilzeta::newton_key(&r.lpoly));
        *s.fingerprints.entry(r.aut_fingerprint.clone()).or_default() += 1;
        let w = weilzeta::WeilData { q: 2, g: 6, counts: r.counts.clone(), lpoly: r.lpoly.clone() };
        if !weilzeta::admissible(&w) {
            s.non_admissible += 1;
        }
    }
    s.supersingular_lpolys = ss_lpolys.len() as u64;
    s.distinct_lpolys = lpolys.len() as u64;
    s.max_lpoly_multiplicity = lpolys.values().copied().max().unwrap_or(0);
    s.newton_polygons = newton.len() as u64;
    s
}

/// The closed-form polynomial evaluated at q.
pub fn moduli_polynomial(q: i128) -> i128 {
    q.pow(15) + q.pow(14) + 2 * q.pow(13) + q.pow(12) - q.pow(10) + q.pow(3) - 1
}

/// Expected (classes, mass) per stratum.
pub fn expected_row(s: Stratum) -> (u64, i128) {
    match s {
        Stratum::Hyp => (4134, 2048),
        Stratum::Biell => (1530, 744),
        Stratum::Quintic => (4204, 4096),
        Stratum::T0 => (7282, 7166),
        Stratum::T2 => (6181, 6148),
        Stratum::Bn => (48896, 48413),
    }
}

/// One verification check with observed and expected values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub observed: String,
    pub expected: String,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: observed {}, expected {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            self.expected
        )
    }
}

fn check<T: fmt::Display + PartialEq>(name: &str, observed: T, expected: T) -> Check {
    Check {
        name: name.into(),
        pass: observed == expected,
        observed: observed.to_string(),
        expected: expected.to_string(),
    }
}

fn check_q(name: &str, observed: &Q, expected: i128) -> Check {
    Check {
        name: name.into(),
        pass: *observed == Q::from_integer(expected),
        observed: fmt_q(observed),
        expected: expected.to_string(),
    }
}

/// Checks on a census file. Record-level checks always run; the per-stratum
/// rows run for the strata present, and the global statistics only when all
/// six strata are present.
pub fn verify(records: &[CurveRecord], isogeny: Option<&HashSet<Vec<i64>>>) -> Vec<Check> {
    let s = summarize(records);
    let mut out = vec![check("census file has records", !records.is_empty(), true)];
    let round_trip = records
        .iter()
        .filter(|r| {
            weilzeta::counts_to_lpoly(&r.counts, 2, 6).map(|w| w.lpoly != r.lpoly).unwrap_or(true)
                || weilzeta::lpoly_to_counts(&r.lpoly, 2, 6) != r.counts
        })
        .count() as u64;
    out.push(check("records failing the counts/L-polynomial round trip", round_trip, 0));
    out.push(check("non-admissible L-polynomials", s.non_admissible, 0));
    let ids: HashSet<(Stratum, &str)> = records.iter().map(|r| r.sort_key()).collect();
    out.push(check("duplicate canonical ids", (records.len() - ids.len()) as u64, 0));
    let known = crate::groupact::fingerprint_names();
    let unknown: u64 = s.fingerprints.iter().filter(|(n, _)| !known.contains(&n.as_str())).map(|(_, c)| *c).sum();
    out.push(check("records with unlisted automorphism group", unknown, 0));
    if let Some(iso) = isogeny {
        let missing = records.iter().filter(|r| !iso.contains(&r.lpoly)).count() as u64;
        out.push(check("L-polynomials missing from isogeny list", missing, 0));
    }
    for st in Stratum::ALL {
        if let Some(row) = s.rows.get(&st) {
            let (c, m) = expected_row(st);
            out.push(check(&format!("{} classes", st.tag()), row.classes, c));
            out.push(check_q(&format!("{} weighted", st.tag()), &row.mass, m));
        }
    }
    if s.rows.len() < Stratum::ALL.len() {
        return out;
    }
    out.push(check("total classes", s.total.classes, 72227));
    out.push(check_q("total weighted", &s.total.mass, 68615));
    out.push(check_q("polynomial at q=2 equals weighted total", &s.total.mass, moduli_polynomial(2)));
    out.push(check_q("one marked point", &s.marked_one, 223317));
    out.push(check_q("unordered pairs of marked points", &s.marked_unordered_pairs, 471210));
    out.push(check_q("ordered pairs of distinct marked points", &s.marked_ordered_pairs, 650838));
    out.push(check("max N_1", s.max_n1, 10));
    out.push(check("records attaining max N_1", s.max_n1_records, 2));
    out.push(check("supersingular records", s.supersingular_records, 70));
    out.push(check("supersingular L-polynomials", s.supersingular_lpolys, 28));
    out.push(check("records with N_4 = 0", s.records_with_n4_zero, 0));
    out.push(check("records with counts (0,0,0,20,15,90)", s.records_with_special_counts, 1));
    out.push(check("distinct L-polynomials", s.distinct_lpolys, 38327));
    out.push(check("max L-polynomial multiplicity", s.max_lpoly_multiplicity, 20));
    out.push(check("Newton polygons", s.newton_polygons, 20));
    out
}

/// Human-readable table of per-stratum counts.
pub fn report(records: &[CurveRecord]) -> String {
    let s = summarize(records);
    let mut out = String::new();
    out.push_str(&format!("{:<10} {:>10} {:>12} {:>12}\n", "stratum", "classes", "weighted", "expected"));
    for st in Stratum::ALL {
        let row = s.rows.get(&st).cloned().unwrap_or_default();
        let reference = expected_row(st).1;
        out.push_str(&format!("{:<10} {:>10} {:>12} {:>12}\n", st.tag(), row.classes, fmt_q(&row.mass), reference));
    }
    out.push_str(&format!(
        "{:<10} {:>10} {:>12} {:>12}\n",
        "total",
        s.total.classes,
        fmt_q(&s.total.mass),
        moduli_polynomial(2)
    ));
    out.push_str(&format!(
        "marked points: one {}, unordered pairs {}, ordered pairs {}\n",
        fmt_q(&s.marked_one),
        fmt_q(&s.marked_unordered_pairs),
        fmt_q(&s.marked_ordered_pairs)
    ));
    out.push_str(&format!(
        "max N_1 {} ({} records); supersingular {} ({} L-polynomials); distinct L-polynomials {} (max multiplicity {}); Newton polygons {}\n",
        s.max_n1, s.max_n1_records, s.supersingular_records, s.supersingular_lpolys, s.distinct_lpolys,
        s.max_lpoly_multiplicity, s.newton_polygons
    ));
    out.push_str("automorphism groups:");
    for (n, c) in &s.fingerprints {
        out.push_str(&format!(" {n}:{c}"));
    }
    out.push('\n');
    out
}
