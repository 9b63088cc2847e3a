//! Arithmetic existence criteria for non-trivial self-dual cyclic and
//! negacyclic codes, and a scanner over parameter grids.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain_ring::RingSpec;
use crate::code::build_self_dual;
use crate::error::{Error, Result};
use crate::factorization::{cyclotomic_cosets, gcd, multiplicative_order};
use crate::idempotent::primitive_idempotent_set;
use crate::oracle::{brute_dual, expand, space_size};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Cyclic,
    Negacyclic,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Cyclic => "cyclic",
            Kind::Negacyclic => "negacyclic",
        }
    }

    /// The modulus whose cosets index the factors: `n` or `2n`.
    pub fn coset_modulus(self, n: u64) -> u64 {
        match self {
            Kind::Cyclic => n,
            Kind::Negacyclic => 2 * n,
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "cyclic" => Ok(Kind::Cyclic),
            "negacyclic" => Ok(Kind::Negacyclic),
            _ => Err(Error::InvalidInput(format!("unknown kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceQuery {
    pub q: u64,
    pub n: u64,
    pub t: u32,
    pub kind: Kind,
}

/// Smallest `i >= 1` with `q^i = -1 (mod m)`, if any. Requires `m >= 2`.
pub fn minus_one_witness(q: u64, m: u64) -> Result<Option<u64>> {
    if m < 2 {
        return Ok(None);
    }
    if gcd(q, m) != 1 {
        return Err(Error::NotCoprime);
    }
    let ord = multiplicative_order(q, m)?;
    let mut x = 1u128;
    for i in 1..=ord {
        x = x * q as u128 % m as u128;
        if x == (m - 1) as u128 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Whether some power of `q` is `-1` modulo `m`; false for `m < 2`.
pub fn minus_one_in_powers(q: u64, m: u64) -> Result<bool> {
    Ok(minus_one_witness(q, m)?.is_some())
}

fn check_query(qr: &ExistenceQuery) -> Result<()> {
    if qr.n == 0 || qr.t == 0 || qr.q < 2 {
        return Err(Error::InvariantViolation("n, t must be positive and q at least 2".into()));
    }
    if gcd(qr.kind.coset_modulus(qr.n), qr.q) != 1 {
        return Err(Error::InvariantViolation(format!(
            "length {} not coprime to q = {} for {} codes",
            qr.n,
            qr.q,
            qr.kind.as_str()
        )));
    }
    Ok(())
}

/// Existence of a non-trivial self-dual code.
///
/// Cyclic needs `t` even and `-1` outside the powers of `q` mod `n`;
/// negacyclic with `t` even needs the same mod `2n`. Negacyclic with `t`
/// odd needs every odd coset mod `2n` to differ from its negation's coset.
pub fn exists_nontrivial_selfdual(qr: &ExistenceQuery) -> Result<bool> {
    check_query(qr)?;
    match (qr.kind, qr.t.is_multiple_of(2)) {
        (Kind::Cyclic, false) => Ok(false),
        // one component only: the code gamma^{t/2} R is the sole self-dual code
        (Kind::Cyclic, true) if qr.n == 1 => Ok(false),
        (Kind::Cyclic, true) => Ok(!minus_one_in_powers(qr.q, qr.n)?),
        (Kind::Negacyclic, true) => Ok(!minus_one_in_powers(qr.q, 2 * qr.n)?),
        (Kind::Negacyclic, false) => {
            let table = cyclotomic_cosets(qr.q, 2 * qr.n, true)?;
            Ok(table.representatives.iter().all(|&i| !table.is_self_reciprocal(i)))
        }
    }
}

/// The odd-order criterion: true iff `ord_n(q)` is odd.
pub fn kenz_check(q: u64, n: u64, t: u32) -> Result<bool> {
    if n.is_multiple_of(2) || t % 2 == 1 {
        return Err(Error::InvariantViolation("requires n odd and t even".into()));
    }
    if gcd(q, n) != 1 {
        return Err(Error::InvariantViolation(format!("gcd({q}, {n}) != 1")));
    }
    if n == 1 {
        return Ok(true);
    }
    Ok(multiplicative_order(q, n)? % 2 == 1)
}

/// Parameter grid for [`scan`]; every combination is tried.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub p: Vec<u64>,
    pub t: Vec<u32>,
    pub r: Vec<usize>,
    pub n: Vec<u64>,
    pub kinds: Vec<Kind>,
    /// Rows with `|R|^n` at most this get a brute-force check of the
    /// constructive witness.
    pub oracle_limit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    pub t: u32,
    pub r: usize,
    pub q: u64,
    pub n: u64,
    pub kind: Kind,
    pub exists: bool,
    /// Order of `q` modulo `n` (cyclic) or `2n` (negacyclic).
    pub order_q: u64,
    pub minus_one_witness: Option<u64>,
    /// `Some(agrees)` when the witness was checked by brute force.
    pub oracle_checked: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkippedRow {
    pub p: u64,
    pub t: u32,
    pub r: usize,
    pub n: u64,
    pub kind: Kind,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub skipped: Vec<SkippedRow>,
}

impl ScanReport {
    pub const COLUMNS: [&'static str; 10] = [
        "p",
        "t",
        "r",
        "q",
        "n",
        "kind",
        "exists",
        "order_q",
        "minus_one_witness",
        "oracle_checked",
    ];
}

type Cell = (u64, u32, usize, u64, Kind);

/// Builds the constructive witness (or confirms its absence) and checks it
/// against `brute_dual`.
fn oracle_row(ring: &RingSpec, n: usize, kind: Kind, exists: bool) -> Result<bool> {
    let lambda = match kind {
        Kind::Cyclic => ring.one(),
        Kind::Negacyclic => ring.from_int(-1),
    };
    let set = Arc::new(primitive_idempotent_set(ring, n, lambda)?);
    let built = build_self_dual(set, true)?;
    match built {
        None => Ok(!exists),
        Some(code) => {
            let words = expand(&code)?;
            let dual = brute_dual(&words, Execution::Sequential)?;
            Ok(exists && dual.same_words(&words))
        }
    }
}

fn scan_cell(cell: &Cell, oracle_limit: u64) -> std::result::Result<ScanRow, SkippedRow> {
    let &(p, t, r, n, kind) = cell;
    let skip = |reason: String| SkippedRow { p, t, r, n, kind, reason };
    let ring = RingSpec::new(p, t, r, None).map_err(|e| skip(e.to_string()))?;
    let q = ring.q();
    let qr = ExistenceQuery { q, n, t, kind };
    let exists = exists_nontrivial_selfdual(&qr).map_err(|e| skip(e.to_string()))?;
    let m = kind.coset_modulus(n);
    let order_q = if m == 1 { 1 } else { multiplicative_order(q, m).map_err(|e| skip(e.to_string()))? };
    let witness = minus_one_witness(q, m).map_err(|e| skip(e.to_string()))?;
    let small = matches!(space_size(&ring, n as usize), Ok(size) if size <= oracle_limit);
    let oracle_checked = if small {
        Some(oracle_row(&ring, n as usize, kind, exists).unwrap_or(false))
    } else {
        None
    };
    Ok(ScanRow {
        p,
        t,
        r,
        q,
        n,
        kind,
        exists,
        order_q,
        minus_one_witness: witness,
        oracle_checked,
    })
}

/// Evaluates every grid cell; rows come back sorted by
/// `(p, t, r, q, n, kind)` whatever the execution mode.
pub fn scan(grid: &ScanGrid, exec: Execution) -> ScanReport {
    let mut cells: Vec<Cell> = Vec::new();
    for &p in &grid.p {
        for &t in &grid.t {
            for &r in &grid.r {
                for &n in &grid.n {
                    for &kind in &grid.kinds {
                        cells.push((p, t, r, n, kind));
                    }
                }
            }
        }
    }
    let mut report = ScanReport::default();
    for res in exec.map(&cells, |c| scan_cell(c, grid.oracle_limit)) {
        match res {
            Ok(row) => report.rows.push(row),
            Err(skip) => report.skipped.push(skip),
        }
    }
    report.rows.sort();
    report.rows.dedup();
    report.skipped.sort();
    report.skipped.dedup();
    report
}
