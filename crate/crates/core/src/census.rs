//! Exhaustive census of a switching class: every labelled member, grouped by
//! spectral radius and valency multiset, with optional isomorphism
//! classification of individual cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::{map_chunks, Execution};
use crate::graphcore::{canonical_form, graph6, valency_histogram, CanonicalCode, Graph, Valencies};
use crate::spectra::{adjacency_spectrum, SrgParams};
use crate::twograph::{audit, detect, TwoGraphParams};

/// Enumeration bound: `2^{v−1}` members.
pub const MAX_CENSUS_ORDER: usize = 24;

/// The published table for the symplectic two-graph on 16 vertices, as
/// transcribed: `rho`, `valencies`, `count`.
pub const PRINTED_SYMPLECTIC16_TABLE: &str = include_str!("../data/symplectic16_printed.tsv");

/// The labelled members of a switching class, indexed by a mask over
/// vertices `1..v` (vertex 0 is never switched).
#[derive(Clone, Debug)]
pub struct SwitchingClass {
    n: usize,
    rows: Vec<u64>,
}

impl SwitchingClass {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.order();
        if n > MAX_CENSUS_ORDER {
            return Err(Error::SizeExceeded { what: "switching class order", got: n, limit: MAX_CENSUS_ORDER });
        }
        let rows = (0..n).map(|v| g.row(v).first().copied().unwrap_or(0)).collect();
        Ok(SwitchingClass { n, rows })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `2^{v−1}` (1 for the empty graph on zero vertices).
    pub fn size(&self) -> u64 {
        1u64 << self.n.saturating_sub(1)
    }

    /// Member switched with respect to `U = {i : bit i−1 of mask}`.
    pub fn member(&self, mask: u64) -> Graph {
        let u = mask << 1;
        let all = crate::graphcore::low_mask(self.n);
        let rows: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| if u >> i & 1 == 1 { r ^ (!u & all) } else { r ^ u })
            .collect();
        Graph::from_word_rows(self.n, &rows)
    }

    /// The switching set of `mask` as a vertex set.
    pub fn switching_set(&self, mask: u64) -> crate::graphcore::VertexSet {
        crate::graphcore::VertexSet::from_mask(self.n, mask << 1)
    }
}

/// Visits every member once, in increasing mask order.
pub fn enumerate_switching_class<F: FnMut(u64, &Graph)>(g: &Graph, mut visitor: F) -> Result<u64> {
    let class = SwitchingClass::new(g)?;
    for mask in 0..class.size() {
        visitor(mask, &class.member(mask));
    }
    Ok(class.size())
}

/// Spectral radius scaled by 10⁴ and rounded.
pub fn rho_key(rho: f64) -> i64 {
    (rho * 1e4).round() as i64
}

pub fn format_rho_key(key: i64) -> String {
    let sign = if key < 0 { "-" } else { "" };
    let a = key.unsigned_abs();
    format!("{sign}{}.{:04}", a / 10_000, a % 10_000)
}

fn parse_rho_key(s: &str) -> std::result::Result<i64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("bad spectral radius {s:?}"))?;
    Ok(rho_key(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub rho_key: i64,
    pub valencies: Valencies,
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", format_rho_key(self.rho_key), self.valencies)
    }
}

impl FromStr for CellKey {
    type Err = String;

    /// `rho:valencies`, e.g. `6.0000:6^(16)`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (rho, vals) = s.split_once(':').ok_or_else(|| format!("cell key {s:?} lacks ':'"))?;
        Ok(CellKey { rho_key: parse_rho_key(rho)?, valencies: vals.parse()? })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusCell {
    pub key: CellKey,
    pub count: u64,
    /// Extremes of the unrounded radii that fell in this cell.
    pub rho_min: f64,
    pub rho_max: f64,
    pub iso_classes: Option<usize>,
    pub representatives: Vec<String>,
}

impl CensusCell {
    /// Distinct radii rounding to the same four decimals.
    pub fn has_collision(&self) -> bool {
        self.rho_max - self.rho_min > 1e-6
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusTable {
    pub order: usize,
    pub cells: Vec<CensusCell>,
}

#[derive(Clone, Copy)]
struct Acc {
    count: u64,
    min: f64,
    max: f64,
}

impl Acc {
    fn merge(&mut self, o: &Acc) {
        self.count += o.count;
        self.min = self.min.min(o.min);
        self.max = self.max.max(o.max);
    }
}

fn radius(g: &Graph) -> Result<f64> {
    Ok(adjacency_spectrum(g)?.radius().unwrap_or(0.0))
}

pub fn census_table(g: &Graph) -> Result<CensusTable> {
    census_table_with(g, Execution::default())
}

/// Census with an explicit execution strategy; the output does not depend on it.
pub fn census_table_with(g: &Graph, exec: Execution) -> Result<CensusTable> {
    let class = SwitchingClass::new(g)?;
    let partials = map_chunks(class.size(), exec, |range| -> Result<BTreeMap<CellKey, Acc>> {
        let mut local: BTreeMap<CellKey, Acc> = BTreeMap::new();
        for mask in range {
            let m = class.member(mask);
            let rho = radius(&m)?;
            let key = CellKey { rho_key: rho_key(rho), valencies: valency_histogram(&m) };
            local.entry(key).or_insert(Acc { count: 0, min: rho, max: rho }).merge(&Acc { count: 1, min: rho, max: rho });
        }
        Ok(local)
    });
    let mut merged: BTreeMap<CellKey, Acc> = BTreeMap::new();
    for part in partials {
        for (k, a) in part? {
            merged.entry(k).and_modify(|m| m.merge(&a)).or_insert(a);
        }
    }
    let cells = merged
        .into_iter()
        .map(|(key, a)| CensusCell {
            key,
            count: a.count,
            rho_min: a.min,
            rho_max: a.max,
            iso_classes: None,
            representatives: Vec::new(),
        })
        .collect();
    Ok(CensusTable { order: class.order(), cells })
}

/// Isomorphism classes inside one census cell.
#[derive(Clone, Debug)]
pub struct IsoClasses {
    pub key: CellKey,
    pub members: u64,
    /// One entry per class, ordered by canonical code: a graph6
    /// representative (first member in mask order) and the class size.
    pub classes: Vec<(String, u64)>,
}

pub fn iso_classify_cell(g: &Graph, key: &CellKey) -> Result<IsoClasses> {
    iso_classify_cell_with(g, key, Execution::default())
}

pub fn iso_classify_cell_with(g: &Graph, key: &CellKey, exec: Execution) -> Result<IsoClasses> {
    let class = SwitchingClass::new(g)?;
    let partials = map_chunks(class.size(), exec, |range| -> Result<BTreeMap<CanonicalCode, (u64, u64)>> {
        let mut local: BTreeMap<CanonicalCode, (u64, u64)> = BTreeMap::new();
        for mask in range {
            let m = class.member(mask);
            if valency_histogram(&m) != key.valencies || rho_key(radius(&m)?) != key.rho_key {
                continue;
            }
            let e = local.entry(canonical_form(&m)?).or_insert((mask, 0));
            e.1 += 1;
        }
        Ok(local)
    });
    let mut merged: BTreeMap<CanonicalCode, (u64, u64)> = BTreeMap::new();
    for part in partials {
        for (code, (first, n)) in part? {
            merged
                .entry(code)
                .and_modify(|e| {
                    e.0 = e.0.min(first);
                    e.1 += n;
                })
                .or_insert((first, n));
        }
    }
    if merged.is_empty() {
        return Err(Error::UnknownCell(key.to_string()));
    }
    let members = merged.values().map(|&(_, n)| n).sum();
    let classes = merged.into_values().map(|(first, n)| (graph6::encode(&class.member(first)), n)).collect();
    Ok(IsoClasses { key: key.clone(), members, classes })
}

impl CensusTable {
    pub fn total(&self) -> u64 {
        self.cells.iter().map(|c| c.count).sum()
    }

    pub fn cell(&self, key: &CellKey) -> Option<&CensusCell> {
        self.cells.iter().find(|c| &c.key == key)
    }

    pub fn cells_with_rho(&self, key: i64) -> impl Iterator<Item = &CensusCell> {
        self.cells.iter().filter(move |c| c.key.rho_key == key)
    }

    pub fn collisions(&self) -> Vec<&CensusCell> {
        self.cells.iter().filter(|c| c.has_collision()).collect()
    }

    /// Fills in isomorphism data for the given cell.
    pub fn classify(&mut self, g: &Graph, key: &CellKey, exec: Execution) -> Result<IsoClasses> {
        let cell = self.cells.iter_mut().find(|c| &c.key == key).ok_or_else(|| Error::UnknownCell(key.to_string()))?;
        let iso = iso_classify_cell_with(g, key, exec)?;
        cell.iso_classes = Some(iso.classes.len());
        cell.representatives = iso.classes.iter().map(|(s, _)| s.clone()).collect();
        Ok(iso)
    }

    /// TSV with header `rho, valencies, count` (plus `iso_classes` when any
    /// cell has been classified; unclassified cells print `-`).
    pub fn to_tsv(&self) -> String {
        let with_iso = self.cells.iter().any(|c| c.iso_classes.is_some());
        let mut out = String::from(if with_iso { "rho\tvalencies\tcount\tiso_classes\n" } else { "rho\tvalencies\tcount\n" });
        for c in &self.cells {
            out.push_str(&format!("{}\t{}\t{}", format_rho_key(c.key.rho_key), c.key.valencies, c.count));
            if with_iso {
                match c.iso_classes {
                    Some(k) => out.push_str(&format!("\t{k}")),
                    None => out.push_str("\t-"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Sidecar lines `rho<TAB>valencies<TAB>graph6`, one per representative.
    pub fn representatives_tsv(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            for r in &c.representatives {
                out.push_str(&format!("{}\t{}\t{r}\n", format_rho_key(c.key.rho_key), c.key.valencies));
            }
        }
        out
    }
}

/// A row of a stored census table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub key: CellKey,
    pub count: u64,
    pub iso_classes: Option<usize>,
}

/// Parses the TSV written by [`CensusTable::to_tsv`]. Blank lines and lines
/// starting with `#` are skipped; the header line is optional.
pub fn parse_table(text: &str) -> std::result::Result<Vec<TableRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') || line.starts_with("rho\t") {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(format!("line {}: expected at least 3 tab-separated fields", lineno + 1));
        }
        let key = CellKey { rho_key: parse_rho_key(fields[0])?, valencies: fields[1].parse()? };
        let count = fields[2].trim().parse().map_err(|_| format!("line {}: bad count {:?}", lineno + 1, fields[2]))?;
        let iso_classes = match fields.get(3).map(|s| s.trim()) {
            None | Some("-") | Some("") => None,
            Some(s) => Some(s.parse().map_err(|_| format!("line {}: bad iso count {s:?}", lineno + 1))?),
        };
        rows.push(TableRow { key, count, iso_classes });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableDiff {
    /// Same key, different count: `(key, computed, reference)`.
    Count(CellKey, u64, u64),
    /// In the reference only.
    Missing(CellKey, u64),
    /// Computed only.
    Extra(CellKey, u64),
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDiff::Count(k, c, r) => write!(f, "count\t{k}\tcomputed={c}\treference={r}"),
            TableDiff::Missing(k, r) => write!(f, "missing\t{k}\treference={r}"),
            TableDiff::Extra(k, c) => write!(f, "extra\t{k}\tcomputed={c}"),
        }
    }
}

/// Row-by-row disagreement between a computed census and a reference table.
pub fn compare_tables(table: &CensusTable, reference: &[TableRow]) -> Vec<TableDiff> {
    let computed: BTreeMap<&CellKey, u64> = table.cells.iter().map(|c| (&c.key, c.count)).collect();
    let mut refs: BTreeMap<&CellKey, u64> = BTreeMap::new();
    for r in reference {
        *refs.entry(&r.key).or_default() += r.count;
    }
    let keys: BTreeSet<&CellKey> = computed.keys().chain(refs.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|k| match (computed.get(k), refs.get(k)) {
            (Some(&c), Some(&r)) if c != r => Some(TableDiff::Count(k.clone(), c, r)),
            (Some(_), Some(_)) => None,
            (Some(&c), None) => Some(TableDiff::Extra(k.clone(), c)),
            (None, Some(&r)) => Some(TableDiff::Missing(k.clone(), r)),
            (None, None) => None,
        })
        .collect()
}

/// Audit of every member of a switching class.
#[derive(Clone, Debug)]
pub struct ClassAudit {
    pub params: TwoGraphParams,
    pub members: u64,
    pub disconnected: u64,
    pub few_eigenvalues: u64,
    pub bipartite: u64,
    /// Certified SRG parameter sets seen, with counts.
    pub srgs: BTreeMap<SrgParams, u64>,
    /// `(mask, finding)` for every violation.
    pub violations: Vec<(u64, String)>,
}

pub fn audit_class(g: &Graph, exec: Execution) -> Result<ClassAudit> {
    let params = detect(g)?;
    let class = SwitchingClass::new(g)?;
    let partials = map_chunks(class.size(), exec, |range| -> Result<ClassAudit> {
        let mut part = ClassAudit {
            params,
            members: 0,
            disconnected: 0,
            few_eigenvalues: 0,
            bipartite: 0,
            srgs: BTreeMap::new(),
            violations: Vec::new(),
        };
        for mask in range {
            let m = class.member(mask);
            let rep = audit(&m, &params)?;
            part.members += 1;
            part.disconnected += u64::from(!rep.connected);
            part.few_eigenvalues += u64::from(rep.distinct_eigenvalues <= 3);
            part.bipartite += u64::from(rep.bipartite);
            if let Some(p) = rep.srg {
                *part.srgs.entry(p).or_default() += 1;
            }
            part.violations.extend(rep.violations.into_iter().map(|v| (mask, v)));
        }
        Ok(part)
    });
    let mut total = ClassAudit {
        params,
        members: 0,
        disconnected: 0,
        few_eigenvalues: 0,
        bipartite: 0,
        srgs: BTreeMap::new(),
        violations: Vec::new(),
    };
    for p in partials {
        let p = p?;
        total.members += p.members;
        total.disconnected += p.disconnected;
        total.few_eigenvalues += p.few_eigenvalues;
        total.bipartite += p.bipartite;
        for (k, c) in p.srgs {
            *total.srgs.entry(k).or_default() += c;
        }
        total.violations.extend(p.violations);
    }
    Ok(total)
}
