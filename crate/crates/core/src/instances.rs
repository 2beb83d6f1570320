//! Tope sets of simple oriented matroids.
//!
//! Instances come from three places: the full cube `{+,-}^n`, central
//! hyperplane arrangements given by integer normal vectors, and JSON files.
//! Only necessary conditions for being the tope set of a simple oriented
//! matroid are checked (see [`validate_instance`]).

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fm::{StrictRow, StrictSystem};
use crate::signvec::SignVector;
use crate::validation::ValidationReport;

/// Default bound on the ground set size for anything that enumerates `2^n`
/// sign vectors.
pub const DEFAULT_CAP: usize = 14;
pub const DEFAULT_COORD_BOUND: i64 = 50;
pub const GENERIC_ATTEMPTS: usize = 100;
const MAX_ROW_DRAWS: usize = 10_000;

/// Normal vectors of a central arrangement, one row per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl GeneratorMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidGenerators("no rows".into()))?;
        if dim == 0 {
            return Err(Error::InvalidGenerators("rows have length zero".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::InvalidGenerators(format!(
                    "row {} has length {}, expected {dim}",
                    i + 1,
                    r.len()
                )));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidGenerators(format!("row {} is zero", i + 1)));
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if parallel(&rows[i], &rows[j]) {
                    return Err(Error::InvalidGenerators(format!(
                        "rows {} and {} are parallel",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| {
        (i + 1..a.len())
            .all(|j| i128::from(a[i]) * i128::from(b[j]) == i128::from(a[j]) * i128::from(b[i]))
    })
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl FromStr for GeneratorMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim().parse::<i64>().map_err(|e| {
                            Error::InvalidGenerators(format!("bad coordinate {x:?}: {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

/// Where an instance came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Hypercube,
    Realizable(GeneratorMatrix),
    File(PathBuf),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Hypercube => f.write_str("hypercube"),
            Source::Realizable(g) => write!(f, "realizable:{g}"),
            Source::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "hypercube" {
            Ok(Source::Hypercube)
        } else if let Some(rest) = s.strip_prefix("realizable:") {
            Ok(Source::Realizable(rest.parse()?))
        } else if let Some(rest) = s.strip_prefix("file:") {
            Ok(Source::File(PathBuf::from(rest)))
        } else {
            Err(Error::InvalidArgument(format!(
                "unknown instance source {s:?}"
            )))
        }
    }
}

/// A tope set over the ground set `{1, ..., n}`, sorted and duplicate-free.
#[derive(Clone)]
pub struct OMInstance {
    n: usize,
    topes: Vec<SignVector>,
    source: Source,
    index: HashSet<SignVector>,
}

impl PartialEq for OMInstance {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.topes == other.topes && self.source == other.source
    }
}

impl Eq for OMInstance {}

impl fmt::Debug for OMInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OMInstance")
            .field("n", &self.n)
            .field("topes", &self.topes.len())
            .field("source", &self.source)
            .finish()
    }
}

impl OMInstance {
    /// Sorts the topes canonically. Rejects duplicates and wrong lengths but
    /// performs no structural validation.
    pub fn from_topes(n: usize, mut topes: Vec<SignVector>, source: Source) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySignVector);
        }
        if let Some(bad) = topes.iter().find(|t| t.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        topes.sort();
        if let Some(w) = topes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate tope {}", w[0])));
        }
        let index = topes.iter().copied().collect();
        Ok(Self {
            n,
            topes,
            source,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn contains(&self, t: &SignVector) -> bool {
        self.index.contains(t)
    }

    pub fn is_hypercube(&self) -> bool {
        self.topes.len() as u128 == 1u128 << self.n
    }

    /// Topes adjacent to `t` in the tope graph.
    pub fn neighbors<'a>(&'a self, t: &'a SignVector) -> impl Iterator<Item = SignVector> + 'a {
        (1..=self.n)
            .map(move |e| t.flip(e))
            .filter(|u| self.contains(u))
    }

    pub fn edge_count(&self) -> usize {
        self.topes
            .iter()
            .map(|t| self.neighbors(t).count())
            .sum::<usize>()
            / 2
    }

    /// SHA-256 over the ground size and the sorted tope strings. The source
    /// is not part of the digest.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}\n", self.n).as_bytes());
        for t in &self.topes {
            h.update(t.to_string().as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            n: self.n,
            source: Some(self.source.to_string()),
            topes: self.topes.iter().map(ToString::to_string).collect(),
        };
        let mut text = serde_json::to_string_pretty(&file)?;
        text.push('\n');
        Ok(text)
    }

    /// Parses and validates an instance file. `path` is used in messages and
    /// as the source when the file does not name one.
    pub fn from_json(text: &str, path: &Path) -> Result<Self> {
        let malformed = |line: usize, reason: String| Error::Malformed {
            path: path.to_path_buf(),
            line,
            reason,
        };
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| malformed(e.line(), e.to_string()))?;
        let source = match &file.source {
            Some(s) => s
                .parse()
                .map_err(|e: Error| malformed(line_of(text, "\"source\"", 0), e.to_string()))?,
            None => Source::File(path.to_path_buf()),
        };
        let mut seen = HashSet::new();
        let mut topes = Vec::with_capacity(file.topes.len());
        for raw in &file.topes {
            let quoted = format!("\"{raw}\"");
            let t: SignVector = raw.parse().map_err(|e: Error| {
                malformed(line_of(text, &quoted, 0), format!("tope {raw:?}: {e}"))
            })?;
            if t.len() != file.n {
                return Err(malformed(
                    line_of(text, &quoted, 0),
                    format!("tope {raw} has length {}, expected {}", t.len(), file.n),
                ));
            }
            if !seen.insert(t) {
                return Err(malformed(
                    line_of(text, &quoted, 1),
                    format!("duplicate tope {raw}"),
                ));
            }
            topes.push(t);
        }
        let inst = Self::from_topes(file.n, topes, source)?;
        let report = validate_instance(&inst);
        if !report.is_ok() {
            let names: Vec<String> = report
                .failures()
                .map(|c| format!("{} ({})", c.name, c.detail))
                .collect();
            return Err(Error::Validation(format!(
                "{}: {}",
                path.display(),
                names.join("; ")
            )));
        }
        Ok(inst)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, path)
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    topes: Vec<String>,
}

// 1-based line of the `nth` occurrence of `needle`, or 0 if absent.
fn line_of(text: &str, needle: &str, nth: usize) -> usize {
    text.match_indices(needle)
        .nth(nth)
        .map_or(0, |(pos, _)| text[..pos].matches('\n').count() + 1)
}

pub fn hypercube_instance(n: usize) -> Result<OMInstance> {
    hypercube_instance_capped(n, DEFAULT_CAP)
}

/// The instance whose tope set is all of `{+,-}^n`.
pub fn hypercube_instance_capped(n: usize, cap: usize) -> Result<OMInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "ground set size must be positive".into(),
        ));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let topes = (0..1u64 << n)
        .map(|mask| SignVector::from_negative_mask(n, mask))
        .collect::<Result<Vec<_>>>()?;
    OMInstance::from_topes(n, topes, Source::Hypercube)
}

pub fn realizable_instance(g: &GeneratorMatrix) -> Result<OMInstance> {
    realizable_instance_capped(g, DEFAULT_CAP)
}

/// Topes of the central arrangement with normals `g`: every sign pattern
/// whose open cone `{x : s_i <g_i, x> > 0}` is nonempty.
pub fn realizable_instance_capped(g: &GeneratorMatrix, cap: usize) -> Result<OMInstance> {
    let n = g.len();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    // Fix the sign of element 1 and add negations afterwards.
    let half: Vec<SignVector> = (0..1u64 << (n - 1))
        .into_par_iter()
        .filter_map(|m| {
            let sigma = SignVector::from_negative_mask(n, m << 1).ok()?;
            cone_is_open(g, &sigma).then_some(sigma)
        })
        .collect();
    let topes = half.iter().flat_map(|t| [*t, t.negate()]).collect();
    OMInstance::from_topes(n, topes, Source::Realizable(g.clone()))
}

fn cone_is_open(g: &GeneratorMatrix, sigma: &SignVector) -> bool {
    let mut system = StrictSystem::new(g.dim());
    for (row, s) in g.rows().iter().zip(sigma.signs()) {
        system.push(StrictRow::homogeneous(
            row.iter()
                .map(|&x| BigInt::from(x * i64::from(s)))
                .collect(),
        ));
    }
    system.is_feasible()
}

/// Number of regions of a generic central arrangement of `n` hyperplanes in
/// dimension `d`: `2 * sum_{i<d} C(n-1, i)`.
pub fn region_count(d: usize, n: usize) -> Result<u128> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument("d and n must be positive".into()));
    }
    if d > n {
        return Err(Error::InvalidArgument(format!("d = {d} exceeds n = {n}")));
    }
    if n > 64 {
        return Err(Error::GroundSetTooLarge(n));
    }
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 0..d {
        total += c;
        // C(n-1, i+1) from C(n-1, i)
        c = c * (n as u128 - 1 - i as u128) / (i as u128 + 1);
    }
    Ok(2 * total)
}

/// Seeded random generic arrangement. Rows are drawn uniformly from
/// `[-bound, bound]^d`; zero or parallel rows are redrawn, and the whole
/// matrix is redrawn until its tope count equals [`region_count`].
pub fn generic_arrangement(
    d: usize,
    n: usize,
    seed: u64,
    bound: i64,
    cap: usize,
) -> Result<(GeneratorMatrix, OMInstance)> {
    let target = region_count(d, n)?;
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if bound < 1 {
        return Err(Error::InvalidArgument(
            "coordinate bound must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERIC_ATTEMPTS {
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
        let mut draws = 0usize;
        while rows.len() < n {
            draws += 1;
            if draws > MAX_ROW_DRAWS * n {
                return Err(Error::GenericSearchFailed(GENERIC_ATTEMPTS));
            }
            let row: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
            if row.iter().all(|&x| x == 0) || rows.iter().any(|r| parallel(r, &row)) {
                continue;
            }
            rows.push(row);
        }
        let g = GeneratorMatrix::new(rows)?;
        let inst = realizable_instance_capped(&g, cap)?;
        if inst.topes().len() as u128 == target {
            return Ok((g, inst));
        }
    }
    Err(Error::GenericSearchFailed(GENERIC_ATTEMPTS))
}

/// Necessary conditions for a simple oriented matroid's tope set: closed
/// under negation, no constant, parallel or antiparallel columns, and a
/// connected tope graph.
pub fn validate_instance(inst: &OMInstance) -> ValidationReport {
    let mut report = ValidationReport::default();

    let missing = inst.topes().iter().find(|t| !inst.contains(&t.negate()));
    report.push(
        "central_symmetry",
        missing.is_none(),
        missing.map_or(String::new(), |t| format!("negation of {t} is missing")),
    );

    report.push(
        "simplicity",
        simplicity_problem(inst).is_none(),
        simplicity_problem(inst).unwrap_or_default(),
    );

    let reached = connected_size(inst);
    report.push(
        "connectivity",
        reached == inst.topes().len(),
        if reached == inst.topes().len() {
            String::new()
        } else {
            format!("{reached} of {} topes reachable", inst.topes().len())
        },
    );
    report
}

fn simplicity_problem(inst: &OMInstance) -> Option<String> {
    let n = inst.n();
    let column = |e: usize| -> Vec<bool> { inst.topes().iter().map(|t| t.get(e) < 0).collect() };
    let columns: Vec<Vec<bool>> = (1..=n).map(column).collect();
    for (i, c) in columns.iter().enumerate() {
        if c.iter().all(|&x| x == c[0]) {
            return Some(format!("element {} is constant", i + 1));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if columns[i] == columns[j] {
                return Some(format!("elements {} and {} are parallel", i + 1, j + 1));
            }
            if columns[i].iter().zip(&columns[j]).all(|(a, b)| a != b) {
                return Some(format!("elements {} and {} are antiparallel", i + 1, j + 1));
            }
        }
    }
    None
}

fn connected_size(inst: &OMInstance) -> usize {
    let Some(start) = inst.topes().first() else {
        return 0;
    };
    let mut seen = HashSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some(t) = queue.pop_front() {
        for u in inst.neighbors(&t) {
            if seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    seen.len()
}
