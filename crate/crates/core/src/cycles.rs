//! Symmetric cycles in tope graphs.
//!
//! A symmetric cycle on a ground set of size `n` is a closed walk
//! `R^0, ..., R^{2n-1}` through distinct topes in which consecutive topes
//! differ in exactly one element and `R^{k+n} = -R^k`. The first half is a
//! shortest path from `R^0` to `-R^0`, so it flips every element once.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::OMInstance;
use crate::signvec::SignVector;
use crate::validation::ValidationReport;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricCycle {
    instance_digest: String,
    vertices: Vec<SignVector>,
}

impl SymmetricCycle {
    /// Wraps a vertex list without checking it; see [`validate_cycle`].
    pub fn from_vertices(instance_digest: String, vertices: Vec<SignVector>) -> Self {
        Self {
            instance_digest,
            vertices,
        }
    }

    /// Builds the full cycle from its first half `R^0, ..., R^{n-1}`.
    pub fn from_half(instance_digest: String, half: Vec<SignVector>) -> Self {
        let negated: Vec<SignVector> = half.iter().map(SignVector::negate).collect();
        let mut vertices = half;
        vertices.extend(negated);
        Self::from_vertices(instance_digest, vertices)
    }

    pub fn instance_digest(&self) -> &str {
        &self.instance_digest
    }

    /// Ground set size, i.e. half the cycle length.
    pub fn n(&self) -> usize {
        self.vertices.first().map_or(0, SignVector::len)
    }

    pub fn vertices(&self) -> &[SignVector] {
        &self.vertices
    }

    /// `R^k` with the index taken modulo the cycle length.
    pub fn vertex(&self, k: usize) -> SignVector {
        self.vertices[k % self.vertices.len()]
    }

    /// Element flipped on each step `R^k -> R^{k+1}`, or `None` where the
    /// step is not a single flip.
    pub fn flips(&self) -> Vec<Option<usize>> {
        let len = self.vertices.len();
        (0..len)
            .map(|k| {
                let sep = self.vertices[k]
                    .separation_set(&self.vertices[(k + 1) % len])
                    .ok()?;
                (sep.len() == 1).then(|| sep.members()[0])
            })
            .collect()
    }

    /// Applies `reorient(., w)` to every vertex.
    pub fn reoriented(&self, w: &SignVector, instance_digest: String) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.reorient(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vertices(instance_digest, vertices))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Loads a cycle file and checks it against `inst`: the digest must
    /// match and every cycle invariant must hold.
    pub fn load(path: &Path, inst: &OMInstance) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let cycle: SymmetricCycle = serde_json::from_str(&text).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: e.line(),
            reason: e.to_string(),
        })?;
        if cycle.instance_digest != inst.digest() {
            return Err(Error::Validation(format!(
                "{}: cycle belongs to instance {}, not {}",
                path.display(),
                cycle.instance_digest,
                inst.digest()
            )));
        }
        let report = validate_cycle(inst, &cycle);
        if !report.is_ok() {
            return Err(Error::Validation(format!("{}:\n{report}", path.display())));
        }
        Ok(cycle)
    }
}

/// The standard cycle on the cube: `R^k` is `base` with the elements
/// `order[0..k]` negated, and the second half follows by antipodality.
pub fn distinguished_cycle(
    inst: &OMInstance,
    base: &SignVector,
    order: &[usize],
) -> Result<SymmetricCycle> {
    if !inst.is_hypercube() {
        return Err(Error::InvalidArgument(
            "the distinguished cycle needs a hypercube instance".into(),
        ));
    }
    let n = inst.n();
    if base.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: base.len(),
        });
    }
    check_permutation(order, n)?;
    let mut half = Vec::with_capacity(n);
    let mut current = *base;
    half.push(current);
    for &e in &order[..n - 1] {
        current = current.flip(e);
        half.push(current);
    }
    Ok(SymmetricCycle::from_half(inst.digest(), half))
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if order.len() != n {
        return Err(Error::InvalidArgument(format!(
            "order has {} entries, expected a permutation of 1..={n}",
            order.len()
        )));
    }
    for &e in order {
        if e == 0 || e > n || seen[e] {
            return Err(Error::InvalidArgument(format!(
                "order {order:?} is not a permutation of 1..={n}"
            )));
        }
        seen[e] = true;
    }
    Ok(())
}

/// Depth-first search for a symmetric cycle through `start`.
///
/// Elements are tried in ascending order and the first complete half-cycle
/// wins. Every visited sign vector counts against `budget`; `Ok(None)` means
/// the budget ran out, which says nothing about existence.
pub fn find_symmetric_cycle(
    inst: &OMInstance,
    start: &SignVector,
    budget: u64,
) -> Result<Option<SymmetricCycle>> {
    if !inst.contains(start) {
        return Err(Error::NotATope(start.to_string()));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument(
            "search budget must be positive".into(),
        ));
    }
    let mut search = Search {
        inst,
        n: inst.n(),
        nodes: 1,
        budget,
        path: vec![*start],
    };
    if search.extend(0)? {
        Ok(Some(SymmetricCycle::from_half(inst.digest(), search.path)))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    inst: &'a OMInstance,
    n: usize,
    nodes: u64,
    budget: u64,
    path: Vec<SignVector>,
}

impl Search<'_> {
    fn extend(&mut self, flipped: u64) -> Result<bool> {
        let current = *self.path.last().expect("path starts nonempty");
        if self.path.len() == self.n {
            // the single unflipped element closes onto -R^0
            return Ok(self.inst.contains(&current.negate()));
        }
        for e in 1..=self.n {
            if flipped >> (e - 1) & 1 == 1 {
                continue;
            }
            let next = current.flip(e);
            if !self.inst.contains(&next) {
                continue;
            }
            if self.nodes >= self.budget {
                return Ok(false);
            }
            self.nodes += 1;
            self.path.push(next);
            if self.extend(flipped | 1 << (e - 1))? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Checks length, membership, distinctness, adjacency, antipodality and
/// that every element is flipped exactly twice.
pub fn validate_cycle(inst: &OMInstance, c: &SymmetricCycle) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = inst.n();
    let verts = c.vertices();

    report.push(
        "length",
        verts.len() == 2 * n,
        format!("{} vertices, expected {}", verts.len(), 2 * n),
    );

    let wrong_len: Vec<String> = verts
        .iter()
        .filter(|v| v.len() != n)
        .map(ToString::to_string)
        .collect();
    let outside: Vec<String> = verts
        .iter()
        .filter(|v| !inst.contains(v))
        .map(ToString::to_string)
        .collect();
    report.push(
        "membership",
        wrong_len.is_empty() && outside.is_empty(),
        if outside.is_empty() {
            String::new()
        } else {
            format!("not topes: {}", outside.join(", "))
        },
    );
    if !wrong_len.is_empty() || verts.is_empty() {
        return report;
    }

    let distinct: HashSet<&SignVector> = verts.iter().collect();
    report.push(
        "distinctness",
        distinct.len() == verts.len(),
        format!("{} distinct of {}", distinct.len(), verts.len()),
    );

    let flips = c.flips();
    let bad_steps: Vec<usize> = flips
        .iter()
        .enumerate()
        .filter(|(_, f)| f.is_none())
        .map(|(k, _)| k)
        .collect();
    report.push(
        "adjacency",
        bad_steps.is_empty(),
        if bad_steps.is_empty() {
            String::new()
        } else {
            format!("non-adjacent steps at positions {bad_steps:?}")
        },
    );

    let half = verts.len() / 2;
    let antipodal =
        verts.len().is_multiple_of(2) && (0..half).all(|k| verts[k + half] == verts[k].negate());
    report.push("antipodality", antipodal, "");

    let mut counts = vec![0usize; n + 1];
    for e in flips.iter().flatten() {
        counts[*e] += 1;
    }
    let twice = bad_steps.is_empty() && counts[1..].iter().all(|&k| k == 2);
    report.push("flip_count", twice, "");
    report
}
