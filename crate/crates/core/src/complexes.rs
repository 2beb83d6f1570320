//! Abstract simplicial complexes given by facets, and their long f-vectors.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{Binomials, IntVector};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::signvec::{GroundSubset, SignVector};

/// Largest vertex set whose faces are enumerated explicitly.
pub const FACE_CAP: usize = 20;

/// A complex on the vertex set `{1, ..., n}`, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<GroundSubset>,
}

impl SimplicialComplex {
    /// The complex generated by `generators`: duplicates and sets contained
    /// in other generators are dropped.
    pub fn from_generators(n: usize, generators: &[GroundSubset]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyList);
        }
        if let Some(g) = generators.iter().find(|g| g.ground_size() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                found: g.ground_size(),
            });
        }
        let mut facets: Vec<GroundSubset> = Vec::new();
        for g in generators {
            let covered = generators
                .iter()
                .any(|h| g.is_subset(h) && g.mask() != h.mask());
            if !covered && !facets.contains(g) {
                facets.push(*g);
            }
        }
        facets.sort();
        Ok(Self { n, facets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[GroundSubset] {
        &self.facets
    }

    /// Every face as a bitmask, the empty face included.
    pub fn faces(&self) -> Result<HashSet<u64>> {
        if self.n > FACE_CAP {
            return Err(Error::CapExceeded {
                n: self.n,
                cap: FACE_CAP,
            });
        }
        let mut faces = HashSet::new();
        for f in &self.facets {
            let full = f.mask();
            let mut sub = full;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        Ok(faces)
    }

    pub fn contains_face(&self, face: &GroundSubset) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }
}

/// Face counts by cardinality, zero-padded to length `t + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongFVector {
    t: usize,
    entries: IntVector,
}

impl LongFVector {
    pub fn new(t: usize, entries: IntVector) -> Result<Self> {
        if entries.len() != t + 1 {
            return Err(Error::LengthMismatch {
                expected: t + 1,
                found: entries.len(),
            });
        }
        if let Some((index, value)) = entries
            .entries()
            .iter()
            .enumerate()
            .find(|(_, x)| x.is_negative())
        {
            return Err(Error::NegativeOmega {
                index,
                value: value.to_string(),
            });
        }
        Ok(Self { t, entries })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &IntVector {
        &self.entries
    }

    /// The same counts padded to a larger `t`.
    pub fn padded(&self, t: usize) -> Result<Self> {
        if t < self.t {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink a long f-vector from t = {} to t = {t}",
                self.t
            )));
        }
        Ok(Self {
            t,
            entries: self.entries.padded(t + 1),
        })
    }
}

/// `Lambda(T, R)`: facets are the inclusion-maximal sets
/// `[n] - S(T, Q)` over the members `Q` of the decomposition of `T`.
pub fn lambda_complex(tope: &SignVector, d: &Decomposition) -> Result<SimplicialComplex> {
    if d.tope() != tope {
        return Err(Error::InvalidArgument(format!(
            "decomposition is of {}, not {tope}",
            d.tope()
        )));
    }
    let generators = d
        .members()
        .iter()
        .map(|q| Ok(tope.separation_set(q)?.complement()))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_generators(tope.len(), &generators)
}

pub fn long_f_vector(k: &SimplicialComplex, t: usize) -> Result<LongFVector> {
    if t < k.n() {
        return Err(Error::InvalidArgument(format!(
            "padding t = {t} is below the vertex count {}",
            k.n()
        )));
    }
    let mut counts = vec![0u64; t + 1];
    for face in k.faces()? {
        counts[face.count_ones() as usize] += 1;
    }
    LongFVector::new(
        t,
        IntVector::new(counts.into_iter().map(BigInt::from).collect()),
    )
}

/// `beta(m; t) = (C(m, 0), ..., C(m, t))`.
pub fn beta_vector(m: usize, t: usize) -> Result<LongFVector> {
    if m == 0 || m > t {
        return Err(Error::InvalidArgument(format!(
            "beta vector needs 0 < m <= t, got m = {m}, t = {t}"
        )));
    }
    let b = Binomials::new(m);
    LongFVector::new(
        t,
        IntVector::new((0..=t).map(|j| b.choose(m, j as isize)).collect()),
    )
}

/// The boundary of the simplex on `{1, ..., k}`, as a complex on `[t]`.
pub fn simplex_boundary(k: usize, t: usize) -> Result<SimplicialComplex> {
    if k == 0 || k > t {
        return Err(Error::InvalidArgument(format!(
            "simplex boundary needs 1 <= k <= t, got k = {k}, t = {t}"
        )));
    }
    let full = GroundSubset::from_members(t, 1..=k)?;
    let facets = if k == 1 {
        vec![GroundSubset::empty(t)?]
    } else {
        (1..=k)
            .map(|drop| GroundSubset::from_mask(t, full.mask() & !(1 << (drop - 1))))
            .collect::<Result<Vec<_>>>()?
    };
    SimplicialComplex::from_generators(t, &facets)
}
