//! Binomial transforms of long f-vectors.
//!
//! All matrices have order `t + 1` with rows and columns indexed from zero:
//!
//! * back identity `U(t)`: `delta_{i+j, t}`;
//! * forward shift `T(t)`: `delta_{j-i, 1}`;
//! * signed binomial `S(t)`: `(-1)^{j-i} C(t-i, j-i)`;
//! * kernel `M(t) = U S S^T U`, whose entries are `(-1)^{i+j} C(i+j, i)`.
//!
//! For a complex `Lambda` on `m <= t` vertices the complementary vector
//! `(beta(m; t) - f(Lambda; t)) T^{t-m} U` is again a long f-vector, and its
//! product with `S(t)` is the long h-vector. Vectors are rows throughout.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{solve_in_span, Binomials, IntMatrix, IntVector};
use crate::complexes::{beta_vector, long_f_vector, simplex_boundary, LongFVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    BackIdentity,
    ForwardShift,
    SignedBinomial,
    MKernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// `h_k = h_{t-k}`
    Symmetric,
    /// `h_k = -h_{t-k}`
    Antisymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn delta(b: bool) -> BigInt {
    if b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Builds one of the four transforms from its entry formula. The kernel is
/// additionally checked against the product `U S S^T U`.
pub fn build_transform(kind: TransformKind, t: usize) -> IntMatrix {
    let order = t + 1;
    match kind {
        TransformKind::BackIdentity => IntMatrix::from_fn(order, order, |i, j| delta(i + j == t)),
        TransformKind::ForwardShift => IntMatrix::from_fn(order, order, |i, j| delta(j == i + 1)),
        TransformKind::SignedBinomial => {
            let b = Binomials::new(t);
            IntMatrix::from_fn(order, order, |i, j| {
                if j < i {
                    BigInt::zero()
                } else {
                    sign(j - i) * b.choose(t - i, (j - i) as isize)
                }
            })
        }
        TransformKind::MKernel => {
            let b = Binomials::new(2 * t);
            let m = IntMatrix::from_fn(order, order, |i, j| {
                sign(i + j) * b.choose(i + j, i as isize)
            });
            let u = build_transform(TransformKind::BackIdentity, t);
            let s = build_transform(TransformKind::SignedBinomial, t);
            let product = u
                .mul(&s)
                .and_then(|us| us.mul(&s.transpose()))
                .and_then(|x| x.mul(&u))
                .expect("square matrices of equal order");
            assert_eq!(
                m, product,
                "kernel closed form disagrees with U S S^T U at t = {t}"
            );
            m
        }
    }
}

/// `C(t-i, j-i)`: the inverse of [`TransformKind::SignedBinomial`].
pub fn unsigned_binomial(t: usize) -> IntMatrix {
    let b = Binomials::new(t);
    IntMatrix::from_fn(t + 1, t + 1, |i, j| {
        if j < i {
            BigInt::zero()
        } else {
            b.choose(t - i, (j - i) as isize)
        }
    })
}

/// The four transforms for one `t`.
#[derive(Clone, Debug)]
pub struct Transforms {
    t: usize,
    back: IntMatrix,
    shift: IntMatrix,
    signed: IntMatrix,
    kernel: IntMatrix,
}

impl Transforms {
    pub fn new(t: usize) -> Self {
        Self {
            t,
            back: build_transform(TransformKind::BackIdentity, t),
            shift: build_transform(TransformKind::ForwardShift, t),
            signed: build_transform(TransformKind::SignedBinomial, t),
            kernel: build_transform(TransformKind::MKernel, t),
        }
    }

    /// Process-wide memoized instance.
    pub fn shared(t: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Transforms>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(t)
            .or_insert_with(|| Arc::new(Self::new(t)))
            .clone()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn get(&self, kind: TransformKind) -> &IntMatrix {
        match kind {
            TransformKind::BackIdentity => &self.back,
            TransformKind::ForwardShift => &self.shift,
            TransformKind::SignedBinomial => &self.signed,
            TransformKind::MKernel => &self.kernel,
        }
    }

    fn check_padding(&self, f: &LongFVector) -> Result<()> {
        if f.t() != self.t {
            return Err(Error::LengthMismatch {
                expected: self.t + 1,
                found: f.t() + 1,
            });
        }
        Ok(())
    }

    /// `(beta(m; t) - f) T^{t-m}`, the shared prefix of both routes.
    fn shifted_complement(&self, f: &LongFVector, m: usize) -> Result<IntVector> {
        self.check_padding(f)?;
        let beta = beta_vector(m, self.t)?;
        let mut v = beta.entries().checked_sub(f.entries())?;
        for _ in 0..self.t - m {
            v = v.mul_matrix(&self.shift)?;
        }
        Ok(v)
    }

    /// `(beta(m; t) - f) T^{t-m} U` without the sign check.
    pub fn omega_raw(&self, f: &LongFVector, m: usize) -> Result<IntVector> {
        self.shifted_complement(f, m)?.mul_matrix(&self.back)
    }

    pub fn omega_long_f(&self, f: &LongFVector, m: usize) -> Result<LongFVector> {
        LongFVector::new(self.t, self.omega_raw(f, m)?)
    }

    pub fn long_h_vector(&self, f: &LongFVector, m: usize) -> Result<LongHVector> {
        let entries = self.omega_raw(f, m)?.mul_matrix(&self.signed)?;
        Ok(LongHVector { t: self.t, entries })
    }

    /// `(beta(s;t) - f1) T^{t-s} M(t) (beta(t;t) - f2)^T`.
    pub fn raw_orthogonality(
        &self,
        f1: &LongFVector,
        s: usize,
        f2: &LongFVector,
    ) -> Result<BigInt> {
        let left = self.shifted_complement(f1, s)?.mul_matrix(&self.kernel)?;
        let right = self.shifted_complement(f2, self.t)?;
        left.dot(&right)
    }

    pub fn orthogonality(
        &self,
        f1: &LongFVector,
        s: usize,
        f2: &LongFVector,
    ) -> Result<OrthogonalityReport> {
        if s > self.t {
            return Err(Error::InvalidArgument(format!(
                "s = {s} exceeds t = {}",
                self.t
            )));
        }
        let h1 = self.long_h_vector(f1, s)?;
        let h2 = self.long_h_vector(f2, self.t)?;
        let hh_value = h1.entries.dot(&h2.entries)?;
        let raw_value = self.raw_orthogonality(f1, s, f2)?;
        if raw_value != hh_value {
            return Err(Error::InternalInconsistency(format!(
                "kernel form {raw_value} differs from <h1, h2> = {hh_value}"
            )));
        }
        let orthogonal = raw_value.is_zero();
        Ok(OrthogonalityReport {
            h1,
            h2,
            raw_value,
            hh_value,
            orthogonal,
        })
    }
}

/// A long h-vector; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LongHVector {
    t: usize,
    entries: IntVector,
}

impl LongHVector {
    pub fn new(entries: IntVector) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(Self {
            t: entries.len() - 1,
            entries,
        })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(IntVector::from_i64(entries))
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &IntVector {
        &self.entries
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub h1: LongHVector,
    pub h2: LongHVector,
    pub raw_value: BigInt,
    pub hh_value: BigInt,
    pub orthogonal: bool,
}

pub fn omega_long_f(f: &LongFVector, m: usize, t: usize) -> Result<LongFVector> {
    Transforms::shared(t).omega_long_f(f, m)
}

pub fn long_h_vector(f: &LongFVector, m: usize, t: usize) -> Result<LongHVector> {
    Transforms::shared(t).long_h_vector(f, m)
}

pub fn check_dehn_sommerville(h: &LongHVector, variant: Symmetry) -> bool {
    let e = h.entries.entries();
    let t = h.t;
    (0..=t).all(|k| match variant {
        Symmetry::Symmetric => e[k] == e[t - k],
        Symmetry::Antisymmetric => e[k] == -&e[t - k],
    })
}

/// `<h, iota(t)>`, the entry sum.
pub fn iota_product(h: &LongHVector) -> BigInt {
    h.entries.sum()
}

/// `sum_j (-1)^j g_j`.
pub fn alternating_sum(g: &IntVector) -> BigInt {
    g.entries()
        .iter()
        .enumerate()
        .map(|(j, x)| if j % 2 == 0 { x.clone() } else { -x })
        .sum()
}

/// Long h-vector of the boundary of the simplex on `[k]`, padded to `t`.
pub fn simplex_boundary_h(k: usize, t: usize) -> Result<LongHVector> {
    let f = long_f_vector(&simplex_boundary(k, t)?, t)?;
    let entries = f
        .entries()
        .mul_matrix(Transforms::shared(t).get(TransformKind::SignedBinomial))?;
    Ok(LongHVector { t, entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMembership {
    pub member: bool,
    /// Sizes `k` of the simplex boundaries spanning the subspace.
    pub basis: Vec<usize>,
    /// Coefficients on `basis`, empty when `member` is false.
    pub coefficients: Vec<BigRational>,
}

/// Sizes of the simplex boundaries whose long h-vectors span the subspace
/// that should hold `h(Omega'; t)`: odd `k <= s - 2` when `t` is even,
/// even `k <= s - 2` when `t` is odd.
pub fn span_basis(s: usize, t: usize) -> Vec<usize> {
    let first = if t.is_multiple_of(2) { 1 } else { 2 };
    (first..=s.saturating_sub(2)).step_by(2).collect()
}

pub fn span_membership(h: &LongHVector, s: usize, t: usize) -> Result<SpanMembership> {
    if h.t != t {
        return Err(Error::LengthMismatch {
            expected: t + 1,
            found: h.t + 1,
        });
    }
    if s >= t {
        return Err(Error::InvalidArgument(format!(
            "span test needs s < t, got s = {s}, t = {t}"
        )));
    }
    let basis = span_basis(s, t);
    let columns = basis
        .iter()
        .map(|&k| Ok(simplex_boundary_h(k, t)?.entries))
        .collect::<Result<Vec<_>>>()?;
    match solve_in_span(&columns, &h.entries)? {
        Some(coefficients) => Ok(SpanMembership {
            member: true,
            basis,
            coefficients,
        }),
        None => Ok(SpanMembership {
            member: false,
            basis,
            coefficients: Vec::new(),
        }),
    }
}

/// `Some(1)` if `h` is fixed by the back identity, `Some(-1)` if negated,
/// `None` otherwise. `U` is symmetric, so both sides give the same answer;
/// the zero vector reports `Some(1)`.
pub fn eigenvector_check(h: &LongHVector, side: Side) -> Option<i8> {
    let u = Transforms::shared(h.t);
    let image = match side {
        Side::Left => h.entries.mul_matrix(u.get(TransformKind::BackIdentity)),
        Side::Right => u.get(TransformKind::BackIdentity).mul_vector(&h.entries),
    }
    .expect("back identity has the vector's order");
    if image == h.entries {
        Some(1)
    } else if image == -&h.entries {
        Some(-1)
    } else {
        None
    }
}

/// Both routes to `<h(Omega'; t), h(Omega''; t)>`; errors if they differ.
pub fn orthogonality_check(
    f1: &LongFVector,
    s: usize,
    f2: &LongFVector,
    t: usize,
) -> Result<OrthogonalityReport> {
    Transforms::shared(t).orthogonality(f1, s, f2)
}
