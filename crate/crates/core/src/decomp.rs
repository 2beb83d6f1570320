//! Decompositions of topes along a symmetric cycle.
//!
//! Any `n` consecutive vertices of a symmetric cycle form a basis of `Q^n`,
//! so a tope `T` has a unique expansion `T = sum_k lambda_k R^k` over the
//! window `R^0, ..., R^{n-1}`. For a tope the coefficients lie in
//! `{-1, 0, 1}`, and the vertices `R^k` (for `lambda_k = 1`) together with
//! `-R^k` (for `lambda_k = -1`) form the unique inclusion-minimal subset of
//! the cycle summing to `T`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{bareiss_solve, IntMatrix};
use crate::cycles::SymmetricCycle;
use crate::error::{Error, Result};
use crate::instances::OMInstance;
use crate::signvec::{tope_sum, SignVector};

/// Largest ground set the subset-enumeration oracle accepts.
pub const BRUTE_FORCE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    tope: SignVector,
    window: usize,
    #[serde(rename = "lambda")]
    coefficients: Vec<i8>,
    members: Vec<SignVector>,
}

impl Decomposition {
    pub fn tope(&self) -> &SignVector {
        &self.tope
    }

    /// Index of the first cycle vertex of the window the coefficients refer to.
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn coefficients(&self) -> &[i8] {
        &self.coefficients
    }

    /// Members in window order.
    pub fn members(&self) -> &[SignVector] {
        &self.members
    }

    pub fn member_set(&self) -> BTreeSet<SignVector> {
        self.members.iter().copied().collect()
    }

    /// `|Q(T, R)|`.
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Computes `Q(T, R)` over the window starting at `R^0`.
pub fn decompose(
    inst: &OMInstance,
    cycle: &SymmetricCycle,
    tope: &SignVector,
) -> Result<Decomposition> {
    if !inst.contains(tope) {
        return Err(Error::NotATope(tope.to_string()));
    }
    decompose_in_window(cycle, tope, 0)
}

/// Solves `sum_k lambda_k R^{w+k} = T` for the window starting at `w`.
pub fn decompose_in_window(
    cycle: &SymmetricCycle,
    tope: &SignVector,
    window: usize,
) -> Result<Decomposition> {
    let n = cycle.n();
    if tope.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: tope.len(),
        });
    }
    if cycle.vertices().len() != 2 * n {
        return Err(Error::InternalInconsistency(format!(
            "cycle has {} vertices, expected {}",
            cycle.vertices().len(),
            2 * n
        )));
    }
    let columns: Vec<SignVector> = (0..n).map(|k| cycle.vertex(window + k)).collect();
    let a = IntMatrix::from_fn(n, n, |i, k| BigInt::from(columns[k].get(i + 1)));
    let lambda = bareiss_solve(&a, &tope.to_ints())?.ok_or_else(|| {
        Error::InternalInconsistency(format!("window at {window} of the cycle is singular"))
    })?;

    let mut coefficients = Vec::with_capacity(n);
    let mut members = Vec::new();
    for (k, x) in lambda.iter().enumerate() {
        let c = if x.is_zero() {
            0
        } else if x.is_one() {
            1
        } else if (-x).is_one() {
            -1
        } else {
            return Err(Error::InternalInconsistency(format!(
                "coefficient {k} of {tope} is {x}, outside {{-1, 0, 1}}"
            )));
        };
        coefficients.push(c);
        match c {
            1 => members.push(columns[k]),
            -1 => members.push(columns[k].negate()),
            _ => {}
        }
    }
    let sum = tope_sum(&members)?;
    if sum != tope.to_ints() {
        return Err(Error::InternalInconsistency(format!(
            "members of {tope} sum to {sum}"
        )));
    }
    Ok(Decomposition {
        tope: *tope,
        window,
        coefficients,
        members,
    })
}

/// Independent oracle: enumerates all `2^{2n}` subsets of the cycle's
/// vertices, picks the smallest one summing to `T`, and checks that it is
/// contained in every summing subset (hence the unique inclusion-minimal
/// one).
pub fn brute_force_decompose(cycle: &SymmetricCycle, tope: &SignVector) -> Result<Decomposition> {
    let n = cycle.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if tope.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: tope.len(),
        });
    }
    let verts: Vec<Vec<i32>> = cycle
        .vertices()
        .iter()
        .map(|v| v.signs().map(i32::from).collect())
        .collect();
    let target: Vec<i32> = tope.signs().map(i32::from).collect();
    let m = verts.len();

    // Gray-code walk: one vertex enters or leaves per step.
    let mut sum = vec![0i32; n];
    let mut summing: Vec<u32> = Vec::new();
    let mut prev_gray = 0u32;
    for i in 1u32..(1u32 << m) {
        let gray = i ^ (i >> 1);
        let bit = (gray ^ prev_gray).trailing_zeros() as usize;
        let sign = if gray >> bit & 1 == 1 { 1 } else { -1 };
        for (s, v) in sum.iter_mut().zip(&verts[bit]) {
            *s += sign * v;
        }
        if sum == target {
            summing.push(gray);
        }
        prev_gray = gray;
    }

    let min_size = summing
        .iter()
        .map(|s| s.count_ones())
        .min()
        .ok_or_else(|| {
            Error::InternalInconsistency(format!("no subset of the cycle sums to {tope}"))
        })?;
    let smallest: Vec<u32> = summing
        .iter()
        .copied()
        .filter(|s| s.count_ones() == min_size)
        .collect();
    if smallest.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "{} subsets of size {min_size} sum to {tope}",
            smallest.len()
        )));
    }
    let q = smallest[0];
    if let Some(bad) = summing.iter().find(|s| *s & q != q) {
        return Err(Error::InternalInconsistency(format!(
            "summing subset {bad:#b} does not contain the minimal one {q:#b}"
        )));
    }

    let mut coefficients = vec![0i8; n];
    let mut members = Vec::new();
    for (k, c) in coefficients.iter_mut().enumerate() {
        let (pos, neg) = (q >> k & 1 == 1, q >> (k + n) & 1 == 1);
        match (pos, neg) {
            (true, false) => {
                *c = 1;
                members.push(cycle.vertex(k));
            }
            (false, true) => {
                *c = -1;
                members.push(cycle.vertex(k + n));
            }
            (false, false) => {}
            (true, true) => {
                return Err(Error::InternalInconsistency(format!(
                    "minimal subset for {tope} holds an antipodal pair"
                )))
            }
        }
    }
    Ok(Decomposition {
        tope: *tope,
        window: 0,
        coefficients,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{distinguished_cycle, find_symmetric_cycle, DEFAULT_BUDGET};
    use crate::instances::{generic_arrangement, hypercube_instance, DEFAULT_CAP};
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn vertex_decomposes_as_itself() {
        let h = hypercube_instance(4).unwrap();
        let c = distinguished_cycle(&h, &sv("++++"), &[1, 2, 3, 4]).unwrap();
        for v in c.vertices() {
            let d = decompose(&h, &c, v).unwrap();
            assert_eq!(d.members(), &[*v]);
            assert_eq!(d.coefficients().iter().filter(|&&x| x != 0).count(), 1);
        }
    }

    #[test]
    fn n3_worked_example() {
        let h = hypercube_instance(3).unwrap();
        let c = distinguished_cycle(&h, &sv("+++"), &[1, 2, 3]).unwrap();
        let d = decompose(&h, &c, &sv("+-+")).unwrap();
        assert_eq!(d.coefficients(), &[1, -1, 1]);
        assert_eq!(d.members(), &[sv("+++"), sv("+--"), sv("--+")]);
        assert_eq!(brute_force_decompose(&c, &sv("+-+")).unwrap(), d);
    }

    #[test]
    fn n5_alternating_tope() {
        let h = hypercube_instance(5).unwrap();
        let c = distinguished_cycle(&h, &sv("+++++"), &[1, 2, 3, 4, 5]).unwrap();
        let d = decompose(&h, &c, &sv("+-+-+")).unwrap();
        assert_eq!(d.size(), 5);
        assert_eq!(d.coefficients(), &[1, -1, 1, -1, 1]);
        assert_eq!(brute_force_decompose(&c, &sv("+-+-+")).unwrap(), d);
    }

    #[test]
    fn oracle_agrees_on_small_cubes() {
        for n in [3usize, 5] {
            let h = hypercube_instance(n).unwrap();
            let order: Vec<usize> = (1..=n).collect();
            let c = distinguished_cycle(&h, &h.topes()[0], &order).unwrap();
            for t in h.topes() {
                let fast = decompose(&h, &c, t).unwrap();
                let slow = brute_force_decompose(&c, t).unwrap();
                assert_eq!(fast, slow, "tope {t}");
                assert_eq!(fast.size() % 2, 1);
            }
        }
    }

    #[test]
    fn oracle_on_realizable_instance() {
        let (_, inst) = generic_arrangement(3, 6, 3, 50, DEFAULT_CAP).unwrap();
        let c = find_symmetric_cycle(&inst, &inst.topes()[0], DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        for t in inst.topes() {
            let d = decompose(&inst, &c, t).unwrap();
            assert_eq!(
                brute_force_decompose(&c, t).unwrap().member_set(),
                d.member_set()
            );
        }
    }

    #[test]
    fn errors() {
        let h = hypercube_instance(3).unwrap();
        let c = distinguished_cycle(&h, &sv("+++"), &[1, 2, 3]).unwrap();
        assert!(matches!(
            decompose(&h, &c, &sv("++")),
            Err(Error::NotATope(_))
        ));

        // a closed walk that is not a symmetric cycle: its window is singular
        let broken = SymmetricCycle::from_vertices(
            h.digest(),
            vec![
                sv("+++"),
                sv("-++"),
                sv("+++"),
                sv("---"),
                sv("+--"),
                sv("---"),
            ],
        );
        assert!(matches!(
            decompose(&h, &broken, &sv("+-+")),
            Err(Error::InternalInconsistency(_))
        ));

        let h11 = hypercube_instance(11).unwrap();
        let order: Vec<usize> = (1..=11).collect();
        let c11 = distinguished_cycle(&h11, &h11.topes()[0], &order).unwrap();
        assert!(matches!(
            brute_force_decompose(&c11, &h11.topes()[5]),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn arb_cycle_case() -> impl Strategy<Value = (usize, u64, Vec<usize>, u64, u64)> {
        (2usize..=7).prop_flat_map(|n| {
            (
                Just(n),
                0u64..(1 << n),
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                0u64..(1 << n),
                0u64..(1 << n),
            )
        })
    }

    proptest! {
        #[test]
        fn decomposition_invariants((n, base, order, t, w) in arb_cycle_case()) {
            let h = hypercube_instance(n).unwrap();
            let base = SignVector::from_negative_mask(n, base).unwrap();
            let tope = SignVector::from_negative_mask(n, t).unwrap();
            let c = distinguished_cycle(&h, &base, &order).unwrap();
            let d = decompose(&h, &c, &tope).unwrap();

            // sum, odd size, membership
            prop_assert_eq!(tope_sum(d.members()).unwrap(), tope.to_ints());
            prop_assert_eq!(d.size() % 2, 1);
            prop_assert_eq!(d.size(), d.coefficients().iter().filter(|&&x| x != 0).count());
            prop_assert!(d.members().iter().all(|m| c.vertices().contains(m)));

            // negation symmetry
            let neg = decompose(&h, &c, &tope.negate()).unwrap();
            let negated: BTreeSet<SignVector> = d.members().iter().map(|m| m.negate()).collect();
            prop_assert_eq!(neg.member_set(), negated);

            // every window gives the same set
            for window in 0..2 * n {
                let other = decompose_in_window(&c, &tope, window).unwrap();
                prop_assert_eq!(other.member_set(), d.member_set());
            }

            // reorientation equivariance
            let w = SignVector::from_negative_mask(n, w).unwrap();
            let rc = c.reoriented(&w, h.digest()).unwrap();
            let rd = decompose(&h, &rc, &tope.reorient(&w).unwrap()).unwrap();
            let expected: BTreeSet<SignVector> =
                d.members().iter().map(|m| m.reorient(&w).unwrap()).collect();
            prop_assert_eq!(rd.member_set(), expected);
        }
    }
}
