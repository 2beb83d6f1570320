//! Sign-vector primitives.
//!
//! A [`SignVector`] is a full-support vector over the ground set
//! `E_n = {1, ..., n}`, stored packed as a bitmask of its negative entries.
//! Element `e` lives at bit `e - 1`. Ground sets are limited to 64 elements,
//! far beyond anything the exhaustive routines in this crate can handle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::IntVector;
use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

fn mask_of(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySignVector);
    }
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    Ok(())
}

/// A tope: an element of `{+1, -1}^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    neg: u64,
}

impl SignVector {
    pub fn all_plus(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self {
            len: n as u8,
            neg: 0,
        })
    }

    /// Builds a sign vector from the bitmask of its negative entries.
    /// Bits above `n` are ignored.
    pub fn from_negative_mask(n: usize, neg: u64) -> Result<Self> {
        check_len(n)?;
        Ok(Self {
            len: n as u8,
            neg: neg & mask_of(n),
        })
    }

    /// Builds a sign vector from entries that must each be `1` or `-1`.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        check_len(signs.len())?;
        let mut neg = 0u64;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => neg |= 1 << i,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "sign vector entry {} is {s}, expected 1 or -1",
                        i + 1
                    )))
                }
            }
        }
        Ok(Self {
            len: signs.len() as u8,
            neg,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn negative_mask(&self) -> u64 {
        self.neg
    }

    /// Entry at ground element `e` (1-based).
    pub fn get(&self, e: usize) -> i8 {
        assert!(e >= 1 && e <= self.len(), "element {e} out of range");
        if self.neg >> (e - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// Entries in element order.
    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        (0..self.len()).map(move |i| if self.neg >> i & 1 == 1 { -1 } else { 1 })
    }

    pub fn negate(&self) -> Self {
        Self {
            len: self.len,
            neg: !self.neg & mask_of(self.len()),
        }
    }

    /// Negates the single element `e` (1-based).
    pub fn flip(&self, e: usize) -> Self {
        assert!(e >= 1 && e <= self.len(), "element {e} out of range");
        Self {
            len: self.len,
            neg: self.neg ^ (1 << (e - 1)),
        }
    }

    /// Componentwise product `v_i * w_i`.
    pub fn reorient(&self, w: &SignVector) -> Result<Self> {
        self.same_len(w)?;
        Ok(Self {
            len: self.len,
            neg: self.neg ^ w.neg,
        })
    }

    /// The set of elements where the two vectors have opposite signs.
    pub fn separation_set(&self, other: &SignVector) -> Result<GroundSubset> {
        self.same_len(other)?;
        Ok(GroundSubset {
            n: self.len,
            members: self.neg ^ other.neg,
        })
    }

    pub fn hamming(&self, other: &SignVector) -> Result<usize> {
        self.same_len(other)?;
        Ok((self.neg ^ other.neg).count_ones() as usize)
    }

    pub fn to_ints(&self) -> IntVector {
        IntVector::new(self.signs().map(BigInt::from).collect())
    }

    fn same_len(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

/// Entrywise integer sum of a nonempty list of equal-length sign vectors.
pub fn tope_sum(vs: &[SignVector]) -> Result<IntVector> {
    let first = vs.first().ok_or(Error::EmptyList)?;
    let n = first.len();
    let mut acc = vec![0i64; n];
    for v in vs {
        first.same_len(v)?;
        for (a, s) in acc.iter_mut().zip(v.signs()) {
            *a += i64::from(s);
        }
    }
    Ok(IntVector::new(acc.into_iter().map(BigInt::from).collect()))
}

// Lexicographic on the string form, with '+' < '-'.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len) as usize;
        let diff = (self.neg ^ other.neg) & mask_of(common);
        if diff == 0 {
            return self.len.cmp(&other.len);
        }
        let first = diff.trailing_zeros();
        if self.neg >> first & 1 == 1 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptySignVector);
        }
        let mut neg = 0u64;
        let mut n = 0usize;
        for (i, c) in text.chars().enumerate() {
            match c {
                '+' => {}
                '-' => {
                    if i < MAX_GROUND {
                        neg |= 1 << i;
                    }
                }
                other => {
                    return Err(Error::IllegalCharacter {
                        position: i + 1,
                        found: other,
                    })
                }
            }
            n += 1;
        }
        check_len(n)?;
        Ok(Self { len: n as u8, neg })
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the ground set `{1, ..., n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    n: u8,
    members: u64,
}

impl GroundSubset {
    pub fn empty(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self {
            n: n as u8,
            members: 0,
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self {
            n: n as u8,
            members: mask_of(n),
        })
    }

    pub fn from_mask(n: usize, members: u64) -> Result<Self> {
        check_len(n)?;
        if members & !mask_of(n) != 0 {
            return Err(Error::InvalidArgument(format!(
                "subset mask {members:#x} has elements outside 1..={n}"
            )));
        }
        Ok(Self {
            n: n as u8,
            members,
        })
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        check_len(n)?;
        let mut mask = 0u64;
        for e in members {
            if e == 0 || e > n {
                return Err(Error::InvalidArgument(format!(
                    "element {e} outside ground set 1..={n}"
                )));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Self {
            n: n as u8,
            members: mask,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.ground_size() && self.members >> (e - 1) & 1 == 1
    }

    pub fn is_subset(&self, other: &GroundSubset) -> bool {
        self.members & !other.members == 0
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            members: !self.members & mask_of(self.ground_size()),
        }
    }

    /// Members in ascending order, 1-based.
    pub fn members(&self) -> Vec<usize> {
        (0..self.ground_size())
            .filter(|i| self.members >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }
}

impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.members().cmp(&other.members()))
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.members().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}
