//! Exact feasibility of strict linear systems by Fourier-Motzkin elimination.
//!
//! A system is a list of rows `a · x > b` over the rationals. Eliminating a
//! variable combines every row with a positive coefficient with every row
//! with a negative one, using positive multipliers, so strictness carries
//! over. After all variables are gone the system is feasible iff every
//! remaining row reads `0 > b` with `b < 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// One strict inequality `coeffs · x > rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrictRow {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl StrictRow {
    pub fn homogeneous(coeffs: Vec<BigInt>) -> Self {
        Self {
            coeffs,
            rhs: BigInt::zero(),
        }
    }

    fn normalized(mut self) -> Self {
        let g = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && g != BigInt::from(1) {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, Default)]
pub struct StrictSystem {
    vars: usize,
    rows: Vec<StrictRow>,
}

impl StrictSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: StrictRow) {
        assert_eq!(row.coeffs.len(), self.vars, "row width mismatch");
        self.rows.push(row);
    }

    pub fn is_feasible(&self) -> bool {
        let Some(mut rows) = prune(self.rows.iter().cloned()) else {
            return false;
        };
        for var in 0..self.vars {
            if rows.is_empty() {
                return true;
            }
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for row in rows {
                if row.coeffs[var].is_positive() {
                    pos.push(row);
                } else if row.coeffs[var].is_negative() {
                    neg.push(row);
                } else {
                    rest.push(row);
                }
            }
            // A variable bounded on one side only can absorb its rows.
            for p in &pos {
                for q in &neg {
                    rest.push(combine(p, q, var));
                }
            }
            rows = match prune(rest.into_iter()) {
                Some(rows) => rows,
                None => return false,
            };
        }
        rows.is_empty()
    }
}

fn combine(p: &StrictRow, q: &StrictRow, var: usize) -> StrictRow {
    let a = &p.coeffs[var];
    let b = -&q.coeffs[var];
    let coeffs = p
        .coeffs
        .iter()
        .zip(&q.coeffs)
        .map(|(x, y)| &b * x + a * y)
        .collect();
    StrictRow {
        coeffs,
        rhs: &b * &p.rhs + a * &q.rhs,
    }
}

// Normalizes and deduplicates rows; drops satisfied constant rows and
// returns `None` on a contradictory one.
fn prune(rows: impl Iterator<Item = StrictRow>) -> Option<Vec<StrictRow>> {
    let mut out = BTreeSet::new();
    for row in rows {
        let row = row.normalized();
        if row.is_constant() {
            if row.rhs.is_negative() {
                continue;
            }
            return None;
        }
        out.insert(row);
    }
    Some(out.into_iter().collect())
}
