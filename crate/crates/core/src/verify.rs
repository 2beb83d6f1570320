//! Batch experiments over pairs of topes.
//!
//! A plan pairs an instance on `s` elements with one on `t` elements, each
//! with a symmetric cycle. For every selected pair `(T', T'')` the engine
//! decomposes both topes, builds `Lambda'` and `Lambda''`, runs the checks
//! of [`crate::spectra`] and records the outcome. Pairs where either
//! decomposition is smaller than `min_q` are skipped but counted.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::arith::{rational_string, serialize_bigint, IntVector};
use crate::complexes::{lambda_complex, long_f_vector, LongFVector};
use crate::cycles::{validate_cycle, SymmetricCycle};
use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::instances::OMInstance;
use crate::signvec::SignVector;
use crate::spectra::{
    alternating_sum, check_dehn_sommerville, iota_product, span_membership, LongHVector, Symmetry,
    Transforms,
};

pub const DEFAULT_MIN_Q: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopeSelector {
    All,
    Explicit(Vec<SignVector>),
}

#[derive(Clone, Debug)]
pub struct PlanSide {
    pub instance: OMInstance,
    pub cycle: SymmetricCycle,
    pub selector: TopeSelector,
}

impl PlanSide {
    pub fn new(instance: OMInstance, cycle: SymmetricCycle) -> Self {
        Self {
            instance,
            cycle,
            selector: TopeSelector::All,
        }
    }

    pub fn with_topes(mut self, topes: Vec<SignVector>) -> Self {
        self.selector = TopeSelector::Explicit(topes);
        self
    }

    fn selected(&self) -> Result<Vec<SignVector>> {
        match &self.selector {
            TopeSelector::All => Ok(self.instance.topes().to_vec()),
            TopeSelector::Explicit(list) => {
                let mut out = list.clone();
                if let Some(bad) = out.iter().find(|t| !self.instance.contains(t)) {
                    return Err(Error::NotATope(bad.to_string()));
                }
                out.sort();
                out.dedup();
                Ok(out)
            }
        }
    }

    fn check_cycle(&self, label: &str) -> Result<()> {
        if self.cycle.instance_digest() != self.instance.digest() {
            return Err(Error::Validation(format!(
                "{label} cycle belongs to instance {}, not {}",
                self.cycle.instance_digest(),
                self.instance.digest()
            )));
        }
        let report = validate_cycle(&self.instance, &self.cycle);
        if !report.is_ok() {
            return Err(Error::Validation(format!("{label} cycle:\n{report}")));
        }
        Ok(())
    }
}

/// The first side has ground size `s`, the second `t`.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub first: PlanSide,
    pub second: PlanSide,
    pub min_q: usize,
    pub parity_enforced: bool,
}

impl ExperimentPlan {
    pub fn new(first: PlanSide, second: PlanSide) -> Self {
        Self {
            first,
            second,
            min_q: DEFAULT_MIN_Q,
            parity_enforced: true,
        }
    }

    pub fn with_min_q(mut self, min_q: usize) -> Self {
        self.min_q = min_q;
        self
    }

    pub fn allow_equal_parity(mut self) -> Self {
        self.parity_enforced = false;
        self
    }

    pub fn s(&self) -> usize {
        self.first.instance.n()
    }

    pub fn t(&self) -> usize {
        self.second.instance.n()
    }

    /// True when every hypothesis of the orthogonality statement is in force:
    /// `s < t`, opposite parity, and `|Q| >= 5` on both sides.
    pub fn hypotheses_enforced(&self) -> bool {
        self.parity_enforced && self.min_q >= 5
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (self.s(), self.t());
        if self.min_q == 0 || self.min_q.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "min_q must be odd and at least 1, got {}",
                self.min_q
            )));
        }
        if s > t {
            return Err(Error::InvalidArgument(format!(
                "first ground set ({s}) is larger than the second ({t})"
            )));
        }
        if self.parity_enforced && (s >= t || (t - s) % 2 == 0) {
            return Err(Error::InvalidArgument(format!(
                "s = {s}, t = {t} violate s < t with opposite parity; pass allow-equal-parity to run anyway"
            )));
        }
        self.first.check_cycle("first")?;
        self.second.check_cycle("second")?;
        Ok(())
    }

    fn digest(&self, first: &[SignVector], second: &[SignVector]) -> String {
        let mut h = Sha256::new();
        for (label, side, topes) in [
            ("first", &self.first, first),
            ("second", &self.second, second),
        ] {
            h.update(format!("{label}\n{}\n", side.instance.digest()));
            for v in side.cycle.vertices() {
                h.update(format!("{v}\n"));
            }
            h.update("selected\n");
            for v in topes {
                h.update(format!("{v}\n"));
            }
        }
        h.update(format!(
            "min_q {}\nparity {}\n",
            self.min_q, self.parity_enforced
        ));
        hex::encode(h.finalize())
    }
}

/// A failed check on one pair. Sides are numbered 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Anomaly {
    /// `|Q| = 1`: the complementary vector is zero.
    Degenerate {
        side: u8,
    },
    NegativeOmega {
        side: u8,
        index: usize,
    },
    /// The complementary vector does not count `m` vertices.
    VertexCount {
        side: u8,
        found: BigInt,
    },
    /// `sum_j (-1)^j omega_j != (-1)^{m+1}`.
    Euler {
        side: u8,
    },
    DehnSommerville {
        side: u8,
    },
    Iota {
        side: u8,
    },
    SpanNonmember,
    NonzeroOrthogonality,
}

impl Anomaly {
    pub fn kind(&self) -> &'static str {
        match self {
            Anomaly::Degenerate { .. } => "degenerate",
            Anomaly::NegativeOmega { .. } => "negative_omega",
            Anomaly::VertexCount { .. } => "vertex_count",
            Anomaly::Euler { .. } => "euler",
            Anomaly::DehnSommerville { .. } => "dehn_sommerville",
            Anomaly::Iota { .. } => "iota",
            Anomaly::SpanNonmember => "span_nonmember",
            Anomaly::NonzeroOrthogonality => "nonzero_orthogonality",
        }
    }
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anomaly::Degenerate { side }
            | Anomaly::Euler { side }
            | Anomaly::DehnSommerville { side }
            | Anomaly::Iota { side } => write!(f, "{}:{side}", self.kind()),
            Anomaly::NegativeOmega { side, index } => write!(f, "{}:{side}@{index}", self.kind()),
            Anomaly::VertexCount { side, found } => write!(f, "{}:{side}={found}", self.kind()),
            Anomaly::SpanNonmember | Anomaly::NonzeroOrthogonality => f.write_str(self.kind()),
        }
    }
}

impl Serialize for Anomaly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Everything computed for one pair of topes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub s: usize,
    pub t: usize,
    pub tope1: SignVector,
    pub tope2: SignVector,
    pub q1: usize,
    pub q2: usize,
    pub f1: IntVector,
    pub f2: IntVector,
    pub omega1: IntVector,
    pub omega2: IntVector,
    pub h1: IntVector,
    pub h2: IntVector,
    pub ds1: bool,
    pub ds2: bool,
    #[serde(serialize_with = "serialize_bigint")]
    pub iota1: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub iota2: BigInt,
    /// `None` when `s = t`, where the span test is undefined.
    pub span1: Option<bool>,
    pub span1_coefficients: Vec<String>,
    #[serde(serialize_with = "serialize_bigint")]
    pub raw_value: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub hh_value: BigInt,
    pub orthogonal: bool,
    pub anomalies: Vec<Anomaly>,
}

impl PairReport {
    /// True when the pair meets `s < t`, opposite parity and `|Q| >= 5`.
    pub fn meets_hypotheses(&self) -> bool {
        self.s < self.t && (self.t - self.s) % 2 == 1 && self.q1 >= 5 && self.q2 >= 5
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentResult {
    pub digest: String,
    pub s: usize,
    pub t: usize,
    pub min_q: usize,
    pub parity_enforced: bool,
    pub hypotheses_enforced: bool,
    pub pairs_total: usize,
    pub pairs_tested: usize,
    pub pairs_skipped: usize,
    /// Admitted pairs with an anomaly, counted only when the hypotheses are
    /// enforced.
    pub violations: usize,
    pub nonzero_values: usize,
    pub anomaly_counts: BTreeMap<String, usize>,
    pub pairs: Vec<PairReport>,
}

impl ExperimentResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn anomaly_count(&self) -> usize {
        self.anomaly_counts.values().sum()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// One row per tested pair; vectors are written as `(a,b,...)` and
    /// anomalies joined by `;`.
    pub fn to_csv(&self) -> Result<String> {
        pairs_to_csv(&self.pairs)
    }

    /// Writes CSV when the path ends in `.csv`, JSON otherwise.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = if path.extension().is_some_and(|e| e == "csv") {
            self.to_csv()?
        } else {
            self.to_json()?
        };
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// `key: value` lines for terminal output.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "s: {}\nt: {}\nmin_q: {}\nparity_enforced: {}\npairs_total: {}\npairs_tested: {}\npairs_skipped: {}\nnonzero_values: {}\nviolations: {}\n",
            self.s,
            self.t,
            self.min_q,
            self.parity_enforced,
            self.pairs_total,
            self.pairs_tested,
            self.pairs_skipped,
            self.nonzero_values,
            self.violations
        );
        for (kind, count) in &self.anomaly_counts {
            out.push_str(&format!("anomaly {kind}: {count}\n"));
        }
        out.push_str(&format!("digest: {}\n", self.digest));
        out
    }
}

pub const CSV_COLUMNS: [&str; 22] = [
    "s",
    "t",
    "tope1",
    "tope2",
    "q1",
    "q2",
    "f1",
    "f2",
    "omega1",
    "omega2",
    "h1",
    "h2",
    "ds1",
    "ds2",
    "iota1",
    "iota2",
    "span1",
    "span1_coefficients",
    "raw_value",
    "hh_value",
    "orthogonal",
    "anomalies",
];

pub fn pairs_to_csv(pairs: &[PairReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS)?;
    for p in pairs {
        let span = p.span1.map_or(String::new(), |b| b.to_string());
        let anomalies: Vec<String> = p.anomalies.iter().map(ToString::to_string).collect();
        w.write_record([
            p.s.to_string(),
            p.t.to_string(),
            p.tope1.to_string(),
            p.tope2.to_string(),
            p.q1.to_string(),
            p.q2.to_string(),
            p.f1.to_string(),
            p.f2.to_string(),
            p.omega1.to_string(),
            p.omega2.to_string(),
            p.h1.to_string(),
            p.h2.to_string(),
            p.ds1.to_string(),
            p.ds2.to_string(),
            p.iota1.to_string(),
            p.iota2.to_string(),
            span,
            p.span1_coefficients.join(";"),
            p.raw_value.to_string(),
            p.hh_value.to_string(),
            p.orthogonal.to_string(),
            anomalies.join(";"),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalInconsistency(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalInconsistency(e.to_string()))
}

/// Per-tope data, computed once and shared by all pairs.
struct SideData {
    tope: SignVector,
    q: usize,
    f: LongFVector,
    omega: IntVector,
    h: LongHVector,
    ds: bool,
    iota: BigInt,
    span: Option<(bool, Vec<String>)>,
    anomalies: Vec<Anomaly>,
}

fn prepare_side(
    side: &PlanSide,
    tope: &SignVector,
    label: u8,
    t: usize,
    span_s: Option<usize>,
) -> Result<SideData> {
    let m = side.instance.n();
    let transforms = Transforms::shared(t);
    let d = decompose(&side.instance, &side.cycle, tope)?;
    let lambda = lambda_complex(tope, &d)?;
    let f = long_f_vector(&lambda, t)?;
    let omega = transforms.omega_raw(&f, m)?;
    let h = transforms.long_h_vector(&f, m)?;
    let variant = if label == 1 {
        Symmetry::Symmetric
    } else {
        Symmetry::Antisymmetric
    };
    let ds = check_dehn_sommerville(&h, variant);
    let iota = iota_product(&h);
    let span = match span_s {
        Some(s) if s < t => {
            let r = span_membership(&h, s, t)?;
            Some((
                r.member,
                r.coefficients.iter().map(rational_string).collect(),
            ))
        }
        _ => None,
    };

    let mut anomalies = Vec::new();
    if d.size() == 1 {
        anomalies.push(Anomaly::Degenerate { side: label });
    } else {
        if let Some(index) = omega.entries().iter().position(|x| x < &BigInt::zero()) {
            anomalies.push(Anomaly::NegativeOmega { side: label, index });
        }
        if omega[1] != BigInt::from(m) {
            anomalies.push(Anomaly::VertexCount {
                side: label,
                found: omega[1].clone(),
            });
        }
        let expected = if m % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        if alternating_sum(&omega) != expected {
            anomalies.push(Anomaly::Euler { side: label });
        }
    }
    if !ds {
        anomalies.push(Anomaly::DehnSommerville { side: label });
    }
    if !iota.is_zero() {
        anomalies.push(Anomaly::Iota { side: label });
    }
    if let Some((false, _)) = span {
        anomalies.push(Anomaly::SpanNonmember);
    }
    Ok(SideData {
        tope: *tope,
        q: d.size(),
        f,
        omega,
        h,
        ds,
        iota,
        span,
        anomalies,
    })
}

fn pair_report(a: &SideData, b: &SideData, s: usize, t: usize) -> Result<PairReport> {
    let transforms = Transforms::shared(t);
    let raw_value = transforms.raw_orthogonality(&a.f, s, &b.f)?;
    let hh_value = a.h.entries().dot(b.h.entries())?;
    if raw_value != hh_value {
        return Err(Error::InternalInconsistency(format!(
            "kernel form {raw_value} differs from <h1, h2> = {hh_value} for {} / {}",
            a.tope, b.tope
        )));
    }
    let orthogonal = raw_value.is_zero();
    let mut anomalies: Vec<Anomaly> = a.anomalies.iter().chain(&b.anomalies).cloned().collect();
    if !orthogonal {
        anomalies.push(Anomaly::NonzeroOrthogonality);
    }
    anomalies.sort();
    let (span1, span1_coefficients) = match &a.span {
        Some((member, coeffs)) => (Some(*member), coeffs.clone()),
        None => (None, Vec::new()),
    };
    Ok(PairReport {
        s,
        t,
        tope1: a.tope,
        tope2: b.tope,
        q1: a.q,
        q2: b.q,
        f1: a.f.entries().clone(),
        f2: b.f.entries().clone(),
        omega1: a.omega.clone(),
        omega2: b.omega.clone(),
        h1: a.h.entries().clone(),
        h2: b.h.entries().clone(),
        ds1: a.ds,
        ds2: b.ds,
        iota1: a.iota.clone(),
        iota2: b.iota.clone(),
        span1,
        span1_coefficients,
        raw_value,
        hh_value,
        orthogonal,
        anomalies,
    })
}

/// Runs every check on every selected pair. Output order is lexicographic
/// by `(tope1, tope2)` and does not depend on the rayon pool size.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentResult> {
    plan.validate()?;
    let (s, t) = (plan.s(), plan.t());
    let first_topes = plan.first.selected()?;
    let second_topes = plan.second.selected()?;
    let digest = plan.digest(&first_topes, &second_topes);

    let first: Vec<SideData> = first_topes
        .par_iter()
        .map(|v| prepare_side(&plan.first, v, 1, t, Some(s)))
        .collect::<Result<_>>()?;
    let second: Vec<SideData> = second_topes
        .par_iter()
        .map(|v| prepare_side(&plan.second, v, 2, t, None))
        .collect::<Result<_>>()?;

    let min_q = plan.min_q;
    let outcomes: Vec<Option<PairReport>> = first
        .par_iter()
        .flat_map_iter(|a| second.iter().map(move |b| (a, b)))
        .map(|(a, b)| {
            let report = pair_report(a, b, s, t)?;
            Ok((a.q >= min_q && b.q >= min_q).then_some(report))
        })
        .collect::<Result<_>>()?;

    let pairs_total = outcomes.len();
    let mut pairs: Vec<PairReport> = outcomes.into_iter().flatten().collect();
    pairs.sort_by_key(|x| (x.tope1, x.tope2));

    let enforced = plan.hypotheses_enforced();
    let mut anomaly_counts = BTreeMap::new();
    for a in pairs.iter().flat_map(|p| &p.anomalies) {
        *anomaly_counts.entry(a.kind().to_string()).or_insert(0) += 1;
    }
    let violations = if enforced {
        pairs.iter().filter(|p| !p.anomalies.is_empty()).count()
    } else {
        0
    };
    Ok(ExperimentResult {
        digest,
        s,
        t,
        min_q,
        parity_enforced: plan.parity_enforced,
        hypotheses_enforced: enforced,
        pairs_total,
        pairs_tested: pairs.len(),
        pairs_skipped: pairs_total - pairs.len(),
        violations,
        nonzero_values: pairs.iter().filter(|p| !p.orthogonal).count(),
        anomaly_counts,
        pairs,
    })
}

/// The same pipeline for plans that deliberately drop a hypothesis; every
/// failed check ends up as an anomaly and nothing counts as a violation.
pub fn negative_controls(plan: &ExperimentPlan) -> Result<ExperimentResult> {
    if plan.hypotheses_enforced() {
        return Err(Error::InvalidArgument(
            "negative controls need parity relaxed or min_q below 5".into(),
        ));
    }
    run_experiment(plan)
}

/// Evaluates a single pair with no `|Q|` filter. Parity and `s <= t` are
/// still required for the computation to make sense.
pub fn evaluate_pair(
    first: &PlanSide,
    tope1: &SignVector,
    second: &PlanSide,
    tope2: &SignVector,
) -> Result<PairReport> {
    let plan = ExperimentPlan::new(
        first.clone().with_topes(vec![*tope1]),
        second.clone().with_topes(vec![*tope2]),
    )
    .with_min_q(1)
    .allow_equal_parity();
    let mut result = run_experiment(&plan)?;
    result
        .pairs
        .pop()
        .ok_or_else(|| Error::InternalInconsistency("single-pair plan produced no report".into()))
}
