//! Contradicting subsets: sets `B`, `C` and a prime `p` with `p` not dividing `|B||C|` but
//! dividing `|B ∩ C^g|` for every group element `g`. Such a triple rules out sharply
//! transitive subsets, because for one of those the intersection sizes would sum to `|B||C|`.

mod cases;
mod search;

pub use cases::{alternating_parity_consistency, run_case, Case, CaseOptions};
pub use search::{certificate_search, SearchBounds};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::PointSet;
use crate::designs::DesignError;
use crate::geometry::GeometryError;
use crate::gf::GfError;
use crate::linsys::LinsysError;
use crate::perm::{Arrangements, GroupEnumeration, PermError, Permutation};
use crate::search::verify_sharply_transitive;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("B and C must be nonempty")]
    EmptySet,
    #[error("B and C live on different domains ({0} and {1} points)")]
    UniverseMismatch(usize, usize),
    #[error("certificate domain has {found} points, the action has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("C is not a member of the family")]
    NotInFamily,
    #[error("missing input data: {0}")]
    MissingData(String),
    #[error("invalid case parameters: {0}")]
    BadCase(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// How the images `C^g` are supplied to the check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    /// Every element of an enumerated group is applied to `C`.
    EnumeratedGroup { name: String, order: usize },
    /// A precomputed superset of the images, described by the rule generating it.
    Named { name: String, rule: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub b: PointSet,
    pub c: PointSet,
    pub p: u64,
    pub family: FamilyDescriptor,
}

impl Certificate {
    pub fn new(b: PointSet, c: PointSet, p: u64, family: FamilyDescriptor) -> Result<Self, CertifyError> {
        if !crate::linsys::is_prime(p) {
            return Err(CertifyError::NotPrime(p));
        }
        if b.universe() != c.universe() {
            return Err(CertifyError::UniverseMismatch(b.universe(), c.universe()));
        }
        if b.is_empty() || c.is_empty() {
            return Err(CertifyError::EmptySet);
        }
        Ok(Self { b, c, p, family })
    }

    pub fn domain(&self) -> usize {
        self.b.universe()
    }

    /// `p` does not divide `|B||C|`.
    pub fn side_condition(&self) -> bool {
        (self.b.count() as u64 * self.c.count() as u64) % self.p != 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Refuted,
    Inconclusive,
    HypothesisNotMet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Enumerated,
    Family,
    Reduction,
    Gate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub label: String,
    pub agrees: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub mode: Mode,
    #[serde(rename = "B_size")]
    pub b_size: usize,
    #[serde(rename = "C_size")]
    pub c_size: usize,
    pub p: u64,
    pub domain_size: usize,
    pub family: Option<FamilyDescriptor>,
    /// Intersection size to number of group elements (or family members) attaining it.
    pub spectrum: BTreeMap<usize, u64>,
    pub side_condition: bool,
    pub conclusion: Conclusion,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub cross_checks: Vec<CrossCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<VerificationReport>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn from_spectrum(case: &str, mode: Mode, cert: &Certificate, spectrum: BTreeMap<usize, u64>) -> Self {
        let divisible = spectrum.keys().all(|&s| s as u64 % cert.p == 0);
        let side = cert.side_condition();
        Self {
            case: case.to_string(),
            mode,
            b_size: cert.b.count(),
            c_size: cert.c.count(),
            p: cert.p,
            domain_size: cert.domain(),
            family: Some(cert.family.clone()),
            spectrum,
            side_condition: side,
            conclusion: if side && divisible {
                Conclusion::Refuted
            } else {
                Conclusion::Inconclusive
            },
            assumptions: Vec::new(),
            notes: Vec::new(),
            cross_checks: Vec::new(),
            components: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.conclusion == Conclusion::Refuted
    }

    /// Spectrum support, ignoring multiplicities.
    pub fn support(&self) -> Vec<usize> {
        self.spectrum.keys().copied().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Parallel histogram of intersection sizes, deterministic regardless of scheduling.
fn histogram<I>(sizes: I, max: usize) -> BTreeMap<usize, u64>
where
    I: ParallelIterator<Item = usize>,
{
    let counts = sizes
        .fold(
            || vec![0u64; max + 1],
            |mut acc, s| {
                acc[s] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; max + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(s, c)| (s, c as u64))
        .collect()
}

/// `|B ∩ C^g|` for `g` given by its point map.
fn intersection_under(b: &PointSet, c_points: &[usize], mut image: impl FnMut(usize) -> usize) -> usize {
    c_points.iter().filter(|&&x| b.contains(image(x))).count()
}

/// Checks the certificate against every element of `group`.
pub fn verify_certificate_enumerated(
    group: &GroupEnumeration,
    cert: &Certificate,
) -> Result<VerificationReport, CertifyError> {
    if group.degree() != cert.domain() {
        return Err(CertifyError::DomainMismatch {
            expected: group.degree(),
            found: cert.domain(),
        });
    }
    let c_points: Vec<usize> = cert.c.iter().collect();
    let spectrum = histogram(
        group
            .elements()
            .par_iter()
            .map(|g| intersection_under(&cert.b, &c_points, |x| g.apply(x))),
        cert.c.count(),
    );
    let mut report = VerificationReport::from_spectrum(group.name(), Mode::Enumerated, cert, spectrum);
    report.notes.push(format!("scanned all {} group elements", group.order()));
    Ok(report)
}

/// Checks the certificate against every element of `group` acting on `arr`, without
/// materializing the induced permutations.
pub fn verify_certificate_induced(
    group: &GroupEnumeration,
    arr: &Arrangements,
    cert: &Certificate,
) -> Result<VerificationReport, CertifyError> {
    if arr.len() != cert.domain() || arr.base_degree() != group.degree() {
        return Err(CertifyError::DomainMismatch {
            expected: arr.len(),
            found: cert.domain(),
        });
    }
    let c_points: Vec<usize> = cert.c.iter().collect();
    let spectrum = histogram(
        group.elements().par_iter().map(|g| {
            let mut tuple = vec![0u32; arr.arity()];
            intersection_under(&cert.b, &c_points, |x| {
                for (t, &y) in tuple.iter_mut().zip(arr.cell(x)) {
                    *t = g.apply(y as usize) as u32;
                }
                arr.index_of(&tuple).expect("images of arrangements are arrangements")
            })
        }),
        cert.c.count(),
    );
    let mut report = VerificationReport::from_spectrum(group.name(), Mode::Enumerated, cert, spectrum);
    report.notes.push(format!(
        "scanned all {} group elements acting on {} arrangements of length {}",
        group.order(),
        arr.len(),
        arr.arity()
    ));
    Ok(report)
}

/// Evidence that the family contains every image `C^g`.
#[derive(Debug, Clone, Copy)]
pub enum Closure<'a> {
    /// Generators of the group; closure of the family under each is checked.
    Generators(&'a [Permutation]),
    /// A mathematical statement recorded in the report instead of checked.
    Assumed(&'a str),
}

/// Checks the certificate against every member of a family containing all images of `C`.
pub fn verify_certificate_family(
    case: &str,
    family: &[PointSet],
    cert: &Certificate,
    closure: Closure<'_>,
) -> Result<VerificationReport, CertifyError> {
    if family.iter().any(|f| f.universe() != cert.domain()) {
        return Err(CertifyError::DomainMismatch {
            expected: cert.domain(),
            found: family.iter().map(|f| f.universe()).find(|&u| u != cert.domain()).unwrap(),
        });
    }
    if !family.contains(&cert.c) {
        return Err(CertifyError::NotInFamily);
    }
    let spectrum = histogram(
        family.par_iter().map(|f| cert.b.intersection_count(f)),
        cert.domain(),
    );
    let mut report = VerificationReport::from_spectrum(case, Mode::Family, cert, spectrum);
    report.notes.push(format!("scanned {} family members", family.len()));
    match closure {
        Closure::Generators(gens) => {
            let closed = crate::geometry::family_closed_under(family, gens);
            report.cross_checks.push(CrossCheck {
                label: "family closed under generators".into(),
                agrees: closed,
                detail: format!("{} generators, {} family members", gens.len(), family.len()),
            });
            if !closed {
                report.conclusion = Conclusion::Inconclusive;
                report.notes.push("family is not closed under the generators".into());
            }
        }
        Closure::Assumed(text) => report.assumptions.push(text.to_string()),
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCountReport {
    pub sharply_transitive: bool,
    pub sum: u64,
    pub expected: u64,
    /// `None` when the input is not sharply transitive.
    pub holds: Option<bool>,
}

/// Sums `|B ∩ C^g|` over `s` and compares with `|B||C|`.
pub fn doublecount_check(s: &[Permutation], b: &PointSet, c: &PointSet) -> DoubleCountReport {
    let n = b.universe();
    let sharp = verify_sharply_transitive(s, n);
    let c_points: Vec<usize> = c.iter().collect();
    let sum: u64 = s
        .iter()
        .map(|g| intersection_under(b, &c_points, |x| g.apply(x)) as u64)
        .sum();
    let expected = b.count() as u64 * c.count() as u64;
    DoubleCountReport {
        sharply_transitive: sharp,
        sum,
        expected,
        holds: sharp.then_some(sum == expected),
    }
}
