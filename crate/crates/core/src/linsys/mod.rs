//! Exact linear systems attached to a permutation group.
//!
//! The full system has one unknown `x_g` per group element and one equation per cell of the
//! matrix identity `sum_g x_g P(g) = J`, where `P(g)` is the permutation matrix of `g`. Its
//! 0/1 solutions are exactly the sharply transitive subsets. The collapsed system for a
//! subgroup `H` has one equation per `H`-orbit on ordered pairs and one unknown per
//! `H`-conjugacy class of `G`, with coefficient `a_i(g) = |{(w1, w2) in orbit i : w1^g = w2}|`
//! and right-hand side the orbit size.

mod integer;
mod lemmas;
mod modp;
mod nonneg;
mod probe;
mod rational;

pub use integer::solve_integer;
pub use lemmas::{lemma_down_check, local_global_check, LemmaDownReport, LocalGlobalReport, SubgroupCheck};
pub use modp::{f2_complement_witness, solve_mod_p, solve_mod_prime_power};
pub use nonneg::{solve_nonneg_integer, DEFAULT_BRANCH_BUDGET};
pub use probe::{random_restriction_probe, ProbeConfig};
pub use rational::{solve_rational, solve_rational_collapsed};

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::perm::{conjugation_reps, orbits_on_pairs, GroupEnumeration, PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinsysError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup order {order} is divisible by {p}")]
    NotPrimeComplement { p: u64, order: usize },
    #[error("no subgroup supplied for prime {0}")]
    MissingPrime(u64),
    #[error("subgroup chain is not nested")]
    NotNested,
    #[error("keep-count {keep} exceeds {vars} variables")]
    KeepTooLarge { keep: usize, vars: usize },
    #[error("coefficient {0}^{1} does not fit in 64 bits")]
    ModulusOverflow(u64, u32),
}

/// The ring a system is meant to be solved over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "ring", content = "p", rename_all = "snake_case")]
pub enum Ring {
    Fp(u64),
    Integer,
    Rational,
    NonNegInteger,
}

/// What an unknown stands for: a group element (index into the enumeration), or the
/// representative of a conjugacy class of the given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct VarLabel {
    pub element: usize,
    pub class_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqLabel {
    /// Matrix cell `(row, col)` of the full system.
    Cell(u32, u32),
    /// Orbit number and size for a collapsed system.
    Orbit { index: usize, size: usize },
    Plain(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSystem {
    pub ring: Ring,
    /// Coefficients, one row per equation.
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub vars: Vec<VarLabel>,
    pub eqs: Vec<EqLabel>,
    /// Unknowns fixed before solving (e.g. the identity pinned to 1), already moved into `rhs`.
    pub pinned: Vec<(VarLabel, i64)>,
}

impl ExactSystem {
    /// A plain system with generic labels.
    pub fn from_rows(rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Self {
        assert_eq!(rows.len(), rhs.len());
        let n = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n), "ragged coefficient matrix");
        Self {
            ring: Ring::Integer,
            eqs: (0..rows.len()).map(EqLabel::Plain).collect(),
            vars: (0..n).map(|j| VarLabel { element: j, class_size: 1 }).collect(),
            rows,
            rhs,
            pinned: Vec::new(),
        }
    }

    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn equation_count(&self) -> usize {
        self.rows.len()
    }

    pub fn variable_count(&self) -> usize {
        self.vars.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Keeps only the listed columns, in the given order.
    pub fn restrict_columns(&self, keep: &[usize]) -> ExactSystem {
        ExactSystem {
            ring: self.ring,
            rows: self.rows.iter().map(|r| keep.iter().map(|&j| r[j]).collect()).collect(),
            rhs: self.rhs.clone(),
            vars: keep.iter().map(|&j| self.vars[j]).collect(),
            eqs: self.eqs.clone(),
            pinned: self.pinned.clone(),
        }
    }

    /// `rows cols`, then each equation as its coefficients followed by the right-hand side.
    pub fn export(&self) -> String {
        let mut out = format!("{} {}\n", self.equation_count(), self.variable_count());
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let mut line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            line.push(b.to_string());
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    /// Exact substitution check of a witness against this system.
    pub fn check_witness(&self, witness: &Witness) -> bool {
        if witness.len() != self.variable_count() {
            return false;
        }
        match witness {
            Witness::Modular { modulus, values } => {
                let m = *modulus as i128;
                self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
                    let lhs = row
                        .iter()
                        .zip(values)
                        .fold(0i128, |acc, (&a, &x)| (acc + a as i128 * x as i128).rem_euclid(m));
                    lhs == (b as i128).rem_euclid(m)
                })
            }
            Witness::Integer(values) => self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
                let lhs: BigInt = row.iter().zip(values).map(|(&a, x)| BigInt::from(a) * x).sum();
                lhs == BigInt::from(b)
            }),
            Witness::Rational(values) => self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
                let lhs = row
                    .iter()
                    .zip(values)
                    .fold(BigRational::zero(), |acc, (&a, x)| acc + BigRational::from(BigInt::from(a)) * x);
                lhs == BigRational::from(BigInt::from(b))
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solvable,
    Infeasible,
    UnknownBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Modular { modulus: u64, values: Vec<u64> },
    Integer(Vec<BigInt>),
    Rational(Vec<BigRational>),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Modular { values, .. } => values.len(),
            Witness::Integer(v) => v.len(),
            Witness::Rational(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn strings(&self) -> Vec<String> {
        match self {
            Witness::Modular { values, .. } => values.iter().map(|v| v.to_string()).collect(),
            Witness::Integer(v) => v.iter().map(|v| v.to_string()).collect(),
            Witness::Rational(v) => v.iter().map(|v| v.to_string()).collect(),
        }
    }

    /// Small integer witnesses as `i64`, if every entry is integral and fits.
    pub fn as_i64(&self) -> Option<Vec<i64>> {
        match self {
            Witness::Modular { values, .. } => values.iter().map(|&v| i64::try_from(v).ok()).collect(),
            Witness::Integer(v) => v.iter().map(|x| x.to_i64()).collect(),
            Witness::Rational(v) => v
                .iter()
                .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
                .collect(),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 2)?;
        let kind = match self {
            Witness::Modular { .. } => "modular",
            Witness::Integer(_) => "integer",
            Witness::Rational(_) => "rational",
        };
        st.serialize_field("kind", kind)?;
        st.serialize_field("values", &self.strings())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub status: Status,
    pub witness: Option<Witness>,
    pub rank: Option<usize>,
    pub notes: Vec<String>,
}

impl SolveOutcome {
    pub(crate) fn infeasible(note: impl Into<String>) -> Self {
        Self {
            status: Status::Infeasible,
            witness: None,
            rank: None,
            notes: vec![note.into()],
        }
    }

    pub(crate) fn solvable(witness: Witness) -> Self {
        Self {
            status: Status::Solvable,
            witness: Some(witness),
            rank: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn unknown(note: impl Into<String>) -> Self {
        Self {
            status: Status::UnknownBudget,
            witness: None,
            rank: None,
            notes: vec![note.into()],
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.status == Status::Solvable
    }
}

/// Solves over the system's declared ring.
pub fn solve(system: &ExactSystem, budget: u64) -> Result<SolveOutcome, LinsysError> {
    match system.ring {
        Ring::Fp(p) => solve_mod_p(system, p),
        Ring::Integer => Ok(solve_integer(system)),
        Ring::Rational => Ok(solve_rational(system)),
        Ring::NonNegInteger => Ok(solve_nonneg_integer(system, budget)),
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// One equation per cell `(i, j)`, one unknown per element: `A[(i, j)][g] = [i^g = j]`,
/// right-hand side all ones.
pub fn build_full_system(group: &GroupEnumeration) -> ExactSystem {
    let n = group.degree();
    let mut rows = vec![vec![0i64; group.order()]; n * n];
    for (k, g) in group.elements().iter().enumerate() {
        for i in 0..n {
            rows[i * n + g.apply(i)][k] = 1;
        }
    }
    ExactSystem {
        ring: Ring::Integer,
        rows,
        rhs: vec![1; n * n],
        vars: (0..group.order()).map(|k| VarLabel { element: k, class_size: 1 }).collect(),
        eqs: (0..n * n).map(|c| EqLabel::Cell((c / n) as u32, (c % n) as u32)).collect(),
        pinned: Vec::new(),
    }
}

/// The collapsed system for a subgroup `H` of `G`.
pub fn build_h_system(g: &GroupEnumeration, h: &GroupEnumeration) -> Result<ExactSystem, LinsysError> {
    let classes = conjugation_reps(g, h)?;
    let orbits = orbits_on_pairs(h);
    let n = g.degree();
    let r = orbits.len();
    let column = |x: &Permutation| {
        let mut col = vec![0i64; r];
        for w in 0..n {
            col[orbits.orbit_of(w, x.apply(w))] += 1;
        }
        col
    };
    let columns: Vec<Vec<i64>> = classes.reps.iter().map(|&k| column(&g.elements()[k])).collect();

    // a_i is constant on H-classes: exhaustive for small groups, a fixed stride otherwise.
    let stride = (g.order() * n / 20_000_000).max(1);
    for k in (0..g.order()).step_by(stride) {
        assert_eq!(
            column(&g.elements()[k]),
            columns[classes.class_of[k]],
            "orbit counts differ within an H-conjugacy class"
        );
    }

    let mut rows = vec![vec![0i64; columns.len()]; r];
    for (j, col) in columns.iter().enumerate() {
        for (i, &a) in col.iter().enumerate() {
            rows[i][j] = a;
        }
    }
    Ok(ExactSystem {
        ring: Ring::Integer,
        rows,
        rhs: orbits.orbits().iter().map(|o| o.len() as i64).collect(),
        vars: classes
            .reps
            .iter()
            .zip(&classes.sizes)
            .map(|(&element, &class_size)| VarLabel { element, class_size })
            .collect(),
        eqs: orbits
            .orbits()
            .iter()
            .enumerate()
            .map(|(index, o)| EqLabel::Orbit { index, size: o.len() })
            .collect(),
        pinned: Vec::new(),
    })
}

/// Keeps the identity and the fixed-point-free elements. With `pin_identity` the identity is
/// set to 1 and its column moved into the right-hand side.
pub fn restrict_to_fpf(system: &ExactSystem, elements: &[Permutation], pin_identity: bool) -> ExactSystem {
    let mut keep = Vec::new();
    let mut identity = None;
    for (j, v) in system.vars.iter().enumerate() {
        let g = &elements[v.element];
        if g.is_identity() {
            identity = Some(j);
            if !pin_identity {
                keep.push(j);
            }
        } else if g.is_fixed_point_free() {
            keep.push(j);
        }
    }
    let mut out = system.restrict_columns(&keep);
    if let (true, Some(j)) = (pin_identity, identity) {
        for (b, row) in out.rhs.iter_mut().zip(&system.rows) {
            *b -= row[j];
        }
        out.pinned.push((system.vars[j], 1));
    }
    out
}

/// Expands a witness of a column restriction back to the full variable list with zeros.
pub fn zero_extend(witness: &Witness, kept: &[usize], total: usize) -> Witness {
    match witness {
        Witness::Modular { modulus, values } => {
            let mut out = vec![0; total];
            for (&j, &v) in kept.iter().zip(values) {
                out[j] = v;
            }
            Witness::Modular { modulus: *modulus, values: out }
        }
        Witness::Integer(values) => {
            let mut out = vec![BigInt::zero(); total];
            for (&j, v) in kept.iter().zip(values) {
                out[j] = v.clone();
            }
            Witness::Integer(out)
        }
        Witness::Rational(values) => {
            let mut out = vec![BigRational::zero(); total];
            for (&j, v) in kept.iter().zip(values) {
                out[j] = v.clone();
            }
            Witness::Rational(out)
        }
    }
}
