//! Counting argument showing that a point stabilizer in the automorphism group of a
//! nontrivial symmetric design has no subset sharply transitive on the other points.
//!
//! With a block `B` avoiding the fixed point and `C = B`, the double count gives
//! `a (k - lambda) = k` where `a` counts members fixing `B`. With `B = C = B' \ {w}` for a
//! block `B'` through the fixed point `w`, it gives `b (k - lambda) = v - k`. Together with
//! `k (v - k) = (v - 1)(k - lambda)` these force `k - lambda = 1`, i.e. `k = v - 1`.

use num_integer::Integer;
use serde::Serialize;

use super::DesignError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetricDesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl SymmetricDesignParams {
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self, DesignError> {
        let err = |reason| DesignError::Params { v, k, lambda, reason };
        if !(v > k && k > lambda && lambda >= 1) {
            return Err(err("need v > k > lambda >= 1"));
        }
        if (v - 1) * lambda != k * (k - 1) {
            return Err(err("(v - 1) lambda != k (k - 1)"));
        }
        Ok(Self { v, k, lambda })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationStep {
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationOutcome {
    /// An unknown that must be a nonnegative integer is forced to be non-integral.
    RefutedNonIntegral { step: usize },
    /// The divisibility chain forces `k = v - 1`, contradicting nontriviality.
    RefutedByContradiction { step: usize },
    /// `k = v - 1`: the counting argument does not apply.
    TrivialDesign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationTrace {
    pub params: SymmetricDesignParams,
    pub steps: Vec<RefutationStep>,
    pub outcome: RefutationOutcome,
}

pub fn symmetric_design_refutation(
    v: u64,
    k: u64,
    lambda: u64,
) -> Result<RefutationTrace, DesignError> {
    let params = SymmetricDesignParams::new(v, k, lambda)?;
    let d = k - lambda;
    let mut steps = Vec::new();
    let mut push = |label: &str, holds: bool, detail: String| {
        steps.push(RefutationStep {
            label: label.to_string(),
            holds,
            detail,
        });
        steps.len()
    };

    let outcome = 'chain: {
        let (a, ra) = k.div_rem(&d);
        let step = push(
            "a (k - lambda) = k",
            ra == 0,
            if ra == 0 {
                format!("a = {k} / {d} = {a}")
            } else {
                format!("a = {k} / {d} is not an integer")
            },
        );
        if ra != 0 {
            break 'chain RefutationOutcome::RefutedNonIntegral { step };
        }

        let (b, rb) = (v - k).div_rem(&d);
        let step = push(
            "b (k - lambda) = v - k",
            rb == 0,
            if rb == 0 {
                format!("b = {} / {d} = {b}", v - k)
            } else {
                format!("b = {} / {d} is not an integer", v - k)
            },
        );
        if rb != 0 {
            break 'chain RefutationOutcome::RefutedNonIntegral { step };
        }

        let holds = (k * (v - k)) % (d * d) == 0;
        let step = push(
            "(k - lambda)^2 divides k (v - k)",
            holds,
            format!("{} = {a} * {b} * {}", k * (v - k), d * d),
        );
        if !holds {
            break 'chain RefutationOutcome::RefutedByContradiction { step };
        }

        let holds = v % d == 0;
        let step = push("(k - lambda) divides v", holds, format!("v = {v} = ({a} + {b}) * {d}"));
        if !holds {
            break 'chain RefutationOutcome::RefutedByContradiction { step };
        }

        let holds = k * (v - k) == (v - 1) * d && (v - 1) % d == 0;
        let step = push(
            "k (v - k) = (v - 1)(k - lambda), so (k - lambda) divides v - 1",
            holds,
            format!("{} = {} * {d}", k * (v - k), v - 1),
        );
        if !holds {
            break 'chain RefutationOutcome::RefutedByContradiction { step };
        }

        let holds = d == 1;
        let step = push(
            "k - lambda divides gcd(v, v - 1) = 1",
            holds,
            format!("k - lambda = {d}"),
        );
        if !holds {
            break 'chain RefutationOutcome::RefutedByContradiction { step };
        }

        let trivial = k == v - 1;
        let step = push(
            "k - lambda = 1 forces k = v - 1",
            trivial,
            format!("k = {k}, v - 1 = {}", v - 1),
        );
        if trivial {
            RefutationOutcome::TrivialDesign
        } else {
            RefutationOutcome::RefutedByContradiction { step }
        }
    };
    Ok(RefutationTrace {
        params,
        steps,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_refuted_at_first_step() {
        let t = symmetric_design_refutation(7, 3, 1).unwrap();
        assert_eq!(t.outcome, RefutationOutcome::RefutedNonIntegral { step: 1 });
        assert_eq!(t.steps.len(), 1);
        assert!(t.steps[0].detail.contains("3 / 2"));
    }

    #[test]
    fn biplane_refuted_at_first_step() {
        let t = symmetric_design_refutation(11, 5, 2).unwrap();
        assert_eq!(t.outcome, RefutationOutcome::RefutedNonIntegral { step: 1 });
    }

    #[test]
    fn trivial_design_is_inapplicable() {
        let t = symmetric_design_refutation(4, 3, 2).unwrap();
        assert_eq!(t.outcome, RefutationOutcome::TrivialDesign);
        assert!(t.steps.iter().all(|s| s.holds));
    }

    #[test]
    fn parameter_gate() {
        assert!(symmetric_design_refutation(7, 3, 2).is_err());
        assert!(symmetric_design_refutation(7, 7, 1).is_err());
        assert!(symmetric_design_refutation(7, 3, 0).is_err());
    }

    #[test]
    fn every_nontrivial_admissible_triple_is_refuted() {
        for v in 3..400u64 {
            for k in 2..v {
                for lambda in 1..k {
                    if (v - 1) * lambda != k * (k - 1) {
                        continue;
                    }
                    let t = symmetric_design_refutation(v, k, lambda).unwrap();
                    let trivial = k == v - 1;
                    assert_eq!(t.outcome == RefutationOutcome::TrivialDesign, trivial, "{v} {k} {lambda}");
                }
            }
        }
    }
}
