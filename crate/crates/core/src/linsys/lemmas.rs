//! Empirical checks of the solvability relations between the full system and the collapsed
//! systems of subgroups.

use serde::Serialize;

use super::{
    build_full_system, build_h_system, prime_divisors, solve_integer, solve_mod_prime_power, LinsysError, Status,
};
use crate::perm::GroupEnumeration;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaDownReport {
    pub u_order: usize,
    pub v_order: usize,
    pub u_status: Status,
    pub v_status: Status,
    /// `U` solvable but `V` not.
    pub violation: bool,
}

/// For `U <= V <= G`: an integral solution for `U` must give one for `V`.
pub fn lemma_down_check(
    g: &GroupEnumeration,
    u: &GroupEnumeration,
    v: &GroupEnumeration,
) -> Result<LemmaDownReport, LinsysError> {
    if !v.contains_all(u) || !g.contains_all(v) {
        return Err(LinsysError::NotNested);
    }
    let u_status = solve_integer(&build_h_system(g, u)?).status;
    let v_status = solve_integer(&build_h_system(g, v)?).status;
    Ok(LemmaDownReport {
        u_order: u.order(),
        v_order: v.order(),
        u_status,
        v_status,
        violation: u_status == Status::Solvable && v_status != Status::Solvable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupCheck {
    pub prime: u64,
    pub subgroup_order: usize,
    pub integral: Status,
    /// `(m, collapsed solvable mod p^m, full solvable mod p^m)` for `m = 1, 2`.
    pub modular: Vec<(u32, bool, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalGlobalReport {
    pub group_order: usize,
    pub primes: Vec<u64>,
    pub full_integral: Status,
    pub checks: Vec<SubgroupCheck>,
    /// Every prime has a supplied subgroup whose collapsed system is integrally solvable.
    pub local_side: bool,
    /// The equivalence is contradicted by the supplied subgroups.
    pub equivalence_violation: bool,
    /// A collapsed system solvable mod `p^m` while the full system is not.
    pub lifting_violation: bool,
}

/// Compares integral solvability of the full system against the collapsed systems of the
/// supplied `p'`-subgroups, and checks that modular solvability lifts from each of them.
pub fn local_global_check(
    g: &GroupEnumeration,
    subgroups: &[(u64, &GroupEnumeration)],
) -> Result<LocalGlobalReport, LinsysError> {
    let primes = prime_divisors(g.order() as u64);
    for &(p, h) in subgroups {
        if h.order() as u64 % p == 0 {
            return Err(LinsysError::NotPrimeComplement { p, order: h.order() });
        }
        if !g.contains_all(h) {
            return Err(LinsysError::NotNested);
        }
    }
    if let Some(&p) = primes.iter().find(|p| !subgroups.iter().any(|(q, _)| q == *p)) {
        return Err(LinsysError::MissingPrime(p));
    }

    let full = build_full_system(g);
    let full_integral = solve_integer(&full).status;
    let mut full_mod = std::collections::BTreeMap::new();
    let mut checks = Vec::new();
    for &(p, h) in subgroups {
        let system = build_h_system(g, h)?;
        let integral = solve_integer(&system).status;
        let mut modular = Vec::new();
        for m in 1..=2u32 {
            let local = solve_mod_prime_power(&system, p, m)?.is_solvable();
            let global = match full_mod.get(&(p, m)) {
                Some(&s) => s,
                None => {
                    let s = solve_mod_prime_power(&full, p, m)?.is_solvable();
                    full_mod.insert((p, m), s);
                    s
                }
            };
            modular.push((m, local, global));
        }
        checks.push(SubgroupCheck {
            prime: p,
            subgroup_order: h.order(),
            integral,
            modular,
        });
    }
    let local_side = primes
        .iter()
        .all(|&p| checks.iter().any(|c| c.prime == p && c.integral == Status::Solvable));
    let full_ok = full_integral == Status::Solvable;
    // Full solvable forces every collapsed system solvable; a covered local side forces the full one.
    let equivalence_violation =
        (full_ok && checks.iter().any(|c| c.integral != Status::Solvable)) || (!full_ok && local_side);
    let lifting_violation = checks
        .iter()
        .any(|c| c.modular.iter().any(|&(_, local, global)| local && !global));
    Ok(LocalGlobalReport {
        group_order: g.order(),
        primes,
        full_integral,
        checks,
        local_side,
        equivalence_violation,
        lifting_violation,
    })
}
