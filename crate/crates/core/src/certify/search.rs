use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Certificate, CertifyError, FamilyDescriptor};
use crate::bitset::PointSet;
use crate::linsys::{f2_complement_witness, is_prime, solve_mod_p, ExactSystem, Witness};
use crate::perm::GroupEnumeration;

/// Domains up to this size are searched exhaustively over all pairs `(B, C)`.
pub const EXHAUSTIVE_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest allowed `|B|` and `|C|`.
    pub max_size: usize,
    /// Candidate sets `C` tried by the randomized search.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_size: usize::MAX,
            budget: 2_000,
            seed: 0,
        }
    }
}

fn descriptor(group: &GroupEnumeration) -> FamilyDescriptor {
    FamilyDescriptor::EnumeratedGroup {
        name: group.name().into(),
        order: group.order(),
    }
}

fn mask_image(mask: u32, images: &[u32]) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let x = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << images[x];
    }
    out
}

fn exhaustive(group: &GroupEnumeration, p: u64, max: usize) -> Option<(u32, u32)> {
    let n = group.degree();
    let elements: Vec<Vec<u32>> = group.elements().iter().map(|g| g.images().to_vec()).collect();
    let sizes_ok = |m: u32| {
        let k = m.count_ones() as usize;
        k <= max && k as u64 % p != 0
    };
    for c in 1..1u32 << n {
        if !sizes_ok(c) {
            continue;
        }
        let images: BTreeSet<u32> = elements.iter().map(|g| mask_image(c, g)).collect();
        for b in 1..1u32 << n {
            if sizes_ok(b) && images.iter().all(|&i| (b & i).count_ones() as u64 % p == 0) {
                return Some((b, c));
            }
        }
    }
    None
}

/// Distinct images `C^g`.
fn images_of(group: &GroupEnumeration, c: &PointSet) -> Vec<PointSet> {
    let set: BTreeSet<PointSet> = group.elements().iter().map(|g| c.map(|x| g.apply(x))).collect();
    set.into_iter().collect()
}

/// A set `B` with `p` dividing `|B ∩ C'|` for every image and not dividing `|B|`, found by linear
/// algebra over `F_p` (exact for `p = 2`; for odd `p` only 0/1 solutions are accepted).
fn complete(images: &[PointSet], p: u64) -> Option<PointSet> {
    let n = images[0].universe();
    if p == 2 {
        let lists: Vec<Vec<usize>> = images.iter().map(|s| s.iter().collect()).collect();
        let b = f2_complement_witness(&lists, n)?;
        return Some(PointSet::from_points(n, (0..n).filter(|&i| b[i])));
    }
    let mut rows: Vec<Vec<i64>> = images
        .iter()
        .map(|s| (0..n).map(|x| i64::from(s.contains(x))).collect())
        .collect();
    let mut rhs = vec![0; rows.len()];
    rows.push(vec![1; n]);
    rhs.push(1);
    let out = solve_mod_p(&ExactSystem::from_rows(rows, rhs), p).ok()?;
    match out.witness? {
        Witness::Modular { values, .. } if values.iter().all(|&v| v <= 1) => {
            Some(PointSet::from_points(n, (0..n).filter(|&i| values[i] == 1)))
        }
        _ => None,
    }
}

/// Unions of orbits of the cyclic subgroup generated by `g`, chosen by the bits of `pick`.
fn cyclic_orbit_union(group: &GroupEnumeration, index: usize, pick: u64) -> PointSet {
    let g = &group.elements()[index];
    let n = group.degree();
    let mut seen = vec![false; n];
    let mut out = PointSet::empty(n);
    let mut orbit_no = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let take = pick >> (orbit_no % 64) & 1 == 1;
        orbit_no += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            if take {
                out.insert(x);
            }
            x = g.apply(x);
        }
    }
    out
}

/// Searches for a certificate `(B, C, p)` valid for every element of `group`.
///
/// Domains of at most [`EXHAUSTIVE_DEGREE`] points are scanned exhaustively, so `None` means no
/// certificate exists within the size bound. Larger domains try candidate sets `C` (unions of
/// orbits of cyclic subgroups, then random subsets) and solve for `B`; `None` then only means
/// the budget ran out.
pub fn certificate_search(
    group: &GroupEnumeration,
    p: u64,
    bounds: &SearchBounds,
) -> Result<Option<Certificate>, CertifyError> {
    if !is_prime(p) {
        return Err(CertifyError::NotPrime(p));
    }
    let n = group.degree();
    if n == 0 {
        return Ok(None);
    }
    if n <= EXHAUSTIVE_DEGREE {
        return Ok(exhaustive(group, p, bounds.max_size).map(|(b, c)| {
            let set = |m: u32| PointSet::from_points(n, (0..n).filter(|&i| m >> i & 1 == 1));
            Certificate::new(set(b), set(c), p, descriptor(group)).expect("nonempty sets and prime p")
        }));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut order: Vec<usize> = (1..group.order()).collect();
    order.shuffle(&mut rng);
    let mut tried = BTreeSet::new();
    for attempt in 0..bounds.budget {
        let c = if attempt % 2 == 0 && !order.is_empty() {
            let index = order[(attempt as usize / 2) % order.len()];
            cyclic_orbit_union(group, index, rng.gen())
        } else {
            let k = rng.gen_range(1..=n.min(bounds.max_size));
            let mut pts: Vec<usize> = (0..n).collect();
            pts.shuffle(&mut rng);
            PointSet::from_points(n, pts.into_iter().take(k))
        };
        let k = c.count();
        if k == 0 || k > bounds.max_size || k as u64 % p == 0 || !tried.insert(c.clone()) {
            continue;
        }
        let images = images_of(group, &c);
        if let Some(b) = complete(&images, p) {
            if b.count() <= bounds.max_size && !b.is_empty() {
                let cert = Certificate::new(b, c, p, descriptor(group))?;
                debug_assert!(cert.side_condition());
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::verify_certificate_enumerated;
    use super::*;
    use crate::perm::{enumerate, standard};

    #[test]
    fn groups_with_sharply_transitive_sets_have_no_certificate() {
        for spec in [standard::cyclic(5), standard::symmetric(3), standard::symmetric(4), standard::alternating(4)] {
            let g = enumerate(&spec, 100).unwrap();
            for p in [2, 3, 5] {
                assert!(certificate_search(&g, p, &SearchBounds::default()).unwrap().is_none(), "{} {p}", g.name());
            }
        }
    }

    #[test]
    fn trivial_group_has_a_certificate() {
        let g = enumerate(&standard::trivial(3), 1).unwrap();
        let cert = certificate_search(&g, 2, &SearchBounds::default()).unwrap().unwrap();
        assert!(verify_certificate_enumerated(&g, &cert).unwrap().is_refuted());
    }
}
