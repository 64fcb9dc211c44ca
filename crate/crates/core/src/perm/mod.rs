//! Permutations acting on the right: `x^(ab) = (x^a)^b`.

mod action;
mod group;
mod io;

pub use action::{induced_action, orbits_on_pairs, Arrangements, PairOrbits};
pub use group::{
    conjugation_reps, enumerate, sylow_subgroup, ConjugationClasses, GroupEnumeration, GroupSpec,
    DEFAULT_ENUMERATION_CAP,
};
pub use io::{parse_group_file, read_group_file, write_group_file};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image array is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("group has no generators")]
    NoGenerators,
    #[error("group order exceeds enumeration cap {cap}")]
    TooLarge { cap: usize },
    #[error("arity t = {t} invalid for degree {n}")]
    BadArity { t: usize, n: usize },
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("declared order {declared} but enumeration gives {found}")]
    OrderMismatch { declared: u64, found: u64 },
    #[error("group file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A permutation of `{0, .., n - 1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]` maps 0->1->2->0.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x as usize >= n || y as usize >= n || touched[x as usize] {
                    return Err(PermError::NotBijection(n));
                }
                touched[x as usize] = true;
                images[x as usize] = y;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked form of [`Permutation::compose`]; panics on degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// `|{(x, y) : x < y, x^g > y^g}|`.
    pub fn inversions(&self) -> usize {
        let im = &self.images;
        let mut count = 0;
        for x in 0..im.len() {
            for y in x + 1..im.len() {
                if im[x] > im[y] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn parity(&self) -> Parity {
        if self.inversions() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 != y)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Generators for a handful of standard groups used throughout the test corpus.
pub mod standard {
    use super::{GroupSpec, Permutation};

    pub fn cyclic(n: usize) -> GroupSpec {
        let cycle: Vec<u32> = (0..n as u32).collect();
        let g = Permutation::from_cycles(n, &[&cycle]).expect("valid cycle");
        GroupSpec::new(format!("C{n}"), n, vec![g]).expect("valid spec")
    }

    pub fn symmetric(n: usize) -> GroupSpec {
        assert!(n >= 2);
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gens = vec![
            Permutation::from_cycles(n, &[&[0, 1]]).expect("transposition"),
            Permutation::from_cycles(n, &[&cycle]).expect("n-cycle"),
        ];
        GroupSpec::new(format!("S{n}"), n, gens).expect("valid spec")
    }

    /// `A_n` generated by the 3-cycles `(0 1 i)`.
    pub fn alternating(n: usize) -> GroupSpec {
        assert!(n >= 3);
        let gens = (2..n as u32)
            .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).expect("3-cycle"))
            .collect();
        GroupSpec::new(format!("A{n}"), n, gens).expect("valid spec")
    }

    pub fn trivial(n: usize) -> GroupSpec {
        GroupSpec::new("1", n, vec![Permutation::identity(n)]).expect("valid spec")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn compose_examples() {
        let g = cyc(5, &[&[0, 3, 1]]);
        assert_eq!(Permutation::identity(5).compose(&g).unwrap(), g);
        assert!(g.compose(&g.inverse()).unwrap().is_identity());

        // (0 1) then (1 2): 0 -> 1 -> 2, 1 -> 0, 2 -> 1.
        let ab = cyc(3, &[&[0, 1]]).compose(&cyc(3, &[&[1, 2]])).unwrap();
        assert_eq!(ab.images(), &[2, 0, 1]);
        for x in 0..3 {
            assert_eq!(ab.apply(x), cyc(3, &[&[1, 2]]).apply(cyc(3, &[&[0, 1]]).apply(x)));
        }

        assert_eq!(
            cyc(3, &[&[0, 1]]).compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Permutation::new(vec![0, 0, 1]), Err(PermError::NotBijection(3)));
        assert_eq!(Permutation::new(vec![0, 3, 1]), Err(PermError::NotBijection(3)));
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(Permutation::identity(6).inversions(), 0);
        for n in 2..7 {
            assert_eq!(cyc(n, &[&[0, 1]]).inversions(), 1);
        }
        assert_eq!(cyc(3, &[&[0, 1, 2]]).inversions(), 2);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(4).parity(), Parity::Even);
        assert_eq!(cyc(4, &[&[1, 3]]).parity(), Parity::Odd);
        assert_eq!(cyc(4, &[&[0, 1], &[2, 3]]).parity(), Parity::Even);
    }

    #[test]
    fn fixed_point_freeness() {
        assert!(!Permutation::identity(3).is_fixed_point_free());
        assert!(cyc(4, &[&[0, 1], &[2, 3]]).is_fixed_point_free());
        assert!(!cyc(3, &[&[0, 1]]).is_fixed_point_free());
    }
}
