//! The symplectic space `GF(q)^(2n)` for `q = 2^m`, its projective points, lines, and an
//! elliptic quadric whose polar form is the standard alternating form.
//!
//! Vectors are packed into a `u32`, coordinate `i` occupying bits `i*m .. (i+1)*m`, so vector
//! addition is XOR. Vector points are the nonzero vectors, indexed by `packed - 1`; projective
//! points are indexed by the order of their normalized representatives (first nonzero
//! coordinate equal to 1).

use std::collections::HashSet;

use thiserror::Error;

use crate::bitset::PointSet;
use crate::gf::{Fe, Field};
use crate::perm::{GroupSpec, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("half-dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("space GF({q})^{dim} is too large to index")]
    TooLarge { q: u64, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Projective,
    Vector,
}

#[derive(Debug, Clone)]
pub struct SymplecticSpace {
    n: usize,
    field: Field,
    /// Normalized representative of each projective point.
    reps: Vec<u32>,
    /// Projective point of each packed vector (entry 0 unused).
    proj_of: Vec<u32>,
}

impl SymplecticSpace {
    pub fn new(n: usize, field: Field) -> Result<Self, GeometryError> {
        if n < 2 {
            return Err(GeometryError::Dimension(n));
        }
        let bits = 2 * n as u32 * field.degree();
        if bits > 20 {
            return Err(GeometryError::TooLarge {
                q: field.order(),
                dim: 2 * n,
            });
        }
        let mut space = Self {
            n,
            field,
            reps: Vec::new(),
            proj_of: vec![u32::MAX; 1 << bits],
        };
        for v in 1..1u32 << bits {
            if space.normalize(v) == v {
                space.reps.push(v);
            }
        }
        for v in 1..1u32 << bits {
            let rep = space.normalize(v);
            space.proj_of[v as usize] = space.reps.binary_search(&rep).expect("rep listed") as u32;
        }
        Ok(space)
    }

    pub fn half_dimension(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn vector_point_count(&self) -> usize {
        self.proj_of.len() - 1
    }

    pub fn projective_point_count(&self) -> usize {
        self.reps.len()
    }

    pub fn point_count(&self, action: Action) -> usize {
        match action {
            Action::Projective => self.projective_point_count(),
            Action::Vector => self.vector_point_count(),
        }
    }

    pub fn coord(&self, v: u32, i: usize) -> Fe {
        let m = self.field.degree();
        Fe(v >> (i as u32 * m) & ((1 << m) - 1))
    }

    pub fn from_coords(&self, coords: &[Fe]) -> u32 {
        assert_eq!(coords.len(), self.dimension());
        let m = self.field.degree();
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (i, c)| acc | c.0 << (i as u32 * m))
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn basis(&self, i: usize) -> u32 {
        1 << (i as u32 * self.field.degree())
    }

    pub fn scale(&self, a: Fe, v: u32) -> u32 {
        let coords: Vec<Fe> = (0..self.dimension())
            .map(|i| self.field.mul(a, self.coord(v, i)))
            .collect();
        self.from_coords(&coords)
    }

    fn normalize(&self, v: u32) -> u32 {
        let lead = (0..self.dimension())
            .map(|i| self.coord(v, i))
            .find(|c| !c.is_zero())
            .expect("nonzero vector");
        self.scale(self.field.inv(lead).expect("nonzero lead"), v)
    }

    /// `<x, y> = sum_i x_(2i) y_(2i+1) + x_(2i+1) y_(2i)`.
    pub fn symplectic_form(&self, x: u32, y: u32) -> Fe {
        let f = &self.field;
        (0..self.n).fold(Fe::ZERO, |acc, i| {
            let a = f.mul(self.coord(x, 2 * i), self.coord(y, 2 * i + 1));
            let b = f.mul(self.coord(x, 2 * i + 1), self.coord(y, 2 * i));
            f.add(acc, f.add(a, b))
        })
    }

    pub fn vector_point(&self, v: u32) -> usize {
        assert!(v != 0);
        v as usize - 1
    }

    pub fn vector_of_point(&self, index: usize) -> u32 {
        index as u32 + 1
    }

    pub fn projective_point(&self, v: u32) -> usize {
        self.proj_of[v as usize] as usize
    }

    pub fn representative(&self, point: usize) -> u32 {
        self.reps[point]
    }

    /// Preimage under the natural map from vector points to projective points.
    pub fn vector_lift(&self, projective: &PointSet) -> PointSet {
        assert_eq!(projective.universe(), self.projective_point_count());
        let mut lifted = PointSet::empty(self.vector_point_count());
        for v in 1..self.proj_of.len() as u32 {
            if projective.contains(self.projective_point(v)) {
                lifted.insert(self.vector_point(v));
            }
        }
        lifted
    }

    /// The permutation of points induced by a linear or semilinear vector map.
    pub fn point_permutation(&self, action: Action, map: impl Fn(u32) -> u32) -> Permutation {
        let images: Vec<u32> = match action {
            Action::Vector => (1..self.proj_of.len() as u32)
                .map(|v| self.vector_point(map(v)) as u32)
                .collect(),
            Action::Projective => self
                .reps
                .iter()
                .map(|&v| self.projective_point(map(v)) as u32)
                .collect(),
        };
        Permutation::new(images).expect("vector map is bijective")
    }

    /// The transvection `x -> x + <x, v> v`.
    pub fn transvection(&self, v: u32) -> impl Fn(u32) -> u32 + '_ {
        move |x| x ^ self.scale(self.symplectic_form(x, v), v)
    }

    /// Coordinatewise squaring, the Frobenius automorphism applied to vectors.
    pub fn frobenius(&self) -> impl Fn(u32) -> u32 + '_ {
        move |x| {
            let coords: Vec<Fe> = (0..self.dimension())
                .map(|i| self.field.square(self.coord(x, i)))
                .collect();
            self.from_coords(&coords)
        }
    }
}

/// `|Sp(2n, q)| = q^(n^2) prod_(i=1..n) (q^(2i) - 1)`.
pub fn symplectic_group_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (1..=n).fold(q.pow(n * n), |acc, i| acc * (q.pow(2 * i) - 1))
}

/// An elliptic quadric `Q(x) = x0 x1 + .. + x(2n-4) x(2n-3) + x(2n-2)^2 + x(2n-2) x(2n-1)
/// + delta x(2n-1)^2` with `Tr(delta) = 1`, so that the last binary summand is anisotropic.
#[derive(Debug, Clone)]
pub struct QuadricData {
    pub delta: Fe,
    /// Projective zero set.
    pub points: PointSet,
    /// Nonzero vectors with `Q = 0`.
    pub vectors: PointSet,
}

impl QuadricData {
    pub fn expected_size(n: u32, q: u64) -> u64 {
        (q.pow(2 * n - 1) - 1) / (q - 1) - q.pow(n - 1)
    }
}

pub fn quadratic_form(space: &SymplecticSpace, delta: Fe, x: u32) -> Fe {
    let f = space.field();
    let n = space.half_dimension();
    let c = |i| space.coord(x, i);
    let mut acc = Fe::ZERO;
    for i in 0..n - 1 {
        acc = f.add(acc, f.mul(c(2 * i), c(2 * i + 1)));
    }
    let (a, b) = (c(2 * n - 2), c(2 * n - 1));
    let tail = f.add(f.add(f.square(a), f.mul(a, b)), f.mul(delta, f.square(b)));
    f.add(acc, tail)
}

pub fn elliptic_quadric(space: &SymplecticSpace) -> QuadricData {
    let f = space.field();
    let delta = f
        .elements()
        .find(|&d| f.trace(d) == 1)
        .expect("a trace-one element exists in every GF(2^m)");
    let mut vectors = PointSet::empty(space.vector_point_count());
    let mut points = PointSet::empty(space.projective_point_count());
    for v in 1..=space.vector_point_count() as u32 {
        if quadratic_form(space, delta, v).is_zero() {
            vectors.insert(space.vector_point(v));
            points.insert(space.projective_point(v));
        }
    }
    QuadricData {
        delta,
        points,
        vectors,
    }
}

/// A projective line given by a spanning pair and its `q + 1` points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveLine {
    pub u: u32,
    pub v: u32,
    pub points: PointSet,
}

fn span_points(space: &SymplecticSpace, u: u32, v: u32) -> PointSet {
    let mut pts = PointSet::empty(space.projective_point_count());
    pts.insert(space.projective_point(u));
    for a in space.field().elements() {
        pts.insert(space.projective_point(space.scale(a, u) ^ v));
    }
    pts
}

/// Every line of `PG(2n-1, q)` exactly once, keyed by its two least points.
pub fn enumerate_lines(space: &SymplecticSpace) -> Vec<ProjectiveLine> {
    let count = space.projective_point_count();
    let mut lines = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            let (u, v) = (space.representative(i), space.representative(j));
            let points = span_points(space, u, v);
            let least: Vec<usize> = points.iter().take(2).collect();
            if least == [i, j] {
                lines.push(ProjectiveLine { u, v, points });
            }
        }
    }
    lines
}

pub fn is_nonsingular_line(space: &SymplecticSpace, line: &ProjectiveLine) -> bool {
    !space.symplectic_form(line.u, line.v).is_zero()
}

pub fn nonsingular_lines(space: &SymplecticSpace) -> Vec<ProjectiveLine> {
    enumerate_lines(space)
        .into_iter()
        .filter(|l| is_nonsingular_line(space, l))
        .collect()
}

/// Generating set of `Sp(2n, q)`: the transvections `x -> x + <x, v> v`, one per projective
/// point `<v>`. Every symplectic transvection `x -> x + c <x, w> w` equals one of these
/// because squaring is onto in characteristic 2.
pub fn symplectic_generators(space: &SymplecticSpace, action: Action) -> GroupSpec {
    let generators: Vec<Permutation> = (0..space.projective_point_count())
        .map(|p| {
            let t = space.transvection(space.representative(p));
            space.point_permutation(action, t)
        })
        .collect();
    let name = format!(
        "Sp({},{})-{}",
        space.dimension(),
        space.q(),
        match action {
            Action::Projective => "projective",
            Action::Vector => "vector",
        }
    );
    let mut spec = GroupSpec::new(name, space.point_count(action), generators).expect("generators");
    // Sp(2n, q) has trivial centre in characteristic 2, so both actions are faithful.
    let order = symplectic_group_order(space.half_dimension() as u32, space.q());
    spec.declared_order = u64::try_from(order).ok();
    spec
}

/// Checks `<x^g, y^g> = <x, y>` for a vector map `g` on all pairs (small spaces) or a
/// deterministic sample of pairs.
pub fn preserves_form(space: &SymplecticSpace, map: impl Fn(u32) -> u32) -> bool {
    let count = space.vector_point_count() as u32;
    let images: Vec<u32> = (0..=count).map(|v| if v == 0 { 0 } else { map(v) }).collect();
    let step = if count <= 256 { 1 } else { 7 };
    (1..=count).step_by(step).all(|x| {
        (1..=count)
            .step_by(step)
            .all(|y| space.symplectic_form(images[x as usize], images[y as usize]) == space.symplectic_form(x, y))
    })
}

/// Checks that every listed point permutation maps each set of `family` into `family`.
pub fn family_closed_under(family: &[PointSet], generators: &[Permutation]) -> bool {
    let lookup: HashSet<&PointSet> = family.iter().collect();
    generators.iter().all(|g| {
        family
            .iter()
            .all(|s| lookup.contains(&s.map(|x| g.apply(x))))
    })
}
