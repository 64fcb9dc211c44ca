use std::collections::{HashMap, VecDeque};
use std::hash::{BuildHasherDefault, Hasher};

use super::{PermError, Permutation};

/// Groups above this order are only handled through family-mode verification.
pub const DEFAULT_ENUMERATION_CAP: usize = 2_000_000;

/// A permutation group given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// Order recorded alongside the generators (e.g. in a group file), checked on enumeration.
    pub declared_order: Option<u64>,
}

impl GroupSpec {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self, PermError> {
        if generators.is_empty() {
            return Err(PermError::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        Ok(Self {
            name: name.into(),
            degree,
            generators,
            declared_order: None,
        })
    }

    pub fn with_order(mut self, order: u64) -> Self {
        self.declared_order = Some(order);
        self
    }
}

#[derive(Default)]
struct PassThroughHasher(u64);

impl Hasher for PassThroughHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, _: &[u8]) {
        unreachable!("only u64 keys are hashed")
    }
    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

type FingerprintMap<V> = HashMap<u64, V, BuildHasherDefault<PassThroughHasher>>;

fn fingerprint(images: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in images {
        h ^= x as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    // splitmix64 finalizer
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94d0_49bb_1331_11eb);
    h ^ (h >> 31)
}

/// All elements of a finite permutation group, in breadth-first discovery order.
#[derive(Clone)]
pub struct GroupEnumeration {
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: FingerprintMap<u32>,
    collisions: FingerprintMap<Vec<u32>>,
}

impl std::fmt::Debug for GroupEnumeration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupEnumeration")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl GroupEnumeration {
    fn empty(name: String, degree: usize) -> Self {
        Self {
            name,
            degree,
            elements: Vec::new(),
            index: FingerprintMap::default(),
            collisions: FingerprintMap::default(),
        }
    }

    /// Returns false if `g` was already present.
    fn push(&mut self, g: Permutation) -> bool {
        let fp = fingerprint(g.images());
        match self.index.get(&fp) {
            None => {
                self.index.insert(fp, self.elements.len() as u32);
                self.elements.push(g);
                true
            }
            Some(&i) if self.elements[i as usize] == g => false,
            Some(_) => {
                let bucket = self.collisions.entry(fp).or_default();
                if bucket.iter().any(|&j| self.elements[j as usize] == g) {
                    return false;
                }
                bucket.push(self.elements.len() as u32);
                self.elements.push(g);
                true
            }
        }
    }

    /// Builds an enumeration from an explicit element list, dropping duplicates.
    /// Closure is not checked; see [`GroupEnumeration::is_closed`].
    pub fn from_elements(
        name: impl Into<String>,
        degree: usize,
        elements: impl IntoIterator<Item = Permutation>,
    ) -> Result<Self, PermError> {
        let mut e = Self::empty(name.into(), degree);
        for g in elements {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
            e.push(g);
        }
        Ok(e)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        let fp = fingerprint(g.images());
        let &i = self.index.get(&fp)?;
        if self.elements[i as usize] == *g {
            return Some(i as usize);
        }
        self.collisions
            .get(&fp)?
            .iter()
            .find(|&&j| self.elements[j as usize] == *g)
            .map(|&j| j as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    pub fn contains_all(&self, other: &GroupEnumeration) -> bool {
        other.degree == self.degree && other.elements.iter().all(|g| self.contains(g))
    }

    /// Exhaustive closure check: identity, inverses and all products.
    pub fn is_closed(&self) -> bool {
        self.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|g| {
                self.contains(&g.inverse()) && self.elements.iter().all(|h| self.contains(&g.then(h)))
            })
    }

    /// Elements fixing `point`, in enumeration order.
    pub fn stabilizer(&self, point: usize) -> GroupEnumeration {
        let mut s = Self::empty(format!("{}_{point}", self.name), self.degree);
        for g in self.elements.iter().filter(|g| g.fixes(point)) {
            s.push(g.clone());
        }
        s
    }

    pub fn check_declared_order(&self, spec: &GroupSpec) -> Result<(), PermError> {
        match spec.declared_order {
            Some(declared) if declared != self.order() as u64 => Err(PermError::OrderMismatch {
                declared,
                found: self.order() as u64,
            }),
            _ => Ok(()),
        }
    }
}

/// Breadth-first closure of the generators. Elements appear in discovery order with the
/// generators applied in listed order, so the result is fully deterministic.
pub fn enumerate(spec: &GroupSpec, cap: usize) -> Result<GroupEnumeration, PermError> {
    assert!(cap >= 1, "enumeration cap must be positive");
    if spec.generators.is_empty() {
        return Err(PermError::NoGenerators);
    }
    let mut group = GroupEnumeration::empty(spec.name.clone(), spec.degree);
    group.push(Permutation::identity(spec.degree));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &spec.generators {
            let h = group.elements[i].then(s);
            if group.push(h) {
                if group.order() > cap {
                    return Err(PermError::TooLarge { cap });
                }
                queue.push_back(group.order() - 1);
            }
        }
    }
    Ok(group)
}

/// Orbits of `H` acting on `G` by conjugation `g -> h^-1 g h`.
#[derive(Debug, Clone)]
pub struct ConjugationClasses {
    /// Representative of each orbit (index into `G`), the least element in enumeration order.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Orbit number for every element of `G`.
    pub class_of: Vec<usize>,
}

pub fn conjugation_reps(
    g: &GroupEnumeration,
    h: &GroupEnumeration,
) -> Result<ConjugationClasses, PermError> {
    if !g.contains_all(h) {
        return Err(PermError::NotSubgroup);
    }
    let inverses: Vec<Permutation> = h.elements().iter().map(|x| x.inverse()).collect();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..g.order() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class = reps.len();
        let x = &g.elements()[start];
        let mut size = 0;
        for (hi, hh) in inverses.iter().zip(h.elements()) {
            let y = hi.then(x).then(hh);
            let j = g.index_of(&y).expect("conjugate lies in G");
            if class_of[j] == usize::MAX {
                class_of[j] = class;
                size += 1;
            }
        }
        reps.push(start);
        sizes.push(size);
    }
    Ok(ConjugationClasses {
        reps,
        sizes,
        class_of,
    })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A Sylow `p`-subgroup, grown greedily: a `p`-subgroup admitting no extension by a single
/// element is maximal, hence Sylow.
pub fn sylow_subgroup(group: &GroupEnumeration, p: u64) -> Result<GroupEnumeration, PermError> {
    let order = group.order() as u64;
    let mut target = 1u64;
    while order % (target * p) == 0 {
        target *= p;
    }
    let n = group.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = enumerate(&super::standard::trivial(n), 1)?;
    while (current.order() as u64) < target {
        let before = current.order();
        for g in group.elements() {
            if current.contains(g) || !is_power_of(g.order(), p) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(g.clone());
            let spec = GroupSpec::new("sylow", n, trial.clone())?;
            match enumerate(&spec, target as usize) {
                Ok(e) if is_power_of(e.order() as u64, p) => {
                    gens = trial;
                    current = e;
                    if current.order() as u64 == target {
                        break;
                    }
                }
                Ok(_) | Err(PermError::TooLarge { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        assert!(current.order() > before, "no single-element extension of a non-Sylow p-subgroup");
    }
    let mut sylow = current;
    sylow.name = format!("{}_syl{p}", group.name);
    Ok(sylow)
}

#[cfg(test)]
mod tests {
    use super::super::standard::*;
    use super::*;

    #[test]
    fn enumeration_orders() {
        assert_eq!(enumerate(&cyclic(5), 100).unwrap().order(), 5);
        assert_eq!(enumerate(&symmetric(6), 10_000).unwrap().order(), 720);
        assert_eq!(enumerate(&alternating(6), 10_000).unwrap().order(), 360);
        assert_eq!(enumerate(&trivial(3), 1).unwrap().order(), 1);
    }

    #[test]
    fn cap_is_an_explicit_outcome() {
        assert_eq!(
            enumerate(&symmetric(6), 719).unwrap_err(),
            PermError::TooLarge { cap: 719 }
        );
    }

    #[test]
    fn enumeration_is_deterministic_and_closed() {
        let a = enumerate(&symmetric(4), 100).unwrap();
        let b = enumerate(&symmetric(4), 100).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.elements()[0].is_identity());
        assert!(a.is_closed());
    }

    #[test]
    fn conjugation_examples() {
        let s3 = enumerate(&symmetric(3), 10).unwrap();
        let one = enumerate(&trivial(3), 1).unwrap();
        let t = conjugation_reps(&s3, &one).unwrap();
        assert_eq!(t.reps, (0..6).collect::<Vec<_>>());

        let t = conjugation_reps(&s3, &s3).unwrap();
        let mut sizes = t.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);

        let c2 = enumerate(
            &GroupSpec::new("C2", 3, vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap(),
            10,
        )
        .unwrap();
        let t = conjugation_reps(&s3, &c2).unwrap();
        assert_eq!(t.sizes.iter().sum::<usize>(), 6);
        for (&r, class) in t.reps.iter().zip(0..) {
            assert_eq!(t.class_of[r], class);
            assert!(t.class_of.iter().position(|&c| c == class).unwrap() == r);
        }

        let s4 = enumerate(&symmetric(4), 100).unwrap();
        assert_eq!(conjugation_reps(&s3, &s4).unwrap_err(), PermError::NotSubgroup);
    }

    #[test]
    fn sylow_orders() {
        let a6 = enumerate(&alternating(6), 1000).unwrap();
        let s2 = sylow_subgroup(&a6, 2).unwrap();
        let s3 = sylow_subgroup(&a6, 3).unwrap();
        let s5 = sylow_subgroup(&a6, 5).unwrap();
        assert_eq!((s2.order(), s3.order(), s5.order()), (8, 9, 5));
        assert!(a6.contains_all(&s2) && s2.is_closed());
        assert!(a6.contains_all(&s3) && s3.is_closed());
    }
}
