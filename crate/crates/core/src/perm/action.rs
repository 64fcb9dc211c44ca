use super::{GroupEnumeration, GroupSpec, PermError, Permutation};

/// The set of ordered `t`-tuples of distinct points, indexed lexicographically.
#[derive(Debug, Clone)]
pub struct Arrangements {
    n: usize,
    t: usize,
    cells: Vec<Vec<u32>>,
    /// Mixed-radix lookup `n^t -> cell index` (`u32::MAX` for tuples with repeats).
    lookup: Vec<u32>,
}

impl Arrangements {
    pub fn new(n: usize, t: usize) -> Result<Self, PermError> {
        if t == 0 || t > n {
            return Err(PermError::BadArity { t, n });
        }
        let size = n.checked_pow(t as u32).filter(|&s| s <= 1 << 26);
        let size = size.ok_or(PermError::BadArity { t, n })?;
        let mut lookup = vec![u32::MAX; size];
        let mut cells = Vec::new();
        let mut tuple = vec![0u32; t];
        for code in 0..size {
            let mut c = code;
            for slot in tuple.iter_mut().rev() {
                *slot = (c % n) as u32;
                c /= n;
            }
            let distinct = (0..t).all(|i| (i + 1..t).all(|j| tuple[i] != tuple[j]));
            if distinct {
                lookup[code] = cells.len() as u32;
                cells.push(tuple.clone());
            }
        }
        Ok(Self { n, t, cells, lookup })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.t
    }

    pub fn base_degree(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> &[u32] {
        &self.cells[index]
    }

    pub fn index_of(&self, tuple: &[u32]) -> Option<usize> {
        if tuple.len() != self.t {
            return None;
        }
        let mut code = 0usize;
        for &x in tuple {
            if x as usize >= self.n {
                return None;
            }
            code = code * self.n + x as usize;
        }
        match self.lookup[code] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// The permutation of cells induced by `g`: `(x_1, .., x_t) -> (x_1^g, .., x_t^g)`.
    pub fn induce(&self, g: &Permutation) -> Permutation {
        assert_eq!(g.degree(), self.n, "degree mismatch");
        let images = self
            .cells
            .iter()
            .map(|cell| {
                let code = cell.iter().fold(0usize, |acc, &x| acc * self.n + g.apply(x as usize));
                self.lookup[code]
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn induce_spec(&self, spec: &GroupSpec) -> GroupSpec {
        GroupSpec {
            name: format!("{}^({})", spec.name, self.t),
            degree: self.len(),
            generators: spec.generators.iter().map(|g| self.induce(g)).collect(),
            declared_order: spec.declared_order,
        }
    }
}

/// Re-expresses every element of `group` on the `t`-arrangements, keeping element order.
pub fn induced_action(
    group: &GroupEnumeration,
    t: usize,
) -> Result<(Arrangements, GroupEnumeration), PermError> {
    let arr = Arrangements::new(group.degree(), t)?;
    let induced = GroupEnumeration::from_elements(
        format!("{}^({t})", group.name()),
        arr.len(),
        group.elements().iter().map(|g| arr.induce(g)),
    )?;
    debug_assert_eq!(induced.order(), group.order());
    Ok((arr, induced))
}

/// Partition of `Ω × Ω` into orbits of a group.
#[derive(Debug, Clone)]
pub struct PairOrbits {
    n: usize,
    /// Orbit number of pair `(a, b)` at index `a * n + b`.
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<(u32, u32)>>,
}

impl PairOrbits {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<(u32, u32)>] {
        &self.orbits
    }

    pub fn orbit_of(&self, a: usize, b: usize) -> usize {
        self.orbit_of[a * self.n + b] as usize
    }
}

/// Orbits on ordered pairs, numbered by their least pair in row-major order.
pub fn orbits_on_pairs(h: &GroupEnumeration) -> PairOrbits {
    let n = h.degree();
    let mut orbit_of = vec![u32::MAX; n * n];
    let mut orbits = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if orbit_of[a * n + b] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit = Vec::new();
            for g in h.elements() {
                let (x, y) = (g.apply(a), g.apply(b));
                if orbit_of[x * n + y] == u32::MAX {
                    orbit_of[x * n + y] = id;
                    orbit.push((x as u32, y as u32));
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
    }
    PairOrbits {
        n,
        orbit_of,
        orbits,
    }
}
