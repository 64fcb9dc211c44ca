//! Random automorphisms of Steiner systems by backtracking, used to produce generators of
//! point stabilizers (e.g. M22 inside the automorphism group of W23).

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::Design;
use crate::bitset::PointSet;
use crate::perm::Permutation;

/// Every block image is a block.
pub fn is_automorphism(design: &Design, g: &Permutation) -> bool {
    if g.degree() != design.v {
        return false;
    }
    let blocks: HashSet<&PointSet> = design.blocks.iter().collect();
    design
        .blocks
        .iter()
        .all(|b| blocks.contains(&b.map(|x| g.apply(x))))
}

struct Search<'a> {
    design: &'a Design,
    t: usize,
    through: Vec<Vec<usize>>,
    /// Sorted `t`-subsets to the unique block containing them.
    lookup: HashMap<Vec<usize>, usize>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
}

impl Search<'_> {
    fn consistent(&self, x: usize) -> bool {
        for &bi in &self.through[x] {
            let block = &self.design.blocks[bi];
            let assigned: Vec<usize> = block.iter().filter(|&z| self.image[z].is_some()).collect();
            if assigned.len() < self.t {
                continue;
            }
            let mut key: Vec<usize> = assigned[..self.t].iter().map(|&z| self.image[z].unwrap()).collect();
            key.sort_unstable();
            let Some(&target) = self.lookup.get(&key) else {
                return false;
            };
            let target = &self.design.blocks[target];
            for (z, img) in self.image.iter().enumerate() {
                if let Some(w) = img {
                    if block.contains(z) != target.contains(*w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend<R: Rng>(&mut self, order: &[usize], depth: usize, fixed: &[usize], rng: &mut R, limit: u64) -> bool {
        self.nodes += 1;
        if self.nodes > limit {
            return false;
        }
        let Some(&x) = order.get(depth) else {
            return true;
        };
        let mut candidates: Vec<usize> = if fixed.contains(&x) {
            vec![x]
        } else {
            (0..self.design.v).filter(|&y| !self.used[y] && !fixed.contains(&y)).collect()
        };
        candidates.shuffle(rng);
        for y in candidates {
            self.image[x] = Some(y);
            self.used[y] = true;
            if self.consistent(x) && self.extend(order, depth + 1, fixed, rng, limit) {
                return true;
            }
            self.image[x] = None;
            self.used[y] = false;
        }
        false
    }
}

/// A random automorphism of a Steiner `t`-design fixing every point of `fixed`, or `None` if
/// the search gives up after `limit` nodes.
pub fn random_automorphism<R: Rng>(
    design: &Design,
    t: usize,
    fixed: &[usize],
    rng: &mut R,
    limit: u64,
) -> Option<Permutation> {
    let v = design.v;
    let mut through = vec![Vec::new(); v];
    let mut lookup = HashMap::new();
    for (bi, b) in design.blocks.iter().enumerate() {
        let pts: Vec<usize> = b.iter().collect();
        for &x in &pts {
            through[x].push(bi);
        }
        for_each_subset(&pts, t, &mut |s| {
            lookup.insert(s.to_vec(), bi);
        });
    }
    let mut search = Search {
        design,
        t,
        through,
        lookup,
        image: vec![None; v],
        used: vec![false; v],
        nodes: 0,
    };
    let order: Vec<usize> = fixed.iter().copied().chain((0..v).filter(|x| !fixed.contains(x))).collect();
    if !search.extend(&order, 0, fixed, rng, limit) {
        return None;
    }
    let images: Vec<u32> = search.image.iter().map(|y| y.unwrap() as u32).collect();
    let g = Permutation::new(images).expect("search assigns a bijection");
    is_automorphism(design, &g).then_some(g)
}

fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..items.len() {
            acc.push(items[i]);
            go(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn fano() -> Design {
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        let blocks = lines.iter().map(|l| PointSet::from_points(7, l.iter().copied())).collect();
        Design::new("fano", 7, 3, blocks).unwrap()
    }

    #[test]
    fn fano_automorphisms() {
        let d = fano();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_automorphism(&d, 2, &[0], &mut rng, 10_000).unwrap();
            assert!(is_automorphism(&d, &g));
            assert_eq!(g.apply(0), 0);
        }
        let swap = Permutation::from_cycles(7, &[&[0, 1]]).unwrap();
        assert!(!is_automorphism(&d, &swap));
    }
}
