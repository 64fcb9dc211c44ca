use std::collections::BTreeMap;

use super::Design;
use crate::bitset::PointSet;
use crate::gf::{Fe, Field};

/// The point of W23 singled out in the McLaughlin graph construction (and fixed by M22).
pub const MCL_SPECIAL_POINT: usize = 22;

const LENGTH: u32 = 23;

/// Weight distribution of the binary [23, 12, 7] Golay code.
const GOLAY_WEIGHTS: [(u32, u64); 8] = [
    (0, 1),
    (7, 253),
    (8, 506),
    (11, 1288),
    (12, 1288),
    (15, 506),
    (16, 253),
    (23, 1),
];

fn quadratic_residues() -> Vec<u32> {
    let mut qr: Vec<u32> = (1..LENGTH).map(|x| x * x % LENGTH).collect();
    qr.sort_unstable();
    qr.dedup();
    qr
}

/// Generator polynomial `prod_(r in QR) (X - a^r)` for a primitive 23rd root of unity `a`
/// in GF(2^11), returned as a bitmask of its (binary) coefficients.
fn generator_polynomial() -> u32 {
    let f = Field::new(11).expect("GF(2^11)");
    let cofactor = (f.order() - 1) / LENGTH as u64;
    let root = f
        .elements()
        .skip(2)
        .map(|b| f.pow(b, cofactor))
        .find(|&a| a != Fe::ONE)
        .expect("GF(2^11) contains 23rd roots of unity");
    debug_assert_eq!(f.pow(root, LENGTH as u64), Fe::ONE);

    // Coefficients, lowest degree first.
    let mut poly = vec![Fe::ONE];
    for r in quadratic_residues() {
        let z = f.pow(root, r as u64);
        let mut next = vec![Fe::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.add(next[i], f.mul(c, z));
        }
        poly = next;
    }
    poly.iter().enumerate().fold(0, |acc, (i, c)| {
        assert!(c.0 <= 1, "quadratic-residue code generator must be binary");
        acc | c.0 << i
    })
}

fn golay_codewords() -> Vec<u32> {
    let g = generator_polynomial();
    let degree = 31 - g.leading_zeros();
    assert_eq!(degree, 11);
    let dim = LENGTH - degree;
    let basis: Vec<u32> = (0..dim).map(|i| g << i).collect();
    (0..1u32 << dim)
        .map(|mask| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &b)| acc ^ b)
        })
        .collect()
}

/// W23: supports of the weight-7 words of the binary quadratic-residue code of length 23.
///
/// Panics if the code's weight census differs from the Golay code's.
pub fn golay_witt_design() -> Design {
    let words = golay_codewords();
    let mut census = BTreeMap::new();
    for w in &words {
        *census.entry(w.count_ones()).or_insert(0u64) += 1;
    }
    assert_eq!(
        census,
        GOLAY_WEIGHTS.into_iter().collect::<BTreeMap<_, _>>(),
        "weight census of the quadratic-residue code"
    );
    let mut blocks: Vec<PointSet> = words
        .iter()
        .filter(|w| w.count_ones() == 7)
        .map(|&w| PointSet::from_points(LENGTH as usize, (0..LENGTH as usize).filter(|i| w >> i & 1 == 1)))
        .collect();
    blocks.sort();
    Design::new("W23", LENGTH as usize, 7, blocks).expect("weight-7 supports")
}

/// Number of `t`-subsets of points not contained in exactly one block.
pub fn steiner_violations(design: &Design, t: usize) -> usize {
    let v = design.v;
    let mut subset: Vec<usize> = (0..t).collect();
    let mut violations = 0;
    loop {
        let s = PointSet::from_points(v, subset.iter().copied());
        let hits = design.blocks.iter().filter(|b| s.is_subset(b)).count();
        if hits != 1 {
            violations += 1;
        }
        // next combination
        let mut i = t;
        loop {
            if i == 0 {
                return violations;
            }
            i -= 1;
            if subset[i] < v - t + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..t {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_a_known_golay_polynomial() {
        // x^11 + x^9 + x^7 + x^6 + x^5 + x + 1 or its reciprocal, depending on the root.
        let g = generator_polynomial();
        let a = 0b1010_1110_0011;
        let b = 0b1100_0111_0101;
        assert!(g == a || g == b, "{g:#b}");
    }

    #[test]
    fn witt_design_is_steiner_4_7_23() {
        let d = golay_witt_design();
        assert_eq!(d.blocks.len(), 253);
        assert_eq!(steiner_violations(&d, 4), 0);
        let spectrum = d.intersection_spectrum();
        assert_eq!(spectrum.keys().copied().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn steiner_violations_detects_missing_block() {
        let mut d = golay_witt_design();
        d.blocks.pop();
        // The removed block covered C(7,4) = 35 four-subsets.
        assert_eq!(steiner_violations(&d, 4), 35);
    }
}
