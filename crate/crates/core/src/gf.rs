//! Arithmetic in GF(2^m), elements stored as polynomial residues in the low `m` bits.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("extension degree {0} outside 1..=16")]
    Degree(u32),
    #[error("modulus {0:#b} is not an irreducible polynomial of degree {1}")]
    Reducible(u32, u32),
    #[error("q = {0} is not a power of two in range")]
    NotPowerOfTwo(u64),
    #[error("zero has no inverse")]
    ZeroInverse,
}

/// A field element; only meaningful together with the [`Field`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Carry-less product of two polynomials over GF(2).
fn clmul(a: u32, b: u32) -> u64 {
    let mut r = 0u64;
    let a = a as u64;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    r
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility of a degree-`m` polynomial by trial division with every polynomial of
/// degree at most `m / 2`.
pub fn is_irreducible(modulus: u32, m: u32) -> bool {
    if m == 0 || poly_degree(modulus as u64) != m as i32 {
        return false;
    }
    for d in 1..=m / 2 {
        for low in 0..1u64 << d {
            let divisor = 1u64 << d | low;
            if poly_rem(modulus as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// GF(2^m) with a fixed irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    modulus: u32,
}

impl Field {
    /// The field with the lexicographically least irreducible modulus of degree `m`.
    pub fn new(m: u32) -> Result<Self, GfError> {
        if !(1..=16).contains(&m) {
            return Err(GfError::Degree(m));
        }
        let modulus = (1u32 << m..1u32 << (m + 1))
            .find(|&p| is_irreducible(p, m))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self { m, modulus })
    }

    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self, GfError> {
        if !(1..=16).contains(&m) {
            return Err(GfError::Degree(m));
        }
        if !is_irreducible(modulus, m) {
            return Err(GfError::Reducible(modulus, m));
        }
        Ok(Self { m, modulus })
    }

    /// The field of order `q = 2^m`.
    pub fn of_order(q: u64) -> Result<Self, GfError> {
        if q < 2 || !q.is_power_of_two() || q > 1 << 16 {
            return Err(GfError::NotPowerOfTwo(q));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1 << self.m
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..1u32 << self.m).map(Fe)
    }

    /// The element `x` (the class of the polynomial variable).
    pub fn generator_x(&self) -> Fe {
        self.reduce(2)
    }

    fn reduce(&self, p: u64) -> Fe {
        Fe(poly_rem(p, self.modulus as u64) as u32)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.reduce(clmul(a.0, b.0))
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Absolute trace `a + a^2 + .. + a^(2^(m-1))`, always 0 or 1.
    pub fn trace(&self, a: Fe) -> u8 {
        let mut t = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            t = self.add(t, x);
            x = self.square(x);
        }
        debug_assert!(t.0 <= 1);
        t.0 as u8
    }

    /// The distinct conjugates `a, a^2, a^4, ..` under the Frobenius map.
    pub fn frobenius_orbit(&self, a: Fe) -> Vec<Fe> {
        let mut orbit = vec![a];
        let mut x = self.square(a);
        while x != a {
            orbit.push(x);
            x = self.square(x);
        }
        orbit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(1).unwrap().modulus(), 0b10);
        assert_eq!(Field::new(2).unwrap().modulus(), 0b111);
        assert_eq!(Field::new(3).unwrap().modulus(), 0b1011);
        assert_eq!(Field::new(4).unwrap().modulus(), 0b10011);
        assert_eq!(Field::new(0), Err(GfError::Degree(0)));
        assert_eq!(Field::with_modulus(2, 0b101), Err(GfError::Reducible(0b101, 2)));
        assert_eq!(Field::of_order(6), Err(GfError::NotPowerOfTwo(6)));
    }

    #[test]
    fn gf4_examples() {
        let f = Field::new(2).unwrap();
        let x = f.generator_x();
        assert_eq!(f.mul(x, x), Fe(0b11));
        assert_eq!(f.trace(x), 1);
        assert_eq!(f.frobenius_orbit(x), vec![x, Fe(0b11)]);
        assert_eq!(f.frobenius_orbit(Fe::ZERO), vec![Fe::ZERO]);
        assert_eq!(f.frobenius_orbit(Fe::ONE), vec![Fe::ONE]);
        for a in f.elements() {
            assert_eq!(f.add(a, a), Fe::ZERO);
            assert_eq!(f.mul(Fe::ONE, a), a);
        }
        assert_eq!(f.inv(Fe::ZERO), Err(GfError::ZeroInverse));
    }

    #[test]
    fn gf2_trace() {
        let f = Field::new(1).unwrap();
        assert_eq!(f.trace(Fe::ZERO), 0);
        assert_eq!(f.trace(Fe::ONE), 1);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for m in 1..=4 {
            let f = Field::new(m).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_linear_and_onto() {
        for m in 1..=4 {
            let f = Field::new(m).unwrap();
            let mut seen = [false; 2];
            for a in f.elements() {
                seen[f.trace(a) as usize] = true;
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), f.trace(a) ^ f.trace(b));
                }
            }
            assert_eq!(seen, [true, true]);
        }
    }

    #[test]
    fn frobenius_orbit_length_divides_m() {
        for m in 1..=6 {
            let f = Field::new(m).unwrap();
            for a in f.elements() {
                assert_eq!(m as usize % f.frobenius_orbit(a).len(), 0);
            }
        }
    }
}
