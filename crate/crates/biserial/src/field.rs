//! Arithmetic in GF(2^e) for 1 <= e <= 8.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Conway-style primitive polynomials, bit i is the coefficient of x^i.
const PRIMITIVE: [u16; 9] = [0, 0b11, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011, 0b10001001, 0b100011101];

/// A finite field of characteristic 2 with log/exp tables.
#[derive(Debug)]
pub struct Field {
    e: u32,
    order: usize,
    exp: Vec<u8>,
    log: Vec<u8>,
}

/// Serializable handle naming a field by its extension degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub e: u32,
}

impl FieldSpec {
    pub fn new(e: u32) -> Result<Self, Error> {
        if !(1..=8).contains(&e) {
            return Err(Error::InvalidParameter(format!("field extension degree {e} outside 1..=8")));
        }
        Ok(FieldSpec { e })
    }

    pub fn field(&self) -> &'static Field {
        gf(self.e).expect("validated extension degree")
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { e: 1 }
    }
}

static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();

/// Shared field instance for GF(2^e).
pub fn gf(e: u32) -> Result<&'static Field, Error> {
    if !(1..=8).contains(&e) {
        return Err(Error::InvalidParameter(format!("field extension degree {e} outside 1..=8")));
    }
    let all = FIELDS.get_or_init(|| (1..=8).map(Field::build).collect());
    Ok(&all[(e - 1) as usize])
}

impl Field {
    fn build(e: u32) -> Field {
        let order = 1usize << e;
        let poly = PRIMITIVE[e as usize];
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u8; order];
        let mut x: u16 = 1;
        for i in 0..order - 1 {
            exp[i] = x as u8;
            log[x as usize] = i as u8;
            x <<= 1;
            if x & (1 << e) != 0 {
                x ^= poly;
            }
        }
        for i in order - 1..2 * order {
            exp[i] = exp[i - (order - 1)];
        }
        Field { e, order, exp, log }
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { e: self.e }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return 1;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        if self.e == 1 {
            return 1;
        }
        self.exp[(self.order - 1) - self.log[a as usize] as usize]
    }

    pub fn pow(&self, a: u8, n: u64) -> u8 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 * n) % (self.order as u64 - 1);
        self.exp[k as usize]
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> u8 {
        if self.e == 1 {
            1
        } else {
            2
        }
    }

    /// Nonzero elements in the order generator^0, generator^1, ...
    pub fn units(&self) -> Vec<u8> {
        (0..self.order - 1).map(|i| self.exp[i]).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.order as u16).map(|x| x as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_exhaustive() {
        for e in 1..=8 {
            let f = gf(e).unwrap();
            for a in f.elements() {
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements().step_by(7) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(13) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
            let units = f.units();
            let mut sorted = units.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), f.order() - 1);
        }
    }

    #[test]
    fn gf4_has_cube_root_of_unity() {
        let f = gf(2).unwrap();
        let w = f.generator();
        assert_ne!(w, 1);
        assert_eq!(f.pow(w, 3), 1);
    }

    #[test]
    fn out_of_range() {
        assert!(gf(0).is_err());
        assert!(gf(9).is_err());
    }
}
