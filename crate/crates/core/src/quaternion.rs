//! Minimal quaternion arithmetic, components ordered `(1, i, j, k)`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ZERO: Self = Self([0.0; 4]);
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0]);
    pub const I: Self = Self([0.0, 1.0, 0.0, 0.0]);
    pub const J: Self = Self([0.0, 0.0, 1.0, 0.0]);
    pub const K: Self = Self([0.0, 0.0, 0.0, 1.0]);

    pub fn unit(idx: usize) -> Self {
        let mut q = [0.0; 4];
        q[idx] = 1.0;
        Self(q)
    }

    pub fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Self([a, -b, -c, -d])
    }

    pub fn scale(self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }

    pub fn re(self) -> f64 {
        self.0[0]
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Self([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::Quaternion as Q;

    #[test]
    fn hamilton_relations() {
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::K, Q::I);
        assert_eq!(Q::K * Q::I, Q::J);
        assert_eq!(Q::I * Q::I, -Q::ONE);
        assert_eq!(Q::J * Q::I, -Q::K);
    }
}
