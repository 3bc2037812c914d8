//! Exact points of the lattice `Z[w]`, `w = e^{i pi/3}`, used for the planar layout.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

/// `a + b w` with `w = e^{i pi/3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Eisenstein {
    pub a: i64,
    pub b: i64,
}

impl Eisenstein {
    pub const ZERO: Eisenstein = Eisenstein { a: 0, b: 0 };
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };
    pub const OMEGA: Eisenstein = Eisenstein { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Eisenstein { a, b }
    }

    /// Multiplication by `w^k`.
    pub fn rotate(self, k: i64) -> Self {
        let mut z = self;
        for _ in 0..k.rem_euclid(6) {
            // w(a + b w) = a w + b (w - 1)
            z = Eisenstein { a: -z.b, b: z.a + z.b };
        }
        z
    }

    pub fn unit(k: i64) -> Self {
        Eisenstein::ONE.rotate(k)
    }

    /// Complex conjugate; `conj(w) = 1 - w`.
    pub fn conj(self) -> Self {
        Eisenstein { a: self.a + self.b, b: -self.b }
    }

    /// Squared modulus `a^2 + ab + b^2`.
    pub fn norm(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    /// Colour class `(a - b) mod 3`: hexagon centres are class 0, vertices classes 1 and 2.
    pub fn color(self) -> i64 {
        (self.a - self.b).rem_euclid(3)
    }

    /// Index `k` with `self = w^k`, if `self` is a unit.
    pub fn unit_index(self) -> Option<i64> {
        (0..6).find(|&k| Eisenstein::unit(k) == self)
    }

    /// Reduction modulo the lattice `m Z[w]`, coordinates in `[0, m)`.
    pub fn reduce(self, m: i64) -> Self {
        Eisenstein { a: self.a.rem_euclid(m), b: self.b.rem_euclid(m) }
    }

    pub fn to_complex(self) -> Complex64 {
        let s = 3f64.sqrt() / 2.0;
        Complex64::new(self.a as f64 + 0.5 * self.b as f64, s * self.b as f64)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Self) -> Self {
        Eisenstein { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Self) -> Self {
        Eisenstein { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Self {
        Eisenstein { a: -self.a, b: -self.b }
    }
}

impl Mul<i64> for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, k: i64) -> Self {
        Eisenstein { a: self.a * k, b: self.b * k }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Self) -> Self {
        // w^2 = w - 1
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        Eisenstein { a: a * c - b * d, b: a * d + b * c + b * d }
    }
}

/// Integer lattice basis reduction: returns a Hermite normal form `[[p, q], [0, r]]` of the
/// lattice spanned by the given `(a, b)` vectors, or `None` if they span rank < 2.
pub fn lattice_hnf(vectors: &[Eisenstein]) -> Option<[[i64; 2]; 2]> {
    int_lattice_hnf(&vectors.iter().map(|v| [v.a, v.b]).collect::<Vec<_>>())
}

/// Hermite normal form of the integer lattice spanned by `vectors`.
pub fn int_lattice_hnf(vectors: &[[i64; 2]]) -> Option<[[i64; 2]; 2]> {
    let mut rows: Vec<[i64; 2]> = vectors.iter().copied().filter(|r| *r != [0, 0]).collect();
    let mut basis: Vec<[i64; 2]> = Vec::new();
    // column 0
    let mut pivot: Option<[i64; 2]> = None;
    let mut rest = Vec::new();
    for r in rows.drain(..) {
        match pivot {
            None => pivot = Some(r),
            Some(p) => {
                let (mut x, mut y) = (p, r);
                while y[0] != 0 {
                    let q = x[0].div_euclid(y[0]);
                    let t = [x[0] - q * y[0], x[1] - q * y[1]];
                    x = y;
                    y = t;
                }
                pivot = Some(x);
                if y != [0, 0] {
                    rest.push(y);
                }
            }
        }
    }
    let mut p = pivot?;
    if p[0] == 0 {
        rest.push(p);
        p = [0, 0];
    }
    let r = rest.iter().map(|v| v[1]).fold(0i64, gcd).abs();
    if p[0] == 0 || r == 0 {
        return None;
    }
    if p[0] < 0 {
        p = [-p[0], -p[1]];
    }
    basis.push([p[0], p[1].rem_euclid(r)]);
    basis.push([0, r]);
    Some([basis[0], basis[1]])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn omega_squared() {
        assert_eq!(Eisenstein::OMEGA * Eisenstein::OMEGA, Eisenstein::new(-1, 1));
        assert_eq!(Eisenstein::OMEGA.rotate(6), Eisenstein::OMEGA);
        assert_eq!(Eisenstein::unit(3), Eisenstein::new(-1, 0));
    }

    #[test]
    fn hnf_of_six_lattice() {
        let v = [Eisenstein::new(6, 0), Eisenstein::new(0, 6), Eisenstein::new(6, 6), Eisenstein::new(-6, 12)];
        assert_eq!(lattice_hnf(&v), Some([[6, 0], [0, 6]]));
        assert_eq!(lattice_hnf(&[Eisenstein::new(6, 0), Eisenstein::new(12, 0)]), None);
    }

    proptest! {
        #[test]
        fn complex_embedding_is_a_ring_map(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = Eisenstein::new(a, b);
            let y = Eisenstein::new(c, d);
            let p = (x * y).to_complex();
            let q = x.to_complex() * y.to_complex();
            prop_assert!((p - q).norm() < 1e-9);
            prop_assert!(((x.conj()).to_complex() - x.to_complex().conj()).norm() < 1e-9);
            prop_assert_eq!(x.norm() as f64, x.to_complex().norm_sqr().round());
        }

        #[test]
        fn rotation_and_conjugation_preserve_centres(a in -50i64..50, b in -50i64..50, k in 0i64..6) {
            let x = Eisenstein::new(a, b);
            let zero = x.color() == 0;
            prop_assert_eq!(x.rotate(k).color() == 0, zero);
            prop_assert_eq!(x.conj().color() == 0, zero);
        }
    }
}
