use crate::arith::cyclo::{kronecker, sqrt_disc};
use crate::arith::rat::frac;
use crate::arith::{CycNum, Ring};
use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Integer `x + y*theta` of `O_K`, `theta = (D + sqrt(D))/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QInt {
    pub x: i64,
    pub y: i64,
}

impl QInt {
    pub const fn new(x: i64, y: i64) -> Self {
        QInt { x, y }
    }

    pub const fn int(n: i64) -> Self {
        QInt { x: n, y: 0 }
    }
}

pub(crate) fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("quadratic integer coordinate overflow")
}

/// Imaginary quadratic field of fundamental discriminant `disc < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    pub disc: i64,
}

fn squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

pub fn is_fundamental(d: i64) -> bool {
    match d.rem_euclid(4) {
        1 => d != 1 && squarefree(d),
        0 => matches!((d / 4).rem_euclid(4), 2 | 3) && squarefree(d / 4),
        _ => false,
    }
}

impl QuadField {
    pub fn new(disc: i64) -> Result<Self> {
        if disc >= 0 || !is_fundamental(disc) {
            return Err(Error::InvalidInput(format!("{disc} is not a negative fundamental discriminant")));
        }
        Ok(QuadField { disc })
    }

    pub fn gaussian() -> Self {
        QuadField { disc: -4 }
    }

    pub fn eisenstein() -> Self {
        QuadField { disc: -3 }
    }

    /// `theta * theta_bar`, so that `theta^2 = D theta - c0`.
    pub fn c0(&self) -> i64 {
        (self.disc * self.disc - self.disc) / 4
    }

    pub fn theta(&self) -> QInt {
        QInt::new(0, 1)
    }

    pub fn mul(&self, a: QInt, b: QInt) -> QInt {
        let (x1, y1, x2, y2) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
        let d = self.disc as i128;
        let c0 = self.c0() as i128;
        QInt::new(narrow(x1 * x2 - c0 * y1 * y2), narrow(x1 * y2 + x2 * y1 + d * y1 * y2))
    }

    pub fn add(&self, a: QInt, b: QInt) -> QInt {
        QInt::new(a.x + b.x, a.y + b.y)
    }

    pub fn sub(&self, a: QInt, b: QInt) -> QInt {
        QInt::new(a.x - b.x, a.y - b.y)
    }

    pub fn pow(&self, a: QInt, e: u32) -> QInt {
        (0..e).fold(QInt::int(1), |acc, _| self.mul(acc, a))
    }

    pub fn norm(&self, a: QInt) -> i64 {
        let (x, y) = (a.x as i128, a.y as i128);
        narrow(x * x + self.disc as i128 * x * y + self.c0() as i128 * y * y)
    }

    pub fn conj(&self, a: QInt) -> QInt {
        QInt::new(a.x + self.disc * a.y, -a.y)
    }

    /// `a + b i` in `Q(i)`.
    pub fn gaussian_int(a: i64, b: i64) -> QInt {
        QInt::new(a + 2 * b, b)
    }

    /// `a + b w` in `Q(sqrt(-3))`, `w = (-1 + sqrt(-3))/2`.
    pub fn eisenstein_int(a: i64, b: i64) -> QInt {
        QInt::new(a + b, b)
    }

    /// Image under the embedding with `sqrt(D)` of positive imaginary part.
    pub fn embed(&self, a: QInt) -> CycNum {
        let re = frac(2 * a.x + a.y * self.disc, 2);
        let s = sqrt_disc(self.disc).scale(&frac(a.y, 2));
        CycNum::from_rat(&re).radd(&s)
    }

    /// Every element of norm `n`.
    pub fn elements_of_norm(&self, n: u64) -> Vec<QInt> {
        // 4N = (2x + yD)^2 + |D| y^2
        let dabs = self.disc.unsigned_abs() as i128;
        let four_n = 4 * n as i128;
        let ymax = ((four_n / dabs) as f64).sqrt() as i128 + 1;
        let mut out = Vec::new();
        for y in -ymax..=ymax {
            let rest = four_n - dabs * y * y;
            if rest < 0 {
                continue;
            }
            let t = (rest as f64).sqrt().round() as i128;
            for t in [t - 1, t, t + 1] {
                if t < 0 || t * t != rest {
                    continue;
                }
                for s in if t == 0 { vec![0] } else { vec![t, -t] } {
                    let twice_x = s - y * self.disc as i128;
                    if twice_x % 2 == 0 {
                        out.push(QInt::new(narrow(twice_x / 2), narrow(y)));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn units(&self) -> Vec<QInt> {
        self.elements_of_norm(1)
    }

    /// A unit generating the unit group.
    pub fn unit_generator(&self) -> QInt {
        let units = self.units();
        let w = units.len() as u32;
        *units
            .iter()
            .find(|&&u| (1..w).all(|k| self.pow(u, k) != QInt::int(1)))
            .expect("cyclic unit group")
    }

    /// `epsilon_K(n)`.
    pub fn epsilon(&self, n: u64) -> i64 {
        kronecker(self.disc, n)
    }

    pub fn render(&self, a: QInt) -> String {
        match self.disc {
            -4 => fmt_pair(a.x + self.disc / 2 * a.y, a.y, "i"),
            -3 => fmt_pair(a.x - a.y, a.y, "w"),
            _ => fmt_pair(a.x, a.y, "t"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "disc": self.disc })
    }
}

fn fmt_pair(a: i64, b: i64, sym: &str) -> String {
    let coeff = |b: i64| if b == 1 { String::new() } else { b.to_string() };
    match (a, b) {
        (a, 0) => a.to_string(),
        (0, -1) => format!("-{sym}"),
        (0, b) => format!("{}{sym}", coeff(b)),
        (a, b) if b < 0 => format!("{a}-{}{sym}", coeff(-b)),
        (a, b) => format!("{a}+{}{sym}", coeff(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        for d in [-3, -4, -7, -8, -15, -20, -23, -24] {
            assert!(QuadField::new(d).is_ok(), "{d}");
        }
        for d in [-1, -2, -12, -16, -27, 5] {
            assert!(QuadField::new(d).is_err(), "{d}");
        }
    }

    #[test]
    fn unit_groups() {
        assert_eq!(QuadField::gaussian().units().len(), 4);
        assert_eq!(QuadField::eisenstein().units().len(), 6);
        assert_eq!(QuadField::new(-7).unwrap().units().len(), 2);
        let k = QuadField::eisenstein();
        let u = k.unit_generator();
        assert_eq!(k.pow(u, 6), QInt::int(1));
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = QuadField::gaussian();
        let i = QuadField::gaussian_int(0, 1);
        assert_eq!(k.mul(i, i), QInt::int(-1));
        let a = QuadField::gaussian_int(2, 1);
        assert_eq!(k.norm(a), 5);
        assert_eq!(k.mul(a, k.conj(a)), QInt::int(5));
        assert_eq!(k.render(a), "2+i");
        let e = k.embed(a);
        assert_eq!(e.rmul(&e.conj()), CycNum::from_int(5));
        assert!((e.to_complex().1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn norm_form_enumeration() {
        let k = QuadField::new(-23).unwrap();
        for n in 1..60u64 {
            let listed = k.elements_of_norm(n);
            let mut brute = Vec::new();
            for x in -50..=50 {
                for y in -4..=4 {
                    if k.norm(QInt::new(x, y)) == n as i64 {
                        brute.push(QInt::new(x, y));
                    }
                }
            }
            brute.sort();
            assert_eq!(listed, brute, "n={n}");
        }
    }
}
