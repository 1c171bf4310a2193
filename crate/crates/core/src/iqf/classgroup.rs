use super::field::QuadField;
use super::ideal::Ideal;
use crate::arith::rat::is_prime;
use crate::arith::snf::GeneratedGroup;
use crate::arith::FinAbGroup;
use crate::error::{Error, Result};
use num_integer::Integer;

/// Largest `|D|` accepted by [`class_group`].
pub const MAX_CLASS_DISC: i64 = 1_000_000;

/// Positive definite binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let Form { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The reduced form properly equivalent to `self`.
    pub fn reduce(mut self) -> Form {
        loop {
            // normalize b into (-a, a]
            let Form { a, b, c } = self;
            let two_a = 2 * a;
            let mut nb = b.rem_euclid(two_a);
            if nb > a {
                nb -= two_a;
            }
            let t = (nb - b) / two_a;
            let nc = a * t * t + b * t + c;
            self = Form { a, b: nb, c: nc };
            if self.a > self.c {
                self = Form { a: self.c, b: -self.b, c: self.a };
                continue;
            }
            if self.a == self.c && self.b < 0 {
                self.b = -self.b;
            }
            return self;
        }
    }
}

/// All reduced primitive forms of discriminant `d < 0`.
pub fn reduced_forms(d: i64) -> Vec<Form> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form { a, b, c: num / (4 * a) };
            if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// The form `N(x alpha + y beta)/N(I)` of the positively oriented basis
/// `{a/c, b/c + theta}` of the primitive part of `I`, reduced.
pub fn form_of_ideal(i: &Ideal) -> Form {
    let k = i.field();
    let a = i.a / i.c;
    let b = i.b / i.c;
    let n = k.norm(super::field::QInt::new(b, 1));
    Form { a, b: 2 * b + k.disc, c: n / a }.reduce()
}

/// Ideal `Z a + Z (b + sqrt(D))/2` in the class of the form `(a, b, c)`.
pub fn ideal_of_form(k: &QuadField, f: &Form) -> Ideal {
    let b = ((f.b - k.disc) / 2).rem_euclid(f.a);
    Ideal::from_hnf(k, f.a, b, 1).expect("forms of discriminant D give ideals")
}

/// `Cl_K`, realised on reduced forms with composition through ideal
/// multiplication.
pub struct ClassGroup {
    pub field: QuadField,
    pub forms: GeneratedGroup<Form>,
}

impl ClassGroup {
    pub fn order(&self) -> u64 {
        self.forms.order() as u64
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.forms.presentation.group
    }

    /// The generators adjoined while building the group, as forms.
    pub fn generators(&self) -> &[Form] {
        &self.forms.gens
    }

    /// Word of the class of `i` in [`Self::generators`].
    pub fn word(&self, i: &Ideal) -> Vec<i128> {
        self.forms.word(&form_of_ideal(i)).expect("every class is generated").clone()
    }

    pub fn dlog(&self, i: &Ideal) -> Vec<i64> {
        self.forms.presentation.dlog(&self.word(i))
    }

    /// A prime ideal of prime norm not dividing `avoid` in the class of `f`.
    pub fn prime_in_class(&self, f: &Form, avoid: u64) -> Ideal {
        (2u64..)
            .filter(|&l| is_prime(l) && avoid % l != 0)
            .flat_map(|l| self.field.split_prime(l).primes())
            .find(|p| p.norm() == p.a as u64 && form_of_ideal(p) == *f)
            .expect("every class contains primes of degree one")
    }

    pub fn representatives(&self) -> Vec<Ideal> {
        let mut forms: Vec<Form> = self.forms.elements().copied().collect();
        forms.sort();
        forms.iter().map(|f| ideal_of_form(&self.field, f)).collect()
    }
}

pub fn class_group(k: &QuadField) -> Result<ClassGroup> {
    if -k.disc > MAX_CLASS_DISC {
        return Err(Error::DiscriminantBoundExceeded(k.disc));
    }
    let forms = reduced_forms(k.disc);
    let principal = forms[0];
    let field = *k;
    let op = |f: &Form, g: &Form| form_of_ideal(&ideal_of_form(&field, f).mul(&ideal_of_form(&field, g)));
    let forms = GeneratedGroup::build(principal, &forms, op, "c");
    Ok(ClassGroup { field, forms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iqf::field::QInt;

    #[test]
    fn class_numbers() {
        for (d, h, orders) in [
            (-4, 1, vec![]),
            (-3, 1, vec![]),
            (-15, 2, vec![2]),
            (-23, 3, vec![3]),
            (-56, 4, vec![4]),
            (-84, 4, vec![2, 2]),
        ] {
            let k = QuadField::new(d).unwrap();
            let cl = class_group(&k).unwrap();
            assert_eq!(cl.order(), h, "d={d}");
            assert_eq!(reduced_forms(d).len() as u64, h);
            assert_eq!(cl.group().orders, orders, "d={d}");
        }
    }

    #[test]
    fn reduction_preserves_discriminant() {
        let f = Form { a: 13, b: 29, c: 17 };
        let r = f.reduce();
        assert!(r.is_reduced());
        assert_eq!(r.disc(), f.disc());
    }

    #[test]
    fn principal_ideals_are_trivial() {
        let k = QuadField::new(-23).unwrap();
        let cl = class_group(&k).unwrap();
        for (x, y) in [(3, 1), (5, -2), (11, 4), (1, 7)] {
            let p = Ideal::principal(&k, QInt::new(x, y)).unwrap();
            assert_eq!(cl.dlog(&p), vec![0]);
        }
        let p2 = &k.primes_above(2)[0];
        assert_ne!(cl.dlog(p2), vec![0]);
        assert_eq!(cl.dlog(&p2.mul(&p2.conj())), vec![0]);
    }

    #[test]
    fn form_ideal_round_trip() {
        let k = QuadField::new(-56).unwrap();
        for f in reduced_forms(-56) {
            assert_eq!(form_of_ideal(&ideal_of_form(&k, &f)), f);
        }
    }
}
