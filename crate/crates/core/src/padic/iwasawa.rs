use super::{j_matrix, MatQ};
use crate::arith::rat::{canon_mod, pow_i, valuation, BigRat};

/// `g = n * diag(l^t) * k` with `n` upper unitriangular and `k` integral.
#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa {
    pub t: Vec<i64>,
    pub n: MatQ,
    pub k: MatQ,
}

/// Column operations over `Z_(l)` bringing `g` to upper-triangular form with
/// `l`-power diagonal. Rows are processed bottom-up with a minimal-valuation
/// pivot.
fn triangularize(g: &MatQ) -> (MatQ, Vec<i64>) {
    let n = g.n;
    let p = g.prime;
    let mut b = g.clone();
    let mut exps = vec![0; n];
    for i in (0..n).rev() {
        let (pj, v) = (0..=i)
            .filter_map(|j| valuation(b.get(i, j), p).map(|v| (j, v)))
            .min_by_key(|&(j, v)| (v, std::cmp::Reverse(j)))
            .expect("singular matrix");
        if pj != i {
            for r in 0..n {
                b.e.swap(r * n + pj, r * n + i);
            }
        }
        let s = pow_i(p, v) / b.get(i, i);
        for r in 0..n {
            b.e[r * n + i] *= &s;
        }
        exps[i] = v;
        let piv = b.get(i, i).clone();
        for j in 0..i {
            if b.get(i, j) == &BigRat::from_integer(0.into()) {
                continue;
            }
            let q = b.get(i, j) / &piv;
            for r in 0..n {
                let x = b.get(r, i) * &q;
                b.e[r * n + j] -= x;
            }
        }
    }
    (b, exps)
}

/// Repairs an upper-triangular `b` with `b GL_4(Z_l) = g GL_4(Z_l)`, `g`
/// symplectic, to a symplectic upper-triangular matrix generating the same
/// lattice.
fn symplectic_repair(b: &MatQ, c: i64) -> MatQ {
    let j = j_matrix(b.prime);
    let a = b.transpose().mul(&j).mul(b).scale(&pow_i(b.prime, -c));
    let mut v = MatQ::identity(4, b.prime);
    v.set(1, 3, a.get(2, 3).clone());
    v.set(2, 3, -a.get(1, 3).clone());
    b.mul(&v)
}

pub fn iwasawa_borel(g: &MatQ) -> Iwasawa {
    let (mut b, t) = triangularize(g);
    if g.n == 4 {
        let c = t[0] + t[3];
        b = symplectic_repair(&b, c);
    }
    let tinv = MatQ::diag_pows(g.prime, &t.iter().map(|x| -x).collect::<Vec<_>>());
    let n = b.mul(&tinv);
    let k = b.inv().expect("singular").mul(g);
    Iwasawa { t, n, k }
}

/// Canonical representative of `g GL_n(Z_l)`: the column Hermite form with
/// `l`-power diagonal and entries above the diagonal reduced into
/// `[0, l^f_i)`. For `GSp_4` this also separates cosets of `GSp_4(Z_l)`.
pub fn coset_key(g: &MatQ) -> MatQ {
    let (mut b, exps) = triangularize(g);
    let n = g.n;
    let p = g.prime;
    for i in (0..n).rev() {
        let m = pow_i(p, exps[i]);
        for j in i + 1..n {
            let x = b.get(i, j).clone();
            let r = canon_mod(&x, p, exps[i]);
            if r == x {
                continue;
            }
            let q = (&x - &r) / &m;
            for row in 0..=i {
                let y = b.get(row, i) * &q;
                b.e[row * n + j] -= y;
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;
    use crate::padic::{in_integral_group, multiplier, random_gl2_integral, random_gsp4_integral, unipotent};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_torus<R: Rng>(rng: &mut R, l: u64, n: usize) -> MatQ {
        if n == 2 {
            MatQ::diag_pows(l, &[rng.gen_range(-2..3), rng.gen_range(-2..3)])
        } else {
            let (f1, f2, c) = (rng.gen_range(-2..3), rng.gen_range(-2..3), rng.gen_range(-2..3));
            MatQ::diag_pows(l, &[f1, f2, c - f2, c - f1])
        }
    }

    #[test]
    fn borel_form_examples() {
        let g = MatQ::diag_pows(3, &[1, 0]);
        let iw = iwasawa_borel(&g);
        assert_eq!(iw.t, vec![1, 0]);
        assert_eq!(iw.n, MatQ::identity(2, 3));
        assert_eq!(iw.k, MatQ::identity(2, 3));
        let r = MatQ::from_ints(3, &[&[1, 2], &[0, 3]]);
        assert_eq!(iwasawa_borel(&r).t, vec![0, 1]);
        assert_eq!(iwasawa_borel(&r).k, MatQ::identity(2, 3));
    }

    #[test]
    fn reassembly_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..500 {
            let l = [2u64, 3, 5][trial % 3];
            let size = if trial % 2 == 0 { 2 } else { 4 };
            let (k1, k2) = if size == 2 {
                (random_gl2_integral(l, &mut rng, 4), random_gl2_integral(l, &mut rng, 4))
            } else {
                (random_gsp4_integral(l, &mut rng, 4), random_gsp4_integral(l, &mut rng, 4))
            };
            let u = if size == 4 {
                let q = |rng: &mut ChaCha8Rng| BigRat::new(rng.gen_range(-9..9).into(), (l as i64).pow(rng.gen_range(0..3)).into());
                unipotent(l, &q(&mut rng), &q(&mut rng), &q(&mut rng), &q(&mut rng))
            } else {
                MatQ::identity(2, l)
            };
            let g = k1.mul(&u).mul(&random_torus(&mut rng, l, size)).mul(&k2);
            let iw = iwasawa_borel(&g);
            let t = MatQ::diag_pows(l, &iw.t);
            assert_eq!(iw.n.mul(&t).mul(&iw.k), g);
            assert!(in_integral_group(&iw.k));
            for i in 0..size {
                assert_eq!(iw.n.get(i, i), &rat(1));
                for j in 0..i {
                    assert_eq!(iw.n.get(i, j), &rat(0));
                }
            }
            if size == 4 {
                assert_eq!(multiplier(&iw.n).unwrap(), rat(1));
                assert_eq!(iw.t[0] + iw.t[3], iw.t[1] + iw.t[2]);
            }
            // the torus part does not depend on the representative
            let g2 = g.mul(&k2.inv().unwrap());
            assert_eq!(iwasawa_borel(&g2).t, iw.t);
        }
    }

    #[test]
    fn coset_key_is_class_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let l = 3;
            let g = random_gsp4_integral(l, &mut rng, 5).mul(&MatQ::diag_pows(l, &[2, 1, 0, -1]));
            let k = random_gsp4_integral(l, &mut rng, 5);
            assert_eq!(coset_key(&g), coset_key(&g.mul(&k)));
        }
    }
}
