//! Frobenius weights of `V = V_Pi^*(-a-1)(psi_P^-1)` and `V^*(1)`.
//!
//! Weights are exponents `e` with `|Frob_v eigenvalue| = N(v)^e` for the
//! arithmetic Frobenius, so `e(W(n)) = e(W) + n` and `e(W^*) = -e(W)`.

use crate::arith::rat::{frac, rat};
use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::report::Report;
use serde_json::json;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightExponents {
    pub v: BigRat,
    pub v_dual_1: BigRat,
}

pub fn weight_exponents(k1: i64, k2: i64) -> Result<WeightExponents> {
    if !(k1 >= k2 && k2 >= 3) {
        return Err(Error::InvalidInput(format!("weights ({k1}, {k2}) need k1 >= k2 >= 3")));
    }
    let w = k1 + k2 - 3;
    let a = k2 - 3;
    // V_Pi is pure of weight -w/2; psi_P has |psi(v)| = N(v)^{1/2}, weight -1/2
    let v_pi_dual = frac(w, 2);
    let psi_inv = frac(1, 2);
    let v = v_pi_dual - rat(a + 1) + psi_inv;
    let v_dual_1 = -v.clone() + rat(1);
    Ok(WeightExponents { v, v_dual_1 })
}

fn show(q: &BigRat) -> String {
    q.to_string()
}

/// Compares with `{(k1-k2+2)/2, (k2-k1)/2}` in both orders and records
/// which assignment to `(V, V^*(1))` matches.
pub fn weight_report(pairs: &[(i64, i64)]) -> Result<Report> {
    let mut rep = Report::new("weight-exponents");
    let mut rows = Vec::new();
    let mut set_ok = true;
    let mut sum_ok = true;
    let mut nonzero_ok = true;
    let mut degenerate = Vec::new();
    for &(k1, k2) in pairs {
        let e = weight_exponents(k1, k2)?;
        let stated = (frac(k1 - k2 + 2, 2), frac(k2 - k1, 2));
        let order = if (e.v.clone(), e.v_dual_1.clone()) == stated {
            "as_stated"
        } else if (e.v_dual_1.clone(), e.v.clone()) == stated {
            "swapped"
        } else {
            set_ok = false;
            "neither"
        };
        sum_ok &= e.v.clone() + e.v_dual_1.clone() == rat(1);
        let zero = e.v == rat(0) || e.v_dual_1 == rat(0);
        if k1 > k2 {
            nonzero_ok &= !zero;
        } else if zero {
            degenerate.push(json!([k1, k2]));
        }
        rows.push(json!({
            "k1": k1, "k2": k2, "V": show(&e.v), "V_dual_1": show(&e.v_dual_1),
            "stated": [show(&stated.0), show(&stated.1)], "assignment": order,
        }));
    }
    rep.check("derived pair equals {(k1-k2+2)/2, (k2-k1)/2}", set_ok, json!({ "rows": rows }));
    rep.check("exponents sum to 1", sum_ok, json!({}));
    rep.check("no exponent vanishes when k1 > k2", nonzero_ok, json!({}));
    let equal_weights = pairs.iter().filter(|(a, b)| a == b).count();
    rep.check(
        "some exponent vanishes when k1 = k2",
        degenerate.len() == equal_weights,
        json!({ "degenerate": degenerate }),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_examples() {
        let e = weight_exponents(4, 3).unwrap();
        assert_eq!((e.v, e.v_dual_1), (frac(3, 2), frac(-1, 2)));
        let e = weight_exponents(3, 3).unwrap();
        assert_eq!((e.v, e.v_dual_1), (rat(1), rat(0)));
        assert!(weight_exponents(3, 4).is_err());
    }

    #[test]
    fn report_over_a_range() {
        let pairs: Vec<(i64, i64)> = (3..9).flat_map(|k2| (k2..12).map(move |k1| (k1, k2))).collect();
        let rep = weight_report(&pairs).unwrap();
        assert!(rep.pass(), "{}", rep.summary());
    }
}
