use super::{BigRat, CycNum, GroupRingElt, MultiLaurent, Ring, SqrtExt};
use serde_json::{json, Map, Value};

/// JSON rendering with rationals as `"p/q"` strings.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for BigRat {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl ToJson for CycNum {
    fn to_json(&self) -> Value {
        json!({ "m": self.m, "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
    }
}

impl<R: Ring + ToJson> ToJson for SqrtExt<R> {
    fn to_json(&self) -> Value {
        json!({ "l": self.l, "a": self.a.to_json(), "b": self.b.to_json() })
    }
}

impl<C: Ring + ToJson> ToJson for MultiLaurent<C> {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let exps: Map<String, Value> = m.iter().map(|(k, e)| (k.clone(), json!(e))).collect();
                    json!({ "exps": exps, "coeff": c.to_json() })
                })
                .collect(),
        )
    }
}

impl ToJson for GroupRingElt {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(g, c)| json!({ "element": g, "coeff": c.to_json() })).collect();
        json!({ "orders": self.group.orders, "terms": terms })
    }
}
