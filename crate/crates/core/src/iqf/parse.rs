use super::field::{QInt, QuadField};
use super::ideal::Ideal;
use crate::error::{Error, Result};

fn bad(s: &str) -> Error {
    Error::InvalidInput(format!("cannot parse `{s}` as an element of O_K"))
}

fn symbol(k: &QuadField, sym: &str, src: &str) -> Result<QInt> {
    match (sym, k.disc) {
        ("", _) => Ok(QInt::int(1)),
        ("i", -4) => Ok(QuadField::gaussian_int(0, 1)),
        ("w", -3) => Ok(QuadField::eisenstein_int(0, 1)),
        ("t", _) => Ok(k.theta()),
        _ => Err(bad(src)),
    }
}

/// Parses a sum of terms `[n][sym]` where `sym` is `i` (for `D = -4`),
/// `w` (for `D = -3`) or `t` for `theta = (D + sqrt(D))/2`.
pub fn parse_element(k: &QuadField, s: &str) -> Result<QInt> {
    let src = s;
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad(src));
    }
    let mut acc = QInt::int(0);
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coeff: i64 = if digits == 0 { 1 } else { term[..digits].parse().map_err(|_| bad(src))? };
        if term.is_empty() {
            return Err(bad(src));
        }
        let v = symbol(k, &term[digits..], src)?;
        acc = k.add(acc, QInt::new(sign * coeff * v.x, sign * coeff * v.y));
    }
    Ok(acc)
}

/// Parses a product of parenthesised or `*`-separated elements, e.g.
/// `(2+2i)(3+2i)`, `3*(1+w)` or `7`, as the ideal it generates.
pub fn parse_ideal(k: &QuadField, s: &str) -> Result<Ideal> {
    let flat: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut factors = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in flat.chars() {
        match c {
            '(' => {
                if depth == 0 && !cur.is_empty() {
                    factors.push(std::mem::take(&mut cur));
                }
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(s));
                }
                factors.push(std::mem::take(&mut cur));
            }
            '*' if depth == 0 => {
                if !cur.is_empty() {
                    factors.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(bad(s));
    }
    if !cur.is_empty() {
        factors.push(cur);
    }
    if factors.is_empty() {
        return Err(bad(s));
    }
    let mut g = QInt::int(1);
    for f in &factors {
        g = k.mul(g, parse_element(k, f)?);
    }
    Ideal::principal(k, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moduli() {
        let k = QuadField::gaussian();
        assert_eq!(parse_element(&k, "2+2i").unwrap(), QuadField::gaussian_int(2, 2));
        assert_eq!(parse_element(&k, "-i").unwrap(), QuadField::gaussian_int(0, -1));
        assert_eq!(parse_element(&k, "3 - 2i").unwrap(), QuadField::gaussian_int(3, -2));
        let n = parse_ideal(&k, "(2+2i)(3+2i)").unwrap();
        assert_eq!(n.norm(), 8 * 13);
        assert_eq!(parse_ideal(&k, "3").unwrap(), Ideal::from_int(&k, 3).unwrap());
        assert!(parse_ideal(&k, "(2+2w)").is_err());
        assert!(parse_ideal(&k, "(2+").is_err());
    }

    #[test]
    fn eisenstein_moduli() {
        let k = QuadField::eisenstein();
        let w = parse_element(&k, "w").unwrap();
        assert_eq!(k.add(k.mul(w, w), k.add(w, QInt::int(1))), QInt::int(0));
        assert_eq!(parse_ideal(&k, "3*(3+w)").unwrap().norm(), 9 * 7);
    }
}
