//! Text and JSON rendering of exact objects for reports.

use prehom_core::{PolyOnV, QMatrix, QScalar, RationalityVerdict};
use serde_json::{json, Value};

/// `- 27*x0^2*x3^2 + 18*x0*x1*x2*x3 - ...` in the canonical term order.
pub fn poly_text(p: &PolyOnV) -> String {
    let terms = p.terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exps, c)) in terms.iter().enumerate() {
        let (neg, body) = term_text(exps, c);
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Sign-split rendering of one term, coefficient first.
fn term_text(exps: &[u32], c: &QScalar) -> (bool, String) {
    let neg = c.signum() < 0;
    let abs = if neg { -c.clone() } else { c.clone() };
    let mono: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                format!("x{v}")
            } else {
                format!("x{v}^{e}")
            }
        })
        .collect();
    let coeff = scalar_text(&abs);
    let body = if mono.is_empty() {
        coeff
    } else if abs.is_one() {
        mono.join("*")
    } else {
        format!("{}*{}", coeff, mono.join("*"))
    };
    (neg, body)
}

/// Scalar display, parenthesized when it is a two-part sum. Display only
/// emits a spaced sign between a rational and a sqrt part, so matching on
/// that is exact.
fn scalar_text(s: &QScalar) -> String {
    let text = s.to_string();
    if text.contains(" + ") || text.contains(" - ") {
        format!("({text})")
    } else {
        text
    }
}

pub fn poly_json(p: &PolyOnV) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(exps, c)| json!({ "exps": exps, "coeff": c.to_string() }))
        .collect();
    json!(terms)
}

pub fn matrix_json(m: &QMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    json!(rows)
}

pub fn scalars_json(xs: &[QScalar]) -> Value {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    json!(v)
}

pub fn vectors_json(vs: &[Vec<QScalar>]) -> Value {
    let rows: Vec<Value> = vs.iter().map(|v| scalars_json(v)).collect();
    json!(rows)
}

pub fn matrix_text(m: &QMatrix, indent: &str) -> String {
    (0..m.nrows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            format!("{indent}[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn vector_text(v: &[QScalar]) -> String {
    let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", row.join(", "))
}

pub fn verdict_json(v: &RationalityVerdict) -> Value {
    match v {
        RationalityVerdict::Rational { scaling, rescaled } => json!({
            "rational": true,
            "scaling": scaling.to_string(),
            "rescaled": rescaled.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        }),
        RationalityVerdict::Irrational { witness } => json!({
            "rational": false,
            "witness": [witness.0, witness.1],
        }),
    }
}

pub fn verdict_text(v: &RationalityVerdict) -> String {
    match v {
        RationalityVerdict::Rational { scaling, .. } => {
            format!("RATIONAL (rescaled by {})", scaling)
        }
        RationalityVerdict::Irrational { witness } => format!(
            "IRRATIONAL (coordinates {} and {} have an irrational ratio)",
            witness.0, witness.1
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use prehom_core::cubic::delta_poly;

    #[test]
    fn discriminant_prints_in_canonical_order() {
        let text = poly_text(delta_poly());
        assert_eq!(
            text,
            "- 27*x0^2*x3^2 + 18*x0*x1*x2*x3 - 4*x0*x2^3 - 4*x1^3*x3 + x1^2*x2^2"
        );
    }

    #[test]
    fn irrational_coefficients_are_parenthesized() {
        let p = PolyOnV::monomial(
            vec![2, 0],
            QScalar::from_int(1).checked_add(&QScalar::sqrt_d(2).unwrap()).unwrap(),
        );
        assert_eq!(poly_text(&p), "(1 + 1*sqrt(2))*x0^2");
    }
}
