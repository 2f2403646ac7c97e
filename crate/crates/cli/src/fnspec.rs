//! Function specs: `{"builtin": ...}`, `{"poly": ...}`, `{"poly2": ...}`.

use anyhow::{anyhow, bail, Context, Result};
use cfckit::{Builtin, Scalar, ScalarFunction, ScalarRing, StarPolynomial};
use num_complex::Complex64;
use serde_json::{Map, Value};

pub fn parse_function(text: &str, ring: ScalarRing) -> Result<ScalarFunction> {
    let value: Value = serde_json::from_str(text).context("fn: invalid JSON")?;
    let Value::Object(obj) = value else {
        bail!("fn: expected an object with one of `builtin`, `poly`, `poly2`");
    };
    let kinds: Vec<&str> = ["builtin", "poly", "poly2"]
        .into_iter()
        .filter(|k| obj.contains_key(*k))
        .collect();
    match kinds.as_slice() {
        ["builtin"] => Ok(parse_builtin(&obj)?.function(ring)),
        ["poly"] => {
            let coeffs = parse_rows(&obj, "poly", 2)?
                .into_iter()
                .map(|r| Complex64::new(r[0], r[1]))
                .collect::<Vec<Scalar>>();
            let p = StarPolynomial::from_coefficients(&coeffs);
            let name = p.to_string();
            Ok(p.to_function(ring).named(name))
        }
        ["poly2"] => {
            let rows = parse_rows(&obj, "poly2", 4)?;
            let mut terms = Vec::with_capacity(rows.len());
            for (i, r) in rows.iter().enumerate() {
                let k = exponent(r[0]).ok_or_else(|| anyhow!("fn.poly2[{i}][0]: expected a nonnegative integer"))?;
                let m = exponent(r[1]).ok_or_else(|| anyhow!("fn.poly2[{i}][1]: expected a nonnegative integer"))?;
                terms.push((k, m, Complex64::new(r[2], r[3])));
            }
            let p = StarPolynomial::new(terms);
            let name = p.to_string();
            Ok(p.to_function(ring).named(name))
        }
        [] => bail!("fn: expected one of `builtin`, `poly`, `poly2`"),
        _ => bail!("fn: `{}` are mutually exclusive", kinds.join("`, `")),
    }
}

fn exponent(x: f64) -> Option<u32> {
    (x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64).then_some(x as u32)
}

fn parse_builtin(obj: &Map<String, Value>) -> Result<Builtin> {
    let name = obj["builtin"]
        .as_str()
        .ok_or_else(|| anyhow!("fn.builtin: expected a string"))?;
    Ok(match name {
        "sqrt" => Builtin::Sqrt,
        "abs" => Builtin::Abs,
        "exp" => Builtin::Exp,
        "log" => Builtin::Log,
        "inv" => Builtin::Inv,
        "pow" => {
            let k = obj
                .get("k")
                .ok_or_else(|| anyhow!("fn.k: required for `pow`"))?
                .as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| anyhow!("fn.k: expected a nonnegative integer"))?;
            Builtin::Pow(k)
        }
        "rpow" => {
            let t = obj
                .get("t")
                .ok_or_else(|| anyhow!("fn.t: required for `rpow`"))?
                .as_f64()
                .ok_or_else(|| anyhow!("fn.t: expected a number"))?;
            Builtin::Rpow(t)
        }
        other => bail!("fn.builtin: unknown builtin `{other}`"),
    })
}

fn parse_rows(obj: &Map<String, Value>, key: &str, width: usize) -> Result<Vec<Vec<f64>>> {
    let rows = obj[key]
        .as_array()
        .ok_or_else(|| anyhow!("fn.{key}: expected an array"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .filter(|r| r.len() == width)
                .ok_or_else(|| anyhow!("fn.{key}[{i}]: expected an array of {width} numbers"))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| x.as_f64().ok_or_else(|| anyhow!("fn.{key}[{i}][{j}]: expected a number")))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(f: &ScalarFunction, re: f64, im: f64) -> Option<Scalar> {
        f.eval(Complex64::new(re, im))
    }

    #[test]
    fn builtins() {
        let f = parse_function(r#"{"builtin":"sqrt"}"#, ScalarRing::NNReal).unwrap();
        assert_eq!(at(&f, 4.0, 0.0), Some(Complex64::new(2.0, 0.0)));
        let f = parse_function(r#"{"builtin":"pow","k":3}"#, ScalarRing::Real).unwrap();
        assert_eq!(at(&f, 2.0, 0.0), Some(Complex64::new(8.0, 0.0)));
    }

    #[test]
    fn polynomials() {
        let f = parse_function(r#"{"poly":[[1,0],[0,0],[2,0]]}"#, ScalarRing::Complex).unwrap();
        assert_eq!(at(&f, 0.0, 1.0), Some(Complex64::new(-1.0, 0.0)));
        let f = parse_function(r#"{"poly2":[[1,1,1,0]]}"#, ScalarRing::Complex).unwrap();
        assert_eq!(at(&f, 3.0, 4.0), Some(Complex64::new(25.0, 0.0)));
    }

    #[test]
    fn errors_name_the_field() {
        let cases = [
            (r#"{"builtin":"tan"}"#, "fn.builtin"),
            (r#"{"builtin":"pow"}"#, "fn.k"),
            (r#"{"builtin":"pow","k":-1}"#, "fn.k"),
            (r#"{"poly":[[1,0],[2]]}"#, "fn.poly[1]"),
            (r#"{"poly2":[[0.5,0,1,0]]}"#, "fn.poly2[0][0]"),
            (r#"{"poly":[],"builtin":"exp"}"#, "fn:"),
            (r#"[1]"#, "fn:"),
        ];
        for (text, field) in cases {
            let msg = parse_function(text, ScalarRing::Complex).err().unwrap().to_string();
            assert!(msg.starts_with(field), "{text}: {msg}");
        }
    }
}
