//! wasm-bindgen bindings for the browser playground. Each export takes a
//! context preset name and expression strings, and returns a JSON string so
//! the page stays a thin layer of vanilla JavaScript.

use std::sync::Arc;

use wasm_bindgen::prelude::*;

use ore_algebra::{
    canonical_text, find_annihilating, parse_element, AlgebraSpec, CentralizerQuery, CoeffPoly,
    Degree, OreContext, OreElem, YdegCaps,
};
use serde_json::{json, Value};

fn context(preset: &str) -> Result<Arc<OreContext>, String> {
    match preset {
        "diff-rat" => Ok(OreContext::diff_rat()),
        "diff-oct" => Ok(OreContext::diff_oct()),
        "subst-oct" => {
            let o = AlgebraSpec::octonions();
            OreContext::subst_oct(CoeffPoly::monomial(o.unit(), 2), CoeffPoly::one(&o))
                .map_err(|e| e.to_string())
        }
        other => Err(format!("unknown preset {other:?}")),
    }
}

fn degree_json(d: Degree) -> Value {
    match d {
        Degree::NegInf => Value::Null,
        Degree::Finite(n) => json!(n),
    }
}

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn parse_pair(preset: &str, a: &str, b: &str) -> Result<(OreElem, OreElem), String> {
    let ctx = context(preset)?;
    let a = parse_element(a, &ctx).map_err(|e| e.to_string())?;
    let b = parse_element(b, &ctx).map_err(|e| e.to_string())?;
    Ok((a, b))
}

/// Twisted product of two expressions: both orders, commutation and
/// degrees, as JSON.
#[wasm_bindgen]
pub fn eval_product(preset: &str, a: &str, b: &str) -> String {
    let (a, b) = match parse_pair(preset, a, b) {
        Ok(pair) => pair,
        Err(e) => return err_json(e),
    };
    let ab = a.mul(&b);
    let ba = b.mul(&a);
    json!({
        "a": canonical_text(&a),
        "b": canonical_text(&b),
        "ab": canonical_text(&ab),
        "ba": canonical_text(&ba),
        "commutes": ab == ba,
        "chi_a": degree_json(a.xdeg()),
        "chi_b": degree_json(b.xdeg()),
        "chi_ab": degree_json(ab.xdeg()),
    })
    .to_string()
}

/// Greedy free-module basis of the centralizer of `a` up to `max_deg`.
#[wasm_bindgen]
pub fn centralizer_basis(preset: &str, a: &str, max_deg: usize) -> String {
    let ctx = match context(preset) {
        Ok(c) => c,
        Err(e) => return err_json(e),
    };
    let a = match parse_element(a, &ctx) {
        Ok(a) => a,
        Err(e) => return err_json(e),
    };
    let query = match CentralizerQuery::new(a.clone(), max_deg, YdegCaps::Auto) {
        Ok(q) => q,
        Err(e) => return err_json(e),
    };
    match query.module_basis() {
        Ok(basis) => {
            let elements: Vec<String> = basis.elements.iter().map(canonical_text).collect();
            json!({
                "a": canonical_text(&a),
                "rank": basis.rank(),
                "degrees": basis.degrees,
                "elements": elements,
            })
            .to_string()
        }
        Err(e) => err_json(e),
    }
}

/// Annihilating polynomial for a commuting pair, by the doubling-box search.
#[wasm_bindgen]
pub fn bc_polynomial(preset: &str, a: &str, b: &str) -> String {
    let (a, b) = match parse_pair(preset, a, b) {
        Ok(pair) => pair,
        Err(e) => return err_json(e),
    };
    match find_annihilating(&a, &b, 3) {
        Ok(Some(p)) => json!({
            "a": canonical_text(&a),
            "b": canonical_text(&b),
            "found": true,
            "polynomial": p.to_string(),
        })
        .to_string(),
        Ok(None) => json!({
            "a": canonical_text(&a),
            "b": canonical_text(&b),
            "found": false,
        })
        .to_string(),
        Err(e) => err_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_report() {
        let v: Value = serde_json::from_str(&eval_product("diff-rat", "x", "y")).unwrap();
        assert_eq!(v["ab"], "y * x + 1");
        assert_eq!(v["ba"], "y * x");
        assert_eq!(v["commutes"], false);
    }

    #[test]
    fn basis_report() {
        let v: Value = serde_json::from_str(&centralizer_basis("diff-oct", "x^2", 4)).unwrap();
        assert_eq!(v["rank"], 16);
    }

    #[test]
    fn bc_report() {
        let v: Value = serde_json::from_str(&bc_polynomial("diff-rat", "x^2", "x^3")).unwrap();
        assert_eq!(v["polynomial"], "s^3 - t^2");
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&eval_product("diff-rat", "e7", "1")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("e7"));
        let v: Value = serde_json::from_str(&eval_product("nope", "1", "1")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("preset"));
    }
}
