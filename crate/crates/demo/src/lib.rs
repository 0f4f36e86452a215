//! WebAssembly bindings behind `www/index.html`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use polyoperad::exact_linear::format_lincomb;
use polyoperad::hilbert::dim_formula;
use polyoperad::realizations::{free_op_of, free_product, Ebt};
use polyoperad::rewrite::{build_rewrite_system, RewriteFamily};
use polyoperad::{build_presentation, Error, Family, LinComb};

pub const TABLE_FAMILIES: [Family; 6] =
    [Family::DendrStd, Family::Dup, Family::As, Family::DAsLozenge, Family::TDendr, Family::Dias];

fn message(e: Error, input: &str) -> String {
    match e {
        Error::Parse { pos, .. } => {
            let col = input.get(..pos).map_or(pos, |s| s.chars().count());
            format!("{e}\n{input}\n{}^", " ".repeat(col))
        }
        e => e.to_string(),
    }
}

/// JSON `{ "arities": [1..n], "rows": [{ "family", "gamma", "dims" }] }`.
pub fn dims_table_json(max_gamma: u32, n: usize) -> Result<String, String> {
    if max_gamma == 0 || max_gamma > 6 || n == 0 || n > 12 {
        return Err("need 1 ≤ γ ≤ 6 and 1 ≤ N ≤ 12".into());
    }
    let mut rows = Vec::new();
    for f in TABLE_FAMILIES {
        for g in 1..=max_gamma {
            let dims = (1..=n as u64)
                .map(|k| dim_formula(f, g, k).map(|d| d.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            rows.push(json!({ "family": f.tag(), "gamma": g, "dims": dims }));
        }
    }
    Ok(json!({ "arities": (1..=n).collect::<Vec<_>>(), "rows": rows }).to_string())
}

/// `left op right` in the free algebra of rank γ; `op` is a generator name
/// such as `prec_1`, `succ_2`, `ul_1` or `ur_2`.
pub fn product_text(gamma: u32, op: &str, left: &str, right: &str) -> Result<String, String> {
    let family = if op.starts_with("ul_") || op.starts_with("ur_") { Family::Dup } else { Family::DendrStd };
    let p = build_presentation(family, gamma, None).map_err(|e| e.to_string())?;
    let sig = p.signature();
    let g = sig.index_of(op.trim()).ok_or_else(|| Error::UnknownGenerator(op.to_string()).to_string())?;
    let (fop, a) = free_op_of(sig, g).map_err(|e| e.to_string())?;
    let s = Ebt::parse(left).map_err(|e| message(e, left))?;
    let t = Ebt::parse(right).map_err(|e| message(e, right))?;
    s.validate(gamma).map_err(|e| e.to_string())?;
    t.validate(gamma).map_err(|e| e.to_string())?;
    let v = free_product(fop, a, &LinComb::monomial(s), &LinComb::monomial(t)).map_err(|e| e.to_string())?;
    Ok(format_lincomb(&v, |t| t.to_string()))
}

pub fn normal_form_text(family: &str, gamma: u32, tree: &str) -> Result<String, String> {
    let rf: RewriteFamily = family.parse().map_err(|e: Error| e.to_string())?;
    let rs = build_rewrite_system(rf, gamma).map_err(|e| e.to_string())?;
    let t = rs.signature().parse_tree(tree).map_err(|e| message(e, tree))?;
    let nf = rs.normal_form(&t).map_err(|e| e.to_string())?;
    Ok(rs.signature().format_tree(&nf))
}

#[wasm_bindgen]
pub fn dims_table(max_gamma: u32, n: usize) -> Result<String, JsError> {
    dims_table_json(max_gamma, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tree_product(gamma: u32, op: &str, left: &str, right: &str) -> Result<String, JsError> {
    product_text(gamma, op, left, right).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn normal_form(family: &str, gamma: u32, tree: &str) -> Result<String, JsError> {
    normal_form_text(family, gamma, tree).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let v: serde_json::Value = serde_json::from_str(&dims_table_json(2, 4).unwrap()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 12);
        assert_eq!(v["rows"][1]["dims"], json!(["1", "4", "20", "112"]));
        assert!(dims_table_json(0, 4).is_err());
    }

    #[test]
    fn products_and_normal_forms() {
        assert_eq!(product_text(1, "prec_1", "(.,.)", "(.,.)").unwrap(), "(.,(.,.))[inf,1]");
        assert_eq!(product_text(2, "ul_2", "(.,.)", "(.,.)").unwrap(), "(.,(.,.))[inf,2]");
        assert_eq!(normal_form_text("As", 2, "star_2(star_1(.,.),.)").unwrap(), "star_2(.,star_2(.,.))");
        let err = normal_form_text("As", 2, "star_2(x").unwrap_err();
        assert!(err.ends_with("       ^"), "{err}");
    }
}
