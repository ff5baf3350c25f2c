//! Browser bindings. Each export wraps a plain function returning JSON text so
//! the same code paths run under native tests.

use serde_json::{json, Value};
use superfock_core::fock::{audit_relations, deformed_level, FockSpec};
use superfock_core::osp::{build_generators, closure_report, SPAN_NAMES};
use superfock_core::susy::{build_supercharge_1d, pair_spectrum, ModelParams, SpectrumOptions};
use wasm_bindgen::prelude::*;

/// Largest cutoff the page accepts; keeps each call well under a second.
pub const MAX_WEB_CUTOFF: usize = 128;

fn check_cutoff(cutoff: usize) -> Result<(), String> {
    if cutoff > MAX_WEB_CUTOFF {
        return Err(format!(
            "cutoff {cutoff} exceeds the demo limit {MAX_WEB_CUTOFF}"
        ));
    }
    Ok(())
}

/// Lowest `levels` eigenvalues of `H = {Q, Q†}` for `W = x + g₀x²`.
pub fn spectrum_json(cutoff: usize, nu: f64, g0: f64, levels: usize) -> Result<String, String> {
    check_cutoff(cutoff)?;
    let params = ModelParams::new(cutoff, nu, g0).map_err(|e| e.to_string())?;
    let pair = build_supercharge_1d(&params).map_err(|e| e.to_string())?;
    let opts = SpectrumOptions {
        retain: Some(levels.clamp(1, cutoff)),
        ..SpectrumOptions::default()
    };
    let spec = pair_spectrum(&pair, &opts).map_err(|e| e.to_string())?;
    let out = json!({
        "eigenvalues": spec.eigenvalues,
        "degeneracies": spec.degeneracies,
        "sectors": spec.sector_labels,
        "breaking": spec.breaking.to_string(),
        "nilpotency": pair.nilpotency_residual(),
    });
    Ok(out.to_string())
}

/// Deformed levels `[n]_ν` for `n < count` alongside the relation audit.
pub fn levels_json(nu: f64, count: usize) -> Result<String, String> {
    let cutoff = count.max(4);
    check_cutoff(cutoff)?;
    let spec = FockSpec::new(cutoff, nu).map_err(|e| e.to_string())?;
    let levels: Vec<f64> = (0..count).map(|n| deformed_level(n, nu)).collect();
    let out = json!({
        "levels": levels,
        "audit": audit_relations(&spec),
    });
    Ok(out.to_string())
}

fn format_coefficient(re: f64, im: f64) -> String {
    let tidy = |x: f64| {
        let s = format!("{x:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    };
    match (re.abs() > 1e-9, im.abs() > 1e-9) {
        (true, true) => format!(
            "({} {} {}i)",
            tidy(re),
            if im < 0.0 { '-' } else { '+' },
            tidy(im.abs())
        ),
        (false, true) => format!("{}i", tidy(im)),
        _ => tidy(re),
    }
}

fn expansion(coefficients: &[[f64; 2]]) -> String {
    let terms: Vec<String> = coefficients
        .iter()
        .zip(SPAN_NAMES)
        .filter(|(c, _)| c[0].abs() > 1e-9 || c[1].abs() > 1e-9)
        .map(|(c, name)| format!("{}·{name}", format_coefficient(c[0], c[1])))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// All 64 graded brackets of the osp(2|2) generators with their expansions.
pub fn closure_json(nu: f64, epsilon: i32, cutoff: usize) -> Result<String, String> {
    check_cutoff(cutoff)?;
    let eps = i8::try_from(epsilon).map_err(|_| format!("epsilon must be ±1, got {epsilon}"))?;
    let spec = FockSpec::new(cutoff, nu).map_err(|e| e.to_string())?;
    let gens = build_generators(&spec, eps).map_err(|e| e.to_string())?;
    let report = closure_report(&gens, 1e-10).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "left": r.left,
                "right": r.right,
                "bracket": r.bracket,
                "expansion": expansion(&r.coefficients),
                "residual": r.residual,
                "parity_ok": r.parity_ok,
            })
        })
        .collect();
    let out = json!({
        "rows": rows,
        "max_residual": report.max_residual,
        "pass": report.pass,
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn spectrum(cutoff: usize, nu: f64, g0: f64, levels: usize) -> Result<String, JsError> {
    spectrum_json(cutoff, nu, g0, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn deformed_levels(nu: f64, count: usize) -> Result<String, JsError> {
    levels_json(nu, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn osp_closure(nu: f64, epsilon: i32, cutoff: usize) -> Result<String, JsError> {
    closure_json(nu, epsilon, cutoff).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn harmonic_spectrum_pairs_up() {
        let v = parse(&spectrum_json(32, 0.0, 0.0, 5).unwrap());
        let ev: Vec<f64> = v["eigenvalues"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        for (a, b) in ev.iter().zip([0.0, 1.0, 1.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-8);
        }
        assert_eq!(v["breaking"], "exact");
    }

    #[test]
    fn levels_follow_parity() {
        let v = parse(&levels_json(0.5, 4).unwrap());
        assert_eq!(v["levels"], json!([0.0, 1.5, 2.0, 3.5]));
        assert!(v["audit"]["klein_squared"].as_f64().unwrap() < 1e-12);
    }

    #[test]
    fn closure_table_has_every_pair() {
        let v = parse(&closure_json(0.7, -1, 16).unwrap());
        assert_eq!(v["rows"].as_array().unwrap().len(), 64);
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(spectrum_json(4096, 0.0, 0.0, 4).is_err());
        assert!(levels_json(-2.0, 8).unwrap_err().contains("ν > −1"));
        assert!(closure_json(0.0, 300, 16).is_err());
        assert!(closure_json(0.0, 2, 16).is_err());
    }

    #[test]
    fn coefficients_read_naturally() {
        assert_eq!(expansion(&[[0.0, 0.0]; 9]), "0");
        let mut c = [[0.0, 0.0]; 9];
        c[0] = [2.0, 0.0];
        c[8] = [0.0, -0.5];
        assert_eq!(expansion(&c), "2·T3 + -0.5i·I");
        assert_eq!(format_coefficient(1.0, 1.0), "(1 + 1i)");
    }
}
