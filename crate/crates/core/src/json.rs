//! JSON encodings of inputs and reports.
//!
//! Matrices are `{"field": {...}, "matrix": [[...], ...]}`; divisor lists
//! are `[{"irr": "x - 1", "coeffs": [-1, 1], "exps": [3, 2]}]` and may be
//! given instead of a matrix wherever a divisor multiset is expected, as
//! `{"field": {...}, "divisors": [...]}`.

use serde_json::{json, Value};

use crate::centralizer::{BlockReport, CentralizerReport};
use crate::error::{Error, Result};
use crate::field::{BaseField, Field, FieldSpec};
use crate::matrix::{ElementaryDivisorMultiset, Matrix};
use crate::perm::{CycleType, PermClassData, PermPairReport, Permutation};
use crate::poly::Poly;
use crate::sequiv::{
    CandidateCheck, Obstruction, PowerIndexSet, ReducibleDivisor, SEquivCertificate, SEquivOutcome,
    SEquivVerdict, SourceDiagnostic,
};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// The `"field"` member of an input document.
pub fn field_of(doc: &Value) -> Result<FieldSpec> {
    let f = doc.get("field").ok_or_else(|| parse_err("missing \"field\""))?;
    serde_json::from_value(f.clone()).map_err(|e| parse_err(format!("bad field: {e}")))
}

pub fn matrix_from_json<F: BaseField>(field: &F, doc: &Value) -> Result<Matrix<F>> {
    let rows = doc
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing \"matrix\" array"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix rows must be arrays"))?
                .iter()
                .map(|v| field.elem_from_json(v))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(field.clone(), rows)?;
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn matrix_to_json<F: BaseField>(m: &Matrix<F>) -> Value {
    let f = m.field();
    json!({
        "field": f.spec(),
        "matrix": m.to_rows().iter().map(|r| r.iter().map(|a| f.elem_to_json(a)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn poly_to_json<F: BaseField>(p: &Poly<F>) -> Value {
    let f = p.field();
    json!({
        "coeffs": p.coeffs().iter().map(|a| f.elem_to_json(a)).collect::<Vec<_>>(),
        "display": p.to_string(),
    })
}

pub fn poly_from_json<F: BaseField>(field: &F, v: &Value) -> Result<Poly<F>> {
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polynomial needs \"coeffs\""))?
        .iter()
        .map(|c| field.elem_from_json(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field.clone(), coeffs))
}

pub fn eldiv_to_json<F: BaseField>(e: &ElementaryDivisorMultiset<F>) -> Value {
    let f = e.field();
    Value::Array(
        e.groups()
            .iter()
            .map(|g| {
                json!({
                    "irr": g.irr.to_string(),
                    "coeffs": g.irr.coeffs().iter().map(|a| f.elem_to_json(a)).collect::<Vec<_>>(),
                    "exps": g.exps,
                })
            })
            .collect(),
    )
}

/// Reads a divisor list; each irreducible is re-checked.
pub fn eldiv_from_json<F: BaseField>(field: &F, v: &Value) -> Result<ElementaryDivisorMultiset<F>> {
    let items = v.as_array().ok_or_else(|| parse_err("divisors must be an array"))?;
    let mut pairs = Vec::new();
    for item in items {
        let irr = poly_from_json(field, item)?;
        let fac = field.factor(&irr)?;
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(parse_err(format!("{irr} is not irreducible")));
        }
        let exps = item
            .get("exps")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("divisor needs \"exps\""))?;
        for e in exps {
            let e = e.as_u64().filter(|&e| e > 0).ok_or_else(|| parse_err("exponents must be positive integers"))?;
            pairs.push((irr.clone(), e as usize));
        }
    }
    Ok(ElementaryDivisorMultiset::from_pairs(field.clone(), pairs))
}

/// Divisors of a matrix document or of an explicit `"divisors"` list.
pub fn divisors_from_doc<F: BaseField>(field: &F, doc: &Value) -> Result<ElementaryDivisorMultiset<F>> {
    match doc.get("divisors") {
        Some(d) => eldiv_from_json(field, d),
        None => crate::matrix::elementary_divisors(&matrix_from_json(field, doc)?),
    }
}

fn set_json(s: &PowerIndexSet) -> Value {
    json!(s.to_vec())
}

pub fn reducible_to_json<F: Field>(r: &ReducibleDivisor<F>) -> Value {
    json!({"irr": r.irr.to_string(), "exp": r.exp, "display": r.to_string()})
}

pub fn certificate_to_json<F: Field>(c: &SEquivCertificate<F>) -> Value {
    Value::Array(
        c.pairs
            .iter()
            .map(|p| {
                json!({
                    "src": reducible_to_json(&p.src),
                    "dst": reducible_to_json(&p.dst),
                    "mode": p.mode.name(),
                })
            })
            .collect(),
    )
}

fn candidate_to_json<F: Field>(c: &CandidateCheck<F>) -> Value {
    json!({
        "dst": reducible_to_json(&c.dst),
        "dst_set": set_json(&c.dst_set),
        "dst_j": set_json(&c.dst_j),
        "residue_iso": c.residue_iso,
    })
}

fn diagnostic_to_json<F: Field>(d: &SourceDiagnostic<F>) -> Value {
    json!({
        "src": reducible_to_json(&d.src),
        "src_set": set_json(&d.src_set),
        "candidates": d.candidates.iter().map(candidate_to_json).collect::<Vec<_>>(),
    })
}

pub fn obstruction_to_json<F: Field>(o: &Obstruction<F>) -> Value {
    match o {
        Obstruction::SizeMismatch { left, right } => {
            json!({"kind": "SizeMismatch", "left": left, "right": right})
        }
        Obstruction::HallViolation { subset, neighbours } => json!({
            "kind": "HallViolation",
            "subset": subset.iter().map(diagnostic_to_json).collect::<Vec<_>>(),
            "neighbours": neighbours.iter().map(reducible_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn verdict_to_json<F: Field>(v: &SEquivVerdict<F>) -> Value {
    let (cert, obs) = match &v.outcome {
        SEquivOutcome::Equivalent(c) => (certificate_to_json(c), Value::Null),
        SEquivOutcome::NotEquivalent(o) => (Value::Null, obstruction_to_json(o)),
    };
    json!({
        "equivalent": v.is_equivalent(),
        "certificate": cert,
        "obstruction": obs,
        "theorem_applicable": v.theorem_applicable,
    })
}

fn block_to_json<F: BaseField>(b: &BlockReport<F>) -> Value {
    json!({
        "irr": b.irr.to_string(),
        "n": b.n,
        "exps": b.exps,
        "distinct_exps": set_json(&b.distinct_exps),
        "dim_block": b.dim_block,
        "is_semisimple": b.is_semisimple,
        "has_nodes": b.has_nodes,
        "frobenius_class": {"irr": b.frobenius_class.0.to_string(), "n": b.frobenius_class.1},
    })
}

pub fn centralizer_report_to_json<F: BaseField>(r: &CentralizerReport<F>) -> Value {
    json!({
        "n": r.n,
        "field": r.field,
        "blocks": r.blocks.iter().map(block_to_json).collect::<Vec<_>>(),
        "total_dim": r.total_dim,
        "num_simples": r.num_simples,
        "num_nonproj_simples": r.num_nonproj_simples,
    })
}

/// Reads `{"cycles": [[1,2,3]], "n": 8}` or `{"cycle_type": [6,2], "n": 8}`.
pub fn cycle_type_from_json(v: &Value) -> Result<CycleType> {
    let n = v.get("n").and_then(Value::as_u64).map(|n| n as usize);
    let nums = |x: &Value| -> Result<Vec<usize>> {
        x.as_array()
            .ok_or_else(|| parse_err("expected an array"))?
            .iter()
            .map(|e| e.as_u64().map(|e| e as usize).ok_or_else(|| parse_err("expected integers")))
            .collect()
    };
    if let Some(cycles) = v.get("cycles") {
        let cycles = cycles
            .as_array()
            .ok_or_else(|| parse_err("\"cycles\" must be an array"))?
            .iter()
            .map(nums)
            .collect::<Result<Vec<_>>>()?;
        let n = n.unwrap_or_else(|| cycles.iter().flatten().copied().max().unwrap_or(0));
        return Ok(crate::perm::cycle_type(&Permutation::from_cycles(n, &cycles)?));
    }
    if let Some(t) = v.get("cycle_type") {
        let parts = nums(t)?;
        return match n {
            Some(n) => CycleType::padded(parts, n),
            None => CycleType::new(parts),
        };
    }
    Err(parse_err("expected \"cycles\" or \"cycle_type\""))
}

pub fn class_data_to_json(c: &PermClassData) -> Value {
    json!({
        "p": c.p,
        "n": c.cycle_type.n(),
        "cycle_type": c.cycle_type.parts(),
        "regular_part_type": c.regular_part_type.parts(),
        "singular_part_type": c.singular_part_type.parts(),
        "exceptional_a": c.exceptional,
    })
}

pub fn perm_pair_to_json<F: BaseField>(r: &PermPairReport<F>) -> Value {
    json!({
        "left": class_data_to_json(&r.left),
        "right": class_data_to_json(&r.right),
        "left_divisors": eldiv_to_json(&r.left_divisors),
        "right_divisors": eldiv_to_json(&r.right_divisors),
        "verdict": verdict_to_json(&r.verdict),
        "strict_verdict": verdict_to_json(&r.strict_verdict),
        "singular": {
            "left_divisors": eldiv_to_json(&r.singular_divisors.0),
            "right_divisors": eldiv_to_json(&r.singular_divisors.1),
            "verdict": verdict_to_json(&r.singular_verdict),
            "strict_verdict": verdict_to_json(&r.singular_strict_verdict),
        },
    })
}

pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.kind(), "message": e.to_string()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matrix::elementary_divisors;
    use crate::sequiv::s_equivalent;

    #[test]
    fn matrix_round_trip() {
        let doc = json!({"field": {"type": "Q"}, "matrix": [[0, "1/2"], [0, 0]]});
        assert_eq!(field_of(&doc).unwrap(), FieldSpec::Q);
        let m = matrix_from_json(&Rationals, &doc).unwrap();
        let out = matrix_to_json(&m);
        assert_eq!(out["matrix"][0][1], "1/2");
        assert_eq!(matrix_from_json(&Rationals, &out).unwrap(), m);
        let bad = json!({"field": {"type": "Q"}, "matrix": [[0, 1]]});
        assert_eq!(matrix_from_json(&Rationals, &bad).unwrap_err().kind(), "ShapeMismatch");
    }

    #[test]
    fn divisors_round_trip() {
        let f = PrimeField::new(3).unwrap();
        let doc = json!({"field": {"type": "Fp", "p": 3}, "matrix": [[0, 1, 0], [0, 0, 0], [0, 0, 1]]});
        let e = divisors_from_doc(&f, &doc).unwrap();
        let text = eldiv_to_json(&e);
        assert_eq!(text[0]["irr"], "x");
        assert_eq!(text[0]["exps"], json!([2]));
        assert_eq!(eldiv_from_json(&f, &text).unwrap(), e);
        let again = divisors_from_doc(&f, &json!({"divisors": text})).unwrap();
        assert_eq!(again, e);
        let reducible = json!([{"coeffs": [0, 0, 1], "exps": [1]}]);
        assert_eq!(eldiv_from_json(&f, &reducible).unwrap_err().kind(), "Parse");
    }

    #[test]
    fn verdict_shape() {
        let m = |rows: &[&[i64]]| Matrix::from_i64_rows(Rationals, rows).unwrap();
        let c = m(&[&[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 0], &[0, 0, 0, 0, 1]]);
        let d = m(&[&[1, 1, 0, 0, 0], &[0, 1, 1, 0, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 1], &[0, 0, 0, 0, 1]]);
        let v = s_equivalent(&elementary_divisors(&c).unwrap(), &elementary_divisors(&d).unwrap()).unwrap();
        let j = verdict_to_json(&v);
        assert_eq!(j["equivalent"], true);
        assert_eq!(j["certificate"][0]["mode"], "JTransform");
        assert_eq!(j["certificate"][0]["src"]["irr"], "x");
        assert_eq!(j["certificate"][0]["dst"]["exp"], 3);
    }

    #[test]
    fn cycle_inputs() {
        let a = cycle_type_from_json(&json!({"cycles": [[1, 2, 3], [4, 5]], "n": 8})).unwrap();
        assert_eq!(a.parts(), &[3, 2, 1, 1, 1]);
        let b = cycle_type_from_json(&json!({"cycle_type": [6, 2], "n": 8})).unwrap();
        assert_eq!(b.parts(), &[6, 2]);
        assert!(cycle_type_from_json(&json!({"cycle_type": [6, 2], "n": 7})).is_err());
    }
}
