//! JSON documents for polynomials, decompositions and reports.
//!
//! Output is canonical: rationals are `"p/q"` in lowest terms, ε-polynomials
//! list `[exponent, "p/q"]` pairs by ascending exponent, polynomial terms
//! follow graded lexicographic order. Input is read leniently (bare integers,
//! unreduced fractions, unsorted or repeated terms) and normalized.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, parse_rational, EpsPoly, EpsScalar, HomoPoly, LinearForm, Monomial, Rational};
use crate::decomposition::{BorderDecomposition, Decomposition, Summand, WaringDecomposition};

pub const VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

type Parsed<T> = std::result::Result<T, FormatError>;

fn bad<T>(msg: impl Into<String>) -> Parsed<T> {
    Err(FormatError(msg.into()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Polynomial(HomoPoly<Rational>),
    Border(BorderDecomposition),
    Waring(WaringDecomposition),
    Report(Value),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Polynomial(_) => "polynomial",
            Document::Border(_) => "border",
            Document::Waring(_) => "waring",
            Document::Report(_) => "report",
        }
    }

    pub fn to_value(&self) -> Value {
        let payload = match self {
            Document::Polynomial(p) => poly_to_value(p),
            Document::Border(b) => decomposition_to_value(b, eps_scalar_to_value),
            Document::Waring(w) => decomposition_to_value(w, rational_to_value),
            Document::Report(r) => r.clone(),
        };
        json!({ "kind": self.kind(), "version": VERSION, "payload": payload })
    }

    pub fn from_value(v: &Value) -> Parsed<Self> {
        let obj = v.as_object().ok_or_else(|| FormatError("document is not an object".into()))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| FormatError("missing `kind`".into()))?;
        match obj.get("version").and_then(Value::as_u64) {
            Some(VERSION) => {}
            Some(other) => return bad(format!("unsupported version {other}")),
            None => return bad("missing `version`"),
        }
        let payload = obj.get("payload").ok_or_else(|| FormatError("missing `payload`".into()))?;
        match kind {
            "polynomial" => Ok(Document::Polynomial(poly_from_value(payload)?)),
            "border" => Ok(Document::Border(decomposition_from_value(payload, eps_scalar_from_value)?)),
            "waring" => Ok(Document::Waring(decomposition_from_value(payload, rational_from_value)?)),
            "report" => Ok(Document::Report(payload.clone())),
            other => bad(format!("unknown kind `{other}`")),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn parse(s: &str) -> Parsed<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| FormatError(format!("invalid JSON: {e}")))?;
        Document::from_value(&v)
    }
}

pub fn rational_to_value(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_value(v: &Value) -> Parsed<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| FormatError(format!("bad rational `{s}`"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).ok_or_else(|| FormatError(format!("bad rational {n}")))
        }
        other => bad(format!("expected a rational, found {other}")),
    }
}

pub fn eps_poly_to_value(p: &EpsPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| json!([e, rational_to_value(c)]))
            .collect(),
    )
}

pub fn eps_poly_from_value(v: &Value) -> Parsed<EpsPoly> {
    let items = v.as_array().ok_or_else(|| FormatError("ε-polynomial is not an array".into()))?;
    let mut terms = Vec::with_capacity(items.len());
    for item in items {
        let pair = match item.as_array() {
            Some(p) if p.len() == 2 => p,
            _ => return bad("ε-polynomial term is not an [exponent, coefficient] pair"),
        };
        let e = pair[0]
            .as_u64()
            .and_then(|e| u32::try_from(e).ok())
            .ok_or_else(|| FormatError(format!("bad exponent {}", pair[0])))?;
        terms.push((e, rational_from_value(&pair[1])?));
    }
    Ok(EpsPoly::from_terms(terms))
}

pub fn eps_scalar_to_value(s: &EpsScalar) -> Value {
    json!({ "num": eps_poly_to_value(s.num()), "den": eps_poly_to_value(s.den()) })
}

/// Also accepts a bare rational.
pub fn eps_scalar_from_value(v: &Value) -> Parsed<EpsScalar> {
    if !v.is_object() {
        return Ok(EpsScalar::constant(rational_from_value(v)?));
    }
    let num = v.get("num").ok_or_else(|| FormatError("ε-scalar without `num`".into()))?;
    let num = eps_poly_from_value(num)?;
    let den = match v.get("den") {
        Some(d) => eps_poly_from_value(d)?,
        None => EpsPoly::constant(Rational::from_integer(1.into())),
    };
    EpsScalar::new(num, den).map_err(|e| FormatError(e.to_string()))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Parsed<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| FormatError(format!("missing or invalid `{key}`")))
}

fn u32_field(obj: &Map<String, Value>, key: &str) -> Parsed<u32> {
    obj.get(key)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| FormatError(format!("missing or invalid `{key}`")))
}

fn array_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Parsed<&'a Vec<Value>> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError(format!("missing or invalid `{key}`")))
}

pub fn poly_to_value(p: &HomoPoly<Rational>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "exps": m.exps(), "coef": rational_to_value(c) }))
        .collect();
    json!({ "nvars": p.nvars(), "degree": p.degree(), "terms": terms })
}

pub fn poly_from_value(v: &Value) -> Parsed<HomoPoly<Rational>> {
    let obj = v.as_object().ok_or_else(|| FormatError("polynomial is not an object".into()))?;
    let nvars = usize_field(obj, "nvars")?;
    let degree = u32_field(obj, "degree")?;
    let mut terms = Vec::new();
    for t in array_field(obj, "terms")? {
        let t = t.as_object().ok_or_else(|| FormatError("term is not an object".into()))?;
        let exps = array_field(t, "exps")?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| FormatError("bad exponent vector".into()))?;
        let coef = rational_from_value(t.get("coef").ok_or_else(|| FormatError("term without `coef`".into()))?)?;
        terms.push((Monomial::new(exps), coef));
    }
    HomoPoly::from_terms(nvars, degree, terms).map_err(|e| FormatError(e.to_string()))
}

fn decomposition_to_value<S>(d: &Decomposition<S>, scalar: fn(&S) -> Value) -> Value
where
    S: crate::algebra::Ring,
{
    let summands: Vec<Value> = d
        .summands()
        .iter()
        .map(|s| {
            let coefs: Vec<Value> = s.form.coefs().iter().map(scalar).collect();
            json!({ "weight": scalar(&s.weight), "form": { "coefs": coefs } })
        })
        .collect();
    json!({ "nvars": d.nvars(), "degree": d.degree(), "summands": summands })
}

fn decomposition_from_value<S>(v: &Value, scalar: fn(&Value) -> Parsed<S>) -> Parsed<Decomposition<S>>
where
    S: crate::algebra::Ring,
{
    let obj = v.as_object().ok_or_else(|| FormatError("decomposition is not an object".into()))?;
    let nvars = usize_field(obj, "nvars")?;
    let degree = u32_field(obj, "degree")?;
    let mut summands = Vec::new();
    for s in array_field(obj, "summands")? {
        let s = s.as_object().ok_or_else(|| FormatError("summand is not an object".into()))?;
        let weight = scalar(s.get("weight").ok_or_else(|| FormatError("summand without `weight`".into()))?)?;
        let form = s
            .get("form")
            .and_then(Value::as_object)
            .ok_or_else(|| FormatError("summand without `form`".into()))?;
        let coefs = array_field(form, "coefs")?
            .iter()
            .map(scalar)
            .collect::<Parsed<Vec<S>>>()?;
        let form = LinearForm::new(coefs).map_err(|e| FormatError(e.to_string()))?;
        summands.push(Summand::new(weight, form));
    }
    Decomposition::new(nvars, degree, summands).map_err(|e| FormatError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn rationals() {
        assert_eq!(rational_to_value(&rat(-6, 4)), json!("-3/2"));
        assert_eq!(rational_to_value(&int(5)), json!("5/1"));
        assert_eq!(rational_from_value(&json!("4/-6")).unwrap(), rat(-2, 3));
        assert_eq!(rational_from_value(&json!(7)).unwrap(), int(7));
        assert!(rational_from_value(&json!("1/0")).is_err());
        assert!(rational_from_value(&json!(0.5)).is_err());
    }

    #[test]
    fn eps_scalars_are_normalized() {
        let v = json!({ "num": [[2, "2/1"], [1, "0/1"]], "den": [[1, "2/1"]] });
        let s = eps_scalar_from_value(&v).unwrap();
        assert_eq!(s, EpsScalar::eps());
        assert_eq!(eps_scalar_to_value(&s), json!({ "num": [[1, "1/1"]], "den": [[0, "1/1"]] }));
        assert!(eps_scalar_from_value(&json!({ "num": [[0, "1"]], "den": [] })).is_err());
    }

    #[test]
    fn polynomial_document() {
        let p = HomoPoly::from_terms(
            2,
            2,
            vec![
                (Monomial::new(vec![0, 2]), int(1)),
                (Monomial::new(vec![2, 0]), rat(1, 2)),
            ],
        )
        .unwrap();
        let doc = Document::Polynomial(p);
        let s = doc.to_json_string();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["payload"]["terms"][0]["exps"], json!([2, 0]));
        assert_eq!(v["payload"]["terms"][1]["coef"], json!("1/1"));
        assert_eq!(Document::parse(&s).unwrap(), doc);
        assert_eq!(Document::parse(&s).unwrap().to_json_string(), s);
    }

    #[test]
    fn malformed_documents() {
        assert!(Document::parse("{").is_err());
        assert!(Document::parse(r#"{"kind":"polynomial","version":2,"payload":{}}"#).is_err());
        assert!(Document::parse(r#"{"kind":"matrix","version":1,"payload":{}}"#).is_err());
        let wrong_degree = r#"{"kind":"polynomial","version":1,"payload":
            {"nvars":2,"degree":2,"terms":[{"exps":[1,0],"coef":"1"}]}}"#;
        assert!(Document::parse(wrong_degree).is_err());
        let zero_weight = r#"{"kind":"waring","version":1,"payload":
            {"nvars":1,"degree":2,"summands":[{"weight":"0","form":{"coefs":["1"]}}]}}"#;
        assert!(Document::parse(zero_weight).is_err());
    }
}
