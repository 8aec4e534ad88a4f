use serde_json::{json, Map};

use super::render::render_expr;
use crate::expr::Rational;
use crate::interval::DyadicInterval;
use crate::rewrite::{Step, Trace};
use crate::solver::{CertifiedRoot, SolutionRep, SolutionSet, SolveReport};

pub type JsonValue = serde_json::Value;

/// Values with a fixed JSON rendering.
pub trait ToJson {
    fn to_json(&self) -> JsonValue;
}

/// Deterministic compact JSON text.
pub fn render_json<T: ToJson + ?Sized>(value: &T) -> String {
    value.to_json().to_string()
}

fn rational(r: &Rational) -> JsonValue {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

fn interval(v: &DyadicInterval) -> JsonValue {
    let end = |r: Option<Rational>| r.as_ref().map_or(JsonValue::Null, rational);
    json!([end(v.lower_rational()), end(v.upper_rational())])
}

impl ToJson for SolutionRep {
    fn to_json(&self) -> JsonValue {
        match self {
            SolutionRep::ExactRational(r) => json!({"rep": "exact_rational", "value": rational(r)}),
            SolutionRep::QuadraticSurd(s) => json!({
                "rep": "quadratic_surd",
                "a": rational(&s.a),
                "b": rational(&s.b),
                "d": s.d.to_string(),
                "expr": render_expr(&s.to_expr()),
            }),
            SolutionRep::ClosedForm(e) => json!({"rep": "closed_form", "expr": render_expr(e)}),
            SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(r)) => json!({
                "rep": "certified_root",
                "form": "isolated",
                "polynomial": r.poly.to_string(),
                "interval": interval(&r.interval),
            }),
            SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { value, enclosure, .. }) => json!({
                "rep": "certified_root",
                "form": "inverse",
                "function": render_expr(value.function()),
                "branch_domain": value.branch_domain().to_string(),
                "target": render_expr(value.target()),
                "interval": interval(enclosure),
            }),
        }
    }
}

impl ToJson for SolutionSet {
    fn to_json(&self) -> JsonValue {
        match self {
            SolutionSet::Finite(v) => {
                json!({"kind": "finite", "solutions": v.iter().map(ToJson::to_json).collect::<Vec<_>>()})
            }
            SolutionSet::Empty => json!({"kind": "empty", "solutions": []}),
            SolutionSet::Identity => json!({"kind": "identity"}),
            SolutionSet::Unsolved(reason) => json!({"kind": "unsolved", "reason": reason}),
        }
    }
}

impl ToJson for Step {
    fn to_json(&self) -> JsonValue {
        json!({
            "rule": self.rule.to_string(),
            "relation": self.relation.name(),
            "side_conditions": self.side_conditions.iter().map(|c| {
                format!("{} {} 0", render_expr(&c.expr), c.pred.symbol())
            }).collect::<Vec<_>>(),
            "equation": self.output_text(),
        })
    }
}

impl ToJson for Trace {
    fn to_json(&self) -> JsonValue {
        json!({
            "steps": self.steps().iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "overall_relation": self.overall().name(),
        })
    }
}

impl ToJson for SolveReport {
    fn to_json(&self) -> JsonValue {
        let precision = self.precision;
        let mut m = Map::new();
        m.insert(
            "equation".into(),
            json!(format!("{} = {}", render_expr(&self.equation.lhs), render_expr(&self.equation.rhs))),
        );
        m.insert("domain".into(), json!(self.equation.domain.to_string()));
        m.insert("strategy".into(), self.strategy.map_or(JsonValue::Null, |s| json!(s.name())));
        m.insert("solutions".into(), self.solutions.to_json());
        m.insert(
            "enclosures".into(),
            JsonValue::Array(self.solutions.solutions().iter().map(|s| interval(&s.enclosure(precision))).collect()),
        );
        m.insert(
            "rejected".into(),
            JsonValue::Array(
                self.rejected
                    .iter()
                    .map(|(c, why)| json!({"candidate": c.to_json(), "reason": why.to_string()}))
                    .collect(),
            ),
        );
        m.insert(
            "inconclusive".into(),
            JsonValue::Array(
                self.inconclusive
                    .iter()
                    .map(|(c, why)| json!({"candidate": c.to_json(), "reason": why}))
                    .collect(),
            ),
        );
        m.insert("notes".into(), json!(self.notes));
        m.insert("trace".into(), self.trace.to_json());
        JsonValue::Object(m)
    }
}
