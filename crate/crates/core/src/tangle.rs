//! Tangle input, the crossing map `δ`, and the sewing pipeline.
//!
//! Text format, one item per line (`#` starts a comment):
//!
//! ```text
//! X+ a b     positive crossing: a is the over strand, b the under strand
//! X- a b     negative crossing: b is the over strand, a the under strand
//! V a b      virtual crossing
//! sew a b c  concatenate strand a then strand b, calling the result c
//! ```
//!
//! The `X-` argument order follows `δ(X⁻_{ab}) = ρ⁻_{ba}`. The JSON form
//! names the roles explicitly:
//! `{"crossings":[{"sign":"+","over":"a","under":"b"}],"plan":[["a","b","c"]]}`
//! with `"sign"` one of `"+"`, `"-"`, `"v"`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::beta::{Beta, BetaElement, LaurentPoly};
use crate::error::TangleError;
use crate::letter::Letter;
use crate::mma::{MmaElement, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Real(Sign),
    Virtual,
}

/// A crossing between two strands. The tail of the resulting arrow sits on
/// the over strand and its head on the under strand. For virtual crossings
/// the two fields are just the two strand labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub over: Letter,
    pub under: Letter,
}

impl Crossing {
    pub fn positive(over: Letter, under: Letter) -> Crossing {
        Crossing { kind: CrossingKind::Real(Sign::Plus), over, under }
    }

    pub fn negative(over: Letter, under: Letter) -> Crossing {
        Crossing { kind: CrossingKind::Real(Sign::Minus), over, under }
    }

    pub fn virtual_crossing(a: Letter, b: Letter) -> Crossing {
        Crossing { kind: CrossingKind::Virtual, over: a, under: b }
    }

    pub fn labels(&self) -> [Letter; 2] {
        [self.over, self.under]
    }

    fn to_line(self) -> String {
        match self.kind {
            CrossingKind::Real(Sign::Plus) => format!("X+ {} {}", self.over, self.under),
            CrossingKind::Real(Sign::Minus) => format!("X- {} {}", self.under, self.over),
            CrossingKind::Virtual => format!("V {} {}", self.over, self.under),
        }
    }
}

/// One sewing step `dm^{ab}_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sew {
    pub first: Letter,
    pub second: Letter,
    pub result: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    plan: Vec<Sew>,
    open_strands: BTreeSet<Letter>,
}

impl Tangle {
    /// Validates labels and the plan. Isolated strands (labels not on any
    /// crossing) are not supported; use a virtual crossing to introduce them.
    pub fn new(crossings: Vec<Crossing>, plan: Vec<Sew>) -> Result<Tangle, TangleError> {
        Tangle::validate(crossings, plan, &[])
    }

    fn validate(crossings: Vec<Crossing>, plan: Vec<Sew>, lines: &[usize]) -> Result<Tangle, TangleError> {
        let line = |i: usize| lines.get(i).copied().unwrap_or(0);
        let mut alive = BTreeSet::new();
        for (i, c) in crossings.iter().enumerate() {
            for l in c.labels() {
                if !alive.insert(l) {
                    return Err(TangleError::DuplicateLabel { line: line(i), label: l });
                }
            }
        }
        for (j, s) in plan.iter().enumerate() {
            let ln = line(crossings.len() + j);
            for l in [s.first, s.second] {
                if !alive.contains(&l) {
                    return Err(TangleError::DeadLabel { line: ln, label: l });
                }
            }
            if s.first == s.second {
                return Err(TangleError::Syntax { line: ln, msg: format!("cannot sew {} to itself", s.first) });
            }
            alive.remove(&s.first);
            alive.remove(&s.second);
            if !alive.insert(s.result) {
                return Err(TangleError::TargetCollision { line: ln, label: s.result });
            }
        }
        Ok(Tangle { crossings, plan, open_strands: alive })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn plan(&self) -> &[Sew] {
        &self.plan
    }

    /// Strand labels alive after the plan has run.
    pub fn open_strands(&self) -> &BTreeSet<Letter> {
        &self.open_strands
    }

    /// Parses either the text format or, if the input starts with `{`, JSON.
    pub fn parse(input: &str) -> Result<Tangle, TangleError> {
        if input.trim_start().starts_with('{') {
            Tangle::parse_json(input)
        } else {
            Tangle::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Tangle, TangleError> {
        let mut crossings = Vec::new();
        let mut crossing_lines = Vec::new();
        let mut plan = Vec::new();
        let mut plan_lines = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = idx + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = text.split_whitespace().collect();
            let label = |s: &str| Letter::new(s).map_err(|source| TangleError::Label { line, source });
            let arity = |n: usize| {
                if tokens.len() == n + 1 {
                    Ok(())
                } else {
                    Err(TangleError::Syntax {
                        line,
                        msg: format!("{} takes {} labels, got {}", tokens[0], n, tokens.len() - 1),
                    })
                }
            };
            match tokens[0] {
                "X+" | "X-" | "V" => {
                    arity(2)?;
                    if !plan.is_empty() {
                        return Err(TangleError::Syntax { line, msg: "crossings must precede sew steps".into() });
                    }
                    let (a, b) = (label(tokens[1])?, label(tokens[2])?);
                    crossings.push(match tokens[0] {
                        "X+" => Crossing::positive(a, b),
                        "X-" => Crossing::negative(b, a),
                        _ => Crossing::virtual_crossing(a, b),
                    });
                    crossing_lines.push(line);
                }
                "sew" => {
                    arity(3)?;
                    plan.push(Sew { first: label(tokens[1])?, second: label(tokens[2])?, result: label(tokens[3])? });
                    plan_lines.push(line);
                }
                other => {
                    return Err(TangleError::Syntax { line, msg: format!("unknown directive {other:?}") });
                }
            }
        }
        crossing_lines.extend(plan_lines);
        Tangle::validate(crossings, plan, &crossing_lines)
    }

    pub fn parse_json(input: &str) -> Result<Tangle, TangleError> {
        let doc: JsonTangle = serde_json::from_str(input).map_err(|e| TangleError::Json(e.to_string()))?;
        let label = |s: &str| Letter::new(s).map_err(|e| TangleError::Json(format!("{s:?}: {e}")));
        let mut crossings = Vec::new();
        for c in &doc.crossings {
            let (o, u) = (label(&c.over)?, label(&c.under)?);
            crossings.push(match c.sign.as_str() {
                "+" => Crossing::positive(o, u),
                "-" => Crossing::negative(o, u),
                "v" | "V" => Crossing::virtual_crossing(o, u),
                s => return Err(TangleError::Json(format!("unknown crossing sign {s:?}"))),
            });
        }
        let mut plan = Vec::new();
        for [a, b, c] in &doc.plan {
            plan.push(Sew { first: label(a)?, second: label(b)?, result: label(c)? });
        }
        Tangle::new(crossings, plan)
    }

    pub fn to_text(&self) -> String {
        let mut out: Vec<String> = self.crossings.iter().map(|c| c.to_line()).collect();
        out.extend(self.plan.iter().map(|s| format!("sew {} {} {}", s.first, s.second, s.result)));
        out.join("\n") + "\n"
    }

    pub fn to_json(&self) -> String {
        let doc = JsonTangle {
            crossings: self
                .crossings
                .iter()
                .map(|c| JsonCrossing {
                    sign: match c.kind {
                        CrossingKind::Real(Sign::Plus) => "+".into(),
                        CrossingKind::Real(Sign::Minus) => "-".into(),
                        CrossingKind::Virtual => "v".into(),
                    },
                    over: c.over.name(),
                    under: c.under.name(),
                })
                .collect(),
            plan: self.plan.iter().map(|s| [s.first.name(), s.second.name(), s.result.name()]).collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }

    /// Runs the plan in an arbitrary target algebra. Crossings are merged in
    /// lazily, just before a sewing step first touches one of their strands,
    /// which keeps the live alphabet small; crossings never touched by the
    /// plan are merged at the end.
    pub fn evaluate<T: SewTarget>(&self, target: &T) -> Result<T::Element, T::Error> {
        let mut owner: BTreeMap<Letter, usize> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for l in c.labels() {
                owner.insert(l, i);
            }
        }
        let mut merged = vec![false; self.crossings.len()];
        let mut acc = target.empty();
        for s in &self.plan {
            for l in [s.first, s.second] {
                if let Some(&i) = owner.get(&l) {
                    if !merged[i] {
                        merged[i] = true;
                        acc = target.merge(&acc, &target.crossing(&self.crossings[i]))?;
                    }
                }
            }
            acc = target.dm(&acc, s.first, s.second, s.result)?;
        }
        for (i, c) in self.crossings.iter().enumerate() {
            if !merged[i] {
                acc = target.merge(&acc, &target.crossing(c))?;
            }
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonCrossing {
    sign: String,
    over: String,
    under: String,
}

#[derive(Serialize, Deserialize)]
struct JsonTangle {
    crossings: Vec<JsonCrossing>,
    #[serde(default)]
    plan: Vec<[String; 3]>,
}

/// An algebra in which tangles can be evaluated: `δ` on crossings, the
/// disjoint union, and the sewing step `dm`.
pub trait SewTarget {
    type Element;
    type Error;
    fn empty(&self) -> Self::Element;
    fn crossing(&self, c: &Crossing) -> Self::Element;
    fn merge(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, Self::Error>;
    fn dm(&self, e: &Self::Element, a: Letter, b: Letter, c: Letter) -> Result<Self::Element, Self::Error>;
}

/// The free-Lie MMA at a fixed truncation degree.
pub struct Zeta {
    pub degree: usize,
}

impl SewTarget for Zeta {
    type Element = MmaElement;
    type Error = TangleError;

    fn empty(&self) -> MmaElement {
        MmaElement::empty(self.degree)
    }

    fn crossing(&self, c: &Crossing) -> MmaElement {
        delta_crossing(c, self.degree)
    }

    fn merge(&self, a: &MmaElement, b: &MmaElement) -> Result<MmaElement, TangleError> {
        Ok(a.merge(b)?)
    }

    fn dm(&self, e: &MmaElement, a: Letter, b: Letter, c: Letter) -> Result<MmaElement, TangleError> {
        Ok(e.dm(a, b, c)?)
    }
}

/// `ζ(δ(c))`: the arrow from the over strand (tail) to the under strand
/// (head), plus units for the unused tail and head.
pub fn delta_crossing(c: &Crossing, degree: usize) -> MmaElement {
    let (o, u) = (c.over, c.under);
    let parts = match c.kind {
        CrossingKind::Real(sign) => [
            MmaElement::generator(sign, o, u, degree),
            MmaElement::unit_t(u, degree),
            MmaElement::unit_h(o, degree),
        ],
        CrossingKind::Virtual => [
            MmaElement::unit_t(o, degree).merge(&MmaElement::unit_h(o, degree)).expect("disjoint"),
            MmaElement::unit_t(u, degree),
            MmaElement::unit_h(u, degree),
        ],
    };
    parts.iter().fold(MmaElement::empty(degree), |acc, p| acc.merge(p).expect("labels are distinct"))
}

pub fn zeta_of_tangle(t: &Tangle, degree: usize) -> Result<MmaElement, TangleError> {
    t.evaluate(&Zeta { degree })
}

pub fn beta_of_tangle(t: &Tangle) -> Result<BetaElement, TangleError> {
    Ok(t.evaluate(&Beta)?)
}

/// The Alexander polynomial of a long knot, normalized to be symmetric and
/// positive at `t = 1`.
pub fn alexander(t: &Tangle) -> Result<LaurentPoly, TangleError> {
    if t.open_strands().len() != 1 {
        return Err(TangleError::NotAKnot(t.open_strands().len()));
    }
    let b = beta_of_tangle(t)?;
    Ok(LaurentPoly::from_ratfun(b.omega())?.symmetrize()?)
}
