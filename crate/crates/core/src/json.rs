//! JSON forms of `M` and β elements. Coefficients are exact fraction
//! strings `"p/q"`, words are arrays of letter names, and rational
//! functions use the same text syntax as their `Display`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::beta::{BetaElement, RatFun};
use crate::error::{JsonError, SeriesError};
use crate::freealg::{CyclicSeries, Word};
use crate::freelie::LieSeries;
use crate::letter::Letter;
use crate::mma::MmaElement;
use crate::rational::Rational;

type Terms = Vec<(String, Vec<String>)>;

#[derive(Serialize, Deserialize)]
struct MmaJson {
    degree: usize,
    tails: Vec<String>,
    lambda: BTreeMap<String, Terms>,
    omega: Terms,
}

#[derive(Serialize, Deserialize)]
struct BetaJson {
    tails: Vec<String>,
    heads: Vec<String>,
    omega: String,
    #[serde(rename = "A")]
    a: BTreeMap<String, BTreeMap<String, String>>,
}

fn terms_to_json<'a>(terms: impl Iterator<Item = (Word, &'a Rational)>) -> Terms {
    terms.map(|(w, c)| (c.to_string(), w.iter().map(|l| l.name()).collect())).collect()
}

fn terms_from_json(terms: &Terms) -> Result<Vec<(Word, Rational)>, JsonError> {
    terms
        .iter()
        .map(|(c, w)| {
            let c: Rational = c.parse().map_err(|_| JsonError::Coefficient(c.clone()))?;
            let w = w.iter().map(|l| Letter::new(l)).collect::<Result<Word, _>>()?;
            Ok((w, c))
        })
        .collect()
}

fn label_set(names: &[String]) -> Result<BTreeSet<Letter>, JsonError> {
    Ok(names.iter().map(|l| Letter::new(l)).collect::<Result<_, _>>()?)
}

pub fn mma_to_value(e: &MmaElement) -> serde_json::Value {
    let j = MmaJson {
        degree: e.degree(),
        tails: e.tails().iter().map(|t| t.name()).collect(),
        lambda: e
            .lambda()
            .iter()
            .map(|(x, s)| (x.name(), terms_to_json(s.sorted_terms().iter().map(|(w, c)| (w.clone(), c)))))
            .collect(),
        omega: terms_to_json(e.omega().sorted_terms().iter().map(|(w, c)| (w.clone(), c))),
    };
    serde_json::to_value(j).expect("plain data")
}

pub fn mma_to_json(e: &MmaElement) -> String {
    serde_json::to_string_pretty(&mma_to_value(e)).expect("plain data")
}

pub fn mma_from_json(s: &str) -> Result<MmaElement, JsonError> {
    let j: MmaJson = serde_json::from_str(s).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let d = j.degree;
    let mut lambda = BTreeMap::new();
    for (x, terms) in &j.lambda {
        let terms = terms_from_json(terms)?;
        let series = LieSeries::from_terms(d, terms).map_err(|e| match e {
            SeriesError::NotLie(w) => JsonError::NotLyndon(w),
            other => JsonError::Mma(other.into()),
        })?;
        lambda.insert(Letter::new(x)?, series);
    }
    let omega = CyclicSeries::from_terms(d, terms_from_json(&j.omega)?);
    Ok(MmaElement::new(d, label_set(&j.tails)?, lambda, omega)?)
}

pub fn beta_to_value(e: &BetaElement) -> serde_json::Value {
    let mut a: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for ((u, x), v) in e.entries() {
        a.entry(u.name()).or_default().insert(x.name(), v.to_string());
    }
    let j = BetaJson {
        tails: e.tails().iter().map(|t| t.name()).collect(),
        heads: e.heads().iter().map(|t| t.name()).collect(),
        omega: e.omega().to_string(),
        a,
    };
    serde_json::to_value(j).expect("plain data")
}

pub fn beta_to_json(e: &BetaElement) -> String {
    serde_json::to_string_pretty(&beta_to_value(e)).expect("plain data")
}

pub fn beta_from_json(s: &str) -> Result<BetaElement, JsonError> {
    let j: BetaJson = serde_json::from_str(s).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let mut entries = BTreeMap::new();
    for (u, row) in &j.a {
        for (x, v) in row {
            entries.insert((Letter::new(u)?, Letter::new(x)?), RatFun::parse(v)?);
        }
    }
    Ok(BetaElement::new(label_set(&j.tails)?, label_set(&j.heads)?, RatFun::parse(&j.omega)?, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;
    use crate::random::Sampler;
    use proptest::prelude::*;

    #[test]
    fn schema() {
        let e = MmaElement::generator(crate::mma::Sign::Minus, letter("u"), letter("x"), 3);
        let v = mma_to_value(&e);
        assert_eq!(v["degree"], 3);
        assert_eq!(v["tails"], serde_json::json!(["u"]));
        assert_eq!(v["lambda"]["x"], serde_json::json!([["-1", ["u"]]]));
        assert_eq!(v["omega"], serde_json::json!([]));
    }

    #[test]
    fn multi_character_labels_survive() {
        let e = Sampler::new(5).mma(&[letter("r1"), letter("r2")], &[letter("h10")], 4);
        assert_eq!(mma_from_json(&mma_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = r#"{"degree": 2, "tails": ["u","v"], "lambda": {"x": [["1", ["v","u"]]]}, "omega": []}"#;
        assert!(matches!(mma_from_json(bad), Err(JsonError::NotLyndon(_))));
        let foreign = r#"{"degree": 2, "tails": ["u"], "lambda": {"x": [["1", ["v"]]]}, "omega": []}"#;
        assert!(matches!(mma_from_json(foreign), Err(JsonError::Mma(_))));
        let coeff = r#"{"degree": 2, "tails": ["u"], "lambda": {"x": [["1/0", ["u"]]]}, "omega": []}"#;
        assert!(matches!(mma_from_json(coeff), Err(JsonError::Coefficient(_))));
        assert!(matches!(mma_from_json("{"), Err(JsonError::Syntax(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn mma_round_trip(seed in any::<u64>(), d in 1usize..=5) {
            let e = Sampler::new(seed).mma(&[letter("u"), letter("v"), letter("w")], &[letter("x"), letter("y")], d);
            prop_assert_eq!(mma_from_json(&mma_to_json(&e)).unwrap(), e);
        }

        #[test]
        fn beta_round_trip(seed in any::<u64>()) {
            let e = Sampler::new(seed).beta(&[letter("u"), letter("v")], &[letter("x"), letter("y")]);
            let back = beta_from_json(&beta_to_json(&e)).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.entries().len(), e.entries().len());
        }
    }
}
