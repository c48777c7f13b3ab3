//! Locally constant potentials `f(x, y) = F(x(0), y(0))` as exact rational
//! matrices indexed by letter pairs. Wider dependence is handled upstream by
//! recoding both shifts, so this module only ever sees radius 0.

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::sft::{Alphabet, RecodingMap};

#[derive(Debug, Clone)]
pub struct Potential {
    x_alphabet: Alphabet,
    y_alphabet: Alphabet,
    values: Vec<Vec<Rat>>, // row-indexed by x-letter, column by y-letter
}

impl Potential {
    pub fn new(x_alphabet: Alphabet, y_alphabet: Alphabet, values: Vec<Vec<Rat>>) -> Result<Self> {
        if values.len() != x_alphabet.len()
            || values.iter().any(|row| row.len() != y_alphabet.len())
        {
            return Err(Error::Schema(
                "potential matrix dimensions do not match the alphabets".into(),
            ));
        }
        Ok(Potential {
            x_alphabet,
            y_alphabet,
            values,
        })
    }

    /// Hamming preset on a shared alphabet: `F(u, v) = 1 - [u = v]`.
    pub fn hamming(alphabet: &Alphabet) -> Self {
        let n = alphabet.len();
        let values = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        if u == v {
                            Rat::zero()
                        } else {
                            Rat::from_integer(1.into())
                        }
                    })
                    .collect()
            })
            .collect();
        Potential {
            x_alphabet: alphabet.clone(),
            y_alphabet: alphabet.clone(),
            values,
        }
    }

    /// Constant potential.
    pub fn constant(x_alphabet: Alphabet, y_alphabet: Alphabet, c: Rat) -> Self {
        let values = vec![vec![c.clone(); y_alphabet.len()]; x_alphabet.len()];
        Potential {
            x_alphabet,
            y_alphabet,
            values,
        }
    }

    pub fn x_alphabet(&self) -> &Alphabet {
        &self.x_alphabet
    }

    pub fn y_alphabet(&self) -> &Alphabet {
        &self.y_alphabet
    }

    /// Matrix entry by letter index.
    pub fn value(&self, x: usize, y: usize) -> &Rat {
        &self.values[x][y]
    }

    /// Matrix entry by letter name.
    pub fn evaluate(&self, x_letter: &str, y_letter: &str) -> Result<Rat> {
        let xi = self
            .x_alphabet
            .index_of(x_letter)
            .ok_or_else(|| Error::UnknownLetter(x_letter.to_string()))?;
        let yi = self
            .y_alphabet
            .index_of(y_letter)
            .ok_or_else(|| Error::UnknownLetter(y_letter.to_string()))?;
        Ok(self.values[xi][yi].clone())
    }

    /// `max |F(u, v)|` over all letter pairs.
    pub fn sup_norm(&self) -> Rat {
        self.values
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .expect("alphabets are nonempty")
    }

    /// Restrict to sub-alphabets selected by name (used after letters are
    /// pruned from a loaded shift).
    pub fn project(&self, x_alphabet: &Alphabet, y_alphabet: &Alphabet) -> Result<Self> {
        let mut values = Vec::with_capacity(x_alphabet.len());
        for xl in x_alphabet.letters() {
            let xi = self
                .x_alphabet
                .index_of(xl)
                .ok_or_else(|| Error::UnknownLetter(xl.clone()))?;
            let mut row = Vec::with_capacity(y_alphabet.len());
            for yl in y_alphabet.letters() {
                let yi = self
                    .y_alphabet
                    .index_of(yl)
                    .ok_or_else(|| Error::UnknownLetter(yl.clone()))?;
                row.push(self.values[xi][yi].clone());
            }
            values.push(row);
        }
        Potential::new(x_alphabet.clone(), y_alphabet.clone(), values)
    }

    /// Lift through block codes: the lifted potential reads the center
    /// letters of the block pair, so it is again radius 0.
    pub fn lift(
        &self,
        x_alphabet: &Alphabet,
        x_map: &RecodingMap,
        y_alphabet: &Alphabet,
        y_map: &RecodingMap,
    ) -> Result<Self> {
        let values = (0..x_alphabet.len())
            .map(|bx| {
                (0..y_alphabet.len())
                    .map(|by| self.values[x_map.center(bx)][y_map.center(by)].clone())
                    .collect()
            })
            .collect();
        Potential::new(x_alphabet.clone(), y_alphabet.clone(), values)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, untagged)]
enum PotentialDoc {
    Preset {
        preset: String,
    },
    Matrix {
        x_letters: Vec<String>,
        y_letters: Vec<String>,
        values: Vec<Vec<serde_json::Value>>,
    },
}

/// Parse a potential document: either an explicit rational matrix
/// `{"x_letters": [...], "y_letters": [...], "values": [["p/q", ...], ...]}`
/// (values as rational strings or JSON integers; floats are rejected), or a
/// preset `{"preset": "hamming"}` instantiated on the supplied alphabet.
pub fn load_potential(json: &str, preset_alphabet: Option<&Alphabet>) -> Result<Potential> {
    let doc: PotentialDoc = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    match doc {
        PotentialDoc::Preset { preset } => match preset.as_str() {
            "hamming" => {
                let alphabet = preset_alphabet.ok_or_else(|| {
                    Error::Schema("preset potential needs a shift alphabet".into())
                })?;
                Ok(Potential::hamming(alphabet))
            }
            other => Err(Error::Schema(format!("unknown preset {other:?}"))),
        },
        PotentialDoc::Matrix {
            x_letters,
            y_letters,
            values,
        } => {
            let xa = Alphabet::new(x_letters)?;
            let ya = Alphabet::new(y_letters)?;
            let mut rows = Vec::with_capacity(values.len());
            for row in values {
                let mut r = Vec::with_capacity(row.len());
                for v in row {
                    r.push(json_rat(&v)?);
                }
                rows.push(r);
            }
            Potential::new(xa, ya, rows)
        }
    }
}

fn json_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(Error::Schema(format!(
                "non-integer numeric value {n}; write rationals as strings"
            ))),
        },
        other => Err(Error::Schema(format!("bad rational value {other}"))),
    }
}

/// Serialize a potential back to the document form with exact strings.
pub fn potential_document(p: &Potential) -> serde_json::Value {
    serde_json::json!({
        "x_letters": p.x_alphabet().letters(),
        "y_letters": p.y_alphabet().letters(),
        "values": p
            .values
            .iter()
            .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn ab() -> Alphabet {
        Alphabet::new(vec!["0".into(), "1".into()]).unwrap()
    }

    #[test]
    fn hamming_matrix() {
        let p = Potential::hamming(&ab());
        assert_eq!(p.evaluate("0", "0").unwrap(), rat_i(0));
        assert_eq!(p.evaluate("0", "1").unwrap(), rat_i(1));
        assert_eq!(p.evaluate("1", "0").unwrap(), rat_i(1));
        assert_eq!(p.sup_norm(), rat_i(1));
    }

    #[test]
    fn hamming_singleton_and_three_letters() {
        let one = Alphabet::new(vec!["a".into()]).unwrap();
        assert_eq!(Potential::hamming(&one).sup_norm(), rat_i(0));
        let three = Alphabet::new(vec!["0".into(), "1".into(), "2".into()]).unwrap();
        let p = Potential::hamming(&three);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(*p.value(u, v), rat_i(if u == v { 0 } else { 1 }));
            }
        }
    }

    #[test]
    fn constant_potential() {
        let p = Potential::constant(ab(), ab(), rat_i(-3));
        assert_eq!(p.evaluate("1", "0").unwrap(), rat_i(-3));
        assert_eq!(p.sup_norm(), rat_i(3));
    }

    #[test]
    fn sup_norm_dominates_entries() {
        let p = load_potential(
            r#"{"x_letters":["a","b"],"y_letters":["c","d"],
                "values":[["1/2","-2"],["0","7/3"]]}"#,
            None,
        )
        .unwrap();
        let norm = p.sup_norm();
        for u in 0..2 {
            for v in 0..2 {
                assert!(p.value(u, v).abs() <= norm);
            }
        }
        assert_eq!(norm, crate::rat::rat(7, 3));
    }

    #[test]
    fn unknown_letter_rejected() {
        let p = Potential::hamming(&ab());
        assert!(matches!(p.evaluate("0", "2"), Err(Error::UnknownLetter(_))));
    }

    #[test]
    fn float_values_rejected() {
        let err = load_potential(
            r#"{"x_letters":["a"],"y_letters":["b"],"values":[[0.5]]}"#,
            None,
        );
        assert!(err.is_err());
    }

    #[test]
    fn document_round_trip() {
        let p = load_potential(
            r#"{"x_letters":["a"],"y_letters":["b","c"],"values":[["-1/2",3]]}"#,
            None,
        )
        .unwrap();
        let doc = potential_document(&p);
        assert_eq!(doc["values"][0][0], "-1/2");
        assert_eq!(doc["values"][0][1], "3");
    }
}
