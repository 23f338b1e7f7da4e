//! JSON text form of decorated pairings.
//!
//! A pairing is a list of pairs `[[face, pos], [face, pos]]`, with a third
//! element `true`/`false` carrying the twist of GOE pairs:
//!
//! ```text
//! [[[0,1],[0,2],false],[[0,3],[1,1]]]
//! ```

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::{DecoratedPairing, EdgeId, Pair};

pub fn pairing_to_json(p: &DecoratedPairing) -> Value {
    Value::Array(
        p.pairs
            .iter()
            .map(|q| {
                let mut v = vec![
                    json!([q.a.face, q.a.position]),
                    json!([q.b.face, q.b.position]),
                ];
                if let Some(t) = q.twist {
                    v.push(Value::Bool(t));
                }
                Value::Array(v)
            })
            .collect(),
    )
}

fn bad(msg: &str) -> Error {
    Error::InvalidPairing(format!("malformed pairing JSON: {msg}"))
}

fn edge(v: &Value) -> Result<EdgeId> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("edge"))?;
    let num = |x: &Value| x.as_u64().map(|n| n as usize).ok_or_else(|| bad("index"));
    Ok(EdgeId {
        face: num(&arr[0])?,
        position: num(&arr[1])?,
    })
}

pub fn pairing_from_json(v: &Value) -> Result<DecoratedPairing> {
    let list = v.as_array().ok_or_else(|| bad("expected a list"))?;
    let mut pairs = Vec::with_capacity(list.len());
    for item in list {
        let arr = item
            .as_array()
            .filter(|a| a.len() == 2 || a.len() == 3)
            .ok_or_else(|| bad("pair"))?;
        let twist = match arr.get(2) {
            None => None,
            Some(t) => Some(t.as_bool().ok_or_else(|| bad("twist"))?),
        };
        pairs.push(Pair {
            a: edge(&arr[0])?,
            b: edge(&arr[1])?,
            twist,
        });
    }
    Ok(DecoratedPairing { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wick::enumerate_pairings;
    use crate::word::Word;

    #[test]
    fn round_trip() {
        let ws = vec![Word::parse("S1 G1 S1 G1*").unwrap()];
        for p in enumerate_pairings(&ws).unwrap() {
            let v = pairing_to_json(&p);
            assert_eq!(pairing_from_json(&v).unwrap(), p);
        }
        let first = enumerate_pairings(&ws).unwrap().next().unwrap();
        assert_eq!(
            pairing_to_json(&first).to_string(),
            "[[[0,1],[0,3],false],[[0,2],[0,4]]]"
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(pairing_from_json(&json!({"a": 1})).is_err());
        assert!(pairing_from_json(&json!([[[0, 1]]])).is_err());
    }
}
