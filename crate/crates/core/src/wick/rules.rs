use crate::error::{Error, Result};
use crate::word::Word;

use super::surface::resolve;
use super::{DecoratedPairing, Layout, Options, HARD_MAX_LENGTH};

/// Decides whether a pairing of one or two complex Ginibre faces glues into
/// a sphere using only the combinatorial rules on chords: no two internal
/// chords cross, the external chords keep a compatible cyclic order, and no
/// internal chord separates external edges.
///
/// Faces are first brought to a common orientation. A face paired with itself
/// must glue every pair in opposite directions; with two faces, the external
/// pairs must either all run opposite (keep orientation) or all run in the
/// same direction (reverse the second face).
pub fn spherical_rule_check(words: &[Word], pairing: &DecoratedPairing) -> Result<bool> {
    if words.is_empty() || words.len() > 2 {
        return Err(Error::UnsupportedConfiguration(format!(
            "rule check needs one or two faces, got {}",
            words.len()
        )));
    }
    if !words.iter().all(Word::is_complex_ginibre) {
        return Err(Error::UnsupportedConfiguration(
            "rule check is defined for complex Ginibre letters only".into(),
        ));
    }
    let lay = Layout::new(
        words,
        &Options {
            max_length: HARD_MAX_LENGTH,
        },
    )?;
    let pairs = resolve(&lay, pairing)?;

    let mut internal_ok = true;
    let mut ext_opposite = 0;
    let mut ext_same = 0;
    for &(a, b, t) in &pairs {
        let opp = lay.opposite(a, b, t);
        if lay.face_of[a] == lay.face_of[b] {
            internal_ok &= opp;
        } else if opp {
            ext_opposite += 1;
        } else {
            ext_same += 1;
        }
    }
    if !internal_ok || (ext_opposite > 0 && ext_same > 0) {
        return Ok(false);
    }
    let two = words.len() == 2;
    if two && ext_opposite + ext_same == 0 {
        return Ok(false);
    }
    let mirror = ext_same > 0;

    // Position of every edge within its face, after orienting the faces.
    let pos = |e: usize| -> usize {
        let f = lay.face_of[e];
        let j = e - lay.face_start[f];
        if f == 1 && mirror {
            words[1].len() - 1 - j
        } else {
            j
        }
    };

    let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); words.len()];
    let mut external: Vec<Vec<usize>> = vec![Vec::new(); words.len()];
    let mut links: Vec<(usize, usize)> = Vec::new();
    for &(a, b, _) in &pairs {
        let (fa, fb) = (lay.face_of[a], lay.face_of[b]);
        let (pa, pb) = (pos(a), pos(b));
        if fa == fb {
            chords[fa].push((pa.min(pb), pa.max(pb)));
        } else {
            let (p0, p1) = if fa == 0 { (pa, pb) } else { (pb, pa) };
            external[0].push(p0);
            external[1].push(p1);
            links.push((p0, p1));
        }
    }

    for (f, cs) in chords.iter().enumerate() {
        for (i, &(p, q)) in cs.iter().enumerate() {
            for &(r, s) in &cs[i + 1..] {
                if (p < r && r < q && q < s) || (r < p && p < s && s < q) {
                    return Ok(false);
                }
            }
            let inside = external[f].iter().any(|&x| p < x && x < q);
            let outside = external[f].iter().any(|&x| x < p || x > q);
            if inside && outside {
                return Ok(false);
            }
        }
    }

    // Reading the first face in order, the partners on the second face must
    // run backwards around it: at most one cyclic ascent.
    links.sort_unstable();
    let t = links.len();
    let ascents = (0..t)
        .filter(|&i| links[i].1 < links[(i + 1) % t].1)
        .count();
    Ok(ascents <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wick::{enumerate_pairings, EdgeId, Pair};

    fn edge(face: usize, position: usize) -> EdgeId {
        EdgeId { face, position }
    }

    fn pairing(list: &[((usize, usize), (usize, usize))]) -> DecoratedPairing {
        DecoratedPairing {
            pairs: list
                .iter()
                .map(|&(a, b)| Pair {
                    a: edge(a.0, a.1),
                    b: edge(b.0, b.1),
                    twist: None,
                })
                .collect(),
        }
    }

    #[test]
    fn single_face_examples() {
        let w = vec![Word::parse("G1 G1*").unwrap()];
        let p = enumerate_pairings(&w).unwrap().next().unwrap();
        assert!(spherical_rule_check(&w, &p).unwrap());

        let w = vec![Word::parse("G1 G1 G1* G1*").unwrap()];
        let nested = pairing(&[((0, 1), (0, 4)), ((0, 2), (0, 3))]);
        let crossing = pairing(&[((0, 1), (0, 3)), ((0, 2), (0, 4))]);
        assert!(spherical_rule_check(&w, &nested).unwrap());
        assert!(!spherical_rule_check(&w, &crossing).unwrap());
    }

    #[test]
    fn bridge_is_rejected() {
        // The G1 chord of the first face has the externally paired G2 on one
        // side and G3 on the other.
        let w = vec![
            Word::parse("G1 G2 G1* G3").unwrap(),
            Word::parse("G3* G2*").unwrap(),
        ];
        let p = pairing(&[((0, 1), (0, 3)), ((0, 2), (1, 2)), ((0, 4), (1, 1))]);
        assert!(!spherical_rule_check(&w, &p).unwrap());
    }

    #[test]
    fn unsupported_inputs() {
        let w = vec![Word::parse("S1 S1").unwrap()];
        let p = enumerate_pairings(&w).unwrap().next().unwrap();
        assert!(matches!(
            spherical_rule_check(&w, &p),
            Err(Error::UnsupportedConfiguration(_))
        ));
        let w = vec![Word::parse("G1").unwrap(); 3];
        assert!(matches!(
            spherical_rule_check(&w, &DecoratedPairing { pairs: vec![] }),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }
}
