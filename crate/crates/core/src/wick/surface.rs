use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

use super::uf::Uf;
use super::{merge_kind, DecoratedPairing, Layout, Options, HARD_MAX_LENGTH};

/// One connected component of a glued surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    /// Indices of the faces (words) in this component, increasing.
    pub faces: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub face_count: usize,
    pub euler: i64,
    pub orientable: bool,
    /// Orientable genus, or the number of cross-caps if non-orientable.
    pub genus: u64,
}

impl SurfaceComponent {
    pub fn is_sphere(&self) -> bool {
        self.euler == 2
    }

    pub fn is_projective_plane(&self) -> bool {
        self.euler == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedSurface {
    /// Components ordered by their smallest face index.
    pub components: Vec<SurfaceComponent>,
    /// Total number of vertices (slot classes).
    pub vertices: usize,
    /// Total number of letters over all faces.
    pub total_length: usize,
}

impl GluedSurface {
    /// `V - m/2`, the power of `N` carried by the pairing.
    pub fn exponent(&self) -> i64 {
        self.vertices as i64 - self.total_length as i64 / 2
    }

    /// `2c - k - 2 g_o - g_no`, the same power read off the topology.
    pub fn topological_exponent(&self) -> i64 {
        let k: usize = self.components.iter().map(|c| c.face_count).sum();
        let mut e = 2 * self.components.len() as i64 - k as i64;
        for c in &self.components {
            e -= if c.orientable {
                2 * c.genus as i64
            } else {
                c.genus as i64
            };
        }
        e
    }

    pub fn is_sphere(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_sphere()
    }
}

/// Glues the faces along `pairing` and classifies the resulting surface.
pub fn glue(words: &[Word], pairing: &DecoratedPairing) -> Result<GluedSurface> {
    let lay = Layout::new(
        words,
        &Options {
            max_length: HARD_MAX_LENGTH,
        },
    )?;
    let pairs = resolve(&lay, pairing)?;
    Ok(glue_indices(&lay, &pairs))
}

/// Translates and validates a pairing against the layout.
pub(crate) fn resolve(
    lay: &Layout,
    pairing: &DecoratedPairing,
) -> Result<Vec<(usize, usize, Option<bool>)>> {
    let m = lay.len();
    let mut seen = vec![false; m];
    let mut out = Vec::with_capacity(pairing.pairs.len());
    for p in &pairing.pairs {
        let (a, b) = (lay.edge_index(p.a)?, lay.edge_index(p.b)?);
        for e in [a, b] {
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidPairing(format!(
                    "edge {:?} is paired twice",
                    lay.edge_id(e)
                )));
            }
        }
        let (la, lb) = (lay.letters[a], lay.letters[b]);
        if merge_kind(la, lb, false).is_none() {
            return Err(Error::InvalidPairing(format!(
                "letters {la} and {lb} have zero covariance"
            )));
        }
        if lay.is_goe(a) != p.twist.is_some() {
            return Err(Error::InvalidPairing(
                "a twist is required exactly for GOE pairs".into(),
            ));
        }
        out.push((a, b, p.twist));
    }
    if let Some(e) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPairing(format!(
            "edge {:?} is unpaired",
            lay.edge_id(e)
        )));
    }
    Ok(out)
}

/// Class label of every slot after gluing, numbered by first appearance.
pub(crate) fn slot_classes(lay: &Layout, pairs: &[(usize, usize, Option<bool>)]) -> Vec<usize> {
    let m = lay.len();
    let mut uf = Uf::new(m);
    for &(a, b, t) in pairs {
        for (s, u) in lay.merges(a, b, t) {
            uf.union(s, u);
        }
    }
    let mut label = vec![usize::MAX; m];
    let mut next = 0;
    (0..m)
        .map(|s| {
            let r = uf.find(s);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

pub(crate) fn glue_indices(lay: &Layout, pairs: &[(usize, usize, Option<bool>)]) -> GluedSurface {
    let m = lay.len();
    let k = lay.faces();
    let classes = slot_classes(lay, pairs);
    let vertices = classes.iter().max().map_or(0, |&c| c + 1);

    let mut faces = Uf::new(k);
    for &(a, b, _) in pairs {
        faces.union(lay.face_of[a], lay.face_of[b]);
    }
    let roots: Vec<usize> = (0..k).map(|f| faces.find(f)).collect();

    // Orientation: sign[fa] == sign[fb] exactly when the pair is glued in
    // opposite directions.
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); k];
    for &(a, b, t) in pairs {
        let same_sign = lay.opposite(a, b, t);
        let (fa, fb) = (lay.face_of[a], lay.face_of[b]);
        adj[fa].push((fb, same_sign));
        if fa != fb {
            adj[fb].push((fa, same_sign));
        }
    }
    let mut sign: Vec<Option<bool>> = vec![None; k];
    let mut bad_root = vec![false; k];
    for start in 0..k {
        if sign[start].is_some() {
            continue;
        }
        sign[start] = Some(true);
        let mut queue = vec![start];
        while let Some(f) = queue.pop() {
            let s = sign[f].unwrap();
            for &(g, same) in &adj[f] {
                let want = if same { s } else { !s };
                match sign[g] {
                    None => {
                        sign[g] = Some(want);
                        queue.push(g);
                    }
                    Some(x) if x != want => bad_root[roots[start]] = true,
                    _ => {}
                }
            }
        }
    }

    let mut components = Vec::new();
    let mut comp_index = vec![usize::MAX; k];
    for f in 0..k {
        let r = roots[f];
        if comp_index[r] == usize::MAX {
            comp_index[r] = components.len();
            components.push(SurfaceComponent {
                faces: Vec::new(),
                vertices: 0,
                edges: 0,
                face_count: 0,
                euler: 0,
                orientable: !bad_root[r],
                genus: 0,
            });
        }
        let c = &mut components[comp_index[r]];
        c.faces.push(f);
        c.face_count += 1;
        c.edges += lay.face_start[f + 1] - lay.face_start[f];
    }
    let mut seen_class = vec![false; vertices];
    for s in 0..m {
        if !std::mem::replace(&mut seen_class[classes[s]], true) {
            components[comp_index[roots[lay.face_of[s]]]].vertices += 1;
        }
    }
    for c in &mut components {
        c.edges /= 2;
        c.euler = c.vertices as i64 - c.edges as i64 + c.face_count as i64;
        c.genus = if c.orientable {
            debug_assert!(c.euler % 2 == 0 && c.euler <= 2);
            ((2 - c.euler) / 2) as u64
        } else {
            debug_assert!(c.euler <= 1);
            (2 - c.euler) as u64
        };
    }
    GluedSurface {
        components,
        vertices,
        total_length: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wick::enumerate_pairings;

    fn single(list: &[&str]) -> GluedSurface {
        let ws: Vec<Word> = list.iter().map(|s| Word::parse(s).unwrap()).collect();
        let mut it = enumerate_pairings(&ws).unwrap();
        let p = it.next().unwrap();
        assert!(it.next().is_none(), "expected a unique pairing");
        glue(&ws, &p).unwrap()
    }

    #[test]
    fn sphere() {
        let s = single(&["G1 G1*"]);
        let c = &s.components[0];
        assert_eq!((c.vertices, c.edges, c.face_count, c.euler), (2, 1, 1, 2));
        assert!(c.orientable);
        assert_eq!(c.genus, 0);
    }

    #[test]
    fn projective_plane() {
        let s = single(&["G1 G2 G1~ G2~"]);
        let c = &s.components[0];
        assert_eq!(c.euler, 1);
        assert!(!c.orientable);
        assert_eq!(c.genus, 1);
        assert_eq!(s.exponent(), 0);
    }

    #[test]
    fn klein_bottle() {
        let s = single(&["G1 G2 G1* G2~"]);
        let c = &s.components[0];
        assert_eq!(c.euler, 0);
        assert!(!c.orientable);
        assert_eq!(c.genus, 2);
        assert_eq!(s.exponent(), -1);
    }

    #[test]
    fn torus() {
        let s = single(&["G1 G2 G1* G2*"]);
        let c = &s.components[0];
        assert_eq!(c.euler, 0);
        assert!(c.orientable);
        assert_eq!(c.genus, 1);
    }

    #[test]
    fn two_faces() {
        let s = single(&["G1", "G1*"]);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].euler, 2);
        assert_eq!(s.exponent(), 0);
        assert_eq!(s.topological_exponent(), 0);
    }

    #[test]
    fn invalid_pairings_are_rejected() {
        use crate::wick::{EdgeId, Pair};
        let ws = vec![Word::parse("G1 G1").unwrap()];
        let p = DecoratedPairing {
            pairs: vec![Pair {
                a: EdgeId { face: 0, position: 1 },
                b: EdgeId { face: 0, position: 2 },
                twist: None,
            }],
        };
        assert!(matches!(glue(&ws, &p), Err(Error::InvalidPairing(_))));
        let ws = vec![Word::parse("G1 G1*").unwrap()];
        let p = DecoratedPairing { pairs: vec![] };
        assert!(matches!(glue(&ws, &p), Err(Error::InvalidPairing(_))));
    }
}
