//! Checkerboard spanning surfaces: Goeritz forms, boundary orientation and Seifert matrices.

use crate::algebra::signature_i64;
use crate::error::{Error, Result};

use super::diagram::{Diagram, Port};

/// Sign relating the Goeritz form of an oriented surface to `V + V^T`; fixed by the positive trefoil having signature -2.
pub const GOERITZ_SIGN: i64 = -1;

/// Strand directions: `out[c][k]` is true when the strand leaves crossing `c` through port `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub out: Vec<[bool; 4]>,
}

impl Orientation {
    /// Orientation of each component from its traversal order in `Diagram::components`.
    pub fn from_traversal(d: &Diagram) -> Self {
        let mut out = vec![[false; 4]; d.crossings()];
        for comp in d.components() {
            for p in comp {
                out[p.c][p.k] = true;
            }
        }
        Orientation { out }
    }

    fn is_out(&self, p: Port) -> bool {
        self.out[p.c][p.k]
    }
}

/// The corner (0 or 1) of crossing `c` at which the faces of colour `x` start.
fn x_corner(d: &Diagram, x: u8, c: usize) -> usize {
    if d.colour[d.face[c][0]] == x {
        0
    } else {
        1
    }
}

/// Incidence number: +1 when colour `x` fills corners 0 and 2.
pub fn eta(d: &Diagram, x: u8, c: usize) -> i64 {
    if x_corner(d, x, c) == 0 {
        1
    } else {
        -1
    }
}

/// Faces of colour `1 - x`, which index the Goeritz form of the `x` surface; the one meeting most crossings is dropped.
fn dual_faces(d: &Diagram, x: u8) -> Vec<Option<usize>> {
    let mut degree = vec![0usize; d.num_faces];
    for corners in &d.face {
        for &f in corners {
            degree[f] += 1;
        }
    }
    let dropped = (0..d.num_faces)
        .filter(|&f| d.colour[f] != x)
        .max_by_key(|&f| (degree[f], std::cmp::Reverse(f)));
    let mut idx = vec![None; d.num_faces];
    let mut n = 0;
    for f in 0..d.num_faces {
        if d.colour[f] != x && Some(f) != dropped {
            idx[f] = Some(n);
            n += 1;
        }
    }
    idx
}

/// The reduced Goeritz matrix of the checkerboard surface of colour `x`.
pub fn goeritz(d: &Diagram, x: u8) -> Vec<Vec<i64>> {
    let mut full = vec![vec![0i64; d.num_faces]; d.num_faces];
    for c in 0..d.crossings() {
        let k = x_corner(d, x, c);
        let (y1, y2) = (d.face[c][k + 1], d.face[c][(k + 3) % 4]);
        if y1 != y2 {
            let h = eta(d, x, c);
            full[y1][y2] -= h;
            full[y2][y1] -= h;
        }
    }
    for f in 0..d.num_faces {
        full[f][f] = -(0..d.num_faces)
            .filter(|&g| g != f)
            .map(|g| full[f][g])
            .sum::<i64>();
    }
    let idx = dual_faces(d, x);
    let keep: Vec<usize> = (0..d.num_faces).filter(|&f| idx[f].is_some()).collect();
    keep.iter()
        .map(|&f| keep.iter().map(|&g| full[f][g]).collect())
        .collect()
}

/// Correction term: the sum of incidence numbers over crossings where the `x` corners see both strands entering or both leaving.
pub fn correction(d: &Diagram, x: u8, o: &Orientation) -> i64 {
    (0..d.crossings())
        .filter(|&c| {
            let k = x_corner(d, x, c);
            o.is_out(Port { c, k }) == o.is_out(Port { c, k: k + 1 })
        })
        .map(|c| eta(d, x, c))
        .sum()
}

/// Signature from the Goeritz form of the `x` surface and its correction term.
pub fn goeritz_signature(d: &Diagram, x: u8, o: &Orientation) -> i64 {
    GOERITZ_SIGN * (signature_i64(&goeritz(d, x)) - correction(d, x, o))
}

/// `+-1` on the faces of colour `x` when the surface is orientable; faces joined by a band get opposite signs.
pub fn face_orientation(d: &Diagram, x: u8) -> Option<Vec<i64>> {
    let mut eps = vec![0i64; d.num_faces];
    let first = (0..d.num_faces).find(|&f| d.colour[f] == x)?;
    eps[first] = 1;
    let mut changed = true;
    while changed {
        changed = false;
        for c in 0..d.crossings() {
            let k = x_corner(d, x, c);
            let (f, g) = (d.face[c][k], d.face[c][k + 2]);
            if f == g {
                return None;
            }
            for (a, b) in [(f, g), (g, f)] {
                if eps[a] != 0 {
                    if eps[b] == 0 {
                        eps[b] = -eps[a];
                        changed = true;
                    } else if eps[b] == eps[a] {
                        return None;
                    }
                }
            }
        }
    }
    if (0..d.num_faces).any(|f| d.colour[f] == x && eps[f] == 0) {
        return None;
    }
    Some(eps)
}

pub fn is_orientable(d: &Diagram, x: u8) -> bool {
    face_orientation(d, x).is_some()
}

/// The boundary orientation of the orientable surface of colour `x`: its faces lie to the left where `eps = +1`.
pub fn boundary_orientation(d: &Diagram, x: u8) -> Result<Orientation> {
    let eps =
        face_orientation(d, x).ok_or_else(|| Error::Diagram("surface is not orientable".into()))?;
    let n = d.crossings();
    let mut out = vec![[false; 4]; n];
    for c in 0..n {
        for k in 0..4 {
            let left = d.face[c][k];
            let right = d.face[c][(k + 3) % 4];
            out[c][k] = if d.colour[left] == x {
                eps[left] == 1
            } else {
                eps[right] == -1
            };
        }
    }
    for c in 0..n {
        for k in 0..4 {
            let p = d.partner[c][k];
            if out[c][k] == out[p.c][p.k] || out[c][k] == out[c][(k + 2) % 4] {
                return Err(Error::Diagram(
                    "boundary orientation is inconsistent".into(),
                ));
            }
        }
    }
    Ok(Orientation { out })
}

/// A Seifert matrix of the oriented surface of colour `x`, on the loops around the other faces.
pub fn seifert_form(d: &Diagram, x: u8) -> Result<Vec<Vec<i64>>> {
    let eps =
        face_orientation(d, x).ok_or_else(|| Error::Diagram("surface is not orientable".into()))?;
    let g = goeritz(d, x);
    let idx = dual_faces(d, x);
    let a = g.len();
    let mut j = vec![vec![0i64; a]; a];
    for c in 0..d.crossings() {
        let k = x_corner(d, x, c);
        let (x1, y1, y2) = (d.face[c][k], d.face[c][k + 1], d.face[c][(k + 3) % 4]);
        if let (Some(i1), Some(i2)) = (idx[y1], idx[y2]) {
            j[i1][i2] += eps[x1];
            j[i2][i1] -= eps[x1];
        }
    }
    let mut theta = vec![vec![0i64; a]; a];
    for r in 0..a {
        for s in 0..a {
            let v = GOERITZ_SIGN * g[r][s] + j[r][s];
            if v % 2 != 0 {
                return Err(Error::Diagram("Seifert form is not integral".into()));
            }
            theta[r][s] = v / 2;
        }
    }
    Ok(theta)
}
