//! Planar diagrams assembled from rational tangles, with faces and checkerboard colouring.
//!
//! A crossing has four ports numbered counterclockwise; ports 0 and 2 are the
//! under-strand. Corner `k` of a crossing is the sector between ports `k` and `k+1`.

use crate::error::{Error, Result};

/// Crossing types of a twist box. `A` adds a positive twist, `B` a negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// Ports `[NE, NW, SW, SE]`; the `NW`-`SE` strand is over.
    A,
    /// Ports `[NW, SW, SE, NE]`; the `NE`-`SW` strand is over.
    B,
}

impl CrossingKind {
    /// Port numbers of the compass directions `[NW, NE, SW, SE]`.
    fn ports(self) -> [usize; 4] {
        match self {
            CrossingKind::A => [1, 0, 2, 3],
            CrossingKind::B => [0, 3, 1, 2],
        }
    }

    fn mirror(self) -> Self {
        match self {
            CrossingKind::A => CrossingKind::B,
            CrossingKind::B => CrossingKind::A,
        }
    }
}

/// A port: crossing index and position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub c: usize,
    pub k: usize,
}

impl Port {
    fn shift(self, d: usize) -> Port {
        Port {
            c: self.c,
            k: (self.k + d) % 4,
        }
    }
}

/// A closed planar diagram with face structure and a checkerboard colouring.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub kinds: Vec<CrossingKind>,
    /// `partner[c][k]` is the port at the other end of the edge leaving `(c,k)`.
    pub partner: Vec<[Port; 4]>,
    /// Face id of each corner.
    pub face: Vec<[usize; 4]>,
    pub num_faces: usize,
    /// Colour (0 or 1) of each face; adjacent corners differ.
    pub colour: Vec<u8>,
    /// A corner lying in the faces between the tangles.
    pub middle: Option<Port>,
}

#[derive(Debug, Clone, Copy)]
pub struct Tangle {
    pub nw: usize,
    pub ne: usize,
    pub sw: usize,
    pub se: usize,
}

/// Incrementally glues crossings and tangle endpoints.
#[derive(Debug, Default)]
pub struct Builder {
    parent: Vec<usize>,
    /// For each id, the crossing port it names (if any).
    port_of: Vec<Option<Port>>,
    kinds: Vec<CrossingKind>,
    mirror: bool,
}

impl Builder {
    pub fn new(mirror: bool) -> Self {
        Builder {
            mirror,
            ..Default::default()
        }
    }

    fn fresh(&mut self, port: Option<Port>) -> usize {
        self.parent.push(self.parent.len());
        self.port_of.push(port);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds.len()
    }

    /// The `NW` port of crossing `c`; its counterclockwise corner is the west face.
    pub fn nw_port(&self, c: usize) -> Port {
        Port {
            c,
            k: self.kinds[c].ports()[0],
        }
    }

    pub fn port(&self, id: usize) -> Option<Port> {
        self.port_of[id]
    }

    /// A single crossing, returned as a tangle of its compass ends.
    fn crossing(&mut self, kind: CrossingKind) -> Tangle {
        let kind = if self.mirror { kind.mirror() } else { kind };
        let c = self.kinds.len();
        self.kinds.push(kind);
        let ids: Vec<usize> = (0..4).map(|k| self.fresh(Some(Port { c, k }))).collect();
        let [nw, ne, sw, se] = kind.ports();
        Tangle {
            nw: ids[nw],
            ne: ids[ne],
            sw: ids[sw],
            se: ids[se],
        }
    }

    /// The tangle `[0]`: two horizontal arcs.
    pub fn zero(&mut self) -> Tangle {
        let t = Tangle {
            nw: self.fresh(None),
            ne: self.fresh(None),
            sw: self.fresh(None),
            se: self.fresh(None),
        };
        self.union(t.nw, t.ne);
        self.union(t.sw, t.se);
        t
    }

    /// The tangle `[inf]`: two vertical arcs.
    pub fn infinity(&mut self) -> Tangle {
        let t = Tangle {
            nw: self.fresh(None),
            ne: self.fresh(None),
            sw: self.fresh(None),
            se: self.fresh(None),
        };
        self.union(t.nw, t.sw);
        self.union(t.ne, t.se);
        t
    }

    fn kind_of(n: i64) -> CrossingKind {
        if n > 0 {
            CrossingKind::A
        } else {
            CrossingKind::B
        }
    }

    /// Add `n` horizontal half-twists on the right: slope `f -> f + n`.
    pub fn twist_h(&mut self, mut t: Tangle, n: i64) -> Tangle {
        for _ in 0..n.abs() {
            let x = self.crossing(Self::kind_of(n));
            self.union(t.ne, x.nw);
            self.union(t.se, x.sw);
            t.ne = x.ne;
            t.se = x.se;
        }
        t
    }

    /// Add `n` vertical half-twists below: `1/f -> 1/f + n`.
    pub fn twist_v(&mut self, mut t: Tangle, n: i64) -> Tangle {
        for _ in 0..n.abs() {
            let x = self.crossing(Self::kind_of(n));
            self.union(t.sw, x.nw);
            self.union(t.se, x.ne);
            t.sw = x.sw;
            t.se = x.se;
        }
        t
    }

    /// The rational tangle of slope `beta/alpha` from a minus continued fraction of `alpha/beta`.
    pub fn rational(&mut self, cf: &[i64]) -> Tangle {
        let m = cf.len();
        let mut t = if m % 2 == 0 {
            self.zero()
        } else {
            self.infinity()
        };
        for k in (1..=m).rev() {
            let c = if k % 2 == 1 { cf[k - 1] } else { -cf[k - 1] };
            t = if k % 2 == 1 {
                self.twist_v(t, c)
            } else {
                self.twist_h(t, c)
            };
        }
        t
    }

    pub fn sum(&mut self, a: Tangle, b: Tangle) -> Tangle {
        self.union(a.ne, b.nw);
        self.union(a.se, b.sw);
        Tangle {
            nw: a.nw,
            sw: a.sw,
            ne: b.ne,
            se: b.se,
        }
    }

    /// Numerator closure, then face tracing and colouring. `middle` names an endpoint id whose west side is a middle face.
    pub fn close(mut self, t: Tangle, middle: Option<Port>) -> Result<Diagram> {
        self.union(t.nw, t.ne);
        self.union(t.sw, t.se);
        let n = self.kinds.len();
        if n == 0 {
            return Err(Error::Diagram("diagram has no crossings".into()));
        }
        let mut classes: std::collections::HashMap<usize, (Vec<Port>, usize)> = Default::default();
        for id in 0..self.parent.len() {
            let r = self.find(id);
            let entry = classes.entry(r).or_default();
            entry.1 += 1;
            if let Some(p) = self.port_of[id] {
                entry.0.push(p);
            }
        }
        let mut partner = vec![[Port { c: 0, k: 0 }; 4]; n];
        for (ports, _) in classes.values() {
            match ports.len() {
                2 => {
                    partner[ports[0].c][ports[0].k] = ports[1];
                    partner[ports[1].c][ports[1].k] = ports[0];
                }
                0 => return Err(Error::Diagram("split unknotted component".into())),
                k => return Err(Error::Diagram(format!("edge with {k} ends"))),
            }
        }
        Diagram::from_partners(self.kinds, partner, middle)
    }
}

impl Diagram {
    pub fn from_partners(
        kinds: Vec<CrossingKind>,
        partner: Vec<[Port; 4]>,
        middle: Option<Port>,
    ) -> Result<Self> {
        let n = kinds.len();
        let mut face = vec![[usize::MAX; 4]; n];
        let mut num_faces = 0;
        for c in 0..n {
            for k in 0..4 {
                if face[c][k] != usize::MAX {
                    continue;
                }
                let mut cur = Port { c, k };
                while face[cur.c][cur.k] == usize::MAX {
                    face[cur.c][cur.k] = num_faces;
                    cur = partner[cur.c][(cur.k + 1) % 4];
                }
                num_faces += 1;
            }
        }
        if num_faces != n + 2 {
            return Err(Error::Diagram(format!(
                "{num_faces} faces for {n} crossings; diagram is split"
            )));
        }
        let mut colour = vec![u8::MAX; num_faces];
        colour[face[0][0]] = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..n {
                for k in 0..4 {
                    let (f, g) = (face[c][k], face[c][(k + 1) % 4]);
                    if colour[f] != u8::MAX && colour[g] == u8::MAX {
                        colour[g] = 1 - colour[f];
                        changed = true;
                    }
                }
            }
        }
        for c in 0..n {
            for k in 0..4 {
                if colour[face[c][k]] == colour[face[c][(k + 1) % 4]] {
                    return Err(Error::Diagram(
                        "faces admit no checkerboard colouring".into(),
                    ));
                }
            }
        }
        Ok(Diagram {
            kinds,
            partner,
            face,
            num_faces,
            colour,
            middle,
        })
    }

    pub fn crossings(&self) -> usize {
        self.kinds.len()
    }

    pub fn corner_colour(&self, p: Port) -> u8 {
        self.colour[self.face[p.c][p.k]]
    }

    pub fn next(&self, p: Port) -> Port {
        self.partner[p.c][p.k]
    }

    /// Strand cycles, each as the list of ports it leaves from in traversal order.
    pub fn components(&self) -> Vec<Vec<Port>> {
        let n = self.crossings();
        let mut seen = vec![[false; 4]; n];
        let mut out = Vec::new();
        for c in 0..n {
            for k in 0..4 {
                if seen[c][k] {
                    continue;
                }
                let start = Port { c, k };
                let mut cur = start;
                let mut comp = Vec::new();
                loop {
                    let other = self.next(cur);
                    seen[cur.c][cur.k] = true;
                    seen[other.c][other.k] = true;
                    comp.push(cur);
                    cur = other.shift(2);
                    if cur == start {
                        break;
                    }
                }
                out.push(comp);
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(n: i64) -> Diagram {
        let mut b = Builder::new(false);
        let z = b.zero();
        let t = b.twist_h(z, n);
        b.close(t, None).unwrap()
    }

    #[test]
    fn torus_links_have_expected_components() {
        for n in 1..8 {
            let d = torus(n);
            assert_eq!(d.num_faces, n as usize + 2);
            assert_eq!(d.component_count(), if n % 2 == 0 { 2 } else { 1 });
        }
    }

    #[test]
    fn same_tangle_from_two_expansions() {
        // 10/3 = [3,-2,1] = [3,-3] in the minus continued fraction
        for cf in [vec![3, -2, 1], vec![3, -3]] {
            let mut b = Builder::new(false);
            let t = b.rational(&cf);
            let d = b.close(t, None).unwrap();
            assert_eq!(d.component_count(), 1);
        }
    }
}
