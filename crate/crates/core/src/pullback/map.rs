//! Combinatorial maps for 4-regular checkerboarded graphs.
//!
//! Half-edge `4v + i` is corner `i` of vertex `v`, corners in counter-clockwise
//! order. `ρ` steps to the next corner; `σ` pairs the two ends of an edge and
//! always joins an even corner to an odd one. The faces are the orbits of
//! `φ = ρ ∘ σ`: orbits through odd half-edges are the `+` faces, the others
//! the `-` faces.

use std::collections::VecDeque;

use crate::diagram::Sphere;

pub const NONE: u32 = u32::MAX;

#[inline]
pub fn vertex_of(h: u32) -> u32 {
    h / 4
}

#[inline]
pub fn rho(h: u32) -> u32 {
    (h & !3) | ((h + 1) & 3)
}

#[inline]
pub fn rho_inv(h: u32) -> u32 {
    (h & !3) | ((h + 3) & 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Map {
    sigma: Vec<u32>,
    /// `R` mark of the edge through each half-edge (symmetric).
    marks: Vec<bool>,
}

/// One face: its half-edges in walking order. The walk leaves vertex
/// `vertex_of(h)` through corner `h % 4` along the edge of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFace {
    pub sign: Sphere,
    pub half_edges: Vec<u32>,
}

impl MapFace {
    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.half_edges.iter().map(|&h| vertex_of(h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("half-edge {0} is unpaired or paired inconsistently")]
    BadPairing(u32),
    #[error("edge at half-edge {0} joins two corners of the same parity")]
    NotCheckerboard(u32),
}

impl Map {
    /// `sigma` must be a fixed-point-free involution joining even and odd
    /// corners; `marks` is indexed by half-edge.
    pub fn new(sigma: Vec<u32>, marks: Vec<bool>) -> Result<Map, MapError> {
        assert_eq!(
            sigma.len() % 4,
            0,
            "half-edge count must be a multiple of 4"
        );
        assert_eq!(sigma.len(), marks.len());
        for (h, &t) in sigma.iter().enumerate() {
            let h = h as u32;
            if t as usize >= sigma.len()
                || t == h
                || sigma[t as usize] != h
                || marks[t as usize] != marks[h as usize]
            {
                return Err(MapError::BadPairing(h));
            }
            if (t ^ h) & 1 == 0 {
                return Err(MapError::NotCheckerboard(h));
            }
        }
        Ok(Map { sigma, marks })
    }

    pub fn empty() -> Map {
        Map {
            sigma: Vec::new(),
            marks: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn sigma(&self, h: u32) -> u32 {
        self.sigma[h as usize]
    }

    pub fn is_marked(&self, h: u32) -> bool {
        self.marks[h as usize]
    }

    pub fn phi(&self, h: u32) -> u32 {
        rho(self.sigma(h))
    }

    /// Edges as (smaller half-edge, larger half-edge), in increasing order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.sigma.len() as u32)
            .filter(|&h| h < self.sigma(h))
            .map(|h| (h, self.sigma(h)))
            .collect()
    }

    /// Index into [`Map::edges`] for every half-edge.
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.sigma.len()];
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            idx[a as usize] = e;
            idx[b as usize] = e;
        }
        idx
    }

    pub fn r_count(&self) -> usize {
        self.edges()
            .iter()
            .filter(|&&(a, _)| self.is_marked(a))
            .count()
    }

    /// Faces ordered by their smallest half-edge, each walk starting there.
    pub fn faces(&self) -> Vec<MapFace> {
        let mut seen = vec![false; self.sigma.len()];
        let mut out = Vec::new();
        for start in 0..self.sigma.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = start;
            while !seen[h as usize] {
                seen[h as usize] = true;
                walk.push(h);
                h = self.phi(h);
            }
            let sign = if start % 2 == 1 {
                Sphere::Plus
            } else {
                Sphere::Minus
            };
            out.push(MapFace {
                sign,
                half_edges: walk,
            });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for i in 0..4 {
                let w = vertex_of(self.sigma(4 * v + i));
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertex 2-colouring in which exactly the `R` edges join equally
    /// coloured vertices, if one exists. Vertex 0 gets `true`.
    pub fn orientation_colouring(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(true);
            let mut queue = VecDeque::from([root as u32]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v as usize].unwrap();
                for i in 0..4 {
                    let h = 4 * v + i;
                    let w = vertex_of(self.sigma(h)) as usize;
                    let want = if self.is_marked(h) { cv } else { !cv };
                    match colour[w] {
                        None => {
                            colour[w] = Some(want);
                            queue.push_back(w as u32);
                        }
                        Some(c) if c != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    fn relabelled(&self, f: impl Fn(u32) -> u32) -> Map {
        let mut sigma = vec![0; self.sigma.len()];
        let mut marks = vec![false; self.sigma.len()];
        for h in 0..self.sigma.len() as u32 {
            sigma[f(h) as usize] = f(self.sigma(h));
            marks[f(h) as usize] = self.is_marked(h);
        }
        Map { sigma, marks }
    }

    /// Orientation reversal; keeps face signs.
    pub fn mirror(&self) -> Map {
        self.relabelled(|h| (h & !3) | ((5 - (h & 3)) & 3))
    }

    /// Exchanges `+` and `-` faces.
    pub fn sign_swapped(&self) -> Map {
        self.relabelled(rho)
    }

    /// Relabelling by breadth-first search from `root`, which becomes
    /// half-edge `root % 2` of vertex 0. Every vertex is rotated by an even
    /// amount, so face signs survive.
    fn bfs_code(&self, root: u32) -> Vec<u32> {
        let n = self.vertex_count();
        let mut new_vertex = vec![NONE; n];
        let mut offset = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        let v0 = vertex_of(root);
        new_vertex[v0 as usize] = 0;
        offset[v0 as usize] = ((root & 1) + 4 - (root & 3)) & 3;
        order.push(v0);
        let map_he = |h: u32, nv: &[u32], off: &[u32]| {
            4 * nv[vertex_of(h) as usize] + (((h & 3) + off[vertex_of(h) as usize]) & 3)
        };
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            // visit corners in new-label order
            for k in 0..4u32 {
                let old = 4 * v + ((k + 4 - offset[v as usize]) & 3);
                let t = self.sigma(old);
                let w = vertex_of(t) as usize;
                if new_vertex[w] == NONE {
                    new_vertex[w] = order.len() as u32;
                    offset[w] = ((t & 1) + 4 - (t & 3)) & 3;
                    order.push(w as u32);
                }
            }
        }
        let mut code = vec![0u32; 4 * n];
        for h in 0..(4 * n) as u32 {
            let nh = map_he(h, &new_vertex, &offset);
            let nt = map_he(self.sigma(h), &new_vertex, &offset);
            code[nh as usize] = (nt << 1) | u32::from(self.is_marked(h));
        }
        code
    }

    /// Isomorphism invariant: equal for two connected maps exactly when some
    /// relabelling of vertices, possibly with orientation reversal, carries
    /// one onto the other preserving face signs and `R` marks.
    pub fn canonical_code(&self) -> Vec<u32> {
        let mirrored = self.mirror();
        let mut best: Option<Vec<u32>> = None;
        for m in [self, &mirrored] {
            for root in 0..self.sigma.len() as u32 {
                let code = m.bfs_code(root);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// The map rebuilt from a canonical code.
    pub fn from_code(code: &[u32]) -> Map {
        let sigma = code.iter().map(|c| c >> 1).collect();
        let marks = code.iter().map(|c| c & 1 == 1).collect();
        Map { sigma, marks }
    }

    pub fn canonical(&self) -> Map {
        Map::from_code(&self.canonical_code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices joined by four edges: four bigons on the sphere.
    pub(crate) fn two_bigon_sphere(all_r: bool) -> Map {
        // (0,i) <-> (1, 1-i mod 4) joins even to odd
        let mut sigma = vec![0; 8];
        for i in 0..4u32 {
            let t = 4 + ((5 - i) & 3);
            sigma[i as usize] = t;
            sigma[t as usize] = i;
        }
        Map::new(sigma, vec![all_r; 8]).unwrap()
    }

    #[test]
    fn bigon_sphere_faces() {
        let m = two_bigon_sphere(true);
        let faces = m.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 2));
        assert_eq!(faces.iter().filter(|f| f.sign == Sphere::Plus).count(), 2);
        assert_eq!(
            m.vertex_count() as i64 - m.edge_count() as i64 + faces.len() as i64,
            2
        );
    }

    #[test]
    fn mirror_and_swap_are_involutions() {
        let m = two_bigon_sphere(true);
        assert_eq!(m.mirror().mirror(), m);
        assert_eq!(
            m.sign_swapped()
                .sign_swapped()
                .sign_swapped()
                .sign_swapped(),
            m
        );
    }

    #[test]
    fn canonical_code_is_invariant() {
        let m = two_bigon_sphere(true);
        let c = m.canonical_code();
        assert_eq!(m.mirror().canonical_code(), c);
        // relabelling the vertices
        let swapped = m.relabelled(|h| h ^ 4);
        assert_eq!(swapped.canonical_code(), c);
        assert_eq!(Map::from_code(&c).canonical_code(), c);
    }

    #[test]
    fn colouring_follows_marks() {
        assert_eq!(
            two_bigon_sphere(true).orientation_colouring(),
            Some(vec![true, true])
        );
        assert_eq!(
            two_bigon_sphere(false).orientation_colouring(),
            Some(vec![true, false])
        );
        let mut marks = vec![false; 8];
        marks[0] = true;
        marks[5] = true;
        let m = Map::new(two_bigon_sphere(true).sigma.clone(), marks).unwrap();
        assert_eq!(m.orientation_colouring(), None);
    }

    #[test]
    fn rejects_same_parity_edges() {
        let sigma = vec![2, 3, 0, 1];
        assert!(matches!(
            Map::new(sigma, vec![false; 4]),
            Err(MapError::NotCheckerboard(_))
        ));
    }
}
