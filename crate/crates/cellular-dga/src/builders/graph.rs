//! Trivalent graphs embedded in surfaces, given by their face walks.
//!
//! A graph is stored as undirected edges plus faces as cyclic edge lists. An
//! embedding is reconstructed by orienting every face walk so that each
//! directed edge is used exactly once; the corner successor map at each vertex
//! must then be a 3-cycle, which recovers the rotation system.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One end of an edge: (edge index, endpoint 0 or 1).
pub type HalfEdge = (usize, u8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Faces as cyclic edge-index lists, in walk order (directions implicit).
    pub faces: Vec<Vec<usize>>,
}

/// A fully resolved embedding: oriented face walks and per-vertex slots.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// Per face, the walk as (edge, forward?) steps.
    pub walks: Vec<Vec<(usize, bool)>>,
    /// Per vertex, its three half-edges in slot order (slot i+1 follows slot i
    /// around a face corner).
    pub slots: Vec<[HalfEdge; 3]>,
    /// Per face, the corners in walk order: (vertex, arrival slot).
    pub corners: Vec<Vec<(usize, usize)>>,
}

impl TrivalentGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, faces: Vec<Vec<usize>>) -> Self {
        TrivalentGraph { num_vertices, edges, faces }
    }

    fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push((i, 0));
            }
            if b == v {
                out.push((i, 1));
            }
        }
        out
    }

    /// Structural checks that do not need an embedding.
    pub fn check_shape(&self) -> Result<(), String> {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a >= self.num_vertices || b >= self.num_vertices {
                return Err(format!("edge {i} references a vertex out of range"));
            }
            if a == b {
                return Err(format!("edge {i} is a self-loop, which is not supported"));
            }
        }
        for v in 0..self.num_vertices {
            let d = self.half_edges_at(v).len();
            if d != 3 {
                return Err(format!("vertex {v} has degree {d}, expected 3"));
            }
        }
        let total: usize = self.faces.iter().map(Vec::len).sum();
        if total != 2 * self.edges.len() {
            return Err(format!(
                "face walks use {total} edge slots, expected {}",
                2 * self.edges.len()
            ));
        }
        for (f, walk) in self.faces.iter().enumerate() {
            if walk.is_empty() {
                return Err(format!("face {f} is empty"));
            }
            for &e in walk {
                if e >= self.edges.len() {
                    return Err(format!("face {f} references edge {e} out of range"));
                }
            }
        }
        Ok(())
    }

    /// Orients all face walks consistently and extracts the rotation system.
    pub fn embed(&self) -> Result<Embedding, String> {
        self.check_shape()?;
        let walks = self
            .orient_faces(0, &mut vec![false; 2 * self.edges.len()])
            .ok_or("face walks cannot be oriented into an embedding")?;

        // corner successor map: arriving half-edge -> departing half-edge
        let mut succ: BTreeMap<HalfEdge, HalfEdge> = BTreeMap::new();
        let mut corners_raw: Vec<Vec<(usize, HalfEdge)>> = Vec::new();
        for walk in &walks {
            let mut corner_list = Vec::new();
            let k = walk.len();
            for i in 0..k {
                let (e_in, fwd_in) = walk[i];
                let (e_out, fwd_out) = walk[(i + 1) % k];
                // arrival end of e_in is its head; departure end of e_out its tail
                let h_in = (e_in, if fwd_in { 1u8 } else { 0u8 });
                let h_out = (e_out, if fwd_out { 0u8 } else { 1u8 });
                let v = self.half_edge_vertex(h_in);
                debug_assert_eq!(v, self.half_edge_vertex(h_out));
                if succ.insert(h_in, h_out).is_some() {
                    return Err("a half-edge is arrived at twice".into());
                }
                corner_list.push((v, h_in));
            }
            corners_raw.push(corner_list);
        }

        // slots: minimal half-edge first, then follow the successor 3-cycle
        let mut slots = Vec::with_capacity(self.num_vertices);
        for v in 0..self.num_vertices {
            let hs = self.half_edges_at(v);
            let first = *hs.iter().min().unwrap();
            let second = *succ.get(&first).ok_or("incomplete corner data")?;
            let third = *succ.get(&second).ok_or("incomplete corner data")?;
            if second == first || third == first || succ.get(&third) != Some(&first) {
                return Err(format!("corners at vertex {v} do not form a 3-cycle"));
            }
            slots.push([first, second, third]);
        }

        let slot_of = |h: HalfEdge| -> usize {
            let v = self.half_edge_vertex(h);
            slots[v].iter().position(|&x| x == h).unwrap()
        };
        let corners = corners_raw
            .into_iter()
            .map(|list| list.into_iter().map(|(v, h_in)| (v, slot_of(h_in))).collect())
            .collect();
        Ok(Embedding { walks, slots, corners })
    }

    fn half_edge_vertex(&self, h: HalfEdge) -> usize {
        let (e, end) = h;
        if end == 0 {
            self.edges[e].0
        } else {
            self.edges[e].1
        }
    }

    /// Backtracking orientation of the face walks: each directed edge must be
    /// used exactly once over all faces.
    fn orient_faces(&self, face: usize, used: &mut Vec<bool>, ) -> Option<Vec<Vec<(usize, bool)>>> {
        if face == self.faces.len() {
            return used.iter().all(|&u| u).then(Vec::new);
        }
        for first_forward in [true, false] {
            if let Some(walk) = self.chain_walk(&self.faces[face], first_forward, used) {
                let marks: Vec<usize> =
                    walk.iter().map(|&(e, fwd)| 2 * e + usize::from(!fwd)).collect();
                for &m in &marks {
                    used[m] = true;
                }
                if let Some(mut rest) = self.orient_faces(face + 1, used) {
                    rest.insert(0, walk);
                    return Some(rest);
                }
                for &m in &marks {
                    used[m] = false;
                }
            }
        }
        None
    }

    /// Chains one face's edge list into a closed directed walk, if possible.
    fn chain_walk(&self, face: &[usize], first_forward: bool, used: &[bool]) -> Option<Vec<(usize, bool)>> {
        let start = if first_forward { self.edges[face[0]].0 } else { self.edges[face[0]].1 };
        let mut at = start;
        let mut walk = Vec::with_capacity(face.len());
        let mut taken = vec![false; 2 * self.edges.len()];
        for (i, &e) in face.iter().enumerate() {
            let (a, b) = self.edges[e];
            let fwd = if i == 0 {
                first_forward
            } else if a == at {
                true
            } else if b == at {
                false
            } else {
                return None;
            };
            let mark = 2 * e + usize::from(!fwd);
            if used[mark] || taken[mark] {
                return None;
            }
            taken[mark] = true;
            at = if fwd { b } else { a };
            walk.push((e, fwd));
        }
        (at == start).then_some(walk)
    }
}

/// Does every face have an even number of corners?
pub fn even_faces(g: &TrivalentGraph) -> bool {
    g.faces.iter().all(|f| f.len() % 2 == 0)
}

/// Can the faces be properly 3-colored so that faces sharing an edge differ?
pub fn dual_3_colorable(g: &TrivalentGraph) -> bool {
    let nf = g.faces.len();
    // faces adjacent along each edge (each edge borders exactly two face slots)
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); g.edges.len()];
    for (f, walk) in g.faces.iter().enumerate() {
        for &e in walk {
            sides[e].push(f);
        }
    }
    let mut adj = vec![Vec::new(); nf];
    for s in &sides {
        if s.len() != 2 {
            return false;
        }
        if s[0] == s[1] {
            return false; // a face meeting itself across an edge is never properly colorable
        }
        adj[s[0]].push(s[1]);
        adj[s[1]].push(s[0]);
    }
    fn color(f: usize, adj: &[Vec<usize>], cols: &mut Vec<u8>) -> bool {
        if f == adj.len() {
            return true;
        }
        for c in 1..=3u8 {
            if adj[f].iter().all(|&g| cols[g] != c) {
                cols[f] = c;
                if color(f + 1, adj, cols) {
                    return true;
                }
                cols[f] = 0;
            }
        }
        false
    }
    color(0, &adj, &mut vec![0; nf])
}

// ---- serialization ----

pub const GRAPH_SCHEMA: &str = "trigraph/1";

#[derive(Serialize, Deserialize)]
struct FileGraph {
    schema: String,
    vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

pub fn graph_from_json(text: &str) -> Result<TrivalentGraph, String> {
    let file: FileGraph = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    if file.schema != GRAPH_SCHEMA {
        return Err(format!("unsupported schema {:?} (this tool reads {GRAPH_SCHEMA:?})", file.schema));
    }
    let g = TrivalentGraph::new(file.vertices, file.edges, file.faces);
    g.check_shape()?;
    Ok(g)
}

pub fn graph_to_json(g: &TrivalentGraph) -> String {
    let file = FileGraph {
        schema: GRAPH_SCHEMA.to_string(),
        vertices: g.num_vertices,
        edges: g.edges.clone(),
        faces: g.faces.clone(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("graph serialization cannot fail");
    s.push('\n');
    s
}

// ---- corpus ----

/// Two vertices joined by three parallel edges, on the sphere (bigon faces).
pub fn theta() -> TrivalentGraph {
    TrivalentGraph::new(2, vec![(0, 1); 3], vec![vec![0, 1], vec![1, 2], vec![2, 0]])
}

/// The complete graph K4 on the sphere (triangle faces).
pub fn tetrahedron() -> TrivalentGraph {
    TrivalentGraph::new(
        4,
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        vec![vec![0, 3, 1], vec![1, 5, 2], vec![2, 4, 0], vec![4, 5, 3]],
    )
}

/// The n-gonal prism on the sphere: two n-gon faces and n squares.
pub fn prism(n: usize) -> TrivalentGraph {
    assert!(n >= 3);
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n)); // top rim: e_i
    }
    for i in 0..n {
        edges.push((n + i, n + (i + 1) % n)); // bottom rim: e_{n+i}
    }
    for i in 0..n {
        edges.push((i, n + i)); // verticals: e_{2n+i}
    }
    let top: Vec<usize> = (0..n).collect();
    let bottom: Vec<usize> = (0..n).rev().map(|i| n + i).collect();
    let mut faces = vec![top, bottom];
    for i in 0..n {
        faces.push(vec![i, 2 * n + i, n + i, 2 * n + (i + 1) % n]);
    }
    TrivalentGraph::new(2 * n, edges, faces)
}

/// The cube graph (3-dimensional hypercube skeleton) on the sphere.
pub fn cube() -> TrivalentGraph {
    let edges = vec![
        (0, 1), // e0
        (0, 2), // e1
        (0, 4), // e2
        (1, 3), // e3
        (1, 5), // e4
        (2, 3), // e5
        (2, 6), // e6
        (3, 7), // e7
        (4, 5), // e8
        (4, 6), // e9
        (5, 7), // e10
        (6, 7), // e11
    ];
    let faces = vec![
        vec![0, 3, 5, 1],   // z = 0
        vec![2, 8, 4, 0],   // y = 0
        vec![1, 6, 9, 2],   // x = 0
        vec![9, 11, 10, 8], // z = 1
        vec![5, 7, 11, 6],  // y = 1
        vec![4, 10, 7, 3],  // x = 1
    ];
    TrivalentGraph::new(8, edges, faces)
}

/// K4 with one vertex cut off and replaced by a triangle.
pub fn k4_truncated_once() -> TrivalentGraph {
    // 0,1,2: the new triangle; 3,4,5: the untouched K4 vertices
    let edges = vec![
        (0, 1), // e0
        (1, 2), // e1
        (2, 0), // e2
        (0, 3), // e3: leg to B
        (1, 4), // e4: leg to C
        (2, 5), // e5: leg to D
        (3, 4), // e6: BC
        (3, 5), // e7: BD
        (4, 5), // e8: CD
    ];
    let faces = vec![
        vec![2, 1, 0],    // truncation triangle
        vec![3, 0, 4, 6], // old ABC
        vec![7, 5, 2, 3], // old ABD
        vec![4, 1, 5, 8], // old ACD
        vec![6, 8, 7],    // old BCD
    ];
    TrivalentGraph::new(6, edges, faces)
}

/// K4 with all four vertices cut off: four triangles and four hexagons.
pub fn k4_truncated_fully() -> TrivalentGraph {
    // corner c(i, j) = 3i + rank of j among the other three vertices
    let edges = vec![
        (0, 1),   // e0: triangle 0
        (1, 2),   // e1
        (0, 2),   // e2
        (3, 4),   // e3: triangle 1
        (4, 5),   // e4
        (3, 5),   // e5
        (6, 7),   // e6: triangle 2
        (7, 8),   // e7
        (6, 8),   // e8
        (9, 10),  // e9: triangle 3
        (10, 11), // e10
        (9, 11),  // e11
        (0, 3),   // e12: old 01
        (1, 6),   // e13: old 02
        (2, 9),   // e14: old 03
        (4, 7),   // e15: old 12
        (5, 10),  // e16: old 13
        (8, 11),  // e17: old 23
    ];
    let faces = vec![
        vec![2, 1, 0],                // triangle at 0
        vec![4, 5, 3],                // triangle at 1
        vec![8, 7, 6],                // triangle at 2
        vec![10, 11, 9],              // triangle at 3
        vec![0, 13, 6, 15, 3, 12],    // hexagon 012
        vec![12, 5, 16, 9, 14, 2],    // hexagon 013
        vec![15, 7, 17, 10, 16, 4],   // hexagon 123
        vec![1, 14, 11, 17, 8, 13],   // hexagon 023
    ];
    TrivalentGraph::new(12, edges, faces)
}

/// Theta on the torus: one hexagonal face (genus 1).
pub fn torus_theta() -> TrivalentGraph {
    TrivalentGraph::new(2, vec![(0, 1); 3], vec![vec![0, 1, 2, 0, 1, 2]])
}

/// The named test corpus, spheres first.
pub fn corpus() -> Vec<(&'static str, TrivalentGraph)> {
    vec![
        ("theta", theta()),
        ("tetrahedron", tetrahedron()),
        ("cube", cube()),
        ("prism3", prism(3)),
        ("prism5", prism(5)),
        ("prism6", prism(6)),
        ("k4-truncated-once", k4_truncated_once()),
        ("k4-truncated-fully", k4_truncated_fully()),
        ("torus-theta", torus_theta()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_embeds() {
        for (name, g) in corpus() {
            let emb = g.embed().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(emb.walks.len(), g.faces.len(), "{name}");
            // every corner's departure slot follows its arrival slot
            for corners in &emb.corners {
                for &(v, slot) in corners {
                    assert!(v < g.num_vertices);
                    assert!(slot < 3);
                }
            }
            // genus from Euler characteristic must be a nonnegative even defect
            let chi = g.num_vertices as i64 - g.edges.len() as i64 + g.faces.len() as i64;
            assert!(chi <= 2 && (2 - chi) % 2 == 0, "{name}: chi = {chi}");
        }
    }

    #[test]
    fn face_parity() {
        let expect = [
            ("theta", true),
            ("tetrahedron", false),
            ("cube", true),
            ("prism3", false),
            ("prism5", false),
            ("prism6", true),
            ("k4-truncated-once", false),
            ("k4-truncated-fully", false),
            ("torus-theta", true),
        ];
        let got: Vec<(&str, bool)> = corpus().iter().map(|(n, g)| (*n, even_faces(g))).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn sphere_parity_matches_dual_coloring() {
        for (name, g) in corpus() {
            let chi = g.num_vertices as i64 - g.edges.len() as i64 + g.faces.len() as i64;
            if chi == 2 {
                assert_eq!(
                    even_faces(&g),
                    dual_3_colorable(&g),
                    "{name}: parity and dual 3-colorability must agree on spheres"
                );
            }
        }
    }

    #[test]
    fn genus_one_example_is_a_torus() {
        let g = torus_theta();
        let chi = g.num_vertices as i64 - g.edges.len() as i64 + g.faces.len() as i64;
        assert_eq!(chi, 0);
        g.embed().unwrap();
    }

    #[test]
    fn json_roundtrip() {
        let g = tetrahedron();
        let text = graph_to_json(&g);
        assert_eq!(graph_from_json(&text).unwrap(), g);
        assert!(graph_from_json("{\"schema\":\"trigraph/9\",\"vertices\":0,\"edges\":[],\"faces\":[]}").is_err());
    }

    #[test]
    fn rejects_bad_graphs() {
        // degree 2
        let g = TrivalentGraph::new(2, vec![(0, 1), (0, 1)], vec![vec![0, 1]]);
        assert!(g.check_shape().is_err());
        // self-loop
        let g = TrivalentGraph::new(1, vec![(0, 0), (0, 0), (0, 0)], vec![vec![0, 1, 2]]);
        assert!(g.check_shape().is_err());
    }
}
