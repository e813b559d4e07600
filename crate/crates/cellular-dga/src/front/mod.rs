//! The combinatorial front model: a polygonal complex whose cells carry
//! partially ordered sheet tables, glued by inclusion records, plus
//! swallowtail annotations.
//!
//! Sheets over a cell are stored by *position* (0-based, top first) in a fixed
//! linear extension of the partial order; the original sheet ids are kept for
//! serialization and display. All cross-cell identification flows through
//! [`Inclusion`] records — there is no global sheet id.

mod json;
mod validate;

pub use json::{load, save, to_value, LoadError};
pub use validate::validate;

use crate::gf2::GradedBasis;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Sheets over one cell: Maslov potentials and a strict partial order.
///
/// Position order is a linear extension: `i` can precede `j` in the order
/// only if `i < j`; the exceptions are listed in `incomparable`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetTable {
    ids: Vec<u32>,
    mu: Vec<i64>,
    incomparable: BTreeSet<(usize, usize)>,
}

impl SheetTable {
    /// Totally ordered sheets with ids 1..=n, top first.
    pub fn chain(mu: Vec<i64>) -> Self {
        let ids = (1..=mu.len() as u32).collect();
        SheetTable { ids, mu, incomparable: BTreeSet::new() }
    }

    /// Like [`SheetTable::chain`] with some positions declared incomparable.
    pub fn with_incomparable(mu: Vec<i64>, pairs: &[(usize, usize)]) -> Self {
        let mut t = Self::chain(mu);
        for &(i, j) in pairs {
            assert!(i < j && j < t.len(), "bad incomparable pair");
            t.incomparable.insert((i, j));
        }
        t
    }

    pub fn from_parts(ids: Vec<u32>, mu: Vec<i64>, incomparable: BTreeSet<(usize, usize)>) -> Self {
        assert_eq!(ids.len(), mu.len());
        SheetTable { ids, mu, incomparable }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn id(&self, pos: usize) -> u32 {
        self.ids[pos]
    }

    pub fn position_of(&self, id: u32) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn mu(&self, pos: usize) -> i64 {
        self.mu[pos]
    }

    pub fn mus(&self) -> &[i64] {
        &self.mu
    }

    pub fn incomparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.incomparable.iter().copied()
    }

    pub fn num_incomparable(&self) -> usize {
        self.incomparable.len()
    }

    /// Strict order: position `i` lies above `j`.
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i < j && !self.incomparable.contains(&(i, j))
    }

    /// All comparable pairs (p, q) with p above q, lexicographic.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |p| (p + 1..n).filter(move |&q| self.comparable(p, q)).map(move |q| (p, q)))
    }

    /// Is the relation a partial order (transitive)? Index order is a linear
    /// extension by construction, so only transitivity can fail.
    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if self.comparable(i, j) && self.comparable(j, k) && !self.comparable(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn graded_basis(&self, modulus: u32) -> GradedBasis {
        let pairs: Vec<(usize, usize)> = self.incomparable.iter().copied().collect();
        GradedBasis::with_incomparable(self.mu.clone(), modulus, &pairs)
    }
}

/// Identification of a small cell's sheets inside a bordering bigger cell.
///
/// `map[small position] = big position`; `cusps` are the big positions not in
/// the image, paired as (upper, lower).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub map: Vec<usize>,
    pub cusps: Vec<(usize, usize)>,
}

impl Inclusion {
    pub fn new(map: Vec<usize>, cusps: Vec<(usize, usize)>) -> Self {
        Inclusion { map, cusps }
    }

    pub fn bijective(n: usize) -> Self {
        Inclusion { map: (0..n).collect(), cusps: Vec::new() }
    }

    /// Identity on positions except the given transposition.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Inclusion { map, cusps: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub sheets: SheetTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub sheets: SheetTable,
    pub crossing: bool,
    pub from: usize,
    pub to: usize,
    pub from_inc: Inclusion,
    pub to_inc: Inclusion,
}

impl Edge {
    /// The unique incomparable pair, if this is a crossing edge.
    pub fn crossing_pair(&self) -> Option<(usize, usize)> {
        let mut it = self.sheets.incomparable_pairs();
        match (it.next(), it.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    pub fn is_crossing(&self) -> bool {
        self.sheets.num_incomparable() > 0
    }
}

/// One traversal of an edge inside a face boundary walk, with the edge's
/// identification into the face for this particular appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub sign: i8,
    pub inc: Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub sheets: SheetTable,
    pub v0: usize,
    pub v1: usize,
    pub v0_inc: Inclusion,
    pub v1_inc: Inclusion,
    pub path_a: Vec<Step>,
    pub path_b: Vec<Step>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerKind {
    S,
    T,
}

impl fmt::Display for CornerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CornerKind::S => "S",
            CornerKind::T => "T",
        })
    }
}

/// A corner label: which face hosts the corner and at which walk position the
/// boundary touches the swallowtail vertex. Positions count walk vertices:
/// 0..=len(path_a) along path_a, then len(path_a)+1..=len(path_a)+1+len(path_b)
/// along path_b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub cell: usize,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swallowtail {
    pub vertex: usize,
    pub upward: bool,
    /// 0-based position of the topmost of the three local sheets in the
    /// bordering inside cells.
    pub k: usize,
    pub s_corner: Corner,
    pub t_corner: Corner,
    pub crossing_edge: usize,
    pub s_cusp_edge: usize,
    pub t_cusp_edge: usize,
}

impl Swallowtail {
    /// Expected sheet map of the vertex into an n-sheet inside cell for the
    /// given corner convention, together with the inserted virtual pair.
    ///
    /// The vertex holds the merged sheet at position k among its survivors;
    /// the far sheets keep their relative order on both sides.
    pub fn form(&self, corner: CornerKind, n_small: usize) -> Inclusion {
        let k = self.k;
        let merge_to = match (self.upward, corner) {
            (true, CornerKind::T) => k + 2,
            (false, CornerKind::T) => k,
            (_, CornerKind::S) => k + 1,
        };
        let pair = match (self.upward, corner) {
            (true, CornerKind::T) => (k, k + 1),
            (false, CornerKind::T) => (k + 1, k + 2),
            (_, CornerKind::S) => (k, k + 2),
        };
        let map = (0..n_small)
            .map(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => i,
                std::cmp::Ordering::Equal => merge_to,
                std::cmp::Ordering::Greater => i + 2,
            })
            .collect();
        Inclusion { map, cusps: vec![pair] }
    }

    /// The trio pair that merges at the two cusp edges, in inside positions.
    pub fn merging_pair(&self) -> (usize, usize) {
        if self.upward {
            (self.k, self.k + 1)
        } else {
            (self.k + 1, self.k + 2)
        }
    }

    /// The trio pair that crosses over the crossing edge, in inside positions.
    pub fn crossing_pair(&self) -> (usize, usize) {
        if self.upward {
            (self.k + 1, self.k + 2)
        } else {
            (self.k, self.k + 1)
        }
    }
}

/// A validated front complex: the full input to the differential algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Front {
    pub maslov_number: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub swallowtails: Vec<Swallowtail>,
}

impl Front {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    /// The swallowtail record at a vertex, if any.
    pub fn swallowtail_at(&self, vertex: usize) -> Option<&Swallowtail> {
        self.swallowtails.iter().find(|st| st.vertex == vertex)
    }

    /// Corner role of a face relative to a swallowtail vertex: is this face
    /// the vertex's S-cell or T-cell?
    pub fn corner_role(&self, vertex: usize, face: usize) -> Option<CornerKind> {
        let st = self.swallowtail_at(vertex)?;
        if st.s_corner.cell == face {
            Some(CornerKind::S)
        } else if st.t_corner.cell == face {
            Some(CornerKind::T)
        } else {
            None
        }
    }

    /// Walk-vertex sequence of one path of a face: `len(path)+1` entries.
    pub fn path_vertices(&self, start: usize, path: &[Step]) -> Option<Vec<usize>> {
        let mut at = start;
        let mut out = vec![at];
        for step in path {
            let e = &self.edges[step.edge];
            at = match step.sign {
                1 if e.from == at => e.to,
                -1 if e.to == at => e.from,
                _ => return None,
            };
            out.push(at);
        }
        Some(out)
    }

    /// Vertex at a combined corner position of a face walk (path_a positions
    /// first, then path_b).
    pub fn vertex_at_position(&self, face: usize, position: usize) -> Option<usize> {
        let f = &self.faces[face];
        let a = self.path_vertices(f.v0, &f.path_a)?;
        if position < a.len() {
            return Some(a[position]);
        }
        let b = self.path_vertices(f.v0, &f.path_b)?;
        b.get(position - a.len()).copied()
    }

    /// Corner marks of one face, keyed by combined walk position.
    pub fn corner_marks(&self, face: usize) -> BTreeMap<usize, (CornerKind, usize)> {
        let mut marks = BTreeMap::new();
        for st in &self.swallowtails {
            if st.s_corner.cell == face {
                marks.insert(st.s_corner.position, (CornerKind::S, st.vertex));
            }
            if st.t_corner.cell == face {
                marks.insert(st.t_corner.position, (CornerKind::T, st.vertex));
            }
        }
        marks
    }
}

/// Deterministic topological sort of sheet ids under the given relations
/// (`(upper, lower)` meaning upper precedes lower), ties broken by ascending
/// id. Errors on cyclic data.
pub fn linearize(ids: &[u32], relations: &[(u32, u32)]) -> Result<Vec<u32>, String> {
    let id_set: BTreeSet<u32> = ids.iter().copied().collect();
    if id_set.len() != ids.len() {
        return Err("duplicate sheet ids".into());
    }
    let mut succs: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    let mut indegree: BTreeMap<u32, usize> = id_set.iter().map(|&i| (i, 0)).collect();
    for &(u, l) in relations {
        if !id_set.contains(&u) || !id_set.contains(&l) {
            return Err(format!("order relation ({u}, {l}) references unknown sheet"));
        }
        if u == l {
            return Err(format!("sheet {u} ordered against itself"));
        }
        if succs.entry(u).or_default().insert(l) {
            *indegree.get_mut(&l).unwrap() += 1;
        }
    }
    let mut ready: BTreeSet<u32> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&i, _)| i).collect();
    let mut out = Vec::with_capacity(ids.len());
    while let Some(&next) = ready.iter().next() {
        ready.remove(&next);
        out.push(next);
        if let Some(ls) = succs.get(&next) {
            for &l in ls {
                let d = indegree.get_mut(&l).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(l);
                }
            }
        }
    }
    if out.len() != ids.len() {
        return Err("cyclic sheet order".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linearize_is_deterministic() {
        assert_eq!(linearize(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap(), vec![1, 2, 3]);
        // incomparable sheets fall back to id order
        assert_eq!(linearize(&[2, 1], &[]).unwrap(), vec![1, 2]);
        // diamond: 1 < {2,3} < 4 with 2,3 incomparable
        assert_eq!(
            linearize(&[1, 2, 3, 4], &[(1, 2), (2, 4), (1, 3), (3, 4)]).unwrap(),
            vec![1, 2, 3, 4]
        );
        assert!(linearize(&[1, 2], &[(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn sheet_table_pairs_skip_incomparable() {
        let t = SheetTable::with_incomparable(vec![1, 0, 0, 0], &[(1, 2)]);
        let pairs: Vec<_> = t.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        assert!(t.is_transitive());
    }

    #[test]
    fn swallowtail_forms() {
        // upward, trio at top (k = 0), one far sheet below
        let st = Swallowtail {
            vertex: 0,
            upward: true,
            k: 0,
            s_corner: Corner { cell: 0, position: 0 },
            t_corner: Corner { cell: 1, position: 0 },
            crossing_edge: 0,
            s_cusp_edge: 1,
            t_cusp_edge: 2,
        };
        let t_form = st.form(CornerKind::T, 2);
        assert_eq!(t_form.map, vec![2, 3]);
        assert_eq!(t_form.cusps, vec![(0, 1)]);
        let s_form = st.form(CornerKind::S, 2);
        assert_eq!(s_form.map, vec![1, 3]);
        assert_eq!(s_form.cusps, vec![(0, 2)]);
        assert_eq!(st.merging_pair(), (0, 1));
        assert_eq!(st.crossing_pair(), (1, 2));

        // downward, one far sheet above the trio
        let down = Swallowtail { upward: false, k: 1, ..st };
        let t_form = down.form(CornerKind::T, 2);
        assert_eq!(t_form.map, vec![0, 1]);
        assert_eq!(t_form.cusps, vec![(2, 3)]);
        let s_form = down.form(CornerKind::S, 2);
        assert_eq!(s_form.map, vec![0, 2]);
        assert_eq!(s_form.cusps, vec![(1, 3)]);
        assert_eq!(down.merging_pair(), (2, 3));
        assert_eq!(down.crossing_pair(), (1, 2));
    }
}
