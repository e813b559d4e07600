//! The free differential graded algebra of a front complex over Z/2.
//!
//! Each cell contributes one generator per comparable sheet pair (kind `a` on
//! 0-cells, `b` on 1-cells, `c` on 2-cells). The differential is assembled
//! from matrix identities: squaring on 0-cells, conjugation along 1-cells,
//! and boundary-walk products on 2-cells, with swallowtail corners inserting
//! their local factors.

use crate::front::{CornerKind, Front, Inclusion, Step, Swallowtail};
use crate::gf2::BitMatrix;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A polynomial over Z/2 in noncommuting generator variables.
///
/// Terms are words of generator ids (left factor first); the empty word is the
/// unit. Addition toggles terms, so every polynomial is multiplicity-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeSet<Vec<u32>>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Vec::new());
        Poly { terms }
    }

    pub fn var(id: u32) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(vec![id]);
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&Vec::new() as &Vec<u32>)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds one word (mod 2: present terms cancel).
    pub fn toggle(&mut self, word: Vec<u32>) {
        if !self.terms.remove(&word) {
            self.terms.insert(word);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for w in &other.terms {
            out.toggle(w.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for left in &self.terms {
            for right in &other.terms {
                let mut w = Vec::with_capacity(left.len() + right.len());
                w.extend_from_slice(left);
                w.extend_from_slice(right);
                out.toggle(w);
            }
        }
        out
    }

    /// All generator ids occurring in some term.
    pub fn support(&self) -> BTreeSet<u32> {
        self.terms.iter().flatten().copied().collect()
    }

    /// Evaluates at a 0/1 point (words multiply as AND, terms add as XOR).
    pub fn evaluate(&self, point: &[bool]) -> bool {
        let mut acc = false;
        for word in &self.terms {
            acc ^= word.iter().all(|&g| point[g as usize]);
        }
        acc
    }
}

/// A square matrix of polynomials, indexed by sheet positions of one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix { n, entries: vec![Poly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one();
        }
        m
    }

    /// I + p·E(i, j).
    pub fn elementary(n: usize, i: usize, j: usize, p: Poly) -> Self {
        let mut m = Self::identity(n);
        m.add_to(i, j, &p);
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Poly) {
        let cur = &mut self.entries[i * self.n + j];
        *cur = cur.add(p);
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for i in 0..self.n * self.n {
            out.entries[i] = self.entries[i].add(&other.entries[i]);
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let left = self.at(i, k);
                if left.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let right = other.at(k, j);
                    if right.is_zero() {
                        continue;
                    }
                    let prod = left.mul(right);
                    out.add_to(i, j, &prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Is this matrix I + (strictly upper triangular)?
    pub fn is_unit_upper(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.at(i, j);
                if i == j && !e.is_one() {
                    return false;
                }
                if i > j && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of a unit upper triangular matrix, by summing powers of the
    /// nilpotent part.
    pub fn unipotent_inverse(&self) -> PolyMatrix {
        assert!(self.is_unit_upper(), "inverse requires a unit upper triangular matrix");
        let nilp = self.add(&Self::identity(self.n));
        let mut inv = Self::identity(self.n);
        let mut power = Self::identity(self.n);
        for _ in 0..self.n {
            power = power.mul(&nilp);
            if power.is_zero() {
                break;
            }
            inv = inv.add(&power);
        }
        inv
    }
}

type GenKey = (u8, usize, usize, usize);

/// One generator: cell dimension, cell index, and the sheet position pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub dim: u8,
    pub cell: usize,
    pub p: usize,
    pub q: usize,
    pub degree: i64,
}

/// The assembled algebra: interned generators and their differentials.
#[derive(Clone, Debug)]
pub struct Dga {
    pub front: Front,
    gens: Vec<GenInfo>,
    index: BTreeMap<GenKey, u32>,
    diffs: Vec<Poly>,
}

impl Dga {
    /// Builds the algebra of a front. Fails if any matrix identity produces a
    /// nonzero entry at a position that carries no generator.
    pub fn new(front: Front) -> Result<Dga, String> {
        let mut gens = Vec::new();
        let mut index = BTreeMap::new();
        {
            let mut intern = |dim: u8, cell: usize, table: &crate::front::SheetTable, shift: i64| {
                for (p, q) in table.pairs() {
                    let id = gens.len() as u32;
                    gens.push(GenInfo { dim, cell, p, q, degree: table.mu(p) - table.mu(q) + shift });
                    index.insert((dim, cell, p, q), id);
                }
            };
            for (i, v) in front.vertices.iter().enumerate() {
                intern(0, i, &v.sheets, -1);
            }
            for (i, e) in front.edges.iter().enumerate() {
                intern(1, i, &e.sheets, 0);
            }
            for (i, f) in front.faces.iter().enumerate() {
                intern(2, i, &f.sheets, 1);
            }
        }
        let mut dga = Dga { front, gens, index, diffs: Vec::new() };
        dga.diffs = dga.build_differentials()?;
        Ok(dga)
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen(&self, id: u32) -> &GenInfo {
        &self.gens[id as usize]
    }

    pub fn gens(&self) -> impl Iterator<Item = (u32, &GenInfo)> {
        self.gens.iter().enumerate().map(|(i, g)| (i as u32, g))
    }

    pub fn gen_id(&self, dim: u8, cell: usize, p: usize, q: usize) -> Option<u32> {
        self.index.get(&(dim, cell, p, q)).copied()
    }

    /// Looks up a generator by kind letter, cell id, and sheet ids.
    pub fn gen_by_name(&self, kind: char, cell_id: &str, p_id: u32, q_id: u32) -> Option<u32> {
        let (dim, cell, table) = match kind {
            'a' => {
                let c = self.front.vertex_index(cell_id)?;
                (0, c, &self.front.vertices[c].sheets)
            }
            'b' => {
                let c = self.front.edge_index(cell_id)?;
                (1, c, &self.front.edges[c].sheets)
            }
            'c' => {
                let c = self.front.face_index(cell_id)?;
                (2, c, &self.front.faces[c].sheets)
            }
            _ => return None,
        };
        let p = table.position_of(p_id)?;
        let q = table.position_of(q_id)?;
        self.gen_id(dim, cell, p, q)
    }

    pub fn gen_name(&self, id: u32) -> String {
        let g = self.gen(id);
        let (kind, cell_id, table) = match g.dim {
            0 => ('a', &self.front.vertices[g.cell].id, &self.front.vertices[g.cell].sheets),
            1 => ('b', &self.front.edges[g.cell].id, &self.front.edges[g.cell].sheets),
            _ => ('c', &self.front.faces[g.cell].id, &self.front.faces[g.cell].sheets),
        };
        format!("{kind}[{cell_id}]({},{})", table.id(g.p), table.id(g.q))
    }

    pub fn differential(&self, id: u32) -> &Poly {
        &self.diffs[id as usize]
    }

    /// Degree of one generator, reduced mod the Maslov number when nonzero.
    pub fn degree(&self, id: u32) -> i64 {
        let d = self.gen(id).degree;
        match self.front.maslov_number {
            0 => d,
            m => d.rem_euclid(m as i64),
        }
    }

    /// May an augmentation with the given grading period send this generator
    /// to 1? Period 0 demands exact degree zero.
    pub fn admissible(&self, id: u32, rho: u32) -> bool {
        let d = self.degree(id);
        match rho {
            0 => d == 0,
            r => d.rem_euclid(r as i64) == 0,
        }
    }

    /// Ids of all admissible generators, in canonical order.
    pub fn admissible_gens(&self, rho: u32) -> Vec<u32> {
        (0..self.gens.len() as u32).filter(|&g| self.admissible(g, rho)).collect()
    }

    // ---- symbolic cell matrices ----

    /// Generator matrix of a 0-cell (entries at comparable pairs).
    pub fn vertex_matrix(&self, v: usize) -> PolyMatrix {
        self.cell_matrix(0, v, &self.front.vertices[v].sheets)
    }

    /// Generator matrix of a 1-cell.
    pub fn edge_matrix(&self, e: usize) -> PolyMatrix {
        self.cell_matrix(1, e, &self.front.edges[e].sheets)
    }

    /// Generator matrix of a 2-cell.
    pub fn face_matrix(&self, f: usize) -> PolyMatrix {
        self.cell_matrix(2, f, &self.front.faces[f].sheets)
    }

    fn cell_matrix(&self, dim: u8, cell: usize, table: &crate::front::SheetTable) -> PolyMatrix {
        let mut m = PolyMatrix::zero(table.len());
        for (p, q) in table.pairs() {
            m.set(p, q, Poly::var(self.gen_id(dim, cell, p, q).unwrap()));
        }
        m
    }

    /// Embedded vertex matrix inside a bordering cell: generator entries under
    /// the sheet map, a unit at each cusp pair, and — at a swallowtail vertex
    /// entering through one of its two corner conventions — conjugation by the
    /// local reordering.
    pub fn a_hat(&self, vertex: usize, inc: &Inclusion, n: usize) -> PolyMatrix {
        let a = self.vertex_matrix(vertex);
        let mut raw = PolyMatrix::zero(n);
        for i in 0..a.n {
            for j in 0..a.n {
                if !a.at(i, j).is_zero() {
                    raw.set(inc.map[i], inc.map[j], a.at(i, j).clone());
                }
            }
        }
        for &(u, l) in &inc.cusps {
            raw.add_to(u, l, &Poly::one());
        }
        let Some(kind) = self.matched_corner_form(vertex, inc) else {
            return raw;
        };
        let st = self.front.swallowtail_at(vertex).unwrap();
        let k = st.k;
        let (r, c) = match (st.upward, kind) {
            (true, CornerKind::T) => (k + 1, k + 2),
            (true, CornerKind::S) => (k + 2, k + 1),
            (false, CornerKind::T) => (k, k + 1),
            (false, CornerKind::S) => (k + 1, k),
        };
        let conj = PolyMatrix::elementary(n, r, c, Poly::one());
        conj.mul(&raw).mul(&conj)
    }

    /// If `vertex` is a swallowtail point and `inc` is exactly one of its two
    /// normal forms, returns which one.
    fn matched_corner_form(&self, vertex: usize, inc: &Inclusion) -> Option<CornerKind> {
        let st = self.front.swallowtail_at(vertex)?;
        let n_small = self.front.vertices[vertex].sheets.len();
        [CornerKind::S, CornerKind::T]
            .into_iter()
            .find(|&kind| *inc == st.form(kind, n_small))
    }

    /// The walk factor of one boundary step: I + (embedded edge matrix),
    /// inverted when the step runs against the edge orientation.
    pub fn step_factor(&self, step: &Step, n: usize) -> PolyMatrix {
        let b = self.edge_matrix(step.edge);
        let mut m = PolyMatrix::identity(n);
        for i in 0..b.n {
            for j in 0..b.n {
                if !b.at(i, j).is_zero() {
                    m.add_to(step.inc.map[i], step.inc.map[j], b.at(i, j));
                }
            }
        }
        if step.sign < 0 {
            m.unipotent_inverse()
        } else {
            m
        }
    }

    /// The corner factor of a swallowtail inside its S- or T-side 2-cell.
    /// Both are involutive and are inserted into walk products uninverted.
    pub fn corner_factor(&self, st: &Swallowtail, kind: CornerKind) -> PolyMatrix {
        let n = self.front.vertices[st.vertex].sheets.len() + 2;
        let k = st.k;
        let mut m = match (st.upward, kind) {
            (true, _) => PolyMatrix::elementary(n, k + 1, k + 2, Poly::one()),
            (false, _) => PolyMatrix::elementary(n, k, k + 1, Poly::one()),
        };
        if kind == CornerKind::S {
            if st.upward {
                // entries from each sheet above the trio into the merged sheet
                for i in 0..k {
                    let gen = self.gen_id(0, st.vertex, i, k).expect("missing vertex generator");
                    m.add_to(i, k, &Poly::var(gen));
                }
            } else {
                // entries from the merged sheet into each sheet below the trio
                let n_small = self.front.vertices[st.vertex].sheets.len();
                for j in k + 1..n_small {
                    let gen = self.gen_id(0, st.vertex, k, j).expect("missing vertex generator");
                    m.add_to(k + 2, j + 2, &Poly::var(gen));
                }
            }
        }
        m
    }

    /// Product of walk factors of one path of a face, rightmost factor first
    /// traversed, with swallowtail corner factors inserted at their marks.
    ///
    /// `offset` is the combined corner position of the path's first walk
    /// vertex (0 for path a, len(path_a) + 1 for path b).
    fn walk_product(&self, face: usize, path: &[Step], offset: usize, n: usize) -> PolyMatrix {
        let marks = self.front.corner_marks(face);
        let corner_at = |slot: usize| -> Option<PolyMatrix> {
            let &(kind, vertex) = marks.get(&(offset + slot))?;
            let st = self.front.swallowtail_at(vertex).unwrap();
            Some(self.corner_factor(st, kind))
        };
        let mut product = PolyMatrix::identity(n);
        for (i, step) in path.iter().enumerate() {
            if let Some(c) = corner_at(i) {
                product = c.mul(&product);
            }
            product = self.step_factor(step, n).mul(&product);
        }
        if let Some(c) = corner_at(path.len()) {
            product = c.mul(&product);
        }
        product
    }

    /// Both boundary-path factor products of a face, symbolically.
    pub fn face_walks(&self, f: usize) -> (PolyMatrix, PolyMatrix) {
        let face = &self.front.faces[f];
        let n = face.sheets.len();
        let fa = self.walk_product(f, &face.path_a, 0, n);
        let fb = self.walk_product(f, &face.path_b, face.path_a.len() + 1, n);
        (fa, fb)
    }

    /// Differential matrix of a face: endpoint terms plus both walk products.
    fn face_boundary(&self, f: usize) -> PolyMatrix {
        let face = &self.front.faces[f];
        let n = face.sheets.len();
        let c = self.face_matrix(f);
        let a1 = self.a_hat(face.v1, &face.v1_inc, n);
        let a0 = self.a_hat(face.v0, &face.v0_inc, n);
        let fa = self.walk_product(f, &face.path_a, 0, n);
        let fb = self.walk_product(f, &face.path_b, face.path_a.len() + 1, n);
        a1.mul(&c).add(&c.mul(&a0)).add(&fa).add(&fb)
    }

    /// Differential matrix of an edge: terminal matrix on the left.
    fn edge_boundary(&self, e: usize) -> PolyMatrix {
        let edge = &self.front.edges[e];
        let n = edge.sheets.len();
        let b = PolyMatrix::identity(n).add(&self.edge_matrix(e));
        let plus = self.a_hat(edge.to, &edge.to_inc, n);
        let minus = self.a_hat(edge.from, &edge.from_inc, n);
        plus.mul(&b).add(&b.mul(&minus))
    }

    fn build_differentials(&self) -> Result<Vec<Poly>, String> {
        let mut diffs = vec![Poly::zero(); self.gens.len()];
        let mut read = |dim: u8,
                        cell: usize,
                        id: &str,
                        table: &crate::front::SheetTable,
                        m: PolyMatrix|
         -> Result<(), String> {
            for i in 0..m.n {
                for j in 0..m.n {
                    let entry = m.at(i, j);
                    if let Some(g) = self.gen_id(dim, cell, i, j) {
                        diffs[g as usize] = entry.clone();
                    } else if !entry.is_zero() {
                        return Err(format!(
                            "differential of {dim}-cell {id} has a nonzero entry at sheet pair \
                             ({}, {}) which carries no generator",
                            table.id(i),
                            table.id(j)
                        ));
                    }
                }
            }
            Ok(())
        };
        for (v, vx) in self.front.vertices.iter().enumerate() {
            let a = self.vertex_matrix(v);
            read(0, v, &vx.id, &vx.sheets, a.mul(&a))?;
        }
        for (e, edge) in self.front.edges.iter().enumerate() {
            read(1, e, &edge.id, &edge.sheets, self.edge_boundary(e))?;
        }
        for (f, face) in self.front.faces.iter().enumerate() {
            read(2, f, &face.id, &face.sheets, self.face_boundary(f))?;
        }
        Ok(diffs)
    }

    // ---- whole-algebra checks ----

    /// Applies the differential to a polynomial by the product rule.
    pub fn d_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for word in p.terms() {
            for (i, &g) in word.iter().enumerate() {
                for dw in self.differential(g).terms() {
                    let mut term = Vec::with_capacity(word.len() - 1 + dw.len());
                    term.extend_from_slice(&word[..i]);
                    term.extend_from_slice(dw);
                    term.extend_from_slice(&word[i + 1..]);
                    out.toggle(term);
                }
            }
        }
        out
    }

    /// Checks that the differential squares to zero on every generator.
    pub fn check_d_squared(&self) -> Result<(), String> {
        for (id, _) in self.gens() {
            let dd = self.d_poly(self.differential(id));
            if !dd.is_zero() {
                return Err(format!(
                    "d² is nonzero on {}: {}",
                    self.gen_name(id),
                    self.poly_string(&dd)
                ));
            }
        }
        Ok(())
    }

    /// Checks that every term of every differential drops degree by exactly
    /// one (mod the Maslov number when nonzero).
    pub fn check_degrees(&self) -> Result<(), String> {
        let m = self.front.maslov_number;
        let reduce = |d: i64| if m == 0 { d } else { d.rem_euclid(m as i64) };
        for (id, _) in self.gens() {
            let want = reduce(self.degree(id) - 1);
            for word in self.differential(id).terms() {
                let got = reduce(word.iter().map(|&g| self.degree(g)).sum());
                if got != want {
                    return Err(format!(
                        "term {} of d {} has degree {got}, expected {want}",
                        self.word_string(word),
                        self.gen_name(id)
                    ));
                }
            }
        }
        Ok(())
    }

    /// Is `point` an augmentation: does every differential evaluate to zero?
    pub fn is_augmentation(&self, point: &[bool]) -> bool {
        self.diffs.iter().all(|d| !d.evaluate(point))
    }

    /// Evaluates a polynomial matrix at a 0/1 point.
    pub fn eval_matrix(&self, m: &PolyMatrix, point: &[bool]) -> BitMatrix {
        let mut out = BitMatrix::zero(m.n, m.n);
        for i in 0..m.n {
            for j in 0..m.n {
                if m.at(i, j).evaluate(point) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    // ---- display ----

    pub fn word_string(&self, word: &[u32]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter().map(|&g| self.gen_name(g)).collect::<Vec<_>>().join(" ")
    }

    pub fn poly_string(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        p.terms().map(|w| self.word_string(w)).collect::<Vec<_>>().join(" + ")
    }

    /// All differentials, one line per generator, in canonical order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, _) in self.gens() {
            let _ = writeln!(out, "d {} = {}", self.gen_name(id), self.poly_string(self.differential(id)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::{Edge, Face, SheetTable, Vertex};

    fn poly_of(dga: &Dga, words: &[&[u32]]) -> Poly {
        let mut p = Poly::zero();
        for w in words {
            p.toggle(w.to_vec());
        }
        let _ = dga;
        p
    }

    #[test]
    fn poly_arithmetic() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let xy = x.mul(&y);
        let yx = y.mul(&x);
        assert_ne!(xy, yx, "variables must not commute");
        assert!(xy.add(&xy).is_zero());
        let s = x.add(&Poly::one());
        let sq = s.mul(&s);
        // (1 + x)² = 1 + x x over Z/2
        let mut expect = Poly::one();
        expect.toggle(vec![0, 0]);
        assert_eq!(sq, expect);
        assert!(xy.evaluate(&[true, true]));
        assert!(!xy.evaluate(&[true, false]));
        assert!(Poly::one().evaluate(&[]));
    }

    #[test]
    fn unipotent_poly_inverse() {
        let mut m = PolyMatrix::identity(3);
        m.set(0, 1, Poly::var(0));
        m.set(1, 2, Poly::var(1));
        m.set(0, 2, Poly::var(2));
        let inv = m.unipotent_inverse();
        assert_eq!(m.mul(&inv), PolyMatrix::identity(3));
        assert_eq!(inv.mul(&m), PolyMatrix::identity(3));
    }

    /// One 0-cell with a totally ordered 3-sheet table: d on its generators
    /// is the matrix square.
    #[test]
    fn vertex_differential_is_matrix_square() {
        let front = Front {
            maslov_number: 0,
            vertices: vec![Vertex { id: "v".into(), sheets: SheetTable::chain(vec![2, 1, 0]) }],
            edges: vec![],
            faces: vec![],
            swallowtails: vec![],
        };
        let dga = Dga::new(front).unwrap();
        assert_eq!(dga.num_gens(), 3);
        let a01 = dga.gen_id(0, 0, 0, 1).unwrap();
        let a12 = dga.gen_id(0, 0, 1, 2).unwrap();
        let a02 = dga.gen_id(0, 0, 0, 2).unwrap();
        assert!(dga.differential(a01).is_zero());
        assert!(dga.differential(a12).is_zero());
        assert_eq!(*dga.differential(a02), poly_of(&dga, &[&[a01, a12]]));
        assert_eq!(dga.degree(a01), 0);
        assert_eq!(dga.degree(a02), 1);
        dga.check_d_squared().unwrap();
        dga.check_degrees().unwrap();
        assert_eq!(dga.gen_name(a02), "a[v](1,3)");
    }

    /// A 1-cell whose endpoints both merge its two sheets in a cusp: the
    /// endpoint units cancel and d b = 0.
    #[test]
    fn closed_arc_between_cusps() {
        let empty = || SheetTable::chain(vec![]);
        let front = Front {
            maslov_number: 0,
            vertices: vec![
                Vertex { id: "p".into(), sheets: empty() },
                Vertex { id: "q".into(), sheets: empty() },
            ],
            edges: vec![Edge {
                id: "e".into(),
                sheets: SheetTable::chain(vec![1, 0]),
                crossing: false,
                from: 0,
                to: 1,
                from_inc: Inclusion::new(vec![], vec![(0, 1)]),
                to_inc: Inclusion::new(vec![], vec![(0, 1)]),
            }],
            faces: vec![],
            swallowtails: vec![],
        };
        let dga = Dga::new(front).unwrap();
        let b = dga.gen_id(1, 0, 0, 1).unwrap();
        assert_eq!(dga.degree(b), 1);
        assert!(dga.differential(b).is_zero());
        dga.check_d_squared().unwrap();
        dga.check_degrees().unwrap();
    }

    /// The embedded endpoint matrix of an upward swallowtail vertex with one
    /// extra sheet below, under the T convention with the trio on top.
    #[test]
    fn swallowtail_endpoint_matrix_upward_t() {
        let st = Swallowtail {
            vertex: 0,
            upward: true,
            k: 0,
            s_corner: crate::front::Corner { cell: 0, position: 0 },
            t_corner: crate::front::Corner { cell: 1, position: 0 },
            crossing_edge: 0,
            s_cusp_edge: 0,
            t_cusp_edge: 0,
        };
        let front = Front {
            maslov_number: 0,
            vertices: vec![Vertex { id: "v".into(), sheets: SheetTable::chain(vec![0, 0]) }],
            edges: vec![],
            faces: vec![],
            swallowtails: vec![st],
        };
        // build without edges/faces; query a_hat directly
        let dga = Dga::new(front).unwrap();
        let a = dga.gen_id(0, 0, 0, 1).unwrap();
        let st = dga.front.swallowtails[0].clone();

        let t_hat = dga.a_hat(0, &st.form(CornerKind::T, 2), 4);
        let mut expect = PolyMatrix::zero(4);
        expect.set(0, 1, Poly::one());
        expect.set(0, 2, Poly::one());
        expect.set(1, 3, Poly::var(a));
        expect.set(2, 3, Poly::var(a));
        assert_eq!(t_hat, expect, "T-convention endpoint matrix");

        // with the trio on top the S convention gives the same matrix
        let s_hat = dga.a_hat(0, &st.form(CornerKind::S, 2), 4);
        assert_eq!(s_hat, expect, "S-convention endpoint matrix");
    }

    /// Same vertex shape but with the extra sheet above (trio at k = 1),
    /// S convention: matches the conjugated form used at the bottom corner of
    /// a cone point.
    #[test]
    fn swallowtail_endpoint_matrix_upward_s() {
        let st = Swallowtail {
            vertex: 0,
            upward: true,
            k: 1,
            s_corner: crate::front::Corner { cell: 0, position: 0 },
            t_corner: crate::front::Corner { cell: 1, position: 0 },
            crossing_edge: 0,
            s_cusp_edge: 0,
            t_cusp_edge: 0,
        };
        let front = Front {
            maslov_number: 0,
            vertices: vec![Vertex { id: "v".into(), sheets: SheetTable::chain(vec![1, 0]) }],
            edges: vec![],
            faces: vec![],
            swallowtails: vec![st],
        };
        let dga = Dga::new(front).unwrap();
        let a = dga.gen_id(0, 0, 0, 1).unwrap();
        let st = dga.front.swallowtails[0].clone();
        let s_hat = dga.a_hat(0, &st.form(CornerKind::S, 2), 4);
        let mut expect = PolyMatrix::zero(4);
        expect.set(0, 2, Poly::var(a));
        expect.set(1, 2, Poly::one());
        expect.set(1, 3, Poly::one());
        assert_eq!(s_hat, expect);

        let t_hat = dga.a_hat(0, &st.form(CornerKind::T, 2), 4);
        let mut expect_t = PolyMatrix::zero(4);
        expect_t.set(0, 3, Poly::var(a));
        expect_t.set(1, 2, Poly::one());
        expect_t.set(1, 3, Poly::one());
        assert_eq!(t_hat, expect_t);
    }

    /// Corner factors: anti-diagonal unit for T, plus vertex entries into the
    /// merged column for S; both square to the identity.
    #[test]
    fn corner_factors_are_involutive() {
        let st = Swallowtail {
            vertex: 0,
            upward: true,
            k: 2,
            s_corner: crate::front::Corner { cell: 0, position: 0 },
            t_corner: crate::front::Corner { cell: 1, position: 0 },
            crossing_edge: 0,
            s_cusp_edge: 0,
            t_cusp_edge: 0,
        };
        let front = Front {
            maslov_number: 0,
            vertices: vec![Vertex { id: "v".into(), sheets: SheetTable::chain(vec![0, 0, 0]) }],
            edges: vec![],
            faces: vec![],
            swallowtails: vec![st],
        };
        let dga = Dga::new(front).unwrap();
        let st = dga.front.swallowtails[0].clone();
        let s = dga.corner_factor(&st, CornerKind::S);
        let t = dga.corner_factor(&st, CornerKind::T);
        assert_eq!(s.mul(&s), PolyMatrix::identity(5));
        assert_eq!(t.mul(&t), PolyMatrix::identity(5));
        assert_eq!(*t.at(3, 4), Poly::one());
        let a02 = dga.gen_id(0, 0, 0, 2).unwrap();
        let a12 = dga.gen_id(0, 0, 1, 2).unwrap();
        assert_eq!(*s.at(0, 2), Poly::var(a02));
        assert_eq!(*s.at(1, 2), Poly::var(a12));
        assert_eq!(*s.at(3, 4), Poly::one());
    }

    /// A disk with one boundary arc and a cusp everywhere: the closed-surface
    /// unit; its face generator has zero differential.
    #[test]
    fn cusp_disk_has_trivial_face_differential() {
        let empty = SheetTable::chain(vec![]);
        let front = Front {
            maslov_number: 0,
            vertices: vec![Vertex { id: "v".into(), sheets: empty.clone() }],
            edges: vec![Edge {
                id: "e".into(),
                sheets: empty.clone(),
                crossing: false,
                from: 0,
                to: 0,
                from_inc: Inclusion::new(vec![], vec![]),
                to_inc: Inclusion::new(vec![], vec![]),
            }],
            faces: vec![Face {
                id: "D".into(),
                sheets: SheetTable::chain(vec![1, 0]),
                v0: 0,
                v1: 0,
                v0_inc: Inclusion::new(vec![], vec![(0, 1)]),
                v1_inc: Inclusion::new(vec![], vec![(0, 1)]),
                path_a: vec![Step { edge: 0, sign: 1, inc: Inclusion::new(vec![], vec![(0, 1)]) }],
                path_b: vec![],
            }],
            swallowtails: vec![],
        };
        let dga = Dga::new(front).unwrap();
        let c = dga.gen_id(2, 0, 0, 1).unwrap();
        assert_eq!(dga.degree(c), 2);
        assert!(dga.differential(c).is_zero());
        dga.check_d_squared().unwrap();
        dga.check_degrees().unwrap();
        assert!(dga.is_augmentation(&[false]));
    }
}
