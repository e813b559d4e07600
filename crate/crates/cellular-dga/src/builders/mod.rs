//! Ready-made front complexes: the example families exercised by the test
//! suite and exposed through the command line.
//!
//! Sheet tables are written top sheet first; all complexes here have Maslov
//! number 0 (exact integer grading).

pub mod graph;
mod tz;

pub use graph::{dual_3_colorable, even_faces, TrivalentGraph};
pub use tz::{tz_complex, tz_local};

use crate::front::{
    Corner, Edge, Face, Front, Inclusion, SheetTable, Step, Swallowtail, Vertex,
};
use crate::monodromy;

pub(crate) fn chain(mu: &[i64]) -> SheetTable {
    SheetTable::chain(mu.to_vec())
}

pub(crate) fn crossed(mu: &[i64], pairs: &[(usize, usize)]) -> SheetTable {
    SheetTable::with_incomparable(mu.to_vec(), pairs)
}

pub(crate) fn ident(n: usize) -> Inclusion {
    Inclusion::bijective(n)
}

pub(crate) fn swap(n: usize, i: usize, j: usize) -> Inclusion {
    Inclusion::swap(n, i, j)
}

pub(crate) fn incl(map: &[usize], cusps: &[(usize, usize)]) -> Inclusion {
    Inclusion::new(map.to_vec(), cusps.to_vec())
}

pub(crate) fn step(edge: usize, sign: i8, inc: Inclusion) -> Step {
    Step { edge, sign, inc }
}

/// Incremental [`Front`] constructor used by the builders.
pub(crate) struct FrontAssembler {
    front: Front,
}

impl FrontAssembler {
    pub fn new(maslov_number: u32) -> Self {
        FrontAssembler {
            front: Front {
                maslov_number,
                vertices: Vec::new(),
                edges: Vec::new(),
                faces: Vec::new(),
                swallowtails: Vec::new(),
            },
        }
    }

    pub fn vertex(&mut self, id: &str, sheets: SheetTable) -> usize {
        self.front.vertices.push(Vertex { id: id.to_string(), sheets });
        self.front.vertices.len() - 1
    }

    #[allow(clippy::too_many_arguments)]
    pub fn edge(
        &mut self,
        id: &str,
        sheets: SheetTable,
        crossing: bool,
        from: usize,
        from_inc: Inclusion,
        to: usize,
        to_inc: Inclusion,
    ) -> usize {
        self.front.edges.push(Edge {
            id: id.to_string(),
            sheets,
            crossing,
            from,
            to,
            from_inc,
            to_inc,
        });
        self.front.edges.len() - 1
    }

    #[allow(clippy::too_many_arguments)]
    pub fn face(
        &mut self,
        id: &str,
        sheets: SheetTable,
        v0: usize,
        v0_inc: Inclusion,
        v1: usize,
        v1_inc: Inclusion,
        path_a: Vec<Step>,
        path_b: Vec<Step>,
    ) -> usize {
        self.front.faces.push(Face {
            id: id.to_string(),
            sheets,
            v0,
            v1,
            v0_inc,
            v1_inc,
            path_a,
            path_b,
        });
        self.front.faces.len() - 1
    }

    pub fn swallowtail(&mut self, st: Swallowtail) {
        self.front.swallowtails.push(st);
    }

    pub fn finish(self) -> Front {
        self.front
    }
}

/// Two-sheet disk bounded by a single cusp circle: the smallest valid front.
///
/// One 0-cell and one 1-cell on the cusp circle carry no sheets; the interior
/// 2-cell carries the two sheets that are born along the rim.
pub fn flying_saucer() -> Front {
    let mut asm = FrontAssembler::new(0);
    let p = asm.vertex("P", chain(&[]));
    let rim = asm.edge("rim", chain(&[]), false, p, ident(0), p, ident(0));
    asm.face(
        "cap",
        chain(&[1, 0]),
        p,
        incl(&[], &[(0, 1)]),
        p,
        incl(&[], &[(0, 1)]),
        vec![step(rim, 1, incl(&[], &[(0, 1)]))],
        vec![],
    );
    asm.finish()
}

/// Two-sheet front over the torus with one crossing circle: one vertex, two
/// edges and a square 2-cell. The crossing 1-cell `b` sits over the
/// nonseparating curve; the canonical loop crosses it once.
pub fn torus_curve() -> Front {
    let mut asm = FrontAssembler::new(0);
    let p = asm.vertex("P", crossed(&[0, 0], &[(0, 1)]));
    let a = asm.edge("a", chain(&[0, 0]), false, p, ident(2), p, ident(2));
    let b = asm.edge("b", crossed(&[0, 0], &[(0, 1)]), true, p, ident(2), p, ident(2));
    asm.face(
        "F",
        chain(&[0, 0]),
        p,
        ident(2),
        p,
        swap(2, 0, 1),
        vec![step(a, 1, ident(2)), step(b, 1, swap(2, 0, 1))],
        vec![step(b, 1, ident(2)), step(a, 1, ident(2))],
    );
    asm.finish()
}

/// Disk around a single swallowtail point: the crossing arc, its two cusp
/// arcs, the S- and T-side inside 2-cells and the outside 2-cell.
///
/// The trio occupies all three inside sheets; one extra far sheet would only
/// dilute the tests, so there is none and the point itself carries one sheet.
pub fn swallowtail_disk(upward: bool) -> Front {
    let (tri_mu, far_mu) = if upward {
        (vec![1i64, 0, 0], 0i64)
    } else {
        (vec![1i64, 1, 0], 1i64)
    };
    // positions within the three inside sheets
    let cross_pair = if upward { (1, 2) } else { (0, 1) };
    let merge_pair = if upward { (0, 1) } else { (1, 2) };
    let t_form = if upward {
        incl(&[2], &[(0, 1)])
    } else {
        incl(&[0], &[(1, 2)])
    };
    let s_form = incl(&[1], &[(0, 2)]);
    let cusp_step = t_form.clone(); // survivor placement along a cusp arc

    let mut asm = FrontAssembler::new(0);
    let st = asm.vertex("st", chain(&[far_mu]));
    let ec = asm.vertex("ec", crossed(&tri_mu, &[cross_pair]));
    let es = asm.vertex("es", chain(&[far_mu]));
    let et = asm.vertex("et", chain(&[far_mu]));

    let cr = asm.edge(
        "cr",
        crossed(&tri_mu, &[cross_pair]),
        true,
        st,
        t_form.clone(),
        ec,
        ident(3),
    );
    let cusp_s = asm.edge("cuspS", chain(&[far_mu]), false, st, ident(1), es, ident(1));
    let cusp_t = asm.edge("cuspT", chain(&[far_mu]), false, st, ident(1), et, ident(1));
    let b_s = asm.edge(
        "bS",
        chain(&tri_mu),
        false,
        es,
        cusp_step.clone(),
        ec,
        swap(3, cross_pair.0, cross_pair.1),
    );
    let b_t = asm.edge("bT", chain(&tri_mu), false, ec, ident(3), et, cusp_step.clone());
    let b_out = asm.edge("bOut", chain(&[far_mu]), false, es, ident(1), et, ident(1));

    let t_cell = asm.face(
        "T",
        chain(&tri_mu),
        st,
        t_form.clone(),
        st,
        t_form.clone(),
        vec![
            step(cr, 1, ident(3)),
            step(b_t, 1, ident(3)),
            step(cusp_t, -1, cusp_step.clone()),
        ],
        vec![],
    );
    let s_cell = asm.face(
        "S",
        chain(&tri_mu),
        st,
        s_form.clone(),
        st,
        s_form,
        vec![
            step(cr, 1, swap(3, cross_pair.0, cross_pair.1)),
            step(b_s, -1, ident(3)),
            step(cusp_s, -1, cusp_step),
        ],
        vec![],
    );
    asm.face(
        "Out",
        chain(&[far_mu]),
        st,
        ident(1),
        st,
        ident(1),
        vec![
            step(cusp_s, 1, ident(1)),
            step(b_out, 1, ident(1)),
            step(cusp_t, -1, ident(1)),
        ],
        vec![],
    );
    asm.swallowtail(Swallowtail {
        vertex: st,
        upward,
        k: 0,
        s_corner: Corner { cell: s_cell, position: 3 },
        t_corner: Corner { cell: t_cell, position: 3 },
        crossing_edge: cr,
        s_cusp_edge: cusp_s,
        t_cusp_edge: cusp_t,
    });
    debug_assert_eq!(asm.front.swallowtails[0].merging_pair(), merge_pair);
    asm.finish()
}

/// Sphere front with two resolved cone points: four sheets between the cone
/// points, two outside, with two upward and two downward swallowtails per
/// cone point pair.
pub fn conormal_unknot() -> Front {
    let mut asm = FrontAssembler::new(0);
    let cone1 = conormal_cone(&mut asm, "");
    let cone2 = conormal_cone(&mut asm, ".2");

    let outer = chain(&[1, 0]);
    let me = asm.edge("ME", outer.clone(), false, cone1.w, ident(2), cone2.w, ident(2));
    let mw = asm.edge("MW", outer.clone(), false, cone1.y, ident(2), cone2.y, ident(2));

    // front outside face: over the cusp-free region between the two cones
    asm.face(
        "DF",
        outer.clone(),
        cone1.w,
        ident(2),
        cone1.w,
        ident(2),
        vec![
            step(cone1.b6b, 1, ident(2)),
            step(cone1.b7b, -1, ident(2)),
            step(mw, 1, ident(2)),
            step(cone2.b7b, 1, ident(2)),
            step(cone2.b6b, -1, ident(2)),
            step(me, -1, ident(2)),
        ],
        vec![],
    );
    // back outside face: passes both cone-point vertices between the cusp arcs
    asm.face(
        "DB",
        outer,
        cone1.w,
        ident(2),
        cone1.w,
        ident(2),
        vec![
            step(cone1.b6a, -1, ident(2)),
            step(cone1.b1, -1, ident(2)),
            step(cone1.b2, 1, ident(2)),
            step(cone1.b7a, 1, ident(2)),
            step(mw, 1, ident(2)),
            step(cone2.b7a, -1, ident(2)),
            step(cone2.b2, -1, ident(2)),
            step(cone2.b1, 1, ident(2)),
            step(cone2.b6a, 1, ident(2)),
            step(me, -1, ident(2)),
        ],
        vec![],
    );
    asm.finish()
}

fn empty_loops(front: &Front, vertex: &str) -> monodromy::LoopFile {
    monodromy::LoopFile {
        basepoint: monodromy::Basepoint {
            vertex: front.vertex_index(vertex).expect("builder vertex"),
            region: "outside".into(),
        },
        loops: Vec::new(),
    }
}

/// Canonical loops of the torus curve: the longitude followed by the
/// crossing arc, and the bare longitude slide.
pub fn torus_loops(front: &Front) -> monodromy::LoopFile {
    use monodromy::{LoopWord, Move};
    let a = front.edge_index("a").expect("torus edge a");
    let b = front.edge_index("b").expect("torus edge b");
    monodromy::LoopFile {
        loops: vec![
            LoopWord {
                name: "slide-cross".into(),
                moves: vec![Move::Edge { edge: a, sign: 1 }, Move::Cross { edge: b }],
            },
            LoopWord { name: "slide".into(), moves: vec![Move::Edge { edge: a, sign: 1 }] },
        ],
        ..empty_loops(front, "P")
    }
}

/// Natural basepoint of the flying saucer; no loops are known to act.
pub fn saucer_loops(front: &Front) -> monodromy::LoopFile {
    empty_loops(front, "P")
}

/// Natural basepoint of the conormal front; no loops are known to act.
pub fn conormal_loops(front: &Front) -> monodromy::LoopFile {
    empty_loops(front, "A0")
}

/// Natural basepoint of a vertex-deltoid complex; no loops are known to act.
pub fn tz_loops(front: &Front) -> monodromy::LoopFile {
    let vertex = if front.vertex_index("f0.hub").is_some() { "f0.hub" } else { "A1" };
    empty_loops(front, vertex)
}

struct ConeIds {
    w: usize,
    y: usize,
    b1: usize,
    b2: usize,
    b6a: usize,
    b6b: usize,
    b7a: usize,
    b7b: usize,
}

/// One resolved cone point: vertices A0 (up), P (up), L (down), R (down), the
/// four-sheet interchange vertex X, and the equator vertices W, Y.
fn conormal_cone(asm: &mut FrontAssembler, sfx: &str) -> ConeIds {
    let id = |base: &str| format!("{base}{sfx}");
    let four = &[1i64, 1, 0, 0];
    let two = &[1i64, 0];

    // normal forms shared by the two upward (k = 1) and downward (k = 0) points
    let up_s = incl(&[0, 2], &[(1, 3)]);
    let up_t = incl(&[0, 3], &[(1, 2)]);
    let down_t = incl(&[0, 3], &[(1, 2)]);

    let a0 = asm.vertex(&id("A0"), chain(two));
    let p = asm.vertex(&id("P"), chain(two));
    let l = asm.vertex(&id("L"), chain(two));
    let r = asm.vertex(&id("R"), chain(two));
    let x = asm.vertex(&id("X"), crossed(four, &[(0, 1), (2, 3)]));
    let w = asm.vertex(&id("W"), chain(two));
    let y = asm.vertex(&id("Y"), chain(two));

    let b0 = asm.edge(
        &id("B0"),
        crossed(four, &[(2, 3)]),
        true,
        x,
        ident(4),
        a0,
        up_s.clone(),
    );
    let b5 = asm.edge(
        &id("B5"),
        crossed(four, &[(2, 3)]),
        true,
        x,
        swap(4, 0, 1),
        p,
        up_s.clone(),
    );
    let b3 = asm.edge(
        &id("B3"),
        crossed(four, &[(0, 1)]),
        true,
        r,
        down_t.clone(),
        x,
        ident(4),
    );
    let b4 = asm.edge(
        &id("B4"),
        crossed(four, &[(0, 1)]),
        true,
        l,
        down_t.clone(),
        x,
        swap(4, 2, 3),
    );
    let b1 = asm.edge(&id("B1"), chain(two), false, a0, ident(2), r, ident(2));
    let b2 = asm.edge(&id("B2"), chain(two), false, a0, ident(2), l, ident(2));
    let b6a = asm.edge(&id("B6a"), chain(two), false, r, ident(2), w, ident(2));
    let b6b = asm.edge(&id("B6b"), chain(two), false, w, ident(2), p, ident(2));
    let b7a = asm.edge(&id("B7a"), chain(two), false, l, ident(2), y, ident(2));
    let b7b = asm.edge(&id("B7b"), chain(two), false, y, ident(2), p, ident(2));

    let cusp_step = incl(&[0, 3], &[(1, 2)]); // two survivors around the middle pair

    // S-cell of A0 and T-cell of R
    let c2 = asm.face(
        &id("C2"),
        chain(four),
        a0,
        up_s.clone(),
        a0,
        up_s.clone(),
        vec![
            step(b1, 1, cusp_step.clone()),
            step(b3, 1, ident(4)),
            step(b0, 1, ident(4)),
        ],
        vec![],
    );
    // T-cell of A0 and T-cell of L
    let c1 = asm.face(
        &id("C1"),
        chain(four),
        a0,
        up_t.clone(),
        a0,
        up_t.clone(),
        vec![
            step(b2, 1, cusp_step.clone()),
            step(b4, 1, ident(4)),
            step(b0, 1, swap(4, 2, 3)),
        ],
        vec![],
    );
    // S-cell of P and S-cell of R
    let c3 = asm.face(
        &id("C3"),
        chain(four),
        p,
        up_s.clone(),
        p,
        up_s,
        vec![
            step(b6b, -1, cusp_step.clone()),
            step(b6a, -1, cusp_step.clone()),
            step(b3, 1, swap(4, 0, 1)),
            step(b5, 1, ident(4)),
        ],
        vec![],
    );
    // T-cell of P and S-cell of L
    let c4 = asm.face(
        &id("C4"),
        chain(four),
        p,
        up_t.clone(),
        p,
        up_t,
        vec![
            step(b5, -1, swap(4, 2, 3)),
            step(b4, -1, swap(4, 0, 1)),
            step(b7a, 1, cusp_step.clone()),
            step(b7b, 1, cusp_step),
        ],
        vec![],
    );

    asm.swallowtail(Swallowtail {
        vertex: a0,
        upward: true,
        k: 1,
        s_corner: Corner { cell: c2, position: 0 },
        t_corner: Corner { cell: c1, position: 0 },
        crossing_edge: b0,
        s_cusp_edge: b1,
        t_cusp_edge: b2,
    });
    asm.swallowtail(Swallowtail {
        vertex: r,
        upward: false,
        k: 0,
        s_corner: Corner { cell: c3, position: 2 },
        t_corner: Corner { cell: c2, position: 1 },
        crossing_edge: b3,
        s_cusp_edge: b6a,
        t_cusp_edge: b1,
    });
    asm.swallowtail(Swallowtail {
        vertex: l,
        upward: false,
        k: 0,
        s_corner: Corner { cell: c4, position: 2 },
        t_corner: Corner { cell: c1, position: 1 },
        crossing_edge: b4,
        s_cusp_edge: b7a,
        t_cusp_edge: b2,
    });
    asm.swallowtail(Swallowtail {
        vertex: p,
        upward: true,
        k: 1,
        s_corner: Corner { cell: c3, position: 0 },
        t_corner: Corner { cell: c4, position: 4 },
        crossing_edge: b5,
        s_cusp_edge: b6b,
        t_cusp_edge: b7b,
    });

    ConeIds { w, y, b1, b2, b6a, b6b, b7a, b7b }
}
