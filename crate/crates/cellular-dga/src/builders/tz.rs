//! Hyperelliptic-style fronts over a trivalent graph: per graph vertex a
//! four-sheeted disk with three upward swallowtails, glued along crossing
//! arcs over the graph edges, with two-sheeted face regions subdivided by a
//! hub-and-spokes pattern.

use super::graph::TrivalentGraph;
use super::{chain, crossed, ident, incl, step, swap, FrontAssembler};
use crate::front::{Corner, Front, Inclusion, Swallowtail};

/// Indices of the deltoid cells that the face gluing needs to reach.
pub(crate) struct Deltoid {
    pub a0: [usize; 3],
    pub m: [usize; 3],
    pub b1: [usize; 3],
    pub b2: [usize; 3],
}

fn perm(map: [usize; 4]) -> Inclusion {
    Inclusion::new(map.to_vec(), vec![])
}

/// The three-fold symmetric sheet maps of the central vertex into the six
/// surrounding 2-cells: alternate transpositions of the middle and lower
/// incomparable sheets, one per sector boundary, closing up after one turn.
fn sector_maps() -> ([[usize; 4]; 3], [[usize; 4]; 3]) {
    let mut left = [[0usize; 4]; 3];
    let mut right = [[0usize; 4]; 3];
    let mut cur = [0usize, 1, 2, 3];
    for i in 0..3 {
        left[i] = cur;
        let mut r = cur;
        for t in r.iter_mut() {
            *t = match *t {
                1 => 2,
                2 => 1,
                other => other,
            };
        }
        right[i] = r;
        for t in r.iter_mut() {
            *t = match *t {
                2 => 3,
                3 => 2,
                other => other,
            };
        }
        cur = r;
    }
    debug_assert_eq!(cur, [0, 1, 2, 3], "sector maps must close up");
    (left, right)
}

/// One four-sheeted disk with three upward swallowtail points on its rim.
///
/// Cells per sector `i`: the swallowtail point `A0.i`, the crossing-arc
/// endpoint `M.i`, crossing arcs `B3.i` (to the point) and `B4.i` (to `M.i`),
/// cusp arcs `B1.i`, `B2.i`, and the S/T-side 2-cells `C1.i`, `C2.i`. The
/// central vertex `A1` carries all four sheets.
pub(crate) fn deltoid(asm: &mut FrontAssembler, prefix: &str) -> Deltoid {
    let id = |base: &str, i: usize| format!("{prefix}{base}.{i}");
    let four = &[1i64, 0, 0, 0];
    let two = &[0i64, 0];
    let (left, right) = sector_maps();

    let a1 = asm.vertex(&format!("{prefix}A1"), crossed(four, &[(1, 2), (1, 3), (2, 3)]));
    let mut a0 = [0usize; 3];
    let mut m = [0usize; 3];
    for i in 0..3 {
        a0[i] = asm.vertex(&id("A0", i), chain(two));
        m[i] = asm.vertex(&id("M", i), crossed(two, &[(0, 1)]));
    }

    let t_form = incl(&[2, 3], &[(0, 1)]);
    let s_form = incl(&[1, 3], &[(0, 2)]);
    let mut b1 = [0usize; 3];
    let mut b2 = [0usize; 3];
    let mut b3 = [0usize; 3];
    let mut b4 = [0usize; 3];
    for i in 0..3 {
        b3[i] = asm.edge(
            &id("B3", i),
            crossed(four, &[(1, 2)]),
            true,
            a1,
            perm(right[i]),
            a0[i],
            t_form.clone(),
        );
        b4[i] = asm.edge(
            &id("B4", i),
            crossed(four, &[(2, 3)]),
            true,
            a1,
            perm(left[i]),
            m[i],
            t_form.clone(),
        );
        b1[i] = asm.edge(&id("B1", i), chain(two), false, m[i], ident(2), a0[i], ident(2));
        b2[i] = asm.edge(
            &id("B2", i),
            chain(two),
            false,
            m[(i + 1) % 3],
            swap(2, 0, 1),
            a0[i],
            ident(2),
        );
    }

    for i in 0..3 {
        let c1 = asm.face(
            &id("C1", i),
            chain(four),
            a1,
            perm(left[i]),
            a0[i],
            s_form.clone(),
            vec![step(b3[i], 1, swap(4, 1, 2))],
            vec![step(b4[i], 1, ident(4)), step(b1[i], 1, t_form.clone())],
        );
        let c2 = asm.face(
            &id("C2", i),
            chain(four),
            a1,
            perm(right[i]),
            a0[i],
            t_form.clone(),
            vec![step(b3[i], 1, ident(4))],
            vec![step(b4[(i + 1) % 3], 1, swap(4, 2, 3)), step(b2[i], 1, t_form.clone())],
        );
        asm.swallowtail(Swallowtail {
            vertex: a0[i],
            upward: true,
            k: 0,
            s_corner: Corner { cell: c1, position: 4 },
            t_corner: Corner { cell: c2, position: 4 },
            crossing_edge: b3[i],
            s_cusp_edge: b1[i],
            t_cusp_edge: b2[i],
        });
    }
    Deltoid { a0, m, b1, b2 }
}

/// The four-sheeted disk around one graph vertex, on its own.
pub fn tz_local() -> Front {
    let mut asm = FrontAssembler::new(0);
    deltoid(&mut asm, "");
    asm.finish()
}

/// The full front complex over a trivalent graph: one deltoid per vertex,
/// crossing arcs over the graph edges, and a hub-and-spokes subdivision of
/// each two-sheeted face region.
pub fn tz_complex(g: &TrivalentGraph) -> Result<Front, String> {
    let emb = g.embed()?;
    let mut asm = FrontAssembler::new(0);
    let two = &[0i64, 0];

    let delts: Vec<Deltoid> =
        (0..g.num_vertices).map(|v| deltoid(&mut asm, &format!("v{v}."))).collect();

    // crossing arcs over graph edges, oriented from each edge's first endpoint
    let mut ge = Vec::with_capacity(g.edges.len());
    for (j, &(u, v)) in g.edges.iter().enumerate() {
        let su = emb.slots[u].iter().position(|&h| h == (j, 0)).unwrap();
        let sv = emb.slots[v].iter().position(|&h| h == (j, 1)).unwrap();
        ge.push(asm.edge(
            &format!("e{j}"),
            crossed(two, &[(0, 1)]),
            true,
            delts[u].m[su],
            ident(2),
            delts[v].m[sv],
            swap(2, 0, 1),
        ));
    }

    for (f, walk) in emb.walks.iter().enumerate() {
        let corners = &emb.corners[f];
        let k = walk.len();
        let hub = asm.vertex(&format!("f{f}.hub"), chain(two));

        // three spokes per corner: to the arriving M, the point, the departing M
        let mut sp = Vec::with_capacity(3 * k);
        for (t, &(v, a)) in corners.iter().enumerate() {
            let name = |o: usize| format!("f{f}.sp{}", 3 * t + o);
            sp.push(asm.edge(&name(0), chain(two), false, hub, ident(2), delts[v].m[a], ident(2)));
            sp.push(asm.edge(&name(1), chain(two), false, hub, ident(2), delts[v].a0[a], ident(2)));
            sp.push(asm.edge(
                &name(2),
                chain(two),
                false,
                hub,
                ident(2),
                delts[v].m[(a + 1) % 3],
                swap(2, 0, 1),
            ));
        }

        for (t, &(v, a)) in corners.iter().enumerate() {
            let prev = (t + k - 1) % k;
            let (ej, fwd) = walk[t];
            let name = |o: usize| format!("f{f}.tri{}", 3 * t + o);

            // triangle across the crossing arc of walk step t
            let (pv, pa) = corners[prev];
            let dep_m = delts[pv].m[(pa + 1) % 3];
            let arr_m = delts[v].m[a];
            let (sign, map) = if fwd { (1, swap(2, 0, 1)) } else { (-1, ident(2)) };
            asm.face(
                &name(0),
                chain(two),
                dep_m,
                swap(2, 0, 1),
                arr_m,
                ident(2),
                vec![step(ge[ej], sign, map)],
                vec![step(sp[3 * prev + 2], -1, ident(2)), step(sp[3 * t], 1, ident(2))],
            );
            // triangle across the first cusp arc of the sector
            asm.face(
                &name(1),
                chain(two),
                delts[v].m[a],
                ident(2),
                delts[v].a0[a],
                ident(2),
                vec![step(delts[v].b1[a], 1, ident(2))],
                vec![step(sp[3 * t], -1, ident(2)), step(sp[3 * t + 1], 1, ident(2))],
            );
            // triangle across the second cusp arc, ending at the next M
            asm.face(
                &name(2),
                chain(two),
                delts[v].a0[a],
                ident(2),
                delts[v].m[(a + 1) % 3],
                swap(2, 0, 1),
                vec![step(delts[v].b2[a], -1, ident(2))],
                vec![step(sp[3 * t + 1], -1, ident(2)), step(sp[3 * t + 2], 1, ident(2))],
            );
        }
    }
    Ok(asm.finish())
}

#[cfg(test)]
mod tests {
    use super::super::graph;
    use super::*;

    #[test]
    fn theta_complex_is_a_sphere() {
        let front = tz_complex(&graph::theta()).unwrap();
        let chi =
            front.vertices.len() as i64 - front.edges.len() as i64 + front.faces.len() as i64;
        assert_eq!((front.vertices.len(), front.edges.len(), front.faces.len()), (17, 45, 30));
        assert_eq!(chi, 2);
        assert_eq!(front.swallowtails.len(), 6);
    }

    #[test]
    fn genus_one_complex_has_zero_euler_characteristic() {
        let front = tz_complex(&graph::torus_theta()).unwrap();
        let chi =
            front.vertices.len() as i64 - front.edges.len() as i64 + front.faces.len() as i64;
        assert_eq!(chi, 0);
    }
}
