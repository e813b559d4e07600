//! Structural validation of a front complex.
//!
//! `validate` checks every rule the rest of the crate relies on and returns
//! the full list of violations instead of stopping at the first one, so a
//! broken input file produces one actionable report.

use super::{CornerKind, Front, Inclusion, SheetTable};

/// Validates `front` and returns all rule violations (empty means valid).
pub fn validate(front: &Front) -> Vec<String> {
    let mut errors = Vec::new();
    check_cell_ids(front, &mut errors);
    check_tables(front, &mut errors);
    check_edges(front, &mut errors);
    check_faces(front, &mut errors);
    check_swallowtails(front, &mut errors);
    errors
}

fn check_cell_ids(front: &Front, errors: &mut Vec<String>) {
    let mut seen = std::collections::BTreeSet::new();
    let all = front
        .vertices
        .iter()
        .map(|v| &v.id)
        .chain(front.edges.iter().map(|e| &e.id))
        .chain(front.faces.iter().map(|f| &f.id));
    for id in all {
        if !seen.insert(id.clone()) {
            errors.push(format!("cell id {id:?} is used more than once"));
        }
    }
}

fn check_tables(front: &Front, errors: &mut Vec<String>) {
    for v in &front.vertices {
        check_table(&v.sheets, &v.id, errors);
    }
    for e in &front.edges {
        check_table(&e.sheets, &e.id, errors);
        let n = e.sheets.num_incomparable();
        if e.crossing && n != 1 {
            errors.push(format!(
                "1-cell {}: crossing pair must be incomparable (found {n} incomparable pairs, need exactly 1)",
                e.id
            ));
        }
        if !e.crossing && n != 0 {
            errors.push(format!(
                "1-cell {}: non-crossing 1-cell has {n} incomparable sheet pairs",
                e.id
            ));
        }
    }
    for f in &front.faces {
        check_table(&f.sheets, &f.id, errors);
        if f.sheets.num_incomparable() != 0 {
            errors.push(format!("2-cell {}: sheets must be totally ordered", f.id));
        }
    }
}

fn check_table(table: &SheetTable, cell: &str, errors: &mut Vec<String>) {
    if !table.is_transitive() {
        errors.push(format!("cell {cell}: sheet order is not transitive"));
    }
}

/// Congruence test for Maslov values under the front's modulus (0 = exact).
fn mu_eq(a: i64, b: i64, modulus: u32) -> bool {
    if modulus == 0 {
        a == b
    } else {
        (a - b).rem_euclid(modulus as i64) == 0
    }
}

/// Checks one inclusion of `small` into `big`.
///
/// `exempt_pair` marks a virtual cusp pair that is allowed to be non-adjacent
/// (the split pair of a swallowtail's S-side normal form).
fn check_inclusion(
    small: &SheetTable,
    big: &SheetTable,
    inc: &Inclusion,
    modulus: u32,
    exempt_pair: Option<(usize, usize)>,
    ctx: &str,
    errors: &mut Vec<String>,
) {
    if inc.map.len() != small.len() {
        errors.push(format!(
            "{ctx}: sheet map covers {} sheets but the small cell has {}",
            inc.map.len(),
            small.len()
        ));
        return;
    }
    let mut used = vec![false; big.len()];
    let mut ok = true;
    for (i, &t) in inc.map.iter().enumerate() {
        if t >= big.len() {
            errors.push(format!(
                "{ctx}: sheet {} maps to position {} out of range",
                small.id(i),
                t + 1
            ));
            ok = false;
            continue;
        }
        if used[t] {
            errors.push(format!("{ctx}: sheet map is not injective at position {}", t + 1));
            ok = false;
        }
        used[t] = true;
        if !mu_eq(small.mu(i), big.mu(t), modulus) {
            errors.push(format!(
                "{ctx}: Maslov potential of sheet {} is not preserved",
                small.id(i)
            ));
        }
    }
    for &(a, b) in &inc.cusps {
        if a >= big.len() || b >= big.len() || a == b {
            errors.push(format!("{ctx}: cusp pair ({}, {}) out of range", a + 1, b + 1));
            ok = false;
            continue;
        }
        for t in [a, b] {
            if used[t] {
                errors.push(format!(
                    "{ctx}: cusp sheet at position {} overlaps the image or another cusp",
                    t + 1
                ));
                ok = false;
            }
            used[t] = true;
        }
        if a >= b {
            errors.push(format!(
                "{ctx}: cusp pair ({}, {}) must list the upper sheet first",
                a + 1,
                b + 1
            ));
            continue;
        }
        if !mu_eq(small_mu_gap(big, a, b), 0, modulus) {
            errors.push(format!(
                "{ctx}: cusp pair ({}, {}) must have Maslov potentials differing by 1",
                a + 1,
                b + 1
            ));
        }
        if b != a + 1 && exempt_pair != Some((a, b)) {
            errors.push(format!(
                "{ctx}: cusp pair ({}, {}) is not adjacent",
                a + 1,
                b + 1
            ));
        }
        if !big.comparable(a, b) {
            errors.push(format!(
                "{ctx}: cusp sheets at positions ({}, {}) must be comparable",
                a + 1,
                b + 1
            ));
        }
    }
    if ok && used.iter().any(|&u| !u) {
        errors.push(format!(
            "{ctx}: image and cusp sheets do not cover the big cell"
        ));
    }
    // Order preservation on comparable pairs; incomparable pairs are free.
    for i in 0..small.len() {
        for j in 0..small.len() {
            if i == j || !small.comparable(i.min(j), i.max(j)) {
                continue;
            }
            let (hi, lo) = if i < j { (i, j) } else { (j, i) };
            let (a, b) = (inc.map[hi], inc.map[lo]);
            if a.max(b) >= big.len() {
                continue;
            }
            if !(a < b && big.comparable(a, b)) {
                errors.push(format!(
                    "{ctx}: sheet order of ({}, {}) is not preserved",
                    small.id(hi),
                    small.id(lo)
                ));
            }
        }
    }
}

/// Maslov gap `mu(a) - (mu(b) + 1)` for a candidate cusp pair in `big`.
fn small_mu_gap(big: &SheetTable, a: usize, b: usize) -> i64 {
    big.mu(a) - big.mu(b) - 1
}

/// Returns the exempt (possibly non-adjacent) cusp pair for a swallowtail
/// vertex inclusion, if `inc` matches one of the two normal forms.
///
/// `wanted` restricts which corner kinds are acceptable for this target cell.
fn st_form_exemption(
    front: &Front,
    vertex: usize,
    inc: &Inclusion,
    wanted: &[CornerKind],
    ctx: &str,
    errors: &mut Vec<String>,
) -> Option<(usize, usize)> {
    let st = front.swallowtail_at(vertex)?;
    let n_small = front.vertices[vertex].sheets.len();
    for &kind in wanted {
        if *inc == st.form(kind, n_small) {
            return inc.cusps.last().copied();
        }
    }
    errors.push(format!(
        "{ctx}: inclusion of swallowtail point {} does not match its normal form",
        front.vertices[vertex].id
    ));
    None
}

fn check_edges(front: &Front, errors: &mut Vec<String>) {
    for e in &front.edges {
        for (vx, inc, end) in [(e.from, &e.from_inc, "initial"), (e.to, &e.to_inc, "terminal")] {
            let ctx = format!("1-cell {} ({end} end)", e.id);
            let wanted = st_target_kinds(front, vx, e.id.as_str());
            let exempt = if wanted.is_empty() {
                None
            } else {
                st_form_exemption(front, vx, inc, &wanted, &ctx, errors)
            };
            check_inclusion(
                &front.vertices[vx].sheets,
                &e.sheets,
                inc,
                front.maslov_number,
                exempt,
                &ctx,
                errors,
            );
        }
    }
}

/// Which swallowtail normal forms are allowed for the inclusion of `vertex`
/// into the cell named `target`: S at the S-side cell, T at the T-side cell,
/// either at the crossing 1-cell, none elsewhere.
fn st_target_kinds(front: &Front, vertex: usize, target: &str) -> Vec<CornerKind> {
    let Some(st) = front.swallowtail_at(vertex) else {
        return Vec::new();
    };
    if front.edges[st.crossing_edge].id == target {
        vec![CornerKind::T, CornerKind::S]
    } else if front.faces[st.s_corner.cell].id == target {
        vec![CornerKind::S]
    } else if front.faces[st.t_corner.cell].id == target {
        vec![CornerKind::T]
    } else {
        Vec::new()
    }
}

fn check_faces(front: &Front, errors: &mut Vec<String>) {
    for f in &front.faces {
        for (vx, inc, end) in [(f.v0, &f.v0_inc, "initial"), (f.v1, &f.v1_inc, "terminal")] {
            let ctx = format!("2-cell {} ({end} vertex)", f.id);
            let wanted = st_target_kinds(front, vx, f.id.as_str());
            let exempt = if wanted.is_empty() {
                None
            } else {
                st_form_exemption(front, vx, inc, &wanted, &ctx, errors)
            };
            check_inclusion(
                &front.vertices[vx].sheets,
                &f.sheets,
                inc,
                front.maslov_number,
                exempt,
                &ctx,
                errors,
            );
        }
        for (name, path) in [("a", &f.path_a), ("b", &f.path_b)] {
            for (i, step) in path.iter().enumerate() {
                let ctx = format!("2-cell {} (path {name}, step {})", f.id, i + 1);
                if step.sign != 1 && step.sign != -1 {
                    errors.push(format!("{ctx}: step sign must be +1 or -1"));
                }
                check_inclusion(
                    &front.edges[step.edge].sheets,
                    &f.sheets,
                    &step.inc,
                    front.maslov_number,
                    None,
                    &ctx,
                    errors,
                );
            }
            match front.path_vertices(f.v0, path) {
                None => errors.push(format!(
                    "2-cell {}: path {name} is not a connected walk from its initial vertex",
                    f.id
                )),
                Some(walk) => {
                    if *walk.last().unwrap() != f.v1 {
                        errors.push(format!(
                            "2-cell {}: path {name} does not end at the terminal vertex",
                            f.id
                        ));
                    }
                }
            }
        }
    }
}

fn check_swallowtails(front: &Front, errors: &mut Vec<String>) {
    let mut by_vertex = std::collections::BTreeSet::new();
    let mut by_crossing = std::collections::BTreeSet::new();
    for st in &front.swallowtails {
        let vid = &front.vertices[st.vertex].id;
        if !by_vertex.insert(st.vertex) {
            errors.push(format!(
                "0-cell {vid} carries more than one swallowtail record"
            ));
        }
        if !by_crossing.insert(st.crossing_edge) {
            errors.push(format!(
                "1-cell {} is the crossing arc of more than one swallowtail",
                front.edges[st.crossing_edge].id
            ));
        }
        let n_small = front.vertices[st.vertex].sheets.len();
        let n = n_small + 2;
        let cr = &front.edges[st.crossing_edge];
        if st.k + 2 >= n {
            errors.push(format!(
                "swallowtail at {vid}: sheet index {} out of range for {n} inside sheets",
                st.k + 1
            ));
            continue;
        }
        if cr.sheets.len() != n {
            errors.push(format!(
                "swallowtail at {vid}: crossing arc {} has {} sheets, expected {n}",
                cr.id,
                cr.sheets.len()
            ));
            continue;
        }
        if !cr.crossing || cr.crossing_pair() != Some(st.crossing_pair()) {
            errors.push(format!(
                "swallowtail at {vid}: crossing arc {} does not cross at the expected sheet pair",
                cr.id
            ));
        }
        if cr.from != st.vertex && cr.to != st.vertex {
            errors.push(format!(
                "swallowtail at {vid}: crossing arc {} does not end at the swallowtail point",
                cr.id
            ));
        }
        if st.s_corner.cell == st.t_corner.cell {
            errors.push(format!(
                "swallowtail at {vid}: the two corner cells must be distinct"
            ));
        }
        for (corner, kind) in [(&st.s_corner, CornerKind::S), (&st.t_corner, CornerKind::T)] {
            let face = &front.faces[corner.cell];
            if face.sheets.len() != n {
                errors.push(format!(
                    "swallowtail at {vid}: corner 2-cell {} has {} sheets, expected {n}",
                    face.id,
                    face.sheets.len()
                ));
            }
            match front.vertex_at_position(corner.cell, corner.position) {
                None => errors.push(format!(
                    "swallowtail at {vid}: {kind} corner position {} is out of range in 2-cell {}",
                    corner.position,
                    face.id
                )),
                Some(v) if v != st.vertex => errors.push(format!(
                    "swallowtail at {vid}: {kind} corner of 2-cell {} does not sit at the swallowtail point",
                    face.id
                )),
                Some(_) => {}
            }
        }
        for (edge_ix, side) in [(st.s_cusp_edge, "S"), (st.t_cusp_edge, "T")] {
            let e = &front.edges[edge_ix];
            if e.sheets.len() != n_small {
                errors.push(format!(
                    "swallowtail at {vid}: {side}-side cusp arc {} has {} sheets, expected {n_small}",
                    e.id,
                    e.sheets.len()
                ));
            }
            if e.crossing {
                errors.push(format!(
                    "swallowtail at {vid}: {side}-side cusp arc {} cannot be a crossing arc",
                    e.id
                ));
            }
            if e.from != st.vertex && e.to != st.vertex {
                errors.push(format!(
                    "swallowtail at {vid}: {side}-side cusp arc {} does not end at the swallowtail point",
                    e.id
                ));
            }
        }
        check_crossing_step_maps(front, st, errors);
    }
}

/// The crossing arc's sheet order agrees with exactly one of the two corner
/// cells; walk steps into that cell must be position-identities and steps
/// into the other must swap the crossing pair.
fn check_crossing_step_maps(front: &Front, st: &super::Swallowtail, errors: &mut Vec<String>) {
    let vid = &front.vertices[st.vertex].id;
    let cr = &front.edges[st.crossing_edge];
    let inc = if cr.from == st.vertex {
        &cr.from_inc
    } else if cr.to == st.vertex {
        &cr.to_inc
    } else {
        return;
    };
    let n_small = front.vertices[st.vertex].sheets.len();
    let agree_cell = if *inc == st.form(CornerKind::S, n_small) {
        st.s_corner.cell
    } else if *inc == st.form(CornerKind::T, n_small) {
        st.t_corner.cell
    } else {
        return; // already reported as a normal-form mismatch
    };
    let n = n_small + 2;
    let identity: Vec<usize> = (0..n).collect();
    let (p, q) = st.crossing_pair();
    let mut swap = identity.clone();
    swap.swap(p, q);
    for cell in [st.s_corner.cell, st.t_corner.cell] {
        let face = &front.faces[cell];
        let expect = if cell == agree_cell { &identity } else { &swap };
        for path in [&face.path_a, &face.path_b] {
            for step in path {
                if step.edge == st.crossing_edge && &step.inc.map != expect {
                    errors.push(format!(
                        "swallowtail at {vid}: crossing arc {} enters 2-cell {} with the wrong sheet map",
                        cr.id, face.id
                    ));
                }
            }
        }
    }
}
