//! Chain homotopy diagrams: a fiber differential per 0-cell, a chain map per
//! 1-cell whose boundary morphisms intertwine it, and a homotopy per 2-cell
//! between its two boundary-path morphisms. Such a diagram packages exactly
//! the data of one augmentation, and the two views convert losslessly.

use serde_json::{Map, Value};

use crate::dga::Dga;
use crate::front::Front;
use crate::gf2::{is_chain_map, is_homotopy, BitMatrix};

pub const CHD_SCHEMA: &str = "chd/1";

/// One matrix per cell, indexed like the front's cell lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chd {
    /// Fiber differential of each 0-cell, strictly upper.
    pub d: Vec<BitMatrix>,
    /// Chain map of each 1-cell, unit upper.
    pub f: Vec<BitMatrix>,
    /// Homotopy of each 2-cell, strictly upper.
    pub k: Vec<BitMatrix>,
}

/// Reads the diagram of an augmentation off the generator matrices.
pub fn aug_to_chd(dga: &Dga, eps: &[bool]) -> Chd {
    let front = &dga.front;
    Chd {
        d: (0..front.vertices.len())
            .map(|v| dga.eval_matrix(&dga.vertex_matrix(v), eps))
            .collect(),
        f: (0..front.edges.len())
            .map(|e| {
                let n = front.edges[e].sheets.len();
                BitMatrix::identity(n).add(&dga.eval_matrix(&dga.edge_matrix(e), eps))
            })
            .collect(),
        k: (0..front.faces.len()).map(|f| dga.eval_matrix(&dga.face_matrix(f), eps)).collect(),
    }
}

/// Recovers the generator values from a diagram. Fails on shape mismatches
/// and on entries at positions that carry no generator, so a success means
/// the diagram is structurally a point of the algebra (its equations are
/// checked separately by `validate_chd`).
pub fn chd_to_aug(dga: &Dga, chd: &Chd) -> Result<Vec<bool>, String> {
    let front = &dga.front;
    let mut point = vec![false; dga.num_gens()];
    let mut read = |dim: u8, cell: usize, id: &str, n: usize, m: &BitMatrix, unit: bool| {
        if (m.rows(), m.cols()) != (n, n) {
            return Err(format!(
                "cell {id}: expected a {n}x{n} matrix, got {}x{}",
                m.rows(),
                m.cols()
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let expect_diag = unit && i == j;
                if i == j && m.get(i, j) != expect_diag {
                    return Err(format!("cell {id}: bad diagonal entry at {i}"));
                }
                if i == j || !m.get(i, j) {
                    continue;
                }
                match dga.gen_id(dim, cell, i, j) {
                    Some(g) => point[g as usize] = true,
                    None => {
                        return Err(format!("cell {id}: entry ({i},{j}) carries no generator"))
                    }
                }
            }
        }
        Ok(())
    };
    let (nv, ne, nf) = (front.vertices.len(), front.edges.len(), front.faces.len());
    if (chd.d.len(), chd.f.len(), chd.k.len()) != (nv, ne, nf) {
        return Err("diagram has the wrong number of cells".into());
    }
    for (v, m) in chd.d.iter().enumerate() {
        let vert = &front.vertices[v];
        read(0, v, &vert.id, vert.sheets.len(), m, false)?;
    }
    for (e, m) in chd.f.iter().enumerate() {
        let edge = &front.edges[e];
        read(1, e, &edge.id, edge.sheets.len(), m, true)?;
    }
    for (f, m) in chd.k.iter().enumerate() {
        let face = &front.faces[f];
        read(2, f, &face.id, face.sheets.len(), m, false)?;
    }
    Ok(point)
}

/// Checks every diagram condition, reporting all failures:
/// entries only at generators admissible for the grading period, each d
/// squaring to zero, each edge map intertwining the boundary differentials,
/// and each face homotopy interpolating its two boundary-path morphisms.
pub fn validate_chd(dga: &Dga, chd: &Chd, rho: u32) -> Result<(), Vec<String>> {
    let point = chd_to_aug(dga, chd).map_err(|e| vec![e])?;
    let front = &dga.front;
    let mut errs = Vec::new();
    for (g, &val) in point.iter().enumerate() {
        if val && !dga.admissible(g as u32, rho) {
            errs.push(format!(
                "generator {} has degree {}, not a multiple of {rho}",
                dga.gen_name(g as u32),
                dga.degree(g as u32)
            ));
        }
    }
    for (v, dv) in chd.d.iter().enumerate() {
        if !dv.mul(dv).is_zero() {
            errs.push(format!("vertex {}: differential does not square to zero", front.vertices[v].id));
        }
    }
    for (e, fe) in chd.f.iter().enumerate() {
        let edge = &front.edges[e];
        let n = edge.sheets.len();
        let minus = dga.eval_matrix(&dga.a_hat(edge.from, &edge.from_inc, n), &point);
        let plus = dga.eval_matrix(&dga.a_hat(edge.to, &edge.to_inc, n), &point);
        if !is_chain_map(fe, &minus, &plus) {
            errs.push(format!("edge {}: map fails to intertwine the differentials", edge.id));
        }
    }
    for (f, kf) in chd.k.iter().enumerate() {
        let face = &front.faces[f];
        let n = face.sheets.len();
        let d0 = dga.eval_matrix(&dga.a_hat(face.v0, &face.v0_inc, n), &point);
        let d1 = dga.eval_matrix(&dga.a_hat(face.v1, &face.v1_inc, n), &point);
        let (fa, fb) = dga.face_walks(f);
        let ga = dga.eval_matrix(&fa, &point);
        let gb = dga.eval_matrix(&fb, &point);
        if !is_homotopy(kf, &d0, &d1, &ga, &gb) {
            errs.push(format!("face {}: homotopy fails between the path morphisms", face.id));
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// Serializes a diagram with one row-string matrix per cell id.
pub fn chd_to_value(front: &Front, chd: &Chd) -> Value {
    let rows = |m: &BitMatrix| Value::from(m.row_strings());
    let keyed = |ids: Vec<&str>, ms: &[BitMatrix]| -> Value {
        let mut map = Map::new();
        for (id, m) in ids.into_iter().zip(ms) {
            map.insert(id.to_string(), rows(m));
        }
        Value::Object(map)
    };
    let mut root = Map::new();
    root.insert("schema".into(), CHD_SCHEMA.into());
    root.insert("d".into(), keyed(front.vertices.iter().map(|v| v.id.as_str()).collect(), &chd.d));
    root.insert("f".into(), keyed(front.edges.iter().map(|e| e.id.as_str()).collect(), &chd.f));
    root.insert("k".into(), keyed(front.faces.iter().map(|f| f.id.as_str()).collect(), &chd.k));
    Value::Object(root)
}

pub fn chd_from_value(front: &Front, value: &Value) -> Result<Chd, String> {
    if value.get("schema").and_then(Value::as_str) != Some(CHD_SCHEMA) {
        return Err(format!("expected schema {CHD_SCHEMA:?}"));
    }
    let matrix = |section: &str, id: &str, n: usize| -> Result<BitMatrix, String> {
        let rows = value
            .get(section)
            .and_then(|s| s.get(id))
            .and_then(Value::as_array)
            .ok_or_else(|| format!("missing matrix {section}[{id:?}]"))?;
        let rows: Vec<&str> = rows
            .iter()
            .map(|r| r.as_str().ok_or_else(|| format!("matrix {section}[{id:?}]: bad row")))
            .collect::<Result<_, _>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(format!("matrix {section}[{id:?}]: expected {n} rows of width {n}"));
        }
        if rows.iter().any(|r| r.chars().any(|c| c != '0' && c != '1')) {
            return Err(format!("matrix {section}[{id:?}]: rows must be 0/1 strings"));
        }
        Ok(BitMatrix::from_row_strings(&rows))
    };
    Ok(Chd {
        d: front
            .vertices
            .iter()
            .map(|v| matrix("d", &v.id, v.sheets.len()))
            .collect::<Result<_, _>>()?,
        f: front
            .edges
            .iter()
            .map(|e| matrix("f", &e.id, e.sheets.len()))
            .collect::<Result<_, _>>()?,
        k: front
            .faces
            .iter()
            .map(|f| matrix("k", &f.id, f.sheets.len()))
            .collect::<Result<_, _>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::search::SearchProblem;

    fn all_augs(dga: &Dga, rho: u32) -> Vec<Vec<bool>> {
        SearchProblem::new(dga, rho).list(1 << 12).unwrap()
    }

    #[test]
    fn roundtrip_and_validate_across_builders() {
        let fronts = [
            ("saucer", builders::flying_saucer()),
            ("torus", builders::torus_curve()),
            ("st-up", builders::swallowtail_disk(true)),
            ("st-down", builders::swallowtail_disk(false)),
            ("local", builders::tz_local()),
        ];
        for (name, front) in fronts {
            let dga = Dga::new(front).unwrap();
            let rho = if name == "local" { 0 } else { 1 };
            let augs = all_augs(&dga, rho);
            assert!(!augs.is_empty(), "{name}");
            for eps in &augs {
                let chd = aug_to_chd(&dga, eps);
                validate_chd(&dga, &chd, rho).unwrap_or_else(|errs| {
                    panic!("{name}: {}", errs.join("; "));
                });
                assert_eq!(&chd_to_aug(&dga, &chd).unwrap(), eps, "{name}");
            }
        }
    }

    #[test]
    fn conormal_point_differential_vanishes() {
        let dga = Dga::new(builders::conormal_unknot()).unwrap();
        let prob = SearchProblem::new(&dga, 0);
        let augs = prob.list(8).unwrap();
        assert_eq!(augs.len(), 1);
        let v = dga.front.vertex_index("A0").unwrap();
        for eps in &augs {
            let chd = aug_to_chd(&dga, eps);
            assert!(chd.d[v].is_zero());
            validate_chd(&dga, &chd, 0).unwrap();
        }
    }

    #[test]
    fn tampering_is_caught() {
        // flipping any single generator value flips diagram validity exactly
        // in step with the augmentation property
        for (name, front, must_break) in [
            ("torus", builders::torus_curve(), false),
            ("st-up", builders::swallowtail_disk(true), true),
        ] {
            let dga = Dga::new(front).unwrap();
            let eps = all_augs(&dga, 1).pop().unwrap();
            validate_chd(&dga, &aug_to_chd(&dga, &eps), 1).unwrap();
            let mut saw_invalid = false;
            for g in 0..dga.num_gens() {
                let mut flipped = eps.clone();
                flipped[g] = !flipped[g];
                let valid = validate_chd(&dga, &aug_to_chd(&dga, &flipped), 1).is_ok();
                assert_eq!(
                    valid,
                    dga.is_augmentation(&flipped),
                    "{name}: {}",
                    dga.gen_name(g as u32)
                );
                saw_invalid |= !valid;
            }
            assert!(!must_break || saw_invalid, "{name}: no flip was rejected");
        }

        // an entry at the crossing's incomparable pair carries no generator
        let dga = Dga::new(builders::torus_curve()).unwrap();
        let mut phantom = aug_to_chd(&dga, &all_augs(&dga, 1).pop().unwrap());
        let p = dga.front.vertex_index("P").unwrap();
        phantom.d[p].set(0, 1, true);
        assert!(chd_to_aug(&dga, &phantom).is_err());

        // the cap's homotopy entry has degree 2, inadmissible when grading
        // is exact
        let saucer = Dga::new(builders::flying_saucer()).unwrap();
        let hot = all_augs(&saucer, 1).into_iter().find(|e| e.iter().any(|&b| b)).unwrap();
        let errs = validate_chd(&saucer, &aug_to_chd(&saucer, &hot), 0).unwrap_err();
        assert!(errs.iter().any(|e| e.contains("degree")), "{errs:?}");
    }

    #[test]
    fn json_roundtrip() {
        let front = builders::swallowtail_disk(true);
        let dga = Dga::new(front.clone()).unwrap();
        for eps in all_augs(&dga, 1) {
            let chd = aug_to_chd(&dga, &eps);
            let value = chd_to_value(&front, &chd);
            assert_eq!(value["schema"], CHD_SCHEMA);
            assert_eq!(chd_from_value(&front, &value).unwrap(), chd);
        }
        let bad = serde_json::json!({"schema": "chd/2"});
        assert!(chd_from_value(&front, &bad).is_err());
    }
}
