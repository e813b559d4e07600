//! Serialization of front complexes (schema `cellular-front/1`).
//!
//! On disk, sheets are named by per-cell ids and the vertical order is given
//! as a relation list; in memory, sheets are kept by position in the canonical
//! linear extension (minimal-id tie-breaking — see [`linearize`]). Inclusion
//! records are stored in one flat array and matched to their appearances in
//! file order per (small, big) pair: a 1-cell consumes its initial then its
//! terminal vertex record; a 2-cell consumes its initial vertex, terminal
//! vertex, then one record per boundary step along path a, then path b.
//! Positions and sheet indices in the file are 1-based.

use super::{linearize, Corner, Edge, Face, Front, Inclusion, SheetTable, Step, Swallowtail, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const SCHEMA: &str = "cellular-front/1";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?} (this tool reads {SCHEMA:?})")]
    Schema(String),
    #[error("{0}")]
    Structure(String),
}

fn bad(msg: impl Into<String>) -> LoadError {
    LoadError::Structure(msg.into())
}

#[derive(Serialize, Deserialize)]
struct FileFront {
    schema: String,
    maslov_number: u32,
    cells: FileCells,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    inclusions: Vec<FileInclusion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    swallowtails: Vec<FileSwallowtail>,
}

#[derive(Serialize, Deserialize)]
struct FileCells {
    #[serde(default)]
    c0: Vec<FileCell0>,
    #[serde(default)]
    c1: Vec<FileCell1>,
    #[serde(default)]
    c2: Vec<FileCell2>,
}

#[derive(Serialize, Deserialize)]
struct FileSheet {
    id: u32,
    maslov: i64,
}

#[derive(Serialize, Deserialize)]
struct FileCell0 {
    id: String,
    sheets: Vec<FileSheet>,
    #[serde(default)]
    order: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct FileCell1 {
    id: String,
    sheets: Vec<FileSheet>,
    #[serde(default)]
    order: Vec<(u32, u32)>,
    #[serde(default)]
    crossing: bool,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
struct FileCell2 {
    id: String,
    sheets: Vec<FileSheet>,
    #[serde(default)]
    order: Vec<(u32, u32)>,
    v0: String,
    v1: String,
    #[serde(default)]
    path_a: Vec<FileStep>,
    #[serde(default)]
    path_b: Vec<FileStep>,
}

#[derive(Serialize, Deserialize)]
struct FileStep {
    edge: String,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct FileInclusion {
    small: String,
    big: String,
    map: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cusp_pairs: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct FileSwallowtail {
    vertex: String,
    direction: String,
    k: usize,
    s_corner: FileCorner,
    t_corner: FileCorner,
    crossing_edge: String,
    s_cusp_edge: String,
    t_cusp_edge: String,
}

#[derive(Serialize, Deserialize)]
struct FileCorner {
    cell: String,
    position: usize,
}

/// Reconstructs a sheet table from the id/Maslov list and the order relation.
fn build_table(cell: &str, sheets: &[FileSheet], order: &[(u32, u32)]) -> Result<SheetTable, LoadError> {
    if sheets.len() > 64 {
        return Err(bad(format!("cell {cell}: more than 64 sheets are not supported")));
    }
    let ids: Vec<u32> = sheets.iter().map(|s| s.id).collect();
    let sorted = linearize(&ids, order).map_err(|e| bad(format!("cell {cell}: {e}")))?;
    let n = sorted.len();
    let pos: BTreeMap<u32, usize> = sorted.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut mu = vec![0i64; n];
    for s in sheets {
        mu[pos[&s.id]] = s.maslov;
    }
    // Transitive closure of the relation, as reachability bitmasks.
    let mut below = vec![0u64; n];
    for &(u, l) in order {
        below[pos[&u]] |= 1 << pos[&l];
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            let mut mask = below[i];
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                mask |= below[j];
            }
            if mask != below[i] {
                below[i] = mask;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut incomparable = BTreeSet::new();
    for (i, &row) in below.iter().enumerate() {
        for j in i + 1..n {
            if row & (1 << j) == 0 {
                incomparable.insert((i, j));
            }
        }
    }
    Ok(SheetTable::from_parts(sorted, mu, incomparable))
}

/// Queues of inclusion records, keyed by (small, big), in file order.
struct IncPool {
    queues: BTreeMap<(String, String), VecDeque<FileInclusion>>,
}

impl IncPool {
    fn new(records: Vec<FileInclusion>) -> Self {
        let mut queues: BTreeMap<(String, String), VecDeque<FileInclusion>> = BTreeMap::new();
        for rec in records {
            queues.entry((rec.small.clone(), rec.big.clone())).or_default().push_back(rec);
        }
        IncPool { queues }
    }

    fn pop(&mut self, small: &str, big: &str, small_t: &SheetTable, big_t: &SheetTable) -> Result<Inclusion, LoadError> {
        let rec = self
            .queues
            .get_mut(&(small.to_string(), big.to_string()))
            .and_then(|q| q.pop_front())
            .ok_or_else(|| bad(format!("missing inclusion record for {small} into {big}")))?;
        convert_inclusion(&rec, small_t, big_t)
    }

    fn leftovers(&self) -> Option<String> {
        for ((s, b), q) in &self.queues {
            if !q.is_empty() {
                return Some(format!("unused inclusion record for {s} into {b}"));
            }
        }
        None
    }
}

fn convert_inclusion(rec: &FileInclusion, small: &SheetTable, big: &SheetTable) -> Result<Inclusion, LoadError> {
    let ctx = format!("inclusion of {} into {}", rec.small, rec.big);
    let mut map = vec![usize::MAX; small.len()];
    for (key, &target) in &rec.map {
        let sid: u32 = key.parse().map_err(|_| bad(format!("{ctx}: bad sheet id {key:?}")))?;
        let sp = small
            .position_of(sid)
            .ok_or_else(|| bad(format!("{ctx}: unknown small sheet {sid}")))?;
        let bp = big
            .position_of(target)
            .ok_or_else(|| bad(format!("{ctx}: unknown big sheet {target}")))?;
        if map[sp] != usize::MAX {
            return Err(bad(format!("{ctx}: sheet {sid} mapped twice")));
        }
        map[sp] = bp;
    }
    if let Some(sp) = map.iter().position(|&m| m == usize::MAX) {
        return Err(bad(format!("{ctx}: no image for sheet {}", small.id(sp))));
    }
    let mut cusps = Vec::with_capacity(rec.cusp_pairs.len());
    for &(u, l) in &rec.cusp_pairs {
        let up = big.position_of(u).ok_or_else(|| bad(format!("{ctx}: unknown cusp sheet {u}")))?;
        let lp = big.position_of(l).ok_or_else(|| bad(format!("{ctx}: unknown cusp sheet {l}")))?;
        cusps.push((up, lp));
    }
    Ok(Inclusion { map, cusps })
}

/// Parses a front complex from JSON text. This resolves every reference and
/// rejects malformed files; semantic rules are checked separately by
/// [`super::validate`].
pub fn load(text: &str) -> Result<Front, LoadError> {
    let file: FileFront = serde_json::from_str(text)?;
    if file.schema != SCHEMA {
        return Err(LoadError::Schema(file.schema));
    }

    let mut ids_seen = BTreeSet::new();
    let all_ids = file
        .cells
        .c0
        .iter()
        .map(|c| &c.id)
        .chain(file.cells.c1.iter().map(|c| &c.id))
        .chain(file.cells.c2.iter().map(|c| &c.id));
    for id in all_ids {
        if !ids_seen.insert(id.clone()) {
            return Err(bad(format!("cell id {id:?} is used more than once")));
        }
    }

    let mut vertices = Vec::with_capacity(file.cells.c0.len());
    for c in &file.cells.c0 {
        vertices.push(Vertex { id: c.id.clone(), sheets: build_table(&c.id, &c.sheets, &c.order)? });
    }
    let vertex_ix: BTreeMap<&str, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let find_vertex = |id: &str| -> Result<usize, LoadError> {
        vertex_ix.get(id).copied().ok_or_else(|| bad(format!("unknown 0-cell {id:?}")))
    };

    let mut pool = IncPool::new(file.inclusions);

    let mut edges = Vec::with_capacity(file.cells.c1.len());
    for c in &file.cells.c1 {
        let sheets = build_table(&c.id, &c.sheets, &c.order)?;
        let from = find_vertex(&c.from)?;
        let to = find_vertex(&c.to)?;
        let from_inc = pool.pop(&c.from, &c.id, &vertices[from].sheets, &sheets)?;
        let to_inc = pool.pop(&c.to, &c.id, &vertices[to].sheets, &sheets)?;
        edges.push(Edge { id: c.id.clone(), sheets, crossing: c.crossing, from, to, from_inc, to_inc });
    }
    let edge_ix: BTreeMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let find_edge = |id: &str| -> Result<usize, LoadError> {
        edge_ix.get(id).copied().ok_or_else(|| bad(format!("unknown 1-cell {id:?}")))
    };

    let mut faces = Vec::with_capacity(file.cells.c2.len());
    for c in &file.cells.c2 {
        let sheets = build_table(&c.id, &c.sheets, &c.order)?;
        let v0 = find_vertex(&c.v0)?;
        let v1 = find_vertex(&c.v1)?;
        let v0_inc = pool.pop(&c.v0, &c.id, &vertices[v0].sheets, &sheets)?;
        let v1_inc = pool.pop(&c.v1, &c.id, &vertices[v1].sheets, &sheets)?;
        let mut read_path = |steps: &[FileStep]| -> Result<Vec<Step>, LoadError> {
            let mut out = Vec::with_capacity(steps.len());
            for s in steps {
                if s.sign != 1 && s.sign != -1 {
                    return Err(bad(format!("2-cell {}: step sign must be 1 or -1", c.id)));
                }
                let edge = find_edge(&s.edge)?;
                let inc = pool.pop(&s.edge, &c.id, &edges[edge].sheets, &sheets)?;
                out.push(Step { edge, sign: s.sign, inc });
            }
            Ok(out)
        };
        let path_a = read_path(&c.path_a)?;
        let path_b = read_path(&c.path_b)?;
        faces.push(Face { id: c.id.clone(), sheets, v0, v1, v0_inc, v1_inc, path_a, path_b });
    }
    let face_ix: BTreeMap<&str, usize> = faces.iter().enumerate().map(|(i, f)| (f.id.as_str(), i)).collect();

    if let Some(msg) = pool.leftovers() {
        return Err(bad(msg));
    }

    let mut swallowtails = Vec::with_capacity(file.swallowtails.len());
    for s in &file.swallowtails {
        let upward = match s.direction.as_str() {
            "up" => true,
            "down" => false,
            other => return Err(bad(format!("swallowtail direction must be \"up\" or \"down\", got {other:?}"))),
        };
        if s.k == 0 {
            return Err(bad("swallowtail sheet index k is 1-based and must be positive".to_string()));
        }
        let corner = |c: &FileCorner| -> Result<Corner, LoadError> {
            let cell = face_ix
                .get(c.cell.as_str())
                .copied()
                .ok_or_else(|| bad(format!("unknown 2-cell {:?}", c.cell)))?;
            if c.position == 0 {
                return Err(bad("corner position is 1-based and must be positive".to_string()));
            }
            Ok(Corner { cell, position: c.position - 1 })
        };
        swallowtails.push(Swallowtail {
            vertex: find_vertex(&s.vertex)?,
            upward,
            k: s.k - 1,
            s_corner: corner(&s.s_corner)?,
            t_corner: corner(&s.t_corner)?,
            crossing_edge: find_edge(&s.crossing_edge)?,
            s_cusp_edge: find_edge(&s.s_cusp_edge)?,
            t_cusp_edge: find_edge(&s.t_cusp_edge)?,
        });
    }

    Ok(Front { maslov_number: file.maslov_number, vertices, edges, faces, swallowtails })
}

fn table_out(t: &SheetTable) -> (Vec<FileSheet>, Vec<(u32, u32)>) {
    let sheets = (0..t.len()).map(|p| FileSheet { id: t.id(p), maslov: t.mu(p) }).collect();
    let order = t.pairs().map(|(p, q)| (t.id(p), t.id(q))).collect();
    (sheets, order)
}

fn inclusion_out(small_id: &str, big_id: &str, small: &SheetTable, big: &SheetTable, inc: &Inclusion) -> FileInclusion {
    let map = inc
        .map
        .iter()
        .enumerate()
        .map(|(sp, &bp)| (small.id(sp).to_string(), big.id(bp)))
        .collect();
    let cusp_pairs = inc.cusps.iter().map(|&(u, l)| (big.id(u), big.id(l))).collect();
    FileInclusion { small: small_id.to_string(), big: big_id.to_string(), map, cusp_pairs }
}

fn file_front(front: &Front) -> FileFront {
    let mut inclusions = Vec::new();
    for e in &front.edges {
        let from = &front.vertices[e.from];
        let to = &front.vertices[e.to];
        inclusions.push(inclusion_out(&from.id, &e.id, &from.sheets, &e.sheets, &e.from_inc));
        inclusions.push(inclusion_out(&to.id, &e.id, &to.sheets, &e.sheets, &e.to_inc));
    }
    for f in &front.faces {
        let v0 = &front.vertices[f.v0];
        let v1 = &front.vertices[f.v1];
        inclusions.push(inclusion_out(&v0.id, &f.id, &v0.sheets, &f.sheets, &f.v0_inc));
        inclusions.push(inclusion_out(&v1.id, &f.id, &v1.sheets, &f.sheets, &f.v1_inc));
        for step in f.path_a.iter().chain(&f.path_b) {
            let e = &front.edges[step.edge];
            inclusions.push(inclusion_out(&e.id, &f.id, &e.sheets, &f.sheets, &step.inc));
        }
    }

    let c0 = front
        .vertices
        .iter()
        .map(|v| {
            let (sheets, order) = table_out(&v.sheets);
            FileCell0 { id: v.id.clone(), sheets, order }
        })
        .collect();
    let c1 = front
        .edges
        .iter()
        .map(|e| {
            let (sheets, order) = table_out(&e.sheets);
            FileCell1 {
                id: e.id.clone(),
                sheets,
                order,
                crossing: e.crossing,
                from: front.vertices[e.from].id.clone(),
                to: front.vertices[e.to].id.clone(),
            }
        })
        .collect();
    let c2 = front
        .faces
        .iter()
        .map(|f| {
            let (sheets, order) = table_out(&f.sheets);
            let path = |p: &[Step]| {
                p.iter()
                    .map(|s| FileStep { edge: front.edges[s.edge].id.clone(), sign: s.sign })
                    .collect()
            };
            FileCell2 {
                id: f.id.clone(),
                sheets,
                order,
                v0: front.vertices[f.v0].id.clone(),
                v1: front.vertices[f.v1].id.clone(),
                path_a: path(&f.path_a),
                path_b: path(&f.path_b),
            }
        })
        .collect();

    let swallowtails = front
        .swallowtails
        .iter()
        .map(|st| {
            let corner = |c: &Corner| FileCorner {
                cell: front.faces[c.cell].id.clone(),
                position: c.position + 1,
            };
            FileSwallowtail {
                vertex: front.vertices[st.vertex].id.clone(),
                direction: if st.upward { "up" } else { "down" }.to_string(),
                k: st.k + 1,
                s_corner: corner(&st.s_corner),
                t_corner: corner(&st.t_corner),
                crossing_edge: front.edges[st.crossing_edge].id.clone(),
                s_cusp_edge: front.edges[st.s_cusp_edge].id.clone(),
                t_cusp_edge: front.edges[st.t_cusp_edge].id.clone(),
            }
        })
        .collect();

    FileFront {
        schema: SCHEMA.to_string(),
        maslov_number: front.maslov_number,
        cells: FileCells { c0, c1, c2 },
        inclusions,
        swallowtails,
    }
}

/// Canonical JSON form of a front complex.
pub fn to_value(front: &Front) -> serde_json::Value {
    serde_json::to_value(file_front(front)).expect("front serialization cannot fail")
}

/// Canonical JSON text (pretty-printed, trailing newline, byte-deterministic).
pub fn save(front: &Front) -> String {
    let mut s = serde_json::to_string_pretty(&file_front(front)).expect("front serialization cannot fail");
    s.push('\n');
    s
}
