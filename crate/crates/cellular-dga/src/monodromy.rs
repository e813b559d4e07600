//! Fiber complexes of an augmentation, continuation maps along explicit loop
//! words, the induced monodromy on fiber homology, and the generating-family
//! obstruction report.
//!
//! A loop word walks the base surface as a sequence of moves: sliding along
//! a 1-cell, crossing a crossing arc or a cusp arc transversally, or passing
//! a swallowtail point through its S or T corner. Each move contributes a
//! matrix factor on the fiber; a concatenation maps to the factors composed
//! in reverse (the later leg acts after the earlier one), so the word is
//! read left to right while factors accumulate on the left. The machine
//! tracks the fiber dimension, the fiber differential, and — because the two
//! corner regions of a swallowtail can carry identical differentials — which
//! corner region it is currently inside. Each move's precondition is checked
//! against that state: a corner exit must match a prior entry, and while
//! inside a corner region the only other composable move is crossing the
//! swallowtail's own crossing arc, which switches corners. A closed word must
//! return to the initial state; the composite is then a chain map on the
//! basepoint fiber.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde_json::{Map, Value};

use crate::dga::Dga;
use crate::front::{CornerKind, Front, Inclusion};
use crate::gf2::{homology_dims, BitMatrix, GradedBasis, LinearSystem};
use crate::search::SearchProblem;

pub const LOOP_SCHEMA: &str = "loop/1";

/// One step of a loop word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Slide along a 1-cell, forward (+1) or backward (-1).
    Edge { edge: usize, sign: i8 },
    /// Cross a crossing arc transversally.
    Cross { edge: usize },
    /// Cross a cusp arc towards the side with two more sheets; the
    /// inclusion maps the current fiber into the larger one.
    CuspIn { inc: Inclusion },
    /// Cross a cusp arc towards the side with two fewer sheets; the
    /// inclusion maps the new fiber into the current one.
    CuspOut { inc: Inclusion },
    /// Pass a swallowtail point through the given corner of its 2-cell:
    /// `enter` steps from outside into the corner region, `!enter` steps
    /// back out. An exit only composes after an entry at the same point,
    /// through whichever corner the word is inside at that moment.
    St { vertex: usize, corner: CornerKind, enter: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basepoint {
    pub vertex: usize,
    /// Fibers are taken outside any swallowtail region; a basepoint at a
    /// swallowtail vertex must state this explicitly.
    pub region: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWord {
    pub name: String,
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopFile {
    pub basepoint: Basepoint,
    pub loops: Vec<LoopWord>,
}

/// The sheet complex over a 0-cell: graded basis and the differential an
/// augmentation induces on it.
pub fn fiber_complex(dga: &Dga, eps: &[bool], vertex: usize) -> (GradedBasis, BitMatrix) {
    let table = &dga.front.vertices[vertex].sheets;
    let n = table.len();
    let mut incomparable = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !table.comparable(i, j) {
                incomparable.push((i, j));
            }
        }
    }
    let basis = GradedBasis::with_incomparable(
        table.mus().to_vec(),
        dga.front.maslov_number,
        &incomparable,
    );
    (basis, dga.eval_matrix(&dga.vertex_matrix(vertex), eps))
}

/// Per-degree dimensions and total dimension of the fiber homology.
pub fn fiber_homology(dga: &Dga, eps: &[bool], vertex: usize) -> (BTreeMap<i64, usize>, usize) {
    let (basis, d) = fiber_complex(dga, eps, vertex);
    homology_dims(&d, &basis)
}

/// The loop read backwards: each move undone, in reverse order.
pub fn reverse_loop(word: &LoopWord) -> LoopWord {
    let moves = word
        .moves
        .iter()
        .rev()
        .map(|m| match m {
            Move::Edge { edge, sign } => Move::Edge { edge: *edge, sign: -sign },
            Move::Cross { edge } => Move::Cross { edge: *edge },
            Move::CuspIn { inc } => Move::CuspOut { inc: inc.clone() },
            Move::CuspOut { inc } => Move::CuspIn { inc: inc.clone() },
            Move::St { vertex, corner, enter } => {
                Move::St { vertex: *vertex, corner: *corner, enter: !enter }
            }
        })
        .collect();
    LoopWord { name: format!("{}^-1", word.name), moves }
}

/// Walks the machine over a word and returns the composite factor. Fails if
/// some move's precondition does not match the running state or the word
/// does not close up.
pub fn continuation(
    dga: &Dga,
    eps: &[bool],
    basepoint: &Basepoint,
    word: &LoopWord,
) -> Result<BitMatrix, String> {
    let mut machine = Machine::start(dga, eps, basepoint)?;
    for (i, mv) in word.moves.iter().enumerate() {
        machine.apply(i, mv).map_err(|e| format!("loop {:?}: {e}", word.name))?;
    }
    machine.finish().map_err(|e| format!("loop {:?}: {e}", word.name))
}

/// The action of a closed word on the basepoint fiber homology, in the
/// canonical reduced basis.
pub fn monodromy_on_homology(
    dga: &Dga,
    eps: &[bool],
    basepoint: &Basepoint,
    word: &LoopWord,
) -> Result<BitMatrix, String> {
    let phi = continuation(dga, eps, basepoint, word)?;
    let (_, d) = fiber_complex(dga, eps, basepoint.vertex);
    Ok(induced_on_homology(&phi, &d))
}

/// The map a chain map induces on homology. Representatives are kernel
/// vectors reduced against the image, echelonized, so the basis is
/// canonical for a fixed differential.
pub fn induced_on_homology(phi: &BitMatrix, d: &BitMatrix) -> BitMatrix {
    let n = d.rows();
    assert!(n <= 64 && phi.rows() == n && phi.cols() == n);
    // echelon of (vector, coordinates-over-representatives) pairs
    let mut ech: Vec<(u64, u64)> = Vec::new();
    let reduce = |mut v: u64, mut c: u64, ech: &[(u64, u64)]| {
        loop {
            let mut changed = false;
            for &(e, ec) in ech {
                let lead = 63 - e.leading_zeros();
                if v >> lead & 1 == 1 {
                    v ^= e;
                    c ^= ec;
                    changed = true;
                }
            }
            if !changed {
                return (v, c);
            }
        }
    };
    let col = |m: &BitMatrix, j: usize| -> u64 {
        (0..n).filter(|&i| m.get(i, j)).fold(0u64, |acc, i| acc | 1 << i)
    };
    for j in 0..n {
        let (v, c) = reduce(col(d, j), 0, &ech);
        if v != 0 {
            ech.push((v, c));
        }
    }
    let mut sys = LinearSystem::new(n);
    for i in 0..n {
        sys.add_equation((0..n).filter(|&j| d.get(i, j)), false);
    }
    let mut reps: Vec<u64> = Vec::new();
    for k in sys.kernel_basis().expect("homogeneous system") {
        let kv = k.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |acc, (i, _)| acc | 1 << i);
        let (v, _) = reduce(kv, 0, &ech);
        if v != 0 {
            ech.push((v, 1 << reps.len()));
            reps.push(v);
        }
    }
    let h = reps.len();
    let mut out = BitMatrix::zero(h, h);
    for (j, &r) in reps.iter().enumerate() {
        let (rem, coords) = reduce(phi.apply(r), 0, &ech);
        assert_eq!(rem, 0, "a chain map sends cycles to cycles");
        for i in 0..h {
            if coords >> i & 1 == 1 {
                out.set(i, j, true);
            }
        }
    }
    out
}

// ---- the move machine ----

struct Machine<'a> {
    dga: &'a Dga,
    eps: &'a [bool],
    init: BitMatrix,
    dim: usize,
    d: BitMatrix,
    phi: BitMatrix,
    /// Which swallowtail corner region the walk is currently inside, if any.
    /// The differential alone cannot tell the two corners apart when their
    /// normal forms evaluate equally, so this is part of the state.
    inside: Option<(usize, CornerKind)>,
}

impl<'a> Machine<'a> {
    fn start(dga: &'a Dga, eps: &'a [bool], basepoint: &Basepoint) -> Result<Self, String> {
        if basepoint.region != "outside" {
            return Err(format!("unsupported basepoint region {:?}", basepoint.region));
        }
        let n = dga.front.vertices[basepoint.vertex].sheets.len();
        let d = dga.eval_matrix(&dga.vertex_matrix(basepoint.vertex), eps);
        Ok(Machine {
            dga,
            eps,
            init: d.clone(),
            dim: n,
            d,
            phi: BitMatrix::identity(n),
            inside: None,
        })
    }

    fn a_hat(&self, vertex: usize, inc: &Inclusion, n: usize) -> BitMatrix {
        self.dga.eval_matrix(&self.dga.a_hat(vertex, inc, n), self.eps)
    }

    fn expect(&self, i: usize, what: &str, n: usize, d: &BitMatrix) -> Result<(), String> {
        if self.dim != n {
            return Err(format!("move {i}: fiber has {} sheets, {what} has {n}", self.dim));
        }
        if &self.d != d {
            return Err(format!("move {i}: fiber differential does not match {what}"));
        }
        Ok(())
    }

    fn apply(&mut self, i: usize, mv: &Move) -> Result<(), String> {
        let front = &self.dga.front;
        if let Some((v, side)) = self.inside {
            let st = front.swallowtail_at(v).expect("tracked swallowtail");
            let label = &front.vertices[v].id;
            match mv {
                Move::Cross { edge } if *edge == st.crossing_edge => {
                    // switch to the other corner region across the crossing arc
                    let (p, q) = st.crossing_pair();
                    let q_mat = BitMatrix::transposition(self.dim, p, q);
                    let other = match side {
                        CornerKind::S => CornerKind::T,
                        CornerKind::T => CornerKind::S,
                    };
                    let ns = front.vertices[v].sheets.len();
                    self.d = q_mat.mul(&self.d).mul(&q_mat);
                    assert_eq!(
                        self.d,
                        self.a_hat(v, &st.form(other, ns), ns + 2),
                        "crossing the arc inside swallowtail {label} must land on the other corner"
                    );
                    self.inside = Some((v, other));
                    self.phi = q_mat.mul(&self.phi);
                    return Ok(());
                }
                Move::St { vertex, corner, enter: false }
                    if *vertex == v && *corner == side =>
                {
                    // handled below; clears the region flag there
                }
                Move::St { vertex, corner, enter: false } if *vertex == v => {
                    return Err(format!(
                        "move {i}: inside the {side:?} corner of swallowtail {label}; \
                         cross its crossing arc before exiting through {corner:?}"
                    ));
                }
                _ => {
                    return Err(format!(
                        "move {i}: inside the {side:?} corner of swallowtail {label}; \
                         only that exit or its crossing arc composes"
                    ));
                }
            }
        }
        match mv {
            Move::Edge { edge, sign } => {
                let e = front
                    .edges
                    .get(*edge)
                    .ok_or_else(|| format!("move {i}: no such 1-cell"))?;
                let n = e.sheets.len();
                let f = BitMatrix::identity(n)
                    .add(&self.dga.eval_matrix(&self.dga.edge_matrix(*edge), self.eps));
                let from = self.a_hat(e.from, &e.from_inc, n);
                let to = self.a_hat(e.to, &e.to_inc, n);
                let (pre, post, factor) = if *sign >= 0 {
                    (from, to, f)
                } else {
                    (to, from, f.unipotent_inverse())
                };
                self.expect(i, &format!("the start of 1-cell {}", e.id), n, &pre)?;
                self.phi = factor.mul(&self.phi);
                self.d = post;
            }
            Move::Cross { edge } => {
                let e = front
                    .edges
                    .get(*edge)
                    .ok_or_else(|| format!("move {i}: no such 1-cell"))?;
                let (p, q) = e
                    .crossing_pair()
                    .ok_or_else(|| format!("move {i}: 1-cell {} is not a crossing arc", e.id))?;
                let n = e.sheets.len();
                if self.dim != n {
                    return Err(format!(
                        "move {i}: fiber has {} sheets, crossing arc {} has {n}",
                        self.dim, e.id
                    ));
                }
                let q_mat = BitMatrix::transposition(n, p, q);
                self.d = q_mat.mul(&self.d).mul(&q_mat);
                self.phi = q_mat.mul(&self.phi);
            }
            Move::CuspIn { inc } => {
                let (j, p, pair) = cusp_matrices(inc).map_err(|e| format!("move {i}: {e}"))?;
                let (ns, nb) = (j.cols(), j.rows());
                if self.dim != ns {
                    return Err(format!("move {i}: cusp map expects {ns} sheets"));
                }
                self.d = j
                    .mul(&self.d)
                    .mul(&p)
                    .add(&BitMatrix::elem(nb, nb, pair.0, pair.1));
                self.dim = nb;
                self.phi = j.mul(&self.phi);
            }
            Move::CuspOut { inc } => {
                let (j, p, pair) = cusp_matrices(inc).map_err(|e| format!("move {i}: {e}"))?;
                let (ns, nb) = (j.cols(), j.rows());
                if self.dim != nb {
                    return Err(format!("move {i}: cusp map expects {nb} sheets"));
                }
                let small = p.mul(&self.d).mul(&j);
                let resplit =
                    j.mul(&small).mul(&p).add(&BitMatrix::elem(nb, nb, pair.0, pair.1));
                if resplit != self.d {
                    return Err(format!(
                        "move {i}: fiber differential does not split off the cusp pair"
                    ));
                }
                self.d = small;
                self.dim = ns;
                self.phi = p.mul(&self.phi);
            }
            Move::St { vertex, corner, enter } => {
                let st = front
                    .swallowtail_at(*vertex)
                    .ok_or_else(|| format!("move {i}: 0-cell is not a swallowtail point"))?;
                let ns = front.vertices[*vertex].sheets.len();
                let nb = ns + 2;
                let h = self.dga.eval_matrix(&self.dga.corner_factor(st, *corner), self.eps);
                // the outside fiber persists past the two merging sheets
                let (m0, _) = st.merging_pair();
                let mut j = BitMatrix::zero(nb, ns);
                for s in 0..ns {
                    j.set(if s < m0 { s } else { s + 2 }, s, true);
                }
                let p = j.transpose();
                let d_small =
                    self.dga.eval_matrix(&self.dga.vertex_matrix(*vertex), self.eps);
                let d_big = self.a_hat(*vertex, &st.form(*corner, ns), nb);
                let label = &front.vertices[*vertex].id;
                if *enter {
                    self.expect(i, &format!("the outside of swallowtail {label}"), ns, &d_small)?;
                    self.phi = h.mul(&j).mul(&self.phi);
                    self.dim = nb;
                    self.d = d_big;
                    self.inside = Some((*vertex, *corner));
                } else {
                    if self.inside != Some((*vertex, *corner)) {
                        return Err(format!(
                            "move {i}: exit from swallowtail {label} without a matching entry"
                        ));
                    }
                    self.expect(i, &format!("the {corner:?} side of swallowtail {label}"), nb, &d_big)?;
                    self.phi = p.mul(&h).mul(&self.phi);
                    self.dim = ns;
                    self.d = d_small;
                    self.inside = None;
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<BitMatrix, String> {
        if self.inside.is_some() {
            return Err("word ends inside a swallowtail corner region".into());
        }
        if self.dim != self.init.rows() || self.d != self.init {
            return Err("word does not return to the basepoint fiber".into());
        }
        // composed from per-move chain maps, so this cannot fail
        assert!(
            self.init.mul(&self.phi) == self.phi.mul(&self.init),
            "composite must be a chain map"
        );
        Ok(self.phi)
    }
}

/// Inclusion and projection matrices of a cusp move, plus the cusp pair.
fn cusp_matrices(inc: &Inclusion) -> Result<(BitMatrix, BitMatrix, (usize, usize)), String> {
    if inc.cusps.len() != 1 {
        return Err("cusp move needs exactly one cusp pair".into());
    }
    let pair = inc.cusps[0];
    if pair.1 != pair.0 + 1 {
        return Err("cusp pair must be adjacent".into());
    }
    let ns = inc.map.len();
    let nb = ns + 2;
    let mut seen = vec![false; nb];
    seen[pair.0] = true;
    seen[pair.1] = true;
    for &t in &inc.map {
        if t >= nb || seen[t] {
            return Err("cusp map must embed the remaining sheets".into());
        }
        seen[t] = true;
    }
    let mut j = BitMatrix::zero(nb, ns);
    for (s, &t) in inc.map.iter().enumerate() {
        j.set(t, s, true);
    }
    Ok((j.clone(), j.transpose(), pair))
}

// ---- random walks for property tests ----

/// Deterministic splitmix64 stream for reproducible random words.
pub struct LoopRng(u64);

impl LoopRng {
    pub fn new(seed: u64) -> Self {
        LoopRng(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Samples a closed word at the basepoint: a random prefix of applicable
/// moves followed by its own reverse, so the result always returns.
pub fn random_loop(
    dga: &Dga,
    eps: &[bool],
    basepoint: &Basepoint,
    prefix_len: usize,
    rng: &mut LoopRng,
) -> LoopWord {
    let mut machine = Machine::start(dga, eps, basepoint).expect("valid basepoint");
    let front = &dga.front;
    let mut prefix: Vec<Move> = Vec::new();
    // synthetic cusp entries not yet undone; an exit only reverses the latest
    let mut pockets: Vec<Inclusion> = Vec::new();
    for _ in 0..prefix_len {
        let mut options: Vec<Move> = Vec::new();
        let synthetic_cusp = |rng: &mut LoopRng, dim: usize| {
            let p = rng.below(dim + 1);
            let map: Vec<usize> = (0..dim).map(|s| if s < p { s } else { s + 2 }).collect();
            Move::CuspIn { inc: Inclusion::new(map, vec![(p, p + 1)]) }
        };
        if let Some((v, side)) = machine.inside {
            let st = front.swallowtail_at(v).expect("tracked swallowtail");
            options.push(Move::St { vertex: v, corner: side, enter: false });
            options.push(Move::Cross { edge: st.crossing_edge });
        } else if let Some(inc) = pockets.last() {
            options.push(Move::CuspOut { inc: inc.clone() });
            if machine.dim + 2 <= 10 {
                options.push(synthetic_cusp(rng, machine.dim));
            }
        } else {
            for (e, edge) in front.edges.iter().enumerate() {
                let n = edge.sheets.len();
                if n != machine.dim {
                    continue;
                }
                if machine.d == machine.a_hat(edge.from, &edge.from_inc, n) {
                    options.push(Move::Edge { edge: e, sign: 1 });
                }
                if machine.d == machine.a_hat(edge.to, &edge.to_inc, n) {
                    options.push(Move::Edge { edge: e, sign: -1 });
                }
                if edge.crossing {
                    options.push(Move::Cross { edge: e });
                }
            }
            for st in &front.swallowtails {
                let ns = front.vertices[st.vertex].sheets.len();
                let d_small = dga.eval_matrix(&dga.vertex_matrix(st.vertex), eps);
                if machine.dim == ns && machine.d == d_small {
                    for corner in [CornerKind::S, CornerKind::T] {
                        options.push(Move::St { vertex: st.vertex, corner, enter: true });
                    }
                }
            }
            if machine.dim + 2 <= 10 {
                options.push(synthetic_cusp(rng, machine.dim));
            }
        }
        let mv = options[rng.below(options.len())].clone();
        match &mv {
            Move::CuspIn { inc } => pockets.push(inc.clone()),
            Move::CuspOut { .. } => {
                pockets.pop();
            }
            _ => {}
        }
        machine.apply(prefix.len(), &mv).expect("sampled moves are applicable");
        prefix.push(mv);
    }
    let mut moves = prefix.clone();
    moves.extend(reverse_loop(&LoopWord { name: String::new(), moves: prefix }).moves);
    LoopWord { name: "random".into(), moves }
}

// ---- obstruction report ----

#[derive(Clone, Debug)]
pub struct AugRow {
    pub index: usize,
    pub fiber_dims: BTreeMap<i64, usize>,
    pub fiber_total: usize,
    /// Per loop: whether the homology monodromy is the identity; `None` when
    /// the word is not composable for this augmentation.
    pub loop_trivial: Vec<Option<bool>>,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub basepoint: String,
    pub rho: u32,
    pub augmentation_count: BigUint,
    pub augmentations_exist: bool,
    pub loop_names: Vec<String>,
    /// True iff every augmentation has nonzero fiber homology.
    pub obstructs_linear_at_infinity: bool,
    /// True iff every augmentation moves some supplied loop away from the
    /// identity on fiber homology.
    pub obstructs_trivial_bundle: bool,
    /// One row per augmentation when few enough to enumerate.
    pub rows: Vec<AugRow>,
    pub coverage_note: String,
}

const CLASS_VAR_CAP: usize = 20;
const ROW_CAP: usize = 64;

/// Evaluates both generating-family obstructions exactly, universally over
/// all augmentations: the flags depend only on the generators feeding the
/// basepoint differential and the loop factors, so those are enumerated as
/// classes and each class is checked for extendability to an augmentation.
pub fn obstruction_report(
    dga: &Dga,
    rho: u32,
    file: &LoopFile,
) -> Result<ObstructionReport, String> {
    let front = &dga.front;
    let base = file.basepoint.vertex;
    let count = SearchProblem::new(dga, rho).count();
    let exists = count > BigUint::ZERO;

    let admissible_a_vars = |vertex: usize| -> Vec<u32> {
        dga.gens()
            .filter(|(g, info)| {
                info.dim == 0 && info.cell == vertex && dga.admissible(*g, rho)
            })
            .map(|(g, _)| g)
            .collect()
    };

    // classes with a chance of zero fiber homology
    let base_vars = admissible_a_vars(base);
    if base_vars.len() > CLASS_VAR_CAP {
        return Err("too many basepoint generators to classify".into());
    }
    let mut obstructs_linear = true;
    'linear: for mask in 0u64..1 << base_vars.len() {
        let mut point = vec![false; dga.num_gens()];
        for (i, &g) in base_vars.iter().enumerate() {
            point[g as usize] = mask >> i & 1 == 1;
        }
        let (_, total) = fiber_homology(dga, &point, base);
        if total == 0 {
            let mut prob = SearchProblem::new(dga, rho);
            for (i, &g) in base_vars.iter().enumerate() {
                prob.pin(g, mask >> i & 1 == 1);
            }
            if prob.exists() {
                obstructs_linear = false;
                break 'linear;
            }
        }
    }

    // classes over every generator any loop factor can read
    let mut affect: BTreeSet<u32> = base_vars.iter().copied().collect();
    for word in &file.loops {
        for mv in &word.moves {
            match mv {
                Move::Edge { edge, .. } | Move::Cross { edge } => {
                    let e = front.edges.get(*edge).ok_or("loop references a missing 1-cell")?;
                    affect.extend(
                        dga.gens()
                            .filter(|(g, info)| {
                                (info.dim == 1 && info.cell == *edge
                                    || info.dim == 0 && (info.cell == e.from || info.cell == e.to))
                                    && dga.admissible(*g, rho)
                            })
                            .map(|(g, _)| g),
                    );
                }
                Move::St { vertex, .. } => affect.extend(admissible_a_vars(*vertex)),
                Move::CuspIn { .. } | Move::CuspOut { .. } => {}
            }
        }
    }
    let affect: Vec<u32> = affect.into_iter().collect();
    if affect.len() > CLASS_VAR_CAP {
        return Err("too many loop-relevant generators to classify".into());
    }
    let mut obstructs_bundle = true;
    'bundle: for mask in 0u64..1 << affect.len() {
        let mut point = vec![false; dga.num_gens()];
        for (i, &g) in affect.iter().enumerate() {
            point[g as usize] = mask >> i & 1 == 1;
        }
        let some_nontrivial = file.loops.iter().any(|w| {
            monodromy_on_homology(dga, &point, &file.basepoint, w)
                .map(|m| m != BitMatrix::identity(m.rows()))
                .unwrap_or(false)
        });
        if !some_nontrivial {
            let mut prob = SearchProblem::new(dga, rho);
            for (i, &g) in affect.iter().enumerate() {
                prob.pin(g, mask >> i & 1 == 1);
            }
            if prob.exists() {
                obstructs_bundle = false;
                break 'bundle;
            }
        }
    }

    let mut rows = Vec::new();
    if count <= BigUint::from(ROW_CAP) {
        for (index, eps) in SearchProblem::new(dga, rho)
            .list(ROW_CAP)
            .expect("count is within the row cap")
            .iter()
            .enumerate()
        {
            let (fiber_dims, fiber_total) = fiber_homology(dga, eps, base);
            let loop_trivial = file
                .loops
                .iter()
                .map(|w| {
                    monodromy_on_homology(dga, eps, &file.basepoint, w)
                        .ok()
                        .map(|m| m == BitMatrix::identity(m.rows()))
                })
                .collect();
            rows.push(AugRow { index, fiber_dims, fiber_total, loop_trivial });
        }
    }

    Ok(ObstructionReport {
        basepoint: front.vertices[base].id.clone(),
        rho,
        augmentation_count: count,
        augmentations_exist: exists,
        loop_names: file.loops.iter().map(|w| w.name.clone()).collect(),
        obstructs_linear_at_infinity: obstructs_linear,
        obstructs_trivial_bundle: obstructs_bundle,
        rows,
        coverage_note: "loop coverage is caller-supplied; loops not listed here cannot \
                        certify a trivial bundle"
            .into(),
    })
}

pub fn report_to_value(report: &ObstructionReport) -> Value {
    let mut root = Map::new();
    root.insert("basepoint".into(), report.basepoint.clone().into());
    root.insert("rho".into(), report.rho.into());
    root.insert("augmentation_count".into(), report.augmentation_count.to_string().into());
    root.insert("augmentations_exist".into(), report.augmentations_exist.into());
    root.insert(
        "loops".into(),
        Value::from(report.loop_names.iter().map(|n| Value::from(n.as_str())).collect::<Vec<_>>()),
    );
    root.insert(
        "obstructs_linear_at_infinity".into(),
        report.obstructs_linear_at_infinity.into(),
    );
    root.insert("obstructs_trivial_bundle".into(), report.obstructs_trivial_bundle.into());
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("augmentation".into(), r.index.into());
            let dims: Map<String, Value> = r
                .fiber_dims
                .iter()
                .filter(|(_, &n)| n > 0)
                .map(|(deg, &n)| (deg.to_string(), Value::from(n)))
                .collect();
            row.insert("fiber_homology".into(), Value::Object(dims));
            row.insert("fiber_total".into(), r.fiber_total.into());
            row.insert(
                "loop_trivial".into(),
                Value::from(
                    r.loop_trivial
                        .iter()
                        .map(|t| t.map_or(Value::Null, Value::from))
                        .collect::<Vec<_>>(),
                ),
            );
            Value::Object(row)
        })
        .collect();
    root.insert("per_augmentation".into(), Value::from(rows));
    root.insert("note".into(), report.coverage_note.clone().into());
    Value::Object(root)
}

// ---- loop-file JSON ----

pub fn loops_to_value(front: &Front, file: &LoopFile) -> Value {
    let mv = |m: &Move| -> Value {
        let mut rec = Map::new();
        match m {
            Move::Edge { edge, sign } => {
                rec.insert("move".into(), "edge".into());
                rec.insert("edge".into(), front.edges[*edge].id.clone().into());
                rec.insert("sign".into(), i64::from(*sign).into());
            }
            Move::Cross { edge } => {
                rec.insert("move".into(), "cross".into());
                rec.insert("edge".into(), front.edges[*edge].id.clone().into());
            }
            Move::CuspIn { inc } | Move::CuspOut { inc } => {
                let kind = if matches!(m, Move::CuspIn { .. }) { "cusp_in" } else { "cusp_out" };
                rec.insert("move".into(), kind.into());
                rec.insert(
                    "map".into(),
                    Value::from(inc.map.iter().map(|&t| t as u64).collect::<Vec<_>>()),
                );
                rec.insert(
                    "pair".into(),
                    Value::from(vec![inc.cusps[0].0 as u64, inc.cusps[0].1 as u64]),
                );
            }
            Move::St { vertex, corner, enter } => {
                rec.insert("move".into(), "st".into());
                rec.insert("vertex".into(), front.vertices[*vertex].id.clone().into());
                rec.insert(
                    "corner".into(),
                    match corner {
                        CornerKind::S => "S",
                        CornerKind::T => "T",
                    }
                    .into(),
                );
                rec.insert("direction".into(), if *enter { "enter" } else { "exit" }.into());
            }
        }
        Value::Object(rec)
    };
    let loops: Vec<Value> = file
        .loops
        .iter()
        .map(|w| {
            let mut rec = Map::new();
            rec.insert("name".into(), w.name.clone().into());
            rec.insert("moves".into(), Value::from(w.moves.iter().map(mv).collect::<Vec<_>>()));
            Value::Object(rec)
        })
        .collect();
    let mut bp = Map::new();
    bp.insert("vertex".into(), front.vertices[file.basepoint.vertex].id.clone().into());
    bp.insert("region".into(), file.basepoint.region.clone().into());
    let mut root = Map::new();
    root.insert("schema".into(), LOOP_SCHEMA.into());
    root.insert("basepoint".into(), Value::Object(bp));
    root.insert("loops".into(), Value::from(loops));
    Value::Object(root)
}

pub fn loops_from_value(front: &Front, value: &Value) -> Result<LoopFile, String> {
    if value.get("schema").and_then(Value::as_str) != Some(LOOP_SCHEMA) {
        return Err(format!("expected schema {LOOP_SCHEMA:?}"));
    }
    let bp = value.get("basepoint").ok_or("missing basepoint")?;
    let vid = bp.get("vertex").and_then(Value::as_str).ok_or("basepoint needs a vertex id")?;
    let vertex =
        front.vertex_index(vid).ok_or_else(|| format!("no 0-cell named {vid:?}"))?;
    let region = match bp.get("region") {
        Some(r) => r.as_str().ok_or("basepoint region must be a string")?.to_string(),
        None if front.swallowtail_at(vertex).is_some() => {
            return Err(format!(
                "basepoint {vid:?} is a swallowtail point; state its region explicitly"
            ))
        }
        None => "outside".to_string(),
    };
    let edge_of = |rec: &Value| -> Result<usize, String> {
        let id = rec.get("edge").and_then(Value::as_str).ok_or("move needs an edge id")?;
        front.edge_index(id).ok_or_else(|| format!("no 1-cell named {id:?}"))
    };
    let inc_of = |rec: &Value| -> Result<Inclusion, String> {
        let map = rec
            .get("map")
            .and_then(Value::as_array)
            .ok_or("cusp move needs a map")?
            .iter()
            .map(|v| v.as_u64().map(|t| t as usize).ok_or("bad map entry"))
            .collect::<Result<Vec<_>, _>>()?;
        let pair = rec.get("pair").and_then(Value::as_array).ok_or("cusp move needs a pair")?;
        let [p, q] = pair.as_slice() else {
            return Err("cusp pair must have two entries".into());
        };
        let (p, q) = (
            p.as_u64().ok_or("bad pair entry")? as usize,
            q.as_u64().ok_or("bad pair entry")? as usize,
        );
        Ok(Inclusion::new(map, vec![(p, q)]))
    };
    let mut loops = Vec::new();
    for rec in value.get("loops").and_then(Value::as_array).ok_or("missing loops array")? {
        let name = rec
            .get("name")
            .and_then(Value::as_str)
            .ok_or("each loop needs a name")?
            .to_string();
        let mut moves = Vec::new();
        for m in rec.get("moves").and_then(Value::as_array).ok_or("each loop needs moves")? {
            let kind = m.get("move").and_then(Value::as_str).ok_or("move needs a kind")?;
            moves.push(match kind {
                "edge" => {
                    let sign = m.get("sign").and_then(Value::as_i64).ok_or("edge move needs a sign")?;
                    if sign != 1 && sign != -1 {
                        return Err("edge sign must be 1 or -1".into());
                    }
                    Move::Edge { edge: edge_of(m)?, sign: sign as i8 }
                }
                "cross" => Move::Cross { edge: edge_of(m)? },
                "cusp_in" => Move::CuspIn { inc: inc_of(m)? },
                "cusp_out" => Move::CuspOut { inc: inc_of(m)? },
                "st" => {
                    let vid = m.get("vertex").and_then(Value::as_str).ok_or("st move needs a vertex")?;
                    let corner = match m.get("corner").and_then(Value::as_str) {
                        Some("S") => CornerKind::S,
                        Some("T") => CornerKind::T,
                        _ => return Err("st corner must be \"S\" or \"T\"".into()),
                    };
                    let enter = match m.get("direction").and_then(Value::as_str) {
                        Some("enter") => true,
                        Some("exit") => false,
                        _ => return Err("st direction must be \"enter\" or \"exit\"".into()),
                    };
                    Move::St {
                        vertex: front
                            .vertex_index(vid)
                            .ok_or_else(|| format!("no 0-cell named {vid:?}"))?,
                        corner,
                        enter,
                    }
                }
                other => return Err(format!("unknown move kind {other:?}")),
            });
        }
        loops.push(LoopWord { name, moves });
    }
    Ok(LoopFile { basepoint: Basepoint { vertex, region }, loops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn torus() -> (Dga, Vec<Vec<bool>>, LoopFile) {
        let dga = Dga::new(builders::torus_curve()).unwrap();
        let augs = SearchProblem::new(&dga, 1).list(16).unwrap();
        let file = builders::torus_loops(&dga.front);
        (dga, augs, file)
    }

    #[test]
    fn torus_canonical_loop_monodromy() {
        let (dga, augs, file) = torus();
        assert_eq!(augs.len(), 4);
        let sigma = &file.loops[0];
        for eps in &augs {
            let phi = continuation(&dga, eps, &file.basepoint, sigma).unwrap();
            assert_eq!((phi.get(0, 0), phi.get(0, 1), phi.get(1, 0)), (false, true, true));
            // d = 0, so the homology action is the matrix itself
            let h = monodromy_on_homology(&dga, eps, &file.basepoint, sigma).unwrap();
            assert_eq!(h, phi);
            assert_ne!(h, BitMatrix::identity(2));
        }
        // the plain slide picks up exactly the edge generator's value
        let alpha = &file.loops[1];
        let b_a = dga.gen_by_name('b', "a", 1, 2).unwrap();
        for eps in &augs {
            let phi = continuation(&dga, eps, &file.basepoint, alpha).unwrap();
            assert_eq!(phi.get(0, 1), eps[b_a as usize]);
        }
    }

    #[test]
    fn empty_and_inverse_loops_are_identities() {
        let (dga, augs, file) = torus();
        let empty = LoopWord { name: "constant".into(), moves: vec![] };
        let eps = &augs[3];
        assert_eq!(
            continuation(&dga, eps, &file.basepoint, &empty).unwrap(),
            BitMatrix::identity(2)
        );
        for word in &file.loops {
            let mut closed = word.clone();
            closed.moves.extend(reverse_loop(word).moves);
            assert_eq!(
                continuation(&dga, eps, &file.basepoint, &closed).unwrap(),
                BitMatrix::identity(2),
                "{}",
                word.name
            );
            let phi = continuation(&dga, eps, &file.basepoint, word).unwrap();
            let psi =
                continuation(&dga, eps, &file.basepoint, &reverse_loop(word)).unwrap();
            assert_eq!(phi.mul(&psi), BitMatrix::identity(2), "{}", word.name);
        }
    }

    #[test]
    fn swallowtail_passages_compose() {
        for upward in [true, false] {
            let dga = Dga::new(builders::swallowtail_disk(upward)).unwrap();
            let augs = SearchProblem::new(&dga, 1).list(256).unwrap();
            let st_vertex = dga.front.swallowtails[0].vertex;
            let bp = Basepoint { vertex: st_vertex, region: "outside".into() };
            for eps in &augs {
                for corner in [CornerKind::S, CornerKind::T] {
                    let word = LoopWord {
                        name: "dip".into(),
                        moves: vec![
                            Move::St { vertex: st_vertex, corner, enter: true },
                            Move::St { vertex: st_vertex, corner, enter: false },
                        ],
                    };
                    let phi = continuation(&dga, eps, &bp, &word).unwrap();
                    assert_eq!(phi, BitMatrix::identity(1), "upward={upward} {corner:?}");
                }
            }
        }
    }

    #[test]
    fn cusp_round_trip_is_identity() {
        let (dga, augs, file) = torus();
        let inc = Inclusion::new(vec![0, 3], vec![(1, 2)]);
        let word = LoopWord {
            name: "dip".into(),
            moves: vec![Move::CuspIn { inc: inc.clone() }, Move::CuspOut { inc }],
        };
        let phi = continuation(&dga, &augs[0], &file.basepoint, &word).unwrap();
        assert_eq!(phi, BitMatrix::identity(2));
    }

    #[test]
    fn random_words_close_and_cancel() {
        let (dga, augs, file) = torus();
        let mut rng = LoopRng::new(7);
        for eps in &augs {
            for len in [1usize, 3, 6] {
                // a prefix followed by its reverse composes to the identity
                let word = random_loop(&dga, eps, &file.basepoint, len, &mut rng);
                let phi = continuation(&dga, eps, &file.basepoint, &word).unwrap();
                assert_eq!(phi, BitMatrix::identity(2), "prefix {len}");
                let h = monodromy_on_homology(&dga, eps, &file.basepoint, &word).unwrap();
                assert_eq!(h, BitMatrix::identity(2), "prefix {len}");
            }
        }
    }

    #[test]
    fn obstruction_reports_match_the_examples() {
        let dga = Dga::new(builders::conormal_unknot()).unwrap();
        let file = builders::conormal_loops(&dga.front);
        let report = obstruction_report(&dga, 1, &file).unwrap();
        assert!(report.augmentations_exist);
        assert!(report.obstructs_linear_at_infinity);
        assert!(!report.obstructs_trivial_bundle, "no loops were supplied");

        let (dga, _, file) = torus();
        let report = obstruction_report(&dga, 1, &file).unwrap();
        assert!(report.obstructs_trivial_bundle);
        assert!(report.obstructs_linear_at_infinity, "fiber differential is always zero");
        assert_eq!(report.rows.len(), 4);
        for row in &report.rows {
            assert_eq!(row.fiber_total, 2);
            assert_eq!(row.loop_trivial[0], Some(false));
        }

        let dga = Dga::new(builders::flying_saucer()).unwrap();
        let file = builders::saucer_loops(&dga.front);
        let report = obstruction_report(&dga, 1, &file).unwrap();
        assert!(!report.obstructs_linear_at_infinity, "the empty fiber is acyclic");
    }

    #[test]
    fn loop_json_roundtrip() {
        let (dga, _, file) = torus();
        let value = loops_to_value(&dga.front, &file);
        assert_eq!(loops_from_value(&dga.front, &value).unwrap(), file);
        let bad = serde_json::json!({"schema": "loop/2"});
        assert!(loops_from_value(&dga.front, &bad).is_err());
    }

    #[test]
    fn st_basepoint_requires_explicit_region() {
        let dga = Dga::new(builders::conormal_unknot()).unwrap();
        let mut value = loops_to_value(&dga.front, &builders::conormal_loops(&dga.front));
        value["basepoint"].as_object_mut().unwrap().remove("region");
        let err = loops_from_value(&dga.front, &value).unwrap_err();
        assert!(err.contains("region"), "{err}");
    }
}
