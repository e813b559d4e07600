//! Acceptance gate. Each numbered requirement runs in isolation and prints
//! one `PASS`/`FAIL` line; the test fails if any requirement does.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};

use cellular_dga::builders::{self, graph};
use cellular_dga::chd::{aug_to_chd, chd_to_aug, validate_chd};
use cellular_dga::dga::Dga;
use cellular_dga::front::Front;
use cellular_dga::gf2::{handleslide_matrix, BitMatrix};
use cellular_dga::monodromy::{
    self, continuation, fiber_complex, fiber_homology, reverse_loop, Basepoint, LoopRng,
    LoopWord, Move,
};
use cellular_dga::search::{constraint_probe, Probe, SearchProblem, BRUTE_FORCE_CAP};

// ---- deterministic randomness (splitmix64) ----

struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed)
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

    fn bit(&mut self) -> bool {
        self.next() & 1 == 1
    }
}

// ---- shared fixtures ----

fn named_fronts() -> Vec<(&'static str, Front)> {
    vec![
        ("flying_saucer", builders::flying_saucer()),
        ("torus_curve", builders::torus_curve()),
        ("swallowtail_disk_up", builders::swallowtail_disk(true)),
        ("swallowtail_disk_down", builders::swallowtail_disk(false)),
        ("tz_local", builders::tz_local()),
        ("tz_theta", builders::tz_complex(&graph::theta()).unwrap()),
        ("conormal_unknot", builders::conormal_unknot()),
    ]
}

fn build(front: Front) -> Dga {
    Dga::new(front).expect("builder fronts produce well-formed algebras")
}

/// Draws augmentations by pinning variables one at a time, flipping any pin
/// the solver refuses. Each draw is a genuine augmentation.
fn sample_augs(dga: &Dga, rho: u32, want: usize, rng: &mut Rng) -> Vec<Vec<bool>> {
    let vars: Vec<u32> = SearchProblem::new(dga, rho).vars().to_vec();
    let mut out: Vec<Vec<bool>> = Vec::new();
    for _ in 0..want {
        let mut pins: Vec<(u32, bool)> = Vec::new();
        for &v in &vars {
            let guess = rng.bit();
            for value in [guess, !guess] {
                let mut prob = SearchProblem::new(dga, rho);
                for &(pv, pb) in &pins {
                    prob.pin(pv, pb);
                }
                prob.pin(v, value);
                if prob.exists() {
                    pins.push((v, value));
                    break;
                }
            }
            assert_eq!(pins.last().map(|&(pv, _)| pv), Some(v), "pin walk got stuck");
        }
        let mut eps = vec![false; dga.num_gens()];
        for &(v, value) in &pins {
            eps[v as usize] = value;
        }
        assert!(dga.is_augmentation(&eps), "pin walk must end on an augmentation");
        out.push(eps);
    }
    out.sort();
    out.dedup();
    out
}

/// Full augmentation list when small, a deterministic sample otherwise.
fn augs_capped(dga: &Dga, rho: u32, rng: &mut Rng) -> Vec<Vec<bool>> {
    match SearchProblem::new(dga, rho).list(256) {
        Ok(list) => list,
        Err(_) => sample_augs(dga, rho, 6, rng),
    }
}

fn is_unit_upper(m: &BitMatrix) -> bool {
    (0..m.rows()).all(|i| m.get(i, i) && (0..i).all(|j| !m.get(i, j)))
}

// ---- the ten requirements ----

fn c01_differentials_square_to_zero_with_degree_minus_one() {
    for (name, front) in named_fronts() {
        let dga = build(front);
        dga.check_d_squared().unwrap_or_else(|e| panic!("{name}: {e}"));
        dga.check_degrees().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let corpus = graph::corpus();
    assert!(corpus.len() >= 8, "corpus must hold at least 8 graphs");
    for (name, g) in corpus {
        let dga = build(builders::tz_complex(&g).unwrap());
        dga.check_d_squared().unwrap_or_else(|e| panic!("tz({name}): {e}"));
        dga.check_degrees().unwrap_or_else(|e| panic!("tz({name}): {e}"));
    }
}

fn c02_augmentations_and_diagrams_are_in_bijection() {
    let mut rng = Rng::new(0xC2);
    let mut seen = 0usize;
    for (name, front) in named_fronts() {
        let dga = build(front);
        for rho in [1u32, 0] {
            for eps in augs_capped(&dga, rho, &mut rng) {
                let diagram = aug_to_chd(&dga, &eps);
                validate_chd(&dga, &diagram, rho)
                    .unwrap_or_else(|e| panic!("{name} rho {rho}: {e:?}"));
                let back = chd_to_aug(&dga, &diagram)
                    .unwrap_or_else(|e| panic!("{name} rho {rho}: {e}"));
                assert_eq!(back, eps, "{name} rho {rho}: diagram must invert exactly");
                assert!(dga.is_augmentation(&back), "{name} rho {rho}");
                seen += 1;
            }
        }
    }
    assert!(seen >= 300, "only {seen} augmentations exercised");
}

fn c03_staged_search_matches_brute_force() {
    let mut eligible = 0usize;
    for (name, front) in named_fronts() {
        let dga = build(front);
        for rho in [1u32, 0] {
            let prob = SearchProblem::new(&dga, rho);
            if prob.num_vars() > BRUTE_FORCE_CAP {
                continue;
            }
            let staged = prob.list(1 << BRUTE_FORCE_CAP).unwrap();
            let brute = prob.brute_force().unwrap();
            assert_eq!(staged, brute, "{name} rho {rho}");
            eligible += 1;
        }
    }
    assert!(eligible >= 8, "only {eligible} complexes fit the brute-force cap");
}

fn c04_graph_surface_augmentations_match_face_parity() {
    let corpus = graph::corpus();
    assert!(corpus.len() >= 8);
    let mut genus1 = 0;
    for (name, g) in corpus {
        let expected = graph::even_faces(&g);
        let dga = build(builders::tz_complex(&g).unwrap());
        let got = SearchProblem::new(&dga, 1).exists();
        assert_eq!(got, expected, "tz({name}): existence vs face parity");
        if name.contains("torus") {
            genus1 += 1;
        }
    }
    assert!(genus1 >= 1, "corpus must include a genus-1 graph");
}

fn c05_local_vertex_model_forces_its_crossing_and_cusp_values() {
    let dga = build(builders::tz_local());
    for rho in [1u32, 0] {
        assert!(SearchProblem::new(&dga, rho).exists(), "rho {rho}");
        for j in 2..=4 {
            let g = dga.gen_by_name('a', "A1", 1, j).unwrap();
            assert_eq!(
                constraint_probe(&dga, rho, g),
                Probe::Forced1,
                "rho {rho}: a[A1](1,{j}) must be 1 in every augmentation"
            );
        }
        for i in 0..3 {
            let b1 = dga.gen_by_name('b', &format!("B1.{i}"), 1, 2).unwrap();
            let b2 = dga.gen_by_name('b', &format!("B2.{i}"), 1, 2).unwrap();
            for same in [false, true] {
                let mut prob = SearchProblem::new(&dga, rho);
                prob.pin(b1, same);
                prob.pin(b2, same);
                assert!(
                    !prob.exists(),
                    "rho {rho} sector {i}: the two cusp-edge values must differ"
                );
            }
        }
    }
}

fn c06_conormal_front_reproduces_its_known_augmentation_facts() {
    let dga = build(builders::conormal_unknot());

    // the two displayed 2-cell boundary relations that pin the downward
    // swallowtail convention
    let a0 = dga.gen_by_name('a', "A0", 1, 2).unwrap();
    let b0 = dga.gen_by_name('b', "B0", 1, 2).unwrap();
    let c2 = dga.gen_by_name('c', "C2", 1, 2).unwrap();
    let c1 = dga.gen_by_name('c', "C1", 1, 2).unwrap();
    let terms = |g: u32| {
        let mut t: Vec<Vec<u32>> = dga.differential(g).terms().cloned().collect();
        t.sort();
        t
    };
    assert_eq!(terms(c2), vec![vec![], vec![a0], vec![b0]], "d c[C2](1,2) = 1 + a + b");
    assert_eq!(terms(c1), vec![vec![], vec![b0]], "d c[C1](1,2) = 1 + b");

    // augmentations exist, and they pin the crossing values
    assert!(SearchProblem::new(&dga, 1).exists());
    assert_eq!(SearchProblem::new(&dga, 0).list(4).unwrap().len(), 1);
    for rho in [1u32, 0] {
        assert_eq!(constraint_probe(&dga, rho, a0), Probe::Forced0, "rho {rho}: a[A0](1,2)");
        assert_eq!(constraint_probe(&dga, rho, b0), Probe::Forced1, "rho {rho}: b[B0](1,2)");
    }

    // fiber homology has total dimension 2 for every augmentation: the fiber
    // differential reads only the basepoint crossing value
    let vertex = dga.front.vertex_index("A0").unwrap();
    for value in [false, true] {
        let mut prob = SearchProblem::new(&dga, 1);
        prob.pin(a0, value);
        if !prob.exists() {
            continue;
        }
        let mut eps = vec![false; dga.num_gens()];
        eps[a0 as usize] = value;
        let (_, total) = fiber_homology(&dga, &eps, vertex);
        assert_eq!(total, 2, "a[A0](1,2) = {value}");
    }
    let eps0 = &SearchProblem::new(&dga, 0).list(4).unwrap()[0];
    assert_eq!(fiber_homology(&dga, eps0, vertex).1, 2);

    let report = monodromy::obstruction_report(&dga, 1, &builders::conormal_loops(&dga.front))
        .unwrap();
    assert!(report.augmentations_exist);
    assert!(report.obstructs_linear_at_infinity);
}

fn c07_torus_monodromy_is_nontrivial_for_every_augmentation() {
    let dga = build(builders::torus_curve());
    let file = builders::torus_loops(&dga.front);
    let canonical = &file.loops[0];
    let augs = SearchProblem::new(&dga, 1).list(16).unwrap();
    assert!(!augs.is_empty());
    for eps in &augs {
        let phi = continuation(&dga, eps, &file.basepoint, canonical).unwrap();
        assert!(!phi.get(0, 0) && phi.get(0, 1) && phi.get(1, 0), "shape [[0,1],[1,*]]");
        let h = monodromy::monodromy_on_homology(&dga, eps, &file.basepoint, canonical).unwrap();
        assert_ne!(h, BitMatrix::identity(h.rows()), "homology action must move");
    }
    let report = monodromy::obstruction_report(&dga, 1, &file).unwrap();
    assert!(report.obstructs_trivial_bundle);
}

fn c08_handleslide_relations_hold_on_random_instances() {
    let mut rng = Rng::new(0xC8);
    let h = handleslide_matrix;

    // disjoint pairs commute
    let mut done = 0;
    while done < 1000 {
        let n = 2 + rng.below(7);
        let u1 = 1 + rng.below(n - 1);
        let l1 = rng.below(u1);
        let u2 = 1 + rng.below(n - 1);
        let l2 = rng.below(u2);
        if l1 == u2 || l2 == u1 {
            continue;
        }
        assert_eq!(
            h(n, u1, l1).mul(&h(n, u2, l2)),
            h(n, u2, l2).mul(&h(n, u1, l1)),
            "n={n} ({u1},{l1}) ({u2},{l2})"
        );
        done += 1;
    }

    // chained pairs commute up to the composite slide
    done = 0;
    while done < 1000 {
        let n = 3 + rng.below(6);
        let (mut a, mut b, mut c) = (rng.below(n), rng.below(n), rng.below(n));
        if a == b || b == c || a == c {
            continue;
        }
        if a < b {
            std::mem::swap(&mut a, &mut b);
        }
        if b < c {
            std::mem::swap(&mut b, &mut c);
        }
        if a < b {
            std::mem::swap(&mut a, &mut b);
        }
        let (u1, l1, l2) = (a, b, c); // u1 > l1 = u2 > l2
        let u2 = l1;
        assert_eq!(
            h(n, u1, l1).mul(&h(n, u2, l2)),
            h(n, u2, l2).mul(&h(n, u1, l1)).mul(&h(n, u1, l2)),
            "n={n} ({u1},{l1}) ({u2},{l2})"
        );
        done += 1;
    }
}

fn c09_flying_saucer_augmentation_counts() {
    let dga = build(builders::flying_saucer());
    assert_eq!(SearchProblem::new(&dga, 1).count().to_string(), "2");
    assert_eq!(SearchProblem::new(&dga, 0).count().to_string(), "1");
}

fn c10_continuation_maps_honor_their_contracts() {
    let mut words = 0usize;
    let mut rng = LoopRng::new(0xC10);
    let mut srng = Rng::new(0xC10);

    let mut cases: Vec<(Dga, Vec<Vec<bool>>, Basepoint, usize)> = Vec::new();
    {
        let dga = build(builders::torus_curve());
        let augs = SearchProblem::new(&dga, 1).list(16).unwrap();
        let bp = builders::torus_loops(&dga.front).basepoint;
        cases.push((dga, augs, bp, 20));
    }
    for upward in [true, false] {
        let dga = build(builders::swallowtail_disk(upward));
        let augs: Vec<Vec<bool>> = SearchProblem::new(&dga, 1)
            .list(256)
            .unwrap()
            .into_iter()
            .step_by(63)
            .collect();
        let bp = Basepoint {
            vertex: dga.front.swallowtails[0].vertex,
            region: "outside".into(),
        };
        cases.push((dga, augs, bp, 13));
    }
    {
        let dga = build(builders::tz_local());
        let augs = SearchProblem::new(&dga, 0).list(16).unwrap();
        let bp = Basepoint { vertex: dga.front.vertex_index("A1").unwrap(), region: "outside".into() };
        cases.push((dga, augs, bp, 5));
    }
    {
        let dga = build(builders::conormal_unknot());
        let augs = SearchProblem::new(&dga, 0).list(4).unwrap();
        let bp = builders::conormal_loops(&dga.front).basepoint;
        cases.push((dga, augs, bp, 20));
    }

    for (dga, augs, bp, rounds) in &cases {
        for eps in augs {
            let (_, d) = fiber_complex(dga, eps, bp.vertex);
            let id = BitMatrix::identity(d.rows());
            for round in 0..*rounds {
                let first = monodromy::random_loop(dga, eps, bp, 1 + round % 7, &mut rng);
                let second = monodromy::random_loop(dga, eps, bp, 1 + srng.below(5), &mut rng);
                words += 2;

                let phi1 = continuation(dga, eps, bp, &first).unwrap();
                let phi2 = continuation(dga, eps, bp, &second).unwrap();

                // chain map on the basepoint fiber
                assert_eq!(d.mul(&phi1), phi1.mul(&d), "chain map");

                // concatenation composes in reverse order
                let mut moves = first.moves.clone();
                moves.extend(second.moves.clone());
                let joined = LoopWord { name: "joined".into(), moves };
                assert_eq!(
                    continuation(dga, eps, bp, &joined).unwrap(),
                    phi2.mul(&phi1),
                    "anti-composition"
                );

                // the reversed word gives a two-sided inverse
                let back = continuation(dga, eps, bp, &reverse_loop(&first)).unwrap();
                assert_eq!(back.mul(&phi1), id, "left inverse for {:?}", first.moves);
                assert_eq!(phi1.mul(&back), id, "right inverse for {:?}", first.moves);
            }
        }
    }

    // away from crossing arcs, cusp arcs, and swallowtail points the factors
    // are elementary slides, so composites stay unit upper triangular
    let dga = build(builders::torus_curve());
    let file = builders::torus_loops(&dga.front);
    let augs = SearchProblem::new(&dga, 1).list(16).unwrap();
    let edges = [
        dga.front.edge_index("a").unwrap(),
        dga.front.edge_index("b").unwrap(),
    ];
    for eps in &augs {
        for _ in 0..10 {
            let moves: Vec<Move> = (0..1 + srng.below(6))
                .map(|_| Move::Edge {
                    edge: edges[srng.below(2)],
                    sign: if srng.bit() { 1 } else { -1 },
                })
                .collect();
            let word = LoopWord { name: "slides".into(), moves };
            let phi = continuation(&dga, eps, &file.basepoint, &word).unwrap();
            assert!(is_unit_upper(&phi), "edge-only words stay unit upper triangular");
            words += 1;
        }
    }

    assert!(words >= 500, "only {words} random words exercised");
}

// ---- the gate ----

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn())> = vec![
        (
            "1: d^2 = 0 and deg(d) = -1 mod m on every builder complex",
            c01_differentials_square_to_zero_with_degree_minus_one,
        ),
        (
            "2: augmentation <-> diagram bijection validates and inverts",
            c02_augmentations_and_diagrams_are_in_bijection,
        ),
        (
            "3: staged search equals brute force under the 24-variable cap",
            c03_staged_search_matches_brute_force,
        ),
        (
            "4: graph-surface augmentation existence tracks face parity",
            c04_graph_surface_augmentations_match_face_parity,
        ),
        (
            "5: local vertex model forces crossing/cusp-edge values",
            c05_local_vertex_model_forces_its_crossing_and_cusp_values,
        ),
        (
            "6: conormal front reproduces its augmentation facts",
            c06_conormal_front_reproduces_its_known_augmentation_facts,
        ),
        (
            "7: torus monodromy is nontrivial for every augmentation",
            c07_torus_monodromy_is_nontrivial_for_every_augmentation,
        ),
        (
            "8: handleslide relations hold on 1000 random instances each",
            c08_handleslide_relations_hold_on_random_instances,
        ),
        ("9: flying-saucer counts are 2 (rho 1) and 1 (rho 0)", c09_flying_saucer_augmentation_counts),
        (
            "10: continuation maps honor their contracts on 500 random words",
            c10_continuation_maps_honor_their_contracts,
        ),
    ];

    let mut failures = Vec::new();
    for (label, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(()) => println!("PASS {label}"),
            Err(payload) => {
                let detail = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic");
                println!("FAIL {label}: {detail}");
                failures.push(label);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
