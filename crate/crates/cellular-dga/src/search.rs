//! Augmentation enumeration over GF(2): a bit-sliced brute-force oracle and
//! a staged backtracking search with unit propagation and linear reduction.
//!
//! An augmentation assigns 0/1 to every generator — vanishing on generators
//! whose degree is not a multiple of the grading period — so that every
//! generator's differential evaluates to zero. Over GF(2) this is a system
//! of polynomial equations in the admissible generators; both strategies
//! solve it and report solutions in one canonical order (lexicographic in
//! the admissible-generator value vector) so they can be compared exactly.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::dga::Dga;
use crate::gf2::LinearSystem;

/// Largest number of admissible generators `brute_force` will sweep.
pub const BRUTE_FORCE_CAP: usize = 24;

/// Verdict about one generator's value across all augmentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Forced0,
    Forced1,
    Unconstrained,
    NoAugmentations,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{0} admissible generators exceed the brute-force cap of {1}")]
    GeneratorCap(usize, usize),
    #[error("{0} augmentations exceed the listing cap of {1}")]
    SolutionCap(BigUint, usize),
}

/// Squarefree monomial in variable positions, sorted ascending. Values are
/// idempotent over GF(2), so repeated factors collapse.
type Monomial = Vec<u32>;
/// XOR-set of monomials; the empty monomial is the constant 1.
type Equation = BTreeSet<Monomial>;

fn toggle(eq: &mut Equation, m: Monomial) {
    if !eq.remove(&m) {
        eq.insert(m);
    }
}

/// The polynomial system of one complex at one grading period, with
/// variables indexed by position in the admissible-generator list.
pub struct SearchProblem {
    num_gens: usize,
    vars: Vec<u32>,
    var_pos: Vec<Option<u32>>,
    equations: Vec<Equation>,
    root: Vec<Option<bool>>,
}

impl SearchProblem {
    pub fn new(dga: &Dga, rho: u32) -> SearchProblem {
        let num_gens = dga.num_gens();
        let vars = dga.admissible_gens(rho);
        let mut var_pos: Vec<Option<u32>> = vec![None; num_gens];
        for (i, &g) in vars.iter().enumerate() {
            var_pos[g as usize] = Some(i as u32);
        }
        // every differential must vanish; non-admissible factors are 0
        let mut set: BTreeSet<Equation> = BTreeSet::new();
        for g in 0..num_gens as u32 {
            let mut eq = Equation::new();
            'term: for word in dga.differential(g).terms() {
                let mut m = Vec::with_capacity(word.len());
                for &v in word {
                    match var_pos[v as usize] {
                        Some(p) => m.push(p),
                        None => continue 'term,
                    }
                }
                m.sort_unstable();
                m.dedup();
                toggle(&mut eq, m);
            }
            if !eq.is_empty() {
                set.insert(eq);
            }
        }
        SearchProblem {
            num_gens,
            root: vec![None; vars.len()],
            vars,
            var_pos,
            equations: set.into_iter().collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Admissible generator ids, ascending; variable `i` is `vars()[i]`.
    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    /// Restricts the search to augmentations with the given generator value.
    pub fn pin(&mut self, gen: u32, value: bool) {
        match self.var_pos[gen as usize] {
            Some(p) => {
                let p = p as usize;
                if self.root[p] == Some(!value) {
                    self.equations.push(BTreeSet::from([Vec::new()]));
                } else {
                    self.root[p] = Some(value);
                }
            }
            // a non-admissible generator is 0 in every augmentation
            None if value => self.equations.push(BTreeSet::from([Vec::new()])),
            None => {}
        }
    }

    fn run(&self, goal: Goal) -> Run {
        let mut run =
            Run { goal, found: false, count: BigUint::ZERO, sols: Vec::new(), nodes: 0 };
        search(&mut run, self.equations.clone(), self.root.clone());
        run
    }

    pub fn exists(&self) -> bool {
        self.run(Goal::Exists).found
    }

    pub fn count(&self) -> BigUint {
        self.run(Goal::Count).count
    }

    /// Count plus the number of branch nodes the search visited.
    pub fn count_nodes(&self) -> (BigUint, u64) {
        let run = self.run(Goal::Count);
        (run.count, run.nodes)
    }

    /// All augmentations as full generator-value vectors, canonically
    /// ordered; refuses to materialize more than `cap` of them.
    pub fn list(&self, cap: usize) -> Result<Vec<Vec<bool>>, SearchError> {
        let n = self.count();
        if n > BigUint::from(cap) {
            return Err(SearchError::SolutionCap(n, cap));
        }
        let mut run = self.run(Goal::List);
        run.sols.sort();
        Ok(run.sols.iter().map(|s| self.to_point(s)).collect())
    }

    /// Exhaustive oracle: sweeps all assignments of the admissible
    /// generators, 64 per machine word.
    pub fn brute_force(&self) -> Result<Vec<Vec<bool>>, SearchError> {
        let k = self.vars.len();
        if k > BRUTE_FORCE_CAP {
            return Err(SearchError::GeneratorCap(k, BRUTE_FORCE_CAP));
        }
        let (mut pin_mask, mut pin_vals) = (0u64, 0u64);
        for (i, a) in self.root.iter().enumerate() {
            if let Some(v) = *a {
                pin_mask |= 1 << i;
                if v {
                    pin_vals |= 1 << i;
                }
            }
        }
        // lane l of a block tests assignment base+l; bit patterns of the low
        // six variables cycle within a block, higher ones broadcast
        const LANE: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let total: u64 = 1 << k;
        let lane_mask = if total >= 64 { !0u64 } else { (1u64 << total) - 1 };
        let mut sols: Vec<Vec<bool>> = Vec::new();
        let mut base = 0u64;
        while base < total {
            let bits = |v: usize| -> u64 {
                if v < 6 {
                    LANE[v]
                } else if base >> v & 1 == 1 {
                    !0u64
                } else {
                    0
                }
            };
            let mut ok = lane_mask;
            for eq in &self.equations {
                let mut val = 0u64;
                for m in eq {
                    let mut prod = !0u64;
                    for &v in m {
                        prod &= bits(v as usize);
                    }
                    val ^= prod;
                }
                ok &= !val;
                if ok == 0 {
                    break;
                }
            }
            while ok != 0 {
                let a = base + ok.trailing_zeros() as u64;
                ok &= ok - 1;
                if a & pin_mask == pin_vals {
                    sols.push((0..k).map(|i| a >> i & 1 == 1).collect());
                }
            }
            base += 64;
        }
        sols.sort();
        Ok(sols.iter().map(|s| self.to_point(s)).collect())
    }

    fn to_point(&self, var_vals: &[bool]) -> Vec<bool> {
        let mut p = vec![false; self.num_gens];
        for (i, &g) in self.vars.iter().enumerate() {
            p[g as usize] = var_vals[i];
        }
        p
    }
}

/// Whether one generator takes the same value in every augmentation.
pub fn constraint_probe(dga: &Dga, rho: u32, gen: u32) -> Probe {
    let exists_with = |value: bool| {
        let mut p = SearchProblem::new(dga, rho);
        p.pin(gen, value);
        p.exists()
    };
    match (exists_with(false), exists_with(true)) {
        (true, true) => Probe::Unconstrained,
        (true, false) => Probe::Forced0,
        (false, true) => Probe::Forced1,
        (false, false) => Probe::NoAugmentations,
    }
}

enum Goal {
    Exists,
    Count,
    List,
}

struct Run {
    goal: Goal,
    found: bool,
    count: BigUint,
    /// One value per variable, filled in `List` mode.
    sols: Vec<Vec<bool>>,
    nodes: u64,
}

/// Substitutes the assignment into one equation. Assigned-0 factors kill a
/// monomial, assigned-1 factors drop out, and equal survivors cancel.
fn reduce(eq: &Equation, assign: &[Option<bool>]) -> Equation {
    let mut out = Equation::new();
    'mono: for m in eq {
        let mut keep = Vec::with_capacity(m.len());
        for &v in m {
            match assign[v as usize] {
                Some(false) => continue 'mono,
                Some(true) => {}
                None => keep.push(v),
            }
        }
        toggle(&mut out, keep);
    }
    out
}

/// `x = c` when the reduced equation mentions exactly one variable once.
fn unit_forcing(eq: &Equation) -> Option<(u32, bool)> {
    match eq.len() {
        1 => {
            let m = eq.iter().next().unwrap();
            (m.len() == 1).then(|| (m[0], false))
        }
        2 if eq.contains(&Vec::new() as &Vec<u32>) => {
            let m = eq.iter().next_back().unwrap();
            (m.len() == 1).then(|| (m[0], true))
        }
        _ => None,
    }
}

/// Reduces every equation under the assignment to a fixpoint, applying unit
/// forcings and any variables the linear subsystem pins. Returns false on
/// contradiction. Afterwards the remaining equations mention only
/// unassigned variables and their linear part is consistent.
fn propagate(eqs: &mut Vec<Equation>, assign: &mut [Option<bool>]) -> bool {
    loop {
        let mut forced: Vec<(u32, bool)> = Vec::new();
        let mut next: BTreeSet<Equation> = BTreeSet::new();
        for eq in eqs.iter() {
            let r = reduce(eq, assign);
            if r.is_empty() {
                continue;
            }
            if r.len() == 1 && r.contains(&Vec::new() as &Vec<u32>) {
                return false;
            }
            if let Some(f) = unit_forcing(&r) {
                forced.push(f);
            } else {
                next.insert(r);
            }
        }
        if forced.is_empty() {
            // row-reduce the linear subsystem for hidden forcings
            let mut col = vec![u32::MAX; assign.len()];
            let mut uncols: Vec<u32> = Vec::new();
            for (i, a) in assign.iter().enumerate() {
                if a.is_none() {
                    col[i] = uncols.len() as u32;
                    uncols.push(i as u32);
                }
            }
            let mut sys = LinearSystem::new(uncols.len());
            let mut any = false;
            for eq in &next {
                if eq.iter().all(|m| m.len() <= 1) {
                    any = true;
                    sys.add_equation(
                        eq.iter().filter(|m| !m.is_empty()).map(|m| col[m[0] as usize] as usize),
                        eq.contains(&Vec::new() as &Vec<u32>),
                    );
                }
            }
            if any {
                match sys.forced_assignments() {
                    None => return false,
                    Some(f) => forced.extend(f.into_iter().map(|(c, b)| (uncols[c], b))),
                }
            }
        }
        *eqs = next.into_iter().collect();
        if forced.is_empty() {
            return true;
        }
        for (v, b) in forced {
            match assign[v as usize] {
                Some(x) if x != b => return false,
                _ => assign[v as usize] = Some(b),
            }
        }
    }
}

/// Lowest variable in any nonlinear monomial, if one remains.
fn branch_var(eqs: &[Equation]) -> Option<u32> {
    eqs.iter()
        .flat_map(|eq| eq.iter())
        .filter(|m| m.len() >= 2)
        .flat_map(|m| m.iter().copied())
        .min()
}

fn search(run: &mut Run, mut eqs: Vec<Equation>, mut assign: Vec<Option<bool>>) {
    if matches!(run.goal, Goal::Exists) && run.found {
        return;
    }
    run.nodes += 1;
    if !propagate(&mut eqs, &mut assign) {
        return;
    }
    if let Some(v) = branch_var(&eqs) {
        for val in [false, true] {
            let mut a = assign.clone();
            a[v as usize] = Some(val);
            search(run, eqs.clone(), a);
        }
        return;
    }
    // only a consistent linear system is left; its solutions are the leaves
    let mut col = vec![u32::MAX; assign.len()];
    let mut free_vars: Vec<u32> = Vec::new();
    for (i, a) in assign.iter().enumerate() {
        if a.is_none() {
            col[i] = free_vars.len() as u32;
            free_vars.push(i as u32);
        }
    }
    let mut sys = LinearSystem::new(free_vars.len());
    for eq in &eqs {
        sys.add_equation(
            eq.iter().filter(|m| !m.is_empty()).map(|m| col[m[0] as usize] as usize),
            eq.contains(&Vec::new() as &Vec<u32>),
        );
    }
    match run.goal {
        Goal::Exists => run.found = sys.num_solutions().is_some(),
        Goal::Count => {
            if let Some(n) = sys.num_solutions() {
                run.count += n;
            }
        }
        Goal::List => {
            let Some(base) = sys.solve() else { return };
            let kernel = sys.kernel_basis().unwrap();
            debug_assert!(kernel.len() < 64, "listing is capped before enumeration");
            for mask in 0u64..1 << kernel.len() {
                let mut x = base.clone();
                for (i, k) in kernel.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for (xi, ki) in x.iter_mut().zip(k) {
                            *xi ^= *ki;
                        }
                    }
                }
                let mut sol: Vec<bool> = assign.iter().map(|a| a.unwrap_or(false)).collect();
                for (i, &v) in free_vars.iter().enumerate() {
                    sol[v as usize] = x[i];
                }
                run.sols.push(sol);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::front::Front;

    fn dga_of(front: Front) -> Dga {
        Dga::new(front).unwrap()
    }

    #[test]
    fn saucer_counts() {
        let dga = dga_of(builders::flying_saucer());
        assert_eq!(SearchProblem::new(&dga, 1).count(), BigUint::from(2u8));
        assert_eq!(SearchProblem::new(&dga, 0).count(), BigUint::from(1u8));
    }

    #[test]
    fn torus_counts() {
        let dga = dga_of(builders::torus_curve());
        assert_eq!(SearchProblem::new(&dga, 1).count(), BigUint::from(4u8));
        assert_eq!(SearchProblem::new(&dga, 0).count(), BigUint::from(2u8));
    }

    #[test]
    fn staged_matches_brute_force() {
        let fronts = [
            ("saucer", builders::flying_saucer()),
            ("torus", builders::torus_curve()),
            ("st-up", builders::swallowtail_disk(true)),
            ("st-down", builders::swallowtail_disk(false)),
        ];
        for (name, front) in fronts {
            for rho in [0u32, 1] {
                let dga = dga_of(front.clone());
                let prob = SearchProblem::new(&dga, rho);
                let staged = prob.list(1 << 20).unwrap();
                let brute = prob.brute_force().unwrap();
                assert_eq!(staged, brute, "{name} rho={rho}");
                for eps in &staged {
                    assert!(dga.is_augmentation(eps), "{name} rho={rho}");
                }
            }
        }
    }

    #[test]
    fn local_model_matches_brute_force_and_forces_crossing_values() {
        let dga = dga_of(builders::tz_local());
        let prob = SearchProblem::new(&dga, 0);
        assert_eq!(prob.num_vars(), 21);
        let staged = prob.list(1 << 22).unwrap();
        assert_eq!(staged, prob.brute_force().unwrap());
        assert!(!staged.is_empty());
        for j in 2..=4 {
            let g = dga.gen_by_name('a', "A1", 1, j).unwrap();
            assert_eq!(constraint_probe(&dga, 0, g), Probe::Forced1, "a[A1](1,{j})");
        }
    }

    #[test]
    fn theta_has_augmentations_tetrahedron_does_not() {
        let theta = dga_of(builders::tz_complex(&builders::graph::theta()).unwrap());
        assert!(SearchProblem::new(&theta, 1).exists());

        let tetra = dga_of(builders::tz_complex(&builders::graph::tetrahedron()).unwrap());
        let prob = SearchProblem::new(&tetra, 1);
        let (count, nodes) = prob.count_nodes();
        assert_eq!(count, BigUint::ZERO);
        // far below the 2^k assignments an exhaustive sweep would visit
        assert!(BigUint::from(nodes) < BigUint::from(1u8) << prob.num_vars());
        assert!(nodes < 100_000, "search blew up: {nodes} nodes");
    }

    #[test]
    fn conormal_crossing_values_are_pinned() {
        let dga = dga_of(builders::conormal_unknot());
        let a = dga.gen_by_name('a', "A0", 1, 2).unwrap();
        let b = dga.gen_by_name('b', "B0", 1, 2).unwrap();
        assert_eq!(constraint_probe(&dga, 1, a), Probe::Forced0);
        assert_eq!(constraint_probe(&dga, 1, b), Probe::Forced1);
    }

    #[test]
    fn listing_cap_is_enforced() {
        let dga = dga_of(builders::torus_curve());
        let prob = SearchProblem::new(&dga, 1);
        assert!(matches!(prob.list(3), Err(SearchError::SolutionCap(_, 3))));
        assert_eq!(prob.list(4).unwrap().len(), 4);
    }
}
