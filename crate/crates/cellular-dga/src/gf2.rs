//! Dense GF(2) linear algebra on small matrices.
//!
//! Sheet counts of front cells are tiny (≤ 64), so a matrix is stored as one
//! `u64` per row. Everything here is deterministic: elimination always picks
//! the lowest available pivot, so ranks, kernels and solution vectors are
//! reproducible across runs and platforms.

use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;

/// Row-major bit matrix over GF(2). At most 64 columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= 64, "BitMatrix supports at most 64 columns");
        BitMatrix { rows, cols, bits: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// `I + E_{i,j}` (indices 0-based).
    pub fn unit_upper(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.set(i, j, true);
        m
    }

    /// Single-entry matrix `E_{i,j}`.
    pub fn elem(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(rows, cols);
        m.set(i, j, true);
        m
    }

    /// Permutation matrix of the transposition (i j); identity elsewhere.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.set(i, i, false);
        m.set(j, j, false);
        m.set(i, j, true);
        m.set(j, i, true);
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for &(i, j) in entries {
            m.set(i, j, true);
        }
        m
    }

    /// Builds a matrix from strings of '0'/'1', one per row.
    pub fn from_row_strings(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row strings");
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => panic!("row strings must be 0/1"),
                }
            }
        }
        m
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i] >> j & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        if v {
            self.bits[i] |= 1 << j;
        } else {
            self.bits[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> u64 {
        self.bits[i]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        BitMatrix { rows: self.rows, cols: self.cols, bits }
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = BitMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = 0u64;
            let mut row = self.bits[i];
            while row != 0 {
                let k = row.trailing_zeros() as usize;
                acc ^= other.bits[k];
                row &= row - 1;
            }
            out.bits[i] = acc;
        }
        out
    }

    /// Applies the matrix to a column vector given as a bit word.
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.rows {
            if (self.bits[i] & v).count_ones() % 2 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Rank, by column elimination over a copy.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<u64> = self.bits.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a unipotent matrix `I + N` with `N` nilpotent, via the
    /// terminating Neumann series `I + N + N² + …`.
    ///
    /// Panics if the matrix is not square or the series fails to terminate
    /// (i.e. the strictly triangular part is not actually nilpotent).
    pub fn unipotent_inverse(&self) -> BitMatrix {
        assert!(self.is_square(), "unipotent_inverse needs a square matrix");
        let n = self.rows;
        let ident = BitMatrix::identity(n);
        let nil = self.add(&ident);
        let mut inv = ident.clone();
        let mut pow = BitMatrix::identity(n);
        for _ in 0..n {
            pow = pow.mul(&nil);
            if pow.is_zero() {
                let check = self.mul(&inv);
                assert_eq!(check, ident, "unipotent_inverse postcondition");
                return inv;
            }
            inv = inv.add(&pow);
        }
        assert!(nil.mul(&inv).add(&inv).add(&ident).is_zero(), "matrix is not unipotent");
        inv
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for s in self.row_strings() {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// `I + E_{u,l}` on `n` sheets: the effect of crossing a handleslide arc with
/// upper lift on sheet `u` and lower lift on sheet `l` (0-based, `u != l`).
pub fn handleslide_matrix(n: usize, u: usize, l: usize) -> BitMatrix {
    assert!(u < n && l < n && u != l);
    let mut m = BitMatrix::identity(n);
    m.set(u, l, true);
    m
}

pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.mul(b)
}

/// Is `d_tgt ∘ f == f ∘ d_src`?
pub fn is_chain_map(f: &BitMatrix, d_src: &BitMatrix, d_tgt: &BitMatrix) -> bool {
    d_tgt.mul(f) == f.mul(d_src)
}

/// Is `g + h == d1·k + k·d0`, i.e. does `k` interpolate `g` and `h`?
pub fn is_homotopy(k: &BitMatrix, d0: &BitMatrix, d1: &BitMatrix, g: &BitMatrix, h: &BitMatrix) -> bool {
    g.add(h) == d1.mul(k).add(&k.mul(d0))
}

/// A basis of sheets with degrees and a strict partial order.
///
/// Index order is a fixed linear extension of the partial order: `i ≺ j`
/// implies `i < j`, and the pairs not related are exactly the listed
/// incomparable ones. Degrees live in Z when `modulus == 0`, else in Z/modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    degrees: Vec<i64>,
    modulus: u32,
    /// above[i] = bitmask of j with i ≺ j.
    above: Vec<u64>,
}

impl GradedBasis {
    pub fn total(degrees: Vec<i64>, modulus: u32) -> Self {
        Self::with_incomparable(degrees, modulus, &[])
    }

    pub fn with_incomparable(degrees: Vec<i64>, modulus: u32, incomparable: &[(usize, usize)]) -> Self {
        let n = degrees.len();
        assert!(n <= 64);
        let mut above = vec![0u64; n];
        for (i, row) in above.iter_mut().enumerate() {
            for j in i + 1..n {
                *row |= 1 << j;
            }
        }
        for &(i, j) in incomparable {
            assert!(i < j && j < n, "incomparable pair out of order");
            above[i] &= !(1 << j);
        }
        let degrees = degrees.into_iter().map(|d| reduce_degree(d, modulus)).collect();
        GradedBasis { degrees, modulus, above }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        if i < j {
            self.above[i] >> j & 1 == 1
        } else {
            false
        }
    }

    /// Checks transitivity of the stored relation; index order is a linear
    /// extension by construction, so this is the only axiom at risk.
    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let mut mid = self.above[i];
            while mid != 0 {
                let j = mid.trailing_zeros() as usize;
                mid &= mid - 1;
                if self.above[j] & !self.above[i] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Entries are allowed only at comparable pairs (i ≺ j means row i, col j).
    pub fn is_strictly_upper(&self, m: &BitMatrix) -> bool {
        assert_eq!(m.rows(), self.len());
        assert_eq!(m.cols(), self.len());
        (0..self.len()).all(|i| m.row(i) & !self.above[i] == 0)
    }

    /// Do all nonzero entries (i, j) satisfy deg(i) == deg(j) + shift?
    pub fn entries_have_degree(&self, m: &BitMatrix, shift: i64) -> bool {
        assert_eq!(m.rows(), self.len());
        assert_eq!(m.cols(), self.len());
        for i in 0..self.len() {
            for j in 0..self.len() {
                if m.get(i, j)
                    && self.degrees[i] != reduce_degree(self.degrees[j] + shift, self.modulus)
                {
                    return false;
                }
            }
        }
        true
    }

    fn degree_classes(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            classes.entry(d).or_default().push(i);
        }
        classes
    }
}

pub fn reduce_degree(d: i64, modulus: u32) -> i64 {
    if modulus == 0 {
        d
    } else {
        d.rem_euclid(modulus as i64)
    }
}

/// Homology of a square differential `d` (deg +1, d² = 0) on a graded basis.
///
/// Returns per-degree dimensions and the total. Panics if `d` is not a
/// degree-(+1) square-zero matrix for the basis.
pub fn homology_dims(d: &BitMatrix, basis: &GradedBasis) -> (BTreeMap<i64, usize>, usize) {
    let n = basis.len();
    assert!(d.is_square() && d.rows() == n);
    assert!(d.mul(d).is_zero(), "differential does not square to zero");
    assert!(basis.entries_have_degree(d, 1), "differential entries not degree +1");

    // rank of d restricted to the columns of one degree class
    let rank_from = |cols: &[usize]| -> usize {
        let mut sub = BitMatrix::zero(n, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..n {
                if d.get(i, j) {
                    sub.set(i, jj, true);
                }
            }
        }
        sub.rank()
    };

    let classes = basis.degree_classes();
    let mut dims = BTreeMap::new();
    let mut total = 0;
    for (&deg, idxs) in &classes {
        let out_rank = rank_from(idxs);
        let below = reduce_degree(deg - 1, basis.modulus());
        let in_rank = classes.get(&below).map_or(0, |c| rank_from(c));
        let h = idxs.len() - out_rank - in_rank;
        total += h;
        dims.insert(deg, h);
    }
    (dims, total)
}

/// Affine linear system over GF(2), up to 64·WORDS variables wide.
///
/// Rows are added incrementally; `echelonize` reduces with lowest-index
/// pivots so every derived quantity is canonical.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    nvars: usize,
    words: usize,
    /// (coefficient bits, rhs)
    rows: Vec<(Vec<u64>, bool)>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, words: nvars.div_ceil(64).max(1), rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_equation(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut row = vec![0u64; self.words];
        for v in vars {
            debug_assert!(v < self.nvars);
            row[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((row, rhs));
    }

    /// Reduced row echelon form. Returns pivot columns, or `None` if the
    /// system is inconsistent (a row 0 = 1 appears).
    pub fn echelonize(&mut self) -> Option<Vec<usize>> {
        let mut pivots: Vec<usize> = Vec::new();
        let mut done = 0;
        for col in 0..self.nvars {
            let (w, b) = (col / 64, col % 64);
            let Some(r) = (done..self.rows.len()).find(|&r| self.rows[r].0[w] >> b & 1 == 1) else {
                continue;
            };
            self.rows.swap(done, r);
            let (pivot_row, pivot_rhs) = self.rows[done].clone();
            for (r, (row, rhs)) in self.rows.iter_mut().enumerate() {
                if r != done && row[w] >> b & 1 == 1 {
                    for (a, p) in row.iter_mut().zip(&pivot_row) {
                        *a ^= p;
                    }
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push(col);
            done += 1;
        }
        let consistent = self.rows[done..].iter().all(|(_, rhs)| !rhs);
        consistent.then_some(pivots)
    }

    /// One solution (free variables set to 0), or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut sys = self.clone();
        let pivots = sys.echelonize()?;
        let mut x = vec![false; self.nvars];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = sys.rows[r].1;
        }
        Some(x)
    }

    /// Basis of the homogeneous solution space, one vector per free variable,
    /// in increasing free-variable order.
    pub fn kernel_basis(&self) -> Option<Vec<Vec<bool>>> {
        let mut sys = self.clone();
        let pivots = sys.echelonize()?;
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.nvars {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![false; self.nvars];
            v[free] = true;
            let (w, b) = (free / 64, free % 64);
            for (r, &col) in pivots.iter().enumerate() {
                if sys.rows[r].0[w] >> b & 1 == 1 {
                    v[col] = true;
                }
            }
            basis.push(v);
        }
        Some(basis)
    }

    /// Variables the system pins to a constant: reduced rows with a single
    /// coefficient. `None` if inconsistent.
    pub fn forced_assignments(&self) -> Option<Vec<(usize, bool)>> {
        let mut sys = self.clone();
        let pivots = sys.echelonize()?;
        let mut out = Vec::new();
        for (r, &col) in pivots.iter().enumerate() {
            let ones: u32 = sys.rows[r].0.iter().map(|w| w.count_ones()).sum();
            if ones == 1 {
                out.push((col, sys.rows[r].1));
            }
        }
        Some(out)
    }

    /// 2^(number of free variables), or `None` if inconsistent.
    pub fn num_solutions(&self) -> Option<BigUint> {
        let mut sys = self.clone();
        let pivots = sys.echelonize()?;
        Some(BigUint::from(1u8) << (self.nvars - pivots.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_products() {
        // (I+E01)(I+E12) = I + E01 + E12 + E02
        let a = BitMatrix::unit_upper(3, 0, 1);
        let b = BitMatrix::unit_upper(3, 1, 2);
        let expect = BitMatrix::from_entries(3, 3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(a.mul(&b), expect);
        // and in the other order the (0,2) corner is absent
        let expect_rev = BitMatrix::from_entries(3, 3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert_eq!(b.mul(&a), expect_rev);
    }

    #[test]
    fn unipotent_inverse_roundtrip() {
        let m = BitMatrix::unit_upper(3, 0, 1).mul(&BitMatrix::unit_upper(3, 1, 2));
        let inv = m.unipotent_inverse();
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert_eq!(inv.mul(&m), BitMatrix::identity(3));
        // (I + E01 + E12 + E02)^{-1} = I + E01 + E12
        assert_eq!(inv, BitMatrix::unit_upper(3, 1, 2).mul(&BitMatrix::unit_upper(3, 0, 1)));
    }

    #[test]
    fn handleslide_is_unit_upper() {
        assert_eq!(handleslide_matrix(3, 0, 1), BitMatrix::unit_upper(3, 0, 1));
        let h = handleslide_matrix(4, 2, 0);
        assert!(h.get(2, 0));
        assert_eq!(h.mul(&h), BitMatrix::identity(4));
    }

    #[test]
    fn strict_upper_respects_incomparable_pairs() {
        let basis = GradedBasis::with_incomparable(vec![0, 0, 0], 0, &[(1, 2)]);
        assert!(basis.is_strictly_upper(&BitMatrix::elem(3, 3, 0, 2)));
        assert!(!basis.is_strictly_upper(&BitMatrix::elem(3, 3, 1, 2)));
        assert!(!basis.is_strictly_upper(&BitMatrix::elem(3, 3, 2, 1)));
        assert!(basis.is_transitive());
    }

    #[test]
    fn homology_of_two_cusps_vanishes() {
        // dS2 = S1, dS4 = S3 on degrees (1,0,1,0): acyclic.
        let basis = GradedBasis::total(vec![1, 0, 1, 0], 0);
        let d = BitMatrix::from_entries(4, 4, &[(0, 1), (2, 3)]);
        let (dims, total) = homology_dims(&d, &basis);
        assert_eq!(total, 0);
        assert!(dims.values().all(|&v| v == 0));
    }

    #[test]
    fn homology_counts_survivors() {
        // dS2 = S1 and S5 untouched: one class in degree 0 and one in degree 2.
        let basis = GradedBasis::total(vec![1, 0, 2], 0);
        let d = BitMatrix::from_entries(3, 3, &[(0, 1)]);
        let (dims, total) = homology_dims(&d, &basis);
        assert_eq!(total, 1);
        assert_eq!(dims.get(&2), Some(&1));
        assert_eq!(dims.get(&0), Some(&0));
    }

    #[test]
    fn homology_mod_two() {
        let basis = GradedBasis::total(vec![0, 1, 1, 0], 2);
        let d = BitMatrix::from_entries(4, 4, &[(1, 0)]);
        let (dims, total) = homology_dims(&d, &basis);
        assert_eq!(total, 2);
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 1);
    }

    #[test]
    fn chain_map_and_homotopy_predicates() {
        let d = BitMatrix::elem(2, 2, 0, 1);
        let f = BitMatrix::identity(2);
        assert!(is_chain_map(&f, &d, &d));
        let g = BitMatrix::identity(2);
        let h = BitMatrix::identity(2);
        let k = BitMatrix::zero(2, 2);
        assert!(is_homotopy(&k, &d, &d, &g, &h));
        // d·k + k·d with k = E10 is E00 + E11 = I, so k interpolates I and 0.
        let k = BitMatrix::elem(2, 2, 1, 0);
        assert!(is_homotopy(&k, &d, &d, &BitMatrix::identity(2), &BitMatrix::zero(2, 2)));
    }

    #[test]
    fn linear_system_solve_and_kernel() {
        // x0 + x1 = 1, x1 + x2 = 0
        let mut sys = LinearSystem::new(3);
        sys.add_equation([0, 1], true);
        sys.add_equation([1, 2], false);
        let x = sys.solve().unwrap();
        assert_eq!(x, vec![true, false, false]);
        let kernel = sys.kernel_basis().unwrap();
        assert_eq!(kernel, vec![vec![true, true, true]]);
        assert_eq!(sys.num_solutions().unwrap(), BigUint::from(2u8));

        let mut bad = LinearSystem::new(2);
        bad.add_equation([0], true);
        bad.add_equation([0], false);
        assert!(bad.solve().is_none());
    }

    #[test]
    fn wide_linear_system() {
        let n = 130;
        let mut sys = LinearSystem::new(n);
        for i in 0..n - 1 {
            sys.add_equation([i, i + 1], false);
        }
        sys.add_equation([0], true);
        let x = sys.solve().unwrap();
        assert!(x.iter().all(|&b| b));
        assert_eq!(sys.num_solutions().unwrap(), BigUint::from(1u8));
    }

    #[test]
    fn rank_of_permutation() {
        let q = BitMatrix::transposition(4, 1, 2);
        assert_eq!(q.rank(), 4);
        assert_eq!(q.mul(&q), BitMatrix::identity(4));
    }
}
