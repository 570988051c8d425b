//! Exact integer matrix algorithms: Smith and Hermite normal forms, the
//! structure of finitely generated abelian groups, and lattice intersections
//! with coordinate subspaces.
//!
//! All arithmetic is arbitrary precision; intermediate entries in the
//! reductions grow past machine words even for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::catalog::Presentation;
use crate::word::exponent_vector;

/// A dense matrix over the integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[to] += c * row[from]
    pub fn add_row_multiple(&mut self, to: usize, from: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(from, j)] * c;
            self[(to, j)] += v;
        }
    }

    /// col[to] += c * col[from]
    pub fn add_col_multiple(&mut self, to: usize, from: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, from)] * c;
            self[(i, to)] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss); exact.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal satisfying the
/// divisibility chain `d_1 | d_2 | …`, diagonal entries nonnegative.
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

/// Pivot choice: smallest nonzero absolute value in the trailing region,
/// ties broken by position. Deterministic and growth-limiting.
fn find_pivot(a: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            if a[(i, j)].is_zero() {
                continue;
            }
            let mag = a[(i, j)].abs();
            match &best {
                Some((m, _, _)) if *m <= mag => {}
                _ => best = Some((mag, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let lim = a.rows.min(a.cols);
    let mut t = 0;
    while t < lim {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        'clear: loop {
            // clear column t
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    // remainder is a smaller pivot candidate
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'clear;
                }
            }
            // clear row t
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'clear;
                }
            }
            // divisibility fix: the pivot must divide the whole region
            for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'clear;
                    }
                }
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d, v }
}

/// Row-style Hermite normal form: echelon with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped; the
/// row span is preserved.
pub fn hermite_normal_form(a: &IntMat) -> IntMat {
    let mut h = a.clone();
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // gcd-reduce everything in this column below pivot_row into one row
        loop {
            let mut best: Option<(BigInt, usize)> = None;
            for i in pivot_row..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let mag = h[(i, col)].abs();
                match &best {
                    Some((m, _)) if *m <= mag => {}
                    _ => best = Some((mag, i)),
                }
            }
            let Some((_, imin)) = best else {
                break;
            };
            h.swap_rows(pivot_row, imin);
            let mut any_left = false;
            for i in pivot_row + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, col)] / &h[(pivot_row, col)]);
                h.add_row_multiple(i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = -h[(i, col)].div_floor(&h[(pivot_row, col)]);
            h.add_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    // drop zero rows
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..pivot_row {
        rows.push(h.row(i).to_vec());
    }
    let mut out = IntMat::zero(rows.len(), a.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

/// Whether `v` lies in the row lattice with Hermite basis `hnf`.
pub fn hnf_contains(hnf: &IntMat, v: &[BigInt]) -> bool {
    assert_eq!(hnf.cols, v.len());
    let mut v = v.to_vec();
    for i in 0..hnf.rows {
        let Some(col) = (0..hnf.cols).find(|&j| !hnf[(i, j)].is_zero()) else {
            continue;
        };
        let q = &v[col] / &hnf[(i, col)];
        if !q.is_zero() {
            for j in 0..hnf.cols {
                let d = &hnf[(i, j)] * &q;
                v[j] -= d;
            }
        }
        if !v[col].is_zero() {
            return false;
        }
    }
    v.iter().all(Zero::is_zero)
}

/// The invariant-factor decomposition of a finitely generated abelian group:
/// free rank plus the divisibility-chained torsion coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AbelianStructure {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianStructure {
    pub fn free(rank: usize) -> Self {
        AbelianStructure {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Structure of `Z^cols / rowspan(a)`.
pub fn quotient_structure(a: &IntMat) -> AbelianStructure {
    let snf = smith_normal_form(a);
    let mut torsion = Vec::new();
    let mut nonzero = 0usize;
    for i in 0..a.rows.min(a.cols) {
        let d = &snf.d[(i, i)];
        if d.is_zero() {
            continue;
        }
        nonzero += 1;
        if !d.is_one() {
            torsion.push(u64::try_from(d).expect("torsion coefficient fits in u64"));
        }
    }
    AbelianStructure {
        rank: a.cols - nonzero,
        torsion,
    }
}

/// The exponent matrix of a presentation: one row per relator, one column
/// per generator in declaration order.
pub fn relation_matrix(p: &Presentation) -> IntMat {
    let mut m = IntMat::zero(p.relators.len(), p.generators.len());
    for (i, rel) in p.relators.iter().enumerate() {
        let v = exponent_vector(rel, &p.generators).expect("validated presentation");
        for (j, e) in v.into_iter().enumerate() {
            m[(i, j)] = BigInt::from(e);
        }
    }
    m
}

/// Abelianization of a finitely presented group, via the Smith normal form
/// of its relation exponent matrix.
pub fn abelianization(p: &Presentation) -> AbelianStructure {
    quotient_structure(&relation_matrix(p))
}

/// Basis of `{v ∈ rowspan(l) : v_j = 0 for all j ∉ keep}`, restricted to the
/// kept coordinates (in ascending order of kept column index).
pub fn lattice_intersect_coordinate_subspace(l: &IntMat, keep: &[usize]) -> IntMat {
    let keep_set: std::collections::BTreeSet<usize> = keep.iter().copied().collect();
    assert!(keep_set.iter().all(|&j| j < l.cols));
    let drop: Vec<usize> = (0..l.cols).filter(|j| !keep_set.contains(j)).collect();
    let kept: Vec<usize> = keep_set.into_iter().collect();
    // permute columns: dropped first, then kept; rows with echelon pivots in
    // the dropped prefix carry all the nonzero prefix content, so the
    // remaining rows form a basis of the intersection
    let mut perm = IntMat::zero(l.rows, l.cols);
    for i in 0..l.rows {
        for (jj, &j) in drop.iter().enumerate() {
            perm[(i, jj)] = l[(i, j)].clone();
        }
        for (jj, &j) in kept.iter().enumerate() {
            perm[(i, drop.len() + jj)] = l[(i, j)].clone();
        }
    }
    let h = hermite_normal_form(&perm);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..h.rows {
        if (0..drop.len()).all(|j| h[(i, j)].is_zero()) {
            rows.push((drop.len()..h.cols).map(|j| h[(i, j)].clone()).collect());
        }
    }
    let mut out = IntMat::zero(rows.len(), kept.len());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

/// Integer kernel of `a` (a basis of `{x : a·x = 0}`), one basis vector per
/// row, computed from the Smith decomposition.
pub fn integer_kernel(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    let lim = a.rows.min(a.cols);
    let mut rank = 0;
    for i in 0..lim {
        if !snf.d[(i, i)].is_zero() {
            rank += 1;
        }
    }
    // kernel basis = columns of V with index >= rank
    let mut out = IntMat::zero(a.cols - rank, a.cols);
    for (bi, col) in (rank..a.cols).enumerate() {
        for j in 0..a.cols {
            out[(bi, j)] = snf.v[(j, col)].clone();
        }
    }
    out
}
