//! The class-2 quotient of the lower central series.
//!
//! An element of the free class-2 nilpotent group on `k` ordered generators
//! is determined by its abelianized exponent vector `e` and an integer
//! vector `c` counting the basic commutators `[g_i, g_j] = g_i g_j g_i⁻¹ g_j⁻¹`
//! for `i < j` (lexicographic). Commutators are central, so collection is a
//! bilinear bookkeeping exercise: moving `g_j^b` left past `g_i^a` (i < j)
//! costs `[g_i, g_j]^{-ab}`.
//!
//! `Γ₂/Γ₃` of a finitely presented group is then exact integer linear
//! algebra: quotient the commutator coordinates by the part of the relator
//! lattice supported there. No group object for the quotient is ever built.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::catalog::Presentation;
use crate::intlinear::{
    hermite_normal_form, lattice_intersect_coordinate_subspace, quotient_structure,
    AbelianStructure, IntMat,
};
use crate::word::{Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Class2Error {
    #[error("generator {0} is not in the collection ordering")]
    UnknownGenerator(Generator),
}

/// Element of the free class-2 nilpotent group on `k` generators, in
/// collected normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Class2Element {
    k: usize,
    /// abelianized exponents, length `k`
    pub e: Vec<i64>,
    /// commutator exponents for pairs `(i, j)`, `i < j`, lexicographic;
    /// length `k(k-1)/2`
    pub c: Vec<i64>,
}

/// Index of the pair `(i, j)`, `i < j`, in the lexicographic basis.
pub fn pair_index(i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

impl Class2Element {
    pub fn identity(k: usize) -> Self {
        Class2Element {
            k,
            e: vec![0; k],
            c: vec![0; k * (k - 1) / 2],
        }
    }

    pub fn generator(k: usize, idx: usize, exp: i64) -> Self {
        let mut el = Class2Element::identity(k);
        el.e[idx] = exp;
        el
    }

    /// `(e₁,c₁)·(e₂,c₂) = (e₁+e₂, c₁+c₂+β(e₂,e₁))` with
    /// `β(u,v)_{ij} = -u_i v_j` for `i < j`.
    pub fn mul(&self, other: &Class2Element) -> Class2Element {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = Class2Element {
            k,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        };
        for i in 0..k {
            if other.e[i] == 0 {
                continue;
            }
            for j in i + 1..k {
                out.c[pair_index(i, j, k)] -= other.e[i] * self.e[j];
            }
        }
        out
    }

    pub fn inverse(&self) -> Class2Element {
        let k = self.k;
        let mut out = Class2Element {
            k,
            e: self.e.iter().map(|a| -a).collect(),
            c: self.c.iter().map(|a| -a).collect(),
        };
        for i in 0..k {
            for j in i + 1..k {
                out.c[pair_index(i, j, k)] -= self.e[i] * self.e[j];
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.e.iter().all(|&x| x == 0) && self.c.iter().all(|&x| x == 0)
    }
}

/// Image of `w` in the free class-2 nilpotent group over `ordering`.
pub fn collect(w: &Word, ordering: &[Generator]) -> Result<Class2Element, Class2Error> {
    let k = ordering.len();
    let index: BTreeMap<Generator, usize> =
        ordering.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut acc = Class2Element::identity(k);
    for &(g, e) in w.free_reduce().letters() {
        let &i = index.get(&g).ok_or(Class2Error::UnknownGenerator(g))?;
        acc = acc.mul(&Class2Element::generator(k, i, e));
    }
    Ok(acc)
}

/// The wedge row `ε ∧ e_j` in the commutator coordinates: the commutator
/// part of `[x, g_j]` for `x` with abelianized exponents `ε`.
fn wedge_row(eps: &[i64], j: usize) -> Vec<i64> {
    let k = eps.len();
    let mut row = vec![0i64; k * (k - 1) / 2];
    for a in 0..k {
        for b in a + 1..k {
            let idx = pair_index(a, b, k);
            if b == j {
                row[idx] += eps[a];
            }
            if a == j {
                row[idx] -= eps[b];
            }
        }
    }
    row
}

/// The relator lattice in `Z^{k + k(k-1)/2}`: one row `(ε(r), κ(r))` per
/// relator plus the wedge rows `(0, ε(r) ∧ e_j)` that close it under
/// conjugation.
pub fn relator_lattice(generators: &[Generator], relators: &[Word]) -> IntMat {
    let k = generators.len();
    let kk = k * (k - 1) / 2;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for r in relators {
        let el = collect(r, generators).expect("relators use declared generators");
        let mut row = el.e.clone();
        row.extend(&el.c);
        rows.push(row);
        for j in 0..k {
            let mut wrow = vec![0i64; k];
            wrow.extend(wedge_row(&el.e, j));
            rows.push(wrow);
        }
    }
    if rows.is_empty() {
        IntMat::zero(0, k + kk)
    } else {
        IntMat::from_rows_i64(&rows)
    }
}

/// Structure of `Γ₂(G)/Γ₃(G)` for the presented group `G`.
pub fn gamma2_mod_gamma3_parts(generators: &[Generator], relators: &[Word]) -> AbelianStructure {
    let k = generators.len();
    let kk = k * (k - 1) / 2;
    let lat = relator_lattice(generators, relators);
    let keep: Vec<usize> = (k..k + kk).collect();
    let basis = lattice_intersect_coordinate_subspace(&lat, &keep);
    quotient_structure(&pad_cols(&basis, kk))
}

fn pad_cols(m: &IntMat, cols: usize) -> IntMat {
    if m.cols == cols {
        return m.clone();
    }
    // only reachable when the basis is empty
    let mut out = IntMat::zero(m.rows, cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    out
}

pub fn gamma2_mod_gamma3(p: &Presentation) -> AbelianStructure {
    gamma2_mod_gamma3_parts(&p.generators, &p.relators)
}

/// Triviality check with a certificate: the Hermite basis of the commutator
/// part of the relator lattice. Trivial exactly when that basis is the
/// identity matrix on the commutator coordinates.
pub struct Gamma2Certificate {
    pub equal: bool,
    pub quotient: AbelianStructure,
    pub commutator_basis: IntMat,
}

pub fn check_gamma2_equals_gamma3(p: &Presentation) -> Gamma2Certificate {
    let k = p.generators.len();
    let kk = k * (k - 1) / 2;
    let lat = relator_lattice(&p.generators, &p.relators);
    let keep: Vec<usize> = (k..k + kk).collect();
    let basis = lattice_intersect_coordinate_subspace(&lat, &keep);
    let quotient = quotient_structure(&pad_cols(&basis, kk));
    Gamma2Certificate {
        equal: quotient.is_trivial(),
        quotient,
        commutator_basis: hermite_normal_form(&pad_cols(&basis, kk)),
    }
}

/// Membership of a collected element in the row lattice, used to confirm
/// that group products of relator rows stay inside the plain integer span.
pub fn lattice_contains_element(lat_hnf: &IntMat, el: &Class2Element) -> bool {
    let mut v: Vec<BigInt> = el.e.iter().map(|&x| BigInt::from(x)).collect();
    v.extend(el.c.iter().map(|&x| BigInt::from(x)));
    crate::intlinear::hnf_contains(lat_hnf, &v)
}
