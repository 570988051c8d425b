//! Constructors for the presentations of the braid groups of the projective
//! plane and of the subgroups that arise from the strand-forgetting fibration.
//!
//! Every relation `lhs = rhs` of the source presentations is stored as the
//! single relator `lhs · rhs⁻¹`, freely reduced, so downstream consumers see
//! one uniform shape. Builders are deterministic: relators are emitted in the
//! relation numbering of the defining statement, then in lexicographic index
//! order.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Generator, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Van Buskirk's presentation of the full braid group of the projective
    /// plane on `n` strands.
    VanBuskirkBn,
    /// The pure braid group of the projective plane on `n` strands.
    PurePn,
    /// `Π_{n,m}`: the pure braid group of the projective plane with `n`
    /// punctures, on `m` strands.
    PuncturedPurePi,
    /// `β_{n,m}`: the full braid group of the projective plane with `n`
    /// punctures, on `m` strands.
    PuncturedFullBeta,
    /// `B_{n,m}`: mixed braids on `n + m` strands whose permutation
    /// preserves the block partition.
    MixedBnm,
    /// `B_{n,m}` modulo the commutator subgroup of `β_{n,m}`: the quotient
    /// in which the splitting obstruction is computed.
    QuotientGamma2,
    /// The free-group kernel of the strand-forgetting map on pure braid
    /// groups: `n + 1` generators, one relation.
    KernelFree,
}

pub const ALL_FAMILIES: [Family; 7] = [
    Family::VanBuskirkBn,
    Family::PurePn,
    Family::PuncturedPurePi,
    Family::PuncturedFullBeta,
    Family::MixedBnm,
    Family::QuotientGamma2,
    Family::KernelFree,
];

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::VanBuskirkBn => "VanBuskirk_Bn",
            Family::PurePn => "Pure_Pn",
            Family::PuncturedPurePi => "PuncturedPure_Pi",
            Family::PuncturedFullBeta => "PuncturedFull_beta",
            Family::MixedBnm => "Mixed_Bnm",
            Family::QuotientGamma2 => "QuotientGamma2",
            Family::KernelFree => "KernelFree",
        }
    }

    pub fn parse_tag(s: &str) -> Option<Family> {
        ALL_FAMILIES.iter().copied().find(|f| f.tag() == s)
    }

    pub fn takes_m(&self) -> bool {
        matches!(
            self,
            Family::PuncturedPurePi
                | Family::PuncturedFullBeta
                | Family::MixedBnm
                | Family::QuotientGamma2
        )
    }

    /// Smallest admissible `n` for the family.
    pub fn min_n(&self) -> u32 {
        match self {
            Family::MixedBnm | Family::QuotientGamma2 => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("family {family} requires n >= {min}, got n = {n}")]
    NOutOfRange { family: Family, min: u32, n: u32 },
    #[error("family {family} requires a strand count m >= 1")]
    MissingM { family: Family },
    #[error("family {family} takes no strand count m")]
    UnexpectedM { family: Family },
    #[error("strand count m must be >= 1, got m = {m}")]
    MOutOfRange { m: u32 },
    #[error("B indices must satisfy i < j, got ({i}, {j})")]
    BadBIndices { i: u32, j: u32 },
    #[error("B_({i},{j}) with j <= n = {n} is not a generator in the punctured families")]
    BNotInContext { i: u32, j: u32, n: u32 },
    #[error("relator {relator} uses undeclared generator {generator}")]
    UndeclaredGenerator { relator: String, generator: Generator },
}

/// A finite presentation: declared generators plus relator words, each equal
/// to the identity in the presented group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Presentation {
    pub family: Family,
    pub n: u32,
    pub m: Option<u32>,
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl Presentation {
    /// Checks that every relator uses only declared generators.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let declared: BTreeSet<Generator> = self.generators.iter().copied().collect();
        for rel in &self.relators {
            for &(g, _) in rel.letters() {
                if !declared.contains(&g) {
                    return Err(CatalogError::UndeclaredGenerator {
                        relator: rel.to_string(),
                        generator: g,
                    });
                }
            }
        }
        Ok(())
    }
}

fn s(i: u32) -> Word {
    Word::gen(Generator::Sigma(i))
}
fn sp(i: u32, e: i64) -> Word {
    Word::power(Generator::Sigma(i), e)
}
fn r(k: u32) -> Word {
    Word::gen(Generator::Rho(k))
}
fn rp(k: u32, e: i64) -> Word {
    Word::power(Generator::Rho(k), e)
}
fn t(i: u32) -> Word {
    Word::gen(Generator::Tau(i))
}
fn q(j: u32) -> Word {
    Word::gen(Generator::Q(j))
}
fn qp(j: u32, e: i64) -> Word {
    Word::power(Generator::Q(j), e)
}
fn bb(i: u32, j: u32) -> Word {
    Word::gen(Generator::B(i, j))
}
fn bp(i: u32, j: u32, e: i64) -> Word {
    Word::power(Generator::B(i, j), e)
}

fn cat<I: IntoIterator<Item = Word>>(parts: I) -> Word {
    parts
        .into_iter()
        .fold(Word::identity(), |acc, w| acc.concat(&w))
}

/// `lhs = rhs` stored as the freely reduced relator `lhs · rhs⁻¹`.
fn rel(lhs: Word, rhs: Word) -> Word {
    lhs.concat(&rhs.inverse()).free_reduce()
}

/// The letter `B_{i,j}` of the punctured families. Atomic when `i <= n < j`;
/// for `n < i < j` it is not a declared generator and expands into the
/// σ-word `σ_{j-1-n}⋯σ_{i+1-n} σ_{i-n}² σ_{i+1-n}⁻¹⋯σ_{j-1-n}⁻¹`.
pub fn expand_b(i: u32, j: u32, n: u32) -> Result<Word, CatalogError> {
    if i >= j {
        return Err(CatalogError::BadBIndices { i, j });
    }
    if j <= n {
        return Err(CatalogError::BNotInContext { i, j, n });
    }
    if i <= n {
        return Ok(bb(i, j));
    }
    let lo = i - n;
    let hi = j - 1 - n;
    let mut w = cat((lo + 1..=hi).rev().map(s));
    w = w.concat(&sp(lo, 2));
    w = w.concat(&cat((lo + 1..=hi).map(|x| sp(x, -1))));
    Ok(w.free_reduce())
}

/// `σ_t σ_{t-1} ⋯ σ_{lo+1} σ_lo² σ_{lo+1}^{e} ⋯ σ_t^{e}` with `e = ±1`;
/// empty when `t < lo`.
fn sigma_vee(t: u32, lo: u32, tail_sign: i64) -> Word {
    if t < lo {
        return Word::identity();
    }
    let mut w = cat((lo + 1..=t).rev().map(s));
    w = w.concat(&sp(lo, 2));
    w.concat(&cat((lo + 1..=t).map(|x| sp(x, tail_sign))))
}

/// `σ_s σ_{s+1} ⋯ σ_{hi-1} σ_hi² σ_{hi-1} ⋯ σ_s` (all positive), empty when
/// `s > hi`.
fn sigma_wedge_up(sv: u32, hi: u32) -> Word {
    if sv > hi {
        return Word::identity();
    }
    let mut w = cat((sv..hi).map(s));
    w = w.concat(&sp(hi, 2));
    w.concat(&cat((sv..hi).rev().map(s)))
}

/// `σ_{hi}^{-1} ⋯ σ_{lo+1}^{-1} σ_lo² σ_{lo+1} ⋯ σ_{hi}`, empty head/tail
/// when `hi < lo`.
fn sigma_conj_updown(hi: u32, lo: u32) -> Word {
    if hi < lo {
        return Word::identity();
    }
    let mut w = cat((lo + 1..=hi).rev().map(|x| sp(x, -1)));
    w = w.concat(&sp(lo, 2));
    w.concat(&cat((lo + 1..=hi).map(s)))
}

/// Entry point: builds the presentation of `family` at the given parameters.
pub fn build(family: Family, n: u32, m: Option<u32>) -> Result<Presentation, CatalogError> {
    if n < family.min_n() {
        return Err(CatalogError::NOutOfRange {
            family,
            min: family.min_n(),
            n,
        });
    }
    let m = match (family.takes_m(), m) {
        (true, Some(m)) if m >= 1 => Some(m),
        (true, Some(m)) => return Err(CatalogError::MOutOfRange { m }),
        (true, None) => return Err(CatalogError::MissingM { family }),
        (false, None) => None,
        (false, Some(_)) => return Err(CatalogError::UnexpectedM { family }),
    };
    let p = match family {
        Family::VanBuskirkBn => build_van_buskirk(n),
        Family::PurePn => build_pure(n),
        Family::PuncturedPurePi => build_punctured_pure(n, m.unwrap()),
        Family::PuncturedFullBeta => build_beta(n, m.unwrap()),
        Family::MixedBnm => build_mixed(n, m.unwrap()),
        Family::QuotientGamma2 => build_quotient_gamma2(n, m.unwrap()),
        Family::KernelFree => build_kernel_free(n),
    };
    debug_assert!(p.validate().is_ok());
    Ok(p)
}

fn build_van_buskirk(n: u32) -> Presentation {
    let mut generators: Vec<Generator> = (1..n).map(Generator::Sigma).collect();
    generators.extend((1..=n).map(Generator::Rho));
    let mut relators = Vec::new();
    // (i) distant σ commute
    for i in 1..n {
        for j in i + 2..n {
            relators.push(rel(s(i).concat(&s(j)), s(j).concat(&s(i))));
        }
    }
    // (ii) braid relations
    for i in 1..=n.saturating_sub(2) {
        relators.push(rel(
            cat([s(i), s(i + 1), s(i)]),
            cat([s(i + 1), s(i), s(i + 1)]),
        ));
    }
    // (iii) σ_i ρ_j = ρ_j σ_i for j ≠ i, i+1
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            relators.push(rel(s(i).concat(&r(j)), r(j).concat(&s(i))));
        }
    }
    // (iv) ρ_i = σ_i ρ_{i+1} σ_i
    for i in 1..n {
        relators.push(rel(r(i), cat([s(i), r(i + 1), s(i)])));
    }
    // (v) σ_i² = ρ_{i+1}⁻¹ ρ_i⁻¹ ρ_{i+1} ρ_i
    for i in 1..n {
        relators.push(rel(
            sp(i, 2),
            cat([rp(i + 1, -1), rp(i, -1), r(i + 1), r(i)]),
        ));
    }
    // (vi) ρ_1² = σ_1 ⋯ σ_{n-2} σ_{n-1}² σ_{n-2} ⋯ σ_1
    relators.push(rel(rp(1, 2), sigma_wedge_up(1, n - 1)));
    Presentation {
        family: Family::VanBuskirkBn,
        n,
        m: None,
        generators,
        relators,
    }
}

/// `∏_{l=lo}^{hi} B_{l,j}` (ascending, atomic letters).
fn b_run_first(lo: u32, hi: u32, j: u32) -> Word {
    cat((lo..=hi).map(|l| bb(l, j)))
}

fn build_pure(n: u32) -> Presentation {
    let mut generators: Vec<Generator> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            generators.push(Generator::B(i, j));
        }
    }
    generators.extend((1..=n).map(Generator::Rho));

    let mut relators = Vec::new();
    // (i) Artin relations among the B generators
    for rr in 1..=n {
        for ss in rr + 1..=n {
            for i in 1..=n {
                for j in i + 1..=n {
                    let lhs = cat([bb(rr, ss), bb(i, j), bp(rr, ss, -1)]);
                    let rhs = if (i < rr && ss < j) || (ss < i) {
                        bb(i, j)
                    } else if rr < i && i == ss && ss < j {
                        cat([bp(i, j, -1), bp(rr, j, -1), bb(i, j), bb(rr, j), bb(i, j)])
                    } else if i == rr && ss < j {
                        cat([bp(ss, j, -1), bb(i, j), bb(ss, j)])
                    } else if rr < i && i < ss && ss < j {
                        cat([
                            bp(ss, j, -1),
                            bp(rr, j, -1),
                            bb(ss, j),
                            bb(rr, j),
                            bb(i, j),
                            bp(rr, j, -1),
                            bp(ss, j, -1),
                            bb(rr, j),
                            bb(ss, j),
                        ])
                    } else {
                        continue;
                    };
                    relators.push(rel(lhs, rhs));
                }
            }
        }
    }
    // (ii) surface relations: ρ_i (B_{1,i}⋯B_{i-1,i}) = (B_{i,i+1}⋯B_{i,n}) ρ_i⁻¹
    for i in 1..=n {
        let lhs = r(i).concat(&cat((1..i).map(|l| bb(l, i))));
        let rhs = cat((i + 1..=n).map(|l| bb(i, l))).concat(&rp(i, -1));
        relators.push(rel(lhs, rhs));
    }
    // (iii) ρ_i ρ_j ρ_i⁻¹ = (∏_{l=i+1}^{j-1} B_{l,j})⁻¹ B_{i,j} (∏) ρ_j
    for i in 1..=n {
        for j in i + 1..=n {
            let mid = b_run_first(i + 1, j - 1, j);
            let rhs = cat([mid.inverse(), bb(i, j), mid, r(j)]);
            relators.push(rel(cat([r(i), r(j), rp(i, -1)]), rhs));
        }
    }
    // (iv) ρ_k B_{i,j} ρ_k⁻¹ with k ≠ j
    for i in 1..=n {
        for j in i + 1..=n {
            for k in (1..=n).filter(|&k| k != j) {
                let lhs = cat([r(k), bb(i, j), rp(k, -1)]);
                let rhs = if j < k || k < i {
                    bb(i, j)
                } else if k == i {
                    let mid = b_run_first(k + 1, j - 1, j);
                    cat([rp(j, -1), mid.inverse(), bp(i, j, -1), mid, r(j)])
                } else {
                    // i < k < j
                    let mid = b_run_first(k + 1, j - 1, j);
                    let a = cat([rp(j, -1), mid.inverse(), bp(k, j, -1), mid, r(j)]);
                    cat([a.clone(), bb(i, j), a.inverse()])
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    Presentation {
        family: Family::PurePn,
        n,
        m: None,
        generators,
        relators,
    }
}

fn build_punctured_pure(n: u32, m: u32) -> Presentation {
    let mut generators: Vec<Generator> = Vec::new();
    for j in n + 1..=n + m {
        for i in 1..j {
            generators.push(Generator::B(i, j));
        }
    }
    generators.extend((n + 1..=n + m).map(Generator::Rho));

    let mut relators = Vec::new();
    // (i) Artin relations: (i,j) acting on (k,l), with n+1 <= j < l <= n+m
    for j in n + 1..=n + m {
        for i in 1..j {
            for l in j + 1..=n + m {
                for k in 1..l {
                    let lhs = cat([bb(i, j), bb(k, l), bp(i, j, -1)]);
                    let rhs = if k < i || j < k {
                        bb(k, l)
                    } else if i < k && k == j {
                        cat([bp(k, l, -1), bp(i, l, -1), bb(k, l), bb(i, l), bb(k, l)])
                    } else if k == i {
                        cat([bp(j, l, -1), bb(k, l), bb(j, l)])
                    } else if i < k && k < j {
                        cat([
                            bp(j, l, -1),
                            bp(i, l, -1),
                            bb(j, l),
                            bb(i, l),
                            bb(k, l),
                            bp(i, l, -1),
                            bp(j, l, -1),
                            bb(i, l),
                            bb(j, l),
                        ])
                    } else {
                        continue;
                    };
                    relators.push(rel(lhs, rhs));
                }
            }
        }
    }
    // (ii) surface relations
    for k in n + 1..=n + m {
        let lhs = r(k).concat(&b_run_first(1, k - 1, k));
        let rhs = cat((k + 1..=n + m).map(|l| bb(k, l))).concat(&rp(k, -1));
        relators.push(rel(lhs, rhs));
    }
    // (iii)
    for k in n + 1..=n + m {
        for l in k + 1..=n + m {
            let mid = b_run_first(k + 1, l - 1, l);
            let rhs = cat([mid.inverse(), bb(k, l), mid, r(l)]);
            relators.push(rel(cat([r(k), r(l), rp(k, -1)]), rhs));
        }
    }
    // (iv) ρ_k B_{i,j} ρ_k⁻¹ for j >= n+2, k ≠ j
    for j in n + 2..=n + m {
        for i in 1..j {
            for k in (n + 1..=n + m).filter(|&k| k != j) {
                let lhs = cat([r(k), bb(i, j), rp(k, -1)]);
                let rhs = if j < k || k < i {
                    bb(i, j)
                } else if k == i {
                    let mid = b_run_first(k + 1, j - 1, j);
                    cat([rp(j, -1), mid.inverse(), bp(i, j, -1), mid, r(j)])
                } else if i < k && k < j {
                    let mid = b_run_first(k + 1, j - 1, j);
                    let a = cat([rp(j, -1), mid.inverse(), bp(k, j, -1), mid, r(j)]);
                    cat([a.clone(), bb(i, j), a.inverse()])
                } else {
                    continue;
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    Presentation {
        family: Family::PuncturedPurePi,
        n,
        m: Some(m),
        generators,
        relators,
    }
}

/// Relators (i)-(vii) of the punctured full braid group `β_{n,m}`, shared by
/// its own presentation and by the mixed group.
fn beta_relators(n: u32, m: u32) -> Vec<Word> {
    let xb = |i: u32, j: u32| expand_b(i, j, n).expect("indices are in range by construction");
    let mut relators = Vec::new();
    // (i) B_{i,j} acting on B_{k,l} for n+1 <= j < l <= n+m
    for j in n + 1..=n + m {
        for l in j + 1..=n + m {
            for i in 1..=n {
                for k in 1..=n {
                    let lhs = cat([bb(i, j), bb(k, l), bp(i, j, -1)]);
                    let rhs = if k < i {
                        bb(k, l)
                    } else if k == i {
                        cat([xb(j, l).inverse(), bb(k, l), xb(j, l)])
                    } else {
                        cat([
                            xb(j, l).inverse(),
                            bp(i, l, -1),
                            xb(j, l),
                            bb(i, l),
                            bb(k, l),
                            bp(i, l, -1),
                            xb(j, l).inverse(),
                            bb(i, l),
                            xb(j, l),
                        ])
                    };
                    relators.push(rel(lhs, rhs));
                }
                // the case k = j: the conjugated letter is the σ-expansion of
                // B_{j,l}, and the right-hand side uses
                // Λ_{j,l} = σ_{l-1-n}⋯σ_{j+1-n} σ_{j-n}⁻² σ_{j+1-n}⁻¹⋯σ_{l-1-n}⁻¹
                let lam = {
                    let lo = j - n;
                    let hi = l - 1 - n;
                    let mut w = cat((lo + 1..=hi).rev().map(s));
                    w = w.concat(&sp(lo, -2));
                    w.concat(&cat((lo + 1..=hi).map(|x| sp(x, -1))))
                };
                let lhs = cat([bb(i, j), xb(j, l), bp(i, j, -1)]);
                let rhs = cat([
                    lam.clone(),
                    bp(i, l, -1),
                    lam.inverse(),
                    bb(i, l),
                    lam.inverse(),
                ]);
                relators.push(rel(lhs, rhs));
            }
        }
    }
    // (ii) surface relations:
    // ρ_k (∏_{i=1}^n B_{i,k}) (σ_{k-1-n}⋯σ_1²⋯σ_{k-1-n})
    //   = (σ_{k-n}⋯σ_{m-1}²⋯σ_{k-n}) ρ_k⁻¹
    for k in n + 1..=n + m {
        let lhs = cat([
            r(k),
            b_run_first(1, n, k),
            if k - n >= 2 {
                sigma_vee(k - 1 - n, 1, 1)
            } else {
                Word::identity()
            },
        ]);
        let rhs = sigma_wedge_up(k - n, m - 1).concat(&rp(k, -1));
        relators.push(rel(lhs, rhs));
    }
    // (iii) two relations per pair n+1 <= k < j <= n+m
    for k in n + 1..=n + m {
        for j in k + 1..=n + m {
            let first = sigma_conj_updown(j - 1 - n, k - n);
            relators.push(rel(cat([r(k), r(j), rp(k, -1)]), first.concat(&r(j))));
            let second = sigma_vee(j - 1 - n, k - n, -1);
            relators.push(rel(cat([rp(k, -1), r(j), r(k)]), r(j).concat(&second)));
        }
    }
    // (iv) ρ_k B_{i,j} ρ_k⁻¹
    for i in 1..=n {
        for j in n + 1..=n + m {
            for k in (n + 1..=n + m).filter(|&k| k != j) {
                let lhs = cat([r(k), bb(i, j), rp(k, -1)]);
                let rhs = if j < k {
                    bb(i, j)
                } else {
                    let tjk = cat([rp(j, -1), sigma_conj_updown(j - 1 - n, k - n), r(j)]);
                    cat([tjk.inverse(), bb(i, j), tjk])
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    // (v) Artin relations among the σ
    for rr in 1..m {
        for ss in rr + 2..m {
            relators.push(rel(s(rr).concat(&s(ss)), s(ss).concat(&s(rr))));
        }
    }
    for rr in 1..m.saturating_sub(1) {
        relators.push(rel(
            cat([s(rr), s(rr + 1), s(rr)]),
            cat([s(rr + 1), s(rr), s(rr + 1)]),
        ));
    }
    // (vi) σ_r B_{i,j} σ_r⁻¹
    for i in 1..=n {
        for j in n + 1..=n + m {
            for rr in 1..m {
                let lhs = cat([s(rr), bb(i, j), sp(rr, -1)]);
                let rhs = if rr + n + 1 == j {
                    // r = j - n - 1, so j >= n+2
                    cat([sp(j - n - 1, 2), bb(i, j - 1), sp(j - n - 1, -2)])
                } else if rr + n == j {
                    // r = j - n, so j <= n+m-1
                    bb(i, j + 1)
                } else {
                    bb(i, j)
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    // (vii) σ_r ρ_k σ_r⁻¹
    for rr in 1..m {
        for k in n + 1..=n + m {
            let lhs = cat([s(rr), r(k), sp(rr, -1)]);
            let rhs = if rr + n == k {
                sp(k - n, 2).concat(&r(k + 1))
            } else if rr + n + 1 == k {
                r(k - 1).concat(&sp(k - 1 - n, -2))
            } else {
                r(k)
            };
            relators.push(rel(lhs, rhs));
        }
    }
    relators
}

fn beta_generators(n: u32, m: u32) -> Vec<Generator> {
    let mut generators: Vec<Generator> = Vec::new();
    for i in 1..=n {
        for j in n + 1..=n + m {
            generators.push(Generator::B(i, j));
        }
    }
    generators.extend((n + 1..=n + m).map(Generator::Rho));
    generators.extend((1..m).map(Generator::Sigma));
    generators
}

fn build_beta(n: u32, m: u32) -> Presentation {
    Presentation {
        family: Family::PuncturedFullBeta,
        n,
        m: Some(m),
        generators: beta_generators(n, m),
        relators: beta_relators(n, m),
    }
}

/// `N_{t,k} = (∏_{l=t+1}^n B_{l,k}) (σ_{k-1-n}⋯σ_1²⋯σ_{k-1-n})`.
fn mixed_n_word(t: u32, k: u32, n: u32) -> Word {
    let sig = if k - n >= 2 {
        sigma_vee(k - 1 - n, 1, 1)
    } else {
        Word::identity()
    };
    b_run_first(t + 1, n, k).concat(&sig)
}

/// `E_{t,k} = N_{t,k}⁻¹ B_{t,k} N_{t,k}`.
fn mixed_e_word(t: u32, k: u32, n: u32) -> Word {
    let nw = mixed_n_word(t, k, n);
    cat([nw.inverse(), bb(t, k), nw])
}

fn build_mixed(n: u32, m: u32) -> Presentation {
    let mut generators = beta_generators(n, m);
    generators.extend((1..n).map(Generator::Tau));
    generators.extend((1..=n).map(Generator::Q));

    // (I) the relators of β_{n,m}
    let mut relators = beta_relators(n, m);

    // (II) the lifted relations of the base group. The distant commutation
    // τ_i τ_j = τ_j τ_i for |i-j| > 1 is encoded in braid-commutation form,
    // matching the corresponding σ-relation (some printed statements of this
    // presentation render it as a vacuous identity).
    for i in 1..n {
        for j in i + 2..n {
            relators.push(rel(t(i).concat(&t(j)), t(j).concat(&t(i))));
        }
    }
    for i in 1..=n.saturating_sub(2) {
        relators.push(rel(
            cat([t(i), t(i + 1), t(i)]),
            cat([t(i + 1), t(i), t(i + 1)]),
        ));
    }
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            relators.push(rel(t(i).concat(&q(j)), q(j).concat(&t(i))));
        }
    }
    for i in 1..n {
        relators.push(rel(q(i), cat([t(i), q(i + 1), t(i)])));
    }
    for i in 1..n {
        relators.push(rel(
            Word::power(Generator::Tau(i), 2),
            cat([qp(i + 1, -1), qp(i, -1), q(i + 1), q(i)]),
        ));
    }
    {
        // q_1² = (τ_1⋯τ_{n-1}) (B_{n,n+1}⋯B_{n,n+m}) (τ_{n-1}⋯τ_1)
        let taus_up = cat((1..n).map(t));
        let taus_down = cat((1..n).rev().map(t));
        let bs = cat((n + 1..=n + m).map(|j| bb(n, j)));
        relators.push(rel(qp(1, 2), cat([taus_up, bs, taus_down])));
    }

    // (III)(a) σ commutes with τ and q
    for l in 1..m {
        for i in 1..n {
            relators.push(rel(s(l).concat(&t(i)), t(i).concat(&s(l))));
        }
    }
    for l in 1..m {
        for j in 1..=n {
            relators.push(rel(s(l).concat(&q(j)), q(j).concat(&s(l))));
        }
    }
    // (III)(b) ρ commutes with τ; q_t ρ_k q_t⁻¹ = E_{t,k} ρ_k
    for k in n + 1..=n + m {
        for i in 1..n {
            relators.push(rel(r(k).concat(&t(i)), t(i).concat(&r(k))));
        }
    }
    for tt in 1..=n {
        for k in n + 1..=n + m {
            let lhs = cat([q(tt), r(k), qp(tt, -1)]);
            let rhs = mixed_e_word(tt, k, n).concat(&r(k));
            relators.push(rel(lhs, rhs));
        }
    }
    // (III)(c) τ_s B_{i,j} τ_s⁻¹
    for ss in 1..n {
        for i in 1..=n {
            for j in n + 1..=n + m {
                let lhs = cat([t(ss), bb(i, j), Word::power(Generator::Tau(ss), -1)]);
                let rhs = if ss + 1 == i {
                    cat([bp(i, j, -1), bb(i - 1, j), bb(i, j)])
                } else if ss == i {
                    bb(i + 1, j)
                } else {
                    bb(i, j)
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    // (III)(d) q_t B_{i,k} q_t⁻¹
    for tt in 1..=n {
        for i in 1..=n {
            for k in n + 1..=n + m {
                let lhs = cat([q(tt), bb(i, k), qp(tt, -1)]);
                let rhs = if tt < i {
                    bb(i, k)
                } else if tt == i {
                    let c = mixed_n_word(tt, k, n).concat(&r(k));
                    cat([c.inverse(), bp(i, k, -1), c])
                } else {
                    let c = cat([rp(k, -1), mixed_e_word(tt, k, n), r(k)]);
                    cat([c.inverse(), bb(i, k), c])
                };
                relators.push(rel(lhs, rhs));
            }
        }
    }
    Presentation {
        family: Family::MixedBnm,
        n,
        m: Some(m),
        generators,
        relators,
    }
}

/// Generators of the Γ₂-quotient, named by their chosen coset
/// representatives: `σ₁`, `ρ_{n+1}` and `B_{i,n+1}`.
pub fn quotient_sigma() -> Generator {
    Generator::Sigma(1)
}
pub fn quotient_rho(n: u32) -> Generator {
    Generator::Rho(n + 1)
}
pub fn quotient_beta(i: u32, n: u32) -> Generator {
    Generator::B(i, n + 1)
}

fn build_quotient_gamma2(n: u32, m: u32) -> Presentation {
    let sg = quotient_sigma();
    let rg = quotient_rho(n);
    let beta = |i: u32| Word::gen(quotient_beta(i, n));
    let mut kernel_gens = vec![rg, sg];
    kernel_gens.extend((1..=n).map(|i| quotient_beta(i, n)));

    let mut generators = kernel_gens.clone();
    generators.extend((1..n).map(Generator::Tau));
    generators.extend((1..=n).map(Generator::Q));

    let mut relators = Vec::new();
    // (I)(i) the kernel generators commute pairwise
    for a in 0..kernel_gens.len() {
        for b in a + 1..kernel_gens.len() {
            let (x, y) = (Word::gen(kernel_gens[a]), Word::gen(kernel_gens[b]));
            relators.push(rel(x.concat(&y), y.concat(&x)));
        }
    }
    // (I)(ii) σ² = 1
    relators.push(Word::power(sg, 2));
    // (I)(iii) ρ² β_1 ⋯ β_n = 1
    relators.push(cat(
        std::iter::once(Word::power(rg, 2)).chain((1..=n).map(beta)),
    ));
    // (II) as in the mixed group, with the B-word collapsed to β_n^m
    for i in 1..n {
        for j in i + 2..n {
            relators.push(rel(t(i).concat(&t(j)), t(j).concat(&t(i))));
        }
    }
    for i in 1..=n.saturating_sub(2) {
        relators.push(rel(
            cat([t(i), t(i + 1), t(i)]),
            cat([t(i + 1), t(i), t(i + 1)]),
        ));
    }
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            relators.push(rel(t(i).concat(&q(j)), q(j).concat(&t(i))));
        }
    }
    for i in 1..n {
        relators.push(rel(q(i), cat([t(i), q(i + 1), t(i)])));
    }
    for i in 1..n {
        relators.push(rel(
            Word::power(Generator::Tau(i), 2),
            cat([qp(i + 1, -1), qp(i, -1), q(i + 1), q(i)]),
        ));
    }
    {
        let taus_up = cat((1..n).map(t));
        let taus_down = cat((1..n).rev().map(t));
        relators.push(rel(
            qp(1, 2),
            cat([taus_up, Word::power(quotient_beta(n, n), m as i64), taus_down]),
        ));
    }
    // (III)(a)
    for i in 1..n {
        relators.push(rel(
            Word::gen(sg).concat(&t(i)),
            t(i).concat(&Word::gen(sg)),
        ));
    }
    for j in 1..=n {
        relators.push(rel(
            Word::gen(sg).concat(&q(j)),
            q(j).concat(&Word::gen(sg)),
        ));
    }
    // (III)(b) ρ τ_i = τ_i ρ and q_j ρ = β_j ρ q_j
    for i in 1..n {
        relators.push(rel(
            Word::gen(rg).concat(&t(i)),
            t(i).concat(&Word::gen(rg)),
        ));
    }
    for j in 1..=n {
        relators.push(rel(
            q(j).concat(&Word::gen(rg)),
            cat([beta(j), Word::gen(rg), q(j)]),
        ));
    }
    // (III)(c) τ_i β_k τ_i⁻¹
    for i in 1..n {
        for k in 1..=n {
            let lhs = cat([t(i), beta(k), Word::power(Generator::Tau(i), -1)]);
            let rhs = if i + 1 == k {
                beta(k - 1)
            } else if i == k {
                beta(k + 1)
            } else {
                beta(k)
            };
            relators.push(rel(lhs, rhs));
        }
    }
    // (III)(d) q_j β_k q_j⁻¹
    for j in 1..=n {
        for k in 1..=n {
            let lhs = cat([q(j), beta(k), qp(j, -1)]);
            let rhs = if j == k {
                Word::power(quotient_beta(k, n), -1)
            } else {
                beta(k)
            };
            relators.push(rel(lhs, rhs));
        }
    }
    Presentation {
        family: Family::QuotientGamma2,
        n,
        m: Some(m),
        generators,
        relators,
    }
}

fn build_kernel_free(n: u32) -> Presentation {
    let mut generators = vec![Generator::Rho(n + 1)];
    generators.extend((1..=n).map(|i| Generator::B(i, n + 1)));
    let relator = cat([r(n + 1), b_run_first(1, n, n + 1), r(n + 1)]).free_reduce();
    Presentation {
        family: Family::KernelFree,
        n,
        m: None,
        generators,
        relators: vec![relator],
    }
}

/// Closed-form generator count per family, used as a structural check.
pub fn generator_count(family: Family, n: u32, m: u32) -> u32 {
    match family {
        Family::VanBuskirkBn => 2 * n - 1,
        Family::PurePn => n * (n - 1) / 2 + n,
        Family::PuncturedPurePi => m * n + m * (m - 1) / 2 + m,
        Family::PuncturedFullBeta => n * m + m + (m - 1),
        Family::MixedBnm => n * m + m + (m - 1) + (n - 1) + n,
        Family::QuotientGamma2 => 2 + n + (n - 1) + n,
        Family::KernelFree => n + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn van_buskirk_n1_is_order_two() {
        let p = build(Family::VanBuskirkBn, 1, None).unwrap();
        assert_eq!(p.generators, vec![Generator::Rho(1)]);
        assert_eq!(p.relators, vec![Word::power(Generator::Rho(1), 2)]);
    }

    #[test]
    fn kernel_free_n3() {
        let p = build(Family::KernelFree, 3, None).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0], parse_word("r4 B1_4 B2_4 B3_4 r4").unwrap());
    }

    #[test]
    fn beta_1_2_generators_and_relator_count() {
        let p = build(Family::PuncturedFullBeta, 1, Some(2)).unwrap();
        let expected: Vec<Generator> = vec![
            Generator::B(1, 2),
            Generator::B(1, 3),
            Generator::Rho(2),
            Generator::Rho(3),
            Generator::Sigma(1),
        ];
        assert_eq!(p.generators, expected);
        // hand count over the relation classes: (i) 2, (ii) 2, (iii) 2,
        // (iv) 2, (v) 0, (vi) 2, (vii) 2
        assert_eq!(p.relators.len(), 12);
    }

    #[test]
    fn beta_m1_is_free_presentation() {
        for n in 1..=4 {
            let p = build(Family::PuncturedFullBeta, n, Some(1)).unwrap();
            assert_eq!(p.generators.len() as u32, n + 1);
            assert_eq!(p.relators.len(), 1);
        }
    }

    #[test]
    fn expand_b_examples() {
        // inside the punctured block: B_{n+1,n+2} = σ_1²
        for n in 1..=4 {
            assert_eq!(
                expand_b(n + 1, n + 2, n).unwrap(),
                Word::power(Generator::Sigma(1), 2)
            );
            assert_eq!(
                expand_b(n + 1, n + 3, n).unwrap(),
                parse_word("s2 s1^2 s2^-1").unwrap()
            );
            assert_eq!(expand_b(1, n + 1, n).unwrap(), Word::gen(Generator::B(1, n + 1)));
        }
        assert!(expand_b(3, 3, 2).is_err());
        assert!(expand_b(4, 3, 2).is_err());
        assert!(expand_b(1, 2, 2).is_err());
    }

    #[test]
    fn pure_p1_and_p2() {
        let p1 = build(Family::PurePn, 1, None).unwrap();
        assert_eq!(p1.generators, vec![Generator::Rho(1)]);
        assert_eq!(p1.relators, vec![Word::power(Generator::Rho(1), 2)]);

        let p2 = build(Family::PurePn, 2, None).unwrap();
        assert_eq!(p2.generators.len(), 3);
        // the surface relation at i = 1 forces B_{1,2} = ρ_1²
        assert!(p2
            .relators
            .contains(&parse_word("r1^2 B1_2^-1").unwrap()));
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            build(Family::MixedBnm, 1, Some(2)),
            Err(CatalogError::NOutOfRange { .. })
        ));
        assert!(matches!(
            build(Family::PuncturedFullBeta, 2, None),
            Err(CatalogError::MissingM { .. })
        ));
        assert!(matches!(
            build(Family::VanBuskirkBn, 2, Some(1)),
            Err(CatalogError::UnexpectedM { .. })
        ));
        assert!(matches!(
            build(Family::PuncturedFullBeta, 2, Some(0)),
            Err(CatalogError::MOutOfRange { .. })
        ));
    }

    #[test]
    fn sweep_validates_and_counts() {
        for family in ALL_FAMILIES {
            for n in family.min_n()..=5 {
                let ms: Vec<Option<u32>> = if family.takes_m() {
                    (1..=4).map(Some).collect()
                } else {
                    vec![None]
                };
                for m in ms {
                    let p = build(family, n, m).unwrap();
                    p.validate().unwrap();
                    assert_eq!(
                        p.generators.len() as u32,
                        generator_count(family, n, m.unwrap_or(0)),
                        "{family} n={n} m={m:?}"
                    );
                    for rel in &p.relators {
                        assert!(
                            !rel.free_reduce().is_empty(),
                            "trivial relator in {family} n={n} m={m:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        let a = build(Family::MixedBnm, 3, Some(3)).unwrap();
        let b = build(Family::MixedBnm, 3, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn family_tags_roundtrip() {
        for f in ALL_FAMILIES {
            assert_eq!(Family::parse_tag(f.tag()), Some(f));
        }
        assert_eq!(Family::parse_tag("nope"), None);
    }
}
