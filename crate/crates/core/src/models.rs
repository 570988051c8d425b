//! Finite models and the strand-forgetting map.
//!
//! The dicyclic groups carry the two-strand story: the braid group of the
//! projective plane on two strands is Dic₁₆, and the explicit sections for
//! two base strands land in dicyclic subgroups of the ambient braid group.
//! Strand forgetting is implemented geometrically, by tracking which strand
//! occupies each position and deleting every crossing or loop that involves
//! a forgotten strand.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::word::{Generator, Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dicyclic elements live in different groups (N = {0} vs N = {1})")]
    MismatchedGroups(u32, u32),
    #[error("generator {0} is out of range for {1} strands")]
    IndexOutOfRange(Generator, u32),
    #[error("generator {0} is not an ambient braid letter")]
    NotAmbient(Generator),
    #[error("word does not preserve the strand partition {{1..{keep}}} | {{{}..{total}}}", keep + 1)]
    PartitionNotPreserved { total: u32, keep: u32 },
    #[error("generator {0} has no assigned value")]
    Unassigned(Generator),
}

/// Element `x^i y^eps` of the dicyclic group `Dic_{4N}` with presentation
/// `⟨x, y | x^{2N} = 1, y² = x^N, y x y⁻¹ = x⁻¹⟩`, in normal form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DicElement {
    /// the group parameter `N`; the group order is `4N`
    pub n: u32,
    /// exponent of `x`, reduced mod `2N`
    pub i: u32,
    /// whether the `y` letter is present
    pub eps: bool,
}

impl DicElement {
    pub fn identity(n: u32) -> Self {
        DicElement { n, i: 0, eps: false }
    }

    pub fn x(n: u32) -> Self {
        DicElement { n, i: 1, eps: false }
    }

    pub fn y(n: u32) -> Self {
        DicElement { n, i: 0, eps: true }
    }

    pub fn x_pow(n: u32, e: i64) -> Self {
        DicElement {
            n,
            i: reduce_mod(e, 2 * n),
            eps: false,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && !self.eps
    }
}

fn reduce_mod(e: i64, modulus: u32) -> u32 {
    (e.rem_euclid(i64::from(modulus))) as u32
}

/// Normal-form product: `(i,0)(j,ε) = (i+j,ε)`, `(i,1)(j,0) = (i−j,1)`,
/// `(i,1)(j,1) = (i−j+N,0)`.
pub fn dic_mul(a: DicElement, b: DicElement) -> Result<DicElement, ModelError> {
    if a.n != b.n {
        return Err(ModelError::MismatchedGroups(a.n, b.n));
    }
    let n = a.n;
    let (ai, bi) = (i64::from(a.i), i64::from(b.i));
    let el = match (a.eps, b.eps) {
        (false, eps) => DicElement {
            n,
            i: reduce_mod(ai + bi, 2 * n),
            eps,
        },
        (true, false) => DicElement {
            n,
            i: reduce_mod(ai - bi, 2 * n),
            eps: true,
        },
        (true, true) => DicElement {
            n,
            i: reduce_mod(ai - bi + i64::from(n), 2 * n),
            eps: false,
        },
    };
    Ok(el)
}

pub fn dic_inv(a: DicElement) -> DicElement {
    if a.eps {
        DicElement {
            n: a.n,
            i: reduce_mod(i64::from(a.i) + i64::from(a.n), 2 * a.n),
            eps: true,
        }
    } else {
        DicElement {
            n: a.n,
            i: reduce_mod(-i64::from(a.i), 2 * a.n),
            eps: false,
        }
    }
}

pub fn dic_pow(a: DicElement, e: i64) -> DicElement {
    let base = if e < 0 { dic_inv(a) } else { a };
    let mut acc = DicElement::identity(a.n);
    for _ in 0..e.unsigned_abs() {
        acc = dic_mul(acc, base).expect("same group");
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupReport {
    pub order: usize,
    /// whether `gens[0], gens[1]` satisfy the Dic₁₆ relations
    /// `g₀⁸ = 1`, `g₁² = g₀⁴`, `g₁ g₀ g₁⁻¹ = g₀⁻¹`
    pub dic16_relations_hold: bool,
}

/// Closure enumeration of the subgroup generated by `gens`.
pub fn dic_subgroup(n: u32, gens: &[DicElement]) -> Result<SubgroupReport, ModelError> {
    for g in gens {
        if g.n != n {
            return Err(ModelError::MismatchedGroups(n, g.n));
        }
    }
    let mut seen: BTreeSet<(u32, bool)> = BTreeSet::new();
    let mut frontier = vec![DicElement::identity(n)];
    seen.insert((0, false));
    while let Some(el) = frontier.pop() {
        for &g in gens {
            for next in [dic_mul(el, g)?, dic_mul(el, dic_inv(g))?] {
                if seen.insert((next.i, next.eps)) {
                    frontier.push(next);
                }
            }
        }
    }
    let dic16_relations_hold = gens.len() >= 2 && {
        let (a, b) = (gens[0], gens[1]);
        dic_pow(a, 8).is_identity()
            && dic_pow(b, 2) == dic_pow(a, 4)
            && dic_mul(dic_mul(b, a)?, dic_inv(b))? == dic_inv(a)
    };
    Ok(SubgroupReport {
        order: seen.len(),
        dic16_relations_hold,
    })
}

/// Evaluates a word under an assignment of dicyclic values to generators.
pub fn eval_word(
    w: &Word,
    n: u32,
    assign: &BTreeMap<Generator, DicElement>,
) -> Result<DicElement, ModelError> {
    let mut acc = DicElement::identity(n);
    for &(g, e) in w.letters() {
        let &val = assign.get(&g).ok_or(ModelError::Unassigned(g))?;
        acc = dic_mul(acc, dic_pow(val, e))?;
    }
    Ok(acc)
}

/// Evaluation in the two-strand braid group of the projective plane,
/// `⟨σ₁, ρ₁ | (σ₁ρ₁⁻¹)⁴ = ρ₁² = σ₁²⟩ ≅ Dic₁₆`: `σ₁ ↦ y` and `ρ₁ ↦ y·x`.
pub fn eval_b2rp2(w: &Word) -> Result<DicElement, ModelError> {
    let mut assign = BTreeMap::new();
    assign.insert(Generator::Sigma(1), DicElement::y(4));
    assign.insert(
        Generator::Rho(1),
        dic_mul(DicElement::y(4), DicElement::x(4)).unwrap(),
    );
    for &(g, _) in w.letters() {
        if !assign.contains_key(&g) {
            return Err(ModelError::NotAmbient(g));
        }
    }
    eval_word(w, 4, &assign)
}

/// A permutation of `{1..N}`, stored as 0-indexed images.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the 1-indexed point `i`.
    pub fn image(&self, i: u32) -> u32 {
        (self.0[(i - 1) as usize] + 1) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Whether the permutation maps `{1..keep}` onto itself.
    pub fn preserves_block(&self, keep: u32) -> bool {
        (1..=keep).all(|i| self.image(i) <= keep)
    }
}

/// Flattens a word over ambient braid letters into single crossings/loops.
/// `B_{i,j}` letters are expanded into `σ_i⁻¹⋯σ_{j-2}⁻¹ σ_{j-1}² σ_{j-2}⋯σ_i`.
fn flatten_ambient(w: &Word, strands: u32) -> Result<Vec<(Generator, i64)>, ModelError> {
    let mut flat = Vec::new();
    for &(g, e) in w.letters() {
        let expanded: Vec<(Generator, i64)> = match g {
            Generator::Sigma(i) => {
                if i == 0 || i >= strands {
                    return Err(ModelError::IndexOutOfRange(g, strands));
                }
                vec![(g, 1)]
            }
            Generator::Rho(i) => {
                if i == 0 || i > strands {
                    return Err(ModelError::IndexOutOfRange(g, strands));
                }
                vec![(g, 1)]
            }
            Generator::B(i, j) => {
                if i == 0 || i >= j || j > strands {
                    return Err(ModelError::IndexOutOfRange(g, strands));
                }
                let mut b = Vec::new();
                b.extend((i..j - 1).map(|x| (Generator::Sigma(x), -1)));
                b.push((Generator::Sigma(j - 1), 1));
                b.push((Generator::Sigma(j - 1), 1));
                b.extend((i..j - 1).rev().map(|x| (Generator::Sigma(x), 1)));
                b
            }
            other => return Err(ModelError::NotAmbient(other)),
        };
        let reps = e.unsigned_abs();
        for _ in 0..reps {
            if e >= 0 {
                flat.extend(expanded.iter().copied());
            } else {
                flat.extend(expanded.iter().rev().map(|&(g, s)| (g, -s)));
            }
        }
    }
    Ok(flat)
}

/// The permutation induced on `strands` strands: `σ_i` crosses positions
/// `(i, i+1)`, `ρ_i` and `B_{i,j}` are pure.
pub fn perm_image(w: &Word, strands: u32) -> Result<Permutation, ModelError> {
    let flat = flatten_ambient(w, strands)?;
    let mut pos: Vec<usize> = (0..strands as usize).collect(); // position -> strand
    for (g, _) in flat {
        if let Generator::Sigma(i) = g {
            pos.swap((i - 1) as usize, i as usize);
        }
    }
    // strand s ends at the position holding it
    let mut img = vec![0usize; strands as usize];
    for (p, &s) in pos.iter().enumerate() {
        img[s] = p;
    }
    Ok(Permutation(img))
}

/// The strand-forgetting map: deletes the strands `keep+1 ..= total` from a
/// braid word whose permutation preserves the partition.
///
/// Scanning left to right with a position→strand map: a crossing survives
/// exactly when both of its strands are kept, a loop letter `ρ` survives
/// exactly when its strand is kept, and surviving letters are reindexed by
/// the number of kept strands to their left.
pub fn forget_strands(w: &Word, total: u32, keep: u32) -> Result<Word, ModelError> {
    assert!(keep <= total);
    if !perm_image(w, total)?.preserves_block(keep) {
        return Err(ModelError::PartitionNotPreserved { total, keep });
    }
    let kept = |strand: usize| strand < keep as usize;
    let flat = flatten_ambient(w, total)?;
    let mut pos: Vec<usize> = (0..total as usize).collect();
    let mut out: Vec<(Generator, i64)> = Vec::new();
    for (g, e) in flat {
        match g {
            Generator::Sigma(i) => {
                let p = (i - 1) as usize;
                let (a, b) = (pos[p], pos[p + 1]);
                if kept(a) && kept(b) {
                    let rank = (0..p).filter(|&t| kept(pos[t])).count() as u32 + 1;
                    out.push((Generator::Sigma(rank), e));
                }
                pos.swap(p, p + 1);
            }
            Generator::Rho(i) => {
                let p = (i - 1) as usize;
                if kept(pos[p]) {
                    let rank = (0..p).filter(|&t| kept(pos[t])).count() as u32 + 1;
                    out.push((Generator::Rho(rank), e));
                }
            }
            _ => unreachable!("flatten produces only sigma and rho"),
        }
    }
    Ok(Word::from_letters(out).free_reduce())
}

/// `Δ_N`: the positive half twist `(σ₁⋯σ_{N-1})(σ₁⋯σ_{N-2})⋯(σ₁σ₂)σ₁`.
pub fn half_twist(strands: u32) -> Word {
    let mut w = Word::identity();
    for t in (1..strands).rev() {
        for i in 1..=t {
            w = w.concat(&Word::gen(Generator::Sigma(i)));
        }
    }
    w
}

/// `Δ²_N` written as `(σ₁⋯σ_{N-1})^N`, the full twist.
pub fn full_twist(strands: u32) -> Word {
    let base: Word = (1..strands)
        .map(Generator::Sigma)
        .fold(Word::identity(), |acc, g| acc.concat(&Word::gen(g)));
    base.pow(i64::from(strands))
}

/// `σ_hi⁻¹ σ_{hi-1}⁻¹ ⋯ σ₁⁻¹ ρ₁`: the strand rotation that generates the
/// maximal-torsion dicyclic subgroups of the ambient braid group.
fn rotation(hi: u32) -> Word {
    let mut w = Word::identity();
    for i in (1..=hi).rev() {
        w = w.concat(&Word::power(Generator::Sigma(i), -1));
    }
    w.concat(&Word::gen(Generator::Rho(1)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionReport {
    pub m: u32,
    pub parity: &'static str,
    pub k: u32,
    pub checks: Vec<CheckLine>,
    pub all_pass: bool,
}

/// Verifies the explicit section over two base strands with `m` fiber
/// strands: the dicyclic subgroup identities, partition preservation of the
/// image words, and that forgetting the fiber strands retracts the images
/// onto the two-strand generators.
pub fn verify_section_n2(m: u32) -> SectionReport {
    assert!(m >= 1);
    let strands = m + 2;
    let even = m % 2 == 0;
    let k = if even { m / 2 } else { (m - 1) / 2 };
    let dic_n = 4 * k + 4; // Dic_{8(2+2k)} has parameter N = 2(2k+2)

    // abstract dicyclic identities for <x^{k+1}, x^k y>
    let xg = DicElement::x(dic_n);
    let yg = DicElement::y(dic_n);
    let sub = dic_subgroup(
        dic_n,
        &[
            dic_pow(xg, i64::from(k) + 1),
            dic_mul(dic_pow(xg, i64::from(k)), yg).unwrap(),
        ],
    )
    .unwrap();
    let check1 = CheckLine {
        name: "dicyclic-subgroup".into(),
        pass: sub.order == 16 && sub.dic16_relations_hold,
        detail: format!(
            "<x^{}, x^{} y> in Dic_{} has order {} (relations hold: {})",
            k + 1,
            k,
            4 * dic_n,
            sub.order,
            sub.dic16_relations_hold
        ),
    };

    // explicit image words
    let conj = {
        let mut c = Word::identity();
        for i in 2..=k + 1 {
            c = c.concat(&Word::gen(Generator::Sigma(i)));
        }
        c
    };
    let (image_a2, image_d2) = if even {
        let a = rotation(m + 1); // full rotation of all m+2 strands
        let delta = half_twist(strands);
        (
            a.pow(i64::from(k) + 1).conjugated_by(&conj),
            a.pow(i64::from(k)).concat(&delta).conjugated_by(&conj),
        )
    } else {
        let b = rotation(m); // rotation of the first m+1 strands
        let a = rotation(m + 1);
        let delta = half_twist(strands);
        (
            b.pow(i64::from(k) + 1).conjugated_by(&conj),
            b.pow(i64::from(k))
                .concat(&delta)
                .concat(&a.inverse())
                .conjugated_by(&conj),
        )
    };

    let perm_a = perm_image(&image_a2, strands).unwrap();
    let perm_d = perm_image(&image_d2, strands).unwrap();
    let check2 = CheckLine {
        name: "partition-preserved".into(),
        pass: perm_a.preserves_block(2) && perm_d.preserves_block(2),
        detail: format!(
            "images lie in the mixed subgroup on {{1,2}} | {{3..{strands}}}: a2 {}, D2 {}",
            perm_a.preserves_block(2),
            perm_d.preserves_block(2)
        ),
    };

    // retraction: forgetting the fiber strands recovers a2 and Delta2
    let target_a2 = Word::power(Generator::Sigma(1), -1).concat(&Word::gen(Generator::Rho(1)));
    let target_d2 = Word::gen(Generator::Sigma(1));
    let check3 = match (
        forget_strands(&image_a2, strands, 2),
        forget_strands(&image_d2, strands, 2),
    ) {
        (Ok(fa), Ok(fd)) => {
            let ea = eval_b2rp2(&fa);
            let ed = eval_b2rp2(&fd);
            let (ta, td) = (
                eval_b2rp2(&target_a2).unwrap(),
                eval_b2rp2(&target_d2).unwrap(),
            );
            match (ea, ed) {
                (Ok(ea), Ok(ed)) => CheckLine {
                    name: "retraction".into(),
                    pass: ea == ta && ed == td,
                    detail: format!(
                        "forgotten images evaluate to {ea:?} (want {ta:?}) and {ed:?} (want {td:?})"
                    ),
                },
                (ea, ed) => CheckLine {
                    name: "retraction".into(),
                    pass: false,
                    detail: format!("evaluation failed: {ea:?} / {ed:?}"),
                },
            }
        }
        (fa, fd) => CheckLine {
            name: "retraction".into(),
            pass: false,
            detail: format!("forgetting failed: {fa:?} / {fd:?}"),
        },
    };

    let all_pass = check1.pass && check2.pass && check3.pass;
    SectionReport {
        m,
        parity: if even { "even" } else { "odd" },
        k,
        checks: vec![check1, check2, check3],
        all_pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoSectionReport {
    pub m: u32,
    pub full_twist_is_pure: bool,
    pub forgotten_word: String,
    pub forgets_to_identity: bool,
    /// what is assumed rather than verified here
    pub oracle_fact: &'static str,
    pub section_exists: bool,
    pub conclusion: String,
}

/// The non-existence argument over one base strand: the only candidate image
/// of the order-two generator is the full twist, which dies under strand
/// forgetting.
pub fn verify_no_section_n1(m: u32) -> NoSectionReport {
    assert!(m >= 1);
    let strands = 1 + m;
    let delta2 = full_twist(strands);
    let full_twist_is_pure = perm_image(&delta2, strands).unwrap().is_identity();
    let forgotten = forget_strands(&delta2, strands, 1).unwrap();
    let forgets_to_identity = forgotten.is_empty();
    // in the one-strand group <r1 | r1^2>, the image is r1^(exponent mod 2)
    let image_order_two = {
        let e: i64 = forgotten
            .letters()
            .iter()
            .map(|&(g, e)| if g == Generator::Rho(1) { e } else { 0 })
            .sum();
        e.rem_euclid(2) == 1
    };
    let section_exists = image_order_two; // a section needs the image to be ρ₁
    NoSectionReport {
        m,
        full_twist_is_pure,
        forgotten_word: forgotten.to_string(),
        forgets_to_identity,
        oracle_fact: "the full twist is the unique element of order two in the ambient \
                      braid group of the projective plane (taken as known, not verified here)",
        section_exists,
        conclusion: format!(
            "the order-two generator of the one-strand group must map to the full twist \
             on {strands} strands, but forgetting the last {m} strands sends the full twist \
             to the identity, not to the order-two generator; no section exists"
        ),
    }
}
