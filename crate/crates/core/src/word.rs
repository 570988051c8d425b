//! Words over the named generator families of the surface braid groups.
//!
//! A [`Word`] is a sequence of exponent runs `(generator, exponent)`. Braid
//! relators contain large powers, so runs keep words compact and make free
//! reduction a single linear pass. Every operation here is pure; words are
//! immutable after construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A single generator of one of the groups handled by this crate.
///
/// The family determines the index shape: `Sigma`, `Rho`, `Tau` and `Q`
/// carry one index, `B` carries an ordered pair `(i, j)` with `i < j`.
/// Index *ranges* are not validated here; the presentation owning a word
/// knows the valid ranges, so one word type serves every group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    Sigma(u32),
    Rho(u32),
    Tau(u32),
    Q(u32),
    B(u32, u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::Rho(i) => write!(f, "r{i}"),
            Generator::Tau(i) => write!(f, "t{i}"),
            Generator::Q(i) => write!(f, "q{i}"),
            Generator::B(i, j) => write!(f, "B{i}_{j}"),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator {0} has no image under the morphism")]
    MissingImage(Generator),
    #[error("generator {0} does not appear in the ordering")]
    UnknownGenerator(Generator),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty token")]
    EmptyToken,
    #[error("unknown generator family in token `{0}`")]
    BadFamily(String),
    #[error("malformed index in token `{0}`")]
    BadIndex(String),
    #[error("malformed exponent in token `{0}`")]
    BadExponent(String),
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
}

/// A word in the free group over [`Generator`]s, stored as exponent runs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(Generator, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: Generator) -> Self {
        Word::power(g, 1)
    }

    /// `g^e`; the identity when `e == 0`.
    pub fn power(g: Generator, e: i64) -> Self {
        if e == 0 {
            Word::identity()
        } else {
            Word { letters: vec![(g, e)] }
        }
    }

    /// Builds a word from runs, dropping zero exponents but keeping the
    /// sequence otherwise as given (no merging).
    pub fn from_letters<I: IntoIterator<Item = (Generator, i64)>>(letters: I) -> Self {
        Word {
            letters: letters.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn letters(&self) -> &[(Generator, i64)] {
        &self.letters
    }

    /// Total letter count, i.e. the sum of `|exponent|` over all runs.
    pub fn letter_len(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `c · self · c⁻¹`.
    pub fn conjugated_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.inverse())
    }

    /// The freely reduced form: no zero exponents, no adjacent equal
    /// generators. Idempotent, length-nonincreasing, and equal to `self`
    /// in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<(Generator, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            if e == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(&mut (top, ref mut te)) if top == g => {
                    *te += e;
                    if *te == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((g, e)),
            }
        }
        Word { letters: stack }
    }

    /// True when the word freely reduces to the identity.
    pub fn is_trivial(&self) -> bool {
        self.free_reduce().is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(g, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Substitutes `images` into `w` and freely reduces. Inverse letters map to
/// the inverse of the image, so the map extends to a homomorphism on the
/// free group.
pub fn apply_morphism(w: &Word, images: &BTreeMap<Generator, Word>) -> Result<Word, WordError> {
    let mut out = Word::identity();
    for &(g, e) in w.letters() {
        let img = images.get(&g).ok_or(WordError::MissingImage(g))?;
        out = out.concat(&img.pow(e));
    }
    Ok(out.free_reduce())
}

/// Total signed exponent of each generator of `ordering` in `w`.
pub fn exponent_vector(w: &Word, ordering: &[Generator]) -> Result<Vec<i64>, WordError> {
    let index: BTreeMap<Generator, usize> =
        ordering.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut v = vec![0i64; ordering.len()];
    for &(g, e) in w.letters() {
        let &i = index.get(&g).ok_or(WordError::UnknownGenerator(g))?;
        v[i] += e;
    }
    Ok(v)
}

/// Parses the canonical text form: whitespace-separated tokens such as
/// `s1`, `r3^-1`, `B2_5^2`, `t1`, `q2`. The empty string is the identity.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        letters.push(parse_token(tok)?);
    }
    Ok(Word::from_letters(letters))
}

fn parse_token(tok: &str) -> Result<(Generator, i64), ParseError> {
    let (head, exp) = match tok.split_once('^') {
        Some((h, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| ParseError::BadExponent(tok.to_string()))?;
            if e == 0 {
                return Err(ParseError::ZeroExponent(tok.to_string()));
            }
            (h, e)
        }
        None => (tok, 1),
    };
    let mut chars = head.chars();
    let fam = chars.next().ok_or(ParseError::EmptyToken)?;
    let rest = chars.as_str();
    let gen = match fam {
        's' => Generator::Sigma(parse_index(rest, tok)?),
        'r' => Generator::Rho(parse_index(rest, tok)?),
        't' => Generator::Tau(parse_index(rest, tok)?),
        'q' => Generator::Q(parse_index(rest, tok)?),
        'B' => {
            let (i, j) = rest
                .split_once('_')
                .ok_or_else(|| ParseError::BadIndex(tok.to_string()))?;
            Generator::B(parse_index(i, tok)?, parse_index(j, tok)?)
        }
        _ => return Err(ParseError::BadFamily(tok.to_string())),
    };
    Ok((gen, exp))
}

fn parse_index(s: &str, tok: &str) -> Result<u32, ParseError> {
    s.parse().map_err(|_| ParseError::BadIndex(tok.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(i: u32) -> Generator {
        Generator::Sigma(i)
    }
    fn r(i: u32) -> Generator {
        Generator::Rho(i)
    }
    fn b(i: u32, j: u32) -> Generator {
        Generator::B(i, j)
    }

    /// Letter-by-letter oracle: expand runs into single letters and scan for
    /// adjacent cancelling pairs until none remain.
    fn naive_reduce(w: &Word) -> Word {
        let mut flat: Vec<(Generator, i64)> = Vec::new();
        for &(g, e) in w.letters() {
            for _ in 0..e.unsigned_abs() {
                flat.push((g, e.signum()));
            }
        }
        loop {
            let mut cancelled = false;
            let mut i = 0;
            while i + 1 < flat.len() {
                if flat[i].0 == flat[i + 1].0 && flat[i].1 == -flat[i + 1].1 {
                    flat.drain(i..i + 2);
                    cancelled = true;
                } else {
                    i += 1;
                }
            }
            if !cancelled {
                break;
            }
        }
        Word::from_letters(flat).free_reduce()
    }

    #[test]
    fn reduce_cancellation() {
        let w = Word::from_letters([(s(1), 1), (s(1), -1)]);
        assert!(w.free_reduce().is_empty());
    }

    #[test]
    fn reduce_merges_exponents() {
        let w = Word::from_letters([(r(1), 1), (r(1), 1)]);
        assert_eq!(w.free_reduce(), Word::power(r(1), 2));
    }

    #[test]
    fn reduce_inner_cancellation() {
        // s1 s2 s2^-1 s1 -> s1^2, checked against the letter-by-letter oracle
        let w = Word::from_letters([(s(1), 1), (s(2), 1), (s(2), -1), (s(1), 1)]);
        assert_eq!(w.free_reduce(), Word::power(s(1), 2));
        assert_eq!(w.free_reduce(), naive_reduce(&w));
    }

    #[test]
    fn morphism_single_letter() {
        let mut images = BTreeMap::new();
        images.insert(s(1), Word::from_letters([(r(1), 1), (r(2), 1)]));
        let out = apply_morphism(&Word::gen(s(1)), &images).unwrap();
        assert_eq!(out, Word::from_letters([(r(1), 1), (r(2), 1)]));
    }

    #[test]
    fn morphism_inverse_is_antihomomorphic() {
        let mut images = BTreeMap::new();
        images.insert(s(1), Word::from_letters([(r(1), 1), (r(2), 1)]));
        let out = apply_morphism(&Word::power(s(1), -1), &images).unwrap();
        assert_eq!(out, Word::from_letters([(r(2), -1), (r(1), -1)]));
    }

    #[test]
    fn morphism_kills_free_relator() {
        let mut images = BTreeMap::new();
        images.insert(s(1), Word::from_letters([(r(1), 1), (r(2), 1)]));
        let w = Word::from_letters([(s(1), 1), (s(1), -1)]);
        assert!(apply_morphism(&w, &images).unwrap().is_empty());
    }

    #[test]
    fn morphism_missing_image_names_generator() {
        let images = BTreeMap::new();
        assert_eq!(
            apply_morphism(&Word::gen(s(3)), &images),
            Err(WordError::MissingImage(s(3)))
        );
    }

    #[test]
    fn exponent_vector_examples() {
        assert_eq!(
            exponent_vector(&Word::power(r(1), 2), &[r(1)]).unwrap(),
            vec![2]
        );
        let w = Word::from_letters([(s(1), 1), (s(2), 1), (s(1), -1)]);
        assert_eq!(exponent_vector(&w, &[s(1), s(2)]).unwrap(), vec![0, 1]);
        // kernel relator of the punctured plane at n = 2: r3 B1_3 B2_3 r3
        let w = Word::from_letters([(r(3), 1), (b(1, 3), 1), (b(2, 3), 1), (r(3), 1)]);
        assert_eq!(
            exponent_vector(&w, &[r(3), b(1, 3), b(2, 3)]).unwrap(),
            vec![2, 1, 1]
        );
    }

    #[test]
    fn exponent_vector_unknown_generator() {
        assert_eq!(
            exponent_vector(&Word::gen(s(1)), &[r(1)]),
            Err(WordError::UnknownGenerator(s(1)))
        );
    }

    #[test]
    fn parse_print_examples() {
        let w = parse_word("s1 r3^-1 B2_5^2 t1 q2").unwrap();
        assert_eq!(format!("{w}"), "s1 r3^-1 B2_5^2 t1 q2");
        assert_eq!(parse_word("").unwrap(), Word::identity());
        assert_eq!(format!("{}", Word::identity()), "");
        assert!(parse_word("x1").is_err());
        assert!(parse_word("s1^0").is_err());
        assert!(parse_word("B2").is_err());
    }

    fn arb_generator() -> impl Strategy<Value = Generator> {
        prop_oneof![
            (1u32..6).prop_map(Generator::Sigma),
            (1u32..7).prop_map(Generator::Rho),
            (1u32..5).prop_map(Generator::Tau),
            (1u32..6).prop_map(Generator::Q),
            (1u32..6, 1u32..4).prop_map(|(i, d)| Generator::B(i, i + d)),
        ]
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((arb_generator(), -3i64..=3), 0..12).prop_map(Word::from_letters)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn reduce_idempotent_and_nonincreasing(w in arb_word()) {
            let red = w.free_reduce();
            prop_assert_eq!(red.free_reduce(), red.clone());
            prop_assert!(red.letter_len() <= w.letter_len());
            // no adjacent equal generators, no zero exponents
            for pair in red.letters().windows(2) {
                prop_assert_ne!(pair[0].0, pair[1].0);
            }
            prop_assert!(red.letters().iter().all(|&(_, e)| e != 0));
        }
    }

    proptest! {
        #[test]
        fn reduce_matches_naive_oracle(w in arb_word()) {
            prop_assert_eq!(w.free_reduce(), naive_reduce(&w));
        }

        #[test]
        fn exponents_invariant_under_reduction(w in arb_word()) {
            let mut gens: Vec<Generator> = w.letters().iter().map(|&(g, _)| g).collect();
            gens.sort();
            gens.dedup();
            prop_assert_eq!(
                exponent_vector(&w, &gens).unwrap(),
                exponent_vector(&w.free_reduce(), &gens).unwrap()
            );
        }

        #[test]
        fn exponents_additive_on_concat(u in arb_word(), v in arb_word()) {
            let mut gens: Vec<Generator> = u.letters().iter().chain(v.letters()).map(|&(g, _)| g).collect();
            gens.sort();
            gens.dedup();
            let eu = exponent_vector(&u, &gens).unwrap();
            let ev = exponent_vector(&v, &gens).unwrap();
            let euv = exponent_vector(&u.concat(&v), &gens).unwrap();
            let sum: Vec<i64> = eu.iter().zip(&ev).map(|(a, b)| a + b).collect();
            prop_assert_eq!(euv, sum);
        }

        #[test]
        fn identity_morphism_is_reduction(w in arb_word()) {
            let images: BTreeMap<Generator, Word> = w
                .letters()
                .iter()
                .map(|&(g, _)| (g, Word::gen(g)))
                .collect();
            prop_assert_eq!(apply_morphism(&w, &images).unwrap(), w.free_reduce());
        }

        #[test]
        fn morphism_respects_concat(u in arb_word(), v in arb_word()) {
            // a fixed nontrivial substitution on every generator family
            let mut images = BTreeMap::new();
            for &(g, _) in u.letters().iter().chain(v.letters()) {
                let img = match g {
                    Generator::Sigma(i) => Word::from_letters([(Generator::Rho(i), 1), (Generator::Rho(i + 1), -1)]),
                    other => Word::gen(other),
                };
                images.insert(g, img);
            }
            let lhs = apply_morphism(&u.concat(&v), &images).unwrap();
            let rhs = apply_morphism(&u, &images)
                .unwrap()
                .concat(&apply_morphism(&v, &images).unwrap())
                .free_reduce();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn double_inverse_roundtrip(w in arb_word()) {
            prop_assert_eq!(w.inverse().inverse(), w.clone());
            prop_assert!(w.concat(&w.inverse()).is_trivial());
        }

        #[test]
        fn parse_print_roundtrip(w in arb_word()) {
            let red = w.free_reduce();
            prop_assert_eq!(parse_word(&format!("{red}")).unwrap(), red);
        }
    }
}
