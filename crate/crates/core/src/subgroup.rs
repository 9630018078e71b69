//! Finitely generated subgroups, commutation checks and bounded centralizer
//! search.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::braid::{self, commute, delta, normal_form, BraidWord, Endomorphism, GarsideNormalForm};
use crate::error::{Error, Result};

/// A named list of generators on a common number of strands.
///
/// Generator order matters: every enumeration over the subgroup follows it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct SubgroupSpec {
    name: String,
    strands: usize,
    generators: Vec<BraidWord>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    name: String,
    n: usize,
    generators: Vec<BraidWord>,
}

impl TryFrom<RawSpec> for SubgroupSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        SubgroupSpec::new(raw.name, raw.n, raw.generators)
    }
}

impl From<SubgroupSpec> for RawSpec {
    fn from(s: SubgroupSpec) -> Self {
        RawSpec {
            name: s.name,
            n: s.strands,
            generators: s.generators,
        }
    }
}

impl SubgroupSpec {
    pub fn new(name: impl Into<String>, strands: usize, generators: Vec<BraidWord>) -> Result<Self> {
        let name = name.into();
        if generators.is_empty() {
            return Err(Error::EmptySubgroup { name });
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.strands() > strands {
                return Err(Error::GeneratorTooWide {
                    name,
                    got: g.strands(),
                    strands,
                });
            }
            gens.push(g.widen(strands));
        }
        Ok(SubgroupSpec {
            name,
            strands,
            generators: gens,
        })
    }

    /// All Artin generators of `B_n`.
    pub fn full(name: impl Into<String>, n: usize) -> Result<Self> {
        SubgroupSpec::new(name, n, braid::artin_generators(n))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn generators(&self) -> &[BraidWord] {
        &self.generators
    }

    pub fn renamed(&self, name: impl Into<String>) -> SubgroupSpec {
        SubgroupSpec {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Image of every generator under `f`.
    pub fn map(&self, f: &Endomorphism, name: impl Into<String>) -> SubgroupSpec {
        let gens: Vec<BraidWord> = self.generators.iter().map(|g| f.apply(g)).collect();
        let strands = gens.iter().map(BraidWord::strands).max().unwrap_or(self.strands);
        SubgroupSpec {
            name: name.into(),
            strands: strands.max(self.strands),
            generators: gens.into_iter().map(|g| g.widen(strands)).collect(),
        }
    }

    /// Is `word` (up to equality) one of the listed generators?
    pub fn has_generator(&self, word: &BraidWord) -> bool {
        self.generators.iter().any(|g| braid::words_equal(g, word))
    }

    /// Strands touched by any generator.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.generators.iter().flat_map(BraidWord::support).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// `{σ_lo, …, σ_hi}` in `B_n`.
pub fn interval_generators(n: usize, lo: usize, hi: usize) -> Result<SubgroupSpec> {
    if lo < 1 || lo > hi || hi + 1 > n {
        return Err(Error::InvalidRange { lo, hi, strands: n });
    }
    let gens = (lo..=hi)
        .map(|i| BraidWord::generator(n, i as i32))
        .collect::<Result<Vec<_>>>()?;
    SubgroupSpec::new(format!("B[{lo}..{hi}]"), n, gens)
}

/// First generator pair `(a, b)` with `ab ≠ ba`, scanning `a` then `b`.
pub fn noncommuting_witness(a: &SubgroupSpec, b: &SubgroupSpec) -> Option<(BraidWord, BraidWord)> {
    for x in a.generators() {
        for y in b.generators() {
            if !commute(x, y) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

/// Generator-level commutation, which is equivalent to `[⟨A⟩, ⟨B⟩] = 1`.
pub fn sets_commute(a: &SubgroupSpec, b: &SubgroupSpec) -> bool {
    noncommuting_witness(a, b).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralizerMethod {
    RuleBased,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerElement {
    pub word: BraidWord,
    pub method: CentralizerMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub target: SubgroupSpec,
    pub elements: Vec<CentralizerElement>,
}

impl CentralizerReport {
    pub fn words(&self) -> Vec<BraidWord> {
        self.elements.iter().map(|e| e.word.clone()).collect()
    }

    /// Elements other than the identity and powers of `Δ²`.
    pub fn informative(&self) -> Vec<BraidWord> {
        self.elements
            .iter()
            .filter(|e| !is_central(&e.word))
            .map(|e| e.word.clone())
            .collect()
    }
}

/// Is `g` a power of `Δ²` (this includes `e`) in its ambient group?
pub fn is_central(g: &BraidWord) -> bool {
    let nf = normal_form(g);
    nf.canonical_length() == 0 && nf.infimum() % 2 == 0
}

/// Token sequences over `alphabet ∪ alphabet⁻¹`, freely reduced at the token
/// level, in (length, lexicographic) order. Token `2k` is generator `k`,
/// token `2k+1` its inverse.
#[derive(Clone, Debug)]
pub struct WordEnumerator {
    tokens: Vec<BraidWord>,
    inverses: bool,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl WordEnumerator {
    pub fn new(alphabet: &SubgroupSpec, max_len: usize, inverses: bool) -> Self {
        let mut tokens = Vec::new();
        for g in alphabet.generators() {
            tokens.push(g.clone());
            if inverses {
                tokens.push(g.invert());
            }
        }
        WordEnumerator {
            tokens,
            inverses,
            max_len,
            current: Some(Vec::new()),
        }
    }

    fn cancels(&self, a: usize, b: usize) -> bool {
        self.inverses && a / 2 == b / 2 && a != b
    }

    fn valid(&self, seq: &[usize]) -> bool {
        seq.windows(2).all(|w| !self.cancels(w[0], w[1]))
    }

    fn advance(&self, seq: &[usize]) -> Option<Vec<usize>> {
        let t = self.tokens.len();
        let mut s = seq.to_vec();
        loop {
            // odometer increment from the right
            let mut k = s.len();
            loop {
                if k == 0 {
                    if s.len() == self.max_len || t == 0 {
                        return None;
                    }
                    s = vec![0; s.len() + 1];
                    break;
                }
                k -= 1;
                if s[k] + 1 < t {
                    s[k] += 1;
                    for x in s.iter_mut().skip(k + 1) {
                        *x = 0;
                    }
                    break;
                }
            }
            if self.valid(&s) {
                return Some(s);
            }
        }
    }

    pub fn word_for(&self, seq: &[usize]) -> BraidWord {
        let strands = self.tokens.first().map(BraidWord::strands).unwrap_or(1);
        seq.iter()
            .fold(BraidWord::identity(strands), |acc, &k| acc.compose(&self.tokens[k]))
    }

    pub fn tokens(&self) -> &[BraidWord] {
        &self.tokens
    }
}

impl Iterator for WordEnumerator {
    /// The token sequence and the word it spells.
    type Item = (Vec<usize>, BraidWord);

    fn next(&mut self) -> Option<Self::Item> {
        let seq = self.current.take()?;
        self.current = self.advance(&seq);
        let word = self.word_for(&seq);
        Some((seq, word))
    }
}

/// Elements commuting with every generator of `target`: `Δ²`, generators with
/// support disjoint from the target, then words over `alphabet` of length at
/// most `max_len`. Deduplicated by normal form, capped at `limit`.
pub fn centralizer_search(
    target: &SubgroupSpec,
    max_len: usize,
    alphabet: &SubgroupSpec,
    limit: usize,
) -> CentralizerReport {
    let n = target.strands().max(alphabet.strands());
    let mut seen: HashSet<GarsideNormalForm> = HashSet::new();
    let mut elements = Vec::new();
    let commutes_with_target =
        |g: &BraidWord| target.generators().iter().all(|t| commute(g, t));

    let mut offer = |word: BraidWord, method: CentralizerMethod, elements: &mut Vec<CentralizerElement>| {
        if elements.len() >= limit {
            return;
        }
        if seen.insert(normal_form(&word.widen(n))) {
            elements.push(CentralizerElement { word, method });
        }
    };

    if n >= 2 {
        let d2 = delta(n).expect("n >= 2").pow(2);
        offer(d2, CentralizerMethod::RuleBased, &mut elements);
        let support = target.support();
        for j in 1..n {
            if !support.contains(&j) && !support.contains(&(j + 1)) {
                let g = BraidWord::generator(n, j as i32).expect("index in range");
                offer(g, CentralizerMethod::RuleBased, &mut elements);
            }
        }
    }

    for (_, word) in WordEnumerator::new(alphabet, max_len, true) {
        if elements.len() >= limit {
            break;
        }
        let word = word.widen(n);
        if commutes_with_target(&word) {
            offer(word, CentralizerMethod::Search, &mut elements);
        }
    }

    debug_assert!(elements.iter().all(|e| commutes_with_target(&e.word)));
    CentralizerReport {
        target: target.clone(),
        elements,
    }
}
