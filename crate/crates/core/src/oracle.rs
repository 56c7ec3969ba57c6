//! Independent checks: cycle verification against an enumerated family,
//! the `k = C(a,2) + b` decomposition, and minimum-vertex constructions
//! together with the exhaustive searches that validate them.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::euler::{window_at, CycleResult};
use crate::family::{max_weight, Family, FamilyError};
use crate::word::{PartialWord, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("cycle has {actual} symbols but the family needs {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("overlap {overlap} is not valid for words of length {word_len}")]
    InvalidOverlap { overlap: usize, word_len: usize },
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Outcome of checking a cycle against a family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub windows_checked: usize,
    /// Family words that never appear.
    pub missing: Vec<Vec<Symbol>>,
    /// Family words read more than once.
    pub duplicated: Vec<Vec<Symbol>>,
    /// Windows that are not family words.
    pub invalid_windows: Vec<Vec<Symbol>>,
    /// Indices `j` where word `j` and word `j + 1` fail to share `s` symbols.
    pub overlap_violations: Vec<usize>,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.missing.sort();
        self.duplicated.sort();
        self.invalid_windows.sort();
        self.invalid_windows.dedup();
        self.ok = self.missing.is_empty()
            && self.duplicated.is_empty()
            && self.invalid_windows.is_empty()
            && self.overlap_violations.is_empty();
        self
    }
}

fn check_overlap(overlap: usize, word_len: usize) -> Result<(), OracleError> {
    let ok = if word_len <= 1 {
        overlap == 0
    } else {
        (1..word_len).contains(&overlap)
    };
    if ok {
        Ok(())
    } else {
        Err(OracleError::InvalidOverlap { overlap, word_len })
    }
}

/// Checks a spelled cycle with the overlap recorded in it.
pub fn verify(cycle: &CycleResult, family: &Family) -> Result<VerificationReport, OracleError> {
    verify_symbols(&cycle.symbols, cycle.overlap, family)
}

/// Reads windows of length `L` at offsets `j·(L − s)` (wrapping around) and
/// compares them, as a multiset, with the enumerated family. With
/// `s = L − 1` that is every offset, so every window must be a member.
pub fn verify_symbols(
    symbols: &[Symbol],
    overlap: usize,
    family: &Family,
) -> Result<VerificationReport, OracleError> {
    let len = family.word_length();
    check_overlap(overlap, len)?;
    let words = family.enumerate()?;
    let step = len - overlap;
    let expected = words.len() * step;
    if symbols.len() != expected {
        return Err(OracleError::LengthMismatch {
            expected,
            actual: symbols.len(),
        });
    }

    // enough of the cycle repeated that every window is a plain slice
    let mut extended = Vec::with_capacity(symbols.len() + len);
    while extended.len() < symbols.len() + len {
        extended.extend_from_slice(symbols);
    }

    let index: HashMap<&[Symbol], usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut seen = vec![0u32; words.len()];
    let mut report = VerificationReport::default();
    for j in 0..words.len() {
        let window = &extended[j * step..j * step + len];
        report.windows_checked += 1;
        match index.get(window) {
            Some(&i) => {
                seen[i] += 1;
                if seen[i] == 2 {
                    report.duplicated.push(window.to_vec());
                }
            }
            None => report.invalid_windows.push(window.to_vec()),
        }
    }
    report.missing = seen
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(i, _)| words.get(i).to_vec())
        .collect();
    Ok(report.finish())
}

/// Checks an explicit cyclic listing of words: consecutive words (including
/// last → first) must share `s` symbols, and the listing must be exactly
/// the family.
pub fn verify_listing(
    listing: &[Vec<Symbol>],
    overlap: usize,
    family: &Family,
) -> Result<VerificationReport, OracleError> {
    let len = family.word_length();
    check_overlap(overlap, len)?;
    let words = family.enumerate()?;
    if listing.len() != words.len() {
        return Err(OracleError::LengthMismatch {
            expected: words.len(),
            actual: listing.len(),
        });
    }
    let index: HashMap<&[Symbol], usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut seen = vec![0u32; words.len()];
    let mut report = VerificationReport::default();
    for (j, w) in listing.iter().enumerate() {
        report.windows_checked += 1;
        match index.get(w.as_slice()) {
            Some(&i) => {
                seen[i] += 1;
                if seen[i] == 2 {
                    report.duplicated.push(w.clone());
                }
            }
            None => report.invalid_windows.push(w.clone()),
        }
        let next = &listing[(j + 1) % listing.len()];
        let shares = w.len() == len && next.len() == len && w[len - overlap..] == next[..overlap];
        if !shares {
            report.overlap_violations.push(j);
        }
    }
    report.missing = seen
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 0)
        .map(|(i, _)| words.get(i).to_vec())
        .collect();
    Ok(report.finish())
}

/// Splits a cycle back into its listing of objects.
pub fn cycle_listing(cycle: &CycleResult) -> Vec<Vec<Symbol>> {
    (0..cycle.object_count)
        .map(|j| window_at(&cycle.symbols, j * cycle.step(), cycle.object_length))
        .collect()
}

/// `k = C(a, 2) + b` with `a > b ≥ 0`; `a` is the largest value with
/// `C(a, 2) ≤ k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightDecomposition {
    pub k: u64,
    pub a: u64,
    pub b: u64,
}

pub fn decompose_weight(k: u64) -> WeightDecomposition {
    let c2 = |a: u64| a * a.saturating_sub(1) / 2;
    // float estimate, then fix up
    let mut a = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as u64;
    a = a.max(1);
    while c2(a) > k {
        a -= 1;
    }
    while c2(a + 1) <= k {
        a += 1;
    }
    WeightDecomposition { k, a, b: k - c2(a) }
}

/// A claimed minimum vertex together with the full word it was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinVertex {
    pub word: Vec<Symbol>,
    pub vertex: PartialWord,
}

impl MinVertex {
    fn from_word(word: Vec<Symbol>, vertex_len: usize) -> Self {
        let vertex = PartialWord::new(word[..vertex_len].to_vec());
        MinVertex { word, vertex }
    }
}

/// Which closed form to evaluate for the minimum vertex of the
/// fixed-weight prefix graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinVertexForm {
    /// `0^{n−a−1} [0, b−1] b² [b+1, a−1]`: the sorted word holding
    /// `0..a−1`, one extra `b`, and zero padding. Its weight is `k`.
    #[default]
    Corrected,
    /// `0^{n−a−2} [0, b−1] b² [b+1, a]` exactly as printed. Its weight is
    /// `C(a+1, 2) + b`, not `k`; kept to document the discrepancy.
    Literal,
}

/// `[i, j] = i (i+1) … j`, empty when `j < i`.
fn run(i: i64, j: i64) -> impl Iterator<Item = Symbol> {
    (i..=j).map(|x| x as Symbol)
}

fn zeros(count: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n(0, count)
}

/// Closed form for the lexicographically least vertex `w⁻⁻` of the
/// universal-cycle graph of `W_k⁻(n)`.
pub fn min_vertex_formula(n: usize, k: u64, form: MinVertexForm) -> Result<MinVertex, OracleError> {
    if n < 2 {
        return Err(OracleError::Parameter("n must be at least 2".into()));
    }
    if k > max_weight(n) {
        return Err(OracleError::Parameter(format!(
            "weight {k} exceeds C({n},2) = {}",
            max_weight(n)
        )));
    }
    let WeightDecomposition { a, b, .. } = decompose_weight(k);
    let (a, b) = (a as i64, b as i64);
    let n_i = n as i64;
    let word: Vec<Symbol> = match form {
        MinVertexForm::Corrected => {
            if n_i > a {
                zeros((n_i - a - 1) as usize)
                    .chain(run(0, b - 1))
                    .chain([b as Symbol, b as Symbol])
                    .chain(run(b + 1, a - 1))
                    .collect()
            } else if n_i == a && b == 0 {
                // k = C(n, 2): the padding is one short, the word is [0, n−1]
                run(0, a - 1).collect()
            } else {
                return Err(OracleError::Parameter(format!(
                    "n = {n} is too small for a = {a}, b = {b}"
                )));
            }
        }
        MinVertexForm::Literal => {
            if n_i < a + 2 {
                return Err(OracleError::Parameter(format!(
                    "n = {n} is too small for the literal form with a = {a}"
                )));
            }
            zeros((n_i - a - 2) as usize)
                .chain(run(0, b - 1))
                .chain([b as Symbol, b as Symbol])
                .chain(run(b + 1, a))
                .collect()
        }
    };
    Ok(MinVertex::from_word(word, n - 2))
}

/// Lexicographically least word of length `m` over `{0, …, hmax}` with the
/// given weight: the largest symbols are packed at the right.
pub fn lex_min_bounded_word(
    m: usize,
    hmax: Symbol,
    weight: u64,
) -> Result<PartialWord, OracleError> {
    if weight > m as u64 * u64::from(hmax) {
        return Err(OracleError::Parameter(format!(
            "weight {weight} does not fit in {m} letters of at most {hmax}"
        )));
    }
    let mut word = vec![0; m];
    let mut rest = weight;
    for slot in word.iter_mut().rev() {
        let x = rest.min(u64::from(hmax));
        *slot = x as Symbol;
        rest -= x;
    }
    Ok(PartialWord::new(word))
}

/// Minimum vertex of the universal-cycle graph of `W_k⁻(n, h)`: the levels
/// `0..=h` plus the least bounded word carrying the remaining weight,
/// sorted, with the last two letters dropped.
pub fn min_vertex_knh(n: usize, k: u64, h: Symbol) -> Result<MinVertex, OracleError> {
    if n < 2 || h as usize >= n {
        return Err(OracleError::Parameter(format!(
            "need n >= 2 and h < n (n = {n}, h = {h})"
        )));
    }
    let base = u64::from(h) * (u64::from(h) + 1) / 2;
    if k < base {
        return Err(OracleError::Parameter(format!(
            "weight {k} is below {base}, the weight of 0..={h}"
        )));
    }
    let free = lex_min_bounded_word(n - h as usize - 1, h, k - base)?;
    let mut word: Vec<Symbol> = run(0, i64::from(h)).chain(free.into_symbols()).collect();
    word.sort_unstable();
    Ok(MinVertex::from_word(word, n - 2))
}

/// Exhaustive minimum of `w⁻⁻` over a fixed-weight (prefix) family.
pub fn min_vertex_oracle(family: &Family) -> Result<PartialWord, OracleError> {
    min_vertex_search(family, false)
}

/// Same search restricted to the words of largest height.
pub fn min_vertex_oracle_max_height(family: &Family) -> Result<PartialWord, OracleError> {
    min_vertex_search(family, true)
}

fn min_vertex_search(family: &Family, max_height_only: bool) -> Result<PartialWord, OracleError> {
    if !family.is_prefix_family() {
        return Err(OracleError::Parameter(format!(
            "{family} is not a prefix family"
        )));
    }
    let full = family.full_family().enumerate()?;
    let n = full.word_len();
    let top = if max_height_only {
        full.iter().filter_map(|w| w.iter().max().copied()).max()
    } else {
        None
    };
    full.iter()
        .filter(|w| top.is_none_or(|t| w.iter().max() == Some(&t)))
        .map(|w| &w[..n - 2])
        .min()
        .map(|v| PartialWord::new(v.to_vec()))
        .ok_or_else(|| FamilyError::EmptyFamily(family.to_string()).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::generate;
    use crate::graph::TransitionGraph;
    use crate::word::weight;

    fn fam(d: &str) -> Family {
        d.parse().unwrap()
    }

    fn bits(s: &str) -> Vec<Symbol> {
        s.chars().map(|c| c.to_digit(10).unwrap()).collect()
    }

    #[test]
    fn de_bruijn_verifies() {
        let r = verify_symbols(&bits("00010111"), 2, &fam("bin:n=3")).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.windows_checked, 8);
    }

    #[test]
    fn single_letter_verifies() {
        assert!(verify_symbols(&[0], 0, &fam("wn:n=1")).unwrap().ok);
    }

    #[test]
    fn mutated_de_bruijn() {
        // windows of 00010110, by hand: 000 001 010 101 011 110 100 000
        let r = verify_symbols(&bits("00010110"), 2, &fam("bin:n=3")).unwrap();
        assert!(!r.ok);
        assert_eq!(r.duplicated, vec![bits("000")]);
        assert_eq!(r.missing, vec![bits("111")]);
        assert!(r.invalid_windows.is_empty());
    }

    #[test]
    fn invalid_windows_reported() {
        // 00201 is not over {0,1}
        let r = verify_symbols(&bits("00020111"), 2, &fam("bin:n=3")).unwrap();
        assert!(!r.ok);
        assert!(r.invalid_windows.contains(&bits("002")));
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            verify_symbols(&bits("0001011"), 2, &fam("bin:n=3")),
            Err(OracleError::LengthMismatch {
                expected: 8,
                actual: 7
            })
        );
        assert!(matches!(
            verify_symbols(&bits("00010111"), 3, &fam("bin:n=3")),
            Err(OracleError::InvalidOverlap { .. })
        ));
    }

    #[test]
    fn short_cycles_wrap() {
        // a single object longer than the cycle
        assert!(verify_symbols(&[0], 3, &fam("wnh:n=4,h=0")).unwrap().ok);
    }

    #[test]
    fn listing_checks_overlaps() {
        let c = generate(&fam("wn:n=4"), 2).unwrap();
        let mut listing = cycle_listing(&c);
        assert!(verify_listing(&listing, 2, &fam("wn:n=4")).unwrap().ok);
        listing.swap(3, 10);
        let r = verify_listing(&listing, 2, &fam("wn:n=4")).unwrap();
        assert!(!r.ok);
        assert!(!r.overlap_violations.is_empty());
        assert!(r.missing.is_empty() && r.duplicated.is_empty());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            decompose_weight(0),
            WeightDecomposition { k: 0, a: 1, b: 0 }
        );
        assert_eq!(
            decompose_weight(3),
            WeightDecomposition { k: 3, a: 3, b: 0 }
        );
        assert_eq!(
            decompose_weight(4),
            WeightDecomposition { k: 4, a: 3, b: 1 }
        );
        assert_eq!(
            decompose_weight(10),
            WeightDecomposition { k: 10, a: 5, b: 0 }
        );
    }

    #[test]
    fn decomposition_is_unique() {
        for k in 0..=100u64 {
            let mut found = Vec::new();
            for a in 0..=20u64 {
                for b in 0..a {
                    if a * a.saturating_sub(1) / 2 + b == k {
                        found.push((a, b));
                    }
                }
            }
            // a = 0 never qualifies (needs b < 0); a = 1 covers k = 0
            assert_eq!(found.len(), 1, "k = {k}: {found:?}");
            let d = decompose_weight(k);
            assert_eq!((d.a, d.b), found[0]);
        }
        assert_eq!(decompose_weight(u32::MAX as u64).k, u32::MAX as u64);
    }

    #[test]
    fn min_vertex_examples() {
        let oracle = |n, k| min_vertex_oracle(&Family::fixed_weight_prefix(n, k).unwrap()).unwrap();
        assert_eq!(oracle(6, 3).symbols(), &[0, 0, 0, 0]);
        assert_eq!(oracle(6, 4).symbols(), &[0, 0, 0, 1]);
        assert_eq!(oracle(3, 3).symbols(), &[0]);

        let f = min_vertex_formula(6, 3, MinVertexForm::Corrected).unwrap();
        assert_eq!(f.word, vec![0, 0, 0, 0, 1, 2]);
        assert_eq!(f.vertex.symbols(), &[0, 0, 0, 0]);
        let f = min_vertex_formula(6, 4, MinVertexForm::Corrected).unwrap();
        assert_eq!(f.word, vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(f.vertex.symbols(), &[0, 0, 0, 1]);

        let lit = min_vertex_formula(6, 3, MinVertexForm::Literal).unwrap();
        assert_eq!(lit.word, vec![0, 0, 0, 1, 2, 3]);
        assert_eq!(weight(&lit.word), 6);
    }

    #[test]
    fn oracle_equals_graph_minimum() {
        for n in 2..=6 {
            for k in 0..=max_weight(n) {
                let f = Family::fixed_weight_prefix(n, k).unwrap();
                let g = TransitionGraph::build(&f, n - 2).unwrap();
                assert_eq!(min_vertex_oracle(&f).unwrap().symbols(), g.vertex(0));
            }
        }
    }

    #[test]
    fn corrected_formula_matches_oracle_small() {
        for n in 2..=7 {
            for k in 1..=max_weight(n) {
                let f = Family::fixed_weight_prefix(n, k).unwrap();
                let got = min_vertex_formula(n, k, MinVertexForm::Corrected).unwrap();
                assert_eq!(weight(&got.word), k);
                assert!(f.full_family().contains(&got.word));
                assert_eq!(got.vertex, min_vertex_oracle(&f).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn literal_formula_overshoots() {
        for n in 4..=7 {
            for k in 1..=max_weight(n) {
                if let Ok(lit) = min_vertex_formula(n, k, MinVertexForm::Literal) {
                    let d = decompose_weight(k);
                    assert_eq!(weight(&lit.word), k + d.a);
                }
            }
        }
    }

    #[test]
    fn bounded_words() {
        assert_eq!(lex_min_bounded_word(3, 2, 3).unwrap().symbols(), &[0, 1, 2]);
        assert_eq!(lex_min_bounded_word(3, 2, 0).unwrap().symbols(), &[0, 0, 0]);
        assert_eq!(lex_min_bounded_word(2, 3, 6).unwrap().symbols(), &[3, 3]);
        assert!(lex_min_bounded_word(2, 3, 7).is_err());
        assert_eq!(lex_min_bounded_word(0, 3, 0).unwrap().len(), 0);
    }

    #[test]
    fn bounded_words_match_scan() {
        for m in 0..=4usize {
            for hmax in 0..=3 as Symbol {
                for wt in 0..=(m as u64 * u64::from(hmax)) {
                    let mut best: Option<Vec<Symbol>> = None;
                    let total = (hmax as usize + 1).pow(m as u32);
                    for mut code in 0..total {
                        let mut w = vec![0; m];
                        for slot in w.iter_mut().rev() {
                            *slot = (code % (hmax as usize + 1)) as Symbol;
                            code /= hmax as usize + 1;
                        }
                        if weight(&w) == wt && best.as_ref().is_none_or(|b| &w < b) {
                            best = Some(w);
                        }
                    }
                    assert_eq!(
                        lex_min_bounded_word(m, hmax, wt).unwrap().symbols(),
                        best.unwrap().as_slice()
                    );
                }
            }
        }
    }

    #[test]
    fn knh_examples() {
        let v = min_vertex_knh(5, 4, 2).unwrap();
        assert_eq!(v.word, vec![0, 0, 1, 1, 2]);
        assert_eq!(v.vertex.symbols(), &[0, 0, 1]);
        let f = Family::fixed_weight_height_prefix(5, 4, 2).unwrap();
        assert_eq!(min_vertex_oracle(&f).unwrap(), v.vertex);

        let v = min_vertex_knh(4, 6, 3).unwrap();
        assert_eq!(v.vertex.symbols(), &[0, 1]);
        assert!(matches!(
            min_vertex_knh(5, 2, 2),
            Err(OracleError::Parameter(_))
        ));
    }

    #[test]
    fn knh_matches_oracle() {
        for n in 2..=7usize {
            for h in 0..n as Symbol {
                for k in 0..=max_weight(n) {
                    let f = Family::fixed_weight_height_prefix(n, k, h).unwrap();
                    if f.count().unwrap() == 0 {
                        continue;
                    }
                    let got = min_vertex_knh(n, k, h).unwrap();
                    assert_eq!(
                        got.vertex,
                        min_vertex_oracle(&f).unwrap(),
                        "n={n} k={k} h={h}"
                    );
                }
            }
        }
    }

    #[test]
    fn least_vertex_is_reached_by_a_tallest_word() {
        for n in 2..=7 {
            for k in 1..=max_weight(n) {
                let f = Family::fixed_weight_prefix(n, k).unwrap();
                assert_eq!(
                    min_vertex_oracle(&f).unwrap(),
                    min_vertex_oracle_max_height(&f).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }
}
