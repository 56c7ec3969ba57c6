//! Families of equal-length words that cycles are built over.
//!
//! Every family here is closed under rotation of its underlying full words,
//! which is what makes the transition graphs balanced.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{self, HeightWord, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    Parameter(String),
    #[error("family {0} is empty")]
    EmptyFamily(String),
    #[error("cannot parse family descriptor {descriptor:?}: {detail}")]
    Descriptor { descriptor: String, detail: String },
    #[error("count of {0} does not fit in 128 bits")]
    CountOverflow(String),
    #[error("{word} cannot be extended to a member of {family}: {detail}")]
    Extension {
        word: String,
        family: String,
        detail: String,
    },
}

/// `C(n, 2)`, the largest possible weight of a weak order on `[n]`.
pub fn max_weight(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// A parameterised set of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// `W(n)`.
    AllWeakOrders { n: usize },
    /// `W(n, h)`: weak orders of height exactly `h`.
    FixedHeight { n: usize, h: Symbol },
    /// `W_k^-(n)`: prefixes `w_1 … w_{n-1}` of weight-`k` weak orders.
    FixedWeightPrefix { n: usize, k: u64 },
    /// `W_k^-(n, h)`: prefixes of weight-`k`, height-`h` weak orders.
    FixedWeightHeightPrefix { n: usize, k: u64, h: Symbol },
    /// `W_k(n)` as full words.
    FixedWeight { n: usize, k: u64 },
    /// `W_k(n, h)` as full words.
    FixedWeightHeight { n: usize, k: u64, h: Symbol },
    /// All arrangements of a multiset; stored sorted.
    MultisetPerms { multiset: Vec<Symbol> },
    /// All binary strings of length `n`.
    Binary { n: usize },
}

impl Family {
    pub fn all_weak_orders(n: usize) -> Result<Self, FamilyError> {
        Family::AllWeakOrders { n }.checked()
    }

    pub fn fixed_height(n: usize, h: Symbol) -> Result<Self, FamilyError> {
        Family::FixedHeight { n, h }.checked()
    }

    pub fn fixed_weight_prefix(n: usize, k: u64) -> Result<Self, FamilyError> {
        Family::FixedWeightPrefix { n, k }.checked()
    }

    pub fn fixed_weight_height_prefix(n: usize, k: u64, h: Symbol) -> Result<Self, FamilyError> {
        Family::FixedWeightHeightPrefix { n, k, h }.checked()
    }

    pub fn fixed_weight(n: usize, k: u64) -> Result<Self, FamilyError> {
        Family::FixedWeight { n, k }.checked()
    }

    pub fn fixed_weight_height(n: usize, k: u64, h: Symbol) -> Result<Self, FamilyError> {
        Family::FixedWeightHeight { n, k, h }.checked()
    }

    pub fn multiset_perms(mut multiset: Vec<Symbol>) -> Result<Self, FamilyError> {
        multiset.sort_unstable();
        Family::MultisetPerms { multiset }.checked()
    }

    pub fn binary(n: usize) -> Result<Self, FamilyError> {
        Family::Binary { n }.checked()
    }

    /// Validates parameters. `k > C(n, 2)` is reported as an empty family.
    pub fn checked(self) -> Result<Self, FamilyError> {
        let param = |msg: String| Err(FamilyError::Parameter(msg));
        if let Some(n) = self.n() {
            if n == 0 {
                return param("n must be at least 1".into());
            }
            if n > Symbol::MAX as usize {
                return param(format!("n = {n} is too large"));
            }
        }
        if self.is_prefix_family() && self.n().unwrap_or(0) < 2 {
            return param("prefix families need n >= 2".into());
        }
        if let Some(h) = self.h() {
            let n = self.n().unwrap_or(0);
            if h as usize >= n {
                return param(format!("height h = {h} must be below n = {n}"));
            }
        }
        if let Some(k) = self.k() {
            let n = self.n().unwrap_or(0);
            if k > max_weight(n) {
                return Err(FamilyError::EmptyFamily(format!(
                    "{self} (weight {k} exceeds C({n},2) = {})",
                    max_weight(n)
                )));
            }
        }
        if let Family::MultisetPerms { multiset } = &self {
            if multiset.is_empty() {
                return param("multiset must be non-empty".into());
            }
        }
        Ok(self)
    }

    pub fn n(&self) -> Option<usize> {
        match self {
            Family::AllWeakOrders { n }
            | Family::FixedHeight { n, .. }
            | Family::FixedWeightPrefix { n, .. }
            | Family::FixedWeightHeightPrefix { n, .. }
            | Family::FixedWeight { n, .. }
            | Family::FixedWeightHeight { n, .. }
            | Family::Binary { n } => Some(*n),
            Family::MultisetPerms { multiset } => Some(multiset.len()),
        }
    }

    fn h(&self) -> Option<Symbol> {
        match self {
            Family::FixedHeight { h, .. }
            | Family::FixedWeightHeightPrefix { h, .. }
            | Family::FixedWeightHeight { h, .. } => Some(*h),
            _ => None,
        }
    }

    fn k(&self) -> Option<u64> {
        match self {
            Family::FixedWeightPrefix { k, .. }
            | Family::FixedWeightHeightPrefix { k, .. }
            | Family::FixedWeight { k, .. }
            | Family::FixedWeightHeight { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// True for the families stored in prefix representation.
    pub fn is_prefix_family(&self) -> bool {
        matches!(
            self,
            Family::FixedWeightPrefix { .. } | Family::FixedWeightHeightPrefix { .. }
        )
    }

    /// Length of every emitted word.
    pub fn word_length(&self) -> usize {
        let n = self.n().unwrap_or(0);
        if self.is_prefix_family() {
            n - 1
        } else {
            n
        }
    }

    /// The overlap that turns an overlap cycle into a universal cycle.
    pub fn ucycle_overlap(&self) -> usize {
        self.word_length().saturating_sub(1)
    }

    /// The full-word family a prefix family is derived from.
    pub fn full_family(&self) -> Family {
        match *self {
            Family::FixedWeightPrefix { n, k } => Family::FixedWeight { n, k },
            Family::FixedWeightHeightPrefix { n, k, h } => Family::FixedWeightHeight { n, k, h },
            ref other => other.clone(),
        }
    }

    /// Every word in lexicographic order.
    pub fn enumerate(&self) -> Result<WordList, FamilyError> {
        let list = match self {
            Family::Binary { n } => enumerate_binary(*n),
            Family::MultisetPerms { multiset } => enumerate_multiset(multiset),
            Family::FixedWeightPrefix { .. } | Family::FixedWeightHeightPrefix { .. } => {
                let full = self.full_family().enumerate()?;
                full.truncated(self.word_length())
            }
            _ => enumerate_weak_orders(&self.constraints()),
        };
        if list.is_empty() {
            return Err(FamilyError::EmptyFamily(self.to_string()));
        }
        Ok(list)
    }

    fn constraints(&self) -> Constraints {
        let n = self.n().unwrap_or(0);
        Constraints {
            n,
            height: self.h(),
            weight: self.k(),
        }
    }

    /// Membership test that does not enumerate.
    pub fn contains(&self, word: &[Symbol]) -> bool {
        match self {
            Family::Binary { n } => word.len() == *n && word.iter().all(|&s| s <= 1),
            Family::MultisetPerms { multiset } => {
                if word.len() != multiset.len() {
                    return false;
                }
                let mut sorted = word.to_vec();
                sorted.sort_unstable();
                &sorted == multiset
            }
            Family::FixedWeightPrefix { .. } | Family::FixedWeightHeightPrefix { .. } => {
                word.len() == self.word_length() && self.extend_prefix(word).is_ok()
            }
            _ => {
                let c = self.constraints();
                word.len() == c.n && c.accepts(word)
            }
        }
    }

    /// Recovers the full word `w_1 … w_n` from its prefix by setting
    /// `w_n = k − Σ w_i`.
    pub fn extend_prefix(&self, prefix: &[Symbol]) -> Result<HeightWord, FamilyError> {
        let (n, k) = match self {
            Family::FixedWeightPrefix { n, k } | Family::FixedWeightHeightPrefix { n, k, .. } => {
                (*n, *k)
            }
            _ => {
                return Err(FamilyError::Parameter(format!(
                    "{self} is not a prefix family"
                )))
            }
        };
        let fail = |detail: String| FamilyError::Extension {
            word: word::render_symbols(prefix),
            family: self.to_string(),
            detail,
        };
        if prefix.len() != n - 1 {
            return Err(fail(format!("expected {} letters", n - 1)));
        }
        let sum = word::weight(prefix);
        let last = k
            .checked_sub(sum)
            .ok_or_else(|| fail(format!("prefix weight {sum} exceeds {k}")))?;
        if last >= n as u64 {
            return Err(fail(format!("last letter {last} is out of range")));
        }
        let mut full = prefix.to_vec();
        full.push(last as Symbol);
        let full = HeightWord::new(full).map_err(|e| fail(e.to_string()))?;
        if let Some(h) = self.h() {
            if full.height() != h {
                return Err(fail(format!("height {} is not {h}", full.height())));
            }
        }
        Ok(full)
    }

    /// Family size. Closed forms are used where they exist, enumeration
    /// otherwise; an empty family counts as 0.
    pub fn count(&self) -> Result<u128, FamilyError> {
        let overflow = || FamilyError::CountOverflow(self.to_string());
        match self {
            Family::AllWeakOrders { n } => fubini(*n).ok_or_else(overflow),
            Family::FixedHeight { n, h } => surjections(*n, *h as usize + 1).ok_or_else(overflow),
            Family::MultisetPerms { multiset } => multinomial(multiset).ok_or_else(overflow),
            Family::Binary { n } => 1u128.checked_shl(*n as u32).ok_or_else(overflow),
            _ => match self.enumerate() {
                Ok(list) => Ok(list.len() as u128),
                Err(FamilyError::EmptyFamily(_)) => Ok(0),
                Err(e) => Err(e),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::AllWeakOrders { n } => write!(f, "wn:n={n}"),
            Family::FixedHeight { n, h } => write!(f, "wnh:n={n},h={h}"),
            Family::FixedWeightPrefix { n, k } => write!(f, "wkn:n={n},k={k}"),
            Family::FixedWeightHeightPrefix { n, k, h } => write!(f, "wknh:n={n},k={k},h={h}"),
            Family::FixedWeight { n, k } => write!(f, "wk-full:n={n},k={k}"),
            Family::FixedWeightHeight { n, k, h } => {
                write!(f, "wknh-full:n={n},k={k},h={h}")
            }
            Family::MultisetPerms { multiset } => {
                let items: Vec<String> = multiset.iter().map(ToString::to_string).collect();
                write!(f, "ms:{}", items.join(","))
            }
            Family::Binary { n } => write!(f, "bin:n={n}"),
        }
    }
}

/// Parses descriptors such as `wn:n=5`, `wknh:n=6,k=4,h=2`, `ms:0,0,1,2`.
impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |detail: &str| FamilyError::Descriptor {
            descriptor: s.to_string(),
            detail: detail.to_string(),
        };
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;

        if kind == "ms" {
            let multiset = rest
                .split(',')
                .map(|t| t.trim().parse::<Symbol>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(&format!("multiset element: {e}")))?;
            return Family::multiset_perms(multiset);
        }

        let mut n = None;
        let mut k = None;
        let mut h = None;
        for pair in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|e| bad(&format!("value of {}: {e}", key.trim())))?;
            let slot = match key.trim() {
                "n" => &mut n,
                "k" => &mut k,
                "h" => &mut h,
                other => return Err(bad(&format!("unknown key {other:?}"))),
            };
            if slot.replace(value).is_some() {
                return Err(bad(&format!("key {} given twice", key.trim())));
            }
        }

        let need = |v: Option<u64>, name: &str| v.ok_or_else(|| bad(&format!("missing {name}")));
        let allow = |v: Option<u64>, name: &str| match v {
            Some(_) => Err(bad(&format!("{name} is not a parameter of {kind}"))),
            None => Ok(()),
        };
        let as_n = |v: u64| usize::try_from(v).map_err(|_| bad("n too large"));
        let as_h = |v: u64| Symbol::try_from(v).map_err(|_| bad("h too large"));

        match kind {
            "wn" => {
                allow(k, "k")?;
                allow(h, "h")?;
                Family::all_weak_orders(as_n(need(n, "n")?)?)
            }
            "wnh" => {
                allow(k, "k")?;
                Family::fixed_height(as_n(need(n, "n")?)?, as_h(need(h, "h")?)?)
            }
            "wkn" => {
                allow(h, "h")?;
                Family::fixed_weight_prefix(as_n(need(n, "n")?)?, need(k, "k")?)
            }
            "wknh" => Family::fixed_weight_height_prefix(
                as_n(need(n, "n")?)?,
                need(k, "k")?,
                as_h(need(h, "h")?)?,
            ),
            "wk-full" => {
                allow(h, "h")?;
                Family::fixed_weight(as_n(need(n, "n")?)?, need(k, "k")?)
            }
            "wknh-full" => Family::fixed_weight_height(
                as_n(need(n, "n")?)?,
                need(k, "k")?,
                as_h(need(h, "h")?)?,
            ),
            "bin" => {
                allow(k, "k")?;
                allow(h, "h")?;
                Family::binary(as_n(need(n, "n")?)?)
            }
            other => Err(bad(&format!("unknown family kind {other:?}"))),
        }
    }
}

/// Equal-length words stored back to back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordList {
    word_len: usize,
    data: Vec<Symbol>,
    count: usize,
}

impl WordList {
    pub fn new(word_len: usize) -> Self {
        WordList {
            word_len,
            data: Vec::new(),
            count: 0,
        }
    }

    pub fn from_words<I, W>(word_len: usize, words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Symbol]>,
    {
        let mut list = WordList::new(word_len);
        for w in words {
            list.push(w.as_ref());
        }
        list
    }

    pub fn push(&mut self, word: &[Symbol]) {
        assert_eq!(word.len(), self.word_len, "word length mismatch");
        self.data.extend_from_slice(word);
        self.count += 1;
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn get(&self, i: usize) -> &[Symbol] {
        &self.data[i * self.word_len..(i + 1) * self.word_len]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Symbol]> + '_ {
        (0..self.count).map(move |i| self.get(i))
    }

    pub fn to_vecs(&self) -> Vec<Vec<Symbol>> {
        self.iter().map(<[Symbol]>::to_vec).collect()
    }

    /// Keeps the first `len` letters of every word.
    pub fn truncated(&self, len: usize) -> WordList {
        assert!(len <= self.word_len);
        let mut out = WordList::new(len);
        out.data.reserve(len * self.count);
        for w in self.iter() {
            out.push(&w[..len]);
        }
        out
    }
}

struct Constraints {
    n: usize,
    height: Option<Symbol>,
    weight: Option<u64>,
}

impl Constraints {
    fn accepts(&self, word: &[Symbol]) -> bool {
        word::is_weak_order(word)
            && self
                .height
                .is_none_or(|h| word.iter().copied().max() == Some(h))
            && self.weight.is_none_or(|k| word::weight(word) == k)
    }
}

/// Depth-first generation in lexicographic order. A partial word is kept
/// only while its skipped levels can still be filled by the remaining
/// positions and the weight target stays reachable.
fn enumerate_weak_orders(c: &Constraints) -> WordList {
    struct State<'a> {
        c: &'a Constraints,
        top: Symbol,
        word: Vec<Symbol>,
        level_count: Vec<u32>,
        sum: u64,
        out: WordList,
    }

    impl State<'_> {
        fn missing_levels(&self, max: Symbol) -> (usize, u64) {
            (0..=max)
                .filter(|&l| self.level_count[l as usize] == 0)
                .fold((0, 0), |(n, s), l| (n + 1, s + u64::from(l)))
        }

        fn feasible(&self, cur_max: Symbol) -> bool {
            let remaining = self.c.n - self.word.len();
            let target_max = self.c.height.unwrap_or(cur_max).max(cur_max);
            let (missing, missing_sum) = self.missing_levels(target_max);
            if missing > remaining {
                return false;
            }
            if let Some(k) = self.c.weight {
                if self.sum + missing_sum > k {
                    return false;
                }
                if self.sum + remaining as u64 * u64::from(self.top) < k {
                    return false;
                }
            }
            true
        }

        fn descend(&mut self, cur_max: Option<Symbol>) {
            if self.word.len() == self.c.n {
                if self.c.accepts(&self.word) {
                    self.out.push(&self.word);
                }
                return;
            }
            for s in 0..=self.top {
                let max = cur_max.map_or(s, |m| m.max(s));
                self.word.push(s);
                self.level_count[s as usize] += 1;
                self.sum += u64::from(s);
                if self.feasible(max) {
                    self.descend(Some(max));
                }
                self.sum -= u64::from(s);
                self.level_count[s as usize] -= 1;
                self.word.pop();
            }
        }
    }

    let top = c.height.unwrap_or(c.n.saturating_sub(1) as Symbol);
    let mut state = State {
        c,
        top,
        word: Vec::with_capacity(c.n),
        level_count: vec![0; top as usize + 1],
        sum: 0,
        out: WordList::new(c.n),
    };
    state.descend(None);
    state.out
}

fn enumerate_binary(n: usize) -> WordList {
    let mut out = WordList::new(n);
    let mut word = vec![0; n];
    for bits in 0u64..(1u64 << n) {
        for (i, slot) in word.iter_mut().enumerate() {
            *slot = ((bits >> (n - 1 - i)) & 1) as Symbol;
        }
        out.push(&word);
    }
    out
}

fn enumerate_multiset(sorted: &[Symbol]) -> WordList {
    let mut values: Vec<Symbol> = sorted.to_vec();
    values.dedup();
    let mut counts: Vec<usize> = values
        .iter()
        .map(|v| sorted.iter().filter(|s| *s == v).count())
        .collect();

    fn go(values: &[Symbol], counts: &mut [usize], word: &mut Vec<Symbol>, out: &mut WordList) {
        if word.len() == out.word_len() {
            out.push(word);
            return;
        }
        for i in 0..values.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                word.push(values[i]);
                go(values, counts, word, out);
                word.pop();
                counts[i] += 1;
            }
        }
    }

    let mut out = WordList::new(sorted.len());
    go(&values, &mut counts, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Ordered Bell numbers: `a(n) = Σ_{j=1..n} C(n, j) a(n − j)`.
pub fn fubini(n: usize) -> Option<u128> {
    let mut a: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut total: u128 = 0;
        for j in 1..=m {
            total = total.checked_add(binomial(m, j)?.checked_mul(a[m - j])?)?;
        }
        a.push(total);
    }
    a.last().copied()
}

/// Surjections `[n] → [parts]`, i.e. `parts! · S(n, parts)`.
pub fn surjections(n: usize, parts: usize) -> Option<u128> {
    // stirling[j] holds S(m, j) for the current m
    let mut stirling: Vec<u128> = vec![0; parts + 1];
    stirling[0] = 1;
    for _ in 0..n {
        for j in (1..=parts).rev() {
            stirling[j] = (j as u128)
                .checked_mul(stirling[j])?
                .checked_add(stirling[j - 1])?;
        }
        stirling[0] = 0;
    }
    let mut fact: u128 = 1;
    for i in 2..=parts {
        fact = fact.checked_mul(i as u128)?;
    }
    stirling[parts].checked_mul(fact)
}

/// Number of distinct arrangements of a multiset.
pub fn multinomial(multiset: &[Symbol]) -> Option<u128> {
    let mut sorted = multiset.to_vec();
    sorted.sort_unstable();
    let mut total: u128 = 1;
    let mut placed = 0usize;
    let mut i = 0;
    while i < sorted.len() {
        let run = sorted[i..].iter().take_while(|&&s| s == sorted[i]).count();
        placed += run;
        total = total.checked_mul(binomial(placed, run)?)?;
        i += run;
    }
    Some(total)
}
