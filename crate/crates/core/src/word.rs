//! Weak orders in height-word form.
//!
//! A weak order on `[n]` is stored as the word `w_1 … w_n` where `w_j` is the
//! number of strict steps (`<`) that precede element `j` when the order is
//! written out as a chain. The distinct letters of such a word are always
//! `{0, 1, …, h}` for some `h < n`, and any rearrangement of a valid word is
//! again valid.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single letter of a word. Heights, multiset elements and bits all use it.
pub type Symbol = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("a weak order needs at least one element")]
    Empty,
    #[error("symbol {symbol} at position {position} is out of range for n = {n}")]
    OutOfRange {
        symbol: Symbol,
        position: usize,
        n: usize,
    },
    #[error("no element has height 0 (maximum height is {max})")]
    MissingZero { max: Symbol },
    #[error("height {missing} is skipped (maximum height is {max})")]
    Gap { missing: Symbol, max: Symbol },
    #[error("relation is not a permutation of 1..{n}: {detail}")]
    NotAPermutation { n: usize, detail: String },
    #[error("malformed relation near byte {offset}: {detail}")]
    Malformed { offset: usize, detail: String },
    #[error("ordered partition is invalid: {0}")]
    BadPartition(String),
}

/// Renders symbols as space-separated decimals.
pub fn render_symbols(symbols: &[Symbol]) -> String {
    let mut out = String::with_capacity(symbols.len() * 2);
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&s.to_string());
    }
    out
}

/// Parses whitespace-separated decimal symbols.
pub fn parse_symbols(text: &str) -> Result<Vec<Symbol>, std::num::ParseIntError> {
    text.split_whitespace().map(str::parse).collect()
}

/// Parses compact digit strings such as `021`; anything containing
/// whitespace or commas is treated as a separated list instead.
pub fn parse_compact_or_separated(text: &str) -> Option<Vec<Symbol>> {
    let text = text.trim();
    if text.contains(|c: char| c.is_whitespace() || c == ',') {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().ok())
            .collect()
    } else {
        text.chars().map(|c| c.to_digit(10)).collect()
    }
}

/// A weak order on `[n]` in height-word representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightWord(Vec<Symbol>);

impl HeightWord {
    /// Checks the contiguity invariant and wraps the symbols.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, WordError> {
        validate(&symbols)?;
        Ok(HeightWord(symbols))
    }

    /// The all-zero word `0^n` (every element tied).
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "weak orders need n >= 1");
        HeightWord(vec![0; n])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// Number of elements `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `ht(w)`: the largest letter.
    pub fn height(&self) -> Symbol {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `wt(w)`: the sum of the letters.
    pub fn weight(&self) -> u64 {
        weight(&self.0)
    }

    /// `ms(w)` as a sorted vector.
    pub fn multiset(&self) -> Vec<Symbol> {
        let mut m = self.0.clone();
        m.sort_unstable();
        m
    }

    /// `w_1 w_2 … w_n ↦ w_2 … w_n w_1`.
    pub fn rotate(&self) -> HeightWord {
        let mut v = self.0.clone();
        v.rotate_left(1);
        HeightWord(v)
    }

    /// Rearranges letters so position `i` receives `w[perm[i]]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> HeightWord {
        assert_eq!(perm.len(), self.0.len(), "permutation length mismatch");
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(!std::mem::replace(&mut seen[p], true), "not a permutation");
        }
        HeightWord(perm.iter().map(|&p| self.0[p]).collect())
    }

    /// First `s` letters.
    pub fn prefix(&self, s: usize) -> PartialWord {
        take_prefix(&self.0, s)
    }

    /// Last `s` letters.
    pub fn suffix(&self, s: usize) -> PartialWord {
        take_suffix(&self.0, s)
    }

    /// Formats as a relation string such as `2<1=3`. Tied elements are
    /// written in ascending order.
    pub fn to_relation(&self) -> String {
        format_relation(self)
    }

    pub fn to_ordered_partition(&self) -> OrderedPartition {
        to_ordered_partition(self)
    }
}

impl fmt::Display for HeightWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_symbols(&self.0))
    }
}

impl TryFrom<Vec<Symbol>> for HeightWord {
    type Error = WordError;

    fn try_from(symbols: Vec<Symbol>) -> Result<Self, Self::Error> {
        HeightWord::new(symbols)
    }
}

impl AsRef<[Symbol]> for HeightWord {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

/// A window of a word: prefix, suffix or overlap. No contiguity requirement.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct PartialWord(Vec<Symbol>);

impl PartialWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        PartialWord(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        weight(&self.0)
    }

    /// True when every symbol is at most `bound`.
    pub fn is_bounded_by(&self, bound: Symbol) -> bool {
        self.0.iter().all(|&s| s <= bound)
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_symbols(&self.0))
    }
}

impl From<Vec<Symbol>> for PartialWord {
    fn from(v: Vec<Symbol>) -> Self {
        PartialWord(v)
    }
}

impl AsRef<[Symbol]> for PartialWord {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

/// Checks that `symbols` is a height word: non-empty, every letter below
/// `n = symbols.len()`, and the distinct letters form `0..=max`.
pub fn validate(symbols: &[Symbol]) -> Result<(), WordError> {
    let n = symbols.len();
    if n == 0 {
        return Err(WordError::Empty);
    }
    let mut present = vec![false; n];
    for (position, &symbol) in symbols.iter().enumerate() {
        if symbol as usize >= n {
            return Err(WordError::OutOfRange {
                symbol,
                position,
                n,
            });
        }
        present[symbol as usize] = true;
    }
    let max = symbols.iter().copied().max().unwrap_or(0);
    if !present[0] {
        return Err(WordError::MissingZero { max });
    }
    match (0..=max).find(|&lvl| !present[lvl as usize]) {
        Some(missing) => Err(WordError::Gap { missing, max }),
        None => Ok(()),
    }
}

/// True when `symbols` is a valid height word.
pub fn is_weak_order(symbols: &[Symbol]) -> bool {
    validate(symbols).is_ok()
}

pub fn weight(symbols: &[Symbol]) -> u64 {
    symbols.iter().map(|&s| u64::from(s)).sum()
}

pub fn take_prefix(symbols: &[Symbol], s: usize) -> PartialWord {
    assert!(s <= symbols.len(), "prefix longer than word");
    PartialWord(symbols[..s].to_vec())
}

pub fn take_suffix(symbols: &[Symbol], s: usize) -> PartialWord {
    assert!(s <= symbols.len(), "suffix longer than word");
    PartialWord(symbols[symbols.len() - s..].to_vec())
}

/// Parses a relation such as `2<1=3` (or `2≺1≡3`). Whitespace is ignored.
/// Element labels are decimal, so `10<1=2=…` is read unambiguously.
pub fn parse_relation(text: &str) -> Result<HeightWord, WordError> {
    let mut elements: Vec<(usize, Symbol)> = Vec::new();
    let mut height: Symbol = 0;
    let mut label: Option<(usize, usize)> = None;
    let mut expect_element = true;

    let finish_label = |label: &mut Option<(usize, usize)>,
                        elements: &mut Vec<(usize, Symbol)>,
                        height: Symbol|
     -> Result<(), WordError> {
        if let Some((start, value)) = label.take() {
            if value == 0 {
                return Err(WordError::Malformed {
                    offset: start,
                    detail: "elements are numbered from 1".into(),
                });
            }
            elements.push((value, height));
        }
        Ok(())
    };

    for (offset, c) in text.char_indices() {
        match c {
            '0'..='9' => {
                let d = c as usize - '0' as usize;
                label = match label {
                    None if !expect_element => {
                        return Err(WordError::Malformed {
                            offset,
                            detail: "missing '<' or '=' between elements".into(),
                        })
                    }
                    None => Some((offset, d)),
                    Some((start, v)) => Some((
                        start,
                        v.checked_mul(10).and_then(|v| v.checked_add(d)).ok_or(
                            WordError::Malformed {
                                offset: start,
                                detail: "element label overflows".into(),
                            },
                        )?,
                    )),
                };
                expect_element = false;
            }
            '<' | '≺' | '=' | '≡' => {
                if expect_element {
                    return Err(WordError::Malformed {
                        offset,
                        detail: format!("operator '{c}' without a preceding element"),
                    });
                }
                finish_label(&mut label, &mut elements, height)?;
                if matches!(c, '<' | '≺') {
                    height += 1;
                }
                expect_element = true;
            }
            c if c.is_whitespace() => {
                finish_label(&mut label, &mut elements, height)?;
            }
            other => {
                return Err(WordError::Malformed {
                    offset,
                    detail: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    if expect_element {
        return Err(WordError::Malformed {
            offset: text.len(),
            detail: if elements.is_empty() {
                "empty relation".into()
            } else {
                "trailing operator".into()
            },
        });
    }
    finish_label(&mut label, &mut elements, height)?;

    let n = elements.len();
    let mut word: Vec<Option<Symbol>> = vec![None; n];
    for &(element, h) in &elements {
        if element > n {
            return Err(WordError::NotAPermutation {
                n,
                detail: format!("element {element} exceeds {n}"),
            });
        }
        if word[element - 1].replace(h).is_some() {
            return Err(WordError::NotAPermutation {
                n,
                detail: format!("element {element} appears twice"),
            });
        }
    }
    let symbols = word
        .into_iter()
        .map(|h| h.expect("all slots filled"))
        .collect();
    HeightWord::new(symbols)
}

/// Writes the weak order as a chain of `<` and `=`; tied elements ascend.
pub fn format_relation(w: &HeightWord) -> String {
    let partition = to_ordered_partition(w);
    let mut out = String::new();
    for (i, block) in partition.blocks().iter().enumerate() {
        if i > 0 {
            out.push('<');
        }
        for (j, element) in block.iter().enumerate() {
            if j > 0 {
                out.push('=');
            }
            out.push_str(&element.to_string());
        }
    }
    out
}

/// An ordered set partition of `[n]`: a sequence of disjoint non-empty
/// blocks whose union is `{1, …, n}`. Elements within a block are kept
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self, WordError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(WordError::BadPartition("no elements".into()));
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(WordError::BadPartition("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > n {
                    return Err(WordError::BadPartition(format!(
                        "element {e} outside 1..={n}"
                    )));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(WordError::BadPartition(format!("element {e} repeated")));
                }
            }
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn to_height_word(&self) -> HeightWord {
        from_ordered_partition(self)
    }
}

/// Blocks are separated by `|`. Labels are written back to back (`2|13`)
/// when every label is a single digit, and comma-separated otherwise; a
/// string containing any comma is parsed in the separated form.
impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.n() < 10;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 && !compact {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for OrderedPartition {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let separated = s.contains(',');
        let blocks = s
            .split('|')
            .map(|part| {
                let part = part.trim();
                if separated {
                    part.split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| WordError::BadPartition(e.to_string()))
                } else {
                    part.chars()
                        .map(|c| {
                            c.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                                WordError::BadPartition(format!("unexpected character '{c}'"))
                            })
                        })
                        .collect()
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        OrderedPartition::new(blocks)
    }
}

/// Block `i + 1` holds the elements at height `i`.
pub fn to_ordered_partition(w: &HeightWord) -> OrderedPartition {
    let mut blocks = vec![Vec::new(); w.height() as usize + 1];
    for (j, &h) in w.symbols().iter().enumerate() {
        blocks[h as usize].push(j + 1);
    }
    OrderedPartition { blocks }
}

pub fn from_ordered_partition(p: &OrderedPartition) -> HeightWord {
    let mut symbols = vec![0; p.n()];
    for (h, block) in p.blocks().iter().enumerate() {
        for &e in block {
            symbols[e - 1] = h as Symbol;
        }
    }
    HeightWord(symbols)
}
