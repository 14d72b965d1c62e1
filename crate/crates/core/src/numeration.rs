//! Base-k digit words and multi-track words, most significant digit first.
//!
//! The canonical representation of `0` is the empty word. Tuples are padded
//! with leading zeros to a common width and never start with an all-zero
//! tuple.

use std::fmt;

use crate::error::{Error, Result};

/// A symbol of a multi-track alphabet, packed as a mixed-radix index.
///
/// Track 0 is the most significant position, so ascending symbol order is
/// lexicographic order on digit tuples.
pub type Symbol = u32;

/// The `tracks`-fold product of the digits `0..base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitAlphabet {
    base: u32,
    tracks: usize,
}

impl DigitAlphabet {
    pub fn new(base: u32, tracks: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::Malformed(format!("base must be at least 2, got {base}")));
        }
        if tracks == 0 {
            return Err(Error::Malformed("an alphabet needs at least one track".into()));
        }
        let size = (base as u64).checked_pow(tracks as u32);
        match size {
            Some(s) if s <= 1 << 20 => Ok(DigitAlphabet { base, tracks }),
            _ => Err(Error::Malformed(format!("alphabet {base}^{tracks} is too large"))),
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    /// Number of symbols, `base^tracks`.
    pub fn size(&self) -> usize {
        (self.base as usize).pow(self.tracks as u32)
    }

    /// The all-zero tuple.
    pub fn zero(&self) -> Symbol {
        0
    }

    pub fn pack(&self, digits: &[u32]) -> Result<Symbol> {
        if digits.len() != self.tracks {
            return Err(Error::Malformed(format!(
                "expected {} digit(s) per symbol, got {}",
                self.tracks,
                digits.len()
            )));
        }
        let mut sym = 0u32;
        for &d in digits {
            if d >= self.base {
                return Err(Error::Malformed(format!("digit {d} not below base {}", self.base)));
            }
            sym = sym * self.base + d;
        }
        Ok(sym)
    }

    pub fn unpack(&self, sym: Symbol) -> Vec<u32> {
        let mut out = vec![0; self.tracks];
        let mut rest = sym;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.base;
            rest /= self.base;
        }
        out
    }

    /// Digit of `sym` on `track`.
    pub fn digit(&self, sym: Symbol, track: usize) -> u32 {
        let shift = (self.tracks - 1 - track) as u32;
        (sym / self.base.pow(shift)) % self.base
    }
}

/// Canonical base-`k` digits of `n`, MSD first; `0` maps to the empty word.
pub fn encode_base_k(n: u64, k: u32) -> Vec<u32> {
    assert!(k >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % k as u64) as u32);
        rest /= k as u64;
    }
    digits.reverse();
    digits
}

/// Value of an MSD-first digit word; leading zeros are allowed.
pub fn decode_base_k(word: &[u32], k: u32) -> Result<u64> {
    let mut value = 0u64;
    for &d in word {
        if d >= k {
            return Err(Error::Malformed(format!("digit {d} not below base {k}")));
        }
        value = value
            .checked_mul(k as u64)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or_else(|| Error::Malformed("value does not fit in 64 bits".into()))?;
    }
    Ok(value)
}

/// A word over a multi-track digit alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrackWord {
    alphabet: DigitAlphabet,
    symbols: Vec<Symbol>,
}

impl TrackWord {
    pub fn new(alphabet: DigitAlphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::Malformed(format!("symbol {bad} outside the alphabet")));
        }
        Ok(TrackWord { alphabet, symbols })
    }

    /// Builds a word from explicit digit tuples.
    pub fn from_tuples(base: u32, tuples: &[Vec<u32>]) -> Result<Self> {
        let tracks = tuples.first().map_or(1, Vec::len);
        let alphabet = DigitAlphabet::new(base, tracks)?;
        let symbols = tuples.iter().map(|t| alphabet.pack(t)).collect::<Result<_>>()?;
        Ok(TrackWord { alphabet, symbols })
    }

    /// Single-track word from a digit word.
    pub fn from_digits(base: u32, digits: &[u32]) -> Result<Self> {
        let alphabet = DigitAlphabet::new(base, 1)?;
        let symbols = digits.iter().map(|&d| alphabet.pack(&[d])).collect::<Result<_>>()?;
        Ok(TrackWord { alphabet, symbols })
    }

    pub fn alphabet(&self) -> DigitAlphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Prepends `count` all-zero tuples.
    pub fn padded(&self, count: usize) -> TrackWord {
        let mut symbols = vec![self.alphabet.zero(); count];
        symbols.extend_from_slice(&self.symbols);
        TrackWord { alphabet: self.alphabet, symbols }
    }

    /// Per-track values.
    pub fn values(&self) -> Vec<u64> {
        (0..self.alphabet.tracks())
            .map(|t| {
                let digits = self.track_digits(t);
                decode_base_k(&digits, self.alphabet.base()).expect("digits checked at construction")
            })
            .collect()
    }

    fn track_digits(&self, track: usize) -> Vec<u32> {
        self.symbols.iter().map(|&s| self.alphabet.digit(s, track)).collect()
    }
}

impl fmt::Display for TrackWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            let digits = self.alphabet.unpack(s);
            write!(f, "[")?;
            for (i, d) in digits.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Canonical padded encoding of a tuple of integers.
pub fn encode_tuple(values: &[u64], k: u32) -> Result<TrackWord> {
    if values.is_empty() {
        return Err(Error::Malformed("cannot encode an empty tuple".into()));
    }
    let alphabet = DigitAlphabet::new(k, values.len())?;
    let reps: Vec<Vec<u32>> = values.iter().map(|&v| encode_base_k(v, k)).collect();
    let width = reps.iter().map(Vec::len).max().unwrap_or(0);
    let symbols = (0..width)
        .map(|pos| {
            let digits: Vec<u32> = reps
                .iter()
                .map(|r| {
                    let pad = width - r.len();
                    if pos < pad {
                        0
                    } else {
                        r[pos - pad]
                    }
                })
                .collect();
            alphabet.pack(&digits)
        })
        .collect::<Result<_>>()?;
    Ok(TrackWord { alphabet, symbols })
}

/// The digit stream of track `i` (1-based), leading zeros retained.
pub fn project_track(word: &TrackWord, i: usize) -> Result<Vec<u32>> {
    let tracks = word.alphabet.tracks();
    if i == 0 || i > tracks {
        return Err(Error::TrackOutOfRange { index: i, tracks });
    }
    Ok(word.track_digits(i - 1))
}

/// Renders a digit word as an ASCII string (digits above 9 use letters).
pub fn digits_to_string(digits: &[u32]) -> String {
    digits.iter().map(|&d| std::char::from_digit(d, 36).unwrap_or('?')).collect()
}

/// Parses an ASCII digit string.
pub fn parse_digits(text: &str, k: u32) -> Result<Vec<u32>> {
    text.chars()
        .map(|c| {
            c.to_digit(36).filter(|&d| d < k).ok_or_else(|| Error::Malformed(format!("`{c}` is not a base-{k} digit")))
        })
        .collect()
}
