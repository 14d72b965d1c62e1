//! Structure of finite words: periods, primitive and Lyndon roots, borders.

/// KMP failure function: `f[i]` is the length of the longest proper border
/// of `w[..=i]`.
pub fn failure_function<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut f = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = f[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        f[i] = k;
    }
    f
}

/// Least period; the empty word has period 0.
pub fn least_period<T: PartialEq>(w: &[T]) -> usize {
    match failure_function(w).last() {
        Some(&b) => w.len() - b,
        None => 0,
    }
}

/// `w = y^e` with `e >= 2`.
pub fn is_power<T: PartialEq>(w: &[T]) -> bool {
    let p = least_period(w);
    p > 0 && p < w.len() && w.len().is_multiple_of(p)
}

/// No nonempty proper prefix is also a suffix.
pub fn is_unbordered<T: PartialEq>(w: &[T]) -> bool {
    failure_function(w).last().is_none_or(|&b| b == 0)
}

/// Start index of the lexicographically least rotation (Booth-style two pointers).
pub fn least_rotation<T: Ord>(w: &[T]) -> usize {
    let n = w.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &w[(i + k) % n];
        let b = &w[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub fn rotate<T: Clone>(w: &[T], start: usize) -> Vec<T> {
    w[start..].iter().chain(&w[..start]).cloned().collect()
}

pub fn is_conjugate<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && rotate(a, least_rotation(a)) == rotate(b, least_rotation(b))
}

/// Period, roots and power flag of a nonempty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStructure<T> {
    pub period: usize,
    pub primitive_root: Vec<T>,
    pub lyndon_root: Vec<T>,
    pub is_power: bool,
}

impl<T> WordStructure<T> {
    /// Exponent `e` with `w = root^e`.
    pub fn exponent(&self, len: usize) -> usize {
        len / self.primitive_root.len()
    }
}

pub fn word_structure<T: Ord + Clone>(w: &[T]) -> WordStructure<T> {
    assert!(!w.is_empty(), "word structure of the empty word");
    let period = least_period(w);
    let root_len = if w.len().is_multiple_of(period) { period } else { w.len() };
    let primitive_root = w[..root_len].to_vec();
    let lyndon_root = rotate(&primitive_root, least_rotation(&primitive_root));
    WordStructure { period, primitive_root, lyndon_root, is_power: root_len < w.len() }
}

/// A counterexample to the gap property: powers at `i < j` with
/// `3(j - i) <= n` but the occurrence at `t` is not a power with the same
/// Lyndon root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapViolation {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub t: usize,
}

/// Searches for a violation of the gap property for length-`n` powers in `z`.
pub fn power_gap_violation<T: Ord + Clone>(z: &[T], n: usize) -> Option<GapViolation> {
    if n < 2 || n > z.len() {
        return None;
    }
    let roots: Vec<Option<Vec<T>>> = (0..=z.len() - n)
        .map(|t| {
            let s = word_structure(&z[t..t + n]);
            s.is_power.then_some(s.lyndon_root)
        })
        .collect();
    for i in 0..roots.len() {
        let Some(root) = &roots[i] else { continue };
        for j in i + 1..roots.len() {
            if 3 * (j - i) > n {
                break;
            }
            if roots[j].is_none() {
                continue;
            }
            if let Some(t) = (i..=j).find(|&t| roots[t].as_ref() != Some(root)) {
                return Some(GapViolation { n, i, j, t });
            }
        }
    }
    None
}

pub fn power_gap_check<T: Ord + Clone>(z: &[T], n: usize) -> bool {
    power_gap_violation(z, n).is_none()
}

/// `h^i(122122121212)` for the morphism `1 -> 21, 2 -> 22`.
pub fn gap_tightness_word(i: u32) -> Vec<u8> {
    let mut w: Vec<u8> = b"122122121212".iter().map(|c| c - b'0').collect();
    for _ in 0..i {
        w = w.iter().flat_map(|&c| if c == 1 { [2, 1] } else { [2, 2] }).collect();
    }
    w
}

/// Prefix of length `len` of `1 10 11 100 101 ...`, the concatenation of
/// the binary numerals of 1, 2, 3, ...
pub fn binary_concatenation(len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 64);
    let mut n = 1u64;
    while out.len() < len {
        out.extend(crate::numeration::encode_base_k(n, 2));
        n += 1;
    }
    out.truncate(len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(w: &str) -> Vec<u8> {
        w.bytes().collect()
    }

    #[test]
    fn textbook_examples() {
        assert_eq!(word_structure(&s("murmur")).primitive_root, s("mur"));
        assert!(word_structure(&s("murmur")).is_power);
        assert_eq!(word_structure(&s("alfalfa")).period, 3);
        assert!(!word_structure(&s("alfalfa")).is_power);
        assert!(is_conjugate(&s("listen"), &s("enlist")));
        assert_eq!(word_structure(&s("listen")).lyndon_root, word_structure(&s("enlist")).lyndon_root);
        assert!(!is_conjugate(&s("listen"), &s("silent")));
    }

    #[test]
    fn borders() {
        assert!(is_unbordered(&s("aab")));
        assert!(!is_unbordered(&s("aba")));
        assert!(is_unbordered(&s("a")));
        assert!(is_unbordered::<u8>(&[]));
    }

    #[test]
    fn gap_word_examples() {
        let z = gap_tightness_word(0);
        assert_eq!(z.len(), 12);
        assert!((2..=12).all(|n| power_gap_check(&z, n)));
        let single = s("aabbbcd");
        assert!(power_gap_check(&single, 2));
        assert_eq!(gap_tightness_word(2).len(), 48);
    }

    #[test]
    fn binary_concatenation_prefix() {
        let w: String = binary_concatenation(15).iter().map(|d| d.to_string()).collect();
        assert_eq!(w, "110111001011101");
    }

    fn naive_period(w: &[u8]) -> usize {
        (1..=w.len()).find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p])).unwrap_or(0)
    }

    proptest! {
        #[test]
        fn structure_invariants(w in proptest::collection::vec(0u8..3, 1..40)) {
            let st = word_structure(&w);
            prop_assert_eq!(st.period, naive_period(&w));
            let rebuilt: Vec<u8> = st.primitive_root.iter().cycle().take(w.len()).cloned().collect();
            prop_assert_eq!(&rebuilt, &w);
            prop_assert_eq!(w.len() % st.primitive_root.len(), 0);
            for r in 0..st.lyndon_root.len() {
                prop_assert!(st.lyndon_root <= rotate(&st.lyndon_root, r));
            }
            let naive_power = (1..w.len()).any(|p| w.len().is_multiple_of(p) && (0..w.len() - p).all(|i| w[i] == w[i + p]));
            prop_assert_eq!(st.is_power, naive_power);
            let naive_unbordered = (1..w.len()).all(|b| w[..b] != w[w.len() - b..]);
            prop_assert_eq!(is_unbordered(&w), naive_unbordered);
        }
    }
}
