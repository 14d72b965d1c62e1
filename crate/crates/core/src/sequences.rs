//! Built-in automatic sequences, each shipped as a DFAO file together with
//! an arithmetic generator used to cross-check it.

use crate::automata::format::AutomatonFile;
use crate::automata::Dfao;
use crate::error::{Error, Result};

/// A named sequence: its automaton and, for built-ins, a direct formula.
#[derive(Debug, Clone)]
pub struct Sequence {
    pub name: String,
    pub dfao: Dfao,
    pub generator: Option<fn(u64) -> u32>,
}

struct Builtin {
    name: &'static str,
    file: &'static str,
    generator: fn(u64) -> u32,
}

fn thue_morse(n: u64) -> u32 {
    n.count_ones() % 2
}

fn period_doubling(n: u64) -> u32 {
    thue_morse(n) ^ thue_morse(n + 1)
}

fn paperfolding(n: u64) -> u32 {
    let m = n + 1;
    let odd = m >> m.trailing_zeros();
    (odd % 4 == 1) as u32
}

fn powers_of_two_char(n: u64) -> u32 {
    n.is_power_of_two() as u32
}

const BUILTINS: &[Builtin] = &[
    Builtin { name: "thue_morse", file: include_str!("../data/thue_morse.txt"), generator: thue_morse },
    Builtin { name: "period_doubling", file: include_str!("../data/period_doubling.txt"), generator: period_doubling },
    Builtin { name: "paperfolding", file: include_str!("../data/paperfolding.txt"), generator: paperfolding },
    Builtin {
        name: "powers_of_two_char",
        file: include_str!("../data/powers_of_two_char.txt"),
        generator: powers_of_two_char,
    },
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|b| b.name).collect()
}

/// The shipped DFAO file of a built-in sequence.
pub fn builtin_file(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|b| b.name == name).map(|b| b.file)
}

pub fn builtin(name: &str) -> Result<Sequence> {
    let b = BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::Malformed(format!("unknown sequence `{name}`; known: {:?}", builtin_names())))?;
    let dfao = AutomatonFile::parse(b.file)?.to_dfao()?;
    Ok(Sequence { name: b.name.to_string(), dfao, generator: Some(b.generator) })
}

pub fn thue_morse_dfao() -> Dfao {
    builtin("thue_morse").expect("shipped file").dfao
}

/// Loads a DFAO file; a `# sequence <name>` comment naming a built-in
/// attaches that built-in's generator as a reference.
pub fn from_file_text(text: &str, fallback_name: &str) -> Result<Sequence> {
    let file = AutomatonFile::parse(text)?;
    let dfao = file.to_dfao()?;
    if dfao.alphabet().tracks() != 1 {
        return Err(Error::Malformed("a sequence automaton must read a single track".into()));
    }
    let declared = file.comment_value("sequence").map(str::to_string);
    let generator = declared.as_deref().and_then(|d| BUILTINS.iter().find(|b| b.name == d)).map(|b| b.generator);
    Ok(Sequence { name: declared.unwrap_or_else(|| fallback_name.to_string()), dfao, generator })
}

/// Resolves a built-in name or a path to a DFAO file.
pub fn load(spec: &str) -> Result<Sequence> {
    if let Ok(s) = builtin(spec) {
        return Ok(s);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Malformed(format!("`{spec}` is neither a built-in sequence nor a readable file: {e}")))?;
    from_file_text(&text, spec)
}

impl Sequence {
    /// First `n` where the automaton disagrees with the generator, if any.
    pub fn first_generator_mismatch(&self, upto: u64) -> Option<u64> {
        let g = self.generator?;
        (0..=upto).find(|&n| self.dfao.output(n) != g(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automata_match_generators() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            assert_eq!(s.first_generator_mismatch(1 << 14), None, "{name}");
            s.dfao.check_leading_zeros().unwrap();
        }
    }

    #[test]
    fn known_prefixes() {
        let pre = |name: &str, len| -> String {
            builtin(name).unwrap().dfao.prefix(len).iter().map(|d| d.to_string()).collect()
        };
        assert_eq!(pre("thue_morse", 16), "0110100110010110");
        assert_eq!(pre("powers_of_two_char", 18), "011010001000000010");
        assert_eq!(pre("paperfolding", 16), "1101100111001001");
        assert_eq!(pre("period_doubling", 16), "1011101010111011");
        assert_eq!(builtin("powers_of_two_char").unwrap().dfao.output(8), 1);
    }

    #[test]
    fn declared_name_attaches_reference() {
        let s = from_file_text(builtin_file("thue_morse").unwrap(), "x").unwrap();
        assert_eq!(s.name, "thue_morse");
        assert!(s.generator.is_some());
        assert!(load("no_such_sequence_or_file").is_err());
    }
}
