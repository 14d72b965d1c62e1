//! Plain-text automaton files and Graphviz export.
//!
//! ```text
//! base 2 tracks 2
//! vars n m
//! states 3 initial 0
//! accepting 0 2
//! 0 [0,0] 0
//! ...
//! output 0 1
//! ```
//!
//! Lines starting with `#` are comments. Missing transitions of an acceptor
//! go to an implicit rejecting sink.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::dfa::Dfa;
use super::dfao::Dfao;
use crate::error::{Error, Result};
use crate::numeration::{DigitAlphabet, Symbol};

/// Contents of an automaton file before it is turned into a typed automaton.
#[derive(Debug, Clone)]
pub struct AutomatonFile {
    pub alphabet: DigitAlphabet,
    pub vars: Option<Vec<String>>,
    pub num_states: usize,
    pub initial: u32,
    pub accepting: Vec<u32>,
    pub transitions: Vec<(u32, Symbol, u32)>,
    pub outputs: Option<Vec<u32>>,
    pub comments: Vec<String>,
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Malformed(format!("line {line}: {}", msg.into()))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| bad(line, format!("missing {what}")))?.parse().map_err(|_| bad(line, format!("invalid {what}")))
}

impl AutomatonFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet = None;
        let mut vars = None;
        let mut states = None;
        let mut accepting = Vec::new();
        let mut transitions = Vec::new();
        let mut outputs: BTreeMap<u32, u32> = BTreeMap::new();
        let mut comments = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                comments.push(c.trim().to_string());
                continue;
            }
            let mut toks = trimmed.split_whitespace();
            match toks.next() {
                Some("base") => {
                    let k: u32 = parse_num(toks.next(), line, "base")?;
                    if toks.next() != Some("tracks") {
                        return Err(bad(line, "expected `tracks`"));
                    }
                    let t: usize = parse_num(toks.next(), line, "track count")?;
                    alphabet = Some(DigitAlphabet::new(k, t)?);
                }
                Some("vars") => vars = Some(toks.map(str::to_string).collect::<Vec<_>>()),
                Some("states") => {
                    let n: usize = parse_num(toks.next(), line, "state count")?;
                    if toks.next() != Some("initial") {
                        return Err(bad(line, "expected `initial`"));
                    }
                    let q0: u32 = parse_num(toks.next(), line, "initial state")?;
                    states = Some((n, q0));
                }
                Some("accepting") => {
                    for t in toks {
                        accepting.push(parse_num(Some(t), line, "accepting state")?);
                    }
                }
                Some("output") => {
                    let q: u32 = parse_num(toks.next(), line, "state")?;
                    let v: u32 = parse_num(toks.next(), line, "output")?;
                    outputs.insert(q, v);
                }
                Some(first) => {
                    let al = alphabet.ok_or_else(|| bad(line, "transition before `base` header"))?;
                    let q: u32 = parse_num(Some(first), line, "state")?;
                    let rest: String = toks.collect::<Vec<_>>().join(" ");
                    let close = rest.find(']').ok_or_else(|| bad(line, "expected `[digits]`"))?;
                    let tuple = rest[..close].strip_prefix('[').ok_or_else(|| bad(line, "expected `[digits]`"))?;
                    let digits = tuple
                        .split(',')
                        .map(|d| parse_num::<u32>(Some(d.trim()), line, "digit"))
                        .collect::<Result<Vec<_>>>()?;
                    let sym = al.pack(&digits).map_err(|e| bad(line, e.to_string()))?;
                    let target: u32 = parse_num(rest[close + 1..].split_whitespace().next(), line, "target")?;
                    transitions.push((q, sym, target));
                }
                None => {}
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Malformed("missing `base` header".into()))?;
        let (num_states, initial) = states.ok_or_else(|| Error::Malformed("missing `states` header".into()))?;
        let outputs = if outputs.is_empty() {
            None
        } else {
            let mut v = Vec::with_capacity(num_states);
            for q in 0..num_states as u32 {
                v.push(*outputs.get(&q).ok_or_else(|| Error::Malformed(format!("no output for state {q}")))?);
            }
            Some(v)
        };
        Ok(AutomatonFile { alphabet, vars, num_states, initial, accepting, transitions, outputs, comments })
    }

    fn table(&self, sink: bool) -> Result<(usize, Vec<u32>)> {
        let nsym = self.alphabet.size();
        let n = self.num_states + sink as usize;
        let fill = if sink { self.num_states as u32 } else { u32::MAX };
        let mut delta = vec![fill; n * nsym];
        for &(q, a, r) in &self.transitions {
            if q as usize >= self.num_states || r as usize >= self.num_states {
                return Err(Error::Malformed(format!("transition {q} -> {r} names an unknown state")));
            }
            let slot = &mut delta[q as usize * nsym + a as usize];
            if *slot != fill && *slot != r {
                return Err(Error::Malformed(format!("state {q} has two transitions on one symbol")));
            }
            *slot = r;
        }
        if delta.contains(&u32::MAX) {
            return Err(Error::Malformed("transition function is not total".into()));
        }
        Ok((n, delta))
    }

    pub fn to_dfa(&self) -> Result<Dfa> {
        let (n, delta) = self.table(true)?;
        let mut acc = vec![false; n];
        for &q in &self.accepting {
            *acc.get_mut(q as usize).ok_or_else(|| Error::Malformed(format!("accepting state {q} unknown")))? = true;
        }
        Dfa::new(self.alphabet, self.initial, acc, delta)
    }

    pub fn to_dfao(&self) -> Result<Dfao> {
        let outputs = self.outputs.clone().ok_or_else(|| Error::Malformed("no `output` lines".into()))?;
        let (_, delta) = self.table(false)?;
        Dfao::new(self.alphabet, self.initial, delta, outputs)
    }

    /// Value of a `# key value` comment line, if present.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(char::is_whitespace)?;
            (k.trim_end_matches(':') == key).then(|| v.trim())
        })
    }
}

fn tuple(al: DigitAlphabet, sym: Symbol) -> String {
    let d: Vec<String> = al.unpack(sym).iter().map(u32::to_string).collect();
    format!("[{}]", d.join(","))
}

fn write_header(out: &mut String, comments: &[String], al: DigitAlphabet, vars: Option<&[String]>) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "base {} tracks {}", al.base(), al.tracks());
    if let Some(v) = vars {
        let _ = writeln!(out, "vars {}", v.join(" "));
    }
}

fn write_transitions(out: &mut String, al: DigitAlphabet, states: usize, delta: &[u32]) {
    let nsym = al.size();
    for q in 0..states {
        for a in 0..nsym {
            let _ = writeln!(out, "{q} {} {}", tuple(al, a as Symbol), delta[q * nsym + a]);
        }
    }
}

/// Serializes an acceptor; `vars` adds the relation header line.
pub fn write_dfa(dfa: &Dfa, vars: Option<&[String]>, comments: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, comments, dfa.alphabet(), vars);
    let _ = writeln!(out, "states {} initial {}", dfa.num_states(), dfa.initial());
    let acc: Vec<String> = dfa.accepting_states().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "accepting {}", acc.join(" ").trim_end());
    write_transitions(&mut out, dfa.alphabet(), dfa.num_states(), dfa.delta());
    out
}

pub fn write_dfao(dfao: &Dfao, comments: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, comments, dfao.alphabet(), None);
    let _ = writeln!(out, "states {} initial {}", dfao.num_states(), dfao.initial());
    let _ = writeln!(out, "accepting");
    write_transitions(&mut out, dfao.alphabet(), dfao.num_states(), dfao.delta());
    for q in 0..dfao.num_states() as u32 {
        let _ = writeln!(out, "output {q} {}", dfao.output_of(q));
    }
    out
}

fn is_dead(dfa: &Dfa, q: u32) -> bool {
    !dfa.is_accepting(q) && (0..dfa.alphabet().size() as Symbol).all(|a| dfa.next(q, a) == q)
}

fn dot_edges(
    out: &mut String,
    al: DigitAlphabet,
    states: usize,
    next: impl Fn(u32, Symbol) -> u32,
    skip: impl Fn(u32) -> bool,
) {
    for q in 0..states as u32 {
        if skip(q) {
            continue;
        }
        let mut by_target: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for a in 0..al.size() as Symbol {
            let r = next(q, a);
            if !skip(r) {
                by_target.entry(r).or_default().push(tuple(al, a));
            }
        }
        for (r, labels) in by_target {
            let _ = writeln!(out, "  q{q} -> q{r} [label=\"{}\"];", labels.join(","));
        }
    }
}

/// Graphviz rendering; the rejecting sink and edges into it are omitted.
pub fn dfa_to_dot(dfa: &Dfa, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  start [shape=point];\n");
    for q in 0..dfa.num_states() as u32 {
        if is_dead(dfa, q) {
            continue;
        }
        let shape = if dfa.is_accepting(q) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{q}\"];");
    }
    let _ = writeln!(out, "  start -> q{};", dfa.initial());
    dot_edges(&mut out, dfa.alphabet(), dfa.num_states(), |q, a| dfa.next(q, a), |q| is_dead(dfa, q));
    out.push_str("}\n");
    out
}

pub fn dfao_to_dot(dfao: &Dfao, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n  rankdir=LR;\n  start [shape=point];\n");
    for q in 0..dfao.num_states() as u32 {
        let _ = writeln!(out, "  q{q} [shape=circle, label=\"{q}/{}\"];", dfao.output_of(q));
    }
    let _ = writeln!(out, "  start -> q{};", dfao.initial());
    dot_edges(&mut out, dfao.alphabet(), dfao.num_states(), |q, a| dfao.next(q, a), |_| false);
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVENS: &str =
        "# even numbers\nbase 2 tracks 1\nstates 2 initial 0\naccepting 0\n0 [0] 0\n0 [1] 1\n1 [0] 0\n1 [1] 1\n";

    #[test]
    fn parse_and_write_round_trip() {
        let f = AutomatonFile::parse(EVENS).unwrap();
        assert_eq!(f.comments, vec!["even numbers"]);
        let dfa = f.to_dfa().unwrap();
        for n in 0..20 {
            assert_eq!(dfa.accepts_values(&[n]).unwrap(), n % 2 == 0);
        }
        let text = write_dfa(&dfa.minimize(), None, &[]);
        let back = AutomatonFile::parse(&text).unwrap().to_dfa().unwrap();
        assert!(back.equivalent(&dfa).unwrap());
    }

    #[test]
    fn missing_transitions_go_to_sink() {
        let text = "base 2 tracks 1\nstates 1 initial 0\naccepting 0\n0 [1] 0\n";
        let dfa = AutomatonFile::parse(text).unwrap().to_dfa().unwrap();
        assert!(dfa.accepts_values(&[7]).unwrap());
        assert!(!dfa.accepts_values(&[2]).unwrap());
        assert!(AutomatonFile::parse(text).unwrap().to_dfao().is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(AutomatonFile::parse("states 1 initial 0").is_err());
        assert!(AutomatonFile::parse("base 2 tracks 1\nstates 1 initial 0\n0 [2] 0\n").is_err());
        assert!(AutomatonFile::parse("base 2 tracks 1\nstates 1 initial 0\n0 [0] 5\n").unwrap().to_dfa().is_err());
        assert!(AutomatonFile::parse("base 2 tracks 1\nstates x initial 0\n").is_err());
    }

    #[test]
    fn dot_omits_dead_state() {
        let text = "base 2 tracks 1\nstates 1 initial 0\naccepting 0\n0 [1] 0\n";
        let dfa = AutomatonFile::parse(text).unwrap().to_dfa().unwrap();
        let dot = dfa_to_dot(&dfa, "ones");
        assert!(dot.contains("q0 -> q0 [label=\"[1]\"]"));
        assert!(!dot.contains("q1"));
    }
}
