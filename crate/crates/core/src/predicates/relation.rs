use std::fmt;

use crate::automata::{product, project_and_determinize, BoolOp, Dfa, Dfao, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use crate::numeration::{encode_tuple, DigitAlphabet, Symbol};

/// Comparison between two integer variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// An automaton whose tracks are bound to named integer variables.
///
/// Tracks are always ordered by variable name, and the automaton is kept
/// minimal, so two relations with the same variables denote the same
/// predicate iff their automata are identical.
#[derive(Debug, Clone)]
pub struct Relation {
    dfa: Dfa,
    vars: Vec<String>,
    state_cap: usize,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.dfa == other.dfa
    }
}

impl Eq for Relation {}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; {} states)", self.vars.join(", "), self.dfa.num_states())
    }
}

fn owned(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|v| v.to_string()).collect()
}

impl Relation {
    /// Binds track `t` of `dfa` to `vars[t]`; tracks are then reordered by name.
    pub fn new(dfa: Dfa, vars: Vec<String>) -> Result<Self> {
        if vars.len() != dfa.alphabet().tracks() {
            return Err(Error::Malformed(format!(
                "{} variable(s) for {} track(s)",
                vars.len(),
                dfa.alphabet().tracks()
            )));
        }
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        for w in order.windows(2) {
            if vars[w[0]] == vars[w[1]] {
                return Err(Error::DuplicateVariable(vars[w[0]].clone()));
            }
        }
        let sorted: Vec<String> = order.iter().map(|&t| vars[t].clone()).collect();
        let dfa = if order.iter().enumerate().all(|(i, &t)| i == t) { dfa } else { dfa.permute_tracks(&order)? };
        Ok(Relation { dfa: dfa.minimize(), vars: sorted, state_cap: DEFAULT_STATE_CAP })
    }

    /// Sets the state cap used by projections and products built from here on.
    pub fn with_state_cap(mut self, cap: usize) -> Self {
        self.state_cap = cap;
        self
    }

    pub fn state_cap(&self) -> usize {
        self.state_cap
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn base(&self) -> u32 {
        self.dfa.alphabet().base()
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    fn track_of(&self, v: &str) -> Result<usize> {
        self.vars.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVariable(v.to_string()))
    }

    /// Membership of an assignment given in any order; every variable must be bound.
    pub fn accepts(&self, assignment: &[(&str, u64)]) -> Result<bool> {
        let mut values = vec![None; self.vars.len()];
        for &(v, x) in assignment {
            values[self.track_of(v)?] = Some(x);
        }
        let values = values
            .into_iter()
            .zip(&self.vars)
            .map(|(x, v)| x.ok_or_else(|| Error::UnknownVariable(format!("{v} (unbound)"))))
            .collect::<Result<Vec<_>>>()?;
        self.accepts_values(&values)
    }

    /// Membership with values listed in variable order.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        self.dfa.accepts(&encode_tuple(values, self.base())?)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    /// Smallest satisfying assignment (shortest encoding), in variable order.
    pub fn witness(&self) -> Option<Vec<u64>> {
        self.dfa.shortest_witness().map(|w| w.values())
    }

    pub fn equivalent(&self, other: &Relation) -> bool {
        self.vars == other.vars && self.dfa == other.dfa
    }

    /// Simultaneous renaming of variables.
    pub fn rename(&self, pairs: &[(&str, &str)]) -> Result<Relation> {
        for (from, _) in pairs {
            self.track_of(from)?;
        }
        let vars = self
            .vars
            .iter()
            .map(|v| pairs.iter().find(|(from, _)| from == v).map_or_else(|| v.clone(), |(_, to)| to.to_string()))
            .collect();
        Ok(Relation::new(self.dfa.clone(), vars)?.with_state_cap(self.state_cap))
    }

    /// Conjunction/disjunction (or any product connective) with variables
    /// aligned by name; each side ignores the tracks it does not mention.
    pub fn combine(&self, other: &Relation, op: BoolOp) -> Result<Relation> {
        if self.base() != other.base() {
            return Err(Error::AlphabetMismatch(format!("base {} vs base {}", self.base(), other.base())));
        }
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let alphabet = DigitAlphabet::new(self.base(), vars.len())?;
        let map_for = |rel: &Relation| -> Vec<Symbol> {
            let ral = rel.dfa.alphabet();
            let positions: Vec<usize> = rel.vars.iter().map(|v| vars.binary_search(v).unwrap()).collect();
            (0..alphabet.size() as Symbol)
                .map(|s| {
                    let digits = alphabet.unpack(s);
                    positions.iter().fold(0, |acc, &p| acc * ral.base() + digits[p])
                })
                .collect()
        };
        let cap = self.state_cap.min(other.state_cap);
        let amap = map_for(self);
        let bmap = map_for(other);
        let dfa = product(alphabet, &self.dfa, Some(&amap), &other.dfa, Some(&bmap), op, cap)?.minimize();
        Ok(Relation { dfa, vars, state_cap: cap })
    }

    pub fn and(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, BoolOp::And)
    }

    pub fn or(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, BoolOp::Or)
    }

    pub fn negate(&self) -> Relation {
        Relation { dfa: self.dfa.complement(), vars: self.vars.clone(), state_cap: self.state_cap }
    }

    pub fn quantify(&self, v: &str, q: Quantifier) -> Result<Relation> {
        let track = self.track_of(v)?;
        if self.vars.len() == 1 {
            return Err(Error::SingleTrack);
        }
        let mut vars = self.vars.clone();
        vars.remove(track);
        let project = |dfa: &Dfa| project_and_determinize(dfa, track, self.state_cap);
        let dfa = match q {
            Quantifier::Exists => project(&self.dfa)?,
            Quantifier::Forall => project(&self.dfa.complement())?.complement(),
        };
        Ok(Relation { dfa, vars, state_cap: self.state_cap })
    }

    pub fn exists(&self, v: &str) -> Result<Relation> {
        self.quantify(v, Quantifier::Exists)
    }

    pub fn forall(&self, v: &str) -> Result<Relation> {
        self.quantify(v, Quantifier::Forall)
    }

    /// Existentially quantifies several variables in turn.
    pub fn exists_all(&self, vs: &[&str]) -> Result<Relation> {
        vs.iter().try_fold(self.clone(), |r, v| r.exists(v))
    }

    /// Relation accepting every assignment of `vars`.
    pub fn always(k: u32, vars: &[&str]) -> Result<Relation> {
        Relation::new(Dfa::universal(DigitAlphabet::new(k, vars.len())?), owned(vars))
    }

    /// `a + b = c`, read most significant digit first.
    pub fn add(k: u32, a: &str, b: &str, c: &str) -> Result<Relation> {
        let al = DigitAlphabet::new(k, 3)?;
        // state = carry owed by the less significant digits; 2 = dead
        let mut delta = Vec::with_capacity(3 * al.size());
        for state in 0..3u32 {
            for s in 0..al.size() as Symbol {
                let d = al.unpack(s);
                let next = if state == 2 {
                    2
                } else {
                    let carry_in = d[2] as i64 + k as i64 * state as i64 - d[0] as i64 - d[1] as i64;
                    if carry_in == 0 || carry_in == 1 {
                        carry_in as u32
                    } else {
                        2
                    }
                };
                delta.push(next);
            }
        }
        Relation::new(Dfa::new(al, 0, vec![true, false, false], delta)?, owned(&[a, b, c]))
    }

    pub fn compare(k: u32, cmp: Cmp, a: &str, b: &str) -> Result<Relation> {
        let al = DigitAlphabet::new(k, 2)?;
        // 0: equal so far, 1: a < b decided, 2: a > b decided
        let mut delta = Vec::with_capacity(3 * al.size());
        for state in 0..3u32 {
            for s in 0..al.size() as Symbol {
                let (x, y) = (al.digit(s, 0), al.digit(s, 1));
                delta.push(match state {
                    0 if x < y => 1,
                    0 if x > y => 2,
                    other => other,
                });
            }
        }
        let accepting = match cmp {
            Cmp::Lt => vec![false, true, false],
            Cmp::Le => vec![true, true, false],
            Cmp::Eq => vec![true, false, false],
            Cmp::Ne => vec![false, true, true],
        };
        Relation::new(Dfa::new(al, 0, accepting, delta)?, owned(&[a, b]))
    }

    /// `v = value`.
    pub fn constant(k: u32, v: &str, value: u64) -> Result<Relation> {
        let digits = crate::numeration::encode_base_k(value, k);
        let al = DigitAlphabet::new(k, 1)?;
        let len = digits.len() as u32;
        // states 0..=len follow the digits (0 loops on leading zeros), len+1 = dead
        let dead = len + 1;
        let mut delta = Vec::new();
        for q in 0..=dead {
            for d in 0..k {
                let next = if q == dead || q == len {
                    dead
                } else if digits[q as usize] == d {
                    q + 1
                } else {
                    dead
                };
                let next = if q == 0 && d == 0 { 0 } else { next };
                delta.push(next);
            }
        }
        let mut accepting = vec![false; dead as usize + 1];
        accepting[len as usize] = true;
        Relation::new(Dfa::new(al, 0, accepting, delta)?, owned(&[v]))
    }

    /// `x[u] = x[v]`: two copies of the sequence automaton run in lockstep.
    pub fn seq_eq_positions(x: &Dfao, u: &str, v: &str) -> Result<Relation> {
        single_track(x)?;
        let k = x.base();
        let al = DigitAlphabet::new(k, 2)?;
        let n = x.num_states() as u32;
        let mut delta = Vec::with_capacity((n * n) as usize * al.size());
        let mut accepting = Vec::with_capacity((n * n) as usize);
        for p in 0..n {
            for q in 0..n {
                accepting.push(x.output_of(p) == x.output_of(q));
                for s in 0..al.size() as Symbol {
                    let (a, b) = (al.digit(s, 0), al.digit(s, 1));
                    delta.push(x.next(p, a) * n + x.next(q, b));
                }
            }
        }
        let init = x.initial() * n + x.initial();
        Relation::new(Dfa::new(al, init, accepting, delta)?, owned(&[u, v]))
    }

    /// `x[u] = letter`.
    pub fn seq_letter_at(x: &Dfao, u: &str, letter: u32) -> Result<Relation> {
        single_track(x)?;
        Relation::new(x.letter_acceptor(letter)?, owned(&[u]))
    }
}

fn single_track(x: &Dfao) -> Result<()> {
    if x.alphabet().tracks() != 1 {
        return Err(Error::Malformed("sequence automaton must read one track".into()));
    }
    x.check_leading_zeros()
}
