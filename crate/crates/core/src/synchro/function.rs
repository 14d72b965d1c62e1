use num_rational::Ratio;

use crate::automata::format::{write_dfa, AutomatonFile};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::numeration::{decode_base_k, encode_base_k, Symbol};
use crate::predicates::Relation;

/// Variable names of the two tracks when a function graph is viewed as a relation.
pub const ARG_VAR: &str = "n";
pub const VALUE_VAR: &str = "v";

/// Work done by one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalStats {
    /// Transitions inspected across the backward and forward passes.
    pub edges_visited: u64,
    /// Leading zeros placed before `(n)_k` on the argument track.
    pub padding: usize,
}

/// A two-track automaton accepting exactly `{(n, f(n))_k : n >= domain_floor}`.
#[derive(Debug, Clone)]
pub struct SyncFunction {
    graph: Dfa,
    domain_floor: u64,
    // predecessors of (target, argument digit): (source, value digit)
    rev_start: Vec<u32>,
    rev: Vec<(u32, u32)>,
}

impl PartialEq for SyncFunction {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl SyncFunction {
    /// Track 0 is the argument, track 1 the value.
    pub fn new(graph: Dfa) -> Result<Self> {
        let al = graph.alphabet();
        if al.tracks() != 2 {
            return Err(Error::Malformed(format!("a function graph has 2 tracks, not {}", al.tracks())));
        }
        let graph = graph.minimize();
        let k = al.base();
        let n = graph.num_states();
        let mut counts = vec![0u32; n * k as usize + 1];
        for q in 0..n as u32 {
            for s in 0..al.size() as Symbol {
                let key = graph.next(q, s) as usize * k as usize + al.digit(s, 0) as usize;
                counts[key + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut rev = vec![(0, 0); n * al.size()];
        for q in 0..n as u32 {
            for s in 0..al.size() as Symbol {
                let key = graph.next(q, s) as usize * k as usize + al.digit(s, 0) as usize;
                rev[fill[key] as usize] = (q, al.digit(s, 1));
                fill[key] += 1;
            }
        }
        let mut f = SyncFunction { graph, domain_floor: 0, rev_start: counts, rev };
        f.domain_floor = if f.zero_is_in_domain() { 0 } else { 1 };
        Ok(f)
    }

    pub fn from_relation(rel: &Relation, arg: &str, value: &str) -> Result<Self> {
        let pos = |v: &str| rel.vars().iter().position(|x| x == v).ok_or_else(|| Error::UnknownVariable(v.to_string()));
        if rel.vars().len() != 2 {
            return Err(Error::Malformed("a function graph relates exactly two variables".into()));
        }
        let order = [pos(arg)?, pos(value)?];
        SyncFunction::new(rel.dfa().permute_tracks(&order)?)
    }

    /// The graph as a relation over `(n, v)`.
    pub fn to_relation(&self) -> Relation {
        Relation::new(self.graph.clone(), vec![ARG_VAR.into(), VALUE_VAR.into()]).expect("two distinct names")
    }

    pub fn graph(&self) -> &Dfa {
        &self.graph
    }

    pub fn base(&self) -> u32 {
        self.graph.alphabet().base()
    }

    pub fn num_states(&self) -> usize {
        self.graph.num_states()
    }

    pub fn domain_floor(&self) -> u64 {
        self.domain_floor
    }

    fn zero_is_in_domain(&self) -> bool {
        let al = self.graph.alphabet();
        let mut seen = vec![false; self.graph.num_states()];
        let mut stack = vec![self.graph.initial()];
        seen[self.graph.initial() as usize] = true;
        while let Some(q) = stack.pop() {
            if self.graph.is_accepting(q) {
                return true;
            }
            for s in (0..al.size() as Symbol).filter(|&s| al.digit(s, 0) == 0) {
                let r = self.graph.next(q, s);
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    stack.push(r);
                }
            }
        }
        false
    }

    fn predecessors(&self, q: u32, arg_digit: u32) -> &[(u32, u32)] {
        let key = q as usize * self.base() as usize + arg_digit as usize;
        &self.rev[self.rev_start[key] as usize..self.rev_start[key + 1] as usize]
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        self.eval_traced(n).map(|(v, _)| v)
    }

    /// Evaluates `f(n)` by pruning a layered copy of the graph backwards from
    /// the accepting states along `0^s (n)_k`, then reading the unique
    /// surviving path forwards. Work is linear in the number of digits.
    pub fn eval_traced(&self, n: u64) -> Result<(u64, EvalStats)> {
        if n < self.domain_floor {
            return Err(Error::Domain(n));
        }
        let k = self.base();
        let al = self.graph.alphabet();
        let states = self.graph.num_states();
        let digits = encode_base_k(n, k);
        let mut stats = EvalStats::default();
        // f(n) has at most |(n)_k| + states digits, or pumping a zero-argument
        // loop would give infinitely many values
        for pad in 0..=states + 1 {
            let word: Vec<u32> = std::iter::repeat_n(0, pad).chain(digits.iter().copied()).collect();
            let len = word.len();
            let mut alive = vec![false; (len + 1) * states];
            let mut frontier: Vec<u32> = self.graph.accepting_states().collect();
            for &q in &frontier {
                alive[len * states + q as usize] = true;
            }
            for t in (0..len).rev() {
                let mut next = Vec::new();
                for &q in &frontier {
                    for &(p, _) in self.predecessors(q, word[t]) {
                        stats.edges_visited += 1;
                        let slot = &mut alive[t * states + p as usize];
                        if !*slot {
                            *slot = true;
                            next.push(p);
                        }
                    }
                }
                frontier = next;
            }
            let q0 = self.graph.initial();
            if !alive[q0 as usize] {
                continue;
            }
            // count surviving paths (saturating at 2) to detect a broken graph
            let mut paths = vec![0u8; states];
            paths[q0 as usize] = 1;
            for (t, &d) in word.iter().enumerate() {
                let mut next = vec![0u8; states];
                for (q, &c) in paths.iter().enumerate().filter(|(_, &c)| c > 0) {
                    for v in 0..k {
                        stats.edges_visited += 1;
                        let r = self.graph.next(q as u32, al.pack(&[d, v]).expect("digits in range")) as usize;
                        if alive[(t + 1) * states + r] {
                            next[r] = next[r].saturating_add(c).min(2);
                        }
                    }
                }
                paths = next;
            }
            let total: u32 = paths.iter().map(|&c| c as u32).sum();
            if total > 1 {
                return Err(Error::BrokenInvariant {
                    n,
                    detail: format!("several values of length {len} are accepted"),
                });
            }
            let mut q = q0;
            let mut value_digits = Vec::with_capacity(len);
            for (t, &d) in word.iter().enumerate() {
                let (v, r) = (0..k)
                    .map(|v| (v, self.graph.next(q, al.pack(&[d, v]).expect("digits in range"))))
                    .find(|&(_, r)| alive[(t + 1) * states + r as usize])
                    .expect("a surviving path continues");
                stats.edges_visited += 1;
                value_digits.push(v);
                q = r;
            }
            stats.padding = pad;
            return Ok((decode_base_k(&value_digits, k)?, stats));
        }
        Err(Error::Domain(n))
    }

    /// Number of values accepted together with `n`, by intersecting with the
    /// constraint fixing the argument and counting the remaining words.
    pub fn values_at(&self, n: u64) -> Result<Option<u64>> {
        let fixed = Relation::constant(self.base(), ARG_VAR, n)?;
        let sliced = self.to_relation().and(&fixed)?.exists(ARG_VAR)?;
        Ok(sliced.dfa().count_canonical())
    }

    /// The value at `n` obtained through the intersection route.
    pub fn value_by_intersection(&self, n: u64) -> Result<u64> {
        let fixed = Relation::constant(self.base(), ARG_VAR, n)?;
        let sliced = self.to_relation().and(&fixed)?.exists(ARG_VAR)?;
        match sliced.dfa().count_canonical() {
            Some(1) => Ok(sliced.witness().expect("one value")[0]),
            Some(0) => Err(Error::Domain(n)),
            _ => Err(Error::BrokenInvariant { n, detail: "more than one value".into() }),
        }
    }

    /// True iff every `n` in `domain_floor..=bound` has exactly one value.
    pub fn check_function_graph(&self, bound: u64) -> Result<bool> {
        for n in self.domain_floor..=bound {
            if self.values_at(n)? != Some(1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact minimum and maximum of `f(n)/n` over `1..=bound`.
    pub fn ratio_extremes(&self, bound: u64) -> Result<(Ratio<u64>, Ratio<u64>)> {
        if bound == 0 {
            return Err(Error::Malformed("ratio bound must be at least 1".into()));
        }
        let mut lo: Option<Ratio<u64>> = None;
        let mut hi: Option<Ratio<u64>> = None;
        for n in 1..=bound {
            let r = Ratio::new(self.eval(n)?, n);
            lo = Some(lo.map_or(r, |l| l.min(r)));
            hi = Some(hi.map_or(r, |h| h.max(r)));
        }
        Ok((lo.expect("bound >= 1"), hi.expect("bound >= 1")))
    }

    pub fn to_text(&self, comments: &[String]) -> String {
        write_dfa(&self.graph, Some(&[ARG_VAR.to_string(), VALUE_VAR.to_string()]), comments)
    }

    /// Reads a function graph; tracks are taken as (argument, value) in file order.
    pub fn from_text(text: &str) -> Result<Self> {
        let file = AutomatonFile::parse(text)?;
        SyncFunction::new(file.to_dfa()?)
    }

    /// The graph of the identity `n -> n`, handy as a reference.
    pub fn identity(k: u32) -> Result<Self> {
        let rel = Relation::compare(k, crate::predicates::Cmp::Eq, ARG_VAR, VALUE_VAR)?;
        SyncFunction::from_relation(&rel, ARG_VAR, VALUE_VAR)
    }
}
