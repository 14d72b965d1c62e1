//! Compiled predicates checked against direct evaluation on sequence prefixes.

use std::time::Instant;

use autosync::oracles::words::is_power;
use autosync::predicates::{PredicateCompiler, Relation};
use autosync::sequences::builtin;

struct Case {
    name: &'static str,
    word: Vec<u32>,
    compiler: PredicateCompiler,
}

fn case(name: &'static str) -> Case {
    let seq = builtin(name).unwrap();
    Case { name, word: seq.dfao.prefix(1024), compiler: PredicateCompiler::new(&seq.dfao) }
}

fn factor_eq(w: &[u32], i: usize, j: usize, n: usize) -> bool {
    w[i..i + n] == w[j..j + n]
}

fn novel(w: &[u32], n: usize, i: usize) -> bool {
    (0..i).all(|j| !factor_eq(w, i, j, n))
}

fn check_factor_eq(c: &Case, r: &Relation, bound: usize) {
    for i in 0..bound {
        for j in 0..bound {
            for n in 0..bound {
                let got = r.accepts(&[("i", i as u64), ("j", j as u64), ("n", n as u64)]).unwrap();
                assert_eq!(got, factor_eq(&c.word, i, j, n), "{}: ({i},{j},{n})", c.name);
            }
        }
    }
}

#[test]
fn factor_predicates_match_prefix_evaluation() {
    for name in ["thue_morse", "powers_of_two_char"] {
        let c = case(name);
        let start = Instant::now();
        let feq = c.compiler.factor_eq().unwrap();
        let novel_rel = c.compiler.novel().unwrap();
        let power = c.compiler.power_len().unwrap();
        let novel_power = c.compiler.novel_power().unwrap();
        eprintln!(
            "{name}: factor_eq {} states, novel {}, power {}, novel power {} in {:?}",
            feq.num_states(),
            novel_rel.num_states(),
            power.num_states(),
            novel_power.num_states(),
            start.elapsed()
        );
        check_factor_eq(&c, &feq, 40);
        for n in 0..=200usize {
            for i in 0..=200usize {
                let (nv, iv) = (n as u64, i as u64);
                let w = &c.word[i..i + n];
                assert_eq!(
                    novel_rel.accepts(&[("n", nv), ("i", iv)]).unwrap(),
                    novel(&c.word, n, i),
                    "{name} novel ({n},{i})"
                );
                assert_eq!(power.accepts(&[("n", nv), ("i", iv)]).unwrap(), is_power(w), "{name} power ({n},{i})");
                assert_eq!(
                    novel_power.accepts(&[("n", nv), ("i", iv)]).unwrap(),
                    is_power(w) && novel(&c.word, n, i),
                    "{name} novel power ({n},{i})"
                );
            }
        }
    }
}

#[test]
fn spot_examples() {
    let c = case("thue_morse");
    let feq = c.compiler.factor_eq().unwrap();
    assert!(feq.accepts(&[("i", 0), ("j", 3), ("n", 1)]).unwrap());
    assert!(!feq.accepts(&[("i", 0), ("j", 1), ("n", 2)]).unwrap());
    let novel = c.compiler.novel().unwrap();
    for n in 0..50 {
        assert!(novel.accepts(&[("n", n), ("i", 0)]).unwrap());
    }
    assert!(!novel.accepts(&[("n", 1), ("i", 2)]).unwrap());
    assert!(novel.accepts(&[("n", 1), ("i", 1)]).unwrap());
    let is_power = c.compiler.is_power().unwrap();
    assert!(!is_power.accepts(&[("i", 4), ("j", 4)]).unwrap());
    // t = 0110...: the square 11 sits at positions 1..2, while t[2..3] = 10
    assert!(is_power.accepts(&[("i", 1), ("j", 2)]).unwrap());
    assert!(!is_power.accepts(&[("i", 2), ("j", 3)]).unwrap());
    assert!(!is_power.accepts(&[("i", 0), ("j", 2)]).unwrap());
    for i in 0..60u64 {
        for j in i..i + 20 {
            let w = &c.word[i as usize..=j as usize];
            assert_eq!(is_power.accepts(&[("i", i), ("j", j)]).unwrap(), autosync::oracles::words::is_power(w));
        }
    }
    let np = c.compiler.novel_power().unwrap();
    assert!(np.accepts(&[("n", 2), ("i", 1)]).unwrap());
    assert!(!np.accepts(&[("n", 2), ("i", 2)]).unwrap());
    assert!(!np.accepts(&[("n", 2), ("i", 0)]).unwrap());
    for i in 0..=200 {
        assert!(!np.accepts(&[("n", 3), ("i", i)]).unwrap());
    }
}

#[test]
fn novelty_monotonicity_by_membership() {
    let c = case("thue_morse");
    let novel = c.compiler.novel().unwrap();
    for n in 0..64u64 {
        for i in 0..64u64 {
            if novel.accepts(&[("n", n), ("i", i)]).unwrap() {
                assert!(novel.accepts(&[("n", n + 1), ("i", i)]).unwrap());
                if i >= 1 {
                    assert!(novel.accepts(&[("n", n + 1), ("i", i - 1)]).unwrap());
                }
            }
        }
    }
}

#[test]
fn factor_eq_is_an_equivalence() {
    let c = case("thue_morse");
    let feq = c.compiler.factor_eq().unwrap();
    let e = |i: u64, j: u64, n: u64| feq.accepts(&[("i", i), ("j", j), ("n", n)]).unwrap();
    for n in [1u64, 3, 5, 8] {
        for i in 0..24 {
            assert!(e(i, i, n));
            for j in 0..24 {
                assert_eq!(e(i, j, n), e(j, i, n));
                for k in 0..24 {
                    if e(i, j, n) && e(j, k, n) {
                        assert!(e(i, k, n));
                    }
                }
            }
        }
    }
}

#[test]
fn forall_and_not_exists_not_agree() {
    // two syntactic routes to the novelty predicate
    let c = case("thue_morse");
    let via_exists = c.compiler.novel().unwrap();
    let earlier = c.compiler.cmp(autosync::predicates::Cmp::Lt, "j", "i").unwrap();
    let via_forall = earlier.negate().or(&c.compiler.factor_eq().unwrap().negate()).unwrap().forall("j").unwrap();
    assert!(via_exists.equivalent(&via_forall));
}
