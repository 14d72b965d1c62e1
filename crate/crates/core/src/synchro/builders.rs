use crate::automata::Dfao;
use crate::error::Result;
use crate::predicates::{Cmp, PredicateCompiler, Relation};

use super::blocks::{block_count_from_blocks, count_from_blocks, BlockAutomaton, BlockCountDfao};
use super::function::{ARG_VAR, VALUE_VAR};
use super::{BuildOptions, SyncFunction};

/// Everything derived from one sequence, sharing compiled predicates.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub subword_complexity: SyncFunction,
    pub iterations: usize,
    pub block_counts: BlockCountDfao,
}

/// Replaces the value at `n = 0` by `value`.
fn with_value_at_zero(f: &SyncFunction, value: u64) -> Result<SyncFunction> {
    let k = f.base();
    let zero = Relation::constant(k, ARG_VAR, 0)?;
    let rel = f.to_relation().and(&zero.negate())?.or(&zero.and(&Relation::constant(k, VALUE_VAR, value)?)?)?;
    SyncFunction::from_relation(&rel, ARG_VAR, VALUE_VAR)
}

fn compiler(x: &Dfao, opts: &BuildOptions) -> PredicateCompiler {
    PredicateCompiler::with_state_cap(x, opts.state_cap)
}

/// Graph of `n -> rho(n)`, the number of distinct length-`n` factors.
pub fn build_rho_sync(x: &Dfao, opts: &BuildOptions) -> Result<SyncFunction> {
    Ok(analyze(x, opts)?.subword_complexity)
}

/// Subword complexity and novelty block counts in one pass.
pub fn analyze(x: &Dfao, opts: &BuildOptions) -> Result<Analysis> {
    let comp = compiler(x, opts);
    let blocks = BlockAutomaton::build(&comp.novel()?)?;
    let count = count_from_blocks(&blocks, opts)?;
    Ok(Analysis {
        subword_complexity: with_value_at_zero(&count.function, 1)?,
        iterations: count.iterations,
        block_counts: block_count_from_blocks(&blocks, opts)?,
    })
}

/// Graph of `n -> alpha(n)`: the least `m` such that every length-`n`
/// factor occurs starting at some position `<= m`.
pub fn build_appearance_sync(x: &Dfao, opts: &BuildOptions) -> Result<SyncFunction> {
    let comp = compiler(x, opts);
    let k = comp.base();
    let seen_by = comp.factor_eq()?.and(&comp.cmp(Cmp::Le, "j", "m")?)?.exists("j")?.negate().exists("i")?.negate();
    let last_novel = comp.novel()?.rename(&[("i", "m")])?;
    let rel = seen_by.and(&last_novel)?.rename(&[("n", ARG_VAR), ("m", VALUE_VAR)])?;
    debug_assert_eq!(rel.base(), k);
    SyncFunction::from_relation(&rel, ARG_VAR, VALUE_VAR)
}

/// Graph of `n -> ` number of distinct length-`n` factors that are powers.
pub fn build_power_count_sync(x: &Dfao, opts: &BuildOptions) -> Result<SyncFunction> {
    let comp = compiler(x, opts);
    let blocks = BlockAutomaton::build(&comp.novel_power()?)?;
    let count = count_from_blocks(&blocks, opts)?;
    with_value_at_zero(&count.function, 0)
}

/// Graph of `n -> rho(n) - powers(n)`, from the two graphs by subtraction.
pub fn build_primitive_count_sync(rho: &SyncFunction, powers: &SyncFunction) -> Result<SyncFunction> {
    let k = rho.base();
    let r = rho.to_relation().rename(&[(VALUE_VAR, "a")])?;
    let p = powers.to_relation().rename(&[(VALUE_VAR, "b")])?;
    let rel = r.and(&p)?.and(&Relation::add(k, VALUE_VAR, "b", "a")?)?.exists_all(&["a", "b"])?;
    SyncFunction::from_relation(&rel, ARG_VAR, VALUE_VAR)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::DigitAlphabet;
    use crate::oracles::{FactorKind, FactorTable, PrefixView};
    use crate::sequences::thue_morse_dfao;
    use num_rational::Ratio;

    /// 0, 1, 1, 1, ...
    fn zero_then_ones() -> Dfao {
        Dfao::new(DigitAlphabet::new(2, 1).unwrap(), 0, vec![0, 1, 1, 1], vec![0, 1]).unwrap()
    }

    #[test]
    fn eventually_constant_complexity() {
        // only 1^n and 0 1^(n-1)
        let x = zero_then_ones();
        let rho = build_rho_sync(&x, &BuildOptions::default()).unwrap();
        let t = FactorTable::build(&PrefixView::from_dfao("zero_then_ones", &x), 64).unwrap();
        for n in 0..=64u64 {
            assert_eq!(rho.eval(n).unwrap(), t.count(n as usize, FactorKind::Factors));
            assert_eq!(rho.eval(n).unwrap(), if n == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn thue_morse_growth_and_ratios() {
        let rho = build_rho_sync(&thue_morse_dfao(), &BuildOptions::default()).unwrap();
        assert_eq!(rho.ratio_extremes(1).unwrap(), (Ratio::from_integer(2), Ratio::from_integer(2)));
        let (_, hi) = rho.ratio_extremes(512).unwrap();
        assert!(hi >= Ratio::new(10, 3) - Ratio::new(1, 50));
        for n in 1..=512 {
            assert!(rho.eval(n).unwrap() <= 4 * n);
        }
        assert!(rho.to_relation().accepts(&[(ARG_VAR, 6), (VALUE_VAR, 16)]).unwrap());
        assert!(!rho.to_relation().accepts(&[(ARG_VAR, 6), (VALUE_VAR, 15)]).unwrap());
    }

    #[test]
    fn evaluation_work_is_linear_in_digits() {
        let rho = build_rho_sync(&thue_morse_dfao(), &BuildOptions::default()).unwrap();
        let per_digit: Vec<f64> =
            (4..=30).map(|p| rho.eval_traced(1u64 << p).unwrap().1.edges_visited as f64 / (p + 1) as f64).collect();
        let lo = per_digit.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = per_digit.iter().cloned().fold(0.0, f64::max);
        assert!(hi <= 2.0 * lo, "{per_digit:?}");
    }

    #[test]
    fn thue_morse_values() {
        let x = thue_morse_dfao();
        let opts = BuildOptions::default();
        let rho = build_rho_sync(&x, &opts).unwrap();
        assert_eq!(rho.eval(0).unwrap(), 1);
        assert_eq!(rho.eval(4).unwrap(), 10);
        assert_eq!(rho.eval(6).unwrap(), 16);
        let alpha = build_appearance_sync(&x, &opts).unwrap();
        assert_eq!(alpha.eval(2).unwrap(), 5);
        let pw = build_power_count_sync(&x, &opts).unwrap();
        assert_eq!(pw.eval(2).unwrap(), 2);
        assert_eq!(pw.eval(3).unwrap(), 0);
        let prim = build_primitive_count_sync(&rho, &pw).unwrap();
        assert_eq!(prim.eval(2).unwrap(), 2);
        assert_eq!(prim.eval(3).unwrap(), 6);
    }
}
