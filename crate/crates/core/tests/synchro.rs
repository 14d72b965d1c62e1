use autosync::oracles::{FactorKind, FactorTable, PrefixView};
use autosync::sequences::builtin;
use autosync::synchro::{
    analyze, build_appearance_sync, build_power_count_sync, build_primitive_count_sync, BuildOptions,
};

const N: usize = 96;

fn table(name: &str) -> FactorTable {
    let seq = builtin(name).unwrap();
    FactorTable::build(&PrefixView::from_dfao(name, &seq.dfao), N).unwrap()
}

#[test]
fn every_builtin_matches_oracles() {
    let opts = BuildOptions::default();
    for name in ["thue_morse", "period_doubling", "paperfolding", "powers_of_two_char"] {
        let x = builtin(name).unwrap().dfao;
        let t = table(name);
        let a = analyze(&x, &opts).unwrap();
        let alpha = build_appearance_sync(&x, &opts).unwrap();
        let pw = build_power_count_sync(&x, &opts).unwrap();
        let prim = build_primitive_count_sync(&a.subword_complexity, &pw).unwrap();
        for n in 0..=N {
            let n64 = n as u64;
            assert_eq!(a.subword_complexity.eval(n64).unwrap(), t.count(n, FactorKind::Factors), "{name} rho({n})");
            assert_eq!(a.block_counts.dfao.output(n64) as usize, t.novel_set(n).block_count, "{name} e({n})");
            assert_eq!(alpha.eval(n64).unwrap(), t.appearance(n), "{name} alpha({n})");
            assert_eq!(pw.eval(n64).unwrap(), t.count(n, FactorKind::Powers), "{name} powers({n})");
            assert_eq!(prim.eval(n64).unwrap(), t.count(n, FactorKind::Primitive), "{name} primitive({n})");
        }
        assert!(a.iterations <= a.block_counts.bound as usize + 1, "{name}: {} iterations", a.iterations);
    }
}

#[test]
fn fast_and_intersection_evaluation_agree() {
    let x = builtin("thue_morse").unwrap().dfao;
    let rho = analyze(&x, &BuildOptions::default()).unwrap().subword_complexity;
    for n in [0u64, 1, 2, 3, 17, 1000, 123_456_789] {
        assert_eq!(rho.eval(n).unwrap(), rho.value_by_intersection(n).unwrap());
    }
    assert!(rho.check_function_graph(128).unwrap());
}
