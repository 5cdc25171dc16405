mod common;

use common::{eval_oracle, first_countermodel, random_formula, truth_table_valid, IntChain, NaivePoset, SetAlgebra};
use medlat_core::logic::{
    antichain_formula, axiom, classical_tautology, countermodel_search, eval, is_valid, is_valid_with, lm_member,
    CheckOptions, Designation, Valuation,
};
use medlat_core::poset::{enumerate_posets, max_antichain_size};
use medlat_core::{bn, parse, BrouwerAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn two_element_algebra_is_classical() {
    let two = BrouwerAlgebra::two();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let f = random_formula(&mut rng, 4, 6);
        let expect = truth_table_valid(&f);
        assert_eq!(is_valid(&f, &two).unwrap().valid, expect, "{f}");
        assert_eq!(classical_tautology(&f).unwrap(), expect, "{f}");
    }
}

#[test]
fn top_designation_breaks_calibration() {
    let two = BrouwerAlgebra::two();
    let strict = CheckOptions { designation: Designation::Top, ..CheckOptions::default() };
    let f = parse("p -> p").unwrap();
    assert!(truth_table_valid(&f));
    assert!(!is_valid_with(&f, &two, &strict).unwrap().valid);
}

#[test]
fn compiled_evaluation_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algebras = [(
        BrouwerAlgebra::from_poset(&medlat_core::poset::powerset_poset(2).unwrap()).unwrap(),
        SetAlgebra::new(NaivePoset::powerset(2)),
    )];
    for (a, o) in &algebras {
        for _ in 0..200 {
            let f = random_formula(&mut rng, 3, 5);
            let r = is_valid(&f, a).unwrap();
            let cm = first_countermodel(o, &f);
            assert_eq!(r.valid, cm.is_none(), "{f}");
            assert_eq!(r.countermodel.map(|c| c.labels), cm, "{f}");
        }
    }
    let chain = BrouwerAlgebra::chain(4).unwrap();
    for _ in 0..200 {
        let f = random_formula(&mut rng, 3, 5);
        let r = is_valid(&f, &chain).unwrap();
        assert_eq!(r.countermodel.map(|c| c.labels), first_countermodel(&IntChain(4), &f), "{f}");
    }
}

#[test]
fn reference_eval_agrees_with_oracle_pointwise() {
    let a = bn(2).unwrap();
    let o = SetAlgebra::new(NaivePoset::powerset(2));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let f = random_formula(&mut rng, 2, 5);
        let vars = f.variables();
        for x in 0..a.size() {
            for y in 0..a.size() {
                let assign: Vec<(String, usize)> = vars.iter().cloned().zip([x, y]).collect();
                let lib = eval(&f, &a, &Valuation::new(assign.clone())).unwrap();
                assert_eq!(lib, eval_oracle(&o, &f, &assign.into_iter().collect()));
            }
        }
    }
}

#[test]
fn theories_lie_inside_classical_logic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let formulas: Vec<_> = (0..60).map(|_| random_formula(&mut rng, 3, 5)).collect();
    for n in 1..=4 {
        for p in enumerate_posets(n).unwrap() {
            let a = BrouwerAlgebra::from_poset(&p).unwrap();
            for f in &formulas {
                if is_valid(f, &a).unwrap().valid {
                    assert!(truth_table_valid(f), "{f} valid in {} but not classically", p.name());
                }
            }
        }
    }
}

#[test]
fn antichain_law() {
    for n in 1..=4 {
        for p in enumerate_posets(n).unwrap() {
            let a = BrouwerAlgebra::from_poset(&p).unwrap();
            let w = max_antichain_size(a.order()).unwrap();
            let exact = a.is_meet_irreducible(a.bottom());
            for k in 2..=(w + 1).min(4) {
                let valid = is_valid(&antichain_formula(k).unwrap(), &a).unwrap().valid;
                if w < k {
                    assert!(valid, "{} k={k}", p.name());
                } else if exact {
                    assert!(!valid, "{} k={k}", p.name());
                }
            }
        }
    }
}

#[test]
fn countermodels_are_sound() {
    for name in ["jan", "lem", "lin", "sc_paper"] {
        let f = axiom(name).unwrap();
        let s = countermodel_search(&f, 5, &CheckOptions::default()).unwrap();
        let found = s.found.expect("refutable");
        let cm = found.report.countermodel.unwrap();
        let value = eval(&f, &found.algebra, &cm.valuation).unwrap();
        assert_ne!(value, found.algebra.bottom(), "{name}");
        assert_eq!(value, cm.value);
    }
    let s = countermodel_search(&parse("p -> p").unwrap(), 5, &CheckOptions::default()).unwrap();
    assert!(s.found.is_none());
}

#[test]
fn medvedev_levels() {
    let opts = CheckOptions::default();
    assert!(lm_member(&axiom("kp").unwrap(), 3, &opts).unwrap().member_up_to_level);
    let jan = lm_member(&axiom("jan").unwrap(), 3, &opts).unwrap();
    assert!(!jan.member_up_to_level);
    assert_eq!(jan.levels[0].report.as_ref().map(|r| r.valid), Some(true));
    assert_eq!(jan.levels[1].report.as_ref().map(|r| r.valid), Some(false));
}

#[test]
fn parallel_matches_sequential() {
    let a = bn(3).unwrap();
    let par = CheckOptions { parallel: true, ..CheckOptions::default() };
    for name in ["kp", "lin", "jan", "lem"] {
        let f = axiom(name).unwrap();
        let s = is_valid(&f, &a).unwrap();
        let p = is_valid_with(&f, &a, &par).unwrap();
        assert_eq!(s.valid, p.valid);
        assert_eq!(s.countermodel.map(|c| c.labels), p.countermodel.map(|c| c.labels));
        assert_eq!(s.valuations_checked, p.valuations_checked);
    }
}
