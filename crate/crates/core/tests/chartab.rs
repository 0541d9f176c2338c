use std::sync::Arc;

use charsheaf::chartab::*;
use charsheaf::exactnum::{Cyclotomic, Rational};
use charsheaf::groupkit::*;
use charsheaf::Cyclo;
use proptest::prelude::*;

fn group(family: Family, p: u32, k: u32, m: u32) -> FiniteGroup {
    build_group(&GroupSpec::new(family, p, k), m, DEFAULT_CAP).unwrap()
}

fn table(g: &FiniteGroup) -> CharacterTable<Rational> {
    character_table(g).unwrap()
}

fn sorted_degrees(t: &CharacterTable<Rational>) -> Vec<u64> {
    let mut d = t.degrees.clone();
    d.sort();
    d
}

/// Degrees of B(F_q) from Clifford theory over the abelianized unipotent
/// radical: linear characters, the two root-line orbits, the generic orbit(s)
/// and the Heisenberg characters.
fn borel_degrees(q: u64) -> Vec<u64> {
    let mut d = vec![1; ((q - 1) * (q - 1)) as usize];
    d.extend(std::iter::repeat_n(q - 1, 2 * (q - 1) as usize));
    if q % 3 == 1 {
        d.extend(std::iter::repeat_n((q - 1) * (q - 1) / 3, 9));
    } else {
        d.push((q - 1) * (q - 1));
    }
    d.extend(std::iter::repeat_n(q * (q - 1), (q - 1) as usize));
    d.sort();
    d
}

#[test]
fn cyclic_group_of_order_three() {
    let g = group(Family::SplitTorus(1), 2, 2, 1);
    let t = table(&g);
    assert_eq!(t.num_chars(), 3);
    for row in &t.values {
        for v in row {
            assert_eq!(v.pow(3), Cyclo::one());
        }
    }
    t.verify_columns().unwrap();
}

#[test]
fn borel_f2_degrees() {
    let t = table(&group(Family::BorelSl3, 2, 1, 1));
    assert_eq!(sorted_degrees(&t), vec![1, 1, 1, 1, 2]);
    assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
    assert!(t.values[0].iter().all(|v| *v == Cyclo::one()));
}

#[test]
fn borel_degrees_match_clifford_count() {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let q = (p as u64).pow(k);
        let g = group(Family::BorelSl3, p, k, 1);
        let t = table(&g);
        assert_eq!(sorted_degrees(&t), borel_degrees(q), "q = {q}");
        assert_eq!(t.num_chars(), g.num_classes());
        assert_eq!(t.sum_of_squares(), g.order() as u64);
        t.verify_columns().unwrap();
    }
}

#[test]
fn borel_f3_has_eleven_irreducibles() {
    let t = table(&group(Family::BorelSl3, 3, 1, 1));
    assert_eq!(t.num_chars(), 11);
    assert_eq!(sorted_degrees(&t), vec![1, 1, 1, 1, 2, 2, 2, 2, 4, 6, 6]);
}

#[test]
fn heisenberg_and_mu3_tables() {
    let h = group(Family::HeisenbergU3, 3, 1, 1);
    let t = table(&h);
    // q^2 linear characters and q - 1 of degree q
    assert_eq!(sorted_degrees(&t), [vec![1; 9], vec![3, 3]].concat());
    let g = group(Family::Mu3U3, 2, 2, 1);
    let t = table(&g);
    assert_eq!(t.sum_of_squares(), 192);
    t.verify_columns().unwrap();
}

#[test]
fn float_scalar_path_agrees() {
    let g = group(Family::BorelSl3, 3, 1, 1);
    let exact = table(&g);
    let approx: CharacterTable<f64> = character_table(&g).unwrap();
    assert_eq!(exact.degrees, approx.degrees);
    for (r1, r2) in exact.values.iter().zip(&approx.values) {
        for (a, b) in r1.iter().zip(r2) {
            let (x, y) = (a.approx(), b.approx());
            assert!((x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9);
        }
    }
}

#[test]
fn funspace_ops() {
    let g = Arc::new(group(Family::BorelSl3, 2, 1, 1));
    let fs: FunSpace<Rational> = FunSpace::single(g.clone()).unwrap();
    for (_, _, chi) in fs.irreps() {
        assert_eq!(fs.norm2(&chi).unwrap(), Cyclo::one());
        assert_eq!(fs.convolve(&fs.delta_identity(), &chi).unwrap(), chi);
    }
    // (1_U / q^3) * (1_U / q^3) = 1_U / q^3
    let u = named_subgroup(&g, "U").unwrap();
    let eighth = Cyclo::from_scalar(Rational::new(1, 8));
    let vals = (0..g.num_classes())
        .map(|c| if u.contains(&g.elems[g.rep(c) as usize]) { eighth.clone() } else { Cyclo::zero() })
        .collect();
    let e = fs.on_form(0, vals).unwrap();
    assert_eq!(fs.convolve(&e, &e).unwrap(), e);
}

#[test]
fn character_convolution() {
    let g = Arc::new(group(Family::BorelSl3, 3, 1, 1));
    let fs: FunSpace<Rational> = FunSpace::single(g.clone()).unwrap();
    let irr = fs.irreps();
    let t = &fs.forms[0].table;
    for (_, a, ca) in &irr {
        for (_, b, cb) in &irr {
            let conv = fs.convolve(ca, cb).unwrap();
            if a == b {
                let s = Cyclo::from_scalar(Rational::new(g.order() as i64, t.degrees[*a] as i64));
                assert_eq!(conv, fs.scale(ca, &s).unwrap());
            } else {
                assert!(conv.is_zero());
            }
        }
    }
}

#[test]
fn mismatched_spaces_rejected() {
    let g = Arc::new(group(Family::BorelSl3, 2, 1, 1));
    let a: FunSpace<Rational> = FunSpace::single(g.clone()).unwrap();
    let b: FunSpace<Rational> = FunSpace::single(g).unwrap();
    assert!(matches!(a.inner(&a.delta_identity(), &b.delta_identity()), Err(ChartabError::Mismatch(_))));
}

#[test]
fn irreps_over_all_forms() {
    let spec = GroupSpec::new(Family::TorusZ2, 3, 1);
    let fs: FunSpace<Rational> = FunSpace::from_forms(pure_inner_forms(&spec, DEFAULT_CAP).unwrap()).unwrap();
    assert_eq!(fs.num_forms(), 2);
    let irr = fs.irreps();
    assert_eq!(irr.len(), fs.dim());
    for (i, (_, _, f)) in irr.iter().enumerate() {
        for (j, (_, _, g)) in irr.iter().enumerate() {
            let expect = if i == j { Cyclo::one() } else { Cyclo::zero() };
            assert_eq!(fs.inner(f, g).unwrap(), expect);
        }
    }
    let b4: FunSpace<Rational> = FunSpace::single(Arc::new(group(Family::BorelSl3, 2, 2, 1))).unwrap();
    assert_eq!(b4.irreps().len(), 27);
}

#[test]
fn extension_to_s3() {
    let g2 = group(Family::SplitTorus(1), 2, 1, 2);
    let gamma = frobenius_semidirect(&g2, 2);
    let (t2, tg) = (table(&g2), table(&gamma));
    assert_eq!(sorted_degrees(&tg), vec![1, 1, 2]);
    // only the trivial character of F_4^* is F-stable
    let stable: Vec<usize> = (0..3).filter(|&w| is_f_stable(&g2, &t2, w)).collect();
    assert_eq!(stable, vec![0]);
    assert!(matches!(extend_f_stable(&g2, &t2, &gamma, &tg, 1, 2), Err(ChartabError::NotFStable(1))));
    let ext = extend_f_stable(&g2, &t2, &gamma, &tg, 0, 2).unwrap();
    for x in 0..3 {
        assert_eq!(*ext.value_at(&gamma, &tg, x), Cyclo::one());
    }
}

#[test]
fn extension_with_m_one_is_identity() {
    let g = group(Family::BorelSl3, 2, 1, 1);
    let gamma = frobenius_semidirect(&g, 1);
    let (t, tg) = (table(&g), table(&gamma));
    for w in 0..t.num_chars() {
        let ext = extend_f_stable(&g, &t, &gamma, &tg, w, 1).unwrap();
        for c in 0..g.num_classes() {
            assert_eq!(*ext.value_at(&gamma, &tg, g.rep(c)), t.values[w][c]);
        }
    }
}

#[test]
fn borel_f4_stable_characters_extend() {
    let g = group(Family::BorelSl3, 2, 1, 2);
    let gamma = frobenius_semidirect(&g, 2);
    let (t, tg) = (table(&g), table(&gamma));
    let stable: Vec<usize> = (0..t.num_chars()).filter(|&w| is_f_stable(&g, &t, w)).collect();
    // F-stable irreducibles of B(F_4) are as many as classes of B(F_2)
    assert_eq!(stable.len(), 5);
    for w in stable {
        extend_f_stable(&g, &t, &gamma, &tg, w, 2).unwrap();
    }
}

fn small_vals(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frobenius_reciprocity(sub in 0usize..4, vals in small_vals(64), chi in 0usize..29) {
        let g = group(Family::BorelSl3, 5, 1, 1);
        let name = ["T", "U", "T13H", "T12U"][sub];
        let h = named_subgroup(&g, name).unwrap();
        let (tg, th) = (table(&g), table(&h));
        let psi: Vec<Cyclo> = (0..h.num_classes()).map(|c| Cyclo::from_int(vals[c % vals.len()])).collect();
        let ind = induce(&psi, &h, &g);
        let res = restrict(&tg.values[chi], &g, &h);
        prop_assert_eq!(tg.inner(&ind, &tg.values[chi]), th.inner(&psi, &res));
    }

    #[test]
    fn convolution_identity_at_one(a in 0usize..11, b in 0usize..11) {
        let g = Arc::new(group(Family::BorelSl3, 3, 1, 1));
        let fs: FunSpace<Rational> = FunSpace::single(g.clone()).unwrap();
        let conv = fs.convolve(&fs.character(0, a), &fs.character(0, b)).unwrap();
        let expect = if a == b { g.order() as i64 } else { 0 };
        prop_assert_eq!(conv.values(0)[0].clone(), Cyclotomic::from_int(expect));
    }
}
