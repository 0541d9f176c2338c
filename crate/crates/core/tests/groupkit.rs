use charsheaf::groupkit::*;
use proptest::prelude::*;

fn borel(p: u32, k: u32, m: u32) -> FiniteGroup {
    build_group(&GroupSpec::new(Family::BorelSl3, p, k), m, DEFAULT_CAP).unwrap()
}

fn class_equation(g: &FiniteGroup) {
    assert_eq!(g.class_sizes().iter().sum::<u64>(), g.order() as u64);
    for c in 0..g.num_classes() {
        assert_eq!(g.class_sizes()[c] * g.centralizer_order(c), g.order() as u64);
    }
    assert_eq!(g.class_of(0), 0);
    assert_eq!(g.class_sizes()[0], 1);
}

#[test]
fn borel_f2() {
    let g = borel(2, 1, 1);
    assert_eq!(g.order(), 8);
    assert_eq!(g.num_classes(), 5);
    class_equation(&g);
}

#[test]
fn borel_f3_and_f4() {
    let g3 = borel(3, 1, 1);
    assert_eq!(g3.order(), 4 * 27);
    assert_eq!(g3.num_classes(), 11);
    let g4 = borel(2, 2, 1);
    assert_eq!(g4.order(), 576);
    assert_eq!(g4.num_classes(), 27);
    class_equation(&g4);
}

#[test]
fn orders_match_formula() {
    let specs = [
        (GroupSpec::new(Family::BorelSl3, 2, 1), 2),
        (GroupSpec::new(Family::BorelSl3, 5, 1), 1),
        (GroupSpec::new(Family::SplitTorus(2), 3, 1), 2),
        (GroupSpec::new(Family::HeisenbergU3, 3, 1), 1),
        (GroupSpec::new(Family::Mu3U3, 2, 1), 1),
        (GroupSpec::new(Family::Mu3U3, 2, 1), 2),
        (GroupSpec::new(Family::TorusZ2, 5, 1), 1),
    ];
    for (s, m) in specs {
        let g = build_group(&s, m, DEFAULT_CAP).unwrap();
        assert_eq!(g.order() as u64, s.order_formula(m), "{s:?} m={m}");
        class_equation(&g);
    }
}

#[test]
fn split_torus_over_f4() {
    let g = build_group(&GroupSpec::new(Family::SplitTorus(1), 2, 1), 2, DEFAULT_CAP).unwrap();
    assert_eq!(g.order(), 3);
    // abelian: singleton classes
    assert_eq!(g.num_classes(), 3);
}

#[test]
fn cap_error_reports_order() {
    let s = GroupSpec::new(Family::BorelSl3, 2, 3);
    assert_eq!(build_group(&s, 2, DEFAULT_CAP).unwrap_err(), GroupError::TooLarge {
        order: 63 * 63 * 262144,
        cap: DEFAULT_CAP
    });
}

#[test]
fn named_borel_subgroups() {
    let g = borel(2, 2, 1);
    let expect = [
        ("T", 9),
        ("U", 64),
        ("Z", 4),
        ("H", 16),
        ("T12", 3),
        ("T23", 3),
        ("T13", 3),
        ("mu3", 3),
        ("T12U", 192),
        ("T13H", 48),
    ];
    for (name, n) in expect {
        assert_eq!(named_subgroup(&g, name).unwrap().order(), n, "{name}");
    }
    assert!(named_subgroup(&g, "X").is_err());
    // over F_2 there is no nontrivial cube root of unity
    assert_eq!(named_subgroup(&borel(2, 1, 1), "mu3").unwrap().order(), 1);
}

#[test]
fn connected_borel_has_one_form() {
    let forms = pure_inner_forms(&GroupSpec::new(Family::BorelSl3, 3, 1), DEFAULT_CAP).unwrap();
    assert_eq!(forms.len(), 1);
    assert_eq!(forms[0].group.order(), 108);
}

#[test]
fn torus_z2_forms_over_f3() {
    let spec = GroupSpec::new(Family::TorusZ2, 3, 1);
    let forms = pure_inner_forms(&spec, DEFAULT_CAP).unwrap();
    assert_eq!(forms.len(), 2);
    let torus_part = |f: &PureInnerForm| f.group.elems.iter().filter(|e| e[1] == 0).count();
    assert_eq!(torus_part(&forms[0]), 2);
    assert_eq!(torus_part(&forms[1]), 4);
    for f in &forms {
        for x in &f.group.elems {
            assert_eq!(f.frob(x), *x);
        }
    }
}

#[test]
fn mu3_twisted_classes() {
    assert_eq!(component_h1(&GroupSpec::new(Family::Mu3U3, 2, 1)), vec![0]);
    assert_eq!(component_h1(&GroupSpec::new(Family::Mu3U3, 2, 2)), vec![0, 1, 2]);
    let forms = pure_inner_forms(&GroupSpec::new(Family::Mu3U3, 2, 2), DEFAULT_CAP).unwrap();
    assert!(forms.iter().all(|f| f.group.order() == 3 * 64));
}

#[test]
fn twisted_identity_class_contains_lang_images() {
    let spec = GroupSpec::new(Family::BorelSl3, 2, 1);
    let g = build_group(&spec, 2, DEFAULT_CAP).unwrap();
    let (tw, _) = twisted_classes_and_forms(&spec, &g, DEFAULT_CAP).unwrap();
    assert_eq!(tw.sizes.iter().sum::<u64>(), g.order() as u64);
    for x in &g.elems {
        let y = g.amb.mul(x, &g.amb.inv(&g.amb.frob(x, 1)));
        assert_eq!(tw.of[g.idx(&y) as usize], tw.of[0]);
    }
}

#[test]
fn torus_norm_lands_in_trivial_group() {
    let spec = GroupSpec::new(Family::SplitTorus(1), 2, 1);
    let g2 = build_group(&spec, 2, DEFAULT_CAP).unwrap();
    let g1 = build_group(&spec, 1, DEFAULT_CAP).unwrap();
    let mut tower = charsheaf::ffield::FieldTower::new(2, &[1, 2]).unwrap();
    for x in &g2.elems {
        assert_eq!(norm_of(&spec, x, 2, &mut tower).unwrap(), g1.elems[0]);
    }
}

#[test]
fn norm_of_identity_is_identity() {
    for (spec, m) in [
        (GroupSpec::new(Family::BorelSl3, 2, 1), 3),
        (GroupSpec::new(Family::HeisenbergU3, 3, 1), 2),
        (GroupSpec::new(Family::SplitTorus(2), 3, 1), 2),
    ] {
        let mut tower = charsheaf::ffield::FieldTower::new(spec.p, &[spec.k * m]).unwrap();
        let id = spec.ambient(m).unwrap().identity();
        assert_eq!(norm_of(&spec, &id, m, &mut tower).unwrap(), id);
    }
}

#[test]
fn torus_norm_kernel_count() {
    // |T^{F^2}| = |T^F|·|{s : s·F(s) = 1}| for q = 3
    let spec = GroupSpec::new(Family::SplitTorus(1), 3, 1);
    let g2 = build_group(&spec, 2, DEFAULT_CAP).unwrap();
    let g1 = build_group(&spec, 1, DEFAULT_CAP).unwrap();
    let f = &g2.amb;
    let sfs = g2.elems.iter().filter(|s| f.mul(s, &f.frob(s, 1)) == f.identity()).count();
    assert_eq!(sfs, 4);
    assert_eq!(g2.order(), g1.order() * sfs);
    let mut tower = charsheaf::ffield::FieldTower::new(3, &[1, 2]).unwrap();
    let kernel = g2.elems.iter().filter(|x| norm_of(&spec, x, 2, &mut tower).unwrap() == g1.elems[0]).count();
    assert_eq!(kernel, sfs);
}

#[test]
fn norm_map_is_bijective_on_shipped_examples() {
    let cases = [
        (GroupSpec::new(Family::SplitTorus(1), 2, 1), vec![1, 2, 3, 4, 5, 6]),
        (GroupSpec::new(Family::SplitTorus(1), 3, 1), vec![1, 2, 3, 4, 5, 6]),
        (GroupSpec::new(Family::BorelSl3, 2, 1), vec![1, 2, 3]),
        (GroupSpec::new(Family::HeisenbergU3, 2, 1), vec![2]),
    ];
    for (spec, ms) in cases {
        let g1 = build_group(&spec, 1, DEFAULT_CAP).unwrap();
        for m in ms {
            let gm = build_group(&spec, m, DEFAULT_CAP).unwrap();
            let n = norm_map(&spec, &gm, &g1, m).unwrap();
            assert!(n.well_defined, "{spec:?} m={m}");
            assert!(n.is_bijective(), "{spec:?} m={m}");
        }
    }
}

#[test]
fn norm_rejects_disconnected() {
    let spec = GroupSpec::new(Family::TorusZ2, 3, 1);
    let g = build_group(&spec, 2, DEFAULT_CAP).unwrap();
    let mut tower = charsheaf::ffield::FieldTower::new(3, &[2]).unwrap();
    assert!(norm_of(&spec, &g.elems[0], 2, &mut tower).is_err());
}

#[test]
fn semidirect_product() {
    let spec = GroupSpec::new(Family::SplitTorus(1), 2, 1);
    let g2 = build_group(&spec, 2, DEFAULT_CAP).unwrap();
    let gamma = frobenius_semidirect(&g2, 2);
    assert_eq!(gamma.order(), 6);
    // S_3 has 3 classes
    assert_eq!(gamma.num_classes(), 3);

    let g = build_group(&GroupSpec::new(Family::BorelSl3, 2, 1), 2, DEFAULT_CAP).unwrap();
    let gamma = frobenius_semidirect(&g, 2);
    let a = &gamma.amb;
    let mut sigma = a.identity();
    sigma[CYCLIC_SLOT] = 1;
    for x in &g.elems {
        let lhs = a.conj(&sigma, x);
        assert_eq!(lhs, g.amb.frob(x, 1));
    }
    let g1 = frobenius_semidirect(&borel(2, 1, 1), 1);
    assert_eq!(g1.num_classes(), 5);
}

proptest! {
    #[test]
    fn borel_f3_group_axioms(x in 0u32..108, y in 0u32..108, z in 0u32..108) {
        let g = borel(3, 1, 1);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        prop_assert_eq!(g.mul(0, x), x);
    }

    #[test]
    fn frobenius_is_automorphism(x in 0u32..576, y in 0u32..576) {
        let g = borel(2, 1, 2);
        let a = &g.amb;
        let (ex, ey) = (g.elems[x as usize], g.elems[y as usize]);
        prop_assert_eq!(a.frob(&a.mul(&ex, &ey), 1), a.mul(&a.frob(&ex, 1), &a.frob(&ey, 1)));
        prop_assert!(g.contains(&a.frob(&ex, 1)));
    }
}
