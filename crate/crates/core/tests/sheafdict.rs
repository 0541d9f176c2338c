use charsheaf::groupkit::{Family, GroupSpec, DEFAULT_CAP};
use charsheaf::sheafdict::*;
use charsheaf::{Cyclo, Rational};

fn setting(family: Family, p: u32, k: u32) -> Setting {
    Setting::new(GroupSpec::new(family, p, k), 1, DEFAULT_CAP).unwrap()
}

fn case(n: usize) -> AdmissiblePairSpec {
    borel_pairs()[n - 1].clone()
}

fn r(n: i64, d: i64) -> Cyclo {
    Cyclo::from_scalar(Rational::new(n, d))
}

#[test]
fn case1_on_b_f2_is_the_scaled_indicator_of_u() {
    let st = setting(Family::BorelSl3, 2, 1);
    let te = idempotent_function(&st, &case(1)).unwrap();
    let g = st.group(0);
    let u = st.subgroup(0, "U").unwrap();
    for c in 0..g.num_classes() {
        let rep = &g.elems[g.rep(c) as usize];
        let want = if u.contains(rep) { r(1, 8) } else { Cyclo::zero() };
        assert_eq!(te.f.comps[0][c], want, "class {c}");
    }
}

#[test]
fn case5_idempotent_at_q2_and_q3() {
    for p in [2, 3] {
        let st = setting(Family::BorelSl3, p, 1);
        let te = idempotent_function(&st, &case(5)).unwrap();
        assert_eq!(st.space.convolve(&te.f, &te.f).unwrap(), te.f);
        assert!(te.f.comps[0][0].as_scalar().unwrap().is_positive());
        // Z is normal, so the induced function stays on Z
        let g = st.group(0);
        let z = st.subgroup(0, "Z").unwrap();
        for c in 0..g.num_classes() {
            if !te.f.comps[0][c].is_zero() {
                let rep = &g.elems[g.rep(c) as usize];
                assert!(z.contains(rep));
            }
        }
    }
}

#[test]
fn trivial_pair_gives_delta() {
    for family in [Family::BorelSl3, Family::SplitTorus(1), Family::TorusZ2] {
        let st = setting(family, 3, 1);
        let te = idempotent_function(&st, &AdmissiblePairSpec::trivial(family)).unwrap();
        assert_eq!(te.f, st.space.delta_identity(), "{family:?}");
    }
}

#[test]
fn torus_trivial_parameter_averages() {
    for (p, k) in [(2, 2), (5, 1), (7, 1)] {
        let st = setting(Family::SplitTorus(1), p, k);
        let pair = AdmissiblePairSpec::trivial(Family::SplitTorus(1));
        let pk = packet_idempotent(&st, &pair, &LParam::trivial(1)).unwrap();
        let n = st.group(0).order() as i64;
        assert!(pk.f.comps[0].iter().all(|v| *v == r(1, n)));
    }
}

#[test]
fn case5_packets_on_b_f4() {
    let st = setting(Family::BorelSl3, 2, 2);
    let pair = case(5);
    let te = idempotent_function(&st, &pair).unwrap();
    let params = packet_parameters(&st, &pair).unwrap();
    assert_eq!(params.len(), 3);
    let ids: Vec<_> = params.iter().map(|x| packet_idempotent(&st, &pair, x).unwrap()).collect();
    let mut sum = st.space.zero();
    for (i, a) in ids.iter().enumerate() {
        for (j, b) in ids.iter().enumerate() {
            let prod = st.space.convolve(&a.f, &b.f).unwrap();
            if i == j {
                assert_eq!(prod, a.f);
            } else {
                assert!(prod.is_zero());
            }
        }
        sum = st.space.add(&sum, &a.f).unwrap();
    }
    assert_eq!(sum, te.f);
}

#[test]
fn packets_sum_to_block_for_every_borel_case() {
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let st = setting(Family::BorelSl3, p, k);
        for pair in borel_pairs() {
            let te = idempotent_function(&st, &pair).unwrap();
            let mut sum = st.space.zero();
            for x in packet_parameters(&st, &pair).unwrap() {
                let pk = packet_idempotent(&st, &pair, &x).unwrap();
                assert_eq!(st.space.convolve(&pk.f, &pk.f).unwrap(), pk.f, "{} {}", pair.name, x.describe());
                sum = st.space.add(&sum, &pk.f).unwrap();
            }
            assert_eq!(sum, te.f, "q = {}^{k}, {}", p, pair.name);
        }
    }
}

#[test]
fn torus_trace_function_is_the_character() {
    let st = setting(Family::SplitTorus(1), 5, 1);
    let pair = AdmissiblePairSpec::trivial(Family::SplitTorus(1));
    let table = &st.space.forms[0].table;
    for x in packet_parameters(&st, &pair).unwrap() {
        let tf = packet_trace_functions(&st, &pair, &x).unwrap();
        assert_eq!(tf.len(), 1);
        assert_eq!(st.space.norm2(&tf[0].f).unwrap(), Cyclo::one());
        assert!(table.find(&tf[0].f.comps[0]).is_some(), "{}", x.describe());
    }
}

fn assert_orthonormal(st: &Setting, fs: &[TraceFunction]) {
    for (i, a) in fs.iter().enumerate() {
        for (j, b) in fs.iter().enumerate() {
            let want = if i == j { Cyclo::one() } else { Cyclo::zero() };
            assert_eq!(st.space.inner(&a.f, &b.f).unwrap(), want, "{} vs {}", a.tag, b.tag);
        }
    }
}

#[test]
fn case4_trace_functions() {
    let st = setting(Family::BorelSl3, 2, 2);
    let x = LParam::trivial(0);
    let tf = packet_trace_functions(&st, &case(4), &x).unwrap();
    assert_eq!(tf.len(), 9);
    assert_orthonormal(&st, &tf);
    // each lies in the packet subspace
    let pk = packet_idempotent(&st, &case(4), &x).unwrap();
    for t in &tf {
        assert_eq!(st.space.convolve(&pk.f, &t.f).unwrap(), t.f);
    }

    let st2 = setting(Family::BorelSl3, 2, 1);
    let tf2 = packet_trace_functions(&st2, &case(4), &x).unwrap();
    assert_eq!(tf2.len(), 1);
    assert_eq!(packet_datum(&st2, &case(4), &x).unwrap().fixed.len(), 1);
}

#[test]
fn mu3_family_trace_functions_over_three_forms() {
    let st = setting(Family::Mu3U3, 7, 1);
    assert_eq!(st.num_forms(), 3);
    let pairs = shipped_pairs(Family::Mu3U3, 7);
    let pair = pairs.iter().find(|p| p.name == "lin(1,1)").unwrap();
    let tf = packet_trace_functions(&st, pair, &LParam::trivial(0)).unwrap();
    assert_eq!(tf.len(), 9);
    assert_orthonormal(&st, &tf);
}

#[test]
fn torus_z2_trace_functions() {
    let st = setting(Family::TorusZ2, 3, 1);
    let pair = AdmissiblePairSpec::trivial(Family::TorusZ2);
    let params = packet_parameters(&st, &pair).unwrap();
    assert_eq!(params.len(), 3);
    let mut total = 0;
    for x in &params {
        let tf = packet_trace_functions(&st, &pair, x).unwrap();
        assert_eq!(tf.len(), packet_datum(&st, &pair, x).unwrap().fixed.len());
        assert_orthonormal(&st, &tf);
        total += tf.len();
    }
    // 4 + 4 + 1
    assert_eq!(total, 9);
}

#[test]
fn torus_character_data_examples() {
    let st = setting(Family::SplitTorus(1), 2, 2);
    let ts = TorusSpec { label: "T".into(), slots: vec![0] };
    let d = torus_character_data(&st, Some(&ts), ComponentKind::Trivial).unwrap();
    assert_eq!(d.chars.len(), 3);
    assert_eq!(d.orbits.len(), 3);
    assert!(d.f_stable.iter().all(|&s| s));

    let st = setting(Family::TorusZ2, 3, 1);
    let d = torus_character_data(&st, Some(&ts), ComponentKind::Z2).unwrap();
    assert_eq!(d.chars.len(), 2 + 4);
    assert_eq!(d.orbits.len(), 3);

    let d = torus_character_data(&st, None, ComponentKind::Trivial).unwrap();
    assert_eq!(d.orbits.len(), 1);
}

#[test]
fn non_homomorphism_rejected() {
    let st = setting(Family::BorelSl3, 2, 1);
    let mut bad = case(1);
    bad.datum = CharDatum::additive(&[(2, 1)]);
    bad.name = "c-on-U".into();
    assert!(matches!(idempotent_function(&st, &bad), Err(DictError::NotHomomorphism { .. })));
}

#[test]
fn non_invariant_rejected() {
    let st = setting(Family::BorelSl3, 3, 1);
    let mut bad = case(2);
    bad.normalizer = "B".into();
    assert!(matches!(idempotent_function(&st, &bad), Err(DictError::NotInvariant { .. })));
}

#[test]
fn parameter_outside_every_torus_rejected() {
    let st = setting(Family::SplitTorus(1), 5, 1);
    let pair = AdmissiblePairSpec::trivial(Family::SplitTorus(1));
    let x = LParam(vec![Rational::new(1, 3)]);
    assert!(matches!(packet_idempotent(&st, &pair, &x), Err(DictError::NotFStable(_))));
}

#[test]
fn block_invariants() {
    let b = Family::BorelSl3;
    assert_eq!(pair_dims(b, &case(5)).unwrap(), (0, 1, 4));
    assert_eq!(pair_dims(b, &case(1)).unwrap(), (3, 2, 0));
    assert_eq!(pair_dims(b, &case(4)).unwrap(), (1, 0, 4));
    let t = Family::SplitTorus(2);
    assert_eq!(pair_dims(t, &AdmissiblePairSpec::trivial(t)).unwrap(), (0, 2, 0));
}
