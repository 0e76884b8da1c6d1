use tetra::finrack::*;
use tetra::Error;

fn s3() -> FinGroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let ix = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut mul = Vec::new();
    for a in &perms {
        for b in &perms {
            mul.push(ix([a[b[0]], a[b[1]], a[b[2]]]));
        }
    }
    FinGroup { names: (0..6).map(|i| format!("s{i}")).collect(), mul }
}

fn trivial_group() -> FinGroup {
    FinGroup::cyclic(1, "1")
}

fn z2z3_two_group() -> Strict2Group {
    two_group_from_crossed_module(&z2_z3_crossed_module()).unwrap()
}

#[test]
fn one_object_trivial_rack() {
    let x = FinCat::discrete(vec!["*".into()]);
    let lhd = FinBifunctor { obj: vec![0], mor: vec![0] };
    assert!(check_strict_2rack(&x, &lhd).passed());
    assert!(check_semistrict_2rack(&x, &lhd, &[0], &lhd).passed());
}

#[test]
fn z2_z3_crossed_module_laws_by_hand() {
    let cm = z2_z3_crossed_module();
    assert!(cm.check().passed());
    // inversion is an automorphism of Z/3 and squares to the identity
    for h in 0..3 {
        assert_eq!(cm.act(0, h), h);
        assert_eq!(cm.act(1, h), (3 - h) % 3);
        assert_eq!(cm.act(1, cm.act(1, h)), h);
        for h2 in 0..3 {
            assert_eq!(cm.act(1, (h + h2) % 3), (cm.act(1, h) + cm.act(1, h2)) % 3);
            // trivial boundary: Peiffer says H is abelian
            assert_eq!((h + h2) % 3, (h2 + h) % 3);
        }
    }
    let g2 = z2z3_two_group();
    assert_eq!(g2.cat.n_obj(), 2);
    assert_eq!(g2.cat.n_mor(), 6);
    assert!(g2.check().passed());
    for f in 0..6 {
        assert_eq!(g2.cat.src[f], g2.cat.tgt[f]);
    }
}

#[test]
fn degenerate_crossed_modules() {
    let g = s3();
    assert!(g.is_group());
    let discrete = CrossedModule { g: g.clone(), h: trivial_group(), boundary: vec![0], action: vec![0; 6] };
    let g2 = two_group_from_crossed_module(&discrete).unwrap();
    assert_eq!(g2.cat.n_mor(), 6);
    assert_eq!(g2.cat.id, (0..6).collect::<Vec<_>>());

    let z3 = FinGroup::cyclic(3, "h");
    let one = CrossedModule { g: trivial_group(), h: z3, boundary: vec![0; 3], action: vec![0, 1, 2] };
    let g2 = two_group_from_crossed_module(&one).unwrap();
    assert_eq!((g2.cat.n_obj(), g2.cat.n_mor()), (1, 3));

    let nonabelian = CrossedModule { g: trivial_group(), h: s3(), boundary: vec![0; 6], action: (0..6).collect() };
    assert_eq!(nonabelian.check().flag("peiffer"), Some(false));
    assert!(matches!(two_group_from_crossed_module(&nonabelian), Err(Error::Structure(_))));
}

#[test]
fn left_translation_conjugation_is_strict() {
    let g2 = z2z3_two_group();
    let (x, act) = left_translation(&g2);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    assert_eq!((p.n_obj(), p.n_mor()), (4, 36));
    let rep = check_strict_2rack(&p, &lhd);
    assert!(rep.passed(), "{:?}", rep.failed_flags());
    assert_eq!(rep.flag("rack_objects"), Some(true));
    assert_eq!(rep.flag("rack_morphisms"), Some(true));
    let inv = derived_inverse(&p, &lhd).unwrap();
    let no = p.n_obj();
    let ids: Vec<usize> = (0..no * no * no)
        .map(|k| p.id[lhd.on_obj(&p, lhd.on_obj(&p, k / (no * no), (k / no) % no), k % no)])
        .collect();
    assert!(check_semistrict_2rack(&p, &lhd, &ids, &inv).passed());
}

#[test]
fn conjugation_on_objects_matches_group_conjugation() {
    let g2 = z2z3_two_group();
    let (x, act) = left_translation(&g2);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    let xor = |a: usize, b: usize| a ^ b;
    for g in 0..2 {
        for xx in 0..2 {
            for h in 0..2 {
                for y in 0..2 {
                    // h g h⁻¹ in Z/2 is g, h acts on x by translation
                    let expect = xor(xor(h, g), h) * 2 + xor(h, xx);
                    assert_eq!(lhd.on_obj(&p, g * 2 + xx, h * 2 + y), expect);
                }
            }
        }
    }

    // a nonabelian object group: S3 acting on itself
    let g2 = two_group_from_crossed_module(&CrossedModule {
        g: s3(),
        h: trivial_group(),
        boundary: vec![0],
        action: vec![0; 6],
    })
    .unwrap();
    let grp = s3();
    let (x, act) = left_translation(&g2);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    for u in 0..36 {
        for v in 0..36 {
            let (g, xx, h) = (u / 6, u % 6, v / 6);
            let conj = grp.op(grp.op(h, g), grp.inv(h));
            assert_eq!(lhd.on_obj(&p, u, v), conj * 6 + grp.op(h, xx));
        }
    }
    assert!(check_strict_2rack(&p, &lhd).passed());
}

#[test]
fn trivial_two_group_gives_projection_rack() {
    let g2 = two_group_from_crossed_module(&CrossedModule {
        g: trivial_group(),
        h: trivial_group(),
        boundary: vec![0],
        action: vec![0],
    })
    .unwrap();
    let x = FinCat::discrete(vec!["a".into(), "b".into(), "c".into()]);
    let act = FinAction { obj: vec![0, 1, 2], mor: vec![0, 1, 2] };
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    for u in 0..3 {
        for v in 0..3 {
            assert_eq!(lhd.on_obj(&p, u, v), u);
            assert_eq!(lhd.on_mor(&p, u, v), u);
        }
    }
    assert!(check_strict_2rack(&p, &lhd).passed());
}

#[test]
fn discrete_conjugation_rack_of_s3() {
    let g = s3();
    let x = FinCat::discrete(g.names.clone());
    let op: Vec<usize> = (0..36).map(|k| g.op(g.op(k % 6, k / 6), g.inv(k % 6))).collect();
    let lhd = FinBifunctor { obj: op.clone(), mor: op };
    let rep = check_strict_2rack(&x, &lhd);
    assert!(rep.passed(), "{:?}", rep.failed_flags());

    // a ◁ b = b is self-distributive but not invertible
    let proj: Vec<usize> = (0..36).map(|k| k % 6).collect();
    let rep = check_strict_2rack(&x, &FinBifunctor { obj: proj.clone(), mor: proj });
    assert_eq!(rep.flag("invertible"), Some(false));
    assert_eq!(rep.flag("rack_objects"), Some(false));
}

#[test]
fn mutation_breaks_functoriality() {
    let g2 = z2z3_two_group();
    let (x, act) = left_translation(&g2);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    let nm = p.n_mor();
    let mut broken = 0;
    for cell in [7, 100, 555, 1200] {
        let mut bad = lhd.clone();
        let old = bad.mor[cell];
        bad.mor[cell] = (0..nm).find(|&f| p.src[f] != p.src[old]).unwrap();
        let rep = check_strict_2rack(&p, &bad);
        let functor = rep.failed_flags().iter().any(|f| f.starts_with("functor_"));
        assert!(functor, "{:?}", rep.failed_flags());
        assert!(rep.violations.len() > 1);
        broken += 1;
    }
    assert_eq!(broken, 4);
}

#[test]
fn semistrict_distributor_errors() {
    let g2 = z2z3_two_group();
    let (x, act) = left_translation(&g2);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    let inv = derived_inverse(&p, &lhd).unwrap();
    let no = p.n_obj();
    let mut r: Vec<usize> = (0..no * no * no)
        .map(|k| p.id[lhd.on_obj(&p, lhd.on_obj(&p, k / (no * no), (k / no) % no), k % no)])
        .collect();
    // a non-identity automorphism of the right object: still well-typed, not natural
    let target = r[5];
    let twist = (0..p.n_mor()).find(|&f| f != target && p.src[f] == p.src[target] && p.tgt[f] == p.tgt[target]).unwrap();
    r[5] = twist;
    let rep = check_semistrict_2rack(&p, &lhd, &r, &inv);
    assert_eq!(rep.flag("R_source_target"), Some(true));
    assert!(!rep.passed());

    r[5] = p.id[(p.src[target] + 1) % no];
    assert_eq!(check_semistrict_2rack(&p, &lhd, &r, &inv).flag("R_source_target"), Some(false));
    assert_eq!(check_semistrict_2rack(&p, &lhd, &r[..3], &inv).flag("R_source_target"), Some(false));

    let mut wrong_inv = inv.clone();
    wrong_inv.obj[0] = (wrong_inv.obj[0] + 1) % no;
    assert_eq!(check_semistrict_2rack(&p, &lhd, &vec![0; no * no * no], &wrong_inv).flag("invertible"), Some(false));
}

#[test]
fn action_law_violations_are_named() {
    let g2 = z2z3_two_group();
    let x = FinCat::discrete(vec!["a".into(), "b".into()]);
    // the generator of Z/2 swaps a and b on objects but morphisms are left alone
    let act = FinAction { obj: vec![0, 1, 1, 0], mor: (0..12).map(|k| k % 2).collect() };
    match conjugation_rack(&g2, &x, &act) {
        Err(Error::Input(msg)) => assert!(msg.contains("g1") || msg.contains("(g1,"), "{msg}"),
        other => panic!("{other:?}"),
    }
    // constant action is not multiplicative on a nontrivial group
    let act = FinAction { obj: vec![1, 1, 1, 1], mor: vec![1; 12] };
    assert!(matches!(conjugation_rack(&g2, &x, &act), Err(Error::Input(_))));
    let ok = FinAction { obj: vec![0, 1, 1, 0], mor: (0..12).map(|k| if (k / 2) / 3 == 0 { k % 2 } else { 1 - k % 2 }).collect() };
    let (p, lhd) = conjugation_rack(&g2, &x, &ok).unwrap();
    assert!(check_strict_2rack(&p, &lhd).passed());
}

#[test]
fn json_round_trips() {
    let cm = z2_z3_crossed_module();
    assert_eq!(CrossedModule::from_json(&cm.to_json()).unwrap(), cm);
    let g2 = z2z3_two_group();
    assert_eq!(Strict2Group::from_json(&g2.to_json()).unwrap(), g2);
    let (x, act) = left_translation(&g2);
    assert_eq!(FinAction::from_json(&g2, &x, &act.to_json(&g2, &x)).unwrap(), act);
    let (p, lhd) = conjugation_rack(&g2, &x, &act).unwrap();
    let rack = FinRack::strict(p.clone(), lhd.clone());
    let back = FinRack::from_json(&rack.to_json()).unwrap();
    assert_eq!(back, rack);
    assert!(back.check().passed());
    let semi = FinRack { lhd_inv: derived_inverse(&p, &lhd), r: Some(vec![p.id[0]; 64]), ..rack };
    let back = FinRack::from_json(&semi.to_json()).unwrap();
    assert_eq!(back, semi);
    assert_eq!(back.check().flag("R_source_target"), Some(false));
    assert!(FinCat::from_json(&serde_json::json!({"objects": ["a", "a"]})).is_err());
}
