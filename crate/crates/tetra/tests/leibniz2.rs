mod common;

use common::*;
use proptest::prelude::*;
use tetra::forge::{fix_a, fix_b, fix_c, fix_e, sample_leibniz2};
use tetra::leibniz2::*;
use tetra::ratmat::*;
use tetra::twovec::*;
use tetra::Error;

fn flat(n: usize, entries: &[(usize, usize, usize, i64)]) -> FlatLeibniz {
    FlatLeibniz::new(Mat::from_triplets(n, n * n, entries.iter().map(|&(k, i, j, v)| (k, i * n + j, Rat::int(v))))).unwrap()
}

#[test]
fn fix_a_is_central_leibniz() {
    let (g, e) = fix_a();
    assert!(brute_leibniz(&constants(&g.bracket, 2)));
    assert!(g.is_leibniz());
    assert!(g.is_central(&e));
    assert!(!g.is_central(&basis(2, 0)));
    assert!(g.is_central(&[Rat::zero(), Rat::zero()]));
    let l = g.to_leibniz2();
    assert!(check_leibniz2(&l).passed());
    assert!(check_central(&l, &e));
    assert!(!check_central(&l, &basis(2, 0)));
}

#[test]
fn zero_bracket_any_jacobiator() {
    let l = fix_b();
    assert!(check_leibniz2(&l).passed());
    let space = l.space().clone();
    let l3 = Mat::from_i64(&[&[1, -2, 0, 3, 0, 0, 5, 1]]);
    let l = Leibniz2Algebra::new(BilinearOp::zero(&space), l3).unwrap();
    assert!(check_leibniz2(&l).passed());
    assert!(check_central(&l, &basis(2, 1)));
}

#[test]
fn zero_bracket_chain_map() {
    let v = TwoVec::new(Mat::from_i64(&[&[1], &[0]]));
    let c = BilinearOp::zero(&v).chain_map();
    assert!(c.f0.is_zero() && c.fw.is_zero());
    assert_eq!((c.dom, c.cod), (2, 1));
}

#[test]
fn bracket_chain_defect_matches_b1_b2() {
    // d = [1;0], m_uu with [x,x] = y: (B1),(B2) fail and so does the chain condition.
    let v = TwoVec::new(Mat::from_i64(&[&[1], &[0]]));
    let b = BilinearOp::new(&v, Mat::from_triplets(2, 4, [(1, 0, Rat::one())]), Mat::zeros(1, 2), Mat::zeros(1, 2)).unwrap();
    let [b1, b2, _] = b.defects();
    assert!(!b1.is_zero() && !b2.is_zero());
    assert!(!b.is_functor());
    let c = b.chain_map();
    let defect = c.chain_defect();
    assert_eq!(defect.block(0, 0, 2, 2), b1);
    assert_eq!(defect.block(0, 2, 2, 2), b2);
    let l = Leibniz2Algebra { bracket: b, l3: Mat::zeros(1, 8) };
    let r = check_leibniz2(&l);
    assert_eq!(r.flag("B1"), Some(false));
    assert_eq!(r.flag("B2"), Some(false));
}

#[test]
fn b3_is_reported_separately() {
    let v = TwoVec::new(Mat::from_i64(&[&[1]]));
    let b = BilinearOp { space: v, m_uu: Mat::from_i64(&[&[1]]), m_wu: Mat::from_i64(&[&[1]]), m_uw: Mat::from_i64(&[&[2]]) };
    let r = {
        let l = Leibniz2Algebra { bracket: b, l3: Mat::zeros(1, 1) };
        check_leibniz2(&l)
    };
    assert_eq!(r.flag("B1"), Some(true));
    assert_eq!(r.flag("B2"), Some(false));
    assert_eq!(r.flag("B3"), Some(false));
}

#[test]
fn example_omega_cases() {
    // abelian g: any skew ω, zero Jacobiator.
    let g = flat(2, &[]);
    let w = Mat::from_i64(&[&[0, 2], &[-2, 0]]);
    let (l, e) = example_omega(&g, &basis(2, 1), &w).unwrap();
    assert!(l.l3.is_zero());
    assert!(check_leibniz2(&l).passed() && check_central(&l, &e));

    // span{x,e}, [x,x]=e: ω(e,x) = -2ω(e,x) forces ω = 0.
    let (g, e) = fix_a();
    let w = Mat::from_i64(&[&[0, 1], &[-1, 0]]);
    assert!(matches!(example_omega(&g, &e, &w), Err(Error::Structure(_))));
    assert!(example_omega(&g, &e, &Mat::zeros(2, 2)).is_ok());

    // Heisenberg: [x,y] = e = -[y,x], ω(x,y) = 1.
    let h = flat(3, &[(2, 0, 1, 1), (2, 1, 0, -1)]);
    let w = Mat::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
    let (l, e) = example_omega(&h, &basis(3, 2), &w).unwrap();
    assert!(check_leibniz2(&l).passed());
    assert!(check_central(&l, &e));

    assert!(example_omega(&g, &e, &Mat::from_i64(&[&[1, 0], &[0, 0]])).is_err());
}

#[test]
fn trivial_extension_of_zero_algebra() {
    let space = TwoVec::new(Mat::zeros(1, 0));
    let l = Leibniz2Algebra::new(BilinearOp::zero(&space), Mat::zeros(0, 1)).unwrap();
    let (k, e) = trivial_central_extension(&l);
    assert_eq!(e, vec![Rat::one(), Rat::zero()]);
    assert!(k.bracket.m_uu.is_zero());
    assert!(check_leibniz2(&k).passed() && check_central(&k, &e));
}

#[test]
fn fixtures_pass() {
    let (c, e) = fix_c();
    assert!(check_leibniz2(&c).passed() && check_central(&c, &e));
    let (l, e) = fix_e();
    assert!(!l.l3.is_zero());
    assert!(check_leibniz2(&l).passed() && check_central(&l, &e));
}

#[test]
fn decategorification_special_cases() {
    let (g, e) = fix_a();
    let d = decategorify_leibniz(&g.to_leibniz2(), Some(&e));
    assert_eq!(d.algebra.bracket, g.bracket);
    assert_eq!(d.central, Some(e));
    let v = TwoVec::new(Mat::identity(2));
    let mut b = BilinearOp::zero(&v);
    b.m_uu = Mat::zeros(2, 4);
    let l = Leibniz2Algebra::new(b, Mat::zeros(2, 8)).unwrap();
    assert_eq!(decategorify_leibniz(&l, None).algebra.dim(), 0);
}

#[test]
fn json_round_trip() {
    let (l, e) = fix_e();
    let (back, c) = Leibniz2Algebra::from_json(&l.to_json(Some(&e))).unwrap();
    assert_eq!(back, l);
    assert_eq!(c, Some(e));
    let mut v = l.to_json(None);
    v["l3"] = serde_json::json!([["1"]]);
    assert!(Leibniz2Algebra::from_json(&v).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_case_agrees_with_brute_force(c in prop::collection::vec(-1i64..=1, 8)) {
        let entries: Vec<_> = (0..8).map(|k| (k / 4, (k / 2) % 2, k % 2, c[k])).collect();
        let g = flat(2, &entries);
        let oracle = brute_leibniz(&constants(&g.bracket, 2));
        prop_assert_eq!(g.is_leibniz(), oracle);
        prop_assert_eq!(check_leibniz2(&g.to_leibniz2()).passed(), oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_algebras(seed in 0u64..1000, dims in prop::sample::select(vec![(2usize, 1usize), (3, 1), (3, 2)])) {
        let (l, e) = sample_leibniz2(seed, dims, 3).unwrap();
        prop_assert!(check_leibniz2(&l).passed());
        prop_assert!(check_central(&l, &e));
        let n = dims.0;
        for i in 0..n {
            let x = basis(n, i);
            prop_assert!(l.bracket.apply(&e, &x).iter().all(|v| v.is_zero()));
            prop_assert!(l.bracket.apply(&x, &e).iter().all(|v| v.is_zero()));
        }
        // decategorification is a Leibniz algebra with a central image of e
        let d = decategorify_leibniz(&l, Some(&e));
        let k = d.algebra.dim();
        prop_assert!(brute_leibniz(&constants(&d.algebra.bracket, k)));
        prop_assert!(d.algebra.is_central(d.central.as_ref().unwrap()));
        // trivial extension stays valid
        let (t, te) = trivial_central_extension(&l);
        prop_assert!(check_leibniz2(&t).passed() && check_central(&t, &te));
    }

    #[test]
    fn bracket_is_functorial(seed in 0u64..1000, a in mat(3, 4)) {
        let (l, _) = sample_leibniz2(seed, (3, 2), 3).unwrap();
        let v = l.space().clone();
        let b = &l.bracket;
        let f = Mor::new(&v, a.col(0), a.col(1)[..2].to_vec()).unwrap();
        let f2 = Mor::new(&v, f.target(&v), a.col(2)[..2].to_vec()).unwrap();
        let g = Mor::new(&v, a.col(3), a.col(0)[1..].to_vec()).unwrap();
        let g2 = Mor::new(&v, g.target(&v), a.col(1)[1..].to_vec()).unwrap();
        let lhs = b.apply_mor(&mor_compose(&v, &f, &f2).unwrap(), &mor_compose(&v, &g, &g2).unwrap());
        let rhs = mor_compose(&v, &b.apply_mor(&f, &g), &b.apply_mor(&f2, &g2)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let id = b.apply_mor(&Mor::identity(&v, f.src.clone()), &Mor::identity(&v, g.src.clone()));
        prop_assert!(id.is_identity());
        prop_assert_eq!(id.src, b.apply(&f.src, &g.src));
    }

    #[test]
    fn decategorification_is_basis_independent(seed in 0u64..1000) {
        let (l, _) = sample_leibniz2(seed, (3, 1), 3).unwrap();
        let d = decategorify_leibniz(&l, None);
        let k = d.algebra.dim();
        // another section: shift by an element of im d
        let shift = &(l.space().d() * &Mat::from_triplets(1, k, (0..k).map(|j| (0, j, Rat::one())))) + &d.section;
        let other = &(&d.proj * &l.bracket.m_uu) * &shift.kron(&shift);
        prop_assert_eq!(other, d.algebra.bracket);
    }
}
