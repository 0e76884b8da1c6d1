mod common;

use common::*;
use proptest::prelude::*;
use tetra::ratmat::*;
use tetra::twovec::*;

fn space(n: usize, m: usize) -> impl Strategy<Value = TwoVec> {
    mat(n, m).prop_map(TwoVec::new)
}

/// `(I + d h, I + h d)` on one strand.
fn perturbed_identity(v: &TwoVec, h: &Mat) -> ChainMap {
    let f0 = &Mat::identity(v.dim_obj()) + &(v.d() * h);
    let fw = &Mat::identity(v.dim_arr()) + &(h * v.d());
    ChainMap::new(v, 1, 1, f0, fw).unwrap()
}

/// A random 2-strand chain map built as `(F⊗G)` from two perturbed identities.
fn two_strand(v: &TwoVec, h1: &Mat, h2: &Mat) -> ChainMap {
    let f = lift_chain_map(&perturbed_identity(v, h1), 1, 2).unwrap();
    let g = lift_chain_map(&perturbed_identity(v, h2), 2, 2).unwrap();
    f.then(&g)
}

#[test]
fn morphism_inverse_example() {
    let v = TwoVec::new(Mat::from_i64(&[&[2]]));
    let f = Mor::new(&v, vec![q(1, 1)], vec![q(3, 1)]).unwrap();
    assert_eq!(f.target(&v), vec![q(7, 1)]);
    let g = mor_invert(&v, &f);
    assert_eq!((g.src.clone(), g.arr.clone()), (vec![q(7, 1)], vec![q(-3, 1)]));
    assert!(mor_compose(&v, &f, &g).unwrap().is_identity());
    assert!(mor_compose(&v, &g, &f).unwrap().is_identity());
    assert_eq!(mor_invert(&v, &g), f);
}

#[test]
fn composability_is_enforced() {
    let v = TwoVec::new(Mat::from_i64(&[&[1]]));
    let f = Mor::new(&v, vec![q(0, 1)], vec![q(1, 1)]).unwrap();
    assert!(mor_compose(&v, &f, &f).is_err());
}

#[test]
fn tensor_counts() {
    let v = TwoVec::new(Mat::zeros(2, 1));
    let t = tensor_power(&v, 3).unwrap();
    assert_eq!((t.obj_dim(), t.arr_dim()), (8, 12));
    assert_eq!(*tensor_power(&v, 1).unwrap().d_n(), *v.d());
}

#[test]
fn d_n_slot_blocks() {
    let v = TwoVec::new(Mat::from_i64(&[&[1, 0], &[2, 1]]));
    let d3 = v.d_k(3);
    let i = Mat::identity(2);
    for s in 0..3 {
        let mut parts = vec![&i; 3];
        parts[s] = v.d();
        let blk = d3.block(0, s * v.slot_dim(3), 8, v.slot_dim(3));
        assert_eq!(blk, kron_all(&parts));
    }
}

#[test]
fn swap_object_part_is_commutation_matrix() {
    let v = TwoVec::new(Mat::zeros(2, 1));
    let s = swap_chain_map(&v, 1, 2).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(s.f0.col(i * 2 + j), basis(4, j * 2 + i));
        }
    }
    assert!(s.then(&s).f0.is_identity());
    assert!(swap_chain_map(&v, 2, 2).is_err());
}

#[test]
fn lift_window_errors() {
    let v = TwoVec::new(Mat::zeros(1, 1));
    let f = ChainMap::identity(&v, 2);
    assert!(lift_chain_map(&f, 0, 3).is_err());
    assert!(lift_chain_map(&f, 3, 3).is_err());
    assert_eq!(lift_chain_map(&f, 1, 2).unwrap(), f);
    assert_eq!(lift_chain_map(&f, 2, 3).unwrap(), ChainMap::identity(&v, 3));
}

#[test]
fn vcompose_endpoint_mismatch() {
    let v = TwoVec::new(Mat::from_i64(&[&[1]]));
    let h = Mat::from_i64(&[&[1]]);
    let y = Homotopy::new(ChainMap::identity(&v, 1), perturbed_identity(&v, &h), h).unwrap();
    assert!(vcompose_homotopy(&y, &y).is_err());
    let z = vcompose_homotopy(&y, &y.inverse()).unwrap();
    assert!(z.h.is_zero());
}

#[test]
fn lifted_homotopy_needs_the_boundary_quotient() {
    // d = 1 on one strand: Id ⊗ h fails exact naturality on the U⊗W slot.
    let v = TwoVec::new(Mat::from_i64(&[&[1]]));
    let h = Mat::from_i64(&[&[1]]);
    let y = Homotopy::new(ChainMap::identity(&v, 1), perturbed_identity(&v, &h), h).unwrap();
    let l = lift_homotopy(&y, 2, 2).unwrap();
    assert!(l.h1_defect().is_zero());
    assert!(!l.h2_defect().is_zero());
    assert!(solve(&boundary2(&v, 2), &l.h2_defect()).is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mor_laws(v in space(2, 2), s in mat(2, 1), a in mat(2, 1), b in mat(2, 1), c in mat(2, 1)) {
        let f = Mor::new(&v, s.col(0), a.col(0)).unwrap();
        let g = Mor::new(&v, f.target(&v), b.col(0)).unwrap();
        let h = Mor::new(&v, g.target(&v), c.col(0)).unwrap();
        let gf = mor_compose(&v, &f, &g).unwrap();
        let left = mor_compose(&v, &gf, &h).unwrap();
        let right = mor_compose(&v, &f, &mor_compose(&v, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let unit = Mor::identity(&v, f.src.clone());
        prop_assert_eq!(mor_compose(&v, &unit, &f).unwrap(), f.clone());
        let inv = mor_invert(&v, &f);
        prop_assert_eq!(mor_compose(&v, &f, &inv).unwrap(), Mor::identity(&v, f.src.clone()));
        prop_assert_eq!(mor_compose(&v, &inv, &f).unwrap(), Mor::identity(&v, f.target(&v)));
    }

    #[test]
    fn lift_is_a_chain_map(v in space(2, 1), h1 in mat(1, 2), h2 in mat(1, 2), pos in 1usize..=3) {
        let f = two_strand(&v, &h1, &h2);
        let l = lift_chain_map(&f, pos, 4).unwrap();
        prop_assert!(l.is_chain());
        prop_assert_eq!(l.f0, lift_f0(&f.f0, 2, pos - 1, 3 - pos));
    }

    #[test]
    fn lift_is_functorial(v in space(2, 1), h1 in mat(1, 2), h2 in mat(1, 2), h3 in mat(1, 2)) {
        let f = two_strand(&v, &h1, &h2);
        let g = two_strand(&v, &h2, &h3);
        let a = lift_chain_map(&f, 2, 3).unwrap().then(&lift_chain_map(&g, 2, 3).unwrap());
        prop_assert_eq!(a, lift_chain_map(&f.then(&g), 2, 3).unwrap());
    }

    #[test]
    fn far_commutativity(v in space(2, 1), h1 in mat(1, 2), h2 in mat(1, 2)) {
        let f = lift_chain_map(&two_strand(&v, &h1, &h2), 1, 4).unwrap();
        let g = lift_chain_map(&two_strand(&v, &h2, &h1), 3, 4).unwrap();
        prop_assert_eq!(f.then(&g), g.then(&f));
    }

    #[test]
    fn composition_is_associative_and_valid(v in space(2, 2), a in mat(2, 2), b in mat(2, 2), c in mat(2, 2)) {
        let (f, g, h) = (perturbed_identity(&v, &a), perturbed_identity(&v, &b), perturbed_identity(&v, &c));
        prop_assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
        prop_assert!(f.then(&g).is_chain());
        prop_assert_eq!(compose_word(&[&h, &g, &f]), f.then(&g).then(&h));
    }

    #[test]
    fn permutations_compose(v in space(2, 1), p in Just(vec![0usize, 1, 2]).prop_shuffle(), r in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let a = permute_chain_map(&v, &p).unwrap();
        let b = permute_chain_map(&v, &r).unwrap();
        let rp: Vec<usize> = (0..3).map(|i| r[p[i]]).collect();
        prop_assert!(a.is_chain());
        prop_assert_eq!(a.then(&b), permute_chain_map(&v, &rp).unwrap());
        let mut inv = vec![0; 3];
        for i in 0..3 {
            inv[p[i]] = i;
        }
        prop_assert_eq!(a.then(&permute_chain_map(&v, &inv).unwrap()), ChainMap::identity(&v, 3));
    }

    #[test]
    fn swap_is_an_involution(v in space(2, 2), pos in 1usize..=2) {
        let s = swap_chain_map(&v, pos, 3).unwrap();
        prop_assert!(s.is_chain());
        prop_assert_eq!(s.then(&s), ChainMap::identity(&v, 3));
    }

    #[test]
    fn homotopy_and_whiskering(v in space(2, 2), h in mat(2, 2), a in mat(2, 2), b in mat(2, 2)) {
        let y = Homotopy::new(ChainMap::identity(&v, 1), perturbed_identity(&v, &h), h.clone()).unwrap();
        let (pre, post) = (perturbed_identity(&v, &a), perturbed_identity(&v, &b));
        let w = whisker(&y, Some(&pre), Some(&post)).unwrap();
        prop_assert!(w.is_valid());
        prop_assert_eq!(&w.h, &(&(&post.fw * &h) * &pre.f0));
        prop_assert_eq!(whisker(&y, None, None).unwrap(), y.clone());
        let z = Homotopy::zero(&pre);
        prop_assert!(whisker(&z, Some(&pre), Some(&post)).unwrap().h.is_zero());
    }

    #[test]
    fn vcompose_matches_componentwise(v in space(2, 1), h in mat(1, 2), k in mat(1, 2)) {
        let f = ChainMap::identity(&v, 1);
        let g = perturbed_identity(&v, &h);
        let gk = ChainMap::new(&v, 1, 1, &g.f0 + &(v.d() * &k), &g.fw + &(&k * v.d())).unwrap();
        let y1 = Homotopy::new(f, g.clone(), h).unwrap();
        let y2 = Homotopy::new(g, gk, k).unwrap();
        let y = vcompose_homotopy(&y1, &y2).unwrap();
        prop_assert!(y.is_valid());
        for i in 0..2 {
            let c = mor_compose(&v, &y1.component(i), &y2.component(i)).unwrap();
            prop_assert_eq!(y.component(i), c);
        }
    }

    #[test]
    fn lifted_homotopy(v in space(2, 1), h in mat(1, 2), pos in 1usize..=3) {
        let y = Homotopy::new(ChainMap::identity(&v, 1), perturbed_identity(&v, &h), h).unwrap();
        let l = lift_homotopy(&y, pos, 3).unwrap();
        prop_assert!(l.from.is_chain() && l.to.is_chain());
        prop_assert!(l.h1_defect().is_zero());
        let d2 = l.h2_defect();
        prop_assert!(d2.is_zero() || solve(&boundary2(&v, 3), &d2).is_some());
        if v.d().is_zero() {
            prop_assert!(d2.is_zero());
        }
        prop_assert_eq!(lift_homotopy(&y, 1, 1).unwrap(), y);
    }

    #[test]
    fn chain_map_json_round_trip(v in space(2, 1), h in mat(1, 2)) {
        let f = perturbed_identity(&v, &h);
        let w = TwoVec::from_json(&v.to_json()).unwrap();
        prop_assert_eq!(ChainMap::from_json(&w, &f.to_json()).unwrap(), f);
    }

    #[test]
    fn decategorified_space(v in space(3, 2)) {
        let (k, p, s) = decategorify_space(&v);
        prop_assert_eq!(k, 3 - v.d().rank());
        prop_assert!((&p * v.d()).is_zero());
        prop_assert!((&p * &s).is_identity());
    }
}
