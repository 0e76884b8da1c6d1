//! Linear 2-racks.

use crate::error::{shape, Error, Result};
use crate::leibniz2::{tensor_vec, unit_vec, BilinearOp, Leibniz2Algebra};
use crate::ratmat::{kron_all, Mat, Rat};
use crate::report::{decode, Report};
use crate::twovec::{field, lift_chain_map, mor_compose, swap_chain_map, ChainMap, Homotopy, Mor, TwoVec};

/// Comultiplication `V -> V ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    /// `U -> U ⊗ U`
    pub d0: Mat,
    /// `W -> (W ⊗ U) ⊕ (U ⊗ W)`
    pub dw: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linear2Rack {
    pub space: TwoVec,
    pub delta: Coproduct,
    /// `U -> 𝕂`
    pub eps: Mat,
    pub lhd: BilinearOp,
    pub lhd_inv: BilinearOp,
    /// `U ⊗ U ⊗ U -> W`
    pub r: Mat,
}

impl Linear2Rack {
    pub fn new(space: &TwoVec, delta: Coproduct, eps: Mat, lhd: BilinearOp, lhd_inv: BilinearOp, r: Mat) -> Result<Linear2Rack> {
        let (n, m) = (space.dim_obj(), space.dim_arr());
        if delta.d0.shape() != (n * n, n) || delta.dw.shape() != (2 * n * m, m) {
            return Err(shape("coproduct components have the wrong shape"));
        }
        if eps.shape() != (1, n) {
            return Err(shape("counit must be 1 x n"));
        }
        if r.shape() != (m, n * n * n) {
            return Err(shape(format!("r must be {m}x{}", n * n * n)));
        }
        if lhd.space != *space || lhd_inv.space != *space {
            return Err(shape("operations live on a different space"));
        }
        Ok(Linear2Rack { space: space.clone(), delta, eps, lhd, lhd_inv, r })
    }

    pub fn n(&self) -> usize {
        self.space.dim_obj()
    }

    pub fn delta_map(&self) -> ChainMap {
        ChainMap::raw(&self.space, 1, 2, self.delta.d0.clone(), self.delta.dw.clone()).unwrap()
    }

    pub fn eps_map(&self) -> ChainMap {
        ChainMap::raw(&self.space, 1, 0, self.eps.clone(), Mat::zeros(0, self.space.dim_arr())).unwrap()
    }

    /// `(x◁y)◁z` on three strands.
    pub fn distributor_source(&self) -> ChainMap {
        let l = self.lhd.chain_map();
        lift_chain_map(&l, 1, 3).unwrap().then(&l)
    }

    /// `(x◁z₍₁₎)◁(y◁z₍₂₎)` on three strands.
    pub fn distributor_target(&self) -> ChainMap {
        let v = &self.space;
        let l = self.lhd.chain_map();
        lift_chain_map(&self.delta_map(), 3, 3)
            .unwrap()
            .then(&swap_chain_map(v, 2, 4).unwrap())
            .then(&lift_chain_map(&l, 1, 4).unwrap())
            .then(&lift_chain_map(&l, 2, 3).unwrap())
            .then(&l)
    }

    pub fn distributor(&self) -> Homotopy {
        Homotopy::raw(self.distributor_source(), self.distributor_target(), self.r.clone()).unwrap()
    }

    /// Sweedler terms of `Δ(e_k)` as `(i, j, coefficient)`.
    pub fn sweedler(&self, k: usize) -> Vec<(usize, usize, Rat)> {
        let n = self.n();
        let mut out = Vec::new();
        for (ij, v) in self.delta.d0.col(k).into_iter().enumerate() {
            if !v.is_zero() {
                out.push((ij / n, ij % n, v));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_json(),
            "delta0": self.delta.d0.to_json(),
            "deltaw": self.delta.dw.to_json(),
            "eps": self.eps.to_json(),
            "lhd": self.lhd.to_json(),
            "lhd_inv": self.lhd_inv.to_json(),
            "r": self.r.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Linear2Rack> {
        let space = TwoVec::from_json(field(v, "space")?)?;
        let (n, m) = (space.dim_obj(), space.dim_arr());
        let delta = Coproduct {
            d0: Mat::from_json(field(v, "delta0")?, n * n, n)?,
            dw: Mat::from_json(field(v, "deltaw")?, 2 * n * m, m)?,
        };
        let eps = Mat::from_json(field(v, "eps")?, 1, n)?;
        let lhd = BilinearOp::from_json(&space, field(v, "lhd")?)?;
        let lhd_inv = BilinearOp::from_json(&space, field(v, "lhd_inv")?)?;
        let r = Mat::from_json(field(v, "r")?, m, n * n * n)?;
        Linear2Rack::new(&space, delta, eps, lhd, lhd_inv, r)
    }
}

/// `𝔯` with its source functor precomputed.
struct RAt<'a> {
    r: &'a Mat,
    p0: Mat,
}

impl<'a> RAt<'a> {
    fn new(rk: &'a Linear2Rack) -> RAt<'a> {
        RAt { r: &rk.r, p0: &rk.lhd.m_uu * &rk.lhd.m_uu.kron(&Mat::identity(rk.n())) }
    }

    fn r3(&self, a: &[Rat], b: &[Rat], c: &[Rat]) -> Mor {
        let t = tensor_vec(&tensor_vec(a, b), c);
        Mor { src: self.p0.apply(&t), arr: self.r.apply(&t) }
    }
}

/// Flags `delta_chain`, `eps_chain`, `lhd_B*`, `lhd_inv_B*`, `c1`..`c8`
/// (`c7` split into `c7_source_target` and `c7_naturality`).
pub fn check_linear_2rack(rk: &Linear2Rack) -> Report {
    let mut rep = Report::new();
    let v = &rk.space;
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let delta = rk.delta_map();
    let eps = rk.eps_map();
    let l = rk.lhd.chain_map();
    let li = rk.lhd_inv.chain_map();
    rep.zero("delta_chain", &delta.chain_defect(), &[m]);
    rep.zero("eps_chain", &eps.chain_defect(), &[m]);
    rk.lhd.check_into(&mut rep, "lhd_");
    rk.lhd_inv.check_into(&mut rep, "lhd_inv_");

    let cmp = |rep: &mut Report, name: &str, a: &ChainMap, b: &ChainMap| {
        let radix = vec![n; a.dom];
        rep.compare(name, &a.f0, &b.f0, &radix);
        rep.compare(name, &a.fw, &b.fw, &[a.fw.cols()]);
    };
    let lift = |f: &ChainMap, pos: usize, k: usize| lift_chain_map(f, pos, k).unwrap();

    cmp(&mut rep, "c1", &delta.then(&lift(&delta, 1, 2)), &delta.then(&lift(&delta, 2, 2)));
    cmp(&mut rep, "c2", &delta.then(&swap_chain_map(v, 1, 2).unwrap()), &delta);
    let id1 = ChainMap::identity(v, 1);
    cmp(&mut rep, "c3", &delta.then(&lift(&eps, 1, 2)), &id1);
    cmp(&mut rep, "c3", &delta.then(&lift(&eps, 2, 2)), &id1);
    let dd = lift(&delta, 1, 2).then(&lift(&delta, 3, 3));
    let rhs4 = dd.then(&swap_chain_map(v, 2, 4).unwrap()).then(&lift(&l, 1, 4)).then(&lift(&l, 2, 3));
    cmp(&mut rep, "c4", &l.then(&delta), &rhs4);
    cmp(&mut rep, "c5", &l.then(&eps), &lift(&eps, 1, 2).then(&eps));
    let id_eps = lift(&eps, 2, 2);
    let d2 = lift(&delta, 2, 2);
    cmp(&mut rep, "c6", &d2.then(&lift(&l, 1, 3)).then(&li), &id_eps);
    cmp(&mut rep, "c6", &d2.then(&lift(&li, 1, 3)).then(&l), &id_eps);

    let y = rk.distributor();
    rep.zero("c7_source_target", &y.h1_defect(), &[n, n, n]);
    rep.zero("c7_naturality", &y.h2_defect(), &[y.h.cols()]);
    check_hexagon(rk, &mut rep);
    rep
}

/// The distributor identity at every basis quadruple, with Sweedler legs
/// expanded term by term and morphisms composed one edge at a time.
fn check_hexagon(rk: &Linear2Rack, rep: &mut Report) {
    let v = &rk.space;
    let n = rk.n();
    let op = &rk.lhd;
    let ob = |a: &[Rat], b: &[Rat]| op.apply(a, b);
    let id = |a: Vec<Rat>| Mor::identity(v, a);
    let zero_mor = || Mor::identity(v, vec![Rat::zero(); n]);
    let scale = |f: &Mor, c: &Rat| Mor {
        src: f.src.iter().map(|x| x * c).collect(),
        arr: f.arr.iter().map(|x| x * c).collect(),
    };
    let e = |i: usize| unit_vec(n, i);
    let ra = RAt::new(rk);
    rep.set("c8", true);
    for q in 0..n.pow(4) {
        let t = decode(q, &[n; 4]);
        let (x, y, z, w) = (e(t[0]), e(t[1]), e(t[2]), e(t[3]));
        let dz = rk.sweedler(t[2]);
        let dw = rk.sweedler(t[3]);

        let e1 = op.apply_mor(&ra.r3(&x, &y, &z), &id(w.clone()));
        let mut e2 = zero_mor();
        for (i, j, c) in &dz {
            e2 = e2.add(&scale(&ra.r3(&ob(&x, &e(*i)), &ob(&y, &e(*j)), &w), c));
        }
        let mut e3 = zero_mor();
        for (i, j, c) in &dz {
            for (k, l, c2) in &dw {
                let term = op.apply_mor(&ra.r3(&x, &e(*i), &e(*k)), &ra.r3(&y, &e(*j), &e(*l)));
                e3 = e3.add(&scale(&term, &(c * c2)));
            }
        }

        let f1 = ra.r3(&ob(&x, &y), &z, &w);
        let mut f2 = zero_mor();
        for (k, l, c) in &dw {
            let inner = op.apply_mor(&id(z.clone()), &id(e(*l)));
            f2 = f2.add(&scale(&op.apply_mor(&ra.r3(&x, &y, &e(*k)), &inner), c));
        }
        let mut f3 = zero_mor();
        for (a, k2, c) in &dw {
            for (b, cc, c2) in rk.sweedler(*a) {
                let m = ra.r3(&ob(&x, &e(b)), &ob(&y, &e(cc)), &ob(&z, &e(*k2)));
                f3 = f3.add(&scale(&m, &(c * &c2)));
            }
        }

        let left = mor_compose(v, &e1, &e2).and_then(|f| mor_compose(v, &f, &e3));
        let right = mor_compose(v, &f1, &f2).and_then(|f| mor_compose(v, &f, &f3));
        match (left, right) {
            (Ok(a), Ok(b)) if a.src == b.src && a.arr == b.arr && a.target(v) == b.target(v) => {}
            (Ok(a), Ok(b)) => {
                let diff = a.arr.iter().zip(&b.arr).map(|(p, q)| p - q).collect();
                rep.violate("c8", t, diff);
            }
            _ => rep.violate("c8", t, vec![]),
        }
    }
}

/// The 𝕂 ⊕ L rack with `Δ(a,x) = (a,x)⊗(1,0) + (1,0)⊗(0,x)`, `ε(a,x) = a`,
/// `(a,x)◁(b,y) = (ab, bx + [x,y])` and distributor given by the Jacobiator.
pub fn rack_from_trivial_extension(l: &Leibniz2Algebra) -> Linear2Rack {
    let base = l.space();
    let (n0, m) = (base.dim_obj(), base.dim_arr());
    let n = n0 + 1;
    let inc = Mat::vstack(&[&Mat::zeros(1, n0), &Mat::identity(n0)]).unwrap();
    let pr = inc.transpose();
    let space = TwoVec::new(&inc * base.d());
    let e0 = Mat::col_vector(&unit_vec(n, 0));
    let row0 = Mat::row_vector(&unit_vec(n, 0));
    let i_n = Mat::identity(n);
    let i_m = Mat::identity(m);
    let keep_l = &inc * &pr;
    let d0 = &i_n.kron(&e0) + &e0.kron(&keep_l);
    let dw = Mat::vstack(&[&i_m.kron(&e0), &e0.kron(&i_m)]).unwrap();
    let b = &l.bracket;
    let m_uu = &(&inc * &b.m_uu) * &pr.kron(&pr);
    let lift_uu = |sign: i64| &i_n.kron(&row0) + &m_uu.scale(&Rat::int(sign));
    let m_wu = &b.m_wu * &i_m.kron(&pr);
    let m_uw = &b.m_uw * &pr.kron(&i_m);
    let scale_wu = i_m.kron(&row0);
    let op = |sign: i64| BilinearOp {
        space: space.clone(),
        m_uu: lift_uu(sign),
        m_wu: &scale_wu + &m_wu.scale(&Rat::int(sign)),
        m_uw: m_uw.scale(&Rat::int(sign)),
    };
    let r = &l.l3 * &kron_all(&[&pr, &pr, &pr]);
    Linear2Rack {
        space: space.clone(),
        delta: Coproduct { d0, dw },
        eps: row0.clone(),
        lhd: op(1),
        lhd_inv: op(-1),
        r,
    }
}

/// A linear rack on a vector space: coproduct, counit and both operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatRack {
    pub delta: Mat,
    pub eps: Mat,
    pub lhd: Mat,
    pub lhd_inv: Mat,
}

impl FlatRack {
    pub fn dim(&self) -> usize {
        self.eps.cols()
    }

    /// The induced YBE solution `x ⊗ y ↦ y₍₁₎ ⊗ (x ◁ y₍₂₎)`.
    pub fn braiding(&self) -> Mat {
        let n = self.dim();
        let i = Mat::identity(n);
        let t = crate::twovec::perm_f0(n, &[1, 0]);
        &(&i.kron(&self.lhd) * &t.kron(&i)) * &i.kron(&self.delta)
    }

    pub fn check(&self) -> Report {
        let n = self.dim();
        let mut rep = Report::new();
        let i = Mat::identity(n);
        let t = crate::twovec::perm_f0(n, &[1, 0]);
        let (dl, e, l, li) = (&self.delta, &self.eps, &self.lhd, &self.lhd_inv);
        let r2 = [n, n];
        rep.compare("coassociative", &(&dl.kron(&i) * dl), &(&i.kron(dl) * dl), &[n]);
        rep.compare("cocommutative", &(&t * dl), dl, &[n]);
        rep.compare("counit", &(&e.kron(&i) * dl), &i, &[n]);
        rep.compare("counit", &(&i.kron(e) * dl), &i, &[n]);
        let rhs = &(&l.kron(l) * &i.kron(&t).kron(&i)) * &dl.kron(dl);
        rep.compare("coproduct_compatible", &(dl * l), &rhs, &r2);
        rep.compare("counit_multiplicative", &(e * l), &e.kron(e), &r2);
        let ie = i.kron(e);
        rep.compare("invertible", &(&(li * &l.kron(&i)) * &i.kron(dl)), &ie, &r2);
        rep.compare("invertible", &(&(l * &li.kron(&i)) * &i.kron(dl)), &ie, &r2);
        let sd_l = l * &l.kron(&i);
        let sd_r = &(&(l * &l.kron(l)) * &i.kron(&t).kron(&i)) * &kron_all(&[&i, &i, dl]);
        rep.compare("self_distributive", &sd_l, &sd_r, &[n, n, n]);
        rep
    }
}

/// Decategorified rack on `coker d`, with a descent report.
pub fn decategorify_rack(rk: &Linear2Rack) -> (FlatRack, Mat, Mat, Report) {
    let (_, p, s) = crate::twovec::decategorify_space(&rk.space);
    let pp = p.kron(&p);
    let ss = s.kron(&s);
    let flat = FlatRack {
        delta: &(&pp * &rk.delta.d0) * &s,
        eps: &rk.eps * &s,
        lhd: &(&p * &rk.lhd.m_uu) * &ss,
        lhd_inv: &(&p * &rk.lhd_inv.m_uu) * &ss,
    };
    let mut rep = Report::new();
    let n = rk.n();
    rep.compare("descends_delta", &(&flat.delta * &p), &(&pp * &rk.delta.d0), &[n]);
    rep.compare("descends_eps", &(&flat.eps * &p), &rk.eps, &[n]);
    rep.compare("descends_lhd", &(&flat.lhd * &pp), &(&p * &rk.lhd.m_uu), &[n, n]);
    rep.compare("descends_lhd_inv", &(&flat.lhd_inv * &pp), &(&p * &rk.lhd_inv.m_uu), &[n, n]);
    rep.absorb("", flat.check());
    (flat, p, s, rep)
}

pub fn is_group_like(rk: &Linear2Rack, x: &[Rat]) -> bool {
    rk.delta.d0.apply(x) == tensor_vec(x, x)
}

/// Group-like candidates: membership, closure, invertibility and the
/// distributor identity with `Δ(z) = z ⊗ z`.
pub fn group_like_report(rk: &Linear2Rack, candidates: &[Vec<Rat>]) -> Result<Report> {
    let n = rk.n();
    if candidates.iter().any(|c| c.len() != n) {
        return Err(Error::Input("candidate of the wrong length".into()));
    }
    let v = &rk.space;
    let mut rep = Report::new();
    for f in ["group_like", "closed", "inverse", "components", "distributor"] {
        rep.set(f, true);
    }
    let good: Vec<usize> = (0..candidates.len())
        .filter(|&i| {
            let ok = is_group_like(rk, &candidates[i]);
            if !ok {
                rep.violate("group_like", vec![i], candidates[i].clone());
            }
            ok
        })
        .collect();
    let c = |i: usize| &candidates[i];
    let ra = RAt::new(rk);
    let ob = |a: &[Rat], b: &[Rat]| rk.lhd.apply(a, b);
    let obi = |a: &[Rat], b: &[Rat]| rk.lhd_inv.apply(a, b);
    let id = |a: Vec<Rat>| Mor::identity(v, a);
    for &i in &good {
        for &j in &good {
            let p = ob(c(i), c(j));
            if !candidates.contains(&p) {
                rep.violate("closed", vec![i, j], p);
            }
            if obi(&ob(c(j), c(i)), c(i)) != *c(j) || ob(&obi(c(j), c(i)), c(i)) != *c(j) {
                rep.violate("inverse", vec![j, i], vec![]);
            }
            for &k in &good {
                let r = ra.r3(c(i), c(j), c(k));
                let want = ob(&ob(c(i), c(k)), &ob(c(j), c(k)));
                if r.target(v) != want {
                    rep.violate("components", vec![i, j, k], vec![]);
                }
            }
        }
    }
    for &a in &good {
        for &b in &good {
            for &cz in &good {
                for &dw in &good {
                    let (x, y, z, w) = (c(a), c(b), c(cz), c(dw));
                    let l1 = rk.lhd.apply_mor(&ra.r3(x, y, z), &id(w.clone()));
                    let l2 = ra.r3(&ob(x, z), &ob(y, z), w);
                    let l3 = rk.lhd.apply_mor(&ra.r3(x, z, w), &ra.r3(y, z, w));
                    let r1 = ra.r3(&ob(x, y), z, w);
                    let r2 = rk.lhd.apply_mor(&ra.r3(x, y, w), &rk.lhd.apply_mor(&id(z.clone()), &id(w.clone())));
                    let r3 = ra.r3(&ob(x, w), &ob(y, w), &ob(z, w));
                    let left = mor_compose(v, &l1, &l2).and_then(|f| mor_compose(v, &f, &l3));
                    let right = mor_compose(v, &r1, &r2).and_then(|f| mor_compose(v, &f, &r3));
                    match (left, right) {
                        (Ok(p), Ok(q)) if p == q => {}
                        _ => rep.violate("distributor", vec![a, b, cz, dw], vec![]),
                    }
                }
            }
        }
    }
    Ok(rep)
}
