//! Solutions of the categorified Zamolodchikov tetrahedron equation and
//! their decategorifications.

use crate::error::{shape, Error, Result};
use crate::leibniz2::{check_central, check_leibniz2, decategorify_leibniz, Leibniz2Algebra};
use crate::rack2::{check_linear_2rack, decategorify_rack, Linear2Rack};
use crate::ratmat::{inverse, kron_all, solve, Mat, Rat};
use crate::report::Report;
use crate::twovec::{
    boundary2, compose_word, decategorify_space, field, lift_chain_map, lift_homotopy, permute_chain_map, swap_chain_map,
    whisker, ChainMap, Homotopy, TwoVec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZteSolution {
    pub space: TwoVec,
    pub b: ChainMap,
    pub binv: ChainMap,
    /// Arrow part of `Y`, shape `arr_dim(3) x n^3`.
    pub y: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeSolution {
    pub dim: usize,
    pub bbar: Mat,
}

impl ZteSolution {
    pub fn new(space: &TwoVec, b: ChainMap, binv: ChainMap, y: Mat) -> Result<ZteSolution> {
        for c in [&b, &binv] {
            if c.base != *space || c.dom != 2 || c.cod != 2 {
                return Err(shape("B and its inverse must be chain maps on two strands"));
            }
        }
        if y.shape() != (space.arr_dim(3), space.obj_dim(3)) {
            return Err(shape(format!("y must be {}x{}", space.arr_dim(3), space.obj_dim(3))));
        }
        Ok(ZteSolution { space: space.clone(), b, binv, y })
    }

    fn lifts(&self, k: usize) -> Vec<ChainMap> {
        (1..k).map(|i| lift_chain_map(&self.b, i, k).unwrap()).collect()
    }

    /// `(B⊗Id)(Id⊗B)(B⊗Id)`.
    pub fn source(&self) -> ChainMap {
        let l = self.lifts(3);
        compose_word(&[&l[0], &l[1], &l[0]])
    }

    /// `(Id⊗B)(B⊗Id)(Id⊗B)`.
    pub fn target(&self) -> ChainMap {
        let l = self.lifts(3);
        compose_word(&[&l[1], &l[0], &l[1]])
    }

    pub fn homotopy(&self) -> Homotopy {
        Homotopy::raw(self.source(), self.target(), self.y.clone()).unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_json(),
            "B": self.b.to_json(),
            "Binv": self.binv.to_json(),
            "y": self.y.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ZteSolution> {
        let space = TwoVec::from_json(field(v, "space")?)?;
        let b = ChainMap::from_json(&space, field(v, "B")?)?;
        let binv = match v.get("Binv") {
            Some(x) => ChainMap::from_json(&space, x)?,
            None => {
                let f0 = inverse(&b.f0).ok_or_else(|| Error::Structure("B is not invertible on objects".into()))?;
                let fw = inverse(&b.fw).ok_or_else(|| Error::Structure("B is not invertible on arrows".into()))?;
                ChainMap::raw(&space, 2, 2, f0, fw)?
            }
        };
        let y = Mat::from_json(field(v, "y")?, space.arr_dim(3), space.obj_dim(3))?;
        ZteSolution::new(&space, b, binv, y)
    }
}

/// `x ↦ e ⊗ x` (`left`) or `x ↦ x ⊗ e` as a chain map from one strand to two.
fn insert_unit(v: &TwoVec, e: &[Rat], left: bool) -> ChainMap {
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let ec = Mat::col_vector(e);
    let (f0, blk, slot) = if left {
        (ec.kron(&Mat::identity(n)), ec.kron(&Mat::identity(m)), 1)
    } else {
        (Mat::identity(n).kron(&ec), Mat::identity(m).kron(&ec), 0)
    };
    let fw = Mat::embed(v.arr_dim(2), m, slot * v.slot_dim(2), 0, &blk);
    ChainMap::raw(v, 1, 2, f0, fw).unwrap()
}

/// `B(x⊗y) = y⊗x + e⊗[x,y]`, `Y = ι_e ⊗ ι_e ⊗ J`.
pub fn from_central_leibniz(l: &Leibniz2Algebra, e: &[Rat]) -> Result<ZteSolution> {
    let v = l.space();
    if e.len() != v.dim_obj() {
        return Err(shape("central object has the wrong length"));
    }
    let rep = check_leibniz2(l);
    if !rep.passed() {
        return Err(Error::Structure(format!("not a Leibniz 2-algebra: {:?}", rep.failed_flags())));
    }
    if !check_central(l, e) {
        return Err(Error::Structure("e is not central".into()));
    }
    let sw = swap_chain_map(v, 1, 2)?;
    let br = l.bracket.chain_map();
    let b = sw.try_add(&br.then(&insert_unit(v, e, true)))?;
    let binv = sw.try_sub(&sw.then(&br).then(&insert_unit(v, e, false)))?;
    let m = v.dim_arr();
    let ec = Mat::col_vector(e);
    let blk = &kron_all(&[&ec, &ec, &Mat::identity(m)]) * &l.l3;
    let y = Mat::embed(v.arr_dim(3), v.obj_dim(3), 2 * v.slot_dim(3), 0, &blk);
    ZteSolution::new(v, b, binv, y)
}

/// `B = (Id⊗◁)(τ⊗Id)(Id⊗Δ)`, `Y = z₍₁₎ ⊗ (y₍₁₎◁z₍₂₎) ⊗ 𝔯(x⊗y₍₂₎⊗z₍₃₎)`.
pub fn from_linear_2rack(rk: &Linear2Rack) -> Result<ZteSolution> {
    let rep = check_linear_2rack(rk);
    if !rep.passed() {
        return Err(Error::Structure(format!("not a linear 2-rack: {:?}", rep.failed_flags())));
    }
    Ok(rack_solution(rk))
}

/// The rack construction without re-running the rack checker.
pub fn rack_solution(rk: &Linear2Rack) -> ZteSolution {
    let v = &rk.space;
    let lift = |f: &ChainMap, p: usize, k: usize| lift_chain_map(f, p, k).unwrap();
    let delta = rk.delta_map();
    let l = rk.lhd.chain_map();
    let li = rk.lhd_inv.chain_map();
    let b = lift(&delta, 2, 2).then(&swap_chain_map(v, 1, 3).unwrap()).then(&lift(&l, 2, 3));
    let binv = lift(&delta, 1, 2)
        .then(&swap_chain_map(v, 2, 3).unwrap())
        .then(&swap_chain_map(v, 1, 3).unwrap())
        .then(&lift(&li, 1, 3));
    let pre = lift(&delta, 2, 3)
        .then(&lift(&delta, 4, 4))
        .then(&lift(&delta, 4, 5))
        .then(&permute_chain_map(v, &[3, 1, 4, 0, 2, 5]).unwrap())
        .then(&lift(&l, 2, 6));
    let r = lift_homotopy(&rk.distributor(), 3, 5).unwrap();
    let y = whisker(&r, Some(&pre), None).unwrap().h;
    ZteSolution { space: v.clone(), b, binv, y }
}

struct Side {
    h: Mat,
    from: ChainMap,
    to: ChainMap,
}

/// Runs a side of the permutohedron: four whiskered `Y`s and one
/// far-commutativity equality between the second and third.
fn run_side(rep: &mut Report, flag: &str, steps: [Homotopy; 4], eq: (ChainMap, ChainMap)) -> Side {
    let [s1, s2, s3, s4] = steps;
    let mut ok = true;
    ok &= s1.to == s2.from;
    ok &= s2.to == eq.0;
    ok &= eq.0 == eq.1;
    ok &= eq.1 == s3.from;
    ok &= s3.to == s4.from;
    rep.set(flag, ok);
    if !ok {
        rep.note(format!("{flag}: consecutive endpoints do not match"));
    }
    let h = &(&(&s1.h + &s2.h) + &s3.h) + &s4.h;
    Side { h, from: s1.from, to: s4.to }
}

/// Flags `z1_invertible`, `z2_homotopy`, `z3_left`, `z4_right`, `z5_equal`.
pub fn verify_zte(sol: &ZteSolution) -> Report {
    let mut rep = Report::new();
    let v = &sol.space;
    let id = ChainMap::identity(v, 2);
    let inv_ok = sol.b.then(&sol.binv) == id && sol.binv.then(&sol.b) == id;
    rep.set("z1_invertible", inv_ok && sol.b.is_chain() && sol.binv.is_chain());
    let y = sol.homotopy();
    let n = v.dim_obj();
    rep.zero("z2_homotopy", &y.h1_defect(), &[n, n, n]);
    rep.zero("z2_homotopy", &y.h2_defect(), &[y.h.cols()]);
    let (left, right) = sides(sol, &mut rep);
    let ends = left.from == right.from && left.to == right.to;
    if !ends {
        rep.note("z5_equal: the two sides run between different functors");
    }
    rep.set("z5_equal", ends);
    rep.compare("z5_equal", &left.h, &right.h, &[n, n, n, n]);
    rep
}

/// As [`verify_zte`], but `z2_homotopy` (naturality part) and `z5_equal`
/// are decided modulo the image of [`boundary2`], the part of the tensor
/// complex that the slot model drops.
pub fn verify_zte_mod_boundary(sol: &ZteSolution) -> Report {
    let mut rep = Report::new();
    let v = &sol.space;
    let id = ChainMap::identity(v, 2);
    let inv_ok = sol.b.then(&sol.binv) == id && sol.binv.then(&sol.b) == id;
    rep.set("z1_invertible", inv_ok && sol.b.is_chain() && sol.binv.is_chain());
    let y = sol.homotopy();
    let n = v.dim_obj();
    rep.zero("z2_homotopy", &y.h1_defect(), &[n, n, n]);
    rep.set("z2_homotopy", in_image(&boundary2(v, 3), &y.h2_defect()));
    let (left, right) = sides(sol, &mut rep);
    rep.set("z5_equal", left.from == right.from && left.to == right.to);
    rep.set("z5_equal", in_image(&boundary2(v, 4), &(&left.h - &right.h)));
    rep
}

fn in_image(b: &Mat, x: &Mat) -> bool {
    x.is_zero() || solve(b, x).is_some()
}

/// Difference of the two composite homotopies of the tetrahedron equation.
pub fn zte_residual(sol: &ZteSolution) -> Mat {
    let (l, r) = sides(sol, &mut Report::new());
    &l.h - &r.h
}

fn sides(sol: &ZteSolution, rep: &mut Report) -> (Side, Side) {
    let y = sol.homotopy();

    let b = sol.lifts(4);
    let (b1, b2, b3) = (&b[0], &b[1], &b[2]);
    let y1 = lift_homotopy(&y, 1, 4).unwrap();
    let y2 = lift_homotopy(&y, 2, 4).unwrap();
    let w = |word: &[&ChainMap]| compose_word(word);
    let wh = |h: &Homotopy, pre: Option<ChainMap>, post: Option<ChainMap>| {
        whisker(h, pre.as_ref(), post.as_ref()).unwrap()
    };

    let left = run_side(
        rep,
        "z3_left",
        [
            wh(&y1, Some(w(&[b3, b2, b1])), None),
            wh(&y2, Some(w(&[b1])), Some(w(&[b2, b1]))),
            wh(&y1, Some(w(&[b3])), Some(w(&[b2, b3]))),
            wh(&y2, Some(w(&[b1, b2, b3])), None),
        ],
        (w(&[b2, b1, b3, b2, b3, b1]), w(&[b2, b3, b1, b2, b1, b3])),
    );
    let right = run_side(
        rep,
        "z4_right",
        [
            wh(&y1, None, Some(w(&[b1, b2, b3]))),
            wh(&y2, Some(w(&[b1, b2])), Some(w(&[b1]))),
            wh(&y1, Some(w(&[b3, b2])), Some(w(&[b3]))),
            wh(&y2, None, Some(w(&[b3, b2, b1]))),
        ],
        (w(&[b1, b3, b2, b3, b1, b2]), w(&[b3, b1, b2, b1, b3, b2])),
    );
    (left, right)
}

/// Braid relation and invertibility of `m` on `dim ⊗ dim`.
pub fn verify_ybe(m: &Mat, dim: usize) -> Result<bool> {
    if m.shape() != (dim * dim, dim * dim) {
        return Err(shape(format!("expected a {0}x{0} matrix", dim * dim)));
    }
    let i = Mat::identity(dim);
    let m1 = m.kron(&i);
    let m2 = i.kron(m);
    let braid = &(&m1 * &m2) * &m1 == &(&m2 * &m1) * &m2;
    Ok(braid && inverse(m).is_some())
}

/// `B̄ = (p⊗p)·B.f0·(s⊗s)` with flags `descends`, `ybe`.
pub fn decategorify_solution(sol: &ZteSolution) -> (YbeSolution, Report) {
    let (k, p, s) = decategorify_space(&sol.space);
    let pp = p.kron(&p);
    let bbar = &(&pp * &sol.b.f0) * &s.kron(&s);
    let mut rep = Report::new();
    let n = sol.space.dim_obj();
    rep.compare("descends", &(&bbar * &pp), &(&pp * &sol.b.f0), &[n, n]);
    rep.set("ybe", verify_ybe(&bbar, k).unwrap());
    (YbeSolution { dim: k, bbar }, rep)
}

/// `x⊗y ↦ y⊗x + e⊗[x,y]` for a flat bracket on `dim` coordinates.
pub fn flat_leibniz_braiding(bracket: &Mat, e: &[Rat]) -> Mat {
    let n = e.len();
    let t = crate::twovec::perm_f0(n, &[1, 0]);
    &t + &Mat::col_vector(e).kron(bracket)
}

/// Compares `B̄` of the central Leibniz solution with the flat formula on
/// the decategorified algebra.
pub fn leibniz_square(l: &Leibniz2Algebra, e: &[Rat]) -> Result<Report> {
    let sol = from_central_leibniz(l, e)?;
    let (ybe, mut rep) = decategorify_solution(&sol);
    let dl = decategorify_leibniz(l, Some(e));
    let ebar = dl.central.unwrap();
    let flat = flat_leibniz_braiding(&dl.algebra.bracket, &ebar);
    let k = ybe.dim;
    rep.compare("square", &ybe.bbar, &flat, &[k, k]);
    Ok(rep)
}

/// Compares `B̄` of the rack solution with `ȳ₍₁₎⊗(x̄◁̄ȳ₍₂₎)` on the
/// decategorified rack.
pub fn rack_square(rk: &Linear2Rack) -> Result<Report> {
    let sol = from_linear_2rack(rk)?;
    let (ybe, mut rep) = decategorify_solution(&sol);
    let (flat, _, _, drep) = decategorify_rack(rk);
    rep.absorb("flat_", drep);
    let k = ybe.dim;
    rep.compare("square", &ybe.bbar, &flat.braiding(), &[k, k]);
    Ok(rep)
}
