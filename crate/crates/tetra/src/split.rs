//! Quotients by a central object, splittings, and the racks they induce.

use crate::error::{shape, Error, Result};
use crate::leibniz2::{check_central, BilinearOp, FlatLeibniz, Leibniz2Algebra};
use crate::rack2::{Coproduct, FlatRack, Linear2Rack};
use crate::ratmat::{coker_projection, kron_all, Mat, Rat};
use crate::report::Report;
use crate::twovec::TwoVec;
use crate::zte::{from_central_leibniz, rack_solution};

/// The quotient `L / ⟨e⟩` with its projection `U -> U/⟨e⟩` and the
/// canonical section.
#[derive(Clone, Debug)]
pub struct QuotientLeibniz2 {
    pub algebra: Leibniz2Algebra,
    pub proj: Mat,
    pub section: Mat,
}

fn first_nonzero(e: &[Rat]) -> Result<usize> {
    e.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Input("the central object is zero".into()))
}

pub fn quotient_leibniz2(l: &Leibniz2Algebra, e: &[Rat]) -> Result<QuotientLeibniz2> {
    let v = l.space();
    let (n, m) = (v.dim_obj(), v.dim_arr());
    if e.len() != n {
        return Err(shape("central object has the wrong length"));
    }
    first_nonzero(e)?;
    if !check_central(l, e) {
        return Err(Error::Structure("e is not central".into()));
    }
    let ec = Mat::col_vector(e);
    let i_n = Mat::identity(n);
    for (k, ins) in [kron_all(&[&ec, &i_n, &i_n]), kron_all(&[&i_n, &ec, &i_n]), kron_all(&[&i_n, &i_n, &ec])]
        .iter()
        .enumerate()
    {
        if !(&l.l3 * ins).is_zero() {
            return Err(Error::Structure(format!("the Jacobiator does not vanish on e in argument {}", k + 1)));
        }
    }
    let (proj, section) = coker_projection(&ec);
    let space = TwoVec::new(&proj * v.d());
    let i_m = Mat::identity(m);
    let bracket = BilinearOp::new(
        &space,
        &(&proj * &l.bracket.m_uu) * &section.kron(&section),
        &l.bracket.m_wu * &i_m.kron(&section),
        &l.bracket.m_uw * &section.kron(&i_m),
    )?;
    let l3 = &l.l3 * &kron_all(&[&section, &section, &section]);
    Ok(QuotientLeibniz2 { algebra: Leibniz2Algebra::new(bracket, l3)?, proj, section })
}

/// A section `σ0` of `U -> U/⟨e⟩` together with the functional `c` from
/// `d·w - σ0·π0·d·w = -c(w)·e`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub l: Leibniz2Algebra,
    pub e: Vec<Rat>,
    pub sigma0: Mat,
    pub c: Mat,
    pub quotient: QuotientLeibniz2,
}

impl Splitting {
    /// `σ0·π0`.
    pub fn retraction(&self) -> Mat {
        &self.sigma0 * &self.quotient.proj
    }

    /// `Φ(x - σ0 π0 x)`.
    pub fn counit(&self) -> Mat {
        let n = self.e.len();
        let k = first_nonzero(&self.e).unwrap();
        let comp = &Mat::identity(n) - &self.retraction();
        Mat::row_vector(&comp.row_dense(k)).scale(&self.e[k].recip())
    }

    /// `σ` commutes with `d`, i.e. `c = 0`.
    pub fn is_homomorphism(&self) -> bool {
        self.c.is_zero()
    }
}

pub fn make_splitting(l: &Leibniz2Algebra, e: &[Rat], sigma0: &Mat) -> Result<Splitting> {
    let quotient = quotient_leibniz2(l, e)?;
    let v = l.space();
    let (n, m) = (v.dim_obj(), v.dim_arr());
    if sigma0.shape() != (n, n - 1) {
        return Err(shape(format!("σ0 must be {n}x{}", n - 1)));
    }
    if !(&quotient.proj * sigma0).is_identity() {
        return Err(Error::Input("σ0 is not a section of the projection".into()));
    }
    let k = first_nonzero(e)?;
    let dd = &(&Mat::identity(n) - &(sigma0 * &quotient.proj)) * v.d();
    let c = Mat::row_vector(&dd.row_dense(k)).scale(&-e[k].recip());
    if &Mat::col_vector(e) * &c != -&dd {
        return Err(Error::Structure("d - σ0π0d does not land in ⟨e⟩".into()));
    }
    debug_assert_eq!(c.shape(), (1, m));
    Ok(Splitting { l: l.clone(), e: e.to_vec(), sigma0: sigma0.clone(), c, quotient })
}

/// `σ0` is a strict homomorphism of Leibniz 2-algebras from the quotient.
pub fn is_leibniz_section(sp: &Splitting) -> bool {
    let m = sp.l.space().dim_arr();
    let q = &sp.quotient.algebra.bracket;
    let b = &sp.l.bracket;
    let s = &sp.sigma0;
    let i_m = Mat::identity(m);
    sp.is_homomorphism()
        && s * &q.m_uu == &b.m_uu * &s.kron(s)
        && q.m_wu == &b.m_wu * &i_m.kron(s)
        && q.m_uw == &b.m_uw * &s.kron(&i_m)
        && sp.quotient.algebra.l3 == &sp.l.l3 * &kron_all(&[s, s, s])
}

fn split_ops(space: &TwoVec, eps: &Mat, ret: &Mat, b: &BilinearOp, sign: i64) -> BilinearOp {
    let (n, m) = (space.dim_obj(), space.dim_arr());
    let sg = Rat::int(sign);
    BilinearOp {
        space: space.clone(),
        m_uu: &Mat::identity(n).kron(eps) + &(ret * &b.m_uu).scale(&sg),
        m_wu: &Mat::identity(m).kron(eps) + &b.m_wu.scale(&sg),
        m_uw: b.m_uw.scale(&sg),
    }
}

/// `Δx = x⊗e + e⊗σ0(x̄)`, `ε = Φ(x - σ0 x̄)`, `x◁y = ε(y)x + σ0[x̄,ȳ]`,
/// `𝔯 = σ1 J̄`.
pub fn rack_from_splitting(sp: &Splitting) -> Result<Linear2Rack> {
    if !sp.is_homomorphism() {
        return Err(Error::Structure("im d is not contained in the image of σ0, so σ does not commute with d".into()));
    }
    let v = sp.l.space();
    let m = v.dim_arr();
    let ec = Mat::col_vector(&sp.e);
    let ret = sp.retraction();
    let eps = sp.counit();
    let i_n = Mat::identity(v.dim_obj());
    let i_m = Mat::identity(m);
    let d0 = &i_n.kron(&ec) + &ec.kron(&ret);
    let dw = Mat::vstack(&[&i_m.kron(&ec), &ec.kron(&i_m)])?;
    let b = &sp.l.bracket;
    let lhd = split_ops(v, &eps, &ret, b, 1);
    let lhd_inv = split_ops(v, &eps, &ret, b, -1);
    let r = &sp.l.l3 * &kron_all(&[&ret, &ret, &ret]);
    Linear2Rack::new(v, Coproduct { d0, dw }, eps, lhd, lhd_inv, r)
}

/// Compares the central Leibniz solution with the rack solution of the
/// splitting. Flags `B_f0`, `B_fw`, `Binv`, `y`.
pub fn solutions_coincide(sp: &Splitting) -> Result<Report> {
    let a = from_central_leibniz(&sp.l, &sp.e)?;
    let b = rack_solution(&rack_from_splitting(sp)?);
    let v = &a.space;
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let mut rep = Report::new();
    if !is_leibniz_section(sp) {
        rep.note("σ0 is not a Leibniz homomorphism");
    }
    rep.compare("B_f0", &a.b.f0, &b.b.f0, &[n, n]);
    rep.compare("B_fw", &a.b.fw, &b.b.fw, &[2, n.max(m), n.max(m)]);
    rep.compare("Binv", &a.binv.f0, &b.binv.f0, &[n, n]);
    rep.compare("Binv", &a.binv.fw, &b.binv.fw, &[a.binv.fw.cols()]);
    rep.compare("y", &a.y, &b.y, &[n, n, n]);
    Ok(rep)
}

/// The linear rack on a central Leibniz algebra `g` with section `σ` of
/// `g -> g/⟨e⟩`.
pub fn flat_rack_from_central_leibniz(g: &FlatLeibniz, e: &[Rat], sigma: &Mat) -> Result<FlatRack> {
    let n = g.dim();
    if e.len() != n {
        return Err(shape("central object has the wrong length"));
    }
    let k = first_nonzero(e)?;
    if !g.is_leibniz() {
        return Err(Error::Structure("g violates the Leibniz identity".into()));
    }
    if !g.is_central(e) {
        return Err(Error::Structure("e is not central".into()));
    }
    let ec = Mat::col_vector(e);
    let (proj, _) = coker_projection(&ec);
    if sigma.shape() != (n, n - 1) || !(&proj * sigma).is_identity() {
        return Err(Error::Input("σ is not a section of the projection".into()));
    }
    let ret = sigma * &proj;
    let i = Mat::identity(n);
    let eps = Mat::row_vector(&(&i - &ret).row_dense(k)).scale(&e[k].recip());
    let op = |s: i64| &i.kron(&eps) + &(&ret * &g.bracket).scale(&Rat::int(s));
    Ok(FlatRack { delta: &i.kron(&ec) + &ec.kron(&ret), eps: eps.clone(), lhd: op(1), lhd_inv: op(-1) })
}
