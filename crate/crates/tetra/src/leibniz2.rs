//! Leibniz 2-algebras in the complex model.

use crate::error::{shape, Error, Result};
use crate::ratmat::{kron_all, Mat, Rat};
use crate::report::Report;
use crate::twovec::{field, lift_chain_map, mor_compose, swap_chain_map, ChainMap, Homotopy, Mor, TwoVec};

/// A bilinear functor `V ⊗ V -> V` given by its three components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearOp {
    pub space: TwoVec,
    /// `U ⊗ U -> U`
    pub m_uu: Mat,
    /// `W ⊗ U -> W`
    pub m_wu: Mat,
    /// `U ⊗ W -> W`
    pub m_uw: Mat,
}

impl BilinearOp {
    pub fn new(space: &TwoVec, m_uu: Mat, m_wu: Mat, m_uw: Mat) -> Result<BilinearOp> {
        let (n, m) = (space.dim_obj(), space.dim_arr());
        if m_uu.shape() != (n, n * n) {
            return Err(shape(format!("m_uu must be {n}x{}", n * n)));
        }
        if m_wu.shape() != (m, m * n) || m_uw.shape() != (m, n * m) {
            return Err(shape(format!("m_wu and m_uw must be {m}x{}", m * n)));
        }
        Ok(BilinearOp { space: space.clone(), m_uu, m_wu, m_uw })
    }

    pub fn zero(space: &TwoVec) -> BilinearOp {
        let (n, m) = (space.dim_obj(), space.dim_arr());
        BilinearOp {
            space: space.clone(),
            m_uu: Mat::zeros(n, n * n),
            m_wu: Mat::zeros(m, m * n),
            m_uw: Mat::zeros(m, n * m),
        }
    }

    /// Defects of (B1) `m_uu(d⊗1) = d m_wu`, (B2) `m_uu(1⊗d) = d m_uw`,
    /// (B3) `m_wu(1⊗d) = m_uw(d⊗1)`.
    pub fn defects(&self) -> [Mat; 3] {
        let (n, m) = (self.space.dim_obj(), self.space.dim_arr());
        let d = self.space.d();
        let (i_n, i_m) = (Mat::identity(n), Mat::identity(m));
        [
            &(&self.m_uu * &d.kron(&i_n)) - &(d * &self.m_wu),
            &(&self.m_uu * &i_n.kron(d)) - &(d * &self.m_uw),
            &(&self.m_wu * &i_m.kron(d)) - &(&self.m_uw * &d.kron(&i_m)),
        ]
    }

    pub fn check_into(&self, r: &mut Report, prefix: &str) {
        let (n, m) = (self.space.dim_obj(), self.space.dim_arr());
        let [b1, b2, b3] = self.defects();
        r.zero(&format!("{prefix}B1"), &b1, &[m, n]);
        r.zero(&format!("{prefix}B2"), &b2, &[n, m]);
        r.zero(&format!("{prefix}B3"), &b3, &[m, m]);
    }

    pub fn is_functor(&self) -> bool {
        self.defects().iter().all(|d| d.is_zero())
    }

    /// The operation as a chain map from two strands to one.
    pub fn chain_map(&self) -> ChainMap {
        let fw = Mat::hstack(&[&self.m_wu, &self.m_uw]).unwrap();
        ChainMap::raw(&self.space, 2, 1, self.m_uu.clone(), fw).expect("bilinear op shapes")
    }

    pub fn from_chain_map(c: &ChainMap) -> Result<BilinearOp> {
        if c.dom != 2 || c.cod != 1 {
            return Err(shape("a bilinear operation is a chain map from 2 strands to 1"));
        }
        let (n, m) = (c.base.dim_obj(), c.base.dim_arr());
        BilinearOp::new(&c.base, c.f0.clone(), c.fw.block(0, 0, m, m * n), c.fw.block(0, m * n, m, n * m))
    }

    /// Value on objects.
    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.m_uu.apply(&tensor_vec(x, y))
    }

    /// The operation on a pair of morphisms.
    pub fn apply_mor(&self, f: &Mor, g: &Mor) -> Mor {
        let d = self.space.d();
        let src = self.apply(&f.src, &g.src);
        let a = self.m_wu.apply(&tensor_vec(&f.arr, &g.src));
        let b = self.m_uw.apply(&tensor_vec(&f.src, &g.arr));
        let c = self.m_wu.apply(&tensor_vec(&f.arr, &d.apply(&g.arr)));
        let arr = a.iter().zip(&b).zip(&c).map(|((a, b), c)| &(a + b) + c).collect();
        Mor { src, arr }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"m_uu": self.m_uu.to_json(), "m_wu": self.m_wu.to_json(), "m_uw": self.m_uw.to_json()})
    }

    pub fn from_json(space: &TwoVec, v: &serde_json::Value) -> Result<BilinearOp> {
        let (n, m) = (space.dim_obj(), space.dim_arr());
        BilinearOp::new(
            space,
            Mat::from_json(field(v, "m_uu")?, n, n * n)?,
            Mat::from_json(field(v, "m_wu")?, m, m * n)?,
            Mat::from_json(field(v, "m_uw")?, m, n * m)?,
        )
    }
}

/// Coordinates of `x ⊗ y`.
pub fn tensor_vec(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// A (right) Leibniz 2-algebra: bracket plus Jacobiator arrow part `l3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leibniz2Algebra {
    pub bracket: BilinearOp,
    /// `U ⊗ U ⊗ U -> W`
    pub l3: Mat,
}

impl Leibniz2Algebra {
    pub fn new(bracket: BilinearOp, l3: Mat) -> Result<Leibniz2Algebra> {
        let (n, m) = (bracket.space.dim_obj(), bracket.space.dim_arr());
        if l3.shape() != (m, n * n * n) {
            return Err(shape(format!("l3 must be {m}x{}", n * n * n)));
        }
        Ok(Leibniz2Algebra { bracket, l3 })
    }

    pub fn space(&self) -> &TwoVec {
        &self.bracket.space
    }

    /// The Jacobiator component at `x ⊗ y ⊗ z`.
    pub fn jacobiator(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Mor {
        let b = &self.bracket;
        let xyz = tensor_vec(&tensor_vec(x, y), z);
        Mor { src: b.apply(&b.apply(x, y), z), arr: self.l3.apply(&xyz) }
    }

    /// `[[x,y],z] ⇒ [[x,z],y] + [x,[y,z]]` as a homotopy on three strands.
    pub fn jacobiator_homotopy(&self) -> Homotopy {
        let v = self.space();
        let br = self.bracket.chain_map();
        let left = lift_chain_map(&br, 1, 3).unwrap().then(&br);
        let swapped = swap_chain_map(v, 2, 3).unwrap().then(&left);
        let inner = lift_chain_map(&br, 2, 3).unwrap().then(&br);
        let right = swapped.try_add(&inner).unwrap();
        Homotopy::raw(left, right, self.l3.clone()).expect("jacobiator shapes")
    }

    pub fn to_json(&self, central: Option<&[Rat]>) -> serde_json::Value {
        let mut v = self.bracket.to_json();
        v["space"] = self.space().to_json();
        v["l3"] = self.l3.to_json();
        if let Some(e) = central {
            v["central"] = serde_json::to_value(e).unwrap();
        }
        v
    }

    /// Parses the structure and the optional central object.
    pub fn from_json(v: &serde_json::Value) -> Result<(Leibniz2Algebra, Option<Vec<Rat>>)> {
        let space = TwoVec::from_json(field(v, "space")?)?;
        let (n, m) = (space.dim_obj(), space.dim_arr());
        let bracket = BilinearOp::from_json(&space, v)?;
        let l3 = Mat::from_json(field(v, "l3")?, m, n * n * n)?;
        let central = match v.get("central") {
            None | Some(serde_json::Value::Null) => None,
            Some(c) => {
                let e: Vec<Rat> = serde_json::from_value(c.clone()).map_err(|e| Error::Input(format!("central: {e}")))?;
                if e.len() != n {
                    return Err(shape("central object has the wrong length"));
                }
                Some(e)
            }
        };
        Ok((Leibniz2Algebra::new(bracket, l3)?, central))
    }
}

/// Flags: `B1`..`B3` (functor conditions), `b` (Jacobiator endpoints),
/// `c` (Jacobiator naturality), `d` (Jacobiator identity on basis quadruples).
pub fn check_leibniz2(l: &Leibniz2Algebra) -> Report {
    let mut r = Report::new();
    let (n, m) = (l.space().dim_obj(), l.space().dim_arr());
    l.bracket.check_into(&mut r, "");
    let j = l.jacobiator_homotopy();
    r.zero("b", &j.h1_defect(), &[n, n, n]);
    let h2 = j.h2_defect();
    // columns of the naturality defect are indexed by the 3-strand arrow space
    let sd = l.space().slot_dim(3);
    for col in 0..h2.cols() {
        let c = h2.block(0, col, m, 1);
        if !c.is_zero() {
            let slot = col / sd;
            let mut radix = vec![n; 3];
            radix[slot] = m;
            let mut tuple = vec![slot];
            tuple.extend(crate::report::decode(col % sd, &radix));
            r.violate("c", tuple, c.col(0));
        }
    }
    r.set("c", true);
    check_pentagon(l, &mut r);
    r
}

fn check_pentagon(l: &Leibniz2Algebra, r: &mut Report) {
    let v = l.space();
    let n = v.dim_obj();
    let b = &l.bracket;
    let br = |x: &[Rat], y: &[Rat]| b.apply(x, y);
    let id = |x: Vec<Rat>| Mor::identity(v, x);
    let j = |x: &[Rat], y: &[Rat], z: &[Rat]| l.jacobiator(x, y, z);
    r.set("d", true);
    for q in 0..n.pow(4) {
        let t = crate::report::decode(q, &[n; 4]);
        let (x, y, z, w) = (unit_vec(n, t[0]), unit_vec(n, t[1]), unit_vec(n, t[2]), unit_vec(n, t[3]));
        let xy = br(&x, &y);
        let zw = br(&z, &w);
        let xz = br(&x, &z);
        let xw = br(&x, &w);
        let yz = br(&y, &z);
        let yw = br(&y, &w);
        let l1 = j(&xy, &z, &w);
        let l2 = b.apply_mor(&j(&x, &y, &w), &id(z.clone())).add(&id(br(&xy, &zw)));
        let l3 = j(&xw, &y, &z).add(&j(&x, &yw, &z)).add(&j(&x, &y, &zw));
        let r1 = b.apply_mor(&j(&x, &y, &z), &id(w.clone()));
        let r2 = j(&xz, &y, &w).add(&j(&x, &yz, &w));
        let extra: Vec<Rat> = br(&xz, &yw).iter().zip(br(&xw, &yz)).map(|(a, b)| a + &b).collect();
        let r3 = b.apply_mor(&j(&x, &z, &w), &id(y.clone())).add(&id(extra)).add(&b.apply_mor(&id(x.clone()), &j(&y, &z, &w)));
        let left = mor_compose(v, &l1, &l2).and_then(|f| mor_compose(v, &f, &l3));
        let right = mor_compose(v, &r1, &r2).and_then(|f| mor_compose(v, &f, &r3));
        match (left, right) {
            (Ok(a), Ok(c)) => {
                if a.arr != c.arr || a.target(v) != c.target(v) {
                    let diff = a.arr.iter().zip(&c.arr).map(|(p, q)| p - q).collect();
                    r.violate("d", t, diff);
                }
            }
            _ => r.violate("d", t, vec![]),
        }
    }
}

/// `e` is central: all four contractions with `e` vanish.
pub fn check_central(l: &Leibniz2Algebra, e: &[Rat]) -> bool {
    central_defects(&l.bracket, e).iter().all(|m| m.is_zero())
}

pub(crate) fn central_defects(b: &BilinearOp, e: &[Rat]) -> [Mat; 4] {
    let (n, m) = (b.space.dim_obj(), b.space.dim_arr());
    let ec = Mat::col_vector(e);
    [
        &b.m_uu * &ec.kron(&Mat::identity(n)),
        &b.m_uu * &Mat::identity(n).kron(&ec),
        &b.m_uw * &ec.kron(&Mat::identity(m)),
        &b.m_wu * &Mat::identity(m).kron(&ec),
    ]
}

/// A Leibniz algebra given by structure constants `n x n²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLeibniz {
    pub bracket: Mat,
}

impl FlatLeibniz {
    pub fn new(bracket: Mat) -> Result<FlatLeibniz> {
        let n = bracket.rows();
        if bracket.cols() != n * n {
            return Err(shape("structure constants must be n x n^2"));
        }
        Ok(FlatLeibniz { bracket })
    }

    pub fn dim(&self) -> usize {
        self.bracket.rows()
    }

    pub fn apply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.bracket.apply(&tensor_vec(x, y))
    }

    /// `[[x,y],z] = [[x,z],y] + [x,[y,z]]` over all basis triples.
    pub fn leibniz_report(&self) -> Report {
        let n = self.dim();
        let mut r = Report::new();
        r.set("leibniz", true);
        for t in 0..n * n * n {
            let k = crate::report::decode(t, &[n, n, n]);
            let (x, y, z) = (unit_vec(n, k[0]), unit_vec(n, k[1]), unit_vec(n, k[2]));
            let lhs = self.apply(&self.apply(&x, &y), &z);
            let a = self.apply(&self.apply(&x, &z), &y);
            let b = self.apply(&x, &self.apply(&y, &z));
            let diff: Vec<Rat> = lhs.iter().zip(a.iter().zip(&b)).map(|(l, (a, b))| &(l - a) - b).collect();
            if diff.iter().any(|d| !d.is_zero()) {
                r.violate("leibniz", k, diff);
            }
        }
        r
    }

    pub fn is_leibniz(&self) -> bool {
        self.leibniz_report().passed()
    }

    pub fn is_central(&self, e: &[Rat]) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let x = unit_vec(n, i);
            self.apply(e, &x).iter().all(|v| v.is_zero()) && self.apply(&x, e).iter().all(|v| v.is_zero())
        })
    }

    /// The same algebra viewed as a Leibniz 2-algebra with `W = 0`.
    pub fn to_leibniz2(&self) -> Leibniz2Algebra {
        let n = self.dim();
        let space = TwoVec::new(Mat::zeros(n, 0));
        let mut b = BilinearOp::zero(&space);
        b.m_uu = self.bracket.clone();
        Leibniz2Algebra::new(b, Mat::zeros(0, n * n * n)).unwrap()
    }
}

/// The 2-algebra on `g` with `W = 𝕂`, `d = 0` and Jacobiator `ω([x,y],z)`.
pub fn example_omega(g: &FlatLeibniz, e: &[Rat], omega: &Mat) -> Result<(Leibniz2Algebra, Vec<Rat>)> {
    let n = g.dim();
    if omega.shape() != (n, n) || e.len() != n {
        return Err(shape("ω must be n x n and e of length n"));
    }
    if !g.is_leibniz() {
        return Err(Error::Structure("g violates the Leibniz identity".into()));
    }
    if !g.is_central(e) {
        return Err(Error::Structure("e is not central in g".into()));
    }
    if omega.transpose() != -omega {
        return Err(Error::Structure("ω is not skew-symmetric".into()));
    }
    let form = |a: &[Rat], b: &[Rat]| -> Rat {
        omega.apply(b).iter().zip(a).fold(Rat::zero(), |s, (p, q)| s + p * q)
    };
    for t in 0..n * n * n {
        let k = crate::report::decode(t, &[n, n, n]);
        let (x, y, z) = (unit_vec(n, k[0]), unit_vec(n, k[1]), unit_vec(n, k[2]));
        let lhs = form(&g.apply(&x, &y), &z);
        let s: Vec<Rat> = g.apply(&x, &z).iter().zip(g.apply(&z, &x)).map(|(a, b)| a + &b).collect();
        if lhs != form(&y, &s) {
            return Err(Error::Structure(format!("invariance fails at basis triple {k:?}")));
        }
    }
    let space = TwoVec::new(Mat::zeros(n, 1));
    let mut b = BilinearOp::zero(&space);
    b.m_uu = g.bracket.clone();
    let flat = Mat::from_triplets(1, n * n, omega.entries().map(|(i, j, v)| (0, i * n + j, v.clone())));
    let l3 = &flat * &g.bracket.kron(&Mat::identity(n));
    Ok((Leibniz2Algebra::new(b, l3)?, e.to_vec()))
}

/// `𝕂 ⊕ L` with zero 𝕂-components; the central object is `(1, 0)`.
pub fn trivial_central_extension(l: &Leibniz2Algebra) -> (Leibniz2Algebra, Vec<Rat>) {
    let v = l.space();
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let inc = Mat::vstack(&[&Mat::zeros(1, n), &Mat::identity(n)]).unwrap();
    let pr = inc.transpose();
    let d = &inc * v.d();
    let space = TwoVec::new(d);
    let b = &l.bracket;
    let i_m = Mat::identity(m);
    let bracket = BilinearOp {
        space: space.clone(),
        m_uu: &(&inc * &b.m_uu) * &pr.kron(&pr),
        m_wu: &b.m_wu * &i_m.kron(&pr),
        m_uw: &b.m_uw * &pr.kron(&i_m),
    };
    let l3 = &l.l3 * &kron_all(&[&pr, &pr, &pr]);
    (Leibniz2Algebra { bracket, l3 }, unit_vec(n + 1, 0))
}

/// Decategorified Leibniz algebra on `coker d`.
#[derive(Clone, Debug)]
pub struct DecatLeibniz {
    pub algebra: FlatLeibniz,
    pub proj: Mat,
    pub section: Mat,
    pub central: Option<Vec<Rat>>,
}

pub fn decategorify_leibniz(l: &Leibniz2Algebra, central: Option<&[Rat]>) -> DecatLeibniz {
    let (_, proj, section) = crate::twovec::decategorify_space(l.space());
    let bracket = &(&proj * &l.bracket.m_uu) * &section.kron(&section);
    DecatLeibniz {
        algebra: FlatLeibniz { bracket },
        central: central.map(|e| proj.apply(e)),
        proj,
        section,
    }
}
