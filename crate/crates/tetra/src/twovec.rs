//! 2-vector spaces as 2-term complexes `d: W -> U`, with linear functors
//! (chain maps) and linear natural transformations (homotopies) between
//! tensor powers.

use crate::error::{shape, Error, Result};
use crate::ratmat::{coker_projection, kron_all, pow, Mat, Rat};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

struct Inner {
    d: Mat,
    dk: Mutex<HashMap<usize, Arc<Mat>>>,
}

/// A 2-vector space: objects `U`, arrow parts `W`, morphisms `U ⊕ W`.
#[derive(Clone)]
pub struct TwoVec(Arc<Inner>);

impl PartialEq for TwoVec {
    fn eq(&self, o: &TwoVec) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.d == o.0.d
    }
}
impl Eq for TwoVec {}

impl fmt::Debug for TwoVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoVec(U={}, W={})", self.dim_obj(), self.dim_arr())
    }
}

pub fn make_two_vec(d: Mat) -> TwoVec {
    TwoVec::new(d)
}

impl TwoVec {
    pub fn new(d: Mat) -> TwoVec {
        TwoVec(Arc::new(Inner { d, dk: Mutex::new(HashMap::new()) }))
    }

    pub fn dim_obj(&self) -> usize {
        self.0.d.rows()
    }

    pub fn dim_arr(&self) -> usize {
        self.0.d.cols()
    }

    pub fn d(&self) -> &Mat {
        &self.0.d
    }

    /// Source map `U ⊕ W -> U`.
    pub fn s_mat(&self) -> Mat {
        Mat::hstack(&[&Mat::identity(self.dim_obj()), &Mat::zeros(self.dim_obj(), self.dim_arr())]).unwrap()
    }

    /// Target map `U ⊕ W -> U`.
    pub fn t_mat(&self) -> Mat {
        Mat::hstack(&[&Mat::identity(self.dim_obj()), self.d()]).unwrap()
    }

    /// Identity-assigning map `U -> U ⊕ W`.
    pub fn iota_mat(&self) -> Mat {
        Mat::vstack(&[&Mat::identity(self.dim_obj()), &Mat::zeros(self.dim_arr(), self.dim_obj())]).unwrap()
    }

    pub fn obj_dim(&self, k: usize) -> usize {
        pow(self.dim_obj(), k)
    }

    /// Dimension of one arrow slot `U^(i-1) ⊗ W ⊗ U^(k-i)`.
    pub fn slot_dim(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.dim_arr() * pow(self.dim_obj(), k - 1)
        }
    }

    pub fn arr_dim(&self, k: usize) -> usize {
        k * self.slot_dim(k)
    }

    /// Differential of the `k`-fold tensor power; cached per space.
    pub fn d_k(&self, k: usize) -> Arc<Mat> {
        if let Some(m) = self.0.dk.lock().unwrap().get(&k) {
            return m.clone();
        }
        let n = self.dim_obj();
        let mut blocks = Vec::with_capacity(k);
        for i in 1..=k {
            blocks.push(kron_all(&[&Mat::identity(pow(n, i - 1)), self.d(), &Mat::identity(pow(n, k - i))]));
        }
        let refs: Vec<&Mat> = blocks.iter().collect();
        let m = if k == 0 { Mat::zeros(1, 0) } else { Mat::hstack(&refs).unwrap() };
        let m = Arc::new(m);
        self.0.dk.lock().unwrap().insert(k, m.clone());
        m
    }

    pub fn tensor(&self, k: usize) -> TensorCtx {
        TensorCtx { base: self.clone(), strands: k }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"dim_obj": self.dim_obj(), "dim_arr": self.dim_arr(), "d": self.d().to_json()})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TwoVec> {
        let n = json_count(v, "dim_obj")?;
        let m = json_count(v, "dim_arr")?;
        let d = v.get("d").ok_or_else(|| Error::Input("space: missing field d".into()))?;
        Ok(TwoVec::new(Mat::from_json(d, n, m)?))
    }
}

pub(crate) fn json_count(v: &serde_json::Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(|x| x.as_u64())
        .map(|x| x as usize)
        .ok_or_else(|| Error::Input(format!("missing or invalid count field {key}")))
}

/// `tensor_power(V, n)`.
pub fn tensor_power(v: &TwoVec, n: usize) -> Result<TensorCtx> {
    if n == 0 {
        return Err(Error::Input("tensor power needs at least one strand".into()));
    }
    Ok(v.tensor(n))
}

/// The `strands`-fold tensor power of a base space (0 strands is the unit 𝕂).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorCtx {
    pub base: TwoVec,
    pub strands: usize,
}

impl TensorCtx {
    pub fn obj_dim(&self) -> usize {
        self.base.obj_dim(self.strands)
    }
    pub fn arr_dim(&self) -> usize {
        self.base.arr_dim(self.strands)
    }
    pub fn d_n(&self) -> Arc<Mat> {
        self.base.d_k(self.strands)
    }
    pub fn as_two_vec(&self) -> TwoVec {
        TwoVec::new((*self.d_n()).clone())
    }
}

/// A morphism `src -> src + d·arr` of a 2-vector space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mor {
    pub src: Vec<Rat>,
    pub arr: Vec<Rat>,
}

fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Mor {
    pub fn new(space: &TwoVec, src: Vec<Rat>, arr: Vec<Rat>) -> Result<Mor> {
        if src.len() != space.dim_obj() || arr.len() != space.dim_arr() {
            return Err(shape("morphism components do not match the space"));
        }
        Ok(Mor { src, arr })
    }

    pub fn identity(space: &TwoVec, u: Vec<Rat>) -> Mor {
        Mor { src: u, arr: vec![Rat::zero(); space.dim_arr()] }
    }

    pub fn target(&self, space: &TwoVec) -> Vec<Rat> {
        vadd(&self.src, &space.d().apply(&self.arr))
    }

    pub fn is_identity(&self) -> bool {
        self.arr.iter().all(|v| v.is_zero())
    }

    /// Pointwise sum; the linear structure of `V_1`.
    pub fn add(&self, o: &Mor) -> Mor {
        Mor { src: vadd(&self.src, &o.src), arr: vadd(&self.arr, &o.arr) }
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn mor_compose(space: &TwoVec, f: &Mor, g: &Mor) -> Result<Mor> {
    if f.target(space) != g.src {
        return Err(Error::Composability("target of the first morphism is not the source of the second".into()));
    }
    Ok(Mor { src: f.src.clone(), arr: vadd(&f.arr, &g.arr) })
}

pub fn mor_invert(space: &TwoVec, f: &Mor) -> Mor {
    Mor { src: f.target(space), arr: f.arr.iter().map(|v| -v).collect() }
}

/// Isomorphism classes of objects: `coker d` with a projection and section.
pub fn decategorify_space(v: &TwoVec) -> (usize, Mat, Mat) {
    let (proj, section) = coker_projection(v.d());
    (proj.rows(), proj, section)
}

/// A linear functor `V^{⊗dom} -> V^{⊗cod}` in the complex model.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub base: TwoVec,
    pub dom: usize,
    pub cod: usize,
    pub f0: Mat,
    pub fw: Mat,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({} -> {} strands)\nf0: {:?}fw: {:?}", self.dom, self.cod, self.f0, self.fw)
    }
}

impl ChainMap {
    /// Validated constructor.
    pub fn new(base: &TwoVec, dom: usize, cod: usize, f0: Mat, fw: Mat) -> Result<ChainMap> {
        let c = ChainMap::raw(base, dom, cod, f0, fw)?;
        if !c.is_chain() {
            return Err(Error::Structure("chain condition f0·d = d·fw fails".into()));
        }
        Ok(c)
    }

    /// Shape-checked constructor without the chain condition.
    pub fn raw(base: &TwoVec, dom: usize, cod: usize, f0: Mat, fw: Mat) -> Result<ChainMap> {
        if f0.shape() != (base.obj_dim(cod), base.obj_dim(dom)) {
            return Err(shape(format!("f0 is {:?}, expected {:?}", f0.shape(), (base.obj_dim(cod), base.obj_dim(dom)))));
        }
        if fw.shape() != (base.arr_dim(cod), base.arr_dim(dom)) {
            return Err(shape(format!("fw is {:?}, expected {:?}", fw.shape(), (base.arr_dim(cod), base.arr_dim(dom)))));
        }
        Ok(ChainMap { base: base.clone(), dom, cod, f0, fw })
    }

    pub fn identity(base: &TwoVec, k: usize) -> ChainMap {
        ChainMap {
            base: base.clone(),
            dom: k,
            cod: k,
            f0: Mat::identity(base.obj_dim(k)),
            fw: Mat::identity(base.arr_dim(k)),
        }
    }

    pub fn zero(base: &TwoVec, dom: usize, cod: usize) -> ChainMap {
        ChainMap {
            base: base.clone(),
            dom,
            cod,
            f0: Mat::zeros(base.obj_dim(cod), base.obj_dim(dom)),
            fw: Mat::zeros(base.arr_dim(cod), base.arr_dim(dom)),
        }
    }

    /// Residual `f0·d_dom - d_cod·fw`.
    pub fn chain_defect(&self) -> Mat {
        &(&self.f0 * &self.base.d_k(self.dom)) - &(&*self.base.d_k(self.cod) * &self.fw)
    }

    pub fn is_chain(&self) -> bool {
        self.chain_defect().is_zero()
    }

    fn same_type(&self, o: &ChainMap) -> Result<()> {
        if self.base != o.base || self.dom != o.dom || self.cod != o.cod {
            return Err(shape("chain maps of different types"));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &ChainMap) -> Result<ChainMap> {
        self.same_type(o)?;
        Ok(ChainMap { f0: &self.f0 + &o.f0, fw: &self.fw + &o.fw, ..self.clone() })
    }

    pub fn try_sub(&self, o: &ChainMap) -> Result<ChainMap> {
        self.same_type(o)?;
        Ok(ChainMap { f0: &self.f0 - &o.f0, fw: &self.fw - &o.fw, ..self.clone() })
    }

    pub fn scale(&self, s: &Rat) -> ChainMap {
        ChainMap { f0: self.f0.scale(s), fw: self.fw.scale(s), ..self.clone() }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        compose_chain(self, next).expect("chain maps compose")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"strands": self.dom, "cod_strands": self.cod, "f0": self.f0.to_json(), "fw": self.fw.to_json()})
    }

    pub fn from_json(base: &TwoVec, v: &serde_json::Value) -> Result<ChainMap> {
        let dom = json_count(v, "strands")?;
        let cod = v.get("cod_strands").and_then(|x| x.as_u64()).map(|x| x as usize).unwrap_or(dom);
        let f0 = Mat::from_json(field(v, "f0")?, base.obj_dim(cod), base.obj_dim(dom))?;
        let fw = Mat::from_json(field(v, "fw")?, base.arr_dim(cod), base.arr_dim(dom))?;
        ChainMap::raw(base, dom, cod, f0, fw)
    }
}

pub(crate) fn field<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a serde_json::Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("missing field {key}")))
}

/// `G ∘ F` (apply `F` first).
pub fn compose_chain(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    if f.base != g.base || f.cod != g.dom {
        return Err(shape(format!("cannot compose {}->{} with {}->{}", f.dom, f.cod, g.dom, g.cod)));
    }
    Ok(ChainMap { base: f.base.clone(), dom: f.dom, cod: g.cod, f0: &g.f0 * &f.f0, fw: &g.fw * &f.fw })
}

/// Composite of a word written left to right; the rightmost factor applies first.
pub fn compose_word(word: &[&ChainMap]) -> ChainMap {
    let mut it = word.iter().rev();
    let first = (*it.next().expect("empty word")).clone();
    it.fold(first, |acc, g| acc.then(g))
}

/// `Id^{⊗(pos-1)} ⊗ F ⊗ Id^{⊗rest}` on `n` input strands (`pos` is 1-based).
pub fn lift_chain_map(f: &ChainMap, pos: usize, n: usize) -> Result<ChainMap> {
    if pos == 0 || pos - 1 + f.dom > n {
        return Err(Error::Input(format!("window at {pos} of width {} does not fit {n} strands", f.dom)));
    }
    let v = &f.base;
    let (nu, a, b) = (v.dim_obj(), f.dom, f.cod);
    let p = pos - 1;
    let q = n - p - a;
    if p == 0 && q == 0 {
        return Ok(f.clone());
    }
    let out = p + b + q;
    let i_p = Mat::identity(pow(nu, p));
    let i_q = Mat::identity(pow(nu, q));
    let f0 = kron_all(&[&i_p, &f.f0, &i_q]);
    let (si, so) = (v.slot_dim(n), v.slot_dim(out));
    let mut trip: Vec<(usize, usize, Rat)> = Vec::new();
    let mut put = |blk: &Mat, in_slot: usize, out_slot: usize| {
        for (i, j, x) in blk.entries() {
            trip.push((out_slot * so + i, in_slot * si + j, x.clone()));
        }
    };
    if p > 0 {
        let left = kron_all(&[&Mat::identity(v.dim_arr() * pow(nu, p - 1)), &f.f0, &i_q]);
        for s in 0..p {
            put(&left, s, s);
        }
    }
    let (wa, wb) = (v.slot_dim(a), v.slot_dim(b));
    for j in 0..a {
        for jp in 0..b {
            let blk = f.fw.block(jp * wb, j * wa, wb, wa);
            if !blk.is_zero() {
                put(&kron_all(&[&i_p, &blk, &i_q]), p + j, p + jp);
            }
        }
    }
    if q > 0 {
        let right = kron_all(&[&i_p, &f.f0, &Mat::identity(v.dim_arr() * pow(nu, q - 1))]);
        for r in 0..q {
            put(&right, p + a + r, p + b + r);
        }
    }
    let fw = Mat::from_triplets(v.arr_dim(out), v.arr_dim(n), trip);
    Ok(ChainMap { base: v.clone(), dom: n, cod: out, f0, fw })
}

fn encode(digits: &[usize], radix: &[usize]) -> usize {
    digits.iter().zip(radix).fold(0, |acc, (d, r)| acc * r + d)
}

fn for_each_index(radix: &[usize], mut f: impl FnMut(&[usize])) {
    if radix.contains(&0) {
        return;
    }
    let mut idx = vec![0; radix.len()];
    loop {
        f(&idx);
        let mut k = radix.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < radix[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Strand permutation: input strand `i` moves to output position `perm[i]` (0-based).
pub fn permute_chain_map(v: &TwoVec, perm: &[usize]) -> Result<ChainMap> {
    let k = perm.len();
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || seen[p] {
            return Err(Error::Input(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let mut obj = Vec::new();
    for_each_index(&vec![n; k], |u| {
        let mut w = vec![0; k];
        for i in 0..k {
            w[perm[i]] = u[i];
        }
        obj.push((encode(&w, &vec![n; k]), encode(u, &vec![n; k]), Rat::one()));
    });
    let sd = v.slot_dim(k);
    let mut arr = Vec::new();
    for s in 0..k {
        let mut rin = vec![n; k];
        rin[s] = m;
        let mut rout = vec![n; k];
        rout[perm[s]] = m;
        for_each_index(&rin, |u| {
            let mut w = vec![0; k];
            for i in 0..k {
                w[perm[i]] = u[i];
            }
            arr.push((perm[s] * sd + encode(&w, &rout), s * sd + encode(u, &rin), Rat::one()));
        });
    }
    Ok(ChainMap {
        base: v.clone(),
        dom: k,
        cod: k,
        f0: Mat::from_triplets(v.obj_dim(k), v.obj_dim(k), obj),
        fw: Mat::from_triplets(v.arr_dim(k), v.arr_dim(k), arr),
    })
}

/// Exchange of strands `pos` and `pos+1` (1-based) among `n`.
pub fn swap_chain_map(v: &TwoVec, pos: usize, n: usize) -> Result<ChainMap> {
    if pos == 0 || pos + 1 > n {
        return Err(Error::Input(format!("cannot swap strands {pos},{} of {n}", pos + 1)));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(pos - 1, pos);
    permute_chain_map(v, &perm)
}

/// A linear natural transformation `from ⇒ to`; `h` sends each basis object
/// to the arrow part of its component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homotopy {
    pub from: ChainMap,
    pub to: ChainMap,
    pub h: Mat,
}

impl Homotopy {
    pub fn new(from: ChainMap, to: ChainMap, h: Mat) -> Result<Homotopy> {
        let y = Homotopy::raw(from, to, h)?;
        if !y.h1_defect().is_zero() {
            return Err(Error::Structure("components do not run from the source functor to the target functor".into()));
        }
        if !y.h2_defect().is_zero() {
            return Err(Error::Structure("naturality fails".into()));
        }
        Ok(y)
    }

    pub fn raw(from: ChainMap, to: ChainMap, h: Mat) -> Result<Homotopy> {
        from.same_type(&to)?;
        if h.shape() != (from.base.arr_dim(from.cod), from.base.obj_dim(from.dom)) {
            return Err(shape(format!("homotopy matrix is {:?}", h.shape())));
        }
        Ok(Homotopy { from, to, h })
    }

    pub fn zero(f: &ChainMap) -> Homotopy {
        let h = Mat::zeros(f.base.arr_dim(f.cod), f.base.obj_dim(f.dom));
        Homotopy { from: f.clone(), to: f.clone(), h }
    }

    /// `d·h - (G.f0 - F.f0)`.
    pub fn h1_defect(&self) -> Mat {
        let dh = &*self.from.base.d_k(self.from.cod) * &self.h;
        &dh - &(&self.to.f0 - &self.from.f0)
    }

    /// `h·d - (G.fw - F.fw)`.
    pub fn h2_defect(&self) -> Mat {
        let hd = &self.h * &*self.from.base.d_k(self.from.dom);
        &hd - &(&self.to.fw - &self.from.fw)
    }

    pub fn is_valid(&self) -> bool {
        self.from.is_chain() && self.to.is_chain() && self.h1_defect().is_zero() && self.h2_defect().is_zero()
    }

    /// Component at basis object `i` of the domain.
    pub fn component(&self, i: usize) -> Mor {
        Mor { src: self.from.f0.col(i), arr: self.h.col(i) }
    }

    /// Pointwise inverse `to ⇒ from`.
    pub fn inverse(&self) -> Homotopy {
        Homotopy { from: self.to.clone(), to: self.from.clone(), h: -&self.h }
    }
}

/// `post ∘ h ∘ pre`; either side may be omitted.
pub fn whisker(h: &Homotopy, pre: Option<&ChainMap>, post: Option<&ChainMap>) -> Result<Homotopy> {
    let mut out = h.clone();
    if let Some(p) = pre {
        if p.base != h.from.base || p.cod != h.from.dom {
            return Err(shape("pre-whiskering functor does not land in the domain"));
        }
        out = Homotopy { from: compose_chain(p, &out.from)?, to: compose_chain(p, &out.to)?, h: &out.h * &p.f0 };
    }
    if let Some(q) = post {
        if q.base != h.from.base || q.dom != h.from.cod {
            return Err(shape("post-whiskering functor does not start at the codomain"));
        }
        out = Homotopy { from: compose_chain(&out.from, q)?, to: compose_chain(&out.to, q)?, h: &q.fw * &out.h };
    }
    Ok(out)
}

pub fn vcompose_homotopy(h1: &Homotopy, h2: &Homotopy) -> Result<Homotopy> {
    if h1.to != h2.from {
        return Err(Error::Composability("end functor of the first homotopy differs from the start of the second".into()));
    }
    Ok(Homotopy { from: h1.from.clone(), to: h2.to.clone(), h: &h1.h + &h2.h })
}

/// `Id^{⊗(pos-1)} ⊗ Y ⊗ Id^{⊗rest}` on `n` input strands.
pub fn lift_homotopy(y: &Homotopy, pos: usize, n: usize) -> Result<Homotopy> {
    let from = lift_chain_map(&y.from, pos, n)?;
    let to = lift_chain_map(&y.to, pos, n)?;
    let v = &y.from.base;
    let (nu, a, b) = (v.dim_obj(), y.from.dom, y.from.cod);
    let p = pos - 1;
    let q = n - p - a;
    let out = p + b + q;
    let i_p = Mat::identity(pow(nu, p));
    let i_q = Mat::identity(pow(nu, q));
    let (wb, so) = (v.slot_dim(b), v.slot_dim(out));
    let mut trip = Vec::new();
    for jp in 0..b {
        let blk = y.h.block(jp * wb, 0, wb, y.h.cols());
        if blk.is_zero() {
            continue;
        }
        for (i, j, x) in kron_all(&[&i_p, &blk, &i_q]).entries() {
            trip.push(((p + jp) * so + i, j, x.clone()));
        }
    }
    let h = Mat::from_triplets(v.arr_dim(out), v.obj_dim(n), trip);
    Ok(Homotopy { from, to, h })
}

/// Object part of a strand permutation on `k` strands of dimension `n`.
pub fn perm_f0(n: usize, perm: &[usize]) -> Mat {
    let k = perm.len();
    let radix = vec![n; k];
    let mut obj = Vec::new();
    for_each_index(&radix, |u| {
        let mut w = vec![0; k];
        for i in 0..k {
            w[perm[i]] = u[i];
        }
        obj.push((encode(&w, &radix), encode(u, &radix), Rat::one()));
    });
    Mat::from_triplets(pow(n, k), pow(n, k), obj)
}

/// `kron(I_{n^p}, f0, I_{n^q})`.
pub fn lift_f0(f0: &Mat, n: usize, p: usize, q: usize) -> Mat {
    kron_all(&[&Mat::identity(pow(n, p)), f0, &Mat::identity(pow(n, q))])
}

/// Boundary from the degree-2 part `⊕_{i<j} U..W_i..W_j..U` of the tensor
/// complex on `k` strands into the arrow slots:
/// `w_i⊗w_j ↦ (d w_i)⊗w_j − w_i⊗(d w_j)`.
pub fn boundary2(v: &TwoVec, k: usize) -> Mat {
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let d = v.d();
    let sd = v.slot_dim(k);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let block = if k >= 2 { m * m * pow(n, k - 2) } else { 0 };
    let mut trip = Vec::new();
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        let mut radix = vec![n; k];
        radix[i] = m;
        radix[j] = m;
        let mut col = 0;
        for_each_index(&radix, |t| {
            let c = pi * block + col;
            col += 1;
            let mut w = t.to_vec();
            let mut rj = vec![n; k];
            rj[j] = m;
            for (u, x) in d.col(t[i]).into_iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                w[i] = u;
                trip.push((j * sd + encode(&w, &rj), c, x));
            }
            let mut w = t.to_vec();
            let mut ri = vec![n; k];
            ri[i] = m;
            for (u, x) in d.col(t[j]).into_iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                w[j] = u;
                trip.push((i * sd + encode(&w, &ri), c, -x));
            }
        });
    }
    Mat::from_triplets(v.arr_dim(k), pairs.len() * block, trip)
}
