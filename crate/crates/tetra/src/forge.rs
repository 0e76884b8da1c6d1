//! Instance generation: linear solvers for `l3` and `𝔯`, seeded sampling and
//! named fixtures.

use crate::error::{Error, Result};
use crate::finrack::{conjugation_rack, left_translation, two_group_from_crossed_module, z2_z3_crossed_module, FinBifunctor, FinCat};
use crate::leibniz2::{check_central, check_leibniz2, trivial_central_extension, BilinearOp, FlatLeibniz, Leibniz2Algebra};
use crate::rack2::{check_linear_2rack, rack_from_trivial_extension, Coproduct, Linear2Rack};
use crate::ratmat::{inverse, kron_all, pow, solve_affine, AffineSpace, Mat, Rat};
use crate::split::{make_splitting, rack_from_splitting};
use crate::twovec::{lift_f0, perm_f0, TwoVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

type Row = Vec<(usize, Rat)>;

/// Linear system in the entries of an unknown `rows x cols` matrix `X`
/// (row-major unknowns).
struct System {
    rows: usize,
    cols: usize,
    eqs: Vec<Row>,
    rhs: Vec<Rat>,
}

impl System {
    fn new(rows: usize, cols: usize) -> System {
        System { rows, cols, eqs: Vec::new(), rhs: Vec::new() }
    }

    fn nvars(&self) -> usize {
        self.rows * self.cols
    }

    /// `A·X = B`.
    fn left(&mut self, a: &Mat, b: &Mat) {
        for i in 0..a.rows() {
            for c in 0..self.cols {
                let row: Row = a.row(i).map(|(k, v)| (k * self.cols + c, v.clone())).collect();
                self.push(row, b.get(i, c));
            }
        }
    }

    /// `X·A = B`.
    fn right(&mut self, a: &Mat, b: &Mat) {
        let at = a.transpose();
        for k in 0..self.rows {
            for j in 0..a.cols() {
                let row: Row = at.row(j).map(|(c, v)| (k * self.cols + c, v.clone())).collect();
                self.push(row, b.get(k, j));
            }
        }
    }

    /// `f(X) = 0` for a homogeneous linear `f`, sampled at unit matrices.
    fn homogeneous(&mut self, f: impl Fn(&Mat) -> Mat) {
        let mut acc: BTreeMap<(usize, usize), Row> = BTreeMap::new();
        for k in 0..self.rows {
            for c in 0..self.cols {
                let unit = Mat::from_triplets(self.rows, self.cols, [(k, c, Rat::one())]);
                for (i, j, v) in f(&unit).entries() {
                    acc.entry((i, j)).or_default().push((k * self.cols + c, v.clone()));
                }
            }
        }
        for (_, row) in acc {
            self.push(row, Rat::zero());
        }
    }

    fn push(&mut self, row: Row, b: Rat) {
        if row.is_empty() && b.is_zero() {
            return;
        }
        self.eqs.push(row);
        self.rhs.push(b);
    }

    fn solve(self) -> Option<AffineSpace> {
        solve_affine(self.nvars(), self.eqs, self.rhs)
    }
}

/// Reshapes a solution vector to a matrix.
pub fn to_matrix(x: &[Rat], rows: usize, cols: usize) -> Mat {
    Mat::from_triplets(rows, cols, x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k / cols, k % cols, v.clone())))
}

fn l3_system(bracket: &BilinearOp) -> System {
    let v = &bracket.space;
    let (n, m) = (v.dim_obj(), v.dim_arr());
    let n3 = pow(n, 3);
    let mut sys = System::new(m, n3);
    let j = Leibniz2Algebra { bracket: bracket.clone(), l3: Mat::zeros(m, n3) }.jacobiator_homotopy();
    sys.left(v.d(), &(&j.to.f0 - &j.from.f0));
    sys.right(&v.d_k(3), &(&j.to.fw - &j.from.fw));
    let i = Mat::identity(n);
    let mu = &bracket.m_uu;
    let m1 = kron_all(&[mu, &i, &i]);
    let m2 = kron_all(&[&i, mu, &i]);
    let m3 = kron_all(&[&i, &i, mu]);
    let s = |p: &[usize]| perm_f0(n, p);
    let (s_xywz, s_xwyz, s_xzyw, s_xzwy) = (s(&[0, 1, 3, 2]), s(&[0, 2, 3, 1]), s(&[0, 2, 1, 3]), s(&[0, 3, 1, 2]));
    let (mwu, muw) = (&bracket.m_wu, &bracket.m_uw);
    sys.homogeneous(|x| {
        let wu = mwu * &x.kron(&i);
        let left = &(&(x * &m1) + &(&wu * &s_xywz))
            + &(&(&(&(x * &m1) * &s_xwyz) + &(&(x * &m2) * &s_xywz)) + &(x * &m3));
        let right = &(&wu + &(&(&(x * &m1) * &s_xzyw) + &(x * &m2))) + &(&(&wu * &s_xzwy) + &(muw * &i.kron(x)));
        &left - &right
    });
    sys
}

/// All `l3` making `check_leibniz2` pass for the given bracket.
pub fn solve_l3(bracket: &BilinearOp) -> Option<AffineSpace> {
    l3_system(bracket).solve()
}

/// As [`solve_l3`], with `l3` also vanishing whenever an argument is `e`.
pub fn solve_l3_descending(bracket: &BilinearOp, e: &[Rat]) -> Option<AffineSpace> {
    let mut sys = l3_system(bracket);
    vanish_on(&mut sys, bracket.space.dim_obj(), e);
    sys.solve()
}

fn vanish_on(sys: &mut System, n: usize, e: &[Rat]) {
    let ec = Mat::col_vector(e);
    let i = Mat::identity(n);
    for ins in [kron_all(&[&ec, &i, &i]), kron_all(&[&i, &ec, &i]), kron_all(&[&i, &i, &ec])] {
        let zero = Mat::zeros(sys.rows, ins.cols());
        sys.right(&ins, &zero);
    }
}

/// All `𝔯` making (c7) and (c8) hold for fixed `Δ, ε, ◁, ◁̃`.
pub fn solve_r(space: &TwoVec, delta: &Coproduct, eps: &Mat, lhd: &BilinearOp, lhd_inv: &BilinearOp) -> Result<Option<AffineSpace>> {
    Ok(r_system(space, delta, eps, lhd, lhd_inv)?.solve())
}

/// As [`solve_r`], with `𝔯` also vanishing whenever an argument is `unit`.
pub fn solve_r_descending(rk: &Linear2Rack, unit: &[Rat]) -> Result<Option<AffineSpace>> {
    let mut sys = r_system(&rk.space, &rk.delta, &rk.eps, &rk.lhd, &rk.lhd_inv)?;
    vanish_on(&mut sys, rk.n(), unit);
    Ok(sys.solve())
}

fn r_system(space: &TwoVec, delta: &Coproduct, eps: &Mat, lhd: &BilinearOp, lhd_inv: &BilinearOp) -> Result<System> {
    let (n, m) = (space.dim_obj(), space.dim_arr());
    let n3 = pow(n, 3);
    let rk = Linear2Rack::new(space, delta.clone(), eps.clone(), lhd.clone(), lhd_inv.clone(), Mat::zeros(m, n3))?;
    let p = rk.distributor_source();
    let q = rk.distributor_target();
    let mut sys = System::new(m, n3);
    sys.left(space.d(), &(&q.f0 - &p.f0));
    sys.right(&space.d_k(3), &(&q.fw - &p.fw));

    let i = Mat::identity(n);
    let (l0, d0) = (&lhd.m_uu, &delta.d0);
    let (p0, q0) = (&p.f0, &q.f0);
    let pre2 = &(&kron_all(&[l0, l0, &i]) * &perm_f0(n, &[0, 2, 1, 3, 4])) * &lift_f0(d0, n, 2, 1);
    let pre3 = &(&perm_f0(n, &[0, 3, 1, 4, 2, 5]) * &lift_f0(d0, n, 4, 0)) * &lift_f0(d0, n, 2, 1);
    let pre_f2 = &perm_f0(n, &[0, 1, 3, 2, 4]) * &lift_f0(d0, n, 3, 0);
    let pre6 = &(&(&kron_all(&[l0, l0, l0]) * &perm_f0(n, &[0, 2, 4, 1, 3, 5])) * &lift_f0(d0, n, 3, 1)) * &lift_f0(d0, n, 3, 0);
    let f1 = kron_all(&[l0, &i, &i]);
    let (mwu, muw) = (&lhd.m_wu, &lhd.m_uw);
    sys.homogeneous(|x| {
        let e1 = mwu * &x.kron(&i);
        let e2 = x * &pre2;
        let e3 = &(&(mwu * &x.kron(q0)) + &(muw * &p0.kron(x))) * &pre3;
        let g1 = x * &f1;
        let g2 = &(mwu * &x.kron(l0)) * &pre_f2;
        let g3 = x * &pre6;
        &(&(&e1 + &e2) + &e3) - &(&(&g1 + &g2) + &g3)
    });
    Ok(sys)
}

/// A sampled instance.
#[derive(Clone, Debug)]
pub enum Sample {
    Leibniz2 { algebra: Leibniz2Algebra, central: Vec<Rat> },
    Rack(Linear2Rack),
}

impl Sample {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Sample::Leibniz2 { algebra, central } => algebra.to_json(Some(central)),
            Sample::Rack(r) => r.to_json(),
        }
    }
}

/// A central Leibniz 2-algebra together with a section of `U -> U/⟨e⟩`.
#[derive(Clone, Debug)]
pub struct SplitSample {
    pub algebra: Leibniz2Algebra,
    pub central: Vec<Rat>,
    pub sigma0: Mat,
}

struct Gen {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Gen {
    fn coef(&mut self) -> Rat {
        Rat::int(self.rng.gen_range(-self.bound..=self.bound))
    }

    fn nonzero(&mut self) -> Rat {
        loop {
            let c = self.coef();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Random unimodular matrix as a product of unit triangular factors.
    fn unimodular(&mut self, n: usize) -> Mat {
        let mut lo = Vec::new();
        let mut up = Vec::new();
        for i in 0..n {
            lo.push((i, i, Rat::one()));
            up.push((i, i, Rat::one()));
            for j in 0..i {
                if self.rng.gen_bool(0.5) {
                    lo.push((i, j, self.coef()));
                }
                if self.rng.gen_bool(0.5) {
                    up.push((j, i, self.coef()));
                }
            }
        }
        &Mat::from_triplets(n, n, lo) * &Mat::from_triplets(n, n, up)
    }

    fn point(&mut self, sol: &AffineSpace) -> Vec<Rat> {
        let coeffs: Vec<Rat> = (0..sol.dim()).map(|_| self.coef()).collect();
        sol.point(&coeffs)
    }
}

/// Block layout of the nilpotent family: `U = ⟨e⟩ ⊕ Z' ⊕ A`, `W = W1 ⊕ W2`.
struct Layout {
    n: usize,
    m: usize,
    z: usize,
    w2: usize,
}

impl Layout {
    fn a_range(&self) -> std::ops::Range<usize> {
        1 + self.z..self.n
    }
}

/// Bracket `A ⊗ A -> target rows`, `d: W1 -> Z'`, actions `W ⊗ A -> W2`,
/// `A ⊗ W -> W2` vanishing on `W2`.
fn nilpotent_bracket(g: &mut Gen, lay: &Layout, include_e: bool) -> (Mat, Mat, Mat, Mat) {
    let (n, m) = (lay.n, lay.m);
    let a = lay.a_range();
    let targets: Vec<usize> = if include_e { (0..1 + lay.z).collect() } else { (1..1 + lay.z).collect() };
    let mut uu = Vec::new();
    for x in a.clone() {
        for y in a.clone() {
            for &t in &targets {
                if g.rng.gen_bool(0.6) {
                    uu.push((t, x * n + y, g.coef()));
                }
            }
        }
    }
    let w1 = m - lay.w2;
    let mut dd = Vec::new();
    if lay.z > 0 {
        for w in 0..w1 {
            dd.push((1 + g.rng.gen_range(0..lay.z), w, g.nonzero()));
            if g.rng.gen_bool(0.4) {
                dd.push((1 + g.rng.gen_range(0..lay.z), w, g.coef()));
            }
        }
    }
    let (mut wu, mut uw) = (Vec::new(), Vec::new());
    if lay.w2 > 0 {
        for w in 0..w1 {
            for x in a.clone() {
                let t = w1 + g.rng.gen_range(0..lay.w2);
                if g.rng.gen_bool(0.5) {
                    wu.push((t, w * n + x, g.coef()));
                }
                if g.rng.gen_bool(0.5) {
                    uw.push((t, x * m + w, g.coef()));
                }
            }
        }
    }
    (
        Mat::from_triplets(n, n * n, uu),
        Mat::from_triplets(n, m, dd),
        Mat::from_triplets(m, m * n, wu),
        Mat::from_triplets(m, n * m, uw),
    )
}

fn layout(g: &mut Gen, n: usize, m: usize, min_z: usize) -> Layout {
    let z = if n <= 1 {
        0
    } else {
        let hi = if n >= 3 { n - 2 } else { n - 1 };
        g.rng.gen_range(min_z.min(hi)..=hi)
    };
    let w2 = if m == 0 { 0 } else if z == 0 { m } else { g.rng.gen_range(0..=m) };
    Layout { n, m, z, w2 }
}

/// Transports a bracket along basis changes `P` on `U` and `Q` on `W`.
fn transport(space_d: &Mat, uu: &Mat, wu: &Mat, uw: &Mat, p: &Mat, q: &Mat) -> (TwoVec, BilinearOp) {
    let pi = inverse(p).expect("unimodular");
    let qi = inverse(q).expect("unimodular");
    let space = TwoVec::new(&(p * space_d) * &qi);
    let b = BilinearOp {
        space: space.clone(),
        m_uu: &(p * uu) * &pi.kron(&pi),
        m_wu: &(q * wu) * &qi.kron(&pi),
        m_uw: &(q * uw) * &pi.kron(&qi),
    };
    (space, b)
}

const ATTEMPTS: u64 = 16;

/// A central Leibniz 2-algebra with `dim U = dims.0`, `dim W = dims.1` and
/// a Jacobiator vanishing whenever an argument is `e`.
pub fn sample_leibniz2(seed: u64, dims: (usize, usize), bound: i64) -> Result<(Leibniz2Algebra, Vec<Rat>)> {
    let (n, m) = dims;
    if n == 0 {
        return Err(Error::Sampling("a central object needs dim U ≥ 1".into()));
    }
    let bound = bound.max(1);
    let mut last = String::new();
    for attempt in 0..ATTEMPTS {
        let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed.wrapping_mul(ATTEMPTS).wrapping_add(attempt)), bound };
        let lay = layout(&mut g, n, m, 0);
        let (uu, d, wu, uw) = nilpotent_bracket(&mut g, &lay, true);
        let p = g.unimodular(n);
        let q = g.unimodular(m);
        let (_, b) = transport(&d, &uu, &wu, &uw, &p, &q);
        let e = p.col(0);
        let Some(sol) = solve_l3_descending(&b, &e) else {
            last = "no Jacobiator solves the pentagon".into();
            continue;
        };
        let l3 = to_matrix(&g.point(&sol), m, pow(n, 3));
        let l = Leibniz2Algebra::new(b, l3)?;
        let rep = check_leibniz2(&l);
        if rep.passed() && check_central(&l, &e) {
            return Ok((l, e));
        }
        last = format!("checker flags {:?}", rep.failed_flags());
    }
    Err(Error::Sampling(format!("no instance after {ATTEMPTS} attempts: {last}")))
}

/// A central Leibniz 2-algebra with `e ∉ im d`, a Jacobiator vanishing on
/// `e`, and a section `σ0` with `im d ⊂ im σ0`. With `leibniz_section` the
/// brackets also land in `im σ0`.
pub fn sample_splittable(seed: u64, dims: (usize, usize), bound: i64, leibniz_section: bool) -> Result<SplitSample> {
    let (n, m) = dims;
    if n < 2 {
        return Err(Error::Sampling("a splittable instance needs dim U ≥ 2".into()));
    }
    let bound = bound.max(1);
    let mut last = String::new();
    for attempt in 0..ATTEMPTS {
        let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed.wrapping_mul(ATTEMPTS).wrapping_add(attempt) ^ 0x5eed), bound };
        let lay = layout(&mut g, n, m, 1);
        let (uu, d, wu, uw) = nilpotent_bracket(&mut g, &lay, !leibniz_section);
        let p = g.unimodular(n);
        let q = g.unimodular(m);
        let (_, b) = transport(&d, &uu, &wu, &uw, &p, &q);
        let e = p.col(0);
        let Some(sol) = solve_l3_descending(&b, &e) else {
            last = "no descending Jacobiator".into();
            continue;
        };
        let l3 = to_matrix(&g.point(&sol), m, pow(n, 3));
        let l = Leibniz2Algebra::new(b, l3)?;
        let h = p.block(0, 1, n, n - 1);
        let (proj, _) = crate::ratmat::coker_projection(&Mat::col_vector(&e));
        let sigma0 = &h * &inverse(&(&proj * &h)).expect("complement of e");
        let sp = make_splitting(&l, &e, &sigma0);
        match sp {
            Ok(sp) if sp.is_homomorphism() && check_leibniz2(&l).passed() => {
                return Ok(SplitSample { algebra: l, central: e, sigma0 });
            }
            Ok(_) => last = "sampled splitting does not commute with d".into(),
            Err(err) => last = err.to_string(),
        }
    }
    Err(Error::Sampling(format!("no splittable instance after {ATTEMPTS} attempts: {last}")))
}

/// A linear 2-rack: the rack of a sampled splitting with a random `𝔯`
/// from [`solve_r_descending`] at the unit `e`.
pub fn sample_rack(seed: u64, dims: (usize, usize), bound: i64) -> Result<Linear2Rack> {
    let s = sample_splittable(seed, dims, bound, seed.is_multiple_of(2))?;
    let sp = make_splitting(&s.algebra, &s.central, &s.sigma0)?;
    let rk = rack_from_splitting(&sp)?;
    let sol = solve_r_descending(&rk, &s.central)?
        .ok_or_else(|| Error::Sampling("the distributor system is inconsistent".into()))?;
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed ^ 0xd15), bound: bound.max(1) };
    let r = to_matrix(&g.point(&sol), rk.space.dim_arr(), pow(rk.n(), 3));
    let out = Linear2Rack { r, ..rk };
    let rep = check_linear_2rack(&out);
    if !rep.passed() {
        return Err(Error::Sampling(format!("sampled rack fails {:?}", rep.failed_flags())));
    }
    Ok(out)
}

/// `kind` is `leibniz2` or `rack2`; `dims` are `(dim U, dim W)`.
pub fn sample(kind: &str, seed: u64, dims: (usize, usize), bound: i64) -> Result<Sample> {
    match kind {
        "leibniz2" => {
            let (algebra, central) = sample_leibniz2(seed, dims, bound)?;
            Ok(Sample::Leibniz2 { algebra, central })
        }
        "rack2" => Ok(Sample::Rack(sample_rack(seed, dims, bound)?)),
        other => Err(Error::Input(format!("unknown sample kind {other}"))),
    }
}

/// `span{x, e}` with `[x,x] = e`.
pub fn fix_a() -> (FlatLeibniz, Vec<Rat>) {
    let bracket = Mat::from_triplets(2, 4, [(1, 0, Rat::one())]);
    (FlatLeibniz { bracket }, vec![Rat::zero(), Rat::one()])
}

/// `U = 𝕂², W = 𝕂, d = 0`, zero bracket and Jacobiator.
pub fn fix_b() -> Leibniz2Algebra {
    let space = TwoVec::new(Mat::zeros(2, 1));
    Leibniz2Algebra::new(BilinearOp::zero(&space), Mat::zeros(1, 8)).unwrap()
}

pub fn fix_c() -> (Leibniz2Algebra, Vec<Rat>) {
    trivial_central_extension(&fix_b())
}

pub fn fix_d() -> Linear2Rack {
    rack_from_trivial_extension(&fix_b())
}

/// FIX-A with `W = 𝕂`, `d = 0`, zero actions, and the solution of the
/// Jacobiator system obtained from the first kernel direction.
pub fn fix_e() -> (Leibniz2Algebra, Vec<Rat>) {
    let (a, e) = fix_a();
    let space = TwoVec::new(Mat::zeros(2, 1));
    let mut b = BilinearOp::zero(&space);
    b.m_uu = a.bracket;
    let sol = solve_l3(&b).expect("zero Jacobiator is a solution");
    let mut coeffs = vec![Rat::zero(); sol.dim()];
    if let Some(c) = coeffs.first_mut() {
        *c = Rat::one();
    }
    let l3 = to_matrix(&sol.point(&coeffs), 1, 8);
    (Leibniz2Algebra::new(b, l3).unwrap(), e)
}

/// The conjugation 2-rack of the `Z/2`-`Z/3` crossed module acting on
/// itself.
pub fn fix_f() -> (FinCat, FinBifunctor) {
    let g2 = two_group_from_crossed_module(&z2_z3_crossed_module()).unwrap();
    let (x, f) = left_translation(&g2);
    conjugation_rack(&g2, &x, &f).unwrap()
}
