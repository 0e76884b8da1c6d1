//! Finite categories, set-level 2-racks, crossed modules and the
//! conjugation 2-rack of a strict 2-group action.

use crate::error::{Error, Result};
use crate::report::Report;
use serde_json::{json, Value};
use std::collections::HashMap;

/// A small category given by tables. `comp[f * nm + g]` is `g ∘ f`
/// (first `f`, then `g`) when `t(f) = s(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub id: Vec<usize>,
    pub comp: Vec<Option<usize>>,
}

impl FinCat {
    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn n_mor(&self) -> usize {
        self.morphisms.len()
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f * self.n_mor() + g]
    }

    /// The discrete category on a set.
    pub fn discrete(objects: Vec<String>) -> FinCat {
        let n = objects.len();
        let comp = (0..n * n).map(|k| (k / n == k % n).then_some(k / n)).collect();
        FinCat {
            morphisms: objects.iter().map(|o| format!("id_{o}")).collect(),
            objects,
            src: (0..n).collect(),
            tgt: (0..n).collect(),
            id: (0..n).collect(),
            comp,
        }
    }

    /// Flags `cat_identity`, `cat_composition`, `cat_unit`, `cat_assoc`.
    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let nm = self.n_mor();
        for f in ["cat_identity", "cat_composition", "cat_unit", "cat_assoc"] {
            r.set(f, true);
        }
        for x in 0..self.n_obj() {
            let i = self.id[x];
            if self.src[i] != x || self.tgt[i] != x {
                r.violate("cat_identity", vec![x], vec![]);
            }
        }
        for f in 0..nm {
            if self.compose(f, self.id[self.tgt[f]]) != Some(f) || self.compose(self.id[self.src[f]], f) != Some(f) {
                r.violate("cat_unit", vec![f], vec![]);
            }
            for g in 0..nm {
                let c = self.compose(f, g);
                let ok = match c {
                    None => self.tgt[f] != self.src[g],
                    Some(h) => self.tgt[f] == self.src[g] && self.src[h] == self.src[f] && self.tgt[h] == self.tgt[g],
                };
                if !ok {
                    r.violate("cat_composition", vec![f, g], vec![]);
                    continue;
                }
                let Some(fg) = c else { continue };
                for h in 0..nm {
                    if self.tgt[g] != self.src[h] {
                        continue;
                    }
                    let a = self.compose(fg, h);
                    let b = self.compose(g, h).and_then(|gh| self.compose(f, gh));
                    if a.is_none() || a != b {
                        r.violate("cat_assoc", vec![f, g, h], vec![]);
                    }
                }
            }
        }
        r
    }

    /// The product category; pairs are indexed `a * |B| + b`.
    pub fn product(&self, o: &FinCat) -> FinCat {
        let (no, mo) = (o.n_obj(), o.n_mor());
        let nm = self.n_mor() * mo;
        let mut comp = vec![None; nm * nm];
        for f in 0..nm {
            for g in 0..nm {
                let a = self.compose(f / mo, g / mo);
                let b = o.compose(f % mo, g % mo);
                if let (Some(a), Some(b)) = (a, b) {
                    comp[f * nm + g] = Some(a * mo + b);
                }
            }
        }
        let pair = |x: &String, y: &String| format!("({x},{y})");
        FinCat {
            objects: self.objects.iter().flat_map(|x| o.objects.iter().map(move |y| pair(x, y))).collect(),
            morphisms: self.morphisms.iter().flat_map(|x| o.morphisms.iter().map(move |y| pair(x, y))).collect(),
            src: (0..nm).map(|f| self.src[f / mo] * no + o.src[f % mo]).collect(),
            tgt: (0..nm).map(|f| self.tgt[f / mo] * no + o.tgt[f % mo]).collect(),
            id: (0..self.n_obj() * no).map(|x| self.id[x / no] * mo + o.id[x % no]).collect(),
            comp,
        }
    }

    pub fn to_json(&self) -> Value {
        let nm = self.n_mor();
        let mut comp = Vec::new();
        for f in 0..nm {
            for g in 0..nm {
                if let Some(h) = self.compose(f, g) {
                    comp.push(json!([self.morphisms[f], self.morphisms[g], self.morphisms[h]]));
                }
            }
        }
        json!({
            "objects": self.objects,
            "morphisms": (0..nm).map(|f| json!({
                "name": self.morphisms[f],
                "src": self.objects[self.src[f]],
                "tgt": self.objects[self.tgt[f]],
            })).collect::<Vec<_>>(),
            "identities": self.id.iter().map(|&i| self.morphisms[i].clone()).collect::<Vec<_>>(),
            "composition": comp,
        })
    }

    pub fn from_json(v: &Value) -> Result<FinCat> {
        let objects = names(get(v, "objects")?)?;
        let oi = index_of(&objects)?;
        let mors = get(v, "morphisms")?.as_array().ok_or_else(|| bad("morphisms must be a list"))?;
        let mut morphisms = Vec::new();
        let (mut src, mut tgt) = (Vec::new(), Vec::new());
        for m in mors {
            morphisms.push(get(m, "name")?.as_str().ok_or_else(|| bad("morphism name"))?.to_string());
            src.push(lookup(&oi, get(m, "src")?)?);
            tgt.push(lookup(&oi, get(m, "tgt")?)?);
        }
        let mi = index_of(&morphisms)?;
        let ids = get(v, "identities")?.as_array().ok_or_else(|| bad("identities must be a list"))?;
        if ids.len() != objects.len() {
            return Err(bad("one identity per object is required"));
        }
        let id = ids.iter().map(|x| lookup(&mi, x)).collect::<Result<Vec<_>>>()?;
        let nm = morphisms.len();
        let mut comp = vec![None; nm * nm];
        for row in get(v, "composition")?.as_array().ok_or_else(|| bad("composition must be a list"))? {
            let t = triple(&mi, row, 3)?;
            comp[t[0] * nm + t[1]] = Some(t[2]);
        }
        Ok(FinCat { objects, morphisms, src, tgt, id, comp })
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn get<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| bad(format!("missing field {k}")))
}

fn names(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of names"))?
        .iter()
        .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("names must be strings")))
        .collect()
}

fn index_of(xs: &[String]) -> Result<HashMap<String, usize>> {
    let mut m = HashMap::new();
    for (i, x) in xs.iter().enumerate() {
        if m.insert(x.clone(), i).is_some() {
            return Err(bad(format!("duplicate name {x}")));
        }
    }
    Ok(m)
}

fn lookup(ix: &HashMap<String, usize>, v: &Value) -> Result<usize> {
    let s = v.as_str().ok_or_else(|| bad("expected a name"))?;
    ix.get(s).copied().ok_or_else(|| bad(format!("unknown name {s}")))
}

fn triple(ix: &HashMap<String, usize>, row: &Value, k: usize) -> Result<Vec<usize>> {
    let a = row.as_array().ok_or_else(|| bad("expected a list"))?;
    if a.len() != k {
        return Err(bad(format!("expected {k} entries")));
    }
    a.iter().map(|x| lookup(ix, x)).collect()
}

/// Tables of a functor `X × X -> X`, indexed `a * |X| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBifunctor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FinBifunctor {
    pub fn on_obj(&self, x: &FinCat, a: usize, b: usize) -> usize {
        self.obj[a * x.n_obj() + b]
    }

    pub fn on_mor(&self, x: &FinCat, f: usize, g: usize) -> usize {
        self.mor[f * x.n_mor() + g]
    }

    pub fn to_json(&self, x: &FinCat) -> Value {
        let (no, nm) = (x.n_obj(), x.n_mor());
        let o: Vec<Value> = (0..no * no)
            .map(|k| json!([x.objects[k / no], x.objects[k % no], x.objects[self.obj[k]]]))
            .collect();
        let m: Vec<Value> = (0..nm * nm)
            .map(|k| json!([x.morphisms[k / nm], x.morphisms[k % nm], x.morphisms[self.mor[k]]]))
            .collect();
        json!({"objects": o, "morphisms": m})
    }

    pub fn from_json(x: &FinCat, v: &Value) -> Result<FinBifunctor> {
        let (no, nm) = (x.n_obj(), x.n_mor());
        let oi = index_of(&x.objects)?;
        let mi = index_of(&x.morphisms)?;
        let fill = |rows: &Value, ix: &HashMap<String, usize>, n: usize| -> Result<Vec<usize>> {
            let mut t = vec![usize::MAX; n * n];
            for row in rows.as_array().ok_or_else(|| bad("expected a list of triples"))? {
                let k = triple(ix, row, 3)?;
                t[k[0] * n + k[1]] = k[2];
            }
            if t.contains(&usize::MAX) {
                return Err(bad("the operation table is not total"));
            }
            Ok(t)
        };
        Ok(FinBifunctor { obj: fill(get(v, "objects")?, &oi, no)?, mor: fill(get(v, "morphisms")?, &mi, nm)? })
    }
}

/// Flags `functor_source`, `functor_target`, `functor_identity`,
/// `functor_composition` for a bifunctor on `x`.
fn check_bifunctor(x: &FinCat, op: &FinBifunctor, prefix: &str, r: &mut Report) {
    let nm = x.n_mor();
    let flag = |s: &str| format!("{prefix}{s}");
    for s in ["functor_source", "functor_target", "functor_identity", "functor_composition"] {
        r.set(&flag(s), true);
    }
    for a in 0..x.n_obj() {
        for b in 0..x.n_obj() {
            if op.on_mor(x, x.id[a], x.id[b]) != x.id[op.on_obj(x, a, b)] {
                r.violate(&flag("functor_identity"), vec![a, b], vec![]);
            }
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            let h = op.on_mor(x, f, g);
            if x.src[h] != op.on_obj(x, x.src[f], x.src[g]) {
                r.violate(&flag("functor_source"), vec![f, g], vec![]);
            }
            if x.tgt[h] != op.on_obj(x, x.tgt[f], x.tgt[g]) {
                r.violate(&flag("functor_target"), vec![f, g], vec![]);
            }
        }
    }
    for f in 0..nm {
        for f2 in 0..nm {
            let Some(ff) = x.compose(f, f2) else { continue };
            for g in 0..nm {
                for g2 in 0..nm {
                    let Some(gg) = x.compose(g, g2) else { continue };
                    let lhs = op.on_mor(x, ff, gg);
                    let rhs = x.compose(op.on_mor(x, f, g), op.on_mor(x, f2, g2));
                    if rhs != Some(lhs) {
                        r.violate(&flag("functor_composition"), vec![f, f2, g, g2], vec![]);
                    }
                }
            }
        }
    }
}

/// Semistrict 2-rack check. `r_tab[(x*n + y)*n + z]` is the morphism
/// `R_{x,y,z}`. Flags: category axioms, `functor_*`, `invertible`,
/// `R_source_target`, `R_natural`, `distributor`.
pub fn check_semistrict_2rack(x: &FinCat, lhd: &FinBifunctor, r_tab: &[usize], lhd_inv: &FinBifunctor) -> Report {
    let mut r = x.check();
    let (no, nm) = (x.n_obj(), x.n_mor());
    if r_tab.len() != no * no * no || r_tab.iter().any(|&f| f >= nm) {
        r.set("R_source_target", false);
        r.note("distributor table has the wrong size");
        return r;
    }
    check_bifunctor(x, lhd, "", &mut r);
    let ob = |a: usize, b: usize| lhd.on_obj(x, a, b);
    let mo = |f: usize, g: usize| lhd.on_mor(x, f, g);
    let rr = |a: usize, b: usize, c: usize| r_tab[(a * no + b) * no + c];
    r.set("invertible", true);
    for a in 0..no {
        for y in 0..no {
            if lhd_inv.on_obj(x, ob(y, a), a) != y || ob(lhd_inv.on_obj(x, y, a), a) != y {
                r.violate("invertible", vec![y, a], vec![]);
            }
        }
        let ia = x.id[a];
        for f in 0..nm {
            if lhd_inv.on_mor(x, mo(f, ia), ia) != f || mo(lhd_inv.on_mor(x, f, ia), ia) != f {
                r.violate("invertible", vec![f, a], vec![]);
            }
        }
    }
    r.set("R_source_target", true);
    for a in 0..no {
        for b in 0..no {
            for c in 0..no {
                let f = rr(a, b, c);
                if x.src[f] != ob(ob(a, b), c) || x.tgt[f] != ob(ob(a, c), ob(b, c)) {
                    r.violate("R_source_target", vec![a, b, c], vec![]);
                }
            }
        }
    }
    r.set("R_natural", true);
    for f in 0..nm {
        for g in 0..nm {
            for h in 0..nm {
                let before = x.compose(mo(mo(f, g), h), rr(x.tgt[f], x.tgt[g], x.tgt[h]));
                let after = x.compose(rr(x.src[f], x.src[g], x.src[h]), mo(mo(f, h), mo(g, h)));
                if before.is_none() || before != after {
                    r.violate("R_natural", vec![f, g, h], vec![]);
                }
            }
        }
    }
    r.set("distributor", true);
    let id = |a: usize| x.id[a];
    let seq = |fs: [usize; 3]| x.compose(fs[0], fs[1]).and_then(|p| x.compose(p, fs[2]));
    for q in 0..no.pow(4) {
        let t = crate::report::decode(q, &[no; 4]);
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let left = seq([
            mo(rr(a, b, c), id(d)),
            rr(ob(a, c), ob(b, c), d),
            mo(rr(a, c, d), rr(b, c, d)),
        ]);
        let right = seq([
            rr(ob(a, b), c, d),
            mo(rr(a, b, d), mo(id(c), id(d))),
            rr(ob(a, d), ob(b, d), ob(c, d)),
        ]);
        if left.is_none() || left != right {
            r.violate("distributor", t, vec![]);
        }
    }
    r
}

/// Unique preimages under every right translation, or `None` if some
/// translation is not bijective.
fn right_inverse_table(n: usize, op: impl Fn(usize, usize) -> usize) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; n * n];
    for a in 0..n {
        for y in 0..n {
            let k = op(y, a) * n + a;
            if inv[k] != usize::MAX {
                return None;
            }
            inv[k] = y;
        }
    }
    Some(inv)
}

fn check_rack_axioms(n: usize, op: impl Fn(usize, usize) -> usize, flag: &str, r: &mut Report) {
    r.set(flag, true);
    if right_inverse_table(n, &op).is_none() {
        r.violate(flag, vec![], vec![]);
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op(op(a, b), c) != op(op(a, c), op(b, c)) {
                    r.violate(flag, vec![a, b, c], vec![]);
                }
            }
        }
    }
}

/// The inverse operation on objects and on `f ◁̃ g` for all morphisms,
/// built from bijectivity of the right translations.
pub fn derived_inverse(x: &FinCat, lhd: &FinBifunctor) -> Option<FinBifunctor> {
    let obj = right_inverse_table(x.n_obj(), |a, b| lhd.on_obj(x, a, b))?;
    let mor = right_inverse_table(x.n_mor(), |f, g| lhd.on_mor(x, f, g))?;
    Some(FinBifunctor { obj, mor })
}

/// Semistrict check with identity distributor plus the rack axioms on
/// objects (`rack_objects`) and on morphisms (`rack_morphisms`).
pub fn check_strict_2rack(x: &FinCat, lhd: &FinBifunctor) -> Report {
    let no = x.n_obj();
    let mut r = match derived_inverse(x, lhd) {
        Some(inv) => {
            let ids: Vec<usize> = (0..no * no * no)
                .map(|k| x.id[lhd.on_obj(x, lhd.on_obj(x, k / (no * no), (k / no) % no), k % no)])
                .collect();
            check_semistrict_2rack(x, lhd, &ids, &inv)
        }
        None => {
            let mut r = x.check();
            check_bifunctor(x, lhd, "", &mut r);
            r.set("invertible", false);
            r.note("some right translation is not bijective");
            r
        }
    };
    check_rack_axioms(no, |a, b| lhd.on_obj(x, a, b), "rack_objects", &mut r);
    check_rack_axioms(x.n_mor(), |f, g| lhd.on_mor(x, f, g), "rack_morphisms", &mut r);
    r
}

/// A finite group by its multiplication table; element 0 need not be the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    pub names: Vec<String>,
    pub mul: Vec<usize>,
}

impl FinGroup {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn unit(&self) -> Option<usize> {
        (0..self.order()).find(|&u| (0..self.order()).all(|a| self.op(u, a) == a && self.op(a, u) == a))
    }

    pub fn inv(&self, a: usize) -> usize {
        let u = self.unit().expect("group has a unit");
        (0..self.order()).find(|&b| self.op(a, b) == u).expect("group has inverses")
    }

    pub fn is_group(&self) -> bool {
        let n = self.order();
        let Some(u) = self.unit() else { return false };
        let assoc = (0..n * n * n).all(|k| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            self.op(self.op(a, b), c) == self.op(a, self.op(b, c))
        });
        assoc && (0..n).all(|a| (0..n).any(|b| self.op(a, b) == u && self.op(b, a) == u))
    }

    /// `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize, prefix: &str) -> FinGroup {
        FinGroup {
            names: (0..n).map(|i| format!("{prefix}{i}")).collect(),
            mul: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
        }
    }

    fn to_json(&self) -> Value {
        let n = self.order();
        let table: Vec<Vec<&String>> = (0..n).map(|a| (0..n).map(|b| &self.names[self.op(a, b)]).collect()).collect();
        json!({"elements": self.names, "table": table})
    }

    fn from_json(v: &Value) -> Result<FinGroup> {
        let names = names(get(v, "elements")?)?;
        let ix = index_of(&names)?;
        let rows = get(v, "table")?.as_array().ok_or_else(|| bad("table must be a list of rows"))?;
        let n = names.len();
        if rows.len() != n {
            return Err(bad("table must be square"));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("table rows must be lists"))?;
            if row.len() != n {
                return Err(bad("table must be square"));
            }
            for x in row {
                mul.push(lookup(&ix, x)?);
            }
        }
        Ok(FinGroup { names, mul })
    }
}

/// `∂: H -> G` with a left action `g ▹ h` of `G` on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub g: FinGroup,
    pub h: FinGroup,
    pub boundary: Vec<usize>,
    /// `action[g * |H| + h] = g ▹ h`
    pub action: Vec<usize>,
}

impl CrossedModule {
    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action[g * self.h.order() + h]
    }

    /// Flags `groups`, `action`, `equivariance`, `peiffer`.
    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let (g, h) = (&self.g, &self.h);
        r.set("groups", g.is_group() && h.is_group());
        if !r.passed() {
            return r;
        }
        let (ng, nh) = (g.order(), h.order());
        r.set("action", true);
        r.set("equivariance", true);
        r.set("peiffer", true);
        let ug = g.unit().unwrap();
        for b in 0..nh {
            if self.act(ug, b) != b {
                r.violate("action", vec![ug, b], vec![]);
            }
        }
        for a in 0..ng {
            for b in 0..nh {
                for a2 in 0..ng {
                    if self.act(g.op(a, a2), b) != self.act(a, self.act(a2, b)) {
                        r.violate("action", vec![a, a2, b], vec![]);
                    }
                }
                for b2 in 0..nh {
                    if self.act(a, h.op(b, b2)) != h.op(self.act(a, b), self.act(a, b2)) {
                        r.violate("action", vec![a, b, b2], vec![]);
                    }
                }
                let lhs = self.boundary[self.act(a, b)];
                let rhs = g.op(g.op(a, self.boundary[b]), g.inv(a));
                if lhs != rhs {
                    r.violate("equivariance", vec![a, b], vec![]);
                }
            }
        }
        for b in 0..nh {
            for b2 in 0..nh {
                if self.act(self.boundary[b], b2) != h.op(h.op(b, b2), h.inv(b)) {
                    r.violate("peiffer", vec![b, b2], vec![]);
                }
            }
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let nh = self.h.order();
        let action: serde_json::Map<String, Value> = (0..self.g.order())
            .map(|a| {
                let row: serde_json::Map<String, Value> =
                    (0..nh).map(|b| (self.h.names[b].clone(), json!(self.h.names[self.act(a, b)]))).collect();
                (self.g.names[a].clone(), Value::Object(row))
            })
            .collect();
        let boundary: serde_json::Map<String, Value> =
            (0..nh).map(|b| (self.h.names[b].clone(), json!(self.g.names[self.boundary[b]]))).collect();
        json!({"G": self.g.to_json(), "H": self.h.to_json(), "boundary": boundary, "action": action})
    }

    pub fn from_json(v: &Value) -> Result<CrossedModule> {
        let g = FinGroup::from_json(get(v, "G")?)?;
        let h = FinGroup::from_json(get(v, "H")?)?;
        let gi = index_of(&g.names)?;
        let hi = index_of(&h.names)?;
        let bmap = get(v, "boundary")?.as_object().ok_or_else(|| bad("boundary must be an object"))?;
        let boundary = h
            .names
            .iter()
            .map(|b| lookup(&gi, bmap.get(b).ok_or_else(|| bad(format!("boundary of {b} missing")))?))
            .collect::<Result<Vec<_>>>()?;
        let amap = get(v, "action")?.as_object().ok_or_else(|| bad("action must be an object"))?;
        let mut action = Vec::new();
        for a in &g.names {
            let row = amap.get(a).and_then(|x| x.as_object()).ok_or_else(|| bad(format!("action of {a} missing")))?;
            for b in &h.names {
                action.push(lookup(&hi, row.get(b).ok_or_else(|| bad(format!("{a} ▹ {b} missing")))?)?);
            }
        }
        Ok(CrossedModule { g, h, boundary, action })
    }
}

/// `Z/2` acting on `Z/3` by inversion, with trivial boundary.
pub fn z2_z3_crossed_module() -> CrossedModule {
    let g = FinGroup::cyclic(2, "g");
    let h = FinGroup::cyclic(3, "h");
    let action = (0..6).map(|k| if k / 3 == 0 { k % 3 } else { (3 - k % 3) % 3 }).collect();
    CrossedModule { g, h, boundary: vec![0; 3], action }
}

/// A strict 2-group: a category with strict monoidal product and object
/// inverses `†`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strict2Group {
    pub cat: FinCat,
    pub tensor: FinBifunctor,
    pub unit: usize,
    pub dagger: Vec<usize>,
}

impl Strict2Group {
    pub fn tensor_obj(&self, a: usize, b: usize) -> usize {
        self.tensor.on_obj(&self.cat, a, b)
    }

    pub fn tensor_mor(&self, f: usize, g: usize) -> usize {
        self.tensor.on_mor(&self.cat, f, g)
    }

    /// Inverse under composition.
    pub fn comp_inverse(&self, f: usize) -> usize {
        let c = &self.cat;
        (0..c.n_mor())
            .find(|&g| c.compose(f, g) == Some(c.id[c.src[f]]))
            .expect("all morphisms of a 2-group are invertible")
    }

    /// `ι_{g†} ⊗ α⁻¹ ⊗ ι_{h†}: g† -> h†` for `α: g -> h`.
    pub fn dagger_mor(&self, a: usize) -> usize {
        let c = &self.cat;
        let left = c.id[self.dagger[c.src[a]]];
        let right = c.id[self.dagger[c.tgt[a]]];
        self.tensor_mor(self.tensor_mor(left, self.comp_inverse(a)), right)
    }

    /// Flags: category axioms, `tensor_functor_*`, `associative`, `unit`,
    /// `dagger`, `invertible_morphisms`, `interchange`.
    pub fn check(&self) -> Report {
        let c = &self.cat;
        let mut r = c.check();
        check_bifunctor(c, &self.tensor, "tensor_", &mut r);
        let (no, nm) = (c.n_obj(), c.n_mor());
        let iu = c.id[self.unit];
        for f in ["associative", "unit", "dagger", "invertible_morphisms", "interchange"] {
            r.set(f, true);
        }
        for f in 0..nm {
            if self.tensor_mor(f, iu) != f || self.tensor_mor(iu, f) != f {
                r.violate("unit", vec![f], vec![]);
            }
            if !(0..nm).any(|g| c.compose(f, g) == Some(c.id[c.src[f]]) && c.compose(g, f) == Some(c.id[c.tgt[f]])) {
                r.violate("invertible_morphisms", vec![f], vec![]);
            }
            for g in 0..nm {
                for h in 0..nm {
                    if self.tensor_mor(self.tensor_mor(f, g), h) != self.tensor_mor(f, self.tensor_mor(g, h)) {
                        r.violate("associative", vec![f, g, h], vec![]);
                    }
                }
            }
        }
        for a in 0..no {
            let d = self.dagger[a];
            if self.tensor_obj(a, d) != self.unit
                || self.tensor_obj(d, a) != self.unit
                || self.tensor_mor(c.id[a], c.id[d]) != iu
                || self.tensor_mor(c.id[d], c.id[a]) != iu
            {
                r.violate("dagger", vec![a], vec![]);
            }
        }
        if !r.passed() {
            return r;
        }
        // ι_{h1†} ⊗ β⁻¹β'⁻¹ ⊗ ι_{h3†} = ι_{h1†} ⊗ β⁻¹ ⊗ ι_{h2†} ⊗ β'⁻¹ ⊗ ι_{h3†}
        for b in 0..nm {
            for b2 in 0..nm {
                let Some(bb) = c.compose(b, b2) else { continue };
                let (h1, h2, h3) = (c.src[b], c.tgt[b], c.tgt[b2]);
                let inv = c.compose(self.comp_inverse(b2), self.comp_inverse(b)).unwrap();
                debug_assert_eq!(inv, self.comp_inverse(bb));
                let t = |fs: &[usize]| fs.iter().skip(1).fold(fs[0], |acc, &f| self.tensor_mor(acc, f));
                let (d1, d2, d3) = (c.id[self.dagger[h1]], c.id[self.dagger[h2]], c.id[self.dagger[h3]]);
                let lhs = t(&[d1, inv, d3]);
                let rhs = t(&[d1, self.comp_inverse(b), d2, self.comp_inverse(b2), d3]);
                let composite = c.compose(self.dagger_mor(b), self.dagger_mor(b2));
                if lhs != rhs || composite != Some(lhs) {
                    r.violate("interchange", vec![b, b2], vec![]);
                }
            }
        }
        r
    }

    pub fn to_json(&self) -> Value {
        json!({
            "category": self.cat.to_json(),
            "tensor": self.tensor.to_json(&self.cat),
            "unit": self.cat.objects[self.unit],
            "dagger": self.dagger.iter().map(|&d| self.cat.objects[d].clone()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Strict2Group> {
        let cat = FinCat::from_json(get(v, "category")?)?;
        let tensor = FinBifunctor::from_json(&cat, get(v, "tensor")?)?;
        let oi = index_of(&cat.objects)?;
        let unit = lookup(&oi, get(v, "unit")?)?;
        let dagger = get(v, "dagger")?
            .as_array()
            .ok_or_else(|| bad("dagger must be a list"))?
            .iter()
            .map(|x| lookup(&oi, x))
            .collect::<Result<Vec<_>>>()?;
        if dagger.len() != cat.n_obj() {
            return Err(bad("one dagger entry per object is required"));
        }
        Ok(Strict2Group { cat, tensor, unit, dagger })
    }
}

/// Objects `G`, morphisms `(g, h): g -> ∂(h) g`, composition
/// `(∂(h)g, h') ∘ (g, h) = (g, h'h)`, tensor `(g,h)⊗(g',h') = (gg', h (g▹h'))`.
pub fn two_group_from_crossed_module(cm: &CrossedModule) -> Result<Strict2Group> {
    let rep = cm.check();
    if !rep.passed() {
        return Err(Error::Structure(format!("not a crossed module: {:?}", rep.failed_flags())));
    }
    let (g, h) = (&cm.g, &cm.h);
    let (ng, nh) = (g.order(), h.order());
    let nm = ng * nh;
    let uh = h.unit().unwrap();
    let mor = |a: usize, b: usize| a * nh + b;
    let tgt_of = |a: usize, b: usize| g.op(cm.boundary[b], a);
    let mut comp = vec![None; nm * nm];
    for f in 0..nm {
        for f2 in 0..nm {
            let (a, b) = (f / nh, f % nh);
            let (a2, b2) = (f2 / nh, f2 % nh);
            if tgt_of(a, b) == a2 {
                comp[f * nm + f2] = Some(mor(a, h.op(b2, b)));
            }
        }
    }
    let cat = FinCat {
        objects: g.names.clone(),
        morphisms: (0..nm).map(|f| format!("({},{})", g.names[f / nh], h.names[f % nh])).collect(),
        src: (0..nm).map(|f| f / nh).collect(),
        tgt: (0..nm).map(|f| tgt_of(f / nh, f % nh)).collect(),
        id: (0..ng).map(|a| mor(a, uh)).collect(),
        comp,
    };
    let tensor = FinBifunctor {
        obj: (0..ng * ng).map(|k| g.op(k / ng, k % ng)).collect(),
        mor: (0..nm * nm)
            .map(|k| {
                let (f, f2) = (k / nm, k % nm);
                let (a, b, a2, b2) = (f / nh, f % nh, f2 / nh, f2 % nh);
                mor(g.op(a, a2), h.op(b, cm.act(a, b2)))
            })
            .collect(),
    };
    let two = Strict2Group { cat, tensor, unit: g.unit().unwrap(), dagger: (0..ng).map(|a| g.inv(a)).collect() };
    let rep = two.check();
    if !rep.passed() {
        return Err(Error::Structure(format!("strict 2-group laws fail: {:?}", rep.failed_flags())));
    }
    Ok(two)
}

/// Tables of a functor `F: G × X -> X`, indexed `g * |X| + x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAction {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FinAction {
    pub fn to_json(&self, g2: &Strict2Group, x: &FinCat) -> Value {
        let (no, nm) = (x.n_obj(), x.n_mor());
        let g = &g2.cat;
        json!({
            "objects": (0..g.n_obj() * no).map(|k| json!([g.objects[k / no], x.objects[k % no], x.objects[self.obj[k]]])).collect::<Vec<_>>(),
            "morphisms": (0..g.n_mor() * nm).map(|k| json!([g.morphisms[k / nm], x.morphisms[k % nm], x.morphisms[self.mor[k]]])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(g2: &Strict2Group, x: &FinCat, v: &Value) -> Result<FinAction> {
        let g = &g2.cat;
        let fill = |rows: &Value, gn: &[String], xn: &[String]| -> Result<Vec<usize>> {
            let gi = index_of(gn)?;
            let xi = index_of(xn)?;
            let mut t = vec![usize::MAX; gn.len() * xn.len()];
            for row in rows.as_array().ok_or_else(|| bad("expected a list of triples"))? {
                let a = row.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("expected triples"))?;
                t[lookup(&gi, &a[0])? * xn.len() + lookup(&xi, &a[1])?] = lookup(&xi, &a[2])?;
            }
            if t.contains(&usize::MAX) {
                return Err(bad("the action table is not total"));
            }
            Ok(t)
        };
        Ok(FinAction {
            obj: fill(get(v, "objects")?, &g.objects, &x.objects)?,
            mor: fill(get(v, "morphisms")?, &g.morphisms, &x.morphisms)?,
        })
    }
}

/// The 2-group acting on itself by left translation.
pub fn left_translation(g2: &Strict2Group) -> (FinCat, FinAction) {
    let c = &g2.cat;
    let (no, nm) = (c.n_obj(), c.n_mor());
    let act = FinAction {
        obj: (0..no * no).map(|k| g2.tensor_obj(k / no, k % no)).collect(),
        mor: (0..nm * nm).map(|k| g2.tensor_mor(k / nm, k % nm)).collect(),
    };
    (c.clone(), act)
}

/// The strict 2-rack on `G × X` with `(g,x)◁(h,y) = (h⊗g⊗h†, F(h,x))` and
/// `(α,ξ)◁(β,η) = (β⊗α⊗(ι_{h1†}⊗β⁻¹⊗ι_{h2†}), F(β,ξ))`.
pub fn conjugation_rack(g2: &Strict2Group, x: &FinCat, f: &FinAction) -> Result<(FinCat, FinBifunctor)> {
    let g = &g2.cat;
    let (gn, gm, xn, xm) = (g.n_obj(), g.n_mor(), x.n_obj(), x.n_mor());
    if f.obj.len() != gn * xn || f.mor.len() != gm * xm {
        return Err(bad("action tables have the wrong size"));
    }
    let fo = |a: usize, y: usize| f.obj[a * xn + y];
    let fm = |a: usize, y: usize| f.mor[a * xm + y];
    for a in 0..gm {
        for y in 0..xm {
            let z = fm(a, y);
            if x.src[z] != fo(g.src[a], x.src[y]) || x.tgt[z] != fo(g.tgt[a], x.tgt[y]) {
                return Err(bad(format!("F({}, {}) has the wrong source or target", g.morphisms[a], x.morphisms[y])));
            }
        }
    }
    for y in 0..xn {
        if fo(g2.unit, y) != y {
            return Err(bad(format!("F({}, {}) is not {}", g.objects[g2.unit], x.objects[y], x.objects[y])));
        }
    }
    for y in 0..xm {
        if fm(g.id[g2.unit], y) != y {
            return Err(bad(format!("F({}, {}) is not {}", g.morphisms[g.id[g2.unit]], x.morphisms[y], x.morphisms[y])));
        }
    }
    for a in 0..gn {
        for y in 0..xn {
            if fm(g.id[a], x.id[y]) != x.id[fo(a, y)] {
                return Err(bad(format!("F does not preserve the identity at ({}, {})", g.objects[a], x.objects[y])));
            }
            for b in 0..gn {
                if fo(g2.tensor_obj(a, b), y) != fo(a, fo(b, y)) {
                    return Err(bad(format!(
                        "F({}⊗{}, {}) differs from F({}, F({}, {}))",
                        g.objects[a], g.objects[b], x.objects[y], g.objects[a], g.objects[b], x.objects[y]
                    )));
                }
            }
        }
    }
    for a in 0..gm {
        for a2 in 0..gm {
            let ga = g.compose(a, a2);
            for y in 0..xm {
                for y2 in 0..xm {
                    if let (Some(ga), Some(xy)) = (ga, x.compose(y, y2)) {
                        if Some(fm(ga, xy)) != x.compose(fm(a, y), fm(a2, y2)) {
                            return Err(bad(format!(
                                "F does not preserve the composite of ({}, {}) and ({}, {})",
                                g.morphisms[a], x.morphisms[y], g.morphisms[a2], x.morphisms[y2]
                            )));
                        }
                    }
                }
                if fm(g2.tensor_mor(a, a2), y) != fm(a, fm(a2, y)) {
                    return Err(bad(format!(
                        "F({}⊗{}, {}) differs from F({}, F({}, {}))",
                        g.morphisms[a], g.morphisms[a2], x.morphisms[y], g.morphisms[a], g.morphisms[a2], x.morphisms[y]
                    )));
                }
            }
        }
    }
    let p = g.product(x);
    let (pn, pm) = (p.n_obj(), p.n_mor());
    let obj = (0..pn * pn)
        .map(|k| {
            let (u, v) = (k / pn, k % pn);
            let (gg, xx, hh) = (u / xn, u % xn, v / xn);
            let conj = g2.tensor_obj(g2.tensor_obj(hh, gg), g2.dagger[hh]);
            conj * xn + fo(hh, xx)
        })
        .collect();
    let mor = (0..pm * pm)
        .map(|k| {
            let (u, v) = (k / pm, k % pm);
            let (al, xi, be) = (u / xm, u % xm, v / xm);
            let m = g2.tensor_mor(g2.tensor_mor(be, al), g2.dagger_mor(be));
            m * xm + fm(be, xi)
        })
        .collect();
    Ok((p, FinBifunctor { obj, mor }))
}

/// A finite 2-rack as stored on disk. Without `r` and `lhd_inv` it is
/// treated as strict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinRack {
    pub cat: FinCat,
    pub lhd: FinBifunctor,
    pub lhd_inv: Option<FinBifunctor>,
    pub r: Option<Vec<usize>>,
}

impl FinRack {
    pub fn strict(cat: FinCat, lhd: FinBifunctor) -> FinRack {
        FinRack { cat, lhd, lhd_inv: None, r: None }
    }

    pub fn check(&self) -> Report {
        match (&self.lhd_inv, &self.r) {
            (None, None) => check_strict_2rack(&self.cat, &self.lhd),
            (inv, r) => {
                let inv = match inv.clone().or_else(|| derived_inverse(&self.cat, &self.lhd)) {
                    Some(i) => i,
                    None => {
                        let mut rep = self.cat.check();
                        rep.set("invertible", false);
                        rep.note("some right translation is not bijective");
                        return rep;
                    }
                };
                let no = self.cat.n_obj();
                let r = r.clone().unwrap_or_else(|| {
                    (0..no * no * no)
                        .map(|k| self.cat.id[self.lhd.on_obj(&self.cat, self.lhd.on_obj(&self.cat, k / (no * no), (k / no) % no), k % no)])
                        .collect()
                });
                check_semistrict_2rack(&self.cat, &self.lhd, &r, &inv)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let x = &self.cat;
        let no = x.n_obj();
        let mut v = json!({"category": x.to_json(), "lhd": self.lhd.to_json(x)});
        if let Some(inv) = &self.lhd_inv {
            v["lhd_inv"] = inv.to_json(x);
        }
        if let Some(r) = &self.r {
            v["r"] = r
                .iter()
                .enumerate()
                .map(|(k, &f)| json!([x.objects[k / (no * no)], x.objects[(k / no) % no], x.objects[k % no], x.morphisms[f]]))
                .collect();
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<FinRack> {
        let cat = FinCat::from_json(get(v, "category")?)?;
        let lhd = FinBifunctor::from_json(&cat, get(v, "lhd")?)?;
        let lhd_inv = match v.get("lhd_inv") {
            None | Some(Value::Null) => None,
            Some(t) => Some(FinBifunctor::from_json(&cat, t)?),
        };
        let r = match v.get("r") {
            None | Some(Value::Null) => None,
            Some(rows) => {
                let oi = index_of(&cat.objects)?;
                let mi = index_of(&cat.morphisms)?;
                let no = cat.n_obj();
                let mut t = vec![usize::MAX; no * no * no];
                for row in rows.as_array().ok_or_else(|| bad("r must be a list"))? {
                    let a = row.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("r entries are [x, y, z, morphism]"))?;
                    let k = (lookup(&oi, &a[0])? * no + lookup(&oi, &a[1])?) * no + lookup(&oi, &a[2])?;
                    t[k] = lookup(&mi, &a[3])?;
                }
                if t.contains(&usize::MAX) {
                    return Err(bad("the distributor table is not total"));
                }
                Some(t)
            }
        };
        Ok(FinRack { cat, lhd, lhd_inv, r })
    }
}
