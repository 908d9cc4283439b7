//! Two-term L∞-algebras, skeletal representations, matched pairs of skeletal L∞-algebras and
//! their correspondence with 3-cocycles `(F₁, 0, F₃)` of a matched pair of Lie algebras.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::bigraded::MixedMap;
use crate::combinat::{sort_sign, subsets};
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, format_rational, Matrix, Rational};
use crate::io;
use crate::lie_core::{unit, CheckGroup, LieAlgebra, LieRep, SkewMap, Tensor3, ValidationReport, Witness};
use crate::matched_pair::{lie_from_json, lie_to_json, validate_matched_pair, MatchedPair};
use crate::matched_pair::{GROUP_PSI_COMPAT, GROUP_RHO_COMPAT};
use crate::mp_cohomology::{delta_mpl_coeff, MPCochain};
use crate::mp_rep::{validate_mp_representation, MPRepresentation};

type V = Vec<Rational>;

/// `g₁ --μ₁--> g₀` with brackets on `g₀ ⊗ g₀` and `g₀ ⊗ g₁` and a trilinear `μ₃: Λ³g₀ -> g₁`.
/// `[v, x] = -[x, v]` is implied and never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermLInfinity {
    pub dim0: usize,
    pub dim1: usize,
    /// `dim0 × dim1`.
    pub mu1: Matrix,
    pub bracket00: LieAlgebra,
    /// `bracket01[x][v][w]`.
    pub bracket01: Tensor3,
    pub mu3: SkewMap,
}

pub const GROUP_TT_I: &str = "mu1 intertwines the bracket with g0";
pub const GROUP_TT_II: &str = "[mu1 u, v] = [u, mu1 v]";
pub const GROUP_TT_III: &str = "Jacobiator of g0 is mu1 mu3";
pub const GROUP_TT_IV: &str = "action of g0 on g1 up to mu3(x, y, mu1 v)";
pub const GROUP_TT_V: &str = "coherence of mu3";

impl TwoTermLInfinity {
    /// `(V --0--> g, [,], θ)` from a Lie algebra, a representation and a trilinear map.
    pub fn skeletal(r: &LieRep, theta: &SkewMap) -> Result<Self> {
        let t = TwoTermLInfinity {
            dim0: r.algebra.dim,
            dim1: r.space_dim,
            mu1: Matrix::zeros(r.algebra.dim, r.space_dim),
            bracket00: r.algebra.clone(),
            bracket01: r.action.clone(),
            mu3: theta.clone(),
        };
        t.check_shapes()?;
        Ok(t)
    }

    /// Underlying Lie data `(g₀, g₁, μ₃)` of a skeletal algebra.
    pub fn lie_data(&self) -> (LieRep, SkewMap) {
        (LieRep { algebra: self.bracket00.clone(), space_dim: self.dim1, action: self.bracket01.clone() }, self.mu3.clone())
    }

    pub fn is_skeletal(&self) -> bool {
        self.mu1.is_zero()
    }

    pub fn check_shapes(&self) -> Result<()> {
        let (a, b) = (self.dim0, self.dim1);
        if (self.mu1.rows, self.mu1.cols) != (a, b) {
            return Err(Error::MalformedTensor(format!("mu1 must be {a}x{b}")));
        }
        if self.bracket00.dim != a || self.bracket00.bracket.shape() != (a, a, a) || !self.bracket00.is_skew() {
            return Err(Error::MalformedTensor("bracket00 must be a skew tensor on g0".into()));
        }
        if self.bracket01.shape() != (a, b, b) {
            return Err(Error::MalformedTensor(format!("bracket01 must have shape ({a}, {b}, {b})")));
        }
        if (self.mu3.arity, self.mu3.domain_dim, self.mu3.codomain_dim) != (3, a, b) {
            return Err(Error::MalformedTensor("mu3 must be a trilinear map g0 -> g1".into()));
        }
        Ok(())
    }

    fn br00(&self, x: &[Rational], y: &[Rational]) -> V {
        self.bracket00.br(x, y)
    }

    fn br01(&self, x: &[Rational], v: &[Rational]) -> V {
        self.bracket01.apply(x, v)
    }

    fn m3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> V {
        self.mu3.eval(&[x.to_vec(), y.to_vec(), z.to_vec()])
    }

    /// The algebra as a representation of itself.
    pub fn adjoint_rep(&self) -> SkeletalRep {
        let (a, b) = (self.dim0, self.dim1);
        let mut rho10 = Tensor3::zeros(b, a, b);
        for x in 0..a {
            for v in 0..b {
                for w in 0..b {
                    rho10.set(v, x, w, -self.bracket01.at(x, v, w).clone());
                }
            }
        }
        let rho3 = MixedMap::from_fn(a, a, 2, 1, b, |xy, z| self.m3(&unit(a, xy[0]), &unit(a, xy[1]), &unit(a, z[0])));
        SkeletalRep { dim0: a, dim1: b, rho00: self.bracket00.bracket.clone(), rho01: self.bracket01.clone(), rho10, rho3 }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let a = io::count_field(v, "dim0", path)?;
        let b = io::count_field(v, "dim1", path)?;
        let mu1 = match io::opt_field(v, "mu1") {
            Some(x) if a > 0 && b > 0 => io::matrix(x, &format!("{path}.mu1"), a, b)?,
            _ => Matrix::zeros(a, b),
        };
        let bracket00 = lie_from_json(&json!({"dim": a, "bracket": io::opt_field(v, "bracket00").cloned().unwrap_or(json!([]))}), path)
            .map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(format!("{path}.bracket00"), msg),
                e => e,
            })?;
        let bracket01 = io::opt_tensor3(v, "bracket01", path, (a, b, b))?;
        let mu3 = match io::opt_field(v, "mu3") {
            Some(x) => skew3_from_json(x, &format!("{path}.mu3"), a, b)?,
            None => SkewMap::zero(3, a, b),
        };
        let t = TwoTermLInfinity { dim0: a, dim1: b, mu1, bracket00, bracket01, mu3 };
        t.check_shapes()?;
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let mut mu3 = Vec::new();
        for t in subsets(self.dim0, 3) {
            for (k, c) in self.mu3.value(&t).iter().enumerate() {
                if !c.is_zero() {
                    mu3.push(json!([t[0], t[1], t[2], k, format_rational(c)]));
                }
            }
        }
        json!({
            "dim0": self.dim0,
            "dim1": self.dim1,
            "mu1": io::matrix_to_json(&self.mu1),
            "bracket00": lie_to_json(&self.bracket00)["bracket"],
            "bracket01": io::tensor3_to_json(&self.bracket01),
            "mu3": mu3,
        })
    }
}

/// Entries `[i, j, k, idx, "c"]` of a skew trilinear map; any ordering, completed by sign.
fn skew3_from_json(v: &Value, path: &str, d: usize, c: usize) -> Result<SkewMap> {
    let mut m = SkewMap::zero(3, d, c);
    let mut seen = std::collections::HashSet::new();
    for (idx, x) in io::entries(v, path, &[d, d, d, c])? {
        let Some((neg, s)) = sort_sign(&idx[..3]) else {
            if x.is_zero() {
                continue;
            }
            return Err(Error::parse(path, format!("entry at {idx:?} has a repeated argument")));
        };
        let x = if neg { -x } else { x };
        let slot = &mut m.value_mut(&s)[idx[3]];
        if !seen.insert((s.clone(), idx[3])) && *slot != x {
            return Err(Error::parse(path, format!("conflicting entries for {s:?}")));
        }
        *slot = x;
    }
    Ok(m)
}

/// Entries `[i, j, a, s, "c"]` of a map `Λ²A ⊗ B -> C`, skew in the first two slots.
fn cubic_from_json(v: &Value, path: &str, da: usize, db: usize, dc: usize) -> Result<MixedMap> {
    let mut m = MixedMap::zero(da, db, 2, 1, dc);
    let mut seen = std::collections::HashSet::new();
    for (idx, x) in io::entries(v, path, &[da, da, db, dc])? {
        let Some((neg, s)) = sort_sign(&idx[..2]) else {
            if x.is_zero() {
                continue;
            }
            return Err(Error::parse(path, format!("entry at {idx:?} has a repeated argument")));
        };
        let x = if neg { -x } else { x };
        let slot = &mut m.value_mut(&s, &[idx[2]])[idx[3]];
        if !seen.insert((s.clone(), idx[2], idx[3])) && *slot != x {
            return Err(Error::parse(path, format!("conflicting entries for {s:?}")));
        }
        *slot = x;
    }
    Ok(m)
}

fn cubic_to_json(m: &MixedMap) -> Value {
    let mut out = Vec::new();
    for t in subsets(m.m, 2) {
        for a in 0..m.n {
            for (k, c) in m.value(&t, &[a]).iter().enumerate() {
                if !c.is_zero() {
                    out.push(json!([t[0], t[1], a, k, format_rational(c)]));
                }
            }
        }
    }
    Value::Array(out)
}

/// Multilinear evaluation of a mixed map on vectors.
fn mixed_eval(f: &MixedMap, gs: &[&[Rational]], hs: &[&[Rational]]) -> V {
    fn rec(f: &MixedMap, args: &[&[Rational]], split: usize, pos: usize, coef: Rational, idx: &mut Vec<usize>, out: &mut [Rational]) {
        if pos == args.len() {
            f.accumulate(out, &coef, &idx[..split], &idx[split..]);
            return;
        }
        for (i, a) in args[pos].iter().enumerate() {
            if !a.is_zero() {
                idx[pos] = i;
                rec(f, args, split, pos + 1, coef.clone() * a, idx, out);
            }
        }
    }
    let args: Vec<&[Rational]> = gs.iter().chain(hs).copied().collect();
    let mut out = vec![Rational::zero(); f.out];
    let mut idx = vec![0; args.len()];
    rec(f, &args, gs.len(), 0, Rational::from_integer(1.into()), &mut idx, &mut out);
    out
}

/// `Σ ± v` over the listed terms.
fn comb(len: usize, plus: &[&V], minus: &[&V]) -> V {
    let mut out = vec![Rational::zero(); len];
    let one = Rational::from_integer(1.into());
    for v in plus {
        axpy(&mut out, &one, v);
    }
    for v in minus {
        axpy(&mut out, &-one.clone(), v);
    }
    out
}

/// Checks conditions (i)–(v) on all basis tuples.
pub fn validate_two_term(t: &TwoTermLInfinity) -> Result<ValidationReport> {
    t.check_shapes()?;
    let (a, b) = (t.dim0, t.dim1);
    let e = |i| unit::<Rational>(a, i);
    let f = |i| unit::<Rational>(b, i);
    let mu1 = |v: &[Rational]| t.mu1.apply(v);
    let mut rep = ValidationReport::new(if t.is_skeletal() { "skeletal L-infinity algebra" } else { "2-term L-infinity algebra" });

    let mut g = CheckGroup::new(GROUP_TT_I);
    for x in 0..a {
        for v in 0..b {
            let r = comb(a, &[&mu1(&t.br01(&e(x), &f(v)))], &[&t.br00(&e(x), &mu1(&f(v)))]);
            g.record(&["x", "v"], &[x, v], &r);
        }
    }
    rep.push(g);

    let mut g = CheckGroup::new(GROUP_TT_II);
    for u in 0..b {
        for v in u..b {
            let r = comb(b, &[&t.br01(&mu1(&f(u)), &f(v)), &t.br01(&mu1(&f(v)), &f(u))], &[]);
            g.record(&["u", "v"], &[u, v], &r);
        }
    }
    rep.push(g);

    let mut g = CheckGroup::new(GROUP_TT_III);
    for s in subsets(a, 3) {
        let (x, y, z) = (e(s[0]), e(s[1]), e(s[2]));
        let r = comb(
            a,
            &[&mu1(&t.m3(&x, &y, &z))],
            &[&t.br00(&x, &t.br00(&y, &z)), &t.br00(&y, &t.br00(&z, &x)), &t.br00(&z, &t.br00(&x, &y))],
        );
        g.record(&["x", "y", "z"], &s, &r);
    }
    rep.push(g);

    let mut g = CheckGroup::new(GROUP_TT_IV);
    for s in subsets(a, 2) {
        let (x, y) = (e(s[0]), e(s[1]));
        for v in 0..b {
            let fv = f(v);
            let r = comb(
                b,
                &[&t.m3(&x, &y, &mu1(&fv)), &t.br01(&y, &t.br01(&x, &fv)), &t.br01(&t.br00(&x, &y), &fv)],
                &[&t.br01(&x, &t.br01(&y, &fv))],
            );
            g.record(&["x", "y", "v"], &[s[0], s[1], v], &r);
        }
    }
    rep.push(g);

    let mut g = CheckGroup::new(GROUP_TT_V);
    for s in subsets(a, 4) {
        let (x, y, z, w) = (e(s[0]), e(s[1]), e(s[2]), e(s[3]));
        let br = |p: &V, q: &V| t.br00(p, q);
        let r = comb(
            b,
            &[
                &t.br01(&x, &t.m3(&y, &z, &w)),
                &t.br01(&z, &t.m3(&x, &y, &w)),
                &t.m3(&br(&x, &z), &y, &w),
                &t.m3(&br(&y, &w), &x, &z),
            ],
            &[
                &t.br01(&y, &t.m3(&x, &z, &w)),
                &t.br01(&w, &t.m3(&x, &y, &z)),
                &t.m3(&br(&x, &y), &z, &w),
                &t.m3(&br(&x, &w), &y, &z),
                &t.m3(&br(&y, &z), &x, &w),
                &t.m3(&br(&z, &w), &x, &y),
            ],
        );
        g.record(&["x", "y", "z", "w"], &s, &r);
    }
    rep.push(g);
    Ok(rep)
}

/// A representation `V₁ --0--> V₀` of a skeletal algebra: `ρ₂` on `g₀ ⊗ V₀`, `g₀ ⊗ V₁`, `g₁ ⊗ V₀`
/// and `ρ₃: Λ²g₀ ⊗ V₀ -> V₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeletalRep {
    pub dim0: usize,
    pub dim1: usize,
    /// `(dim g₀, dim V₀, dim V₀)`.
    pub rho00: Tensor3,
    /// `(dim g₀, dim V₁, dim V₁)`.
    pub rho01: Tensor3,
    /// `(dim g₁, dim V₀, dim V₁)`.
    pub rho10: Tensor3,
    /// `value([x, y], [v]) = ρ₃(x, y, v)`.
    pub rho3: MixedMap,
}

pub const GROUP_REP_V0: &str = "g0 acts on V0";
pub const GROUP_REP_V1: &str = "g0 acts on V1";
pub const GROUP_REP_CUBIC: &str = "coherence of rho3 with mu3";

impl SkeletalRep {
    pub fn zero(t: &TwoTermLInfinity, dim0: usize, dim1: usize) -> Self {
        let (a, b) = (t.dim0, t.dim1);
        SkeletalRep {
            dim0,
            dim1,
            rho00: Tensor3::zeros(a, dim0, dim0),
            rho01: Tensor3::zeros(a, dim1, dim1),
            rho10: Tensor3::zeros(b, dim0, dim1),
            rho3: MixedMap::zero(a, dim0, 2, 1, dim1),
        }
    }

    pub fn check_shapes(&self, t: &TwoTermLInfinity) -> Result<()> {
        let (a, b, p, q) = (t.dim0, t.dim1, self.dim0, self.dim1);
        for (name, s, want) in
            [("00", self.rho00.shape(), (a, p, p)), ("01", self.rho01.shape(), (a, q, q)), ("10", self.rho10.shape(), (b, p, q))]
        {
            if s != want {
                return Err(Error::MalformedTensor(format!("action {name} has shape {s:?}, expected {want:?}")));
            }
        }
        let c = &self.rho3;
        if (c.m, c.n, c.a, c.b, c.out) != (a, p, 2, 1, q) {
            return Err(Error::MalformedTensor("cubic term has the wrong shape".into()));
        }
        Ok(())
    }

    fn r3(&self, x: &[Rational], y: &[Rational], v: &[Rational]) -> V {
        mixed_eval(&self.rho3, &[x, y], &[v])
    }

    /// Reads `{prefix}00`, `{prefix}01`, `{prefix}10`, `{prefix}3`.
    fn from_json_keys(v: &Value, path: &str, prefix: &str, t: &TwoTermLInfinity, dim0: usize, dim1: usize) -> Result<Self> {
        let (a, b) = (t.dim0, t.dim1);
        let rho3 = match io::opt_field(v, &format!("{prefix}3")) {
            Some(x) => cubic_from_json(x, &format!("{path}.{prefix}3"), a, dim0, dim1)?,
            None => MixedMap::zero(a, dim0, 2, 1, dim1),
        };
        let r = SkeletalRep {
            dim0,
            dim1,
            rho00: io::opt_tensor3(v, &format!("{prefix}00"), path, (a, dim0, dim0))?,
            rho01: io::opt_tensor3(v, &format!("{prefix}01"), path, (a, dim1, dim1))?,
            rho10: io::opt_tensor3(v, &format!("{prefix}10"), path, (b, dim0, dim1))?,
            rho3,
        };
        r.check_shapes(t)?;
        Ok(r)
    }

    fn to_json_keys(&self, prefix: &str, out: &mut serde_json::Map<String, Value>) {
        out.insert(format!("{prefix}00"), io::tensor3_to_json(&self.rho00));
        out.insert(format!("{prefix}01"), io::tensor3_to_json(&self.rho01));
        out.insert(format!("{prefix}10"), io::tensor3_to_json(&self.rho10));
        out.insert(format!("{prefix}3"), cubic_to_json(&self.rho3));
    }

    /// JSON `{"dim0", "dim1", "rho00", "rho01", "rho10", "rho3"}`.
    pub fn from_json(v: &Value, path: &str, t: &TwoTermLInfinity) -> Result<Self> {
        let d0 = io::count_field(v, "dim0", path)?;
        let d1 = io::count_field(v, "dim1", path)?;
        Self::from_json_keys(v, path, "rho", t, d0, d1)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("dim0".into(), json!(self.dim0));
        m.insert("dim1".into(), json!(self.dim1));
        self.to_json_keys("rho", &mut m);
        Value::Object(m)
    }
}

fn rep_groups(t: &TwoTermLInfinity, r: &SkeletalRep) -> Vec<CheckGroup> {
    let (a, p) = (t.dim0, r.dim0);
    let e = |i| unit::<Rational>(a, i);
    let mut out = vec![
        crate::lie_core::rep_law_group(GROUP_REP_V0, &t.bracket00, &r.rho00),
        crate::lie_core::rep_law_group(GROUP_REP_V1, &t.bracket00, &r.rho01),
    ];
    let mut g = CheckGroup::new(GROUP_REP_CUBIC);
    for s in subsets(a, 3) {
        let (x, y, z) = (e(s[0]), e(s[1]), e(s[2]));
        for vi in 0..p {
            let v = unit::<Rational>(p, vi);
            let a2 = |u: &V, w: &V| r.rho01.apply(u, w);
            let act = |u: &V, w: &V| r.rho00.apply(u, w);
            let br = |u: &V, w: &V| t.br00(u, w);
            let res = comb(
                r.dim1,
                &[
                    &a2(&x, &r.r3(&y, &z, &v)),
                    &a2(&z, &r.r3(&x, &y, &v)),
                    &r.rho10.apply(&t.m3(&x, &y, &z), &v),
                    &r.r3(&br(&x, &z), &y, &v),
                    &r.r3(&x, &z, &act(&y, &v)),
                ],
                &[
                    &a2(&y, &r.r3(&x, &z, &v)),
                    &r.r3(&br(&x, &y), &z, &v),
                    &r.r3(&y, &z, &act(&x, &v)),
                    &r.r3(&br(&y, &z), &x, &v),
                    &r.r3(&x, &y, &act(&z, &v)),
                ],
            );
            g.record(&["x", "y", "z", "v"], &[s[0], s[1], s[2], vi], &res);
        }
    }
    out.push(g);
    out
}

/// The three identities of a skeletal representation (skewness of ρ₃ is built into storage).
pub fn validate_skeletal_rep(t: &TwoTermLInfinity, r: &SkeletalRep) -> Result<ValidationReport> {
    r.check_shapes(t)?;
    require_skeletal(t, "algebra")?;
    let base = validate_two_term(t)?;
    if !base.is_valid() {
        return Err(Error::InvalidInput(Box::new(base)));
    }
    let mut rep = ValidationReport::new("skeletal representation");
    for g in rep_groups(t, r) {
        rep.push(g);
    }
    Ok(rep)
}

fn require_skeletal(t: &TwoTermLInfinity, name: &str) -> Result<()> {
    if t.is_skeletal() {
        Ok(())
    } else {
        Err(Error::MalformedTensor(format!("{name} is not skeletal (mu1 != 0)")))
    }
}

/// `(G, H, ρ₂, ρ₃, ψ₂, ψ₃)`: `rho` is a representation of `G` on `h₁ -> h₀`, `psi` one of `H` on `g₁ -> g₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeletalMatchedPair {
    pub g: TwoTermLInfinity,
    pub h: TwoTermLInfinity,
    pub rho: SkeletalRep,
    pub psi: SkeletalRep,
}

pub const GROUP_MIXED: [&str; 6] = [
    "rho2([x,v], h) = rho2(x, rho2(v,h)) - rho2(v, rho2(x,h))",
    "psi2([h,w], x) = psi2(h, psi2(w,x)) - psi2(w, psi2(h,x))",
    "rho2(x, [h,w]) compatibility",
    "rho2(v, [h,k]) compatibility",
    "psi2(h, [x,v]) compatibility",
    "psi2(w, [x,y]) compatibility",
];
pub const GROUP_PSI3_CLOSED: &str = "psi3 against the g0 bracket and rho2";
pub const GROUP_NU3_PSI3: &str = "nu3 and psi3 against rho2";
pub const GROUP_RHO3_CLOSED: &str = "rho3 against the h0 bracket and psi2";
pub const GROUP_MU3_RHO3: &str = "mu3 and rho3 against psi2";

impl SkeletalMatchedPair {
    pub fn check_shapes(&self) -> Result<()> {
        self.g.check_shapes()?;
        self.h.check_shapes()?;
        require_skeletal(&self.g, "G")?;
        require_skeletal(&self.h, "H")?;
        if (self.rho.dim0, self.rho.dim1) != (self.h.dim0, self.h.dim1)
            || (self.psi.dim0, self.psi.dim1) != (self.g.dim0, self.g.dim1)
        {
            return Err(Error::MalformedTensor("actions must be on the other algebra".into()));
        }
        self.rho.check_shapes(&self.g)?;
        self.psi.check_shapes(&self.h)
    }

    /// The underlying matched pair `(g₀, h₀, ρ₂, ψ₂)`.
    pub fn base(&self) -> MatchedPair {
        MatchedPair {
            g: self.g.bracket00.clone(),
            h: self.h.bracket00.clone(),
            rho: self.rho.rho00.clone(),
            psi: self.psi.rho00.clone(),
        }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let g = TwoTermLInfinity::from_json(io::field(v, "G", path)?, &format!("{path}.G"))?;
        let h = TwoTermLInfinity::from_json(io::field(v, "H", path)?, &format!("{path}.H"))?;
        let rho = SkeletalRep::from_json_keys(v, path, "rho", &g, h.dim0, h.dim1)?;
        let psi = SkeletalRep::from_json_keys(v, path, "psi", &h, g.dim0, g.dim1)?;
        let s = SkeletalMatchedPair { g, h, rho, psi };
        s.check_shapes()?;
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("G".into(), self.g.to_json());
        m.insert("H".into(), self.h.to_json());
        self.rho.to_json_keys("rho", &mut m);
        self.psi.to_json_keys("psi", &mut m);
        Value::Object(m)
    }
}

/// Both algebras, both representations, the compatibilities of `(g₀, h₀, ρ₂, ψ₂)`, the six mixed
/// identities and the four cubic compatibilities.
pub fn validate_skeletal_matched_pair(s: &SkeletalMatchedPair) -> Result<ValidationReport> {
    s.check_shapes()?;
    let (g, h, rho, psi) = (&s.g, &s.h, &s.rho, &s.psi);
    let mut rep = ValidationReport::new("matched pair of skeletal L-infinity algebras");
    rep.absorb("G", &validate_two_term(g)?);
    rep.absorb("H", &validate_two_term(h)?);
    let mut r = ValidationReport::new("");
    for grp in rep_groups(g, rho) {
        r.push(grp);
    }
    rep.absorb("rho", &r);
    let mut r = ValidationReport::new("");
    for grp in rep_groups(h, psi) {
        r.push(grp);
    }
    rep.absorb("psi", &r);
    let base = validate_matched_pair(&s.base());
    for name in [GROUP_RHO_COMPAT, GROUP_PSI_COMPAT] {
        let mut grp = base.group(name).expect("group present").clone();
        grp.name = format!("g0, h0: {name}");
        rep.push(grp);
    }

    let (m0, m1, n0, n1) = (g.dim0, g.dim1, h.dim0, h.dim1);
    let ge = |i| unit::<Rational>(m0, i);
    let gv = |i| unit::<Rational>(m1, i);
    let he = |i| unit::<Rational>(n0, i);
    let hw = |i| unit::<Rational>(n1, i);
    // ρ₂ and ψ₂ on the three slot types
    let r00 = |x: &V, k: &V| rho.rho00.apply(x, k);
    let r01 = |x: &V, w: &V| rho.rho01.apply(x, w);
    let r10 = |v: &V, k: &V| rho.rho10.apply(v, k);
    let p00 = |k: &V, x: &V| psi.rho00.apply(k, x);
    let p01 = |k: &V, v: &V| psi.rho01.apply(k, v);
    let p10 = |w: &V, x: &V| psi.rho10.apply(w, x);
    let psi3 = |hh: &V, k: &V, x: &V| psi.r3(hh, k, x);

    let mut groups: Vec<CheckGroup> = GROUP_MIXED.iter().map(|n| CheckGroup::new(*n)).collect();
    for x in 0..m0 {
        for v in 0..m1 {
            for a in 0..n0 {
                let (ex, fv, ha) = (ge(x), gv(v), he(a));
                let res = comb(n1, &[&r10(&g.br01(&ex, &fv), &ha), &r10(&fv, &r00(&ex, &ha))], &[&r01(&ex, &r10(&fv, &ha))]);
                groups[0].record(&["x", "v", "h"], &[x, v, a], &res);
                let res = comb(
                    m1,
                    &[&p01(&ha, &g.br01(&ex, &fv)), &p01(&r00(&ex, &ha), &fv)],
                    &[&g.br01(&p00(&ha, &ex), &fv), &g.br01(&ex, &p01(&ha, &fv)), &p10(&r10(&fv, &ha), &ex)],
                );
                groups[4].record(&["h", "x", "v"], &[a, x, v], &res);
            }
        }
    }
    for a in 0..n0 {
        for w in 0..n1 {
            for x in 0..m0 {
                let (ha, fw, ex) = (he(a), hw(w), ge(x));
                let res = comb(m1, &[&p10(&h.br01(&ha, &fw), &ex), &p10(&fw, &p00(&ha, &ex))], &[&p01(&ha, &p10(&fw, &ex))]);
                groups[1].record(&["h", "w", "x"], &[a, w, x], &res);
                let res = comb(
                    n1,
                    &[&r01(&ex, &h.br01(&ha, &fw)), &r01(&p00(&ha, &ex), &fw)],
                    &[&h.br01(&r00(&ex, &ha), &fw), &h.br01(&ha, &r01(&ex, &fw)), &r10(&p10(&fw, &ex), &ha)],
                );
                groups[2].record(&["x", "h", "w"], &[x, a, w], &res);
            }
        }
    }
    for v in 0..m1 {
        for t in subsets(n0, 2) {
            let (fv, hh, k) = (gv(v), he(t[0]), he(t[1]));
            // [r, k] = -[k, r] for r in h₁
            let res = comb(
                n1,
                &[&r10(&fv, &h.br00(&hh, &k)), &h.br01(&k, &r10(&fv, &hh)), &r10(&p01(&hh, &fv), &k)],
                &[&h.br01(&hh, &r10(&fv, &k)), &r10(&p01(&k, &fv), &hh)],
            );
            groups[3].record(&["v", "h", "k"], &[v, t[0], t[1]], &res);
        }
    }
    for w in 0..n1 {
        for t in subsets(m0, 2) {
            let (fw, x, y) = (hw(w), ge(t[0]), ge(t[1]));
            let res = comb(
                m1,
                &[&p10(&fw, &g.br00(&x, &y)), &g.br01(&y, &p10(&fw, &x)), &p10(&r01(&x, &fw), &y)],
                &[&g.br01(&x, &p10(&fw, &y)), &p10(&r01(&y, &fw), &x)],
            );
            groups[5].record(&["w", "x", "y"], &[w, t[0], t[1]], &res);
        }
    }
    for grp in groups {
        rep.push(grp);
    }

    let mut g1 = CheckGroup::new(GROUP_PSI3_CLOSED);
    let mut g3 = CheckGroup::new(GROUP_RHO3_CLOSED);
    for xs in subsets(m0, 2) {
        for hs in subsets(n0, 2) {
            let (x, y, hh, k) = (ge(xs[0]), ge(xs[1]), he(hs[0]), he(hs[1]));
            let res = comb(
                m1,
                &[&g.br01(&x, &psi3(&hh, &k, &y)), &psi3(&r00(&x, &k), &hh, &y), &psi3(&r00(&y, &hh), &k, &x)],
                &[
                    &g.br01(&y, &psi3(&hh, &k, &x)),
                    &psi3(&hh, &k, &g.br00(&x, &y)),
                    &psi3(&r00(&x, &hh), &k, &y),
                    &psi3(&r00(&y, &k), &hh, &x),
                ],
            );
            g1.record(&["x", "y", "h", "k"], &[xs[0], xs[1], hs[0], hs[1]], &res);
            let res = comb(
                n1,
                &[&h.br01(&hh, &rho.r3(&x, &y, &k)), &rho.r3(&p00(&hh, &y), &x, &k), &rho.r3(&p00(&k, &x), &y, &hh)],
                &[
                    &h.br01(&k, &rho.r3(&x, &y, &hh)),
                    &rho.r3(&x, &y, &h.br00(&hh, &k)),
                    &rho.r3(&p00(&hh, &x), &y, &k),
                    &rho.r3(&p00(&k, &y), &x, &hh),
                ],
            );
            g3.record(&["x", "y", "h", "k"], &[xs[0], xs[1], hs[0], hs[1]], &res);
        }
    }
    let mut g2 = CheckGroup::new(GROUP_NU3_PSI3);
    for xi in 0..m0 {
        for hs in subsets(n0, 3) {
            let (x, hh, k, k2) = (ge(xi), he(hs[0]), he(hs[1]), he(hs[2]));
            let res = comb(
                n1,
                &[
                    &rho.rho01.apply(&x, &h.m3(&hh, &k, &k2)),
                    &r10(&psi3(&k, &k2, &x), &hh),
                    &r10(&psi3(&hh, &k, &x), &k2),
                    &h.m3(&r00(&x, &k), &hh, &k2),
                ],
                &[&r10(&psi3(&hh, &k2, &x), &k), &h.m3(&r00(&x, &hh), &k, &k2), &h.m3(&r00(&x, &k2), &hh, &k)],
            );
            g2.record(&["x", "h", "k", "k'"], &[xi, hs[0], hs[1], hs[2]], &res);
        }
    }
    let mut g4 = CheckGroup::new(GROUP_MU3_RHO3);
    for hi in 0..n0 {
        for xs in subsets(m0, 3) {
            let (hh, x, y, z) = (he(hi), ge(xs[0]), ge(xs[1]), ge(xs[2]));
            let res = comb(
                m1,
                &[
                    &psi.rho01.apply(&hh, &g.m3(&x, &y, &z)),
                    &p10(&rho.r3(&y, &z, &hh), &x),
                    &p10(&rho.r3(&x, &y, &hh), &z),
                    &g.m3(&p00(&hh, &y), &x, &z),
                ],
                &[&p10(&rho.r3(&x, &z, &hh), &y), &g.m3(&p00(&hh, &x), &y, &z), &g.m3(&p00(&hh, &z), &x, &y)],
            );
            g4.record(&["h", "x", "y", "z"], &[hi, xs[0], xs[1], xs[2]], &res);
        }
    }
    for grp in [g1, g2, g3, g4] {
        rep.push(grp);
    }
    Ok(rep)
}

/// `(matched pair, representation, (F₁, 0, F₃))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeletalTriple {
    pub mp: MatchedPair,
    pub rep: MPRepresentation,
    pub cocycle: MPCochain,
}

impl SkeletalTriple {
    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let mp = MatchedPair::from_json(io::field(v, "matched_pair", path)?, &format!("{path}.matched_pair"))?;
        let rep = MPRepresentation::from_json(io::field(v, "representation", path)?, &format!("{path}.representation"), &mp)?;
        let (m, n) = mp.dims();
        let cocycle = MPCochain::from_json(io::field(v, "cocycle", path)?, &format!("{path}.cocycle"), [m, n, rep.p, rep.q])?;
        if cocycle.degree != 3 {
            return Err(Error::parse(format!("{path}.cocycle.degree"), "expected degree 3"));
        }
        Ok(SkeletalTriple { mp, rep, cocycle })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matched_pair": self.mp.to_json(),
            "representation": self.rep.to_json(),
            "cocycle": self.cocycle.to_json(),
        })
    }
}

/// Reads off the triple; the pair must validate.
pub fn skeletal_to_triple(s: &SkeletalMatchedPair) -> Result<SkeletalTriple> {
    let report = validate_skeletal_matched_pair(s)?;
    if !report.is_valid() {
        return Err(Error::InvalidInput(Box::new(report)));
    }
    Ok(assemble_triple(s))
}

/// The triple without any validation.
pub fn assemble_triple(s: &SkeletalMatchedPair) -> SkeletalTriple {
    let (m0, m1, n0, n1) = (s.g.dim0, s.g.dim1, s.h.dim0, s.h.dim1);
    let mp = s.base();
    let rep = MPRepresentation {
        base: mp.clone(),
        p: m1,
        q: n1,
        rho_v: s.g.bracket01.clone(),
        psi_v: s.psi.rho01.clone(),
        rho_w: s.rho.rho01.clone(),
        psi_w: s.h.bracket01.clone(),
        alpha: s.rho.rho10.clone(),
        beta: s.psi.rho10.clone(),
    };
    let mut c = MPCochain::zero([m0, n0, m1, n1], 3);
    c.components[0].0 = MixedMap::from_fn(m0, n0, 3, 0, m1, |x, _| s.g.mu3.value(x).to_vec());
    c.components[0].1 = MixedMap::from_fn(m0, n0, 2, 1, n1, |x, h| s.rho.rho3.value(x, h).to_vec());
    c.components[2].0 = MixedMap::from_fn(m0, n0, 1, 2, m1, |x, h| s.psi.rho3.value(h, x).to_vec());
    c.components[2].1 = MixedMap::from_fn(m0, n0, 0, 3, n1, |_, h| s.h.mu3.value(h).to_vec());
    SkeletalTriple { mp, rep, cocycle: c }
}

/// Splits `(F₁, 0, F₃)` back into `μ₃, ρ₃, ψ₃, ν₃`.
pub fn triple_to_skeletal(t: &SkeletalTriple) -> Result<SkeletalMatchedPair> {
    let (m0, n0) = t.mp.dims();
    let (m1, n1) = (t.rep.p, t.rep.q);
    let c = &t.cocycle;
    if c.degree != 3 || c.dims != [m0, n0, m1, n1] {
        return Err(Error::ShapeMismatch("expected a degree-3 cochain with the representation's dimensions".into()));
    }
    if t.rep.base != t.mp {
        return Err(Error::ShapeMismatch("representation is over a different matched pair".into()));
    }
    if !c.components[1].0.is_zero() || !c.components[1].1.is_zero() {
        return Err(Error::NonzeroMiddleComponent);
    }
    let mut base = validate_mp_representation(&t.rep)?;
    base.subject = "matched pair representation".into();
    if !base.is_valid() {
        return Err(Error::InvalidInput(Box::new(base)));
    }
    if !delta_mpl_coeff(&t.rep, c)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    Ok(disassemble_triple(t))
}

/// Inverse of [`assemble_triple`], ignoring the middle component.
pub fn disassemble_triple(t: &SkeletalTriple) -> SkeletalMatchedPair {
    let (m0, n0) = t.mp.dims();
    let r = &t.rep;
    let (m1, n1) = (r.p, r.q);
    let c = &t.cocycle;
    let g = TwoTermLInfinity {
        dim0: m0,
        dim1: m1,
        mu1: Matrix::zeros(m0, m1),
        bracket00: t.mp.g.clone(),
        bracket01: r.rho_v.clone(),
        mu3: SkewMap::from_fn(3, m0, m1, |x| c.components[0].0.value(x, &[]).to_vec()),
    };
    let h = TwoTermLInfinity {
        dim0: n0,
        dim1: n1,
        mu1: Matrix::zeros(n0, n1),
        bracket00: t.mp.h.clone(),
        bracket01: r.psi_w.clone(),
        mu3: SkewMap::from_fn(3, n0, n1, |hs| c.components[2].1.value(&[], hs).to_vec()),
    };
    let rho = SkeletalRep {
        dim0: n0,
        dim1: n1,
        rho00: t.mp.rho.clone(),
        rho01: r.rho_w.clone(),
        rho10: r.alpha.clone(),
        rho3: c.components[0].1.clone(),
    };
    let psi = SkeletalRep {
        dim0: m0,
        dim1: m1,
        rho00: t.mp.psi.clone(),
        rho01: r.psi_v.clone(),
        rho10: r.beta.clone(),
        rho3: MixedMap::from_fn(n0, m0, 2, 1, m1, |hs, x| c.components[2].0.value(x, hs).to_vec()),
    };
    SkeletalMatchedPair { g, h, rho, psi }
}

/// Validity of the triple: matched pair, representation and closedness of the cochain.
pub fn validate_triple(t: &SkeletalTriple) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new("skeletal triple");
    rep.absorb("representation", &validate_mp_representation(&t.rep)?);
    let mut g = CheckGroup::new("cochain is closed");
    g.checked += 1;
    let d = delta_mpl_coeff(&t.rep, &t.cocycle)?;
    if !d.is_zero() {
        g.failures.push(Witness { indices: vec![], residual: vec!["nonzero coboundary".into()] });
    }
    rep.push(g);
    let mut g = CheckGroup::new("middle component vanishes");
    g.checked += 1;
    if !t.cocycle.components[1].0.is_zero() || !t.cocycle.components[1].1.is_zero() {
        g.failures.push(Witness { indices: vec![], residual: vec!["nonzero middle component".into()] });
    }
    rep.push(g);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{kernel_basis, rat};
    use crate::lie_core::{ce_coboundary, ce_matrix, validate_lie_algebra, validate_representation};
    use crate::matched_pair::fixtures::{aff1, heisenberg, mpa, sl2};
    use crate::mp_cohomology::mpl_matrix;
    use crate::mp_rep::fixtures::rep_suite;

    fn lcg(seed: &mut u64) -> i64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 33) % 5) as i64 - 2
    }

    /// Coordinates (in the flattened cochain basis) that live in components 1 and 3.
    fn outer_slots(dims: [usize; 4]) -> Vec<usize> {
        let len = MPCochain::zero(dims, 3).space_dim();
        (0..len)
            .filter(|&j| {
                let b = MPCochain::basis_element(dims, 3, j);
                b.components[1].0.is_zero() && b.components[1].1.is_zero()
            })
            .collect()
    }

    fn cochain_from(dims: [usize; 4], slots: &[usize], coeffs: &[Rational]) -> MPCochain {
        let mut v = vec![Rational::zero(); MPCochain::zero(dims, 3).space_dim()];
        for (s, c) in slots.iter().zip(coeffs) {
            v[*s] = c.clone();
        }
        MPCochain::unflatten(dims, 3, &v).unwrap()
    }

    /// Closed cochains of shape `(F₁, 0, F₃)`.
    fn closed_outer(rep: &MPRepresentation) -> Vec<MPCochain> {
        let (m, n) = rep.base.dims();
        let dims = [m, n, rep.p, rep.q];
        let slots = outer_slots(dims);
        let d = mpl_matrix(rep, 3);
        let sub = Matrix::from_columns(d.rows, &slots.iter().map(|&j| d.column(j)).collect::<Vec<_>>());
        kernel_basis(&sub).into_iter().map(|k| cochain_from(dims, &slots, &k)).collect()
    }

    fn small_reps() -> Vec<MPRepresentation> {
        rep_suite().into_iter().filter(|r| r.base.g.dim + r.base.h.dim + r.p + r.q <= 8).collect()
    }

    #[test]
    fn lie_algebras_are_two_term() {
        for g in [aff1(), sl2(), heisenberg()] {
            let t = TwoTermLInfinity::skeletal(&LieRep::trivial(&g, 0), &SkewMap::zero(3, g.dim, 0)).unwrap();
            assert!(validate_two_term(&t).unwrap().is_valid());
        }
    }

    #[test]
    fn closed_three_cochains_give_skeletal_algebras() {
        for r in [LieRep::adjoint(&sl2()), LieRep::trivial(&heisenberg(), 2), LieRep::adjoint(&heisenberg())] {
            for k in kernel_basis(&ce_matrix(&r, 3)) {
                let theta = SkewMap { arity: 3, domain_dim: r.algebra.dim, codomain_dim: r.space_dim, coeffs: k };
                let t = TwoTermLInfinity::skeletal(&r, &theta).unwrap();
                assert!(validate_two_term(&t).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn non_closed_trilinear_map_fails_coherence() {
        // aff(1) ⊕ aff(1) with [e0,e1] = e1, [e2,e3] = e3, trivial on k, θ = e^{123}:
        // δθ(e0,e1,e2,e3) = -θ([e0,e1],e2,e3) = -1
        let g = LieAlgebra::from_entries(4, &[(0, 1, 1, rat(1)), (2, 3, 3, rat(1))]).unwrap();
        let r = LieRep::trivial(&g, 1);
        let mut theta = SkewMap::zero(3, 4, 1);
        theta.value_mut(&[1, 2, 3])[0] = rat(1);
        assert_eq!(ce_coboundary(&r, &theta, 3).unwrap().coeffs, vec![rat(-1)]);
        let rep = validate_two_term(&TwoTermLInfinity::skeletal(&r, &theta).unwrap()).unwrap();
        assert_eq!(rep.failed_groups(), vec![GROUP_TT_V]);
    }

    #[test]
    fn five_conditions_match_lie_data() {
        let mut seed = 7u64;
        for _ in 0..60 {
            let (a, b) = (3 + (lcg(&mut seed).unsigned_abs() as usize % 2), 1);
            let mut entries = Vec::new();
            for s in subsets(a, 2) {
                for k in 0..a {
                    if lcg(&mut seed) == 2 {
                        entries.push((s[0], s[1], k, rat(lcg(&mut seed))));
                    }
                }
            }
            let g = LieAlgebra::from_entries(a, &entries).unwrap();
            let mut act = Tensor3::zeros(a, b, b);
            for x in 0..a {
                if lcg(&mut seed) > 0 {
                    act.set(x, 0, 0, rat(lcg(&mut seed)));
                }
            }
            let r = LieRep { algebra: g.clone(), space_dim: b, action: act };
            let theta = SkewMap::from_fn(3, a, b, |_| vec![rat(lcg(&mut seed))]);
            let t = TwoTermLInfinity::skeletal(&r, &theta).unwrap();
            let rep = validate_two_term(&t).unwrap();
            assert_eq!(rep.group(GROUP_TT_III).unwrap().passed(), validate_lie_algebra(&g).is_valid());
            assert_eq!(rep.group(GROUP_TT_IV).unwrap().passed(), validate_representation(&r).is_valid());
            assert_eq!(rep.group(GROUP_TT_V).unwrap().passed(), ce_coboundary(&r, &theta, 3).unwrap().is_zero());
            assert!(rep.group(GROUP_TT_I).unwrap().passed() && rep.group(GROUP_TT_II).unwrap().passed());
        }
    }

    #[test]
    fn non_skeletal_conditions() {
        // identity differential k -> k with zero brackets: (i)-(v) hold
        let mut t = TwoTermLInfinity::skeletal(&LieRep::trivial(&LieAlgebra::abelian(1), 1), &SkewMap::zero(3, 1, 1)).unwrap();
        t.mu1 = Matrix::identity(1);
        assert!(validate_two_term(&t).unwrap().is_valid());
        // with [e, u] = u: (i) gives μ₁[e,u] - [e,μ₁u] = e and (ii) gives [e,u] + [e,u] = 2u
        t.bracket01.set(0, 0, 0, rat(1));
        let rep = validate_two_term(&t).unwrap();
        assert_eq!(rep.group(GROUP_TT_I).unwrap().failures[0].residual, vec!["1"]);
        assert_eq!(rep.group(GROUP_TT_II).unwrap().failures[0].residual, vec!["2"]);
        assert!(rep.group(GROUP_TT_III).unwrap().passed());
    }

    #[test]
    fn adjoint_and_zero_representations() {
        let r = LieRep::adjoint(&sl2());
        let ks = kernel_basis(&ce_matrix(&r, 3));
        assert!(!ks.is_empty());
        for k in ks {
            let theta = SkewMap { arity: 3, domain_dim: 3, codomain_dim: 3, coeffs: k };
            let t = TwoTermLInfinity::skeletal(&r, &theta).unwrap();
            let ad = t.adjoint_rep();
            let v = validate_skeletal_rep(&t, &ad).unwrap();
            assert!(v.is_valid(), "{}", v.to_text());
            assert!(validate_skeletal_rep(&t, &SkeletalRep::zero(&t, 2, 3)).unwrap().is_valid());
            // doubling ρ₃ leaves a residual ρ₂(μ₃(x,y,z), v), nonzero since ad is faithful
            let mut bad = ad.clone();
            bad.rho3 = bad.rho3.scaled(&rat(2));
            let v = validate_skeletal_rep(&t, &bad).unwrap();
            assert_eq!(v.failed_groups(), vec![GROUP_REP_CUBIC]);
        }
    }

    #[test]
    fn rep_requires_valid_skeletal_algebra() {
        let mut t = TwoTermLInfinity::skeletal(&LieRep::trivial(&aff1(), 1), &SkewMap::zero(3, 2, 1)).unwrap();
        let z = SkeletalRep::zero(&t, 1, 1);
        t.mu1.set(0, 0, rat(1));
        assert!(matches!(validate_skeletal_rep(&t, &z), Err(Error::MalformedTensor(_))));
    }

    #[test]
    fn zero_cubic_terms_reduce_to_lie_data() {
        for rep in small_reps() {
            let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: MPCochain::for_rep(&rep, 3) };
            let s = triple_to_skeletal(&t).unwrap();
            assert!(s.g.mu3.is_zero() && s.h.mu3.is_zero() && s.rho.rho3.is_zero() && s.psi.rho3.is_zero());
            let v = validate_skeletal_matched_pair(&s).unwrap();
            assert!(v.is_valid(), "{}", v.to_text());
            assert!(skeletal_to_triple(&s).unwrap().cocycle.is_zero());
        }
    }

    /// Each cubic identity is one bidegree component of `δ(F₁, 0, F₃)`.
    #[test]
    fn identities_are_components_of_the_coboundary() {
        let mut seed = 11u64;
        for rep in small_reps() {
            let (m, n) = rep.base.dims();
            let dims = [m, n, rep.p, rep.q];
            let slots = outer_slots(dims);
            let mut samples: Vec<MPCochain> = (0..slots.len())
                .map(|j| {
                    let mut c = vec![Rational::zero(); slots.len()];
                    c[j] = rat(1);
                    cochain_from(dims, &slots, &c)
                })
                .collect();
            samples.extend((0..4).map(|_| cochain_from(dims, &slots, &slots.iter().map(|_| rat(lcg(&mut seed))).collect::<Vec<_>>())));
            samples.extend(closed_outer(&rep));
            for c in samples {
                let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: c };
                let s = disassemble_triple(&t);
                let d = delta_mpl_coeff(&rep, &t.cocycle).unwrap();
                let v = validate_skeletal_matched_pair(&s).unwrap();
                let zero = |r: usize, w: bool| if w { d.components[r].1.is_zero() } else { d.components[r].0.is_zero() };
                let passed = |name: &str| v.group(name).unwrap().passed();
                let cubic = |t: &TwoTermLInfinity, r: &SkeletalRep| rep_groups(t, r)[2].passed();
                assert_eq!(validate_two_term(&s.g).unwrap().group(GROUP_TT_V).unwrap().passed(), zero(0, false));
                assert_eq!(cubic(&s.g, &s.rho), zero(0, true));
                assert_eq!(passed(GROUP_MU3_RHO3), zero(1, false));
                assert_eq!(passed(GROUP_RHO3_CLOSED), zero(1, true));
                assert_eq!(passed(GROUP_PSI3_CLOSED), zero(2, false));
                assert_eq!(passed(GROUP_NU3_PSI3), zero(2, true));
                assert_eq!(cubic(&s.h, &s.psi), zero(3, false));
                assert_eq!(validate_two_term(&s.h).unwrap().group(GROUP_TT_V).unwrap().passed(), zero(3, true));
                assert_eq!(v.is_valid(), d.is_zero());
            }
        }
    }

    #[test]
    fn correspondence_is_bijective() {
        let mut count = 0;
        for rep in small_reps() {
            for c in closed_outer(&rep).into_iter().take(3) {
                let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: c };
                assert!(validate_triple(&t).unwrap().is_valid());
                let s = triple_to_skeletal(&t).unwrap();
                assert!(validate_skeletal_matched_pair(&s).unwrap().is_valid());
                assert_eq!(skeletal_to_triple(&s).unwrap(), t);
                assert_eq!(triple_to_skeletal(&skeletal_to_triple(&s).unwrap()).unwrap(), s);
                count += 1;
            }
        }
        assert!(count >= 20, "{count} fixtures");
    }

    #[test]
    fn perturbed_psi3_is_detected() {
        let mut hit = false;
        for rep in small_reps() {
            let (m, n) = rep.base.dims();
            if n < 2 || rep.p == 0 {
                continue;
            }
            let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: MPCochain::for_rep(&rep, 3) };
            let mut s = triple_to_skeletal(&t).unwrap();
            s.psi.rho3.value_mut(&[0, 1], &[0])[0] = rat(1);
            let v = validate_skeletal_matched_pair(&s).unwrap();
            let d = delta_mpl_coeff(&rep, &assemble_triple(&s).cocycle).unwrap();
            assert_eq!(v.is_valid(), d.is_zero());
            if !v.is_valid() {
                hit = true;
                assert!(v.groups.iter().filter(|g| !g.passed()).all(|g| !g.failures.is_empty()));
                let _ = m;
            }
        }
        assert!(hit);
    }

    #[test]
    fn contract_violations() {
        let rep = small_reps().remove(0);
        let (m, n) = rep.base.dims();
        let dims = [m, n, rep.p, rep.q];
        let len = MPCochain::zero(dims, 3).space_dim();
        let slots = outer_slots(dims);
        let middle = (0..len).find(|j| !slots.contains(j));
        if let Some(j) = middle {
            let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: MPCochain::basis_element(dims, 3, j) };
            assert!(matches!(triple_to_skeletal(&t), Err(Error::NonzeroMiddleComponent)));
        }
        let d = mpl_matrix(&rep, 3);
        for j in slots {
            if d.column(j).iter().any(|c| !c.is_zero()) {
                let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: MPCochain::basis_element(dims, 3, j) };
                assert!(matches!(triple_to_skeletal(&t), Err(Error::NotACocycle)));
                assert!(matches!(skeletal_to_triple(&disassemble_triple(&t)), Err(Error::InvalidInput(_))));
                break;
            }
        }
    }

    #[test]
    fn mpa_lift_has_empty_cubic_terms() {
        let rep = MPRepresentation::zero(&mpa(), 1, 1);
        let t = SkeletalTriple { mp: mpa(), rep: rep.clone(), cocycle: MPCochain::for_rep(&rep, 3) };
        // Λ³ of a line vanishes; only the ρ₃ and ψ₃ slots survive and δ of them is zero here
        assert_eq!(outer_slots([1, 1, 1, 1]).len(), 0);
        let s = triple_to_skeletal(&t).unwrap();
        assert_eq!(skeletal_to_triple(&s).unwrap(), t);
    }

    #[test]
    fn json_round_trips() {
        let rep = small_reps().into_iter().find(|r| !closed_outer(r).iter().all(|c| c.is_zero())).unwrap();
        let c = closed_outer(&rep).pop().unwrap();
        let t = SkeletalTriple { mp: rep.base.clone(), rep: rep.clone(), cocycle: c };
        let s = triple_to_skeletal(&t).unwrap();
        assert_eq!(SkeletalMatchedPair::from_json(&s.to_json(), "$").unwrap(), s);
        assert_eq!(SkeletalTriple::from_json(&t.to_json(), "$").unwrap(), t);
        assert_eq!(TwoTermLInfinity::from_json(&s.g.to_json(), "$").unwrap(), s.g);
        let ad = s.g.adjoint_rep();
        assert_eq!(SkeletalRep::from_json(&ad.to_json(), "$", &s.g).unwrap(), ad);
        let bad = json!({"dim0": 3, "dim1": 1, "mu3": [[0, 0, 1, 0, "1"]]});
        assert!(matches!(TwoTermLInfinity::from_json(&bad, "$"), Err(Error::Parse { .. })));
        // unsorted entries are normalized by sign
        let t2 = TwoTermLInfinity::from_json(&json!({"dim0": 3, "dim1": 1, "mu3": [[2, 1, 0, 0, "1"]]}), "$").unwrap();
        assert_eq!(t2.mu3.value(&[0, 1, 2])[0], rat(-1));
    }
}
