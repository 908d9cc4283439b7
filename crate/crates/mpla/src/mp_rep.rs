//! Representations `(V, W, ρ_V, ψ_V, ρ_W, ψ_W, α, β)` of a matched pair and the constructions built from them.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::combinat::subsets;
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, Rational, Scalar};
use crate::io;
use crate::lie_core::{rep_law_group, unit, CheckGroup, LieAlgebra, LieRep, Tensor3, ValidationReport};
use crate::matched_pair::{validate_matched_pair, MatchedPair};

/// Tensor conventions (`p = dim V`, `q = dim W`):
/// `rho_v[i][p][p']`, `psi_v[a][p][p']`, `rho_w[i][s][s']`, `psi_w[a][s][s']` act as in [`LieRep`];
/// `alpha[p][a][s]`: `α_{v_p} f_a = Σ_s alpha[p][a][s] w_s`; `beta[s][i][p]`: `β_{w_s} e_i = Σ_p beta[s][i][p] v_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPRepresentation<S = Rational> {
    pub base: MatchedPair<S>,
    pub p: usize,
    pub q: usize,
    pub rho_v: Tensor3<S>,
    pub psi_v: Tensor3<S>,
    pub rho_w: Tensor3<S>,
    pub psi_w: Tensor3<S>,
    pub alpha: Tensor3<S>,
    pub beta: Tensor3<S>,
}

impl<S: Scalar> MPRepresentation<S> {
    pub fn zero(base: &MatchedPair<S>, p: usize, q: usize) -> Self {
        let (m, n) = base.dims();
        MPRepresentation {
            base: base.clone(),
            p,
            q,
            rho_v: Tensor3::zeros(m, p, p),
            psi_v: Tensor3::zeros(n, p, p),
            rho_w: Tensor3::zeros(m, q, q),
            psi_w: Tensor3::zeros(n, q, q),
            alpha: Tensor3::zeros(p, n, q),
            beta: Tensor3::zeros(q, m, p),
        }
    }

    /// Checks every tensor shape against the base and `(p, q)`.
    pub fn check_shapes(&self) -> Result<()> {
        let (m, n) = self.base.dims();
        let (p, q) = (self.p, self.q);
        for (name, t, s) in [
            ("rho_V", &self.rho_v, (m, p, p)),
            ("psi_V", &self.psi_v, (n, p, p)),
            ("rho_W", &self.rho_w, (m, q, q)),
            ("psi_W", &self.psi_w, (n, q, q)),
            ("alpha", &self.alpha, (p, n, q)),
            ("beta", &self.beta, (q, m, p)),
        ] {
            if t.shape() != s {
                return Err(Error::MalformedTensor(format!("{name} has shape {:?}, expected {s:?}", t.shape())));
            }
        }
        Ok(())
    }

    /// `(V, W) = (g, h)` with `ρ_V = ad_g`, `ψ_V = ψ`, `ρ_W = ρ`, `ψ_W = ad_h`, `α = ρ`, `β = ψ`.
    pub fn adjoint(mp: &MatchedPair<S>) -> Self {
        let (m, n) = mp.dims();
        MPRepresentation {
            base: mp.clone(),
            p: m,
            q: n,
            rho_v: mp.g.bracket.clone(),
            psi_v: mp.psi.clone(),
            rho_w: mp.rho.clone(),
            psi_w: mp.h.bracket.clone(),
            alpha: mp.rho.clone(),
            beta: mp.psi.clone(),
        }
    }

    pub fn rho_v(&self, x: &[S], v: &[S]) -> Vec<S> {
        self.rho_v.apply(x, v)
    }
    pub fn psi_v(&self, h: &[S], v: &[S]) -> Vec<S> {
        self.psi_v.apply(h, v)
    }
    pub fn rho_w(&self, x: &[S], w: &[S]) -> Vec<S> {
        self.rho_w.apply(x, w)
    }
    pub fn psi_w(&self, h: &[S], w: &[S]) -> Vec<S> {
        self.psi_w.apply(h, w)
    }
    /// `α_v h`.
    pub fn alpha(&self, v: &[S], h: &[S]) -> Vec<S> {
        self.alpha.apply(v, h)
    }
    /// `β_w x`.
    pub fn beta(&self, w: &[S], x: &[S]) -> Vec<S> {
        self.beta.apply(w, x)
    }

    /// The matched pair `(g ⊕ V, h ⊕ W)` without validating anything.
    pub fn semidirect_unchecked(&self) -> MatchedPair<S> {
        let b = &self.base;
        let (m, n) = b.dims();
        let (p, q) = (self.p, self.q);
        let gg = extend_algebra(&b.g, &self.rho_v);
        let hh = extend_algebra(&b.h, &self.psi_w);
        let mut rho = Tensor3::zeros(m + p, n + q, n + q);
        for i in 0..m {
            for a in 0..n {
                for c in 0..n {
                    rho.set(i, a, c, b.rho.at(i, a, c).clone());
                }
            }
            for s in 0..q {
                for t in 0..q {
                    rho.set(i, n + s, n + t, self.rho_w.at(i, s, t).clone());
                }
            }
        }
        for pp in 0..p {
            for a in 0..n {
                for s in 0..q {
                    rho.set(m + pp, a, n + s, self.alpha.at(pp, a, s).clone());
                }
            }
        }
        let mut psi = Tensor3::zeros(n + q, m + p, m + p);
        for a in 0..n {
            for i in 0..m {
                for j in 0..m {
                    psi.set(a, i, j, b.psi.at(a, i, j).clone());
                }
            }
            for u in 0..p {
                for t in 0..p {
                    psi.set(a, m + u, m + t, self.psi_v.at(a, u, t).clone());
                }
            }
        }
        for s in 0..q {
            for i in 0..m {
                for t in 0..p {
                    psi.set(n + s, i, m + t, self.beta.at(s, i, t).clone());
                }
            }
        }
        MatchedPair { g: gg, h: hh, rho, psi }
    }

    /// The action of `g ⋈ h` on `V ⊕ W`:
    /// `(x,0)·(v,w) = (ρ_V x v - β_w x, ρ_W x w)`, `(0,h)·(v,w) = (ψ_V h v, ψ_W h w - α_v h)`.
    pub fn induced_unchecked(&self) -> LieRep<S> {
        let (m, n) = self.base.dims();
        let (p, q) = (self.p, self.q);
        let mut act = Tensor3::zeros(m + n, p + q, p + q);
        for i in 0..m {
            for u in 0..p {
                for t in 0..p {
                    act.set(i, u, t, self.rho_v.at(i, u, t).clone());
                }
            }
            for s in 0..q {
                for t in 0..p {
                    act.set(i, p + s, t, -self.beta.at(s, i, t).clone());
                }
                for t in 0..q {
                    act.set(i, p + s, p + t, self.rho_w.at(i, s, t).clone());
                }
            }
        }
        for a in 0..n {
            for u in 0..p {
                for t in 0..p {
                    act.set(m + a, u, t, self.psi_v.at(a, u, t).clone());
                }
                for t in 0..q {
                    act.set(m + a, u, p + t, -self.alpha.at(u, a, t).clone());
                }
            }
            for s in 0..q {
                for t in 0..q {
                    act.set(m + a, p + s, p + t, self.psi_w.at(a, s, t).clone());
                }
            }
        }
        LieRep { algebra: self.base.bicrossed_unchecked(), space_dim: p + q, action: act }
    }
}

/// `g ⋉ V`: `[(x,u),(y,v)] = ([x,y], ρ_x v - ρ_y u)`.
fn extend_algebra<S: Scalar>(g: &LieAlgebra<S>, act: &Tensor3<S>) -> LieAlgebra<S> {
    let m = g.dim;
    let p = act.d1;
    let d = m + p;
    let mut b = Tensor3::zeros(d, d, d);
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                b.set(i, j, k, g.bracket.at(i, j, k).clone());
            }
        }
        for u in 0..p {
            for t in 0..p {
                let c = act.at(i, u, t).clone();
                b.set(i, m + u, m + t, c.clone());
                b.set(m + u, i, m + t, -c);
            }
        }
    }
    LieAlgebra { dim: d, bracket: b }
}

pub const GROUP_BASE: &str = "base matched pair";
pub const IDENTITY_NAMES: [&str; 6] = [
    "alpha_{rho_V(x)v} h = rho_W(x) alpha_v h - alpha_v rho_x h",
    "beta_{psi_W(h)w} x = psi_V(h) beta_w x - beta_w psi_h x",
    "rho_W(x) psi_W(h) w = psi_W(rho_x h) w + psi_W(h) rho_W(x) w + alpha_{beta_w x} h - rho_W(psi_h x) w",
    "alpha_v [h,k] = -psi_W(k) alpha_v h + psi_W(h) alpha_v k + alpha_{psi_V(k)v} h - alpha_{psi_V(h)v} k",
    "psi_V(h) rho_V(x) v = rho_V(psi_h x) v + rho_V(x) psi_V(h) v + beta_{alpha_v h} x - psi_V(rho_x h) v",
    "beta_w [x,y] = -rho_V(y) beta_w x + rho_V(x) beta_w y + beta_{rho_W(y)w} x - beta_{rho_W(x)w} y",
];

fn lin<S: Scalar>(terms: &[(i64, Vec<S>)]) -> Vec<S> {
    let len = terms[0].1.len();
    let mut out = vec![S::zero(); len];
    for (c, v) in terms {
        let c = if *c >= 0 { S::one() } else { -S::one() };
        axpy(&mut out, &c, v);
    }
    out
}

/// The base matched pair, the four representation laws and the six mixed identities.
pub fn validate_mp_representation<S: Scalar>(r: &MPRepresentation<S>) -> Result<ValidationReport> {
    r.check_shapes()?;
    let b = &r.base;
    let (m, n) = b.dims();
    let (p, q) = (r.p, r.q);
    let mut rep = ValidationReport::new("matched pair representation");
    rep.absorb(GROUP_BASE, &validate_matched_pair(b));
    rep.push(rep_law_group("rho_V is a representation of g", &b.g, &r.rho_v));
    rep.push(rep_law_group("psi_V is a representation of h", &b.h, &r.psi_v));
    rep.push(rep_law_group("rho_W is a representation of g", &b.g, &r.rho_w));
    rep.push(rep_law_group("psi_W is a representation of h", &b.h, &r.psi_w));
    let e = |d: usize, i: usize| unit::<S>(d, i);

    let mut g1 = CheckGroup::new(IDENTITY_NAMES[0]);
    for i in 0..m {
        for u in 0..p {
            for a in 0..n {
                let (x, v, h) = (e(m, i), e(p, u), e(n, a));
                let res = lin(&[
                    (1, r.alpha(&r.rho_v(&x, &v), &h)),
                    (-1, r.rho_w(&x, &r.alpha(&v, &h))),
                    (1, r.alpha(&v, &b.rho_vec(&x, &h))),
                ]);
                g1.record(&["x", "v", "h"], &[i, u, a], &res);
            }
        }
    }
    rep.push(g1);

    let mut g2 = CheckGroup::new(IDENTITY_NAMES[1]);
    for a in 0..n {
        for s in 0..q {
            for i in 0..m {
                let (h, w, x) = (e(n, a), e(q, s), e(m, i));
                let res = lin(&[
                    (1, r.beta(&r.psi_w(&h, &w), &x)),
                    (-1, r.psi_v(&h, &r.beta(&w, &x))),
                    (1, r.beta(&w, &b.psi_vec(&h, &x))),
                ]);
                g2.record(&["h", "w", "x"], &[a, s, i], &res);
            }
        }
    }
    rep.push(g2);

    let mut g3 = CheckGroup::new(IDENTITY_NAMES[2]);
    for i in 0..m {
        for a in 0..n {
            for s in 0..q {
                let (x, h, w) = (e(m, i), e(n, a), e(q, s));
                let res = lin(&[
                    (1, r.rho_w(&x, &r.psi_w(&h, &w))),
                    (-1, r.psi_w(&b.rho_vec(&x, &h), &w)),
                    (-1, r.psi_w(&h, &r.rho_w(&x, &w))),
                    (-1, r.alpha(&r.beta(&w, &x), &h)),
                    (1, r.rho_w(&b.psi_vec(&h, &x), &w)),
                ]);
                g3.record(&["x", "h", "w"], &[i, a, s], &res);
            }
        }
    }
    rep.push(g3);

    let mut g4 = CheckGroup::new(IDENTITY_NAMES[3]);
    for u in 0..p {
        for t in subsets(n, 2) {
            let (v, h, k) = (e(p, u), e(n, t[0]), e(n, t[1]));
            let res = lin(&[
                (1, r.alpha(&v, &b.h.br(&h, &k))),
                (1, r.psi_w(&k, &r.alpha(&v, &h))),
                (-1, r.psi_w(&h, &r.alpha(&v, &k))),
                (-1, r.alpha(&r.psi_v(&k, &v), &h)),
                (1, r.alpha(&r.psi_v(&h, &v), &k)),
            ]);
            g4.record(&["v", "h", "k"], &[u, t[0], t[1]], &res);
        }
    }
    rep.push(g4);

    let mut g5 = CheckGroup::new(IDENTITY_NAMES[4]);
    for a in 0..n {
        for i in 0..m {
            for u in 0..p {
                let (h, x, v) = (e(n, a), e(m, i), e(p, u));
                let res = lin(&[
                    (1, r.psi_v(&h, &r.rho_v(&x, &v))),
                    (-1, r.rho_v(&b.psi_vec(&h, &x), &v)),
                    (-1, r.rho_v(&x, &r.psi_v(&h, &v))),
                    (-1, r.beta(&r.alpha(&v, &h), &x)),
                    (1, r.psi_v(&b.rho_vec(&x, &h), &v)),
                ]);
                g5.record(&["h", "x", "v"], &[a, i, u], &res);
            }
        }
    }
    rep.push(g5);

    let mut g6 = CheckGroup::new(IDENTITY_NAMES[5]);
    for s in 0..q {
        for t in subsets(m, 2) {
            let (w, x, y) = (e(q, s), e(m, t[0]), e(m, t[1]));
            let res = lin(&[
                (1, r.beta(&w, &b.g.br(&x, &y))),
                (1, r.rho_v(&y, &r.beta(&w, &x))),
                (-1, r.rho_v(&x, &r.beta(&w, &y))),
                (-1, r.beta(&r.rho_w(&y, &w), &x)),
                (1, r.beta(&r.rho_w(&x, &w), &y)),
            ]);
            g6.record(&["w", "x", "y"], &[s, t[0], t[1]], &res);
        }
    }
    rep.push(g6);
    Ok(rep)
}

fn require_valid(r: &MPRepresentation) -> Result<()> {
    let v = validate_mp_representation(r)?;
    if v.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidInput(Box::new(v)))
    }
}

/// `(g ⊕ V, h ⊕ W)` with `(ρ⋉α)_{(x,v)}(h,w) = (ρ_x h, ρ_W(x)w + α_v h)` and
/// `(ψ⋉β)_{(h,w)}(x,u) = (ψ_h x, ψ_V(h)u + β_w x)`.
pub fn semidirect_product(r: &MPRepresentation) -> Result<MatchedPair> {
    require_valid(r)?;
    Ok(r.semidirect_unchecked())
}

/// `V ⊕ W` as a representation of `g ⋈ h`.
pub fn induced_bicross_rep(r: &MPRepresentation) -> Result<LieRep> {
    require_valid(r)?;
    Ok(r.induced_unchecked())
}

/// Inverse of [`induced_bicross_rep`]: reads the eight tensors off an action of `g ⋈ h` on `V ⊕ W`.
/// Pure g elements must not map V into W, and pure h elements must not map W into V.
pub fn extract_rep_from_bicross(base: &MatchedPair, r: &LieRep, split: (usize, usize)) -> Result<MPRepresentation> {
    let (m, n) = base.dims();
    let (p, q) = split;
    if r.algebra.dim != m + n || r.space_dim != p + q {
        return Err(Error::SpaceMismatch(format!(
            "representation of a {}-dimensional algebra on {} dimensions, expected {} on {}",
            r.algebra.dim,
            r.space_dim,
            m + n,
            p + q
        )));
    }
    if r.algebra != base.bicrossed_unchecked() {
        return Err(Error::SpaceMismatch("the acting algebra is not the bicrossed product of the base".into()));
    }
    for i in 0..m {
        for u in 0..p {
            for t in 0..q {
                let c = r.action.at(i, u, p + t);
                if !c.is_zero() {
                    return Err(Error::NotRestrictable(format!(
                        "g basis vector {i} maps V basis vector {u} to W basis vector {t} with coefficient {}",
                        c.render()
                    )));
                }
            }
        }
    }
    for a in 0..n {
        for s in 0..q {
            for t in 0..p {
                let c = r.action.at(m + a, p + s, t);
                if !c.is_zero() {
                    return Err(Error::NotRestrictable(format!(
                        "h basis vector {a} maps W basis vector {s} to V basis vector {t} with coefficient {}",
                        c.render()
                    )));
                }
            }
        }
    }
    let mut out = MPRepresentation::zero(base, p, q);
    for i in 0..m {
        for u in 0..p {
            for t in 0..p {
                out.rho_v.set(i, u, t, r.action.at(i, u, t).clone());
            }
        }
        for s in 0..q {
            for t in 0..p {
                out.beta.set(s, i, t, -r.action.at(i, p + s, t).clone());
            }
            for t in 0..q {
                out.rho_w.set(i, s, t, r.action.at(i, p + s, p + t).clone());
            }
        }
    }
    for a in 0..n {
        for u in 0..p {
            for t in 0..p {
                out.psi_v.set(a, u, t, r.action.at(m + a, u, t).clone());
            }
            for t in 0..q {
                out.alpha.set(u, a, t, -r.action.at(m + a, u, p + t).clone());
            }
        }
        for s in 0..q {
            for t in 0..q {
                out.psi_w.set(a, s, t, r.action.at(m + a, p + s, p + t).clone());
            }
        }
    }
    Ok(out)
}

/// Negated transpose in the last two slots.
fn dual_action<S: Scalar>(t: &Tensor3<S>) -> Tensor3<S> {
    let mut o = Tensor3::zeros(t.d0, t.d2, t.d1);
    for i in 0..t.d0 {
        for a in 0..t.d1 {
            for b in 0..t.d2 {
                o.set(i, b, a, -t.at(i, a, b).clone());
            }
        }
    }
    o
}

/// The pairing tensor `[x][y][z]` becomes `-[z][y][x]`.
fn dual_pairing<S: Scalar>(t: &Tensor3<S>) -> Tensor3<S> {
    let mut o = Tensor3::zeros(t.d2, t.d1, t.d0);
    for a in 0..t.d0 {
        for b in 0..t.d1 {
            for c in 0..t.d2 {
                o.set(c, b, a, -t.at(a, b, c).clone());
            }
        }
    }
    o
}

/// Representation on `(W*, V*)` in the coordinate dual bases:
/// `(α*_p h)(v) = -p(α_v h)`, `(β*_q x)(w) = -q(β_w x)`.
pub fn dual_representation<S: Scalar>(r: &MPRepresentation<S>) -> MPRepresentation<S> {
    MPRepresentation {
        base: r.base.clone(),
        p: r.q,
        q: r.p,
        rho_v: dual_action(&r.rho_w),
        psi_v: dual_action(&r.psi_w),
        rho_w: dual_action(&r.rho_v),
        psi_w: dual_action(&r.psi_v),
        alpha: dual_pairing(&r.alpha),
        beta: dual_pairing(&r.beta),
    }
}

/// The representation on `(h*, g*)` written out from its defining formulas
/// `(α_p h)(x) = -p(ρ_x h)` and `(β_q x)(h) = -q(ψ_h x)`.
pub fn coadjoint_representation(mp: &MatchedPair) -> MPRepresentation {
    let (m, n) = mp.dims();
    let mut r = MPRepresentation::zero(mp, n, m);
    for i in 0..m {
        for s in 0..n {
            for t in 0..n {
                // (ρ_x p)(k) = -p(ρ_x k)
                r.rho_v.set(i, s, t, -mp.rho.at(i, t, s).clone());
            }
        }
        for s in 0..m {
            for t in 0..m {
                // (ρ_x q)(y) = -q([x, y])
                r.rho_w.set(i, s, t, -mp.g.bracket.at(i, t, s).clone());
            }
        }
    }
    for a in 0..n {
        for s in 0..n {
            for t in 0..n {
                r.psi_v.set(a, s, t, -mp.h.bracket.at(a, t, s).clone());
            }
        }
        for s in 0..m {
            for t in 0..m {
                r.psi_w.set(a, s, t, -mp.psi.at(a, t, s).clone());
            }
        }
    }
    for s in 0..n {
        for a in 0..n {
            for x in 0..m {
                r.alpha.set(s, a, x, -mp.rho.at(x, a, s).clone());
            }
        }
    }
    for t in 0..m {
        for i in 0..m {
            for h in 0..n {
                r.beta.set(t, i, h, -mp.psi.at(h, i, t).clone());
            }
        }
    }
    r
}

impl MPRepresentation<Rational> {
    pub fn from_json(v: &Value, path: &str, base: &MatchedPair) -> Result<Self> {
        let dims = io::array(io::field(v, "dims", path)?, &format!("{path}.dims"))?;
        if dims.len() != 2 {
            return Err(Error::parse(format!("{path}.dims"), "expected [p, q]"));
        }
        let p = io::count(&dims[0], &format!("{path}.dims[0]"))?;
        let q = io::count(&dims[1], &format!("{path}.dims[1]"))?;
        let (m, n) = base.dims();
        Ok(MPRepresentation {
            base: base.clone(),
            p,
            q,
            rho_v: io::opt_tensor3(v, "rho_V", path, (m, p, p))?,
            psi_v: io::opt_tensor3(v, "psi_V", path, (n, p, p))?,
            rho_w: io::opt_tensor3(v, "rho_W", path, (m, q, q))?,
            psi_w: io::opt_tensor3(v, "psi_W", path, (n, q, q))?,
            alpha: io::opt_tensor3(v, "alpha", path, (p, n, q))?,
            beta: io::opt_tensor3(v, "beta", path, (q, m, p))?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dims": [self.p, self.q],
            "rho_V": io::tensor3_to_json(&self.rho_v),
            "psi_V": io::tensor3_to_json(&self.psi_v),
            "rho_W": io::tensor3_to_json(&self.rho_w),
            "psi_W": io::tensor3_to_json(&self.psi_w),
            "alpha": io::tensor3_to_json(&self.alpha),
            "beta": io::tensor3_to_json(&self.beta),
        })
    }
}

/// Scales every tensor of a representation; `c = 1` everywhere is the identity.
pub fn rescaled(r: &MPRepresentation, c: [Rational; 6]) -> MPRepresentation {
    let [a, b, cc, d, e, f] = c;
    MPRepresentation {
        rho_v: r.rho_v.scaled(&a),
        psi_v: r.psi_v.scaled(&b),
        rho_w: r.rho_w.scaled(&cc),
        psi_w: r.psi_w.scaled(&d),
        alpha: r.alpha.scaled(&e),
        beta: r.beta.scaled(&f),
        ..r.clone()
    }
}

impl<S: Scalar> MPRepresentation<S> {
    pub fn dims(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// True when every pairing and action is zero.
    pub fn is_zero(&self) -> bool {
        [&self.rho_v, &self.psi_v, &self.rho_w, &self.psi_w, &self.alpha, &self.beta].iter().all(|t| t.is_zero())
    }
}

/// Representations over the matched pair fixtures.
pub mod fixtures {
    use super::*;
    use crate::matched_pair::fixtures::valid_suite;

    /// Valid representations over the matched-pair suite: adjoint, coadjoint, zero.
    pub fn rep_suite() -> Vec<MPRepresentation> {
        let mut out = Vec::new();
        for mp in valid_suite() {
            out.push(MPRepresentation::adjoint(&mp));
            out.push(coadjoint_representation(&mp));
            out.push(MPRepresentation::zero(&mp, 1, 1));
        }
        out
    }
}
