//! Infinitesimal deformations (as 2-cocycles and over `k[t]/(t²)`), their equivalence, and
//! abelian extensions of a matched pair by a representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bigraded::MixedMap;
use crate::combinat::subsets;
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, format_rational, Matrix, Rational, Scalar};
use crate::io;
use crate::lie_core::{CheckGroup, LieAlgebra, Tensor3, ValidationReport};
use crate::matched_pair::{check_morphism, validate_matched_pair, MPMorphism, MatchedPair};
use crate::mp_cohomology::{delta_mpl_coeff, MPCochain};
use crate::mp_rep::{validate_mp_representation, MPRepresentation};

/// `a + b t` in `k[t]/(t²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual {
    pub a: Rational,
    pub b: Rational,
}

impl Dual {
    pub fn new(a: Rational, b: Rational) -> Self {
        Dual { a, b }
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}t", format_rational(&self.a), format_rational(&self.b))
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::new(Rational::one(), Rational::zero())
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.a.clone() * o.a.clone(), self.a * o.b + self.b * o.a)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.a, -self.b)
    }
}

impl Scalar for Dual {
    fn from_rational(r: Rational) -> Self {
        Dual::new(r, Rational::zero())
    }
}

/// First-order terms `(μ₁, ν₁, ρ₁, ψ₁)`; `rho1[i][a][b]`, `psi1[a][i][j]` as for a matched pair.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationCandidate {
    pub mu1: Tensor3,
    pub nu1: Tensor3,
    pub rho1: Tensor3,
    pub psi1: Tensor3,
}

fn is_skew(t: &Tensor3) -> bool {
    (0..t.d0).all(|i| (0..t.d1).all(|j| (0..t.d2).all(|k| *t.at(i, j, k) == -t.at(j, i, k).clone())))
}

impl DeformationCandidate {
    pub fn zero(mp: &MatchedPair) -> Self {
        let (m, n) = mp.dims();
        DeformationCandidate {
            mu1: Tensor3::zeros(m, m, m),
            nu1: Tensor3::zeros(n, n, n),
            rho1: Tensor3::zeros(m, n, n),
            psi1: Tensor3::zeros(n, m, m),
        }
    }

    pub fn check_shapes(&self, mp: &MatchedPair) -> Result<()> {
        let (m, n) = mp.dims();
        for (name, t, s) in [
            ("mu1", &self.mu1, (m, m, m)),
            ("nu1", &self.nu1, (n, n, n)),
            ("rho1", &self.rho1, (m, n, n)),
            ("psi1", &self.psi1, (n, m, m)),
        ] {
            if t.shape() != s {
                return Err(Error::ShapeMismatch(format!("{name} has shape {:?}, expected {s:?}", t.shape())));
            }
        }
        if !is_skew(&self.mu1) || !is_skew(&self.nu1) {
            return Err(Error::MalformedTensor("mu1 and nu1 must be skew-symmetric".into()));
        }
        Ok(())
    }

    /// `(μ₁⋉ρ₁, ψ₁⋊ν₁)` as a degree-2 cochain with adjoint coefficients.
    pub fn to_cochain(&self, mp: &MatchedPair) -> Result<MPCochain> {
        self.check_shapes(mp)?;
        let (m, n) = mp.dims();
        let mut c = MPCochain::zero([m, n, m, n], 2);
        c.components[0].0 = MixedMap::from_fn(m, n, 2, 0, m, |x, _| self.mu1.row(x[0], x[1]).to_vec());
        c.components[0].1 = MixedMap::from_fn(m, n, 1, 1, n, |x, h| self.rho1.row(x[0], h[0]).to_vec());
        c.components[1].0 =
            MixedMap::from_fn(m, n, 1, 1, m, |x, h| self.psi1.row(h[0], x[0]).iter().map(|c| -c.clone()).collect());
        c.components[1].1 = MixedMap::from_fn(m, n, 0, 2, n, |_, h| self.nu1.row(h[0], h[1]).to_vec());
        Ok(c)
    }

    /// Inverse of [`DeformationCandidate::to_cochain`].
    pub fn from_cochain(mp: &MatchedPair, c: &MPCochain) -> Result<Self> {
        let (m, n) = mp.dims();
        if c.degree != 2 || c.dims != [m, n, m, n] {
            return Err(Error::ShapeMismatch("expected a degree-2 cochain with adjoint coefficients".into()));
        }
        let mut d = Self::zero(mp);
        for t in subsets(m, 2) {
            for (k, v) in c.components[0].0.value(&t, &[]).iter().enumerate() {
                d.mu1.set(t[0], t[1], k, v.clone());
                d.mu1.set(t[1], t[0], k, -v.clone());
            }
        }
        for t in subsets(n, 2) {
            for (k, v) in c.components[1].1.value(&[], &t).iter().enumerate() {
                d.nu1.set(t[0], t[1], k, v.clone());
                d.nu1.set(t[1], t[0], k, -v.clone());
            }
        }
        for i in 0..m {
            for a in 0..n {
                for (k, v) in c.components[0].1.value(&[i], &[a]).iter().enumerate() {
                    d.rho1.set(i, a, k, v.clone());
                }
                for (k, v) in c.components[1].0.value(&[i], &[a]).iter().enumerate() {
                    d.psi1.set(a, i, k, -v.clone());
                }
            }
        }
        Ok(d)
    }

    /// `(g ⊗ k[t]/(t²), h ⊗ k[t]/(t²), ρ + tρ₁, ψ + tψ₁)` with brackets `μ + tμ₁`, `ν + tν₁`.
    pub fn truncated(&self, mp: &MatchedPair) -> MatchedPair<Dual> {
        let lift = |base: &Tensor3, first: &Tensor3| {
            let (a, b, c) = base.shape();
            let mut t = Tensor3::zeros(a, b, c);
            for i in 0..a {
                for j in 0..b {
                    for k in 0..c {
                        t.set(i, j, k, Dual::new(base.at(i, j, k).clone(), first.at(i, j, k).clone()));
                    }
                }
            }
            t
        };
        MatchedPair {
            g: LieAlgebra { dim: mp.g.dim, bracket: lift(&mp.g.bracket, &self.mu1) },
            h: LieAlgebra { dim: mp.h.dim, bracket: lift(&mp.h.bracket, &self.nu1) },
            rho: lift(&mp.rho, &self.rho1),
            psi: lift(&mp.psi, &self.psi1),
        }
    }

    pub fn from_json(v: &Value, path: &str, mp: &MatchedPair) -> Result<Self> {
        let (m, n) = mp.dims();
        let d = DeformationCandidate {
            mu1: skew_tensor(v, "mu1", path, m)?,
            nu1: skew_tensor(v, "nu1", path, n)?,
            rho1: io::opt_tensor3(v, "rho1", path, (m, n, n))?,
            psi1: io::opt_tensor3(v, "psi1", path, (n, m, m))?,
        };
        d.check_shapes(mp)?;
        Ok(d)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mu1": io::tensor3_to_json(&self.mu1),
            "nu1": io::tensor3_to_json(&self.nu1),
            "rho1": io::tensor3_to_json(&self.rho1),
            "psi1": io::tensor3_to_json(&self.psi1),
        })
    }
}

/// Bracket-like tensor; entries on one ordering are completed skew-symmetrically.
fn skew_tensor(v: &Value, key: &str, path: &str, d: usize) -> Result<Tensor3> {
    let Some(x) = io::opt_field(v, key) else {
        return Ok(Tensor3::zeros(d, d, d));
    };
    let p = format!("{path}.{key}");
    let e: Vec<_> = io::entries(x, &p, &[d, d, d])?.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect();
    Ok(LieAlgebra::from_entries(d, &e).map_err(|err| Error::parse(&p, err.to_string()))?.bracket)
}

/// Verdicts of the two deformation criteria.
#[derive(Clone, Debug)]
pub struct DeformReport {
    /// `δ_MPL` of the assembled 2-cochain.
    pub coboundary: MPCochain,
    /// Matched-pair axioms over `k[t]/(t²)`.
    pub truncated: ValidationReport,
}

impl DeformReport {
    pub fn cocycle(&self) -> bool {
        self.coboundary.is_zero()
    }

    pub fn ring(&self) -> bool {
        self.truncated.is_valid()
    }

    pub fn agree(&self) -> bool {
        self.cocycle() == self.ring()
    }

    pub fn is_deformation(&self) -> bool {
        self.cocycle() && self.ring()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "is_deformation": self.is_deformation(),
            "cocycle_route": self.cocycle(),
            "truncated_ring_route": self.ring(),
            "routes_agree": self.agree(),
            "coboundary": self.coboundary.to_json(),
            "truncated_report": self.truncated.to_json(),
        })
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.is_deformation() { "infinitesimal deformation" } else { "not an infinitesimal deformation" };
        let mark = |b: bool| if b { "holds" } else { "fails" };
        let mut s = format!(
            "{verdict}\n  2-cocycle condition: {}\n  matched pair over k[t]/(t^2): {}\n",
            mark(self.cocycle()),
            mark(self.ring())
        );
        if !self.agree() {
            s.push_str("  WARNING: the two criteria disagree\n");
        }
        if !self.ring() {
            s.push_str(&self.truncated.to_text());
        }
        s
    }
}

fn require_valid(mp: &MatchedPair) -> Result<()> {
    let r = validate_matched_pair(mp);
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidInput(Box::new(r)))
    }
}

/// Checks a candidate both as a 2-cocycle and as a matched pair over `k[t]/(t²)`.
pub fn deformation_check(mp: &MatchedPair, d: &DeformationCandidate) -> Result<DeformReport> {
    require_valid(mp)?;
    let c = d.to_cochain(mp)?;
    let (coboundary, truncated) = rayon::join(
        || delta_mpl_coeff(&MPRepresentation::adjoint(mp), &c),
        || {
            let mut r = validate_matched_pair(&d.truncated(mp));
            r.subject = "matched pair over k[t]/(t^2)".into();
            r
        },
    );
    Ok(DeformReport { coboundary: coboundary?, truncated })
}

pub const GROUP_EQUIV_MU: &str = "mu1 - mu1' = [x, f y] - f[x, y] + [f x, y]";
pub const GROUP_EQUIV_NU: &str = "nu1 - nu1' = [h, g k] - g[h, k] + [g h, k]";
pub const GROUP_EQUIV_RHO: &str = "rho1 - rho1' = rho_x g(h) - g(rho_x h) + rho_{f x} h";
pub const GROUP_EQUIV_PSI: &str = "psi1 - psi1' = psi_h f(x) - f(psi_h x) + psi_{g h} x";
pub const GROUP_EQUIV_COBOUNDARY: &str = "difference of cocycles is the coboundary of (f, g)";

/// Direct equivalence conditions and the coboundary identity, kept as separate verdicts.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub direct: ValidationReport,
    pub coboundary: ValidationReport,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.direct.is_valid() && self.coboundary.is_valid()
    }

    pub fn agree(&self) -> bool {
        self.direct.is_valid() == self.coboundary.is_valid()
    }

    pub fn combined(&self) -> ValidationReport {
        let mut r = ValidationReport::new("equivalence of infinitesimal deformations");
        for g in self.direct.groups.iter().chain(&self.coboundary.groups) {
            r.push(g.clone());
        }
        r
    }
}

fn record_diff(grp: &mut CheckGroup, names: &[&str], idx: &[usize], lhs: &[Rational], rhs: &[Rational]) {
    let res: Vec<Rational> = lhs.iter().zip(rhs).map(|(a, b)| a - b).collect();
    grp.record(names, idx, &res);
}

/// Checks that `(id + t f, id + t g)` carries the deformation `d` onto `d2`.
pub fn deformation_equiv_check(
    mp: &MatchedPair,
    d: &DeformationCandidate,
    d2: &DeformationCandidate,
    f: &Matrix,
    g: &Matrix,
) -> Result<EquivalenceReport> {
    require_valid(mp)?;
    d.check_shapes(mp)?;
    d2.check_shapes(mp)?;
    let (m, n) = mp.dims();
    if (f.rows, f.cols, g.rows, g.cols) != (m, m, n, n) {
        return Err(Error::ShapeMismatch(format!("f must be {m}x{m} and g must be {n}x{n}")));
    }
    let fx: Vec<Vec<Rational>> = (0..m).map(|i| f.column(i)).collect();
    let gh: Vec<Vec<Rational>> = (0..n).map(|a| g.column(a)).collect();
    let mut direct = ValidationReport::new("equivalence conditions");

    let mut grp = CheckGroup::new(GROUP_EQUIV_MU);
    for t in subsets(m, 2) {
        let (i, j) = (t[0], t[1]);
        let lhs: Vec<Rational> = d.mu1.row(i, j).iter().zip(d2.mu1.row(i, j)).map(|(a, b)| a - b).collect();
        let mut rhs = mp.g.bracket.apply_left(i, &fx[j]);
        axpy(&mut rhs, &-Rational::one(), &f.apply(mp.g.br_basis(i, j)));
        axpy(&mut rhs, &Rational::one(), &mp.g.bracket.apply_right(&fx[i], j));
        record_diff(&mut grp, &["i", "j"], &t, &lhs, &rhs);
    }
    direct.push(grp);

    let mut grp = CheckGroup::new(GROUP_EQUIV_NU);
    for t in subsets(n, 2) {
        let (a, b) = (t[0], t[1]);
        let lhs: Vec<Rational> = d.nu1.row(a, b).iter().zip(d2.nu1.row(a, b)).map(|(x, y)| x - y).collect();
        let mut rhs = mp.h.bracket.apply_left(a, &gh[b]);
        axpy(&mut rhs, &-Rational::one(), &g.apply(mp.h.br_basis(a, b)));
        axpy(&mut rhs, &Rational::one(), &mp.h.bracket.apply_right(&gh[a], b));
        record_diff(&mut grp, &["a", "b"], &t, &lhs, &rhs);
    }
    direct.push(grp);

    let mut grp = CheckGroup::new(GROUP_EQUIV_RHO);
    for i in 0..m {
        for a in 0..n {
            let lhs: Vec<Rational> = d.rho1.row(i, a).iter().zip(d2.rho1.row(i, a)).map(|(x, y)| x - y).collect();
            let mut rhs = mp.rho.apply_left(i, &gh[a]);
            axpy(&mut rhs, &-Rational::one(), &g.apply(mp.rho.row(i, a)));
            axpy(&mut rhs, &Rational::one(), &mp.rho.apply_right(&fx[i], a));
            record_diff(&mut grp, &["i", "a"], &[i, a], &lhs, &rhs);
        }
    }
    direct.push(grp);

    let mut grp = CheckGroup::new(GROUP_EQUIV_PSI);
    for a in 0..n {
        for i in 0..m {
            let lhs: Vec<Rational> = d.psi1.row(a, i).iter().zip(d2.psi1.row(a, i)).map(|(x, y)| x - y).collect();
            let mut rhs = mp.psi.apply_left(a, &fx[i]);
            axpy(&mut rhs, &-Rational::one(), &f.apply(mp.psi.row(a, i)));
            axpy(&mut rhs, &Rational::one(), &mp.psi.apply_right(&gh[a], i));
            record_diff(&mut grp, &["a", "i"], &[a, i], &lhs, &rhs);
        }
    }
    direct.push(grp);

    let c1 = d.to_cochain(mp)?.flatten();
    let c2 = d2.to_cochain(mp)?.flatten();
    let fg = linear_cochain(mp, f, g);
    let dfg = delta_mpl_coeff(&MPRepresentation::adjoint(mp), &fg)?.flatten();
    let mut grp = CheckGroup::new(GROUP_EQUIV_COBOUNDARY);
    for (k, ((a, b), c)) in c1.iter().zip(&c2).zip(&dfg).enumerate() {
        grp.record(&["coordinate"], &[k], &[a - b - c]);
    }
    let mut coboundary = ValidationReport::new("coboundary identity");
    coboundary.push(grp);
    Ok(EquivalenceReport { direct, coboundary })
}

/// `(f, g)` as a degree-1 cochain with adjoint coefficients.
pub fn linear_cochain(mp: &MatchedPair, f: &Matrix, g: &Matrix) -> MPCochain {
    let (m, n) = mp.dims();
    let mut c = MPCochain::zero([m, n, m, n], 1);
    c.components[0].0 = MixedMap::from_fn(m, n, 1, 0, m, |x, _| f.column(x[0]));
    c.components[0].1 = MixedMap::from_fn(m, n, 0, 1, n, |_, h| g.column(h[0]));
    c
}

/// A matched pair on `(g ⊕ V, h ⊕ W)` whose blocks are listed by `split = (m, p, n, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianExtension {
    pub total: MatchedPair,
    pub base: MatchedPair,
    pub split: (usize, usize, usize, usize),
}

impl AbelianExtension {
    /// Reads off the quotient matched pair from the leading blocks.
    pub fn new(total: MatchedPair, split: (usize, usize, usize, usize)) -> Result<Self> {
        let (m, p, n, q) = split;
        let (mt, nt) = total.dims();
        if (mt, nt) != (m + p, n + q) {
            return Err(Error::ShapeMismatch(format!("split {split:?} does not fit a matched pair of dims ({mt}, {nt})")));
        }
        let block = |t: &Tensor3, a: usize, b: usize, c: usize| {
            let mut o = Tensor3::zeros(a, b, c);
            for i in 0..a {
                for j in 0..b {
                    for k in 0..c {
                        o.set(i, j, k, t.at(i, j, k).clone());
                    }
                }
            }
            o
        };
        let base = MatchedPair::new(
            LieAlgebra { dim: m, bracket: block(&total.g.bracket, m, m, m) },
            LieAlgebra { dim: n, bracket: block(&total.h.bracket, n, n, n) },
            block(&total.rho, m, n, n),
            block(&total.psi, n, m, m),
        )?;
        Ok(AbelianExtension { total, base, split })
    }

    pub fn projection(&self) -> MPMorphism {
        let (m, p, n, q) = self.split;
        let mut f = Matrix::zeros(m, m + p);
        for i in 0..m {
            f.set(i, i, Rational::one());
        }
        let mut g = Matrix::zeros(n, n + q);
        for a in 0..n {
            g.set(a, a, Rational::one());
        }
        MPMorphism { f, g_map: g }
    }

    /// The representation on `(V, W)` induced through the block-inclusion section.
    pub fn representation(&self) -> MPRepresentation {
        let (m, p, n, q) = self.split;
        let t = &self.total;
        let mut r = MPRepresentation::zero(&self.base, p, q);
        for i in 0..m {
            for u in 0..p {
                for s in 0..p {
                    r.rho_v.set(i, u, s, t.g.bracket.at(i, m + u, m + s).clone());
                }
            }
            for u in 0..q {
                for s in 0..q {
                    r.rho_w.set(i, u, s, t.rho.at(i, n + u, n + s).clone());
                }
            }
        }
        for a in 0..n {
            for u in 0..p {
                for s in 0..p {
                    r.psi_v.set(a, u, s, t.psi.at(a, m + u, m + s).clone());
                }
            }
            for u in 0..q {
                for s in 0..q {
                    r.psi_w.set(a, u, s, t.h.bracket.at(a, n + u, n + s).clone());
                }
            }
        }
        for u in 0..p {
            for a in 0..n {
                for s in 0..q {
                    r.alpha.set(u, a, s, t.rho.at(m + u, a, n + s).clone());
                }
            }
        }
        for u in 0..q {
            for i in 0..m {
                for s in 0..p {
                    r.beta.set(u, i, s, t.psi.at(n + u, i, m + s).clone());
                }
            }
        }
        r
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let total = MatchedPair::from_json(v, path)?;
        let sp = io::array(io::field(v, "split", path)?, &format!("{path}.split"))?;
        if sp.len() != 4 {
            return Err(Error::parse(format!("{path}.split"), "expected [m, p, n, q]"));
        }
        let c: Vec<usize> =
            sp.iter().enumerate().map(|(i, x)| io::count(x, &format!("{path}.split[{i}]"))).collect::<Result<_>>()?;
        AbelianExtension::new(total, (c[0], c[1], c[2], c[3])).map_err(|e| Error::parse(format!("{path}.split"), e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.total.to_json();
        let (m, p, n, q) = self.split;
        v["split"] = json!([m, p, n, q]);
        v
    }
}

pub const GROUP_EXT_ABELIAN: &str = "V and W carry zero brackets and zero mutual actions";

/// Total matched pair, abelian kernel, and projection onto the base as a matched-pair morphism.
pub fn validate_extension(e: &AbelianExtension) -> Result<ValidationReport> {
    let (m, p, n, q) = e.split;
    let t = &e.total;
    let mut r = ValidationReport::new("abelian extension");
    r.absorb("total matched pair", &validate_matched_pair(t));
    let mut grp = CheckGroup::new(GROUP_EXT_ABELIAN);
    for u in 0..p {
        for s in u + 1..p {
            grp.record(&["v1", "v2"], &[u, s], t.g.br_basis(m + u, m + s));
        }
        for s in 0..q {
            grp.record(&["v", "w"], &[u, s], t.rho.row(m + u, n + s));
        }
    }
    for u in 0..q {
        for s in u + 1..q {
            grp.record(&["w1", "w2"], &[u, s], t.h.br_basis(n + u, n + s));
        }
        for s in 0..p {
            grp.record(&["w", "v"], &[u, s], t.psi.row(n + u, m + s));
        }
    }
    r.push(grp);
    r.absorb("projection onto the base", &check_morphism(t, &e.base, &e.projection())?);
    Ok(r)
}

/// The extension `(g ⊕ V, h ⊕ W)` built from a 2-cocycle `F = (F₁, F₂)`.
pub fn cocycle_to_extension(rep: &MPRepresentation, f: &MPCochain) -> Result<AbelianExtension> {
    let mp = &rep.base;
    let (m, n) = mp.dims();
    let (p, q) = (rep.p, rep.q);
    if f.degree != 2 || f.dims != [m, n, p, q] {
        return Err(Error::ShapeMismatch(format!("expected a degree-2 cochain with dims {:?}", [m, n, p, q])));
    }
    if !delta_mpl_coeff(rep, f)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    let (f1g, f1m) = (&f.components[0].0, &f.components[0].1);
    let (f2m, f2h) = (&f.components[1].0, &f.components[1].1);
    let mut total = rep.semidirect_unchecked();
    for t in subsets(m, 2) {
        for (k, c) in f1g.value(&t, &[]).iter().enumerate() {
            total.g.bracket.set(t[0], t[1], m + k, c.clone());
            total.g.bracket.set(t[1], t[0], m + k, -c.clone());
        }
    }
    for t in subsets(n, 2) {
        for (k, c) in f2h.value(&[], &t).iter().enumerate() {
            total.h.bracket.set(t[0], t[1], n + k, c.clone());
            total.h.bracket.set(t[1], t[0], n + k, -c.clone());
        }
    }
    for i in 0..m {
        for a in 0..n {
            for (k, c) in f1m.value(&[i], &[a]).iter().enumerate() {
                total.rho.set(i, a, n + k, c.clone());
            }
            for (k, c) in f2m.value(&[i], &[a]).iter().enumerate() {
                total.psi.set(a, i, m + k, -c.clone());
            }
        }
    }
    AbelianExtension::new(total, (m, p, n, q))
}

/// Section `(s₁, s₂)` of the projection; columns are images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub s1: Matrix,
    pub s2: Matrix,
}

impl Section {
    pub fn canonical(e: &AbelianExtension) -> Self {
        let (m, p, n, q) = e.split;
        let inc = |a: usize, b: usize| {
            let mut s = Matrix::zeros(a + b, a);
            for i in 0..a {
                s.set(i, i, Rational::one());
            }
            s
        };
        Section { s1: inc(m, p), s2: inc(n, q) }
    }

    pub fn from_json(v: &Value, path: &str, e: &AbelianExtension) -> Result<Self> {
        let (m, p, n, q) = e.split;
        Ok(Section {
            s1: io::matrix(io::field(v, "s1", path)?, &format!("{path}.s1"), m + p, m)?,
            s2: io::matrix(io::field(v, "s2", path)?, &format!("{path}.s2"), n + q, n)?,
        })
    }
}

fn check_section(e: &AbelianExtension, s: &Section) -> Result<()> {
    let (m, p, n, q) = e.split;
    let top_is_identity = |mat: &Matrix, a: usize| (0..a).all(|i| (0..a).all(|j| *mat.get(i, j) == if i == j { Rational::one() } else { Rational::zero() }));
    if (s.s1.rows, s.s1.cols) != (m + p, m) || (s.s2.rows, s.s2.cols) != (n + q, n) {
        return Err(Error::NotASection(format!("expected {}x{m} and {}x{n} matrices", m + p, n + q)));
    }
    if !top_is_identity(&s.s1, m) {
        return Err(Error::NotASection("the g-block of s1 is not the identity".into()));
    }
    if !top_is_identity(&s.s2, n) {
        return Err(Error::NotASection("the h-block of s2 is not the identity".into()));
    }
    Ok(())
}

/// The 2-cocycle of an extension relative to a section (the block inclusion when `None`).
pub fn extension_to_cocycle(e: &AbelianExtension, section: Option<&Section>) -> Result<MPCochain> {
    let canonical = Section::canonical(e);
    let s = section.unwrap_or(&canonical);
    check_section(e, s)?;
    let (m, p, n, q) = e.split;
    let t = &e.total;
    let b = &e.base;
    let s1: Vec<Vec<Rational>> = (0..m).map(|i| s.s1.column(i)).collect();
    let s2: Vec<Vec<Rational>> = (0..n).map(|a| s.s2.column(a)).collect();
    let minus = |mut a: Vec<Rational>, c: &Vec<Rational>| {
        axpy(&mut a, &-Rational::one(), c);
        a
    };
    let mut out = MPCochain::zero([m, n, p, q], 2);
    out.components[0].0 = MixedMap::from_fn(m, n, 2, 0, p, |x, _| {
        let v = minus(t.g.br(&s1[x[0]], &s1[x[1]]), &s.s1.apply(b.g.br_basis(x[0], x[1])));
        v[m..].to_vec()
    });
    out.components[0].1 = MixedMap::from_fn(m, n, 1, 1, q, |x, h| {
        let v = minus(t.rho_vec(&s1[x[0]], &s2[h[0]]), &s.s2.apply(b.rho.row(x[0], h[0])));
        v[n..].to_vec()
    });
    out.components[1].0 = MixedMap::from_fn(m, n, 1, 1, p, |x, h| {
        let v = minus(s.s1.apply(b.psi.row(h[0], x[0])), &t.psi_vec(&s2[h[0]], &s1[x[0]]));
        v[m..].to_vec()
    });
    out.components[1].1 = MixedMap::from_fn(m, n, 0, 2, q, |_, h| {
        let v = minus(t.h.br(&s2[h[0]], &s2[h[1]]), &s.s2.apply(b.h.br_basis(h[0], h[1])));
        v[n..].to_vec()
    });
    Ok(out)
}

/// `(x, v) ↦ (x, v + θx)`, `(h, w) ↦ (h, w + ϑh)` for a degree-1 cochain `(θ, ϑ)`.
pub fn shear_isomorphism(split: (usize, usize, usize, usize), theta: &MPCochain) -> MPMorphism {
    let (m, p, n, q) = split;
    let mut f = Matrix::identity(m + p);
    let mut g = Matrix::identity(n + q);
    for i in 0..m {
        for (k, c) in theta.components[0].0.value(&[i], &[]).iter().enumerate() {
            f.set(m + k, i, c.clone());
        }
    }
    for a in 0..n {
        for (k, c) in theta.components[0].1.value(&[], &[a]).iter().enumerate() {
            g.set(n + k, a, c.clone());
        }
    }
    MPMorphism { f, g_map: g }
}

/// Checks that a representation is valid before building extensions over it.
pub fn require_valid_rep(rep: &MPRepresentation) -> Result<()> {
    let r = validate_mp_representation(rep)?;
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidInput(Box::new(r)))
    }
}
