//! Matched pairs `(g, h, ρ, ψ)`: axioms, bicrossed product, morphisms, basis changes,
//! the Rota-Baxter construction and Lie bialgebras.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bigraded::StructureElement;
use crate::combinat::{binom, subsets};
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, inverse, rank, Matrix, Rational, Scalar};
use crate::io;
use crate::lie_core::{
    ce_coboundary, exterior_power, jacobi_group, rep_law_group, unit, CheckGroup, LieAlgebra, LieRep, SkewMap,
    Tensor3, ValidationReport,
};

/// `rho[i][a][b]`: `ρ_{e_i} f_a = Σ_b rho[i][a][b] f_b`; `psi[a][i][j]`: `ψ_{f_a} e_i = Σ_j psi[a][i][j] e_j`.
/// Values may be unvalidated.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchedPair<S = Rational> {
    pub g: LieAlgebra<S>,
    pub h: LieAlgebra<S>,
    pub rho: Tensor3<S>,
    pub psi: Tensor3<S>,
}

impl<S: Scalar> MatchedPair<S> {
    pub fn new(g: LieAlgebra<S>, h: LieAlgebra<S>, rho: Tensor3<S>, psi: Tensor3<S>) -> Result<Self> {
        let (m, n) = (g.dim, h.dim);
        if rho.shape() != (m, n, n) {
            return Err(Error::MalformedTensor(format!("rho has shape {:?}, expected ({m}, {n}, {n})", rho.shape())));
        }
        if psi.shape() != (n, m, m) {
            return Err(Error::MalformedTensor(format!("psi has shape {:?}, expected ({n}, {m}, {m})", psi.shape())));
        }
        Ok(MatchedPair { g, h, rho, psi })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.g.dim, self.h.dim)
    }

    /// `ρ_x h` for arbitrary vectors.
    pub fn rho_vec(&self, x: &[S], h: &[S]) -> Vec<S> {
        self.rho.apply(x, h)
    }

    /// `ψ_h x` for arbitrary vectors.
    pub fn psi_vec(&self, h: &[S], x: &[S]) -> Vec<S> {
        self.psi.apply(h, x)
    }

    pub fn structure_element(&self) -> StructureElement<S> {
        StructureElement::new(&self.g, &self.h, &self.rho, &self.psi)
    }

    /// The bracket on `g ⊕ h` without checking the axioms.
    pub fn bicrossed_unchecked(&self) -> LieAlgebra<S> {
        let (m, n) = self.dims();
        let d = m + n;
        let mut b = Tensor3::zeros(d, d, d);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    b.set(i, j, k, self.g.bracket.at(i, j, k).clone());
                }
            }
        }
        for a in 0..n {
            for c in 0..n {
                for k in 0..n {
                    b.set(m + a, m + c, m + k, self.h.bracket.at(a, c, k).clone());
                }
            }
        }
        // [(x,0),(0,h)] = (-ψ_h x, ρ_x h)
        for i in 0..m {
            for a in 0..n {
                for j in 0..m {
                    let v = -self.psi.at(a, i, j).clone();
                    b.set(i, m + a, j, v.clone());
                    b.set(m + a, i, j, -v);
                }
                for c in 0..n {
                    let v = self.rho.at(i, a, c).clone();
                    b.set(i, m + a, m + c, v.clone());
                    b.set(m + a, i, m + c, -v);
                }
            }
        }
        LieAlgebra { dim: d, bracket: b }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> MatchedPair<T> {
        MatchedPair { g: self.g.map(f), h: self.h.map(f), rho: self.rho.map(f), psi: self.psi.map(f) }
    }
}

pub const GROUP_JACOBI_G: &str = "Jacobi identity of g";
pub const GROUP_JACOBI_H: &str = "Jacobi identity of h";
pub const GROUP_RHO_REP: &str = "rho is a representation of g";
pub const GROUP_PSI_REP: &str = "psi is a representation of h";
pub const GROUP_RHO_COMPAT: &str = "rho compatibility with the bracket of h";
pub const GROUP_PSI_COMPAT: &str = "psi compatibility with the bracket of g";

/// Checks Jacobi for both algebras, both representation laws and the two compatibilities
/// `ρ_x[h,k] = [ρ_x h,k] + [h,ρ_x k] + ρ_{ψ_k x}h - ρ_{ψ_h x}k` and
/// `ψ_h[x,y] = [ψ_h x,y] + [x,ψ_h y] + ψ_{ρ_y h}x - ψ_{ρ_x h}y`.
pub fn validate_matched_pair<S: Scalar>(mp: &MatchedPair<S>) -> ValidationReport {
    let mut r = ValidationReport::new("matched pair");
    r.push(jacobi_group(GROUP_JACOBI_G, &mp.g));
    r.push(jacobi_group(GROUP_JACOBI_H, &mp.h));
    r.push(rep_law_group(GROUP_RHO_REP, &mp.g, &mp.rho));
    r.push(rep_law_group(GROUP_PSI_REP, &mp.h, &mp.psi));
    r.push(compat_group(GROUP_RHO_COMPAT, &mp.h, &mp.rho, &mp.psi, ["i", "a", "b"]));
    r.push(compat_group(GROUP_PSI_COMPAT, &mp.g, &mp.psi, &mp.rho, ["a", "i", "j"]));
    r
}

/// `act_x[h,k] - [act_x h,k] - [h,act_x k] - act_{back_k x}h + act_{back_h x}k` for basis `x`, `h < k`.
/// With `act = ρ`, `back = ψ` this is the ρ compatibility; swapping roles gives the ψ one.
fn compat_group<S: Scalar>(name: &str, alg: &LieAlgebra<S>, act: &Tensor3<S>, back: &Tensor3<S>, names: [&str; 3]) -> CheckGroup {
    let mut grp = CheckGroup::new(name);
    let n = alg.dim;
    for i in 0..act.d0 {
        for a in 0..n {
            for b in a + 1..n {
                let mut res = act.apply_left(i, alg.br_basis(a, b));
                let t1 = alg.bracket.apply_right(act.row(i, a), b);
                let t2 = alg.bracket.apply_left(a, act.row(i, b));
                // back_k x with x = e_i, then act_{that} h
                let t3 = act.apply(back.row(b, i), &unit(n, a));
                let t4 = act.apply(back.row(a, i), &unit(n, b));
                let one = S::one();
                axpy(&mut res, &-one.clone(), &t1);
                axpy(&mut res, &-one.clone(), &t2);
                axpy(&mut res, &-one.clone(), &t3);
                axpy(&mut res, &one, &t4);
                grp.record(&names, &[i, a, b], &res);
            }
        }
    }
    grp
}

impl MatchedPair<Rational> {
    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let g = lie_from_json(io::field(v, "g", path)?, &format!("{path}.g"))?;
        let h = lie_from_json(io::field(v, "h", path)?, &format!("{path}.h"))?;
        let (m, n) = (g.dim, h.dim);
        let rho = io::opt_tensor3(v, "rho", path, (m, n, n))?;
        let psi = io::opt_tensor3(v, "psi", path, (n, m, m))?;
        MatchedPair::new(g, h, rho, psi)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "g": lie_to_json(&self.g),
            "h": lie_to_json(&self.h),
            "rho": io::tensor3_to_json(&self.rho),
            "psi": io::tensor3_to_json(&self.psi),
        })
    }

    /// The matched pair in new bases `P e_i` of g and `Q f_a` of h (columns of invertible matrices).
    pub fn change_basis(&self, p: &Matrix, q: &Matrix) -> Result<Self> {
        let pi = inverse(p).ok_or_else(|| Error::ShapeMismatch("g basis change is singular".into()))?;
        let qi = inverse(q).ok_or_else(|| Error::ShapeMismatch("h basis change is singular".into()))?;
        let (m, n) = self.dims();
        let pc: Vec<Vec<Rational>> = (0..m).map(|i| p.column(i)).collect();
        let qc: Vec<Vec<Rational>> = (0..n).map(|a| q.column(a)).collect();
        let g = transform_algebra(&self.g, &pc, &pi);
        let h = transform_algebra(&self.h, &qc, &qi);
        let mut rho = Tensor3::zeros(m, n, n);
        for i in 0..m {
            for a in 0..n {
                let v = qi.apply(&self.rho.apply(&pc[i], &qc[a]));
                for (b, c) in v.into_iter().enumerate() {
                    rho.set(i, a, b, c);
                }
            }
        }
        let mut psi = Tensor3::zeros(n, m, m);
        for a in 0..n {
            for i in 0..m {
                let v = pi.apply(&self.psi.apply(&qc[a], &pc[i]));
                for (j, c) in v.into_iter().enumerate() {
                    psi.set(a, i, j, c);
                }
            }
        }
        MatchedPair::new(g, h, rho, psi)
    }
}

/// Structure constants in the basis given by `cols`, with `inv` the inverse of the basis matrix.
pub fn transform_algebra(alg: &LieAlgebra, cols: &[Vec<Rational>], inv: &Matrix) -> LieAlgebra {
    let d = alg.dim;
    let mut b = Tensor3::zeros(d, d, d);
    for i in 0..d {
        for j in 0..d {
            let v = inv.apply(&alg.br(&cols[i], &cols[j]));
            for (k, c) in v.into_iter().enumerate() {
                b.set(i, j, k, c);
            }
        }
    }
    LieAlgebra { dim: d, bracket: b }
}

pub fn lie_from_json(v: &Value, path: &str) -> Result<LieAlgebra> {
    let dim = io::count_field(v, "dim", path)?;
    let entries = match io::opt_field(v, "bracket") {
        Some(b) => io::entries(b, &format!("{path}.bracket"), &[dim, dim, dim])?,
        None => Vec::new(),
    };
    let e: Vec<_> = entries.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect();
    LieAlgebra::from_entries(dim, &e).map_err(|err| Error::parse(format!("{path}.bracket"), err.to_string()))
}

/// Only `i < j` entries are written.
pub fn lie_to_json(g: &LieAlgebra) -> Value {
    let mut out = Vec::new();
    for t in subsets(g.dim, 2) {
        for (k, c) in g.br_basis(t[0], t[1]).iter().enumerate() {
            if !c.is_zero() {
                out.push(json!([t[0], t[1], k, crate::exact_linalg::format_rational(c)]));
            }
        }
    }
    json!({"dim": g.dim, "bracket": out})
}

pub fn rep_from_json(v: &Value, path: &str, g: &LieAlgebra) -> Result<LieRep> {
    let n = io::count_field(v, "space_dim", path)?;
    let a = io::opt_tensor3(v, "action", path, (g.dim, n, n))?;
    LieRep::new(g.clone(), n, a)
}

pub fn rep_to_json(r: &LieRep) -> Value {
    json!({"space_dim": r.space_dim, "action": io::tensor3_to_json(&r.action)})
}

/// Validates and returns `g ⋈ h`.
pub fn bicrossed_product(mp: &MatchedPair) -> Result<LieAlgebra> {
    let r = validate_matched_pair(mp);
    if !r.is_valid() {
        return Err(Error::InvalidInput(Box::new(r)));
    }
    Ok(mp.bicrossed_unchecked())
}

/// `f: g -> g'` (m'×m) and `g_map: h -> h'` (n'×n); columns are images of basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MPMorphism {
    pub f: Matrix,
    pub g_map: Matrix,
}

impl MPMorphism {
    pub fn from_json(v: &Value, path: &str, src: &MatchedPair, dst: &MatchedPair) -> Result<Self> {
        Ok(MPMorphism {
            f: io::matrix(io::field(v, "f", path)?, &format!("{path}.f"), dst.g.dim, src.g.dim)?,
            g_map: io::matrix(io::field(v, "g", path)?, &format!("{path}.g"), dst.h.dim, src.h.dim)?,
        })
    }
}

fn record_linear(grp: &mut CheckGroup, names: &[&str], idx: &[usize], lhs: Vec<Rational>, rhs: Vec<Rational>) {
    let res: Vec<Rational> = lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect();
    grp.record(names, idx, &res);
}

/// Homomorphism and intertwining checks, plus the block map `f ⋈ g` between the bicrossed products.
pub fn check_morphism(src: &MatchedPair, dst: &MatchedPair, phi: &MPMorphism) -> Result<ValidationReport> {
    let (m, n) = src.dims();
    let (m2, n2) = dst.dims();
    if (phi.f.rows, phi.f.cols, phi.g_map.rows, phi.g_map.cols) != (m2, m, n2, n) {
        return Err(Error::ShapeMismatch(format!(
            "morphism shapes ({}x{}, {}x{}) do not match ({m2}x{m}, {n2}x{n})",
            phi.f.rows, phi.f.cols, phi.g_map.rows, phi.g_map.cols
        )));
    }
    let fx: Vec<Vec<Rational>> = (0..m).map(|i| phi.f.column(i)).collect();
    let gh: Vec<Vec<Rational>> = (0..n).map(|a| phi.g_map.column(a)).collect();
    let mut rep = ValidationReport::new("matched pair morphism");

    let mut g1 = CheckGroup::new("f preserves the bracket of g");
    for t in subsets(m, 2) {
        record_linear(&mut g1, &["i", "j"], &t, phi.f.apply(src.g.br_basis(t[0], t[1])), dst.g.br(&fx[t[0]], &fx[t[1]]));
    }
    rep.push(g1);
    let mut g2 = CheckGroup::new("g preserves the bracket of h");
    for t in subsets(n, 2) {
        record_linear(&mut g2, &["a", "b"], &t, phi.g_map.apply(src.h.br_basis(t[0], t[1])), dst.h.br(&gh[t[0]], &gh[t[1]]));
    }
    rep.push(g2);
    let mut g3 = CheckGroup::new("g(rho_x h) = rho'_{f x} g(h)");
    for i in 0..m {
        for a in 0..n {
            record_linear(&mut g3, &["i", "a"], &[i, a], phi.g_map.apply(src.rho.row(i, a)), dst.rho_vec(&fx[i], &gh[a]));
        }
    }
    rep.push(g3);
    let mut g4 = CheckGroup::new("f(psi_h x) = psi'_{g h} f(x)");
    for a in 0..n {
        for i in 0..m {
            record_linear(&mut g4, &["a", "i"], &[a, i], phi.f.apply(src.psi.row(a, i)), dst.psi_vec(&gh[a], &fx[i]));
        }
    }
    rep.push(g4);

    let s = src.bicrossed_unchecked();
    let d = dst.bicrossed_unchecked();
    let mut big = Matrix::zeros(m2 + n2, m + n);
    for i in 0..m {
        for r in 0..m2 {
            big.set(r, i, phi.f.get(r, i).clone());
        }
    }
    for a in 0..n {
        for r in 0..n2 {
            big.set(m2 + r, m + a, phi.g_map.get(r, a).clone());
        }
    }
    let cols: Vec<Vec<Rational>> = (0..m + n).map(|i| big.column(i)).collect();
    let mut g5 = CheckGroup::new("f ⋈ g is a homomorphism of bicrossed products");
    for t in subsets(m + n, 2) {
        record_linear(&mut g5, &["z1", "z2"], &t, big.apply(s.br_basis(t[0], t[1])), d.br(&cols[t[0]], &cols[t[1]]));
    }
    rep.push(g5);
    Ok(rep)
}

/// Weight-1 identity `[Rx, Ry] = R([Rx, y] + [x, Ry] + [x, y])` on basis pairs.
pub fn check_rota_baxter(g: &LieAlgebra, r: &Matrix) -> Result<ValidationReport> {
    let m = g.dim;
    if (r.rows, r.cols) != (m, m) {
        return Err(Error::ShapeMismatch(format!("operator is {}x{}, expected {m}x{m}", r.rows, r.cols)));
    }
    let re: Vec<Vec<Rational>> = (0..m).map(|i| r.column(i)).collect();
    let mut grp = CheckGroup::new("[Rx, Ry] = R([Rx, y] + [x, Ry] + [x, y])");
    for t in subsets(m, 2) {
        let (i, j) = (t[0], t[1]);
        let lhs = g.br(&re[i], &re[j]);
        let mut inner = g.br(&re[i], &unit(m, j));
        axpy(&mut inner, &Rational::one(), &g.br(&unit(m, i), &re[j]));
        axpy(&mut inner, &Rational::one(), g.br_basis(i, j));
        record_linear(&mut grp, &["i", "j"], &[i, j], lhs, r.apply(&inner));
    }
    let mut rep = ValidationReport::new("Rota-Baxter operator");
    rep.push(grp);
    Ok(rep)
}

/// Columns `(e_i, e_i)` then `(R e_i, e_i + R e_i)` in `g ⊕ g`.
pub fn rota_baxter_basis(g: &LieAlgebra, r: &Matrix) -> Matrix {
    let m = g.dim;
    let mut b = Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        b.set(i, i, Rational::one());
        b.set(m + i, i, Rational::one());
        for k in 0..m {
            b.set(k, m + i, r.get(k, i).clone());
            let extra = if k == i { Rational::one() } else { Rational::zero() };
            b.set(m + k, m + i, r.get(k, i).clone() + extra);
        }
    }
    b
}

/// Direct product `g ⊕ g` with componentwise bracket.
pub fn direct_product(g: &LieAlgebra, h: &LieAlgebra) -> LieAlgebra {
    MatchedPair::new(g.clone(), h.clone(), Tensor3::zeros(g.dim, h.dim, h.dim), Tensor3::zeros(h.dim, g.dim, g.dim))
        .expect("zero actions have the right shape")
        .bicrossed_unchecked()
}

/// Reads off the matched pair carried by a splitting `L = A ⊕ B` into subalgebras, given by the
/// basis matrix whose first `split` columns span `A`: `ρ_x b = pr_B [x, b]`, `ψ_b x = pr_A [b, x]`.
pub fn matched_pair_from_splitting(l: &LieAlgebra, basis: &Matrix, split: usize) -> Result<MatchedPair> {
    let d = l.dim;
    let inv = inverse(basis).ok_or_else(|| Error::ShapeMismatch("the two subspaces do not span the sum".into()))?;
    let cols: Vec<Vec<Rational>> = (0..d).map(|i| basis.column(i)).collect();
    let t = transform_algebra(l, &cols, &inv);
    let (m, n) = (split, d - split);
    let mut gb = Tensor3::zeros(m, m, m);
    let mut hb = Tensor3::zeros(n, n, n);
    let mut rho = Tensor3::zeros(m, n, n);
    let mut psi = Tensor3::zeros(n, m, m);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let c = t.bracket.at(i, j, k).clone();
                let (ig, jg, kg) = (i < m, j < m, k < m);
                match (ig, jg, kg) {
                    (true, true, true) => gb.set(i, j, k, c),
                    (false, false, false) => hb.set(i - m, j - m, k - m, c),
                    (true, true, false) | (false, false, true) => {
                        if !c.is_zero() {
                            return Err(Error::ShapeMismatch(format!(
                                "subspace {} is not closed under the bracket",
                                if ig { "A" } else { "B" }
                            )));
                        }
                    }
                    (true, false, false) => rho.set(i, j - m, k - m, c),
                    (false, true, true) => psi.set(i - m, j, k, c),
                    _ => {}
                }
            }
        }
    }
    MatchedPair::new(LieAlgebra { dim: m, bracket: gb }, LieAlgebra { dim: n, bracket: hb }, rho, psi)
}

/// The matched pair `(G_diag, G_R)` inside `g ⊕ g` for a weight-1 Rota-Baxter operator.
pub fn rota_baxter_matched_pair(g: &LieAlgebra, r: &Matrix) -> Result<MatchedPair> {
    let rep = check_rota_baxter(g, r)?;
    if let Some(w) = rep.groups[0].failures.first() {
        return Err(Error::NotRotaBaxter(format!("{w}")));
    }
    let b = rota_baxter_basis(g, r);
    debug_assert_eq!(rank(&b), 2 * g.dim);
    matched_pair_from_splitting(&direct_product(g, g), &b, g.dim)
}

/// `δ(e_k) = Σ_{i<j} cobracket[k][i][j] e_i ∧ e_j`, stored skew in `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBialgebra {
    pub g: LieAlgebra,
    pub cobracket: Tensor3,
}

impl LieBialgebra {
    pub fn from_entries(g: LieAlgebra, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let m = g.dim;
        // the dual algebra's constants c*[i][j][k] = d[k][i][j] reuse the skew completion
        let dual_entries: Vec<_> = entries.iter().map(|(k, i, j, c)| (*i, *j, *k, c.clone())).collect();
        let dual = LieAlgebra::from_entries(m, &dual_entries)?;
        let mut d = Tensor3::zeros(m, m, m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    d.set(k, i, j, dual.bracket.at(i, j, k).clone());
                }
            }
        }
        Ok(LieBialgebra { g, cobracket: d })
    }

    /// `[e^a, e^b] = Σ_k cobracket[k][a][b] e^k`.
    pub fn dual_algebra(&self) -> LieAlgebra {
        let m = self.g.dim;
        let mut b = Tensor3::zeros(m, m, m);
        for a in 0..m {
            for c in 0..m {
                for k in 0..m {
                    b.set(a, c, k, self.cobracket.at(k, a, c).clone());
                }
            }
        }
        LieAlgebra { dim: m, bracket: b }
    }

    /// The cobracket as a 1-cochain with values in `Λ²g`.
    pub fn cobracket_cochain(&self) -> SkewMap {
        let m = self.g.dim;
        SkewMap::from_fn(1, m, binom(m, 2), |t| {
            subsets(m, 2).iter().map(|p| self.cobracket.at(t[0], p[0], p[1]).clone()).collect()
        })
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let g = lie_from_json(io::field(v, "g", path)?, &format!("{path}.g"))?;
        let m = g.dim;
        let e = match io::opt_field(v, "cobracket") {
            Some(c) => io::entries(c, &format!("{path}.cobracket"), &[m, m, m])?,
            None => Vec::new(),
        };
        let e: Vec<_> = e.into_iter().map(|(i, c)| (i[0], i[1], i[2], c)).collect();
        LieBialgebra::from_entries(g, &e).map_err(|err| Error::parse(format!("{path}.cobracket"), err.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let m = self.g.dim;
        let mut out = Vec::new();
        for k in 0..m {
            for t in subsets(m, 2) {
                let c = self.cobracket.at(k, t[0], t[1]);
                if !c.is_zero() {
                    out.push(json!([k, t[0], t[1], crate::exact_linalg::format_rational(c)]));
                }
            }
        }
        json!({"g": lie_to_json(&self.g), "cobracket": out})
    }
}

/// Jacobi for `g`, Jacobi for the dual bracket, and the 1-cocycle condition of the cobracket.
pub fn validate_bialgebra(b: &LieBialgebra) -> ValidationReport {
    let mut r = ValidationReport::new("Lie bialgebra");
    r.push(jacobi_group("Jacobi identity of g", &b.g));
    r.push(jacobi_group("Jacobi identity of the dual bracket", &b.dual_algebra()));
    let wedge2 = exterior_power(&LieRep::adjoint(&b.g), 2);
    let d = ce_coboundary(&wedge2, &b.cobracket_cochain(), 1).expect("cochain shape");
    let mut grp = CheckGroup::new("cobracket is a 1-cocycle");
    for t in subsets(b.g.dim, 2) {
        grp.record(&["i", "j"], &t, d.value(&t));
    }
    r.push(grp);
    r
}

/// `(g, g*, ad*, ad*)` with `(ad*_x q)(y) = -q([x, y])` on both sides.
pub fn bialgebra_to_matched_pair(b: &LieBialgebra) -> MatchedPair {
    let m = b.g.dim;
    let dual = b.dual_algebra();
    let mut rho = Tensor3::zeros(m, m, m);
    let mut psi = Tensor3::zeros(m, m, m);
    for i in 0..m {
        for a in 0..m {
            for c in 0..m {
                rho.set(i, a, c, -b.g.bracket.at(i, c, a).clone());
                psi.set(a, i, c, -dual.bracket.at(a, c, i).clone());
            }
        }
    }
    MatchedPair::new(b.g.clone(), dual, rho, psi).expect("square shapes")
}

/// Small valid matched pairs shared by the tests.
pub mod fixtures {
    use super::*;
    use crate::exact_linalg::rat;

    pub fn aff1() -> LieAlgebra {
        LieAlgebra::from_entries(2, &[(0, 1, 1, rat(1))]).unwrap()
    }

    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_entries(3, &[(0, 1, 2, rat(1)), (2, 0, 0, rat(2)), (2, 1, 1, rat(-2))]).unwrap()
    }

    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_entries(3, &[(0, 1, 2, rat(1))]).unwrap()
    }

    /// g = span{x}, h = span{h} abelian, ρ_x h = h, ψ = 0.
    pub fn mpa() -> MatchedPair {
        let mut rho = Tensor3::zeros(1, 1, 1);
        rho.set(0, 0, 0, rat(1));
        MatchedPair::new(LieAlgebra::abelian(1), LieAlgebra::abelian(1), rho, Tensor3::zeros(1, 1, 1)).unwrap()
    }

    /// `(g, V, ρ, 0)` with `V` abelian.
    pub fn from_rep(r: &LieRep) -> MatchedPair {
        MatchedPair::new(
            r.algebra.clone(),
            LieAlgebra::abelian(r.space_dim),
            r.action.clone(),
            Tensor3::zeros(r.space_dim, r.algebra.dim, r.algebra.dim),
        )
        .unwrap()
    }

    /// A family of valid matched pairs with dims at most 2 on each side, including nonzero ψ.
    pub fn valid_suite() -> Vec<MatchedPair> {
        let mut out = vec![mpa()];
        out.push(from_rep(&LieRep::adjoint(&aff1())));
        out.push(from_rep(&LieRep::trivial(&aff1(), 1)));
        // ψ nonzero: the mirror of the above
        out.push(swap(&mpa()));
        out.push(swap(&from_rep(&LieRep::adjoint(&aff1()))));
        out.push(MatchedPair::new(aff1(), aff1(), Tensor3::zeros(2, 2, 2), Tensor3::zeros(2, 2, 2)).unwrap());
        // aff(1) split as span{e1} ⊕ span{e2} and span{e2} ⊕ span{e1}
        let l = aff1();
        out.push(matched_pair_from_splitting(&l, &Matrix::identity(2), 1).unwrap());
        let p = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        out.push(matched_pair_from_splitting(&l, &p, 1).unwrap());
        // Rota-Baxter pairs on aff(1)
        out.push(rota_baxter_matched_pair(&l, &Matrix::zeros(2, 2)).unwrap());
        out.push(rota_baxter_matched_pair(&l, &Matrix::scalar(2, rat(-1))).unwrap());
        // a bialgebra pair: abelian g with cobracket dual to aff(1)
        let b = LieBialgebra::from_entries(LieAlgebra::abelian(2), &[(1, 0, 1, rat(1))]).unwrap();
        out.push(bialgebra_to_matched_pair(&b));
        out
    }

    pub fn swap(mp: &MatchedPair) -> MatchedPair {
        MatchedPair::new(mp.h.clone(), mp.g.clone(), mp.psi.clone(), mp.rho.clone()).unwrap()
    }
}
