//! Lie algebras and representations by structure constants, skew multilinear
//! maps, Chevalley-Eilenberg cohomology and the Nijenhuis-Richardson bracket.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinat::{binom, shuffles, sort_sign, subset_rank, subsets};
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, cohomology_dim, fma, is_zero_vec, Matrix, Rational, Scalar};

/// Dense 3-index tensor `t[i][j][k]`, read as a bilinear map `(e_i, f_j) -> sum_k t[i][j][k] g_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3<S = Rational> {
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Tensor3<S> {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 { d0, d1, d2, data: vec![S::zero(); d0 * d1 * d2] }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: S) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    /// Output vector for two basis inputs.
    #[inline]
    pub fn row(&self, i: usize, j: usize) -> &[S] {
        let s = (i * self.d1 + j) * self.d2;
        &self.data[s..s + self.d2]
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    /// Bilinear evaluation on arbitrary vectors.
    pub fn apply(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.d2];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj.clone();
                axpy(&mut out, &c, self.row(i, j));
            }
        }
        out
    }

    /// Evaluation with a basis vector in the first slot.
    pub fn apply_left(&self, i: usize, y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.d2];
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, self.row(i, j));
        }
        out
    }

    /// Evaluation with a basis vector in the second slot.
    pub fn apply_right(&self, x: &[S], j: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.d2];
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.row(i, j));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor3<T> {
        Tensor3 { d0: self.d0, d1: self.d1, d2: self.d2, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn scaled(&self, c: &S) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "tensor shapes");
        Tensor3 {
            d0: self.d0,
            d1: self.d1,
            d2: self.d2,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// One failing instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<(String, usize)>,
    pub residual: Vec<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.indices.iter().map(|(n, i)| format!("{n}={i}")).collect();
        write!(f, "({}) residual [{}]", at.join(", "), self.residual.join(", "))
    }
}

/// A family of identities checked over all basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGroup {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<Witness>,
}

impl CheckGroup {
    pub fn new(name: impl Into<String>) -> Self {
        CheckGroup { name: name.into(), checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one evaluation; a nonzero residual becomes a witness.
    pub fn record<S: Scalar>(&mut self, names: &[&str], idx: &[usize], residual: &[S]) {
        self.checked += 1;
        if !is_zero_vec(residual) {
            self.failures.push(Witness {
                indices: names.iter().zip(idx).map(|(n, &i)| (n.to_string(), i)).collect(),
                residual: residual.iter().map(|x| x.render()).collect(),
            });
        }
    }
}

/// Outcome of a validator: every identity group with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub groups: Vec<CheckGroup>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), groups: Vec::new() }
    }

    pub fn push(&mut self, g: CheckGroup) {
        self.groups.push(g);
    }

    pub fn is_valid(&self) -> bool {
        self.groups.iter().all(|g| g.passed())
    }

    pub fn passed_count(&self) -> usize {
        self.groups.iter().filter(|g| g.passed()).count()
    }

    pub fn group(&self, name: &str) -> Option<&CheckGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn failed_groups(&self) -> Vec<&str> {
        self.groups.iter().filter(|g| !g.passed()).map(|g| g.name.as_str()).collect()
    }

    /// Folds another report in as a single group (valid iff it is).
    pub fn absorb(&mut self, name: impl Into<String>, other: &ValidationReport) {
        let mut g = CheckGroup::new(name);
        for sub in &other.groups {
            g.checked += sub.checked;
            for w in &sub.failures {
                let mut w = w.clone();
                w.indices.insert(0, (sub.name.clone(), usize::MAX));
                g.failures.push(w);
            }
        }
        self.groups.push(g);
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} ({}/{} axiom groups)",
            self.subject,
            if self.is_valid() { "VALID" } else { "INVALID" },
            self.passed_count(),
            self.groups.len()
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.summary_line();
        s.push('\n');
        for g in &self.groups {
            let status = if g.passed() { "ok" } else { "FAILED" };
            s.push_str(&format!("  {:<48} {:>6} ({} checked)\n", g.name, status, g.checked));
            for w in g.failures.iter().take(10) {
                s.push_str(&format!("      {} failed at {}\n", g.name, render_witness(w)));
            }
            if g.failures.len() > 10 {
                s.push_str(&format!("      ... {} more\n", g.failures.len() - 10));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "valid": self.is_valid(),
            "groups": self.groups.iter().map(|g| json!({
                "name": g.name,
                "passed": g.passed(),
                "checked": g.checked,
                "failures": g.failures.iter().map(|w| json!({
                    "at": w.indices.iter()
                        .filter(|(_, i)| *i != usize::MAX)
                        .map(|(n, i)| json!([n, i])).collect::<Vec<_>>(),
                    "from": w.indices.iter()
                        .filter(|(_, i)| *i == usize::MAX)
                        .map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                    "residual": w.residual,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn render_witness(w: &Witness) -> String {
    let from: Vec<&str> =
        w.indices.iter().filter(|(_, i)| *i == usize::MAX).map(|(n, _)| n.as_str()).collect();
    let at: Vec<String> = w
        .indices
        .iter()
        .filter(|(_, i)| *i != usize::MAX)
        .map(|(n, i)| format!("{n}={i}"))
        .collect();
    let prefix = if from.is_empty() { String::new() } else { format!("[{}] ", from.join(" / ")) };
    format!("{prefix}({}), residual [{}]", at.join(","), w.residual.join(", "))
}

/// Lie algebra given by structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S = Rational> {
    pub dim: usize,
    pub bracket: Tensor3<S>,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, bracket: Tensor3::zeros(dim, dim, dim) }
    }

    /// Builds from `(i, j, k, c)` entries; the `(j, i)` slot is filled by skew completion.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, S)]) -> Result<Self> {
        let mut b = Tensor3::zeros(dim, dim, dim);
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::MalformedTensor(format!("bracket index ({i},{j},{k}) out of range for dim {dim}")));
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::MalformedTensor(format!("[e_{i}, e_{i}] must vanish")));
                }
                continue;
            }
            let (a, bb, sign) = if i < j { (i, j, false) } else { (j, i, true) };
            let v = if sign { -c.clone() } else { c.clone() };
            let slot = (a * dim + bb) * dim + k;
            if seen[slot] && *b.at(a, bb, k) != v {
                return Err(Error::MalformedTensor(format!(
                    "conflicting entries for [e_{a}, e_{bb}] at component {k}"
                )));
            }
            seen[slot] = true;
            b.set(a, bb, k, v.clone());
            b.set(bb, a, k, -v);
        }
        Ok(LieAlgebra { dim, bracket: b })
    }

    pub fn br(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.bracket.apply(x, y)
    }

    pub fn br_basis(&self, i: usize, j: usize) -> &[S] {
        self.bracket.row(i, j)
    }

    pub fn is_skew(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| *self.bracket.at(i, j, k) == -self.bracket.at(j, i, k).clone()))
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra { dim: self.dim, bracket: self.bracket.map(f) }
    }
}

/// `rho_{e_i} v_p = sum_q action[i][p][q] v_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieRep<S = Rational> {
    pub algebra: LieAlgebra<S>,
    pub space_dim: usize,
    pub action: Tensor3<S>,
}

impl<S: Scalar> LieRep<S> {
    pub fn new(algebra: LieAlgebra<S>, space_dim: usize, action: Tensor3<S>) -> Result<Self> {
        if action.shape() != (algebra.dim, space_dim, space_dim) {
            return Err(Error::MalformedTensor(format!(
                "action has shape {:?}, expected ({}, {}, {})",
                action.shape(),
                algebra.dim,
                space_dim,
                space_dim
            )));
        }
        Ok(LieRep { algebra, space_dim, action })
    }

    pub fn adjoint(g: &LieAlgebra<S>) -> Self {
        LieRep { algebra: g.clone(), space_dim: g.dim, action: g.bracket.clone() }
    }

    pub fn trivial(g: &LieAlgebra<S>, space_dim: usize) -> Self {
        LieRep { algebra: g.clone(), space_dim, action: Tensor3::zeros(g.dim, space_dim, space_dim) }
    }

    /// `rho_{e_i} v`.
    pub fn act(&self, i: usize, v: &[S]) -> Vec<S> {
        self.action.apply_left(i, v)
    }

    pub fn act_vec(&self, x: &[S], v: &[S]) -> Vec<S> {
        self.action.apply(x, v)
    }
}

/// Checks the Jacobi identity on every basis triple `i<j<k`.
pub fn validate_lie_algebra<S: Scalar>(g: &LieAlgebra<S>) -> ValidationReport {
    let mut rep = ValidationReport::new("Lie algebra");
    rep.push(jacobi_group("Jacobi identity", g));
    rep
}

pub(crate) fn jacobi_group<S: Scalar>(name: &str, g: &LieAlgebra<S>) -> CheckGroup {
    let n = g.dim;
    let mut grp = CheckGroup::new(name);
    if !g.is_skew() {
        grp.checked += 1;
        grp.failures.push(Witness { indices: vec![], residual: vec!["bracket is not skew-symmetric".into()] });
    }
    for t in subsets(n, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let mut r = g.bracket.apply_left(i, g.br_basis(j, k));
        let r2 = g.bracket.apply_left(j, g.br_basis(k, i));
        let r3 = g.bracket.apply_left(k, g.br_basis(i, j));
        for ((a, b), c) in r.iter_mut().zip(r2).zip(r3) {
            *a = a.clone() + b + c;
        }
        grp.record(&["i", "j", "k"], &[i, j, k], &r);
    }
    grp
}

/// Checks `rho_[x,y] = rho_x rho_y - rho_y rho_x` on basis pairs; residuals are flattened matrices.
pub fn validate_representation<S: Scalar>(r: &LieRep<S>) -> ValidationReport {
    let mut rep = ValidationReport::new("representation");
    rep.push(rep_law_group("representation law", &r.algebra, &r.action));
    rep
}

pub(crate) fn rep_law_group<S: Scalar>(name: &str, g: &LieAlgebra<S>, action: &Tensor3<S>) -> CheckGroup {
    let mut grp = CheckGroup::new(name);
    let n = action.d1;
    for i in 0..g.dim {
        for j in i + 1..g.dim {
            let mut residual = Vec::with_capacity(n * n);
            for p in 0..n {
                let vp = unit::<S>(n, p);
                let lhs = action.apply(g.br_basis(i, j), &vp);
                let a = action.apply_left(i, action.row(j, p));
                let b = action.apply_left(j, action.row(i, p));
                for q in 0..n {
                    residual.push(lhs[q].clone() - a[q].clone() + b[q].clone());
                }
            }
            grp.record(&["i", "j"], &[i, j], &residual);
        }
    }
    grp
}

/// Skew multilinear map `Lambda^k (k^d) -> k^c`, stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMap<S = Rational> {
    pub arity: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> SkewMap<S> {
    pub fn zero(arity: usize, domain_dim: usize, codomain_dim: usize) -> Self {
        SkewMap { arity, domain_dim, codomain_dim, coeffs: vec![S::zero(); binom(domain_dim, arity) * codomain_dim] }
    }

    pub fn from_fn(arity: usize, d: usize, c: usize, mut f: impl FnMut(&[usize]) -> Vec<S>) -> Self {
        let mut m = Self::zero(arity, d, c);
        for (r, t) in subsets(d, arity).iter().enumerate() {
            let v = f(t);
            m.coeffs[r * c..(r + 1) * c].clone_from_slice(&v);
        }
        m
    }

    /// Number of coordinates (`C(d, k) * c`).
    pub fn space_dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Value on a strictly increasing tuple.
    pub fn value(&self, sorted: &[usize]) -> &[S] {
        let r = subset_rank(self.domain_dim, sorted);
        &self.coeffs[r * self.codomain_dim..(r + 1) * self.codomain_dim]
    }

    pub fn value_mut(&mut self, sorted: &[usize]) -> &mut [S] {
        let r = subset_rank(self.domain_dim, sorted);
        &mut self.coeffs[r * self.codomain_dim..(r + 1) * self.codomain_dim]
    }

    /// Value on arbitrary basis indices: `None` on repeats, otherwise the sign and stored vector.
    pub fn eval_basis(&self, t: &[usize]) -> Option<(bool, &[S])> {
        let (neg, s) = sort_sign(t)?;
        Some((neg, self.value(&s)))
    }

    /// `acc += c * f(t)` for basis indices `t` in any order.
    pub fn accumulate(&self, acc: &mut [S], c: &S, t: &[usize]) {
        if c.is_zero() {
            return;
        }
        if let Some((neg, v)) = self.eval_basis(t) {
            let c = if neg { -c.clone() } else { c.clone() };
            axpy(acc, &c, v);
        }
    }

    /// `f(u, e_rest...)` with an arbitrary vector in the first slot.
    pub fn eval_first(&self, u: &[S], rest: &[usize]) -> Vec<S> {
        let mut out = vec![S::zero(); self.codomain_dim];
        let mut t = Vec::with_capacity(rest.len() + 1);
        for (c, uc) in u.iter().enumerate() {
            if uc.is_zero() {
                continue;
            }
            t.clear();
            t.push(c);
            t.extend_from_slice(rest);
            self.accumulate(&mut out, uc, &t);
        }
        out
    }

    /// Full multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[Vec<S>]) -> Vec<S> {
        assert_eq!(args.len(), self.arity, "argument count");
        let mut out = vec![S::zero(); self.codomain_dim];
        let mut idx = vec![0usize; self.arity];
        fn rec<S: Scalar>(
            m: &SkewMap<S>,
            args: &[Vec<S>],
            pos: usize,
            coef: S,
            idx: &mut Vec<usize>,
            out: &mut [S],
        ) {
            if pos == args.len() {
                m.accumulate(out, &coef, idx);
                return;
            }
            for (c, a) in args[pos].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                idx[pos] = c;
                rec(m, args, pos + 1, coef.clone() * a.clone(), idx, out);
            }
        }
        rec(self, args, 0, S::one(), &mut idx, &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!((self.arity, self.domain_dim, self.codomain_dim), (other.arity, other.domain_dim, other.codomain_dim));
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        SkewMap { coeffs, ..self.clone() }
    }

    pub fn scaled(&self, c: &S) -> Self {
        SkewMap { coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-S::one())
    }
}

impl SkewMap<Rational> {
    /// The `idx`-th coordinate basis vector of the map space.
    pub fn basis_element(arity: usize, d: usize, c: usize, idx: usize) -> Self {
        let mut m = Self::zero(arity, d, c);
        m.coeffs[idx] = Rational::one();
        m
    }
}

/// Chevalley-Eilenberg coboundary of an `n`-cochain with values in `r`.
pub fn ce_coboundary<S: Scalar>(r: &LieRep<S>, f: &SkewMap<S>, n: usize) -> Result<SkewMap<S>> {
    let d = r.algebra.dim;
    if f.arity != n || f.domain_dim != d || f.codomain_dim != r.space_dim {
        return Err(Error::ArityMismatch(format!(
            "cochain of arity {} on ({} -> {}), expected arity {n} on ({d} -> {})",
            f.arity, f.domain_dim, f.codomain_dim, r.space_dim
        )));
    }
    let g = &r.algebra;
    Ok(SkewMap::from_fn(n + 1, d, r.space_dim, |x| {
        let mut out = vec![S::zero(); r.space_dim];
        let mut rest = Vec::with_capacity(n);
        for i in 0..=n {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
            let v = r.act(x[i], f.value(&rest));
            let c = if i % 2 == 0 { S::one() } else { -S::one() };
            axpy(&mut out, &c, &v);
        }
        for i in 0..=n {
            for j in i + 1..=n {
                rest.clear();
                rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v));
                let v = f.eval_first(g.br_basis(x[i], x[j]), &rest);
                let c = if (i + j) % 2 == 0 { S::one() } else { -S::one() };
                axpy(&mut out, &c, &v);
            }
        }
        out
    }))
}

/// Matrix of `d_n : C^n -> C^{n+1}` in the coordinate basis of [`SkewMap`].
pub fn ce_matrix(r: &LieRep, n: usize) -> Matrix {
    let d = r.algebra.dim;
    let c = r.space_dim;
    let cols = binom(d, n) * c;
    let rows = binom(d, n + 1) * c;
    assemble_columns(rows, cols, |j| {
        let f = SkewMap::basis_element(n, d, c, j);
        ce_coboundary(r, &f, n).expect("shapes agree").coeffs
    })
}

/// Builds a matrix column by column; columns are computed in parallel.
pub fn assemble_columns(rows: usize, cols: usize, f: impl Fn(usize) -> Vec<Rational> + Sync + Send) -> Matrix {
    let columns: Vec<Vec<Rational>> = (0..cols).into_par_iter().map(f).collect();
    let mut m = Matrix::zeros(rows, cols);
    for (j, col) in columns.into_iter().enumerate() {
        assert_eq!(col.len(), rows, "column length");
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Dimensions of `H^0 .. H^max_degree` of `g` with coefficients in `r`.
pub fn ce_cohomology_dims(r: &LieRep, max_degree: usize) -> Result<Vec<usize>> {
    let mats: Vec<Matrix> = (0..=max_degree).map(|n| ce_matrix(r, n)).collect();
    let mut dims = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let d_in = if n == 0 { Matrix::zeros(mats[0].cols, 0) } else { mats[n - 1].clone() };
        dims.push(cohomology_dim(&mats[n], &d_in)?);
    }
    Ok(dims)
}

/// Insertion `i_f g`: `sum over Sh(a, b-1)` of `g(f(x_sigma...), x_rest...)` with `a = arity f`.
pub fn insertion<S: Scalar>(f: &SkewMap<S>, g: &SkewMap<S>) -> SkewMap<S> {
    let d = f.domain_dim;
    let a = f.arity;
    let b = g.arity;
    let out_arity = a + b - 1;
    if b == 0 {
        return SkewMap::zero(out_arity, d, d);
    }
    let sh = shuffles(a, b - 1);
    SkewMap::from_fn(out_arity, d, d, |x| {
        let mut out = vec![S::zero(); d];
        let mut sub = Vec::with_capacity(a);
        let mut rest = Vec::with_capacity(b - 1);
        for s in sh.iter() {
            sub.clear();
            sub.extend(s.first.iter().map(|&p| x[p]));
            rest.clear();
            rest.extend(s.rest.iter().map(|&p| x[p]));
            let inner = f.value(&sub);
            if is_zero_vec(inner) {
                continue;
            }
            let v = g.eval_first(inner, &rest);
            let c = if s.negative { -S::one() } else { S::one() };
            axpy(&mut out, &c, &v);
        }
        out
    })
}

/// Nijenhuis-Richardson bracket `[f, g] = i_f g - (-1)^{mn} i_g f` of maps of arities `m+1`, `n+1`.
pub fn nr_bracket<S: Scalar>(f: &SkewMap<S>, g: &SkewMap<S>) -> Result<SkewMap<S>> {
    let d = f.domain_dim;
    if g.domain_dim != d || f.codomain_dim != d || g.codomain_dim != d {
        return Err(Error::SpaceMismatch(format!(
            "maps ({} -> {}) and ({} -> {}) do not live on one space",
            f.domain_dim, f.codomain_dim, g.domain_dim, g.codomain_dim
        )));
    }
    if f.arity + g.arity == 0 {
        return Err(Error::ArityMismatch("bracket of two arity-0 maps is undefined".into()));
    }
    let m = f.arity as i64 - 1;
    let n = g.arity as i64 - 1;
    let ifg = insertion(f, g);
    let igf = insertion(g, f);
    let sign_neg = (m * n).rem_euclid(2) == 0;
    let coeffs = ifg
        .coeffs
        .iter()
        .zip(&igf.coeffs)
        .map(|(a, b)| if sign_neg { a.clone() - b.clone() } else { a.clone() + b.clone() })
        .collect();
    Ok(SkewMap { coeffs, ..ifg })
}

/// Bracket of a Lie algebra as an arity-2 map.
pub fn bracket_map<S: Scalar>(g: &LieAlgebra<S>) -> SkewMap<S> {
    SkewMap::from_fn(2, g.dim, g.dim, |t| g.br_basis(t[0], t[1]).to_vec())
}

/// The induced action on `Lambda^q V`, basis = increasing `q`-tuples in lexicographic order.
pub fn exterior_power<S: Scalar>(r: &LieRep<S>, q: usize) -> LieRep<S> {
    let n = r.space_dim;
    let basis = subsets(n, q);
    let dim = basis.len();
    let mut action = Tensor3::zeros(r.algebra.dim, dim, dim);
    for i in 0..r.algebra.dim {
        for (pj, t) in basis.iter().enumerate() {
            let mut out = vec![S::zero(); dim];
            for s in 0..q {
                for (u, c) in r.action.row(i, t[s]).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut t2 = t.clone();
                    t2[s] = u;
                    if let Some((neg, sorted)) = sort_sign(&t2) {
                        let k = subset_rank(n, &sorted);
                        let c = if neg { -c.clone() } else { c.clone() };
                        out[k] = out[k].clone() + c;
                    }
                }
            }
            for (k, v) in out.into_iter().enumerate() {
                action.set(i, pj, k, v);
            }
        }
    }
    LieRep { algebra: r.algebra.clone(), space_dim: dim, action }
}

/// `sum_k a_k b_k`.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        fma(&mut acc, x, y);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{rank, rat};
    use proptest::prelude::*;

    fn aff1() -> LieAlgebra {
        LieAlgebra::from_entries(2, &[(0, 1, 1, rat(1))]).unwrap()
    }

    fn bad3() -> LieAlgebra {
        // [e1,e2]=e3, [e1,e3]=e1 (0-based indices)
        LieAlgebra::from_entries(3, &[(0, 1, 2, rat(1)), (0, 2, 0, rat(1))]).unwrap()
    }

    fn sl2() -> LieAlgebra {
        // e,f,h: [e,f]=h, [h,e]=2e, [h,f]=-2f
        LieAlgebra::from_entries(3, &[(0, 1, 2, rat(1)), (2, 0, 0, rat(2)), (2, 1, 1, rat(-2))]).unwrap()
    }

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_entries(3, &[(0, 1, 2, rat(1))]).unwrap()
    }

    fn random_map(arity: usize, d: usize, c: usize, vals: &[i64]) -> SkewMap {
        let mut m = SkewMap::zero(arity, d, c);
        for (k, x) in m.coeffs.iter_mut().enumerate() {
            *x = rat(vals[k % vals.len()]);
        }
        m
    }

    #[test]
    fn jacobi_examples() {
        assert!(validate_lie_algebra(&LieAlgebra::<Rational>::abelian(4)).is_valid());
        assert!(validate_lie_algebra(&aff1()).is_valid());
        assert!(validate_lie_algebra(&sl2()).is_valid());
        let r = validate_lie_algebra(&bad3());
        assert!(!r.is_valid());
        let w = &r.groups[0].failures;
        assert_eq!(w.len(), 1);
        // the only triple is (0,1,2); the Jacobiator works out to e_3 by hand
        assert_eq!(w[0].indices.iter().map(|x| x.1).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(w[0].residual, vec!["0", "0", "1"]);
    }

    #[test]
    fn from_entries_rejects_conflicts() {
        assert!(LieAlgebra::from_entries(2, &[(0, 1, 1, rat(1)), (1, 0, 1, rat(1))]).is_err());
        assert!(LieAlgebra::from_entries(2, &[(0, 1, 1, rat(1)), (1, 0, 1, rat(-1))]).is_ok());
        assert!(LieAlgebra::from_entries(2, &[(0, 2, 1, rat(1))]).is_err());
        assert!(LieAlgebra::from_entries(2, &[(1, 1, 1, rat(1))]).is_err());
    }

    #[test]
    fn representation_examples() {
        assert!(validate_representation(&LieRep::adjoint(&sl2())).is_valid());
        assert!(validate_representation(&LieRep::trivial(&aff1(), 3)).is_valid());
        // aff(1) on k with both generators acting by 1: rho_[e1,e2] = 1 but the commutator is 0
        let mut a = Tensor3::zeros(2, 1, 1);
        a.set(0, 0, 0, rat(1));
        a.set(1, 0, 0, rat(1));
        let r = validate_representation(&LieRep::new(aff1(), 1, a).unwrap());
        assert!(!r.is_valid());
        assert_eq!(r.groups[0].failures[0].residual, vec!["1"]);
    }

    #[test]
    fn ce_coboundary_examples() {
        let g = aff1();
        let ad = LieRep::adjoint(&g);
        // n = 0: delta(v)(x) = x . v
        let v = SkewMap { arity: 0, domain_dim: 2, codomain_dim: 2, coeffs: vec![rat(0), rat(1)] };
        let dv = ce_coboundary(&ad, &v, 0).unwrap();
        assert_eq!(dv.value(&[0]), &[rat(0), rat(1)]);
        assert_eq!(dv.value(&[1]), &[rat(0), rat(0)]);
        // identity map: [x, y] - [y, x] - [x, y] = [x, y]
        let id = SkewMap::from_fn(1, 2, 2, |t| unit(2, t[0]));
        let d = ce_coboundary(&ad, &id, 1).unwrap();
        assert_eq!(d.value(&[0, 1]), g.br_basis(0, 1));
        // abelian with zero action
        let ab = LieRep::trivial(&LieAlgebra::abelian(3), 2);
        let f = random_map(2, 3, 2, &[1, -2, 3]);
        assert!(ce_coboundary(&ab, &f, 2).unwrap().is_zero());
        assert!(ce_coboundary(&ab, &f, 1).is_err());
    }

    #[test]
    fn ce_cohomology_examples() {
        let ab1 = LieRep::trivial(&LieAlgebra::abelian(1), 1);
        assert_eq!(ce_cohomology_dims(&ab1, 1).unwrap(), vec![1, 1]);
        // aff(1) adjoint: derivations are all inner
        assert_eq!(ce_cohomology_dims(&LieRep::adjoint(&aff1()), 2).unwrap(), vec![0, 0, 0]);
        let dims = ce_cohomology_dims(&LieRep::adjoint(&heisenberg()), 5).unwrap();
        assert_eq!(&dims[4..], &[0, 0]);
        // sl2 is semisimple: H^1 = H^2 = 0 for the adjoint representation
        let s = ce_cohomology_dims(&LieRep::adjoint(&sl2()), 3).unwrap();
        assert_eq!(&s[..3], &[0, 0, 0]);
        assert_eq!(ce_cohomology_dims(&LieRep::trivial(&sl2(), 1), 3).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn nr_identity_with_bracket() {
        // i_id mu = 2 mu and i_mu id = mu, so [id, mu] = mu
        let mu = random_map(2, 3, 3, &[1, 0, -1, 2, 3]);
        let id = SkewMap::from_fn(1, 3, 3, |t| unit(3, t[0]));
        assert_eq!(insertion(&id, &mu), mu.scaled(&rat(2)));
        assert_eq!(insertion(&mu, &id), mu);
        assert_eq!(nr_bracket(&id, &mu).unwrap(), mu);
    }

    #[test]
    fn nr_self_bracket_detects_jacobi() {
        for g in [aff1(), sl2(), heisenberg()] {
            let mu = bracket_map(&g);
            assert!(nr_bracket(&mu, &mu).unwrap().is_zero());
        }
        let mu = bracket_map(&bad3());
        assert!(!nr_bracket(&mu, &mu).unwrap().is_zero());
    }

    #[test]
    fn ce_equals_minus_nr_for_adjoint() {
        for g in [aff1(), sl2(), heisenberg()] {
            let ad = LieRep::adjoint(&g);
            let mu = bracket_map(&g);
            for n in 0..=3 {
                let f = random_map(n, 3.min(g.dim), g.dim, &[1, -1, 2, 0, 3, -2, 1]);
                let f = SkewMap { domain_dim: g.dim, ..SkewMap::zero(n, g.dim, g.dim) }.plus(&SkewMap {
                    coeffs: f.coeffs.iter().cycle().take(binom(g.dim, n) * g.dim).cloned().collect(),
                    ..SkewMap::zero(n, g.dim, g.dim)
                });
                let a = ce_coboundary(&ad, &f, n).unwrap();
                let b = nr_bracket(&mu, &f).unwrap().neg();
                assert_eq!(a, b, "degree {n}");
            }
        }
    }

    #[test]
    fn exterior_power_is_a_rep() {
        for g in [aff1(), sl2()] {
            for q in 0..=g.dim {
                let r = exterior_power(&LieRep::adjoint(&g), q);
                assert!(validate_representation(&r).is_valid(), "q = {q}");
            }
        }
    }

    #[test]
    fn ce_squares_to_zero_on_examples() {
        for r in [LieRep::adjoint(&sl2()), LieRep::adjoint(&heisenberg()), exterior_power(&LieRep::adjoint(&sl2()), 2)] {
            for n in 0..4 {
                let p = ce_matrix(&r, n + 1).mul(&ce_matrix(&r, n)).unwrap();
                assert!(p.is_zero());
            }
        }
    }

    fn arb_map(max_arity: usize, d: usize) -> impl Strategy<Value = SkewMap> {
        (1..=max_arity).prop_flat_map(move |k| {
            proptest::collection::vec(-2i64..=2, binom(d, k) * d).prop_map(move |v| SkewMap {
                arity: k,
                domain_dim: d,
                codomain_dim: d,
                coeffs: v.into_iter().map(rat).collect(),
            })
        })
    }

    fn arb_algebra_rep(d: usize) -> impl Strategy<Value = LieRep> {
        // random valid reps: restrictions of adjoint / exterior powers of small fixed algebras,
        // twisted by a random invertible diagonal rescaling of the algebra basis
        (0usize..3, proptest::collection::vec(1i64..=3, d)).prop_map(move |(which, s)| {
            let g = match which {
                0 => aff1(),
                1 => sl2(),
                _ => heisenberg(),
            };
            let scale: Vec<Rational> = s.iter().cycle().take(g.dim).map(|&x| rat(x)).collect();
            // rescaling e_i -> s_i e_i gives an isomorphic algebra
            let mut b = Tensor3::zeros(g.dim, g.dim, g.dim);
            for i in 0..g.dim {
                for j in 0..g.dim {
                    for k in 0..g.dim {
                        let v = g.bracket.at(i, j, k) * &scale[i] * &scale[j] / &scale[k];
                        b.set(i, j, k, v);
                    }
                }
            }
            LieRep::adjoint(&LieAlgebra { dim: g.dim, bracket: b })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn nr_graded_antisymmetry(f in arb_map(3, 3), g in arb_map(3, 3)) {
            let m = f.arity as i64 - 1;
            let n = g.arity as i64 - 1;
            let fg = nr_bracket(&f, &g).unwrap();
            let gf = nr_bracket(&g, &f).unwrap();
            let s = if (m * n) % 2 == 0 { rat(-1) } else { rat(1) };
            prop_assert_eq!(fg, gf.scaled(&s));
        }

        #[test]
        fn nr_graded_jacobi(f in arb_map(2, 3), g in arb_map(2, 3), h in arb_map(2, 3)) {
            let (m, n, p) = (f.arity as i64 - 1, g.arity as i64 - 1, h.arity as i64 - 1);
            let sgn = |e: i64| if e % 2 == 0 { rat(1) } else { rat(-1) };
            let a = nr_bracket(&f, &nr_bracket(&g, &h).unwrap()).unwrap().scaled(&sgn(m * p));
            let b = nr_bracket(&g, &nr_bracket(&h, &f).unwrap()).unwrap().scaled(&sgn(n * m));
            let c = nr_bracket(&h, &nr_bracket(&f, &g).unwrap()).unwrap().scaled(&sgn(p * n));
            prop_assert!(a.plus(&b).plus(&c).is_zero());
        }

        #[test]
        fn ce_square_zero_random_reps(r in arb_algebra_rep(3), q in 0usize..3) {
            let r = exterior_power(&r, q.min(r.algebra.dim));
            for n in 0..4 {
                let p = ce_matrix(&r, n + 1).mul(&ce_matrix(&r, n)).unwrap();
                prop_assert!(p.is_zero());
            }
        }

        #[test]
        fn jacobi_iff_nr_square(v in proptest::collection::vec(-1i64..=1, 9)) {
            let mut e = Vec::new();
            let pairs = [(0, 1), (0, 2), (1, 2)];
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                for k in 0..3 {
                    e.push((i, j, k, rat(v[pi * 3 + k])));
                }
            }
            let g = LieAlgebra::from_entries(3, &e).unwrap();
            let mu = bracket_map(&g);
            prop_assert_eq!(validate_lie_algebra(&g).is_valid(), nr_bracket(&mu, &mu).unwrap().is_zero());
        }
    }

    #[test]
    fn skew_eval_matches_basis_values() {
        let f = random_map(2, 3, 2, &[1, 2, -3, 0, 5]);
        let x = vec![rat(1), rat(2), rat(0)];
        let y = vec![rat(0), rat(1), rat(-1)];
        // expand by hand: x = e0 + 2 e1, y = e1 - e2
        let mut expect = vec![rat(0); 2];
        axpy(&mut expect, &rat(1), f.value(&[0, 1]));
        axpy(&mut expect, &rat(-1), f.value(&[0, 2]));
        axpy(&mut expect, &rat(-2), f.value(&[1, 2]));
        assert_eq!(f.eval(&[x.clone(), y.clone()]), expect);
        assert_eq!(f.eval(&[y, x]), expect.iter().map(|a| -a).collect::<Vec<_>>());
        assert_eq!(rank(&Matrix::identity(1)), 1);
    }
}
