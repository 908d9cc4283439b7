//! Multilinear maps on `g ⊕ h` split by bidegree. The sum space uses the g basis first
//! (indices `0..m`), then the h basis (`m..m+n`).

use num_traits::Zero;
use serde_json::{json, Value};

use crate::combinat::{binom, sort_sign, subset_rank, subsets};
use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, format_rational, is_zero_vec, Rational, Scalar};
use crate::io;
use crate::lie_core::{nr_bracket, CheckGroup, LieAlgebra, SkewMap, Tensor3, ValidationReport, Witness};

/// `Λ^a g ⊗ Λ^b h -> k^out`, stored on increasing g-tuples (outer) and h-tuples (inner).
#[derive(Clone, Debug, PartialEq)]
pub struct MixedMap<S = Rational> {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub out: usize,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> MixedMap<S> {
    pub fn zero(m: usize, n: usize, a: usize, b: usize, out: usize) -> Self {
        MixedMap { m, n, a, b, out, coeffs: vec![S::zero(); binom(m, a) * binom(n, b) * out] }
    }

    pub fn from_fn(
        m: usize,
        n: usize,
        a: usize,
        b: usize,
        out: usize,
        mut f: impl FnMut(&[usize], &[usize]) -> Vec<S>,
    ) -> Self {
        let mut map = Self::zero(m, n, a, b, out);
        let hs = subsets(n, b);
        let mut pos = 0;
        for gt in subsets(m, a) {
            for ht in &hs {
                let v = f(&gt, ht);
                debug_assert_eq!(v.len(), out);
                map.coeffs[pos..pos + out].clone_from_slice(&v);
                pos += out;
            }
        }
        map
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn offset(&self, gt: &[usize], ht: &[usize]) -> usize {
        (subset_rank(self.m, gt) * binom(self.n, self.b) + subset_rank(self.n, ht)) * self.out
    }

    /// Value on increasing tuples.
    pub fn value(&self, gt: &[usize], ht: &[usize]) -> &[S] {
        let o = self.offset(gt, ht);
        &self.coeffs[o..o + self.out]
    }

    pub fn value_mut(&mut self, gt: &[usize], ht: &[usize]) -> &mut [S] {
        let o = self.offset(gt, ht);
        &mut self.coeffs[o..o + self.out]
    }

    /// Value on arbitrary basis tuples, with the sign of sorting each block.
    pub fn eval_basis(&self, gt: &[usize], ht: &[usize]) -> Option<(bool, &[S])> {
        let (ng, g) = sort_sign(gt)?;
        let (nh, h) = sort_sign(ht)?;
        Some((ng ^ nh, self.value(&g, &h)))
    }

    /// `acc += c * F(gt; ht)`.
    pub fn accumulate(&self, acc: &mut [S], c: &S, gt: &[usize], ht: &[usize]) {
        if c.is_zero() {
            return;
        }
        if let Some((neg, v)) = self.eval_basis(gt, ht) {
            let c = if neg { -c.clone() } else { c.clone() };
            axpy(acc, &c, v);
        }
    }

    /// `acc += c * F(gt with slot pos replaced by u; ht)`.
    pub fn accumulate_subst_g(&self, acc: &mut [S], c: &S, gt: &[usize], pos: usize, u: &[S], ht: &[usize]) {
        let mut t = gt.to_vec();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            t[pos] = i;
            self.accumulate(acc, &(c.clone() * ui.clone()), &t, ht);
        }
    }

    /// `acc += c * F(gt; ht with slot pos replaced by u)`.
    pub fn accumulate_subst_h(&self, acc: &mut [S], c: &S, gt: &[usize], ht: &[usize], pos: usize, u: &[S]) {
        let mut t = ht.to_vec();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            t[pos] = i;
            self.accumulate(acc, &(c.clone() * ui.clone()), gt, &t);
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!((self.m, self.n, self.a, self.b, self.out), (o.m, o.n, o.a, o.b, o.out), "mixed map shapes");
        MixedMap { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.clone() + y.clone()).collect(), ..self.clone() }
    }

    pub fn scaled(&self, c: &S) -> Self {
        MixedMap { coeffs: self.coeffs.iter().map(|x| c.clone() * x.clone()).collect(), ..self.clone() }
    }

    pub fn same_shape(&self, o: &Self) -> bool {
        (self.m, self.n, self.a, self.b, self.out) == (o.m, o.n, o.a, o.b, o.out)
    }
}

impl MixedMap<Rational> {
    /// Sparse entries `[[g-tuple], [h-tuple], idx, "c"]`.
    pub fn to_json(&self) -> Value {
        let mut out = Vec::new();
        let hs = subsets(self.n, self.b);
        let mut pos = 0;
        for gt in subsets(self.m, self.a) {
            for ht in &hs {
                for k in 0..self.out {
                    let c = &self.coeffs[pos + k];
                    if !c.is_zero() {
                        out.push(json!([gt, ht, k, format_rational(c)]));
                    }
                }
                pos += self.out;
            }
        }
        Value::Array(out)
    }

    /// Entries may use unsorted tuples; they are normalized with the sorting sign and summed.
    pub fn from_json(v: &Value, path: &str, m: usize, n: usize, a: usize, b: usize, out: usize) -> Result<Self> {
        let mut map = Self::zero(m, n, a, b, out);
        for (e, item) in io::array(v, path)?.iter().enumerate() {
            let p = format!("{path}[{e}]");
            let arr = io::array(item, &p)?;
            if arr.len() != 4 {
                return Err(Error::parse(&p, "expected [g-tuple, h-tuple, index, coefficient]"));
            }
            let tuple = |x: &Value, q: String, len: usize, bound: usize| -> Result<Vec<usize>> {
                let t = io::array(x, &q)?;
                if t.len() != len {
                    return Err(Error::parse(&q, format!("expected a tuple of length {len}")));
                }
                t.iter()
                    .enumerate()
                    .map(|(i, y)| {
                        let c = io::count(y, &format!("{q}[{i}]"))?;
                        if c >= bound {
                            Err(Error::parse(format!("{q}[{i}]"), format!("index {c} out of range (< {bound})")))
                        } else {
                            Ok(c)
                        }
                    })
                    .collect()
            };
            let gt = tuple(&arr[0], format!("{p}[0]"), a, m)?;
            let ht = tuple(&arr[1], format!("{p}[1]"), b, n)?;
            let k = io::count(&arr[2], &format!("{p}[2]"))?;
            if k >= out {
                return Err(Error::parse(format!("{p}[2]"), format!("index {k} out of range (< {out})")));
            }
            let c = io::rational(&arr[3], &format!("{p}[3]"))?;
            let (ng, gs) = sort_sign(&gt).ok_or_else(|| Error::parse(&p, "repeated g index"))?;
            let (nh, hs) = sort_sign(&ht).ok_or_else(|| Error::parse(&p, "repeated h index"))?;
            let c = if ng ^ nh { -c } else { c };
            let slot = &mut map.value_mut(&gs, &hs)[k];
            *slot = slot.clone() + c;
        }
        Ok(map)
    }
}

/// Bidegree `k|l` component: `part_g` on `Λ^{k+1}g ⊗ Λ^l h -> g`, `part_h` on `Λ^k g ⊗ Λ^{l+1}h -> h`.
/// Either part is `None` when its shape has a negative exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct BidegreeMap<S = Rational> {
    pub m: usize,
    pub n: usize,
    pub k: i64,
    pub l: i64,
    pub part_g: Option<MixedMap<S>>,
    pub part_h: Option<MixedMap<S>>,
}

impl<S: Scalar> BidegreeMap<S> {
    pub fn zero(m: usize, n: usize, k: i64, l: i64) -> Self {
        let part_g = (k + 1 >= 0 && l >= 0).then(|| MixedMap::zero(m, n, (k + 1) as usize, l as usize, m));
        let part_h = (k >= 0 && l + 1 >= 0).then(|| MixedMap::zero(m, n, k as usize, (l + 1) as usize, n));
        BidegreeMap { m, n, k, l, part_g, part_h }
    }

    pub fn arity(&self) -> usize {
        (self.k + self.l + 1) as usize
    }

    pub fn is_zero(&self) -> bool {
        self.part_g.as_ref().is_none_or(|p| p.is_zero()) && self.part_h.as_ref().is_none_or(|p| p.is_zero())
    }

    /// A component of bidegree `-1` in either direction.
    pub fn is_minus_one(&self) -> bool {
        self.k == -1 || self.l == -1
    }
}

/// `m·C(m,k+1)·C(n,l) + n·C(m,k)·C(n,l+1)`.
pub fn bidegree_dim(m: usize, n: usize, k: i64, l: i64) -> usize {
    let c = |a: usize, b: i64| if b < 0 { 0 } else { binom(a, b as usize) };
    m * c(m, k + 1) * c(n, l) + n * c(m, k) * c(n, l + 1)
}

/// The skew map on `g ⊕ h` that agrees with `b` on its own slot patterns and vanishes elsewhere.
pub fn embed<S: Scalar>(b: &BidegreeMap<S>) -> SkewMap<S> {
    let (m, n) = (b.m, b.n);
    let d = m + n;
    SkewMap::from_fn(b.arity(), d, d, |t| {
        let split = t.iter().take_while(|&&i| i < m).count();
        let gt = &t[..split];
        let ht: Vec<usize> = t[split..].iter().map(|i| i - m).collect();
        let mut out = vec![S::zero(); d];
        if let Some(p) = &b.part_g {
            if p.a == gt.len() && p.b == ht.len() {
                out[..m].clone_from_slice(p.value(gt, &ht));
            }
        }
        if let Some(p) = &b.part_h {
            if p.a == gt.len() && p.b == ht.len() {
                out[m..].clone_from_slice(p.value(gt, &ht));
            }
        }
        out
    })
}

/// Components `f_{k|l}` with `k + l = arity - 1`, ordered by `k` from `-1` upward.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S = Rational> {
    pub components: Vec<BidegreeMap<S>>,
}

impl<S: Scalar> Decomposition<S> {
    /// True when every `-1` component vanishes.
    pub fn in_subalgebra(&self) -> bool {
        self.components.iter().filter(|c| c.is_minus_one()).all(|c| c.is_zero())
    }

    pub fn component(&self, k: i64, l: i64) -> Option<&BidegreeMap<S>> {
        self.components.iter().find(|c| c.k == k && c.l == l)
    }

    pub fn nonzero(&self) -> Vec<(i64, i64)> {
        self.components.iter().filter(|c| !c.is_zero()).map(|c| (c.k, c.l)).collect()
    }
}

/// Splits a skew map on `g ⊕ h` (with values in `g ⊕ h`) into its bidegree components.
pub fn decompose<S: Scalar>(f: &SkewMap<S>, m: usize, n: usize) -> Result<Decomposition<S>> {
    if f.domain_dim != m + n || f.codomain_dim != m + n {
        return Err(Error::ArityMismatch(format!(
            "map on ({} -> {}) is not a map on g ⊕ h of dimension {}",
            f.domain_dim,
            f.codomain_dim,
            m + n
        )));
    }
    let deg = f.arity as i64 - 1;
    let mut components = Vec::new();
    for k in -1..=deg + 1 {
        let l = deg - k;
        let mut c = BidegreeMap::zero(m, n, k, l);
        if let Some(p) = c.part_g.as_mut() {
            *p = MixedMap::from_fn(m, n, p.a, p.b, m, |gt, ht| {
                let t: Vec<usize> = gt.iter().copied().chain(ht.iter().map(|h| h + m)).collect();
                f.value(&t)[..m].to_vec()
            });
        }
        if let Some(p) = c.part_h.as_mut() {
            *p = MixedMap::from_fn(m, n, p.a, p.b, n, |gt, ht| {
                let t: Vec<usize> = gt.iter().copied().chain(ht.iter().map(|h| h + m)).collect();
                f.value(&t)[m..].to_vec()
            });
        }
        components.push(c);
    }
    Ok(Decomposition { components })
}

/// `π = (μ⋉ρ, ψ⋊ν)` packaged from brackets and actions.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureElement<S = Rational> {
    pub mu_rho: BidegreeMap<S>,
    pub psi_nu: BidegreeMap<S>,
}

impl<S: Scalar> StructureElement<S> {
    /// `rho[i][a][b]`: `ρ_{e_i} f_a`; `psi[a][i][j]`: `ψ_{f_a} e_i`.
    pub fn new(g: &LieAlgebra<S>, h: &LieAlgebra<S>, rho: &Tensor3<S>, psi: &Tensor3<S>) -> Self {
        let (m, n) = (g.dim, h.dim);
        let mut mu_rho = BidegreeMap::zero(m, n, 1, 0);
        mu_rho.part_g = Some(MixedMap::from_fn(m, n, 2, 0, m, |gt, _| g.br_basis(gt[0], gt[1]).to_vec()));
        mu_rho.part_h = Some(MixedMap::from_fn(m, n, 1, 1, n, |gt, ht| rho.row(gt[0], ht[0]).to_vec()));
        let mut psi_nu = BidegreeMap::zero(m, n, 0, 1);
        psi_nu.part_g =
            Some(MixedMap::from_fn(m, n, 1, 1, m, |gt, ht| psi.row(ht[0], gt[0]).iter().map(|c| -c.clone()).collect()));
        psi_nu.part_h = Some(MixedMap::from_fn(m, n, 0, 2, n, |_, ht| h.br_basis(ht[0], ht[1]).to_vec()));
        StructureElement { mu_rho, psi_nu }
    }

    pub fn embedded(&self) -> SkewMap<S> {
        embed(&self.mu_rho).plus(&embed(&self.psi_nu))
    }
}

/// The three brackets whose vanishing makes `π` Maurer-Cartan.
#[derive(Clone, Debug, PartialEq)]
pub struct MCReport<S = Rational> {
    pub mu_rho_sq: SkewMap<S>,
    pub cross: SkewMap<S>,
    pub psi_nu_sq: SkewMap<S>,
}

impl<S: Scalar> MCReport<S> {
    pub fn is_mc(&self) -> bool {
        self.mu_rho_sq.is_zero() && self.cross.is_zero() && self.psi_nu_sq.is_zero()
    }

    pub fn to_report(&self) -> ValidationReport {
        let mut r = ValidationReport::new("Maurer-Cartan check");
        for (name, map) in [
            ("[μ⋉ρ, μ⋉ρ] = 0", &self.mu_rho_sq),
            ("[μ⋉ρ, ψ⋊ν] = 0", &self.cross),
            ("[ψ⋊ν, ψ⋊ν] = 0", &self.psi_nu_sq),
        ] {
            let mut g = CheckGroup::new(name);
            for t in subsets(map.domain_dim, map.arity) {
                g.checked += 1;
                let v = map.value(&t);
                if !is_zero_vec(v) {
                    g.failures.push(Witness {
                        indices: t.iter().enumerate().map(|(i, &x)| (format!("z{}", i + 1), x)).collect(),
                        residual: v.iter().map(|c| c.render()).collect(),
                    });
                }
            }
            r.push(g);
        }
        r
    }
}

/// Computes `[μ⋉ρ, μ⋉ρ]`, `[μ⋉ρ, ψ⋊ν]` and `[ψ⋊ν, ψ⋊ν]` separately.
pub fn mc_check<S: Scalar>(pi: &StructureElement<S>) -> Result<MCReport<S>> {
    let a = embed(&pi.mu_rho);
    let b = embed(&pi.psi_nu);
    let ((x, y), z) = rayon::join(|| rayon::join(|| nr_bracket(&a, &a), || nr_bracket(&a, &b)), || nr_bracket(&b, &b));
    Ok(MCReport { mu_rho_sq: x?, cross: y?, psi_nu_sq: z? })
}
