//! Polynomials over the spectrum: global and vertex-local inner products,
//! predistance polynomial families, and (pre)Hoffman polynomials.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{Idempotents, LocalSpectrum, Spectrum};

/// Dense polynomial in the monomial basis, `coeffs[k]` multiplying `x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![0.0, 1.0])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree of the stored coefficients; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul_x(&self) -> Poly {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(0.0);
        c.extend_from_slice(&self.coeffs);
        Poly::new(c)
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(f64, f64) -> f64) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Poly::new((0..len).map(|k| f(get(self, k), get(other, k))).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: f64) -> Poly {
        self.scale(rhs)
    }
}

/// `p(A)` by Horner's scheme.
pub fn evaluate_at_matrix(p: &Poly, a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut acc = &id * *p.coeffs.last().unwrap();
    for &c in p.coeffs.iter().rev().skip(1) {
        acc = &acc * a + &id * c;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextKind {
    Global,
    Local { vertex: usize },
}

/// A discrete measure on (a subset of) the distinct eigenvalues.
///
/// Global: weights `m(lambda_i)/n` on every eigenvalue. Local at `u`: weights
/// `m_u(lambda_i)` on the `u`-local eigenvalues only. Node 0 is always `lambda_0`.
#[derive(Clone, Debug)]
pub struct InnerProductContext {
    pub kind: ContextKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Index of each node among the distinct eigenvalues of the spectrum.
    pub classes: Vec<usize>,
}

impl InnerProductContext {
    pub fn global(spec: &Spectrum) -> Self {
        let n = spec.n() as f64;
        InnerProductContext {
            kind: ContextKind::Global,
            nodes: spec.lambdas().to_vec(),
            weights: spec.multiplicities().iter().map(|&m| m as f64 / n).collect(),
            classes: (0..=spec.d()).collect(),
        }
    }

    pub fn local(ls: &LocalSpectrum, spec: &Spectrum) -> Self {
        let classes = ls.support();
        InnerProductContext {
            kind: ContextKind::Local { vertex: ls.vertex },
            nodes: classes.iter().map(|&i| spec.lambdas()[i]).collect(),
            weights: classes.iter().map(|&i| ls.local_mults[i]).collect(),
            classes,
        }
    }

    /// Highest admissible polynomial degree (`d` or `d_u`).
    pub fn dim(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn values(&self, p: &Poly) -> Vec<f64> {
        self.nodes.iter().map(|&x| p.eval(x)).collect()
    }

    /// Inner product of two functions given by their values at the nodes.
    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    }

    fn check_degree(&self, p: &Poly) -> Result<()> {
        if p.degree() > self.dim() {
            return Err(Error::Degree {
                degree: p.degree(),
                max: self.dim(),
            });
        }
        Ok(())
    }
}

pub fn inner_product(p: &Poly, q: &Poly, ctx: &InnerProductContext) -> Result<f64> {
    ctx.check_degree(p)?;
    ctx.check_degree(q)?;
    Ok(ctx.dot(&ctx.values(p), &ctx.values(q)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Normalization {
    /// `||p_i||^2 = p_i(lambda_0)`.
    Global,
    /// `||p_i^u||_u^2 = alpha_u^2 p_i^u(lambda_0)`.
    Local { alpha_u: f64 },
}

impl Normalization {
    fn factor(self) -> f64 {
        match self {
            Normalization::Global => 1.0,
            Normalization::Local { alpha_u } => alpha_u * alpha_u,
        }
    }
}

/// Three-term recurrence `x p_i = b_{i-1} p_{i-1} + a_i p_i + c_{i+1} p_{i+1}`.
/// `b[m]` and `c[0]` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

/// An orthogonal family `p_0..p_m` with its partial sums `q_j`.
#[derive(Clone, Debug)]
pub struct PolySequence {
    pub context: InnerProductContext,
    pub normalization: Normalization,
    pub polys: Vec<Poly>,
    /// `values[i][k] = p_i(nodes[k])`.
    pub values: Vec<Vec<f64>>,
    pub sums: Vec<Poly>,
    pub sum_values: Vec<Vec<f64>>,
    pub recurrence: Recurrence,
}

impl PolySequence {
    /// Highest index `m` (`d` or `d_u`).
    pub fn top(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn p_at_lambda0(&self, i: usize) -> f64 {
        self.values[i][0]
    }

    pub fn q_at_lambda0(&self, j: usize) -> f64 {
        self.sum_values[j][0]
    }

    pub fn norm_sq(&self, i: usize) -> f64 {
        self.context.dot(&self.values[i], &self.values[i])
    }
}

/// Orthogonalizes `1, x p~_0, x p~_1, ..` against the context measure (two
/// Gram-Schmidt passes per degree) and rescales each member to the
/// normalization rule.
pub fn predistance_polynomials(
    ctx: &InnerProductContext,
    normalization: Normalization,
) -> Result<PolySequence> {
    match (ctx.kind, normalization) {
        (ContextKind::Global, Normalization::Global)
        | (ContextKind::Local { .. }, Normalization::Local { .. }) => {}
        _ => {
            return Err(Error::Hypothesis(
                "local contexts need alpha_u and global contexts must not have it".into(),
            ))
        }
    }
    if ctx.nodes.len() < 2 || ctx.weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::DegenerateMeasure(0));
    }

    let m = ctx.dim();
    let k = ctx.nodes.len();
    let mut basis_vals: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    let mut basis_coefs: Vec<Vec<f64>> = Vec::with_capacity(m + 1);

    for deg in 0..=m {
        let (mut v, mut c) = if deg == 0 {
            (vec![1.0; k], vec![1.0])
        } else {
            let prev_v = &basis_vals[deg - 1];
            let prev_c: &Vec<f64> = &basis_coefs[deg - 1];
            let v: Vec<f64> = ctx.nodes.iter().zip(prev_v).map(|(x, p)| x * p).collect();
            let mut c = vec![0.0];
            c.extend_from_slice(prev_c);
            (v, c)
        };
        let before = ctx.dot(&v, &v).sqrt();
        for _pass in 0..2 {
            for (bv, bc) in basis_vals.iter().zip(&basis_coefs) {
                let h = ctx.dot(&v, bv);
                for (x, y) in v.iter_mut().zip(bv) {
                    *x -= h * y;
                }
                for (x, y) in c.iter_mut().zip(bc) {
                    *x -= h * y;
                }
            }
        }
        let norm = ctx.dot(&v, &v).sqrt();
        if norm.is_nan() || norm <= 1e-10 * before {
            return Err(Error::DegenerateMeasure(deg));
        }
        v.iter_mut().for_each(|x| *x /= norm);
        c.iter_mut().for_each(|x| *x /= norm);
        basis_vals.push(v);
        basis_coefs.push(c);
    }

    // With orthonormal p~: p = s p~ and s^2 = kappa s p~(lambda_0) give s = kappa p~(lambda_0).
    let kappa = normalization.factor();
    let mut polys = Vec::with_capacity(m + 1);
    let mut values = Vec::with_capacity(m + 1);
    // p~_k(lambda_0) decays fast on graphs with d >> D; no division by it occurs.
    for (v, c) in basis_vals.into_iter().zip(basis_coefs) {
        let s = kappa * v[0];
        polys.push(Poly::new(c.into_iter().map(|x| x * s).collect()));
        values.push(v.into_iter().map(|x| x * s).collect::<Vec<f64>>());
    }

    let mut sums = Vec::with_capacity(m + 1);
    let mut sum_values: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    for (i, p) in polys.iter().enumerate() {
        if i == 0 {
            sums.push(p.clone());
            sum_values.push(values[0].clone());
        } else {
            sums.push(&sums[i - 1] + p);
            let prev = &sum_values[i - 1];
            sum_values.push(prev.iter().zip(&values[i]).map(|(a, b)| a + b).collect());
        }
    }

    let norms: Vec<f64> = values.iter().map(|v| ctx.dot(v, v)).collect();
    let mut rec = Recurrence {
        a: vec![0.0; m + 1],
        b: vec![0.0; m + 1],
        c: vec![0.0; m + 1],
    };
    for i in 0..=m {
        let xp: Vec<f64> = ctx.nodes.iter().zip(&values[i]).map(|(x, p)| x * p).collect();
        rec.a[i] = ctx.dot(&xp, &values[i]) / norms[i];
        if i > 0 {
            rec.b[i - 1] = ctx.dot(&xp, &values[i - 1]) / norms[i - 1];
        }
        if i < m {
            rec.c[i + 1] = ctx.dot(&xp, &values[i + 1]) / norms[i + 1];
        }
    }

    Ok(PolySequence {
        context: ctx.clone(),
        normalization,
        polys,
        values,
        sums,
        sum_values,
        recurrence: rec,
    })
}

/// Preintersection-style recurrence residual of `x p_i` in the context norm.
pub fn recurrence_residual(seq: &PolySequence, i: usize) -> f64 {
    let ctx = &seq.context;
    let r = &seq.recurrence;
    let m = seq.top();
    let resid: Vec<f64> = (0..ctx.nodes.len())
        .map(|k| {
            let mut v = ctx.nodes[k] * seq.values[i][k] - r.a[i] * seq.values[i][k];
            if i > 0 {
                v -= r.b[i - 1] * seq.values[i - 1][k];
            }
            if i < m {
                v -= r.c[i + 1] * seq.values[i + 1][k];
            }
            v
        })
        .collect();
    ctx.dot(&resid, &resid).sqrt()
}

/// `H = q_d` for the global family; `H(lambda_i) = n delta_{0i}`.
pub fn hoffman_polynomial(seq: &PolySequence) -> Result<Poly> {
    if seq.context.kind != ContextKind::Global {
        return Err(Error::Hypothesis(
            "the Hoffman polynomial needs the global sequence".into(),
        ));
    }
    Ok(seq.sums[seq.top()].clone())
}

/// `(norm_sq / pi_0) prod_{i >= 1} (x - lambda_i)` with
/// `pi_0 = prod_{i >= 1} (lambda_0 - lambda_i)`.
///
/// With `norm_sq = ||alpha||^2 = n` this is the Hoffman polynomial; with
/// `norm_sq = ||nu||^2` it is the preHoffman polynomial `H_nu` whose matrix
/// has entries `nu_u nu_v`.
pub fn prehoffman_product(lambdas: &[f64], norm_sq: f64) -> Poly {
    let l0 = lambdas[0];
    let pi0: f64 = lambdas[1..].iter().map(|l| l0 - l).product();
    Poly::from_roots(&lambdas[1..]).scale(norm_sq / pi0)
}

/// `H^u = q^u_{d_u}`.
pub fn local_prehoffman(local: &PolySequence) -> Result<Poly> {
    if !matches!(local.context.kind, ContextKind::Local { .. }) {
        return Err(Error::Hypothesis(
            "the local preHoffman polynomial needs a local sequence".into(),
        ));
    }
    Ok(local.sums[local.top()].clone())
}

/// `max |H^u(A) e_u - H(A) e_u|`, both sides evaluated in the eigenbasis.
pub fn local_prehoffman_residual(
    local: &PolySequence,
    global: &PolySequence,
    idem: &Idempotents,
) -> f64 {
    let ContextKind::Local { vertex: u } = local.context.kind else {
        panic!("expected a local sequence");
    };
    let lhs = idem.combine_column(u, &local.context.classes, &local.sum_values[local.top()]);
    let rhs = idem.combine_column(u, &global.context.classes, &global.sum_values[global.top()]);
    (lhs - rhs).amax()
}
