//! Floating-point brute-force root decomposition of explicit models.

use nalgebra::{Complex, DMatrix, SymmetricEigen, SVD};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::exact::Signature;
use crate::model::{AmbientAlgebra, ExactModel, Involution};
use crate::roots::RootSystem;
use crate::scalar::OrderedField;
use crate::{GaussianMatrix, GaussianRational};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;

pub const CLUSTER_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct NumericModel {
    pub n: usize,
    pub b: Option<CMat>,
    pub involution: NumInvolution,
    pub center: Vec<CMat>,
    pub generators: Vec<CMat>,
    pub complex_group: bool,
}

#[derive(Clone, Debug)]
pub enum NumInvolution {
    None,
    Antilinear { t: CMat, t_inv: CMat },
    Unitary { s: CMat, s_inv: CMat },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericRoot {
    pub coords: Vec<(f64, f64)>,
    pub dim: usize,
    pub signature: Option<Signature>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericRootReport {
    pub roots: Vec<NumericRoot>,
    pub zero_dim: usize,
    pub lie_dim: usize,
    pub center_dim: usize,
}

pub fn to_c64(z: &GaussianRational) -> C64 {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn to_cmat(m: &GaussianMatrix) -> CMat {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| to_c64(&m[(i, j)]))
}

impl NumericModel {
    pub fn from_exact(m: &ExactModel) -> Self {
        let b = match &m.algebra {
            AmbientAlgebra::Sl => None,
            AmbientAlgebra::Skew { b } => Some(to_cmat(b)),
        };
        let involution = match &m.involution {
            Involution::None => NumInvolution::None,
            Involution::Antilinear { t, t_inv } => NumInvolution::Antilinear { t: to_cmat(t), t_inv: to_cmat(t_inv) },
            Involution::Unitary { s, s_inv } => NumInvolution::Unitary { s: to_cmat(s), s_inv: to_cmat(s_inv) },
        };
        NumericModel {
            n: m.n,
            b,
            involution,
            center: m.center.iter().map(to_cmat).collect(),
            generators: m.generators.iter().map(to_cmat).collect(),
            complex_group: m.spec.is_complex(),
        }
    }

    pub fn sigma(&self, x: &CMat) -> CMat {
        match &self.involution {
            NumInvolution::None => x.clone(),
            NumInvolution::Antilinear { t, t_inv } => t * x.map(|z| z.conj()) * t_inv,
            NumInvolution::Unitary { s, s_inv } => -(s_inv * x.adjoint() * s),
        }
    }

    /// Residual of the defining equations of `𝔤_ℂ`.
    pub fn algebra_residual(&self, x: &CMat) -> f64 {
        match &self.b {
            None => x.trace().norm(),
            Some(b) => (x.transpose() * b + b * x).norm(),
        }
    }

    /// Orthonormal basis of `𝔤_ℂ`, as columns of row-major vectorized matrices.
    pub fn lie_basis(&self) -> Result<CMat> {
        let n = self.n;
        let nn = n * n;
        match &self.b {
            None => {
                let mut cols = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let mut v = vec![C64::new(0.0, 0.0); nn];
                            v[i * n + j] = C64::new(1.0, 0.0);
                            cols.push(v);
                        }
                    }
                }
                for i in 0..n.saturating_sub(1) {
                    let mut v = vec![C64::new(0.0, 0.0); nn];
                    v[i * n + i] = C64::new(1.0, 0.0);
                    v[(i + 1) * n + i + 1] = C64::new(-1.0, 0.0);
                    cols.push(v);
                }
                let m = DMatrix::from_fn(nn, cols.len(), |r, c| cols[c][r]);
                Ok(m.qr().q())
            }
            Some(b) => {
                let l = DMatrix::from_fn(nn, nn, |r, c| {
                    let (i, j) = (c / n, c % n);
                    // X = E_ij; (XᵀB + BX)_{r}
                    let (a, bb) = (r / n, r % n);
                    let mut v = C64::new(0.0, 0.0);
                    if a == j {
                        v += b[(i, bb)];
                    }
                    if bb == j {
                        v += b[(a, i)];
                    }
                    v
                });
                nullspace(&l, 1e-9)
            }
        }
    }
}

pub fn unvec(v: &[C64], n: usize) -> CMat {
    DMatrix::from_fn(n, n, |i, j| v[i * n + j])
}

pub fn vec_of(m: &CMat) -> Vec<C64> {
    let n = m.nrows();
    (0..n * n).map(|k| m[(k / n, k % n)]).collect()
}

fn padded(a: &CMat) -> CMat {
    if a.nrows() >= a.ncols() {
        return a.clone();
    }
    let mut p = DMatrix::zeros(a.ncols(), a.ncols());
    p.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    p
}

/// Singular values and `Vᵀ` of `a`; falls back to the SVD of `a†` when the
/// iteration stalls.
fn svd(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    let p = padded(a);
    if let Some(s) = SVD::try_new(p.clone(), false, true, f64::EPSILON, 10_000) {
        return Ok((s.singular_values.iter().cloned().collect(), s.v_t.expect("requested V")));
    }
    let s = SVD::try_new(p.adjoint(), true, false, f64::EPSILON, 10_000)
        .ok_or_else(|| FlexError::Oracle("ambiguous: SVD did not converge".into()))?;
    Ok((s.singular_values.iter().cloned().collect(), s.u.expect("requested U").adjoint()))
}

/// Orthonormal basis (columns) of the kernel of `a`.
pub fn nullspace(a: &CMat, tol: f64) -> Result<CMat> {
    let cols = a.ncols();
    let (sv, vt) = svd(a)?;
    let scale = sv.iter().cloned().fold(1.0f64, f64::max);
    let null: Vec<usize> = (0..cols).filter(|&k| k >= sv.len() || sv[k] < tol * scale).collect();
    Ok(DMatrix::from_fn(cols, null.len(), |r, c| vt[(null[c], r)].conj()))
}

/// Smallest `m` right singular vectors of `a`, with the gap `(σ_m, σ_{m+1})`.
fn smallest_singular(a: &CMat, m: usize) -> Result<(CMat, f64, f64)> {
    let cols = a.ncols();
    let (sv, vt) = svd(a)?;
    let mut idx: Vec<usize> = (0..sv.len()).collect();
    idx.sort_by(|&x, &y| sv[x].partial_cmp(&sv[y]).unwrap());
    let take: Vec<usize> = idx[..m].to_vec();
    let worst_in = take.iter().map(|&k| sv[k]).fold(0.0, f64::max);
    let next_out = idx.get(m).map_or(f64::INFINITY, |&k| sv[k]);
    Ok((DMatrix::from_fn(cols, m, |r, c| vt[(take[c], r)].conj()), worst_in, next_out))
}

/// Structural checks of a model: `σ² = id` on `𝔤`, `𝔠 ⊂ 𝔤`, `[𝔠,𝔠] = 0`.
pub fn check_model(m: &NumericModel, basis: &CMat, tol: f64) -> Result<()> {
    let n = m.n;
    for k in 0..basis.ncols() {
        let x = unvec(basis.column(k).as_slice(), n);
        let s = m.sigma(&x);
        if m.algebra_residual(&s) > tol {
            return Err(FlexError::Oracle("σ does not preserve 𝔤_ℂ".into()));
        }
        if (m.sigma(&s) - &x).norm() > tol {
            return Err(FlexError::Oracle("σ² ≠ id".into()));
        }
    }
    for (i, c) in m.center.iter().enumerate() {
        if m.algebra_residual(c) > tol {
            return Err(FlexError::Oracle(format!("center element {i} outside 𝔤_ℂ")));
        }
        if (m.sigma(c) - c).norm() > tol {
            return Err(FlexError::Oracle(format!("center element {i} not fixed by σ")));
        }
        for c2 in &m.center[..i] {
            if (c * c2 - c2 * c).norm() > tol {
                return Err(FlexError::Oracle("center is not abelian".into()));
            }
        }
    }
    Ok(())
}

/// Dimension of `span(generators) ∩ 𝔤`, computed independently of the
/// symbolic basis (real span for real forms, complex span for complex groups).
pub fn center_dimension(m: &NumericModel) -> Result<usize> {
    let p = m.generators.len();
    if p == 0 {
        return Ok(0);
    }
    let n = m.n;
    let rows_of = |g: &CMat| -> Vec<C64> {
        let mut v = Vec::new();
        match &m.b {
            None => v.push(g.trace()),
            Some(b) => v.extend(vec_of(&(g.transpose() * b + b * g))),
        }
        if !m.complex_group {
            v.extend(vec_of(&(m.sigma(g) - g)));
        }
        v
    };
    let cols: Vec<Vec<C64>> = m.generators.iter().map(rows_of).collect();
    let r = cols[0].len();
    let _ = n;
    if m.complex_group {
        let a = DMatrix::from_fn(r, p, |i, j| cols[j][i]);
        Ok(nullspace(&a, 1e-9)?.ncols())
    } else {
        let a = DMatrix::from_fn(2 * r, p, |i, j| {
            let z = cols[j][i % r];
            C64::new(if i < r { z.re } else { z.im }, 0.0)
        });
        Ok(nullspace(&a, 1e-9)?.ncols())
    }
}

/// Simultaneous eigen-decomposition of `ad(𝔠)` on `𝔤_ℂ`.
pub fn brute_force_roots<R: Rng>(m: &NumericModel, rng: &mut R, tol: f64) -> Result<NumericRootReport> {
    let n = m.n;
    let q = m.lie_basis()?;
    let dim = q.ncols();
    check_model(m, &q, 1e-9)?;
    let center_dim = center_dimension(m)?;
    let ads: Vec<CMat> = m
        .center
        .iter()
        .map(|c| {
            let images = DMatrix::from_fn(n * n, dim, |r, k| {
                let x = unvec(q.column(k).as_slice(), n);
                let y = c * &x - &x * c;
                y[(r / n, r % n)]
            });
            q.adjoint() * images
        })
        .collect();
    for attempt in 0..16 {
        let weights: Vec<f64> = ads.iter().map(|_| rng.gen_range(0.5..1.5)).collect();
        let mut a = DMatrix::zeros(dim, dim);
        for (w, ad) in weights.iter().zip(&ads) {
            a += ad * C64::new(*w, 0.0);
        }
        match decompose(m, &q, &a, &ads, tol) {
            Ok((roots, zero_dim)) => return Ok(NumericRootReport { roots, zero_dim, lie_dim: dim, center_dim }),
            Err(FlexError::Oracle(e)) if e.starts_with("ambiguous") && attempt < 15 => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FlexError::Oracle("clustering failed after resampling".into()))
}

fn decompose(m: &NumericModel, q: &CMat, a: &CMat, ads: &[CMat], tol: f64) -> Result<(Vec<NumericRoot>, usize)> {
    let dim = a.nrows();
    if dim == 0 {
        return Ok((vec![], 0));
    }
    // Shift off zero so deflation uses the relative threshold.
    let shift = C64::new(1.0 + a.norm(), 0.5);
    let shifted = a + DMatrix::identity(dim, dim) * shift;
    let schur = nalgebra::linalg::Schur::try_new(shifted, 1e-13, 5_000)
        .ok_or_else(|| FlexError::Oracle("ambiguous: Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    let eig: Vec<C64> = (0..dim).map(|i| t[(i, i)] - shift).collect();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let ctol = tol * scale;
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for z in eig {
        match clusters.iter_mut().find(|(c, _)| (*c - z).norm() < ctol) {
            Some(cl) => cl.1 += 1,
            None => clusters.push((z, 1)),
        }
    }
    for i in 0..clusters.len() {
        for j in 0..i {
            if (clusters[i].0 - clusters[j].0).norm() < 1e-4 * scale {
                return Err(FlexError::Oracle("ambiguous clustering".into()));
            }
        }
    }
    let n = m.n;
    let mut roots = Vec::new();
    let mut zero_dim = 0;
    for (mu, mult) in clusters {
        let shifted = a - DMatrix::identity(dim, dim) * mu;
        let (e, inside, outside) = smallest_singular(&shifted, mult)?;
        if inside > 1e-7 * scale || outside < 1e-5 * scale {
            return Err(FlexError::Oracle(format!("ambiguous: eigenspace at {mu} is not resolved ({inside:e}, {outside:e})")));
        }
        let coords: Vec<C64> = ads
            .iter()
            .map(|ad| {
                let r = e.adjoint() * ad * &e;
                r.trace() / C64::new(mult as f64, 0.0)
            })
            .collect();
        for (ad, l) in ads.iter().zip(&coords) {
            let r = ad * &e - &e * *l;
            if r.norm() > 1e-7 * scale {
                return Err(FlexError::Oracle("root space is not a common eigenspace".into()));
            }
        }
        if mu.norm() < ctol && coords.iter().all(|z| z.norm() < 1e-7) {
            zero_dim = mult;
            continue;
        }
        let pure_imag = !m.complex_group && coords.iter().all(|z| z.re.abs() < 1e-7 * scale);
        let signature = if pure_imag {
            let mats: Vec<CMat> = (0..mult)
                .map(|k| {
                    let v = q * e.column(k);
                    unvec(v.as_slice(), n)
                })
                .collect();
            Some(gram_signature(m, &mats)?)
        } else {
            None
        };
        roots.push(NumericRoot { coords: coords.iter().map(|z| (z.re, z.im)).collect(), dim: mult, signature });
    }
    Ok((roots, zero_dim))
}

/// Inertia of the Hermitian matrix `Tr(σ(X_a) X_b)`.
pub fn gram_signature(m: &NumericModel, mats: &[CMat]) -> Result<Signature> {
    let k = mats.len();
    let sig: Vec<CMat> = mats.iter().map(|x| m.sigma(x)).collect();
    let g = DMatrix::from_fn(k, k, |a, b| (&sig[a] * &mats[b]).trace());
    let herm_err = (&g - g.adjoint()).norm();
    let scale = g.norm().max(1e-300);
    if herm_err > 1e-8 * scale {
        return Err(FlexError::Oracle(format!("trace form not Hermitian (error {herm_err:e})")));
    }
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    let ev = SymmetricEigen::new(h).eigenvalues;
    let emax = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut s = Signature::default();
    for x in ev.iter() {
        if x.abs() <= 1e-8 * emax.max(1e-300) {
            s.null += 1;
        } else if *x > 0.0 {
            s.pos += 1;
        } else {
            s.neg += 1;
        }
    }
    if s.null != 0 {
        return Err(FlexError::Oracle(format!("trace form degenerate on a root space: {s}")));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Comparison {
    pub matched: usize,
    pub mismatches: Vec<String>,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Matches a numeric report against the symbolic root system.
pub fn compare(sys: &RootSystem, rep: &NumericRootReport, tol: f64) -> Comparison {
    let mut out = Comparison::default();
    if rep.lie_dim != sys.spec.complex_lie_dim() {
        out.mismatches.push(format!("dim 𝔤_ℂ: numeric {} vs closed form {}", rep.lie_dim, sys.spec.complex_lie_dim()));
    }
    if rep.zero_dim != sys.zero_dim {
        out.mismatches.push(format!("zero weight space: numeric {} vs symbolic {}", rep.zero_dim, sys.zero_dim));
    }
    if rep.center_dim != sys.dim_c() {
        out.mismatches.push(format!("dim 𝔠: numeric {} vs symbolic {}", rep.center_dim, sys.dim_c()));
    }
    let mut used = vec![false; rep.roots.len()];
    for r in &sys.adjoint {
        let target: Vec<C64> = r.coords.iter().map(to_c64).collect();
        let hit = rep.roots.iter().enumerate().position(|(k, nr)| {
            !used[k]
                && nr.coords.len() == target.len()
                && nr.coords.iter().zip(&target).all(|(a, b)| (C64::new(a.0, a.1) - b).norm() < tol)
        });
        match hit {
            None => out.mismatches.push(format!("symbolic root {} not found numerically", r.id)),
            Some(k) => {
                used[k] = true;
                let nr = &rep.roots[k];
                if nr.dim != r.dim {
                    out.mismatches.push(format!("root {}: dim numeric {} vs symbolic {}", r.id, nr.dim, r.dim));
                } else if nr.signature != r.signature {
                    out.mismatches.push(format!(
                        "root {} ({:?}): signature numeric {:?} vs symbolic {:?}",
                        r.id, r.rule, nr.signature, r.signature
                    ));
                } else {
                    out.matched += 1;
                }
            }
        }
    }
    for (k, u) in used.iter().enumerate() {
        if !u {
            out.mismatches.push(format!("numeric root {:?} has no symbolic counterpart", rep.roots[k].coords));
        }
    }
    out
}

/// Builds the explicit model for `sys` and compares it with the brute-force decomposition.
pub fn verify_system(sys: &RootSystem, seed: u64, cap: usize) -> Result<Comparison> {
    verify_system_with(sys, seed, cap, CLUSTER_TOL)
}

/// [`verify_system`] with an explicit clustering tolerance.
pub fn verify_system_with(sys: &RootSystem, seed: u64, cap: usize, tol: f64) -> Result<Comparison> {
    use rand::SeedableRng;
    let model = crate::model::synthesize_model(&sys.spec, &sys.slots, &sys.basis, cap)?;
    let num = NumericModel::from_exact(&model);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let rep = brute_force_roots(&num, &mut rng, tol)?;
    Ok(compare(sys, &rep, 1e-7))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRun {
    pub family: String,
    pub checked: usize,
    pub matched_roots: usize,
    pub failures: Vec<String>,
}

/// Checks `count` configurations of `kind` with `dim V ≤ max_dim`, sampled with `seed`.
pub fn run_oracle(kind: crate::sweep::FamilyKind, max_dim: usize, count: usize, seed: u64, tol: f64) -> Result<OracleRun> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let pool: Vec<_> = (1..=max_dim.min(ORACLE_DIM_CAP)).flat_map(|n| crate::sweep::configurations(kind, n)).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut run = OracleRun { family: kind.name().into(), checked: 0, matched_roots: 0, failures: Vec::new() };
    for k in 0..count {
        let Some((spec, slots)) = pool.choose(&mut rng) else { break };
        let sys = RootSystem::from_slots(spec, slots.clone())?;
        run.checked += 1;
        match verify_system_with(&sys, seed.wrapping_add(k as u64), ORACLE_DIM_CAP, tol) {
            Ok(c) => {
                run.matched_roots += c.matched;
                if !c.agrees() {
                    run.failures.push(format!("{spec} [{}]: {}", crate::sweep::describe_slots(slots), c.mismatches.join("; ")));
                }
            }
            Err(e) => run.failures.push(format!("{spec} [{}]: {e}", crate::sweep::describe_slots(slots))),
        }
    }
    Ok(run)
}

/// Largest `dim V` sampled by [`run_oracle`].
pub const ORACLE_DIM_CAP: usize = 12;
