//! Structural checks of the embeddings `SO*(4n) → SU(2n,2n)` and
//! `SU(1,1) ≅ SL(2,ℝ) → Sp(4,ℝ)` in exact rational arithmetic.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::matrix::rank_of;
use crate::scalar::{int, rat};
use crate::{signature_of, Gaussian, GaussianMatrix, GaussianRational, Matrix, Quaternion, Rational, RationalQuaternion};

pub type QuaternionMatrix = Matrix<RationalQuaternion>;

fn g(re: i64, im: i64) -> GaussianRational {
    Gaussian::new(int(re), int(im))
}

/// `X = M + jM'` as the complex matrix `[[M, −conj(M')], [M', conj(M)]]`.
pub fn rho(x: &QuaternionMatrix) -> GaussianMatrix {
    let n = x.nrows();
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let q = &x[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) => q.a.clone(),
            (true, false) => -q.b.conjugate(),
            (false, true) => q.b.clone(),
            (false, false) => q.a.conjugate(),
        }
    })
}

pub fn quaternion_adjoint(x: &QuaternionMatrix) -> QuaternionMatrix {
    Matrix::from_fn(x.ncols(), x.nrows(), |r, c| x[(c, r)].conjugate())
}

/// `diag(I_k, −I_k)`.
pub fn split_form(k: usize) -> GaussianMatrix {
    Matrix::from_fn(2 * k, 2 * k, |r, c| if r != c { g(0, 0) } else if r < k { g(1, 0) } else { g(-1, 0) })
}

/// `J' = diag(i,…,i,−i,…,−i)`.
pub fn j_prime(k: usize) -> GaussianMatrix {
    split_form(k).scale(&g(0, 1))
}

/// `X† s + s X`.
pub fn skew_defect(x: &GaussianMatrix, s: &GaussianMatrix) -> GaussianMatrix {
    x.adjoint().mul(s).add(&s.mul(x))
}

/// Basis of `so*(4n) = {A : A* (iI) + (iI) A = 0}` from `B ↦ B + i B* i`.
pub fn so_star_basis(n: usize) -> Vec<QuaternionMatrix> {
    let m = 2 * n;
    let units = [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let ii = Matrix::scalar(m, Quaternion::i());
    let mut out = Vec::new();
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    for r in 0..m {
        for c in 0..m {
            for u in &units {
                let mut b = Matrix::zeros(m, m);
                b[(r, c)] = u.clone();
                let a = b.add(&ii.mul(&quaternion_adjoint(&b)).mul(&ii));
                let v = real_coords(&a);
                seen.push(v);
                if rank_of(&seen, 4 * m * m) == out.len() + 1 {
                    out.push(a);
                } else {
                    seen.pop();
                }
            }
        }
    }
    out
}

fn real_coords(x: &QuaternionMatrix) -> Vec<Rational> {
    x.entries()
        .iter()
        .flat_map(|q| [q.a.re.clone(), q.a.im.clone(), q.b.re.clone(), q.b.im.clone()])
        .collect()
}

fn in_so_star(x: &QuaternionMatrix) -> bool {
    let ii = Matrix::scalar(x.nrows(), Quaternion::i());
    quaternion_adjoint(x).mul(&ii).add(&ii.mul(x)).is_zero()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AppendixCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AppendixReport {
    /// Real coordinate order used for `V_ℝ = ℝ² ⊕ iℝ²`.
    pub ordering: String,
    pub checks: Vec<AppendixCheck>,
}

impl AppendixReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(AppendixCheck { name: name.into(), passed, detail: detail.into() });
    }
}

fn q(a: GaussianRational, b: GaussianRational) -> RationalQuaternion {
    Quaternion::new(a, b)
}

/// Element of `𝔮 ⊂ so*(4)`: `[[iα, jx], [−jx, iα]]`.
pub fn q_element(alpha: i64, x: GaussianRational) -> QuaternionMatrix {
    let z = GaussianRational::zero();
    Matrix::from_rows(vec![
        vec![q(g(0, alpha), z.clone()), q(z.clone(), x.clone())],
        vec![q(z.clone(), -x), q(g(0, alpha), z)],
    ])
}

/// Rows/columns `idx` of `m`.
fn sub(m: &GaussianMatrix, idx: &[usize]) -> GaussianMatrix {
    Matrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])].clone())
}

fn flatten(m: &GaussianMatrix) -> Vec<Rational> {
    m.entries().iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

fn check_rho(rep: &mut AppendixReport) {
    // Homomorphism and adjoint compatibility on a fixed sample.
    let sample = |s: i64| -> QuaternionMatrix {
        Matrix::from_fn(2, 2, |r, c| {
            let t = s + 3 * r as i64 + 5 * c as i64;
            Quaternion::from_coords(int(t % 4 - 1), int(t % 3), int(1 - t % 5), int(t % 2))
        })
    };
    let (x, y) = (sample(1), sample(7));
    let hom = rho(&x.mul(&y)) == rho(&x).mul(&rho(&y));
    let adj = rho(&quaternion_adjoint(&x)) == rho(&x).adjoint();
    rep.push("rho-homomorphism", hom && adj, "rho(XY) = rho(X)rho(Y) and rho(X*) = rho(X)^† on a 2x2 sample");
    let zero = Matrix::zeros(2, 2);
    rep.push("rho-zero", rho(&zero).is_zero(), "rho(0) = 0");

    for n in 1..=3 {
        let basis = so_star_basis(n);
        let expected = 2 * n * (4 * n - 1);
        let s = split_form(2 * n);
        let mut ok = basis.len() == expected;
        let mut images = Vec::new();
        for a in &basis {
            ok &= in_so_star(a);
            let r = rho(a);
            ok &= skew_defect(&r, &s).is_zero() && r.trace().is_zero();
            images.push(flatten(&r));
        }
        ok &= rank_of(&images, images[0].len()) == expected;
        rep.push(
            &format!("rho-image-su({0},{0}) n={n}", 2 * n),
            ok,
            format!("{} basis elements of so*({}) map injectively to s-skew, traceless matrices", basis.len(), 4 * n),
        );
        let j = Matrix::scalar(2 * n, Quaternion::i());
        rep.push(&format!("rho(J)=J' n={n}"), rho(&j) == j_prime(2 * n), "J = iI maps to diag(i,...,i,-i,...,-i)");
    }
}

fn check_diagonal(rep: &mut AppendixReport) {
    let s2 = split_form(1);
    let flip = split_form(1);
    let mut ok = true;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (alpha, x) in [(1, g(0, 0)), (0, g(1, 0)), (0, g(0, 1)), (2, g(-3, 5))] {
        let a = q_element(alpha, x.clone());
        ok &= in_so_star(&a);
        let r = rho(&a);
        let xb = x.conjugate();
        let z = g(0, 0);
        let expected = Matrix::from_rows(vec![
            vec![g(0, alpha), z.clone(), z.clone(), -xb.clone()],
            vec![z.clone(), g(0, alpha), xb.clone(), z.clone()],
            vec![z.clone(), x.clone(), g(0, -alpha), z.clone()],
            vec![-x.clone(), z.clone(), z.clone(), g(0, -alpha)],
        ]);
        ok &= r == expected;
        let (b1, b2) = (sub(&r, &[0, 3]), sub(&r, &[1, 2]));
        // Nothing outside the two blocks.
        let mut rest = r.clone();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)] {
            rest[(i, j)] = g(0, 0);
        }
        ok &= rest.is_zero();
        for b in [&b1, &b2] {
            ok &= skew_defect(b, &s2).is_zero() && b.trace().is_zero();
        }
        // Second component is the first conjugated by diag(1, −1).
        ok &= flip.mul(&b1).mul(&flip) == b2;
        if alpha != 2 {
            first.push(flatten(&b1));
            second.push(flatten(&b2));
        }
    }
    ok &= rank_of(&first, 8) == 3 && rank_of(&second, 8) == 3;
    rep.push(
        "q-diagonal",
        ok,
        "rho(q) lies in su(1,1)+su(1,1) on coordinates {1,4} and {2,3}; both projections are isomorphisms, related by conjugation with diag(1,-1)",
    );
}

/// `S = [[0, i], [−i, 0]]`.
pub fn s_matrix() -> GaussianMatrix {
    Matrix::from_rows(vec![vec![g(0, 0), g(0, 1)], vec![g(0, -1), g(0, 0)]])
}

/// Real basis of `V_ℝ = ℂ²` in the order `e₁, ie₁, e₂, ie₂`.
fn real_basis() -> Vec<Vec<GaussianRational>> {
    (0..4).map(|k| (0..2).map(|c| if c == k / 2 { g((k % 2 == 0) as i64, (k % 2) as i64) } else { g(0, 0) }).collect()).collect()
}

fn real_coords_of(v: &[GaussianRational]) -> Vec<Rational> {
    v.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// Matrix of a complex-linear map on `V_ℝ`.
fn realify(a: &GaussianMatrix) -> Matrix<Rational> {
    let cols: Vec<Vec<Rational>> = real_basis().iter().map(|u| real_coords_of(&a.mul_vec(u))).collect();
    Matrix::from_fn(4, 4, |r, c| cols[c][r].clone())
}

fn sesq(s: &GaussianMatrix, v: &[GaussianRational], w: &[GaussianRational]) -> GaussianRational {
    let sw = s.mul_vec(w);
    v.iter().zip(&sw).fold(GaussianRational::zero(), |acc, (x, y)| acc + x.conjugate() * y.clone())
}

fn check_symplectic(rep: &mut AppendixReport) {
    let s = s_matrix();
    let herm = s.is_hermitian() && signature_of(&s).is_ok_and(|sig| sig.pos == 1 && sig.neg == 1);
    rep.push("S-vanishing-signature", herm, "S is Hermitian with signature (1,1)");

    let real = |m: [[i64; 2]; 2], d: i64| -> GaussianMatrix {
        Matrix::from_fn(2, 2, |r, c| Gaussian::real(rat(m[r][c], d)))
    };
    let generators = [
        ("upper", real([[1, 1], [0, 1]], 1)),
        ("lower", real([[1, 0], [1, 1]], 1)),
        ("diagonal", Matrix::from_fn(2, 2, |r, c| Gaussian::real(if r != c { int(0) } else if r == 0 { int(2) } else { rat(1, 2) }))),
        ("J", real([[0, 1], [-1, 0]], 1)),
    ];
    let ok = generators.iter().all(|(_, a)| a.adjoint().mul(&s).mul(a) == s);
    rep.push("SL2R-preserves-s", ok, "s(Av, Av') = s(v, v') for A in {upper, lower, diagonal, J}");

    let basis = real_basis();
    let omega = Matrix::from_fn(4, 4, |r, c| sesq(&s, &basis[r], &basis[c]).im);
    let nondeg = omega.transpose() == omega.neg() && omega.rank() == 4;
    rep.push("Omega-symplectic", nondeg, "Omega = Im s is skew and nondegenerate on R^4");

    let mut diag = true;
    let mut preserves = true;
    for (_, a) in &generators {
        let ra = realify(a);
        preserves &= ra.transpose().mul(&omega).mul(&ra) == omega;
        // ℝ² and iℝ² are both invariant, with the same action of A.
        let re_part = Matrix::from_fn(2, 2, |r, c| ra[(2 * r, 2 * c)].clone());
        let im_part = Matrix::from_fn(2, 2, |r, c| ra[(2 * r + 1, 2 * c + 1)].clone());
        let cross = (0..2).all(|r| (0..2).all(|c| ra[(2 * r, 2 * c + 1)].is_zero() && ra[(2 * r + 1, 2 * c)].is_zero()));
        let a_re = a.map(|z| z.re.clone());
        diag &= cross && re_part == a_re && im_part == a_re;
    }
    rep.push("SL2R-in-Sp4R", preserves, "each generator acts on (R^4, Omega) symplectically");
    rep.push("SL2R-diagonal", diag, "each generator acts as (A, A) on R^2 + iR^2");

    let j = realify(&generators[3].1);
    let i2 = Matrix::<Rational>::identity(2);
    let mut expected = Matrix::zeros(4, 4);
    expected.set_block(0, 2, &i2);
    expected.set_block(2, 0, &i2.neg());
    let jp = j;
    let square = jp.mul(&jp) == Matrix::scalar(4, int(-1));
    let compatible = jp.transpose().mul(&omega).mul(&jp) == omega;
    let metric = omega.mul(&jp);
    let tamed = metric.transpose() == metric && signature_of(&metric).is_ok_and(|sig| sig.pos == 0 || sig.neg == 0);
    rep.push("J'-blocks", jp == expected, "rho(J) = [[0, I], [-I, 0]] in 2x2 blocks");
    rep.push("J'-complex-structure", square && compatible && tamed, "J'^2 = -1, Omega(J'.,J'.) = Omega, Omega(.,J'.) definite");
}

/// Runs every structural check.
pub fn verify_appendix_embeddings() -> AppendixReport {
    let mut rep = AppendixReport { ordering: "e1, ie1, e2, ie2".into(), checks: Vec::new() };
    check_rho(&mut rep);
    check_diagonal(&mut rep);
    check_symplectic(&mut rep);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: Vec<Vec<RationalQuaternion>>) -> QuaternionMatrix {
        Matrix::from_rows(rows)
    }

    #[test]
    fn all_checks_pass() {
        let r = verify_appendix_embeddings();
        assert!(r.all_passed(), "{:?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn i_times_identity_maps_to_j_prime() {
        let i = Quaternion::i();
        let z = RationalQuaternion::zero();
        let x = qm(vec![vec![i.clone(), z.clone()], vec![z, i]]);
        assert!(in_so_star(&x));
        assert_eq!(rho(&x), Matrix::diag(&[g(0, 1), g(0, 1), g(0, -1), g(0, -1)]));
    }

    #[test]
    fn j_times_identity_is_antidiagonal_but_not_skew() {
        let j = Quaternion::j();
        let z = RationalQuaternion::zero();
        let x = qm(vec![vec![j.clone(), z.clone()], vec![z, j]]);
        let r = rho(&x);
        let mut expected = Matrix::zeros(4, 4);
        expected.set_block(0, 2, &Matrix::scalar(2, g(-1, 0)));
        expected.set_block(2, 0, &Matrix::scalar(2, g(1, 0)));
        assert_eq!(r, expected);
        // jI is not in so*(4), and its image is not skew for diag(1,1,-1,-1).
        assert!(!in_so_star(&x));
        assert!(!skew_defect(&r, &split_form(2)).is_zero());
    }

    #[test]
    fn zero_maps_to_zero() {
        assert!(rho(&Matrix::zeros(3, 3)).is_zero());
    }

    #[test]
    fn skew_check_detects_violations() {
        let x = Matrix::scalar(2, Quaternion::one());
        assert!(!in_so_star(&x));
        assert!(!skew_defect(&rho(&x), &split_form(2)).is_zero());
    }

    #[test]
    fn so_star_dimensions() {
        assert_eq!(so_star_basis(1).len(), 6);
        assert_eq!(so_star_basis(2).len(), 28);
    }
}
