#![allow(dead_code)]

use flexlie::group::{Family, GroupSpec};
use flexlie::slots::{hermitian_positive_count, Slot, SlotKind};
use flexlie::Signature;
use rand::Rng;

pub const FAMILIES: [&str; 10] = ["SL_R", "SL_C", "SL_H", "SU", "SO", "Sp_R", "Sp", "SOstar", "SO_C", "Sp_C"];

fn sig<R: Rng>(rng: &mut R, d: usize) -> Signature {
    let pos = rng.gen_range(0..=d);
    Signature { pos, neg: d - pos, null: 0 }
}

fn even_sig<R: Rng>(rng: &mut R, d: usize) -> Signature {
    let pos = 2 * rng.gen_range(0..=d / 2);
    Signature { pos, neg: d - pos, null: 0 }
}

/// Random slot data for a family, with `V` of dimension at most `cap`.
pub fn random_system<R: Rng>(family: &str, rng: &mut R, cap: usize) -> Option<(GroupSpec, Vec<Slot>)> {
    let nslots = rng.gen_range(1..=3);
    let mut slots: Vec<Slot> = Vec::new();
    let quat = matches!(family, "SL_H" | "Sp" | "SOstar");
    let want_zero = rng.gen_bool(0.5);
    if want_zero && matches!(family, "SO" | "Sp_R" | "Sp" | "SOstar" | "SO_C" | "Sp_C") {
        let even = family != "SO" && family != "SO_C";
        let d = if even { 2 * rng.gen_range(1..=2) } else { rng.gen_range(1..=3) };
        let s = match family {
            "SO" => Some(sig(rng, d)),
            "Sp" => Some(even_sig(rng, d)),
            "Sp_R" | "SOstar" => Some(Signature::split(d / 2)),
            _ => None,
        };
        slots.push(Slot::new("0", SlotKind::Zero { sig: s }, d));
    }
    for k in 0..nslots {
        let label = format!("b{k}");
        let d = rng.gen_range(1..=2);
        let choice = rng.gen_range(0..3);
        let slot = match family {
            "SL_R" | "SL_H" => {
                if choice == 0 {
                    Slot::new(label, SlotKind::LinPair, d)
                } else {
                    Slot::new(label, SlotKind::LinReal, if quat { 2 * d } else { d })
                }
            }
            "SL_C" => Slot::new(label, SlotKind::LinComplex, d),
            "SU" => {
                if choice == 0 {
                    Slot::new(label, SlotKind::UPaired, d)
                } else {
                    Slot::new(label, SlotKind::UImag { sig: sig(rng, d) }, d)
                }
            }
            "SO_C" | "Sp_C" => Slot::new(label, SlotKind::CPair, d),
            _ => match choice {
                0 => Slot::new(label, SlotKind::OImag { sig: sig(rng, d) }, d),
                1 => Slot::new(label, SlotKind::OReal, if quat { 2 * d } else { d }),
                _ => Slot::new(label, SlotKind::OCplx, d),
            },
        };
        slots.push(slot);
    }
    let n: usize = slots.iter().map(Slot::total_dim).sum();
    if n > cap {
        return None;
    }
    let fam = match family {
        "SL_R" => Family::SlR { n },
        "SL_C" => Family::SlC { n },
        "SL_H" => Family::SlH { m: n / 2 },
        "SO_C" => Family::SoC { n },
        "Sp_C" => Family::SpC { m: n / 2 },
        "Sp_R" => Family::SpR { m: n / 2 },
        "SOstar" => Family::SoStar { m: n / 2 },
        "SU" | "SO" | "Sp" => {
            let probe = match family {
                "SU" => Family::Su { p: n, q: 0 },
                "SO" => Family::So { p: n, q: 0 },
                _ => Family::Sp { p: n / 2, q: 0 },
            };
            let pos = hermitian_positive_count(&GroupSpec { family: probe }, &slots);
            match family {
                "SU" => Family::Su { p: pos, q: n - pos },
                "SO" => Family::So { p: pos, q: n - pos },
                _ => {
                    if !pos.is_multiple_of(2) {
                        return None;
                    }
                    Family::Sp { p: pos / 2, q: n / 2 - pos / 2 }
                }
            }
        }
        _ => unreachable!(),
    };
    let spec = GroupSpec::new(fam).ok()?;
    if spec.v_dim() != n {
        return None;
    }
    Some((spec, slots))
}

use flexlie::scalar::int;
use flexlie::{signature_of, Matrix, Rational};

/// Random form congruent to `diag(I_p, −I_q)`: `Pᵀ D P` with `P` unipotent upper triangular.
pub fn congruent_form<R: Rng>(p: usize, q: usize, rng: &mut R) -> Matrix<Rational> {
    let n = p + q;
    let d = Matrix::from_fn(n, n, |r, c| if r != c { int(0) } else if r < p { int(1) } else { int(-1) });
    let pm = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => int(rng.gen_range(-1..=1)),
        std::cmp::Ordering::Greater => int(0),
    });
    pm.transpose().mul(&d).mul(&pm)
}

/// Gram matrices of the induced forms on `V⊗V`, `S²V`, `Λ²V`.
pub fn induced_forms(b: &Matrix<Rational>) -> [Matrix<Rational>; 3] {
    let n = b.nrows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let tensor = Matrix::from_fn(n * n, n * n, |x, y| {
        let ((i, j), (k, l)) = (pairs[x], pairs[y]);
        b[(i, k)].clone() * b[(j, l)].clone()
    });
    // Symmetric/antisymmetric tensors e_i e_j ± e_j e_i as vectors in V⊗V.
    let vecs = |sign: i64, strict: bool| -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if strict && i == j {
                    continue;
                }
                let mut v = vec![int(0); n * n];
                v[i * n + j] = v[i * n + j].clone() + int(1);
                v[j * n + i] = v[j * n + i].clone() + int(sign);
                out.push(v);
            }
        }
        out
    };
    let gram = |vs: &[Vec<Rational>]| {
        Matrix::from_fn(vs.len(), vs.len(), |a, c| {
            let tv = tensor.mul_vec(&vs[c]);
            vs[a].iter().zip(&tv).fold(int(0), |acc, (x, y)| acc + x.clone() * y.clone())
        })
    };
    let sym = gram(&vecs(1, false));
    let alt = gram(&vecs(-1, true));
    [tensor, sym, alt]
}

/// Signature values of the three induced forms for `n`, `s = p − q`.
pub fn induced_signature_values<R: Rng>(n: usize, s: i64, rng: &mut R) -> [i64; 3] {
    let p = ((n as i64 + s) / 2) as usize;
    let b = congruent_form(p, n - p, rng);
    induced_forms(&b).map(|m| if m.nrows() == 0 { 0 } else { signature_of(&m).unwrap().value() })
}
