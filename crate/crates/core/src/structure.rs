//! Centrosymmetric and skew-centrosymmetric structure.
//!
//! All verdicts are tolerance based. A relative tolerance `rel_tol` is turned
//! into the absolute threshold `rel_tol * max(1, max|a|)`, which is what
//! [`StructureReport::tolerance_used`] records.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::product::{exchange_matrix, j_sandwich, shao_product};
use crate::tensor::{flip_vector, poly_eval, row_sums, DenseTensor, Vector};
use crate::{Error, Result};

/// Default relative tolerance for structure verdicts.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// One of the two structures a tensor can have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    Centro,
    Skew,
}

impl Parity {
    /// `+1` for centrosymmetric, `-1` for skew.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Centro => 1.0,
            Parity::Skew => -1.0,
        }
    }
}

/// What [`random_structured`] should generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Kind {
    Centro,
    Skew,
    General,
}

impl From<Parity> for Kind {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Centro => Kind::Centro,
            Parity::Skew => Kind::Skew,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    #[cfg_attr(feature = "serde", serde(rename = "centrosymmetric"))]
    Centrosymmetric,
    #[cfg_attr(feature = "serde", serde(rename = "skew-centrosymmetric"))]
    SkewCentrosymmetric,
    /// Within tolerance of the zero tensor, the only tensor with both structures.
    #[cfg_attr(feature = "serde", serde(rename = "both"))]
    Both,
    #[cfg_attr(feature = "serde", serde(rename = "neither"))]
    Neither,
}

impl Verdict {
    pub fn is_centro(self) -> bool {
        matches!(self, Verdict::Centrosymmetric | Verdict::Both)
    }

    pub fn is_skew(self) -> bool {
        matches!(self, Verdict::SkewCentrosymmetric | Verdict::Both)
    }

    /// Whether this verdict is consistent with having structure `p`.
    pub fn satisfies(self, p: Parity) -> bool {
        match p {
            Parity::Centro => self.is_centro(),
            Parity::Skew => self.is_skew(),
        }
    }

    /// The single structure named by the verdict; `Both` counts as centro.
    pub fn parity(self) -> Option<Parity> {
        match self {
            Verdict::Centrosymmetric | Verdict::Both => Some(Parity::Centro),
            Verdict::SkewCentrosymmetric => Some(Parity::Skew),
            Verdict::Neither => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StructureReport {
    pub verdict: Verdict,
    /// Violation of the structure named by the verdict. For `Both` the larger
    /// of the two violations, for `Neither` the smaller (the nearer structure).
    pub max_violation: f64,
    /// 1-based multi-index where that violation is attained.
    pub worst_index: Vec<usize>,
    pub tolerance_used: f64,
}

/// Compares `lhs` with `image` (`lhs == image` is centro, `lhs == -image` is
/// skew) and builds the report. `reference` supplies index labels.
fn compare(reference: &DenseTensor, lhs: &[f64], image: &[f64], tol: f64) -> StructureReport {
    let mut centro = (0.0, 0);
    let mut skew = (0.0, 0);
    for (o, (&a, &b)) in lhs.iter().zip(image).enumerate() {
        let dc = (a - b).abs();
        let ds = (a + b).abs();
        if dc > centro.0 {
            centro = (dc, o);
        }
        if ds > skew.0 {
            skew = (ds, o);
        }
    }
    let centro_ok = centro.0 <= tol;
    let skew_ok = skew.0 <= tol;
    let (verdict, (violation, offset)) = match (centro_ok, skew_ok) {
        (true, true) => (Verdict::Both, if centro.0 >= skew.0 { centro } else { skew }),
        (true, false) => (Verdict::Centrosymmetric, centro),
        (false, true) => (Verdict::SkewCentrosymmetric, skew),
        (false, false) => (Verdict::Neither, if centro.0 <= skew.0 { centro } else { skew }),
    };
    StructureReport {
        verdict,
        max_violation: violation,
        worst_index: reference.unravel(offset).iter().map(|i| i + 1).collect(),
        tolerance_used: tol,
    }
}

/// Classifies `a` by comparing it with its fully reversed tensor.
pub fn check_structure(a: &DenseTensor, rel_tol: f64) -> StructureReport {
    let tol = rel_tol * a.scale();
    let reversed = a.reversed();
    compare(a, a.entries(), reversed.entries(), tol)
}

/// Classifies `a` through `JAJ`: centro iff `JAJ = A`, skew iff `JAJ = -A`.
pub fn check_via_j(a: &DenseTensor, rel_tol: f64) -> Result<StructureReport> {
    let tol = rel_tol * a.scale();
    let sandwich = j_sandwich(a)?;
    Ok(compare(a, a.entries(), sandwich.entries(), tol))
}

/// Classifies `a` through commutation with `J`: centro iff `AJ = JA`, skew
/// iff `AJ = -JA`. An order-1 tensor has no trailing slots, so `AJ = A`.
pub fn check_commutation(a: &DenseTensor, rel_tol: f64) -> Result<StructureReport> {
    let tol = rel_tol * a.scale();
    let j = exchange_matrix(a.dim())?;
    let ja = shao_product(&j, a)?;
    let aj = if a.order() == 1 { a.clone() } else { shao_product(a, &j)? };
    Ok(compare(&aj, aj.entries(), ja.entries(), tol))
}

/// Split of a tensor into a centrosymmetric and a skew-centrosymmetric part.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Decomposition {
    pub centro: DenseTensor,
    pub skew: DenseTensor,
}

impl Decomposition {
    pub fn reconstruct(&self) -> DenseTensor {
        self.centro.add(&self.skew).expect("parts share a shape")
    }
}

/// `A = (A + A^c)/2 + (A - A^c)/2`. The parts are exactly structured: each
/// pair of mirrored entries is computed from the same two operands.
pub fn decompose(a: &DenseTensor) -> Decomposition {
    let entries = a.entries();
    let len = entries.len();
    let mut centro = Vec::with_capacity(len);
    let mut skew = Vec::with_capacity(len);
    for (o, &v) in entries.iter().enumerate() {
        let mirror = entries[len - 1 - o];
        centro.push((v + mirror) * 0.5);
        skew.push((v - mirror) * 0.5);
    }
    Decomposition {
        centro: DenseTensor::from_parts_unchecked(a.order(), a.dim(), centro),
        skew: DenseTensor::from_parts_unchecked(a.order(), a.dim(), skew),
    }
}

/// Seeded random tensor with free entries uniform in `[-1, 1]`.
///
/// Structured kinds draw one value per mirrored pair of entries. For skew
/// tensors the self-mirrored central entry (odd `dim` only) is zero.
pub fn random_structured(order: usize, dim: usize, kind: Kind, seed: u64) -> Result<DenseTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_structured_with(&mut rng, order, dim, kind)
}

pub fn random_structured_with<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    dim: usize,
    kind: Kind,
) -> Result<DenseTensor> {
    let mut t = DenseTensor::zeros(order, dim)?;
    let len = t.len();
    match kind {
        Kind::General => {
            for o in 0..len {
                t[o] = rng.random_range(-1.0..=1.0);
            }
        }
        Kind::Centro | Kind::Skew => {
            let sign = if kind == Kind::Centro { 1.0 } else { -1.0 };
            for o in 0..len / 2 {
                let v: f64 = rng.random_range(-1.0..=1.0);
                t[o] = v;
                t[len - 1 - o] = sign * v;
            }
            if len % 2 == 1 && kind == Kind::Centro {
                t[len / 2] = rng.random_range(-1.0..=1.0);
            }
        }
    }
    Ok(t)
}

/// Structure of `A ∘ B` from the structures of `A` and `B`: like signs give
/// centro, unlike give skew.
pub fn hadamard_parity(left: Parity, right: Parity) -> Parity {
    if left == right {
        Parity::Centro
    } else {
        Parity::Skew
    }
}

/// Outcome of [`verify_row_sum_symmetry`].
#[derive(Debug, Clone, PartialEq)]
pub struct RowSumCheck {
    pub holds: bool,
    /// 1-based row index of the first failing pair, if any.
    pub witness: Option<usize>,
    pub row_sums: Vector,
    pub tolerance_used: f64,
}

/// Checks `r_i = r_{n-i+1}` (centro) or `r_i = -r_{n-i+1}` (skew) under the
/// assumed structure. For skew tensors of odd dimension the central row sum
/// must also vanish.
pub fn verify_row_sum_symmetry(a: &DenseTensor, assumed: Parity, rel_tol: f64) -> RowSumCheck {
    let tol = rel_tol * a.scale();
    let r = row_sums(a);
    let n = r.dim();
    let sign = assumed.sign();
    let mut witness = (0..n).find(|&i| (r[i] - sign * r[n - 1 - i]).abs() > tol);
    if witness.is_none() && assumed == Parity::Skew && n % 2 == 1 && r[n / 2].abs() > tol {
        witness = Some(n / 2);
    }
    RowSumCheck {
        holds: witness.is_none(),
        witness: witness.map(|i| i + 1),
        row_sums: r,
        tolerance_used: tol,
    }
}

/// `|f(Jx) - s f(x)| / max(1, |f(x)|)` with `s` the sign of the structure.
pub fn poly_reflection_gap(a: &DenseTensor, parity: Parity, x: &Vector) -> Result<f64> {
    let fx = poly_eval(a, x)?;
    let fjx = poly_eval(a, &flip_vector(x))?;
    Ok((fjx - parity.sign() * fx).abs() / f64::max(1.0, fx.abs()))
}

/// Samples `trials` vectors with components uniform in `[-1, 1]` and checks
/// `f(Jx) = f(x)` for centrosymmetric `a` or `f(Jx) = -f(x)` for skew `a`,
/// each to within `rel_tol * max(1, |f(x)|)`.
pub fn verify_poly_reflection(a: &DenseTensor, trials: usize, seed: u64, rel_tol: f64) -> Result<bool> {
    let parity = check_structure(a, DEFAULT_REL_TOL)
        .verdict
        .parity()
        .ok_or(Error::Unstructured)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_vector(&mut rng, a.dim());
        if poly_reflection_gap(a, parity, &x)? > rel_tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vector with components uniform in `[-1, 1]`.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_vec_unchecked((0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
}
