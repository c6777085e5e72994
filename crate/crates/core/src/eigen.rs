//! Real H-eigenpairs: `A x^{m-1} = λ x^{[m-1]}` with `x` real and nonzero.
//!
//! Both sides scale by `t^{m-1}` when `x` is replaced by `t x`, so pairs are
//! reported with `x` normalized to unit Euclidean norm and its first
//! component of magnitude above [`SIGN_FLOOR`] positive.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg;
use crate::num::{powi, sqrt};
use crate::structure::{check_structure, Parity, DEFAULT_REL_TOL};
use crate::tensor::{apply, flip_vector, power_vector, require_dim, row_sums, unravel_into, DenseTensor, Vector};
use crate::{Error, Result};

/// Components at or below this magnitude are ignored when fixing the sign.
pub const SIGN_FLOOR: f64 = 1e-12;

/// Default tolerance for [`classify_vector`] on unit vectors.
pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

/// Closed-form pairs whose residual exceeds this times the tensor scale are
/// reported as a consistency failure.
const CLOSED_FORM_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Classification {
    /// `Jx = x`.
    Symmetric,
    /// `Jx = -x`.
    SkewSymmetric,
    /// `J|x| = |x|` but neither of the above.
    AbsSymmetric,
    Neither,
}

impl Classification {
    /// Whether `|x|` is symmetric, which every class but `Neither` implies.
    pub fn is_abs_symmetric(self) -> bool {
        self != Classification::Neither
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenPair {
    pub lambda: f64,
    pub x: Vector,
    /// `max_i |(A x^{m-1})_i - λ x_i^{m-1}|`.
    pub residual: f64,
    pub classification: Classification,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolverStats {
    /// Starting points tried.
    pub starts: usize,
    /// Starts that converged to a verified pair.
    pub converged: usize,
    /// Converged pairs dropped as duplicates of an earlier one.
    pub deduplicated: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenSet {
    pub pairs: Vec<EigenPair>,
    pub solver_stats: SolverStats,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub starts: usize,
    pub seed: u64,
    /// Convergence threshold on `max|F|`, also the acceptance bound on the
    /// verified residual. A start is discarded if polishing stalls above
    /// `max(tol / 1000, roundoff)`, where roundoff is `64 eps max(1, max|A|)
    /// n^(m-1)`.
    pub tol: f64,
    pub max_iter: usize,
    pub class_tol: f64,
    /// Pairs closer than this in `λ`...
    pub dedup_lambda: f64,
    /// ...and this in `min(|x1 - x2|, |x1 + x2|)` are merged.
    pub dedup_x: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            starts: 50,
            seed: 0,
            tol: 1e-10,
            max_iter: 100,
            class_tol: DEFAULT_CLASS_TOL,
            dedup_lambda: 1e-8,
            dedup_x: 1e-6,
        }
    }
}

fn require_order2(a: &DenseTensor) -> Result<()> {
    if a.order() < 2 {
        return Err(Error::OrderTooSmall {
            required: 2,
            found: a.order(),
        });
    }
    Ok(())
}

/// `max_i |(A x^{m-1})_i - λ x_i^{m-1}|`.
pub fn residual(a: &DenseTensor, lambda: f64, x: &Vector) -> Result<f64> {
    require_order2(a)?;
    require_dim(x.dim(), a.dim())?;
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let ax = apply(a, x)?;
    let xp = power_vector(x, (a.order() - 1) as u32);
    Ok(ax
        .components()
        .iter()
        .zip(xp.components())
        .fold(0.0, |m, (l, r)| f64::max(m, (l - lambda * r).abs())))
}

/// Unit Euclidean norm with the first significant component positive.
pub fn normalize(x: &Vector) -> Result<Vector> {
    let norm = x.norm();
    if !(norm > 0.0) {
        return Err(Error::ZeroVector);
    }
    // Vectors already of unit norm are left unscaled so normalizing twice
    // changes nothing.
    let mut y = if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
        x.clone()
    } else {
        x.scaled(1.0 / norm)
    };
    if let Some(&first) = y.components().iter().find(|v| v.abs() > SIGN_FLOOR) {
        if first < 0.0 {
            // Adding zero turns -0.0 into 0.0.
            y = Vector::from_vec_unchecked(y.components().iter().map(|v| -v + 0.0).collect());
        }
    }
    Ok(y)
}

/// Tests `Jx = x`, then `Jx = -x`, then `J|x| = |x|`, each as
/// `max|.| <= tol`, and returns the first that holds.
pub fn classify_vector(x: &Vector, tol: f64) -> Result<Classification> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let jx = flip_vector(x);
    if jx.max_abs_diff(x) <= tol {
        return Ok(Classification::Symmetric);
    }
    if jx.max_abs_diff(&x.scaled(-1.0)) <= tol {
        return Ok(Classification::SkewSymmetric);
    }
    let ax = x.abs();
    if flip_vector(&ax).max_abs_diff(&ax) <= tol {
        return Ok(Classification::AbsSymmetric);
    }
    Ok(Classification::Neither)
}

/// Normalizes `x`, measures the residual against `a` and classifies.
pub fn make_pair(a: &DenseTensor, lambda: f64, x: &Vector, class_tol: f64) -> Result<EigenPair> {
    let x = normalize(x)?;
    Ok(EigenPair {
        lambda,
        residual: residual(a, lambda, &x)?,
        classification: classify_vector(&x, class_tol)?,
        x,
    })
}

fn require_centro(a: &DenseTensor) -> Result<()> {
    if check_structure(a, DEFAULT_REL_TOL).verdict.is_centro() {
        Ok(())
    } else {
        Err(Error::Precondition("tensor is not centrosymmetric".into()))
    }
}

fn guard(a: &DenseTensor, pair: EigenPair) -> Result<EigenPair> {
    if pair.residual > CLOSED_FORM_GUARD * a.scale() {
        return Err(Error::Consistency(alloc::format!(
            "closed-form eigenpair (λ = {}) has residual {:e}",
            pair.lambda, pair.residual
        )));
    }
    Ok(pair)
}

/// The two closed-form pairs of a dimension-2 centrosymmetric tensor: the
/// first row sum with `x ∝ (1, 1)`, and the first row summed against signs
/// `(-1)^(number of trailing indices equal to 2)` with `x ∝ (1, -1)`.
pub fn closed_form_dim2(a: &DenseTensor) -> Result<[EigenPair; 2]> {
    require_order2(a)?;
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.dim(),
        });
    }
    require_centro(a)?;
    let lambda_e = row_sums(a)[0];
    let trailing = a.order() - 1;
    let mut index = vec![0; trailing];
    let mut lambda_u = 0.0;
    for (t, &v) in a.row(0).iter().enumerate() {
        unravel_into(t, 2, &mut index);
        let twos = index.iter().filter(|&&i| i == 1).count();
        lambda_u += if twos % 2 == 0 { v } else { -v };
    }
    let e = Vector::new(vec![1.0, 1.0])?;
    let u = Vector::new(vec![1.0, -1.0])?;
    Ok([
        guard(a, make_pair(a, lambda_e, &e, DEFAULT_CLASS_TOL)?)?,
        guard(a, make_pair(a, lambda_u, &u, DEFAULT_CLASS_TOL)?)?,
    ])
}

/// The closed-form pair of a dimension-3 centrosymmetric tensor of even
/// order: `x ∝ (1, 0, -1)` and `λ` the first row summed over trailing
/// indices in `{1, 3}` with sign `(-1)^(number equal to 3)`.
pub fn closed_form_dim3_even(a: &DenseTensor) -> Result<EigenPair> {
    require_order2(a)?;
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: a.dim(),
        });
    }
    if a.order() % 2 == 1 {
        return Err(Error::Precondition(alloc::format!(
            "closed form needs an even order, found {}",
            a.order()
        )));
    }
    require_centro(a)?;
    let trailing = a.order() - 1;
    let mut index = vec![0; trailing];
    let mut lambda = 0.0;
    for (t, &v) in a.row(0).iter().enumerate() {
        unravel_into(t, 3, &mut index);
        if index.contains(&1) {
            continue;
        }
        let threes = index.iter().filter(|&&i| i == 2).count();
        lambda += if threes % 2 == 0 { v } else { -v };
    }
    let x = Vector::new(vec![1.0, 0.0, -1.0])?;
    guard(a, make_pair(a, lambda, &x, DEFAULT_CLASS_TOL)?)
}

/// Returns the pair's mirror image: `(λ, Jx)` for a centrosymmetric tensor,
/// `(-λ, Jx)` for a skew-centrosymmetric one. The new pair is re-verified.
pub fn reflect_pair(a: &DenseTensor, pair: &EigenPair, tol: f64) -> Result<EigenPair> {
    let parity = check_structure(a, DEFAULT_REL_TOL)
        .verdict
        .parity()
        .ok_or(Error::Unstructured)?;
    let r = residual(a, pair.lambda, &pair.x)?;
    if r > tol {
        return Err(Error::Precondition(alloc::format!(
            "input pair has residual {r:e} above {tol:e}"
        )));
    }
    let lambda = match parity {
        Parity::Centro => pair.lambda,
        Parity::Skew => -pair.lambda,
    };
    let reflected = make_pair(a, lambda, &flip_vector(&pair.x), DEFAULT_CLASS_TOL)?;
    if reflected.residual > tol {
        return Err(Error::Consistency(alloc::format!(
            "reflected pair (λ = {lambda}) has residual {:e}",
            reflected.residual
        )));
    }
    Ok(reflected)
}

/// Averages `a` over permutations of its trailing `m - 1` indices. This
/// leaves `A x^{m-1}` unchanged and makes its Jacobian `(m-1) A x^{m-2}`.
fn symmetrize_trailing(a: &DenseTensor) -> Vec<f64> {
    let n = a.dim();
    let width = a.len() / n;
    let trailing = a.order() - 1;
    let mut index = vec![0; trailing];
    // Canonical (sorted) offset of every trailing offset.
    let canon: Vec<usize> = (0..width)
        .map(|t| {
            unravel_into(t, n, &mut index);
            index.sort_unstable();
            index.iter().fold(0, |acc, &i| acc * n + i)
        })
        .collect();
    let mut counts = vec![0usize; width];
    for &c in &canon {
        counts[c] += 1;
    }
    let mut out = vec![0.0; a.len()];
    let mut sums = vec![0.0; width];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (t, &v) in a.row(i).iter().enumerate() {
            sums[canon[t]] += v;
        }
        for t in 0..width {
            out[i * width + t] = sums[canon[t]] / counts[canon[t]] as f64;
        }
    }
    out
}

/// Residual and Jacobian of the augmented system
/// `F(x, λ) = (A x^{m-1} - λ x^{[m-1]}, (|x|^2 - 1) / 2)`.
struct System<'a> {
    sym: &'a [f64],
    n: usize,
    order: usize,
}

impl System<'_> {
    fn eval(&self, z: &[f64], jac: Option<&mut [f64]>) -> Vec<f64> {
        let n = self.n;
        let (x, lambda) = (&z[..n], z[n]);
        // Contract trailing slots down to the matrix S = A x^{m-2}.
        let mut t = self.sym.to_vec();
        for _ in 0..self.order - 2 {
            t = t.chunks_exact(n).map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
        }
        let m1 = (self.order - 1) as u32;
        let mut f = Vec::with_capacity(n + 1);
        for i in 0..n {
            let ax: f64 = t[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum();
            f.push(ax - lambda * powi(x[i], m1));
        }
        f.push(0.5 * (x.iter().map(|v| v * v).sum::<f64>() - 1.0));
        if let Some(jac) = jac {
            let w = n + 1;
            let scale = f64::from(m1);
            for i in 0..n {
                for j in 0..n {
                    jac[i * w + j] = scale * t[i * n + j];
                }
                jac[i * w + i] -= lambda * scale * powi(x[i], m1 - 1);
                jac[i * w + n] = -powi(x[i], m1);
                jac[n * w + i] = x[i];
            }
            jac[n * w + n] = 0.0;
        }
        f
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| f64::max(m, x.abs()))
}

fn two_norm(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

/// Tries `z + t d` for `t = 1, 1/2, ..` and returns the first point whose
/// residual norm is below `current`.
fn line_search(sys: &System<'_>, z: &[f64], step: &[f64], current: f64) -> Option<Vec<f64>> {
    if !step.iter().all(|v| v.is_finite()) {
        return None;
    }
    let mut t = 1.0;
    for _ in 0..12 {
        let trial: Vec<f64> = z.iter().zip(step).map(|(a, d)| a + t * d).collect();
        if two_norm(&sys.eval(&trial, None)) < current {
            return Some(trial);
        }
        t *= 0.5;
    }
    None
}

/// Damped Newton from `z`. Returns the converged point, or `None`.
///
/// When the Newton step cannot reduce the residual (typically a nearly
/// singular Jacobian), Levenberg-Marquardt steps with growing damping are
/// tried before giving up on descent. After convergence up to
/// `POLISH_STEPS` further steps are taken while the residual keeps falling,
/// and the point is kept only if the residual ends at or below `accept`.
fn newton(sys: &System<'_>, mut z: Vec<f64>, opts: &SolverOptions, accept: f64) -> Option<Vec<f64>> {
    const POLISH_STEPS: usize = 10;
    let w = sys.n + 1;
    let mut jac = vec![0.0; w * w];
    let mut f = sys.eval(&z, Some(&mut jac));
    let mut polish = 0;
    for _ in 0..opts.max_iter {
        if !f.iter().all(|v| v.is_finite()) {
            return None;
        }
        let converged = inf_norm(&f) <= opts.tol;
        if converged && polish >= POLISH_STEPS {
            break;
        }
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let current = two_norm(&f);
        let newton_step = linalg::Lu::factor(&jac, w, 0.0).map(|lu| lu.solve(&rhs));
        let mut accepted = newton_step
            .as_deref()
            .and_then(|d| line_search(sys, &z, d, current));
        let base = powi(1.0 + inf_norm(&jac), 2);
        let mut mu = 1e-12 * base;
        while accepted.is_none() && mu <= base {
            accepted = linalg::damped_least_squares(&jac, &rhs, w, mu).and_then(|d| line_search(sys, &z, &d, current));
            mu *= 100.0;
        }
        match (accepted, newton_step) {
            (Some(next), _) => z = next,
            // Polishing stops once no step improves the residual.
            (None, _) if converged => break,
            (None, Some(d)) if d.iter().all(|v| v.is_finite()) => {
                z = z.iter().zip(&d).map(|(a, d)| a + d).collect();
            }
            (None, _) => return None,
        }
        if converged {
            polish += 1;
        }
        f = sys.eval(&z, Some(&mut jac));
    }
    (f.iter().all(|v| v.is_finite()) && inf_norm(&f) <= accept).then_some(z)
}

fn compare_pairs(p: &EigenPair, q: &EigenPair) -> Ordering {
    p.lambda.total_cmp(&q.lambda).then_with(|| {
        p.x.components()
            .iter()
            .zip(q.x.components())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn is_duplicate(p: &EigenPair, q: &EigenPair, opts: &SolverOptions) -> bool {
    if (p.lambda - q.lambda).abs() > opts.dedup_lambda {
        return false;
    }
    let minus: Vec<f64> = p.x.components().iter().zip(q.x.components()).map(|(a, b)| a - b).collect();
    let plus: Vec<f64> = p.x.components().iter().zip(q.x.components()).map(|(a, b)| a + b).collect();
    f64::min(two_norm(&minus), two_norm(&plus)) <= opts.dedup_x
}

/// Multistart damped Newton on the augmented system, from `opts.starts`
/// random unit vectors. Every returned pair is re-verified against `a` with
/// [`residual`]. The search is not guaranteed to find every eigenpair.
pub fn solve_eigen(a: &DenseTensor, opts: &SolverOptions) -> Result<EigenSet> {
    require_order2(a)?;
    let n = a.dim();
    let sym = symmetrize_trailing(a);
    let sys = System {
        sym: &sym,
        n,
        order: a.order(),
    };
    let m1 = (a.order() - 1) as u32;
    // Polishing drives true roots down to roundoff; a residual that stalls
    // well above it marks a local minimum of |F|, not a root.
    let roundoff = 64.0 * f64::EPSILON * a.scale() * powi(n as f64, m1);
    let accept = f64::min(opts.tol, f64::max(1e-3 * opts.tol, roundoff));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found = Vec::new();
    for _ in 0..opts.starts {
        let x0 = random_unit(&mut rng, n);
        // Least-squares eigenvalue estimate for the start.
        let t = apply(a, &x0)?;
        let p = power_vector(&x0, m1);
        let pp = p.dot(&p)?;
        let lambda0 = if pp > 0.0 { t.dot(&p)? / pp } else { 0.0 };
        let mut z = x0.into_components();
        z.push(lambda0);
        let Some(z) = newton(&sys, z, opts, accept) else {
            continue;
        };
        let x = Vector::new(z[..n].to_vec())?;
        if x.norm() == 0.0 {
            continue;
        }
        let pair = make_pair(a, z[n], &x, opts.class_tol)?;
        if pair.residual <= opts.tol {
            found.push(pair);
        }
    }
    let converged = found.len();
    found.sort_by(compare_pairs);
    let mut pairs: Vec<EigenPair> = Vec::new();
    for p in found {
        if !pairs.iter().any(|q| is_duplicate(&p, q, opts)) {
            pairs.push(p);
        }
    }
    Ok(EigenSet {
        solver_stats: SolverStats {
            starts: opts.starts,
            converged,
            deduplicated: converged - pairs.len(),
        },
        pairs,
    })
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let norm = two_norm(&v);
        if norm > 1e-3 {
            return Vector::new(v.iter().map(|c| c / norm).collect()).expect("finite");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{random_structured, Kind};

    const R2: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn a22() -> DenseTensor {
        DenseTensor::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap()
    }

    #[test]
    fn residual_examples() {
        assert!(residual(&a22(), 3.0, &v(&[R2, R2])).unwrap() < 1e-15);
        let i = DenseTensor::identity(4, 3).unwrap();
        assert_eq!(residual(&i, 1.0, &v(&[0.6, 0.0, 0.8])).unwrap(), 0.0);
        assert_eq!(residual(&a22(), 0.0, &v(&[1.0, 0.0])).unwrap(), 2.0);
        assert_eq!(residual(&a22(), 0.0, &v(&[0.0, 0.0])), Err(Error::ZeroVector));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_vector(&v(&[1.0, 2.0, 1.0]), 1e-8).unwrap(), Classification::Symmetric);
        assert_eq!(classify_vector(&v(&[1.0, 0.0, -1.0]), 1e-8).unwrap(), Classification::SkewSymmetric);
        assert_eq!(classify_vector(&v(&[1.0, -2.0, 2.0, 1.0]), 1e-8).unwrap(), Classification::AbsSymmetric);
        assert_eq!(classify_vector(&v(&[1.0, 2.0, 3.0]), 1e-8).unwrap(), Classification::Neither);
        assert_eq!(classify_vector(&v(&[0.0, 0.0]), 1e-8), Err(Error::ZeroVector));
    }

    #[test]
    fn normalize_fixes_norm_and_sign() {
        let x = normalize(&v(&[0.0, -3.0, 4.0])).unwrap();
        assert!(x.max_abs_diff(&v(&[0.0, 0.6, -0.8])) < 1e-15);
        assert!(x[0].is_sign_positive());
        assert_eq!(normalize(&x).unwrap(), x);
        assert!(normalize(&v(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn closed_form_dim2_examples() {
        let [e, u] = closed_form_dim2(&a22()).unwrap();
        assert_eq!(e.lambda, 3.0);
        assert_eq!(u.lambda, 1.0);
        assert_eq!(e.classification, Classification::Symmetric);
        assert_eq!(u.classification, Classification::SkewSymmetric);
        assert!((e.x[0] - R2).abs() < 1e-15 && (u.x[1] + R2).abs() < 1e-15);

        let ones = DenseTensor::ones(3, 2).unwrap();
        let [e, u] = closed_form_dim2(&ones).unwrap();
        assert_eq!((e.lambda, u.lambda), (4.0, 0.0));
        assert!(e.residual < 1e-15 && u.residual < 1e-15);

        let [e, u] = closed_form_dim2(&DenseTensor::identity(2, 2).unwrap()).unwrap();
        assert_eq!((e.lambda, u.lambda), (1.0, 1.0));
    }

    #[test]
    fn closed_form_dim2_rejects_bad_input() {
        let g = DenseTensor::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert!(matches!(closed_form_dim2(&g), Err(Error::Precondition(_))));
        let c3 = DenseTensor::identity(2, 3).unwrap();
        assert!(matches!(closed_form_dim2(&c3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn closed_form_dim3_examples() {
        let (b, d, e) = (0.7, -1.3, 2.2);
        let a = DenseTensor::from_rows(&[[5.0, b, 2.0], [d, e, d], [2.0, b, 5.0]]).unwrap();
        let p = closed_form_dim3_even(&a).unwrap();
        assert_eq!(p.lambda, 3.0);
        assert_eq!(p.x[1], 0.0);
        assert_eq!(p.classification, Classification::SkewSymmetric);
        assert!(p.residual < 1e-15);

        let a = DenseTensor::from_rows(&[[4.0, b, 4.0], [d, e, d], [4.0, b, 4.0]]).unwrap();
        let p = closed_form_dim3_even(&a).unwrap();
        assert_eq!(p.lambda, 0.0);
        assert_eq!(p.residual, 0.0);

        let c = random_structured(4, 3, Kind::Centro, 8).unwrap();
        let p = closed_form_dim3_even(&c).unwrap();
        assert!(p.residual <= 1e-12 * c.scale());
        let odd = random_structured(3, 3, Kind::Centro, 8).unwrap();
        assert!(matches!(closed_form_dim3_even(&odd), Err(Error::Precondition(_))));
    }

    #[test]
    fn solver_finds_matrix_eigenpairs() {
        let set = solve_eigen(&a22(), &SolverOptions::default()).unwrap();
        assert_eq!(set.pairs.len(), 2);
        assert!((set.pairs[0].lambda - 1.0).abs() < 1e-12);
        assert!((set.pairs[1].lambda - 3.0).abs() < 1e-12);
        assert!((set.pairs[1].x[0] - R2).abs() < 1e-10);
        assert_eq!(set.solver_stats.starts, 50);
        assert_eq!(set.solver_stats.converged, 50);
        assert_eq!(set.solver_stats.deduplicated, 48);
    }

    #[test]
    fn identity_tensor_pairs_all_have_unit_eigenvalue() {
        let i = DenseTensor::identity(4, 3).unwrap();
        let set = solve_eigen(&i, &SolverOptions::default()).unwrap();
        assert!(!set.pairs.is_empty());
        assert!(set.pairs.iter().all(|p| (p.lambda - 1.0).abs() <= 1e-10));
        let x = v(&[1.0, 0.0, 0.0]);
        assert_eq!(residual(&i, 1.0, &x).unwrap(), 0.0);
    }

    #[test]
    fn solver_output_is_deterministic_and_sorted() {
        let a = random_structured(3, 3, Kind::General, 31).unwrap();
        let opts = SolverOptions {
            starts: 40,
            seed: 5,
            ..SolverOptions::default()
        };
        let first = solve_eigen(&a, &opts).unwrap();
        assert_eq!(first, solve_eigen(&a, &opts).unwrap());
        assert!(first.pairs.windows(2).all(|w| w[0].lambda <= w[1].lambda));
        for p in &first.pairs {
            assert!(residual(&a, p.lambda, &p.x).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn reflect_examples() {
        let [e, _] = closed_form_dim2(&a22()).unwrap();
        let r = reflect_pair(&a22(), &e, 1e-10).unwrap();
        assert_eq!(r.lambda, 3.0);
        assert_eq!(r.x, e.x);

        let s = DenseTensor::from_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap();
        let p = make_pair(&s, 1.0, &v(&[1.0, 0.0]), DEFAULT_CLASS_TOL).unwrap();
        let r = reflect_pair(&s, &p, 1e-10).unwrap();
        assert_eq!(r.lambda, -1.0);
        assert_eq!(r.x, v(&[0.0, 1.0]));

        let c = DenseTensor::from_rows(&[[5.0, 0.7, 2.0], [-1.3, 2.2, -1.3], [2.0, 0.7, 5.0]]).unwrap();
        let p = closed_form_dim3_even(&c).unwrap();
        let r = reflect_pair(&c, &p, 1e-10).unwrap();
        assert_eq!(r.lambda, p.lambda);
        // J(1, 0, -1)/√2 = -(1, 0, -1)/√2, which normalizes back to x.
        assert_eq!(r.x, p.x);
    }

    #[test]
    fn reflect_rejects_unstructured_tensor_and_bad_pair() {
        let g = DenseTensor::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let p = make_pair(&g, 0.0, &v(&[1.0, 0.0]), DEFAULT_CLASS_TOL).unwrap();
        assert_eq!(reflect_pair(&g, &p, 1e-10), Err(Error::Unstructured));
        assert!(matches!(reflect_pair(&a22(), &p, 1e-10), Err(Error::Precondition(_))));
    }

    #[test]
    fn trailing_symmetrization_preserves_the_action() {
        let a = random_structured(4, 3, Kind::General, 2).unwrap();
        let sym = DenseTensor::new(4, 3, symmetrize_trailing(&a)).unwrap();
        let x = v(&[0.3, -0.8, 0.5]);
        let l = apply(&a, &x).unwrap();
        let r = apply(&sym, &x).unwrap();
        assert!(l.max_abs_diff(&r) < 1e-14);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let a = random_structured(4, 3, Kind::General, 12).unwrap();
        let sym = symmetrize_trailing(&a);
        let sys = System { sym: &sym, n: 3, order: 4 };
        let z = [0.4, -0.2, 0.7, 1.3];
        let mut jac = vec![0.0; 16];
        sys.eval(&z, Some(&mut jac));
        let h = 1e-6;
        for c in 0..4 {
            let mut zp = z;
            let mut zm = z;
            zp[c] += h;
            zm[c] -= h;
            let fp = sys.eval(&zp, None);
            let fm = sys.eval(&zm, None);
            for r in 0..4 {
                let fd = (fp[r] - fm[r]) / (2.0 * h);
                assert!((fd - jac[r * 4 + c]).abs() < 1e-8, "({r}, {c}): {fd} vs {}", jac[r * 4 + c]);
            }
        }
    }
}
