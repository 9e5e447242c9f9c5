//! Independent numerical verification of the exact coefficient tables.
//!
//! The identity term of the heat trace is integrated directly against the
//! Plancherel density at high precision, the expansion coefficients are
//! peeled off the small-`t` behavior with Richardson extrapolation, and the
//! result is compared against the closed forms.

use rug::ops::Pow;
use rug::Float;

use crate::catalog::{plancherel_polynomial, DensityKind, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::exact::half_gamma;
use crate::heat::{coefficient_table, CoefficientTable};
use crate::render::{digits_to_bits, pi_scaled_to_float, rational_to_float};
use crate::zeta::SpectralParams;

/// Working-precision and grid parameters for the numerical side.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Decimal digits of working precision.
    pub decimal_digits: u32,
    /// Target size for the truncated integrand tail.
    pub tail_epsilon: f64,
    /// Strictly decreasing geometric grid used for coefficient extraction.
    pub t_grid: Vec<f64>,
    /// Number of Richardson elimination stages.
    pub richardson_depth: usize,
}

impl QuadratureConfig {
    pub fn with_digits(decimal_digits: u32) -> Self {
        Self::builder(decimal_digits, 0.05, 0.5, 6)
    }

    /// Defaults with the top grid point shrunk so that `rho0^2 t` stays small;
    /// large half-sum constants otherwise push the expansion remainder past
    /// what Richardson extrapolation can remove.
    pub fn for_space(desc: &SpaceDescriptor, decimal_digits: u32) -> Self {
        let rho0_sq = crate::render::rational_to_float(&desc.rho0, 64)
            .to_f64()
            .powi(2);
        let t0 = 0.05 / (rho0_sq / 4.0).max(1.0);
        Self::builder(decimal_digits, t0, 0.5, 6)
    }

    /// Geometric grid `t0 * ratio^i` with `depth + 3` points.
    pub fn builder(decimal_digits: u32, t0: f64, ratio: f64, richardson_depth: usize) -> Self {
        let len = richardson_depth + 3;
        let t_grid = (0..len).map(|i| t0 * ratio.powi(i as i32)).collect();
        Self {
            decimal_digits,
            tail_epsilon: 10f64.powi(-((decimal_digits as i32) + 10).min(300)),
            t_grid,
            richardson_depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.decimal_digits < 30 {
            return Err(Error::InvalidArgument(
                "decimal_digits must be at least 30".into(),
            ));
        }
        if self.richardson_depth < 1 {
            return Err(Error::InvalidArgument(
                "richardson_depth must be at least 1".into(),
            ));
        }
        if self.t_grid.len() < 2 || self.t_grid.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "t_grid must be strictly decreasing with at least two points".into(),
            ));
        }
        if self.t_grid.iter().any(|&t| t <= 0.0) {
            return Err(Error::InvalidArgument("t_grid must be positive".into()));
        }
        Ok(())
    }

    pub fn prec_bits(&self) -> u32 {
        digits_to_bits(self.decimal_digits)
    }

    /// Grid ratio inferred from the first two points.
    fn grid_ratio(&self) -> f64 {
        self.t_grid[1] / self.t_grid[0]
    }
}

/// Per-coefficient comparison between the exact table and the extraction.
#[derive(Debug, Clone)]
pub struct KComparison {
    pub k: u32,
    /// Exact value rendered at working precision; absent for the cotangent
    /// case, which has no closed form.
    pub exact: Option<Float>,
    pub extracted: Float,
    pub rel_error: Option<f64>,
    pub pass: Option<bool>,
}

/// Outcome of one verification run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub desc: SpaceDescriptor,
    pub per_k: Vec<KComparison>,
    pub tolerance: f64,
    pub config: QuadratureConfig,
    /// All-pass flag; absent for extraction-only (cotangent) runs.
    pub pass: Option<bool>,
}

fn density_prefactor(desc: &SpaceDescriptor, prec: u32) -> Float {
    // C_G * pi
    pi_scaled_to_float(
        &desc.c_g.mul(&crate::exact::PiScaledRational::pi_power(2)),
        prec,
    )
}

fn poly_eval_factored(desc: &SpaceDescriptor, r2: &Float, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 1);
    for f in &desc.factors {
        acc *= rational_to_float(&f.r2_coeff, prec) * r2 + rational_to_float(&f.constant, prec);
    }
    acc
}

/// Plancherel density at precision `prec`. The cotangent case is defined at
/// `r = 0` by its finite limit.
pub fn density_eval_prec(desc: &SpaceDescriptor, r: &Float, prec: u32) -> Float {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let r2 = Float::with_val(prec, r * r);
    let poly = poly_eval_factored(desc, &r2, prec);
    let pre = density_prefactor(desc, prec);
    match desc.density_kind {
        DensityKind::Polynomial => pre * poly,
        DensityKind::TanhFull => {
            let arg = Float::with_val(prec, &pi * r);
            pre * r * poly * arg.tanh()
        }
        DensityKind::TanhHalf => {
            let arg = Float::with_val(prec, &pi * r) / 2u32;
            pre * r * poly * arg.tanh()
        }
        DensityKind::CothHalf => {
            if r.is_zero() {
                // limit of r coth(pi r / 2) is 2 / pi
                pre * poly * 2u32 / pi
            } else {
                let arg = Float::with_val(prec, &pi * r) / 2u32;
                pre * r * poly / arg.tanh()
            }
        }
    }
}

/// Plancherel density in double precision.
pub fn density_eval(desc: &SpaceDescriptor, r: f64) -> f64 {
    density_eval_prec(desc, &Float::with_val(64, r), 64).to_f64()
}

/// Tanh-sinh quadrature of `f` over `[a, b]`, refined until the relative
/// change between levels drops below `eps`.
fn tanh_sinh<F: Fn(&Float) -> Float>(
    f: F,
    a: &Float,
    b: &Float,
    prec: u32,
    eps: &Float,
) -> Float {
    let pi_half = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let half = Float::with_val(prec, b - a) / 2u32;
    // Beyond this point the weights are below the tail target.
    let ln_eps = Float::with_val(prec, eps.clone().ln());
    let u_max_f = (Float::with_val(prec, -&ln_eps) / &pi_half).ln().to_f64() + 1.5;
    let u_max = u_max_f.max(3.0);

    let mut prev: Option<Float> = None;
    let mut result = Float::with_val(prec, 0);
    for level in 2..=14u32 {
        let h = Float::with_val(prec, 1) >> level; // 2^-level
        let steps = (u_max / (1.0 / f64::powi(2.0, level as i32))).ceil() as i64;
        let mut sum = Float::with_val(prec, 0);
        for j in -steps..=steps {
            let u = Float::with_val(prec, j) * &h;
            let su = Float::with_val(prec, &pi_half * u.clone().sinh());
            let cu = Float::with_val(prec, &pi_half * u.clone().cosh());
            let sech = Float::with_val(prec, su.clone().cosh());
            let weight = cu / (Float::with_val(prec, &sech * &sech));
            let x = Float::with_val(prec, &mid + Float::with_val(prec, &half * su.tanh()));
            sum += f(&x) * weight;
        }
        result = sum * &h * &half;
        if let Some(p) = &prev {
            let diff = Float::with_val(prec, &result - p).abs();
            let scale = Float::with_val(prec, result.clone().abs()).max(&Float::with_val(prec, 1e-300));
            if diff < Float::with_val(prec, eps * &scale) {
                return result;
            }
        }
        prev = Some(result.clone());
    }
    result
}

/// Integration cutoff: beyond `R` the Gaussian-damped integrand tail is below
/// the tail target.
fn cutoff(desc: &SpaceDescriptor, t: f64, tail_epsilon: f64) -> f64 {
    (((1.0 / tail_epsilon).ln() + (desc.d as f64 + 2.0) * (1.0 + 1.0 / t).ln()) / t).sqrt()
}

/// `chi(1) Vol * h_t(1)` by adaptive high-precision quadrature of the
/// identity-term integral.
pub fn heat_identity_numeric(
    desc: &SpaceDescriptor,
    params: &SpectralParams,
    t: f64,
    config: &QuadratureConfig,
) -> Result<Float> {
    if t <= 0.0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    config.validate()?;
    let prec = config.prec_bits();
    let tf = Float::with_val(prec, t);
    let r_max = Float::with_val(prec, cutoff(desc, t, config.tail_epsilon));
    let quad_eps = Float::with_val(prec, 10f64).pow(-(config.decimal_digits as i32 - 8));
    let integrand = |r: &Float| -> Float {
        let e = Float::with_val(prec, -(Float::with_val(prec, r * r)) * &tf).exp();
        e * density_eval_prec(desc, r, prec)
    };
    let zero = Float::with_val(prec, 0);
    // The density is even, so the real-line integral is twice the half line.
    let integral = tanh_sinh(integrand, &zero, &r_max, prec, &quad_eps) * 2u32;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let rho0 = rational_to_float(&desc.rho0, prec);
    let rho0_sq = Float::with_val(prec, &rho0 * &rho0);
    let damping = (-Float::with_val(prec, &rho0_sq * &tf)).exp();
    let scale = rational_to_float(&params.scale(), prec);
    Ok(scale * damping * integral / (4u32 * pi))
}

/// Closed-form value of `chi(1) Vol * h_t(1)` for the polynomial-density
/// (odd orthogonal) case, where the integral reduces to exact Gaussian
/// moments. Used as an independent oracle for the quadrature itself.
pub fn heat_identity_closed_poly(
    desc: &SpaceDescriptor,
    params: &SpectralParams,
    t: f64,
    prec: u32,
) -> Result<Float> {
    if desc.density_kind != DensityKind::Polynomial {
        return Err(Error::InvalidArgument(format!(
            "{} does not have a polynomial density",
            desc.label()
        )));
    }
    let poly = plancherel_polynomial(desc);
    let tf = Float::with_val(prec, t);
    let mut sum = Float::with_val(prec, 0);
    for (j, a) in poly.coeffs().iter().enumerate() {
        // integral over R of e^(-r^2 t) r^(2j) dr = Gamma(j + 1/2) t^(-j-1/2)
        let gamma = pi_scaled_to_float(&half_gamma(j as u64), prec);
        let t_pow = tf.clone().pow(-(Float::with_val(prec, j as u32) + 0.5f64));
        sum += rational_to_float(a, prec) * gamma * t_pow;
    }
    let c_g_over_4 = pi_scaled_to_float(&desc.c_g, prec) / 4u32;
    let rho0 = rational_to_float(&desc.rho0, prec);
    let rho0_sq = Float::with_val(prec, &rho0 * &rho0);
    let damping = (-Float::with_val(prec, &rho0_sq * &tf)).exp();
    let scale = rational_to_float(&params.scale(), prec);
    Ok(scale * c_g_over_4 * damping * sum)
}

/// Richardson extrapolation of `values[i] = E(t0 * ratio^i)` to `t -> 0`,
/// assuming a power-series remainder. Returns the limit and an error
/// estimate from the last tableau correction.
fn richardson_limit(values: &[Float], ratio: f64, depth: usize, prec: u32) -> (Float, Float) {
    let m = values.len();
    let depth = depth.min(m - 1);
    let q = Float::with_val(prec, ratio);
    let mut tableau: Vec<Float> = values.to_vec();
    let mut last_corner = tableau[m - 1].clone();
    let mut prev_corner = last_corner.clone();
    for j in 1..=depth {
        let qj = q.clone().pow(j as i32);
        let denom = Float::with_val(prec, 1) - &qj;
        for i in (j..m).rev() {
            let num = Float::with_val(prec, &tableau[i] - Float::with_val(prec, &qj * &tableau[i - 1]));
            tableau[i] = num / &denom;
        }
        prev_corner = last_corner;
        last_corner = tableau[m - 1].clone();
    }
    let est = Float::with_val(prec, &last_corner - &prev_corner).abs();
    (last_corner, est)
}

/// Extract `A_0 .. A_kmax` numerically by sequential peeling of the scaled
/// heat trace on the configured grid.
pub fn extract_coeffs_numeric(
    desc: &SpaceDescriptor,
    params: &SpectralParams,
    k_max: u32,
    config: &QuadratureConfig,
) -> Result<Vec<Float>> {
    config.validate()?;
    if config.t_grid.iter().any(|&t| t >= 1.0) {
        return Err(Error::InvalidArgument(
            "extraction grid must lie in (0, 1)".into(),
        ));
    }
    let prec = config.prec_bits();
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let ratio = config.grid_ratio();

    // E_0(t) = (4 pi t)^(d/2) * chi(1) Vol h_t(1)
    let mut remainder: Vec<Float> = Vec::with_capacity(config.t_grid.len());
    for &t in &config.t_grid {
        let h = heat_identity_numeric(desc, params, t, config)?;
        let four_pi_t = Float::with_val(prec, 4) * &pi * Float::with_val(prec, t);
        let d_half = Float::with_val(prec, desc.d) / 2u32;
        remainder.push(h * four_pi_t.pow(d_half));
    }

    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let (limit, est) = richardson_limit(&remainder, ratio, config.richardson_depth, prec);
        let scale = Float::with_val(prec, limit.clone().abs()).max(&Float::with_val(prec, 1));
        let budget = Float::with_val(prec, &scale * &Float::with_val(prec, 1e-2));
        if !limit.is_finite() || est > budget {
            return Err(Error::PrecisionExhausted { k: k as usize });
        }
        // Peel: E_{k+1}(t) = (E_k(t) - A_k) / t
        for (i, &t) in config.t_grid.iter().enumerate() {
            remainder[i] = Float::with_val(prec, &remainder[i] - &limit) / Float::with_val(prec, t);
        }
        out.push(limit);
    }
    Ok(out)
}

/// Compare the exact coefficient table against the numerical extraction.
/// Cotangent spaces produce extraction-only reports with no pass/fail.
pub fn verify(
    desc: &SpaceDescriptor,
    params: &SpectralParams,
    k_max: u32,
    tolerance: f64,
    config: &QuadratureConfig,
) -> Result<VerificationReport> {
    let prec = config.prec_bits();
    let extracted = extract_coeffs_numeric(desc, params, k_max, config)?;
    let exact_table: Option<CoefficientTable> = if desc.is_cotangent() {
        None
    } else {
        Some(coefficient_table(desc, k_max, params)?)
    };
    let scale = rational_to_float(&params.scale(), prec);
    let mut per_k = Vec::with_capacity(extracted.len());
    let mut all_pass = true;
    for (k, num) in extracted.iter().enumerate() {
        let (exact, rel_error, pass) = match &exact_table {
            Some(table) => {
                let ex = Float::with_val(prec, pi_scaled_to_float(table.value(k as u32), prec) * &scale);
                let denom = Float::with_val(prec, ex.clone().abs()).max(&Float::with_val(prec, 1e-300));
                let rel = (Float::with_val(prec, num - &ex).abs() / denom).to_f64();
                let ok = rel <= tolerance;
                all_pass &= ok;
                (Some(ex), Some(rel), Some(ok))
            }
            None => (None, None, None),
        };
        per_k.push(KComparison {
            k: k as u32,
            exact,
            extracted: num.clone(),
            rel_error,
            pass,
        });
    }
    Ok(VerificationReport {
        desc: desc.clone(),
        per_k,
        tolerance,
        config: config.clone(),
        pass: exact_table.is_some().then_some(all_pass),
    })
}
