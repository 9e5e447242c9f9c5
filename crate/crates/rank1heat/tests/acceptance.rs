//! End-to-end acceptance suite. Each test prints one pass/fail line; run
//! with `cargo test --test acceptance -- --nocapture` to see them.

use rank1heat::catalog::{admissible_spaces, degree_check, describe, Family, SpaceDescriptor};
use rank1heat::exact::{rat, PiScaledRational};
use rank1heat::heat::{
    coeff_closed, coeff_closed_odd_factorial, coeff_closed_odd_gamma, coeff_via_zeta,
    coefficient_table,
};
use rank1heat::oracle::{self, density_eval, QuadratureConfig};
use rank1heat::render::pi_scaled_to_float;
use rank1heat::zeta::{residue_at, special_value, SpectralParams};
use rug::ops::Pow;

fn so(n: u32) -> SpaceDescriptor {
    describe(Family::RealHyperbolic, Some(n)).unwrap()
}

fn report(criterion: &str, pass: bool) {
    println!("{} criterion {criterion}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed");
}

fn criterion_spaces() -> Vec<SpaceDescriptor> {
    let mut spaces: Vec<SpaceDescriptor> = (2..=8).map(so).collect();
    spaces.push(describe(Family::ComplexHyperbolic, Some(3)).unwrap());
    spaces.push(describe(Family::ComplexHyperbolic, Some(5)).unwrap());
    spaces.push(describe(Family::QuaternionicHyperbolic, Some(2)).unwrap());
    spaces.push(describe(Family::QuaternionicHyperbolic, Some(3)).unwrap());
    spaces.push(describe(Family::OctonionicHyperbolic, None).unwrap());
    spaces
}

#[test]
fn criterion_1_dual_path_exactness() {
    let params = SpectralParams::unit();
    let mut pass = true;
    for desc in criterion_spaces() {
        for k in 0..=(desc.d / 2 + 4) {
            let closed = coeff_closed(&desc, k).unwrap();
            let via = coeff_via_zeta(&desc, k, &params).unwrap();
            if closed != via {
                eprintln!("mismatch {} k = {k}: {closed} vs {via}", desc.label());
                pass = false;
            }
        }
    }
    report("1 (dual-path exactness, zero tolerance)", pass);
}

#[test]
fn criterion_2_oracle_agreement() {
    let params = SpectralParams::unit();
    let mut pass = true;
    let tight: Vec<SpaceDescriptor> = (2..=5)
        .map(so)
        .chain([describe(Family::ComplexHyperbolic, Some(3)).unwrap()])
        .collect();
    for desc in &tight {
        let config = QuadratureConfig::for_space(desc, 60);
        let report = oracle::verify(desc, &params, 3, 1e-8, &config).unwrap();
        if report.pass != Some(true) {
            eprintln!(
                "{} failed at 60 digits: {:?}",
                desc.label(),
                report.per_k.iter().map(|c| c.rel_error).collect::<Vec<_>>()
            );
            pass = false;
        }
    }
    let loose = [
        describe(Family::QuaternionicHyperbolic, Some(2)).unwrap(),
        describe(Family::OctonionicHyperbolic, None).unwrap(),
    ];
    for desc in &loose {
        let config = QuadratureConfig::for_space(desc, 80);
        let report = oracle::verify(desc, &params, 2, 1e-6, &config).unwrap();
        if report.pass != Some(true) {
            eprintln!(
                "{} failed at 80 digits: {:?}",
                desc.label(),
                report.per_k.iter().map(|c| c.rel_error).collect::<Vec<_>>()
            );
            pass = false;
        }
    }
    report("2 (oracle agreement at stated tolerances)", pass);
}

#[test]
fn criterion_3_closed_form_spot_values() {
    let mut pass = true;
    let cases: Vec<(SpaceDescriptor, Vec<PiScaledRational>)> = vec![
        (
            so(2),
            vec![
                PiScaledRational::new(rat(1, 1), 2),
                PiScaledRational::new(rat(-1, 3), 2),
                PiScaledRational::new(rat(1, 15), 2),
            ],
        ),
        (
            so(3),
            vec![
                PiScaledRational::new(rat(1, 1), 2),
                PiScaledRational::new(rat(-1, 1), 2),
            ],
        ),
        (
            so(4),
            vec![
                PiScaledRational::new(rat(1, 4), 4),
                PiScaledRational::new(rat(-1, 2), 4),
            ],
        ),
    ];
    for (desc, expected) in &cases {
        let table =
            coefficient_table(desc, expected.len() as u32 - 1, &SpectralParams::unit()).unwrap();
        for (k, want) in expected.iter().enumerate() {
            if table.value(k as u32) != want {
                eprintln!("{} A_{k} mismatch", desc.label());
                pass = false;
            }
        }
    }
    // residue at s = 2 for so(4,1) is chi Vol / 64, per unit here
    pass &= residue_at(&so(4), 2).unwrap() == PiScaledRational::from_rational(rat(1, 64));
    // zeta(0) for so(2,1) is -n0 - chi Vol / 12
    let z = special_value(
        &so(2),
        0,
        &SpectralParams { chi_dim: 1, volume: rat(1, 1), n0: 7 },
    )
    .unwrap();
    pass &= z.value == PiScaledRational::from_rational(rat(-1, 12)) && z.n0_term == -7;
    report("3 (closed-form spot values, exact)", pass);
}

#[test]
fn criterion_4_curvature_ratio() {
    let mut pass = true;
    for n in 2..=8u32 {
        let desc = so(n);
        let a0 = coeff_closed(&desc, 0).unwrap();
        let a1 = coeff_closed(&desc, 1).unwrap();
        let ratio = a1.div(&a0).unwrap();
        let want = PiScaledRational::from_rational(rat(-((n * (n - 1)) as i64), 6));
        if ratio != want {
            eprintln!("so({n},1): A_1/A_0 = {ratio}, want {want}");
            pass = false;
        }
    }
    report("4 (curvature ratio A_1/A_0 = -n(n-1)/6)", pass);
}

#[test]
fn criterion_5_odd_orthogonal_structure() {
    let mut pass = true;
    for m in 1..=5u32 {
        let desc = so(2 * m + 1);
        for k in 1..=10 {
            let z = special_value(&desc, k, &SpectralParams::unit()).unwrap();
            pass &= z.value.is_zero() && z.n0_term == 0;
        }
        for k in 0..=10 {
            pass &= coeff_closed_odd_gamma(&desc, k).unwrap()
                == coeff_closed_odd_factorial(&desc, k).unwrap();
        }
    }
    report("5 (odd orthogonal: vanishing special values, form equivalence)", pass);
}

#[test]
fn criterion_6_remainder_order() {
    // For so(2,1) and N = 2 the scaled remainder divided by t^3 must stay
    // within a factor 2 across the grid.
    let desc = so(2);
    let params = SpectralParams::unit();
    let config = QuadratureConfig::with_digits(60);
    let prec = config.prec_bits();
    let table = coefficient_table(&desc, 2, &params).unwrap();
    let mut ratios = Vec::new();
    for t in [1e-2, 5e-3, 2.5e-3] {
        let numeric = oracle::heat_identity_numeric(&desc, &params, t, &config).unwrap();
        let pi = rug::Float::with_val(prec, rug::float::Constant::Pi);
        let scaled = numeric * rug::Float::with_val(prec, 4) * &pi * rug::Float::with_val(prec, t);
        let mut partial = rug::Float::with_val(prec, 0);
        let mut t_pow = rug::Float::with_val(prec, 1);
        for k in 0..=2u32 {
            partial += pi_scaled_to_float(table.value(k), prec) * &t_pow;
            t_pow *= rug::Float::with_val(prec, t);
        }
        let remainder = rug::Float::with_val(prec, &scaled - &partial).abs();
        ratios.push((remainder / rug::Float::with_val(prec, t).pow(3u32)).to_f64());
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let pass = min > 0.0 && max / min < 2.0;
    if !pass {
        eprintln!("remainder ratios: {ratios:?}");
    }
    report("6 (remainder order: bounded t^-3 ratio)", pass);
}

#[test]
fn criterion_7_degree_and_density_integrity() {
    let mut pass = true;
    for desc in admissible_spaces(20) {
        if !degree_check(&desc) {
            eprintln!("degree check failed for {}", desc.label());
            pass = false;
        }
    }
    // density grids: 1000 symmetric points per space, zero included
    for desc in admissible_spaces(16) {
        for i in 0..=1000 {
            let r = -25.0 + 0.05 * i as f64;
            let plus = density_eval(&desc, r);
            let minus = density_eval(&desc, -r);
            if (plus - minus).abs() > 1e-10 * plus.abs().max(1.0) || plus < -1e-12 {
                eprintln!("density violation for {} at r = {r}", desc.label());
                pass = false;
            }
        }
    }
    report("7 (degree/table integrity, density evenness and nonnegativity)", pass);
}
