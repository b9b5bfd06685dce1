//! Log-gamma, beta, and harmonic numbers.

use std::f64::consts::PI;

/// Lanczos approximation (g = 7, 9 coefficients), double precision.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// ln B(x, y) = ln Γ(x) + ln Γ(y) − ln Γ(x+y).
pub fn ln_beta(x: f64, y: f64) -> f64 {
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

/// Beta function, computed in log space to survive large arguments.
pub fn beta(x: f64, y: f64) -> f64 {
    ln_beta(x, y).exp()
}

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;
const HARMONIC_DIRECT_LIMIT: u64 = 1_000_000;

/// m-th harmonic number H_m = 1 + 1/2 + ... + 1/m.
///
/// Direct summation up to 10^6 terms; beyond that the Euler–Maclaurin
/// approximation ln m + γ + 1/(2m) (relative error below 1e-13 there).
pub fn harmonic(m: u64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if m <= HARMONIC_DIRECT_LIMIT {
        // Sum small terms first to limit rounding.
        (1..=m).rev().map(|k| 1.0 / k as f64).sum()
    } else {
        let mf = m as f64;
        mf.ln() + EULER_MASCHERONI + 1.0 / (2.0 * mf)
    }
}
