use defectprint_core::model::RunConfig;
use defectprint_core::photophysics::nonrad::nonradiative_rate;
use defectprint_core::photophysics::{OscillatorPair, OverlapTable};
use defectprint_core::physcore::constants::inverse_length_sq;

/// Ground state of an oscillator with inverse squared length `alpha`,
/// centred at `x0`.
fn psi0(alpha: f64, x0: f64, x: f64) -> f64 {
    (alpha / std::f64::consts::PI).powf(0.25) * (-0.5 * alpha * (x - x0) * (x - x0)).exp()
}

/// ⟨0_f|0_i⟩ by midpoint quadrature on a dense grid.
fn quadrature_overlap(af: f64, ai: f64, d: f64) -> f64 {
    let width = 12.0 / af.min(ai).sqrt();
    let (lo, hi) = (-width, d + width);
    let n = 200_000;
    let h = (hi - lo) / n as f64;
    (0..n)
        .map(|k| {
            let x = lo + (k as f64 + 0.5) * h;
            psi0(af, 0.0, x) * psi0(ai, d, x)
        })
        .sum::<f64>()
        * h
}

#[test]
fn ground_overlap_squared_is_exp_minus_s() {
    let quantum = 0.05;
    let alpha = inverse_length_sq(quantum);
    for s in [0.1, 0.5, 1.0, 2.0, 3.0] {
        let d = (2.0 * s / alpha).sqrt();
        let pair = OscillatorPair {
            initial_quantum: quantum,
            final_quantum: quantum,
            displacement: d,
        };
        let rec = OverlapTable::new(&pair, 0, 0).overlap(0, 0);
        let quad = quadrature_overlap(alpha, alpha, d);
        let want = (-s).exp();
        assert!((rec * rec / want - 1.0).abs() < 1e-3, "S={s}: recursion {}", rec * rec);
        assert!(
            (quad * quad / want - 1.0).abs() < 1e-3,
            "S={s}: quadrature {}",
            quad * quad
        );
    }
}

#[test]
fn distinct_frequencies_match_quadrature() {
    let pair = OscillatorPair {
        initial_quantum: 0.06,
        final_quantum: 0.04,
        displacement: 0.5,
    };
    let rec = OverlapTable::new(&pair, 0, 0).overlap(0, 0);
    let quad = quadrature_overlap(pair.alpha_final(), pair.alpha_initial(), 0.5);
    assert!((rec - quad).abs() < 1e-10, "{rec} vs {quad}");
}

#[test]
fn nonradiative_rate_monotone_in_temperature() {
    let base = RunConfig {
        w_if: Some(0.05),
        effective_mode_initial: Some(30.0),
        effective_mode_final: Some(30.0),
        sigma_phonon: 0.01,
        max_phonon_quanta: 60,
        ..RunConfig::default()
    };
    let mut last = 0.0;
    for t in (0..=500).step_by(25) {
        let cfg = RunConfig {
            temperature: t as f64,
            ..base.clone()
        };
        let r = nonradiative_rate(&cfg, 0.9, 1.2).unwrap().rate;
        assert!(r >= last * (1.0 - 1e-12), "T={t}: {r} < {last}");
        last = r;
    }
    let zero = RunConfig {
        w_if: Some(0.0),
        ..base
    };
    assert_eq!(nonradiative_rate(&zero, 0.9, 1.2).unwrap().rate, 0.0);
}
