//! Overlaps between eigenstates of two mutually displaced harmonic
//! oscillators with different frequencies, by ladder-operator recursion.
//!
//! Coordinates are mass-weighted (amu^½·Å). The final oscillator is centred
//! at 0 with α_f = ω_f/ħ, the initial one at `displacement` with α_i. Writing
//! the final-state ladder operator in the initial basis,
//!
//! ```text
//! a_f = c·d + A·a_i† + B·a_i,   c = √(α_f/2),  r = √(α_f/α_i),
//!                               A = (r − 1/r)/2,  B = (r + 1/r)/2
//! ```
//!
//! gives, with I[m][n] = ⟨m_f|n_i⟩,
//!
//! ```text
//! I[0][n+1] = −(c·d·I[0][n] + A·√n·I[0][n−1]) / (B·√(n+1))
//! I[m+1][n] = (c·d·I[m][n] + A·√(n+1)·I[m][n+1] + B·√n·I[m][n−1]) / √(m+1)
//! ```
//!
//! seeded by the closed-form ground-state overlap.

use alloc::vec;
use alloc::vec::Vec;

use crate::physcore::constants::inverse_length_sq;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorPair {
    /// ħω of the initial oscillator, eV
    pub initial_quantum: f64,
    /// ħω of the final oscillator, eV
    pub final_quantum: f64,
    /// Centre of the initial oscillator relative to the final, amu^½·Å
    pub displacement: f64,
}

impl OscillatorPair {
    pub fn alpha_initial(&self) -> f64 {
        inverse_length_sq(self.initial_quantum)
    }

    pub fn alpha_final(&self) -> f64 {
        inverse_length_sq(self.final_quantum)
    }

    /// ⟨0_f|0_i⟩
    pub fn ground_overlap(&self) -> f64 {
        let (af, ai) = (self.alpha_final(), self.alpha_initial());
        let d = self.displacement;
        libm::sqrt(2.0 * libm::sqrt(af * ai) / (af + ai)) * libm::exp(-af * ai * d * d / (2.0 * (af + ai)))
    }
}

/// Dense table of ⟨m_f|n_i⟩ for m ≤ `m_max`, n ≤ `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    m_max: usize,
    n_max: usize,
    /// Row m holds n = 0..=n_max + m_max − m + 1 (extra columns feed the
    /// recursion and the position matrix elements).
    rows: Vec<Vec<f64>>,
    alpha_initial: f64,
}

impl OverlapTable {
    pub fn new(pair: &OscillatorPair, m_max: usize, n_max: usize) -> Self {
        let (af, ai) = (pair.alpha_final(), pair.alpha_initial());
        let r = libm::sqrt(af / ai);
        let a = 0.5 * (r - 1.0 / r);
        let b = 0.5 * (r + 1.0 / r);
        let cd = libm::sqrt(af / 2.0) * pair.displacement;
        let width = n_max + m_max + 2;

        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m_max + 1);
        let mut row0 = vec![0.0; width];
        row0[0] = pair.ground_overlap();
        for n in 0..width - 1 {
            let prev = if n > 0 { libm::sqrt(n as f64) * row0[n - 1] } else { 0.0 };
            row0[n + 1] = -(cd * row0[n] + a * prev) / (b * libm::sqrt((n + 1) as f64));
        }
        rows.push(row0);
        for m in 0..m_max {
            let cur = &rows[m];
            let len = cur.len() - 1;
            let inv = 1.0 / libm::sqrt((m + 1) as f64);
            let next: Vec<f64> = (0..len)
                .map(|n| {
                    let lower = if n > 0 {
                        b * libm::sqrt(n as f64) * cur[n - 1]
                    } else {
                        0.0
                    };
                    inv * (cd * cur[n] + a * libm::sqrt((n + 1) as f64) * cur[n + 1] + lower)
                })
                .collect();
            rows.push(next);
        }
        Self {
            m_max,
            n_max,
            rows,
            alpha_initial: ai,
        }
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// ⟨m_f|n_i⟩
    pub fn overlap(&self, m: usize, n: usize) -> f64 {
        assert!(m <= self.m_max && n <= self.n_max + 1);
        self.rows[m][n]
    }

    /// ⟨m_f|Q − Q_i|n_i⟩ in amu^½·Å, with Q_i the initial equilibrium.
    pub fn position(&self, m: usize, n: usize) -> f64 {
        assert!(m <= self.m_max && n <= self.n_max);
        let row = &self.rows[m];
        let down = if n > 0 { libm::sqrt(n as f64) * row[n - 1] } else { 0.0 };
        let up = libm::sqrt((n + 1) as f64) * row[n + 1];
        (down + up) / libm::sqrt(2.0 * self.alpha_initial)
    }

    /// ⟨n_i|(Q − Q_i)²|n_i⟩ = (2n + 1)/(2α_i): the value Σ_m |position(m, n)|²
    /// approaches as m_max grows.
    pub fn position_norm_sq(&self, n: usize) -> f64 {
        (2 * n + 1) as f64 / (2.0 * self.alpha_initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_frequency_ground_overlap_is_exp_minus_s() {
        let pair = OscillatorPair {
            initial_quantum: 0.05,
            final_quantum: 0.05,
            displacement: 0.7,
        };
        let s = 0.5 * pair.alpha_initial() * 0.7 * 0.7;
        let t = OverlapTable::new(&pair, 0, 0);
        assert!((t.overlap(0, 0).powi(2) - (-s).exp()).abs() < 1e-14);
    }

    #[test]
    fn equal_frequency_poisson_row() {
        let pair = OscillatorPair {
            initial_quantum: 0.08,
            final_quantum: 0.08,
            displacement: 0.4,
        };
        let s = 0.5 * pair.alpha_initial() * 0.16;
        let t = OverlapTable::new(&pair, 12, 0);
        let mut fact = 1.0;
        for m in 0..=12 {
            if m > 0 {
                fact *= m as f64;
            }
            let poisson = (-s).exp() * s.powi(m as i32) / fact;
            assert!((t.overlap(m, 0).powi(2) - poisson).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn identical_oscillators_are_orthonormal() {
        let pair = OscillatorPair {
            initial_quantum: 0.03,
            final_quantum: 0.03,
            displacement: 0.0,
        };
        let t = OverlapTable::new(&pair, 10, 10);
        for m in 0..=10 {
            for n in 0..=10 {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((t.overlap(m, n) - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn completeness_with_distinct_frequencies() {
        let pair = OscillatorPair {
            initial_quantum: 0.06,
            final_quantum: 0.045,
            displacement: 1.1,
        };
        let t = OverlapTable::new(&pair, 300, 5);
        for n in 0..=5 {
            let total: f64 = (0..=300).map(|m| t.overlap(m, n).powi(2)).sum();
            assert!((total - 1.0).abs() < 1e-9, "n={n}: {total}");
            let pos: f64 = (0..=300).map(|m| t.position(m, n).powi(2)).sum();
            assert!((pos / t.position_norm_sq(n) - 1.0).abs() < 1e-9);
        }
    }
}
