use proptest::prelude::*;

use defectprint_core::model::{Atom, Geometry, PhononMode, PhononModeSet};
use defectprint_core::photophysics::{
    fold_to_axis, quantum_efficiency, radiative_rate, DipoleMoment, Polarization, RateReport,
};
use defectprint_core::physcore::{ev_to_nm, gaussian_broaden, nm_to_ev, EnergyGrid, Stick};
use defectprint_core::vibronic::{config_coordinates, debye_waller, delta_q, vibronic_summary};
use defectprint_core::{match_candidates, Candidate, ExperimentRecord, Field, Fingerprint, Measurement, Weights};
use num_complex::Complex64;

fn sticks() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01..0.25f64, 0.0..2.0f64), 1..6)
}

fn pair() -> impl Strategy<Value = (Geometry, Geometry, Vec<[f64; 3]>)> {
    (1usize..5).prop_flat_map(|n| {
        (
            prop::collection::vec((1.0..40.0f64, prop::array::uniform3(-3.0..3.0f64)), n),
            prop::collection::vec(prop::array::uniform3(-0.2..0.2f64), n),
            prop::collection::vec(prop::array::uniform3(-1.0..1.0f64), n),
        )
            .prop_filter_map("degenerate mode vector", |(atoms, shifts, vec)| {
                let norm: f64 = vec.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    return None;
                }
                let unit: Vec<[f64; 3]> = vec.iter().map(|r| [r[0] / norm, r[1] / norm, r[2] / norm]).collect();
                let g: Vec<Atom> = atoms
                    .iter()
                    .map(|(m, p)| Atom {
                        species: "C".into(),
                        mass: *m,
                        position: *p,
                    })
                    .collect();
                let e: Vec<Atom> = g
                    .iter()
                    .zip(&shifts)
                    .map(|(a, d)| Atom {
                        position: [a.position[0] + d[0], a.position[1] + d[1], a.position[2] + d[2]],
                        ..a.clone()
                    })
                    .collect();
                Some((Geometry::new("g", g).unwrap(), Geometry::new("e", e).unwrap(), unit))
            })
    })
}

fn candidate(label: &str, zpl: f64, hr: f64, angle: f64, gamma_r: f64) -> Fingerprint {
    Fingerprint {
        defect_label: label.into(),
        transition_order: 1,
        stable_multiplicity: None,
        spin_transition: "up-up".into(),
        zpl_nm: zpl,
        e0_ev: nm_to_ev(zpl).unwrap(),
        delta_q: 0.5,
        hr,
        dw: (-hr).exp(),
        excitation_angle_deg: Polarization::InPlane(0.0),
        excitation_visibility: 1.0,
        emission_angle_deg: Polarization::InPlane(angle),
        emission_visibility: 1.0,
        mu_sq_debye2: 10.0,
        gamma_r,
        tau_r_ns: 1e9 / gamma_r,
        gamma_nr: None,
        tau_nr_ns: None,
        eta_pct: None,
        odmr: None,
    }
}

proptest! {
    #[test]
    fn ev_nm_round_trip(x in 0.05..20.0f64) {
        let back = ev_to_nm(nm_to_ev(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x);
    }

    #[test]
    fn broadening_is_linear(w1 in sticks(), w2 in sticks(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let grid = EnergyGrid::new(0.0, 0.35, 701).unwrap();
        let sigma = 0.006;
        let s = |v: &[(f64, f64)], c: f64| -> Vec<Stick> {
            v.iter().map(|&(e, w)| Stick { energy: e, weight: c * w }).collect()
        };
        let mut both = s(&w1, a);
        both.extend(s(&w2, b));
        let joint = gaussian_broaden(&both, sigma, grid).unwrap();
        let f1 = gaussian_broaden(&s(&w1, 1.0), sigma, grid).unwrap();
        let f2 = gaussian_broaden(&s(&w2, 1.0), sigma, grid).unwrap();
        let scale = f1.values.iter().chain(&f2.values).fold(1.0f64, |m, v| m.max(v.abs()));
        for i in 0..grid.len() {
            let want = a * f1.values[i] + b * f2.values[i];
            prop_assert!((joint.values[i] - want).abs() <= 1e-12 * scale * (a.abs() + b.abs() + 1.0));
        }
    }

    #[test]
    fn dw_identity((g, e, _) in pair(), energies in prop::collection::vec(2.0..200.0f64, 1..4)) {
        let n = g.len();
        let modes: Vec<PhononMode> = energies.iter().enumerate().map(|(k, &en)| {
            let mut v = vec![[0.0; 3]; n];
            v[k % n][k % 3] = 1.0;
            PhononMode::new(k + 1, en, v).unwrap()
        }).collect();
        let set = PhononModeSet::new(n, modes).unwrap();
        let summary = vibronic_summary(&g, &e, &set, 0.005, None, false).unwrap();
        prop_assert!((summary.debye_waller - (-summary.total_hr).exp()).abs() <= 1e-15 * summary.debye_waller);
        prop_assert_eq!(debye_waller(summary.total_hr), summary.debye_waller);
    }

    #[test]
    fn sign_flip((g, e, v) in pair(), energy in 2.0..200.0f64) {
        let n = g.len();
        let flipped: Vec<[f64; 3]> = v.iter().map(|r| [-r[0], -r[1], -r[2]]).collect();
        let a = PhononModeSet::new(n, vec![PhononMode::new(1, energy, v).unwrap()]).unwrap();
        let b = PhononModeSet::new(n, vec![PhononMode::new(1, energy, flipped).unwrap()]).unwrap();
        let pa = config_coordinates(&g, &e, &a).unwrap()[0];
        let pb = config_coordinates(&g, &e, &b).unwrap()[0];
        prop_assert_eq!(pa.q, -pb.q);
        prop_assert_eq!(pa.s, pb.s);
    }

    #[test]
    fn mass_scaling((g, e, _) in pair(), c in 0.1..10.0f64) {
        let base = delta_q(&g, &e).unwrap();
        let scaled = delta_q(&g.with_scaled_masses(c * c).unwrap(), &e.with_scaled_masses(c * c).unwrap()).unwrap();
        prop_assert!((scaled - c * base).abs() <= 1e-12 * (c * base).max(1e-300));
    }

    #[test]
    fn radiative_rate_homogeneity(e0 in 0.5..5.0f64, mu2 in 0.01..100.0f64, c in 0.1..10.0f64, n in 1.0..3.0f64) {
        let base = radiative_rate(e0, mu2, n).unwrap();
        let by_mu = radiative_rate(e0, c * mu2, n).unwrap();
        let by_e = radiative_rate(c * e0, mu2, n).unwrap();
        prop_assert!((by_mu / base - c).abs() <= 1e-13 * c);
        prop_assert!((by_e / base - c * c * c).abs() <= 1e-13 * c * c * c);
    }

    #[test]
    fn reciprocal_lifetimes(gr in 1e3..1e10f64, gnr in prop::option::of(1e3..1e10f64), f in 0.5..20.0f64) {
        let r = RateReport::new(gr, gnr, f).unwrap();
        prop_assert!((r.tau_r_ns * r.gamma_r / 1e9 - 1.0).abs() < 1e-15);
        if let (Some(t), Some(g)) = (r.tau_nr_ns, r.gamma_nr) {
            prop_assert!((t * g / 1e9 - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn efficiency_bounded_and_decreasing(gr in 1e3..1e10f64, a in 0.0..1e10f64, b in 0.0..1e10f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let e_lo = quantum_efficiency(gr, lo).unwrap();
        let e_hi = quantum_efficiency(gr, hi).unwrap();
        prop_assert!((0.0..=1.0).contains(&e_lo) && (0.0..=1.0).contains(&e_hi));
        prop_assert!(e_hi <= e_lo);
    }

    #[test]
    fn angle_invariant_under_hexagonal_rotation(
        theta in -720.0..720.0f64, axis in -90.0..90.0f64, k in -6i32..6, z in -2.0..2.0f64, mag in 0.1..10.0f64,
    ) {
        let dir = |t: f64| {
            let r = t.to_radians();
            [Complex64::new(mag * r.cos(), 0.0), Complex64::new(mag * r.sin(), 0.0), Complex64::new(z, 0.0)]
        };
        let a = DipoleMoment::from_vector(dir(theta), axis).unwrap();
        let c = DipoleMoment::from_vector(dir(theta), axis + 60.0 * k as f64).unwrap();
        prop_assert!((0.0..=1.0).contains(&a.in_plane_visibility));
        let Polarization::InPlane(pa) = a.polarization else { return Err(TestCaseError::fail("sentinel")) };
        prop_assert!((0.0..=30.0).contains(&pa));
        prop_assert!((c.polarization.degrees().unwrap() - pa).abs() < 1e-9);
        prop_assert!((fold_to_axis(pa + 60.0 * k as f64) - pa).abs() < 1e-9);
    }

    #[test]
    fn match_rank_invariant_under_weight_scaling(
        zpls in prop::collection::vec(500.0..800.0f64, 2..6),
        w in prop::array::uniform3(0.1..5.0f64),
        c in 0.01..100.0f64,
    ) {
        let cands: Vec<Candidate> = zpls.iter().enumerate()
            .map(|(i, &z)| Candidate::from(&candidate(&format!("d{i}"), z, 0.5 + 0.3 * i as f64, (7.0 * i as f64) % 30.0, 1e7 * (i + 1) as f64)))
            .collect();
        let exp = ExperimentRecord::new("x")
            .with(Field::ZplNm, Measurement::new(600.0, 10.0).unwrap())
            .with(Field::Hr, Measurement::new(1.0, 0.3).unwrap())
            .with(Field::TauRNs, Measurement::new(30.0, 5.0).unwrap());
        let mk = |s: f64| Weights([(Field::ZplNm, s * w[0]), (Field::Hr, s * w[1]), (Field::TauRNs, s * w[2])].into_iter().collect());
        let a = match_candidates(&exp, &cands, &mk(1.0)).unwrap();
        let b = match_candidates(&exp, &cands, &mk(c)).unwrap();
        let la: Vec<_> = a.iter().map(|m| m.candidate_label.clone()).collect();
        let lb: Vec<_> = b.iter().map(|m| m.candidate_label.clone()).collect();
        prop_assert_eq!(la, lb);
    }
}
