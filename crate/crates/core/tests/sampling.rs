use std::f64::consts::{FRAC_PI_2, PI};

use oam_mzi::{
    phase_discrimination, run, sample_outcomes, which_way_experiment, DetectedSign, MziConfig64, ShotConfig,
};

fn sigma(n: u64, p: f64) -> f64 {
    (n as f64 * p * (1.0 - p)).sqrt()
}

#[test]
fn frequencies_converge_to_the_distribution() {
    let cfg = MziConfig64::new(
        3,
        num_complex::Complex64::new(0.6, 0.0),
        num_complex::Complex64::new(0.0, 0.8),
        1.234,
    );
    let (d, _) = run(&cfg).unwrap();
    let n = 1_000_000;
    let c = sample_outcomes(&d, &ShotConfig::new(n, 31, 1)).unwrap();
    for (k, p) in c.counts.iter().zip(d.as_array()) {
        assert!((*k as f64 - n as f64 * p).abs() <= 5.0 * sigma(n, p), "{k} vs {p}");
    }
}

#[test]
fn correct_fraction_tracks_likelihood_on_a_grid() {
    let n = 100_000;
    for i in 0..20 {
        let alpha = PI * f64::from(i) / 19.0;
        let s = which_way_experiment(&MziConfig64::balanced(2, alpha), &ShotConfig::new(n, 100 + i as u64, 1)).unwrap();
        let want = (1.0 + alpha.sin()) / 2.0;
        assert!((s.likelihood - want).abs() <= 1e-12);
        let dev = (s.correct_guesses as f64 - n as f64 * want).abs();
        assert!(dev <= 5.0 * sigma(n, want) + 1e-9, "alpha {alpha}: dev {dev}");
        assert_eq!(s.correct_guesses + s.wrong_guesses, n);
    }
}

#[test]
fn trials_use_independent_streams() {
    let cfg = MziConfig64::balanced(1, 0.9);
    let short = which_way_experiment(&cfg, &ShotConfig::new(20_000, 5, 3)).unwrap();
    let long = which_way_experiment(&cfg, &ShotConfig::new(20_000, 5, 8)).unwrap();
    assert_eq!(short.trials[..], long.trials[..3]);
    assert_ne!(long.trials[0], long.trials[1]);
}

#[test]
fn operating_scenario_wrong_paths_below_one() {
    let s = phase_discrimination(
        &MziConfig64::balanced(2, FRAC_PI_2),
        1e-2 / 3.0,
        &ShotConfig::new(90_000, 77, 100),
    )
    .unwrap();
    assert!(s.mean_wrong_paths < 1.0);
    assert!((0.76..=0.92).contains(&s.success_rate), "{}", s.success_rate);
    assert_eq!(s.trials.len(), 100);
    for (t, sign) in s.trials.iter().zip(&s.true_signs) {
        assert_eq!(t.counts.iter().sum::<u64>(), 90_000);
        assert_eq!(t.correct_guesses + t.wrong_guesses, 90_000);
        assert!(t.detected_sign.is_some());
        assert!(*sign == 1 || *sign == -1);
    }
    let hits = s
        .trials
        .iter()
        .zip(&s.true_signs)
        .filter(|(t, &sign)| {
            t.detected_sign
                == Some(if sign > 0 {
                    DetectedSign::Plus
                } else {
                    DetectedSign::Minus
                })
        })
        .count() as u64;
    assert_eq!(hits, s.successes);
}

#[test]
fn exact_mode_rejected_for_which_way() {
    let mut cfg = MziConfig64::balanced(2, 0.5);
    cfg.mode = oam_mzi::Mode::Exact;
    assert_eq!(
        which_way_experiment(&cfg, &ShotConfig::new(10, 1, 1)).unwrap_err(),
        oam_mzi::Error::RequiresIdealMode
    );
}
