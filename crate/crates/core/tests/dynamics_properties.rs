mod common;

use ergokit_core::{
    simulate, steady_state, DriveProtocol, PhysicsParams, QubitState, SampleTag,
    SimulationSettings, TrajectoryRecord,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(delta: f64) -> PhysicsParams {
    PhysicsParams::default().with_delta(delta)
}

fn run(
    initial: &QubitState,
    protocol: &DriveProtocol,
    p: &PhysicsParams,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> TrajectoryRecord {
    let settings = SimulationSettings {
        t_end,
        dt,
        sample_every,
    };
    simulate(initial, protocol, p, &settings).unwrap()
}

#[test]
fn free_coherence_decays_at_half_gamma_for_any_detuning() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for delta in [0.0, 3.0, 5.0, 8.0, -2.5] {
        let s0 = common::random_qubit(&mut rng, 1);
        let rec = run(&s0, &DriveProtocol::None, &params(delta), 3.0, 1e-4, 100);
        for sample in &rec.samples {
            let want = s0.rho_ge().norm() * (-sample.t).exp();
            assert!(
                (sample.state.rho_ge().norm() - want).abs() < 1e-8,
                "Δ={delta} t={}",
                sample.t
            );
        }
    }
}

#[test]
fn free_evolution_is_a_contraction() {
    // Undriven decay shrinks distances between states and towards the ground
    // state. It does not shrink the radius itself: states below the equator
    // move outwards on their way to the south pole.
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let ground = QubitState::ground().bloch();
    for i in 0..20 {
        let a0 = common::random_qubit(&mut rng, i);
        let b0 = common::random_qubit(&mut rng, i + 1);
        let a = run(&a0, &DriveProtocol::None, &params(4.0), 1.0, 1e-3, 1);
        let b = run(&b0, &DriveProtocol::None, &params(4.0), 1.0, 1e-3, 1);
        let pairs: Vec<_> = a.samples.iter().zip(&b.samples).collect();
        for w in pairs.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let d0 = x0.state.bloch().distance(&y0.state.bloch());
            let d1 = x1.state.bloch().distance(&y1.state.bloch());
            assert!(d1 <= d0 + 1e-12);
            assert!(
                x1.state.bloch().distance(&ground) <= x0.state.bloch().distance(&ground) + 1e-12
            );
            assert!(x1.state.bloch_radius() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn free_evolution_can_grow_the_radius_below_the_equator() {
    let s0 = QubitState::new(0.25, ergokit_core::Complex::new(0.0, 0.0)).unwrap();
    let rec = run(&s0, &DriveProtocol::None, &params(0.0), 0.1, 1e-3, 1);
    assert!(rec.final_sample().state.bloch_radius() > s0.bloch_radius());
}

#[test]
fn driven_radius_stays_in_ball() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..10 {
        let s0 = common::random_qubit(&mut rng, i * 10);
        let protocol = if i % 2 == 0 {
            DriveProtocol::Continuous { omega: 30.0 }
        } else {
            DriveProtocol::square_pi_pulses(30.0, 0.3, 10)
        };
        let rec = run(&s0, &protocol, &params(i as f64), 4.0, 1e-4, 5);
        for s in &rec.samples {
            assert!(s.state.bloch_radius() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn pulse_train_observables_do_not_depend_on_detuning() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let protocol = DriveProtocol::periodic_pi_x(0.3, 10);
    for i in 0..4 {
        let s0 = common::random_qubit(&mut rng, i);
        let reference = run(&s0, &protocol, &params(0.0), 4.0, 1e-4, 20);
        for delta in [3.0, 5.0, 8.0] {
            let other = run(&s0, &protocol, &params(delta), 4.0, 1e-4, 20);
            assert_eq!(reference.samples.len(), other.samples.len());
            for ((a, da), (b, db)) in reference.iter().zip(other.iter()) {
                assert_eq!(a.t, b.t);
                assert!((a.state.rho_ee() - b.state.rho_ee()).abs() < 1e-12);
                assert!((a.state.rho_ge().norm() - b.state.rho_ge().norm()).abs() < 1e-10);
                assert!((da.ergotropy.total - db.ergotropy.total).abs() < 1e-8);
                assert!((da.ergotropy.incoherent - db.ergotropy.incoherent).abs() < 1e-8);
                assert!((da.ergotropy.coherent - db.ergotropy.coherent).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn finite_pulses_do_feel_the_detuning() {
    let protocol = DriveProtocol::square_pi_pulses(30.0, 0.3, 10);
    let a = run(
        &QubitState::excited(),
        &protocol,
        &params(0.0),
        3.0,
        1e-4,
        50,
    );
    let b = run(
        &QubitState::excited(),
        &protocol,
        &params(8.0),
        3.0,
        1e-4,
        50,
    );
    let gap = a
        .iter()
        .zip(b.iter())
        .map(|((_, x), (_, y))| (x.ergotropy.total - y.ergotropy.total).abs())
        .fold(0.0, f64::max);
    assert!(gap > 1e-3, "gap {gap}");
}

#[test]
fn observed_order_is_four() {
    let protocol = DriveProtocol::Continuous { omega: 30.0 };
    let p = params(3.0);
    let final_ee = |dt: f64| {
        run(&QubitState::excited(), &protocol, &p, 0.5, dt, 1_000_000)
            .final_sample()
            .state
            .rho_ee()
    };
    let (a, b, c) = (final_ee(4e-3), final_ee(2e-3), final_ee(1e-3));
    let ratio = (a - b).abs() / (b - c).abs();
    assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn halving_dt_changes_samples_by_tiny_amounts() {
    let protocol = DriveProtocol::Continuous { omega: 30.0 };
    let p = params(0.0);
    let coarse = run(&QubitState::max_coherent(), &protocol, &p, 2.0, 1e-4, 100);
    let fine = run(&QubitState::max_coherent(), &protocol, &p, 2.0, 5e-5, 200);
    assert_eq!(coarse.samples.len(), fine.samples.len());
    // global RK4 error scales like C·(Ω·dt)⁴; with Ω·dt = 3e-3 that is ~1e-10
    for (a, b) in coarse.samples.iter().zip(&fine.samples) {
        assert!((a.t - b.t).abs() < 1e-12);
        assert!((a.state.rho_ee() - b.state.rho_ee()).abs() < 1e-9);
    }
}

#[test]
fn resonant_drive_keeps_coherence_imaginary_for_mixed_start() {
    let protocol = DriveProtocol::Continuous { omega: 30.0 };
    let rec = run(
        &QubitState::maximally_mixed(),
        &protocol,
        &params(0.0),
        2.0,
        1e-4,
        50,
    );
    let reference = run(
        &QubitState::maximally_mixed(),
        &protocol,
        &params(0.0),
        2.0,
        2.5e-5,
        200,
    );
    for (a, b) in rec.samples.iter().zip(&reference.samples) {
        assert_eq!(a.state.rho_ge().re, 0.0);
        assert!((a.state.rho_ge().im - b.state.rho_ge().im).abs() < 1e-9);
    }
}

#[test]
fn long_drive_reaches_analytic_steady_state() {
    for delta in [0.0, 3.0, 8.0] {
        let p = params(delta);
        let rec = run(
            &QubitState::excited(),
            &DriveProtocol::Continuous { omega: 30.0 },
            &p,
            20.0,
            1e-4,
            10_000,
        );
        let ss = steady_state(30.0, &p);
        let end = rec.final_sample().state;
        assert!((end.rho_ee() - ss.rho_ee()).abs() < 1e-6);
        assert!((end.rho_ge() - ss.rho_ge()).norm() < 1e-6);
    }
}

#[test]
fn first_pulse_swaps_decayed_population() {
    let rec = run(
        &QubitState::excited(),
        &DriveProtocol::periodic_pi_x(0.3, 10),
        &params(0.0),
        5.0,
        1e-4,
        10,
    );
    let post = rec
        .samples
        .iter()
        .find(|s| s.tag == SampleTag::PostPulse)
        .unwrap();
    assert!((post.t - 0.3).abs() < 1e-15);
    assert!((post.state.rho_ee() - (1.0 - (-0.6f64).exp())).abs() < 1e-10);
    assert!((post.state.rho_ee() - 0.451188).abs() < 1e-6);
}

#[test]
fn pulsed_excited_start_has_no_coherent_ergotropy() {
    let rec = run(
        &QubitState::excited(),
        &DriveProtocol::periodic_pi_x(0.3, 10),
        &params(5.0),
        5.0,
        1e-4,
        10,
    );
    for (_, d) in rec.iter() {
        assert_eq!(d.ergotropy.coherent, 0.0);
        assert_eq!(d.ergotropy.total, d.ergotropy.incoherent);
    }
}
