//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//! Runs without the libtest harness so the lines are always printed.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use realtrace::algebra::{embed_q2c, embed_q2r, linalg, CMatrix, HMatrix, Quaternion};
use realtrace::geometry::{bergman_distance, form_eval, HermitianSpace, ProjectivePoint};
use realtrace::groups::{
    form_inverse, random_element, sample_element, special_element, su11_element, Family, GroupSpec, SpecialElement,
};
use realtrace::invariants::{
    detect, invariant_subspace_scan, real_structure_solve, rho_fixture, synthesize, DetectionKind, SynthesisRecipe,
    TargetKind,
};
use realtrace::traces::{
    conjugated_trace_scan, criterion_i, criterion_ii, eqnsys_residual, odd_power_sums_check, realness_report,
    sp1_su11_membership, Verdict,
};

const WORKED_EXAMPLE_TOL: f64 = 1e-12;
const SCAN_TOL: f64 = 1e-9;
const NON_MEMBER_WITNESS: f64 = 1e-3;
const WITNESS_FLOOR: f64 = 1e-6;
const BLOCK_RESIDUAL: f64 = 1e-6;
const CONJUGATOR_RESIDUAL: f64 = 1e-8;
const ROUND_TRIP_RATE: f64 = 0.98;
const ALGEBRA_TOL: f64 = 1e-12;
const FORM_TOL: f64 = 1e-9;
const DISTANCE_TOL: f64 = 1e-9;
const ROTATION_TOL: f64 = 1e-12;
const POWER_SUM_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(gauss(rng), gauss(rng), gauss(rng), gauss(rng))
}

fn unit_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    let q = random_quaternion(rng);
    q.scale(1.0 / q.norm())
}

/// `[[z, w], [w̄, z̄]]` with `z = √(1+|w|²) e^{iφ}`; returns the matrix and `z`.
fn su11_sample(rng: &mut ChaCha8Rng) -> (CMatrix, Complex64) {
    let w = c(gauss(rng), gauss(rng));
    let z = Complex64::from_polar((1.0 + w.norm_sqr()).sqrt(), rng.random_range(0.0..2.0 * PI));
    (su11_element(z, w, 1e-12).expect("on the hyperboloid"), z)
}

fn quaternionic(m: &CMatrix) -> HMatrix {
    m.map(Quaternion::from)
}

fn worked_example() -> Outcome {
    let g = HMatrix::from_diag(&[
        Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0),
        Quaternion::new(0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2),
    ]);
    let ginv = form_inverse(&g, &[1.0, -1.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (u, z) = su11_sample(&mut rng);
        let t = (&(&g * &quaternionic(&u)) * &ginv).trace().unwrap();
        worst = worst.max((t - Quaternion::from(z * 2.0)).norm() / z.norm().max(1.0));
    }
    outcome(
        worst <= WORKED_EXAMPLE_TOL,
        format!("max |tr(g u g^-1) - 2z| / max(1,|z|) = {worst:.2e} over 200 samples"),
    )
}

fn sp1_su11() -> Outcome {
    let su11 = GroupSpec::su11();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut member_fail, mut worst_member_scan) = (0, 0.0f64);
    let (mut non_member_fail, mut weakest_witness) = (0, f64::INFINITY);
    for k in 0..200u64 {
        let (u, _) = su11_sample(&mut rng);
        let g = quaternionic(&u).scale_left(unit_quaternion(&mut rng));
        let m = sp1_su11_membership(&g, SCAN_TOL).unwrap();
        let scan = conjugated_trace_scan(&g, &su11, 100, k).unwrap();
        worst_member_scan = worst_member_scan.max(scan);
        if !m.member || scan > SCAN_TOL {
            member_fail += 1;
        }

        // right factor diag(1, p) with p off the complex line
        let delta: f64 = rng.random_range(0.3..1.2);
        let (a, b) = (gauss(&mut rng), gauss(&mut rng));
        let r = a.hypot(b);
        let p = Quaternion::new(delta.cos(), 0.0, delta.sin() * a / r, delta.sin() * b / r);
        let bad = &g * &HMatrix::from_diag(&[Quaternion::ONE, p]);
        let m = sp1_su11_membership(&bad, SCAN_TOL).unwrap();
        let witness = conjugated_trace_scan(&bad, &su11, 1000, k).unwrap();
        weakest_witness = weakest_witness.min(witness);
        if m.member || witness <= NON_MEMBER_WITNESS {
            non_member_fail += 1;
        }
    }
    outcome(
        member_fail == 0 && non_member_fail == 0,
        format!(
            "members: {member_fail} failures, max scan {worst_member_scan:.2e}; non-members: {non_member_fail} failures, min witness {weakest_witness:.2e}"
        ),
    )
}

fn criterion_one() -> Outcome {
    let mut weakest = f64::INFINITY;
    for n in 1..=3 {
        let spec = GroupSpec::sp(n, 1);
        for seed in 0..10_000u64 {
            let g: HMatrix = random_element(&spec, seed).unwrap();
            weakest = weakest.min(criterion_i(&g, 1e-8).unwrap().norm());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut min_cert, mut min_first) = (f64::INFINITY, f64::INFINITY);
    for k in 0..1_000_000usize {
        let n = 1 + k % 3;
        let mut x: Vec<Quaternion> = (0..n).map(|_| random_quaternion(&mut rng)).collect();
        let s: f64 = x.iter().map(|q| q.norm_sqr()).sum();
        x.push(unit_quaternion(&mut rng).scale((1.0 + s).sqrt()));
        let r = eqnsys_residual(&x).unwrap();
        min_cert = min_cert.min(r.certificate.unwrap());
        min_first = min_first.min(r.first);
    }
    outcome(
        weakest > WITNESS_FLOOR && min_cert >= 0.0 && min_first > 0.0,
        format!(
            "min witness {weakest:.3e} over 3x10^4 elements; certificate min {min_cert:.3e}, first residual min {min_first:.3e} over 10^6 points"
        ),
    )
}

fn criterion_two() -> Outcome {
    let mut weakest = f64::INFINITY;
    for n in 2..=3 {
        let spec = GroupSpec::sp(n, 1);
        for seed in 0..10_000u64 {
            let g: HMatrix = random_element(&spec, seed).unwrap();
            let w = criterion_ii(&g, 1e-8)
                .unwrap()
                .iter()
                .map(|q| q.norm())
                .fold(0.0, f64::max);
            weakest = weakest.min(w);
        }
    }
    outcome(
        weakest > WITNESS_FLOOR,
        format!("min max-component {weakest:.3e} over 2x10^4 elements"),
    )
}

fn round_trip_once(family: Family, n: usize, target: TargetKind, seed: u64) -> Result<(), String> {
    let recipe = SynthesisRecipe::new(family, n, target, seed);
    let want = match target {
        TargetKind::RealForm(m) => DetectionKind::RealForm(m),
        TargetKind::ComplexLine => DetectionKind::ComplexLine,
    };
    let (kind, residual, cres) = if family == Family::Sp {
        let s = synthesize::<Quaternion>(&recipe).map_err(|e| e.to_string())?;
        let d = detect(&s.gens, 3, 1e-9).map_err(|e| e.to_string())?;
        (d.kind, d.residual, d.conjugator_residual)
    } else {
        let s = synthesize::<Complex64>(&recipe).map_err(|e| e.to_string())?;
        let d = detect(&s.gens, 3, 1e-9).map_err(|e| e.to_string())?;
        (d.kind, d.residual, d.conjugator_residual)
    };
    if kind != want {
        return Err(format!("detected {kind}"));
    }
    if residual >= BLOCK_RESIDUAL || cres >= CONJUGATOR_RESIDUAL {
        return Err(format!("residual {residual:.2e}, conjugator {cres:.2e}"));
    }
    Ok(())
}

fn round_trips() -> Outcome {
    let (mut total, mut failures) = (0usize, Vec::new());
    for family in [Family::SU, Family::Sp] {
        for n in 2..=4 {
            let targets = (2..=n).map(TargetKind::RealForm).chain([TargetKind::ComplexLine]);
            for target in targets {
                for seed in 0..50 {
                    total += 1;
                    if let Err(e) = round_trip_once(family, n, target, seed) {
                        failures.push(format!("{family:?} n={n} {target:?} seed={seed}: {e}"));
                    }
                }
            }
        }
    }
    for f in &failures {
        println!("    round-trip failure: {f}");
    }
    let rate = 1.0 - failures.len() as f64 / total as f64;
    outcome(
        rate >= ROUND_TRIP_RATE,
        format!("{} / {total} recovered ({:.1}%)", total - failures.len(), 100.0 * rate),
    )
}

fn rho() -> Outcome {
    let mut problems = Vec::new();
    for seed in 0..5 {
        let set = rho_fixture(seed).unwrap();
        if realness_report(&set, 6, 1e-9).verdict != Verdict::Real {
            problems.push(format!("seed {seed}: traces not real"));
        }
        let scan = invariant_subspace_scan(&set, 6, 1e-9).unwrap();
        let mut split: Vec<(usize, usize)> = scan.subspaces.iter().map(|s| (s.dim, s.negative)).collect();
        split.sort();
        if split != [(2, 0), (2, 1)] {
            problems.push(format!("seed {seed}: split {split:?}"));
        }
        if real_structure_solve(&set, 1e-9).unwrap().is_some() {
            problems.push(format!("seed {seed}: real structure found"));
        }
    }
    let detail = if problems.is_empty() {
        "real at L=6, 2+2 split, no real structure (5 seeds)".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let (p, q) = (random_quaternion(&mut rng), random_quaternion(&mut rng));
        let scale = p.norm() * q.norm();
        let hom_c = (&embed_q2c(p * q) - &(&embed_q2c(p) * &embed_q2c(q))).max_abs() / scale.max(1.0);
        let hom_r = (&embed_q2r(p * q) - &(&embed_q2r(p) * &embed_q2r(q))).max_abs() / scale.max(1.0);
        let tr_c = (embed_q2c(p).trace().unwrap() - c(2.0 * p.a, 0.0)).norm() / p.norm().max(1.0);
        let tr_r = (embed_q2r(p).trace().unwrap() - 4.0 * p.a).abs() / p.norm().max(1.0);
        let re = (p * Quaternion::I * p.conj()).a.abs() / p.norm_sqr().max(1.0);
        worst = worst.max(hom_c).max(hom_r).max(tr_c).max(tr_r).max(re);
    }
    let exact = &embed_q2r(Quaternion::I) * &embed_q2r(Quaternion::J) == embed_q2r(Quaternion::K);
    outcome(
        worst <= ALGEBRA_TOL && exact,
        format!("max defect {worst:.2e} over 10^5 samples; i*j = k exact: {exact}"),
    )
}

fn geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_form = 0.0f64;
    for k in 0..1000u64 {
        let n = 1 + (k % 3) as usize;
        let defect = if k % 2 == 0 {
            let space = HermitianSpace::complex(n).unwrap();
            let g: CMatrix = sample_element(&GroupSpec::su(n, 1), &mut rng).unwrap();
            let z: Vec<Complex64> = (0..=n).map(|_| c(gauss(&mut rng), gauss(&mut rng))).collect();
            let w: Vec<Complex64> = (0..=n).map(|_| c(gauss(&mut rng), gauss(&mut rng))).collect();
            let before = form_eval(&space, &z, &w).unwrap();
            let after = form_eval(&space, &g.mul_vec(&z).unwrap(), &g.mul_vec(&w).unwrap()).unwrap();
            (after - before).norm() / (g.frobenius_norm().powi(2) * z.len() as f64)
        } else {
            let space = HermitianSpace::quaternionic(n).unwrap();
            let g: HMatrix = sample_element(&GroupSpec::sp(n, 1), &mut rng).unwrap();
            let z: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(&mut rng)).collect();
            let w: Vec<Quaternion> = (0..=n).map(|_| random_quaternion(&mut rng)).collect();
            let before = form_eval(&space, &z, &w).unwrap();
            let after = form_eval(&space, &g.mul_vec(&z).unwrap(), &g.mul_vec(&w).unwrap()).unwrap();
            (after - before).norm() / (g.frobenius_norm().powi(2) * z.len() as f64)
        };
        worst_form = worst_form.max(defect);
    }

    let space = HermitianSpace::complex(1).unwrap();
    let p = ProjectivePoint::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let q = ProjectivePoint::new(vec![c(1f64.sinh(), 0.0), c(1f64.cosh(), 0.0)]).unwrap();
    let rho = bergman_distance(&space, &p, &q, 1e-9).unwrap();
    // cosh(ρ/2) = |⟨p,q⟩| / √(⟨p,p⟩⟨q,q⟩) = cosh 1 on this pair
    let oracle = 2.0 * 1f64.cosh().acosh();
    let dist_err = (rho - 2.0).abs().max((rho - oracle).abs());

    let k = special_element(SpecialElement::K);
    let kinv = linalg::inverse(&k).unwrap();
    let mut worst_rot = 0.0f64;
    for s in 0..100 {
        let t = -PI + 2.0 * PI * s as f64 / 99.0;
        let conj = &(&k * &special_element(SpecialElement::R(t))) * &kinv;
        let rot = CMatrix::from_rows(&[
            vec![c(t.cos(), 0.0), c(-t.sin(), 0.0)],
            vec![c(t.sin(), 0.0), c(t.cos(), 0.0)],
        ])
        .unwrap();
        worst_rot = worst_rot.max((&conj - &rot).max_abs());
    }
    outcome(
        worst_form <= FORM_TOL && dist_err <= DISTANCE_TOL && worst_rot <= ROTATION_TOL,
        format!("form defect {worst_form:.2e}; |rho - 2| {dist_err:.2e}; K R K^-1 defect {worst_rot:.2e}"),
    )
}

/// Vectors that pair off by construction, perturbed ones, and generic ones.
fn power_sum_sample(rng: &mut ChaCha8Rng) -> (Vec<f64>, Option<bool>) {
    let r = rng.random_range(1..=6);
    match rng.random_range(0..3) {
        0 | 1 => {
            let mut a = Vec::with_capacity(r);
            while a.len() + 2 <= r && rng.random_bool(0.8) {
                let x = gauss(rng);
                a.extend([x, -x]);
            }
            a.resize(r, 0.0);
            for i in (1..a.len()).rev() {
                a.swap(i, rng.random_range(0..=i));
            }
            if rng.random_bool(0.5) {
                let i = rng.random_range(0..a.len());
                a[i] += rng.random_range(1e-3..1e-1) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                (a, Some(false))
            } else {
                (a, Some(true))
            }
        }
        _ => ((0..r).map(|_| gauss(rng)).collect(), None),
    }
}

fn power_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut disagree, mut wrong) = (0, 0);
    for _ in 0..100_000 {
        let (a, expected) = power_sum_sample(&mut rng);
        let check = odd_power_sums_check(&a, POWER_SUM_TOL);
        if !check.agree() {
            disagree += 1;
        }
        if expected.is_some_and(|e| e != check.by_pairing) {
            wrong += 1;
        }
    }
    outcome(
        disagree == 0 && wrong == 0,
        format!("{disagree} disagreements, {wrong} wrong against construction, 10^5 vectors"),
    )
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "worked example trace = 2z", Duration::from_secs(1), worked_example),
        (2, "Sp(1).SU(1,1) characterization", Duration::from_secs(10), sp1_su11),
        (
            3,
            "criterion I witnesses and certificate",
            Duration::from_secs(60),
            criterion_one,
        ),
        (4, "criterion II witnesses", Duration::from_secs(60), criterion_two),
        (5, "round-trip detection", Duration::from_secs(300), round_trips),
        (6, "rho fixture", Duration::from_secs(60), rho),
        (7, "embedding and algebra identities", Duration::from_secs(60), algebra),
        (8, "geometry suite", Duration::from_secs(60), geometry),
        (9, "odd power sums", Duration::from_secs(60), power_sums),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= budget;
        println!(
            "{} criterion {id} ({name}): {} [{:.2}s / {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !pass {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
