//! Acceptance gate: one test per release criterion, each printing a
//! single PASS/FAIL line. Thresholds marked "pinned" were frozen from
//! one-time exhaustive oracle runs and are exact minima, not tuning
//! knobs.

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prehom_cli::report::{strip_timestamp, trace_csv};
use prehom_core::actions::{altform_pullback, elementary2, sym_power_action};
use prehom_core::cubic::{b_matrix, certify_theorem14, delta_poly, disc_cubic, witness_target};
use prehom_core::invariants15::{adj_rep_matrix, certify_theorem15, InvariantPair, Rep};
use prehom_core::lie::{
    isotypic_decomposition, sl2_triple_sym3, sp4_from_b, verify_bracket_generation,
};
use prehom_core::trivector::act;
use prehom_core::{
    basis_search, box_search, decompose_trivector, quadratic_form_poly, quartic_lambda,
    target_values, AnnealParams, Decomposition, QMatrix, QScalar, QVector, Trivector,
};

fn conclude(n: u32, label: &str, failures: Vec<String>) {
    let ok = failures.is_empty();
    println!(
        "ACCEPTANCE criterion {n} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed:\n{}", failures.join("\n"));
}

fn ratio(num: i64, den: i64) -> QScalar {
    QScalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn sqrt2() -> QScalar {
    QScalar::sqrt_d(2).unwrap()
}

/// Random element of SL(2, Q) as a product of transvections.
fn random_sl2(rng: &mut ChaCha8Rng) -> QMatrix {
    let mut s = QMatrix::identity(2);
    for k in 0..3 {
        let t = ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        s = s.mul(&elementary2(k % 2 == 0, &t));
    }
    s
}

/// Random element of SL(3, Q) as a product of elementary matrices.
fn random_sl3(rng: &mut ChaCha8Rng) -> QMatrix {
    let mut s = QMatrix::identity(3);
    for _ in 0..4 {
        let i = rng.gen_range(0..3usize);
        let mut j = rng.gen_range(0..2usize);
        if j >= i {
            j += 1;
        }
        let t = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let e = QMatrix::from_fn(3, 3, |r, c| {
            if r == c {
                QScalar::one()
            } else if (r, c) == (i, j) {
                t.clone()
            } else {
                QScalar::zero()
            }
        });
        s = s.mul(&e);
    }
    s
}

fn random_gl6(rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let g = QMatrix::from_fn(6, 6, |_, _| QScalar::from_int(rng.gen_range(-3..=3)));
        if !g.det().is_zero() {
            return g;
        }
    }
}

fn random_trivector(rng: &mut ChaCha8Rng) -> Trivector {
    let coeffs: Vec<QScalar> = (0..20)
        .map(|_| QScalar::from_int(rng.gen_range(-4..=4)))
        .collect();
    Trivector::new(coeffs).unwrap()
}

#[test]
fn criterion_1_invariance_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);

    let delta = delta_poly();
    let b = b_matrix();
    for k in 0..200 {
        let s = random_sl2(&mut rng);
        let rho = sym_power_action(&s, 3).unwrap();
        if delta.substitute_linear(&rho) != *delta {
            failures.push(format!("Delta not invariant under sample {k}"));
        }
        if altform_pullback(&b, &rho).unwrap() != b {
            failures.push(format!("B not invariant under sample {k}"));
        }
    }

    let quartic = InvariantPair::cached(Rep::Sym4).unwrap();
    for k in 0..40 {
        let rho = sym_power_action(&random_sl2(&mut rng), 4).unwrap();
        if quartic.q.substitute_linear(&rho) != quartic.q
            || quartic.f.substitute_linear(&rho) != quartic.f
        {
            failures.push(format!("quartic Q or F not invariant, sample {k}"));
        }
    }
    let adj = InvariantPair::cached(Rep::AdjointSl3).unwrap();
    for k in 0..40 {
        let rho = adj_rep_matrix(&random_sl3(&mut rng)).unwrap();
        if adj.q.substitute_linear(&rho) != adj.q || adj.f.substitute_linear(&rho) != adj.f {
            failures.push(format!("adjoint Q or F not invariant, sample {k}"));
        }
    }

    for k in 0..30 {
        let g = random_gl6(&mut rng);
        let x = random_trivector(&mut rng);
        let lhs = quartic_lambda(&act(&g, &x).unwrap());
        let det2 = g.det().pow(2).unwrap();
        if lhs != &det2 * &quartic_lambda(&x) {
            failures.push(format!("lambda(g.x) != det(g)^2 lambda(x), sample {k}"));
        }
    }

    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        failures.push(format!("invariance suite took {secs:.1} s, limit 10 s"));
    }
    conclude(1, "exact invariance of Delta, B, Q, F, lambda", failures);
}

#[test]
fn criterion_2_lemma13_verification() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let rep = isotypic_decomposition(&sl2_triple_sym3()).unwrap();
    let expect: Vec<(u32, usize)> = vec![(2, 1), (4, 1), (6, 1)];
    let got: Vec<(u32, usize)> = rep.multiplicities.iter().map(|(k, v)| (*k, *v)).collect();
    if got != expect {
        failures.push(format!("multiplicities {got:?}, expected {expect:?}"));
    }
    if rep.dims != vec![3, 5, 7] {
        failures.push(format!("component dims {:?}, expected [3, 5, 7]", rep.dims));
    }

    let sp4 = sp4_from_b();
    let stack = |sets: &[&[QMatrix]]| {
        let rows: Vec<Vec<QScalar>> = sets
            .iter()
            .flat_map(|set| set.iter().map(|m| prehom_core::lie::flatten(m).to_vec()))
            .collect();
        QMatrix::from_rows(rows)
    };
    if stack(&[&sp4]).rank() != 10 {
        failures.push("dim sp(4,B) != 10".into());
    }
    let comp2 = rep.component(2).unwrap();
    let comp6 = rep.component(6).unwrap();
    let plus = stack(&[comp2, comp6]);
    if plus.rank() != 10 || stack(&[comp2, comp6, &sp4]).rank() != 10 {
        failures.push("sp(4,B) is not the sum of the 2L and 6L components".into());
    }

    let gen = verify_bracket_generation(rep.component(4).unwrap()).unwrap();
    if !gen.contains_sp4 {
        failures.push("[U1, U1] does not contain sp(4,B)".into());
    }
    if gen.span_dim != 15 {
        failures.push(format!("span of U1 and brackets is {}, not 15", gen.span_dim));
    }

    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        failures.push(format!("verification took {secs:.2} s, limit 1 s"));
    }
    conclude(2, "sl(2) module structure of the 15-dim space", failures);
}

#[test]
fn criterion_3_witness_identity() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for k in 0..100 {
        let mut num = 0i64;
        while num == 0 {
            num = rng.gen_range(-50..=50);
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=20i64)));
        let (h, e) = witness_target(&r).unwrap();
        if h.det() != QScalar::one() {
            failures.push(format!("det h != 1 for r = {r}"));
            continue;
        }
        let e_q: Vec<QScalar> = e.iter().map(|&v| QScalar::from_int(v)).collect();
        let y = h.inverse().unwrap().mul_vec(&e_q);
        if disc_cubic(&y) != QScalar::from_rational(r.clone()) {
            failures.push(format!("Delta(h^-1 e) != r for r = {r} (sample {k})"));
        }
    }
    conclude(3, "Delta(h^-1(1,0,1,0)) = r exactly", failures);
}

#[test]
fn criterion_4_certification_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();

    if certify_theorem14(&QMatrix::identity(4))
        .unwrap()
        .is_certified()
    {
        failures.push("identity wrongly certified".into());
    }
    // Images of SL(2, Q(sqrt 2)) pull Delta back to itself, so every one
    // of them must be rejected however irrational its entries look.
    let s_upper = {
        let mut s = QMatrix::identity(2);
        s[(0, 1)] = sqrt2();
        s
    };
    let s_symm = QMatrix::from_fn(2, 2, |i, j| if i == j { sqrt2() } else { QScalar::one() });
    let s_mixed = s_upper.mul(&elementary2(false, &ratio(3, 2))).mul(&s_symm);
    for (name, s) in [("upper", &s_upper), ("symm", &s_symm), ("mixed", &s_mixed)] {
        if s.det() != QScalar::one() {
            failures.push(format!("test element {name} is not in SL(2)"));
        }
        let rho = sym_power_action(s, 3).unwrap();
        if certify_theorem14(&rho).unwrap().is_certified() {
            failures.push(format!("rho({name}) wrongly certified"));
        }
    }

    let planted4 = {
        let mut g = QMatrix::identity(4);
        g[(3, 3)] = &QScalar::one() + &sqrt2();
        g
    };
    if !certify_theorem14(&planted4).unwrap().is_certified() {
        failures.push("planted diag(1,1,1,1+sqrt2) rejected".into());
    }
    let planted5 = {
        let mut g = QMatrix::identity(5);
        g[(4, 4)] = &QScalar::one() + &sqrt2();
        g
    };
    if !certify_theorem15(&planted5, Rep::Sym4).unwrap().irrational {
        failures.push("planted quartic scaling rejected".into());
    }
    let planted8 = {
        let mut g = QMatrix::identity(8);
        g[(0, 0)] = &QScalar::one() + &sqrt2();
        g
    };
    if !certify_theorem15(&planted8, Rep::AdjointSl3)
        .unwrap()
        .irrational
    {
        failures.push("planted adjoint scaling rejected".into());
    }

    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 {
        failures.push(format!("soundness suite took {secs:.1} s, limit 5 s"));
    }
    conclude(4, "identity and field-rational images rejected, plants accepted", failures);
}

fn span_eq(a: &[QVector], b: &[QVector]) -> bool {
    let rows = |set: &[QVector]| set.iter().map(|v| v.to_vec()).collect::<Vec<_>>();
    let ra = QMatrix::from_rows(rows(a)).rank();
    let rb = QMatrix::from_rows(rows(b)).rank();
    let mut both = rows(a);
    both.extend(rows(b));
    ra == 3 && rb == 3 && QMatrix::from_rows(both).rank() == 3
}

#[test]
fn criterion_5_trivector_round_trip() {
    let mut failures = Vec::new();
    let w = Trivector::standard_split();

    // The base split must come back verbatim as unit-vector bases.
    match decompose_trivector(&w).unwrap() {
        Decomposition::RealSplit { e1, e2, .. } => {
            let unit = |k: usize| -> QVector {
                (0..6)
                    .map(|i| {
                        if i == k {
                            QScalar::one()
                        } else {
                            QScalar::zero()
                        }
                    })
                    .collect()
            };
            if e1 != vec![unit(0), unit(1), unit(2)] || e2 != vec![unit(3), unit(4), unit(5)] {
                failures.push("base split bases are not the unit vectors".into());
            }
        }
        Decomposition::ComplexPair { .. } => failures.push("base split came back complex".into()),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for k in 0..50 {
        let g = random_gl6(&mut rng);
        let x = act(&g, &w).unwrap();
        if quartic_lambda(&x).signum() != 1 {
            failures.push(format!("lambda(g.w) not positive, sample {k}"));
            continue;
        }
        let (e1, e2, o1, o2) = match decompose_trivector(&x) {
            Ok(Decomposition::RealSplit {
                e1, e2, omega1, omega2, ..
            }) => (e1, e2, omega1, omega2),
            other => {
                failures.push(format!("sample {k} did not split: {other:?}"));
                continue;
            }
        };
        let g_e1: Vec<QVector> = (0..3).map(|j| g.col(j)).collect();
        let g_e2: Vec<QVector> = (3..6).map(|j| g.col(j)).collect();
        let direct = span_eq(&e1, &g_e1) && span_eq(&e2, &g_e2);
        let swapped = span_eq(&e1, &g_e2) && span_eq(&e2, &g_e1);
        if !(direct || swapped) {
            failures.push(format!("planes differ from g.E1, g.E2, sample {k}"));
        }
        if o1.add(&o2) != x {
            failures.push(format!("omega1 + omega2 != omega, sample {k}"));
        }
        for (name, o) in [("omega1", &o1), ("omega2", &o2)] {
            if !o.to_ext().wedge(&o.to_ext()).is_zero() {
                failures.push(format!("{name} not decomposable, sample {k}"));
            }
        }
    }
    conclude(5, "eigenplane split tracks the group action", failures);
}

#[test]
fn criterion_6_density_exhibits() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // (a) indefinite ternary form with an irrational coefficient. The
    // R = 80 errors below are the true minima over the full box, pinned
    // by an exhaustive oracle scan (cross-checked against an
    // independent vectorized enumeration); target 0 cannot do better
    // than 0.0387 at this radius.
    let mut form = QMatrix::identity(3);
    form[(2, 2)] = -sqrt2();
    let poly = quadratic_form_poly(&form);
    let value = prehom_core::ExactValue::new(&poly, None).unwrap();
    let targets = [0.0, 1.0, -3.0, std::f64::consts::PI];
    let pinned = [0.03867196751235724, 0.0, 0.0022407178330468014, 0.013803963670977026];
    let mut prev = [f64::INFINITY; 4];
    for r in [5i64, 10, 20, 40, 80] {
        let reports = box_search("BASELINE", &value, r, &targets, 1e-12).unwrap();
        for (i, rep) in reports.iter().enumerate() {
            if rep.error > prev[i] {
                failures.push(format!(
                    "target {} error rose from {} to {} at R = {r}",
                    targets[i], prev[i], rep.error
                ));
            }
            prev[i] = rep.error;
            if r == 80 && (rep.error - pinned[i]).abs() > 1e-9 {
                failures.push(format!(
                    "target {} at R = 80: error {} differs from pinned {}",
                    targets[i], rep.error, pinned[i]
                ));
            }
        }
    }

    // (b) pulled-back discriminant under a certified element; five
    // irrational targets picked by the same oracle protocol. No fixed
    // threshold, only monotonicity and median improvement.
    let mut g = QMatrix::identity(4);
    g[(3, 3)] = &QScalar::one() + &sqrt2();
    assert!(certify_theorem14(&g).unwrap().is_certified());
    let value_b = prehom_core::ExactValue::new(delta_poly(), Some(&g)).unwrap();
    let pi = std::f64::consts::PI;
    let targets_b = [pi, -pi, 1.7320508075688772, 2.23606797749979, 4.0 * pi];
    let mut err5 = [0.0; 5];
    let mut err40 = [0.0; 5];
    let mut prev_b = [f64::INFINITY; 5];
    let dir = std::env::temp_dir().join(format!("prehom-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for r in [5i64, 10, 20, 40] {
        let reports = box_search("CUBIC4", &value_b, r, &targets_b, 1e-12).unwrap();
        let path = dir.join(format!("cubic4-trace-r{r}.csv"));
        std::fs::write(&path, trace_csv(&reports)).unwrap();
        if std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0) == 0 {
            failures.push(format!("empty trace file for R = {r}"));
        }
        for (i, rep) in reports.iter().enumerate() {
            if rep.error > prev_b[i] {
                failures.push(format!(
                    "pulled Delta: target {} error rose at R = {r}",
                    targets_b[i]
                ));
            }
            prev_b[i] = rep.error;
            if r == 5 {
                err5[i] = rep.error;
            }
            if r == 40 {
                err40[i] = rep.error;
            }
        }
    }
    let mut ratios: Vec<f64> = err5
        .iter()
        .zip(&err40)
        .map(|(a, b)| if *b > 0.0 { a / b } else { f64::INFINITY })
        .collect();
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if ratios[2] < 2.0 {
        failures.push(format!(
            "median improvement {:.2} over R = 5 is below 2 (ratios {ratios:?})",
            ratios[2]
        ));
    }

    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("density exhibits took {secs:.0} s, limit 60 s"));
    }
    conclude(6, "box errors shrink with radius", failures);
}

#[test]
fn criterion_7_planted_basis_search() {
    let mut failures = Vec::new();
    let w = Trivector::standard_split();
    let x = w.to_f64_coeffs();
    // Seeds 0..20; the plant for seed s applies five random row moves
    // drawn from ChaCha8(1000 + s) to the identity. Calibrated once:
    // all twenty runs recover objective 0 within 10^5 evaluations (the
    // slowest needs 7063).
    let mut hits = 0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let mut u = vec![vec![0i64; 6]; 6];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        for _ in 0..5 {
            let i = rng.gen_range(0..6usize);
            let mut j = rng.gen_range(0..5usize);
            if j >= i {
                j += 1;
            }
            let s: i64 = if rng.gen::<bool>() { 1 } else { -1 };
            let row_j = u[j].clone();
            for (a, b) in u[i].iter_mut().zip(&row_j) {
                *a += s * b;
            }
        }
        let u0 = QMatrix::from_fn(6, 6, |i, j| QScalar::from_int(u[i][j]));
        let y: Vec<f64> = target_values(&w, &u0)
            .unwrap()
            .iter()
            .map(|v| v.to_f64())
            .collect();
        let rep = basis_search(&x, &y, 1e-9, 100_000, seed, &AnnealParams::default()).unwrap();
        if rep.objective <= 1e-9 {
            hits += 1;
        } else {
            failures.push(format!(
                "seed {seed}: objective {} after {} evaluations",
                rep.objective, rep.evaluations
            ));
        }
    }
    if hits < 18 {
        failures.push(format!("only {hits}/20 seeded runs recovered the plant"));
    } else {
        failures.clear();
    }
    conclude(7, "planted bases recovered in >= 18/20 seeded runs", failures);
}

#[test]
fn criterion_8_determinism() {
    let mut failures = Vec::new();
    let dir = std::env::temp_dir().join(format!("prehom-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let configs: [(&str, Vec<&str>); 4] = [
        ("box", vec!["search", "--set", "case=CUBIC4", "--set", "targets=-4,7", "--set", "radius=4"]),
        (
            "walk",
            vec![
                "search", "--set", "case=CUBIC4", "--set", "method=walk", "--set", "x0=0,1,1,0",
                "--set", "targets=7,100", "--set", "budget=400", "--set", "seed=3",
            ],
        ),
        (
            "basis",
            vec![
                "search", "--set", "case=TRIVECTOR", "--set", "y=1,0,0,0,0,0,1,0,0,0", "--set",
                "budget=20000", "--set", "seed=5",
            ],
        ),
        (
            "baseline",
            vec![
                "baseline", "--set", "d=2", "--set", "diag=1,1,-1*sqrt(2)", "--set",
                "targets=0,pi", "--set", "radius=16",
            ],
        ),
    ];
    for (name, base) in &configs {
        let path = dir.join(format!("{name}.json"));
        let out_arg = format!("out={}", path.display());
        let mut runs = Vec::new();
        for threads in ["1", "8", "1"] {
            let mut args: Vec<&str> = vec!["--threads", threads];
            args.extend(base.iter().copied());
            args.push("--set");
            args.push(&out_arg);
            let status = Command::new(env!("CARGO_BIN_EXE_prehom"))
                .args(&args)
                .output()
                .expect("binary runs");
            if !status.status.success() {
                failures.push(format!("{name} run failed under --threads {threads}"));
            }
            runs.push(strip_timestamp(&std::fs::read_to_string(&path).unwrap()));
        }
        if runs[0] != runs[1] || runs[0] != runs[2] {
            failures.push(format!("{name} reports differ across reruns or thread counts"));
        }
    }
    conclude(8, "byte-identical reports modulo timestamp", failures);
}
