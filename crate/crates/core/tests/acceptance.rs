//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

use std::f64::consts::PI;
use std::process::Command;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use schlicht::extremals::{
    build_extremal, corpus, find_m_star, m_threshold, oros_polynomial, r_bound, witness_grid, Family,
};
use schlicht::geometry::{
    convexity_margin, membership_scan, pfaltzgraff_convexity_check, preservation_check, sm_level, valence_integral,
    ClassSpec, Functional, MaMindaFn, Preset, RegionSpec, TOL_CLIPPED, TOL_EXACT,
};
use schlicht::operators::{bernardi, kim_merkes, libera, OperatorSpec};
use schlicht::proof_lab::{ineq32_margin, phi, phi_boundary, scan_phi_min, threshold, Edge, ProofParams};
use schlicht::{EvaluationGrid, TruncatedSeries};

type Outcome = Result<String, String>;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn sm_corpus(level: f64) -> Vec<(String, TruncatedSeries)> {
    [Family::Poly, Family::Expstar, Family::Blaschke]
        .into_iter()
        .flat_map(|fam| corpus(fam, level, 128).unwrap())
        .map(|m| (format!("{}:{}", m.family, m.label), m.series))
        .collect()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok { Ok(detail) } else { Err(detail) }
}

fn constants() -> Outcome {
    let m_star = find_m_star().map_err(|e| e.to_string())?;
    let residual = oros_polynomial(m_star).abs();
    let m1 = m_threshold(1);
    let detail = format!("M* = {m_star:.12}, |octic(M*)| = {residual:.1e}, M_1 = {m1:.12}");
    let ok = (0.4123..=0.4133).contains(&m_star)
        && residual <= 1e-10
        && (m1 - 0.414213562).abs() <= 1e-9
        && m_star < m1
        && m1 < 0.5;
    check(ok, detail)
}

fn convexity_of_bernardi_images() -> Outcome {
    let grid = EvaluationGrid::default_grid();
    let mut worst = f64::INFINITY;
    let mut count = 0;
    let mut failures = Vec::new();
    for cc in 1..=3u32 {
        let level = 0.95 * m_threshold(cc);
        for (label, f) in sm_corpus(level) {
            let big = bernardi(&f, cc).map_err(|e| e.to_string())?;
            let (margin, _, _) = convexity_margin(&big, &grid).map_err(|e| e.to_string())?;
            worst = worst.min(margin);
            count += 1;
            if margin <= 0.0 {
                failures.push(format!("c={cc} {label}: {margin:.3e}"));
            }
        }
    }
    check(count >= 18 && failures.is_empty(), format!("{count} cases, min margin {worst:.6e} {failures:?}"))
}

fn sm_levels_of_bernardi_images() -> Outcome {
    let grid = EvaluationGrid::default_grid();
    let mut worst = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    for level in [0.2, 0.4, 0.6] {
        for (label, f) in sm_corpus(level) {
            for cc in 0..=3u32 {
                let big = bernardi(&f, cc).map_err(|e| e.to_string())?;
                let (got, _, _) = sm_level(&big, &grid).map_err(|e| e.to_string())?;
                worst = worst.max(got - level);
                if got > level + 1e-9 {
                    failures.push(format!("M={level} c={cc} {label}: {got}"));
                }
            }
        }
    }
    check(failures.is_empty(), format!("max level excess {worst:.3e} {failures:?}"))
}

fn koebe_primitive_valence() -> Outcome {
    let koebe = TruncatedSeries::koebe(128);
    let mut parts = Vec::new();
    let mut ok = true;
    for cc in 0..=2usize {
        let integrand = if cc == 0 { koebe.shift_down(1).map_err(|e| e.to_string())? } else { koebe.shift_up(cc - 1) };
        let k = integrand.integrate_from_zero();
        let v = valence_integral(&k, 0.9, 4096).map_err(|e| e.to_string())?;
        let class = ClassSpec::starlike().with_valence(cc as u32 + 1).map_err(|e| e.to_string())?;
        let scan = membership_scan(&k, &class, &EvaluationGrid::default_grid()).map_err(|e| e.to_string())?;
        ok &= (v - (1.0 + cc as f64)).abs() <= 1e-6 && scan.passed();
        parts.push(format!("c={cc}: valence {v:.9}, margin {:.3e}", scan.min_margin));
    }
    check(ok, parts.join("; "))
}

fn extremal_witnesses() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for level in [0.55, 0.6, 0.75] {
        let w = build_extremal(level).map_err(|e| e.to_string())?;
        let radii: Vec<f64> = witness_grid(w.z1_modulus, 4096)
            .map_err(|e| e.to_string())?
            .radii()
            .iter()
            .copied()
            .filter(|&r| r >= w.z1_modulus - 0.01)
            .collect();
        let grid = EvaluationGrid::new(radii, 4096).map_err(|e| e.to_string())?;
        let (margin, _, _) = convexity_margin(&w.big_f0, &grid).map_err(|e| e.to_string())?;
        ok &= w.z1_modulus < 1.0 && w.lambda_at_z1 <= 1e-10 && margin < 0.0;
        if level == 0.6 {
            ok &= w.m == 3 && (w.z1_modulus - (26.0f64 / 27.0).sqrt()).abs() <= 1e-12;
        }
        parts.push(format!(
            "M={level}: m={}, |z1|={:.13}, |Lambda|={:.1e}, margin {margin:.3e}",
            w.m, w.z1_modulus, w.lambda_at_z1
        ));
    }
    check(ok, parts.join("; "))
}

fn phi_machinery() -> Outcome {
    let p = ProofParams::new(1, 0.41).map_err(|e| e.to_string())?;
    let scan = scan_phi_min(&p, 2001).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut edge_err = 0.0f64;
    for _ in 0..1000 {
        let cc = rng.random_range(0..=4u32);
        let m = rng.random_range(0.001..1.0) * threshold(cc);
        let p = ProofParams::new(cc, m).map_err(|e| e.to_string())?;
        let s = rng.random_range(-1.0..=1.0);
        for edge in Edge::ALL {
            let (x, y) = edge.point(s);
            edge_err = edge_err.max((phi_boundary(edge, s, &p) - phi(x, y, &p)).abs());
        }
    }
    let mut at_threshold = 0.0f64;
    let mut expansion = 0.0f64;
    for cc in 0..=4u32 {
        at_threshold = at_threshold.max(ineq32_margin(cc, threshold(cc)).abs());
        for _ in 0..200 {
            let m: f64 = rng.random_range(0.0..1.0);
            let cf = cc as f64;
            expansion = expansion.max((ineq32_margin(cc, m) - (1.0 - 2.0 * cf * m - m * m)).abs());
        }
    }
    let detail = format!(
        "phi min {:.6e}, edge error {edge_err:.1e}, margin at M_c {at_threshold:.1e}, expansion error {expansion:.1e}",
        scan.min_value
    );
    check(scan.min_value > 0.0 && edge_err <= 1e-12 && at_threshold <= 1e-12 && expansion <= 1e-14, detail)
}

fn presets_preserved() -> Outcome {
    let presets = [
        Preset::StarlikeOrder { alpha: 0.25 },
        Preset::StronglyStarlike { beta: 0.5 },
        Preset::Janowski { a: 0.5, b: -0.5 },
        Preset::BoundedQuotient { alpha: 1.0, beta: 0.6 },
        Preset::Spiral { beta: 0.3 },
        Preset::MaMinda { psi: MaMindaFn::Sin },
    ];
    let grid = EvaluationGrid::default_grid();
    let mut tested = 0;
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for preset in presets {
        let class = preset.class().map_err(|e| e.to_string())?;
        let tol = if class.region.is_polygon() { TOL_CLIPPED } else { TOL_EXACT };
        let psi = preset.psi_series(128).map_err(|e| e.to_string())?.expect("starlike-type preset");
        let mut members: Vec<(String, TruncatedSeries)> = [0.5, 0.9]
            .into_iter()
            .map(|t| {
                let f = TruncatedSeries::from_starlike_quotient(&psi.dilate(c(t))).unwrap();
                (format!("psi({t}z)"), f)
            })
            .collect();
        members.extend(sm_corpus(0.5));
        for (label, f) in members {
            for cc in 0..=2u32 {
                let op = OperatorSpec::Bernardi { c: cc };
                let (before, after) = preservation_check(&f, &class, &op, &grid).map_err(|e| e.to_string())?;
                if !before.passed() {
                    break;
                }
                tested += 1;
                worst = worst.min(after.min_margin);
                if after.min_margin <= -tol {
                    failures.push(format!("{preset} c={cc} {label}: {:.3e}", after.min_margin));
                }
            }
        }
    }
    check(tested > 0 && failures.is_empty(), format!("{tested} cases, min margin {worst:.3e} {failures:?}"))
}

fn section_five_operators() -> Outcome {
    let grid = EvaluationGrid::default_grid();
    let mut parts = Vec::new();
    let mut ok = true;
    let koebe = TruncatedSeries::koebe(128);
    for beta in [c(0.5), c(-1.0), Complex64::new(0.3, 0.4)] {
        let image = kim_merkes(&koebe, beta).map_err(|e| e.to_string())?;
        let scan = membership_scan(&image, &ClassSpec::starlike(), &grid).map_err(|e| e.to_string())?;
        ok &= scan.min_margin > -1e-9;
        parts.push(format!("kim-merkes {beta}: {:.3e}", scan.min_margin));
    }
    let f = corpus(Family::Pvalent, 0.5, 128).map_err(|e| e.to_string())?.remove(0).series;
    let class = ClassSpec::new(Functional::StarlikeQuotient, RegionSpec::right_of(1.0), 2).map_err(|e| e.to_string())?;
    let op = OperatorSpec::KumarShukla { p: 2, alpha: 2, c: 1 };
    let (_, after) = preservation_check(&f, &class, &op, &grid).map_err(|e| e.to_string())?;
    ok &= after.min_margin > -1e-9;
    parts.push(format!("kumar-shukla: {:.3e}", after.min_margin));
    let geometric = TruncatedSeries::from_fn(1, 128, |_| c(1.0));
    let (premise, after) = pfaltzgraff_convexity_check(&geometric, 0.5, &grid).map_err(|e| e.to_string())?;
    ok &= premise.min_margin > -1e-9 && after.min_margin > -1e-9;
    parts.push(format!("pfaltzgraff: premise {:.3e}, image {:.3e}", premise.min_margin, after.min_margin));
    check(ok, parts.join("; "))
}

fn r_bound_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut violations = 0;
    for _ in 0..1000 {
        let m: f64 = rng.random_range(f64::EPSILON..1.0);
        if r_bound(m).map_err(|e| e.to_string())? >= m {
            violations += 1;
        }
    }
    let r = r_bound(0.5).map_err(|e| e.to_string())?;
    let grid = EvaluationGrid::default_grid();
    let mut worst = f64::NEG_INFINITY;
    for (_, f) in sm_corpus(0.5) {
        let big = libera(&f).map_err(|e| e.to_string())?;
        let (level, _, _) = sm_level(&big, &grid).map_err(|e| e.to_string())?;
        worst = worst.max(level);
    }
    let detail = format!("{violations} violations of R(M) < M, R(0.5) = {r:.9}, max libera level {worst:.9}");
    check(violations == 0 && (r - 0.350781).abs() <= 1e-5 && worst <= r + 1e-6, detail)
}

fn random_series(rng: &mut StdRng, lowest_power: usize, len: usize, damping: f64) -> TruncatedSeries {
    let coeffs = (0..len)
        .map(|n| {
            let z = Complex64::from_polar(rng.random_range(0.0..1.0f64).sqrt(), rng.random_range(0.0..2.0 * PI));
            z * damping.powi(n as i32)
        })
        .collect();
    TruncatedSeries::new(lowest_power, coeffs).unwrap()
}

fn relative_diff(a: &TruncatedSeries, b: &TruncatedSeries) -> f64 {
    let scale = b.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max);
    a.max_coeff_diff(b) / scale
}

fn determinism_and_round_trips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let len = rng.random_range(2..=128usize);
        let p = rng.random_range(0..3usize);
        let f = random_series(&mut rng, p, len, 1.0);
        let back = f.differentiate().integrate_from_zero();
        let expect = &f - &TruncatedSeries::constant(f.coeff(0), f.order());
        worst = worst.max(relative_diff(&back, &expect));

        let mut u = random_series(&mut rng, 0, len, 0.5);
        u = &u - &TruncatedSeries::constant(u.coeff(0) - c(1.0), u.order());
        let back = u.log_unit().unwrap().exp_series();
        worst = worst.max(relative_diff(&back, &u));

        let back = f.multiply(&u).divide(&u).unwrap();
        worst = worst.max(relative_diff(&back, &f.truncate(back.order()).unwrap()));
    }
    let exe = env!("CARGO_BIN_EXE_schlicht");
    let args = ["check", "--class", "sm:0.6", "--preset", "poly:3", "--M", "0.6"];
    let runs: Vec<Vec<u8>> = ["0", "1", "4"]
        .into_iter()
        .map(|threads| Command::new(exe).args(args).env("SCHLICHT_THREADS", threads).output().unwrap().stdout)
        .collect();
    let identical = !runs[0].is_empty() && runs.windows(2).all(|w| w[0] == w[1]);
    check(worst <= 1e-12 && identical, format!("round-trip error {worst:.1e}, CLI output identical: {identical}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("constants", constants),
        ("convexity of Bernardi images of S_M", convexity_of_bernardi_images),
        ("S_M level preserved by Bernardi", sm_levels_of_bernardi_images),
        ("valence of Koebe primitives", koebe_primitive_valence),
        ("extremal witnesses", extremal_witnesses),
        ("phi machinery", phi_machinery),
        ("Ma-Minda presets preserved", presets_preserved),
        ("Kim-Merkes, Kumar-Shukla, Pfaltzgraff", section_five_operators),
        ("R bound", r_bound_suite),
        ("determinism and round trips", determinism_and_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
