//! Acceptance gate: every criterion at its stated tolerance, one line each.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use dualframe::cli::{self, RunConfig};
use dualframe::generators::{
    make_dual, make_dual_special, make_dual_unchecked, quincunx_tent_generator, radial_profile_generator,
    smooth_generator, BandlimitedGenerator, DualCoefficients, ProfileKind,
};
use dualframe::lattice::{
    hexagonal_lattice_2d, packing_density, special_lattice, Lattice, LatticePair, SeparationMethod,
};
use dualframe::matrix::{build_associated_norm, AssociatedNorm, DilationMatrix, NormOptions};
use dualframe::verification::{check_calderon, check_cross_terms, check_partition, SampleSpec};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn config(name: &str) -> RunConfig {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "configs", name].iter().collect();
    RunConfig::load(&p).unwrap()
}

fn norm_of(rows: &[Vec<f64>]) -> Arc<AssociatedNorm> {
    let d = DilationMatrix::from_rows(rows).unwrap();
    Arc::new(build_associated_norm(&d, &NormOptions::default()).unwrap())
}

fn quincunx() -> Vec<Vec<f64>> {
    vec![vec![1.0, -1.0], vec![1.0, 1.0]]
}

fn skew() -> Vec<Vec<f64>> {
    vec![vec![3.0, -3.0], vec![1.0, 0.0]]
}

fn dyadic() -> Vec<Vec<f64>> {
    vec![vec![2.0, 0.0], vec![0.0, 2.0]]
}

fn half_lattice() -> LatticePair {
    LatticePair::from_gamma(Lattice::scaled_integer(2, 0.5).unwrap())
}

fn quincunx_pair_coeffs() -> DualCoefficients {
    DualCoefficients::new(vec![0.0, 0.0, 1.0, 2.0, 2.0]).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let r = cli::verify(&config("quincunx_tent.json")).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let v = r.verification.unwrap();
    let pass = (v.c1 - 4.0 / 3.0).abs() <= 1e-6
        && (v.c2 - 4.0).abs() <= 1e-6
        && v.sample_count == 10_000
        && v.all_passed
        && secs <= 10.0;
    Outcome {
        id: 1,
        name: "quincunx frame bounds",
        pass,
        detail: format!("C1 = {:.12}, C2 = {:.12}, {secs:.2} s", v.c1, v.c2),
    }
}

fn criterion_2() -> Outcome {
    let norm = norm_of(&skew());
    let expected = DMatrix::from_row_slice(2, 2, &[28.0 / 9.0, 16.0 / 9.0, 16.0 / 9.0, 8.0 / 3.0]);
    let k_err = (norm.k() - &expected).abs().max();
    let slack = norm.certificate_slack(1.03);
    let s65 = 65f64.sqrt();
    let (hi, lo) = ((26.0 + 2.0 * s65) / 9.0, (26.0 - 2.0 * s65) / 9.0);
    let eig = norm.eig_lambda();
    let eig_err = (eig[0] - hi).abs().max((eig[1] - lo).abs());
    let pass = norm.order() == 2 && k_err <= 1e-12 && norm.lambda() >= 1.03 && slack >= -1e-9 && eig_err <= 1e-10;
    Outcome {
        id: 2,
        name: "associated norm golden data",
        pass,
        detail: format!(
            "k = {}, |K - K*| = {k_err:.1e}, lambda = {:.6}, slack(1.03) = {slack:.3e}, eig err = {eig_err:.1e}",
            norm.order(),
            norm.lambda()
        ),
    }
}

fn timed_partition(g: &BandlimitedGenerator) -> (f64, f64) {
    let t = Instant::now();
    let e = check_partition(g, &SampleSpec::for_generator(g, 10_000, 42)).unwrap();
    (e, t.elapsed().as_secs_f64())
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let (e, s) = timed_partition(&quincunx_tent_generator());
    pass &= e <= 1e-8 && s <= 5.0;
    parts.push(format!("tent {e:.1e}"));
    for rows in [skew(), quincunx()] {
        let norm = norm_of(&rows);
        for kind in ProfileKind::ALL {
            let (e, s) = timed_partition(&radial_profile_generator(norm.clone(), 1, kind).unwrap());
            pass &= e <= 1e-8 && s <= 5.0;
            parts.push(format!("{kind:?} {e:.1e}"));
        }
    }
    let (e, s) = timed_partition(&smooth_generator(norm_of(&dyadic()), 1, 2).unwrap());
    pass &= e <= 1e-12 && s <= 5.0;
    parts.push(format!("smooth {e:.1e}"));
    Outcome {
        id: 3,
        name: "partition of unity",
        pass,
        detail: parts.join(", "),
    }
}

fn criterion_4() -> Outcome {
    let mut pairs = vec![(
        "quincunx tent",
        make_dual(&quincunx_tent_generator(), &quincunx_pair_coeffs(), &half_lattice()).unwrap(),
    )];
    for (label, rows) in [("quincunx", quincunx()), ("skew", skew()), ("2I", dyadic())] {
        let norm = norm_of(&rows);
        let lat = special_lattice(&norm, 1);
        let radial = radial_profile_generator(norm.clone(), 1, ProfileKind::Cosine).unwrap();
        let smooth = smooth_generator(norm.clone(), 1, 2).unwrap();
        pairs.push((label, make_dual_special(&radial, &lat).unwrap()));
        pairs.push((label, make_dual_special(&smooth, &lat).unwrap()));
    }
    let mut pass = true;
    let mut worst_cal: f64 = 0.0;
    let mut worst_cross: f64 = 0.0;
    for (_, p) in &pairs {
        let cal = check_calderon(p, &SampleSpec::for_generator(&p.psi, 10_000, 42)).unwrap();
        let cross = check_cross_terms(p, &SampleSpec::new(p.phi.support().clone(), 10_000, 42)).unwrap();
        worst_cal = worst_cal.max(cal);
        worst_cross = worst_cross.max(cross);
        pass &= cal <= 1e-8 && cross == 0.0;
    }
    let tampered = DualCoefficients::unchecked(vec![0.0, 0.0, 1.0, 3.0, 2.0]).unwrap();
    let bad = make_dual_unchecked(&quincunx_tent_generator(), &tampered, &half_lattice()).unwrap();
    let bad_cal = check_calderon(&bad, &SampleSpec::for_generator(&bad.psi, 10_000, 42)).unwrap();
    pass &= bad_cal > 1e-2;
    Outcome {
        id: 4,
        name: "duality conditions",
        pass,
        detail: format!(
            "{} pairs: Calderon <= {worst_cal:.1e}, cross terms <= {worst_cross:.1e}; tampered Calderon {bad_cal:.3e}",
            pairs.len()
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut tried = 0;
    while tried < 100 {
        let n = rng.gen_range(1..=4);
        let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-2.0..2.0));
        let Ok(l) = Lattice::new(m) else { continue };
        if l.determinant() < 1e-3 {
            continue;
        }
        worst = worst.max((l.determinant() * l.dual().determinant() - 1.0).abs());
        tried += 1;
    }
    let mut analytic = true;
    for rows in [quincunx(), skew(), dyadic()] {
        let norm = norm_of(&rows);
        let psi = radial_profile_generator(norm.clone(), 1, ProfileKind::Cosine).unwrap();
        let pair = make_dual_special(&psi, &special_lattice(&norm, 1)).unwrap();
        let sep = pair.separation.unwrap();
        analytic &= sep.separated && matches!(sep.method, SeparationMethod::Analytic | SeparationMethod::NoCandidates);
    }
    let d_q = special_lattice(&norm_of(&quincunx()), 1).d_gamma();
    let pass = worst <= 1e-12 && analytic && (d_q - 0.125).abs() <= 1e-12;
    Outcome {
        id: 5,
        name: "lattice algebra",
        pass,
        detail: format!("max |d d* - 1| = {worst:.1e}, analytic separation {analytic}, quincunx d(Gamma) = {d_q}"),
    }
}

fn criterion_6() -> Outcome {
    let sq = packing_density(&Lattice::scaled_integer(2, 2.0).unwrap(), 1.0);
    let hex = packing_density(&hexagonal_lattice_2d(1.0), 1.0);
    let pi = std::f64::consts::PI;
    let errs = [
        (sq - pi / 4.0).abs(),
        (hex - pi / 12f64.sqrt()).abs(),
        (hex / sq - 2.0 / 3f64.sqrt()).abs(),
    ];
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    Outcome {
        id: 6,
        name: "packing numbers",
        pass: worst <= 1e-12,
        detail: format!("square {sq:.15}, hexagonal {hex:.15}, ratio {:.15}", hex / sq),
    }
}

fn criterion_7() -> Outcome {
    let mats = [
        quincunx(),
        skew(),
        vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![2.0, 0.0, 0.0]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = 0;
    let total = 100_000;
    for i in 0..total {
        let rows = &mats[i % mats.len()];
        let n = rows.len();
        let norm = norm_of(rows);
        let b = DMatrix::from_fn(n, n, |r, c| rows[c][r]);
        let b_inv = b.clone().try_inverse().unwrap();
        let dir = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        let x = dir * 10f64.powf(rng.gen_range(-4.0..4.0));
        if x.norm() == 0.0 {
            continue;
        }
        let j = norm.dilation_index(&x).unwrap();
        let mut y = x.clone();
        for _ in 0..j.abs() {
            y = if j > 0 { &b * &y } else { &b_inv * &y };
        }
        let star = |v: &DVector<f64>| v.dot(&(norm.k() * v)).sqrt();
        if !(star(&y) <= 1.0 && star(&(&b * &y)) > 1.0) {
            failures += 1;
        }
    }
    Outcome {
        id: 7,
        name: "dilation index",
        pass: failures == 0,
        detail: format!("{failures} failures in {total}"),
    }
}

fn transform_run(cfg: &RunConfig) -> (f64, f64) {
    let t = Instant::now();
    let r = cli::transform(cfg).unwrap();
    (r.transform.unwrap().result.rel_err, t.elapsed().as_secs_f64())
}

fn refined(mut cfg: RunConfig) -> RunConfig {
    let tc = cfg.transform.as_mut().unwrap();
    tc.grid.points_per_axis *= 2;
    tc.k_window *= 2;
    cfg
}

fn criterion_8() -> Outcome {
    let one = config("transform_1d.json");
    let two = config("transform_quincunx.json");
    let (e1, s1) = transform_run(&one);
    let (e2, s2) = transform_run(&two);
    let (e1r, _) = transform_run(&refined(one));
    let (e2r, _) = transform_run(&refined(two));
    let pass = e1 <= 1e-3 && s1 <= 30.0 && e2 <= 1e-2 && s2 <= 120.0 && e1r <= 1.1 * e1 && e2r <= 1.1 * e2;
    Outcome {
        id: 8,
        name: "reconstruction demo",
        pass,
        detail: format!(
            "1-D {e1:.3e} ({s1:.2} s, refined {e1r:.3e}); quincunx {e2:.3e} ({s2:.2} s, refined {e2r:.3e})"
        ),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sets: Vec<DualCoefficients> = (1..=4).map(DualCoefficients::special).collect();
    sets.push(quincunx_pair_coeffs());
    sets.push(DualCoefficients::new(vec![0.0, 1.0, 2.0]).unwrap());
    for _ in 0..20 {
        let d = rng.gen_range(1..=5usize);
        let mut v = vec![0.0; 2 * d + 1];
        v[d] = 1.0;
        for j in 1..=d {
            let t: f64 = rng.gen_range(-3.0..5.0);
            v[d + j] = t;
            v[d - j] = 2.0 - t;
        }
        sets.push(DualCoefficients::new(v).unwrap());
    }
    let mut worst: f64 = 0.0;
    for set in &sets {
        let d = set.d() as usize;
        for _ in 0..100 {
            let x: Vec<f64> = (0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut lhs = 0.0;
            for (j, xj) in x.iter().enumerate() {
                for (l, xl) in x.iter().enumerate() {
                    lhs += set.get(l as i32 - j as i32) * xj * xl;
                }
            }
            let rhs = x.iter().sum::<f64>().powi(2);
            worst = worst.max((lhs - rhs).abs()).max((set.symmetry_form(&x) - rhs).abs());
        }
    }
    Outcome {
        id: 9,
        name: "coefficient symmetry identity",
        pass: worst <= 1e-12,
        detail: format!("{} coefficient sets x 100 vectors, max error {worst:.1e}", sets.len()),
    }
}

fn main() {
    let outcomes = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        println!(
            "criterion {} {}: {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", outcomes.len());
}
