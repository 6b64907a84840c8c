//! Acceptance sweep: every release-gating check in one target, one
//! pass/fail line per criterion. Covers planted-structure recovery at
//! scale, the catalog oracles, certificates, the negative control,
//! byte-level determinism of the CLI, and scale invariance.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wedderburn::{
    canonical_structure, decompose, generate_planted, identity, named_instance, verify_claim,
    verify_decomposition, CMatrix, Tolerance, VerificationReport, WedderburnDecomposition,
};

const TOL: Tolerance = Tolerance {
    zero: 1e-12,
    rel: 1e-9,
    eig_cluster: 1e-8,
};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_wedderburn")
}

/// Draw a structure with 1–4 classes, p,q ≤ 4, total dimension ≤ 24.
fn random_structure(rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    loop {
        let classes = rng.random_range(1..=4usize);
        let st: Vec<(usize, usize)> = (0..classes)
            .map(|_| (rng.random_range(1..=4usize), rng.random_range(1..=4usize)))
            .collect();
        if st.iter().map(|&(p, q)| p * q).sum::<usize>() <= 24 {
            return st;
        }
    }
}

struct PlantedRun {
    seed: u64,
    planted: Vec<(usize, usize)>,
    d: WedderburnDecomposition,
    report: VerificationReport,
}

struct Sweep {
    runs: Vec<PlantedRun>,
    elapsed: Duration,
}

/// Fifty planted instances, seeds 0–49, shared across criteria.
fn planted_sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let runs = (0..50u64)
            .map(|seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(999);
                let planted = random_structure(&mut rng);
                let inst = generate_planted(&planted, 2, seed)
                    .unwrap_or_else(|e| panic!("seed {seed}: generation failed: {e}"));
                let d = decompose(&inst.generators, inst.dim_h(), TOL)
                    .unwrap_or_else(|e| panic!("seed {seed}: decompose failed: {e}"));
                let report = verify_decomposition(&inst.generators, &d, TOL)
                    .unwrap_or_else(|e| panic!("seed {seed}: verify failed: {e}"));
                PlantedRun {
                    seed,
                    planted,
                    d,
                    report,
                }
            })
            .collect();
        Sweep {
            runs,
            elapsed: start.elapsed(),
        }
    })
}

/// Catalog instances decomposed once and shared across criteria.
fn named_runs() -> &'static Vec<(String, WedderburnDecomposition, VerificationReport)> {
    static RUNS: OnceLock<Vec<(String, WedderburnDecomposition, VerificationReport)>> =
        OnceLock::new();
    RUNS.get_or_init(|| {
        let mut names = vec!["s3_regular".to_string()];
        names.extend((2..=6).map(|n| format!("full_{n}")));
        names.extend((1..=8).map(|n| format!("scalars_{n}")));
        names.extend((1..=6).map(|n| format!("diag_{n}")));
        names
            .into_iter()
            .map(|name| {
                let inst = named_instance(&name).unwrap();
                let d = decompose(&inst.generators, inst.dim_h, TOL)
                    .unwrap_or_else(|e| panic!("{name}: decompose failed: {e}"));
                let report = verify_decomposition(&inst.generators, &d, TOL)
                    .unwrap_or_else(|e| panic!("{name}: verify failed: {e}"));
                (name, d, report)
            })
            .collect()
    })
}

#[test]
fn criterion_01_planted_round_trip() {
    let sweep = planted_sweep();
    let mut worst = 0.0f64;
    for run in &sweep.runs {
        assert_eq!(
            run.d.structure(),
            canonical_structure(&run.planted),
            "seed {}: planted {:?} not recovered",
            run.seed,
            run.planted
        );
        assert!(
            run.report.max_block_residual <= 1e-8,
            "seed {}: block residual {:.3e} above 1e-8",
            run.seed,
            run.report.max_block_residual
        );
        assert!(run.report.passed, "seed {}: verification failed", run.seed);
        worst = worst.max(run.report.max_block_residual);
    }
    assert!(
        sweep.elapsed < Duration::from_secs(30),
        "sweep took {:?}, budget is 30s",
        sweep.elapsed
    );
    println!(
        "criterion 1: PASS — 50/50 structures recovered, worst block residual {:.3e}, elapsed {:?}",
        worst, sweep.elapsed
    );
}

#[test]
fn criterion_02_full_matrix_algebras() {
    for n in 2..=6usize {
        let (_, d, report) = named_runs()
            .iter()
            .find(|(name, _, _)| *name == format!("full_{n}"))
            .unwrap();
        assert_eq!(d.structure(), vec![(n, 1)], "full_{n}: wrong structure");
        assert_eq!(d.basis.dim(), n * n, "full_{n}: wrong algebra dimension");
        assert!(
            report.unitarity_residual <= 1e-10,
            "full_{n}: unitarity residual {:.3e} above 1e-10",
            report.unitarity_residual
        );
    }
    println!("criterion 2: PASS — full_n gives [(n,1)], dim n², unitary to 1e-10 for n=2..6");
}

#[test]
fn criterion_03_scalars_from_empty_generators() {
    for n in 1..=8usize {
        let (_, d, report) = named_runs()
            .iter()
            .find(|(name, _, _)| *name == format!("scalars_{n}"))
            .unwrap();
        assert_eq!(d.structure(), vec![(1, n)], "scalars_{n}: wrong structure");
        assert_eq!(
            d.family.len(),
            1,
            "scalars_{n}: maximal family should be {{1}} alone"
        );
        assert!(report.passed, "scalars_{n}: verification failed");
    }
    println!("criterion 3: PASS — empty generators on ℂⁿ give [(1,n)] with family {{1}} for n=1..8");
}

#[test]
fn criterion_04_commutative_diagonal() {
    for n in 1..=6usize {
        let (_, d, _) = named_runs()
            .iter()
            .find(|(name, _, _)| *name == format!("diag_{n}"))
            .unwrap();
        assert_eq!(d.structure(), vec![(1, 1); n], "diag_{n}: wrong structure");
        assert_eq!(d.classes.len(), n, "diag_{n}: expected {n} singleton classes");
        for c in &d.classes {
            assert_eq!(c.members.len(), 1, "diag_{n}: class not a singleton");
        }
    }
    println!("criterion 4: PASS — diag(1..n) gives [(1,1)]×n singleton classes for n=1..6");
}

#[test]
fn criterion_05_s3_regular_representation() {
    let (_, d, report) = named_runs()
        .iter()
        .find(|(name, _, _)| name == "s3_regular")
        .unwrap();
    assert_eq!(d.structure(), vec![(2, 2), (1, 1), (1, 1)]);
    assert_eq!(d.basis.dim(), 6, "group algebra of S₃ has dimension 6");
    assert!(report.passed);
    println!("criterion 5: PASS — s3_regular gives {{(2,2),(1,1),(1,1)}}, algebra dimension 6 = 4+1+1");
}

#[test]
fn criterion_06_dimension_identity_everywhere() {
    let mut checked = 0usize;
    for run in &planted_sweep().runs {
        let di = &run.report.dimension_identity;
        assert!(
            di.holds && di.algebra_dim == di.structure_dim,
            "seed {}: |basis| = {} vs Σp² = {}",
            run.seed,
            di.algebra_dim,
            di.structure_dim
        );
        checked += 1;
    }
    for (name, _, report) in named_runs() {
        let di = &report.dimension_identity;
        assert!(
            di.holds && di.algebra_dim == di.structure_dim,
            "{name}: |basis| = {} vs Σp² = {}",
            di.algebra_dim,
            di.structure_dim
        );
        checked += 1;
    }
    println!("criterion 6: PASS — |basis| = Σ pₖ² on all {checked} instances");
}

#[test]
fn criterion_07_projector_certificates_everywhere() {
    let mut worst = 0.0f64;
    let mut check = |label: &str, d: &WedderburnDecomposition| {
        let cert = d
            .family
            .certificate(&d.basis, TOL)
            .unwrap_or_else(|e| panic!("{label}: certificate failed: {e}"));
        assert!(
            cert.hermiticity <= 1e-9
                && cert.idempotency <= 1e-9
                && cert.orthogonality <= 1e-9
                && cert.completeness <= 1e-9,
            "{label}: family defects above 1e-9: {cert:?}"
        );
        assert!(
            cert.minimality <= 1e-9,
            "{label}: some PⱼAPⱼ is not proportional to Pⱼ: {:.3e}",
            cert.minimality
        );
        worst = worst.max(cert.max());
    };
    for run in &planted_sweep().runs {
        check(&format!("seed {}", run.seed), &run.d);
    }
    for (name, d, _) in named_runs() {
        check(name, d);
    }
    println!("criterion 7: PASS — every family certified minimal/orthogonal/complete, worst defect {worst:.3e}");
}

#[test]
fn criterion_08_negative_control_identity_unitary() {
    let inst = named_instance("full_3").unwrap();
    let d = decompose(&inst.generators, inst.dim_h, TOL).unwrap();
    assert!(
        verify_decomposition(&inst.generators, &d, TOL).unwrap().passed,
        "honest decomposition must verify before corruption"
    );
    let corrupted = verify_claim(
        &inst.generators,
        &d.structure(),
        &identity(3),
        &d.class_member_projectors(),
        TOL,
    )
    .unwrap();
    assert!(
        !corrupted.passed,
        "replacing u by the identity must fail verification"
    );
    println!(
        "criterion 8: verification fails as required (projector_image_residual {:.3e}); \
         max_block_residual {:.3e}",
        corrupted.projector_image_residual, corrupted.max_block_residual
    );
    assert!(
        corrupted.max_block_residual > 1e-2,
        "max_block_residual = {:.3e}: the claimed structure [(3,1)] is a single block \
         covering the whole space, so conjugating by any unitary — corrupted or not — \
         leaves nothing outside it and this residual is identically zero; the corruption \
         is detected by projector_image_residual = {:.3e} instead",
        corrupted.max_block_residual,
        corrupted.projector_image_residual
    );
}

#[test]
fn criterion_09_cli_byte_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run_once = |tag: &str| -> (Vec<u8>, Vec<u8>) {
        let gens = dir.path().join(format!("gens-{tag}.json"));
        let dec = dir.path().join(format!("dec-{tag}.json"));
        let out = Command::new(bin())
            .args(["generate", "--structure", "2x3,1x4", "--seed", "7", "--output"])
            .arg(&gens)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "generate failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let out = Command::new(bin())
            .args(["decompose", "--input"])
            .arg(&gens)
            .arg("--output")
            .arg(&dec)
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "decompose failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        (std::fs::read(&gens).unwrap(), std::fs::read(&dec).unwrap())
    };
    let (g1, d1) = run_once("a");
    let (g2, d2) = run_once("b");
    assert_eq!(g1, g2, "generator files differ between identical runs");
    assert_eq!(d1, d2, "decomposition files differ between identical runs");
    println!("criterion 9: PASS — generate+decompose twice gives byte-identical files");
}

#[test]
fn criterion_10_scale_invariance() {
    let scale = 1e6;
    let mut cases: Vec<(String, usize, Vec<CMatrix>)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    rng.set_stream(999);
    let planted = random_structure(&mut rng);
    let inst = generate_planted(&planted, 2, 11).unwrap();
    cases.push(("planted-11".into(), inst.dim_h(), inst.generators.clone()));
    for name in ["full_3", "diag_4", "s3_regular"] {
        let inst = named_instance(name).unwrap();
        cases.push((name.into(), inst.dim_h, inst.generators));
    }
    for (label, dim, gens) in &cases {
        let base = decompose(gens, *dim, TOL).unwrap();
        let scaled_gens: Vec<CMatrix> = gens.iter().map(|g| g.map(|z| z * scale)).collect();
        let scaled = decompose(&scaled_gens, *dim, TOL).unwrap();
        assert_eq!(
            base.structure(),
            scaled.structure(),
            "{label}: structure changed under ×10⁶ scaling"
        );
    }

    // Exit codes through the CLI must not move either.
    let dir = tempfile::tempdir().unwrap();
    let inst = named_instance("full_3").unwrap();
    let scaled_gens: Vec<CMatrix> = inst.generators.iter().map(|g| g.map(|z| z * scale)).collect();
    let mut codes = Vec::new();
    for (tag, gens) in [("base", &inst.generators), ("scaled", &scaled_gens)] {
        let gpath = dir.path().join(format!("{tag}.json"));
        let dpath = dir.path().join(format!("{tag}-dec.json"));
        let file = wedderburn::io::GeneratorFile::new(inst.dim_h, gens, None).unwrap();
        wedderburn::io::write_generator_file(&gpath, &file).unwrap();
        let dec = Command::new(bin())
            .args(["decompose", "--input"])
            .arg(&gpath)
            .arg("--output")
            .arg(&dpath)
            .output()
            .unwrap();
        let ver = Command::new(bin())
            .args(["verify", "--generators"])
            .arg(&gpath)
            .arg("--decomposition")
            .arg(&dpath)
            .output()
            .unwrap();
        codes.push((dec.status.code(), ver.status.code()));
    }
    assert_eq!(codes[0], codes[1], "exit codes changed under ×10⁶ scaling");
    assert_eq!(codes[0], (Some(0), Some(0)));
    println!("criterion 10: PASS — ×10⁶ scaling preserves structures and exit codes");
}
