//! Test-instance generation: planted decompositions with a known answer,
//! and a small catalog of named algebras.
//!
//! A planted instance draws random coefficient blocks, inflates them to
//! ⊕ₖ aₖ ⊗ 1_{qₖ}, and conjugates by a Haar unitary. The block structure
//! of the generated algebra is then known by construction, which makes the
//! instances ground truth for the decomposition pipeline.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::close_unital_star_algebra;
use crate::error::{Error, Result};
use crate::matrix::{haar_from_rng, identity, matrix_unit, CMatrix, Tolerance};

/// Generators with a known planted block structure.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    /// Planted structure in canonical order (descending p, then q).
    pub structure: Vec<(usize, usize)>,
    /// The Haar unitary that disguises the block model; generators are
    /// hidden_u† · (⊕ₖ aₖ ⊗ 1) · hidden_u.
    pub hidden_u: CMatrix,
    pub generators: Vec<CMatrix>,
    pub seed: u64,
}

impl PlantedInstance {
    pub fn dim_h(&self) -> usize {
        self.hidden_u.nrows()
    }
}

/// A catalog entry: generators, the space they act on, and the structure
/// the decomposition is expected to find.
#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub dim_h: usize,
    pub generators: Vec<CMatrix>,
    /// Expected structure in canonical order.
    pub structure: Vec<(usize, usize)>,
}

/// Canonical presentation of a block structure: descending p, then
/// descending q.
pub fn canonical_structure(structure: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut s = structure.to_vec();
    s.sort_by(|a, b| b.cmp(a));
    s
}

fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        num_complex::Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    })
}

fn validate_structure(structure: &[(usize, usize)]) -> Result<usize> {
    if structure.is_empty() {
        return Err(Error::Domain(
            "structure must contain at least one block".into(),
        ));
    }
    for &(p, q) in structure {
        if p == 0 || q == 0 {
            return Err(Error::Domain(format!(
                "block sizes must be positive, got p={p} q={q}"
            )));
        }
    }
    Ok(structure.iter().map(|&(p, q)| p * q).sum())
}

/// Draw generators whose closed algebra has exactly the given structure.
///
/// Deterministic in `(structure, num_generators, seed)`. Random coefficient
/// blocks generate the full target algebra for all but a measure-zero set
/// of draws; the closure dimension is still checked, and a failed draw
/// retries on a fresh RNG stream a few times before giving up.
pub fn generate_planted(
    structure: &[(usize, usize)],
    num_generators: usize,
    seed: u64,
) -> Result<PlantedInstance> {
    let n = validate_structure(structure)?;
    if num_generators == 0 {
        return Err(Error::Domain("need at least one generator".into()));
    }
    let structure = canonical_structure(structure);
    let target_dim: usize = structure.iter().map(|&(p, _)| p * p).sum();
    let tol = Tolerance::default();

    const ATTEMPTS: u64 = 8;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let u = haar_from_rng(n, &mut rng);
        let generators: Vec<CMatrix> = (0..num_generators)
            .map(|_| {
                let mut m = CMatrix::zeros(n, n);
                let mut offset = 0;
                for &(p, q) in &structure {
                    let a = gaussian_matrix(p, &mut rng);
                    m.view_mut((offset, offset), (p * q, p * q))
                        .copy_from(&a.kronecker(&identity(q)));
                    offset += p * q;
                }
                u.adjoint() * m * &u
            })
            .collect();
        let basis = close_unital_star_algebra(&generators, n, tol)?;
        if basis.dim() == target_dim {
            return Ok(PlantedInstance {
                structure,
                hidden_u: u,
                generators,
                seed,
            });
        }
    }
    Err(Error::Structural {
        stage: "instance-gen",
        detail: format!(
            "random draws failed to generate the target algebra after {ATTEMPTS} attempts \
             (structure {structure:?}, seed {seed})"
        ),
    })
}

fn s3_elements() -> [[usize; 3]; 6] {
    // identity, the three transpositions, then the two 3-cycles.
    [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ]
}

fn s3_compose(a: &[usize; 3], b: &[usize; 3]) -> [usize; 3] {
    [a[b[0]], a[b[1]], a[b[2]]]
}

fn s3_left_regular(g: &[usize; 3]) -> CMatrix {
    let elements = s3_elements();
    let mut m = CMatrix::zeros(6, 6);
    for (j, h) in elements.iter().enumerate() {
        let gh = s3_compose(g, h);
        let k = elements.iter().position(|e| *e == gh).unwrap();
        m[(k, j)] = num_complex::Complex64::new(1.0, 0.0);
    }
    m
}

/// Named instances for quick experiments and regression baselines.
///
/// - `full_n` (1 ≤ n ≤ 8): all n² matrix units of L(ℂⁿ); one block (n, 1).
/// - `scalars_n` (1 ≤ n ≤ 12): no generators at all — the unital closure
///   of nothing on ℂⁿ, structure (1, n).
/// - `diag_n` (1 ≤ n ≤ 12): the single generator diag(1, 2, …, n), whose
///   closure is the full diagonal algebra; n blocks (1, 1).
/// - `s3_regular`: the group algebra of S₃ in its left regular
///   representation on ℂ⁶, generated by the permutation matrices of the
///   transposition (12) and the 3-cycle (123).
pub fn named_instance(name: &str) -> Result<NamedInstance> {
    if name == "s3_regular" {
        let gens = vec![s3_left_regular(&[1, 0, 2]), s3_left_regular(&[1, 2, 0])];
        return Ok(NamedInstance {
            dim_h: 6,
            generators: gens,
            structure: vec![(2, 2), (1, 1), (1, 1)],
        });
    }
    let parse_n = |prefix: &str, lo: usize, hi: usize| -> Option<Result<usize>> {
        let rest = name.strip_prefix(prefix)?;
        Some(match rest.parse::<usize>() {
            Ok(n) if (lo..=hi).contains(&n) => Ok(n),
            Ok(n) => Err(Error::Catalog(format!(
                "{prefix}{n} out of range: supported {prefix}{lo}..{prefix}{hi}"
            ))),
            Err(_) => Err(Error::Catalog(format!("unknown instance '{name}'"))),
        })
    };
    if let Some(n) = parse_n("full_", 1, 8) {
        let n = n?;
        let mut gens = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                gens.push(matrix_unit(n, i, j));
            }
        }
        return Ok(NamedInstance {
            dim_h: n,
            generators: gens,
            structure: vec![(n, 1)],
        });
    }
    if let Some(n) = parse_n("scalars_", 1, 12) {
        let n = n?;
        return Ok(NamedInstance {
            dim_h: n,
            generators: Vec::new(),
            structure: vec![(1, n)],
        });
    }
    if let Some(n) = parse_n("diag_", 1, 12) {
        let n = n?;
        let d = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                num_complex::Complex64::new((i + 1) as f64, 0.0)
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            }
        });
        return Ok(NamedInstance {
            dim_h: n,
            generators: vec![d],
            structure: vec![(1, 1); n],
        });
    }
    Err(Error::Catalog(format!(
        "unknown instance '{name}'; available: full_n, scalars_n, diag_n, s3_regular"
    )))
}
