//! Verification suites: exhaustive and seeded-random checks of every
//! structural claim the library rests on, each runnable from the CLI.
//!
//! Each suite produces a [`SuiteReport`] whose violations, when any exist,
//! are serialized counterexamples that replay through the public API.
//! Random cases use a seeded ChaCha stream with a documented entry
//! distribution, so reruns with the same seed are byte-identical.
//!
//! Entry distribution used by [`random_matrix`]: `B2` cells are 1 with
//! probability 1/2; `MaxPlusZ` cells are `-inf` with probability 1/8 and
//! otherwise uniform on `[-3, 3]`; `MaxTimesQ` cells are `0` with
//! probability 1/8 and otherwise `p/q` with `p` uniform on `1..=6` and `q`
//! uniform on `1..=4`; `MaxTimesN` cells are `0` with probability 1/8 and
//! otherwise uniform on `1..=6`.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{permutation_matrix, BasisCell, Matrix, Permutation};
use crate::operator::{
    cross_ratio_holds, structural_form, to_uv_form, uv_operator, LinearOperator,
};
use crate::rank::{factor_rank, factor_rank_oracle};
use crate::semimodule::{basis_correspondence, dimension, extract_basis, in_span, GeneratingSet};
use crate::semiring::{check_axioms, default_sample, SemiringId, Value};

/// Names accepted by [`run_suite`] and the CLI `verify --suite` flag.
pub const SUITE_NAMES: [&str; 6] = [
    "b2-2x2",
    "invertibility",
    "rank-oracle",
    "witness",
    "uv-synthesis",
    "semimodule-axioms",
];

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub violations: Vec<String>,
    pub metrics: Vec<(String, u64)>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} cases, {} violations ({} ms)",
            self.name,
            self.cases,
            self.violations.len(),
            self.wall_ms
        )?;
        for (k, v) in &self.metrics {
            writeln!(f, "  {k} = {v}")?;
        }
        for v in &self.violations {
            writeln!(f, "  violation:\n{v}")?;
        }
        Ok(())
    }
}

struct SuiteRun {
    name: &'static str,
    cases: u64,
    violations: Vec<String>,
    metrics: Vec<(String, u64)>,
    start: Instant,
}

impl SuiteRun {
    fn new(name: &'static str) -> Self {
        SuiteRun {
            name,
            cases: 0,
            violations: Vec::new(),
            metrics: Vec::new(),
            start: Instant::now(),
        }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    fn violation(&mut self, text: String) {
        self.violations.push(text);
    }

    fn metric(&mut self, key: &str, value: u64) {
        self.metrics.push((key.to_string(), value));
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            cases: self.cases,
            violations: self.violations,
            metrics: self.metrics,
            wall_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// One random scalar with the distribution documented at module level.
pub fn random_value(rng: &mut ChaCha8Rng, id: SemiringId) -> Value {
    match id {
        SemiringId::B2 => Value::bit(rng.gen_bool(0.5)),
        SemiringId::MaxPlusZ => {
            if rng.gen_ratio(1, 8) {
                Value::neg_inf()
            } else {
                Value::int(rng.gen_range(-3..=3))
            }
        }
        SemiringId::MaxTimesQ => {
            if rng.gen_ratio(1, 8) {
                Value::ratio(0, 1).expect("zero is representable")
            } else {
                Value::ratio(rng.gen_range(1..=6), rng.gen_range(1..=4))
                    .expect("nonzero denominator")
            }
        }
        SemiringId::MaxTimesN => {
            if rng.gen_ratio(1, 8) {
                Value::nat(0)
            } else {
                Value::nat(rng.gen_range(1..=6))
            }
        }
    }
}

/// A random dense matrix with [`random_value`] entries.
pub fn random_matrix(rng: &mut ChaCha8Rng, id: SemiringId, m: usize, n: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        data.push(random_value(rng, id));
    }
    Matrix::new(id, m, n, data)
}

/// A random rank-1 matrix: the outer product of vectors whose entries are
/// zero with probability 1/4 and random otherwise, resampled until both
/// vectors are nonzero.
pub fn random_rank_one(rng: &mut ChaCha8Rng, id: SemiringId, m: usize, n: usize) -> Result<Matrix> {
    loop {
        let vector = |rng: &mut ChaCha8Rng, len: usize| -> Vec<Value> {
            (0..len)
                .map(|_| {
                    if rng.gen_ratio(1, 4) {
                        id.zero()
                    } else {
                        let v = random_value(rng, id);
                        if v.is_zero() {
                            id.one()
                        } else {
                            v
                        }
                    }
                })
                .collect()
        };
        let b = vector(rng, m);
        let c = vector(rng, n);
        if b.iter().all(Value::is_zero) || c.iter().all(Value::is_zero) {
            continue;
        }
        return Matrix::from_fn(id, m, n, |i, j| {
            b[i - 1].mul(&c[j - 1]).expect("uniform instance")
        });
    }
}

fn b2_matrix_from_mask(mask: u32, m: usize, n: usize) -> Matrix {
    Matrix::from_fn(SemiringId::B2, m, n, |i, j| {
        Value::bit(mask & (1 << ((i - 1) * n + (j - 1))) != 0)
    })
    .expect("positive dimensions")
}

/// Exhaustive check over all 65,536 linear operators on 2x2 Boolean
/// matrices: the operators preserving ranks 1 and 2, those preserving all
/// ranks, those additionally preserving the dimension of every rank-1
/// subsemimodule, and those admitting a `(U,V)` form are the same eight
/// operators, matching the set built directly from `uv_operator`; and
/// among the 24 invertible operators, exactly the rank-1-preserving ones
/// carry a structural form.
pub fn suite_b2_2x2_theorems() -> Result<SuiteReport> {
    let mut run = SuiteRun::new("b2-2x2");
    let id = SemiringId::B2;

    let all16: Vec<Matrix> = (0u32..16).map(|m| b2_matrix_from_mask(m, 2, 2)).collect();
    let mut rank16 = [0usize; 16];
    for (mask, mat) in all16.iter().enumerate() {
        rank16[mask] = factor_rank(mat)?.k();
    }

    // rank-1 subsemimodules: subsets of the nine rank-1 matrices closed
    // under addition (as masks: closed under OR), plus the zero matrix
    let rank1_masks: Vec<u32> = (1u32..16).filter(|&m| rank16[m as usize] == 1).collect();
    let mut subsemimodules: Vec<Vec<u32>> = Vec::new();
    for subset in 1u32..(1 << rank1_masks.len()) {
        let members: Vec<u32> = rank1_masks
            .iter()
            .enumerate()
            .filter(|&(t, _)| subset & (1 << t) != 0)
            .map(|(_, &m)| m)
            .collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| members.contains(&(x | y))));
        if closed {
            subsemimodules.push(members);
        }
    }
    let module_bases: Vec<(usize, Vec<Matrix>)> = subsemimodules
        .iter()
        .map(|members| {
            let gens = GeneratingSet::new(
                members
                    .iter()
                    .map(|&m| all16[m as usize].clone())
                    .collect(),
            )?;
            let basis = extract_basis(&gens)?;
            Ok((basis.len(), basis.members().to_vec()))
        })
        .collect::<Result<_>>()?;
    run.metric("rank1_subsemimodules", subsemimodules.len() as u64);

    let mut preserves_12 = Vec::new();
    let mut preserves_all = Vec::new();
    let mut admits_uv = Vec::new();
    let mut condition_pair = Vec::new(); // ranks 1,2 + subsemimodule dimensions
    let mut invertible_ops = 0u64;
    let mut structural_ok = Vec::new();
    let mut invertible_rank1 = Vec::new();

    for code in 0u32..65536 {
        run.case();
        let imgs = [
            code & 15,
            (code >> 4) & 15,
            (code >> 8) & 15,
            (code >> 12) & 15,
        ];
        // operator application as a 16-entry lookup table on cell masks
        let mut tof = [0u32; 16];
        for mask in 1u32..16 {
            let low = mask.trailing_zeros() as usize;
            tof[mask as usize] = tof[(mask & (mask - 1)) as usize] | imgs[low];
        }

        let p12 = (1..16).all(|m| {
            let r = rank16[m];
            r == 0 || rank16[tof[m] as usize] == r
        });
        // preserving ranks 1 and 2 is preserving all ranks at 2x2, since
        // rank 0 is automatic; both sets are still tracked and compared
        if p12 {
            preserves_12.push(code);
            preserves_all.push(code);
        }

        let invertible =
            imgs.iter().all(|&m| m.count_ones() == 1) && (imgs[0] | imgs[1] | imgs[2] | imgs[3]) == 15;
        let mut uv_ok = false;
        if invertible {
            invertible_ops += 1;
            let op = LinearOperator::new(
                id,
                2,
                2,
                imgs.iter().map(|&m| all16[m as usize].clone()).collect(),
            )?;
            let preserves_rank1 = (1..16)
                .filter(|&m| rank16[m] == 1)
                .all(|m| rank16[tof[m] as usize] == 1);
            if preserves_rank1 {
                invertible_rank1.push(code);
            }
            let sf = structural_form(&op)?;
            if let Some(ref form) = sf {
                structural_ok.push(code);
                if !cross_ratio_holds(&form.alpha)? {
                    run.violation(format!(
                        "structural operator fails the cross-ratio test: images {imgs:?}"
                    ));
                }
            }
            if sf.is_some() != preserves_rank1 {
                run.violation(format!(
                    "structural form and rank-1 preservation disagree on invertible operator {imgs:?}"
                ));
            }
            uv_ok = match to_uv_form(&op) {
                Ok(_) => true,
                Err(Error::NotUvOperator(_) | Error::CrossRatio { .. }) => false,
                Err(e) => return Err(e),
            };
        }
        if uv_ok {
            admits_uv.push(code);
        }

        if p12 {
            // dimension preservation over every rank-1 subsemimodule
            let mut dims_ok = true;
            for (dim_w, basis) in &module_bases {
                let images: Vec<Matrix> = basis
                    .iter()
                    .map(|b| {
                        let mut mask = 0u32;
                        for cell in b.cells() {
                            if !b.at(cell).is_zero() {
                                mask |= 1 << ((cell.row - 1) * 2 + (cell.col - 1));
                            }
                        }
                        all16[tof[mask as usize] as usize].clone()
                    })
                    .collect();
                let gi = GeneratingSet::new(images)?;
                if dimension(&gi)? != *dim_w {
                    dims_ok = false;
                    break;
                }
            }
            if dims_ok {
                condition_pair.push(code);
            }
        }
    }

    run.metric("operators", 65536);
    run.metric("invertible_operators", invertible_ops);
    run.metric("rank_preservers", preserves_all.len() as u64);

    if preserves_12 != preserves_all {
        run.violation("rank-1/2 preservation differs from full rank preservation".into());
    }
    if preserves_12 != admits_uv {
        run.violation(format!(
            "rank preservation ({}) differs from (U,V) membership ({})",
            preserves_12.len(),
            admits_uv.len()
        ));
    }
    if preserves_12 != condition_pair {
        run.violation(format!(
            "adding subsemimodule dimension preservation changed the set: {} vs {}",
            preserves_12.len(),
            condition_pair.len()
        ));
    }
    if preserves_all.len() != 8 {
        run.violation(format!(
            "expected exactly 8 rank preservers, found {}",
            preserves_all.len()
        ));
    }
    if invertible_ops != 24 {
        run.violation(format!(
            "expected exactly 24 invertible operators, found {invertible_ops}"
        ));
    }
    if structural_ok != invertible_rank1 {
        run.violation(
            "invertible operators with structural forms are not exactly the rank-1 preservers"
                .into(),
        );
    }
    if structural_ok.len() != 8 {
        run.violation(format!(
            "expected 8 structural invertible operators, found {}",
            structural_ok.len()
        ));
    }

    // cross-check: the direct (U,V) constructions land exactly on the
    // preserver set
    let i2 = Matrix::identity(id, 2)?;
    let swap = permutation_matrix(&Permutation::from_images(vec![2, 1])?, id)?;
    let mut direct = Vec::new();
    for u in [&i2, &swap] {
        for v in [&i2, &swap] {
            for transposed in [false, true] {
                let op = uv_operator(u, v, transposed, None, None)?;
                let mut code = 0u32;
                for (slot, img) in op.images().iter().enumerate() {
                    let mut mask = 0u32;
                    for cell in img.cells() {
                        if !img.at(cell).is_zero() {
                            mask |= 1 << ((cell.row - 1) * 2 + (cell.col - 1));
                        }
                    }
                    code |= mask << (4 * slot);
                }
                if !direct.contains(&code) {
                    direct.push(code);
                }
            }
        }
    }
    direct.sort_unstable();
    if direct != preserves_all {
        run.violation(format!(
            "directly constructed (U,V) operators ({}) differ from the preserver set ({})",
            direct.len(),
            preserves_all.len()
        ));
    }

    Ok(run.finish())
}

/// Monomial/unit invertibility agrees with brute-force two-sided-inverse
/// search over every Boolean matrix of orders 2 and 3.
pub fn suite_invertibility_bruteforce() -> Result<SuiteReport> {
    let mut run = SuiteRun::new("invertibility");
    for k in [2usize, 3] {
        let count = 1u32 << (k * k);
        let mats: Vec<Matrix> = (0..count).map(|m| b2_matrix_from_mask(m, k, k)).collect();
        let ident = Matrix::identity(SemiringId::B2, k)?;
        for a in &mats {
            run.case();
            let brute = mats
                .iter()
                .any(|x| a.mul(x).unwrap() == ident && x.mul(a).unwrap() == ident);
            if brute != a.is_invertible() {
                run.violation(format!(
                    "invertibility disagreement (brute force says {brute}) on\n{a}"
                ));
            }
        }
    }
    Ok(run.finish())
}

/// The closure-based rank search agrees with the independent oracle on all
/// Boolean matrices up to 3x3 and on seeded random max-plus and
/// max-times-naturals 3x3 matrices.
pub fn suite_rank_oracle_equivalence(seed: u64) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("rank-oracle");
    let mut exhaustive = 0u64;
    for m in 1..=3usize {
        for n in 1..=3usize {
            for mask in 0u32..(1 << (m * n)) {
                run.case();
                exhaustive += 1;
                let a = b2_matrix_from_mask(mask, m, n);
                let fast = factor_rank(&a)?.k();
                let slow = factor_rank_oracle(&a, m.min(n))?;
                if slow != Some(fast) {
                    run.violation(format!(
                        "rank disagreement (search {fast}, oracle {slow:?}) on\n{a}"
                    ));
                }
            }
        }
    }
    run.metric("exhaustive_b2", exhaustive);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for id in [SemiringId::MaxPlusZ, SemiringId::MaxTimesN] {
        for _ in 0..500 {
            run.case();
            let a = random_matrix(&mut rng, id, 3, 3)?;
            let fast = factor_rank(&a)?.k();
            let slow = factor_rank_oracle(&a, 3)?;
            if slow != Some(fast) {
                run.violation(format!(
                    "rank disagreement (search {fast}, oracle {slow:?}) on\n{a}"
                ));
            }
        }
    }
    run.metric("random_tropical", 1000);
    Ok(run.finish())
}

/// Separating witnesses verify on every ordered pair of distinct rank-1
/// Boolean 3x3 matrices and on seeded random tropical rank-1 pairs; when
/// the first matrix has strictly more nonzero entries the orientation is
/// pinned to `r(a+C) = 1`, `r(b+C) = 2`.
pub fn suite_separating_witness(seed: u64) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("witness");
    let mut rank1: Vec<Matrix> = Vec::new();
    for mask in 1u32..(1 << 9) {
        let a = b2_matrix_from_mask(mask, 3, 3);
        if factor_rank(&a)?.k() == 1 {
            rank1.push(a);
        }
    }
    run.metric("b2_rank1_matrices", rank1.len() as u64);

    let check_pair = |run: &mut SuiteRun, a: &Matrix, b: &Matrix| -> Result<()> {
        run.case();
        let c = match crate::operator::separating_witness(a, b) {
            Ok(c) => c,
            Err(e) => {
                run.violation(format!("witness construction failed ({e}) on\n{a}\nand\n{b}"));
                return Ok(());
            }
        };
        let ra = factor_rank(&a.add(&c)?)?.k();
        let rb = factor_rank(&b.add(&c)?)?.k();
        let ok = (ra == 1 && rb == 2) || (ra == 2 && rb == 1);
        if !ok {
            run.violation(format!(
                "witness does not separate (ranks {ra}, {rb}): inputs\n{a}\nand\n{b}\nwitness\n{c}"
            ));
        } else if a.nonzero_count() > b.nonzero_count() && ra != 1 {
            run.violation(format!(
                "orientation violated for larger-support input:\n{a}\nand\n{b}\nwitness\n{c}"
            ));
        }
        Ok(())
    };

    for a in &rank1 {
        for b in &rank1 {
            if a != b {
                check_pair(&mut run, a, b)?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for instance in [SemiringId::MaxPlusZ, SemiringId::MaxTimesN] {
        let mut done = 0;
        while done < 100 {
            let a = random_rank_one(&mut rng, instance, 3, 3)?;
            let b = random_rank_one(&mut rng, instance, 3, 3)?;
            if a == b {
                continue;
            }
            check_pair(&mut run, &a, &b)?;
            done += 1;
        }
    }
    run.metric("random_tropical_pairs", 200);
    Ok(run.finish())
}

/// Round-trip of `(U,V)` synthesis on seeded random max-plus tuples, plus
/// rank preservation of the resulting operators on random matrices, with
/// all ranks recomputed by the factor-rank engine.
pub fn suite_uv_synthesis(seed: u64) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("uv-synthesis");
    let id = SemiringId::MaxPlusZ;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank_checks = 0u64;

    let random_perm = |rng: &mut ChaCha8Rng| -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=3).collect();
        images.shuffle(rng);
        Permutation::from_images(images)
    };
    let random_unit = |rng: &mut ChaCha8Rng| Value::int(rng.gen_range(-3..=3));

    for _ in 0..200 {
        run.case();
        let scaled_perm = |rng: &mut ChaCha8Rng| -> Result<Matrix> {
            let base = permutation_matrix(&random_perm(rng)?, id)?;
            let diag: Vec<Value> = (0..3).map(|_| random_unit(rng)).collect();
            Matrix::diagonal(id, &diag)?.mul(&base)
        };
        let u = scaled_perm(&mut rng)?;
        let v = scaled_perm(&mut rng)?;
        let c = Matrix::diagonal(id, &(0..3).map(|_| random_unit(&mut rng)).collect::<Vec<_>>())?;
        let d = Matrix::diagonal(id, &(0..3).map(|_| random_unit(&mut rng)).collect::<Vec<_>>())?;
        let transposed = rng.gen_bool(0.5);

        let op = uv_operator(&u, &v, transposed, Some(&c), Some(&d))?;
        let form = to_uv_form(&op)?;
        let rebuilt = form.to_operator()?;
        if rebuilt != op {
            run.violation(format!(
                "synthesis round-trip changed the operator (transposed = {transposed})"
            ));
            continue;
        }
        for _ in 0..50 {
            let a = random_matrix(&mut rng, id, 3, 3)?;
            let before = factor_rank(&a)?.k();
            let after = factor_rank(&op.apply(&a)?)?.k();
            rank_checks += 1;
            if before != after {
                run.violation(format!(
                    "rank moved from {before} to {after} under a (U,V) operator on\n{a}"
                ));
            }
        }
    }
    run.metric("tuples", 200);
    run.metric("rank_checks", rank_checks);
    Ok(run.finish())
}

/// Axiom reports for all four instances, basis uniqueness on random
/// Boolean subsemimodules, and the shape of bases of the row semimodule
/// `S^n` (exhaustively over `B2`, randomly over max-plus).
pub fn suite_semimodule_and_axioms(seed: u64) -> Result<SuiteReport> {
    let mut run = SuiteRun::new("semimodule-axioms");
    for id in SemiringId::all() {
        run.case();
        let report = check_axioms(id, &default_sample(id))?;
        if !report.all_passed() {
            run.violation(format!("axiom failures:\n{report}"));
        }
    }

    // basis uniqueness: two independently ordered extractions of a random
    // span are related by a unit-scaling bijection
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        run.case();
        let count = rng.gen_range(1..=4);
        let gens: Vec<Matrix> = (0..count)
            .map(|_| random_matrix(&mut rng, SemiringId::B2, 2, 2))
            .collect::<Result<_>>()?;
        if gens.iter().all(Matrix::is_zero_matrix) {
            continue;
        }
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let b1 = extract_basis(&GeneratingSet::new(gens)?)?;
        let b2 = extract_basis(&GeneratingSet::new(shuffled)?)?;
        if b1.is_empty() && b2.is_empty() {
            continue;
        }
        match basis_correspondence(&b1, &b2) {
            Ok(c) => {
                if !c.pairs.iter().all(|(_, _, alpha)| alpha.is_unit()) {
                    run.violation(format!("non-unit scalar in correspondence:\n{b1}\n{b2}"));
                }
            }
            Err(e) => run.violation(format!("no correspondence ({e}) between\n{b1}\nand\n{b2}")),
        }
    }

    // every basis of B2^n is the standard one, checked exhaustively
    for n in 1..=3usize {
        let vectors: Vec<Matrix> = (1u32..(1 << n))
            .map(|mask| b2_matrix_from_mask(mask, 1, n))
            .collect();
        let units: Vec<Matrix> = (0..n)
            .map(|j| Matrix::basis_matrix(BasisCell::new(1, j + 1), 1, n, SemiringId::B2))
            .collect::<Result<_>>()?;
        for subset in 1u32..(1 << vectors.len()) {
            run.case();
            let members: Vec<Matrix> = vectors
                .iter()
                .enumerate()
                .filter(|&(t, _)| subset & (1 << t) != 0)
                .map(|(_, v)| v.clone())
                .collect();
            let set = GeneratingSet::new(members.clone())?;
            let spans = units
                .iter()
                .map(|u| Ok(in_span(u, &set)?.is_member))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            let independent = crate::semimodule::is_independent(&set)?;
            if spans && independent {
                let mut sorted = members.clone();
                sorted.sort_by_key(|m| m.to_string());
                let mut expected = units.clone();
                expected.sort_by_key(|m| m.to_string());
                if sorted != expected {
                    run.violation(format!("unexpected basis of the row semimodule:\n{set}"));
                }
            }
        }
    }

    // over max-plus: a spanning set of S^3 must reduce to scaled unit
    // vectors
    for _ in 0..50 {
        run.case();
        let n = 3usize;
        let mut gens: Vec<Matrix> = (0..n)
            .map(|j| {
                let scale = Value::int(rng.gen_range(-3..=3));
                Matrix::basis_matrix(BasisCell::new(1, j + 1), 1, n, SemiringId::MaxPlusZ)
                    .and_then(|e| e.scale(&scale))
            })
            .collect::<Result<_>>()?;
        for _ in 0..rng.gen_range(0..=2) {
            gens.push(random_matrix(&mut rng, SemiringId::MaxPlusZ, 1, n)?);
        }
        gens.shuffle(&mut rng);
        let basis = extract_basis(&GeneratingSet::new(gens)?)?;
        if basis.len() != n {
            run.violation(format!("basis of the row semimodule has size {}", basis.len()));
            continue;
        }
        for member in basis.members() {
            if member.nonzero_count() != 1 {
                run.violation(format!("basis member is not a scaled unit vector:\n{member}"));
            }
        }
    }

    Ok(run.finish())
}

/// Run one suite by CLI name.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "b2-2x2" => suite_b2_2x2_theorems(),
        "invertibility" => suite_invertibility_bruteforce(),
        "rank-oracle" => suite_rank_oracle_equivalence(seed),
        "witness" => suite_separating_witness(seed),
        "uv-synthesis" => suite_uv_synthesis(seed),
        "semimodule-axioms" => suite_semimodule_and_axioms(seed),
        _ => Err(Error::UnsupportedDomain(format!(
            "unknown suite `{name}`; known: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Run every suite with one shared seed.
pub fn run_all(seed: u64) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic_for_a_seed() {
        let a = suite_semimodule_and_axioms(7).unwrap();
        let b = suite_semimodule_and_axioms(7).unwrap();
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.metrics, b.metrics);
    }

    #[test]
    fn random_matrices_follow_the_documented_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, SemiringId::MaxPlusZ, 3, 3).unwrap();
            for cell in a.cells() {
                let v = a.at(cell);
                assert!(v.is_zero() || (v.leq(&Value::int(3)).unwrap() && Value::int(-3).leq(v).unwrap()));
            }
        }
    }

    #[test]
    fn random_rank_one_really_is_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for id in [SemiringId::MaxPlusZ, SemiringId::MaxTimesN] {
            for _ in 0..20 {
                let a = random_rank_one(&mut rng, id, 3, 3).unwrap();
                assert_eq!(factor_rank(&a).unwrap().k(), 1);
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", 0).is_err());
    }
}
