//! Solving the matrix equation `X A = B Y` for an invertible `X` and a
//! permutation matrix `Y`.
//!
//! Row candidates for `X` come from the affine variety of vectors `x` whose
//! image `x A` is an exact permutation of a row of `B`. Two search
//! strategies are available — full enumeration of `F_p^k`, and backtracking
//! over value assignments to the linear forms — selected automatically by
//! field and size unless forced.

use crate::detect::{detect_all, is_perm_equiv, PermSet};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::perm::{PermMatrix, Permutation};
use crate::poly::Poly;

/// The linear forms dual to the columns of a matrix: form `j` evaluated at
/// `x` is the `j`-th entry of `x A`.
#[derive(Clone, Debug)]
pub struct LinearFormSystem {
    a: Matrix,
}

impl LinearFormSystem {
    pub fn new(a: Matrix) -> LinearFormSystem {
        LinearFormSystem { a }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    /// Evaluate all forms at once: `x A`.
    pub fn eval(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.a.left_mul(x)
    }

    /// Coefficients of form `j`, i.e. column `j` of the matrix.
    pub fn form(&self, j: usize) -> Vec<Scalar> {
        self.a.col(j)
    }
}

/// Search limits for [`variety`].
#[derive(Clone, Copy, Debug)]
pub struct VarietyConfig {
    /// Use exhaustive scanning when `p^k` is at most this.
    pub exhaustive_bound: u128,
    /// Over the rationals, refuse backtracking when the target vector has
    /// more distinct values than this.
    pub max_distinct_backtrack: usize,
}

impl Default for VarietyConfig {
    fn default() -> VarietyConfig {
        VarietyConfig { exhaustive_bound: 10_000_000, max_distinct_backtrack: 8 }
    }
}

/// Which variety search to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyStrategy {
    /// Backtracking over the rationals, exhaustive over a prime field when
    /// `p^k` fits the bound, backtracking otherwise.
    Auto,
    Exhaustive,
    Backtracking,
}

/// All nonzero points of the variety, lexicographically ordered, each with
/// its image under the forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySolution {
    points: Vec<Vec<Scalar>>,
}

impl VarietySolution {
    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.points.iter().any(|p| p == x)
    }
}

/// All nonzero `x` with `x A` an exact permutation of `v`, i.e. the common
/// zero locus of the polynomials `Q_v(l_j(x))` pruned down to points whose
/// image matches the full multiset of `v`. The zero vector is excluded: it
/// can never be a row of an invertible matrix.
pub fn variety(a: &Matrix, v: &[Scalar]) -> Result<VarietySolution> {
    variety_with(a, v, VarietyStrategy::Auto, &VarietyConfig::default())
}

pub fn variety_with(
    a: &Matrix,
    v: &[Scalar],
    strategy: VarietyStrategy,
    config: &VarietyConfig,
) -> Result<VarietySolution> {
    if v.len() != a.cols() {
        return Err(Error::SizeMismatch { left: v.len(), right: a.cols() });
    }
    let field = a.field();
    if v.iter().any(|s| s.field() != field) {
        return Err(Error::FieldMismatch);
    }
    let chosen = match (strategy, field) {
        (VarietyStrategy::Auto, FieldSpec::Rationals) => VarietyStrategy::Backtracking,
        (VarietyStrategy::Auto, FieldSpec::Prime(p)) => {
            match pow_u128(p, a.rows()) {
                Some(total) if total <= config.exhaustive_bound => VarietyStrategy::Exhaustive,
                _ => VarietyStrategy::Backtracking,
            }
        }
        (s, _) => s,
    };
    let mut points = match chosen {
        VarietyStrategy::Exhaustive => variety_exhaustive(a, v, config)?,
        VarietyStrategy::Backtracking => variety_backtracking(a, v, config)?,
        VarietyStrategy::Auto => unreachable!(),
    };
    points.sort();
    points.dedup();
    Ok(VarietySolution { points })
}

fn pow_u128(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn variety_exhaustive(a: &Matrix, v: &[Scalar], config: &VarietyConfig) -> Result<Vec<Vec<Scalar>>> {
    let field = a.field();
    let p = field.modulus().ok_or(Error::PrimeFieldRequired)?;
    let k = a.rows();
    match pow_u128(p, k) {
        Some(total) if total <= config.exhaustive_bound => {}
        _ => {
            return Err(Error::BoundExceeded(format!(
                "{p}^{k} exceeds the exhaustive bound {}",
                config.exhaustive_bound
            )))
        }
    }
    // The cheap necessary filter first: every form value must be a root of
    // Q_v. Survivors are confirmed against the full multiset.
    let q = Poly::from_roots(field, v);
    let mut out = Vec::new();
    let mut digits = vec![0u64; k];
    loop {
        // Advance the odometer; the all-zero x is skipped as a candidate.
        let x: Vec<Scalar> = digits.iter().map(|&d| field.from_i64(d as i64)).collect();
        if digits.iter().any(|&d| d != 0) {
            let w = a.left_mul(&x)?;
            if w.iter().all(|wj| q.eval(wj).is_zero()) && is_perm_equiv(v, &w)? {
                out.push(x);
            }
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Incremental echelon system over the unknowns `x_1..x_k`, supporting push
/// and pop so the backtracking search can reuse it along every branch.
struct IncrementalSystem {
    field: FieldSpec,
    k: usize,
    // Each row: normalized coefficients with leading 1 at `pivot`, plus rhs.
    rows: Vec<(usize, Vec<Scalar>, Scalar)>,
}

enum PushOutcome {
    Added,
    Redundant,
    Inconsistent,
}

impl IncrementalSystem {
    fn new(field: FieldSpec, k: usize) -> IncrementalSystem {
        IncrementalSystem { field, k, rows: Vec::new() }
    }

    fn push(&mut self, mut coeffs: Vec<Scalar>, mut rhs: Scalar) -> Result<PushOutcome> {
        for (pivot, row, r) in &self.rows {
            let f = coeffs[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (c, rc) in coeffs.iter_mut().zip(row) {
                *c = &*c - &(&f * rc);
            }
            rhs = &rhs - &(&f * r);
        }
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                if rhs.is_zero() {
                    Ok(PushOutcome::Redundant)
                } else {
                    Ok(PushOutcome::Inconsistent)
                }
            }
            Some(pivot) => {
                let inv = coeffs[pivot].inv()?;
                for c in coeffs.iter_mut() {
                    *c = &*c * &inv;
                }
                rhs = &rhs * &inv;
                self.rows.push((pivot, coeffs, rhs));
                Ok(PushOutcome::Added)
            }
        }
    }

    fn pop(&mut self) {
        self.rows.pop();
    }

    fn is_determined(&self) -> bool {
        self.rows.len() == self.k
    }

    /// Unique solution once `k` pivots are present.
    fn solve_determined(&self) -> Result<Vec<Scalar>> {
        debug_assert!(self.is_determined());
        let mut m = Matrix::zero(self.field, self.k, self.k + 1);
        for (r, (_, coeffs, rhs)) in self.rows.iter().enumerate() {
            for (c, val) in coeffs.iter().enumerate() {
                m.set(r, c, val.clone());
            }
            m.set(r, self.k, rhs.clone());
        }
        let (rr, _) = m.rref();
        Ok((0..self.k).map(|i| rr.get(i, self.k).clone()).collect())
    }
}

fn variety_backtracking(
    a: &Matrix,
    v: &[Scalar],
    config: &VarietyConfig,
) -> Result<Vec<Vec<Scalar>>> {
    let field = a.field();
    let k = a.rows();
    let n = a.cols();
    // Distinct values with multiplicities, ascending.
    let mut values: Vec<Scalar> = v.to_vec();
    values.sort();
    values.dedup();
    let mut mults: Vec<usize> = values.iter().map(|d| v.iter().filter(|x| *x == d).count()).collect();
    if field == FieldSpec::Rationals {
        if values.len() > config.max_distinct_backtrack {
            return Err(Error::BoundExceeded(format!(
                "{} distinct values exceed the backtracking bound {}",
                values.len(),
                config.max_distinct_backtrack
            )));
        }
        if a.rank() < k {
            return Err(Error::RankDeficient);
        }
    }
    let columns: Vec<Vec<Scalar>> = (0..n).map(|j| a.col(j)).collect();
    let mut sys = IncrementalSystem::new(field, k);
    let mut out = Vec::new();
    backtrack_columns(a, v, &values, &mut mults, &columns, 0, &mut sys, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn backtrack_columns(
    a: &Matrix,
    v: &[Scalar],
    values: &[Scalar],
    mults: &mut Vec<usize>,
    columns: &[Vec<Scalar>],
    j: usize,
    sys: &mut IncrementalSystem,
    out: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    if sys.is_determined() {
        // The prefix pinned x completely; accept iff the whole image
        // matches the multiset and x is nonzero.
        let x = sys.solve_determined()?;
        if x.iter().any(|c| !c.is_zero()) {
            let w = a.left_mul(&x)?;
            if is_perm_equiv(v, &w)? {
                out.push(x);
            }
        }
        return Ok(());
    }
    if j == columns.len() {
        // Underdetermined leaf: enumerate the affine solution space. Only
        // reachable over a prime field (rank-deficient rational input is
        // rejected up front).
        enumerate_affine_leaf(a, v, sys, out)?;
        return Ok(());
    }
    for t in 0..values.len() {
        if mults[t] == 0 {
            continue;
        }
        let outcome = sys.push(columns[j].clone(), values[t].clone())?;
        match outcome {
            PushOutcome::Inconsistent => {}
            PushOutcome::Redundant => {
                mults[t] -= 1;
                backtrack_columns(a, v, values, mults, columns, j + 1, sys, out)?;
                mults[t] += 1;
            }
            PushOutcome::Added => {
                mults[t] -= 1;
                backtrack_columns(a, v, values, mults, columns, j + 1, sys, out)?;
                mults[t] += 1;
                sys.pop();
            }
        }
    }
    Ok(())
}

fn enumerate_affine_leaf(
    a: &Matrix,
    v: &[Scalar],
    sys: &IncrementalSystem,
    out: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let field = a.field();
    let p = field.modulus().ok_or(Error::RankDeficient)?;
    let k = sys.k;
    // Solve the accumulated system with free variables scanned exhaustively.
    let mut m = Matrix::zero(field, sys.rows.len(), k + 1);
    for (r, (_, coeffs, rhs)) in sys.rows.iter().enumerate() {
        for (c, val) in coeffs.iter().enumerate() {
            m.set(r, c, val.clone());
        }
        m.set(r, k, rhs.clone());
    }
    let (rr, _) = m.rref();
    let sub = {
        // Drop the rhs column to find pivots of the coefficient part.
        let mut coeff_only = Matrix::zero(field, sys.rows.len(), k);
        for r in 0..sys.rows.len() {
            for c in 0..k {
                coeff_only.set(r, c, rr.get(r, c).clone());
            }
        }
        coeff_only
    };
    let pivots = Matrix::pivot_columns(&sub);
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let mut digits = vec![0u64; free.len()];
    loop {
        let mut x = vec![field.zero(); k];
        for (slot, &d) in free.iter().zip(&digits) {
            x[*slot] = field.from_i64(*d as i64);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            let mut val = rr.get(r, k).clone();
            for &fc in &free {
                val = &val - &(rr.get(r, fc) * &x[fc]);
            }
            x[pc] = val;
        }
        if x.iter().any(|c| !c.is_zero()) {
            let w = a.left_mul(&x)?;
            if is_perm_equiv(v, &w)? {
                out.push(x);
            }
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// All permutations sending `v` to the image of a variety point:
/// `detect_all(v, x A)`. Errors when `x` is not actually in the variety.
pub fn lambda_set(a: &Matrix, x: &[Scalar], v: &[Scalar]) -> Result<PermSet> {
    let w = a.left_mul(x)?;
    if x.iter().all(Scalar::is_zero) || !is_perm_equiv(v, &w)? {
        return Err(Error::NotInVariety);
    }
    detect_all(v, &w)
}

/// One solution of `X A = B Y`.
#[derive(Clone, Debug)]
pub struct EquivSolution {
    pub x: Matrix,
    pub y: PermMatrix,
    pub sigma: Permutation,
}

/// Solutions plus the progressively intersected permutation sets, stage `i`
/// being the survivors after row `i+1` of `B` has been taken into account.
#[derive(Clone, Debug)]
pub struct EquivReport {
    pub lambda_stages: Vec<PermSet>,
    pub solutions: Vec<EquivSolution>,
}

pub const DEFAULT_SOLUTION_CAP: usize = 64;

/// Solve `X A = B Y` with the default cap and configuration.
pub fn solve_equiv(a: &Matrix, b: &Matrix) -> Result<EquivReport> {
    solve_equiv_with(a, b, DEFAULT_SOLUTION_CAP, &VarietyConfig::default())
}

/// Solve `X A = B Y`: compute the variety for the first row of `B`, collect
/// its permutation sets, and filter the candidates through the remaining
/// rows, for which membership is a plain linear solve. Only assemblies with
/// invertible `X` are reported, ordered by the one-line notation of `sigma`
/// and capped at `cap`. An empty solution list means the matrices are not
/// equivalent up to permutation.
pub fn solve_equiv_with(
    a: &Matrix,
    b: &Matrix,
    cap: usize,
    config: &VarietyConfig,
) -> Result<EquivReport> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let k = a.rows();
    let n = a.cols();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds n = {n}: no invertible solution can exist"
        )));
    }
    if b.rank() < k {
        return Err(Error::RankDeficient);
    }
    if a.rank() < k {
        // X A would have rank below k while B Y has rank k.
        return Ok(EquivReport { lambda_stages: Vec::new(), solutions: Vec::new() });
    }

    let v1 = b.row(0);
    let var = variety_with(a, v1, VarietyStrategy::Auto, config)?;
    let mut collected: Vec<Permutation> = Vec::new();
    for x in var.points() {
        let w = a.left_mul(x)?;
        collected.extend(detect_all(v1, &w)?.iter().cloned());
    }
    let mut surviving = PermSet::from_vec(collected);
    let mut stages = vec![surviving.clone()];
    for i in 1..k {
        let vi = b.row(i).to_vec();
        surviving.retain(|sigma| {
            sigma
                .act(&vi)
                .ok()
                .and_then(|target| solve_left(a, &target))
                .is_some()
        });
        stages.push(surviving.clone());
    }

    let mut solutions = Vec::new();
    for sigma in surviving.iter() {
        if solutions.len() >= cap {
            break;
        }
        let mut rows = Vec::with_capacity(k);
        let mut ok = true;
        for i in 0..k {
            let target = sigma.act(b.row(i))?;
            match solve_left(a, &target) {
                Some(x) => rows.push(x),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let x = Matrix::from_rows(a.field(), rows)?;
        if x.inverse().is_err() {
            continue;
        }
        solutions.push(EquivSolution {
            x,
            y: PermMatrix::new(sigma.inverse()),
            sigma: sigma.clone(),
        });
    }
    Ok(EquivReport { lambda_stages: stages, solutions })
}

/// Solve `x A = target` exactly; `None` when inconsistent or underdetermined.
pub fn solve_left(a: &Matrix, target: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = a.rows();
    let n = a.cols();
    if target.len() != n {
        return None;
    }
    let mut aug = Matrix::zero(a.field(), n, k + 1);
    for r in 0..n {
        for c in 0..k {
            aug.set(r, c, a.get(c, r).clone());
        }
        aug.set(r, k, target[r].clone());
    }
    let (rr, _) = aug.rref();
    let pivots = Matrix::pivot_columns(&rr);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| rr.get(i, k).clone()).collect())
}
