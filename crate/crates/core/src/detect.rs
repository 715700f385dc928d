//! Deciding whether `w` is a permutation of `v`, and producing one or all
//! witnessing permutations.
//!
//! Three interchangeable strategies sit behind [`DetectStrategy`] and are
//! selectable by name: greedy first-match scanning (`scan`), sorting under a
//! total order of the field (`sort`), and the algebraic cofactor method
//! (`algebraic`) which can also enumerate every witness via [`detect_all`].
//! [`projective_match`] is the scalar-multiple variant used on projective
//! codewords.

use std::cmp::Ordering;
use std::collections::HashMap;

use num::integer::Roots;
use num::rational::BigRational;
use num::Signed;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::perm::Permutation;
use crate::poly::{q_vector, Poly};

/// Witness bound for the all-zero degenerate input: both vectors zero means
/// every one of the `n!` permutations matches, so enumeration is refused
/// beyond this length unless a caller raises the bound explicitly.
pub const DEFAULT_ZERO_ENUM_BOUND: usize = 7;

/// Outcome of a single-witness detection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionResult {
    witness: Option<Permutation>,
}

impl DetectionResult {
    fn not_found() -> DetectionResult {
        DetectionResult { witness: None }
    }

    fn found(sigma: Permutation) -> DetectionResult {
        DetectionResult { witness: Some(sigma) }
    }

    pub fn is_found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness(&self) -> Option<&Permutation> {
        self.witness.as_ref()
    }
}

/// A deterministically ordered set of permutations, all witnessing the same
/// detection instance.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PermSet {
    perms: Vec<Permutation>,
}

impl PermSet {
    pub fn from_vec(mut perms: Vec<Permutation>) -> PermSet {
        perms.sort();
        perms.dedup();
        PermSet { perms }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.perms.binary_search(sigma).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.perms.iter()
    }

    pub fn as_slice(&self) -> &[Permutation] {
        &self.perms
    }

    /// Keep only the permutations satisfying the predicate.
    pub fn retain(&mut self, keep: impl FnMut(&Permutation) -> bool) {
        self.perms.retain(keep);
    }
}

/// A total order on the scalars of one field, used by the sorting strategy.
#[derive(Clone, Debug)]
pub enum FieldOrder {
    /// `0 < 1 < ... < p-1` on a prime field, the usual order on `Q`.
    Natural,
    /// Zero first, then by exponent in the powers of a primitive element.
    PrimitivePowers(Scalar),
}

impl FieldOrder {
    fn comparator(&self, field: FieldSpec) -> Result<Box<dyn Fn(&Scalar, &Scalar) -> Ordering>> {
        match self {
            FieldOrder::Natural => Ok(Box::new(|a, b| a.cmp(b))),
            FieldOrder::PrimitivePowers(alpha) => {
                let p = field.modulus().ok_or(Error::PrimeFieldRequired)?;
                if alpha.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if !alpha.is_primitive() {
                    return Err(Error::NotPrimitive(alpha.to_string()));
                }
                let mut rank: HashMap<u64, u64> = HashMap::new();
                rank.insert(0, 0);
                let mut x = field.one();
                for i in 0..p - 1 {
                    rank.insert(x.residue().unwrap(), i + 1);
                    x = &x * alpha;
                }
                Ok(Box::new(move |a, b| {
                    rank[&a.residue().unwrap()].cmp(&rank[&b.residue().unwrap()])
                }))
            }
        }
    }
}

fn check_sizes(v: &[Scalar], w: &[Scalar]) -> Result<()> {
    if v.len() != w.len() {
        return Err(Error::SizeMismatch { left: v.len(), right: w.len() });
    }
    Ok(())
}

fn common_field(v: &[Scalar], w: &[Scalar]) -> Result<FieldSpec> {
    let first = v.first().or_else(|| w.first()).ok_or(Error::ZeroVector)?;
    let field = first.field();
    if v.iter().chain(w).any(|s| s.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(field)
}

/// Greedy first-match scanning: walk the entries of `w` in order and match
/// each against the first unused equal entry of `v`. Finds a witness exactly
/// when the two multisets of entries coincide.
pub fn detect_first(v: &[Scalar], w: &[Scalar]) -> Result<DetectionResult> {
    check_sizes(v, w)?;
    let n = v.len();
    let mut used = vec![false; n];
    let mut image = Vec::with_capacity(n);
    for wj in w {
        let Some(i) = (0..n).find(|&i| !used[i] && &v[i] == wj) else {
            return Ok(DetectionResult::not_found());
        };
        used[i] = true;
        image.push(i + 1);
    }
    let sigma = Permutation::from_image(image)?;
    debug_assert_eq!(sigma.act(v)?, w);
    Ok(DetectionResult::found(sigma))
}

/// Stable sorting permutation: `sigma_v * v` is ascending under `order`,
/// ties broken by original position.
pub fn sorting_permutation(v: &[Scalar], order: &FieldOrder) -> Result<Permutation> {
    if v.is_empty() {
        return Ok(Permutation::identity(0));
    }
    let field = common_field(v, &[])?;
    let cmp = order.comparator(field)?;
    let mut idx: Vec<usize> = (1..=v.len()).collect();
    idx.sort_by(|&a, &b| cmp(&v[a - 1], &v[b - 1]));
    Permutation::from_image(idx)
}

/// Total-order detection: sort both vectors, compare, and return
/// `sigma_v ∘ sigma_w^-1`. Finds a witness exactly when the sorted
/// sequences agree.
pub fn detect_sorted(v: &[Scalar], w: &[Scalar], order: &FieldOrder) -> Result<DetectionResult> {
    check_sizes(v, w)?;
    if v.is_empty() {
        return Ok(DetectionResult::found(Permutation::identity(0)));
    }
    common_field(v, w)?;
    let sigma_v = sorting_permutation(v, order)?;
    let sigma_w = sorting_permutation(w, order)?;
    if sigma_v.act(v)? != sigma_w.act(w)? {
        return Ok(DetectionResult::not_found());
    }
    let sigma = sigma_v.compose(&sigma_w.inverse())?;
    debug_assert_eq!(sigma.act(v)?, w);
    Ok(DetectionResult::found(sigma))
}

/// Multiset-equality test via the root polynomials: `Q_v = Q_w`.
///
/// Note that the weaker check "`Q_v(w_j) = 0` for all `j`" is only a
/// necessary condition — `v = (1,2)`, `w = (1,1)` passes it without being a
/// permutation pair — so this comparison of full polynomials is the
/// definitive test and the evaluation form is used as a filter only.
pub fn is_perm_equiv(v: &[Scalar], w: &[Scalar]) -> Result<bool> {
    check_sizes(v, w)?;
    if v.is_empty() {
        return Ok(true);
    }
    let field = common_field(v, w)?;
    Ok(Poly::from_roots(field, v) == Poly::from_roots(field, w))
}

/// The cofactor vector of Method 3: entry `i` is `Q_v / ((T - v_i) D_v)`
/// where `D_v` is the gcd of all the `Q_v / (T - v_i)`. Evaluating the
/// vector at a value of `v` lights up exactly the positions holding that
/// value.
#[derive(Clone, Debug)]
pub struct RVector {
    divisor: Poly,
    polys: Vec<Poly>,
}

impl RVector {
    pub fn new(v: &[Scalar]) -> Result<RVector> {
        let field = common_field(v, &[])?;
        let q = Poly::from_roots(field, v);
        let mut cofactors = Vec::with_capacity(v.len());
        for vi in v {
            let linear = Poly::from_coeffs(field, vec![-vi, field.one()]);
            cofactors.push(q.div_exact(&linear)?);
        }
        let mut divisor: Option<Poly> = None;
        for p in &cofactors {
            divisor = Some(match divisor {
                None => p.clone(),
                Some(d) => Poly::gcd(&d, p)?,
            });
        }
        let divisor = divisor.expect("v is nonempty");
        let polys = cofactors
            .iter()
            .map(|p| p.div_exact(&divisor))
            .collect::<Result<Vec<_>>>()?;
        Ok(RVector { divisor, polys })
    }

    /// `D_v`, the common factor stripped from every cofactor.
    pub fn divisor(&self) -> &Poly {
        &self.divisor
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Evaluate every entry at `x` and normalize by the first nonzero value,
    /// yielding the 0/1 indicator row of Method 3. All nonzero entries of
    /// the raw evaluation are equal, which is asserted.
    pub fn indicator_row(&self, x: &Scalar) -> Result<Vec<bool>> {
        let evals: Vec<Scalar> = self.polys.iter().map(|p| p.eval(x)).collect();
        let a_u = evals.iter().find(|e| !e.is_zero()).ok_or_else(|| {
            Error::InvalidParameter("evaluation point is not a value of v".into())
        })?;
        debug_assert!(evals.iter().filter(|e| !e.is_zero()).all(|e| e == a_u));
        Ok(evals.iter().map(|e| !e.is_zero()).collect())
    }
}

/// Enumerate every permutation `sigma` with `sigma * v = w`, using the
/// default bound for the all-zero degenerate input.
pub fn detect_all(v: &[Scalar], w: &[Scalar]) -> Result<PermSet> {
    detect_all_bounded(v, w, DEFAULT_ZERO_ENUM_BOUND)
}

/// As [`detect_all`], with an explicit bound on the all-zero case.
///
/// Builds the Method-3 indicator matrix row by row and extracts every
/// permutation submatrix by backtracking. Rows belonging to equal values
/// have disjoint support, so the search has no dead branches and the number
/// of results is the product of factorials of the duplicate-class sizes.
pub fn detect_all_bounded(v: &[Scalar], w: &[Scalar], zero_bound: usize) -> Result<PermSet> {
    check_sizes(v, w)?;
    let n = v.len();
    if n == 0 {
        return Ok(PermSet::from_vec(vec![Permutation::identity(0)]));
    }
    common_field(v, w)?;
    if !is_perm_equiv(v, w)? {
        return Ok(PermSet::default());
    }
    if v.iter().all(Scalar::is_zero) && n > zero_bound {
        return Err(Error::BoundExceeded(format!(
            "all {n}! permutations match the zero vector; bound is {zero_bound}"
        )));
    }
    let r = RVector::new(v)?;
    let mut rows = Vec::with_capacity(n);
    for wj in w {
        let row = r.indicator_row(wj)?;
        debug_assert!((0..n).all(|i| row[i] == (&v[i] == wj)));
        rows.push(row);
    }
    let mut used = vec![false; n];
    let mut image = Vec::with_capacity(n);
    let mut out = Vec::new();
    extract_submatrices(&rows, 0, &mut used, &mut image, &mut out);
    Ok(PermSet::from_vec(out))
}

fn extract_submatrices(
    rows: &[Vec<bool>],
    j: usize,
    used: &mut Vec<bool>,
    image: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    let n = rows.len();
    if j == n {
        out.push(Permutation::from_image(image.clone()).expect("witness is a bijection"));
        return;
    }
    for i in 0..n {
        if rows[j][i] && !used[i] {
            used[i] = true;
            image.push(i + 1);
            extract_submatrices(rows, j + 1, used, image, out);
            image.pop();
            used[i] = false;
        }
    }
}

/// Every nonzero `c` such that the Vieta vector of `w` equals the Vieta
/// vector of `v` scaled entrywise by `diag(c, c^2, ..., c^m)` — i.e. such
/// that `c^-1 w` is an exact permutation of `v`. Empty when the weights
/// differ or no scaling works. Candidates ascend in the field's natural
/// order.
pub fn projective_scalings(v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>> {
    check_sizes(v, w)?;
    let field = common_field(v, w)?;
    if v.iter().all(Scalar::is_zero) || w.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroVector);
    }
    let qv = q_vector(v)?;
    let qw = q_vector(w)?;
    if qv.len() != qw.len() {
        return Ok(Vec::new());
    }
    let m = qv.len();
    let matches = |c: &Scalar| -> bool {
        let mut power = field.one();
        for j in 0..m {
            power = &power * c;
            if qw.entries()[j] != &power * &qv.entries()[j] {
                return false;
            }
        }
        true
    };
    match field {
        FieldSpec::Prime(_) => {
            Ok(field.elements()?.into_iter().skip(1).filter(|c| matches(c)).collect())
        }
        FieldSpec::Rationals => {
            // The last Vieta entries are nonzero, so c is an m-th root of
            // their ratio; over Q there are at most two.
            let ratio = match (&qw.entries()[m - 1], &qv.entries()[m - 1]) {
                (Scalar::Rat(a), Scalar::Rat(b)) => a / b,
                _ => unreachable!(),
            };
            let mut candidates = rational_nth_roots(&ratio, m as u32);
            candidates.sort();
            Ok(candidates.into_iter().map(Scalar::Rat).filter(|c| matches(c)).collect())
        }
    }
}

/// First valid projective scaling in canonical order, if any: the `c != 0`
/// with `[w] = [sigma * v]` realized as `w = c (sigma * v)`.
pub fn projective_match(v: &[Scalar], w: &[Scalar]) -> Result<Option<Scalar>> {
    Ok(projective_scalings(v, w)?.into_iter().next())
}

/// Exact rational n-th roots of `r` (zero, one, or two values).
fn rational_nth_roots(r: &BigRational, n: u32) -> Vec<BigRational> {
    if r.is_negative() && n % 2 == 0 {
        return Vec::new();
    }
    let num = r.numer().abs();
    let den = r.denom().abs();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if num::pow::pow(rn.clone(), n as usize) != num || num::pow::pow(rd.clone(), n as usize) != den
    {
        return Vec::new();
    }
    let root = BigRational::new(rn, rd);
    if r.is_negative() {
        vec![-root]
    } else if n % 2 == 0 && !root.is_zero() {
        vec![-root.clone(), root]
    } else {
        vec![root]
    }
}

/// A named detection strategy, selectable at runtime.
pub trait DetectStrategy: Sync {
    fn name(&self) -> &'static str;
    fn detect(&self, v: &[Scalar], w: &[Scalar]) -> Result<DetectionResult>;
}

/// Method 1: greedy first-match scanning.
pub struct ScanDetect;

impl DetectStrategy for ScanDetect {
    fn name(&self) -> &'static str {
        "scan"
    }

    fn detect(&self, v: &[Scalar], w: &[Scalar]) -> Result<DetectionResult> {
        detect_first(v, w)
    }
}

/// Method 2: total-order sorting.
pub struct SortDetect {
    pub order: FieldOrder,
}

impl DetectStrategy for SortDetect {
    fn name(&self) -> &'static str {
        "sort"
    }

    fn detect(&self, v: &[Scalar], w: &[Scalar]) -> Result<DetectionResult> {
        detect_sorted(v, w, &self.order)
    }
}

/// Method 3: cofactor evaluation; the witness is the least one in one-line
/// order among all of them.
pub struct AlgebraicDetect;

impl DetectStrategy for AlgebraicDetect {
    fn name(&self) -> &'static str {
        "algebraic"
    }

    fn detect(&self, v: &[Scalar], w: &[Scalar]) -> Result<DetectionResult> {
        let all = detect_all(v, w)?;
        Ok(match all.as_slice().first() {
            Some(sigma) => DetectionResult::found(sigma.clone()),
            None => DetectionResult::not_found(),
        })
    }
}

/// Names accepted by [`strategy_by_name`].
pub fn strategy_names() -> &'static [&'static str] {
    &["scan", "sort", "algebraic"]
}

/// Look up a detection strategy by name; `sort` uses the natural order.
pub fn strategy_by_name(name: &str) -> Result<Box<dyn DetectStrategy>> {
    match name {
        "scan" => Ok(Box::new(ScanDetect)),
        "sort" => Ok(Box::new(SortDetect { order: FieldOrder::Natural })),
        "algebraic" => Ok(Box::new(AlgebraicDetect)),
        other => Err(Error::UnknownStrategy(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn fp_vec(field: FieldSpec, vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|&x| field.from_i64(x)).collect()
    }

    fn v_ex() -> Vec<Scalar> {
        fp_vec(f7(), &[6, 1, 3, 1, 0, 0])
    }

    fn w_ex() -> Vec<Scalar> {
        fp_vec(f7(), &[0, 3, 6, 1, 1, 0])
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn scan_reproduces_first_match_table() {
        let r = detect_first(&v_ex(), &w_ex()).unwrap();
        let sigma = r.witness().unwrap();
        assert_eq!(sigma.one_line(), &[5, 3, 1, 2, 4, 6]);
        assert_eq!(sigma, &perm("(1 5 4 2 3)", 6));

        let same = detect_first(&v_ex(), &v_ex()).unwrap();
        assert!(same.witness().unwrap().is_identity());

        let miss = detect_first(&fp_vec(f7(), &[1, 2]), &fp_vec(f7(), &[1, 1])).unwrap();
        assert!(!miss.is_found());
    }

    #[test]
    fn sort_reproduces_cycle_product() {
        // The two stable sorting permutations and their composite.
        let sv = sorting_permutation(&v_ex(), &FieldOrder::Natural).unwrap();
        assert_eq!(sv, perm("(1 5 3 2 6)", 6));
        let sw = sorting_permutation(&w_ex(), &FieldOrder::Natural).unwrap();
        assert_eq!(sw, perm("(2 6 3 4 5)", 6));

        let r = detect_sorted(&v_ex(), &w_ex(), &FieldOrder::Natural).unwrap();
        assert_eq!(r.witness().unwrap(), &perm("(1 5 4 2 3)", 6));

        let same = detect_sorted(&v_ex(), &v_ex(), &FieldOrder::Natural).unwrap();
        assert!(same.witness().unwrap().is_identity());

        let swap =
            detect_sorted(&fp_vec(f7(), &[0, 1]), &fp_vec(f7(), &[1, 0]), &FieldOrder::Natural)
                .unwrap();
        assert_eq!(swap.witness().unwrap().one_line(), &[2, 1]);
    }

    #[test]
    fn sort_under_primitive_power_order() {
        // Powers of 3 mod 7: 1, 3, 2, 6, 4, 5 — so 2 ranks above 3.
        let order = FieldOrder::PrimitivePowers(f7().from_i64(3));
        let v = fp_vec(f7(), &[2, 3, 0]);
        let sv = sorting_permutation(&v, &order).unwrap();
        assert_eq!(sv.one_line(), &[3, 2, 1]);

        let r = detect_sorted(&v_ex(), &w_ex(), &order).unwrap();
        assert!(r.is_found());
        assert_eq!(r.witness().unwrap().act(&v_ex()).unwrap(), w_ex());

        let bad = FieldOrder::PrimitivePowers(f7().from_i64(2));
        assert!(detect_sorted(&v_ex(), &w_ex(), &bad).is_err());
    }

    #[test]
    fn detect_all_enumerates_every_witness() {
        let all = detect_all(&v_ex(), &w_ex()).unwrap();
        let expected: Vec<Permutation> =
            ["(1 5 4 2 3)", "(1 5 2 3)", "(1 6 5 4 2 3)", "(1 6 5 2 3)"]
                .iter()
                .map(|s| perm(s, 6))
                .collect();
        assert_eq!(all, PermSet::from_vec(expected));
        // Two duplicate classes of size two.
        assert_eq!(all.len(), 4);

        let distinct = fp_vec(f7(), &[1, 2, 3]);
        let only = detect_all(&distinct, &distinct).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only.as_slice()[0].is_identity());
    }

    #[test]
    fn divisor_of_cofactors_matches_worked_example() {
        let r = RVector::new(&v_ex()).unwrap();
        // (T - 1) T
        assert_eq!(r.divisor().coeffs(), fp_vec(f7(), &[0, 6, 1]).as_slice());
        // Row structure: evaluation at w_j lights positions with v_i = w_j.
        let row = r.indicator_row(&f7().zero()).unwrap();
        assert_eq!(row, vec![false, false, false, false, true, true]);
    }

    #[test]
    fn multiset_test_is_definitive() {
        assert!(is_perm_equiv(&v_ex(), &w_ex()).unwrap());
        // Vanishing of Q_v on all entries of w would pass here; comparing
        // the polynomials rejects it.
        let v = fp_vec(f7(), &[1, 2]);
        let w = fp_vec(f7(), &[1, 1]);
        assert!(!is_perm_equiv(&v, &w).unwrap());
        let q = Poly::from_roots(f7(), &v);
        assert!(w.iter().all(|wj| q.eval(wj).is_zero()));
    }

    #[test]
    fn zero_vector_enumeration_is_bounded() {
        let z3 = fp_vec(f7(), &[0, 0, 0]);
        assert_eq!(detect_all(&z3, &z3).unwrap().len(), 6);
        let z8 = fp_vec(f7(), &[0; 8]);
        assert!(matches!(detect_all(&z8, &z8), Err(Error::BoundExceeded(_))));
        assert_eq!(detect_all_bounded(&z8, &z8, 8).unwrap().len(), 40320);
    }

    #[test]
    fn projective_match_worked_rows() {
        let g = v_ex();
        let c = projective_match(&g, &fp_vec(f7(), &[5, 2, 0, 5, 0, 1])).unwrap();
        assert_eq!(c, Some(f7().from_i64(5)));

        let none = projective_match(&g, &fp_vec(f7(), &[5, 5, 1, 1, 0, 0])).unwrap();
        assert_eq!(none, None);

        let unit = projective_match(&g, &g).unwrap();
        assert_eq!(unit, Some(f7().one()));
    }

    #[test]
    fn projective_match_over_rationals() {
        let q = FieldSpec::rationals();
        let v = fp_vec(q, &[1, -1, 0]);
        let w = fp_vec(q, &[2, 0, -2]);
        let c = projective_match(&v, &w).unwrap().unwrap();
        // c = ±2 both scale the multiset onto itself; the least comes first.
        assert_eq!(c, q.from_i64(-2));
        let scaled: Vec<Scalar> = w.iter().map(|x| x * &c.inv().unwrap()).collect();
        assert!(is_perm_equiv(&v, &scaled).unwrap());

        let none = projective_match(&v, &fp_vec(q, &[3, 5, 0])).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn strategies_are_registered() {
        for name in strategy_names() {
            let s = strategy_by_name(name).unwrap();
            assert_eq!(&s.name(), name);
            let r = s.detect(&v_ex(), &w_ex()).unwrap();
            assert_eq!(r.witness().unwrap().act(&v_ex()).unwrap(), w_ex());
        }
        assert!(strategy_by_name("nope").is_err());
    }

    fn oracle_all(v: &[Scalar], w: &[Scalar]) -> Vec<Permutation> {
        // n! enumeration, the independent route detect_all is checked against.
        fn rec(n: usize, image: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if image.len() == n {
                out.push(image.clone());
                return;
            }
            for i in 1..=n {
                if !used[i] {
                    used[i] = true;
                    image.push(i);
                    rec(n, image, used, out);
                    image.pop();
                    used[i] = false;
                }
            }
        }
        let n = v.len();
        let mut all = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut all);
        all.into_iter()
            .map(|img| Permutation::from_image(img).unwrap())
            .filter(|s| s.act(v).unwrap() == w)
            .collect()
    }

    fn shuffled_identity(n: usize, seed: u64) -> Permutation {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            image.swap(i, j);
        }
        Permutation::from_image(image).unwrap()
    }

    proptest! {
        #[test]
        fn detect_all_matches_brute_force(
            vals in proptest::collection::vec(0i64..5, 1..6),
            wals in proptest::collection::vec(0i64..5, 1..6),
        ) {
            prop_assume!(vals.len() == wals.len());
            let f5 = FieldSpec::prime(5).unwrap();
            let v = fp_vec(f5, &vals);
            let w = fp_vec(f5, &wals);
            let fast = detect_all(&v, &w).unwrap();
            let slow = PermSet::from_vec(oracle_all(&v, &w));
            prop_assert_eq!(fast, slow);
        }

        // |detect_all(v, sigma * v)| = product of factorials of duplicate
        // class sizes, and the single-witness strategies agree with the set.
        #[test]
        fn strategies_agree_and_count_law(
            vals in proptest::collection::vec(0i64..5, 1..7),
            seed in 0u64..1000,
        ) {
            let f5 = FieldSpec::prime(5).unwrap();
            let v = fp_vec(f5, &vals);
            prop_assume!(!v.iter().all(Scalar::is_zero));
            let sigma = shuffled_identity(v.len(), seed);
            let w = sigma.act(&v).unwrap();

            let all = detect_all(&v, &w).unwrap();
            let mut counts = std::collections::BTreeMap::new();
            for x in &v {
                *counts.entry(x.clone()).or_insert(0usize) += 1;
            }
            let expected: usize = counts.values().map(|&s| (1..=s).product::<usize>()).product();
            prop_assert_eq!(all.len(), expected);

            let first = detect_first(&v, &w).unwrap();
            prop_assert!(all.contains(first.witness().unwrap()));
            let sorted = detect_sorted(&v, &w, &FieldOrder::Natural).unwrap();
            prop_assert!(all.contains(sorted.witness().unwrap()));
        }

        // projective_match recovers a scaling from scaled permuted vectors.
        #[test]
        fn projective_recovery(
            vals in proptest::collection::vec(0i64..7, 2..7),
            c0 in 1i64..7,
            seed in 0u64..1000,
        ) {
            let v = fp_vec(f7(), &vals);
            prop_assume!(!v.iter().all(Scalar::is_zero));
            let sigma = shuffled_identity(v.len(), seed);
            let c = f7().from_i64(c0);
            let w: Vec<Scalar> = sigma.act(&v).unwrap().iter().map(|x| x * &c).collect();
            let got = projective_match(&v, &w).unwrap().expect("a scaling exists");
            let unscaled: Vec<Scalar> = w.iter().map(|x| x * &got.inv().unwrap()).collect();
            prop_assert!(!detect_all(&v, &unscaled).unwrap().is_empty());
        }
    }
}
