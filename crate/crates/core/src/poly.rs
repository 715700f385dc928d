//! Univariate polynomials with exact coefficients, plus the Vieta
//! coefficient vector that fingerprints the multiset of a vector's entries.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A polynomial over a fixed field, coefficients lowest-degree first with no
/// trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        let field = c.field();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { field, coeffs }
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field, coeffs }
    }

    /// Scale so the leading coefficient is 1. Errors on the zero polynomial.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        Ok(self.mul_scalar(&lead.inv()?))
    }

    /// Euclidean division: `self = q * den + r` with `deg r < deg den`.
    pub fn divmod(&self, den: &Poly) -> Result<(Poly, Poly)> {
        let dlead = den.leading().ok_or(Error::DivisionByZero)?;
        let dinv = dlead.inv()?;
        let ddeg = den.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let shift = rem.len() - 1 - ddeg;
            let c = &rem[rem.len() - 1] * &dinv;
            if !c.is_zero() {
                quo[shift] = c.clone();
                for (i, dc) in den.coeffs.iter().enumerate() {
                    rem[shift + i] = &rem[shift + i] - &(&c * dc);
                }
            }
            rem.pop();
            while rem.last().map_or(false, Scalar::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(self.field, quo), Poly::from_coeffs(self.field, rem)))
    }

    /// Exact division; errors if `den` does not divide `self`.
    pub fn div_exact(&self, den: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(den)?;
        if !r.is_zero() {
            return Err(Error::InvalidParameter("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic polynomial vanishing exactly on the given multiset of roots.
    /// The empty list gives the constant 1.
    pub fn from_roots(field: FieldSpec, roots: &[Scalar]) -> Poly {
        let mut out = Poly::one(field);
        for r in roots {
            let linear = Poly::from_coeffs(field, vec![-r, field.one()]);
            out = out.mul(&linear);
        }
        out
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    /// Errors when both inputs are zero.
    pub fn gcd(f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All roots in a prime field with multiplicities, found by scanning the
    /// `p` candidates and stripping linear factors. Returns `(root, mult)`
    /// pairs ascending by root. Errors on the zero polynomial or over `Q`.
    pub fn roots_in_field(&self) -> Result<Vec<(Scalar, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.field.is_prime_field() {
            return Err(Error::PrimeFieldRequired);
        }
        let mut out = Vec::new();
        let mut f = self.clone();
        for cand in self.field.elements()? {
            let mut mult = 0;
            while f.degree().map_or(false, |d| d >= 1) && f.eval(&cand).is_zero() {
                let linear = Poly::from_coeffs(self.field, vec![-&cand, self.field.one()]);
                f = f.div_exact(&linear)?;
                mult += 1;
            }
            if mult > 0 {
                out.push((cand, mult));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var('T'))
    }
}

impl Poly {
    /// Render with a chosen variable letter.
    pub fn display_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("{c}"),
                1 if c.is_one() => format!("{var}"),
                1 => format!("{c}{var}"),
                _ if c.is_one() => format!("{var}^{i}"),
                _ => format!("{c}{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// The Vieta coefficient vector of a nonzero vector `v` of weight `m`:
/// entry `j` (1-based) is `(-1)^j q_{n-j}(v)`, the `j`-th elementary
/// symmetric function of the entries. Length equals the weight; the last
/// entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QVector {
    entries: Vec<Scalar>,
}

impl QVector {
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Compute the Vieta vector of `v` by the elementary-symmetric recurrence
/// over the nonzero entries. Errors on the zero vector.
pub fn q_vector(v: &[Scalar]) -> Result<QVector> {
    let nonzero: Vec<&Scalar> = v.iter().filter(|s| !s.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroVector);
    }
    let field = nonzero[0].field();
    let m = nonzero.len();
    let mut e = vec![field.zero(); m + 1];
    e[0] = field.one();
    for x in nonzero {
        for j in (1..=m).rev() {
            e[j] = &e[j] + &(&e[j - 1] * x);
        }
    }
    let entries = e.split_off(1);
    debug_assert!(!entries.last().unwrap().is_zero());
    Ok(QVector { entries })
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

    #[test]
    fn from_roots_matches_expanded_product() {
        // Expanded by hand: (T-6)(T-1)(T-3)(T-1)T^2 over F_7
        // = T^6 + 3T^5 + 2T^4 + 4T^3 + 4T^2.
        let p = Poly::from_roots(f7(), &fp_vec(f7(), &[6, 1, 3, 1, 0, 0]));
        assert_eq!(p.coeffs(), fp_vec(f7(), &[0, 0, 4, 4, 2, 3, 1]).as_slice());
    }

    #[test]
    fn from_roots_edge_cases() {
        assert_eq!(Poly::from_roots(f7(), &[]), Poly::one(f7()));
        let sq = Poly::from_roots(f7(), &fp_vec(f7(), &[0, 0]));
        assert_eq!(sq.coeffs(), fp_vec(f7(), &[0, 0, 1]).as_slice());
    }

    #[test]
    fn gcd_of_cofactor_family_strips_repeats() {
        // For v = (6,1,3,1,0,0): fold gcd over Q_v/(T - v_i). The repeated
        // values 1 and 0 survive once each, giving (T-1)T = T^2 + 6T.
        let v = fp_vec(f7(), &[6, 1, 3, 1, 0, 0]);
        let q = Poly::from_roots(f7(), &v);
        let mut d: Option<Poly> = None;
        for vi in &v {
            let linear = Poly::from_coeffs(f7(), vec![-vi, f7().one()]);
            let p_i = q.div_exact(&linear).unwrap();
            d = Some(match d {
                None => p_i,
                Some(acc) => Poly::gcd(&acc, &p_i).unwrap(),
            });
        }
        assert_eq!(d.unwrap().coeffs(), fp_vec(f7(), &[0, 6, 1]).as_slice());
    }

    #[test]
    fn gcd_simple_cases() {
        let f = Poly::from_coeffs(f7(), fp_vec(f7(), &[1, 0, 3]));
        assert_eq!(Poly::gcd(&f, &f).unwrap(), f.monic().unwrap());

        let q = FieldSpec::rationals();
        let a = Poly::from_coeffs(q, fp_vec(q, &[-1, 0, 1])); // T^2 - 1
        let b = Poly::from_coeffs(q, fp_vec(q, &[-1, 1])); // T - 1
        assert_eq!(Poly::gcd(&a, &b).unwrap(), b);

        assert!(Poly::gcd(&Poly::zero(f7()), &Poly::zero(f7())).is_err());
    }

    #[test]
    fn roots_of_quartics_over_f7() {
        // 4Y^4 - 4Y^3 + 4Y^2 - 5Y + 1 = (-3)(Y-1)^2 (Y-3)^2
        let u1 = Poly::from_coeffs(f7(), fp_vec(f7(), &[1, -5, 4, -4, 4]));
        let roots: Vec<(u64, usize)> = u1
            .roots_in_field()
            .unwrap()
            .into_iter()
            .map(|(r, m)| (r.residue().unwrap(), m))
            .collect();
        assert_eq!(roots, vec![(1, 2), (3, 2)]);

        // 4Y^4 - 3Y^3 + 2Y^2 - 4Y + 1 = (-3)(Y-1)^2 (Y+2)(Y+1)
        let u2 = Poly::from_coeffs(f7(), fp_vec(f7(), &[1, -4, 2, -3, 4]));
        let roots: Vec<(u64, usize)> = u2
            .roots_in_field()
            .unwrap()
            .into_iter()
            .map(|(r, m)| (r.residue().unwrap(), m))
            .collect();
        assert_eq!(roots, vec![(1, 2), (5, 1), (6, 1)]);
    }

    #[test]
    fn root_of_linear() {
        for c in 0..7 {
            let lin = Poly::from_coeffs(f7(), fp_vec(f7(), &[-c, 1]));
            let roots = lin.roots_in_field().unwrap();
            assert_eq!(roots, vec![(f7().from_i64(c), 1)]);
        }
    }

    #[test]
    fn q_vector_examples() {
        let q = q_vector(&fp_vec(f7(), &[6, 1, 3, 1, 0, 0])).unwrap();
        assert_eq!(q.entries(), fp_vec(f7(), &[4, 2, 3, 4]).as_slice());

        let q = q_vector(&fp_vec(f7(), &[5, 5, 1, 1, 0, 0])).unwrap();
        assert_eq!(q.entries(), fp_vec(f7(), &[5, 4, 4, 4]).as_slice());

        let q = q_vector(&fp_vec(f7(), &[4, 0, 0])).unwrap();
        assert_eq!(q.entries(), fp_vec(f7(), &[4]).as_slice());

        assert!(q_vector(&fp_vec(f7(), &[0, 0])).is_err());
    }

    #[test]
    fn eval_and_divmod_agree() {
        let f = Poly::from_coeffs(f7(), fp_vec(f7(), &[3, 0, 1, 2]));
        let g = Poly::from_coeffs(f7(), fp_vec(f7(), &[1, 1]));
        let (q, r) = f.divmod(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
    }

    proptest! {
        // q_vector (elementary-symmetric route) must agree with the
        // coefficients of the expanded polynomial from_roots builds:
        // entry j = (-1)^j * coeff of T^{n-j}; coeffs below T^{n-m} vanish.
        #[test]
        fn q_vector_consistent_with_from_roots(vals in proptest::collection::vec(0i64..7, 1..8)) {
            let v = fp_vec(f7(), &vals);
            let m = v.iter().filter(|s| !s.is_zero()).count();
            prop_assume!(m > 0);
            let n = v.len();
            let poly = Poly::from_roots(f7(), &v);
            let q = q_vector(&v).unwrap();
            prop_assert_eq!(q.len(), m);
            for j in 1..=m {
                let sign = if j % 2 == 0 { f7().one() } else { -f7().one() };
                prop_assert_eq!(&q.entries()[j - 1] * &sign, poly.coeff(n - j));
            }
            for j in m + 1..=n {
                prop_assert!(poly.coeff(n - j).is_zero());
            }
        }

        // gcd divides both inputs exactly and the cofactors are coprime.
        #[test]
        fn gcd_divides_and_cofactors_coprime(
            a in proptest::collection::vec(0i64..5, 1..6),
            b in proptest::collection::vec(0i64..5, 1..6),
        ) {
            let f5 = FieldSpec::prime(5).unwrap();
            let f = Poly::from_coeffs(f5, fp_vec(f5, &a));
            let g = Poly::from_coeffs(f5, fp_vec(f5, &b));
            prop_assume!(!f.is_zero() || !g.is_zero());
            let d = Poly::gcd(&f, &g).unwrap();
            let fq = if f.is_zero() { None } else { Some(f.div_exact(&d).unwrap()) };
            let gq = if g.is_zero() { None } else { Some(g.div_exact(&d).unwrap()) };
            if let (Some(fq), Some(gq)) = (fq, gq) {
                let dd = Poly::gcd(&fq, &gq).unwrap();
                prop_assert_eq!(dd.degree(), Some(0));
            }
        }
    }
}
