//! Exact arithmetic on integer polynomials.
//!
//! Coefficients are arbitrary-precision: heights at desk scale fit machine
//! words, but resultants and Sturm remainders do not.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::rat::RatInterval;

/// An integer polynomial, coefficients stored low-to-high with no trailing
/// zeros. The zero polynomial is the empty coefficient list; it is
/// representable but rejected by most operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// The class parameters (n, Q): degree at most n, height at most Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyClassParams {
    pub max_degree: usize,
    pub max_height: i64,
}

impl PolyClassParams {
    pub fn new(max_degree: usize, max_height: i64) -> Result<Self> {
        if max_degree < 1 || max_height < 1 {
            return Err(Error::InvalidConfig(format!(
                "class parameters require n >= 1 and Q >= 1, got n={max_degree}, Q={max_height}"
            )));
        }
        Ok(PolyClassParams {
            max_degree,
            max_height,
        })
    }
}

impl IntPolynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros to keep the representation canonical.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial t.
    pub fn t() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Height H(P) = max |a_j|.
    pub fn height(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().map(|c| c.abs()).max().unwrap())
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of p(num/den) for den > 0, computed without building rationals.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i32 {
        debug_assert!(den.is_positive());
        if self.is_zero() {
            return 0;
        }
        // sum a_k num^k den^(d-k) by Horner in num with running den powers
        let d = self.coeffs.len() - 1;
        let mut acc = self.coeffs[d].clone();
        let mut den_pow = BigInt::one();
        for k in (0..d).rev() {
            den_pow *= den;
            acc = acc * num + &self.coeffs[k] * &den_pow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> i32 {
        self.sign_at(x.numer(), x.denom())
    }

    /// Exact image bounds of p over a rational interval (Horner, outward).
    pub fn eval_interval(&self, iv: &RatInterval) -> RatInterval {
        let coeffs: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        iv.eval_poly(&coeffs)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// gcd of the coefficient absolute values (positive), zero for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and flips sign so the leading coefficient is
    /// positive. Idempotent; preserves the root set.
    pub fn primitive_normal_form(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            g = -g;
        }
        let coeffs = self.coeffs.iter().map(|c| c / &g).collect();
        Ok(IntPolynomial { coeffs })
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Discriminant b1^2 - 4 b2 b0 of a degree-2 polynomial.
    pub fn discriminant(&self) -> Result<BigInt> {
        match self.degree() {
            Some(2) => {
                let b0 = &self.coeffs[0];
                let b1 = &self.coeffs[1];
                let b2 = &self.coeffs[2];
                Ok(b1 * b1 - BigInt::from(4) * b2 * b0)
            }
            d => Err(Error::WrongDegree {
                expected: 2,
                got: d.map_or(0, |d| d),
            }),
        }
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn multiply(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// p(u - t) as a polynomial in t, for rational-free integer u.
    pub fn compose_reflect(&self, u: &BigInt) -> IntPolynomial {
        // Horner on p with argument (u - t)
        let mut acc = IntPolynomial::zero();
        let arg = IntPolynomial::new(vec![u.clone(), BigInt::from(-1)]);
        for c in self.coeffs.iter().rev() {
            acc = acc.multiply(&arg);
            acc = acc.add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// p(t + u) as a polynomial in t, for integer u.
    pub fn compose_shift(&self, u: &BigInt) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        let arg = IntPolynomial::new(vec![u.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.multiply(&arg);
            acc = acc.add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    /// Quotient of exact division over Q, or None when the division leaves a
    /// remainder. The quotient is returned as an integer polynomial times a
    /// positive denominator: q(t)/den.
    pub fn div_exact_rational(&self, divisor: &IntPolynomial) -> Option<(IntPolynomial, BigInt)> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some((IntPolynomial::zero(), BigInt::one()));
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        // work over rationals, then clear denominators
        let lc = BigRational::from(divisor.leading_coeff().unwrap().clone());
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = &rem[k + dd] / &lc;
            quot[k] = q.clone();
            for j in 0..=dd {
                let delta = &q * BigRational::from(divisor.coeffs[j].clone());
                rem[k + j] = &rem[k + j] - delta;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut den = BigInt::one();
        for q in &quot {
            den = den.lcm(q.denom());
        }
        let coeffs = quot
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Some((IntPolynomial::new(coeffs), den))
    }

    /// True when `divisor` divides self over the rationals.
    pub fn divisible_by(&self, divisor: &IntPolynomial) -> bool {
        self.div_exact_rational(divisor).is_some()
    }

    /// Cauchy root bound 1 + H(p)/|a_d|: every real root lies in
    /// [-bound, bound].
    pub fn cauchy_bound(&self) -> Result<BigRational> {
        let h = self.height()?;
        let lead = self.leading_coeff().unwrap().abs();
        Ok(BigRational::one() + BigRational::new(h, lead))
    }

    /// Resultant via fraction-free Gaussian elimination of the Sylvester
    /// matrix. Zero iff p and q share a complex root.
    pub fn resultant(&self, other: &IntPolynomial) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let m = self.degree().unwrap();
        let n = other.degree().unwrap();
        if m == 0 {
            return Ok(self.coeffs[0].pow(n as u32));
        }
        if n == 0 {
            return Ok(other.coeffs[0].pow(m as u32));
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + k] = c.clone();
            }
        }
        Ok(bareiss_determinant(mat))
    }

    /// Primitive gcd over Z (positive leading coefficient); constant 1 when
    /// coprime.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() {
            return if b.is_zero() {
                IntPolynomial::zero()
            } else {
                b.primitive_normal_form().unwrap()
            };
        }
        if b.is_zero() {
            return a.primitive_normal_form().unwrap();
        }
        a = a.primitive_normal_form().unwrap();
        b = b.primitive_normal_form().unwrap();
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_zero() {
                IntPolynomial::zero()
            } else {
                r.primitive_normal_form().unwrap()
            };
        }
        a
    }

    /// p / gcd(p, p'), primitive-normalized: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree().unwrap() == 0 {
            return Ok(IntPolynomial::one());
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_normal_form();
        }
        let (q, _den) = self
            .div_exact_rational(&g)
            .expect("gcd(p, p') must divide p");
        q.primitive_normal_form()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

/// Pseudo-remainder with a positive scaling factor, so that sign behavior is
/// predictable for Sturm-style chains.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().unwrap();
    let mut r = a.clone();
    let lc_b = b.leading_coeff().unwrap().clone();
    let lc_b_abs = lc_b.abs();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        // r <- |lc_b| * r - sign-matched multiple of b
        let lead_r = r.leading_coeff().unwrap().clone();
        let mut coeffs = vec![BigInt::zero(); dr + 1];
        for (k, c) in r.coeffs().iter().enumerate() {
            coeffs[k] = c * &lc_b_abs;
        }
        let factor = if lc_b.is_negative() { -&lead_r } else { lead_r.clone() };
        for (k, c) in b.coeffs().iter().enumerate() {
            coeffs[k + dr - db] -= c * &factor;
        }
        r = IntPolynomial::new(coeffs);
    }
    r
}

/// Fraction-free determinant (Bareiss). Consumes the matrix.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn height_examples() {
        assert_eq!(p(&[-2, 0, 1]).height().unwrap(), BigInt::from(2));
        assert_eq!(p(&[7, -5, 0, 3]).height().unwrap(), BigInt::from(7));
        assert_eq!(p(&[1, -4]).height().unwrap(), BigInt::from(4));
        assert!(IntPolynomial::zero().height().is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p(&[-2, 0, 1]).evaluate(&rat_int(1)), rat_int(-1));
        assert_eq!(p(&[-2, 0, 1]).evaluate(&rat(3, 2)), rat(1, 4));
        assert_eq!(IntPolynomial::zero().evaluate(&rat_int(5)), rat_int(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[-2, 0, 1]).derivative(), p(&[0, 2]));
        assert_eq!(p(&[7]).derivative(), IntPolynomial::zero());
        assert_eq!(p(&[0, -1, 0, 1]).derivative(), p(&[-1, 0, 3]));
    }

    #[test]
    fn primitive_normal_form_examples() {
        assert_eq!(p(&[2, 4, 6]).primitive_normal_form().unwrap(), p(&[1, 2, 3]));
        assert_eq!(p(&[1, -1]).primitive_normal_form().unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 1]).primitive_normal_form().unwrap(), p(&[-2, 0, 1]));
        // idempotent
        let q = p(&[2, 4, 6]).primitive_normal_form().unwrap();
        assert_eq!(q.primitive_normal_form().unwrap(), q);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[-2, 0, 1]).discriminant().unwrap(), BigInt::from(8));
        assert_eq!(p(&[1, 0, 1]).discriminant().unwrap(), BigInt::from(-4));
        assert_eq!(p(&[1, 3, 2]).discriminant().unwrap(), BigInt::from(1));
        assert!(p(&[1, 1]).discriminant().is_err());
    }

    #[test]
    fn resultant_examples() {
        // (t-1, t+1) -> 2
        assert_eq!(p(&[-1, 1]).resultant(&p(&[1, 1])).unwrap(), BigInt::from(2));
        // shared roots -> 0
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-2, 0, 1])).unwrap(), BigInt::zero());
        // (t^2-2, t^2-3) -> 1, hand-checkable 4x4 Sylvester determinant
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-3, 0, 1])).unwrap(), BigInt::one());
    }

    #[test]
    fn ring_op_examples() {
        assert_eq!(p(&[1, 1]).multiply(&p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 1, 1]).sub(&p(&[0, 0, 1])), p(&[0, 1]));
        assert_eq!(p(&[1, 2]).multiply(&p(&[1, 3])), p(&[1, 5, 6]));
    }

    #[test]
    fn disc_resultant_identity() {
        // disc(p) * b2 = -resultant(p, p') for quadratics
        for (b2, b1, b0) in [(1i64, 0, -2), (2, 3, 1), (3, -5, 7), (-2, 1, 5)] {
            let q = p(&[b0, b1, b2]);
            let disc = q.discriminant().unwrap();
            let res = q.resultant(&q.derivative()).unwrap();
            assert_eq!(disc * BigInt::from(b2), -res, "failed for {b2},{b1},{b0}");
        }
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 -> t-1
        assert_eq!(p(&[1, -2, 1]).squarefree_part().unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 1]).squarefree_part().unwrap(), p(&[-2, 0, 1]));
        // t^3 - t^2 -> t^2 - t
        assert_eq!(p(&[0, 0, -1, 1]).squarefree_part().unwrap(), p(&[0, -1, 1]));
        let g = p(&[-1, 0, 1]).gcd(&p(&[1, 1]));
        assert_eq!(g, p(&[1, 1]));
        let g = p(&[-2, 0, 1]).gcd(&p(&[-3, 0, 1]));
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn division_checks() {
        let prod = p(&[1, 2]).multiply(&p(&[1, 3]));
        assert!(prod.divisible_by(&p(&[1, 2])));
        assert!(prod.divisible_by(&p(&[1, 3])));
        assert!(!prod.divisible_by(&p(&[1, 1])));
        let (q, den) = prod.div_exact_rational(&p(&[1, 2])).unwrap();
        // quotient (t+3) possibly scaled: q/den == t+3
        assert_eq!(q, p(&[1, 3]).scale(&den));
    }

    #[test]
    fn compose_helpers() {
        let q = p(&[-2, 0, 1]); // t^2 - 2
        // p(3 - t) = (3-t)^2 - 2 = t^2 - 6t + 7
        assert_eq!(q.compose_reflect(&BigInt::from(3)), p(&[7, -6, 1]));
        // p(t + 1) = t^2 + 2t - 1
        assert_eq!(q.compose_shift(&BigInt::from(1)), p(&[-1, 2, 1]));
    }
}
