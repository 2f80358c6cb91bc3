//! Plane regions (rectangles, squares, strips around rational-coefficient
//! polynomial curves) and exact membership tests for conjugate root pairs.
//!
//! All memberships are strict (open regions). Strip widths of the form
//! coef * Q^(-lambda) are kept symbolic; comparisons against them go through
//! exact power identities, so no irrational value is ever rounded inside a
//! decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyint::IntPolynomial;
use crate::rat::{fmt_rational, nth_root_bounds, rat_int, RatInterval};
use crate::realroots::{count_roots_in_open_interval, isolate_real_roots, RootEnclosure};

/// Exclusion band around the diagonal: the region must keep
/// |x1 - x2| >= epsilon.
#[derive(Debug, Clone)]
pub struct DiagonalExclusion {
    pub epsilon: BigRational,
}

impl DiagonalExclusion {
    pub fn new(epsilon: BigRational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        Ok(DiagonalExclusion { epsilon })
    }
}

/// Optional record of how a rectangle side was produced: side_i =
/// c_i * Q^(-s_i).
#[derive(Debug, Clone)]
pub struct RectProvenance {
    pub c: [BigRational; 2],
    pub s: [BigRational; 2],
    pub q: i64,
}

/// An open rectangle I1 x I2 with exact rational corners.
#[derive(Debug, Clone)]
pub struct Rectangle {
    pub x1_lo: BigRational,
    pub x1_hi: BigRational,
    pub x2_lo: BigRational,
    pub x2_hi: BigRational,
    pub provenance: Option<RectProvenance>,
}

impl Rectangle {
    pub fn new(
        x1_lo: BigRational,
        x1_hi: BigRational,
        x2_lo: BigRational,
        x2_hi: BigRational,
    ) -> Result<Self> {
        if x1_lo >= x1_hi || x2_lo >= x2_hi {
            return Err(Error::InvalidConfig("rectangle sides must be nonempty".into()));
        }
        Ok(Rectangle {
            x1_lo,
            x1_hi,
            x2_lo,
            x2_hi,
            provenance: None,
        })
    }

    pub fn mu2(&self) -> BigRational {
        (&self.x1_hi - &self.x1_lo) * (&self.x2_hi - &self.x2_lo)
    }

    /// Exact inf over the closed rectangle of |x1 - x2|.
    pub fn diagonal_gap(&self) -> BigRational {
        // zero when the coordinate intervals overlap
        if self.x1_lo <= self.x2_hi && self.x2_lo <= self.x1_hi {
            return BigRational::zero();
        }
        if self.x2_lo > self.x1_hi {
            &self.x2_lo - &self.x1_hi
        } else {
            &self.x1_lo - &self.x2_hi
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "[{},{}]x[{},{}]",
            fmt_rational(&self.x1_lo),
            fmt_rational(&self.x1_hi),
            fmt_rational(&self.x2_lo),
            fmt_rational(&self.x2_hi)
        )
    }
}

/// A polynomial curve y = f(x) with exact rational coefficients on a domain
/// J = [a, b].
#[derive(Debug, Clone)]
pub struct RationalCurve {
    coeffs: Vec<BigRational>,
    pub a: BigRational,
    pub b: BigRational,
}

impl RationalCurve {
    pub fn new(coeffs: Vec<BigRational>, a: BigRational, b: BigRational) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidConfig("curve domain must satisfy a < b".into()));
        }
        let mut coeffs = coeffs;
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Ok(RationalCurve { coeffs, a, b })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, iv: &RatInterval) -> RatInterval {
        iv.eval_poly(&self.coeffs)
    }

    fn derivative_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
            .collect()
    }

    /// True when f(x) = x identically; such a curve never admits a
    /// diagonal-excluded strip and is rejected at validation.
    pub fn is_identity(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[0].is_zero() && self.coeffs[1].is_one()
    }

    /// Certified enclosure of sup over J of |f'|: endpoint values exactly,
    /// critical values (roots of f'' in J) through refined enclosures.
    pub fn sup_abs_derivative(&self, bits: u32) -> RatInterval {
        let deriv = self.derivative_coeffs();
        if deriv.is_empty() {
            return RatInterval::point(BigRational::zero());
        }
        let mut best = RatInterval::point(eval_rat_poly(&deriv, &self.a).abs());
        let at_b = RatInterval::point(eval_rat_poly(&deriv, &self.b).abs());
        best = max_interval(&best, &at_b);
        // critical points: roots of f'' inside (a, b)
        let second: Vec<BigRational> = deriv
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
            .collect();
        if let Some(ip) = clear_denominators(&second) {
            if !ip.is_zero() && ip.degree().map_or(false, |d| d >= 1) {
                if let Ok(roots) = isolate_real_roots(&ip) {
                    let width = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
                    for r in roots {
                        if r.cmp_rational(&self.a) == Ordering::Greater
                            && r.cmp_rational(&self.b) == Ordering::Less
                        {
                            let fine = r.refine(&width);
                            let val = fine.interval().eval_poly(&deriv).abs();
                            best = max_interval(&best, &val);
                        }
                    }
                }
            }
        }
        best
    }
}

fn eval_rat_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn max_interval(a: &RatInterval, b: &RatInterval) -> RatInterval {
    RatInterval::new(a.lo.clone().max(b.lo.clone()), a.hi.clone().max(b.hi.clone()))
}

/// Clears denominators of a rational polynomial into an integer one.
fn clear_denominators(coeffs: &[BigRational]) -> Option<IntPolynomial> {
    use num_integer::Integer;
    if coeffs.is_empty() {
        return Some(IntPolynomial::zero());
    }
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    Some(IntPolynomial::new(ints))
}

/// Half-width of a strip: an exact rational, or the symbolic power law
/// coef * Q^(-lambda) kept for exact comparisons.
#[derive(Debug, Clone)]
pub enum StripWidth {
    Exact(BigRational),
    PowerLaw {
        coef: BigRational,
        lambda: BigRational,
        q: i64,
    },
}

impl StripWidth {
    /// Rational enclosure of the width value.
    pub fn bounds(&self, bits: u32) -> RatInterval {
        match self {
            StripWidth::Exact(w) => RatInterval::point(w.clone()),
            StripWidth::PowerLaw { coef, lambda, q } => {
                let a = lambda.numer().clone();
                let b = lambda.denom().to_string().parse::<u32>().expect("small denom");
                let qa = BigRational::from(BigInt::from(*q)).pow(
                    a.to_string().parse::<i32>().expect("small lambda numerator"),
                );
                let inv = qa.recip();
                let (lo, hi) = nth_root_bounds(&inv, b, bits);
                RatInterval::new(lo * coef, hi * coef)
            }
        }
    }

    /// Exact comparison of a nonnegative rational against the width.
    pub fn cmp_abs_rational(&self, d: &BigRational) -> Ordering {
        let d = d.abs();
        match self {
            StripWidth::Exact(w) => d.cmp(w),
            StripWidth::PowerLaw { coef, lambda, q } => {
                // d vs coef * Q^(-a/b)  <=>  d^b * Q^a vs coef^b
                let a: u32 = lambda.numer().to_string().parse().expect("small numerator");
                let b: i32 = lambda.denom().to_string().parse().expect("small denominator");
                let lhs = d.pow(b) * BigRational::from(BigInt::from(*q).pow(a));
                let rhs = coef.pow(b);
                lhs.cmp(&rhs)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            StripWidth::Exact(w) => fmt_rational(w),
            StripWidth::PowerLaw { coef, lambda, q } => format!(
                "{}*{}^-({})",
                fmt_rational(coef),
                q,
                fmt_rational(lambda)
            ),
        }
    }
}

/// The strip of half-width w around y = f(x) over x in J.
#[derive(Debug, Clone)]
pub struct Strip {
    pub curve: RationalCurve,
    pub width: StripWidth,
    /// Recorded (c3, c5, lambda, Q) when built from the power law.
    pub provenance: Option<(BigRational, BigRational, BigRational, i64)>,
}

impl Strip {
    pub fn exact(curve: RationalCurve, w: BigRational) -> Result<Self> {
        if !w.is_positive() {
            return Err(Error::InvalidConfig("strip width must be positive".into()));
        }
        Ok(Strip {
            curve,
            width: StripWidth::Exact(w),
            provenance: None,
        })
    }

    /// Width (1/2 + c5) * c3 * Q^(-lambda) with c5 the certified upper bound
    /// of sup |f'| on J.
    pub fn power_law(
        curve: RationalCurve,
        c3: BigRational,
        lambda: BigRational,
        q: i64,
    ) -> Result<Self> {
        if !c3.is_positive() || q < 1 {
            return Err(Error::InvalidConfig("strip needs c3 > 0 and Q >= 1".into()));
        }
        if !lambda.is_positive() || lambda >= BigRational::new(BigInt::from(3), BigInt::from(4)) {
            return Err(Error::InvalidConfig(
                "strip exponent must satisfy 0 < lambda < 3/4".into(),
            ));
        }
        let c5 = curve.sup_abs_derivative(64).hi;
        let coef = (BigRational::new(BigInt::one(), BigInt::from(2)) + &c5) * &c3;
        Ok(Strip {
            curve,
            width: StripWidth::PowerLaw {
                coef,
                lambda: lambda.clone(),
                q,
            },
            provenance: Some((c3, c5, lambda, q)),
        })
    }

    pub fn describe(&self) -> String {
        format!(
            "strip(J=[{},{}], w={})",
            fmt_rational(&self.curve.a),
            fmt_rational(&self.curve.b),
            self.width.describe()
        )
    }
}

/// A counting region.
#[derive(Debug, Clone)]
pub enum Region {
    Rect(Rectangle),
    Strip(Strip),
}

/// True iff the region keeps distance >= epsilon from the diagonal.
///
/// Rectangles are a closed-form corner computation. For strips the minimum
/// of |x - f(x)| over J is certified through the critical points of
/// (x - f(x)); the identity curve is rejected.
pub fn validate_region(region: &Region, exclusion: &DiagonalExclusion) -> Result<bool> {
    match region {
        Region::Rect(r) => Ok(r.diagonal_gap() >= exclusion.epsilon),
        Region::Strip(strip) => {
            if strip.curve.is_identity() {
                return Err(Error::InvalidConfig(
                    "curve f(x) = x admits no diagonal-excluded strip".into(),
                ));
            }
            // g(x) = x - f(x); need min |g| - w >= eps
            let mut g: Vec<BigRational> = strip.curve.coeffs.iter().map(|c| -c).collect();
            if g.len() < 2 {
                g.resize(2, BigRational::zero());
            }
            g[1] += BigRational::one();
            let gp = clear_denominators(&g).unwrap();
            if gp.is_zero() {
                return Err(Error::InvalidConfig("degenerate strip curve".into()));
            }
            let a = &strip.curve.a;
            let b = &strip.curve.b;
            if gp.sign_at_rational(a) == 0
                || gp.sign_at_rational(b) == 0
                || count_roots_in_open_interval(&gp, a, b)? > 0
            {
                return Ok(false); // curve meets the diagonal inside J
            }
            // candidate minima: endpoints and critical points of g
            let mut candidates: Vec<RatInterval> = vec![
                RatInterval::point(eval_rat_poly(&g, a).abs()),
                RatInterval::point(eval_rat_poly(&g, b).abs()),
            ];
            let gprime: Vec<BigRational> = g
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
                .collect();
            if let Some(gpp) = clear_denominators(&gprime) {
                if gpp.degree().map_or(false, |d| d >= 1) {
                    for r in isolate_real_roots(&gpp)? {
                        if r.cmp_rational(a) == Ordering::Greater
                            && r.cmp_rational(b) == Ordering::Less
                        {
                            candidates.push(refine_abs_value(&r, &g));
                        }
                    }
                }
            }
            let mut bits = 64u32;
            for _ in 0..8 {
                let w = strip.width.bounds(bits);
                let need_lo = &exclusion.epsilon + &w.lo;
                let need_hi = &exclusion.epsilon + &w.hi;
                if candidates.iter().all(|c| c.lo >= need_hi) {
                    return Ok(true);
                }
                if candidates.iter().any(|c| c.hi < need_lo) {
                    return Ok(false);
                }
                bits *= 2;
                // candidates from critical points are already refined tight;
                // widening precision on w usually settles it
            }
            Err(Error::Undecided {
                poly: "strip diagonal validation".into(),
                rounds: 8,
            })
        }
    }
}

fn refine_abs_value(enc: &RootEnclosure, poly: &[BigRational]) -> RatInterval {
    let width = BigRational::new(BigInt::one(), BigInt::one() << 96usize);
    let fine = enc.refine(&width);
    fine.interval().eval_poly(poly).abs()
}

/// Strict membership of the ordered pair (alpha1, alpha2) in an open
/// rectangle, decided exactly; boundary coincidence is excluded.
pub fn point_in_rectangle(c1: &RootEnclosure, c2: &RootEnclosure, rect: &Rectangle) -> bool {
    in_open_interval(c1, &rect.x1_lo, &rect.x1_hi) && in_open_interval(c2, &rect.x2_lo, &rect.x2_hi)
}

fn in_open_interval(c: &RootEnclosure, lo: &BigRational, hi: &BigRational) -> bool {
    c.cmp_rational(lo) == Ordering::Greater && c.cmp_rational(hi) == Ordering::Less
}

const STRIP_REFINE_CAP: usize = 256;

/// Strict membership of (alpha1, alpha2) in a strip: alpha1 in (a, b) and
/// |alpha2 - f(alpha1)| < w.
///
/// Conjugates of a quadratic minimal polynomial are decided by a fully
/// exact closed form. Higher degrees refine both enclosures; a persistent
/// straddle is resolved by an exact tie test when the width is rational,
/// and otherwise aborts loudly as undecided.
pub fn point_in_strip(c1: &RootEnclosure, c2: &RootEnclosure, strip: &Strip) -> Result<bool> {
    if !in_open_interval(c1, &strip.curve.a, &strip.curve.b) {
        return Ok(false);
    }
    let p = c1.poly();
    if p == c2.poly() && p.degree() == Some(2) {
        return Ok(quadratic_strip_test(c1, c2, strip));
    }
    general_strip_test(c1, c2, strip)
}

/// Exact decision for conjugate roots of one quadratic: alpha2 - f(alpha1)
/// collapses to a linear expression c0 + c1*alpha1 in Q(alpha1), and the
/// strict comparison |c0 + c1*alpha| < w goes through exact power identities.
fn quadratic_strip_test(c1: &RootEnclosure, c2: &RootEnclosure, strip: &Strip) -> bool {
    let p = c1.poly();
    let b2 = BigRational::from(p.coeff(2));
    let b1 = BigRational::from(p.coeff(1));
    let b0 = BigRational::from(p.coeff(0));
    // f mod p: reduce each power of t via t^2 = -(b1 t + b0)/b2
    let (mut u, mut v) = (BigRational::zero(), BigRational::zero());
    // maintain current power t^k mod p as (pu + pv t)
    let (mut pu, mut pv) = (BigRational::one(), BigRational::zero());
    for (k, c) in strip.curve.coeffs.iter().enumerate() {
        if k > 0 {
            // multiply (pu + pv t) by t
            let nu = -&pv * &b0 / &b2;
            let nv = &pu - &pv * &b1 / &b2;
            pu = nu;
            pv = nv;
        }
        u += c * &pu;
        v += c * &pv;
    }
    // alpha2 = s - alpha1 when distinct conjugates, alpha1 otherwise
    let s = -&b1 / &b2;
    let (c0, c1lin) = if c1.root_index() != c2.root_index() {
        (&s - &u, -BigRational::one() - &v)
    } else {
        (-u.clone(), BigRational::one() - &v)
    };
    // |c0 + c1lin * alpha| < w
    if c1lin.is_zero() {
        return strip.width.cmp_abs_rational(&c0) == Ordering::Less;
    }
    match &strip.width {
        StripWidth::Exact(w) => {
            // -w < c0 + c1lin*alpha < w: two exact linear comparisons
            let upper = (w - &c0) / &c1lin;
            let lower = (-w - &c0) / &c1lin;
            let (lo, hi) = if c1lin.is_positive() {
                (lower, upper)
            } else {
                (upper, lower)
            };
            c1.cmp_rational(&lo) == Ordering::Greater && c1.cmp_rational(&hi) == Ordering::Less
        }
        StripWidth::PowerLaw { coef, lambda, q } => {
            // (E^2)^b vs coef^(2b) * Q^(-2a), i.e. (E^2)^b * Q^(2a) vs coef^(2b)
            let a: u32 = lambda.numer().to_string().parse().expect("small numerator");
            let b: u32 = lambda.denom().to_string().parse().expect("small denominator");
            // E^2 = (c0 + c1lin t)^2 mod p = e0 + e1 t
            let t2_u = -&b0 / &b2;
            let t2_v = -&b1 / &b2;
            let e0 = &c0 * &c0 + &c1lin * &c1lin * &t2_u;
            let e1 = &c0 * &c1lin * rat_int(2) + &c1lin * &c1lin * &t2_v;
            // raise (e0 + e1 t) to the b-th power mod p
            let (mut ru, mut rv) = (BigRational::one(), BigRational::zero());
            for _ in 0..b {
                let nu = &ru * &e0 + &rv * &e1 * &t2_u;
                let nv = &ru * &e1 + &rv * &e0 + &rv * &e1 * &t2_v;
                ru = nu;
                rv = nv;
            }
            let rhs = coef.pow(2 * b as i32)
                / BigRational::from(BigInt::from(*q).pow(2 * a));
            // sign of (ru - rhs) + rv * alpha decides (E^2)^b vs w^(2b)
            let diff0 = &ru - &rhs;
            let cmp = if rv.is_zero() {
                diff0.cmp(&BigRational::zero())
            } else {
                let threshold = -&diff0 / &rv;
                let side = c1.cmp_rational(&threshold);
                if rv.is_positive() {
                    side
                } else {
                    side.reverse()
                }
            };
            cmp == Ordering::Less
        }
    }
}

fn general_strip_test(c1: &RootEnclosure, c2: &RootEnclosure, strip: &Strip) -> Result<bool> {
    let mut a1 = c1.clone();
    let mut a2 = c2.clone();
    let mut bits = 64u32;
    for round in 0..STRIP_REFINE_CAP {
        let w = strip.width.bounds(bits);
        let f_val = strip.curve.eval_interval(&a1.interval());
        let d = a2.interval().sub(&f_val).abs();
        if d.hi < w.lo {
            return Ok(true);
        }
        if d.lo > w.hi {
            return Ok(false);
        }
        if round == 64 {
            if let StripWidth::Exact(wv) = &strip.width {
                // persistent straddle: check the exact ties D = +-w
                for r in [wv.clone(), -wv.clone()] {
                    if is_exact_shift(&a1, &a2, &strip.curve, &r)? {
                        return Ok(false); // tie excluded by strictness
                    }
                }
            }
        }
        a1.bisect();
        a2.bisect();
        bits = (bits * 2).min(1 << 14);
    }
    Err(Error::Undecided {
        poly: c1.poly().to_string(),
        rounds: STRIP_REFINE_CAP,
    })
}

/// Exact test for alpha2 = f(alpha1) + r with rational r: f(alpha1) + r must
/// be a root of the minimal polynomial and that root must be alpha2.
fn is_exact_shift(
    a1: &RootEnclosure,
    a2: &RootEnclosure,
    curve: &RationalCurve,
    r: &BigRational,
) -> Result<bool> {
    let p = a1.poly();
    // g(t) = f(t) + r; check P(g(t)) = 0 mod P(t)
    let mut g: Vec<BigRational> = curve.coeffs.clone();
    g[0] += r;
    let composed = compose_rat(p, &g);
    let rem = rat_poly_rem(&composed, p);
    if rem.iter().any(|c| !c.is_zero()) {
        return Ok(false);
    }
    // g(alpha1) is a root of p; find which one by shrinking enclosures
    let roots = isolate_real_roots(p)?;
    let mut a1 = a1.clone();
    for _ in 0..STRIP_REFINE_CAP {
        let img = a1.interval().eval_poly(&g);
        let inside: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, enc)| {
                !(enc.hi() < &img.lo || &img.hi < enc.lo())
            })
            .map(|(i, _)| i)
            .collect();
        if inside.len() == 1 {
            return Ok(inside[0] == a2.root_index());
        }
        a1.bisect();
    }
    Err(Error::Undecided {
        poly: p.to_string(),
        rounds: STRIP_REFINE_CAP,
    })
}

/// P(g(t)) for integer P and rational g.
fn compose_rat(p: &IntPolynomial, g: &[BigRational]) -> Vec<BigRational> {
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for c in p.coeffs().iter().rev() {
        acc = rat_poly_mul(&acc, g);
        if acc.is_empty() {
            acc.push(BigRational::zero());
        }
        acc[0] += BigRational::from(c.clone());
    }
    acc
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.iter().all(|c| c.is_zero()) || b.iter().all(|c| c.is_zero()) {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_poly_rem(a: &[BigRational], p: &IntPolynomial) -> Vec<BigRational> {
    let d = p.degree().unwrap();
    let lead = BigRational::from(p.leading_coeff().unwrap().clone());
    let mut rem: Vec<BigRational> = a.to_vec();
    while rem.len() > d {
        let k = rem.len() - 1;
        let factor = rem[k].clone() / &lead;
        if !factor.is_zero() {
            for j in 0..=d {
                let delta = &factor * BigRational::from(p.coeff(j));
                rem[k - d + j] -= delta;
            }
        }
        rem.pop();
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn rect(a: i64, b: i64, c: i64, d: i64) -> Rectangle {
        Rectangle::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d)).unwrap()
    }

    fn sqrt2_pair() -> (RootEnclosure, RootEnclosure) {
        let roots = isolate_real_roots(&IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        (roots[1].clone(), roots[0].clone())
    }

    fn neg_x_curve(a: i64, b: i64) -> RationalCurve {
        RationalCurve::new(vec![rat_int(0), rat_int(-1)], rat_int(a), rat_int(b)).unwrap()
    }

    #[test]
    fn validate_region_examples() {
        let eps = DiagonalExclusion::new(rat_int(1)).unwrap();
        assert!(validate_region(&Region::Rect(rect(1, 2, -2, -1)), &eps).unwrap());
        let eps_half = DiagonalExclusion::new(rat(1, 2)).unwrap();
        assert!(!validate_region(&Region::Rect(rect(0, 1, 0, 1)), &eps_half).unwrap());
        let strip = Strip::exact(neg_x_curve(1, 2), rat(1, 10)).unwrap();
        assert!(validate_region(&Region::Strip(strip), &eps).unwrap());
    }

    #[test]
    fn identity_curve_rejected() {
        let f = RationalCurve::new(vec![rat_int(0), rat_int(1)], rat_int(0), rat_int(1)).unwrap();
        let strip = Strip::exact(f, rat(1, 10)).unwrap();
        let eps = DiagonalExclusion::new(rat(1, 10)).unwrap();
        assert!(validate_region(&Region::Strip(strip), &eps).is_err());
    }

    #[test]
    fn rectangle_membership_examples() {
        let (a1, a2) = sqrt2_pair();
        assert!(point_in_rectangle(&a1, &a2, &rect(1, 2, -2, -1)));
        assert!(!point_in_rectangle(&a1, &a2, &rect(0, 1, -2, -1)));
        // boundary is excluded: root of t - 3 against x1_hi = 3
        let three = isolate_real_roots(&IntPolynomial::from_i64(&[-3, 1])).unwrap();
        let r = Rectangle::new(rat_int(0), rat_int(3), rat_int(-1), rat_int(1)).unwrap();
        assert!(!in_open_interval(&three[0], &r.x1_lo, &r.x1_hi));
    }

    #[test]
    fn strip_membership_examples() {
        let (a1, a2) = sqrt2_pair();
        // f(x) = -x: |(-sqrt2) - (-sqrt2)| = 0 < 1/10
        let strip = Strip::exact(neg_x_curve(1, 2), rat(1, 10)).unwrap();
        assert!(point_in_strip(&a1, &a2, &strip).unwrap());
        // f(x) = -x - 1: distance exactly 1
        let f = RationalCurve::new(vec![rat_int(-1), rat_int(-1)], rat_int(1), rat_int(2)).unwrap();
        let strip = Strip::exact(f, rat(1, 10)).unwrap();
        assert!(!point_in_strip(&a1, &a2, &strip).unwrap());
        // golden ratio pair: (phi, 1-phi) with f(x) = -x gives |1-phi+phi| = 1
        let roots = isolate_real_roots(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        let phi = roots[1].clone();
        let other = roots[0].clone();
        let strip = Strip::exact(neg_x_curve(1, 2), rat(1, 10)).unwrap();
        assert!(!point_in_strip(&phi, &other, &strip).unwrap());
    }

    #[test]
    fn strip_power_law_membership() {
        // same (sqrt2, -sqrt2) point against w = (1/2 + 1) * Q^(-1/2)
        let (a1, a2) = sqrt2_pair();
        let strip = Strip::power_law(neg_x_curve(1, 2), rat_int(1), rat(1, 2), 20).unwrap();
        assert!(point_in_strip(&a1, &a2, &strip).unwrap());
        // exact boundary through the power width: alpha2 + alpha1 = 0 < w ok;
        // a pair with |sum| just outside: roots of 3t^2 - 5t + 1 sum 5/3
        let roots = isolate_real_roots(&IntPolynomial::from_i64(&[1, -5, 3])).unwrap();
        let strip2 = Strip::power_law(neg_x_curve(0, 3), rat_int(1), rat(1, 2), 100).unwrap();
        // w = 1.5 * 0.1 = 0.15; sum = 5/3 > 0.15 -> out
        assert!(!point_in_strip(&roots[1], &roots[0], &strip2).unwrap());
    }

    #[test]
    fn quadratic_tie_is_excluded() {
        // roots of 10t^2 - t - 10: sum = 1/10 exactly; strip f(x) = -x with
        // w = 1/10 must exclude by strictness
        let p = IntPolynomial::from_i64(&[-10, -1, 10]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        let strip = Strip::exact(neg_x_curve(0, 2), rat(1, 10)).unwrap();
        // alpha1 = positive root in (0,2), alpha2 = the other
        assert!(!point_in_strip(&roots[1], &roots[0], &strip).unwrap());
        // widen slightly: now inside
        let strip = Strip::exact(neg_x_curve(0, 2), rat(11, 100)).unwrap();
        assert!(point_in_strip(&roots[1], &roots[0], &strip).unwrap());
    }

    #[test]
    fn general_degree_strip_with_tie() {
        // cubic t^3 - 3t + 1 has three real roots; alpha_i + alpha_j is not
        // rational, so the general path must resolve strict comparisons
        let p = IntPolynomial::from_i64(&[1, -3, 0, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        let strip = Strip::exact(neg_x_curve(1, 2), rat(2, 10)).unwrap();
        // alpha = 1.532, beta = -1.879: |beta + alpha| = 0.347 > 0.2 -> out
        assert!(!point_in_strip(&roots[2], &roots[0], &strip).unwrap());
        let strip = Strip::exact(neg_x_curve(1, 2), rat(4, 10)).unwrap();
        assert!(point_in_strip(&roots[2], &roots[0], &strip).unwrap());
    }

    #[test]
    fn swap_symmetry() {
        let (a1, a2) = sqrt2_pair();
        let r12 = rect(1, 2, -2, -1);
        let r21 = rect(-2, -1, 1, 2);
        assert_eq!(
            point_in_rectangle(&a1, &a2, &r12),
            point_in_rectangle(&a2, &a1, &r21)
        );
    }

    #[test]
    fn sup_derivative_linear_and_quadratic() {
        let f = neg_x_curve(1, 2);
        let c5 = f.sup_abs_derivative(64);
        assert_eq!(c5.lo, rat_int(1));
        assert_eq!(c5.hi, rat_int(1));
        // f(x) = x^2 on [0, 2]: sup |f'| = 4 at x = 2
        let f = RationalCurve::new(
            vec![rat_int(0), rat_int(0), rat_int(1)],
            rat_int(0),
            rat_int(2),
        )
        .unwrap();
        let c5 = f.sup_abs_derivative(64);
        assert_eq!(c5.lo, rat_int(4));
        assert_eq!(c5.hi, rat_int(4));
        // f(x) = x^3 - x on [-1, 1]: f' = 3x^2 - 1, sup |f'| = 2 at endpoints,
        // critical value |f'(0)| = 1
        let f = RationalCurve::new(
            vec![rat_int(0), rat_int(-1), rat_int(0), rat_int(1)],
            rat_int(-1),
            rat_int(1),
        )
        .unwrap();
        let c5 = f.sup_abs_derivative(64);
        assert_eq!(c5.lo, rat_int(2));
        assert_eq!(c5.hi, rat_int(2));
    }
}
