//! Constructing algebraic points from minimal polynomials and counting them
//! in rectangles and strips.
//!
//! Two routes produce every count. The streaming route enumerates candidate
//! coefficient vectors in machine words with exact i128 sign tests, never
//! materializing a database; the db route walks stored entries with Sturm
//! counts in arbitrary precision. They agree exactly and the tests enforce
//! it. Pruning never changes a count: every skip is justified by a certified
//! root bound or an exact sign condition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{
    point_in_strip, validate_region, DiagonalExclusion, Rectangle, Region, Strip, StripWidth,
};
use crate::minpoly::{is_irreducible, shard_minimal_polys, shards, MinimalPolynomialDB};
use crate::polyint::{IntPolynomial, PolyClassParams};
use crate::rat::{fmt_rational, gcd_i64};
use crate::realroots::{count_roots_in_open_interval, isolate_real_roots, RootEnclosure};

/// An ordered pair of distinct real roots of one minimal polynomial.
#[derive(Debug, Clone)]
pub struct AlgebraicPoint {
    minpoly: Arc<IntPolynomial>,
    i: usize,
    j: usize,
    coord1: RootEnclosure,
    coord2: RootEnclosure,
}

impl AlgebraicPoint {
    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn coord1(&self) -> &RootEnclosure {
        &self.coord1
    }

    pub fn coord2(&self) -> &RootEnclosure {
        &self.coord2
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn height(&self) -> BigInt {
        self.minpoly.height().unwrap()
    }
}

/// All ordered pairs of distinct real roots: r real roots yield r(r-1)
/// points. Degree-1 polynomials yield none.
pub fn points_of(p: &IntPolynomial) -> Result<Vec<AlgebraicPoint>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_primitive() || !p.leading_coeff().unwrap().is_positive() {
        return Err(Error::NotPrimitive {
            content: p.content().to_string(),
        });
    }
    let roots = isolate_real_roots(p)?;
    let arc = match roots.first() {
        Some(enc) => enc.poly_arc(),
        None => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for i in 0..roots.len() {
        for j in 0..roots.len() {
            if i == j {
                continue;
            }
            out.push(AlgebraicPoint {
                minpoly: arc.clone(),
                i,
                j,
                coord1: roots[i].clone(),
                coord2: roots[j].clone(),
            });
        }
    }
    Ok(out)
}

/// Result of one counting run.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub n: usize,
    pub q: i64,
    pub region: String,
    pub count: u64,
    /// count restricted to each minimal-polynomial degree, index = degree.
    pub by_degree: Vec<u64>,
    /// exact area for rectangles, 2w(b-a) proxy midpoint for strips
    pub mu2: Option<BigRational>,
    pub mu2_value: f64,
    /// count / (Q^{n+1} mu2) for rectangles, count / Q^{n+1-lambda} for strips
    pub normalized_ratio: f64,
}

impl CountResult {
    fn for_rect(n: usize, q: i64, rect: &Rectangle, count: u64, by_degree: Vec<u64>) -> Self {
        let mu2 = rect.mu2();
        let mu2_f = mu2.to_f64().unwrap_or(f64::NAN);
        let ratio = count as f64 / ((q as f64).powi(n as i32 + 1) * mu2_f);
        CountResult {
            n,
            q,
            region: rect.describe(),
            count,
            by_degree,
            mu2: Some(mu2),
            mu2_value: mu2_f,
            normalized_ratio: ratio,
        }
    }

    fn for_strip(n: usize, q: i64, strip: &Strip, count: u64, by_degree: Vec<u64>) -> Self {
        let w = strip.width.bounds(64);
        let j_len = (&strip.curve.b - &strip.curve.a).to_f64().unwrap_or(f64::NAN);
        let mu2_f = 2.0 * w.to_f64() * j_len;
        let lambda = match &strip.width {
            StripWidth::PowerLaw { lambda, .. } => lambda.to_f64().unwrap_or(0.0),
            StripWidth::Exact(_) => 0.0,
        };
        let ratio = count as f64 / (q as f64).powf(n as f64 + 1.0 - lambda);
        CountResult {
            n,
            q,
            region: strip.describe(),
            count,
            by_degree,
            mu2: None,
            mu2_value: mu2_f,
            normalized_ratio: ratio,
        }
    }
}

// ---------------------------------------------------------------------------
// db route: exact Sturm counting over stored entries
// ---------------------------------------------------------------------------

/// Exact count of db points inside a diagonal-excluded rectangle.
///
/// Per entry the count is (#roots in I1) * (#roots in I2); the validated
/// diagonal gap makes the coordinate intervals disjoint, so distinctness is
/// automatic. Entries whose Cauchy bound misses either interval are skipped;
/// the skip is count-preserving.
pub fn count_in_region(
    db: &MinimalPolynomialDB,
    rect: &Rectangle,
    exclusion: &DiagonalExclusion,
) -> Result<CountResult> {
    count_in_region_impl(db, rect, exclusion, true)
}

pub(crate) fn count_in_region_impl(
    db: &MinimalPolynomialDB,
    rect: &Rectangle,
    exclusion: &DiagonalExclusion,
    prune: bool,
) -> Result<CountResult> {
    if !validate_region(&Region::Rect(rect.clone()), exclusion)? {
        return Err(Error::InvalidConfig(format!(
            "rectangle {} violates the diagonal exclusion {}",
            rect.describe(),
            fmt_rational(&exclusion.epsilon)
        )));
    }
    let params = db.params();
    let per_degree: Vec<Vec<u64>> = db
        .entries()
        .par_iter()
        .map(|p| {
            let mut acc = vec![0u64; params.max_degree + 1];
            let d = p.degree().unwrap();
            if d < 2 {
                return acc;
            }
            if prune {
                let b = p.cauchy_bound().unwrap();
                if -&b >= rect.x1_hi || b <= rect.x1_lo.clone() {
                    return acc;
                }
                let b = p.cauchy_bound().unwrap();
                if -&b >= rect.x2_hi || b <= rect.x2_lo.clone() {
                    return acc;
                }
            }
            let n1 = count_roots_in_open_interval(p, &rect.x1_lo, &rect.x1_hi).unwrap();
            if n1 == 0 {
                return acc;
            }
            let n2 = count_roots_in_open_interval(p, &rect.x2_lo, &rect.x2_hi).unwrap();
            acc[d] = (n1 * n2) as u64;
            acc
        })
        .collect();
    let mut by_degree = vec![0u64; params.max_degree + 1];
    for row in per_degree {
        for (k, v) in row.iter().enumerate() {
            by_degree[k] += v;
        }
    }
    let count = by_degree.iter().sum();
    Ok(CountResult::for_rect(
        params.max_degree,
        params.max_height,
        rect,
        count,
        by_degree,
    ))
}

/// Exact count of db points inside a strip.
pub fn count_in_strip(
    db: &MinimalPolynomialDB,
    strip: &Strip,
    exclusion: &DiagonalExclusion,
) -> Result<CountResult> {
    if !validate_region(&Region::Strip(strip.clone()), exclusion)? {
        return Err(Error::InvalidConfig(format!(
            "{} violates the diagonal exclusion {}",
            strip.describe(),
            fmt_rational(&exclusion.epsilon)
        )));
    }
    let params = db.params();
    let rows: Vec<Result<Vec<u64>>> = db
        .entries()
        .par_iter()
        .map(|p| {
            let mut acc = vec![0u64; params.max_degree + 1];
            let d = p.degree().unwrap();
            if d < 2 {
                return Ok(acc);
            }
            let bound = p.cauchy_bound().unwrap();
            if -&bound >= strip.curve.b || bound <= strip.curve.a.clone() {
                return Ok(acc);
            }
            let roots = isolate_real_roots(p)?;
            for i in 0..roots.len() {
                for j in 0..roots.len() {
                    if i == j {
                        continue;
                    }
                    if point_in_strip(&roots[i], &roots[j], strip)? {
                        acc[d] += 1;
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut by_degree = vec![0u64; params.max_degree + 1];
    for row in rows {
        let row = row?;
        for (k, v) in row.iter().enumerate() {
            by_degree[k] += v;
        }
    }
    let count = by_degree.iter().sum();
    Ok(CountResult::for_strip(
        params.max_degree,
        params.max_height,
        strip,
        count,
        by_degree,
    ))
}

// ---------------------------------------------------------------------------
// streaming route: machine-word kernels over the coefficient box
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct SmallFrac {
    n: i64,
    d: i64, // > 0
}

impl SmallFrac {
    fn try_from(q: &BigRational) -> Option<SmallFrac> {
        let n = q.numer().to_i64()?;
        let d = q.denom().to_i64()?;
        if n.unsigned_abs() > 1_000_000 || d > 1_000_000 {
            return None;
        }
        Some(SmallFrac { n, d })
    }
}

fn sign_poly_at(coeffs: &[i64], x: SmallFrac) -> i128 {
    // sum c_k n^k d^(deg-k)
    let deg = coeffs.len() - 1;
    let mut acc: i128 = coeffs[deg] as i128;
    let mut dpow: i128 = 1;
    for k in (0..deg).rev() {
        dpow *= x.d as i128;
        acc = acc * x.n as i128 + coeffs[k] as i128 * dpow;
    }
    acc.signum()
}

fn is_perfect_square(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt() as i128;
    ((r - 2).max(0)..=r + 2).any(|s| s * s == v)
}

/// Exact comparison of a root of A t^2 + B t + C (A > 0, disc > 0) with a
/// rational m; `lower` picks the smaller root.
fn cmp_quad_root_rational(a: i128, b: i128, c: i128, lower: bool, m: SmallFrac) -> Ordering {
    let mn = m.n as i128;
    let md = m.d as i128;
    let pm = (a * mn * mn + b * mn * md + c * md * md).signum();
    // m vs vertex -B/(2A): 2A*mn vs -B*md
    let vcmp = (2 * a * mn).cmp(&(-b * md));
    if pm < 0 {
        // strictly between the roots
        return if lower { Ordering::Less } else { Ordering::Greater };
    }
    if pm == 0 {
        return match vcmp {
            Ordering::Less => {
                if lower {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
            _ => {
                if lower {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        };
    }
    // outside the root interval: side decided by the vertex
    match vcmp {
        Ordering::Less => Ordering::Greater, // m < vertex -> m below both roots
        _ => Ordering::Less,
    }
}

/// Roots of an irreducible-candidate quadratic strictly inside (a, b).
/// None signals a rational root (the candidate is reducible).
fn quad_count_open(b2: i64, b1: i64, b0: i64, a: SmallFrac, b: SmallFrac) -> Option<u32> {
    let coeffs = [b0, b1, b2];
    let sa = sign_poly_at(&coeffs, a);
    let sb = sign_poly_at(&coeffs, b);
    if sa == 0 || sb == 0 {
        return None;
    }
    if sa * sb < 0 {
        return Some(1);
    }
    if sa < 0 {
        return Some(0);
    }
    let disc = (b1 as i128) * (b1 as i128) - 4 * (b2 as i128) * (b0 as i128);
    if disc <= 0 {
        return Some(0);
    }
    // both roots inside iff the vertex -b1/(2b2) lies in (a, b)
    let v_num = -(b1 as i128);
    let v_den = 2 * b2 as i128;
    let above_a = v_num * (a.d as i128) > (a.n as i128) * v_den;
    let below_b = v_num * (b.d as i128) < (b.n as i128) * v_den;
    Some(if above_a && below_b { 2 } else { 0 })
}

/// Roots of an irreducible-candidate cubic strictly inside (a, b); b3 > 0.
/// None signals a rational or multiple root (the candidate is reducible).
fn cubic_count_open(b3: i64, b2: i64, b1: i64, b0: i64, a: SmallFrac, b: SmallFrac) -> Option<u32> {
    let coeffs = [b0, b1, b2, b3];
    let sa = sign_poly_at(&coeffs, a);
    let sb = sign_poly_at(&coeffs, b);
    if sa == 0 || sb == 0 {
        return None;
    }
    // critical points: roots of 3 b3 t^2 + 2 b2 t + b1
    let ca = 3 * b3 as i128;
    let cb = 2 * b2 as i128;
    let cc = b1 as i128;
    let disc = cb * cb - 4 * ca * cc;
    if disc <= 0 {
        return Some(if sa != sb { 1 } else { 0 });
    }
    // sign of P at a critical point c: sign(U c + V) with
    // U = 6 b1 b3 - 2 b2^2, V = 9 b0 b3 - b1 b2 (both times 9 b3 > 0)
    let u = 6 * (b1 as i128) * (b3 as i128) - 2 * (b2 as i128) * (b2 as i128);
    let v = 9 * (b0 as i128) * (b3 as i128) - (b1 as i128) * (b2 as i128);
    let mut signs = vec![sa];
    for lower in [true, false] {
        // include the critical point only when strictly inside (a, b)
        if cmp_quad_root_rational(ca, cb, cc, lower, a) != Ordering::Greater {
            continue;
        }
        if cmp_quad_root_rational(ca, cb, cc, lower, b) != Ordering::Less {
            continue;
        }
        let sc = if u == 0 {
            v.signum()
        } else {
            // sign(U c + V) = sign(U) * sign(c - (-V/U))
            let m = reduce_frac(-v, u);
            let side = cmp_quad_root_rational(ca, cb, cc, lower, m);
            match side {
                Ordering::Equal => 0,
                Ordering::Less => -u.signum(),
                Ordering::Greater => u.signum(),
            }
        };
        if sc == 0 {
            return None; // multiple root -> reducible candidate
        }
        signs.push(sc);
    }
    signs.push(sb);
    let mut count = 0u32;
    for w in signs.windows(2) {
        if w[0] != w[1] {
            count += 1;
        }
    }
    Some(count)
}

fn reduce_frac(num: i128, den: i128) -> SmallFrac {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = {
        let mut a = num.unsigned_abs();
        let mut b = den.unsigned_abs();
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.max(1)
    };
    SmallFrac {
        n: (num / g as i128) as i64,
        d: (den / g as i128) as i64,
    }
}

fn divisor_table(q: i64) -> Vec<Vec<i64>> {
    let mut t = vec![Vec::new(); (q + 1) as usize];
    for d in 1..=q {
        let mut m = d;
        while m <= q {
            t[m as usize].push(d);
            m += d;
        }
    }
    t
}

/// deg-2 irreducibility: primitive (checked by caller) and non-square
/// discriminant.
fn quad_irreducible(b2: i64, b1: i64, b0: i64) -> bool {
    let disc = (b1 as i128) * (b1 as i128) - 4 * (b2 as i128) * (b0 as i128);
    !is_perfect_square(disc)
}

/// deg-3 irreducibility: no rational root r/s with r | a0, s | a3.
fn cubic_irreducible(b3: i64, b2: i64, b1: i64, b0: i64, divisors: &[Vec<i64>]) -> bool {
    if b0 == 0 {
        return false;
    }
    let nums = &divisors[b0.unsigned_abs() as usize];
    let dens = &divisors[b3.unsigned_abs() as usize];
    for &s in dens {
        for &r in nums {
            if gcd_i64(r, s) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let rn = (sign * r) as i128;
                let sd = s as i128;
                let val = ((b3 as i128 * rn + b2 as i128 * sd) * rn + b1 as i128 * sd * sd) * rn
                    + b0 as i128 * sd * sd * sd;
                if val == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Streaming count over the whole class: identical result to the db route,
/// no database materialized. Degrees 2 and 3 run in machine words; higher
/// degrees stream through the exact path.
pub fn count_in_rectangle_streamed(
    params: PolyClassParams,
    rect: &Rectangle,
    exclusion: &DiagonalExclusion,
) -> Result<CountResult> {
    if !validate_region(&Region::Rect(rect.clone()), exclusion)? {
        return Err(Error::InvalidConfig(format!(
            "rectangle {} violates the diagonal exclusion {}",
            rect.describe(),
            fmt_rational(&exclusion.epsilon)
        )));
    }
    let small = (
        SmallFrac::try_from(&rect.x1_lo),
        SmallFrac::try_from(&rect.x1_hi),
        SmallFrac::try_from(&rect.x2_lo),
        SmallFrac::try_from(&rect.x2_hi),
    );
    let q = params.max_height;
    let mut by_degree = vec![0u64; params.max_degree + 1];
    for d in 2..=params.max_degree {
        let total: u64 = match (d, &small) {
            (2, (Some(a1), Some(b1c), Some(a2), Some(b2c))) => (1..=q)
                .into_par_iter()
                .map(|lead| {
                    let mut acc = 0u64;
                    for c1 in -q..=q {
                        let g1 = gcd_i64(lead, c1);
                        for c0 in -q..=q {
                            if gcd_i64(g1, c0) != 1 {
                                continue;
                            }
                            let n1 = match quad_count_open(lead, c1, c0, *a1, *b1c) {
                                Some(n) => n,
                                None => continue,
                            };
                            if n1 == 0 {
                                continue;
                            }
                            let n2 = match quad_count_open(lead, c1, c0, *a2, *b2c) {
                                Some(n) => n,
                                None => continue,
                            };
                            if n2 == 0 {
                                continue;
                            }
                            if quad_irreducible(lead, c1, c0) {
                                acc += (n1 * n2) as u64;
                            }
                        }
                    }
                    acc
                })
                .sum(),
            (3, (Some(a1), Some(b1c), Some(a2), Some(b2c))) => {
                let divisors = divisor_table(q);
                (1..=q)
                    .into_par_iter()
                    .map(|lead| {
                        let mut acc = 0u64;
                        for c2 in -q..=q {
                            let g2 = gcd_i64(lead, c2);
                            for c1 in -q..=q {
                                let g1 = gcd_i64(g2, c1);
                                for c0 in -q..=q {
                                    if gcd_i64(g1, c0) != 1 {
                                        continue;
                                    }
                                    let n1 = match cubic_count_open(lead, c2, c1, c0, *a1, *b1c) {
                                        Some(n) => n,
                                        None => continue,
                                    };
                                    if n1 == 0 {
                                        continue;
                                    }
                                    let n2 = match cubic_count_open(lead, c2, c1, c0, *a2, *b2c) {
                                        Some(n) => n,
                                        None => continue,
                                    };
                                    if n2 == 0 {
                                        continue;
                                    }
                                    if cubic_irreducible(lead, c2, c1, c0, &divisors) {
                                        acc += (n1 * n2) as u64;
                                    }
                                }
                            }
                        }
                        acc
                    })
                    .sum()
            }
            _ => {
                // exact general path per shard
                let shard_list: Vec<_> = shards(params)
                    .into_iter()
                    .filter(|s| s.degree == d)
                    .collect();
                shard_list
                    .par_iter()
                    .map(|&s| {
                        let mut acc = 0u64;
                        for p in shard_minimal_polys(s, params) {
                            let n1 =
                                count_roots_in_open_interval(&p, &rect.x1_lo, &rect.x1_hi).unwrap();
                            if n1 == 0 {
                                continue;
                            }
                            let n2 =
                                count_roots_in_open_interval(&p, &rect.x2_lo, &rect.x2_hi).unwrap();
                            acc += (n1 * n2) as u64;
                        }
                        acc
                    })
                    .sum()
            }
        };
        by_degree[d] = total;
    }
    let count = by_degree.iter().sum();
    Ok(CountResult::for_rect(
        params.max_degree,
        q,
        rect,
        count,
        by_degree,
    ))
}

/// Largest integer m with m/den < width, i.e. the strict threshold for
/// integer numerators against the (possibly irrational) width.
fn width_threshold(width: &StripWidth, den: i64) -> BigInt {
    debug_assert!(den > 0);
    match width {
        StripWidth::Exact(w) => {
            let bound = w * BigRational::from(BigInt::from(den));
            let mut m = bound.floor().to_integer();
            if BigRational::from(m.clone()) >= bound {
                m -= 1;
            }
            m
        }
        StripWidth::PowerLaw { coef, lambda, q } => {
            // m < coef * den * Q^(-a/b)  <=>  (m * coef_den)^b * Q^a < (coef_num * den)^b
            let a: u32 = lambda.numer().to_string().parse().expect("small numerator");
            let b: u32 = lambda.denom().to_string().parse().expect("small denominator");
            let qa = BigInt::from(*q).pow(a);
            let rhs = (coef.numer() * BigInt::from(den)).pow(b);
            // k = max { k >= 0 : k^b * Q^a < rhs }, then m = floor(k / coef_den)
            if rhs <= qa {
                return BigInt::from(-1) + BigInt::one() - BigInt::one(); // no positive m; m = -1 means even 0 fails
            }
            let target = (&rhs - BigInt::one()) / &qa;
            let k = crate::rat::inth_root_floor(target.magnitude(), b);
            let mut k = BigInt::from(k);
            // guard against rounding at the boundary
            while (&k + BigInt::one()).pow(b) * &qa < rhs {
                k += BigInt::one();
            }
            while k.is_positive() && k.pow(b) * &qa >= rhs {
                k -= BigInt::one();
            }
            k / coef.denom()
        }
    }
}

/// Streaming strip count. Quadratics against a linear curve with slope -1
/// (f(x) = c0 - x) run through an integer threshold table; everything else
/// falls back to the exact enclosure route per candidate.
pub fn count_in_strip_streamed(
    params: PolyClassParams,
    strip: &Strip,
    exclusion: &DiagonalExclusion,
) -> Result<CountResult> {
    if !validate_region(&Region::Strip(strip.clone()), exclusion)? {
        return Err(Error::InvalidConfig(format!(
            "{} violates the diagonal exclusion {}",
            strip.describe(),
            fmt_rational(&exclusion.epsilon)
        )));
    }
    let q = params.max_height;
    let curve = &strip.curve;
    let fast_slope = curve.coeffs().len() == 2
        && curve.coeffs()[1] == -BigRational::one()
        && curve.coeffs()[0].denom().is_one();
    let ja = SmallFrac::try_from(&curve.a);
    let jb = SmallFrac::try_from(&curve.b);
    let mut by_degree = vec![0u64; params.max_degree + 1];
    for d in 2..=params.max_degree {
        let total: u64 = if d == 2 && fast_slope && ja.is_some() && jb.is_some() {
            let c0 = curve.coeffs()[0].numer().to_i64().unwrap();
            let (ja, jb) = (ja.unwrap(), jb.unwrap());
            // per-lead threshold: |b1 + c0*b2| must satisfy m/b2 < w
            let thresholds: Vec<BigInt> = (0..=q).map(|lead| {
                if lead == 0 {
                    BigInt::zero()
                } else {
                    width_threshold(&strip.width, lead)
                }
            }).collect();
            (1..=q)
                .into_par_iter()
                .map(|lead| {
                    let tmax = &thresholds[lead as usize];
                    let mut acc = 0u64;
                    for c1 in -q..=q {
                        // alpha_i + alpha_j - c0 = -b1/b2 - c0
                        let m = BigInt::from((c1 + c0 * lead).abs());
                        if &m > tmax {
                            continue;
                        }
                        let g1 = gcd_i64(lead, c1);
                        for c0f in -q..=q {
                            if gcd_i64(g1, c0f) != 1 {
                                continue;
                            }
                            let nj = match quad_count_open(lead, c1, c0f, ja, jb) {
                                Some(n) => n,
                                None => continue,
                            };
                            if nj == 0 {
                                continue;
                            }
                            // need two distinct real roots for an ordered pair
                            if quad_irreducible(lead, c1, c0f) {
                                let disc = (c1 as i128) * (c1 as i128)
                                    - 4 * (lead as i128) * (c0f as i128);
                                if disc > 0 {
                                    acc += nj as u64;
                                }
                            }
                        }
                    }
                    acc
                })
                .sum()
        } else {
            // general exact path: stream minimal polynomials, prefilter by a
            // root in J, then decide membership per ordered pair
            let shard_list: Vec<_> = shards(params)
                .into_iter()
                .filter(|s| s.degree == d)
                .collect();
            let partial: Vec<Result<u64>> = shard_list
                .par_iter()
                .map(|&s| {
                    let mut acc = 0u64;
                    for p in shard_minimal_polys(s, params) {
                        let in_j = count_roots_in_open_interval(&p, &curve.a, &curve.b)?;
                        if in_j == 0 {
                            continue;
                        }
                        let roots = isolate_real_roots(&p)?;
                        for i in 0..roots.len() {
                            for j in 0..roots.len() {
                                if i != j && point_in_strip(&roots[i], &roots[j], strip)? {
                                    acc += 1;
                                }
                            }
                        }
                    }
                    Ok(acc)
                })
                .collect();
            let mut sum = 0u64;
            for x in partial {
                sum += x?;
            }
            sum
        };
        by_degree[d] = total;
    }
    let count = by_degree.iter().sum();
    Ok(CountResult::for_strip(
        params.max_degree,
        q,
        strip,
        count,
        by_degree,
    ))
}

// ---------------------------------------------------------------------------
// counterexample interval
// ---------------------------------------------------------------------------

/// True iff no algebraic number of degree <= n and height <= Q lies in the
/// open interval (0, 1/(2Q)).
pub fn empty_interval_check(n: usize, q: i64) -> Result<bool> {
    let width = BigRational::new(BigInt::one(), BigInt::from(2 * q));
    empty_interval_check_width(n, q, &width)
}

/// Same check against a custom open interval (0, hi).
///
/// Every candidate with nonzero constant term first tries the exact
/// triangle-inequality certificate |a_0| >= sum |a_k| hi^k; failures fall
/// back to a minimality test plus an exact Sturm count.
pub fn empty_interval_check_width(n: usize, q: i64, hi: &BigRational) -> Result<bool> {
    let params = PolyClassParams::new(n, q)?;
    if !hi.is_positive() {
        return Err(Error::InvalidConfig("interval width must be positive".into()));
    }
    let hn = hi.numer().to_i64().ok_or_else(|| {
        Error::InvalidConfig("interval endpoint too large for the scan".into())
    })?;
    let hd = hi.denom().to_i64().ok_or_else(|| {
        Error::InvalidConfig("interval endpoint too large for the scan".into())
    })?;
    let found = AtomicBool::new(false);
    let shard_list = shards(params);
    shard_list.par_iter().for_each(|&s| {
        if found.load(AtomicOrdering::Relaxed) {
            return;
        }
        let d = s.degree;
        let lead = s.leading;
        // odometer over the lower coefficients
        let mut coeffs = vec![-q; d];
        coeffs.push(lead);
        let mut done = false;
        while !done {
            if examine_empty_interval(&coeffs, d, hn, hd, hi, n, q) {
                found.store(true, AtomicOrdering::Relaxed);
                return;
            }
            // advance
            let mut idx = d;
            loop {
                if idx == 0 {
                    done = true;
                    break;
                }
                idx -= 1;
                if coeffs[idx] < q {
                    coeffs[idx] += 1;
                    for v in coeffs.iter_mut().take(idx) {
                        *v = -q;
                    }
                    break;
                }
            }
        }
    });
    Ok(!found.load(AtomicOrdering::Relaxed))
}

/// True when this candidate certifies a root in (0, hi) of a minimal
/// polynomial of the class.
fn examine_empty_interval(
    coeffs: &[i64],
    d: usize,
    hn: i64,
    hd: i64,
    hi: &BigRational,
    n: usize,
    q: i64,
) -> bool {
    let a0 = coeffs[0];
    if a0 == 0 {
        // only minimal polynomial with a_0 = 0 is t; root 0 is excluded
        return false;
    }
    // triangle certificate: |a0| hd^d >= sum_{k>=1} |a_k| hn^k hd^(d-k)
    let mut rhs: i128 = 0;
    let mut hpow: i128 = 1;
    let mut dpow: i128 = (hd as i128).pow(d as u32 - 1);
    for k in 1..=d {
        hpow *= hn as i128;
        rhs += coeffs[k].unsigned_abs() as i128 * hpow * dpow;
        if k < d {
            dpow /= hd as i128;
        }
    }
    let lhs = a0.unsigned_abs() as i128 * (hd as i128).pow(d as u32);
    if lhs >= rhs {
        return false; // certified root-free on (0, hi)
    }
    // certificate failed: decide exactly, restricted to minimal polynomials
    let p = IntPolynomial::from_i64(coeffs);
    if p.degree() != Some(d) {
        return false; // leading collapse cannot happen here (lead >= 1)
    }
    if !p.is_primitive() {
        return false;
    }
    if !is_irreducible(&p).unwrap_or(false) {
        return false;
    }
    let _ = (n, q);
    count_roots_in_open_interval(&p, &BigRational::zero(), hi).unwrap_or(0) > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalCurve;
    use crate::minpoly::enumerate_minimal_polynomials;
    use crate::rat::{parse_rational, rat, rat_int};

    fn rect(x1l: &str, x1h: &str, x2l: &str, x2h: &str) -> Rectangle {
        Rectangle::new(
            parse_rational(x1l).unwrap(),
            parse_rational(x1h).unwrap(),
            parse_rational(x2l).unwrap(),
            parse_rational(x2h).unwrap(),
        )
        .unwrap()
    }

    fn eps(s: &str) -> DiagonalExclusion {
        DiagonalExclusion::new(parse_rational(s).unwrap()).unwrap()
    }

    fn neg_x(a: &str, b: &str) -> RationalCurve {
        RationalCurve::new(
            vec![rat_int(0), rat_int(-1)],
            parse_rational(a).unwrap(),
            parse_rational(b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn points_of_examples() {
        let pts = points_of(&IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(pts.len(), 2);
        let pts = points_of(&IntPolynomial::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(pts.len(), 0);
        // t^3 - 3t + 1 has 3 real roots -> 6 ordered pairs
        let pts = points_of(&IntPolynomial::from_i64(&[1, -3, 0, 1])).unwrap();
        assert_eq!(pts.len(), 6);
        // reducible input violates the precondition contractually; the
        // canonical example t^3 - 2t - 1 = (t+1)(t^2-t-1) is rejected by the
        // enumeration layer and never reaches here
    }

    #[test]
    fn count_rect_examples() {
        // the only height<=2 conjugate pair in [1.3,1.5]x[-1.5,-1.3] is
        // (sqrt2, -sqrt2)
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 2).unwrap());
        let r = rect("1.3", "1.5", "-1.5", "-1.3");
        let res = count_in_region(&db, &r, &eps("1")).unwrap();
        assert_eq!(res.count, 1);
        assert_eq!(res.by_degree[2], 1);

        // far rectangle: all height-1 roots lie in (-2, 2) by the Cauchy bound
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 1).unwrap());
        let r = rect("10", "11", "-11", "-10");
        let res = count_in_region(&db, &r, &eps("1")).unwrap();
        assert_eq!(res.count, 0);

        // hand check of the 5 height-1 irreducible quadratics
        let r = rect("0.5", "0.7", "-0.7", "-0.5");
        let res = count_in_region(&db, &r, &eps("0.1")).unwrap();
        assert_eq!(res.count, 0);
    }

    #[test]
    fn count_strip_examples() {
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 2).unwrap());
        let strip = Strip::exact(neg_x("1.3", "1.5"), rat(1, 10)).unwrap();
        let res = count_in_strip(&db, &strip, &eps("1")).unwrap();
        assert_eq!(res.count, 1);

        // f(x) = -x - 5: no height-2 roots below -4
        let f = RationalCurve::new(
            vec![rat_int(-5), rat_int(-1)],
            rat_int(1),
            rat_int(2),
        )
        .unwrap();
        let strip = Strip::exact(f, rat_int(1)).unwrap();
        let res = count_in_strip(&db, &strip, &eps("1")).unwrap();
        assert_eq!(res.count, 0);

        let db1 = enumerate_minimal_polynomials(PolyClassParams::new(2, 1).unwrap());
        let strip = Strip::exact(neg_x("0.5", "0.7"), rat(1, 100)).unwrap();
        let res = count_in_strip(&db1, &strip, &eps("0.1")).unwrap();
        assert_eq!(res.count, 0);
    }

    #[test]
    fn streamed_matches_db_route_rect() {
        for (n, q) in [(2usize, 6i64), (3, 4)] {
            let params = PolyClassParams::new(n, q).unwrap();
            let db = enumerate_minimal_polynomials(params);
            for r in [
                rect("1", "1.5", "-1.5", "-1"),
                rect("0.2", "1.8", "-2.5", "-0.1"),
                rect("-3", "-1.2", "0.1", "2.7"),
            ] {
                let a = count_in_region(&db, &r, &eps("0.05")).unwrap();
                let b = count_in_rectangle_streamed(params, &r, &eps("0.05")).unwrap();
                assert_eq!(a.count, b.count, "n={n} Q={q} {}", r.describe());
                assert_eq!(a.by_degree, b.by_degree);
            }
        }
    }

    #[test]
    fn streamed_matches_db_route_strip() {
        for q in [4i64, 8] {
            let params = PolyClassParams::new(2, q).unwrap();
            let db = enumerate_minimal_polynomials(params);
            for w in [rat(1, 10), rat(1, 3)] {
                let strip = Strip::exact(neg_x("1", "2"), w).unwrap();
                let a = count_in_strip(&db, &strip, &eps("0.5")).unwrap();
                let b = count_in_strip_streamed(params, &strip, &eps("0.5")).unwrap();
                assert_eq!(a.count, b.count, "Q={q}");
            }
            // power-law width exercises the threshold table
            let strip = Strip::power_law(neg_x("1", "2"), rat_int(1), rat(1, 2), q).unwrap();
            let a = count_in_strip(&db, &strip, &eps("0.5")).unwrap();
            let b = count_in_strip_streamed(params, &strip, &eps("0.5")).unwrap();
            assert_eq!(a.count, b.count, "power Q={q}");
        }
    }

    #[test]
    fn pruned_and_unpruned_agree() {
        let params = PolyClassParams::new(3, 6).unwrap();
        let db = enumerate_minimal_polynomials(params);
        let r = rect("1", "1.5", "-1.5", "-1");
        let a = count_in_region_impl(&db, &r, &eps("1"), true).unwrap();
        let b = count_in_region_impl(&db, &r, &eps("1"), false).unwrap();
        assert_eq!(a.count, b.count);
    }

    #[test]
    fn symmetry_properties() {
        let params = PolyClassParams::new(2, 8).unwrap();
        let db = enumerate_minimal_polynomials(params);
        // swap symmetry
        let r12 = rect("1", "1.7", "-2.3", "-0.9");
        let r21 = rect("-2.3", "-0.9", "1", "1.7");
        let a = count_in_region(&db, &r12, &eps("0.5")).unwrap();
        let b = count_in_region(&db, &r21, &eps("0.5")).unwrap();
        assert_eq!(a.count, b.count);
        // negation symmetry: alpha -> -alpha maps points into the reflected
        // rectangle and preserves degree and height
        let neg = rect("0.9", "2.3", "-1.7", "-1");
        let c = count_in_region(&db, &neg, &eps("0.5")).unwrap();
        assert_eq!(a.count, c.count);
    }

    #[test]
    fn empty_interval_examples() {
        assert!(empty_interval_check(2, 1).unwrap());
        assert!(empty_interval_check(3, 10).unwrap());
        // widened interval (0, 1/5) at Q=5 contains an algebraic number
        // (e.g. the positive root of 5t^2 + 5t - 1)
        assert!(!empty_interval_check_width(2, 5, &rat(1, 5)).unwrap());
    }

    #[test]
    fn diagonal_validation_enforced() {
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 1).unwrap());
        let r = rect("0", "1", "0", "1");
        assert!(count_in_region(&db, &r, &eps("0.5")).is_err());
    }
}
