//! Measure estimation for the "bad" sets and the proof-layer diagnostic
//! objects: sublevel cells, essential/non-essential splits, Sprindzuk
//! classes, and the property harness for the auxiliary inequalities.
//!
//! The bad set quantifies over the FULL polynomial class (reducibles
//! included), not the minimal-polynomial database; scanning the
//! positive-leading half suffices because the defining inequalities only see
//! |P| and |P'|.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;

use crate::classifier::{below_power_bound, min_abs_quad, sublevel_intervals, SublevelSet};
use crate::complexroots::{RootHandle, RootSystem};
use crate::error::{Error, Result};
use crate::geometry::Rectangle;
use crate::polyint::IntPolynomial;
use crate::rat::{nth_root_bounds, rat_int, RatInterval};
use crate::realroots::{isolate_real_roots, RootEnclosure};

/// Parameters of the bad set L(Q, delta_n, v, Pi): points of Pi where some
/// class polynomial is small at both coordinates with a small minimum
/// derivative.
#[derive(Debug, Clone)]
pub struct BadSetSpec {
    pub n: usize,
    pub q: i64,
    pub v: (BigRational, BigRational),
    pub h_n: BigRational,
    pub delta_n: BigRational,
    pub rect: Rectangle,
}

impl BadSetSpec {
    pub fn new(
        n: usize,
        q: i64,
        v: (BigRational, BigRational),
        h_n: BigRational,
        delta_n: BigRational,
        rect: Rectangle,
    ) -> Result<Self> {
        if n < 2 || q < 1 {
            return Err(Error::InvalidConfig("bad set needs n >= 2 and Q >= 1".into()));
        }
        let sum = &v.0 + &v.1;
        if sum != BigRational::from(BigInt::from(n as i64 - 1)) {
            return Err(Error::InvalidConfig(format!(
                "need v1 + v2 = n - 1 = {}, got {}",
                n - 1,
                sum
            )));
        }
        if !v.0.is_positive() || !v.1.is_positive() {
            return Err(Error::InvalidConfig("need v1, v2 > 0".into()));
        }
        if !h_n.is_positive() || delta_n.is_negative() {
            return Err(Error::InvalidConfig("need h_n > 0 and delta_n >= 0".into()));
        }
        if !rect.diagonal_gap().is_positive() {
            return Err(Error::InvalidConfig(
                "bad set rectangle must avoid the diagonal".into(),
            ));
        }
        Ok(BadSetSpec {
            n,
            q,
            v,
            h_n,
            delta_n,
            rect,
        })
    }
}

/// Exact test |value| < h * Q^(-v) for rational value.
fn below_bad_bound(value: &BigRational, spec: &BadSetSpec, which: usize) -> bool {
    let v = if which == 0 { &spec.v.0 } else { &spec.v.1 };
    below_power_bound(&value.abs(), &spec.h_n, spec.q, v)
}

/// Rational upper bound of h * Q^(-v).
fn bad_bound_upper(spec: &BadSetSpec, which: usize) -> BigRational {
    let v = if which == 0 { &spec.v.0 } else { &spec.v.1 };
    let a: u32 = v.numer().to_string().parse().expect("small exponent");
    let b: u32 = v.denom().to_string().parse().expect("small exponent");
    let q_pow = BigRational::from(BigInt::from(spec.q).pow(a)).recip();
    nth_root_bounds(&q_pow, b, 80).1 * &spec.h_n
}

/// Scans the full class P_n(Q) for a witness at the point (x1, x2): both
/// values small and the minimum derivative small, all checked exactly.
/// The admissible constant coefficient is pruned to an integer interval.
pub fn in_bad_set(
    x1: &BigRational,
    x2: &BigRational,
    spec: &BadSetSpec,
) -> Option<IntPolynomial> {
    if spec.delta_n.is_zero() {
        return None; // strict inequality 0 < 0 is unsatisfiable
    }
    let q = spec.q;
    let delta_q = &spec.delta_n * BigRational::from(BigInt::from(q));
    let b1_hi = bad_bound_upper(spec, 0);
    // degree 0: constants c with |c| < both bounds, derivative 0 < delta Q
    for c in 1..=q {
        let cv = BigRational::from(BigInt::from(c));
        if below_bad_bound(&cv, spec, 0) && below_bad_bound(&cv, spec, 1) {
            return Some(IntPolynomial::from_i64(&[c]));
        }
        break; // |c| >= 1 is monotone; only c = 1 can ever pass
    }
    for d in 1..=spec.n {
        let mut coeffs = vec![0i64; d + 1];
        if let Some(w) = scan_degree(&mut coeffs, d, d, x1, x2, spec, &delta_q, &b1_hi) {
            return Some(w);
        }
    }
    None
}

/// Recursive scan over coefficients a_d .. a_1, pruning a_0.
#[allow(clippy::too_many_arguments)]
fn scan_degree(
    coeffs: &mut Vec<i64>,
    pos: usize,
    d: usize,
    x1: &BigRational,
    x2: &BigRational,
    spec: &BadSetSpec,
    delta_q: &BigRational,
    b1_hi: &BigRational,
) -> Option<IntPolynomial> {
    let q = spec.q;
    if pos == 0 {
        // prune a_0: |T(x1) + a_0| < B1 constrains a_0 to an interval
        coeffs[0] = 0;
        let p_partial = IntPolynomial::from_i64(coeffs);
        let t1 = p_partial.evaluate(x1);
        let lo = (-&t1 - b1_hi).ceil().to_integer().max(BigInt::from(-q));
        let hi = (-&t1 + b1_hi).floor().to_integer().min(BigInt::from(q));
        let mut a0 = lo;
        while a0 <= hi {
            coeffs[0] = a0.to_i64().unwrap();
            a0 += BigInt::one();
            let p = IntPolynomial::from_i64(coeffs);
            if p.degree() != Some(d) {
                continue;
            }
            let v1 = p.evaluate(x1);
            if !below_bad_bound(&v1, spec, 0) {
                continue;
            }
            let v2 = p.evaluate(x2);
            if !below_bad_bound(&v2, spec, 1) {
                continue;
            }
            let dp = p.derivative();
            let d1 = dp.evaluate(x1).abs();
            let d2 = dp.evaluate(x2).abs();
            if &d1.min(d2) < delta_q {
                return Some(p);
            }
        }
        coeffs[0] = 0;
        return None;
    }
    let start = if pos == d { 1 } else { -q };
    for c in start..=q {
        coeffs[pos] = c;
        if let Some(w) = scan_degree(coeffs, pos - 1, d, x1, x2, spec, delta_q, b1_hi) {
            return Some(w);
        }
    }
    coeffs[pos] = 0;
    None
}

/// How sample points are drawn.
#[derive(Debug, Clone)]
pub enum Sampler {
    /// Deterministic m x m midpoint grid.
    Grid(usize),
    ///

    /// N uniform dyadic points from a seeded generator.
    Random { n: usize, seed: u64 },
    /// Exact union-of-boxes sweep (n = 2 only).
    Exact,
}

#[derive(Debug, Clone)]
pub struct MeasureEstimate {
    pub mode: &'static str,
    pub samples: u64,
    /// certified enclosure of the measure (a point for the samplers)
    pub lo: BigRational,
    pub hi: BigRational,
    pub stderr: f64,
    pub mu2: BigRational,
}

impl MeasureEstimate {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    /// Certified verdict for "measure < mu2 / 4", when decided.
    pub fn below_quarter(&self) -> Option<bool> {
        let quarter = &self.mu2 / rat_int(4);
        if self.hi < quarter {
            Some(true)
        } else if self.lo >= quarter {
            Some(false)
        } else {
            None
        }
    }
}

/// Estimates the measure of the bad set inside Pi.
pub fn estimate_bad_measure(spec: &BadSetSpec, sampler: &Sampler) -> Result<MeasureEstimate> {
    let mu2 = spec.rect.mu2();
    match sampler {
        Sampler::Grid(m) => {
            if *m == 0 {
                return Err(Error::InvalidConfig("grid sampler needs m >= 1".into()));
            }
            let pts = grid_points(&spec.rect, *m);
            let hits = count_hits(&pts, spec);
            let frac = BigRational::new(BigInt::from(hits), BigInt::from((m * m) as i64));
            let est = frac * &mu2;
            Ok(MeasureEstimate {
                mode: "grid",
                samples: (m * m) as u64,
                lo: est.clone(),
                hi: est,
                stderr: 0.0,
                mu2,
            })
        }
        Sampler::Random { n, seed } => {
            if *n == 0 {
                return Err(Error::InvalidConfig("random sampler needs n >= 1".into()));
            }
            let pts = random_points(&spec.rect, *n, *seed);
            let hits = count_hits(&pts, spec);
            let frac = BigRational::new(BigInt::from(hits), BigInt::from(*n as i64));
            let est = &frac * &mu2;
            let p = frac.to_f64().unwrap_or(0.0);
            let stderr = (p * (1.0 - p) / *n as f64).sqrt() * mu2.to_f64().unwrap_or(f64::NAN);
            Ok(MeasureEstimate {
                mode: "random",
                samples: *n as u64,
                lo: est.clone(),
                hi: est,
                stderr,
                mu2,
            })
        }
        Sampler::Exact => exact_bad_measure(spec),
    }
}

fn grid_points(rect: &Rectangle, m: usize) -> Vec<(BigRational, BigRational)> {
    let w1 = &rect.x1_hi - &rect.x1_lo;
    let w2 = &rect.x2_hi - &rect.x2_lo;
    let mm = BigRational::from(BigInt::from(m as i64));
    let mut pts = Vec::with_capacity(m * m);
    for i in 0..m {
        let x1 = &rect.x1_lo
            + &w1 * BigRational::new(BigInt::from(2 * i as i64 + 1), BigInt::from(2)) / &mm;
        for j in 0..m {
            let x2 = &rect.x2_lo
                + &w2 * BigRational::new(BigInt::from(2 * j as i64 + 1), BigInt::from(2)) / &mm;
            pts.push((x1.clone(), x2.clone()));
        }
    }
    pts
}

fn random_points(rect: &Rectangle, n: usize, seed: u64) -> Vec<(BigRational, BigRational)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let w1 = &rect.x1_hi - &rect.x1_lo;
    let w2 = &rect.x2_hi - &rect.x2_lo;
    let denom = BigInt::one() << 53usize;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let u1: u64 = rng.gen_range(0..(1u64 << 53));
        let u2: u64 = rng.gen_range(0..(1u64 << 53));
        let f1 = BigRational::new(BigInt::from(u1), denom.clone());
        let f2 = BigRational::new(BigInt::from(u2), denom.clone());
        pts.push((&rect.x1_lo + &w1 * f1, &rect.x2_lo + &w2 * f2));
    }
    pts
}

fn count_hits(pts: &[(BigRational, BigRational)], spec: &BadSetSpec) -> u64 {
    pts.par_iter()
        .map(|(x1, x2)| u64::from(in_bad_set(x1, x2, spec).is_some()))
        .sum()
}

// ---------------------------------------------------------------------------
// exact mode (n = 2): union of solution boxes, swept exactly
// ---------------------------------------------------------------------------

/// One interval endpoint: rational or an algebraic enclosure.
#[derive(Debug, Clone)]
enum EndVal {
    Rat(BigRational),
    Alg(RootEnclosure),
}

impl EndVal {
    fn outer(&self) -> RatInterval {
        match self {
            EndVal::Rat(v) => RatInterval::point(v.clone()),
            EndVal::Alg(enc) => enc.interval(),
        }
    }

    fn refine(&mut self) {
        if let EndVal::Alg(enc) = self {
            enc.bisect();
            enc.bisect();
        }
    }
}

#[derive(Debug, Clone)]
struct FuzzyBox {
    x1: (EndVal, EndVal),
    x2: (EndVal, EndVal),
}

/// Exact-mode measure: for each quadratic the solution region is a union of
/// boxes with algebraic endpoints; the total area is bracketed by sweeping
/// outer and inner rational roundings and refining until the quarter-bound
/// comparison is decided.
fn exact_bad_measure(spec: &BadSetSpec) -> Result<MeasureEstimate> {
    if spec.n != 2 {
        return Err(Error::InvalidConfig(
            "exact measure mode is implemented for n = 2 only".into(),
        ));
    }
    let mu2 = spec.rect.mu2();
    if spec.delta_n.is_zero() {
        return Ok(MeasureEstimate {
            mode: "exact",
            samples: 0,
            lo: BigRational::zero(),
            hi: BigRational::zero(),
            stderr: 0.0,
            mu2,
        });
    }
    let q = spec.q;
    let delta_q = &spec.delta_n * BigRational::from(BigInt::from(q));
    // collect solution boxes over the positive-leading half of the class
    let leads: Vec<i64> = (0..=q).collect();
    let rows: Vec<Result<Vec<FuzzyBox>>> = leads
        .par_iter()
        .map(|&b2| {
            let mut out = Vec::new();
            for b1 in -q..=q {
                for b0 in -q..=q {
                    if b2 == 0 && b1 == 0 && b0 == 0 {
                        continue;
                    }
                    if b2 == 0 && b1 == 0 {
                        // constants: derivative 0; |c| >= 1 never below the
                        // bounds at desk parameters, but test exactly anyway
                        let cv = BigRational::from(BigInt::from(b0));
                        if below_bad_bound(&cv, spec, 0) && below_bad_bound(&cv, spec, 1) {
                            out.push(FuzzyBox {
                                x1: (
                                    EndVal::Rat(spec.rect.x1_lo.clone()),
                                    EndVal::Rat(spec.rect.x1_hi.clone()),
                                ),
                                x2: (
                                    EndVal::Rat(spec.rect.x2_lo.clone()),
                                    EndVal::Rat(spec.rect.x2_hi.clone()),
                                ),
                            });
                        }
                        continue;
                    }
                    boxes_for_poly(b2, b1, b0, spec, &delta_q, &mut out)?;
                }
            }
            Ok(out)
        })
        .collect();
    let mut boxes = Vec::new();
    for r in rows {
        boxes.extend(r?);
    }
    // bracket the union area, refining algebraic endpoints until decisive
    let quarter = &mu2 / rat_int(4);
    let tol = &mu2 / BigRational::from(BigInt::one() << 24usize);
    for _ in 0..256 {
        let upper = union_area(&boxes, spec, true);
        let lower = union_area(&boxes, spec, false);
        let decided = upper < quarter || lower >= quarter;
        if decided && (&upper - &lower) <= tol {
            return Ok(MeasureEstimate {
                mode: "exact",
                samples: boxes.len() as u64,
                lo: lower,
                hi: upper,
                stderr: 0.0,
                mu2,
            });
        }
        for b in &mut boxes {
            b.x1.0.refine();
            b.x1.1.refine();
            b.x2.0.refine();
            b.x2.1.refine();
        }
    }
    Err(Error::Undecided {
        poly: "exact bad-set measure".into(),
        rounds: 256,
    })
}

/// Solution boxes of one quadratic: (V1 n U1) x V2 and V1 x (V2 n U2),
/// where V_i is the value sublevel on I_i and U_i the derivative sublevel.
fn boxes_for_poly(
    b2: i64,
    b1: i64,
    b0: i64,
    spec: &BadSetSpec,
    delta_q: &BigRational,
    out: &mut Vec<FuzzyBox>,
) -> Result<()> {
    let p = IntPolynomial::from_i64(&[b0, b1, b2]);
    // quick reject on exact minima
    let m1 = min_abs_quad(b2, b1, b0, &spec.rect.x1_lo, &spec.rect.x1_hi);
    if !below_bad_bound(&m1, spec, 0) {
        return Ok(());
    }
    let m2 = min_abs_quad(b2, b1, b0, &spec.rect.x2_lo, &spec.rect.x2_hi);
    if !below_bad_bound(&m2, spec, 1) {
        return Ok(());
    }
    let v1 = value_sublevel(&p, spec, 0)?;
    if v1.is_empty() {
        return Ok(());
    }
    let v2 = value_sublevel(&p, spec, 1)?;
    if v2.is_empty() {
        return Ok(());
    }
    // derivative sublevel: |P'| < delta*Q, P' linear or constant
    let dp = p.derivative();
    let u = derivative_sublevel(&dp, delta_q);
    let v1_iv = clip_pieces(&v1, &spec.rect.x1_lo, &spec.rect.x1_hi);
    let v2_iv = clip_pieces(&v2, &spec.rect.x2_lo, &spec.rect.x2_hi);
    match u {
        DerivSublevel::All => {
            for a in &v1_iv {
                for b in &v2_iv {
                    out.push(FuzzyBox {
                        x1: a.clone(),
                        x2: b.clone(),
                    });
                }
            }
        }
        DerivSublevel::Empty => {}
        DerivSublevel::Interval(ulo, uhi) => {
            // (V1 n U) x V2
            for a in &v1_iv {
                if let Some(ai) = clip_rational(a, &ulo, &uhi) {
                    for b in &v2_iv {
                        out.push(FuzzyBox {
                            x1: ai.clone(),
                            x2: b.clone(),
                        });
                    }
                }
            }
            // V1 x (V2 n U)
            for b in &v2_iv {
                if let Some(bi) = clip_rational(b, &ulo, &uhi) {
                    for a in &v1_iv {
                        out.push(FuzzyBox {
                            x1: a.clone(),
                            x2: bi.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// {x : |P(x)| < h Q^{-v_i}} as an exact sublevel set; irrational bounds are
/// raised to an even power so the threshold becomes rational.
fn value_sublevel(p: &IntPolynomial, spec: &BadSetSpec, which: usize) -> Result<SublevelSet> {
    let v = if which == 0 { &spec.v.0 } else { &spec.v.1 };
    let a: u32 = v.numer().to_string().parse().expect("small exponent");
    let b: u32 = v.denom().to_string().parse().expect("small exponent");
    let e = if b % 2 == 0 { b } else { 2 * b };
    let mult = e / b;
    // |P|^e < h^e Q^(-a*mult): P^e is a polynomial since e is even
    let mut pe = IntPolynomial::one();
    for _ in 0..e {
        pe = pe.multiply(p);
    }
    let bound = spec.h_n.pow(e as i32)
        / BigRational::from(BigInt::from(spec.q).pow(a * mult));
    sublevel_intervals(&pe, &bound)
}

enum DerivSublevel {
    All,
    Empty,
    Interval(BigRational, BigRational),
}

fn derivative_sublevel(dp: &IntPolynomial, delta_q: &BigRational) -> DerivSublevel {
    match dp.degree() {
        None => DerivSublevel::All, // P' = 0 < delta Q (delta > 0 here)
        Some(0) => {
            let c = BigRational::from(dp.coeff(0)).abs();
            if &c < delta_q {
                DerivSublevel::All
            } else {
                DerivSublevel::Empty
            }
        }
        Some(1) => {
            let a = BigRational::from(dp.coeff(1));
            let b = BigRational::from(dp.coeff(0));
            // |a t + b| < dq: t in ((-dq - b)/a, (dq - b)/a) for a > 0
            let lo = (-delta_q - &b) / &a;
            let hi = (delta_q - &b) / &a;
            if a.is_positive() {
                DerivSublevel::Interval(lo, hi)
            } else {
                DerivSublevel::Interval(hi, lo)
            }
        }
        Some(_) => unreachable!("n = 2 derivative is at most linear"),
    }
}

/// Clips sublevel pieces to [lo, hi]; endpoints become EndVal pairs.
fn clip_pieces(
    set: &SublevelSet,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<(EndVal, EndVal)> {
    let mut out = Vec::new();
    match set {
        SublevelSet::All => out.push((EndVal::Rat(lo.clone()), EndVal::Rat(hi.clone()))),
        SublevelSet::Intervals(ivs) => {
            for (l, r) in ivs {
                // skip pieces fully outside
                if r.cmp_rational(lo) != Ordering::Greater {
                    continue;
                }
                if l.cmp_rational(hi) != Ordering::Less {
                    continue;
                }
                let left = if l.cmp_rational(lo) == Ordering::Less {
                    EndVal::Rat(lo.clone())
                } else {
                    EndVal::Alg(l.clone())
                };
                let right = if r.cmp_rational(hi) == Ordering::Greater {
                    EndVal::Rat(hi.clone())
                } else {
                    EndVal::Alg(r.clone())
                };
                out.push((left, right));
            }
        }
    }
    out
}

/// Intersects a fuzzy interval with a rational interval, if nonempty on the
/// outer bounds.
fn clip_rational(
    piece: &(EndVal, EndVal),
    lo: &BigRational,
    hi: &BigRational,
) -> Option<(EndVal, EndVal)> {
    let l_out = piece.0.outer();
    let r_out = piece.1.outer();
    if &r_out.hi <= lo || &l_out.lo >= hi {
        return None;
    }
    let left = if &l_out.hi < lo {
        EndVal::Rat(lo.clone())
    } else {
        piece.0.clone()
    };
    let right = if &r_out.lo > hi {
        EndVal::Rat(hi.clone())
    } else {
        piece.1.clone()
    };
    Some((left, right))
}

/// Union area of the boxes, rounded outward (`outer = true`) or inward,
/// clipped to Pi. Classic coordinate-compression sweep, exact rationals.
fn union_area(boxes: &[FuzzyBox], spec: &BadSetSpec, outer: bool) -> BigRational {
    let mut rects: Vec<(BigRational, BigRational, BigRational, BigRational)> = Vec::new();
    for b in boxes {
        let (x1l, x1r) = (&b.x1.0.outer(), &b.x1.1.outer());
        let (x2l, x2r) = (&b.x2.0.outer(), &b.x2.1.outer());
        let (a, bb, c, d) = if outer {
            (
                x1l.lo.clone(),
                x1r.hi.clone(),
                x2l.lo.clone(),
                x2r.hi.clone(),
            )
        } else {
            (
                x1l.hi.clone(),
                x1r.lo.clone(),
                x2l.hi.clone(),
                x2r.lo.clone(),
            )
        };
        let a = a.max(spec.rect.x1_lo.clone());
        let bb = bb.min(spec.rect.x1_hi.clone());
        let c = c.max(spec.rect.x2_lo.clone());
        let d = d.min(spec.rect.x2_hi.clone());
        if a < bb && c < d {
            rects.push((a, bb, c, d));
        }
    }
    if rects.is_empty() {
        return BigRational::zero();
    }
    let mut xs: Vec<BigRational> = Vec::with_capacity(rects.len() * 2);
    for (a, b, _, _) in &rects {
        xs.push(a.clone());
        xs.push(b.clone());
    }
    xs.sort();
    xs.dedup();
    let mut area = BigRational::zero();
    for w in xs.windows(2) {
        let (xl, xr) = (&w[0], &w[1]);
        if xl >= xr {
            continue;
        }
        // union length of active y-intervals
        let mut ys: Vec<(BigRational, BigRational)> = rects
            .iter()
            .filter(|(a, b, _, _)| a <= xl && xr <= b)
            .map(|(_, _, c, d)| (c.clone(), d.clone()))
            .collect();
        if ys.is_empty() {
            continue;
        }
        ys.sort_by(|p, q| p.0.cmp(&q.0));
        let mut len = BigRational::zero();
        let mut cur = ys[0].clone();
        for (c, d) in ys.into_iter().skip(1) {
            if c <= cur.1 {
                if d > cur.1 {
                    cur.1 = d;
                }
            } else {
                len += &cur.1 - &cur.0;
                cur = (c, d);
            }
        }
        len += &cur.1 - &cur.0;
        area += (xr - xl) * len;
    }
    area
}

// ---------------------------------------------------------------------------
// Sprindzuk classification
// ---------------------------------------------------------------------------

/// Bucket data of one polynomial: quantized root-separation exponents and
/// the quantized leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SprindzukClass {
    pub degree: usize,
    pub k1: Vec<i64>,
    pub k2: Vec<i64>,
    /// u = u_grid * eps4
    pub u_grid: i64,
    /// true when a quantization boundary could not be certified and the
    /// lower cell was assigned
    pub boundary_flagged: bool,
}

impl SprindzukClass {
    /// p_{i,j} = (k_{i,j+1} + ... + k_{i,m}) * eps4 for j < m, and 0 at m.
    pub fn p_exponents(&self, eps4: &BigRational, which: usize) -> Vec<BigRational> {
        let k = if which == 0 { &self.k1 } else { &self.k2 };
        let m = self.degree;
        let mut out = vec![BigRational::zero(); m];
        // k holds k_{i,2}..k_{i,m}; p_j sums k_{j+1}..k_m
        for j in (0..m - 1).rev() {
            let kj = BigRational::from(BigInt::from(k[j]));
            out[j] = &out[j + 1] + kj * eps4;
        }
        // index shift: out[j-1] = p_{i,j}
        out
    }
}

/// Quantizes the root geometry of P: distances from each anchor root to all
/// other roots (complex included, through certified disks), graded on the
/// Q^(-k*eps4) grid, plus the graded leading coefficient.
///
/// Real conjugate pairs of a quadratic have a rational squared distance
/// (disc / lead^2), so their grading, including exact grid boundaries, is a
/// pure rational comparison. Other real pairs confirm a suspected boundary
/// through the root-difference resultant; complex distances that straddle a
/// boundary past the refinement cap are assigned the boundary cell and
/// flagged.
pub fn sprindzuk_classify(
    p: &IntPolynomial,
    q: i64,
    eps4: &BigRational,
    anchor1: usize,
    anchor2: usize,
) -> Result<SprindzukClass> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if m < 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: m,
        });
    }
    if !eps4.is_positive() {
        return Err(Error::InvalidConfig("eps4 must be positive".into()));
    }
    let a: i64 = eps4
        .numer()
        .to_i64()
        .ok_or_else(|| Error::InvalidConfig("eps4 numerator too large".into()))?;
    let b: u32 = eps4
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidConfig("eps4 denominator too large".into()))?;
    let mut sys = RootSystem::certify(p)?;
    let r = sys.real_roots().len();
    if anchor1 >= r || anchor2 >= r {
        return Err(Error::NoRealRoots);
    }
    let mut flagged = false;
    let mut kvecs: Vec<Vec<i64>> = Vec::with_capacity(2);
    for anchor in [anchor1, anchor2] {
        let h = RootHandle::Real(anchor);
        let others: Vec<RootHandle> = sys.handles().into_iter().filter(|&o| o != h).collect();
        // grade each distance, then sort the k's in the distance order
        // (descending k = ascending distance)
        let mut graded: Vec<(i64, bool)> = Vec::with_capacity(others.len());
        for &other in &others {
            let exact_sq = exact_distance_squared(p, &sys, h, other);
            let (k, flag) = grade_distance(p, &mut sys, h, other, exact_sq, q, a, b)?;
            graded.push((k, flag));
        }
        graded.sort_by(|x, y| y.0.cmp(&x.0));
        flagged |= graded.iter().any(|g| g.1);
        kvecs.push(graded.into_iter().map(|g| g.0).collect());
    }
    let k2v = kvecs.pop().unwrap();
    let k1v = kvecs.pop().unwrap();
    let u_grid = grade_leading(p, q, eps4);
    Ok(SprindzukClass {
        degree: m,
        k1: k1v,
        k2: k2v,
        u_grid,
        boundary_flagged: flagged,
    })
}

/// Rational |alpha - beta|^2, when available: the two real roots of a
/// quadratic have (alpha - beta)^2 = disc / lead^2.
fn exact_distance_squared(
    p: &IntPolynomial,
    _sys: &RootSystem,
    h: RootHandle,
    other: RootHandle,
) -> Option<BigRational> {
    match (h, other) {
        (RootHandle::Real(_), RootHandle::Real(_)) if p.degree() == Some(2) => {
            let disc = p.discriminant().ok()?;
            let lead = p.leading_coeff()?.clone();
            Some(BigRational::new(disc, &lead * &lead))
        }
        _ => None,
    }
}

/// Sign of d - Q^(-g eps4) from a distance interval, via d^b * Q^(ga) vs 1.
fn side_of_grid(d: &RatInterval, q: i64, g: i64, a: i64, b: u32) -> Option<Ordering> {
    let scale = pow_q(q, g * a);
    let lo = d.lo.pow(b as i32) * &scale;
    let hi = d.hi.pow(b as i32) * &scale;
    if hi < BigRational::one() {
        Some(Ordering::Less)
    } else if lo > BigRational::one() {
        Some(Ordering::Greater)
    } else if lo == hi {
        Some(Ordering::Equal)
    } else {
        None
    }
}

/// Candidate grid indices to test for a distance interval.
fn grid_window(d: &RatInterval, q: i64, a: i64, b: u32) -> Vec<i64> {
    let mid = d.midpoint().to_f64().unwrap_or(1.0).max(1e-300);
    let rho = -mid.ln() / (q as f64).ln();
    let eps = a as f64 / b as f64;
    let g0 = (rho / eps).floor() as i64;
    (g0 - 3..=g0 + 3).collect()
}

/// Finds k with Q^(-k eps4) < d <= Q^(-(k-1) eps4).
#[allow(clippy::too_many_arguments)]
fn grade_distance(
    p: &IntPolynomial,
    sys: &mut RootSystem,
    h: RootHandle,
    other: RootHandle,
    exact_sq: Option<BigRational>,
    q: i64,
    a: i64,
    b: u32,
) -> Result<(i64, bool)> {
    if let Some(sq) = exact_sq {
        // pure rational grading: compare sq^b vs Q^(-2ga) exactly
        let side = |g: i64| -> Ordering {
            let lhs = sq.pow(b as i32) * pow_q(q, 2 * g * a);
            lhs.cmp(&BigRational::one())
        };
        let d = RatInterval::new(
            crate::rat::sqrt_bounds(&sq, 32).0,
            crate::rat::sqrt_bounds(&sq, 32).1,
        );
        for g in grid_window(&d, q, a, b) {
            // boundary d = Q^(-g eps4): half-open convention puts it in g+1
            if side(g) == Ordering::Equal {
                return Ok((g + 1, true));
            }
        }
        for g in grid_window(&d, q, a, b) {
            let k = g + 1;
            if side(k) == Ordering::Greater && side(k - 1) == Ordering::Less {
                return Ok((k, false));
            }
        }
        return Err(Error::InvalidConfig(format!(
            "distance grading window missed for {p}"
        )));
    }
    for round in 0..48 {
        let d = sys.distance_between(h, other);
        let window = grid_window(&d, q, a, b);
        for &g in &window {
            let k = g + 1;
            let below = side_of_grid(&d, q, k, a, b);
            let above = side_of_grid(&d, q, k - 1, a, b);
            if below == Some(Ordering::Greater) && above == Some(Ordering::Less) {
                return Ok((k, false));
            }
        }
        if round >= 24 {
            // persistent straddle: try to confirm an exact boundary
            for &g in &window {
                if side_of_grid(&d, q, g, a, b).is_none() {
                    match confirm_real_boundary(p, sys, h, other, q, g, a, b) {
                        Some(true) => return Ok((g + 1, true)),
                        Some(false) => break, // genuinely off-boundary: keep refining
                        None => {
                            if round >= 40 {
                                // complex distance, unresolvable at this
                                // precision: boundary cell, loudly flagged
                                return Ok((g + 1, true));
                            }
                        }
                    }
                    break;
                }
            }
        }
        sys.refine();
    }
    Err(Error::Undecided {
        poly: p.to_string(),
        rounds: 48,
    })
}

/// Exact boundary confirmation for a distance between two REAL roots:
/// |alpha - beta| = Q^(-g eps4) iff the root difference is a common root of
/// the root-difference resultant and u^b Q^(ga) = +-1. Returns None when a
/// handle is complex (no exact route here).
#[allow(clippy::too_many_arguments)]
fn confirm_real_boundary(
    p: &IntPolynomial,
    sys: &RootSystem,
    h: RootHandle,
    other: RootHandle,
    q: i64,
    g: i64,
    a: i64,
    b: u32,
) -> Option<bool> {
    let (RootHandle::Real(i), RootHandle::Real(j)) = (h, other) else {
        return None;
    };
    let diff_poly = root_difference_resultant(p);
    // E(u): u^b * Q^(ga) - 1 cleared to integers, covering both signs of the
    // difference via |u|
    let ga = g * a;
    let mut e_coeffs = vec![BigInt::zero(); b as usize + 1];
    if ga >= 0 {
        e_coeffs[b as usize] = BigInt::from(q).pow(ga as u32);
        e_coeffs[0] = -BigInt::one();
    } else {
        e_coeffs[b as usize] = BigInt::one();
        e_coeffs[0] = -BigInt::from(q).pow((-ga) as u32);
    }
    let e_plus = IntPolynomial::new(e_coeffs.clone());
    // for the negative difference: (-u)^b, adjust sign when b is odd
    let e_minus = if b % 2 == 0 {
        e_plus.clone()
    } else {
        IntPolynomial::new(
            e_coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    };
    // enclosure of delta = alpha_i - alpha_j
    let di = sys.real_roots()[i].interval();
    let dj = sys.real_roots()[j].interval();
    let delta = di.sub(&dj);
    for e in [e_plus, e_minus] {
        let gcd = diff_poly.gcd(&e);
        if gcd.degree().map_or(false, |d| d >= 1) {
            // delta is a root of diff_poly; it equals the boundary iff gcd
            // has a root inside delta's (tight) interval
            if let Ok(count) = crate::realroots::count_roots_in_open_interval(
                &gcd,
                &(&delta.lo - BigRational::new(BigInt::one(), BigInt::one() << 20usize)),
                &(&delta.hi + BigRational::new(BigInt::one(), BigInt::one() << 20usize)),
            ) {
                if count > 0 {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

/// Res_t(P(t), P(t + u)) / u^deg-normalization: its roots include every
/// difference of two roots of P.
fn root_difference_resultant(p: &IntPolynomial) -> IntPolynomial {
    let d = p.degree().unwrap();
    let points_needed = d * d + 1;
    let mut xs: Vec<BigInt> = Vec::with_capacity(points_needed);
    let mut k = 0i64;
    while xs.len() < points_needed {
        xs.push(BigInt::from(k));
        if k > 0 {
            xs.push(BigInt::from(-k));
        }
        k += 1;
    }
    xs.truncate(points_needed);
    let pts: Vec<(BigInt, BigInt)> = xs
        .into_iter()
        .map(|u| {
            let shifted = p.compose_shift(&u);
            let val = p.resultant(&shifted).expect("nonzero inputs");
            (u, val)
        })
        .collect();
    crate::minpoly::interpolate_integer(&pts)
}

fn pow_q(q: i64, e: i64) -> BigRational {
    let qb = BigRational::from(BigInt::from(q));
    if e >= 0 {
        qb.pow(e as i32)
    } else {
        qb.pow(-e as i32).recip()
    }
}

/// Grid index g with Q^(g eps4) <= |a_m| < Q^((g+1) eps4), clamped to the
/// top bucket so u <= 1 - eps4 (the |a_m| = Q edge is top-inclusive).
fn grade_leading(p: &IntPolynomial, q: i64, eps4: &BigRational) -> i64 {
    let a: u32 = eps4.numer().to_u32().expect("small eps4");
    let b: u32 = eps4.denom().to_u32().expect("small eps4");
    let am = p.leading_coeff().unwrap().abs();
    let am_b = am.pow(b);
    let qb = BigInt::from(q);
    let mut g = 0i64;
    while qb.pow(((g + 1) as u32) * a) <= am_b {
        g += 1;
    }
    // clamp so that u = g*eps4 <= 1 - eps4
    let g_max = (b as i64 - a as i64) / a as i64;
    g.min(g_max)
}

// ---------------------------------------------------------------------------
// cells and the essential split
// ---------------------------------------------------------------------------

/// An axis-aligned cell with outward-rounded rational bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub x1_lo: BigRational,
    pub x1_hi: BigRational,
    pub x2_lo: BigRational,
    pub x2_hi: BigRational,
}

impl Cell {
    pub fn new(
        x1_lo: BigRational,
        x1_hi: BigRational,
        x2_lo: BigRational,
        x2_hi: BigRational,
    ) -> Result<Cell> {
        if x1_lo >= x1_hi || x2_lo >= x2_hi {
            return Err(Error::InvalidConfig("cell half-widths must be positive".into()));
        }
        Ok(Cell {
            x1_lo,
            x1_hi,
            x2_lo,
            x2_hi,
        })
    }

    pub fn area(&self) -> BigRational {
        (&self.x1_hi - &self.x1_lo) * (&self.x2_hi - &self.x2_lo)
    }

    pub fn intersection_area(&self, other: &Cell) -> BigRational {
        let w = self.x1_hi.clone().min(other.x1_hi.clone())
            - self.x1_lo.clone().max(other.x1_lo.clone());
        let h = self.x2_hi.clone().min(other.x2_hi.clone())
            - self.x2_lo.clone().max(other.x2_lo.clone());
        if w.is_positive() && h.is_positive() {
            w * h
        } else {
            BigRational::zero()
        }
    }
}

/// Builds the cell around two anchor roots of P with half-widths
/// coef * Q^(-e_i) / |P'(alpha_i)|, outward-rounded. Covers both the plain
/// and the expanded cell of the machinery, which differ only in (coef, e).
pub fn sigma_cell(
    p: &IntPolynomial,
    anchors: (usize, usize),
    coef: &BigRational,
    exponents: (&BigRational, &BigRational),
    q: i64,
) -> Result<Cell> {
    let roots = isolate_real_roots(p)?;
    if anchors.0 >= roots.len() || anchors.1 >= roots.len() {
        return Err(Error::NoRealRoots);
    }
    let hw = |idx: usize, e: &BigRational| -> Result<(RatInterval, BigRational)> {
        let width = BigRational::new(BigInt::one(), BigInt::one() << 80usize);
        let enc = roots[idx].refine(&width);
        let dp = p.derivative();
        let dval = enc.interval().eval_poly(
            &dp.coeffs()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect::<Vec<_>>(),
        );
        let dabs = dval.abs();
        if !dabs.lo.is_positive() {
            return Err(Error::InvalidConfig(format!(
                "derivative not bounded away from zero at root {idx} of {p}"
            )));
        }
        // Q^(-e) upper bound
        let a: u32 = e.numer().to_string().parse().expect("small exponent");
        let b: u32 = e.denom().to_string().parse().expect("small exponent");
        let q_pow = BigRational::from(BigInt::from(q).pow(a)).recip();
        let qe_hi = nth_root_bounds(&q_pow, b, 80).1;
        Ok((enc.interval(), coef * qe_hi / dabs.lo))
    };
    let (c1, h1) = hw(anchors.0, exponents.0)?;
    let (c2, h2) = hw(anchors.1, exponents.1)?;
    Cell::new(&c1.lo - &h1, &c1.hi + &h1, &c2.lo - &h2, &c2.hi + &h2)
}

/// A cell is essential iff every other cell overlaps it in less than half
/// of its own area. Exact rectangle arithmetic; order-independent.
pub fn essential_split(cells: &[Cell]) -> Vec<bool> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    cells
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let threshold = c.area() * &half;
            cells
                .iter()
                .enumerate()
                .all(|(j, other)| i == j || c.intersection_area(other) < threshold)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// auxiliary-lemma checks
// ---------------------------------------------------------------------------

/// The half-interval smallness propagation: if |P| < bound on at least half
/// of I (by measure), then max over I of |P| < 6^n (n+1)^(n+1) bound.
/// Returns true when the implication holds for this instance (vacuously or
/// by the verified conclusion).
pub fn lemma2_check(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    bound: &BigRational,
) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi || !bound.is_positive() {
        return Err(Error::InvalidConfig("lemma2 needs lo < hi and bound > 0".into()));
    }
    let set = sublevel_intervals(p, bound)?;
    // measure of A = sublevel n [lo, hi], bracketed
    let (mut a_lo, mut a_hi) = (BigRational::zero(), BigRational::zero());
    match &set {
        SublevelSet::All => {
            a_lo = hi - lo;
            a_hi = hi - lo;
        }
        SublevelSet::Intervals(ivs) => {
            for (l, r) in ivs {
                let width = BigRational::new(BigInt::one(), BigInt::one() << 64usize);
                let li = l.refine(&width).interval();
                let ri = r.refine(&width).interval();
                let clip = |v: &BigRational| -> BigRational {
                    v.clone().max(lo.clone()).min(hi.clone())
                };
                let len_lo = (clip(&ri.lo) - clip(&li.hi)).max(BigRational::zero());
                let len_hi = (clip(&ri.hi) - clip(&li.lo)).max(BigRational::zero());
                a_lo += len_lo;
                a_hi += len_hi;
            }
        }
    }
    let half = (hi - lo) / rat_int(2);
    if a_hi < half {
        return Ok(true); // hypothesis certified false: vacuous
    }
    let _ = a_lo;
    // hypothesis holds (or straddles; treat as holding): verify conclusion
    let n = p.degree().unwrap();
    let rhs = BigRational::from(BigInt::from(6).pow(n as u32))
        * BigRational::from(BigInt::from(n as i64 + 1).pow(n as u32 + 1))
        * bound;
    let max = max_abs_on_interval(p, lo, hi);
    if max.hi < rhs {
        return Ok(true);
    }
    if max.lo >= rhs {
        return Ok(false);
    }
    Err(Error::Undecided {
        poly: p.to_string(),
        rounds: 1,
    })
}

/// Certified enclosure of max |p| over [lo, hi]: endpoints exactly, critical
/// points through refined enclosures.
fn max_abs_on_interval(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> RatInterval {
    let vals = |x: &BigRational| RatInterval::point(p.evaluate(x).abs());
    let mut best = vals(lo);
    let vb = vals(hi);
    best = RatInterval::new(best.lo.max(vb.lo), best.hi.max(vb.hi));
    let dp = p.derivative();
    if dp.degree().map_or(false, |d| d >= 1) {
        if let Ok(crit) = isolate_real_roots(&dp) {
            let width = BigRational::new(BigInt::one(), BigInt::one() << 96usize);
            let coeffs: Vec<BigRational> = p
                .coeffs()
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect();
            for c in crit {
                if c.cmp_rational(lo) == Ordering::Greater && c.cmp_rational(hi) == Ordering::Less
                {
                    let v = c.refine(&width).interval().eval_poly(&coeffs).abs();
                    best = RatInterval::new(best.lo.max(v.lo), best.hi.max(v.hi));
                }
            }
        }
    }
    best
}

/// Verifies the resultant separation identity for coprime quadratics:
/// 1 <= |Res| and |Res| = lead1^2 lead2^2 * prod of the four cross root
/// distances, within outward-rounded enclosure bounds.
pub fn resultant_separation_check(p1: &IntPolynomial, p2: &IntPolynomial) -> Result<bool> {
    if p1.degree() != Some(2) || p2.degree() != Some(2) {
        return Err(Error::WrongDegree {
            expected: 2,
            got: p1.degree().or(p2.degree()).unwrap_or(0),
        });
    }
    let res = p1.resultant(p2)?;
    if res.is_zero() {
        return Err(Error::InvalidConfig(
            "polynomials share a root; the separation identity needs coprime inputs".into(),
        ));
    }
    let res_abs = BigRational::from(res.abs());
    if res_abs < BigRational::one() {
        return Ok(false);
    }
    let mut s1 = RootSystem::certify(p1)?;
    let mut s2 = RootSystem::certify(p2)?;
    for _ in 0..64 {
        let lead = BigRational::from(
            (p1.leading_coeff().unwrap() * p2.leading_coeff().unwrap()).pow(2u32).abs(),
        );
        let mut prod = RatInterval::point(lead);
        for ha in s1.handles() {
            for hb in s2.handles() {
                let d = s1.distance_cross(ha, &s2, hb);
                prod = prod.mul(&RatInterval::new(d.lo.max(BigRational::zero()), d.hi));
            }
        }
        if prod.contains(&res_abs) && prod.width() < res_abs {
            return Ok(true);
        }
        if prod.hi < res_abs || prod.lo > res_abs {
            return Ok(false);
        }
        s1.refine();
        s2.refine();
    }
    Err(Error::Undecided {
        poly: format!("{p1} vs {p2}"),
        rounds: 64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_rational, rat};

    fn rect(x1l: &str, x1h: &str, x2l: &str, x2h: &str) -> Rectangle {
        Rectangle::new(
            parse_rational(x1l).unwrap(),
            parse_rational(x1h).unwrap(),
            parse_rational(x2l).unwrap(),
            parse_rational(x2h).unwrap(),
        )
        .unwrap()
    }

    fn spec_n2(q: i64, h: &str, delta: &str) -> BadSetSpec {
        BadSetSpec::new(
            2,
            q,
            (rat(1, 2), rat(1, 2)),
            parse_rational(h).unwrap(),
            parse_rational(delta).unwrap(),
            rect("1", "1.5", "-1.5", "-1"),
        )
        .unwrap()
    }

    #[test]
    fn in_bad_set_examples() {
        // (3/2, -3/2) at Q=2, delta=1/100: no quadratic is that small at
        // both coordinates with tiny derivative
        let spec = spec_n2(2, "1", "1/100");
        assert!(in_bad_set(&rat(3, 2), &rat(-3, 2), &spec).is_none());
        // near (sqrt2, -sqrt2) with a loose derivative bound: t^2 - 2 wins
        let spec = spec_n2(2, "1", "10");
        let x1 = rat(1414214, 1000000);
        let x2 = -rat(1414214, 1000000);
        let w = in_bad_set(&x1, &x2, &spec).expect("t^2 - 2 witnesses");
        assert_eq!(w, IntPolynomial::from_i64(&[-2, 0, 1]));
        // delta = 0: strict inequality unsatisfiable
        let spec = spec_n2(2, "1", "0");
        assert!(in_bad_set(&x1, &x2, &spec).is_none());
    }

    #[test]
    fn bad_set_monotone_in_delta_and_h() {
        let tight = spec_n2(4, "1", "1/8");
        let loose_delta = spec_n2(4, "1", "1");
        let loose_h = spec_n2(4, "3", "1/8");
        let pts = grid_points(&tight.rect, 7);
        for (x1, x2) in pts {
            if in_bad_set(&x1, &x2, &tight).is_some() {
                assert!(in_bad_set(&x1, &x2, &loose_delta).is_some());
                assert!(in_bad_set(&x1, &x2, &loose_h).is_some());
            }
        }
    }

    #[test]
    fn measure_modes_and_determinism() {
        let spec = spec_n2(8, "1", "1/4");
        let g = estimate_bad_measure(&spec, &Sampler::Grid(40)).unwrap();
        let g2 = estimate_bad_measure(&spec, &Sampler::Grid(40)).unwrap();
        assert_eq!(g.lo, g2.lo);
        let r = estimate_bad_measure(&spec, &Sampler::Random { n: 500, seed: 42 }).unwrap();
        let r2 = estimate_bad_measure(&spec, &Sampler::Random { n: 500, seed: 42 }).unwrap();
        assert_eq!(r.lo, r2.lo);
        // delta = 0 has measure exactly zero
        let zero = spec_n2(8, "1", "0");
        let e = estimate_bad_measure(&zero, &Sampler::Exact).unwrap();
        assert!(e.lo.is_zero() && e.hi.is_zero());
    }

    #[test]
    fn exact_mode_brackets_sampling() {
        let spec = spec_n2(8, "1", "1/4");
        let exact = estimate_bad_measure(&spec, &Sampler::Exact).unwrap();
        assert!(exact.lo <= exact.hi);
        // grid estimate should be consistent with the exact bracket up to
        // grid resolution
        let g = estimate_bad_measure(&spec, &Sampler::Grid(60)).unwrap();
        let resolution = &spec.rect.mu2() / rat_int(10);
        assert!(g.lo.clone() <= exact.hi.clone() + resolution.clone());
        assert!(exact.lo.clone() <= g.lo.clone() + resolution);
    }

    #[test]
    fn quarter_bound_small_q() {
        let spec = spec_n2(8, "1", "1/4");
        let e = estimate_bad_measure(&spec, &Sampler::Exact).unwrap();
        assert_eq!(e.below_quarter(), Some(true), "measure {:?}..{:?}", e.lo, e.hi);
    }

    #[test]
    fn sprindzuk_example_t2_minus_2() {
        // |alpha1 - alpha2| = 2 sqrt2, rho = -log_2(2 sqrt2) = -3/2,
        // and k with k/2 - 1/2 <= -3/2 < k/2 gives k = -2
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let cls = sprindzuk_classify(&p, 2, &rat(1, 2), 0, 1).unwrap();
        assert_eq!(cls.degree, 2);
        assert_eq!(cls.k1, vec![-2]);
        assert_eq!(cls.k2, vec![-2]);
        // 2 sqrt2 = 2^(3/2) sits exactly on the grid: flagged, assigned to
        // the cell whose lower endpoint it is
        assert!(cls.boundary_flagged);
        // monic leading: u = 0 for any Q >= 2
        assert_eq!(cls.u_grid, 0);
        // p_{i,m} = 0 always
        let pexp = cls.p_exponents(&rat(1, 2), 0);
        assert_eq!(pexp.last().unwrap(), &BigRational::zero());
    }

    #[test]
    fn sprindzuk_census_partition_and_bound() {
        // all degree-2 positive-leading polynomials with two real roots,
        // H <= 8: classification is a partition and the key count respects
        // n * c16^2 * c17 with c16 = 2/eps4 + 1, c17 = 1/eps4 + 1
        use std::collections::HashMap;
        let q = 8i64;
        let eps4 = rat(1, 2);
        let mut keys: HashMap<(Vec<i64>, Vec<i64>, i64), usize> = HashMap::new();
        let mut eligible = 0usize;
        for b2 in 1..=q {
            for b1 in -q..=q {
                for b0 in -q..=q {
                    let disc = b1 * b1 - 4 * b2 * b0;
                    if disc <= 0 {
                        continue;
                    }
                    let p = IntPolynomial::from_i64(&[b0, b1, b2]);
                    eligible += 1;
                    let cls = sprindzuk_classify(&p, q, &eps4, 0, 1).unwrap();
                    *keys
                        .entry((cls.k1.clone(), cls.k2.clone(), cls.u_grid))
                        .or_default() += 1;
                    // paper's k bounds hold at this scale
                    for k in cls.k1.iter().chain(cls.k2.iter()) {
                        assert!(*k >= -2 && *k <= 3, "k = {k} out of range for {p}");
                    }
                    assert!(cls.u_grid >= 0 && cls.u_grid <= 1);
                }
            }
        }
        let total: usize = keys.values().sum();
        assert_eq!(total, eligible);
        // n * c16^2 * c17 = 2 * 25 * 3 = 150
        assert!(keys.len() <= 150, "saw {} keys", keys.len());
    }

    #[test]
    fn essential_split_examples() {
        let c = |a: i64, b: i64, cc: i64, d: i64| {
            Cell::new(rat_int(a), rat_int(b), rat_int(cc), rat_int(d)).unwrap()
        };
        // two disjoint cells: both essential
        let cells = vec![c(0, 1, 0, 1), c(2, 3, 2, 3)];
        assert_eq!(essential_split(&cells), vec![true, true]);
        // identical cells: both non-essential
        let cells = vec![c(0, 2, 0, 2), c(0, 2, 0, 2)];
        assert_eq!(essential_split(&cells), vec![false, false]);
        // area-4 cell overlapping area-1 cell on a 1x1 patch
        let cells = vec![c(0, 2, 0, 2), c(1, 2, 1, 2)];
        assert_eq!(essential_split(&cells), vec![true, false]);
        // order independence
        let cells_rev = vec![c(1, 2, 1, 2), c(0, 2, 0, 2)];
        assert_eq!(essential_split(&cells_rev), vec![false, true]);
    }

    #[test]
    fn sigma_cell_construction() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        let cell = sigma_cell(&p, (1, 0), &rat_int(2), (&rat(1, 2), &rat(1, 2)), 4).unwrap();
        // centered near (sqrt2, -sqrt2)
        assert!(cell.x1_lo < rat(1415, 1000) && cell.x1_hi > rat(1414, 1000));
        assert!(cell.x2_lo < -rat(1414, 1000) && cell.x2_hi > -rat(1415, 1000));
        assert!(cell.area().is_positive());
    }

    #[test]
    fn lemma2_examples() {
        // P = t on [-1, 1] with bound 1/2: A = (-1/2, 1/2), half measure;
        // max |P| = 1 < 6 * 4 * 1/2 = 12
        assert!(lemma2_check(
            &IntPolynomial::from_i64(&[0, 1]),
            &rat_int(-1),
            &rat_int(1),
            &rat(1, 2)
        )
        .unwrap());
        // P = t^2 on [0,1] with bound 1/100: mu A = 1/10 < 1/2, vacuous
        assert!(lemma2_check(
            &IntPolynomial::from_i64(&[0, 0, 1]),
            &rat_int(0),
            &rat_int(1),
            &rat(1, 100)
        )
        .unwrap());
    }

    #[test]
    fn resultant_separation_examples() {
        let p1 = IntPolynomial::from_i64(&[-2, 0, 1]);
        let p2 = IntPolynomial::from_i64(&[-3, 0, 1]);
        assert!(resultant_separation_check(&p1, &p2).unwrap());
        assert!(resultant_separation_check(&p1, &p1).is_err());
        let p3 = IntPolynomial::from_i64(&[-1, 0, 2]);
        let p4 = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(resultant_separation_check(&p3, &p4).unwrap());
        // complex-root quadratics go through the disk machinery
        let p5 = IntPolynomial::from_i64(&[1, 0, 1]);
        let p6 = IntPolynomial::from_i64(&[1, 1, 1]);
        assert!(resultant_separation_check(&p5, &p6).unwrap());
    }
}
