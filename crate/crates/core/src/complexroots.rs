//! Certified enclosures for the full (real and complex) root system of a
//! squarefree integer polynomial.
//!
//! Real roots come from Sturm isolation. Non-real roots are approximated
//! numerically, polished by Newton steps in exact rational complex
//! arithmetic, and then certified: a disk centered at z with radius
//! m*|P(z)|/|P'(z)| always contains at least one root, so a family of
//! pairwise disjoint disks avoiding the real axis, one per non-real root,
//! pins each root to exactly one disk. All downstream quantities (root
//! distances, |P'(alpha)|) are two-sided rational bounds derived from these
//! enclosures, so a comparison that resolves is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyint::IntPolynomial;
use crate::rat::{rat_int, sqrt_bounds, RatInterval};
use crate::realroots::{isolate_real_roots, RootEnclosure};

/// Disk around the upper (Im > 0) representative of a conjugate pair.
#[derive(Debug, Clone)]
pub struct ComplexDisk {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

/// Identifies one root of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootHandle {
    Real(usize),
    /// `upper` selects Im > 0; the mirror is the conjugate root.
    Complex { pair: usize, upper: bool },
}

/// Certified root system of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct RootSystem {
    poly: Arc<IntPolynomial>,
    degree: usize,
    real: Vec<RootEnclosure>,
    pairs: Vec<ComplexDisk>,
    precision: u32,
}

impl RootSystem {
    /// Builds and certifies the system. The input must be squarefree.
    pub fn certify(p: &IntPolynomial) -> Result<RootSystem> {
        let m = p.degree().ok_or(Error::ZeroPolynomial)?;
        if !p.is_squarefree() {
            return Err(Error::InvalidConfig(format!(
                "root system requires a squarefree polynomial, got {p}"
            )));
        }
        let poly = Arc::new(p.clone());
        let mut real = isolate_real_roots(p)?;
        separate(&mut real);
        let r = real.len();
        let pair_count = (m - r) / 2;
        if pair_count == 0 {
            return Ok(RootSystem {
                poly,
                degree: m,
                real,
                pairs: Vec::new(),
                precision: 64,
            });
        }
        let deriv = p.derivative();
        for (attempt, prec) in [(0u64, 96u32), (1, 192), (2, 384), (3, 768)] {
            if let Some(pairs) = certify_disks(&poly, &deriv, m, pair_count, prec, attempt) {
                return Ok(RootSystem {
                    poly,
                    degree: m,
                    real,
                    pairs,
                    precision: prec,
                });
            }
        }
        Err(Error::InvalidConfig(format!(
            "could not certify complex roots of {p}"
        )))
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn real_roots(&self) -> &[RootEnclosure] {
        &self.real
    }

    pub fn complex_pairs(&self) -> &[ComplexDisk] {
        &self.pairs
    }

    /// All m roots: the real ones in ascending order, then conjugate pairs.
    pub fn handles(&self) -> Vec<RootHandle> {
        let mut out: Vec<RootHandle> = (0..self.real.len()).map(RootHandle::Real).collect();
        for pair in 0..self.pairs.len() {
            out.push(RootHandle::Complex { pair, upper: true });
            out.push(RootHandle::Complex { pair, upper: false });
        }
        out
    }

    /// Tightens every enclosure: real intervals are bisected, disks get one
    /// more exact Newton step at doubled working precision.
    pub fn refine(&mut self) {
        for enc in &mut self.real {
            enc.bisect();
            enc.bisect();
        }
        self.precision = (self.precision * 2).min(1 << 14);
        let deriv = self.polyref().derivative();
        let sf = self.polyref().clone();
        for disk in &mut self.pairs {
            improve_disk(&sf, &deriv, disk, self.precision);
        }
    }

    fn polyref(&self) -> &IntPolynomial {
        &self.poly
    }

    /// Two-sided bounds on |x - alpha| for rational x.
    pub fn distance_to_rational(&self, h: RootHandle, x: &BigRational) -> RatInterval {
        match h {
            RootHandle::Real(i) => {
                let enc = &self.real[i];
                enc.interval().sub(&RatInterval::point(x.clone())).abs()
            }
            RootHandle::Complex { pair, .. } => {
                let d = &self.pairs[pair];
                let dre = x - &d.re;
                let center_sq = &dre * &dre + &d.im * &d.im;
                modulus_with_radius(&center_sq, &d.radius)
            }
        }
    }

    /// Two-sided bounds on |alpha_a - alpha_b| for two distinct handles.
    pub fn distance_between(&self, a: RootHandle, b: RootHandle) -> RatInterval {
        use RootHandle::*;
        match (a, b) {
            (Real(i), Real(j)) => {
                let d = self.real[i].interval().sub(&self.real[j].interval()).abs();
                // separated enclosures keep the lower bound positive
                d
            }
            (Real(i), Complex { pair, .. }) | (Complex { pair, .. }, Real(i)) => {
                let enc = self.real[i].interval();
                let d = &self.pairs[pair];
                let dre = enc.sub(&RatInterval::point(d.re.clone()));
                let center_sq = dre.square().shift(&(&d.im * &d.im));
                // center varies over the real enclosure; pad by the radius
                let m = RatInterval::new(
                    sqrt_bounds(&center_sq.lo, 64).0,
                    sqrt_bounds(&center_sq.hi, 64).1,
                );
                pad_interval(&m, &d.radius)
            }
            (Complex { pair: i, upper: ui }, Complex { pair: j, upper: uj }) => {
                if i == j {
                    if ui == uj {
                        panic!("distance of a root to itself");
                    }
                    // |z - conj(z)| = 2 Im z, padded by both radii
                    let d = &self.pairs[i];
                    let two_im = &d.im * rat_int(2);
                    let two_r = &d.radius * rat_int(2);
                    return RatInterval::new(
                        (&two_im - &two_r).max(BigRational::zero()),
                        &two_im + &two_r,
                    );
                }
                let di = &self.pairs[i];
                let dj = &self.pairs[j];
                let dre = &di.re - &dj.re;
                let im_j = if ui == uj { dj.im.clone() } else { -dj.im.clone() };
                let dim = &di.im - im_j;
                let center_sq = &dre * &dre + &dim * &dim;
                let m = modulus_with_radius(&center_sq, &(&di.radius + &dj.radius));
                m
            }
        }
    }

    /// Two-sided bounds on |alpha - beta| for roots of two different
    /// systems.
    pub fn distance_cross(&self, h: RootHandle, other: &RootSystem, oh: RootHandle) -> RatInterval {
        use RootHandle::*;
        let disk = |sys: &RootSystem, pair: usize, upper: bool| -> (BigRational, BigRational, BigRational) {
            let d = &sys.pairs[pair];
            let im = if upper { d.im.clone() } else { -d.im.clone() };
            (d.re.clone(), im, d.radius.clone())
        };
        match (h, oh) {
            (Real(i), Real(j)) => self.real[i]
                .interval()
                .sub(&other.real[j].interval())
                .abs(),
            (Real(i), Complex { pair, upper }) => {
                let enc = self.real[i].interval();
                let (re, im, rad) = disk(other, pair, upper);
                let dre = enc.sub(&RatInterval::point(re));
                let center_sq = dre.square().shift(&(&im * &im));
                let m = RatInterval::new(
                    sqrt_bounds(&center_sq.lo, 64).0,
                    sqrt_bounds(&center_sq.hi, 64).1,
                );
                pad_interval(&m, &rad)
            }
            (Complex { pair, upper }, Real(j)) => {
                let enc = other.real[j].interval();
                let (re, im, rad) = disk(self, pair, upper);
                let dre = enc.sub(&RatInterval::point(re));
                let center_sq = dre.square().shift(&(&im * &im));
                let m = RatInterval::new(
                    sqrt_bounds(&center_sq.lo, 64).0,
                    sqrt_bounds(&center_sq.hi, 64).1,
                );
                pad_interval(&m, &rad)
            }
            (Complex { pair: i, upper: ui }, Complex { pair: j, upper: uj }) => {
                let (re_a, im_a, rad_a) = disk(self, i, ui);
                let (re_b, im_b, rad_b) = disk(other, j, uj);
                let dre = &re_a - &re_b;
                let dim = &im_a - &im_b;
                let center_sq = &dre * &dre + &dim * &dim;
                modulus_with_radius(&center_sq, &(&rad_a + &rad_b))
            }
        }
    }

    /// Two-sided bounds on |P'(alpha)| via |a_m| * prod of root distances.
    pub fn derivative_modulus_at(&self, h: RootHandle) -> RatInterval {
        let lead = BigRational::from(self.polyref().leading_coeff().unwrap().abs());
        let mut acc = RatInterval::point(lead);
        for other in self.handles() {
            if other == h {
                continue;
            }
            let d = self.distance_between(h, other);
            let d = RatInterval::new(d.lo.max(BigRational::zero()), d.hi);
            acc = acc.mul(&d);
        }
        RatInterval::new(acc.lo.max(BigRational::zero()), acc.hi)
    }
}

fn pad_interval(iv: &RatInterval, pad: &BigRational) -> RatInterval {
    RatInterval::new((&iv.lo - pad).max(BigRational::zero()), &iv.hi + pad)
}

/// Bounds for sqrt(center_sq) +- radius, clamped at zero.
fn modulus_with_radius(center_sq: &BigRational, radius: &BigRational) -> RatInterval {
    let (lo, hi) = sqrt_bounds(center_sq, 64);
    RatInterval::new((lo - radius).max(BigRational::zero()), hi + radius)
}

/// Refines real enclosures until they are pairwise strictly separated.
fn separate(real: &mut [RootEnclosure]) {
    if real.len() < 2 {
        return;
    }
    loop {
        let mut ok = true;
        for i in 0..real.len() - 1 {
            if real[i].hi() >= real[i + 1].lo() {
                ok = false;
            }
        }
        if ok {
            return;
        }
        for enc in real.iter_mut() {
            enc.bisect();
        }
    }
}

type C = (BigRational, BigRational);

fn c_mul(a: &C, b: &C) -> C {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn c_div(a: &C, b: &C) -> Option<C> {
    let den = &b.0 * &b.0 + &b.1 * &b.1;
    if den.is_zero() {
        return None;
    }
    Some((
        (&a.0 * &b.0 + &a.1 * &b.1) / &den,
        (&a.1 * &b.0 - &a.0 * &b.1) / &den,
    ))
}

fn c_eval(p: &IntPolynomial, z: &C) -> C {
    let mut acc: C = (BigRational::zero(), BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = c_mul(&acc, z);
        acc.0 += BigRational::from(c.clone());
    }
    acc
}

fn dyadic_round(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let scaled = x * BigRational::from(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
    rounded / BigRational::from(scale)
}

/// Newton-polishes a disk center and recomputes its certified radius;
/// keeps the old disk when the new one is not better.
fn improve_disk(p: &IntPolynomial, dp: &IntPolynomial, disk: &mut ComplexDisk, prec: u32) {
    let z = (disk.re.clone(), disk.im.clone());
    if let Some((z2, r2)) = newton_step_with_radius(p, dp, &z, prec) {
        if r2 < disk.radius && z2.1 > r2 {
            disk.re = z2.0;
            disk.im = z2.1;
            disk.radius = r2;
        }
    }
}

fn newton_step_with_radius(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    z: &C,
    prec: u32,
) -> Option<(C, BigRational)> {
    let pz = c_eval(p, z);
    let dpz = c_eval(dp, z);
    let step = c_div(&pz, &dpz)?;
    let z2 = (
        dyadic_round(&(&z.0 - &step.0), prec),
        dyadic_round(&(&z.1 - &step.1), prec),
    );
    let r = disk_radius(p, dp, &z2)?;
    Some((z2, r))
}

/// Certified radius m*|P(z)|/|P'(z)| as a rational upper bound.
fn disk_radius(p: &IntPolynomial, dp: &IntPolynomial, z: &C) -> Option<BigRational> {
    let m = p.degree().unwrap();
    let pz = c_eval(p, z);
    let dpz = c_eval(dp, z);
    let num_sq = &pz.0 * &pz.0 + &pz.1 * &pz.1;
    let den_sq = &dpz.0 * &dpz.0 + &dpz.1 * &dpz.1;
    if den_sq.is_zero() {
        return None;
    }
    let ratio_sq = num_sq / den_sq * BigRational::from(BigInt::from((m * m) as u64));
    Some(sqrt_bounds(&ratio_sq, 96).1)
}

fn certify_disks(
    sf: &IntPolynomial,
    deriv: &IntPolynomial,
    m: usize,
    pair_count: usize,
    prec: u32,
    attempt: u64,
) -> Option<Vec<ComplexDisk>> {
    let approx = durand_kerner(sf, attempt)?;
    // keep the upper-half-plane representatives, largest |Im| first
    let mut upp: Vec<(f64, f64)> = approx.iter().copied().filter(|&(_, im)| im > 0.0).collect();
    upp.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
    if upp.len() < pair_count {
        return None;
    }
    upp.truncate(pair_count);
    let mut disks = Vec::with_capacity(pair_count);
    for (re, im) in upp {
        let mut z: C = (
            dyadic_round(&BigRational::from_float(re)?, prec),
            dyadic_round(&BigRational::from_float(im)?, prec),
        );
        let mut radius = disk_radius(sf, deriv, &z)?;
        for _ in 0..20 {
            if z.1 > radius && is_small(&radius, prec / 3) {
                break;
            }
            let (z2, r2) = newton_step_with_radius(sf, deriv, &z, prec)?;
            z = z2;
            radius = r2;
        }
        if z.1 <= radius {
            return None;
        }
        disks.push(ComplexDisk {
            re: z.0,
            im: z.1,
            radius,
        });
    }
    // pairwise disjointness among all 2*pair_count disks (uppers + mirrors)
    for i in 0..disks.len() {
        for j in 0..disks.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&disks[i], &disks[j]);
            let rr = &a.radius + &b.radius;
            let rr_sq = &rr * &rr;
            let dre = &a.re - &b.re;
            let d_same = &dre * &dre + (&a.im - &b.im) * (&a.im - &b.im);
            let d_conj = &dre * &dre + (&a.im + &b.im) * (&a.im + &b.im);
            if i < j && d_same <= rr_sq {
                return None;
            }
            if d_conj <= rr_sq {
                return None;
            }
        }
    }
    let _ = m;
    Some(disks)
}

fn is_small(r: &BigRational, bits: u32) -> bool {
    r * BigRational::from(BigInt::one() << bits as usize) < BigRational::one()
}

/// Plain f64 Durand-Kerner; good enough to seed the exact Newton polish.
fn durand_kerner(p: &IntPolynomial, attempt: u64) -> Option<Vec<(f64, f64)>> {
    let d = p.degree()?;
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let bound = 1.0 + monic.iter().take(d).fold(0.0f64, |m, c| m.max(c.abs()));
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for c in monic.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let phase0 = 0.4 + 0.13 * attempt as f64;
    let mut zs: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let theta = phase0 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
            (bound * 0.7 * theta.cos(), bound * 0.7 * theta.sin())
        })
        .collect();
    for _ in 0..600 {
        let mut delta = 0.0f64;
        for k in 0..d {
            let pz = eval(zs[k]);
            let mut den = (1.0f64, 0.0f64);
            for j in 0..d {
                if j != k {
                    let dz = (zs[k].0 - zs[j].0, zs[k].1 - zs[j].1);
                    den = (den.0 * dz.0 - den.1 * dz.1, den.0 * dz.1 + den.1 * dz.0);
                }
            }
            let den_sq = den.0 * den.0 + den.1 * den.1;
            if den_sq == 0.0 {
                return None;
            }
            let step = (
                (pz.0 * den.0 + pz.1 * den.1) / den_sq,
                (pz.1 * den.0 - pz.0 * den.1) / den_sq,
            );
            zs[k] = (zs[k].0 - step.0, zs[k].1 - step.1);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-13 {
            break;
        }
    }
    Some(zs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn all_real() {
        let sys = RootSystem::certify(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(sys.real_roots().len(), 3);
        assert!(sys.complex_pairs().is_empty());
        assert_eq!(sys.handles().len(), 3);
    }

    #[test]
    fn pure_complex_pair() {
        // t^2 + 1: roots +-i
        let sys = RootSystem::certify(&p(&[1, 0, 1])).unwrap();
        assert_eq!(sys.real_roots().len(), 0);
        assert_eq!(sys.complex_pairs().len(), 1);
        let d = &sys.complex_pairs()[0];
        // center near (0, 1)
        assert!((&d.re).abs() < rat(1, 1000));
        assert!((&d.im - rat_int(1)).abs() < rat(1, 1000));
        // |i - (-i)| = 2
        let h1 = RootHandle::Complex { pair: 0, upper: true };
        let h2 = RootHandle::Complex { pair: 0, upper: false };
        let dist = sys.distance_between(h1, h2);
        assert!(dist.contains(&rat_int(2)));
        assert!(dist.width() < rat(1, 100));
        // distance from x=0: |0 - i| = 1
        let dx = sys.distance_to_rational(h1, &rat_int(0));
        assert!(dx.contains(&rat_int(1)));
    }

    #[test]
    fn mixed_quartic() {
        // (t^2-2)(t^2+1): two real, one conjugate pair
        let q = p(&[-2, 0, 1]).multiply(&p(&[1, 0, 1]));
        let sys = RootSystem::certify(&q).unwrap();
        assert_eq!(sys.real_roots().len(), 2);
        assert_eq!(sys.complex_pairs().len(), 1);
        // |P'(sqrt 2)| = |4 t^3 - 2 t| at sqrt 2 = 8 sqrt2 - 2 sqrt2 = 6 sqrt 2
        let h = RootHandle::Real(1);
        let dm = sys.derivative_modulus_at(h);
        let expected_sq = rat_int(72); // (6 sqrt2)^2
        assert!(dm.lo.clone() * dm.lo.clone() <= expected_sq);
        assert!(dm.hi.clone() * dm.hi.clone() >= expected_sq);
    }

    #[test]
    fn two_complex_pairs_quintic() {
        // t^5 - t - 1: one real root, two conjugate pairs
        let q = p(&[-1, -1, 0, 0, 0, 1]);
        let sys = RootSystem::certify(&q).unwrap();
        assert_eq!(sys.real_roots().len(), 1);
        assert_eq!(sys.complex_pairs().len(), 2);
        assert_eq!(sys.handles().len(), 5);
        // refinement tightens
        let h = RootHandle::Complex { pair: 0, upper: true };
        let before = sys.distance_to_rational(h, &rat_int(0)).width();
        let mut sys2 = sys.clone();
        sys2.refine();
        let after = sys2.distance_to_rational(h, &rat_int(0)).width();
        assert!(after <= before);
    }

    #[test]
    fn derivative_modulus_brackets_truth() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 60 {
            let deg = rng.gen_range(2..=5usize);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-30..=30)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            let q = p(&coeffs);
            if !q.is_squarefree() {
                continue;
            }
            done += 1;
            let sys = RootSystem::certify(&q).unwrap();
            // check |P'(alpha)| bounds against f64 ground truth on real roots
            for (i, enc) in sys.real_roots().iter().enumerate() {
                let x = enc.refine(&rat(1, i64::MAX)).interval().to_f64();
                let dp = q.derivative();
                let truth = dp
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.to_f64().unwrap() * x.powi(k as i32))
                    .sum::<f64>()
                    .abs();
                let iv = sys.derivative_modulus_at(RootHandle::Real(i));
                let lo = iv.lo.to_f64().unwrap();
                let hi = iv.hi.to_f64().unwrap();
                assert!(
                    lo <= truth * 1.0001 + 1e-6 && truth <= hi * 1.0001 + 1e-6,
                    "bounds [{lo}, {hi}] miss {truth} for {q}"
                );
            }
        }
    }
}
