//! Certified real-root isolation and refinement for integer polynomials,
//! plus exact sign and comparison queries for the isolated roots.
//!
//! Isolation runs Sturm sequences in exact arithmetic over the Cauchy bound
//! interval. Every enclosure `(lo, hi)` either brackets exactly one simple
//! root with a sign change, or is an exact rational point `lo == hi`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyint::IntPolynomial;
use crate::rat::{rat_int, RatInterval};

/// Sturm chain of a polynomial: p, p', then negated remainders, content-
/// stripped at each step (positive scaling only, so signs are preserved).
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> SturmChain {
        let mut chain = vec![p.clone()];
        let dp = p.derivative();
        if !dp.is_zero() {
            chain.push(dp);
            loop {
                let n = chain.len();
                let r = sturm_rem(&chain[n - 2], &chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r);
            }
        }
        SturmChain { chain }
    }

    /// Sign variations at num/den (den > 0), zeros skipped.
    fn variations_at(&self, num: &BigInt, den: &BigInt) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for q in &self.chain {
            let s = q.sign_at(num, den);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    pub fn variations_at_rational(&self, x: &BigRational) -> usize {
        self.variations_at(x.numer(), x.denom())
    }

    /// Number of distinct real roots in the half-open interval (a, b], for
    /// a < b with p(a) != 0.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at_rational(a) - self.variations_at_rational(b)
    }
}

fn sturm_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    // -rem(a, b), computed fraction-free with positive scaling, then
    // content-stripped keeping the sign.
    let db = match b.degree() {
        Some(d) => d,
        None => return IntPolynomial::zero(),
    };
    let lc_b = b.leading_coeff().unwrap().clone();
    let lc_b_abs = lc_b.abs();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead_r = r.leading_coeff().unwrap().clone();
        let mut coeffs: Vec<BigInt> = r.coeffs().iter().map(|c| c * &lc_b_abs).collect();
        let factor = if lc_b.is_negative() {
            -&lead_r
        } else {
            lead_r.clone()
        };
        for (k, c) in b.coeffs().iter().enumerate() {
            coeffs[k + dr - db] -= c * &factor;
        }
        r = IntPolynomial::new(coeffs);
    }
    if r.is_zero() {
        return r;
    }
    // strip content, keep sign, then negate
    let content = r.content();
    IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &content)).collect())
}

/// A rational-endpoint interval isolating exactly one real root of `poly`.
///
/// Either `lo < hi` with `poly(lo)` and `poly(hi)` nonzero and of opposite
/// signs, or `lo == hi` and the root is the exact rational point. The stored
/// polynomial is the squarefree primitive positive-leading part of whatever
/// was isolated, so bisection by sign is always valid.
#[derive(Debug, Clone)]
pub struct RootEnclosure {
    poly: Arc<IntPolynomial>,
    lo: BigRational,
    hi: BigRational,
    root_index: usize,
}

impl RootEnclosure {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn poly_arc(&self) -> Arc<IntPolynomial> {
        self.poly.clone()
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// One bisection step; exact rational roots collapse to points.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat_int(2);
        let s = self.poly.sign_at_rational(&mid);
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        let s_lo = self.poly.sign_at_rational(&self.lo);
        if s == s_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Returns an enclosure of the same root with width at most `width`.
    pub fn refine(&self, width: &BigRational) -> RootEnclosure {
        let mut enc = self.clone();
        while !enc.is_exact() && enc.width() > *width {
            enc.bisect();
        }
        enc
    }

    pub fn refine_in_place(&mut self, width: &BigRational) {
        while !self.is_exact() && self.width() > *width {
            self.bisect();
        }
    }

    /// Exact trichotomy against a rational point.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        // q strictly inside: equal iff q is the isolated root
        if self.poly.sign_at_rational(q) == 0 {
            return Ordering::Equal;
        }
        let mut enc = self.clone();
        loop {
            enc.bisect();
            if enc.is_exact() {
                return enc.lo.cmp(q);
            }
            if q <= &enc.lo {
                return Ordering::Greater;
            }
            if q >= &enc.hi {
                return Ordering::Less;
            }
        }
    }

    /// Exact comparison with a root of a possibly different polynomial.
    pub fn cmp_exact(&self, other: &RootEnclosure) -> Ordering {
        if self.poly == other.poly {
            return self.root_index.cmp(&other.root_index);
        }
        if self.is_exact() {
            return other.cmp_rational(&self.lo).reverse();
        }
        if other.is_exact() {
            return self.cmp_rational(&other.lo);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        // distinct algebraic numbers separate under bisection; equality only
        // through a shared factor
        let g = a.poly.gcd(&b.poly);
        let could_be_equal = g.degree().map_or(false, |d| d >= 1)
            && has_root_in(&g, &a)
            && has_root_in(&g, &b);
        if could_be_equal {
            // both roots are roots of g; equal iff they are the same g-root
            let g_roots = isolate_real_roots(&g).expect("gcd is nonzero");
            let ia = locate_root(&mut a, &g_roots);
            let ib = locate_root(&mut b, &g_roots);
            return ia.cmp(&ib);
        }
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            a.bisect();
            b.bisect();
        }
    }
}

/// True when g has a root inside the (closed) enclosure interval.
fn has_root_in(g: &IntPolynomial, enc: &RootEnclosure) -> bool {
    if enc.is_exact() {
        return g.sign_at_rational(&enc.lo) == 0;
    }
    if g.sign_at_rational(&enc.lo) == 0 || g.sign_at_rational(&enc.hi) == 0 {
        return true;
    }
    SturmChain::new(g).count_half_open(&enc.lo, &enc.hi) > 0
}

/// Index of the `roots` entry that holds the same algebraic number as `enc`,
/// given that `enc`'s root is one of them.
fn locate_root(enc: &mut RootEnclosure, roots: &[RootEnclosure]) -> usize {
    loop {
        for (i, r) in roots.iter().enumerate() {
            let inside = if r.is_exact() {
                enc.is_exact() && enc.lo == r.lo
            } else {
                r.lo < enc.lo && enc.hi < r.hi
            };
            if inside {
                return i;
            }
        }
        if enc.is_exact() {
            // exact point must match an exact root or sit strictly inside one
            for (i, r) in roots.iter().enumerate() {
                if !r.is_exact() && r.lo < enc.lo && enc.lo < r.hi {
                    return i;
                }
            }
            panic!("root not found among isolated roots");
        }
        enc.bisect();
    }
}

/// Isolates all distinct real roots of p, in ascending order.
///
/// Non-squarefree input is handled by isolating the squarefree part; the
/// enclosures reference that part.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sf = Arc::new(sf);
    let chain = SturmChain::new(&sf);
    let bound = sf.cauchy_bound()?;
    let lo = -bound.clone();
    let hi = bound;
    // Cauchy bound is strict, so p(+-B) != 0 and every root is in (-B, B).
    let total = chain.count_half_open(&lo, &hi);
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(lo.clone(), hi.clone(), total)];
    let mut found: Vec<(BigRational, BigRational)> = Vec::with_capacity(total);
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => found.push((a, b)),
            _ => {
                let m = split_point(&sf, &a, &b);
                let va = chain.variations_at_rational(&a);
                let vm = chain.variations_at_rational(&m);
                let left = va - vm;
                stack.push((a, m.clone(), left));
                stack.push((m, b, count - left));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    for (index, (a, b)) in found.into_iter().enumerate() {
        out.push(RootEnclosure {
            poly: sf.clone(),
            lo: a,
            hi: b,
            root_index: index,
        });
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// A bisection point in (a, b) that is not a root of p.
fn split_point(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> BigRational {
    let two = rat_int(2);
    let m = (a + b) / &two;
    if p.sign_at_rational(&m) != 0 {
        return m;
    }
    // midpoint hit a rational root; slide toward b through distinct fractions
    let mut k = 3i64;
    loop {
        let m = a + (b - a) * BigRational::new(BigInt::one(), BigInt::from(k));
        if p.sign_at_rational(&m) != 0 {
            return m;
        }
        k += 1;
    }
}

/// Number of distinct real roots of p strictly inside the open interval
/// (a, b), i.e. with both endpoints excluded.
pub fn count_roots_in_open_interval(
    p: &IntPolynomial,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Ok(0);
    }
    let sf = p.squarefree_part()?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = SturmChain::new(&sf);
    let mut n = chain.count_half_open(a, b);
    if sf.sign_at_rational(b) == 0 {
        n -= 1;
    }
    Ok(n)
}

/// An algebraic number: one isolated real root of its minimal polynomial.
///
/// The defining polynomial is expected to be irreducible, primitive and
/// positive-leading; constructors in the enumeration layer guarantee this.
#[derive(Debug, Clone)]
pub struct AlgebraicNumber {
    enclosure: RootEnclosure,
}

impl AlgebraicNumber {
    /// Wraps an enclosure whose polynomial the caller knows to be minimal.
    pub fn from_enclosure_unchecked(enclosure: RootEnclosure) -> AlgebraicNumber {
        AlgebraicNumber { enclosure }
    }

    pub fn enclosure(&self) -> &RootEnclosure {
        &self.enclosure
    }

    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        self.enclosure.poly()
    }

    pub fn degree(&self) -> usize {
        self.enclosure.poly().degree().unwrap()
    }

    pub fn compare_to_rational(&self, q: &BigRational) -> Ordering {
        self.enclosure.cmp_rational(q)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let enc = self.enclosure.refine(&BigRational::new(
            BigInt::one(),
            BigInt::one() << 60usize,
        ));
        enc.interval().midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// The real root of p whose distance to x is minimal; exact ties resolved by
/// the lower root index.
pub fn nearest_root(p: &IntPolynomial, x: &BigRational) -> Result<RootEnclosure> {
    let roots = isolate_real_roots(p)?;
    if roots.is_empty() {
        return Err(Error::NoRealRoots);
    }
    if roots.len() == 1 {
        return Ok(roots.into_iter().next().unwrap());
    }
    let mut roots = roots;
    // distance interval of each candidate to x
    let dist = |enc: &RootEnclosure| -> RatInterval {
        enc.interval().sub(&RatInterval::point(x.clone())).abs()
    };
    loop {
        // candidates whose distance range still touches the least upper bound
        let dists: Vec<RatInterval> = roots.iter().map(&dist).collect();
        let best_hi = dists.iter().map(|d| d.hi.clone()).min().unwrap();
        let alive: Vec<usize> = (0..roots.len())
            .filter(|&i| dists[i].lo <= best_hi)
            .collect();
        if alive.len() == 1 {
            return Ok(roots[alive[0]].clone());
        }
        // Two survivors on opposite sides of x can be an exact tie:
        // alpha_i + alpha_j = 2x. Check it exactly before refining further.
        if alive.len() == 2 {
            let (i, j) = (alive[0], alive[1]);
            if exact_tie(&roots[i], &roots[j], x) {
                return Ok(roots[i.min(j)].clone());
            }
        }
        for i in alive {
            roots[i].bisect();
        }
    }
}

/// Exact test for alpha_i + alpha_j = 2x: alpha_j must be a root of the
/// reflected polynomial p(2x - t) and its reflection must be alpha_i.
fn exact_tie(a: &RootEnclosure, b: &RootEnclosure, x: &BigRational) -> bool {
    let p = a.poly();
    let two_x = x * rat_int(2);
    // clear denominators of p(2x - t)
    let den = two_x.denom().clone();
    let d = p.degree().unwrap();
    let mut refl_coeffs = vec![BigInt::zero(); d + 1];
    // p(2x - t) = sum_k c_k (2x - t)^k; expand with exact rationals, scale by den^d
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    let arg = [two_x.clone(), -BigRational::one()]; // (2x) + (-1) t
    for c in p.coeffs().iter().rev() {
        // acc = acc * arg + c
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, v) in acc.iter().enumerate() {
            next[k] += v * &arg[0];
            next[k + 1] += v * &arg[1];
        }
        next[0] += BigRational::from(c.clone());
        acc = next;
    }
    let scale = BigRational::from(BigInt::from(den.pow(d as u32)));
    for (k, v) in acc.iter().enumerate() {
        let w = v * &scale;
        debug_assert!(w.denom().is_one());
        if k < refl_coeffs.len() {
            refl_coeffs[k] = w.numer().clone();
        } else if !w.is_zero() {
            refl_coeffs.push(w.numer().clone());
        }
    }
    let reflected = IntPolynomial::new(refl_coeffs);
    if reflected.is_zero() {
        return false;
    }
    let g = p.gcd(&reflected);
    if g.degree().map_or(true, |d| d == 0) {
        return false;
    }
    if !has_root_in(&g, b) {
        return false;
    }
    // b is a root of the reflected polynomial; its mirror 2x - b is a root of
    // p. The tie holds iff that mirror is exactly a.
    let mut mirrored = b.clone();
    loop {
        let m_lo = &two_x - &mirrored.hi;
        let m_hi = &two_x - &mirrored.lo;
        if m_hi < a.lo || m_lo > a.hi {
            return false;
        }
        if a.is_exact() {
            if mirrored.is_exact() {
                return &two_x - &mirrored.lo == a.lo;
            }
        } else if a.lo < m_lo && m_hi < a.hi {
            return true;
        }
        if mirrored.is_exact() {
            // mirror is the exact point 2x - b; compare against a exactly
            let pt = &two_x - &mirrored.lo;
            return a.cmp_rational(&pt) == Ordering::Equal;
        }
        mirrored.bisect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn isolate_examples() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].cmp_rational(&rat_int(-2)) == Ordering::Greater);
        assert!(roots[0].cmp_rational(&rat_int(-1)) == Ordering::Less);
        assert!(roots[1].cmp_rational(&rat_int(1)) == Ordering::Greater);
        assert!(roots[1].cmp_rational(&rat_int(2)) == Ordering::Less);

        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());

        let roots = isolate_real_roots(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].cmp_rational(&rat_int(-1)), Ordering::Equal);
        assert_eq!(roots[1].cmp_rational(&rat_int(0)), Ordering::Equal);
        assert_eq!(roots[2].cmp_rational(&rat_int(1)), Ordering::Equal);
    }

    #[test]
    fn refine_examples() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let fine = roots[1].refine(&rat(1, 16));
        assert!(fine.width() <= rat(1, 16));
        // still contains sqrt(2)
        assert!(fine.lo < rat(1415, 1000) && fine.hi > rat(1414, 1000));

        // t - 3 collapses to the exact point 3
        let roots = isolate_real_roots(&p(&[-3, 1])).unwrap();
        let fine = roots[0].refine(&rat(1, 2));
        assert!(fine.is_exact());
        assert_eq!(*fine.lo(), rat_int(3));

        // t^3 - t root at 0 collapses exactly
        let roots = isolate_real_roots(&p(&[0, -1, 0, 1])).unwrap();
        let fine = roots[1].refine(&rat(1, 8));
        assert!(fine.is_exact());
        assert_eq!(*fine.lo(), rat_int(0));
    }

    #[test]
    fn compare_examples() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let sqrt2 = AlgebraicNumber::from_enclosure_unchecked(roots[1].clone());
        assert_eq!(sqrt2.compare_to_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(sqrt2.compare_to_rational(&rat_int(1)), Ordering::Greater);
        let roots = isolate_real_roots(&p(&[-3, 1])).unwrap();
        let three = AlgebraicNumber::from_enclosure_unchecked(roots[0].clone());
        assert_eq!(three.compare_to_rational(&rat_int(3)), Ordering::Equal);
    }

    #[test]
    fn nearest_root_examples() {
        let enc = nearest_root(&p(&[-2, 0, 1]), &rat_int(1)).unwrap();
        assert_eq!(enc.root_index(), 1);
        // distances from 3/5: |3/5 - 0| = 3/5, |3/5 - 1| = 2/5 -> the root 1
        let enc = nearest_root(&p(&[0, -1, 0, 1]), &rat(3, 5)).unwrap();
        assert_eq!(enc.root_index(), 2);
        // exact tie at 0 between -sqrt(2) and sqrt(2): lower index wins
        let enc = nearest_root(&p(&[-2, 0, 1]), &rat_int(0)).unwrap();
        assert_eq!(enc.root_index(), 0);
    }

    #[test]
    fn cmp_exact_cross_poly() {
        let r2 = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let r3 = isolate_real_roots(&p(&[-3, 0, 1])).unwrap();
        assert_eq!(r2[1].cmp_exact(&r3[1]), Ordering::Less);
        assert_eq!(r3[0].cmp_exact(&r2[0]), Ordering::Less);
        // same number through different (non-minimal) polynomials:
        // sqrt(2) as root of (t^2-2)(t^2-9) vs of t^2-2
        let prod = p(&[-2, 0, 1]).multiply(&p(&[-9, 0, 1]));
        let pr = isolate_real_roots(&prod).unwrap();
        assert_eq!(pr.len(), 4);
        assert_eq!(pr[2].cmp_exact(&r2[1]), Ordering::Equal);
        assert_eq!(pr[1].cmp_exact(&r2[1]), Ordering::Less);
    }

    #[test]
    fn open_interval_count() {
        let q = p(&[0, -1, 0, 1]); // roots -1, 0, 1
        assert_eq!(
            count_roots_in_open_interval(&q, &rat_int(-1), &rat_int(1)).unwrap(),
            1
        );
        assert_eq!(
            count_roots_in_open_interval(&q, &rat(-3, 2), &rat(3, 2)).unwrap(),
            3
        );
        assert_eq!(
            count_roots_in_open_interval(&q, &rat_int(0), &rat_int(1)).unwrap(),
            0
        );
    }

    #[test]
    fn sturm_crosscheck_random() {
        // independent check: count sign changes of p on a fine grid
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..300 {
            let deg = rng.gen_range(1..=5usize);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            let q = p(&coeffs);
            let sf = q.squarefree_part().unwrap();
            if sf.degree() == Some(0) {
                continue;
            }
            let roots = isolate_real_roots(&q).unwrap();
            // each enclosure exhibits a sign change or is exact
            for r in &roots {
                if r.is_exact() {
                    assert_eq!(sf.sign_at_rational(r.lo()), 0);
                } else {
                    let sl = sf.sign_at_rational(r.lo());
                    let sh = sf.sign_at_rational(r.hi());
                    assert!(sl != 0 && sh != 0 && sl != sh);
                }
            }
            // grid cross-check: sign changes of sf on a 400-point grid never
            // exceed the isolated count, and match it when the grid is finer
            // than the root separation
            let bound = sf.cauchy_bound().unwrap();
            let steps = 400i64;
            let mut changes = 0;
            let mut last = 0i32;
            for k in 0..=steps {
                let x = -&bound + (&bound * rat_int(2)) * rat(k, steps);
                let s = sf.sign_at_rational(&x);
                if s != 0 {
                    if last != 0 && s != last {
                        changes += 1;
                    }
                    last = s;
                }
            }
            assert!(changes <= roots.len(), "grid changes exceed root count");
        }
    }
}
