//! Enumeration of minimal polynomials: primitive, irreducible over Q,
//! positive leading coefficient, degree in [1, n], height at most Q.
//!
//! The coefficient box is partitioned into shards (one per degree and
//! leading coefficient); shards are processed by independent workers and
//! concatenated in canonical order, so the output is identical for any
//! worker count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::polyint::{IntPolynomial, PolyClassParams};
use crate::rat::rat;
use crate::realroots::isolate_real_roots;

/// One slice of the coefficient box: a fixed degree and leading coefficient.
/// Shards partition the full box exactly once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationShard {
    pub degree: usize,
    pub leading: i64,
}

/// The canonically ordered list of minimal polynomials for given (n, Q).
#[derive(Debug, Clone)]
pub struct MinimalPolynomialDB {
    params: PolyClassParams,
    entries: Vec<IntPolynomial>,
}

impl MinimalPolynomialDB {
    pub fn params(&self) -> PolyClassParams {
        self.params
    }

    pub fn entries(&self) -> &[IntPolynomial] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Ascending degree, then lexicographic on (a_d, ..., a_0).
pub fn canonical_cmp(a: &IntPolynomial, b: &IntPolynomial) -> Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for k in (0..=da).rev() {
            let c = a.coeff(k).cmp(&b.coeff(k));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

/// Primitive-part irreducibility over the rationals.
///
/// Degree 1 is always irreducible. Degrees 2 and 3 reduce to a square
/// discriminant / rational root check. Degrees 4 and 5 search for a
/// quadratic factor by root-subset reconstruction: candidate factors are
/// read off from refined root enclosures (real pairs directly, conjugate
/// pairs through the real roots of the root-sum resultant), scaled by
/// divisors of the leading coefficient, and certified by exact division.
pub fn is_irreducible(p: &IntPolynomial) -> Result<bool> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(d) => d,
    };
    if !p.is_primitive() {
        return Err(Error::NotPrimitive {
            content: p.content().to_string(),
        });
    }
    if d == 1 {
        return Ok(true);
    }
    if p.coeff(0).is_zero() {
        return Ok(false); // divisible by t
    }
    if !p.is_squarefree() {
        return Ok(false);
    }
    if d == 2 {
        let disc = p.discriminant()?;
        if disc.is_negative() {
            return Ok(true);
        }
        let m = disc.magnitude();
        let r = crate::rat::isqrt_floor(m);
        return Ok(&r * &r != *m);
    }
    if has_rational_root(p) {
        return Ok(false);
    }
    if d == 3 {
        return Ok(true);
    }
    Ok(!has_quadratic_factor(p))
}

fn has_rational_root(p: &IntPolynomial) -> bool {
    // roots r/s with r | a_0, s | a_d, s > 0
    let a0 = p.coeff(0);
    let ad = p.leading_coeff().unwrap().clone();
    if a0.is_zero() {
        return true;
    }
    let (Some(a0u), Some(adu)) = (a0.abs().to_u64(), ad.abs().to_u64()) else {
        // desk-scale heights always convert; fall back to "no root" is not
        // sound, so scan via isolation instead
        return isolate_real_roots(p)
            .map(|roots| roots.iter().any(|r| r.is_exact()))
            .unwrap_or(false);
    };
    let nums = divisors(a0u);
    let dens = divisors(adu);
    for s in &dens {
        for r in &nums {
            if crate::rat::gcd_i64(*r as i64, *s as i64) != 1 {
                continue;
            }
            let num = BigInt::from(*r);
            let den = BigInt::from(*s);
            if p.sign_at(&num, &den) == 0 || p.sign_at(&(-&num), &den) == 0 {
                return true;
            }
        }
    }
    false
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// Quadratic-factor search for squarefree degree 4/5 polynomials with no
/// rational roots and nonzero constant term.
fn has_quadratic_factor(p: &IntPolynomial) -> bool {
    let ad = p
        .leading_coeff()
        .unwrap()
        .abs()
        .to_u64()
        .expect("desk-scale leading coefficient");
    let a0 = p.coeff(0).abs().to_u64().expect("desk-scale constant term");
    let leads = divisors(ad);
    let b_max = *leads.last().unwrap() as i64;
    // refine so that b*interval traps at most a couple of integers
    let width = rat(1, 16 * b_max.max(1));

    let mut candidates: Vec<IntPolynomial> = Vec::new();

    // real root pairs
    let roots = isolate_real_roots(p).expect("nonzero polynomial");
    let fine: Vec<_> = roots.iter().map(|r| r.refine(&width).interval()).collect();
    for i in 0..fine.len() {
        for j in i + 1..fine.len() {
            let s = fine[i].add(&fine[j]);
            let prod = fine[i].mul(&fine[j]);
            for &b in &leads {
                let b = b as i64;
                for m1 in integers_in(&s.scale(&rat(b, 1))) {
                    for m0 in integers_in(&prod.scale(&rat(b, 1))) {
                        candidates.push(IntPolynomial::new(vec![
                            m0,
                            -m1.clone(),
                            BigInt::from(b),
                        ]));
                    }
                }
            }
        }
    }

    // conjugate pairs: their sums are real roots of Res_t(P(t), P(u - t))
    let real_count = roots.len();
    let d = p.degree().unwrap();
    if d - real_count >= 2 {
        let rs = root_sum_resultant(p);
        if let Ok(sum_roots) = isolate_real_roots(&rs) {
            let divs0 = divisors(a0);
            for enc in &sum_roots {
                let s = enc.refine(&width).interval();
                for &b in &leads {
                    let b = b as i64;
                    for m1 in integers_in(&s.scale(&rat(b, 1))) {
                        for &d0 in &divs0 {
                            for sign in [1i64, -1] {
                                let m0 = BigInt::from(sign * d0 as i64);
                                candidates.push(IntPolynomial::new(vec![
                                    m0,
                                    -m1.clone(),
                                    BigInt::from(b),
                                ]));
                            }
                        }
                    }
                }
            }
        }
    }

    candidates.sort_by(canonical_cmp);
    candidates.dedup();
    candidates
        .iter()
        .any(|f| f.degree() == Some(2) && p.divisible_by(f))
}

fn integers_in(iv: &crate::rat::RatInterval) -> Vec<BigInt> {
    let lo = iv.lo.ceil().to_integer();
    let hi = iv.hi.floor().to_integer();
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        out.push(k.clone());
        k += BigInt::one();
    }
    out
}

/// Res_t(P(t), P(u - t)) as a polynomial in u, by evaluation-interpolation.
/// Its real roots include every sum of two roots of P, in particular
/// z + conj(z) for each conjugate pair.
fn root_sum_resultant(p: &IntPolynomial) -> IntPolynomial {
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
            let reflected = p.compose_reflect(&u);
            let val = p.resultant(&reflected).expect("nonzero inputs");
            (u, val)
        })
        .collect();
    interpolate_integer(&pts)
}

/// Lagrange interpolation through integer points; the result must have
/// integer coefficients (asserted).
pub(crate) fn interpolate_integer(pts: &[(BigInt, BigInt)]) -> IntPolynomial {
    let n = pts.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // basis_i = prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            // multiply basis by (x - xj)
            for k in (0..=deg).rev() {
                let v = basis[k].clone();
                basis[k + 1] += &v;
                basis[k] = -v * BigRational::from(xj.clone());
            }
            deg += 1;
            denom *= BigRational::from(xi - xj);
        }
        let scale = BigRational::from(yi.clone()) / denom;
        for k in 0..=deg {
            let delta = &basis[k] * &scale;
            acc[k] += delta;
        }
    }
    let coeffs: Vec<BigInt> = acc
        .iter()
        .map(|c| {
            assert!(c.denom().is_one(), "interpolation must be integral");
            c.numer().clone()
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// The shards for the class (n, Q): one per (degree, leading coefficient),
/// ordered so their concatenation is the canonical order.
pub fn shards(params: PolyClassParams) -> Vec<EnumerationShard> {
    let mut out = Vec::new();
    for degree in 1..=params.max_degree {
        for leading in 1..=params.max_height {
            out.push(EnumerationShard { degree, leading });
        }
    }
    out
}

/// Streams the minimal polynomials of one shard in canonical order.
pub fn shard_minimal_polys(
    shard: EnumerationShard,
    params: PolyClassParams,
) -> impl Iterator<Item = IntPolynomial> {
    let q = params.max_height;
    let d = shard.degree;
    // odometer over a_{d-1} .. a_0, each in [-Q, Q], lexicographic
    let positions = d;
    let mut odo = vec![-q; positions];
    let mut done = positions == 0;
    std::iter::from_fn(move || {
        loop {
            if done {
                return None;
            }
            let mut coeffs = vec![0i64; d + 1];
            coeffs[d] = shard.leading;
            for (k, v) in odo.iter().enumerate() {
                // odo[0] is a_{d-1}, odo[last] is a_0
                coeffs[d - 1 - k] = *v;
            }
            // advance odometer
            let mut idx = positions;
            loop {
                if idx == 0 {
                    done = true;
                    break;
                }
                idx -= 1;
                if odo[idx] < q {
                    odo[idx] += 1;
                    for v in odo.iter_mut().skip(idx + 1) {
                        *v = -q;
                    }
                    break;
                }
            }
            let poly = IntPolynomial::from_i64(&coeffs);
            if poly.is_primitive() && is_irreducible(&poly).unwrap_or(false) {
                return Some(poly);
            }
        }
    })
}

/// Total coefficient candidates scanned before filtering:
/// sum over d of Q * (2Q+1)^d.
pub fn candidates_scanned(params: PolyClassParams) -> u128 {
    let q = params.max_height as u128;
    let mut total = 0u128;
    for d in 1..=params.max_degree {
        total += q * (2 * q + 1).pow(d as u32);
    }
    total
}

/// Enumerates every minimal polynomial with deg <= n and H <= Q, in
/// canonical order. Shards run in parallel; output is worker-count
/// independent.
pub fn enumerate_minimal_polynomials(params: PolyClassParams) -> MinimalPolynomialDB {
    let shard_list = shards(params);
    let chunks: Vec<Vec<IntPolynomial>> = shard_list
        .par_iter()
        .map(|&s| shard_minimal_polys(s, params).collect())
        .collect();
    let mut entries = Vec::new();
    for c in chunks {
        entries.extend(c);
    }
    debug_assert!(entries.windows(2).all(|w| canonical_cmp(&w[0], &w[1]) == Ordering::Less));
    MinimalPolynomialDB { params, entries }
}

/// Order-insensitive merge used by the shard-independence property:
/// sort + dedupe yields the canonical db regardless of input order.
pub fn merge_shard_outputs(
    params: PolyClassParams,
    chunks: Vec<Vec<IntPolynomial>>,
) -> MinimalPolynomialDB {
    let mut entries: Vec<IntPolynomial> = chunks.into_iter().flatten().collect();
    entries.sort_by(canonical_cmp);
    entries.dedup();
    MinimalPolynomialDB { params, entries }
}

const CACHE_VERSION: u32 = 1;

/// Writes the db in the versioned text format:
/// `MPDB 1 n=<n> Q=<Q> count=<N>` then one `<degree> <a0> ... <adeg>` line
/// per polynomial.
pub fn save_db(db: &MinimalPolynomialDB, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = BufWriter::new(file);
    writeln!(
        w,
        "MPDB {} n={} Q={} count={}",
        CACHE_VERSION,
        db.params.max_degree,
        db.params.max_height,
        db.entries.len()
    )?;
    for p in &db.entries {
        let d = p.degree().unwrap();
        write!(w, "{}", d)?;
        for c in p.coeffs() {
            write!(w, " {}", c)?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

/// Loads and validates a cache file: header check, per-line shape check,
/// and a deterministic 1% irreducibility re-check.
pub fn load_db(path: &Path) -> Result<MinimalPolynomialDB> {
    let file = std::fs::File::open(path)?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::CacheFormat("empty file".into()))??;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 5 || parts[0] != "MPDB" {
        return Err(Error::CacheFormat(format!("bad header: {header:?}")));
    }
    if parts[1] != CACHE_VERSION.to_string() {
        return Err(Error::CacheVersion {
            expected: CACHE_VERSION,
            found: parts[1].to_string(),
        });
    }
    let parse_kv = |s: &str, key: &str| -> Result<i64> {
        s.strip_prefix(key)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::CacheFormat(format!("bad header field {s:?}")))
    };
    let n = parse_kv(parts[2], "n=")?;
    let q = parse_kv(parts[3], "Q=")?;
    let count = parse_kv(parts[4], "count=")? as usize;
    let params = PolyClassParams::new(n as usize, q)?;
    let mut entries = Vec::with_capacity(count);
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let d: usize = it
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::CacheFormat(format!("bad line: {line:?}")))?;
        let coeffs: Vec<BigInt> = it
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::CacheFormat(format!("bad coefficient in {line:?}")))
            })
            .collect::<Result<_>>()?;
        if coeffs.len() != d + 1 {
            return Err(Error::CacheFormat(format!(
                "degree {d} with {} coefficients: {line:?}",
                coeffs.len()
            )));
        }
        let p = IntPolynomial::new(coeffs);
        if p.degree() != Some(d) {
            return Err(Error::CacheFormat(format!("trailing zero coefficient: {line:?}")));
        }
        entries.push(p);
    }
    if entries.len() != count {
        return Err(Error::CacheFormat(format!(
            "header says count={count}, file has {}",
            entries.len()
        )));
    }
    // deterministic 1% sample re-check
    use rand::{Rng, SeedableRng};
    let seed = (n as u64) << 32 | (q as u64) ^ (count as u64).rotate_left(17);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let sample = (entries.len() / 100).max(1).min(entries.len());
    for _ in 0..sample {
        let idx = rng.gen_range(0..entries.len());
        let p = &entries[idx];
        let ok = p.is_primitive()
            && p.leading_coeff().map_or(false, |c| c.is_positive())
            && p.degree().map_or(false, |d| d >= 1 && d <= params.max_degree)
            && p.height().map_or(false, |h| h <= BigInt::from(params.max_height))
            && is_irreducible(p).unwrap_or(false);
        if !ok {
            return Err(Error::CacheValidation(format!(
                "entry {idx} failed minimality re-check: {p}"
            )));
        }
    }
    Ok(MinimalPolynomialDB { params, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p(&[-2, 0, 1])).unwrap()); // disc 8 not square
        assert!(!is_irreducible(&p(&[1, 5, 6])).unwrap()); // (2t+1)(3t+1)
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])).unwrap()); // t^4 + 1
        assert!(is_irreducible(&p(&[-1, 1])).unwrap());
        assert!(!is_irreducible(&p(&[0, 0, 1])).unwrap()); // t^2
        assert!(is_irreducible(&p(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1])).unwrap()); // (t-1)(t+1)
        assert!(is_irreducible(&p(&[-1, -1, 0, 0, 0, 1])).unwrap()); // t^5 - t - 1
        // (t^2+1)(t^2+t+1) has no real roots and no rational roots
        let q = p(&[1, 0, 1]).multiply(&p(&[1, 1, 1]));
        assert!(!is_irreducible(&q).unwrap());
        // (t^2+1)(t^3-t-1): quadratic factor with complex roots in a quintic
        let q = p(&[1, 0, 1]).multiply(&p(&[-1, -1, 0, 0, 1]));
        assert!(!is_irreducible(&q).unwrap());
        // (t^2-2)(t^2-3): two real pairs
        let q = p(&[-2, 0, 1]).multiply(&p(&[-3, 0, 1]));
        assert!(!is_irreducible(&q).unwrap());
        // non-primitive input is a domain error
        assert!(is_irreducible(&p(&[2, 0, 2])).is_err());
    }

    #[test]
    fn mignotte_brute_force_agrees_on_quartics() {
        // independent oracle: trial division by all integer quadratics with
        // |coeff| <= 3 certifies t^4 + 1 irreducible (Mignotte bound)
        let q = p(&[1, 0, 0, 0, 1]);
        let mut found = false;
        for b2 in 1..=3i64 {
            for b1 in -3..=3i64 {
                for b0 in -3..=3i64 {
                    let f = p(&[b0, b1, b2]);
                    if f.degree() == Some(2) && q.divisible_by(&f) {
                        found = true;
                    }
                }
            }
        }
        assert!(!found);
        assert!(is_irreducible(&q).unwrap());
    }

    #[test]
    fn enumerate_hand_counts() {
        // (n=1, Q=1) -> {t, t-1, t+1}
        let db = enumerate_minimal_polynomials(PolyClassParams::new(1, 1).unwrap());
        assert_eq!(db.len(), 3);
        // (n=2, Q=1) -> 8
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 1).unwrap());
        assert_eq!(db.len(), 8);
        let expect: Vec<IntPolynomial> = vec![
            p(&[0, 1]),
            p(&[-1, 1]),
            p(&[1, 1]),
            p(&[-1, -1, 1]),
            p(&[1, -1, 1]),
            p(&[-1, 1, 1]),
            p(&[1, 1, 1]),
            p(&[1, 0, 1]),
        ]
        .into_iter()
        .collect();
        let mut expect = expect;
        expect.sort_by(canonical_cmp);
        assert_eq!(db.entries(), &expect[..]);
        // (n=1, Q=2) -> 7: t, t+-1, t+-2, 2t+-1
        let db = enumerate_minimal_polynomials(PolyClassParams::new(1, 2).unwrap());
        assert_eq!(db.len(), 7);
    }

    #[test]
    fn scanned_count_formula() {
        let params = PolyClassParams::new(2, 3).unwrap();
        assert_eq!(candidates_scanned(params), 3 * 7 + 3 * 49);
    }

    #[test]
    fn monotone_in_n_and_q() {
        let mut last = 0;
        for q in 1..=6 {
            let db = enumerate_minimal_polynomials(PolyClassParams::new(2, q).unwrap());
            assert!(db.len() >= last);
            last = db.len();
        }
        let n2 = enumerate_minimal_polynomials(PolyClassParams::new(2, 4).unwrap()).len();
        let n3 = enumerate_minimal_polynomials(PolyClassParams::new(3, 4).unwrap()).len();
        assert!(n3 >= n2);
    }

    #[test]
    fn no_duplicate_roots_across_entries() {
        // pairwise resultants of sampled entry pairs are nonzero
        use rand::{Rng, SeedableRng};
        let db = enumerate_minimal_polynomials(PolyClassParams::new(2, 6).unwrap());
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..100 {
            let i = rng.gen_range(0..db.len());
            let j = rng.gen_range(0..db.len());
            if i == j {
                continue;
            }
            let r = db.entries()[i].resultant(&db.entries()[j]).unwrap();
            assert!(!r.is_zero(), "{} and {} share a root", db.entries()[i], db.entries()[j]);
        }
    }

    #[test]
    fn shard_merge_is_order_independent() {
        let params = PolyClassParams::new(2, 3).unwrap();
        let canonical = enumerate_minimal_polynomials(params);
        let mut chunks: Vec<Vec<IntPolynomial>> = shards(params)
            .into_iter()
            .map(|s| shard_minimal_polys(s, params).collect())
            .collect();
        chunks.reverse();
        chunks.rotate_left(2);
        let merged = merge_shard_outputs(params, chunks);
        assert_eq!(merged.entries(), canonical.entries());
    }

    #[test]
    fn naive_crosscheck_small() {
        // independent enumerator: rational-root + square-discriminant logic
        for q in 1..=10i64 {
            let mut naive = 0usize;
            for a1 in 1..=q {
                for a0 in -q..=q {
                    if crate::rat::gcd_i64(a1, a0) == 1 {
                        naive += 1;
                    }
                }
            }
            for a2 in 1..=q {
                for a1 in -q..=q {
                    for a0 in -q..=q {
                        let g = crate::rat::gcd_i64(crate::rat::gcd_i64(a2, a1), a0);
                        if g != 1 {
                            continue;
                        }
                        let disc = a1 * a1 - 4 * a2 * a0;
                        let square = disc >= 0 && {
                            let r = (disc as f64).sqrt().round() as i64;
                            (r - 1..=r + 1).any(|s| s >= 0 && s * s == disc)
                        };
                        if !square {
                            naive += 1;
                        }
                    }
                }
            }
            let db = enumerate_minimal_polynomials(PolyClassParams::new(2, q).unwrap());
            assert_eq!(db.len(), naive, "count mismatch at Q={q}");
        }
    }

    #[test]
    fn cache_roundtrip_and_errors() {
        let dir = std::env::temp_dir().join("algpoints-test-cache");
        std::fs::create_dir_all(&dir).unwrap();
        let params = PolyClassParams::new(2, 1).unwrap();
        let db = enumerate_minimal_polynomials(params);
        let path = dir.join("mpdb_n2_Q1.txt");
        save_db(&db, &path).unwrap();
        let loaded = load_db(&path).unwrap();
        assert_eq!(loaded.entries(), db.entries());

        // version mismatch
        let bad = dir.join("bad_version.txt");
        std::fs::write(&bad, "MPDB 99 n=2 Q=1 count=0\n").unwrap();
        assert!(matches!(load_db(&bad), Err(Error::CacheVersion { .. })));

        // truncated file
        let trunc = dir.join("trunc.txt");
        let full = std::fs::read_to_string(&path).unwrap();
        let cut: String = full.lines().take(3).map(|l| format!("{l}\n")).collect();
        std::fs::write(&trunc, cut).unwrap();
        assert!(matches!(load_db(&trunc), Err(Error::CacheFormat(_))));

        // corrupt line
        let corrupt = dir.join("corrupt.txt");
        let mut text = String::from("MPDB 1 n=2 Q=1 count=1\n");
        text.push_str("2 1 x 1\n");
        std::fs::write(&corrupt, text).unwrap();
        assert!(matches!(load_db(&corrupt), Err(Error::CacheFormat(_))));
    }
}
