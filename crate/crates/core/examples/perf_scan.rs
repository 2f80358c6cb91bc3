use algpoints::counting::*;
use algpoints::geometry::*;
use algpoints::polyint::PolyClassParams;
use algpoints::rat::*;
use std::time::Instant;

fn main() {
    let rect = Rectangle::new(rat_int(1), rat(3, 2), rat(-3, 2), rat_int(-1)).unwrap();
    let eps = DiagonalExclusion::new(rat_int(1)).unwrap();
    // single-threaded pool
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| {
        for q in [20i64, 40, 80, 160] {
            let t = Instant::now();
            let params = PolyClassParams::new(2, q).unwrap();
            let res = count_in_rectangle_streamed(params, &rect, &eps).unwrap();
            println!("n=2 Q={q}: count={} ratio={:.4} in {:?}", res.count, res.normalized_ratio, t.elapsed());
        }
    });
    // n=3 parallel
    for q in [10i64, 20, 40] {
        let t = Instant::now();
        let params = PolyClassParams::new(3, q).unwrap();
        let res = count_in_rectangle_streamed(params, &rect, &eps).unwrap();
        println!("n=3 Q={q}: count={} ratio={:.4} in {:?}", res.count, res.normalized_ratio, t.elapsed());
    }
    // strips
    let curve = RationalCurve::new(vec![rat_int(0), rat_int(-1)], rat_int(1), rat_int(2)).unwrap();
    for lam in [rat(1,4), rat(1,2), rat(7,10)] {
        for q in [20i64, 40, 80, 160] {
            let t = Instant::now();
            let params = PolyClassParams::new(2, q).unwrap();
            let strip = Strip::power_law(curve.clone(), rat_int(1), lam.clone(), q).unwrap();
            let eps_half = DiagonalExclusion::new(rat(1, 2)).unwrap();
            let res = count_in_strip_streamed(params, &strip, &eps_half).unwrap();
            println!("strip lam={} Q={q}: count={} in {:?}", fmt_rational(&lam), res.count, t.elapsed());
        }
    }
    let t = Instant::now();
    for q in 1..=60i64 {
        assert!(empty_interval_check(3, q).unwrap(), "failed at {q}");
    }
    println!("empty interval n=3 all Q<=60 in {:?}", t.elapsed());
}
