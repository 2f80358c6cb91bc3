use algpoints::geometry::Rectangle;
use algpoints::metriclab::*;
use algpoints::rat::*;
use std::time::Instant;

fn main() {
    let rect = Rectangle::new(rat_int(1), rat(3, 2), rat(-3, 2), rat_int(-1)).unwrap();
    for q in [8i64, 16, 32] {
        let spec = BadSetSpec::new(2, q, (rat(1,2), rat(1,2)), rat_int(1), rat(1,4), rect.clone()).unwrap();
        let t = Instant::now();
        let e = estimate_bad_measure(&spec, &Sampler::Exact).unwrap();
        let quarter = &e.mu2 / rat_int(4);
        println!("Q={q}: measure in [{:.6}, {:.6}] quarter={:.6} below={:?} boxes={} in {:?}",
            e.lo.numer().to_string().parse::<f64>().unwrap() / e.lo.denom().to_string().parse::<f64>().unwrap_or(1.0),
            e.hi.numer().to_string().parse::<f64>().unwrap() / e.hi.denom().to_string().parse::<f64>().unwrap_or(1.0),
            quarter.numer().to_string().parse::<f64>().unwrap() / quarter.denom().to_string().parse::<f64>().unwrap(),
            e.below_quarter(), e.samples, t.elapsed());
        // cross-validate with grid sampling
        let g = estimate_bad_measure(&spec, &Sampler::Grid(100)).unwrap();
        println!("   grid  estimate={:.6}", g.lo.numer().to_string().parse::<f64>().unwrap() / g.lo.denom().to_string().parse::<f64>().unwrap_or(1.0));
    }
}
