use algpoints::classifier::*;
use algpoints::geometry::RationalCurve;
use algpoints::rat::*;

fn main() {
    let curve = RationalCurve::new(vec![rat_int(0), rat_int(-1)], rat_int(1), rat_int(2)).unwrap();
    for (c3, c) in [("1/2", "1/2"), ("1/4", "1/4"), ("1/4", "1"), ("1/8", "1/4")] {
        for q in [20i64, 40, 80, 160] {
            let fam = strip_square_family(&curve, &parse_rational(c3).unwrap(), &rat(7, 10), q, (rat(1,2), rat(1,2)), parse_rational(c).unwrap()).unwrap();
            let (_, outcomes) = special_fraction(&fam).unwrap();
            let s = outcomes.iter().filter(|o| o.verdict == Verdict::Special).count();
            println!("c3={c3} C={c} Q={q}: t_k={} special={} fraction={:.4}", fam.len(), s, s as f64 / fam.len() as f64);
        }
        println!();
    }
}
