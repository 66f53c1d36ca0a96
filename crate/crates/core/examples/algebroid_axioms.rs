// Building algebroids and checking the left-symmetric axioms.

use lsalgebroid::{Algebroid, Chart, Result};

pub fn run() -> Result<()> {
    let chart = Chart::new(["x"])?;
    let flat = Algebroid::flat_tangent(chart.clone());
    println!("flat tangent over (x): axioms hold = {}", flat.check_axioms().holds());

    // Rank one over the line, e·e = e, anchored at x ∂x.
    let one = chart.constant(1);
    let line = Algebroid::new(chart.clone(), 1, vec![vec![vec![one]]], vec![vec![chart.parse("x")?]])?;
    let cert = line.check_axioms();
    println!("e·e = e, a(e) = x∂x:   axioms hold = {}", cert.holds());
    assert!(cert.holds());

    // A product that is not left-symmetric: e0·e1 = e0 and nothing else.
    let point = Chart::point();
    let z = point.zero();
    let o = point.constant(1);
    let gamma = vec![
        vec![vec![z.clone(), z.clone()], vec![o.clone(), z.clone()]],
        vec![vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]],
    ];
    let bad = Algebroid::point_algebra(gamma)?;
    let cert = bad.check_axioms();
    println!("e0·e1 = e0:            axioms hold = {}", cert.holds());
    for r in cert.residuals() {
        println!("  {}{:?} = {}", r.label, r.index, point.print(&r.value));
    }
    assert!(!cert.holds());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
