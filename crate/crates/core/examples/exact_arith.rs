// Exact rational-function arithmetic: no floating point anywhere.
//
// ```text
// cargo run --example exact_arith
// ```

use lsalgebroid::arith::ratio;
use lsalgebroid::{Chart, Matrix, Result};

pub fn run() -> Result<()> {
    let chart = Chart::new(["x", "y"])?;
    let f = chart.parse("(x^2 - y^2)/(x - y)")?;
    let g = chart.parse("1/x + 1/y")?;

    // Common factors cancel, so `f` prints as a polynomial.
    println!("f       = {}", chart.print(&f));
    println!("g       = {}", chart.print(&g));
    println!("f * g   = {}", chart.print(&(&f * &g)));
    println!("f / g   = {}", chart.print(&f.try_div(&g)?));
    println!("d/dx g  = {}", chart.print(&chart.partial(&g, "x")?));
    assert_eq!(chart.print(&f), "x + y");

    let at = [ratio(1, 3), ratio(-2, 5)];
    println!("g(1/3, -2/5) = {}", g.eval(&at).expect("denominator is nonzero there"));

    // Fraction-free elimination keeps every entry exact.
    let m = Matrix::from_rows(
        2,
        vec![
            vec![chart.parse("x")?, chart.parse("y")?],
            vec![chart.parse("y")?, chart.parse("x")?],
        ],
    )?;
    println!("det     = {}", chart.print(&m.determinant()));
    let inv = m.inverse()?;
    println!("inverse =\n{}", chart.print_matrix(&inv));
    assert!(m.mul(&inv) == Matrix::identity(2, 2));
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
