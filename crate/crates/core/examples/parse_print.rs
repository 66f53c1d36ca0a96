// Parsing and printing expressions over a chart.

use lsalgebroid::{Chart, Error, Result};

pub fn run() -> Result<()> {
    let chart = Chart::new(["x", "y", "z"])?;

    for text in ["(x^2+y^2)/2", "x*y*z - 3/4", "(x+1)^3", "2*(x^2+y^2)/(x^2-y^2)^2"] {
        let f = chart.parse(text)?;
        let printed = chart.print(&f);
        // Printed form is canonical: reparsing gives the same function and text.
        assert_eq!(chart.parse(&printed)?, f);
        assert_eq!(chart.print(&chart.parse(&printed)?), printed);
        println!("{text:>26}  ->  {printed}");
    }

    for bad in ["x +", "w + 1", "x^-1", "1/0"] {
        match chart.parse(bad) {
            Err(e) => println!("{bad:>26}  !!  {e}"),
            Ok(f) => return Err(Error::Validation(format!("`{bad}` parsed as {}", chart.print(&f)))),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
