// Koszul-Vinberg tensors, their bracket, and compatibility.

use lsalgebroid::checks::{check_compatible, check_koszul_vinberg};
use lsalgebroid::tensors::kv_bracket;
use lsalgebroid::{Algebroid, Chart, Matrix, Result, SymTensorContra};

fn contra(chart: &Chart, rows: [[&str; 2]; 2]) -> Result<SymTensorContra> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| chart.parse(e)).collect())
        .collect::<Result<_>>()?;
    SymTensorContra::new(Matrix::from_rows(chart.dim(), rows)?)
}

pub fn run() -> Result<()> {
    let chart = Chart::new(["x", "y"])?;
    let a = Algebroid::flat_tangent(chart.clone());

    let h = SymTensorContra::identity(2, 2);
    let h1 = contra(&chart, [["(x^2+y^2)/2", "x*y"], ["x*y", "(x^2+y^2)/2"]])?;
    let diag = contra(&chart, [["x", "0"], ["0", "y"]])?;
    let not_kv = contra(&chart, [["y", "0"], ["0", "1"]])?;

    for (name, t) in [("I", &h), ("H1", &h1), ("diag(x, y)", &diag), ("[[y,0],[0,1]]", &not_kv)] {
        println!("{name:>14} KV: {}", check_koszul_vinberg(&a, t)?.holds());
    }

    println!("I and H1 compatible: {}", check_compatible(&a, &h, &h1)?.holds());
    let cert = check_compatible(&a, &diag, &h1)?;
    println!("diag(x, y) and H1 compatible: {}", cert.holds());
    for r in cert.residuals() {
        println!("  {}{:?} = {}", r.label, r.index, chart.print(&r.value));
    }

    let t = kv_bracket(&a, &not_kv, &not_kv)?;
    for (idx, v) in t.nonzero() {
        println!("  [[H, H]]{idx:?} = {}", chart.print(v));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
