// Hessian-Nijenhuis pairs, checked directly and through the squares criterion.

use lsalgebroid::checks::{check_hn, check_hn_via_squares, check_kvn};
use lsalgebroid::document;
use lsalgebroid::Result;

pub fn run() -> Result<()> {
    let doc = document::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/omega.toml"))?;
    let a = &doc.algebroid;
    let h1 = doc.contravariant("H1")?;
    let chart = doc.chart();

    // Inverting a KV tensor gives the matching covariant tensor.
    let b1 = h1.invert()?;
    println!("B1 = H1^-1 =\n{}", chart.print_matrix(b1.matrix()));

    let n = lsalgebroid::BundleMap::new(h1.matrix().clone());
    let hn = check_hn(a, &b1, &n)?;
    println!("(B1, N) HN:             {}", hn.holds());
    println!("(B1, N) HN via squares: {}", check_hn_via_squares(a, &b1, &n)?.holds());
    println!("(H1, N) KVN:            {}", check_kvn(a, h1, &n)?.holds());

    // A symmetric partner that breaks the cocycle conditions.
    let bad = lsalgebroid::SymTensorCo::diagonal(vec![chart.parse("y")?, chart.parse("x")?]);
    let cert = check_hn(a, &bad, &lsalgebroid::BundleMap::identity(2, 2))?;
    println!("(diag(y, x), I) HN:     {}", cert.holds());
    for r in cert.residuals() {
        println!("  {}{:?} = {}", r.label, r.index, chart.print(&r.value));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
