// Deforming an algebroid by a Nijenhuis map and comparing products.

use lsalgebroid::checks::{check_nijenhuis, derive_nijenhuis};
use lsalgebroid::document;
use lsalgebroid::tensors::{deformed_dual_product, h_deform, star_product};
use lsalgebroid::Result;

pub fn run() -> Result<()> {
    let doc = document::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/separable_r2.toml"))?;
    let chart = doc.chart();
    let a = &doc.algebroid;
    let n = doc.endomorphism("N")?;
    println!("N Nijenhuis: {}", check_nijenhuis(a, n)?.holds());

    let deformed = a.deform(n)?;
    println!("deformed algebroid axioms hold: {}", deformed.check_axioms().holds());
    for i in 0..2 {
        for j in 0..2 {
            let p = deformed.multiply(&deformed.basis(i), &deformed.basis(j))?;
            let c: Vec<String> = p.0.iter().map(|f| chart.print(f)).collect();
            println!("  e{i} ·_N e{j} = {c:?}");
        }
    }

    // With H = B^-1 the star product and the deformed dual product agree.
    let h = doc.covariant("B")?.invert()?;
    for i in 0..2 {
        for j in 0..2 {
            let (al, be) = (a.cobasis(i), a.cobasis(j));
            let star = star_product(a, &h, n, &al, &be)?;
            assert_eq!(star, deformed_dual_product(a, &h, n, &al, &be)?);
        }
    }
    println!("star product = deformed dual product on every coframe pair");

    let hn = h_deform(&h, n, 1)?;
    let recovered = derive_nijenhuis(&hn, &h)?;
    println!("N recovered from (H_N, H): {}", &recovered == n);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
