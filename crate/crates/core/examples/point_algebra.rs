// Structures on a left-symmetric algebra (an algebroid over a point).

use lsalgebroid::checks::{check_koszul_vinberg, check_kvn, check_nijenhuis};
use lsalgebroid::document;
use lsalgebroid::tensors::dual_algebroid;
use lsalgebroid::Result;

pub fn run() -> Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/point_algebra.toml");
    let doc = document::load(path)?;
    let a = &doc.algebroid;
    let h = doc.contravariant("H")?;
    let n = doc.endomorphism("N")?;
    println!("rank {} over a {}-dimensional chart", a.rank(), doc.chart().dim());

    let kv = check_koszul_vinberg(a, h)?;
    println!("H KV:         {}", kv.holds());
    println!("N Nijenhuis:  {}", check_nijenhuis(a, n)?.holds());
    println!("(H, N) KVN:   {}", check_kvn(a, h, n)?.holds());

    if kv.holds() {
        let dual = dual_algebroid(a, h)?;
        println!("dual algebra axioms hold: {}", dual.check_axioms().holds());
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let prod = dual.multiply(&dual.basis(i), &dual.basis(j))?;
                let coeffs: Vec<String> = prod.0.iter().map(|c| doc.chart().print(c)).collect();
                println!("  ε{i}·ε{j} = {coeffs:?}");
            }
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
