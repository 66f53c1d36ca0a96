// KVB pairs: a KV tensor with a pseudo-Hessian partner, and the
// complementary condition over the dual algebroid.

use lsalgebroid::checks::{check_complementary, check_kvb};
use lsalgebroid::document;
use lsalgebroid::Result;

pub fn run() -> Result<()> {
    let doc = document::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/r3_kvb.toml"))?;
    let a = &doc.algebroid;
    let h = doc.contravariant("H")?;
    let b = doc.covariant("B")?;

    let kvb = check_kvb(a, h, b)?;
    println!("(H, B) KVB: {}", kvb.holds());
    for (name, m) in kvb.derived() {
        println!("{name} =\n{}", doc.chart().print_matrix(m));
    }

    // For a KV tensor and a 2-cocycle, complementarity is the remaining KVB condition.
    let comp = check_complementary(a, h, b)?;
    println!("B complementary to H: {}", comp.holds());
    assert_eq!(comp.holds(), kvb.holds());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
