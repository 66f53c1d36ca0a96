// A KVN pair and the hierarchy of compatible KV tensors it generates.

use lsalgebroid::checks::{check_kvn, hierarchy, HierarchyBase};
use lsalgebroid::document;
use lsalgebroid::Result;

pub fn run() -> Result<()> {
    let doc = document::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/r2_kvn.toml"))?;
    let a = &doc.algebroid;
    let h = doc.contravariant("H")?;
    let n = doc.endomorphism("N")?;

    let kvn = check_kvn(a, h, n)?;
    println!("(H, N) KVN: {}", kvn.holds());
    assert!(kvn.holds());

    let depth = 3;
    let hier = hierarchy(a, &HierarchyBase::Contravariant(h.clone()), n, depth)?;
    for (k, m) in hier.members.iter().enumerate() {
        println!("H_N^{k} (KV: {}):\n{}", hier.member_certificates[k].holds(), doc.chart().print_matrix(m));
    }
    println!("{} pairs checked, all compatible: {}", hier.pair_count(), hier.holds());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
