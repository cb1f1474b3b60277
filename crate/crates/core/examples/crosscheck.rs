//! Check classifier verdicts against bounded exploration on a small corpus.

use std::path::Path;

use tautri::classify::{crosscheck, parse_corpus, CrosscheckOptions};
use tautri::tautilt::ExploreOptions;

fn main() -> tautri::Result<()> {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let corpus = parse_corpus(
        "kx2.alg 3 finite\na3.alg 2 finite\nlin3_rad2.alg 3 finite\nce.alg 2 unknown\nkronecker.alg 2 infinite\n",
        &base,
    )?;
    let opts = CrosscheckOptions {
        explore: ExploreOptions {
            seconds: 300.0,
            ..ExploreOptions::default()
        },
        ..CrosscheckOptions::default()
    };
    let report = crosscheck(&corpus, &opts)?;
    for item in &report.items {
        println!(
            "{}: {:?} by {:?}, explorer {:?} with {:?} pairs, consistent {}",
            item.item, item.conclusion, item.rule, item.explorer_status, item.count, item.consistent
        );
    }
    println!("overall consistent: {}", report.consistent);
    Ok(())
}
