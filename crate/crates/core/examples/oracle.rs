//! Compare the explorer with exhaustive enumeration over F2 on small algebras.

use tautri::algebra::{nakayama, path_algebra_linear, truncated_polynomial};
use tautri::repmod::oracle::brute_force_stau_count;
use tautri::tautilt::{explore_presentation, ExploreOptions};

fn main() -> tautri::Result<()> {
    for (name, p) in [
        ("KA3", path_algebra_linear(3)?),
        ("K[x]/(x^3)", truncated_polynomial(3)?),
        ("cyclic Nakayama, 3 simples, rad^2 = 0", nakayama(3, true, 2)?),
    ] {
        let (report, _) = explore_presentation(&p, &ExploreOptions::default())?;
        match brute_force_stau_count(&p) {
            Ok(count) => println!("{name}: explorer {}, oracle {count}", report.count),
            Err(e) => println!("{name}: explorer {}, oracle declined: {e}", report.count),
        }
    }
    Ok(())
}
