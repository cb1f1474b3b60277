//! Rule-based verdicts for T_n of small algebras, with the rule that decided.

use tautri::algebra::{nakayama, path_algebra_linear, tensor_product, truncated_polynomial};
use tautri::classify::{classify_silting_discreteness, classify_tn_tau_finiteness, silting_discrete_table};

fn main() -> tautri::Result<()> {
    let a2 = path_algebra_linear(2)?;
    let cases = [
        ("K[x]/(x^2)", truncated_polynomial(2)?, 4),
        ("KA2", a2.clone(), 4),
        ("KA4", path_algebra_linear(4)?, 2),
        ("KA5", path_algebra_linear(5)?, 2),
        ("KA3", path_algebra_linear(3)?, 3),
        ("KA2 ⊗ KA2", tensor_product(&a2, &a2)?, 2),
        ("cyclic Nakayama, 2 simples, cap 4", nakayama(2, true, 4)?, 3),
    ];
    for (name, p, n) in &cases {
        let v = classify_tn_tau_finiteness(p, *n)?;
        let source = v.provenance.as_ref().map(|p| p.result).unwrap_or("none");
        println!("T{n}({name}): {:?} by {:?} ({source})", v.conclusion, v.rule);
        for note in &v.reductions {
            println!("    reduced: {note}");
        }
    }

    println!("\nsilting discreteness of T_n(rad^2-zero linear Nakayama with r simples):");
    for r in 1..=5 {
        let row: Vec<&str> = (1..=5).map(|n| if silting_discrete_table(r, n) { "yes" } else { "no" }).collect();
        println!("  r = {r}: {}", row.join(" "));
    }
    let v = classify_silting_discreteness(&nakayama(3, false, 2)?, 2)?;
    println!("T2 with r = 3: {:?} by {:?}", v.conclusion, v.rule);
    Ok(())
}
