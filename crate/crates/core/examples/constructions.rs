//! Build algebras from bound quivers and the standard constructions.

use tautri::algebra::{format, nakayama, path_algebra_linear, radical_square_truncation, tensor_product, triangular_matrix};
use tautri::field::FieldSpec;
use tautri::quiver::Quiver;
use tautri::algebra::BoundPresentation;

fn main() -> tautri::Result<()> {
    let a2 = path_algebra_linear(2)?;
    let square = tensor_product(&a2, &a2)?;
    let t3 = triangular_matrix(&path_algebra_linear(3)?, 3)?;
    let cyclic = nakayama(2, true, 3)?;
    let trunc = radical_square_truncation(&cyclic);

    // a bound quiver with one loop and one arrow, radical cube zero
    let q = Quiver::new(
        ["1".to_string(), "2".to_string()],
        [("x", "1", "1"), ("a", "1", "2")].map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )?;
    let custom = BoundPresentation::new(q, Vec::new(), 3, FieldSpec::default())?;

    for (name, p) in [
        ("KA2 ⊗ KA2", &square),
        ("T3(KA3)", &t3),
        ("cyclic Nakayama, 2 simples, cap 3", &cyclic),
        ("its radical square truncation", &trunc),
        ("loop then arrow", &custom),
    ] {
        println!("{name}: {} vertices, dimension {}", p.vertex_count(), p.dimension()?);
    }
    println!("\nalgebra file for KA2 ⊗ KA2:\n{}", format::to_text(&square));
    Ok(())
}
