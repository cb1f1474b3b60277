//! Separated quivers and their diagram types.

use tautri::algebra::{path_algebra_linear, tensor_product};
use tautri::quiver::{component_types, separated_quiver};

fn main() -> tautri::Result<()> {
    let a2 = path_algebra_linear(2)?;
    let cube = tensor_product(&tensor_product(&a2, &a2)?, &a2)?;
    let sep = separated_quiver(&cube.quiver);
    println!(
        "cube: {} vertices, separated quiver {} vertices and {} arrows",
        cube.vertex_count(),
        sep.quiver.vertex_count(),
        sep.quiver.arrows().len()
    );
    for (vertices, ty) in component_types(&sep.quiver) {
        let names: Vec<&str> = vertices.iter().map(|&v| sep.quiver.vertex_id(v)).collect();
        println!("  {ty}: {}", names.join(" "));
    }
    println!("\n{}", sep.quiver.to_dot("cube_separated"));
    Ok(())
}
