//! Factors a 0/1-polytope into its indecomposable Cartesian factors.
//!
//! Run with `cargo run --example factor_polytope [file.vtx]`; without an
//! argument a scrambled product of a triangle and a square is used.

use polyfactor::factor::factorize;
use polyfactor::polytope::{bitstring, catalog, Polytope01};

fn main() -> anyhow::Result<()> {
    let p = match std::env::args().nth(1) {
        Some(path) => Polytope01::parse(&std::fs::read_to_string(path)?)?,
        None => catalog::triangle()
            .product(&catalog::square())
            .permute_coordinates(&[2, 0, 3, 1])
            .xor(&[1, 0, 0, 1]),
    };
    println!("{} vertices in dimension {}", p.num_vertices(), p.ambient_dim());

    let f = factorize(&p)?;
    println!("k = {}", f.k());
    for (block, factor) in f.blocks.iter().zip(&f.factors) {
        let coords: Vec<usize> = block.iter().map(|i| i + 1).collect();
        let verts: Vec<String> = factor.vertices().iter().map(|v| bitstring(v)).collect();
        println!("  coordinates {coords:?}: {}", verts.join(" "));
    }
    for (i, b) in &f.fixed {
        println!("  coordinate {} fixed at {b}", i + 1);
    }
    Ok(())
}
