//! Builds the cycle equations of the edge-deformation space and checks that
//! their solutions in `[0,1]^E` form a cube with one axis per edge class.

use polyfactor::factor::{cycle_system, edge_classes, verify_deformation_cube};
use polyfactor::polytope::catalog;

fn main() -> anyhow::Result<()> {
    let named = [
        ("triangle", catalog::triangle()),
        ("square", catalog::square()),
        ("3-cube", catalog::cube(3)),
        ("Birkhoff B3", catalog::birkhoff(3)),
        ("cross-like d=3", catalog::cross_like(3)),
    ];
    for (name, p) in named {
        let classes = edge_classes(&p)?;
        let cycles = cycle_system(&p)?;
        let report = verify_deformation_cube(&p)?;
        println!(
            "{name:>15}: {} edges, {} cycle rows of rank {}, k = {}, kernel dim = {}, cube = {}",
            report.num_edges,
            cycles.rows.len(),
            cycles.rank(),
            classes.k(),
            report.kernel_dim,
            report.cube_verified()
        );
    }
    Ok(())
}
