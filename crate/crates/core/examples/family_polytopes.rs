//! Builds one member of every supported family from the bundled inputs.

use polyfactor::cli::sample;
use polyfactor::factor::factorize;
use polyfactor::families::{build, Limits};

fn main() -> anyhow::Result<()> {
    let l = Limits::default();
    let inputs = [
        ("order", "chain2.poset"),
        ("chain", "antichain2.poset"),
        ("stable", "path4.graph"),
        ("clique", "path4.graph"),
        ("matching", "cycle4.graph"),
        ("edgepoly", "cycle4.graph"),
        ("antiblocking", "complex.complex"),
        ("purefaces", "pure.complex"),
        ("matroid-bases", "u23.matroid"),
        ("matroid-indep", "u23.matroid"),
        ("flow", "double_diamond.flow"),
        ("group", "s3.group"),
    ];
    for (family, file) in inputs {
        let p = build(family, sample(file), &l)?;
        let k = factorize(&p)?.k();
        println!(
            "{family:>14} of {file:<20} {:>3} vertices in R^{:<2} dim {}  k = {k}",
            p.num_vertices(),
            p.ambient_dim(),
            p.dimension()
        );
    }
    Ok(())
}
