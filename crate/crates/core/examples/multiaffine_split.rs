//! Splits multi-affine polynomials into factors on disjoint variables.

use polyfactor::multiaffine::{factor_multiaffine, splits_over_some_bipartition, MultiAffinePoly};

fn main() -> anyhow::Result<()> {
    let inputs = [
        // (1 + x1)(2 - x2 + 3 x3) x4
        "4 6\n2 0001\n-1 0101\n3 0011\n2 1001\n-1 1101\n3 1011\n",
        // 1 + x1 + x2 does not split
        "2 3\n1 00\n1 10\n1 01\n",
        // square Newton polygon, but the coefficients do not factor
        "2 4\n1 00\n1 10\n1 01\n2 11\n",
    ];
    for text in inputs {
        let f = MultiAffinePoly::parse(text)?;
        let out = factor_multiaffine(&f)?;
        println!("f = {f}");
        let content: Vec<String> = (0..out.n).filter(|&i| out.content[i] == 1).map(|i| format!("x{}", i + 1)).collect();
        println!("  unit {}, monomial content [{}]", out.unit.to_pq(), content.join(" "));
        for g in &out.factors {
            println!("  factor {g}");
        }
        if out.coarsened {
            println!("  the Newton polytope splits further than the coefficients allow");
        }
        println!("  any bipartition split: {}", splits_over_some_bipartition(&f));
    }
    Ok(())
}
