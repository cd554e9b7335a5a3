//! Compares the combinatorial connectivity criteria with the geometric
//! factor count on random family members.

use polyfactor::factor::factorize;
use polyfactor::families::Limits;
use polyfactor::random;
use rand::SeedableRng;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let l = Limits::default();

    for _ in 0..5 {
        let p = random::poset(&mut rng);
        let g = p.comparability_graph();
        let k = factorize(&p.order_polytope(&l)?)?.k();
        println!("poset on {} elements: {} comparability components, order polytope k = {k}", p.len(), g.components().len());
    }
    for _ in 0..5 {
        let g = random::graph(&mut rng, 2, 7);
        let k = factorize(&g.stable_set_polytope(&l)?)?.k();
        println!("graph with {} edges: {} components, stable set polytope k = {k}", g.edges().len(), g.components().len());
    }
    for _ in 0..5 {
        let d = random::dag(&mut rng);
        let k = factorize(&d.flow_polytope(&l)?)?.k();
        println!(
            "network on {} nodes: {} separators, {} pieces with a choice, flow polytope k = {k}",
            d.num_nodes(),
            d.separators().len(),
            d.proper_piece_count()
        );
    }
    Ok(())
}
