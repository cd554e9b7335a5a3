//! Graph, 2-faces and smallest faces of a small 0/1-polytope.

use polyfactor::polytope::{bitstring, FaceKind, Polytope01};

fn main() -> anyhow::Result<()> {
    // A square pyramid: the apex sees all four base vertices.
    let p = Polytope01::parse("3 5\n000\n100\n010\n110\n001\n")?;
    let name = |i: usize| bitstring(p.vertex(i));

    println!("dimension {}, simple: {}", p.dimension(), p.is_simple());
    for e in p.graph() {
        println!("edge {} - {}", name(e.u), name(e.v));
    }
    for f in p.two_faces()? {
        let kind = match f.kind {
            FaceKind::Triangle => "triangle",
            FaceKind::Parallelogram => "parallelogram",
        };
        let vs: Vec<String> = f.vertices.iter().map(|&i| name(i)).collect();
        println!("{kind}: {}", vs.join(" "));
    }

    // The diagonal of the base spans the whole base.
    let diag = [p.index_of(&[0, 0, 0]).unwrap(), p.index_of(&[1, 1, 0]).unwrap()];
    let face: Vec<String> = p.smallest_face(&diag).into_iter().map(name).collect();
    println!("smallest face over the base diagonal: {}", face.join(" "));
    Ok(())
}
