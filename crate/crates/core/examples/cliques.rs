//! Complete and almost complete graphs.

use hats::catalogue::{
    almost_clique_classify, clique_classify, reciprocal_sum, sylvester_max_hatness,
};

fn main() -> hats::Result<()> {
    for hats in [
        vec![2, 2],
        vec![2, 3, 6],
        vec![3, 3, 3],
        vec![3, 3, 4],
        vec![2, 4, 5, 20],
        vec![2, 3, 7, 43],
    ] {
        let v = clique_classify(&hats)?;
        println!(
            "K{:?}: sum {} -> {} ({})",
            hats,
            reciprocal_sum(&hats),
            v.status,
            v.reason
        );
    }
    for n in 1..=6 {
        println!(
            "largest hatness in a winning clique of {n}: {}",
            sylvester_max_hatness(n)?
        );
    }
    // the missing edge joins the last two vertices
    for hats in [vec![3, 6, 3, 4], vec![6, 6, 2, 3], vec![2, 4, 4, 4]] {
        let v = almost_clique_classify(&hats)?;
        println!("almost K{:?}: {} ({})", hats, v.status, v.reason);
    }
    Ok(())
}
