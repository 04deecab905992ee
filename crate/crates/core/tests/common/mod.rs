#![allow(dead_code)]

use hats::catalogue::{arithmetic_clique_strategy, clique_game, p2, path_2442, triangle_244};
use hats::constructors::{
    attach_leaf, attach_path_zabc, attach_vertex2, attach_vertex2_to_edge, cone, extend, fasten,
    fasten_single, glue_losing, losing_attach_two, losing_pendant, product, remove_leaf, reorder,
    restrict, sew, stitch, substitute, ConeComponent, ConstructedGame,
};
use hats::{Game, Result};

pub fn clique(names: &[&str], hats: &[u32]) -> ConstructedGame {
    let g = clique_game(hats).unwrap();
    let s = arithmetic_clique_strategy(hats).unwrap();
    let cg = ConstructedGame::given(g, s).unwrap();
    let map = (0..names.len())
        .map(|i| (format!("A{}", i + 1), names[i].to_string()))
        .collect();
    hats::constructors::rename(&cg, &map).unwrap()
}

fn c4_o_a(o: &str, a: &str, p: &str, q: &str) -> ConstructedGame {
    attach_path_zabc(&p2(o, q).unwrap(), o, q, (a, p)).unwrap()
}

/// Every winning constructor applied to small seed games.
pub fn winning_constructions() -> Result<Vec<(&'static str, ConstructedGame)>> {
    let k236 = clique(&["K1", "K2", "K3"], &[2, 3, 6]);
    let k333 = clique(&["M1", "M2", "M3"], &[3, 3, 3]);
    let tri = triangle_244("T1", "T2", "T3")?;
    let path = path_2442(&["P1", "P2", "P3", "P4"])?;
    let mut out = vec![
        ("product", product(&p2("A", "B")?, &p2("B", "C")?, "B")?),
        ("product-clique", product(&k333, &p2("M1", "X")?, "M1")?),
        ("substitute", substitute(&p2("A", "S")?, "S", &k236)?),
        (
            "substitute-triangle",
            substitute(&tri, "T1", &p2("U", "V")?)?,
        ),
        ("attach2", attach_vertex2(&path, "P1", "P4", "N")?),
        ("attach2-clique", attach_vertex2(&k236, "K1", "K3", "N")?),
        (
            "attach2-edge",
            attach_vertex2_to_edge(&tri, "T2", "T3", "N")?,
        ),
        (
            "attach2-edge-path",
            attach_vertex2_to_edge(&p2("A", "B")?, "A", "B", "N")?,
        ),
        ("zabc", attach_path_zabc(&path, "P1", "P4", ("N1", "N2"))?),
        (
            "zabc-triangle",
            attach_path_zabc(&tri, "T1", "T2", ("N1", "N2"))?,
        ),
        ("attach-leaf", attach_leaf(&k333, "M2", 3, "L")?),
        ("attach-leaf-5", attach_leaf(&path, "P2", 5, "L")?),
        (
            "stitch",
            stitch(&p2("A", "B")?, &["B"], &p2("C", "D")?, &["C", "D"])?,
        ),
        (
            "stitch-triangle",
            stitch(&tri, &["T2", "T3"], &k236, &["K1"])?,
        ),
        (
            "sew",
            sew(
                &triangle_244("A", "X1", "X2")?,
                "A",
                &triangle_244("B", "Y1", "Y2")?,
                "B",
            )?,
        ),
        ("sew-path", sew(&path, "P1", &p2("Z", "W")?, "Z")?),
        (
            "fasten",
            fasten(
                &p2("A", "B")?,
                &[
                    (p2("X1", "X2")?, vec!["X1".into()]),
                    (p2("Y1", "Y2")?, vec!["Y1".into(), "Y2".into()]),
                ],
            )?,
        ),
        (
            "fasten-single",
            fasten_single(
                &clique(&["G1", "G2", "G3"], &[3, 3, 3]),
                &[
                    (p2("X1", "X2")?, "X1".into()),
                    (p2("Y1", "Y2")?, "Y1".into()),
                    (p2("Z1", "Z2")?, "Z1".into()),
                ],
            )?,
        ),
        (
            "cone",
            cone(
                &p2("G1", "G2")?,
                &[
                    ConeComponent {
                        game: c4_o_a("O", "A1", "P1", "Q1"),
                        apex: "O".into(),
                        marked: "A1".into(),
                    },
                    ConeComponent {
                        game: c4_o_a("O", "A2", "P2", "Q2"),
                        apex: "O".into(),
                        marked: "A2".into(),
                    },
                ],
            )?,
        ),
        (
            "restrict",
            restrict(
                &product(&k333, &p2("M1", "X")?, "M1")?,
                &[("M1", 5), ("M2", 2)],
            )?,
        ),
        (
            "extend",
            extend(
                &p2("A", "B")?,
                &Game::cycle(&[("A", 2), ("B", 2), ("C", 9)])?,
            )?,
        ),
    ];
    let leafy = attach_leaf(&k333, "M2", 3, "L")?;
    out.push(("remove-leaf", remove_leaf(&leafy, "L")?));
    let big_leaf = attach_leaf(&path, "P2", 4, "L")?;
    out.push(("remove-leaf-path", remove_leaf(&big_leaf, "L")?));
    let target = Game::new(
        &[("T3", 4), ("T2", 4), ("T1", 2)],
        &[("T1", "T2"), ("T2", "T3"), ("T1", "T3")],
    )?;
    out.push(("reorder", reorder(&tri, &target)?));
    Ok(out)
}

fn losing(game: Game) -> ConstructedGame {
    ConstructedGame::assumed_losing(game, "seed")
}

/// Every losing constructor applied to small losing seeds.
pub fn losing_constructions() -> Result<Vec<(&'static str, ConstructedGame)>> {
    let k23 = losing(Game::path(&[("X", 2), ("B", 3)])?);
    let p252 = losing(Game::path(&[("X", 2), ("Y", 5), ("Z", 2)])?);
    let two = losing(Game::new(&[("X", 2), ("Z", 2)], &[] as &[(&str, &str)])?);
    let k334 = losing(Game::clique(&[("A", 3), ("B", 3), ("C", 4)])?);
    Ok(vec![
        ("pendant", losing_pendant(&k23, "B", "P")?),
        (
            "pendant-33",
            losing_pendant(&losing(Game::path(&[("A", 3), ("C", 3)])?), "C", "P")?,
        ),
        (
            "pendant-twice",
            losing_pendant(&losing_pendant(&k23, "B", "P")?, "P", "Q")?,
        ),
        ("attach-two", losing_attach_two(&two, "X", "Z", "W")?),
        ("attach-two-path", losing_attach_two(&p252, "X", "Z", "W")?),
        (
            "glue",
            glue_losing(&p252, &losing(Game::path(&[("X", 2), ("T", 5)])?), "X")?,
        ),
        (
            "glue-clique",
            glue_losing(&k334, &losing(Game::path(&[("A", 2), ("T", 3)])?), "A")?,
        ),
    ])
}
