//! Regenerate the JSON files under `data/`.

use std::collections::BTreeMap;

use tropnet::algebra::Rational;
use tropnet::codec::{encode_matrix, encode_realized_net, to_canonical_string};
use tropnet::latin::LatinSquare;
use tropnet::nets::{line, net_from_ols, point, RealizedNet};
use tropnet::projective::{ProjLine, ProjPoint};
use tropnet::prover::build_44_skeleton;
use tropnet::tropical::{degeneration_32, degeneration_t};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, v: &serde_json::Value| std::fs::write(dir.join(name), to_canonical_string(v));

    write("T.json", &encode_matrix(&degeneration_t()))?;
    write("m32.json", &encode_matrix(&degeneration_32()))?;

    let square = LatinSquare::new(vec![vec![2, 1], vec![1, 2]])?;
    let lines = [
        (line(1, 1), [1, 0, 0]),
        (line(1, 2), [0, 1, -1]),
        (line(2, 1), [0, 0, 1]),
        (line(2, 2), [1, -1, 0]),
        (line(3, 1), [0, 1, 0]),
        (line(3, 2), [1, 0, -1]),
    ];
    let points = [(point(1, 1), [0, 1, 0]), (point(1, 2), [0, 0, 1]), (point(2, 1), [1, 0, 0]), (point(2, 2), [1, 1, 1])];
    let net32 = RealizedNet {
        net: net_from_ols(2, &[square])?,
        lines: lines.iter().map(|(id, c)| (*id, ProjLine::<Rational>::from_ints(*c))).collect(),
        points: points.iter().map(|(id, c)| (*id, ProjPoint::<Rational>::from_ints(*c))).collect(),
    };
    write("net32.json", &encode_realized_net(&net32, &[]))?;

    let s = build_44_skeleton()?;
    let net44 = RealizedNet { net: s.net.clone(), lines: s.fixed_lines().into_iter().collect(), points: BTreeMap::new() };
    write("net44_fixed.json", &encode_realized_net(&net44, &[]))?;
    Ok(())
}
