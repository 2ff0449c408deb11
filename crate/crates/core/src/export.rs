//! JSON, DOT and CSV renderings of the library's data.
//!
//! Polynomials are written both as `[[exponent, coefficient], ...]` and as
//! a human string. All orderings are stable, so output is reproducible.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::contraction::{ContractedPair, ContractionTiling, UnitKind};
use crate::klpoly::DecompositionMatrix;
use crate::koszul::ResolutionTable;
use crate::laurent::LaurentPoly;
use crate::paths::{Path, StepKind};
use crate::tiling::{BruhatPoset, Parity, Region};

pub fn poly_json(p: &LaurentPoly) -> Value {
    json!({ "coeffs": p, "str": p.to_string() })
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Plus => "+",
        Parity::Minus => "-",
        Parity::None => "",
    }
}

/// `{pair, tiles: [{r,c,colour,parity}], ideals: [[tileIndex...]]}`.
pub fn region_json(region: &Region, poset: &BruhatPoset) -> Value {
    let tiles: Vec<Value> = region
        .tiles()
        .iter()
        .map(|t| json!({ "r": t.r, "c": t.c, "colour": t.colour, "parity": parity_str(t.parity) }))
        .collect();
    json!({ "pair": region.pair(), "tiles": tiles, "ideals": poset.elements() })
}

/// Tiles as boxes, with an edge from each tile to the tiles directly below.
pub fn region_dot(region: &Region) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", region.pair());
    let _ = writeln!(s, "  rankdir=BT;\n  node [shape=box];");
    for t in region.tiles() {
        let _ = writeln!(s, "  t{}_{} [label=\"[{},{}] {}{}\"];", t.r, t.c, t.r, t.c, t.colour, parity_str(t.parity));
    }
    for i in 0..region.len() {
        let a = region.tile(i);
        for j in region.below(i).iter() {
            let b = region.tile(j);
            let _ = writeln!(s, "  t{}_{} -> t{}_{};", b.r, b.c, a.r, a.c);
        }
    }
    s.push_str("}\n");
    s
}

/// `index,r,c,colour,parity`.
pub fn region_csv(region: &Region) -> String {
    let mut s = String::from("index,r,c,colour,parity\n");
    for (i, t) in region.tiles().iter().enumerate() {
        let _ = writeln!(s, "{i},{},{},{},{}", t.r, t.c, t.colour, parity_str(t.parity));
    }
    s
}

/// `{pair, elements: [{id, rows, size}], covers: [{lower, upper, colour, tile}]}`.
pub fn poset_json(region: &Region, poset: &BruhatPoset) -> Value {
    let elements: Vec<Value> = poset
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &lam)| json!({ "id": i, "rows": region.row_lengths(lam), "size": lam.len() }))
        .collect();
    let covers: Vec<Value> = poset
        .covers()
        .iter()
        .map(|c| json!({ "lower": c.lower, "upper": c.upper, "colour": c.colour, "tile": c.tile }))
        .collect();
    json!({ "pair": region.pair(), "elements": elements, "covers": covers })
}

/// `id,size,rows` with rows separated by spaces.
pub fn poset_csv(region: &Region, poset: &BruhatPoset) -> String {
    let mut s = String::from("id,size,rows\n");
    for (i, &lam) in poset.elements().iter().enumerate() {
        let rows: Vec<String> = region.row_lengths(lam).iter().map(|r| r.to_string()).collect();
        let _ = writeln!(s, "{i},{},{}", lam.len(), rows.join(" "));
    }
    s
}

/// Hasse diagram: nodes are poset ids labelled by row lengths, edges are
/// labelled by colour.
pub fn poset_dot(region: &Region, poset: &BruhatPoset) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", region.pair());
    let _ = writeln!(s, "  rankdir=BT;");
    for (i, &lam) in poset.elements().iter().enumerate() {
        let rows = region.row_lengths(lam);
        let label = if rows.is_empty() {
            "∅".to_string()
        } else {
            rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(s, "  {i} [label=\"{i}: ({label})\"];");
    }
    for c in poset.covers() {
        let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", c.lower, c.upper, c.colour);
    }
    s.push_str("}\n");
    s
}

/// `{pair, order, partitions, entries: {"lam,mu": poly}}` with zero entries
/// omitted.
pub fn matrix_json(d: &DecompositionMatrix) -> Value {
    let mut entries = Map::new();
    for lam in 0..d.len() {
        for mu in 0..d.len() {
            let e = d.get(lam, mu);
            if !e.is_zero() {
                entries.insert(format!("{lam},{mu}"), poly_json(e));
            }
        }
    }
    json!({
        "pair": d.pair,
        "order": (0..d.len()).collect::<Vec<_>>(),
        "partitions": d.order,
        "entries": entries,
    })
}

/// Rows `lam`, columns `mu`, entries in compact form (`1+q^2`).
pub fn matrix_csv(d: &DecompositionMatrix) -> String {
    let mut s = String::from("lambda\\mu");
    for mu in 0..d.len() {
        let _ = write!(s, ",{mu}");
    }
    s.push('\n');
    for lam in 0..d.len() {
        let _ = write!(s, "{lam}");
        for mu in 0..d.len() {
            let _ = write!(s, ",{}", d.get(lam, mu).to_compact_string());
        }
        s.push('\n');
    }
    s
}

fn step_name(k: StepKind) -> &'static str {
    match k {
        StepKind::AddUp => "A+",
        StepKind::AddDown => "A-",
        StepKind::RemUp => "R+",
        StepKind::RemDown => "R-",
    }
}

/// `{word: [colour...], steps: [{kind, r, c}], degree}`.
pub fn path_json(region: &Region, path: &Path) -> Value {
    let steps: Vec<Value> = path
        .steps
        .iter()
        .map(|st| {
            let t = region.tile(st.tile);
            json!({ "kind": step_name(st.kind), "r": t.r, "c": t.c })
        })
        .collect();
    json!({ "word": path.word, "steps": steps, "degree": path.degree })
}

/// Resolution of `Delta(lam)`: term `n` lists `{mu, partition, multiplicity}`.
pub fn resolution_json(table: &ResolutionTable, lam: usize) -> Value {
    let terms: Vec<Value> = table
        .resolution(lam)
        .into_iter()
        .enumerate()
        .map(|(n, term)| {
            let summands: Vec<Value> = term
                .into_iter()
                .map(|(mu, m)| json!({ "mu": mu, "partition": table.order[mu], "multiplicity": m }))
                .collect();
            json!({ "degree": n, "summands": summands })
        })
        .collect();
    let polys: Map<String, Value> = table.rows[lam].iter().map(|(mu, p)| (mu.to_string(), poly_json(p))).collect();
    json!({ "pair": table.pair, "lambda": lam, "partition": table.order[lam], "p": polys, "terms": terms })
}

/// `{pair, partitions, p: {"lam,mu": poly}}`.
pub fn resolution_table_json(table: &ResolutionTable) -> Value {
    let mut p = Map::new();
    for (lam, row) in table.rows.iter().enumerate() {
        for (mu, poly) in row {
            p.insert(format!("{lam},{mu}"), poly_json(poly));
        }
    }
    json!({ "pair": table.pair, "partitions": table.order, "p": p })
}

/// Rows `lam`, columns `mu`, entries `p_{lam,mu}` in compact form.
pub fn resolution_table_csv(table: &ResolutionTable) -> String {
    let n = table.len();
    let mut s = String::from("lambda\\mu");
    for mu in 0..n {
        let _ = write!(s, ",{mu}");
    }
    s.push('\n');
    for lam in 0..n {
        let _ = write!(s, "{lam}");
        for mu in 0..n {
            let _ = write!(s, ",{}", table.p(lam, mu).to_compact_string());
        }
        s.push('\n');
    }
    s
}

/// Tiles of the contraction tiling as coordinates, with the contracted pair.
pub fn contraction_json(region: &Region, ct: &ContractionTiling, cp: &ContractedPair) -> Value {
    let coords = |set: crate::tiling::TileSet| region.coords(set);
    let units: Vec<Value> = ct
        .units
        .iter()
        .map(|u| json!({ "kind": u.kind, "tiles": coords(u.tiles), "readingWord": u.reading_word }))
        .collect();
    let tau_tiles: Vec<(u8, u8)> = ct.tau_tiles.iter().map(|&i| (region.tile(i).r, region.tile(i).c)).collect();
    json!({
        "pair": ct.pair,
        "tau": ct.tau,
        "target": cp.target,
        "colourMap": cp.colour_map,
        "tauTiles": tau_tiles,
        "nullLow": coords(ct.null_low),
        "nullHigh": coords(ct.null_high),
        "units": units,
    })
}

/// Base region with the contraction tiling drawn as clusters.
pub fn contraction_dot(region: &Region, ct: &ContractionTiling) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{} / {}\" {{", region.pair(), ct.tau);
    let _ = writeln!(s, "  node [shape=box];");
    let node = |i: usize| {
        let t = region.tile(i);
        format!("t{}_{}", t.r, t.c)
    };
    let cluster = |s: &mut String, name: &str, label: &str, tiles: crate::tiling::TileSet, style: &str| {
        let _ = writeln!(s, "  subgraph cluster_{name} {{");
        let _ = writeln!(s, "    label=\"{label}\"; style=\"{style}\";");
        for i in tiles.iter() {
            let t = region.tile(i);
            let fill = if t.colour == ct.tau { ", style=filled, fillcolor=lightblue" } else { "" };
            let _ = writeln!(s, "    {} [label=\"[{},{}] {}\"{fill}];", node(i), t.r, t.c, t.colour);
        }
        s.push_str("  }\n");
    };
    cluster(&mut s, "low", "T_0->1", ct.null_low, "dashed");
    cluster(&mut s, "high", "T_inf", ct.null_high, "dashed");
    for (k, u) in ct.units.iter().enumerate() {
        let kind = match u.kind {
            UnitKind::Composite => "composite",
            UnitKind::Single => "single",
        };
        cluster(&mut s, &format!("u{k}"), &format!("unit {k} ({kind})"), u.tiles, "solid");
    }
    for i in 0..region.len() {
        for j in region.below(i).iter() {
            let _ = writeln!(s, "  {} -- {};", node(j), node(i));
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contraction_tiling;
    use crate::coxeter::{HermitianPair, Node};
    use crate::klpoly::decomposition_matrix;
    use crate::paths::enumerate_paths;

    #[test]
    fn region_json_schema() {
        let p = HermitianPair::axa(8, 5).unwrap();
        let r = Region::new(p).unwrap();
        let v = region_json(&r, &r.enumerate_partitions());
        assert_eq!(v["tiles"].as_array().unwrap().len(), 20);
        assert_eq!(v["pair"], "A:n=8,k=5");
        assert_eq!(v["ideals"].as_array().unwrap().len(), 126);
        assert_eq!(v["tiles"][0]["colour"], 5);
    }

    #[test]
    fn matrix_formats() {
        let d = decomposition_matrix(HermitianPair::axa(2, 2).unwrap()).unwrap();
        let v = matrix_json(&d);
        assert_eq!(v["entries"]["0,1"]["str"], "q");
        assert_eq!(v["entries"]["0,1"]["coeffs"], json!([[1, 1]]));
        assert!(v["entries"].get("0,2").is_none());
        assert_eq!(matrix_csv(&d), "lambda\\mu,0,1,2\n0,1,q,0\n1,0,1,q\n2,0,0,1\n");
    }

    #[test]
    fn dot_outputs() {
        let r = Region::new(HermitianPair::axa(2, 2).unwrap()).unwrap();
        let dot = poset_dot(&r, &r.enumerate_partitions());
        assert!(dot.contains("0 -> 1 [label=\"s2\"]"));
        let p = HermitianPair::axa(5, 3).unwrap();
        let r = Region::new(p).unwrap();
        let dot = contraction_dot(&r, &contraction_tiling(p, Node(3)).unwrap());
        assert!(dot.contains("composite"));
    }

    #[test]
    fn path_json_schema() {
        let r = Region::new(HermitianPair::axa(2, 2).unwrap()).unwrap();
        let paths = enumerate_paths(&r, crate::tiling::TileSet::single(0), r.full());
        let v = path_json(&r, &paths[0]);
        assert_eq!(v["degree"], 1);
        assert_eq!(v["word"], json!([2, 1]));
        assert_eq!(v["steps"][1]["kind"], "A-");
    }
}
