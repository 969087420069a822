//! Canonical model dumps for two hand-checked instances.

use ndip::models::{build_cds_ilp, build_sumcol_graver};
use ndip::{Graph, TypeGraph};

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

// Classes {1,3} and {2}: z_1 = 2, z_2 = 1, cost 3 + 1.
#[test]
fn path3_multiplicity_model() {
    let t = TypeGraph::of(&Graph::path(3));
    assert_eq!(
        build_sumcol_graver(&t).unwrap().dump(),
        golden("path3_sumcol_graver.txt")
    );
}

// Centre capacity 3, leaves capacity 0.
#[test]
fn star3_capacitated_domination_model() {
    let g = Graph::star(3).with_capacities(vec![3, 0, 0, 0]).unwrap();
    let t = TypeGraph::of(&g);
    assert_eq!(
        build_cds_ilp(&t).unwrap().dump(),
        golden("star3_cds_ilp.txt")
    );
}
