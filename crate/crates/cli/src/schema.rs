//! JSON schemas for `--json` output, one per subcommand.

pub const NAMES: &[&str] = &[
    "verify",
    "search",
    "smallest",
    "circulant",
    "orbits",
    "nonexist",
    "product",
    "complement",
    "fact2",
    "catalog-ingest",
    "catalog-query",
    "catalog-export",
    "catalog-spectrum",
];

pub fn for_command(name: &str) -> Option<&'static str> {
    Some(match name {
        "verify" => include_str!("../schemas/verify.json"),
        "search" => include_str!("../schemas/search.json"),
        "smallest" => include_str!("../schemas/smallest.json"),
        "circulant" => include_str!("../schemas/circulant.json"),
        "orbits" => include_str!("../schemas/orbits.json"),
        "nonexist" => include_str!("../schemas/nonexist.json"),
        "product" => include_str!("../schemas/product.json"),
        "complement" => include_str!("../schemas/complement.json"),
        "fact2" => include_str!("../schemas/fact2.json"),
        "catalog-ingest" => include_str!("../schemas/catalog-ingest.json"),
        "catalog-query" => include_str!("../schemas/catalog-query.json"),
        "catalog-export" => include_str!("../schemas/catalog-export.json"),
        "catalog-spectrum" => include_str!("../schemas/catalog-spectrum.json"),
        _ => return None,
    })
}
