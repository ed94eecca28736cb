//! Tables shipped with the crate, generated from the standard braiding and
//! checked against regeneration by the test suite.

use crate::error::{Error, Result};
use crate::hecke::{change_basis_compact, generate_relations, limit_q1, BraidMatrix, RelationKind};
use crate::RelationTable;

/// Identifiers accepted by [`table`].
pub const TABLE_IDS: [&str; 8] = ["re", "mrea", "double-lm", "double-km", "weyl-m", "weyl-n", "gl2h", "u2h"];

fn source(id: &str) -> Option<&'static str> {
    Some(match id {
        "re" => include_str!("../data/tables/re.json"),
        "mrea" => include_str!("../data/tables/mrea.json"),
        "double-lm" => include_str!("../data/tables/double-lm.json"),
        "double-km" => include_str!("../data/tables/double-km.json"),
        "weyl-m" => include_str!("../data/tables/weyl-m.json"),
        "weyl-n" => include_str!("../data/tables/weyl-n.json"),
        "gl2h" => include_str!("../data/tables/gl2h.json"),
        "u2h" => include_str!("../data/tables/u2h.json"),
        _ => return None,
    })
}

/// The bundled JSON text of a table.
pub fn table_json(id: &str) -> Result<&'static str> {
    source(id).ok_or_else(|| Error::Table(format!("unknown table '{id}' (known: {})", TABLE_IDS.join(", "))))
}

pub fn table(id: &str) -> Result<RelationTable> {
    RelationTable::from_json(table_json(id)?)
}

/// Recomputes a bundled table from the standard braiding.
pub fn generate(id: &str) -> Result<RelationTable> {
    let r = BraidMatrix::standard();
    match id {
        "gl2h" => limit_q1(&generate_relations(&r, RelationKind::WeylN)?),
        "u2h" => change_basis_compact(&limit_q1(&generate_relations(&r, RelationKind::WeylN)?)?),
        _ => {
            let kind = RelationKind::ALL
                .into_iter()
                .find(|k| k.name().eq_ignore_ascii_case(id))
                .ok_or_else(|| Error::Table(format!("unknown table '{id}'")))?;
            generate_relations(&r, kind)
        }
    }
}
