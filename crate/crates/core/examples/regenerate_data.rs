//! Rewrites the bundled table files from the standard braiding.
//!
//! cargo run --example regenerate_data

use std::path::Path;

use braided_weyl::bundled::{generate, TABLE_IDS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tables");
    for id in TABLE_IDS {
        let t = generate(id)?;
        std::fs::write(dir.join(format!("{id}.json")), t.to_json())?;
        println!("{id}: {} rules", t.rule_count());
    }
    Ok(())
}
