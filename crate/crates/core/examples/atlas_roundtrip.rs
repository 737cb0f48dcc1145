//! Builds the Fermat atlas, writes it to disk, reads it back and diffs it
//! against a second build. Also exports the per-class spectra as CSV.
//!
//! ```text
//! cargo run --example atlas_roundtrip -- /tmp/atlas
//! ```

use std::path::PathBuf;

use delsarte::build_atlas;
use delsarte::catalog::{
    atlas_diff, fermat_catalog, load_atlas, save_atlas, write_spectra_csv, AtlasOptions,
};

fn main() -> delsarte::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let records = fermat_catalog();
    let atlas = build_atlas("fermat", None, records.clone(), AtlasOptions::default())?;
    let path = dir.join("fermat-atlas.json");
    save_atlas(&atlas, &path)?;
    println!(
        "wrote {} records to {}",
        atlas.records.len(),
        path.display()
    );

    let loaded = load_atlas(&path)?;
    assert_eq!(loaded, atlas);
    let again = build_atlas("fermat", None, records.clone(), AtlasOptions::default())?;
    let diff = atlas_diff(&loaded, &again);
    println!("diff against a fresh build is empty: {}", diff.is_empty());

    let csv_path = dir.join("fermat-spectra.csv");
    write_spectra_csv(&records, std::fs::File::create(&csv_path)?)?;
    println!("per-class spectra in {}", csv_path.display());
    println!("finite heights: {:?}", loaded.finite_heights);
    Ok(())
}
