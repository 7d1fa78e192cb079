//! Output directory handling and file writers.

use std::fs;
use std::path::{Path, PathBuf};

use gfphase::{Result, WignerGrid};
use serde::Serialize;

use crate::Config;

/// Used when neither `--out` nor `WIGNER_DATA_DIR` is set.
pub const DEFAULT_ROOT: &str = "gfphase-data";

pub fn root(cfg: &Config) -> PathBuf {
    cfg.out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_ROOT))
}

pub fn write_text(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    println!("wrote {}", path.display());
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(dir, name, &text)
}

/// `<stem>.csv`, `<stem>.json` and the gnuplot layout `<stem>.dat`.
pub fn write_grid(dir: &Path, stem: &str, grid: &WignerGrid) -> Result<()> {
    write_text(dir, &format!("{stem}.csv"), &grid.to_csv())?;
    write_json(dir, &format!("{stem}.json"), &grid.to_json())?;
    write_text(dir, &format!("{stem}.dat"), &grid.to_gnuplot())?;
    Ok(())
}
