use std::path::Path;

use super::{read_json, write_file, ExportError, ExportManifest};
use crate::facet::ThemeTree;

pub const THEMES_FILE: &str = "themes.json";

/// Writes the tree as `themes.json` nesting `{name, count, children}`.
pub fn export_theme_tree(tree: &ThemeTree, root: &Path) -> Result<ExportManifest, ExportError> {
    let bytes = serde_json::to_vec(tree).map_err(|e| ExportError::json(root, e))?;
    let sum = write_file(root, THEMES_FILE, &bytes)?;
    let mut manifest = ExportManifest::new(root);
    manifest.theme_files = 1;
    manifest.checksums.insert(THEMES_FILE.to_string(), sum);
    Ok(manifest)
}

pub fn load_theme_tree(root: &Path) -> Result<ThemeTree, ExportError> {
    read_json(&root.join(THEMES_FILE))
}
