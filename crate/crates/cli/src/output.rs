//! Result emission: JSON summaries and CSV tables, every file carrying the
//! tool version, resolved-config hash, and root seed needed to reproduce it
//! bit-exactly. No timestamps — identical runs must produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

pub const TOOL_NAME: &str = "uavrot";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance header embedded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
}

impl Meta {
    pub fn new(config_hash: String, seed: u64) -> Self {
        Self {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            config_hash,
            seed,
        }
    }

    fn comment_line(&self) -> String {
        format!(
            "# {} {} config={} seed={}\n",
            self.tool, self.version, self.config_hash, self.seed
        )
    }
}

/// Floats in CSV carry 17 significant digits so they round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(path: &Path) -> anyhow::Result<Self> {
        fs::create_dir_all(path)
            .with_context(|| format!("cannot create output directory {}", path.display()))?;
        Ok(Self {
            root: path.to_path_buf(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write_bytes(&self, name: &str, bytes: &[u8]) -> anyhow::Result<PathBuf> {
        let path = self.path(name);
        fs::write(&path, bytes).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    /// Pretty JSON with a trailing newline.
    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<PathBuf> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.write_bytes(name, &bytes)
    }

    /// One provenance comment, one header row, then the records.
    pub fn write_csv(
        &self,
        name: &str,
        meta: &Meta,
        header: &str,
        rows: impl IntoIterator<Item = String>,
    ) -> anyhow::Result<PathBuf> {
        let mut text = meta.comment_line();
        text.push_str(header);
        text.push('\n');
        for row in rows {
            text.push_str(&row);
            text.push('\n');
        }
        self.write_bytes(name, text.as_bytes())
    }
}
