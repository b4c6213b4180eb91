//! Append-only JSONL result cache.
//!
//! Each line is `{"key": ..., "value": ...}` with the rendered output stored
//! as a string, so a hit replays the exact bytes of the first run.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FILE_NAME: &str = "cache.jsonl";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    value: String,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, String>,
    /// The file ends without a newline (a torn final write).
    needs_newline: bool,
    pub warnings: Vec<String>,
}

/// `canonical|command|sha256(params)`.
pub fn key(canonical: &str, command: &str, params: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(params).expect("serializable parameters");
    let digest = Sha256::digest(&bytes);
    format!("{canonical}|{command}|{}", hex::encode(digest))
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut text = String::new();
        match File::open(&path) {
            Ok(mut f) => {
                f.read_to_string(&mut text)?;
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        let needs_newline = !text.is_empty() && !text.ends_with('\n');
        let lines: Vec<&str> = text.split('\n').collect();
        let mut entries = HashMap::new();
        let mut warnings = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<Entry>(line) {
                Ok(e) => {
                    entries.insert(e.key, e.value);
                }
                // a torn final line is expected after an interrupted write
                Err(_) if i + 1 == lines.len() => {}
                Err(err) => warnings.push(format!("{}:{}: ignoring corrupt cache line: {err}", path.display(), i + 1)),
            }
        }
        Ok(Cache { path, entries, needs_newline, warnings })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends entries in the given order, skipping keys already present.
    pub fn put_all<I: IntoIterator<Item = (String, String)>>(&mut self, items: I) -> io::Result<()> {
        let mut out = String::new();
        for (key, value) in items {
            if self.entries.contains_key(&key) {
                continue;
            }
            let line = serde_json::to_string(&Entry { key: key.clone(), value: value.clone() }).expect("entry");
            out.push_str(&line);
            out.push('\n');
            self.entries.insert(key, value);
        }
        if out.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        if self.needs_newline {
            f.write_all(b"\n")?;
            self.needs_newline = false;
        }
        f.write_all(out.as_bytes())?;
        f.flush()
    }

    pub fn put(&mut self, key: String, value: String) -> io::Result<()> {
        self.put_all([(key, value)])
    }
}
