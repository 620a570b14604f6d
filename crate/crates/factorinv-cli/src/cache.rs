//! Result caching keyed by the full argument list. Entries store the request
//! verbatim and are verified on read, so hash collisions can only cause a
//! recompute, never a wrong payload.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::Write as _;
use std::path::PathBuf;

pub fn request_key(args: &[String]) -> String {
    args.join("\u{1f}")
}

fn cache_dir() -> PathBuf {
    std::env::var_os("FACTORINV_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".factorinv-cache"))
}

fn entry_path(request: &str) -> PathBuf {
    let mut hasher = DefaultHasher::new();
    request.hash(&mut hasher);
    cache_dir().join(format!("{:016x}.json", hasher.finish()))
}

pub fn lookup(request: &str) -> Option<String> {
    let text = std::fs::read_to_string(entry_path(request)).ok()?;
    let value: serde_json::Value = serde_json::from_str(&text).ok()?;
    if value.get("request")?.as_str()? != request {
        return None;
    }
    Some(value.get("payload_text")?.as_str()?.to_string())
}

/// Atomic create-and-rename; failures are silent because the cache is an
/// optimization, never a source of truth.
pub fn store(request: &str, payload_text: &str) {
    let dir = cache_dir();
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let entry = serde_json::json!({
        "request": request,
        "payload_text": payload_text,
    });
    let path = entry_path(request);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let Ok(mut f) = std::fs::File::create(&tmp) else {
        return;
    };
    if f.write_all(entry.to_string().as_bytes()).is_err() {
        let _ = std::fs::remove_file(&tmp);
        return;
    }
    let _ = f.sync_all();
    let _ = std::fs::rename(&tmp, &path);
}
