//! `--config FILE` support: `key = value` lines become flags placed before the
//! ones given on the command line, so explicit flags win.

use std::ffi::OsString;

fn config_path(args: &[OsString]) -> Result<Option<String>, String> {
    let mut found = None;
    let mut it = args.iter().map(|a| a.to_string_lossy());
    while let Some(a) = it.next() {
        if a == "--config" {
            let path = it.next().ok_or("--config needs a file argument")?;
            found = Some(path.into_owned());
        } else if let Some(path) = a.strip_prefix("--config=") {
            found = Some(path.to_string());
        }
    }
    Ok(found)
}

/// Parses `key = value` text into flag tokens. `#` starts a comment; boolean
/// keys take `true`/`false`.
pub fn flags_from_text(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", n + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key", n + 1));
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

/// Splices the config file's flags in right after the subcommand name.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let flags = flags_from_text(&text)?;
    let at = 2.min(args.len());
    let mut out = args[..at].to_vec();
    out.extend(flags);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}
