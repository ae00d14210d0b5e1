//! `--config` files: `key = value` lines spliced into the argument list.
//!
//! Keys are long flag names without the leading dashes. The file's flags
//! are inserted right after the subcommand, so flags given on the command
//! line come later and win. Boolean flags take `true` or `false`.

use std::ffi::OsString;
use std::fs;

use clap::Command;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("--config needs a file path")]
    MissingPath,
    #[error("cannot read config {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("config line {line}: {message}")]
    Line { line: usize, message: String },
}

/// Finds `--config PATH` or `--config=PATH` after the subcommand.
fn config_path(args: &[OsString]) -> Result<Option<String>, ConfigError> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let a = a.to_string_lossy();
        if a == "--config" {
            return it.next().map(|p| Some(p.to_string_lossy().into_owned())).ok_or(ConfigError::MissingPath);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
    }
    Ok(None)
}

/// Translates config text into flags for `sub`.
pub fn config_flags(text: &str, sub: &Command) -> Result<Vec<OsString>, ConfigError> {
    let mut flags = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let entry = raw.trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        let (key, value) = entry.split_once('=').ok_or_else(|| ConfigError::Line {
            line,
            message: format!("expected `key = value`, got `{entry}`"),
        })?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key == "config" {
            return Err(ConfigError::Line {
                line,
                message: "config files cannot include other config files".into(),
            });
        }
        let arg = sub.get_arguments().find(|a| a.get_long() == Some(key)).ok_or_else(|| {
            ConfigError::Line { line, message: format!("unknown key `{key}` for `{}`", sub.get_name()) }
        })?;
        if arg.get_action().takes_values() {
            flags.push(format!("--{key}").into());
            flags.push(value.into());
        } else {
            match value {
                "true" => flags.push(format!("--{key}").into()),
                "false" => {}
                other => {
                    return Err(ConfigError::Line {
                        line,
                        message: format!("`{key}` takes true or false, got `{other}`"),
                    })
                }
            }
        }
    }
    Ok(flags)
}

/// Returns `args` with the flags from a `--config` file inserted after the
/// subcommand. Arguments without `--config` pass through unchanged.
pub fn expand(args: Vec<OsString>, cmd: &Command) -> Result<Vec<OsString>, ConfigError> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let Some((pos, sub)) = args.iter().enumerate().skip(1).find_map(|(k, a)| {
        let name = a.to_str()?;
        cmd.find_subcommand(name).map(|s| (k, s))
    }) else {
        // No subcommand: leave the usage error to the parser.
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| ConfigError::Read { path: path.clone(), reason: e.to_string() })?;
    let flags = config_flags(&text, sub)?;
    let mut out = Vec::with_capacity(args.len() + flags.len());
    out.extend_from_slice(&args[..=pos]);
    out.extend(flags);
    out.extend_from_slice(&args[pos + 1..]);
    Ok(out)
}
