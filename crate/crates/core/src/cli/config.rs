//! `--config` support: a JSON object whose keys are long flag names. Values
//! fill in flags that were not given on the command line.

use std::ffi::OsString;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches};
use serde_json::Value;

use super::Cli;

pub enum ParseFailure {
    Clap(clap::Error),
    Config(String),
}

impl From<clap::Error> for ParseFailure {
    fn from(e: clap::Error) -> Self {
        ParseFailure::Clap(e)
    }
}

fn render(key: &str, v: &Value) -> Result<Option<String>, ParseFailure> {
    Ok(match v {
        Value::Null => None,
        Value::Bool(_) => None,
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => Some(
            a.iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(ParseFailure::Config(format!("config key '{key}': unsupported list item"))),
                })
                .collect::<Result<Vec<_>, _>>()?
                .join(","),
        ),
        Value::Object(_) => return Err(ParseFailure::Config(format!("config key '{key}': nested objects are not flags"))),
    })
}

fn explicit(m: &ArgMatches, id: &str) -> bool {
    matches!(m.value_source(id), Some(ValueSource::CommandLine))
}

pub fn parse_with_config(argv: &[OsString]) -> Result<Cli, ParseFailure> {
    let cmd = Cli::command();
    let matches = cmd.clone().try_get_matches_from(argv)?;
    let Some(path) = matches.get_one::<std::path::PathBuf>("config").cloned() else {
        return Ok(Cli::from_arg_matches(&matches)?);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| ParseFailure::Config(format!("{}: {e}", path.display())))?;
    let Value::Object(entries) =
        serde_json::from_str(&text).map_err(|e| ParseFailure::Config(format!("{}: {e}", path.display())))?
    else {
        return Err(ParseFailure::Config(format!("{}: expected a JSON object", path.display())));
    };
    let (sub_name, sub_matches) = matches.subcommand().expect("subcommand is required");
    let sub_cmd = cmd.find_subcommand(sub_name).expect("parsed subcommand exists");
    let mut extra: Vec<OsString> = Vec::new();
    for (key, value) in &entries {
        let in_sub = sub_cmd.get_arguments().find(|a| a.get_long() == Some(key.as_str()));
        let in_top = cmd.get_arguments().find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = in_sub.or(in_top) else {
            return Err(ParseFailure::Config(format!("config key '{key}' is not a flag of '{sub_name}'")));
        };
        let id = arg.get_id().as_str();
        let given = if in_sub.is_some() { explicit(sub_matches, id) } else { explicit(&matches, id) };
        if given {
            continue;
        }
        if key == "config" {
            continue;
        }
        match (value, render(key, value)?) {
            (Value::Bool(true), _) => extra.push(format!("--{key}").into()),
            (_, Some(v)) => {
                extra.push(format!("--{key}").into());
                extra.push(v.into());
            }
            _ => {}
        }
    }
    let mut merged = argv.to_vec();
    merged.extend(extra);
    let matches = cmd.try_get_matches_from(merged)?;
    Ok(Cli::from_arg_matches(&matches)?)
}
