//! JSON reading and writing.
//!
//! Floats are written as `{:.16e}` (17 significant digits), which round-trips
//! every `f64` and makes output for a given input and seed byte-identical.

use std::io::{self, Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};

use crate::CliError;

/// Path that stands for standard input.
pub const STDIN: &str = "-";

pub fn read_source(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    let result = if path == STDIN {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text).map(|_| ()))
    };
    result.map_err(|source| CliError::Read {
        path: display_name(path).into(),
        source,
    })?;
    Ok(text)
}

pub fn parse<T: DeserializeOwned>(text: &str, path: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: display_name(path).into(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

pub fn read<T: DeserializeOwned>(path: &str, stdin: &mut dyn Read) -> Result<T, CliError> {
    parse(&read_source(path, stdin)?, path)
}

fn display_name(path: &str) -> &str {
    if path == STDIN {
        "<stdin>"
    } else {
        path
    }
}

// serde_json appends " at line L column C", which the error reports separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

#[derive(Debug, Default)]
struct FixedDigits(CompactFormatter);

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            self.0.write_null(writer)
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with fixed-precision floats and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits::default());
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

pub fn to_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("core types serialize to JSON")
}
