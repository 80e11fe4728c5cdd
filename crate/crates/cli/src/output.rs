//! Result documents and their serialization.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};
use serde_json::{json, Value};

pub const VERSION: &str = concat!("socc ", env!("CARGO_PKG_VERSION"));

/// Writes every float in scientific notation with 17 significant digits.
struct Sci<F>(F);

macro_rules! delegate {
    ($($name:ident),*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        })*
    };
}

impl<F: Formatter> Formatter for Sci<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    delegate!(
        begin_array,
        end_array,
        end_array_value,
        begin_object,
        end_object,
        end_object_key,
        begin_object_value,
        end_object_value
    );
}

/// Serializes `value` with the float format above.
pub fn to_string<T: Serialize>(value: &T, pretty: bool) -> String {
    let mut buf = Vec::new();
    let res = if pretty {
        value.serialize(&mut serde_json::Serializer::with_formatter(
            &mut buf,
            Sci(PrettyFormatter::new()),
        ))
    } else {
        value.serialize(&mut serde_json::Serializer::with_formatter(
            &mut buf,
            Sci(CompactFormatter),
        ))
    };
    res.expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn ok(payload: Value) -> Value {
    json!({ "status": "ok", "version": VERSION, "payload": payload })
}

pub fn error(code: &str, message: &str) -> Value {
    json!({ "status": "error", "version": VERSION, "error": { "code": code, "message": message } })
}
