//! JSON Schemas (draft 2020-12) for the documents the CLI reads and writes.

use serde_json::{json, Value};

pub const KINDS: [&str; 7] = ["matrix", "mmp", "device", "certificate", "cdev", "mps", "pcp"];

fn entry() -> Value {
    json!({
        "description": "Exact rational: a JSON integer, or a string \"p\" or \"p/q\" with q > 0",
        "oneOf": [
            { "type": "integer" },
            { "type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$" }
        ]
    })
}

fn matrix() -> Value {
    json!({
        "type": "object",
        "required": ["rows", "cols", "data"],
        "additionalProperties": false,
        "properties": {
            "rows": { "type": "integer", "minimum": 1 },
            "cols": { "type": "integer", "minimum": 1 },
            "data": {
                "description": "rows arrays of cols entries each",
                "type": "array",
                "items": { "type": "array", "items": { "$ref": "#/$defs/entry" } }
            }
        }
    })
}

fn matrix_list(key: &str, description: &str) -> Value {
    json!({
        "type": "object",
        "required": ["dim", key],
        "additionalProperties": false,
        "properties": {
            "dim": { "type": "integer", "minimum": 1 },
            key: {
                "description": description,
                "type": "array",
                "minItems": 1,
                "items": { "$ref": "#/$defs/matrix" }
            }
        }
    })
}

fn word_map() -> Value {
    json!({
        "type": "object",
        "additionalProperties": { "type": "string", "pattern": "^[23]+$" }
    })
}

fn body(kind: &str) -> Option<Value> {
    Some(match kind {
        "matrix" => json!({ "$ref": "#/$defs/matrix" }),
        "mmp" => matrix_list("matrices", "square generators, all dim x dim"),
        "device" => matrix_list("kraus", "Kraus operators, all dim x dim, summing to the identity as Σ A†A"),
        "cdev" => matrix_list("parts", "non-negative parts whose sum has every column summing to 1"),
        "mps" => matrix_list("matrices", "one dim x dim matrix per outcome; amplitudes are (1,1) entries"),
        "certificate" => json!({
            "type": "object",
            "required": ["t", "c", "extended_generators", "device"],
            "additionalProperties": false,
            "properties": {
                "t": { "$ref": "#/$defs/matrix" },
                "c": { "oneOf": [{ "type": "integer" }, { "type": "string", "pattern": "^-?[0-9]+$" }] },
                "extended_generators": {
                    "type": "array",
                    "minItems": 40,
                    "maxItems": 40,
                    "items": { "$ref": "#/$defs/matrix" }
                },
                "device": matrix_list("kraus", "the 9 Kraus operators")
            }
        }),
        "pcp" => json!({
            "type": "object",
            "required": ["alphabet", "h", "g"],
            "additionalProperties": false,
            "properties": {
                "alphabet": { "type": "array", "minItems": 1, "uniqueItems": true, "items": { "type": "string" } },
                "h": word_map(),
                "g": word_map()
            }
        }),
        _ => return None,
    })
}

/// Schema document for `kind`, or `None` if the kind is unknown.
pub fn schema(kind: &str) -> Option<Value> {
    let mut doc = body(kind)?;
    let obj = doc.as_object_mut().expect("schema bodies are objects");
    obj.insert("$schema".into(), json!("https://json-schema.org/draft/2020-12/schema"));
    obj.insert("title".into(), json!(kind));
    obj.insert("$defs".into(), json!({ "entry": entry(), "matrix": matrix() }));
    Some(doc)
}
