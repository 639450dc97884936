//! JSON shapes and the text encodings of words, codes and field elements.

use psl2codes_core::codes::{CyclicCode, LinearCode};
use psl2codes_core::gf2m::{BinaryPolynomial, FieldElement};
use serde::Serialize;

pub const SCHEMA: &str = "psl2codes/1";

/// Every document carries the schema tag and the command that produced it.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: &'static str,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn field_hex(e: FieldElement) -> String {
    format!("{:#x}", e.0)
}

/// Coordinate `i` is bit `i % 8` of byte `i / 8`.
pub fn word_hex(word: u64, length: usize) -> String {
    hex::encode(&word.to_le_bytes()[..length.div_ceil(8)])
}

pub fn word_from_hex(s: &str) -> Result<u64, String> {
    let bytes = hex::decode(s).map_err(|e| e.to_string())?;
    if bytes.len() > 8 {
        return Err(format!("{s} is longer than 64 coordinates"));
    }
    let mut buf = [0u8; 8];
    buf[..bytes.len()].copy_from_slice(&bytes);
    Ok(u64::from_le_bytes(buf))
}

/// `'0'`/`'1'` per coordinate, lowest first.
pub fn bit_string(word: u64, length: usize) -> String {
    (0..length)
        .map(|i| if (word >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Coefficients `g_0 .. g_deg`.
pub fn poly_bits(p: &BinaryPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    (0..=p.degree() as usize)
        .map(|i| if p.coeff(i) { '1' } else { '0' })
        .collect()
}

#[derive(Serialize)]
pub struct CodeJson {
    pub n: u32,
    pub defining_set: Vec<u32>,
    pub g: String,
    pub extended: bool,
}

impl CodeJson {
    pub fn new(code: &CyclicCode, extended: bool) -> Self {
        Self {
            n: code.n(),
            defining_set: code.defining_set().to_vec(),
            g: poly_bits(code.generator()),
            extended,
        }
    }
}

#[derive(Serialize)]
pub struct LinearCodeJson {
    pub length: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
}

impl LinearCodeJson {
    pub fn new(code: &LinearCode) -> Self {
        Self {
            length: code.length(),
            dimension: code.dimension(),
            basis: code.basis().iter().map(|&w| word_hex(w, code.length())).collect(),
        }
    }
}
