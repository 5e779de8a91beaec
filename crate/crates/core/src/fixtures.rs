//! The three seed (B1, A) pairs, embedded as source constants, plus parsing
//! of externally supplied code files in the shared matrix text format.
//!
//! Exactly three of the 41 self-dual [36,18,8] codes admit a compatible
//! pairing; they are entries C4, C12, and C19 of the standard online database
//! of self-dual codes. The embedded matrices are the published ones; the
//! source labels record the correspondence but the exact coordinate
//! reordering used to produce them is not published, so the link is
//! documented rather than verified here.

use std::path::Path;

use thiserror::Error;

use crate::codegen::{check_diag_corollary, is_self_dual, phi_code};
use crate::gf2::{BitMatrix, ParseError};
use crate::oracle;

/// One embedded (B1, A) seed pair.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: u8,
    pub b1: BitMatrix,
    pub a: BitMatrix,
    pub source_code_label: &'static str,
}

// The second pair's left matrix is labelled "A^(2)" in both the first and
// second published pairs; the first occurrence is taken to be A^(1).
const B1_1: [&str; 9] = [
    "010000010",
    "100000010",
    "000001100",
    "000001010",
    "000000011",
    "001100110",
    "001001011",
    "110111100",
    "000010100",
];

const A_1: [&str; 9] = [
    "010010001",
    "011101111",
    "101000100",
    "111000011",
    "001110101",
    "010111010",
    "110000111",
    "000010011",
    "001011101",
];

const B1_2: [&str; 9] = [
    "001011100",
    "001010011",
    "110111111",
    "001011111",
    "111101001",
    "101110101",
    "101101011",
    "011100100",
    "011111100",
];

const A_2: [&str; 9] = [
    "011010011",
    "011011010",
    "011001011",
    "101011111",
    "110000010",
    "101111011",
    "101100110",
    "111000000",
    "000111101",
];

const B1_3: [&str; 9] = [
    "000000101",
    "001011001",
    "010010000",
    "000010010",
    "011101000",
    "010010000",
    "100000010",
    "000100100",
    "110000000",
];

const A_3: [&str; 9] = [
    "001111100",
    "100011011",
    "011011100",
    "011111011",
    "010100111",
    "101001011",
    "101010000",
    "000001110",
    "000001101",
];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("fixture id {0} out of range, expected 1, 2, or 3")]
pub struct FixtureIdError(pub u8);

/// Returns the embedded pair for `j` in {1, 2, 3}. Referentially
/// transparent: the same bits on every call.
pub fn load_fixture(j: u8) -> Result<Fixture, FixtureIdError> {
    let (b1, a, label) = match j {
        1 => (&B1_1, &A_1, "C4"),
        2 => (&B1_2, &A_2, "C12"),
        3 => (&B1_3, &A_3, "C19"),
        _ => return Err(FixtureIdError(j)),
    };
    Ok(Fixture {
        id: j,
        b1: BitMatrix::from_rows_str(b1),
        a: BitMatrix::from_rows_str(a),
        source_code_label: label,
    })
}

pub fn all_fixtures() -> [Fixture; 3] {
    [
        load_fixture(1).unwrap(),
        load_fixture(2).unwrap(),
        load_fixture(3).unwrap(),
    ]
}

/// Per-fixture validation outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureReport {
    pub b1_symmetric: bool,
    pub b1_zero_diagonal: bool,
    pub a_orthogonal: bool,
    pub diag_corollary: bool,
    pub phi_self_dual: bool,
    pub phi_min_distance: usize,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.b1_symmetric
            && self.b1_zero_diagonal
            && self.a_orthogonal
            && self.diag_corollary
            && self.phi_self_dual
            && self.phi_min_distance == 8
    }
}

/// Checks every published property of a fixture, including the exhaustive
/// minimum distance of its folded 18-dimensional code.
pub fn verify_fixture(f: &Fixture) -> FixtureReport {
    let phi = phi_code(&f.b1, &f.a);
    FixtureReport {
        b1_symmetric: f.b1.is_symmetric(),
        b1_zero_diagonal: (0..9).all(|i| !f.b1.get(i, i)),
        a_orthogonal: f.a.mul_transpose(&f.a) == BitMatrix::identity(9),
        diag_corollary: check_diag_corollary(&f.b1),
        phi_self_dual: is_self_dual(&phi),
        phi_min_distance: oracle::exhaustive_min_weight(&phi),
    }
}

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

/// Reads a generator matrix from a file in the shared text format.
pub fn parse_code_file(path: &Path) -> Result<BitMatrix, CodeFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| CodeFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    BitMatrix::from_text(&text).map_err(|source| CodeFileError::Parse {
        path: path.display().to_string(),
        source,
    })
}
