//! Candidate code construction: completes the parameter matrices B2 and B3
//! from their 36 free upper-triangle bits each, assembles the 9x18 generator
//! over R and its 36x72 binary expansion, and verifies self-duality and
//! doubly-evenness.
//!
//! A candidate is determined by four 9x9 binary matrices (B1, B2, B3, A)
//! subject to:
//!   (i)   A * A^T = I
//!   (ii)  B1^T = B1
//!   (iii) B2 + B2^T = B1^2 + B1
//!   (iv)  B3 + B3^T = B2*B1 + B1*B2 + B1^3 + B1
//! together with a forced B3 diagonal that makes the expanded code
//! doubly-even. (iii) pins B2 below the diagonal once the diagonal is fixed
//! to zero, and (iv) plus the diagonal rule pin B3 on and below the diagonal,
//! leaving exactly 36 + 36 free bits.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::groupring::{RMatrix, RingElement};

/// Number of free bits in each of the two parameter vectors.
pub const PARAM_BITS: usize = 36;

/// Strict-upper-triangle cells of a 9x9 matrix in row-major order; entry k
/// is the 0-based (row, col) cell of parameter k+1.
pub const PARAM_CELLS: [(usize, usize); PARAM_BITS] = {
    let mut cells = [(0usize, 0usize); PARAM_BITS];
    let mut k = 0;
    let mut i = 0;
    while i < 9 {
        let mut j = i + 1;
        while j < 9 {
            cells[k] = (i, j);
            k += 1;
            j += 1;
        }
        i += 1;
    }
    cells
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamHexError {
    #[error("parameter value {0:?} is not 1-9 hex digits")]
    BadFormat(String),
    #[error("parameter value {0:#x} does not fit in 36 bits")]
    OutOfRange(u64),
}

/// 36 bits selecting the strict upper triangle of B2 (the X parameters) or
/// B3 (the Y parameters). Bit k-1 of `bits` is parameter x_k / y_k.
///
/// The external integer form (hex output, lexicographic orbit order) puts
/// parameter 1 in the most significant of 36 bits; this fixes checkpoint
/// and orbit-label compatibility.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ParamVector {
    bits: u64,
}

impl ParamVector {
    pub const ZERO: ParamVector = ParamVector { bits: 0 };

    /// From the internal bit layout (bit k-1 = parameter k).
    pub fn from_bits(bits: u64) -> Self {
        assert_eq!(bits >> PARAM_BITS, 0, "ParamVector: more than 36 bits");
        ParamVector { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Single parameter set, `k` 0-based.
    pub fn unit(k: usize) -> Self {
        assert!(k < PARAM_BITS);
        ParamVector { bits: 1 << k }
    }

    pub fn get(self, k: usize) -> bool {
        assert!(k < PARAM_BITS);
        (self.bits >> k) & 1 == 1
    }

    pub fn flip(self, k: usize) -> Self {
        assert!(k < PARAM_BITS);
        ParamVector { bits: self.bits ^ (1 << k) }
    }

    pub fn xor(self, other: ParamVector) -> Self {
        ParamVector { bits: self.bits ^ other.bits }
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn iter_ones(self) -> impl Iterator<Item = usize> {
        (0..PARAM_BITS).filter(move |&k| (self.bits >> k) & 1 == 1)
    }

    /// The 36-bit integer with parameter 1 as the most significant bit.
    /// Ordering by this key is the orbit-canonical order.
    pub fn lex_key(self) -> u64 {
        self.bits.reverse_bits() >> (64 - PARAM_BITS)
    }

    pub fn from_lex_key(key: u64) -> Self {
        assert_eq!(key >> PARAM_BITS, 0, "ParamVector: key exceeds 36 bits");
        ParamVector { bits: (key << (64 - PARAM_BITS)).reverse_bits() }
    }

    /// Nine lowercase hex digits of the lexicographic key.
    pub fn to_hex(self) -> String {
        format!("{:09x}", self.lex_key())
    }

    pub fn from_hex(s: &str) -> Result<Self, ParamHexError> {
        if s.is_empty() || s.len() > 9 || !s.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(ParamHexError::BadFormat(s.to_string()));
        }
        let key = u64::from_str_radix(s, 16).map_err(|_| ParamHexError::BadFormat(s.to_string()))?;
        if key >> PARAM_BITS != 0 {
            return Err(ParamHexError::OutOfRange(key));
        }
        Ok(Self::from_lex_key(key))
    }

    /// As a 36-bit row vector, index k-1 = parameter k.
    pub fn to_bit_vector(self) -> BitVector {
        let mut v = BitVector::zeros(PARAM_BITS);
        for k in self.iter_ones() {
            v.set(k, true);
        }
        v
    }

    pub fn from_bit_vector(v: &BitVector) -> Self {
        assert_eq!(v.len(), PARAM_BITS);
        let mut bits = 0u64;
        for k in v.iter_ones() {
            bits |= 1 << k;
        }
        ParamVector { bits }
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamVector({})", self.to_hex())
    }
}

/// The four structure matrices of one candidate code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureParams {
    pub b1: BitMatrix,
    pub b2: BitMatrix,
    pub b3: BitMatrix,
    pub a: BitMatrix,
}

/// Outcome of checking the four structure conditions independently.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConditionReport {
    pub a_orthogonal: bool,
    pub b1_symmetric: bool,
    pub b2_relation: bool,
    pub b3_relation: bool,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.a_orthogonal && self.b1_symmetric && self.b2_relation && self.b3_relation
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |b: bool| if b { "ok" } else { "FAIL" };
        write!(
            f,
            "A orthogonal: {}, B1 symmetric: {}, B2 relation: {}, B3 relation: {}",
            t(self.a_orthogonal),
            t(self.b1_symmetric),
            t(self.b2_relation),
            t(self.b3_relation)
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodegenError {
    #[error("matrix has shape {rows}x{cols}, expected 9x9")]
    BadShape { rows: usize, cols: usize },
    #[error("B1 is not symmetric")]
    B1NotSymmetric,
    #[error("A is not orthogonal")]
    ANotOrthogonal,
    #[error("B1^2 + B1 has a nonzero diagonal entry at row {0}; no valid B2 exists")]
    DiagCorollaryFailed(usize),
    #[error("structure conditions violated ({0})")]
    ConditionsViolated(ConditionReport),
    #[error("diagonal of B2*B1 + B1*B2 + B1^3 + B1 is nonzero at row {0}; no valid B3 exists")]
    DiagonalObstruction(usize),
}

fn require_9x9(m: &BitMatrix) -> Result<(), CodegenError> {
    if m.rows() != 9 || m.cols() != 9 {
        return Err(CodegenError::BadShape { rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

/// Checks conditions (i)-(iv) independently and reports each.
pub fn check_conditions(p: &StructureParams) -> ConditionReport {
    let i9 = BitMatrix::identity(9);
    let a_orthogonal = p.a.mul_transpose(&p.a) == i9;
    let b1_symmetric = p.b1.is_symmetric();
    let b1sq = p.b1.mul(&p.b1);
    let b2_relation = p.b2.add(&p.b2.transpose()) == b1sq.add(&p.b1);
    let rhs4 = p
        .b2
        .mul(&p.b1)
        .add(&p.b1.mul(&p.b2))
        .add(&b1sq.mul(&p.b1))
        .add(&p.b1);
    let b3_relation = p.b3.add(&p.b3.transpose()) == rhs4;
    ConditionReport { a_orthogonal, b1_symmetric, b2_relation, b3_relation }
}

/// True iff every diagonal entry of B1^2 + B1 is zero. A B1 failing this
/// admits no B2 satisfying condition (iii) with zero diagonal.
pub fn check_diag_corollary(b1: &BitMatrix) -> bool {
    let s = b1.mul(b1).add(b1);
    (0..9).all(|i| !s.get(i, i))
}

/// Completes B2 from its 36 free upper-triangle bits: zero diagonal, upper
/// triangle from `x`, lower triangle forced by condition (iii).
pub fn complete_b2(b1: &BitMatrix, x: ParamVector) -> Result<BitMatrix, CodegenError> {
    require_9x9(b1)?;
    if !b1.is_symmetric() {
        return Err(CodegenError::B1NotSymmetric);
    }
    let s = b1.mul(b1).add(b1);
    if let Some(i) = (0..9).find(|&i| s.get(i, i)) {
        return Err(CodegenError::DiagCorollaryFailed(i));
    }
    let mut b2 = BitMatrix::zeros(9, 9);
    for (k, &(i, j)) in PARAM_CELLS.iter().enumerate() {
        let upper = x.get(k);
        if upper {
            b2.set(i, j, true);
        }
        if upper ^ s.get(i, j) {
            b2.set(j, i, true);
        }
    }
    Ok(b2)
}

/// The forced B3 diagonal: entry i is
/// (1 + wt(A[i]))/2 + B2[i,i] + sum_j (B1[i,j] + 1) * B2[i,j]  (mod 2).
fn doubly_even_diagonal(b1: &BitMatrix, b2: &BitMatrix, a: &BitMatrix) -> [bool; 9] {
    let mut diag = [false; 9];
    for (i, d) in diag.iter_mut().enumerate() {
        let wa = a.row_weight(i);
        debug_assert_eq!(wa % 2, 1, "orthogonal A must have odd row weights");
        let half = ((1 + wa) / 2) % 2 == 1;
        let b1row = b1.row(i);
        let b2row = b2.row(i);
        let cross = b1row.dot(&b2row);
        let wt_b2 = b2row.weight() % 2 == 1;
        *d = half ^ b2.get(i, i) ^ cross ^ wt_b2;
    }
    diag
}

/// Completes B3 from its 36 free upper-triangle bits: upper triangle from
/// `y`, lower triangle forced by condition (iv), diagonal forced by the
/// doubly-even rule.
pub fn complete_b3(
    b1: &BitMatrix,
    b2: &BitMatrix,
    a: &BitMatrix,
    y: ParamVector,
) -> Result<BitMatrix, CodegenError> {
    require_9x9(b1)?;
    require_9x9(b2)?;
    require_9x9(a)?;
    if !b1.is_symmetric() {
        return Err(CodegenError::B1NotSymmetric);
    }
    if a.mul_transpose(a) != BitMatrix::identity(9) {
        return Err(CodegenError::ANotOrthogonal);
    }
    let b1sq = b1.mul(b1);
    if b2.add(&b2.transpose()) != b1sq.add(b1) {
        let report = check_conditions(&StructureParams {
            b1: b1.clone(),
            b2: b2.clone(),
            b3: BitMatrix::zeros(9, 9),
            a: a.clone(),
        });
        return Err(CodegenError::ConditionsViolated(report));
    }
    let w = b2.mul(b1).add(&b1.mul(b2)).add(&b1sq.mul(b1)).add(b1);
    if let Some(i) = (0..9).find(|&i| w.get(i, i)) {
        return Err(CodegenError::DiagonalObstruction(i));
    }
    let mut b3 = BitMatrix::zeros(9, 9);
    for (i, d) in doubly_even_diagonal(b1, b2, a).iter().enumerate() {
        if *d {
            b3.set(i, i, true);
        }
    }
    for (k, &(i, j)) in PARAM_CELLS.iter().enumerate() {
        let upper = y.get(k);
        if upper {
            b3.set(i, j, true);
        }
        if upper ^ w.get(i, j) {
            b3.set(j, i, true);
        }
    }
    Ok(b3)
}

impl StructureParams {
    /// Builds a full candidate from a (B1, A) pair and the 72 free bits.
    pub fn from_parameters(
        b1: &BitMatrix,
        a: &BitMatrix,
        x: ParamVector,
        y: ParamVector,
    ) -> Result<StructureParams, CodegenError> {
        let b2 = complete_b2(b1, x)?;
        let b3 = complete_b3(b1, &b2, a, y)?;
        Ok(StructureParams { b1: b1.clone(), b2, b3, a: a.clone() })
    }

    /// Serializes as four blocks in the shared matrix text format, separated
    /// by blank lines, order B1, B2, B3, A.
    pub fn to_text(&self) -> String {
        [&self.b1, &self.b2, &self.b3, &self.a]
            .iter()
            .map(|m| m.to_text())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parses the four-block text form written by [`Self::to_text`].
    pub fn from_text(text: &str) -> Result<StructureParams, crate::gf2::ParseError> {
        let blocks: Vec<&str> = text.split("\n\n").collect();
        if blocks.len() != 4 {
            return Err(crate::gf2::ParseError::BadHeader(format!(
                "expected 4 blank-line-separated blocks, found {}",
                blocks.len()
            )));
        }
        Ok(StructureParams {
            b1: BitMatrix::from_text(blocks[0])?,
            b2: BitMatrix::from_text(blocks[1])?,
            b3: BitMatrix::from_text(blocks[2])?,
            a: BitMatrix::from_text(blocks[3])?,
        })
    }
}

fn ensure_conditions(p: &StructureParams) -> Result<(), CodegenError> {
    let report = check_conditions(p);
    if report.all_hold() {
        Ok(())
    } else {
        Err(CodegenError::ConditionsViolated(report))
    }
}

/// The 9x18 generator [I + B1 h + B2 h^2 + B3 h^3 | A] over R.
pub fn r_generator(p: &StructureParams) -> Result<RMatrix, CodegenError> {
    ensure_conditions(p)?;
    let mut out = RMatrix::zeros(9, 18);
    for r in 0..9 {
        for c in 0..9 {
            let mut h_bits = 0u8;
            if r == c {
                h_bits |= 1;
            }
            if p.b1.get(r, c) {
                h_bits |= 1 << 1;
            }
            if p.b2.get(r, c) {
                h_bits |= 1 << 2;
            }
            if p.b3.get(r, c) {
                h_bits |= 1 << 3;
            }
            out.set(r, c, RingElement::from_h_bits(h_bits));
            if p.a.get(r, c) {
                out.set(r, 9 + c, RingElement::ONE);
            }
        }
    }
    Ok(out)
}

fn assemble_expansion(p: &StructureParams) -> BitMatrix {
    let i9 = BitMatrix::identity(9);
    let b1 = &p.b1;
    let b2 = &p.b2;
    let b3 = &p.b3;
    let a = &p.a;
    let z = BitMatrix::zeros(9, 9);

    let b1b2 = b1.add(b2);
    let blocks: [[&BitMatrix; 8]; 4] = [
        [
            &i9.add(&b1b2).add(b3),
            &b1.add(b3),
            &b2.add(b3),
            b3,
            a,
            &z,
            &z,
            &z,
        ],
        [&i9.add(&b1b2), &i9.add(b2), &b1b2, b2, a, a, &z, &z],
        [&i9.add(b1), b1, &i9.add(b1), b1, a, &z, a, &z],
        [&i9, &i9, &i9, &i9, a, a, a, a],
    ];
    let mut out = BitMatrix::zeros(36, 72);
    for (br, row) in blocks.iter().enumerate() {
        for (bc, block) in row.iter().enumerate() {
            out.set_block(9 * br, 9 * bc, block);
        }
    }
    out
}

/// The 36x72 binary generator matrix, columns grouped by g-power plane:
/// four 9-column groups expanding the left R-block, then four groups of
/// A-copies. See [`plane_to_cyclic_72`] for the map back to the cyclic
/// coordinate order.
pub fn expand_binary(p: &StructureParams) -> Result<BitMatrix, CodegenError> {
    ensure_conditions(p)?;
    Ok(assemble_expansion(p))
}

/// The 27x72 generator of the B3-independent subcode (the left R-block
/// multiplied by h, h^2, h^3): block rows 2-4 of the full expansion.
pub fn subcode_d(b1: &BitMatrix, b2: &BitMatrix, a: &BitMatrix) -> Result<BitMatrix, CodegenError> {
    let p = StructureParams {
        b1: b1.clone(),
        b2: b2.clone(),
        b3: BitMatrix::zeros(9, 9),
        a: a.clone(),
    };
    let report = check_conditions(&p);
    if !(report.a_orthogonal && report.b1_symmetric && report.b2_relation) {
        return Err(CodegenError::ConditionsViolated(report));
    }
    let full = assemble_expansion(&p);
    let mut out = BitMatrix::zeros(27, 72);
    for r in 0..27 {
        out.set_row(r, &full.row(9 + r));
    }
    Ok(out)
}

/// True iff the rows generate a self-dual code: rank n/2 and G * G^T = 0.
pub fn is_self_dual(g: &BitMatrix) -> bool {
    if g.cols() % 2 != 0 {
        return false;
    }
    g.mul_transpose(g).is_zero() && g.rank() * 2 == g.cols()
}

/// True iff every generator row has weight divisible by 4 and all row pairs
/// are orthogonal; by the mod-4 weight congruence this makes every codeword
/// weight divisible by 4.
pub fn is_doubly_even(g: &BitMatrix) -> bool {
    for r in 0..g.rows() {
        if g.row_weight(r) % 4 != 0 {
            return false;
        }
    }
    g.mul_transpose(g).is_zero()
}

/// The 18x36 generator of the folded code: [I2 (x) I + J2 (x) B1 | I2 (x) A],
/// columns plane-grouped like [`expand_binary`].
pub fn phi_code(b1: &BitMatrix, a: &BitMatrix) -> BitMatrix {
    let i9 = BitMatrix::identity(9);
    let z = BitMatrix::zeros(9, 9);
    let ib1 = i9.add(b1);
    let blocks: [[&BitMatrix; 4]; 2] = [[&ib1, b1, a, &z], [b1, &ib1, &z, a]];
    let mut out = BitMatrix::zeros(18, 36);
    for (br, row) in blocks.iter().enumerate() {
        for (bc, block) in row.iter().enumerate() {
            out.set_block(9 * br, 9 * bc, block);
        }
    }
    out
}

/// Permutation sending the plane-grouped 72-column layout of
/// [`expand_binary`] to the cyclic blocks-of-four coordinate order the
/// automorphism acts on: plane index 9*i + s (left half, slot s, power i)
/// maps to 4*s + i, and 36 + 9*i + s (right half) to 36 + 4*s + i.
pub fn plane_to_cyclic_72() -> [usize; 72] {
    let mut perm = [0usize; 72];
    for i in 0..4 {
        for s in 0..9 {
            perm[9 * i + s] = 4 * s + i;
            perm[36 + 9 * i + s] = 36 + 4 * s + i;
        }
    }
    perm
}

/// Same map for the folded 36-column layout of [`phi_code`], with planes of
/// size 2 instead of 4.
pub fn plane_to_cyclic_36() -> [usize; 36] {
    let mut perm = [0usize; 36];
    for i in 0..2 {
        for s in 0..9 {
            perm[9 * i + s] = 2 * s + i;
            perm[18 + 9 * i + s] = 18 + 2 * s + i;
        }
    }
    perm
}

/// Precomputed context for expanding many Y values over a fixed (B1, B2, A):
/// the Y = 0 expansion plus, per parameter bit, the two affected rows and
/// their XOR patterns.
pub struct ExpandContext {
    b1: BitMatrix,
    b2: BitMatrix,
    a: BitMatrix,
    base: BitMatrix,
    row_updates: [(usize, BitVector, usize, BitVector); PARAM_BITS],
}

impl ExpandContext {
    pub fn new(b1: &BitMatrix, a: &BitMatrix, x: ParamVector) -> Result<Self, CodegenError> {
        let b2 = complete_b2(b1, x)?;
        Self::from_parts(b1, &b2, a)
    }

    pub fn from_parts(b1: &BitMatrix, b2: &BitMatrix, a: &BitMatrix) -> Result<Self, CodegenError> {
        let b3 = complete_b3(b1, b2, a, ParamVector::ZERO)?;
        let p = StructureParams { b1: b1.clone(), b2: b2.clone(), b3, a: a.clone() };
        let base = expand_binary(&p)?;
        // Flipping parameter bit k toggles B3[i,j] and B3[j,i]; B3 enters all
        // four left column groups of block row 1 only, so rows i and j each
        // pick up a 4-column pattern.
        let row_updates = std::array::from_fn(|k| {
            let (i, j) = PARAM_CELLS[k];
            let mut pat_i = BitVector::zeros(72);
            let mut pat_j = BitVector::zeros(72);
            for group in 0..4 {
                pat_i.set(9 * group + j, true);
                pat_j.set(9 * group + i, true);
            }
            (i, pat_i, j, pat_j)
        });
        Ok(ExpandContext { b1: b1.clone(), b2: b2.clone(), a: a.clone(), base, row_updates })
    }

    pub fn b1(&self) -> &BitMatrix {
        &self.b1
    }

    pub fn b2(&self) -> &BitMatrix {
        &self.b2
    }

    pub fn a(&self) -> &BitMatrix {
        &self.a
    }

    /// The expansion at Y = 0.
    pub fn base(&self) -> &BitMatrix {
        &self.base
    }

    /// Expansion at an arbitrary Y, built from the base by row XORs.
    pub fn expand(&self, y: ParamVector) -> BitMatrix {
        let mut out = self.base.clone();
        self.xor_into(&mut out, y);
        out
    }

    /// XORs the difference pattern of the given parameter bits into `m`.
    pub fn xor_into(&self, m: &mut BitMatrix, y: ParamVector) {
        for k in y.iter_ones() {
            let (i, pat_i, j, pat_j) = &self.row_updates[k];
            let mut row = m.row(*i);
            row.add_assign(pat_i);
            m.set_row(*i, &row);
            let mut row = m.row(*j);
            row.add_assign(pat_j);
            m.set_row(*j, &row);
        }
    }

    /// The full structure tuple at a given Y.
    pub fn params(&self, y: ParamVector) -> StructureParams {
        let b3 = complete_b3(&self.b1, &self.b2, &self.a, y).expect("validated in constructor");
        StructureParams {
            b1: self.b1.clone(),
            b2: self.b2.clone(),
            b3,
            a: self.a.clone(),
        }
    }
}
