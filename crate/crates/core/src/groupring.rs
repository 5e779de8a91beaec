//! Arithmetic in the 16-element ring R = F2[g] with g^4 = 1, and the maps
//! between length-72 binary vectors and length-18 vectors over R.
//!
//! R is local: h = 1 + g is nilpotent (h^4 = 0) and {1, h, h^2, h^3} is a
//! second basis. An element is a unit exactly when its constant h-basis
//! coefficient is 1, i.e. when its g-basis weight is odd.
//!
//! Binary coordinates follow the block convention: position p (0-based)
//! belongs to slot p/4 with exponent p%4, matching the order-4 automorphism
//! (1,2,3,4)(5,6,7,8)...(69,70,71,72) on 1-based coordinates.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

/// An element of R in the g-basis: bit i is the coefficient of g^i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RingElement(u8);

const fn mul_bits(a: u8, b: u8) -> u8 {
    let mut out = 0u8;
    let mut i = 0;
    while i < 4 {
        if (a >> i) & 1 == 1 {
            let mut j = 0;
            while j < 4 {
                if (b >> j) & 1 == 1 {
                    out ^= 1 << ((i + j) % 4);
                }
                j += 1;
            }
        }
        i += 1;
    }
    out
}

const MUL_TABLE: [[u8; 16]; 16] = {
    let mut table = [[0u8; 16]; 16];
    let mut a = 0;
    while a < 16 {
        let mut b = 0;
        while b < 16 {
            table[a][b] = mul_bits(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    table
};

impl RingElement {
    pub const ZERO: RingElement = RingElement(0b0001 & 0);
    pub const ONE: RingElement = RingElement(0b0001);
    pub const G: RingElement = RingElement(0b0010);
    /// h = 1 + g
    pub const H: RingElement = RingElement(0b0011);

    /// From g-basis coefficients, bit i = coefficient of g^i.
    pub fn from_g_bits(bits: u8) -> Self {
        RingElement(bits & 0xF)
    }

    pub fn g_bits(self) -> u8 {
        self.0
    }

    /// g^i for any i (taken mod 4).
    pub fn g_power(i: usize) -> Self {
        RingElement(1 << (i % 4))
    }

    pub fn add(self, other: RingElement) -> RingElement {
        RingElement(self.0 ^ other.0)
    }

    pub fn mul(self, other: RingElement) -> RingElement {
        RingElement(MUL_TABLE[self.0 as usize][other.0 as usize])
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Units are the elements of odd g-basis weight.
    pub fn is_unit(self) -> bool {
        (self.0.count_ones() & 1) == 1
    }

    pub fn inverse(self) -> Option<RingElement> {
        (0..16u8)
            .map(RingElement)
            .find(|&b| self.mul(b) == RingElement::ONE)
    }

    /// Coefficients over the basis {1, h, h^2, h^3}, bit i = coefficient of h^i.
    pub fn h_bits(self) -> u8 {
        let c = self.0;
        let c0 = c & 1;
        let c1 = (c >> 1) & 1;
        let c2 = (c >> 2) & 1;
        let c3 = (c >> 3) & 1;
        let d3 = c3;
        let d2 = c2 ^ c3;
        let d1 = c1 ^ c3;
        let d0 = c0 ^ c1 ^ c2 ^ c3;
        d0 | (d1 << 1) | (d2 << 2) | (d3 << 3)
    }

    pub fn from_h_bits(bits: u8) -> Self {
        let d = bits & 0xF;
        let d0 = d & 1;
        let d1 = (d >> 1) & 1;
        let d2 = (d >> 2) & 1;
        let d3 = (d >> 3) & 1;
        let c0 = d0 ^ d1 ^ d2 ^ d3;
        let c1 = d1 ^ d3;
        let c2 = d2 ^ d3;
        let c3 = d3;
        RingElement(c0 | (c1 << 1) | (c2 << 2) | (c3 << 3))
    }

    /// The linear map g^i -> g^{-i}.
    pub fn conjugate(self) -> RingElement {
        let c = self.0;
        let swapped = (c & 0b0101) | ((c & 0b0010) << 2) | ((c & 0b1000) >> 2);
        RingElement(swapped)
    }
}

impl fmt::Display for RingElement {
    /// 4-character g-basis bitstring: "1000" = 1, "0100" = g.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            f.write_str(if (self.0 >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

/// A vector with entries in R.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RVector {
    entries: Vec<RingElement>,
}

impl RVector {
    pub fn zeros(len: usize) -> Self {
        RVector { entries: vec![RingElement::ZERO; len] }
    }

    pub fn from_entries(entries: Vec<RingElement>) -> Self {
        RVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> RingElement {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: RingElement) {
        self.entries[i] = value;
    }

    pub fn scale(&self, u: RingElement) -> RVector {
        RVector { entries: self.entries.iter().map(|e| e.mul(u)).collect() }
    }

    pub fn conjugate_entries(&self) -> RVector {
        RVector { entries: self.entries.iter().map(|e| e.conjugate()).collect() }
    }

    /// Debug text form: space-separated 4-character g-basis bitstrings.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Sum of entrywise products. Panics on length mismatch (caller bug).
pub fn r_inner_product(u: &RVector, v: &RVector) -> RingElement {
    assert_eq!(u.len(), v.len(), "r_inner_product: length mismatch");
    u.entries
        .iter()
        .zip(&v.entries)
        .fold(RingElement::ZERO, |acc, (a, b)| acc.add(a.mul(*b)))
}

/// Applies g^power as a coordinate permutation of F2^72 (rotation inside
/// each block of four).
pub fn g_permute(v: &BitVector, power: usize) -> BitVector {
    assert_eq!(v.len() % 4, 0, "g_permute: length must be a multiple of 4");
    let mut out = BitVector::zeros(v.len());
    for q in 0..v.len() {
        if v.get(q) {
            let block = q / 4;
            let exp = (q % 4 + power) % 4;
            out.set(4 * block + exp, true);
        }
    }
    out
}

/// Groups each block of four binary coordinates into one R entry with
/// exponents +i.
pub fn mu(v: &BitVector) -> RVector {
    assert_eq!(v.len(), 72, "mu: expected length 72");
    let mut out = RVector::zeros(18);
    for q in v.iter_ones() {
        let k = q / 4;
        out.set(k, out.get(k).add(RingElement::g_power(q % 4)));
    }
    out
}

/// As [`mu`] but with exponents -i; equals the entrywise conjugate of `mu`.
pub fn mu_prime(v: &BitVector) -> RVector {
    assert_eq!(v.len(), 72, "mu_prime: expected length 72");
    let mut out = RVector::zeros(18);
    for q in v.iter_ones() {
        let k = q / 4;
        out.set(k, out.get(k).add(RingElement::g_power((4 - q % 4) % 4)));
    }
    out
}

/// Inverse of [`mu`]: spreads each R entry back over its coordinate block.
pub fn mu_inverse(w: &RVector) -> BitVector {
    let mut out = BitVector::zeros(4 * w.len());
    for k in 0..w.len() {
        let bits = w.get(k).g_bits();
        for i in 0..4 {
            if (bits >> i) & 1 == 1 {
                out.set(4 * k + i, true);
            }
        }
    }
    out
}

/// The fold (c1+c3, c2+c4, ..., c70+c72) onto 36 coordinates.
pub fn phi(v: &BitVector) -> BitVector {
    assert_eq!(v.len(), 72, "phi: expected length 72");
    let mut out = BitVector::zeros(36);
    for k in 0..18 {
        if v.get(4 * k) ^ v.get(4 * k + 2) {
            out.set(2 * k, true);
        }
        if v.get(4 * k + 1) ^ v.get(4 * k + 3) {
            out.set(2 * k + 1, true);
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("vector is not fixed by g^2: position {position} differs from its pair")]
pub struct NotG2Fixed {
    pub position: usize,
}

/// Keeps one representative of each g^2-identified pair. Errors if the input
/// is not fixed by g^2.
pub fn pi(v: &BitVector) -> Result<BitVector, NotG2Fixed> {
    assert_eq!(v.len(), 72, "pi: expected length 72");
    for k in 0..18 {
        for i in 0..2 {
            if v.get(4 * k + i) != v.get(4 * k + i + 2) {
                return Err(NotG2Fixed { position: 4 * k + i });
            }
        }
    }
    let mut out = BitVector::zeros(36);
    for k in 0..18 {
        if v.get(4 * k) {
            out.set(2 * k, true);
        }
        if v.get(4 * k + 1) {
            out.set(2 * k + 1, true);
        }
    }
    Ok(out)
}

/// A matrix with entries in R, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { rows, cols, entries: vec![RingElement::ZERO; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> RingElement {
        assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: RingElement) {
        assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = value;
    }

    /// Builds the matrix P0 + P1*h + P2*h^2 + P3*h^3 from its h-basis planes.
    pub fn from_h_planes(planes: &[BitMatrix; 4]) -> RMatrix {
        let rows = planes[0].rows();
        let cols = planes[0].cols();
        for p in planes.iter() {
            assert_eq!((p.rows(), p.cols()), (rows, cols), "plane shape mismatch");
        }
        let mut out = RMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut bits = 0u8;
                for (i, p) in planes.iter().enumerate() {
                    if p.get(r, c) {
                        bits |= 1 << i;
                    }
                }
                out.set(r, c, RingElement::from_h_bits(bits));
            }
        }
        out
    }

    /// Coefficient planes over the basis {1, h, h^2, h^3}.
    pub fn h_planes(&self) -> [BitMatrix; 4] {
        let mut planes = [
            BitMatrix::zeros(self.rows, self.cols),
            BitMatrix::zeros(self.rows, self.cols),
            BitMatrix::zeros(self.rows, self.cols),
            BitMatrix::zeros(self.rows, self.cols),
        ];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let bits = self.get(r, c).h_bits();
                for (i, p) in planes.iter_mut().enumerate() {
                    if (bits >> i) & 1 == 1 {
                        p.set(r, c, true);
                    }
                }
            }
        }
        planes
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows, "RMatrix::mul: shape mismatch");
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, cur.add(a.mul(other.get(k, c))));
                }
            }
        }
        out
    }

    pub fn scale_column(&mut self, c: usize, u: RingElement) {
        for r in 0..self.rows {
            let v = self.get(r, c);
            self.set(r, c, v.mul(u));
        }
    }

    /// Returns the matrix with output column `perm[c]` equal to input column `c`.
    pub fn permute_columns(&self, perm: &[usize]) -> RMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = RMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, perm[c], self.get(r, c));
            }
        }
        out
    }

    /// Gauss-Jordan reduction bringing the leading square block to the
    /// identity, i.e. returns P^-1 * self where P is the left rows x rows
    /// block. Pivots must be units of R; returns `None` when the left block
    /// is not invertible.
    pub fn left_systematic(&self) -> Option<RMatrix> {
        let n = self.rows;
        assert!(self.cols >= n);
        let mut work = self.clone();
        for c in 0..n {
            let p = (c..n).find(|&r| work.get(r, c).is_unit())?;
            if p != c {
                for k in 0..work.cols {
                    let a = work.get(c, k);
                    let b = work.get(p, k);
                    work.set(c, k, b);
                    work.set(p, k, a);
                }
            }
            let inv = work.get(c, c).inverse().expect("pivot is a unit");
            for k in 0..work.cols {
                let v = work.get(c, k);
                work.set(c, k, v.mul(inv));
            }
            for r in 0..n {
                if r != c && !work.get(r, c).is_zero() {
                    let factor = work.get(r, c);
                    for k in 0..work.cols {
                        let v = work.get(r, k).add(factor.mul(work.get(c, k)));
                        work.set(r, k, v);
                    }
                }
            }
        }
        Some(work)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_elements() -> impl Iterator<Item = RingElement> {
        (0..16u8).map(RingElement::from_g_bits)
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for a in all_elements() {
            for b in all_elements() {
                assert_eq!(a.mul(b), b.mul(a), "commutativity");
                for c in all_elements() {
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)), "associativity");
                    assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)), "distributivity");
                }
            }
            assert_eq!(a.mul(RingElement::ONE), a);
        }
    }

    #[test]
    fn nilpotency_and_units() {
        let h = RingElement::H;
        let h2 = h.mul(h);
        let h3 = h2.mul(h);
        assert_eq!(h.mul(h3), RingElement::ZERO); // h^4 = 0
        assert_eq!(h2, RingElement::ONE.add(RingElement::G.mul(RingElement::G)));
        assert_eq!(
            RingElement::G.mul(RingElement::g_power(3)),
            RingElement::ONE
        );
        // (1+g)^2 = 1+g^2
        assert_eq!(h.mul(h), RingElement::from_g_bits(0b0101));
        // exactly the odd-weight elements are units, and units have inverses
        for a in all_elements() {
            assert_eq!(a.is_unit(), a.g_bits().count_ones() % 2 == 1);
            assert_eq!(a.inverse().is_some(), a.is_unit());
        }
    }

    #[test]
    fn h_basis_examples_and_round_trip() {
        assert_eq!(RingElement::G.h_bits(), 0b0011); // g = 1 + h
        assert_eq!(RingElement::from_g_bits(0b0100).h_bits(), 0b0101); // g^2 = 1 + h^2
        assert_eq!(RingElement::from_g_bits(0b1000).h_bits(), 0b1111); // g^3 = 1 + h + h^2 + h^3
        for a in all_elements() {
            assert_eq!(RingElement::from_h_bits(a.h_bits()), a);
        }
    }

    #[test]
    fn conjugate_is_ring_automorphism_and_involution() {
        assert_eq!(RingElement::ONE.conjugate(), RingElement::ONE);
        assert_eq!(RingElement::G.conjugate(), RingElement::g_power(3));
        // h -> h + h^2 + h^3
        assert_eq!(RingElement::H.conjugate().h_bits(), 0b1110);
        for a in all_elements() {
            assert_eq!(a.conjugate().conjugate(), a);
            for b in all_elements() {
                assert_eq!(a.mul(b).conjugate(), a.conjugate().mul(b.conjugate()));
                assert_eq!(a.add(b).conjugate(), a.conjugate().add(b.conjugate()));
            }
        }
    }

    fn unit_vector(len: usize, pos: usize) -> BitVector {
        let mut v = BitVector::zeros(len);
        v.set(pos, true);
        v
    }

    fn rand_vector(len: usize, seed: u64) -> BitVector {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(12345);
        let mut v = BitVector::zeros(len);
        for i in 0..len {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    #[test]
    fn mu_examples() {
        let e1 = unit_vector(72, 0);
        let w = mu(&e1);
        assert_eq!(w.get(0), RingElement::ONE);
        assert!((1..18).all(|k| w.get(k).is_zero()));

        let e2 = unit_vector(72, 1);
        assert_eq!(mu(&e2).get(0), RingElement::G);
        assert_eq!(mu_prime(&e2).get(0), RingElement::g_power(3));

        let mut ones = BitVector::zeros(72);
        for i in 0..72 {
            ones.set(i, true);
        }
        let w = mu(&ones);
        for k in 0..18 {
            assert_eq!(w.get(k), RingElement::from_g_bits(0b1111));
        }
    }

    #[test]
    fn mu_prime_is_conjugate_of_mu() {
        for s in 0..50 {
            let v = rand_vector(72, s);
            assert_eq!(mu_prime(&v), mu(&v).conjugate_entries());
        }
    }

    #[test]
    fn mu_round_trip() {
        for s in 0..200 {
            let v = rand_vector(72, s);
            assert_eq!(mu_inverse(&mu(&v)), v);
        }
        assert_eq!(mu_inverse(&RVector::zeros(18)), BitVector::zeros(72));
        assert_eq!(mu_inverse(&mu(&unit_vector(72, 0))), unit_vector(72, 0));
    }

    #[test]
    fn mu_intertwines_g() {
        for s in 0..50 {
            let v = rand_vector(72, s);
            let lhs = mu(&g_permute(&v, 1));
            let rhs = mu(&v).scale(RingElement::G);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_examples() {
        let mut v = BitVector::zeros(72);
        v.set(0, true);
        v.set(2, true);
        assert!(phi(&v).is_zero());

        assert_eq!(phi(&unit_vector(72, 0)), unit_vector(36, 0));

        let mut ones = BitVector::zeros(72);
        for i in 0..72 {
            ones.set(i, true);
        }
        assert!(phi(&ones).is_zero());
    }

    #[test]
    fn phi_vanishes_on_g2_fixed_vectors() {
        for s in 0..50 {
            let half = rand_vector(72, s);
            // symmetrize: v + g^2 v is fixed by g^2
            let v = half.add(&g_permute(&half, 2));
            assert_eq!(g_permute(&v, 2), v);
            assert!(phi(&v).is_zero());
        }
    }

    #[test]
    fn pi_examples() {
        let mut v = BitVector::zeros(72);
        for i in 0..4 {
            v.set(i, true);
        }
        let mut expected = BitVector::zeros(36);
        expected.set(0, true);
        expected.set(1, true);
        assert_eq!(pi(&v).unwrap(), expected);

        assert_eq!(pi(&BitVector::zeros(72)).unwrap(), BitVector::zeros(36));

        let mut alt = BitVector::zeros(72);
        for k in 0..18 {
            alt.set(4 * k, true);
            alt.set(4 * k + 2, true);
        }
        let folded = pi(&alt).unwrap();
        for k in 0..18 {
            assert!(folded.get(2 * k));
            assert!(!folded.get(2 * k + 1));
        }

        assert_eq!(pi(&unit_vector(72, 0)), Err(NotG2Fixed { position: 0 }));
    }

    #[test]
    fn inner_product_examples() {
        let zero = RVector::zeros(5);
        let mut w = RVector::zeros(5);
        w.set(2, RingElement::H);
        assert_eq!(r_inner_product(&w, &zero), RingElement::ZERO);

        let h3 = RingElement::H.mul(RingElement::H).mul(RingElement::H);
        let u = RVector::from_entries(vec![RingElement::ONE]);
        let v = RVector::from_entries(vec![h3]);
        assert_eq!(r_inner_product(&u, &v), h3);
    }

    #[test]
    fn orthogonality_equivalence_sample() {
        // <mu(u), mu'(v)> = 0 iff u is orthogonal to g^i v for i = 0..3
        for s in 0..500 {
            let u = rand_vector(72, 2 * s);
            let v = rand_vector(72, 2 * s + 1);
            let lhs = r_inner_product(&mu(&u), &mu_prime(&v)).is_zero();
            let rhs = (0..4).all(|i| !u.dot(&g_permute(&v, i)));
            assert_eq!(lhs, rhs, "seed {s}");
        }
    }

    #[test]
    fn left_systematic_reduces_unit_block() {
        // [I + B1 h | A]-shaped matrices always reduce; here a small variant
        let mut m = RMatrix::zeros(2, 4);
        m.set(0, 0, RingElement::H.add(RingElement::ONE));
        m.set(0, 1, RingElement::H);
        m.set(1, 1, RingElement::ONE);
        m.set(0, 2, RingElement::G);
        m.set(1, 3, RingElement::ONE);
        let red = m.left_systematic().expect("invertible left block");
        assert_eq!(red.get(0, 0), RingElement::ONE);
        assert_eq!(red.get(0, 1), RingElement::ZERO);
        assert_eq!(red.get(1, 0), RingElement::ZERO);
        assert_eq!(red.get(1, 1), RingElement::ONE);

        // all-h left block is not invertible (h is not a unit)
        let mut bad = RMatrix::zeros(1, 2);
        bad.set(0, 0, RingElement::H);
        assert!(bad.left_systematic().is_none());
    }

    #[test]
    fn h_planes_round_trip() {
        let planes = [
            BitMatrix::identity(3),
            BitMatrix::from_rows_str(&["010", "001", "100"]),
            BitMatrix::zeros(3, 3),
            BitMatrix::from_rows_str(&["111", "000", "101"]),
        ];
        let m = RMatrix::from_h_planes(&planes);
        assert_eq!(m.h_planes(), planes);
    }
}
