//! Frozen component ordering for the dynamical vectors.
//!
//! The closed 8-component block tracks, in this order,
//!
//! ```text
//! k:        1     2     3     4     5     6     7     8
//! density:  r11   r33   r13   r31   r22   r44   r24   r42
//! operator: |1><1| |3><3| |3><1| |1><3| |2><2| |4><4| |4><2| |2><4|
//! ```
//!
//! (0-based in code). The full 16-component vector appends the remaining
//! coherences `(r12, r21, r14, r41, r23, r32, r34, r43)`. Transfer-matrix
//! element names like `f12` or `f52` are 1-based row/column pairs relative
//! to this ordering and are meaningful only against it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub const DIM8: usize = 8;
pub const DIM16: usize = 16;

/// 0-based slot indices of the closed block and its extension.
pub mod slot {
    pub const RHO11: usize = 0;
    pub const RHO33: usize = 1;
    pub const RHO13: usize = 2;
    pub const RHO31: usize = 3;
    pub const RHO22: usize = 4;
    pub const RHO44: usize = 5;
    pub const RHO24: usize = 6;
    pub const RHO42: usize = 7;
    pub const RHO12: usize = 8;
    pub const RHO21: usize = 9;
    pub const RHO14: usize = 10;
    pub const RHO41: usize = 11;
    pub const RHO23: usize = 12;
    pub const RHO32: usize = 13;
    pub const RHO34: usize = 14;
    pub const RHO43: usize = 15;
}

/// Density-matrix indices `(i, j)` (1-based atomic states) carried by each
/// vector slot: slot k holds `rho_ij`.
pub const DENSITY_INDICES: [(usize, usize); DIM16] = [
    (1, 1),
    (3, 3),
    (1, 3),
    (3, 1),
    (2, 2),
    (4, 4),
    (2, 4),
    (4, 2),
    (1, 2),
    (2, 1),
    (1, 4),
    (4, 1),
    (2, 3),
    (3, 2),
    (3, 4),
    (4, 3),
];

/// Slots holding populations; the sum over them is the conserved trace.
pub const POPULATION_SLOTS: [usize; 4] = [slot::RHO11, slot::RHO33, slot::RHO22, slot::RHO44];

/// Slot of the conjugate component: `rho_ji` for the slot holding `rho_ij`.
pub fn conjugate_slot(k: usize) -> usize {
    match k {
        slot::RHO13 => slot::RHO31,
        slot::RHO31 => slot::RHO13,
        slot::RHO24 => slot::RHO42,
        slot::RHO42 => slot::RHO24,
        slot::RHO12 => slot::RHO21,
        slot::RHO21 => slot::RHO12,
        slot::RHO14 => slot::RHO41,
        slot::RHO41 => slot::RHO14,
        slot::RHO23 => slot::RHO32,
        slot::RHO32 => slot::RHO23,
        slot::RHO34 => slot::RHO43,
        slot::RHO43 => slot::RHO34,
        other => other,
    }
}

pub fn component_label(k: usize) -> &'static str {
    const LABELS: [&str; DIM16] = [
        "rho11", "rho33", "rho13", "rho31", "rho22", "rho44", "rho24", "rho42", "rho12", "rho21",
        "rho14", "rho41", "rho23", "rho32", "rho34", "rho43",
    ];
    LABELS[k]
}

/// Left functional annihilated by the generator: 1 on population slots.
pub fn trace_functional(dim: usize) -> DVector<Complex64> {
    let mut w = DVector::zeros(dim);
    for &k in &POPULATION_SLOTS {
        w[k] = Complex64::new(1.0, 0.0);
    }
    w
}

/// The operator `|a><b|` whose expectation the k-th slot tracks
/// (`<|a><b|> = rho_ba`), as a 4x4 matrix.
pub fn slot_operator(k: usize) -> DMatrix<Complex64> {
    let (i, j) = DENSITY_INDICES[k];
    // slot holds rho_ij = <|j><i|>
    let mut op = DMatrix::zeros(4, 4);
    op[(j - 1, i - 1)] = Complex64::new(1.0, 0.0);
    op
}

/// Pack a 4x4 density matrix into the 16-component ordering.
pub fn density_to_vector(rho: &DMatrix<Complex64>) -> DVector<Complex64> {
    assert_eq!(rho.nrows(), 4);
    assert_eq!(rho.ncols(), 4);
    let mut v = DVector::zeros(DIM16);
    for (k, &(i, j)) in DENSITY_INDICES.iter().enumerate() {
        v[k] = rho[(i - 1, j - 1)];
    }
    v
}

/// Unpack a 16-component vector into the 4x4 density matrix.
pub fn vector_to_density(v: &DVector<Complex64>) -> DMatrix<Complex64> {
    assert_eq!(v.len(), DIM16);
    let mut rho = DMatrix::zeros(4, 4);
    for (k, &(i, j)) in DENSITY_INDICES.iter().enumerate() {
        rho[(i - 1, j - 1)] = v[k];
    }
    rho
}

/// Unit vector on the given slot.
pub fn basis_state(dim: usize, k: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(dim);
    v[k] = Complex64::new(1.0, 0.0);
    v
}

/// Population sum of a state vector in either ordering.
pub fn population_sum(v: &DVector<Complex64>) -> Complex64 {
    POPULATION_SLOTS.iter().map(|&k| v[k]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_round_trip() {
        let mut rho = DMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] = Complex64::new((i + 1) as f64, (j as f64) - 1.5);
            }
        }
        let back = vector_to_density(&density_to_vector(&rho));
        assert_eq!(rho, back);
    }

    #[test]
    fn conjugate_slots_are_involutive() {
        for k in 0..DIM16 {
            assert_eq!(conjugate_slot(conjugate_slot(k)), k);
        }
        assert_eq!(conjugate_slot(slot::RHO11), slot::RHO11);
        assert_eq!(conjugate_slot(slot::RHO13), slot::RHO31);
    }

    #[test]
    fn slot_operator_expectation_matches_component() {
        // <|a><b|> = Tr[rho |a><b|] must equal the stored rho_ba.
        let mut rho = DMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] = Complex64::new(0.1 * (i as f64 + 1.0), 0.2 * j as f64);
            }
        }
        let v = density_to_vector(&rho);
        for k in 0..DIM16 {
            let op = slot_operator(k);
            let expectation = (&rho * &op).trace();
            assert!((expectation - v[k]).norm() < 1e-15);
        }
    }
}
