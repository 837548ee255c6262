//! Residue-class verification for parametric gene families: binomial parity,
//! closed forms for the duality functional, the type-counted linear systems
//! behind the big × table, and the per-code ψ table.

mod bigtable;
mod families;
pub mod reference;
mod tt;

pub use bigtable::{
    admissibility_rows, build_type_system, column_solvable, cross_check_column,
    pairing_coefficients, prop111_check, prop241_check, reproduce_bigtable, small_parameter_system,
    uniform_phi, BigTable, Column, Extra, MClass, PairingRow, QRule, ResidueCase, TypePattern,
    BLOCKS, COLUMNS, PATTERNS, RELATION_PATTERNS,
};
pub use families::{
    check_instance, cross_validate_phi, family_members, phi_closed_form, two_genes_psi, Family,
    FamilyCheck, Instance,
};
pub use tt::{check_row, tt_csv, tt_markdown, verify_table_tt, TtCheck, TtRow};

pub use crate::gf2::binomial_parity as lucas_binomial;

pub(crate) fn is_pow2(x: u64) -> bool {
    x.is_power_of_two()
}

/// `C(x, 2) mod 2` for any integer `x`, with `C(x, 2) = x(x-1)/2`.
pub fn choose2(x: i64) -> bool {
    x.rem_euclid(4) >= 2
}

pub fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

/// `C(A,2) + AB + AC + BC + C(B,2) mod 2`.
pub fn techlem(a: i64, b: i64, c: i64) -> bool {
    choose2(a) ^ odd(a * b) ^ odd(a * c) ^ odd(b * c) ^ choose2(b)
}

/// The congruence description of when [`techlem`] vanishes:
/// `A + B ≡ 0 (mod 4)` or `A + B + 2C ≡ 1 (mod 4)`.
pub fn techlem_vanishes(a: i64, b: i64, c: i64) -> bool {
    (a + b).rem_euclid(4) == 0 || (a + b + 2 * c).rem_euclid(4) == 1
}

/// `C(2m - 4 - α, m - t)` is odd for `m = 2^e + m'`, `α = 2m' - 3`.
pub fn lem1_coefficient(e: u32, m_prime: u64, t: u64) -> Option<bool> {
    let m = (1u64 << e) + m_prime;
    let alpha = (2 * m_prime).checked_sub(3)?;
    let top = (2 * m).checked_sub(4 + alpha)?;
    let bottom = m.checked_sub(t)?;
    Some(bottom <= top && lucas_binomial(top, bottom))
}

/// Whether the coefficient is odd for every `2 <= m' <= 2^e - 1`, `0 <= t <= 4`.
pub fn lem1_holds(e: u32) -> bool {
    (2..(1u64 << e)).all(|mp| (0..=4).all(|t| lem1_coefficient(e, mp, t) == Some(true)))
}

/// The variant with `2 <= m' <= 2^e + 1` and `2 <= t <= 4`.
pub fn lem1p_holds(e: u32) -> bool {
    (2..=(1u64 << e) + 1).all(|mp| (2..=4).all(|t| lem1_coefficient(e, mp, t) == Some(true)))
}
