//! Default irreducible moduli.
//!
//! One entry per `(p, m)` with `m >= 2` and `p^m <= 4096`: the monic irreducible
//! polynomial of degree `m` over GF(p) with the least integer code, where the
//! code of `c_0 + c_1 x + ... + x^m` is `c_0 + c_1 p + ... + p^m`. Coefficients
//! are little-endian.

pub(crate) const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (7, 4, &[1, 1, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
    (17, 2, &[3, 0, 1]),
    (19, 2, &[1, 0, 1]),
    (23, 2, &[1, 0, 1]),
    (29, 2, &[2, 0, 1]),
    (31, 2, &[1, 0, 1]),
    (37, 2, &[2, 0, 1]),
    (41, 2, &[3, 0, 1]),
    (43, 2, &[1, 0, 1]),
    (47, 2, &[1, 0, 1]),
    (53, 2, &[2, 0, 1]),
    (59, 2, &[1, 0, 1]),
    (61, 2, &[2, 0, 1]),
];

/// Largest field order covered by [`DEFAULT_MODULI`].
pub const DEFAULT_TABLE_LIMIT: u64 = 4096;

pub(crate) fn default_modulus(p: u32, m: u32) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(tp, tm, _)| *tp == p && *tm == m)
        .map(|(_, _, coeffs)| *coeffs)
}
