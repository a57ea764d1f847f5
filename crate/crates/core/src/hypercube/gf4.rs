//! The field with four elements, `F_2[Z] / (Z^2 + Z + 1)`.

use std::ops::{Add, Mul};

/// `a + b Z` stored as the bit pair `(b << 1) | a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf4(u8);

const MUL: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    // Z * Z = Z + 1, Z * (Z + 1) = 1
    [0, 2, 3, 1],
    [0, 3, 1, 2],
];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const Z: Gf4 = Gf4(2);
    pub const Z1: Gf4 = Gf4(3);
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::Z, Gf4::Z1];

    pub fn pow(self, e: u32) -> Gf4 {
        (0..e).fold(Gf4::ONE, |acc, _| acc * self)
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    fn add(self, o: Gf4) -> Gf4 {
        Gf4(self.0 ^ o.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, o: Gf4) -> Gf4 {
        Gf4(MUL[self.0 as usize][o.0 as usize])
    }
}

/// Checks `sum_{b in {0,1}} (x + Z^2 y + Z b)(x + Z y + Z^2 b)(x + y + b) = 1 + x y`
/// at all 16 points `(x, y)`.
pub fn verify_f4_identity() -> bool {
    let z = Gf4::Z;
    let z2 = z * z;
    Gf4::ALL.iter().all(|&x| {
        Gf4::ALL.iter().all(|&y| {
            let lhs = [Gf4::ZERO, Gf4::ONE].iter().fold(Gf4::ZERO, |acc, &b| {
                acc + (x + z2 * y + z * b) * (x + z * y + z2 * b) * (x + y + b)
            });
            lhs == Gf4::ONE + x * y
        })
    })
}
