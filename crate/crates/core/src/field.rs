//! Arithmetic in GF(2^m), 2 ≤ m ≤ 20.
//!
//! Elements are stored as integers in the polynomial basis: bit `i` of an
//! element is its coefficient on α^i, where α is the class of `x` modulo the
//! defining polynomial. The defining polynomial must be primitive, so α
//! generates the multiplicative group and `{α^0, …, α^(m-1)}` is at the same
//! time the basis used to split field values into bit planes.
//!
//! Points of the field are ordered by their integer value, so the image
//! vector of a function over the field is a plain slice indexed by element.

use crate::error::{Error, Result};

/// Field element in the polynomial basis.
pub type Elem = u32;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 20;

/// Default defining polynomials, indexed by `m`.
///
/// m = 2, 3, 4, 8, 16, 20 use the customary polynomials; every other degree
/// uses the lowest-weight primitive polynomial, smallest value first.
const DEFAULT_POLYS: [u32; 21] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x402B,
    0x8003, 0x1100B, 0x20009, 0x40081, 0x80027, 0x100009,
];

/// Default primitive polynomial for degree `m`, if `m` is supported.
pub fn default_poly(m: u32) -> Option<u32> {
    (MIN_DEGREE..=MAX_DEGREE)
        .contains(&m)
        .then(|| DEFAULT_POLYS[m as usize])
}

/// Log/exp tables for GF(2^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    m: u32,
    q: usize,
    poly: u32,
    /// `exp[i] = α^i` for `0 ≤ i < q - 1`.
    exp: Vec<Elem>,
    /// `log[α^i] = i`, with `log[0] = 0`.
    log: Vec<u32>,
}

impl Field {
    /// Builds the tables for GF(2^m) with `poly` or the default polynomial.
    pub fn new(m: u32, poly: Option<u32>) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let poly = poly.unwrap_or(DEFAULT_POLYS[m as usize]);
        if poly >> m != 1 {
            return Err(Error::BadDegree { m, poly });
        }

        let q = 1usize << m;
        let order = q - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; q];
        let mut v: u32 = 1;
        for i in 0..order {
            if i > 0 && v == 1 {
                return Err(Error::NotPrimitive { poly, order: i, expected: order });
            }
            exp.push(v);
            log[v as usize] = i as u32;
            v <<= 1;
            if v & (q as u32) != 0 {
                v ^= poly;
            }
        }
        if v != 1 {
            // The orbit of x never came back to 1: the polynomial is reducible
            // with x in a non-invertible class.
            return Err(Error::NotPrimitive { poly, order: 0, expected: order });
        }

        Ok(Self { m, q, poly, exp, log })
    }

    /// Field with the default polynomial for `m`.
    pub fn with_degree(m: u32) -> Result<Self> {
        Self::new(m, None)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of field elements, `2^m`.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        (self.q - 1) as u32
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// `exp[i] = α^i` for `i < q - 1`.
    pub fn exp_table(&self) -> &[Elem] {
        &self.exp
    }

    /// Discrete logarithm table, extended with `log[0] = 0`. This is also the
    /// image vector `[L]` of the logarithm over all points.
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    /// α^e for any exponent (reduced modulo `q - 1`).
    #[inline]
    pub fn exp(&self, e: u32) -> Elem {
        self.exp[(e % self.order()) as usize]
    }

    #[inline]
    pub fn log(&self, a: Elem) -> u32 {
        self.log[a as usize]
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        (a as usize) < self.q
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[self.reduce(s) as usize]
    }

    /// Multiplicative inverse, with `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize];
        self.exp[self.reduce(self.order() - l) as usize]
    }

    /// `a / b`; zero when either operand is zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// Reduces `0 ≤ s < 2(q - 1)` into `[0, q - 2]`.
    #[inline]
    fn reduce(&self, s: u32) -> u32 {
        let n = self.order();
        if s >= n {
            s - n
        } else {
            s
        }
    }
}
