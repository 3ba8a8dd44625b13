//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! Every element is a single integer code in `[0, q)`. The base-`p` digits of
//! the code, little-endian, are the coefficients of the residue polynomial
//! modulo the field's irreducible modulus; for prime fields the code is the
//! canonical residue. A [`Field`] is immutable and cheap to clone.

mod moduli;
mod poly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use moduli::DEFAULT_TABLE_LIMIT;

/// Hard upper bound on `q`; log tables are built for every field.
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element, identified by its integer code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Wraps a raw code. Membership is only checked by [`Field::elem`].
    pub const fn from_code(code: u32) -> Fe {
        Fe(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The operations exposed by [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow,
}

/// Second operand of [`Field::arith`]: an element, or an exponent for `Pow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    Elem(Fe),
    Exp(i64),
    None,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    gen: Fe,
    /// `exp[i] = gen^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    roots: OnceLock<Vec<u32>>,
}

/// A finite field GF(p^m) with a fixed modulus and generator.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .field("gen", &self.inner.gen.0)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits(code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut c = code;
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the default table entry is
    /// used (`m = 1` always uses `x`). The generator is the element of least
    /// code whose multiplicative order is `q - 1`.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::UnsupportedSize {
                p,
                m,
                reason: "extension degree must be at least 1",
            });
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::UnsupportedSize {
                p,
                m,
                reason: "field order exceeds 65536",
            })?;
        let p = p as u32;
        let modulus: Vec<u32> = match modulus {
            Some(given) => {
                let ok = given.len() == m as usize + 1
                    && given.last() == Some(&1)
                    && given.iter().all(|&c| c < p)
                    && poly::is_irreducible(given, p);
                if !ok {
                    return Err(Error::ReducibleModulus {
                        p,
                        degree: m,
                        modulus: given.to_vec(),
                    });
                }
                given.to_vec()
            }
            None if m == 1 => vec![0, 1],
            None => moduli::default_modulus(p, m)
                .ok_or(Error::UnsupportedSize {
                    p: p as u64,
                    m,
                    reason: "no default modulus; supply one explicitly",
                })?
                .to_vec(),
        };
        let q = q as u32;
        let gen = Self::find_generator(p, m, q, &modulus);
        let (exp, log) = Self::build_tables(p, m, q, &modulus, gen);
        Ok(Field {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                gen,
                exp,
                log,
                roots: OnceLock::new(),
            }),
        })
    }

    /// Shorthand for the prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
        if m == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let prod = poly::mul_mod(&digits(a, p, m), &digits(b, p, m), modulus, p);
        undigits(&prod, p)
    }

    fn slow_pow(a: u32, mut e: u64, p: u32, m: u32, modulus: &[u32]) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::slow_mul(acc, base, p, m, modulus);
            }
            base = Self::slow_mul(base, base, p, m, modulus);
            e >>= 1;
        }
        acc
    }

    fn find_generator(p: u32, m: u32, q: u32, modulus: &[u32]) -> Fe {
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| Self::slow_pow(g, order / r, p, m, modulus) != 1)
            })
            .map(Fe)
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32], gen: Fe) -> (Vec<u32>, Vec<u32>) {
        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i as u32;
            x = Self::slow_mul(x, gen.0, p, m, modulus);
        }
        (exp, log)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Little-endian coefficients of the monic modulus (length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn generator(&self) -> Fe {
        self.inner.gen
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.inner.q
    }

    /// Checked conversion from a raw code.
    pub fn elem(&self, code: u32) -> Result<Fe> {
        if code < self.inner.q {
            Ok(Fe(code))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.inner.q).map(Fe)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.inner.q).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(self.contains(a) && self.contains(b));
        let Inner { p, m, .. } = *self.inner;
        if m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u32, 0u32);
        for _ in 0..m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(self.contains(a));
        let Inner { p, m, .. } = *self.inner;
        if a.0 == 0 || p == 2 {
            return a;
        }
        if m == 1 {
            return Fe(p - a.0);
        }
        let (mut x, mut place, mut out) = (a.0, 1u32, 0u32);
        for _ in 0..m {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let inner = &*self.inner;
        if inner.m == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        let n = inner.q - 1;
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        Fe(inner.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        debug_assert!(self.contains(a));
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Ok(Fe(inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; negative exponents invert first. `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        debug_assert!(self.contains(a));
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(Fe::ONE),
                std::cmp::Ordering::Greater => Ok(Fe::ZERO),
            };
        }
        let n = (self.inner.q - 1) as i64;
        let l = self.inner.log[a.0 as usize] as i64;
        let idx = (l * e.rem_euclid(n)).rem_euclid(n);
        Ok(Fe(self.inner.exp[idx as usize]))
    }

    /// `a^e` for a nonnegative exponent; never fails.
    pub fn powu(&self, a: Fe, e: u64) -> Fe {
        self.pow(a, (e % (1 << 62)) as i64)
            .expect("nonnegative exponent")
    }

    /// Discrete log to the base of [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize])
    }

    /// `gen^k`, reducing `k` modulo `q - 1`.
    pub fn exp(&self, k: u64) -> Fe {
        let n = (self.inner.q - 1) as u64;
        Fe(self.inner.exp[(k % n) as usize])
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ONE, |acc, x| self.mul(acc, x))
    }

    /// Membership-checked dispatch over [`ArithOp`].
    pub fn arith(&self, op: ArithOp, a: Fe, b: Operand) -> Result<Fe> {
        if !self.contains(a) {
            return Err(Error::FieldMismatch);
        }
        let elem = |b: Operand| match b {
            Operand::Elem(x) if self.contains(x) => Ok(x),
            _ => Err(Error::FieldMismatch),
        };
        match op {
            ArithOp::Add => Ok(self.add(a, elem(b)?)),
            ArithOp::Sub => Ok(self.sub(a, elem(b)?)),
            ArithOp::Mul => Ok(self.mul(a, elem(b)?)),
            ArithOp::Div => self.div(a, elem(b)?),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow => match b {
                Operand::Exp(e) => self.pow(a, e),
                _ => Err(Error::FieldMismatch),
            },
        }
    }

    fn root_table(&self) -> &[u32] {
        self.inner.roots.get_or_init(|| {
            let mut table = vec![u32::MAX; self.inner.q as usize];
            for r in self.elements() {
                let sq = self.mul(r, r).0 as usize;
                if table[sq] == u32::MAX {
                    table[sq] = r.0;
                }
            }
            table
        })
    }

    /// Square roots of `a`, ascending by code: two roots `{r, -r}` in odd
    /// characteristic, one root in characteristic 2 or for zero, none for a
    /// non-residue. Found by exhaustive search.
    pub fn sqrt(&self, a: Fe) -> Vec<Fe> {
        debug_assert!(self.contains(a));
        let r = self.root_table()[a.0 as usize];
        if r == u32::MAX {
            return Vec::new();
        }
        let r = Fe(r);
        let other = self.neg(r);
        if other == r {
            vec![r]
        } else {
            vec![r.min(other), r.max(other)]
        }
    }

    /// Parses `0`, a decimal code, `w`, or `w^k` (a power of the generator;
    /// `k` is reduced modulo `q - 1`).
    pub fn parse(&self, text: &str) -> Result<Fe> {
        let t = text.trim();
        let fail = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = t.strip_prefix('w') {
            let k: u64 = if rest.is_empty() {
                1
            } else {
                let digits = rest
                    .strip_prefix('^')
                    .ok_or_else(|| fail("expected '^' after 'w'"))?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(fail("exponent must be a nonnegative decimal integer"));
                }
                digits
                    .parse::<u128>()
                    .map(|k| (k % (self.inner.q as u128 - 1).max(1)) as u64)
                    .map_err(|_| fail("exponent out of range"))?
            };
            return Ok(self.exp(k));
        }
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("expected a decimal code or w^k"));
        }
        let code: u64 = t.parse().map_err(|_| fail("code out of range"))?;
        if code >= self.inner.q as u64 {
            return Err(fail(&format!("code must be below {}", self.inner.q)));
        }
        Ok(Fe(code as u32))
    }

    /// Decimal codes for prime fields; `0`, `1`, `w^k` for extension fields.
    pub fn format(&self, a: Fe) -> String {
        if self.inner.m == 1 || a.0 <= 1 {
            return a.0.to_string();
        }
        format!("w^{}", self.inner.log[a.0 as usize])
    }
}
