//! Dense polynomials over a prime field, used only to set up extension fields.

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut b = base as u64 % p64;
    let mut acc = 1u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` divided by `b` over GF(p). `b` must be nonzero.
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p) as u64;
    let p64 = p as u64;
    while a.len() >= b.len() {
        let c = *a.last().unwrap() as u64 * lead_inv % p64;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            let sub = c * bi as u64 % p64;
            a[shift + i] = ((a[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut a);
    }
    a
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Product of two residues (as little-endian digit vectors of length `m`)
/// reduced by the monic `modulus` of degree `m`.
pub(crate) fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * m];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &mi) in modulus[..m].iter().enumerate() {
            let idx = top - m + i;
            prod[idx] = (prod[idx] + p64 - c * mi as u64 % p64) % p64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}
