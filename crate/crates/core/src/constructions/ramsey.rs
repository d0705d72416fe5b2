//! The recursion `k(x, 0) = 0`, `k(x, y + 1) = 1 + x k(x, y)` and the bound
//! `psi(n, r) = k((n-1) r, (n-1) r) + 1` derived from it.

use num_bigint::BigUint;

pub fn kappa(x: u64, y: u64) -> BigUint {
    let x = BigUint::from(x);
    let mut k = BigUint::from(0u32);
    for _ in 0..y {
        k = &x * k + 1u32;
    }
    k
}

pub fn psi(n: u64, r: u64) -> BigUint {
    let s = n.saturating_sub(1) * r;
    kappa(s, s) + 1u32
}
