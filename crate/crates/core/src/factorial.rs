use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<BigInt>> {
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

fn ensure(n: usize) {
    if table().read().unwrap().len() > n {
        return;
    }
    let mut t = table().write().unwrap();
    while t.len() <= n {
        let k = t.len();
        let next = &t[k - 1] * k;
        t.push(next);
    }
}

/// `n!`, from a shared running-product table.
pub fn factorial(n: usize) -> BigInt {
    ensure(n);
    table().read().unwrap()[n].clone()
}

/// `C(n, k)`, zero when `k > n` or either argument is negative.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    ensure(n);
    let t = table().read().unwrap();
    &t[n] / (&t[k] * &t[n - k])
}
