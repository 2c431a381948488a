//! Multiplicative-function sieves and Ramanujan sums.
//!
//! [`DivisorTable`] stores `d(n)`, `φ(n)`, `μ(n)` for `1 ≤ n ≤ limit` together
//! with the prefix sums `Σ_{n≤t} d(n)` and `Σ_{n≤t} d(n)²`. It costs 23 bytes
//! per entry, so a full table of `10⁸` entries needs about 2.3 GB; the hard
//! ceiling is [`MAX_LIMIT`]. When only `d(n)` is needed, [`divisor_counts`]
//! runs the same sieve at 3 bytes per entry and comfortably reaches `10⁸`.

use num_integer::Integer;

use crate::error::{invalid, Error, Result};

/// Largest supported sieve limit (`φ(n)` is stored as `u32`).
pub const MAX_LIMIT: usize = (u32::MAX >> 1) as usize;

#[derive(Clone, Debug)]
pub struct DivisorTable {
    limit: usize,
    d: Vec<u16>,
    phi: Vec<u32>,
    mu: Vec<i8>,
    prefix_d: Vec<u64>,
    prefix_d2: Vec<u64>,
}

fn try_filled<T: Clone>(what: &'static str, len: usize, value: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len)
        .map_err(|_| Error::Allocation { what, entries: len })?;
    v.resize(len, value);
    Ok(v)
}

fn check_limit(limit: usize) -> Result<()> {
    if limit == 0 {
        return invalid("sieve limit must be at least 1");
    }
    if limit > MAX_LIMIT {
        return invalid(format!("sieve limit {limit} exceeds the ceiling {MAX_LIMIT}"));
    }
    Ok(())
}

impl DivisorTable {
    /// Linear (smallest-prime-factor) sieve for `d`, `φ`, `μ` in one pass.
    pub fn build(limit: usize) -> Result<Self> {
        check_limit(limit)?;
        let len = limit + 1;
        let mut d = try_filled("d(n)", len, 0u16)?;
        let mut phi = try_filled("phi(n)", len, 0u32)?;
        let mut mu = try_filled("mu(n)", len, 0i8)?;
        // exponent of the smallest prime factor
        let mut spf_exp = try_filled("sieve scratch", len, 0u8)?;
        let mut primes: Vec<u32> = Vec::new();

        d[1] = 1;
        phi[1] = 1;
        mu[1] = 1;
        for i in 2..=limit {
            if d[i] == 0 {
                primes.push(i as u32);
                d[i] = 2;
                phi[i] = (i - 1) as u32;
                mu[i] = -1;
                spf_exp[i] = 1;
            }
            for &p in &primes {
                let p = p as usize;
                let m = i * p;
                if m > limit {
                    break;
                }
                if i % p == 0 {
                    let e = spf_exp[i] as u16;
                    spf_exp[m] = spf_exp[i] + 1;
                    d[m] = d[i] / (e + 1) * (e + 2);
                    phi[m] = phi[i] * p as u32;
                    mu[m] = 0;
                    break;
                }
                spf_exp[m] = 1;
                d[m] = d[i] * 2;
                phi[m] = phi[i] * (p as u32 - 1);
                mu[m] = -mu[i];
            }
        }
        drop(spf_exp);

        let mut prefix_d = try_filled("prefix sums of d", len, 0u64)?;
        let mut prefix_d2 = try_filled("prefix sums of d^2", len, 0u64)?;
        for n in 1..=limit {
            let dn = d[n] as u64;
            prefix_d[n] = prefix_d[n - 1].checked_add(dn).ok_or(Error::Overflow(n))?;
            prefix_d2[n] = prefix_d2[n - 1].checked_add(dn * dn).ok_or(Error::Overflow(n))?;
        }

        Ok(Self {
            limit,
            d,
            phi,
            mu,
            prefix_d,
            prefix_d2,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    #[inline]
    pub fn d(&self, n: usize) -> u32 {
        self.d[n] as u32
    }

    #[inline]
    pub fn phi(&self, n: usize) -> u32 {
        self.phi[n]
    }

    #[inline]
    pub fn mu(&self, n: usize) -> i8 {
        self.mu[n]
    }

    /// `Σ_{n≤t} d(n)`; `t = 0` gives 0.
    #[inline]
    pub fn prefix_d(&self, t: usize) -> u64 {
        self.prefix_d[t]
    }

    /// `Σ_{n≤t} d(n)²`.
    #[inline]
    pub fn prefix_d2(&self, t: usize) -> u64 {
        self.prefix_d2[t]
    }

    /// `d(0..=limit)`, with a placeholder zero at index 0.
    pub fn d_values(&self) -> &[u16] {
        &self.d
    }

    pub fn phi_values(&self) -> &[u32] {
        &self.phi
    }

    /// `Σ_{n≤t} n·d(n)`, which bounds `|S_t'(α)| / 2π`.
    pub fn first_moment(&self, t: usize) -> u128 {
        (1..=t).map(|n| n as u128 * self.d[n] as u128).sum()
    }

    pub fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.limit {
            return invalid(format!("n = {n} outside the sieved range 1..={}", self.limit));
        }
        Ok(())
    }

    /// Ramanujan sum using the sieved `μ` and `φ`; falls back to trial
    /// division when `q` exceeds the table.
    pub fn ramanujan_sum(&self, q: u64, a: i64) -> Result<i64> {
        if q == 0 {
            return invalid("Ramanujan sum modulus must be positive");
        }
        if q as usize > self.limit {
            return ramanujan_sum(q, a);
        }
        let g = q.gcd(&a.unsigned_abs());
        let m = (q / g) as usize;
        Ok(self.mu[m] as i64 * (self.phi[q as usize] / self.phi[m]) as i64)
    }
}

/// `d(n)` for `n ≤ limit` only, via the same linear sieve (3 bytes per entry).
pub fn divisor_counts(limit: usize) -> Result<Vec<u16>> {
    check_limit(limit)?;
    let len = limit + 1;
    let mut d = try_filled("d(n)", len, 0u16)?;
    let mut spf_exp = try_filled("sieve scratch", len, 0u8)?;
    let mut primes: Vec<u32> = Vec::new();
    d[1] = 1;
    for i in 2..=limit {
        if d[i] == 0 {
            primes.push(i as u32);
            d[i] = 2;
            spf_exp[i] = 1;
        }
        for &p in &primes {
            let p = p as usize;
            let m = i * p;
            if m > limit {
                break;
            }
            if i % p == 0 {
                let e = spf_exp[i] as u16;
                spf_exp[m] = spf_exp[i] + 1;
                d[m] = d[i] / (e + 1) * (e + 2);
                break;
            }
            spf_exp[m] = 1;
            d[m] = d[i] * 2;
        }
    }
    Ok(d)
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All divisors of `n`, ascending.
pub fn divisors_of(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Divisors of `n`, which must lie inside the table's range.
pub fn divisors(n: usize, table: &DivisorTable) -> Result<Vec<u64>> {
    table.check_index(n)?;
    let divs = divisors_of(n as u64);
    debug_assert_eq!(divs.len(), table.d(n) as usize);
    Ok(divs)
}

/// `c_q(a) = Σ_{k mod q, (k,q)=1} e(ka/q) = μ(q/(q,a)) φ(q) / φ(q/(q,a))`.
pub fn ramanujan_sum(q: u64, a: i64) -> Result<i64> {
    if q == 0 {
        return invalid("Ramanujan sum modulus must be positive");
    }
    let g = q.gcd(&a.unsigned_abs());
    let m = q / g;
    let mu = mobius(m);
    if mu == 0 {
        return Ok(0);
    }
    Ok(mu * (euler_phi(q) / euler_phi(m)) as i64)
}
