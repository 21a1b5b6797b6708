//! Binomial coefficients modulo integers, p-adic valuations by carry
//! counting, the threshold `L(n, m)` and the length sets `S(k, m)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Scan limit for [`l_const`].
pub const L_CONST_CAP: u64 = 1 << 20;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
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

/// If `n = p^e` with `e ≥ 1`, returns `(p, e)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `ν_p(n)`: the largest `e` with `p^e | n`.
pub fn nu_p(p: u64, n: u64) -> Result<u32> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("ν_p(0) is undefined".into()));
    }
    Ok(nu_unchecked(p, n))
}

fn nu_unchecked(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// `ν_p(C(n, m))` as the number of carries when adding `m` and `n − m`
/// in base `p`.
pub fn kummer_valuation(p: u64, n: u64, m: u64) -> Result<u32> {
    require_prime(p)?;
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds n = {n}")));
    }
    Ok(carries(p, m, n - m))
}

fn carries(p: u64, mut a: u64, mut b: u64) -> u32 {
    let mut carry = 0u64;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let digit_sum = a % p + b % p + carry;
        carry = u64::from(digit_sum >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    count
}

/// Exact `C(n, m)`.
pub fn binomial_big(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_binom_args(ell: u64, m: u64, k: u64) -> Result<()> {
    if m > ell {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds ℓ = {ell}")));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("modulus k = {k} must be at least 2")));
    }
    Ok(())
}

/// `C(ell, m) mod k` by exact big-integer reduction.
pub fn binom_mod_big(ell: u64, m: u64, k: u64) -> Result<u64> {
    check_binom_args(ell, m, k)?;
    Ok((binomial_big(ell, m) % k)
        .to_u64()
        .expect("residue fits in u64"))
}

/// `C(ell, m) mod k` by CRT over the prime powers of `k`: the p-part comes
/// from Kummer, the unit part from products with `p` stripped.
pub fn binom_mod_crt(ell: u64, m: u64, k: u64) -> Result<u64> {
    check_binom_args(ell, m, k)?;
    let mut residue = 0u128;
    let mut modulus = 1u128;
    for (p, e) in factorize(k) {
        let pe = p.pow(e);
        let r = binom_mod_prime_power(ell, m, p, e, pe) as u128;
        residue = crt_pair(residue, modulus, r, pe as u128);
        modulus *= pe as u128;
    }
    Ok(residue as u64)
}

fn binom_mod_prime_power(ell: u64, m: u64, p: u64, e: u32, pe: u64) -> u64 {
    let v = carries(p, m, ell - m);
    if v >= e {
        return 0;
    }
    let strip = |mut x: u64| {
        while x.is_multiple_of(p) {
            x /= p;
        }
        x % pe
    };
    let mut num = 1 % pe;
    let mut den = 1 % pe;
    for i in 0..m {
        num = mul_mod(num, strip(ell - i), pe);
        den = mul_mod(den, strip(i + 1), pe);
    }
    let unit = mul_mod(num, mod_inverse(den, pe).expect("p-free part is a unit"), pe);
    mul_mod(unit, p.pow(v) % pe, pe)
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i128) as u64)
}

fn crt_pair(r1: u128, m1: u128, r2: u128, m2: u128) -> u128 {
    // m1, m2 coprime; find x ≡ r1 (m1), x ≡ r2 (m2).
    if m1 == 1 {
        return r2 % m2;
    }
    let inv = mod_inverse((m1 % m2) as u64, m2 as u64).expect("coprime moduli") as u128;
    let diff = (r2 + m2 - r1 % m2) % m2;
    let step = diff * inv % m2;
    r1 + m1 * step
}

/// `C(ell, m) mod k`. Both routes are computed in debug builds and must agree.
pub fn binom_mod(ell: u64, m: u64, k: u64) -> Result<u64> {
    let fast = binom_mod_crt(ell, m, k)?;
    debug_assert_eq!(
        Ok(fast),
        binom_mod_big(ell, m, k),
        "binom_mod routes disagree for C({ell},{m}) mod {k}"
    );
    Ok(fast)
}

/// `k | C(ell, m)`, decided from valuations alone.
pub fn divides_binomial(k: u64, ell: u64, m: u64) -> bool {
    if m > ell {
        return true;
    }
    factorize(k)
        .into_iter()
        .all(|(p, e)| carries(p, m, ell - m) >= e)
}

/// `L(n, m)`: the smallest `ℓ ≥ m + 1` with `n | C(ℓ, m)`.
pub fn l_const(n: u64, m: u64) -> Result<u64> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "L(n, m) needs n ≥ 2 and m ≥ 1, got n = {n}, m = {m}"
        )));
    }
    (m + 1..=L_CONST_CAP)
        .find(|&ell| divides_binomial(n, ell, m))
        .ok_or(Error::CapExceeded {
            what: "L(n, m)",
            cap: L_CONST_CAP,
        })
}

/// Membership in `S(k, m) = { t ≥ m : k | C(t, m) }`.
pub fn in_s(k: u64, m: u64, t: u64) -> bool {
    t >= m && divides_binomial(k, t, m)
}

/// All members of `S(k, m)` up to `cap`, ascending.
pub fn s_members(k: u64, m: u64, cap: u64) -> Vec<u64> {
    (m..=cap).filter(|&t| in_s(k, m, t)).collect()
}

/// Some `j ∈ [i − 2^{ν₂(m)}, i]` with `C(j, m)` even; the smallest such.
pub fn interval_witness(m: u64, i: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let width = 1u64 << nu_unchecked(2, m);
    if i < m + width {
        return Err(Error::InvalidArgument(format!(
            "interval witness needs i ≥ m + 2^ν₂(m) = {}, got {i}",
            m + width
        )));
    }
    (i - width..=i)
        .find(|&j| carries(2, m, j - m) >= 1)
        .ok_or_else(|| Error::InvalidArgument(format!("no even C(j, {m}) in [{}, {i}]", i - width)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factorization() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn nu_p_examples() {
        assert_eq!(nu_p(2, 12), Ok(2));
        assert_eq!(nu_p(3, 7), Ok(0));
        assert_eq!(nu_p(5, 250), Ok(3));
        assert_eq!(nu_p(4, 16), Err(Error::NotPrime(4)));
        assert!(nu_p(2, 0).is_err());
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_valuation(2, 4, 2), Ok(1));
        assert_eq!(kummer_valuation(3, 7, 3), Ok(0));
        assert!(kummer_valuation(2, 3, 4).is_err());
        assert_eq!(kummer_valuation(6, 3, 1), Err(Error::NotPrime(6)));
    }

    #[test]
    fn carry_at_m_plus_two_to_the_nu() {
        for m in 1..=64u64 {
            let width = 1 << nu_p(2, m).unwrap();
            assert!(kummer_valuation(2, m + width, m).unwrap() >= 1, "m = {m}");
        }
    }

    #[test]
    fn binom_mod_examples() {
        assert_eq!(binom_mod(8, 2, 10), Ok(8));
        assert_eq!(binom_mod(25, 5, 5), Ok(0));
        for k in 2..20 {
            assert_eq!(binom_mod(7, 7, k), Ok(1));
        }
        assert!(binom_mod(3, 4, 5).is_err());
        assert!(binom_mod(3, 1, 1).is_err());
    }

    #[test]
    fn binom_routes_agree() {
        for k in 2..=60u64 {
            for ell in 0..=80u64 {
                for m in 0..=ell {
                    assert_eq!(binom_mod_crt(ell, m, k), binom_mod_big(ell, m, k));
                }
            }
        }
    }

    #[test]
    fn l_const_examples() {
        assert_eq!(l_const(5, 5), Ok(25));
        assert_eq!(l_const(2, 2), Ok(4));
        for k in (3..=99).step_by(2).filter(|&k| prime_power(k).is_some()) {
            assert_eq!(l_const(k, 2), Ok(k), "k = {k}");
        }
        // odd k with two prime factors split by CRT: C(6,2) = 15
        assert_eq!(l_const(15, 2), Ok(6));
        assert!(l_const(1, 2).is_err());
        assert!(l_const(2, 0).is_err());
    }

    #[test]
    fn s_membership() {
        assert!(!in_s(10, 2, 8));
        assert!(in_s(3, 2, 3));
        assert!(in_s(2, 2, 16));
        assert!(in_s(8, 2, 16));
        assert!(!in_s(2, 3, 2));
        assert_eq!(s_members(2, 2, 13), vec![4, 5, 8, 9, 12, 13]);
    }

    #[test]
    fn interval_witness_examples() {
        assert_eq!(interval_witness(2, 4), Ok(4));
        assert_eq!(interval_witness(1, 2), Ok(2));
        assert_eq!(interval_witness(4, 8), Ok(8));
        assert!(interval_witness(4, 7).is_err());
    }
}
