//! Multiplication of residue vectors modulo an arbitrary 63-bit prime.
//!
//! The product is computed exactly over the integers with three
//! NTT-friendly primes and recombined by Garner's algorithm, then reduced
//! modulo the target prime.

/// Primes of the form `k * 2^30 + 1`, each with primitive root 3.
const PRIMES: [u64; 3] = [4611685944339202049, 4611685860587339777, 4611685854144888833];
const ROOT: u64 = 3;
const MAX_LOG: u32 = 30;

#[derive(Clone, Copy)]
struct Montgomery {
    q: u64,
    /// -q^{-1} mod 2^64
    qneg_inv: u64,
    /// 2^128 mod q
    r2: u64,
}

impl Montgomery {
    fn new(q: u64) -> Self {
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % q as u128) as u64;
        let r2 = ((r as u128 * r as u128) % q as u128) as u64;
        Self { q, qneg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.qneg_inv);
        let s = ((t + m as u128 * self.q as u128) >> 64) as u64;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    #[allow(clippy::wrong_self_convention)]
    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.q, self.r2)
    }

    #[inline(always)]
    #[allow(clippy::wrong_self_convention)]
    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut b = self.to_mont(base);
        let mut r = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

/// In-place NTT of Montgomery-form values; `invert` runs the inverse
/// transform including the 1/n scaling.
fn transform(m: &Montgomery, a: &mut [u64], invert: bool) {
    let n = a.len();
    let log = n.trailing_zeros();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut twiddles = vec![0u64; n / 2];
    for s in 1..=log {
        let len = 1usize << s;
        let half = len / 2;
        let e = (m.q - 1) >> s;
        let w = m.pow(ROOT, if invert { m.q - 1 - e } else { e });
        let one = m.to_mont(1);
        twiddles[0] = one;
        for k in 1..half {
            twiddles[k] = m.mul(twiddles[k - 1], w);
        }
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = m.mul(hi[k], twiddles[k]);
                lo[k] = m.add(u, v);
                hi[k] = m.sub(u, v);
            }
        }
    }
    if invert {
        let n_inv = m.pow(n as u64 % m.q, m.q - 2);
        for x in a.iter_mut() {
            *x = m.mul(*x, n_inv);
        }
    }
}

fn convolve(m: &Montgomery, a: &[u64], b: &[u64], size: usize) -> Vec<u64> {
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    for (d, s) in fa.iter_mut().zip(a) {
        *d = m.to_mont(*s);
    }
    for (d, s) in fb.iter_mut().zip(b) {
        *d = m.to_mont(*s);
    }
    transform(m, &mut fa, false);
    transform(m, &mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = m.mul(*x, *y);
    }
    transform(m, &mut fa, true);
    fa.truncate(a.len() + b.len() - 1);
    for x in fa.iter_mut() {
        *x = m.from_mont(*x);
    }
    fa
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let m = Montgomery::new(q);
    m.from_mont(m.pow(a % q, q - 2))
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Product of `a` and `b` (residues below `p < 2^63`), reduced modulo `p`.
pub fn multiply_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    assert!(size.trailing_zeros() <= MAX_LOG, "product too long for the NTT primes");
    let [q1, q2, q3] = PRIMES;
    let parts: Vec<Vec<u64>> = PRIMES.iter().map(|&q| convolve(&Montgomery::new(q), a, b, size)).collect();

    let q1_inv_q2 = inv_mod(q1 % q2, q2);
    let q12_mod_q3 = mulmod(q1 % q3, q2 % q3, q3);
    let q12_inv_q3 = inv_mod(q12_mod_q3, q3);
    let q1_mod_p = q1 % p;
    let q12_mod_p = mulmod(q1_mod_p, q2 % p, p);

    (0..out_len)
        .map(|i| {
            let (r1, r2, r3) = (parts[0][i], parts[1][i], parts[2][i]);
            let t2 = mulmod((r2 + q2 - r1 % q2) % q2, q1_inv_q2, q2);
            // x12 = r1 + q1 * t2 < q1 * q2 < 2^124
            let x12 = r1 as u128 + q1 as u128 * t2 as u128;
            let x12_q3 = (x12 % q3 as u128) as u64;
            let t3 = mulmod((r3 + q3 - x12_q3) % q3, q12_inv_q3, q3);
            let x12_p = (x12 % p as u128) as u64;
            (x12_p + mulmod(q12_mod_p, t3, p)) % p
        })
        .collect()
}
