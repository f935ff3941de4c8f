//! Explicit braces exhibiting bad groups, and the nontrivial brace on the
//! Klein four-group.
//!
//! Elements are written in the generators of the additive group; each
//! constructor documents how exponents map to indices.

use crate::brace::{validate, SkewBrace};
use crate::error::{Error, Result};
use crate::group::{is_prime, q8_index, FiniteGroup};

fn built(dot: &FiniteGroup, circ: Result<FiniteGroup>, label: &str) -> SkewBrace {
    let circ = circ.unwrap_or_else(|e| panic!("{label}: multiplicative table is not a group: {e}"));
    validate(dot, &circ)
        .unwrap_or_else(|e| panic!("{label}: not a skew brace: {e}"))
        .with_label(label)
}

fn checked(dot: &FiniteGroup, circ: Result<FiniteGroup>, label: &str) -> Result<SkewBrace> {
    Ok(validate(dot, &circ?)?.with_label(label))
}

/// Additive `Q8` with `σ^i τ^j ∘ σ^r τ^s = σ^(i+r) τ^(j + (-1)^(i+j) s)`.
/// Index of `σ^i τ^j` is `i + 4j`.
pub fn example_q8() -> SkewBrace {
    let dot = FiniteGroup::quaternion8();
    let circ = FiniteGroup::from_fn("D8", 8, |a, b| {
        let (i, j) = ((a % 4) as i64, (a / 4) as i64);
        let (r, s) = ((b % 4) as i64, (b / 4) as i64);
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        q8_index(i + r, j + sign * s)
    });
    built(&dot, circ, "example-q8")
}

/// Additive `C2^3` with
/// `σ^i τ^j υ^k ∘ σ^r τ^s υ^t = σ^(i+r+jt+ks) τ^(j+s) υ^(k+t)`.
/// Index of `σ^i τ^j υ^k` is `i + 2j + 4k`.
pub fn example_c2cubed() -> SkewBrace {
    let dot = FiniteGroup::abelian(&[2, 2, 2]).expect("C2^3");
    let circ = FiniteGroup::from_fn("C2xC2xC2", 8, |a, b| {
        let (i, j, k) = (a & 1, (a >> 1) & 1, a >> 2);
        let (r, s, t) = (b & 1, (b >> 1) & 1, b >> 2);
        ((i + r + j * t + k * s) % 2) + 2 * ((j + s) % 2) + 4 * ((k + t) % 2)
    });
    built(&dot, circ, "example-c2cubed")
}

/// Additive `Cn`, `n` even, with `σ^i ∘ σ^j = σ^(i + (-1)^i j)`. Index of
/// `σ^i` is `i`.
pub fn example_cn_even(n: usize) -> Result<SkewBrace> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "order must be even and at least 2, got {n}"
        )));
    }
    let dot = FiniteGroup::cyclic(n)?;
    let circ = FiniteGroup::from_fn(format!("D{n}"), n, |i, j| {
        if i % 2 == 0 {
            (i + j) % n
        } else {
            (i + n - j) % n
        }
    });
    checked(&dot, circ, &format!("example-c{n}-even"))
}

fn pow_mod(base: usize, exp: usize, modulus: usize) -> usize {
    (0..exp).fold(1 % modulus, |acc, _| acc * base % modulus)
}

fn multiplicative_order(k: usize, modulus: usize) -> Option<usize> {
    if crate::group::gcd(k, modulus) != 1 {
        return None;
    }
    (1..=modulus).find(|&e| pow_mod(k, e, modulus) == 1 % modulus)
}

fn check_pq(p: usize, q: usize, n: u32, m: u32) -> Result<()> {
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidParameter(format!("{p} and {q} must be primes")));
    }
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("exponents must be at least 1".into()));
    }
    if (p - 1) % q != 0 {
        return Err(Error::InvalidParameter(format!("{q} does not divide {p} - 1")));
    }
    Ok(())
}

/// Least `κ > 1` of multiplicative order `q` modulo `p^n`.
pub fn pq_kappa(p: usize, q: usize, n: u32) -> Result<usize> {
    check_pq(p, q, n, 1)?;
    let pn = p.pow(n);
    (2..pn)
        .find(|&k| multiplicative_order(k, pn) == Some(q))
        .ok_or_else(|| Error::Internal(format!("no residue of order {q} modulo {pn}")))
}

/// [`example_pq`] with the least valid `κ`.
pub fn example_pq(p: usize, q: usize, n: u32, m: u32) -> Result<SkewBrace> {
    example_pq_with_kappa(p, q, n, m, pq_kappa(p, q, n)?)
}

/// Additive `C_{p^n} × C_{q^m}` with `(δ, ξ) ∘ (δ', ξ') = (δ φ(ξ)(δ'), ξ ξ')`
/// where `φ(τ)` raises to the power `κ`. Index of `(σ^i, τ^j)` is
/// `i + p^n j`.
pub fn example_pq_with_kappa(p: usize, q: usize, n: u32, m: u32, kappa: usize) -> Result<SkewBrace> {
    check_pq(p, q, n, m)?;
    let (pn, qm) = (p.pow(n), q.pow(m));
    if multiplicative_order(kappa % pn, pn) != Some(q) {
        return Err(Error::InvalidParameter(format!(
            "{kappa} does not have multiplicative order {q} modulo {pn}"
        )));
    }
    let dot = FiniteGroup::abelian(&[pn, qm])?;
    let powers: Vec<usize> = (0..qm).map(|x| pow_mod(kappa, x, pn)).collect();
    let circ = FiniteGroup::from_fn(format!("C{pn}:C{qm}"), pn * qm, |a, b| {
        let (d, x) = (a % pn, a / pn);
        let (e, y) = (b % pn, b / pn);
        (d + powers[x] * e) % pn + pn * ((x + y) % qm)
    });
    checked(&dot, circ, &format!("example-pq-{p}-{q}-{n}-{m}"))
}

/// Additive `C_{p^n} × C_{p^m}`, `p` odd and `m ≤ n`, with
/// `σ^i τ^j ∘ σ^r τ^s = σ^(i+r) τ^(j+s+ir)`. Index of `σ^i τ^j` is
/// `i + p^n j`.
pub fn example_p_odd(p: usize, n: u32, m: u32) -> Result<SkewBrace> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "exponents must satisfy 1 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    let (pn, pm) = (p.pow(n), p.pow(m));
    let dot = FiniteGroup::abelian(&[pn, pm])?;
    let circ = FiniteGroup::from_fn(format!("C{pn}xC{pm}"), pn * pm, |a, b| {
        let (i, j) = (a % pn, a / pn);
        let (r, s) = (b % pn, b / pn);
        (i + r) % pn + pn * ((j + s + i * r) % pm)
    });
    checked(&dot, circ, &format!("example-p-odd-{p}-{n}-{m}"))
}

/// Additive `C2 × C2` with `(i, j) ∘ (r, s) = (i + r + js, j + s)`. Index of
/// `(i, j)` is `i + 2j`.
pub fn brace_order4_nontrivial() -> SkewBrace {
    let dot = FiniteGroup::abelian(&[2, 2]).expect("C2xC2");
    let circ = FiniteGroup::from_fn("C4", 4, |a, b| {
        let (i, j, r, s) = (a % 2, a / 2, b % 2, b / 2);
        (i + r + j * s) % 2 + 2 * ((j + s) % 2)
    });
    built(&dot, circ, "order4-nontrivial")
}
