//! Prime bases and Chinese remainder reconstruction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::modular::{is_prime, Modulus};

/// First prime of the working window. The 72 primes starting here all lie
/// in `[43969, 44699]`.
pub const WINDOW_START: u32 = 43969;

/// Number of primes in the default basis.
pub const FULL_BASIS: usize = 72;

/// Distinct primes `p_1..p_k` with the reconstruction coefficients
/// `m_k = m / p_k` and `s_k = m_k⁻¹ mod p_k`, where `m = p_1⋯p_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBasis {
    moduli: Vec<Modulus>,
    product: BigUint,
    cofactors: Vec<BigUint>,
    inverses: Vec<u32>,
}

impl PrimeBasis {
    pub fn new(primes: Vec<u32>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidParameter("empty prime basis".into()));
        }
        let mut moduli = Vec::with_capacity(primes.len());
        for (k, &p) in primes.iter().enumerate() {
            if primes[..k].contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "prime {p} repeated in basis"
                )));
            }
            moduli.push(Modulus::new(p)?);
        }
        let product: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
        let mut cofactors = Vec::with_capacity(primes.len());
        let mut inverses = Vec::with_capacity(primes.len());
        for m in &moduli {
            let cofactor = &product / m.value();
            let residue = (&cofactor % m.value())
                .to_u32_digits()
                .first()
                .copied()
                .unwrap_or(0);
            inverses.push(m.inv(residue).expect("distinct primes are coprime"));
            cofactors.push(cofactor);
        }
        Ok(PrimeBasis {
            moduli,
            product,
            cofactors,
            inverses,
        })
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn primes(&self) -> Vec<u32> {
        self.moduli.iter().map(|m| m.value()).collect()
    }

    pub fn moduli(&self) -> &[Modulus] {
        &self.moduli
    }

    /// `m = p_1⋯p_k`.
    pub fn product(&self) -> &BigUint {
        &self.product
    }

    /// `m_k = m / p_k`.
    pub fn cofactor(&self, k: usize) -> &BigUint {
        &self.cofactors[k]
    }

    /// `s_k = m_k⁻¹ mod p_k`.
    pub fn inverse(&self, k: usize) -> u32 {
        self.inverses[k]
    }

    /// Residues of `x` modulo each basis prime.
    pub fn reduce(&self, x: &BigInt) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|m| {
                let r = x.mod_floor(&BigInt::from(m.value()));
                r.to_u32_digits().1.first().copied().unwrap_or(0)
            })
            .collect()
    }
}

/// The first `count` primes at or above [`WINDOW_START`], ascending.
pub fn prime_window(count: usize) -> Result<PrimeBasis> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "prime count must be at least 1".into(),
        ));
    }
    let primes: Vec<u32> = (WINDOW_START..)
        .filter(|&n| is_prime(n as u64))
        .take(count)
        .collect();
    PrimeBasis::new(primes)
}

/// The unique `x ∈ [0, m)` with `x ≡ residues[k] (mod p_k)`, computed as
/// `Σ d_k·m_k·s_k mod m`.
pub fn crt_reconstruct(residues: &[u32], basis: &PrimeBasis) -> Result<BigUint> {
    if residues.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            actual: residues.len(),
        });
    }
    let mut acc = BigUint::zero();
    for (k, (&d, m)) in residues.iter().zip(&basis.moduli).enumerate() {
        if d >= m.value() {
            return Err(Error::ResidueOutOfRange {
                residue: d as u64,
                prime: m.value() as u64,
            });
        }
        let weight = m.mul(d, basis.inverses[k]);
        acc += &basis.cofactors[k] * weight;
    }
    Ok(acc % &basis.product)
}

/// Recenters `x ∈ [0, m)` to `(-m/2, m/2]`.
pub fn to_signed(x: &BigUint, basis: &PrimeBasis) -> BigInt {
    let half = basis.product() >> 1u32;
    if x > &half {
        BigInt::from(x.clone()) - BigInt::from(basis.product().clone())
    } else {
        BigInt::from(x.clone())
    }
}

/// Signed reconstruction in one step.
pub fn crt_reconstruct_signed(residues: &[u32], basis: &PrimeBasis) -> Result<BigInt> {
    crt_reconstruct(residues, basis).map(|x| to_signed(&x, basis))
}

/// Number of decimal digits of `|x|` (0 has one digit).
pub fn decimal_digits(x: &BigInt) -> usize {
    let s = x.magnitude().to_str_radix(10);
    s.len()
}

impl PrimeBasis {
    /// `true` when every integer of absolute value below `bound` is
    /// recovered exactly by [`crt_reconstruct_signed`].
    pub fn covers(&self, bound: &BigUint) -> bool {
        &(bound * 2u32) <= self.product()
    }
}
