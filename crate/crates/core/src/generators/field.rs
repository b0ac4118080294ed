//! Finite fields of order at most 32 as explicit operation tables.

use crate::error::{Error, Result};
use crate::modular::is_prime;

/// Monic irreducible polynomials over GF(p), coefficients from the constant
/// term up, for the non-prime orders.
const IRREDUCIBLE: [(usize, usize, &[usize]); 7] = [
    (4, 2, &[1, 1, 1]),
    (8, 2, &[1, 1, 0, 1]),
    (9, 3, &[1, 0, 1]),
    (16, 2, &[1, 1, 0, 0, 1]),
    (25, 5, &[2, 0, 1]),
    (27, 3, &[1, 2, 0, 1]),
    (32, 2, &[1, 0, 1, 0, 0, 1]),
];

pub const MAX_ORDER: usize = 32;

/// GF(q) with elements `0..q`. An element is the polynomial whose base-`p`
/// digits are its coefficients, constant term first, so `0` and `1` are the
/// field's zero and one and prime fields are plain integers mod `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    p: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

impl FieldTable {
    pub fn new(q: usize) -> Result<Self> {
        let (p, modulus): (usize, Vec<usize>) = if q <= MAX_ORDER && is_prime(q as u64) {
            (q, vec![0, 1])
        } else if let Some(&(_, p, poly)) = IRREDUCIBLE.iter().find(|e| e.0 == q) {
            (p, poly.to_vec())
        } else {
            return Err(Error::UnsupportedOrder(q));
        };
        let degree = modulus.len() - 1;
        let digits = |x: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(degree);
            let mut x = x;
            for _ in 0..degree {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);

                let mut prod = vec![0; 2 * degree];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce using x^degree = -(lower coefficients of the modulus).
                for top in (degree..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, m) in modulus[..degree].iter().enumerate() {
                        let k = top - degree + i;
                        prod[k] = (prod[k] + c * (p - m % p)) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..degree]);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap())
            .collect();
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).ok_or_else(|| {
                Error::InvalidParameter(format!("modulus for GF({q}) is reducible"))
            })?;
        }
        Ok(FieldTable {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a])
    }

    /// Exhaustive check of the field axioms, `O(q³)`.
    pub fn verify_axioms(&self) -> bool {
        let q = self.q;
        let all = || 0..q;
        for a in all() {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.add(a, self.neg(a)) != 0 {
                return false;
            }
            if a != 0 && self.mul(a, self.inv[a]) != 1 {
                return false;
            }
            for b in all() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in all() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Prime powers up to [`MAX_ORDER`], the orders [`FieldTable::new`] accepts.
pub fn supported_orders() -> Vec<usize> {
    (2..=MAX_ORDER)
        .filter(|&q| is_prime(q as u64) || IRREDUCIBLE.iter().any(|e| e.0 == q))
        .collect()
}
