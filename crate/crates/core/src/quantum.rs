//! Quantum integers and the closed-form skein coefficients built from them.

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{LaurentPoly, RationalFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("index {0} is below -1")]
    IndexTooSmall(i64),
    #[error("colors ({0}, {1}, {2}) are not admissible")]
    Inadmissible(i64, i64, i64),
}

/// `Δ_n = (-1)^n (A^(2n+2) - A^(-2n-2)) / (A^2 - A^-2)`, the value of the
/// `n`-colored unknot. `Δ_-1` is the formula's zero.
pub fn delta(n: i64) -> Result<LaurentPoly, QuantumError> {
    if n < -1 {
        return Err(QuantumError::IndexTooSmall(n));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly::from_terms((0..=n).map(|k| (2 * n - 4 * k, sign))))
}

/// `Δ_n! = Δ_n Δ_{n-1} ... Δ_1`; the empty product (`n` = -1 or 0) is 1.
pub fn delta_factorial(n: i64) -> Result<LaurentPoly, QuantumError> {
    if n < -1 {
        return Err(QuantumError::IndexTooSmall(n));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=n {
        acc = &acc * &delta(k)?;
    }
    Ok(acc)
}

/// Edge colors meeting at a trivalent vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    a: u32,
    b: u32,
    c: u32,
}

impl AdmissibleTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, QuantumError> {
        let ok = a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b;
        if !ok {
            return Err(QuantumError::Inadmissible(a, b, c));
        }
        Ok(Self {
            a: a as u32,
            b: b as u32,
            c: c as u32,
        })
    }

    pub fn colors(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    /// Strand counts `(x, y, z)` with `a = y+z`, `b = z+x`, `c = x+y`.
    pub fn internal(&self) -> (i64, i64, i64) {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        ((b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2)
    }
}

/// Value of the theta graph with edge colors `a, b, c`.
pub fn theta(t: AdmissibleTriple) -> RationalFn {
    let (x, y, z) = t.internal();
    let f = |n: i64| delta_factorial(n).expect("admissible indices are >= -1");
    let num = &(&f(x + y + z) * &f(x - 1)) * &(&f(y - 1) * &f(z - 1));
    let den = &(&f(y + z - 1) * &f(z + x - 1)) * &f(x + y - 1);
    RationalFn::new(num, den).expect("Δ factorials are nonzero")
}

/// Half-twist eigenvalue `(-1)^((a+b-c)/2) A^(a+b-c + (a²+b²-c²)/2)`.
pub fn gamma(a: i64, b: i64, c: i64) -> Result<LaurentPoly, QuantumError> {
    AdmissibleTriple::new(a, b, c)?;
    let half = (a + b - c) / 2;
    let exp = a + b - c + (a * a + b * b - c * c) / 2;
    let sign = if half % 2 == 0 { 1 } else { -1 };
    Ok(LaurentPoly::monomial(BigInt::from(sign), exp))
}

/// All `c` admissible with `a` and `b`, ascending.
pub fn admissible_colors(a: u32, b: u32) -> Vec<u32> {
    let lo = a.abs_diff(b);
    (lo..=a + b).step_by(2).collect()
}

/// Coefficients `γ(n,n,2j)^m Δ_{2j} / θ(n,n,2j)` for `j = 0..=n` of the
/// fused expansion of an `m`-crossing twist between two `n`-colored strands.
pub fn twist_coefficients(n: u32, m: i64) -> Vec<RationalFn> {
    let n = n as i64;
    (0..=n)
        .map(|j| {
            let g = gamma(n, n, 2 * j).expect("admissible").monomial_pow(m).expect("monomial");
            let d = delta(2 * j).expect("nonnegative");
            let th = theta(AdmissibleTriple::new(n, n, 2 * j).expect("admissible"));
            &RationalFn::from_poly(&g * &d) * &th.recip().expect("theta is nonzero")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(0).unwrap(), LaurentPoly::one());
        assert_eq!(delta(1).unwrap(), p("-A^2-A^-2"));
        assert_eq!(delta(2).unwrap(), p("A^4+1+A^-4"));
        assert!(delta(-1).unwrap().is_zero());
        assert_eq!(delta(-2), Err(QuantumError::IndexTooSmall(-2)));
        for n in 1..=10 {
            assert_eq!(delta(n).unwrap().min_degree(), Ok(-2 * n));
        }
    }

    /// Δ_n against the quotient it is defined by.
    #[test]
    fn delta_matches_quotient() {
        let den = p("A^2-A^-2");
        for n in 0..=12i64 {
            let num = &LaurentPoly::a_pow(2 * (n + 1)) - &LaurentPoly::a_pow(-2 * (n + 1));
            let mut q = num.exact_divide(&den).unwrap();
            if n % 2 == 1 {
                q = -q;
            }
            assert_eq!(delta(n).unwrap(), q);
        }
    }

    #[test]
    fn delta_factorial_values() {
        assert_eq!(delta_factorial(0).unwrap(), LaurentPoly::one());
        assert_eq!(delta_factorial(-1).unwrap(), LaurentPoly::one());
        assert_eq!(delta_factorial(1).unwrap(), delta(1).unwrap());
        assert_eq!(delta_factorial(2).unwrap(), &delta(2).unwrap() * &delta(1).unwrap());
        assert!(delta_factorial(-3).is_err());
    }

    #[test]
    fn theta_small_values() {
        let t = theta(AdmissibleTriple::new(1, 1, 0).unwrap());
        assert_eq!(t.to_poly().unwrap(), delta(1).unwrap());
        let t = theta(AdmissibleTriple::new(1, 1, 2).unwrap());
        assert_eq!(t.to_poly().unwrap(), delta(2).unwrap());
        // θ(0,b,b) is a single b-colored circle.
        for b in 0..6 {
            let t = theta(AdmissibleTriple::new(0, b, b).unwrap());
            assert_eq!(t.to_poly().unwrap(), delta(b).unwrap());
        }
    }

    #[test]
    fn theta_is_symmetric() {
        for a in 0..=5i64 {
            for b in 0..=5 {
                for c in 0..=5 {
                    let Ok(t) = AdmissibleTriple::new(a, b, c) else { continue };
                    let v = theta(t);
                    for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                        assert_eq!(theta(AdmissibleTriple::new(x, y, z).unwrap()), v);
                    }
                }
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(AdmissibleTriple::new(1, 1, 1).is_err());
        assert!(AdmissibleTriple::new(1, 3, 0).is_err());
        assert!(AdmissibleTriple::new(-1, 1, 0).is_err());
        assert_eq!(AdmissibleTriple::new(2, 4, 4).unwrap().internal(), (3, 1, 1));
        assert_eq!(admissible_colors(1, 1), vec![0, 2]);
        assert_eq!(admissible_colors(3, 3), vec![0, 2, 4, 6]);
        assert_eq!(admissible_colors(0, 4), vec![4]);
        assert_eq!(admissible_colors(2, 5), vec![3, 5, 7]);
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(1, 1, 0).unwrap(), p("-A^3"));
        assert_eq!(gamma(1, 1, 2).unwrap(), p("A^-1"));
        for n in 1..=5 {
            assert_eq!(gamma(n, n, 2 * n).unwrap(), LaurentPoly::a_pow(-n * n));
        }
        assert!(gamma(1, 1, 1).is_err());
    }

    #[test]
    fn twist_closure_base_case() {
        // Σ_j coeff_j θ(1,1,2j) = Σ_j γ(1,1,2j) Δ_{2j}
        let coeffs = twist_coefficients(1, 1);
        let mut acc = RationalFn::zero();
        for (j, c) in coeffs.iter().enumerate() {
            acc = &acc + &(c * &theta(AdmissibleTriple::new(1, 1, 2 * j as i64).unwrap()));
        }
        assert_eq!(acc.to_poly().unwrap(), p("A^-1+A^-5"));
        assert_eq!(acc.to_poly().unwrap(), &p("-A^-3") * &delta(1).unwrap());
    }

    #[test]
    fn twist_degrees_decrease() {
        for n in 1..=10i64 {
            let d = |j: i64| gamma(n, n, 2 * j).unwrap().min_degree().unwrap();
            assert_eq!(d(n), d(n - 1) - 4 * n);
            for j in 1..=n {
                assert!(d(j) <= d(j - 1));
            }
        }
    }

    #[test]
    fn fusion_ratio_degrees_step_by_two() {
        for n in 1..=10u32 {
            let ds: Vec<i64> = (0..=n as i64)
                .map(|j| {
                    let th = theta(AdmissibleTriple::new(n as i64, n as i64, 2 * j).unwrap());
                    RationalFn::new(&delta(2 * j).unwrap() * th.den(), th.num().clone())
                        .unwrap()
                        .min_degree()
                        .unwrap()
                })
                .collect();
            for j in 1..=n as usize {
                assert_eq!(ds[j], ds[j - 1] - 2, "n={n} j={j}");
            }
        }
    }
}
