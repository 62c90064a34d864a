//! Multiplicative sequences built from a characteristic power series, and
//! the Hirzebruch L-genus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exactnum::{bernoulli, factorial, Rational};
use crate::symmpoly::{
    format_terms, graded_variables, partitions_of, s_polynomial, GradedPolynomial, Partition,
};
use crate::Error;

type CoefficientRule = dyn Fn(u32) -> Rational + Send + Sync;

/// The multiplicative sequence K_n = Σ_I λ_I s_I(p_1, …, p_n) attached to a
/// characteristic series 1 + λ_1 z + λ_2 z² + ….
#[derive(Clone)]
pub struct MultiplicativeSequence {
    name: String,
    lambda: Arc<CoefficientRule>,
    cache: Arc<Mutex<HashMap<u32, GradedPolynomial>>>,
}

impl fmt::Debug for MultiplicativeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeSequence")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl MultiplicativeSequence {
    /// `lambda(k)` gives the coefficient of z^k, k ≥ 1; λ_0 is always 1.
    pub fn new(
        name: impl Into<String>,
        lambda: impl Fn(u32) -> Rational + Send + Sync + 'static,
    ) -> Self {
        MultiplicativeSequence {
            name: name.into(),
            lambda: Arc::new(lambda),
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// The sequence of the L-genus, series √z / tanh √z.
    pub fn l_genus() -> Self {
        static SHARED: OnceLock<MultiplicativeSequence> = OnceLock::new();
        SHARED
            .get_or_init(|| MultiplicativeSequence::new("L", l_lambda))
            .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self, k: u32) -> Rational {
        if k == 0 {
            Rational::one()
        } else {
            (self.lambda)(k)
        }
    }

    /// λ_I = Π λ_{i_j}.
    pub fn lambda_of(&self, partition: &Partition) -> Rational {
        partition.parts().iter().map(|&i| self.lambda(i)).product()
    }

    /// K_n as a polynomial in p_1..p_n (p_i of weight i). K_0 = 1.
    pub fn polynomial(&self, n: u32) -> GradedPolynomial {
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(&n) {
            return p.clone();
        }
        let vars = graded_variables("p", n as usize);
        let mut k = GradedPolynomial::zero(&vars);
        for partition in partitions_of(n) {
            let coeff = self.lambda_of(&partition);
            if coeff.is_zero() {
                continue;
            }
            let s = s_polynomial(&partition)
                .with_variables(&vars)
                .expect("s_I has weight(I) variables");
            k = k.add(&s.scale(&coeff));
        }
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(n)
            .or_insert(k)
            .clone()
    }

    /// The weight-w component K_w(a_1, …, a_w) of K(a).
    pub fn evaluate(&self, a: &[Rational], weight: u32) -> Result<Rational, Error> {
        apply_sequence(self, a, weight)
    }
}

/// λ_k = 2^{2k} B_{2k} / (2k)!, the coefficient of z^k in √z / tanh √z.
/// λ_0 = 1.
pub fn l_lambda(k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let two_k = 2 * k;
    let power = Rational::from(BigInt::one() << (two_k as usize));
    power * bernoulli(two_k) / Rational::from(factorial(two_k as u64))
}

/// The Hirzebruch polynomial L_k in p_1..p_k.
pub fn l_polynomial(k: u32) -> GradedPolynomial {
    MultiplicativeSequence::l_genus().polynomial(k)
}

/// A truncated power series; `coefficients[i]` multiplies z^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPowerSeries {
    pub coefficients: Vec<Rational>,
}

impl FormalPowerSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coefficients
            .get(i)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for FormalPowerSeries {
    /// `1 + z/3 - z^2/45` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let power = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else {
                let num = mag.numer();
                let den = mag.denom();
                if num.is_one() {
                    f.write_str(&power)?;
                } else {
                    write!(f, "{num}*{power}")?;
                }
                if !den.is_one() {
                    write!(f, "/{den}")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients of √z / tanh √z through z^order.
pub fn l_series(order: usize) -> FormalPowerSeries {
    FormalPowerSeries {
        coefficients: (0..=order as u32).map(l_lambda).collect(),
    }
}

/// K_w(a_1, …, a_w) for the graded element a = 1 + a_1 + a_2 + … with
/// `a[i-1]` the degree-i part.
pub fn apply_sequence(
    seq: &MultiplicativeSequence,
    a: &[Rational],
    weight: u32,
) -> Result<Rational, Error> {
    if weight as usize > a.len() {
        return Err(Error::MissingComponents {
            weight: weight as usize,
            available: a.len(),
        });
    }
    if weight == 0 {
        return Ok(Rational::one());
    }
    seq.polynomial(weight).evaluate(&a[..weight as usize])
}

/// Writes a polynomial as one fraction with an integral numerator, terms in
/// descending order and each monomial's variables highest index first,
/// e.g. `(7*p2 - p1^2)/45`.
pub fn format_fraction_layout(poly: &GradedPolynomial) -> String {
    let denom = poly
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = Rational::from(denom.clone());
    let terms: Vec<(String, Rational)> = poly
        .ordered_terms()
        .into_iter()
        .rev()
        .map(|(m, c)| (poly.format_monomial(m, true), c * &scale))
        .collect();
    let numerator = format_terms(&terms);
    if denom.is_one() {
        numerator
    } else if terms.len() == 1 {
        format!("{numerator}/{denom}")
    } else {
        format!("({numerator})/{denom}")
    }
}

/// The least common denominator of all coefficients.
pub fn common_denominator(poly: &GradedPolynomial) -> BigInt {
    poly.terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmpoly::Monomial;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn lambdas() {
        assert_eq!(l_lambda(0), r(1, 1));
        assert_eq!(l_lambda(1), r(1, 3));
        assert_eq!(l_lambda(2), r(-1, 45));
        assert_eq!(l_lambda(3), r(2, 945));
        assert_eq!(l_lambda(4), r(-1, 4725));
    }

    #[test]
    fn table_layout() {
        assert_eq!(format_fraction_layout(&l_polynomial(1)), "p1/3");
        assert_eq!(format_fraction_layout(&l_polynomial(2)), "(7*p2 - p1^2)/45");
        assert_eq!(
            format_fraction_layout(&l_polynomial(3)),
            "(62*p3 - 13*p2*p1 + 2*p1^3)/945"
        );
        assert_eq!(
            format_fraction_layout(&l_polynomial(4)),
            "(381*p4 - 71*p3*p1 - 19*p2^2 + 22*p2*p1^2 - 3*p1^4)/14175"
        );
    }

    #[test]
    fn series_text() {
        assert_eq!(l_series(2).to_string(), "1 + z/3 - z^2/45");
        assert_eq!(l_series(0).coefficients, vec![r(1, 1)]);
        assert_eq!(l_series(4).coefficient(4), r(-1, 4725));
    }

    #[test]
    fn apply_examples() {
        let l = MultiplicativeSequence::l_genus();
        assert_eq!(apply_sequence(&l, &[r(3, 1)], 1).unwrap(), r(1, 1));
        assert_eq!(apply_sequence(&l, &[], 0).unwrap(), r(1, 1));
        assert_eq!(apply_sequence(&l, &[r(0, 1), r(0, 1)], 2).unwrap(), r(0, 1));
        assert_eq!(
            apply_sequence(&l, &[r(1, 1)], 2),
            Err(Error::MissingComponents {
                weight: 2,
                available: 1
            })
        );
    }

    #[test]
    fn linear_series_gives_top_elementary() {
        // 1 + λz gives K_n = λ^n p_n.
        let lam = r(3, 2);
        let lam2 = lam.clone();
        let seq = MultiplicativeSequence::new("linear", move |k| {
            if k == 1 {
                lam2.clone()
            } else {
                Rational::zero()
            }
        });
        for n in 1..=4u32 {
            let k = seq.polynomial(n);
            assert_eq!(k.num_terms(), 1);
            let mut exps = vec![0; n as usize];
            exps[n as usize - 1] = 1;
            assert_eq!(k.coefficient(&Monomial::from_dense(&exps)), lam.pow(n));
        }
    }

    #[test]
    fn denominators_and_leading_coefficients() {
        let expected = [3, 45, 945, 14175];
        for k in 1..=4u32 {
            let l = l_polynomial(k);
            assert!(l.is_homogeneous_of(k));
            assert_eq!(
                common_denominator(&l),
                BigInt::from(expected[k as usize - 1])
            );
            let mut exps = vec![0; k as usize];
            exps[0] = k;
            assert_eq!(l.coefficient(&Monomial::from_dense(&exps)), l_lambda(k));
        }
    }
}
