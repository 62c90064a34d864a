//! Milnor's exotic 7-spheres: 4-plane bundles over S⁴, the homology of their
//! sphere bundles, and the signature-theorem integrality test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bordism::FiniteAbelianGroup;
use crate::exactnum::{binomial, Rational};
use crate::genus::{common_denominator, l_polynomial};
use crate::symmpoly::{partitions_of, Partition};
use crate::Error;

/// An oriented 4-plane bundle over S⁴ by its Euler number and first
/// Pontrjagin number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleData {
    pub euler: i64,
    pub pontrjagin1: i64,
}

impl BundleData {
    /// Requires p₁ ≡ 2χ (mod 4).
    pub fn new(euler: i64, pontrjagin1: i64) -> Result<Self, Error> {
        if (pontrjagin1 - 2 * euler).rem_euclid(4) != 0 {
            return Err(Error::invalid(format!(
                "p1 = {pontrjagin1} is not congruent to 2χ = {} mod 4",
                2 * euler
            )));
        }
        Ok(BundleData { euler, pontrjagin1 })
    }

    /// The pair (a, b) = ((2χ + p₁)/4, (2χ − p₁)/4) classifying the bundle.
    pub fn to_pair(&self) -> (i64, i64) {
        (
            (2 * self.euler + self.pontrjagin1) / 4,
            (2 * self.euler - self.pontrjagin1) / 4,
        )
    }
}

/// The bundle with classifying pair (a, b): χ = a + b, p₁ = 2(a − b).
pub fn classify_bundle_pair(a: i64, b: i64) -> BundleData {
    BundleData {
        euler: a + b,
        pontrjagin1: 2 * (a - b),
    }
}

/// H_0..H_7 of the 3-sphere bundle with Euler number χ: Z in degrees 0 and 7,
/// coker(χ) in degree 3 and ker(χ) in degree 4.
pub fn sphere_bundle_homology(euler: i64) -> Vec<FiniteAbelianGroup> {
    let mut h = vec![FiniteAbelianGroup::trivial(); 8];
    h[0] = FiniteAbelianGroup::integers();
    h[7] = FiniteAbelianGroup::integers();
    if euler == 0 {
        h[3] = FiniteAbelianGroup::integers();
        h[4] = FiniteAbelianGroup::integers();
    } else {
        h[3] = FiniteAbelianGroup::cyclic(euler.unsigned_abs());
    }
    h
}

/// p_j(CP^n) = C(n+1, j) for j = 1..⌊n/2⌋.
pub fn pontrjagin_cp(n: u64) -> Vec<BigInt> {
    (1..=n / 2).map(|j| binomial(n + 1, j)).collect()
}

/// Pontrjagin numbers p_I[M] of a closed 4k-manifold, keyed by partitions of k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PontrjaginNumbers {
    k: u32,
    values: BTreeMap<Partition, BigInt>,
}

impl PontrjaginNumbers {
    pub fn new(dimension: u32, values: BTreeMap<Partition, BigInt>) -> Result<Self, Error> {
        if !dimension.is_multiple_of(4) || dimension == 0 {
            return Err(Error::invalid(format!(
                "dimension {dimension} is not a positive multiple of 4"
            )));
        }
        let k = dimension / 4;
        if let Some(bad) = values.keys().find(|p| p.weight() != k) {
            return Err(Error::invalid(format!("{bad} does not partition {k}")));
        }
        Ok(PontrjaginNumbers { k, values })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dimension(&self) -> u32 {
        4 * self.k
    }

    pub fn get(&self, partition: &Partition) -> Option<&BigInt> {
        self.values.get(partition)
    }

    pub fn values(&self) -> &BTreeMap<Partition, BigInt> {
        &self.values
    }
}

/// Pontrjagin numbers of CP^{2k}: p_I = Π_j C(2k+1, i_j), since the
/// cohomology ring is generated by one class x with x^{2k}[CP^{2k}] = 1.
pub fn cp_pontrjagin_numbers(k: u32) -> PontrjaginNumbers {
    let n = 2 * k as u64;
    let values = partitions_of(k)
        .into_iter()
        .map(|p| {
            let v: BigInt = p
                .parts()
                .iter()
                .map(|&i| binomial(n + 1, i as u64))
                .product();
            (p, v)
        })
        .collect();
    PontrjaginNumbers::new(4 * k, values).expect("partitions of k")
}

/// One summand c_I · p_I of ⟨L_k, [M]⟩ written over the common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureTerm {
    pub partition: Partition,
    pub coefficient: BigInt,
    pub number: BigInt,
    pub product: BigInt,
}

/// ⟨L_k, [M]⟩ as (Σ terms) / denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureBreakdown {
    pub denominator: BigInt,
    pub terms: Vec<SignatureTerm>,
    pub value: Rational,
}

impl fmt::Display for SignatureBreakdown {
    /// `(48006 - 53676 - 24624 + 64152 - 19683)/14175 = 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sum = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.product.is_negative();
            match (i, neg) {
                (0, true) => sum.push('-'),
                (0, false) => {}
                (_, true) => sum.push_str(" - "),
                (_, false) => sum.push_str(" + "),
            }
            sum.push_str(&t.product.abs().to_string());
        }
        if sum.is_empty() {
            sum.push('0');
        }
        write!(f, "({sum})/{} = {}", self.denominator, self.value)
    }
}

/// Expands ⟨L_k(p_1, …, p_k), [M]⟩ term by term in the order L_k is
/// conventionally written (p_k first, p_1^k last).
pub fn signature_breakdown(pn: &PontrjaginNumbers) -> Result<SignatureBreakdown, Error> {
    let l = l_polynomial(pn.k);
    let denominator = common_denominator(&l);
    let scale = Rational::from(denominator.clone());
    let mut terms = Vec::new();
    for (mono, coeff) in l.ordered_terms().into_iter().rev() {
        let partition = Partition::from_multiplicities(&mono.dense(pn.k as usize));
        let number = pn.get(&partition).cloned().ok_or_else(|| {
            Error::IncompleteData(format!("missing Pontrjagin number for {partition}"))
        })?;
        let coefficient = (coeff * &scale)
            .to_integer()
            .expect("scaled by the common denominator");
        let product = &coefficient * &number;
        terms.push(SignatureTerm {
            partition,
            coefficient,
            number,
            product,
        });
    }
    let numerator: BigInt = terms.iter().map(|t| &t.product).sum();
    let value = Rational::new(numerator, denominator.clone())?;
    Ok(SignatureBreakdown {
        denominator,
        terms,
        value,
    })
}

/// σ(M) = ⟨L_k(p_1, …, p_k), [M]⟩.
pub fn hirzebruch_signature(pn: &PontrjaginNumbers) -> Result<Rational, Error> {
    Ok(signature_breakdown(pn)?.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// p₂ is not integral, so the bundle's sphere is not diffeomorphic to S⁷.
    Exotic,
    /// p₂ is integral; the test is inconclusive.
    StandardConsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exotic => "Exotic",
            Verdict::StandardConsistent => "StandardConsistent",
        })
    }
}

/// Outcome of the integrality test for the bundle with χ = 1, p₁ = 2k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorReport {
    pub k: BigInt,
    pub p1: BigInt,
    pub p2: Rational,
    pub verdict: Verdict,
}

impl MilnorReport {
    /// `7*p2 - p1^2 = 45` with the values substituted.
    pub fn constraint(&self) -> String {
        let p2 = if self.p2.is_integer() {
            self.p2.to_string()
        } else {
            format!("({})", self.p2)
        };
        let p1 = if self.p1.is_negative() {
            format!("({})", self.p1)
        } else {
            self.p1.to_string()
        };
        let lhs = Rational::from(7) * self.p2.clone()
            - Rational::from(self.p1.clone()) * Rational::from(self.p1.clone());
        format!("7*{p2} - {p1}^2 = {lhs}")
    }
}

/// p₂(M) = (45 + 4k²)/7 from 7p₂ − p₁² = 45 with p₁ = 2k.
pub fn milnor_p2(k: &BigInt) -> Rational {
    let k2 = Rational::from(k * k);
    (Rational::from(45) + Rational::from(4) * k2) / Rational::from(7)
}

/// The same quantity as (4/7)(k² − 1) + 7.
pub fn milnor_p2_shifted(k: &BigInt) -> Rational {
    let k2 = Rational::from(k * k);
    Rational::from(4) * (k2 - Rational::from(1)) / Rational::from(7) + Rational::from(7)
}

/// Exotic iff k² ≢ 1 (mod 7). k must be odd.
pub fn milnor_detect(k: impl Into<BigInt>) -> Result<MilnorReport, Error> {
    let k = k.into();
    if k.is_even() {
        return Err(Error::invalid(format!("k = {k} must be odd")));
    }
    let p2 = milnor_p2(&k);
    debug_assert_eq!(p2, milnor_p2_shifted(&k));
    let integral = (&k * &k - 1u32).mod_floor(&BigInt::from(7)).is_zero();
    debug_assert_eq!(integral, p2.is_integer());
    Ok(MilnorReport {
        p1: &k * 2,
        k,
        p2,
        verdict: if integral {
            Verdict::StandardConsistent
        } else {
            Verdict::Exotic
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundle_pairs() {
        assert_eq!(classify_bundle_pair(1, 0), BundleData::new(1, 2).unwrap());
        assert_eq!(classify_bundle_pair(0, 0), BundleData::new(0, 0).unwrap());
        for k in [-7i64, -1, 1, 3, 5, 13] {
            let b = BundleData::new(1, 2 * k).unwrap();
            let (x, y) = b.to_pair();
            assert_eq!(classify_bundle_pair(x, y), b);
        }
        assert!(BundleData::new(1, 0).is_err());
        for a in -20..=20 {
            for b in -20..=20 {
                let d = classify_bundle_pair(a, b);
                assert!(BundleData::new(d.euler, d.pontrjagin1).is_ok());
                assert_eq!(d.to_pair(), (a, b));
            }
        }
    }

    #[test]
    fn homology() {
        let s7 = sphere_bundle_homology(1);
        for (p, g) in s7.iter().enumerate() {
            let expect = if p == 0 || p == 7 {
                FiniteAbelianGroup::integers()
            } else {
                FiniteAbelianGroup::trivial()
            };
            assert_eq!(g, &expect);
        }
        let h0 = sphere_bundle_homology(0);
        assert_eq!(h0[3], FiniteAbelianGroup::integers());
        assert_eq!(h0[4], FiniteAbelianGroup::integers());
        let h2 = sphere_bundle_homology(-2);
        assert_eq!(h2[3], FiniteAbelianGroup::cyclic(2));
        assert!(h2[4].is_trivial());
        for chi in -6..=6 {
            let h = sphere_bundle_homology(chi);
            let rank: u32 = h.iter().map(|g| g.free_rank()).sum();
            assert_eq!(rank, if chi == 0 { 4 } else { 2 });
            for (p, g) in h.iter().enumerate() {
                if p != 3 {
                    assert!(g.torsion().is_empty());
                }
            }
        }
    }

    #[test]
    fn cp_classes() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(pontrjagin_cp(2), ints(&[3]));
        assert_eq!(pontrjagin_cp(6), ints(&[7, 21, 35]));
        assert_eq!(pontrjagin_cp(8), ints(&[9, 36, 84, 126]));
    }

    #[test]
    fn cp_signatures() {
        for k in 1..=4 {
            assert_eq!(
                hirzebruch_signature(&cp_pontrjagin_numbers(k)).unwrap(),
                Rational::from(1)
            );
        }
        assert_eq!(
            signature_breakdown(&cp_pontrjagin_numbers(4))
                .unwrap()
                .to_string(),
            "(48006 - 53676 - 24624 + 64152 - 19683)/14175 = 1"
        );
        let part = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        let cp4 = PontrjaginNumbers::new(
            8,
            [
                (part(&[1, 1]), BigInt::from(25)),
                (part(&[2]), BigInt::from(10)),
            ]
            .into(),
        )
        .unwrap();
        assert_eq!(hirzebruch_signature(&cp4).unwrap(), Rational::from(1));
        let partial = PontrjaginNumbers::new(8, [(part(&[2]), BigInt::from(10))].into()).unwrap();
        assert!(matches!(
            hirzebruch_signature(&partial),
            Err(Error::IncompleteData(_))
        ));
        let zeros = PontrjaginNumbers::new(
            8,
            [
                (part(&[1, 1]), BigInt::zero()),
                (part(&[2]), BigInt::zero()),
            ]
            .into(),
        )
        .unwrap();
        assert_eq!(hirzebruch_signature(&zeros).unwrap(), Rational::zero());
    }

    #[test]
    fn detector() {
        let r1 = milnor_detect(1).unwrap();
        assert_eq!(r1.p2, Rational::from(7));
        assert_eq!(r1.verdict, Verdict::StandardConsistent);
        let r3 = milnor_detect(3).unwrap();
        assert_eq!(r3.p2, Rational::new(81, 7).unwrap());
        assert_eq!(r3.verdict, Verdict::Exotic);
        assert_eq!(r3.constraint(), "7*(81/7) - 6^2 = 45");
        assert_eq!(
            milnor_detect(13).unwrap().verdict,
            Verdict::StandardConsistent
        );
        assert!(milnor_detect(2).is_err());
        for k in (-99i64..=199).step_by(2) {
            let r = milnor_detect(k).unwrap();
            let residue = k.rem_euclid(7);
            assert_eq!(
                r.verdict == Verdict::StandardConsistent,
                residue == 1 || residue == 6
            );
            assert_eq!(r.p2, milnor_p2_shifted(&BigInt::from(k)));
        }
    }
}
