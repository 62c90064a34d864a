//! Dimensions of jet spaces, prolongations and symbols of the Ricci flow
//! equation over an n-manifold.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::exactnum::binomial;
use crate::Error;

/// One row of the dimension table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetDims {
    pub n: u32,
    pub s: u32,
    pub dim_jet: u128,
    pub dim_rf: u128,
    pub dim_symbol: u128,
}

fn check_n(n: u32) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::invalid("manifold dimension must be at least 1"));
    }
    Ok(())
}

/// (n+1)n/2, the factor multiplying every multi-index count.
fn fibre_factor(n: u32) -> BigInt {
    BigInt::from(n as u64 * (n as u64 + 1) / 2)
}

/// Σ_{0 ≤ r ≤ top} C(n+r, r).
fn multi_index_sum(n: u32, top: u32) -> BigInt {
    (0..=top as u64).map(|r| binomial(n as u64 + r, r)).sum()
}

fn narrow(v: BigInt) -> Result<u128, Error> {
    v.to_u128()
        .ok_or_else(|| Error::invalid(format!("dimension {v} does not fit in 128 bits")))
}

/// dim JD^{2+s}(E) = n + 1 + Σ_{0≤r≤2+s} ((n+1)n/2) C(n+r, r).
pub fn dim_jet_space(n: u32, s: u32) -> Result<u128, Error> {
    check_n(n)?;
    narrow(BigInt::from(n + 1) + fibre_factor(n) * multi_index_sum(n, 2 + s))
}

/// dim (RF)_{+s} = n + 1 + ((n+1)n/2)[Σ_{0≤r≤2+s} C(n+r, r) − Σ_{0≤r'≤s} C(n+r', r')].
pub fn dim_rf_prolongation(n: u32, s: u32) -> Result<u128, Error> {
    check_n(n)?;
    let bracket = multi_index_sum(n, 2 + s) - multi_index_sum(n, s);
    narrow(BigInt::from(n + 1) + fibre_factor(n) * bracket)
}

/// dim g_{2+s} = ((n+1)n/2)[C(n+2+s, 2+s) − C(n+s, s)].
pub fn dim_symbol(n: u32, s: u32) -> Result<u128, Error> {
    check_n(n)?;
    let (n, s) = (n as u64, s as u64);
    let bracket = binomial(n + 2 + s, 2 + s) - binomial(n + s, s);
    narrow(fibre_factor(n as u32) * bracket)
}

pub fn jet_dims(n: u32, s: u32) -> Result<JetDims, Error> {
    Ok(JetDims {
        n,
        s,
        dim_jet: dim_jet_space(n, s)?,
        dim_rf: dim_rf_prolongation(n, s)?,
        dim_symbol: dim_symbol(n, s)?,
    })
}

/// dim (RF)_{+s} = dim (RF)_{+(s−1)} + dim g_{2+s}, for s ≥ 1.
pub fn recurrence_holds(n: u32, s: u32) -> Result<bool, Error> {
    if s == 0 {
        return Err(Error::invalid("the recurrence starts at s = 1"));
    }
    Ok(dim_rf_prolongation(n, s)? == dim_rf_prolongation(n, s - 1)? + dim_symbol(n, s)?)
}

/// Rows s = 0..=s_max.
pub fn jet_table(n: u32, s_max: u32) -> Result<Vec<JetDims>, Error> {
    (0..=s_max).map(|s| jet_dims(n, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(dim_jet_space(1, 0).unwrap(), 8);
        assert_eq!(dim_jet_space(2, 0).unwrap(), 33);
        assert_eq!(dim_symbol(1, 0).unwrap(), 2);
        assert_eq!(dim_symbol(2, 1).unwrap(), 21);
        assert!(recurrence_holds(3, 2).unwrap());
        assert!(dim_jet_space(0, 0).is_err());
        assert!(recurrence_holds(3, 0).is_err());
    }

    #[test]
    fn table_properties() {
        for n in 1..=6 {
            assert!(dim_rf_prolongation(n, 0).unwrap() > 2 * (n as u128 + 1) + 1);
            let rows = jet_table(n, 6).unwrap();
            for w in rows.windows(2) {
                assert!(w[1].dim_jet > w[0].dim_jet);
                assert!(w[1].dim_rf > w[0].dim_rf);
                if n == 1 {
                    // C(3+s, 2+s) − C(1+s, s) = 2 for every s
                    assert_eq!(w[1].dim_symbol, w[0].dim_symbol);
                } else {
                    assert!(w[1].dim_symbol > w[0].dim_symbol);
                }
            }
            for r in &rows {
                assert!(r.dim_rf <= r.dim_jet);
                if r.s > 0 {
                    assert!(recurrence_holds(n, r.s).unwrap());
                }
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(dim_jet_space(400, 400).is_err());
    }
}
