//! Eigenvalues of the Casimir elements and of the conformally invariant
//! operator Ω on a K-type.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ktype::Weight;

/// `Σ_j (μ_j + 2ρ_j) μ_j` over the given coordinate indices.
fn quadratic(alg: &AlgebraData, mu: &Weight, idx: std::ops::Range<usize>) -> i64 {
    idx.map(|j| (mu[j] + 2 * alg.rho[j]) * mu[j]).sum()
}

/// Eigenvalue of the Casimir of `k` on `W_μ`: `-½ Σ_j (μ_j + 2ρ_j) μ_j`.
pub fn cas_mu(alg: &AlgebraData, mu: &Weight) -> Rational {
    Rational::new(-quadratic(alg, mu, 0..4), 2)
}

/// Eigenvalue of `Cas₂ = -½H²` on sections of `χ^p`: `-2p²`.
pub fn cas2_p(p: i64) -> Rational {
    Rational::from_int(-2 * p * p)
}

fn require_omega(alg: &AlgebraData) -> Result<()> {
    if alg.has_omega() {
        Ok(())
    } else {
        Err(Error::OmegaNotDefined(alg.name()))
    }
}

/// The μ-dependent part `-3(μ₁+2ρ₁)μ₁ + Σ_{j≥2}(μ_j+2ρ_j)μ_j` shared by the
/// Ω eigenvalue and the kernel equation.
fn omega_quadratic(alg: &AlgebraData, mu: &Weight) -> i64 {
    -3 * quadratic(alg, mu, 0..1) + quadratic(alg, mu, 1..4)
}

/// Eigenvalue of Ω on `W_{μ,p}` in `I(ν)`:
/// `(d-4)ν - 3(μ₁+2ρ₁)μ₁ + Σ_{j≥2}(μ_j+2ρ_j)μ_j`. Independent of `p`.
pub fn omega_eigenvalue(alg: &AlgebraData, mu: &Weight, nu: &Rational) -> Result<Rational> {
    require_omega(alg)?;
    Ok(&(nu * (alg.d - 4)) + omega_quadratic(alg, mu))
}

/// Left side of the kernel equation in its printed form
/// `3a(a+2) - 3(μ₁+2ρ₁)μ₁ + Σ_{j≥2}(μ_j+2ρ_j)μ_j`.
///
/// This agrees with [`omega_eigenvalue`] at `ν = a + 2` exactly when
/// `d - 4 = 3a`, i.e. on the quaternionic rows and `so(4, 4)`. For
/// `so(4, d)`, `d > 4`, the two differ by the constant `2a(a+2)`.
pub fn kernel_equation_lhs(alg: &AlgebraData, mu: &Weight) -> Result<i64> {
    require_omega(alg)?;
    Ok(3 * alg.a * (alg.a + 2) + omega_quadratic(alg, mu))
}

/// The parameter `ν = a + 2` at which the minimal representation sits.
pub fn minrep_nu(alg: &AlgebraData) -> Rational {
    Rational::from_int(alg.a + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueReport {
    pub cas_mu: Rational,
    pub cas2_p: Rational,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omega: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu_used: Option<Rational>,
}

/// Casimir data for `(μ, p)`. Ω is included only where it is defined; it is
/// evaluated at `nu`, or at `a + 2` when `nu` is not given.
pub fn eigenvalue_report(
    alg: &AlgebraData,
    mu: &Weight,
    p: i64,
    nu: Option<Rational>,
) -> EigenvalueReport {
    let (omega, nu_used) = if alg.has_omega() {
        let nu = nu.unwrap_or_else(|| minrep_nu(alg));
        let omega = omega_eigenvalue(alg, mu, &nu).expect("scope checked");
        (Some(omega), Some(nu))
    } else {
        (None, nu)
    };
    EigenvalueReport {
        cas_mu: cas_mu(alg, mu),
        cas2_p: cas2_p(p),
        omega,
        nu_used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lookup, lookup_name, AlgebraId};
    use crate::ktype::weights_up_to;

    #[test]
    fn cas_mu_examples() {
        let e77 = lookup(AlgebraId::E7_7).unwrap();
        assert_eq!(cas_mu(&e77, &[1, 1, 1, 1]), Rational::from_int(-18));
        assert_eq!(cas_mu(&e77, &[0; 4]), Rational::zero());
        let f44 = lookup(AlgebraId::F4_4).unwrap();
        assert_eq!(cas_mu(&f44, &[2, 0, 0, 0]), Rational::from_int(-4));
        // half-integers do occur
        assert_eq!(cas_mu(&f44, &[1, 0, 0, 0]), Rational::new(-3, 2));
    }

    #[test]
    fn cas2_examples() {
        assert_eq!(cas2_p(0), Rational::zero());
        assert_eq!(cas2_p(1), Rational::from_int(-2));
        assert_eq!(cas2_p(3), Rational::from_int(-18));
        assert_eq!(cas2_p(-3), Rational::from_int(-18));
    }

    #[test]
    fn cas_mu_strictly_decreasing_in_each_coordinate() {
        for alg in crate::algebra::catalog_with_so4d(4..=8) {
            for mu in weights_up_to(8) {
                for j in 0..4 {
                    let mut up = mu;
                    up[j] += 1;
                    assert!(cas_mu(&alg, &up) < cas_mu(&alg, &mu), "{alg} {mu:?} {j}");
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let e62 = lookup(AlgebraId::E6_2).unwrap();
        assert_eq!(
            omega_eigenvalue(&e62, &[2, 0, 0, 0], &Rational::from_int(4)).unwrap(),
            Rational::zero()
        );
        let so44 = lookup(AlgebraId::So4d(4)).unwrap();
        assert_eq!(
            omega_eigenvalue(&so44, &[0; 4], &Rational::from_int(2)).unwrap(),
            Rational::zero()
        );
        for n in 0..=50 {
            let mu = [2 + n, n, n, n];
            assert!(omega_eigenvalue(&e62, &mu, &Rational::from_int(4)).unwrap().is_zero());
        }
    }

    #[test]
    fn omega_scope_errors() {
        for name in ["f4_4", "e6_6", "e7_7", "e8_8", "so4d(5)"] {
            let alg = lookup_name(name).unwrap();
            assert_eq!(
                omega_eigenvalue(&alg, &[0; 4], &Rational::zero()),
                Err(Error::OmegaNotDefined(alg.name()))
            );
            assert!(kernel_equation_lhs(&alg, &[0; 4]).is_err());
        }
    }

    #[test]
    fn line_is_in_the_kernel_coefficientwise() {
        // Ω(a+n, n,n,n) at ν = a+2 is a polynomial in n of degree ≤ 2; it
        // vanishes identically iff it vanishes at three points.
        for id in [AlgebraId::E6_2, AlgebraId::E7M5, AlgebraId::E8M24, AlgebraId::So4d(4)] {
            let alg = lookup(id).unwrap();
            let nu = minrep_nu(&alg);
            let at = |n: i64| {
                omega_eigenvalue(&alg, &[alg.a + n, n, n, n], &nu)
                    .unwrap()
                    .to_i64()
                    .unwrap()
            };
            let (v0, v1, v2) = (at(0), at(1), at(2));
            let constant = v0;
            let quad = (v2 - 2 * v1 + v0) / 2;
            let linear = v1 - v0 - quad;
            assert_eq!((constant, linear, quad), (0, 0, 0), "{alg}");
        }
    }

    #[test]
    fn kernel_equation_residual_for_so4d_off_line() {
        for d in [6, 8, 10, 20] {
            let alg = lookup(AlgebraId::So4d(d)).unwrap();
            let a = alg.a;
            for n in 0..10 {
                let mu = [a + n, n, n, n];
                assert_eq!(kernel_equation_lhs(&alg, &mu).unwrap(), -4 * a * n);
                let omega = omega_eigenvalue(&alg, &mu, &minrep_nu(&alg)).unwrap();
                assert_eq!(omega, Rational::from_int(-2 * a * (a + 2) - 4 * a * n));
            }
        }
    }

    #[test]
    fn report_defaults() {
        let e62 = lookup(AlgebraId::E6_2).unwrap();
        let r = eigenvalue_report(&e62, &[2, 0, 0, 0], 0, None);
        assert_eq!(r.omega, Some(Rational::zero()));
        assert_eq!(r.nu_used, Some(Rational::from_int(4)));
        let e77 = lookup(AlgebraId::E7_7).unwrap();
        let r = eigenvalue_report(&e77, &[1, 1, 1, 1], 1, None);
        assert_eq!(r.omega, None);
        assert_eq!(r.cas_mu, Rational::from_int(-18));
        assert_eq!(r.cas2_p, Rational::from_int(-2));
    }
}
