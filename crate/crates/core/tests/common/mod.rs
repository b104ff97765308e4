//! Independent re-implementations used as oracles by the integration tests.
//! Nothing here calls into the admissibility or edge code of the crate.

#![allow(dead_code)]

use pseries::algebra::CaseTag;
use pseries::transition::Shift;
use pseries::{AlgebraData, Family, KType};
use rand::rngs::StdRng;
use rand::Rng;

/// Admissibility of `(μ; q)` written out per case.
pub fn admissible(alg: &AlgebraData, mu: [i64; 4], q: i64) -> bool {
    let a = q.abs();
    if mu.iter().any(|m| (m - q).rem_euclid(2) != 0) {
        return false;
    }
    let [m1, m2, m3, m4] = mu;
    match alg.case_tag {
        CaseTag::SplitExceptional => m1 >= m2 && m2 >= m3 && m3 >= m4 && m4 >= a,
        CaseTag::QuaternionicGeneric => m1 >= a && m2 >= m3 && m3 >= m4 && m4 >= a,
        CaseTag::QuaternionicSO4d if alg.d == 4 => mu.iter().all(|&m| m >= a),
        CaseTag::QuaternionicSO4d => m1 >= a && m2 >= a && m3 >= m4 && m4 >= a,
    }
}

pub fn ktype_admissible(alg: &AlgebraData, k: &KType) -> bool {
    let p_ok = match k.family {
        Family::Raw => true,
        Family::Even => k.p >= 0,
        Family::Odd => k.p > 0,
    };
    p_ok && admissible(alg, k.mu, k.l) && admissible(alg, k.mu, k.p)
}

/// `(shift, target, c)` for every one of the 64 shifts that survives.
pub fn oracle_edges(alg: &AlgebraData, k: &KType) -> Vec<(Shift, KType, i64)> {
    let mut out = Vec::new();
    let signs = [1i64, -1];
    for code in 0..64u32 {
        let bit = |i: u32| signs[((code >> (5 - i)) & 1) as usize];
        let sigma = [bit(0), bit(1), bit(2), bit(3)];
        let (d1, d2) = (bit(4), bit(5));
        let mu = [
            k.mu[0] + sigma[0],
            k.mu[1] + sigma[1],
            k.mu[2] + sigma[2],
            k.mu[3] + sigma[3],
        ];
        let raw_p = k.p + d2;
        let p = match k.family {
            Family::Raw => raw_p,
            Family::Even => raw_p.abs(),
            Family::Odd if raw_p == 0 => continue,
            Family::Odd => raw_p.abs(),
        };
        let target = KType::new(mu, k.l + d1, p, k.family);
        if !ktype_admissible(alg, &target) {
            continue;
        }
        let rho_sum: i64 = alg.rho.iter().sum();
        let mut c = -rho_sum - 2 * k.p * d2;
        for ((m, r), s) in k.mu.iter().zip(alg.rho).zip(sigma) {
            c += (m + r) * s;
        }
        out.push((Shift::new(sigma, d1, d2), target, c));
    }
    out
}

/// A uniformly drawn admissible K-type with coordinates at most `bound`.
pub fn random_ktype(rng: &mut StdRng, alg: &AlgebraData, family: Family, bound: i64) -> KType {
    loop {
        let parity = rng.gen_range(0..2);
        let mut mu = [0; 4];
        for m in mu.iter_mut() {
            *m = parity + 2 * rng.gen_range(0..=bound / 2);
        }
        let l = rng.gen_range(-bound..=bound);
        let p = rng.gen_range(-bound..=bound);
        let k = KType::new(mu, l, p, family);
        if ktype_admissible(alg, &k) {
            return k;
        }
    }
}

/// The seven named rows and `so(4, d)` for `d = 4..=20`.
pub fn catalog() -> Vec<AlgebraData> {
    pseries::algebra::catalog_with_so4d(4..=20)
}
