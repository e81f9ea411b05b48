//! The two bilinear-form values against `F_{R,s}`, each with a second
//! evaluation that follows a different route, and the Brauer quotient
//! decomposition of `F_{R,s}`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::arith::{euler_phi, ExactRational};
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, Subgroup};
use crate::pairs::{pairs_are_conjugate, require_p_subgroup, MackeyPair};
use crate::perm::Permutation;
use crate::psub::{invariant_interval, p_subgroups_up_to_conjugacy};
use crate::quotient::QuotientGroup;

/// `⟨k, F_{R,s}⟩_G`: `φ(|R|) / |N_G(R,s)|` when `⟨sR⟩` is cyclic, else 0.
pub fn scal_k_f(pair: &MackeyPair) -> ExactRational {
    if pair.is_cyclic() {
        ExactRational::ratio(euler_phi(pair.r().order()), pair.stabilizer_order())
    } else {
        ExactRational::zero()
    }
}

/// `⟨k, F_{R,s}⟩_G` as a Möbius sum over `s`-invariant subgroups of `R`:
///
/// `1 / (|C_R(s)| |C_{N̄_G(R)}(s)|) · Σ_{Q ≤ R, Q^s = Q} |C_Q(s)| μ((Q, R)^s)`
///
/// with `s` a lift of `s̄` of order prime to `p`.
pub fn scal_k_f_oracle(pair: &MackeyPair) -> Result<ExactRational> {
    let s = pair.s_regular();
    let r = pair.r();
    let group = pair.group();
    let poset = invariant_interval(&group.trivial_subgroup(), r, &s)?;
    let top = poset.index_of(r).expect("top is a member");
    let mut sum = 0i64;
    for (i, q) in poset.members().iter().enumerate() {
        let mu = poset.moebius_by_index(i, top);
        if mu != 0 {
            sum += q.centralizer_of_element(&s).order() as i64 * mu;
        }
    }
    let c_r = r.centralizer_of_element(&s).order();
    Ok(ExactRational::ratio(sum, c_r * pair.centralizer_order()))
}

/// `Σ_{x ∈ R/[⟨sR⟩, R]} 1/|x|`.
pub fn abelian_quotient_inverse_order_sum(pair: &MackeyPair) -> Result<ExactRational> {
    let comm = commutator_subgroup(pair.preimage_sr(), pair.r())?;
    let quotient = QuotientGroup::new(pair.r(), &comm)?;
    Ok(quotient
        .image()
        .elements()
        .iter()
        .map(|x| ExactRational::ratio(1, x.order()))
        .sum())
}

/// `⟨⟨k, F_{R,s}⟩⟩_G = (1/|C_{N̄_G(R)}(s)|) · Σ_{x ∈ R/[⟨sR⟩, R]} 1/|x|`.
pub fn sscal_k_f(pair: &MackeyPair) -> Result<ExactRational> {
    let sum = abelian_quotient_inverse_order_sum(pair)?;
    Ok(sum / ExactRational::from(pair.centralizer_order()))
}

/// The decomposition of `F_{R,s}[Q]` into primitive idempotents of the
/// p-permutation Green ring of `N̄_G(Q)`.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    /// `N_G(Q)/Q`; every pair in `pairs` lives in its image group.
    pub quotient: Arc<QuotientGroup>,
    pub pairs: Vec<MackeyPair>,
}

/// `F_{R,s}[Q] = Σ F_{^xR/Q, ^xs}` over `x ∈ N_G(Q)\G/N_G(R,s)` with
/// `Q ⊴ ^x⟨sR⟩`.
pub fn brauer_quotient_of_f(pair: &MackeyPair, q: &Subgroup) -> Result<BrauerQuotient> {
    require_p_subgroup(q, pair.prime())?;
    let normalizer = pair.group().normalizer(q)?;
    let quotient = Arc::new(QuotientGroup::new(&normalizer, q)?);
    brauer_quotient_with(pair, quotient)
}

/// [`brauer_quotient_of_f`] with a prepared `N_G(Q)/Q`.
pub fn brauer_quotient_with(
    pair: &MackeyPair,
    quotient: Arc<QuotientGroup>,
) -> Result<BrauerQuotient> {
    let group = pair.group();
    let p = pair.prime();
    let q = quotient.kernel().clone();
    require_p_subgroup(&q, p)?;
    let n_q = quotient.numerator().clone();
    let stab = pair.stabilizer();
    let image = quotient.image().clone();

    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut pairs: Vec<MackeyPair> = Vec::new();
    for x in group.elements() {
        if covered.contains(x) {
            continue;
        }
        for n in n_q.elements() {
            let nx = n * x;
            for m in stab.elements() {
                covered.insert(&nx * m);
            }
        }
        // ^x H = x H x⁻¹ = H^(x⁻¹)
        let xi = x.inverse();
        let h = pair.preimage_sr().conjugate(&xi);
        if !q.is_normal_in(&h) {
            continue;
        }
        let r = pair.r().conjugate(&xi);
        let s = pair.s_lift().conjugate_by(&xi);
        let r_bar = quotient.project_subgroup(&r)?;
        let s_bar = quotient.project(&s).ok_or_else(|| {
            Error::inconsistent("brauer_quotient", "conjugated lift leaves N_G(Q)")
        })?;
        pairs.push(MackeyPair::from_parts(&image, p, &r_bar, &s_bar)?);
    }
    for i in 0..pairs.len() {
        for j in 0..i {
            if pairs_are_conjugate(&pairs[i], &pairs[j])? {
                return Err(Error::inconsistent(
                    "brauer_quotient",
                    "two double cosets produced conjugate pairs",
                ));
            }
        }
    }
    Ok(BrauerQuotient { quotient, pairs })
}

/// `⟨⟨k, F_{R,s}⟩⟩_G = Σ_{Q ∈ [S_p(G)]} ⟨k, F_{R,s}[Q]⟩_{N̄_G(Q)}`, computing
/// each Brauer quotient and summing [`scal_k_f`] over its constituents.
pub fn sscal_k_f_oracle(pair: &MackeyPair) -> Result<ExactRational> {
    let classes = p_subgroups_up_to_conjugacy(pair.group(), pair.prime())?;
    let quotients = crate::pairs::class_quotients(&classes)?;
    sscal_k_f_oracle_with(pair, &quotients)
}

pub(crate) fn sscal_k_f_oracle_with(
    pair: &MackeyPair,
    quotients: &[Arc<QuotientGroup>],
) -> Result<ExactRational> {
    let mut total = ExactRational::zero();
    for quotient in quotients {
        let bq = brauer_quotient_with(pair, quotient.clone())?;
        for constituent in &bq.pairs {
            total = total + scal_k_f(constituent);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cyc, s3, s4};
    use crate::group::FiniteGroup;
    use crate::pairs::enumerate_pairs;

    fn c2() -> FiniteGroup {
        FiniteGroup::generate(2, &[cyc(2, &[&[1, 2]])], 10).unwrap()
    }

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::ratio(n, d)
    }

    #[test]
    fn scal_examples() {
        let triv = enumerate_pairs(&FiniteGroup::trivial(1), 2).unwrap();
        assert_eq!(scal_k_f(&triv[0]), r(1, 1));
        let c2p = enumerate_pairs(&c2(), 2).unwrap();
        assert_eq!(scal_k_f(&c2p[1]), r(1, 2));
        let s3p = enumerate_pairs(&s3(), 3).unwrap();
        assert_eq!(scal_k_f(&s3p[3]), r(0, 1));
        // (1,1) in S3 is φ(1)/|S3|
        assert_eq!(scal_k_f(&s3p[0]), r(1, 6));
    }

    #[test]
    fn scal_oracle_examples() {
        let c2p = enumerate_pairs(&c2(), 2).unwrap();
        assert_eq!(scal_k_f_oracle(&c2p[1]).unwrap(), r(1, 2));
        let s3p = enumerate_pairs(&s3(), 3).unwrap();
        assert_eq!(scal_k_f_oracle(&s3p[0]).unwrap(), r(1, 6));
        assert_eq!(scal_k_f_oracle(&s3p[3]).unwrap(), r(0, 1));
    }

    #[test]
    fn brauer_examples() {
        let s3g = s3();
        let s3p = enumerate_pairs(&s3g, 3).unwrap();
        let triv = brauer_quotient_of_f(&s3p[2], &s3g.trivial_subgroup()).unwrap();
        assert_eq!(triv.pairs.len(), 1);
        assert_eq!(triv.pairs[0].r().order(), 3);
        let c3 = s3p[2].r().clone();
        assert!(brauer_quotient_of_f(&s3p[1], &c3).unwrap().pairs.is_empty());

        let g = c2();
        let c2p = enumerate_pairs(&g, 2).unwrap();
        let bq = brauer_quotient_of_f(&c2p[1], &g.as_subgroup()).unwrap();
        assert_eq!(bq.quotient.order(), 1);
        assert_eq!(bq.pairs.len(), 1);
        assert!(bq.pairs[0].r().is_trivial());

        let t = Subgroup::generated(&s3g, &[cyc(3, &[&[1, 2]])]).unwrap();
        assert!(matches!(
            brauer_quotient_of_f(&s3p[0], &t),
            Err(Error::NotPSubgroup(2))
        ));
    }

    #[test]
    fn sscal_examples() {
        let c2p = enumerate_pairs(&c2(), 2).unwrap();
        assert_eq!(sscal_k_f(&c2p[1]).unwrap(), r(3, 2));
        assert_eq!(sscal_k_f(&c2p[0]).unwrap(), r(1, 2));
        let s3p = enumerate_pairs(&s3(), 3).unwrap();
        // [S3, C3] = C3 so the quotient is trivial; |C_{C2}(t)| = 2
        assert_eq!(sscal_k_f(&s3p[3]).unwrap(), r(1, 2));
    }

    #[test]
    fn sscal_oracle_examples() {
        let c2p = enumerate_pairs(&c2(), 2).unwrap();
        assert_eq!(sscal_k_f_oracle(&c2p[1]).unwrap(), r(3, 2));
        let triv = enumerate_pairs(&FiniteGroup::trivial(1), 3).unwrap();
        assert_eq!(sscal_k_f_oracle(&triv[0]).unwrap(), r(1, 1));
        let s3p = enumerate_pairs(&s3(), 3).unwrap();
        assert_eq!(sscal_k_f_oracle(&s3p[1]).unwrap(), scal_k_f(&s3p[1]));
    }

    #[test]
    fn closed_forms_match_oracles_on_small_groups() {
        for (g, p) in [(s3(), 2), (s3(), 3), (s4(), 2), (s4(), 3)] {
            for pair in enumerate_pairs(&g, p).unwrap() {
                assert_eq!(scal_k_f(&pair), scal_k_f_oracle(&pair).unwrap(), "{pair:?}");
                assert_eq!(
                    sscal_k_f(&pair).unwrap(),
                    sscal_k_f_oracle(&pair).unwrap(),
                    "{pair:?}"
                );
            }
        }
    }
}
