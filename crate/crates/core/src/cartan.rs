//! Cartan determinants of `μ_k(G, 1)` and rank, size, nonsingularity and
//! determinant for the cohomological Mackey algebra `coμ_k(G)`.
//!
//! The field `k` is never built; it is assumed to be a splitting field for
//! every `N_G(Q)/Q`, so simple-module counts are p-regular class counts.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::arith::{check_prime, euler_phi, integer_p_part, is_p_power, ExactRational};
use crate::error::{Error, Result};
use crate::formulas::{
    abelian_quotient_inverse_order_sum, scal_k_f, sscal_k_f, sscal_k_f_oracle_with,
};
use crate::group::FiniteGroup;
use crate::pairs::{class_quotients, pairs_for_classes, MackeyPair};
use crate::perm::Permutation;
use crate::psub::{p_subgroups_up_to_conjugacy, PSubgroupClass};
use crate::quotient::QuotientGroup;

/// Canonical enumerations for a fixed `(G, p)`.
#[derive(Clone, Debug)]
pub struct AnalysisContext {
    pub group: FiniteGroup,
    pub prime: u64,
    pub p_classes: Vec<PSubgroupClass>,
    /// `N_G(R)/R` for each entry of `p_classes`, same order.
    pub class_quotients: Vec<Arc<QuotientGroup>>,
    pub pairs: Vec<MackeyPair>,
}

impl AnalysisContext {
    pub fn new(group: &FiniteGroup, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        let p_classes = p_subgroups_up_to_conjugacy(group, prime)?;
        let class_quotients = class_quotients(&p_classes)?;
        let pairs = pairs_for_classes(group, prime, &p_classes, &class_quotients)?;
        Ok(AnalysisContext {
            group: group.clone(),
            prime,
            p_classes,
            class_quotients,
            pairs,
        })
    }

    /// A Sylow p-subgroup representative (the largest p-subgroup class).
    pub fn sylow(&self) -> &PSubgroupClass {
        self.p_classes.last().expect("trivial class always present")
    }
}

/// One `(R, s)` factor `|C|_p · Σ_{x ∈ R/[⟨sR⟩,R]} 1/|x|` of the determinant,
/// with `C = C_{N̄_G(R)}(s)`.
pub fn pair_factor(pair: &MackeyPair) -> Result<ExactRational> {
    let c = pair.centralizer_order();
    let c_p = ExactRational::from(integer_p_part(c, pair.prime()));
    Ok(c_p * abelian_quotient_inverse_order_sum(pair)?)
}

/// The per-pair factor via `|C|_p · |C| · ⟨⟨k, F⟩⟩` with the closed-form
/// scalar product.
fn pair_factor_from_sscal(pair: &MackeyPair, sscal: &ExactRational) -> ExactRational {
    let c = pair.centralizer_order();
    ExactRational::from(integer_p_part(c, pair.prime()) * c) * sscal.clone()
}

/// `det C(μ_k(G,1))` as the product of [`pair_factor`] over all pairs.
pub fn det_mackey_cartan(ctx: &AnalysisContext) -> Result<ExactRational> {
    let mut det = ExactRational::one();
    for pair in &ctx.pairs {
        det = det * pair_factor_from_sscal(pair, &sscal_k_f(pair)?);
    }
    Ok(det)
}

/// Second evaluation of `det C(μ_k(G,1))`: the same product, with every
/// `⟨⟨k, F_{R,s}⟩⟩` obtained by summing scalar products over the Brauer
/// quotients `F_{R,s}[Q]`, `Q ∈ [S_p(G)]`.
pub fn det_mackey_cartan_via_brauer(ctx: &AnalysisContext) -> Result<ExactRational> {
    let mut det = ExactRational::one();
    for pair in &ctx.pairs {
        let sscal = sscal_k_f_oracle_with(pair, &ctx.class_quotients)?;
        det = det * pair_factor_from_sscal(pair, &sscal);
    }
    Ok(det)
}

/// `det C(kH) = Π_{s ∈ [H_p']} |C_H(s)|_p`.
pub fn det_cartan_group_algebra(h: &FiniteGroup, p: u64) -> Result<BigUint> {
    let mut det = BigUint::from(1u32);
    for cls in h.p_regular_classes(p)? {
        let centralizer = h.order() / cls.size() as u64;
        det *= BigUint::from(integer_p_part(centralizer, p));
    }
    Ok(det)
}

/// The three independent counts of the cohomological Cartan rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankCounts {
    /// Pairs `(R, s)` with `⟨sR⟩` cyclic.
    pub cyclic_pairs: u64,
    /// `Σ_{R ∈ [C_p(G)]} |N_G(R) \ C_G(R)_p'|`.
    pub cyclic_subgroup_sum: u64,
    /// `Σ_{s ∈ [G_p']} c_p(C_G(s))`.
    pub centralizer_sum: u64,
}

impl RankCounts {
    pub fn agree(&self) -> bool {
        self.cyclic_pairs == self.cyclic_subgroup_sum && self.cyclic_pairs == self.centralizer_sum
    }
}

pub fn rank_counts(ctx: &AnalysisContext) -> Result<RankCounts> {
    let p = ctx.prime;
    let g = &ctx.group;
    let cyclic_pairs = ctx.pairs.iter().filter(|pair| pair.is_cyclic()).count() as u64;

    let mut cyclic_subgroup_sum = 0;
    for class in ctx
        .p_classes
        .iter()
        .filter(|c| c.representative.is_cyclic())
    {
        let centralizer = g.centralizer_of_subgroup(&class.representative)?;
        let regular: Vec<&Permutation> = centralizer
            .elements()
            .iter()
            .filter(|x| x.order() % p != 0)
            .collect();
        cyclic_subgroup_sum += count_orbits(&regular, class.normalizer.generators()) as u64;
    }

    let mut centralizer_sum = 0;
    for cls in g.p_regular_classes(p)? {
        let c = g.centralizer(&cls.representative)?.to_group();
        centralizer_sum += p_subgroups_up_to_conjugacy(&c, p)?
            .iter()
            .filter(|k| k.representative.is_cyclic())
            .count() as u64;
    }

    Ok(RankCounts {
        cyclic_pairs,
        cyclic_subgroup_sum,
        centralizer_sum,
    })
}

/// Orbits of the conjugation action of `⟨gens⟩` on the invariant set `points`.
fn count_orbits(points: &[&Permutation], gens: &[Permutation]) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut orbits = 0;
    for &x in points {
        if seen.contains(x) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![x.clone()];
        seen.insert(x.clone());
        while let Some(y) = stack.pop() {
            for g in gens {
                let z = y.conjugate_by(g);
                if seen.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
    }
    orbits
}

/// Rank of `C(coμ_k(G))`; errors if the three counts disagree.
pub fn comackey_rank(ctx: &AnalysisContext) -> Result<u64> {
    let counts = rank_counts(ctx)?;
    if !counts.agree() {
        return Err(Error::inconsistent("comackey_rank", format!("{counts:?}")));
    }
    Ok(counts.cyclic_pairs)
}

/// Size of `C(coμ_k(G))`: the number of pairs, equal to the number of
/// indecomposable p-permutation modules.
pub fn comackey_size(ctx: &AnalysisContext) -> u64 {
    ctx.pairs.len() as u64
}

/// Frobenius criterion and p'-closure criterion for p-nilpotency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilpotencyCriteria {
    /// `N_G(R)/C_G(R)` is a p-group for every p-subgroup `R`.
    pub frobenius: bool,
    /// The p'-elements form a set closed under products of size `|G|_p'`.
    pub p_prime_closure: bool,
}

pub fn p_nilpotency_criteria(group: &FiniteGroup, p: u64) -> Result<NilpotencyCriteria> {
    let classes = p_subgroups_up_to_conjugacy(group, p)?;
    nilpotency_from_classes(group, p, &classes)
}

fn nilpotency_from_classes(
    group: &FiniteGroup,
    p: u64,
    classes: &[PSubgroupClass],
) -> Result<NilpotencyCriteria> {
    let mut frobenius = true;
    for class in classes {
        let c = group.centralizer_of_subgroup(&class.representative)?;
        if !is_p_power(class.normalizer.order() / c.order(), p) {
            frobenius = false;
            break;
        }
    }

    let regular: HashSet<&Permutation> = group
        .elements()
        .iter()
        .filter(|x| x.order() % p != 0)
        .collect();
    let p_prime_closure = regular.len() as u64 == group.p_prime_order(p)
        && regular
            .iter()
            .all(|a| regular.iter().all(|b| regular.contains(&(*a * *b))));
    Ok(NilpotencyCriteria {
        frobenius,
        p_prime_closure,
    })
}

/// Whether `G` has a normal p-complement; errors if the two criteria disagree.
pub fn is_p_nilpotent(group: &FiniteGroup, p: u64) -> Result<bool> {
    check_prime(p)?;
    let crit = p_nilpotency_criteria(group, p)?;
    if crit.frobenius != crit.p_prime_closure {
        return Err(Error::inconsistent("is_p_nilpotent", format!("{crit:?}")));
    }
    Ok(crit.frobenius)
}

/// Rank-equals-size versus p-nilpotent with cyclic Sylow subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonsingularityCriteria {
    pub full_rank: bool,
    pub nilpotent_cyclic_sylow: bool,
}

pub fn nonsingularity_criteria(ctx: &AnalysisContext) -> Result<NonsingularityCriteria> {
    let counts = rank_counts(ctx)?;
    let nilpotent = nilpotency_from_classes(&ctx.group, ctx.prime, &ctx.p_classes)?.frobenius;
    Ok(NonsingularityCriteria {
        full_rank: counts.cyclic_pairs == comackey_size(ctx),
        nilpotent_cyclic_sylow: nilpotent && ctx.sylow().representative.is_cyclic(),
    })
}

pub fn comackey_is_nonsingular(ctx: &AnalysisContext) -> Result<bool> {
    let rank = comackey_rank(ctx)?;
    let nilpotent = is_p_nilpotent(&ctx.group, ctx.prime)?;
    let full_rank = rank == comackey_size(ctx);
    let structural = nilpotent && ctx.sylow().representative.is_cyclic();
    if full_rank != structural {
        return Err(Error::inconsistent(
            "comackey_is_nonsingular",
            format!("rank = size is {full_rank}, p-nilpotent with cyclic Sylow is {structural}"),
        ));
    }
    Ok(full_rank)
}

/// Evaluations of `det C(coμ_k(G))` along three routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetComackeyForms {
    /// `Π_R (φ(|R|)/|R|)^{l_p(N̄_G(R))} · det C(k N̄_G(R))`.
    pub product_form: ExactRational,
    /// `Π_R Π_{x} (φ(|R|)/|R|) · |C_{N̄_G(R)}(x)|_p` over p-regular classes of
    /// `N̄_G(R)`, classes found by orbit scanning rather than from the class cache.
    pub class_form: ExactRational,
    /// `Π_{(R,s)} |C|_p · |C| · ⟨k, F_{R,s}⟩`.
    pub pair_form: ExactRational,
}

impl DetComackeyForms {
    pub fn agree(&self) -> bool {
        self.product_form == self.class_form && self.product_form == self.pair_form
    }
}

/// Computes all three forms. Meaningful only in the nonsingular case.
pub fn det_comackey_forms(ctx: &AnalysisContext) -> Result<DetComackeyForms> {
    let p = ctx.prime;
    let mut product_form = ExactRational::one();
    let mut class_form = ExactRational::one();
    for (class, quotient) in ctx.p_classes.iter().zip(&ctx.class_quotients) {
        let r_order = class.representative.order();
        let ratio = ExactRational::ratio(euler_phi(r_order), r_order);
        let nbar = quotient.image();
        let l_p = nbar.p_regular_classes(p)?.len() as u32;
        product_form = product_form
            * ratio.pow(l_p)
            * ExactRational::from_biguint(&det_cartan_group_algebra(nbar, p)?);

        for orbit_size in p_regular_orbit_sizes(nbar, p) {
            let centralizer = nbar.order() / orbit_size;
            class_form =
                class_form * ratio.clone() * ExactRational::from(integer_p_part(centralizer, p));
        }
    }
    let mut pair_form = ExactRational::one();
    for pair in &ctx.pairs {
        let c = pair.centralizer_order();
        pair_form = pair_form * ExactRational::from(integer_p_part(c, p) * c) * scal_k_f(pair);
    }
    Ok(DetComackeyForms {
        product_form,
        class_form,
        pair_form,
    })
}

/// Sizes of the conjugation orbits on p'-elements, by scanning all of `H`.
fn p_regular_orbit_sizes(h: &FiniteGroup, p: u64) -> Vec<u64> {
    let mut seen: HashSet<&Permutation> = HashSet::new();
    let mut sizes = Vec::new();
    for x in h.elements().iter().filter(|x| x.order() % p != 0) {
        if seen.contains(x) {
            continue;
        }
        let orbit: HashSet<Permutation> = h.elements().iter().map(|g| x.conjugate_by(g)).collect();
        for y in &orbit {
            seen.insert(&h.elements()[h.index_of(y).expect("conjugate in group")]);
        }
        sizes.push(orbit.len() as u64);
    }
    sizes
}

/// `det C(coμ_k(G))`; errors when the matrix is singular or the forms disagree.
pub fn det_comackey(ctx: &AnalysisContext) -> Result<ExactRational> {
    if !comackey_is_nonsingular(ctx)? {
        return Err(Error::Singular);
    }
    let forms = det_comackey_forms(ctx)?;
    if !forms.agree() {
        return Err(Error::inconsistent("det_comackey", format!("{forms:?}")));
    }
    Ok(forms.product_form)
}
