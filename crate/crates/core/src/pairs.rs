//! Pairs `(R, s̄)` with `R` a p-subgroup of `G` and `s̄` a p'-element of
//! `N̄_G(R) = N_G(R)/R`, up to `G`-conjugacy.
//!
//! A pair labels one primitive idempotent `F_{R,s}` of the rationalized
//! p-permutation Green ring. Only the label and the group data derived from
//! it are built here; the idempotent itself is never expanded.

use std::fmt;
use std::sync::Arc;

use crate::arith::{check_prime, is_p_power};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;
use crate::psub::{p_subgroups_up_to_conjugacy, PSubgroupClass};
use crate::quotient::QuotientGroup;

#[derive(Clone)]
pub struct MackeyPair {
    group: FiniteGroup,
    prime: u64,
    r: Subgroup,
    quotient: Arc<QuotientGroup>,
    s_bar: Permutation,
    s_lift: Permutation,
    stabilizer_order: u64,
    centralizer_bar: Subgroup,
    preimage_sr: Subgroup,
    cyclic: bool,
}

impl MackeyPair {
    /// Builds the pair `(R, sR)` from any p-subgroup `R` and any `s ∈ N_G(R)`
    /// whose image in `N̄_G(R)` has order prime to `p`.
    pub fn from_parts(
        group: &FiniteGroup,
        prime: u64,
        r: &Subgroup,
        s: &Permutation,
    ) -> Result<Self> {
        check_prime(prime)?;
        if !r.is_p_subgroup(prime) {
            return Err(Error::NotPSubgroup(r.order()));
        }
        let normalizer = group.normalizer(r)?;
        let quotient = Arc::new(QuotientGroup::new(&normalizer, r)?);
        let s_bar = quotient
            .project(s)
            .ok_or_else(|| Error::Precondition(format!("{s} does not normalize R")))?;
        Self::with_quotient(group, prime, r, quotient, s_bar)
    }

    /// Builds the pair from a prepared `N_G(R)/R` and an element of its image.
    pub fn with_quotient(
        group: &FiniteGroup,
        prime: u64,
        r: &Subgroup,
        quotient: Arc<QuotientGroup>,
        s_bar: Permutation,
    ) -> Result<Self> {
        if s_bar.order().is_multiple_of(prime) {
            return Err(Error::Precondition(format!(
                "image of s has order {} divisible by p = {prime}",
                s_bar.order()
            )));
        }
        let s_lift = quotient
            .section(&s_bar)
            .ok_or_else(|| Error::NotAMember(s_bar.to_string()))?
            .clone();
        let centralizer_bar = quotient.image().centralizer(&s_bar)?;
        let stabilizer_order = pair_stabilizer_elements(&quotient, &s_bar).len() as u64;
        let preimage_sr = r.join_with(std::slice::from_ref(&s_lift))?;
        let cyclic = preimage_sr.is_cyclic();
        Ok(MackeyPair {
            group: group.clone(),
            prime,
            r: r.clone(),
            quotient,
            s_bar,
            s_lift,
            stabilizer_order,
            centralizer_bar,
            preimage_sr,
            cyclic,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn r(&self) -> &Subgroup {
        &self.r
    }

    pub fn quotient(&self) -> &Arc<QuotientGroup> {
        &self.quotient
    }

    pub fn s_bar(&self) -> &Permutation {
        &self.s_bar
    }

    /// Least element of `N_G(R)` mapping to `s̄`.
    pub fn s_lift(&self) -> &Permutation {
        &self.s_lift
    }

    /// A lift of `s̄` of order prime to `p` (the p'-part of `s_lift`).
    pub fn s_regular(&self) -> Permutation {
        self.s_lift.p_regular_part(self.prime)
    }

    /// `|N_G(R, s)|`.
    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    /// `C_{N̄_G(R)}(s̄)`, a subgroup of the quotient image.
    pub fn centralizer_bar(&self) -> &Subgroup {
        &self.centralizer_bar
    }

    pub fn centralizer_order(&self) -> u64 {
        self.centralizer_bar.order()
    }

    /// `⟨sR⟩`, the preimage of `⟨s̄⟩` in `N_G(R)`.
    pub fn preimage_sr(&self) -> &Subgroup {
        &self.preimage_sr
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// `N_G(R, s) = {g ∈ N_G(R) : ḡ centralizes s̄}`.
    pub fn stabilizer(&self) -> Subgroup {
        let elements = pair_stabilizer_elements(&self.quotient, &self.s_bar);
        Subgroup::from_elements(&self.group, elements).expect("stabilizer is a subgroup")
    }

    /// `⟨R ∪ {g}⟩` for an arbitrary lift `g` of `s̄`.
    pub fn preimage_for_lift(&self, g: &Permutation) -> Result<Subgroup> {
        if self.quotient.project(g).as_ref() != Some(&self.s_bar) {
            return Err(Error::Precondition(format!("{g} is not a lift of s̄")));
        }
        self.r.join_with(std::slice::from_ref(g))
    }

    /// All elements of `N_G(R)` mapping onto `s̄`.
    pub fn lifts(&self) -> Vec<Permutation> {
        self.r.elements().iter().map(|x| &self.s_lift * x).collect()
    }

    /// The pair transported by `g`: `(R^g, (s_lift)^g R^g)`.
    pub fn conjugate(&self, g: &Permutation) -> Result<MackeyPair> {
        self.group
            .contains(g)
            .then_some(())
            .ok_or_else(|| Error::NotAMember(g.to_string()))?;
        let r = self.r.conjugate(g);
        let s = self.s_lift.conjugate_by(g);
        MackeyPair::from_parts(&self.group, self.prime, &r, &s)
    }

    fn same_ambient(&self, other: &MackeyPair) -> bool {
        self.prime == other.prime && self.group.same_as(&other.group)
    }

    /// Short text label such as `R=2,s=(1 2)`.
    pub fn label(&self) -> String {
        format!("R={},s={}", self.r.order(), self.s_lift)
    }
}

fn pair_stabilizer_elements(quotient: &QuotientGroup, s_bar: &Permutation) -> Vec<Permutation> {
    quotient
        .numerator()
        .elements()
        .iter()
        .filter(|g| {
            let gb = quotient.project(g).expect("g in N_G(R)");
            &gb * s_bar == s_bar * &gb
        })
        .cloned()
        .collect()
}

impl fmt::Debug for MackeyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MackeyPair")
            .field("r_order", &self.r.order())
            .field("r_gens", &self.r.generators())
            .field("s_lift", &self.s_lift)
            .field("s_order", &self.s_bar.order())
            .field("stabilizer_order", &self.stabilizer_order)
            .field("cyclic", &self.cyclic)
            .finish()
    }
}

/// One pair per `G`-orbit on `Q_{G,p}`, ordered by p-subgroup class and then by
/// the p-regular class order of `N̄_G(R)`.
pub fn enumerate_pairs(group: &FiniteGroup, p: u64) -> Result<Vec<MackeyPair>> {
    let classes = p_subgroups_up_to_conjugacy(group, p)?;
    let quotients = class_quotients(&classes)?;
    pairs_for_classes(group, p, &classes, &quotients)
}

pub(crate) fn class_quotients(classes: &[PSubgroupClass]) -> Result<Vec<Arc<QuotientGroup>>> {
    classes
        .iter()
        .map(|c| QuotientGroup::new(&c.normalizer, &c.representative).map(Arc::new))
        .collect()
}

/// `N_G(R)` acts on `N̄_G(R)` through its image, so the `N_G(R)`-orbits on
/// p'-elements are exactly the p-regular classes of the image.
pub(crate) fn pairs_for_classes(
    group: &FiniteGroup,
    p: u64,
    classes: &[PSubgroupClass],
    quotients: &[Arc<QuotientGroup>],
) -> Result<Vec<MackeyPair>> {
    let mut out = Vec::new();
    for (class, quotient) in classes.iter().zip(quotients) {
        for cls in quotient.image().p_regular_classes(p)? {
            out.push(MackeyPair::with_quotient(
                group,
                p,
                &class.representative,
                quotient.clone(),
                cls.representative.clone(),
            )?);
        }
    }
    Ok(out)
}

/// `N_G(R, s)` as a subgroup of `G`.
pub fn pair_stabilizer(pair: &MackeyPair) -> Subgroup {
    pair.stabilizer()
}

/// `⟨sR⟩ = ⟨R ∪ {s_lift}⟩`.
pub fn preimage_sr(pair: &MackeyPair) -> Subgroup {
    pair.preimage_sr().clone()
}

/// Whether some `g ∈ G` carries `(R_a, s̄_a)` to `(R_b, s̄_b)`.
pub fn pairs_are_conjugate(a: &MackeyPair, b: &MackeyPair) -> Result<bool> {
    if !a.same_ambient(b) {
        return Err(Error::AmbientMismatch);
    }
    if a.r.order() != b.r.order()
        || a.s_bar.order() != b.s_bar.order()
        || a.centralizer_order() != b.centralizer_order()
        || a.quotient.order() != b.quotient.order()
    {
        return Ok(false);
    }
    for g in a.group.elements() {
        if a.r.conjugate(g) != b.r {
            continue;
        }
        let moved = a.s_lift.conjugate_by(g);
        if b.quotient.project(&moved).as_ref() == Some(&b.s_bar) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(R, s̄⁻¹)`, with `s̄⁻¹` replaced by its class representative in `N̄_G(R)`.
pub fn inverse_pair(pair: &MackeyPair) -> Result<MackeyPair> {
    let inv = pair.s_bar.inverse();
    let rep = pair.quotient.image().class_representative(&inv)?;
    MackeyPair::with_quotient(&pair.group, pair.prime, &pair.r, pair.quotient.clone(), rep)
}

/// Whether `R` is a p-subgroup; used by callers validating `Q` arguments.
pub(crate) fn require_p_subgroup(q: &Subgroup, p: u64) -> Result<()> {
    if is_p_power(q.order(), p) {
        Ok(())
    } else {
        Err(Error::NotPSubgroup(q.order()))
    }
}
