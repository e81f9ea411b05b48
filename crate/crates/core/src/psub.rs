//! p-subgroups up to conjugacy, subgroup enumeration and Möbius functions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

use crate::arith::check_prime;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

/// Default cap on the number of subgroups [`all_subgroups`] will produce.
pub const DEFAULT_SUBGROUP_LIMIT: usize = 20_000;

/// One `G`-conjugacy class of p-subgroups.
#[derive(Clone, Debug)]
pub struct PSubgroupClass {
    /// The conjugate whose sorted element list is least.
    pub representative: Subgroup,
    pub normalizer: Subgroup,
    pub class_size: u64,
}

/// Representatives of the `G`-classes of p-subgroups, trivial subgroup
/// included, sorted by (order, representative).
///
/// Layer `k + 1` is built from layer `k`: every subgroup of order `p^(k+1)`
/// contains a normal subgroup of order `p^k`, so it is conjugate to some
/// `⟨P, x⟩` with `P` a layer-`k` representative, `x ∈ N_G(P) \ P` a p-element
/// and `x^p ∈ P`.
pub fn p_subgroups_up_to_conjugacy(group: &FiniteGroup, p: u64) -> Result<Vec<PSubgroupClass>> {
    check_prime(p)?;
    let trivial = group.trivial_subgroup();
    let mut classes = vec![PSubgroupClass {
        normalizer: group.as_subgroup(),
        representative: trivial,
        class_size: 1,
    }];
    let p_elements: Vec<&Permutation> = group
        .elements()
        .iter()
        .filter(|g| !g.is_identity() && crate::arith::is_p_power(g.order(), p))
        .collect();

    let mut layer: Vec<usize> = vec![0];
    while !layer.is_empty() {
        // All conjugates of each class found in the next layer.
        let mut known: HashSet<Vec<Permutation>> = HashSet::new();
        let mut next: Vec<PSubgroupClass> = Vec::new();
        let mut tried: HashSet<Vec<Permutation>> = HashSet::new();
        for &ci in &layer {
            let base = classes[ci].representative.clone();
            let norm = classes[ci].normalizer.clone();
            for x in p_elements.iter().copied() {
                if !norm.contains(x) || base.contains(x) || !base.contains(&x.pow(p)) {
                    continue;
                }
                let cand = base.join_with(std::slice::from_ref(x))?;
                if !tried.insert(cand.elements().to_vec()) || known.contains(cand.elements()) {
                    continue;
                }
                let normalizer = group.normalizer(&cand)?;
                let conjugates = conjugates_via_transversal(group, &cand, &normalizer);
                let class_size = conjugates.len() as u64;
                let representative = conjugates.iter().min().expect("nonempty").clone();
                for c in conjugates {
                    known.insert(c.elements().to_vec());
                }
                let normalizer = if representative == cand {
                    normalizer
                } else {
                    group.normalizer(&representative)?
                };
                next.push(PSubgroupClass {
                    representative,
                    normalizer,
                    class_size,
                });
            }
        }
        next.sort_by(|a, b| a.representative.cmp(&b.representative));
        let start = classes.len();
        classes.extend(next);
        layer = (start..classes.len()).collect();
    }
    Ok(classes)
}

/// The distinct conjugates `H^g`, one per right coset `N_G(H) g`.
fn conjugates_via_transversal(
    group: &FiniteGroup,
    h: &Subgroup,
    normalizer: &Subgroup,
) -> Vec<Subgroup> {
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut out = Vec::new();
    for g in group.elements() {
        if covered.contains(g) {
            continue;
        }
        for n in normalizer.elements() {
            covered.insert(n * g);
        }
        out.push(h.conjugate(g));
    }
    out
}

/// Every subgroup of `r`, each once, sorted by (order, elements).
pub fn all_subgroups(r: &Subgroup) -> Result<Vec<Subgroup>> {
    all_subgroups_with_limit(r, DEFAULT_SUBGROUP_LIMIT)
}

/// [`all_subgroups`] with an explicit subgroup-count guard.
///
/// Closes `{1}` under `X ↦ ⟨X, y⟩` for `y ∈ r`; every subgroup arises as a
/// chain of such one-element extensions.
pub fn all_subgroups_with_limit(r: &Subgroup, limit: usize) -> Result<Vec<Subgroup>> {
    let parent = r.parent();
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let trivial = parent.trivial_subgroup();
    found.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(x) = frontier.pop() {
        for y in r.elements() {
            if x.contains(y) {
                continue;
            }
            let z = x.join_with(std::slice::from_ref(y))?;
            if !found.contains(&z) {
                if found.len() >= limit {
                    return Err(Error::SubgroupBudgetExceeded { limit });
                }
                found.insert(z.clone());
                frontier.push(z);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Subgroups `X` with `bottom ≤ X ≤ top` closed under some constraint,
/// ordered by inclusion.
#[derive(Debug)]
pub struct IntervalPoset {
    members: Vec<Subgroup>,
    bottom: usize,
    top: usize,
    // leq[i][j] iff members[i] ≤ members[j]
    leq: Vec<Vec<bool>>,
    mobius_rows: Mutex<HashMap<usize, Vec<i64>>>,
}

impl IntervalPoset {
    /// Builds the poset from subgroups between `bottom` and `top`; members must
    /// include both ends.
    pub fn from_members(
        mut members: Vec<Subgroup>,
        bottom: &Subgroup,
        top: &Subgroup,
    ) -> Result<Self> {
        members.sort();
        members.dedup();
        let find = |s: &Subgroup, members: &[Subgroup]| members.binary_search(s).ok();
        let b = find(bottom, &members)
            .ok_or_else(|| Error::Precondition("bottom is not a member".into()))?;
        let t =
            find(top, &members).ok_or_else(|| Error::Precondition("top is not a member".into()))?;
        let leq = members
            .iter()
            .map(|a| members.iter().map(|b| a.is_subgroup_of(b)).collect())
            .collect();
        Ok(IntervalPoset {
            members,
            bottom: b,
            top: t,
            leq,
            mobius_rows: Mutex::new(HashMap::new()),
        })
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.members[self.bottom]
    }

    pub fn top(&self) -> &Subgroup {
        &self.members[self.top]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    /// `μ(X, Y)`: `μ(X, X) = 1` and `Σ_{X ≤ Z ≤ Y} μ(X, Z) = 0` for `X < Y`.
    pub fn moebius(&self, x: &Subgroup, y: &Subgroup) -> Result<i64> {
        let i = self
            .index_of(x)
            .ok_or_else(|| Error::Precondition("first argument is not a poset member".into()))?;
        let j = self
            .index_of(y)
            .ok_or_else(|| Error::Precondition("second argument is not a poset member".into()))?;
        Ok(self.moebius_by_index(i, j))
    }

    pub fn moebius_by_index(&self, i: usize, j: usize) -> i64 {
        if !self.leq[i][j] {
            return 0;
        }
        let mut rows = self.mobius_rows.lock().expect("poisoned");
        let row = rows.entry(i).or_insert_with(|| self.mobius_row(i));
        row[j]
    }

    // Members are sorted by order, so inclusion-smaller members come first.
    fn mobius_row(&self, i: usize) -> Vec<i64> {
        let n = self.members.len();
        let mut mu = vec![0i64; n];
        for j in 0..n {
            if !self.leq[i][j] {
                continue;
            }
            if j == i {
                mu[j] = 1;
                continue;
            }
            let s: i64 = (0..n)
                .filter(|&z| z != j && self.leq[i][z] && self.leq[z][j])
                .map(|z| mu[z])
                .sum();
            mu[j] = -s;
        }
        mu
    }
}

/// Subgroups `X` with `q ≤ X ≤ r` and `X^t = X`.
pub fn invariant_interval(q: &Subgroup, r: &Subgroup, t: &Permutation) -> Result<IntervalPoset> {
    if !q.is_subgroup_of(r) {
        return Err(Error::Precondition("bottom is not contained in top".into()));
    }
    if !r.is_normalized_by(t) {
        return Err(Error::Precondition(
            "element does not normalize the top subgroup".into(),
        ));
    }
    if !q.is_normalized_by(t) {
        return Err(Error::Precondition(
            "element does not normalize the bottom subgroup".into(),
        ));
    }
    let members = all_subgroups(r)?
        .into_iter()
        .filter(|x| q.is_subgroup_of(x) && x.is_normalized_by(t))
        .collect();
    IntervalPoset::from_members(members, q, r)
}

/// `μ` in the full subgroup lattice of `r` (the vacuous-constraint interval `[1, r]`).
pub fn subgroup_lattice(r: &Subgroup) -> Result<IntervalPoset> {
    let members = all_subgroups(r)?;
    IntervalPoset::from_members(members, &r.parent().trivial_subgroup(), r)
}

/// Free-standing form of [`IntervalPoset::moebius`].
pub fn moebius(poset: &IntervalPoset, x: &Subgroup, y: &Subgroup) -> Result<i64> {
    poset.moebius(x, y)
}
