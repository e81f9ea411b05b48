//! Fully enumerated permutation groups and their subgroups.
//!
//! Every group keeps its complete, sorted element list. Subgroups are sorted
//! subsets of a parent group together with a small generating witness. All
//! enumeration orders derive from the lexicographic order on permutations, so
//! results replay byte-for-byte.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::{check_prime, integer_p_part};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements any enumerated group may have.
pub const DEFAULT_ELEMENT_BUDGET: usize = 5000;

/// A conjugacy class: its least member and all members, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub members: Vec<Permutation>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

/// A finite permutation group with all elements enumerated.
///
/// Cloning is cheap; clones share the same enumeration.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

impl FiniteGroup {
    /// Closure of `gens` under composition, refusing to grow past `budget` elements.
    pub fn generate(degree: usize, gens: &[Permutation], budget: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure(degree, gens, Some(budget))?;
        Ok(Self::from_closed(degree, gens.to_vec(), elements))
    }

    /// Wraps an already closed, sorted, deduplicated element list.
    fn from_closed(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                elements,
                classes: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_closed(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn order(&self) -> u64 {
        self.inner.elements.len() as u64
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree() && self.inner.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.inner.elements.binary_search(g).ok()
    }

    /// Same underlying group (shared enumeration or equal element lists).
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.degree() == other.degree() && self.elements() == other.elements())
    }

    /// The whole group as a subgroup of itself.
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: self.elements().to_vec(),
            generators: self.generators().to_vec(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent: self.clone(),
            elements: vec![self.identity()],
            generators: Vec::new(),
        }
    }

    /// Conjugacy classes sorted by (representative order, representative).
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.inner.classes.get_or_init(|| compute_classes(self))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|a| gens.iter().all(|b| (a * b) == (b * a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements().iter().any(|g| g.order() == n)
    }

    fn require(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotAMember(g.to_string()))
        }
    }

    /// `C_G(g)`.
    pub fn centralizer(&self, g: &Permutation) -> Result<Subgroup> {
        self.require(g)?;
        let elements = self
            .elements()
            .iter()
            .filter(|x| (*x * g) == (g * *x))
            .cloned()
            .collect();
        Ok(Subgroup::from_sorted_elements(self.clone(), elements))
    }

    /// Elements commuting with every element of `h`.
    pub fn centralizer_of_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        self.require_subgroup(h)?;
        let gens = h.generators_or_elements();
        let elements = self
            .elements()
            .iter()
            .filter(|x| gens.iter().all(|g| (*x * g) == (g * *x)))
            .cloned()
            .collect();
        Ok(Subgroup::from_sorted_elements(self.clone(), elements))
    }

    /// `N_G(H) = {x : H^x = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.require_subgroup(h)?;
        let gens = h.generators_or_elements();
        let elements = self
            .elements()
            .iter()
            .filter(|x| gens.iter().all(|g| h.contains(&g.conjugate_by(x))))
            .cloned()
            .collect();
        Ok(Subgroup::from_sorted_elements(self.clone(), elements))
    }

    fn require_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.parent.same_as(self) || h.elements.iter().all(|x| self.contains(x)) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Conjugacy classes of elements of order coprime to `p`.
    pub fn p_regular_classes(&self, p: u64) -> Result<Vec<&ConjugacyClass>> {
        check_prime(p)?;
        Ok(self
            .conjugacy_classes()
            .iter()
            .filter(|c| c.representative.order() % p != 0)
            .collect())
    }

    /// The canonical class representative of `g`.
    pub fn class_representative(&self, g: &Permutation) -> Result<Permutation> {
        self.require(g)?;
        let cls = self
            .conjugacy_classes()
            .iter()
            .find(|c| c.members.binary_search(g).is_ok())
            .expect("classes partition the group");
        Ok(cls.representative.clone())
    }

    /// `|G|_p'`-style helper: `|G|` with all factors of `p` removed.
    pub fn p_prime_order(&self, p: u64) -> u64 {
        self.order() / integer_p_part(self.order(), p)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Closure of `gens` (sorted). With a budget, errors once it is exceeded.
fn closure(degree: usize, gens: &[Permutation], budget: Option<usize>) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if let Some(b) = budget {
                    if seen.len() > b {
                        return Err(Error::ElementBudgetExceeded { budget: b });
                    }
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

fn compute_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    let gens: Vec<Permutation> = if group.generators().is_empty() && group.order() > 1 {
        group.elements().to_vec()
    } else {
        group.generators().to_vec()
    };
    let mut assigned = vec![false; group.elements().len()];
    let mut classes = Vec::new();
    for (i, g) in group.elements().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![g.clone()];
        assigned[i] = true;
        let mut head = 0;
        while head < members.len() {
            let x = members[head].clone();
            head += 1;
            for s in &gens {
                let y = x.conjugate_by(s);
                let j = group.index_of(&y).expect("conjugate stays in the group");
                if !assigned[j] {
                    assigned[j] = true;
                    members.push(y);
                }
            }
        }
        members.sort();
        classes.push(ConjugacyClass {
            representative: members[0].clone(),
            members,
        });
    }
    classes.sort_by(|a, b| {
        (a.representative.order(), &a.representative)
            .cmp(&(b.representative.order(), &b.representative))
    });
    classes
}

/// A subgroup of a [`FiniteGroup`], stored as its sorted element list.
///
/// Equality, hashing and ordering compare element lists only; the canonical
/// subgroup order is by (order, elements).
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl Subgroup {
    /// Subgroup of `parent` generated by `gens`.
    pub fn generated(parent: &FiniteGroup, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            parent.require(g)?;
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let elements = closure(parent.degree(), &gens, None)?;
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
            generators: gens,
        })
    }

    /// Wraps a sorted list already known to be a subgroup, deriving a small
    /// generating witness greedily.
    pub(crate) fn from_sorted_elements(parent: FiniteGroup, elements: Vec<Permutation>) -> Self {
        let mut generators = Vec::new();
        let mut current = vec![Permutation::identity(parent.degree())];
        for x in &elements {
            if current.len() == elements.len() {
                break;
            }
            if current.binary_search(x).is_err() {
                generators.push(x.clone());
                current = closure(parent.degree(), &generators, None).expect("unbudgeted");
            }
        }
        Subgroup {
            parent,
            elements,
            generators,
        }
    }

    /// Subgroup with the given element set, verifying closure.
    pub fn from_elements(parent: &FiniteGroup, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        for x in &elements {
            parent.require(x)?;
        }
        let sub = Self::from_sorted_elements(parent.clone(), elements);
        if !sub.is_closed() {
            return Err(Error::Precondition("element set is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn generators_or_elements(&self) -> &[Permutation] {
        if self.generators.is_empty() && self.elements.len() > 1 {
            &self.elements
        } else {
            &self.generators
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.elements.iter().all(|x| other.contains(x))
    }

    /// Direct check of identity, closure under products and inverses.
    pub fn is_closed(&self) -> bool {
        let id = Permutation::identity(self.parent.degree());
        self.contains(&id)
            && self.elements.iter().all(|a| {
                self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&(a * b)))
            })
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|g| g.order() == n)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators_or_elements();
        gens.iter().all(|a| gens.iter().all(|b| (a * b) == (b * a)))
    }

    pub fn is_p_subgroup(&self, p: u64) -> bool {
        crate::arith::is_p_power(self.order(), p)
    }

    /// `H^x = x⁻¹ H x`.
    pub fn conjugate(&self, x: &Permutation) -> Subgroup {
        let mut elements: Vec<Permutation> =
            self.elements.iter().map(|h| h.conjugate_by(x)).collect();
        elements.sort();
        Subgroup {
            parent: self.parent.clone(),
            elements,
            generators: self.generators.iter().map(|h| h.conjugate_by(x)).collect(),
        }
    }

    /// Whether `x` normalizes this subgroup.
    pub fn is_normalized_by(&self, x: &Permutation) -> bool {
        self.generators_or_elements()
            .iter()
            .all(|g| self.contains(&g.conjugate_by(x)))
    }

    /// Whether `self ⊴ other`.
    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .generators_or_elements()
                .iter()
                .all(|x| self.is_normalized_by(x))
    }

    /// `⟨self, extra⟩` inside the same parent.
    pub fn join_with(&self, extra: &[Permutation]) -> Result<Subgroup> {
        let mut gens = self.generators_or_elements().to_vec();
        gens.extend(extra.iter().cloned());
        Subgroup::generated(&self.parent, &gens)
    }

    /// Views the subgroup as a standalone group on the same points.
    pub fn to_group(&self) -> FiniteGroup {
        FiniteGroup::from_closed(
            self.parent.degree(),
            self.generators.clone(),
            self.elements.clone(),
        )
    }

    /// Re-homes a subgroup of `self.to_group()`-style ambient into another
    /// parent containing the same elements.
    pub fn with_parent(&self, parent: &FiniteGroup) -> Result<Subgroup> {
        for x in &self.generators {
            parent.require(x)?;
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements: self.elements.clone(),
            generators: self.generators.clone(),
        })
    }

    /// `C_self(x)`: elements of this subgroup commuting with `x`.
    pub fn centralizer_of_element(&self, x: &Permutation) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .filter(|h| (*h * x) == (x * *h))
            .cloned()
            .collect();
        Subgroup::from_sorted_elements(self.parent.clone(), elements)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {}, gens {:?})",
            self.order(),
            self.generators
        )
    }
}

/// Subgroup generated by all commutators `[h, k]`, `h ∈ H`, `k ∈ K`.
pub fn commutator_subgroup(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.parent.same_as(&k.parent) {
        return Err(Error::ParentMismatch);
    }
    let mut comms: Vec<Permutation> = Vec::new();
    for a in h.elements() {
        for b in k.elements() {
            let c = Permutation::commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    comms.sort();
    comms.dedup();
    Subgroup::generated(&h.parent, &comms)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        let cs: Vec<Vec<u32>> = cycles
            .iter()
            .map(|c| c.iter().map(|x| x - 1).collect())
            .collect();
        Permutation::from_cycles(degree, &cs).unwrap()
    }

    pub(crate) fn s3() -> FiniteGroup {
        FiniteGroup::generate(3, &[cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])], 100).unwrap()
    }

    pub(crate) fn s4() -> FiniteGroup {
        FiniteGroup::generate(4, &[cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])], 100).unwrap()
    }

    fn d8() -> FiniteGroup {
        FiniteGroup::generate(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])], 100).unwrap()
    }

    fn brute_classes(g: &FiniteGroup) -> Vec<Vec<Permutation>> {
        let mut out: Vec<Vec<Permutation>> = Vec::new();
        for x in g.elements() {
            if out.iter().any(|c| c.contains(x)) {
                continue;
            }
            let mut c: Vec<Permutation> = g.elements().iter().map(|y| x.conjugate_by(y)).collect();
            c.sort();
            c.dedup();
            out.push(c);
        }
        out
    }

    #[test]
    fn generate_examples() {
        assert_eq!(FiniteGroup::generate(3, &[], 10).unwrap().order(), 1);
        assert_eq!(s3().order(), 6);
        assert_eq!(d8().order(), 8);
    }

    #[test]
    fn generate_errors() {
        let bad = FiniteGroup::generate(3, &[cyc(4, &[&[1, 2]])], 10);
        assert!(matches!(bad, Err(Error::DegreeMismatch { .. })));
        let big = FiniteGroup::generate(5, &[cyc(5, &[&[1, 2]]), cyc(5, &[&[1, 2, 3, 4, 5]])], 50);
        assert!(matches!(
            big,
            Err(Error::ElementBudgetExceeded { budget: 50 })
        ));
    }

    #[test]
    fn group_is_closed_and_sorted() {
        for g in [s3(), s4(), d8()] {
            assert!(g.as_subgroup().is_closed());
            assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
            for gen in g.generators() {
                assert!(g.contains(gen));
            }
        }
    }

    #[test]
    fn class_examples() {
        let c4 = FiniteGroup::generate(4, &[cyc(4, &[&[1, 2, 3, 4]])], 10).unwrap();
        assert_eq!(c4.conjugacy_classes().len(), 4);
        let sizes: Vec<usize> = s3().conjugacy_classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(s4().conjugacy_classes().len(), 5);
    }

    #[test]
    fn classes_match_brute_force() {
        for g in [s3(), s4(), d8()] {
            let mut mine: Vec<Vec<Permutation>> = g
                .conjugacy_classes()
                .iter()
                .map(|c| c.members.clone())
                .collect();
            let mut brute = brute_classes(&g);
            mine.sort();
            brute.sort();
            assert_eq!(mine, brute);
            let total: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
            assert_eq!(total as u64, g.order());
            for c in g.conjugacy_classes() {
                assert_eq!(g.order() % c.size() as u64, 0);
                assert_eq!(c.representative, c.members[0]);
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(g.centralizer(&g.identity()).unwrap().order(), 6);
        assert_eq!(g.centralizer(&cyc(3, &[&[1, 2, 3]])).unwrap().order(), 3);
        let s4 = s4();
        let h = Subgroup::generated(&s4, &[cyc(4, &[&[1, 2], &[3, 4]])]).unwrap();
        assert_eq!(s4.centralizer_of_subgroup(&h).unwrap().order(), 8);
        assert!(g.centralizer(&cyc(4, &[&[1, 2]])).is_err());
    }

    #[test]
    fn normalizer_examples() {
        let g = s3();
        assert_eq!(g.normalizer(&g.as_subgroup()).unwrap().order(), 6);
        let a3 = Subgroup::generated(&g, &[cyc(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(g.normalizer(&a3).unwrap().order(), 6);
        let s4 = s4();
        let c4 = Subgroup::generated(&s4, &[cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        let n = s4.normalizer(&c4).unwrap();
        assert_eq!(n.order(), 8);
        let c = s4.centralizer_of_subgroup(&c4).unwrap();
        assert!(c4.is_subgroup_of(&n));
        assert!(c.is_normal_in(&n));
    }

    #[test]
    fn commutator_examples() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[cyc(3, &[&[1, 2, 3]])]).unwrap();
        assert!(commutator_subgroup(&a3, &a3).unwrap().is_trivial());
        let all = g.as_subgroup();
        assert_eq!(commutator_subgroup(&all, &all).unwrap(), a3);
        assert_eq!(commutator_subgroup(&all, &a3).unwrap(), a3);
        let other = s4().as_subgroup();
        assert!(matches!(
            commutator_subgroup(&all, &other),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn cyclicity() {
        assert!(FiniteGroup::trivial(3).is_cyclic());
        let c6 = FiniteGroup::generate(5, &[cyc(5, &[&[1, 2], &[3, 4, 5]])], 10).unwrap();
        assert!(c6.is_cyclic());
        let v4 = FiniteGroup::generate(4, &[cyc(4, &[&[1, 2]]), cyc(4, &[&[3, 4]])], 10).unwrap();
        assert!(!v4.is_cyclic());
    }

    #[test]
    fn p_regular_class_examples() {
        let g = s3();
        assert_eq!(g.p_regular_classes(5).unwrap().len(), 3);
        let r3 = g.p_regular_classes(3).unwrap();
        assert_eq!(r3.len(), 2);
        assert_eq!(r3[1].representative.order(), 2);
        let r2 = g.p_regular_classes(2).unwrap();
        assert_eq!(r2.len(), 2);
        assert_eq!(r2[1].representative.order(), 3);
        assert!(matches!(g.p_regular_classes(4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn subgroup_from_elements_checks_closure() {
        let g = s3();
        let t = cyc(3, &[&[1, 2]]);
        assert!(Subgroup::from_elements(&g, vec![g.identity(), t.clone()]).is_ok());
        assert!(Subgroup::from_elements(&g, vec![g.identity(), cyc(3, &[&[1, 2, 3]])]).is_err());
    }
}
