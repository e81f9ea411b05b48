//! Quotients `H / N` realized as permutation groups on the cosets of `N`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

/// `H / N` for `N ⊴ H`, acting faithfully on right cosets `N h`.
///
/// When `N` is trivial the image is `H` itself on its original points.
#[derive(Clone)]
pub struct QuotientGroup {
    numerator: Subgroup,
    kernel: Subgroup,
    coset_reps: Vec<Permutation>,
    image: FiniteGroup,
    coset_of: HashMap<Permutation, u32>,
    section: HashMap<Permutation, Permutation>,
}

impl QuotientGroup {
    pub fn new(numerator: &Subgroup, kernel: &Subgroup) -> Result<Self> {
        if !numerator.parent().same_as(kernel.parent()) {
            return Err(Error::ParentMismatch);
        }
        if !kernel.is_normal_in(numerator) {
            return Err(Error::NotNormal);
        }
        if kernel.is_trivial() {
            let image = numerator.to_group();
            let section = numerator
                .elements()
                .iter()
                .map(|h| (h.clone(), h.clone()))
                .collect();
            return Ok(QuotientGroup {
                numerator: numerator.clone(),
                kernel: kernel.clone(),
                coset_reps: numerator.elements().to_vec(),
                image,
                coset_of: HashMap::new(),
                section,
            });
        }

        // Cosets indexed in order of their least element.
        let mut coset_of: HashMap<Permutation, u32> =
            HashMap::with_capacity(numerator.elements().len());
        let mut coset_reps = Vec::new();
        for h in numerator.elements() {
            if coset_of.contains_key(h) {
                continue;
            }
            let idx = coset_reps.len() as u32;
            coset_reps.push(h.clone());
            for n in kernel.elements() {
                coset_of.insert(n * h, idx);
            }
        }

        let mut q = QuotientGroup {
            numerator: numerator.clone(),
            kernel: kernel.clone(),
            coset_reps,
            image: FiniteGroup::trivial(1),
            coset_of,
            section: HashMap::new(),
        };
        let degree = q.coset_reps.len();
        let gens: Vec<Permutation> = numerator
            .generators()
            .iter()
            .map(|g| q.coset_action(g))
            .filter(|x| !x.is_identity())
            .collect();
        q.image = FiniteGroup::generate(degree, &gens, usize::MAX)?;
        let mut section: HashMap<Permutation, Permutation> = HashMap::with_capacity(degree);
        for h in numerator.elements() {
            section
                .entry(q.coset_action(h))
                .or_insert_with(|| h.clone());
        }
        q.section = section;
        Ok(q)
    }

    fn coset_action(&self, g: &Permutation) -> Permutation {
        let images = self
            .coset_reps
            .iter()
            .map(|r| self.coset_of[&(r * g)])
            .collect();
        Permutation::from_images(images).expect("right multiplication permutes cosets")
    }

    pub fn numerator(&self) -> &Subgroup {
        &self.numerator
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn coset_reps(&self) -> &[Permutation] {
        &self.coset_reps
    }

    pub fn image(&self) -> &FiniteGroup {
        &self.image
    }

    pub fn order(&self) -> u64 {
        self.image.order()
    }

    /// `h ↦ hN`; `None` if `h ∉ H`.
    pub fn project(&self, h: &Permutation) -> Option<Permutation> {
        if !self.numerator.contains(h) {
            return None;
        }
        if self.kernel.is_trivial() {
            return Some(h.clone());
        }
        Some(self.coset_action(h))
    }

    /// Image of a subgroup of `H` as a subgroup of the image group.
    pub fn project_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        let gens = s
            .elements()
            .iter()
            .map(|x| {
                self.project(x)
                    .ok_or_else(|| Error::NotAMember(x.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let sub = Subgroup::from_elements(self.image(), gens)?;
        Ok(sub)
    }

    /// Least element of `H` projecting onto `x`.
    pub fn section(&self, x: &Permutation) -> Option<&Permutation> {
        self.section.get(x)
    }

    /// The full preimage in `H` of a subgroup of the image.
    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        let mut gens: Vec<Permutation> = s
            .generators()
            .iter()
            .map(|x| {
                self.section(x)
                    .cloned()
                    .ok_or_else(|| Error::NotAMember(x.to_string()))
            })
            .collect::<Result<_>>()?;
        gens.extend(self.kernel.generators().iter().cloned());
        Subgroup::generated(self.numerator.parent(), &gens)
    }
}

impl fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotientGroup")
            .field("numerator_order", &self.numerator.order())
            .field("kernel_order", &self.kernel.order())
            .field("image_order", &self.image.order())
            .finish()
    }
}
