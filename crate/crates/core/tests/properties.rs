use mackey_cartan::cartan::{
    comackey_rank, comackey_size, det_cartan_group_algebra, det_comackey, det_mackey_cartan,
    pair_factor, AnalysisContext,
};
use mackey_cartan::catalog::{build, format_generators, parse_generators, VERIFICATION_SET};
use mackey_cartan::formulas::{scal_k_f, scal_k_f_oracle, sscal_k_f};
use mackey_cartan::pairs::{inverse_pair, pairs_are_conjugate};
use mackey_cartan::psub::{all_subgroups, p_subgroups_up_to_conjugacy, subgroup_lattice};
use mackey_cartan::quotient::QuotientGroup;
use mackey_cartan::{enumerate_pairs, ExactRational, FiniteGroup, Permutation};
use proptest::prelude::*;

const EXTRA: &[&str] = &["S3xC2", "C3xC3xC2", "D5", "C2xQ8", "S3xC3"];

fn group(spec: &str) -> FiniteGroup {
    build(spec, 5000).unwrap()
}

fn small_catalog() -> impl Iterator<Item = &'static str> {
    VERIFICATION_SET.iter().chain(EXTRA).copied()
}

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn relabel(g: &FiniteGroup, sigma: &Permutation) -> FiniteGroup {
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| x.conjugate_by(sigma))
        .collect();
    FiniteGroup::generate(g.degree(), &gens, 5000).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_format(
        (degree, perms) in (1usize..16).prop_flat_map(|d| (Just(d), prop::collection::vec(permutation(d), 1..4)))
    ) {
        let text = format_generators(degree, &perms);
        let (d, parsed) = parse_generators(&text).unwrap();
        prop_assert_eq!(d, degree);
        prop_assert_eq!(&parsed, &perms);
        prop_assert_eq!(format_generators(d, &parsed), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariants_survive_relabelling(
        idx in 0usize..VERIFICATION_SET.len(),
        p in prop::sample::select(vec![2u64, 3]),
        seed in any::<u64>(),
    ) {
        let g = group(VERIFICATION_SET[idx]);
        let n = g.degree();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (state >> 33) as usize % (i + 1));
        }
        let sigma = Permutation::from_images(images).unwrap();
        let h = relabel(&g, &sigma);
        let (a, b) = (AnalysisContext::new(&g, p).unwrap(), AnalysisContext::new(&h, p).unwrap());
        prop_assert_eq!(a.pairs.len(), b.pairs.len());
        prop_assert_eq!(det_mackey_cartan(&a).unwrap(), det_mackey_cartan(&b).unwrap());
        prop_assert_eq!(comackey_rank(&a).unwrap(), comackey_rank(&b).unwrap());
        prop_assert_eq!(comackey_size(&a), comackey_size(&b));
        prop_assert_eq!(det_comackey(&a).ok(), det_comackey(&b).ok());
    }

    #[test]
    fn conjugate_pairs_share_values(idx in 0usize..VERIFICATION_SET.len(), p in 2u64..4, k in any::<usize>()) {
        let g = group(VERIFICATION_SET[idx]);
        let x = &g.elements()[k % g.elements().len()];
        for pair in enumerate_pairs(&g, p).unwrap() {
            let moved = pair.conjugate(x).unwrap();
            prop_assert!(pairs_are_conjugate(&pair, &moved).unwrap());
            prop_assert_eq!(scal_k_f(&pair), scal_k_f(&moved));
            prop_assert_eq!(scal_k_f_oracle(&moved).unwrap(), scal_k_f(&pair));
            prop_assert_eq!(sscal_k_f(&pair).unwrap(), sscal_k_f(&moved).unwrap());
            prop_assert_eq!(pair_factor(&pair).unwrap(), pair_factor(&moved).unwrap());
        }
    }
}

#[test]
fn pair_count_matches_burnside_count() {
    for spec in small_catalog() {
        let g = group(spec);
        for p in [2u64, 3, 5] {
            let pairs = enumerate_pairs(&g, p).unwrap();
            let mut classes = 0usize;
            let mut burnside = ExactRational::zero();
            for class in p_subgroups_up_to_conjugacy(&g, p).unwrap() {
                let q = QuotientGroup::new(&class.normalizer, &class.representative).unwrap();
                let image = q.image();
                classes += image.p_regular_classes(p).unwrap().len();
                // orbits of N̄ acting on its p'-elements by conjugation
                let fixed: u64 = image
                    .elements()
                    .iter()
                    .filter(|x| x.order() % p != 0)
                    .map(|x| image.centralizer(x).unwrap().order())
                    .sum();
                burnside = burnside + ExactRational::ratio(fixed, image.order());
            }
            assert_eq!(pairs.len(), classes, "{spec}/p={p}");
            assert_eq!(
                ExactRational::from(pairs.len() as u64),
                burnside,
                "{spec}/p={p}"
            );
        }
    }
}

#[test]
fn enumerated_pairs_are_pairwise_non_conjugate() {
    for spec in small_catalog() {
        let g = group(spec);
        for p in [2u64, 3] {
            let pairs = enumerate_pairs(&g, p).unwrap();
            for i in 0..pairs.len() {
                for j in 0..i {
                    assert!(
                        !pairs_are_conjugate(&pairs[i], &pairs[j]).unwrap(),
                        "{spec}/p={p} {i} {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn cyclic_flag_and_lift_independence() {
    for spec in small_catalog() {
        let g = group(spec);
        for p in [2u64, 3] {
            for pair in enumerate_pairs(&g, p).unwrap() {
                let centralizes_r =
                    |s: &Permutation| pair.r().elements().iter().all(|x| (x * s) == (s * x));
                let lifts = pair.lifts();
                let expected = pair.r().is_cyclic() && lifts.iter().any(centralizes_r);
                assert_eq!(pair.is_cyclic(), expected, "{spec}/p={p} {}", pair.label());
                for lift in &lifts {
                    assert_eq!(&pair.preimage_for_lift(lift).unwrap(), pair.preimage_sr());
                }
            }
        }
    }
}

#[test]
fn inverse_pair_is_an_involution_preserving_sscal() {
    for spec in small_catalog() {
        let g = group(spec);
        for p in [2u64, 3] {
            let pairs = enumerate_pairs(&g, p).unwrap();
            for pair in &pairs {
                let inv = inverse_pair(pair).unwrap();
                let hits = pairs
                    .iter()
                    .filter(|q| pairs_are_conjugate(q, &inv).unwrap())
                    .count();
                assert_eq!(hits, 1);
                assert!(pairs_are_conjugate(&inverse_pair(&inv).unwrap(), pair).unwrap());
                assert_eq!(sscal_k_f(pair).unwrap(), sscal_k_f(&inv).unwrap());
                assert_eq!(scal_k_f(pair), scal_k_f(&inv));
            }
        }
    }
}

#[test]
fn p_subgroup_classes_cover_exhaustive_enumeration() {
    for spec in small_catalog().filter(|s| group(s).order() <= 24) {
        let g = group(spec);
        let everything = all_subgroups(&g.as_subgroup()).unwrap();
        for p in [2u64, 3] {
            let classes = p_subgroups_up_to_conjugacy(&g, p).unwrap();
            let implied: u64 = classes.iter().map(|c| c.class_size).sum();
            let direct = everything.iter().filter(|h| h.is_p_subgroup(p)).count() as u64;
            assert_eq!(implied, direct, "{spec}/p={p}");
            for c in &classes {
                assert_eq!(g.order() % c.representative.order(), 0);
                assert_eq!(c.class_size * c.normalizer.order(), g.order());
            }
        }
    }
}

#[test]
fn moebius_rows_sum_to_zero() {
    for spec in ["S3", "D4", "Q8", "V4", "C12", "A4"] {
        let g = group(spec);
        let lattice = subgroup_lattice(&g.as_subgroup()).unwrap();
        let members = lattice.members();
        for (i, x) in members.iter().enumerate() {
            for (j, y) in members.iter().enumerate() {
                if i == j || !x.is_subgroup_of(y) {
                    continue;
                }
                let sum: i64 = members
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| x.is_subgroup_of(z) && z.is_subgroup_of(y))
                    .map(|(k, _)| lattice.moebius_by_index(i, k))
                    .sum();
                assert_eq!(sum, 0, "{spec}");
            }
        }
    }
}

#[test]
fn mackey_determinants_are_positive_integers() {
    for spec in small_catalog() {
        let g = group(spec);
        for p in [2u64, 3, 5] {
            let det = det_mackey_cartan(&AnalysisContext::new(&g, p).unwrap()).unwrap();
            assert!(det.is_positive() && det.is_integer(), "{spec}/p={p}: {det}");
        }
    }
}

#[test]
fn coprime_characteristic_is_trivial() {
    for spec in small_catalog() {
        let g = group(spec);
        let p = [5u64, 7, 11, 13]
            .into_iter()
            .find(|p| !g.order().is_multiple_of(*p))
            .unwrap();
        let ctx = AnalysisContext::new(&g, p).unwrap();
        assert_eq!(ctx.pairs.len(), g.conjugacy_classes().len());
        assert_eq!(det_mackey_cartan(&ctx).unwrap(), ExactRational::one());
        assert_eq!(det_comackey(&ctx).unwrap(), ExactRational::one());
        assert_eq!(det_cartan_group_algebra(&g, p).unwrap(), 1u32.into());
    }
}

#[test]
fn group_structure_invariants() {
    for spec in small_catalog() {
        let g = group(spec);
        let sizes: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
        assert_eq!(sizes as u64, g.order());
        for class in g.conjugacy_classes() {
            assert_eq!(g.order() % class.size() as u64, 0);
            let c = g.centralizer(&class.representative).unwrap();
            assert_eq!(c.order() * class.size() as u64, g.order());
        }
        for h in all_subgroups(&g.as_subgroup()).unwrap().iter().take(40) {
            let n = g.normalizer(h).unwrap();
            let c = g.centralizer_of_subgroup(h).unwrap();
            assert!(h.is_subgroup_of(&n));
            assert!(c.is_normal_in(&n));
        }
    }
}

#[test]
fn projections_are_homomorphisms() {
    for spec in ["S4", "D6", "Q8", "C2xQ8", "S3xC3"] {
        let g = group(spec);
        for class in p_subgroups_up_to_conjugacy(&g, 2).unwrap() {
            let q = QuotientGroup::new(&class.normalizer, &class.representative).unwrap();
            for a in class.normalizer.elements() {
                for b in class.normalizer.elements() {
                    let lhs = q.project(&(a * b)).unwrap();
                    let rhs = &q.project(a).unwrap() * &q.project(b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
