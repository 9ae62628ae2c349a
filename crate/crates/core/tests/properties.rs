mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exab::extab;
use exab::io::PosetFile;
use exab::ncpoly::{self, cd_expand, AbPoly};
use exab::poset::{Elem, GradedPoset};
use exab::rlabel;

/// A random graded poset: `levels[i]` elements at rank `i + 1`, each element
/// covered by at least one element of the next level.
fn random_poset(levels: &[usize], picks: &[u64]) -> GradedPoset {
    let mut ids = vec!["0".to_string()];
    let mut covers = Vec::new();
    let mut prev = vec!["0".to_string()];
    let mut pick = picks.iter().cycle();
    for (r, &width) in levels.iter().enumerate() {
        let level: Vec<String> = (0..width).map(|j| format!("r{}e{j}", r + 1)).collect();
        let mut covered = vec![false; prev.len()];
        for x in &level {
            let mask = *pick.next().unwrap();
            let mut any = false;
            for (i, p) in prev.iter().enumerate() {
                if mask >> (i % 64) & 1 == 1 {
                    covers.push((p.clone(), x.clone()));
                    covered[i] = true;
                    any = true;
                }
            }
            if !any {
                let i = (mask as usize) % prev.len();
                covers.push((prev[i].clone(), x.clone()));
                covered[i] = true;
            }
        }
        for (i, c) in covered.iter().enumerate() {
            if !c {
                covers.push((prev[i].clone(), level[(i + r) % level.len()].clone()));
            }
        }
        ids.extend(level.iter().cloned());
        prev = level;
    }
    ids.push("1".into());
    for p in &prev {
        covers.push((p.clone(), "1".into()));
    }
    GradedPoset::new(&ids, &covers).expect("construction is graded")
}

fn poset_strategy() -> impl Strategy<Value = GradedPoset> {
    (
        prop::collection::vec(1usize..=3, 0..=3),
        prop::collection::vec(any::<u64>(), 1..12),
    )
        .prop_map(|(levels, picks)| random_poset(&levels, &picks))
}

/// `μ(x, y) = Σ_k (-1)^k · #{x = c_0 < … < c_k = y}`.
fn hall_mobius(p: &GradedPoset, x: Elem, y: Elem) -> i64 {
    if x == y {
        return 1;
    }
    let mut total = 0;
    for z in p.elements() {
        if p.lt(x, z) && p.leq(z, y) {
            total -= if z == y { 1 } else { chains_between(p, z, y) };
        }
    }
    total
}

// signed count of chains z = c_0 < … < c_k = y, sign (-1)^k
fn chains_between(p: &GradedPoset, z: Elem, y: Elem) -> i64 {
    if z == y {
        return 1;
    }
    -p.elements()
        .filter(|&w| p.lt(z, w) && p.leq(w, y))
        .map(|w| chains_between(p, w, y))
        .sum::<i64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_matches_philip_hall(p in poset_strategy()) {
        for x in p.elements() {
            for y in p.elements() {
                if p.leq(x, y) {
                    prop_assert_eq!(p.mobius(x, y).unwrap(), hall_mobius(&p, x, y));
                }
            }
        }
    }

    #[test]
    fn maximal_chains_have_full_length(p in poset_strategy()) {
        for c in p.maximal_chains() {
            prop_assert_eq!(c.len(), p.rank() + 1);
            prop_assert!(p.is_maximal_chain(c.elems()));
        }
    }

    #[test]
    fn general_identities(p in poset_strategy()) {
        let n = p.rank();
        let ex = extab::extab_by_chains(&p);
        let chains = BigInt::from(p.maximal_chains().len());
        prop_assert_eq!(ex.eval_y(0), extab::ab_index(&p));
        prop_assert_eq!(ex.eval_all(0, 1, 1), chains.clone());
        prop_assert_eq!(ex.eval_all(1, 1, 1), chains << n);
        prop_assert_eq!(&ex * &AbPoly::a(), extab::right_a_identity_rhs(&p));
        prop_assert!(ex.is_homogeneous_of(n));
        if n >= 1 {
            prop_assert_eq!(extab::ab_index(&p), extab::ab_identity_rhs(&p).unwrap());
            let num = extab::num_poly(&p).unwrap();
            prop_assert_eq!(num.t_coeff(0), p.poincare());
        }
    }

    #[test]
    fn labeled_identities_when_min_atom_is_an_r_labeling(p in poset_strategy()) {
        let Ok((lab, Ok(()))) = rlabel::min_atom_labeling(&p, None) else {
            return Ok(());
        };
        let ex = extab::extab_by_chains(&p);
        prop_assert_eq!(extab::extab_by_labeling(&p, &lab).unwrap(), ex.clone());
        prop_assert_eq!(ncpoly::omega(&ex.eval_y(0)), ex.clone());
        prop_assert!(ex.is_nonnegative());
        prop_assert_eq!(extab::symmetry_violation(&ex, p.rank()), None);
        if p.rank() >= 1 {
            prop_assert_eq!(cd_expand(&extab::cd_index(&p, &lab).unwrap()), ex.clone());
            prop_assert_eq!(ncpoly::iota(&ex).unwrap(), extab::iota_identity_rhs(&p).unwrap());
        }
    }

    #[test]
    fn poset_file_round_trip(p in poset_strategy()) {
        let back = PosetFile::parse(&PosetFile::from_poset(&p, None).to_json_string()).unwrap().poset().unwrap();
        prop_assert_eq!(back.len(), p.len());
        prop_assert_eq!(back.poincare(), p.poincare());
        prop_assert_eq!(extab::extab_by_chains(&back), extab::extab_by_chains(&p));
    }

    #[test]
    fn random_arrangement_invariants(seed in any::<u64>()) {
        let a = common::random_arrangement(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let flats = a.flats_lattice().unwrap();
        let faces = a.face_poset().unwrap();
        let (lab, verdict) = rlabel::min_atom_labeling(&flats.poset, Some(flats.atom_order())).unwrap();
        prop_assert!(verdict.is_ok());
        let ex = extab::extab_by_chains(&flats.poset);
        prop_assert_eq!(extab::extab_by_labeling(&flats.poset, &lab).unwrap(), ex.clone());
        prop_assert_eq!(ncpoly::omega(&ex.eval_y(0)), ex.clone());
        prop_assert_eq!(cd_expand(&extab::cd_index(&flats.poset, &lab).unwrap()), ex);
        for c in a.covectors() {
            prop_assert_eq!(a.sign_of(&c.witness), c.signs);
        }
        prop_assert_eq!(BigInt::from(a.chamber_count()), flats.poset.poincare().eval_i64(1));
        let (lhs, rhs) = a.pullback_sides().unwrap();
        prop_assert_eq!(lhs, rhs);
        for c in flats.poset.chains(exab::poset::Exclude::NONE) {
            prop_assert_eq!(a.supp_fibers(&flats, &faces, &c), flats.poset.chain_poincare(&c).eval_i64(1));
        }
    }
}
