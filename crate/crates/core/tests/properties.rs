//! Randomized property suites, 1000 cases each.

mod common;

use common::*;
use knotrep_core::characters::{character_order, count_direct_detailed};
use knotrep_core::fox::{alexander_module_deleting, invariant_factors_q};
use knotrep_core::homology::{betti_ln, betti_ln_exact};
use knotrep_core::reps::{build_gl_rep, build_sl_rep, verify_rep, MonomialMatrix};
use knotrep_core::{
    alexander_module, alexander_polynomial, braid_to_wirtinger, count_mobius_tower, enumerate_characters,
    verify_order_formula, QPoly, Tower,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        check_ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn snf_reconstruction(a in int_matrix(5, 30)) {
        check_snf(&a)?;
    }

    #[test]
    fn hom_to_circle_has_group_order(m in finite_group()) {
        check_hom_count(&m)?;
    }

    #[test]
    fn gcd_order_law(a in synthetic_module(), n in 1u32..=6, l in 1u32..=6) {
        check_gcd_law(&a, n, l)?;
    }

    #[test]
    fn monomial_product_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let big_n = 2 * rng.gen_range(1..=6u64);
        let mut random = || {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            MonomialMatrix { n, root_order: big_n, perm, exps: (0..n).map(|_| rng.gen_range(0..big_n)).collect() }
        };
        let (a, b, c) = (random(), random(), random());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let dense = (a.mul(&b).unwrap().to_complex() - a.to_complex() * b.to_complex()).norm();
        prop_assert!(dense < 1e-9);
        let det = (a.mul(&b).unwrap().det_exponent() + big_n - a.det_exponent() + big_n - b.det_exponent()) % big_n;
        prop_assert_eq!(det, 0);
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn wirtinger_relators_abelianize_trivially(b in braid_knot()) {
        let w = braid_to_wirtinger(&b).unwrap();
        for r in &w.relators {
            prop_assert_eq!(w.abelianize(r).iter().sum::<i64>(), 0);
            prop_assert_eq!(r.iter().map(|l| l.exp as i64).sum::<i64>(), 0);
        }
        prop_assert_eq!(w.longitude.iter().map(|l| l.exp as i64).sum::<i64>(), 0);
        for l in w.relators.iter().flatten().chain(&w.longitude) {
            prop_assert!(l.generator < w.generator_count);
        }
    }

    #[test]
    fn alexander_polynomial_invariants(b in braid_knot()) {
        let w = braid_to_wirtinger(&b).unwrap();
        let a = alexander_module(&w);
        let delta = alexander_polynomial(&a).unwrap();
        prop_assert_eq!(delta.eval_int(&BigInt::one()).unwrap().abs(), BigInt::one());
        let pd = b.to_pd().unwrap();
        let via_pd = alexander_polynomial(&alexander_module(&pd.to_wirtinger().unwrap())).unwrap();
        prop_assert_eq!(&via_pd, &delta);
        for row in 0..w.relators.len() {
            let d = alexander_polynomial(&alexander_module_deleting(&w, Some(row))).unwrap();
            prop_assert_eq!(&d, &delta);
        }
        let product = invariant_factors_q(&a).iter().fold(QPoly::one(), |acc, f| &acc * f);
        prop_assert_eq!(product, QPoly::from_laurent(&delta).strip_t().monic());
    }

    #[test]
    fn cover_homology_invariants(b in braid_knot()) {
        let w = braid_to_wirtinger(&b).unwrap();
        let a = alexander_module(&w);
        let delta = alexander_polynomial(&a).unwrap();
        let tower = Tower::new(a.clone());
        prop_assert_eq!(tower.get(1).order(), Some(BigInt::one()));
        for n in 1..=6u32 {
            let c = tower.get(n);
            prop_assert!(c.t_power_is_identity());
            prop_assert!(c.t_is_automorphism());
            prop_assert!(verify_order_formula(&a, n).unwrap().agree);
            prop_assert_eq!(betti_ln_exact(&a, n), c.free_rank());
            prop_assert!(betti_ln(&delta, n) <= c.free_rank());
            for l in 1..n {
                if n % l == 0 {
                    prop_assert!(tower.projection_is_surjective(n, l));
                }
            }
        }
    }

    #[test]
    fn direct_and_mobius_counts_agree(b in braid_knot()) {
        let w = braid_to_wirtinger(&b).unwrap();
        let tower = Tower::new(alexander_module(&w));
        for n in 2..=6u32 {
            let finite = (1..=n).filter(|l| n % l == 0).all(|l| tower.get(l).free_rank() == 0);
            let small = tower.get(n).order().is_some_and(|o| o <= BigInt::from(20_000));
            if !(finite && small) {
                continue;
            }
            let direct = count_direct_detailed(&tower, n).unwrap();
            prop_assert_eq!(direct.order_n % n as u64, 0);
            prop_assert_eq!(direct.orbits, count_mobius_tower(&tower, n).unwrap());
        }
    }

    #[test]
    fn metabelian_reps_verify(b in braid_knot(), seed in any::<u64>()) {
        let w = braid_to_wirtinger(&b).unwrap();
        let tower = Tower::new(alexander_module(&w));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 2..=3u32 {
            let c = tower.get(n);
            if c.free_rank() > 0 || c.order().unwrap() > BigInt::from(2_000) {
                continue;
            }
            for chi in enumerate_characters(&c).unwrap().filter(|chi| character_order(chi, &tower) == n) {
                let r = build_sl_rep(&w, &tower, &chi).unwrap();
                let report = verify_rep(&r, &w);
                prop_assert!(report.all_pass(), "{:?}", report);
                prop_assert_eq!(r.images[w.meridian].pow(n as u64).scalar_exponent(),
                    Some(if n % 2 == 0 { r.root_order / 2 } else { 0 }));

                // GL: det alpha(g) = ((-1)^(n+1) z)^eps(g) on random words
                let z_den = rng.gen_range(1..=6u64);
                let z_num = rng.gen_range(0..z_den);
                let gl = build_gl_rep(&w, &tower, &chi, z_num, z_den).unwrap();
                prop_assert!(verify_rep(&gl, &w).all_pass());
                let big_n = gl.root_order;
                let (zn, zd) = gl.z();
                let step = (zn * (big_n / zd) + if n % 2 == 0 { big_n / 2 } else { 0 }) % big_n;
                for _ in 0..100 {
                    let len = rng.gen_range(0..8);
                    let word: Vec<_> = (0..len)
                        .map(|_| knotrep_core::knot::Letter::new(rng.gen_range(0..w.generator_count), if rng.gen() { 1 } else { -1 }))
                        .collect();
                    let eps: i64 = word.iter().map(|l| l.exp as i64).sum();
                    let want = ((eps.rem_euclid(big_n as i64) as u64) * step) % big_n;
                    prop_assert_eq!(gl.eval_word(&word).det_exponent(), want);
                }
            }
        }
    }
}
