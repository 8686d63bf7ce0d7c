use eqsurf_core::classification::{lower_bound, MapDatum};
use eqsurf_core::numtheory::{gcd, lcm, solve_congruence, Rational};
use eqsurf_core::surfaces::{rh_genus, OrbifoldSignature, RhError};
use proptest::prelude::*;

#[test]
fn gcd_lcm_product_exhaustive() {
    for a in 1..=100u64 {
        for b in 1..=100u64 {
            assert_eq!(gcd(a, b) * lcm(a, b), a * b);
        }
    }
}

proptest! {
    #[test]
    fn congruence_inverse_brute_force(a in -500i64..500, m in 1u64..=500) {
        match solve_congruence(a, m) {
            Ok(s) => {
                let found = (0..m.max(1))
                    .find(|&t| (a.rem_euclid(m as i64) as u64 * t) % m == 1 % m);
                prop_assert_eq!(found, Some(s));
            }
            Err(_) => {
                let ar = a.rem_euclid(m as i64) as u64;
                prop_assert_ne!(gcd(ar % m, m), 1);
            }
        }
    }

    #[test]
    fn rational_add_sub_roundtrip(
        xn in -1000i64..1000, xd in 1i64..1000,
        yn in -1000i64..1000, yd in 1i64..1000,
    ) {
        let x = Rational::new(xn, xd);
        let y = Rational::new(yn, yd);
        prop_assert_eq!((x + y) - y, x);
        if !y.is_zero() {
            prop_assert_eq!((x * y) * y.recip(), x);
        }
    }

    #[test]
    fn rh_never_rounds(order in 1u64..200, picks in proptest::collection::vec(0usize..20, 0..6)) {
        // indices drawn from the divisors of the order
        let divisors: Vec<u64> = (2..=order).filter(|d| order % d == 0).collect();
        if divisors.is_empty() {
            return Ok(());
        }
        let indices: Vec<u64> = picks.iter().map(|&i| divisors[i % divisors.len()]).collect();
        let sig = OrbifoldSignature::new(0, indices);
        match rh_genus(order, &sig) {
            Ok(g) => {
                // the exact identity holds for the returned integer
                let datum = MapDatum::new(g, order, sig).unwrap();
                prop_assert!(lower_bound(&datum).value >= 2);
            }
            Err(RhError::NonIntegralGenus { genus }) => {
                prop_assert!(!genus.is_integer() || genus.numer() < 0);
            }
            Err(RhError::IndexMismatch { .. }) => prop_assert!(false, "indices divide by construction"),
        }
    }
}
