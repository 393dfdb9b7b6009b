use proptest::prelude::*;

use tetra_ising::exactalg::{
    discriminant, int, poly_exact_div, ratio, resultant, sturm_count, ExactScalar, Ring, UniPoly,
};

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly<ExactScalar>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-6i64..=6, d), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])).prop_map(
            |(mut c, lead)| {
                c.push(lead);
                UniPoly::from_ints(&c)
            },
        )
    })
}

fn linear(root_num: i64, root_den: i64) -> UniPoly<ExactScalar> {
    UniPoly::new(vec![-ratio(root_num, root_den), int(1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn resultant_vanishes_iff_common_factor(
        p in poly(5),
        q in poly(5),
        share in any::<bool>(),
        r in -4i64..=4,
    ) {
        let (p, q) = if share {
            let l = linear(r, 3);
            (p.mul(&l), q.mul(&l))
        } else {
            (p, q)
        };
        let res = resultant(&p, &q).unwrap();
        let g = p.gcd(&q).unwrap();
        prop_assert_eq!(Ring::is_zero(&res), g.degree().unwrap() > 0);
    }

    #[test]
    fn sturm_matches_grid_sign_changes(
        roots in prop::collection::btree_set(-20i64..20, 1..=6),
        quad in prop::option::of(1i64..5),
        a in -12i64..0,
        b in 1i64..12,
    ) {
        // Roots at odd quarters never land on the half-integer grid.
        let mut p = UniPoly::from_ints(&[1]);
        for k in &roots {
            p = p.mul(&linear(2 * k + 1, 4));
        }
        if let Some(k) = quad {
            p = p.mul(&UniPoly::from_ints(&[k, 0, 1]));
        }
        let (lo, hi) = (ratio(a, 2), ratio(b, 2));
        let mut changes = 0;
        let mut x = lo.clone();
        let step = ratio(1, 2);
        let mut prev = p.eval(&x);
        while x < hi {
            x += &step;
            let v = p.eval(&x);
            if (v < int(0)) != (prev < int(0)) {
                changes += 1;
            }
            prev = v;
        }
        prop_assert_eq!(sturm_count(&p, &lo, &hi).unwrap(), changes);
    }

    #[test]
    fn exact_division_round_trips(quot in poly(6), div in poly(4)) {
        let prod = quot.mul(&div);
        prop_assert_eq!(poly_exact_div(&prod, &div).unwrap(), quot);
    }

    #[test]
    fn discriminant_of_product(p in poly(3), q in poly(3)) {
        let lhs = discriminant(&p.mul(&q)).unwrap();
        let r = resultant(&p, &q).unwrap();
        let rhs = discriminant(&p).unwrap() * discriminant(&q).unwrap() * &r * &r;
        prop_assert_eq!(lhs, rhs);
    }
}
