use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use realsnf::poly::{
    count_real_roots, is_nonneg_on_reals, positive_associate, squarefree_decomposition,
};
use realsnf::quadratic::SignPattern;
use realsnf::ring::{are_associated, gcd, valuation};
use realsnf::rng::{trial_seed, EntryBounds};
use realsnf::smith::minor_gcd_profile;
use realsnf::spectrum::is_psd_on_spectrum;
use realsnf::verifier::{gram_matrix, random_unimodular, verify_field_identity};
use realsnf::{
    determinant, smith_normal_form, verify_snf, EuclideanRing, Integers, Matrix, QuadElem,
    QuadraticIntegers, RatPoly, RationalPolynomials, Ring, SplitMix64,
};

const QUAD_SPECS: [&str; 7] = [
    "Zsqrt:2", "Zsqrt:3", "Zsqrt:6", "Zsqrt:7", "Zsqrt:11", "Zhalf:5", "Zhalf:13",
];

fn quad_ring(i: usize) -> QuadraticIntegers {
    QuadraticIntegers::new(QUAD_SPECS[i].parse().unwrap()).unwrap()
}

fn quad_elem(h: i64) -> impl Strategy<Value = QuadElem> {
    (-h..=h, -h..=h).prop_map(|(x, y)| QuadElem::new(x, y))
}

fn nonzero_quad(h: i64) -> impl Strategy<Value = QuadElem> {
    quad_elem(h).prop_filter("nonzero", |e| !(e.x.is_zero() && e.y.is_zero()))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(RatPoly::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn quadratic_division_recombines(ri in 0usize..7, a in quad_elem(60), b in nonzero_quad(25)) {
        let ring = quad_ring(ri);
        let dr = ring.div_rem(&a, &b).unwrap();
        prop_assert_eq!(ring.add(&ring.mul(&b, &dr.quotient), &dr.remainder), a);
        prop_assert!(ring.norm(&dr.remainder).abs() < ring.norm(&b).abs());
    }

    #[test]
    fn polynomial_division_recombines(a in poly(6), b in nonzero_poly(3)) {
        let dr = RationalPolynomials.div_rem(&a, &b).unwrap();
        prop_assert_eq!(b.mul(&dr.quotient).add(&dr.remainder), a);
        prop_assert!(dr.remainder.is_zero() || dr.remainder.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(ri in 0usize..7, a in nonzero_quad(30), b in quad_elem(30)) {
        let ring = quad_ring(ri);
        let g = gcd(&ring, &a, &b).unwrap();
        prop_assert!(ring.divides(&g, &a));
        prop_assert!(ring.divides(&g, &b));
        prop_assert_eq!(ring.canonical(&g), g);
    }

    #[test]
    fn integer_gcd_matches_num(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assume!(a != 0 || b != 0);
        let g = gcd(&Integers, &BigInt::from(a), &BigInt::from(b)).unwrap();
        prop_assert_eq!(g, BigInt::from(num_integer::gcd(a, b)));
    }

    #[test]
    fn association_is_an_equivalence(ri in 0usize..7, a in nonzero_quad(20), k in -3i64..=3, neg in any::<bool>()) {
        let ring = quad_ring(ri);
        let mut u = ring.unit_power(k);
        if neg {
            u = ring.neg(&u);
        }
        let b = ring.mul(&a, &u);
        prop_assert!(are_associated(&ring, &a, &a));
        prop_assert!(are_associated(&ring, &a, &b));
        prop_assert!(are_associated(&ring, &b, &a));
        prop_assert_eq!(ring.canonical(&a), ring.canonical(&b));
    }

    #[test]
    fn valuation_is_additive(a in 1i64..500, b in 1i64..500, p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let (za, zb, zp) = (BigInt::from(a), BigInt::from(b), BigInt::from(p));
        let vab = valuation(&Integers, &zp, &(&za * &zb)).unwrap();
        let va = valuation(&Integers, &zp, &za).unwrap();
        let vb = valuation(&Integers, &zp, &zb).unwrap();
        prop_assert_eq!(vab, va + vb);
    }

    #[test]
    fn norm_and_signs_are_multiplicative(ri in 0usize..7, a in quad_elem(40), b in quad_elem(40)) {
        let ring = quad_ring(ri);
        let ab = ring.mul(&a, &b);
        prop_assert_eq!(ring.norm(&ab), ring.norm(&a) * ring.norm(&b));
        prop_assert_eq!(ring.sign_pattern(&ab), ring.sign_pattern(&a).product(ring.sign_pattern(&b)));
    }

    #[test]
    fn unit_sign_patterns(ri in 0usize..7, k in -3i64..=3, neg in any::<bool>()) {
        let ring = quad_ring(ri);
        let s: i8 = if neg { -1 } else { 1 };
        let mut u = ring.unit_power(k);
        if neg {
            u = ring.neg(&u);
        }
        let n = ring.fundamental_unit().norm.clone();
        let minus = if n.is_negative() && k % 2 != 0 { -s } else { s };
        prop_assert_eq!(ring.sign_pattern(&u), SignPattern::new(s, minus));
        prop_assert!(ring.is_unit(&u));
    }

    #[test]
    fn quadratic_factorization_recombines(ri in 0usize..7, a in nonzero_quad(40)) {
        let ring = quad_ring(ri);
        prop_assume!(!ring.is_unit(&a));
        let factors = ring.factor(&a).unwrap();
        let mut prod = ring.one();
        for (p, k) in &factors {
            prop_assert!(ring.is_certified_irreducible(p));
            prod = ring.mul(&prod, &ring.pow(p, *k));
        }
        prop_assert!(are_associated(&ring, &prod, &a));
    }

    #[test]
    fn squarefree_decomposition_reexpands(p in nonzero_poly(3), q in nonzero_poly(2), k in 1u32..4) {
        let f = p.mul(&q.pow(k));
        let dec = squarefree_decomposition(&f).unwrap();
        prop_assert_eq!(dec.expand(), f);
        for (g, _) in &dec.factors {
            prop_assert!(g.gcd(&g.derivative()).is_constant());
        }
    }

    #[test]
    fn complex_irreducibles_have_positive_associates(a in -6i64..=6, b in 1i64..=9, c in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        // c * ((x - a)^2 + b) has no real root
        let p = RatPoly::from_i64s(&[a * a + b, -2 * a, 1]).scale(&r(c, 1));
        let pa = positive_associate(&p).unwrap().expect("no real root");
        prop_assert!(is_nonneg_on_reals(&pa));
        prop_assert!(are_associated(&RationalPolynomials, &pa, &p));
    }

    #[test]
    fn squares_are_nonnegative(p in poly(4), c in 0i64..5) {
        let f = p.mul(&p).add(&RatPoly::constant(r(c, 1)));
        prop_assert!(is_nonneg_on_reals(&f));
    }

    #[test]
    fn nonnegativity_agrees_with_sampling(p in poly(6)) {
        let samples = (0..=200).map(|i| r(-10, 1) + r(i, 10));
        let witnessed = samples.into_iter().any(|t| p.eval(&t).is_negative());
        if witnessed {
            prop_assert!(!is_nonneg_on_reals(&p));
        }
    }

    #[test]
    fn root_counts_of_products(roots in prop::collection::btree_set(-20i64..20, 0..6), complex in 0usize..3) {
        let mut p = RatPoly::one();
        for t in &roots {
            p = p.mul(&RatPoly::from_i64s(&[-t, 1]));
        }
        for j in 0..complex {
            p = p.mul(&RatPoly::from_i64s(&[1 + j as i64, 0, 1]));
        }
        prop_assert_eq!(count_real_roots(&p).unwrap(), roots.len());
    }
}

fn int_matrix(vals: &[i64], rows: usize, cols: usize) -> Matrix<BigInt> {
    Matrix::new(rows, cols, vals.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_round_trips_over_z(rows in 1usize..=4, cols in 1usize..=4, vals in prop::collection::vec(-20i64..20, 16)) {
        let m = int_matrix(&vals[..rows * cols], rows, cols);
        let s = smith_normal_form(&Integers, &m).unwrap();
        let check = verify_snf(&Integers, &m, &s).unwrap();
        prop_assert!(check.ok, "{:?}", check.diagnostics);
        for w in s.diagonals.windows(2) {
            prop_assert!(Integers.divides(&w[0], &w[1]));
        }
    }

    #[test]
    fn snf_round_trips_over_quadratic_rings(ri in 0usize..7, n in 1usize..=3, vals in prop::collection::vec(quad_elem(6), 9)) {
        let ring = quad_ring(ri);
        let m = Matrix::new(n, n, vals[..n * n].to_vec()).unwrap();
        let s = smith_normal_form(&ring, &m).unwrap();
        let check = verify_snf(&ring, &m, &s).unwrap();
        prop_assert!(check.ok, "{:?}", check.diagnostics);
    }

    #[test]
    fn snf_is_unimodular_invariant(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let n = 1 + rng.below(4) as usize;
        let bounds = EntryBounds { height: 5, degree: 1 };
        let vals: Vec<i64> = (0..n * n).map(|_| rng.int_in(9)).collect();
        let m = int_matrix(&vals, n, n);
        let p = random_unimodular(&Integers, &mut rng, n, &bounds);
        let q = random_unimodular(&Integers, &mut rng, n, &bounds);
        prop_assert!(Integers.is_unit(&determinant(&Integers, &p).unwrap()));
        let pmq = p.mul(&Integers, &m).unwrap().mul(&Integers, &q).unwrap();
        let a = smith_normal_form(&Integers, &m).unwrap();
        let b = smith_normal_form(&Integers, &pmq).unwrap();
        prop_assert_eq!(a.diagonals, b.diagonals);
    }

    #[test]
    fn diagonal_products_match_minor_gcds(rows in 1usize..=4, cols in 1usize..=4, vals in prop::collection::vec(-12i64..12, 16)) {
        let m = int_matrix(&vals[..rows * cols], rows, cols);
        let s = smith_normal_form(&Integers, &m).unwrap();
        let profile = minor_gcd_profile(&Integers, &m).unwrap();
        let mut prod = BigInt::one();
        for (k, g) in profile.per_order.iter().enumerate() {
            prod *= s.diagonals.get(k).cloned().unwrap_or_default();
            prop_assert_eq!(&prod, g);
        }
    }

    #[test]
    fn planted_prime_divides_the_determinant(n in 2usize..=4, p in prop::sample::select(vec![2i64, 3, 5, 7]), vals in prop::collection::vec(-9i64..9, 16)) {
        // scaling a row by p forces p | d_n
        let mut m = int_matrix(&vals[..n * n], n, n);
        m.scale_row(&Integers, 0, &BigInt::from(p));
        let s = smith_normal_form(&Integers, &m).unwrap();
        if s.rank() == n {
            prop_assert!(Integers.divides(&BigInt::from(p), &s.diagonals[n - 1]));
        }
    }

    #[test]
    fn gram_matrices_are_psd(ri in 0usize..7, seed in any::<u64>(), n in 1usize..=3) {
        let ring = quad_ring(ri);
        let mut rng = SplitMix64::new(seed);
        let g = gram_matrix(&ring, &mut rng, n, &EntryBounds { height: 3, degree: 0 });
        prop_assert!(is_psd_on_spectrum(&ring, &g).unwrap().is_psd);
    }

    #[test]
    fn psd_is_congruence_invariant(ri in 0usize..7, seed in any::<u64>(), n in 1usize..=3) {
        let ring = quad_ring(ri);
        let mut rng = SplitMix64::new(seed);
        let bounds = EntryBounds { height: 3, degree: 0 };
        let m = Matrix::new(n, n, (0..n * n).map(|_| QuadElem::new(rng.int_in(4), rng.int_in(2))).collect()).unwrap();
        let mt = m.transpose();
        let sym = Matrix::new(n, n, m.entries().iter().zip(mt.entries()).map(|(a, b)| ring.add(a, b)).collect()).unwrap();
        let u = random_unimodular(&ring, &mut rng, n, &bounds);
        let congruent = u.mul(&ring, &sym).unwrap().mul(&ring, &u.transpose()).unwrap();
        prop_assert_eq!(
            is_psd_on_spectrum(&ring, &sym).unwrap().is_psd,
            is_psd_on_spectrum(&ring, &congruent).unwrap().is_psd
        );
    }

    #[test]
    fn polynomial_psd_agrees_with_pointwise_sampling(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let rp = RationalPolynomials;
        let bounds = EntryBounds { height: 2, degree: 1 };
        let m = gram_matrix(&rp, &mut rng, 2, &bounds);
        // perturb the corner so some matrices stop being PSD
        let shift = RatPoly::from_i64s(&[rng.int_in(2), 0, -(rng.below(2) as i64)]);
        let mut m = m;
        let corner = m.get(1, 1).add(&shift);
        m.set(1, 1, corner);
        let claimed = is_psd_on_spectrum(&rp, &m).unwrap().is_psd;
        for i in 0..=200 {
            let t = r(-10, 1) + r(i, 10);
            let at = m.map(|e| e.eval(&t));
            let det = at.get(0, 0) * at.get(1, 1) - at.get(0, 1) * at.get(1, 0);
            let pointwise = !at.get(0, 0).is_negative() && !at.get(1, 1).is_negative() && !det.is_negative();
            if !pointwise {
                prop_assert!(!claimed, "PSD claimed but fails at t = {}", t);
            }
        }
    }

    #[test]
    fn field_identity_at_random_points(n in -50i64..50, d in 1i64..50) {
        prop_assume!(n != 0);
        let rep = verify_field_identity(&r(n, d)).unwrap();
        prop_assert!(rep.identity_holds);
    }
}

#[test]
fn seeded_gram_matrices_reproduce() {
    let ring = quad_ring(1);
    let bounds = EntryBounds {
        height: 3,
        degree: 0,
    };
    let a = gram_matrix(&ring, &mut SplitMix64::new(trial_seed(9, 4)), 3, &bounds);
    let b = gram_matrix(&ring, &mut SplitMix64::new(trial_seed(9, 4)), 3, &bounds);
    assert_eq!(a, b);
}
