use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use harmap::bounds::{coefficient_bound_check, growth_lower, growth_upper};
use harmap::corpus::{random_member, random_params};
use harmap::document::{load_map_from_reader, to_json_string, MapDocument};
use harmap::geometry::{convex_on_circle, starlike_on_circle};
use harmap::operator::{membership_sampled, membership_sufficient, operator_series};
use harmap::radii::{pc_poly, ps_poly, radius_fully_convex, radius_fully_starlike};
use harmap::{ClassParams, Complex64, HarmonicMap, PolarGrid, TruncatedSeries};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn series(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(), 1..=max_order + 1)
        .prop_map(|c| TruncatedSeries::new(c).unwrap())
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.99f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn class_params() -> impl Strategy<Value = ClassParams> {
    (0.5..2.0f64, 0.0..3.0f64, 0.0..0.95f64)
        .prop_map(|(g, dd, l)| ClassParams::new(g, g + dd, l * g).unwrap())
}

fn normalized_map(max_order: usize) -> impl Strategy<Value = HarmonicMap> {
    (2..=max_order).prop_flat_map(|n| {
        (
            prop::collection::vec(complex(), n - 1),
            prop::collection::vec(complex(), n - 1),
        )
            .prop_map(|(a, b)| {
                let mut s = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
                s.extend(a);
                let mut t = vec![Complex64::new(0.0, 0.0); 2];
                t.extend(b);
                HarmonicMap::new(
                    TruncatedSeries::new(s).unwrap(),
                    TruncatedSeries::new(t).unwrap(),
                )
                .unwrap()
            })
    })
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

proptest! {
    #[test]
    fn derivative_composes(s in series(12)) {
        let twice = s.derivative(1).unwrap().derivative(1).unwrap();
        prop_assert!(close(&twice, &s.derivative(2).unwrap(), 1e-12));
        let thrice = twice.derivative(1).unwrap();
        prop_assert!(close(&thrice, &s.derivative(3).unwrap(), 1e-12));
    }

    #[test]
    fn hadamard_is_commutative_and_associative(a in series(10), b in series(10), c in series(10)) {
        prop_assert!(close(&a.hadamard(&b), &b.hadamard(&a), 0.0));
        let left = a.hadamard(&b).hadamard(&c);
        let right = a.hadamard(&b.hadamard(&c));
        prop_assert!(close(&left, &right, 1e-15));
        prop_assert_eq!(left.order(), a.order().min(b.order()).min(c.order()));
    }

    #[test]
    fn scale_argument_matches_evaluation(s in series(10), r in 0.05..1.0f64, z in disk_point()) {
        // h(rz)/r is the scaled series with c_m r^{m−1}
        let scaled = s.scale_argument(r).unwrap();
        let direct = s.evaluate(z * r).unwrap() / r;
        prop_assert!((scaled.evaluate(z).unwrap() - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
        prop_assert!(close(&s.scale_argument(1.0).unwrap(), &s, 0.0));
    }

    #[test]
    fn operator_is_linear(a in series(10), b in series(10), alpha in complex(), p in class_params()) {
        let n = a.order().max(b.order()).max(3);
        let (a, b) = (a.resized(n), b.resized(n));
        let lhs = operator_series(&a.add_scaled(alpha, &b), &p);
        let rhs = operator_series(&a, &p).add_scaled(alpha, &operator_series(&b, &p));
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn operator_on_monomials(m in 1usize..20, p in class_params()) {
        let image = operator_series(&TruncatedSeries::monomial(m), &p);
        let mf = m as f64;
        let want = mf * mf * (p.gamma() + 0.5 * (p.delta() - p.gamma()) * (mf - 1.0));
        prop_assert!((image.coeff(m - 1).re - want).abs() <= 1e-12 * want);
        prop_assert!((want - p.operator_multiplier(m)).abs() <= 1e-12 * want);
    }

    #[test]
    fn slices_obey_triangle_inequality(f in normalized_map(8), k in 0usize..16) {
        let eps = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 16.0);
        let slice = f.slice(eps).unwrap();
        for m in 0..=f.order() {
            let bound = f.s().coeff(m).norm() + f.t().coeff(m).norm();
            prop_assert!(slice.coeff(m).norm() <= bound + 1e-15);
        }
    }

    #[test]
    fn growth_tail_majorizes_remainder(p in class_params(), r in 0.05..0.95f64, n in 8usize..64) {
        let long = 4000;
        let upper = growth_upper(&p, r, n).unwrap();
        let far = growth_upper(&p, r, long).unwrap();
        prop_assert!(far.value - upper.value <= upper.tail * (1.0 + 1e-9) + 1e-15);
        let lower = growth_lower(&p, r, n).unwrap();
        let far = growth_lower(&p, r, long).unwrap();
        prop_assert!((far.value - lower.value).abs() <= lower.tail * (1.0 + 1e-9) + 1e-15);
        prop_assert!(lower.value <= r && r <= upper.value);
    }

    #[test]
    fn documents_round_trip(f in normalized_map(8), p in prop::option::of(class_params())) {
        let doc = MapDocument::from_map(&f, p.as_ref(), None);
        let text = to_json_string(&doc);
        let back = load_map_from_reader(text.as_bytes()).unwrap();
        prop_assert_eq!(&back.map, &f);
        prop_assert_eq!(back.to_document(), doc);
    }

    #[test]
    fn radius_roots_are_sign_changes(p in class_params()) {
        let rc = radius_fully_convex(&p, 1e-12).unwrap().radius;
        let rs = radius_fully_starlike(&p, 1e-12).unwrap().radius;
        prop_assert!(pc_poly(&p, (rc - 1e-6).max(0.0)) > 0.0 && pc_poly(&p, rc + 1e-6) < 0.0);
        prop_assert!(ps_poly(&p, (rs - 1e-6).max(0.0)) > 0.0 && ps_poly(&p, rs + 1e-6) < 0.0);
        prop_assert!(rc < rs);
    }
}

#[test]
fn identity_partial_sums_with_tail() {
    // geometric series z/(1−z) at z = 1/2: partial sums approach 1 with tail r^{N+1}/(1−r)
    let z = Complex64::new(0.5, 0.0);
    for n in [4, 16, 48] {
        let value = TruncatedSeries::geometric(n).evaluate(z).unwrap();
        let tail = 0.5f64.powi(n as i32 + 1) / 0.5;
        assert!((value.re - 1.0).abs() <= tail + 1e-15, "N = {n}");
    }
}

#[test]
fn corpus_members_satisfy_every_necessary_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let grid = PolarGrid::with_radius(0.9);
    for _ in 0..40 {
        let p = random_params(&mut rng);
        let f = random_member(&mut rng, &p, 12);
        assert!(membership_sufficient(&f, &p).holds);
        assert!(membership_sampled(&f, &p, &grid).unwrap().holds);
        assert!(coefficient_bound_check(&f, &p).holds());
        assert!(f.sense_preserving_check(&grid).unwrap().holds);
    }
}

#[test]
fn convex_circles_are_starlike() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..40 {
        let p = random_params(&mut rng);
        let f = random_member(&mut rng, &p, 12);
        for r in [0.3, 0.6, 0.9] {
            if convex_on_circle(&f, r, 512).unwrap().holds {
                assert!(starlike_on_circle(&f, r, 512).unwrap().holds, "r = {r}");
            }
        }
    }
}
