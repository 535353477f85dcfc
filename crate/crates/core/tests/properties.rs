use proptest::prelude::*;

use symdyn::chaoslab::{log_grid, separated_counts, PairStats};
use symdyn::coding::Coder;
use symdyn::dynsys::Point;
use symdyn::examples::{example_5_1, Pattern51};
use symdyn::hyperspace::{hausdorff, induced_step, CompactRegion};
use symdyn::region::{Interval, IntervalUnion};
use symdyn::symbolic::{big_ln, validate_matrix, SymbolGenerator, TransitionMatrix};

fn union_strategy(lo: f64, hi: f64) -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec((lo..hi, 0.0..(hi - lo) / 4.0), 1..5).prop_map(move |v| {
        IntervalUnion::from_intervals(v.into_iter().map(|(a, w)| Interval::new(a, (a + w).min(hi))))
    })
}

fn points_strategy() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| [x, y]), 1..8)
}

fn matrix_strategy() -> impl Strategy<Value = TransitionMatrix> {
    (2usize..5)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0i64..2, n), n))
        .prop_filter_map("zero row or column", |rows| validate_matrix(&rows).ok())
}

fn brute_hausdorff(a: &IntervalUnion, b: &IntervalUnion, step: f64) -> f64 {
    let grid = |u: &IntervalUnion| -> Vec<f64> {
        u.parts()
            .iter()
            .flat_map(|iv| {
                let k = (iv.len() / step).ceil() as usize;
                (0..=k).map(move |i| (iv.lo + i as f64 * step).min(iv.hi))
            })
            .collect()
    };
    let (ga, gb) = (grid(a), grid(b));
    let directed = |p: &[f64], q: &[f64]| {
        p.iter()
            .map(|x| q.iter().map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(&ga, &gb).max(directed(&gb, &ga))
}

fn region(u: &IntervalUnion) -> CompactRegion {
    CompactRegion::intervals(u.clone()).unwrap()
}

proptest! {
    #[test]
    fn hausdorff_matches_the_grid_oracle(a in union_strategy(0.0, 3.0), b in union_strategy(0.0, 3.0)) {
        let step = 1e-3;
        let exact = a.hausdorff(&b);
        prop_assert!((exact - brute_hausdorff(&a, &b, step)).abs() <= 2.0 * step);
    }

    #[test]
    fn hausdorff_is_a_metric(
        a in union_strategy(0.0, 3.0),
        b in union_strategy(0.0, 3.0),
        c in union_strategy(0.0, 3.0),
    ) {
        let (ra, rb, rc) = (region(&a), region(&b), region(&c));
        let ab = hausdorff(&ra, &rb).unwrap();
        prop_assert_eq!(hausdorff(&ra, &ra).unwrap(), 0.0);
        prop_assert_eq!(ab, hausdorff(&rb, &ra).unwrap());
        prop_assert!(ab >= 0.0);
        let ac = hausdorff(&ra, &rc).unwrap();
        let cb = hausdorff(&rc, &rb).unwrap();
        prop_assert!(ab <= ac + cb + 1e-12);
    }

    #[test]
    fn planar_hausdorff_is_a_metric(a in points_strategy(), b in points_strategy(), c in points_strategy()) {
        let (ra, rb, rc) = (
            CompactRegion::points(a).unwrap(),
            CompactRegion::points(b).unwrap(),
            CompactRegion::points(c).unwrap(),
        );
        let ab = hausdorff(&ra, &rb).unwrap();
        prop_assert_eq!(hausdorff(&ra, &ra).unwrap(), 0.0);
        prop_assert_eq!(ab, hausdorff(&rb, &ra).unwrap());
        prop_assert!(ab <= hausdorff(&ra, &rc).unwrap() + hausdorff(&rc, &rb).unwrap() + 1e-12);
    }

    // H(f(A), f(B)) <= L H(A, B) for an L-Lipschitz f
    #[test]
    fn induced_map_transfers_lipschitz_constants(
        a in union_strategy(0.0, 3.0),
        b in union_strategy(0.0, 3.0),
        n in 0usize..4,
    ) {
        let (seq, _) = example_5_1(&Pattern51::Alternate).unwrap();
        // |f'| on [0, 3] is at most 8 for both maps
        let l = 8.0;
        let fa = induced_step(&seq, n, &region(&a)).unwrap();
        let fb = induced_step(&seq, n, &region(&b)).unwrap();
        let h = hausdorff(&fa, &fb).unwrap();
        prop_assert!(h <= l * a.hausdorff(&b) + 1e-9, "{} > {}", h, l * a.hausdorff(&b));
    }

    // f(A ∪ B) = f(A) ∪ f(B)
    #[test]
    fn induced_map_preserves_unions(a in union_strategy(0.0, 3.0), b in union_strategy(0.0, 3.0), n in 0usize..4) {
        let (seq, _) = example_5_1(&Pattern51::Alternate).unwrap();
        let whole = induced_step(&seq, n, &region(&a.union(&b))).unwrap();
        let fa = induced_step(&seq, n, &region(&a)).unwrap();
        let fb = induced_step(&seq, n, &region(&b)).unwrap();
        let joined = region(&fa.as_intervals().unwrap().union(fb.as_intervals().unwrap()));
        prop_assert!(hausdorff(&whole, &joined).unwrap() < 1e-12);
    }

    // the induced map of a composition is the composition of induced maps
    #[test]
    fn induced_map_is_functorial(x in prop::collection::vec(0.0..3.0f64, 1..6), n in 0usize..4) {
        let (seq, _) = example_5_1(&Pattern51::Alternate).unwrap();
        let a = IntervalUnion::from_intervals(x.iter().map(|&v| Interval::point(v)));
        let two = induced_step(&seq, n + 1, &induced_step(&seq, n, &region(&a)).unwrap()).unwrap();
        let direct = IntervalUnion::from_intervals(x.iter().map(|&v| {
            Interval::point(seq.compose_forward(n, 2, Point::One(v)).unwrap().coords()[0])
        }));
        prop_assert!(hausdorff(&two, &region(&direct)).unwrap() < 1e-12);
    }

    #[test]
    fn nested_cells_shrink_and_nest(word in prop::collection::vec(1usize..3, 1..12), n in 0usize..4) {
        let (seq, fam) = example_5_1(&Pattern51::Alternate).unwrap();
        let coder = Coder::new(&seq, &fam).unwrap();
        let mut prev = coder.nested_cell(&word[..1], n).unwrap();
        for m in 2..=word.len() {
            let cur = coder.nested_cell(&word[..m], n).unwrap();
            prop_assert!(cur.region.is_subset_of(&prev.region, 0.0));
            prop_assert!(cur.diameter() <= 0.5 * 4f64.powi(-(m as i32 - 1)) + 1e-12);
            prev = cur;
        }
    }

    #[test]
    fn decoded_points_follow_their_symbols(word in prop::collection::vec(1usize..3, 1..6), n in 0usize..6) {
        let (seq, fam) = example_5_1(&Pattern51::Alternate).unwrap();
        let coder = Coder::new(&seq, &fam).unwrap();
        let alpha = SymbolGenerator::periodic(&word, fam.matrix()).unwrap();
        let d = coder.decode(&alpha, n).unwrap();
        let it = coder.itinerary(d.point, n, d.depth + 1).unwrap();
        let expected = alpha.prefix(d.depth + 1);
        prop_assert_eq!(it.symbols(), expected.as_slice());
    }

    #[test]
    fn proximal_fraction_is_monotone_and_symmetric(
        x in prop::collection::vec(0.0..2.0f64, 16..64),
        y in prop::collection::vec(0.0..2.0f64, 64),
    ) {
        let d: Vec<f64> = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).collect();
        let rev: Vec<f64> = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).collect();
        let grid = log_grid(1e-3, 2.0, 16);
        let s = PairStats::from_distances(d, grid.clone());
        prop_assert_eq!(&s, &PairStats::from_distances(rev, grid));
        for w in s.fractions.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        prop_assert!(s.tail_min <= s.tail_max);
        prop_assert!(s.min <= s.tail_min && s.tail_max <= s.max);
    }

    #[test]
    fn separated_counts_grow_as_eps_shrinks(
        pts in prop::collection::vec(prop::collection::vec(0.0..1.0f64, 4), 1..40),
    ) {
        let orbits: Vec<Vec<Point>> = pts.iter().map(|o| o.iter().map(|&v| Point::One(v)).collect()).collect();
        let eps = log_grid(1e-3, 1.0, 10);
        let c = separated_counts(&orbits, 4, &eps);
        for w in c.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(c.iter().all(|&k| k >= 1 && k <= orbits.len()));
    }

    // min_i (A^k 1)_i <= rho^k <= max_i (A^k 1)_i
    #[test]
    fn word_counts_bracket_the_spectral_radius(a in matrix_strategy(), k in 1usize..12) {
        prop_assume!(a.is_irreducible());
        let rho = a.spectral_radius(1e-12).unwrap();
        let sums = a.power_row_sums(k);
        let lo = sums.iter().map(big_ln).fold(f64::INFINITY, f64::min);
        let hi = sums.iter().map(big_ln).fold(f64::NEG_INFINITY, f64::max);
        let target = k as f64 * rho.ln();
        prop_assert!(lo - 1e-6 <= target && target <= hi + 1e-6, "{lo} {target} {hi}");
    }

    #[test]
    fn admissible_random_sequences(a in matrix_strategy(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let alpha = SymbolGenerator::random(&a, 50, &mut rng);
        prop_assert!(alpha.is_admissible_prefix(&a, 200));
    }
}

#[test]
fn fibonacci_gap_is_the_finite_length_bias() {
    // F(66)^(1/64) overshoots phi by about (sqrt5 / phi^2)^(-1/64); the gap
    // decays only like 1/n, so length 64 cannot reach 1e-3
    let fib = validate_matrix(&[[1i64, 1], [1, 0]]).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let root = (big_ln(&fib.count_words(64)) / 64.0).exp();
    let predicted = phi * (phi * phi / 5f64.sqrt()).powf(1.0 / 64.0);
    assert!((root - predicted).abs() < 1e-12);
    assert!(root - phi > 3e-3);
    let root_1000 = (big_ln(&fib.count_words(1000)) / 1000.0).exp();
    assert!(root_1000 - phi < 1e-3);
}
