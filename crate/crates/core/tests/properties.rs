use kirby_core::front::random::random_front;
use kirby_core::front::{normalize, same_gap_cusps, swap_adjacent, FrontDiagram, Sign};
use kirby_core::invariants::{c_squared, d3_surg, delta};
use kirby_core::linalg::{rat, signature, Matrix, SymMatrix};
use kirby_core::mcg::{self, Dir, Letter, Rule, TwistWord};
use kirby_core::moves::{parse_descriptor, random_instance, MoveTag};
use kirby_core::surgery::{linking_data, parse_surg, reorient, serialize_surg, Decoration, LinkingData, SurgeryDiagram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn front(seed: u64, len: usize) -> FrontDiagram {
    random_front(&mut ChaCha8Rng::seed_from_u64(seed), len, 6)
}

fn diagram(seed: u64, len: usize, pattern: u32) -> SurgeryDiagram {
    let f = front(seed, len);
    let n = kirby_core::front::trace_components(&f).count();
    let bit = |i: usize, off: u32| (pattern >> ((i as u32 * 2 + off) % 32)) & 1 == 1;
    let coeffs = (0..n).map(|i| Decoration::Framed(if bit(i, 0) { Sign::Plus } else { Sign::Minus })).collect();
    let orient = (0..n).map(|i| if bit(i, 1) { Sign::Plus } else { Sign::Minus }).collect();
    SurgeryDiagram::new(f, coeffs, orient).unwrap()
}

fn small_sym() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            (0..n).map(|i| (0..n).map(|j| if i <= j { v[i * n + j] } else { v[j * n + i] }).collect()).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any sequence of commutations lands on the same normal form, as long as
    // no left cusp is passed across a right cusp in its own gap.
    #[test]
    fn normal_form_is_canonical(seed in 0u64..10_000, len in 2usize..30, swaps in prop::collection::vec(0usize..64, 0..40)) {
        let f = front(seed, len);
        let mut events = f.events().to_vec();
        for s in swaps {
            let i = s % (events.len() - 1);
            if same_gap_cusps(events[i], events[i + 1]) {
                continue;
            }
            if let Some((a, b)) = swap_adjacent(events[i], events[i + 1]) {
                events[i] = a;
                events[i + 1] = b;
            }
        }
        let g = FrontDiagram::new(events).unwrap();
        prop_assert_eq!(normalize(&f.as_word()), normalize(&g.as_word()));
        let nf = normalize(&f.as_word());
        prop_assert_eq!(normalize(&nf), nf);
    }

    #[test]
    fn surg_files_round_trip(seed in 0u64..10_000, len in 2usize..30, pattern in any::<u32>()) {
        let d = diagram(seed, len, pattern);
        let back = parse_surg(&serialize_surg(&d)).unwrap();
        prop_assert_eq!(back.front.events(), d.front.events());
        prop_assert_eq!(&back.coeffs, &d.coeffs);
        prop_assert_eq!(&back.orient, &d.orient);
    }

    // Reversing a component's orientation or relabelling components leaves
    // c², σ and hence d3 and δ alone.
    #[test]
    fn invariants_ignore_orientation_and_order(seed in 0u64..10_000, len in 2usize..24, pattern in any::<u32>(), flips in any::<u16>()) {
        let data = linking_data(&diagram(seed, len, pattern)).unwrap();
        let n = data.n();
        let signs: Vec<i64> = (0..n).map(|i| if flips >> (i % 16) & 1 == 1 { -1 } else { 1 }).collect();
        let other = reorient(&data, &signs).unwrap();
        prop_assert_eq!(d3_surg(&data), d3_surg(&other));
        let order: Vec<usize> = (0..n).rev().collect();
        let perm = data.permuted(&order);
        prop_assert_eq!(d3_surg(&data), d3_surg(&perm));
        prop_assert_eq!(delta(&data), delta(&perm));
    }

    // Reorienting a component in the diagram itself matches reorient().
    #[test]
    fn diagram_reorientation_matches_data(seed in 0u64..10_000, len in 2usize..24, pattern in any::<u32>(), c in 0usize..8) {
        let d = diagram(seed, len, pattern);
        let n = d.component_count();
        let c = c % n;
        let mut e = d.clone();
        e.orient[c] = e.orient[c].map(Sign::flip);
        let fr = d.framed();
        let signs: Vec<i64> = fr.iter().map(|&x| if x == c { -1 } else { 1 }).collect();
        prop_assert_eq!(linking_data(&e).unwrap(), reorient(&linking_data(&d).unwrap(), &signs).unwrap());
    }

    #[test]
    fn signature_is_a_congruence_invariant(q in small_sym(), ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..8)) {
        let n = q.len();
        let mut p = Matrix::identity(n);
        for (i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i != j {
                let mut e = Matrix::identity(n);
                e[(i, j)] = rat(k);
                p = p.mul(&e).unwrap();
            }
        }
        let s = SymMatrix::from_int_rows(&q).unwrap();
        prop_assert_eq!(signature(&s), signature(&s.congruence(&p).unwrap()));
        let neg: Vec<Vec<i64>> = q.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        prop_assert_eq!(signature(&SymMatrix::from_int_rows(&neg).unwrap()), -signature(&s));
    }

    #[test]
    fn c_squared_survives_direct_sums(q in small_sym(), seed in 0u64..1000) {
        // pair the matrix with a (-1)-unknot block
        let n = q.len();
        let r: Vec<i64> = (0..n).map(|i| q[i][i] + 2 * ((seed as i64 + i as i64) % 3 - 1)).collect();
        let Ok(data) = LinkingData::new(q.clone(), r.clone(), 0) else { return Ok(()) };
        let Ok(c2) = c_squared(&data) else { return Ok(()) };
        let mut q2 = q.clone();
        for row in &mut q2 {
            row.push(0);
        }
        let mut last = vec![0; n + 1];
        last[n] = -2;
        q2.push(last);
        let mut r2 = r;
        r2.push(0);
        let sum = LinkingData::new(q2, r2, 0).unwrap();
        prop_assert_eq!(c_squared(&sum).unwrap(), c2);
    }

    #[test]
    fn descriptors_print_and_parse_back(seed in 0u64..10_000, t in 0usize..6) {
        let tag = MoveTag::ALL[t];
        let (_, d) = random_instance(tag, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(parse_descriptor(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn inserting_and_cancelling_a_pair_is_identity(letters in prop::collection::vec((0usize..3, any::<bool>()), 0..8), at in 0usize..9, which in 0usize..3, pos in any::<bool>()) {
        let names = ["a", "b", "c"];
        let mut sys = mcg::CurveSystem::new(&names);
        sys.declare_disjoint("a", "c").unwrap();
        let letter = |(i, s): (usize, bool)| Letter { curve: names[i].to_string(), sign: if s { Sign::Plus } else { Sign::Minus } };
        let w = TwistWord(letters.into_iter().map(letter).collect());
        let at = at % (w.0.len() + 1);
        let first = letter((which, pos));
        let longer = mcg::rewrite(&sys, &w, &Rule::Cancel(first), at, Dir::Backward).unwrap();
        prop_assert_eq!(longer.0.len(), w.0.len() + 2);
        let first = longer.0[at].clone();
        prop_assert_eq!(mcg::rewrite(&sys, &longer, &Rule::Cancel(first), at, Dir::Forward).unwrap(), w.clone());
        prop_assert_eq!(w.to_string().parse::<TwistWord>().unwrap(), w);
    }
}
