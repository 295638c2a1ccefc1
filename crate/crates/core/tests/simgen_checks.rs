use proptest::prelude::*;
use rand::Rng;
use subscreen::numerics::Matrix;
use subscreen::simgen::{
    child_stream, gen_equicorrelated_design, gen_response, kronecker_design, sylvester_hadamard,
    StreamTag, TrueModel,
};

fn sample_correlation(x: &Matrix, a: usize, b: usize) -> f64 {
    let n = x.rows() as f64;
    let (ca, cb) = (x.column(a), x.column(b));
    let ma = ca.iter().sum::<f64>() / n;
    let mb = cb.iter().sum::<f64>() / n;
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (u, v) in ca.iter().zip(&cb) {
        sab += (u - ma) * (v - mb);
        saa += (u - ma) * (u - ma);
        sbb += (v - mb) * (v - mb);
    }
    sab / (saa * sbb).sqrt()
}

#[test]
fn equicorrelated_sample_correlations() {
    let mut rng = child_stream(2024, 0, StreamTag::Design);
    let x = gen_equicorrelated_design(10_000, 5, 0.5, &mut rng).unwrap();
    for a in 0..5 {
        let var = x.column(a).iter().map(|v| v * v).sum::<f64>() / 10_000.0;
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
        for b in a + 1..5 {
            let r = sample_correlation(&x, a, b);
            assert!((r - 0.5).abs() < 0.05, "corr({a},{b}) = {r}");
        }
    }
}

#[test]
fn pure_noise_variance() {
    let x = Matrix::from_fn(10_000, 2, |i, j| (i + j) as f64);
    let truth = TrueModel::leading(2, 0, 0.0, 1.7);
    let y = gen_response(&x, &truth, &mut child_stream(5, 3, StreamTag::Noise)).unwrap();
    let mean = y.iter().sum::<f64>() / 10_000.0;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 9_999.0;
    assert!((var / (1.7 * 1.7) - 1.0).abs() < 0.1, "variance {var}");
}

#[test]
fn distinct_tags_and_reps_give_distinct_streams() {
    let draw = |rep, tag| {
        let mut r = child_stream(77, rep, tag);
        (0..4).map(|_| r.random::<u64>()).collect::<Vec<_>>()
    };
    let mut seen = vec![
        draw(0, StreamTag::Design),
        draw(0, StreamTag::Noise),
        draw(1, StreamTag::Design),
        draw(1, StreamTag::Noise),
        draw(0, StreamTag::Auxiliary(0)),
        draw(0, StreamTag::Auxiliary(255)),
        draw(1, StreamTag::Auxiliary(255)),
    ];
    let total = seen.len();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), total);
    assert_eq!(draw(3, StreamTag::Noise), draw(3, StreamTag::Noise));
}

#[test]
fn hadamard_rows_are_orthogonal() {
    for m in [1, 2, 4, 8, 16, 32] {
        let h = sylvester_hadamard(m).unwrap();
        let hht = h.matmul(&h.transpose()).unwrap();
        assert_eq!(
            hht,
            Matrix::from_fn(m, m, |i, j| if i == j { m as f64 } else { 0.0 })
        );
    }
}

proptest! {
    #[test]
    fn kronecker_entry_identity(
        order in 0u32..4,
        n0 in 1usize..5,
        p0 in 1usize..6,
        entries in proptest::collection::vec(prop_oneof![Just(1.0), Just(-1.0), -2.0f64..2.0], 30),
    ) {
        let m = 1usize << order;
        let h = sylvester_hadamard(m).unwrap();
        let d = Matrix::from_fn(n0, p0, |r, s| entries[r * p0 + s]);
        let k = kronecker_design(&h, &d).unwrap();
        prop_assert_eq!((k.matrix.rows(), k.matrix.cols()), (m * n0, m * p0));
        for i in 0..m {
            for j in 0..m {
                for r in 0..n0 {
                    for s in 0..p0 {
                        prop_assert_eq!(k.matrix.get(i * n0 + r, j * p0 + s), h.get(i, j) * d.get(r, s));
                    }
                }
            }
        }
        let odd = d.as_slice().iter().filter(|&&v| v != 1.0 && v != -1.0).count();
        prop_assert_eq!(k.non_binary_entries, odd);
    }
}
