use std::cmp::Ordering;

/// Rank order used for every selection in the crate: larger magnitude
/// first, then smaller index.
#[inline]
fn rank_cmp(x: &[f64], a: usize, b: usize) -> Ordering {
    x[b].abs().total_cmp(&x[a].abs()).then(a.cmp(&b))
}

/// Indices of the `m` largest `|x_j|` in rank order, skipping any `j` with
/// `exclude[j]` set.
pub fn ranked_indices(x: &[f64], m: usize, exclude: Option<&[bool]>) -> Vec<usize> {
    let mut idx: Vec<usize> = match exclude {
        Some(mask) => (0..x.len()).filter(|&j| !mask[j]).collect(),
        None => (0..x.len()).collect(),
    };
    if m == 0 {
        return Vec::new();
    }
    if m < idx.len() {
        idx.select_nth_unstable_by(m - 1, |&a, &b| rank_cmp(x, a, b));
        idx.truncate(m);
    }
    idx.sort_unstable_by(|&a, &b| rank_cmp(x, a, b));
    idx
}

/// `S_M`: keeps the `m` largest-magnitude entries of `x` and zeroes the
/// rest. Ties are broken toward the smaller index.
pub fn hard_threshold(x: &[f64], m: usize) -> Vec<f64> {
    if m >= x.len() {
        return x.to_vec();
    }
    let mut out = vec![0.0; x.len()];
    for j in ranked_indices(x, m, None) {
        out[j] = x[j];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn keeps_largest() {
        assert_eq!(hard_threshold(&[3.0, -1.0, 2.0], 2), vec![3.0, 0.0, 2.0]);
    }

    #[test]
    fn identity_when_m_covers_everything() {
        let x = [0.5, -4.0, 0.0, 1.0];
        assert_eq!(hard_threshold(&x, 4), x.to_vec());
        assert_eq!(hard_threshold(&x, 10), x.to_vec());
    }

    #[test]
    fn ties_go_to_lower_index() {
        assert_eq!(hard_threshold(&[1.0, -1.0], 1), vec![1.0, 0.0]);
        assert_eq!(
            hard_threshold(&[-2.0, 1.0, 2.0, 1.0], 2),
            vec![-2.0, 0.0, 2.0, 0.0]
        );
        assert_eq!(
            ranked_indices(&[1.0, 3.0, 1.0, 3.0], 3, None),
            vec![1, 3, 0]
        );
    }

    #[test]
    fn zero_budget() {
        assert_eq!(hard_threshold(&[1.0, 2.0], 0), vec![0.0, 0.0]);
    }

    #[test]
    fn mask_is_respected() {
        let mask = [false, true, false];
        assert_eq!(ranked_indices(&[1.0, 9.0, 2.0], 2, Some(&mask)), vec![2, 0]);
    }

    proptest! {
        #[test]
        fn output_is_sparse_and_dominant(
            x in prop::collection::vec(-10.0f64..10.0, 1..40),
            m in 0usize..45,
        ) {
            let z = hard_threshold(&x, m);
            let kept: Vec<usize> = (0..x.len()).filter(|&j| z[j] != 0.0).collect();
            prop_assert!(kept.len() <= m);
            for (j, (&zj, &xj)) in z.iter().zip(&x).enumerate() {
                prop_assert!(zj == 0.0 || zj == xj, "entry {} changed", j);
            }
            if m < x.len() {
                // Every dropped entry is no larger than every kept one.
                let sel = ranked_indices(&x, m, None);
                let min_kept = sel.iter().map(|&j| x[j].abs()).fold(f64::INFINITY, f64::min);
                for j in 0..x.len() {
                    if !sel.contains(&j) {
                        prop_assert!(x[j].abs() <= min_kept);
                    }
                }
            }
        }
    }
}
