use cohomotopy::linalg::{
    group_from_presentation, kernel_mod2, rank_mod2, smith_normal_form, solve_mod2, BitVector, DenseIntMatrix,
    Gf2Matrix, Int, SparseIntMatrix,
};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn dense(rows: &[Vec<i64>]) -> SparseIntMatrix {
    SparseIntMatrix::from_rows(rows)
}

/// Exact determinant by fraction-free elimination.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k×k minors.
fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

fn is_identity(m: &DenseIntMatrix) -> bool {
    m.is_identity()
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_matches_minor_gcds(rows in matrix_strategy()) {
        let m = dense(&rows);
        let snf = smith_normal_form(&m);
        let md = m.to_dense();
        prop_assert_eq!(&snf.u.mul(&md).mul(&snf.v), &snf.d);
        prop_assert!(is_identity(&snf.u.mul(&snf.u_inv)));
        prop_assert!(is_identity(&snf.v.mul(&snf.v_inv)));
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!(w[1].rem_euclid(&w[0]).is_zero());
        }
        let mut product: i128 = 1;
        let max_k = rows.len().min(rows[0].len());
        for k in 1..=max_k {
            let g = minor_gcd(&rows, k);
            if k <= d.len() {
                product *= d[k - 1].to_i64().unwrap() as i128;
                prop_assert_eq!(product, g, "k = {}", k);
            } else {
                prop_assert_eq!(g, 0, "rank exceeded at k = {}", k);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn presentation_ignores_permutations(rows in matrix_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (r, c) = (rows.len(), rows[0].len());
        let mut rp: Vec<usize> = (0..r).collect();
        let mut cp: Vec<usize> = (0..c).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let m = dense(&rows);
        let a = group_from_presentation(&m);
        let b = group_from_presentation(&m.permuted(&rp, &cp));
        prop_assert_eq!(a.isomorphism_type(), b.isomorphism_type());
    }

    #[test]
    fn mod2_rank_counts_odd_invariant_factors(rows in matrix_strategy()) {
        let bits: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&v| (v.rem_euclid(2)) as u8).collect()).collect();
        let snf = smith_normal_form(&dense(&rows));
        let odd = snf.invariant_factors().iter().filter(|d| !d.is_even()).count();
        prop_assert_eq!(rank_mod2(&Gf2Matrix::from_u8_rows(&bits)), odd);
    }

    #[test]
    fn mod2_solutions_satisfy_the_system(rows in prop::collection::vec(prop::collection::vec(0u8..2, 6), 1..8), rhs in prop::collection::vec(any::<bool>(), 8)) {
        let m = Gf2Matrix::from_u8_rows(&rows);
        let b = BitVector::from_bools(&rhs[..rows.len()]);
        if let Some(x) = solve_mod2(&m, &b).unwrap() {
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        }
        for k in kernel_mod2(&m) {
            prop_assert!(m.mul_vec(&k).unwrap().is_zero());
        }
        prop_assert_eq!(kernel_mod2(&m).len() + rank_mod2(&m), 6);
    }
}

#[test]
fn identity_three_by_three() {
    let snf = smith_normal_form(&SparseIntMatrix::identity(3));
    assert_eq!(snf.invariant_factors(), ints(&[1, 1, 1]));
}

#[test]
fn two_by_two_example() {
    let snf = smith_normal_form(&dense(&[vec![2, 4], vec![6, 8]]));
    assert_eq!(snf.invariant_factors(), ints(&[2, 4]));
}

#[test]
fn zero_two_by_three() {
    let snf = smith_normal_form(&SparseIntMatrix::zeros(2, 3));
    assert!(snf.invariant_factors().is_empty());
    assert_eq!((snf.d.rows, snf.d.cols), (2, 3));
}

#[test]
fn entries_beyond_machine_words() {
    // diag(2^40, 2^40) has minor gcds 2^40 and 2^80.
    let big = 1i64 << 40;
    let m = dense(&[vec![big, 0], vec![0, big]]);
    let snf = smith_normal_form(&m);
    let d = snf.invariant_factors();
    assert_eq!(d[0], Int::from(big));
    assert_eq!(&d[0] * &d[1], &Int::from(big) * &Int::from(big));
    assert!(d[1].to_i64().is_some());
    assert_eq!(snf.u.mul(&m.to_dense()).mul(&snf.v), snf.d);
    // A product that only fits in a big integer.
    let prod = &(&Int::from(big) * &Int::from(big)) * &Int::from(big);
    assert!(prod.to_i64().is_none());
    assert_eq!(prod.div_exact(&Int::from(big)), &Int::from(big) * &Int::from(big));
}

#[test]
fn mod2_examples() {
    assert_eq!(rank_mod2(&Gf2Matrix::identity(4)), 4);
    let m = Gf2Matrix::from_u8_rows(&[vec![1, 1], vec![1, 1]]);
    assert_eq!(rank_mod2(&m), 1);
    assert_eq!(kernel_mod2(&m), vec![BitVector::from_bools(&[true, true])]);
    let row = Gf2Matrix::from_u8_rows(&[vec![1, 1]]);
    let x = solve_mod2(&row, &BitVector::from_bools(&[true])).unwrap().unwrap();
    // Brute force: the valid solutions are exactly (1,0) and (0,1).
    let valid: Vec<BitVector> = (0..4u8)
        .map(|v| BitVector::from_bools(&[v & 1 == 1, v & 2 == 2]))
        .filter(|v| row.mul_vec(v).unwrap().get(0))
        .collect();
    assert_eq!(valid.len(), 2);
    assert!(valid.contains(&x));
    assert!(solve_mod2(&row, &BitVector::from_bools(&[true, false])).is_err());
}

#[test]
fn presentation_examples() {
    assert_eq!(group_from_presentation(&SparseIntMatrix::zeros(0, 2)).isomorphism_type(), (2, vec![]));
    // Enumeration oracle for ⟨x, u | 2u, 4x − u⟩: the lattice has index |det| = 8
    // and x has order 8 (4x = u ≠ 0, 8x = 2u = 0).
    let rel = dense(&[vec![0, 2], vec![4, -1]]);
    assert_eq!(group_from_presentation(&rel).isomorphism_type(), (0, ints(&[8])));
    let rel = dense(&[vec![0, 2]]);
    assert_eq!(group_from_presentation(&rel).isomorphism_type(), (1, ints(&[2])));
}

#[test]
fn presentation_generators_live_in_the_original_basis() {
    // ℤ² / ⟨(2, 0), (0, 3)⟩ ≅ ℤ₆ generated by (1, 1) up to the relations.
    let rel = dense(&[vec![2, 0], vec![0, 3]]);
    let g = group_from_presentation(&rel);
    assert_eq!(g.isomorphism_type(), (0, ints(&[6])));
    let gen = &g.generators.as_ref().unwrap()[0];
    // Order of gen in ℤ₂ ⊕ ℤ₃ must be 6.
    let a = gen[0].rem_euclid(&Int::from(2));
    let b = gen[1].rem_euclid(&Int::from(3));
    assert!(!a.is_zero() && !b.is_zero());
}
