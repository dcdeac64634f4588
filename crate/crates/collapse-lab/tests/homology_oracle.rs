//! Cross-check Betti numbers against ranks computed by Gaussian elimination
//! over a large prime field — a codepath sharing nothing with the Smith
//! normal form reduction. Over GF(p) the boundary ranks match the integer
//! ranks whenever p divides no torsion coefficient, and the graphs scanned
//! here have torsion-free clique complexes (asserted below).

use collapse_lab::complex::{boundary_matrix, clique_complex};
use collapse_lab::{enumerate_connected, homology};

const P: u64 = 1_000_003;

fn rank_mod_p(rows: usize, cols: usize, get: impl Fn(usize, usize) -> i64) -> usize {
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| (0..cols).map(|j| get(i, j).rem_euclid(P as i64) as u64).collect())
        .collect();
    let inv = |a: u64| {
        // Fermat inverse
        let mut base = a % P;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = inv(m[rank][col]);
        for j in col..cols {
            m[rank][j] = m[rank][j] * scale % P;
        }
        for i in 0..rows {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in col..cols {
                    m[i][j] = (m[i][j] + (P - f) * m[rank][j]) % P;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[test]
fn betti_numbers_match_prime_field_ranks() {
    for n in 1..=6 {
        for g in enumerate_connected(n).unwrap() {
            let profile = homology(&g).unwrap();
            assert!(
                profile.torsion.iter().all(Vec::is_empty),
                "unexpected torsion on {:?}",
                g.edges()
            );
            let c = clique_complex(&g).unwrap();
            let top = c.top_dim();
            let mut ranks = vec![0usize; top + 2];
            for d in 1..=top {
                let b = boundary_matrix(&c, d).unwrap();
                ranks[d] = rank_mod_p(b.rows(), b.cols(), |i, j| b.get(i, j));
            }
            for d in 0..=top {
                let expected = c.face_count(d) - ranks[d + 1] - if d == 0 { 1 } else { ranks[d] };
                assert_eq!(
                    profile.betti[d],
                    expected,
                    "betti_{d} mismatch on {:?}",
                    g.edges()
                );
            }
        }
    }
}
