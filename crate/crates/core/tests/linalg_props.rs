use num_bigint::BigInt;
use proptest::prelude::*;

use tsgreen::field::FieldSpec;
use tsgreen::linalg::{ff_solve, hnf, lattice_contains, lattice_equals_full, snf, FFMatrix, Fe, GaloisField, IntMatrix};

const FIELDS: [&str; 7] = ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(8)", "GF(9)", "GF(16)"];

fn gf(i: usize) -> std::sync::Arc<GaloisField> {
    GaloisField::new(&FieldSpec::parse(FIELDS[i]).unwrap())
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
}

proptest! {
    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let f = gf(i);
        let q = f.order();
        let (a, b, c) = ((a as usize % q) as Fe, (b as usize % q) as Fe, (c as usize % q) as Fe);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
        }
        prop_assert_eq!(f.pth_root(f.frobenius(a)), a);
    }

    #[test]
    fn ff_solve_by_substitution(i in 0..FIELDS.len(), r in 1usize..7, c in 1usize..7, seed in proptest::collection::vec(any::<u8>(), 64)) {
        let f = gf(i);
        let q = f.order();
        let mut it = seed.iter().cycle().map(|&x| (x as usize % q) as Fe);
        let a = FFMatrix::from_data(&f, r, c, (0..r * c).map(|_| it.next().unwrap()).collect());
        let x0 = FFMatrix::from_data(&f, c, 2, (0..c * 2).map(|_| it.next().unwrap()).collect());
        let b = a.mul(&x0);
        let sol = ff_solve(&a, &b).unwrap();
        let x = sol.particular.expect("consistent by construction");
        prop_assert_eq!(a.mul(&x), b);
        prop_assert_eq!(sol.kernel.len() + a.rank(), c);
        for v in &sol.kernel {
            prop_assert!(a.mul_vec(v).iter().all(|&e| e == 0));
        }
        if let Some(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).is_identity());
        }
    }

    #[test]
    fn hnf_and_snf_round_trip(rows in 1usize..5, cols in 1usize..6, data in int_matrix(4, 5)) {
        let data: Vec<Vec<i64>> = data[..rows].iter().map(|r| r[..cols].to_vec()).collect();
        let m = IntMatrix::from_rows(&data);
        let h = hnf(&m);
        prop_assert_eq!(m.mul(&h.u), h.h.clone());
        let s = snf(&m);
        prop_assert_eq!(s.p.mul(&m).mul(&s.q), s.d.clone());
        prop_assert_eq!(s.p_inv.mul(&s.d).mul(&s.q_inv), m.clone());
        prop_assert_eq!(s.rank(), h.rank());
        for w in s.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        // HNF is canonical: a unimodular column change leaves it unchanged
        if cols >= 2 {
            let mut shuffled = data.clone();
            for row in &mut shuffled {
                row[0] += 2 * row[1];
                row.swap(0, cols - 1);
            }
            prop_assert_eq!(hnf(&IntMatrix::from_rows(&shuffled)).h, h.h);
        }
    }

    #[test]
    fn combinations_are_members(data in int_matrix(3, 5), c in proptest::collection::vec(-6i64..=6, 5)) {
        let m = IntMatrix::from_rows(&data);
        let v: Vec<BigInt> = (0..3).map(|i| BigInt::from((0..5).map(|j| data[i][j] * c[j]).sum::<i64>())).collect();
        prop_assert!(lattice_contains(&m, &v));
        let x = hnf(&m).express(&v).unwrap();
        prop_assert_eq!(m.mul_vec(&x), v);
    }

    #[test]
    fn full_lattice_contains_everything(data in int_matrix(3, 5), v in proptest::collection::vec(-9i64..=9, 3)) {
        let m = IntMatrix::from_rows(&data);
        if lattice_equals_full(&m, 3) {
            let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            prop_assert!(lattice_contains(&m, &v));
        }
    }
}

#[test]
fn small_lattice_examples() {
    let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
    assert!(lattice_contains(&m, &[BigInt::from(1), BigInt::from(0)]));
    assert!(!lattice_contains(&m, &[BigInt::from(0), BigInt::from(1)]));
    assert!(!lattice_equals_full(&m, 2));
    assert!(lattice_equals_full(&IntMatrix::identity(3), 3));
}
