use crational::{gq_rat, q, qr, CPoly, GQ, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;
use weierstrass::*;

#[test]
fn k_zero_has_empty_tables() {
    let t = coefficient_tables(0, 4).unwrap();
    assert!(t.a.is_empty() && t.b.is_empty() && t.c.is_empty());
    assert!(t.rows().is_empty());
}

#[test]
fn leading_table_entries_for_m4() {
    let t = coefficient_tables(1, 4).unwrap();
    assert_eq!(t.a[0][0], q(25));
    assert_eq!(t.b[0][3 + 2], q(90));
}

#[test]
fn parameter_domain_is_enforced() {
    assert_eq!(
        coefficient_tables(1, 3),
        Err(WeierstrassError::ParameterDomain { k: 1, m: 3 })
    );
    assert!(matches!(
        generate(2, 6, 0),
        Err(WeierstrassError::ParameterDomain { .. })
    ));
}

#[test]
fn falling_factorial_values() {
    assert_eq!(falling(5, 0), Q::one());
    assert_eq!(falling(5, 2), q(20));
    assert_eq!(falling(1, 2), Q::zero());
}

#[test]
fn k_zero_conformal_relations() {
    for m in 1..8 {
        let t = solve_tau(0, m, Some(q(3)), 0).unwrap();
        assert_eq!(t.tau[1], qr(-3, 2));
        assert_eq!(t.tau[2], -qr(m as i64 + 1, m as i64) * q(3));
    }
    let t = solve_tau(0, 4, None, 0).unwrap();
    assert_eq!(t.tau, vec![q(8), q(-4), q(-10)]);
}

#[test]
fn closed_form_lambda_targets_for_m4() {
    let t = solve_tau(0, 4, Some(q(8)), 0).unwrap();
    let target = target_lambdas(&t);
    let (n, l) = (9, 5);
    assert_eq!(target.get(l, l), gq_rat(q(8)));
    assert_eq!(target.get(0, 2 * l), gq_rat(q(-4)));
    assert_eq!(target.get(n, 2 * l), gq_rat(q(-10)));
    assert_eq!(target.get(2 * l, 2 * n), gq_rat(qr(-25, 4)));
    // −(m+1)²/(2m²)·τ₀
    assert_eq!(target.get(2 * n, 2 * l), gq_rat(qr(-25, 32) * q(8)));
}

#[test]
fn tau_satisfies_every_row_exactly() {
    for (k, m) in [(1, 4), (1, 6), (2, 7)] {
        let t = solve_tau(k, m, None, 11).unwrap();
        let rows = coefficient_tables(k, m).unwrap().rows();
        assert_eq!(rows.len(), 3 * k);
        for r in &rows {
            let v = r
                .iter()
                .zip(&t.tau)
                .fold(Q::zero(), |acc, (a, b)| acc + a * b);
            assert!(v.is_zero(), "row residual {v} for k={k} m={m}");
        }
        assert_eq!(t.tau[0], q(2 * m as i64));
        assert!(t.nullity >= 1);
    }
}

/// Coefficient of `z^e` in `⟨P^{(r)}, P^{(r)}⟩`.
fn derived_pairing_coeff(w: &WeierstrassData, r: usize, e: usize) -> GQ {
    let mut d: Vec<CPoly> = w.numerators.clone();
    for _ in 0..r {
        d = d.iter().map(CPoly::derivative).collect();
    }
    d.iter()
        .fold(CPoly::zero(), |acc, p| &acc + &(p * p))
        .coeff(e)
}

fn arbitrary_tau(k: usize, m: usize, base: &[i64]) -> TauVector {
    let (mi, s) = (m as i64, 3 * k);
    let mut tau: Vec<Q> = base.iter().map(|&x| q(x)).collect();
    let mut t1 = -tau[0].clone() / q(2);
    let mut t2 = -qr(mi + 1, mi) * tau[0].clone();
    for j in 1..=s as i64 {
        let tj = tau[j as usize].clone();
        t1 -= tj.clone();
        t2 -= (qr(mi - j + 1, mi + j) + qr(mi + j + 1, mi - j)) * tj;
    }
    tau.push(t1);
    tau.push(t2);
    TauVector {
        k,
        m,
        tau,
        nullity: 0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The tabulated rows agree with `⟨P^{(r)},P^{(r)}⟩` computed from the
    /// assembled polynomial, for τ that need not satisfy them.
    #[test]
    fn rows_match_polynomial_identity(base in prop::collection::vec(1i64..20, 4), m in 4usize..7) {
        let (k, s) = (1, 3);
        let tau = arbitrary_tau(k, m, &base[..=s]);
        let w = match assemble_vectors(&tau, None) {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        let f = gq_rat(w.provenance.lambda_scale.clone().unwrap());
        let rows = coefficient_tables(k, m).unwrap().rows();
        let (n, l) = (2 * m + 1, m + 1);
        let dot = |row: &Vec<Q>| gq_rat(row.iter().zip(&tau.tau).fold(Q::zero(), |acc, (a, b)| acc + a * b));
        let r = 1;
        prop_assert_eq!(derived_pairing_coeff(&w, r, 2 * l - 2 * r), &f * dot(&rows[0]));
        prop_assert_eq!(derived_pairing_coeff(&w, r, n + 2 * l - 2 * r), &f * dot(&rows[1]) * gq_rat(q(2)));
        prop_assert_eq!(derived_pairing_coeff(&w, r, 2 * n + 2 * l - 2 * r), &f * dot(&rows[2]));
    }

    #[test]
    fn generated_data_is_exactly_conformal_and_k_isotropic(m in 4usize..7, seed in 0u64..1000) {
        let w = generate(1, m, seed).unwrap();
        prop_assert!(verify_conformal(&w).pass);
        prop_assert_eq!(isotropy_order(&w).unwrap(), IsotropyOrder::Finite(1));
    }
}
