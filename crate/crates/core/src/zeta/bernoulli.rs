use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::numeric::ExactRational;

const CACHED: usize = 160;

/// `B_2, B_4, …, B_{2n}` from tangent numbers (integer-only recurrence).
fn compute_even_bernoulli(n: usize) -> Vec<ExactRational> {
    let mut t: Vec<BigInt> = Vec::with_capacity(n + 1);
    t.push(BigInt::from(0));
    let mut fact = BigInt::from(1);
    for k in 1..=n {
        t.push(fact.clone());
        fact *= k;
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = (j - k) * &t[j - 1] + (j - k + 2) * &t[j];
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = BigInt::from(1) << (2 * k);
            let num = BigInt::from(2 * k) * &t[k];
            let den = &four_k * (&four_k - 1);
            let b = ExactRational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// `B_{2k}` for `k >= 1`.
pub fn bernoulli_even(k: usize) -> ExactRational {
    assert!(k >= 1, "bernoulli_even index starts at 1");
    static TABLE: OnceLock<Vec<ExactRational>> = OnceLock::new();
    if k <= CACHED {
        return TABLE.get_or_init(|| compute_even_bernoulli(CACHED))[k - 1].clone();
    }
    compute_even_bernoulli(k).pop().expect("nonempty")
}
