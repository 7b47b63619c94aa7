//! The recurrence coefficients in their factored, hand-typed form.
//!
//! Only used to cross-check the expanded table; evaluation here is slow but
//! mirrors the way the formulas are usually written.

use crate::numeric::{rat, ExactRational as Q};
use crate::zeta::ZFamily;

fn c(v: i64) -> Q {
    rat(v, 1)
}

/// Polynomial in `x` from coefficients listed highest degree first.
fn p(x: &Q, cs: &[i64]) -> Q {
    cs.iter().fold(c(0), |acc, &k| acc * x + c(k))
}

fn pw(x: &Q, k: u32) -> Q {
    num_traits::pow(x.clone(), k as usize)
}

/// `[P2, P1, P0]` at `(n, α)`.
pub fn coefficients(family: ZFamily, n: &Q, a: &Q) -> [Q; 3] {
    let one = c(1);
    let n1 = n + &one;
    let am1 = a - &one;
    match family {
        ZFamily::Z2Minus => {
            let p2 = pw(&n1, 2) * pw(&(&n1 - a), 2) * (c(5) * n * n - c(4) * a * n + a * a);
            let p1 = -(c(55) * pw(n, 6) - c(11) * p(a, &[14, -15]) * pw(n, 5)
                + p(a, &[179, -385, 180]) * pw(n, 4)
                - p(a, &[116, -358, 332, -85]) * pw(n, 3)
                + p(a, &[45, -174, 232, -113, 15]) * pw(n, 2)
                - a * &am1 * p(a, &[10, -35, 41, -12]) * n
                + a * a * &am1 * &am1 * p(a, &[1, -3, 3]));
            let p0 = -(n * n) * pw(&(n - a), 2) * (c(5) * &n1 * &n1 - c(4) * a * &n1 + a * a);
            [p2, p1, p0]
        }
        ZFamily::Z3 => {
            let p2 = pw(&n1, 3)
                * pw(&(&n1 - a), 3)
                * (c(2) * n - a)
                * (c(3) * n * n - c(3) * a * n + a * a);
            let inner = c(102) * pw(n, 8) - c(408) * &am1 * pw(n, 7)
                + c(2) * p(a, &[359, -714, 321]) * pw(n, 6)
                - c(6) * &am1 * p(a, &[121, -238, 83]) * pw(n, 5)
                + c(3) * p(a, &[152, -605, 811, -415, 64]) * pw(n, 4)
                - c(2) * &am1 * p(a, &[89, -367, 461, -177, 15]) * pw(n, 3)
                + a * p(a, &[40, -267, 634, -669, 304, -45]) * pw(n, 2)
                - a * a * &am1 * (c(2) * a - &one) * p(a, &[2, -17, 37, -25]) * n
                - pw(a, 3) * &am1 * &am1 * p(a, &[2, -6, 5]);
            let p1 = -(c(2) * n + &one - a) * inner;
            let p0 = pw(n, 3)
                * pw(&(n - a), 3)
                * (c(2) * &n1 - a)
                * (c(3) * &n1 * &n1 - c(3) * a * &n1 + a * a);
            [p2, p1, p0]
        }
        ZFamily::Z4 => {
            let p2 = pw(&n1, 5)
                * pw(&(&n1 - a), 3)
                * (&n1 - c(2) * a)
                * (c(39) * pw(n, 4) - c(65) * a * pw(n, 3) + c(45) * a * a * n * n
                    - c(15) * pw(a, 3) * n
                    + c(2) * pw(a, 4));
            let inner = c(10530) * pw(n, 13) - c(1755) * p(a, &[40, -39]) * pw(n, 12)
                + c(18) * p(a, &[11881, -23400, 10881]) * pw(n, 11)
                - c(9) * p(a, &[43964, -130691, 122499, -36036]) * pw(n, 10)
                + p(a, &[497482, -1978380, 2795153, -1651455, 343161]) * pw(n, 9)
                - p(a, &[449452, -2238669, 4229444, -3756546, 1559025, -241137]) * pw(n, 8)
                + c(2)
                    * p(a, &[149999, -898904, 2128142, -2523748, 1567577, -480285, 56394])
                    * pw(n, 7)
                - p(a, &[149336, -1049993, 2995163, -4449872, 3679649, -1676024, 385125, -33930])
                    * pw(n, 6)
                + p(
                    a,
                    &[55088, -448008, 1503025, -2693161, 2786514, -1681907, 568968, -96291, 5967],
                ) * pw(n, 5)
                - p(
                    a,
                    &[
                        14696, -137720, 536294, -1132580, 1413762, -1065166, 474344, -116539,
                        13455, -468,
                    ],
                ) * pw(n, 4)
                + a * &am1
                    * p(a, &[2692, -26700, 105832, -220076, 260191, -176174, 65540, -11955, 780])
                    * pw(n, 3)
                - a * a
                    * pw(&am1, 2)
                    * p(a, &[304, -3430, 14198, -29252, 32370, -18825, 5265, -540])
                    * pw(n, 2)
                + c(2) * pw(a, 3) * pw(&am1, 3) * p(a, &[8, -128, 581, -1198, 1220, -558, 90]) * n
                + c(4) * pw(a, 4) * pw(&am1, 4) * (a - c(2)) * (c(2) * a - &one) * p(a, &[1, -3, 3]);
            let p1 = -inner;
            let p0 = -pw(n, 3)
                * pw(&(n - a), 3)
                * (c(3) * n - c(2) * a)
                * (c(3) * n + &one - c(2) * a)
                * (c(3) * n - &one - c(2) * a)
                * (c(39) * pw(n, 4) - c(13) * p(a, &[5, -12]) * pw(n, 3)
                    + c(3) * p(a, &[15, -65, 78]) * pw(n, 2)
                    - c(3) * p(a, &[5, -30, 65, -52]) * n
                    + p(a, &[2, -15, 45, -65, 39]));
            [p2, p1, p0]
        }
        ZFamily::Z1Minus => {
            let p2 = &n1 * (&n1 - a) * (c(2) * n - a);
            let p1 = -(c(2) * n + &one - a)
                * (c(6) * n * n - c(6) * &am1 * n + a * (c(2) * a - c(3)));
            let p0 = n * (n - a) * (c(2) * &n1 - a);
            [p2, p1, p0]
        }
        ZFamily::Z2 => {
            let p2 = pw(&n1, 2) * pw(&(&n1 - a), 2) * (c(5) * n * n - c(6) * a * n + c(2) * a * a);
            let p1 = -(c(55) * pw(n, 6) - c(11) * p(a, &[16, -15]) * pw(n, 5)
                + c(2) * p(a, &[117, -220, 90]) * pw(n, 4)
                - p(a, &[160, -468, 388, -85]) * pw(n, 3)
                + p(a, &[56, -240, 316, -142, 15]) * pw(n, 2)
                - c(2) * a * &am1 * p(a, &[4, -24, 32, -9]) * n
                - c(2) * a * a * &am1 * &am1 * (c(2) * a - c(3)));
            let p0 = -(n * n)
                * pw(&(n - a), 2)
                * (c(5) * &n1 * &n1 - c(6) * a * &n1 + c(2) * a * a);
            [p2, p1, p0]
        }
    }
}

/// `(u1, v1)` exactly as usually printed alongside each recurrence, with
/// `u0 = 1`, `v0 = 0`.
pub fn printed_initial(family: ZFamily, a: &Q) -> (Q, Q) {
    let one = c(1);
    let am1 = a - &one;
    match family {
        ZFamily::Z2Minus => (p(a, &[1, -3, 3]), p(a, &[1, -4, 5]) / pw(&am1, 2)),
        ZFamily::Z3 => (p(a, &[2, -6, 5]), p(a, &[1, -3, 3]) * (a - c(2)) / pw(&am1, 3)),
        ZFamily::Z4 => (
            &am1 * (a - c(2)) * p(a, &[1, -3, 3]),
            -p(a, &[2, -15, 45, -65, 39]) / pw(&am1, 3),
        ),
        ZFamily::Z1Minus => (p(a, &[-2, 3]), (a - c(2)) / &am1),
        ZFamily::Z2 => (p(a, &[-2, 3]), p(a, &[2, -6, 5]) / pw(&am1, 2)),
    }
}
