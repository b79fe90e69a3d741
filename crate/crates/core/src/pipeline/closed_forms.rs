//! Closed-form values of `H1` and `G1` at the sign-test points, and the
//! exact sign report built from the eliminated polynomial itself.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::elimination::eliminate_to_h1;
use super::system::build_system;
use super::AnsatzParams;
use crate::rational::{int, rat, sign_of, Rational, RationalJson};

fn ints(params: &AnsatzParams) -> (Rational, Rational, Rational) {
    let (k1, k, p) = params.as_i64();
    (int(k1), int(k), int(p))
}

/// `k^2 p^2 + k^2 p - 2k^2 - 6kp + 4k + 4`, recurring in every value.
fn quartic(k: &Rational, p: &Rational) -> Rational {
    k * k * p * p + k * k * p - int(2) * k * k - int(6) * k * p + int(4) * k + int(4)
}

/// `H1(0)` as usually printed:
/// `2 (k^2 (p-1)(p+2) + k(3p-2) + 1)^2 (2k(p-1) + 2k1 + 1)`.
/// This disagrees with the constant term of the eliminated `H1`.
pub fn printed_h1_at_zero(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    let one = int(1);
    let a = &k * &k * (&p - &one) * (&p + int(2)) + &k * (int(3) * &p - int(2)) + &one;
    int(2) * &a * &a * (int(2) * &k * (&p - &one) + int(2) * &k1 + one)
}

/// `H1(0) = (kp - k + k1 - 1)(k^2 p^2 + k^2 p - 2k^2 - 6kp + 4k + 4)^2`.
pub fn derived_h1_at_zero(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    let q = quartic(&k, &p);
    (&k * &p - &k + &k1 - int(1)) * &q * &q
}

/// `H1(1) = (k-1)(k-k1)(kp-k+k1-1)(kp-k+k1)^2`.
pub fn h1_at_one(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    let s = &k * &p - &k + &k1;
    (&k - int(1)) * (&k - &k1) * (&s - int(1)) * &s * &s
}

/// `G1(1) = -2(k-2)(k-1)kp(k^2p^2 - 2kp - k + 2)`, meaningful for `k1 = k`.
pub fn g1_at_one(params: &AnsatzParams) -> Rational {
    let (_, k, p) = ints(params);
    int(-2)
        * (&k - int(2))
        * (&k - int(1))
        * &k
        * &p
        * (&k * &k * &p * &p - int(2) * &k * &p - &k + int(2))
}

/// `(power of (k1 - k), power of (k - 3), coefficients in (p - 3) ascending)`.
const H1_AT_TWO: &[(u32, u32, &[i64])] = &[
    (5, 0, &[64]),
    (4, 1, &[416, 96]),
    (4, 0, &[1184, 288]),
    (3, 2, &[1092, 568, 52]),
    (3, 1, &[6408, 3264, 312]),
    (3, 0, &[9284, 4680, 468]),
    (2, 3, &[1476, 1268, 268, 28]),
    (2, 2, &[13340, 11068, 2460, 252]),
    (2, 1, &[40012, 32428, 7524, 756]),
    (2, 0, &[39924, 31908, 7668, 756]),
    (1, 4, &[1040, 1292, 477, 106, 9]),
    (1, 3, &[12872, 15468, 5968, 1304, 108]),
    (1, 2, &[59840, 70164, 28010, 6012, 486]),
    (1, 1, &[123880, 142804, 58440, 12312, 972]),
    (1, 0, &[96416, 109920, 45729, 9450, 729]),
    (0, 5, &[312, 524, 299, 103, 17, 1]),
    (0, 4, &[4964, 8092, 4740, 1599, 258, 15]),
    (0, 3, &[31712, 50420, 30030, 9918, 1566, 90]),
    (0, 2, &[101508, 158164, 95028, 30726, 4752, 270]),
    (0, 1, &[162656, 249376, 150183, 47547, 7209, 405]),
    (0, 0, &[104336, 157872, 94824, 29403, 4374, 243]),
];

fn powr(x: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * x)
}

/// `H1(2)` from its expansion in `k1 - k`, `k - 3`, `p - 3`; every
/// coefficient is positive, so `H1(2) > 0` for `k1 >= k >= 3`, `p >= 3`.
pub fn h1_at_two(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    let (u, s, t) = (&k1 - &k, &k - int(3), &p - int(3));
    H1_AT_TWO.iter().fold(Rational::zero(), |acc, (j, i, cs)| {
        let poly_t = cs
            .iter()
            .rev()
            .fold(Rational::zero(), |a, c| a * &t + int(*c));
        acc + powr(&u, *j) * powr(&s, *i) * poly_t
    })
}

/// `(j, power of (p - 3), coefficients in (k - 3) from the highest power
/// down)` for the polynomials `p_j(k, p)` of the `H1(2/3)` expansion.
const P_J: &[(u32, u32, &[i64])] = &[
    (
        0,
        5,
        &[
            8477931, 127168965, 763013790, 2289041370, 3433562055, 2060137233,
        ],
    ),
    (
        0,
        4,
        &[
            105475930,
            1609348993,
            9819354216,
            29947843422,
            45656436294,
            27834664473,
        ],
    ),
    (
        0,
        3,
        &[
            515065215,
            8036819231,
            50080603950,
            155804805126,
            242027588979,
            150194316987,
        ],
    ),
    (
        0,
        2,
        &[
            1225798700,
            19719309159,
            126263852928,
            402496759170,
            639093441636,
            404538563655,
        ],
    ),
    (
        0,
        1,
        &[
            1406250300,
            23633211600,
            156904304004,
            515627980956,
            840207388320,
            543815227764,
        ],
    ),
    (
        0,
        0,
        &[
            609894432,
            10964539404,
            76557997800,
            261601463052,
            439706500272,
            291848917536,
        ],
    ),
    (1, 4, &[4056465, 48677580, 219049110, 438098220, 328573665]),
    (
        1,
        3,
        &[40943714, 500737232, 2295674532, 4676063040, 3570582762],
    ),
    (
        1,
        2,
        &[152710729, 1913265216, 8971418610, 18663109560, 14535152973],
    ),
    (
        1,
        1,
        &[248336188, 3210990756, 15479652636, 33001360668, 26268727464],
    ),
    (
        1,
        0,
        &[147552132, 1990966824, 9937811016, 21806079336, 17782338564],
    ),
    (2, 3, &[771308, 6941772, 20825316, 20825316]),
    (2, 2, &[5911096, 54414120, 166885128, 170527896]),
    (2, 1, &[14927996, 141302436, 444605220, 465149628]),
    (2, 0, &[12385712, 121422408, 393679584, 422648136]),
    (3, 2, &[72884, 437304, 655956]),
    (3, 1, &[376440, 2327872, 3595656]),
    (3, 0, &[481732, 3088712, 4925700]),
    (4, 1, &[3424, 10272]),
    (4, 0, &[8928, 28256]),
];

/// `p_j(k, p)` for `j = 0..4`.
pub fn p_j(j: u32, k: i64, p: i64) -> Rational {
    let (s, t) = (int(k - 3), int(p - 3));
    P_J.iter()
        .filter(|(jj, _, _)| *jj == j)
        .fold(Rational::zero(), |acc, (_, tp, cs)| {
            let poly_s = cs.iter().fold(Rational::zero(), |a, c| a * &s + int(*c));
            acc + powr(&t, *tp) * poly_s
        })
}

/// `H1(2/3) = (sum_j p_j(k,p) (k1 - 10kp)^j + 64 (k1 - 10kp)^5) / 3^8`.
pub fn h1_at_two_thirds_expansion(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = params.as_i64();
    let u = int(k1) - int(10 * k * p);
    let sum = (0..=4).fold(Rational::zero(), |acc, j| acc + p_j(j, k, p) * powr(&u, j))
        + int(64) * powr(&u, 5);
    sum / int(6561)
}

/// `rho = (k^2 p^2 + k^2 p - 2k^2 - 6kp + 4k + 4) / (k1 (kp - 2))`.
pub fn rho(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    quartic(&k, &p) / (&k1 * (&k * &p - int(2)))
}

/// `2/3 - rho` in the form that is visibly positive for `k1 >= 10kp`.
pub fn rho_window_display(params: &AnsatzParams) -> Rational {
    let (k1, k, p) = ints(params);
    let t = &p - int(3);
    let num = int(17) * &k * &k * &t * &t
        + (int(99) * &k * &k - int(22) * &k) * &t
        + (int(2) * &k * &p - int(4)) * (&k1 - int(10) * &k * &p)
        + int(150) * &k * &k
        - int(78) * &k
        - int(12);
    num / (int(3) * &k1 * (&k * &p - int(2)))
}

#[derive(Debug, Clone, Serialize)]
pub struct SignReport {
    pub params: AnsatzParams,
    /// `"H1"` or `"G1"`: the polynomial the root count refers to.
    pub target: String,
    pub h1_at_zero: RationalJson,
    pub h1_at_one: RationalJson,
    pub h1_at_two: RationalJson,
    pub h1_at_two_thirds: RationalJson,
    pub rho: RationalJson,
    pub h1_at_rho: RationalJson,
    pub g1_at_one: Option<RationalJson>,
    pub g1_at_two: Option<RationalJson>,
    /// Signs of the target polynomial at the sorted test points in `[0, 2]`.
    pub sign_points: Vec<(String, i8)>,
    /// Roots of the target in `(0, 2)` implied by the sign pattern.
    pub root_lower_bound: usize,
    /// For `k1 >= 10kp`: whether `0 < rho < 2/3` holds.
    pub rho_window: Option<bool>,
}

/// Exact evaluations of the eliminated polynomial at `0, rho, 2/3, 1, 2`.
pub fn sign_certificates(params: &AnsatzParams) -> SignReport {
    let e = eliminate_to_h1(&build_system(params)).expect("valid parameters eliminate");
    let h = &e.h1;
    let r = rho(params);
    let two_thirds = rat(2, 3);
    let (label, target) = e.target();
    let mut points: Vec<(String, Rational)> = vec![
        ("0".into(), int(0)),
        ("2/3".into(), two_thirds.clone()),
        ("1".into(), int(1)),
        ("2".into(), int(2)),
    ];
    if r.is_positive() && r < int(2) && r != two_thirds && r != int(1) {
        points.push(("rho".into(), r.clone()));
    }
    points.sort_by(|a, b| a.1.cmp(&b.1));
    let sign_points: Vec<(String, i8)> = points
        .iter()
        .map(|(name, x)| (name.clone(), sign_of(&target.eval(x))))
        .collect();
    let nonzero: Vec<i8> = sign_points
        .iter()
        .map(|(_, s)| *s)
        .filter(|s| *s != 0)
        .collect();
    let interior_zeros = sign_points
        .iter()
        .filter(|(n, s)| *s == 0 && n != "0" && n != "2")
        .count();
    let root_lower_bound = nonzero.windows(2).filter(|w| w[0] != w[1]).count() + interior_zeros;
    let (k1, k, p) = params.as_i64();
    let rho_window = (k1 >= 10 * k * p).then(|| r.is_positive() && r < two_thirds);
    let g = e.g1_cofactor.as_ref();
    SignReport {
        params: *params,
        target: label.to_string(),
        h1_at_zero: (&h.eval(&int(0))).into(),
        h1_at_one: (&h.eval(&int(1))).into(),
        h1_at_two: (&h.eval(&int(2))).into(),
        h1_at_two_thirds: (&h.eval(&two_thirds)).into(),
        h1_at_rho: (&h.eval(&r)).into(),
        rho: (&r).into(),
        g1_at_one: g.map(|g| (&g.eval(&int(1))).into()),
        g1_at_two: g.map(|g| (&g.eval(&int(2))).into()),
        sign_points,
        root_lower_bound,
        rho_window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k1: usize, k: usize, p: usize) -> AnsatzParams {
        AnsatzParams::new(k1, k, p).unwrap()
    }

    fn h1(pr: &AnsatzParams) -> crate::poly::UniPoly {
        eliminate_to_h1(&build_system(pr)).unwrap().h1
    }

    #[test]
    fn closed_forms_match_elimination() {
        for (k1, k, p) in [(4, 3, 3), (3, 4, 4), (7, 5, 4), (3, 3, 5)] {
            let pr = params(k1, k, p);
            let h = h1(&pr);
            assert_eq!(h.eval(&int(0)), derived_h1_at_zero(&pr));
            assert_eq!(h.eval(&int(1)), h1_at_one(&pr));
            assert_eq!(h.eval(&int(2)), h1_at_two(&pr));
            assert_eq!(h.eval(&rat(2, 3)), h1_at_two_thirds_expansion(&pr));
            assert_eq!(rho_window_display(&pr), rat(2, 3) - rho(&pr));
        }
    }

    #[test]
    fn printed_zero_value_disagrees() {
        let pr = params(3, 4, 4);
        assert_eq!(derived_h1_at_zero(&pr), int(629216));
        assert_ne!(printed_h1_at_zero(&pr), derived_h1_at_zero(&pr));
    }

    #[test]
    fn equal_blocks() {
        let pr = params(3, 3, 3);
        assert!(h1_at_one(&pr).is_zero());
        let e = eliminate_to_h1(&build_system(&pr)).unwrap();
        assert_eq!(e.g1_cofactor.unwrap().eval(&int(1)), g1_at_one(&pr));
    }

    #[test]
    fn sign_report_examples() {
        let r = sign_certificates(&params(4, 3, 3));
        assert!(r.root_lower_bound >= 2);
        let r = sign_certificates(&params(100, 3, 3));
        assert_eq!(r.rho_window, Some(true));
        assert!(r.root_lower_bound >= 4);
        assert_eq!(sign_certificates(&params(3, 4, 4)).root_lower_bound, 0);
    }

    #[test]
    fn p_j_positive_on_samples() {
        for k in 3..9 {
            for p in 3..7 {
                for j in 0..=4 {
                    assert!(p_j(j, k, p).is_positive());
                }
            }
        }
    }
}
