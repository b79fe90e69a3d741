//! Machine-readable forms of certificates and grid-scan rows.

use serde::{Deserialize, Serialize};

use super::certify::{solve, EinsteinCertificate, Verdict};
use super::elimination::eliminate_to_h1;
use super::system::build_system;
use super::{AnsatzParams, PipelineError};
use crate::interval::RatInterval;
use crate::poly::IsolatedRootJson;
use crate::rational::{decimal, dyadic_ceil, dyadic_floor, hex_float, Rational};

/// The fixed header of `scan` output. The `k` column is repeated.
pub const CSV_HEADER: &str = "k1,k,k,p,root_count,x23,x2,x1,lambda,verdict";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    /// `"num/den"` or `"num"`.
    pub lo: String,
    pub hi: String,
}

impl From<&RatInterval> for IntervalJson {
    fn from(v: &RatInterval) -> Self {
        IntervalJson {
            lo: v.lo().to_string(),
            hi: v.hi().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub interval: IntervalJson,
    /// Midpoint rounded down to a multiple of `2^-bits`, exact.
    pub hex: String,
    pub decimal: String,
}

fn value_json(v: &RatInterval, bits: u32) -> ValueJson {
    let m = dyadic_floor(&v.midpoint(), bits);
    ValueJson {
        interval: v.into(),
        hex: hex_float(&m).expect("dyadic"),
        decimal: decimal(&v.midpoint(), 12),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub k1: usize,
    pub k: usize,
    pub p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualJson {
    /// Upper bound rounded up to a multiple of `2^-(2 bits)`, exact.
    pub hex: String,
    pub decimal: String,
    pub tolerance_hex: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub parameters: ParamsJson,
    pub source: String,
    /// Ascending: entry `i` is the coefficient of `x23^i` in `H1`.
    pub h1_coefficients: Vec<String>,
    pub bits: u32,
    pub root: RootJson,
    pub x1: ValueJson,
    pub x2: ValueJson,
    pub x12: ValueJson,
    pub x23: ValueJson,
    pub lambda: ValueJson,
    pub residual_bound: ResidualJson,
    pub positivity: PositivityJson,
    pub verdict: String,
    pub verdict_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    pub label: String,
    pub lo: String,
    pub hi: String,
    pub sign_lo: i8,
    pub sign_hi: i8,
    pub multiplicity: u32,
}

impl From<IsolatedRootJson> for RootJson {
    fn from(r: IsolatedRootJson) -> Self {
        let s = |v: crate::rational::RationalJson| {
            if v.den == "1" {
                v.num
            } else {
                format!("{}/{}", v.num, v.den)
            }
        };
        RootJson {
            label: r.label,
            lo: s(r.lo),
            hi: s(r.hi),
            sign_lo: r.sign_lo,
            sign_hi: r.sign_hi,
            multiplicity: r.multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityJson {
    pub x1: bool,
    pub x2: bool,
    pub x23: bool,
    pub x1_quadratic: bool,
}

fn residual_hex(r: &Rational, bits: u32) -> String {
    hex_float(&dyadic_ceil(r, 2 * bits)).expect("dyadic")
}

pub fn certificate_json(cert: &EinsteinCertificate, h1: &crate::poly::UniPoly) -> CertificateJson {
    let b = cert.bits;
    let reason = match cert.verdict {
        Verdict::NaturallyReductive(r) => Some(format!("{r:?}")),
        _ => None,
    };
    CertificateJson {
        parameters: ParamsJson {
            k1: cert.params.k1,
            k: cert.params.k,
            p: cert.params.p,
        },
        source: cert.source.clone(),
        h1_coefficients: h1.coeffs().iter().map(|c| c.to_string()).collect(),
        bits: b,
        root: cert.root.to_json().into(),
        x1: value_json(&cert.x1, b),
        x2: value_json(&cert.x2, b),
        x12: value_json(&cert.x12, b),
        x23: value_json(&cert.x23, b),
        lambda: value_json(&cert.lambda, b),
        residual_bound: ResidualJson {
            hex: residual_hex(&cert.residual_bound, b),
            decimal: decimal(&cert.residual_bound, 6),
            tolerance_hex: hex_float(&cert.tolerance).expect("power of two"),
        },
        positivity: PositivityJson {
            x1: cert.positivity.x1,
            x2: cert.positivity.x2,
            x23: cert.positivity.x23,
            x1_quadratic: cert.positivity.x1_quadratic,
        },
        verdict: cert.verdict.label().to_string(),
        verdict_reason: reason,
    }
}

/// One line of a grid scan; multi-root fields are joined with `;`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub params: AnsatzParams,
    pub root_count: usize,
    pub x23: Vec<String>,
    pub x2: Vec<String>,
    pub x1: Vec<String>,
    pub lambda: Vec<String>,
    pub verdict: Vec<String>,
    pub error: Option<String>,
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        let j = |v: &[String]| v.join(";");
        let verdict = match &self.error {
            Some(e) => format!("error: {e}"),
            None if self.root_count == 0 => "none".to_string(),
            None => j(&self.verdict),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.params.k1,
            self.params.k,
            self.params.k,
            self.params.p,
            self.root_count,
            j(&self.x23),
            j(&self.x2),
            j(&self.x1),
            j(&self.lambda),
            verdict.replace(',', ";")
        )
    }
}

/// Solves one grid cell; failures are recorded in the row, not raised.
pub fn scan_row(params: &AnsatzParams, bits: u32, sig: usize) -> ScanRow {
    let mut row = ScanRow {
        params: *params,
        root_count: 0,
        x23: vec![],
        x2: vec![],
        x1: vec![],
        lambda: vec![],
        verdict: vec![],
        error: None,
    };
    match solve(params, bits) {
        Ok(certs) => {
            row.root_count = certs.len();
            for c in &certs {
                row.x23.push(decimal(&c.x23.midpoint(), sig));
                row.x2.push(decimal(&c.x2.midpoint(), sig));
                row.x1.push(decimal(&c.x1.midpoint(), sig));
                row.lambda.push(decimal(&c.lambda.midpoint(), sig));
                row.verdict.push(c.verdict.label().to_string());
            }
        }
        Err(PipelineError::NoPositiveRoots(_)) => {}
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// `H1` for a parameter triple, for callers assembling JSON by hand.
pub fn h1_for(params: &AnsatzParams) -> Result<crate::poly::UniPoly, PipelineError> {
    Ok(eliminate_to_h1(&build_system(params))?.h1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_four_four_row_has_no_roots() {
        let row = scan_row(&AnsatzParams::new(3, 4, 4).unwrap(), 64, 12);
        assert_eq!(row.to_csv(), "3,4,4,4,0,,,,,none");
    }

    #[test]
    fn certificate_json_round_trips() {
        let p = AnsatzParams::new(4, 3, 3).unwrap();
        let certs = solve(&p, 64).unwrap();
        let h1 = h1_for(&p).unwrap();
        let j = certificate_json(&certs[0], &h1);
        let text = serde_json::to_string(&j).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(j.verdict, "non-naturally-reductive");
        assert_eq!(j.h1_coefficients.len(), 9);
        let lo: Rational = j.x23.interval.lo.parse().unwrap();
        assert!(certs[0].x23.contains(&lo));
    }
}
