//! The multiplicity-reduction recursion and the certificate it produces.
//!
//! Every node pairs a polynomial with one hull segment `S`. Its residue
//! polynomial decides the branch: all roots simple gives a base-case leaf;
//! one repeated linear factor over a run of consecutive indices recentres in
//! place (case A); otherwise each repeated factor moves to an extension and
//! recentres there (case B). Children are the positive-slope segments of the
//! recentred polynomial.

mod report;
mod transform;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Fq, FqField, FqPoly};
use crate::localfield::{base_field, LocalField, LocalPolynomial};
use crate::newton::{critical_segments, SData, SlopeFilter};
use crate::respoly::{build_residue_poly, mult_profile, ResiduePolyData};

pub use report::render_report;
pub use transform::{case_a_applies, case_a_transform, case_b_transform, CaseAMeta, CaseBMeta};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_PRECISION: usize = 64;
pub const DEFAULT_MAX_PRECISION: usize = 1024;

#[derive(Clone, Debug)]
pub struct Config {
    /// Relative precision of the first attempt.
    pub precision: usize,
    /// Last rung of the doubling ladder.
    pub max_precision: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { precision: DEFAULT_PRECISION, max_precision: DEFAULT_MAX_PRECISION }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldDesc {
    pub p: u64,
    pub residue_degree: usize,
    pub ramification: u64,
    pub precision: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SDataDesc {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub mu: String,
    #[serde(rename = "eS")]
    pub e_s: u64,
    #[serde(rename = "cS")]
    pub c_s: String,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RespolyDesc {
    /// Coefficients from degree 0 up, each as its residue-field digit vector.
    pub coeffs: Vec<Vec<u64>>,
    pub exponents: Vec<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDesc {
    pub poly: Vec<Vec<u64>>,
    pub text: String,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BranchClass {
    BaseCaseLeaf,
    CaseA {
        r: usize,
        beta: Vec<u64>,
    },
    /// Lists every factor with multiplicity at least two; children carry the
    /// factor they came from in `via`.
    CaseB {
        factors: Vec<FactorDesc>,
    },
    /// A transform ran but left no segment of positive slope.
    OvertOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateNode {
    pub field: FieldDesc,
    /// Per coefficient, `inf` or `val:leading digit`.
    pub poly_digest: Vec<String>,
    pub sdata: SDataDesc,
    pub respoly: RespolyDesc,
    pub factors: Vec<FactorDesc>,
    pub max_mult: usize,
    pub branch: BranchClass,
    /// Factor of the parent's residue polynomial this node refines, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub via: Option<FactorDesc>,
    pub overt_bound: u64,
    pub children: Vec<CertificateNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub schema_version: u32,
    pub p: u64,
    pub degree: usize,
    pub precision: usize,
    pub roots: Vec<CertificateNode>,
    pub total_bound: u64,
    pub covert_leaf_count: u64,
    pub depth: usize,
}

impl CertificateNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `(maxMult, phase)`; phase 0 marks a case A node.
    pub fn measure(&self) -> (usize, u8) {
        (self.max_mult, if matches!(self.branch, BranchClass::CaseA { .. }) { 0 } else { 1 })
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn walk<'a>(&'a self, out: &mut Vec<&'a CertificateNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

impl Certificate {
    pub fn nodes(&self) -> Vec<&CertificateNode> {
        let mut out = vec![];
        for r in &self.roots {
            r.walk(&mut out);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Copy with every precision field zeroed, for comparing runs that
    /// settled at different precisions.
    pub fn without_precision(&self) -> Certificate {
        fn strip(n: &mut CertificateNode) {
            n.field.precision = 0;
            n.children.iter_mut().for_each(strip);
        }
        let mut c = self.clone();
        c.precision = 0;
        c.roots.iter_mut().for_each(strip);
        c
    }
}

fn digits(field: &FqField, x: &Fq) -> Vec<u64> {
    let mut v = x.coeffs().to_vec();
    v.resize(field.degree(), 0);
    v
}

fn factor_desc(q: &FqPoly, mult: usize) -> FactorDesc {
    FactorDesc { poly: q.to_digit_vectors(), text: q.to_string(), mult }
}

fn field_desc(k: &LocalField) -> FieldDesc {
    FieldDesc {
        p: k.characteristic(),
        residue_degree: k.residue_degree(),
        ramification: k.e_abs(),
        precision: k.precision_cap(),
    }
}

fn poly_digest(f: &LocalPolynomial) -> Result<Vec<String>> {
    let k = f.field();
    let r = k.residue_field();
    f.coeffs()
        .iter()
        .map(|a| {
            Ok(match k.val(a)? {
                crate::localfield::Val::Infinite => "inf".to_string(),
                v => format!("{v}:{}", r.encode(&a.digits()[0])),
            })
        })
        .collect()
}

fn sdata_desc(sd: &SData) -> SDataDesc {
    SDataDesc {
        s: sd.s.clone(),
        mu: format!("{}/{}", sd.mu.numer(), sd.mu.denom()),
        e_s: sd.e_s,
        c_s: format!("PI^{}", sd.c_exp),
        d: sd.d,
    }
}

fn respoly_desc(rp: &ResiduePolyData) -> RespolyDesc {
    let field = rp.poly.field();
    RespolyDesc {
        coeffs: rp.poly.coeffs().iter().map(|c| digits(field, c)).collect(),
        exponents: rp.exponents.iter().map(|&(_, n)| n).collect(),
        text: rp.poly.to_string(),
    }
}

struct Walker {
    depth_cap: usize,
}

impl Walker {
    fn node(
        &self,
        field: &Arc<LocalField>,
        f: &LocalPolynomial,
        sd: &SData,
        depth: usize,
        parent: Option<(usize, u8)>,
        via: Option<FactorDesc>,
    ) -> Result<CertificateNode> {
        if depth > self.depth_cap {
            return Err(Error::DepthExceeded(self.depth_cap));
        }
        let rp = build_residue_poly(f, sd)?;
        let (max_mult, factors) = mult_profile(&rp);
        let n = f.deg() as u64;
        let mut children = vec![];
        let (mut branch, phase) = if max_mult == 1 {
            (BranchClass::BaseCaseLeaf, 1)
        } else if case_a_applies(sd, &rp) {
            let (g, meta) = case_a_transform(f, sd, &rp)?;
            let res = field.residue_field();
            let measure = (max_mult, 0);
            for sd1 in self.positive_segments(&g, meta.r)? {
                children.push(self.node(field, &g, &sd1, depth + 1, Some(measure), None)?);
            }
            (BranchClass::CaseA { r: meta.r, beta: digits(res, &meta.beta) }, 0)
        } else {
            let measure = (max_mult, 1);
            let repeated: Vec<_> = factors.iter().filter(|(_, m)| *m >= 2).collect();
            for (q, r_q) in &repeated {
                let (k2, g, _) = case_b_transform(field, f, sd, &rp, q, *r_q)?;
                for sd1 in self.positive_segments(&g, *r_q)? {
                    let tag = Some(factor_desc(q, *r_q));
                    children.push(self.node(&k2, &g, &sd1, depth + 1, Some(measure), tag)?);
                }
            }
            let factors = repeated.iter().map(|(q, m)| factor_desc(q, *m)).collect();
            (BranchClass::CaseB { factors }, 1)
        };
        if max_mult > 1 && children.is_empty() {
            branch = BranchClass::OvertOnly;
        }
        if let Some(pm) = parent {
            if (max_mult, phase) >= pm {
                return Err(Error::inconsistent(format!(
                    "measure ({max_mult}, {phase}) does not descend below {pm:?}"
                )));
            }
        }
        Ok(CertificateNode {
            field: field_desc(field),
            poly_digest: poly_digest(f)?,
            sdata: sdata_desc(sd),
            respoly: respoly_desc(&rp),
            factors: factors.iter().map(|(q, m)| factor_desc(q, *m)).collect(),
            max_mult,
            branch,
            via,
            overt_bound: n * n,
            children,
        })
    }

    fn positive_segments(&self, g: &LocalPolynomial, r: usize) -> Result<Vec<SData>> {
        let segs = match critical_segments(g, SlopeFilter::PositiveOnly) {
            Err(Error::EmptyHull) => vec![],
            other => other?,
        };
        if let Some(bad) = segs.iter().find(|s| *s.s.last().unwrap() > r) {
            return Err(Error::inconsistent(format!("segment {:?} reaches beyond index {r}", bad.s)));
        }
        Ok(segs)
    }
}

/// One analysis at the precision of `f`'s field, no retries.
pub fn analyze_once(f: &LocalPolynomial) -> Result<Certificate> {
    let field = f.field();
    let n = f.deg();
    let walker = Walker { depth_cap: 2 * n + 4 };
    let mut roots = vec![];
    for sd in critical_segments(f, SlopeFilter::All)? {
        roots.push(walker.node(field, f, &sd, 1, None, None)?);
    }
    let mut cert = Certificate {
        schema_version: SCHEMA_VERSION,
        p: field.characteristic(),
        degree: n,
        precision: field.precision_cap(),
        roots,
        total_bound: 0,
        covert_leaf_count: 0,
        depth: 0,
    };
    let nodes = cert.nodes();
    let total_bound = nodes.iter().map(|n| n.overt_bound).sum();
    let covert = nodes.iter().map(|n| n.factors.iter().filter(|f| f.mult == 1).count() as u64).sum();
    let depth = cert.roots.iter().map(|r| r.depth()).max().unwrap_or(0);
    (cert.total_bound, cert.covert_leaf_count, cert.depth) = (total_bound, covert, depth);
    Ok(cert)
}

/// Runs `job` on `F_p((s))` at doubling precisions until it finishes
/// without exhausting precision. Each rung starts from scratch.
pub fn with_precision_ladder<T, J>(p: u64, config: &Config, job: J) -> Result<T>
where
    J: Fn(&Arc<LocalField>) -> Result<T>,
{
    let mut cap = config.precision;
    loop {
        let field = base_field(p, cap)?;
        match job(&field) {
            Err(Error::PrecisionExhausted(msg)) => {
                if cap * 2 > config.max_precision {
                    return Err(Error::PrecisionExhausted(format!("{msg} (last precision {cap})")));
                }
                cap *= 2;
            }
            other => return other,
        }
    }
}

/// [`analyze_once`] behind the precision ladder; `build` produces the
/// polynomial from exact data at each rung.
pub fn analyze<B>(p: u64, build: B, config: &Config) -> Result<Certificate>
where
    B: Fn(&Arc<LocalField>) -> Result<LocalPolynomial>,
{
    with_precision_ladder(p, config, |field| analyze_once(&build(field)?))
}
