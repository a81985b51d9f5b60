//! Predicted genus classes from local-factor data, and end-to-end
//! verification of those predictions against certified genus bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::genus::bounds::LowerCertificate;
use crate::genus::subdivision::{find_subdivision, pattern_graph, SubdivisionOptions};
use crate::genus::{genus_bounds, Budget, GenusBounds};
use crate::pis::PisInstance;
use crate::ring::Factor;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Rule whose hypothesis admits more than one lattice shape; a mismatch
/// under it is a finding rather than a failure.
pub const RULE_NILSQUARE: &str = "field times two-generated nilsquare maximal ideal";

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenusClass {
    Planar,
    One,
    Two,
    AtLeastThree,
}

impl GenusClass {
    pub const ALL: [GenusClass; 4] = [GenusClass::Planar, GenusClass::One, GenusClass::Two, GenusClass::AtLeastThree];

    pub fn of_genus(g: usize) -> Self {
        match g {
            0 => GenusClass::Planar,
            1 => GenusClass::One,
            2 => GenusClass::Two,
            _ => GenusClass::AtLeastThree,
        }
    }

    pub fn admits(self, genus: usize) -> bool {
        GenusClass::of_genus(genus) == self
    }
}

impl fmt::Display for GenusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenusClass::Planar => "Planar",
            GenusClass::One => "One",
            GenusClass::Two => "Two",
            GenusClass::AtLeastThree => "AtLeastThree",
        })
    }
}

impl FromStr for GenusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', ' '], "").as_str() {
            "planar" | "0" => Ok(GenusClass::Planar),
            "one" | "1" => Ok(GenusClass::One),
            "two" | "2" => Ok(GenusClass::Two),
            "atleastthree" | "3+" | ">=3" => Ok(GenusClass::AtLeastThree),
            _ => Err(Error::Manifest(format!("unknown genus class `{s}`"))),
        }
    }
}

/// What the classification rules need to know about one local factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorProfile {
    pub spec: String,
    pub is_field: bool,
    pub is_principal: bool,
    pub proper_nonzero_ideal_count: usize,
    /// Nilpotency index of the maximal ideal (1 for a field).
    pub eta_of_maximal: u32,
    /// The maximal ideal needs two generators and has a generating pair `x, y` with `x^2 = y^2 = 0`.
    pub two_generated_nilsquare: bool,
    /// `M^2 = 0`.
    pub maximal_square_zero: bool,
}

impl FactorProfile {
    /// Synthetic profile, for enumerations and property tests.
    pub fn synthetic(
        is_field: bool,
        is_principal: bool,
        count: usize,
        eta: u32,
        nilsquare: bool,
    ) -> Self {
        FactorProfile {
            spec: String::new(),
            is_field,
            is_principal,
            proper_nonzero_ideal_count: count,
            eta_of_maximal: eta,
            two_generated_nilsquare: nilsquare,
            maximal_square_zero: eta <= 2,
        }
    }

    pub fn field() -> Self {
        Self::synthetic(true, true, 0, 1, false)
    }

    /// A local principal ring whose maximal ideal has index `eta >= 2`.
    pub fn chain(eta: u32) -> Self {
        Self::synthetic(false, true, eta as usize - 1, eta, false)
    }
}

/// Profiles one local factor from its ideal lattice and multiplication.
pub fn profile_factor(f: &Factor) -> Result<FactorProfile> {
    let l = &f.lattice;
    let maxes = l.maximal_ideals();
    if maxes.len() != 1 {
        return Err(Error::NotLocal(0));
    }
    let m = maxes[0];
    let eta = l.nilpotency_index(m).ok_or(Error::NotLocal(0))?;
    let is_principal = l.is_principal_ring();
    let r = &f.ring;
    let members: Vec<usize> = l.ideal(m).elements().collect();
    let square_zero: Vec<usize> = members.iter().copied().filter(|&x| r.mul(x, x) == r.zero()).collect();
    let mut nilsquare = false;
    if !l.is_principal(m) {
        'outer: for (i, &x) in square_zero.iter().enumerate() {
            for &y in &square_zero[i..] {
                if l.ideal_sum(l.principal_of(x), l.principal_of(y)) == m {
                    nilsquare = true;
                    break 'outer;
                }
            }
        }
    }
    Ok(FactorProfile {
        spec: f.spec().to_string(),
        is_field: f.is_field(),
        is_principal,
        proper_nonzero_ideal_count: l.len() - 2,
        eta_of_maximal: eta,
        two_generated_nilsquare: nilsquare,
        maximal_square_zero: l.ideal_product(m, m) == l.zero(),
    })
}

pub fn profile_factors(factors: &[Factor]) -> Result<Vec<FactorProfile>> {
    factors
        .iter()
        .enumerate()
        .map(|(i, f)| profile_factor(f).map_err(|e| if matches!(e, Error::NotLocal(_)) { Error::NotLocal(i) } else { e }))
        .collect()
}

/// Fields last, then by nilpotency index and the remaining data.
pub fn canonical_order(profiles: &[FactorProfile]) -> Vec<FactorProfile> {
    let mut out = profiles.to_vec();
    out.sort_by_key(|p| {
        (
            p.is_field,
            p.eta_of_maximal,
            p.proper_nonzero_ideal_count,
            p.is_principal,
            p.two_generated_nilsquare,
        )
    });
    out
}

/// Every classification rule that holds, with its name.
pub fn rule_hits(profiles: &[FactorProfile]) -> Vec<(GenusClass, &'static str)> {
    let p = canonical_order(profiles);
    let n = p.len();
    let fields = p.iter().filter(|f| f.is_field).count();
    let nonfield: Vec<&FactorProfile> = p.iter().filter(|f| !f.is_field).collect();
    let count_is = |f: &FactorProfile, c: usize| f.proper_nonzero_ideal_count == c;
    let mut hits = Vec::new();

    if fields == n && (n == 2 || n == 3) {
        hits.push((GenusClass::Planar, "two or three fields"));
    }
    if n == 2 && fields == 1 && nonfield[0].is_principal {
        hits.push((GenusClass::Planar, "field times local principal ring"));
    }
    if n == 2 && p.iter().all(|f| count_is(f, 1)) {
        hits.push((GenusClass::Planar, "two factors with one proper ideal each"));
    }
    if n == 3 && fields == 2 && count_is(nonfield[0], 1) {
        hits.push((GenusClass::One, "one proper ideal times two fields"));
    }
    if n == 2
        && fields == 0
        && ((count_is(&p[0], 1) && count_is(&p[1], 2) && p[1].is_principal)
            || (count_is(&p[1], 1) && count_is(&p[0], 2) && p[0].is_principal))
    {
        hits.push((GenusClass::One, "two-ideal chain times one proper ideal"));
    }
    if n == 2 && fields == 1 && nonfield[0].two_generated_nilsquare {
        hits.push((GenusClass::Two, RULE_NILSQUARE));
    }
    if n == 2 && p.iter().all(|f| f.is_principal && !f.is_field) {
        let (a, b) = (p[0].eta_of_maximal, p[1].eta_of_maximal);
        if (a == 2 && (b == 4 || b == 5)) || (b == 2 && (a == 4 || a == 5)) {
            hits.push((GenusClass::Two, "principal with index 4 or 5 times principal with index 2"));
        }
    }
    hits
}

/// Predicted class and the rule that fired.
pub fn predict_with_rule(profiles: &[FactorProfile]) -> Result<(GenusClass, &'static str)> {
    if profiles.len() < 2 {
        return Err(Error::SingleFactor);
    }
    Ok(rule_hits(profiles).first().copied().unwrap_or((GenusClass::AtLeastThree, "no lower-genus case applies")))
}

pub fn predict(profiles: &[FactorProfile]) -> Result<GenusClass> {
    predict_with_rule(profiles).map(|(c, _)| c)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    LowerOnly,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::LowerOnly => "lower-only",
            Verdict::Mismatch => "mismatch",
        })
    }
}

/// Confirmed when the interval pins the predicted class (for `AtLeastThree`,
/// when the lower bound reaches 3); mismatch when the interval excludes it.
pub fn judge(predicted: GenusClass, lower: usize, upper: Option<usize>) -> Verdict {
    match predicted {
        GenusClass::AtLeastThree => {
            if lower >= 3 {
                Verdict::Confirmed
            } else if upper.is_some_and(|u| u < 3) {
                Verdict::Mismatch
            } else {
                Verdict::LowerOnly
            }
        }
        c => {
            let want = c as usize;
            if lower > want || upper.is_some_and(|u| u < want) {
                Verdict::Mismatch
            } else if lower == want && upper == Some(want) {
                Verdict::Confirmed
            } else {
                Verdict::LowerOnly
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDigests {
    pub lower: String,
    pub upper: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub spec: String,
    /// Canonical form of the ring.
    pub ring: String,
    pub predicted: GenusClass,
    pub rule: String,
    pub profiles: Vec<FactorProfile>,
    pub vertices: usize,
    pub edges: usize,
    pub bounds: GenusBounds,
    pub verdict: Verdict,
    pub digests: CertificateDigests,
    /// Gaps and findings worth reading.
    pub notes: Vec<String>,
}

fn digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serialisable");
    let hash = Sha256::digest(&bytes);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn verify(spec: &str, budget: &Budget) -> Result<VerificationReport> {
    let inst = PisInstance::from_spec(spec)?;
    verify_instance(spec, &inst, budget)
}

pub fn verify_instance(spec: &str, inst: &PisInstance, budget: &Budget) -> Result<VerificationReport> {
    let profiles = profile_factors(&inst.factors)?;
    let (predicted, rule) = predict_with_rule(&profiles)?;
    let g = &inst.graph;
    let mut bounds = genus_bounds(g, budget)?;
    let mut notes = Vec::new();

    if predicted == GenusClass::AtLeastThree {
        attach_k55(inst, &mut bounds, budget, &mut notes);
    }
    let verdict = judge(predicted, bounds.lower, bounds.upper);
    let interval = match bounds.upper {
        Some(u) => format!("[{}, {u}]", bounds.lower),
        None => format!("[{}, unknown]", bounds.lower),
    };
    match verdict {
        Verdict::Mismatch => notes.push(format!("finding: certified genus interval {interval} excludes predicted class {predicted}")),
        Verdict::LowerOnly if predicted == GenusClass::AtLeastThree => notes.push(format!(
            "gap: predicted at least 3, certified interval {interval}; no certificate reaches 3 within budget"
        )),
        Verdict::LowerOnly => notes.push(format!("gap: interval {interval} does not pin predicted class {predicted}")),
        Verdict::Confirmed => {}
    }
    if predicted == GenusClass::AtLeastThree && bounds.lower < 2 {
        notes.push(format!("gap: lower bound {} is below 2 for a predicted genus of at least 3", bounds.lower));
    }
    for (i, p) in profiles.iter().enumerate() {
        if p.two_generated_nilsquare {
            let agrees = if bounds.is_exact() { if bounds.lower == 2 { "matches" } else { "does not match" } } else { "is not yet decided against" };
            notes.push(format!(
                "finding: factor {i} ({}) has a two-generated maximal ideal with square-zero generators and M^2 {} 0; computed interval {interval} {agrees} class Two",
                p.spec,
                if p.maximal_square_zero { "=" } else { "!=" },
            ));
        }
    }
    notes.extend(bounds.notes.iter().cloned());

    let digests = CertificateDigests {
        lower: digest(&bounds.lower_certificate),
        upper: bounds.upper_certificate.as_ref().map(digest),
    };
    Ok(VerificationReport {
        version: REPORT_SCHEMA_VERSION,
        spec: spec.to_string(),
        ring: inst.ring.descriptor().to_string(),
        predicted,
        rule: rule.to_string(),
        profiles,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        bounds,
        verdict,
        digests,
        notes,
    })
}

/// Looks for a `K5,5` subdivision, the usual witness for genus at least 3,
/// and keeps it as a supporting (or main) certificate.
fn attach_k55(inst: &PisInstance, bounds: &mut GenusBounds, budget: &Budget, notes: &mut Vec<String>) {
    let have = std::iter::once(&bounds.lower_certificate)
        .chain(&bounds.supporting)
        .flat_map(|c| c.witnesses())
        .any(|w| w.pattern == "K5,5");
    if have || inst.graph.vertex_count() < 10 {
        return;
    }
    let pattern = pattern_graph("K5,5").expect("model");
    let opts = SubdivisionOptions {
        nodes: Some((budget.nodes / 10).max(10_000)),
        deadline: budget.deadline(),
        ..Default::default()
    };
    match find_subdivision(&inst.graph, &pattern, &opts) {
        Ok(Some(w)) => {
            let cert = LowerCertificate::Subdivision { witness: w, genus: 3 };
            if bounds.lower < 3 && bounds.upper.is_none_or(|u| u >= 3) {
                let old = std::mem::replace(&mut bounds.lower_certificate, cert);
                bounds.supporting.push(old);
                bounds.lower = 3;
            } else {
                bounds.supporting.push(cert);
            }
        }
        Ok(None) => notes.push("no K5,5 subdivision exists".into()),
        Err(_) => notes.push("K5,5 subdivision search ran out of budget".into()),
    }
}

impl VerificationReport {
    /// Bounds inconsistent, or a mismatch that is not merely a finding.
    pub fn is_failure(&self) -> bool {
        self.bounds.upper.is_some_and(|u| u < self.bounds.lower)
            || (self.verdict == Verdict::Mismatch && self.rule != RULE_NILSQUARE)
    }
}

/// One line per report: ring, predicted class, bounds, verdict.
pub fn summary_table(reports: &[VerificationReport]) -> String {
    let mut out = format!("{:<40} {:<13} {:>5} {:>7}  {}\n", "ring", "predicted", "lower", "upper", "verdict");
    for r in reports {
        let upper = r.bounds.upper.map_or("unknown".to_string(), |u| u.to_string());
        out.push_str(&format!(
            "{:<40} {:<13} {:>5} {:>7}  {}\n",
            r.spec, r.predicted.to_string(), r.bounds.lower, upper, r.verdict
        ));
    }
    out
}
