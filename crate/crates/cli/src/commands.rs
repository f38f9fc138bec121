use serde::{Deserialize, Serialize};

use hss_core::einstein::{einstein_answer, einstein_table, EinsteinAnswer, TableRow};
use hss_core::oracle::{run_suite, VerificationReport};
use hss_core::orbits::{classify, contact_status, face_of, k_constant, sasaki_parameter, FaceDescriptor, OrbitReport, Segment};
use hss_core::rational::{rat, Rational};
use hss_core::rootsys::OrbitPoint;
use hss_core::spaces::{catalog, dimension, polar_info, Family, PolarDescriptor, SpaceDescriptor};

use crate::args::{selector, ClassifyArgs, ContactArgs, EinsteinArgs, SasakiArgs, SpacesArgs, VerifyArgs};
use crate::output::Output;
use crate::CliError;

/// Result of one command: the records and whether every check passed.
pub struct Outcome {
    pub output: Output,
    pub ok: bool,
}

impl Outcome {
    fn ok<T: Serialize>(records: &[T], leading: &[&'static str]) -> Result<Self, CliError> {
        let output = Output::new(records, leading).map_err(|e| CliError::Failure(e.to_string()))?;
        Ok(Outcome { output, ok: true })
    }
}

fn space(f: Family) -> Result<SpaceDescriptor, CliError> {
    catalog(f).map_err(CliError::from)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceRecord {
    pub selector: String,
    pub space: SpaceDescriptor,
    pub dimension: u32,
    pub polar: PolarDescriptor,
}

/// The listing: every family with matrix-sized parameters, n ≤ 8.
fn listing() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(Family::complex_projective(n + 1));
        for k in 2..=n / 2 {
            out.push(Family::Grassmannian { k, n });
        }
    }
    out.extend((5..=8).map(|n| Family::OrientedGrassmannian { n }));
    out.extend((3..=8).map(|n| Family::SoQuotient { n }));
    out.extend((2..=8).map(|n| Family::SpQuotient { n }));
    out.extend([Family::EIII, Family::EVII]);
    out
}

pub fn spaces(args: &SpacesArgs) -> Result<Outcome, CliError> {
    let families = args.space.map_or_else(listing, |f| vec![f]);
    let records = families
        .into_iter()
        .map(|f| {
            let s = space(f)?;
            Ok(SpaceRecord { selector: selector(f), dimension: dimension(&s), polar: polar_info(&s), space: s })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Outcome::ok(&records, &["selector", "space.name", "dimension", "space.rank", "space.restricted_kind"])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub space: String,
    pub selector: String,
    #[serde(rename = "H")]
    pub h: OrbitPoint,
    #[serde(with = "hss_core::rational::serde_str")]
    pub d: Rational,
    /// Roots of F ∪ {δ} that are strictly positive on H.
    pub face: Vec<String>,
    pub report: OrbitReport,
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Outcome, CliError> {
    let s = space(args.space)?;
    let report = classify(&s, &args.h, args.d)?;
    let (fundamental, highest) = face_of(&args.h);
    let face = FaceDescriptor { fundamental, highest, sample: args.h.clone() }.labels();
    let record = ClassifyRecord {
        space: s.name.clone(),
        selector: selector(args.space),
        h: args.h.clone(),
        d: args.d,
        face,
        report,
    };
    Outcome::ok(&[record], &["space", "H", "d", "report.cr_type", "report.orbit_dim"])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactRecord {
    pub space: String,
    #[serde(rename = "H")]
    pub h: OrbitPoint,
    pub segment: Option<Segment>,
    pub real_rank: u32,
    pub contact: bool,
}

pub fn contact(args: &ContactArgs) -> Result<Outcome, CliError> {
    let s = space(args.space)?;
    let points = match &args.h {
        Some(h) => vec![h.clone()],
        None => (0..s.rank).map(|i| OrbitPoint::segment(i, args.t, s.rank)).collect::<Result<_, _>>()?,
    };
    let records = points
        .into_iter()
        .map(|h| {
            let c = contact_status(&s, &h)?;
            Ok(ContactRecord { space: s.name.clone(), h, segment: c.segment, real_rank: c.real_rank, contact: c.contact })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Outcome::ok(&records, &["space", "H"])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SasakiRecord {
    #[serde(with = "hss_core::rational::serde_str")]
    pub d: Rational,
    /// The t ∈ (0, 1) with d·tan²(tπ/2) = 1.
    pub t: f64,
    /// t as a fraction, when it is rational.
    #[serde(with = "hss_core::rational::serde_str::option")]
    pub t_exact: Option<Rational>,
    /// k(d, t) on the Sasaki orbit.
    pub k: f64,
}

pub fn sasaki(args: &SasakiArgs) -> Result<Outcome, CliError> {
    let p = sasaki_parameter(args.d)?;
    // tan²(tπ/2) is rational for rational t only when t ∈ {1/3, 1/2, 2/3}.
    let t_exact = [rat(1, 3), rat(1, 2), rat(2, 3)].into_iter().find(|t| p.holds_at(*t));
    let record = SasakiRecord { d: p.d, t: p.t, t_exact, k: k_constant(p.d, p.t)? };
    Outcome::ok(&[record], &["d", "t", "t_exact", "k"])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EinsteinRecord {
    pub space: String,
    pub selector: String,
    pub einstein: EinsteinAnswer,
    pub polar: PolarDescriptor,
}

pub fn einstein(args: &EinsteinArgs) -> Result<Outcome, CliError> {
    match args.target.space {
        Some(f) => {
            let s = space(f)?;
            let record = EinsteinRecord {
                space: s.name.clone(),
                selector: selector(f),
                einstein: einstein_answer(&s)?,
                polar: polar_info(&s),
            };
            Outcome::ok(&[record], &["space", "einstein.solution_d"])
        }
        None => {
            let rows: Vec<TableRow> = einstein_table();
            Outcome::ok(&rows, &["space", "params", "d_solution"])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub space: String,
    #[serde(with = "hss_core::rational::serde_str")]
    pub d: Rational,
    pub check: String,
    pub identity: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub note: Option<String>,
    pub normalization: String,
}

fn records_of(r: &VerificationReport) -> impl Iterator<Item = VerifyRecord> + '_ {
    r.checks.iter().map(move |c| VerifyRecord {
        space: r.space.clone(),
        d: r.d,
        check: c.name.clone(),
        identity: c.identity.clone(),
        residual: c.residual,
        tolerance: c.tolerance,
        pass: c.pass,
        note: c.note.clone(),
        normalization: r.normalization.clone(),
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let families = args.families().map_err(CliError::Usage)?;
    for f in &families {
        if f.is_exceptional() {
            return Err(CliError::Usage(format!("{f} has no matrix model")));
        }
        space(*f)?;
    }
    let d = args.d;
    let reports: Vec<hss_core::Result<VerificationReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = families.iter().map(|&f| scope.spawn(move || run_suite(f, d))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let reports = reports.into_iter().collect::<hss_core::Result<Vec<_>>>()?;
    let records: Vec<VerifyRecord> = reports.iter().flat_map(records_of).collect();
    let mut outcome = Outcome::ok(&records, &["space", "d", "check", "pass", "residual", "tolerance", "note"])?;
    outcome.ok = reports.iter().all(|r| r.pass);
    Ok(outcome)
}
