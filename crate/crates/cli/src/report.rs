//! Rendering of results as text summaries, CSV tables or JSON documents.
//!
//! Numbers in CSV are written as `{:.16e}` so every f64 round-trips; line
//! endings are LF. Values are converted to the configured output units
//! here and nowhere else.

use casimir_core::casimir::{CavityPassivityReport, FresnelEstimate, SweepResult};
use casimir_core::scattering::PassivityReport;
use casimir_core::spectral::{Resonance, SpectrumPoint};
use casimir_core::{ForceResult, Units};
use serde::Serialize;

pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("in-memory csv writer")
}

fn json(value: &impl Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serialises");
    out.push(b'\n');
    out
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Bounds {
    pub within_perfect: bool,
    pub attractive: bool,
    pub attraction_required: bool,
}

/// A [`ForceResult`] in output units.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ForceRecord {
    pub tau: f64,
    pub force: f64,
    pub error_estimate: f64,
    pub f_perfect: f64,
    pub ratio: f64,
    pub bounds: Bounds,
}

impl ForceRecord {
    pub fn new(r: &ForceResult, units: &Units) -> Self {
        Self {
            tau: units.time(r.tau),
            force: units.force(r.force),
            error_estimate: units.force(r.error_estimate),
            f_perfect: units.force(r.f_perfect),
            ratio: r.ratio,
            bounds: Bounds {
                within_perfect: r.bounds.within_perfect,
                attractive: r.bounds.attractive,
                attraction_required: r.bounds.attraction_required,
            },
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![
            sci(self.tau),
            sci(self.force),
            sci(self.error_estimate),
            sci(self.f_perfect),
            sci(self.ratio),
            self.bounds.within_perfect.to_string(),
            self.bounds.attractive.to_string(),
        ]
    }
}

const FORCE_COLUMNS: [&str; 7] = [
    "tau",
    "force",
    "error_estimate",
    "f_perfect",
    "ratio",
    "within_perfect",
    "attractive",
];
const FRESNEL_COLUMNS: [&str; 2] = ["fresnel_number", "force_3d"];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FresnelRecord {
    pub fresnel_number: f64,
    /// Order-of-magnitude estimate only.
    pub force_3d: f64,
    pub qualitative: bool,
}

impl FresnelRecord {
    pub fn new(f: &FresnelEstimate, units: &Units) -> Self {
        Self {
            fresnel_number: f.fresnel_number,
            force_3d: units.force(f.force),
            qualitative: f.qualitative,
        }
    }
}

#[derive(Serialize)]
struct ForceDocument<'a> {
    command: &'static str,
    units: &'static str,
    result: &'a ForceRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    fresnel: Option<&'a FresnelRecord>,
}

pub fn force_text(r: &ForceRecord, fresnel: Option<&FresnelRecord>, units: &Units) -> Vec<u8> {
    let mut s = format!("units {}\n", units.label());
    s += &format!("tau {}\n", sci(r.tau));
    s += &format!("force {}\n", sci(r.force));
    s += &format!("error_estimate {}\n", sci(r.error_estimate));
    s += &format!("f_perfect {}\n", sci(r.f_perfect));
    s += &format!("ratio {:.10}\n", r.ratio);
    s += &format!("within_perfect {}\n", r.bounds.within_perfect);
    s += &format!("attractive {}\n", r.bounds.attractive);
    if let Some(f) = fresnel {
        s += &format!("fresnel_number {}\n", sci(f.fresnel_number));
        s += &format!("force_3d {} (qualitative)\n", sci(f.force_3d));
    }
    s.into_bytes()
}

pub fn force_csv(r: &ForceRecord, fresnel: Option<&FresnelRecord>) -> Vec<u8> {
    let mut w = csv_writer();
    let mut header: Vec<&str> = FORCE_COLUMNS.to_vec();
    let mut row = r.csv_fields();
    if let Some(f) = fresnel {
        header.extend(FRESNEL_COLUMNS);
        row.extend([sci(f.fresnel_number), sci(f.force_3d)]);
    }
    w.write_record(&header).expect("csv");
    w.write_record(&row).expect("csv");
    finish(w)
}

pub fn force_structured(r: &ForceRecord, fresnel: Option<&FresnelRecord>, units: &Units) -> Vec<u8> {
    json(&ForceDocument {
        command: "force",
        units: units.label(),
        result: r,
        fresnel,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub tau: f64,
    pub result: Option<ForceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fresnel: Option<FresnelRecord>,
    pub error: Option<String>,
}

pub fn sweep_rows(sweep: &SweepResult, units: &Units, fresnel: Option<f64>) -> Vec<SweepRow> {
    sweep
        .points
        .iter()
        .map(|p| {
            let (result, error) = match &p.result {
                Ok(r) => (Some(ForceRecord::new(r, units)), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let fresnel = match (&p.result, fresnel) {
                (Ok(r), Some(n)) => casimir_core::fresnel_scale(r.force, n)
                    .ok()
                    .map(|f| FresnelRecord::new(&f, units)),
                _ => None,
            };
            SweepRow {
                tau: units.time(p.tau),
                result,
                fresnel,
                error,
            }
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow], with_fresnel: bool) -> Vec<u8> {
    let mut w = csv_writer();
    let mut header: Vec<&str> = FORCE_COLUMNS.to_vec();
    if with_fresnel {
        header.extend(FRESNEL_COLUMNS);
    }
    header.push("error");
    w.write_record(&header).expect("csv");
    for row in rows {
        let mut fields = match &row.result {
            Some(r) => r.csv_fields(),
            None => {
                let mut f = vec![String::new(); FORCE_COLUMNS.len()];
                f[0] = sci(row.tau);
                f
            }
        };
        if with_fresnel {
            match &row.fresnel {
                Some(f) => fields.extend([sci(f.fresnel_number), sci(f.force_3d)]),
                None => fields.extend([String::new(), String::new()]),
            }
        }
        fields.push(row.error.clone().unwrap_or_default());
        w.write_record(&fields).expect("csv");
    }
    finish(w)
}

pub fn sweep_text(rows: &[SweepRow], units: &Units) -> Vec<u8> {
    let mut s = format!("units {}\n", units.label());
    s += &format!("{:>24} {:>24} {:>14} {:>6}\n", "tau", "force", "ratio", "bounds");
    for row in rows {
        match (&row.result, &row.error) {
            (Some(r), _) => {
                let ok = r.bounds.within_perfect && (r.bounds.attractive || !r.bounds.attraction_required);
                s += &format!(
                    "{:>24} {:>24} {:>14.10} {:>6}\n",
                    sci(r.tau),
                    sci(r.force),
                    r.ratio,
                    if ok { "ok" } else { "FAIL" }
                );
            }
            (None, e) => s += &format!("{:>24} error: {}\n", sci(row.tau), e.as_deref().unwrap_or("")),
        }
    }
    s.into_bytes()
}

pub fn sweep_structured(rows: &[SweepRow], non_increasing: bool, units: &Units) -> Vec<u8> {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        units: &'static str,
        non_increasing: bool,
        points: &'a [SweepRow],
    }
    json(&Doc {
        command: "sweep",
        units: units.label(),
        non_increasing,
        points: rows,
    })
}

/// A spectral sample in output units.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub omega: f64,
    pub g: Option<f64>,
    pub re_f: Option<f64>,
    pub im_f: Option<f64>,
    pub density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn spectrum_rows(points: &[SpectrumPoint], units: &Units) -> Vec<SpectrumRow> {
    points
        .iter()
        .map(|p| match &p.result {
            Ok(s) => SpectrumRow {
                omega: units.frequency(s.omega),
                g: Some(s.g),
                re_f: Some(s.loop_f.re),
                im_f: Some(s.loop_f.im),
                density: Some(units.spectral_density(s.density)),
                error: None,
            },
            Err(e) => SpectrumRow {
                omega: units.frequency(p.omega),
                g: None,
                re_f: None,
                im_f: None,
                density: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// Failed points keep their ω and leave the other columns empty.
pub fn spectrum_csv(rows: &[SpectrumRow]) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(["omega", "g", "re_f", "im_f", "density"]).expect("csv");
    let opt = |x: Option<f64>| x.map(sci).unwrap_or_default();
    for r in rows {
        w.write_record([sci(r.omega), opt(r.g), opt(r.re_f), opt(r.im_f), opt(r.density)])
            .expect("csv");
    }
    finish(w)
}

pub fn spectrum_text(rows: &[SpectrumRow], resonances: &[Resonance], units: &Units) -> Vec<u8> {
    let mut s = format!("units {}\npoints {}\n", units.label(), rows.len());
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        s += &format!("failed_points {failed}\n");
    }
    s += &format!("resonances {}\n", resonances.len());
    for r in resonances {
        let opt = |x: Option<f64>| x.map(sci).unwrap_or_else(|| "n/a".into());
        s += &format!(
            "omega_peak {} g_peak {} fwhm {} finesse {}\n",
            sci(units.frequency(r.omega_peak)),
            sci(r.g_peak),
            opt(r.fwhm.map(|w| units.frequency(w))),
            opt(r.finesse)
        );
    }
    s.into_bytes()
}

pub fn spectrum_structured(rows: &[SpectrumRow], units: &Units) -> Vec<u8> {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        units: &'static str,
        samples: &'a [SpectrumRow],
    }
    json(&Doc {
        command: "spectrum",
        units: units.label(),
        samples: rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaRow {
    pub mirror: &'static str,
    pub theta_static: Option<f64>,
    pub theta_dispersion: Option<f64>,
    /// Why a value is absent.
    pub notes: Vec<String>,
}

pub fn theta_text(rows: &[ThetaRow], units: &Units) -> Vec<u8> {
    let opt = |x: Option<f64>| x.map(sci).unwrap_or_else(|| "n/a".into());
    let mut s = format!("units {}\n", units.label());
    for r in rows {
        s += &format!(
            "{} theta_static {} theta_dispersion {}\n",
            r.mirror,
            opt(r.theta_static),
            opt(r.theta_dispersion)
        );
        for n in &r.notes {
            s += &format!("{}   note: {n}\n", r.mirror);
        }
    }
    s.into_bytes()
}

pub fn theta_csv(rows: &[ThetaRow]) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(["mirror", "theta_static", "theta_dispersion"]).expect("csv");
    let opt = |x: Option<f64>| x.map(sci).unwrap_or_default();
    for r in rows {
        w.write_record([r.mirror.to_string(), opt(r.theta_static), opt(r.theta_dispersion)])
            .expect("csv");
    }
    finish(w)
}

pub fn theta_structured(rows: &[ThetaRow], units: &Units) -> Vec<u8> {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        units: &'static str,
        mirrors: &'a [ThetaRow],
    }
    json(&Doc {
        command: "theta",
        units: units.label(),
        mirrors: rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckPoint {
    pub p_re: f64,
    pub p_im: f64,
    pub min_eigenvalue: Option<f64>,
    pub max_abs_reflection: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckMirror {
    pub mirror: &'static str,
    pub passed: bool,
    pub min_eigenvalue: f64,
    pub max_abs_reflection: f64,
    pub first_violation: Option<CheckPoint>,
    pub points: Vec<CheckPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub passed: bool,
    pub max_abs_product: f64,
    pub mirrors: Vec<CheckMirror>,
}

impl CheckRecord {
    pub fn new(report: &CavityPassivityReport) -> Self {
        let mirror = |name: &'static str, r: &PassivityReport| {
            let mut points: Vec<CheckPoint> = r
                .points
                .iter()
                .map(|x| CheckPoint {
                    p_re: x.p.re,
                    p_im: x.p.im,
                    min_eigenvalue: Some(x.min_eigenvalue),
                    max_abs_reflection: Some(x.max_abs_reflection),
                    error: None,
                })
                .collect();
            points.extend(r.errors.iter().map(|(p, e)| CheckPoint {
                p_re: p.re,
                p_im: p.im,
                min_eigenvalue: None,
                max_abs_reflection: None,
                error: Some(e.clone()),
            }));
            CheckMirror {
                mirror: name,
                passed: r.passed,
                min_eigenvalue: r.min_eigenvalue,
                max_abs_reflection: r.max_abs_reflection,
                first_violation: r.first_violation.map(|v| CheckPoint {
                    p_re: v.p.re,
                    p_im: v.p.im,
                    min_eigenvalue: Some(v.min_eigenvalue),
                    max_abs_reflection: Some(v.max_abs_reflection),
                    error: None,
                }),
                points,
            }
        };
        Self {
            passed: report.passed,
            max_abs_product: report.max_abs_product,
            mirrors: vec![
                mirror("mirror1", &report.mirror1),
                mirror("mirror2", &report.mirror2),
            ],
        }
    }
}

pub fn check_text(c: &CheckRecord) -> Vec<u8> {
    let mut s = String::new();
    for m in &c.mirrors {
        if m.passed {
            s += &format!(
                "{} passed min_eigenvalue {} max_abs_reflection {}\n",
                m.mirror,
                sci(m.min_eigenvalue),
                sci(m.max_abs_reflection)
            );
            continue;
        }
        s += &format!("{} FAILED\n", m.mirror);
        if let Some(v) = &m.first_violation {
            s += &format!(
                "{} violation at p = {}{:+}i: min eigenvalue of 1 − SS† is {}, |r| = {}\n",
                m.mirror,
                v.p_re,
                v.p_im,
                sci(v.min_eigenvalue.unwrap_or(f64::NAN)),
                sci(v.max_abs_reflection.unwrap_or(f64::NAN))
            );
        }
        for p in m.points.iter().filter(|p| p.error.is_some()) {
            s += &format!(
                "{} not evaluable at p = {}{:+}i: {}\n",
                m.mirror,
                p.p_re,
                p.p_im,
                p.error.as_deref().unwrap_or("")
            );
        }
    }
    s += &format!("max_abs_product {}\n", sci(c.max_abs_product));
    s += &format!("passivity {}\n", if c.passed { "passed" } else { "FAILED" });
    s.into_bytes()
}

pub fn check_csv(c: &CheckRecord) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(["mirror", "p_re", "p_im", "min_eigenvalue", "max_abs_reflection", "passed", "error"])
        .expect("csv");
    let opt = |x: Option<f64>| x.map(sci).unwrap_or_default();
    for m in &c.mirrors {
        for p in &m.points {
            let passed = p
                .min_eigenvalue
                .is_some_and(|e| e >= casimir_core::scattering::PASSIVITY_TOLERANCE);
            w.write_record([
                m.mirror.to_string(),
                sci(p.p_re),
                sci(p.p_im),
                opt(p.min_eigenvalue),
                opt(p.max_abs_reflection),
                passed.to_string(),
                p.error.clone().unwrap_or_default(),
            ])
            .expect("csv");
        }
    }
    finish(w)
}

pub fn check_structured(c: &CheckRecord) -> Vec<u8> {
    #[derive(Serialize)]
    struct Doc<'a> {
        command: &'static str,
        #[serde(flatten)]
        report: &'a CheckRecord,
    }
    json(&Doc {
        command: "check",
        report: c,
    })
}
