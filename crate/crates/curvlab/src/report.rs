//! CSV and JSON emission for curvature, census, density, delta, and scan
//! results, each prefixed by a provenance header so every number in a report
//! can be reproduced.

use serde::Serialize;
use serde_json::json;

use crate::curvature::{CensusReport, CurvatureRecord};
use crate::density::DensityReport;
use crate::hyperbolicity::{DeltaEstimate, DeltaMode, ScanReport};
use crate::Rational;

/// Reproducibility context attached to every report.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool_version: String,
    pub group: String,
    pub gens: Vec<String>,
    pub radius: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn csv_header(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# curvlab {}\n", self.tool_version));
        out.push_str(&format!("# group {}\n", self.group));
        out.push_str(&format!("# gens {}\n", self.gens.join(",")));
        out.push_str(&format!("# radius {}\n", self.radius));
        if let Some(k) = self.k {
            out.push_str(&format!("# k {k}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed {seed}\n"));
        }
        out
    }
}

/// Decimal rendering of an exact rational to 6 places (round half away from
/// zero), for human reading next to the exact pair.
pub fn decimal6(r: &Rational) -> String {
    let num = *r.numer() as i128;
    let den = *r.denom() as i128;
    let scaled = num * 1_000_000;
    let rounded = if scaled >= 0 {
        (scaled + den / 2) / den
    } else {
        (scaled - den / 2) / den
    };
    let sign = if rounded < 0 { "-" } else { "" };
    let abs = rounded.unsigned_abs();
    format!("{sign}{}.{:06}", abs / 1_000_000, abs % 1_000_000)
}

fn sign_str(r: &Rational) -> &'static str {
    match r.cmp(&Rational::from_integer(0)) {
        std::cmp::Ordering::Less => "-",
        std::cmp::Ordering::Equal => "0",
        std::cmp::Ordering::Greater => "+",
    }
}

fn rational_json(r: &Rational) -> serde_json::Value {
    json!({ "num": *r.numer(), "den": *r.denom(), "decimal": decimal6(r) })
}

const RECORD_COLUMNS: &str =
    "element,length,k,comparison_num,comparison_den,kappa_num,kappa_den,sign";

fn record_row(rec: &CurvatureRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        rec.element,
        rec.length,
        rec.k,
        rec.comparison.numer(),
        rec.comparison.denom(),
        rec.kappa.numer(),
        rec.kappa.denom(),
        sign_str(&rec.kappa),
    )
}

fn record_json(rec: &CurvatureRecord) -> serde_json::Value {
    json!({
        "element": rec.element.to_string(),
        "length": rec.length,
        "k": rec.k,
        "comparison": rational_json(&rec.comparison),
        "kappa": rational_json(&rec.kappa),
        "sign": sign_str(&rec.kappa),
    })
}

pub fn kappa_csv(prov: &Provenance, rec: &CurvatureRecord) -> String {
    format!(
        "{}{RECORD_COLUMNS}\n{}\n",
        prov.csv_header(),
        record_row(rec)
    )
}

pub fn kappa_json(prov: &Provenance, rec: &CurvatureRecord) -> String {
    pretty(json!({ "provenance": prov, "record": record_json(rec) }))
}

pub fn census_csv(prov: &Provenance, report: &CensusReport, records: &[CurvatureRecord]) -> String {
    let mut out = prov.csv_header();
    out.push_str(RECORD_COLUMNS);
    out.push('\n');
    for rec in records {
        out.push_str(&record_row(rec));
        out.push('\n');
    }
    out.push_str(&format!(
        "# summary n={} k={} sphere={} negative={} zero={} positive={} min={}/{} max={}/{}\n",
        report.n,
        report.k,
        report.sphere_size,
        report.negative,
        report.zero,
        report.positive,
        report.min_kappa.numer(),
        report.min_kappa.denom(),
        report.max_kappa.numer(),
        report.max_kappa.denom(),
    ));
    out
}

pub fn census_json(
    prov: &Provenance,
    report: &CensusReport,
    records: &[CurvatureRecord],
) -> String {
    pretty(json!({
        "provenance": prov,
        "summary": {
            "n": report.n,
            "k": report.k,
            "sphere_size": report.sphere_size,
            "negative": report.negative,
            "zero": report.zero,
            "positive": report.positive,
            "min_kappa": rational_json(&report.min_kappa),
            "max_kappa": rational_json(&report.max_kappa),
        },
        "records": records.iter().map(record_json).collect::<Vec<_>>(),
    }))
}

fn frac_cols(num: u64, den: u64) -> String {
    let r = if den == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(num as i64, den as i64)
    };
    format!("{num},{den},{}", decimal6(&r))
}

pub fn density_csv(prov: &Provenance, report: &DensityReport) -> String {
    let mut out = prov.csv_header();
    out.push_str(
        "n,sphere_size,p,q,r,negative,zero,positive,\
         p_frac_num,p_frac_den,p_frac,\
         zero_frac_num,zero_frac_den,zero_frac,\
         neg_frac_num,neg_frac_den,neg_frac,\
         ball_size,ball_negative,ball_zero,ball_positive,\
         ball_zero_frac_num,ball_zero_frac_den,ball_zero_frac,\
         ball_neg_frac_num,ball_neg_frac_den,ball_neg_frac\n",
    );
    for (row, ball) in report.per_sphere.iter().zip(&report.cumulative) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.sphere_size,
            row.p_count,
            row.q_count,
            row.r_count,
            row.negative,
            row.zero,
            row.positive,
            frac_cols(row.p_count, row.sphere_size),
            frac_cols(row.zero, row.sphere_size),
            frac_cols(row.negative, row.sphere_size),
            ball.ball_size,
            ball.negative,
            ball.zero,
            ball.positive,
            frac_cols(ball.zero, ball.ball_size),
            frac_cols(ball.negative, ball.ball_size),
        ));
    }
    out
}

pub fn density_json(prov: &Provenance, report: &DensityReport) -> String {
    let spheres: Vec<_> = report
        .per_sphere
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "sphere_size": row.sphere_size,
                "p": row.p_count,
                "q": row.q_count,
                "r": row.r_count,
                "negative": row.negative,
                "zero": row.zero,
                "positive": row.positive,
                "p_frac": frac_json(row.p_count, row.sphere_size),
                "zero_frac": frac_json(row.zero, row.sphere_size),
                "neg_frac": frac_json(row.negative, row.sphere_size),
            })
        })
        .collect();
    let balls: Vec<_> = report
        .cumulative
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "ball_size": row.ball_size,
                "p": row.p_count,
                "q": row.q_count,
                "r": row.r_count,
                "negative": row.negative,
                "zero": row.zero,
                "positive": row.positive,
                "zero_frac": frac_json(row.zero, row.ball_size),
                "neg_frac": frac_json(row.negative, row.ball_size),
            })
        })
        .collect();
    pretty(json!({
        "provenance": prov,
        "k": report.k,
        "max_n": report.max_n,
        "per_sphere": spheres,
        "cumulative": balls,
    }))
}

fn frac_json(num: u64, den: u64) -> serde_json::Value {
    let r = if den == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(num as i64, den as i64)
    };
    json!({ "num": num, "den": den, "decimal": decimal6(&r) })
}

/// The fixed wire shape for delta estimates:
/// {delta_doubled, radius, mode, samples, seed, witness: [4 strings]}.
pub fn delta_json(prov: &Provenance, est: &DeltaEstimate) -> String {
    let (mode, samples, seed) = match est.mode {
        DeltaMode::Exhaustive => ("exhaustive", None, None),
        DeltaMode::Sampled { samples, seed } => ("sampled", Some(samples), Some(seed)),
    };
    pretty(json!({
        "provenance": prov,
        "delta_doubled": est.delta.doubled,
        "delta": est.delta.to_string(),
        "radius": est.radius,
        "mode": mode,
        "samples": samples,
        "seed": seed,
        "evaluated": est.evaluated,
        "witness": est.witness.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    }))
}

pub fn delta_csv(prov: &Provenance, est: &DeltaEstimate) -> String {
    let (mode, samples, seed) = match est.mode {
        DeltaMode::Exhaustive => ("exhaustive".to_string(), String::new(), String::new()),
        DeltaMode::Sampled { samples, seed } => {
            ("sampled".to_string(), samples.to_string(), seed.to_string())
        }
    };
    format!(
        "{}delta_doubled,delta,radius,mode,samples,seed,witness_x,witness_y,witness_z,witness_w\n\
         {},{},{},{},{},{},{},{},{},{}\n",
        prov.csv_header(),
        est.delta.doubled,
        est.delta,
        est.radius,
        mode,
        samples,
        seed,
        est.witness[0],
        est.witness[1],
        est.witness[2],
        est.witness[3],
    )
}

pub fn scan_csv(prov: &Provenance, report: &ScanReport) -> String {
    let mut out = prov.csv_header();
    out.push_str(&format!(
        "# band ({},{}] k {} scanned {} negative {} zero {} positive {} truncated {}\n",
        report.band_lo,
        report.band_hi,
        report.k,
        report.scanned,
        report.negative,
        report.zero,
        report.positive,
        report.truncated,
    ));
    out.push_str("witness,kappa_num,kappa_den\n");
    for (elem, kappa) in &report.witnesses {
        out.push_str(&format!("{elem},{},{}\n", kappa.numer(), kappa.denom()));
    }
    out
}

pub fn scan_json(prov: &Provenance, report: &ScanReport) -> String {
    pretty(json!({
        "provenance": prov,
        "k": report.k,
        "band_lo": report.band_lo,
        "band_hi": report.band_hi,
        "scanned": report.scanned,
        "negative": report.negative,
        "zero": report.zero,
        "positive": report.positive,
        "truncated": report.truncated,
        "witnesses": report
            .witnesses
            .iter()
            .map(|(e, k)| json!({ "element": e.to_string(), "kappa": rational_json(k) }))
            .collect::<Vec<_>>(),
    }))
}

/// Per-sphere size listing for the `ball` subcommand.
pub fn ball_csv(prov: &Provenance, sizes: &[u64]) -> String {
    let mut out = prov.csv_header();
    out.push_str("n,sphere_size,ball_size\n");
    let mut ball = 0u64;
    for (n, &s) in sizes.iter().enumerate() {
        ball += s;
        out.push_str(&format!("{n},{s},{ball}\n"));
    }
    out
}

pub fn ball_json(prov: &Provenance, sizes: &[u64]) -> String {
    let mut ball = 0u64;
    let rows: Vec<_> = sizes
        .iter()
        .enumerate()
        .map(|(n, &s)| {
            ball += s;
            json!({ "n": n, "sphere_size": s, "ball_size": ball })
        })
        .collect();
    pretty(json!({ "provenance": prov, "spheres": rows }))
}

fn pretty(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("report serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal6(&Rational::new(1, 3)), "0.333333");
        assert_eq!(decimal6(&Rational::new(-1, 2)), "-0.500000");
        assert_eq!(decimal6(&Rational::new(2, 1)), "2.000000");
        assert_eq!(decimal6(&Rational::new(1, 36)), "0.027778");
    }
}
