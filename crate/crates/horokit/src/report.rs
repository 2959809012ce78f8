//! Plain-text reports: structured, line-oriented, and byte-deterministic
//! for fixed inputs. No timestamps, locales, or environment leak into the
//! output, so repeated runs diff clean.

use std::fmt::Write as _;

use crate::packing::density::McDensity;
use crate::packing::verify::VerifyReport;
use crate::packing::volume::ExactDensity;
use crate::packing::CaseId;
use crate::tables::{cross_check, notes, CheckOutcome};
use crate::Tiling;

fn fmt_point(out: &mut String, p: &crate::lorentz::Vec4) {
    let _ = write!(out, "{} {} {} {}", p[0], p[1], p[2], p[3]);
}

/// Renders a verification report.
pub fn verify_text(case: CaseId, r: &VerifyReport, tables: &[CheckOutcome]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "horokit-verify-report");
    let _ = writeln!(out, "tiling {}", case.tiling().id());
    let _ = writeln!(out, "case {}", case.id());
    let _ = writeln!(out, "crowns {}", r.crowns);
    let _ = writeln!(out, "tol {}", r.tol);
    let _ = writeln!(out, "isometries {}", r.isometries);
    let _ = writeln!(
        out,
        "isometries-per-crown {}",
        join(r.isometries_per_crown.iter())
    );
    let _ = writeln!(out, "balls {}", r.balls);
    let _ = writeln!(out, "balls-per-crown {}", join(r.balls_per_crown.iter()));
    let _ = writeln!(out, "generator-residual {:.3e}", r.generator_residual);
    let _ = writeln!(out, "relations {}", r.relations.checks.len());
    let _ = writeln!(
        out,
        "relations-max-residual {:.3e}",
        r.relations.max_residual
    );
    let _ = writeln!(out, "pairs-checked {}", r.pairs_checked);
    let _ = writeln!(out, "tangent-pairs {}", r.tangent_pairs);
    let _ = writeln!(out, "overlap-pairs {}", r.overlap_pairs);
    let _ = writeln!(out, "min-gap {:.3e}", r.min_gap);
    for c in &r.seed_contacts {
        let mut line = format!("seed-contact {} {} at ", c.a, c.b);
        fmt_point(&mut line, &c.point);
        let _ = writeln!(out, "{line}");
    }
    for c in &r.face_contacts {
        let mut line = format!("face-contact ball {} facet {} at ", c.vertex, c.facet);
        fmt_point(&mut line, &c.point);
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "foreign-separated {}", r.separated_foreign_balls);
    let _ = writeln!(out, "foreign-unseparated {}", r.unseparated_foreign_balls);
    for (v, piece) in r.piece_volumes.iter().enumerate() {
        let _ = writeln!(out, "piece-volume {v} {piece}");
    }
    for (value, count) in &r.piece_classes {
        let _ = writeln!(out, "piece-class {value} x{count}");
    }
    for (value, count) in &r.size_classes {
        let _ = writeln!(out, "size-class s {value} x{count}");
    }
    let _ = writeln!(out, "cell-volume {}", r.cell_volume);
    let _ = writeln!(out, "piece-density {}", r.piece_density);
    render_tables(&mut out, tables);
    for f in &r.failures {
        let _ = writeln!(out, "failure {f}");
    }
    let _ = writeln!(out, "result {}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

/// Renders the reference-table cross-check rows.
fn render_tables(out: &mut String, tables: &[CheckOutcome]) {
    for t in tables {
        let status = match (t.agrees, t.erratum) {
            (true, _) => "match".to_string(),
            (false, Some(note)) => {
                let fixed = match t.corrected_agrees {
                    Some(true) => "correction matches",
                    Some(false) => "correction disagrees",
                    None => "no correction",
                };
                format!("erratum ({note}; {fixed})")
            }
            (false, None) => format!("MISMATCH deviation {:.3e}", t.deviation),
        };
        let _ = writeln!(out, "table-check \"{}\" {status}", t.label);
    }
}

/// Renders a closed-form density result.
pub fn exact_density_text(case: CaseId, d: &ExactDensity) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "horokit-density-report");
    let _ = writeln!(out, "tiling {}", case.tiling().id());
    let _ = writeln!(out, "case {}", case.id());
    let _ = writeln!(out, "method exact");
    for (v, piece) in d.piece_volumes.iter().enumerate() {
        let _ = writeln!(out, "piece-volume {v} {piece}");
    }
    let _ = writeln!(out, "cell-volume {}", d.cell_volume);
    let _ = writeln!(out, "density {}", d.density);
    out
}

/// Renders a Monte-Carlo density estimate.
pub fn mc_density_text(case: CaseId, d: &McDensity) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "horokit-density-report");
    let _ = writeln!(out, "tiling {}", case.tiling().id());
    let _ = writeln!(out, "case {}", case.id());
    let _ = writeln!(out, "method mc");
    let _ = writeln!(out, "samples-requested {}", d.samples_requested);
    let _ = writeln!(out, "samples-used {}", d.samples_used);
    let _ = writeln!(out, "strata {}", d.strata);
    let _ = writeln!(out, "subdivision-level {}", d.subdivision_level);
    let _ = writeln!(out, "shell-skips {}", d.shell_skips);
    let _ = writeln!(out, "cell-volume {}", d.cell_volume);
    let _ = writeln!(out, "complement-volume {}", d.complement_volume);
    let _ = writeln!(out, "density {}", d.density);
    let _ = writeln!(out, "std-error {:.3e}", d.std_error);
    out
}

/// Renders the tool overview: cases, solved parameters, densities, and the
/// reference-table cross-check for both tilings.
pub fn info_text(tol: f64) -> Result<String, crate::packing::PackingError> {
    let mut out = String::new();
    let _ = writeln!(out, "horokit {}", crate::VERSION);
    let _ = writeln!(
        out,
        "optimal horoball packings in the Beltrami-Klein model"
    );
    for tiling in [Tiling::Tet336, Tiling::Cube436] {
        let _ = writeln!(out);
        let _ = writeln!(out, "tiling {} {}", tiling.id(), tiling.schlafli());
        for case in CaseId::all() {
            if case.tiling() != tiling {
                continue;
            }
            let config = crate::packing::CaseConfig::solve(case)?;
            let _ = writeln!(out, "  case {} ({})", case.id(), case.describe());
            for (k, s) in config.class_parameters().iter().enumerate() {
                let members = config
                    .class_of_vertex
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c == k)
                    .map(|(v, _)| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(out, "    class {k} s {s} vertices {members}");
            }
            let exact = crate::packing::volume::exact_density(case, tol)?;
            let _ = writeln!(out, "    density {}", exact.density);
        }
        let checks = cross_check(tiling, tol);
        let agree = checks.iter().filter(|c| c.agrees).count();
        let _ = writeln!(
            out,
            "  reference-table rows {} matching {agree}",
            checks.len()
        );
        let mut table_lines = String::new();
        render_tables(&mut table_lines, &checks);
        for line in table_lines.lines() {
            let _ = writeln!(out, "  {line}");
        }
        for n in notes(tiling) {
            let _ = writeln!(out, "  note {n}");
        }
    }
    Ok(out)
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::density::{mc_density, McOptions};
    use crate::packing::verify::verify;
    use crate::packing::volume::exact_density;
    use crate::packing::Packing;

    #[test]
    fn verify_text_is_deterministic_and_reports_pass() {
        let packing = Packing::expand(CaseId::Bf, 2, 1e-9).unwrap();
        let report = verify(&packing, 1e-9).unwrap();
        let tables = cross_check(Tiling::Tet336, 1e-9);
        let a = verify_text(CaseId::Bf, &report, &tables);
        let b = verify_text(CaseId::Bf, &report, &tables);
        assert_eq!(a, b);
        assert!(a.ends_with("result PASS\n"));
        assert!(a.contains("overlap-pairs 0"));
        // The known misprint rows surface as errata, not mismatches.
        assert!(a.contains("erratum ("));
        assert!(!a.contains("MISMATCH"));
    }

    #[test]
    fn density_texts_carry_the_headline_number() {
        let exact = exact_density(CaseId::Ks, 1e-9).unwrap();
        let text = exact_density_text(CaseId::Ks, &exact);
        assert!(text.contains("method exact"));
        assert!(text.contains(&format!("density {}", exact.density)));

        let mc = mc_density(
            CaseId::Ks,
            &McOptions {
                samples: 20_000,
                seed: 3,
            },
        )
        .unwrap();
        let text = mc_density_text(CaseId::Ks, &mc);
        assert!(text.contains("method mc"));
        assert!(text.contains(&format!("density {}", mc.density)));
        assert!(text.contains("std-error"));
    }

    #[test]
    fn info_lists_all_four_cases_with_parameters() {
        let text = info_text(1e-9).unwrap();
        for case in CaseId::all() {
            assert!(text.contains(&format!("case {} ", case.id())));
        }
        assert!(text.contains("tiling 336 {3,3,6}"));
        assert!(text.contains("tiling 436 {4,3,6}"));
        assert!(text.contains("class 0 s "));
        assert!(text.contains("reference-table rows"));
    }
}
