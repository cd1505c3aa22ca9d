use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::json;

use astlab::conjectures::{
    endings, scan_divisibility, scan_endings, scan_flatstep, scan_root_windows, ROOT_REPORT_HEADER,
};
use astlab::identities::{
    asm_number, verify_constant_term, verify_det_andrews, verify_det_asm, verify_multiplicativity,
    verify_product_counts, verify_product_polynomial, verify_splitting, IdentityReport,
};
use astlab::limits::Limits;
use astlab::paths::{CentredCatalanSet, MotzkinPath};
use astlab::tables::regenerate;
use astlab::trapezoid::{enumerate_trapezoids, refine_by_motzkin, refine_by_set};
use astlab::weights::{Method, Subject, WeightRecord, WeightStore};

use crate::args::{By, Conjecture, Emit, EnumerateArgs, Format, Identity, ScanArgs, TablesArgs, VerifyArgs, WeightArgs};
use crate::cache::Cache;
use crate::report::{to_csv, to_json, write_pair};
use crate::CliError;

pub struct Context<'a> {
    pub limits: Limits,
    pub format: Format,
    pub cache: Option<Cache>,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Context<'_> {
    fn store(&self, method: Method) -> WeightStore {
        let store = WeightStore::new(method, self.limits);
        if let Some(c) = &self.cache {
            c.seed(&store);
        }
        store
    }

    /// Persists what the store learned. Cache failures only warn.
    fn save(&mut self, store: &WeightStore, extra: &[WeightRecord]) {
        if let Some(c) = &mut self.cache {
            if let Err(e) = c.append(extra).and_then(|_| c.absorb(store)) {
                let _ = writeln!(self.err, "warning: cache {} not updated: {e}", c.path().display());
            }
        }
    }
}

fn rows_below(n: usize) -> usize {
    n.saturating_sub(1)
}

pub fn enumerate(cx: &mut Context, a: &EnumerateArgs) -> Result<bool, CliError> {
    match a.emit {
        Emit::Counts => {
            let (records, total) = match a.by {
                By::Catalan => {
                    let r = refine_by_set(a.n, a.l, &cx.limits)?;
                    (r.records(), r.total())
                }
                By::Motzkin => {
                    let r = refine_by_motzkin(a.n, a.l, &cx.limits)?;
                    (r.records(), r.total())
                }
            };
            match cx.format {
                Format::Text => {
                    for r in &records {
                        writeln!(cx.out, "{}\t{}", r.key, r.count)?;
                    }
                    writeln!(cx.out, "total\t{total}")?;
                }
                Format::Json => {
                    let by = if a.by == By::Catalan { "catalan" } else { "motzkin" };
                    let v = json!({"n": a.n, "l": a.l, "by": by, "total": total.to_string(), "counts": records});
                    write!(cx.out, "{}", to_json(&v))?;
                }
                Format::Csv => write!(cx.out, "{}", to_csv(&records)?)?,
            }
        }
        Emit::Trapezoids => {
            #[derive(Serialize)]
            struct Line<'r> {
                n: usize,
                l: usize,
                key: String,
                rows: &'r [Vec<i8>],
            }
            #[derive(Serialize)]
            struct CsvLine {
                n: usize,
                l: usize,
                key: String,
                rows: String,
            }
            let mut first = true;
            for t in enumerate_trapezoids(a.n, a.l, &cx.limits)? {
                let key = match a.by {
                    By::Catalan => t.catalan_set()?.to_string(),
                    By::Motzkin => t.motzkin_path()?.to_string(),
                };
                match cx.format {
                    Format::Text => writeln!(cx.out, "{key}\n{t}\n")?,
                    Format::Json => {
                        let line = Line { n: a.n, l: a.l, key, rows: t.rows() };
                        writeln!(cx.out, "{}", serde_json::to_string(&line).expect("rows serialise"))?;
                    }
                    Format::Csv => {
                        let rows = t.rows().iter().map(|r| r.iter().map(i8::to_string).collect::<Vec<_>>().join(" "));
                        let line = CsvLine { n: a.n, l: a.l, key, rows: rows.collect::<Vec<_>>().join("/") };
                        let mut w = csv::WriterBuilder::new().has_headers(first).from_writer(Vec::new());
                        w.serialize(line).map_err(|e| CliError::Io(e.to_string()))?;
                        cx.out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)?;
                    }
                }
                first = false;
            }
        }
    }
    Ok(true)
}

fn parse_subject(a: &WeightArgs) -> Result<(Subject, String), CliError> {
    if let Some(s) = &a.set {
        let s: CentredCatalanSet = s.parse().map_err(|e| CliError::Usage(format!("--set {s:?}: {e}")))?;
        Ok((Subject::Set, s.to_string()))
    } else {
        let m = a.motzkin.as_deref().unwrap_or_default();
        let m: MotzkinPath = m.parse().map_err(|e| CliError::Usage(format!("--motzkin {m:?}: {e}")))?;
        Ok((Subject::Motzkin, m.to_string()))
    }
}

pub fn weight(cx: &mut Context, a: &WeightArgs) -> Result<bool, CliError> {
    let (kind, key) = parse_subject(a)?;
    let hit = cx.cache.as_ref().and_then(|c| c.get(kind, &key, a.method)).cloned();
    let record = match hit {
        Some(r) => r,
        None => {
            let store = cx.store(a.method);
            let r = match kind {
                Subject::Set => {
                    let s: CentredCatalanSet = key.parse().expect("canonical key");
                    cx.limits.check_set_size(s.size())?;
                    store.record_for_set(&s)?
                }
                Subject::Motzkin => {
                    let m: MotzkinPath = key.parse().expect("canonical key");
                    cx.limits.check_set_size(m.len() + 1)?;
                    store.record_for_motzkin(&m)?
                }
            };
            cx.save(&store, std::slice::from_ref(&r));
            r
        }
    };
    match cx.format {
        Format::Json => write!(cx.out, "{}", to_json(&record))?,
        Format::Csv => write!(cx.out, "{}", to_csv(std::slice::from_ref(&record))?)?,
        Format::Text => {
            let label = if kind == Subject::Set { "set" } else { "motzkin" };
            writeln!(cx.out, "{label}\t{}", record.key)?;
            writeln!(cx.out, "weight\t{}", record.factored)?;
            writeln!(cx.out, "coefficients\t{}", record.coefficients)?;
            let degree = record.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
            writeln!(cx.out, "degree\t{degree}")?;
            writeln!(cx.out, "leading\t{}", record.leading)?;
            writeln!(cx.out, "roots\t{}", record.roots.join(","))?;
            if let Some(shape) = &record.shape {
                writeln!(cx.out, "shape\t{shape}")?;
            }
            writeln!(cx.out, "f\t{}", record.f)?;
            writeln!(cx.out, "method\t{}", record.provenance)?;
        }
    }
    Ok(true)
}

fn identity_name(i: Identity) -> &'static str {
    match i {
        Identity::Appendix => "appendix",
        Identity::Product => "product",
        Identity::DetAndrews => "det-andrews",
        Identity::DetAsm => "det-asm",
        Identity::ConstantTerm => "constant-term",
        Identity::Splitting => "splitting",
        Identity::Multiplicativity => "multiplicativity",
    }
}

fn identity_reports(cx: &mut Context, a: &VerifyArgs) -> Result<Vec<IdentityReport>, CliError> {
    let limits = cx.limits;
    limits.check_set_size(a.max_size)?;
    let max_n = rows_below(a.max_size);
    let max_l = a.max_l as i64;
    let reports = match a.identity {
        Identity::Appendix => {
            let store = cx.store(a.method);
            let t = regenerate(&store)?;
            cx.save(&store, &[]);
            t.sets
                .iter()
                .chain(&t.paths)
                .map(|line| {
                    let mut params = vec![("key", line.key.clone())];
                    if !line.label.is_empty() {
                        params.push(("label", line.label.clone()));
                    }
                    let mut r = IdentityReport::new("appendix", &params, &line.computed, &line.expected);
                    r.equal = line.matches;
                    r
                })
                .collect()
        }
        Identity::Product => {
            let store = cx.store(a.method);
            let mut r = verify_product_polynomial(&store, max_n)?;
            cx.save(&store, &[]);
            r.extend(verify_product_counts(max_n, max_l, &limits)?);
            r
        }
        Identity::DetAndrews => verify_det_andrews(max_n, max_l)?,
        Identity::DetAsm => {
            let asm: Vec<_> = (1..=max_n as u64).map(asm_number).collect();
            verify_det_asm(max_n, max_l, &asm)?
        }
        Identity::ConstantTerm => {
            let store = cx.store(a.method);
            let r = verify_constant_term(&store, a.max_size, max_l)?;
            cx.save(&store, &[]);
            r
        }
        Identity::Splitting => verify_splitting(max_n, a.max_l, &limits)?,
        Identity::Multiplicativity => verify_multiplicativity(a.max_size, a.max_l, &limits)?,
    };
    Ok(reports)
}

fn parameters(r: &IdentityReport) -> String {
    r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn verify(cx: &mut Context, a: &VerifyArgs) -> Result<bool, CliError> {
    let reports = identity_reports(cx, a)?;
    let failures = reports.iter().filter(|r| !r.equal).count();
    let passed = failures == 0;
    let name = identity_name(a.identity);
    match cx.format {
        Format::Text => {
            for r in &reports {
                let mark = if r.equal { "PASS" } else { "FAIL" };
                let rel = if r.equal { "=" } else { "!=" };
                writeln!(cx.out, "{mark} {} {}: {} {rel} {}", r.identity, parameters(r), r.lhs, r.rhs)?;
            }
            if passed {
                writeln!(cx.out, "PASS {name}: {} checks", reports.len())?;
            } else {
                writeln!(cx.out, "FAIL {name}: {failures} of {} checks failed", reports.len())?;
            }
        }
        Format::Json => {
            let v = json!({
                "identity": name,
                "passed": passed,
                "checks": reports.len(),
                "failures": failures,
                "reports": reports,
            });
            write!(cx.out, "{}", to_json(&v))?;
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'r> {
                identity: &'r str,
                parameters: String,
                lhs: &'r str,
                rhs: &'r str,
                equal: bool,
            }
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row { identity: &r.identity, parameters: parameters(r), lhs: &r.lhs, rhs: &r.rhs, equal: r.equal })
                .collect();
            write!(cx.out, "{}", to_csv(&rows)?)?;
        }
    }
    Ok(passed)
}

/// Summary of one sweep, printed after the report files are written.
#[derive(Serialize)]
struct ScanSummary {
    conjecture: &'static str,
    max_size: usize,
    records: usize,
    counterexamples: usize,
    files: Vec<PathBuf>,
    note: Option<&'static str>,
}

pub fn scan(cx: &mut Context, a: &ScanArgs) -> Result<bool, CliError> {
    cx.limits.check_set_size(a.max_size)?;
    let store = cx.store(a.method);
    let max_length = rows_below(a.max_size);
    let summary = match a.conjecture {
        Conjecture::Roots => {
            let (reports, windows) = scan_root_windows(&store, a.max_size)?;
            let body = json!({"header": ROOT_REPORT_HEADER, "reports": reports, "windows": windows});
            let mut files = write_pair(&a.out, "roots", &body, &reports)?;
            let windows_csv = a.out.join("roots-windows.csv");
            std::fs::write(&windows_csv, to_csv(&windows)?)?;
            files.push(windows_csv);
            ScanSummary {
                conjecture: "roots",
                max_size: a.max_size,
                records: reports.len(),
                counterexamples: reports.iter().filter(|r| r.counterexample).count(),
                files,
                note: Some(ROOT_REPORT_HEADER),
            }
        }
        Conjecture::Divisibility => {
            let reports = scan_divisibility(&store, a.max_size)?;
            let files = write_pair(&a.out, "divisibility", &reports, &reports)?;
            ScanSummary {
                conjecture: "divisibility",
                max_size: a.max_size,
                records: reports.len(),
                counterexamples: reports.iter().filter(|r| r.counterexample || r.proved_part_fails).count(),
                files,
                note: None,
            }
        }
        Conjecture::Flatstep => {
            let reports = scan_flatstep(&store, max_length)?;
            let files = write_pair(&a.out, "flatstep", &reports, &reports)?;
            ScanSummary {
                conjecture: "flatstep",
                max_size: a.max_size,
                records: reports.len(),
                counterexamples: reports.iter().filter(|r| !r.holds).count(),
                files,
                note: None,
            }
        }
        Conjecture::Endings => {
            let reports = scan_endings(&store, max_length, &endings())?;
            let files = write_pair(&a.out, "endings", &reports, &reports)?;
            ScanSummary {
                conjecture: "endings",
                max_size: a.max_size,
                records: reports.len(),
                counterexamples: reports.iter().filter(|r| r.in_family && !r.divides).count(),
                files,
                note: None,
            }
        }
    };
    cx.save(&store, &[]);
    match cx.format {
        Format::Json => write!(cx.out, "{}", to_json(&summary))?,
        Format::Csv => write!(cx.out, "{}", to_csv(&summary.files.iter().map(|f| json!({"file": f})).collect::<Vec<_>>())?)?,
        Format::Text => {
            if let Some(note) = summary.note {
                writeln!(cx.out, "{note}")?;
            }
            writeln!(
                cx.out,
                "{}: {} records up to size {}, {} counterexamples",
                summary.conjecture, summary.records, summary.max_size, summary.counterexamples
            )?;
            for f in &summary.files {
                writeln!(cx.out, "wrote {}", f.display())?;
            }
        }
    }
    Ok(true)
}

pub fn tables(cx: &mut Context, a: &TablesArgs) -> Result<bool, CliError> {
    let store = cx.store(a.method);
    let t = regenerate(&store)?;
    cx.save(&store, &[]);
    match cx.format {
        Format::Text => write!(cx.out, "{}", t.markdown())?,
        Format::Json => write!(cx.out, "{}", to_json(&t))?,
        Format::Csv => write!(cx.out, "{}", to_csv(&t.sets.iter().chain(&t.paths).collect::<Vec<_>>())?)?,
    }
    if !t.all_match() {
        writeln!(cx.err, "regenerated rows differ from the reference tables")?;
    }
    Ok(t.all_match())
}
