use std::io::Write;

use clap::ValueEnum;
use dn_core::bi_group::{CaseGroup, TransitivityReport};
use dn_core::coloring::PartitionJson;
use dn_core::solver::{SearchOutcome, SearchResult};
use dn_core::verifier::{CsvRow, Report};
use dn_core::{DnError, DnResult, GroupCase, Partition, Vertex};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct ExistsJson {
    case: String,
    line: u8,
    n: usize,
    k: usize,
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<PartitionJson>,
    nodes: u64,
}

#[derive(Serialize)]
struct ConstructionJson<'a> {
    case: String,
    line: u8,
    n: usize,
    classes: usize,
    expected: usize,
    distinguishing: bool,
    rgs: String,
    partition: &'a PartitionJson,
}

#[derive(Serialize)]
struct DnCsv {
    case: String,
    line: u8,
    n: usize,
    value: Option<usize>,
    lo: usize,
    hi: usize,
    evidence: String,
    nodes: u64,
    ms: u64,
    certificate: String,
}

#[derive(Serialize)]
struct GroupInfo {
    case: String,
    line: u8,
    n: usize,
    graph: String,
    order: String,
    plus_order: String,
    induced_order: String,
    vertex_transitive: bool,
    edge_transitive: bool,
    connected: bool,
    generators: Vec<String>,
}

pub struct Emitter<W: Write> {
    out: W,
    format: Format,
}

fn io(e: impl std::fmt::Display) -> DnError {
    DnError::Internal(format!("write failed: {e}"))
}

fn class_lines(classes: &[Vec<Vertex>]) -> Vec<String> {
    classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let members: Vec<String> = c.iter().map(Vertex::to_string).collect();
            format!("P{} = {{{}}}", i + 1, members.join(", "))
        })
        .collect()
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Emitter<W> {
        Emitter { out, format }
    }

    fn json_line(&mut self, v: &impl Serialize) -> Result<(), DnError> {
        let s = serde_json::to_string(v).map_err(io)?;
        writeln!(self.out, "{s}").map_err(io)
    }

    fn csv<T: Serialize>(&mut self, rows: &[T]) -> Result<(), DnError> {
        let mut w = csv::Writer::from_writer(&mut self.out);
        for r in rows {
            w.serialize(r).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    fn text(&mut self, lines: &[String]) -> Result<(), DnError> {
        for l in lines {
            writeln!(self.out, "{l}").map_err(io)?;
        }
        Ok(())
    }

    pub fn dn_result(&mut self, r: &DnResult) -> Result<(), DnError> {
        let j = r.to_json();
        match self.format {
            Format::Json => self.json_line(&j),
            Format::Csv => self.csv(&[DnCsv {
                case: j.case.to_string(),
                line: j.line,
                n: j.n,
                value: j.value,
                lo: j.lo,
                hi: j.hi,
                evidence: serde_json::to_value(j.evidence)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                nodes: j.nodes,
                ms: j.ms,
                certificate: r.certificate.rgs_string(),
            }]),
            Format::Text => {
                let head = match r.value() {
                    Some(v) => format!(
                        "{}: D = {v} (exhaustive, {} colourings, {} ms)",
                        r.case, r.nodes, j.ms
                    ),
                    None => format!(
                        "{}: {} <= D <= {} (budget exhausted; upper bound from construction)",
                        r.case, r.lo, r.hi
                    ),
                };
                let mut lines = vec![head];
                lines.extend(class_lines(&r.certificate.classes()));
                self.text(&lines)
            }
        }
    }

    pub fn exists(&mut self, c: &GroupCase, k: usize, o: &SearchOutcome) -> Result<bool, DnError> {
        let (result, cert, complete) = match &o.result {
            SearchResult::Found(p) => ("found", Some(p), true),
            SearchResult::Refuted => ("refuted", None, true),
            SearchResult::BudgetExhausted => ("budget_exhausted", None, false),
        };
        let j = ExistsJson {
            case: c.case().to_string(),
            line: c.line(),
            n: c.n(),
            k,
            result,
            certificate: cert.map(Partition::to_json),
            nodes: o.nodes,
        };
        match self.format {
            Format::Json => self.json_line(&j)?,
            Format::Csv => self.csv(&[(j.case, j.line, j.n, j.k, j.result, j.nodes)])?,
            Format::Text => {
                let mut lines = vec![format!(
                    "{c}, at most {k} classes: {result} ({} colourings)",
                    o.nodes
                )];
                if let Some(p) = cert {
                    lines.extend(class_lines(&p.classes()));
                }
                self.text(&lines)?;
            }
        }
        Ok(complete)
    }

    pub fn construction(
        &mut self,
        c: &GroupCase,
        classes: &[Vec<Vertex>],
        p: &Partition,
        ok: bool,
    ) -> Result<(), DnError> {
        let expected = dn_core::constructions::claimed_dn(c);
        match self.format {
            Format::Json => self.json_line(&ConstructionJson {
                case: c.case().to_string(),
                line: c.line(),
                n: c.n(),
                classes: p.num_colors(),
                expected,
                distinguishing: ok,
                rgs: p.rgs_string(),
                partition: &p.to_json(),
            }),
            Format::Csv => self.csv(&[(
                c.case().to_string(),
                c.line(),
                c.n(),
                p.num_colors(),
                expected,
                ok,
                p.rgs_string(),
            )]),
            Format::Text => {
                let status = if ok {
                    "distinguishing"
                } else {
                    "NOT distinguishing"
                };
                let mut lines = vec![format!("{c}: {} classes, {status}", p.num_colors())];
                lines.extend(class_lines(classes));
                self.text(&lines)
            }
        }
    }

    pub fn group_info(
        &mut self,
        c: &GroupCase,
        g: &CaseGroup,
        t: &TransitivityReport,
    ) -> Result<(), DnError> {
        let info = GroupInfo {
            case: c.case().to_string(),
            line: c.line(),
            n: c.n(),
            graph: g.graph.to_string(),
            order: g.order().to_string(),
            plus_order: g.plus_order().to_string(),
            induced_order: g.induced_on_delta_order().to_string(),
            vertex_transitive: t.vertex_transitive,
            edge_transitive: t.edge_transitive,
            connected: t.connected,
            generators: g.generators().iter().map(|e| e.to_string()).collect(),
        };
        match self.format {
            Format::Json => self.json_line(&info),
            Format::Csv => self.csv(&[(
                &info.case,
                info.line,
                info.n,
                &info.order,
                &info.plus_order,
                &info.induced_order,
                info.vertex_transitive,
                info.edge_transitive,
                info.connected,
            )]),
            Format::Text => {
                let mut lines = vec![
                    format!("{c} on {}", info.graph),
                    format!(
                        "|G| = {}, |G+| = {}, |H| = {}",
                        info.order, info.plus_order, info.induced_order
                    ),
                    format!(
                        "vertex-transitive {}, edge-transitive {}, connected {}",
                        t.vertex_transitive, t.edge_transitive, t.connected
                    ),
                    "generators:".into(),
                ];
                lines.extend(info.generators.iter().map(|s| format!("  {s}")));
                self.text(&lines)
            }
        }
    }

    pub fn reports(&mut self, reports: &[Report]) -> Result<(), DnError> {
        match self.format {
            Format::Json => reports.iter().try_for_each(|r| self.json_line(r)),
            Format::Csv => self.csv(&reports.iter().map(CsvRow::from).collect::<Vec<_>>()),
            Format::Text => {
                let mut lines = Vec::new();
                for r in reports {
                    let subject = match (r.case, r.line, r.n) {
                        (Some(c), Some(l), Some(n)) => {
                            format!("{} case {c} line {l} n={n}", r.subject)
                        }
                        (_, _, Some(n)) => format!("{} n={n}", r.subject),
                        _ => r.subject.clone(),
                    };
                    lines.push(format!(
                        "{} {subject}: expected {}, computed {} [{}] {} ms",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.expected,
                        r.computed,
                        r.evidence,
                        r.ms
                    ));
                    if let Some(w) = &r.warning {
                        lines.push(format!("     warning: {w}"));
                    }
                }
                let passed = reports.iter().filter(|r| r.pass).count();
                lines.push(format!("{passed} of {} passed", reports.len()));
                self.text(&lines)
            }
        }
    }
}
