//! Command-line front end: build and inspect curves and codes, reproduce
//! the worked constructions against embedded golden data, run searches,
//! and emit machine-readable reports.

pub mod descriptor;
pub mod repro;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt;
use tecc::curve::Point;
use tecc::gf::{ElemStyle, Field, Fq};
use tecc::lincode::{self, CodeClass, Matrix};
use tecc::rrspace::SingleTwist;
use tecc::teccbuild::{
    self, min_distance_class, schur_audit, search_codes, self_dual_check,
    tecc_parity_check_closed_form, tecc_parity_check_nullspace, tecc_parity_check_recursive,
    BuildError, CodeHandle, DistanceCase, SearchFilter, TwistKind,
};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Budget(String),
    GoldenMismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(s) => write!(f, "{}", s),
            CliError::Budget(s) => write!(f, "budget exceeded: {}", s),
            CliError::GoldenMismatch(s) => write!(f, "golden mismatch: {}", s),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Budget(_) => 2,
            CliError::GoldenMismatch(_) => 3,
        }
    }
}

fn from_build(e: BuildError) -> CliError {
    match e {
        BuildError::CapExceeded => CliError::Budget(e.to_string()),
        BuildError::Lin(lincode::LinError::BudgetExceeded) => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "tecc",
    version,
    about = "Construct, analyze, and search twisted elliptic curve codes over small finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Enumeration budget in codeword classes (default 10^6; the
    /// TECC_BUDGET environment variable overrides the default).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Witness cap for subset-sum listings.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub witness_cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Describe a finite field.
    Field {
        /// Field descriptor, e.g. '{"p":2,"m":4}'.
        #[arg(long)]
        field: String,
    },
    /// Enumerate the rational points and group structure of a curve.
    Curve {
        #[arg(long)]
        field: String,
        /// Curve descriptor, e.g. `{"kind":"type1","f":[1,1,0,1]}`.
        #[arg(long)]
        curve: String,
    },
    /// Print the generator matrix of a code.
    Code {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Print every applicable parity-check route and the agreement verdict.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Classify a code: parameters, Singleton defect, distance case.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Extract the twist value from k+1 points.
    Eta {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        ell: usize,
        /// Semicolon-separated point list, e.g. "(0,1);(2,1);(3,4);(4,2)".
        #[arg(long)]
        points: String,
    },
    /// Sweep eta (and self-dual scalings) for codes matching a filter.
    Search {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Filter by class: mds, amds, nmds, other.
        #[arg(long)]
        class: Option<String>,
        /// Filter by self-duality.
        #[arg(long)]
        self_dual: Option<bool>,
    },
    /// Schur-square audit of a twisted code and its dual.
    Schur {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Re-derive a named construction and diff against embedded goldens.
    Repro {
        /// One of example1..3, table1..4, gf4-tecc, gf5-tecc, all.
        target: String,
    },
}

/// A code given either as a full JSON descriptor (inline or a file path)
/// or assembled from individual flags with a canonical point selection.
#[derive(clap::Args, Debug)]
pub struct CodeArgs {
    #[arg(long)]
    pub descriptor: Option<String>,
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub curve: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub eta: Option<String>,
    /// Comma-separated scaling vector.
    #[arg(long)]
    pub v: Option<String>,
}

fn load_json(text_or_path: &str) -> Result<Value, CliError> {
    let t = text_or_path.trim();
    if t.starts_with('{') || t.starts_with('[') {
        descriptor::parse_json(t)
    } else {
        let data = std::fs::read_to_string(t)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {}", t, e)))?;
        descriptor::parse_json(&data)
    }
}

impl CodeArgs {
    pub fn build(&self) -> Result<CodeHandle, CliError> {
        if let Some(desc) = &self.descriptor {
            return descriptor::parse_handle(&load_json(desc)?);
        }
        let field_s = self
            .field
            .as_ref()
            .ok_or_else(|| CliError::Validation("--descriptor or --field is required".into()))?;
        let curve_s = self
            .curve
            .as_ref()
            .ok_or_else(|| CliError::Validation("--curve is required".into()))?;
        let field = descriptor::parse_field(&load_json(field_s)?)?;
        let curve = descriptor::parse_curve(&field, &load_json(curve_s)?)?;
        let n = self
            .n
            .ok_or_else(|| CliError::Validation("--n is required".into()))?;
        let k = self
            .k
            .ok_or_else(|| CliError::Validation("--k is required".into()))?;
        let d = curve
            .select_eval_set(n)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let twist = match (self.ell, &self.eta) {
            (Some(ell), Some(eta)) => {
                let eta = field
                    .parse_elem(eta)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                Some(TwistKind::Single(SingleTwist { ell, eta }))
            }
            (None, None) => None,
            _ => {
                return Err(CliError::Validation(
                    "--ell and --eta must be given together".into(),
                ))
            }
        };
        let v = match &self.v {
            None => None,
            Some(s) => Some(
                s.split(',')
                    .map(|tok| {
                        field
                            .parse_elem(tok.trim())
                            .map_err(|e| CliError::Validation(e.to_string()))
                    })
                    .collect::<Result<Vec<Fq>, _>>()?,
            ),
        };
        CodeHandle::new(curve, d, k, twist, v).map_err(from_build)
    }
}

pub fn default_budget(flag: Option<u64>) -> u64 {
    if let Some(b) = flag {
        return b;
    }
    std::env::var("TECC_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(lincode::DEFAULT_BUDGET)
}

fn matrix_json(m: &Matrix, style: ElemStyle) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|&x| Value::String(f.format_elem_with(x, style)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn preferred_style(field: &Field) -> ElemStyle {
    if field.order() == 16 {
        ElemStyle::Power
    } else {
        ElemStyle::Canonical
    }
}

fn class_name(c: CodeClass) -> &'static str {
    match c {
        CodeClass::Mds => "MDS",
        CodeClass::Amds => "AMDS",
        CodeClass::Nmds => "NMDS",
        CodeClass::Other => "other",
    }
}

/// Run a parsed command; returns the report for standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let budget = default_budget(cli.budget);
    match &cli.cmd {
        Cmd::Field { field } => {
            let f = descriptor::parse_field(&load_json(field)?)?;
            match cli.format {
                Format::Json => Ok(format!("{}\n", descriptor::field_to_json(&f))),
                Format::Text => {
                    let mut out = format!(
                        "GF({}) = GF({}^{}), defining polynomial coefficients {:?}\n",
                        f.order(),
                        f.characteristic(),
                        f.extension_degree(),
                        f.defining_poly()
                    );
                    if f.extension_degree() > 1 {
                        let els: Vec<String> =
                            f.elements().map(|e| f.format_elem(e)).collect();
                        out.push_str(&format!("elements: {}\n", els.join(", ")));
                    }
                    Ok(out)
                }
            }
        }
        Cmd::Curve { field, curve } => {
            let f = descriptor::parse_field(&load_json(field)?)?;
            let c = descriptor::parse_curve(&f, &load_json(curve)?)?;
            let pts = c.points();
            let group = c
                .group_structure()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            match cli.format {
                Format::Json => {
                    let pt_list: Vec<String> = pts
                        .iter()
                        .map(|p| descriptor::point_text(&c, p))
                        .collect();
                    Ok(format!(
                        "{}\n",
                        json!({
                            "curve": descriptor::curve_to_json(&c),
                            "points": pt_list,
                            "count": pts.len(),
                            "hasse_ok": c.satisfies_hasse(),
                            "group": {"n1": group.n1, "n2": group.n2},
                        })
                    ))
                }
                Format::Text => {
                    let mut out = format!(
                        "{} over GF({}): {} rational points\n",
                        c.equation_text(),
                        f.order(),
                        pts.len()
                    );
                    for p in pts {
                        out.push_str(&descriptor::point_text(&c, p));
                        out.push('\n');
                    }
                    out.push_str(&format!(
                        "group: Z/{} x Z/{}\n",
                        group.n1, group.n2
                    ));
                    Ok(out)
                }
            }
        }
        Cmd::Code { code } => {
            let handle = code.build()?;
            let g = handle.generator().map_err(|e| from_build(e.clone()))?;
            let style = preferred_style(handle.field());
            match cli.format {
                Format::Json => Ok(format!(
                    "{}\n",
                    json!({
                        "descriptor": descriptor::handle_to_json(&handle),
                        "generator": matrix_json(g, style),
                    })
                )),
                Format::Text => Ok(format!(
                    "[{},{}] code, generator:\n{}\n",
                    handle.n(),
                    handle.k(),
                    g.render_text(style)
                )),
            }
        }
        Cmd::Dual { code } => {
            let handle = code.build()?;
            dual_report(&handle, cli.format)
        }
        Cmd::Analyze { code } => {
            let handle = code.build()?;
            analyze_report(&handle, budget, cli.witness_cap, cli.format)
        }
        Cmd::Eta {
            field,
            curve,
            ell,
            points,
        } => {
            let f = descriptor::parse_field(&load_json(field)?)?;
            let c = descriptor::parse_curve(&f, &load_json(curve)?)?;
            let pts: Vec<Point> = points
                .split(';')
                .map(|s| descriptor::parse_point(&c, s))
                .collect::<Result<_, _>>()?;
            let w = teccbuild::eta_of_points(&c, *ell, &pts).map_err(from_build)?;
            let style = preferred_style(&f);
            let (outcome, eta_val) = match &w.outcome {
                teccbuild::EtaOutcome::NoFunction => ("no-function", Value::Null),
                teccbuild::EtaOutcome::NoEta => ("no-eta", Value::Null),
                teccbuild::EtaOutcome::AllEta => ("all-eta", Value::Null),
                teccbuild::EtaOutcome::Eta(e) => (
                    "eta",
                    Value::String(f.format_elem_with(*e, style)),
                ),
            };
            match cli.format {
                Format::Json => Ok(format!(
                    "{}\n",
                    json!({
                        "outcome": outcome,
                        "eta": eta_val,
                        "function": w.func.as_ref().map(|x| x.render(&c)),
                    })
                )),
                Format::Text => {
                    let mut out = format!("outcome: {}", outcome);
                    if let Value::String(e) = &eta_val {
                        out.push_str(&format!(" (eta = {})", e));
                    }
                    out.push('\n');
                    if let Some(func) = &w.func {
                        out.push_str(&format!("vanishing function: {}\n", func.render(&c)));
                    }
                    Ok(out)
                }
            }
        }
        Cmd::Search {
            field,
            curve,
            n,
            k,
            class,
            self_dual,
        } => {
            let f = descriptor::parse_field(&load_json(field)?)?;
            let c = descriptor::parse_curve(&f, &load_json(curve)?)?;
            let class = match class.as_deref() {
                None => None,
                Some("mds") => Some(CodeClass::Mds),
                Some("amds") => Some(CodeClass::Amds),
                Some("nmds") => Some(CodeClass::Nmds),
                Some("other") => Some(CodeClass::Other),
                Some(other) => {
                    return Err(CliError::Validation(format!(
                        "unknown class filter \"{}\"",
                        other
                    )))
                }
            };
            let hits = search_codes(
                &c,
                *n,
                *k,
                SearchFilter {
                    class,
                    self_dual: *self_dual,
                },
                budget,
            )
            .map_err(from_build)?;
            match cli.format {
                Format::Json => {
                    let arr: Vec<Value> = hits
                        .iter()
                        .map(|h| {
                            json!({
                                "descriptor": descriptor::handle_to_json(&h.handle),
                                "n": h.summary.n,
                                "k": h.summary.k,
                                "d": h.summary.d,
                                "class": class_name(h.summary.class),
                                "self_dual": h.summary.self_dual,
                            })
                        })
                        .collect();
                    Ok(format!("{}\n", Value::Array(arr)))
                }
                Format::Text => {
                    let mut out = format!("{} match(es)\n", hits.len());
                    for h in &hits {
                        let tw = h.handle.single_twist().unwrap();
                        out.push_str(&format!(
                            "eta = {}{}: [{},{},{}] {}{}\n",
                            f.format_elem(tw.eta),
                            h.handle
                                .v()
                                .map(|v| {
                                    let vs: Vec<String> =
                                        v.iter().map(|&x| f.format_elem(x)).collect();
                                    format!(", v = ({})", vs.join(","))
                                })
                                .unwrap_or_default(),
                            h.summary.n,
                            h.summary.k,
                            h.summary.d,
                            class_name(h.summary.class),
                            if h.summary.self_dual { ", self-dual" } else { "" },
                        ));
                    }
                    Ok(out)
                }
            }
        }
        Cmd::Schur { code } => {
            let handle = code.build()?;
            let rep = schur_audit(&handle).map_err(from_build)?;
            match cli.format {
                Format::Json => Ok(format!(
                    "{}\n",
                    json!({
                        "n": rep.n,
                        "k": rep.k,
                        "ell": rep.ell,
                        "extreme": rep.extreme,
                        "primal_dim": rep.primal_dim,
                        "primal_sumset_bound": rep.primal_sumset_bound,
                        "dual_dim": rep.dual_dim,
                        "ecc_dim": rep.ecc_dim,
                    })
                )),
                Format::Text => {
                    let mut out = format!(
                        "schur audit: n = {}, k = {}, ell = {}{}\n",
                        rep.n,
                        rep.k,
                        rep.ell,
                        if rep.extreme { " (extreme)" } else { "" }
                    );
                    if let Some(d) = rep.primal_dim {
                        out.push_str(&format!(
                            "twisted code:   dim(C*C) = {} (sumset bound {})\n",
                            d,
                            rep.primal_sumset_bound.unwrap_or(0)
                        ));
                    }
                    if let Some(d) = rep.dual_dim {
                        out.push_str(&format!("dual code:      dim(C*C) = {}\n", d));
                    }
                    out.push_str(&format!("untwisted code: dim(C*C) = {}\n", rep.ecc_dim));
                    Ok(out)
                }
            }
        }
        Cmd::Repro { target } => repro::run_target(target),
    }
}

/// All applicable parity-check routes plus the agreement verdict.
pub fn dual_report(handle: &CodeHandle, format: Format) -> Result<String, CliError> {
    let style = preferred_style(handle.field());
    let f = handle.field().clone();
    let residues: Option<Vec<String>> = handle.residue_vector().ok().map(|rv| {
        rv.gammas()
            .iter()
            .map(|&g| f.format_elem_with(g, style))
            .collect()
    });
    let null = tecc_parity_check_nullspace(handle).map_err(from_build)?;
    let mut routes: Vec<(String, Option<Matrix>, Option<String>)> =
        vec![("nullspace".to_string(), Some(null.clone()), None)];
    if handle.twist().is_none() {
        match teccbuild::ecc_parity_check(handle.curve(), handle.points(), handle.k()) {
            Ok(m) => routes.push(("residue".to_string(), Some(m), None)),
            Err(e) => routes.push(("residue".to_string(), None, Some(e.to_string()))),
        }
    } else if handle.single_twist().is_some() {
        match tecc_parity_check_recursive(handle) {
            Ok((m, _)) => routes.push(("recursion".to_string(), Some(m), None)),
            Err(e) => routes.push(("recursion".to_string(), None, Some(e.to_string()))),
        }
        match tecc_parity_check_closed_form(handle) {
            Ok(m) => routes.push(("closed-form".to_string(), Some(m), None)),
            Err(e) => routes.push(("closed-form".to_string(), None, Some(e.to_string()))),
        }
    }
    let agree = routes
        .iter()
        .filter_map(|(_, m, _)| m.as_ref())
        .all(|m| m.row_space_eq(&null));
    match format {
        Format::Json => {
            let arr: Vec<Value> = routes
                .iter()
                .map(|(name, m, err)| {
                    json!({
                        "route": name,
                        "matrix": m.as_ref().map(|m| matrix_json(m, style)),
                        "error": err,
                    })
                })
                .collect();
            Ok(format!(
                "{}\n",
                json!({"routes": arr, "row_spaces_agree": agree, "residues": residues})
            ))
        }
        Format::Text => {
            let info = tecc::differential::canonical_info(handle.curve());
            let mut out = format!("dual space: {}\n", info.dual_space);
            if let Some(r) = &residues {
                out.push_str(&format!("residues: {}\n", r.join(" ")));
            }
            for (name, m, err) in &routes {
                match (m, err) {
                    (Some(m), _) => {
                        out.push_str(&format!("{} route:\n{}\n", name, m.render_text(style)))
                    }
                    (None, Some(e)) => out.push_str(&format!("{} route: {}\n", name, e)),
                    _ => {}
                }
            }
            out.push_str(&format!("row spaces agree: {}\n", agree));
            Ok(out)
        }
    }
}

/// CodeSummary plus the distance-case witness; for untwisted codes the
/// subset-sum count behind the dichotomy is listed with witnesses up to
/// the configured cap.
pub fn analyze_report(
    handle: &CodeHandle,
    budget: u64,
    witness_cap: usize,
    format: Format,
) -> Result<String, CliError> {
    let g = handle.generator().map_err(|e| from_build(e.clone()))?;
    let summary = lincode::classify(g, budget).map_err(|e| match e {
        lincode::LinError::BudgetExceeded => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    })?;
    let case = if handle.single_twist().is_some() {
        Some(min_distance_class(handle).map_err(from_build)?)
    } else if handle.twist().is_none() {
        Some(
            teccbuild::ecc_distance_class(handle.curve(), handle.points(), handle.k())
                .map_err(from_build)?,
        )
    } else {
        None
    };
    // the exhaustive distance and the group-theoretic case must agree
    if let Some(rep) = &case {
        if rep.d != summary.d {
            return Err(CliError::Validation(format!(
                "internal disagreement: classifier d = {}, exhaustive d = {}",
                rep.d, summary.d
            )));
        }
    }
    let self_dual_cert = if handle.single_twist().is_some() {
        self_dual_check(handle).ok()
    } else {
        None
    };
    let subset_count = if handle.twist().is_none() {
        handle
            .curve()
            .subset_sum_count(
                handle.k(),
                &Point::Infinity,
                handle.points().points(),
                witness_cap,
            )
            .ok()
    } else {
        None
    };
    match format {
        Format::Json => Ok(format!(
            "{}\n",
            json!({
                "n": summary.n,
                "k": summary.k,
                "d": summary.d,
                "defect": summary.defect,
                "class": class_name(summary.class),
                "case": case.as_ref().map(|c| c.case.label()),
                "self_dual": summary.self_dual,
                "self_orthogonal": summary.self_orthogonal,
                "self_dual_certificate": self_dual_cert.as_ref().map(|c| c.verdict),
                "subset_sum_count": subset_count.as_ref().map(|r| r.count),
                "subset_sum_witnesses": subset_count
                    .as_ref()
                    .and_then(|r| r.witnesses.clone()),
            })
        )),
        Format::Text => {
            let mut out = format!(
                "[{},{},{}] code, Singleton defect {}, class {}{}\n",
                summary.n,
                summary.k,
                summary.d,
                summary.defect,
                class_name(summary.class),
                if summary.self_dual { ", self-dual" } else { "" }
            );
            if let Some(rep) = &case {
                out.push_str(&format!("distance case: d = {}\n", rep.case.label()));
                match &rep.case {
                    DistanceCase::NkMinus1 { subset, witness } => {
                        let f = handle.field();
                        let pts: Vec<String> = subset.iter().map(|i| format!("P{}", i + 1)).collect();
                        out.push_str(&format!(
                            "witness: {{{}}} with {}\n",
                            pts.join(","),
                            witness
                                .func
                                .as_ref()
                                .map(|x| x.render(handle.curve()))
                                .unwrap_or_default()
                        ));
                        if let teccbuild::EtaOutcome::Eta(e) = witness.outcome {
                            out.push_str(&format!("witness eta: {}\n", f.format_elem(e)));
                        }
                    }
                    DistanceCase::Nk { subset, func, via_lko } => {
                        let pts: Vec<String> = subset.iter().map(|i| format!("P{}", i + 1)).collect();
                        out.push_str(&format!(
                            "witness: {{{}}} with {}{}\n",
                            pts.join(","),
                            func.render(handle.curve()),
                            if *via_lko { "" } else { " (pole order k+1)" }
                        ));
                    }
                    DistanceCase::Mds => {}
                }
            }
            if let Some(cert) = &self_dual_cert {
                out.push_str(&format!("self-dual certificate: {}\n", cert.verdict));
            }
            if let Some(r) = &subset_count {
                out.push_str(&format!("N(k, O, D) = {}\n", r.count));
                if let Some(w) = &r.witnesses {
                    for subset in w {
                        let labels: Vec<String> =
                            subset.iter().map(|i| format!("P{}", i + 1)).collect();
                        out.push_str(&format!("  {{{}}}\n", labels.join(",")));
                    }
                }
            }
            Ok(out)
        }
    }
}
