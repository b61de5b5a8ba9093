//! Front end for `bilip`: argument parsing, report assembly and rendering.

use std::fmt::Write as _;
use std::path::Path;

use bilip_core::compare::{compare, CompareOptions, ObstructionReport, Scope, Strength};
use bilip_core::cone::{
    infinity_ideal, signature_detail, verify_degree_formula, ConeComponentReport,
    DegreeFormulaCheck, InfinityIdeal, InvariantSignature, Mode,
};
use bilip_core::groebner::Ideal;
use bilip_core::hilbert::HilbertData;
use bilip_core::numeric::{analyze_sheets, SheetParams, SheetReport, TrackDiagnostics};
use bilip_core::poly::{parse_input, squarefree_part, ParsedInput, Polynomial};
use bilip_core::topology::{
    degree_from_h2, h2_of_complement, leray_pages, plane_curve_b1, AbelianGroup, SpectralPage,
};
use bilip_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "bilip", version, about = "Bi-Lipschitz invariants of complex algebraic sets at infinity")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the numeric routines.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cluster tolerance for numeric sheet matching.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Treat ideals with several generators as radical.
    #[arg(long, global = true)]
    pub assume_radical: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    AtInfinity,
    LocalHomogeneous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::AtInfinity => Mode::AtInfinity,
            ModeArg::LocalHomogeneous => Mode::LocalHomogeneous,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, dimension and cone components with relative multiplicities.
    Invariants {
        /// File path, or the polynomial text itself (`;` separates generators).
        input: String,
        #[arg(long, value_enum, default_value = "at-infinity")]
        mode: ModeArg,
    },
    /// Ideal of the tangent cone at infinity and its Hilbert data.
    Cone { input: String },
    /// Look for invariants that tell two sets apart.
    Compare {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "at-infinity")]
        mode: ModeArg,
    },
    /// Count sheets of a hypersurface numerically near each cone component.
    Sheets {
        input: String,
        /// Only report this component (0-based, as listed by `invariants`).
        #[arg(long)]
        component: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 10)]
        ladder: usize,
    },
    /// Leray spectral sequence of a punctured homogeneous surface.
    Topology(TopologyArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct TopologyArgs {
    /// First Betti number of the projectivized surface; needs `--degree`.
    #[arg(long, requires = "degree", required_unless_present = "smooth_plane_degree", conflicts_with = "smooth_plane_degree")]
    pub b1: Option<u64>,
    #[arg(long, allow_negative_numbers = true, requires = "b1", conflicts_with = "smooth_plane_degree")]
    pub degree: Option<i64>,
    /// Cone over a smooth plane curve of this degree.
    #[arg(long, allow_negative_numbers = true)]
    pub smooth_plane_degree: Option<i64>,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::RetriesExhausted { .. } | Error::Numerical(_) => 2,
            Error::Internal(_)
            | Error::RingMismatch(..)
            | Error::InexactDivision
            | Error::SingularMatrix
            | Error::MatrixShape { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub vars: Vec<String>,
    pub generators: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub input: InputEcho,
    pub signature: InvariantSignature,
    pub components: Option<Vec<ConeComponentReport>>,
    pub degree_formula: Option<DegreeFormulaCheck>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeReport {
    pub input: InputEcho,
    pub cone: InfinityIdeal,
    pub hilbert: HilbertData,
    pub components: Option<Vec<ConeComponentReport>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SheetsReport {
    pub input: InputEcho,
    pub degree: usize,
    pub total_sheets: usize,
    pub all_agree: bool,
    pub reports: Vec<SheetReport>,
    pub diagnostics: TrackDiagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub b1: u64,
    pub degree: i64,
    pub e2: SpectralPage,
    pub e_infinity: SpectralPage,
    pub h2: AbelianGroup,
    pub h2_text: String,
    pub recovered_degree: u64,
}

/// Reads `arg` as a file when such a file exists, otherwise as inline text.
pub fn read_input(arg: &str) -> Result<ParsedInput, Failure> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))?
    } else {
        arg.replace(';', "\n")
    };
    parse_input(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{arg}: {}", f.message);
        f
    })
}

fn echo(p: &ParsedInput) -> InputEcho {
    InputEcho {
        vars: p.ring.names().to_vec(),
        generators: p.generators.clone(),
    }
}

fn ideal_of(p: &ParsedInput) -> Result<Ideal, Failure> {
    Ok(Ideal::new(p.generators.clone())?)
}

pub fn invariants(p: &ParsedInput, mode: Mode, assume_radical: bool) -> Result<InvariantsReport, Failure> {
    let detail = signature_detail(&ideal_of(p)?, mode)?;
    let sig = detail.signature;
    let mut caveats = Vec::new();
    let degree_formula = if sig.hypersurface {
        let check = verify_degree_formula(&sig)?;
        if !check.holds {
            return Err(Error::Internal(format!(
                "degree {} differs from the weighted component sum {}",
                check.total_degree, check.weighted_sum
            ))
            .into());
        }
        let f = &p.generators[0];
        if squarefree_part(f)?.normalize() != f.normalize() {
            caveats.push("the equation has repeated factors; its squarefree part defines the set".into());
        }
        if sig.components.is_none() {
            caveats.push("some cone component may split over C; component count over C not certified".into());
        }
        if sig.class_c1_infinity.is_none() {
            caveats.push("class C1 at infinity could not be decided".into());
        }
        Some(check)
    } else {
        caveats.push(if assume_radical {
            "ideal assumed radical (--assume-radical)".into()
        } else {
            "ideal not checked for radicality; degree counts the given ideal".into()
        });
        caveats.push("equidimensionality not certified; only the top dimension is reported".into());
        None
    };
    Ok(InvariantsReport {
        input: echo(p),
        signature: sig,
        components: detail.reports,
        degree_formula,
        caveats,
    })
}

pub fn cone(p: &ParsedInput) -> Result<ConeReport, Failure> {
    let ideal = ideal_of(p)?;
    let detail = signature_detail(&ideal, Mode::AtInfinity)?;
    let cone = if p.generators.len() == 1 {
        detail.cone
    } else {
        infinity_ideal(&ideal)?
    };
    Ok(ConeReport {
        input: echo(p),
        hilbert: cone.hilbert()?,
        cone,
        components: detail.reports,
    })
}

pub fn obstruction(a: &ParsedInput, b: &ParsedInput, mode: Mode, assume_radical: bool) -> Result<ObstructionReport, Failure> {
    let sa = invariants(a, mode, assume_radical)?.signature;
    let sb = invariants(b, mode, assume_radical)?.signature;
    Ok(compare(&sa, &sb, CompareOptions { assume_radical })?)
}

pub fn sheets(p: &ParsedInput, component: Option<usize>, params: &SheetParams) -> Result<SheetsReport, Failure> {
    if p.generators.len() != 1 {
        return Err(Error::NotHypersurface(format!("{} generators given", p.generators.len())).into());
    }
    let analysis = analyze_sheets(&p.generators[0], params)?;
    let mut reports = analysis.reports;
    if let Some(id) = component {
        if id >= reports.len() {
            return Err(Failure::usage(format!(
                "component {id} out of range; the cone has {} components",
                reports.len()
            )));
        }
        reports.retain(|r| r.component_id == id);
    }
    Ok(SheetsReport {
        input: echo(p),
        degree: analysis.degree,
        total_sheets: analysis.total_sheets,
        all_agree: reports.iter().all(|r| r.agrees),
        reports,
        diagnostics: analysis.diagnostics,
    })
}

pub fn topology(args: &TopologyArgs) -> Result<TopologyReport, Failure> {
    let (b1, degree) = match (args.b1, args.degree, args.smooth_plane_degree) {
        (Some(b1), Some(d), None) => (b1, d),
        (None, None, Some(d)) => (plane_curve_b1(d)?, d),
        _ => return Err(Failure::usage("give either --b1 with --degree, or --smooth-plane-degree")),
    };
    let (e2, e_infinity) = leray_pages(b1, degree)?;
    let h2 = h2_of_complement(b1, degree)?;
    Ok(TopologyReport {
        b1,
        degree,
        recovered_degree: degree_from_h2(&h2)?,
        h2_text: h2.to_string(),
        e2,
        e_infinity,
        h2,
    })
}

fn render_components(out: &mut String, reports: &[ConeComponentReport]) {
    for (i, r) in reports.iter().enumerate() {
        let over_c = match r.complex_components {
            Some(1) => "irreducible over C".to_string(),
            Some(c) => format!("{c} components over C"),
            None => "may split over C".to_string(),
        };
        let _ = writeln!(
            out,
            "  [{i}] {}  degree {}  k = {}  ({over_c})",
            r.component_poly, r.component_degree, r.exponent
        );
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("unknown".into(), |x| x.to_string())
}

fn render_signature(out: &mut String, s: &InvariantSignature) {
    let _ = writeln!(out, "dimension      {} (in C^{})", s.set_dim, s.ambient_dim);
    let label = if s.mode == Mode::LocalHomogeneous { "multiplicity" } else { "degree" };
    let _ = writeln!(out, "{label:<15}{}", s.total_degree);
    let _ = writeln!(out, "cone           dim {}, degree {}", s.cone_dim, s.cone_degree);
    if let Some(cs) = &s.components {
        let items: Vec<String> = cs.iter().map(|c| format!("({}, {})", c.degree, c.multiplicity)).collect();
        let _ = writeln!(out, "(deg, k) over C {{{}}}", items.join(", "));
    }
    let _ = writeln!(out, "components     {}", opt(&s.component_count));
    if s.hypersurface {
        let _ = writeln!(out, "class C1       {}", opt(&s.class_c1_infinity));
    }
}

fn caveat_lines(out: &mut String, caveats: &[String]) {
    for c in caveats {
        let _ = writeln!(out, "note: {c}");
    }
}

pub fn render_invariants(r: &InvariantsReport) -> String {
    let mut out = String::new();
    render_signature(&mut out, &r.signature);
    if let Some(reports) = &r.components {
        render_components(&mut out, reports);
    }
    if let Some(c) = &r.degree_formula {
        let _ = writeln!(out, "degree formula {} = {} ok", c.total_degree, c.weighted_sum);
    }
    caveat_lines(&mut out, &r.caveats);
    out
}

pub fn render_cone(r: &ConeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cone at infinity ({})", if r.cone.certified { "certified" } else { "uncertified" });
    for g in &r.cone.generators {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "dim {}, degree {}", r.hilbert.krull_dimension, r.hilbert.degree);
    if let Some(reports) = &r.components {
        render_components(&mut out, reports);
    }
    out
}

pub fn render_compare(r: &ObstructionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "A:");
    render_signature(&mut out, &r.a);
    let _ = writeln!(out, "B:");
    render_signature(&mut out, &r.b);
    let _ = writeln!(out);
    for j in &r.justification {
        let mark = match (j.differs, j.strength) {
            (false, _) => "same",
            (true, Strength::Theorem) => "DIFFERS",
            (true, Strength::Conjectural) => "differs (conjectural)",
        };
        let scope = match j.scope {
            Scope::Intrinsic => "intrinsic",
            Scope::Embedded => "embedded",
        };
        let _ = writeln!(out, "{:<20} {:<22} {}  [{}, {scope}]", j.invariant, mark, j.detail, j.tag);
    }
    let _ = writeln!(out, "\nverdict: {}", r.verdict);
    caveat_lines(&mut out, &r.caveats);
    out
}

pub fn render_sheets(r: &SheetsReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fiber size {} (sheets tracked {})", r.degree, r.total_sheets);
    for s in &r.reports {
        let _ = writeln!(
            out,
            "  [{}] {}  sheets {}  exponent {}  {}",
            s.component_id,
            s.component_poly,
            s.sheet_count,
            s.exponent,
            if s.agrees { "agrees" } else { "DISAGREES" }
        );
    }
    let _ = writeln!(out, "seed {}, attempts {}", r.diagnostics.seed, r.diagnostics.attempts);
    for w in &r.diagnostics.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn render_topology(r: &TopologyReport) -> String {
    let mut out = String::new();
    for (name, page) in [("E2", &r.e2), ("Einf", &r.e_infinity)] {
        let _ = writeln!(out, "{name}:");
        for q in (0..2).rev() {
            let row: Vec<String> = (0..3).map(|p| format!("{:>10}", page.get(p, q).to_string())).collect();
            let _ = writeln!(out, "  q={q} {}", row.join(""));
        }
    }
    let _ = writeln!(out, "H^2 = {}", r.h2_text);
    let _ = writeln!(out, "degree = {}", r.recovered_degree);
    out
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<String, Failure> {
    if json {
        serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure { code: 3, message: e.to_string() })
    } else {
        Ok(text(value))
    }
}

/// Runs one command and returns what to print on stdout.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Invariants { input, mode } => {
            let r = invariants(&read_input(input)?, (*mode).into(), cli.assume_radical)?;
            emit(cli.json, &r, render_invariants)
        }
        Command::Cone { input } => emit(cli.json, &cone(&read_input(input)?)?, render_cone),
        Command::Compare { a, b, mode } => {
            let r = obstruction(&read_input(a)?, &read_input(b)?, (*mode).into(), cli.assume_radical)?;
            emit(cli.json, &r, render_compare)
        }
        Command::Sheets {
            input,
            component,
            eta,
            radius,
            ladder,
        } => {
            let params = SheetParams {
                eta: *eta,
                radius: *radius,
                ladder: *ladder,
                seed: cli.seed,
                cluster_tolerance: cli.tolerance,
                ..SheetParams::default()
            };
            emit(cli.json, &sheets(&read_input(input)?, *component, &params)?, render_sheets)
        }
        Command::Topology(args) => emit(cli.json, &topology(args)?, render_topology),
    }
}
