//! Command-line front end. Every subcommand is a thin adapter over the
//! library; no domain logic lives here.
//!
//! A flat `key = value` config file (path in `KNOTKIT_CONFIG`) provides
//! defaults for catalog bounds and budgets; flags override it. `--json`
//! emits schema-versioned machine-readable output.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::covers::{cover_group, cover_homology, CoverKind};
use crate::diagram::{parse_diagram, DiagramFormat, LinkDiagram};
use crate::fpgroups::{simplify, wirtinger, DEFAULT_EFFORT};
use crate::montesinos::{
    fiber_intersection_number, mont_double_cover, mont_equivalent, mont_geom_type, GeomType,
    MontesinosForm,
};
use crate::quotients::{fingerprint, first_distinguishing_group, DEFAULT_CEILING};
use crate::recognize::{build_reference, recognize, Budget, RefSpec, Verdict, Witness};
use crate::seifert::{normalize_gluing, GluingMatrix};
use crate::twobridge::{tb_double_cover, tb_equivalent, tb_geom_type, SchubertForm, TbGeomType};

#[derive(Parser)]
#[command(name = "knotkit", version, about = "computational knot theory toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide isotopy of two Schubert forms, e.g. `b(8,3) b(8,-5)`
    ClassifyTb {
        form1: String,
        form2: String,
        /// Compare as oriented links (congruence mod 2*alpha)
        #[arg(long)]
        oriented: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide isotopy of two Montesinos forms, e.g. `"M(1/2,-1/3,-1/6)"`
    ClassifyMont {
        form1: String,
        form2: String,
        #[command(flatten)]
        common: Common,
    },
    /// Geometric type of a form: seifert, hyperbolic, or graph
    GeomType {
        form: String,
        #[command(flatten)]
        common: Common,
    },
    /// Double branched cover: lens space or Seifert invariants
    DoubleCover {
        form: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cover presentations and homology from a diagram file
    Covers {
        /// balanced2 | cyclic | branched2 | branched-cyclic
        #[arg(long)]
        kind: String,
        /// Cover degree for the cyclic kinds
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        diagram: PathBuf,
        /// Print only the abelian invariants
        #[arg(long)]
        homology: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Quotient fingerprint of a diagram's link group
    Fingerprint {
        #[arg(long)]
        diagram: PathBuf,
        /// Catalog order bound
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a finite quotient separating two diagrams' groups
    Distinguish {
        diagram1: PathBuf,
        diagram2: PathBuf,
        #[arg(long)]
        max_order: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a diagram represents a reference knot
    Recognize {
        /// Reference form, e.g. `b(3,1)` or `"M(-1/2,1/3,1/5)"`
        #[arg(long)]
        reference: String,
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        max_seconds: Option<u64>,
        #[arg(long)]
        max_stage: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Normalize a torus gluing matrix into (1 0; n 1)
    NormalizeGluing {
        /// Matrix entries a,b,c,d
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
}

/// Flat key = value configuration, loaded from `KNOTKIT_CONFIG`.
#[derive(Default, Clone)]
struct Config {
    order_bound: Option<usize>,
    search_ceiling: Option<u128>,
    max_stage: Option<u32>,
    wall_clock_secs: Option<u64>,
    order_base: Option<usize>,
    order_step: Option<usize>,
    crossing_step: Option<u32>,
    node_cap: Option<usize>,
}

impl Config {
    fn load() -> Result<Config, String> {
        let Some(path) = std::env::var_os("KNOTKIT_CONFIG") else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("config line {}: expected key = value", lineno + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            macro_rules! set {
                ($field:ident) => {
                    cfg.$field = Some(value.parse().map_err(|e| {
                        format!("config line {}: bad value for {key}: {e}", lineno + 1)
                    })?)
                };
            }
            match key {
                "order_bound" => set!(order_bound),
                "search_ceiling" => set!(search_ceiling),
                "max_stage" => set!(max_stage),
                "wall_clock_secs" => set!(wall_clock_secs),
                "order_base" => set!(order_base),
                "order_step" => set!(order_step),
                "crossing_step" => set!(crossing_step),
                "node_cap" => set!(node_cap),
                other => return Err(format!("config line {}: unknown key {other}", lineno + 1)),
            }
        }
        Ok(cfg)
    }

    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(v) = self.max_stage {
            b.max_stage = v;
        }
        if let Some(v) = self.wall_clock_secs {
            b.wall_clock = Some(std::time::Duration::from_secs(v));
        }
        if let Some(v) = self.order_base {
            b.order_base = v;
        }
        if let Some(v) = self.order_step {
            b.order_step = v;
        }
        if let Some(v) = self.crossing_step {
            b.crossing_step = v;
        }
        if let Some(v) = self.node_cap {
            b.node_cap = v;
        }
        if let Some(v) = self.search_ceiling {
            b.ceiling = v;
        }
        b
    }
}

fn load_diagram(path: &PathBuf) -> Result<LinkDiagram, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_diagram(&text, DiagramFormat::Pd).map_err(|e| e.to_string())
}

/// Either normal form, for the classification subcommands.
enum Form {
    Tb(SchubertForm),
    Mont(MontesinosForm),
}

fn parse_form(text: &str) -> Result<Form, String> {
    if let Ok(s) = SchubertForm::parse(text) {
        return Ok(Form::Tb(s));
    }
    MontesinosForm::parse(text)
        .map(Form::Mont)
        .map_err(|e| e.to_string())
}

pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = match Config::load() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match dispatch(cli.command, &config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(json_mode: bool, payload: serde_json::Value, human: String) {
    if json_mode {
        println!("{payload}");
    } else {
        println!("{human}");
    }
}

fn dispatch(cmd: Command, config: &Config) -> Result<i32, String> {
    match cmd {
        Command::ClassifyTb {
            form1,
            form2,
            oriented,
            common,
        } => {
            let s1 = SchubertForm::parse(&form1).map_err(|e| e.to_string())?;
            let s2 = SchubertForm::parse(&form2).map_err(|e| e.to_string())?;
            let eq = tb_equivalent(&s1, &s2, oriented);
            emit(
                common.json,
                json!({"schema": 1, "equivalent": eq, "oriented": oriented}),
                if eq { "equivalent" } else { "inequivalent" }.into(),
            );
            Ok(0)
        }
        Command::ClassifyMont {
            form1,
            form2,
            common,
        } => {
            let f1 = MontesinosForm::parse(&form1).map_err(|e| e.to_string())?;
            let f2 = MontesinosForm::parse(&form2).map_err(|e| e.to_string())?;
            let eq = mont_equivalent(&f1, &f2).map_err(|e| e.to_string())?;
            emit(
                common.json,
                json!({"schema": 1, "equivalent": eq}),
                if eq { "equivalent" } else { "inequivalent" }.into(),
            );
            Ok(0)
        }
        Command::GeomType { form, common } => {
            let label = match parse_form(&form)? {
                Form::Tb(s) => match tb_geom_type(&s) {
                    TbGeomType::Seifert => "seifert",
                    TbGeomType::Hyperbolic => "hyperbolic",
                },
                Form::Mont(m) => {
                    if m.len() == 1 {
                        let t = m.tangles()[0];
                        let s =
                            SchubertForm::new(*t.numer(), *t.denom()).map_err(|e| e.to_string())?;
                        match tb_geom_type(&s) {
                            TbGeomType::Seifert => "seifert",
                            TbGeomType::Hyperbolic => "hyperbolic",
                        }
                    } else {
                        match mont_geom_type(&m).map_err(|e| e.to_string())? {
                            GeomType::Seifert => "seifert",
                            GeomType::Hyperbolic => "hyperbolic",
                            GeomType::Graph => "graph",
                        }
                    }
                }
            };
            emit(
                common.json,
                json!({"schema": 1, "geom_type": label}),
                label.into(),
            );
            Ok(0)
        }
        Command::DoubleCover { form, common } => match parse_form(&form)? {
            Form::Tb(s) => {
                let l = tb_double_cover(&s);
                emit(
                    common.json,
                    json!({"schema": 1, "lens": {"p": l.p, "q": l.q}}),
                    l.to_string(),
                );
                Ok(0)
            }
            Form::Mont(m) => {
                let s = mont_double_cover(&m);
                let pairs: Vec<[i64; 2]> =
                    s.pairs.iter().map(|f| [*f.numer(), *f.denom()]).collect();
                let e = s.euler_number();
                let fiber = fiber_intersection_number(&m).ok();
                emit(
                    common.json,
                    json!({
                        "schema": 1,
                        "seifert": {"pairs": pairs},
                        "euler": [*e.numer(), *e.denom()],
                        "homology_order": s.homology_order(),
                        "fiber_intersection": fiber,
                    }),
                    format!("{s}, euler {}/{}", e.numer(), e.denom()),
                );
                Ok(0)
            }
        },
        Command::Covers {
            kind,
            r,
            diagram,
            homology,
            common,
        } => {
            let k = CoverKind::parse(&kind, r).ok_or_else(|| {
                format!("unknown cover kind `{kind}` (the cyclic kinds need --r)")
            })?;
            let d = load_diagram(&diagram)?;
            let p = wirtinger(&d);
            if homology {
                let h = cover_homology(&p, k).map_err(|e| e.to_string())?;
                emit(
                    common.json,
                    json!({
                        "schema": 1,
                        "free_rank": h.free_rank,
                        "torsion": h.torsion_u64(),
                    }),
                    format!("{h}"),
                );
            } else {
                let g = cover_group(&p, k).map_err(|e| e.to_string())?;
                emit(
                    common.json,
                    json!({
                        "schema": 1,
                        "generators": g.generators,
                        "relators": g.relators,
                        "meridians": g.meridians,
                    }),
                    format!("{g}"),
                );
            }
            Ok(0)
        }
        Command::Fingerprint {
            diagram,
            bound,
            common,
        } => {
            let d = load_diagram(&diagram)?;
            let bound = bound.or(config.order_bound).unwrap_or(12);
            let ceiling = config.search_ceiling.unwrap_or(DEFAULT_CEILING);
            let p = simplify(&wirtinger(&d), DEFAULT_EFFORT);
            let fp = fingerprint(&p, bound, ceiling);
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string(&fp).expect("fingerprint serializes")
                );
            } else {
                for e in &fp.entries {
                    match (e.hom, e.epi) {
                        (Some(h), Some(ep)) => {
                            println!("{:<8} hom {:<8} epi {}", e.group, h, ep)
                        }
                        _ => println!("{:<8} (skipped: ceiling)", e.group),
                    }
                }
            }
            Ok(0)
        }
        Command::Distinguish {
            diagram1,
            diagram2,
            max_order,
            common,
        } => {
            let d1 = load_diagram(&diagram1)?;
            let d2 = load_diagram(&diagram2)?;
            let bound = max_order.or(config.order_bound).unwrap_or(24);
            let ceiling = config.search_ceiling.unwrap_or(DEFAULT_CEILING);
            let p1 = simplify(&wirtinger(&d1), DEFAULT_EFFORT);
            let p2 = simplify(&wirtinger(&d2), DEFAULT_EFFORT);
            match first_distinguishing_group(&p1, &p2, bound, ceiling) {
                Some(sep) => {
                    emit(
                        common.json,
                        json!({"schema": 1, "distinguished": true, "witness": sep}),
                        format!(
                            "distinguished by {} (order {}): hom/epi {:?} vs {:?}",
                            sep.group, sep.order, sep.counts1, sep.counts2
                        ),
                    );
                    Ok(0)
                }
                None => {
                    emit(
                        common.json,
                        json!({"schema": 1, "distinguished": false, "order_bound": bound}),
                        format!("no separating quotient of order <= {bound}"),
                    );
                    Ok(0)
                }
            }
        }
        Command::Recognize {
            reference,
            diagram,
            max_seconds,
            max_stage,
            common,
        } => {
            let spec = RefSpec::parse(&reference).map_err(|e| e.to_string())?;
            let re = build_reference(&spec).map_err(|e| e.to_string())?;
            let d = load_diagram(&diagram)?;
            let mut budget = config.budget();
            if let Some(s) = max_seconds {
                budget.wall_clock = Some(std::time::Duration::from_secs(s));
            }
            if let Some(s) = max_stage {
                budget.max_stage = s;
            }
            let verdict = recognize(&d, &re, &budget);
            let code = verdict.exit_code();
            let human = match &verdict {
                Verdict::RepresentsK { certificate, .. } => format!(
                    "represents {} (certificate: {} moves)",
                    re.label,
                    certificate.len()
                ),
                Verdict::RepresentsMirrorOnly { certificate } => format!(
                    "represents only the mirror of {} (certificate: {} moves)",
                    re.label,
                    certificate.len()
                ),
                Verdict::DoesNotRepresent { witness } => match witness {
                    Witness::Group(sep) => format!(
                        "does not represent {}: {} separates with hom/epi {:?} vs {:?}",
                        re.label, sep.group, sep.counts1, sep.counts2
                    ),
                    Witness::Invariant { name, detail } => format!(
                        "does not represent {}: {} differs ({detail})",
                        re.label, name
                    ),
                },
                Verdict::Inconclusive { stages_spent } => {
                    format!("inconclusive after {stages_spent} stages")
                }
            };
            emit(
                common.json,
                json!({"schema": 1, "reference": re.label, "verdict": verdict}),
                human,
            );
            Ok(code)
        }
        Command::NormalizeGluing { matrix, n, common } => {
            let parts: Vec<i64> = matrix
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("bad --matrix: {e}"))?;
            let [a, b, c, d] = parts[..] else {
                return Err("--matrix needs four entries a,b,c,d".into());
            };
            let m = GluingMatrix { a, b, c, d };
            let (q1, q2) = normalize_gluing(&m, n).map_err(|e| e.to_string())?;
            let product = q2.matrix().mul(&m).mul(&q1.matrix());
            emit(
                common.json,
                json!({
                    "schema": 1,
                    "q1": [[q1.x, q1.z], [0, q1.y]],
                    "q2": [[q2.x, q2.z], [0, q2.y]],
                    "product": [[product.a, product.b], [product.c, product.d]],
                }),
                format!(
                    "q1 = ({} {}; 0 {}), q2 = ({} {}; 0 {}), q2*m*q1 = ({} {}; {} {})",
                    q1.x, q1.z, q1.y, q2.x, q2.z, q2.y, product.a, product.b, product.c, product.d
                ),
            );
            Ok(0)
        }
    }
}
