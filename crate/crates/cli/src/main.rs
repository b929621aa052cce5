use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nilmirror::cplx::{classify_realified, identify_underlying, invariants, reduce, ComplexStructureEq};
use nilmirror::dga::{build_f1, classify_f1, DGAlgebra};
use nilmirror::exterior::BasisSpace;
use nilmirror::mirror::{
    closed_two_forms, explicit_mirror_iso, h11_obstruction, symplectic_witness, MainOptions, MainReport,
    MainVerdict, MirrorError, MirrorWitness, ObstructionReport, Verdict,
};
use nilmirror::notation::{self, catalog_lookup, classify};
use nilmirror::tables::{verify_tab_f1, verify_table1, TableReport};
use nilmirror::{LieAlgebra, Matrix, Multivector, Rational, GR};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "nilmirror", version, about = "Gerstenhaber algebras of six-dimensional nilpotent Lie algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// RNG seed for the sampling verbs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Samples per table row.
    #[arg(long, default_value_t = 20, global = true)]
    samples: usize,
    /// Tolerance for the approximate values printed by `invariants`.
    #[arg(long, default_value_t = 1e-12, global = true)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse Salamon shorthand such as "(0,0,0,0,12,13)".
    Parse { input: Option<String> },
    /// Identify an algebra given in shorthand or by catalog name.
    Classify { input: Option<String> },
    /// Invariants of structure equations "ε,ρ,A,B,C,D" or a JSON object.
    Invariants { input: Option<String> },
    /// The degree-one part of DGA(g, J) for structure equations.
    F1 { input: Option<String> },
    /// Decide whether an algebra carries a symplectic form.
    Symplectic { input: Option<String> },
    /// Verify the explicit self-mirror map for h1, h6, h8, h9, h10, or run
    /// the h11 obstruction.
    MirrorCheck {
        name: String,
        /// Comma-separated parameters: (a,b,c,k,l) for h6, (a,b,x,y,u,v) for
        /// h8, (B,C,a1,a2,a3) for h11.
        #[arg(long)]
        params: Option<String>,
    },
    /// Reproduce the table of underlying algebras.
    VerifyTable1,
    /// Reproduce the f¹ table and the (g, f¹) incidence set.
    VerifyTablef1,
    /// Check the self-mirror classification.
    VerifyMain,
}

/// An input problem (exit 1) or a failed verification (exit 2).
enum Failure {
    Input(String),
    Verification(Value, String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Output {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(&cli) {
        Ok(out) => {
            emit(format, &out.json, &out.text);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(json, text)) => {
            emit(format, &json, &text);
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}

fn emit(format: Format, json: &Value, text: &str) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(json).expect("serializable")),
        Format::Text => print!("{text}"),
    }
}

fn read_input(arg: &Option<String>) -> Result<String, Failure> {
    match arg {
        Some(s) => Ok(s.trim().to_string()),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            let s = s.trim().to_string();
            if s.is_empty() {
                return Err(Failure::Input("no input given".into()));
            }
            Ok(s)
        }
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or_else(|| {
        eprintln!("seed: {DEFAULT_SEED} (default)");
        DEFAULT_SEED
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.cmd {
        Cmd::Parse { input } => cmd_parse(&read_input(input)?),
        Cmd::Classify { input } => cmd_classify(&read_input(input)?),
        Cmd::Invariants { input } => cmd_invariants(&read_input(input)?, cli.tol),
        Cmd::F1 { input } => cmd_f1(&read_input(input)?),
        Cmd::Symplectic { input } => cmd_symplectic(&read_input(input)?, cli.seed.unwrap_or(DEFAULT_SEED)),
        Cmd::MirrorCheck { name, params } => cmd_mirror(name, params.as_deref()),
        Cmd::VerifyTable1 => cmd_table(verify_table1(seed(cli), cli.samples), false),
        Cmd::VerifyTablef1 => cmd_table(verify_tab_f1(seed(cli), cli.samples), true),
        Cmd::VerifyMain => {
            let opts = MainOptions { seed: seed(cli), table_samples: cli.samples, ..MainOptions::default() };
            cmd_main(nilmirror::mirror::verify_theorem_main(&opts))
        }
    }
}

/// Shorthand in parentheses, or a catalog name.
fn algebra(input: &str) -> Result<LieAlgebra, Failure> {
    if input.starts_with('(') {
        Ok(notation::parse(input)?)
    } else {
        Ok(catalog_lookup(input)?)
    }
}

fn gr(s: &str) -> Result<GR, Failure> {
    Ok(s.parse::<GR>()?)
}

fn rational(s: &str) -> Result<Rational, Failure> {
    let x = gr(s)?;
    if !x.is_real() {
        return Err(Failure::Input(format!("{s} is not real")));
    }
    Ok(x.re)
}

/// `ε,ρ,A,B,C,D` or a JSON object with those keys (missing keys are 0).
fn structure_eq(input: &str) -> Result<ComplexStructureEq, Failure> {
    let vals: Vec<GR> = if input.starts_with('{') {
        let v: Value = serde_json::from_str(input)?;
        let obj = v.as_object().ok_or_else(|| Failure::Input("expected a JSON object".into()))?;
        let keys = ["epsilon", "rho", "A", "B", "C", "D"];
        for k in obj.keys() {
            if !keys.iter().any(|x| x.eq_ignore_ascii_case(k)) {
                return Err(Failure::Input(format!("unknown key {k:?}")));
            }
        }
        keys.iter()
            .map(|k| match obj.iter().find(|(key, _)| key.eq_ignore_ascii_case(k)).map(|(_, v)| v) {
                None => Ok(GR::zero()),
                Some(Value::String(s)) => gr(s),
                Some(Value::Number(n)) => gr(&n.to_string()),
                Some(other) => Err(Failure::Input(format!("bad value {other}"))),
            })
            .collect::<Result<_, _>>()?
    } else {
        input.trim_matches(|c| c == '(' || c == ')').split(',').map(gr).collect::<Result<_, _>>()?
    };
    let [e, r, a, b, c, d]: [GR; 6] =
        vals.try_into().map_err(|_| Failure::Input("expected six values ε,ρ,A,B,C,D".into()))?;
    Ok(ComplexStructureEq::new(e, r, a, b, c, d)?)
}

fn eq_json(eq: &ComplexStructureEq) -> Value {
    json!({
        "epsilon": eq.epsilon.to_string(),
        "rho": eq.rho.to_string(),
        "A": eq.a.to_string(),
        "B": eq.b.to_string(),
        "C": eq.c.to_string(),
        "D": eq.d.to_string(),
    })
}

fn render_e(a: &Multivector) -> String {
    let names: Vec<String> = (1..=a.dim()).map(|i| format!("e{i}")).collect();
    BasisSpace::new(names).expect("distinct names").render(a)
}

fn salamon_or_render(g: &LieAlgebra) -> String {
    notation::print(g).unwrap_or_else(|_| {
        let parts: Vec<String> = g.differentials().iter().map(render_e).collect();
        format!("({})", parts.join(", "))
    })
}

fn cmd_parse(input: &str) -> Result<Output, Failure> {
    let g = notation::parse(input)?;
    let diffs: Vec<String> = g.differentials().iter().map(render_e).collect();
    let json = json!({
        "dim": g.dim(),
        "salamon": salamon_or_render(&g),
        "differentials": diffs,
        "jacobi": g.check_jacobi(),
    });
    let mut text = format!("dim {}\n", g.dim());
    for (i, d) in diffs.iter().enumerate() {
        text += &format!("d e{} = {d}\n", i + 1);
    }
    text += &format!("jacobi {}\n", g.check_jacobi());
    Ok(Output { json, text })
}

fn cmd_classify(input: &str) -> Result<Output, Failure> {
    let g = algebra(input)?;
    let name = classify(&g)?;
    let fp = g.fingerprint()?;
    let json = json!({
        "name": name,
        "salamon": salamon_or_render(&g),
        "fingerprint": {
            "dim": fp.dim,
            "dual_sequence": fp.dual,
            "lower_central": fp.lcs,
            "upper_central": fp.ucs,
            "derived": fp.derived,
            "betti": fp.betti,
            "exact_two_forms": fp.exact_dim,
            "pencil_rank": fp.pencil_rank,
            "pencil_form_rank": fp.pencil_form_rank,
            "pencil_form_abs_signature": fp.pencil_form_abs_signature,
        },
    });
    let text = format!("{name}\n");
    Ok(Output { json, text })
}

fn cmd_invariants(input: &str, tol: f64) -> Result<Output, Failure> {
    let eq = structure_eq(input)?;
    let red = reduce(&eq);
    let p = invariants(&red)?;
    let underlying = identify_underlying(&eq).map(String::from).unwrap_or_else(|e| format!("error: {e}"));
    let realified = classify_realified(&eq).map(String::from).unwrap_or_else(|e| format!("error: {e}"));
    let approx = p.delta1.to_approx(tol);
    let json = json!({
        "input": eq_json(&eq),
        "reduced": eq_json(&red),
        "n": [p.n.0, p.n.1],
        "delta1": p.delta1.to_string(),
        "delta1_approx": [approx.re, approx.im],
        "delta2": GR::from_rational(p.delta2.clone()).to_string(),
        "d": p.d_span,
        "rank_x": p.rank_x,
        "sign_abs_delta1_sq_minus_delta2_sq": p.sign_disc,
        "abelian": p.abelian,
        "underlying": underlying,
        "classify_realified": realified,
    });
    let text = format!(
        "reduced  {red}\nn        ({}, {})\nΔ1       {}\nΔ2       {}\nd        {}\nrank X   {}\nsign     {}\nabelian  {}\ng        {underlying}\n",
        p.n.0,
        p.n.1,
        p.delta1,
        GR::from_rational(p.delta2.clone()),
        p.d_span,
        p.rank_x,
        p.sign_disc,
        p.abelian
    );
    Ok(Output { json, text })
}

fn dga_tables(dga: &DGAlgebra) -> (Vec<String>, Vec<String>) {
    let space = BasisSpace::new(dga.names().to_vec()).expect("distinct names");
    let n = dga.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = Multivector::from_vector(dga.bracket_table(i, j));
            if !v.is_zero() {
                brackets.push(format!("[{}, {}] = {}", dga.names()[i], dga.names()[j], space.render(&v)));
            }
        }
    }
    let diffs = (0..n)
        .filter(|&i| !dga.d_table()[i].is_zero())
        .map(|i| format!("d {} = {}", dga.names()[i], space.render(&dga.d_table()[i])))
        .collect();
    (brackets, diffs)
}

fn cmd_f1(input: &str) -> Result<Output, Failure> {
    let eq = structure_eq(input)?;
    let dga = build_f1(&eq)?;
    let class = classify_f1(&eq).map(String::from).unwrap_or_else(|e| format!("error: {e}"));
    let underlying = identify_underlying(&eq).map(String::from).unwrap_or_else(|e| format!("error: {e}"));
    let ax = dga.check_axioms();
    let (brackets, diffs) = dga_tables(&dga);
    let json = json!({
        "eq": eq_json(&eq),
        "f1": class,
        "underlying": underlying,
        "brackets": brackets,
        "differentials": diffs,
        "axioms": {
            "commutativity": ax.commutativity,
            "jacobi": ax.jacobi,
            "leibniz": ax.leibniz,
            "compatibility": ax.compatibility,
            "d_squared": ax.d_squared,
        },
    });
    let mut text = format!("f1 ≅ {class}   g = {underlying}\n");
    for l in brackets.iter().chain(&diffs) {
        text += l;
        text.push('\n');
    }
    text += &format!("axioms {}\n", if ax.all_pass() { "pass" } else { "FAIL" });
    if !ax.all_pass() {
        return Err(Failure::Verification(json, text));
    }
    Ok(Output { json, text })
}

fn cmd_symplectic(input: &str, seed: u64) -> Result<Output, Failure> {
    let g = algebra(input)?;
    if g.dim() != 6 {
        return Err(Failure::Input("symplectic check needs a six-dimensional algebra".into()));
    }
    let closed = closed_two_forms(&g).len();
    let witness = symplectic_witness(&g, seed);
    let w = witness.as_ref().map(|s| render_e(s.form()));
    let json = json!({
        "closed_two_forms": closed,
        "exists": witness.is_some(),
        "witness": w,
    });
    let text = match &w {
        Some(w) => format!("symplectic: {w}\n"),
        None => format!("no symplectic form ({closed} closed 2-forms, all degenerate)\n"),
    };
    Ok(Output { json, text })
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

fn witness_output(w: &MirrorWitness) -> Result<Output, Failure> {
    let verified = w.verify()?;
    let coframe: Vec<String> = w.coframe.iter().map(render_e).collect();
    let images: Vec<String> = (0..6)
        .map(|i| format!("{} -> {}", nilmirror::dga::F1_NAMES[i], render_e(&Multivector::from_vector(&w.map.col(i)))))
        .collect();
    let json = json!({
        "algebra": w.name,
        "eq": eq_json(&w.eq),
        "coframe": coframe,
        "omega": render_e(w.omega.form()),
        "map": matrix_json(&w.map),
        "images": images,
        "verified": verified,
    });
    let mut text = format!("{}: Ω = {}\n", w.name, render_e(w.omega.form()));
    for l in &images {
        text += &format!("  {l}\n");
    }
    text += &format!("verified {verified}\n");
    if !verified {
        return Err(Failure::Verification(json, text));
    }
    Ok(Output { json, text })
}

fn obstruction_output(r: &ObstructionReport) -> Result<Output, Failure> {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| json!({"label": s.label, "residual": s.residual.render(&r.variables), "holds": s.holds}))
        .collect();
    let verdict = match r.verdict {
        Verdict::Contradiction => "contradiction",
        Verdict::Inconclusive => "inconclusive",
    };
    let json = json!({
        "steps": steps,
        "forced": r.forced.render(&r.variables),
        "coefficient": r.coefficient.to_string(),
        "certificate_holds": r.certificate_holds,
        "verdict": verdict,
    });
    let mut text = String::new();
    for s in &r.steps {
        text += &format!("{} {}: {} = 0\n", if s.holds { "ok " } else { "NO " }, s.label, s.residual.render(&r.variables));
    }
    text += &format!("forced: {} = 0\nverdict: {verdict}\n", r.forced.render(&r.variables));
    if r.verdict != Verdict::Contradiction {
        return Err(Failure::Verification(json, text));
    }
    Ok(Output { json, text })
}

fn cmd_mirror(name: &str, params: Option<&str>) -> Result<Output, Failure> {
    let split = |s: &str| s.split(',').map(|x| x.trim().to_string()).collect::<Vec<_>>();
    if name == "h11" {
        let p = split(params.unwrap_or("3,2,i,0,i"));
        if p.len() != 5 {
            return Err(Failure::Input("h11 takes B,C,a1,a2,a3".into()));
        }
        let v: Vec<GR> = p.iter().map(|x| gr(x)).collect::<Result<_, _>>()?;
        let r = h11_obstruction(&v[0], &v[1], &v[2], &v[3], &v[4])?;
        return obstruction_output(&r);
    }
    let default = match name {
        "h6" => "0,1,0,0,1",
        "h8" => "0,1,0,0,0,1",
        _ => "",
    };
    let p: Vec<Rational> = match params.unwrap_or(default) {
        "" => Vec::new(),
        s => split(s).iter().map(|x| rational(x)).collect::<Result<_, _>>()?,
    };
    match explicit_mirror_iso(name, &p) {
        Ok(w) => witness_output(&w),
        Err(MirrorError::NotVerified) => Err(Failure::Verification(json!({"algebra": name, "verified": false}), format!("{name}: map does not verify\n"))),
        Err(e) => Err(e.into()),
    }
}

fn table_json(r: &TableReport, incidence: bool) -> (Value, String, bool) {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            let failures: Vec<Value> = row
                .failures
                .iter()
                .map(|f| json!({"eq": eq_json(&f.eq), "expected": f.expected, "got": f.got}))
                .collect();
            json!({"row": row.row, "label": row.label, "samples": row.samples, "failures": failures})
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("rows".into(), Value::Array(rows));
    let mut text = String::new();
    for row in &r.rows {
        text += &format!(
            "{:>2}  {:<24} {:>3} samples  {}\n",
            row.row,
            row.label,
            row.samples,
            if row.failures.is_empty() { "ok".to_string() } else { format!("{} FAILED", row.failures.len()) }
        );
    }
    let mut ok = r.all_pass();
    if incidence {
        let pairs: Vec<Value> = r.incidence.iter().map(|(g, f)| json!([g, f])).collect();
        obj.insert("incidence".into(), Value::Array(pairs));
        obj.insert("incidence_matches".into(), Value::Bool(r.incidence_matches()));
        text += &format!("incidence set {}\n", if r.incidence_matches() { "matches" } else { "DIFFERS" });
        ok &= r.incidence_matches();
    }
    obj.insert("pass".into(), Value::Bool(ok));
    (Value::Object(obj), text, ok)
}

fn cmd_table(r: TableReport, incidence: bool) -> Result<Output, Failure> {
    let (json, text, ok) = table_json(&r, incidence);
    if !ok {
        return Err(Failure::Verification(json, text));
    }
    Ok(Output { json, text })
}

fn cmd_main(r: MainReport) -> Result<Output, Failure> {
    let label = |v: MainVerdict| match v {
        MainVerdict::SelfMirror => "self-mirror",
        MainVerdict::Obstructed => "obstructed",
        MainVerdict::Excluded => "excluded",
        MainVerdict::Failed => "FAILED",
    };
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|x| json!({"algebra": x.algebra, "verdict": label(x.verdict), "samples": x.samples, "detail": x.detail}))
        .collect();
    let ok = r.all_pass();
    let json = json!({"rows": rows, "pass": ok});
    let mut text = String::new();
    for x in &r.rows {
        text += &format!("{:<4} {:<12} {:>4}  {}\n", x.algebra, label(x.verdict), x.samples, x.detail);
    }
    if !ok {
        return Err(Failure::Verification(json, text));
    }
    Ok(Output { json, text })
}
