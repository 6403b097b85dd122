//! The `klr` command-line front end.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fshuffle::{Character, FAlgebra};
use crate::pbwcanon::{self, CanonicalData};
use crate::qhalg::QHAlgebra;
use crate::repchar;
use crate::rootdata::{words_of_weight, ConvexOrder, DynkinKind, KostantPartition, QPlus, Quiver, Word};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for unusable input.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when a verification check fails.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "klr", version, about = "Quiver Hecke algebras, shuffle algebras and canonical bases")]
pub struct Cli {
    /// Quiver description as JSON: {"vertices": [...], "edges": [[from, to, multiplicity], ...]}
    #[arg(long, global = true, conflicts_with = "type_name")]
    pub quiver: Option<PathBuf>,
    /// Built-in quiver: A<n>, D<n>, E6, E7, E8 or A1~ (the affine A1 quiver)
    #[arg(long = "type", global = true, value_name = "NAME")]
    pub type_name: Option<String>,
    /// Weight as comma-separated coefficients, e.g. 1,1,0
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// Reduced expression of the longest Weyl group element, e.g. 1,2,1
    #[arg(long, global = true)]
    pub w0: Option<String>,
    /// Degree cutoff for graded dimension series
    #[arg(long, global = true, default_value_t = 8)]
    pub cutoff: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long = "verify-level", global = true, value_enum, default_value_t = VerifyLevel::Fast)]
    pub verify_level: VerifyLevel,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots in convex order
    Roots,
    /// Words of weight alpha
    Words,
    /// Quantum shuffle product of two words
    Shuffle { left: String, right: String },
    /// Lusztig form on the θ-words of weight alpha
    Gram,
    /// Canonical basis in PBW coordinates and dual canonical characters
    CanonicalBasis,
    /// The decomposition matrix p(q)
    PMatrix,
    /// Proper standard and irreducible characters with decomposition rows
    Characters,
    /// Run the verification suite for the quiver and weight
    Verify,
}

/// Parses a built-in quiver name.
pub fn builtin_quiver(name: &str) -> Result<Quiver> {
    let bad = || Error::Quiver(format!("unknown quiver type {name:?}"));
    let upper = name.trim().to_ascii_uppercase();
    if matches!(upper.as_str(), "A1~" | "A1^(1)" | "AFFINE-A1") {
        return Ok(Quiver::affine_a1());
    }
    let (kind, n) = upper.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    match (kind, n) {
        ("A", 1..) => Ok(Quiver::type_a(n)),
        ("D", 4..) => Ok(Quiver::type_d(n)),
        ("E", 6..=8) => Ok(Quiver::type_e(n)),
        _ => Err(bad()),
    }
}

struct Ctx {
    quiver: Quiver,
    cli: Cli,
}

impl Ctx {
    fn alpha(&self) -> Result<QPlus> {
        let s = self
            .cli
            .alpha
            .as_deref()
            .ok_or_else(|| Error::Parse("--alpha is required for this command".into()))?;
        QPlus::parse(s, self.quiver.rank())
    }

    fn order(&self) -> Result<ConvexOrder> {
        match &self.cli.w0 {
            None => ConvexOrder::default_for(&self.quiver),
            Some(s) => {
                let w: Vec<usize> = s
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad --w0 letter {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                ConvexOrder::new(&self.quiver, &w)
            }
        }
    }

    fn is_type_a(&self) -> bool {
        self.quiver
            .classify()
            .is_ok_and(|c| c.len() == 1 && matches!(c[0].kind, DynkinKind::A(_)))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::Inconsistent(_) => EXIT_VERIFY,
        _ => EXIT_CONFIG,
    }
}

/// Parses arguments, runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load_quiver(cli: &Cli) -> Result<Quiver> {
    match (&cli.quiver, &cli.type_name) {
        (Some(path), _) => {
            let s = std::fs::read_to_string(path)
                .map_err(|e| Error::Quiver(format!("{}: {e}", path.display())))?;
            Quiver::from_json(&s)
        }
        (None, Some(name)) => builtin_quiver(name),
        (None, None) => Err(Error::Quiver("one of --quiver or --type is required".into())),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let quiver = load_quiver(&cli)?;
    let ctx = Ctx { quiver, cli };
    match &ctx.cli.command {
        Command::Roots => cmd_roots(&ctx, out),
        Command::Words => cmd_words(&ctx, out),
        Command::Shuffle { left, right } => cmd_shuffle(&ctx, left, right, out),
        Command::Gram => cmd_gram(&ctx, out),
        Command::CanonicalBasis => cmd_canonical(&ctx, out),
        Command::PMatrix => cmd_pmatrix(&ctx, out),
        Command::Characters => cmd_characters(&ctx, out),
        Command::Verify => cmd_verify(&ctx, out),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<i32> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_roots(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let order = ctx.order()?;
    let q = &ctx.quiver;
    let w0: Vec<String> = order.w0().iter().map(|k| k.to_string()).collect();
    match ctx.cli.format {
        Format::Json => {
            let roots: Vec<Value> = order
                .roots()
                .iter()
                .enumerate()
                .map(|(k, r)| json!({"position": k + 1, "root": r.coord_string(), "name": r.display(q)}))
                .collect();
            emit_json(out, &json!({"w0": w0.join(","), "roots": roots}))
        }
        fmt => {
            if fmt == Format::Tsv {
                writeln!(out, "position\troot\tname").map_err(io)?;
            } else {
                writeln!(out, "w0 = {}", w0.join(",")).map_err(io)?;
            }
            for (k, r) in order.roots().iter().enumerate() {
                writeln!(out, "{}\t{}\t{}", k + 1, r.coord_string(), r.display(q)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_words(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let alpha = ctx.alpha()?;
    let words: Vec<String> = words_of_weight(&alpha)
        .iter()
        .map(|w| ctx.quiver.format_word(w))
        .collect();
    match ctx.cli.format {
        Format::Json => emit_json(out, &json!(words)),
        _ => {
            for w in words {
                writeln!(out, "{w}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_character(ctx: &Ctx, ch: &Character, out: &mut dyn Write) -> Result<i32> {
    let q = &ctx.quiver;
    match ctx.cli.format {
        Format::Json => emit_json(out, &ch.to_json(q)),
        Format::Tsv => {
            writeln!(out, "word\tcoefficient").map_err(io)?;
            for (w, p) in ch.iter() {
                writeln!(out, "{}\t{p}", q.format_word(w)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Format::Text => {
            if !ch.is_empty() {
                writeln!(out, "{}", ch.render(q)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_shuffle(ctx: &Ctx, left: &str, right: &str, out: &mut dyn Write) -> Result<i32> {
    let q = &ctx.quiver;
    let a = q.parse_word(left)?;
    let b = q.parse_word(right)?;
    write_character(ctx, &crate::fshuffle::shuffle(q, &a, &b), out)
}

fn cmd_gram(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let alpha = ctx.alpha()?;
    let q = &ctx.quiver;
    let f = FAlgebra::new(q.clone());
    let words = f.words(&alpha);
    let mut rows = Vec::new();
    for i in &words {
        for j in &words {
            rows.push((q.format_word(i), q.format_word(j), f.gram_entry(i, j)?.to_string()));
        }
    }
    match ctx.cli.format {
        Format::Json => {
            let mut m: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
            for (i, j, v) in rows {
                m.entry(i).or_default().insert(j, v);
            }
            emit_json(out, &json!(m))
        }
        Format::Tsv => {
            writeln!(out, "i\tj\tvalue").map_err(io)?;
            for (i, j, v) in rows {
                writeln!(out, "{i}\t{j}\t{v}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Format::Text => {
            for (i, j, v) in rows {
                writeln!(out, "(θ[{i}], θ[{j}]) = {v}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn canonical_data(ctx: &Ctx) -> Result<(FAlgebra, CanonicalData)> {
    ctx.quiver.classify()?;
    let alpha = ctx.alpha()?;
    let order = ctx.order()?;
    let f = FAlgebra::new(ctx.quiver.clone());
    let data = pbwcanon::compute(&f, &order, &alpha)?;
    Ok((f, data))
}

fn pbw_expansion(data: &CanonicalData, mu: &KostantPartition) -> Vec<(String, String)> {
    data.basis
        .partitions
        .iter()
        .filter_map(|lam| {
            let p = data.p.get(lam, mu);
            (!p.is_zero()).then(|| (lam.coord_key(), p.to_string()))
        })
        .collect()
}

fn render_expansion(terms: &[(String, String)]) -> String {
    terms
        .iter()
        .map(|(k, p)| if p == "1" { format!("r[{k}]") } else { format!("({p})*r[{k}]") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_canonical(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let (_, data) = canonical_data(ctx)?;
    let q = &ctx.quiver;
    match ctx.cli.format {
        Format::Json => {
            let parts: Vec<Value> = data
                .basis
                .partitions
                .iter()
                .map(|lam| {
                    let exp: BTreeMap<String, String> = pbw_expansion(&data, lam).into_iter().collect();
                    json!({
                        "partition": lam.coord_key(),
                        "name": lam.display(q),
                        "canonical": exp,
                        "dual_canonical": data.dual[lam].to_json(q),
                    })
                })
                .collect();
            emit_json(
                out,
                &json!({"alpha": data.basis.alpha.coord_string(), "w0": w0_string(&data.basis.order), "partitions": parts}),
            )
        }
        Format::Tsv => {
            writeln!(out, "partition\tkind\tkey\tcoefficient").map_err(io)?;
            for lam in &data.basis.partitions {
                for (k, p) in pbw_expansion(&data, lam) {
                    writeln!(out, "{}\tb\t{k}\t{p}", lam.coord_key()).map_err(io)?;
                }
                for (w, p) in data.dual[lam].iter() {
                    writeln!(out, "{}\tb*\t{}\t{p}", lam.coord_key(), q.format_word(w)).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Format::Text => {
            for lam in &data.basis.partitions {
                writeln!(out, "λ = {}  [{}]", lam.display(q), lam.coord_key()).map_err(io)?;
                writeln!(out, "  b  = {}", render_expansion(&pbw_expansion(&data, lam))).map_err(io)?;
                writeln!(out, "  b* = {}", data.dual[lam].render_sum(q)).map_err(io)?;
                out.flush().map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn w0_string(order: &ConvexOrder) -> String {
    order.w0().iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_pmatrix(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let (_, data) = canonical_data(ctx)?;
    match ctx.cli.format {
        Format::Json => {
            let mut m: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
            for ((l, mu), p) in &data.p.entries {
                m.entry(l.coord_key()).or_default().insert(mu.coord_key(), p.to_string());
            }
            let keys: Vec<String> = data.p.partitions.iter().map(|l| l.coord_key()).collect();
            emit_json(out, &json!({"partitions": keys, "entries": m}))
        }
        _ => {
            write!(out, "{}", data.p.to_tsv()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_characters(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let (f, data) = canonical_data(ctx)?;
    let q = &ctx.quiver;
    let order = &data.basis.order;
    let mut blocks = Vec::new();
    for lam in &data.basis.partitions {
        let standard = repchar::proper_standard_character(&f, lam, order)?;
        let row = repchar::decompose(&standard, &data.dual)?;
        let row: Vec<(String, String)> = data
            .basis
            .partitions
            .iter()
            .filter_map(|mu| row.get(mu).map(|p| (mu.coord_key(), p.to_string())))
            .collect();
        let hook = if ctx.is_type_a() { Some(repchar::skew_hook(q, lam)?) } else { None };
        match ctx.cli.format {
            Format::Text => {
                writeln!(out, "λ = {}  [{}]", lam.display(q), lam.coord_key()).map_err(io)?;
                if let Some(h) = &hook {
                    for line in h.lines() {
                        writeln!(out, "    {line}").map_err(io)?;
                    }
                }
                writeln!(out, "  standard    : {}", standard.render_sum(q)).map_err(io)?;
                writeln!(out, "  irreducible : {}", data.dual[lam].render_sum(q)).map_err(io)?;
                let r: Vec<String> = row.iter().map(|(k, p)| format!("[{k}] {p}")).collect();
                writeln!(out, "  decomposition: {}", r.join(", ")).map_err(io)?;
                out.flush().map_err(io)?;
            }
            Format::Tsv => {
                if blocks.is_empty() {
                    writeln!(out, "partition\tstandard\tirreducible\tdecomposition").map_err(io)?;
                }
                let r: Vec<String> = row.iter().map(|(k, p)| format!("{k}:{p}")).collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    lam.coord_key(),
                    standard.render_sum(q),
                    data.dual[lam].render_sum(q),
                    r.join(";")
                )
                .map_err(io)?;
            }
            Format::Json => {}
        }
        blocks.push(json!({
            "partition": lam.coord_key(),
            "name": lam.display(q),
            "skew_hook": hook,
            "standard": standard.to_json(q),
            "irreducible": data.dual[lam].to_json(q),
            "decomposition": row.into_iter().collect::<BTreeMap<_, _>>(),
        }));
    }
    if ctx.cli.format == Format::Json {
        return emit_json(out, &json!(blocks));
    }
    Ok(EXIT_OK)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

fn check(name: impl Into<String>, r: Result<String>) -> CheckResult {
    match r {
        Ok(detail) => CheckResult { name: name.into(), status: Status::Pass, detail },
        Err(e) => CheckResult { name: name.into(), status: Status::Fail, detail: e.to_string() },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg.into()))
    }
}

/// Representatives of the homogeneous `~`-classes of weight `alpha`.
fn homogeneous_reps(q: &Quiver, alpha: &QPlus) -> Vec<Word> {
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for w in words_of_weight(alpha) {
        if seen.contains(&w) {
            continue;
        }
        let class = repchar::word_class(q, &w);
        seen.extend(class.iter().cloned());
        if repchar::is_homogeneous(q, &w) {
            reps.push(w);
        }
    }
    reps
}

/// Runs the verification suite for one quiver and weight.
pub fn verify_suite(q: &Quiver, alpha: &QPlus, order: Option<&ConvexOrder>, cutoff: i64, full: bool) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let f = FAlgebra::new(q.clone());
    out.push(check("serre", (|| {
        for i in 0..q.rank() {
            for j in 0..q.rank() {
                if i != j {
                    ensure(f.serre_check(i, j)?.is_zero(), format!("Serre relation for ({i}, {j})"))?;
                }
            }
        }
        Ok(String::new())
    })()));
    let small = alpha.height() <= 3;
    if full || small {
        let h = QHAlgebra::new(q.clone(), alpha.clone());
        out.push(check("relations", h.check_relations().map(|_| String::new())));
        out.push(check("basis-theorem", (|| {
            for i in h.words() {
                for j in h.words() {
                    let a = h.enumerate_basis(i, j, cutoff)?;
                    let b = h.graded_dim_formula(i, j, cutoff)?;
                    ensure(a == b, format!("{} -> {}: {a} vs {b}", q.format_word(i), q.format_word(j)))?;
                }
            }
            Ok(format!("cutoff {cutoff}"))
        })()));
    } else {
        for name in ["relations", "basis-theorem"] {
            out.push(CheckResult { name: name.into(), status: Status::Skip, detail: "needs --verify-level full".into() });
        }
    }
    let reps = homogeneous_reps(q, alpha);
    let mut homog_chars = Vec::new();
    for w in &reps {
        let label = q.format_word(w);
        out.push(check(format!("homogeneous L({label})"), (|| {
            let m = repchar::build_homogeneous(q, w)?;
            let ch = m.character();
            ensure(repchar::parity_check(q, &ch), "parity")?;
            homog_chars.push(ch);
            Ok(format!("dimension {}", m.dim()))
        })()));
        out.push(check(format!("inner-product L({label})"), (|| {
            let ch = repchar::build_homogeneous(q, w)?.character();
            let x = f.from_character(alpha, &ch)?;
            Ok(f.lusztig_form(&x, &x)?.to_string())
        })()));
    }
    let finite = q.classify().is_ok();
    let order = match (finite, order) {
        (true, Some(o)) => Some(o.clone()),
        (true, None) => ConvexOrder::default_for(q).ok(),
        _ => None,
    };
    let names = [
        "pbw-duality",
        "bar-triangularity",
        "canonical-basis",
        "positivity",
        "dual-bar-triangularity",
        "standard-characters",
        "decomposition",
        "homogeneous-irreducibles",
    ];
    let Some(order) = order else {
        for n in names {
            out.push(CheckResult { name: n.into(), status: Status::Skip, detail: "not of finite ADE type".into() });
        }
        return out;
    };
    let basis = match pbwcanon::PbwBasis::new(&f, &order, alpha) {
        Ok(b) => {
            out.push(check(names[0], Ok(format!("{} partitions", b.partitions.len()))));
            b
        }
        Err(e) => {
            out.push(check(names[0], Err(e)));
            return out;
        }
    };
    out.push(check(names[1], pbwcanon::bar_matrix(&f, &basis).map(|_| String::new())));
    let data = (|| {
        let (canonical, p) = pbwcanon::canonical_basis(&f, &basis)?;
        let dual = pbwcanon::dual_canonical_basis(&basis, &p)?;
        let bar = pbwcanon::bar_matrix(&f, &basis)?;
        let d = CanonicalData { basis: basis.clone(), bar, canonical, p, dual };
        d.verify(&f)?;
        Ok(d)
    })();
    let data = match data {
        Ok(d) => {
            out.push(check(names[2], Ok(String::new())));
            d
        }
        Err(e) => {
            out.push(check(names[2], Err(e)));
            return out;
        }
    };
    out.push(check(names[3], ensure(data.p.is_positive(), "negative coefficient in p").map(|_| String::new())));
    out.push(check(names[4], pbwcanon::dual_bar_matrix(&f, &basis).map(|_| String::new())));
    out.push(check(names[5], (|| {
        for lam in &basis.partitions {
            let s = repchar::proper_standard_character(&f, lam, &order)?;
            ensure(s == basis.dual_character(lam), format!("standard character of {}", lam.coord_key()))?;
        }
        Ok(String::new())
    })()));
    out.push(check(names[6], (|| {
        for lam in &basis.partitions {
            let s = repchar::proper_standard_character(&f, lam, &order)?;
            let row = repchar::decompose(&s, &data.dual)?;
            ensure(row == data.p.row(lam), format!("row {}", lam.coord_key()))?;
        }
        Ok(String::new())
    })()));
    out.push(check(names[7], (|| {
        for ch in &homog_chars {
            ensure(data.dual.values().any(|d| d == ch), "homogeneous character is not dual canonical")?;
        }
        Ok(format!("{} classes", homog_chars.len()))
    })()));
    out
}

fn cmd_verify(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let alpha = ctx.alpha()?;
    let order = if ctx.cli.w0.is_some() { Some(ctx.order()?) } else { None };
    let results = verify_suite(
        &ctx.quiver,
        &alpha,
        order.as_ref(),
        ctx.cli.cutoff,
        ctx.cli.verify_level == VerifyLevel::Full,
    );
    match ctx.cli.format {
        Format::Json => {
            let v: Vec<Value> = results
                .iter()
                .map(|r| json!({"check": r.name, "status": r.status.label(), "detail": r.detail}))
                .collect();
            emit_json(out, &json!(v))?;
        }
        fmt => {
            if fmt == Format::Tsv {
                writeln!(out, "check\tstatus\tdetail").map_err(io)?;
            }
            for r in &results {
                if fmt == Format::Tsv {
                    writeln!(out, "{}\t{}\t{}", r.name, r.status.label(), r.detail).map_err(io)?;
                } else if r.detail.is_empty() {
                    writeln!(out, "{} {}", r.status.label(), r.name).map_err(io)?;
                } else {
                    writeln!(out, "{} {}: {}", r.status.label(), r.name, r.detail).map_err(io)?;
                }
            }
        }
    }
    if results.iter().any(|r| r.status == Status::Fail) {
        Ok(EXIT_VERIFY)
    } else {
        Ok(EXIT_OK)
    }
}
