//! Command-line front end. Every command prints one JSON document tagged with
//! `"schema": "invgen/1"` (or a plain rendering with `--format text`).
//!
//! Exit codes: `0` success, `1` domain error (the error is printed as JSON), `2` usage error.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::matgrp::scalar::{parse_rational, Rational};
use crate::matgrp::{
    borel_conjugator, exp_sl2, extend_free_tuple, invariant_plane, lie_classify, sl2_classify, spectrum_of_words,
    BorelBackend, ExtendOptions, Mat2, MatError, MatOps, Sl2LieElem, DEFAULT_SPECTRUM_CAP,
};
use crate::perm::{invariably_generates, named_group, FiniteGroup, GroupAction, GroupSpec, Perm, DEFAULT_LEAF_BUDGET};
use crate::suite;
use crate::treeaut::{
    classify, conjugacy_test, in_family_h, in_family_p1, in_family_pn, in_family_ts, make_edge_flip,
    make_hyperbolic_translation, make_spherically_transitive, make_type_np, orbital_type, phi_v1, phi_vn,
    random_stabilizer_element, sphere_orbit_sizes, stabilizer_approximation, translation_length,
    vertex_transitivity_witness, Addr, Supply, TreeAut, TreeError, TypeSpec,
};
use crate::words::{free_up_to, FreenessOptions, PermOps, DEFAULT_WORD_CAP};

pub const SCHEMA: &str = "invgen/1";

/// Largest group the CLI will enumerate.
const GROUP_CAP: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "invgen", version, about = "Invariable generation toolkit")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite permutation groups.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Words and bounded freeness certificates.
    #[command(subcommand)]
    Words(WordsCmd),
    /// SL2(R) and its Lie algebra.
    #[command(subcommand)]
    Sl2(Sl2Cmd),
    /// Automorphisms of the regular tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Batch runners.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// A corpus name (S3, A5, Q8, ...) or a JSON file `{"degree": n, "generators": [...]}`.
    #[arg(long)]
    pub group: String,
}

#[derive(Subcommand, Debug)]
pub enum PermCmd {
    /// Does the set invariably generate the group?
    IgCheck {
        #[command(flatten)]
        group: GroupArg,
        /// Permutations separated by `;`, e.g. "(0 1);(0 1 2)".
        #[arg(long)]
        set: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Is the subgroup proper with conjugates covering the group?
    Wiegold {
        #[command(flatten)]
        group: GroupArg,
        /// Subgroup generators separated by `;` (empty for the trivial subgroup).
        #[arg(long, default_value = "")]
        subgroup: String,
    },
    /// A fixed-point-free element of a transitive action.
    Jordan {
        #[command(flatten)]
        group: GroupArg,
        /// Act on the cosets of this subgroup instead of the natural action.
        #[arg(long, conflicts_with = "regular")]
        subgroup: Option<String>,
        #[arg(long)]
        regular: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordsCmd {
    /// Checks that no reduced word of length <= L in the tuple is trivial.
    FreeCert {
        /// Matrices `[[a,b],[c,d]]`, or permutations with `--degree`, separated by `;`.
        #[arg(long)]
        tuple: String,
        #[arg(long, short = 'L')]
        length: usize,
        /// Read the tuple as permutations of this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Compare matrices in SL2 rather than PSL2.
        #[arg(long)]
        linear: bool,
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Double,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BorelField {
    Real,
    Complex,
}

#[derive(Subcommand, Debug)]
pub enum Sl2Cmd {
    /// Conjugacy class of g in SL2 with a conjugator to the canonical form.
    Classify {
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value_t = Backend::Exact)]
        backend: Backend,
    },
    /// Adjoint orbit of X = (a b; c -a) in sl2, optionally exp(tX).
    Lie {
        /// `a,b,c` as rationals.
        #[arg(long)]
        elem: String,
        #[arg(long)]
        exp: Option<f64>,
    },
    /// Eigenvalues of all reduced words of length <= L.
    Spectrum {
        #[arg(long)]
        generators: String,
        #[arg(long, short = 'L')]
        length: usize,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Conjugates a 2x2 matrix to upper-triangular form, or finds an invariant plane of an n x n one.
    Borel {
        #[arg(long, required_unless_present = "plane")]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = BorelField::Real)]
        backend: BorelField,
        /// An n x n real matrix `[[...],...]`.
        #[arg(long, conflicts_with = "matrix")]
        plane: Option<String>,
    },
    /// Finds g such that the tuple with g^-1 c g appended has no short relation.
    ExtendFree {
        /// Existing tuple, `;`-separated (may be empty).
        #[arg(long, default_value = "")]
        tuple: String,
        #[arg(long)]
        target: String,
        #[arg(long, short = 'L', default_value_t = 8)]
        length: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        height: i64,
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Args, Debug)]
pub struct ElementArg {
    /// A JSON file, or an expression such as `translation^2`, `odometer@12`, `flip`,
    /// `type:1:12|3@2`, `type:2:12@e:1`; factors joined by `*` (rightmost acts first).
    #[arg(long)]
    pub element: String,
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Elliptic / inversion / hyperbolic.
    Classify {
        #[command(flatten)]
        element: ElementArg,
        #[arg(long, short = 'd', default_value_t = 3)]
        valence: usize,
        #[arg(long)]
        radius: Option<usize>,
        /// Also report membership in the element families.
        #[arg(long)]
        families: bool,
    },
    /// Orbital type, or local actions about a vertex.
    Orbital {
        #[command(flatten)]
        element: ElementArg,
        #[arg(long, short = 'd', default_value_t = 3)]
        valence: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Report phi_{v,1} and phi_{v,n} for n <= radius about this vertex instead.
        #[arg(long)]
        local: Option<String>,
    },
    /// Conjugacy test by class, translation length and orbital type.
    Conjugacy {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, short = 'd', default_value_t = 3)]
        valence: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// A word in the canonical translation and odometer moving v to x.
    GenVertex {
        #[arg(long, default_value = "e")]
        v: String,
        #[arg(long)]
        x: String,
        #[arg(long, short = 'd', default_value_t = 3)]
        valence: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
    },
    /// A word in the canonical supply agreeing with a stabilizer element on B(v, n).
    GenStab {
        #[arg(long, default_value = "e")]
        v: String,
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, short = 'd', default_value_t = 3)]
        valence: usize,
        /// Element to approximate; a random stabilizer element is drawn when absent.
        #[arg(long, required_unless_present = "seed")]
        element: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    /// Runs the acceptance criteria.
    Acceptance {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall-clock times (output is then not reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
}

/// A domain error, serialized as `{"module", "kind", "message"}`.
#[derive(Debug)]
pub struct CliError {
    pub module: &'static str,
    pub kind: String,
    pub message: String,
}

impl CliError {
    fn new(module: &'static str, err: impl std::fmt::Debug + std::fmt::Display) -> Self {
        let debug = format!("{err:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        CliError { module, kind, message: err.to_string() }
    }

    fn input(message: impl Into<String>) -> Self {
        CliError { module: "cli", kind: "InvalidInput".into(), message: message.into() }
    }
}

impl From<crate::perm::PermError> for CliError {
    fn from(e: crate::perm::PermError) -> Self {
        CliError::new("perm", e)
    }
}

impl From<MatError> for CliError {
    fn from(e: MatError) -> Self {
        CliError::new("matgrp", e)
    }
}

impl From<crate::words::WordError> for CliError {
    fn from(e: crate::words::WordError) -> Self {
        CliError::new("words", e)
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        CliError::new("treeaut", e)
    }
}

type CliResult = Result<Value, CliError>;

/// Parses `argv` (program name first), runs the command and writes the report to `out`.
pub fn run<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let name = command_name(&cli.command);
    let (code, body) = match execute(&cli.command) {
        Ok(result) => {
            let failed = result.get("all_passed") == Some(&Value::Bool(false));
            (if failed { 1 } else { 0 }, json!({"schema": SCHEMA, "command": name, "result": result}))
        }
        Err(e) => (
            1,
            json!({"schema": SCHEMA, "command": name, "error": {"module": e.module, "kind": e.kind, "message": e.message}}),
        ),
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&body).expect("serializable"),
        Format::Text => render_text(&body, 0),
    };
    let _ = writeln!(out, "{text}");
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Perm(PermCmd::IgCheck { .. }) => "perm ig-check",
        Command::Perm(PermCmd::Wiegold { .. }) => "perm wiegold",
        Command::Perm(PermCmd::Jordan { .. }) => "perm jordan",
        Command::Words(WordsCmd::FreeCert { .. }) => "words free-cert",
        Command::Sl2(Sl2Cmd::Classify { .. }) => "sl2 classify",
        Command::Sl2(Sl2Cmd::Lie { .. }) => "sl2 lie",
        Command::Sl2(Sl2Cmd::Spectrum { .. }) => "sl2 spectrum",
        Command::Sl2(Sl2Cmd::Borel { .. }) => "sl2 borel",
        Command::Sl2(Sl2Cmd::ExtendFree { .. }) => "sl2 extend-free",
        Command::Tree(TreeCmd::Classify { .. }) => "tree classify",
        Command::Tree(TreeCmd::Orbital { .. }) => "tree orbital",
        Command::Tree(TreeCmd::Conjugacy { .. }) => "tree conjugacy",
        Command::Tree(TreeCmd::GenVertex { .. }) => "tree gen-vertex",
        Command::Tree(TreeCmd::GenStab { .. }) => "tree gen-stab",
        Command::Suite(SuiteCmd::Acceptance { .. }) => "suite acceptance",
    }
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| match x {
                Value::Object(_) | Value::Array(_) if !is_flat(x) => format!("{pad}{k}:\n{}", render_text(x, indent + 1)),
                _ => format!("{pad}{k}: {}", scalar_text(x)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|x| if is_flat(x) { format!("{pad}- {}", scalar_text(x)) } else { format!("{pad}-\n{}", render_text(x, indent + 1)) })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => format!("{pad}{}", scalar_text(v)),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.is_empty() => "[]".into(),
        Value::Array(a) => a.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        _ => v.to_string(),
    }
}

/// `INVGEN_BUDGET` overrides default caps; an explicit flag overrides both.
fn budget<T: TryFrom<u128>>(flag: Option<T>, default: T) -> Result<T, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("INVGEN_BUDGET") {
        Ok(s) => {
            let n: u128 = s.trim().parse().map_err(|_| CliError::input(format!("INVGEN_BUDGET={s:?} is not a count")))?;
            if n == 0 {
                return Err(CliError::input("INVGEN_BUDGET must be positive"));
            }
            T::try_from(n).map_err(|_| CliError::input("INVGEN_BUDGET is too large"))
        }
        Err(_) => Ok(default),
    }
}

fn positive(name: &str, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::input(format!("--{name} must be positive")));
    }
    Ok(())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if let Some(g) = named_group(arg) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| CliError::input(format!("{arg:?} is neither a corpus group nor a readable file: {e}")))?;
    let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
    Ok(spec.build(GROUP_CAP)?)
}

fn parse_perms(s: &str, degree: usize) -> Result<Vec<Perm>, CliError> {
    Ok(split_list(s).map(|p| Perm::parse_with_degree(p, degree)).collect::<Result<_, _>>()?)
}

/// `[[a,b],[c,d]]` with rational entries such as `1/2`, quoted or not.
fn parse_matrix(s: &str) -> Result<Mat2<Rational>, CliError> {
    let rows = parse_square(s)?;
    if rows.len() != 2 {
        return Err(CliError::input(format!("{s:?} is not a 2x2 matrix")));
    }
    let e = |i: usize, j: usize| rows[i][j].clone();
    Ok(Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)))
}

fn parse_square(s: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    let bad = || CliError::input(format!("cannot parse matrix {s:?}"));
    let body = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let mut rows = Vec::new();
    for row in body.split(']') {
        let row = row.trim().trim_start_matches(',').trim();
        if row.is_empty() {
            continue;
        }
        let row = row.strip_prefix('[').ok_or_else(bad)?;
        let entries: Vec<Rational> = row
            .split(',')
            .map(|e| parse_rational(e.trim().trim_matches('"')).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        rows.push(entries);
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(bad());
    }
    Ok(rows)
}

fn parse_matrices(s: &str) -> Result<Vec<Mat2<Rational>>, CliError> {
    split_list(s).map(parse_matrix).collect()
}

fn parse_addr(s: &str, d: usize) -> Result<Addr, CliError> {
    Ok(Addr::parse(s, d)?)
}

/// One factor of an element expression, with an optional `^k` power.
fn parse_factor(term: &str, d: usize) -> Result<TreeAut, CliError> {
    let (base, power) = match term.rsplit_once('^') {
        Some((b, k)) => (b, k.trim().parse::<i64>().map_err(|_| CliError::input(format!("bad power in {term:?}")))?),
        None => (term, 1),
    };
    let (name, at) = match base.split_once('@') {
        Some((n, v)) => (n.trim(), Some(v.trim())),
        None => (base.trim(), None),
    };
    let g = match name {
        "id" | "identity" => TreeAut::identity(d),
        "translation" | "h" => make_hyperbolic_translation(d),
        "flip" => make_edge_flip(d),
        "odometer" | "s" => make_spherically_transitive(&parse_addr(at.unwrap_or("e"), d)?, d),
        _ if name.starts_with("type:") => {
            let mut parts = name.splitn(3, ':').skip(1);
            let n: usize = parts
                .next()
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| CliError::input(format!("bad level in {term:?}")))?;
            let spec = TypeSpec::parse(n, parts.next().unwrap_or(""))?;
            let (v, u) = match at {
                Some(rest) => match rest.split_once(':') {
                    Some((v, u)) => (parse_addr(v, d)?, Some(parse_addr(u, d)?)),
                    None => (parse_addr(rest, d)?, None),
                },
                None => (Addr::root(), None),
            };
            make_type_np(&v, &spec, u.as_ref(), d)?
        }
        _ => return Err(CliError::input(format!("unknown element {name:?}"))),
    };
    Ok(g.pow(power))
}

fn load_element(arg: &str, d: usize) -> Result<TreeAut, CliError> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::input(format!("{arg}: {e}")))?;
        return Ok(TreeAut::from_json(&v)?);
    }
    if !(3..=9).contains(&d) {
        return Err(TreeError::InvalidValence(d).into());
    }
    let mut g = TreeAut::identity(d);
    for term in arg.split('*') {
        g = g.compose(&parse_factor(term, d)?)?;
    }
    Ok(g)
}

pub fn execute(c: &Command) -> CliResult {
    match c {
        Command::Perm(p) => perm_cmd(p),
        Command::Words(w) => words_cmd(w),
        Command::Sl2(s) => sl2_cmd(s),
        Command::Tree(t) => tree_cmd(t),
        Command::Suite(s) => suite_cmd(s),
    }
}

fn perm_cmd(c: &PermCmd) -> CliResult {
    match c {
        PermCmd::IgCheck { group, set, budget: b } => {
            let g = load_group(&group.group)?;
            let set = parse_perms(set, g.degree())?;
            let leaves = budget(*b, DEFAULT_LEAF_BUDGET)?;
            let result = invariably_generates(&g, &set, leaves)?;
            Ok(json!({
                "result": result,
                "group_order": g.order(),
                "conjugation_complete": g.is_conjugation_complete(&set),
            }))
        }
        PermCmd::Wiegold { group, subgroup } => {
            let g = load_group(&group.group)?;
            let gens = parse_perms(subgroup, g.degree())?;
            let h = g.subgroup(&gens)?;
            Ok(json!({
                "wiegold": g.is_wiegold(&gens)?,
                "group_order": g.order(),
                "subgroup_order": h.order(),
                "conjugate_union_size": g.conjugate_union_size(&gens)?,
            }))
        }
        PermCmd::Jordan { group, subgroup, regular } => {
            let g = load_group(&group.group)?;
            let (action, label) = match (subgroup, regular) {
                (Some(s), _) => (GroupAction::on_cosets(&g, &parse_perms(s, g.degree())?)?, "cosets"),
                (None, true) => (GroupAction::regular(&g), "regular"),
                (None, false) => (GroupAction::natural(&g), "natural"),
            };
            let active = action.jordan_active_element()?;
            Ok(json!({
                "action": label,
                "domain_size": action.domain_size(),
                "active_element": active.map(Perm::to_string),
            }))
        }
    }
}

fn words_cmd(c: &WordsCmd) -> CliResult {
    let WordsCmd::FreeCert { tuple, length, degree, linear, budget: b } = c;
    positive("length", *length)?;
    let options = FreenessOptions { tuple_id: tuple.clone(), orders: None, word_cap: budget(*b, DEFAULT_WORD_CAP)? };
    let cert = match degree {
        Some(n) => free_up_to(&PermOps { degree: *n }, &parse_perms(tuple, *n)?, *length, &options)?,
        None => {
            let ms = parse_matrices(tuple)?;
            if ms.iter().any(|m| m.det() == Rational::from_integer(0.into())) {
                return Err(MatError::Singular.into());
            }
            let ops = if *linear { MatOps::<Rational>::linear() } else { MatOps::projective() };
            free_up_to(&ops, &ms, *length, &options)?
        }
    };
    Ok(serde_json::to_value(&cert).expect("serializable"))
}

fn sl2_cmd(c: &Sl2Cmd) -> CliResult {
    match c {
        Sl2Cmd::Classify { matrix, backend } => {
            let m = parse_matrix(matrix)?;
            Ok(match backend {
                Backend::Exact => {
                    let r = sl2_classify(&m)?;
                    let mut v = r.to_json();
                    v["residual"] = json!(r.residual(&m));
                    v
                }
                Backend::Double => {
                    let m = m.to_f64();
                    let r = sl2_classify(&m)?;
                    let mut v = r.to_json();
                    v["residual"] = json!(r.residual(&m));
                    v
                }
            })
        }
        Sl2Cmd::Lie { elem, exp } => {
            let parts: Vec<Rational> = elem
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect::<Option<_>>()
                .filter(|p: &Vec<Rational>| p.len() == 3)
                .ok_or_else(|| CliError::input(format!("--elem {elem:?} must be a,b,c")))?;
            let x = Sl2LieElem::new(parts[0].clone(), parts[1].clone(), parts[2].clone());
            let orbit = lie_classify(&x)?;
            let mut v = orbit.to_json();
            v["residual"] = json!(orbit.residual(&x));
            if let Some(t) = exp {
                let xf = x.to_f64();
                v["exp"] = exp_sl2(&Sl2LieElem::new(xf.a * t, xf.b * t, xf.c * t)).to_json();
            }
            Ok(v)
        }
        Sl2Cmd::Spectrum { generators, length, budget: b } => {
            positive("length", *length)?;
            let gens = parse_matrices(generators)?;
            Ok(spectrum_of_words(&gens, *length, budget(*b, DEFAULT_SPECTRUM_CAP)?)?.to_json())
        }
        Sl2Cmd::Borel { matrix, backend, plane } => {
            if let Some(p) = plane {
                let rows = parse_square(p)?;
                let n = rows.len();
                let g = DMatrix::from_fn(n, n, |i, j| crate::matgrp::scalar::rational_to_f64(&rows[i][j]));
                let ip = invariant_plane(&g)?;
                let basis = ip.orthonormal_basis();
                let cols: Vec<Vec<f64>> = (0..2).map(|j| basis.column(j).iter().copied().collect()).collect();
                return Ok(json!({
                    "plane_basis": cols,
                    "eigenvalue": ip.eigenvalue.map(|z| json!({"re": z.re, "im": z.im})),
                    "residual": ip.residual(&g),
                }));
            }
            let m = parse_matrix(matrix.as_deref().unwrap_or_default())?;
            let backend = match backend {
                BorelField::Real => BorelBackend::Real,
                BorelField::Complex => BorelBackend::Complex,
            };
            let outcome = borel_conjugator(&m, backend)?;
            let mut v = outcome.to_json();
            v["lower_left_abs"] = json!(outcome.lower_left_abs());
            Ok(v)
        }
        Sl2Cmd::ExtendFree { tuple, target, length, trials, seed, height, budget: b } => {
            positive("length", *length)?;
            positive("trials", *trials)?;
            if *height <= 0 {
                return Err(CliError::input("--height must be positive"));
            }
            let opts = ExtendOptions {
                length_bound: *length,
                trials: *trials,
                seed: *seed,
                height: *height,
                word_cap: budget(*b, DEFAULT_WORD_CAP)?,
            };
            let ext = extend_free_tuple(&parse_matrices(tuple)?, &parse_matrix(target)?, &opts)?;
            Ok(json!({
                "g": ext.g.to_json(),
                "conjugate": ext.conjugate.to_json(),
                "trial": ext.trial,
                "certificate": serde_json::to_value(&ext.certificate).expect("serializable"),
            }))
        }
    }
}

fn tree_cmd(c: &TreeCmd) -> CliResult {
    match c {
        TreeCmd::Classify { element, valence, radius, families } => {
            let g = load_element(&element.element, *valence)?;
            let mut v = classify(&g, *radius).to_json();
            v["translation_length"] = json!(translation_length(&g, *radius));
            if *families {
                let r = radius.unwrap_or(4);
                let depth = g.known_depth().map_or(6, |k| k.max(0) as usize);
                let pn: Map<String, Value> = (2..=depth.max(2))
                    .filter_map(|n| {
                        in_family_pn(&g, n, r).map(|(c, u, shape)| {
                            (n.to_string(), json!({"v": c.to_string(), "u": u.to_string(), "shape": shape}))
                        })
                    })
                    .collect();
                v["families"] = json!({
                    "H": in_family_h(&g, r),
                    "Ts": in_family_ts(&g, r, depth).map(|a| a.to_string()),
                    "P1": in_family_p1(&g, r).map(|(a, shape)| json!({"v": a.to_string(), "shape": shape})),
                    "Pn": pn,
                });
            }
            Ok(v)
        }
        TreeCmd::Orbital { element, valence, radius, local } => {
            let g = load_element(&element.element, *valence)?;
            match local {
                None => Ok(orbital_type(&g, *radius)?.to_json()),
                Some(v) => {
                    let v = parse_addr(v, g.d())?;
                    let mut levels = vec![json!({"n": 1, "phi": phi_v1(&g, &v)?.to_string()})];
                    for n in 2..=*radius {
                        match phi_vn(&g, &v, n) {
                            Ok(list) => levels.push(json!({
                                "n": n,
                                "phi": list.iter().map(|(u, p)| json!({"u": u.to_string(), "perm": p.to_string()})).collect::<Vec<_>>(),
                            })),
                            Err(_) => break,
                        }
                    }
                    Ok(json!({
                        "vertex": v.to_string(),
                        "local": levels,
                        "sphere_orbits": sphere_orbit_sizes(&g, &v, *radius)?,
                    }))
                }
            }
        }
        TreeCmd::Conjugacy { left, right, valence, radius } => {
            let (g, h) = (load_element(left, *valence)?, load_element(right, *valence)?);
            Ok(conjugacy_test(&g, &h, *radius).to_json())
        }
        TreeCmd::GenVertex { v, x, valence, depth, margin } => {
            let d = *valence;
            if d < 3 {
                return Err(TreeError::InvalidValence(d).into());
            }
            let (v, x) = (parse_addr(v, d)?, parse_addr(x, d)?);
            let h = make_hyperbolic_translation(d);
            let s = make_spherically_transitive(&v, d);
            let w = vertex_transitivity_witness(&h, &s, &v, &x, *depth, *margin)?;
            let mut out = w.to_json();
            out["verified"] = json!(w.element.image(&v)? == x);
            Ok(out)
        }
        TreeCmd::GenStab { v, n, valence, element, seed } => {
            let d = *valence;
            if d < 3 {
                return Err(TreeError::InvalidValence(d).into());
            }
            positive("n", *n)?;
            let v = parse_addr(v, d)?;
            let k = match (element, seed) {
                (Some(e), _) => load_element(e, d)?,
                (None, Some(seed)) => random_stabilizer_element(&mut ChaCha8Rng::seed_from_u64(*seed), d, &v, n + 1),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let supply = Supply::canonical(d, &v, *n)?;
            let approx = stabilizer_approximation(&k, &supply, *n)?;
            let mut out = approx.to_json();
            out["verified"] = json!(approx.element.agrees_on_ball(&k, &v, *n)?);
            out["target"] = k.to_json()?;
            Ok(out)
        }
    }
}

fn suite_cmd(c: &SuiteCmd) -> CliResult {
    let SuiteCmd::Acceptance { only, timings } = c;
    let ids: Vec<u8> =
        if only.is_empty() { suite::CRITERIA.iter().map(|c| c.0).collect() } else { only.clone() };
    let mut reports = Vec::new();
    for id in ids {
        let r = suite::run_criterion(id).ok_or_else(|| CliError::input(format!("no criterion {id}")))?;
        let mut v = r.to_json();
        if *timings {
            v["elapsed_s"] = json!(r.elapsed.as_secs_f64());
        }
        reports.push((r.passed, v));
    }
    let all = reports.iter().all(|(p, _)| *p);
    Ok(json!({"all_passed": all, "criteria": reports.into_iter().map(|(_, v)| v).collect::<Vec<_>>()}))
}
