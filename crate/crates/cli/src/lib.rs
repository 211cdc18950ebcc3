//! The `milnor` command line tool.
//!
//! Every subcommand renders into strings so tests can drive [`run`]
//! directly; `main` only forwards the result to the process streams.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use milnor_core::invariant::{
    classical_mu, format_formal_sum, is_all_ones, triples, TotalMilnorQuotient,
};
use milnor_core::nilpotent::{check_longitude_identity, longitude_word, magnus_of_word};
use milnor_core::{
    emit_presentation, invariants_equal, parse_link_file, realize_family, serialize_link,
    total_invariant, Error, LinkBody, LinkEntry, LinkingMatrix, MilnorClass, SurfaceSystemData,
    Validation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INCOMPARABLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "milnor", version, about = "Total Milnor invariants of links")]
struct Cli {
    /// Reject triple points (C-complex data only).
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Linking matrix, m and t vectors, the quotient M and the class of m − t.
    Invariant {
        /// Link file, or `-` for standard input.
        file: String,
        /// Link name; may be omitted when the file holds a single link.
        name: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Decide whether two links have equal invariants in M.
    Compare {
        file_a: String,
        name_a: String,
        file_b: String,
        name_b: String,
    },
    /// Bring every clasp-word into sorted block form by finger and tube moves.
    Normalize { file: String, name: Option<String> },
    /// Longitude words modulo F_3 and the check against the clasp-word counts.
    Longitudes {
        file: String,
        name: Option<String>,
        /// Magnus truncation degree for display.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        degree: u8,
    },
    /// Structure of the total Milnor quotient for given linking numbers.
    Quotient {
        #[arg(long)]
        n: usize,
        /// `ones`, `zero`, or comma-separated lk(1,2),lk(1,3),…,lk(n-1,n).
        #[arg(long, default_value = "ones", allow_hyphen_values = true)]
        lk: String,
    },
    /// Write the four-component family member with invariant value m.
    Realize {
        #[arg(allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Link name in the written file (default `family<m>`).
        #[arg(long)]
        name: Option<String>,
    },
    /// Presentation of the nilpotent quotient of the link group.
    Presentation {
        file: String,
        name: Option<String>,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Runs the tool on `args` (including the program name). `stdin` is read
/// only when a file argument is `-`.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    let mode = if cli.strict {
        Validation::Strict
    } else {
        Validation::General
    };
    let mut ctx = Context { stdin, mode };
    let result = match cli.command {
        Command::Invariant { file, name, format } => ctx.invariant(&file, name.as_deref(), format),
        Command::Compare {
            file_a,
            name_a,
            file_b,
            name_b,
        } => ctx.compare(&file_a, &name_a, &file_b, &name_b),
        Command::Normalize { file, name } => ctx.normalize(&file, name.as_deref()),
        Command::Longitudes { file, name, degree } => {
            ctx.longitudes(&file, name.as_deref(), degree as usize)
        }
        Command::Quotient { n, lk } => quotient(n, &lk),
        Command::Realize { m, output, name } => realize(m, output, name),
        Command::Presentation { file, name, k } => ctx.presentation(&file, name.as_deref(), k),
    };
    result.unwrap_or_else(|o| o)
}

type CmdResult = Result<Outcome, Outcome>;

fn invalid(e: Error) -> Outcome {
    Outcome::fail(EXIT_INVALID, format!("error: {e}"))
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    mode: Validation,
}

impl Context<'_> {
    fn read(&mut self, file: &str) -> Result<String, Outcome> {
        if file == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Outcome::fail(EXIT_INVALID, format!("error: reading stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(file)
                .map_err(|e| Outcome::fail(EXIT_NOT_FOUND, format!("error: {file}: {e}")))
        }
    }

    fn load(&mut self, file: &str, name: Option<&str>) -> Result<LinkEntry, Outcome> {
        let text = self.read(file)?;
        let links = parse_link_file(&text).map_err(|e| match e {
            Error::Parse {
                line,
                column,
                message,
            } => Outcome::fail(EXIT_INVALID, format!("{file}:{line}:{column}: {message}")),
            other => invalid(other),
        })?;
        let found = match name {
            Some(n) => links.iter().find(|l| l.name == n),
            None if links.len() == 1 => links.first(),
            None => None,
        };
        let entry = found.cloned().ok_or_else(|| {
            let names: Vec<&str> = links.iter().map(|l| l.name.as_str()).collect();
            let what = match name {
                Some(n) => format!("link `{n}` not found in {file}"),
                None => format!("{file} holds {} links; name one", links.len()),
            };
            Outcome::fail(
                EXIT_NOT_FOUND,
                format!("error: {what} (available: {})", names.join(", ")),
            )
        })?;
        entry.validate(self.mode).map_err(invalid)?;
        Ok(entry)
    }

    fn system(
        &mut self,
        file: &str,
        name: Option<&str>,
    ) -> Result<(LinkEntry, SurfaceSystemData), Outcome> {
        let entry = self.load(file, name)?;
        let s = entry.surface_system(self.mode).map_err(invalid)?;
        Ok((entry, s))
    }

    fn invariant(&mut self, file: &str, name: Option<&str>, format: Format) -> CmdResult {
        let (entry, s) = self.system(file, name)?;
        let report = Report::build(&entry.name, &s).map_err(invalid)?;
        Ok(Outcome::ok(match format {
            Format::Plain => report.plain(),
            Format::Tsv => report.tsv(),
        }))
    }

    fn compare(&mut self, file_a: &str, name_a: &str, file_b: &str, name_b: &str) -> CmdResult {
        let (_, a) = self.system(file_a, Some(name_a))?;
        let (_, b) = self.system(file_b, Some(name_b))?;
        let lk_a = a.linking_matrix().map_err(invalid)?;
        let lk_b = b.linking_matrix().map_err(invalid)?;
        if lk_a != lk_b {
            return Ok(Outcome {
                stdout: "INCOMPARABLE (linking numbers differ)\n".into(),
                stderr: String::new(),
                code: EXIT_INCOMPARABLE,
            });
        }
        if a.n() < 3 {
            return Ok(Outcome::ok("EQUAL in M\n".into()));
        }
        let ca = total_invariant(&a).map_err(invalid)?;
        let cb = total_invariant(&b).map_err(invalid)?;
        match invariants_equal(&ca, &cb) {
            Ok(true) => Ok(Outcome::ok("EQUAL in M\n".into())),
            Ok(false) => {
                let mut out = String::from("DISTINCT in M\n");
                let (fa, fb) = (ca.free_coordinates(), cb.free_coordinates());
                if !fa.is_empty() {
                    writeln!(
                        out,
                        "witness free coordinates: {name_a} = ({}), {name_b} = ({})",
                        join(&fa),
                        join(&fb)
                    )
                    .unwrap();
                }
                if fa == fb {
                    let ta: Vec<String> = ca
                        .torsion_coordinates()
                        .iter()
                        .map(|(v, _)| v.to_string())
                        .collect();
                    let tb: Vec<String> = cb
                        .torsion_coordinates()
                        .iter()
                        .map(|(v, _)| v.to_string())
                        .collect();
                    writeln!(
                        out,
                        "witness torsion coordinates: {name_a} = ({}), {name_b} = ({})",
                        ta.join(", "),
                        tb.join(", ")
                    )
                    .unwrap();
                }
                Ok(Outcome {
                    stdout: out,
                    stderr: String::new(),
                    code: EXIT_DISTINCT,
                })
            }
            Err(Error::Incomparable) => Ok(Outcome {
                stdout: "INCOMPARABLE (linking numbers differ)\n".into(),
                stderr: String::new(),
                code: EXIT_INCOMPARABLE,
            }),
            Err(e) => Err(invalid(e)),
        }
    }

    fn normalize(&mut self, file: &str, name: Option<&str>) -> CmdResult {
        let (entry, s) = self.system(file, name)?;
        let (ordered, log) = s.ordered_form().map_err(invalid)?;
        let mut out = String::new();
        writeln!(out, "# ordered form of {}", entry.name).unwrap();
        writeln!(out, "# {} moves", log.len()).unwrap();
        for step in &log {
            writeln!(out, "# {step}").unwrap();
        }
        if s.n() >= 3 {
            let before = &s.m_vector().map_err(invalid)? - &s.t_vector().map_err(invalid)?;
            let after =
                &ordered.m_vector().map_err(invalid)? - &ordered.t_vector().map_err(invalid)?;
            writeln!(
                out,
                "# m - t preserved exactly: {}",
                if before == after { "yes" } else { "NO" }
            )
            .unwrap();
        }
        out.push_str(&serialize_link(&LinkEntry {
            name: entry.name.clone(),
            body: LinkBody::System(ordered),
        }));
        Ok(Outcome::ok(out))
    }

    fn longitudes(&mut self, file: &str, name: Option<&str>, degree: usize) -> CmdResult {
        let entry = self.load(file, name)?;
        let c = entry.ccomplex().ok_or_else(|| {
            Outcome::fail(
                EXIT_INVALID,
                format!(
                    "error: link `{}` has no clasp pairing; longitudes need a clasp body",
                    entry.name
                ),
            )
        })?;
        let mut out = String::new();
        writeln!(out, "link {}", entry.name).unwrap();
        writeln!(out, "components {}", c.n).unwrap();
        for k in 1..=c.n {
            let data = longitude_word(c, k).map_err(invalid)?;
            writeln!(out, "component {k}: {} clasps", data.factors.len()).unwrap();
            for f in &data.factors {
                let sign = if f.sign.value() > 0 { '+' } else { '-' };
                let h: Vec<String> = f.conjugator.iter().map(i64::to_string).collect();
                writeln!(
                    out,
                    "  r={} partner={}:{} sign={sign} h=({})",
                    f.rank,
                    f.partner,
                    f.partner_rank,
                    h.join(",")
                )
                .unwrap();
            }
            writeln!(out, "  l{k} = {}", data.word.reduced()).unwrap();
            let series = magnus_of_word(&data.word, c.n, degree).map_err(invalid)?;
            writeln!(out, "  magnus (degree {degree}) = {series}").unwrap();
        }
        if c.n < 3 {
            writeln!(
                out,
                "check e_ij(l_k) = m_ijk - lk(k,j) lk(i,j): skipped (fewer than three components)"
            )
            .unwrap();
            return Ok(Outcome::ok(out));
        }
        let check = check_longitude_identity(c).map_err(invalid)?;
        let bad = check.violations();
        if bad.is_empty() {
            writeln!(
                out,
                "check e_ij(l_k) = m_ijk - lk(k,j) lk(i,j): PASS ({} triples)",
                check.rows.len()
            )
            .unwrap();
            Ok(Outcome::ok(out))
        } else {
            writeln!(
                out,
                "check e_ij(l_k) = m_ijk - lk(k,j) lk(i,j): FAIL ({} of {} triples)",
                bad.len(),
                check.rows.len()
            )
            .unwrap();
            for r in bad {
                writeln!(
                    out,
                    "  (i,j,k)=({},{},{}): e_ij = {}, m_ijk - lk lk = {} - {}",
                    r.i, r.j, r.k, r.e_ij, r.m_ijk, r.correction
                )
                .unwrap();
            }
            Ok(Outcome {
                stdout: out,
                stderr: String::new(),
                code: EXIT_DISTINCT,
            })
        }
    }

    fn presentation(&mut self, file: &str, name: Option<&str>, k: usize) -> CmdResult {
        let entry = self.load(file, name)?;
        let c = entry.ccomplex().ok_or_else(|| {
            Outcome::fail(
                EXIT_INVALID,
                format!(
                    "error: link `{}` has no clasp pairing; presentations need a clasp body",
                    entry.name
                ),
            )
        })?;
        let text = emit_presentation(c, k).map_err(invalid)?;
        Ok(Outcome::ok(format!("# link {}\n{text}", entry.name)))
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn parse_lk(n: usize, value: &str) -> Result<LinkingMatrix, Outcome> {
    match value {
        "ones" => Ok(LinkingMatrix::constant(n, 1)),
        "zero" => Ok(LinkingMatrix::zero(n)),
        list => {
            let values: Result<Vec<i64>, _> =
                list.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let values = values.map_err(|_| {
                Outcome::fail(
                    EXIT_INVALID,
                    format!("error: --lk expects `ones`, `zero`, or comma-separated integers, got `{list}`"),
                )
            })?;
            LinkingMatrix::from_upper(n, &values).map_err(invalid)
        }
    }
}

fn quotient(n: usize, lk: &str) -> CmdResult {
    let lk = parse_lk(n, lk)?;
    let mut out = String::new();
    writeln!(out, "components {n}").unwrap();
    out.push_str("linking matrix:\n");
    out.push_str(&lk.to_string());
    if n < 3 {
        out.push_str("M = 0\n");
        return Ok(Outcome::ok(out));
    }
    let q = TotalMilnorQuotient::new(lk).map_err(invalid)?;
    writeln!(
        out,
        "relations {} x {}",
        q.relations().rows(),
        q.relations().cols()
    )
    .unwrap();
    writeln!(out, "M = {}", q.structure()).unwrap();
    for (idx, f) in q.free_functionals().iter().enumerate() {
        writeln!(
            out,
            "free functional {}: {}",
            idx + 1,
            format_formal_sum(n, f)
        )
        .unwrap();
    }
    for (f, d) in q.torsion_functionals() {
        writeln!(
            out,
            "torsion functional (mod {d}): {}",
            format_formal_sum(n, &f)
        )
        .unwrap();
    }
    Ok(Outcome::ok(out))
}

fn realize(m: i64, output: Option<PathBuf>, name: Option<String>) -> CmdResult {
    let entry = LinkEntry {
        name: name.unwrap_or_else(|| format!("family{m}")),
        body: LinkBody::System(realize_family(m)),
    };
    let text = format!(
        "# four-component family member with invariant value {m}\n{}",
        serialize_link(&entry)
    );
    match output {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            std::fs::write(&path, &text).map_err(|e| {
                Outcome::fail(EXIT_INVALID, format!("error: {}: {e}", path.display()))
            })?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

type Triple = (usize, usize, usize);

/// Everything the `invariant` subcommand prints.
struct Report {
    name: String,
    n: usize,
    lk: LinkingMatrix,
    m: Vec<(Triple, i64)>,
    t: Vec<(Triple, i64)>,
    classical: Vec<(Triple, (i64, i64))>,
    class: Option<MilnorClass>,
}

impl Report {
    fn build(name: &str, s: &SurfaceSystemData) -> milnor_core::Result<Report> {
        let lk = s.linking_matrix()?;
        let n = s.n();
        if n < 3 {
            return Ok(Report {
                name: name.into(),
                n,
                lk,
                m: Vec::new(),
                t: Vec::new(),
                classical: Vec::new(),
                class: None,
            });
        }
        let keys = triples(n);
        let m = s.m_vector()?;
        let t = s.t_vector()?;
        let mut classical = Vec::new();
        for &(i, j, k) in &keys {
            classical.push(((i, j, k), classical_mu(s, i, j, k)?));
        }
        Ok(Report {
            name: name.into(),
            n,
            lk,
            m: keys
                .iter()
                .copied()
                .zip(m.coeffs().iter().copied())
                .collect(),
            t: keys
                .iter()
                .copied()
                .zip(t.coeffs().iter().copied())
                .collect(),
            classical,
            class: Some(total_invariant(s)?),
        })
    }

    fn functional_value(&self) -> Option<String> {
        let class = self.class.as_ref()?;
        if self.n == 4 && is_all_ones(&self.lk) {
            class.free_coordinates().first().map(ToString::to_string)
        } else {
            None
        }
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        writeln!(out, "link {}", self.name).unwrap();
        writeln!(out, "components {}", self.n).unwrap();
        out.push_str("linking matrix:\n");
        out.push_str(&self.lk.to_string());
        for ((i, j, k), v) in &self.m {
            writeln!(out, "m[{i},{j},{k}] = {v}").unwrap();
        }
        for ((i, j, k), v) in &self.t {
            writeln!(out, "t[{i},{j},{k}] = {v}").unwrap();
        }
        for ((i, j, k), (r, d)) in &self.classical {
            if *d == 0 {
                writeln!(out, "mubar[{i},{j},{k}] = {r}").unwrap();
            } else {
                writeln!(out, "mubar[{i},{j},{k}] = {r} mod {d}").unwrap();
            }
        }
        match &self.class {
            None => {
                out.push_str("M = 0\nmu = 0\n");
            }
            Some(c) => {
                writeln!(out, "M = {}", c.quotient().structure()).unwrap();
                writeln!(out, "mu = {c}").unwrap();
            }
        }
        if let Some(f) = self.functional_value() {
            writeln!(out, "f = {f}").unwrap();
        }
        out
    }

    fn tsv(&self) -> String {
        let mut out = String::from("kind\ti\tj\tk\tvalue\n");
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                writeln!(out, "lk\t{i}\t{j}\t0\t{}", self.lk.get(i, j)).unwrap();
            }
        }
        for ((i, j, k), v) in &self.m {
            writeln!(out, "m\t{i}\t{j}\t{k}\t{v}").unwrap();
        }
        for ((i, j, k), v) in &self.t {
            writeln!(out, "t\t{i}\t{j}\t{k}\t{v}").unwrap();
        }
        for ((i, j, k), (r, d)) in &self.classical {
            writeln!(out, "mubar\t{i}\t{j}\t{k}\t{r}").unwrap();
            writeln!(out, "delta\t{i}\t{j}\t{k}\t{d}").unwrap();
        }
        match &self.class {
            None => out.push_str("rank\t0\t0\t0\t0\n"),
            Some(c) => {
                let st = c.quotient().structure();
                writeln!(out, "rank\t0\t0\t0\t{}", st.free_rank).unwrap();
                for d in &st.torsion {
                    writeln!(out, "torsion\t0\t0\t0\t{d}").unwrap();
                }
                for ((i, j, k), v) in triples(self.n).into_iter().zip(c.representative()) {
                    writeln!(out, "mu\t{i}\t{j}\t{k}\t{v}").unwrap();
                }
            }
        }
        if let Some(f) = self.functional_value() {
            writeln!(out, "f\t0\t0\t0\t{f}").unwrap();
        }
        out
    }
}
