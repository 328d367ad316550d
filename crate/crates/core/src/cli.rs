//! The `coulomb` command line.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure (non-member,
//! diagram failure), 2 on an input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coulomb::{mu_zero_fiber, Coulomb, Membership, RingPresentation};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::io::{element_to_json, poly_to_json, variables, ProblemFile};
use crate::morphism::RingMorphism;
use crate::print::{print_canonical, print_poly};
use crate::shmodel::ShModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Tau,
    Eta,
}

#[derive(Debug, Parser)]
#[command(name = "coulomb", version, about = "Coulomb branch algebras of cotangent-type gauge theories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Problem file (TOML).
    #[arg(long, global = true)]
    pub problem: Option<PathBuf>,
    /// Element to operate on, in the expression grammar.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub expr: Option<String>,
    /// Degree window for generated generators (overrides the problem file).
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pure Coulomb branch presentation.
    PureBranch,
    /// Affine blowup presentation and Weyl generators.
    Blowup,
    /// Reynolds average and invariance of --expr, or the Weyl generators.
    WeylInvariants,
    /// Euler section.
    EulerSection {
        #[arg(long, value_enum, default_value = "tau")]
        side: Side,
    },
    /// Translation by the Euler section.
    Translate,
    /// Matter branch membership of --expr.
    Membership,
    /// Matter generators.
    Generators,
    /// Relation ideal of the matter generators.
    Presentation,
    /// Fiber over mu = 0 of the presentation, or --expr at mu = 0.
    MuZero,
    /// Seidel operators and their product.
    Seidel,
    /// Localized equivariant cohomology.
    Sh,
    /// Section homomorphism applied to --expr.
    Map,
    /// Commutative diagram check on the matter generators.
    VerifyDiagram,
}

/// Outcome of a command: printed output plus whether the mathematics succeeded.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

struct Session {
    file: ProblemFile,
    c: Coulomb,
    degree: u32,
    expr: Option<String>,
}

impl Session {
    fn generators(&self) -> Result<Vec<(String, Frac)>> {
        match self.file.parse_generators(&self.c)? {
            Some(g) => Ok(g),
            None => self.c.default_generators(self.degree),
        }
    }

    fn element(&self) -> Result<Frac> {
        let text = self.expr.as_deref().ok_or_else(|| Error::InvalidProblem("--expr is required".into()))?;
        let mut ctx = self.c.parser();
        if let Some(gens) = self.file.parse_generators(&self.c)? {
            for (n, g) in gens {
                ctx = ctx.define(n, g);
            }
        }
        self.c.normal_form(&ctx.parse(text)?)
    }
}

fn morphism_lines(m: &RingMorphism) -> Vec<(String, Frac)> {
    let t = m.source();
    (0..t.len())
        .filter(|&i| *m.image(i) != Frac::var(m.target(), i) || m.target().table() != t)
        .map(|i| (t.name(i).to_string(), m.image(i).clone()))
        .collect()
}

fn images_json(items: &[(String, Frac)]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|(n, f)| json!({ "name": n, "element": element_to_json(f) }))
            .collect(),
    )
}

fn images_text(items: &[(String, Frac)], arrow: &str) -> String {
    items.iter().map(|(n, f)| format!("{n} {arrow} {}\n", print_canonical(f))).collect()
}

fn presentation_out(p: &RingPresentation) -> Outcome {
    let mut text = format!("kind: {}\nring: {p}\n", p.kind);
    let rels = p.relation_strings();
    if rels.is_empty() {
        text.push_str("relations: none\n");
    } else {
        text.push_str("relations:\n");
        for r in &rels {
            text.push_str(&format!("  {r}\n"));
        }
    }
    let gens: Vec<(String, Frac)> = p
        .generators
        .iter()
        .filter(|(n, f)| f.as_poly().map_or(true, |q| print_poly(q) != *n))
        .cloned()
        .collect();
    if !gens.is_empty() {
        text.push_str("generators:\n");
        text.push_str(&images_text(&gens, "=").lines().map(|l| format!("  {l}\n")).collect::<String>());
    }
    if !p.derived.is_empty() {
        text.push_str("derived:\n");
        text.push_str(&images_text(&p.derived, "=").lines().map(|l| format!("  {l}\n")).collect::<String>());
    }
    for (k, w) in p.weyl.iter().enumerate() {
        let parts: Vec<String> =
            morphism_lines(w).iter().map(|(n, f)| format!("{n} -> {}", print_canonical(f))).collect();
        text.push_str(&format!("weyl {}: {}\n", k + 1, parts.join(", ")));
    }
    if let Some(note) = &p.note {
        text.push_str(&format!("note: {note}\n"));
    }
    let json = json!({
        "kind": p.kind.to_string(),
        "variables": variables(&p.table),
        "relations": p.relations.generators().iter().map(poly_to_json).collect::<Vec<_>>(),
        "generators": images_json(&p.generators),
        "derived": images_json(&p.derived),
        "weyl": p.weyl.iter().map(|w| images_json(&morphism_lines(w))).collect::<Vec<_>>(),
        "note": p.note,
    });
    Outcome::ok(text, json)
}

fn element_out(label: &str, f: &Frac) -> Outcome {
    Outcome::ok(format!("{}\n", print_canonical(f)), json!({ label: element_to_json(f) }))
}

fn execute(cmd: &Command, s: &Session) -> Result<Outcome> {
    let c = &s.c;
    Ok(match cmd {
        Command::PureBranch => presentation_out(&c.pure_branch()?),
        Command::Blowup => presentation_out(&c.blowup_presentation()?),
        Command::WeylInvariants => {
            if s.expr.is_some() {
                let f = s.element()?;
                let r = c.reynolds(&f)?;
                let inv = c.is_weyl_invariant(&f)?;
                let toda = c.toda_base_membership(&f)?;
                let yn = |b: bool| if b { "yes" } else { "no" };
                Outcome::ok(
                    format!(
                        "reynolds: {}\ninvariant: {}\ntoda-base: {}\n",
                        print_canonical(&r),
                        yn(inv),
                        yn(toda)
                    ),
                    json!({ "reynolds": element_to_json(&r), "invariant": inv, "toda_base": toda }),
                )
            } else {
                let mut text = format!("weyl group order: {}\n", c.weyl_group().len());
                let mut gens = Vec::new();
                for (k, w) in c.weyl_generators().iter().enumerate() {
                    let lines = morphism_lines(w);
                    let parts: Vec<String> =
                        lines.iter().map(|(n, f)| format!("{n} -> {}", print_canonical(f))).collect();
                    text.push_str(&format!("weyl {}: {}\n", k + 1, parts.join(", ")));
                    gens.push(images_json(&lines));
                }
                Outcome::ok(text, json!({ "order": c.weyl_group().len(), "generators": gens }))
            }
        }
        Command::EulerSection { side } => {
            let (names, entries): (Vec<String>, Vec<Frac>) = match side {
                Side::Tau => {
                    ((0..c.problem().rank()).map(|i| c.problem().z_name(i)).collect(), c.euler_section()?.entries)
                }
                Side::Eta => {
                    let sh = ShModel::new(c.problem())?;
                    ((0..c.problem().rank()).map(|i| c.problem().z_name(i)).collect(), sh.euler_section()?.entries)
                }
            };
            let items: Vec<(String, Frac)> = names.into_iter().zip(entries).collect();
            Outcome::ok(images_text(&items, "->"), json!({ "section": images_json(&items) }))
        }
        Command::Translate => {
            if s.expr.is_some() {
                element_out("translated", &c.translate(&s.element()?)?)
            } else {
                let items = morphism_lines(c.epsilon_plus());
                let text = if items.is_empty() { "identity\n".to_string() } else { images_text(&items, "->") };
                Outcome::ok(text, json!({ "images": images_json(&items) }))
            }
        }
        Command::Membership => {
            let f = s.element()?;
            match c.matter_membership(&f)? {
                Membership::Member { translated } => Outcome::ok(
                    format!("Member\ntranslate: {}\n", print_canonical(&translated)),
                    json!({ "member": true, "translated": element_to_json(&translated) }),
                ),
                Membership::NotMember { factor, required, translated } => Outcome {
                    text: format!(
                        "NotMember\noffending factor: {}\nrequired power: {required}\n",
                        print_poly(&factor)
                    ),
                    json: json!({
                        "member": false,
                        "factor": poly_to_json(&factor),
                        "required": required,
                        "translated": translated.as_ref().map(element_to_json),
                    }),
                    ok: false,
                },
            }
        }
        Command::Generators => {
            let gens = s.generators()?;
            Outcome::ok(images_text(&gens, "="), json!({ "generators": images_json(&gens) }))
        }
        Command::Presentation => presentation_out(&c.matter_presentation(&s.generators()?)?),
        Command::MuZero => {
            if s.expr.is_some() {
                element_out("fiber", &c.mu_zero_element(&s.element()?)?)
            } else {
                let pres = if c.problem().weights.is_empty() && c.problem().is_abelian() {
                    c.pure_branch()?
                } else {
                    c.matter_presentation(&s.generators()?)?
                };
                presentation_out(&mu_zero_fiber(&pres)?)
            }
        }
        Command::Seidel => {
            let sh = ShModel::new(c.problem())?;
            let mut text = String::new();
            let mut ops = Vec::new();
            for nu in c.problem().distinct_weights() {
                let p = sh.seidel_operator(&nu)?;
                text.push_str(&format!("psi{:?} = {}\n", nu, print_poly(&p)));
                ops.push(json!({ "weight": nu, "operator": poly_to_json(&p) }));
            }
            let sd = sh.diagonal_seidel();
            text.push_str(&format!("s_Delta = {}\n", print_poly(&sd)));
            Outcome::ok(
                text,
                json!({ "variables": variables(sh.table()), "operators": ops, "s_delta": poly_to_json(&sd) }),
            )
        }
        Command::Sh => {
            let sh = ShModel::new(c.problem())?;
            let ring: Vec<&str> = sh.table().names().collect();
            let inverted: Vec<String> = sh.inverted().iter().map(print_poly).collect();
            let mut text = format!(
                "ring: Q[{}]\ninverted: {}\ns_Delta = {}\n",
                ring.join(", "),
                if inverted.is_empty() { "none".to_string() } else { inverted.join(", ") },
                print_poly(&sh.diagonal_seidel())
            );
            let wit = sh.localization_witnesses()?;
            for (p, cof) in &wit {
                text.push_str(&format!("({}) * ({}) = s_Delta\n", print_poly(p), print_poly(cof)));
            }
            for w in &sh.weyl {
                let parts: Vec<String> =
                    morphism_lines(w).iter().map(|(n, f)| format!("{n} -> {}", print_canonical(f))).collect();
                text.push_str(&format!("weyl: {}\n", parts.join(", ")));
            }
            Outcome::ok(
                text,
                json!({
                    "variables": variables(sh.table()),
                    "inverted": sh.inverted().iter().map(poly_to_json).collect::<Vec<_>>(),
                    "s_delta": poly_to_json(&sh.diagonal_seidel()),
                    "witnesses": wit.iter().map(|(p, q)| json!({ "factor": poly_to_json(p), "cofactor": poly_to_json(q) })).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Map => {
            let sh = ShModel::new(c.problem())?;
            let img = sh.section_homomorphism(c, &s.element()?)?;
            let acc = ShModel::acceleration_membership(&img);
            Outcome::ok(
                format!("{}\naccelerated: {}\n", print_canonical(&img), if acc { "yes" } else { "no" }),
                json!({ "image": element_to_json(&img), "accelerated": acc }),
            )
        }
        Command::VerifyDiagram => {
            let sh = ShModel::new(c.problem())?;
            let report = sh.verify_diagram(c, &s.generators()?)?;
            let json = json!({
                "passed": report.passed,
                "entries": report.entries.iter().map(|e| json!({
                    "name": e.name,
                    "image": element_to_json(&e.image),
                    "accelerated": e.accelerated,
                })).collect::<Vec<_>>(),
                "products": report.products.iter().map(|p| json!({
                    "left": report.entries[p.left].name,
                    "right": report.entries[p.right].name,
                    "multiplicative": p.multiplicative,
                })).collect::<Vec<_>>(),
            });
            Outcome { text: format!("{report}\n"), json, ok: report.passed }
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonMemberGenerator { .. } | Error::IncompatibleSection(_) => 1,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = (|| -> Result<Outcome> {
        let path = cli.problem.as_ref().ok_or_else(|| Error::InvalidProblem("--problem is required".into()))?;
        let file = ProblemFile::load(path)?;
        let c = Coulomb::new(&file.problem()?)?;
        let degree = cli.degree.unwrap_or(file.degree);
        if degree == 0 {
            return Err(Error::InvalidProblem("degree must be at least 1".into()));
        }
        let session = Session { file, c, degree, expr: cli.expr.clone() };
        execute(&cli.command, &session)
    })();
    match result {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json")),
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
