use std::fmt::Write as _;
use std::path::PathBuf;

use buildings::{
    build_building, delta_two_transitivity, full_aut_plus, s_delta_translation, universal_group, verify_h_v1, verify_ipj, BuildingError,
    BuildingTree, CoxeterSystem,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use filtration::{
    coupled_group, ipk_model, standard_count, verify_factorization, verify_hypothesis, verify_ipk, verify_ipk_in, verify_ipv1,
    verify_ipv1_in, FactorizationOptions, FamilyKind, FiltrationError, OrderIdentity, TreeGroup,
};
use perm_group::{Centre, GroupError, GroupSpec, LocalGroup, DEFAULT_MAX_ORDER};
use serde::Serialize;
use serde_json::{json, Value};
use tree_core::{ball_edge, ball_vertex, build_semiregular, complete_subtrees, Subtree, TreeError, TreeFile, TruncatedTree, V};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "olab", about = "Factorization and representation checks on tree and building groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum Command {
    /// Build and dump a tree, a building or a truncated group.
    Gen(GenArgs),
    /// Run one verification and write its report.
    Verify(VerifyArgs),
    /// Standard representations of a seed's automorphism group.
    Reps(RepsArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Artifact {
    Tree,
    Building,
    Group,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    Hypothesis,
    Ipk,
    Ipv1,
    Factorization,
    Delta2t,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    FullAut,
    FullAutPlus,
    Universal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalKind {
    Sym,
    Alt,
    Cyc,
    Trivial,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Sfull,
    Sq,
    Sp,
    Sv1,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GroupArgs {
    #[arg(long, value_enum, default_value = "full-aut")]
    pub group: GroupKind,
    /// Degrees of the two vertex types.
    #[arg(long, num_args = 2, default_values_t = [3, 3])]
    pub d: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
    /// Local action per vertex type (tree) or per generator (building).
    #[arg(long = "local", value_enum)]
    pub locals: Vec<LocalKind>,
    /// Coxeter file; selects the building's incidence tree.
    #[arg(long)]
    pub coxeter: Option<PathBuf>,
    /// Thickness per generator for a building given inline.
    #[arg(long, num_args = 1..)]
    pub thickness: Vec<usize>,
    /// Commuting generator pairs `i,j` for an inline building.
    #[arg(long)]
    pub commute: Vec<String>,
    /// Gallery depth of the building.
    #[arg(long, default_value_t = 2)]
    pub building_depth: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutArgs {
    /// JSON report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV summary path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub artifact: Artifact,
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "sfull")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub q: usize,
    /// `P` for the SP family, in seed syntax.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Window radius around the base; defaults to one less than the tree radius.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long)]
    pub plus: bool,
    /// Largest number of interior vertices of the subtrees checked by `ipk`.
    #[arg(long, default_value_t = 2)]
    pub max_interior: usize,
    /// Replace the group by a subgroup coupling two half-trees (`ipk`, `ipv1`).
    #[arg(long)]
    pub coupled: bool,
    /// Radius for `delta2t`, and the model radius for `ipv1`.
    #[arg(long, default_value_t = 2)]
    pub check_radius: usize,
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: usize,
    #[arg(long, default_value_t = 0x0f17_2a71)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RepsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// `ball:V:R`, `edge:U,V:R` or `verts:A,B,...`, with `base` allowed for a vertex.
    #[arg(long)]
    pub seed_subtree: Option<String>,
    /// Building chamber whose `R'(c)` ball is the seed.
    #[arg(long)]
    pub chamber: Option<V>,
    /// Check factorization⁺ at the seed depth in the window first.
    #[arg(long)]
    pub check_plus: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Limits(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "configuration error: {s}"),
            CliError::Limits(s) => write!(f, "limit reached: {s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Limits(_) => 3,
        }
    }
}

fn tree_err(e: &TreeError) -> bool {
    matches!(e, TreeError::Window { .. } | TreeError::Capacity { .. })
}

fn group_err(e: &GroupError) -> bool {
    match e {
        GroupError::Capacity { .. } => true,
        GroupError::Tree(t) => tree_err(t),
        _ => false,
    }
}

fn filt_err(e: &FiltrationError) -> bool {
    match e {
        FiltrationError::Capacity { .. } => true,
        FiltrationError::Tree(t) => tree_err(t),
        FiltrationError::Group(g) => group_err(g),
        FiltrationError::Char(c) => match c {
            char_theory::CharError::Capacity { .. } => true,
            char_theory::CharError::Group(g) => group_err(g),
            _ => false,
        },
        FiltrationError::Precondition(_) => false,
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        if tree_err(&e) { CliError::Limits(e.to_string()) } else { CliError::Config(e.to_string()) }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        if group_err(&e) { CliError::Limits(e.to_string()) } else { CliError::Config(e.to_string()) }
    }
}

impl From<FiltrationError> for CliError {
    fn from(e: FiltrationError) -> Self {
        if filt_err(&e) { CliError::Limits(e.to_string()) } else { CliError::Config(e.to_string()) }
    }
}

impl From<BuildingError> for CliError {
    fn from(e: BuildingError) -> Self {
        let limits = match &e {
            BuildingError::Tree(t) => tree_err(t),
            BuildingError::Group(g) => group_err(g),
            BuildingError::Filtration(f) => filt_err(f),
            _ => false,
        };
        if limits { CliError::Limits(e.to_string()) } else { CliError::Config(e.to_string()) }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// What a command produced; `pass` drives the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub pass: bool,
}

/// Capacity for group enumerations, from `OLAB_MAX_GROUP_ORDER`.
pub fn max_group_order() -> Result<usize> {
    match std::env::var("OLAB_MAX_GROUP_ORDER") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Config(format!("OLAB_MAX_GROUP_ORDER={s} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn local(kind: LocalKind, d: usize) -> LocalGroup {
    match kind {
        LocalKind::Sym => LocalGroup::symmetric(d),
        LocalKind::Alt => LocalGroup::alternating(d),
        LocalKind::Cyc => LocalGroup::cyclic(d),
        LocalKind::Trivial => LocalGroup::trivial(d),
    }
}

fn locals_for(kinds: &[LocalKind], degrees: &[usize]) -> Result<Vec<LocalGroup>> {
    match kinds.len() {
        0 => Ok(degrees.iter().map(|&d| LocalGroup::symmetric(d)).collect()),
        1 => Ok(degrees.iter().map(|&d| local(kinds[0], d)).collect()),
        n if n == degrees.len() => Ok(kinds.iter().zip(degrees).map(|(&k, &d)| local(k, d)).collect()),
        n => Err(CliError::Config(format!("{n} local groups given for {} slots", degrees.len()))),
    }
}

/// The tree, or the building's incidence tree, with its group.
pub struct Setup {
    pub group: TreeGroup,
    pub building: Option<BuildingTree>,
    pub locals: Vec<LocalGroup>,
}

impl GroupArgs {
    pub fn is_building(&self) -> bool {
        self.coxeter.is_some() || !self.thickness.is_empty()
    }

    pub fn coxeter_system(&self) -> Result<CoxeterSystem> {
        if let Some(p) = &self.coxeter {
            let s = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            return Ok(CoxeterSystem::from_json(&s)?);
        }
        let mut pairs = Vec::new();
        for c in &self.commute {
            let (a, b) = c.split_once(',').ok_or_else(|| CliError::Config(format!("commute pair {c} is not i,j")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| CliError::Config(format!("bad generator index {x}")));
            pairs.push((parse(a)?, parse(b)?));
        }
        Ok(CoxeterSystem::lettered(&pairs, self.thickness.clone())?)
    }

    pub fn building(&self) -> Result<BuildingTree> {
        Ok(build_building(&self.coxeter_system()?, self.building_depth)?)
    }

    fn validate(&self) -> Result<()> {
        if self.d.len() != 2 || self.d.iter().any(|&d| d < 2) {
            return Err(CliError::Config("--d takes two degrees of at least 2".into()));
        }
        Ok(())
    }

    pub fn setup(&self) -> Result<Setup> {
        self.validate()?;
        if self.is_building() {
            let b = self.building()?;
            let (group, locals) = match self.group {
                GroupKind::FullAutPlus | GroupKind::FullAut => {
                    let l = b.system.q.iter().map(|&q| LocalGroup::symmetric(q)).collect();
                    (full_aut_plus(&b)?, l)
                }
                GroupKind::Universal => {
                    let l = locals_for(&self.locals, &b.system.q)?;
                    (universal_group(&b, &l)?, l)
                }
            };
            return Ok(Setup { group, building: Some(b), locals });
        }
        let (spec, locals) = match self.group {
            GroupKind::FullAut => (GroupSpec::FullAut, Vec::new()),
            GroupKind::FullAutPlus => (GroupSpec::FullAutPlus, Vec::new()),
            GroupKind::Universal => {
                let l = locals_for(&self.locals, &self.d)?;
                (GroupSpec::UniversalLocal { locals: l.clone() }, l)
            }
        };
        let group = TreeGroup::semiregular(self.d[0], self.d[1], spec, self.radius)?;
        Ok(Setup { group, building: None, locals })
    }

    fn spec(&self) -> Result<GroupSpec> {
        Ok(match self.group {
            GroupKind::FullAut => GroupSpec::FullAut,
            GroupKind::FullAutPlus => GroupSpec::FullAutPlus,
            GroupKind::Universal => GroupSpec::UniversalLocal { locals: locals_for(&self.locals, &self.d)? },
        })
    }
}

fn parse_vertex(t: &TruncatedTree, s: &str) -> Result<V> {
    let v = if s == "base" { t.base } else { s.trim().parse().map_err(|_| CliError::Config(format!("bad vertex {s}")))? };
    if v as usize >= t.len() {
        return Err(CliError::Config(format!("vertex {v} is not in the tree")));
    }
    Ok(v)
}

/// Parses `ball:V:R`, `edge:U,V:R` or `verts:A,B,...`.
pub fn parse_subtree(t: &TruncatedTree, s: &str) -> Result<Subtree> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Config(format!("bad subtree {s}; use ball:V:R, edge:U,V:R or verts:A,B"));
    match parts[..] {
        ["ball", v, r] => Ok(ball_vertex(t, parse_vertex(t, v)?, r.parse().map_err(|_| bad())?)?),
        ["edge", uv, r] => {
            let (u, v) = uv.split_once(',').ok_or_else(bad)?;
            Ok(ball_edge(t, parse_vertex(t, u)?, parse_vertex(t, v)?, r.parse().map_err(|_| bad())?)?)
        }
        ["verts", vs] => {
            let vs = vs.split(',').map(|x| parse_vertex(t, x)).collect::<Result<Vec<_>>>()?;
            Ok(Subtree::new(t, vs)?)
        }
        _ => Err(bad()),
    }
}

impl FamilyArgs {
    pub fn kind(&self, g: &TreeGroup) -> Result<FamilyKind> {
        Ok(match self.family {
            Family::Sfull => FamilyKind::SFull,
            Family::Sq => FamilyKind::SQ(self.q),
            Family::Sv1 => FamilyKind::SV1,
            Family::Sp => {
                let p = self.p.as_deref().ok_or_else(|| CliError::Config("--family sp needs --p".into()))?;
                let tree = g.tree();
                FamilyKind::SP { p: parse_subtree(&tree, p)?.verts().to_vec(), k: self.k }
            }
        })
    }

    pub fn window_radius(&self, g: &TreeGroup) -> Result<usize> {
        let r = g.tree().radius;
        let w = self.window.unwrap_or(r.saturating_sub(1));
        if w >= r {
            return Err(CliError::Limits(format!("window radius {w} leaves no margin in a tree of radius {r}")));
        }
        Ok(w)
    }

    pub fn window(&self, g: &TreeGroup) -> Result<Subtree> {
        let t = g.tree();
        Ok(ball_vertex(&t, t.base, self.window_radius(g)?)?)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn envelope(config: &Cli, pass: bool, result: Value) -> Value {
    json!({ "schema": REPORT_SCHEMA, "config": to_value(config), "pass": pass, "result": result })
}

fn csv_of(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("csv in memory");
    for r in rows {
        w.write_record(&r).expect("csv in memory");
    }
    String::from_utf8(w.into_inner().expect("csv in memory")).expect("csv is utf-8")
}

fn verts_str(vs: &[V]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Reps(a) => reps(cli, a),
    }
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<Outcome> {
    let report = match a.artifact {
        Artifact::Tree => {
            a.group.validate()?;
            let t = build_semiregular(a.group.d[0], a.group.d[1], a.group.radius)?;
            let f = TreeFile::from_tree(&t);
            if f.to_semiregular().map(|t2| TreeFile::from_tree(&t2) != f).unwrap_or(true) {
                return Err(CliError::Config("tree does not round-trip".into()));
            }
            to_value(&f)
        }
        Artifact::Building => {
            let b = a.group.building()?;
            let bad = b.check();
            if !bad.is_empty() {
                return Ok(Outcome { report: envelope(cli, false, json!({ "violations": bad })), csv: None, pass: false });
            }
            to_value(&b.to_file())
        }
        Artifact::Group => {
            a.group.validate()?;
            let g = TreeGroup::semiregular(a.group.d[0], a.group.d[1], a.group.spec()?, a.group.radius)?;
            let base = g.tree().base;
            let m = g.model(Centre::Vertex(base), a.group.radius)?;
            json!({ "vertices": m.verts, "group": to_value(&g.model_group(Centre::Vertex(base), a.group.radius)?.dump()) })
        }
    };
    Ok(Outcome { report, csv: None, pass: true })
}

fn ip_rows(ids: &[OrderIdentity]) -> Vec<Vec<String>> {
    ids.iter().map(|r| vec![verts_str(&r.subtree), r.lhs.clone(), r.product.clone(), r.holds.to_string()]).collect()
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome> {
    let cap = max_group_order()?;
    let s = a.group.setup()?;
    let g = &s.group;
    match a.check {
        Check::Hypothesis => {
            let fam = a.family.kind(g)?;
            let (pass, result) = match (&s.building, fam) {
                (Some(b), FamilyKind::SV1) => {
                    let r = verify_h_v1(b, g, &s.locals, a.family.window_radius(g)?)?;
                    (r.report.pass, to_value(&r))
                }
                (_, fam) => {
                    let r = verify_hypothesis(g, &fam, &a.family.window(g)?)?;
                    (r.pass, to_value(&r))
                }
            };
            let rep = result.get("report").unwrap_or(&result).clone();
            let csv = csv_of(
                &["family", "subtrees", "pairs", "failures", "pass"],
                vec![vec![
                    rep["family"].to_string(),
                    rep["subtrees"].to_string(),
                    rep["pairs"].to_string(),
                    rep["failures"].to_string(),
                    pass.to_string(),
                ]],
            );
            Ok(Outcome { report: envelope(cli, pass, result), csv: Some(csv), pass })
        }
        Check::Ipk => {
            if s.building.is_some() {
                return Err(CliError::Config("ipk runs on trees; use ipv1 for buildings".into()));
            }
            let w = a.family.window(g)?;
            let t = g.tree();
            let mut ids = Vec::new();
            for st in complete_subtrees(&t, &w, a.max_interior)?.into_iter().filter(|x| x.len() >= 2) {
                let id = if a.coupled {
                    let (c, r) = ipk_model(g, a.family.k, &st)?;
                    let m = g.model(c, r)?;
                    let grp = g.model_group(c, r)?;
                    let (x, y) = st.edges(&t)[0];
                    verify_ipk_in(&m, &coupled_group(&m, &grp, x, y)?, a.family.k, &st)?
                } else {
                    verify_ipk(g, a.family.k, &st)?
                };
                ids.push(id);
            }
            let pass = ids.iter().all(|r| r.holds);
            let csv = csv_of(&["subtree", "lhs", "product", "holds"], ip_rows(&ids));
            let failures = ids.iter().filter(|r| !r.holds).count();
            let result = json!({ "k": a.family.k, "checked": ids.len(), "failures": failures, "identities": to_value(&ids) });
            Ok(Outcome { report: envelope(cli, pass, result), csv: Some(csv), pass })
        }
        Check::Ipv1 => {
            let t = g.tree();
            let centres: Vec<V> = match &s.building {
                Some(b) => b.full_residues(),
                None => a.family.window(g)?.verts().iter().copied().filter(|&v| t.vtype[v as usize] == 1).collect(),
            };
            let mut ids = Vec::new();
            for w in centres {
                let id = if a.coupled {
                    let m = g.model(Centre::Vertex(w), a.check_radius.max(2))?;
                    let grp = g.model_group(Centre::Vertex(w), a.check_radius.max(2))?;
                    let v = m.tree.neighbors(w)[0];
                    verify_ipv1_in(&m, &coupled_group(&m, &grp, w, v)?, w)?
                } else if let Some(b) = &s.building {
                    let k = b.block_of(w).expect("residue");
                    if w == b.residue_of(b.base(), k).unwrap_or(V::MAX) {
                        verify_ipj(b, g, k, a.check_radius)?
                    } else {
                        verify_ipv1(g, w, a.check_radius)?
                    }
                } else {
                    verify_ipv1(g, w, a.check_radius)?
                };
                ids.push(id);
            }
            let pass = ids.iter().all(|r| r.holds);
            let csv = csv_of(&["ball", "lhs", "product", "holds"], ip_rows(&ids));
            let result = json!({ "checked": ids.len(), "identities": to_value(&ids) });
            Ok(Outcome { report: envelope(cli, pass, result), csv: Some(csv), pass })
        }
        Check::Factorization => {
            let fam = a.family.kind(g)?;
            let w = a.family.window(g)?;
            let opts = FactorizationOptions { budget: a.budget, seed: a.seed, cap, ..FactorizationOptions::default() };
            let r = verify_factorization(g, &fam, a.depth, a.plus, &w, &opts)?;
            let rows = r
                .instances
                .iter()
                .map(|i| {
                    vec![
                        verts_str(&i.u),
                        verts_str(&i.v),
                        i.witness.as_deref().map(verts_str).unwrap_or_default(),
                        i.failure.as_ref().map(|f| f.condition.to_string()).unwrap_or_default(),
                        i.cond2.to_string(),
                        i.cond3.map(|c| c.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            let csv = csv_of(&["u", "v", "witness", "failed_condition", "cond2", "cond3"], rows);
            let pass = r.pass && r.hypothesis_pass;
            Ok(Outcome { report: envelope(cli, pass, to_value(&r)), csv: Some(csv), pass })
        }
        Check::Delta2t => {
            let b = s.building.as_ref().ok_or_else(|| CliError::Config("delta2t needs a building (--coxeter or --thickness)".into()))?;
            let r = delta_two_transitivity(b, g, a.check_radius)?;
            let rows = r
                .classes
                .iter()
                .map(|c| vec![c.delta.render(&b.system), c.chambers.to_string(), c.orbits.to_string()])
                .collect();
            let csv = csv_of(&["delta", "chambers", "orbits"], rows);
            Ok(Outcome { report: envelope(cli, r.pass, to_value(&r)), csv: Some(csv), pass: r.pass })
        }
    }
}

fn reps(cli: &Cli, a: &RepsArgs) -> Result<Outcome> {
    let cap = max_group_order()?;
    let s = a.group.setup()?;
    let g = &s.group;
    let t = g.tree();
    let mut note = None;
    let (fam, seed) = match (&s.building, a.chamber, &a.seed_subtree) {
        (Some(b), Some(c), None) => {
            let sd = s_delta_translation(b, c)?;
            if !sd.equal {
                return Err(CliError::Config(format!("R'({c}) differs from the 2-ball around it")));
            }
            note = Some(format!("seed R'({c}) taken through the incidence tree as B_T({c},2) in the SV1 family"));
            (FamilyKind::SV1, ball_vertex(&t, c, 2)?)
        }
        (_, None, Some(spec)) => (a.family.kind(g)?, parse_subtree(&t, spec)?),
        _ => return Err(CliError::Config("give exactly one of --seed-subtree or --chamber (with a building)".into())),
    };
    let w = if a.check_plus { Some(a.family.window(g)?) } else { None };
    let r = standard_count(g, &fam, &seed, w.as_ref(), cap)?;
    let nh = r.h_subtrees.len();
    let mut header: Vec<String> = vec!["irrep".into(), "degree".into()];
    header.extend((0..nh).map(|i| format!("fixed_h{i}")));
    header.push("standard".into());
    let rows = r
        .irreps
        .iter()
        .map(|row| {
            let mut out = vec![row.label.row.to_string(), row.label.degree.to_string()];
            out.extend(row.fixed.iter().map(|x| x.to_string()));
            out.push(row.standard.to_string());
            out
        })
        .collect();
    let hdr: Vec<&str> = header.iter().map(String::as_str).collect();
    let csv = csv_of(&hdr, rows);
    let mut result = to_value(&r);
    result["correspondence"] = json!(note);
    Ok(Outcome { report: envelope(cli, true, result), csv: Some(csv), pass: true })
}

/// Writes the report (stdout when no path is set) and the CSV summary.
pub fn write_outputs(out: &OutArgs, o: &Outcome) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&o.report).expect("report serializes");
    text.push('\n');
    match &out.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    if let (Some(p), Some(c)) = (&out.csv, &o.csv) {
        std::fs::write(p, c).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

pub fn out_args(cli: &Cli) -> &OutArgs {
    match &cli.command {
        Command::Gen(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Reps(a) => &a.out,
    }
}

/// One-line verdict for stderr.
pub fn summary(cli: &Cli, o: &Outcome) -> String {
    let mut s = String::new();
    let what = match &cli.command {
        Command::Gen(a) => format!("gen {:?}", a.artifact).to_lowercase(),
        Command::Verify(a) => format!("verify {:?}", a.check).to_lowercase(),
        Command::Reps(_) => "reps".into(),
    };
    let _ = write!(s, "{what}: {}", if o.pass { "pass" } else { "FAIL" });
    s
}
