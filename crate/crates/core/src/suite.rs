//! Verification suites behind the command-line front end, and the report format.

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cluster::{self, Boundary, ClusterGraph, OddNormalization, Parity, Stabilizer};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::hypergraph::{EdgeFunctional, HopfHyperedge, HopfHypergraph, QuditHyperedge, QuditHypergraph};
use crate::io::{self, Hypergraph};
use crate::lattice::{self, ChainModel};
use crate::linalg::{self, C64};
use crate::ops::{self, Direction, ZKind};
use crate::qd;
use crate::rep::{self, FusionRing, Representation};
use crate::report::Residuals;
use crate::state::{self, StateVector};
use crate::tn;
use crate::zoo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_AXIOM: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_RESIDUAL: i32 = 5;

/// Exit code for an error raised before any residual is compared.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AxiomViolation { .. } | Error::NotAGroup(_) => EXIT_AXIOM,
        Error::MemoryBudgetExceeded { .. } | Error::ContractionBudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_PARSE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Haar,
    Reps,
    Fusion,
    Cluster,
    Lcp,
    Symmetry,
    Qd,
    Tn,
    Hypergraph,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Axioms,
        Suite::Haar,
        Suite::Reps,
        Suite::Fusion,
        Suite::Cluster,
        Suite::Lcp,
        Suite::Symmetry,
        Suite::Qd,
        Suite::Tn,
        Suite::Hypergraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Haar => "haar",
            Suite::Reps => "reps",
            Suite::Fusion => "fusion",
            Suite::Cluster => "cluster",
            Suite::Lcp => "lcp",
            Suite::Symmetry => "symmetry",
            Suite::Qd => "qd",
            Suite::Tn => "tn",
            Suite::Hypergraph => "hypergraph",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
                continue;
            }
            let suite = Suite::ALL
                .into_iter()
                .find(|x| x.name() == part)
                .ok_or_else(|| Error::Parse(format!("unknown suite `{part}`")))?;
            out.push(suite);
        }
        out.dedup();
        if out.is_empty() {
            return Err(Error::Parse("no suite selected".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraSource {
    Zoo(String),
    File(PathBuf),
}

/// A 1D chain: `L` odd sites and the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpec {
    pub l: usize,
    pub boundary: Boundary,
}

impl ChainSpec {
    /// Accepts `L=2,periodic`, `3,open`, `L=4`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut l = None;
        let mut boundary = Boundary::Periodic;
        for part in s.split(',').map(str::trim) {
            match part {
                "periodic" | "pbc" => boundary = Boundary::Periodic,
                "open" | "obc" => boundary = Boundary::Open,
                p => {
                    let n = p.strip_prefix("L=").unwrap_or(p);
                    l = Some(n.parse::<usize>().map_err(|_| Error::Parse(format!("bad chain spec `{s}`")))?);
                }
            }
        }
        let l = l.ok_or_else(|| Error::Parse(format!("chain spec `{s}` has no length")))?;
        Ok(ChainSpec { l, boundary })
    }

    pub fn label(&self) -> String {
        let b = match self.boundary {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        };
        format!("L={},{b}", self.l)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub suites: Vec<Suite>,
    pub chain: Option<ChainSpec>,
    pub graph: Option<PathBuf>,
    pub hypergraph: Option<PathBuf>,
    pub tol: f64,
    pub budget: Option<u128>,
    pub seed: u64,
    pub samples: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebra: AlgebraSource::Zoo("Z2".into()),
            suites: vec![Suite::Axioms],
            chain: None,
            graph: None,
            hypergraph: None,
            tol: 1e-9,
            budget: None,
            seed: 7,
            samples: 3,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.budget == Some(0) {
            return Err(Error::Parse("budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub algebra: String,
    pub suites: Vec<Suite>,
    pub params: Vec<(String, String)>,
    pub seed: u64,
    pub tol: f64,
    pub residuals: Residuals,
    pub info: Vec<(String, String)>,
    pub max_residual: f64,
    pub failures: Vec<(String, f64)>,
    pub exit_code: i32,
}

impl Report {
    /// `key = value` lines followed by a JSON summary block.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra = {}", self.algebra);
        let names: Vec<&str> = self.suites.iter().map(|x| x.name()).collect();
        let _ = writeln!(s, "suites = {}", names.join(","));
        for (k, v) in &self.params {
            let _ = writeln!(s, "{k} = {v}");
        }
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "tol = {:e}", self.tol);
        for (k, v) in &self.info {
            let _ = writeln!(s, "{k} = {v}");
        }
        for (k, v) in &self.residuals.entries {
            let _ = writeln!(s, "{k} = {v:.3e}");
        }
        let _ = writeln!(s, "max_residual = {:.3e}", self.max_residual);
        let _ = writeln!(s, "failures = {}", self.failures.len());
        let _ = writeln!(s, "status = {}", if self.exit_code == EXIT_OK { "pass" } else { "fail" });
        let _ = writeln!(s, "--- summary ---");
        let summary = serde_json::json!({
            "algebra": self.algebra,
            "suites": names,
            "seed": self.seed,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "failures": self.failures,
            "exit_code": self.exit_code,
        });
        let _ = writeln!(s, "{summary}");
        s
    }
}

pub fn load_algebra(src: &AlgebraSource) -> Result<(HopfAlgebra, Option<Vec<Representation>>)> {
    match src {
        AlgebraSource::Zoo(name) => Ok((zoo::by_name(name)?, None)),
        AlgebraSource::File(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let loaded = io::parse_algebra(&text)?;
            Ok((loaded.algebra, loaded.irreps))
        }
    }
}

fn read(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

struct Ctx<'a> {
    a: &'a HopfAlgebra,
    irreps: Vec<Representation>,
    cfg: &'a RunConfig,
    res: Residuals,
    info: Vec<(String, String)>,
}

/// Runs the configured suites. Errors that stop a run before residuals can
/// be compared (parse, axiom, budget) are returned as `Err`.
pub fn run_suite(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    state::set_amplitude_budget(cfg.budget);
    let out = run_inner(cfg);
    state::set_amplitude_budget(None);
    let report = out?;
    if let Some(p) = &cfg.out {
        std::fs::write(p, report.render()).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    }
    Ok(report)
}

fn run_inner(cfg: &RunConfig) -> Result<Report> {
    let (a, supplied) = load_algebra(&cfg.algebra)?;
    let irreps = rep::decompose_irreps(&a, supplied.as_deref())?;
    let mut ctx = Ctx { a: &a, irreps, cfg, res: Residuals::new(), info: Vec::new() };
    let mut params = Vec::new();
    if let Some(c) = cfg.chain {
        params.push(("chain".to_string(), c.label()));
    }
    if let Some(g) = &cfg.graph {
        params.push(("graph".to_string(), g.display().to_string()));
    }
    for s in &cfg.suites {
        match s {
            Suite::Axioms => axioms(&mut ctx)?,
            Suite::Haar => haar(&mut ctx)?,
            Suite::Reps => reps(&mut ctx)?,
            Suite::Fusion => fusion(&mut ctx)?,
            Suite::Cluster => cluster_suite(&mut ctx)?,
            Suite::Lcp => lcp(&mut ctx)?,
            Suite::Symmetry => symmetry(&mut ctx)?,
            Suite::Qd => qd_suite(&mut ctx)?,
            Suite::Tn => tn_suite(&mut ctx)?,
            Suite::Hypergraph => hypergraph_suite(&mut ctx)?,
        }
    }
    let failures = ctx.res.failures(cfg.tol);
    let axiom_failed = failures.iter().any(|f| f.0.starts_with("axioms."));
    let exit_code = match (axiom_failed, failures.is_empty()) {
        (true, _) => EXIT_AXIOM,
        (false, false) => EXIT_RESIDUAL,
        _ => EXIT_OK,
    };
    Ok(Report {
        algebra: a.name().to_string(),
        suites: cfg.suites.clone(),
        params,
        seed: cfg.seed,
        tol: cfg.tol,
        max_residual: ctx.res.max(),
        residuals: ctx.res,
        info: ctx.info,
        failures,
        exit_code,
    })
}

impl Ctx<'_> {
    fn chain(&self) -> ChainSpec {
        self.cfg.chain.unwrap_or(ChainSpec { l: 2, boundary: Boundary::Periodic })
    }

    fn graphs(&self) -> Result<Vec<(String, ClusterGraph)>> {
        if let Some(p) = &self.cfg.graph {
            return Ok(vec![(p.display().to_string(), io::parse_graph(&read(p)?)?)]);
        }
        let c = self.chain();
        Ok(vec![
            ("edge".to_string(), cluster::build_cluster_graph(1, 1, &[(0, 1)], None)?),
            (c.label(), cluster::build_1d_lattice(c.l, c.boundary)?),
        ])
    }

    fn put(&mut self, prefix: &str, r: &Residuals) {
        self.res.extend(&format!("{prefix}."), r);
    }

    fn note(&mut self, k: impl Into<String>, v: impl ToString) {
        self.info.push((k.into(), v.to_string()));
    }
}

fn axioms(ctx: &mut Ctx) -> Result<()> {
    let mut r = Residuals::new();
    for (name, v) in ctx.a.axiom_report()?.entries {
        r.record(name, v);
    }
    ctx.put("axioms", &r);
    Ok(())
}

fn haar(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.a;
    let d = a.dim();
    let lam = a.haar_integral()?;
    let big = a.haar_measure()?;
    let mut r = Residuals::new();
    for x in 0..d {
        let g = a.basis(x);
        let e = a.counit(&g);
        r.record("x lambda - eps(x) lambda", a.multiply(&g, lam)?.max_diff(&lam.scale(e)));
        r.record("lambda x - eps(x) lambda", a.multiply(lam, &g)?.max_diff(&lam.scale(e)));
        let mut f = vec![linalg::ZERO; d];
        f[x] = linalg::ONE;
        let phi = crate::hopf::DualElement::new(f);
        let e = phi.coeffs[0];
        r.record("phi Lambda - phi(1) Lambda", a.dual_multiply(&phi, big).max_diff(&big.scale(e)));
        r.record("Lambda phi - phi(1) Lambda", a.dual_multiply(big, &phi).max_diff(&big.scale(e)));
    }
    r.push("eps(lambda) - 1", (a.counit(lam) - linalg::ONE).norm());
    r.push("Lambda(1) - 1", (big.coeffs[0] - linalg::ONE).norm());
    let dim = a.integral_space_dim();
    r.push("integral space dim - 1", (dim as f64 - 1.0).abs());
    ctx.note("haar.integral_space_dim", dim);
    ctx.put("haar", &r);
    Ok(())
}

fn reps(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.a;
    let mut r = Residuals::new();
    let sum: usize = ctx.irreps.iter().map(|g| g.dim * g.dim).sum();
    r.push("sum d^2 - dim", (sum as f64 - a.dim() as f64).abs());
    for g in &ctx.irreps {
        r.record("representation defect", g.defect(a));
    }
    r.push("fusion basis gram defect", rep::fusion_basis(a, &ctx.irreps)?.gram_defect);
    let dims: Vec<String> = ctx.irreps.iter().map(|g| format!("{}:{}", g.label, g.dim)).collect();
    ctx.note("reps.irreps", dims.join(" "));
    ctx.put("reps", &r);
    Ok(())
}

/// `J_Γ J_Φ` against the fused operator, for all four kinds, as matrices on
/// the full basis.
pub fn j_fusion_residuals(a: &HopfAlgebra, irreps: &[Representation]) -> Residuals {
    let mut r = Residuals::new();
    for kind in ZKind::ALL {
        for g in irreps {
            for f in irreps {
                let lhs = ops::j_matrix(a, kind, g) * ops::j_matrix(a, kind, f);
                let fused = match kind {
                    ZKind::Z | ZKind::ZDagger => rep::tensor_product(a, g, f),
                    _ => rep::tensor_product(a, f, g),
                };
                r.record(&format!("{} fusion", kind.name()), linalg::mat_max_abs_diff(&lhs, &ops::j_matrix(a, kind, &fused)));
            }
        }
    }
    r
}

fn fusion(ctx: &mut Ctx) -> Result<()> {
    let ring = FusionRing::new(ctx.a, &ctx.irreps)?;
    let mut r = Residuals::new();
    r.push("associativity violations", ring.associativity_violations() as f64);
    r.push("dimension violations", ring.dimension_violations() as f64);
    r.push("unit violations", ring.unit_violations() as f64);
    r.extend("", &j_fusion_residuals(ctx.a, &ctx.irreps));
    for (g, lg) in ring.labels.iter().enumerate() {
        for (f, lf) in ring.labels.iter().enumerate() {
            let terms: Vec<String> = ring.n[g][f]
                .iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(p, &n)| if n == 1 { ring.labels[p].clone() } else { format!("{n}{}", ring.labels[p]) })
                .collect();
            ctx.note(format!("fusion.{lg} x {lf}"), terms.join(" + "));
        }
    }
    ctx.put("fusion", &r);
    Ok(())
}

/// `C X⁻¹ C X - I` on every basis pair, for both directions.
pub fn entangler_inverse_residuals(a: &HopfAlgebra) -> Residuals {
    let mut r = Residuals::new();
    let n = a.dim() * a.dim();
    let id = crate::CMat::identity(n, n);
    for (name, dir) in [("CX-> inverse", Direction::Left), ("CX<- inverse", Direction::Right)] {
        let k = ops::controlled_x_kernel(a, dir, true) * ops::controlled_x_kernel(a, dir, false);
        let k2 = ops::controlled_x_kernel(a, dir, false) * ops::controlled_x_kernel(a, dir, true);
        r.push(name, linalg::mat_max_abs_diff(&k, &id).max(linalg::mat_max_abs_diff(&k2, &id)));
    }
    r
}

fn cluster_suite(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.a;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let mut r = entangler_inverse_residuals(a);
    for (_, k) in ctx.graphs()? {
        let psi = cluster::cluster_state(a, &k, OddNormalization::Trivial)?;
        let metrics = vec![a.gram()?; k.num_vertices()];
        let norm = psi.inner(&psi, &metrics)?;
        r.record("norm - 1", (norm - linalg::ONE).norm());
        let g = crate::hopf::AlgebraElement::new(linalg::random_vector(&mut rng, a.dim()));
        let e = a.counit(&g);
        for v in 0..k.num_vertices() {
            let flavors: Vec<(&str, Stabilizer, C64)> = match k.parity(v) {
                Parity::Odd => vec![
                    ("T - 1", Stabilizer::T, linalg::ONE),
                    ("T->_g - eps(g)", Stabilizer::TLeft(g.clone()), e),
                    ("T<-_g - eps(g)", Stabilizer::TRight(g.clone()), e),
                ],
                Parity::Even => {
                    let mut f = vec![("Q - 1", Stabilizer::Q, linalg::ONE)];
                    for irrep in &ctx.irreps {
                        let d = linalg::c(irrep.dim as f64, 0.0);
                        f.push(("Q_G - d_G", Stabilizer::QRep(irrep.clone()), d));
                        f.push(("Q'_G - d_G", Stabilizer::QRepDagger(irrep.clone()), d));
                    }
                    f
                }
            };
            for (name, st, ev) in flavors {
                let out = cluster::apply_stabilizer(a, &k, v, &st, &psi)?;
                r.record(name, out.max_diff(&psi.scale(ev)));
            }
        }
        if let Some(w) = cluster::w_block_order_residual(a, &k, &StateVector::random(psi.dims().to_vec(), &mut rng)?)? {
            r.record("W block order", w);
        }
    }
    ctx.put("cluster", &r);
    Ok(())
}

fn model<'a>(ctx: &Ctx<'a>) -> Result<ChainModel<'a>> {
    let c = ctx.chain();
    ChainModel::new(ctx.a, c.l, c.boundary)
}

fn lcp(ctx: &mut Ctx) -> Result<()> {
    let m = model(ctx)?;
    let r = lattice::check_lcp(&m, ctx.cfg.samples, ctx.cfg.seed)?;
    let g = lattice::ground_state_check(&m, ctx.cfg.seed)?;
    ctx.put("lcp", &r);
    ctx.put("lcp", &g);
    Ok(())
}

fn symmetry(ctx: &mut Ctx) -> Result<()> {
    let m = model(ctx)?;
    let r = lattice::check_symmetries(&m, ctx.cfg.samples, ctx.cfg.seed)?;
    ctx.put("symmetry", &r);
    Ok(())
}

fn qd_suite(ctx: &mut Ctx) -> Result<()> {
    let m = model(ctx)?;
    let (r, n) = qd::check_qd(&m)?;
    ctx.note("qd.basis_states", n);
    ctx.put("qd", &r);
    Ok(())
}

fn tn_suite(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.a;
    let mut r = tn::structure_axioms(a)?;
    r.extend("", &tn::verify_rewrite_rules(a, &ctx.irreps)?);
    r.push("odd tensor cyclicity", tn::odd_cyclicity_residual(a, 4)?);
    r.extend("", &tn::j_composition(a, &ctx.irreps)?);
    for (name, k) in ctx.graphs()? {
        r.extend(&format!("{name} "), &tn::tn_vs_circuit(a, &k, OddNormalization::Trivial)?);
    }
    ctx.put("tn", &r);
    Ok(())
}

/// The CCZ hypergraph state on three qubits.
pub fn ccz_hypergraph() -> QuditHypergraph {
    let plus = vec![C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
    let theta = (0..8).map(|i| if i == 7 { std::f64::consts::PI } else { 0.0 }).collect();
    QuditHypergraph {
        dims: vec![2; 3],
        initial: vec![plus; 3],
        edges: vec![QuditHyperedge { vertices: vec![0, 1, 2], theta, directed: false, multiplicity: 1 }],
    }
}

/// A single even→odd edge as a Hopf hypergraph: `λ` on both vertices and
/// `ψ = |𝒜| Λ∘μ` on the edge.
pub fn edge_hypergraph(a: &HopfAlgebra) -> Result<HopfHypergraph> {
    let lam = a.haar_integral()?.clone();
    let phi = a.haar_measure()?.scale(linalg::c(a.dim() as f64, 0.0));
    Ok(HopfHypergraph::new(
        vec![lam.clone(), lam],
        vec![HopfHyperedge { vertices: vec![0, 1], functional: EdgeFunctional::Product(phi), directed: true }],
    ))
}

fn hypergraph_suite(ctx: &mut Ctx) -> Result<()> {
    let a = ctx.a;
    let mut r = Residuals::new();
    if let Some(p) = &ctx.cfg.hypergraph {
        let psi = match io::parse_hypergraph(&read(p)?, Some(a))? {
            Hypergraph::Qudit(g) => g.state()?,
            Hypergraph::Hopf(g) => g.state(a)?,
        };
        ctx.note("hypergraph.norm", format!("{:.6e}", psi.norm_sqr().sqrt()));
        ctx.note("hypergraph.dims", format!("{:?}", psi.dims()));
    }
    let ccz = ccz_hypergraph().state()?;
    let s = std::f64::consts::FRAC_1_SQRT_2 / 2.0;
    let oracle: Vec<C64> = (0..8).map(|i| C64::new(if i == 7 { -s } else { s }, 0.0)).collect();
    r.push("CCZ oracle", linalg::max_abs_diff(ccz.amps(), &oracle));
    let k = cluster::ClusterGraph::new(vec![Parity::Odd, Parity::Even], &[(1, 0)])?;
    let want = cluster::cluster_state(a, &k, OddNormalization::Haar)?;
    r.push("Hopf edge - cluster edge", edge_hypergraph(a)?.state(a)?.max_diff(&want));
    ctx.put("hypergraph", &r);
    Ok(())
}
