use anyhow::{Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use cohomology_core::abgroups::PreimagePolicy;
use cohomology_core::cech::{
    cech_double_complex, nerve, pointwise_cover, singleton_cover, translate_cover,
    CoefficientSystem,
};
use cohomology_core::cech_bridge::{
    edge_vs_tau, kappa, mu_tau_pair, rho, tau, tau_delta_square, tau_of_cochain, TranslateCover,
};
use cohomology_core::crossed_modules::{roundtrip, three_cocycle_of, CrossedModule, FourTermData};
use cohomology_core::delta_functors::{
    comparison_morphism, connecting_witness, BarFunctor, ComparisonMorphism, DeltaFunctor,
    SmFunctor,
};
use cohomology_core::double_complex::{
    convergence_check, page, random_double_complex, DoubleComplex,
};
use cohomology_core::fixtures;
use cohomology_core::group_cohomology::{
    coefficient_les, cohomology, cup_on_generators, cup_product, group_differential, is_cocycle,
    periodic_cohomology, Cochain, GModule, ModuleSes, Pairing,
};
use cohomology_core::lie_cohomology::{ce_complex, lie_cohomology, LieAlgebra, LieModule};
use cohomology_core::soft_resolution::{sm_cohomology, soft_acyclicity_check};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::document;
use crate::report::{bigs, group_value, invalid, structure, Report};

/// Resource limits shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_degree: Option<usize>,
    pub bound: Option<usize>,
}

impl Limits {
    pub fn degree_or(&self, default: usize) -> usize {
        self.max_degree.unwrap_or(default)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bar cohomology H^n(G, A), optionally checked against the periodic oracle
    Cohomology(CohomologyArgs),
    /// Cohomology through the soft resolution, against the bar complex
    Sm(SmArgs),
    /// Total cohomology of the Čech double complex of a cover of the nerve
    Cech(CechArgs),
    /// Pages and convergence of the spectral sequence of a double complex
    Specseq(SpecseqArgs),
    /// Identities of the maps τ, κ, ρ and μ on cohomology classes
    Tau(TauArgs),
    /// Crossed modules and their classes in H^3
    Xmod(XmodArgs),
    /// Cup products of cohomology generators
    Cup(CupArgs),
    /// Long exact coefficient sequences and their exactness
    Les(LesArgs),
    /// Comparison morphisms between two cohomology theories
    Compare(CompareArgs),
    /// Chevalley–Eilenberg cohomology of a Lie algebra
    Lie(LieArgs),
    /// Checks a workbench document
    Validate(DocArgs),
    /// Runs the tasks of a workbench document
    Run(DocArgs),
    /// Lists the built-in named fixtures
    Fixtures,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Group fixture name (Z1..Z8, V4, S3)
    #[arg(long, default_value = "Z2")]
    pub group: String,
    /// Module fixture name (Ztriv, Z2triv, Zsign, Zrot, regular, ...)
    #[arg(long, default_value = "Ztriv")]
    pub module: String,
}

impl Target {
    fn resolve(&self) -> Result<GModule> {
        fixtures::module(&self.group, &self.module).map_err(|e| invalid(e.to_string()))
    }

    fn label(&self) -> String {
        format!("{}/{}", self.group, self.module)
    }
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub target: Target,
    /// A single degree; without it every degree up to --max-degree
    #[arg(long)]
    pub degree: Option<usize>,
    /// Also compute the periodic-resolution oracle (cyclic groups only)
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct SmArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    Singleton,
    Pointwise,
    Translate,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long, value_enum, default_value = "singleton")]
    pub cover: CoverKind,
    /// Subset V of G containing the identity, for translate covers
    #[arg(long, value_delimiter = ',')]
    pub subset: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct CechArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Args, Debug)]
pub struct SpecseqArgs {
    #[command(flatten)]
    pub target: Target,
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Use random double complexes from this seed instead of a Čech complex
    #[arg(long)]
    pub random: Option<u64>,
    /// Number of random complexes
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Last page printed
    #[arg(long, default_value_t = 2)]
    pub pages: usize,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Subset V of G containing the identity; all of G by default
    #[arg(long, value_delimiter = ',')]
    pub subset: Vec<usize>,
    /// Random cochains b checked in the identities involving ρ
    #[arg(long, default_value_t = 4)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also check the square with the connecting map of this named sequence
    #[arg(long)]
    pub ses: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum XmodInstance {
    /// The zero map A → 0 for the chosen module
    Trivial,
    /// Multiplication by two on Z/4, odd elements acting by inversion
    Doubling,
}

#[derive(Args, Debug)]
pub struct XmodArgs {
    #[command(flatten)]
    pub target: Target,
    /// Classify an explicit crossed module; without it, run the round trip on classes
    #[arg(long, value_enum)]
    pub instance: Option<XmodInstance>,
    /// Number of sampled classes when the group of classes is large
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CupArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    /// Random cochain pairs checked against the Leibniz rule
    #[arg(long, default_value_t = 0)]
    pub leibniz: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct LesArgs {
    #[arg(long, default_value = "Z2")]
    pub group: String,
    /// Named sequence; every sequence of the group by default
    #[arg(long)]
    pub ses: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorKind {
    Bar,
    Sm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleSet {
    Corpus,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value = "bar")]
    pub left: FunctorKind,
    #[arg(long, value_enum, default_value = "sm")]
    pub right: FunctorKind,
    /// Run over a named set of modules instead of --group/--module
    #[arg(long, value_enum)]
    pub module_set: Option<ModuleSet>,
    #[command(flatten)]
    pub target: Target,
    /// Also check compatibility with the connecting maps of the named sequences
    #[arg(long)]
    pub connecting: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieModuleKind {
    Trivial,
    Adjoint,
}

#[derive(Args, Debug)]
pub struct LieArgs {
    /// Algebra fixture name (ab1..ab6, sl2, aff2, heis3)
    #[arg(long, default_value = "sl2")]
    pub algebra: String,
    #[arg(long, value_enum, default_value = "trivial")]
    pub module: LieModuleKind,
}

#[derive(Args, Debug)]
pub struct DocArgs {
    /// Path of a JSON workbench document
    #[arg(long)]
    pub doc: std::path::PathBuf,
}

pub fn dispatch(cmd: &Command, lim: Limits) -> Result<Report> {
    match cmd {
        Command::Cohomology(a) => {
            let m = a.target.resolve()?;
            let mut r = cohomology_report(&m, a.degree, a.oracle, lim)?;
            label(&mut r.value, &a.target);
            Ok(r)
        }
        Command::Sm(a) => {
            let m = a.target.resolve()?;
            let mut r = sm_report(&m, a.degree, lim)?;
            label(&mut r.value, &a.target);
            Ok(r)
        }
        Command::Cech(a) => {
            let m = a.target.resolve()?;
            let mut r = cech_report(&m, &cover_of(&a.cover), lim)?;
            label(&mut r.value, &a.target);
            Ok(r)
        }
        Command::Specseq(a) => specseq(a, lim),
        Command::Tau(a) => {
            let m = a.target.resolve()?;
            let ses = match &a.ses {
                Some(name) => Some(named_ses(&a.target.group, name)?),
                None => None,
            };
            let opts = TauOptions {
                degree: a.degree,
                subset: a.subset.clone(),
                samples: a.samples,
                seed: a.seed,
            };
            let mut r = tau_report(&m, &opts, ses.as_ref())?;
            label(&mut r.value, &a.target);
            Ok(r)
        }
        Command::Xmod(a) => xmod(a),
        Command::Cup(a) => cup(a, lim),
        Command::Les(a) => les(a, lim),
        Command::Compare(a) => compare(a, lim),
        Command::Lie(a) => {
            let g = fixtures::lie_algebra(&a.algebra).map_err(|e| invalid(e.to_string()))?;
            let m = match a.module {
                LieModuleKind::Trivial => LieModule::trivial(&g, 1),
                LieModuleKind::Adjoint => LieModule::adjoint(&g),
            };
            let mut r = lie_report(&g, &m)?;
            if let Value::Object(o) = &mut r.value {
                o.insert("algebra".into(), json!(a.algebra));
                o.insert(
                    "module".into(),
                    json!(format!("{:?}", a.module).to_lowercase()),
                );
            }
            Ok(r)
        }
        Command::Validate(a) => document::validate_file(&a.doc),
        Command::Run(a) => document::run_file(&a.doc, lim),
        Command::Fixtures => Ok(Report::computed(fixtures_value())),
    }
}

fn label(v: &mut Value, t: &Target) {
    if let Value::Object(o) = v {
        o.insert("group".into(), json!(t.group));
        o.insert("module".into(), json!(t.module));
    }
}

fn named_ses(group: &str, name: &str) -> Result<ModuleSes> {
    let all = fixtures::ses_corpus(group).map_err(|e| invalid(e.to_string()))?;
    let names: Vec<String> = all.iter().map(|(n, _)| n.clone()).collect();
    all.into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, s)| s)
        .ok_or_else(|| {
            invalid(format!(
                "unknown sequence `{name}`; known: {}",
                names.join(", ")
            ))
        })
}

fn degree_range(degree: Option<usize>, lim: Limits) -> std::ops::RangeInclusive<usize> {
    match degree {
        Some(d) => d..=d,
        None => 0..=lim.degree_or(3),
    }
}

pub fn cohomology_report(
    m: &GModule,
    degree: Option<usize>,
    oracle: bool,
    lim: Limits,
) -> Result<Report> {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in degree_range(degree, lim) {
        let h = cohomology(m, n)?;
        let mut row =
            json!({ "degree": n, "free_rank": h.free_rank(), "torsion": bigs(h.torsion()) });
        if oracle {
            let p = periodic_cohomology(m, n).map_err(|e| invalid(e.to_string()))?;
            let agree = p.structure() == h.structure();
            pass &= agree;
            row["oracle"] = group_value(&p);
            row["agree"] = json!(agree);
        }
        rows.push(row);
    }
    let mut value = if degree.is_some() {
        rows.pop().expect("one degree")
    } else {
        json!({ "degrees": rows })
    };
    if oracle {
        return Ok(Report::verdict(value, pass));
    }
    value["order"] = json!(m.group().order());
    Ok(Report::computed(value))
}

pub fn sm_report(m: &GModule, degree: Option<usize>, lim: Limits) -> Result<Report> {
    let mut rows = Vec::new();
    let mut pass = true;
    let range = degree_range(degree, lim);
    let top = *range.end();
    for n in range {
        let bar = cohomology(m, n)?;
        let sm = sm_cohomology(m, n)?;
        let agree = bar.structure() == sm.structure();
        pass &= agree;
        rows.push(json!({ "degree": n, "bar": group_value(&bar), "sm": group_value(&sm), "agree": agree }));
    }
    let soft = soft_acyclicity_check(m, top.max(1))?;
    pass &= soft.acyclic();
    let soft_rows: Vec<Value> = soft
        .degrees
        .iter()
        .map(|(n, f, t)| json!({ "degree": n, "group": structure(*f, t) }))
        .collect();
    Ok(Report::verdict(
        json!({ "degrees": rows, "soft_module": soft_rows }),
        pass,
    ))
}

/// A cover of the nerve, by kind and subset.
#[derive(Clone, Debug)]
pub struct CoverChoice {
    pub kind: CoverKind,
    pub subset: Vec<usize>,
}

fn cover_of(a: &CoverArgs) -> CoverChoice {
    CoverChoice {
        kind: a.cover,
        subset: a.subset.clone(),
    }
}

fn cech_complex(m: &GModule, cover: &CoverChoice, n: usize, lim: Limits) -> Result<DoubleComplex> {
    let g = m.group();
    let x = nerve(g, n + 1);
    let c = match cover.kind {
        CoverKind::Singleton => singleton_cover(&x),
        CoverKind::Pointwise => pointwise_cover(&x),
        CoverKind::Translate => {
            let v = if cover.subset.is_empty() {
                (0..g.order()).collect()
            } else {
                cover.subset.clone()
            };
            translate_cover(g, &x, &v).map_err(|e| invalid(e.to_string()))?
        }
    };
    let coeffs = CoefficientSystem::nerve(m, &x)?;
    Ok(cech_double_complex(
        &x,
        &c,
        &coeffs,
        lim.bound.unwrap_or(n + 1),
    )?)
}

pub fn cech_report(m: &GModule, cover: &CoverChoice, lim: Limits) -> Result<Report> {
    let n_max = lim.degree_or(3);
    let dc = cech_complex(m, cover, n_max, lim)?;
    let tot = dc.total_complex();
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 0..=n_max {
        let t = tot.cohomology_at(n)?;
        let b = cohomology(m, n)?;
        let agree = t.structure() == b.structure();
        pass &= agree;
        rows.push(json!({ "degree": n, "total": group_value(&t), "bar": group_value(&b), "agree": agree }));
    }
    let value = json!({
        "cover": format!("{:?}", cover.kind).to_lowercase(),
        "subset": cover.subset,
        "degrees": rows,
    });
    Ok(Report::verdict(value, pass))
}

fn page_value(dc: &DoubleComplex, r: usize) -> Result<Value> {
    let pg = page(dc, r)?;
    let mut entries = Vec::new();
    for p in 0..=dc.p_max() {
        for q in 0..=dc.q_max() {
            let (f, t) = pg.structure(p, q);
            if f > 0 || !t.is_empty() {
                entries.push(json!({ "p": p, "q": q, "group": structure(f, &t) }));
            }
        }
    }
    Ok(json!({ "r": r, "entries": entries }))
}

fn convergence_value(dc: &DoubleComplex, n_max: usize) -> Result<(Value, bool)> {
    let rep = convergence_check(dc, n_max)?;
    let rows: Vec<Value> = rep
        .degrees
        .iter()
        .map(|d| {
            json!({
                "n": d.n,
                "total": structure(d.total.0, &d.total.1),
                "graded": d.graded.iter().map(|g| structure(g.0, &g.1)).collect::<Vec<_>>(),
                "matches": d.matches(),
            })
        })
        .collect();
    Ok((Value::Array(rows), rep.converges()))
}

fn specseq(a: &SpecseqArgs, lim: Limits) -> Result<Report> {
    if let Some(seed) = a.random {
        let mut rows = Vec::new();
        let mut pass = true;
        for s in seed..seed + a.count {
            let dc = random_double_complex(&mut ChaCha8Rng::seed_from_u64(s));
            let (conv, ok) = convergence_value(&dc, dc.n_max())?;
            pass &= ok;
            rows.push(json!({ "seed": s, "p_max": dc.p_max(), "q_max": dc.q_max(), "converges": ok, "degrees": conv }));
        }
        return Ok(Report::verdict(json!({ "complexes": rows }), pass));
    }
    let m = a.target.resolve()?;
    let n_max = lim.degree_or(2);
    let dc = cech_complex(&m, &cover_of(&a.cover), n_max, lim)?;
    let pages = (1..=a.pages.max(1))
        .map(|r| page_value(&dc, r))
        .collect::<Result<Vec<_>>>()?;
    let (conv, ok) = convergence_value(&dc, n_max)?;
    let mut value = json!({
        "cover": format!("{:?}", a.cover.cover).to_lowercase(),
        "pages": pages,
        "convergence": conv,
    });
    label(&mut value, &a.target);
    Ok(Report::verdict(value, ok))
}

/// Parameters of the τ checks.
#[derive(Clone, Debug)]
pub struct TauOptions {
    pub degree: usize,
    pub subset: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

/// Runs the τ identities on every generator of `H^n`, plus the given cocycles.
pub fn tau_report(m: &GModule, o: &TauOptions, ses: Option<&ModuleSes>) -> Result<Report> {
    tau_report_on(m, o, ses, &[])
}

pub fn tau_report_on(
    m: &GModule,
    o: &TauOptions,
    ses: Option<&ModuleSes>,
    extra: &[Cochain],
) -> Result<Report> {
    let n = o.degree;
    if n == 0 {
        return Err(invalid("τ is defined in degrees at least one"));
    }
    let g = m.group();
    let cover = if o.subset.is_empty() {
        TranslateCover::full(g)
    } else {
        TranslateCover::new(g, &o.subset).map_err(|e| invalid(e.to_string()))?
    };
    let subset: Vec<usize> = cover.v().to_vec();
    let h = cohomology(m, n)?;
    let mut cocycles = Vec::new();
    for s in 0..h.ngens() {
        cocycles.push((
            format!("generator {s}"),
            Cochain::new(m, n, h.representative(s))?,
        ));
    }
    for (i, c) in extra.iter().enumerate() {
        if !is_cocycle(m, c)? {
            return Err(invalid(format!("cochain {i} is not a cocycle")));
        }
        cocycles.push((format!("cochain {i}"), c.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, f) in &cocycles {
        let t = tau(m, f, &cover)?;
        let closed = t.cech_differential(&cover).is_zero_in(m);
        let factors = t.equals_in(&kappa(m, f, &cover)?.cech_differential(&cover), m);
        let mut rho_ok = true;
        let mut shift_ok = true;
        for _ in 0..o.samples {
            let b = Cochain::random(m, n - 1, &mut rng, -4..=4);
            let db = group_differential(m, &b)?;
            let drho = rho(m, &b, &cover)?.cech_differential(&cover);
            rho_ok &= drho.equals_in(&tau_of_cochain(m, &db, &cover)?, m);
            let diff = tau(m, &f.add(&db), &cover)?.sub(&t);
            shift_ok &= diff.equals_in(&drho, m);
        }
        let mut row = json!({
            "cocycle": name,
            "tau_closed": closed,
            "tau_is_cech_coboundary_of_kappa": factors,
            "rho_identity": rho_ok,
            "class_invariance": shift_ok,
        });
        let mut ok = closed && factors && rho_ok && shift_ok;
        if n == 2 {
            let p = mu_tau_pair(m, f, &subset)?;
            let c = p.check();
            row["dv_tau_vanishes"] = json!(c.dv_tau_vanishes);
            row["mixed_terms_cancel"] = json!(c.mixed_terms_cancel);
            row["dh_mu_vanishes"] = json!(c.dh_mu_vanishes);
            let homotopy = p.homotopy_to_bar(f)?;
            row["homotopic_to_bar"] = json!(homotopy);
            ok &= c.is_total_cocycle() && homotopy;
        }
        row["pass"] = json!(ok);
        pass &= ok;
        rows.push(row);
    }
    let mut value = json!({ "degree": n, "subset": subset, "cocycles": rows });
    if n <= 2 && extra.is_empty() {
        match edge_vs_tau(m, n, &subset) {
            Ok(e) => {
                let agree = e.agree();
                pass &= agree;
                value["edge_agrees_with_tau"] = json!(agree);
            }
            Err(err) => value["edge_agrees_with_tau"] = json!(format!("not computed: {err}")),
        }
    }
    if let Some(ses) = ses {
        let hc = cohomology(ses.c(), n)?;
        let mut sq = Vec::new();
        for s in 0..hc.ngens() {
            let f = Cochain::new(ses.c(), n, hc.representative(s))?;
            let r = tau_delta_square(ses, &f, &cover)?;
            pass &= r.commutes();
            sq.push(json!({
                "generator": s,
                "commutes": r.commutes(),
                "connecting_is_coboundary": r.connecting_is_coboundary,
            }));
        }
        value["connecting_square"] = Value::Array(sq);
    }
    Ok(Report::verdict(value, pass))
}

fn xmod(a: &XmodArgs) -> Result<Report> {
    let policy = PreimagePolicy::Canonical;
    if let Some(inst) = a.instance {
        let x = match inst {
            XmodInstance::Trivial => CrossedModule::trivial(&a.target.resolve()?)?,
            XmodInstance::Doubling => CrossedModule::z4_doubling(),
        };
        let data = FourTermData::compute(&x)?;
        data.validate(&x)?;
        let c = three_cocycle_of(&x, &data, policy)?;
        let h = cohomology(&data.module, 3)?;
        let class = h.classify(c.values())?;
        let value = json!({
            "instance": format!("{inst:?}").to_lowercase(),
            "m_order": x.m().order(),
            "n_order": x.n().order(),
            "cokernel_order": data.module.group().order(),
            "kernel": structure(data.module.underlying().structure().0, &data.module.underlying().structure().1),
            "h3": group_value(&h),
            "class": bigs(&class),
            "nonzero": class.iter().any(|x| !x.is_zero()),
        });
        return Ok(Report::verdict(value, is_cocycle(&data.module, &c)?));
    }
    let m = a.target.resolve()?;
    let (rows, pass) = xmod_roundtrips(&m, a.samples, a.seed)?;
    let mut value = json!({ "classes": rows });
    label(&mut value, &a.target);
    Ok(Report::verdict(value, pass))
}

/// The round trip on every class of `H^3`, or on `samples` random ones when there are more.
pub fn xmod_roundtrips(m: &GModule, samples: usize, seed: u64) -> Result<(Vec<Value>, bool)> {
    let h = cohomology(m, 3)?;
    if h.free_rank() > 0 {
        return Err(invalid("H^3 must be finite for the round trip"));
    }
    let orders: Vec<u64> = h
        .torsion()
        .iter()
        .map(|t| u64::try_from(t.clone()).map_err(|_| invalid("torsion order too large")))
        .collect::<Result<_>>()?;
    let total: u64 = orders.iter().product();
    let mut classes: Vec<Vec<u64>> = Vec::new();
    if total <= samples.max(1) as u64 {
        for mut k in 0..total {
            let mut c = Vec::with_capacity(orders.len());
            for &o in &orders {
                c.push(k % o);
                k /= o;
            }
            classes.push(c);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            classes.push(orders.iter().map(|&o| rng.gen_range(0..o)).collect());
        }
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for c in classes {
        let coords: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let gamma = Cochain::new(m, 3, h.lift(&coords))?;
        let ok = roundtrip(m, &gamma, PreimagePolicy::Canonical)?;
        pass &= ok;
        rows.push(json!({ "class": bigs(&coords), "roundtrip": ok }));
    }
    Ok((rows, pass))
}

/// The round trip on one given 3-cocycle.
pub fn xmod_roundtrip_one(m: &GModule, gamma: &Cochain) -> Result<bool> {
    Ok(roundtrip(m, gamma, PreimagePolicy::Canonical)?)
}

fn cup(a: &CupArgs, lim: Limits) -> Result<Report> {
    let m = a.target.resolve()?;
    let pr = Pairing::multiplication(&m).map_err(|e| invalid(e.to_string()))?;
    let hp = cohomology(&m, a.p)?;
    let hq = cohomology(&m, a.q)?;
    let mut products = Vec::new();
    for s in 0..hp.ngens() {
        for t in 0..hq.ngens() {
            let c = cup_on_generators(&pr, a.p, s, a.q, t)?;
            products.push(json!({ "left": s, "right": t, "class": bigs(&c), "zero": c.iter().all(Zero::is_zero) }));
        }
    }
    let mut value = json!({ "p": a.p, "q": a.q, "target": group_value(&cohomology(&m, a.p + a.q)?), "products": products });
    let h1 = cohomology(&m, 1)?;
    if h1.ngens() > 0 {
        let x = Cochain::new(&m, 1, h1.representative(0))?;
        let mut power = x.clone();
        let mut rows = Vec::new();
        for k in 1..=lim.degree_or(3) {
            if k > 1 {
                power = cup_product(&pr, &power, &x)?;
            }
            let hk = cohomology(&m, k)?;
            let c = hk.classify(power.values())?;
            rows.push(
                json!({ "degree": k, "class": bigs(&c), "zero": c.iter().all(Zero::is_zero) }),
            );
        }
        value["powers_of_first_generator"] = Value::Array(rows);
    }
    if a.leibniz == 0 {
        label(&mut value, &a.target);
        return Ok(Report::computed(value));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut failures = 0usize;
    for _ in 0..a.leibniz {
        if !leibniz_holds(&pr, &m, a.p, a.q, &mut rng)? {
            failures += 1;
        }
    }
    value["leibniz_samples"] = json!(a.leibniz);
    value["leibniz_failures"] = json!(failures);
    label(&mut value, &a.target);
    Ok(Report::verdict(value, failures == 0))
}

/// `d(c ∪ c') = dc ∪ c' + (−1)^p c ∪ dc'` on one random pair.
pub fn leibniz_holds(
    pr: &Pairing,
    m: &GModule,
    p: usize,
    q: usize,
    rng: &mut impl Rng,
) -> Result<bool> {
    let c = Cochain::random(m, p, rng, -5..=5);
    let c2 = Cochain::random(m, q, rng, -5..=5);
    let lhs = group_differential(m, &cup_product(pr, &c, &c2)?)?;
    let x = cup_product(pr, &group_differential(m, &c)?, &c2)?;
    let y = cup_product(pr, &c, &group_differential(m, &c2)?)?;
    let rhs = if p % 2 == 0 { x.add(&y) } else { x.sub(&y) };
    // exact equality of representatives, compared modulo the relations of A
    let r = m.rank();
    Ok(lhs
        .values()
        .chunks(r)
        .zip(rhs.values().chunks(r))
        .all(|(u, v)| m.underlying().equal_elements(u, v)))
}

fn les(a: &LesArgs, lim: Limits) -> Result<Report> {
    let all = fixtures::ses_corpus(&a.group).map_err(|e| invalid(e.to_string()))?;
    let chosen: Vec<(String, ModuleSes)> = match &a.ses {
        Some(name) => vec![(name.clone(), named_ses(&a.group, name)?)],
        None => all,
    };
    let mut seqs = Vec::new();
    let mut pass = true;
    for (name, ses) in &chosen {
        let (v, ok) = les_value(ses, lim.degree_or(3))?;
        pass &= ok;
        seqs.push(json!({ "name": name, "sequence": v, "exact": ok }));
    }
    Ok(Report::verdict(
        json!({ "group": a.group, "sequences": seqs }),
        pass,
    ))
}

pub fn les_value(ses: &ModuleSes, n_max: usize) -> Result<(Value, bool)> {
    let l = coefficient_les(ses, n_max, PreimagePolicy::Canonical)?;
    let nodes: Vec<Value> = l
        .sequence
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let check = l.report.nodes.iter().find(|c| c.node == i);
            let mut v = json!({
                "node": i,
                "complex": node.complex,
                "degree": node.degree,
                "group": structure(node.free_rank, &node.torsion),
            });
            if let Some(c) = check {
                v["exact"] = json!(c.exact);
                if let Some((kind, w)) = &c.witness {
                    v["witness"] = json!({ "kind": format!("{kind:?}"), "element": bigs(w) });
                }
            }
            v
        })
        .collect();
    Ok((Value::Array(nodes), l.report.all_exact()))
}

fn functor(k: FunctorKind) -> &'static dyn DeltaFunctor {
    match k {
        FunctorKind::Bar => &BarFunctor,
        FunctorKind::Sm => &SmFunctor,
    }
}

fn compare(a: &CompareArgs, lim: Limits) -> Result<Report> {
    let (h, k) = (functor(a.left), functor(a.right));
    let n_max = lim.degree_or(3);
    let modules: Vec<(String, GModule)> = match a.module_set {
        Some(ModuleSet::Corpus) => fixtures::corpus(),
        None => vec![(a.target.label(), a.target.resolve()?)],
    };
    let mut pairs = Vec::new();
    let mut pass = true;
    for (name, m) in &modules {
        let phi = comparison_morphism(h, k, m, n_max, PreimagePolicy::Canonical)
            .with_context(|| format!("comparison morphism for {name}"))?;
        let isos: Vec<bool> = (0..=n_max).map(|n| phi.is_isomorphism(n)).collect();
        let all = isos.iter().all(|&b| b);
        pass &= all;
        pairs.push(json!({ "module": name, "isomorphism": isos, "all": all }));
    }
    let mut value = json!({
        "left": h.name(),
        "right": k.name(),
        "max_degree": n_max,
        "pairs": pairs,
    });
    if a.connecting {
        let mut groups: Vec<String> = modules
            .iter()
            .map(|(n, _)| n.split('/').next().unwrap_or("").to_string())
            .collect();
        groups.dedup();
        let mut rows = Vec::new();
        for gname in groups {
            for (sname, ses) in fixtures::ses_corpus(&gname).map_err(|e| invalid(e.to_string()))? {
                let (commutes, witness) = connecting_commutes(h, k, &ses, n_max)?;
                pass &= commutes;
                rows.push(json!({ "group": gname, "sequence": sname, "commutes": commutes, "first_failure": witness }));
            }
        }
        value["connecting"] = Value::Array(rows);
    }
    value["verdict"] = json!(if pass {
        "all isomorphic"
    } else {
        "not all isomorphic"
    });
    Ok(Report::verdict(value, pass))
}

/// Whether `φ_A ∘ δ_H = δ_K ∘ φ_C` for every degree below `n_max`.
pub fn connecting_commutes(
    h: &dyn DeltaFunctor,
    k: &dyn DeltaFunctor,
    ses: &ModuleSes,
    n_max: usize,
) -> Result<(bool, Value)> {
    let policy = PreimagePolicy::Canonical;
    let phi_a: ComparisonMorphism = comparison_morphism(h, k, ses.a(), n_max, policy)?;
    let phi_c = comparison_morphism(h, k, ses.c(), n_max, policy)?;
    for n in 0..n_max {
        if let Some(w) = connecting_witness(h, k, &phi_a, &phi_c, ses, n, policy)? {
            return Ok((false, json!({ "degree": n, "witness": format!("{w:?}") })));
        }
    }
    Ok((true, Value::Null))
}

pub fn lie_report(g: &LieAlgebra, m: &LieModule) -> Result<Report> {
    let d = g.dim();
    let ce = ce_complex(g, m, d)?;
    let dims = (0..=d)
        .map(|n| Ok(lie_cohomology(g, m, n)?.dim))
        .collect::<Result<Vec<_>>>()?;
    let euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum();
    let chain_euler: i64 = ce
        .dims
        .iter()
        .enumerate()
        .map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum();
    let value = json!({
        "dim": d,
        "module_dim": m.dim(),
        "cochain_dims": ce.dims,
        "cohomology_dims": dims,
        "euler_characteristic": euler,
        "square_zero": true,
    });
    Ok(Report::verdict(value, euler == chain_euler))
}

fn fixtures_value() -> Value {
    let corpus: Vec<String> = fixtures::corpus().into_iter().map(|(n, _)| n).collect();
    let ses: Vec<String> = fixtures::ses_corpus("Z2")
        .map(|v| v.into_iter().map(|(n, _)| n).collect())
        .unwrap_or_default();
    json!({
        "groups": fixtures::GROUP_NAMES,
        "modules": fixtures::MODULE_NAMES,
        "lie_algebras": fixtures::LIE_NAMES,
        "corpus": corpus,
        "sequences_over_Z2": ses,
    })
}
