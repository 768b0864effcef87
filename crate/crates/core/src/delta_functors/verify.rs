use std::fmt;

use num_bigint::BigInt;

use super::functor::DeltaFunctor;
use crate::abgroups::{verify_exactness, AbMorphism, PreimagePolicy, WitnessKind};
use crate::error::{Error, Result};
use crate::group_cohomology::{GMorphism, ModuleSes};
use crate::intlinalg::sparse_columns;

/// A morphism of short exact sequences `(α, β, γ)` from `top` to `bottom`.
#[derive(Clone, Debug)]
pub struct SesMorphism {
    pub top: ModuleSes,
    pub bottom: ModuleSes,
    pub alpha: GMorphism,
    pub beta: GMorphism,
    pub gamma: GMorphism,
}

impl SesMorphism {
    /// Checks that both squares commute on the nose (modulo relations).
    pub fn new(
        top: ModuleSes,
        bottom: ModuleSes,
        alpha: GMorphism,
        beta: GMorphism,
        gamma: GMorphism,
    ) -> Result<Self> {
        let s = SesMorphism {
            top,
            bottom,
            alpha,
            beta,
            gamma,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        let left_a = self.top.inclusion.then(&self.beta)?;
        let left_b = self.alpha.then(&self.bottom.inclusion)?;
        if !left_a.as_ab().equals(left_b.as_ab()) {
            return Err(Error::InvalidInput(
                "left square of the sequence morphism does not commute".into(),
            ));
        }
        let right_a = self.top.projection.then(&self.gamma)?;
        let right_b = self.beta.then(&self.bottom.projection)?;
        if !right_a.as_ab().equals(right_b.as_ab()) {
            return Err(Error::InvalidInput(
                "right square of the sequence morphism does not commute".into(),
            ));
        }
        Ok(())
    }
}

/// Sequences and sequence morphisms a functor is checked against.
#[derive(Clone, Debug, Default)]
pub struct DeltaCorpus {
    pub sequences: Vec<(String, ModuleSes)>,
    pub morphisms: Vec<(String, SesMorphism)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// The long sequence is exact at every checked node.
    Exactness,
    /// `H^{n+1}(α) ∘ δ = δ' ∘ H^n(γ)`.
    ConnectingNaturality { degree: usize },
    /// `H^n(β) ∘ H^n(i) = H^n(i') ∘ H^n(α)` and the analogous square for the projections.
    InducedNaturality { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The node index in the long sequence and the offending element.
    Exactness {
        node: usize,
        kind: WitnessKind,
        element: Vec<BigInt>,
    },
    /// A generator on which the two composites of a square differ.
    Square {
        generator: usize,
        left: Vec<BigInt>,
        right: Vec<BigInt>,
    },
    /// The check could not be run.
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub kind: CheckKind,
    pub pass: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default)]
pub struct DeltaFunctorReport {
    pub functor: String,
    pub checks: Vec<CheckResult>,
}

impl DeltaFunctorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for DeltaFunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let what = match c.kind {
                CheckKind::Exactness => "exactness".to_string(),
                CheckKind::ConnectingNaturality { degree } => {
                    format!("delta naturality n={degree}")
                }
                CheckKind::InducedNaturality { degree } => format!("induced naturality n={degree}"),
            };
            write!(
                f,
                "{} {} {}: {}",
                self.functor,
                c.label,
                what,
                if c.pass { "pass" } else { "FAIL" }
            )?;
            if let Some(w) = &c.witness {
                write!(f, " ({})", format_witness(w))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn format_witness(w: &Witness) -> String {
    let v = |x: &[BigInt]| {
        x.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match w {
        Witness::Exactness {
            node,
            kind,
            element,
        } => format!("node {node} {kind:?} [{}]", v(element)),
        Witness::Square {
            generator,
            left,
            right,
        } => format!("generator {generator}: [{}] vs [{}]", v(left), v(right)),
        Witness::Failed(msg) => msg.clone(),
    }
}

/// The long sequence `F^0(A) → F^0(B) → F^0(C) → F^1(A) → … → F^{n_max+1}(A)`
/// assembled from the functor's own data.
pub fn functor_les<F: DeltaFunctor + ?Sized>(
    f: &F,
    ses: &ModuleSes,
    n_max: usize,
    policy: PreimagePolicy,
) -> Result<Vec<AbMorphism>> {
    let mut maps = Vec::with_capacity(3 * (n_max + 1));
    for n in 0..=n_max {
        maps.push(f.induced(&ses.inclusion, n)?);
        maps.push(f.induced(&ses.projection, n)?);
        maps.push(f.connecting(ses, n, policy)?);
    }
    Ok(maps)
}

/// First generator on which `a` and `b` differ, as a square witness.
pub fn compare_maps(a: &AbMorphism, b: &AbMorphism) -> Option<Witness> {
    if a.source().rank() != b.source().rank() || a.target().rank() != b.target().rank() {
        return Some(Witness::Failed("composites have different shapes".into()));
    }
    let diff = a.matrix().sub(b.matrix());
    sparse_columns(&diff)
        .iter()
        .position(|c| !a.target().is_relation_sparse(c))
        .map(|j| Witness::Square {
            generator: j,
            left: a.target().normal_form(&a.matrix().column(j)),
            right: a.target().normal_form(&b.matrix().column(j)),
        })
}

fn run(label: &str, kind: CheckKind, r: Result<Option<Witness>>) -> CheckResult {
    let witness = r.unwrap_or_else(|e| Some(Witness::Failed(e.to_string())));
    CheckResult {
        label: label.to_string(),
        kind,
        pass: witness.is_none(),
        witness,
    }
}

/// Checks the δ-functor axioms on a corpus: exactness of the long sequence of
/// every short exact sequence and commutativity of every naturality square.
pub fn verify_delta_functor<F: DeltaFunctor + ?Sized>(
    f: &F,
    corpus: &DeltaCorpus,
    n_max: usize,
    policy: PreimagePolicy,
) -> DeltaFunctorReport {
    let mut checks = Vec::new();
    for (label, ses) in &corpus.sequences {
        let r = functor_les(f, ses, n_max, policy).map(|maps| {
            let report = verify_exactness(&maps);
            report.first_failure().map(|n| {
                let (kind, element) = n.witness.clone().expect("failed node has a witness");
                Witness::Exactness {
                    node: n.node,
                    kind,
                    element,
                }
            })
        });
        checks.push(run(label, CheckKind::Exactness, r));
    }
    for (label, m) in &corpus.morphisms {
        for n in 0..=n_max {
            checks.push(run(
                label,
                CheckKind::InducedNaturality { degree: n },
                induced_square(f, m, n),
            ));
            checks.push(run(
                label,
                CheckKind::ConnectingNaturality { degree: n },
                connecting_square(f, m, n, policy),
            ));
        }
    }
    DeltaFunctorReport {
        functor: f.name(),
        checks,
    }
}

fn induced_square<F: DeltaFunctor + ?Sized>(
    f: &F,
    m: &SesMorphism,
    n: usize,
) -> Result<Option<Witness>> {
    let a = f
        .induced(&m.top.inclusion, n)?
        .then(&f.induced(&m.beta, n)?)?;
    let b = f
        .induced(&m.alpha, n)?
        .then(&f.induced(&m.bottom.inclusion, n)?)?;
    if let Some(w) = compare_maps(&a, &b) {
        return Ok(Some(w));
    }
    let a = f
        .induced(&m.top.projection, n)?
        .then(&f.induced(&m.gamma, n)?)?;
    let b = f
        .induced(&m.beta, n)?
        .then(&f.induced(&m.bottom.projection, n)?)?;
    Ok(compare_maps(&a, &b))
}

fn connecting_square<F: DeltaFunctor + ?Sized>(
    f: &F,
    m: &SesMorphism,
    n: usize,
    policy: PreimagePolicy,
) -> Result<Option<Witness>> {
    let a = f
        .connecting(&m.top, n, policy)?
        .then(&f.induced(&m.alpha, n + 1)?)?;
    let b = f
        .induced(&m.gamma, n)?
        .then(&f.connecting(&m.bottom, n, policy)?)?;
    Ok(compare_maps(&a, &b))
}
