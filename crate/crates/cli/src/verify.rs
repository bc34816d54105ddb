use std::collections::BTreeSet;

use clap::ValueEnum;
use ellis_core::chain::{
    arrow, lattice_arrows, quotient_along, quotient_point, ExtendedPoint, Space,
};
use ellis_core::ellis::{
    ellis_compose, induce_quotient_obs, xi_restrict, EllisElementFin, GroupKind,
};
use ellis_core::partial::{compose, enumerate_monoid, Mode, PartialBijection};
use ellis_core::sample::{observe, Sampler};
use ellis_core::semigroup::{
    check_homomorphism, check_inverse_monoid, close_under_composition, enumerate_all_ideals,
    rank_ideal, rees_quotient, FiniteMonoid,
};
use ellis_core::{Rational, Scalar};
use serde::Serialize;
use serde_json::json;

use crate::{json, Caps, Failure, Format, Report};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    InverseAxioms,
    Ideals,
    Rees,
    Xi,
    Lattice,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::InverseAxioms => "inverse-axioms",
            Suite::Ideals => "ideals",
            Suite::Rees => "rees",
            Suite::Xi => "xi",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        }
    }
}

#[derive(Serialize)]
struct Check {
    check: String,
    pass: bool,
    detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        check: name.into(),
        pass,
        detail: detail.into(),
    }
}

pub fn run(
    suite: Suite,
    n: usize,
    seed: u64,
    format: Format,
    caps: &Caps,
) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let suites = match suite {
        Suite::All => vec![
            Suite::InverseAxioms,
            Suite::Ideals,
            Suite::Rees,
            Suite::Xi,
            Suite::Lattice,
        ],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        match s {
            Suite::InverseAxioms => inverse_axioms(n, caps, &mut checks)?,
            Suite::Ideals => ideals(n, caps, &mut checks)?,
            Suite::Rees => rees(n, caps, &mut checks)?,
            Suite::Xi => xi(n, caps, &mut checks)?,
            Suite::Lattice => lattice(seed, &mut checks)?,
            Suite::All => unreachable!(),
        }
    }
    let ok = checks.iter().all(|c| c.pass);
    let text = match format {
        Format::Json => json(&json!({
            "suite": suite.name(),
            "n": n,
            "pass": ok,
            "checks": checks,
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &checks {
                w.serialize(c).map_err(|e| Failure::Input(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(bytes).expect("utf-8")
        }
    };
    Ok(Report { text, ok })
}

fn monoid(n: usize, mode: Mode, caps: &Caps) -> Result<FiniteMonoid, Failure> {
    let elements = enumerate_monoid(n, mode, caps.n)?;
    Ok(close_under_composition(&elements, caps.closure)?)
}

fn inverse_axioms(n: usize, caps: &Caps, out: &mut Vec<Check>) -> Result<(), Failure> {
    for mode in [Mode::I, Mode::J] {
        let s = monoid(n, mode, caps)?;
        let r = check_inverse_monoid(&s);
        let detail = match r.witnesses.first() {
            None => format!("{} elements, each with a unique inverse", s.order()),
            Some((a, k)) => format!("element {} has {k} generalized inverses", s.label(*a)),
        };
        out.push(check(format!("inverse-axioms {mode}_{n}"), r.ok, detail));
    }
    Ok(())
}

fn ideals(n: usize, caps: &Caps, out: &mut Vec<Check>) -> Result<(), Failure> {
    for mode in [Mode::I, Mode::J] {
        let s = monoid(n, mode, caps)?;
        let got: Vec<Vec<usize>> = enumerate_all_ideals(&s, caps.closure)?
            .iter()
            .map(|i| i.members().to_vec())
            .collect();
        let mut want = vec![Vec::new()];
        for k in 0..=n {
            want.push(rank_ideal(&s, k)?.members().to_vec());
        }
        let sizes: Vec<String> = got.iter().map(|i| i.len().to_string()).collect();
        out.push(check(
            format!("ideals {mode}_{n}"),
            got == want,
            format!("ideal sizes {}", sizes.join(",")),
        ));
    }
    Ok(())
}

fn rees(n: usize, caps: &Caps, out: &mut Vec<Check>) -> Result<(), Failure> {
    for mode in [Mode::I, Mode::J] {
        let s = monoid(n, mode, caps)?;
        for k in 0..=n {
            let ideal = rank_ideal(&s, k)?;
            let r = rees_quotient(&s, &ideal)?;
            let q = &r.quotient;
            let mut problems: Vec<&str> = q.check_axioms();
            if q.order() != s.order() - ideal.len() + 1 {
                problems.push("order");
            }
            if !check_homomorphism(&r.map, &s, q) {
                problems.push("homomorphism");
            }
            if q.star().is_none() {
                problems.push("involution");
            }
            let detail = if problems.is_empty() {
                format!("order {}", q.order())
            } else {
                problems.join(", ")
            };
            out.push(check(
                format!("rees {mode}_{n}/rank<={k}"),
                problems.is_empty(),
                detail,
            ));
        }
    }
    Ok(())
}

fn xi(n: usize, caps: &Caps, out: &mut Vec<Check>) -> Result<(), Failure> {
    let carrier: Vec<Rational> = (1..=n as i64).map(Rational::from_i64).collect();
    for (mode, group) in [(Mode::I, GroupKind::Sym), (Mode::J, GroupKind::Aut)] {
        let cores: Vec<PartialBijection<Rational>> = enumerate_monoid(n, mode, caps.n)?
            .iter()
            .map(|f| {
                let pairs = f.pairs().map(|(x, y)| {
                    (
                        Rational::from_i64(i64::from(*x)),
                        Rational::from_i64(i64::from(*y)),
                    )
                });
                PartialBijection::new(carrier.clone(), pairs)
            })
            .collect::<Result<_, _>>()?;
        let elems: Vec<EllisElementFin<Rational>> = cores
            .iter()
            .map(|c| EllisElementFin::new(c.clone(), group))
            .collect::<Result<_, _>>()?;
        let images: BTreeSet<_> = elems.iter().map(xi_restrict).collect();
        let mut mismatches = 0usize;
        for (f, cf) in elems.iter().zip(&cores) {
            for (g, cg) in elems.iter().zip(&cores) {
                if xi_restrict(&ellis_compose(f, g)?) != compose(cf, cg)? {
                    mismatches += 1;
                }
            }
        }
        let bijective = images.len() == cores.len();
        out.push(check(
            format!("xi {mode}_{n}"),
            bijective && mismatches == 0,
            format!(
                "{} pairs, {mismatches} mismatches",
                cores.len() * cores.len()
            ),
        ));
    }
    Ok(())
}

fn lattice(seed: u64, out: &mut Vec<Check>) -> Result<(), Failure> {
    let mut s = Sampler::new(seed);
    let arrows = lattice_arrows();
    let mut points = 0usize;
    let mut bad = 0usize;
    while points < 1000 {
        for p in s.points::<Rational>(Space::BmX) {
            points += 1;
            for a in arrows.iter().filter(|a| a.from == Space::BmX) {
                for b in arrows.iter().filter(|b| b.from == a.to) {
                    let two = quotient_along(&[a.from, a.to, b.to], &p)?;
                    if arrow(a.from, b.to).is_none() || quotient_point(a.from, b.to, &p)? != two {
                        bad += 1;
                    }
                }
            }
        }
    }
    out.push(check(
        "lattice commutation",
        bad == 0,
        format!("{points} points, {bad} disagreements"),
    ));
    let mut pushed_bad = 0usize;
    for i in 0..200 {
        let g = s.pl::<Rational>(4);
        let (from, to) = [
            (Space::BmX, Space::BlrX),
            (Space::BmX, Space::BudX),
            (Space::BmX, Space::AlphaX),
            (Space::CmX, Space::CX),
        ][i % 4];
        let pts = s.points::<Rational>(from);
        let pushed = induce_quotient_obs(&observe(&g, from, &pts), from, to)?;
        let images: BTreeSet<ExtendedPoint<Rational>> = pts
            .iter()
            .map(|p| quotient_point(from, to, p))
            .collect::<Result<_, _>>()?;
        let direct = observe(&g, to, &images.into_iter().collect::<Vec<_>>());
        if pushed.normalized().entries != direct.normalized().entries {
            pushed_bad += 1;
        }
    }
    out.push(check(
        "pushed observations",
        pushed_bad == 0,
        format!("200 sampled automorphisms, {pushed_bad} disagreements"),
    ));
    Ok(())
}
