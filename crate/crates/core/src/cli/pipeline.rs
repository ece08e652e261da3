//! The certification pipelines behind each command.

use std::str::FromStr;

use crate::baseg::{base_folder, certify_24, certify_star, uniqueness_probe, GroupG};
use crate::bigg::{certify_family, counterexample, family_folder, fiber_map, BigGroup, Variant};
use crate::error::{Error, Result};
use crate::loopcore::{
    build_loop, check_bol, is_simple, mult_groups, quotient_induce, table_checks, verify_folder, BolMode, Certificate,
    IndexedGroup, LoopTable, MultKind,
};
use crate::s5mod::{build_psi, build_u};

/// Which `D₁`-submodule other than `W` plays the role of `T₁`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Complement {
    #[default]
    T1,
    T2,
}

impl FromStr for Complement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Complement> {
        match s {
            "t1" => Ok(Complement::T1),
            "t2" => Ok(Complement::T2),
            other => Err(Error::Parse(format!("unknown complement `{other}` (t1|t2)"))),
        }
    }
}

/// The base loop: folder, table and the checks on it.
pub fn base_loop(g: &GroupG) -> Result<LoopTable> {
    let b = base_folder(g)?;
    let ig = IndexedGroup::new(&g.group);
    build_loop(&b.folder(&ig))
}

/// `G`, its folder and the order-96 loop, end to end.
pub fn certify_base(g: &GroupG) -> Certificate {
    let mut cert = Certificate::new("base");
    cert.summary("group_order", g.order() as u64);
    cert.absorb("group", certify_star(g));
    cert.absorb("presentation", certify_24(g));
    let b = match base_folder(g) {
        Ok(b) => b,
        Err(e) => {
            cert.record("base folder", false, e.to_string());
            return cert;
        }
    };
    let ig = IndexedGroup::new(&g.group);
    let folder = b.folder(&ig);
    cert.absorb("folder", verify_folder(&folder));
    let t = match build_loop(&folder) {
        Ok(t) => t,
        Err(e) => {
            cert.record("loop table", false, e.to_string());
            return cert;
        }
    };
    cert.summary("loop_order", t.order() as u64);
    loop_checks(&mut cert, &t, BolMode::Exhaustive);
    let right = cert.summary.get("right_mult_order").cloned();
    cert.record(
        "right multiplication group is G",
        right == Some(g.order().to_string().into()),
        format!("{right:?}"),
    );
    cert.absorb("uniqueness", uniqueness_probe(g));
    cert
}

/// Table checks, Bol, simplicity and `Mlt_ρ` order, with their summaries.
fn loop_checks(cert: &mut Certificate, t: &LoopTable, bol: BolMode) {
    let table = table_checks(t);
    let latin = table.passed();
    cert.absorb("table", table);
    if latin {
        cert.absorb("bol", check_bol(t, bol));
    }
    simplicity_checks(cert, t);
}

fn simplicity_checks(cert: &mut Certificate, t: &LoopTable) {
    match is_simple(t) {
        Ok(s) => {
            let witness = match &s.witness {
                None => format!("all {} nonzero seeds give the whole loop", s.full_seeds),
                Some((x, block)) => format!("normal closure of {x} has {} elements", block.len()),
            };
            cert.record("simple", s.simple, witness);
            cert.summary("simple", s.simple);
            cert.summary("full_seeds", s.full_seeds as u64);
            if let Some((x, block)) = &s.witness {
                cert.summary("witness", *x as u64);
                cert.summary("witness_block_size", block.len() as u64);
            }
        }
        Err(e) => {
            cert.record("simple", false, e.to_string());
        }
    }
    let right = mult_groups(t, MultKind::Right);
    cert.record("right multiplication group", true, right.order.to_string());
    cert.summary("right_mult_order", right.order.to_string());
}

/// A family folder and, at `k = 1`, its loop table.
pub struct Built {
    pub cert: Certificate,
    pub table: Option<LoopTable>,
}

pub fn build_family(g: &GroupG, k: usize, variant: Variant, complement: Complement) -> Result<Built> {
    let u = build_u(g, complement == Complement::T2)?;
    let bg = BigGroup::new(g, &u, k)?;
    let mut cert = certify_family(&bg, variant, true);
    cert.param("complement", format!("{complement:?}").to_lowercase());
    cert.summary("group_order", bg.order().to_string());
    if k != 1 || !cert.passed() {
        return Ok(Built { cert, table: None });
    }
    let psi = match variant {
        Variant::Split => None,
        Variant::Twisted => Some(build_psi(g, &u)?),
    };
    let ff = family_folder(&bg, variant, psi.as_ref())?;
    let t = build_loop(&ff.folder(&bg))?;
    cert.absorb("table", table_checks(&t));

    let base = base_loop(g)?;
    let fiber = fiber_map(&ff, &base_folder(g)?)?;
    let q = quotient_induce(&t, &fiber, Some(&base))?;
    match variant {
        Variant::Split => {
            cert.record(
                "U-deletion quotient is well defined and equals the base loop",
                q.well_defined && q.matches_base == Some(true),
                format!("{:?}", q.witness),
            );
        }
        Variant::Twisted => {
            let witness = q.witness.map_or(String::new(), |((x, y), (x2, y2))| {
                format!("{x}*{y} and {x2}*{y2} lie over the same base pair but not the same base product")
            });
            cert.record("U-deletion quotient is not well defined", !q.well_defined, witness);
        }
    }
    cert.summary("loop_order", t.order() as u64);
    Ok(Built { cert, table: Some(t) })
}

/// Re-validates a table: Latin square, unit, exponent 2 and Bol.
pub fn verify_table(t: &LoopTable, bol: BolMode) -> Certificate {
    let mut cert = Certificate::new("verify");
    cert.summary("loop_order", t.order() as u64);
    let table = table_checks(t);
    let latin = table.passed();
    cert.absorb("table", table);
    if latin {
        let bol = check_bol(t, bol);
        for (key, value) in &bol.params {
            if key != "order" {
                cert.param(key, value.clone());
            }
        }
        cert.absorb("bol", bol);
    }
    cert
}

/// Block analysis of a table.
pub fn simplicity(t: &LoopTable) -> Certificate {
    let mut cert = Certificate::new("simplicity");
    cert.summary("loop_order", t.order() as u64);
    let table = table_checks(t);
    if !table.passed() {
        cert.absorb("table", table);
        return cert;
    }
    simplicity_checks(&mut cert, t);
    cert
}

/// The negative control; passes when the expected failures occur.
pub fn run_counterexample(g: &GroupG) -> Certificate {
    match counterexample(g) {
        Ok(c) => c.certify(),
        Err(e) => {
            let mut cert = Certificate::new("counterexample");
            cert.record("construction", false, e.to_string());
            cert
        }
    }
}
