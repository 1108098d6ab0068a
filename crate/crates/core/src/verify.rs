//! The regression suite: every structural check over the bundled corpus and
//! all reflexive polygons, run in parallel with a deterministic report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::criteria::{
    check_minkowski, check_reflexive_criteria, classify_2d, confirm_product, detect_product_projective,
    enumerate_reflexive_2d, DEFAULT_BOX,
};
use crate::error::{Error, Result};
use crate::io::{analyze_subject, build_entry, bundled_corpus, Subject};
use crate::polytope::{is_reflexive, LatticePolytope};
use crate::properties;
use crate::roots::{build_root_basis, compute_roots, cox_classes, default_selection, roots_of_reflexive, RaySet};

/// Random relations tried per item by the root sum check.
const SUM_TRIALS: usize = 200;
/// Ordered boundary pairs are scanned only up to this dimension.
const Z_PAIR_MAX_DIM: usize = 3;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub jobs: usize,
    pub seed: u64,
    pub bound: i64,
    /// Inputs checked in addition to the bundled corpus.
    pub extra: Vec<(String, Subject)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            jobs: 1,
            seed: 0,
            bound: DEFAULT_BOX,
            extra: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ItemResult {
    pub name: String,
    /// Instances examined per check.
    pub checks: BTreeMap<&'static str, usize>,
    pub violations: Vec<String>,
}

impl ItemResult {
    fn record(&mut self, check: &'static str, r: Result<usize>) {
        match r {
            Ok(n) => {
                self.checks.insert(check, n);
            }
            Err(e) => self.violations.push(format!("{check}: {e}")),
        }
    }

    fn record_unit(&mut self, check: &'static str, r: Result<()>) {
        self.record(check, r.map(|()| 1));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub items: Vec<ItemResult>,
    pub polygon_classes: usize,
}

impl VerifyReport {
    pub fn violation_count(&self) -> usize {
        self.items.iter().map(|i| i.violations.len()).sum()
    }

    pub fn summary(&self) -> String {
        format!("{} polygon classes; {} violations", self.polygon_classes, self.violation_count())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for item in &self.items {
            let instances: usize = item.checks.values().sum();
            let status = if item.violations.is_empty() { "ok" } else { "FAIL" };
            let _ = writeln!(
                s,
                "[{status}] {}: {} checks, {instances} instances",
                item.name,
                item.checks.len()
            );
            for v in &item.violations {
                let _ = writeln!(s, "    {v}");
            }
        }
        let _ = writeln!(s, "{}", self.summary());
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .items
            .iter()
            .map(|i| serde_json::json!({"name": i.name, "checks": i.checks, "violations": i.violations}))
            .collect();
        serde_json::json!({
            "items": items,
            "polygon_classes": self.polygon_classes,
            "violations": self.violation_count(),
            "summary": self.summary(),
        })
    }
}

fn reflexive_checks(item: &mut ItemResult, p: &LatticePolytope, rng: &mut ChaCha8Rng) -> Result<()> {
    let rs = roots_of_reflexive(p)?;
    item.record("roots-dual-path", properties::dual_path(p, &rs).map(|()| rs.len()));
    item.record_unit("criteria", check_reflexive_criteria(p).map(|_| ()));
    item.record_unit("minkowski", check_minkowski(p));
    item.record("ortho2", properties::ortho2_pairs(p, &rs));
    item.record("root-proj", properties::root_proj(p, &rs));
    item.record("prisma", properties::prisma(p, &rs));
    if p.dim() <= Z_PAIR_MAX_DIM {
        item.record("z-pairs", properties::z_pairs(p));
    }
    if p.dim() == 2 {
        item.record_unit("polygon", classify_2d(p).map(|_| ()));
    }
    let rays = RaySet::of_polytope(p)?;
    fan_checks(item, &rays, rng, Some(p))
}

fn fan_checks(
    item: &mut ItemResult,
    rays: &RaySet,
    rng: &mut ChaCha8Rng,
    reflexive: Option<&LatticePolytope>,
) -> Result<()> {
    let rs = compute_roots(rays)?;
    item.record("short", properties::short_roots(&rs));
    item.record("short-support", properties::semisimple_support(&rs));
    item.record("sum", properties::sum_relations_random(&rs, rng, SUM_TRIALS));
    item.record("tame", properties::tame_pairs(&rs));
    item.record("neu", properties::neu(&rs));
    item.record("facet-unipotent", properties::facet_unipotent(&rs));
    item.record(
        "symmetric-rays",
        properties::symmetric_rays_bound(rays, &rs).map(|o| usize::from(o.is_some())),
    );
    let dcd = match cox_classes(rays, &rs) {
        Ok(d) => d,
        Err(e) if e.is_violation() => {
            item.violations.push(format!("cox-classes: {e}"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    item.checks.insert("cox-classes", dcd.classes.len());
    if let Some(p) = reflexive {
        if let Some(factors) = detect_product_projective(&rs, &dcd, rays.dim) {
            item.record_unit("product", confirm_product(p, &factors));
        }
        match build_root_basis(&rs, &dcd, &default_selection(&dcd)) {
            Ok(basis) => item.record("ortho1", properties::ortho1(p, &basis)),
            Err(e) => item.violations.push(format!("root-basis: {e}")),
        }
    }
    Ok(())
}

fn check_subject(name: &str, subject: &Subject, seed: u64) -> ItemResult {
    let mut item = ItemResult {
        name: name.to_string(),
        ..ItemResult::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match analyze_subject(name, subject) {
        Ok(report) => {
            item.checks.insert("analysis", 1);
            item.violations.extend(report.violations.iter().map(|v| format!("analysis: {v}")));
        }
        Err(e) => item.violations.push(format!("analysis: {e}")),
    }
    let outcome = match subject {
        Subject::Polytope(p) => match is_reflexive(p) {
            Ok(true) => reflexive_checks(&mut item, p, &mut rng),
            Ok(false) => RaySet::of_polytope(p).and_then(|r| fan_checks(&mut item, &r, &mut rng, None)),
            Err(e) => Err(e),
        },
        Subject::Fan(rays) => fan_checks(&mut item, rays, &mut rng, None),
    };
    if let Err(e) = outcome {
        item.violations.push(format!("error: {e}"));
    }
    item
}

/// Runs the suite on a pool of `jobs` threads. Results are in input order
/// and independent of the thread count.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::PreconditionFailed(format!("thread pool: {e}")))?;
    pool.install(|| {
        let corpus = bundled_corpus();
        let mut subjects: Vec<(String, Subject)> = corpus
            .iter()
            .map(|e| build_entry(e, &corpus).map(|s| (e.name.to_string(), s)))
            .collect::<Result<_>>()?;
        subjects.extend(config.extra.iter().cloned());
        let polygons = enumerate_reflexive_2d(config.bound);
        let polygon_classes = polygons.len();
        let width = polygon_classes.to_string().len();
        subjects.extend(
            polygons
                .into_iter()
                .enumerate()
                .map(|(k, p)| (format!("polygon-{:0width$}", k + 1), Subject::Polytope(p))),
        );
        let items = subjects
            .par_iter()
            .enumerate()
            .map(|(k, (name, s))| check_subject(name, s, config.seed.wrapping_add(k as u64)))
            .collect();
        Ok(VerifyReport { items, polygon_classes })
    })
}
