//! Acceptance suite: one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::process::Command;

use demazure::criteria::{
    aut_summary, central_decompose, check_minkowski, check_reflexive_criteria, classify_2d, enumerate_reflexive_2d,
    DEFAULT_BOX,
};
use demazure::io::{build_entry, bundled_corpus, Subject};
use demazure::lattice::rank;
use demazure::polytope::is_reflexive;
use demazure::properties;
use demazure::roots::{compute_roots, cox_classes, roots_of_reflexive, RaySet};
use demazure::standard;
use demazure::verify::{run_verify, VerifyConfig};
use demazure::LatticePolytope;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: demazure::Error) -> String {
    e.to_string()
}

fn corpus_polytopes() -> Vec<(String, LatticePolytope)> {
    let corpus = bundled_corpus();
    corpus
        .iter()
        .filter_map(|e| match build_entry(e, &corpus).expect("corpus builds") {
            Subject::Polytope(p) => Some((e.name.to_string(), p)),
            Subject::Fan(_) => None,
        })
        .collect()
}

fn projective_spaces() -> Outcome {
    for d in 1..=4 {
        let rs = roots_of_reflexive(&standard::simplex_dual(d)).map_err(err)?;
        check(rs.len() == d * d + d, || format!("d={d}: {} roots", rs.len()))?;
        check(rs.is_semisimple(), || format!("d={d}: unipotent roots"))?;
        let aut = aut_summary(&rs, d);
        check(aut.aut_dim == d * d + 2 * d, || format!("d={d}: dim Aut° = {}", aut.aut_dim))?;
    }
    Ok("d = 1..4".into())
}

fn weight_simplex() -> Outcome {
    let p = standard::weight_simplex();
    let rs = roots_of_reflexive(&p).map_err(err)?;
    let rays = RaySet::of_polytope(&p).map_err(err)?;
    check(rs.semisimple().len() == 4, || format!("|S| = {}", rs.semisimple().len()))?;
    check(rank(&rs.points(&rs.semisimple())) == 2, || "dim lin(S) ≠ 2".into())?;
    check(rs.unipotent().len() == 6, || format!("|U| = {}", rs.unipotent().len()))?;
    let mut per_facet: BTreeMap<usize, usize> = BTreeMap::new();
    for r in rs.unipotent() {
        *per_facet.entry(r.eta).or_default() += 1;
    }
    check(per_facet.values().copied().eq([3, 3]), || format!("unipotent per facet {per_facet:?}"))?;
    let dcd = cox_classes(&rays, &rs).map_err(err)?;
    let mut weights: Vec<String> = dcd.degrees.iter().map(|g| g[0].to_string().replace('-', "")).collect();
    weights.sort();
    check(weights == ["1", "1", "2", "2"], || format!("degrees {weights:?}"))?;
    check((dcd.p, dcd.q, dcd.r, dcd.s) == (1, 2, 2, 2), || {
        format!("(p,q,r,s) = {:?}", (dcd.p, dcd.q, dcd.r, dcd.s))
    })?;
    let m2 = dcd.classes[1].monomials.len();
    check(m2 == 3, || format!("|M₂| = {m2}"))?;
    let u2: usize = dcd.classes[..dcd.q]
        .iter()
        .map(|k| k.variables.len() * k.monomials.len())
        .sum();
    check(u2 == 6 && rs.unipotent().len() == u2, || format!("Σ|Yᵢ||Mᵢ| = {u2}"))?;
    Ok("|S| = 4, |U| = 6, degrees (1,1,2,2)".into())
}

fn cubes() -> Outcome {
    for d in 2..=4 {
        let p = standard::cube(d);
        let n = p.lattice_points().len();
        check(n == 3usize.pow(d as u32), || format!("d={d}: {n} lattice points"))?;
        let rs = roots_of_reflexive(&p).map_err(err)?;
        check(rs.len() == 2 * d, || format!("d={d}: {} roots", rs.len()))?;
        check(aut_summary(&rs, d).aut_dim == 3 * d, || format!("d={d}: dim Aut°"))?;
        let split = central_decompose(&p).map_err(err)?;
        check(split.k == d && split.g_dim == 0, || format!("d={d}: k = {}, dim G = {}", split.k, split.g_dim))?;
        let c = split.cube;
        check(c.a && c.b && c.c && c.d && c.e, || format!("d={d}: {c:?}"))?;
    }
    Ok("d = 2..4".into())
}

fn cross_polytopes() -> Outcome {
    for d in 3..=4 {
        let rs = roots_of_reflexive(&standard::cross_polytope(d)).map_err(err)?;
        check(rs.is_empty(), || format!("d={d}: {} roots", rs.len()))?;
        check(aut_summary(&rs, d).aut_dim == d, || format!("d={d}: dim Aut°"))?;
    }
    Ok("d = 3, 4".into())
}

fn polygon_sweep(polygons: &[LatticePolytope]) -> Outcome {
    check(polygons.len() == 16, || format!("{} classes", polygons.len()))?;
    let again = enumerate_reflexive_2d(DEFAULT_BOX);
    check(again == polygons, || "enumeration is not stable".into())?;
    let mut semisimple = 0;
    for (k, p) in polygons.iter().enumerate() {
        let report = check_reflexive_criteria(p).map_err(|e| format!("class {}: {e}", k + 1))?;
        check(report.consistent, || format!("class {}: inconsistent", k + 1))?;
        let c = classify_2d(p).map_err(|e| format!("class {}: {e}", k + 1))?;
        semisimple += usize::from(c.semisimple);
    }
    Ok(format!("16 classes, {semisimple} semisimple"))
}

fn minkowski(polygons: &[LatticePolytope]) -> Outcome {
    let mut n = 0;
    for (name, p) in corpus_polytopes() {
        if is_reflexive(&p).map_err(err)? {
            check_minkowski(&p).map_err(|e| format!("{name}: {e}"))?;
            n += 1;
        }
    }
    for (k, p) in polygons.iter().enumerate() {
        check_minkowski(p).map_err(|e| format!("polygon {}: {e}", k + 1))?;
    }
    Ok(format!("{n} corpus members, {} polygons", polygons.len()))
}

fn partial_addition(polygons: &[LatticePolytope]) -> Outcome {
    let mut pairs = 0;
    for (k, p) in polygons.iter().enumerate() {
        pairs += properties::z_pairs(p).map_err(|e| format!("polygon {}: {e}", k + 1))?;
    }
    Ok(format!("{pairs} boundary pairs"))
}

fn dual_path() -> Outcome {
    let mut n = 0;
    for (name, p) in corpus_polytopes() {
        let rs = roots_of_reflexive(&p).map_err(|e| format!("{name}: {e}"))?;
        properties::dual_path(&p, &rs).map_err(|e| format!("{name}: {e}"))?;
        n += 1;
    }
    let corpus = bundled_corpus();
    for e in &corpus {
        if let Subject::Fan(rays) = build_entry(e, &corpus).map_err(err)? {
            compute_roots(&rays).map_err(|x| format!("{}: {x}", e.name))?;
        }
    }
    Ok(format!("{n} polytopes"))
}

fn property_suites(report: &demazure::verify::VerifyReport) -> Outcome {
    const REQUIRED: [&str; 10] = [
        "short",
        "ortho1",
        "cox-classes",
        "ortho2",
        "root-proj",
        "prisma",
        "neu",
        "analysis",
        "tame",
        "facet-unipotent",
    ];
    let corpus: Vec<_> = report.items.iter().filter(|i| !i.name.starts_with("polygon-")).collect();
    for item in &corpus {
        check(item.violations.is_empty(), || format!("{}: {:?}", item.name, item.violations))?;
    }
    for name in REQUIRED {
        check(corpus.iter().any(|i| i.checks.get(name).is_some_and(|&n| n > 0)), || {
            format!("check {name} never exercised")
        })?;
    }
    let instances: usize = corpus.iter().flat_map(|i| i.checks.values()).sum();
    Ok(format!("{} corpus members, {instances} instances", corpus.len()))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_demazure"))
            .args(["verify", "--jobs", "8"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    check(a.status.success(), || format!("exit status {}", a.status))?;
    check(a.stdout == b.stdout, || "reports differ".into())?;
    let text = String::from_utf8_lossy(&a.stdout);
    let last = text.lines().last().unwrap_or_default().to_string();
    check(last == "16 polygon classes; 0 violations", || format!("summary `{last}`"))?;
    Ok(format!("{} bytes, `{last}`", a.stdout.len()))
}

fn main() {
    let polygons = enumerate_reflexive_2d(DEFAULT_BOX);
    let report = run_verify(&VerifyConfig::default()).expect("verify runs");
    let results: Vec<(&str, Outcome)> = vec![
        ("projective spaces", projective_spaces()),
        ("weight simplex", weight_simplex()),
        ("cubes", cubes()),
        ("cross-polytopes", cross_polytopes()),
        ("reflexive polygon sweep", polygon_sweep(&polygons)),
        ("Minkowski identity", minkowski(&polygons)),
        ("partial addition law", partial_addition(&polygons)),
        ("dual-path root equality", dual_path()),
        ("property suites", property_suites(&report)),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
