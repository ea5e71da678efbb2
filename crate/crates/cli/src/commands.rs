use std::path::Path;
use std::thread;

use cobforge::polytope::{apply_plan, rigidity_demo, verify_complementary_equiv};
use cobforge::{
    comb_iso, construct_plan, coprimality_check, l_kn, milnor_novikov_check,
    milnor_projectivisation, prime_power_check, s_dkn, s_kn, verify_plan, witness_k,
    ModificationPlan, ProjBundleSpec, SimplePolytope, WitnessCase,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{load_polytope, read_json, write_text, CliError, CliResult, Report};

/// Plans with more modifications than this are only tracked on request.
const APPLY_LIMIT: u64 = 2000;
/// Face counting enumerates `2^n` subsets per vertex; above this it needs a flag.
const FACE_COUNT_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    D,
    S,
    L,
}

fn s(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn polytope_value(p: &SimplePolytope) -> Value {
    serde_json::to_value(p).expect("polytopes serialise")
}

pub fn milnor(n: u32, k: u32, table: Option<Table>, oracle: bool) -> CliResult<Report> {
    let mut r = Report::new("milnor", json!({ "n": n, "k": k, "oracle": oracle }));
    let d = s_dkn(n, k)?;
    match table {
        Some(Table::D) => {
            r.output("s_dkn", s(&d));
        }
        Some(Table::S) => {
            r.output("s_kn", s(&s_kn(n, k)?));
        }
        Some(Table::L) => {
            r.output("l_kn", s(&l_kn(n, k)?));
        }
        None => {
            r.output("s_dkn", s(&d));
            r.output("s_kn", s(&s_kn(n, k)?));
            if k >= 2 {
                r.output("l_kn", s(&l_kn(n, k)?));
            }
        }
    }
    if oracle {
        let value = milnor_projectivisation(&ProjBundleSpec::d_kn(n, k)?)?;
        r.output("oracle", s(&value));
        r.check("closed form agrees with Segre integration", value == d);
    }
    Ok(r)
}

pub fn gcd_check(n: u32) -> CliResult<Report> {
    let mut r = Report::new("gcd-check", json!({ "n": n }));
    let c = coprimality_check(n)?;
    let prime_power = prime_power_check(n as u64 + 1);
    r.output("gcd", s(&c.gcd)).output("holds", c.holds);
    let expected = match prime_power {
        Some((p, _)) => BigInt::from(p),
        None => BigInt::from(1),
    };
    if let Some((p, e)) = prime_power {
        r.output("n_plus_1", format!("{p}^{e}"));
    }
    r.check("gcd matches the prime-power type of n+1", c.gcd == expected);
    Ok(r)
}

pub fn witness(n: u32, p: u64) -> CliResult<Report> {
    let mut r = Report::new("witness", json!({ "n": n, "p": p }));
    let w = witness_k(n, p)?;
    let l = l_kn(n, w.k)?;
    let case = match w.case {
        WitnessCase::First => "first",
        WitnessCase::Second => "second",
    };
    r.output("k", w.k)
        .output("j", w.j)
        .output("case", case)
        .output("l_kn", s(&l))
        .output("residue", w.residue);
    let residue = l.modpow(&BigInt::from(1), &BigInt::from(p));
    r.check("k lies in [2, n-2]", (2..=n - 2).contains(&w.k));
    r.check(
        "L_{k,n} is nonzero mod p",
        residue != BigInt::from(0) && residue == BigInt::from(w.residue),
    );
    Ok(r)
}

pub fn plan(n: u32, plan_out: Option<&Path>) -> CliResult<Report> {
    let mut r = Report::new("plan", json!({ "n": n }));
    let plan = construct_plan(n)?;
    let verdict = milnor_novikov_check(n, &plan.predicted_milnor);
    r.output(
        "plan",
        serde_json::to_value(&plan).expect("plans serialise"),
    )
    .output("total_modifications", plan.total_modifications())
    .output("criterion", verdict.required.to_string())
    .output("generator", verdict.is_generator);
    if let Some(path) = plan_out {
        let text = serde_json::to_string_pretty(&plan).expect("plans serialise");
        write_text(path, &text)?;
    }
    r.check(
        "predicted Milnor number is 1",
        plan.predicted_milnor == BigInt::from(1),
    );
    r.check("independent recomputation agrees", verify_plan(&plan));
    r.check(
        "base Milnor number matches Segre integration",
        milnor_projectivisation(&plan.base)? == plan.base_milnor,
    );
    r.check("Milnor-Novikov: generator", verdict.is_generator);
    Ok(r)
}

fn polytope_summary(r: &mut Report, p: &SimplePolytope) {
    r.output("dim", p.dim())
        .output("facets", p.facet_count())
        .output("vertices", p.vertex_count());
}

fn save_polytope(r: &mut Report, p: &SimplePolytope, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => write_text(path, &p.to_json()),
        None => {
            r.output("polytope", polytope_value(p));
            Ok(())
        }
    }
}

pub fn cut_vertex(input: &str, vertex: usize, output: Option<&Path>) -> CliResult<Report> {
    let mut r = Report::new(
        "polytope cut-vertex",
        json!({ "input": input, "vertex": vertex }),
    );
    let p = load_polytope(input)?;
    let q = p.cut_vertex(vertex)?;
    polytope_summary(&mut r, &q);
    save_polytope(&mut r, &q, output)?;
    r.check("result is a simple polytope", q.validate().is_ok());
    r.check(
        "vertex count grows by n-1",
        q.vertex_count() == p.vertex_count() + p.dim() - 1,
    );
    Ok(r)
}

pub fn cut_face(input: &str, facets: &[usize], output: Option<&Path>) -> CliResult<Report> {
    let mut r = Report::new(
        "polytope cut-face",
        json!({ "input": input, "facets": facets }),
    );
    let p = load_polytope(input)?;
    let face = p.face(facets)?;
    let q = p.cut_face(facets)?;
    polytope_summary(&mut r, &q);
    save_polytope(&mut r, &q, output)?;
    r.check("result is a simple polytope", q.validate().is_ok());
    r.check(
        "vertex count grows by |S|(c-1)",
        q.vertex_count() == p.vertex_count() + face.vertex_set.len() * (face.codim() - 1),
    );
    Ok(r)
}

pub fn iso(left: &str, right: &str) -> CliResult<Report> {
    let mut r = Report::new("polytope iso", json!({ "left": left, "right": right }));
    let p = load_polytope(left)?;
    let q = load_polytope(right)?;
    let sigma = comb_iso(&p, &q);
    r.output("isomorphic", sigma.is_some());
    if let Some(sigma) = &sigma {
        r.output("certificate", json!(sigma));
        let image: Vec<Vec<usize>> = p
            .vertices()
            .iter()
            .map(|v| v.iter().map(|&f| sigma[f]).collect())
            .collect();
        let mapped = SimplePolytope::new(p.dim(), p.facet_count(), image).ok();
        r.check(
            "certificate maps vertices onto vertices",
            mapped.as_ref() == Some(&q),
        );
    }
    Ok(r)
}

fn face_counts(r: &mut Report, p: &SimplePolytope, allow_large: bool) {
    if p.dim() > FACE_COUNT_DIM && !allow_large {
        r.output(
            "h_vector",
            format!("skipped for dimension {} (pass --allow-large)", p.dim()),
        );
        return;
    }
    let f = p.f_vector();
    let h = p.h_vector();
    r.output("f_vector", json!(f))
        .output("h_vector", json!(h))
        .output("chi_ab", p.chi_ab().to_string());
    r.check("Dehn-Sommerville symmetry", h.iter().eq(h.iter().rev()));
    r.check(
        "sum of h equals the vertex count",
        h.iter().sum::<i64>() == p.vertex_count() as i64,
    );
}

pub fn hvec(input: &str, allow_large: bool) -> CliResult<Report> {
    let mut r = Report::new("polytope hvec", json!({ "input": input }));
    let p = load_polytope(input)?;
    polytope_summary(&mut r, &p);
    face_counts(&mut r, &p, allow_large);
    Ok(r)
}

pub fn apply(plan_path: &Path, output: Option<&Path>, allow_large: bool) -> CliResult<Report> {
    let mut r = Report::new(
        "polytope apply-plan",
        json!({ "plan": plan_path.display().to_string() }),
    );
    let plan: ModificationPlan = read_json(plan_path)?;
    let total = plan.total_modifications();
    if total > APPLY_LIMIT && !allow_large {
        return Err(CliError::Usage(format!(
            "plan has {total} modifications (limit {APPLY_LIMIT}); pass --allow-large"
        )));
    }
    r.check("plan verifies", verify_plan(&plan));
    let p = apply_plan(&plan)?;
    polytope_summary(&mut r, &p);
    r.output("modifications", total).output(
        "choice_policy",
        "vertex 0, then the first k+1 vertices of the new facet",
    );
    let n = plan.n as usize;
    r.check("result is a simple polytope", p.validate().is_ok());
    r.check(
        "two facets per modification",
        p.facet_count() == n + 3 + 2 * total as usize,
    );
    face_counts(&mut r, &p, allow_large);
    if let Some(path) = output {
        write_text(path, &p.to_json())?;
    }
    Ok(r)
}

pub fn rigidity(n: u32) -> CliResult<Report> {
    let mut r = Report::new("polytope rigidity", json!({ "n": n }));
    let rep = rigidity_demo(n)?;
    r.output("isomorphic", rep.iso.is_some())
        .output("h_b0", json!(rep.h_b0))
        .output("h_bn2", json!(rep.h_bn2))
        .output("chi_ab", rep.chi_b0.to_string())
        .output("vertices", rep.vertices_b0)
        .output("delta_b0", s(&rep.delta_b0))
        .output("delta_bn2", s(&rep.delta_bn2));
    if let Some(sigma) = &rep.iso {
        r.output("certificate", json!(sigma));
    }
    r.check(
        "B_0 and B_{n-2} polytopes are isomorphic",
        rep.iso.is_some(),
    );
    r.check("h-vectors agree", rep.h_b0 == rep.h_bn2);
    r.check("chi_{a,b} agree", rep.chi_b0 == rep.chi_bn2);
    r.check(
        "Milnor-number changes differ",
        rep.delta_b0 != rep.delta_bn2,
    );
    Ok(r)
}

const L_TABLES: &[(u32, &[i64])] = &[
    (4, &[25]),
    (6, &[70, -189, 238]),
    (8, &[135, -513, 1173, -1881, 1755]),
];

type Group = Vec<(String, bool)>;

fn l_table_checks(fault: bool) -> Group {
    L_TABLES
        .iter()
        .map(|&(n, row)| {
            let ok = row.iter().enumerate().all(|(i, &want)| {
                let want = if fault && n == 6 && i == 1 {
                    want + 1
                } else {
                    want
                };
                l_kn(n, i as u32 + 2).is_ok_and(|l| l == BigInt::from(want))
            });
            (format!("L table n={n}"), ok)
        })
        .collect()
}

fn gcd_checks() -> Group {
    [14u32, 20, 32]
        .into_iter()
        .map(|n| {
            let ok = coprimality_check(n).is_ok_and(|c| c.holds);
            (format!("gcd of s_kn is 1 for n={n}"), ok)
        })
        .collect()
}

fn oracle_sweep(max_n: u32) -> Group {
    let ok = (2..=max_n).all(|n| {
        (0..=n - 2).all(|k| {
            let oracle = ProjBundleSpec::d_kn(n, k).and_then(|d| milnor_projectivisation(&d));
            matches!((oracle, s_dkn(n, k)), (Ok(a), Ok(b)) if a == b)
        })
    });
    vec![(
        format!("closed form equals Segre integration, n <= {max_n}"),
        ok,
    )]
}

fn equiv_sweep(max_n: u32) -> Group {
    let top = max_n.min(6) as usize;
    let mut shapes: Vec<SimplePolytope> = (3..=top).map(SimplePolytope::simplex).collect();
    for n in 4..=top {
        shapes.push(SimplePolytope::simplex_product(&[1, 1, n - 2]).expect("valid dimensions"));
    }
    let ok = shapes.iter().all(|p| {
        (0..p.vertex_count()).all(|v| {
            (0..=p.dim() - 2).all(|k| verify_complementary_equiv(p, v, k).unwrap_or(false))
        })
    });
    vec![(format!("complementary truncations agree, n <= {top}"), ok)]
}

fn plan_checks() -> Group {
    [14u32, 20]
        .into_iter()
        .map(|n| {
            let ok = construct_plan(n).is_ok_and(|p| {
                p.predicted_milnor == BigInt::from(1)
                    && verify_plan(&p)
                    && milnor_novikov_check(n, &p.predicted_milnor).is_generator
            });
            (format!("plan for n={n} reaches a generator"), ok)
        })
        .collect()
}

/// Runs every table and sweep. `fault` corrupts one stored L value so the
/// failure path can be exercised.
pub fn reproduce(fault: bool) -> CliResult<Report> {
    let max_n = crate::max_n()?;
    let mut r = Report::new("reproduce", json!({ "max_n": max_n }));
    let groups: Vec<Group> = thread::scope(|scope| {
        let jobs = [
            scope.spawn(move || l_table_checks(fault)),
            scope.spawn(gcd_checks),
            scope.spawn(move || oracle_sweep(max_n)),
            scope.spawn(move || equiv_sweep(max_n)),
            scope.spawn(plan_checks),
        ];
        jobs.into_iter()
            .map(|j| j.join().expect("check thread panicked"))
            .collect()
    });
    for (name, ok) in groups.into_iter().flatten() {
        r.check(&name, ok);
    }
    let passed = r.checks.iter().filter(|c| c.pass).count();
    let total = r.checks.len();
    r.output("passed", passed).output("total", total);
    Ok(r)
}
