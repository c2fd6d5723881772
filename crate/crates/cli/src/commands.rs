use std::fmt::Write as _;

use axial_core::algebra::{FusionError, FusionReport};
use axial_core::axial2::{self, Route};
use axial_core::axial3::{self, ThreeGenModel};
use axial_core::par::Exec;
use axial_core::rewrite::{Canon, Gen, NormalForm, Rewriter};
use axial_core::scalar::{content_factors, Scalar};
use serde_json::{json, Map, Value};

use crate::params::Bindings;
use crate::report::{Report, Violation};

/// A failure that is not a verification verdict.
pub enum Failure {
    Usage(String),
    Runtime(String),
}

macro_rules! runtime_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Runtime(e.to_string())
            }
        }
    )*};
}

runtime_from!(serde_json::Error, axial_core::axial3::Axial3Error, axial_core::rewrite::RewriteError);

type Outcome = Result<Report, Failure>;

fn usage<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Usage)
}

fn factors(s: &Scalar) -> Vec<String> {
    content_factors(s.numer()).distinct().iter().map(|f| f.to_string()).collect()
}

fn law_params(b: &Bindings) -> Map<String, Value> {
    let law = b.law();
    let mut m = Map::new();
    m.insert("alpha".into(), json!(law.alpha.to_string()));
    m.insert("beta".into(), json!(law.beta.to_string()));
    m
}

fn two_gen_params(b: &Bindings) -> Map<String, Value> {
    let p = b.two_gen();
    let mut m = law_params(b);
    m.insert("x".into(), json!(p.x.to_string()));
    m.insert("y".into(), json!(p.y.to_string()));
    m
}

fn three_gen_params(b: &Bindings) -> Map<String, Value> {
    let p = b.three_gen();
    let mut m = law_params(b);
    for (k, s) in [("x", &p.x), ("y", &p.y), ("z", &p.z), ("p", &p.p)] {
        m.insert(k.into(), json!(s.to_string()));
    }
    m
}

fn build_model(b: &Bindings, exec: Exec) -> Result<ThreeGenModel, Failure> {
    axial3::build_3gen_model(&b.three_gen(), exec).map_err(|e| Failure::Usage(format!("invalid specialization: {e}")))
}

fn labels() -> Vec<String> {
    Canon::labels()
}

fn canon_pairs() -> Vec<(Canon, Canon)> {
    Canon::ALL
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| Canon::ALL[i..].iter().map(move |&f| (d, f)))
        .collect()
}

pub fn gram(b: &Bindings, exec: Exec) -> Outcome {
    usage(b.three_gen_only("gram"))?;
    let model = build_model(b, exec)?;
    let mut r = Report::new("gram", three_gen_params(b));
    r.body.insert("labels".into(), json!(labels()));
    r.body.insert("gram".into(), json!(model.gram_rows()));
    for (i, d) in Canon::ALL.iter().enumerate() {
        for f in &Canon::ALL[i..] {
            let _ = writeln!(r.text, "({d}, {f}) = {}", model.gram().get(d.index(), f.index()));
        }
    }
    r.csv = Some(model.gram_csv());
    r.latex = Some(model.gram_latex());
    Ok(r)
}

pub fn multtable(b: &Bindings, exec: Exec) -> Outcome {
    usage(b.three_gen_only("multtable"))?;
    let model = build_model(b, exec)?;
    let mut r = Report::new("multtable", three_gen_params(b));
    let full: Value = serde_json::from_str(&model.to_json())?;
    r.body.insert("labels".into(), full["labels"].clone());
    r.body.insert("products".into(), full["products"].clone());
    for (d, f) in canon_pairs() {
        let nf = NormalForm::from_element(model.product(d, f).clone());
        let _ = writeln!(r.text, "{d} * {f} = {nf}");
    }
    r.csv = Some(model.products_csv());
    r.latex = Some(model.products_latex());
    Ok(r)
}

pub fn eigen(b: &Bindings, exec: Exec) -> Outcome {
    usage(b.three_gen_only("eigen"))?;
    let model = build_model(b, exec)?;
    let mut r = Report::new("eigen", three_gen_params(b));
    let mut violations = Vec::new();
    let mut axes = Vec::new();
    let show = |v: &[axial_core::algebra::Element]| -> Vec<String> {
        v.iter().map(|e| NormalForm::from_element(e.clone()).to_string()).collect()
    };
    for g in Gen::ALL {
        match axial3::eigenbasis_3gen(&model, g) {
            Ok(eb) => {
                let (t_match, t1_match) = if g == Gen::A {
                    let tt1 = axial3::transcribed_t1(model.params());
                    if eb.t1 != tt1 {
                        log::warn!("solved t1 differs from the closed form; using the solved value");
                    }
                    (json!(eb.t == axial3::transcribed_t(model.params())), json!(eb.t1 == tt1))
                } else {
                    (Value::Null, Value::Null)
                };
                if !eb.spans {
                    violations.push(Violation::new("eigenbasis", g.to_string(), "eigenvectors do not span"));
                }
                let _ = writeln!(r.text, "axis {g}");
                for (name, vs) in [("alpha", &eb.alpha_basis), ("beta", &eb.beta_basis)] {
                    for v in show(vs) {
                        let _ = writeln!(r.text, "  {name}: {v}");
                    }
                }
                let _ = writeln!(r.text, "  t = {}\n  t1 = {}\n  spans = {}", eb.t, eb.t1, eb.spans);
                axes.push(json!({
                    "axis": g.to_string(),
                    "alpha": show(&eb.alpha_basis),
                    "beta": show(&eb.beta_basis),
                    "t": eb.t.to_string(),
                    "t1": eb.t1.to_string(),
                    "t_matches_closed_form": t_match,
                    "t1_matches_closed_form": t1_match,
                    "spans": eb.spans,
                    "genericity": eb.genericity.pivots.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                }));
            }
            Err(e) => violations.push(Violation::new("eigenbasis", g.to_string(), e)),
        }
    }
    r.body.insert("axes".into(), Value::Array(axes));
    r.violations = Some(violations);
    Ok(r)
}

pub fn classify2(b: &Bindings) -> Outcome {
    usage(b.only_law("classify2"))?;
    let law = b.law();
    let mut r = Report::new("classify2", law_params(b));
    let fams = axial2::classify_2dim(&law).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = Vec::new();
    for f in &fams {
        let factors: Vec<String> = axial2::constraint_factors(&f.constraints, &law).iter().map(|p| p.to_string()).collect();
        let roots: Vec<Value> = f.roots.iter().map(|(v, q)| json!({ "var": v.to_string(), "value": q.to_string() })).collect();
        let _ = writeln!(r.text, "{}: x = {}", f.rule, f.x);
        if factors.is_empty() {
            let _ = writeln!(r.text, "  no constraints");
        }
        for c in &factors {
            let _ = writeln!(r.text, "  constraint {c} = 0");
        }
        for (v, q) in &f.roots {
            let _ = writeln!(r.text, "  root {v} = {q}");
        }
        out.push(json!({
            "rule": f.rule.to_string(),
            "x": f.x.to_string(),
            "constraints": factors,
            "roots": roots,
            "irreducible": f.irreducible.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "certified": f.report_a.is_certified() && f.report_b.is_certified(),
        }));
    }
    r.body.insert("families".into(), Value::Array(out));
    let exception = match axial2::star_exception(&law) {
        Ok(Some(ex)) => {
            let _ = writeln!(r.text, "ab = alpha*a + beta*b: x = {}, y = {}, certified = {}", ex.x, ex.y, ex.certified());
            json!({ "x": ex.x.to_string(), "y": ex.y.to_string(), "certified": ex.certified() })
        }
        _ => Value::Null,
    };
    r.body.insert("star_exception".into(), exception);
    Ok(r)
}

fn fusion_violations(check: &str, rep: &FusionReport, labels: &[String], out: &mut Vec<Violation>) {
    for v in &rep.violations {
        out.push(Violation::new(check, format!("{} * {}", v.lhs, v.rhs), v.component.display(labels)));
    }
}

pub fn verify2(b: &Bindings) -> Outcome {
    usage(b.two_gen_only("verify2"))?;
    let p = b.two_gen();
    let mut r = Report::new("verify2", two_gen_params(b));
    let mut violations = Vec::new();
    let diff = &axial2::solve_ab_squared(&p, Route::ViaA) - &axial2::solve_ab_squared(&p, Route::ViaB);
    let names = ["a", "b", "ab"];
    for (i, c) in diff.coeffs().iter().enumerate() {
        if !c.is_zero() {
            violations.push(Violation::new("(ab)^2 routes", names[i], format!("{c} factors {:?}", factors(c))));
        }
    }
    if p.x != p.y {
        violations.push(Violation::new("star", "x, y", "x != y; pass --star to impose it"));
    } else {
        let res = axial2::fusion_residuals_2gen(&p).map_err(|e| Failure::Usage(e.to_string()))?;
        let labels: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        fusion_violations("fusion a", &res.axis_a, &labels, &mut violations);
        fusion_violations("fusion b", &res.axis_b, &labels, &mut violations);
        r.body.insert(
            "determinants".into(),
            json!({ "a_valpha_valpha2": res.det_alpha.to_string(), "a_valpha_vbeta2": res.det_beta.to_string() }),
        );
        let _ = writeln!(r.text, "det[a, v_alpha, v_alpha^2] = {}", res.det_alpha);
        let _ = writeln!(r.text, "det[a, v_alpha, v_beta^2] = {}", res.det_beta);
        let alg = axial2::build_generic_2gen(&p);
        if let Err(axial2::FrobeniusError::Association { defects, .. }) = axial2::frobenius_gram(&alg, &p) {
            for d in defects {
                let (i, j, k) = d.triple;
                violations.push(Violation::new(
                    "association",
                    format!("({}, {}, {})", names[i], names[j], names[k]),
                    format!("{} factors {:?}", d.residual, factors(&d.residual)),
                ));
            }
        }
    }
    r.violations = Some(violations);
    Ok(r)
}

pub fn verify3(b: &Bindings, exec: Exec) -> Outcome {
    usage(b.three_gen_only("verify3"))?;
    let model = build_model(b, exec)?;
    let mut r = Report::new("verify3", three_gen_params(b));
    let labels = labels();
    let mut violations = Vec::new();
    let fusion = axial3::fusion_residuals_3gen(&model, &[], exec)?;
    let mut axes = Vec::new();
    for (g, rep) in &fusion.axes {
        let check = format!("fusion {g}");
        match rep {
            Ok(rep) => {
                fusion_violations(&check, rep, &labels, &mut violations);
                let _ = writeln!(r.text, "axis {g}: eigenspace dims {:?}, holds = {}", rep.eigenspace_dims, rep.holds());
                axes.push(json!({ "axis": g.to_string(), "eigenspace_dims": rep.eigenspace_dims, "holds": rep.holds() }));
            }
            Err(e) => {
                violations.push(Violation::new(check, g.to_string(), e));
                let dims = match e {
                    FusionError::EigenDefect { dims, .. } => json!(dims),
                    _ => Value::Null,
                };
                axes.push(json!({ "axis": g.to_string(), "eigenspace_dims": dims, "holds": false }));
            }
        }
    }
    r.body.insert("axes".into(), Value::Array(axes));
    r.body.insert("gram_rank".into(), json!(fusion.gram_rank));
    let _ = writeln!(r.text, "gram rank {}", fusion.gram_rank);
    for (u, v) in model.commutativity_defects(exec) {
        violations.push(Violation::new("commutativity", format!("({u}, {v})"), "products disagree"));
    }
    for d in model.association_defects(exec) {
        let (i, j, k) = d.triple;
        violations.push(Violation::new(
            "association",
            format!("({}, {}, {})", labels[i], labels[j], labels[k]),
            d.residual,
        ));
    }
    r.violations = Some(violations);
    Ok(r)
}

pub fn closure(b: &Bindings, max_n: usize) -> Outcome {
    usage(b.three_gen_only("closure"))?;
    let rw = Rewriter::new(b.three_gen()).map_err(|e| Failure::Usage(format!("invalid specialization: {e}")))?;
    let mut r = Report::new("closure", three_gen_params(b));
    let mut out = Vec::new();
    for gens in [&[Gen::A][..], &[Gen::A, Gen::B], &Gen::ALL] {
        let name = gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
        let c = rw.closure(gens, max_n)?;
        let _ = writeln!(r.text, "{{{name}}}: dims {:?}, stable from n = {}", c.dims, c.stabilized_at);
        out.push(json!({
            "generators": name,
            "dims": c.dims,
            "stabilized_at": c.stabilized_at,
            "dim": c.dim(),
        }));
    }
    r.body.insert("closures".into(), Value::Array(out));
    Ok(r)
}

pub fn specialize(b: &Bindings, exec: Exec) -> Outcome {
    usage(b.three_gen_only("specialize"))?;
    let model = build_model(b, exec)?;
    let p = model.params();
    let mut r = Report::new("specialize", three_gen_params(b));
    let mut eps = Map::new();
    for (k, v) in [("ab", &p.x), ("ac", &p.y), ("bc", &p.z)] {
        let e = p.epsilon_of(v);
        let _ = writeln!(r.text, "epsilon_{k} = {e}");
        eps.insert(k.into(), json!(e.to_string()));
    }
    let rank = model.gram().rank();
    let _ = writeln!(r.text, "gram rank {rank}");
    if rank < 9 {
        log::warn!("form has rank {rank}; the nine words are dependent at this specialization");
    }
    r.body.insert("epsilon".into(), Value::Object(eps));
    r.body.insert("gram_rank".into(), json!(rank));
    r.body.insert("degenerate".into(), json!(rank < 9));
    Ok(r)
}
