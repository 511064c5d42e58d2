use std::fmt::Write as _;

use anyhow::{bail, Result};
use normtrace::oracle::{ghw_bruteforce, rghw_bruteforce};
use normtrace::quantum::{css_params_with, PURITY_NOTE};
use normtrace::rghw::rghw_with;
use normtrace::{
    dual_structural, evaluate_code, ghw_exhaustive, ghw_fastpath, ghw_maxcase, ghw_value, Curve, CurveParams, Error,
    FieldSpec, GhwMethod, GhwOptions, GhwResult, MonomialSet, MonomialSpec, Preset, QuantumParams, Strategy,
};
use serde_json::{json, Value};

use crate::report::{csv_line, Report, SCHEMA};

/// Field and curve selection shared by most subcommands.
#[derive(Clone, Debug)]
pub struct CurveSel {
    pub q: u32,
    pub s: u32,
    pub u: u32,
    pub modulus: Option<Vec<u32>>,
}

impl CurveSel {
    pub fn field(&self) -> Result<FieldSpec> {
        field(self.q, self.s, self.modulus.as_deref())
    }

    pub fn params(&self) -> Result<CurveParams> {
        Ok(CurveParams::new(self.q, self.s, self.u)?)
    }

    pub fn curve(&self) -> Result<Curve> {
        self.params()?;
        Ok(Curve::enumerate_points(&self.field()?, self.u)?)
    }

    pub fn key(&self) -> Value {
        json!({"q": self.q, "s": self.s, "u": self.u, "modulus": self.modulus})
    }

    fn header(&self) -> Value {
        json!({"schema": SCHEMA, "q": self.q, "s": self.s, "u": self.u})
    }
}

pub fn field(q: u32, s: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    let (p, a) = normtrace::field::prime_power(q as u64)?;
    Ok(FieldSpec::build_extension(p, a, s, modulus)?)
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn monomials(set: &MonomialSet) -> Vec<String> {
    set.to_strings()
}

fn list(items: impl IntoIterator<Item = impl ToString>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(", ")
    }
}

fn poly_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        terms.push(match (c, var.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => var,
            (_, false) => format!("{c}{var}"),
        });
    }
    terms.join(" + ")
}

// ---------------------------------------------------------------------------

pub fn cmd_field(q: u32, s: u32, modulus: Option<&[u32]>) -> Result<Report> {
    let f = field(q, s, modulus)?;
    let json = json!({
        "schema": SCHEMA,
        "command": "field",
        "p": f.p(),
        "a": f.a(),
        "s": f.s(),
        "q": f.q(),
        "degree": f.degree(),
        "order": f.order(),
        "modulus": f.modulus(),
    });
    let text = format!(
        "GF({}) = GF({})[t]/({}), degree {} over GF({}), extension of degree {} over GF({})\n",
        f.order(),
        f.p(),
        poly_string(f.modulus()),
        f.degree(),
        f.p(),
        f.s(),
        f.q()
    );
    Ok(Report { json, text, csv: None })
}

pub fn cmd_curve(sel: &CurveSel, points: bool) -> Result<Report> {
    let curve = sel.curve()?;
    let p = curve.params();
    let mut json = merge(
        sel.header(),
        json!({
            "command": "curve",
            "n": curve.n(),
            "genus": p.genus(),
            "field_order": p.field_order(),
            "x_max": p.x_max(),
            "y_cap": p.y_cap(),
            "max_u": p.max_u(),
            "maximal_u": p.is_maximal_u(),
            "modulus": curve.field().modulus(),
        }),
    );
    let mut text = format!(
        "x^{} = Tr(y) over GF({}): n = {}, genus = {}, box = {} x {}{}\n",
        p.u(),
        p.field_order(),
        curve.n(),
        p.genus(),
        p.x_max() + 1,
        p.y_cap(),
        if p.is_maximal_u() { ", maximal u" } else { "" }
    );
    if points {
        let codes = curve.point_codes();
        json = merge(json, json!({ "points": codes }));
        for [x, y] in curve.point_codes() {
            let _ = writeln!(text, "({x}, {y})");
        }
    }
    Ok(Report { json, text, csv: None })
}

pub fn cmd_code(sel: &CurveSel, spec: &MonomialSpec, dual: bool, emit: bool) -> Result<Report> {
    let curve = sel.curve()?;
    let params = curve.params();
    let m = spec.build(params)?;
    let decreasing = m.is_decreasing();
    let (code, basis) = if dual {
        let c = dual_structural(&curve, &m)?;
        let basis = c.monomial_basis().cloned().unwrap_or_else(|| MonomialSet::empty(params));
        (c, basis)
    } else {
        (evaluate_code(&curve, &m)?, m.clone())
    };
    let k = code.dimension();
    let d1 = if basis.is_empty() {
        None
    } else if basis.is_decreasing() {
        Some(ghw_value(&basis, 1)?)
    } else {
        None
    };
    let mut json = merge(
        sel.header(),
        json!({
            "command": "code",
            "monomials": spec.to_string(),
            "dual": dual,
            "n": code.len(),
            "k": k,
            "d1": d1,
            "decreasing": decreasing,
            "basis": monomials(&basis),
        }),
    );
    let which = if dual { "dual of ev(M) = beta * ev(M^c)" } else { "ev(M)" };
    let mut text = format!(
        "{which}: [{}, {}, {}]_{}\nbasis: {}\n",
        code.len(),
        k,
        d1.map_or("?".into(), |d| d.to_string()),
        params.field_order(),
        list(monomials(&basis))
    );
    if dual {
        let twist: Vec<u32> = code.twist().unwrap_or_default().iter().map(|x| x.code()).collect();
        json = merge(json, json!({ "twist": twist }));
    }
    if emit {
        let g = code.generator_matrix();
        for row in &g.rows {
            let _ = writeln!(text, "{}", row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        }
        json = merge(json, json!({ "generators": g.rows }));
    }
    Ok(Report { json, text, csv: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exhaustive,
    Fastpath,
    Maxcase,
    Oracle,
}

pub struct GhwArgs<'a> {
    pub spec: &'a MonomialSpec,
    pub r: Option<usize>,
    pub method: Method,
    pub options: GhwOptions,
    pub budget: u128,
}

fn degree_of(spec: &MonomialSpec, method: &str) -> Result<u32> {
    match spec {
        MonomialSpec::Degree(d) => Ok(*d),
        _ => bail!(Error::OutOfRange(format!("method {method} needs a total-degree set deg<=D, got {spec}"))),
    }
}

fn ghw_one(sel: &CurveSel, m: &MonomialSet, r: usize, args: &GhwArgs) -> Result<GhwResult> {
    let params = m.params();
    Ok(match args.method {
        Method::Exhaustive => normtrace::ghw::ghw_exhaustive_with(m, r, &args.options)?,
        Method::Fastpath => ghw_fastpath(params, degree_of(args.spec, "fastpath")?, r)?,
        Method::Maxcase => ghw_maxcase(params, degree_of(args.spec, "maxcase")?, r)?,
        Method::Oracle => {
            let code = evaluate_code(&sel.curve()?, m)?;
            let value = ghw_bruteforce(&code, r, args.budget)?;
            GhwResult {
                r,
                value,
                witness: Vec::new(),
                method: GhwMethod::Oracle,
                exact: true,
                cartesian_footprint: None,
            }
        }
    })
}

pub fn cmd_ghw(sel: &CurveSel, args: &GhwArgs) -> Result<Report> {
    let params = sel.params()?;
    let m = args.spec.build(params)?;
    if m.is_empty() {
        bail!(Error::EmptySet);
    }
    let rs: Vec<usize> = match args.r {
        Some(r) => vec![r],
        None => (1..=m.len()).collect(),
    };
    let results = rs.iter().map(|&r| ghw_one(sel, &m, r, args)).collect::<Result<Vec<_>>>()?;
    let base = merge(
        sel.header(),
        json!({"command": "ghw", "monomials": args.spec.to_string(), "n": params.n(), "k": m.len()}),
    );
    let mut text = String::new();
    let mut csv = csv_line(&["r".into(), "d_r".into(), "method".into(), "exact".into(), "witness".into()]);
    for res in &results {
        let w = list(res.witness.iter());
        let _ = writeln!(text, "d_{} = {}  [{}{}]  witness: {}", res.r, res.value, res.method, exact_tag(res.exact), w);
        csv.push_str(&csv_line(&[
            res.r.to_string(),
            res.value.to_string(),
            res.method.to_string(),
            res.exact.to_string(),
            res.witness.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
        ]));
    }
    let json = if args.r.is_some() {
        merge(base, serde_json::to_value(&results[0])?)
    } else {
        let hierarchy: Vec<usize> = results.iter().map(|r| r.value).collect();
        merge(base, json!({"hierarchy": hierarchy, "results": results}))
    };
    Ok(Report { json, text, csv: Some(csv) })
}

fn exact_tag(exact: bool) -> &'static str {
    if exact {
        ""
    } else {
        ", lower bound"
    }
}

pub enum Pair<'a> {
    Sets(&'a MonomialSpec, &'a MonomialSpec),
    Lambdas(u64, u64),
}

pub fn cmd_rghw(
    sel: &CurveSel,
    pair: Pair,
    r: usize,
    method: Method,
    options: &GhwOptions,
    budget: u128,
) -> Result<Report> {
    let params = sel.params()?;
    let (m1, m2, label) = match pair {
        Pair::Sets(a, b) => (a.build(params)?, b.build(params)?, json!({"m1": a.to_string(), "m2": b.to_string()})),
        Pair::Lambdas(l1, l2) => (
            MonomialSet::onepoint_set(params, l1),
            MonomialSet::onepoint_set(params, l2),
            json!({"lambda1": l1, "lambda2": l2}),
        ),
    };
    let base = merge(merge(sel.header(), json!({"command": "rghw", "n": params.n()})), label);
    let (json, text) = match method {
        Method::Exhaustive => {
            let res = rghw_with(&m1, &m2, r, options)?;
            let text = format!(
                "M_{} = {}  [{}]  witness: {}\n",
                res.r,
                res.value,
                if res.exact { "exact" } else { "lower bound, ordering condition fails" },
                list(res.witness.iter())
            );
            (merge(base, merge(serde_json::to_value(&res)?, json!({"method": "exhaustive"}))), text)
        }
        Method::Oracle => {
            normtrace::rghw::ordering_condition(&m1, &m2)?;
            let curve = sel.curve()?;
            let c1 = evaluate_code(&curve, &m1)?;
            let c2 = if m2.is_empty() { None } else { Some(evaluate_code(&curve, &m2)?) };
            let value = match c2 {
                Some(c2) => rghw_bruteforce(&c1, &c2, r, budget)?,
                None => ghw_bruteforce(&c1, r, budget)?,
            };
            let json = merge(base, json!({"r": r, "M_r": value, "exact": true, "method": "oracle"}));
            (json, format!("M_{r} = {value}  [oracle]\n"))
        }
        other => bail!(Error::OutOfRange(format!("rghw supports the exhaustive and oracle methods, not {other:?}"))),
    };
    Ok(Report { json, text, csv: None })
}

fn quantum_fields(p: &QuantumParams) -> Value {
    json!({
        "lambda1": p.lambda1,
        "lambda2": p.lambda2,
        "n": p.n,
        "k": p.k,
        "delta_z": p.delta_z,
        "delta_x": p.delta_x,
        "alphabet": p.alphabet,
        "impure": p.impure,
        "exact": p.exact,
        "d1_C1": p.d1_c1(),
        "d1_C2perp": p.d1_c2_perp(),
        "parameters": p.to_string(),
    })
}

const CSV_HEADER: [&str; 11] =
    ["lambda1", "lambda2", "n", "k", "delta_z", "delta_x", "impure", "d1_C1", "d1_C2perp", "exact", "method"];

fn quantum_csv_row(p: &QuantumParams) -> String {
    csv_line(&[
        p.lambda1.to_string(),
        p.lambda2.to_string(),
        p.n.to_string(),
        p.k.to_string(),
        p.delta_z.to_string(),
        p.delta_x.to_string(),
        p.impure.to_string(),
        p.d1_c1().to_string(),
        p.d1_c2_perp().to_string(),
        p.exact.to_string(),
        "exhaustive".into(),
    ])
}

fn csv_header() -> String {
    csv_line(&CSV_HEADER.map(String::from))
}

pub fn cmd_quantum(sel: &CurveSel, l1: u64, l2: u64, options: &GhwOptions) -> Result<Report> {
    let params = sel.params()?;
    let p = css_params_with(params, l1, l2, options)?;
    let json = merge(
        merge(sel.header(), json!({"command": "quantum", "method": "exhaustive", "purity_note": PURITY_NOTE})),
        quantum_fields(&p),
    );
    let text = format!(
        "{p} impure={}\nd1(C1) = {}, d1(C2^perp) = {}{}\n",
        p.impure,
        p.d1_c1(),
        p.d1_c2_perp(),
        if p.exact { "" } else { " (relative distances are lower bounds)" }
    );
    let mut csv = csv_header();
    csv.push_str(&quantum_csv_row(&p));
    Ok(Report { json, text, csv: Some(csv) })
}

pub fn cmd_quantum_table(presets: &[Preset], options: &GhwOptions) -> Result<Report> {
    let mut blocks = Vec::new();
    let mut text = String::new();
    let mut csv = String::new();
    let with_curve = presets.len() > 1;
    if with_curve {
        csv.push_str(&csv_line(&["preset".into()]).replace('\n', ","));
    }
    csv.push_str(&csv_header());
    for &preset in presets {
        let params = preset.params();
        let rows = preset
            .rows()
            .iter()
            .map(|&(l1, l2)| css_params_with(params, l1, l2, options))
            .collect::<normtrace::Result<Vec<_>>>()?;
        let _ = writeln!(text, "q={}, s={}, u={}", params.q(), params.s(), params.u());
        let _ = writeln!(text, "{:<12}{:<26}purity", "(λ1, λ2)", "parameters");
        for p in &rows {
            let pair = format!("({}, {})", p.lambda1, p.lambda2);
            let purity = if p.impure { "impure" } else { "pure" };
            let _ = writeln!(text, "{:<12}{:<26}{}", pair, p.to_string(), purity);
            if with_curve {
                csv.push_str(&format!("{},", preset.name()));
            }
            csv.push_str(&quantum_csv_row(p));
        }
        text.push('\n');
        blocks.push(json!({
            "preset": preset.name(),
            "q": params.q(),
            "s": params.s(),
            "u": params.u(),
            "rows": rows.iter().map(quantum_fields).collect::<Vec<_>>(),
        }));
    }
    let _ = writeln!(text, "method: exhaustive; {PURITY_NOTE}");
    let json = json!({
        "schema": SCHEMA,
        "command": "quantum-table",
        "method": "exhaustive",
        "purity_note": PURITY_NOTE,
        "tables": blocks,
    });
    Ok(Report { json, text, csv: Some(csv) })
}

/// Engine-versus-oracle sweep over small decreasing sets and one-point pairs.
pub fn cmd_verify(sel: &CurveSel, max_size: usize, budget: u128) -> Result<(Report, bool)> {
    let curve = sel.curve()?;
    let params = curve.params();
    let mut checks = 0usize;
    let mut mismatches = Vec::new();
    let mut skipped = 0usize;
    for m in decreasing_sets(params, max_size) {
        let code = evaluate_code(&curve, &m)?;
        for r in 1..=m.len() {
            let engine = ghw_exhaustive(&m, r)?.value;
            match ghw_bruteforce(&code, r, budget) {
                Ok(brute) => {
                    checks += 1;
                    if brute != engine {
                        mismatches.push(json!({"kind": "ghw", "monomials": monomials(&m), "r": r, "engine": engine, "oracle": brute}));
                    }
                }
                Err(Error::BudgetExceeded { .. }) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let mut sets: Vec<MonomialSet> = Vec::new();
    for lambda in 0..=params.weight(params.top()) {
        let l = MonomialSet::onepoint_set(params, lambda);
        if l.len() > max_size {
            break;
        }
        if sets.last().is_none_or(|prev| prev.len() != l.len()) {
            sets.push(l);
        }
    }
    for (i, m1) in sets.iter().enumerate() {
        let c1 = evaluate_code(&curve, m1)?;
        for m2 in &sets[..i] {
            let c2 = evaluate_code(&curve, m2)?;
            for r in 1..=m1.len() - m2.len() {
                let engine = normtrace::rghw(m1, m2, r)?.value;
                match rghw_bruteforce(&c1, &c2, r, budget) {
                    Ok(brute) => {
                        checks += 1;
                        if brute != engine {
                            mismatches.push(json!({"kind": "rghw", "m1": monomials(m1), "m2": monomials(m2), "r": r, "engine": engine, "oracle": brute}));
                        }
                    }
                    Err(Error::BudgetExceeded { .. }) => skipped += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    let passed = mismatches.is_empty();
    let text = format!(
        "{}: {checks} checks, {} mismatches, {skipped} skipped over budget\n",
        if passed { "PASS" } else { "FAIL" },
        mismatches.len()
    );
    let json = merge(
        sel.header(),
        json!({
            "command": "verify",
            "max_size": max_size,
            "checks": checks,
            "skipped": skipped,
            "mismatches": mismatches,
            "passed": passed,
        }),
    );
    Ok((Report { json, text, csv: None }, passed))
}

/// All nonempty decreasing sets in the box with at most `limit` members.
pub fn decreasing_sets(p: CurveParams, limit: usize) -> Vec<MonomialSet> {
    fn walk(p: CurveParams, cap: u32, left: usize, heights: &mut Vec<u32>, out: &mut Vec<MonomialSet>) {
        if !heights.is_empty() {
            let members = heights
                .iter()
                .enumerate()
                .flat_map(|(a, &h)| (0..h).map(move |b| normtrace::Monomial::new(a as u32, b)));
            out.push(MonomialSet::new(p, members).expect("heights stay inside the box"));
        }
        if heights.len() as u32 > p.x_max() {
            return;
        }
        for h in 1..=cap.min(left as u32) {
            heights.push(h);
            walk(p, h, left - h as usize, heights, out);
            heights.pop();
        }
    }
    let mut out = Vec::new();
    walk(p, p.y_cap(), limit, &mut Vec::new(), &mut out);
    out
}

pub fn strategy_options(strategy: Strategy, prune: bool, bound_only: bool, budget: Option<u128>) -> GhwOptions {
    let mut o = GhwOptions { strategy, prune, bound_only, ..GhwOptions::default() };
    if let Some(b) = budget {
        o.subset_budget = b;
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(q: u32, s: u32, u: u32) -> CurveSel {
        CurveSel { q, s, u, modulus: None }
    }

    #[test]
    fn polynomial_rendering() {
        assert_eq!(poly_string(&[2, 4, 1]), "t^2 + 4t + 2");
        assert_eq!(poly_string(&[1, 1, 0, 1]), "t^3 + t + 1");
    }

    #[test]
    fn decreasing_set_counts() {
        // Down-sets of a 2 x 2 box: all lattice paths minus the empty one.
        let p = CurveParams::new(2, 2, 1).unwrap();
        assert_eq!(decreasing_sets(p, 4).len(), 5);
        assert_eq!(decreasing_sets(p, 1).len(), 1);
    }

    #[test]
    fn ghw_single_r_is_flat() {
        let spec: MonomialSpec = "deg<=4".parse().unwrap();
        let args =
            GhwArgs { spec: &spec, r: Some(3), method: Method::Exhaustive, options: GhwOptions::default(), budget: 1 };
        let rep = cmd_ghw(&sel(3, 2, 4), &args).unwrap();
        assert_eq!(rep.json["d_r"], 17);
        assert_eq!(rep.json["r"], 3);
        assert_eq!(rep.json["schema"], 1);
    }

    #[test]
    fn fastpath_needs_degree_spec() {
        let spec: MonomialSpec = "box".parse().unwrap();
        let args =
            GhwArgs { spec: &spec, r: Some(1), method: Method::Fastpath, options: GhwOptions::default(), budget: 1 };
        assert!(cmd_ghw(&sel(3, 2, 2), &args).is_err());
    }
}
