use std::collections::HashMap;
use std::sync::Arc;
use std::time::Duration;

use serde_json::{json, Map, Value as Json};

use crate::constructions::{
    cycle_edge_ideal, equidimensional_reduce, expected_equations_check, herzog_northcott, hilbert_burch_check,
    jacobian_dual, monomial_curve_ideal, parametrized_curve_ideal, strip_principal_part, trinomialize, PolyMatrix,
};
use crate::error::{AbortReason, Error, Result};
use crate::field::Field;
use crate::groebner::{Budget, EngineStats, Ideal, DEFAULT_DEGREE_BOUND};
use crate::monomial::MonomialOrder;
use crate::parse::Expr;
use crate::poly::Polynomial;
use crate::random::PolyGen;
use crate::rees::{
    adjoin_variable_presentation, check_quotient, linear_equations, profile, rees_ideal, rees_ideal_truncated,
    EquationsProfile, IdealPresentation,
};
use crate::ring::Ring;

use super::report::{Report, Status};
use super::syntax::{Arg, Call, Script, Stmt, Value};

/// Flags that affect evaluation.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub field: Option<Field>,
    pub order: MonomialOrder,
    pub degree_bound: Option<u32>,
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub stats: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            field: None,
            order: MonomialOrder::DegRevLex,
            degree_bound: Some(DEFAULT_DEGREE_BOUND),
            timeout: None,
            seed: 0,
            stats: false,
        }
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Ideal(Ideal),
    Matrix(PolyMatrix),
}

fn polys(ps: &[Polynomial]) -> Json {
    Json::Array(ps.iter().map(|p| Json::String(p.to_canonical_string())).collect())
}

fn matrix_json(m: &PolyMatrix) -> Json {
    Json::Array(m.to_rows().iter().map(|r| polys(r)).collect())
}

fn ring_json(r: &Ring) -> Json {
    Json::String(r.descriptor())
}

fn profile_json(p: &EquationsProfile) -> Map<String, Json> {
    let mut m = Map::new();
    let counts: Map<String, Json> = p.basis_counts.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    m.insert("basis_counts".into(), Json::Object(counts));
    m.insert("fresh_degrees".into(), json!(p.fresh_degrees));
    match p.searched_through {
        None => {
            m.insert("rt".into(), json!(p.relation_type));
            m.insert("linear_type".into(), json!(p.is_linear_type));
            m.insert("syzygetic".into(), json!(p.is_syzygetic));
        }
        Some(d) => {
            m.insert("rt_lower_bound".into(), json!(p.relation_type));
            m.insert("searched_through".into(), json!(d));
            if d >= 2 {
                m.insert("syzygetic".into(), json!(p.is_syzygetic));
            }
        }
    }
    m
}

fn stats_json(runs: u64, s: &EngineStats) -> Json {
    json!({
        "gb_runs": runs,
        "max_degree": s.max_degree,
        "pairs_formed": s.pairs_formed,
        "pairs_reduced": s.pairs_reduced,
        "zero_reductions": s.zero_reductions,
    })
}

/// Evaluation state of one script.
pub struct Runner {
    ring: Arc<Ring>,
    opts: RunOptions,
    names: HashMap<String, Binding>,
    rng: PolyGen,
}

impl Runner {
    pub fn new(script: &Script, opts: &RunOptions) -> Result<Self> {
        let field = opts.field.unwrap_or(script.ring.field);
        let ring = Ring::new(field, script.ring.vars.iter().cloned(), opts.order.clone())?;
        Ok(Runner {
            ring,
            opts: opts.clone(),
            names: HashMap::new(),
            rng: PolyGen::new(opts.seed),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn budget(&self) -> Budget {
        Budget::new(self.opts.degree_bound, self.opts.timeout)
    }

    fn poly(&self, e: &Expr) -> Result<Polynomial> {
        e.eval(&self.ring)
    }

    fn ideal_of(&self, gens: &[Expr]) -> Result<Ideal> {
        Ideal::new(&self.ring, gens.iter().map(|e| self.poly(e)).collect::<Result<_>>()?)
    }

    fn matrix_of(&self, rows: &[Vec<Expr>]) -> Result<PolyMatrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| self.poly(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(&self.ring, rows)
    }

    fn ideal(&self, a: &Arg) -> Result<Ideal> {
        match a {
            Arg::Ideal(g) => self.ideal_of(g),
            Arg::Expr(e) => match e.as_ident().and_then(|s| self.names.get(s)) {
                Some(Binding::Ideal(i)) => Ok(i.clone()),
                _ => Err(Error::Input(format!("`{e}` is not an ideal"))),
            },
            Arg::Matrix(_) => Err(Error::Input("expected an ideal, found a matrix".into())),
        }
    }

    fn matrix(&self, a: &Arg) -> Result<PolyMatrix> {
        match a {
            Arg::Matrix(m) => self.matrix_of(m),
            Arg::Expr(e) => match e.as_ident().and_then(|s| self.names.get(s)) {
                Some(Binding::Matrix(m)) => Ok(m.clone()),
                _ => Err(Error::Input(format!("`{e}` is not a matrix"))),
            },
            Arg::Ideal(_) => Err(Error::Input("expected a matrix, found an ideal".into())),
        }
    }

    fn expr<'a>(&self, a: &'a Arg) -> Result<&'a Expr> {
        match a {
            Arg::Expr(e) => Ok(e),
            _ => Err(Error::Input(format!("expected a polynomial, found `{a}`"))),
        }
    }

    fn polynomial(&self, a: &Arg) -> Result<Polynomial> {
        self.poly(self.expr(a)?)
    }

    fn int(&self, a: &Arg) -> Result<u64> {
        self.expr(a)?
            .as_int()
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::Input(format!("expected a natural number, found `{a}`")))
    }

    fn presentation(&self, args: &[Arg]) -> Result<IdealPresentation> {
        let i = self.ideal(&args[0])?;
        let gens = i.nonzero_generators();
        match args.get(1) {
            Some(a @ (Arg::Ideal(_) | Arg::Expr(_))) if self.is_ideal(a) => {
                let k = self.ideal(a)?;
                IdealPresentation::quotient(&self.ring, gens, k.nonzero_generators())
            }
            _ => IdealPresentation::new(&self.ring, gens),
        }
    }

    fn is_ideal(&self, a: &Arg) -> bool {
        match a {
            Arg::Ideal(_) => true,
            Arg::Expr(e) => matches!(e.as_ident().and_then(|s| self.names.get(s)), Some(Binding::Ideal(_))),
            Arg::Matrix(_) => false,
        }
    }

    /// Runs one statement into a report.
    pub fn statement(&mut self, st: &Stmt) -> Report {
        let budget = self.budget();
        let (call_result, bind) = match st {
            Stmt::Decl { name, value, .. } => {
                let r = match value {
                    Value::Ideal(g) => self.ideal_of(g).map(|i| (Map::new(), Some(Binding::Ideal(i)))),
                    Value::Matrix(m) => self.matrix_of(m).map(|m| (Map::new(), Some(Binding::Matrix(m)))),
                    Value::Call(c) => self.ideal_command(c, &budget).map(|(m, i)| (m, Some(Binding::Ideal(i)))),
                };
                (r, Some(name.clone()))
            }
            Stmt::Command(c) => (self.command(c, &budget).map(|m| (m, None)), None),
        };
        let (runs, totals) = budget.totals();
        let mut report = Report {
            command: Some(st.to_string()),
            field: Some(self.ring.field().to_string()),
            ring: Some(self.ring.descriptor()),
            status: Status::Ok,
            result: Json::Null,
            stats: None,
        };
        match call_result {
            Ok((mut m, binding)) => {
                if let (Some(name), Some(b)) = (bind, binding) {
                    match &b {
                        Binding::Ideal(i) => {
                            m.entry("generators").or_insert_with(|| polys(i.generators()));
                        }
                        Binding::Matrix(mx) => {
                            m.insert("matrix".into(), matrix_json(mx));
                        }
                    }
                    m.insert("name".into(), Json::String(name.clone()));
                    self.names.insert(name, b);
                }
                report.result = Json::Object(m);
                if self.opts.stats {
                    report.stats = Some(stats_json(runs, &totals));
                }
            }
            Err(e) => {
                report.status = Status::of(&e);
                let mut m = Map::new();
                m.insert("error".into(), Json::String(e.to_string()));
                if let Error::Aborted { reason, stats } = &e {
                    match reason {
                        AbortReason::DegreeBound { bound, needed } => {
                            m.insert("reason".into(), json!("degree_bound"));
                            m.insert("bound".into(), json!(bound));
                            m.insert("needed".into(), json!(needed));
                        }
                        AbortReason::Timeout => {
                            m.insert("reason".into(), json!("timeout"));
                        }
                    }
                    let partial = EngineStats {
                        pairs_formed: totals.pairs_formed + stats.pairs_formed,
                        pairs_reduced: totals.pairs_reduced + stats.pairs_reduced,
                        zero_reductions: totals.zero_reductions + stats.zero_reductions,
                        max_degree: totals.max_degree.max(stats.max_degree),
                    };
                    report.stats = Some(stats_json(runs + 1, &partial));
                } else if self.opts.stats {
                    report.stats = Some(stats_json(runs, &totals));
                }
                report.result = Json::Object(m);
            }
        }
        report
    }

    fn command(&mut self, c: &Call, budget: &Budget) -> Result<Map<String, Json>> {
        let a = &c.args;
        let mut m = Map::new();
        match c.name.as_str() {
            "rt" => {
                let p = self.presentation(a)?;
                if p.is_quotient() {
                    check_quotient(&p, budget)?;
                }
                let bound = a.last().filter(|x| !self.is_ideal(x)).map(|x| self.int(x)).transpose()?;
                let eqs = match bound {
                    Some(d) => rees_ideal_truncated(&p, d, budget)?,
                    None => rees_ideal(&p, budget)?,
                };
                m = profile_json(&profile(&eqs, budget)?);
            }
            "rees" => {
                let p = self.presentation(a)?;
                let eqs = rees_ideal(&p, budget)?;
                m.insert("degrees".into(), json!(eqs.degrees()));
                m.insert("equations".into(), polys(eqs.generators()));
                m.insert("rees_ring".into(), ring_json(eqs.ring()));
                m.insert("verified".into(), json!(eqs.verify_substitution(budget)?));
            }
            "syzygies" => {
                let p = self.presentation(a)?;
                let eqs = rees_ideal(&p, budget)?;
                let z = linear_equations(&eqs)?;
                m.insert("count".into(), json!(z.vectors.len()));
                m.insert("verified".into(), json!(z.verify(&p, budget)?));
                m.insert("vectors".into(), Json::Array(z.vectors.iter().map(|v| polys(v)).collect()));
            }
            "trinomialize" => {
                let p = self.presentation(a)?;
                let t = trinomialize(&p, a.len() == 2)?;
                m.insert("extended_ring".into(), ring_json(&t.ring));
                m.insert("generators".into(), polys(&t.generators));
                m.insert("new_variables".into(), json!(t.new_variables()));
                let subs: Map<String, Json> = t
                    .substitutions
                    .iter()
                    .map(|(y, s)| (y.clone(), Json::String(s.to_canonical_string())))
                    .collect();
                m.insert("substitutions".into(), Json::Object(subs));
                m.insert("verified".into(), json!(t.verify(budget)?));
            }
            "jdual" => {
                let eta = self.matrix(&a[0])?;
                let vars = if a.len() == 1 {
                    (0..self.ring.arity()).collect()
                } else {
                    a[1..]
                        .iter()
                        .map(|x| {
                            let e = self.expr(x)?;
                            e.as_ident()
                                .and_then(|s| self.ring.var_index(s))
                                .ok_or_else(|| Error::Input(format!("`{e}` is not a ring variable")))
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let b = jacobian_dual(&eta, &vars)?;
                m.insert("matrix".into(), matrix_json(&b));
                m.insert("rees_ring".into(), ring_json(b.ring()));
            }
            "expected" => {
                let p = self.presentation(&a[..1])?;
                let eta = self.matrix(&a[1])?;
                let e = expected_equations_check(&p, &eta, budget)?;
                m.insert("holds".into(), json!(e.holds));
                m.insert("jacobian_dual".into(), matrix_json(&e.jacobian_dual));
                m.insert("linear_equations".into(), polys(&e.linear));
                m.insert("minor_degrees".into(), json!(e.minor_degrees));
                m.insert("minors".into(), polys(&e.minors));
                m.insert("rees_ring".into(), ring_json(e.jacobian_dual.ring()));
                m.insert(
                    "witness".into(),
                    e.witness.map_or(Json::Null, |w| Json::String(w.to_canonical_string())),
                );
            }
            "hilbert_burch" => {
                let p = self.presentation(&a[..1])?;
                let g = self.polynomial(&a[1])?;
                let eta = self.matrix(&a[2])?;
                m.insert("holds".into(), json!(hilbert_burch_check(&p, &g, &eta, budget)?));
            }
            "dim" => {
                let i = self.ideal(&a[0])?;
                let d = i.dimension(budget)?;
                m.insert("dimension".into(), json!(d));
                m.insert("height".into(), json!(self.ring.arity() - d));
            }
            "member" => {
                let f = self.polynomial(&a[0])?;
                let i = self.ideal(&a[1])?;
                if a.len() == 3 {
                    m.insert("radical_member".into(), json!(i.radical_contains(&f, budget)?));
                } else {
                    m.insert("member".into(), json!(i.contains(&f, budget)?));
                }
            }
            "strip" => {
                let i = self.ideal(&a[0])?;
                let s = strip_principal_part(&i, budget)?.report(&i, budget)?;
                m.insert("consistent".into(), json!(s.consistent));
                m.insert("factorization_exact".into(), json!(s.stripped.factorization_exact));
                m.insert("g".into(), Json::String(s.stripped.g.to_canonical_string()));
                m.insert("l".into(), polys(s.stripped.l.trim(budget)?.generators()));
                m.insert("rt_ideal".into(), json!(s.rt_ideal));
                m.insert("rt_stripped".into(), json!(s.rt_stripped));
            }
            "equidim" => {
                let comps = a
                    .chunks(2)
                    .map(|c| Ok((self.ideal(&c[0])?, self.int(&c[1])? as usize)))
                    .collect::<Result<Vec<_>>>()?;
                let r = equidimensional_reduce(&comps, budget)?;
                m.insert("agrees".into(), json!(r.agrees));
                m.insert("full".into(), polys(r.full.trim(budget)?.generators()));
                m.insert("heights".into(), json!(r.heights));
                let reduced = match &r.reduced {
                    Some(i) => polys(i.trim(budget)?.generators()),
                    None => Json::Null,
                };
                m.insert("reduced".into(), reduced);
                m.insert("rt_full".into(), json!(r.rt_full));
                m.insert("rt_reduced".into(), json!(r.rt_reduced));
            }
            "invariance" => {
                let count = if a.len() == 2 { self.int(&a[1])? } else { 1 };
                m = self.invariance(&self.ideal(&a[0])?, count, budget)?;
            }
            _ => {
                let (mut info, ideal) = self.ideal_command(c, budget)?;
                let p = IdealPresentation::from_ideal(&ideal)?;
                let prof = profile(&rees_ideal(&p, budget)?, budget)?;
                info.append(&mut profile_json(&prof));
                m = info;
            }
        }
        Ok(m)
    }

    /// Ideal-valued commands. Family constructors report trimmed generators.
    fn ideal_command(&mut self, c: &Call, budget: &Budget) -> Result<(Map<String, Json>, Ideal)> {
        let a = &c.args;
        let mut m = Map::new();
        let ideal = match c.name.as_str() {
            "intersect" => {
                let mut acc = self.ideal(&a[0])?;
                for x in &a[1..] {
                    acc = acc.intersect(&self.ideal(x)?, budget)?;
                }
                acc.trim(budget)?
            }
            "colon" => {
                let mut i = self.ideal(&a[0])?;
                if let Some(k) = a.get(2) {
                    i = i.sum(&self.ideal(k)?)?;
                }
                let q = if self.is_ideal(&a[1]) {
                    i.colon_ideal(&self.ideal(&a[1])?, budget)?
                } else {
                    i.colon(&self.polynomial(&a[1])?, budget)?
                };
                q.trim(budget)?
            }
            "curve" => {
                let curve = if a.iter().all(|x| matches!(x, Arg::Expr(e) if e.as_int().is_some())) {
                    let exps = a
                        .iter()
                        .map(|x| {
                            u32::try_from(self.int(x)?).map_err(|_| Error::Input(format!("exponent `{x}` too large")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    monomial_curve_ideal(&self.ring, &exps, budget)?
                } else {
                    let mut ids = Vec::new();
                    for x in a {
                        self.expr(x)?.identifiers(&mut ids);
                    }
                    let param = ids
                        .into_iter()
                        .find(|s| self.ring.var_index(s).is_none())
                        .ok_or_else(|| Error::Input("curve needs a parameter".into()))?;
                    let src = Ring::new(self.ring.field(), [param], MonomialOrder::DegRevLex)?;
                    let images = a.iter().map(|x| self.expr(x)?.eval(&src)).collect::<Result<Vec<_>>>()?;
                    parametrized_curve_ideal(&self.ring, images, budget)?
                };
                m.insert("images".into(), polys(&curve.images));
                m.insert("verified".into(), json!(curve.verify()?));
                if !curve.warnings.is_empty() {
                    m.insert("warnings".into(), json!(curve.warnings));
                }
                curve.ideal.trim(budget)?
            }
            "hn" => {
                let v = a
                    .iter()
                    .map(|x| u32::try_from(self.int(x)?).map_err(|_| Error::Input(format!("exponent `{x}` too large"))))
                    .collect::<Result<Vec<_>>>()?;
                let h = herzog_northcott(&self.ring, [v[0], v[1], v[2]], [v[3], v[4], v[5]])?;
                m.insert("gcd_m".into(), json!(h.gcd_m));
                m.insert("m".into(), json!(h.m));
                m.insert("matrix".into(), matrix_json(&h.matrix()));
                m.insert("prime_by_criterion".into(), json!(h.is_prime_by_criterion()));
                h.ideal
            }
            "cycle" => {
                let n = usize::try_from(self.int(&a[0])?).map_err(|_| Error::Input("cycle length too large".into()))?;
                cycle_edge_ideal(&self.ring, n)?
            }
            other => return Err(Error::Input(format!("`{other}` does not produce an ideal"))),
        };
        m.insert("generators".into(), polys(ideal.generators()));
        Ok((m, ideal))
    }

    fn invariance(&mut self, i: &Ideal, count: u64, budget: &Budget) -> Result<Map<String, Json>> {
        let p = IdealPresentation::from_ideal(i)?;
        let rt = |p: &IdealPresentation| -> Result<u64> { Ok(profile(&rees_ideal(p, budget)?, budget)?.relation_type) };
        let base = rt(&p)?;
        let mut checks = Vec::new();
        let mut all = true;
        let mut push = |kind: &str, detail: String, value: u64| {
            all &= value == base;
            checks.push(json!({"kind": kind, "detail": detail, "rt": value, "agrees": value == base}));
        };
        for _ in 0..count {
            let extra = self.rng.combination(p.generators(), 1);
            let mut gens = p.generators().to_vec();
            gens.push(extra.clone());
            push("redundant_generator", extra.to_canonical_string(), rt(&p.with_generators(gens)?)?);
            let g = self.rng.polynomial(&self.ring, 0, 2, 3);
            push("adjoin_variable", g.to_canonical_string(), rt(&adjoin_variable_presentation(&p, &g)?)?);
        }
        let t = trinomialize(&p, false)?;
        push("trinomialize", format!("{} new variables", t.new_variables()), rt(&t.presentation()?)?);
        let mut m = Map::new();
        m.insert("checks".into(), Json::Array(checks));
        m.insert("invariant".into(), json!(all));
        m.insert("rt".into(), json!(base));
        Ok(m)
    }
}

/// Runs a parsed script, stopping after the first failing statement.
pub fn run(script: &Script, opts: &RunOptions) -> Vec<Report> {
    let mut runner = match Runner::new(script, opts) {
        Ok(r) => r,
        Err(e) => return vec![Report::failure(None, &e)],
    };
    let mut out = Vec::new();
    for st in &script.stmts {
        let r = runner.statement(st);
        let failed = r.status != Status::Ok;
        out.push(r);
        if failed {
            break;
        }
    }
    out
}
