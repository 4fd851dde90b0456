use crate::Common;
use jkres_core::fourier::{evaluate_total, stratified_fourier};
use jkres_core::geometry::{chambers, find_chamber, Chamber, SimplicialCone, Space};
use jkres_core::laplace::{check_jump_formula, forward_laplace, inverse_laplace, jump};
use jkres_core::linalg::{format_vector, parse_vector, qv};
use jkres_core::oslomon::{iterated_residue_vectors, nbc_basis, separate_variables, wall_residue, WallData};
use jkres_core::plot::fan_svg;
use jkres_core::problem::{element_spec, ProblemFile};
use jkres_core::residue::{smoothness_class, vanish_order_at_infinity, Session};
use jkres_core::{random, Arrangement, Error, RationalElement, Q};
use serde_json::{json, Value};

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 1 } else { 2 };
        CliError { code, message: e.to_string() }
    }
}

fn precondition(m: &str) -> CliError {
    CliError { code: 2, message: m.to_string() }
}

type Res<T> = Result<T, CliError>;

struct Ctx {
    problem: ProblemFile,
    arr: Arrangement,
    opts: Common,
}

impl Ctx {
    fn load(opts: &Common) -> Res<Ctx> {
        let text = std::fs::read_to_string(&opts.file)
            .map_err(|e| CliError { code: 1, message: format!("cannot read {}: {e}", opts.file.display()) })?;
        let problem = ProblemFile::from_json(&text)?;
        let arr = problem.arrangement()?;
        Ok(Ctx { problem, arr, opts: opts.clone() })
    }

    fn element(&self) -> Res<RationalElement> {
        Ok(self.problem.element(&self.arr)?)
    }

    fn vector_opt(&self, flag: &Option<String>, opt: &Option<jkres_core::problem::VectorSpec>) -> Res<Option<Vec<Q>>> {
        let v = match (flag, opt) {
            (Some(s), _) => parse_vector(s)?,
            (None, Some(v)) => jkres_core::problem::vector(v)?,
            (None, None) => return Ok(None),
        };
        if v.len() != self.arr.dim() {
            return Err(Error::DimensionMismatch { expected: self.arr.dim(), got: v.len() }.into());
        }
        Ok(Some(v))
    }

    fn chamber(&self, flag: &Option<String>, opt: &Option<jkres_core::problem::VectorSpec>, space: Space, name: &str) -> Res<Option<Chamber>> {
        match self.vector_opt(flag, opt)? {
            None => Ok(None),
            Some(v) => find_chamber(&self.arr, &v, space).map(Some).map_err(|e| precondition(&format!("{name}: {e}"))),
        }
    }

    fn delta(&self) -> Res<Chamber> {
        self.chamber(&self.opts.delta_witness, &self.problem.options.delta_witness, Space::Dual, "delta witness")?
            .ok_or_else(|| precondition("a dual chamber is required (--delta-witness)"))
    }

    fn gamma(&self) -> Res<Chamber> {
        self.chamber(&self.opts.gamma_witness, &self.problem.options.gamma_witness, Space::Primal, "gamma witness")?
            .ok_or_else(|| precondition("a primal chamber is required (--gamma-witness)"))
    }

    fn point(&self) -> Res<Option<Vec<Q>>> {
        self.vector_opt(&self.opts.point, &self.problem.options.point)
    }

    fn walls(&self) -> Res<Vec<WallData>> {
        let spec: Option<Vec<usize>> = match (&self.opts.wall, &self.problem.options.wall) {
            (Some(s), _) => Some(
                s.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid wall index '{t}'"))))
                    .collect::<Result<_, _>>()?,
            ),
            (None, Some(w)) => Some(w.clone()),
            (None, None) => None,
        };
        match spec {
            None => Ok(WallData::all(&self.arr)),
            Some(inputs) => {
                let lines: Vec<usize> = inputs.iter().map(|&i| self.arr.class_of(i).map(|c| c.0)).collect::<Result<_, _>>()?;
                Ok(vec![WallData::new(&self.arr, &lines)?])
            }
        }
    }

    fn basis_str(&self, b: &[usize]) -> String {
        let vs: Vec<String> = b.iter().map(|&i| format_vector(&self.arr.inputs()[self.arr.representative(i)])).collect();
        format!("({})", vs.join(","))
    }

    fn basis_inputs(&self, b: &[usize]) -> Vec<usize> {
        b.iter().map(|&i| self.arr.representative(i)).collect()
    }
}

fn chamber_str(c: &Chamber) -> String {
    format!("chamber{}", format_vector(&c.witness))
}

fn signs_str(s: &[i8]) -> String {
    s.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect()
}

fn cone_str(c: &SimplicialCone) -> String {
    let parts: Vec<String> = c.generators.iter().zip(&c.strict).map(|(g, &s)| format!("{} {}", format_vector(g), if s { "open" } else { "closed" })).collect();
    format!("cone[{}]", parts.join(", "))
}

fn emit(json_mode: bool, text: String, value: Value) -> Output {
    emit_code(json_mode, text, value, 0)
}

fn emit_code(json_mode: bool, text: String, value: Value, code: u8) -> Output {
    let text = if json_mode { format!("{}\n", serde_json::to_string_pretty(&value).expect("json")) } else { text };
    Output { text, code }
}

pub fn run(cmd: &str, opts: &Common) -> Res<Output> {
    let ctx = Ctx::load(opts)?;
    let j = opts.json;
    let arr = &ctx.arr;
    match cmd {
        "normalize" => {
            let f = Session::new(arr).normalize(&ctx.element()?);
            let d = f.display(arr);
            Ok(emit(j, format!("{d}\n"), json!({"command": cmd, "result": d, "terms": element_spec(arr, &f)})))
        }
        "split" => {
            let sp = Session::new(arr).split(&ctx.element()?);
            let (g, ng) = (sp.g_element(), sp.ng_element());
            let (gs, ngs) = (g.display(arr), ng.display(arr));
            Ok(emit(
                j,
                format!("G: {gs}\nNG: {ngs}\n"),
                json!({"command": cmd, "g": gs, "ng": ngs, "g_terms": element_spec(arr, &g), "ng_terms": element_spec(arr, &ng)}),
            ))
        }
        "nbc-basis" => {
            let b = nbc_basis(arr)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (k, x) in b.iter().enumerate() {
                text.push_str(&format!("b{} = {}\n", k + 1, ctx.basis_str(x)));
                rows.push(json!({"vectors": ctx.basis_str(x), "inputs": ctx.basis_inputs(x)}));
            }
            Ok(emit(j, text, json!({"command": cmd, "bases": rows})))
        }
        "jk-residue" => {
            let f = ctx.element()?;
            let mut s = Session::new(arr);
            let values: Vec<String> = match opts.exp_sign.or(ctx.problem.options.exp_sign) {
                None => s.jk_residue(&f).iter().map(|x| x.to_string()).collect(),
                Some(sg) if sg == 1 || sg == -1 => s.jk_residue_exp(&f, sg).iter().map(|p| p.display_with("h")).collect(),
                Some(_) => return Err(precondition("--exp-sign must be 1 or -1")),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for (b, v) in s.nbc().iter().zip(&values) {
                text.push_str(&format!("{}: {v}\n", ctx.basis_str(b)));
                rows.push(json!({"basis": ctx.basis_str(b), "inputs": ctx.basis_inputs(b), "value": v}));
            }
            Ok(emit(j, text, json!({"command": cmd, "coordinates": rows})))
        }
        "dual-check" => {
            let b = nbc_basis(arr)?;
            let m: Vec<Vec<Q>> = b.iter().map(|x| b.iter().map(|y| iterated_residue_vectors(&arr.vectors_of(x), &arr.vectors_of(y))).collect()).collect();
            let identity = m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(k, v)| *v == Q::from_integer(((i == k) as i64).into())));
            let mut text = String::new();
            for row in &m {
                text.push_str(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
                text.push('\n');
            }
            text.push_str(&format!("identity: {identity}\n"));
            let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
            Ok(emit(j, text, json!({"command": cmd, "matrix": rows, "identity": identity})))
        }
        "wall-residue" => {
            let f = ctx.element()?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for w in ctx.walls()? {
                let res = wall_residue(arr, &f, &w);
                let frame: Vec<String> = w.frame.iter().map(|v| format_vector(v)).collect();
                let d = res.display(&w.induced);
                text.push_str(&format!("wall {}\n  frame: {}\n  residue: {d}\n", ctx.basis_str(&w.span), frame.join(",")));
                rows.push(json!({"wall": ctx.basis_str(&w.span), "frame": frame, "residue": d, "terms": element_spec(&w.induced, &res)}));
            }
            Ok(emit(j, text, json!({"command": cmd, "walls": rows})))
        }
        "separate" => {
            let sep = separate_variables(arr, &ctx.element()?);
            let mut text = String::new();
            let mut rows = Vec::new();
            for (b, p) in &sep {
                let d = p.display_with("d");
                text.push_str(&format!("{}: {d}\n", ctx.basis_str(b)));
                rows.push(json!({"basis": ctx.basis_str(b), "inputs": ctx.basis_inputs(b), "operator": d}));
            }
            Ok(emit(j, text, json!({"command": cmd, "operators": rows})))
        }
        "inverse-laplace" => {
            let delta = ctx.delta()?;
            let pp = inverse_laplace(arr, &ctx.element()?, &delta)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (c, p) in pp.chambers.iter().zip(&pp.pieces) {
                let d = p.display_with("h");
                text.push_str(&format!("{d} on {}\n", chamber_str(c)));
                rows.push(json!({"chamber": format_vector(&c.witness), "signs": signs_str(&c.signs), "piece": d}));
            }
            let mut value = json!({"command": cmd, "delta": format_vector(&delta.witness), "pieces": rows});
            if let Some(h) = ctx.point()? {
                let v = pp.piece_at(arr, &h)?.eval(&h);
                text.push_str(&format!("value at {}: {v}\n", format_vector(&h)));
                value["value"] = json!(v.to_string());
            }
            Ok(emit(j, text, value))
        }
        "jump-check" => {
            let f = ctx.element()?;
            let delta = ctx.delta()?;
            // in wall frame coordinates
            let d0: Option<Vec<Q>> = match (&opts.delta0_witness, &ctx.problem.options.delta0_witness) {
                (Some(t), _) => Some(parse_vector(t)?),
                (None, Some(v)) => Some(jkres_core::problem::vector(v)?),
                (None, None) => None,
            };
            let pp = inverse_laplace(arr, &f, &delta)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut all = true;
            for w in ctx.walls()? {
                let delta0 = match &d0 {
                    None => None,
                    Some(v) => Some(find_chamber(&w.induced, v, Space::Dual).map_err(|e| precondition(&format!("delta0 witness: {e}")))?),
                };
                let holds = check_jump_formula(arr, &f, &w, &delta, delta0.as_ref())?;
                all &= holds;
                let jp = jump(arr, &pp, &w)?;
                text.push_str(&format!("wall {}: {}\n", ctx.basis_str(&w.span), if holds { "holds" } else { "FAILS" }));
                let mut pieces = Vec::new();
                for (u, p) in jp.witnesses.iter().zip(&jp.pieces) {
                    let d = p.display_with("h");
                    text.push_str(&format!("  jump {d} on {}\n", format_vector(u)));
                    pieces.push(json!({"component": format_vector(u), "jump": d}));
                }
                rows.push(json!({"wall": ctx.basis_str(&w.span), "holds": holds, "jumps": pieces}));
            }
            Ok(emit_code(j, text, json!({"command": cmd, "all_hold": all, "walls": rows}), if all { 0 } else { 3 }))
        }
        "smoothness" => {
            let f = ctx.element()?;
            let g = Session::new(arr).split(&f).g_element();
            let order = vanish_order_at_infinity(arr, &g);
            let k = smoothness_class(arr, &f);
            let text = match (order, k) {
                (Some(n), Some(k)) if k >= 0 => format!("vanish order: {n}\nclass: C^{k}\n"),
                (Some(n), Some(k)) => format!("vanish order: {n}\nclass: {k} (discontinuous)\n"),
                _ => "generating part is zero; the transform vanishes\n".to_string(),
            };
            Ok(emit(j, text, json!({"command": cmd, "vanish_order": order, "class": k})))
        }
        "fourier" => {
            let f = ctx.element()?;
            let gamma = ctx.gamma()?;
            let delta = ctx.delta()?;
            let sf = stratified_fourier(arr, &f, &gamma, &delta)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (p, c) in &sf.terms {
                let d = p.display_with("h");
                text.push_str(&format!("{d} * {}\n", cone_str(c)));
                let gens: Vec<String> = c.generators.iter().map(|g| format_vector(g)).collect();
                rows.push(json!({"coefficient": d, "generators": gens, "open": c.strict}));
            }
            if sf.terms.is_empty() {
                text.push_str("0\n");
            }
            let mut value = json!({"command": cmd, "terms": rows});
            if let Some(h) = ctx.point()? {
                let v = evaluate_total(&sf, &h);
                text.push_str(&format!("value at {}: {v}\n", format_vector(&h)));
                value["value"] = json!(v.to_string());
            }
            Ok(emit(j, text, value))
        }
        "chambers" => {
            let mut text = String::new();
            let mut value = json!({"command": cmd});
            for (name, space) in [("primal", Space::Primal), ("dual", Space::Dual)] {
                let cs = chambers(arr, space)?;
                text.push_str(&format!("{name}: {} chambers\n", cs.len()));
                let mut rows = Vec::new();
                for c in &cs {
                    text.push_str(&format!("  {} signs {}\n", chamber_str(c), signs_str(&c.signs)));
                    rows.push(json!({"witness": format_vector(&c.witness), "signs": signs_str(&c.signs)}));
                }
                value[name] = json!(rows);
            }
            Ok(emit(j, text, value))
        }
        "plot" => {
            let pp = match (&ctx.problem.expression, ctx.chamber(&opts.delta_witness, &ctx.problem.options.delta_witness, Space::Dual, "delta witness")?) {
                (Some(_), Some(d)) => Some(inverse_laplace(arr, &ctx.element()?, &d)?),
                _ => None,
            };
            let svg = fan_svg(arr, pp.as_ref())?;
            match &opts.out {
                Some(path) => {
                    std::fs::write(path, &svg).map_err(|e| precondition(&format!("cannot write {}: {e}", path.display())))?;
                    Ok(emit(j, format!("wrote {}\n", path.display()), json!({"command": cmd, "out": path.display().to_string()})))
                }
                None => Ok(Output { text: svg, code: 0 }),
            }
        }
        _ => Err(precondition(&format!("unknown command {cmd}"))),
    }
}

fn builtin() -> Vec<(&'static str, Arrangement)> {
    vec![
        ("A2", Arrangement::new(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap()),
        ("A3", Arrangement::new(vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1]), qv(&[1, 1, 0]), qv(&[0, 1, 1]), qv(&[1, 1, 1])]).unwrap()),
        ("generic4", Arrangement::new(vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 2]), qv(&[3, -1])]).unwrap()),
    ]
}

pub fn selftest(json_mode: bool) -> Res<Output> {
    let seed: u64 = match std::env::var("JKRES_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError { code: 1, message: format!("JKRES_SEED must be an integer, got '{s}'") })?,
        Err(_) => 20240611,
    };
    let mut g = random::seeded(seed);
    let mut text = format!("seed {seed}\n");
    let mut rows = Vec::new();
    let mut ok_all = true;
    for (name, a) in builtin() {
        let deltas = chambers(&a, Space::Dual)?;
        let walls = WallData::all(&a);
        let mut s = Session::new(&a);
        let (mut round, mut split, mut jumps) = (true, true, true);
        for _ in 0..4 {
            let f = random::g_element(&a, &mut g);
            let want = {
                let gp = s.split(&f).g_element();
                s.normalize(&gp)
            };
            for d in deltas.iter().step_by(if a.dim() == 3 { 6 } else { 1 }) {
                round &= forward_laplace(&a, &inverse_laplace(&a, &f, d)?)? == want;
            }
        }
        for _ in 0..20 {
            let f = random::element(&a, &mut g).add(&random::g_element(&a, &mut g));
            let sp = s.split(&f);
            let sum = sp.g_element().add(&sp.ng_element());
            for _ in 0..5 {
                let y = random::regular_dual_point(&a, &mut g);
                split &= sum.evaluate(&a, &y)? == f.evaluate(&a, &y)?;
            }
        }
        let f = random::g_element(&a, &mut g).add(&random::element(&a, &mut g));
        for w in &walls {
            jumps &= check_jump_formula(&a, &f, w, &deltas[0], None)?;
        }
        for (check, ok) in [("round trip", round), ("split", split), ("jump formula", jumps)] {
            text.push_str(&format!("{name} {check}: {}\n", if ok { "PASS" } else { "FAIL" }));
            rows.push(json!({"arrangement": name, "check": check, "pass": ok}));
            ok_all &= ok;
        }
    }
    Ok(emit_code(json_mode, text, json!({"seed": seed, "checks": rows, "pass": ok_all}), if ok_all { 0 } else { 3 }))
}
