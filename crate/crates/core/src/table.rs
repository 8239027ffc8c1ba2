//! Operads given by exhaustive finite tables, loaded from and exported to
//! JSON.
//!
//! ```json
//! { "mode": "symmetric", "colours": ["x"], "cap": 2,
//!   "ops": [{"id": "u", "in": ["x"], "out": "x"}, …],
//!   "compose": [{"outer": "u", "inner": ["u"], "result": "u"}, …],
//!   "action": [{"op": "m", "perm": [1, 0], "result": "m"}, …] }
//! ```
//!
//! `perm` lists images: the result's input `i` is the op's input `perm[i]`.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::algebra::{AmbientMode, Colour};
use crate::error::{OperadError, SpecError};
use crate::operad::{check_profile, for_each_tuple, OpIndex, Operad, Operation, Payload};
use crate::perm::Perm;

#[derive(Clone, Debug)]
struct TableOp {
    id: String,
    inputs: Vec<Colour>,
    output: Colour,
    weight: usize,
}

#[derive(Clone, Debug)]
pub struct OperadData {
    name: String,
    mode: AmbientMode,
    colours: Vec<String>,
    cap: usize,
    weight_cap: Option<usize>,
    ops: Vec<TableOp>,
    compose: HashMap<(usize, Vec<usize>), usize>,
    action: HashMap<(usize, Perm), usize>,
    units: Vec<usize>,
}

fn err(pointer: impl Into<String>, msg: impl Into<String>) -> SpecError {
    SpecError::new(pointer, msg)
}

fn get<'v>(obj: &'v Value, key: &str, at: &str) -> Result<&'v Value, SpecError> {
    obj.get(key)
        .ok_or_else(|| err(format!("{at}/{key}"), "missing field"))
}

fn get_str<'v>(obj: &'v Value, key: &str, at: &str) -> Result<&'v str, SpecError> {
    get(obj, key, at)?
        .as_str()
        .ok_or_else(|| err(format!("{at}/{key}"), "expected a string"))
}

fn get_array<'v>(obj: &'v Value, key: &str, at: &str) -> Result<&'v Vec<Value>, SpecError> {
    get(obj, key, at)?
        .as_array()
        .ok_or_else(|| err(format!("{at}/{key}"), "expected an array"))
}

fn get_usize(v: &Value, at: &str) -> Result<usize, SpecError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(at, "expected a non-negative integer"))
}

impl OperadData {
    pub fn from_json_str(s: &str) -> Result<Self, SpecError> {
        let v: Value = serde_json::from_str(s).map_err(|e| err("", format!("not JSON: {e}")))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, SpecError> {
        if !v.is_object() {
            return Err(err("", "expected an object"));
        }
        let mode_s = get_str(v, "mode", "")?;
        let mode = AmbientMode::parse(mode_s)
            .ok_or_else(|| err("/mode", format!("unknown mode {mode_s:?}")))?;
        let mut colours = Vec::new();
        for (i, c) in get_array(v, "colours", "")?.iter().enumerate() {
            let name = c
                .as_str()
                .ok_or_else(|| err(format!("/colours/{i}"), "expected a string"))?;
            if colours.iter().any(|x: &String| x == name) {
                return Err(err(format!("/colours/{i}"), "duplicate colour"));
            }
            colours.push(name.to_string());
        }
        if colours.is_empty() {
            return Err(err("/colours", "colour set is empty"));
        }
        let cap = get_usize(get(v, "cap", "")?, "/cap")?;
        if cap == 0 {
            return Err(err("/cap", "cap must be at least 1"));
        }
        let weight_cap = match v.get("weight_cap") {
            None | Some(Value::Null) => None,
            Some(w) => Some(get_usize(w, "/weight_cap")?),
        };
        let colour = |name: &Value, at: String| -> Result<Colour, SpecError> {
            let s = name
                .as_str()
                .ok_or_else(|| err(at.clone(), "expected a colour name"))?;
            colours
                .iter()
                .position(|c| c == s)
                .map(|i| i as Colour)
                .ok_or_else(|| err(at, format!("unknown colour {s:?}")))
        };

        let mut ops: Vec<TableOp> = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        for (i, o) in get_array(v, "ops", "")?.iter().enumerate() {
            let at = format!("/ops/{i}");
            let id = get_str(o, "id", &at)?.to_string();
            let inputs = get_array(o, "in", &at)?
                .iter()
                .enumerate()
                .map(|(j, c)| colour(c, format!("{at}/in/{j}")))
                .collect::<Result<Vec<_>, _>>()?;
            let output = colour(get(o, "out", &at)?, format!("{at}/out"))?;
            let weight = match o.get("weight") {
                None => 0,
                Some(w) => get_usize(w, &format!("{at}/weight"))?,
            };
            let n = inputs.len();
            if n > cap {
                return Err(err(format!("{at}/in"), "arity exceeds the cap"));
            }
            let legal = match mode {
                AmbientMode::Identity => n == 1,
                AmbientMode::Pointed => n <= 1,
                _ => n >= 1,
            };
            if !legal {
                return Err(err(
                    format!("{at}/in"),
                    format!("arity {n} not allowed in {} mode", mode.as_str()),
                ));
            }
            if ids.insert(id.clone(), i).is_some() {
                return Err(err(format!("{at}/id"), format!("duplicate id {id:?}")));
            }
            ops.push(TableOp {
                id,
                inputs,
                output,
                weight,
            });
        }
        let lookup = |x: &Value, at: String| -> Result<usize, SpecError> {
            let s = x
                .as_str()
                .ok_or_else(|| err(at.clone(), "expected an op id"))?;
            ids.get(s)
                .copied()
                .ok_or_else(|| err(at, format!("unknown op {s:?}")))
        };

        let mut compose = HashMap::new();
        for (j, e) in get_array(v, "compose", "")?.iter().enumerate() {
            let at = format!("/compose/{j}");
            let outer = lookup(get(e, "outer", &at)?, format!("{at}/outer"))?;
            let inner = get_array(e, "inner", &at)?
                .iter()
                .enumerate()
                .map(|(k, x)| lookup(x, format!("{at}/inner/{k}")))
                .collect::<Result<Vec<_>, _>>()?;
            let result = lookup(get(e, "result", &at)?, format!("{at}/result"))?;
            let o = &ops[outer];
            if o.inputs.len() != inner.len()
                || o.inputs
                    .iter()
                    .zip(&inner)
                    .any(|(c, &a)| ops[a].output != *c)
            {
                return Err(err(&at, "inner operations do not match the outer profile"));
            }
            let ins: Vec<Colour> = inner.iter().flat_map(|&a| ops[a].inputs.clone()).collect();
            if ops[result].inputs != ins || ops[result].output != o.output {
                return Err(err(format!("{at}/result"), "result has the wrong profile"));
            }
            let w: usize = o.weight + inner.iter().map(|&a| ops[a].weight).sum::<usize>();
            if ops[result].weight != w {
                return Err(err(format!("{at}/result"), "weights are not additive"));
            }
            if let Some(prev) = compose.insert((outer, inner), result) {
                if prev != result {
                    return Err(err(&at, "conflicting entry"));
                }
            }
        }

        let mut action = HashMap::new();
        let empty = Vec::new();
        let action_entries = match v.get("action") {
            None => &empty,
            Some(_) => get_array(v, "action", "")?,
        };
        if !mode.is_symmetric() && !action_entries.is_empty() {
            return Err(err(
                "/action",
                format!("no symmetric action in {} mode", mode.as_str()),
            ));
        }
        for (j, e) in action_entries.iter().enumerate() {
            let at = format!("/action/{j}");
            let op = lookup(get(e, "op", &at)?, format!("{at}/op"))?;
            let images = get_array(e, "perm", &at)?
                .iter()
                .enumerate()
                .map(|(k, x)| get_usize(x, &format!("{at}/perm/{k}")))
                .collect::<Result<Vec<_>, _>>()?;
            let p = Perm::from_images(images)
                .filter(|p| p.degree() == ops[op].inputs.len())
                .ok_or_else(|| err(format!("{at}/perm"), "not a permutation of the op's inputs"))?;
            let result = lookup(get(e, "result", &at)?, format!("{at}/result"))?;
            if ops[result].inputs != p.permute(&ops[op].inputs)
                || ops[result].output != ops[op].output
                || ops[result].weight != ops[op].weight
            {
                return Err(err(format!("{at}/result"), "result has the wrong profile"));
            }
            if let Some(prev) = action.insert((op, p), result) {
                if prev != result {
                    return Err(err(&at, "conflicting entry"));
                }
            }
        }

        let mut data = OperadData {
            name: v
                .get("name")
                .and_then(|n| n.as_str())
                .unwrap_or("table")
                .to_string(),
            mode,
            colours,
            cap,
            weight_cap,
            ops,
            compose,
            action,
            units: Vec::new(),
        };
        data.check_complete()?;
        data.units = data.find_units(v.get("units"))?;
        Ok(data)
    }

    /// Every composable tuple within the window and every permutation of
    /// every operation must have an entry.
    fn check_complete(&self) -> Result<(), SpecError> {
        let all = OpIndex::from_ops((0..self.ops.len()).map(|i| self.op(i)));
        for i in 0..self.ops.len() {
            let o = self.op(i);
            let mut missing = None;
            let wo = self.ops[i].weight;
            for_each_tuple(
                self,
                &all,
                &o.inputs,
                self.cap,
                self.weight_cap.map(|w| w.saturating_sub(wo)),
                &mut |a| {
                    if missing.is_some() {
                        return;
                    }
                    let key = (i, a.iter().map(token).collect::<Vec<_>>());
                    if !self.compose.contains_key(&key) {
                        let inner: Vec<&str> =
                            key.1.iter().map(|&t| self.ops[t].id.as_str()).collect();
                        missing = Some(format!(
                            "missing entry for {} with inner {:?}",
                            self.ops[i].id, inner
                        ));
                    }
                },
            );
            if let Some(m) = missing {
                return Err(err("/compose", m));
            }
            if self.mode.is_symmetric() {
                for p in Perm::all(o.arity()) {
                    if !p.is_identity() && !self.action.contains_key(&(i, p.clone())) {
                        return Err(err(
                            "/action",
                            format!(
                                "missing entry for {} under {:?}",
                                self.ops[i].id,
                                p.images()
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_units(&self, declared: Option<&Value>) -> Result<Vec<usize>, SpecError> {
        let mut units = Vec::new();
        for (c, name) in self.colours.iter().enumerate() {
            let c = c as Colour;
            let unit = match declared.and_then(|u| u.get(name)) {
                Some(id) => {
                    let s = id
                        .as_str()
                        .ok_or_else(|| err(format!("/units/{name}"), "expected an op id"))?;
                    self.ops
                        .iter()
                        .position(|o| o.id == s)
                        .ok_or_else(|| err(format!("/units/{name}"), "unknown op"))?
                }
                None => (0..self.ops.len())
                    .find(|&u| {
                        self.ops[u].inputs == [c]
                            && self.ops[u].output == c
                            && (0..self.ops.len())
                                .filter(|&x| self.ops[x].output == c)
                                .all(|x| self.compose.get(&(u, vec![x])) == Some(&x))
                    })
                    .ok_or_else(|| err("/units", format!("no unit for colour {name:?}")))?,
            };
            units.push(unit);
        }
        Ok(units)
    }

    fn op(&self, i: usize) -> Operation {
        Operation::new(
            self.ops[i].inputs.clone(),
            self.ops[i].output,
            Payload::Token(i as u32),
        )
    }

    /// Replaces the result of one composition entry, keeping its profile.
    /// Used to inject faults in tests.
    pub fn corrupt_compose(&mut self, outer: &str, inner: &[&str], result: &str) -> bool {
        let find = |s: &str| self.ops.iter().position(|o| o.id == s);
        let (Some(o), Some(r)) = (find(outer), find(result)) else {
            return false;
        };
        let Some(inner) = inner.iter().map(|s| find(s)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        self.compose.insert((o, inner), r).is_some()
    }

    pub fn op_by_id(&self, id: &str) -> Option<Operation> {
        self.ops.iter().position(|o| o.id == id).map(|i| self.op(i))
    }
}

fn token(op: &Operation) -> usize {
    match op.payload {
        Payload::Token(t) => t as usize,
        _ => usize::MAX,
    }
}

impl Operad for OperadData {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn mode(&self) -> AmbientMode {
        self.mode
    }
    fn colours(&self) -> Vec<Colour> {
        (0..self.colours.len() as Colour).collect()
    }
    fn colour_name(&self, c: Colour) -> String {
        self.colours[c as usize].clone()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn weight_cap(&self) -> Option<usize> {
        self.weight_cap
    }
    fn operations(&self, arity: usize) -> Vec<Operation> {
        (0..self.ops.len())
            .filter(|&i| self.ops[i].inputs.len() == arity)
            .map(|i| self.op(i))
            .collect()
    }
    fn contains(&self, op: &Operation) -> bool {
        let t = token(op);
        t < self.ops.len() && *op == self.op(t)
    }
    fn act(&self, op: &Operation, p: &Perm) -> Operation {
        if p.is_identity() {
            return op.clone();
        }
        match self.action.get(&(token(op), p.clone())) {
            Some(&r) => self.op(r),
            None => op.clone(),
        }
    }
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation, OperadError> {
        check_profile(outer, inner)?;
        let key = (token(outer), inner.iter().map(token).collect::<Vec<_>>());
        match self.compose.get(&key) {
            Some(&r) => Ok(self.op(r)),
            None => Err(OperadError::WindowExceeded(format!(
                "{} with inner {:?}",
                self.ops[key.0].id,
                key.1
                    .iter()
                    .map(|&t| self.ops[t].id.as_str())
                    .collect::<Vec<_>>()
            ))),
        }
    }
    fn unit(&self, c: Colour) -> Operation {
        self.op(self.units[c as usize])
    }
    fn weight(&self, op: &Operation) -> usize {
        self.ops[token(op)].weight
    }
    fn label(&self, rep: &Operation) -> String {
        self.ops[token(rep)].id.clone()
    }
}

/// Exhaustive table of any operad within its window.
pub fn export_table(d: &dyn Operad) -> Value {
    let index = OpIndex::new(d);
    let mut all: Vec<Operation> = (0..=d.cap())
        .flat_map(|n| index.of_arity(n).to_vec())
        .collect();
    all.sort();
    let mut ids: BTreeMap<Operation, String> = BTreeMap::new();
    for op in &all {
        let (rep, p) = d.canonical(op);
        let label = d.label(&rep);
        let id = if p.is_identity() || &rep == op {
            label
        } else {
            let q: Vec<String> = p.inverse().images().iter().map(|i| i.to_string()).collect();
            format!("{label}*{}", q.join(""))
        };
        ids.insert(op.clone(), id);
    }
    let wcap = d.weight_cap();
    let within = OpIndex::from_ops(all.iter().cloned());
    let colour = |c: Colour| Value::String(d.colour_name(c));
    let mut ops = Vec::new();
    let mut compose = Vec::new();
    let mut action = Vec::new();
    for op in &all {
        let mut o = Map::new();
        o.insert("id".into(), json!(ids[op]));
        o.insert(
            "in".into(),
            Value::Array(op.inputs.iter().map(|&c| colour(c)).collect()),
        );
        o.insert("out".into(), colour(op.output));
        if d.weight(op) > 0 {
            o.insert("weight".into(), json!(d.weight(op)));
        }
        ops.push(Value::Object(o));
        let wo = d.weight(op);
        for_each_tuple(
            d,
            &within,
            &op.inputs,
            d.cap(),
            wcap.map(|w| w.saturating_sub(wo)),
            &mut |a| {
                if let Ok(r) = d.compose(op, a) {
                    if let Some(rid) = ids.get(&r) {
                        compose.push(json!({
                            "outer": ids[op],
                            "inner": a.iter().map(|x| ids[x].clone()).collect::<Vec<_>>(),
                            "result": rid,
                        }));
                    }
                }
            },
        );
        if d.mode().is_symmetric() {
            for p in Perm::all(op.arity()) {
                if !p.is_identity() {
                    action.push(
                        json!({"op": ids[op], "perm": p.images(), "result": ids[&d.act(op, &p)]}),
                    );
                }
            }
        }
    }
    let mut out = json!({
        "name": d.name(),
        "mode": d.mode().as_str(),
        "colours": d.colours().into_iter().map(|c| d.colour_name(c)).collect::<Vec<_>>(),
        "cap": d.cap(),
        "ops": ops,
        "compose": compose,
        "action": action,
    });
    if let Some(w) = wcap {
        out["weight_cap"] = json!(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{comm_plus, multivariate, nat_monoid};
    use crate::operad::{validate_operad, ViolationKind};

    #[test]
    fn roundtrip_comm_plus() {
        let t = export_table(&comm_plus(4));
        let d = OperadData::from_json(&t).unwrap();
        assert!(validate_operad(&d).is_clean());
        assert_eq!(d.unit(0), d.op_by_id("A_1").unwrap());
    }

    #[test]
    fn roundtrip_multivariate_and_monoid() {
        let t = export_table(&multivariate(&["i", "j"], 2).unwrap());
        let d = OperadData::from_json(&t).unwrap();
        assert!(validate_operad(&d).is_clean());
        let t = export_table(&nat_monoid(4));
        let d = OperadData::from_json(&t).unwrap();
        assert!(validate_operad(&d).is_clean());
    }

    #[test]
    fn pointer_on_bad_colour() {
        let mut t = export_table(&comm_plus(2));
        t["ops"][1]["out"] = json!("nope");
        let e = OperadData::from_json(&t).unwrap_err();
        assert_eq!(e.pointer, "/ops/1/out");
    }

    #[test]
    fn missing_entry_is_rejected() {
        let mut t = export_table(&comm_plus(3));
        t["compose"].as_array_mut().unwrap().pop();
        let e = OperadData::from_json(&t).unwrap_err();
        assert_eq!(e.pointer, "/compose");
    }

    fn cyclic3() -> Value {
        let names = ["e", "a", "b"];
        let mut compose = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                compose.push(
                    json!({"outer": names[x], "inner": [names[y]], "result": names[(x + y) % 3]}),
                );
            }
        }
        json!({
            "mode": "identity",
            "colours": ["*"],
            "cap": 1,
            "ops": names.iter().map(|n| json!({"id": n, "in": ["*"], "out": "*"})).collect::<Vec<_>>(),
            "compose": compose,
        })
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let mut d = OperadData::from_json(&cyclic3()).unwrap();
        assert!(validate_operad(&d).is_clean());
        assert!(d.corrupt_compose("a", &["a"], "e"));
        let report = validate_operad(&d);
        assert!(!report.is_clean());
        let a = d.op_by_id("a").unwrap();
        let uses_entry = |c: &Operation, b: &[Operation], x: &[Operation]| {
            let bad = |o: &Operation, i: &[Operation]| *o == a && i == std::slice::from_ref(&a);
            let cb = d.compose(c, b).unwrap();
            let bx = d.compose(&b[0], x).unwrap();
            bad(c, b) || bad(&cb, x) || bad(&b[0], x) || bad(c, std::slice::from_ref(&bx))
        };
        for v in &report.violations {
            assert_eq!(v.kind, ViolationKind::Associativity);
            let (c, b, x) = v.triple.as_ref().unwrap();
            assert!(uses_entry(c, b, x), "{}", v.detail);
        }
        // (a,a,b), (b,a,a), (a,b,b), (b,b,a)
        assert_eq!(report.violations.len(), 4);
    }
}
