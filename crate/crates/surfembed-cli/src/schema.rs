//! The instance file format: strict decoding with JSON pointers for every
//! problem, and the inverse encoding.

use serde_json::{json, Map, Value};

use surfembed::band_theta::{BandCatalog, BandKind, BandRecord, SurfaceComponent, SurfaceModel};
use surfembed::decision_engine::{validate, ComponentData, EngineError, Issue, ProblemInstance};
use surfembed::group_core::{
    make_finite_group, subgroup_closure, AbelianGroup, AmbientGroup, Character, GroupElem, Sign,
};
use surfembed::whitney_calc::{CollectionKind, DoublePoint, WhitneyCollection, WhitneyDisc};

pub const INSTANCE_VERSION: &str = "surfembed-instance/1";

struct Reader {
    issues: Vec<Issue>,
}

fn join(ptr: &str, key: impl std::fmt::Display) -> String {
    format!("{ptr}/{key}")
}

impl Reader {
    fn fail<T>(&mut self, ptr: &str, msg: impl Into<String>) -> Option<T> {
        self.issues.push(Issue::new(ptr, msg));
        None
    }

    /// The object at `ptr`, checking that exactly `keys` are present.
    fn object<'a>(&mut self, v: &'a Value, ptr: &str, keys: &[&str]) -> Option<&'a Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            return self.fail(ptr, "expected an object");
        };
        for k in keys {
            if !obj.contains_key(*k) {
                self.issues.push(Issue::new(join(ptr, k), "required field is missing"));
            }
        }
        for k in obj.keys() {
            if !keys.contains(&k.as_str()) {
                self.issues.push(Issue::new(join(ptr, k), "unknown field"));
            }
        }
        Some(obj)
    }

    fn array<'a>(&mut self, v: Option<&'a Value>, ptr: &str) -> Option<&'a Vec<Value>> {
        match v? {
            Value::Array(a) => Some(a),
            _ => self.fail(ptr, "expected an array"),
        }
    }

    fn int(&mut self, v: Option<&Value>, ptr: &str) -> Option<i64> {
        match v?.as_i64() {
            Some(x) => Some(x),
            None => self.fail(ptr, "expected an integer"),
        }
    }

    fn index(&mut self, v: Option<&Value>, ptr: &str) -> Option<usize> {
        match v?.as_u64() {
            Some(x) => Some(x as usize),
            None => self.fail(ptr, "expected a nonnegative integer"),
        }
    }

    fn bit(&mut self, v: Option<&Value>, ptr: &str) -> Option<u8> {
        match v?.as_u64() {
            Some(x @ 0..=1) => Some(x as u8),
            _ => self.fail(ptr, "expected 0 or 1"),
        }
    }

    fn sign(&mut self, v: Option<&Value>, ptr: &str) -> Option<Sign> {
        match v?.as_i64() {
            Some(1) => Some(1),
            Some(-1) => Some(-1),
            _ => self.fail(ptr, "expected 1 or -1"),
        }
    }

    fn boolean(&mut self, v: Option<&Value>, ptr: &str) -> Option<bool> {
        match v?.as_bool() {
            Some(b) => Some(b),
            None => self.fail(ptr, "expected a boolean"),
        }
    }

    fn string<'a>(&mut self, v: Option<&'a Value>, ptr: &str) -> Option<&'a str> {
        match v?.as_str() {
            Some(s) => Some(s),
            None => self.fail(ptr, "expected a string"),
        }
    }

    /// A present field whose value may be `null`.
    fn nullable<'a>(&mut self, v: Option<&'a Value>) -> Option<Option<&'a Value>> {
        match v? {
            Value::Null => Some(None),
            x => Some(Some(x)),
        }
    }

    fn bits(&mut self, v: Option<&Value>, ptr: &str) -> Option<Vec<u8>> {
        let arr = self.array(v, ptr)?;
        let out: Vec<Option<u8>> = arr.iter().enumerate().map(|(i, x)| self.bit(Some(x), &join(ptr, i))).collect();
        out.into_iter().collect()
    }

    fn elem(&mut self, group: Option<&AmbientGroup>, v: Option<&Value>, ptr: &str) -> Option<GroupElem> {
        let v = v?;
        let group = group?;
        let e = match group {
            AmbientGroup::FiniteTable(_) => GroupElem::Index(self.index(Some(v), ptr)?),
            AmbientGroup::FGAbelian(_) => {
                let arr = self.array(Some(v), ptr)?;
                let xs: Option<Vec<i64>> =
                    arr.iter().enumerate().map(|(i, x)| self.int(Some(x), &join(ptr, i))).collect();
                GroupElem::Tuple(xs?)
            }
        };
        if group.is_valid(&e) {
            Some(group.canon(&e))
        } else {
            self.fail(ptr, "not an element of the group")
        }
    }
}

/// Decodes and fully validates an instance, reporting every problem.
pub fn decode_instance(v: &Value) -> Result<ProblemInstance, Vec<Issue>> {
    let mut r = Reader { issues: Vec::new() };
    let inst = read_instance(&mut r, v);
    let mut issues = r.issues;
    if let (Some(inst), true) = (&inst, issues.is_empty()) {
        if let Err(EngineError::Validation(more)) = validate(inst) {
            issues.extend(more);
        }
    }
    issues.sort();
    issues.dedup();
    match inst {
        Some(i) if issues.is_empty() => Ok(i),
        _ => Err(issues),
    }
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, Vec<Issue>> {
    let v: Value = serde_json::from_str(text).map_err(|e| vec![Issue::new("", format!("invalid JSON: {e}"))])?;
    decode_instance(&v)
}

const TOP_KEYS: &[&str] = &[
    "version",
    "group",
    "characters",
    "components",
    "surface",
    "double_points",
    "whitney_collection",
    "catalogs",
    "flags",
];

fn read_instance(r: &mut Reader, v: &Value) -> Option<ProblemInstance> {
    let top = r.object(v, "", TOP_KEYS)?;
    match r.string(top.get("version"), "/version") {
        Some(INSTANCE_VERSION) | None => {}
        Some(other) => {
            r.fail::<()>("/version", format!("unsupported version {other:?}, expected {INSTANCE_VERSION:?}"));
        }
    }
    let group = top.get("group").and_then(|g| read_group(r, g));
    let w_m = top.get("characters").and_then(|c| read_character(r, group.as_ref(), c));
    let components = top.get("components").and_then(|c| read_components(r, group.as_ref(), c));
    let surface = top.get("surface").and_then(|s| read_surface(r, s));
    let double_points = top.get("double_points").and_then(|d| read_points(r, group.as_ref(), d));
    let whitney = match r.nullable(top.get("whitney_collection")) {
        Some(Some(w)) => read_whitney(r, w).map(Some),
        Some(None) => Some(None),
        None => None,
    };
    let catalogs = top.get("catalogs").and_then(|c| read_catalogs(r, c));
    let flags = top.get("flags").and_then(|f| read_flags(r, f));
    if let (Some(pts), Some(comps)) = (&double_points, &components) {
        for (k, p) in pts.iter().enumerate() {
            if p.components.0 >= comps.len() || p.components.1 >= comps.len() {
                r.issues.push(Issue::new(format!("/double_points/{k}/components"), "references an absent component"));
            }
        }
    }
    let (spheres, rp2, bands) = catalogs?;
    let (good_group, torus_summand) = flags?;
    Some(ProblemInstance {
        group: group?,
        w_m: w_m?,
        good_group,
        components: components?,
        surface: surface?,
        double_points: double_points?,
        whitney: whitney?,
        spheres,
        rp2,
        bands,
        torus_summand,
    })
}

fn read_group(r: &mut Reader, v: &Value) -> Option<AmbientGroup> {
    let kind = v.get("kind").and_then(|k| k.as_str());
    match kind {
        Some("finite") => {
            let obj = r.object(v, "/group", &["kind", "table"])?;
            let rows = r.array(obj.get("table"), "/group/table")?;
            let mut table = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let ptr = format!("/group/table/{i}");
                let cells = r.array(Some(row), &ptr)?;
                let vals: Option<Vec<usize>> =
                    cells.iter().enumerate().map(|(j, c)| r.index(Some(c), &join(&ptr, j))).collect();
                table.push(vals?);
            }
            match make_finite_group(table) {
                Ok(g) => Some(g),
                Err(e) => r.fail("/group/table", e.to_string()),
            }
        }
        Some("abelian") => {
            let obj = r.object(v, "/group", &["kind", "factors"])?;
            let arr = r.array(obj.get("factors"), "/group/factors")?;
            let fs: Option<Vec<u64>> = arr
                .iter()
                .enumerate()
                .map(|(i, x)| r.index(Some(x), &format!("/group/factors/{i}")).map(|x| x as u64))
                .collect();
            Some(AmbientGroup::FGAbelian(AbelianGroup::new(fs?)))
        }
        _ => r.fail("/group/kind", "expected \"finite\" or \"abelian\""),
    }
}

fn read_character(r: &mut Reader, group: Option<&AmbientGroup>, v: &Value) -> Option<Character> {
    let obj = r.object(v, "/characters", &["w_m"])?;
    let arr = r.array(obj.get("w_m"), "/characters/w_m")?;
    let vals: Option<Vec<i64>> = arr
        .iter()
        .enumerate()
        .map(|(i, x)| r.sign(Some(x), &format!("/characters/w_m/{i}")).map(i64::from))
        .collect();
    let vals = vals?;
    match Character::new(group?, vals) {
        Ok(c) => Some(c),
        Err(e) => r.fail("/characters/w_m", e.to_string()),
    }
}

fn read_components(r: &mut Reader, group: Option<&AmbientGroup>, v: &Value) -> Option<Vec<ComponentData>> {
    let arr = r.array(Some(v), "/components")?;
    let mut out = Vec::new();
    let mut ok = true;
    for (i, c) in arr.iter().enumerate() {
        let ptr = format!("/components/{i}");
        let Some(obj) = r.object(c, &ptr, &["subgroup", "has_alg_dual", "dual_framed", "w2", "euler"]) else {
            ok = false;
            continue;
        };
        let gens_ptr = join(&ptr, "subgroup");
        let mut gens = Vec::new();
        if let Some(list) = r.array(obj.get("subgroup"), &gens_ptr) {
            for (k, g) in list.iter().enumerate() {
                let gp = join(&gens_ptr, k);
                let Some(go) = r.object(g, &gp, &["elem", "sign"]) else { continue };
                let e = r.elem(group, go.get("elem"), &join(&gp, "elem"));
                let s = r.sign(go.get("sign"), &join(&gp, "sign"));
                if let (Some(e), Some(s)) = (e, s) {
                    gens.push((e, s));
                }
            }
        }
        let has_alg_dual = r.boolean(obj.get("has_alg_dual"), &join(&ptr, "has_alg_dual"));
        let dual_framed = r.boolean(obj.get("dual_framed"), &join(&ptr, "dual_framed"));
        let w2 = match r.nullable(obj.get("w2")) {
            Some(Some(x)) => r.bit(Some(x), &join(&ptr, "w2")).map(Some),
            Some(None) => Some(None),
            None => None,
        };
        let euler = match r.nullable(obj.get("euler")) {
            Some(Some(x)) => r.int(Some(x), &join(&ptr, "euler")).map(Some),
            Some(None) => Some(None),
            None => None,
        };
        let subgroup = group.and_then(|g| match subgroup_closure(g, &gens) {
            Ok(s) => Some(s),
            Err(e) => r.fail(&gens_ptr, e.to_string()),
        });
        match (subgroup, has_alg_dual, dual_framed, w2, euler) {
            (Some(subgroup), Some(has_alg_dual), Some(dual_framed), Some(w2), Some(euler)) => {
                out.push(ComponentData { subgroup, has_alg_dual, dual_framed, w2, euler })
            }
            _ => ok = false,
        }
    }
    ok.then_some(out)
}

fn read_surface(r: &mut Reader, v: &Value) -> Option<SurfaceModel> {
    let obj = r.object(v, "/surface", &["components"])?;
    let arr = r.array(obj.get("components"), "/surface/components")?;
    let mut comps = Vec::new();
    let mut ok = true;
    for (i, c) in arr.iter().enumerate() {
        let ptr = format!("/surface/components/{i}");
        let Some(o) = r.object(c, &ptr, &["genus", "orientable", "boundary"]) else {
            ok = false;
            continue;
        };
        let genus = r.index(o.get("genus"), &join(&ptr, "genus"));
        let orientable = r.boolean(o.get("orientable"), &join(&ptr, "orientable"));
        let boundary = r.index(o.get("boundary"), &join(&ptr, "boundary"));
        match (genus, orientable, boundary) {
            (Some(genus), Some(orientable), Some(boundary)) => {
                comps.push(SurfaceComponent { genus, orientable, boundary })
            }
            _ => ok = false,
        }
    }
    ok.then(|| SurfaceModel::new(comps))
}

fn read_points(r: &mut Reader, group: Option<&AmbientGroup>, v: &Value) -> Option<Vec<DoublePoint>> {
    let arr = r.array(Some(v), "/double_points")?;
    let mut out = Vec::new();
    let mut ok = true;
    for (k, p) in arr.iter().enumerate() {
        let ptr = format!("/double_points/{k}");
        let Some(o) = r.object(p, &ptr, &["id", "components", "sign", "eta"]) else {
            ok = false;
            continue;
        };
        let id = r.index(o.get("id"), &join(&ptr, "id"));
        let comps = read_pair(r, o.get("components"), &join(&ptr, "components"));
        let sign = r.sign(o.get("sign"), &join(&ptr, "sign"));
        let eta = r.elem(group, o.get("eta"), &join(&ptr, "eta"));
        match (id, comps, sign, eta) {
            (Some(id), Some(components), Some(sign), Some(eta)) => out.push(DoublePoint { id, components, sign, eta }),
            _ => ok = false,
        }
    }
    ok.then_some(out)
}

fn read_pair(r: &mut Reader, v: Option<&Value>, ptr: &str) -> Option<(usize, usize)> {
    let arr = r.array(v, ptr)?;
    if arr.len() != 2 {
        return r.fail(ptr, "expected two entries");
    }
    let a = r.index(arr.first(), &join(ptr, 0));
    let b = r.index(arr.get(1), &join(ptr, 1));
    Some((a?, b?))
}

fn read_whitney(r: &mut Reader, v: &Value) -> Option<WhitneyCollection> {
    let ptr = "/whitney_collection";
    let obj = r.object(v, ptr, &["kind", "discs", "boundary_matrix"])?;
    let kind = match r.string(obj.get("kind"), &join(ptr, "kind")) {
        Some("convenient") => Some(CollectionKind::Convenient),
        Some("weak") => Some(CollectionKind::Weak),
        Some(_) => r.fail(&join(ptr, "kind"), "expected \"convenient\" or \"weak\""),
        None => None,
    };
    let mut discs = Vec::new();
    let mut ok = true;
    if let Some(arr) = r.array(obj.get("discs"), &join(ptr, "discs")) {
        for (k, d) in arr.iter().enumerate() {
            let dp = format!("{ptr}/discs/{k}");
            let Some(o) = r.object(d, &dp, &["id", "points", "interior", "mu_boundary", "e"]) else {
                ok = false;
                continue;
            };
            let id = r.index(o.get("id"), &join(&dp, "id"));
            let points = read_pair(r, o.get("points"), &join(&dp, "points"));
            let interior = r.array(o.get("interior"), &join(&dp, "interior")).and_then(|a| {
                a.iter()
                    .enumerate()
                    .map(|(i, x)| r.index(Some(x), &format!("{dp}/interior/{i}")).map(|x| x as u64))
                    .collect::<Option<Vec<u64>>>()
            });
            let mu_boundary = r.bit(o.get("mu_boundary"), &join(&dp, "mu_boundary"));
            let e = r.int(o.get("e"), &join(&dp, "e"));
            match (id, points, interior, mu_boundary, e) {
                (Some(id), Some(points), Some(interior), Some(mu_boundary), Some(e)) => {
                    discs.push(WhitneyDisc { id, points, interior, mu_boundary, e })
                }
                _ => ok = false,
            }
        }
    } else {
        ok = false;
    }
    let bp = format!("{ptr}/boundary_matrix");
    let boundary = r.array(obj.get("boundary_matrix"), &bp).and_then(|rows| {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                let rp = join(&bp, i);
                r.array(Some(row), &rp).and_then(|cells| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(j, c)| r.index(Some(c), &join(&rp, j)).map(|x| x as u64))
                        .collect::<Option<Vec<u64>>>()
                })
            })
            .collect::<Option<Vec<Vec<u64>>>>()
    });
    if !ok {
        return None;
    }
    Some(WhitneyCollection { kind: kind?, discs, boundary: boundary? })
}

type Catalogs = (Vec<(u8, u8)>, Vec<(u8, u8)>, BandCatalog);

fn read_catalogs(r: &mut Reader, v: &Value) -> Option<Catalogs> {
    let obj = r.object(v, "/catalogs", &["spheres", "rp2", "bands"])?;
    let spheres = read_dot_list(r, obj.get("spheres"), "/catalogs/spheres", ["f_dot_a", "a_dot_a"]);
    let rp2 = read_dot_list(r, obj.get("rp2"), "/catalogs/rp2", ["f_dot_r", "r_dot_r"]);
    let bands = obj.get("bands").and_then(|b| read_bands(r, b));
    Some((spheres?, rp2?, bands?))
}

fn read_dot_list(r: &mut Reader, v: Option<&Value>, ptr: &str, keys: [&str; 2]) -> Option<Vec<(u8, u8)>> {
    let arr = r.array(v, ptr)?;
    let mut out = Vec::new();
    let mut ok = true;
    for (i, x) in arr.iter().enumerate() {
        let p = join(ptr, i);
        let Some(o) = r.object(x, &p, &keys) else {
            ok = false;
            continue;
        };
        let a = r.bit(o.get(keys[0]), &join(&p, keys[0]));
        let b = r.bit(o.get(keys[1]), &join(&p, keys[1]));
        match (a, b) {
            (Some(a), Some(b)) => out.push((a, b)),
            _ => ok = false,
        }
    }
    ok.then_some(out)
}

const RECORD_KEYS: &[&str] =
    &["id", "kind", "class", "boundary", "core_w1", "mu_boundary", "boundary_arcs", "interior", "e"];

fn read_bands(r: &mut Reader, v: &Value) -> Option<BandCatalog> {
    let ptr = "/catalogs/bands";
    let obj = r.object(v, ptr, &["rel_dim", "records"])?;
    let class_dim = r.index(obj.get("rel_dim"), &join(ptr, "rel_dim"));
    let arr = r.array(obj.get("records"), &join(ptr, "records"))?;
    let mut records = Vec::new();
    let mut ok = true;
    for (k, x) in arr.iter().enumerate() {
        let p = format!("{ptr}/records/{k}");
        match read_record(r, x, &p) {
            Some(rec) => records.push(rec),
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    Some(BandCatalog { class_dim: class_dim?, records })
}

fn read_record(r: &mut Reader, v: &Value, p: &str) -> Option<BandRecord> {
    let o = r.object(v, p, RECORD_KEYS)?;
    let id = r.string(o.get("id"), &join(p, "id")).map(str::to_owned);
    let kind = match r.string(o.get("kind"), &join(p, "kind")) {
        Some("annulus") => Some(BandKind::Annulus),
        Some("moebius") => Some(BandKind::Moebius),
        Some("surface") => Some(BandKind::Surface),
        Some(_) => r.fail(&join(p, "kind"), "expected \"annulus\", \"moebius\" or \"surface\""),
        None => None,
    };
    let class = r.bits(o.get("class"), &join(p, "class"));
    let mut classes = Vec::new();
    let mut comps = Vec::new();
    let mut w1s = Vec::new();
    let mut ok = true;
    let bp = join(p, "boundary");
    if let Some(arr) = r.array(o.get("boundary"), &bp) {
        for (i, b) in arr.iter().enumerate() {
            let cp = join(&bp, i);
            let Some(bo) = r.object(b, &cp, &["component", "class", "w1"]) else {
                ok = false;
                continue;
            };
            let c = r.index(bo.get("component"), &join(&cp, "component"));
            let cl = r.bits(bo.get("class"), &join(&cp, "class"));
            let w = r.bit(bo.get("w1"), &join(&cp, "w1"));
            match (c, cl, w) {
                (Some(c), Some(cl), Some(w)) => {
                    comps.push(c);
                    classes.push(cl);
                    w1s.push(w);
                }
                _ => ok = false,
            }
        }
    } else {
        ok = false;
    }
    let core_w1 = r.bit(o.get("core_w1"), &join(p, "core_w1"));
    let mu_boundary = r.bit(o.get("mu_boundary"), &join(p, "mu_boundary"));
    let boundary_arcs = r.bit(o.get("boundary_arcs"), &join(p, "boundary_arcs"));
    let interior = r.bit(o.get("interior"), &join(p, "interior"));
    let euler = r.bit(o.get("e"), &join(p, "e"));
    if !ok {
        return None;
    }
    Some(BandRecord {
        id: id?,
        kind: kind?,
        class: class?,
        boundary_classes: classes,
        boundary_components: comps,
        boundary_w1: w1s,
        core_w1: core_w1?,
        mu_boundary: mu_boundary?,
        boundary_arcs: boundary_arcs?,
        interior: interior?,
        euler: euler?,
    })
}

fn read_flags(r: &mut Reader, v: &Value) -> Option<(bool, Vec<usize>)> {
    let obj = r.object(v, "/flags", &["good_group", "torus_summand"])?;
    let good = r.boolean(obj.get("good_group"), "/flags/good_group");
    let ts = r.array(obj.get("torus_summand"), "/flags/torus_summand").and_then(|a| {
        a.iter()
            .enumerate()
            .map(|(i, x)| r.index(Some(x), &format!("/flags/torus_summand/{i}")))
            .collect::<Option<Vec<usize>>>()
    });
    Some((good?, ts?))
}

fn elem_json(e: &GroupElem) -> Value {
    match e {
        GroupElem::Index(i) => json!(i),
        GroupElem::Tuple(v) => json!(v),
    }
}

/// Encodes an instance in the file format.
pub fn encode_instance(inst: &ProblemInstance) -> Value {
    let group = match &inst.group {
        AmbientGroup::FiniteTable(g) => json!({"kind": "finite", "table": g.table()}),
        AmbientGroup::FGAbelian(a) => json!({"kind": "abelian", "factors": a.factors()}),
    };
    let components: Vec<Value> = inst
        .components
        .iter()
        .map(|c| {
            let gens: Vec<Value> =
                c.subgroup.generators().iter().map(|(e, s)| json!({"elem": elem_json(e), "sign": s})).collect();
            json!({
                "subgroup": gens,
                "has_alg_dual": c.has_alg_dual,
                "dual_framed": c.dual_framed,
                "w2": c.w2,
                "euler": c.euler,
            })
        })
        .collect();
    let surface: Vec<Value> = inst
        .surface
        .components
        .iter()
        .map(|c| json!({"genus": c.genus, "orientable": c.orientable, "boundary": c.boundary}))
        .collect();
    let points: Vec<Value> = inst
        .double_points
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "components": [p.components.0, p.components.1],
                "sign": p.sign,
                "eta": elem_json(&p.eta),
            })
        })
        .collect();
    let whitney = inst.whitney.as_ref().map(|w| {
        let discs: Vec<Value> = w
            .discs
            .iter()
            .map(|d| {
                json!({
                    "id": d.id,
                    "points": [d.points.0, d.points.1],
                    "interior": d.interior,
                    "mu_boundary": d.mu_boundary,
                    "e": d.e,
                })
            })
            .collect();
        let kind = match w.kind {
            CollectionKind::Convenient => "convenient",
            CollectionKind::Weak => "weak",
        };
        json!({"kind": kind, "discs": discs, "boundary_matrix": w.boundary})
    });
    let records: Vec<Value> = inst
        .bands
        .records
        .iter()
        .map(|b| {
            let kind = match b.kind {
                BandKind::Annulus => "annulus",
                BandKind::Moebius => "moebius",
                BandKind::Surface => "surface",
            };
            let boundary: Vec<Value> = (0..b.boundary_classes.len())
                .map(|i| {
                    json!({
                        "component": b.boundary_components[i],
                        "class": b.boundary_classes[i],
                        "w1": b.boundary_w1[i],
                    })
                })
                .collect();
            json!({
                "id": b.id,
                "kind": kind,
                "class": b.class,
                "boundary": boundary,
                "core_w1": b.core_w1,
                "mu_boundary": b.mu_boundary,
                "boundary_arcs": b.boundary_arcs,
                "interior": b.interior,
                "e": b.euler,
            })
        })
        .collect();
    let spheres: Vec<Value> = inst.spheres.iter().map(|&(a, b)| json!({"f_dot_a": a, "a_dot_a": b})).collect();
    let rp2: Vec<Value> = inst.rp2.iter().map(|&(a, b)| json!({"f_dot_r": a, "r_dot_r": b})).collect();
    json!({
        "version": INSTANCE_VERSION,
        "group": group,
        "characters": {"w_m": inst.w_m.values()},
        "components": components,
        "surface": {"components": surface},
        "double_points": points,
        "whitney_collection": whitney,
        "catalogs": {
            "spheres": spheres,
            "rp2": rp2,
            "bands": {"rel_dim": inst.bands.class_dim, "records": records},
        },
        "flags": {"good_group": inst.good_group, "torus_summand": inst.torus_summand},
    })
}
