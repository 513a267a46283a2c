//! JSON file formats for spaces, groups, actions, twists and vector fields.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use tcp_core::morse::FiniteField;
use tcp_core::simplicial::{
    builtin, kz1_simplex, Builtin, FiniteGroup, FiniteSimplicialSet, Kz1, Kzm0, Simplex,
    SimplicialGroup, SimplicialSet, TableAction,
};
use tcp_core::zchain::Gen;

use crate::error::{CliError, CliResult};

/// `"id"` for a nondegenerate cell or `{"deg": [j_r, …, j_1], "core": "id"}`.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum SimplexExpr {
    Name(String),
    Full { deg: Vec<u32>, core: String },
}

#[derive(Deserialize, Debug)]
pub struct SpaceFile {
    pub name: String,
    pub simplices: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<SimplexExpr>>,
}

#[derive(Deserialize, Debug)]
pub struct GroupFile {
    #[serde(flatten)]
    pub space: SpaceFile,
    pub unit: BTreeMap<String, SimplexExpr>,
    pub mul: BTreeMap<String, Vec<[SimplexExpr; 3]>>,
    pub inv: BTreeMap<String, Vec<[SimplexExpr; 2]>>,
}

#[derive(Deserialize, Debug)]
pub struct ActionFile {
    /// Per degree: `[y, g, y·g]`.
    pub table: BTreeMap<String, Vec<[SimplexExpr; 3]>>,
}

#[derive(Deserialize, Debug)]
pub struct TwistFile {
    pub map: BTreeMap<String, Value>,
}

#[derive(Deserialize, Debug)]
pub struct FieldFile {
    /// `[source, target]` cell names.
    pub pairs: Vec<[String; 2]>,
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(Path::new(path))
        .map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// Cell names of a finite space.
pub type Names = BTreeMap<String, Gen>;

fn names_of(set: &dyn SimplicialSet) -> Names {
    let mut names = Names::new();
    for n in 0..=set.dim_cap().unwrap_or(0) {
        if let tcp_core::zchain::Basis::Finite(v) = set.cells(n) {
            for g in v.iter() {
                if let Gen::Cell { name, .. } = g {
                    names.insert(name.to_string(), g.clone());
                }
            }
        }
    }
    names
}

pub fn simplex_of(expr: &SimplexExpr, names: &Names) -> CliResult<Simplex> {
    let (deg, core) = match expr {
        SimplexExpr::Name(n) => (Vec::new(), n),
        SimplexExpr::Full { deg, core } => (deg.clone(), core),
    };
    let core = names
        .get(core)
        .ok_or_else(|| CliError::invalid(format!("unknown simplex {core:?}")))?;
    Ok(Simplex::try_from_canonical(deg, core.clone())?)
}

fn dim_key(k: &str) -> CliResult<usize> {
    k.parse()
        .map_err(|_| CliError::invalid(format!("{k:?} is not a dimension")))
}

fn space_from_file(file: &SpaceFile) -> CliResult<(FiniteSimplicialSet, Names)> {
    let mut cells: Vec<Vec<Gen>> = Vec::new();
    let mut names = Names::new();
    for (k, ids) in &file.simplices {
        let n = dim_key(k)?;
        if cells.len() <= n {
            cells.resize(n + 1, Vec::new());
        }
        for id in ids {
            let g = Gen::cell(n, id);
            if names.insert(id.clone(), g.clone()).is_some() {
                return Err(CliError::invalid(format!("simplex {id:?} listed twice")));
            }
            cells[n].push(g);
        }
    }
    let mut faces = BTreeMap::new();
    for (id, list) in &file.faces {
        let g = names
            .get(id)
            .ok_or_else(|| CliError::invalid(format!("faces given for unknown simplex {id:?}")))?;
        let fs = list
            .iter()
            .map(|e| simplex_of(e, &names))
            .collect::<CliResult<Vec<_>>>()?;
        faces.insert(g.clone(), fs);
    }
    let set = FiniteSimplicialSet::new(file.name.clone(), cells, faces)?;
    Ok((set, names))
}

/// A space given on the command line, with cell names when it is finite.
#[derive(Clone)]
pub struct LoadedSpace {
    pub set: Arc<dyn SimplicialSet>,
    pub names: Option<Names>,
}

/// K(Z,1) is cut off at `cap`.
pub fn load_space(spec: &str, cap: usize) -> CliResult<LoadedSpace> {
    if spec.trim() == "kz1" {
        return Ok(LoadedSpace {
            set: Arc::new(Kz1::with_cap(cap)),
            names: None,
        });
    }
    match builtin(spec) {
        Ok(b) => {
            let set = b.as_set();
            let names = match &b {
                Builtin::Set(s) => Some(names_of(s.as_ref())),
                Builtin::Group(_) => None,
            };
            Ok(LoadedSpace { set, names })
        }
        Err(_) => {
            let file: SpaceFile = read_json(spec)?;
            let (set, names) = space_from_file(&file)?;
            Ok(LoadedSpace {
                set: Arc::new(set),
                names: Some(names),
            })
        }
    }
}

/// A structure group and how to read its elements.
#[derive(Clone)]
pub enum LoadedGroup {
    Kz1(Arc<Kz1>),
    Kzm0(Arc<Kzm0>),
    Finite(Arc<FiniteGroup>, Names),
}

impl LoadedGroup {
    pub fn group(&self) -> Arc<dyn SimplicialGroup> {
        match self {
            LoadedGroup::Kz1(g) => g.clone(),
            LoadedGroup::Kzm0(g) => g.clone(),
            LoadedGroup::Finite(g, _) => g.clone(),
        }
    }

    pub fn names(&self) -> Option<&Names> {
        match self {
            LoadedGroup::Finite(_, n) => Some(n),
            _ => None,
        }
    }

    /// An element of dimension `dim`: an integer for K(Z/m,0), a tuple for
    /// K(Z,1), a simplex expression for a group file.
    pub fn element(&self, v: &Value, dim: usize) -> CliResult<Simplex> {
        let bad = || CliError::invalid(format!("{v} is not an element of dimension {dim}"));
        let s = match self {
            LoadedGroup::Kzm0(g) => g.element(v.as_i64().ok_or_else(bad)?, dim),
            LoadedGroup::Kz1(_) => {
                let a = v
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(bad))
                    .collect::<CliResult<Vec<i64>>>()?;
                kz1_simplex(&a)
            }
            LoadedGroup::Finite(_, names) => {
                let e: SimplexExpr = serde_json::from_value(v.clone()).map_err(|_| bad())?;
                simplex_of(&e, names)?
            }
        };
        if s.dim() != dim {
            return Err(bad());
        }
        Ok(s)
    }
}

pub fn load_group(spec: &str, cap: usize) -> CliResult<LoadedGroup> {
    let spec = spec.trim();
    if spec == "kz1" {
        return Ok(LoadedGroup::Kz1(Arc::new(Kz1::with_cap(cap))));
    }
    if let Some(m) = spec.strip_prefix("kzm0(").and_then(|r| r.strip_suffix(')')) {
        let m: u64 = m
            .trim()
            .parse()
            .map_err(|_| CliError::invalid(format!("bad modulus in {spec}")))?;
        if m == 0 {
            return Err(CliError::invalid("modulus must be positive"));
        }
        return Ok(LoadedGroup::Kzm0(Arc::new(Kzm0::new(m))));
    }
    let file: GroupFile = read_json(spec)?;
    let (set, names) = space_from_file(&file.space)?;
    let mut units = Vec::new();
    for n in 0..file.unit.len() {
        let e = file
            .unit
            .get(&n.to_string())
            .ok_or_else(|| CliError::invalid(format!("no unit given in dimension {n}")))?;
        units.push(simplex_of(e, &names)?);
    }
    let mut mul = BTreeMap::new();
    for rows in file.mul.values() {
        for [a, b, c] in rows {
            let key = (simplex_of(a, &names)?, simplex_of(b, &names)?);
            mul.insert(key, simplex_of(c, &names)?);
        }
    }
    let mut inv = BTreeMap::new();
    for rows in file.inv.values() {
        for [a, b] in rows {
            inv.insert(simplex_of(a, &names)?, simplex_of(b, &names)?);
        }
    }
    let g = FiniteGroup::new(set, units, mul, inv)?;
    Ok(LoadedGroup::Finite(Arc::new(g), names))
}

/// An action table over named fiber and group simplices.
pub fn load_action(path: &str, fiber: &Names, group: &Names) -> CliResult<TableAction> {
    let file: ActionFile = read_json(path)?;
    let mut table = BTreeMap::new();
    for rows in file.table.values() {
        for [y, g, r] in rows {
            let key = (simplex_of(y, fiber)?, simplex_of(g, group)?);
            table.insert(key, simplex_of(r, fiber)?);
        }
    }
    Ok(TableAction::new(table))
}

/// `τ` on named nondegenerate base simplices.
pub fn load_twist(
    path: &str,
    base: &Names,
    group: &LoadedGroup,
) -> CliResult<BTreeMap<Gen, Simplex>> {
    let file: TwistFile = read_json(path)?;
    let mut out = BTreeMap::new();
    for (id, v) in &file.map {
        let b = base.get(id).ok_or_else(|| {
            CliError::invalid(format!("twist given on unknown base simplex {id:?}"))
        })?;
        if b.degree() == 0 {
            return Err(CliError::invalid(format!(
                "twist given on the vertex {id:?}"
            )));
        }
        out.insert(b.clone(), group.element(v, b.degree() - 1)?);
    }
    Ok(out)
}

pub fn load_field(path: &str, x: &dyn SimplicialSet, names: &Names) -> CliResult<FiniteField> {
    let file: FieldFile = read_json(path)?;
    let pairs = file
        .pairs
        .iter()
        .map(|[s, t]| {
            let get = |n: &String| {
                names
                    .get(n)
                    .cloned()
                    .ok_or_else(|| CliError::invalid(format!("unknown simplex {n:?}")))
            };
            Ok((get(s)?, get(t)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(FiniteField::new(x, &pairs)?)
}
