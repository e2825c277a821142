//! TOML system definitions. A document either spells out the group, graph,
//! action and cocycle, or names a builder under `[construct]`:
//!
//! ```toml
//! schema_version = 1
//! [construct]
//! builder = "epk"
//! a = 2
//! b = 1
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cocycle::{Cocycle, CocycleError, GraphAction, SetAction};
use crate::constructions::{
    bouquet_system, dynamical_system_graph, endomorphism_system, katsura_line_graph, katsura_system,
    lift_system_to_strings, ConstructionError, EpkSystem, IntMatrix, System,
};
use crate::graph::{Graph, GraphError};
use crate::group::{Elem, Group, GroupError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("schema error: {0}")]
    Toml(String),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("missing section [{0}]")]
    Missing(&'static str),
    #[error("give either [construct] or explicit sections, not both")]
    Mixed,
    #[error("{0}")]
    Name(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<Builder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Group>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub name: String,
    pub range: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// Images by name, in vertex and edge order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRow {
    pub element: String,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

/// One row per generator, or per element of a finite group. Omitted means
/// the trivial action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub rows: Vec<ActionRow>,
}

/// φ(g, e) in edge order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleRow {
    pub element: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    pub rows: Vec<CocycleRow>,
}

/// Named builders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum Builder {
    /// (ℤ_a, σ_{a,b}, φ_{a,b}) on the bouquet.
    Epk { a: i64, b: i64 },
    /// The same cocycle on the strings graph.
    EpkStrings { a: i64, b: i64 },
    /// ℤ_n translating itself with φ(g, x) = g, on the strings graph.
    TranslationStrings { n: u64 },
    /// Katsura's line graph with ℤ_a × {1..len} edges and the EPK blocks of B.
    Katsura { a: usize, len: usize, b: Vec<Vec<i64>> },
    /// G = ℤ on E_σ through τ with generating function ξ.
    Dynamical { sigma: Vec<usize>, tau: Vec<usize>, xi: Vec<i64> },
    /// G = ℤⁿ on coset representatives of ℤⁿ/ρℤⁿ, twisted by τ.
    Endomorphism { rho: Vec<Vec<i64>>, tau: Vec<Vec<i64>> },
}

impl Builder {
    pub fn build(&self) -> Result<System, SchemaError> {
        Ok(match self {
            Builder::Epk { a, b } => EpkSystem::new(*a, *b)?.system()?,
            Builder::EpkStrings { a, b } => lift_system_to_strings(&EpkSystem::new(*a, *b)?.cocycle())?,
            Builder::TranslationStrings { n } => {
                if *n == 0 {
                    return Err(ConstructionError::Parameters("n must be positive".into()).into());
                }
                let g = Group::cyclic(*n);
                let one = g.parse_elem("1")?;
                let shift = (0..*n as usize).map(|x| (x + 1) % *n as usize).collect();
                let action = Arc::new(SetAction::from_generators(g, *n as usize, vec![(one, shift)])?);
                lift_system_to_strings(&Cocycle::trivial(action))?
            }
            Builder::Katsura { a, len, b } => katsura_system(Arc::new(katsura_line_graph(*a, *len)?), b)?,
            Builder::Dynamical { sigma, tau, xi } => dynamical_system_graph(sigma, tau, xi)?.system.ok_or_else(|| {
                ConstructionError::Constraint("ξ(x) − 1 is not in the return set at some point".into())
            })?,
            Builder::Endomorphism { rho, tau } => {
                let (_, phi) = endomorphism_system(&IntMatrix::new(rho.clone())?, &IntMatrix::new(tau.clone())?, None)?;
                bouquet_system(&phi, None)?
            }
        })
    }

    /// The EPK parameters when this builder is one.
    pub fn epk(&self) -> Option<(i64, i64)> {
        match self {
            Builder::Epk { a, b } | Builder::EpkStrings { a, b } => Some((*a, *b)),
            _ => None,
        }
    }
}

/// A parsed but not yet validated system.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub action: GraphAction,
    pub cocycle: Cocycle,
    pub builder: Option<Builder>,
}

impl Loaded {
    /// Runs the cocycle identity and vertex condition checks.
    pub fn system(&self) -> Result<System, ConstructionError> {
        System::new(self.action.clone(), self.cocycle.clone())
    }
}

fn names_to_indices(names: &[String], lookup: impl Fn(&str) -> Result<usize, GraphError>) -> Result<Vec<usize>, SchemaError> {
    names.iter().map(|n| lookup(n).map_err(SchemaError::from)).collect()
}

fn uses_table(group: &Group, rows: usize) -> bool {
    group.order().is_some_and(|o| o == rows as u64) && rows > group.generators().len()
}

impl SystemSpec {
    pub fn parse(text: &str) -> Result<SystemSpec, SchemaError> {
        let spec: SystemSpec = toml::from_str(text).map_err(|e| SchemaError::Toml(e.to_string()))?;
        if spec.schema_version != SCHEMA_VERSION {
            return Err(SchemaError::Version(spec.schema_version));
        }
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("system specs serialize")
    }

    pub fn from_builder(builder: Builder) -> SystemSpec {
        SystemSpec {
            schema_version: SCHEMA_VERSION,
            construct: Some(builder),
            group: None,
            graph: None,
            action: None,
            cocycle: None,
        }
    }

    /// The explicit form, with one row per generator.
    pub fn from_system(sys: &System) -> SystemSpec {
        let graph = sys.graph();
        let va = sys.action.vertex_action();
        let ea = sys.action.edge_action();
        let rows = sys
            .group()
            .generators()
            .into_iter()
            .map(|g| ActionRow {
                element: g.to_string(),
                vertices: (0..graph.num_vertices()).map(|v| graph.vertex_name(va.act(&g, v)).to_string()).collect(),
                edges: (0..graph.num_edges()).map(|e| graph.edge_name(ea.act(&g, e)).to_string()).collect(),
            })
            .collect();
        let cocycle = sys
            .cocycle
            .generator_values()
            .into_iter()
            .map(|(g, vals)| CocycleRow {
                element: g.to_string(),
                values: vals.iter().map(Elem::to_string).collect(),
            })
            .collect();
        SystemSpec {
            schema_version: SCHEMA_VERSION,
            construct: None,
            group: Some(sys.group().clone()),
            graph: Some(GraphSpec {
                vertices: graph.vertex_names().to_vec(),
                edges: (0..graph.num_edges())
                    .map(|e| EdgeSpec {
                        name: graph.edge_name(e).into(),
                        range: graph.vertex_name(graph.range(e)).into(),
                        source: graph.vertex_name(graph.source(e)).into(),
                    })
                    .collect(),
            }),
            action: Some(ActionSpec { rows }),
            cocycle: Some(CocycleSpec { rows: cocycle }),
        }
    }

    pub fn load(&self) -> Result<Loaded, SchemaError> {
        let explicit = self.group.is_some() || self.graph.is_some() || self.action.is_some() || self.cocycle.is_some();
        if let Some(b) = &self.construct {
            if explicit {
                return Err(SchemaError::Mixed);
            }
            let sys = b.build()?;
            return Ok(Loaded {
                action: sys.action,
                cocycle: sys.cocycle,
                builder: Some(b.clone()),
            });
        }
        let group = self.group.clone().ok_or(SchemaError::Missing("group"))?;
        let gs = self.graph.as_ref().ok_or(SchemaError::Missing("graph"))?;
        let graph = Arc::new(Graph::new(
            gs.vertices.clone(),
            gs.edges.iter().map(|e| (e.name.clone(), e.range.clone(), e.source.clone())).collect(),
        )?);
        let (nv, ne) = (graph.num_vertices(), graph.num_edges());
        let action = match &self.action {
            None => GraphAction::trivial(graph.clone(), group.clone())?,
            Some(a) => {
                let mut vrows = Vec::new();
                let mut erows = Vec::new();
                for row in &a.rows {
                    let g = group.parse_elem(&row.element)?;
                    vrows.push((g.clone(), names_to_indices(&row.vertices, |n| graph.vertex_index(n))?));
                    erows.push((g, names_to_indices(&row.edges, |n| graph.edge_index(n))?));
                }
                let (v, e) = if uses_table(&group, a.rows.len()) {
                    (SetAction::from_table(group.clone(), nv, vrows)?, SetAction::from_table(group.clone(), ne, erows)?)
                } else {
                    (
                        SetAction::from_generators(group.clone(), nv, vrows)?,
                        SetAction::from_generators(group.clone(), ne, erows)?,
                    )
                };
                GraphAction::new(graph.clone(), Arc::new(v), Arc::new(e))?
            }
        };
        let cs = self.cocycle.as_ref().ok_or(SchemaError::Missing("cocycle"))?;
        let rows = cs
            .rows
            .iter()
            .map(|row| {
                let g = group.parse_elem(&row.element)?;
                let vals = row.values.iter().map(|v| group.parse_elem(v)).collect::<Result<Vec<_>, _>>()?;
                Ok((g, vals))
            })
            .collect::<Result<Vec<_>, SchemaError>>()?;
        let edges = action.edge_action().clone();
        let cocycle = if uses_table(&group, rows.len()) {
            Cocycle::from_table(edges, group.clone(), rows)?
        } else {
            Cocycle::from_generators(edges, group.clone(), rows)?
        };
        Ok(Loaded {
            action,
            cocycle,
            builder: None,
        })
    }
}

/// 64-bit FNV-1a of the explicit TOML form, as 16 hex digits.
pub fn fingerprint(sys: &System) -> String {
    let text = SystemSpec::from_system(sys).to_toml();
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn same_system(a: &System, b: &System) -> bool {
        let g = a.group();
        if g != b.group() || a.graph().vertex_names() != b.graph().vertex_names() {
            return false;
        }
        let (nv, ne) = (a.graph().num_vertices(), a.graph().num_edges());
        g.ball(4).iter().all(|h| {
            (0..nv).all(|v| a.action.vertex_action().act(h, v) == b.action.vertex_action().act(h, v))
                && (0..ne).all(|e| {
                    a.action.edge_action().act(h, e) == b.action.edge_action().act(h, e)
                        && a.cocycle.eval(h, e) == b.cocycle.eval(h, e)
                })
        })
    }

    #[test]
    fn builders_round_trip() {
        let builders = [
            Builder::Epk { a: 2, b: 1 },
            Builder::Epk { a: 4, b: -6 },
            Builder::EpkStrings { a: 3, b: 2 },
            Builder::TranslationStrings { n: 2 },
            Builder::Katsura { a: 2, len: 2, b: vec![vec![0, 1, 0], vec![0, 0, 3], vec![0, 0, 0]] },
            Builder::Dynamical { sigma: vec![0, 1, 2, 3, 4, 5], tau: vec![2, 3, 4, 5, 0, 1], xi: vec![1; 6] },
            Builder::Endomorphism { rho: vec![vec![2, 0], vec![0, 1]], tau: vec![vec![1, 0], vec![0, 1]] },
        ];
        for b in builders {
            let spec = SystemSpec::from_builder(b.clone());
            let text = spec.to_toml();
            let back = SystemSpec::parse(&text).unwrap();
            assert_eq!(back, spec);
            let sys = back.load().unwrap().system().unwrap();
            let explicit = SystemSpec::from_system(&sys).to_toml();
            let again = SystemSpec::parse(&explicit).unwrap().load().unwrap().system().unwrap();
            assert!(same_system(&sys, &again), "{b:?}");
            assert_eq!(fingerprint(&sys), fingerprint(&again));
        }
    }

    #[test]
    fn explicit_finite_table() {
        let text = r#"
schema_version = 1
[group]
kind = "cyclic"
order = 2
[graph]
vertices = ["v"]
edges = [{ name = "a", range = "v", source = "v" }, { name = "b", range = "v", source = "v" }]
[action]
rows = [
  { element = "0", vertices = ["v"], edges = ["a", "b"] },
  { element = "1", vertices = ["v"], edges = ["b", "a"] },
]
[cocycle]
rows = [{ element = "0", values = ["0", "0"] }, { element = "1", values = ["1", "1"] }]
"#;
        let sys = SystemSpec::parse(text).unwrap().load().unwrap().system().unwrap();
        assert_eq!(sys.graph().num_edges(), 2);
        assert_eq!(sys.cocycle.eval(&Elem::Cyclic { modulus: 2, residue: 1u64.into() }, 0).to_string(), "1");
    }

    #[test]
    fn errors() {
        assert!(matches!(SystemSpec::parse("schema_version = ["), Err(SchemaError::Toml(m)) if m.contains("line")));
        assert!(matches!(SystemSpec::parse("schema_version = 9"), Err(SchemaError::Version(9))));
        assert!(matches!(SystemSpec::parse("schema_version = 1\nfoo = 2"), Err(SchemaError::Toml(_))));
        let spec = SystemSpec::parse("schema_version = 1\n[group]\nkind = \"integers\"").unwrap();
        assert!(matches!(spec.load(), Err(SchemaError::Missing("graph"))));
        let bad = "schema_version = 1\n[construct]\nbuilder = \"epk\"\na = 0\nb = 1";
        assert!(SystemSpec::parse(bad).unwrap().load().is_err());
    }
}
