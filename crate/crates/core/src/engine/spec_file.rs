use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{derived_pool, GameKind, GameSpec, OneMove};
use crate::covers::{AnyCover, CoverClass, CoverFile};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::{SpaceFile, SpaceModel};

impl FromStr for GameKind {
    type Err = Error;

    /// Accepts the plain names plus `G1(A,B)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "Rothberger" => GameKind::Rothberger,
            "Menger" => GameKind::Menger,
            "PointOpen" => GameKind::PointOpen,
            "CompactOpen" => GameKind::CompactOpen,
            "CompactGdelta" => GameKind::CompactGdelta,
            _ => {
                let inner = t
                    .strip_prefix("G1(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Invariant(format!("unknown game kind {t:?}")))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Invariant(format!("malformed G1 parameters in {t:?}")))?;
                let k = GameKind::G1 {
                    a: CoverClass::from_str(a.trim())?,
                    b: CoverClass::from_str(b.trim())?,
                };
                k.validate()?;
                k
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G1Params {
    pub a: CoverClass,
    pub b: CoverClass,
}

/// JSON document for a game: `{kind, g1_params?, space_ref | space,
/// one_pool, horizon}`. `one_pool` is `"derived"` or an explicit list whose
/// entries are points, compacts (point arrays) or covers (`CoverFile`
/// objects or arrays of point arrays).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1_params: Option<G1Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space_ref: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceFile>,
    pub one_pool: serde_json::Value,
    pub horizon: usize,
}

impl GameFile {
    pub fn kind(&self) -> Result<GameKind> {
        match (self.kind.as_str(), self.g1_params) {
            ("G1", Some(p)) => {
                let k = GameKind::G1 { a: p.a, b: p.b };
                k.validate()?;
                Ok(k)
            }
            ("G1", None) => Err(Error::Invariant("G1 game needs g1_params".into())),
            (name, _) => GameKind::from_str(name),
        }
    }

    /// Loads the model (resolving `space_ref` against `base_dir`) and
    /// builds the validated spec.
    pub fn into_spec(self, base_dir: Option<&Path>) -> Result<GameSpec> {
        let kind = self.kind()?;
        let model = match (&self.space, &self.space_ref) {
            (Some(f), _) => f.clone().into_model()?,
            (None, Some(r)) => {
                let p = match base_dir {
                    Some(d) => d.join(r),
                    None => Path::new(r).to_path_buf(),
                };
                crate::space::load_model(&std::fs::read_to_string(p)?)?
            }
            (None, None) => return Err(Error::Invariant("game file needs space or space_ref".into())),
        };
        let model = Arc::new(model);
        let pool = parse_pool(kind, &model, &self.one_pool)?;
        GameSpec::new(kind, model, pool, self.horizon)
    }

    /// Inline form of a spec, with an explicit pool.
    pub fn from_spec(spec: &GameSpec) -> GameFile {
        let (kind, g1_params) = match spec.kind {
            GameKind::G1 { a, b } => ("G1".to_string(), Some(G1Params { a, b })),
            k => (k.name(), None),
        };
        let pool: Vec<serde_json::Value> = spec.one_pool.iter().map(pool_entry_json).collect();
        GameFile {
            kind,
            g1_params,
            space_ref: None,
            space: Some(spec.model.to_file()),
            one_pool: serde_json::Value::Array(pool),
            horizon: spec.horizon,
        }
    }
}

fn pool_entry_json(m: &OneMove) -> serde_json::Value {
    let v = match m {
        OneMove::Cover(c) => serde_json::to_value(CoverFile::from_open(c)),
        OneMove::Gdelta(g) => serde_json::to_value(CoverFile::from_gdelta(g)),
        OneMove::Point(x) => serde_json::to_value(x),
        OneMove::Compact(k) => serde_json::to_value(k),
    };
    v.expect("pool entries serialize")
}

fn parse_pool(kind: GameKind, model: &SpaceModel, v: &serde_json::Value) -> Result<Vec<OneMove>> {
    if v.as_str() == Some("derived") {
        return derived_pool(kind, model);
    }
    let entries = v
        .as_array()
        .ok_or_else(|| Error::Invariant("one_pool must be \"derived\" or a list".into()))?;
    entries.iter().map(|e| parse_entry(kind, e)).collect()
}

fn parse_entry(kind: GameKind, e: &serde_json::Value) -> Result<OneMove> {
    match kind {
        GameKind::PointOpen => Ok(OneMove::Point(serde_json::from_value(e.clone())?)),
        GameKind::CompactOpen | GameKind::CompactGdelta => {
            Ok(OneMove::Compact(serde_json::from_value::<PointSet>(e.clone())?))
        }
        _ => {
            let file: CoverFile = if e.is_array() {
                CoverFile {
                    elements: serde_json::from_value(e.clone())?,
                    factors: None,
                }
            } else {
                serde_json::from_value(e.clone())?
            };
            match (file.into_cover()?, kind.uses_gdelta_covers()) {
                (AnyCover::Open(c), false) => Ok(OneMove::cover(c)),
                (AnyCover::Gdelta(g), true) => Ok(OneMove::gdelta(g)),
                (AnyCover::Open(c), true) => Ok(OneMove::gdelta(crate::covers::GdeltaCover::from_opens(
                    c.elements(),
                )?)),
                (AnyCover::Gdelta(_), false) => {
                    Err(Error::Invariant(format!("{kind} takes plain covers, not Gδ covers")))
                }
            }
        }
    }
}
