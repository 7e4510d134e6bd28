//! Embedded catalogs of relations and identity instances, plus loading of
//! additional relation files.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp::HalfExp;
use crate::identity::{ThetaProduct, Thm1Params, Thm2Params};
use crate::repcount::RelationStatement;
use crate::theta::{theta_special, ThetaArg};

const RELATIONS_JSON: &str = include_str!("../data/relations.json");
const IDENTITIES_JSON: &str = include_str!("../data/identities.json");

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationCatalog {
    pub relations: Vec<RelationStatement>,
}

impl RelationCatalog {
    pub fn builtin() -> Self {
        Self::from_json(RELATIONS_JSON).expect("embedded relation catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let relations: Vec<RelationStatement> =
            serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let cat = RelationCatalog { relations };
        cat.check_ids()?;
        Ok(cat)
    }

    /// Appends the relations of a JSON file; ids must stay unique.
    pub fn extend_from_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        let extra = Self::from_json(&text)?;
        self.relations.extend(extra.relations);
        self.check_ids()
    }

    fn check_ids(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for r in &self.relations {
            if !seen.insert(r.id.as_str()) {
                return Err(Error::Catalog(format!("duplicate relation id `{}`", r.id)));
            }
            if let Some((m, res)) = r.residue {
                if m < 1 || res < 0 || res >= m {
                    return Err(Error::Catalog(format!("relation `{}` has a bad residue class", r.id)));
                }
            }
        }
        Ok(())
    }

    /// The relation with this id, or every relation in the group `id.*`.
    pub fn select(&self, id: &str) -> Vec<&RelationStatement> {
        let prefix = format!("{id}.");
        self.relations.iter().filter(|r| r.id == id || r.id.starts_with(&prefix)).collect()
    }
}

/// A decomposition instance used in a proof, with the constant by which
/// its left side exceeds the left side of the explicit identity it yields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm1Entry {
    pub id: String,
    pub params: Thm1Params,
    pub lhs_constant: i64,
    pub explicit: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Entry {
    pub id: String,
    pub params: Thm2Params,
    pub citation: String,
}

/// A product written with named functions, e.g. `4 q^1 psi(q^2) phi(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedProduct {
    pub coeff: i64,
    /// Whole power of q.
    pub q: i64,
    pub factors: Vec<String>,
}

impl NamedProduct {
    pub fn to_product(&self) -> Result<ThetaProduct> {
        let factors = self.factors.iter().map(|f| parse_named_factor(f)).collect::<Result<_>>()?;
        Ok(ThetaProduct::new(self.coeff, HalfExp::whole(self.q), factors))
    }
}

/// Parses `psi(q)`, `phi(q^3)`, `X(q^12)` and the like.
pub fn parse_named_factor(s: &str) -> Result<ThetaArg> {
    let bad = || Error::Catalog(format!("cannot parse factor `{s}`"));
    let (name, rest) = s.split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let scale = match inner {
        "q" => 1,
        _ => inner.strip_prefix("q^").and_then(|x| x.parse().ok()).ok_or_else(bad)?,
    };
    theta_special(name.parse()?, scale)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitEntry {
    pub id: String,
    pub lhs: Vec<NamedProduct>,
    pub rhs: Vec<NamedProduct>,
    pub citation: String,
}

impl ExplicitEntry {
    pub fn sides(&self) -> Result<(Vec<ThetaProduct>, Vec<ThetaProduct>)> {
        let conv = |v: &[NamedProduct]| v.iter().map(NamedProduct::to_product).collect::<Result<Vec<_>>>();
        Ok((conv(&self.lhs)?, conv(&self.rhs)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCatalog {
    pub thm1: Vec<Thm1Entry>,
    pub thm2: Vec<Thm2Entry>,
    pub explicit: Vec<ExplicitEntry>,
}

impl IdentityCatalog {
    pub fn builtin() -> Self {
        serde_json::from_str(IDENTITIES_JSON).expect("embedded identity catalog is valid")
    }

    pub fn explicit(&self, id: &str) -> Option<&ExplicitEntry> {
        self.explicit.iter().find(|e| e.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcount::Status;

    #[test]
    fn builtin_catalogs_load() {
        let rel = RelationCatalog::builtin();
        assert!(rel.relations.len() > 100);
        assert!(rel.relations.iter().any(|r| r.status == Status::Pinned));
        let ids = IdentityCatalog::builtin();
        for e in &ids.thm1 {
            assert!(ids.explicit(&e.explicit).is_some(), "{}", e.id);
            e.params.validate().unwrap();
        }
        for e in &ids.explicit {
            e.sides().unwrap();
        }
    }

    #[test]
    fn select_by_group() {
        let rel = RelationCatalog::builtin();
        let athm1 = rel.select("Athm1");
        assert!(athm1.iter().all(|r| r.id.starts_with("Athm1.")));
        assert!(athm1.len() >= 5);
        assert_eq!(rel.select("Athm1.odd").len(), 1);
        assert!(rel.select("nope").is_empty());
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        let one = r#"{"id":"x","residue":null,"lhs":{"form":"r","coeffs":[1,1,1],"alpha":1,"beta":0,"scalar":1},"rhs":[],"citation":"","status":"empirical"}"#;
        assert!(RelationCatalog::from_json(&format!("[{one}]")).is_ok());
        assert!(matches!(RelationCatalog::from_json(&format!("[{one},{one}]")), Err(Error::Catalog(_))));
        assert!(RelationCatalog::from_json("{").is_err());
        assert!(RelationCatalog::from_json(&format!("[{}]", one.replace("\"r\"", "\"zz\""))).is_err());
    }

    #[test]
    fn named_factors() {
        assert_eq!(parse_named_factor("psi(q^2)").unwrap(), theta_special(crate::SpecialTheta::Psi, 2).unwrap());
        assert_eq!(parse_named_factor("phi(q)").unwrap(), theta_special(crate::SpecialTheta::Phi, 1).unwrap());
        assert!(parse_named_factor("phi(x)").is_err());
        assert!(parse_named_factor("zeta(q)").is_err());
    }
}
