use std::collections::BTreeMap;

use super::family::{FanFamily, FanKind};
use crate::error::{Error, Result};

type Builder = fn(u64) -> Result<FanKind>;

struct Entry {
    description: &'static str,
    build: Builder,
}

/// Fan families addressable by name, e.g. from the command line.
pub struct FamilyRegistry {
    entries: BTreeMap<&'static str, Entry>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, description: &'static str, build: Builder) {
        self.entries.insert(name, Entry { description, build });
    }

    /// Resolves `name` with degree parameter `e` (ignored by families that
    /// do not depend on it).
    pub fn kind(&self, name: &str, e: u64) -> Result<FanKind> {
        let entry = self.entries.get(name).ok_or_else(|| Error::Unknown {
            what: "fan family",
            name: name.to_string(),
        })?;
        (entry.build)(e)
    }

    pub fn get(&self, name: &str, e: u64) -> Result<Box<dyn FanFamily>> {
        self.kind(name, e).map(|k| k.family())
    }

    pub fn names(&self) -> impl Iterator<Item = (&'static str, &'static str)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v.description))
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = FamilyRegistry::empty();
        r.register("mumford", "degeneration of the Neron 1-gon in Z^2", |_| {
            Ok(FanKind::MumfordNeron)
        });
        r.register("hopf", "Hopf-type smoothing fan in Z^3", |e| {
            if e == 0 {
                return Err(Error::InvalidDatum(
                    "hopf family requires degree e >= 1".into(),
                ));
            }
            Ok(FanKind::HopfSmoothing { e })
        });
        r.register("elliptic", "elliptic ruled smoothing fan in Z^3", |_| {
            Ok(FanKind::EllipticSmoothing)
        });
        r.register(
            "rational",
            "rational (honeycomb) smoothing fan in Z^4",
            |e| Ok(FanKind::RationalSmoothing { e }),
        );
        r
    }
}
