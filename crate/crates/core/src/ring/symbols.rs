use std::collections::BTreeMap;

use super::Var;

/// Display names for variables. Ids without an explicit name render as `x<id>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    names: BTreeMap<Var, String>,
    ids: BTreeMap<String, Var>,
}

impl Symbols {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `name` for `id`. Panics if the name is already bound to another id.
    pub fn insert(&mut self, id: Var, name: impl Into<String>) {
        let name = name.into();
        if let Some(&old) = self.ids.get(&name) {
            assert_eq!(old, id, "name {name} already bound to x{old}");
        }
        self.names.insert(id, name.clone());
        self.ids.insert(name, id);
    }

    pub fn name(&self, id: Var) -> String {
        match self.names.get(&id) {
            Some(n) => n.clone(),
            None => format!("x{id}"),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(&id) = self.ids.get(name) {
            return Some(id);
        }
        let digits = name.strip_prefix('x')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return None;
        }
        digits.parse().ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &str)> {
        self.names.iter().map(|(k, v)| (*k, v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn extend(&mut self, other: &Symbols) {
        for (id, name) in other.iter() {
            self.insert(id, name);
        }
    }
}
