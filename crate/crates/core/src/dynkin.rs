//! Simply-laced Dynkin types and their textual form (`E8`, `A1 x A2`, `2A2`,
//! `-` for the empty type).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

/// One irreducible component. Construct via [`Component::new`], which
/// normalizes `D2` and `D3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    /// Returns the component(s) equivalent to `family` of `rank`:
    /// `D2 = 2A1`, `D3 = A3`.
    pub fn new(family: Family, rank: usize) -> Result<Vec<Component>> {
        let c = |family, rank| Component { family, rank };
        match (family, rank) {
            (_, 0) => invalid("component rank must be positive"),
            (Family::A, r) => Ok(vec![c(Family::A, r)]),
            (Family::D, 1) => invalid("D1 is not a root system"),
            (Family::D, 2) => Ok(vec![c(Family::A, 1), c(Family::A, 1)]),
            (Family::D, 3) => Ok(vec![c(Family::A, 3)]),
            (Family::D, r) => Ok(vec![c(Family::D, r)]),
            (Family::E, r @ 6..=8) => Ok(vec![c(Family::E, r)]),
            (Family::E, r) => invalid(format!("E{r} is not a finite root system")),
        }
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A finite multiset of components, kept sorted (family, then rank).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DynkinType {
    components: Vec<Component>,
}

impl DynkinType {
    pub fn empty() -> Self {
        DynkinType::default()
    }

    pub fn from_components(mut components: Vec<Component>) -> Self {
        components.sort();
        DynkinType { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components.iter().map(Component::root_count).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(Component::weyl_order).product()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("-");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mult = self.components[i..].iter().take_while(|&&x| x == c).count();
            parts.push(if mult > 1 { format!("{mult}{c}") } else { c.to_string() });
            i += mult;
        }
        f.write_str(&parts.join(" x "))
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() || s == "∅" {
            return Ok(DynkinType::empty());
        }
        let mut components = Vec::new();
        for term in s.split(['x', '×']) {
            let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
            let letter = term
                .find(|c: char| c.is_ascii_alphabetic())
                .ok_or_else(|| Error::InvalidInput(format!("no family letter in '{term}'")))?;
            let mult: usize = match &term[..letter] {
                "" => 1,
                m => m.parse().map_err(|_| Error::InvalidInput(format!("bad multiplicity in '{term}'")))?,
            };
            let family = match &term[letter..letter + 1] {
                "A" => Family::A,
                "D" => Family::D,
                "E" => Family::E,
                other => return invalid(format!("unknown family '{other}' in '{term}'")),
            };
            let rank: usize =
                term[letter + 1..].parse().map_err(|_| Error::InvalidInput(format!("bad rank in '{term}'")))?;
            for _ in 0..mult {
                components.extend(Component::new(family, rank)?);
            }
        }
        Ok(DynkinType::from_components(components))
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
