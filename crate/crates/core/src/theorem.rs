//! Theorem tags and checklist items shared by the additive and block reports.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::GinvError;
use crate::matrix::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Lem21,
    Thm23,
    Cor24,
    Thm25,
    Cor26,
    Cor27,
    Lem31,
    Thm32,
    Cor33,
    Thm35,
    Cor36,
    Thm41,
    Cor42,
    Cor43,
    Cor44,
    Thm45,
    Cor46,
    Thm47,
    Cor48,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::Lem21,
        TheoremId::Thm23,
        TheoremId::Cor24,
        TheoremId::Thm25,
        TheoremId::Cor26,
        TheoremId::Cor27,
        TheoremId::Lem31,
        TheoremId::Thm32,
        TheoremId::Cor33,
        TheoremId::Thm35,
        TheoremId::Cor36,
        TheoremId::Thm41,
        TheoremId::Cor42,
        TheoremId::Cor43,
        TheoremId::Cor44,
        TheoremId::Thm45,
        TheoremId::Cor46,
        TheoremId::Thm47,
        TheoremId::Cor48,
    ];

    /// Statements about `a + b`, in report order.
    pub const SUM: [TheoremId; 9] = [
        TheoremId::Thm23,
        TheoremId::Cor24,
        TheoremId::Thm25,
        TheoremId::Cor26,
        TheoremId::Cor27,
        TheoremId::Thm32,
        TheoremId::Cor33,
        TheoremId::Thm35,
        TheoremId::Cor36,
    ];

    /// Statements about the block matrix `[[A, B], [C, D]]`.
    pub const BLOCK: [TheoremId; 8] = [
        TheoremId::Thm41,
        TheoremId::Cor42,
        TheoremId::Cor43,
        TheoremId::Cor44,
        TheoremId::Thm45,
        TheoremId::Cor46,
        TheoremId::Thm47,
        TheoremId::Cor48,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::Lem21 => "lem2.1",
            TheoremId::Thm23 => "thm2.3",
            TheoremId::Cor24 => "cor2.4",
            TheoremId::Thm25 => "thm2.5",
            TheoremId::Cor26 => "cor2.6",
            TheoremId::Cor27 => "cor2.7",
            TheoremId::Lem31 => "lem3.1",
            TheoremId::Thm32 => "thm3.2",
            TheoremId::Cor33 => "cor3.3",
            TheoremId::Thm35 => "thm3.5",
            TheoremId::Cor36 => "cor3.6",
            TheoremId::Thm41 => "thm4.1",
            TheoremId::Cor42 => "cor4.2",
            TheoremId::Cor43 => "cor4.3",
            TheoremId::Cor44 => "cor4.4",
            TheoremId::Thm45 => "thm4.5",
            TheoremId::Cor46 => "cor4.6",
            TheoremId::Thm47 => "thm4.7",
            TheoremId::Cor48 => "cor4.8",
        }
    }

    /// True for statements that only assert existence and have no conditions.
    pub fn is_sufficiency_only(self) -> bool {
        matches!(
            self,
            TheoremId::Lem31
                | TheoremId::Thm45
                | TheoremId::Cor46
                | TheoremId::Thm47
                | TheoremId::Cor48
        )
    }

    pub fn is_block(self) -> bool {
        TheoremId::BLOCK.contains(&self)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = GinvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or(GinvError::UnknownTag(s))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// One hypothesis or condition.
///
/// For `x = 0` items `residual` is `|x|_F` and `scale` the magnitude it is
/// judged against. For `x ∈ R^#` items `residual` is the largest axiom
/// residual of the computed inverse when the item passes, and the rank drop
/// `rank(x) - rank(x^2)` when it fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub scale: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Name with whitespace, braces and backslashes removed, `π` spelled
    /// `pi` and `∈` spelled `in`; used to match user-supplied names.
    pub fn key(&self) -> String {
        normalize_name(&self.name)
    }
}

pub fn normalize_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for ch in name.chars() {
        match ch {
            c if c.is_whitespace() => {}
            '{' | '}' | '\\' => {}
            'π' => out.push_str("pi"),
            '∈' => out.push_str("in"),
            '²' => out.push_str("^2"),
            c => out.push(c),
        }
    }
    out.replace("^#", "#")
        .replace("^pi", "pi")
        .replace("^2", "2")
}

/// Named intermediate matrix in a report trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Named {
    pub name: String,
    pub value: CMatrix,
}

pub(crate) fn find<'a>(checks: &'a [Check], name: &str) -> Option<&'a Check> {
    let key = normalize_name(name);
    checks.iter().find(|c| c.key() == key)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.tag().parse::<TheoremId>().unwrap(), t);
            assert_eq!(t.to_string(), t.tag());
        }
        assert_eq!("THM2.3".parse::<TheoremId>().unwrap(), TheoremId::Thm23);
        assert!(matches!(
            "thm9.9".parse::<TheoremId>(),
            Err(GinvError::UnknownTag(_))
        ));
    }

    #[test]
    fn names_normalize() {
        assert_eq!(normalize_name("aba^π = 0"), "abapi=0");
        assert_eq!(normalize_name("aba^{\\pi}=0"), "abapi=0");
        assert_eq!(normalize_name("a ∈ R^{\\#}"), "ainR#");
        assert_eq!(normalize_name("a ∈ R^#"), "ainR#");
        assert_eq!(normalize_name("a²b = aba"), "a2b=aba");
        assert_eq!(normalize_name("a^2b=aba"), "a2b=aba");
    }
}
