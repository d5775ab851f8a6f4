//! Line-oriented text format for groups, homomorphisms and actions.
//!
//! ```text
//! group <name> <n>
//! <n lines of n indices>          # row a, column b holds a*b
//! hom <name> <source> <target>
//! <one line of |source| indices>
//! action <name> <actor> <acted>
//! <|actor| lines of |acted| indices>
//! ```
//!
//! `#` starts a comment. Blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::action::Action;
use crate::group::{builtin_group, direct_product, klein4, quaternion8, FiniteGroup, GroupKind};
use crate::hom::Homomorphism;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: validation failed: {cause}")]
    Validation { line: usize, cause: crate::Error },
    #[error("line {line}: duplicate {kind} name {name:?}")]
    DuplicateName { line: usize, kind: &'static str, name: String },
    #[error("unknown {kind} {name:?}")]
    Unresolved { kind: &'static str, name: String },
}

impl IoError {
    /// 1 for validation failures, 2 for syntax errors, 3 for unresolved names.
    pub fn exit_code(&self) -> i32 {
        match self {
            IoError::Validation { .. } | IoError::DuplicateName { .. } => 1,
            IoError::Syntax { .. } => 2,
            IoError::Unresolved { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedHom {
    pub source: String,
    pub target: String,
    pub hom: Homomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAction {
    pub actor: String,
    pub acted: String,
    pub action: Action,
}

/// Named groups, homomorphisms and actions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub homs: BTreeMap<String, NamedHom>,
    pub actions: BTreeMap<String, NamedAction>,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next non-blank line with comments stripped, tokenized.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            self.last = i + 1;
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }

    fn indices(&mut self, expected: usize) -> Result<(usize, Vec<usize>), IoError> {
        let (line, toks) = self.next_tokens().ok_or_else(|| IoError::Syntax {
            line: self.last + 1,
            message: format!("expected a line of {expected} indices, found end of input"),
        })?;
        if toks.len() != expected {
            return Err(IoError::Syntax {
                line,
                message: format!("expected {expected} indices, found {}", toks.len()),
            });
        }
        let vals = toks
            .iter()
            .map(|t| {
                t.parse::<usize>().map_err(|_| IoError::Syntax {
                    line,
                    message: format!("{t:?} is not an index"),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok((line, vals))
    }
}

fn header<'a>(line: usize, toks: &[&'a str], arity: usize) -> Result<(&'a str, Vec<&'a str>), IoError> {
    if toks.len() != arity + 2 {
        return Err(IoError::Syntax {
            line,
            message: format!("{} header takes {} fields", toks[0], arity + 1),
        });
    }
    Ok((toks[1], toks[2..].to_vec()))
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty() && self.homs.is_empty() && self.actions.is_empty()
    }

    /// Parses `text` into a fresh workspace.
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut w = Workspace::new();
        w.parse_into(text, None)?;
        Ok(w)
    }

    /// Adds the objects in `text`. Group references that are not yet
    /// defined are looked up in `fallback` and copied in.
    pub fn parse_into(&mut self, text: &str, fallback: Option<&Workspace>) -> Result<(), IoError> {
        let mut lines = Lines::new(text);
        while let Some((line, toks)) = lines.next_tokens() {
            match toks[0] {
                "group" => {
                    let (name, rest) = header(line, &toks, 1)?;
                    let n: usize = rest[0].parse().map_err(|_| IoError::Syntax {
                        line,
                        message: format!("{:?} is not an order", rest[0]),
                    })?;
                    if n == 0 {
                        return Err(IoError::Syntax { line, message: "group order must be positive".into() });
                    }
                    let mut rows = Vec::with_capacity(n);
                    for _ in 0..n {
                        rows.push(lines.indices(n)?.1);
                    }
                    self.check_fresh(line, "group", name, self.groups.contains_key(name))?;
                    let g = FiniteGroup::validate(&rows)
                        .map_err(|cause| IoError::Validation { line, cause })?
                        .with_label(name);
                    self.groups.insert(name.to_string(), g);
                }
                "hom" => {
                    let (name, rest) = header(line, &toks, 2)?;
                    let src = self.group_ref(line, rest[0], fallback)?;
                    let dst = self.group_ref(line, rest[1], fallback)?;
                    let (_, map) = lines.indices(src.order())?;
                    self.check_fresh(line, "hom", name, self.homs.contains_key(name))?;
                    let hom = Homomorphism::new(&src, &dst, map)
                        .map_err(|cause| IoError::Validation { line, cause })?;
                    self.homs.insert(
                        name.to_string(),
                        NamedHom { source: rest[0].into(), target: rest[1].into(), hom },
                    );
                }
                "action" => {
                    let (name, rest) = header(line, &toks, 2)?;
                    let actor = self.group_ref(line, rest[0], fallback)?;
                    let acted = self.group_ref(line, rest[1], fallback)?;
                    let mut table = Vec::with_capacity(actor.order());
                    for _ in 0..actor.order() {
                        table.push(lines.indices(acted.order())?.1);
                    }
                    self.check_fresh(line, "action", name, self.actions.contains_key(name))?;
                    let action = Action::new(&actor, &acted, table)
                        .map_err(|cause| IoError::Validation { line, cause })?;
                    self.actions.insert(
                        name.to_string(),
                        NamedAction { actor: rest[0].into(), acted: rest[1].into(), action },
                    );
                }
                other => {
                    return Err(IoError::Syntax { line, message: format!("unknown keyword {other:?}") })
                }
            }
        }
        Ok(())
    }

    fn check_fresh(&self, line: usize, kind: &'static str, name: &str, taken: bool) -> Result<(), IoError> {
        if taken {
            return Err(IoError::DuplicateName { line, kind, name: name.into() });
        }
        Ok(())
    }

    fn group_ref(&mut self, line: usize, name: &str, fallback: Option<&Workspace>) -> Result<FiniteGroup, IoError> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        let found = fallback.and_then(|f| f.groups.get(name)).cloned();
        match found {
            Some(g) => {
                self.groups.insert(name.to_string(), g.clone());
                Ok(g)
            }
            None => Err(IoError::Unresolved { kind: "group", name: format!("{name} (line {line})") }),
        }
    }

    pub fn add_group(&mut self, name: &str, g: &FiniteGroup) {
        self.groups.insert(name.to_string(), g.with_label(name));
    }

    /// Adds a homomorphism between groups already present under the given names.
    pub fn add_hom(&mut self, name: &str, source: &str, target: &str, hom: Homomorphism) {
        self.homs.insert(name.to_string(), NamedHom { source: source.into(), target: target.into(), hom });
    }

    pub fn add_action(&mut self, name: &str, actor: &str, acted: &str, action: Action) {
        self.actions.insert(name.to_string(), NamedAction { actor: actor.into(), acted: acted.into(), action });
    }

    /// Canonical text: groups, then homomorphisms, then actions, each by name.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let row = |out: &mut String, vals: &mut dyn Iterator<Item = usize>| {
            let strs: Vec<String> = vals.map(|v| v.to_string()).collect();
            out.push_str(&strs.join(" "));
            out.push('\n');
        };
        for (name, g) in &self.groups {
            let _ = writeln!(out, "group {name} {}", g.order());
            for a in g.elements() {
                row(&mut out, &mut g.row(a));
            }
        }
        for (name, h) in &self.homs {
            let _ = writeln!(out, "hom {name} {} {}", h.source, h.target);
            row(&mut out, &mut h.hom.map().iter().copied());
        }
        for (name, a) in &self.actions {
            let _ = writeln!(out, "action {name} {} {}", a.actor, a.acted);
            for t in a.action.table() {
                row(&mut out, &mut t.iter().copied());
            }
        }
        out
    }

    /// A group by name, falling back to `catalog`.
    pub fn resolve_group(&self, name: &str, catalog: &Workspace) -> Result<FiniteGroup, IoError> {
        self.groups
            .get(name)
            .or_else(|| catalog.groups.get(name))
            .cloned()
            .ok_or_else(|| IoError::Unresolved { kind: "group", name: name.into() })
    }

    /// A homomorphism by name, or one of `id:G` and `zero:G:H`.
    pub fn resolve_hom(&self, name: &str, catalog: &Workspace) -> Result<NamedHom, IoError> {
        if let Some(h) = self.homs.get(name).or_else(|| catalog.homs.get(name)) {
            return Ok(h.clone());
        }
        let parts: Vec<&str> = name.split(':').collect();
        let (source, target, hom) = match parts.as_slice() {
            ["id", g] => (*g, *g, Homomorphism::identity(&self.resolve_group(g, catalog)?)),
            ["zero", g, h] => (
                *g,
                *h,
                Homomorphism::zero(&self.resolve_group(g, catalog)?, &self.resolve_group(h, catalog)?),
            ),
            _ => return Err(IoError::Unresolved { kind: "hom", name: name.into() }),
        };
        Ok(NamedHom { source: source.into(), target: target.into(), hom })
    }

    /// An action by name, or one of `conj:G` and `trivial:B:X`.
    pub fn resolve_action(&self, name: &str, catalog: &Workspace) -> Result<NamedAction, IoError> {
        if let Some(a) = self.actions.get(name).or_else(|| catalog.actions.get(name)) {
            return Ok(a.clone());
        }
        let parts: Vec<&str> = name.split(':').collect();
        let (actor, acted, action) = match parts.as_slice() {
            ["conj", g] => (*g, *g, Action::conjugation(&self.resolve_group(g, catalog)?)),
            ["trivial", b, x] => (
                *b,
                *x,
                Action::trivial(&self.resolve_group(b, catalog)?, &self.resolve_group(x, catalog)?),
            ),
            _ => return Err(IoError::Unresolved { kind: "action", name: name.into() }),
        };
        Ok(NamedAction { actor: actor.into(), acted: acted.into(), action })
    }
}

/// Parses `text` into a fresh workspace.
pub fn parse(text: &str) -> Result<Workspace, IoError> {
    Workspace::parse(text)
}

pub fn serialize(w: &Workspace) -> String {
    w.serialize()
}

/// The built-in groups: `Z1`..`Z12`, `klein4`, `D3`..`D6`, `S3`, `S4`, `Q8`, `Z2xZ4`.
/// Groups above the current size cap are left out.
pub fn catalog() -> Workspace {
    let mut w = Workspace::new();
    let mut add = |name: &str, g: crate::Result<FiniteGroup>| {
        if let Ok(g) = g {
            w.add_group(name, &g);
        }
    };
    for n in 1..=12 {
        add(&format!("Z{n}"), builtin_group(GroupKind::Cyclic, n));
    }
    for n in 3..=6 {
        add(&format!("D{n}"), builtin_group(GroupKind::Dihedral, n));
    }
    add("S3", builtin_group(GroupKind::Symmetric, 3));
    add("S4", builtin_group(GroupKind::Symmetric, 4));
    add("klein4", klein4());
    add("Q8", quaternion8());
    let z2xz4 = builtin_group(GroupKind::Cyclic, 2)
        .and_then(|z2| Ok(direct_product(&z2, &builtin_group(GroupKind::Cyclic, 4)?)?.group));
    add("Z2xZ4", z2xz4);
    w
}
