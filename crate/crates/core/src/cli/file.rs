//! Line-oriented system files.
//!
//! ```text
//! # comment
//! vars: x1, x2
//! f:
//!   x2
//!   0
//! g:
//!   0
//!   1
//! omega[0]:
//!   d(x2)
//! phi[0]:
//!   x1
//!   x2
//! ```
//!
//! `omega[i]` holds either one `d(P)` line or one coefficient per variable
//! and may be repeated. `phi[i]` is written in the coordinates of iteration
//! `i` with one component per coordinate still active. A `map:` section
//! (with optional `codomain:` names) describes a polynomial map instead of a
//! system; `f_alt:` is an alternative drift kept for comparison.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{parse_poly, parse_ratfn, AlgebraError, Poly, VarContext};
use crate::geometry::{KForm, PolyMap, VecField};
use crate::linearizer::{iteration_context, ControlSystem, MapHints, OmegaHints};

/// A malformed input file, with a 1-based position when one is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.column {
            Some(c) => write!(f, "line {}, column {}: {}", self.line, c, self.message),
            None if self.line > 0 => write!(f, "line {}: {}", self.line, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for FileError {}

fn at(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        column: None,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub vars: VarContext,
    pub f: Option<Vec<Poly>>,
    pub g: Option<Vec<Poly>>,
    pub omega: BTreeMap<usize, Vec<KForm>>,
    pub phi: BTreeMap<usize, Vec<Poly>>,
    pub codomain: Option<VarContext>,
    pub map: Option<Vec<Poly>>,
    pub f_alt: Option<Vec<Poly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Vars,
    Codomain,
    F,
    G,
    Omega(usize),
    Phi(usize),
    Map,
    FAlt,
}

fn section_name(head: &str) -> Option<Section> {
    let indexed = |prefix: &str| {
        head.strip_prefix(prefix)?
            .strip_prefix('[')?
            .strip_suffix(']')?
            .parse::<usize>()
            .ok()
    };
    Some(match head {
        "vars" => Section::Vars,
        "codomain" => Section::Codomain,
        "f" => Section::F,
        "g" => Section::G,
        "map" => Section::Map,
        "f_alt" => Section::FAlt,
        _ => {
            if let Some(i) = indexed("omega") {
                Section::Omega(i)
            } else if let Some(i) = indexed("phi") {
                Section::Phi(i)
            } else {
                return None;
            }
        }
    })
}

/// One expression with its position in the file.
#[derive(Clone, Debug)]
struct Entry {
    text: String,
    line: usize,
    column: usize,
}

fn relocate(e: AlgebraError, entry: &Entry) -> FileError {
    match e {
        AlgebraError::Parse { line, column, message } => FileError {
            line: entry.line + line - 1,
            column: Some(if line == 1 { entry.column + column - 1 } else { column }),
            message,
        },
        other => FileError {
            line: entry.line,
            column: Some(entry.column),
            message: other.to_string(),
        },
    }
}

fn names(entry: &Entry) -> Result<VarContext, FileError> {
    let list: Vec<&str> = entry.text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    VarContext::new(list).map_err(|e| at(entry.line, e.to_string()))
}

fn polys(entries: &[Entry], ctx: &VarContext) -> Result<Vec<Poly>, FileError> {
    entries
        .iter()
        .map(|e| parse_poly(&e.text, ctx).map_err(|err| relocate(err, e)))
        .collect()
}

fn one_form(entries: &[Entry], ctx: &VarContext, header: usize) -> Result<KForm, FileError> {
    if let [e] = entries {
        let t = e.text.trim();
        if let Some(inner) = t.strip_prefix("d(").and_then(|s| s.strip_suffix(')')) {
            let shifted = Entry {
                text: inner.to_string(),
                line: e.line,
                column: e.column + 2,
            };
            let p = parse_poly(inner, ctx).map_err(|err| relocate(err, &shifted))?;
            return Ok(KForm::exact(&p));
        }
    }
    if entries.len() != ctx.dim() {
        return Err(at(
            header,
            format!("1-form needs {} coefficients or a single d(P), got {} lines", ctx.dim(), entries.len()),
        ));
    }
    let comps = entries
        .iter()
        .map(|e| parse_ratfn(&e.text, ctx).map_err(|err| relocate(err, e)))
        .collect::<Result<Vec<_>, _>>()?;
    KForm::one_form(ctx, comps).map_err(|e| at(header, e.to_string()))
}

impl SystemFile {
    pub fn parse(src: &str) -> Result<SystemFile, FileError> {
        let mut sections: Vec<(Section, usize, Vec<Entry>)> = Vec::new();
        for (k, raw) in src.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            if let Some((head, rest)) = body.split_once(':') {
                let name = head.trim();
                let section = section_name(name).ok_or_else(|| FileError {
                    line,
                    column: Some(raw.find(name).map_or(1, |i| raw[..i].chars().count() + 1)),
                    message: format!("unknown section `{name}`"),
                })?;
                let mut entries = Vec::new();
                if !rest.trim().is_empty() {
                    let offset = head.len() + 1 + (rest.len() - rest.trim_start().len());
                    entries.push(Entry {
                        text: rest.trim().to_string(),
                        line,
                        column: raw[..offset].chars().count() + 1,
                    });
                }
                sections.push((section, line, entries));
                continue;
            }
            let Some(last) = sections.last_mut() else {
                return Err(at(line, "expression before any section header"));
            };
            let lead = body.len() - body.trim_start().len();
            last.2.push(Entry {
                text: body.trim().to_string(),
                line,
                column: body[..lead].chars().count() + 1,
            });
        }

        let vars = match sections.iter().find(|s| s.0 == Section::Vars) {
            Some((_, line, entries)) => {
                let joined = Entry {
                    text: entries.iter().map(|e| e.text.as_str()).collect::<Vec<_>>().join(","),
                    line: *line,
                    column: 1,
                };
                names(&joined)?
            }
            None => return Err(at(0, "missing `vars:` section")),
        };
        let mut out = SystemFile {
            vars: vars.clone(),
            f: None,
            g: None,
            omega: BTreeMap::new(),
            phi: BTreeMap::new(),
            codomain: None,
            map: None,
            f_alt: None,
        };
        let n = vars.dim();
        let field = |entries: &[Entry], line: usize, what: &str| -> Result<Vec<Poly>, FileError> {
            if entries.len() != n {
                return Err(at(line, format!("`{what}` has {} components, expected {n}", entries.len())));
            }
            polys(entries, &vars)
        };
        let once = |slot: bool, line: usize, what: &str| {
            if slot {
                Err(at(line, format!("duplicate `{what}:` section")))
            } else {
                Ok(())
            }
        };
        for (section, line, entries) in &sections {
            let line = *line;
            match section {
                Section::Vars => {}
                Section::F => {
                    once(out.f.is_some(), line, "f")?;
                    out.f = Some(field(entries, line, "f")?);
                }
                Section::G => {
                    once(out.g.is_some(), line, "g")?;
                    out.g = Some(field(entries, line, "g")?);
                }
                Section::FAlt => {
                    once(out.f_alt.is_some(), line, "f_alt")?;
                    out.f_alt = Some(field(entries, line, "f_alt")?);
                }
                Section::Omega(i) => {
                    let w = one_form(entries, &vars, line)?;
                    out.omega.entry(*i).or_default().push(w);
                }
                Section::Phi(i) => {
                    once(out.phi.contains_key(i), line, &format!("phi[{i}]"))?;
                    let ctx = iteration_context(&vars, *i);
                    if entries.is_empty() || entries.len() + i > n.max(1) {
                        return Err(at(line, format!("`phi[{i}]` has {} components", entries.len())));
                    }
                    out.phi.insert(*i, polys(entries, &ctx)?);
                }
                Section::Codomain => {
                    once(out.codomain.is_some(), line, "codomain")?;
                    let joined = Entry {
                        text: entries.iter().map(|e| e.text.as_str()).collect::<Vec<_>>().join(","),
                        line,
                        column: 1,
                    };
                    let c = names(&joined)?;
                    if c.dim() != n {
                        return Err(at(line, format!("codomain has {} names, expected {n}", c.dim())));
                    }
                    out.codomain = Some(c);
                }
                Section::Map => {
                    once(out.map.is_some(), line, "map")?;
                    out.map = Some(field(entries, line, "map")?);
                }
            }
        }
        Ok(out)
    }

    pub fn system(&self) -> Result<ControlSystem, FileError> {
        let (Some(f), Some(g)) = (&self.f, &self.g) else {
            return Err(at(0, "a system needs both `f:` and `g:` sections"));
        };
        let v = |c: &[Poly]| VecField::from_polys(&self.vars, c.to_vec()).map_err(|e| at(0, e.to_string()));
        ControlSystem::new(v(f)?, v(g)?).map_err(|e| at(0, e.to_string()))
    }

    pub fn alternative_system(&self) -> Result<Option<ControlSystem>, FileError> {
        let Some(alt) = &self.f_alt else {
            return Ok(None);
        };
        let sys = self.system()?;
        let f = VecField::from_polys(&self.vars, alt.clone()).map_err(|e| at(0, e.to_string()))?;
        Ok(Some(ControlSystem::new(f, sys.g().clone()).map_err(|e| at(0, e.to_string()))?))
    }

    pub fn omega_hints(&self) -> OmegaHints {
        let mut h = OmegaHints::none();
        for (&i, ws) in &self.omega {
            for w in ws {
                h.push(i, w.clone());
            }
        }
        h
    }

    pub fn map_hints(&self) -> MapHints {
        let mut h = MapHints::none();
        for (&i, comps) in &self.phi {
            h.set(i, comps.clone());
        }
        h
    }

    pub fn poly_map(&self) -> Result<PolyMap, FileError> {
        let Some(comps) = &self.map else {
            return Err(at(0, "no `map:` section"));
        };
        let codomain = self.codomain.clone().unwrap_or_else(|| iteration_context(&self.vars, 1));
        PolyMap::new(&self.vars, &codomain, comps.clone()).map_err(|e| at(0, e.to_string()))
    }

    /// Canonical text; `parse(to_text())` gives back an equal value.
    pub fn to_text(&self) -> String {
        let mut s = format!("vars: {}\n", self.vars.names().join(", "));
        let block = |s: &mut String, head: &str, items: &[String]| {
            s.push_str(head);
            s.push_str(":\n");
            for it in items {
                s.push_str("  ");
                s.push_str(it);
                s.push('\n');
            }
        };
        let strs = |v: &[Poly]| v.iter().map(Poly::to_string).collect::<Vec<_>>();
        if let Some(f) = &self.f {
            block(&mut s, "f", &strs(f));
        }
        if let Some(g) = &self.g {
            block(&mut s, "g", &strs(g));
        }
        for (i, ws) in &self.omega {
            for w in ws {
                let comps: Vec<String> = w
                    .components()
                    .expect("1-form")
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                block(&mut s, &format!("omega[{i}]"), &comps);
            }
        }
        for (i, comps) in &self.phi {
            block(&mut s, &format!("phi[{i}]"), &strs(comps));
        }
        if let Some(c) = &self.codomain {
            s.push_str(&format!("codomain: {}\n", c.names().join(", ")));
        }
        if let Some(m) = &self.map {
            block(&mut s, "map", &strs(m));
        }
        if let Some(f) = &self.f_alt {
            block(&mut s, "f_alt", &strs(f));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "\
# double integrator
vars: x1, x2
f:
  x2
  0
g:
  0
  1   # input enters here
omega[0]:
  d(x2)
omega[0]:
  0
  1/(x1^2 + 1)
phi[0]:
  x1
  x2
";

    #[test]
    fn parses_sections() {
        let sf = SystemFile::parse(SRC).unwrap();
        assert_eq!(sf.vars.names(), ["x1", "x2"]);
        assert_eq!(sf.omega[&0].len(), 2);
        assert!(sf.system().is_ok());
        assert!(sf.map_hints().at(0).is_some());
    }

    #[test]
    fn round_trip() {
        let sf = SystemFile::parse(SRC).unwrap();
        assert_eq!(SystemFile::parse(&sf.to_text()).unwrap(), sf);
    }

    #[test]
    fn error_positions() {
        let err = SystemFile::parse("vars: x1, x2\nf:\n  x1 +* 2\n  0\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, Some(7)));
        let err = SystemFile::parse("vars: x1\nf:\n  y\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, Some(3)));
        let err = SystemFile::parse("vars: x1\nh:\n").unwrap_err();
        assert!(err.message.contains("unknown section"));
        let err = SystemFile::parse("vars: x1, x2\ng:\n  1\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn map_files() {
        let sf = SystemFile::parse("vars: x1, x2\ncodomain: u, v\nmap:\n  x1 + x2^2\n  x2\n").unwrap();
        let m = sf.poly_map().unwrap();
        assert_eq!(m.codomain().names(), ["u", "v"]);
        assert_eq!(SystemFile::parse(&sf.to_text()).unwrap(), sf);
    }
}
