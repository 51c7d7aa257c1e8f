//! Instance text, the inverse of `MonoidDescriptor`'s `Display`.
//!
//! ```text
//! nm:3,5                      fg:Z2:(1,0);(0,1)
//! mq:2/3                      m0
//! localization:2              conductive:Z:a=3
//! conductive:Z2:a=(1,0)       lexcone:Z2:positive-leading
//! product(mq:2/3;nm:1)        unionshift(m0;ge:1)
//! unionshift(localization:2;loc:3>=4/3)
//! alphabeta:2/3               nearly-alpha
//! ```

use crate::error::{Error, Result};
use crate::models::{LexConeRule, MonoidDescriptor, TailRule};
use crate::ordered::{GroupId, Rational};

fn perr(s: impl Into<String>) -> Error {
    Error::Parse(s.into())
}

fn group(s: &str) -> Result<GroupId> {
    s.parse::<GroupId>().map_err(|e| perr(format!("group `{s}`: {e}")))
}

fn rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| perr(format!("rational `{s}`: {e}")))
}

/// Splits `a;b` at the single top-level `;`.
fn split_pair(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    let mut at = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ';' if depth == 0 => {
                if at.is_some() {
                    return Err(perr(format!("more than one top-level `;` in `{s}`")));
                }
                at = Some(i);
            }
            _ => {}
        }
    }
    let i = at.ok_or_else(|| perr(format!("expected `left;right` in `{s}`")))?;
    Ok((&s[..i], &s[i + 1..]))
}

fn wrapped<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

/// Parses instance text into a validated descriptor.
pub fn parse_instance(text: &str) -> Result<MonoidDescriptor> {
    let s = text.trim();
    let invalid = |e: Error| match e {
        Error::Parse(_) => e,
        other => perr(format!("`{s}`: {other}")),
    };
    match s {
        "m0" | "M0" => return Ok(MonoidDescriptor::PrimeReciprocal),
        "nearly-alpha" => return Ok(MonoidDescriptor::NearlyAtomicAlpha),
        "almost-not-nearly" => return Ok(MonoidDescriptor::almost_not_nearly()),
        "quasi-not-almost" => return Ok(MonoidDescriptor::quasi_not_almost()),
        _ => {}
    }
    if let Some(inner) = wrapped(s, "product") {
        let (l, r) = split_pair(inner)?;
        return MonoidDescriptor::product(parse_instance(l)?, parse_instance(r)?).map_err(invalid);
    }
    if let Some(inner) = wrapped(s, "unionshift") {
        let (b, t) = split_pair(inner)?;
        let base = parse_instance(b)?;
        let tail = if let Some(bound) = t.strip_prefix("ge:") {
            TailRule::GroupAtLeast { bound: rational(bound)? }
        } else if let Some(rest) = t.strip_prefix("loc:") {
            let (p, bound) = rest.split_once(">=").ok_or_else(|| perr(format!("expected `loc:p>=bound`, got `{t}`")))?;
            let prime = p.trim().parse().map_err(|_| perr(format!("prime `{p}`")))?;
            TailRule::LocalizationAtLeast { prime, bound: rational(bound)? }
        } else {
            return Err(perr(format!("unknown tail rule `{t}`")));
        };
        let m = MonoidDescriptor::UnionShift { base: Box::new(base), tail };
        m.validate().map_err(invalid)?;
        return Ok(m);
    }
    let (head, rest) = s.split_once(':').ok_or_else(|| perr(format!("unrecognized instance `{s}`")))?;
    match head {
        "nm" => {
            let gens = rest
                .split(',')
                .map(|g| g.trim().parse::<i64>().map_err(|_| perr(format!("generator `{g}`"))))
                .collect::<Result<Vec<_>>>()?;
            MonoidDescriptor::numerical(&gens).map_err(invalid)
        }
        "fg" => {
            let (g, gens) = rest.split_once(':').ok_or_else(|| perr("expected `fg:G:g1;g2;...`"))?;
            let g = group(g)?;
            let gens = gens
                .split(';')
                .map(|x| g.parse_element(x).map_err(|e| perr(format!("generator `{x}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            MonoidDescriptor::finite_generated(gens).map_err(invalid)
        }
        "mq" => MonoidDescriptor::geometric(rational(rest)?).map_err(invalid),
        "alphabeta" => MonoidDescriptor::alpha_beta(rational(rest)?).map_err(invalid),
        "localization" => {
            let prime = rest.trim().parse().map_err(|_| perr(format!("prime `{rest}`")))?;
            let m = MonoidDescriptor::Localization { prime };
            m.validate().map_err(invalid)?;
            Ok(m)
        }
        "conductive" => {
            let (g, a) = rest.split_once(":a=").ok_or_else(|| perr("expected `conductive:G:a=x`"))?;
            let g = group(g)?;
            let a = g.parse_element(a).map_err(|e| perr(format!("a = `{a}`: {e}")))?;
            MonoidDescriptor::conductive(a).map_err(invalid)
        }
        "lexcone" => {
            let (g, r) = rest.split_once(':').ok_or_else(|| perr("expected `lexcone:G:rule`"))?;
            let rule = match r {
                "positive-leading" => LexConeRule::PositiveLeading,
                "nonnegative" => LexConeRule::NonnegativeCone,
                _ => return Err(perr(format!("unknown cone rule `{r}`"))),
            };
            MonoidDescriptor::lex_cone(group(g)?, rule).map_err(invalid)
        }
        _ => Err(perr(format!("unknown family `{head}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::GroupElement;

    #[test]
    fn round_trips() {
        for s in [
            "nm:3,5",
            "mq:2/3",
            "m0",
            "localization:2",
            "conductive:Z:a=3",
            "conductive:Z2:a=(1,0)",
            "conductive:Q:a=1/2",
            "lexcone:Z2:positive-leading",
            "lexcone:Q2:positive-leading",
            "lexcone:Z2:nonnegative",
            "fg:Z2:(1,0);(0,1)",
            "product(mq:2/3;nm:1)",
            "unionshift(m0;ge:1)",
            "unionshift(localization:2;loc:3>=4/3)",
            "alphabeta:2/3",
            "nearly-alpha",
        ] {
            let m = parse_instance(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(m.to_string(), s);
            assert_eq!(parse_instance(&m.to_string()).unwrap(), m);
        }
    }

    #[test]
    fn aliases() {
        assert_eq!(parse_instance("almost-not-nearly").unwrap(), MonoidDescriptor::almost_not_nearly());
        assert_eq!(
            parse_instance("conductive:Z:a=3").unwrap(),
            MonoidDescriptor::conductive(GroupElement::integer(3)).unwrap()
        );
    }

    #[test]
    fn rejects() {
        for s in ["", "nm:", "nm:3,x", "mq:2", "mq:1/2", "conductive:Z:3", "product(m0)", "zz:1", "lexcone:Z2:odd"] {
            assert!(matches!(parse_instance(s), Err(Error::Parse(_))), "{s}");
        }
    }
}
