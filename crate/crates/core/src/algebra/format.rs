//! Plain-text algebra files.
//!
//! ```text
//! [quiver]
//! vertices = 1 2
//! arrows = a:1->2 b:2->1
//! [relations]
//! a.b
//! b.a - 2*b.a
//! [options]
//! cap = 3 field = fp:32003
//! [meta]
//! tag = {"kind": "rad_square_truncation", ...}
//! ```
//!
//! `#` starts a comment outside `[meta]`. Ids are alphanumeric or `_`.

use crate::error::{Error, Result};
use crate::field::{format_coeff, parse_coeff, Coeff, FieldSpec};
use crate::quiver::Quiver;

use super::{BoundPresentation, ConstructionTag, Relation};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Quiver,
    Relations,
    Options,
    Meta,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `k = v k2 = v2 ...` into key/value-token groups.
fn key_values(line: &str, lineno: usize) -> Result<Vec<(String, Vec<String>)>> {
    let spaced = line.replace('=', " = ");
    let toks: Vec<&str> = spaced.split_whitespace().collect();
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if i + 1 < toks.len() && toks[i + 1] == "=" {
            out.push((toks[i].to_string(), Vec::new()));
            i += 2;
        } else if toks[i] == "=" {
            return Err(err(lineno, "`=` without a key"));
        } else {
            match out.last_mut() {
                Some((_, vals)) => vals.push(toks[i].trim_end_matches(',').to_string()),
                None => return Err(err(lineno, format!("expected `key = value`, found `{}`", toks[i]))),
            }
            i += 1;
        }
    }
    Ok(out)
}

fn parse_arrow(tok: &str, lineno: usize) -> Result<(String, String, String)> {
    let bad = || err(lineno, format!("arrow `{tok}` is not of the form id:source->target"));
    let (id, rest) = tok.split_once(':').ok_or_else(bad)?;
    let (s, t) = rest.split_once("->").ok_or_else(bad)?;
    for part in [id, s, t] {
        if !valid_id(part) {
            return Err(err(lineno, format!("invalid id `{part}` in arrow `{tok}`")));
        }
    }
    Ok((id.to_string(), s.to_string(), t.to_string()))
}

fn parse_relation(line: &str, lineno: usize, quiver: &Quiver) -> Result<Relation> {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pieces: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in compact.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('*') {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        pieces.push(cur);
    }
    let mut terms = Vec::new();
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        let (coef, path) = match body.split_once('*') {
            Some((c, p)) => (parse_coeff(c).map_err(|e| err(lineno, e.to_string()))?, p),
            None => (Coeff::from_integer(1), body),
        };
        if path.is_empty() {
            return Err(err(lineno, format!("term `{piece}` has no path")));
        }
        let arrows = path
            .split('.')
            .map(|id| {
                quiver
                    .arrow_index(id)
                    .ok_or_else(|| err(lineno, format!("unknown arrow `{id}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((coef * Coeff::from_integer(sign), arrows));
    }
    if terms.is_empty() {
        return Err(err(lineno, "empty relation"));
    }
    Ok(Relation { terms })
}

/// Longest path length plus one for an acyclic quiver.
fn acyclic_cap(q: &Quiver) -> Option<usize> {
    let n = q.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| q.in_degree(v)).collect();
    let mut longest = vec![0usize; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for a in q.arrows_from(v) {
            let t = q.arrow(a).target;
            longest[t] = longest[t].max(longest[v] + 1);
            indeg[t] -= 1;
            if indeg[t] == 0 {
                stack.push(t);
            }
        }
    }
    (seen == n).then(|| longest.iter().max().copied().unwrap_or(0) + 1)
}

pub fn parse(text: &str) -> Result<BoundPresentation> {
    let mut section = Section::None;
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut raw_relations: Vec<(usize, String)> = Vec::new();
    let mut cap: Option<usize> = None;
    let mut field = FieldSpec::default();
    let mut tag: Option<ConstructionTag> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('[') {
            section = match trimmed {
                "[quiver]" => Section::Quiver,
                "[relations]" => Section::Relations,
                "[options]" => Section::Options,
                "[meta]" => Section::Meta,
                other => return Err(err(lineno, format!("unknown section `{other}`"))),
            };
            continue;
        }
        if section == Section::Meta {
            let (k, v) = trimmed
                .split_once('=')
                .ok_or_else(|| err(lineno, "expected `tag = <json>`"))?;
            if k.trim() != "tag" {
                return Err(err(lineno, format!("unknown meta key `{}`", k.trim())));
            }
            tag = Some(serde_json::from_str(v.trim()).map_err(|e| err(lineno, format!("bad tag: {e}")))?);
            continue;
        }
        let line = trimmed.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match section {
            Section::None => return Err(err(lineno, "content before the first section")),
            Section::Relations => raw_relations.push((lineno, line.to_string())),
            Section::Quiver => {
                for (key, vals) in key_values(line, lineno)? {
                    match key.as_str() {
                        "vertices" => {
                            for v in &vals {
                                if !valid_id(v) {
                                    return Err(err(lineno, format!("invalid vertex id `{v}`")));
                                }
                            }
                            vertices.get_or_insert((lineno, Vec::new())).1.extend(vals);
                        }
                        "arrows" => {
                            for tok in &vals {
                                arrows.push(parse_arrow(tok, lineno)?);
                            }
                        }
                        other => return Err(err(lineno, format!("unknown quiver key `{other}`"))),
                    }
                }
            }
            Section::Options => {
                for (key, vals) in key_values(line, lineno)? {
                    let [val] = vals.as_slice() else {
                        return Err(err(lineno, format!("`{key}` takes exactly one value")));
                    };
                    match key.as_str() {
                        "cap" => {
                            cap = Some(val.parse().map_err(|_| err(lineno, format!("bad cap `{val}`")))?);
                        }
                        "field" => field = val.parse().map_err(|e: Error| err(lineno, e.to_string()))?,
                        other => return Err(err(lineno, format!("unknown option `{other}`"))),
                    }
                }
            }
            Section::Meta => unreachable!(),
        }
    }

    let (vline, vertices) = vertices.ok_or_else(|| err(1, "missing `vertices` in [quiver]"))?;
    let quiver = Quiver::new(vertices, arrows).map_err(|e| err(vline, e.to_string()))?;
    let relations = raw_relations
        .iter()
        .map(|(l, s)| parse_relation(s, *l, &quiver))
        .collect::<Result<Vec<_>>>()?;
    let cap = match cap {
        Some(c) => c,
        None => acyclic_cap(&quiver)
            .map(|c| c.max(2))
            .ok_or_else(|| err(1, "quiver has oriented cycles; `cap` is required"))?,
    };
    let pres = BoundPresentation {
        quiver,
        relations,
        cap,
        field,
        tag,
    };
    pres.validate().map_err(|e| err(vline, e.to_string()))?;
    Ok(pres)
}

fn format_relation(p: &BoundPresentation, rel: &Relation) -> String {
    let mut out = String::new();
    for (k, (c, path)) in rel.terms.iter().enumerate() {
        let neg = *c.numer() < 0;
        let mag = if neg { -*c } else { *c };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Coeff::from_integer(1) {
            out.push_str(&format_coeff(&mag));
            out.push('*');
        }
        out.push_str(&p.format_path(path));
    }
    out
}

pub fn to_text(p: &BoundPresentation) -> String {
    let q = &p.quiver;
    let mut out = String::from("[quiver]\n");
    out.push_str(&format!("vertices = {}\n", q.vertices().join(" ")));
    if q.arrow_count() > 0 {
        let arrows: Vec<String> = q
            .arrows()
            .iter()
            .map(|a| format!("{}:{}->{}", a.id, q.vertex_id(a.source), q.vertex_id(a.target)))
            .collect();
        out.push_str(&format!("arrows = {}\n", arrows.join(" ")));
    }
    if !p.relations.is_empty() {
        out.push_str("[relations]\n");
        for rel in &p.relations {
            out.push_str(&format_relation(p, rel));
            out.push('\n');
        }
    }
    out.push_str(&format!("[options]\ncap = {}\nfield = {}\n", p.cap, p.field));
    if let Some(tag) = &p.tag {
        out.push_str("[meta]\ntag = ");
        out.push_str(&serde_json::to_string(tag).expect("tags serialize"));
        out.push('\n');
    }
    out
}

pub fn read_file(path: &std::path::Path) -> Result<BoundPresentation> {
    parse(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nakayama, path_algebra_linear, radical_square_truncation, triangular_matrix};
    use proptest::prelude::*;

    #[test]
    fn parses_the_documented_layout() {
        let text = "# two-cycle\n[quiver]\nvertices = 1 2\narrows = a:1->2 b:2->1\n[relations]\na.b\n\
                    b.a  # comment\n[options]\ncap = 3 field = fp:5\n";
        let p = parse(text).unwrap();
        assert_eq!(p.quiver.vertex_count(), 2);
        assert_eq!(p.relations.len(), 2);
        assert_eq!((p.cap, p.field), (3, FieldSpec::Prime(5)));
        assert_eq!(p.dimension().unwrap(), 4);
    }

    #[test]
    fn coefficients_and_signs() {
        let text = "[quiver]\nvertices=1 2 3 4\narrows=a:1->2 b:2->4 c:1->3 d:3->4\n[relations]\n\
                    -1/2*a.b - 3*c.d + c.d\n";
        let p = parse(text).unwrap();
        let rel = &p.relations[0];
        assert_eq!(rel.terms[0].0, Coeff::new(-1, 2));
        assert_eq!(rel.terms[1].0, Coeff::from_integer(-3));
        assert_eq!(rel.terms[2].0, Coeff::from_integer(1));
        assert_eq!(p.cap, 3);
        assert_eq!(parse(&to_text(&p)).unwrap(), p);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("[quiver]\nvertices = 1 2\narrows = a:1->3\n", 2),
            ("[quiver]\nvertices = 1 2\narrows = a:1->2\n[relations]\na.z\n", 5),
            ("[quiver]\nvertices = 1\narrows = x:1->1\n", 1),
            ("[quiver]\nvertices = 1\n[options]\nfield = fp:4\n", 4),
            ("[bogus]\n", 1),
            ("[quiver]\nvertices = 1 2\narrows = a-1-2\n", 3),
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        let base = radical_square_truncation(&nakayama(2, true, 4).unwrap());
        let t = triangular_matrix(&base, 3).unwrap();
        let back = parse(&to_text(&t)).unwrap();
        assert_eq!(back, t);
    }

    fn arb_presentation() -> impl Strategy<Value = BoundPresentation> {
        (1usize..5, any::<bool>(), 2usize..5, 1usize..3).prop_map(|(r, cyclic, cap, n)| {
            let base = if cyclic {
                nakayama(r, true, cap).unwrap()
            } else {
                path_algebra_linear(r).unwrap()
            };
            if n > 1 {
                triangular_matrix(&base, n).unwrap()
            } else {
                base
            }
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_presentation()) {
            let text = to_text(&p);
            prop_assert_eq!(parse(&text).unwrap(), p);
        }
    }
}
