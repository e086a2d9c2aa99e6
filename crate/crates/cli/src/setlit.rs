//! Parsing `--set` arguments: a named set or a list of vertex literals.

use mdim_core::claims::{build_named_set, ClaimError};
use mdim_core::families::Built;
use mdim_core::{Graph, VertexSet};

pub const GRAMMAR: &str = "\
SET is either a named set or a list of members.

Named sets: M, A, B, C, D, N (odd n, indexed, e.g. D1 or D:i=1), E1, E2, E3,
E4, E (even n), T on layered products; R1, R2, V1, P, P1.. on h; C1, C2, C3,
W1.., NW1.. (or NW:r=2) on l.

Members are separated by commas, semicolons or spaces:
  x16:4      x16 in copy 4 of (C_n x P_k) x P_m (label x16^4)
  x7         x7 in C_n x P_k (single copy)
  v3, v1v3   a point or a pair of h
  w:2,12     the l vertex {v2,v1v2}; r must be i or j, both single digits
  w:2,2.11   {v2,v2v11}, with a dot between multi-digit i and j
  LABEL      any vertex label of the graph, e.g. x16^4 or {v2,v1v2}

Members must be distinct; their order fixes the coordinate order.";

/// Resolves `text` against `built`. Named sets win when the text parses as
/// one; otherwise every member must name a vertex.
pub fn parse_set(text: &str, built: &Built) -> Result<VertexSet, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty set".into());
    }
    let named = match build_named_set(text, built) {
        Ok(q) => return Ok(q),
        Err(e) => e,
    };
    let g = built.graph();
    let mut members = Vec::new();
    for token in tokens(text) {
        members.push(member(&token, g).ok_or_else(|| match &named {
            // named sets start with an upper-case letter
            ClaimError::BadParams { .. } | ClaimError::WrongFamily { .. } if text.starts_with(char::is_uppercase) => {
                named.to_string()
            }
            _ => format!("{token:?} is neither a named set nor a vertex of this graph"),
        })?);
    }
    VertexSet::new(members, g.n_vertices()).map_err(|e| e.to_string())
}

/// Splits on separators, keeping the comma inside `w:r,ij` attached.
fn tokens(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut glue = false;
    for piece in text.split([',', ';', ' ', '\t']).filter(|p| !p.is_empty()) {
        if glue {
            out.last_mut().unwrap().push_str(&format!(",{piece}"));
            glue = false;
        } else {
            glue = piece.starts_with("w:") && !piece.contains(',');
            out.push(piece.to_string());
        }
    }
    out
}

fn member(token: &str, g: &Graph) -> Option<usize> {
    if let Some(v) = g.vertex_by_label(token) {
        return Some(v);
    }
    let label = if let Some(rest) = token.strip_prefix("w:") {
        let (r, ij) = rest.split_once(',')?;
        let (i, j) = match ij.split_once('.') {
            Some((i, j)) => (i.to_string(), j.to_string()),
            None if ij.len() == 2 => (ij[..1].to_string(), ij[1..].to_string()),
            None => return None,
        };
        let (r, i, j): (usize, usize, usize) = (r.parse().ok()?, i.parse().ok()?, j.parse().ok()?);
        format!("{{v{r},v{}v{}}}", i.min(j), i.max(j))
    } else if let Some((x, copy)) = token.split_once(':') {
        let t: usize = x.strip_prefix('x')?.parse().ok()?;
        let copy: usize = copy.parse().ok()?;
        match g.vertex_by_label(&format!("x{t}")) {
            // single-copy products carry no copy index
            Some(v) if copy == 1 => return Some(v),
            _ => format!("x{t}^{copy}"),
        }
    } else {
        // v3v1 is the same pair as v1v3
        let (i, j) = token.strip_prefix('v')?.split_once('v')?;
        let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
        format!("v{}v{}", i.min(j), i.max(j))
    };
    g.vertex_by_label(&label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mdim_core::families::FamilySpec;

    fn labels(text: &str, spec: &str) -> Result<Vec<String>, String> {
        let built = spec.parse::<FamilySpec>().unwrap().build().unwrap();
        let q = parse_set(text, &built)?;
        Ok(q.labels(built.graph()).into_iter().map(String::from).collect())
    }

    #[test]
    fn named_and_literal_sets_agree() {
        let spec = "cpm:n=5,k=4,m=4";
        let named = labels("D1", spec).unwrap();
        assert_eq!(labels("D:i=1", spec).unwrap(), named);
        assert_eq!(labels("x1:1,x3:1,x16:1,x16:4", spec).unwrap(), named);
        assert_eq!(labels("x1^1 x3^1; x16^1 x16:4", spec).unwrap(), named);
    }

    #[test]
    fn member_forms() {
        assert_eq!(labels("x1,x7:1", "cp:n=5,k=3").unwrap(), ["x1", "x7"]);
        assert_eq!(labels("v1,v3v1", "h:n=5").unwrap(), ["v1", "v1v3"]);
        assert_eq!(labels("w:2,12,w:1,13", "l:n=5").unwrap(), ["{v2,v1v2}", "{v1,v1v3}"]);
        assert_eq!(labels("w:3,31", "l:n=5").unwrap(), ["{v3,v1v3}"]);
        assert_eq!(labels("w:10,1.10", "l:n=10").unwrap(), ["{v10,v1v10}"]);
    }

    #[test]
    fn errors() {
        assert!(labels("x1,x1", "cp:n=5,k=3").unwrap_err().contains("twice"));
        assert!(labels("x99", "cp:n=5,k=3").is_err());
        assert!(labels("D9", "cpm:n=5,k=4,m=4").is_err());
        // v2 is not an endpoint of v1v3, so there is no such vertex
        assert!(labels("w:2,13", "l:n=5").is_err());
        assert!(labels("", "l:n=5").is_err());
    }
}
