//! Wirtinger presentations from planar diagram codes.
//!
//! Convention: a crossing `[i, j, k, l]` lists its four edge labels
//! counterclockwise starting from the incoming under-edge `i`, so `k` is the
//! outgoing under-edge and `j`, `l` lie on the over-strand. Edges are
//! numbered consecutively along the orientation, so the over-strand runs
//! from `l` to `j` exactly when `j = l + 1` modulo the number of edges; that
//! is a positive crossing. The over-arc generator `x_o` then conjugates the
//! incoming under-arc: `x_k = x_o^e x_i x_o^-e` with `e` the crossing sign.

use crate::error::{Error, Result};

use super::word::FreeWord;
use super::Presentation;

/// Reads one crossing per line as four comma-separated positive integers.
/// Blank lines and `#` comments are skipped.
pub fn parse_pd(text: &str) -> Result<Vec<[u32; 4]>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = line
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("line {}: bad label {s:?}", no + 1)))
            })
            .collect::<Result<_>>()?;
        let tuple: [u32; 4] = nums.try_into().map_err(|_| {
            Error::Parse(format!(
                "line {}: a crossing needs exactly four labels",
                no + 1
            ))
        })?;
        out.push(tuple);
    }
    Ok(out)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// One generator per arc, one relator per crossing, trivial relators
/// dropped, then the last relator dropped if needed for deficiency one.
pub fn pd_to_wirtinger(pd: &[[u32; 4]]) -> Result<Presentation> {
    let n = pd.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty diagram".into()));
    }
    let edges = 2 * n;
    let mut seen = vec![0usize; edges + 1];
    for x in pd.iter().flatten() {
        let x = *x as usize;
        if x == 0 || x > edges {
            return Err(Error::InvalidInput(format!(
                "label {x} outside 1..={edges}"
            )));
        }
        seen[x] += 1;
    }
    if let Some(bad) = (1..=edges).find(|&x| seen[x] != 2) {
        return Err(Error::InvalidInput(format!(
            "label {bad} appears {} times, expected 2",
            seen[bad]
        )));
    }

    let mut parent: Vec<usize> = (0..=edges).collect();
    for &[_, j, _, l] in pd {
        let (a, b) = (find(&mut parent, j as usize), find(&mut parent, l as usize));
        parent[a] = b;
    }
    // Arcs are numbered by their smallest edge label.
    let mut arc_of = vec![usize::MAX; edges + 1];
    let mut arcs = 0;
    for x in 1..=edges {
        let r = find(&mut parent, x);
        if arc_of[r] == usize::MAX {
            arc_of[r] = arcs;
            arcs += 1;
        }
        arc_of[x] = arc_of[r];
    }

    let mut relators = Vec::new();
    for &[i, j, k, l] in pd {
        let positive = j as usize == (l as usize % edges) + 1;
        let e: i8 = if positive { 1 } else { -1 };
        let (o, a, b) = (arc_of[j as usize], arc_of[i as usize], arc_of[k as usize]);
        let r = FreeWord::new([(o, e), (a, 1), (o, -e), (b, -1)])?;
        if !r.is_empty() {
            relators.push(r);
        }
    }
    while relators.len() >= arcs {
        relators.pop();
    }
    let names = (0..arcs)
        .map(|g| {
            if g < 26 {
                ((b'a' + g as u8) as char).to_string()
            } else {
                format!("x{g}")
            }
        })
        .collect();
    Presentation::new(names, relators, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::abelianization_exponent;

    #[test]
    fn trefoil() {
        let p = pd_to_wirtinger(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators().len(), 2);
        assert!(p
            .relators()
            .iter()
            .all(|r| abelianization_exponent(r) == 0 && r.len() == 4));
    }

    #[test]
    fn one_crossing_gives_free_group() {
        let p = pd_to_wirtinger(&[[1, 2, 2, 1]]).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(pd_to_wirtinger(&[]).is_err());
        assert!(pd_to_wirtinger(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 6]]).is_err());
        assert!(pd_to_wirtinger(&[[1, 2, 3, 9]]).is_err());
    }

    #[test]
    fn parse_lines() {
        let pd = parse_pd("1,4,2,5\n3, 6, 4, 1\n\n5,2,6,3\n").unwrap();
        assert_eq!(pd.len(), 3);
        assert!(parse_pd("1,2,3").is_err());
        assert!(parse_pd("1,2,x,4").is_err());
    }
}
