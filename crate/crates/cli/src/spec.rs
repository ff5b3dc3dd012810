//! Text grammar for group constructors.
//!
//! `C9`, `D9`, `Dic7`, `SD4`, `MM4`, `Q8`, `S4`, `A4`, `SL2(13)`, `AGL1(7)`,
//! `prod(C2,A4)`, `sd(9,8,2)`, `vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])`,
//! `perm(file.json)`.

use normlift_core::GroupSpec;
use serde::Deserialize;

#[derive(Deserialize)]
struct PermFile {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

/// Splits `s` on commas at bracket depth zero.
fn split_args(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

fn parse_u64(s: &str, what: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a number for {what}, got `{s}`"))
}

/// Parses one spec string; `perm(...)` reads its JSON file eagerly.
pub fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    let s = s.trim();
    if s == "C1" || s == "Trivial" {
        return Ok(GroupSpec::Trivial);
    }
    if s == "Q8" {
        return Ok(GroupSpec::Quaternion8);
    }
    if let Some(n) = s.strip_prefix("Dic") {
        return Ok(GroupSpec::Dicyclic(parse_u64(n, "Dic")?));
    }
    if let Some(n) = s.strip_prefix("SD") {
        return Ok(GroupSpec::Semidihedral(parse_u64(n, "SD")? as u32));
    }
    if let Some(n) = s.strip_prefix("MM") {
        return Ok(GroupSpec::ModularMaximalCyclic(parse_u64(n, "MM")? as u32));
    }
    if let Some(rest) = s.strip_prefix("SL2(") {
        let inner = rest.strip_suffix(')').ok_or("unclosed `SL2(`")?;
        return Ok(GroupSpec::Sl2(parse_u64(inner, "SL2")?));
    }
    if let Some(rest) = s.strip_prefix("AGL1(") {
        let inner = rest.strip_suffix(')').ok_or("unclosed `AGL1(`")?;
        return Ok(GroupSpec::Agl1(parse_u64(inner, "AGL1")?));
    }
    if let Some(rest) = s.strip_prefix("prod(") {
        let inner = rest.strip_suffix(')').ok_or("unclosed `prod(`")?;
        let args = split_args(inner);
        if args.len() != 2 {
            return Err(format!("prod takes 2 specs, got {}", args.len()));
        }
        let a = parse_spec(args[0])?;
        let b = parse_spec(args[1])?;
        return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
    }
    if let Some(rest) = s.strip_prefix("sd(") {
        let inner = rest.strip_suffix(')').ok_or("unclosed `sd(`")?;
        let args = split_args(inner);
        if args.len() != 3 {
            return Err(format!("sd takes (n, k, m), got {} args", args.len()));
        }
        return Ok(GroupSpec::UnitSemidirect {
            n: parse_u64(args[0], "sd n")?,
            k: parse_u64(args[1], "sd k")?,
            m: parse_u64(args[2], "sd m")?,
        });
    }
    if let Some(rest) = s.strip_prefix("vsd(") {
        let inner = rest.strip_suffix(')').ok_or("unclosed `vsd(`")?;
        let args = split_args(inner);
        if args.len() != 4 {
            return Err(format!("vsd takes (p, d, m, matrix), got {} args", args.len()));
        }
        let matrix: Vec<Vec<u64>> = serde_json::from_str(args[3])
            .map_err(|e| format!("bad vsd matrix: {e}"))?;
        return Ok(GroupSpec::VecSemidirect {
            p: parse_u64(args[0], "vsd p")?,
            d: parse_u64(args[1], "vsd d")? as u32,
            m: parse_u64(args[2], "vsd m")?,
            matrix,
        });
    }
    if let Some(rest) = s.strip_prefix("perm(") {
        let path = rest.strip_suffix(')').ok_or("unclosed `perm(`")?.trim();
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read `{path}`: {e}"))?;
        let file: PermFile =
            serde_json::from_str(&text).map_err(|e| format!("bad permutation file `{path}`: {e}"))?;
        return Ok(GroupSpec::PermGens {
            degree: file.degree,
            gens: file.generators,
        });
    }
    // Single-letter families last, so `Dic`/`SD` prefixes win above.
    if let Some(n) = s.strip_prefix('C') {
        return Ok(GroupSpec::Cyclic(parse_u64(n, "C")?));
    }
    if let Some(n) = s.strip_prefix('D') {
        return Ok(GroupSpec::Dihedral(parse_u64(n, "D")?));
    }
    if let Some(n) = s.strip_prefix('S') {
        return Ok(GroupSpec::Symmetric(parse_u64(n, "S")? as u32));
    }
    if let Some(n) = s.strip_prefix('A') {
        return Ok(GroupSpec::Alternating(parse_u64(n, "A")? as u32));
    }
    Err(format!("unrecognized group spec `{s}`"))
}
