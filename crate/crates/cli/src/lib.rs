//! Library half of the `pasture` command line tool.

pub mod expr;
pub mod verify;

use pasture_core::matroid::Matroid;
use pasture_core::{Error, Result};

/// Reads a matroid argument: `U<r>,<n>` for a uniform matroid, `K<n>` for
/// the cycle matroid of a complete graph, otherwise a path to a JSON file.
pub fn parse_matroid(arg: &str) -> Result<Matroid> {
    let s = arg.trim();
    if let Some(rest) = s.strip_prefix('U') {
        if let Some((r, n)) = rest.split_once(',') {
            if let (Ok(r), Ok(n)) = (r.trim().parse::<usize>(), n.trim().parse::<usize>()) {
                if r > n {
                    return Err(Error::Invalid(format!("rank {r} exceeds {n} elements")));
                }
                return Ok(Matroid::uniform(r, n));
            }
        }
    }
    if let Some(Ok(v)) = s.strip_prefix('K').map(str::parse::<usize>) {
        let edges: Vec<(usize, usize)> =
            (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        return Matroid::graphic(v, &edges);
    }
    let text = std::fs::read_to_string(s)
        .map_err(|e| Error::Invalid(format!("cannot read matroid file {s}: {e}")))?;
    let json: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{s}: {e}")))?;
    Matroid::from_json(&json)
}

/// Process exit code for an error: 2 for search guards and undecidable
/// inputs, 3 for malformed input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SearchSpaceExceeded { .. }
        | Error::InfiniteTarget
        | Error::InfinitePasture
        | Error::TooManyFundamental(..) => 2,
        _ => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matroid_arguments() {
        let u = parse_matroid("U2,4").unwrap();
        assert_eq!((u.rank(), u.n(), u.bases().len()), (2, 4, 6));
        let k = parse_matroid("K4").unwrap();
        assert_eq!((k.rank(), k.n(), k.bases().len()), (3, 6, 16));
        assert!(parse_matroid("U5,3").is_err());
        assert!(parse_matroid("/no/such/file.json").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InfiniteTarget), 2);
        assert_eq!(exit_code(&Error::Parse { pos: 0, msg: String::new() }), 3);
    }
}
