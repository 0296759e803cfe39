//! The `--V` argument: `3..9`, `3,4,7`, `5`, `all`, `none` or `auto`.

use std::str::FromStr;

use qalg_core::error::TheoryError;
use qalg_core::torsion::SimpleSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VSelector {
    All,
    None,
    Auto,
    /// 1-based vertices, possibly out of range until resolved.
    Vertices(Vec<usize>),
}

impl FromStr for VSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        match s {
            "all" => return Ok(VSelector::All),
            "none" | "" => return Ok(VSelector::None),
            "auto" => return Ok(VSelector::Auto),
            _ => {}
        }
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad vertex `{}` in V selector `{s}`", t.trim()))
        };
        let mut out = Vec::new();
        for part in s.split(',') {
            match part.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                    if a > b {
                        return Err(format!("empty range `{}`", part.trim()));
                    }
                    out.extend(a..=b);
                }
                None => out.push(num(part)?),
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(VSelector::Vertices(out))
    }
}

impl VSelector {
    /// Fixed selectors only; `auto` needs a search and is handled by the caller.
    pub fn resolve(&self, n: usize) -> Result<SimpleSet, TheoryError> {
        match self {
            VSelector::All => Ok(SimpleSet::all(n)),
            VSelector::None | VSelector::Auto => Ok(SimpleSet::empty(n)),
            VSelector::Vertices(v) => SimpleSet::new(n, v.iter().copied()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!("3..9".parse(), Ok(VSelector::Vertices((3..=9).collect())));
        assert_eq!("3,4,7".parse(), Ok(VSelector::Vertices(vec![3, 4, 7])));
        assert_eq!("1..2, 5".parse(), Ok(VSelector::Vertices(vec![1, 2, 5])));
        assert_eq!("auto".parse(), Ok(VSelector::Auto));
        assert_eq!("none".parse::<VSelector>().unwrap().resolve(3).unwrap().len(), 0);
        assert_eq!("all".parse::<VSelector>().unwrap().resolve(3).unwrap().len(), 3);
        assert!("9..3".parse::<VSelector>().is_err());
        assert!("x".parse::<VSelector>().is_err());
        assert!("13".parse::<VSelector>().unwrap().resolve(12).is_err());
    }
}
