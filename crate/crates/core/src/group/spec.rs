use std::fmt;

use super::perm::Perm;
use super::permgroup::PermGroup;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, pow_mod};

pub const MAX_DEGREE: usize = 128;

/// A recipe for one of the supported group constructions.
///
/// The string form is `C7`, `D7` (order 14), `S4`, `A5`, `Q8`, `C7:C3@2`
/// (`C_7 ⋊ C_3` with `y x y^-1 = x^2`), products `C6xC2`, and
/// `gens:<degree>:<cycles>;<cycles>...` for explicit generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    Quaternion8,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    SemidirectCyclic { m: u64, n: u64, a: u64 },
    FromGenerators { degree: usize, perms: Vec<Perm> },
}

fn parse_err(token: &str, reason: impl Into<String>) -> Error {
    Error::Parse { token: token.to_string(), reason: reason.into() }
}

fn parse_num(token: &str, digits: &str) -> Result<u64> {
    digits.parse::<u64>().map_err(|_| parse_err(token, format!("expected a number, found `{digits}`")))
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(parse_err(text, "empty group spec"));
        }
        if let Some(rest) = text.strip_prefix("gens:") {
            return Self::parse_gens(text, rest);
        }
        let mut factors = text.split('x').map(Self::parse_factor);
        let mut spec = factors.next().expect("split yields at least one piece")?;
        for f in factors {
            spec = GroupSpec::DirectProduct(Box::new(spec), Box::new(f?));
        }
        Ok(spec)
    }

    fn parse_factor(token: &str) -> Result<Self> {
        if token.is_empty() {
            return Err(parse_err(token, "empty factor in direct product"));
        }
        if token == "Q8" {
            return Ok(GroupSpec::Quaternion8);
        }
        if let Some((left, right)) = token.split_once(':') {
            let m = left
                .strip_prefix('C')
                .ok_or_else(|| parse_err(left, "semidirect normal factor must be `C<m>`"))?;
            let (cn, a) = right
                .split_once('@')
                .ok_or_else(|| parse_err(right, "semidirect product needs `@<a>`"))?;
            let n = cn.strip_prefix('C').ok_or_else(|| parse_err(cn, "acting factor must be `C<n>`"))?;
            return Ok(GroupSpec::SemidirectCyclic {
                m: parse_num(left, m)?,
                n: parse_num(cn, n)?,
                a: parse_num(a, a)?,
            });
        }
        let (head, digits) = token.split_at(1);
        let n = parse_num(token, digits)?;
        match head {
            "C" => Ok(GroupSpec::Cyclic(n)),
            "D" => Ok(GroupSpec::Dihedral(n)),
            "S" => Ok(GroupSpec::Symmetric(n)),
            "A" => Ok(GroupSpec::Alternating(n)),
            _ => Err(parse_err(token, "unknown group family")),
        }
    }

    fn parse_gens(text: &str, rest: &str) -> Result<Self> {
        let (deg, cycles) = rest
            .split_once(':')
            .ok_or_else(|| parse_err(text, "expected gens:<degree>:<cycles;...>"))?;
        let degree = parse_num(deg, deg)? as usize;
        let mut perms = Vec::new();
        for g in cycles.split(';').map(str::trim).filter(|g| !g.is_empty()) {
            perms.push(parse_cycles(g, degree)?);
        }
        Ok(GroupSpec::FromGenerators { degree, perms })
    }

    /// Expected group order where it is known without closing the generators.
    pub fn expected_order(&self) -> Option<u64> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<u64>() / 2).max(1),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::DirectProduct(a, b) => a.expected_order()? * b.expected_order()?,
            GroupSpec::SemidirectCyclic { m, n, .. } => m * n,
            GroupSpec::FromGenerators { .. } => return None,
        })
    }

    fn degree_and_gens(&self) -> Result<(usize, Vec<Perm>)> {
        let check = |d: usize| {
            if d > MAX_DEGREE {
                Err(Error::DegreeTooLarge { degree: d, max: MAX_DEGREE })
            } else {
                Ok(d)
            }
        };
        match *self {
            GroupSpec::Cyclic(n) => {
                if n == 0 {
                    return Err(parse_err("C0", "cyclic order must be positive"));
                }
                let d = check(n as usize)?;
                let gens = if n == 1 { vec![] } else { vec![rotation(d, 0, d)] };
                Ok((d, gens))
            }
            GroupSpec::Dihedral(n) => {
                if n < 3 {
                    return Err(parse_err(&format!("D{n}"), "dihedral groups need n >= 3"));
                }
                let d = check(n as usize)?;
                let refl: Vec<u32> = (0..d).map(|i| ((d - i) % d) as u32).collect();
                Ok((d, vec![rotation(d, 0, d), Perm::from_images(refl).unwrap()]))
            }
            GroupSpec::Symmetric(n) => {
                if n == 0 || n > 5 {
                    return Err(parse_err(&format!("S{n}"), "symmetric groups supported for 1 <= n <= 5"));
                }
                let d = n as usize;
                if d == 1 {
                    return Ok((1, vec![]));
                }
                let t = Perm::from_cycles(d, &[vec![0, 1]]).unwrap();
                Ok((d, vec![t, rotation(d, 0, d)]))
            }
            GroupSpec::Alternating(n) => {
                if n == 0 || n > 5 {
                    return Err(parse_err(&format!("A{n}"), "alternating groups supported for 1 <= n <= 5"));
                }
                let d = n as usize;
                let gens = (2..d).map(|i| Perm::from_cycles(d, &[vec![0, 1, i as u32]]).unwrap()).collect();
                Ok((d, gens))
            }
            GroupSpec::Quaternion8 => {
                // Regular action: points are ±1, ±i, ±j, ±k encoded as 0..8.
                // Unit u encoded as index 2*u + sign with units 1, i, j, k.
                let table = |a: usize, b: usize| -> usize {
                    // quaternion unit product: (unit, sign)
                    const T: [[(usize, usize); 4]; 4] = [
                        [(0, 0), (1, 0), (2, 0), (3, 0)],
                        [(1, 0), (0, 1), (3, 0), (2, 1)],
                        [(2, 0), (3, 1), (0, 1), (1, 0)],
                        [(3, 0), (2, 0), (1, 1), (0, 1)],
                    ];
                    let (ua, sa) = (a / 2, a % 2);
                    let (ub, sb) = (b / 2, b % 2);
                    let (u, s) = T[ua][ub];
                    2 * u + (s ^ sa ^ sb)
                };
                let left = |x: usize| Perm::from_images((0..8).map(|y| table(x, y) as u32).collect()).unwrap();
                Ok((8, vec![left(2), left(4)]))
            }
            GroupSpec::DirectProduct(ref a, ref b) => {
                let (da, ga) = a.degree_and_gens()?;
                let (db, gb) = b.degree_and_gens()?;
                let d = check(da + db)?;
                let mut gens: Vec<Perm> = ga.iter().map(|g| g.shifted(0, d)).collect();
                gens.extend(gb.iter().map(|g| g.shifted(da, d)));
                Ok((d, gens))
            }
            GroupSpec::SemidirectCyclic { m, n, a } => {
                if m == 0 || n == 0 || (m > 1 && (gcd(a % m, m) != 1 || pow_mod(a, n, m) != 1)) {
                    return Err(Error::BadAction { m, n, a });
                }
                let (mu, nu) = (m as usize, n as usize);
                let d = check(mu + nu)?;
                let mut gens = Vec::new();
                if m > 1 {
                    gens.push(rotation(d, 0, mu));
                }
                if n > 1 {
                    let mut images: Vec<u32> = (0..d as u32).collect();
                    for i in 0..mu {
                        images[i] = ((i as u64 * a) % m) as u32;
                    }
                    for i in 0..nu {
                        images[mu + i] = (mu + (i + 1) % nu) as u32;
                    }
                    gens.push(Perm::from_images(images).unwrap());
                }
                Ok((d, gens))
            }
            GroupSpec::FromGenerators { degree, ref perms } => Ok((check(degree)?, perms.clone())),
        }
    }

    pub fn build(&self, order_cap: usize) -> Result<PermGroup> {
        let (degree, gens) = self.degree_and_gens()?;
        let g = PermGroup::from_generators(degree, gens, order_cap)?;
        Ok(g.with_name(self.to_string()))
    }
}

/// The cycle `(offset offset+1 ... offset+len-1)` on `degree` points.
fn rotation(degree: usize, offset: usize, len: usize) -> Perm {
    let cycle: Vec<u32> = (offset..offset + len).map(|x| x as u32).collect();
    Perm::from_cycles(degree, &[cycle]).unwrap()
}

fn parse_cycles(token: &str, degree: usize) -> Result<Perm> {
    let mut cycles = Vec::new();
    let mut rest = token.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| parse_err(token, "cycle must start with `(`"))?;
        let close = inner.find(')').ok_or_else(|| parse_err(token, "unclosed cycle"))?;
        let body = &inner[..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| parse_err(s, "bad point in cycle")))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = inner[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles).ok_or_else(|| parse_err(token, "cycles are not a permutation of the points"))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::DirectProduct(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::SemidirectCyclic { m, n, a } => write!(f, "C{m}:C{n}@{a}"),
            GroupSpec::FromGenerators { degree, perms } => {
                let gens: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
                write!(f, "gens:{degree}:{}", gens.join(";"))
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}
