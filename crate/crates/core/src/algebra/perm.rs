//! Permutations of the points `0..d`.

use std::fmt;

use super::{AlgebraError, GroupElement};

/// A permutation stored as its image array.
///
/// Products act on the right: `a.compose(b)` applies `a` first, then `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, AlgebraError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            match seen.get_mut(x as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(AlgebraError::NotABijection),
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` on `degree` points.
    /// The empty string and `()` denote the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self, AlgebraError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let bad = |msg: &str| AlgebraError::CycleSyntax(format!("{msg} in {text:?}"));
        let mut rest = text.trim();
        let mut used = vec![false; degree];
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_, _>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(bad("point out of range"));
                }
                if std::mem::replace(&mut used[p], true) {
                    return Err(bad("point repeated"));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl GroupElement for Perm {
    fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::CarrierMismatch);
        }
        Ok(Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        })
    }

    fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    fn identity_like(&self) -> Self {
        Perm::identity(self.degree())
    }
}
