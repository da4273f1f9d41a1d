//! Permutations of `{0, .., n-1}` stored as image tables.
//!
//! Composition is apply-left-first: for permutations `a` and `b`, the product
//! `a.compose(&b)` sends `x` to `b(a(x))`. Every routine in the crate (Schreier
//! vectors, sifting, coset actions) uses this one convention.
//!
//! Points are 0-based in memory and 1-based in cycle notation.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a bijection of 0..{degree}")]
    NotBijection { degree: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("point {point} at position {position} is outside 1..={degree}")]
    PointOutOfRange {
        position: usize,
        point: usize,
        degree: usize,
    },
    #[error("point {point} repeated inside one cycle at position {position}")]
    RepeatedPoint { position: usize, point: usize },
}

/// A bijection on `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection { degree: n });
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds the permutation mapping each point `i` to `f(i)`.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Result<Self, PermError> {
        Self::from_images((0..degree).map(|i| f(i) as u32).collect())
    }

    /// A single cycle over 0-based points.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (k, &p) in points.iter().enumerate() {
            let q = points[(k + 1) % points.len()];
            if p >= degree || q >= degree {
                return Err(PermError::PointOutOfRange {
                    position: k,
                    point: p.max(q) + 1,
                    degree,
                });
            }
            images[p] = q as u32;
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    fn check_degree(&self, other: &Self) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn product(&self, other: &Self) -> Result<Self, PermError> {
        self.check_degree(other)?;
        Ok(self.compose(other))
    }

    /// Unchecked variant of [`Permutation::product`]; panics on degree mismatch.
    #[inline]
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self := self * other`.
    #[inline]
    pub(crate) fn compose_assign(&mut self, other: &Self) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    /// In-place `self := other * self`.
    #[inline]
    pub(crate) fn precompose_assign(&mut self, other: &Self, scratch: &mut Vec<u32>) {
        scratch.clear();
        scratch.extend(other.images.iter().map(|&x| self.images[x as usize]));
        self.images.copy_from_slice(scratch);
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self {
            images: inv.into_boxed_slice(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[other.images[i] as usize] = other.images[self.images[i] as usize];
        }
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc.compose_assign(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.image(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.image(i) != i)
    }

    /// Parses a product of cycles over 1-based points, e.g. `"(1,2,3)(4,5)"`.
    ///
    /// Cycles multiply left to right; `"()"` and the empty string denote the
    /// identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = Self::identity(degree);
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(PermError::Syntax {
                    position: pos,
                    message: format!("expected '(' but found '{}'", bytes[pos] as char),
                });
            }
            let open = pos;
            pos += 1;
            let mut points: Vec<usize> = Vec::new();
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                continue;
            }
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(if pos == bytes.len() {
                        PermError::Syntax {
                            position: open,
                            message: "unterminated cycle".into(),
                        }
                    } else {
                        PermError::Syntax {
                            position: pos,
                            message: format!("expected a point but found '{}'", bytes[pos] as char),
                        }
                    });
                }
                let point: usize = text[start..pos].parse().map_err(|_| PermError::Syntax {
                    position: start,
                    message: "point does not fit in an integer".into(),
                })?;
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange {
                        position: start,
                        point,
                        degree,
                    });
                }
                if points.contains(&(point - 1)) {
                    return Err(PermError::RepeatedPoint { position: start, point });
                }
                points.push(point - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(&c) => {
                        return Err(PermError::Syntax {
                            position: pos,
                            message: format!("expected ',' or ')' but found '{}'", c as char),
                        })
                    }
                    None => {
                        return Err(PermError::Syntax {
                            position: open,
                            message: "unterminated cycle".into(),
                        })
                    }
                }
            }
            let cyc = Self::cycle(degree, &points)?;
            acc.compose_assign(&cyc);
        }
        Ok(acc)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Canonical disjoint-cycle form, 1-based; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
