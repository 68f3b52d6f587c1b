//! The weighted metric, fixed points, Lipschitz constants and composed maps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AffineMap, FifSystem, Point};

/// Default upper bound on the number of composed maps `n^m`.
pub const DEFAULT_MAP_CAP: usize = 10_000_000;

pub type FixedPoint = Point;

/// `|u1 - u2| + theta |v1 - v2|`.
#[inline]
pub fn rho_distance(p: Point, q: Point, theta: f64) -> f64 {
    (p.x - q.x).abs() + theta * (p.y - q.y).abs()
}

/// Closed-form fixed point of a map that contracts both coordinates.
pub fn fixed_point(map: &AffineMap) -> Result<FixedPoint> {
    if !(map.a < 1.0 && map.d < 1.0) {
        return Err(Error::DegenerateMap { a: map.a, d: map.d });
    }
    Ok(fixed_point_unchecked(map))
}

#[inline]
pub(crate) fn fixed_point_unchecked(map: &AffineMap) -> FixedPoint {
    let one_a = 1.0 - map.a;
    let one_d = 1.0 - map.d;
    Point::new(
        map.b / one_a,
        map.b * map.c / (one_a * one_d) + map.e / one_d,
    )
}

/// Lipschitz constant of `map` with respect to the weighted metric: `max(d, a + theta |c|)`.
#[inline]
pub fn lipschitz_constant(map: &AffineMap, theta: f64) -> f64 {
    f64::max(map.d, map.a + theta * map.c.abs())
}

/// A sequence of 1-based map indices `(k_1, ..., k_m)` naming `f_{k_1} ∘ ... ∘ f_{k_m}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&letter) = letters.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        Ok(Word(letters))
    }

    /// The word at position `index` of the lexicographic enumeration of all words of length `depth`.
    pub fn from_index(mut index: usize, n: usize, depth: usize) -> Self {
        let mut letters = vec![0; depth];
        for slot in letters.iter_mut().rev() {
            *slot = index % n + 1;
            index /= n;
        }
        Word(letters)
    }

    /// Position of this word in the lexicographic enumeration of its length.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &k| acc * n + (k - 1))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// `n^depth`, or `DepthCapExceeded` if that exceeds `cap` (or overflows).
pub fn word_count(n: usize, depth: usize, cap: usize) -> Result<usize> {
    u32::try_from(depth)
        .ok()
        .and_then(|m| n.checked_pow(m))
        .filter(|&count| count <= cap)
        .ok_or(Error::DepthCapExceeded { n, depth, cap })
}

/// Lexicographic odometer over `{1..n}^depth`.
#[derive(Debug, Clone)]
pub struct Words {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        match cur.iter().rposition(|&k| k < self.n) {
            Some(pos) => {
                cur[pos] += 1;
                cur[pos + 1..].iter_mut().for_each(|k| *k = 1);
            }
            None => self.current = None,
        }
        Some(Word(out))
    }
}

/// All `n^depth` words in lexicographic order.
pub fn enumerate_words(n: usize, depth: usize, cap: usize) -> Result<Words> {
    if depth == 0 {
        return Err(Error::EmptyWord);
    }
    word_count(n, depth, cap)?;
    Ok(Words {
        n,
        current: (n > 0).then(|| vec![1; depth]),
    })
}

/// Coefficients of `f_{k_1} ∘ ... ∘ f_{k_m}` via the right-fold recursion.
pub fn compose_word(system: &FifSystem, word: &Word) -> Result<AffineMap> {
    let n = system.n_maps();
    let letters = word.letters();
    if letters.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(&letter) = letters.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::LetterOutOfRange { letter, n });
    }
    let (&last, rest) = letters.split_last().unwrap();
    Ok(rest
        .iter()
        .rev()
        .fold(*system.map(last), |inner, &k| system.map(k).then_after(&inner)))
}

/// Every composed map of depth `depth`, in lexicographic word order.
///
/// Level `j` is built from level `j - 1` by prepending a letter; the word
/// `k w` sits at index `(k - 1) n^{j-1} + index(w)`. Each entry is computed
/// with the same operations as [`compose_word`], so the two agree bit for bit.
pub fn compose_all(system: &FifSystem, depth: usize, cap: usize) -> Result<Vec<AffineMap>> {
    if depth == 0 {
        return Err(Error::EmptyWord);
    }
    let n = system.n_maps();
    word_count(n, depth, cap)?;
    let base = system.maps();
    let mut level = base.to_vec();
    for _ in 1..depth {
        let stride = level.len();
        let prev = &level;
        level = (0..n * stride)
            .into_par_iter()
            .map(|i| base[i / stride].then_after(&prev[i % stride]))
            .collect();
    }
    Ok(level)
}
