//! Bounded checking of the hypotheses behind the construction: injectivity of the action,
//! the Ore condition, and right cancellation.
//!
//! A [`Presentation`] lists generators by their action and a finite set of sample points.
//! Words over the generators are compared extensionally on the samples, so a reported
//! difference is a genuine difference, while "pass" only means "no counterexample among
//! words of length at most `max_depth` on these samples".
//!
//! Words are enumerated length-lexicographically in declared generator order. Searches
//! may run on several threads but always return the first hit in that order.

pub mod config;
pub mod presets;

use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Indices into a presentation's generator list. `[a, b, c]` denotes `a∘b∘c`.
pub type Word = Vec<usize>;

pub const DEFAULT_MAX_DEPTH: usize = 5;

/// Upper bound on the number of words a single table may hold.
const MAX_TABLE_WORDS: usize = 2_000_000;

type Action<P> = Arc<dyn Fn(&P) -> Option<P> + Send + Sync>;

/// A named generator. `None` means the action is undefined at that point.
#[derive(Clone)]
pub struct Generator<P> {
    name: String,
    action: Action<P>,
}

impl<P> Generator<P> {
    pub fn new(name: impl Into<String>, action: impl Fn(&P) -> Option<P> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            action: Arc::new(action),
        }
    }

    /// A generator defined everywhere.
    pub fn total(name: impl Into<String>, action: impl Fn(&P) -> P + Send + Sync + 'static) -> Self {
        Self::new(name, move |x| Some(action(x)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<P> Debug for Generator<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Generator").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub struct Presentation<P> {
    pub name: String,
    generators: Vec<Generator<P>>,
    samples: Vec<P>,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum InjectivityResult {
    Pass {
        depth: usize,
    },
    Fail {
        word: Vec<String>,
        x: String,
        y: String,
        image: String,
        validated: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OreSearch {
    /// `w1∘g = w2∘f` on every sample.
    Found {
        w1: Vec<String>,
        w2: Vec<String>,
        depth: usize,
        validated: bool,
    },
    NotFoundWithinDepth {
        depth: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrePairResult {
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub result: OreSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CancellationResult {
    Pass {
        depth: usize,
    },
    /// `f1∘g = f2∘g` on every sample while `f1` and `f2` differ at `witness_point`.
    Fail {
        f1: Vec<String>,
        f2: Vec<String>,
        g: Vec<String>,
        witness_point: String,
        validated: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub presentation: String,
    pub generators: Vec<String>,
    pub samples: Vec<String>,
    pub max_depth: usize,
    pub depth_used: usize,
    pub scope: String,
    pub injectivity: InjectivityResult,
    pub ore: Vec<OrePairResult>,
    pub cancellation: CancellationResult,
}

impl VerifyReport {
    /// True when injectivity or cancellation was refuted.
    pub fn has_counterexample(&self) -> bool {
        matches!(self.injectivity, InjectivityResult::Fail { .. })
            || matches!(self.cancellation, CancellationResult::Fail { .. })
    }

    pub fn all_witnesses_validated(&self) -> bool {
        let inj = match &self.injectivity {
            InjectivityResult::Fail { validated, .. } => *validated,
            InjectivityResult::Pass { .. } => true,
        };
        let ore = self.ore.iter().all(|p| match &p.result {
            OreSearch::Found { validated, .. } => *validated,
            OreSearch::NotFoundWithinDepth { .. } => true,
        });
        let canc = match &self.cancellation {
            CancellationResult::Fail { validated, .. } => *validated,
            CancellationResult::Pass { .. } => true,
        };
        inj && ore && canc
    }
}

/// Images of a fixed list of base points under every word up to a length bound.
struct WordTable<P> {
    generators: usize,
    // levels[l][i]: images under the i-th word of length l + 1.
    levels: Vec<Vec<Vec<P>>>,
}

impl<P: Clone + Display> WordTable<P> {
    fn build(presentation: &Presentation<P>, base: &[P], depth: usize) -> Result<Self> {
        let k = presentation.generators.len();
        let mut total = 0usize;
        let mut width = 1usize;
        for _ in 0..depth {
            width = width
                .checked_mul(k)
                .filter(|w| *w <= MAX_TABLE_WORDS)
                .ok_or_else(|| Error::Usage("word search space too large; lower --depth".into()))?;
            total += width;
        }
        if total > MAX_TABLE_WORDS {
            return Err(Error::Usage("word search space too large; lower --depth".into()));
        }
        let mut levels: Vec<Vec<Vec<P>>> = Vec::with_capacity(depth);
        if depth == 0 {
            return Ok(Self { generators: k, levels });
        }
        let first = (0..k)
            .map(|g| presentation.apply_generator(g, base))
            .collect::<Result<Vec<_>>>()?;
        levels.push(first);
        for _ in 1..depth {
            let prev = levels.last().expect("at least one level");
            let next = (0..k)
                .flat_map(|g| prev.iter().map(move |imgs| (g, imgs)))
                .map(|(g, imgs)| presentation.apply_generator(g, imgs))
                .collect::<Result<Vec<_>>>()?;
            levels.push(next);
        }
        Ok(Self { generators: k, levels })
    }

    fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Number of words of length at most `depth`.
    fn count_up_to(&self, depth: usize) -> usize {
        self.levels.iter().take(depth).map(Vec::len).sum()
    }

    fn locate(&self, mut flat: usize) -> (usize, usize) {
        for (l, level) in self.levels.iter().enumerate() {
            if flat < level.len() {
                return (l, flat);
            }
            flat -= level.len();
        }
        panic!("word index out of range");
    }

    fn images(&self, flat: usize) -> &[P] {
        let (l, i) = self.locate(flat);
        &self.levels[l][i]
    }

    fn word_len(&self, flat: usize) -> usize {
        self.locate(flat).0 + 1
    }

    fn word(&self, flat: usize) -> Word {
        let (l, mut i) = self.locate(flat);
        let mut letters = vec![0; l + 1];
        for slot in letters.iter_mut().rev() {
            *slot = i % self.generators;
            i /= self.generators;
        }
        letters
    }
}

impl<P: Clone + Display> Presentation<P> {
    fn apply_generator(&self, g: usize, points: &[P]) -> Result<Vec<P>> {
        let gen = &self.generators[g];
        points
            .iter()
            .map(|x| {
                (gen.action)(x).ok_or_else(|| {
                    Error::Domain(format!("generator `{}` is undefined at {x}", gen.name))
                })
            })
            .collect()
    }
}

impl<P> Presentation<P>
where
    P: Clone + Eq + Hash + Display + Send + Sync,
{
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator<P>>,
        samples: Vec<P>,
        max_depth: usize,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Usage("a presentation needs at least one generator".into()));
        }
        if samples.is_empty() {
            return Err(Error::Usage("a presentation needs at least one sample point".into()));
        }
        if max_depth == 0 {
            return Err(Error::Usage("max_depth must be at least 1".into()));
        }
        Ok(Self {
            name: name.into(),
            generators,
            samples,
            max_depth,
        })
    }

    pub fn with_depth(mut self, max_depth: usize) -> Result<Self> {
        if max_depth == 0 {
            return Err(Error::Usage("max_depth must be at least 1".into()));
        }
        self.max_depth = max_depth;
        Ok(self)
    }

    pub fn generators(&self) -> &[Generator<P>] {
        &self.generators
    }

    pub fn samples(&self) -> &[P] {
        &self.samples
    }

    /// Looks up generator indices by name.
    pub fn word_from_names(&self, names: &[&str]) -> Result<Word> {
        names
            .iter()
            .map(|n| {
                self.generators
                    .iter()
                    .position(|g| g.name == *n)
                    .ok_or_else(|| Error::Usage(format!("unknown generator `{n}`")))
            })
            .collect()
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&g| self.generators[g].name.clone()).collect()
    }

    /// Applies a word letter by letter, rightmost letter first.
    pub fn apply_word(&self, word: &[usize], x: &P) -> Result<P> {
        let mut y = x.clone();
        for &g in word.iter().rev() {
            let gen = &self.generators[g];
            y = (gen.action)(&y).ok_or_else(|| {
                Error::Domain(format!("generator `{}` is undefined at {y}", gen.name))
            })?;
        }
        Ok(y)
    }

    fn apply_word_all(&self, word: &[usize], points: &[P]) -> Result<Vec<P>> {
        points.iter().map(|x| self.apply_word(word, x)).collect()
    }

    fn distinct_samples(&self) -> Vec<P> {
        let mut seen = std::collections::HashSet::new();
        self.samples
            .iter()
            .filter(|x| seen.insert((*x).clone()))
            .cloned()
            .collect()
    }

    /// Looks for a word identifying two distinct samples.
    pub fn verify_injectivity(&self) -> Result<InjectivityResult> {
        let samples = self.distinct_samples();
        if samples.len() < 2 {
            return Err(Error::Usage(
                "injectivity check needs at least two distinct sample points".into(),
            ));
        }
        let table = WordTable::build(self, &samples, self.max_depth)?;
        let hit = (0..table.len()).into_par_iter().find_map_first(|w| {
            let mut seen: HashMap<&P, usize> = HashMap::new();
            for (i, img) in table.images(w).iter().enumerate() {
                if let Some(&j) = seen.get(img) {
                    return Some((w, j, i));
                }
                seen.insert(img, i);
            }
            None
        });
        let Some((w, a, b)) = hit else {
            return Ok(InjectivityResult::Pass {
                depth: self.max_depth,
            });
        };
        let word = table.word(w);
        let (x, y) = (&samples[a], &samples[b]);
        let fx = self.apply_word(&word, x)?;
        let fy = self.apply_word(&word, y)?;
        Ok(InjectivityResult::Fail {
            word: self.word_names(&word),
            x: x.to_string(),
            y: y.to_string(),
            image: fx.to_string(),
            validated: x != y && fx == fy,
        })
    }

    /// Searches for `(w1, w2)` with `w1∘g = w2∘f` on all samples, both words of length at most
    /// `max_depth`. Pairs are tried by increasing `max(|w1|, |w2|)`, then by `w1`, then `w2`.
    pub fn search_ore_witness(&self, f: &[usize], g: &[usize]) -> Result<OreSearch> {
        let f_images = self.apply_word_all(f, &self.samples)?;
        let g_images = self.apply_word_all(g, &self.samples)?;
        let table_f = WordTable::build(self, &f_images, self.max_depth)?;
        let table_g = WordTable::build(self, &g_images, self.max_depth)?;
        let mut by_image: HashMap<&[P], Vec<usize>> = HashMap::new();
        for w in 0..table_f.len() {
            by_image.entry(table_f.images(w)).or_default().push(w);
        }
        for depth in 1..=self.max_depth {
            let hit = (0..table_g.count_up_to(depth))
                .into_par_iter()
                .find_map_first(|w1| {
                    let len1 = table_g.word_len(w1);
                    by_image.get(table_g.images(w1))?.iter().copied().find(|&w2| {
                        let len2 = table_f.word_len(w2);
                        len2 <= depth && (len1 == depth || len2 == depth)
                    })
                    .map(|w2| (w1, w2))
                });
            if let Some((w1, w2)) = hit {
                let w1 = table_g.word(w1);
                let w2 = table_f.word(w2);
                let validated = self.samples.iter().try_fold(true, |ok, x| {
                    let lhs = self.apply_word(&w1, &self.apply_word(g, x)?)?;
                    let rhs = self.apply_word(&w2, &self.apply_word(f, x)?)?;
                    Ok::<_, Error>(ok && lhs == rhs)
                })?;
                return Ok(OreSearch::Found {
                    w1: self.word_names(&w1),
                    w2: self.word_names(&w2),
                    depth,
                    validated,
                });
            }
        }
        Ok(OreSearch::NotFoundWithinDepth {
            depth: self.max_depth,
        })
    }

    /// Looks for `f1∘g = f2∘g` on all samples while `f1 ≠ f2` on some sample.
    pub fn verify_right_cancellation(&self) -> Result<CancellationResult> {
        let base = WordTable::build(self, &self.samples, self.max_depth)?;
        let hit = (0..base.len())
            .into_par_iter()
            .map(|g| -> Result<Option<(usize, usize, usize)>> {
                let after_g = WordTable::build(self, base.images(g), self.max_depth)?;
                let mut first_with_image: HashMap<&[P], usize> = HashMap::new();
                for w in 0..after_g.len() {
                    match first_with_image.get(after_g.images(w)) {
                        Some(&earlier) if base.images(earlier) != base.images(w) => {
                            return Ok(Some((earlier, w, g)));
                        }
                        Some(_) => {}
                        None => {
                            first_with_image.insert(after_g.images(w), w);
                        }
                    }
                }
                Ok(None)
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        let (f1, f2, g) = match hit {
            None => {
                return Ok(CancellationResult::Pass {
                    depth: self.max_depth,
                })
            }
            Some(r) => match r? {
                Some(t) => t,
                None => unreachable!("filtered above"),
            },
        };
        let (f1, f2, g) = (base.word(f1), base.word(f2), base.word(g));
        let mut agree_after_g = true;
        let mut differing = None;
        for x in &self.samples {
            let gx = self.apply_word(&g, x)?;
            agree_after_g &= self.apply_word(&f1, &gx)? == self.apply_word(&f2, &gx)?;
            if differing.is_none() && self.apply_word(&f1, x)? != self.apply_word(&f2, x)? {
                differing = Some(x.clone());
            }
        }
        Ok(CancellationResult::Fail {
            f1: self.word_names(&f1),
            f2: self.word_names(&f2),
            g: self.word_names(&g),
            witness_point: differing
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
            validated: agree_after_g && differing.is_some(),
        })
    }

    /// Runs all three checks; Ore witnesses are searched for every pair of generators.
    pub fn verify(&self) -> Result<VerifyReport> {
        let injectivity = self.verify_injectivity()?;
        let k = self.generators.len();
        let mut ore = Vec::new();
        for i in 0..k {
            for j in i..k {
                ore.push(OrePairResult {
                    f: self.word_names(&[i]),
                    g: self.word_names(&[j]),
                    result: self.search_ore_witness(&[i], &[j])?,
                });
            }
        }
        let cancellation = self.verify_right_cancellation()?;
        Ok(VerifyReport {
            presentation: self.name.clone(),
            generators: self.generators.iter().map(|g| g.name.clone()).collect(),
            samples: self.samples.iter().map(ToString::to_string).collect(),
            max_depth: self.max_depth,
            depth_used: self.max_depth,
            scope: format!(
                "bounded: words of length <= {} compared on {} sample points",
                self.max_depth,
                self.samples.len()
            ),
            injectivity,
            ore,
            cancellation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(name: &str, f: fn(i64) -> i64) -> Generator<i64> {
        Generator::total(name, move |x: &i64| f(*x))
    }

    #[test]
    fn word_enumeration_is_length_lexicographic() {
        let p = Presentation::new("ab", vec![ints("a", |x| x + 1), ints("b", |x| 2 * x)], vec![1], 3)
            .unwrap();
        let table = WordTable::build(&p, p.samples(), 3).unwrap();
        let words: Vec<Word> = (0..table.len()).map(|w| table.word(w)).collect();
        assert_eq!(words[..6], [vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(words.len(), 2 + 4 + 8);
        // [a, b] denotes a∘b: 1 -> 2 -> 3.
        assert_eq!(table.images(3), &[3]);
        for w in 0..table.len() {
            assert_eq!(table.images(w)[0], p.apply_word(&table.word(w), &1).unwrap());
        }
    }

    #[test]
    fn constant_map_breaks_injectivity() {
        let p = Presentation::new("zero", vec![ints("z", |_| 0)], vec![1, 2], 2).unwrap();
        match p.verify_injectivity().unwrap() {
            InjectivityResult::Fail { word, x, y, validated, .. } => {
                assert_eq!(word, vec!["z"]);
                assert_eq!((x.as_str(), y.as_str()), ("1", "2"));
                assert!(validated);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn injectivity_needs_two_samples() {
        let p = Presentation::new("one", vec![ints("a", |x| x + 1)], vec![4, 4], 2).unwrap();
        assert!(matches!(p.verify_injectivity(), Err(Error::Usage(_))));
    }

    #[test]
    fn commuting_generators_have_depth_one_witness() {
        let p = Presentation::new(
            "shift-double",
            vec![ints("a", |x| 3 * x), ints("b", |x| 2 * x)],
            vec![1, 5, -7],
            3,
        )
        .unwrap();
        let r = p.search_ore_witness(&[0], &[1]).unwrap();
        // w1∘b = w2∘a with w1 = a, w2 = b.
        assert_eq!(
            r,
            OreSearch::Found {
                w1: vec!["a".into()],
                w2: vec!["b".into()],
                depth: 1,
                validated: true
            }
        );
        let r = p.search_ore_witness(&[1], &[1]).unwrap();
        assert!(matches!(r, OreSearch::Found { depth: 1, ref w1, ref w2, .. } if w1 == w2));
    }

    #[test]
    fn ore_search_reports_not_found() {
        // x+1 and 2x: w1∘(2x) = w2∘(x+1) has no solution with these generators at depth 1.
        let p = Presentation::new(
            "affine",
            vec![ints("s", |x| x + 1), ints("d", |x| 2 * x)],
            vec![0, 1, 2],
            1,
        )
        .unwrap();
        assert_eq!(
            p.search_ore_witness(&[0], &[1]).unwrap(),
            OreSearch::NotFoundWithinDepth { depth: 1 }
        );
        // At depth 2: d∘s = s∘s∘d, i.e. 2x + 2.
        let p = p.with_depth(2).unwrap();
        assert!(matches!(
            p.search_ore_witness(&[0], &[1]).unwrap(),
            OreSearch::Found { depth: 2, validated: true, .. }
        ));
    }

    #[test]
    fn single_generator_cancels() {
        let p = Presentation::new("double", vec![ints("d", |x| 2 * x)], vec![1, 3], 4).unwrap();
        assert_eq!(
            p.verify_right_cancellation().unwrap(),
            CancellationResult::Pass { depth: 4 }
        );
    }

    #[test]
    fn collapsing_images_break_cancellation() {
        // g doubles; s moves odd numbers by 2 and fixes evens; e is the identity.
        let p = Presentation::new(
            "collapse",
            vec![
                ints("g", |x| 2 * x),
                ints("s", |x| if x % 2 == 0 { x } else { x + 2 }),
                ints("e", |x| x),
            ],
            vec![1, 2],
            2,
        )
        .unwrap();
        match p.verify_right_cancellation().unwrap() {
            CancellationResult::Fail { f1, f2, g, validated, witness_point } => {
                assert!(validated);
                assert_eq!(g, vec!["g"]);
                assert_eq!(witness_point, "1");
                assert_ne!(f1, f2);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn undefined_actions_are_domain_errors() {
        let p = Presentation::new(
            "partial",
            vec![Generator::new("h", |x: &i64| (*x < 3).then_some(x + 1))],
            vec![1, 2],
            3,
        )
        .unwrap();
        assert!(matches!(p.verify_injectivity(), Err(Error::Domain(_))));
    }
}
