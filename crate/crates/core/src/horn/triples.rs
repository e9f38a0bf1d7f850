use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::HornError;

/// One triple `(I, J, K)` of strictly increasing 1-based index sets of common
/// cardinality `r`, satisfying the sum identity `ΣI + ΣJ = ΣK + r(r+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HornTriple {
    pub r: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl HornTriple {
    pub fn new(i: Vec<usize>, j: Vec<usize>, k: Vec<usize>, n: usize) -> Result<Self, HornError> {
        let r = i.len();
        let triple = Self { r, i, j, k };
        triple.validate(n)?;
        Ok(triple)
    }

    pub fn validate(&self, n: usize) -> Result<(), HornError> {
        if self.r == 0 || self.r >= n {
            return Err(HornError::InvalidTriple { reason: format!("cardinality {} outside 1..={}", self.r, n.saturating_sub(1)) });
        }
        for (name, set) in [("I", &self.i), ("J", &self.j), ("K", &self.k)] {
            if set.len() != self.r {
                return Err(HornError::InvalidTriple { reason: format!("{name} has length {}, expected {}", set.len(), self.r) });
            }
            for w in set.windows(2) {
                if w[0] >= w[1] {
                    return Err(HornError::InvalidTriple { reason: format!("{name} is not strictly increasing") });
                }
            }
            if set.first().is_some_and(|&x| x < 1) || set.last().is_some_and(|&x| x > n) {
                return Err(HornError::InvalidTriple { reason: format!("{name} has an index outside 1..={n}") });
            }
        }
        let (si, sj, sk): (usize, usize, usize) = (self.i.iter().sum(), self.j.iter().sum(), self.k.iter().sum());
        if si + sj != sk + self.r * (self.r + 1) / 2 {
            return Err(HornError::InvalidTriple {
                reason: format!("sum identity fails: {si} + {sj} ≠ {sk} + {}", self.r * (self.r + 1) / 2),
            });
        }
        Ok(())
    }
}

/// The full system `∪_{r=1}^{n−1} T^n_r`, triples sorted by `(r, I, J, K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornSystem {
    pub n: usize,
    pub triples: Vec<HornTriple>,
}

impl HornSystem {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples_of_cardinality(&self, r: usize) -> impl Iterator<Item = &HornTriple> {
        self.triples.iter().filter(move |t| t.r == r)
    }
}

impl<'de> Deserialize<'de> for HornSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            triples: Vec<HornTriple>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.n < 1 {
            return Err(serde::de::Error::custom("n must be at least 1"));
        }
        for t in &raw.triples {
            t.validate(raw.n).map_err(serde::de::Error::custom)?;
        }
        let mut triples = raw.triples;
        triples.sort();
        Ok(HornSystem { n: raw.n, triples })
    }
}

fn memo() -> &'static Mutex<HashMap<usize, Arc<HornSystem>>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<HornSystem>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Horn system for `n`, memoized process-wide. `n = 1` yields the empty
/// system (there is no `1 ≤ r ≤ 0`).
pub fn horn_triples(n: usize) -> Arc<HornSystem> {
    assert!(n >= 1, "require n ≥ 1");
    if let Some(hit) = memo().lock().expect("memo lock").get(&n) {
        return hit.clone();
    }
    // Warm lower levels first so `compute` finds them without re-entering.
    for r in 2..n {
        let _ = horn_triples(r);
    }
    let system = Arc::new(compute(n));
    memo().lock().expect("memo lock").entry(n).or_insert(system).clone()
}

fn compute(n: usize) -> HornSystem {
    let mut triples = Vec::new();
    for r in 1..n {
        let sets = subsets(n, r);
        let lower: Option<Arc<HornSystem>> = (r >= 2).then(|| horn_triples(r));
        let target = r * (r + 1) / 2;
        for i in &sets {
            let si: usize = i.iter().sum();
            for j in &sets {
                let sj: usize = j.iter().sum();
                if si + sj < target {
                    continue;
                }
                let sk = si + sj - target;
                for k in &sets {
                    if k.iter().sum::<usize>() != sk {
                        continue;
                    }
                    let keep = match &lower {
                        None => true,
                        Some(sys) => sys.triples.iter().all(|t| position_inequality_holds(t, i, j, k)),
                    };
                    if keep {
                        triples.push(HornTriple { r, i: i.clone(), j: j.clone(), k: k.clone() });
                    }
                }
            }
        }
    }
    triples.sort();
    HornSystem { n, triples }
}

/// `Σ_{f∈F} i_f + Σ_{g∈G} j_g ≤ Σ_{h∈H} k_h + p(p+1)/2` where `i_f` is the
/// `f`-th smallest element of `I` (1-based positions).
fn position_inequality_holds(fgh: &HornTriple, i: &[usize], j: &[usize], k: &[usize]) -> bool {
    let p = fgh.r;
    let lhs: usize = fgh.i.iter().map(|&f| i[f - 1]).sum::<usize>() + fgh.j.iter().map(|&g| j[g - 1]).sum::<usize>();
    let rhs: usize = fgh.k.iter().map(|&h| k[h - 1]).sum::<usize>() + p * (p + 1) / 2;
    lhs <= rhs
}

/// All strictly increasing `r`-subsets of `1..=n`, lexicographic.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let remaining = r - cur.len();
        for x in start..=n + 1 - remaining {
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(1, n, r, &mut cur, &mut out);
    out
}

/// The Horn system for `n`, persisted as `T_{n}.json` under `dir`. Every
/// level `2..=n` missing from the cache is computed and written, so repeated
/// runs are pure reads; file bytes are stable across runs.
pub fn horn_triples_with_cache(n: usize, dir: &Path) -> Result<Arc<HornSystem>, HornError> {
    assert!(n >= 1, "require n ≥ 1");
    std::fs::create_dir_all(dir)?;
    for level in (2..=n).rev() {
        let path = dir.join(format!("T_{level}.json"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            let system: HornSystem = serde_json::from_str(&text)?;
            if system.n != level {
                return Err(HornError::InvalidTriple { reason: format!("cache file {path:?} holds n = {}", system.n) });
            }
            memo().lock().expect("memo lock").entry(level).or_insert_with(|| Arc::new(system));
        }
    }
    let system = horn_triples(n);
    for level in 2..=n {
        let path = dir.join(format!("T_{level}.json"));
        if !path.exists() {
            let bytes = serde_json::to_vec(&*horn_triples(level)).expect("serializable");
            std::fs::write(&path, bytes)?;
        }
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_empty() {
        assert!(horn_triples(1).is_empty());
    }

    #[test]
    fn n2_has_exactly_three_triples() {
        let sys = horn_triples(2);
        let expect = vec![
            HornTriple { r: 1, i: vec![1], j: vec![1], k: vec![1] },
            HornTriple { r: 1, i: vec![1], j: vec![2], k: vec![2] },
            HornTriple { r: 1, i: vec![2], j: vec![1], k: vec![2] },
        ];
        assert_eq!(sys.triples, expect);
    }

    #[test]
    fn n3_r1_has_six_triples() {
        let sys = horn_triples(3);
        assert_eq!(sys.triples_of_cardinality(1).count(), 6);
    }

    #[test]
    fn triples_satisfy_sum_identity() {
        for n in 2..=6 {
            let sys = horn_triples(n);
            for t in &sys.triples {
                t.validate(n).unwrap();
            }
        }
    }

    #[test]
    fn totals_match_the_classical_counts() {
        // 3, 12, 41, 142, 522 triples for n = 2..=6.
        let expect = [3usize, 12, 41, 142, 522];
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(horn_triples(i + 2).len(), want, "n = {}", i + 2);
        }
    }

    #[test]
    fn cardinality_counts_are_symmetric() {
        // |T^n_r| = |T^n_{n−r}| (swap the roles of rows and columns).
        for n in 3..=6 {
            let sys = horn_triples(n);
            for r in 1..n {
                assert_eq!(
                    sys.triples_of_cardinality(r).count(),
                    sys.triples_of_cardinality(n - r).count(),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn invalid_triples_rejected() {
        assert!(HornTriple::new(vec![1], vec![1], vec![2], 2).is_err()); // sum identity
        assert!(HornTriple::new(vec![2, 1], vec![1, 2], vec![1, 2], 3).is_err()); // not increasing
        assert!(HornTriple::new(vec![1, 4], vec![1, 2], vec![1, 2], 3).is_err()); // out of range
    }

    #[test]
    fn json_shape() {
        let sys = horn_triples(2);
        let text = serde_json::to_string(&*sys).unwrap();
        assert!(text.starts_with("{\"n\":2,\"triples\":[{\"r\":1,\"I\":[1],\"J\":[1],\"K\":[1]}"));
        let back: HornSystem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, *sys);
    }

    #[test]
    fn deserialize_rejects_corrupt_triples() {
        let text = r#"{"n":2,"triples":[{"r":1,"I":[1],"J":[1],"K":[2]}]}"#;
        assert!(serde_json::from_str::<HornSystem>(text).is_err());
    }

    #[test]
    fn disk_cache_round_trip_is_bit_stable() {
        let dir = tempfile::tempdir().unwrap();
        let first = horn_triples_with_cache(4, dir.path()).unwrap();
        let bytes1 = std::fs::read(dir.path().join("T_4.json")).unwrap();
        // Re-read through the cache; file must not change.
        let second = horn_triples_with_cache(4, dir.path()).unwrap();
        let bytes2 = std::fs::read(dir.path().join("T_4.json")).unwrap();
        assert_eq!(first, second);
        assert_eq!(bytes1, bytes2);
        assert!(dir.path().join("T_3.json").exists());
        assert!(dir.path().join("T_2.json").exists());
    }
}
