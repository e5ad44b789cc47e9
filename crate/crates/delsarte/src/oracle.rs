//! Exhaustive ground truth for tiny lengths.
//!
//! `exact_max_code` computes A(n, d) — the largest binary code of length n
//! and minimum distance d — by branch-and-bound clique search over the
//! compatibility graph, for n up to 8. Every bound produced elsewhere in the
//! crate must dominate these numbers, which is what makes them useful: they
//! are computed from the definition alone, with no transform machinery
//! anywhere near the search.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::{rat, Rat};

pub const MAX_ORACLE_N: usize = 8;

/// The length-8 searches are expensive enough to be worth running once per
/// process; everything is deterministic, so caching is invisible.
fn cache() -> &'static Mutex<HashMap<(usize, usize), CodeSearchResult>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), CodeSearchResult>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// 256-bit set over vertex indices; enough for every candidate set that a
/// length-8 search can produce.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct B256([u64; 4]);

impl B256 {
    const EMPTY: Self = B256([0; 4]);

    fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index; only meaningful on nonempty sets.
    fn first(&self) -> usize {
        for (w, &bits) in self.0.iter().enumerate() {
            if bits != 0 {
                return (w << 6) | bits.trailing_zeros() as usize;
            }
        }
        usize::MAX
    }

    fn and(&self, other: &Self) -> Self {
        B256([
            self.0[0] & other.0[0],
            self.0[1] & other.0[1],
            self.0[2] & other.0[2],
            self.0[3] & other.0[3],
        ])
    }

    fn and_not(&self, other: &Self) -> Self {
        B256([
            self.0[0] & !other.0[0],
            self.0[1] & !other.0[1],
            self.0[2] & !other.0[2],
            self.0[3] & !other.0[3],
        ])
    }
}

#[derive(Clone, Debug)]
pub struct CodeSearchResult {
    pub n: usize,
    pub d: usize,
    pub max_size: u64,
    /// One optimal code, as word values. Always contains the zero word.
    pub witness: Vec<u64>,
    /// Search-tree nodes expanded; zero when a closed form was used.
    pub nodes: u64,
}

/// Suffix-indexed branch and bound in the style of Östergård's cliquer: with
/// `c[i]` the clique number of the index suffix `{i, …, m-1}`, the best
/// clique through vertex `i` inside that suffix exceeds `c[i+1]` by at most
/// one, so each outer iteration may stop at its first improvement, and
/// `size + c[j] ≤ best` prunes whole subtrees during the inner search.
struct Search<'a> {
    adj: &'a [B256],
    c: Vec<usize>,
    cur: Vec<usize>,
    best: Vec<usize>,
    found: bool,
    nodes: u64,
}

impl Search<'_> {
    fn sub(&mut self, cand: B256, size: usize) {
        self.nodes += 1;
        let best_len = self.best.len();
        if size + cand.count() <= best_len {
            return;
        }
        if size + self.c[cand.first()] <= best_len {
            return; // everything here lives in the suffix from the first index
        }

        // greedy coloring by peeling independent sets off the candidates
        // with bitset sweeps; a clique takes at most one vertex per class,
        // so `size + color` bounds every branch. The order comes out sorted
        // by (color, index) by construction.
        let mut order = [(0u16, 0u16); 256];
        let mut len = 0usize;
        let mut rest = cand;
        let mut color = 0u16;
        while !rest.is_empty() {
            let mut avail = rest;
            while !avail.is_empty() {
                let v = avail.first();
                avail = avail.and_not(&self.adj[v]);
                avail.remove(v);
                rest.remove(v);
                order[len] = (color, v as u16);
                len += 1;
            }
            color += 1;
        }
        let order = &order[..len];

        let mut local = cand;
        for &(color, v) in order.iter().rev() {
            if size + color as usize + 1 <= self.best.len() {
                return; // colors only decrease from here on
            }
            let v = v as usize;
            self.cur.push(v);
            let next = local.and(&self.adj[v]);
            if next.is_empty() {
                if size + 1 > self.best.len() {
                    self.best = self.cur.clone();
                    self.found = true;
                }
            } else {
                self.sub(next, size + 1);
            }
            self.cur.pop();
            if self.found {
                return;
            }
            local.remove(v);
        }
    }

    fn run(&mut self, m: usize) {
        for i in (0..m).rev() {
            self.found = false;
            let mut cand = self.adj[i];
            for k in 0..=i {
                cand.remove(k);
            }
            if cand.is_empty() {
                if self.best.is_empty() {
                    self.best = vec![i];
                }
            } else {
                self.cur.push(i);
                self.sub(cand, 1);
                self.cur.pop();
            }
            self.c[i] = self.best.len();
        }
    }
}

pub fn exact_max_code(n: usize, d: usize) -> Result<CodeSearchResult> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    if n > MAX_ORACLE_N {
        return Err(Error::TooLarge(format!(
            "exhaustive search at n = {n} (limit {MAX_ORACLE_N})"
        )));
    }
    if let Some(hit) = cache().lock().unwrap().get(&(n, d)) {
        return Ok(hit.clone());
    }
    let total: u64 = 1u64 << n;
    if d == 1 {
        // any two distinct words already differ somewhere
        return Ok(CodeSearchResult {
            n,
            d,
            max_size: total,
            witness: (0..total).collect(),
            nodes: 0,
        });
    }
    if d == 2 {
        // even-weight words do it, and puncturing any coordinate injects a
        // distance-2 code into {0,1}^(n-1), so 2^(n-1) is also an upper bound
        let witness: Vec<u64> = (0..total).filter(|w| w.count_ones() % 2 == 0).collect();
        let max_size = witness.len() as u64;
        return Ok(CodeSearchResult { n, d, max_size, witness, nodes: 0 });
    }

    // Translate so the zero word is in the code, then split on the minimum
    // nonzero codeword weight w: a coordinate permutation moves that word to
    // the prefix 1^w, and every further codeword has weight ≥ w, distance
    // ≥ d from both fixed words. Each piece is a smaller, two-levels
    // shallower clique search than fixing the zero word alone.
    let mut witness: Vec<u64> = vec![0];
    let mut nodes = 0u64;
    for w in d..=n {
        let pw: u64 = (1 << w) - 1;
        let mut verts: Vec<u64> = (0..total)
            .filter(|&v| {
                v != pw
                    && v.count_ones() as usize >= w
                    && (v ^ pw).count_ones() as usize >= d
            })
            .collect();
        // heavier words first; measurably the best base order for the
        // suffix bound on these graphs
        verts.sort_by_key(|&v| (std::cmp::Reverse(v.count_ones()), v));
        let m = verts.len();
        let mut adj = vec![B256::EMPTY; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && (verts[i] ^ verts[j]).count_ones() as usize >= d {
                    adj[i].insert(j);
                }
            }
        }
        let mut search = Search {
            adj: &adj,
            c: vec![0; m + 1],
            cur: Vec::new(),
            best: Vec::new(),
            found: false,
            nodes: 0,
        };
        search.run(m);
        nodes += search.nodes;
        if 2 + search.best.len() > witness.len() {
            witness = vec![0, pw];
            witness.extend(search.best.iter().map(|&i| verts[i]));
        }
    }
    witness.sort_unstable();
    let result = CodeSearchResult {
        n,
        d,
        max_size: witness.len() as u64,
        witness,
        nodes,
    };
    cache().lock().unwrap().insert((n, d), result.clone());
    Ok(result)
}

/// A(n, d) for every d from 1 to n.
pub fn exact_table(n: usize) -> Result<Vec<CodeSearchResult>> {
    (1..=n).map(|d| exact_max_code(n, d)).collect()
}

pub fn table_csv(rows: &[CodeSearchResult]) -> String {
    let mut out = String::from("n,d,max_size,nodes\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.d, r.max_size, r.nodes));
    }
    out
}

/// `max_size` as a rational, for comparisons against exact LP optima.
pub fn size_as_rat(r: &CodeSearchResult) -> Rat {
    rat(r.max_size as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_witness(r: &CodeSearchResult) {
        assert_eq!(r.witness.len() as u64, r.max_size);
        assert!(r.witness.contains(&0));
        for (a, &u) in r.witness.iter().enumerate() {
            for &v in &r.witness[a + 1..] {
                assert!(
                    (u ^ v).count_ones() as usize >= r.d,
                    "witness for ({}, {}) has close pair {u:#b}, {v:#b}",
                    r.n,
                    r.d
                );
            }
        }
    }

    #[test]
    fn matches_published_values_up_to_n_7() {
        let want: [&[u64]; 7] = [
            &[2],
            &[4, 2],
            &[8, 4, 2],
            &[16, 8, 2, 2],
            &[32, 16, 4, 2, 2],
            &[64, 32, 8, 4, 2, 2],
            &[128, 64, 16, 8, 2, 2, 2],
        ];
        for (n, row) in want.iter().enumerate().map(|(i, r)| (i + 1, r)) {
            let got = exact_table(n).unwrap();
            for (r, &expect) in got.iter().zip(row.iter()) {
                assert_eq!(r.max_size, expect, "A({n}, {})", r.d);
                check_witness(r);
            }
        }
    }

    #[test]
    fn matches_published_values_at_n_8() {
        let want = [256u64, 128, 20, 16, 4, 2, 2, 2];
        let got = exact_table(8).unwrap();
        for (r, &expect) in got.iter().zip(want.iter()) {
            assert_eq!(r.max_size, expect, "A(8, {})", r.d);
            check_witness(r);
        }
    }

    #[test]
    fn search_is_deterministic() {
        let a = exact_max_code(7, 3).unwrap();
        let b = exact_max_code(7, 3).unwrap();
        assert_eq!(a.max_size, 16);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes, b.nodes);
    }

    #[test]
    fn closed_forms_skip_the_search() {
        let r = exact_max_code(6, 1).unwrap();
        assert_eq!((r.max_size, r.nodes), (64, 0));
        let r = exact_max_code(6, 2).unwrap();
        assert_eq!((r.max_size, r.nodes), (32, 0));
        check_witness(&r);
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(exact_max_code(9, 3).is_err());
        assert!(exact_max_code(0, 1).is_err());
        assert!(exact_max_code(5, 0).is_err());
        assert!(exact_max_code(5, 6).is_err());
    }

    #[test]
    fn never_exceeds_the_lp_optimum() {
        use crate::fourier::Cube;
        use crate::lp::lp_optimum;
        for n in 4..=8usize {
            let cube = Cube::new(n);
            for d in 1..=n {
                let code = exact_max_code(n, d).unwrap();
                let lp = lp_optimum(&cube, d).unwrap();
                assert!(
                    size_as_rat(&code) <= lp.optimum,
                    "A({n}, {d}) = {} above LP bound {}",
                    code.max_size,
                    lp.optimum
                );
            }
        }
    }

    #[test]
    fn csv_shape() {
        let rows = exact_table(4).unwrap();
        let csv = table_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,d,max_size,nodes"));
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("4,1,16,"));
    }
}
