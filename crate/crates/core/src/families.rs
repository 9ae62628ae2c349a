//! Standard families of graded posets used as examples and test corpora.

use crate::poset::GradedPoset;

fn subset_id(mask: u32, m: usize) -> String {
    let items: Vec<String> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn build(elements: Vec<String>, covers: Vec<(String, String)>) -> GradedPoset {
    GradedPoset::new(&elements, &covers).expect("family member is a valid graded poset")
}

/// The rank-2 lattice `0 < a1, a2, a3 < 1` (flats of three lines through the
/// origin in the plane).
pub fn three_lines() -> GradedPoset {
    let elements = ["0", "a1", "a2", "a3", "1"].map(String::from).to_vec();
    let mut covers = Vec::new();
    for a in ["a1", "a2", "a3"] {
        covers.push(("0".to_string(), a.to_string()));
        covers.push((a.to_string(), "1".to_string()));
    }
    build(elements, covers)
}

/// The chain `0 < 1 < … < n`.
pub fn chain(n: usize) -> GradedPoset {
    let elements: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let covers = (0..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    build(elements, covers)
}

/// The Boolean lattice `B_n` of subsets of `{0, …, n-1}`; ids look like `{0,2}`.
pub fn boolean_lattice(n: usize) -> GradedPoset {
    assert!(n < 16);
    let elements: Vec<String> = (0..1u32 << n).map(|s| subset_id(s, n)).collect();
    let mut covers = Vec::new();
    for s in 0..1u32 << n {
        for i in 0..n {
            if s >> i & 1 == 0 {
                covers.push((subset_id(s, n), subset_id(s | 1 << i, n)));
            }
        }
    }
    build(elements, covers)
}

/// The lattice of flats of the uniform matroid `U_{r,m}`: all subsets of
/// `{0, …, m-1}` of size below `r`, plus the whole ground set on top.
pub fn uniform_matroid_lattice(r: usize, m: usize) -> GradedPoset {
    assert!(1 <= r && r <= m && m < 16);
    let full = (1u32 << m) - 1;
    let flats: Vec<u32> = (0..=full)
        .filter(|s| (s.count_ones() as usize) < r || *s == full)
        .collect();
    let rank = |s: u32| if s == full { r } else { s.count_ones() as usize };
    let elements = flats.iter().map(|&s| subset_id(s, m)).collect();
    let mut covers = Vec::new();
    for &s in &flats {
        for &t in &flats {
            if s & t == s && s != t && rank(t) == rank(s) + 1 {
                covers.push((subset_id(s, m), subset_id(t, m)));
            }
        }
    }
    build(elements, covers)
}

/// The lattice of set partitions of `{1, …, n}` ordered by refinement, with
/// the discrete partition at the bottom. Ids list blocks joined by `-`,
/// e.g. `12-3-4`.
pub fn partition_lattice(n: usize) -> GradedPoset {
    assert!((1..=9).contains(&n));
    let partitions = set_partitions(n);
    let id = |p: &Vec<Vec<usize>>| {
        p.iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("-")
    };
    let elements = partitions.iter().map(id).collect();
    let mut covers = Vec::new();
    for p in &partitions {
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let mut q: Vec<Vec<usize>> = Vec::new();
                for (k, b) in p.iter().enumerate() {
                    if k == j {
                        continue;
                    }
                    let mut b = b.clone();
                    if k == i {
                        b.extend(&p[j]);
                        b.sort();
                    }
                    q.push(b);
                }
                q.sort();
                covers.push((id(p), id(&q)));
            }
        }
    }
    build(elements, covers)
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for x in 1..=n {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    for p in &mut out {
        p.sort();
    }
    out
}

/// A small mixed corpus for unit tests: rank 0 and 1, chains, `B_1..B_3`,
/// the three-line lattice and `U_{2,4}`.
pub fn small_corpus() -> Vec<(String, GradedPoset)> {
    vec![
        ("chain0".into(), chain(0)),
        ("chain1".into(), chain(1)),
        ("chain3".into(), chain(3)),
        ("B1".into(), boolean_lattice(1)),
        ("B2".into(), boolean_lattice(2)),
        ("B3".into(), boolean_lattice(3)),
        ("L".into(), three_lines()),
        ("U24".into(), uniform_matroid_lattice(2, 4)),
    ]
}
