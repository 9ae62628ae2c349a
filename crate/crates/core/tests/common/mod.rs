//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use exab::arrangement::Arrangement;
use exab::families;
use exab::poset::GradedPoset;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_ab1d;

/// A random central arrangement of at most `max_hyperplanes` distinct
/// hyperplanes in at most 3 dimensions, integer normals in `[-2, 2]`.
pub fn random_arrangement(rng: &mut ChaCha8Rng, max_hyperplanes: usize) -> Arrangement {
    loop {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=max_hyperplanes);
        let normals: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        // zero or parallel normals are rejected by the constructor; draw again
        if let Ok(a) = Arrangement::from_integers(dim, &normals) {
            return a;
        }
    }
}

pub fn random_arrangements(seed: u64, count: usize) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_arrangement(&mut rng, 5)).collect()
}

pub fn three_lines() -> Arrangement {
    Arrangement::from_integers(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
}

pub fn coordinate_planes() -> Arrangement {
    Arrangement::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap()
}

/// Boolean lattices up to rank 4, four uniform matroids, `Π_4` and the flats
/// lattices of 10 random arrangements.
pub fn corpus() -> Vec<(String, GradedPoset)> {
    let mut out: Vec<(String, GradedPoset)> = vec![("L".into(), families::three_lines())];
    for n in 1..=4 {
        out.push((format!("B{n}"), families::boolean_lattice(n)));
    }
    for (r, m) in [(2, 3), (2, 4), (2, 5), (3, 4)] {
        out.push((format!("U({r},{m})"), families::uniform_matroid_lattice(r, m)));
    }
    out.push(("Pi4".into(), families::partition_lattice(4)));
    for (i, a) in random_arrangements(SEED, 10).into_iter().enumerate() {
        out.push((format!("random{i}"), a.flats_lattice().unwrap().poset));
    }
    out
}

pub const THREE_LINES_POSET: &str = r#"{
  "elements": ["0", "a1", "a2", "a3", "1"],
  "covers": [["0", "a1"], ["0", "a2"], ["0", "a3"], ["a1", "1"], ["a2", "1"], ["a3", "1"]],
  "labels": {"0|a1": 1, "0|a2": 2, "0|a3": 3, "a1|1": 2, "a2|1": 1, "a3|1": 1}
}"#;

pub const THREE_LINES_BAD_LABELS: &str = r#"{
  "elements": ["0", "a1", "a2", "a3", "1"],
  "covers": [["0", "a1"], ["0", "a2"], ["0", "a3"], ["a1", "1"], ["a2", "1"], ["a3", "1"]],
  "labels": {"0|a1": 1, "0|a2": 1, "0|a3": 1, "a1|1": 1, "a2|1": 1, "a3|1": 1}
}"#;

pub const RANK0_POSET: &str = r#"{"elements": ["x"], "covers": []}"#;

pub const THREE_LINES_ARRANGEMENT: &str = r#"{"dim": 2, "normals": [[1, 0], [0, 1], [1, 1]]}"#;
pub const COORDS3_ARRANGEMENT: &str = r#"{"dim": 3, "normals": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#;
pub const ONE_HYPERPLANE: &str = r#"{"dim": 2, "normals": [[1, "1/2"]]}"#;
