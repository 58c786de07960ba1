//! The built-in group corpus, the group-file directory loader, and the
//! checksum manifest that pins the default corpus.
//!
//! The built-in corpus is a fixed, deterministic family of small permutation
//! groups: cyclic and elementary abelian groups, dihedral groups, symmetric
//! and alternating groups, the quaternion group, SL(2,3), SL(2,5), PSL(2,7),
//! the Frobenius group of order 20, and a designated list of direct products.
//! Every entry is filtered by an order bound and a degree bound; the default
//! bounds (360 / 24) yield the pinned corpus recorded in
//! `data/corpus_manifest.json`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use formcore::group::{parse_group_file, render_group_file, PermGroup};
use formcore::perm::Perm;
use formcore::{GroupError, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const DEFAULT_MAX_ORDER: u128 = 360;
pub const DEFAULT_MAX_DEGREE: usize = 24;

/// Hard ceilings for the built-in generator, independent of the runtime
/// capacity override.
pub const ORDER_LIMIT: u128 = 2000;
pub const DEGREE_LIMIT: usize = 24;

/// The checksum manifest pinning the default built-in corpus.
pub const PINNED_MANIFEST: &str = include_str!("../../../data/corpus_manifest.json");

#[derive(Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: PermGroup,
}

/// An ordered, named collection of groups plus its provenance.
#[derive(Clone)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
    source: String,
    bounds: Option<(u128, usize)>,
}

impl Corpus {
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// "builtin" or the directory the corpus was loaded from.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Generation bounds (order, degree); absent for directory corpora.
    pub fn bounds(&self) -> Option<(u128, usize)> {
        self.bounds
    }

    pub fn get(&self, name: &str) -> Option<&PermGroup> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.group)
    }
}

// ---- individual constructions ----

/// SL(2,p) acting on the p²−1 nonzero row vectors of 𝔽_p², ordered
/// lexicographically; generated by [[0,−1],[1,0]] and [[1,1],[0,1]].
fn special_linear_2(p: u64) -> PermGroup {
    let point = |x: u64, y: u64| -> u16 {
        // lexicographic rank of (x, y) among nonzero vectors
        (x * p + y - 1) as u16
    };
    let matrix_perm = |m: [[u64; 2]; 2]| -> Perm {
        let mut images = vec![0u16; (p * p - 1) as usize];
        for x in 0..p {
            for y in 0..p {
                if x == 0 && y == 0 {
                    continue;
                }
                let nx = (x * m[0][0] + y * m[1][0]) % p;
                let ny = (x * m[0][1] + y * m[1][1]) % p;
                images[point(x, y) as usize] = point(nx, ny);
            }
        }
        Perm::from_images(images).expect("matrix action permutes the vectors")
    };
    let s = matrix_perm([[0, p - 1], [1, 0]]);
    let t = matrix_perm([[1, 1], [0, 1]]);
    PermGroup::new((p * p - 1) as usize, vec![s, t]).expect("generators share the degree")
}

/// PSL(2,7) on the projective line over 𝔽₇ (seven points plus ∞),
/// generated by z ↦ z+1 and z ↦ −1/z.
fn psl_2_7() -> PermGroup {
    let t = Perm::from_images(vec![1, 2, 3, 4, 5, 6, 0, 7]).unwrap();
    let s = Perm::from_images(vec![7, 6, 3, 2, 5, 4, 1, 0]).unwrap();
    PermGroup::new(8, vec![t, s]).unwrap()
}

/// The Frobenius group of order 20: the holomorph of C₅, generated by a
/// 5-cycle and multiplication by 2 mod 5.
fn frobenius_20() -> PermGroup {
    let c = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
    let m = Perm::from_images(vec![0, 2, 4, 1, 3]).unwrap();
    PermGroup::new(5, vec![c, m]).unwrap()
}

/// Direct products included in the built-in corpus, by seed name.
///
/// The list is fixed rather than exhaustive: exhaustive pairing would mostly
/// add isomorphic duplicates (C₂×C₃ = C₆, …) and inflate every suite's
/// runtime.  S3×S3 is deliberately absent so that S3 stays the unique corpus
/// group with an S3 quotient over two trivially intersecting kernels.
const PRODUCT_PAIRS: &[(&str, &str)] = &[
    ("C2", "C4"),
    ("C4", "C4"),
    ("C3", "C9"),
    ("Q8", "C2"),
    ("Q8", "C3"),
    ("D8", "C3"),
    ("S3", "C2"),
    ("S3", "C3"),
    ("S3", "C4"),
    ("A4", "C2"),
    ("A4", "A4"),
    ("A5", "C2"),
    ("S4", "C2"),
    ("PSL27", "C2"),
];

fn seed_families(max_order: u128, max_degree: usize) -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    let mut push = |name: String, g: PermGroup| {
        if g.order() <= max_order && g.degree() <= max_degree {
            out.push((name, g));
        }
    };

    push("C1".into(), PermGroup::cyclic(1));
    for n in 2..=24usize {
        push(format!("C{n}"), PermGroup::cyclic(n));
    }
    for &(p, k) in &[(2usize, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        push(
            format!("EA{}", (p as u128).pow(k)),
            PermGroup::elementary_abelian(p, k as usize),
        );
    }
    // Dihedral groups named by order; D6 is skipped because it is S3 again.
    for n in 4..=12usize {
        push(format!("D{}", 2 * n), PermGroup::dihedral(n));
    }
    for n in 3..=6usize {
        push(format!("S{n}"), PermGroup::symmetric(n));
    }
    for n in 4..=6usize {
        push(format!("A{n}"), PermGroup::alternating(n));
    }
    push("Q8".into(), PermGroup::quaternion8());
    push("SL23".into(), special_linear_2(3));
    push("SL25".into(), special_linear_2(5));
    push("PSL27".into(), psl_2_7());
    push("F20".into(), frobenius_20());
    out
}

/// The deterministic built-in corpus within the given bounds.
///
/// Entries are sorted by (order, name); names are unique.  The default
/// bounds produce the corpus pinned by [`PINNED_MANIFEST`].
pub fn builtin_corpus(max_order: u128, max_degree: usize) -> Result<Corpus> {
    if max_order == 0 || max_order > ORDER_LIMIT {
        return Err(GroupError::Capacity {
            what: "corpus order bound",
            value: max_order,
            bound: ORDER_LIMIT,
        });
    }
    if max_degree == 0 || max_degree > DEGREE_LIMIT {
        return Err(GroupError::Capacity {
            what: "corpus degree bound",
            value: max_degree as u128,
            bound: DEGREE_LIMIT as u128,
        });
    }
    let seeds = seed_families(max_order, max_degree);
    let mut entries: Vec<CorpusEntry> = seeds
        .iter()
        .map(|(name, g)| CorpusEntry {
            name: name.clone(),
            group: g.clone(),
        })
        .collect();
    let seed_named = |name: &str| seeds.iter().find(|(n, _)| n == name).map(|(_, g)| g);
    for &(a, b) in PRODUCT_PAIRS {
        let (Some(ga), Some(gb)) = (seed_named(a), seed_named(b)) else {
            continue;
        };
        let prod = formcore::group::direct_product(ga, gb);
        if prod.order() <= max_order && prod.degree() <= max_degree {
            entries.push(CorpusEntry {
                name: format!("{a}x{b}"),
                group: prod,
            });
        }
    }
    entries.sort_by(|x, y| (x.group.order(), &x.name).cmp(&(y.group.order(), &y.name)));
    let names: BTreeSet<&str> = entries.iter().map(|e| e.name.as_str()).collect();
    if names.len() != entries.len() {
        return Err(GroupError::Integrity("corpus names are not unique".into()));
    }
    Ok(Corpus {
        entries,
        source: "builtin".into(),
        bounds: Some((max_order, max_degree)),
    })
}

/// Loads every `*.group` file of a directory, sorted by file name; the entry
/// name is the file stem.
pub fn load_dir(dir: &Path) -> Result<Corpus> {
    let rd = fs::read_dir(dir).map_err(|e| GroupError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<std::path::PathBuf> = Vec::new();
    for entry in rd {
        let entry = entry.map_err(|e| GroupError::Io(format!("{}: {e}", dir.display())))?;
        let path = entry.path();
        if path.extension().is_some_and(|x| x == "group") {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(GroupError::Io(format!(
            "no .group files in {}",
            dir.display()
        )));
    }
    let mut entries = Vec::new();
    for path in files {
        let text =
            fs::read_to_string(&path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        let group = parse_group_file(&text)
            .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("group")
            .to_string();
        entries.push(CorpusEntry { name, group });
    }
    Ok(Corpus {
        entries,
        source: dir.display().to_string(),
        bounds: None,
    })
}

/// Writes each corpus entry as `<name>.group` into `out`.
pub fn write_dir(corpus: &Corpus, out: &Path) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| GroupError::Io(format!("{}: {e}", out.display())))?;
    for entry in &corpus.entries {
        let path = out.join(format!("{}.group", entry.name));
        fs::write(&path, render_group_file(&entry.group))
            .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

// ---- manifest ----

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Manifest {
    pub schema: String,
    pub max_order: u64,
    pub max_degree: usize,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub order: u64,
    pub sha256: String,
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The checksum manifest of a corpus: one SHA-256 per serialized group file.
pub fn manifest_for(corpus: &Corpus) -> Manifest {
    let (max_order, max_degree) = corpus.bounds.unwrap_or((0, 0));
    Manifest {
        schema: "formlab-corpus/1".into(),
        max_order: max_order as u64,
        max_degree,
        entries: corpus
            .entries
            .iter()
            .map(|e| ManifestEntry {
                name: e.name.clone(),
                order: e.group.order() as u64,
                sha256: sha256_hex(&render_group_file(&e.group)),
            })
            .collect(),
    }
}

pub fn pinned_manifest() -> Result<Manifest> {
    serde_json::from_str(PINNED_MANIFEST)
        .map_err(|e| GroupError::Integrity(format!("pinned corpus manifest is unreadable: {e}")))
}

/// Checks a default-bounds built-in corpus against the pinned manifest.
pub fn verify_pinned(corpus: &Corpus) -> Result<()> {
    let pinned = pinned_manifest()?;
    let got = manifest_for(corpus);
    if got == pinned {
        return Ok(());
    }
    let detail = pinned
        .entries
        .iter()
        .zip(got.entries.iter())
        .find(|(a, b)| a != b)
        .map(|(a, b)| format!("first difference at {} vs {}", a.name, b.name))
        .unwrap_or_else(|| {
            format!(
                "entry counts differ: pinned {}, generated {}",
                pinned.entries.len(),
                got.entries.len()
            )
        });
    Err(GroupError::Integrity(format!(
        "generated corpus does not match the pinned manifest ({detail})"
    )))
}
