//! Brute-force oracles over raw multiplication tables, independent of the
//! library's search and commutator code.

#![allow(dead_code)]

use xmod::group::FiniteGroup;
use xmod::io::catalog;

pub struct Tab {
    pub n: usize,
    pub t: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl Tab {
    pub fn of(g: &FiniteGroup) -> Tab {
        let t = g.rows();
        let n = t.len();
        let inv = (0..n).map(|a| (0..n).find(|&b| t[a][b] == 0).unwrap()).collect();
        Tab { n, t, inv }
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.t[self.t[g][x]][self.inv[g]]
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.t[a][g];
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// Greedy generating set.
    pub fn gens(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        loop {
            let seen = self.closure(&gens);
            match (0..self.n).find(|&a| !seen[a]) {
                Some(a) => gens.push(a),
                None => return gens,
            }
        }
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| (0..self.n).all(|a| self.t[z][a] == self.t[a][z])).collect()
    }
}

/// Extends generator images along the Cayley graph with `step(value, image)`,
/// returning `None` on conflict.
fn extend<T: Clone + PartialEq>(
    src: &Tab,
    gens: &[usize],
    images: &[T],
    id: T,
    step: impl Fn(&T, &T) -> T,
) -> Option<Vec<T>> {
    let mut val: Vec<Option<T>> = vec![None; src.n];
    val[0] = Some(id);
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        for (g, img) in gens.iter().zip(images) {
            let b = src.t[a][*g];
            let v = step(val[a].as_ref().unwrap(), img);
            match &val[b] {
                None => {
                    val[b] = Some(v);
                    queue.push_back(b);
                }
                Some(w) if *w != v => return None,
                _ => {}
            }
        }
    }
    val.into_iter().collect()
}

fn tuples(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut k| {
        (0..len)
            .map(|_| {
                let d = k % base;
                k /= base;
                d
            })
            .collect()
    })
}

/// Every homomorphism `a -> b` as an image table, sorted.
pub fn homs(a: &Tab, b: &Tab) -> Vec<Vec<usize>> {
    let gens = a.gens();
    let mut out: Vec<Vec<usize>> = tuples(gens.len(), b.n)
        .filter_map(|imgs| extend(a, &gens, &imgs, 0, |&v, &i| b.t[v][i]))
        .filter(|m| (0..a.n).all(|x| (0..a.n).all(|y| m[a.t[x][y]] == b.t[m[x]][m[y]])))
        .collect();
    out.sort();
    out
}

pub fn auts(a: &Tab) -> Vec<Vec<usize>> {
    homs(a, a)
        .into_iter()
        .filter(|m| {
            let mut s = m.clone();
            s.sort();
            s.dedup();
            s.len() == a.n
        })
        .collect()
}

/// Every action of `b` on `x`, as tables `xi[b][x]`.
pub fn actions(b: &Tab, x: &Tab) -> Vec<Vec<Vec<usize>>> {
    let aut = auts(x);
    let gens = b.gens();
    let id: Vec<usize> = (0..x.n).collect();
    tuples(gens.len(), aut.len())
        .filter_map(|choice| {
            let imgs: Vec<Vec<usize>> = choice.iter().map(|&c| aut[c].clone()).collect();
            // xi_{v g} = xi_v . xi_g
            extend(b, &gens, &imgs, id.clone(), |v, g| g.iter().map(|&y| v[y]).collect())
        })
        .filter(|xi| {
            (0..b.n).all(|p| (0..b.n).all(|q| (0..x.n).all(|y| xi[b.t[p][q]][y] == xi[p][xi[q][y]])))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub candidates: usize,
    pub precrossed: usize,
    pub crossed: usize,
    pub normal_subobject: usize,
    pub central_extension: usize,
    pub general: usize,
}

/// Census counts from the pointwise identities.
pub fn census_counts(x: &Tab, b: &Tab) -> Counts {
    let mut c = Counts::default();
    let center = x.center();
    for d in homs(x, b) {
        let injective = (1..x.n).all(|a| d[a] != 0);
        let mut image = d.clone();
        image.sort();
        image.dedup();
        let surjective = image.len() == b.n;
        let central = (0..x.n).filter(|&a| d[a] == 0).all(|a| center.contains(&a));
        for xi in actions(b, x) {
            c.candidates += 1;
            let pcm = (0..b.n).all(|g| (0..x.n).all(|a| d[xi[g][a]] == b.conj(g, d[a])));
            let pff = (0..x.n).all(|a| (0..x.n).all(|y| xi[d[a]][y] == x.conj(a, y)));
            c.precrossed += pcm as usize;
            if pcm && pff {
                c.crossed += 1;
                if injective {
                    c.normal_subobject += 1;
                } else if surjective && central {
                    c.central_extension += 1;
                } else {
                    c.general += 1;
                }
            }
        }
    }
    c
}

pub const SEVEN: [&str; 7] = ["Z2", "Z3", "Z4", "klein4", "S3", "D4", "Q8"];

pub fn group(name: &str) -> FiniteGroup {
    catalog().groups[name].clone()
}

/// Ordered pairs from the seven-group family with `|X||B| <= 48`.
pub fn census_pairs() -> Vec<(&'static str, &'static str)> {
    let mut out = Vec::new();
    for x in SEVEN {
        for b in SEVEN {
            if group(x).order() * group(b).order() <= 48 {
                out.push((x, b));
            }
        }
    }
    out
}

pub const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/census_counts.tsv");

pub const FIXTURE_HEADER: &str = "x\tb\tcandidates\tprecrossed\tcrossed\tnormal_subobject\tcentral_extension\tgeneral";

pub fn format_row(x: &str, b: &str, c: &Counts) -> String {
    format!(
        "{x}\t{b}\t{}\t{}\t{}\t{}\t{}\t{}",
        c.candidates, c.precrossed, c.crossed, c.normal_subobject, c.central_extension, c.general
    )
}

/// Fixture rows keyed by `(x, b)`.
pub fn read_fixture() -> Vec<(String, String, Counts)> {
    let text = std::fs::read_to_string(FIXTURE).expect("census fixture");
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let n = |i: usize| f[i].parse::<usize>().unwrap();
            (
                f[0].to_string(),
                f[1].to_string(),
                Counts {
                    candidates: n(2),
                    precrossed: n(3),
                    crossed: n(4),
                    normal_subobject: n(5),
                    central_extension: n(6),
                    general: n(7),
                },
            )
        })
        .collect()
}
