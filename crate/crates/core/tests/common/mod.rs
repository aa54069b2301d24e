//! Brute-force coset enumeration for finite modules. Nothing here calls the
//! library's linear algebra: spans, cosets, Hom sets and bilinear forms are
//! all built by listing elements.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use lochom::linalg::Mat;
use lochom::module::{FpModule, Submodule};
use lochom::ring::{Elem, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Vector = Vec<Elem>;

/// Every vector of `R^g`.
pub fn all_vectors(ring: &Ring, g: usize) -> Vec<Vector> {
    let elems = ring.elements().expect("finite ring");
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

pub fn add(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn scale(ring: &Ring, r: &Elem, a: &[Elem]) -> Vector {
    a.iter().map(|x| ring.mul(r, x)).collect()
}

pub fn reduce(ring: &Ring, a: &[Elem]) -> Vector {
    a.iter().map(|x| ring.reduce(x)).collect()
}

/// The `R`-span of some vectors, listed.
pub fn span(ring: &Ring, g: usize, gens: &[Vector]) -> HashSet<Vector> {
    let elems = ring.elements().expect("finite ring");
    let mut set: HashSet<Vector> = HashSet::from([vec![ring.zero(); g]]);
    for c in gens {
        let c = reduce(ring, c);
        let multiples: Vec<Vector> = elems.iter().map(|r| scale(ring, r, &c)).collect();
        let mut next = HashSet::new();
        for k in &set {
            for m in &multiples {
                next.insert(add(ring, k, m));
            }
        }
        set = next;
    }
    set
}

/// A finite module `R^g / K` with every coset labelled.
pub struct Enumerated {
    pub ring: Ring,
    pub gens: usize,
    pub kernel: HashSet<Vector>,
    pub label: HashMap<Vector, usize>,
    pub reps: Vec<Vector>,
}

impl Enumerated {
    pub fn new(ring: &Ring, gens: usize, relations: &[Vector]) -> Enumerated {
        let kernel = span(ring, gens, relations);
        let kvec: Vec<Vector> = kernel.iter().cloned().collect();
        let mut label = HashMap::new();
        let mut reps = Vec::new();
        for v in all_vectors(ring, gens) {
            if label.contains_key(&v) {
                continue;
            }
            for k in &kvec {
                label.insert(add(ring, &v, k), reps.len());
            }
            reps.push(v);
        }
        Enumerated { ring: ring.clone(), gens, kernel, label, reps }
    }

    pub fn of(m: &FpModule) -> Enumerated {
        let rel = m.relations();
        let cols: Vec<Vector> = (0..rel.cols()).map(|j| rel.col(j)).collect();
        Enumerated::new(m.ring(), m.gens(), &cols)
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn class(&self, v: &[Elem]) -> usize {
        self.label[&reduce(&self.ring, v)]
    }

    pub fn is_zero(&self, v: &[Elem]) -> bool {
        self.kernel.contains(&reduce(&self.ring, v))
    }

    /// Classes of the image of a library submodule.
    pub fn classes_of(&self, s: &Submodule) -> HashSet<usize> {
        let inner = Enumerated::of(s.module());
        inner.reps.iter().map(|v| self.class(&s.inclusion.apply(v))).collect()
    }

    /// `|{v : d v = 0}|` for each divisor `d` of the modulus.
    pub fn signature(&self) -> Vec<usize> {
        divisors(&self.ring)
            .iter()
            .map(|d| self.reps.iter().filter(|v| self.is_zero(&scale(&self.ring, d, v))).count())
            .collect()
    }
}

/// Divisors of the modulus, as ring elements. Over a finite principal ideal
/// ring the counts `|(0 :_M d)|` over these determine `M` up to isomorphism.
pub fn divisors(ring: &Ring) -> Vec<Elem> {
    let c = ring.cover();
    c.divisors(ring.modulus()).iter().map(|d| ring.reduce(d)).collect()
}

pub fn signature_of(m: &FpModule) -> Vec<usize> {
    Enumerated::of(m).signature()
}

/// `Hom(M, N)` as the list of generator images satisfying every relation.
pub fn hom_set(m: &FpModule, n: &Enumerated) -> Vec<Vec<Vector>> {
    let ring = m.ring();
    let rel = m.relations();
    let mut tuples: Vec<Vec<Vector>> = vec![Vec::new()];
    for _ in 0..m.gens() {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                n.reps.iter().map(move |r| {
                    let mut u = t.clone();
                    u.push(r.clone());
                    u
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .filter(|t| {
            (0..rel.cols()).all(|j| {
                let col = rel.col(j);
                let mut acc = vec![ring.zero(); n.gens];
                for (i, img) in t.iter().enumerate() {
                    acc = add(ring, &acc, &scale(ring, &ring.reduce(&col[i]), img));
                }
                n.is_zero(&acc)
            })
        })
        .collect()
}

pub fn hom_signature(m: &FpModule, n: &FpModule) -> Vec<usize> {
    let en = Enumerated::of(n);
    let set = hom_set(m, &en);
    let ring = m.ring();
    divisors(ring)
        .iter()
        .map(|d| set.iter().filter(|t| t.iter().all(|img| en.is_zero(&scale(ring, d, img)))).count())
        .collect()
}

/// Signature of `M ⊗ N` through its dual `Bil(M × N, R)`. Finite principal
/// ideal rings are self-injective, so `Hom(-, R)` preserves the
/// isomorphism type of finite modules.
pub fn tensor_signature(m: &FpModule, n: &FpModule) -> Vec<usize> {
    let ring = m.ring();
    let (gm, gn) = (m.gens(), n.gens());
    let (rm, rn) = (m.relations(), n.relations());
    let forms: Vec<Vector> = all_vectors(ring, gm * gn)
        .into_iter()
        .filter(|b| {
            let at = |i: usize, j: usize| &b[i * gn + j];
            let left = (0..rm.cols()).all(|c| {
                (0..gn).all(|j| {
                    let s = (0..gm).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.mul(&ring.reduce(&rm[(i, c)]), at(i, j))));
                    ring.is_zero(&s)
                })
            });
            let right = (0..rn.cols()).all(|c| {
                (0..gm).all(|i| {
                    let s = (0..gn).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(&ring.reduce(&rn[(j, c)]), at(i, j))));
                    ring.is_zero(&s)
                })
            });
            left && right
        })
        .collect();
    divisors(ring)
        .iter()
        .map(|d| forms.iter().filter(|b| b.iter().all(|x| ring.is_zero(&ring.mul(d, x)))).count())
        .collect()
}

/// Signature of `N / S` for a set of classes `S` of `N` closed under the
/// module operations.
pub fn quotient_signature(n: &Enumerated, sub: &HashSet<usize>) -> Vec<usize> {
    divisors(&n.ring)
        .iter()
        .map(|d| {
            let killed = n.reps.iter().filter(|v| sub.contains(&n.class(&scale(&n.ring, d, v)))).count();
            killed / sub.len()
        })
        .collect()
}

/// Rings of the fixture corpus.
pub fn fixture_rings() -> Vec<Ring> {
    let mut out: Vec<Ring> = (2..=30).chain([32, 36, 45, 48, 60, 64]).map(Ring::integers_mod).collect();
    for (p, coeffs) in [
        (2, vec![0, 0, 1]),
        (2, vec![0, 0, 0, 1]),
        (2, vec![0, 1, 1]),
        (2, vec![1, 1, 1]),
        (2, vec![0, 0, 0, 0, 1]),
        (3, vec![0, 0, 1]),
        (3, vec![1, 0, 1]),
        (5, vec![0, 0, 1]),
    ] {
        out.push(Ring::poly_mod(p, &coeffs).unwrap());
    }
    out
}

pub fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    let elems = ring.elements().expect("finite ring");
    elems[rng.gen_range(0..elems.len())].clone()
}

/// Modules of the fixture corpus over one ring: cyclics, `R²` and seeded
/// random presentations, kept to at most 4096 vectors in `R^g`.
pub fn fixture_modules(ring: &Ring, seed: u64) -> Vec<FpModule> {
    let c = ring.cover();
    let size = ring.cardinality().unwrap() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ size as u64);
    let mut out = vec![FpModule::free(ring, 1)];
    for d in c.divisors(ring.modulus()).iter().filter(|d| !c.is_unit(d) && *d != ring.modulus()).take(3) {
        out.push(FpModule::cyclic_elem(ring, d));
    }
    let max_gens = if size * size <= 4096 { 2 } else { 1 };
    for _ in 0..4 {
        let g = rng.gen_range(1..=max_gens);
        let r = rng.gen_range(1..=2);
        let rows = (0..g).map(|_| (0..r).map(|_| random_elem(ring, &mut rng)).collect()).collect();
        out.push(FpModule::from_presentation(ring, &Mat::from_rows(c, rows)).unwrap());
    }
    out
}

pub fn ideal_generators(ring: &Ring) -> Vec<Elem> {
    let c = ring.cover();
    c.divisors(ring.modulus()).iter().map(|d| ring.reduce(d)).collect()
}

#[derive(Debug, Default)]
pub struct OracleSummary {
    pub comparisons: usize,
    pub failures: Vec<String>,
}

impl OracleSummary {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.comparisons += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Library constructions against enumeration over the whole fixture corpus.
pub fn enumeration_oracle() -> OracleSummary {
    use lochom::lab::sample_morphisms;
    use lochom::module::{colon_submodule, hom_module, ideal_multiple, morphism_parts, tensor_module};
    use lochom::ring::ideal_of;

    let mut s = OracleSummary::default();
    for ring in fixture_rings() {
        let size = ring.cardinality().unwrap() as usize;
        let modules = fixture_modules(&ring, 2024);
        let enums: Vec<Enumerated> = modules.iter().map(Enumerated::of).collect();
        for (m, e) in modules.iter().zip(&enums) {
            s.expect(m.cardinality() == Some(e.size() as u128), || format!("|{}| over {ring}", m.describe()));
            for g in ideal_generators(&ring) {
                let ideal = ideal_of(&ring, &[ring.element(&g).unwrap()]).unwrap();
                let colon: HashSet<usize> = e
                    .reps
                    .iter()
                    .filter(|v| e.is_zero(&scale(&ring, &g, v)))
                    .map(|v| e.class(v))
                    .collect();
                let lib = e.classes_of(&colon_submodule(m, &ideal).unwrap());
                s.expect(lib == colon, || format!("(0 : {ideal}) in {} over {ring}", m.describe()));
                let multiple: HashSet<usize> = e.reps.iter().map(|v| e.class(&scale(&ring, &g, v))).collect();
                let lib = e.classes_of(&ideal_multiple(&ideal, m).unwrap());
                s.expect(lib == multiple, || format!("{ideal} {} over {ring}", m.describe()));
            }
        }
        for (i, m) in modules.iter().enumerate() {
            for (j, n) in modules.iter().enumerate() {
                let en = &enums[j];
                let iso = m.is_isomorphic(n).unwrap();
                s.expect(iso == (enums[i].signature() == en.signature()), || {
                    format!("isomorphism {} vs {} over {ring}", m.describe(), n.describe())
                });
                if en.size().pow(m.gens() as u32) <= 4096 {
                    let h = hom_module(m, n).unwrap();
                    s.expect(signature_of(&h.module) == hom_signature(m, n), || {
                        format!("Hom({}, {}) over {ring}", m.describe(), n.describe())
                    });
                    for f in sample_morphisms(m, n).unwrap() {
                        let parts = morphism_parts(&f);
                        let image: HashSet<usize> = enums[i].reps.iter().map(|v| en.class(&f.apply(v))).collect();
                        let kernel: HashSet<usize> = enums[i]
                            .reps
                            .iter()
                            .filter(|v| en.is_zero(&f.apply(v)))
                            .map(|v| enums[i].class(v))
                            .collect();
                        s.expect(enums[i].classes_of(&parts.kernel) == kernel, || {
                            format!("kernel of {} over {ring}", f.matrix)
                        });
                        s.expect(en.classes_of(&parts.image) == image, || format!("image of {} over {ring}", f.matrix));
                        s.expect(signature_of(&parts.cokernel) == quotient_signature(en, &image), || {
                            format!("cokernel of {} over {ring}", f.matrix)
                        });
                    }
                }
                if size.pow((m.gens() * n.gens()) as u32) <= 50_000 {
                    let t = tensor_module(m, n).unwrap();
                    s.expect(signature_of(&t.module) == tensor_signature(m, n), || {
                        format!("{} ⊗ {} over {ring}", m.describe(), n.describe())
                    });
                }
            }
        }
    }
    s
}
