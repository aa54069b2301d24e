use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Mat};
use crate::module::{kernel_generators, lift_relations, prune_generators, reduce_mat, FpModule, Morphism};
use crate::ring::Elem;

/// `… → F_2 → F_1 → F_0 → M → 0`, truncated at `length` unless it ends
/// earlier (then `finite` is set and all later terms are zero).
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: FpModule,
    pub ranks: Vec<usize>,
    /// `differentials[j-1]` is `d_j : F_j → F_(j-1)`.
    pub differentials: Vec<Mat>,
    /// `F_0 → M`, in terms of the generators of `target`.
    pub augmentation: Mat,
    pub length: usize,
    pub finite: bool,
}

impl Resolution {
    pub fn rank(&self, j: usize) -> usize {
        self.ranks.get(j).copied().unwrap_or(0)
    }

    /// `d_j` for any `j ≥ 1`, zero-shaped past the end.
    pub fn differential(&self, j: usize) -> Mat {
        assert!(j >= 1);
        match self.differentials.get(j - 1) {
            Some(d) => d.clone(),
            None => Mat::zeros(self.target.cover(), self.rank(j - 1), self.rank(j)),
        }
    }

    /// The `j`-th syzygy `im d_j ≅ F_j / im d_(j+1)`, with `Ω_0 = M`.
    pub fn syzygy(&self, j: usize) -> FpModule {
        if j == 0 {
            return self.target.clone();
        }
        FpModule::build(self.target.ring(), self.differential(j + 1))
    }
}

pub fn free_resolution(m: &FpModule, length: usize) -> Resolution {
    let ring = m.ring();
    let s = m.simplify();
    // drop relations that vanish in R
    let d1 = prune_generators(ring, s.module.relations());
    let mut ranks = vec![s.module.gens()];
    let mut differentials = Vec::new();
    let mut finite = false;
    let mut cur = d1;
    for _ in 0..length {
        if cur.cols() == 0 {
            finite = true;
            break;
        }
        ranks.push(cur.cols());
        let next = kernel_generators(ring, &cur);
        differentials.push(cur);
        cur = next;
    }
    if cur.cols() == 0 {
        finite = true;
    }
    Resolution {
        target: m.clone(),
        ranks,
        differentials,
        augmentation: s.from,
        length,
        finite,
    }
}

/// Solves `a x ≡ b` column by column modulo `extra` (extra relations in the
/// target of `a`).
fn solve_cols(a: &Mat, extra: &Mat, b: &Mat) -> Result<Mat> {
    let n = a.cols();
    let snf = smith_normal_form(&a.hcat(extra));
    let cols = (0..b.cols())
        .map(|j| {
            snf.solve(&b.col(j))
                .map(|x| x[..n].to_vec())
                .ok_or_else(|| Error::Invariant("chain map lift has no solution".into()))
        })
        .collect::<Result<Vec<Vec<Elem>>>>()?;
    Ok(Mat::from_cols(a.cover(), n, &cols))
}

/// Degreewise lifts `f_j : F_j → F'_j` of `p : M → M'` for `j ≤ top`.
pub fn lift_chain_map(p: &Morphism, src: &Resolution, tgt: &Resolution, top: usize) -> Result<Vec<Mat>> {
    let ring = p.domain.ring();
    let c = ring.cover();
    let mut lifts = Vec::with_capacity(top + 1);
    // ε' f_0 = p ε in M'
    let rhs = p.matrix.mul(&src.augmentation);
    let f0 = solve_cols(&tgt.augmentation, &lift_relations(ring, p.codomain.relations()), &rhs)?;
    lifts.push(reduce_mat(ring, &f0));
    let modulus = |rows: usize| lift_relations(ring, &Mat::zeros(c, rows, 0));
    for j in 1..=top {
        let rhs = lifts[j - 1].mul(&src.differential(j));
        let dj = tgt.differential(j);
        let f = solve_cols(&dj, &modulus(dj.rows()), &rhs)?;
        debug_assert!(reduce_mat(ring, &dj.mul(&f).sub(&rhs)).is_zero());
        lifts.push(reduce_mat(ring, &f));
    }
    Ok(lifts)
}
