use crate::certified::{CertifiedValue, Value};
use crate::error::{Error, Result};
use crate::linalg::{kernel, unit, Subspace};
use crate::ring::{Element, Ring};

use super::{annihilating_power, check_same_ring, ring_at, transfer_all, Precision};

/// Homology of the Koszul complex in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulHomology {
    pub degree: usize,
    pub length: CertifiedValue,
    /// Least `h >= 1` with `m^h H = 0` at the base order.
    pub annihilator: usize,
    /// `annihilator + max order + 1 <= D`.
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    /// Degrees `1..=r`.
    pub homology: Vec<KoszulHomology>,
}

impl KoszulReport {
    pub fn length(&self, i: usize) -> Option<&CertifiedValue> {
        self.homology.get(i.checked_sub(1)?).map(|h| &h.length)
    }

    pub fn all_finite(&self) -> bool {
        self.homology.iter().all(|h| h.finite)
    }
}

/// Wedge basis of size `i` on `r` letters, in lexicographic order.
fn subsets(r: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for j in start..r {
            cur.push(j);
            go(j + 1, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, i, &mut Vec::new(), &mut out);
    out
}

/// Images of the basis `x^s e_S` of `K_i` under
/// `d(e_S) = sum_k (-1)^k f_{S_k} e_{S \ S_k}`.
fn boundary_images(ring: &Ring, fs: &[Element], i: usize) -> Vec<Vec<u32>> {
    let dim = ring.dim();
    let field = ring.field();
    let src = subsets(fs.len(), i);
    let tgt = subsets(fs.len(), i - 1);
    let mut images = Vec::with_capacity(src.len() * dim);
    for set in &src {
        for s in 0..dim {
            let e = unit(dim, s);
            let mut img = vec![0u32; tgt.len() * dim];
            for (k, &j) in set.iter().enumerate() {
                let mut face = set.clone();
                face.remove(k);
                let b = tgt.binary_search(&face).expect("face is a subset");
                let mut prod = ring.mul_coords(&e, fs[j].coords());
                if k % 2 == 1 {
                    prod.iter_mut().for_each(|c| *c = field.neg(*c));
                }
                for (slot, c) in img[b * dim..(b + 1) * dim].iter_mut().zip(prod) {
                    *slot = field.add(*slot, c);
                }
            }
            images.push(img);
        }
    }
    images
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// `(length, annihilator)` of `H_i` read at `fs`'s ring, with cycles solved
/// modulo `m^{D + lift}`.
fn homology_at(fs: &[Element], i: usize, lift: usize) -> Result<(u64, usize)> {
    let ring = fs[0].ring().clone();
    let r = fs.len();
    let blocks = binom(r, i);
    let dim = ring.dim();
    let field = ring.field();

    let cycles = if i == 0 {
        Subspace::full(field, dim)
    } else {
        let high = ring_at(&ring, ring.order() + lift)?;
        let fs_high = transfer_all(fs, &high)?;
        let hdim = high.dim();
        let images = boundary_images(&high, &fs_high, i);
        let ker = kernel(field, binom(r, i - 1) * hdim, &images, None);
        let projected = ker.into_iter().map(|v| {
            let mut out = Vec::with_capacity(blocks * dim);
            for b in 0..blocks {
                out.extend_from_slice(&v[b * hdim..b * hdim + dim]);
            }
            out
        });
        Subspace::from_vectors(field, blocks * dim, projected)
    };
    let boundaries = if i == r {
        Subspace::zero(field, blocks * dim)
    } else {
        Subspace::from_vectors(field, blocks * dim, boundary_images(&ring, fs, i + 1))
    };
    let cycles = cycles.sum(&boundaries);
    let length = (cycles.rank() - boundaries.rank()) as u64;
    let ann = annihilating_power(&ring, blocks, &cycles, &boundaries);
    Ok((length, ann))
}

/// `H_i(f_1..f_r; R)` for `0 <= i <= r`, at orders `D` and `D + delta`.
pub fn koszul_homology(fs: &[Element], i: usize, precision: &Precision) -> Result<KoszulHomology> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidArgument("Koszul complex on an empty sequence".into()));
    };
    let ring = first.ring().clone();
    check_same_ring(&ring, fs)?;
    if i > fs.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: fs.len(),
        });
    }
    let mut readings = Vec::new();
    let mut annihilator = 0;
    for (k, order) in precision.levels(ring.order()).into_iter().enumerate() {
        let level = ring_at(&ring, order)?;
        let (len, ann) = homology_at(&transfer_all(fs, &level)?, i, precision.lift)?;
        if k == 0 {
            annihilator = ann;
        }
        readings.push((order, Value::Finite(len)));
    }
    let max_order = fs.iter().filter_map(|f| f.order()).max().unwrap_or(0);
    Ok(KoszulHomology {
        degree: i,
        length: CertifiedValue::from_levels(readings),
        annihilator,
        finite: annihilator + max_order < ring.order(),
    })
}

pub fn koszul_homology_length(fs: &[Element], i: usize, precision: &Precision) -> Result<CertifiedValue> {
    Ok(koszul_homology(fs, i, precision)?.length)
}

/// Homology in degrees `1..=r`.
pub fn koszul_report(fs: &[Element], precision: &Precision) -> Result<KoszulReport> {
    let homology = (1..=fs.len())
        .map(|i| koszul_homology(fs, i, precision))
        .collect::<Result<_>>()?;
    Ok(KoszulReport { homology })
}
