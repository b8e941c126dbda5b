//! First homology of `N_g` over `Z/2` and `Z`, induced matrices, and the
//! isometry group of the mod-2 intersection form.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Class in `H_1(N_g; Z/2)` as a bit vector over the basis `x̄_1..x̄_g`
/// (bit `i-1` is the coefficient of `x̄_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyZ2 {
    genus: usize,
    bits: u64,
}

impl HomologyZ2 {
    pub fn new(genus: usize, bits: u64) -> HomologyZ2 {
        assert!(genus <= 64);
        let mask = if genus == 64 {
            u64::MAX
        } else {
            (1u64 << genus) - 1
        };
        HomologyZ2 {
            genus,
            bits: bits & mask,
        }
    }

    pub fn zero(genus: usize) -> HomologyZ2 {
        HomologyZ2::new(genus, 0)
    }

    pub fn basis(genus: usize, i: usize) -> HomologyZ2 {
        HomologyZ2::new(genus, 1 << (i - 1))
    }

    /// Sum of the listed basis vectors (1-based indices).
    pub fn from_indices(genus: usize, idx: &[usize]) -> HomologyZ2 {
        let mut b = 0u64;
        for &i in idx {
            b ^= 1 << (i - 1);
        }
        HomologyZ2::new(genus, b)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn add(&self, o: &HomologyZ2) -> HomologyZ2 {
        HomologyZ2::new(self.genus, self.bits ^ o.bits)
    }

    /// Self-pairing; 0 exactly for classes of two-sided curves.
    pub fn self_pairing(&self) -> u8 {
        (self.bits.count_ones() & 1) as u8
    }
}

impl fmt::Display for HomologyZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..self.genus)
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| format!("x{}", i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Mod-2 intersection pairing with Gram matrix the identity.
pub fn intersection_mod2(c1: &HomologyZ2, c2: &HomologyZ2) -> Result<u8> {
    if c1.genus != c2.genus {
        return Err(Error::LengthMismatch(c1.genus, c2.genus));
    }
    Ok(((c1.bits & c2.bits).count_ones() & 1) as u8)
}

/// Class in `Z^g / <2(x_1+…+x_g)>`, stored with first coordinate in {0,1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyZ(Vec<i64>);

impl HomologyZ {
    pub fn canonical(mut coords: Vec<i64>) -> HomologyZ {
        if let Some(&first) = coords.first() {
            let k = first.div_euclid(2);
            for c in coords.iter_mut() {
                *c -= 2 * k;
            }
        }
        HomologyZ(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn mod2(&self) -> HomologyZ2 {
        let mut b = 0u64;
        for (i, &c) in self.0.iter().enumerate() {
            if c.rem_euclid(2) == 1 {
                b |= 1 << i;
            }
        }
        HomologyZ2::new(self.0.len(), b)
    }

    pub fn neg(&self) -> HomologyZ {
        HomologyZ::canonical(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for HomologyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `g×g` matrix over GF(2) acting on column vectors; `cols[j]` is the image
/// of `x̄_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GF2Matrix {
    genus: usize,
    cols: Vec<u64>,
}

impl GF2Matrix {
    pub fn identity(genus: usize) -> GF2Matrix {
        GF2Matrix {
            genus,
            cols: (0..genus).map(|j| 1u64 << j).collect(),
        }
    }

    pub fn from_columns(genus: usize, cols: Vec<u64>) -> GF2Matrix {
        assert_eq!(cols.len(), genus);
        GF2Matrix { genus, cols }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        (self.cols[col] >> row & 1) as u8
    }

    pub fn apply(&self, v: &HomologyZ2) -> HomologyZ2 {
        let mut out = 0u64;
        for j in 0..self.genus {
            if v.bits >> j & 1 == 1 {
                out ^= self.cols[j];
            }
        }
        HomologyZ2::new(self.genus, out)
    }

    /// `self · other` (apply `other` first).
    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        let cols = other
            .cols
            .iter()
            .map(|&c| self.apply(&HomologyZ2::new(self.genus, c)).bits)
            .collect();
        GF2Matrix {
            genus: self.genus,
            cols,
        }
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut cols = vec![0u64; self.genus];
        for (j, &c) in self.cols.iter().enumerate() {
            for (i, col) in cols.iter_mut().enumerate() {
                if c >> i & 1 == 1 {
                    *col |= 1 << j;
                }
            }
        }
        GF2Matrix {
            genus: self.genus,
            cols,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, &c)| c == 1 << j)
    }

    /// `M^T M = I`: columns orthonormal for the identity Gram matrix.
    pub fn is_isometry(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }
}

impl fmt::Display for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.genus {
            let row: Vec<String> = (0..self.genus)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Integral action on `Z^g`, columns canonicalized modulo the relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    cols: Vec<HomologyZ>,
}

impl IntMatrix {
    pub fn from_columns(cols: Vec<HomologyZ>) -> IntMatrix {
        IntMatrix { cols }
    }

    pub fn identity(genus: usize) -> IntMatrix {
        IntMatrix {
            cols: (0..genus)
                .map(|j| {
                    let mut v = vec![0; genus];
                    v[j] = 1;
                    HomologyZ::canonical(v)
                })
                .collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[HomologyZ] {
        &self.cols
    }

    pub fn apply(&self, v: &[i64]) -> HomologyZ {
        let g = self.cols.len();
        let mut out = vec![0i64; g];
        for (j, &c) in v.iter().enumerate() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += c * self.cols[j].0[i];
            }
        }
        HomologyZ::canonical(out)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix {
            cols: other.cols.iter().map(|c| self.apply(&c.0)).collect(),
        }
    }

    /// The relation vector `2(1,…,1)` must land in the relation lattice.
    pub fn preserves_relation(&self) -> bool {
        let g = self.cols.len();
        self.apply(&vec![2; g]).is_zero()
    }

    pub fn mod2(&self) -> GF2Matrix {
        GF2Matrix::from_columns(
            self.cols.len(),
            self.cols.iter().map(|c| c.mod2().bits()).collect(),
        )
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.cols.len();
        for i in 0..g {
            let row: Vec<String> = (0..g)
                .map(|j| format!("{:>3}", self.cols[j].0[i]))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `x ↦ x + <x,c> c`. Rejects one-sided classes.
pub fn transvection(c: &HomologyZ2) -> Result<GF2Matrix> {
    if c.self_pairing() != 0 {
        return Err(Error::InvalidCurve(format!(
            "transvection needs a two-sided class, got {c}"
        )));
    }
    let g = c.genus;
    let cols = (0..g)
        .map(|j| {
            let x = HomologyZ2::basis(g, j + 1);
            let p = intersection_mod2(&x, c).expect("same genus");
            if p == 1 {
                x.add(c).bits
            } else {
                x.bits
            }
        })
        .collect();
    Ok(GF2Matrix { genus: g, cols })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsometryMethod {
    Bruteforce,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub genus: usize,
    pub order: u64,
    pub method: IsometryMethod,
    pub generators: usize,
}

pub const BRUTEFORCE_MAX_GENUS: usize = 5;

/// Counts `M` with `M^T M = I` by choosing orthonormal columns one at a time.
pub fn isometry_order_bruteforce(g: usize) -> Result<IsometryReport> {
    if g == 0 || g > BRUTEFORCE_MAX_GENUS {
        return Err(Error::Unsupported(format!(
            "bruteforce isometry count needs 1 <= g <= {BRUTEFORCE_MAX_GENUS}, got {g}"
        )));
    }
    fn rec(g: usize, chosen: &mut Vec<u64>) -> u64 {
        if chosen.len() == g {
            return 1;
        }
        let mut total = 0;
        for v in 1u64..(1 << g) {
            if v.count_ones() & 1 == 0 {
                continue;
            }
            if chosen.iter().any(|&c| (c & v).count_ones() & 1 == 1) {
                continue;
            }
            chosen.push(v);
            total += rec(g, chosen);
            chosen.pop();
        }
        total
    }
    let order = rec(g, &mut Vec::new());
    Ok(IsometryReport {
        genus: g,
        order,
        method: IsometryMethod::Bruteforce,
        generators: 0,
    })
}

/// Order of the subgroup generated by `gens`, by hashed breadth-first closure.
pub fn isometry_order_closure(g: usize, gens: &[GF2Matrix]) -> Result<IsometryReport> {
    if gens.iter().any(|m| m.genus != g) {
        return Err(Error::LengthMismatch(
            g,
            gens.iter().map(|m| m.genus).find(|&x| x != g).unwrap_or(g),
        ));
    }
    if g > 8 {
        return Err(Error::Unsupported(format!(
            "closure enumeration limited to g <= 8, got {g}"
        )));
    }
    let id = GF2Matrix::identity(g);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(id.cols.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for s in gens {
                let p = s.mul(m);
                if seen.insert(p.cols.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(IsometryReport {
        genus: g,
        order: seen.len() as u64,
        method: IsometryMethod::Closure,
        generators: gens.len(),
    })
}

/// Images of the twists about `α_{i,i+1}` and `α_{1,j,k,l}` in the isometry group.
pub fn standard_isometry_generators(g: usize) -> Vec<GF2Matrix> {
    let mut gens = Vec::new();
    for i in 1..g {
        gens.push(transvection(&HomologyZ2::from_indices(g, &[i, i + 1])).expect("two-sided"));
    }
    for j in 2..=g {
        for k in j + 1..=g {
            for l in k + 1..=g {
                gens.push(
                    transvection(&HomologyZ2::from_indices(g, &[1, j, k, l])).expect("two-sided"),
                );
            }
        }
    }
    gens
}

/// Rank of a GF(2) matrix given as rows of bits.
pub fn gf2_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][col] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blind_count(g: usize) -> u64 {
        // scan all 2^(g*g) matrices
        let mut n = 0;
        for bits in 0u64..(1 << (g * g)) {
            let cols: Vec<u64> = (0..g).map(|j| bits >> (j * g) & ((1 << g) - 1)).collect();
            if GF2Matrix::from_columns(g, cols).is_isometry() {
                n += 1;
            }
        }
        n
    }

    #[test]
    fn bruteforce_matches_blind_scan() {
        assert_eq!(blind_count(3), 6);
        assert_eq!(blind_count(4), 48);
        assert_eq!(isometry_order_bruteforce(3).unwrap().order, 6);
        assert_eq!(isometry_order_bruteforce(4).unwrap().order, 48);
        assert!(isometry_order_bruteforce(6).is_err());
    }

    #[test]
    fn closure_matches_bruteforce_small() {
        for g in 3..=5 {
            let b = isometry_order_bruteforce(g).unwrap().order;
            let c = isometry_order_closure(g, &standard_isometry_generators(g))
                .unwrap()
                .order;
            assert_eq!(b, c, "g={g}");
        }
    }

    #[test]
    fn pairing_examples() {
        let g = 4;
        let x1 = HomologyZ2::basis(g, 1);
        let x12 = HomologyZ2::from_indices(g, &[1, 2]);
        assert_eq!(intersection_mod2(&x1, &x12).unwrap(), 1);
        assert_eq!(intersection_mod2(&x12, &x12).unwrap(), 0);
        assert_eq!(
            intersection_mod2(&HomologyZ2::basis(g, 3), &x12).unwrap(),
            0
        );
        assert!(intersection_mod2(&x1, &HomologyZ2::basis(5, 1)).is_err());
    }

    #[test]
    fn transvection_examples() {
        let g = 4;
        let t = transvection(&HomologyZ2::from_indices(g, &[1, 2])).unwrap();
        assert_eq!(t.apply(&HomologyZ2::basis(g, 1)), HomologyZ2::basis(g, 2));
        assert_eq!(t.apply(&HomologyZ2::basis(g, 2)), HomologyZ2::basis(g, 1));
        assert_eq!(t.apply(&HomologyZ2::basis(g, 3)), HomologyZ2::basis(g, 3));
        let c = HomologyZ2::from_indices(g, &[1, 2, 3, 4]);
        let t4 = transvection(&c).unwrap();
        assert_eq!(
            t4.apply(&HomologyZ2::basis(g, 1)),
            HomologyZ2::from_indices(g, &[2, 3, 4])
        );
        assert!(transvection(&HomologyZ2::zero(g)).unwrap().is_identity());
        assert!(transvection(&HomologyZ2::basis(g, 1)).is_err());
        assert!(t4.is_isometry());
        assert!(t4.mul(&t4).is_identity());
    }

    #[test]
    fn canonical_integral_classes() {
        let a = HomologyZ::canonical(vec![3, 2, 2, 2]);
        assert_eq!(a.coords(), &[1, 0, 0, 0]);
        let b = HomologyZ::canonical(vec![-1, 0, 0, 0]);
        assert_eq!(b.coords(), &[1, 2, 2, 2]);
        assert!(HomologyZ::canonical(vec![2, 2, 2, 2]).is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(gf2_rank(&[vec![1, 1], vec![1, 1]]), 1);
    }
}
