//! Brute-force enumeration of rooted spinned tetravalent maps.
//!
//! Darts are `0..4n` here (`d` here is dart `d + 1` in one-based notation).
//! Vertex `v` owns darts `4v..4v+4`, rotated by `sigma`; the edges are the
//! pairs of a fixed-point-free involution `alpha`. Dart 0 is the root.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{ExactScalar, ParamPoly};

/// Largest vertex count the enumeration accepts.
pub const MAX_VERTICES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartMap {
    n: usize,
    alpha: Vec<usize>,
}

impl DartMap {
    /// Checks that `alpha` is a fixed-point-free involution on `0..4n`.
    pub fn new(n: usize, alpha: Vec<usize>) -> Result<Self> {
        let ok = alpha.len() == 4 * n && alpha.iter().enumerate().all(|(d, &a)| a < 4 * n && a != d && alpha[a] == d);
        if !ok {
            return Err(Error::InvalidParameter("alpha must be a fixed-point-free involution on the darts".into()));
        }
        Ok(DartMap { n, alpha })
    }

    /// From one-based transpositions, e.g. `[(1, 2), (3, 4)]`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut alpha = vec![usize::MAX; 4 * n];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > 4 * n || b > 4 * n {
                return Err(Error::InvalidParameter("dart out of range".into()));
            }
            alpha[a - 1] = b - 1;
            alpha[b - 1] = a - 1;
        }
        if alpha.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("every dart must be paired".into()));
        }
        Self::new(n, alpha)
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }

    pub fn sigma(d: usize) -> usize {
        4 * (d / 4) + (d + 1) % 4
    }

    pub fn vertex_of(d: usize) -> usize {
        d / 4
    }

    /// Cycles of `sigma . alpha` (apply `alpha` first).
    pub fn face_count(&self) -> usize {
        let mut seen = vec![false; self.alpha.len()];
        let mut faces = 0;
        for start in 0..self.alpha.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = Self::sigma(self.alpha[d]);
            }
        }
        faces
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = self.n;
        for (d, &a) in self.alpha.iter().enumerate() {
            let (u, v) = (find(&mut parent, d / 4), find(&mut parent, a / 4));
            if u != v {
                parent[u] = v;
                components -= 1;
            }
        }
        components == 1
    }

    /// `V - E + F` with `V = n`, `E = 2n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - 2 * self.n as i64 + self.face_count() as i64
    }

    /// Genus of the surface the map is embedded in (connected maps only).
    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    /// Edges as pairs of vertices, each edge once.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.alpha.len()).filter(|&d| d < self.alpha[d]).map(|d| (d / 4, self.alpha[d] / 4)).collect()
    }
}

/// Planar and connected.
pub fn genus_check(map: &DartMap) -> bool {
    map.is_connected() && map.euler_characteristic() == 2
}

/// Spins by vertex; `true` is the positive spin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinAssign {
    pub spins: Vec<bool>,
}

impl SpinAssign {
    /// The `i`-th assignment with the root vertex positive; `i < 2^(n-1)`.
    pub fn rooted(n: usize, i: usize) -> Self {
        let mut spins = vec![true; n];
        for (v, s) in spins.iter_mut().enumerate().skip(1) {
            *s = (i >> (v - 1)) & 1 == 0;
        }
        SpinAssign { spins }
    }

    /// `sigma_plus - sigma_minus`.
    pub fn magnetization(&self) -> i32 {
        self.spins.iter().map(|&s| if s { 1 } else { -1 }).sum()
    }

    /// Number of edges joining equal spins.
    pub fn monochromatic(&self, map: &DartMap) -> u32 {
        map.edges().iter().filter(|(u, v)| self.spins[*u] == self.spins[*v]).count() as u32
    }
}

/// Everything one enumeration pass collects.
#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    pub n: usize,
    /// Number of matchings visited, `(4n - 1)!!`.
    pub matchings: u64,
    /// Matchings giving connected maps, by genus.
    pub connected_by_genus: Vec<u64>,
    /// Weighted sum over planar maps and rooted spin assignments, keyed by
    /// `(monochromatic edges, sigma_plus - sigma_minus)`, before normalization.
    pub raw_weights: BTreeMap<(u32, i32), u64>,
}

impl Enumeration {
    pub fn planar(&self) -> u64 {
        self.connected_by_genus.first().copied().unwrap_or(0)
    }

    /// `4n / (n! 4^n)`: each rooted map appears that many fewer times than
    /// its dart labellings with the root on dart 0.
    pub fn normalization(&self) -> ExactScalar {
        let n = self.n as u64;
        let fact: u64 = (1..=n).product();
        ExactScalar::new(BigInt::from(4 * n), BigInt::from(fact * 4u64.pow(n as u32)))
    }

    /// `Z_n(nu, c)`.
    pub fn partition_function(&self) -> ParamPoly {
        let norm = self.normalization();
        ParamPoly::from_terms(
            self.raw_weights.iter().map(|(&(m, s), &k)| ((m, s), ExactScalar::from_integer(BigInt::from(k)) * &norm)),
        )
    }

    /// Rooted planar tetravalent maps with `n` vertices, spins ignored.
    pub fn rooted_maps(&self) -> ExactScalar {
        ExactScalar::from_integer(BigInt::from(self.planar())) * self.normalization()
    }
}

fn check_bound(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::EnumerationBound { n, max: MAX_VERTICES });
    }
    Ok(())
}

/// Visits every perfect matching of `0..4n`, smallest unpaired dart first.
fn for_each_matching(alpha: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let Some(first) = alpha.iter().position(|&a| a == usize::MAX) else {
        visit(alpha);
        return;
    };
    for partner in first + 1..alpha.len() {
        if alpha[partner] == usize::MAX {
            alpha[first] = partner;
            alpha[partner] = first;
            for_each_matching(alpha, visit);
            alpha[first] = usize::MAX;
            alpha[partner] = usize::MAX;
        }
    }
}

fn enumerate_branch(n: usize, root_partner: usize) -> Enumeration {
    let mut out = Enumeration { n, matchings: 0, connected_by_genus: vec![0; n / 2 + 2], raw_weights: BTreeMap::new() };
    let spins: Vec<SpinAssign> = (0..1usize << (n - 1)).map(|i| SpinAssign::rooted(n, i)).collect();
    let mut alpha = vec![usize::MAX; 4 * n];
    alpha[0] = root_partner;
    alpha[root_partner] = 0;
    for_each_matching(&mut alpha, &mut |a| {
        out.matchings += 1;
        let map = DartMap { n, alpha: a.to_vec() };
        if !map.is_connected() {
            return;
        }
        let g = map.genus();
        if g >= out.connected_by_genus.len() {
            out.connected_by_genus.resize(g + 1, 0);
        }
        out.connected_by_genus[g] += 1;
        if g != 0 {
            return;
        }
        for s in &spins {
            *out.raw_weights.entry((s.monochromatic(&map), s.magnetization())).or_insert(0) += 1;
        }
    });
    out
}

/// Full enumeration for `n <= 4`, split across threads by the partner of
/// the root dart.
pub fn enumerate(n: usize) -> Result<Enumeration> {
    check_bound(n)?;
    let parts: Vec<Enumeration> = std::thread::scope(|scope| {
        let handles: Vec<_> = (1..4 * n).map(|p| scope.spawn(move || enumerate_branch(n, p))).collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker")).collect()
    });
    let mut total =
        Enumeration { n, matchings: 0, connected_by_genus: vec![0; n / 2 + 2], raw_weights: BTreeMap::new() };
    for part in parts {
        total.matchings += part.matchings;
        if part.connected_by_genus.len() > total.connected_by_genus.len() {
            total.connected_by_genus.resize(part.connected_by_genus.len(), 0);
        }
        for (g, k) in part.connected_by_genus.iter().enumerate() {
            total.connected_by_genus[g] += k;
        }
        for (key, k) in part.raw_weights {
            *total.raw_weights.entry(key).or_insert(0) += k;
        }
    }
    while total.connected_by_genus.len() > 1 && total.connected_by_genus.last() == Some(&0) {
        total.connected_by_genus.pop();
    }
    Ok(total)
}

/// `Z_n(nu, c)` by exhaustive enumeration.
pub fn bruteforce_z(n: usize) -> Result<ParamPoly> {
    Ok(enumerate(n)?.partition_function())
}

/// `Z_n` at `nu = c = 1`.
pub fn bruteforce_z_at_one(n: usize) -> Result<ExactScalar> {
    let one = ExactScalar::from_integer(1.into());
    bruteforce_z(n)?.eval(&one, &one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn single_vertex_faces() {
        let m = DartMap::from_pairs(1, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(m.face_count(), 3);
        assert!(genus_check(&m));
        let m = DartMap::from_pairs(1, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(m.face_count(), 1);
        assert!(!genus_check(&m));
        assert_eq!(m.genus(), 1);
        let m = DartMap::from_pairs(1, &[(1, 4), (2, 3)]).unwrap();
        assert_eq!(m.face_count(), 3);
        assert!(genus_check(&m));
    }

    #[test]
    fn rejects_bad_involutions() {
        assert!(DartMap::new(1, vec![1, 0, 2, 3]).is_err());
        assert!(DartMap::new(1, vec![1, 2, 3, 0]).is_err());
    }

    #[test]
    fn one_vertex_partition_function() {
        let z = bruteforce_z(1).unwrap();
        assert_eq!(z, ParamPoly::monomial(int(2), 2, 1));
    }

    #[test]
    fn two_vertices() {
        let e = enumerate(2).unwrap();
        assert_eq!(e.matchings, 105);
        assert_eq!(e.rooted_maps(), int(9));
        let expected = ParamPoly::from_terms([((4, 2), int(9)), ((2, 0), int(8)), ((0, 0), int(1))]);
        assert_eq!(e.partition_function(), expected);
    }

    #[test]
    fn enumeration_bound() {
        assert_eq!(bruteforce_z(5), Err(Error::EnumerationBound { n: 5, max: 4 }));
    }
}
