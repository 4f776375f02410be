//! Finite matrix groups: closure of generator sets, the catalog of finite
//! subgroups of SU(2) with exact cyclotomic generators, and the commuting
//! exponent behind the `0^m 1^m` / `1^m 0^m` collision.
//!
//! A group is either *linear* (elements compared as exact matrices) or
//! *projective* (elements are canonical representatives in PGL, i.e. PU on the
//! unitary path). Elements are indexed in breadth-first discovery order from
//! the identity, which is always index 0. The full multiplication table is
//! built once at closure time, so every later query is index arithmetic.

use alloc::{collections::BTreeMap, format, string::String, vec, vec::Vec};
use core::{fmt, str::FromStr};

use num_integer::Integer;

use crate::exactfield::{ratio, CycNum, CyclotomicField, Field};
use crate::projlinalg::{proj_canonical, LinalgError, Matrix};

/// Cap on closure size used when callers have no better bound.
pub const DEFAULT_CLOSURE_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("no generators given")]
    NoGenerators,
    #[error("closure exceeded {cap} elements; the group is infinite or too large")]
    CapExceeded { cap: usize },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    /// Generated by `diag(ζ_{2k}, ζ_{2k}^{-1})`: order `2k` in U(2), `k` in PU(2).
    Cyclic(u32),
    /// Order `4k` in U(2), dihedral of order `2k` in PU(2).
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupFamily {
    pub fn name(&self) -> String {
        match self {
            GroupFamily::Cyclic(k) => format!("cyclic({k})"),
            GroupFamily::BinaryDihedral(k) => format!("binary_dihedral({k})"),
            GroupFamily::BinaryTetrahedral => "binary_tetrahedral".into(),
            GroupFamily::BinaryOctahedral => "binary_octahedral".into(),
            GroupFamily::BinaryIcosahedral => "binary_icosahedral".into(),
        }
    }

    pub fn conductor(&self) -> u32 {
        match self {
            GroupFamily::Cyclic(k) | GroupFamily::BinaryDihedral(k) => 2 * k,
            GroupFamily::BinaryTetrahedral => 4,
            GroupFamily::BinaryOctahedral => 8,
            GroupFamily::BinaryIcosahedral => 20,
        }
    }

    /// Advertised order of the linear group (`projective = false`) or of its
    /// image in PU(2).
    pub fn order(&self, projective: bool) -> usize {
        let linear = match self {
            GroupFamily::Cyclic(k) => 2 * *k as usize,
            GroupFamily::BinaryDihedral(k) => 4 * *k as usize,
            GroupFamily::BinaryTetrahedral => 24,
            GroupFamily::BinaryOctahedral => 48,
            GroupFamily::BinaryIcosahedral => 120,
        };
        if projective {
            linear / 2
        } else {
            linear
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GroupFamily {
    type Err = GroupError;

    /// Accepts `cyclic(5)`, `cyclic:5`, `binary_dihedral(3)`, `dihedral:3`,
    /// `binary_tetrahedral`/`2T`, `binary_octahedral`/`2O`,
    /// `binary_icosahedral`/`2I`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, param) = match s.find(['(', ':']) {
            Some(p) => (&s[..p], Some(s[p + 1..].trim_end_matches(')').trim())),
            None => (s, None),
        };
        let k = || -> Result<u32, GroupError> {
            let p = param.ok_or_else(|| GroupError::InvalidParameter(format!("{s}: missing k")))?;
            let k: u32 = p
                .parse()
                .map_err(|_| GroupError::InvalidParameter(format!("{s}: bad k")))?;
            if k == 0 {
                return Err(GroupError::InvalidParameter(format!("{s}: k must be positive")));
            }
            Ok(k)
        };
        match head.to_ascii_lowercase().as_str() {
            "cyclic" | "c" => Ok(GroupFamily::Cyclic(k()?)),
            "binary_dihedral" | "dihedral" | "dic" => Ok(GroupFamily::BinaryDihedral(k()?)),
            "binary_tetrahedral" | "2t" => Ok(GroupFamily::BinaryTetrahedral),
            "binary_octahedral" | "2o" => Ok(GroupFamily::BinaryOctahedral),
            "binary_icosahedral" | "2i" => Ok(GroupFamily::BinaryIcosahedral),
            _ => Err(GroupError::UnknownGroup(s.into())),
        }
    }
}

/// Exact generators of one catalog group.
#[derive(Debug, Clone)]
pub struct GroupCatalogEntry {
    pub family: GroupFamily,
    pub conductor: u32,
    pub generators: Vec<Matrix>,
}

impl GroupCatalogEntry {
    pub fn field(&self) -> &Field {
        self.generators[0].field()
    }

    pub fn closure(&self, projective: bool) -> Result<FiniteMatrixGroup, GroupError> {
        closure(&self.generators, projective, DEFAULT_CLOSURE_CAP)
    }
}

/// The quaternion `w + x𝐢 + y𝐣 + z𝐤` as `[[w + xi, y + zi], [-y + zi, w - xi]]`.
/// The field conductor must be divisible by 4.
pub fn quaternion(field: &Field, w: &CycNum, x: &CycNum, y: &CycNum, z: &CycNum) -> Matrix {
    let i = CycNum::root(field, i64::from(field.conductor() / 4));
    let xi = x * &i;
    let zi = z * &i;
    Matrix::from_2x2([[w + &xi, y + &zi], [&zi - y, w - &xi]]).expect("2x2")
}

/// The quaternion units 𝟏, 𝐢, 𝐣, 𝐤 as 2×2 matrices over a field containing i.
pub fn quaternion_units(field: &Field) -> [Matrix; 4] {
    let (o, l) = (CycNum::zero(field), CycNum::one(field));
    [
        quaternion(field, &l, &o, &o, &o),
        quaternion(field, &o, &l, &o, &o),
        quaternion(field, &o, &o, &l, &o),
        quaternion(field, &o, &o, &o, &l),
    ]
}

/// Generators `a = (𝟏+𝐢+𝐣-𝐤)/2`, `b = (𝟏+𝐢+𝐣+𝐤)/2` of the binary tetrahedral
/// group over a field containing i.
pub fn tetrahedral_generators(field: &Field) -> [Matrix; 2] {
    let h = CycNum::from_rational(field, &ratio(1, 2));
    let mh = -&h;
    [quaternion(field, &h, &h, &h, &mh), quaternion(field, &h, &h, &h, &h)]
}

pub fn catalog(family: GroupFamily) -> Result<GroupCatalogEntry, GroupError> {
    let conductor = family.conductor();
    let field = CyclotomicField::new(conductor).map_err(LinalgError::from)?;
    let zero = CycNum::zero(&field);
    let diag = |k: u32| {
        let z = CycNum::root(&field, 1);
        let zi = CycNum::root(&field, -1);
        debug_assert_eq!(field.conductor(), 2 * k);
        Matrix::from_2x2([[z, zero.clone()], [zero.clone(), zi]]).expect("2x2")
    };
    let generators = match family {
        GroupFamily::Cyclic(k) => vec![diag(k)],
        GroupFamily::BinaryDihedral(k) => {
            let one = CycNum::one(&field);
            let j = Matrix::from_2x2([[zero.clone(), one.clone()], [-&one, zero.clone()]])?;
            vec![diag(k), j]
        }
        GroupFamily::BinaryTetrahedral => tetrahedral_generators(&field).into(),
        GroupFamily::BinaryOctahedral => {
            // a from 2T together with (1 + 𝐢)/√2 = diag(ζ_8, ζ_8^{-1})
            let [a, _] = tetrahedral_generators(&field);
            let r = Matrix::from_2x2([
                [CycNum::root(&field, 1), zero.clone()],
                [zero.clone(), CycNum::root(&field, -1)],
            ])?;
            vec![a, r]
        }
        GroupFamily::BinaryIcosahedral => {
            // (𝟏+𝐢+𝐣+𝐤)/2 and (φ + φ^{-1}𝐢 + 𝐣)/2, φ = 1 + ζ_5 + ζ_5^4 with ζ_5 = ζ_20^4
            let [_, s] = tetrahedral_generators(&field);
            let z5 = CycNum::root(&field, 4);
            let z5i = CycNum::root(&field, 16);
            let phi_inv = &z5 + &z5i;
            let phi = &phi_inv + &CycNum::one(&field);
            let half = ratio(1, 2);
            let t = quaternion(
                &field,
                &phi.scale(&half),
                &phi_inv.scale(&half),
                &CycNum::from_rational(&field, &half),
                &zero,
            );
            vec![s, t]
        }
    };
    Ok(GroupCatalogEntry {
        family,
        conductor,
        generators,
    })
}

/// Standard catalog ordered by projective order, restricted to
/// `projective order ≤ order_max`.
pub fn catalog_up_to(order_max: usize, polyhedral: bool) -> Vec<GroupFamily> {
    let mut out = Vec::new();
    for k in 1..=order_max as u32 {
        out.push(GroupFamily::Cyclic(k));
    }
    for k in 1..=(order_max / 2) as u32 {
        out.push(GroupFamily::BinaryDihedral(k));
    }
    if polyhedral {
        for f in [
            GroupFamily::BinaryTetrahedral,
            GroupFamily::BinaryOctahedral,
            GroupFamily::BinaryIcosahedral,
        ] {
            if f.order(true) <= order_max {
                out.push(f);
            }
        }
    }
    out.sort_by_key(|f| (f.order(true), *f));
    out
}

/// A finite group of matrices with a precomputed multiplication table.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    elements: Vec<Matrix>,
    index: BTreeMap<Matrix, usize>,
    generators: Vec<usize>,
    projective: bool,
    table: Vec<u32>,
    inverses: Vec<usize>,
    /// BFS tree: `(parent, generator slot)` with `element = parent · generator`.
    parent: Vec<Option<(usize, usize)>>,
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("order", &self.order())
            .field("projective", &self.projective)
            .finish()
    }
}

/// Group generated by `gens`, built breadth-first with canonical-form
/// deduplication. Projective closure identifies scalar multiples.
pub fn closure(gens: &[Matrix], projective: bool, cap: usize) -> Result<FiniteMatrixGroup, GroupError> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    let norm =
        |m: Matrix| -> Result<Matrix, GroupError> { Ok(if projective { proj_canonical(&m)?.into_rep() } else { m }) };
    let gens: Vec<Matrix> = gens.iter().cloned().map(norm).collect::<Result<_, _>>()?;

    let identity = Matrix::identity(first.field(), first.dim());
    let mut elements = vec![identity.clone()];
    let mut index = BTreeMap::new();
    index.insert(identity, 0usize);
    let mut parent = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();

    let mut head = 0;
    while head < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (s, g) in gens.iter().enumerate() {
            let h = norm(elements[head].mul(g)?)?;
            let id = match index.get(&h) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(h.clone(), id);
                    elements.push(h);
                    parent.push(Some((head, s)));
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        head += 1;
    }

    let n = elements.len();
    // g·h = (g·parent(h))·gen, filled in BFS order of h
    let mut table = vec![0u32; n * n];
    for g in 0..n {
        table[g * n] = g as u32;
        for h in 1..n {
            let (p, s) = parent[h].expect("non-identity has a parent");
            let gp = table[g * n + p] as usize;
            table[g * n + h] = right[gp][s] as u32;
        }
    }
    let mut inverses = vec![0; n];
    for g in 0..n {
        inverses[g] = (0..n)
            .find(|&h| table[g * n + h] == 0)
            .expect("finite monoid of invertible matrices is a group");
    }
    let generators = gens.iter().map(|g| index[g]).collect();

    Ok(FiniteMatrixGroup {
        elements,
        index,
        generators,
        projective,
        table,
        inverses,
        parent,
    })
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn conductor(&self) -> u32 {
        self.elements[0].conductor()
    }

    pub fn field(&self) -> &Field {
        self.elements[0].field()
    }

    /// Index of `m`, canonicalizing first when the group is projective.
    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        if self.projective {
            let c = proj_canonical(m).ok()?;
            self.index.get(c.rep()).copied()
        } else {
            self.index.get(m).copied()
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let (mut base, mut acc) = (a, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    /// Product `letters[0] · letters[1] · …` of element indices.
    pub fn word_product(&self, letters: impl IntoIterator<Item = usize>) -> usize {
        letters.into_iter().fold(0, |acc, g| self.mul(acc, g))
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head];
            head += 1;
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    queue.push(h);
                }
            }
        }
        queue.len()
    }

    /// Image in PU: closure of the canonicalized generators.
    pub fn projective_quotient(&self) -> Result<FiniteMatrixGroup, GroupError> {
        let gens: Vec<Matrix> = self.generators.iter().map(|&g| self.elements[g].clone()).collect();
        closure(&gens, true, self.order().max(1))
    }

    /// Generator words of the BFS tree, as generator slots, such that the
    /// element equals the ordered product of its word.
    pub fn bfs_word(&self, mut a: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((p, s)) = self.parent[a] {
            word.push(s);
            a = p;
        }
        word.reverse();
        word
    }

    /// Shortest words over the two letters `gens = (δ0, δ1)` reaching each
    /// element by left multiplication; `word[k]` is the k-th factor of the
    /// product. `None` for elements outside the generated subgroup.
    pub fn shortest_words(&self, gens: (usize, usize)) -> Vec<Option<Vec<u8>>> {
        let mut words: Vec<Option<Vec<u8>>> = vec![None; self.order()];
        words[0] = Some(Vec::new());
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head];
            head += 1;
            for (letter, s) in [(0u8, gens.0), (1u8, gens.1)] {
                let h = self.mul(s, g);
                if words[h].is_none() {
                    let mut w = vec![letter];
                    w.extend_from_slice(words[g].as_ref().expect("visited"));
                    words[h] = Some(w);
                    queue.push(h);
                }
            }
        }
        words
    }
}

fn powers_commute(g: &FiniteMatrixGroup, m: usize) -> bool {
    let mut powers: Vec<usize> = (0..g.order()).map(|u| g.pow(u, m)).collect();
    powers.sort_unstable();
    powers.dedup();
    powers
        .iter()
        .enumerate()
        .all(|(i, &u)| powers[i + 1..].iter().all(|&v| g.mul(u, v) == g.mul(v, u)))
}

/// Least `m ≥ 1` with `u^m v^m = v^m u^m` for all `u, v` in the group.
/// Always divides the exponent.
pub fn commuting_exponent(g: &FiniteMatrixGroup) -> usize {
    let e = g.exponent();
    (1..=e)
        .find(|&m| e.is_multiple_of(m) && powers_commute(g, m))
        .unwrap_or(e)
}

/// True iff `δ_{0^m 1^m} = δ_{1^m 0^m}` for every ordered pair of elements,
/// i.e. no semi-classical witness for `0^m 1^m` lives in the group.
pub fn collision_check(g: &FiniteMatrixGroup, m: usize) -> bool {
    powers_commute(g, m)
}
