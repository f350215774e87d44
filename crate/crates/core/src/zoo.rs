//! Built-in algebras: group algebras of small groups and their duals.

use crate::error::{Error, Result};
use crate::hopf::{AlgebraData, AlgebraElement, Dual, HopfAlgebra};
use crate::linalg::{CMat, ONE};

/// A finite group by its multiplication table; index 0 must be the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

impl GroupSpec {
    /// Builds and validates a group from its table, deriving inverses.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) || labels.len() != n {
            return Err(Error::NotAGroup("table must be square and labelled".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0);
            inverse[a] = inv.ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
        }
        Ok(GroupSpec { name: name.into(), labels, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|k| if k == 0 { "e".into() } else { format!("r{k}") }).collect();
        GroupSpec::from_table(format!("Z{n}"), labels, table).expect("cyclic group")
    }

    /// Dihedral group of order `2n`: elements `r^k` (index k) and `s r^k` (index n + k).
    pub fn dihedral(n: usize, name: &str) -> Self {
        let elem = |refl: bool, k: usize| if refl { n + k } else { k };
        let decode = |x: usize| (x >= n, x % n);
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for x in 0..2 * n {
            for y in 0..2 * n {
                let (s1, k1) = decode(x);
                let (s2, k2) = decode(y);
                // (s^a r^i)(s^b r^j) = s^{a+b} r^{(-1)^b i + j}
                let k = if s2 { (n - k1 + k2) % n } else { (k1 + k2) % n };
                table[x][y] = elem(s1 ^ s2, k);
            }
        }
        let labels = (0..2 * n)
            .map(|x| {
                let (s, k) = decode(x);
                match (s, k) {
                    (false, 0) => "e".to_string(),
                    (false, k) => format!("r{k}"),
                    (true, 0) => "s".to_string(),
                    (true, k) => format!("sr{k}"),
                }
            })
            .collect();
        GroupSpec::from_table(name, labels, table).expect("dihedral group")
    }

    /// Symmetric group on three letters (isomorphic to the dihedral group of order 6).
    pub fn s3() -> Self {
        GroupSpec::dihedral(3, "S3")
    }

    pub fn d4() -> Self {
        GroupSpec::dihedral(4, "D4")
    }
}

/// `ℂ[G]`: `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹ = g*`.
pub fn group_algebra(g: &GroupSpec) -> Result<HopfAlgebra> {
    let n = g.order();
    let mut data = AlgebraData::zeros(format!("C[{}]", g.name), n);
    data.labels = g.labels.clone();
    for a in 0..n {
        for b in 0..n {
            data.mul[(a * n + b) * n + g.table[a][b]] = ONE;
        }
        data.comul[(a * n + a) * n + a] = ONE;
        data.counit[a] = ONE;
    }
    data.antipode = CMat::from_fn(n, n, |a, b| if g.inverse[a] == b { ONE } else { crate::linalg::ZERO });
    data.star = data.antipode.clone();
    HopfAlgebra::new(data)
}

/// `F(G)`, the dual of `ℂ[G]`.
pub fn function_algebra(g: &GroupSpec) -> Result<HopfAlgebra> {
    Ok(function_algebra_dual(g)?.algebra)
}

/// `F(G)` with the identification of its basis with functionals on `ℂ[G]`.
pub fn function_algebra_dual(g: &GroupSpec) -> Result<Dual> {
    Dual::of(&group_algebra(g)?)
}

/// The point-mass function `δ_x` in `F(G)`, for the group element with index `x`.
pub fn delta_function(dual: &Dual, x: usize) -> AlgebraElement {
    let n = dual.algebra.dim();
    let mut phi = vec![crate::linalg::ZERO; n];
    phi[x] = ONE;
    dual.from_functional(&crate::hopf::DualElement::new(phi))
}

/// Names accepted by [`by_name`].
pub const ZOO_NAMES: [&str; 10] = ["Z2", "Z3", "Z4", "S3", "D4", "F(Z2)", "F(Z3)", "F(Z4)", "F(S3)", "F(D4)"];

pub fn group_by_name(name: &str) -> Option<GroupSpec> {
    match name {
        "Z2" => Some(GroupSpec::cyclic(2)),
        "Z3" => Some(GroupSpec::cyclic(3)),
        "Z4" => Some(GroupSpec::cyclic(4)),
        "S3" => Some(GroupSpec::s3()),
        "D4" => Some(GroupSpec::d4()),
        _ => None,
    }
}

/// Looks up a zoo algebra: `Z2`, `C[Z2]`, `F(S3)`, `FS3`, ...
pub fn by_name(name: &str) -> Result<HopfAlgebra> {
    let n = name.trim();
    let strip = |s: &str| {
        s.strip_prefix("C[").and_then(|x| x.strip_suffix(']')).map(str::to_string)
    };
    if let Some(g) = n.strip_prefix("F(").and_then(|x| x.strip_suffix(')')).or_else(|| n.strip_prefix('F')) {
        let g = group_by_name(g).ok_or_else(|| Error::Parse(format!("unknown zoo algebra `{name}`")))?;
        return function_algebra(&g);
    }
    let g = strip(n).unwrap_or_else(|| n.to_string());
    let g = group_by_name(&g).ok_or_else(|| Error::Parse(format!("unknown zoo algebra `{name}`")))?;
    group_algebra(&g)
}
