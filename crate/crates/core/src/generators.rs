//! Built-in examples: function algebras C(G) and group algebras C[G] of
//! small finite groups, with their standard Hopf structures.

use crate::algebra::{FDAlgebra, Tensor3};
use crate::error::{CqgError, Result};
use crate::hopf::{HopfStructure, QuantumGroup};
use crate::linalg::{self, CMat, CVec};

/// A finite group as a multiplication table; element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub order: usize,
    pub names: Vec<String>,
    table: Vec<usize>,
}

impl FiniteGroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0)
            .expect("group element has an inverse")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let names = (0..n).map(|i| format!("g{}", i)).collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroup {
            order: n,
            names,
            table,
        }
    }

    /// S3 as permutations of {0,1,2}: e, (01), (02), (12), (012), (021).
    pub fn symmetric3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = vec!["e", "t01", "t02", "t12", "c012", "c021"]
            .into_iter()
            .map(String::from)
            .collect();
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let mut table = vec![0; 36];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let pq = compose(p, q);
                let c = perms.iter().position(|r| *r == pq).unwrap();
                table[a * 6 + b] = c;
            }
        }
        FiniteGroup {
            order: 6,
            names,
            table,
        }
    }

    /// Dihedral group of order 8: r^a s^b with s r s = r^-1; index = b*4 + a.
    pub fn dihedral4() -> FiniteGroup {
        let names = vec!["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
            .into_iter()
            .map(String::from)
            .collect();
        let idx = |a: usize, b: usize| b * 4 + a;
        let mut table = vec![0; 64];
        for a in 0..4 {
            for b in 0..2 {
                for c in 0..4 {
                    for d in 0..2 {
                        // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b+d)
                        let c2 = if b == 0 { c } else { (4 - c) % 4 };
                        let e = (a + c2) % 4;
                        let f = (b + d) % 2;
                        table[idx(a, b) * 8 + idx(c, d)] = idx(e, f);
                    }
                }
            }
        }
        FiniteGroup {
            order: 8,
            names,
            table,
        }
    }

    /// Parse names like "c5" / "cyclic8", "s3", "d4".
    pub fn by_name(name: &str) -> Result<FiniteGroup> {
        let lower = name.to_ascii_lowercase();
        if lower == "s3" {
            return Ok(FiniteGroup::symmetric3());
        }
        if lower == "d4" {
            return Ok(FiniteGroup::dihedral4());
        }
        let digits: String = lower.chars().filter(|c| c.is_ascii_digit()).collect();
        if (lower.starts_with('c') || lower.starts_with("cyclic")) && !digits.is_empty() {
            let n: usize = digits
                .parse()
                .map_err(|_| CqgError::UnsupportedGroup(name.to_string()))?;
            if (1..=12).contains(&n) {
                return Ok(FiniteGroup::cyclic(n));
            }
        }
        Err(CqgError::UnsupportedGroup(name.to_string()))
    }
}

/// C(G): functions on G with pointwise product and Delta f (s,t) = f(st).
pub fn function_algebra(g: &FiniteGroup) -> QuantumGroup {
    let n = g.order;
    let labels: Vec<String> = g.names.iter().map(|s| format!("d_{}", s)).collect();

    let mut mult = Tensor3::zeros(n, n, n);
    for i in 0..n {
        mult.set(i, i, i, linalg::cone());
    }
    let unit = CVec::from_element(n, linalg::cone());
    let star = CMat::identity(n, n);
    let algebra = FDAlgebra::new(labels, mult, unit, star).expect("valid shapes");

    let mut coproduct = Tensor3::zeros(n, n, n);
    for a in 0..n {
        for b in 0..n {
            let idx = g.mul(a, b);
            coproduct.set(idx, a, b, linalg::cone());
        }
    }
    let mut counit = CVec::zeros(n);
    counit[0] = linalg::cone();
    let mut antipode = CMat::zeros(n, n);
    for a in 0..n {
        antipode[(a, g.inv(a))] = linalg::cone();
    }
    let hopf = HopfStructure::new(coproduct, counit, antipode).expect("valid shapes");
    QuantumGroup { algebra, hopf }
}

/// C[G]: the group algebra with group-like coproduct Delta u_g = u_g (x) u_g.
pub fn group_algebra(g: &FiniteGroup) -> QuantumGroup {
    let n = g.order;
    let labels: Vec<String> = g.names.iter().map(|s| format!("u_{}", s)).collect();

    let mut mult = Tensor3::zeros(n, n, n);
    for a in 0..n {
        for b in 0..n {
            mult.set(a, b, g.mul(a, b), linalg::cone());
        }
    }
    let mut unit = CVec::zeros(n);
    unit[0] = linalg::cone();
    let mut star = CMat::zeros(n, n);
    for a in 0..n {
        star[(a, g.inv(a))] = linalg::cone();
    }
    let algebra = FDAlgebra::new(labels, mult, unit, star).expect("valid shapes");

    let mut coproduct = Tensor3::zeros(n, n, n);
    for a in 0..n {
        coproduct.set(a, a, a, linalg::cone());
    }
    let counit = CVec::from_element(n, linalg::cone());
    let mut antipode = CMat::zeros(n, n);
    for a in 0..n {
        antipode[(a, g.inv(a))] = linalg::cone();
    }
    let hopf = HopfStructure::new(coproduct, counit, antipode).expect("valid shapes");
    QuantumGroup { algebra, hopf }
}

/// Every bundled generator: (description, quantum group).
pub fn bundled_examples() -> Vec<(String, QuantumGroup)> {
    let mut out = Vec::new();
    let mut groups: Vec<(String, FiniteGroup)> = (1..=12)
        .map(|k| (format!("c{}", k), FiniteGroup::cyclic(k)))
        .collect();
    groups.push(("s3".into(), FiniteGroup::symmetric3()));
    groups.push(("d4".into(), FiniteGroup::dihedral4()));
    for (name, g) in groups {
        out.push((format!("C({})", name), function_algebra(&g)));
        out.push((format!("C[{}]", name), group_algebra(&g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_group() {
        let g = FiniteGroup::symmetric3();
        for a in 0..6 {
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        // not abelian
        assert_ne!(g.mul(1, 4), g.mul(4, 1));
    }

    #[test]
    fn d4_is_a_nonabelian_group_of_order_8() {
        let g = FiniteGroup::dihedral4();
        assert_eq!(g.order, 8);
        for a in 0..8 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..8 {
                for c in 0..8 {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        let r = 1;
        let s = 4;
        assert_ne!(g.mul(r, s), g.mul(s, r));
    }

    #[test]
    fn by_name_parses() {
        assert_eq!(FiniteGroup::by_name("c4").unwrap().order, 4);
        assert_eq!(FiniteGroup::by_name("cyclic12").unwrap().order, 12);
        assert_eq!(FiniteGroup::by_name("S3").unwrap().order, 6);
        assert!(FiniteGroup::by_name("c13").is_err());
        assert!(FiniteGroup::by_name("q8").is_err());
    }

    #[test]
    fn all_bundled_examples_validate() {
        for (name, qg) in bundled_examples() {
            assert!(qg.algebra.validate(1e-10).passed(), "{}", name);
        }
    }
}
