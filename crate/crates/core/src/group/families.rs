//! The named-family catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{generate_with, GroupError, GroupTable, DEFAULT_ORDER_CAP};
use crate::algebra::{is_prime, Field, Mat, Perm};

/// Integer parameters keyed by name (`k`, `p`, `q`, `d`, `n`, `a`, `b`, `u`).
pub type FamilyParams = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic {
        n: usize,
    },
    /// Dihedral group of order `2k`.
    Dihedral {
        k: usize,
    },
    /// Generalized quaternion group of order `4k`.
    Quaternion {
        k: usize,
    },
    /// Semidihedral group of order `2^k`.
    Semidihedral {
        k: usize,
    },
    Symmetric {
        d: usize,
    },
    Alternating {
        d: usize,
    },
    /// Upper unitriangular 3×3 matrices over GF(p).
    Heisenberg {
        p: usize,
    },
    /// `⟨x, y | x^{p²} = y^p = 1, yxy⁻¹ = x^{1+p}⟩`.
    ModularP3 {
        p: usize,
    },
    /// `L2(2^k) = SL(2, 2^k)`.
    L2 {
        k: usize,
    },
    GL2 {
        q: usize,
    },
    /// Split metacyclic `⟨x, y | x^a = y^b = 1, yxy⁻¹ = x^u⟩`.
    Metacyclic {
        a: usize,
        b: usize,
        u: usize,
    },
    DirectProduct(Box<Family>, Box<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic { n } => write!(f, "Z{n}"),
            Family::Dihedral { k } => write!(f, "D{}", 2 * k),
            Family::Quaternion { k } => write!(f, "Q{}", 4 * k),
            Family::Semidihedral { k } => write!(f, "SD{}", 1usize << k),
            Family::Symmetric { d } => write!(f, "S{d}"),
            Family::Alternating { d } => write!(f, "A{d}"),
            Family::Heisenberg { p } => write!(f, "Heis({p})"),
            Family::ModularP3 { p } => write!(f, "Mod({})", p * p * p),
            Family::L2 { k } => write!(f, "L2({})", 1usize << k),
            Family::GL2 { q } => write!(f, "GL(2,{q})"),
            Family::Metacyclic { a, b, u } => write!(f, "Meta({a},{b},{u})"),
            Family::DirectProduct(l, r) => write!(f, "{l}x{r}"),
        }
    }
}

fn param(params: &FamilyParams, key: &str) -> Result<usize, GroupError> {
    let v = params
        .get(key)
        .ok_or_else(|| GroupError::BadParams(format!("missing parameter '{key}'")))?;
    usize::try_from(*v)
        .map_err(|_| GroupError::BadParams(format!("parameter '{key}' must be nonnegative")))
}

impl Family {
    /// Resolves a family name (as used on the command line and in group
    /// specs) with its integer parameters.
    pub fn from_params(name: &str, params: &FamilyParams) -> Result<Self, GroupError> {
        let p = |key| param(params, key);
        Ok(match name {
            "cyclic" => Family::Cyclic { n: p("n")? },
            "dihedral" => Family::Dihedral { k: p("k")? },
            "quaternion" | "generalized_quaternion" => Family::Quaternion { k: p("k")? },
            "semidihedral" => Family::Semidihedral { k: p("k")? },
            "symmetric" => Family::Symmetric { d: p("d")? },
            "alternating" => Family::Alternating { d: p("d")? },
            "heisenberg" => Family::Heisenberg { p: p("p")? },
            "modular_p3" => Family::ModularP3 { p: p("p")? },
            "L2" | "l2" => Family::L2 { k: p("k")? },
            "GL2" | "gl2" => Family::GL2 { q: p("q")? },
            "metacyclic" => Family::Metacyclic {
                a: p("a")?,
                b: p("b")?,
                u: p("u")?,
            },
            other => return Err(GroupError::BadParams(format!("unknown family '{other}'"))),
        })
    }

    /// Closed-form order of the advertised group.
    pub fn expected_order(&self) -> Option<usize> {
        Some(match *self {
            Family::Cyclic { n } => n,
            Family::Dihedral { k } => 2 * k,
            Family::Quaternion { k } => 4 * k,
            Family::Semidihedral { k } => 1 << k,
            Family::Symmetric { d } => (1..=d).product(),
            Family::Alternating { d } => ((1..=d).product::<usize>() / 2).max(1),
            Family::Heisenberg { p } | Family::ModularP3 { p } => p * p * p,
            Family::L2 { k } => {
                let q = 1usize << k;
                q * (q * q - 1)
            }
            Family::GL2 { q } => (q * q - 1) * (q * q - q),
            Family::Metacyclic { a, b, .. } => a * b,
            Family::DirectProduct(ref l, ref r) => l.expected_order()? * r.expected_order()?,
        })
    }
}

/// The standard catalog used by the property suites: every group here has
/// order at most 200.
pub fn catalog() -> Vec<Family> {
    use Family::*;
    let z = |n| Box::new(Cyclic { n });
    vec![
        Cyclic { n: 6 },
        DirectProduct(z(2), z(2)),
        Symmetric { d: 3 },
        Dihedral { k: 4 },
        Quaternion { k: 2 },
        Dihedral { k: 5 },
        Dihedral { k: 6 },
        Quaternion { k: 3 },
        Alternating { d: 4 },
        Dihedral { k: 7 },
        Dihedral { k: 8 },
        Quaternion { k: 4 },
        Semidihedral { k: 4 },
        DirectProduct(Box::new(Dihedral { k: 4 }), z(2)),
        DirectProduct(Box::new(Quaternion { k: 2 }), z(2)),
        DirectProduct(Box::new(Symmetric { d: 3 }), z(3)),
        Dihedral { k: 9 },
        Dihedral { k: 10 },
        Quaternion { k: 5 },
        Metacyclic { a: 5, b: 4, u: 2 },
        Metacyclic { a: 7, b: 3, u: 2 },
        DirectProduct(Box::new(Dihedral { k: 4 }), z(3)),
        DirectProduct(Box::new(Quaternion { k: 2 }), z(3)),
        Symmetric { d: 4 },
        Heisenberg { p: 3 },
        ModularP3 { p: 3 },
        Semidihedral { k: 5 },
        GL2 { q: 3 },
        Alternating { d: 5 },
        Heisenberg { p: 5 },
        ModularP3 { p: 5 },
        GL2 { q: 4 },
    ]
}

/// Builds a catalog group; the order is checked against its closed form.
pub fn make_family(family: &Family) -> Result<GroupTable, GroupError> {
    let g = build(family)?;
    let expected = family
        .expected_order()
        .expect("every family has a closed-form order");
    if g.order() != expected {
        return Err(GroupError::OrderMismatch {
            expected,
            got: g.order(),
        });
    }
    Ok(g.with_name(family.to_string()))
}

fn bad(msg: impl Into<String>) -> GroupError {
    GroupError::BadParams(msg.into())
}

fn build(family: &Family) -> Result<GroupTable, GroupError> {
    let cap = DEFAULT_ORDER_CAP;
    match *family {
        Family::Cyclic { n } => {
            if n == 0 {
                return Err(bad("cyclic order must be positive"));
            }
            cyclic_extension(CycExt::new(n, 1, 1, 0)?, cap)
        }
        Family::Dihedral { k } => {
            if k < 3 {
                return Err(bad("dihedral needs k >= 3"));
            }
            cyclic_extension(CycExt::new(k, 2, k - 1, 0)?, cap)
        }
        Family::Quaternion { k } => {
            if k < 2 {
                return Err(bad("generalized quaternion needs k >= 2"));
            }
            cyclic_extension(CycExt::new(2 * k, 2, 2 * k - 1, k)?, cap)
        }
        Family::Semidihedral { k } => {
            if !(4..=13).contains(&k) {
                return Err(bad("semidihedral needs 4 <= k <= 13"));
            }
            let a = 1 << (k - 1);
            cyclic_extension(CycExt::new(a, 2, (1 << (k - 2)) - 1, 0)?, cap)
        }
        Family::Metacyclic { a, b, u } => cyclic_extension(CycExt::new(a, b, u, 0)?, cap),
        Family::ModularP3 { p } => {
            if !is_prime(p as u64) {
                return Err(bad("modular p^3 needs a prime p"));
            }
            cyclic_extension(CycExt::new(p * p, p, 1 + p, 0)?, cap)
        }
        Family::Symmetric { d } => {
            if d == 0 {
                return Err(bad("symmetric group needs d >= 1"));
            }
            let mut gens = vec![Perm::identity(d)];
            if d >= 2 {
                gens = vec![cycle(&[0, 1], d), cycle(&(0..d).collect::<Vec<_>>(), d)];
            }
            GroupTable::generate(family.to_string(), &gens, cap)
        }
        Family::Alternating { d } => {
            if d == 0 {
                return Err(bad("alternating group needs d >= 1"));
            }
            let gens: Vec<Perm> = if d < 3 {
                vec![Perm::identity(d)]
            } else {
                (2..d).map(|i| cycle(&[0, 1, i], d)).collect()
            };
            GroupTable::generate(family.to_string(), &gens, cap)
        }
        Family::Heisenberg { p } => {
            let f = prime_field(p)?;
            let x = Mat::new(f.clone(), &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]])?;
            let y = Mat::new(f, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]])?;
            GroupTable::generate_matrices(family.to_string(), &[x, y], cap)
        }
        Family::L2 { k } => {
            if !(1..=15).contains(&k) {
                return Err(bad("L2(2^k) needs 1 <= k <= 15"));
            }
            let f = Arc::new(Field::new(2, k as u32)?);
            let w = f.primitive_element();
            let torus = Mat::diagonal(f.clone(), &[w, f.inv(w).expect("nonzero")])?;
            let unipotent = Mat::new(f.clone(), &[vec![1, 1], vec![0, 1]])?;
            let weyl = Mat::new(f, &[vec![0, 1], vec![1, 0]])?;
            GroupTable::generate_matrices(family.to_string(), &[torus, unipotent, weyl], cap)
        }
        Family::GL2 { q } => {
            let f = field_of_size(q)?;
            let w = f.primitive_element();
            let torus = Mat::diagonal(f.clone(), &[w, 1])?;
            let unipotent = Mat::new(f.clone(), &[vec![1, 1], vec![0, 1]])?;
            let weyl = Mat::new(f, &[vec![0, 1], vec![1, 0]])?;
            GroupTable::generate_matrices(family.to_string(), &[torus, unipotent, weyl], cap)
        }
        Family::DirectProduct(ref l, ref r) => {
            let left = make_family(l)?;
            let right = make_family(r)?;
            direct_product(&left, &right, cap)
        }
    }
}

fn prime_field(p: usize) -> Result<Arc<Field>, GroupError> {
    if !is_prime(p as u64) {
        return Err(bad(format!("{p} is not prime")));
    }
    Ok(Arc::new(Field::new(p as u32, 1)?))
}

fn field_of_size(q: usize) -> Result<Arc<Field>, GroupError> {
    if is_prime(q as u64) {
        return prime_field(q);
    }
    if q.is_power_of_two() && q > 1 {
        return Ok(Arc::new(Field::new(2, q.trailing_zeros())?));
    }
    Err(bad(format!(
        "field size {q} must be a prime or a power of 2"
    )))
}

fn cycle(points: &[usize], d: usize) -> Perm {
    let mut images: Vec<u32> = (0..d as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()] as u32;
    }
    Perm::from_images(images).expect("a cycle is a bijection")
}

/// Normal forms `x^i y^j` with `x^a = 1`, `y^b = x^c`, `y x y⁻¹ = x^u`.
#[derive(Clone, Debug)]
struct CycExt {
    a: usize,
    b: usize,
    c: usize,
    /// `u^j mod a` for `j < b`.
    upow: Vec<usize>,
}

impl CycExt {
    fn new(a: usize, b: usize, u: usize, c: usize) -> Result<Self, GroupError> {
        if a == 0 || b == 0 {
            return Err(bad("cyclic orders must be positive"));
        }
        let u = u % a;
        let mut upow = vec![1 % a];
        for j in 1..=b {
            upow.push(upow[j - 1] * u % a);
        }
        if upow[b] != 1 % a {
            return Err(bad(format!("u^b = {u}^{b} is not 1 mod {a}")));
        }
        if (u * c) % a != c % a {
            return Err(bad("y^b must be central"));
        }
        upow.truncate(b);
        Ok(CycExt {
            a,
            b,
            c: c % a,
            upow,
        })
    }

    fn mul(&self, &(i, j): &(usize, usize), &(k, l): &(usize, usize)) -> (usize, usize) {
        let mut x = i + self.upow[j] * k;
        let mut y = j + l;
        if y >= self.b {
            y -= self.b;
            x += self.c;
        }
        (x % self.a, y)
    }
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn cyclic_extension(ext: CycExt, cap: usize) -> Result<GroupTable, GroupError> {
    let mut gens = vec![(1 % ext.a, 0)];
    if ext.b > 1 {
        gens.push((0, 1));
    }
    generate_with(
        "",
        (0, 0),
        &gens,
        |p, q| ext.mul(p, q),
        |&(i, j)| {
            let s = power_label("x", i) + &power_label("y", j);
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        },
        cap,
    )
}

fn direct_product(
    left: &GroupTable,
    right: &GroupTable,
    cap: usize,
) -> Result<GroupTable, GroupError> {
    let mut gens: Vec<(usize, usize)> = left.generators().iter().map(|&a| (a, 0)).collect();
    gens.extend(right.generators().iter().map(|&b| (0, b)));
    if gens.is_empty() {
        gens.push((0, 0));
    }
    generate_with(
        "",
        (0, 0),
        &gens,
        |&(a, b), &(c, d)| (left.mul(a, c), right.mul(b, d)),
        |&(a, b)| format!("({},{})", left.label(a), right.label(b)),
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let cases = [
            (Family::Cyclic { n: 12 }, 12),
            (Family::Dihedral { k: 5 }, 10),
            (Family::Quaternion { k: 2 }, 8),
            (Family::Semidihedral { k: 4 }, 16),
            (Family::Symmetric { d: 4 }, 24),
            (Family::Alternating { d: 5 }, 60),
            (Family::Heisenberg { p: 3 }, 27),
            (Family::ModularP3 { p: 3 }, 27),
            (Family::L2 { k: 2 }, 60),
            (Family::L2 { k: 3 }, 504),
            (Family::GL2 { q: 3 }, 48),
            (Family::GL2 { q: 4 }, 180),
            (Family::Metacyclic { a: 5, b: 4, u: 2 }, 20),
            (
                Family::DirectProduct(
                    Box::new(Family::Dihedral { k: 4 }),
                    Box::new(Family::Cyclic { n: 3 }),
                ),
                24,
            ),
        ];
        for (f, n) in cases {
            let g = make_family(&f).unwrap();
            assert_eq!(g.order(), n, "{f}");
            assert_eq!(g.name(), f.to_string());
        }
    }

    #[test]
    fn quaternion_relations() {
        let g = make_family(&Family::Quaternion { k: 2 }).unwrap();
        let (x, y) = (g.generators()[0], g.generators()[1]);
        assert_eq!(g.element_order(x), 4);
        assert_eq!(g.mul(y, y), g.power(x, 2));
        assert_eq!(g.conjugate(x, g.inv(y)), g.inv(x));
        // x^2 is the only involution
        let involutions: Vec<_> = g.elements().filter(|&a| g.element_order(a) == 2).collect();
        assert_eq!(involutions, vec![g.power(x, 2)]);
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            make_family(&Family::Metacyclic { a: 7, b: 2, u: 2 }),
            Err(GroupError::BadParams(_))
        ));
        assert!(make_family(&Family::Dihedral { k: 2 }).is_err());
        assert!(make_family(&Family::GL2 { q: 6 }).is_err());
        assert!(Family::from_params("nope", &FamilyParams::new()).is_err());
        let params = FamilyParams::from([("k".to_string(), 3)]);
        assert_eq!(
            Family::from_params("L2", &params).unwrap(),
            Family::L2 { k: 3 }
        );
        assert!(Family::from_params("L2", &FamilyParams::new()).is_err());
    }

    #[test]
    fn construction_is_deterministic() {
        let a = make_family(&Family::GL2 { q: 3 }).unwrap();
        let b = make_family(&Family::GL2 { q: 3 }).unwrap();
        assert_eq!(a.labels(), b.labels());
        assert!(a.elements().all(|x| a.row(x) == b.row(x)));
    }
}
