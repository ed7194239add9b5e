//! Concrete orthogonal representations and the named constructions built
//! from them.

use crate::clifford::{cd_mul, left_mult, sigma_plus, RepType, SpinRep};
use crate::exact::{kernel_basis, Scalar, SparseMatrix, SparseVector};
use crate::lie::SpanSolver;

use super::{build_candidate, complex_augment, quaternionic_augment, CandidateAlgebra, OrthRep, SrepError};

/// A representation with its commuting complex structures and a torus of
/// `h` given by basis indices.
#[derive(Debug, Clone)]
pub struct Family {
    pub rep: OrthRep,
    pub structures: Vec<SparseMatrix>,
    pub cartan: Vec<usize>,
}

fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// `so(n)` on `R^n`, basis `E_ij = e_j e_i^T - e_i e_j^T` for `i < j`.
pub fn so_n(n: usize) -> Result<Family, SrepError> {
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            mats.push(SparseMatrix::from_triplets(n, n, [(j, i, q(1)), (i, j, q(-1))]));
            labels.push(format!("E{}_{}", i + 1, j + 1));
        }
    }
    let rep = OrthRep::new(&format!("so({n})/R^{n}"), labels, mats, SparseMatrix::identity(n))?;
    let cartan = (0..n / 2).map(|k| crate::clifford::pair_index(n, 2 * k + 1, 2 * k + 2)).collect();
    Ok(Family { rep, structures: vec![], cartan })
}

/// `spin(n)` on `Sigma_n^{(+)}` with basis `e_i e_j / 2`.
pub fn spin_family(n: usize) -> Result<(Family, SpinRep), SrepError> {
    let s = sigma_plus(n).map_err(|_| SrepError::DegenerateForm("spin representation"))?;
    let labels = s.pairs.iter().map(|(i, j)| format!("L{i}_{j}")).collect();
    let rep = OrthRep::new(
        &format!("spin({n})/{}", s.label()),
        labels,
        s.spin_basis.clone(),
        SparseMatrix::identity(s.dim),
    )?;
    Ok((Family { rep, structures: s.structures.clone(), cartan: s.cartan() }, s))
}

pub fn spin_rep(n: usize) -> Result<OrthRep, SrepError> {
    Ok(spin_family(n)?.0.rep)
}

/// Real form of a complex `n x n` matrix given by `(p, q, re, im)` entries;
/// `z_p = x_p + i y_p` sits at coordinates `2p, 2p + 1`.
fn realify(n: usize, entries: &[(usize, usize, i64, i64)]) -> SparseMatrix {
    let mut trip = Vec::new();
    for &(p, r, a, b) in entries {
        let (p, r) = (2 * p, 2 * r);
        trip.extend([(p, r, q(a)), (p, r + 1, q(-b)), (p + 1, r, q(b)), (p + 1, r + 1, q(a))]);
    }
    SparseMatrix::from_triplets(2 * n, 2 * n, trip.into_iter().filter(|t| !t.2.is_zero()))
}

/// `su(n)` on `C^n = R^{2n}`, with the complex structure.
pub fn su_n(n: usize) -> Result<Family, SrepError> {
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for p in 0..n {
        for r in (p + 1)..n {
            mats.push(realify(n, &[(p, r, 1, 0), (r, p, -1, 0)]));
            labels.push(format!("A{}_{}", p + 1, r + 1));
            mats.push(realify(n, &[(p, r, 0, 1), (r, p, 0, 1)]));
            labels.push(format!("S{}_{}", p + 1, r + 1));
        }
    }
    let mut cartan = Vec::new();
    for p in 0..n.saturating_sub(1) {
        cartan.push(mats.len());
        mats.push(realify(n, &[(p, p, 0, 1), (p + 1, p + 1, 0, -1)]));
        labels.push(format!("D{}", p + 1));
    }
    let i = realify(n, &(0..n).map(|p| (p, p, 0, 1)).collect::<Vec<_>>());
    let rep = OrthRep::new(&format!("su({n})/C^{n}"), labels, mats, SparseMatrix::identity(2 * n))?;
    Ok(Family { rep, structures: vec![i], cartan })
}

fn right_mult(u: usize) -> SparseMatrix {
    let unit = |k: usize| {
        let mut v = vec![0i64; 4];
        v[k] = 1;
        v
    };
    let trip = (0..4).flat_map(|j| {
        cd_mul(&unit(j), &unit(u)).into_iter().enumerate().filter(|(_, v)| *v != 0).map(move |(r, v)| (r, j, q(v)))
    });
    SparseMatrix::from_triplets(4, 4, trip.collect::<Vec<_>>())
}

fn block(n: usize, blocks: &[(usize, usize, SparseMatrix)]) -> SparseMatrix {
    let trip = blocks
        .iter()
        .flat_map(|(p, r, m)| m.triplets().map(move |(a, b, v)| (4 * p + a, 4 * r + b, v.clone())).collect::<Vec<_>>());
    SparseMatrix::from_triplets(4 * n, 4 * n, trip)
}

/// `sp(n)` on `H^n = R^{4n}` acting on the left, with `I`, `J` the right
/// multiplications by the units `i`, `j`.
pub fn sp_n(n: usize) -> Result<Family, SrepError> {
    let l: Vec<SparseMatrix> = (0..4).map(|u| left_mult(4, u)).collect();
    let names = ["1", "i", "j", "k"];
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for p in 0..n {
        for r in (p + 1)..n {
            mats.push(block(n, &[(p, r, l[0].clone()), (r, p, l[0].scale(&q(-1)))]));
            labels.push(format!("X{}_{}", p + 1, r + 1));
            for u in 1..4 {
                mats.push(block(n, &[(p, r, l[u].clone()), (r, p, l[u].clone())]));
                labels.push(format!("{}{}_{}", names[u], p + 1, r + 1));
            }
        }
    }
    let mut cartan = Vec::new();
    for p in 0..n {
        for u in 1..4 {
            if u == 1 {
                cartan.push(mats.len());
            }
            mats.push(block(n, &[(p, p, l[u].clone())]));
            labels.push(format!("{}{}", names[u], p + 1));
        }
    }
    let diag = |m: SparseMatrix| block(n, &(0..n).map(|p| (p, p, m.clone())).collect::<Vec<_>>());
    let (i, j) = (diag(right_mult(1)), diag(right_mult(2)));
    let rep = OrthRep::new(&format!("sp({n})/H^{n}"), labels, mats, SparseMatrix::identity(4 * n))?;
    Ok(Family { rep, structures: vec![i, j], cartan })
}

/// Cubic monomials `x^a y^b z^c` in lexicographic order of `(a, b, c)`, descending.
fn cubic_monomials() -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in (0..=3).rev() {
        for b in (0..=3 - a).rev() {
            v.push([a, b, 3 - a - b]);
        }
    }
    v
}

/// `so(3)` on the seven-dimensional space of harmonic cubic polynomials,
/// with the Fischer inner product `<x^a, x^b> = a! delta_ab`.
pub fn so3_harmonic_cubics() -> Result<Family, SrepError> {
    let mons = cubic_monomials();
    let pos = |e: [usize; 3]| mons.iter().position(|m| *m == e).unwrap();
    let lin = |e: [usize; 3]| (0..3).position(|k| e[k] == 1).unwrap();
    // Laplacian to linear polynomials
    let mut trip = Vec::new();
    for (c, m) in mons.iter().enumerate() {
        for k in 0..3 {
            if m[k] >= 2 {
                let mut e = *m;
                e[k] -= 2;
                trip.push((lin(e), c, q((m[k] * (m[k] - 1)) as i64)));
            }
        }
    }
    let lap = SparseMatrix::from_triplets(3, 10, trip);
    let harm = kernel_basis(&lap);
    // vector fields x_a d_b - x_b d_a
    let field = |a: usize, b: usize| {
        let mut trip = Vec::new();
        for (c, m) in mons.iter().enumerate() {
            for (s, from, to) in [(1, b, a), (-1, a, b)] {
                if m[from] > 0 {
                    let mut e = *m;
                    e[from] -= 1;
                    e[to] += 1;
                    trip.push((pos(e), c, q(s * m[from] as i64)));
                }
            }
        }
        SparseMatrix::from_triplets(10, 10, trip)
    };
    let solver = SpanSolver::from_vectors(harm.clone())?;
    let restrict = |f: &SparseMatrix| {
        let cols: Vec<SparseVector> =
            harm.iter().map(|h| solver.coordinates_vec(&f.mul_vec(h)).expect("harmonic image")).collect();
        SparseMatrix::from_triplets(
            7,
            7,
            cols.iter().enumerate().flat_map(|(c, v)| v.iter().map(move |(r, x)| (r, c, x.clone()))).collect::<Vec<_>>(),
        )
    };
    let fact = |n: usize| (1..=n).product::<usize>() as i64;
    let fischer = SparseMatrix::diagonal(&mons.iter().map(|m| q(m.iter().map(|&k| fact(k)).product())).collect::<Vec<_>>());
    let gram = SparseMatrix::from_triplets(
        7,
        7,
        (0..7)
            .flat_map(|i| (0..7).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, harm[i].dot(&fischer.mul_vec(&harm[j]))))
            .filter(|t| !t.2.is_zero())
            .collect::<Vec<_>>(),
    );
    let mats = vec![restrict(&field(1, 2)), restrict(&field(2, 0)), restrict(&field(0, 1))];
    let labels = vec!["Lx".into(), "Ly".into(), "Lz".into()];
    let rep = OrthRep::new("so(3)/H3", labels, mats, gram)?;
    Ok(Family { rep, structures: vec![], cartan: vec![2] })
}

/// A named algebra `g = h + m` together with a torus of `g`.
#[derive(Debug, Clone)]
pub struct Construction {
    pub name: String,
    pub rep: OrthRep,
    pub candidate: CandidateAlgebra,
    pub cartan: Vec<usize>,
    /// `(c, r)` for augmented constructions.
    pub augmentation: Option<(Scalar, Scalar)>,
}

fn plain(name: &str, fam: Family, extra_cartan: Vec<usize>) -> Result<Construction, SrepError> {
    let candidate = build_candidate(&fam.rep)?;
    let mut cartan = fam.cartan;
    cartan.extend(extra_cartan);
    Ok(Construction { name: name.into(), rep: fam.rep, candidate, cartan, augmentation: None })
}

fn augmented(name: &str, fam: Family) -> Result<Construction, SrepError> {
    let res = match fam.structures.len() {
        1 => complex_augment(&fam.rep, &fam.structures[0])?,
        2 => quaternionic_augment(&fam.rep, &fam.structures[0], &fam.structures[1])?,
        _ => return Err(SrepError::BadStructure("no commuting complex structure")),
    };
    let mut cartan = fam.cartan;
    // the generator acting by I
    cartan.push(fam.rep.dim_h());
    Ok(Construction {
        name: name.into(),
        rep: res.augmented,
        candidate: res.candidate,
        cartan,
        augmentation: Some((res.c, res.r)),
    })
}

/// Names accepted by [`construct`].
pub const TARGETS: &str = "f4, e6, e7, e8, sp3, n6, cp<n>, hp<n>, sphere<n>, spin<n>";

/// Build a named algebra: `f4`, `e6`, `e7`, `e8`, `sp3`, `n6`, `cp<n>`
/// (`su(n) + u(1) + C^n`), `hp<n>` (`sp(n) + sp(1) + H^n`), `sphere<n>`
/// (`so(n) + R^n`) or `spin<n>` (`spin(n) + Sigma_n^{(+)}`, augmented
/// according to its type).
pub fn construct(name: &str) -> Result<Construction, SrepError> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match name {
        "f4" => spin_named("f4", 9),
        "e6" => spin_named("e6", 10),
        "e7" => spin_named("e7", 12),
        "e8" => spin_named("e8", 16),
        "sp3" => spin_named("sp3", 5),
        "n6" => spin_named("n6", 6),
        _ => {
            if let Some(n) = num("cp").filter(|&n| n >= 2) {
                augmented(name, su_n(n)?)
            } else if let Some(n) = num("hp").filter(|&n| n >= 1) {
                augmented(name, sp_n(n)?)
            } else if let Some(n) = num("sphere").filter(|&n| n >= 2) {
                let fam = so_n(n)?;
                let extra = if n % 2 == 1 { vec![fam.rep.dim_h() + n - 1] } else { vec![] };
                plain(name, fam, extra)
            } else if let Some(n) = num("spin").filter(|&n| n >= 3) {
                spin_named(name, n)
            } else {
                Err(SrepError::UnknownTarget(name.to_string()))
            }
        }
    }
}

fn spin_named(name: &str, n: usize) -> Result<Construction, SrepError> {
    let (fam, s) = spin_family(n)?;
    match s.rep_type {
        RepType::Real => plain(name, fam, vec![]),
        _ => augmented(name, fam),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        assert_eq!(so_n(4).unwrap().rep.dim_h(), 6);
        let su = su_n(3).unwrap();
        assert_eq!((su.rep.dim_h(), su.rep.dim_m()), (8, 6));
        let sp = sp_n(2).unwrap();
        assert_eq!((sp.rep.dim_h(), sp.rep.dim_m()), (10, 8));
        let c = so3_harmonic_cubics().unwrap();
        assert_eq!((c.rep.dim_h(), c.rep.dim_m()), (3, 7));
    }

    #[test]
    fn harmonic_cubics_are_irreducible_of_real_type() {
        let c = so3_harmonic_cubics().unwrap();
        assert_eq!(crate::clifford::centralizer(&c.rep.rho).len(), 1);
    }

    #[test]
    fn unknown_target() {
        assert!(matches!(construct("g2"), Err(SrepError::UnknownTarget(_))));
        assert!(matches!(construct("cp1"), Err(SrepError::UnknownTarget(_))));
    }
}
