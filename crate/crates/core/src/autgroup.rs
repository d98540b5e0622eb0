//! Automorphism groups of small quasi-cyclic codes by exhaustive search,
//! transitivity and minimal-degree analysis, and the numeric premise of the
//! hidden-subgroup indistinguishability argument.
//!
//! For the array shape `H = [I_p | C]` an automorphism is a pair of row
//! permutation `σ` and column permutation `τ` with `σ · C · τ = C`; the full
//! code permutation is `σ⁻¹ ⊕ τ` with left factor `σ`. For the stack shape
//! `M = [I | C]` the roles swap: `τ` ranges over the `p` columns of `C` and
//! the row permutation `ρ` is matched. In both cases the permutations on `p`
//! points form the group reported as `t_group`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::thread;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Permutation};
use crate::qcgen::QcSpec;

/// Default largest `p` for the `S_p` sweep (8! = 40320 permutations).
pub const DEFAULT_MAX_P: usize = 8;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Step `v` to the next permutation in lexicographic order; `false` after the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visit every permutation of `0..p` and collect the hits of `f`, in
/// lexicographic order. Work is split by first image across threads.
fn sweep<T: Send>(p: usize, f: impl Fn(&[usize]) -> Option<T> + Sync) -> Vec<T> {
    if p == 0 {
        return Vec::new();
    }
    let f = &f;
    thread::scope(|scope| {
        let workers: Vec<_> = (0..p)
            .map(|first| {
                scope.spawn(move || {
                    let mut v: Vec<usize> = std::iter::once(first).chain((0..p).filter(|&x| x != first)).collect();
                    let mut found = Vec::new();
                    loop {
                        found.extend(f(&v));
                        if !next_permutation(&mut v[1..]) {
                            break;
                        }
                    }
                    found
                })
            })
            .collect();
        workers.into_iter().flat_map(|w| w.join().expect("sweep worker panicked")).collect()
    })
}

fn check_bound(p: usize, max_p: usize) -> Result<()> {
    if p > max_p {
        return Err(Error::TooLarge { what: "permutation sweep", size: factorial(p), bound: factorial(max_p) });
    }
    Ok(())
}

fn index_lines(lines: impl Iterator<Item = Vec<u16>>, what: &str) -> Result<HashMap<Vec<u16>, usize>> {
    let mut map = HashMap::new();
    for (i, line) in lines.enumerate() {
        if map.insert(line, i).is_some() {
            return Err(Error::Structure(format!("two {what} coincide, so matching is not unique")));
        }
    }
    Ok(map)
}

/// All `(σ, τ)` with `σ · C · τ = C` for a `p × N` array `C`, by sweeping `σ` over `S_p`.
pub fn array_automorphism_pairs(c: &DenseMatrix, max_p: usize) -> Result<Vec<(Permutation, Permutation)>> {
    let (p, ncols) = (c.rows(), c.cols());
    check_bound(p, max_p)?;
    let columns = index_lines((0..ncols).map(|j| c.column(j)), "columns")?;
    Ok(sweep(p, |sigma| {
        // (σC) row i is C row σ(i); τ(j) is where column j of σC sits in C
        let mut images = Vec::with_capacity(ncols);
        let mut col = vec![0u16; p];
        for j in 0..ncols {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot = c.get(sigma[i], j);
            }
            images.push(*columns.get(&col)?);
        }
        Some((Permutation::new(sigma.to_vec()).ok()?, Permutation::new(images).ok()?))
    }))
}

/// All `(ρ, τ)` with `ρ · C · τ = C` for an `N × p` stack `C`, by sweeping `τ` over `S_p`.
pub fn stack_automorphism_pairs(c: &DenseMatrix, max_p: usize) -> Result<Vec<(Permutation, Permutation)>> {
    let (nrows, p) = (c.rows(), c.cols());
    check_bound(p, max_p)?;
    let rows = index_lines((0..nrows).map(|i| c.row(i).to_vec()), "rows")?;
    Ok(sweep(p, |tau| {
        // (Cτ)[r][τ(j)] = C[r][j]; ρ(i) = r where row r of Cτ equals row i of C
        let mut rho = vec![0usize; nrows];
        let mut row = vec![0u16; p];
        for r in 0..nrows {
            for (j, &v) in c.row(r).iter().enumerate() {
                row[tau[j]] = v;
            }
            rho[*rows.get(&row)?] = r;
        }
        Some((Permutation::new(rho).ok()?, Permutation::new(tau.to_vec()).ok()?))
    }))
}

/// `T_H` of an array: the row permutations `σ` admitting a partner.
pub fn array_t_group(c: &DenseMatrix) -> Result<Vec<Permutation>> {
    Ok(array_automorphism_pairs(c, DEFAULT_MAX_P)?.into_iter().map(|(s, _)| s).collect())
}

/// Result of an exhaustive automorphism enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    pub p: usize,
    pub m: usize,
    /// Permutations on `p` points admitting a partner, in lexicographic order.
    pub t_group: Vec<Permutation>,
    /// Full code automorphisms on `mp` points, identity block first.
    pub automorphisms: Vec<Permutation>,
    pub aut_size: usize,
    /// Fewest points moved by a non-identity automorphism; `None` if the group is trivial.
    pub min_degree: Option<usize>,
    pub two_transitive: bool,
    /// `aut_size <= p(p-1)`.
    pub bound_ok: bool,
    /// `2 · aut_size²`.
    pub k_size: u128,
    /// `T` contains the shift `i -> i + 1`.
    pub contains_cycle: bool,
    /// Every automorphism maps the identity block and the circulant block to themselves.
    pub block_diagonal: bool,
    /// No column of the identity block also occurs in the circulant block.
    pub blocks_disjoint: bool,
}

impl AutReport {
    pub fn to_text(&self) -> String {
        let min_degree = self.min_degree.map_or("undefined".to_string(), |d| d.to_string());
        format!(
            "p: {}\nm: {}\naut_size: {}\naut_bound: {}\nbound_ok: {}\nmin_degree: {min_degree}\nmin_degree_bound: {}\ntwo_transitive: {}\ncontains_cycle: {}\nblock_diagonal: {}\nblocks_disjoint: {}\nk_size: {}\n",
            self.p,
            self.m,
            self.aut_size,
            self.p * (self.p - 1),
            self.bound_ok,
            self.p - 1,
            self.two_transitive,
            self.contains_cycle,
            self.block_diagonal,
            self.blocks_disjoint,
            self.k_size
        )
    }
}

/// Enumerate the automorphisms of a spec with the default bound on `p`.
pub fn enumerate_t_group(spec: &QcSpec) -> Result<AutReport> {
    enumerate_t_group_bounded(spec, DEFAULT_MAX_P)
}

pub fn enumerate_t_group_bounded(spec: &QcSpec, max_p: usize) -> Result<AutReport> {
    let p = spec.p();
    let m = spec.m();
    let l = spec.l();
    // (full structured matrix, size of its identity block, list of (left factor, full permutation, t element))
    let (full, ident, found): (DenseMatrix, usize, Vec<(Permutation, Permutation, Permutation)>) = match spec {
        QcSpec::Array(s) => {
            let pairs = array_automorphism_pairs(&s.array_matrix(), max_p)?;
            let found = pairs.into_iter().map(|(sigma, tau)| (sigma.clone(), sigma.inverse().direct_sum(&tau), sigma)).collect();
            (s.parity(), p, found)
        }
        QcSpec::Stack(s) => {
            let pairs = stack_automorphism_pairs(&s.stack_matrix(), max_p)?;
            let found = pairs.into_iter().map(|(rho, tau)| (rho.clone(), rho.inverse().direct_sum(&tau), tau)).collect();
            (s.generator(), s.k(), found)
        }
    };

    let mut t_group = Vec::with_capacity(found.len());
    let mut automorphisms = Vec::with_capacity(found.len());
    for (left, perm, t) in found {
        let check = left.to_matrix(l)?.mul(&full)?.mul(&perm.to_matrix(l)?)?;
        if check != full {
            return Err(Error::Structure("matched permutation pair does not fix the matrix".into()));
        }
        t_group.push(t);
        automorphisms.push(perm);
    }

    let block_diagonal = automorphisms.iter().all(|a| a.images().iter().enumerate().all(|(i, &j)| (i < ident) == (j < ident)));
    let ident_cols: HashSet<Vec<u16>> = (0..ident).map(|j| full.column(j)).collect();
    let blocks_disjoint = (ident..full.cols()).all(|j| !ident_cols.contains(&full.column(j)));

    let aut_size = automorphisms.len();
    let min_degree = min_degree(&automorphisms).ok();
    let two_transitive = is_two_transitive(&t_group, p)?;
    let cycle = Permutation::cycle(p);
    Ok(AutReport {
        p,
        m,
        contains_cycle: t_group.contains(&cycle),
        t_group,
        automorphisms,
        aut_size,
        min_degree,
        two_transitive,
        bound_ok: aut_size <= p * (p - 1),
        k_size: 2 * (aut_size as u128).pow(2),
        block_diagonal,
        blocks_disjoint,
    })
}

/// Whether `perms`, a group on `n` points, acts transitively on ordered pairs of distinct points.
pub fn is_two_transitive(perms: &[Permutation], n: usize) -> Result<bool> {
    if perms.is_empty() {
        return Err(Error::Group("empty permutation set".into()));
    }
    if let Some(bad) = perms.iter().find(|g| g.len() != n) {
        return Err(Error::Group(format!("permutation on {} points, expected {n}", bad.len())));
    }
    let set: HashSet<&Permutation> = perms.iter().collect();
    for g in perms {
        for h in perms {
            if !set.contains(&g.then(h)) {
                return Err(Error::Group("set is not closed under composition".into()));
            }
        }
    }
    if n < 2 {
        return Ok(true);
    }
    let mut seen = HashSet::from([(0usize, 1usize)]);
    let mut queue = VecDeque::from([(0usize, 1usize)]);
    while let Some((x, y)) = queue.pop_front() {
        for g in perms {
            let image = (g.apply(x), g.apply(y));
            if seen.insert(image) {
                queue.push_back(image);
            }
        }
    }
    Ok(seen.len() == n * (n - 1))
}

/// Fewest points moved by a non-identity member.
pub fn min_degree(perms: &[Permutation]) -> Result<usize> {
    perms
        .iter()
        .filter(|g| !g.is_identity())
        .map(Permutation::moved_points)
        .min()
        .ok_or_else(|| Error::Group("minimal degree is undefined for the trivial group".into()))
}

/// Numeric premise of the indistinguishability argument at fixed `(p, m)`.
///
/// Logarithms are base 2.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumPremise {
    pub p: usize,
    pub m: usize,
    pub l: u8,
    /// `0.25 · m · (log m + log p)`.
    pub margin: f64,
    /// `p <= margin`.
    pub block_bound_holds: bool,
    /// Smallest `a` with `2^(p²) <= (mp)^(a·mp)`.
    pub required_a: f64,
    /// `required_a < 1/4`.
    pub premise_holds: bool,
    pub delta: f64,
    /// `log2(4 p^8 e^(-δp))`.
    pub log2_distinguishability_bound: f64,
}

impl QuantumPremise {
    pub fn to_text(&self) -> String {
        format!(
            "p: {}\nm: {}\nl: {}\nblock_bound_margin: {:.4}\nblock_bound_holds: {}\nrequired_a: {:.6}\npremise_holds: {}\ndelta: {}\nlog2_distinguishability_bound: {:.4}\n",
            self.p,
            self.m,
            self.l,
            self.margin,
            self.block_bound_holds,
            self.required_a,
            self.premise_holds,
            self.delta,
            self.log2_distinguishability_bound
        )
    }
}

/// `0.25 · m · log2(mp)`.
pub fn block_bound_margin(p: usize, m: usize) -> f64 {
    0.25 * m as f64 * ((m as f64).log2() + (p as f64).log2())
}

pub fn quantum_premise(p: usize, m: usize, l: u8, delta: f64) -> Result<QuantumPremise> {
    if p < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!("need p, m >= 2, got p = {p}, m = {m}")));
    }
    let margin = block_bound_margin(p, m);
    let (pf, n) = (p as f64, (m * p) as f64);
    let required_a = pf * pf / (n * n.log2());
    Ok(QuantumPremise {
        p,
        m,
        l,
        margin,
        block_bound_holds: pf <= margin,
        required_a,
        premise_holds: required_a < 0.25,
        delta,
        log2_distinguishability_bound: 2.0 + 8.0 * pf.log2() - delta * pf * std::f64::consts::LOG2_E,
    })
}
