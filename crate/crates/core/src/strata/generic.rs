//! Brill–Noether general curves of genus 6: Gr(2,5) ∩ P^5 ∩ Q in P^9.
//!
//! A codimension-4 linear section of Gr(2,5) is cut by four independent
//! linear forms on the Plücker space, i.e. by a 4-dimensional subspace U of
//! its dual. GL_5 acts on the 1023 nonzero dual vectors through the
//! transpose of its second exterior power; orbits of independent 4-subsets
//! come from the orbit tree and are then merged into orbits of subspaces.
//! The surfaces S_U kept are the two-dimensional ones with finitely many
//! singular points. On each, curves are quadric sections, swept over
//! quadrics on P(U^⊥) = P^5 modulo those containing S, and deduplicated under
//! the stabilizer of U. Smoothness is certified at points of degree at most
//! 6; sections singular only beyond that are reducible, and their point
//! counts are not those of a genus-6 curve.

use std::collections::HashSet;
use std::sync::{Arc, Mutex, OnceLock};

use crate::binfield::{small_field, FieldCtx, FieldElem};
use crate::census::CurveRecord;
use crate::error::{CensusError, Result};
use crate::groupact::{fingerprint, gl5, wedge2_unchecked, F2Mat, GroupLike, PLUCKER};
use crate::linalg::{rank_over, solve_f2, Subspace64};
use crate::orbitree::{ExplicitAction, OrbitTree};
use crate::polyform::{FormSpace, LinMap};
use crate::smoothcert::{
    counts_from_closed, counts_from_lanes, exact_degree, is_orbit_rep, PointFunctionals, SweepTable, MAX_DEGREE,
};
use crate::strata::{Shard, Stratum};
use crate::weilzeta;

const ZERO: FieldElem = FieldElem::ZERO;
const ONE: FieldElem = FieldElem::ONE;

pub const DUAL_POINTS: usize = 1023;

pub type DualAction = ExplicitAction<F2Mat, fn(&F2Mat, usize) -> usize>;

fn dual_act(g: &F2Mat, p: usize) -> usize {
    g.apply(p as u32 + 1) as usize - 1
}

/// wedge2(A)^T for every A in GL_5, acting on linear forms of the Plücker
/// space: the form g·l has zero set wedge2(A)^{-1}(Z(l)).
pub fn dual_action() -> DualAction {
    ExplicitAction {
        elements: gl5().iter().map(|a| wedge2_unchecked(a).transpose()).collect(),
        identity: F2Mat::identity(10),
        npoints: DUAL_POINTS,
        act: dual_act,
    }
}

/// Orbit tree of linearly independent subsets of dual vectors.
pub fn dual_tree(max_level: usize) -> Result<OrbitTree<DualAction>> {
    OrbitTree::build_with(
        dual_action(),
        max_level,
        Box::new(|s: &[usize], x: usize| {
            !Subspace64::from_vectors(s.iter().map(|&p| p as u64 + 1)).contains(x as u64 + 1)
        }),
    )
}

/// Number of independent k-subsets of F_2^10 \ {0}.
pub fn independent_subsets(k: usize) -> u128 {
    let ordered: u128 = (0..k).map(|i| 1024u128 - (1 << i)).product();
    ordered / (1..=k as u128).product::<u128>()
}

/// A GL_5-orbit of 4-dimensional subspaces of the dual Plücker space.
#[derive(Clone, Debug)]
pub struct SubspaceOrbit {
    /// Basis of the representative subspace.
    pub forms: Vec<u16>,
    /// Dual elements g with g·U = U.
    pub stabilizer: Vec<F2Mat>,
}

fn span_vectors(basis: &[u16]) -> Vec<u16> {
    (1u32..1 << basis.len())
        .map(|m| (0..basis.len()).filter(|&i| (m >> i) & 1 == 1).fold(0u16, |acc, i| acc ^ basis[i]))
        .collect()
}

/// Orbits of 4-dimensional subspaces, obtained by merging the level-4
/// representatives of the tree whose spans are equivalent.
pub fn subspace_orbits(tree: &OrbitTree<DualAction>) -> Result<Vec<SubspaceOrbit>> {
    let reps = tree.level(4);
    let mut done = vec![false; reps.len()];
    let mut out = Vec::new();
    for ri in 0..reps.len() {
        if done[ri] {
            continue;
        }
        let forms: Vec<u16> = reps[ri].subset.iter().map(|&p| p as u16 + 1).collect();
        let vecs = span_vectors(&forms);
        let mut stab: HashSet<F2Mat> = HashSet::new();
        for a in 0..vecs.len() {
            for b in a + 1..vecs.len() {
                for c in b + 1..vecs.len() {
                    for d in c + 1..vecs.len() {
                        let basis = [vecs[a], vecs[b], vecs[c], vecs[d]];
                        if Subspace64::from_vectors(basis.iter().map(|&v| u64::from(v))).dim() < 4 {
                            continue;
                        }
                        let pts: Vec<usize> = basis.iter().map(|&v| v as usize - 1).collect();
                        let (rj, g) = tree.retrieve(&pts)?;
                        done[rj] = true;
                        if rj == ri {
                            let gi = g.inv();
                            for k in &reps[ri].stabilizer {
                                stab.insert(gi.mul(k));
                            }
                        }
                    }
                }
            }
        }
        let mut stabilizer: Vec<F2Mat> = stab.into_iter().collect();
        stabilizer.sort_unstable();
        out.push(SubspaceOrbit { forms, stabilizer });
    }
    Ok(out)
}

/// Alternating bilinear form on F^5 attached to a Plücker linear form:
/// rows[a] has bit b set when the form pairs e_a with e_b.
fn alternating(l: u16) -> [u8; 5] {
    let mut rows = [0u8; 5];
    for (idx, &(a, b)) in PLUCKER.iter().enumerate() {
        if (l >> idx) & 1 == 1 {
            rows[a] |= 1 << b;
            rows[b] |= 1 << a;
        }
    }
    rows
}

/// B(x, e_k) for k = 0..5.
fn pair_with_basis(rows: &[u8; 5], x: &[FieldElem; 5]) -> [FieldElem; 5] {
    std::array::from_fn(|k| (0..5).filter(|&a| (rows[a] >> k) & 1 == 1).fold(ZERO, |acc, a| acc + x[a]))
}

fn plucker(ctx: &FieldCtx, u: &[FieldElem; 5], v: &[FieldElem; 5]) -> Vec<FieldElem> {
    PLUCKER.iter().map(|&(a, b)| ctx.mul(u[a], v[b]) + ctx.mul(u[b], v[a])).collect()
}

/// Solutions of an affine system A x = c over F_q, all listed.
fn solve_all(ctx: &FieldCtx, a: &[Vec<FieldElem>], c: &[FieldElem], n: usize) -> Vec<Vec<FieldElem>> {
    let mut rows: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(c)
        .map(|(r, &ci)| {
            let mut r = r.clone();
            r.push(ci);
            r
        })
        .collect();
    let rank = rank_over(ctx, &mut rows);
    let mut pivots = Vec::new();
    for row in rows.iter().take(rank) {
        let p = row.iter().position(|x| !x.is_zero()).unwrap();
        if p == n {
            return Vec::new();
        }
        pivots.push(p);
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let q = ctx.size() as u64;
    let total = q.pow(free.len() as u32);
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut x = vec![ZERO; n];
        let mut r = idx;
        for &f in &free {
            x[f] = FieldElem((r % q) as u32);
            r /= q;
        }
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = free.iter().fold(rows[i][n], |acc, &f| acc + ctx.mul(rows[i][f], x[f]));
        }
        out.push(x);
    }
    out
}

/// A point of S over F_{2^k} with the data needed to test quadric sections.
#[derive(Clone, Debug)]
pub struct SurfacePoint {
    /// Normalized Plücker coordinates.
    pub plucker: Vec<FieldElem>,
    pub singular: bool,
    /// Two tangent vectors spanning T_P S modulo P (smooth points only).
    pub tangents: Vec<Vec<FieldElem>>,
}

/// Rank of `rows` over the field without disturbing them.
fn rank_of(ctx: &FieldCtx, rows: &[Vec<FieldElem>]) -> usize {
    let mut m = rows.to_vec();
    rank_over(ctx, &mut m)
}

/// Tangent data at the point u ∧ v of S.
fn tangent_data(
    ctx: &FieldCtx,
    alts: &[[u8; 5]],
    u: &[FieldElem; 5],
    v: &[FieldElem; 5],
    p: &[FieldElem],
) -> (bool, Vec<Vec<FieldElem>>) {
    // T P Gr is spanned by u ∧ e_m and v ∧ e_m; the forms restricted there
    let mut m: Vec<Vec<FieldElem>> = Vec::with_capacity(alts.len());
    for rows in alts {
        let mut r = pair_with_basis(rows, u).to_vec();
        r.extend(pair_with_basis(rows, v));
        m.push(r);
    }
    if rank_of(ctx, &m) < alts.len() {
        return (true, Vec::new());
    }
    let units: Vec<[FieldElem; 5]> = (0..5).map(|i| std::array::from_fn(|j| if i == j { ONE } else { ZERO })).collect();
    let spanning: Vec<Vec<FieldElem>> =
        units.iter().map(|e| plucker(ctx, u, e)).chain(units.iter().map(|e| plucker(ctx, v, e))).collect();
    let kernel = crate::linalg::kernel_over(ctx, &m, 10);
    let mut basis = vec![p.to_vec()];
    let mut tangents = Vec::new();
    for c in kernel {
        let x: Vec<FieldElem> =
            (0..10).map(|i| (0..10).fold(ZERO, |acc, j| acc + ctx.mul(c[j], spanning[j][i]))).collect();
        basis.push(x.clone());
        if rank_of(ctx, &basis) == basis.len() {
            tangents.push(x);
            if tangents.len() == 2 {
                break;
            }
        } else {
            basis.pop();
        }
    }
    debug_assert_eq!(tangents.len(), 2);
    (false, tangents)
}

/// All points of S = Gr(2,5) ∩ Z(forms) over F_{2^k}, one per line of F^5,
/// enumerated by Schubert cell of the reduced row echelon form.
pub fn surface_points(forms: &[u16], k: u32, with_tangents: bool) -> Vec<SurfacePoint> {
    let ctx = small_field(k);
    let q = ctx.size() as u64;
    let alts: Vec<[u8; 5]> = forms.iter().map(|&l| alternating(l)).collect();
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let free_u: Vec<usize> = (i + 1..5).filter(|&x| x != j).collect();
            let free_v: Vec<usize> = (j + 1..5).collect();
            for idx in 0..q.pow(free_u.len() as u32) {
                let mut u = [ZERO; 5];
                u[i] = ONE;
                let mut r = idx;
                for &f in &free_u {
                    u[f] = FieldElem((r % q) as u32);
                    r /= q;
                }
                // B(u, e_j + sum b_m e_m) = 0 for each form
                let mut a = Vec::with_capacity(alts.len());
                let mut c = Vec::with_capacity(alts.len());
                for rows in &alts {
                    let pb = pair_with_basis(rows, &u);
                    a.push(free_v.iter().map(|&m| pb[m]).collect::<Vec<_>>());
                    c.push(pb[j]);
                }
                for b in solve_all(ctx, &a, &c, free_v.len()) {
                    let mut v = [ZERO; 5];
                    v[j] = ONE;
                    for (&m, &bm) in free_v.iter().zip(&b) {
                        v[m] = bm;
                    }
                    let p = plucker(ctx, &u, &v);
                    let (singular, tangents) = if with_tangents {
                        tangent_data(ctx, &alts, &u, &v, &p)
                    } else {
                        (tangent_data(ctx, &alts, &u, &v, &p).0, Vec::new())
                    };
                    out.push(SurfacePoint { plucker: p, singular, tangents });
                }
            }
        }
    }
    out
}

/// #S(F_{2^k}) and the number of singular points among them.
pub fn surface_counts(forms: &[u16], k: u32) -> (u64, u64) {
    let pts = surface_points(forms, k, false);
    (pts.len() as u64, pts.iter().filter(|p| p.singular).count() as u64)
}

/// Closed points of S of degree 1..=max_degree, one representative each.
pub fn closed_surface_points(forms: &[u16], max_degree: u32) -> Vec<(u32, SurfacePoint)> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for p in surface_points(forms, d, true) {
            if exact_degree(&p.plucker, d) == d && is_orbit_rep(&p.plucker, d) {
                out.push((d, p));
            }
        }
    }
    out
}

/// Signature used to keep a surface: #S(F_{2^k}) and singular counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSignature {
    pub points: Vec<u64>,
    pub singular: Vec<u64>,
}

/// Largest field degree used for the surface filter.
pub const FILTER_DEGREE: u32 = 4;

impl SurfaceSignature {
    pub fn of(forms: &[u16]) -> SurfaceSignature {
        let (points, singular) = (1..=FILTER_DEGREE).map(|k| surface_counts(forms, k)).unzip();
        SurfaceSignature { points, singular }
    }

    /// Two-dimensional: a threefold of this degree has far more than
    /// 2 q^2 points over F_16.
    pub fn is_surface(&self) -> bool {
        self.points[FILTER_DEGREE as usize - 1] < 2 << (2 * FILTER_DEGREE)
    }

    /// Finitely many singular points. A singular curve would contribute on
    /// the order of q points over some F_q with q <= 16; an isolated-singular
    /// quintic del Pezzo has at most four.
    pub fn isolated_singularities(&self) -> bool {
        self.singular.iter().all(|&s| s <= 4)
    }

    pub fn is_smooth(&self) -> bool {
        self.singular.iter().all(|&s| s == 0)
    }

    /// A two-dimensional proper linear section is connected in codimension
    /// one, so finitely many singular points also force it to be integral.
    pub fn is_candidate(&self) -> bool {
        self.is_surface() && self.isolated_singularities()
    }
}

/// Number of quadric monomials on P^5.
pub const QUADRICS: u32 = 21;

/// A quintic del Pezzo surface S = Gr(2,5) ∩ P(U^⊥) with its sweep data.
pub struct Surface {
    pub index: usize,
    pub forms: Vec<u16>,
    pub signature: SurfaceSignature,
    /// Dual elements fixing U.
    pub stabilizer: Vec<F2Mat>,
    /// Basis of U^⊥ in reduced echelon form, with its pivot coordinates.
    pub w_basis: Vec<u16>,
    pub pivots: Vec<usize>,
    /// Quadrics on P(U^⊥) vanishing on S.
    pub ideal: Subspace64,
    /// Dimension of quadrics on P^9 modulo those containing P(U^⊥).
    pub quotient_dim: usize,
    pub table: SweepTable,
    /// Functionals at the closed points of degree 7, built on first use.
    split_points: OnceLock<Vec<Vec<Vec<FieldElem>>>>,
    /// Quadric substitution for each stabilizer element.
    maps: Vec<LinMap>,
}

fn quadric_space() -> Arc<FormSpace> {
    FormSpace::new(&[(6, 2)])
}

/// Annihilator of the forms in F_2^10, in reduced echelon form.
fn annihilator(forms: &[u16]) -> (Vec<u16>, Vec<usize>) {
    let rows: Vec<(u64, bool)> = forms.iter().map(|&l| (u64::from(l), false)).collect();
    let (_, kernel) = solve_f2(&rows, 10).expect("homogeneous system");
    let mut basis: Vec<u16> = kernel.iter().map(|&v| v as u16).collect();
    let mut pivots = Vec::new();
    for i in 0..basis.len() {
        let p = (0..10).find(|&c| (basis[i] >> c) & 1 == 1 && !pivots.contains(&c)).expect("independent");
        // clear column p in the other rows
        let bi = basis[i];
        for (j, b) in basis.iter_mut().enumerate() {
            if j != i && (*b >> p) & 1 == 1 {
                *b ^= bi;
            }
        }
        pivots.push(p);
    }
    (basis, pivots)
}

/// Dimension of the quadrics on P^9 modulo those vanishing on P(U^⊥).
fn plane_quotient_dim(w_basis: &[u16]) -> usize {
    // restriction to P(U^⊥) sends x_a x_b to the product of coordinate forms
    let mut span = Subspace64::new();
    let sp = quadric_space();
    for a in 0..10 {
        for b in a..10 {
            let la: Vec<bool> = w_basis.iter().map(|w| (w >> a) & 1 == 1).collect();
            let lb: Vec<bool> = w_basis.iter().map(|w| (w >> b) & 1 == 1).collect();
            let mut v = 0u64;
            for i in 0..6 {
                for j in 0..6 {
                    if la[i] && lb[j] {
                        let mut e = vec![0u8; 6];
                        e[i] += 1;
                        e[j] += 1;
                        v ^= 1 << sp.index_of(&e).unwrap();
                    }
                }
            }
            span.insert(v);
        }
    }
    span.dim()
}

/// W-coordinates of a point and the functionals whose common vanishing on a
/// quadric means the section is singular there: the value, and the polar
/// form against two tangent directions when S is smooth at the point.
fn quadric_functionals(
    sp: &FormSpace,
    pivots: &[usize],
    d: u32,
    p: &SurfacePoint,
) -> (Vec<FieldElem>, Vec<Vec<FieldElem>>) {
    let ctx = small_field(d);
    let coords = |x: &[FieldElem]| -> Vec<FieldElem> { pivots.iter().map(|&c| x[c]).collect() };
    let c = coords(&p.plucker);
    let mut functionals = vec![sp.monomial_values(ctx, &c)];
    if !p.singular {
        let partials: Vec<Vec<FieldElem>> = (0..6).map(|v| sp.partial_values(ctx, &c, v)).collect();
        for t in &p.tangents {
            let tc = coords(t);
            functionals.push(
                (0..sp.dim()).map(|m| (0..6).fold(ZERO, |acc, v| acc + ctx.mul(partials[v][m], tc[v]))).collect(),
            );
        }
    }
    (c, functionals)
}

/// Counts of a curve D + D' with D, D' smooth rational and meeting in a
/// single closed point of degree 7, split over F_2 or conjugate over F_4.
/// Neither is the count of a genus-6 curve.
pub const SPLIT_SIGNATURES: [[i64; 6]; 2] = [[6, 10, 18, 34, 66, 130], [0, 10, 0, 34, 0, 130]];

/// Whether the counts are those of a smooth genus-6 curve. A section that is
/// smooth at every point of degree at most 6 but fails this is singular
/// somewhere of higher degree.
pub fn genus_six_counts(counts: &[i64; 6]) -> bool {
    weilzeta::counts_to_lpoly(counts, 2, 6).map(|w| weilzeta::admissible(&w)).unwrap_or(false)
}

/// Degree of the points where split sections meet.
const SPLIT_DEGREE: u32 = 7;

impl Surface {
    fn build(index: usize, orbit: &SubspaceOrbit, signature: SurfaceSignature) -> Result<Surface> {
        let (w_basis, pivots) = annihilator(&orbit.forms);
        let sp = quadric_space();
        let mut pts = Vec::new();
        let mut ideal_rows = Vec::new();
        for (d, p) in closed_surface_points(&orbit.forms, MAX_DEGREE) {
            let (c, functionals) = quadric_functionals(&sp, &pivots, d, &p);
            for b in 0..d {
                let row =
                    functionals[0].iter().enumerate().fold(0u64, |acc, (i, v)| acc | u64::from((v.0 >> b) & 1) << i);
                ideal_rows.push((row, false));
            }
            pts.push(PointFunctionals { degree: d, coords: c, functionals });
        }
        let (_, kernel) = solve_f2(&ideal_rows, QUADRICS).expect("homogeneous system");
        let ideal = Subspace64::from_vectors(kernel);
        if ideal.dim() != 5 {
            return Err(CensusError::Degenerate(format!("surface {index}: {} quadrics contain S", ideal.dim())));
        }
        let maps = orbit
            .stabilizer
            .iter()
            .map(|g| {
                let m = g.transpose();
                let cols: Vec<u32> = w_basis.iter().map(|&w| m.apply(u32::from(w))).collect();
                // row i of the 6x6 matrix: coordinate i of the images
                let rows: Vec<u32> = pivots
                    .iter()
                    .map(|&pc| cols.iter().enumerate().fold(0u32, |acc, (j, &c)| acc | ((c >> pc) & 1) << j))
                    .collect();
                LinMap::from_columns(&sp.substitution_columns(&[rows]))
            })
            .collect();
        Ok(Surface {
            index,
            forms: orbit.forms.clone(),
            signature,
            stabilizer: orbit.stabilizer.clone(),
            quotient_dim: plane_quotient_dim(&w_basis),
            w_basis,
            pivots,
            ideal,
            table: SweepTable::new(pts, sp.dim()),
            split_points: OnceLock::new(),
            maps,
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.signature.is_smooth()
    }

    /// Canonical representative of the class of a quadric modulo I_2(S).
    pub fn reduce(&self, q: u64) -> u64 {
        self.ideal.reduce(q)
    }

    /// Free coordinates of the reduced quadrics.
    pub fn class_basis(&self) -> Vec<u64> {
        self.ideal.free_positions(QUADRICS).into_iter().map(|i| 1u64 << i).collect()
    }

    /// The class of q after substituting the i-th stabilizer element.
    pub fn act(&self, i: usize, q: u64) -> u64 {
        self.reduce(self.maps[i].apply(q))
    }

    /// Whether the section by q is singular at some point of degree 7.
    pub fn singular_in_degree_seven(&self, q: u64) -> bool {
        let eval =
            |f: &Vec<FieldElem>| (0..QUADRICS as usize).filter(|&m| (q >> m) & 1 == 1).fold(ZERO, |acc, m| acc + f[m]);
        let points = self.split_points.get_or_init(|| {
            let sp = quadric_space();
            surface_points(&self.forms, SPLIT_DEGREE, true)
                .into_iter()
                .filter(|p| {
                    exact_degree(&p.plucker, SPLIT_DEGREE) == SPLIT_DEGREE && is_orbit_rep(&p.plucker, SPLIT_DEGREE)
                })
                .map(|p| quadric_functionals(&sp, &self.pivots, SPLIT_DEGREE, &p).1)
                .collect()
        });
        points.iter().any(|fs| fs.iter().all(|f| eval(f).is_zero()))
    }

    /// Smooth quadric sections up to the stabilizer.
    pub fn classes(&self) -> Vec<BnClass> {
        let basis = self.class_basis();
        let mut out = Vec::new();
        self.table.sweep(0, &basis, |q, lanes| {
            let mut fixing = Vec::new();
            for i in 0..self.maps.len() {
                let img = self.act(i, q);
                if img < q {
                    return;
                }
                if img == q {
                    fixing.push(i);
                }
            }
            let counts = counts_from_closed(&counts_from_lanes(lanes, self.table.degrees()));
            if !genus_six_counts(&counts) {
                return;
            }
            out.push(BnClass { surface: self.index, quadric: q, fixing, counts });
        });
        out
    }
}

#[derive(Clone, Debug)]
pub struct BnClass {
    pub surface: usize,
    pub quadric: u64,
    /// Indices into the surface stabilizer.
    pub fixing: Vec<usize>,
    pub counts: [i64; 6],
}

impl BnClass {
    pub fn model_string(&self) -> String {
        format!("bn:{}:{:06x}", self.surface, self.quadric)
    }
}

/// The candidate surfaces in orbit order.
pub fn build_surfaces() -> Result<Vec<Surface>> {
    let tree = dual_tree(4)?;
    let orbits = subspace_orbits(&tree)?;
    drop(tree);
    let mut out = Vec::new();
    for o in &orbits {
        let sig = SurfaceSignature::of(&o.forms);
        if sig.is_candidate() {
            out.push(Surface::build(out.len(), o, sig)?);
        }
    }
    Ok(out)
}

static SURFACES: OnceLock<Vec<Surface>> = OnceLock::new();

pub fn surfaces() -> Result<&'static [Surface]> {
    static BUILDING: Mutex<()> = Mutex::new(());
    if let Some(s) = SURFACES.get() {
        return Ok(s);
    }
    let _guard = BUILDING.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(s) = SURFACES.get() {
        return Ok(s);
    }
    let built = build_surfaces()?;
    Ok(SURFACES.get_or_init(|| built))
}

pub fn enumerate(shard: Shard) -> Result<Vec<BnClass>> {
    let mut out = Vec::new();
    for s in surfaces()? {
        if shard.owns(s.index) {
            out.extend(s.classes());
        }
    }
    Ok(out)
}

pub fn run(shard: Shard) -> Result<Vec<CurveRecord>> {
    let surfaces = surfaces()?;
    enumerate(shard)?
        .into_iter()
        .map(|c| {
            let s = &surfaces[c.surface];
            let stab: Vec<F2Mat> = c.fixing.iter().map(|&i| s.stabilizer[i]).collect();
            CurveRecord::new(Stratum::Bn, c.model_string(), c.counts, &fingerprint(&stab)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// [5 choose 2]_q for the Grassmannian of lines in P^4.
    fn grassmannian_points(q: u64) -> u64 {
        (q.pow(5) - 1) * (q.pow(4) - 1) / ((q * q - 1) * (q - 1))
    }

    #[test]
    fn schubert_cells_cover_the_grassmannian() {
        for k in 1..=3 {
            let pts = surface_points(&[], k, false);
            assert_eq!(pts.len() as u64, grassmannian_points(1 << k));
            assert!(pts.iter().all(|p| !p.singular));
        }
    }

    #[test]
    fn annihilator_is_reduced() {
        let forms = [0b11, 0b1100, 0x155, 0x2a0];
        let (basis, pivots) = annihilator(&forms);
        assert_eq!(basis.len(), 6);
        for (i, &w) in basis.iter().enumerate() {
            assert!(forms.iter().all(|&l| (l & w).count_ones() % 2 == 0));
            for (j, &p) in pivots.iter().enumerate() {
                assert_eq!((w >> p) & 1 == 1, i == j);
            }
        }
    }

    #[test]
    fn independent_subset_counts() {
        assert_eq!(independent_subsets(0), 1);
        assert_eq!(independent_subsets(1), 1023);
        assert_eq!(independent_subsets(2), 1023 * 1022 / 2);
        assert_eq!(independent_subsets(3), 1023 * 1022 * 1020 / 6);
    }
}
