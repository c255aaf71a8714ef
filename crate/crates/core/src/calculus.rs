//! First-order differential calculi, parallelisable calculi with their
//! commutation operators, vector fields, and bimodule connections.
//!
//! For a parallelisable calculus with basis `w_0..w_{r-1}` over `A` (dim
//! `n`), the coordinate of `e_k w_i` in `Omega` is `i * n + k`.

use crate::algebra::examples::{functions, matrix_algebra};
use crate::algebra::FiniteStarAlgebra;
use crate::bimodule::{
    balanced_tensor, compute_dual, factors_through, project_right3, same, same_vec, Bimodule, DualPair, Metric,
    PivotalData, Side,
};
use crate::error::{Error, Result};
use crate::linalg::{axpy, kron_vec, unit_vec, zero_vec, Matrix, Vector};
use crate::report::{fmt_vec, Outcome, Report};
use crate::scalar::Q;
use crate::tensor::{add_kron, terms2, BalancedTensor};

fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    outcomes.into_iter().collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// A bimodule `Omega` with a derivation `d: A -> Omega`.
#[derive(Clone, Debug)]
pub struct Fodc {
    pub alg: FiniteStarAlgebra,
    pub omega: Bimodule,
    /// Columns are `d(e_k)`.
    pub d: Matrix,
}

impl Fodc {
    pub fn diff(&self, a: &[Q]) -> Vector {
        self.d.apply(a)
    }

    /// `sum_r a_r d(b_r)` presentations of every basis form, from the span
    /// of `e_i d(e_j)`.
    pub fn presentations(&self) -> Option<Vec<Vec<(usize, usize, Q)>>> {
        let n = self.alg.dim();
        let m = self.omega.dim;
        let spans: Vec<Vector> = pairs(n).map(|(i, j)| self.omega.left_ops[i].apply(&self.d.column(j))).collect();
        let big = Matrix::from_columns(m, &spans);
        (0..m)
            .map(|w| {
                big.solve(&unit_vec(m, w)).map(|c| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k / n, k % n, x.clone()))
                        .collect()
                })
            })
            .collect()
    }
}

pub fn check_fodc(f: &Fodc) -> Report {
    let mut rep = Report::new(format!("fodc {}", f.omega.name));
    let (n, m) = (f.alg.dim(), f.omega.dim);
    rep.dim("algebra", n);
    rep.dim("forms", m);
    rep.absorb("forms", f.omega.check());
    rep.record(
        "leibniz",
        all(pairs(n).map(|(i, j)| {
            let (a, b) = (f.alg.basis_vec(i), f.alg.basis_vec(j));
            let lhs = f.diff(&f.alg.mul(&a, &b));
            let mut rhs = f.omega.act_right(&b).apply(&f.diff(&a));
            axpy(&mut rhs, &Q::one(), &f.omega.act_left(&a).apply(&f.diff(&b)));
            same_vec(&format!("d(a{i} a{j})"), &lhs, &rhs)
        })),
    );
    let spans: Vec<Vector> = pairs(n).map(|(i, j)| f.omega.left_ops[i].apply(&f.d.column(j))).collect();
    let rank = if m == 0 { 0 } else { Matrix::from_columns(m, &spans).rank() };
    rep.record(
        "surjective",
        if rank == m { Ok(()) } else { Err(format!("span of a db has dimension {rank}, forms have {m}")) },
    );
    if let (Some(sa), Some(so)) = (f.alg.star_matrix(), &f.omega.star) {
        rep.record("d commutes with star", same("d(a*) = (da)*", &f.d.mul(sa), &so.mul(&f.d.conj())));
    }
    rep
}

/// Calculus with one basis `w_i` that is free on both sides.
#[derive(Clone, Debug)]
pub struct ParallelisableCalculus {
    pub name: String,
    pub alg: FiniteStarAlgebra,
    pub rank: usize,
    /// `w_j f = C_ij(f) w_i`.
    pub c: Vec<Vec<Matrix>>,
    pub c_inv: Vec<Vec<Matrix>>,
    /// `df = d_i(f) w_i`.
    pub del: Vec<Matrix>,
    /// `df = w_i d^R_i(f)`.
    pub del_r: Vec<Matrix>,
    /// `w_i*` in form coordinates.
    pub omega_star: Vec<Vector>,
    pub notes: Vec<String>,
}

impl ParallelisableCalculus {
    fn n(&self) -> usize {
        self.alg.dim()
    }

    /// `f w_i` as a form.
    pub fn form(&self, i: usize, f: &[Q]) -> Vector {
        let n = self.n();
        let mut v = zero_vec(self.rank * n);
        v[i * n..(i + 1) * n].clone_from_slice(f);
        v
    }

    pub fn omega(&self) -> Bimodule {
        let (n, r) = (self.n(), self.rank);
        let alg = &self.alg;
        let left_ops = (0..n).map(|k| Matrix::identity(r).kron(&alg.left_mul_matrix(&alg.basis_vec(k)))).collect();
        let right_ops = (0..n)
            .map(|k| {
                let f = alg.basis_vec(k);
                block(r, n, |i, j| alg.right_mul_matrix(&self.c[i][j].apply(&f)))
            })
            .collect();
        let star = alg.star_matrix().map(|_| {
            let cols: Vec<Vector> = (0..r * n)
                .map(|idx| {
                    let (i, k) = (idx / n, idx % n);
                    let ks = alg.star(&alg.basis_vec(k));
                    right_act(self, &self.omega_star[i], &ks)
                })
                .collect();
            Matrix::from_columns(r * n, &cols)
        });
        Bimodule { name: format!("Omega({})", self.name), left: alg.clone(), right: alg.clone(), dim: r * n, left_ops, right_ops, star }
    }

    pub fn d_matrix(&self) -> Matrix {
        let n = self.n();
        Matrix::from_fn(self.rank * n, n, |row, f| self.del[row / n].get(row % n, f).clone())
    }

    pub fn fodc(&self) -> Fodc {
        Fodc { alg: self.alg.clone(), omega: self.omega(), d: self.d_matrix() }
    }

    /// Right vector fields with `ev(x_i, w_j) = delta_ij`, coordinates `e_k x_i`
    /// at `i * n + k`; right action `x_i f = Cinv_ij(f) x_j`.
    pub fn right_fields(&self) -> DualPair {
        let (n, r) = (self.n(), self.rank);
        let alg = &self.alg;
        let omega = self.omega();
        let left_ops = (0..n).map(|k| Matrix::identity(r).kron(&alg.left_mul_matrix(&alg.basis_vec(k)))).collect();
        let right_ops = (0..n)
            .map(|k| {
                let f = alg.basis_vec(k);
                block(r, n, |j, i| alg.right_mul_matrix(&self.c_inv[i][j].apply(&f)))
            })
            .collect();
        let dual = Bimodule { name: format!("X^R({})", self.name), left: alg.clone(), right: alg.clone(), dim: r * n, left_ops, right_ops, star: None };
        let m = r * n;
        // ev(e_k x_i, e_l w_j) = e_k Cinv_ij(e_l)
        let ev = Matrix::from_columns(
            n,
            &(0..m * m)
                .map(|idx| {
                    let (p, c) = (idx / m, idx % m);
                    let (i, k) = (p / n, p % n);
                    let (j, l) = (c / n, c % n);
                    alg.mul(&alg.basis_vec(k), &self.c_inv[i][j].apply(&alg.basis_vec(l)))
                })
                .collect::<Vec<_>>(),
        );
        let mut coev = zero_vec(m * m);
        for i in 0..r {
            add_kron(&mut coev, &Q::one(), &self.form(i, alg.unit()), &self.form(i, alg.unit()));
        }
        DualPair { side: Side::Left, module: omega, dual, ev, coev }
    }

    /// Left vector fields with `ev(w_i, y_j) = delta_ij`, coordinates `y_j e_k`
    /// at `j * n + k`; left action `f y_i = y_j C_ij(f)`.
    pub fn left_fields(&self) -> DualPair {
        let (n, r) = (self.n(), self.rank);
        let alg = &self.alg;
        let omega = self.omega();
        let right_ops = (0..n).map(|k| Matrix::identity(r).kron(&alg.right_mul_matrix(&alg.basis_vec(k)))).collect();
        let left_ops = (0..n)
            .map(|k| {
                let f = alg.basis_vec(k);
                block(r, n, |j, i| alg.left_mul_matrix(&self.c[i][j].apply(&f)))
            })
            .collect();
        let dual = Bimodule { name: format!("X^L({})", self.name), left: alg.clone(), right: alg.clone(), dim: r * n, left_ops, right_ops, star: None };
        let m = r * n;
        // ev(e_l w_i, y_j e_k) = e_l delta_ij e_k
        let ev = Matrix::from_columns(
            n,
            &(0..m * m)
                .map(|idx| {
                    let (c, p) = (idx / m, idx % m);
                    let (i, l) = (c / n, c % n);
                    let (j, k) = (p / n, p % n);
                    if i == j {
                        alg.mul(&alg.basis_vec(l), &alg.basis_vec(k))
                    } else {
                        zero_vec(n)
                    }
                })
                .collect::<Vec<_>>(),
        );
        let mut coev = zero_vec(m * m);
        for i in 0..r {
            add_kron(&mut coev, &Q::one(), &self.form(i, alg.unit()), &self.form(i, alg.unit()));
        }
        DualPair { side: Side::Right, module: omega, dual, ev, coev }
    }

    /// `e_k x_i -> e_k y_i` written in right coordinates of the left fields.
    pub fn field_identification(&self) -> Matrix {
        let (n, r) = (self.n(), self.rank);
        let cols: Vec<Vector> = (0..r * n)
            .map(|idx| {
                let (i, k) = (idx / n, idx % n);
                let f = self.alg.basis_vec(k);
                let mut v = zero_vec(r * n);
                for j in 0..r {
                    v[j * n..(j + 1) * n].clone_from_slice(&self.c[i][j].apply(&f));
                }
                v
            })
            .collect();
        Matrix::from_columns(r * n, &cols)
    }

    /// Pivotal structure with the right fields serving on both sides via
    /// `x_i <-> y_i`, defined when that identification is a bimodule map.
    pub fn pivotal(&self) -> Result<PivotalData> {
        let left = self.right_fields();
        let right = self.left_fields();
        let iso = self.field_identification();
        let (xr, xl) = (&left.dual, &right.dual);
        for k in 0..self.n() {
            let ok = iso.mul(&xr.left_ops[k]) == xl.left_ops[k].mul(&iso) && iso.mul(&xr.right_ops[k]) == xl.right_ops[k].mul(&iso);
            if !ok {
                return Err(Error::Precondition(format!("x_i -> y_i is not a bimodule map (basis element {k})")));
            }
        }
        let right = right.transport(left.dual.clone(), &iso)?;
        Ok(PivotalData { left, right, metric: None })
    }

    /// Central basis with `(w_i, w_j) = delta_ij` and `g = sum w_i (x) w_i`.
    pub fn metric(&self) -> Result<PivotalData> {
        let (n, r) = (self.n(), self.rank);
        let id = Matrix::identity(n);
        let central = (0..r).all(|i| (0..r).all(|j| self.c[i][j] == if i == j { id.clone() } else { Matrix::zeros(n, n) }));
        if !central {
            return Err(Error::Precondition("metric presentation needs a central basis".into()));
        }
        let m = r * n;
        let alg = &self.alg;
        let pairing = Matrix::from_columns(
            n,
            &(0..m * m)
                .map(|idx| {
                    let (c, d) = (idx / m, idx % m);
                    let (i, k) = (c / n, c % n);
                    let (j, l) = (d / n, d % n);
                    if i == j {
                        alg.mul(&alg.basis_vec(k), &alg.basis_vec(l))
                    } else {
                        zero_vec(n)
                    }
                })
                .collect::<Vec<_>>(),
        );
        let mut metric = zero_vec(m * m);
        for i in 0..r {
            add_kron(&mut metric, &Q::one(), &self.form(i, alg.unit()), &self.form(i, alg.unit()));
        }
        Ok(PivotalData::from_metric(&self.omega(), Metric { pairing, metric }))
    }

    /// Identities among `C`, `Cinv`, `d_i` and `d^R_i` on all basis pairs.
    pub fn check(&self) -> Report {
        let mut rep = Report::new(format!("parallelisable {}", self.name));
        let (n, r) = (self.n(), self.rank);
        let alg = &self.alg;
        rep.dim("rank", r);
        for note in &self.notes {
            rep.note(note.clone());
        }
        let e = |k: usize| alg.basis_vec(k);
        let zero = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        let sum = |terms: &mut dyn Iterator<Item = Matrix>| terms.fold(zero.clone(), |acc, t| acc.add(&t));
        rep.record(
            "Cinv C = 1",
            all(pairs(r).map(|(k, j)| {
                let s = sum(&mut (0..r).map(|i| self.c_inv[k][i].mul(&self.c[i][j])));
                same(&format!("({k},{j})"), &s, if k == j { &id } else { &zero })
            })),
        );
        rep.record(
            "C Cinv = 1",
            all(pairs(r).map(|(k, j)| {
                let s = sum(&mut (0..r).map(|i| self.c[k][i].mul(&self.c_inv[i][j])));
                same(&format!("({k},{j})"), &s, if k == j { &id } else { &zero })
            })),
        );
        let mut mult = Ok(());
        let mut leib = Ok(());
        let mut leib_r = Ok(());
        for (a, b) in pairs(n) {
            let fg = alg.mul(&e(a), &e(b));
            for (i, j) in pairs(r) {
                let lhs = self.c[i][j].apply(&fg);
                let mut rhs = zero_vec(n);
                for k in 0..r {
                    axpy(&mut rhs, &Q::one(), &alg.mul(&self.c[k][j].apply(&e(a)), &self.c[i][k].apply(&e(b))));
                }
                mult = mult.and(same_vec(&format!("C_{i}{j}(a{a} a{b})"), &lhs, &rhs));
            }
            for i in 0..r {
                let lhs = self.del[i].apply(&fg);
                let mut rhs = alg.mul(&e(a), &self.del[i].apply(&e(b)));
                for j in 0..r {
                    axpy(&mut rhs, &Q::one(), &alg.mul(&self.del[j].apply(&e(a)), &self.c[i][j].apply(&e(b))));
                }
                leib = leib.and(same_vec(&format!("d_{i}(a{a} a{b})"), &lhs, &rhs));
                let lhs = self.del_r[i].apply(&fg);
                let mut rhs = alg.mul(&self.del_r[i].apply(&e(a)), &e(b));
                for j in 0..r {
                    axpy(&mut rhs, &Q::one(), &alg.mul(&self.c_inv[i][j].apply(&e(a)), &self.del_r[j].apply(&e(b))));
                }
                leib_r = leib_r.and(same_vec(&format!("dR_{i}(a{a} a{b})"), &lhs, &rhs));
            }
        }
        rep.record("C multiplicative", mult);
        rep.record("twisted leibniz d", leib);
        rep.record("twisted leibniz dR", leib_r);
        rep.record(
            "left and right partials agree",
            all((0..n).map(|f| {
                let lhs = self.d_matrix().column(f);
                let mut rhs = zero_vec(r * n);
                for i in 0..r {
                    axpy(&mut rhs, &Q::one(), &right_act(self, &self.form(i, alg.unit()), &self.del_r[i].apply(&e(f))));
                }
                same_vec(&format!("d a{f}"), &lhs, &rhs)
            })),
        );
        let ct_inv = all(pairs(r).map(|(i, j)| {
            let s = sum(&mut (0..r).map(|k| self.c[k][i].mul(&self.c_inv[j][k])));
            let t = sum(&mut (0..r).map(|k| self.c_inv[k][i].mul(&self.c[j][k])));
            let want = if i == j { &id } else { &zero };
            same(&format!("C^T Cinv^T ({i},{j})"), &s, want)?;
            same(&format!("Cinv^T C^T ({i},{j})"), &t, want)
        }));
        rep.flag("(C^T)^-1 = (Cinv)^T", ct_inv.is_ok(), ct_inv.err().unwrap_or_default());
        rep
    }
}

fn right_act(p: &ParallelisableCalculus, w: &[Q], f: &[Q]) -> Vector {
    let (n, r) = (p.alg.dim(), p.rank);
    let mut out = zero_vec(r * n);
    for j in 0..r {
        let coeff = &w[j * n..(j + 1) * n];
        for i in 0..r {
            let c = p.c[i][j].apply(f);
            let t = p.alg.mul(coeff, &c);
            axpy(&mut out[i * n..(i + 1) * n], &Q::one(), &t);
        }
    }
    out
}

/// `r x r` block matrix with `n x n` blocks `f(row, col)`.
fn block(r: usize, n: usize, f: impl Fn(usize, usize) -> Matrix) -> Matrix {
    let mut out = Matrix::zeros(r * n, r * n);
    for i in 0..r {
        for j in 0..r {
            let b = f(i, j);
            for x in 0..n {
                for y in 0..n {
                    out.set(i * n + x, j * n + y, b.get(x, y).clone());
                }
            }
        }
    }
    out
}

fn derive_right_partials(c_inv: &[Vec<Matrix>], del: &[Matrix]) -> Vec<Matrix> {
    let r = del.len();
    let n = del[0].rows();
    (0..r)
        .map(|j| (0..r).fold(Matrix::zeros(n, n), |acc, i| acc.add(&c_inv[j][i].mul(&del[i]))))
        .collect()
}

/// Shift calculus on functions on `Z_n`: basis `w_+` (index 0), `w_-` (index 1),
/// `w_i f = R_i(f) w_i` with `(R_+ f)(x) = f(x + 1)`, `w_+* = -w_-`.
pub fn cyclic_graph_calculus(n: usize) -> Result<ParallelisableCalculus> {
    if n < 3 {
        return Err(Error::Precondition(format!("cyclic graph calculus needs n >= 3, got {n}")));
    }
    let alg = functions(n);
    let shift = |s: usize| Matrix::from_fn(n, n, |row, col| if row == (col + n - s) % n { Q::one() } else { Q::zero() });
    let (rp, rm) = (shift(1), shift(n - 1));
    let id = Matrix::identity(n);
    let z = Matrix::zeros(n, n);
    let c = vec![vec![rp.clone(), z.clone()], vec![z.clone(), rm.clone()]];
    let c_inv = vec![vec![rm.clone(), z.clone()], vec![z, rp.clone()]];
    let del = vec![rp.sub(&id), rm.sub(&id)];
    let del_r = derive_right_partials(&c_inv, &del);
    let minus_one: Vector = alg.unit().iter().map(|x| -x).collect();
    let mut ws = vec![zero_vec(2 * n), zero_vec(2 * n)];
    ws[0][n..].clone_from_slice(&minus_one);
    ws[1][..n].clone_from_slice(&minus_one);
    Ok(ParallelisableCalculus { name: format!("Z{n} graph"), alg, rank: 2, c, c_inv, del, del_r, omega_star: ws, notes: vec![] })
}

/// Pauli-type generators `z^i = -i lambda sigma^i` in `M_2` with
/// `d_i(f) = [z^i, f] / (2 lambda)` and a central self-adjoint basis.
pub fn fuzzy_sphere_calculus(lambda: &Q) -> Result<ParallelisableCalculus> {
    if lambda.is_zero() {
        return Err(Error::Precondition("fuzzy sphere needs lambda != 0".into()));
    }
    let alg = matrix_algebra(2);
    let z = fuzzy_generators(lambda);
    let inv2l = (Q::from_int(2) * lambda).inv()?;
    let del: Vec<Matrix> = z
        .iter()
        .map(|zi| alg.left_mul_matrix(zi).sub(&alg.right_mul_matrix(zi)).scale(&inv2l))
        .collect();
    let id = Matrix::identity(4);
    let zm = Matrix::zeros(4, 4);
    let c: Vec<Vec<Matrix>> = (0..3).map(|i| (0..3).map(|j| if i == j { id.clone() } else { zm.clone() }).collect()).collect();
    let del_r = derive_right_partials(&c, &del);
    let omega_star = (0..3)
        .map(|i| {
            let mut v = zero_vec(12);
            v[i * 4..(i + 1) * 4].clone_from_slice(alg.unit());
            v
        })
        .collect();
    let mut casimir = zero_vec(4);
    for zi in &z {
        axpy(&mut casimir, &Q::one(), &alg.mul(zi, zi));
    }
    let note = format!("casimir sum (z^i)^2 = {} (lambda = {lambda})", fmt_vec(&casimir));
    Ok(ParallelisableCalculus {
        name: format!("fuzzy sphere {lambda}"),
        alg,
        rank: 3,
        c: c.clone(),
        c_inv: c,
        del,
        del_r,
        omega_star,
        notes: vec![note],
    })
}

/// `z^1, z^2, z^3` in the matrix-unit basis of `M_2`.
pub fn fuzzy_generators(lambda: &Q) -> Vec<Vector> {
    let mi = -(Q::i() * lambda);
    let (o, i) = (Q::one(), Q::i());
    let sigma = [
        vec![Q::zero(), o.clone(), o.clone(), Q::zero()],
        vec![Q::zero(), -i.clone(), i, Q::zero()],
        vec![o.clone(), Q::zero(), Q::zero(), -o],
    ];
    sigma.iter().map(|s| s.iter().map(|x| x * &mi).collect()).collect()
}

/// Left connection on `E` with generalised braiding
/// `sigma: E (x) Omega -> Omega (x) E`, both in balanced-quotient coordinates.
#[derive(Clone, Debug)]
pub struct BimoduleConnection {
    pub name: String,
    pub e: Bimodule,
    pub nabla: Matrix,
    pub sigma: Matrix,
    /// Stored inverse braiding; recomputed from `sigma` when absent.
    pub sigma_inv: Option<Matrix>,
}

impl BimoduleConnection {
    pub fn new(name: impl Into<String>, e: Bimodule, nabla: Matrix, sigma: Matrix) -> Self {
        let sigma_inv = sigma.inverse();
        BimoduleConnection { name: name.into(), e, nabla, sigma, sigma_inv }
    }

    pub fn inverse_braiding(&self) -> Option<Matrix> {
        self.sigma_inv.clone().or_else(|| self.sigma.inverse())
    }
}

pub struct ConnectionTensors {
    /// `Omega (x) E`.
    pub oe: BalancedTensor,
    /// `E (x) Omega`.
    pub eo: BalancedTensor,
}

pub fn connection_tensors(f: &Fodc, e: &Bimodule) -> Result<ConnectionTensors> {
    Ok(ConnectionTensors { oe: balanced_tensor(&f.omega, e)?.0, eo: balanced_tensor(e, &f.omega)?.0 })
}

/// Matrix on a balanced quotient from its values on ambient basis pairs;
/// `None` when the values do not respect the balancing.
fn from_pairs(src: &BalancedTensor, rows: usize, f: impl Fn(usize, usize) -> Vector) -> Option<Matrix> {
    let cols: Vec<Vector> = (0..src.dm * src.dn).map(|k| f(k / src.dn, k % src.dn)).collect();
    factors_through(src, &Matrix::from_columns(rows, &cols))
}

/// `sigma` forced by right Leibniz: `sigma(e (x) a db) = nabla(e a b) - nabla(e a) b`.
pub fn induced_sigma(f: &Fodc, e: &Bimodule, nabla: &Matrix) -> Result<Matrix> {
    let t = connection_tensors(f, e)?;
    let pres = f.presentations().ok_or_else(|| Error::Precondition("calculus is not surjective".into()))?;
    let alg = &f.alg;
    let id_o = Matrix::identity(f.omega.dim);
    let right: Vec<Matrix> = (0..alg.dim()).map(|b| t.oe.induced(&id_o, &e.right_ops[b])).collect();
    from_pairs(&t.eo, t.oe.dim(), |p, w| {
        let mut out = zero_vec(t.oe.dim());
        for (a, b, c) in &pres[w] {
            let ea = e.right_ops[*a].apply(&unit_vec(e.dim, p));
            let eab = e.right_ops[*b].apply(&ea);
            axpy(&mut out, c, &nabla.apply(&eab));
            axpy(&mut out, &-c, &right[*b].apply(&nabla.apply(&ea)));
        }
        out
    })
    .ok_or_else(|| Error::NotAModule("braiding is not balanced; no bimodule connection".into()))
}

/// `E = A` with `nabla = d` and `sigma = id` under the unit identifications.
pub fn trivial_connection(f: &Fodc) -> Result<BimoduleConnection> {
    let e = Bimodule::regular(&f.alg);
    let t = connection_tensors(f, &e)?;
    let one = f.alg.unit().clone();
    let nabla = Matrix::from_columns(t.oe.dim(), &(0..e.dim).map(|a| t.oe.project_pair(&f.d.column(a), &one)).collect::<Vec<_>>());
    let sigma = from_pairs(&t.eo, t.oe.dim(), |a, w| {
        t.oe.project_pair(&f.omega.left_ops[a].apply(&unit_vec(f.omega.dim, w)), &one)
    })
    .ok_or_else(|| Error::NotAModule("unit braiding".into()))?;
    Ok(BimoduleConnection::new("(A, d)", e, nabla, sigma))
}

/// `E = Omega` with `nabla(f w_i) = df (x) w_i` and the forced braiding.
pub fn flat_form_connection(p: &ParallelisableCalculus) -> Result<BimoduleConnection> {
    let f = p.fodc();
    let e = f.omega.clone();
    let t = connection_tensors(&f, &e)?;
    let n = p.alg.dim();
    let nabla = Matrix::from_columns(
        t.oe.dim(),
        &(0..e.dim)
            .map(|idx| {
                let (i, k) = (idx / n, idx % n);
                t.oe.project_pair(&f.d.column(k), &p.form(i, p.alg.unit()))
            })
            .collect::<Vec<_>>(),
    );
    let sigma = induced_sigma(&f, &e, &nabla)?;
    Ok(BimoduleConnection::new("(Omega, flat)", e, nabla, sigma))
}

pub fn check_connection(f: &Fodc, k: &BimoduleConnection) -> Report {
    let mut rep = Report::new(format!("connection {}", k.name));
    let t = match connection_tensors(f, &k.e) {
        Ok(t) => t,
        Err(e) => {
            rep.fail("tensors", e.to_string());
            return rep;
        }
    };
    rep.dim("E", k.e.dim);
    rep.dim("Omega (x) E", t.oe.dim());
    let alg = &f.alg;
    let (id_o, id_e) = (Matrix::identity(f.omega.dim), Matrix::identity(k.e.dim));
    let shapes = k.nabla.rows() == t.oe.dim() && k.nabla.cols() == k.e.dim && k.sigma.rows() == t.oe.dim() && k.sigma.cols() == t.eo.dim();
    if !shapes {
        rep.fail("shapes", "nabla or sigma has the wrong shape");
        return rep;
    }
    let mut left = Ok(());
    let mut right = Ok(());
    let mut bimod = Ok(());
    for a in 0..alg.dim() {
        let ea = alg.basis_vec(a);
        let la_oe = t.oe.induced(&f.omega.left_ops[a], &id_e);
        let ra_oe = t.oe.induced(&id_o, &k.e.right_ops[a]);
        let la_eo = t.eo.induced(&k.e.left_ops[a], &id_o);
        let ra_eo = t.eo.induced(&id_e, &f.omega.right_ops[a]);
        bimod = bimod
            .and(same(&format!("sigma(a{a} .)"), &k.sigma.mul(&la_eo), &la_oe.mul(&k.sigma)))
            .and(same(&format!("sigma(. a{a})"), &k.sigma.mul(&ra_eo), &ra_oe.mul(&k.sigma)));
        let da = f.diff(&ea);
        for p in 0..k.e.dim {
            let ep = unit_vec(k.e.dim, p);
            let lhs = k.nabla.apply(&k.e.left_ops[a].apply(&ep));
            let mut rhs = la_oe.apply(&k.nabla.apply(&ep));
            axpy(&mut rhs, &Q::one(), &t.oe.project_pair(&da, &ep));
            left = left.and(same_vec(&format!("nabla(a{a} e{p})"), &lhs, &rhs));
            let lhs = k.nabla.apply(&k.e.right_ops[a].apply(&ep));
            let mut rhs = ra_oe.apply(&k.nabla.apply(&ep));
            axpy(&mut rhs, &Q::one(), &k.sigma.apply(&t.eo.project_pair(&ep, &da)));
            right = right.and(same_vec(&format!("nabla(e{p} a{a})"), &lhs, &rhs));
        }
    }
    rep.record("left leibniz", left);
    rep.record("right leibniz", right);
    rep.record("sigma bimodule map", bimod);
    let inv = k.inverse_braiding();
    rep.flag("sigma invertible", inv.is_some(), "sigma is singular");
    if let Some(si) = &inv {
        let n = k.sigma.cols();
        let ok = si.rows() == n && si.cols() == k.sigma.rows() && si.mul(&k.sigma).is_identity() && k.sigma.mul(si).is_identity();
        rep.record("stored inverse", if ok { Ok(()) } else { Err("sigma^-1 sigma != id".into()) });
    }
    if let Some(si) = inv {
        rep.absorb("right form", check_right_form(f, k, &t, &si));
    }
    rep
}

/// `sigma^R = sigma^-1`, `nabla^R = sigma^-1 nabla` against the right laws.
fn check_right_form(f: &Fodc, k: &BimoduleConnection, t: &ConnectionTensors, si: &Matrix) -> Report {
    let mut rep = Report::new("right connection");
    let nr = si.mul(&k.nabla);
    let (id_o, id_e) = (Matrix::identity(f.omega.dim), Matrix::identity(k.e.dim));
    let mut right = Ok(());
    let mut left = Ok(());
    for a in 0..f.alg.dim() {
        let ea = f.alg.basis_vec(a);
        let da = f.diff(&ea);
        let ra = t.eo.induced(&id_e, &f.omega.right_ops[a]);
        let la = t.eo.induced(&k.e.left_ops[a], &id_o);
        for p in 0..k.e.dim {
            let ep = unit_vec(k.e.dim, p);
            let lhs = nr.apply(&k.e.right_ops[a].apply(&ep));
            let mut rhs = ra.apply(&nr.apply(&ep));
            axpy(&mut rhs, &Q::one(), &t.eo.project_pair(&ep, &da));
            right = right.and(same_vec(&format!("nablaR(e{p} a{a})"), &lhs, &rhs));
            let lhs = nr.apply(&k.e.left_ops[a].apply(&ep));
            let mut rhs = la.apply(&nr.apply(&ep));
            axpy(&mut rhs, &Q::one(), &si.apply(&t.oe.project_pair(&da, &ep)));
            left = left.and(same_vec(&format!("nablaR(a{a} e{p})"), &lhs, &rhs));
        }
    }
    rep.record("right leibniz", right);
    rep.record("twisted left leibniz", left);
    rep
}

/// `E (x) F` with `nabla = nabla_E (x) id + (sigma_E (x) id)(id (x) nabla_F)`
/// and `sigma = (sigma_E (x) id)(id (x) sigma_F)`.
pub fn tensor_connection(f: &Fodc, k1: &BimoduleConnection, k2: &BimoduleConnection) -> Result<BimoduleConnection> {
    let (e, g) = (&k1.e, &k2.e);
    let t1 = connection_tensors(f, e)?;
    let t2 = connection_tensors(f, g)?;
    let (eg, eg_m) = balanced_tensor(e, g)?;
    let t12 = connection_tensors(f, &eg_m)?;
    let om = f.omega.dim;
    // ambient Omega (x) E (x) G -> Omega (x) (E (x) G)
    let close = |v: &[Q]| project_right3(v, om, &eg, &t12.oe);
    let pair_value = |p: usize, q: usize| -> Vector {
        let (ep, gq) = (unit_vec(e.dim, p), unit_vec(g.dim, q));
        let mut amb = kron_vec(&t1.oe.section(&k1.nabla.apply(&ep)), &gq);
        let nf = t2.oe.section(&k2.nabla.apply(&gq));
        for (w, q2, c) in terms2(&nf, g.dim) {
            let s = t1.oe.section(&k1.sigma.apply(&t1.eo.project_pair(&ep, &unit_vec(om, w))));
            add_kron(&mut amb, c, &s, &unit_vec(g.dim, q2));
        }
        close(&amb)
    };
    let nabla = Matrix::from_columns(
        t12.oe.dim(),
        &(0..eg.dim())
            .map(|k| {
                let s = eg.section(&unit_vec(eg.dim(), k));
                let mut out = zero_vec(t12.oe.dim());
                for (p, q, c) in terms2(&s, g.dim) {
                    axpy(&mut out, c, &pair_value(p, q));
                }
                out
            })
            .collect::<Vec<_>>(),
    );
    let sigma = from_pairs(&t12.eo, t12.oe.dim(), |k, w| {
        let s = eg.section(&unit_vec(eg.dim(), k));
        let mut amb = zero_vec(om * e.dim * g.dim);
        for (p, q, c) in terms2(&s, g.dim) {
            let sf = t2.oe.section(&k2.sigma.apply(&t2.eo.project_pair(&unit_vec(g.dim, q), &unit_vec(om, w))));
            for (w2, q2, d) in terms2(&sf, g.dim) {
                let se = t1.oe.section(&k1.sigma.apply(&t1.eo.project_pair(&unit_vec(e.dim, p), &unit_vec(om, w2))));
                add_kron(&mut amb, &(c * d), &se, &unit_vec(g.dim, q2));
            }
        }
        close(&amb)
    })
    .ok_or_else(|| Error::NotAModule("tensor braiding is not balanced".into()))?;
    Ok(BimoduleConnection::new(format!("{} (x) {}", k1.name, k2.name), eg_m, nabla, sigma))
}

/// Conjugate connection on `overline(E)`: `nabla(e') = e^b* (x) overline(e^a)` for
/// `sigma^-1 nabla e = e^a (x) e^b`, and
/// `sigma(overline(e) (x) w) = dagger(overline(sigma^-1(w* (x) e)))`.
pub fn conjugate_connection(f: &Fodc, k: &BimoduleConnection) -> Result<BimoduleConnection> {
    let si = k.inverse_braiding().ok_or_else(|| Error::NotInvertible("sigma".into()))?;
    if f.omega.star.is_none() {
        return Err(Error::Precondition("conjugate connection needs a star calculus".into()));
    }
    let t = connection_tensors(f, &k.e)?;
    let eb = k.e.conjugate()?;
    let tb = connection_tensors(f, &eb)?;
    let om = f.omega.dim;
    // E (x) Omega class -> Omega (x) overline(E), antilinear in the class
    let turn = |v: &[Q]| -> Vector {
        let s = t.eo.section(v);
        let mut amb = zero_vec(om * eb.dim);
        for (p, w, c) in terms2(&s, om) {
            let ws = f.omega.apply_star(&unit_vec(om, w)).unwrap();
            add_kron(&mut amb, &c.conj(), &ws, &unit_vec(eb.dim, p));
        }
        tb.oe.project(&amb)
    };
    let nabla = Matrix::from_columns(
        tb.oe.dim(),
        &(0..eb.dim).map(|p| turn(&si.apply(&k.nabla.apply(&unit_vec(k.e.dim, p))))).collect::<Vec<_>>(),
    );
    let sigma = from_pairs(&tb.eo, tb.oe.dim(), |p, w| {
        let ws = f.omega.apply_star(&unit_vec(om, w)).unwrap();
        turn(&si.apply(&t.oe.project_pair(&ws, &unit_vec(k.e.dim, p))))
    })
    .ok_or_else(|| Error::NotAModule("conjugate braiding is not balanced".into()))?;
    Ok(BimoduleConnection::new(format!("bar{}", k.name), eb, nabla, sigma))
}

/// `tau = (ev (x) id)(id (x) sigma (x) id)(id (x) coev)` on `X (x) E` and
/// `tauR = (id (x) ev)(id (x) sigma^-1 (x) id)(coev (x) id)` on `E (x) X`.
pub fn check_biinvertible(f: &Fodc, k: &BimoduleConnection, p: &PivotalData) -> Report {
    let mut rep = Report::new(format!("biinvertible {}", k.name));
    let res = (|| -> Result<(Matrix, Matrix)> {
        let si = k.inverse_braiding().ok_or_else(|| Error::NotInvertible("sigma".into()))?;
        let x = &p.left.dual;
        let e = &k.e;
        let t = connection_tensors(f, e)?;
        let (xe, _) = balanced_tensor(x, e)?;
        let (ex, _) = balanced_tensor(e, x)?;
        let (om, h) = (f.omega.dim, x.dim);
        let tau = from_pairs(&xe, ex.dim(), |xp, ep| {
            let mut out = zero_vec(ex.dim());
            for (c, q, kc) in terms2(&p.left.coev, h) {
                let s = t.oe.section(&k.sigma.apply(&t.eo.project_pair(&unit_vec(e.dim, ep), &unit_vec(om, c))));
                for (w, e2, ks) in terms2(&s, e.dim) {
                    let val = p.left.eval(&unit_vec(h, xp), &unit_vec(om, w));
                    let ev_e = e.act_left(&val).column(e2);
                    axpy(&mut out, &(kc * ks), &ex.project_pair(&ev_e, &unit_vec(h, q)));
                }
            }
            out
        })
        .ok_or_else(|| Error::NotAModule("tau is not balanced".into()))?;
        let tau_r = from_pairs(&ex, xe.dim(), |ep, xp| {
            let mut out = zero_vec(xe.dim());
            for (q, c, kc) in terms2(&p.right.coev, om) {
                let s = t.eo.section(&si.apply(&t.oe.project_pair(&unit_vec(om, c), &unit_vec(e.dim, ep))));
                for (e2, w, ks) in terms2(&s, om) {
                    let val = p.right.eval(&unit_vec(h, xp), &unit_vec(om, w));
                    let e_ev = e.act_right(&val).column(e2);
                    axpy(&mut out, &(kc * ks), &xe.project_pair(&unit_vec(h, q), &e_ev));
                }
            }
            out
        })
        .ok_or_else(|| Error::NotAModule("tauR is not balanced".into()))?;
        Ok((tau, tau_r))
    })();
    match res {
        Ok((tau, tau_r)) => {
            rep.dim("X (x) E", tau.cols());
            rep.record("tauR tau = id", same("tauR tau", &tau_r.mul(&tau), &Matrix::identity(tau.cols())));
            rep.record("tau tauR = id", same("tau tauR", &tau.mul(&tau_r), &Matrix::identity(tau.rows())));
        }
        Err(e) => rep.fail("construct tau", e.to_string()),
    }
    rep
}

/// Conjugate of a conjugate connection against the original, through `bb`.
pub fn check_double_conjugate(f: &Fodc, k: &BimoduleConnection) -> Outcome {
    let c1 = conjugate_connection(f, k).map_err(|e| e.to_string())?;
    let c2 = conjugate_connection(f, &c1).map_err(|e| e.to_string())?;
    same("nabla", &c2.nabla, &k.nabla)?;
    same("sigma", &c2.sigma, &k.sigma)
}

/// Computed duals agree in dimension with the explicit vector fields.
pub fn explicit_fields_match(p: &ParallelisableCalculus) -> Outcome {
    let om = p.omega();
    for side in [Side::Left, Side::Right] {
        let d = compute_dual(&om, side).map_err(|e| e.to_string())?;
        if d.dual.dim != p.rank * p.alg.dim() {
            return Err(format!("{side:?} dual has dimension {}", d.dual.dim));
        }
    }
    Ok(())
}

/// `overline(a) -> a*` as a matrix on conjugate coordinates.
pub fn conjugate_unit_iso(alg: &FiniteStarAlgebra) -> Option<Matrix> {
    alg.star_matrix().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{check_dual, check_pivotal, check_star_transport, star_transport};

    #[test]
    fn shift_partials_on_z3() {
        let p = cyclic_graph_calculus(3).unwrap();
        assert_eq!(p.del[0].apply(p.alg.unit()), zero_vec(3));
        let d0 = p.alg.basis_vec(0);
        let want = vec![-Q::one(), Q::zero(), Q::one()];
        assert_eq!(p.del[0].apply(&d0), want);
        assert!(cyclic_graph_calculus(2).is_err());
    }

    #[test]
    fn fodc_checks() {
        for p in [cyclic_graph_calculus(3).unwrap(), fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()] {
            let r = check_fodc(&p.fodc());
            assert!(r.all_pass(), "{r}");
            let r = p.check();
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn zero_derivative_is_not_surjective() {
        let p = cyclic_graph_calculus(3).unwrap();
        let mut f = p.fodc();
        f.d = Matrix::zeros(6, 3);
        let r = check_fodc(&f);
        assert!(!r.is_pass("surjective"));
    }

    #[test]
    fn fuzzy_commutators() {
        let l = Q::from_frac(1, 2);
        let z = fuzzy_generators(&l);
        let a = matrix_algebra(2);
        let comm = crate::linalg::sub_vec(&a.mul(&z[0], &z[1]), &a.mul(&z[1], &z[0]));
        assert_eq!(comm, crate::linalg::scale_vec(&(Q::from_int(2) * &l), &z[2]));
        let p = fuzzy_sphere_calculus(&l).unwrap();
        assert_eq!(p.del[0].apply(&z[1]), z[2]);
        assert_eq!(p.del[1].apply(a.unit()), zero_vec(4));
    }

    #[test]
    fn fields_and_transport() {
        for p in [cyclic_graph_calculus(3).unwrap(), fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()] {
            let (l, r) = (p.right_fields(), p.left_fields());
            assert!(check_dual(&l).all_pass(), "{}", check_dual(&l));
            assert!(check_dual(&r).all_pass(), "{}", check_dual(&r));
            assert!(explicit_fields_match(&p).is_ok());
            let t = star_transport(&l, &r).unwrap();
            assert!(check_star_transport(&l, &r, &t).all_pass());
            let piv = p.pivotal().unwrap();
            let rep = check_pivotal(&piv);
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn cyclic_transport_flips_direction() {
        let p = cyclic_graph_calculus(3).unwrap();
        let t = star_transport(&p.right_fields(), &p.left_fields()).unwrap();
        let n = 3;
        // x_+ -> -y_-
        let x = p.form(0, p.alg.unit());
        let mut want = zero_vec(2 * n);
        for k in 0..n {
            want[n + k] = -Q::one();
        }
        assert_eq!(t.apply(&x), want);
    }

    #[test]
    fn metric_and_scaled_metric() {
        let p = fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap();
        let piv = p.metric().unwrap();
        assert!(check_pivotal(&piv).all_pass(), "{}", check_pivotal(&piv));
        let mut bad = piv.clone();
        let mut mt = bad.metric.clone().unwrap();
        mt.metric = crate::linalg::scale_vec(&Q::i(), &mt.metric);
        mt.pairing = mt.pairing.scale(&-Q::i());
        bad = PivotalData::from_metric(&bad.left.module, mt);
        let r = check_pivotal(&bad);
        assert!(r.is_pass("right snake on module"));
        assert!(!r.is_pass("dagger(g) = g"));
    }

    #[test]
    fn connections() {
        for p in [cyclic_graph_calculus(3).unwrap(), fuzzy_sphere_calculus(&Q::from_frac(1, 2)).unwrap()] {
            let f = p.fodc();
            let k = trivial_connection(&f).unwrap();
            assert!(check_connection(&f, &k).all_pass(), "{}", check_connection(&f, &k));
            let piv = p.pivotal().unwrap();
            assert!(check_biinvertible(&f, &k, &piv).all_pass());
            let mut bad = k.clone();
            let col = bad.sigma.column(0);
            for (r, x) in col.iter().enumerate() {
                bad.sigma.set(r, 0, x * &Q::from_int(2));
            }
            assert!(!check_biinvertible(&f, &bad, &piv).all_pass());
            let c = conjugate_connection(&f, &k).unwrap();
            assert!(check_connection(&f, &c).all_pass(), "{}", check_connection(&f, &c));
            assert!(check_double_conjugate(&f, &k).is_ok());
            let tt = tensor_connection(&f, &k, &k).unwrap();
            assert_eq!(tt.e.dim, k.e.dim);
            assert!(check_connection(&f, &tt).all_pass());
            let w = flat_form_connection(&p).unwrap();
            assert!(check_connection(&f, &w).all_pass(), "{}", check_connection(&f, &w));
            let ww = tensor_connection(&f, &w, &k).unwrap();
            assert!(check_connection(&f, &ww).all_pass());
        }
    }

    #[test]
    fn conjugate_of_trivial_is_trivial() {
        let p = cyclic_graph_calculus(3).unwrap();
        let f = p.fodc();
        let k = trivial_connection(&f).unwrap();
        let c = conjugate_connection(&f, &k).unwrap();
        // overline(a) -> a* intertwines the two nablas
        let iso = conjugate_unit_iso(&f.alg).unwrap();
        let t = connection_tensors(&f, &k.e).unwrap();
        let tb = connection_tensors(&f, &c.e).unwrap();
        let cols: Vec<Vector> = (0..tb.oe.dim())
            .map(|q| {
                let (w, a) = tb.oe.representative_pair(q);
                t.oe.project_pair(&unit_vec(f.omega.dim, w), &iso.column(a))
            })
            .collect();
        let lift = Matrix::from_columns(t.oe.dim(), &cols);
        assert_eq!(k.nabla.mul(&iso), lift.mul(&c.nabla));
    }
}
