//! Self-describing JSON documents for the input structures, and the named
//! example generators that produce them.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteStarAlgebra;
use crate::calculus::{cyclic_graph_calculus, fuzzy_sphere_calculus, ParallelisableCalculus};
use crate::error::{Error, Result};
use crate::hopf::{CrossedModuleAlgebra, HopfGaloisExtension, HopfStarAlgebra};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Q;

pub const SCHEMA_VERSION: u32 = 1;

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Q>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries: m.row_vecs() }
    }

    pub fn to_matrix(&self, what: &str) -> Result<Matrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Schema(format!("{what}: entries do not match {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(Matrix::zeros(0, self.cols));
        }
        Ok(Matrix::from_rows(self.entries.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: Vector,
    /// `products[i][j]` is `e_i e_j`.
    pub products: Vec<Vec<Vector>>,
    /// `star(v) = M conj(v)`.
    pub star: Option<MatrixDoc>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &FiniteStarAlgebra) -> Self {
        AlgebraDoc {
            name: a.name.clone(),
            basis: a.basis.clone(),
            unit: a.unit().clone(),
            products: a.products_dense(),
            star: a.star_matrix().map(MatrixDoc::from_matrix),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteStarAlgebra> {
        let n = self.basis.len();
        let bad = |what: &str| Err(Error::Schema(format!("algebra {}: {what}", self.name)));
        if self.unit.len() != n {
            return bad("unit has the wrong length");
        }
        if self.products.len() != n || self.products.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("products must be n x n vectors of length n");
        }
        let star = match &self.star {
            Some(m) => {
                let m = m.to_matrix("star")?;
                if m.rows() != n || m.cols() != n {
                    return bad("star must be n x n");
                }
                Some(m)
            }
            None => None,
        };
        Ok(FiniteStarAlgebra::new(self.name.clone(), self.basis.clone(), self.products.clone(), self.unit.clone(), star))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfDoc {
    pub algebra: AlgebraDoc,
    /// Column `i` is `Delta(e_i)` in `H (x) H`.
    pub coproduct: MatrixDoc,
    pub counit: MatrixDoc,
    pub antipode: MatrixDoc,
    pub antipode_inv: MatrixDoc,
}

impl HopfDoc {
    pub fn from_hopf(h: &HopfStarAlgebra) -> Self {
        HopfDoc {
            algebra: AlgebraDoc::from_algebra(&h.alg),
            coproduct: MatrixDoc::from_matrix(&h.delta),
            counit: MatrixDoc::from_matrix(&h.eps),
            antipode: MatrixDoc::from_matrix(&h.antipode),
            antipode_inv: MatrixDoc::from_matrix(&h.antipode_inv),
        }
    }

    pub fn to_hopf(&self) -> Result<HopfStarAlgebra> {
        HopfStarAlgebra::new(
            self.algebra.to_algebra()?,
            self.coproduct.to_matrix("coproduct")?,
            self.counit.to_matrix("counit")?,
            self.antipode.to_matrix("antipode")?,
            self.antipode_inv.to_matrix("antipode_inv")?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedDoc {
    pub name: String,
    pub hopf: HopfDoc,
    pub algebra: AlgebraDoc,
    /// Column `a * dim H + h` is `e_a <| e_h`.
    pub action: MatrixDoc,
    /// Column `a` is `delta(e_a)` in `A (x) H`.
    pub coaction: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub name: String,
    pub total: AlgebraDoc,
    pub hopf: HopfDoc,
    /// Column `p` is `delta_R(e_p)` in `P (x) H`.
    pub coaction: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalculusDoc {
    pub name: String,
    pub algebra: AlgebraDoc,
    pub rank: usize,
    /// `w_j f = C_ij(f) w_i`.
    pub c: Vec<Vec<MatrixDoc>>,
    pub c_inv: Vec<Vec<MatrixDoc>>,
    /// `df = d_i(f) w_i`.
    pub partials: Vec<MatrixDoc>,
    /// `df = w_i d^R_i(f)`.
    pub right_partials: Vec<MatrixDoc>,
    /// `w_i*` in form coordinates, `e_k w_i` at `i * n + k`.
    pub omega_star: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Payload of a document; the tag is the `kind` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Algebra(AlgebraDoc),
    Hopf(HopfDoc),
    CrossedModule(CrossedDoc),
    HopfGalois(GaloisDoc),
    Calculus(CalculusDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    pub document: Body,
}

/// A parsed input structure.
#[derive(Clone, Debug)]
pub enum Structure {
    Algebra(FiniteStarAlgebra),
    Hopf(HopfStarAlgebra),
    Crossed(CrossedModuleAlgebra),
    Galois(HopfGaloisExtension),
    Calculus(ParallelisableCalculus),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Algebra(_) => "algebra",
            Structure::Hopf(_) => "hopf",
            Structure::Crossed(_) => "crossed-module",
            Structure::Galois(_) => "hopf-galois",
            Structure::Calculus(_) => "calculus",
        }
    }

    pub fn to_document(&self) -> Document {
        let document = match self {
            Structure::Algebra(a) => Body::Algebra(AlgebraDoc::from_algebra(a)),
            Structure::Hopf(h) => Body::Hopf(HopfDoc::from_hopf(h)),
            Structure::Crossed(c) => Body::CrossedModule(CrossedDoc {
                name: c.name.clone(),
                hopf: HopfDoc::from_hopf(&c.hopf),
                algebra: AlgebraDoc::from_algebra(&c.alg),
                action: MatrixDoc::from_matrix(&c.action),
                coaction: MatrixDoc::from_matrix(&c.coaction),
            }),
            Structure::Galois(g) => Body::HopfGalois(GaloisDoc {
                name: g.name.clone(),
                total: AlgebraDoc::from_algebra(&g.total),
                hopf: HopfDoc::from_hopf(&g.hopf),
                coaction: MatrixDoc::from_matrix(&g.coaction),
            }),
            Structure::Calculus(p) => {
                let mats = |v: &[Matrix]| v.iter().map(MatrixDoc::from_matrix).collect::<Vec<_>>();
                Body::Calculus(CalculusDoc {
                    name: p.name.clone(),
                    algebra: AlgebraDoc::from_algebra(&p.alg),
                    rank: p.rank,
                    c: p.c.iter().map(|r| mats(r)).collect(),
                    c_inv: p.c_inv.iter().map(|r| mats(r)).collect(),
                    partials: mats(&p.del),
                    right_partials: mats(&p.del_r),
                    omega_star: p.omega_star.clone(),
                    notes: p.notes.clone(),
                })
            }
        };
        Document { schema_version: SCHEMA_VERSION, document }
    }

    pub fn from_document(d: &Document) -> Result<Self> {
        if d.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", d.schema_version)));
        }
        Ok(match &d.document {
            Body::Algebra(a) => Structure::Algebra(a.to_algebra()?),
            Body::Hopf(h) => Structure::Hopf(h.to_hopf()?),
            Body::CrossedModule(c) => Structure::Crossed(CrossedModuleAlgebra::new(
                c.name.clone(),
                c.hopf.to_hopf()?,
                c.algebra.to_algebra()?,
                c.action.to_matrix("action")?,
                c.coaction.to_matrix("coaction")?,
            )?),
            Body::HopfGalois(g) => Structure::Galois(HopfGaloisExtension::new(
                g.name.clone(),
                g.total.to_algebra()?,
                g.hopf.to_hopf()?,
                g.coaction.to_matrix("coaction")?,
            )?),
            Body::Calculus(c) => Structure::Calculus(calculus_from_doc(c)?),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

fn calculus_from_doc(c: &CalculusDoc) -> Result<ParallelisableCalculus> {
    let alg = c.algebra.to_algebra()?;
    let (n, r) = (alg.dim(), c.rank);
    let square = |m: &MatrixDoc, what: &str| -> Result<Matrix> {
        let m = m.to_matrix(what)?;
        if m.rows() != n || m.cols() != n {
            return Err(Error::Schema(format!("{what} must be {n}x{n}")));
        }
        Ok(m)
    };
    let grid = |g: &[Vec<MatrixDoc>], what: &str| -> Result<Vec<Vec<Matrix>>> {
        if g.len() != r || g.iter().any(|row| row.len() != r) {
            return Err(Error::Schema(format!("{what} must be {r}x{r} operators")));
        }
        g.iter().map(|row| row.iter().map(|m| square(m, what)).collect()).collect()
    };
    let list = |v: &[MatrixDoc], what: &str| -> Result<Vec<Matrix>> {
        if v.len() != r {
            return Err(Error::Schema(format!("{what} must list {r} operators")));
        }
        v.iter().map(|m| square(m, what)).collect()
    };
    if c.omega_star.len() != r || c.omega_star.iter().any(|w| w.len() != r * n) {
        return Err(Error::Schema(format!("omega_star must list {r} forms of length {}", r * n)));
    }
    Ok(ParallelisableCalculus {
        name: c.name.clone(),
        alg,
        rank: r,
        c: grid(&c.c, "c")?,
        c_inv: grid(&c.c_inv, "c_inv")?,
        del: list(&c.partials, "partials")?,
        del_r: list(&c.right_partials, "right_partials")?,
        omega_star: c.omega_star.clone(),
        notes: c.notes.clone(),
    })
}

/// Parses a document; serde errors carry line and column.
pub fn parse(text: &str) -> Result<Structure> {
    let d: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Structure::from_document(&d)
}

pub const EXAMPLES: [&str; 6] = ["pair-example", "weyl-example", "cyclic-galois", "cyclic-graph", "fuzzy-sphere", "group-hopf"];

/// `Zn` for `n >= 1` or `S3`.
pub fn group_hopf(name: &str) -> Result<HopfStarAlgebra> {
    if name == "S3" {
        return Ok(HopfStarAlgebra::symmetric3());
    }
    match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
        Some(n) if n >= 1 => Ok(HopfStarAlgebra::cyclic(n)),
        _ => Err(Error::Unknown(format!("group {name:?} (expected Zn or S3)"))),
    }
}

fn arg<'a>(params: &'a [String], k: usize, what: &str) -> Result<&'a str> {
    params.get(k).map(|s| s.as_str()).ok_or_else(|| Error::Precondition(format!("missing parameter {what}")))
}

fn usize_arg(params: &[String], k: usize, what: &str) -> Result<usize> {
    arg(params, k, what)?.parse().map_err(|_| Error::Parse(format!("{what} must be a nonnegative integer")))
}

/// Builds a named example. Parameters: a group for `pair-example`,
/// `weyl-example` and `group-hopf`; `n m` for `cyclic-galois`; `n` for
/// `cyclic-graph`; `lambda` for `fuzzy-sphere`.
pub fn generate(name: &str, params: &[String]) -> Result<Structure> {
    Ok(match name {
        "pair-example" => Structure::Crossed(CrossedModuleAlgebra::pair(&group_hopf(arg(params, 0, "H")?)?)),
        "weyl-example" => Structure::Crossed(CrossedModuleAlgebra::weyl(&group_hopf(arg(params, 0, "H")?)?)),
        "group-hopf" => Structure::Hopf(group_hopf(arg(params, 0, "G")?)?),
        "cyclic-galois" => Structure::Galois(HopfGaloisExtension::cyclic(usize_arg(params, 0, "n")?, usize_arg(params, 1, "m")?)?),
        "cyclic-graph" => Structure::Calculus(cyclic_graph_calculus(usize_arg(params, 0, "n")?)?),
        "fuzzy-sphere" => {
            let l: Q = arg(params, 0, "lambda")?.parse()?;
            Structure::Calculus(fuzzy_sphere_calculus(&l)?)
        }
        _ => return Err(Error::Unknown(format!("example {name:?}; known: {}", EXAMPLES.join(", ")))),
    })
}
