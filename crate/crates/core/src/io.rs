//! JSON documents for coalgebras, comodules, contramodules, coalgebra maps
//! and matrices.
//!
//! Field elements are strings (`"3"`, `"-1/2"`) or integers. Matrices are
//! `{"rows", "cols", "entries": [[row, col, value], ...]}`. Wherever an
//! object is expected a string may be given instead; it names a JSON file,
//! resolved relative to the loader's base directory. Errors carry a JSON
//! pointer to the offending field.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::coalgebra::{catalog, Coalgebra, CoalgebraMorphism, CoalgebraRef};
use crate::comodule::{Comodule, Side};
use crate::contramodule::Contramodule;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::linalg::Mat;
use crate::sl2::{Catalog, FrobeniusKernel};

/// A JSON value together with its location.
#[derive(Clone, Debug)]
pub struct Node<'a> {
    pub value: &'a Value,
    pub pointer: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node {
            value,
            pointer: String::new(),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let pointer = if self.pointer.is_empty() { "/".to_string() } else { self.pointer.clone() };
        Error::schema(pointer, message)
    }

    pub fn get(&self, key: &str) -> Result<Node<'a>> {
        self.opt(key)?.ok_or_else(|| self.err(format!("missing field `{key}`")))
    }

    pub fn opt(&self, key: &str) -> Result<Option<Node<'a>>> {
        let obj = self.value.as_object().ok_or_else(|| self.err("expected an object"))?;
        Ok(obj.get(key).map(|value| Node {
            value,
            pointer: format!("{}/{}", self.pointer, key.replace('~', "~0").replace('/', "~1")),
        }))
    }

    pub fn has(&self, key: &str) -> bool {
        self.value.get(key).is_some()
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                pointer: format!("{}/{i}", self.pointer),
            })
            .collect())
    }

    pub fn usize(&self) -> Result<usize> {
        self.value
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.err("expected a nonnegative integer"))
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    pub fn elem<F: Field>(&self, field: F) -> Result<F::Elem> {
        let text = match self.value {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            _ => return Err(self.err("expected a field element (string or integer)")),
        };
        field.parse(&text).map_err(|e| self.err(e.to_string()))
    }

    /// `[i, j, ..., value]` with `k` leading indices.
    fn indexed<F: Field>(&self, field: F, k: usize) -> Result<(Vec<usize>, F::Elem)> {
        let items = self.items()?;
        if items.len() != k + 1 {
            return Err(self.err(format!("expected {} indices and a value", k)));
        }
        let idx = items[..k].iter().map(|n| n.usize()).collect::<Result<_>>()?;
        Ok((idx, items[k].elem(field)?))
    }
}

/// Resolves file references relative to a base directory.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// Loader rooted at the directory containing `path`.
    pub fn for_file(path: &Path) -> Self {
        Loader::new(path.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    pub fn read(&self, path: &str) -> Result<Value> {
        let full = self.base.join(path);
        let text = std::fs::read_to_string(&full)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", full.display()))))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The object at `node`, loading it when `node` is a file name.
    pub fn resolve(&self, node: &Node) -> Result<(Value, Loader)> {
        match node.value {
            Value::String(path) => {
                let value = self.read(path)?;
                Ok((value, Loader::for_file(&self.base.join(path))))
            }
            Value::Object(_) => Ok((node.value.clone(), self.clone())),
            _ => Err(node.err("expected an object or a file name")),
        }
    }
}

/// The field declared by a document, looking through nested coalgebras.
pub fn declared_field(loader: &Loader, node: &Node) -> Result<Option<FieldSpec>> {
    let (value, sub) = loader.resolve(node)?;
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    if let Some(f) = root.opt("field")? {
        return parse_field_spec(&f).map(Some);
    }
    for key in ["coalgebra", "source", "comodule"] {
        if let Some(inner) = root.opt(key)? {
            if let Some(f) = declared_field(&sub, &inner)? {
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

pub fn parse_field_spec(node: &Node) -> Result<FieldSpec> {
    match node.value {
        Value::String(s) => s.parse().map_err(|e: Error| node.err(e.to_string())),
        _ => {
            let spec: FieldSpec = serde_json::from_value(node.value.clone())
                .map_err(|_| node.err("expected \"Q\" or {\"Fp\": p}"))?;
            if let FieldSpec::PrimeField(p) = spec {
                PrimeField::new(p).map_err(|e| node.err(e.to_string()))?;
            }
            Ok(spec)
        }
    }
}

fn check_field<F: Field>(field: F, root: &Node) -> Result<()> {
    if let Some(f) = root.opt("field")? {
        let spec = parse_field_spec(&f)?;
        if spec != field.spec() {
            return Err(Error::FieldMismatch(spec, field.spec()));
        }
    }
    Ok(())
}

pub fn parse_mat<F: Field>(field: F, node: &Node) -> Result<Mat<F>> {
    let rows = node.get("rows")?.usize()?;
    let cols = node.get("cols")?.usize()?;
    let entries = node.get("entries")?;
    let mut t = Vec::new();
    for e in entries.items()? {
        let (idx, v) = e.indexed(field, 2)?;
        if idx[0] >= rows || idx[1] >= cols {
            return Err(e.err(format!("entry ({}, {}) outside a {rows}x{cols} matrix", idx[0], idx[1])));
        }
        t.push((idx[0], idx[1], v));
    }
    Mat::from_triplets(field, rows, cols, t)
}

/// Rewrites a matrix over `F_p` into `field`, which must be the same `F_p`.
fn convert<F: Field>(field: F, m: &Mat<PrimeField>) -> Result<Mat<F>> {
    if field.spec() != m.field().spec() {
        return Err(Error::FieldMismatch(m.field().spec(), field.spec()));
    }
    let t = m
        .triplets()
        .map(|(i, j, v)| Ok((i, j, field.parse(&v.to_string())?)))
        .collect::<Result<Vec<_>>>()?;
    Mat::from_triplets(field, m.rows(), m.cols(), t)
}

fn prime_field_of<F: Field>(field: F, node: &Node) -> Result<PrimeField> {
    match field.spec() {
        FieldSpec::PrimeField(p) => PrimeField::new(p),
        FieldSpec::Rational => Err(node.err("this catalog entry needs a prime field")),
    }
}

/// `{"field", "dim", "delta": [[i, j, k, v]], "epsilon": [v, ...]}` where
/// `[i, j, k, v]` is the coefficient of `e_i ⊗ e_j` in `Δe_k`, or
/// `{"field", "catalog": name, "n": ...}` for `grouplike`, `matrix`,
/// `divided_power` and `frobenius_kernel`.
pub fn parse_coalgebra<F: Field>(field: F, loader: &Loader, node: &Node) -> Result<Coalgebra<F>> {
    let (value, _) = loader.resolve(node)?;
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    check_field(field, &root)?;
    if let Some(name) = root.opt("catalog")? {
        let n = root.get("n")?.usize()?;
        return match name.str()? {
            "grouplike" => Ok(catalog::grouplike(field, n)),
            "matrix" => Ok(catalog::matrix_coalgebra(field, n)),
            "divided_power" => Ok(catalog::divided_power_dual(field, n)),
            "frobenius_kernel" => {
                let pf = prime_field_of(field, &root)?;
                let k = FrobeniusKernel::new(pf, n as u32)?.coalgebra();
                Coalgebra::new_unchecked(convert(field, k.delta())?, convert(field, k.epsilon())?)
            }
            other => Err(name.err(format!("unknown coalgebra `{other}`"))),
        };
    }
    let n = root.get("dim")?.usize()?;
    let mut t = Vec::new();
    for e in root.get("delta")?.items()? {
        let (idx, v) = e.indexed(field, 3)?;
        if idx.iter().any(|&x| x >= n) {
            return Err(e.err(format!("index out of range for dimension {n}")));
        }
        t.push((idx[0] * n + idx[1], idx[2], v));
    }
    let eps = root.get("epsilon")?;
    let items = eps.items()?;
    if items.len() != n {
        return Err(eps.err(format!("expected {n} counit values")));
    }
    let et = items
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((0, i, v.elem(field)?)))
        .collect::<Result<Vec<_>>>()?;
    Coalgebra::new_unchecked(Mat::from_triplets(field, n * n, n, t)?, Mat::from_triplets(field, 1, n, et)?)
}

fn parse_side(node: &Node) -> Result<Side> {
    match node.str()? {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(node.err(format!("side must be `left` or `right`, not `{other}`"))),
    }
}

/// `{"coalgebra", "side", "dim", "coaction": [[c, u, v, value]]}` where the
/// entry is the coefficient of `e_c ⊗ e_u` (left) or `e_u ⊗ e_c` (right) in
/// the coaction of `e_v`; or `{"coalgebra", "side", "catalog": name}` for
/// `regular`, `cofree` (with `"d"`) and `trivial`; or, over a Frobenius
/// kernel, `{"coalgebra", "side": "left", "catalog": "sl2", "module": expr}`.
pub fn parse_comodule<F: Field>(field: F, loader: &Loader, node: &Node) -> Result<Comodule<F>> {
    let (value, sub) = loader.resolve(node)?;
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    check_field(field, &root)?;
    let c = parse_coalgebra(field, &sub, &root.get("coalgebra")?)?.shared();
    let side = parse_side(&root.get("side")?)?;
    if let Some(name) = root.opt("catalog")? {
        return match name.str()? {
            "regular" => Ok(Comodule::regular(c, side)),
            "cofree" => Ok(Comodule::cofree(c, side, root.get("d")?.usize()?)),
            "trivial" => Comodule::trivial(c, side),
            "sl2" => parse_sl2_comodule(field, c, side, &root),
            other => Err(name.err(format!("unknown comodule `{other}`"))),
        };
    }
    let m = root.get("dim")?.usize()?;
    let n = c.dim();
    let mut t = Vec::new();
    for e in root.get("coaction")?.items()? {
        let (idx, v) = e.indexed(field, 3)?;
        let (cc, u, x) = (idx[0], idx[1], idx[2]);
        if cc >= n || u >= m || x >= m {
            return Err(e.err("index out of range"));
        }
        let row = match side {
            Side::Left => cc * m + u,
            Side::Right => u * n + cc,
        };
        t.push((row, x, v));
    }
    Comodule::new_unchecked(c, side, Mat::from_triplets(field, n * m, m, t)?)
}

fn parse_sl2_comodule<F: Field>(field: F, c: CoalgebraRef<F>, side: Side, root: &Node) -> Result<Comodule<F>> {
    let pf = prime_field_of(field, root)?;
    let cat = Catalog::new(pf.p()).map_err(|e| root.err(e.to_string()))?;
    let expr = root.get("module")?;
    let module = cat.parse(expr.str()?).map_err(|e| expr.err(e.to_string()))?;
    let dim = c.dim();
    let r = (1..=8u32)
        .find(|&r| (1usize << (3 * r)) == dim)
        .ok_or_else(|| root.err("sl2 modules need a frobenius_kernel coalgebra"))?;
    let kernel = FrobeniusKernel::new(pf, r)?;
    let own = kernel.coalgebra().shared();
    let left = module.restrict_to_kernel(&kernel, own)?;
    let coaction = convert(field, left.coaction())?;
    let m = Comodule::new_unchecked(c, Side::Left, coaction)?;
    Ok(match side {
        Side::Left => m,
        Side::Right => m.dual(),
    })
}

/// `{"coalgebra", "dim", "theta": [[out, j, k, value]]}` where the entry is
/// the coefficient of `b_out` in `θ(e_j* ⊗ b_k)`; or `{"coalgebra",
/// "catalog": name}` for `free` (with `"d"`), `trivial` and
/// `from_comodule` (with `"comodule"`, a left comodule).
pub fn parse_contramodule<F: Field>(field: F, loader: &Loader, node: &Node) -> Result<Contramodule<F>> {
    let (value, sub) = loader.resolve(node)?;
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    check_field(field, &root)?;
    if let Some(name) = root.opt("catalog")? {
        if name.str()? == "from_comodule" {
            let w = parse_comodule(field, &sub, &root.get("comodule")?)?;
            return Contramodule::from_comodule(&w);
        }
        let c = parse_coalgebra(field, &sub, &root.get("coalgebra")?)?.shared();
        return match name.str()? {
            "free" => Ok(Contramodule::free(c, root.get("d")?.usize()?)),
            "trivial" => Contramodule::trivial(c),
            other => Err(name.err(format!("unknown contramodule `{other}`"))),
        };
    }
    let c = parse_coalgebra(field, &sub, &root.get("coalgebra")?)?.shared();
    let b = root.get("dim")?.usize()?;
    let n = c.dim();
    let mut t = Vec::new();
    for e in root.get("theta")?.items()? {
        let (idx, v) = e.indexed(field, 3)?;
        let (out, j, k) = (idx[0], idx[1], idx[2]);
        if j >= n || k >= b || out >= b {
            return Err(e.err("index out of range"));
        }
        t.push((out, j * b + k, v));
    }
    Contramodule::new_unchecked(c, Mat::from_triplets(field, b, n * b, t)?)
}

/// `{"source", "target", "matrix", "surjective"?}` or `{"field", "catalog":
/// name, ...}` for `identity` (`"coalgebra"`), `counit` (`"coalgebra"`),
/// `grouplike_quotient` (`"n"`, `"m"`), `divided_power_frobenius` (`"m"`,
/// `"j"`), `matrix_diagonal` (`"n"`) and `frobenius_truncation` (`"r"`, `"s"`).
pub fn parse_morphism<F: Field>(field: F, loader: &Loader, node: &Node) -> Result<CoalgebraMorphism<F>> {
    let (value, sub) = loader.resolve(node)?;
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    check_field(field, &root)?;
    if let Some(name) = root.opt("catalog")? {
        let u = |k: &str| root.get(k)?.usize();
        return match name.str()? {
            "identity" => Ok(CoalgebraMorphism::identity(
                parse_coalgebra(field, &sub, &root.get("coalgebra")?)?.shared(),
            )),
            "counit" => catalog::counit_map(parse_coalgebra(field, &sub, &root.get("coalgebra")?)?.shared()),
            "grouplike_quotient" => catalog::grouplike_quotient(field, u("n")?, u("m")?),
            "divided_power_frobenius" => catalog::divided_power_frobenius(field, u("m")?, u("j")?),
            "matrix_diagonal" => catalog::matrix_diagonal(field, u("n")?),
            "frobenius_truncation" => {
                let pf = prime_field_of(field, &root)?;
                let (r, s) = (u("r")? as u32, u("s")? as u32);
                let (big, small) = (FrobeniusKernel::new(pf, r)?, FrobeniusKernel::new(pf, s)?);
                let t = big.truncation(big.coalgebra().shared(), &small, small.coalgebra().shared())?;
                let src = big.coalgebra();
                let tgt = small.coalgebra();
                let src = Coalgebra::new_unchecked(convert(field, src.delta())?, convert(field, src.epsilon())?)?;
                let tgt = Coalgebra::new_unchecked(convert(field, tgt.delta())?, convert(field, tgt.epsilon())?)?;
                CoalgebraMorphism::surjection(src.shared(), tgt.shared(), convert(field, &t.matrix)?)
            }
            other => Err(name.err(format!("unknown coalgebra map `{other}`"))),
        };
    }
    let src = parse_coalgebra(field, &sub, &root.get("source")?)?.shared();
    let tgt = parse_coalgebra(field, &sub, &root.get("target")?)?.shared();
    let mat = parse_mat(field, &root.get("matrix")?)?;
    let surjective = match root.opt("surjective")? {
        Some(s) => s.value.as_bool().ok_or_else(|| s.err("expected a boolean"))?,
        None => true,
    };
    CoalgebraMorphism::new_unchecked(src, tgt, mat, surjective)
}

fn field_json(spec: FieldSpec) -> Value {
    serde_json::to_value(spec).expect("plain enum")
}

pub fn mat_to_json<F: Field>(m: &Mat<F>) -> Value {
    let f = m.field();
    let entries: Vec<Value> = m.triplets().map(|(i, j, v)| json!([i, j, f.format(v)])).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn coalgebra_to_json<F: Field>(c: &Coalgebra<F>) -> Value {
    let f = c.field();
    let n = c.dim();
    let delta: Vec<Value> = c
        .delta()
        .triplets()
        .map(|(row, k, v)| json!([row / n, row % n, k, f.format(v)]))
        .collect();
    let eps: Vec<String> = (0..n).map(|i| f.format(&c.epsilon().get(0, i))).collect();
    json!({"field": field_json(f.spec()), "dim": n, "delta": delta, "epsilon": eps})
}

pub fn comodule_to_json<F: Field>(m: &Comodule<F>) -> Value {
    let f = m.field();
    let coaction: Vec<Value> = m
        .coaction()
        .triplets()
        .map(|(row, x, v)| {
            let (c, u) = m.split_row(row);
            json!([c, u, x, f.format(v)])
        })
        .collect();
    let side = match m.side() {
        Side::Left => "left",
        Side::Right => "right",
    };
    json!({
        "coalgebra": coalgebra_to_json(m.coalgebra()),
        "side": side,
        "dim": m.dim(),
        "coaction": coaction,
    })
}

pub fn contramodule_to_json<F: Field>(b: &Contramodule<F>) -> Value {
    let f = b.field();
    let d = b.dim();
    let theta: Vec<Value> = b
        .theta()
        .triplets()
        .map(|(out, col, v)| json!([out, col / d.max(1), col % d.max(1), f.format(v)]))
        .collect();
    json!({"coalgebra": coalgebra_to_json(b.coalgebra()), "dim": d, "theta": theta})
}

pub fn morphism_to_json<F: Field>(rho: &CoalgebraMorphism<F>) -> Value {
    json!({
        "source": coalgebra_to_json(&rho.source),
        "target": coalgebra_to_json(&rho.target),
        "matrix": mat_to_json(&rho.matrix),
        "surjective": rho.surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn loader() -> Loader {
        Loader::new(".")
    }

    #[test]
    fn round_trips() {
        let q = Rationals;
        let c = catalog::divided_power_dual(q, 3);
        let v = coalgebra_to_json(&c);
        assert_eq!(parse_coalgebra(q, &loader(), &Node::root(&v)).unwrap(), c);
        let m = Comodule::cofree(c.clone().shared(), Side::Right, 2);
        let v = comodule_to_json(&m);
        assert_eq!(parse_comodule(q, &loader(), &Node::root(&v)).unwrap(), m);
        let b = Contramodule::free(c.shared(), 1);
        let v = contramodule_to_json(&b);
        assert_eq!(parse_contramodule(q, &loader(), &Node::root(&v)).unwrap(), b);
        let rho = catalog::grouplike_quotient(q, 3, 2).unwrap();
        let v = morphism_to_json(&rho);
        let back = parse_morphism(q, &loader(), &Node::root(&v)).unwrap();
        assert_eq!(back.matrix, rho.matrix);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let q = Rationals;
        let v = json!({"field": "Q", "dim": 2, "delta": [[0, 0, 0, "1"], [0, 5, 1, "1"]], "epsilon": ["1", "1"]});
        match parse_coalgebra(q, &loader(), &Node::root(&v)) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/delta/1"),
            other => panic!("{other:?}"),
        }
        let v = json!({"field": "Q", "dim": 1, "delta": [[0, 0, 0, "x"]], "epsilon": ["1"]});
        match parse_coalgebra(q, &loader(), &Node::root(&v)) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/delta/0/3"),
            other => panic!("{other:?}"),
        }
        let v = json!({"field": {"Fp": 2}, "catalog": "grouplike", "n": 2});
        assert!(matches!(
            parse_coalgebra(q, &loader(), &Node::root(&v)),
            Err(Error::FieldMismatch(..))
        ));
        assert_eq!(
            declared_field(&loader(), &Node::root(&json!({"coalgebra": v}))).unwrap(),
            Some(FieldSpec::PrimeField(2))
        );
    }

    #[test]
    fn sl2_comodule_over_kernel() {
        let f2 = PrimeField::new(2).unwrap();
        let v = json!({
            "coalgebra": {"field": {"Fp": 2}, "catalog": "frobenius_kernel", "n": 1},
            "side": "left",
            "catalog": "sl2",
            "module": "L1"
        });
        let m = parse_comodule(f2, &loader(), &Node::root(&v)).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.check().is_ok());
    }
}
