//! Mesh output for triangles and tetrahedra: OFF text and a JSON mesh.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{edge_count, Field, JsonScalar};
use crate::rep::{evaluate_word_at, BraidWord, RepMode};
use crate::simplex::{embed, EdgeNormVector, PointConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

impl Mesh {
    /// A triangle (`n = 3`, in the `z = 0` plane) or a tetrahedron (`n = 4`).
    pub fn from_points<S: Field>(p: &PointConfig<S>) -> Result<Self> {
        let faces = match p.n() {
            3 => vec![vec![0, 1, 2]],
            4 => vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            n => return Err(Error::OutOfRange(format!("meshes need n = 3 or 4, got {n}"))),
        };
        let vertices = p
            .euclidean_f64()
            .into_iter()
            .map(|c| {
                let mut v = [0.0; 3];
                for (slot, x) in v.iter_mut().zip(c) {
                    *slot = x;
                }
                v
            })
            .collect();
        Ok(Mesh { vertices, faces })
    }

    pub fn to_off(&self) -> String {
        let n = self.vertices.len();
        let mut out = format!("OFF\n{} {} {}\n", n, self.faces.len(), edge_count(n));
        for v in &self.vertices {
            let _ = writeln!(out, "{} {} {}", sig12(v[0]), sig12(v[1]), sig12(v[2]));
        }
        for f in &self.faces {
            let idx: Vec<String> = f.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{} {}", f.len(), idx.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "vertices": self.vertices, "faces": self.faces })
    }
}

/// `x` with 12 significant digits, trailing zeros removed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let s = if !(-5..15).contains(&magnitude) {
        format!("{x:.11e}")
    } else {
        format!("{:.*}", (11 - magnitude).max(0) as usize, x)
    };
    let (mantissa, exponent) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), format!("e{e}")),
        None => (s, String::new()),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        mantissa
    };
    let mantissa = if mantissa == "-0" { "0".to_string() } else { mantissa };
    mantissa + &exponent
}

/// All squared edge lengths equal to 1.
pub fn regular_simplex_norms<F: Field>(n: usize) -> EdgeNormVector<F> {
    EdgeNormVector::new(n, vec![F::one(); edge_count(n)]).expect("length matches")
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitStage<F> {
    pub step: usize,
    pub norms: EdgeNormVector<F>,
    pub mesh: Mesh,
}

impl<F: Field + JsonScalar> OrbitStage<F> {
    pub fn to_json(&self) -> Value {
        json!({ "step": self.step, "norms": self.norms.to_json(), "mesh": self.mesh.to_json() })
    }
}

/// Stages `0..=steps` of the regular simplex under repeated application of
/// the simplicial matrix of `word` at `q0`.
pub fn orbit<F: Field>(word: &BraidWord, q0: &F, steps: usize) -> Result<Vec<OrbitStage<F>>> {
    let m = evaluate_word_at(word, RepMode::Simplicial, q0, &F::one())?;
    let mut norms = regular_simplex_norms::<F>(word.n);
    let mut out = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        let mesh = Mesh::from_points(&embed(&norms)?)?;
        out.push(OrbitStage { step, norms: norms.clone(), mesh });
        norms = EdgeNormVector::new(word.n, m.mul_vec(norms.entries())?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(sig12(123456.789), "123456.789");
        assert_eq!(sig12(3f64.sqrt() / 2.0), "0.866025403784");
    }

    #[test]
    fn triangle_off() {
        let p = embed(&regular_simplex_norms::<Rational>(3)).unwrap();
        let off = Mesh::from_points(&p).unwrap().to_off();
        assert_eq!(off, "OFF\n3 1 3\n0 0 0\n1 0 0\n0.5 0.866025403784 0\n3 0 1 2\n");
    }

    #[test]
    fn orbit_of_s12() {
        let w = BraidWord::parse("s12", 3).unwrap();
        let two = Rational::from_integer(2.into());
        let stages = orbit(&w, &two, 1).unwrap();
        let expect: Vec<Rational> = [4, 1, 3].iter().map(|&k| Rational::from_integer(k.into())).collect();
        assert_eq!(stages[1].norms.entries(), expect.as_slice());
        assert_eq!(stages.len(), 2);
        assert!(orbit(&BraidWord::parse("s12", 5).unwrap(), &two, 1).is_err());
    }
}
