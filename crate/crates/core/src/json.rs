//! JSON forms. Field elements are written in the text grammar and fields
//! by descriptor, so every value reads back with [`Field::parse`].

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::srim::SrimRecord;
use crate::tsr::{Decomposition, TsrStar};

fn elems(field: &Field, xs: &[Fe]) -> Vec<String> {
    xs.iter().map(|&a| field.format(a)).collect()
}

fn parse_elems<E: serde::de::Error>(field: &Field, xs: &[String]) -> Result<Vec<Fe>, E> {
    xs.iter()
        .map(|s| field.parse_elem(s).map_err(E::custom))
        .collect()
}

fn parse_rows<E: serde::de::Error>(field: &Field, rows: &[Vec<String>]) -> Result<Matrix, E> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(E::custom("ragged matrix rows"));
    }
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        data.extend(parse_elems::<E>(field, row)?);
    }
    Matrix::new(field.clone(), r, c, data).map_err(E::custom)
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Poly", 2)?;
        st.serialize_field("field", &self.field().descriptor())?;
        st.serialize_field("coeffs", &elems(self.field(), self.coeffs()))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct PolyForm {
    field: String,
    coeffs: Vec<String>,
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let form = PolyForm::deserialize(d)?;
        let field = Field::parse(&form.field).map_err(D::Error::custom)?;
        let coeffs = parse_elems(&field, &form.coeffs)?;
        Ok(Poly::new(field, coeffs))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Matrix", 4)?;
        st.serialize_field("field", &self.field().descriptor())?;
        st.serialize_field("rows", &self.rows())?;
        st.serialize_field("cols", &self.cols())?;
        st.serialize_field("entries", &self.format_rows())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct MatrixForm {
    field: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let form = MatrixForm::deserialize(d)?;
        let field = Field::parse(&form.field).map_err(D::Error::custom)?;
        let m = parse_rows::<D::Error>(&field, &form.entries)?;
        if (m.rows(), m.cols()) != (form.rows, form.cols) {
            return Err(D::Error::custom("matrix shape does not match entries"));
        }
        Ok(m)
    }
}

impl Serialize for TsrStar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let field = self.field();
        let mut g = elems(field, self.g().coeffs());
        g.resize(self.n(), field.format(Fe::ZERO));
        let mut st = s.serialize_struct("TsrStar", 5)?;
        st.serialize_field("m", &self.m())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("field", &field.descriptor())?;
        st.serialize_field("g", &g)?;
        st.serialize_field("A", &self.block().format_rows())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct TsrForm {
    m: usize,
    n: usize,
    field: String,
    g: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
}

impl<'de> Deserialize<'de> for TsrStar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<TsrStar, D::Error> {
        let form = TsrForm::deserialize(d)?;
        let field = Field::parse(&form.field).map_err(D::Error::custom)?;
        let g = Poly::new(field.clone(), parse_elems(&field, &form.g)?);
        let a = parse_rows::<D::Error>(&field, &form.a)?;
        TsrStar::new(form.m, form.n, g, a).map_err(D::Error::custom)
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Decomposition", 2)?;
        st.serialize_field("g", &self.g.to_string())?;
        st.serialize_field("h", &self.h.to_string())?;
        st.end()
    }
}

impl Serialize for SrimRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let phi = self.tsr.char_poly().map_err(serde::ser::Error::custom)?;
        let mut st = s.serialize_struct("SrimRecord", 5)?;
        st.serialize_field("f", &self.f.to_string())?;
        st.serialize_field("h1", &self.h1.to_string())?;
        st.serialize_field("h", &self.h.to_string())?;
        st.serialize_field("tsr", &self.tsr)?;
        st.serialize_field("char_poly", &phi.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srim::srim_to_tsr;
    use serde_json::json;

    #[test]
    fn poly_round_trip() {
        let f4 = Field::with_order(4).unwrap();
        let p = Poly::parse(&f4, "x^2 + t*x + (t+1)").unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, json!({"field": "2^2", "coeffs": ["t+1", "t", "1"]}));
        let back: Poly = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn matrix_round_trip() {
        let f3 = Field::with_order(3).unwrap();
        let a = Matrix::from_indices(&f3, &[&[0, 1], &[2, 1]]).unwrap();
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, json!({"field": "3", "rows": 2, "cols": 2, "entries": [["0", "1"], ["2", "1"]]}));
        assert_eq!(serde_json::from_value::<Matrix>(v).unwrap(), a);
        let bad = json!({"field": "3", "rows": 3, "cols": 2, "entries": [["0", "1"], ["2", "1"]]});
        assert!(serde_json::from_value::<Matrix>(bad).is_err());
    }

    #[test]
    fn tsr_round_trip() {
        let f2 = Field::with_order(2).unwrap();
        let r = srim_to_tsr(&Poly::parse(&f2, "x^4+x^3+x^2+x+1").unwrap()).unwrap();
        let v = serde_json::to_value(&r.tsr).unwrap();
        assert_eq!(
            v,
            json!({"m": 2, "n": 2, "field": "2", "g": ["1", "1"], "A": [["0", "1"], ["1", "1"]]})
        );
        assert_eq!(serde_json::from_value::<TsrStar>(v).unwrap(), r.tsr);
        let rec = serde_json::to_value(&r).unwrap();
        assert_eq!(rec["char_poly"], "x^4+x^3+1");

        // g padded to n coefficients
        let t = TsrStar::new(1, 3, Poly::one(f2.clone()), Matrix::identity(f2, 1)).unwrap();
        assert_eq!(serde_json::to_value(&t).unwrap()["g"], json!(["1", "0", "0"]));
    }
}
