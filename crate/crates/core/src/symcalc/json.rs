//! JSON interchange for Gaussian-rational Laurent polynomials:
//! `{"terms":[{"a":int,"b":int,"re":"num/den","im":"num/den"}]}`.

use num_complex::Complex;
use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BiLaurent;
use crate::scalar::{format_rational, parse_rational, Coefficient, RatInt};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: i32,
    b: i32,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl<T: RatInt> Serialize for BiLaurent<Complex<Ratio<T>>>
where
    Complex<Ratio<T>>: Coefficient,
{
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|((a, b), c)| TermRepr { a, b, re: format_rational(&c.re), im: format_rational(&c.im) })
            .collect();
        PolyRepr { terms }.serialize(serializer)
    }
}

impl<'de, T: RatInt> Deserialize<'de> for BiLaurent<Complex<Ratio<T>>>
where
    Complex<Ratio<T>>: Coefficient,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut out = BiLaurent::zero();
        for t in repr.terms {
            let re = parse_rational::<T>(&t.re).map_err(D::Error::custom)?;
            let im = parse_rational::<T>(&t.im).map_err(D::Error::custom)?;
            out.add_term(t.a, t.b, Complex::new(re, im));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::symcalc::{almansi_decompose, AlmansiForm};
    use crate::{GaussRational, Poly, Rational};

    #[test]
    fn wire_format() {
        let p = Poly::monomial(
            2,
            1,
            GaussRational::new(Rational::new(3.into(), 4.into()), Rational::new((-1).into(), 1.into())),
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[{"a":2,"b":1,"re":"3/4","im":"-1/1"}]}"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn accepts_integers_and_merges_duplicates() {
        let s = r#"{"terms":[{"a":0,"b":0,"re":"1","im":"0"},{"a":0,"b":0,"re":"-1/1","im":"0/5"}]}"#;
        let p: Poly = serde_json::from_str(s).unwrap();
        assert!(p.is_zero());
        assert!(serde_json::from_str::<Poly>(r#"{"terms":[{"a":0,"b":0,"re":"1/0","im":"0"}]}"#).is_err());
    }

    #[test]
    fn form_schema() {
        let f = almansi_decompose(&Poly::abs_sq(), 2).unwrap();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
        let back: AlmansiForm<GaussRational> = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
    }
}
