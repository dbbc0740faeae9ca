//! JSON file formats for posets, classes, simplicial complexes and builder specs.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::builders::{CellComplexInput, FormulaClassSpec, Matroid, MatroidSpec};
use crate::class::FunctionClass;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::SubsetPoset;
use crate::subsets::GroundSpec;

/// `{"n": 4, "elements": ["0000", "1000", …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub n: usize,
    pub elements: Vec<String>,
}

/// `{"n": 4, "functions": ["0000", "1000", …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub n: usize,
    pub functions: Vec<String>,
}

/// `{"vertices": 5, "facets": [[0,1,2],[2,3,4]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: usize,
    pub facets: Vec<Vec<u32>>,
}

impl PosetJson {
    pub fn load(&self) -> Result<SubsetPoset> {
        let ground = GroundSpec::new(self.n)?;
        let elems = self.elements.iter().map(|e| ground.parse(e)).collect::<Result<_>>()?;
        SubsetPoset::build(ground, elems)
    }

    pub fn from_poset(p: &SubsetPoset) -> Self {
        let g = p.ground();
        PosetJson {
            n: g.n(),
            elements: p.sorted_elements().into_iter().map(|s| g.format(s)).collect(),
        }
    }
}

impl ClassJson {
    pub fn load(&self) -> Result<FunctionClass> {
        let ground = GroundSpec::new(self.n)?;
        let fs = self.functions.iter().map(|e| ground.parse(e)).collect::<Result<_>>()?;
        FunctionClass::new(ground, fs)
    }

    pub fn from_class(c: &FunctionClass) -> Self {
        let g = c.ground();
        ClassJson {
            n: g.n(),
            functions: c.functions().iter().map(|&s| g.format(s)).collect(),
        }
    }
}

impl ComplexJson {
    pub fn load(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.vertices, self.facets.clone())
    }
}

/// Any supported input document, recognized by its keys.
#[derive(Debug, Clone)]
pub enum Document {
    Poset(SubsetPoset),
    Class(FunctionClass),
    Complex(SimplicialComplex),
    Cells(CellComplexInput),
    Matroid(Matroid),
    Formula(FormulaClassSpec),
}

fn parse<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    Ok(serde_json::from_value(v)?)
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("top level must be an object".into()))?;
        let has = |k: &str| obj.contains_key(k);
        if has("elements") {
            Ok(Document::Poset(parse::<PosetJson>(v)?.load()?))
        } else if has("functions") {
            Ok(Document::Class(parse::<ClassJson>(v)?.load()?))
        } else if has("facets") {
            Ok(Document::Complex(parse::<ComplexJson>(v)?.load()?))
        } else if has("faces") {
            Ok(Document::Cells(parse(v)?))
        } else if let Some(t) = obj.get("type").and_then(Value::as_str) {
            match t {
                "uniform" | "linear" | "graphic" | "direct_sum" => {
                    Ok(Document::Matroid(Matroid::from_spec(&parse::<MatroidSpec>(v)?)?))
                }
                _ => Ok(Document::Formula(parse(v)?)),
            }
        } else {
            Err(Error::Json(
                "unrecognized document: expected one of elements, functions, facets, faces, type".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLATS_JSON: &str = r#"{"n": 4, "elements": ["0000","1000","0100","0010","0001","1100","1010","1001","0111","1111"]}"#;

    #[test]
    fn poset_round_trip() {
        let Document::Poset(p) = Document::from_json(FLATS_JSON).unwrap() else { panic!() };
        assert_eq!(p.len(), 10);
        let back = PosetJson::from_poset(&p);
        assert_eq!(back.load().unwrap(), p);
    }

    #[test]
    fn validation_errors() {
        let dup = r#"{"n": 2, "elements": ["00","00"]}"#;
        assert!(matches!(Document::from_json(dup), Err(Error::Duplicate(_))));
        let wide = r#"{"n": 2, "elements": ["000"]}"#;
        assert!(Document::from_json(wide).is_err());
        assert!(matches!(Document::from_json("[1]"), Err(Error::Json(_))));
        assert!(matches!(Document::from_json("{"), Err(Error::Json(_))));
        let empty = r#"{"n": 2, "functions": []}"#;
        assert!(matches!(Document::from_json(empty), Err(Error::EmptyClass)));
        let bad_vertex = r#"{"vertices": 2, "facets": [[0, 2]]}"#;
        assert!(matches!(Document::from_json(bad_vertex), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn kinds() {
        let docs = [
            r#"{"n": 2, "functions": ["01","10"]}"#,
            r#"{"vertices": 5, "facets": [[0,1,2],[2,3,4]]}"#,
            r#"{"vertices": 2, "faces": [[0],[1],[0,1]]}"#,
            r#"{"type":"uniform","k":2,"m":3}"#,
            r#"{"type":"kcnf","d":3,"k":2,"monotone":true}"#,
        ];
        let got: Vec<_> = docs.iter().map(|d| Document::from_json(d).unwrap()).collect();
        assert!(matches!(got[0], Document::Class(_)));
        assert!(matches!(got[1], Document::Complex(_)));
        assert!(matches!(got[2], Document::Cells(_)));
        assert!(matches!(got[3], Document::Matroid(_)));
        assert!(matches!(got[4], Document::Formula(_)));
    }
}
