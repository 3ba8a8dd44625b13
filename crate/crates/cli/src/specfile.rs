//! JSON spec files, search job files and plain-text matrix files.

use grl_core::search::Family;
use grl_core::{Criterion, Error, Fe, Field, GrlSpec, Layout, Mat, SearchJob};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub m: u32,
    /// Little-endian coefficients of the monic modulus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field, Error> {
        Field::new(self.p, self.m, self.modulus.as_deref())
    }

    pub fn of(field: &Field) -> FieldSpec {
        FieldSpec {
            p: field.characteristic() as u64,
            m: field.degree(),
            modulus: (!field.is_prime_field()).then(|| field.modulus().to_vec()),
        }
    }
}

/// An element given either as an integer code or in codec text (`"w^3"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemText {
    Code(u64),
    Text(String),
}

impl ElemText {
    pub fn resolve(&self, field: &Field) -> Result<Fe, Error> {
        match self {
            ElemText::Code(c) => field.parse(&c.to_string()),
            ElemText::Text(s) => field.parse(s),
        }
    }

    fn code(x: Fe) -> ElemText {
        ElemText::Code(x.code() as u64)
    }
}

fn resolve_all(field: &Field, items: &[ElemText]) -> Result<Vec<Fe>, Error> {
    items.iter().map(|e| e.resolve(field)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VSpec {
    List(Vec<ElemText>),
    /// Only `"ones"` is accepted.
    Keyword(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MixingSpec {
    Grid(Vec<Vec<ElemText>>),
    Special {
        layout: Layout,
        mu: ElemText,
        delta: ElemText,
        tau: ElemText,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub field: FieldSpec,
    pub alpha: Vec<ElemText>,
    pub v: VSpec,
    #[serde(rename = "A")]
    pub a: MixingSpec,
    pub k: usize,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid spec file: {e}"))
    }

    pub fn to_spec(&self) -> Result<GrlSpec, Error> {
        let field = self.field.build()?;
        let alpha = resolve_all(&field, &self.alpha)?;
        let v = match &self.v {
            VSpec::List(items) => resolve_all(&field, items)?,
            VSpec::Keyword(word) if word == "ones" => vec![Fe::ONE; alpha.len()],
            VSpec::Keyword(word) => {
                return Err(Error::SpecInvariantViolated(format!(
                    "v must be a list of elements or \"ones\", got {word:?}"
                )))
            }
        };
        let a = match &self.a {
            MixingSpec::Grid(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| resolve_all(&field, r))
                    .collect::<Result<Vec<_>, _>>()?;
                if rows.is_empty() {
                    return Err(Error::SpecInvariantViolated(
                        "mixing matrix A must be square and nonempty".into(),
                    ));
                }
                Mat::from_rows(&field, &rows)?
            }
            MixingSpec::Special { layout, mu, delta, tau } => grl_core::grl::special_a(
                &field,
                mu.resolve(&field)?,
                delta.resolve(&field)?,
                tau.resolve(&field)?,
                *layout,
            ),
        };
        GrlSpec::new(&field, alpha, v, a, self.k)
    }

    /// Integer-code rendering of a spec, readable back by [`SpecFile::to_spec`].
    pub fn from_spec(spec: &GrlSpec) -> SpecFile {
        let codes = |xs: &[Fe]| xs.iter().map(|&x| ElemText::code(x)).collect::<Vec<_>>();
        let a = spec.mixing();
        SpecFile {
            field: FieldSpec::of(spec.field()),
            alpha: codes(spec.alpha()),
            v: VSpec::List(codes(spec.v())),
            a: MixingSpec::Grid((0..a.rows()).map(|i| codes(a.row(i))).collect()),
            k: spec.k(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FamilyFile {
    Cor33 {
        mu: Vec<ElemText>,
        delta: Vec<ElemText>,
        tau: Vec<ElemText>,
    },
    SelfDualSolver,
    Gl3Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub goal: Criterion,
    pub family: FamilyFile,
    #[serde(default)]
    pub validate: bool,
    #[serde(default)]
    pub max_candidates: Option<u64>,
    #[serde(default)]
    pub max_hits: Option<usize>,
}

impl JobFile {
    pub fn parse(text: &str) -> Result<JobFile, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid job file: {e}"))
    }

    pub fn to_job(&self, budget: u64) -> Result<SearchJob, Error> {
        let field = self.field.build()?;
        let family = match &self.family {
            FamilyFile::Cor33 { mu, delta, tau } => Family::Cor33 {
                mu: resolve_all(&field, mu)?,
                delta: resolve_all(&field, delta)?,
                tau: resolve_all(&field, tau)?,
            },
            FamilyFile::SelfDualSolver => Family::SelfDualSolver,
            FamilyFile::Gl3Sample { count, seed } => Family::Gl3Sample { count: *count, seed: *seed },
        };
        let mut job = SearchJob::new(&field, self.n, self.k, family, self.goal);
        job.validate = self.validate;
        job.max_candidates = self.max_candidates;
        job.max_hits = self.max_hits;
        job.budget = budget;
        Ok(job)
    }
}

/// Parses `p m [modulus codes]` followed by one row of element texts per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_file(text: &str) -> Result<Mat, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or("matrix file is empty")?;
    let nums = header
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| format!("bad header token {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() < 2 {
        return Err("header must be \"p m [modulus codes]\"".into());
    }
    let modulus: Vec<u32> = nums[2..].iter().map(|&c| c as u32).collect();
    let field = Field::new(
        nums[0],
        nums[1] as u32,
        (!modulus.is_empty()).then_some(modulus.as_slice()),
    )
    .map_err(|e| e.to_string())?;
    let rows = lines
        .map(|l| l.split_whitespace().map(|t| field.parse(t)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if rows.is_empty() {
        return Err("matrix file has no rows".into());
    }
    Mat::from_rows(&field, &rows).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX34: &str = r#"{"field":{"p":11},"alpha":[0,1,2,4,5],"v":"ones",
        "A":{"layout":"cor33","mu":1,"delta":8,"tau":4},"k":4}"#;

    #[test]
    fn parses_special_layout() {
        let spec = SpecFile::parse(EX34).unwrap().to_spec().unwrap();
        assert_eq!(spec.length(), 8);
        assert_eq!(spec.mixing().to_codes(), vec![vec![1, 8, 1], vec![4, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn from_spec_round_trips() {
        let spec = SpecFile::parse(EX34).unwrap().to_spec().unwrap();
        let file = SpecFile::from_spec(&spec);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(SpecFile::parse(&text).unwrap().to_spec().unwrap(), spec);
    }

    #[test]
    fn text_elements_and_bad_keyword() {
        let text = r#"{"field":{"p":2,"m":3},"alpha":["0","1","w","w^2","w^3"],"v":"ones",
            "A":[["1","0","0"],["0","w","0"],["0","0","1"]],"k":4}"#;
        let spec = SpecFile::parse(text).unwrap().to_spec().unwrap();
        assert_eq!(spec.alpha()[2], spec.field().generator());
        let bad = text.replace("\"ones\"", "\"twos\"");
        assert!(SpecFile::parse(&bad).unwrap().to_spec().is_err());
    }

    #[test]
    fn matrix_file() {
        let m = parse_matrix_file("2 3 1 1 0 1\n1 1 w\n0 w^3 1\n").unwrap();
        assert_eq!(m.shape(), (2, 3));
        assert_eq!(m.field().order(), 8);
        assert!(parse_matrix_file("").is_err());
        assert!(parse_matrix_file("7 1\n1 9\n").is_err());
    }
}
