//! The JSON workspace format: algebras as quivers with relations, modules
//! as one matrix per generator, bimodules by construction, and
//! certificates by reference. Files are emitted canonically (sorted keys,
//! two-space indentation, trailing newline).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use trilit::algebra::{build_bound_quiver_algebra, Algebra, Bimodule, Quiver, QuiverArrow};
use trilit::exactlin::{Fp, Matrix};
use trilit::litcore::{DClass, LitCertificate};
use trilit::modules::Module;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub certificates: BTreeMap<String, CertificateFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub dimension: usize,
    /// One matrix per generator label (`e1`, ..., then the arrows).
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleFile {
    /// An algebra as a bimodule over itself.
    Regular { algebra: String },
    /// `(+) U e_i (x) e_j T` over the listed 1-based vertex pairs `[i, j]`.
    Free {
        left: String,
        right: String,
        pairs: Vec<[usize; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DFile {
    Generators(Vec<String>),
    Keyword(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VFile {
    Zero(u32),
    Module(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub algebra: String,
    pub n: usize,
    #[serde(rename = "D")]
    pub d: DFile,
    #[serde(rename = "V")]
    pub v: VFile,
}

impl WorkspaceFile {
    pub fn parse(text: &str) -> Result<WorkspaceFile> {
        serde_json::from_str(text)
            .map_err(|e| anyhow!("line {}, column {}: {e}", e.line(), e.column()))
    }

    pub fn to_canonical(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("plain data");
        s.push('\n');
        s
    }
}

/// A loaded, validated workspace.
pub struct Workspace {
    pub field: Fp,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub modules: BTreeMap<String, Module>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub certificates: BTreeMap<String, LitCertificate>,
}

impl Workspace {
    pub fn empty(field: Fp) -> Workspace {
        Workspace {
            field,
            algebras: BTreeMap::new(),
            modules: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            certificates: BTreeMap::new(),
        }
    }

    /// Reads and merges the files. `field` is the characteristic requested
    /// on the command line, if any; every file must agree with it.
    pub fn load(paths: &[impl AsRef<Path>], field: Option<u32>) -> Result<Workspace> {
        let mut files = Vec::new();
        for p in paths {
            let p = p.as_ref();
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            files.push(
                WorkspaceFile::parse(&text).with_context(|| format!("parsing {}", p.display()))?,
            );
        }
        Workspace::from_files(&files, field)
    }

    pub fn from_files(files: &[WorkspaceFile], field: Option<u32>) -> Result<Workspace> {
        let mut p = field;
        for f in files.iter().filter_map(|f| f.field) {
            match p {
                Some(q) if q != f => bail!("field mismatch: characteristic {f} against {q}"),
                _ => p = Some(f),
            }
        }
        let fp = Fp::new(p.unwrap_or(2))?;
        let mut merged = WorkspaceFile::default();
        for f in files {
            merge(&mut merged.algebras, &f.algebras, "algebra")?;
            merge(&mut merged.modules, &f.modules, "module")?;
            merge(&mut merged.bimodules, &f.bimodules, "bimodule")?;
            merge(&mut merged.certificates, &f.certificates, "certificate")?;
        }
        let mut ws = Workspace::empty(fp);
        for (name, a) in &merged.algebras {
            let alg = build_algebra(a, fp).with_context(|| format!("algebra {name}"))?;
            ws.algebras.insert(name.clone(), alg);
        }
        for (name, m) in &merged.modules {
            let module = ws
                .build_module(m)
                .with_context(|| format!("module {name}"))?;
            ws.modules.insert(name.clone(), module);
        }
        for (name, b) in &merged.bimodules {
            let bi = ws
                .build_bimodule(b)
                .with_context(|| format!("bimodule {name}"))?;
            ws.bimodules.insert(name.clone(), bi);
        }
        for (name, c) in &merged.certificates {
            let cert = ws
                .build_certificate(c)
                .with_context(|| format!("certificate {name}"))?;
            ws.certificates.insert(name.clone(), cert);
        }
        Ok(ws)
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>> {
        self.algebras
            .get(name)
            .ok_or_else(|| anyhow!("unresolved algebra reference {name:?}"))
    }

    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules
            .get(name)
            .ok_or_else(|| anyhow!("unresolved module reference {name:?}"))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Bimodule> {
        self.bimodules
            .get(name)
            .ok_or_else(|| anyhow!("unresolved bimodule reference {name:?}"))
    }

    pub fn certificate(&self, name: &str) -> Result<&LitCertificate> {
        self.certificates
            .get(name)
            .ok_or_else(|| anyhow!("unresolved certificate reference {name:?}"))
    }

    /// The only algebra, or the named one.
    pub fn pick_algebra(&self, name: Option<&str>) -> Result<(&str, &Arc<Algebra>)> {
        match name {
            Some(n) => {
                let (k, v) = self
                    .algebras
                    .get_key_value(n)
                    .ok_or_else(|| anyhow!("unresolved algebra reference {n:?}"))?;
                Ok((k, v))
            }
            None if self.algebras.len() == 1 => {
                let (k, v) = self.algebras.iter().next().expect("one algebra");
                Ok((k, v))
            }
            None => bail!(
                "the workspace has {} algebras; name one with --algebra",
                self.algebras.len()
            ),
        }
    }

    fn build_module(&self, m: &ModuleFile) -> Result<Module> {
        let alg = self.algebra(&m.algebra)?;
        let labels = alg.generator_labels();
        if let Some(extra) = m.matrices.keys().find(|k| !labels.contains(k)) {
            bail!("no generator named {extra:?} in algebra {}", m.algebra);
        }
        if m.dimension == 0 {
            return Ok(Module::zero(alg));
        }
        let gens = labels
            .iter()
            .map(|l| {
                let rows = m
                    .matrices
                    .get(l)
                    .ok_or_else(|| anyhow!("missing matrix for generator {l}"))?;
                if rows.len() != m.dimension || rows.iter().any(|r| r.len() != m.dimension) {
                    bail!("matrix for generator {l} is not {0}x{0}", m.dimension);
                }
                Ok(Matrix::from_rows(self.field, rows)?)
            })
            .collect::<Result<Vec<Matrix>>>()?;
        Ok(Module::new(alg.clone(), gens)?)
    }

    fn build_bimodule(&self, b: &BimoduleFile) -> Result<Bimodule> {
        match b {
            BimoduleFile::Regular { algebra } => Ok(Bimodule::regular(self.algebra(algebra)?)),
            BimoduleFile::Free { left, right, pairs } => {
                let (u, t) = (self.algebra(left)?, self.algebra(right)?);
                if pairs.is_empty() {
                    bail!("a free bimodule needs at least one vertex pair");
                }
                let parts = pairs
                    .iter()
                    .map(|&[i, j]| {
                        if i == 0 || j == 0 {
                            bail!("vertices are numbered from 1");
                        }
                        Ok(Bimodule::free(u, i - 1, t, j - 1)?)
                    })
                    .collect::<Result<Vec<Bimodule>>>()?;
                Ok(Bimodule::direct_sum(&parts)?)
            }
        }
    }

    fn build_certificate(&self, c: &CertificateFile) -> Result<LitCertificate> {
        let alg = self.algebra(&c.algebra)?;
        let over = |name: &str| -> Result<Module> {
            let m = self.module(name)?;
            if **m.algebra() != **alg {
                bail!("module {name} is not over algebra {}", c.algebra);
            }
            Ok(m.clone())
        };
        let d = match &c.d {
            DFile::Keyword(k) if k == "all_modules" => DClass::AllModules,
            DFile::Keyword(k) => {
                bail!("unknown class {k:?} (expected a list of modules or \"all_modules\")")
            }
            DFile::Generators(names) => DClass::Generators(
                names
                    .iter()
                    .map(|n| over(n))
                    .collect::<Result<Vec<Module>>>()?,
            ),
        };
        let v = match &c.v {
            VFile::Zero(0) => Module::zero(alg),
            VFile::Zero(k) => bail!("V must be a module reference or 0, not {k}"),
            VFile::Module(name) => over(name)?,
        };
        Ok(LitCertificate::new(c.n, d, v))
    }
}

fn merge<T: Clone>(
    into: &mut BTreeMap<String, T>,
    from: &BTreeMap<String, T>,
    what: &str,
) -> Result<()> {
    for (k, v) in from {
        if into.insert(k.clone(), v.clone()).is_some() {
            bail!("{what} {k:?} is defined twice");
        }
    }
    Ok(())
}

pub fn build_algebra(a: &AlgebraFile, f: Fp) -> Result<Arc<Algebra>> {
    let arrows = a
        .arrows
        .iter()
        .map(|x| QuiverArrow {
            source: x.source,
            target: x.target,
            label: x.label.clone(),
        })
        .collect();
    let q = Quiver::new(a.vertices, arrows)?;
    Ok(build_bound_quiver_algebra(&q, &a.relations, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = include_str!("../examples/dual-numbers.json");

    #[test]
    fn fixture_loads() {
        let ws = Workspace::from_files(&[WorkspaceFile::parse(DUAL).unwrap()], None).unwrap();
        assert_eq!(ws.algebras.len(), 1);
        assert_eq!(ws.modules.len(), 2);
        assert_eq!(ws.field, Fp::two());
    }

    #[test]
    fn canonical_round_trip() {
        let file = WorkspaceFile::parse(DUAL).unwrap();
        assert_eq!(file.to_canonical(), DUAL);
    }

    #[test]
    fn characteristics_must_agree() {
        let a = WorkspaceFile::parse(DUAL).unwrap();
        let b = WorkspaceFile {
            field: Some(3),
            ..Default::default()
        };
        assert!(Workspace::from_files(&[a.clone(), b], None).is_err());
        assert!(Workspace::from_files(&[a], Some(5)).is_err());
    }
}
