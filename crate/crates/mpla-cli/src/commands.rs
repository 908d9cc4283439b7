//! One method per verb. Each returns a report or an artifact; invalid input comes back as
//! `Fail::Invalid` carrying the report that explains it.

use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};

use mpla::bigraded::mc_check;
use mpla::deform_ext::{
    cocycle_to_extension, deformation_check, deformation_equiv_check, extension_to_cocycle, validate_extension,
    AbelianExtension, DeformationCandidate, Section,
};
use mpla::io;
use mpla::lie_core::{validate_lie_algebra, validate_representation, ValidationReport};
use mpla::matched_pair::{
    bialgebra_to_matched_pair, bicrossed_product, check_rota_baxter, lie_from_json, lie_to_json, rep_from_json,
    rota_baxter_matched_pair, validate_bialgebra, validate_matched_pair, LieBialgebra, MatchedPair,
};
use mpla::mp_cohomology::{cohomology_table_json, mpl_cohomology_table, MPCochain};
use mpla::mp_rep::{coadjoint_representation, dual_representation, semidirect_product, validate_mp_representation, MPRepresentation};
use mpla::skeletal::{
    skeletal_to_triple, triple_to_skeletal, validate_skeletal_matched_pair, validate_skeletal_rep, validate_two_term,
    SkeletalMatchedPair, SkeletalRep, SkeletalTriple, TwoTermLInfinity,
};
use mpla::Error;

use crate::{Format, Kind};

/// A finished computation: either a report (`artifact == None`) or a JSON product.
pub struct Done {
    pub ok: bool,
    text: String,
    json: Value,
    artifact: Option<String>,
}

pub enum Fail {
    /// The structure is well-formed but fails its axioms (exit 1).
    Invalid(Done),
    /// Unreadable or ill-shaped input (exit 2).
    Malformed(String),
}

impl Done {
    fn report(r: &ValidationReport) -> Self {
        Done { ok: r.is_valid(), text: r.to_text(), json: r.to_json(), artifact: None }
    }

    fn message(ok: bool, text: String, json: Value) -> Self {
        Done { ok, text, json, artifact: None }
    }

    /// `what` names the product in the summary line printed when it goes to a file.
    fn artifact(what: &str, value: Value) -> Self {
        Done { ok: true, text: String::new(), json: value, artifact: Some(what.to_string()) }
    }

    pub fn is_artifact(&self) -> bool {
        self.artifact.is_some()
    }

    /// Artifacts are JSON in either format.
    pub fn render(&self, format: Format) -> String {
        if format == Format::Json || self.is_artifact() {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }

    pub fn summary(&self, path: &Path) -> String {
        format!("{} written to {}\n", self.artifact.as_deref().unwrap_or("result"), path.display())
    }
}

fn invalid(r: &ValidationReport) -> Fail {
    Fail::Invalid(Done::report(r))
}

fn lib(file: &str) -> impl Fn(Error) -> Fail + '_ {
    move |e| match e {
        Error::InvalidInput(r) => invalid(&r),
        Error::NotACocycle
        | Error::NotRotaBaxter(_)
        | Error::NonzeroMiddleComponent
        | Error::NotRestrictable(_)
        | Error::NotASection(_) => {
            let msg = e.to_string();
            Fail::Invalid(Done::message(false, format!("{msg}\n"), json!({"valid": false, "error": msg})))
        }
        Error::Parse { .. } => Fail::Malformed(format!("{file}: {e}")),
        other => Fail::Malformed(format!("{file}: {other}")),
    }
}

/// Reads a JSON file, or stdin when the path is `-`.
fn load(path: &str) -> Result<Value, Fail> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Malformed(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Fail::Malformed(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Fail::Malformed(format!("{path}: invalid JSON: {e}")))
}

fn require_valid(mp: &MatchedPair) -> Result<(), Fail> {
    let r = validate_matched_pair(mp);
    if r.is_valid() {
        Ok(())
    } else {
        Err(invalid(&r))
    }
}

pub struct Ctx {
    pub max_degree: usize,
    pub coefficients: Option<String>,
}

impl Ctx {
    fn matched_pair(&self, file: &str) -> Result<MatchedPair, Fail> {
        MatchedPair::from_json(&load(file)?, "$").map_err(lib(file))
    }

    /// Adjoint unless `--coefficients` names a file or `coadjoint`.
    fn coefficients(&self, mp: &MatchedPair) -> Result<(MPRepresentation, String), Fail> {
        match self.coefficients.as_deref() {
            None | Some("adjoint") => Ok((MPRepresentation::adjoint(mp), "adjoint".into())),
            Some("coadjoint") => Ok((coadjoint_representation(mp), "coadjoint".into())),
            Some(path) => {
                let r = MPRepresentation::from_json(&load(path)?, "$", mp).map_err(lib(path))?;
                Ok((r, path.to_string()))
            }
        }
    }

    fn valid_coefficients(&self, mp: &MatchedPair) -> Result<(MPRepresentation, String), Fail> {
        let (r, label) = self.coefficients(mp)?;
        let report = validate_mp_representation(&r).map_err(lib(&label))?;
        if !report.is_valid() {
            return Err(invalid(&report));
        }
        Ok((r, label))
    }

    pub fn validate(&self, file: &str, kind: Kind) -> Result<Done, Fail> {
        if self.coefficients.is_some() && kind == Kind::MatchedPair {
            let mp = self.matched_pair(file)?;
            let (r, label) = self.coefficients(&mp)?;
            return Ok(Done::report(&validate_mp_representation(&r).map_err(lib(&label))?));
        }
        let v = load(file)?;
        let report = match kind {
            Kind::MatchedPair => validate_matched_pair(&MatchedPair::from_json(&v, "$").map_err(lib(file))?),
            Kind::Lie => validate_lie_algebra(&lie_from_json(&v, "$").map_err(lib(file))?),
            Kind::LieRep => {
                let g = lie_from_json(io::field(&v, "algebra", "$").map_err(lib(file))?, "$.algebra").map_err(lib(file))?;
                let field = io::field(&v, "representation", "$").map_err(lib(file))?;
                validate_representation(&rep_from_json(field, "$.representation", &g).map_err(lib(file))?)
            }
            Kind::Bialgebra => validate_bialgebra(&LieBialgebra::from_json(&v, "$").map_err(lib(file))?),
            Kind::Extension => {
                validate_extension(&AbelianExtension::from_json(&v, "$").map_err(lib(file))?).map_err(lib(file))?
            }
            Kind::TwoTerm => validate_two_term(&TwoTermLInfinity::from_json(&v, "$").map_err(lib(file))?).map_err(lib(file))?,
        };
        Ok(Done::report(&report))
    }

    pub fn bicross(&self, file: &str) -> Result<Done, Fail> {
        let g = bicrossed_product(&self.matched_pair(file)?).map_err(lib(file))?;
        Ok(Done::artifact("bicrossed product", lie_to_json(&g)))
    }

    pub fn semidirect(&self, file: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let (r, label) = self.coefficients(&mp)?;
        Ok(Done::artifact("semidirect product", semidirect_product(&r).map_err(lib(&label))?.to_json()))
    }

    pub fn dual(&self, file: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let (r, _) = self.valid_coefficients(&mp)?;
        Ok(Done::artifact("dual representation", dual_representation(&r).to_json()))
    }

    pub fn cohomology(&self, file: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let (r, label) = self.valid_coefficients(&mp)?;
        let rows = mpl_cohomology_table(&r, self.max_degree).map_err(lib(&label))?;
        let mut text = format!("cohomology with {label} coefficients\n  degree  dim C^n  dim H^n\n");
        for row in &rows {
            text.push_str(&format!("  {:>6}  {:>7}  {:>7}\n", row.degree, row.cochain_dim, row.h_dim));
        }
        let json = json!({
            "coefficients": label,
            "max_degree": self.max_degree,
            "table": cohomology_table_json(&rows),
        });
        Ok(Done::message(true, text, json))
    }

    pub fn mc_check(&self, file: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        Ok(Done::report(&mc_check(&mp.structure_element()).map_err(lib(file))?.to_report()))
    }

    pub fn deform_check(&self, file: &str, candidate: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let d = DeformationCandidate::from_json(&load(candidate)?, "$", &mp).map_err(lib(candidate))?;
        let r = deformation_check(&mp, &d).map_err(lib(file))?;
        Ok(Done::message(r.is_deformation(), r.to_text(), r.to_json()))
    }

    pub fn deform_equiv(&self, file: &str, first: &str, second: &str, maps: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let d1 = DeformationCandidate::from_json(&load(first)?, "$", &mp).map_err(lib(first))?;
        let d2 = DeformationCandidate::from_json(&load(second)?, "$", &mp).map_err(lib(second))?;
        let v = load(maps)?;
        let (m, n) = mp.dims();
        let f = io::field(&v, "f", "$").and_then(|x| io::matrix(x, "$.f", m, m)).map_err(lib(maps))?;
        let g = io::field(&v, "g", "$").and_then(|x| io::matrix(x, "$.g", n, n)).map_err(lib(maps))?;
        let r = deformation_equiv_check(&mp, &d1, &d2, &f, &g).map_err(lib(file))?;
        Ok(Done::report(&r.combined()))
    }

    pub fn extend(&self, file: &str, cocycle: &str) -> Result<Done, Fail> {
        let mp = self.matched_pair(file)?;
        require_valid(&mp)?;
        let (r, _) = self.valid_coefficients(&mp)?;
        let c = MPCochain::from_json(&load(cocycle)?, "$", [mp.g.dim, mp.h.dim, r.p, r.q]).map_err(lib(cocycle))?;
        Ok(Done::artifact("extension", cocycle_to_extension(&r, &c).map_err(lib(cocycle))?.to_json()))
    }

    pub fn extract_cocycle(&self, file: &str, section: Option<&str>) -> Result<Done, Fail> {
        let e = AbelianExtension::from_json(&load(file)?, "$").map_err(lib(file))?;
        let s = match section {
            Some(path) => Some(Section::from_json(&load(path)?, "$", &e).map_err(lib(path))?),
            None => None,
        };
        Ok(Done::artifact("cocycle", extension_to_cocycle(&e, s.as_ref()).map_err(lib(file))?.to_json()))
    }

    /// The kind is read off the keys: `G` for a pair, `algebra` + `representation` for a representation.
    pub fn skeletal_validate(&self, file: &str) -> Result<Done, Fail> {
        let v = load(file)?;
        let report = if io::opt_field(&v, "G").is_some() {
            validate_skeletal_matched_pair(&SkeletalMatchedPair::from_json(&v, "$").map_err(lib(file))?)
        } else if let (Some(a), Some(r)) = (io::opt_field(&v, "algebra"), io::opt_field(&v, "representation")) {
            let t = TwoTermLInfinity::from_json(a, "$.algebra").map_err(lib(file))?;
            let r = SkeletalRep::from_json(r, "$.representation", &t).map_err(lib(file))?;
            validate_skeletal_rep(&t, &r)
        } else {
            validate_two_term(&TwoTermLInfinity::from_json(&v, "$").map_err(lib(file))?)
        };
        Ok(Done::report(&report.map_err(lib(file))?))
    }

    /// A skeletal pair (key `G`) goes to a triple; a triple (key `matched_pair`) goes back.
    pub fn skeletal_correspond(&self, file: &str) -> Result<Done, Fail> {
        let v = load(file)?;
        if io::opt_field(&v, "G").is_some() {
            let s = SkeletalMatchedPair::from_json(&v, "$").map_err(lib(file))?;
            Ok(Done::artifact("triple", skeletal_to_triple(&s).map_err(lib(file))?.to_json()))
        } else if io::opt_field(&v, "matched_pair").is_some() {
            let t = SkeletalTriple::from_json(&v, "$").map_err(lib(file))?;
            Ok(Done::artifact("skeletal matched pair", triple_to_skeletal(&t).map_err(lib(file))?.to_json()))
        } else {
            Err(Fail::Malformed(format!("{file}: expected a skeletal matched pair (key \"G\") or a triple (key \"matched_pair\")")))
        }
    }

    pub fn rota_baxter(&self, file: &str) -> Result<Done, Fail> {
        let v = load(file)?;
        let g = lie_from_json(io::field(&v, "algebra", "$").map_err(lib(file))?, "$.algebra").map_err(lib(file))?;
        let r = io::field(&v, "R", "$").and_then(|x| io::matrix(x, "$.R", g.dim, g.dim)).map_err(lib(file))?;
        let report = check_rota_baxter(&g, &r).map_err(lib(file))?;
        if !report.is_valid() {
            return Err(invalid(&report));
        }
        Ok(Done::artifact("matched pair", rota_baxter_matched_pair(&g, &r).map_err(lib(file))?.to_json()))
    }

    pub fn bialgebra(&self, file: &str) -> Result<Done, Fail> {
        let b = LieBialgebra::from_json(&load(file)?, "$").map_err(lib(file))?;
        let report = validate_bialgebra(&b);
        if !report.is_valid() {
            return Err(invalid(&report));
        }
        Ok(Done::artifact("matched pair", bialgebra_to_matched_pair(&b).to_json()))
    }
}
