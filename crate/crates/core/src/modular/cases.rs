//! The versioned golden-case bundles and their generic runner. Case
//! data lives in JSON files under cases/ at the workspace root, with
//! all constants and expected series recorded there; the binary embeds
//! them for reproducibility and accepts an override directory.

use super::theorem83::{theorem83_check, HauptmodulSpec, ModularCase, PhiFSpec, Theorem83Report};
use crate::error::Error;
use crate::Result;
use rug::Rational;

const CASE_HESSE: &str = include_str!("../../../../cases/hesse.json");
const CASE_HESSE_GAMMA3: &str = include_str!("../../../../cases/hesse_gamma3.json");
const CASE_APERY: &str = include_str!("../../../../cases/apery.json");
const CASE_FERMI: &str = include_str!("../../../../cases/fermi.json");
const CASE_VERRILL: &str = include_str!("../../../../cases/verrill.json");
const CASE_D5BOX: &str = include_str!("../../../../cases/d5box.json");

fn parse_rational(v: &serde_json::Value, what: &str) -> Result<Rational> {
    let s = v
        .as_str()
        .map(|s| s.to_string())
        .or_else(|| v.as_i64().map(|x| x.to_string()))
        .ok_or_else(|| Error::Parse(format!("{}: expected rational string", what)))?;
    s.parse().map_err(|_| Error::Parse(format!("{}: bad rational {}", what, s)))
}

fn parse_rational_list(v: &serde_json::Value, what: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{}: expected array", what)))?
        .iter()
        .map(|x| parse_rational(x, what))
        .collect()
}

/// Parses a case bundle.
pub fn load_case(src: &str) -> Result<ModularCase> {
    let v: serde_json::Value =
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("case json: {}", e)))?;
    let name = v["name"].as_str().unwrap_or("unnamed").to_string();
    let hm = &v["hauptmodul"];
    let hauptmodul = match hm["kind"].as_str().unwrap_or("") {
        "eta" => {
            let factors = hm["factors"]
                .as_array()
                .ok_or_else(|| Error::Parse("hauptmodul.factors".into()))?
                .iter()
                .map(|p| {
                    let d = p[0].as_u64().unwrap_or(1) as u32;
                    let e = p[1].as_i64().unwrap_or(0) as i32;
                    (d, e)
                })
                .collect();
            HauptmodulSpec::Eta {
                factors,
                var_scale: hm["var_scale"].as_u64().unwrap_or(1) as u32,
                negate: hm["negate"].as_bool().unwrap_or(false),
            }
        }
        "hesse_reciprocal" => HauptmodulSpec::HesseReciprocal,
        "hesse_gamma3" => HauptmodulSpec::HesseGamma3,
        "fermi_rational" => HauptmodulSpec::FermiRational,
        other => return Err(Error::Parse(format!("unknown hauptmodul kind {}", other))),
    };
    let e4 = if v["e4"].is_object() {
        let coeffs = parse_rational_list(&v["e4"]["coeffs"], "e4.coeffs")?;
        let scales = v["e4"]["scales"]
            .as_array()
            .ok_or_else(|| Error::Parse("e4.scales".into()))?
            .iter()
            .map(|x| x.as_u64().unwrap_or(1) as u32)
            .collect();
        let stretch = v["e4"]["stretch"].as_u64().unwrap_or(1) as u32;
        Some((coeffs, scales, stretch))
    } else {
        None
    };
    let phi_f = if v["phi_f"].is_object() {
        Some(match v["phi_f"]["kind"].as_str().unwrap_or("") {
            "fundvec_pull_infinity" => PhiFSpec::FundvecPullInfinity {
                scale: parse_rational(&v["phi_f"]["scale"], "phi_f.scale")?,
            },
            "indicator_combo" => {
                let terms = v["phi_f"]["terms"]
                    .as_array()
                    .ok_or_else(|| Error::Parse("phi_f.terms".into()))?
                    .iter()
                    .map(|t| -> Result<(i64, i64, Rational)> {
                        Ok((
                            t[0].as_i64().unwrap_or(1),
                            t[1].as_i64().unwrap_or(1),
                            parse_rational(&t[2], "phi_f term")?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PhiFSpec::IndicatorCombo { terms }
            }
            "d5box_zero_pull" => PhiFSpec::D5BoxZeroPull,
            other => return Err(Error::Parse(format!("unknown phi_f kind {}", other))),
        })
    } else {
        None
    };
    Ok(ModularCase {
        name,
        description: v["description"].as_str().unwrap_or("").to_string(),
        phi: v["phi"].as_str().ok_or_else(|| Error::Parse("phi".into()))?.to_string(),
        ell: v["ell"].as_u64().unwrap_or(1) as u32,
        level: v["level"].as_i64().unwrap_or(3),
        kappa: v["kappa"].as_u64().unwrap_or(1) as usize,
        m0: v["m0"].as_i64().unwrap_or(1),
        n_gamma: v["n_gamma"].as_i64().unwrap_or(1),
        m_theta: v["m_theta"].as_i64().unwrap_or(1),
        c0: parse_rational(&v["c0"], "c0")?,
        y0: parse_rational(&v["y0"], "y0")?,
        hauptmodul,
        e4,
        phi_f,
        expected_f: parse_rational_list(&v["expected_f"], "expected_f")?,
        expected_h: parse_rational_list(&v["expected_h"], "expected_h")?,
        provenance: v["provenance"]
            .as_array()
            .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
            .unwrap_or_default(),
    })
}

/// The embedded case registry.
pub fn builtin_cases() -> Result<Vec<ModularCase>> {
    [CASE_HESSE, CASE_HESSE_GAMMA3, CASE_APERY, CASE_FERMI, CASE_VERRILL, CASE_D5BOX]
        .iter()
        .map(|s| load_case(s))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub name: String,
    pub report: Theorem83Report,
}

/// Runs every embedded case at the given order; deterministic ordering.
pub fn run_all_cases(order: usize) -> Result<Vec<CaseOutcome>> {
    let mut out = vec![];
    for case in builtin_cases()? {
        let report = theorem83_check(&case, order)?;
        out.push(CaseOutcome { name: case.name.clone(), report });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtin_cases_parse() {
        let cs = builtin_cases().unwrap();
        assert_eq!(cs.len(), 6);
        let names: Vec<&str> = cs.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["hesse", "hesse_gamma3", "apery", "fermi", "verrill", "d5box"]);
    }

    #[test]
    fn hesse_case_passes_quick() {
        let cs = builtin_cases().unwrap();
        let hesse = cs.iter().find(|c| c.name == "hesse").unwrap();
        let rep = theorem83_check(hesse, 6).unwrap();
        assert!(rep.passes(), "{:?}", rep.messages);
        assert_eq!(rep.f_series.coeff(0), rug::Rational::from(-1));
        assert_eq!(rep.f_series.coeff(1), rug::Rational::from(9));
    }
}
