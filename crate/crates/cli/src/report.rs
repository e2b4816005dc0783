//! The report model: what the CLI prints, as JSON or text.
//!
//! Integers that can outgrow 64 bits (matrix entries, invariant factors,
//! `p^k`, coordinates) are decimal strings. The text form is rendered from
//! this model alone, so `render_text(&from_json(&to_json(r))) == render_text(r)`.

use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use torbundle::ltheory::{l_table, LGroupTableEntry};
use torbundle::oracles::verify_all;
use torbundle::{
    abelianization, char_poly, commutator_rank_check, conjugacy_classes, detection_report, h1,
    sgeo_of_m, sper_of_bgamma, sper_of_m, torus_fixed_points, whitehead, ActionData,
    DetectionReport, FgAbGroup, LocalizedModule, ManifoldParams,
};

use crate::input::InputDoc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub text: String,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbolic: Vec<String>,
}

impl From<&FgAbGroup> for GroupJson {
    fn from(g: &FgAbGroup) -> Self {
        Self {
            text: g.to_string(),
            free_rank: g.free_rank(),
            invariant_factors: g
                .invariant_factors()
                .iter()
                .map(ToString::to_string)
                .collect(),
            symbolic: g.symbolic_summands().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub text: String,
    pub coefficient: String,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl From<&LocalizedModule> for ModuleJson {
    fn from(m: &LocalizedModule) -> Self {
        Self {
            text: m.to_string(),
            coefficient: m.coefficient().to_string(),
            free_rank: m.free_rank(),
            torsion: m.torsion().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub p: i64,
    pub rho: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_to_k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub label: usize,
    pub u: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub h1: GroupJson,
    pub abelianization: GroupJson,
    pub commutator_full_rank: bool,
    pub weyl_group_trivial: bool,
    pub conjugacy_class_count: String,
    pub conjugacy_classes: Vec<ClassJson>,
    pub fixed_points: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LEntryJson {
    pub ring: String,
    pub decoration: String,
    pub m: i64,
    pub group: GroupJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LTheorySection {
    pub m_start: i64,
    pub m_end: i64,
    pub entries: Vec<LEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteheadRow {
    pub m: i64,
    pub group: GroupJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSets {
    pub l: i64,
    pub dim: i64,
    pub sper_bgamma_odd: ModuleJson,
    pub sper_bgamma_even: ModuleJson,
    pub sper_m: GroupJson,
    pub sgeo_m: GroupJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingJson {
    pub subset: Vec<usize>,
    pub group: GroupJson,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoTargetJson {
    pub class_label: usize,
    pub u: Vec<String>,
    pub target: ModuleJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub l: i64,
    pub d: i64,
    pub rho_sign: i8,
    pub splitting: Vec<SplittingJson>,
    pub nontrivial_splitting_count: usize,
    pub rho_targets: Vec<RhoTargetJson>,
    pub sigma_geo_codomain: GroupJson,
    pub structure_set: GroupJson,
    pub expected_free_rank: usize,
    pub free_rank_audit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub all_agree: bool,
    pub outcomes: Vec<OutcomeJson>,
    pub skipped: Vec<String>,
}

/// Each section is present only when the subcommand computed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub validation: Validation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_invariants: Option<GroupInvariants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_vector: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_theory: Option<LTheorySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub whitehead: Option<Vec<WhiteheadRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_sets: Option<StructureSets>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<Detection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracles: Option<OracleSection>,
}

impl Report {
    pub fn new(doc: &InputDoc, l: Option<i64>) -> Self {
        Self {
            input: InputEcho {
                p: doc.p,
                rho: doc
                    .rho
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect())
                    .collect(),
                l,
            },
            validation: Validation {
                valid: false,
                error: None,
                n: None,
                k: None,
                p_to_k: None,
                char_poly: None,
            },
            group_invariants: None,
            r_vector: None,
            l_theory: None,
            whitehead: None,
            structure_sets: None,
            detection: None,
            oracles: None,
        }
    }

    pub fn set_valid(&mut self, a: &ActionData) {
        self.validation = Validation {
            valid: true,
            error: None,
            n: Some(a.n()),
            k: Some(a.k()),
            p_to_k: Some(a.p_to_k().to_string()),
            char_poly: char_poly(a.rho()).ok().map(|c| c.to_string()),
        };
    }

    pub fn set_invalid(&mut self, error: impl ToString) {
        self.validation.valid = false;
        self.validation.error = Some(error.to_string());
    }

    pub fn add_group_invariants(&mut self, a: &ActionData) -> Result<(), torbundle::Error> {
        let classes = conjugacy_classes(a);
        self.group_invariants = Some(GroupInvariants {
            h1: (&h1(a)?).into(),
            abelianization: (&abelianization(a)?).into(),
            commutator_full_rank: commutator_rank_check(a),
            weyl_group_trivial: true,
            conjugacy_class_count: classes.len().to_string(),
            conjugacy_classes: classes
                .iter()
                .map(|c| ClassJson {
                    label: c.label,
                    u: c.u.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            fixed_points: torus_fixed_points(a)
                .iter()
                .map(|pt| pt.coordinates.iter().map(ToString::to_string).collect())
                .collect(),
        });
        Ok(())
    }

    pub fn add_r_vector(&mut self, mp: &ManifoldParams) {
        self.r_vector = Some(mp.r().values.clone());
    }

    pub fn add_l_theory(
        &mut self,
        mp: &ManifoldParams,
        degrees: Range<i64>,
    ) -> Result<(), torbundle::Error> {
        let a = mp.action();
        let entries = l_table(a, mp.r(), degrees.clone())
            .iter()
            .map(|e: &LGroupTableEntry| LEntryJson {
                ring: e.ring.to_string(),
                decoration: e.decoration.to_string(),
                m: e.degree,
                group: (&e.value).into(),
            })
            .collect();
        self.l_theory = Some(LTheorySection {
            m_start: degrees.start,
            m_end: degrees.end,
            entries,
        });
        let mut wh = Vec::new();
        for m in [1, 0, -1] {
            wh.push(WhiteheadRow {
                m,
                group: (&whitehead(a, m)?).into(),
            });
        }
        self.whitehead = Some(wh);
        Ok(())
    }

    pub fn add_structure_sets(&mut self, mp: &ManifoldParams) {
        let a = mp.action();
        self.structure_sets = Some(StructureSets {
            l: mp.l(),
            dim: mp.dim(),
            sper_bgamma_odd: (&sper_of_bgamma(a, 1)).into(),
            sper_bgamma_even: (&sper_of_bgamma(a, 0)).into(),
            sper_m: (&sper_of_m(mp)).into(),
            sgeo_m: (&sgeo_of_m(mp)).into(),
        });
    }

    pub fn add_detection(&mut self, mp: &ManifoldParams) -> Result<(), torbundle::Error> {
        let r: DetectionReport = detection_report(mp)?;
        self.detection = Some(Detection {
            l: mp.l(),
            d: mp.d(),
            rho_sign: r.rho_sign,
            nontrivial_splitting_count: r.nontrivial_splitting_count(),
            splitting: r
                .splitting_entries
                .iter()
                .map(|row| SplittingJson {
                    subset: row.subset.clone(),
                    group: (&row.group).into(),
                    vacuous: row.vacuous,
                })
                .collect(),
            rho_targets: r
                .rho_entries
                .iter()
                .map(|row| RhoTargetJson {
                    class_label: row.class.label,
                    u: row.class.u.iter().map(ToString::to_string).collect(),
                    target: (&row.target).into(),
                })
                .collect(),
            sigma_geo_codomain: (&r.sigma_geo_codomain).into(),
            structure_set: (&r.structure_set).into(),
            expected_free_rank: r.expected_free_rank,
            free_rank_audit: r.free_rank_audit,
        });
        Ok(())
    }

    pub fn add_oracles(&mut self, a: &ActionData) -> Result<(), torbundle::Error> {
        let v = verify_all(a)?;
        self.oracles = Some(OracleSection {
            all_agree: v.all_agree(),
            outcomes: v
                .outcomes
                .into_iter()
                .map(|o| OutcomeJson {
                    name: o.name,
                    expected: o.expected,
                    actual: o.actual,
                    agree: o.agree,
                })
                .collect(),
            skipped: v.skipped,
        });
        Ok(())
    }
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

fn plural(count: usize, word: &str) -> String {
    if count == 1 {
        format!("{count} {word}")
    } else {
        format!("{count} {word}s")
    }
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let rows: Vec<String> = r
        .input
        .rho
        .iter()
        .map(|row| format!("[{}]", row.join(", ")))
        .collect();
    let _ = writeln!(out, "input: p = {}, rho = [{}]", r.input.p, rows.join(", "));

    let v = &r.validation;
    if !v.valid {
        let _ = writeln!(
            out,
            "validation: FAILED: {}",
            v.error.as_deref().unwrap_or("unknown error")
        );
        return out;
    }
    let _ = writeln!(
        out,
        "validation: ok (n = {}, k = {}, p^k = {}, char poly = {})",
        v.n.unwrap_or(0),
        v.k.unwrap_or(0),
        v.p_to_k.as_deref().unwrap_or("?"),
        v.char_poly.as_deref().unwrap_or("?"),
    );

    if let Some(g) = &r.group_invariants {
        let _ = writeln!(out, "\ngroup invariants");
        let _ = writeln!(out, "  H^1(Z/p; Z^n) = {}", g.h1.text);
        let _ = writeln!(out, "  Gamma^ab = {}", g.abelianization.text);
        let _ = writeln!(
            out,
            "  [Gamma, Gamma] = im(rho - I) of full rank: {}",
            g.commutator_full_rank
        );
        let _ = writeln!(
            out,
            "  Weyl groups of order-p subgroups trivial: {}",
            g.weyl_group_trivial
        );
        let _ = writeln!(
            out,
            "  conjugacy classes of order-p subgroups: {}",
            g.conjugacy_class_count
        );
        for c in &g.conjugacy_classes {
            let _ = writeln!(out, "    #{}: u = ({})", c.label, c.u.join(", "));
        }
        let _ = writeln!(out, "  fixed points on T^n: {}", g.fixed_points.len());
        for pt in &g.fixed_points {
            let _ = writeln!(out, "    ({})", pt.join(", "));
        }
    }

    if let Some(rv) = &r.r_vector {
        let vals: Vec<String> = rv.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "\nr = ({})", vals.join(", "));
    }

    if let Some(lt) = &r.l_theory {
        let _ = writeln!(out, "\nL-groups for m in {}..{}", lt.m_start, lt.m_end);
        for e in &lt.entries {
            let _ = writeln!(
                out,
                "  L^{}_{}({}) = {}",
                e.decoration, e.m, e.ring, e.group.text
            );
        }
    }

    if let Some(wh) = &r.whitehead {
        let _ = writeln!(out, "\nWhitehead groups");
        for row in wh {
            let _ = writeln!(out, "  Wh_{}(Gamma) = {}", row.m, row.group.text);
        }
    }

    if let Some(s) = &r.structure_sets {
        let _ = writeln!(out, "\nstructure sets (l = {}, dim M = {})", s.l, s.dim);
        let _ = writeln!(
            out,
            "  S_per_m(BGamma) = {} (m odd)",
            s.sper_bgamma_odd.text
        );
        let _ = writeln!(
            out,
            "  S_per_m(BGamma) = {} (m even)",
            s.sper_bgamma_even.text
        );
        let _ = writeln!(out, "  S_per(M) = {}", s.sper_m.text);
        let _ = writeln!(out, "  S_geo(M) = {}", s.sgeo_m.text);
    }

    if let Some(d) = &r.detection {
        let _ = writeln!(
            out,
            "\ndetection (l = {}, d = {}, sign (-1)^d = {})",
            d.l, d.d, d.rho_sign
        );
        let _ = writeln!(out, "  S_geo(M) = {}", d.structure_set.text);
        let _ = writeln!(
            out,
            "  splitting invariant lands in {}",
            d.sigma_geo_codomain.text
        );
        let _ = writeln!(
            out,
            "  {} over {} subtori T^J",
            plural(
                d.nontrivial_splitting_count,
                "nontrivial splitting obstruction"
            ),
            d.splitting.len()
        );
        for row in d.splitting.iter().filter(|row| !row.vacuous) {
            let j: Vec<String> = row.subset.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "    J = {{{}}}: L_{}(Z) = {}",
                j.join(","),
                row.subset.len(),
                row.group.text
            );
        }
        let _ = writeln!(
            out,
            "  {}",
            plural(d.rho_targets.len(), "rho-invariant target")
        );
        for t in &d.rho_targets {
            let _ = writeln!(
                out,
                "    class #{} (u = ({})): {}",
                t.class_label,
                t.u.join(", "),
                t.target.text
            );
        }
        let _ = writeln!(
            out,
            "  free rank audit: expected {}, {}",
            d.expected_free_rank,
            if d.free_rank_audit { "ok" } else { "MISMATCH" }
        );
    }

    if let Some(o) = &r.oracles {
        let _ = writeln!(
            out,
            "\noracles: {}",
            if o.all_agree {
                "all agree"
            } else {
                "DISAGREEMENT"
            }
        );
        for x in &o.outcomes {
            let _ = writeln!(
                out,
                "  [{}] {}: expected {}, got {}",
                if x.agree { "ok" } else { "FAIL" },
                x.name,
                x.expected,
                x.actual
            );
        }
        for s in &o.skipped {
            let _ = writeln!(out, "  [skipped] {s}");
        }
    }
    out
}
