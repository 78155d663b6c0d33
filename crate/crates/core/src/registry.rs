//! Every audited identity as a named case, with its requirements, its
//! expected verdict and the manifest that ties cases to numbered items.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cases::{integral as ig, pointwise as pw, IntegralFn, PointFn};
use crate::catalog::SurfaceKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseKind {
    Pointwise,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Nonflat,
    Flat,
    ClosedGeodesic,
    RotationalChart,
    ConformalChart,
    ClosedForm,
}

impl Requirement {
    pub fn holds(&self, kind: SurfaceKind) -> bool {
        match self {
            Requirement::Nonflat => !kind.is_flat(),
            Requirement::Flat => kind.is_flat(),
            Requirement::ClosedGeodesic => matches!(kind, SurfaceKind::SphereStereo { .. }),
            Requirement::RotationalChart => kind.is_rotational(),
            Requirement::ConformalChart => kind.conformal_scale().is_some(),
            Requirement::ClosedForm => kind.outward_abc(kind.sample_rect().center()).is_some(),
        }
    }

    /// Reason string used in `SKIPPED(...)`.
    pub fn reason(&self) -> &'static str {
        match self {
            Requirement::Nonflat => "nonflat-required",
            Requirement::Flat => "flat-required",
            Requirement::ClosedGeodesic => "closed-geodesic-required",
            Requirement::RotationalChart => "rotational-chart-required",
            Requirement::ConformalChart => "conformal-chart-required",
            Requirement::ClosedForm => "closed-form-required",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Confirmed,
    ReportOnly,
}

/// Declared sign-flip axis for `CONFIRMED-WITH-CONVENTION`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    NormalOrientation,
}

#[derive(Clone, Copy)]
pub enum Evaluator {
    Pointwise(PointFn),
    Integral(IntegralFn),
}

#[derive(Clone)]
pub struct IdentityCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
    pub requires: &'static [Requirement],
    pub expect: Expectation,
    pub convention: Option<Convention>,
    pub evaluator: Evaluator,
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdentityCase({})", self.id)
    }
}

impl IdentityCase {
    pub fn kind(&self) -> CaseKind {
        match self.evaluator {
            Evaluator::Pointwise(_) => CaseKind::Pointwise,
            Evaluator::Integral(_) => CaseKind::Integral,
        }
    }

    /// First requirement the surface fails, if any.
    pub fn unmet(&self, kind: SurfaceKind) -> Option<Requirement> {
        self.requires.iter().copied().find(|r| !r.holds(kind))
    }

    pub fn info(&self) -> CaseInfo {
        CaseInfo {
            id: self.id,
            statement: self.statement,
            anchor: self.anchor,
            kind: self.kind(),
            requires: self.requires.to_vec(),
            expected: self.expect,
            convention: self.convention,
        }
    }
}

/// Serializable description of a case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub anchor: &'static str,
    pub kind: CaseKind,
    pub requires: Vec<Requirement>,
    pub expected: Expectation,
    pub convention: Option<Convention>,
}

use Requirement::*;

const NONE: &[Requirement] = &[];
const NONFLAT: &[Requirement] = &[Nonflat];
const FLAT: &[Requirement] = &[Flat];
const ROT: &[Requirement] = &[RotationalChart];

fn p(id: &'static str, statement: &'static str, anchor: &'static str, f: PointFn) -> IdentityCase {
    IdentityCase {
        id,
        statement,
        anchor,
        requires: NONE,
        expect: Expectation::Confirmed,
        convention: None,
        evaluator: Evaluator::Pointwise(f),
    }
}

fn i(id: &'static str, statement: &'static str, anchor: &'static str, f: IntegralFn) -> IdentityCase {
    IdentityCase {
        evaluator: Evaluator::Integral(f),
        ..p(id, statement, anchor, pw::b_symmetry)
    }
}

impl IdentityCase {
    fn needs(mut self, r: &'static [Requirement]) -> Self {
        self.requires = r;
        self
    }

    fn report_only(mut self) -> Self {
        self.expect = Expectation::ReportOnly;
        self
    }

    fn convention(mut self, c: Convention) -> Self {
        self.convention = Some(c);
        self
    }
}

#[rustfmt::skip]
fn build() -> Vec<IdentityCase> {
    let mut v = vec![
        // frame and structure
        p("frame_orthonormality", "⟨ε̄ᵢ,ε̄ⱼ⟩ = δᵢⱼ, ε̄₃ = ε̄₁×ε̄₂, dx̄ = ω₁ε̄₁ + ω₂ε̄₂", "frame setup", pw::frame_orthonormality),
        p("frame_closed_form", "(a, b, c) equal the closed forms for the outward normal", "ω₃₁, ω₃₂ expansions", pw::frame_closed_form)
            .needs(&[ClosedForm])
            .convention(Convention::NormalOrientation),
        p("k_closed_form", "ac − b² equals the closed-form K", "Lemma 2 (K = ac − b²)", pw::k_closed_form),
        p("b_symmetry", "b read from ω₃₁ equals b read from ω₃₂", "structure block (3)", pw::b_symmetry),
        p("structure_eq_domega1", "dω₁ = ω₁₂∧ω₂", "structure block (3)", pw::structure_domega1),
        p("structure_eq_domega2", "dω₂ = −ω₁₂∧ω₁", "structure block (3)", pw::structure_domega2),
        p("structure_eq_symmetry", "ω₁∧ω₃₁ + ω₂∧ω₃₂ = 0", "structure block (3)", pw::structure_symmetry),
        p("structure_eq_domega12", "dω₁₂ = −ω₃₁∧ω₃₂", "structure block (3)", pw::structure_domega12),
        p("structure_eq_domega31", "dω₃₁ = ω₁₂∧ω₃₂", "structure block (3)", pw::structure_domega31),
        p("structure_eq_domega32", "dω₃₂ = −ω₁₂∧ω₃₁", "structure block (3)", pw::structure_domega32),
        p("K_three_routes", "ac − b² = ∇₂q₁ − ∇₁q₂ − q₁² − q₂² = −dω₁₂/(ω₁∧ω₂)", "(79)", pw::k_three_routes),
        p("mainardi_codazzi", "Mainardi-Codazzi pair in frame form", "(60)-(61)", pw::mainardi_codazzi_case),
        p("theta_mc", "Θ(a,b) = −q̃₁K, Θ(b,c) = −q̃₂K", "(36)-(37)", pw::theta_mc_case).needs(NONFLAT),
        p("lemma2_tilde_connection", "ω₁₂ = q̃₁ω₃₁ + q̃₂ω₃₂, q̃ from the forms equals the closed form", "Lemma 2 (26)-(28)", pw::lemma2).needs(NONFLAT),
        // scalar operators
        p("ddf_zero", "d(∇₁f ω₁ + ∇₂f ω₂) = 0", "(3)", pw::ddf_zero),
        p("commutation_identity", "∇₁∇₂f − ∇₂∇₁f + q₁∇₁f + q₂∇₂f = 0", "identity (5)", pw::commutation_identity),
        p("beltrami_routes", "form-ratio Δ₂f equals ∇₁∇₁f + ∇₂∇₂f + q₂∇₁f − q₁∇₂f", "Def 1 (1)-(2)", pw::beltrami_routes),
        p("beltrami_closed_form", "Δ₂f equals the closed-form Laplacian of a test field", "Def 1 (1)-(2)", pw::beltrami_closed_form),
        p("beltrami_theta_form", "Θ(−∇₂f, ∇₁f) = Δ₂f", "(35)", pw::beltrami_theta_form),
        p("theta_gradient_zero", "Θ(∇₁f, ∇₂f) = 0", "(34)", pw::theta_gradient_zero),
        p("theta_q_minus_k", "Θ(q₁, q₂) = −K", "Def 3 note", pw::theta_q_minus_k),
        p("theta_e1_e2_zero", "Θ(ε̄₁, ε̄₂) = 0", "Def 3 note", pw::theta_e1_e2_zero),
        p("theorem1_analytic_harmonic", "analytic pairs satisfy (6) and Δ₂Φ = Δ₂Φ* = 0", "Def 2 (6), Thm 1", pw::theorem1_analytic_harmonic).needs(&[ConformalChart]),
        p("theorem4_pi2_d_f_omega12", "d(fω₁₂)/(ω₁∧ω₂) = Π₂f", "Thm 4", pw::theorem4_pi2_closed),
        p("d12_equals_pi2", "D₁₂f = Π₂f", "(43)", pw::d12_equals_pi2),
        p("theorem5_d_omega_routes", "D_ωf = |∇f; a| + Θ(a)f = d(fω)/(ω₁∧ω₂), dω = Θ(a)ω₁∧ω₂", "Thm 5 (38)-(40)", pw::theorem5_d_omega_routes),
        p("theorem6_linearity", "D_ω(f + g) = D_ωf + D_ωg", "Thm 6 (41)", pw::theorem6_linearity),
        p("theorem6_product_rule", "D_ω(fg) = gD_ωf + fD_ωg − Θ(a)fg", "Thm 6 (42)", pw::theorem6_product_rule),
        p("remark_d12_product", "D₁₂(fg) = gD₁₂f + fD₁₂g + Kfg", "(44)", pw::remark_d12_product),
        p("remark_exact_product", "D₀(fg) = gD₀f + fD₀g for ω₀ = dh", "(45)", pw::remark_exact_product),
        p("inner_product_rule", "Π₂⟨ā,b̄⟩ = ⟨Π₂ā,b̄⟩ + ⟨ā,Π₂b̄⟩ + K⟨ā,b̄⟩", "(45.1)", pw::inner_product),
        p("theorem7_theta_iii_routes", "Θ^III(A₁,A₂) = d(A₁ω₃₁ + A₂ω₃₂)/(ω₃₁∧ω₃₂)", "Thm 7 (46)-(48)", pw::theorem7_theta_iii_routes).needs(NONFLAT),
        p("theorem8_d_iii_det", "D^III f by definition, determinant and expanded forms agree", "Thm 8 (49)-(50), (53)", pw::theorem8_d_iii).needs(NONFLAT),
        p("theorem8_tilde_grad", "df = ∇̃₁f ω₃₁ + ∇̃₂f ω₃₂", "Thm 8 (51)", pw::theorem8_tilde_grad).needs(NONFLAT),
        p("theorem8_eq52", "Θ^III(A₁,A₂) = (D_{ω₃₁}A₁ + D_{ω₃₂}A₂)/K", "Thm 8 (52)", pw::theorem8_eq52).needs(NONFLAT),
        p("theorem8_eq54_55", "D_ωf = K D^III_ω̃ f, Θ(a₁,a₂) = K Θ^III(ã₁,ã₂)", "Thm 8 (54)-(55)", pw::theorem8_eq54_55).needs(NONFLAT),
        // angle fields
        p("theorem11_field_kg", "k_g of the integral curves of an angle field θ equals Θ(cos θ, sin θ)", "Thm 11 (68)", pw::theorem11_field_kg),
        p("corollary5_theta_r", "Θ(∇₁φ + q₁, ∇₂φ + q₂) = −K", "Cor 5 (76)", pw::corollary5_theta_r),
        p("geodesic_note_theta", "Θ(−sin φ, cos φ) = ⟨∇φ + q, t̄*⟩", "note after Cor 5", pw::geodesic_note_theta),
        // λ, μ
        p("theorem_13_1_eq83", "|∇₁λ ∇₂λ; q₁ q₂| = 0", "Thm 13.1 (83)", pw::eq83).needs(ROT),
        p("theorem_13_1_eq85", "D₁₂μ = 0 (stated)", "Thm 13.1 (85)", pw::eq85).needs(ROT).report_only(),
        p("theorem_13_1_eq86", "D₁₂μ^ν = (ν − 1)Kμ^ν (stated)", "Thm 13.1 (86)", pw::eq86).needs(ROT).report_only(),
        p("theorem_13_1_eq87", "D₁₂f(μ) = K(f(0) − f(μ) + μf′(μ)) (stated)", "Thm 13.1 (87)", pw::eq87).needs(ROT).report_only(),
        p("theorem_13_1_eq89", "Π₂μ = 0 (stated)", "Thm 13.1 (89)", pw::eq89).needs(ROT).report_only(),
        p("theorem_13_1_eq90", "Π₂λ^ν = −Kλ^ν", "Thm 13.1 (90)", pw::eq90).needs(ROT),
        p("theorem_13_1_eq91", "Π₂ sin λ = −K sin λ", "Thm 13.1 (91)", pw::eq91).needs(ROT),
        p("theorem_13_1_eq93", "∇₁μ∇₂λ − ∇₁λ∇₂μ = −K", "Thm 13.1 (92)-(93)", pw::eq93).needs(ROT),
        // vector operators
        p("theorem16_ambient", "Theorem 16 expansion of d(X̄ω) equals ambient differentiation", "Thm 16 (115)", pw::theorem16_ambient),
        p("theorem15", "d(h̄ω)/(ω₁∧ω₂) expansion for h̄ = Aε̄₁ + Bε̄₂ + Cε̄₃", "Thm 15 (103)", pw::theorem15),
        p("lemma3", "d(t̄ω)/(ω₁∧ω₂) expansion for tangent t̄", "Lemma 3 (97)", pw::lemma3),
        p("proposition1", "d(h̄ω₁₂) in terms of D₁₂ and q̃", "Prop 1 (105)", pw::proposition1_case).needs(NONFLAT),
        p("corollary8_pi2_vector", "Π₂(t̄) = Π₂A ε̄₁ + Π₂B ε̄₂ − K|A B; q̃₁ q̃₂| ε̄₃", "Cor 8 (107)-(108)", pw::corollary8_pi2_vector).needs(NONFLAT),
        p("proposition2_brackets", "Ω_ii(X) = D_ωX and Ω_ij(X) = XΓ_ij", "Prop 2 (109)-(112)", pw::proposition2_brackets),
        p("proposition4_antisymmetry", "Ω_ij(X) = −Ω_ji(X) for i ≠ j", "Prop 4 (113)-(114)", pw::proposition4_antisymmetry),
        p("proposition3_product", "d⟨h̄ω, μ̄⟩ = ⟨h̄, D_ωμ̄⟩ + ⟨D_ωh̄, μ̄⟩ − Θ(a)⟨h̄, μ̄⟩", "Prop 3", pw::proposition3_product),
        p("corollary7_eq100", "⟨d(t̄ω), d(t̄*ω)⟩ = ⟨d(t̄ω), ε̄₃⟩⟨d(t̄*ω), ε̄₃⟩", "Cor 7 (100)-(102)", pw::corollary7_eq100),
        p("corollary7_cross_identity", "d(t̄ω)×ε̄₃ = d(t̄*ω)×ε̄₃ (stated)", "passage after Cor 7", pw::corollary7_cross_identity).report_only(),
        p("corollary7_exists_j", "d[(t̄ − t̄*)ω] = Jε̄₃ (stated)", "passage after Cor 7", pw::corollary7_exists_j).report_only(),
        p("corollary9_flat", "on K = 0, d(h̄ω₁₂) has the pure determinant components", "Cor 9 (116)", pw::corollary9_flat).needs(FLAT),
        p("proposition5", "d(t̄ω₁₂) for t̄ = cos φ ε̄₁ + sin φ ε̄₂", "Prop 5 (117)-(118)", pw::proposition5_case),
        // integrals
        i("liouville_kg_routes", "k_g by Liouville and by Θ(cos φ, sin φ) equals the ambient value", "(66), Thm 11 (68), Thm 12 (71)", ig::liouville_kg_routes),
        i("gauss_bonnet", "∮k_g ds + ∫∫K = 2πχ", "Note i (21)", ig::gauss_bonnet),
        i("note_i_geodesic_area", "A_D = 2π/K for a geodesic boundary on constant K", "Note i (20)", ig::note_i_geodesic_area).needs(&[ClosedGeodesic]),
        i("theorem2_eq7", "∮f k_g ds + ∫∫Kf = ∫∫(q₂∇₁f − q₁∇₂f) + ∮f dφ", "Thm 2 (7)", ig::theorem2_eq7),
        i("theorem2_eq8_harmonic", "harmonic form of Theorem 2", "Thm 2 (8)", ig::theorem2_eq8_harmonic),
        i("theorem3_eq16", "∮f k_g ds = ∫∫Π₂f + ∮f dφ", "Thm 3 (16)", ig::theorem3_eq16),
        i("note_ii_eq22_25", "∮fδψ + ∫∫(Δ₂f − ∇₁²f − ∇₂²f − Kf) = 0, ∮δψ = ∫∫K", "Note ii (22)-(25)", ig::note_ii_eq22_25),
        i("corollary1_flat_bound", "∮k_g ds = 2π around contractible curves when K = 0", "Cor 1 (17)", ig::corollary1_flat_bound).needs(FLAT),
        i("corollary2_area", "A_D = ∮dφ/K + ∫∫(q₂∇₁(1/K) − q₁∇₂(1/K))", "Cor 2 (19)", ig::corollary2_area).needs(&[Nonflat, ClosedGeodesic]),
        i("theorem9_eq56", "∮ω/Θ − ∫∫|∇(1/Θ); a| = A_D for ω = ω₁₂", "Thm 9 (56)", ig::theorem9_eq56),
        i("corollary3_eq57", "Theorem 9 with ω = ω₁ + ω₂", "Cor 3 (57)", ig::corollary3_eq57),
        i("theorem10_eq58_59", "∮fω₃₁ and ∮fω₃₂ area forms", "Thm 10 (58)-(59)", ig::theorem10_eq58_59).needs(NONFLAT),
        i("corollary4_eq64_65", "∮fω₃₁ = 0 when df = q̃₁fω₃₂, and the dual", "Cor 4 (64)-(65)", ig::corollary4_eq64_65).needs(NONFLAT),
        i("green_theorem13", "∮f dg = ∫∫(∇₁f∇₂g − ∇₂f∇₁g)", "Thm 13 (82)", ig::green_theorem13),
        i("stokes_consistency", "∮fω = ∫∫d(fω) for random f and ω", "Thm 5 (38)", ig::stokes_consistency),
        i("turning_number", "∮dφ/2π is an integer on closed curves", "Thm 2 proof", ig::turning_number),
        i("theorem14_eq94", "∮f dφ = −∫∫(r⟨grad f, ξ̄*⟩ + Π₂f + Kf)", "Thm 14 (94)", ig::theorem14_eq94),
        i("theorem14_eq94_unit_r", "(94) read with r = 1", "Thm 14 (94)", ig::theorem14_eq94_unit_r).report_only(),
        i("theorem14_eq95", "∮f k_g ds = −∫∫(r⟨grad f, ξ̄*⟩ + Kf) with φ following the boundary", "Thm 14 (95)", ig::theorem14_eq95),
        i("theorem14_eq95_unit_r", "(95) read with r = 1", "Thm 14 (95)", ig::theorem14_eq95_unit_r).report_only(),
        i("corollary6", "A_D = −∫∫r⟨grad(1/K), ξ̄*⟩ for a closed geodesic boundary", "Cor 6 (96)", ig::corollary6).needs(NONFLAT),
        i("theorem_13_1_eq84", "∮λdμ = −∮μdλ = ∫∫K = ∮δψ", "Thm 13.1 (84)", ig::eq84).needs(ROT),
        i("theorem_13_1_eq88", "∮μω₁₂ = 0 (stated)", "Thm 13.1 (88)", ig::eq88).needs(ROT).report_only(),
    ];
    v.sort_by_key(|c| c.id);
    v
}

/// All cases, sorted by id.
pub fn registry() -> &'static [IdentityCase] {
    static CASES: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    CASES.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static IdentityCase> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// Cases matching any include glob and no exclude glob. A glob that
/// matches nothing is an error.
pub fn select(include: &[String], exclude: &[String]) -> Result<Vec<&'static IdentityCase>> {
    let compile =
        |g: &String| glob::Pattern::new(g).map_err(|e| Error::ConfigParse(format!("bad case glob `{g}`: {e}")));
    let inc = include.iter().map(compile).collect::<Result<Vec<_>>>()?;
    let exc = exclude.iter().map(compile).collect::<Result<Vec<_>>>()?;
    for (g, pat) in include.iter().zip(&inc) {
        if !registry().iter().any(|c| pat.matches(c.id)) {
            return Err(Error::UnknownCase(g.clone()));
        }
    }
    Ok(registry()
        .iter()
        .filter(|c| inc.iter().any(|p| p.matches(c.id)))
        .filter(|c| !exc.iter().any(|p| p.matches(c.id)))
        .collect())
}

/// Numbered items left out of the registry, with the reason.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[
    (
        "Corollary 5 (77)",
        "needs an angle field with r = 1 in (72), which the catalog charts do not admit in general; the r-free content (76) is registered",
    ),
    (
        "Theorem 12 (72)-(75)",
        "the construction of the companion curve Γ₁ with r = 1 is an existence argument with nothing to evaluate beyond (71) and (76)",
    ),
];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ManifestEntry {
    pub item: String,
    #[serde(default)]
    pub cases: Vec<String>,
    #[serde(default)]
    pub out_of_scope: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

pub const MANIFEST_JSON: &str = include_str!("../registry_manifest.json");

pub fn manifest() -> Result<Manifest> {
    serde_json::from_str(MANIFEST_JSON).map_err(|e| Error::ConfigParse(format!("manifest: {e}")))
}

/// Items the manifest must account for.
pub fn required_items() -> Vec<String> {
    let mut v: Vec<String> = Vec::new();
    v.extend((1..=3).map(|n| format!("Definition {n}")));
    v.extend((1..=16).map(|n| format!("Theorem {n}")));
    v.push("Theorem 13.1".into());
    v.extend((1..=9).map(|n| format!("Corollary {n}")));
    v.extend((1..=5).map(|n| format!("Proposition {n}")));
    v.extend((2..=3).map(|n| format!("Lemma {n}")));
    for e in ["(60)", "(61)", "(66)", "(79)", "structure block (3)", "identity (5)"] {
        v.push(e.into());
    }
    v
}

/// Every disagreement between the manifest, the registry and the
/// out-of-scope table; empty when they agree.
pub fn manifest_divergence() -> Result<Vec<String>> {
    let m = manifest()?;
    let mut problems = Vec::new();
    let ids: BTreeSet<&str> = registry().iter().map(|c| c.id).collect();
    let mut covered: BTreeSet<&str> = BTreeSet::new();
    let mut items: BTreeMap<&str, &ManifestEntry> = BTreeMap::new();
    for e in &m.entries {
        if items.insert(e.item.as_str(), e).is_some() {
            problems.push(format!("item `{}` listed twice", e.item));
        }
        match (&e.out_of_scope, e.cases.is_empty()) {
            (Some(_), false) => problems.push(format!("`{}` has cases and an out-of-scope reason", e.item)),
            (None, true) => problems.push(format!("`{}` maps to nothing", e.item)),
            _ => {}
        }
        for c in &e.cases {
            if !ids.contains(c.as_str()) {
                problems.push(format!("`{}` names unknown case `{c}`", e.item));
            }
            covered.insert(c.as_str());
        }
        if e.out_of_scope.is_some() && !OUT_OF_SCOPE.iter().any(|(i, _)| *i == e.item) {
            problems.push(format!("`{}` is out of scope in the manifest only", e.item));
        }
    }
    for (item, _) in OUT_OF_SCOPE {
        match items.get(item) {
            Some(e) if e.out_of_scope.is_some() => {}
            _ => problems.push(format!("out-of-scope `{item}` missing from the manifest")),
        }
    }
    for id in &ids {
        if !covered.contains(id) {
            problems.push(format!("case `{id}` is not in the manifest"));
        }
    }
    for item in required_items() {
        if !items.contains_key(item.as_str()) {
            problems.push(format!("required item `{item}` is not in the manifest"));
        }
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn manifest_matches_registry() {
        let p = manifest_divergence().unwrap();
        assert!(p.is_empty(), "{p:#?}");
    }

    #[test]
    fn globs() {
        assert_eq!(select(&["gauss_bonnet*".into()], &[]).unwrap().len(), 1);
        assert!(matches!(select(&["no_such_*".into()], &[]), Err(Error::UnknownCase(_))));
        let all = select(&["*".into()], &["theorem_13_1*".into()]).unwrap();
        assert!(all.iter().all(|c| !c.id.starts_with("theorem_13_1")));
    }
}
