//! Explicit vectorial dual-bent families, each emitted as a lookup table
//! together with its closed-form dual, the permutation sigma it predicts and,
//! where known, the predicted sign of every component.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::field::{FieldDesc, FieldElem, FieldError, Subfield};
use crate::space::{Point, Space, SpaceError};
use crate::spectral::VectorialFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{s} does not divide {m}")]
    NotADivisor { s: u32, m: u32 },
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("gcd({e}, {modulus}) != 1")]
    BadExponent { e: u64, modulus: u64 },
    #[error("the q-polynomial does not permute the field")]
    NotPermutation,
    #[error("coefficient a_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("labeling is not balanced: value {value} occurs {count} times, expected {expected}")]
    UnbalancedLabeling { value: u32, count: u64, expected: u64 },
    #[error("labeling has {got} entries, expected {expected}")]
    LabelingLength { expected: u64, got: usize },
    #[error("codomain degree {s} exceeds {m}")]
    CodomainTooLarge { s: u32, m: u32 },
    #[error("value {0} is not an element of the relevant field")]
    NotAnElement(u32),
}

type Result<T> = std::result::Result<T, ConstructionError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MmPower,
    MmQpoly,
    QuadTrace,
    DiagQuad,
    SpreadBent,
    Theorem1,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::MmPower,
        Family::MmQpoly,
        Family::QuadTrace,
        Family::DiagQuad,
        Family::SpreadBent,
        Family::Theorem1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::MmPower => "mm-power",
            Family::MmQpoly => "mm-qpoly",
            Family::QuadTrace => "quad-trace",
            Family::DiagQuad => "diag-quad",
            Family::SpreadBent => "spread-bent",
            Family::Theorem1 => "theorem1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constructed function with everything its construction predicts.
#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub family: Family,
    pub label: String,
    pub f: VectorialFunction,
    pub fstar: VectorialFunction,
    pub sigma_claim: BTreeMap<FieldElem, FieldElem>,
    /// Predicted sign of each component: `Some` when the component is
    /// predicted weakly regular, `None` when its sign varies.
    pub epsilon_claim: BTreeMap<FieldElem, Option<i8>>,
}

/// A q-polynomial L(x) = sum a_i x^{q^i}, q = p^s, on GF(p^m), checked to be
/// a permutation.
#[derive(Debug, Clone)]
pub struct QPolynomial {
    field: FieldDesc,
    s: u32,
    coeffs: Vec<FieldElem>,
    image: Vec<u32>,
    inverse: Vec<u32>,
}

impl QPolynomial {
    pub fn new(field: FieldDesc, s: u32, coeffs: Vec<FieldElem>) -> Result<Self> {
        if s == 0 || !field.m().is_multiple_of(s) {
            return Err(ConstructionError::NotADivisor { s, m: field.m() });
        }
        for &a in &coeffs {
            field.check(a)?;
        }
        let q = (field.p() as u64).pow(s);
        let image: Vec<u32> = field
            .elements()
            .map(|x| {
                let mut acc = FieldElem::ZERO;
                let mut frob = x;
                for &a in &coeffs {
                    acc = field.add(acc, field.mul(a, frob));
                    frob = field.pow(frob, q);
                }
                acc.0
            })
            .collect();
        let mut inverse = vec![u32::MAX; image.len()];
        for (x, &y) in image.iter().enumerate() {
            if inverse[y as usize] != u32::MAX {
                return Err(ConstructionError::NotPermutation);
            }
            inverse[y as usize] = x as u32;
        }
        Ok(QPolynomial { field, s, coeffs, image, inverse })
    }

    /// L(x) = x.
    pub fn identity(field: FieldDesc, s: u32) -> Result<Self> {
        QPolynomial::new(field, s, vec![FieldElem::ONE])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.image[x.0 as usize])
    }

    pub fn inverse(&self, y: FieldElem) -> FieldElem {
        FieldElem(self.inverse[y.0 as usize])
    }
}

fn field_and_sub(p: u32, m: u32, s: u32) -> Result<(FieldDesc, Subfield)> {
    if s == 0 || !m.is_multiple_of(s) {
        return Err(ConstructionError::NotADivisor { s, m });
    }
    let big = FieldDesc::new(p, m)?;
    let sub = big.subfield(s)?;
    Ok((big, sub))
}

fn nonzero(f: &FieldDesc, a: FieldElem, name: &'static str) -> Result<FieldElem> {
    f.check(a)?;
    if a.is_zero() {
        Err(ConstructionError::ZeroParameter(name))
    } else {
        Ok(a)
    }
}

fn sigma_power(k: &FieldDesc, e: i64) -> BTreeMap<FieldElem, FieldElem> {
    k.nonzero_elements().map(|c| (c, k.pow_signed(c, e).expect("c is nonzero"))).collect()
}

/// Sign relative to the matching unit of a component whose Walsh values are
/// (-1)^a_exp * eps^dim * eta * p^{dim/2} zeta^(...), with eps = 1 for
/// p = 1 mod 4 and eps = sqrt(-1) for p = 3 mod 4. The factor sqrt(-1) of an
/// odd power is absorbed by the Gauss sum in the unit.
pub fn sign_from_formula(p: u32, a_exp: u64, dim: u64, eta: i8) -> i8 {
    let mut sign = if a_exp.is_multiple_of(2) { 1 } else { -1 };
    if p % 4 == 3 && (dim / 2) % 2 == 1 {
        sign = -sign;
    }
    sign * eta
}

fn quad_eps(big: &FieldDesc, sub: &Subfield, a: FieldElem) -> BTreeMap<FieldElem, Option<i8>> {
    let n = big.m() as u64;
    sub.small()
        .nonzero_elements()
        .map(|c| {
            let eta = big.quadratic_character(big.mul(a, sub.embed(c))).expect("nonzero");
            (c, Some(sign_from_formula(big.p(), n - 1, n, eta)))
        })
        .collect()
}

fn four_inv(f: &FieldDesc) -> FieldElem {
    f.inv(f.from_int(4)).expect("p is odd")
}

/// F(x, y) = Tr_s^m(a x y^e) on GF(p^m)^2 with dual Tr_s^m(-a^{-u} x^u y),
/// e u = 1 mod p^m - 1, and sigma(c) = c^{-u}.
pub fn mm_power(p: u32, m: u32, s: u32, a: FieldElem, e: u64) -> Result<Instance> {
    let (big, sub) = field_and_sub(p, m, s)?;
    let a = nonzero(&big, a, "a")?;
    let order = big.order() - 1;
    let u = arith::mod_inverse(e % order, order).ok_or(ConstructionError::BadExponent { e, modulus: order })?;
    let space = Space::new(vec![big.clone(), big.clone()])?;
    let k = sub.small().clone();
    let coef = big.neg(big.pow(big.inv(a)?, u));
    let f = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        sub.trace(big.mul(a, big.mul(x, big.pow(y, e))))
    });
    let fstar = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        sub.trace(big.mul(coef, big.mul(big.pow(x, u), y)))
    });
    let small_order = k.order() - 1;
    let sigma_claim = sigma_power(&k, -((u % small_order) as i64));
    let epsilon_claim = k.nonzero_elements().map(|c| (c, Some(1))).collect();
    Ok(Instance {
        family: Family::MmPower,
        label: format!("mm-power p={p} m={m} s={s} a={a} e={e}"),
        f,
        fstar,
        sigma_claim,
        epsilon_claim,
    })
}

/// F(x, y) = Tr_s^m(a x L(y)) with dual Tr_s^m(-L^{-1}(a^{-1} x) y) and
/// sigma(c) = c^{-1}.
pub fn mm_qpoly(p: u32, m: u32, s: u32, a: FieldElem, coeffs: Vec<FieldElem>) -> Result<Instance> {
    let (big, sub) = field_and_sub(p, m, s)?;
    let a = nonzero(&big, a, "a")?;
    let l = QPolynomial::new(big.clone(), s, coeffs)?;
    let space = Space::new(vec![big.clone(), big.clone()])?;
    let k = sub.small().clone();
    let a_inv = big.inv(a)?;
    let f = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        sub.trace(big.mul(a, big.mul(x, l.eval(y))))
    });
    let fstar = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        sub.trace(big.neg(big.mul(l.inverse(big.mul(a_inv, x)), y)))
    });
    let coeff_text: Vec<String> = l.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(Instance {
        family: Family::MmQpoly,
        label: format!("mm-qpoly p={p} m={m} s={s} a={a} L=[{}]", coeff_text.join(",")),
        f,
        fstar,
        sigma_claim: sigma_power(&k, -1),
        epsilon_claim: k.nonzero_elements().map(|c| (c, Some(1))).collect(),
    })
}

/// F(x) = Tr_s^n(a x^2) on GF(p^n) with dual Tr_s^n(-x^2 / (4a)),
/// sigma(c) = c^{-1} and component signs (-1)^{n-1} eps^n eta_n(a c).
pub fn quad_trace(p: u32, n: u32, s: u32, a: FieldElem) -> Result<Instance> {
    let (big, sub) = field_and_sub(p, n, s)?;
    let a = nonzero(&big, a, "a")?;
    let space = Space::field(big.clone());
    let k = sub.small().clone();
    let dual_coef = big.neg(big.inv(big.mul(big.from_int(4), a))?);
    let f = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let x = FieldElem(z.0 as u32);
        sub.trace(big.mul(a, big.mul(x, x)))
    });
    let fstar = VectorialFunction::from_fn(space, k.clone(), |z| {
        let x = FieldElem(z.0 as u32);
        sub.trace(big.mul(dual_coef, big.mul(x, x)))
    });
    Ok(Instance {
        family: Family::QuadTrace,
        label: format!("quad-trace p={p} n={n} s={s} a={a}"),
        f,
        fstar,
        sigma_claim: sigma_power(&k, -1),
        epsilon_claim: quad_eps(&big, &sub, a),
    })
}

/// G(x_1, ..., x_m) = sum a_i x_i^2 on GF(p^s)^m with dual
/// -sum x_i^2 / (4 a_i), sigma(c) = c^{-1} and component signs
/// (-1)^{(s-1)m} eps^{sm} eta_s(c^m a_1 ... a_m).
pub fn diag_quad(p: u32, s: u32, coeffs: Vec<FieldElem>) -> Result<Instance> {
    let k = FieldDesc::new(p, s)?;
    if coeffs.is_empty() {
        return Err(ConstructionError::ZeroParameter("m"));
    }
    for (i, &a) in coeffs.iter().enumerate() {
        k.check(a)?;
        if a.is_zero() {
            return Err(ConstructionError::ZeroCoefficient(i + 1));
        }
    }
    let m = coeffs.len();
    let space = Space::new(vec![k.clone(); m])?;
    let duals: Vec<FieldElem> = coeffs
        .iter()
        .map(|&a| k.neg(k.inv(k.mul(k.from_int(4), a)).expect("nonzero")))
        .collect();
    let quad = |weights: &[FieldElem], z: Point| {
        let mut acc = FieldElem::ZERO;
        for (i, &w) in weights.iter().enumerate() {
            let x = space.part(z, i);
            acc = k.add(acc, k.mul(w, k.mul(x, x)));
        }
        acc
    };
    let f = VectorialFunction::from_fn(space.clone(), k.clone(), |z| quad(&coeffs, z));
    let fstar = VectorialFunction::from_fn(space.clone(), k.clone(), |z| quad(&duals, z));
    let prod = coeffs.iter().fold(FieldElem::ONE, |acc, &a| k.mul(acc, a));
    let (sm, a_exp) = (s as u64 * m as u64, (s as u64 - 1) * m as u64);
    let epsilon_claim = k
        .nonzero_elements()
        .map(|c| {
            let eta = k.quadratic_character(k.mul(k.pow(c, m as u64), prod)).expect("nonzero");
            (c, Some(sign_from_formula(p, a_exp, sm, eta)))
        })
        .collect();
    let coeff_text: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    Ok(Instance {
        family: Family::DiagQuad,
        label: format!("diag-quad p={p} s={s} a=[{}]", coeff_text.join(",")),
        f,
        fstar,
        sigma_claim: sigma_power(&k, -1),
        epsilon_claim,
    })
}

/// The default balanced labeling i -> (i - 1) mod p^s, as codomain ranks.
pub fn default_labeling(p: u32, m: u32, s: u32) -> Vec<u32> {
    let big = (p as u64).pow(m);
    let small = (p as u64).pow(s);
    (0..big).map(|i| (i % small) as u32).collect()
}

/// Partial spread function on the regular spread of GF(p^m)^2:
/// U_0 = {(0, y)} and U_{i} = {(x, a x)} where a has rank i - 1.
///
/// `labeling[i - 1]` is gamma_i for 1 <= i <= p^m and must be balanced;
/// `gamma0` labels U_0 (and therefore the zero vector). The dual labels the
/// orthogonal complements, sigma is the identity and every sign is +1.
pub fn spread_bent(p: u32, m: u32, s: u32, labeling: Option<Vec<u32>>, gamma0: FieldElem) -> Result<Instance> {
    if s == 0 || s > m {
        return Err(ConstructionError::CodomainTooLarge { s, m });
    }
    let big = FieldDesc::new(p, m)?;
    let k = FieldDesc::new(p, s)?;
    k.check(gamma0)?;
    let labels = labeling.unwrap_or_else(|| default_labeling(p, m, s));
    if labels.len() as u64 != big.order() {
        return Err(ConstructionError::LabelingLength { expected: big.order(), got: labels.len() });
    }
    let expected = big.order() / k.order();
    let mut counts = vec![0u64; k.order() as usize];
    for &v in &labels {
        if v as u64 >= k.order() {
            return Err(ConstructionError::NotAnElement(v));
        }
        counts[v as usize] += 1;
    }
    if let Some((value, &count)) = counts.iter().enumerate().find(|(_, &c)| c != expected) {
        return Err(ConstructionError::UnbalancedLabeling { value: value as u32, count, expected });
    }
    let space = Space::new(vec![big.clone(), big.clone()])?;
    let f = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        if x.is_zero() {
            gamma0
        } else {
            FieldElem(labels[big.div(y, x).expect("x nonzero").0 as usize])
        }
    });
    // (x, a x)^perp = {(-a w, w)} and (0, y)^perp = {(w, 0)}.
    let fstar = VectorialFunction::from_fn(space.clone(), k.clone(), |z| {
        let (x, y) = (space.part(z, 0), space.part(z, 1));
        if y.is_zero() {
            gamma0
        } else {
            let a = big.neg(big.div(x, y).expect("y nonzero"));
            FieldElem(labels[a.0 as usize])
        }
    });
    Ok(Instance {
        family: Family::SpreadBent,
        label: format!("spread-bent p={p} m={m} s={s} gamma0={gamma0}"),
        f,
        fstar,
        sigma_claim: k.nonzero_elements().map(|c| (c, c)).collect(),
        epsilon_claim: k.nonzero_elements().map(|c| (c, Some(1))).collect(),
    })
}

/// Parameters of the three-branch construction on GF(p^n) x GF(p^m)^2.
#[derive(Debug, Clone)]
pub struct Theorem1Params {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub s: u32,
    /// alpha_1, alpha_2, alpha_3 in GF(p^n)^*, selected by whether
    /// Tr_s^m(gamma y_2^2) is zero, a square or a non-square.
    pub alpha: [FieldElem; 3],
    /// beta in GF(p^m)^*.
    pub beta: FieldElem,
    /// Coefficients of the q-polynomial L on GF(p^m).
    pub l_coeffs: Vec<FieldElem>,
    /// gamma in GF(p^m)^*.
    pub gamma: FieldElem,
}

fn branch(k: &FieldDesc, theta: FieldElem) -> usize {
    if theta.is_zero() {
        0
    } else if k.is_square(theta) {
        1
    } else {
        2
    }
}

/// H(x, y_1, y_2) = F_{Tr_s^m(gamma y_2^2)}(x) + Tr_s^m(beta y_1 L(y_2)) where
/// F_i(x) = Tr_s^n(alpha_j x^2) with j chosen by i being zero, a square or a
/// non-square. The dual is R_{Tr_s^m(gamma z^2)}(x) - Tr_s^m(z y_2) with
/// z = L^{-1}(beta^{-1} y_1) and R_i built from -(4 alpha_j)^{-1}; sigma(c) = c^{-1}.
pub fn theorem1_construct(params: &Theorem1Params) -> Result<Instance> {
    let Theorem1Params { p, n, m, s, alpha, beta, ref l_coeffs, gamma } = *params;
    let (fx, subx) = field_and_sub(p, n, s)?;
    let (fy, suby) = field_and_sub(p, m, s)?;
    for (a, name) in alpha.iter().zip(["alpha1", "alpha2", "alpha3"]) {
        nonzero(&fx, *a, name)?;
    }
    let beta = nonzero(&fy, beta, "beta")?;
    let gamma = nonzero(&fy, gamma, "gamma")?;
    let l = QPolynomial::new(fy.clone(), s, l_coeffs.clone())?;
    let k = subx.small().clone();
    let space = Space::new(vec![fx.clone(), fy.clone(), fy.clone()])?;

    let quad_tables = |coefs: [FieldElem; 3]| -> Vec<Vec<u32>> {
        coefs
            .iter()
            .map(|&c| fx.elements().map(|x| subx.trace(fx.mul(c, fx.mul(x, x))).0).collect())
            .collect()
    };
    let four = four_inv(&fx);
    let r_coefs = alpha.map(|a| fx.neg(fx.mul(four, fx.inv(a).expect("nonzero"))));
    let f_tab = quad_tables(alpha);
    let r_tab = quad_tables(r_coefs);

    let qy = fy.order() as usize;
    let theta_branch = |y: FieldElem| branch(&k, suby.trace(fy.mul(gamma, fy.mul(y, y))));
    let h_branch: Vec<usize> = fy.elements().map(theta_branch).collect();
    let beta_inv = fy.inv(beta)?;
    let z_of: Vec<FieldElem> = fy.elements().map(|y1| l.inverse(fy.mul(beta_inv, y1))).collect();
    let d_branch: Vec<usize> = z_of.iter().map(|&z| theta_branch(z)).collect();
    let mut g_tab = vec![0u32; qy * qy];
    let mut gs_tab = vec![0u32; qy * qy];
    for y1 in fy.elements() {
        for y2 in fy.elements() {
            let idx = y1.0 as usize * qy + y2.0 as usize;
            g_tab[idx] = suby.trace(fy.mul(beta, fy.mul(y1, l.eval(y2)))).0;
            gs_tab[idx] = suby.trace(fy.neg(fy.mul(z_of[y1.0 as usize], y2))).0;
        }
    }
    let qs = k.order() as usize;
    let mut add = vec![0u32; qs * qs];
    for a in k.elements() {
        for b in k.elements() {
            add[a.0 as usize * qs + b.0 as usize] = k.add(a, b).0;
        }
    }
    let qx = fx.order() as usize;
    let total = space.order() as usize;
    let mut h = Vec::with_capacity(total);
    let mut hs = Vec::with_capacity(total);
    for idx in 0..total {
        let x = idx % qx;
        let y1 = (idx / qx) % qy;
        let y2 = idx / (qx * qy);
        let pair = y1 * qy + y2;
        let fv = f_tab[h_branch[y2]][x] as usize;
        h.push(add[fv * qs + g_tab[pair] as usize]);
        let rv = r_tab[d_branch[y1]][x] as usize;
        hs.push(add[rv * qs + gs_tab[pair] as usize]);
    }
    let f = VectorialFunction::new(space.clone(), k.clone(), h).expect("values lie in the codomain");
    let fstar = VectorialFunction::new(space, k.clone(), hs).expect("values lie in the codomain");

    // The sign of component c on the branch j is (-1)^{n-1} eps^n eta_n(c alpha_j);
    // a component is weakly regular when all branches that occur agree.
    let present: Vec<usize> = {
        let mut seen = [false; 3];
        for &b in &h_branch {
            seen[b] = true;
        }
        (0..3).filter(|&j| seen[j]).collect()
    };
    let epsilon_claim = k
        .nonzero_elements()
        .map(|c| {
            let signs: Vec<i8> = present
                .iter()
                .map(|&j| {
                    let eta = fx.quadratic_character(fx.mul(subx.embed(c), alpha[j])).expect("nonzero");
                    sign_from_formula(p, n as u64 - 1, n as u64, eta)
                })
                .collect();
            let first = signs[0];
            (c, signs.iter().all(|&x| x == first).then_some(first))
        })
        .collect();
    Ok(Instance {
        family: Family::Theorem1,
        label: format!(
            "theorem1 p={p} n={n} m={m} s={s} alpha=({},{},{}) beta={beta} gamma={gamma}",
            alpha[0], alpha[1], alpha[2]
        ),
        f,
        fstar,
        sigma_claim: sigma_power(&k, -1),
        epsilon_claim,
    })
}

/// The parameters of the worked three-branch example over GF(3^6) x GF(3^4)^2
/// into GF(3^2): alpha = (1, w, w^2) with w primitive in GF(3^6), beta = 1,
/// L = id, gamma = 1.
pub fn example_theorem1_params() -> Result<Theorem1Params> {
    let fx = FieldDesc::new(3, 6)?;
    let w = fx.primitive_element();
    Ok(Theorem1Params {
        p: 3,
        n: 6,
        m: 4,
        s: 2,
        alpha: [FieldElem::ONE, w, fx.mul(w, w)],
        beta: FieldElem::ONE,
        l_coeffs: vec![FieldElem::ONE],
        gamma: FieldElem::ONE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::spectral::{classify_bent, dual_bent_certificate};

    fn certify(inst: &Instance) {
        let cert = dual_bent_certificate(&inst.f, &inst.fstar, &Limits::default())
            .unwrap_or_else(|e| panic!("{}: {e}", inst.label));
        assert_eq!(cert.sigma, inst.sigma_claim, "{}", inst.label);
        assert_eq!(cert.epsilons, inst.epsilon_claim, "{}", inst.label);
        assert!(inst.f.vanishes_at_zero() && inst.f.is_even(), "{}", inst.label);
    }

    #[test]
    fn maiorana_mcfarland_power() {
        let inst = mm_power(3, 1, 1, FieldElem(1), 1).unwrap();
        certify(&inst);
        let s = inst.f.domain().clone();
        for z in s.points() {
            let (x, y) = (s.part(z, 0).0, s.part(z, 1).0);
            assert_eq!(inst.f.eval(z).0, x * y % 3);
            assert_eq!(inst.fstar.eval(z).0, 2 * x * y % 3);
        }
        assert!(inst.sigma_claim.iter().all(|(c, d)| c == d));
        certify(&mm_power(3, 2, 1, FieldElem(1), 1).unwrap());
        let inst = mm_power(7, 1, 1, FieldElem(1), 5).unwrap();
        assert!(inst.sigma_claim.iter().all(|(c, d)| c == d));
        certify(&inst);
        assert!(matches!(mm_power(3, 2, 1, FieldElem(1), 2), Err(ConstructionError::BadExponent { .. })));
    }

    #[test]
    fn maiorana_mcfarland_qpoly() {
        let ident = mm_qpoly(3, 2, 1, FieldElem(1), vec![FieldElem(1)]).unwrap();
        let power = mm_power(3, 2, 1, FieldElem(1), 1).unwrap();
        assert_eq!(ident.f, power.f);
        certify(&mm_qpoly(3, 2, 1, FieldElem(1), vec![FieldElem(0), FieldElem(1)]).unwrap());
        certify(&mm_qpoly(3, 2, 2, FieldElem(1), vec![FieldElem(1)]).unwrap());
        let k = FieldDesc::new(3, 2).unwrap();
        // x + x^3 kills every element of trace zero.
        assert!(matches!(
            QPolynomial::new(k, 1, vec![FieldElem(1), FieldElem(1)]),
            Err(ConstructionError::NotPermutation)
        ));
    }

    #[test]
    fn quadratic_trace() {
        for (p, n, s, a) in [(3, 2, 1, 1), (3, 2, 2, 1), (5, 2, 1, 1), (3, 1, 1, 2), (3, 3, 1, 1)] {
            let inst = quad_trace(p, n, s, FieldElem(a)).unwrap();
            certify(&inst);
        }
    }

    #[test]
    fn diagonal_quadratic() {
        certify(&diag_quad(3, 1, vec![FieldElem(1), FieldElem(1)]).unwrap());
        certify(&diag_quad(3, 2, vec![FieldElem(1), FieldElem(1)]).unwrap());
        certify(&diag_quad(5, 1, vec![FieldElem(2), FieldElem(1), FieldElem(3)]).unwrap());
        let single = diag_quad(3, 2, vec![FieldElem(4)]).unwrap();
        let trace = quad_trace(3, 2, 2, FieldElem(4)).unwrap();
        assert_eq!(single.f.table(), trace.f.table());
        assert_eq!(single.epsilon_claim, trace.epsilon_claim);
        assert!(matches!(diag_quad(3, 1, vec![FieldElem(0)]), Err(ConstructionError::ZeroCoefficient(1))));
    }

    #[test]
    fn spreads() {
        certify(&spread_bent(3, 1, 1, None, FieldElem::ZERO).unwrap());
        certify(&spread_bent(3, 2, 1, None, FieldElem::ZERO).unwrap());
        certify(&spread_bent(3, 2, 2, None, FieldElem::ZERO).unwrap());
        assert!(matches!(
            spread_bent(3, 1, 1, Some(vec![0, 0, 1]), FieldElem::ZERO),
            Err(ConstructionError::UnbalancedLabeling { .. })
        ));
    }

    #[test]
    fn spread_complements_are_spread_members() {
        let big = FieldDesc::new(3, 2).unwrap();
        let space = Space::new(vec![big.clone(), big.clone()]).unwrap();
        let member = |a: Option<FieldElem>| -> Vec<Point> {
            big.elements()
                .map(|t| match a {
                    None => space.from_parts(&[FieldElem::ZERO, t]).unwrap(),
                    Some(a) => space.from_parts(&[t, big.mul(a, t)]).unwrap(),
                })
                .collect()
        };
        let mut spread: Vec<Vec<Point>> = vec![member(None)];
        spread.extend(big.elements().map(|a| member(Some(a))));
        let mut sorted: Vec<Vec<Point>> = spread
            .iter()
            .map(|u| {
                let mut v = u.clone();
                v.sort();
                v
            })
            .collect();
        sorted.sort();
        for u in &spread {
            let mut perp: Vec<Point> =
                space.points().filter(|&z| u.iter().all(|&x| space.inner_product(z, x) == 0)).collect();
            perp.sort();
            assert!(sorted.binary_search(&perp).is_ok());
        }
    }

    #[test]
    fn three_branch_small() {
        let params = Theorem1Params {
            p: 3,
            n: 2,
            m: 1,
            s: 1,
            alpha: [FieldElem(1); 3],
            beta: FieldElem(1),
            l_coeffs: vec![FieldElem(1)],
            gamma: FieldElem(1),
        };
        let inst = theorem1_construct(&params).unwrap();
        assert_eq!(inst.f.domain().order(), 81);
        certify(&inst);
        assert!(inst.sigma_claim.iter().all(|(c, d)| c == d));
        // Only the zero branch is used when y_2 = 0.
        let s = inst.f.domain();
        let fx = FieldDesc::new(3, 2).unwrap();
        for x in fx.elements() {
            let z = s.from_parts(&[x, FieldElem(2), FieldElem(0)]).unwrap();
            assert_eq!(inst.f.eval(z), fx.trace(1, fx.mul(x, x)).unwrap());
        }
    }

    #[test]
    fn three_branch_mixed_signs() {
        let fx = FieldDesc::new(3, 2).unwrap();
        let w = fx.primitive_element();
        let params = Theorem1Params {
            p: 3,
            n: 2,
            m: 2,
            s: 1,
            alpha: [FieldElem(1), w, fx.mul(w, w)],
            beta: FieldElem(1),
            l_coeffs: vec![FieldElem(1)],
            gamma: FieldElem(1),
        };
        let inst = theorem1_construct(&params).unwrap();
        certify(&inst);
        let comp = inst.f.component(FieldElem(1)).unwrap();
        assert!(!classify_bent(&comp, &Limits::default()).unwrap().weakly_regular);
    }

    #[test]
    fn worked_example_table() {
        let params = example_theorem1_params().unwrap();
        let inst = theorem1_construct(&params).unwrap();
        assert_eq!(inst.f.domain().order(), 3u64.pow(14));
        assert_eq!(inst.f.eval(Point::ZERO), FieldElem::ZERO);
        // H(x, 0, 0) = Tr_2^6(x^2).
        let fx = FieldDesc::new(3, 6).unwrap();
        for x in fx.elements().step_by(37) {
            assert_eq!(inst.f.eval(Point(x.0 as u64)), fx.trace(2, fx.mul(x, x)).unwrap());
        }
    }
}
