//! Discriminants, the `D = Φ²Ψ` shape check and the blow-ups that make the
//! discriminant a square after a double cover.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::cover::{apply_cover_poly, Cover};
use crate::arith::Rat;
use crate::blowup::{blow_up_chart, BlowupTrace, Centre, Chart, ChartSpec, DivisorState, StepSpec};
use crate::error::{Error, Result};
use crate::poly::series::{exact_div, series_kth_root};
use crate::poly::{Exp, PuiseuxPoly, Role, ZPoly};

/// Determinant by fraction-free Bareiss elimination with exact division.
pub fn bareiss_det(mut m: Vec<Vec<PuiseuxPoly>>) -> Result<PuiseuxPoly> {
    let n = m.len();
    let vars = m
        .first()
        .and_then(|r| r.first())
        .map(|p| p.vars().clone())
        .ok_or_else(|| Error::invalid("empty matrix"))?;
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let mut sign = false;
    let mut prev = PuiseuxPoly::one(&vars);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(PuiseuxPoly::zero(&vars));
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&num, &prev)?;
            }
            m[i][k] = PuiseuxPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

/// Resultant of two polynomials given by coefficient lists, highest degree
/// first, via the Sylvester matrix.
pub fn resultant(f: &[PuiseuxPoly], g: &[PuiseuxPoly]) -> Result<PuiseuxPoly> {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let n = df + dg;
    let vars = f[0].vars().clone();
    let zero = PuiseuxPoly::zero(&vars);
    let mut m = vec![vec![zero; n]; n];
    for r in 0..dg {
        for (j, c) in f.iter().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..df {
        for (j, c) in g.iter().enumerate() {
            m[dg + r][r + j] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Discriminant normalized as `∏_{i<j} ((r_i − r_j)/k)²` over the roots; for
/// `z³ − 3Bz + C` this is `−(C² − 4B³)/27`.
pub fn discriminant(f: &ZPoly) -> Result<PuiseuxPoly> {
    let k = f.degree();
    if k < 2 {
        return Err(Error::invalid("discriminant needs degree at least 2"));
    }
    let fc: Vec<PuiseuxPoly> = (0..=k).map(|i| f.coeff(i)).collect();
    let gc: Vec<PuiseuxPoly> = (0..k)
        .map(|i| {
            f.coeff(i)
                .scale_rat(&Rat::from_integer(((k - i) as i64).into()))
        })
        .collect();
    let res = resultant(&fc, &gc)?;
    let kk = k as i64;
    let e = kk * (kk - 1);
    let mut scale = Rat::one();
    for _ in 0..e {
        scale /= Rat::from_integer(kk.into());
    }
    if (e / 2) % 2 == 1 {
        scale = -scale;
    }
    Ok(res.scale_rat(&scale))
}

/// Result of the `D = Φ²Ψ` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPsi {
    pub psi: PuiseuxPoly,
    /// Exponents of the `w` variables in the `x`-free part of `Ψ`.
    pub alpha: Vec<Exp>,
}

/// Divides `D` by `Φ²` and checks that the part of `Ψ` free of the `x`
/// variables is a monomial in the `w` variables times a unit.
pub fn verify_phi_psi(
    d: &PuiseuxPoly,
    phi: &PuiseuxPoly,
    x_vars: &[usize],
    w_vars: &[usize],
) -> Result<PhiPsi> {
    let psi = exact_div(d, &(phi * phi)).map_err(|_| Error::PhiNotSquareFactor)?;
    let xi = PuiseuxPoly::from_terms(
        psi.vars(),
        psi.terms()
            .filter(|(m, _)| x_vars.iter().all(|&x| m.get(x).is_zero()))
            .map(|(m, c)| (m.clone(), c.clone())),
    );
    if xi.is_zero() {
        return Err(Error::PsiShape);
    }
    let (mono, unit) = xi.monomial_part(w_vars)?;
    if unit.constant_term().is_zero() {
        return Err(Error::PsiShape);
    }
    Ok(PhiPsi {
        alpha: w_vars.iter().map(|&w| mono.get(w)).collect(),
        psi,
    })
}

/// Outcome of the discriminant-squaring procedure.
#[derive(Clone, Debug)]
pub struct DiscSquare {
    /// The blow-ups performed, replayable with the trace runner.
    pub trace: BlowupTrace,
    /// Chart path of the final transform.
    pub path: String,
    pub f: ZPoly,
    pub phi: PuiseuxPoly,
    /// The double cover of every `w` variable.
    pub cover: Cover,
    /// `A` with `A² ≡ D` on the cover through degree `trunc`.
    pub a: PuiseuxPoly,
    pub trunc: usize,
}

/// Performs `α_j` blow-ups with centre `{z = x = w_j = 0}` in the `w_j`-chart
/// for every `w_j`, then verifies that the discriminant becomes a square on
/// the cover `w_j = v_j²` by extracting its square root through degree `n`.
pub fn make_disc_square(
    f: &ZPoly,
    phi: &PuiseuxPoly,
    x_vars: &[usize],
    w_vars: &[usize],
    n: usize,
) -> Result<DiscSquare> {
    let vars = f.vars().clone();
    let z = f.z();
    let d = discriminant(f)?;
    let pp = verify_phi_psi(&d, phi, x_vars, w_vars)?;
    let mut g = f.clone();
    let mut phi = phi.clone();
    let mut steps = Vec::new();
    let mut path = String::new();
    let mut divisors = DivisorState::from_roles(&vars);
    for (j, &w) in w_vars.iter().enumerate() {
        let a = pp.alpha[j];
        if !a.is_integer() || a < Exp::zero() {
            return Err(Error::Contract(format!(
                "exponent {a} of the w-part is not a natural number"
            )));
        }
        for _ in 0..a.to_integer() {
            let mut cv = vec![z, w];
            cv.extend_from_slice(x_vars);
            let centre = Centre::new(cv, vars.len())?;
            let label = format!("D{}", steps.len() + 1);
            let chart = Chart::new(&vars, &centre, w, &divisors, &label, &path)?;
            divisors = chart.divisors.clone();
            path = chart.path.clone();
            let ft = blow_up_chart(&g.to_poly(), chart.clone(), &centre)?;
            if ft.multiplicity != Exp::from_integer(g.degree() as i64) {
                return Err(Error::Contract(format!(
                    "order {} along the centre is below the degree {}",
                    ft.multiplicity,
                    g.degree()
                )));
            }
            g = ZPoly::from_poly(&ft.strict, z)?;
            phi = blow_up_chart(&phi, chart, &centre)?.strict;
            let mut tokens: Vec<String> = centre
                .vars()
                .iter()
                .map(|&v| vars.name(v).to_string())
                .collect();
            tokens.sort();
            steps.push(StepSpec {
                centre: tokens,
                label: None,
                anchor: None,
                charts: vec![ChartSpec {
                    path: path.clone(),
                    ..ChartSpec::default()
                }],
            });
        }
    }
    let cover = Cover::new(&vars, w_vars, &vec![2; w_vars.len()])?;
    let gd = discriminant(&g)?;
    let pp2 = verify_phi_psi(&gd, &phi, x_vars, w_vars)?;
    let psi_c = apply_cover_poly(&pp2.psi, &cover)?;
    let phi_c = apply_cover_poly(&phi, &cover)?;
    let ctab = cover.table().clone();
    let nonz: Vec<usize> = ctab.all().into_iter().filter(|&v| v != z).collect();
    let ne = Exp::from_integer(n as i64);
    let root = series_kth_root(&psi_c, 2, &nonz, ne).map_err(|e| {
        Error::Contract(format!(
            "discriminant is not a square on the double cover: {e}"
        ))
    })?;
    let a = phi_c.mul_trunc(&root, &nonz, ne);
    let d_c = apply_cover_poly(&gd, &cover)?;
    if a.mul_trunc(&a, &nonz, ne) != d_c.truncate(ne, &nonz) {
        return Err(Error::Contract("square root check failed".into()));
    }
    let roles = vars
        .roles()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match r {
            Role::Exceptional(l) => Some((vars.name(i).to_string(), l.clone())),
            _ => None,
        })
        .collect::<BTreeMap<_, _>>();
    let trace = BlowupTrace {
        vars: vars.names().to_vec(),
        roles,
        initial_form: f.to_poly().to_string(),
        steps,
    };
    Ok(DiscSquare {
        trace,
        path,
        f: g,
        phi,
        cover,
        a,
        trunc: n,
    })
}
