use crate::exact_linalg::sparse::{axpy, unit};
use crate::exact_linalg::{inverse_rows, vec_times_rows, Scalar, SparseVec, SubspaceBasis};
use crate::glie::algebra::{sgn, BasisElement, GradedLie, Tensor3};
use crate::glie::bialgebra::{Bialgebra, BilinearForm, ManinTriple, Side};
use crate::Error;

fn basis_for(g: &GradedLie, rows: &[(String, SparseVec)]) -> Result<Vec<BasisElement>, Error> {
    let mut out = Vec::with_capacity(rows.len());
    let mut weights = Vec::with_capacity(rows.len());
    for (name, v) in rows {
        let degree = g
            .homogeneous_degree(v)
            .ok_or_else(|| Error::Invalid(format!("vector {name} is zero or not homogeneous")))?;
        weights.push(g.homogeneous_weight(v));
        out.push(BasisElement::new(name.clone(), degree));
    }
    if weights.iter().all(Option::is_some) {
        for (b, w) in out.iter_mut().zip(weights) {
            b.weight = w;
        }
    }
    Ok(out)
}

/// Bialgebra structure on one half of a Manin triple. The cobracket is the
/// bracket of the other half transported through the pairing, with dual
/// vectors normalized by `(f^i[n], e_j) = δ^i_j`.
pub fn manin_to_bialgebra(t: &ManinTriple, side: Side) -> Result<Bialgebra, Error> {
    let (plus, minus) = match side {
        Side::Plus => (&t.plus, &t.minus),
        Side::Minus => (&t.minus, &t.plus),
    };
    let p = &t.total;
    let d = plus.len();
    if minus.len() != d {
        return Err(Error::PairingDegenerate(format!("halves have dimensions {d} and {}", minus.len())));
    }
    // Pm[a][j] = (m_a, p_j); f^i = sum_a X[i][a] m_a with X = Pm^{-1}.
    let pm: Vec<SparseVec> = minus
        .iter()
        .map(|(_, m)| {
            plus.iter()
                .enumerate()
                .map(|(j, (_, pv))| (j, t.form.eval(m, pv)))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    let x = inverse_rows(&pm, d)
        .ok_or_else(|| Error::PairingDegenerate("pairing between the halves is singular".into()))?;
    let duals: Vec<SparseVec> = x
        .iter()
        .map(|row| {
            let mut f = SparseVec::new();
            for (&a, coef) in row {
                axpy(&mut f, coef, &minus[a].1);
            }
            f
        })
        .collect();

    let basis = basis_for(p, plus)?;
    let mut c = Tensor3::new();
    for i in 0..d {
        for j in 0..d {
            let w = p.bracket(&plus[i].1, &plus[j].1);
            let mut coords = SparseVec::new();
            let mut rebuilt = SparseVec::new();
            for k in 0..d {
                let v = t.form.eval(&duals[k], &w);
                if !v.is_zero() {
                    axpy(&mut rebuilt, &v, &plus[k].1);
                    coords.insert(k, v);
                }
            }
            if rebuilt != w {
                return Err(Error::NotClosed(format!("[{}, {}] leaves the half", plus[i].0, plus[j].0)));
            }
            if !coords.is_empty() {
                c.insert((i, j), coords);
            }
        }
    }
    let other = SubspaceBasis::span(p.dim(), minus.iter().map(|(_, v)| v.clone()).collect());
    let mut gamma = Tensor3::new();
    for i in 0..d {
        for j in 0..d {
            let w = p.bracket(&duals[i], &duals[j]);
            if !other.contains(&w) {
                return Err(Error::NotClosed(format!("bracket of duals {i}, {j} leaves the other half")));
            }
            let coords: SparseVec = (0..d)
                .map(|k| (k, t.form.eval(&w, &plus[k].1)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !coords.is_empty() {
                gamma.insert((i, j), coords);
            }
        }
    }
    Ok(Bialgebra::from_tensor("manin", GradedLie::from_tensor(basis, c), t.shift(), gamma))
}

/// Drinfeld double on `{e_i} ∪ {f^i[n]}` with the hyperbolic form.
pub fn double_of_bialgebra(b: &Bialgebra) -> ManinTriple {
    let g = &b.algebra;
    let d = g.dim();
    let n = b.shift_n;
    let e = g.degrees();
    let mut basis: Vec<BasisElement> = g.basis().to_vec();
    basis.extend(b.dual_algebra().basis().iter().cloned());
    let deg: Vec<i64> = basis.iter().map(|x| x.degree).collect();

    let mut entries: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    for (i, j, k, v) in g.entries() {
        entries.push((i, j, k, v));
    }
    for (k, i, j, v) in b.cobracket_entries() {
        entries.push((d + i, d + j, d + k, v));
    }
    // [e_j, f^i] = (−1)^{ē_i(n+1)} γ^{ik}_j e_k + (−1)^{ē_j(n+1)} c_{kj}^i f^k
    let mut mixed: Vec<(usize, usize, usize, Scalar)> = Vec::new();
    for j in 0..d {
        for i in 0..d {
            for k in 0..d {
                let x = b.gamma_coeff(i, k, j);
                if !x.is_zero() {
                    mixed.push((j, d + i, k, Scalar::from_int(sgn(e[i] * (n + 1))) * x));
                }
                let y = g.structure_constant(k, j, i);
                if !y.is_zero() {
                    mixed.push((j, d + i, d + k, Scalar::from_int(sgn(e[j] * (n + 1))) * y));
                }
            }
        }
    }
    for (j, fi, k, v) in mixed {
        let s = -Scalar::from_int(sgn(deg[j] * deg[fi]));
        entries.push((fi, j, k, &s * &v));
        entries.push((j, fi, k, v));
    }
    let total = GradedLie::new(basis, entries);
    let mut form_entries = Vec::new();
    for i in 0..d {
        form_entries.push((d + i, i, Scalar::one()));
        form_entries.push((i, d + i, Scalar::from_int(sgn(e[i] * (n + 1)))));
    }
    let form = BilinearForm::new(n, form_entries);
    let plus: Vec<usize> = (0..d).collect();
    let minus: Vec<usize> = (d..2 * d).collect();
    ManinTriple::from_indices(total, &plus, &minus, form)
}

/// The dual bialgebra on `g*[n]`: bracket from `γ`, cobracket from `c`,
/// basis degrees `−ē_i − n`.
pub fn dual_bialgebra(b: &Bialgebra) -> Bialgebra {
    let dual = b.dual_algebra();
    let basis: Vec<BasisElement> = dual
        .basis()
        .iter()
        .map(|x| {
            let name = match x.name.strip_suffix("**") {
                Some(stem) => stem.to_string(),
                None => x.name.clone(),
            };
            BasisElement { name, ..x.clone() }
        })
        .collect();
    Bialgebra::from_tensor(
        format!("dual({})", b.name),
        dual.with_basis(basis),
        b.shift_n,
        b.algebra.tensor().clone(),
    )
}

/// Re-express the bialgebra in a new basis given by rows in old coordinates.
pub fn change_basis(b: &Bialgebra, rows: &[(String, SparseVec)]) -> Result<Bialgebra, Error> {
    let g = &b.algebra;
    let d = g.dim();
    let t: Vec<SparseVec> = rows.iter().map(|(_, v)| v.clone()).collect();
    let ti = inverse_rows(&t, d).ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
    let basis = basis_for(g, rows)?;
    let coords = |v: &SparseVec| vec_times_rows(v, &ti);
    let mut c = Tensor3::new();
    for a in 0..d {
        for bb in 0..d {
            let w = coords(&g.bracket(&t[a], &t[bb]));
            if !w.is_empty() {
                c.insert((a, bb), w);
            }
        }
    }
    // γ'^{ab}_c = sum Ti[i][a] Ti[j][b] γ^{ij}_k T[c][k]
    let cols: Vec<SparseVec> = (0..d)
        .map(|a| ti.iter().enumerate().filter_map(|(i, r)| r.get(&a).map(|x| (i, x.clone()))).collect())
        .collect();
    let mut gamma = Tensor3::new();
    for a in 0..d {
        for bb in 0..d {
            let mut w = SparseVec::new();
            for (&i, x) in &cols[a] {
                for (&j, y) in &cols[bb] {
                    axpy(&mut w, &(x * y), &b.gamma(i, j));
                }
            }
            if w.is_empty() {
                continue;
            }
            let out: SparseVec = (0..d)
                .map(|cc| {
                    let v: Scalar = w.iter().map(|(k, x)| x * &t[cc].get(k).cloned().unwrap_or_else(Scalar::zero)).sum();
                    (cc, v)
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !out.is_empty() {
                gamma.insert((a, bb), out);
            }
        }
    }
    Ok(Bialgebra::from_tensor(b.name.clone(), GradedLie::from_tensor(basis, c), b.shift_n, gamma))
}

/// Restriction to the subspace spanned by `rows`, which must be closed under
/// the bracket and such that the cobracket restricts to it.
pub fn restrict(b: &Bialgebra, rows: &[(String, SparseVec)]) -> Result<Bialgebra, Error> {
    let d = b.dim();
    let r = rows.len();
    let mut all: Vec<(String, SparseVec)> = rows.to_vec();
    let mut span = SubspaceBasis::span(d, rows.iter().map(|(_, v)| v.clone()).collect());
    if span.dim() != r {
        return Err(Error::Invalid("restriction vectors are dependent".into()));
    }
    for k in 0..d {
        if !span.contains(&unit(k)) {
            all.push((b.algebra.name(k).to_string(), unit(k)));
            span = span.sum(&SubspaceBasis::span(d, vec![unit(k)]));
        }
    }
    let full = change_basis(b, &all)?;
    for (&(i, j), v) in full.algebra.tensor() {
        if i < r && j < r && v.keys().any(|&k| k >= r) {
            return Err(Error::NotClosed(format!("[{}, {}] leaves the subspace", all[i].0, all[j].0)));
        }
    }
    for (&(i, j), v) in full.cobracket_tensor() {
        if v.keys().any(|&k| k < r) && (i >= r || j >= r) {
            return Err(Error::NotClosed(format!("cobracket does not restrict (pair {}, {})", all[i].0, all[j].0)));
        }
    }
    let keep = |t: &Tensor3| -> Tensor3 {
        t.iter()
            .filter(|((i, j), _)| *i < r && *j < r)
            .map(|(&key, v)| (key, v.iter().filter(|(k, _)| **k < r).map(|(&k, x)| (k, x.clone())).collect::<SparseVec>()))
            .filter(|(_, v)| !v.is_empty())
            .collect()
    };
    let basis = full.algebra.basis()[..r].to_vec();
    let algebra = GradedLie::from_tensor(basis, keep(full.algebra.tensor()));
    Ok(Bialgebra::from_tensor(b.name.clone(), algebra, b.shift_n, keep(full.cobracket_tensor())))
}
