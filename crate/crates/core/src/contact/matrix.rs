use std::fmt;

use num_traits::One;

use super::arc::CurveGerm;
use super::order::{contact_order, Contact};
use crate::error::{Error, Result};
use crate::kernel::Rational;
use crate::verdict::{Certificate, Verdict};

/// Pairwise contact orders of the branches of a curve germ.
///
/// Symmetric, infinite on the diagonal, finite and `>= 1` off it, and
/// ultrametric: `K(i,k) >= min(K(i,j), K(j,k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactMatrix {
    entries: Vec<Vec<Contact>>,
}

impl ContactMatrix {
    pub fn from_entries(entries: Vec<Vec<Contact>>) -> Result<Self> {
        let n = entries.len();
        let bad = |msg: String| Err(Error::ContactInvariant(msg));
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {} has length {}, expected {n}", i + 1, row.len()));
            }
            if !row[i].is_infinite() {
                return bad(format!("diagonal entry {} is not infinite", i + 1));
            }
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return bad(format!("entries ({}, {}) and ({}, {}) differ", i + 1, j + 1, j + 1, i + 1));
                }
                if i != j {
                    match &entries[i][j] {
                        Contact::Infinite => return Err(Error::BranchListNotReduced(i + 1, j + 1)),
                        Contact::Finite(q) if q < &Rational::one() => {
                            return bad(format!("entry ({}, {}) = {q} is below 1", i + 1, j + 1))
                        }
                        _ => {}
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let m = (&entries[i][j]).min(&entries[j][k]);
                    if &entries[i][k] < m {
                        return bad(format!(
                            "ultrametric inequality fails for branches {}, {}, {}",
                            i + 1,
                            j + 1,
                            k + 1
                        ));
                    }
                }
            }
        }
        Ok(ContactMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Contact {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Contact>] {
        &self.entries
    }

    /// Off-diagonal entries `i < j`, sorted.
    pub fn entry_multiset(&self) -> Vec<Contact> {
        let mut v: Vec<Contact> = (0..self.size())
            .flat_map(|i| (i + 1..self.size()).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[i][j].clone())
            .collect();
        v.sort();
        v
    }

    fn row_multiset(&self, i: usize) -> Vec<Contact> {
        let mut v: Vec<Contact> = (0..self.size()).filter(|&j| j != i).map(|j| self.entries[i][j].clone()).collect();
        v.sort();
        v
    }
}

impl fmt::Display for ContactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn contact_matrix(c: &CurveGerm) -> Result<ContactMatrix> {
    let n = c.len();
    let mut entries = vec![vec![Contact::Infinite; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let k = contact_order(&c.branches[i], &c.branches[j])?;
            entries[i][j] = k.clone();
            entries[j][i] = k;
        }
    }
    ContactMatrix::from_entries(entries)
}

pub fn curves_outer_equivalent(cf: &CurveGerm, cg: &CurveGerm) -> Result<Verdict> {
    Ok(matrices_equivalent(&contact_matrix(cf)?, &contact_matrix(cg)?))
}

fn fmt_multiset(v: &[Contact]) -> String {
    format!("{{{}}}", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

/// Searches for `sigma` with `K_f(i, j) = K_g(sigma i, sigma j)`.
pub fn matrices_equivalent(mf: &ContactMatrix, mg: &ContactMatrix) -> Verdict {
    if mf.size() != mg.size() {
        return Verdict::no("branch count", mf.size().to_string(), mg.size().to_string());
    }
    let (sf, sg) = (mf.entry_multiset(), mg.entry_multiset());
    if sf != sg {
        let only_f: Vec<Contact> = multiset_minus(&sf, &sg);
        let only_g: Vec<Contact> = multiset_minus(&sg, &sf);
        return Verdict::no("contact multiset", fmt_multiset(&only_f), fmt_multiset(&only_g));
    }
    let n = mf.size();
    let rows_f: Vec<Vec<Contact>> = (0..n).map(|i| mf.row_multiset(i)).collect();
    let rows_g: Vec<Vec<Contact>> = (0..n).map(|i| mg.row_multiset(i)).collect();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if search(mf, mg, &rows_f, &rows_g, &mut sigma, &mut used) {
        Verdict::Yes(Certificate::Permutation(sigma))
    } else {
        Verdict::no("contact matrix up to permutation", mf.to_string(), mg.to_string())
    }
}

fn multiset_minus(a: &[Contact], b: &[Contact]) -> Vec<Contact> {
    let mut rest = b.to_vec();
    let mut out = Vec::new();
    for x in a {
        match rest.iter().position(|y| y == x) {
            Some(i) => {
                rest.remove(i);
            }
            None => out.push(x.clone()),
        }
    }
    out
}

fn search(
    mf: &ContactMatrix,
    mg: &ContactMatrix,
    rows_f: &[Vec<Contact>],
    rows_g: &[Vec<Contact>],
    sigma: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = sigma.len();
    if i == mf.size() {
        return true;
    }
    for cand in 0..mg.size() {
        if used[cand] || rows_f[i] != rows_g[cand] {
            continue;
        }
        if (0..i).any(|k| mf.get(i, k) != mg.get(cand, sigma[k])) {
            continue;
        }
        used[cand] = true;
        sigma.push(cand);
        if search(mf, mg, rows_f, rows_g, sigma, used) {
            return true;
        }
        sigma.pop();
        used[cand] = false;
    }
    false
}
