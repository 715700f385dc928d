//! Dense exact matrices and the elimination-based operations the rest of
//! the crate leans on: reduced row echelon form with a recorded transform,
//! standard form `S G P = [I_k | A]`, parity-check construction, and the
//! augmented-matrix decoder.
//!
//! Pivoting always takes the first nonzero entry scanning top to bottom;
//! with exact arithmetic there is nothing to stabilize, and deterministic
//! transforms are easier to test.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::perm::{PermMatrix, Permutation};

/// Row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of bringing a full-row-rank matrix to standard form:
/// `s * G * p = canonical = [I_k | A]`.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub s: Matrix,
    pub p: PermMatrix,
    pub canonical: Matrix,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols: ncols, data })
    }

    /// Test helper: build from signed integer literals.
    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(l, j);
                    out.set(i, j, &*out.get(i, j) + &add);
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `self * w^T`, e.g. a parity syndrome.
    pub fn mul_vec(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        if w.len() != self.cols {
            return Err(Error::SizeMismatch { left: w.len(), right: self.cols });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    *slot = &*slot + &(self.get(i, j) * wj);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `x * self`.
    pub fn left_mul(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.rows {
            return Err(Error::SizeMismatch { left: x.len(), right: self.rows });
        }
        let mut out = vec![self.field.zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] = &out[j] + &(xi * self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Right-multiplication by the permutation matrix of `pi`:
    /// column `i` of `self` lands in column `pi(i)` of the result.
    pub fn permute_cols(&self, pi: &Permutation) -> Result<Matrix> {
        if pi.len() != self.cols {
            return Err(Error::SizeMismatch { left: pi.len(), right: self.cols });
        }
        let mut out = Matrix::zero(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for i in 1..=self.cols {
                out.set(r, pi.apply(i) - 1, self.get(r, i - 1).clone());
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the invertible transform that
    /// produced it: `transform * self = rref`.
    pub fn rref(&self) -> (Matrix, Matrix) {
        let mut m = self.clone();
        let mut t = Matrix::identity(self.field, self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(pr) = (pivot_row..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, pr);
            t.swap_rows(pivot_row, pr);
            let inv = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            m.scale_row(pivot_row, &inv);
            t.scale_row(pivot_row, &inv);
            for r in 0..self.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                    t.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivot_row += 1;
        }
        (m, t)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * f;
            self.set(r, c, v);
        }
    }

    /// `row[a] -= f * row[b]`
    fn sub_scaled_row(&mut self, a: usize, b: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = &*self.get(a, c) - &(f * self.get(b, c));
            self.set(a, c, v);
        }
    }

    /// Pivot columns of the reduced echelon form, ascending.
    pub fn pivot_columns(rref: &Matrix) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut col = 0;
        for r in 0..rref.rows {
            while col < rref.cols && rref.get(r, col).is_zero() {
                col += 1;
            }
            if col == rref.cols {
                break;
            }
            pivots.push(col);
            col += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let (r, _) = self.rref();
        Matrix::pivot_columns(&r).len()
    }

    /// Inverse of a square full-rank matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let (r, t) = self.rref();
        if Matrix::pivot_columns(&r).len() != self.rows {
            return Err(Error::Singular);
        }
        Ok(t)
    }

    /// Basis of the right kernel `{x : self * x^T = 0}`, one vector per free
    /// column of the echelon form, ordered by free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, _) = self.rref();
        let pivots = Matrix::pivot_columns(&r);
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut x = vec![self.field.zero(); self.cols];
            x[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(row, free);
            }
            basis.push(x);
        }
        basis
    }

    /// Bring a full-row-rank `k x n` matrix to `[I_k | A]`, recording the row
    /// transform and the column permutation: `s * self * p = canonical`.
    /// Pivot columns move to the front in order of appearance; the other
    /// columns keep their relative order.
    pub fn standard_form(&self) -> Result<StandardForm> {
        let (r, t) = self.rref();
        let pivots = Matrix::pivot_columns(&r);
        if pivots.len() != self.rows {
            return Err(Error::RankDeficient);
        }
        let k = self.rows;
        let mut image = vec![0usize; self.cols];
        for (j, &p) in pivots.iter().enumerate() {
            image[p] = j + 1;
        }
        let mut next = k + 1;
        for c in 0..self.cols {
            if image[c] == 0 {
                image[c] = next;
                next += 1;
            }
        }
        let pi = Permutation::from_image(image)?;
        let canonical = r.permute_cols(&pi)?;
        Ok(StandardForm { s: t, p: PermMatrix::new(pi), canonical })
    }

    /// The parity-check matrix of the code generated by `self`: with
    /// `s * self * p = [I_k | A]`, this is `[-A^T | I_{n-k}] * p^T`, an
    /// `(n-k) x n` matrix annihilating exactly the row space of `self`.
    pub fn parity_check(&self) -> Result<Matrix> {
        let sf = self.standard_form()?;
        let k = self.rows;
        let n = self.cols;
        let mut h = Matrix::zero(self.field, n - k, n);
        for i in 0..n - k {
            for j in 0..k {
                h.set(i, j, -sf.canonical.get(j, k + i));
            }
            h.set(i, k + i, self.field.one());
        }
        h.permute_cols(&sf.p.source().inverse())
    }

    /// The unique `x` with `x * self = y`, recovered from the echelon form of
    /// the augmented matrix. The indeterminate column of the textbook
    /// construction is realized as an identity block whose rows record the
    /// coefficients of each linear form.
    pub fn decode(&self, y: &[Scalar]) -> Result<Vec<Scalar>> {
        if y.len() != self.cols {
            return Err(Error::SizeMismatch { left: y.len(), right: self.cols });
        }
        let k = self.rows;
        let n = self.cols;
        let width = n + k + 1;
        // Rows 0..k: [G_i | e_i]; row k: [y | e_{k+1}].
        let mut grid: Vec<Vec<Scalar>> = Vec::with_capacity(k + 1);
        for i in 0..k {
            let mut row = self.row(i).to_vec();
            row.extend((0..k + 1).map(|j| {
                if j == i {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            }));
            grid.push(row);
        }
        let mut last = y.to_vec();
        last.extend((0..k + 1).map(|j| {
            if j == k {
                self.field.one()
            } else {
                self.field.zero()
            }
        }));
        grid.push(last);

        // Forward elimination over the data columns; the y-row is never a
        // pivot row, so its symbolic y-coefficient stays 1.
        let mut pivot_row = 0;
        for col in 0..n {
            if pivot_row == k {
                break;
            }
            let Some(pr) = (pivot_row..k).find(|&r| !grid[r][col].is_zero()) else {
                continue;
            };
            grid.swap(pivot_row, pr);
            let inv = grid[pivot_row][col].inv()?;
            for c in 0..width {
                grid[pivot_row][c] = &grid[pivot_row][c] * &inv;
            }
            for r in 0..k + 1 {
                if r != pivot_row && !grid[r][col].is_zero() {
                    let f = grid[r][col].clone();
                    for c in 0..width {
                        grid[r][c] = &grid[r][c] - &(&f * &grid[pivot_row][c]);
                    }
                }
            }
            pivot_row += 1;
        }
        if pivot_row != k {
            return Err(Error::RankDeficient);
        }
        if grid[k][..n].iter().any(|e| !e.is_zero()) {
            return Err(Error::NotACodeword);
        }
        // The last row reads y - (x_1 r_1 + ... + x_k r_k) = 0.
        debug_assert!(grid[k][n + k].is_one());
        Ok((0..k).map(|i| -&grid[k][n + i]).collect())
    }

    // ---- text and JSON formats ----

    /// Parse either the plain text format
    ///
    /// ```text
    /// field 7
    /// size 3 6
    /// 6 1 3 1 0 0
    /// ...
    /// ```
    ///
    /// (with `#` comments and `field Q` for the rationals) or the equivalent
    /// JSON rendering `{"field": "7", "size": [3, 6], "rows": [[...], ...]}`.
    pub fn parse(input: &str) -> Result<Matrix> {
        if input.trim_start().starts_with('{') {
            return Matrix::from_json_str(input);
        }
        Matrix::parse_text(input)
    }

    fn parse_text(input: &str) -> Result<Matrix> {
        let mut field: Option<FieldSpec> = None;
        let mut size: Option<(usize, usize)> = None;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let head = tokens.next().unwrap();
            match head {
                "field" if field.is_none() => {
                    let spec = tokens
                        .next()
                        .ok_or_else(|| Error::parse(lineno, "missing field value"))?;
                    field = Some(parse_field_name(spec, lineno)?);
                }
                "size" if size.is_none() => {
                    let k = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(lineno, "bad row count"))?;
                    let n = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(lineno, "bad column count"))?;
                    size = Some((k, n));
                }
                _ => {
                    let f = field.ok_or_else(|| Error::parse(lineno, "entries before `field` line"))?;
                    let (_, n) =
                        size.ok_or_else(|| Error::parse(lineno, "entries before `size` line"))?;
                    let entries: Vec<Scalar> = line
                        .split_whitespace()
                        .map(|t| {
                            f.parse_scalar(t)
                                .map_err(|e| Error::parse(lineno, format!("{e}")))
                        })
                        .collect::<Result<_>>()?;
                    if entries.len() != n {
                        return Err(Error::parse(
                            lineno,
                            format!("expected {n} entries, found {}", entries.len()),
                        ));
                    }
                    rows.push(entries);
                }
            }
        }
        let field = field.ok_or_else(|| Error::parse(0, "missing `field` line"))?;
        let (k, n) = size.ok_or_else(|| Error::parse(0, "missing `size` line"))?;
        if rows.len() != k {
            return Err(Error::parse(0, format!("expected {k} rows, found {}", rows.len())));
        }
        if k == 0 {
            return Ok(Matrix::zero(field, 0, n));
        }
        Matrix::from_rows(field, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\nsize {} {}\n", self.field, self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_string(),
            "size": [self.rows, self.cols],
            "rows": (0..self.rows)
                .map(|r| self.row(r).iter().map(|e| e.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json_str(input: &str) -> Result<Matrix> {
        let v: Value =
            serde_json::from_str(input).map_err(|e| Error::parse(0, format!("bad JSON: {e}")))?;
        Matrix::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Matrix> {
        let field_str = match &v["field"] {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(Error::parse(0, "missing `field`")),
        };
        let field = parse_field_name(&field_str, 0)?;
        let size = v["size"]
            .as_array()
            .ok_or_else(|| Error::parse(0, "missing `size`"))?;
        let k = size
            .first()
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(0, "bad size"))? as usize;
        let n = size
            .get(1)
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(0, "bad size"))? as usize;
        let rows_v = v["rows"].as_array().ok_or_else(|| Error::parse(0, "missing `rows`"))?;
        if rows_v.len() != k {
            return Err(Error::parse(0, format!("expected {k} rows, found {}", rows_v.len())));
        }
        let mut rows = Vec::with_capacity(k);
        for row_v in rows_v {
            let entries_v =
                row_v.as_array().ok_or_else(|| Error::parse(0, "rows must be arrays"))?;
            let mut row = Vec::with_capacity(n);
            for e in entries_v {
                let s = match e {
                    Value::String(s) => s.clone(),
                    Value::Number(num) => num.to_string(),
                    _ => return Err(Error::parse(0, "entries must be strings or numbers")),
                };
                row.push(field.parse_scalar(&s)?);
            }
            if row.len() != n {
                return Err(Error::parse(0, format!("expected {n} entries per row")));
            }
            rows.push(row);
        }
        if k == 0 {
            return Ok(Matrix::zero(field, 0, n));
        }
        Matrix::from_rows(field, rows)
    }
}

fn parse_field_name(s: &str, lineno: usize) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::rationals());
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::parse(lineno, format!("`{s}` is neither a prime nor `Q`")))?;
    FieldSpec::prime(p)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Entrywise sum of two equal-length vectors.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x + y).collect())
}

/// Entrywise difference of two equal-length vectors.
pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x - y).collect())
}

/// Scale a vector.
pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// Render a vector as space-separated entries.
pub fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parse a whitespace-separated vector in the given field.
pub fn parse_vector(field: FieldSpec, s: &str) -> Result<Vec<Scalar>> {
    s.split_whitespace().map(|t| field.parse_scalar(t)).collect()
}
