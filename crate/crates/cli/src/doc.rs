//! Line-oriented document format with nested named sections.
//!
//! ```text
//! format 1
//!
//! lie_algebra g {
//!   dim 3
//!   bracket 0 1 = 0 2 0
//! }
//! linear_map B {
//!   rows 3
//!   cols 3
//!   matrix {
//!     -1/2 0 0
//!     0 -1 0
//!     0 0 0
//!   }
//! }
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::Zero;
use rbcyb::lie::{BilinearForm, LieAlgebra, Representation};
use rbcyb::linalg::Matrix;
use rbcyb::relative::{PostLie, PreLie, RelRB0, RelRBW};
use rbcyb::rotabaxter::{QuadraticRB, RBStructure, ReflectionVariant};
use rbcyb::tensor::{RMatrix, Tensor2};
use rbcyb::GaussRat;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {object} refers to unknown {expected} `{name}`")]
    Dangling { line: usize, object: String, name: String, expected: &'static str },
    #[error("line {line}: dimension mismatch in {object}: {msg}")]
    Dimension { line: usize, object: String, msg: String },
    #[error("{0}")]
    Algebra(String),
}

pub type DocResult<T> = std::result::Result<T, DocError>;

impl From<rbcyb::Error> for DocError {
    fn from(e: rbcyb::Error) -> Self {
        DocError::Algebra(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    LieAlgebra { dim: usize, c: Vec<GaussRat> },
    BilinearForm { algebra: String, gram: Matrix },
    LinearMap { matrix: Matrix },
    Representation { algebra: String, space_dim: usize, mats: Vec<Matrix> },
    Rb { algebra: String, map: String, weight: GaussRat },
    QuadraticRb { rb: String, form: String },
    RelativeRb0 { algebra: String, representation: String, map: String },
    RelativeRbw { algebra: String, module_algebra: String, representation: String, map: String, weight: GaussRat },
    PreLie { dim: usize, table: Vec<GaussRat> },
    PostLie { algebra: String, table: Vec<GaussRat> },
    /// `map` acts on the target of a relative operator; `source_map` on its source.
    Reflection { target: String, map: String, source_map: Option<String>, variant: Option<ReflectionVariant> },
    Tensor { algebra: String, matrix: Matrix },
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::LieAlgebra { .. } => "lie_algebra",
            Object::BilinearForm { .. } => "bilinear_form",
            Object::LinearMap { .. } => "linear_map",
            Object::Representation { .. } => "representation",
            Object::Rb { .. } => "rb",
            Object::QuadraticRb { .. } => "quadratic_rb",
            Object::RelativeRb0 { .. } => "relative_rb0",
            Object::RelativeRbw { .. } => "relative_rbw",
            Object::PreLie { .. } => "prelie",
            Object::PostLie { .. } => "postlie",
            Object::Reflection { .. } => "reflection",
            Object::Tensor { .. } => "tensor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub object: Object,
    /// Source line of the declaration; 0 for constructed objects.
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub format_version: u32,
    pub objects: Vec<Named>,
}

impl Default for Document {
    fn default() -> Self {
        Document { format_version: FORMAT_VERSION, objects: Vec::new() }
    }
}

// Syntax tree

#[derive(Clone, Debug)]
struct Token {
    text: String,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Block {
    head: Vec<Token>,
    items: Vec<Item>,
}

#[derive(Debug)]
enum Item {
    Field(Vec<Token>),
    Block(Block),
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: content[s..i].to_string(), line: line_no, col: content[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn syntax(tok: &Token, msg: impl Into<String>) -> DocError {
    DocError::Syntax { line: tok.line, col: tok.col, msg: msg.into() }
}

fn parse_tree(text: &str) -> DocResult<Vec<Item>> {
    let mut stack: Vec<Block> = vec![Block { head: Vec::new(), items: Vec::new() }];
    let mut last_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let mut toks = tokenize(line, line_no);
        if toks.is_empty() {
            continue;
        }
        let last = toks.last().expect("nonempty").clone();
        if last.text == "}" {
            if toks.len() == 1 {
                if stack.len() == 1 {
                    return Err(syntax(&last, "unmatched `}`"));
                }
                let done = stack.pop().expect("depth checked");
                stack.last_mut().expect("root").items.push(Item::Block(done));
                continue;
            }
            if toks.len() >= 2 && toks[toks.len() - 2].text == "{" {
                // `key args {}` is an empty block
                toks.truncate(toks.len() - 2);
                stack.last_mut().expect("root").items.push(Item::Block(Block { head: toks, items: Vec::new() }));
                continue;
            }
            return Err(syntax(&last, "`}` must stand on its own line"));
        }
        if let Some(bad) = toks.iter().find(|t| t.text.contains('{') || t.text.contains('}')) {
            if bad.text != "{" || !std::ptr::eq(bad, toks.last().expect("nonempty")) {
                return Err(syntax(bad, "braces must be separate tokens at the end of a line"));
            }
        }
        if last.text == "{" {
            toks.pop();
            if toks.is_empty() {
                return Err(syntax(&last, "section without a header"));
            }
            stack.push(Block { head: toks, items: Vec::new() });
        } else {
            stack.last_mut().expect("root").items.push(Item::Field(toks));
        }
    }
    if stack.len() > 1 {
        let open = &stack.last().expect("depth").head[0];
        return Err(DocError::Syntax {
            line: last_line.max(open.line),
            col: 1,
            msg: format!("section `{}` opened on line {} is never closed", open.text, open.line),
        });
    }
    Ok(stack.pop().expect("root").items)
}

// Field helpers

fn num(tok: &Token) -> DocResult<GaussRat> {
    GaussRat::from_str(&tok.text).map_err(|_| syntax(tok, format!("`{}` is not a number", tok.text)))
}

fn index(tok: &Token) -> DocResult<usize> {
    tok.text.parse().map_err(|_| syntax(tok, format!("`{}` is not an index", tok.text)))
}

struct Fields<'a> {
    head: &'a Token,
    items: &'a [Item],
}

impl<'a> Fields<'a> {
    fn fields(&self, key: &str) -> impl Iterator<Item = &'a [Token]> + '_ {
        let key = key.to_string();
        self.items.iter().filter_map(move |it| match it {
            Item::Field(t) if t[0].text == key => Some(&t[1..]),
            _ => None,
        })
    }

    fn blocks(&self, key: &str) -> impl Iterator<Item = &'a Block> + '_ {
        let key = key.to_string();
        self.items.iter().filter_map(move |it| match it {
            Item::Block(b) if b.head[0].text == key => Some(b),
            _ => None,
        })
    }

    fn single(&self, key: &str) -> DocResult<&'a [Token]> {
        let mut it = self.fields(key);
        let first = it.next().ok_or_else(|| syntax(self.head, format!("missing field `{key}`")))?;
        if let Some(dup) = it.next() {
            return Err(syntax(&dup[0], format!("duplicate field `{key}`")));
        }
        if first.is_empty() {
            return Err(syntax(self.head, format!("field `{key}` needs a value")));
        }
        Ok(first)
    }

    fn word(&self, key: &str) -> DocResult<String> {
        let v = self.single(key)?;
        if v.len() != 1 {
            return Err(syntax(&v[1], format!("field `{key}` takes one value")));
        }
        Ok(v[0].text.clone())
    }

    fn count(&self, key: &str) -> DocResult<usize> {
        let v = self.single(key)?;
        index(&v[0])
    }

    fn scalar(&self, key: &str) -> DocResult<GaussRat> {
        let v = self.single(key)?;
        num(&v[0])
    }

    fn check_known(&self, allowed_fields: &[&str], allowed_blocks: &[&str]) -> DocResult<()> {
        for it in self.items {
            match it {
                Item::Field(t) if !allowed_fields.contains(&t[0].text.as_str()) => {
                    return Err(syntax(&t[0], format!("unknown field `{}`", t[0].text)))
                }
                Item::Block(b) if !allowed_blocks.contains(&b.head[0].text.as_str()) => {
                    return Err(syntax(&b.head[0], format!("unknown section `{}`", b.head[0].text)))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn matrix_block(b: &Block) -> DocResult<(Vec<Vec<GaussRat>>, &Token)> {
    let mut rows = Vec::new();
    let mut width = None;
    for it in &b.items {
        match it {
            Item::Field(t) => {
                let row = t.iter().map(num).collect::<DocResult<Vec<_>>>()?;
                if let Some(w) = width {
                    if w != row.len() {
                        return Err(syntax(&t[0], format!("row has {} entries, expected {w}", row.len())));
                    }
                }
                width = Some(row.len());
                rows.push(row);
            }
            Item::Block(inner) => return Err(syntax(&inner.head[0], "unexpected section inside matrix")),
        }
    }
    Ok((rows, &b.head[0]))
}

fn sized_matrix(f: &Fields, rows: usize, cols: usize, object: &str) -> DocResult<Matrix> {
    let mut blocks = f.blocks("matrix");
    let Some(b) = blocks.next() else {
        if rows * cols == 0 {
            return Ok(Matrix::zeros(rows, cols));
        }
        return Err(syntax(f.head, "missing `matrix` section"));
    };
    if let Some(dup) = blocks.next() {
        return Err(syntax(&dup.head[0], "duplicate `matrix` section"));
    }
    let (data, tok) = matrix_block(b)?;
    let width = data.first().map_or(0, Vec::len);
    if data.len() != rows || (rows > 0 && width != cols) {
        return Err(DocError::Dimension {
            line: tok.line,
            object: object.to_string(),
            msg: format!("matrix is {}x{}, expected {rows}x{cols}", data.len(), width),
        });
    }
    Ok(Matrix::from_fn(rows, cols, |i, j| data[i][j].clone()))
}

fn square_matrix(f: &Fields, object: &str) -> DocResult<Matrix> {
    let mut blocks = f.blocks("matrix");
    let b = blocks.next().ok_or_else(|| syntax(f.head, "missing `matrix` section"))?;
    let (data, tok) = matrix_block(b)?;
    let n = data.len();
    if data.iter().any(|r| r.len() != n) {
        return Err(DocError::Dimension { line: tok.line, object: object.into(), msg: "matrix is not square".into() });
    }
    Ok(Matrix::from_fn(n, n, |i, j| data[i][j].clone()))
}

fn dim_error(tok: &Token, object: &str, msg: String) -> DocError {
    DocError::Dimension { line: tok.line, object: object.to_string(), msg }
}

/// Reads `key i j = v_0 ... v_{n-1}` lines into a dense `n³` table.
fn table_lines(f: &Fields, key: &str, n: usize, object: &str, antisym: bool, dense: &mut [GaussRat]) -> DocResult<()> {
    for args in f.fields(key) {
        let eq = args.iter().position(|t| t.text == "=").ok_or_else(|| syntax(&args[0], "expected `i j = values`"))?;
        if eq != 2 {
            return Err(syntax(&args[0], "expected two indices before `=`"));
        }
        let (i, j) = (index(&args[0])?, index(&args[1])?);
        let vals = args[3..].iter().map(num).collect::<DocResult<Vec<_>>>()?;
        if i >= n || j >= n {
            return Err(dim_error(&args[0], object, format!("index ({i},{j}) outside dimension {n}")));
        }
        if vals.len() != n {
            return Err(dim_error(&args[0], object, format!("{} values, expected {n}", vals.len())));
        }
        for (k, v) in vals.into_iter().enumerate() {
            if antisym {
                dense[(j * n + i) * n + k] = -&v;
            }
            dense[(i * n + j) * n + k] = v;
        }
    }
    Ok(())
}

fn single_entries(f: &Fields, n: usize, object: &str, dense: &mut [GaussRat]) -> DocResult<()> {
    for args in f.fields("c") {
        if args.len() != 5 || args[3].text != "=" {
            return Err(syntax(&args[0], "expected `c i j k = value`"));
        }
        let (i, j, k) = (index(&args[0])?, index(&args[1])?, index(&args[2])?);
        if i >= n || j >= n || k >= n {
            return Err(dim_error(&args[0], object, format!("c[{i}][{j}][{k}] outside dimension {n}")));
        }
        dense[(i * n + j) * n + k] = num(&args[4])?;
    }
    Ok(())
}

fn parse_variant(tok: &Token) -> DocResult<ReflectionVariant> {
    ReflectionVariant::from_tag(&tok.text).ok_or_else(|| syntax(tok, format!("unknown variant `{}`", tok.text)))
}

fn parse_object(b: &Block) -> DocResult<Named> {
    let kind = &b.head[0];
    if b.head.len() != 2 {
        return Err(syntax(kind, "expected `kind name {`"));
    }
    let name = b.head[1].text.clone();
    let f = Fields { head: kind, items: &b.items };
    let object = match kind.text.as_str() {
        "lie_algebra" => {
            f.check_known(&["dim", "bracket", "c"], &[])?;
            let dim = f.count("dim")?;
            let mut c = vec![GaussRat::zero(); dim * dim * dim];
            table_lines(&f, "bracket", dim, &name, true, &mut c)?;
            single_entries(&f, dim, &name, &mut c)?;
            Object::LieAlgebra { dim, c }
        }
        "bilinear_form" => {
            f.check_known(&["algebra"], &["matrix"])?;
            Object::BilinearForm { algebra: f.word("algebra")?, gram: square_matrix(&f, &name)? }
        }
        "linear_map" => {
            f.check_known(&["rows", "cols"], &["matrix"])?;
            let (r, c) = (f.count("rows")?, f.count("cols")?);
            Object::LinearMap { matrix: sized_matrix(&f, r, c, &name)? }
        }
        "representation" => {
            f.check_known(&["algebra", "space_dim"], &["action"])?;
            let space_dim = f.count("space_dim")?;
            let mut mats: Vec<(usize, Matrix, &Token)> = Vec::new();
            for blk in f.blocks("action") {
                if blk.head.len() != 2 {
                    return Err(syntax(&blk.head[0], "expected `action i {`"));
                }
                let i = index(&blk.head[1])?;
                let (data, tok) = matrix_block(blk)?;
                if data.len() != space_dim || data.iter().any(|r| r.len() != space_dim) {
                    return Err(dim_error(tok, &name, format!("action {i} is not {space_dim}x{space_dim}")));
                }
                mats.push((i, Matrix::from_fn(space_dim, space_dim, |a, c| data[a][c].clone()), &blk.head[1]));
            }
            mats.sort_by_key(|(i, _, _)| *i);
            for (expect, (i, _, tok)) in mats.iter().enumerate() {
                if *i != expect {
                    return Err(dim_error(tok, &name, format!("actions must be numbered 0.., found {i}")));
                }
            }
            Object::Representation { algebra: f.word("algebra")?, space_dim, mats: mats.into_iter().map(|(_, m, _)| m).collect() }
        }
        "rb" => {
            f.check_known(&["algebra", "map", "weight"], &[])?;
            Object::Rb { algebra: f.word("algebra")?, map: f.word("map")?, weight: f.scalar("weight")? }
        }
        "quadratic_rb" => {
            f.check_known(&["rb", "form"], &[])?;
            Object::QuadraticRb { rb: f.word("rb")?, form: f.word("form")? }
        }
        "relative_rb0" => {
            f.check_known(&["algebra", "representation", "map"], &[])?;
            Object::RelativeRb0 { algebra: f.word("algebra")?, representation: f.word("representation")?, map: f.word("map")? }
        }
        "relative_rbw" => {
            f.check_known(&["algebra", "module_algebra", "representation", "map", "weight"], &[])?;
            Object::RelativeRbw {
                algebra: f.word("algebra")?,
                module_algebra: f.word("module_algebra")?,
                representation: f.word("representation")?,
                map: f.word("map")?,
                weight: f.scalar("weight")?,
            }
        }
        "prelie" => {
            f.check_known(&["dim", "product"], &[])?;
            let dim = f.count("dim")?;
            let mut table = vec![GaussRat::zero(); dim * dim * dim];
            table_lines(&f, "product", dim, &name, false, &mut table)?;
            Object::PreLie { dim, table }
        }
        "postlie" => {
            f.check_known(&["algebra", "dim", "product"], &[])?;
            let dim = f.count("dim")?;
            let mut table = vec![GaussRat::zero(); dim * dim * dim];
            table_lines(&f, "product", dim, &name, false, &mut table)?;
            Object::PostLie { algebra: f.word("algebra")?, table }
        }
        "reflection" => {
            f.check_known(&["target", "map", "source_map", "variant"], &[])?;
            let source_map = if f.fields("source_map").next().is_some() { Some(f.word("source_map")?) } else { None };
            let variant = if f.fields("variant").next().is_some() { Some(parse_variant(&f.single("variant")?[0])?) } else { None };
            Object::Reflection { target: f.word("target")?, map: f.word("map")?, source_map, variant }
        }
        "tensor" => {
            f.check_known(&["algebra"], &["matrix"])?;
            Object::Tensor { algebra: f.word("algebra")?, matrix: square_matrix(&f, &name)? }
        }
        other => return Err(syntax(kind, format!("unknown object kind `{other}`"))),
    };
    Ok(Named { name, object, line: kind.line })
}

/// Parses and checks references and dimensions.
pub fn parse(text: &str) -> DocResult<Document> {
    let items = parse_tree(text)?;
    let mut doc = Document { format_version: 0, objects: Vec::new() };
    let mut seen_format = false;
    for it in &items {
        match it {
            Item::Field(t) if t[0].text == "format" => {
                if seen_format {
                    return Err(syntax(&t[0], "duplicate `format` line"));
                }
                let v = t.get(1).ok_or_else(|| syntax(&t[0], "missing format version"))?;
                doc.format_version = v.text.parse().map_err(|_| syntax(v, "format version must be an integer"))?;
                if doc.format_version != FORMAT_VERSION {
                    return Err(syntax(v, format!("unsupported format version {}", doc.format_version)));
                }
                seen_format = true;
            }
            Item::Field(t) => return Err(syntax(&t[0], format!("unexpected top-level field `{}`", t[0].text))),
            Item::Block(b) => {
                let named = parse_object(b)?;
                if doc.get(&named.name).is_some() {
                    return Err(syntax(&b.head[1], format!("duplicate object name `{}`", named.name)));
                }
                doc.objects.push(named);
            }
        }
    }
    if !seen_format {
        return Err(DocError::Syntax { line: 1, col: 1, msg: "missing `format` line".into() });
    }
    doc.check()?;
    Ok(doc)
}

// Emission

fn emit_row(out: &mut String, indent: &str, row: &[GaussRat]) {
    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{indent}{}", cells.join(" "));
}

fn emit_matrix(out: &mut String, indent: &str, key: &str, m: &Matrix) {
    if m.rows() == 0 || m.cols() == 0 {
        let _ = writeln!(out, "{indent}{key} {{}}");
        return;
    }
    let _ = writeln!(out, "{indent}{key} {{");
    for i in 0..m.rows() {
        emit_row(out, &format!("{indent}  "), m.row(i));
    }
    let _ = writeln!(out, "{indent}}}");
}

fn emit_table(out: &mut String, key: &str, n: usize, t: &[GaussRat], antisym: bool) {
    for i in 0..n {
        for j in 0..n {
            if antisym && j <= i {
                continue;
            }
            let row = &t[(i * n + j) * n..(i * n + j + 1) * n];
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  {key} {i} {j} = {}", cells.join(" "));
        }
    }
}

fn is_antisymmetric(n: usize, c: &[GaussRat]) -> bool {
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| c[(i * n + j) * n + k] == -&c[(j * n + i) * n + k])))
}

pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format {}", doc.format_version);
    for Named { name, object, .. } in &doc.objects {
        let _ = writeln!(out);
        let _ = writeln!(out, "{} {name} {{", object.kind());
        match object {
            Object::LieAlgebra { dim, c } => {
                let _ = writeln!(out, "  dim {dim}");
                if is_antisymmetric(*dim, c) {
                    emit_table(&mut out, "bracket", *dim, c, true);
                } else {
                    let n = *dim;
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                let v = &c[(i * n + j) * n + k];
                                if !v.is_zero() {
                                    let _ = writeln!(out, "  c {i} {j} {k} = {v}");
                                }
                            }
                        }
                    }
                }
            }
            Object::BilinearForm { algebra, gram } => {
                let _ = writeln!(out, "  algebra {algebra}");
                emit_matrix(&mut out, "  ", "matrix", gram);
            }
            Object::LinearMap { matrix } => {
                let _ = writeln!(out, "  rows {}", matrix.rows());
                let _ = writeln!(out, "  cols {}", matrix.cols());
                emit_matrix(&mut out, "  ", "matrix", matrix);
            }
            Object::Representation { algebra, space_dim, mats } => {
                let _ = writeln!(out, "  algebra {algebra}");
                let _ = writeln!(out, "  space_dim {space_dim}");
                for (i, m) in mats.iter().enumerate() {
                    emit_matrix(&mut out, "  ", &format!("action {i}"), m);
                }
            }
            Object::Rb { algebra, map, weight } => {
                let _ = writeln!(out, "  algebra {algebra}\n  map {map}\n  weight {weight}");
            }
            Object::QuadraticRb { rb, form } => {
                let _ = writeln!(out, "  rb {rb}\n  form {form}");
            }
            Object::RelativeRb0 { algebra, representation, map } => {
                let _ = writeln!(out, "  algebra {algebra}\n  representation {representation}\n  map {map}");
            }
            Object::RelativeRbw { algebra, module_algebra, representation, map, weight } => {
                let _ = writeln!(
                    out,
                    "  algebra {algebra}\n  module_algebra {module_algebra}\n  representation {representation}\n  map {map}\n  weight {weight}"
                );
            }
            Object::PreLie { dim, table } => {
                let _ = writeln!(out, "  dim {dim}");
                emit_table(&mut out, "product", *dim, table, false);
            }
            Object::PostLie { algebra, table } => {
                let dim = (table.len() as f64).cbrt().round() as usize;
                let _ = writeln!(out, "  algebra {algebra}\n  dim {dim}");
                emit_table(&mut out, "product", dim, table, false);
            }
            Object::Reflection { target, map, source_map, variant } => {
                let _ = writeln!(out, "  target {target}\n  map {map}");
                if let Some(s) = source_map {
                    let _ = writeln!(out, "  source_map {s}");
                }
                if let Some(v) = variant {
                    let _ = writeln!(out, "  variant {}", v.tag());
                }
            }
            Object::Tensor { algebra, matrix } => {
                let _ = writeln!(out, "  algebra {algebra}");
                emit_matrix(&mut out, "  ", "matrix", matrix);
            }
        }
        let _ = writeln!(out, "}}");
    }
    out
}

// Resolution

impl Document {
    pub fn get(&self, name: &str) -> Option<&Named> {
        self.objects.iter().find(|o| o.name == name)
    }

    pub fn push(&mut self, name: impl Into<String>, object: Object) {
        self.objects.push(Named { name: name.into(), object, line: 0 });
    }

    pub fn names_of_kind(&self, kind: &str) -> Vec<String> {
        self.objects.iter().filter(|o| o.object.kind() == kind).map(|o| o.name.clone()).collect()
    }

    fn lookup(&self, from: &Named, name: &str, expected: &'static str) -> DocResult<&Named> {
        match self.get(name) {
            Some(o) if o.object.kind() == expected => Ok(o),
            _ => Err(DocError::Dangling { line: from.line, object: from.name.clone(), name: name.into(), expected }),
        }
    }

    fn dim_of(&self, from: &Named, algebra: &str) -> DocResult<usize> {
        match &self.lookup(from, algebra, "lie_algebra")?.object {
            Object::LieAlgebra { dim, .. } => Ok(*dim),
            _ => unreachable!("kind checked"),
        }
    }

    fn map_shape(&self, from: &Named, map: &str) -> DocResult<(usize, usize)> {
        match &self.lookup(from, map, "linear_map")?.object {
            Object::LinearMap { matrix } => Ok((matrix.rows(), matrix.cols())),
            _ => unreachable!("kind checked"),
        }
    }

    fn expect_shape(&self, from: &Named, map: &str, shape: (usize, usize)) -> DocResult<()> {
        let got = self.map_shape(from, map)?;
        if got != shape {
            return Err(DocError::Dimension {
                line: from.line,
                object: from.name.clone(),
                msg: format!("map {map} is {}x{}, expected {}x{}", got.0, got.1, shape.0, shape.1),
            });
        }
        Ok(())
    }

    fn dim_mismatch(from: &Named, msg: String) -> DocError {
        DocError::Dimension { line: from.line, object: from.name.clone(), msg }
    }

    /// Dimension of the algebra a reflection or operator acts on, and of the source for relative ones.
    fn target_dims(&self, from: &Named, target: &str) -> DocResult<(usize, Option<usize>)> {
        let t = self.get(target).ok_or_else(|| DocError::Dangling {
            line: from.line,
            object: from.name.clone(),
            name: target.into(),
            expected: "operator",
        })?;
        Ok(match &t.object {
            Object::Rb { algebra, .. } => (self.dim_of(t, algebra)?, None),
            Object::QuadraticRb { rb, .. } => match &self.lookup(t, rb, "rb")?.object {
                Object::Rb { algebra, .. } => (self.dim_of(t, algebra)?, None),
                _ => unreachable!("kind checked"),
            },
            Object::RelativeRb0 { algebra, representation, .. } => {
                let v = match &self.lookup(t, representation, "representation")?.object {
                    Object::Representation { space_dim, .. } => *space_dim,
                    _ => unreachable!("kind checked"),
                };
                (self.dim_of(t, algebra)?, Some(v))
            }
            Object::RelativeRbw { algebra, module_algebra, .. } => (self.dim_of(t, algebra)?, Some(self.dim_of(t, module_algebra)?)),
            Object::PreLie { dim, .. } => (*dim, Some(*dim)),
            Object::PostLie { algebra, .. } => {
                let d = self.dim_of(t, algebra)?;
                (d, Some(d))
            }
            _ => {
                return Err(DocError::Dangling { line: from.line, object: from.name.clone(), name: target.into(), expected: "operator" })
            }
        })
    }

    /// Reference and dimension checks over every object.
    pub fn check(&self) -> DocResult<()> {
        for o in &self.objects {
            match &o.object {
                Object::LieAlgebra { dim, c } => {
                    if c.len() != dim * dim * dim {
                        return Err(Self::dim_mismatch(o, "structure constant count".into()));
                    }
                }
                Object::BilinearForm { algebra, gram } => {
                    let d = self.dim_of(o, algebra)?;
                    if gram.rows() != d {
                        return Err(Self::dim_mismatch(o, format!("form is {0}x{0}, algebra has dimension {d}", gram.rows())));
                    }
                }
                Object::LinearMap { .. } => {}
                Object::Representation { algebra, mats, .. } => {
                    let d = self.dim_of(o, algebra)?;
                    if mats.len() != d {
                        return Err(Self::dim_mismatch(o, format!("{} actions for an algebra of dimension {d}", mats.len())));
                    }
                }
                Object::Rb { algebra, map, .. } => {
                    let d = self.dim_of(o, algebra)?;
                    self.expect_shape(o, map, (d, d))?;
                }
                Object::QuadraticRb { rb, form } => {
                    let rb_alg = match &self.lookup(o, rb, "rb")?.object {
                        Object::Rb { algebra, .. } => algebra.clone(),
                        _ => unreachable!("kind checked"),
                    };
                    match &self.lookup(o, form, "bilinear_form")?.object {
                        Object::BilinearForm { algebra, .. } if *algebra != rb_alg => {
                            return Err(Self::dim_mismatch(o, format!("form lives on {algebra}, operator on {rb_alg}")))
                        }
                        _ => {}
                    }
                }
                Object::RelativeRb0 { algebra, representation, map } => {
                    let d = self.dim_of(o, algebra)?;
                    let (rep_alg, v) = match &self.lookup(o, representation, "representation")?.object {
                        Object::Representation { algebra, space_dim, .. } => (algebra.clone(), *space_dim),
                        _ => unreachable!("kind checked"),
                    };
                    if rep_alg != *algebra {
                        return Err(Self::dim_mismatch(o, format!("representation is over {rep_alg}")));
                    }
                    self.expect_shape(o, map, (d, v))?;
                }
                Object::RelativeRbw { algebra, module_algebra, representation, map, .. } => {
                    let d = self.dim_of(o, algebra)?;
                    let k = self.dim_of(o, module_algebra)?;
                    let (rep_alg, v) = match &self.lookup(o, representation, "representation")?.object {
                        Object::Representation { algebra, space_dim, .. } => (algebra.clone(), *space_dim),
                        _ => unreachable!("kind checked"),
                    };
                    if rep_alg != *algebra || v != k {
                        return Err(Self::dim_mismatch(o, "representation must act on the module algebra".into()));
                    }
                    self.expect_shape(o, map, (d, k))?;
                }
                Object::PreLie { dim, table } => {
                    if table.len() != dim * dim * dim {
                        return Err(Self::dim_mismatch(o, "product table size".into()));
                    }
                }
                Object::PostLie { algebra, table } => {
                    let d = self.dim_of(o, algebra)?;
                    if table.len() != d * d * d {
                        return Err(Self::dim_mismatch(o, format!("product table is for dimension other than {d}")));
                    }
                }
                Object::Reflection { target, map, source_map, .. } => {
                    let (d, src) = self.target_dims(o, target)?;
                    self.expect_shape(o, map, (d, d))?;
                    match (src, source_map) {
                        (Some(v), Some(s)) => self.expect_shape(o, s, (v, v))?,
                        (None, None) => {}
                        (Some(_), None) => return Err(Self::dim_mismatch(o, "relative target needs a source_map".into())),
                        (None, Some(_)) => return Err(Self::dim_mismatch(o, "source_map only applies to relative targets".into())),
                    }
                }
                Object::Tensor { algebra, matrix } => {
                    let d = self.dim_of(o, algebra)?;
                    if matrix.rows() != d {
                        return Err(Self::dim_mismatch(o, format!("tensor is {0}x{0}, algebra has dimension {d}", matrix.rows())));
                    }
                }
            }
        }
        Ok(())
    }

    fn need(&self, name: &str, kind: &'static str) -> DocResult<&Object> {
        match self.get(name) {
            Some(o) if o.object.kind() == kind => Ok(&o.object),
            _ => Err(DocError::Dangling { line: 0, object: "command".into(), name: name.into(), expected: kind }),
        }
    }

    pub fn lie(&self, name: &str) -> DocResult<LieAlgebra> {
        match self.need(name, "lie_algebra")? {
            Object::LieAlgebra { dim, c } => Ok(LieAlgebra::from_dense(*dim, c.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn map(&self, name: &str) -> DocResult<Matrix> {
        match self.need(name, "linear_map")? {
            Object::LinearMap { matrix } => Ok(matrix.clone()),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn form(&self, name: &str) -> DocResult<BilinearForm> {
        match self.need(name, "bilinear_form")? {
            Object::BilinearForm { algebra, gram } => Ok(BilinearForm::new(self.lie(algebra)?, gram.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn representation(&self, name: &str) -> DocResult<Representation> {
        match self.need(name, "representation")? {
            Object::Representation { algebra, space_dim, mats } => Ok(Representation::new(self.lie(algebra)?, *space_dim, mats.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn rb(&self, name: &str) -> DocResult<RBStructure> {
        match self.need(name, "rb")? {
            Object::Rb { algebra, map, weight } => Ok(RBStructure::new(self.lie(algebra)?, self.map(map)?, weight.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn quadratic(&self, name: &str) -> DocResult<QuadraticRB> {
        match self.need(name, "quadratic_rb")? {
            Object::QuadraticRb { rb, form } => Ok(QuadraticRB::new(self.rb(rb)?, self.form(form)?.gram)?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn relative0(&self, name: &str) -> DocResult<RelRB0> {
        match self.need(name, "relative_rb0")? {
            Object::RelativeRb0 { algebra, representation, map } => {
                Ok(RelRB0::new(self.lie(algebra)?, self.representation(representation)?, self.map(map)?)?)
            }
            _ => unreachable!("kind checked"),
        }
    }

    pub fn relativew(&self, name: &str) -> DocResult<RelRBW> {
        match self.need(name, "relative_rbw")? {
            Object::RelativeRbw { algebra, module_algebra, representation, map, weight } => Ok(RelRBW::new(
                self.lie(algebra)?,
                self.lie(module_algebra)?,
                self.representation(representation)?,
                self.map(map)?,
                weight.clone(),
            )?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn prelie(&self, name: &str) -> DocResult<PreLie> {
        match self.need(name, "prelie")? {
            Object::PreLie { dim, table } => Ok(PreLie::new(*dim, table.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn postlie(&self, name: &str) -> DocResult<PostLie> {
        match self.need(name, "postlie")? {
            Object::PostLie { algebra, table } => Ok(PostLie::new(self.lie(algebra)?, table.clone())?),
            _ => unreachable!("kind checked"),
        }
    }

    pub fn tensor(&self, name: &str) -> DocResult<RMatrix> {
        match self.need(name, "tensor")? {
            Object::Tensor { algebra, matrix } => Ok(RMatrix::new(self.lie(algebra)?, Tensor2(matrix.clone()))?),
            _ => unreachable!("kind checked"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_columns() {
        let t = tokenize("  dim  3 # comment", 4);
        assert_eq!(t.len(), 2);
        assert_eq!((t[1].line, t[1].col), (4, 8));
    }

    #[test]
    fn unclosed_section_is_reported() {
        let err = parse("format 1\nlie_algebra g {\n  dim 1\n").unwrap_err();
        assert!(matches!(err, DocError::Syntax { .. }), "{err}");
    }
}
