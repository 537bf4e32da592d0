//! Random instances and the `HDEC v1` / `HDEC-CERT v1` text formats.
//!
//! Files use 1-based vertex labels; everything in memory is 0-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{build_union, Certificate, HamCycle, Kind, UnionMultigraph, VertexId};
use crate::rng::Rng;

pub type Seed = u64;

/// Two Hamiltonian cycles on the same vertex set and their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    x: HamCycle,
    y: HamCycle,
    union: UnionMultigraph,
}

impl Instance {
    pub fn new(x: HamCycle, y: HamCycle) -> Result<Self> {
        let union = build_union(&x, &y)?;
        Ok(Instance { x, y, union })
    }

    /// Builds an instance from 1-based vertex sequences.
    pub fn from_one_based(kind: Kind, x: &[usize], y: &[usize]) -> Result<Self> {
        Instance::new(cycle_from_one_based(x, kind)?, cycle_from_one_based(y, kind)?)
    }

    pub fn kind(&self) -> Kind {
        self.union.kind()
    }

    pub fn n(&self) -> usize {
        self.union.n()
    }

    pub fn x(&self) -> &HamCycle {
        &self.x
    }

    pub fn y(&self) -> &HamCycle {
        &self.y
    }

    pub fn union(&self) -> &UnionMultigraph {
        &self.union
    }
}

fn cycle_from_one_based(v: &[usize], kind: Kind) -> Result<HamCycle> {
    let n = v.len();
    let order = v
        .iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Error::InvalidCycle(format!("vertex {i} out of range 1..={n}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    HamCycle::new(order, kind)
}

/// A uniformly random cyclic order of `0..n`.
pub fn random_hamiltonian_cycle(n: usize, kind: Kind, rng: &mut Rng) -> Result<HamCycle> {
    if n < 3 {
        return Err(Error::TooSmall(n));
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    rng.shuffle(&mut order);
    HamCycle::new(order, kind)
}

/// Two independent random cycles. `x = y` is possible and kept.
pub fn generate_instance(n: usize, kind: Kind, rng: &mut Rng) -> Result<Instance> {
    let x = random_hamiltonian_cycle(n, kind, rng)?;
    let y = random_hamiltonian_cycle(n, kind, rng)?;
    Instance::new(x, y)
}

/// The instance used by the benchmark harness for `(n, kind, seed)`.
pub fn seeded_instance(n: usize, kind: Kind, seed: Seed) -> Result<Instance> {
    generate_instance(n, kind, &mut Rng::seed_from_u64(seed))
}

fn write_cycle(out: &mut String, tag: &str, c: &HamCycle) {
    out.push_str(tag);
    for &v in c.order() {
        let _ = write!(out, " {}", v + 1);
    }
    out.push('\n');
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("HDEC v1\n");
    let _ = writeln!(out, "kind {}", inst.kind());
    let _ = writeln!(out, "n {}", inst.n());
    write_cycle(&mut out, "x", inst.x());
    write_cycle(&mut out, "y", inst.y());
    out
}

pub fn serialize_certificate(cert: &Certificate) -> String {
    let mut out = String::from("HDEC-CERT v1\n");
    write_cycle(&mut out, "z", &cert.z);
    write_cycle(&mut out, "w", &cert.w);
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next line split into whitespace-separated fields, with its 1-based number.
    fn next_fields(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((i, line)) => {
                self.last = i + 1;
                Ok((i + 1, line.split_whitespace().collect()))
            }
            None => Err(Error::Format { line: self.last + 1, msg: format!("missing {what} line") }),
        }
    }

    fn finish(mut self) -> Result<()> {
        for (i, line) in self.inner.by_ref() {
            if !line.trim().is_empty() {
                return Err(Error::Format { line: i + 1, msg: "unexpected trailing content".into() });
            }
        }
        Ok(())
    }
}

fn expect_header(lines: &mut Lines, header: &[&str]) -> Result<()> {
    let (line, fields) = lines.next_fields("header")?;
    if fields != header {
        return Err(Error::Format { line, msg: format!("expected `{}`", header.join(" ")) });
    }
    Ok(())
}

fn parse_cycle_line(lines: &mut Lines, tag: &str, kind: Kind, n: Option<usize>) -> Result<HamCycle> {
    let (line, fields) = lines.next_fields(tag)?;
    if fields.first() != Some(&tag) {
        return Err(Error::Format { line, msg: format!("expected line starting with `{tag}`") });
    }
    let verts = fields[1..]
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| Error::Format { line, msg: format!("`{f}` is not a vertex label") }))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = n {
        if verts.len() != n {
            return Err(Error::Format { line, msg: format!("expected {n} vertices, found {}", verts.len()) });
        }
    }
    cycle_from_one_based(&verts, kind)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, &["HDEC", "v1"])?;

    let (line, fields) = lines.next_fields("kind")?;
    let kind = match fields.as_slice() {
        ["kind", k] => k.parse::<Kind>().map_err(|msg| Error::Format { line, msg })?,
        _ => return Err(Error::Format { line, msg: "expected `kind directed|undirected`".into() }),
    };

    let (line, fields) = lines.next_fields("n")?;
    let n = match fields.as_slice() {
        ["n", v] => v.parse::<usize>().map_err(|_| Error::Format { line, msg: format!("bad vertex count `{v}`") })?,
        _ => return Err(Error::Format { line, msg: "expected `n <integer>`".into() }),
    };
    if n < 3 {
        return Err(Error::TooSmall(n));
    }

    let x = parse_cycle_line(&mut lines, "x", kind, Some(n))?;
    let y = parse_cycle_line(&mut lines, "y", kind, Some(n))?;
    lines.finish()?;
    Instance::new(x, y)
}

/// Parses a certificate. The format carries no kind line, so the caller
/// supplies the kind of the instance it belongs to.
pub fn parse_certificate(text: &str, kind: Kind) -> Result<Certificate> {
    let mut lines = Lines::new(text);
    expect_header(&mut lines, &["HDEC-CERT", "v1"])?;
    let z = parse_cycle_line(&mut lines, "z", kind, None)?;
    let w = parse_cycle_line(&mut lines, "w", kind, None)?;
    lines.finish()?;
    Ok(Certificate { z, w })
}
