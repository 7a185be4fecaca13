//! Line-oriented text formats.
//!
//! All formats are UTF-8, `#` starts a comment running to the end of the
//! line, tokens are separated by whitespace, and ids are 1-based. Writers
//! emit a canonical layout so identical inputs give byte-identical files.
//!
//! Instance (`MWPSAS 1`):
//!
//! ```text
//! MWPSAS 1
//! N 3
//! M 2
//! m 2
//! NP 2 1 3
//! MP 4 5
//! A 1 1 1
//! A 2 2 1 2
//! A 3 1 2
//! ```
//!
//! `N`, `M`, `m`, `NP` and `MP` may appear in any order after the header.
//! There is exactly one `A <i> <k> <j1> .. <jk>` line per `N`-id, in
//! ascending id order.
//!
//! Partition (`PARTITION 1`): optional `DIGEST <hex>`, then one
//! `S <e> <i1> ..` line per block with `e = 1, 2, ..` in order.
//!
//! Graph (`GRAPH 1`): `V <n>` then `E <u> <v>` lines with `u < v`.
//!
//! 3-PARTITION (`PART3 1`): `r <r>`, `B <b>`, `a <a1> .. <a3r>`.
//!
//! Decision (`DECISION 1`): `source <name>`, `C <target>`, `DIGEST <hex>`
//! of the instance, then `NR <i> <role>` and `MR <j> <role>` lines for every
//! element. Roles: `W <u> <v>`, `T <t>`, `T0`, `A <k>`, `I <k>` for
//! `N`-elements and `V <v>`, `S <s>`, `J <k>`, `A <k>` for `M`-elements.

use std::fmt::Write as _;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{Instance, Partition};
use crate::reductions::{
    DecisionInstance, Graph, MRole, NRole, Part3Instance, Provenance, Source,
};
use crate::weight::Weight;

/// Non-empty, comment-stripped lines as `(line_number, tokens)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((idx + 1, tokens))
    })
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| Error::syntax(line, format!("invalid {what} `{token}`")))
}

/// Parses a 1-based id into a 0-based index.
fn id(line: usize, token: &str, what: &str) -> Result<usize> {
    match number::<usize>(line, token, what)? {
        0 => Err(Error::syntax(line, format!("{what} must be at least 1"))),
        v => Ok(v - 1),
    }
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    magic: &str,
    text: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, tokens)) if tokens == [magic, "1"] => Ok(()),
        Some((line, tokens)) => Err(Error::syntax(
            line,
            format!("expected header `{magic} 1`, found `{}`", tokens.join(" ")),
        )),
        None => Err(Error::syntax(last_line(text), format!("missing header `{magic} 1`"))),
    }
}

fn single_value<'a>(line: usize, tokens: &[&'a str]) -> Result<&'a str> {
    match tokens {
        [_, value] => Ok(value),
        _ => Err(Error::syntax(
            line,
            format!("`{}` takes exactly one value", tokens[0]),
        )),
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::syntax(line, format!("duplicate `{key}` line")));
    }
    *slot = Some(value);
    Ok(())
}

fn required<T>(slot: Option<T>, key: &str, text: &str) -> Result<T> {
    slot.ok_or_else(|| Error::syntax(last_line(text), format!("missing `{key}` line")))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses an instance file and validates the result.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "MWPSAS", text)?;
    let (mut n, mut m, mut machines) = (None, None, None);
    let (mut np, mut mp) = (None::<Vec<u64>>, None::<Vec<u64>>);
    let mut assoc: Vec<Vec<usize>> = Vec::new();

    for (line, tokens) in lines {
        match tokens[0] {
            "N" => set_once(&mut n, number::<usize>(line, single_value(line, &tokens)?, "count")?, line, "N")?,
            "M" => set_once(&mut m, number::<usize>(line, single_value(line, &tokens)?, "count")?, line, "M")?,
            "m" => set_once(
                &mut machines,
                number::<usize>(line, single_value(line, &tokens)?, "machine count")?,
                line,
                "m",
            )?,
            "NP" | "MP" => {
                let weights = tokens[1..]
                    .iter()
                    .map(|t| number::<u64>(line, t, "weight"))
                    .collect::<Result<Vec<_>>>()?;
                let slot = if tokens[0] == "NP" { &mut np } else { &mut mp };
                set_once(slot, weights, line, tokens[0])?;
            }
            "A" => {
                if tokens.len() < 3 {
                    return Err(Error::syntax(line, "`A` needs an id and a count"));
                }
                let i = id(line, tokens[1], "N-id")?;
                if i < assoc.len() {
                    return Err(Error::syntax(
                        line,
                        format!("duplicate `A` line for N-element {}", i + 1),
                    ));
                }
                if i > assoc.len() {
                    return Err(Error::syntax(
                        line,
                        format!("`A` line for N-element {} found, expected {}", i + 1, assoc.len() + 1),
                    ));
                }
                let k: usize = number(line, tokens[2], "association size")?;
                if tokens.len() != 3 + k {
                    return Err(Error::syntax(
                        line,
                        format!("`A` declares {k} M-ids but lists {}", tokens.len() - 3),
                    ));
                }
                let list = tokens[3..]
                    .iter()
                    .map(|t| id(line, t, "M-id"))
                    .collect::<Result<Vec<_>>>()?;
                assoc.push(list);
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let n = required(n, "N", text)?;
    let m = required(m, "M", text)?;
    let machines = required(machines, "m", text)?;
    let np = required(np, "NP", text)?;
    let mp = required(mp, "MP", text)?;
    let end = last_line(text);
    if np.len() != n {
        return Err(Error::syntax(end, format!("`NP` lists {} weights, N = {n}", np.len())));
    }
    if mp.len() != m {
        return Err(Error::syntax(end, format!("`MP` lists {} weights, M = {m}", mp.len())));
    }
    if assoc.len() != n {
        return Err(Error::syntax(
            end,
            format!("found {} `A` lines, N = {n}", assoc.len()),
        ));
    }
    Instance::new(np, mp, assoc, machines)
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("MWPSAS 1\n");
    let _ = writeln!(out, "N {}", inst.n_count());
    let _ = writeln!(out, "M {}", inst.m_count());
    let _ = writeln!(out, "m {}", inst.machines());
    let _ = writeln!(out, "NP {}", join(inst.n_weights()));
    let _ = writeln!(out, "MP {}", join(inst.m_weights()));
    for i in 0..inst.n_count() {
        let list = inst.assoc(i);
        let _ = write!(out, "A {} {}", i + 1, list.len());
        for &j in list {
            let _ = write!(out, " {}", j + 1);
        }
        out.push('\n');
    }
    out
}

/// SHA-256 of the canonical instance text, as lowercase hex.
pub fn instance_digest(inst: &Instance) -> String {
    let hash = Sha256::digest(write_instance(inst).as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, byte| {
        let _ = write!(s, "{byte:02x}");
        s
    })
}

/// A parsed partition file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFile {
    pub partition: Partition,
    pub digest: Option<String>,
}

impl PartitionFile {
    /// Checks the recorded digest, if any, and that the partition covers `inst`.
    pub fn verify_against(&self, inst: &Instance) -> Result<()> {
        if let Some(expected) = &self.digest {
            let found = instance_digest(inst);
            if *expected != found {
                return Err(Error::DigestMismatch {
                    expected: expected.clone(),
                    found,
                });
            }
        }
        self.partition.check_covers(inst)
    }
}

pub fn parse_partition(text: &str) -> Result<PartitionFile> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "PARTITION", text)?;
    let mut digest = None;
    let mut blocks = Vec::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "DIGEST" => {
                if !blocks.is_empty() {
                    return Err(Error::syntax(line, "`DIGEST` must precede the blocks"));
                }
                set_once(&mut digest, single_value(line, &tokens)?.to_string(), line, "DIGEST")?;
            }
            "S" => {
                if tokens.len() < 2 {
                    return Err(Error::syntax(line, "`S` needs a block index"));
                }
                let e = id(line, tokens[1], "block index")?;
                if e != blocks.len() {
                    return Err(Error::syntax(
                        line,
                        format!("block {} found, expected block {}", e + 1, blocks.len() + 1),
                    ));
                }
                let block = tokens[2..]
                    .iter()
                    .map(|t| id(line, t, "N-id"))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(block);
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    Ok(PartitionFile {
        partition: Partition::new(blocks)?,
        digest,
    })
}

pub fn write_partition(part: &Partition, digest: Option<&str>) -> String {
    let mut out = String::from("PARTITION 1\n");
    if let Some(d) = digest {
        let _ = writeln!(out, "DIGEST {d}");
    }
    for (e, block) in part.blocks().iter().enumerate() {
        let _ = writeln!(out, "S {} {}", e + 1, join(block.iter().map(|i| i + 1)));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "GRAPH", text)?;
    let mut node_count = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "V" => set_once(
                &mut node_count,
                number::<usize>(line, single_value(line, &tokens)?, "node count")?,
                line,
                "V",
            )?,
            "E" => {
                let [_, u, v] = tokens[..] else {
                    return Err(Error::syntax(line, "`E` takes exactly two node ids"));
                };
                let (u, v) = (id(line, u, "node id")?, id(line, v, "node id")?);
                if u >= v {
                    return Err(Error::syntax(line, "edge endpoints must satisfy u < v"));
                }
                if edges.contains(&(u, v)) {
                    return Err(Error::syntax(line, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                if node_count.is_some_and(|n| v >= n) {
                    return Err(Error::syntax(line, format!("node {} exceeds V", v + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let node_count = required(node_count, "V", text)?;
    if let Some(&(u, v)) = edges.iter().find(|&&(_, v)| v >= node_count) {
        return Err(Error::syntax(
            last_line(text),
            format!("edge {} {} exceeds V = {node_count}", u + 1, v + 1),
        ));
    }
    Graph::new(node_count, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("GRAPH 1\nV {}\n", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "E {} {}", u + 1, v + 1);
    }
    out
}

pub fn parse_part3(text: &str) -> Result<Part3Instance> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "PART3", text)?;
    let (mut r, mut b, mut a) = (None, None, None::<Vec<u64>>);
    for (line, tokens) in lines {
        match tokens[0] {
            "r" => set_once(&mut r, number::<usize>(line, single_value(line, &tokens)?, "r")?, line, "r")?,
            "B" => set_once(&mut b, number::<u64>(line, single_value(line, &tokens)?, "B")?, line, "B")?,
            "a" => {
                let values = tokens[1..]
                    .iter()
                    .map(|t| number::<u64>(line, t, "integer"))
                    .collect::<Result<Vec<_>>>()?;
                set_once(&mut a, values, line, "a")?;
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    Part3Instance::new(
        required(r, "r", text)?,
        required(b, "B", text)?,
        required(a, "a", text)?,
    )
}

pub fn write_part3(p3: &Part3Instance) -> String {
    format!("PART3 1\nr {}\nB {}\na {}\n", p3.r(), p3.b(), join(p3.a()))
}

fn n_role_text(role: NRole) -> String {
    match role {
        NRole::Edge(u, v) => format!("W {} {}", u + 1, v + 1),
        NRole::Tee(t) => format!("T {}", t + 1),
        NRole::TeeZero => "T0".into(),
        NRole::Block(k) => format!("A {}", k + 1),
        NRole::Item(k) => format!("I {}", k + 1),
    }
}

fn m_role_text(role: MRole) -> String {
    match role {
        MRole::Node(v) => format!("V {}", v + 1),
        MRole::Filler(s) => format!("S {}", s + 1),
        MRole::Item(k) => format!("J {}", k + 1),
        MRole::Block(k) => format!("A {}", k + 1),
    }
}

fn parse_n_role(line: usize, tokens: &[&str]) -> Result<NRole> {
    match tokens {
        ["W", u, v] => Ok(NRole::Edge(id(line, u, "node id")?, id(line, v, "node id")?)),
        ["T", t] => Ok(NRole::Tee(id(line, t, "index")?)),
        ["T0"] => Ok(NRole::TeeZero),
        ["A", k] => Ok(NRole::Block(id(line, k, "index")?)),
        ["I", k] => Ok(NRole::Item(id(line, k, "index")?)),
        _ => Err(Error::syntax(line, format!("unknown N-role `{}`", tokens.join(" ")))),
    }
}

fn parse_m_role(line: usize, tokens: &[&str]) -> Result<MRole> {
    match tokens {
        ["V", v] => Ok(MRole::Node(id(line, v, "node id")?)),
        ["S", s] => Ok(MRole::Filler(id(line, s, "index")?)),
        ["J", k] => Ok(MRole::Item(id(line, k, "index")?)),
        ["A", k] => Ok(MRole::Block(id(line, k, "index")?)),
        _ => Err(Error::syntax(line, format!("unknown M-role `{}`", tokens.join(" ")))),
    }
}

pub fn write_decision(d: &DecisionInstance) -> String {
    let mut out = String::from("DECISION 1\n");
    let _ = writeln!(out, "source {}", d.source.name());
    let _ = writeln!(out, "C {}", d.target);
    let _ = writeln!(out, "DIGEST {}", instance_digest(&d.instance));
    for (i, &role) in d.provenance.n_roles.iter().enumerate() {
        let _ = writeln!(out, "NR {} {}", i + 1, n_role_text(role));
    }
    for (j, &role) in d.provenance.m_roles.iter().enumerate() {
        let _ = writeln!(out, "MR {} {}", j + 1, m_role_text(role));
    }
    out
}

/// Parses a decision file and attaches it to `instance`, checking the digest
/// and that every element has exactly one role.
pub fn parse_decision(text: &str, instance: Instance) -> Result<DecisionInstance> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "DECISION", text)?;
    let (mut source, mut target, mut digest) = (None, None, None);
    let mut n_roles = Vec::new();
    let mut m_roles = Vec::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "source" => {
                let name = single_value(line, &tokens)?;
                let s = Source::from_name(name)
                    .ok_or_else(|| Error::syntax(line, format!("unknown source `{name}`")))?;
                set_once(&mut source, s, line, "source")?;
            }
            "C" => set_once(&mut target, number::<u64>(line, single_value(line, &tokens)?, "target")?, line, "C")?,
            "DIGEST" => set_once(&mut digest, single_value(line, &tokens)?.to_string(), line, "DIGEST")?,
            "NR" | "MR" => {
                if tokens.len() < 3 {
                    return Err(Error::syntax(line, format!("`{}` needs an id and a role", tokens[0])));
                }
                let idx = id(line, tokens[1], "id")?;
                let expected = if tokens[0] == "NR" { n_roles.len() } else { m_roles.len() };
                if idx != expected {
                    return Err(Error::syntax(
                        line,
                        format!("`{}` for id {} found, expected {}", tokens[0], idx + 1, expected + 1),
                    ));
                }
                if tokens[0] == "NR" {
                    n_roles.push(parse_n_role(line, &tokens[2..])?);
                } else {
                    m_roles.push(parse_m_role(line, &tokens[2..])?);
                }
            }
            other => return Err(Error::syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let end = last_line(text);
    let source = required(source, "source", text)?;
    let target = required(target, "C", text)?;
    let digest = required(digest, "DIGEST", text)?;
    let found = instance_digest(&instance);
    if digest != found {
        return Err(Error::DigestMismatch {
            expected: digest,
            found,
        });
    }
    if n_roles.len() != instance.n_count() || m_roles.len() != instance.m_count() {
        return Err(Error::syntax(end, "provenance does not cover every element"));
    }
    if target == 0 {
        return Err(Error::syntax(end, "target C must be positive"));
    }
    Ok(DecisionInstance {
        source,
        instance,
        target: Weight::new(target),
        provenance: Provenance { n_roles, m_roles },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{reduce_clique, reduce_part3_n1};

    const MINIMAL: &str = "MWPSAS 1\n# two programs sharing one library\nN 2\nM 1\nm 1\nNP 1 1\nMP 1\nA 1 1 1\nA 2 1 1\n";

    #[test]
    fn minimal_instance_parses() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.n_count(), 2);
        assert_eq!(inst.assoc(1), &[0]);
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn keys_may_be_reordered_and_commented() {
        let text = "# leading comment\nMWPSAS 1\nm 1 # one machine\nNP 1 1\nMP 1\nM 1\nN 2\nA 1 1 1\nA 2 0\n";
        let inst = parse_instance(text).unwrap();
        assert!(inst.assoc(1).is_empty());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let dup = MINIMAL.replace("A 2 1 1\n", "A 1 1 1\n");
        assert_eq!(
            parse_instance(&dup).unwrap_err(),
            Error::syntax(9, "duplicate `A` line for N-element 1")
        );
        let bad_count = MINIMAL.replace("A 2 1 1", "A 2 2 1");
        assert!(matches!(parse_instance(&bad_count), Err(Error::Syntax { line: 9, .. })));
        let bad_header = MINIMAL.replace("MWPSAS 1", "MWPSAS 2");
        assert!(matches!(parse_instance(&bad_header), Err(Error::Syntax { line: 1, .. })));
        let missing = MINIMAL.replace("MP 1\n", "");
        assert!(matches!(parse_instance(&missing), Err(Error::Syntax { .. })));
        let zero_id = MINIMAL.replace("A 2 1 1", "A 2 1 0");
        assert!(matches!(parse_instance(&zero_id), Err(Error::Syntax { .. })));
    }

    #[test]
    fn semantic_errors_come_from_validation() {
        let uncovered = MINIMAL.replace("A 1 1 1\nA 2 1 1", "A 1 0\nA 2 0");
        assert_eq!(parse_instance(&uncovered).unwrap_err(), Error::Coverage(1));
        let machines = MINIMAL.replace("m 1", "m 2");
        assert!(matches!(parse_instance(&machines), Err(Error::MachineCount { .. })));
    }

    #[test]
    fn partition_with_digest() {
        let inst = parse_instance(MINIMAL).unwrap();
        let digest = instance_digest(&inst);
        assert_eq!(digest.len(), 64);
        let part = Partition::new(vec![vec![0, 1]]).unwrap();
        let text = write_partition(&part, Some(&digest));
        let file = parse_partition(&text).unwrap();
        assert_eq!(file.partition, part);
        file.verify_against(&inst).unwrap();

        let other = inst.with_machines(1).unwrap();
        assert!(file.verify_against(&other).is_ok());
        let other = Instance::new(vec![1, 2], vec![1], vec![vec![0], vec![0]], 1).unwrap();
        assert!(matches!(file.verify_against(&other), Err(Error::DigestMismatch { .. })));

        assert!(parse_partition("PARTITION 1\nS 2 1\n").is_err());
        assert!(matches!(
            parse_partition("PARTITION 1\nS 1 1\nS 2\n"),
            Err(Error::Partition(_))
        ));
    }

    #[test]
    fn graph_format() {
        let g = parse_graph("GRAPH 1\nV 3\nE 1 2\nE 1 3\nE 2 3\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        assert!(parse_graph("GRAPH 1\nV 3\nE 2 1\n").is_err());
        assert!(parse_graph("GRAPH 1\nV 3\nE 1 2\nE 1 2\n").is_err());
        assert!(parse_graph("GRAPH 1\nE 1 4\nV 3\n").is_err());
    }

    #[test]
    fn part3_format() {
        let p3 = parse_part3("PART3 1\nr 1\nB 9\na 3 3 3\n").unwrap();
        assert_eq!((p3.r(), p3.b(), p3.a()), (1, 9, &[3u64, 3, 3][..]));
        assert_eq!(write_part3(&p3), "PART3 1\nr 1\nB 9\na 3 3 3\n");
        assert!(matches!(
            parse_part3("PART3 1\nr 1\nB 10\na 3 3 3\n"),
            Err(Error::Part3Format(_))
        ));
    }

    #[test]
    fn decision_round_trip() {
        let g = parse_graph("GRAPH 1\nV 3\nE 1 2\nE 1 3\nE 2 3\n").unwrap();
        let d = reduce_clique(&g, 2).unwrap();
        let text = write_decision(&d);
        assert!(text.starts_with("DECISION 1\nsource clique\nC 8\n"));
        let back = parse_decision(&text, d.instance.clone()).unwrap();
        assert_eq!(back, d);

        let p3 = Part3Instance::new(1, 9, vec![3, 3, 3]).unwrap();
        let n1 = reduce_part3_n1(&p3).unwrap();
        assert!(matches!(
            parse_decision(&text, n1.instance.clone()),
            Err(Error::DigestMismatch { .. })
        ));
    }
}
