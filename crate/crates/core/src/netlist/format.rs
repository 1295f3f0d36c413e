//! Line-oriented text netlist format.
//!
//! One element per line:
//!
//! ```text
//! # comment
//! GND 0
//! TL <n1> <n2> length=<m> Ll=<H/m> Cl=<F/m> [Rl=<Ohm/m>] [Gl=<S/m>]
//! C  <n1> <n2> <F>
//! L  <n1> <n2> <H>
//! R  <n1> <n2> <Ohm>
//! PORT <idx> <node> <Ohm>
//! ```
//!
//! Numbers are SI floats with optional engineering suffixes
//! (f, p, n, u, m, k, M, G). Node 0 is ground; a `GND` line may restate that
//! but must name node 0.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::netlist::{CircuitGraph, ElementKind, NodeId, TlineParams};
use crate::scalar::Real;

/// Parses an SI float with an optional engineering suffix.
pub fn parse_si(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (mantissa, mult) = match s.chars().last().unwrap() {
        'f' => (&s[..s.len() - 1], 1e-15),
        'p' => (&s[..s.len() - 1], 1e-12),
        'n' => (&s[..s.len() - 1], 1e-9),
        'u' => (&s[..s.len() - 1], 1e-6),
        'm' => (&s[..s.len() - 1], 1e-3),
        'k' => (&s[..s.len() - 1], 1e3),
        'M' => (&s[..s.len() - 1], 1e6),
        'G' => (&s[..s.len() - 1], 1e9),
        _ => (s, 1.0),
    };
    mantissa.parse::<f64>().ok().map(|v| v * mult)
}

/// Serializes a graph to the text netlist format.
pub fn write_netlist<T: Real>(graph: &CircuitGraph<T>) -> String {
    let mut out = String::new();
    out.push_str("# circuit netlist\n");
    out.push_str("GND 0\n");
    for el in graph.elements() {
        match &el.kind {
            ElementKind::TlineSegment(p) => {
                let _ = write!(
                    out,
                    "TL {} {} length={} Ll={} Cl={}",
                    el.a.0,
                    el.b.0,
                    p.length.to_f64_lossy(),
                    p.inductance_per_m.to_f64_lossy(),
                    p.capacitance_per_m.to_f64_lossy()
                );
                if p.series_loss_per_m > T::zero() {
                    let _ = write!(out, " Rl={}", p.series_loss_per_m.to_f64_lossy());
                }
                if p.shunt_loss_per_m > T::zero() {
                    let _ = write!(out, " Gl={}", p.shunt_loss_per_m.to_f64_lossy());
                }
                out.push('\n');
            }
            ElementKind::Capacitor(v) => {
                let _ = writeln!(out, "C {} {} {}", el.a.0, el.b.0, v.to_f64_lossy());
            }
            ElementKind::Inductor(v) => {
                let _ = writeln!(out, "L {} {} {}", el.a.0, el.b.0, v.to_f64_lossy());
            }
            ElementKind::Resistor(v) => {
                let _ = writeln!(out, "R {} {} {}", el.a.0, el.b.0, v.to_f64_lossy());
            }
        }
    }
    for p in graph.ports() {
        let _ = writeln!(
            out,
            "PORT {} {} {}",
            p.index,
            p.node.0,
            p.reference_impedance.to_f64_lossy()
        );
    }
    out
}

/// Parses the text netlist format. `origin` names the source in errors.
pub fn parse_netlist<T: Real>(text: &str, origin: &str) -> Result<CircuitGraph<T>> {
    let mut graph = CircuitGraph::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| Error::parse(origin, lineno, msg);
        let node = |s: &str| -> Result<NodeId> {
            s.parse::<usize>()
                .map(NodeId)
                .map_err(|_| err(format!("invalid node id '{s}'")))
        };
        let value = |s: &str| -> Result<T> {
            parse_si(s)
                .map(T::from_f64_lossy)
                .ok_or_else(|| err(format!("invalid number '{s}'")))
        };
        match fields[0] {
            "GND" => {
                if fields.len() != 2 {
                    return Err(err("GND expects one node".into()));
                }
                if node(fields[1])? != NodeId(0) {
                    return Err(err("ground must be node 0".into()));
                }
            }
            "TL" => {
                if fields.len() < 5 {
                    return Err(err("TL expects: TL n1 n2 length= Ll= Cl= [Rl=] [Gl=]".into()));
                }
                let (a, b) = (node(fields[1])?, node(fields[2])?);
                let mut length = None;
                let mut ll = None;
                let mut cl = None;
                let mut rl = T::zero();
                let mut gl = T::zero();
                for kv in &fields[3..] {
                    let (key, val) = kv
                        .split_once('=')
                        .ok_or_else(|| err(format!("expected key=value, got '{kv}'")))?;
                    let v = value(val)?;
                    match key {
                        "length" => length = Some(v),
                        "Ll" => ll = Some(v),
                        "Cl" => cl = Some(v),
                        "Rl" => rl = v,
                        "Gl" => gl = v,
                        other => return Err(err(format!("unknown TL key '{other}'"))),
                    }
                }
                let p = TlineParams {
                    length: length.ok_or_else(|| err("TL missing length=".into()))?,
                    inductance_per_m: ll.ok_or_else(|| err("TL missing Ll=".into()))?,
                    capacitance_per_m: cl.ok_or_else(|| err("TL missing Cl=".into()))?,
                    series_loss_per_m: rl,
                    shunt_loss_per_m: gl,
                };
                graph.add_element(a, b, ElementKind::TlineSegment(p));
            }
            "C" | "L" | "R" => {
                if fields.len() != 4 {
                    return Err(err(format!("{} expects: {} n1 n2 value", fields[0], fields[0])));
                }
                let (a, b) = (node(fields[1])?, node(fields[2])?);
                let v = value(fields[3])?;
                let kind = match fields[0] {
                    "C" => ElementKind::Capacitor(v),
                    "L" => ElementKind::Inductor(v),
                    _ => ElementKind::Resistor(v),
                };
                graph.add_element(a, b, kind);
            }
            "PORT" => {
                if fields.len() != 4 {
                    return Err(err("PORT expects: PORT idx node Zref".into()));
                }
                let idx = fields[1]
                    .parse::<usize>()
                    .map_err(|_| err(format!("invalid port index '{}'", fields[1])))?;
                let n = node(fields[2])?;
                let z = value(fields[3])?;
                graph.add_port(idx, n, z);
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    Ok(graph)
}

/// Reads a netlist file.
pub fn read_netlist_file<T: Real>(path: &Path) -> Result<CircuitGraph<T>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_netlist(&text, &path.display().to_string())
}

/// Writes a netlist file.
pub fn write_netlist_file<T: Real>(graph: &CircuitGraph<T>, path: &Path) -> Result<()> {
    std::fs::write(path, write_netlist(graph))
        .map_err(|e| Error::io(path.display().to_string(), e))
}
