use std::path::Path;

use super::{ArchError, ConnectivityGraph};

/// IBM Q20 Tokyo: a 4x5 grid plus crossing diagonals in alternate cells.
pub const TOKYO: &[(usize, usize)] = &[
    (0, 1),
    (0, 5),
    (1, 2),
    (1, 6),
    (1, 7),
    (2, 6),
    (2, 3),
    (2, 7),
    (3, 4),
    (3, 8),
    (3, 9),
    (4, 8),
    (4, 9),
    (5, 6),
    (5, 10),
    (5, 11),
    (6, 10),
    (6, 11),
    (6, 7),
    (7, 12),
    (7, 8),
    (7, 13),
    (8, 12),
    (8, 13),
    (8, 9),
    (9, 14),
    (10, 11),
    (10, 15),
    (11, 12),
    (11, 16),
    (11, 17),
    (12, 17),
    (12, 16),
    (12, 13),
    (13, 14),
    (13, 19),
    (13, 18),
    (14, 18),
    (14, 19),
    (15, 16),
    (16, 17),
    (17, 18),
    (18, 19),
];

/// Tokyo with every diagonal removed: the plain 4x5 grid.
pub const TOKYO_MINUS: &[(usize, usize)] = &[
    (0, 1),
    (0, 5),
    (1, 2),
    (1, 6),
    (2, 3),
    (2, 7),
    (3, 4),
    (3, 8),
    (4, 9),
    (5, 6),
    (5, 10),
    (6, 11),
    (6, 7),
    (7, 12),
    (7, 8),
    (8, 13),
    (8, 9),
    (9, 14),
    (10, 11),
    (10, 15),
    (11, 12),
    (11, 16),
    (12, 17),
    (12, 13),
    (13, 14),
    (13, 18),
    (14, 19),
    (15, 16),
    (16, 17),
    (17, 18),
    (18, 19),
];

/// Tokyo with extra diagonals added.
pub const TOKYO_PLUS: &[(usize, usize)] = &[
    (0, 1),
    (0, 5),
    (0, 6),
    (1, 2),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 6),
    (2, 3),
    (2, 7),
    (2, 8),
    (3, 4),
    (3, 7),
    (3, 8),
    (3, 9),
    (4, 8),
    (4, 9),
    (5, 6),
    (5, 10),
    (5, 11),
    (6, 10),
    (6, 11),
    (6, 12),
    (6, 7),
    (7, 11),
    (7, 12),
    (7, 8),
    (7, 13),
    (8, 12),
    (8, 13),
    (8, 9),
    (8, 14),
    (9, 13),
    (9, 14),
    (10, 11),
    (10, 15),
    (10, 16),
    (11, 15),
    (11, 12),
    (11, 16),
    (11, 17),
    (12, 17),
    (12, 16),
    (12, 18),
    (12, 13),
    (13, 14),
    (13, 17),
    (13, 19),
    (13, 18),
    (14, 18),
    (14, 19),
    (15, 16),
    (16, 17),
    (17, 18),
    (18, 19),
];

fn param(spec: &str, value: &str) -> Result<usize, ArchError> {
    value
        .trim()
        .parse()
        .map_err(|_| ArchError::BadParameter(spec.to_string()))
}

fn family(spec: &str, kind: &str, arg: &str) -> Result<ConnectivityGraph, ArchError> {
    let bad = || ArchError::BadParameter(spec.to_string());
    let (n, edges): (usize, Vec<(usize, usize)>) = match kind {
        "line" => {
            let n = param(spec, arg)?;
            (n, (1..n).map(|i| (i - 1, i)).collect())
        }
        "cycle" => {
            let n = param(spec, arg)?;
            if n < 3 {
                return Err(bad());
            }
            (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        "star" => {
            let n = param(spec, arg)?;
            (n, (1..n).map(|i| (0, i)).collect())
        }
        "complete" => {
            let n = param(spec, arg)?;
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    e.push((i, j));
                }
            }
            (n, e)
        }
        "grid" => {
            let (r, c) = arg.split_once('x').ok_or_else(bad)?;
            let (rows, cols) = (param(spec, r)?, param(spec, c)?);
            let mut e = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    let v = i * cols + j;
                    if j + 1 < cols {
                        e.push((v, v + 1));
                    }
                    if i + 1 < rows {
                        e.push((v, v + cols));
                    }
                }
            }
            (rows * cols, e)
        }
        _ => return Err(ArchError::UnknownName(spec.to_string())),
    };
    if n == 0 {
        return Err(bad());
    }
    ConnectivityGraph::new(n, &edges)
}

/// Resolves an architecture by built-in name (`tokyo`, `tokyo_plus`,
/// `tokyo_minus`, `line:<n>`, `cycle:<n>`, `star:<n>`, `complete:<n>`,
/// `grid:<r>x<c>`) or, failing that, as a path to an edge-list file.
pub fn load_arch(spec: &str) -> Result<ConnectivityGraph, ArchError> {
    match spec {
        "tokyo" => return ConnectivityGraph::new(20, TOKYO),
        "tokyo_plus" => return ConnectivityGraph::new(20, TOKYO_PLUS),
        "tokyo_minus" => return ConnectivityGraph::new(20, TOKYO_MINUS),
        _ => {}
    }
    if let Some((kind, arg)) = spec.split_once(':') {
        if matches!(kind, "line" | "cycle" | "star" | "complete" | "grid") {
            return family(spec, kind, arg);
        }
    }
    let path = Path::new(spec);
    if path.is_file() {
        return parse_edge_list(&std::fs::read_to_string(path)?);
    }
    Err(ArchError::UnknownName(spec.to_string()))
}

/// Edge-list format: first line `n <count>`, then one `u v` pair per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<ConnectivityGraph, ArchError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |message: &str| ArchError::Malformed {
            line: i + 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["n", count]) => {
                n = Some(count.parse().map_err(|_| malformed("bad qubit count"))?);
            }
            (None, _) => return Err(malformed("expected header `n <count>`")),
            (Some(_), [u, v]) => {
                let u = u.parse().map_err(|_| malformed("bad vertex"))?;
                let v = v.parse().map_err(|_| malformed("bad vertex"))?;
                edges.push((u, v));
            }
            (Some(_), _) => return Err(malformed("expected `u v`")),
        }
    }
    let n = n.ok_or(ArchError::Malformed {
        line: 1,
        message: "empty edge list".into(),
    })?;
    ConnectivityGraph::new(n, &edges)
}
