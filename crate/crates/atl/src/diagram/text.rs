//! Text form `m;n;[L1->(R,1,0)],...;L=loops`: one entry per base point,
//! left labels first, partners given as (side, label, sheet).

use super::{Boundary, Diagram, DiagramError, Side};

fn side_char(s: Side) -> char {
    match s {
        Side::Left => 'L',
        Side::Right => 'R',
    }
}

impl Diagram {
    pub fn render(&self) -> String {
        let entries: Vec<String> = self
            .base_points()
            .map(|b| {
                let p = self.partner(b);
                let c = self.count(p.side) as i64;
                format!(
                    "[{}{}->({},{},{})]",
                    side_char(b.side),
                    b.pos + 1,
                    side_char(p.side),
                    p.pos.rem_euclid(c) + 1,
                    p.pos.div_euclid(c)
                )
            })
            .collect();
        format!("{};{};{};L={}", self.left, self.right, entries.join(","), self.nc_loops)
    }

    pub fn parse(s: &str) -> Result<Diagram, DiagramError> {
        let err = || DiagramError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 4 {
            return Err(err());
        }
        let left: u32 = parts[0].trim().parse().map_err(|_| err())?;
        let right: u32 = parts[1].trim().parse().map_err(|_| err())?;
        let loops: u32 = parts[3].trim().strip_prefix("L=").ok_or_else(err)?.parse().map_err(|_| err())?;
        let mut links = vec![None; (left + right) as usize];
        let body = parts[2].trim();
        if !body.is_empty() {
            for entry in body.split("],") {
                let entry = entry.trim().trim_start_matches('[').trim_end_matches(']');
                let (from, to) = entry.split_once("->").ok_or_else(err)?;
                let side_of = |c: char| match c {
                    'L' => Ok(Side::Left),
                    'R' => Ok(Side::Right),
                    _ => Err(err()),
                };
                let mut fc = from.trim().chars();
                let fs = side_of(fc.next().ok_or_else(err)?)?;
                let fi: i64 = fc.as_str().parse().map_err(|_| err())?;
                let inner = to.trim().trim_start_matches('(').trim_end_matches(')');
                let f: Vec<&str> = inner.split(',').map(str::trim).collect();
                if f.len() != 3 {
                    return Err(err());
                }
                let ts = side_of(f[0].chars().next().ok_or_else(err)?)?;
                let ti: i64 = f[1].parse().map_err(|_| err())?;
                let tw: i64 = f[2].parse().map_err(|_| err())?;
                let count = |side: Side| match side {
                    Side::Left => left as i64,
                    Side::Right => right as i64,
                };
                if fi < 1 || fi > count(fs) || ti < 1 || ti > count(ts) {
                    return Err(err());
                }
                let slot = match fs {
                    Side::Left => (fi - 1) as usize,
                    Side::Right => left as usize + (fi - 1) as usize,
                };
                links[slot] = Some(Boundary::new(ts, ti - 1 + tw * count(ts)));
            }
        }
        let links: Option<Vec<Boundary>> = links.into_iter().collect();
        Diagram::from_links(left, right, links.ok_or_else(err)?, loops)
    }
}
