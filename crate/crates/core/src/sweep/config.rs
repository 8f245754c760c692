//! `key = value` configuration with `#` comments.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::linalg::C64;
use crate::repspace::RFactor;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    /// The single-space ground state of the Hamiltonian, embedded into the
    /// composite space.
    EmbeddedGroundState,
    ClassicalGaussian { mu_q: f64, mu_p: f64, sigma_q: f64, sigma_p: f64 },
    Delta { q0: f64, p0: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum VectorSource {
    /// Normalized oscillator ground-state profile on the grid.
    Gaussian,
    /// A single-column text container.
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n_q: usize,
    pub n_p: usize,
    pub l_q: f64,
    /// Momentum extent; derived from `(N_p, L_q, ħ₀)` when absent.
    pub l_p: Option<f64>,
    pub h0: f64,
    pub steps: usize,
    /// `(n, m, c)` triples: `Σ c·W(n, m)`.
    pub hamiltonian: Vec<(u32, u32, f64)>,
    pub c_q: C64,
    pub c_p: C64,
    pub state: StateSpec,
    pub a_vector: VectorSource,
    pub b_vector: VectorSource,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_q: 32,
            n_p: 32,
            l_q: 20.0,
            l_p: None,
            h0: 2.0 * PI,
            steps: 11,
            hamiltonian: vec![(2, 0, 0.5), (0, 2, 0.5)],
            c_q: C64::new(FRAC_1_SQRT_2, 0.0),
            c_p: C64::new(FRAC_1_SQRT_2, 0.0),
            state: StateSpec::EmbeddedGroundState,
            a_vector: VectorSource::Gaussian,
            b_vector: VectorSource::Gaussian,
            output: None,
            format: OutputFormat::Csv,
        }
    }
}

impl SweepConfig {
    pub fn hbar0(&self) -> f64 {
        self.h0 / (2.0 * PI)
    }

    /// The momentum extent in use: explicit, or `2πħ₀N_p/L_q`.
    pub fn momentum_length(&self) -> f64 {
        self.l_p
            .unwrap_or(2.0 * PI * self.hbar0() * self.n_p as f64 / self.l_q)
    }

    pub fn rfactor(&self) -> Result<RFactor> {
        RFactor::new(self.c_q, self.c_p)
    }

    /// Relative file paths are resolved against `base`.
    pub fn rebase(mut self, base: &Path) -> Self {
        for source in [&mut self.a_vector, &mut self.b_vector] {
            if let VectorSource::File(p) = source {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        if let Some(p) = &mut self.output {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        self
    }
}

const KEYS: &[&str] = &[
    "N_q",
    "N_p",
    "L_q",
    "L_p",
    "h0",
    "steps",
    "hamiltonian",
    "c_q",
    "c_p",
    "state",
    "a_vector",
    "b_vector",
    "output",
    "format",
];

fn err(line: usize, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{}` is not a number", s.trim()))?;
    if !v.is_finite() {
        return Err(format!("`{}` is not finite", s.trim()));
    }
    Ok(v)
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> std::result::Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(&s).map(|re| C64::new(re, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).map_err(|_| format!("`{text}` is not a complex number"))?,
    };
    Ok(C64::new(re, im))
}

fn parse_args(s: &str, name: &str, count: usize) -> std::result::Result<Vec<f64>, String> {
    let inner = s
        .strip_prefix(name)
        .and_then(|r| r.trim().strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected `{name}(...)`"))?;
    let values = inner.split(',').map(parse_real).collect::<std::result::Result<Vec<_>, _>>()?;
    if values.len() != count {
        return Err(format!("`{name}` takes {count} arguments, got {}", values.len()));
    }
    Ok(values)
}

fn parse_state(s: &str) -> std::result::Result<StateSpec, String> {
    let s = s.trim();
    if s == "embedded-ground-state" {
        return Ok(StateSpec::EmbeddedGroundState);
    }
    if s.starts_with("classical-gaussian") {
        let v = parse_args(s, "classical-gaussian", 4)?;
        if !(v[2] > 0.0 && v[3] > 0.0) {
            return Err("Gaussian widths must be positive".into());
        }
        return Ok(StateSpec::ClassicalGaussian {
            mu_q: v[0],
            mu_p: v[1],
            sigma_q: v[2],
            sigma_p: v[3],
        });
    }
    if s.starts_with("delta") {
        let v = parse_args(s, "delta", 2)?;
        return Ok(StateSpec::Delta { q0: v[0], p0: v[1] });
    }
    Err(format!(
        "unknown state `{s}` (expected embedded-ground-state, classical-gaussian(mq,mp,sq,sp) or delta(q0,p0))"
    ))
}

/// `(n,m,c),(n,m,c),…`
pub fn parse_hamiltonian(s: &str) -> std::result::Result<Vec<(u32, u32, f64)>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut terms = Vec::new();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or("expected `(` starting a term")?;
        let close = body.find(')').ok_or("unclosed `(`")?;
        let parts: Vec<&str> = body[..close].split(',').collect();
        let [n, m, c] = parts[..] else {
            return Err(format!("term `({})` needs three entries (n,m,coefficient)", &body[..close]));
        };
        let n: u32 = n.parse().map_err(|_| format!("`{n}` is not a non-negative integer"))?;
        let m: u32 = m.parse().map_err(|_| format!("`{m}` is not a non-negative integer"))?;
        terms.push((n, m, parse_real(c)?));
        rest = &body[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err("trailing `,`".into());
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(format!("unexpected `{rest}` after a term"));
        }
    }
    if terms.is_empty() {
        return Err("empty Hamiltonian".into());
    }
    Ok(terms)
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    s.trim().parse().map_err(|_| format!("`{}` is not a non-negative integer", s.trim()))
}

fn parse_vector_source(s: &str) -> VectorSource {
    match s.trim() {
        "gaussian" => VectorSource::Gaussian,
        path => VectorSource::File(PathBuf::from(path)),
    }
}

/// Parses and validates a configuration, applying defaults for missing keys.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut cfg = SweepConfig::default();
    let mut seen: Vec<(&str, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(line, content, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(err(line, key, format!("unknown key (known keys: {})", KEYS.join(", "))));
        };
        if let Some((_, first)) = seen.iter().find(|(k, _)| *k == known) {
            return Err(err(line, key, format!("duplicate key (first set on line {first})")));
        }
        seen.push((known, line));
        let bad = |m: String| err(line, key, m);
        match known {
            "N_q" => cfg.n_q = parse_count(value).map_err(bad)?,
            "N_p" => cfg.n_p = parse_count(value).map_err(bad)?,
            "L_q" => cfg.l_q = parse_real(value).map_err(bad)?,
            "L_p" => cfg.l_p = Some(parse_real(value).map_err(bad)?),
            "h0" => cfg.h0 = parse_real(value).map_err(bad)?,
            "steps" => cfg.steps = parse_count(value).map_err(bad)?,
            "hamiltonian" => cfg.hamiltonian = parse_hamiltonian(value).map_err(bad)?,
            "c_q" => cfg.c_q = parse_complex(value).map_err(bad)?,
            "c_p" => cfg.c_p = parse_complex(value).map_err(bad)?,
            "state" => cfg.state = parse_state(value).map_err(bad)?,
            "a_vector" => cfg.a_vector = parse_vector_source(value),
            "b_vector" => cfg.b_vector = parse_vector_source(value),
            "output" => cfg.output = Some(PathBuf::from(value)),
            "format" => cfg.format = value.parse().map_err(bad)?,
            _ => unreachable!("key list and match arms agree"),
        }
    }
    let line_of = |key: &str| seen.iter().find(|(k, _)| *k == key).map_or(0, |(_, l)| *l);
    for (key, n) in [("N_q", cfg.n_q), ("N_p", cfg.n_p)] {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(err(line_of(key), key, format!("grid size must be even and at least 2, got {n}")));
        }
    }
    for (key, v) in [("L_q", Some(cfg.l_q)), ("L_p", cfg.l_p), ("h0", Some(cfg.h0))] {
        if let Some(v) = v {
            if !(v > 0.0) {
                return Err(err(line_of(key), key, format!("must be positive, got {v}")));
            }
        }
    }
    if cfg.steps < 2 {
        return Err(err(line_of("steps"), "steps", format!("need at least 2 steps, got {}", cfg.steps)));
    }
    if cfg.rfactor().is_err() {
        let key = if line_of("c_p") > line_of("c_q") { "c_p" } else { "c_q" };
        let weight = cfg.c_q.norm_sqr() + cfg.c_p.norm_sqr();
        return Err(err(line_of(key), key, format!("weight condition |c_q|^2 + |c_p|^2 = 1 violated (got {weight})")));
    }
    Ok(cfg)
}

/// Reads a configuration file; relative paths inside it are taken relative
/// to the file's directory.
pub fn load_config(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(parse_config(&text)?.rebase(base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config("N_q = 32\nN_p = 32\n").unwrap();
        assert_eq!(cfg, SweepConfig::default());
        assert_eq!(cfg.h0, 2.0 * PI);
        assert_eq!(cfg.steps, 11);
        assert_eq!(cfg.hamiltonian, vec![(2, 0, 0.5), (0, 2, 0.5)]);
        assert!((cfg.momentum_length() - 2.0 * PI * 32.0 / 20.0).abs() < 1e-15);
    }

    #[test]
    fn weight_condition_enforced() {
        match parse_config("c_q = 1\nc_p = 1\n") {
            Err(Error::Config { line, key, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(key, "c_p");
            }
            other => panic!("{other:?}"),
        }
        let cfg = parse_config("c_q = 0.6\nc_p = 0.8i\n").unwrap();
        assert_eq!(cfg.c_p, C64::new(0.0, 0.8));
    }

    #[test]
    fn line_precise_errors() {
        let text = "# comment\nN_q = 32\n\nbogus = 1\n";
        match parse_config(text) {
            Err(Error::Config { line, key, .. }) => {
                assert_eq!((line, key.as_str()), (4, "bogus"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_config("N_q = 31"), Err(Error::Config { line: 1, .. })));
        assert!(matches!(parse_config("N_q = 32\nN_q = 16"), Err(Error::Config { line: 2, .. })));
        assert!(matches!(parse_config("steps = 1"), Err(Error::Config { .. })));
        assert!(matches!(parse_config("N_q 32"), Err(Error::Config { line: 1, .. })));
    }

    #[test]
    fn hamiltonian_and_states() {
        let cfg = parse_config(
            "hamiltonian = (2,0,0.5), (0,2,0.5), (4, 0, 0.1) # quartic\n\
             state = classical-gaussian(0.5, -1, 1, 2)\nformat = json\n",
        )
        .unwrap();
        assert_eq!(cfg.hamiltonian, vec![(2, 0, 0.5), (0, 2, 0.5), (4, 0, 0.1)]);
        assert_eq!(
            cfg.state,
            StateSpec::ClassicalGaussian {
                mu_q: 0.5,
                mu_p: -1.0,
                sigma_q: 1.0,
                sigma_p: 2.0
            }
        );
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(parse_config("state = delta(1, 2)").unwrap().state, StateSpec::Delta { q0: 1.0, p0: 2.0 });
        assert!(parse_config("state = delta(1)").is_err());
        assert!(parse_config("hamiltonian = (2,0)").is_err());
        assert!(parse_config("hamiltonian = (2,0,1),").is_err());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.6 - 0.8i").unwrap(), C64::new(0.6, -0.8));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), C64::new(1e-3, 0.2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn paths_rebased() {
        let cfg = parse_config("a_vector = vecs/a.txt\nb_vector = gaussian").unwrap().rebase(Path::new("/cfg"));
        assert_eq!(cfg.a_vector, VectorSource::File(PathBuf::from("/cfg/vecs/a.txt")));
        assert_eq!(cfg.b_vector, VectorSource::Gaussian);
    }
}
