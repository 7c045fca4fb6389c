//! Append-only JSONL store of verified `(r, c)`-graphs keyed by canonical form.
//!
//! Records are re-verified whenever a store is read; records that fail are
//! quarantined and never returned by queries.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::{canonical_form_with_cap, CanonicalForm};
use crate::circulant::{make_circulant_with_cap, CirculantSpec};
use crate::canon::are_isomorphic;
use crate::graph::{SmallGraph, DEFAULT_ORDER_CAP};
use crate::graph6;
use crate::planarity::is_planar;

/// Seed records: one witness for every existing `(r, c)` with `r <= 6`, plus planar witnesses.
pub const SEED_JSONL: &str = include_str!("../data/seed.jsonl");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: String,
    pub g6: String,
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub planar: bool,
    #[serde(default)]
    pub circulant_spec: Option<CirculantSpec>,
    /// Canonical graph6 of the common link when all links are isomorphic.
    #[serde(default)]
    pub constant_link: Option<String>,
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub certified_smallest: bool,
}

/// First 128 bits of SHA-256 over the canonical form, as hex.
pub fn record_id(cf: &CanonicalForm) -> String {
    let digest = Sha256::digest(cf.as_bytes());
    digest[..16].iter().map(|b| format!("{b:02x}")).collect()
}

/// Canonical graph6 of the common link, if every vertex has the same link.
pub fn constant_link(g: &SmallGraph) -> Option<String> {
    let mut first: Option<CanonicalForm> = None;
    for v in 0..g.order() {
        let link = g.link(v).ok()?;
        let cf = canonical_form_with_cap(&link, usize::MAX).ok()?;
        match &first {
            None => first = Some(cf),
            Some(f) if *f != cf => return None,
            Some(_) => {}
        }
    }
    first.map(|cf| cf.as_str().to_string())
}

impl CatalogRecord {
    /// Builds a record for `g`, or `None` when `g` is not an `(r, c)`-graph.
    pub fn from_graph(g: &SmallGraph, source: &str) -> Option<Self> {
        let sig = g.rc_signature()?;
        let cf = canonical_form_with_cap(g, usize::MAX).ok()?;
        Some(Self {
            id: record_id(&cf),
            g6: cf.as_str().to_string(),
            n: g.order(),
            r: sig.r,
            c: sig.c,
            planar: is_planar(g),
            circulant_spec: None,
            constant_link: constant_link(g),
            source: source.to_string(),
            certified_smallest: false,
        })
    }

    /// Re-derives every stored field; returns the first mismatch.
    pub fn verify(&self) -> Result<(), String> {
        let g = graph6::decode_with_cap(&self.g6, usize::MAX).map_err(|e| format!("bad graph6: {e}"))?;
        if g.order() != self.n {
            return Err(format!("order {} but n = {}", g.order(), self.n));
        }
        match g.rc_signature() {
            Some(s) if s.r == self.r && s.c == self.c => {}
            other => return Err(format!("signature {other:?} but stored ({},{})", self.r, self.c)),
        }
        if is_planar(&g) != self.planar {
            return Err("planar flag disagrees".into());
        }
        let cf = canonical_form_with_cap(&g, usize::MAX).map_err(|e| e.to_string())?;
        if record_id(&cf) != self.id {
            return Err("id is not the digest of the canonical form".into());
        }
        if self.constant_link.is_some() && self.constant_link != constant_link(&g) {
            return Err("constant_link disagrees".into());
        }
        if let Some(spec) = &self.circulant_spec {
            let built = make_circulant_with_cap(spec, usize::MAX).map_err(|e| e.to_string())?;
            if !are_isomorphic(&built, &g) {
                return Err(format!("circulant {spec} is not this graph"));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> SmallGraph {
        graph6::decode_with_cap(&self.g6, usize::MAX).expect("records are verified")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineIssue {
    /// 1-based.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub accepted: usize,
    pub rejected: usize,
    pub duplicates: usize,
    pub malformed: Vec<LineIssue>,
    /// Ids of accepted records, in input order.
    pub accepted_ids: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Query {
    pub r: Option<usize>,
    pub c: Option<usize>,
    pub n_max: Option<usize>,
    pub planar: Option<bool>,
}

#[derive(Debug, Default)]
pub struct Catalog {
    path: Option<PathBuf>,
    records: Vec<CatalogRecord>,
    index: HashMap<String, usize>,
    quarantined: Vec<LineIssue>,
}

pub enum Added {
    New(String),
    Duplicate(String),
}

impl Catalog {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// The bundled seed records.
    pub fn seed() -> Self {
        let mut cat = Self::default();
        cat.load_jsonl(SEED_JSONL.as_bytes()).expect("in-memory read");
        cat
    }

    /// Opens (or creates) a store backed by a JSONL file.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref().to_path_buf();
        let mut cat = Self {
            path: Some(path.clone()),
            ..Self::default()
        };
        match File::open(&path) {
            Ok(f) => cat.load_jsonl(BufReader::new(f))?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(cat)
    }

    fn load_jsonl(&mut self, reader: impl BufRead) -> Result<(), CatalogError> {
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let issue = |reason: String| LineIssue { line: i + 1, reason };
            match serde_json::from_str::<CatalogRecord>(&line) {
                Err(e) => self.quarantined.push(issue(format!("unparsable record: {e}"))),
                Ok(rec) => match rec.verify() {
                    Err(reason) => self.quarantined.push(issue(reason)),
                    Ok(()) if self.index.contains_key(&rec.id) => {
                        self.quarantined.push(issue(format!("duplicate id {}", rec.id)))
                    }
                    Ok(()) => self.push(rec),
                },
            }
        }
        Ok(())
    }

    fn push(&mut self, rec: CatalogRecord) {
        self.index.insert(rec.id.clone(), self.records.len());
        self.records.push(rec);
    }

    fn append(&mut self, rec: CatalogRecord) -> Result<(), CatalogError> {
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            let mut line = serde_json::to_string(&rec)?;
            line.push('\n');
            f.write_all(line.as_bytes())?;
        }
        self.push(rec);
        Ok(())
    }

    /// Adds an already built record after verifying it.
    pub fn add_record(&mut self, rec: CatalogRecord) -> Result<Result<Added, String>, CatalogError> {
        if let Err(reason) = rec.verify() {
            return Ok(Err(reason));
        }
        if self.index.contains_key(&rec.id) {
            return Ok(Ok(Added::Duplicate(rec.id)));
        }
        let id = rec.id.clone();
        self.append(rec)?;
        Ok(Ok(Added::New(id)))
    }

    /// Ingests graph6 lines; lines that are not `(r, c)`-graphs are rejected,
    /// undecodable lines are reported and skipped.
    pub fn ingest(&mut self, reader: impl BufRead, source: &str) -> Result<IngestReport, CatalogError> {
        let mut report = IngestReport::default();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text == ">>graph6<<" {
                continue;
            }
            let g = match graph6::decode_with_cap(text, DEFAULT_ORDER_CAP) {
                Ok(g) => g,
                Err(e) => {
                    report.malformed.push(LineIssue {
                        line: i + 1,
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            let Some(rec) = CatalogRecord::from_graph(&g, source) else {
                report.rejected += 1;
                continue;
            };
            match self.add_record(rec)? {
                Ok(Added::New(id)) => {
                    report.accepted += 1;
                    report.accepted_ids.push(id);
                }
                Ok(Added::Duplicate(_)) => report.duplicates += 1,
                Err(_) => report.rejected += 1,
            }
        }
        Ok(report)
    }

    /// Imports JSONL records (for instance from [`Catalog::export`]), re-verifying each.
    pub fn import(&mut self, reader: impl BufRead) -> Result<IngestReport, CatalogError> {
        let mut report = IngestReport::default();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = match serde_json::from_str::<CatalogRecord>(&line) {
                Ok(rec) => rec,
                Err(e) => {
                    report.malformed.push(LineIssue {
                        line: i + 1,
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            match self.add_record(rec)? {
                Ok(Added::New(id)) => {
                    report.accepted += 1;
                    report.accepted_ids.push(id);
                }
                Ok(Added::Duplicate(_)) => report.duplicates += 1,
                Err(_) => report.rejected += 1,
            }
        }
        Ok(report)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CatalogRecord> {
        self.index.get(id).map(|&i| &self.records[i])
    }

    pub fn records(&self) -> &[CatalogRecord] {
        &self.records
    }

    /// Lines from the backing file that failed verification on load.
    pub fn quarantined(&self) -> &[LineIssue] {
        &self.quarantined
    }

    /// Matching records sorted by `(n, id)`.
    pub fn query(&self, q: &Query) -> Vec<&CatalogRecord> {
        let mut out: Vec<&CatalogRecord> = self
            .records
            .iter()
            .filter(|rec| {
                q.r.is_none_or(|r| rec.r == r)
                    && q.c.is_none_or(|c| rec.c == c)
                    && q.n_max.is_none_or(|n| rec.n <= n)
                    && q.planar.is_none_or(|p| rec.planar == p)
            })
            .collect();
        out.sort_by(|a, b| (a.n, &a.id).cmp(&(b.n, &b.id)));
        out
    }

    /// `c ↦` smallest stored order, over records with degree `r`.
    pub fn spectrum(&self, r: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for rec in self.records.iter().filter(|rec| rec.r == r) {
            let e = out.entry(rec.c).or_insert(rec.n);
            *e = (*e).min(rec.n);
        }
        out
    }

    /// `r ↦` smallest stored order, over records with link size `c`.
    pub fn co_spectrum(&self, c: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for rec in self.records.iter().filter(|rec| rec.c == c) {
            let e = out.entry(rec.r).or_insert(rec.n);
            *e = (*e).min(rec.n);
        }
        out
    }

    /// All records in `(n, id)` order.
    pub fn export(&self, format: ExportFormat, out: impl Write) -> Result<(), CatalogError> {
        let records = self.query(&Query::default());
        match format {
            ExportFormat::Jsonl => {
                let mut out = out;
                for rec in records {
                    serde_json::to_writer(&mut out, rec)?;
                    out.write_all(b"\n")?;
                }
                out.flush()?;
            }
            ExportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record([
                    "id",
                    "g6",
                    "n",
                    "r",
                    "c",
                    "planar",
                    "circulant_spec",
                    "constant_link",
                    "source",
                    "certified_smallest",
                ])?;
                for rec in records {
                    w.write_record([
                        rec.id.clone(),
                        rec.g6.clone(),
                        rec.n.to_string(),
                        rec.r.to_string(),
                        rec.c.to_string(),
                        rec.planar.to_string(),
                        rec.circulant_spec.as_ref().map(|s| s.to_string()).unwrap_or_default(),
                        rec.constant_link.clone().unwrap_or_default(),
                        rec.source.clone(),
                        rec.certified_smallest.to_string(),
                    ])?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn ingest_str(cat: &mut Catalog, text: &str) -> IngestReport {
        cat.ingest(text.as_bytes(), "test").unwrap()
    }

    #[test]
    fn ingest_examples() {
        let mut cat = Catalog::in_memory();
        let rep = ingest_str(&mut cat, "C~\n");
        assert_eq!((rep.accepted, rep.rejected, rep.duplicates), (1, 0, 0));
        let rec = &cat.records()[0];
        assert_eq!((rec.n, rec.r, rec.c, rec.planar), (4, 3, 3, true));
        assert_eq!(rec.constant_link.as_deref(), Some(graph6::encode(&complete(3).unwrap()).as_str()));

        let p3 = graph6::encode(&path(3).unwrap());
        let rep = ingest_str(&mut cat, &format!("{p3}\nC~\nnot graph6 \n"));
        assert_eq!((rep.accepted, rep.rejected, rep.duplicates), (0, 1, 1));
        assert_eq!(rep.malformed.len(), 1);
        assert_eq!(rep.malformed[0].line, 3);
        assert_eq!(cat.len(), 1);
    }

    #[test]
    fn relabelled_graphs_are_duplicates() {
        let mut cat = Catalog::in_memory();
        let g = petersen();
        ingest_str(&mut cat, &graph6::encode(&g));
        let perm: Vec<usize> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        let rep = ingest_str(&mut cat, &graph6::encode(&g.permuted(&perm)));
        assert_eq!(rep.duplicates, 1);
        assert_eq!(cat.len(), 1);
    }

    #[test]
    fn queries_and_spectra() {
        let mut cat = Catalog::in_memory();
        for g in [complete_bipartite(3, 3).unwrap(), hypercube(3).unwrap(), prism(3).unwrap(), complete(4).unwrap()] {
            ingest_str(&mut cat, &graph6::encode(&g));
        }
        let r3c0 = cat.query(&Query {
            r: Some(3),
            c: Some(0),
            ..Query::default()
        });
        assert_eq!(r3c0.iter().map(|r| r.n).collect::<Vec<_>>(), vec![6, 8]);
        assert!(cat
            .query(&Query {
                r: Some(2),
                c: Some(2),
                ..Query::default()
            })
            .is_empty());
        let planar3 = cat.query(&Query {
            r: Some(3),
            planar: Some(true),
            ..Query::default()
        });
        assert_eq!(planar3.len(), 3);
        assert_eq!(cat.spectrum(3), BTreeMap::from([(0, 6), (1, 6), (3, 4)]));
        assert_eq!(cat.co_spectrum(0), BTreeMap::from([(3, 6)]));
    }

    #[test]
    fn export_formats() {
        let mut cat = Catalog::in_memory();
        ingest_str(&mut cat, "C~\n");
        let mut out = Vec::new();
        cat.export(ExportFormat::Jsonl, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains("\"C~\""));

        let mut out = Vec::new();
        cat.export(ExportFormat::Csv, &mut out).unwrap();
        let mut rdr = csv::Reader::from_reader(out.as_slice());
        let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
        for col in ["id", "g6", "n", "r", "c", "planar"] {
            assert!(headers.iter().any(|h| h == col), "{col}");
        }
        assert_eq!(rdr.records().count(), 1);

        let mut back = Catalog::in_memory();
        let rep = back.import(text.as_bytes()).unwrap();
        assert_eq!(rep.accepted, 1);
        assert_eq!(back.records(), cat.records());
    }

    #[test]
    fn file_store_quarantines_corrupt_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        {
            let mut cat = Catalog::open(&path).unwrap();
            ingest_str(&mut cat, &format!("C~\n{}\n", graph6::encode(&petersen())));
            assert_eq!(cat.len(), 2);
        }
        let text = std::fs::read_to_string(&path).unwrap();
        // claim the wrong link size for the second record
        let corrupted = text.replacen("\"c\":0", "\"c\":1", 1) + "{not json}\n";
        std::fs::write(&path, corrupted).unwrap();
        let cat = Catalog::open(&path).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.quarantined().len(), 2);
        assert_eq!(cat.records()[0].g6, "C~");
    }

    #[test]
    fn circulant_specs_are_checked() {
        let g = make_circulant_with_cap(&"12:1,3,4,6".parse().unwrap(), 64).unwrap();
        let mut rec = CatalogRecord::from_graph(&g, "circulant").unwrap();
        rec.circulant_spec = Some("12:1,3,4,6".parse().unwrap());
        assert_eq!(rec.verify(), Ok(()));
        rec.circulant_spec = Some("12:1,2,4,6".parse().unwrap());
        assert!(rec.verify().is_err());
    }

    #[test]
    fn seed_reproduces_small_degree_table() {
        let cat = Catalog::seed();
        assert!(cat.quarantined().is_empty(), "{:?}", cat.quarantined());
        let table: [&[Option<usize>]; 6] = [
            &[Some(2)],
            &[Some(4), Some(3)],
            &[Some(6), Some(6), None, Some(4)],
            &[Some(8), Some(9), Some(9), Some(7), Some(6), None, Some(5)],
            &[Some(10), Some(12), Some(12), Some(10), Some(12), Some(12), Some(8), None, None, None, Some(6)],
            &[
                Some(12),
                Some(15),
                Some(15),
                Some(13),
                Some(12),
                Some(12),
                Some(11),
                Some(12),
                Some(12),
                Some(9),
                Some(9),
                None,
                Some(8),
                None,
                None,
                Some(7),
            ],
        ];
        for (i, row) in table.iter().enumerate() {
            let r = i + 1;
            let want: BTreeMap<usize, usize> =
                row.iter().enumerate().filter_map(|(c, n)| n.map(|n| (c, n))).collect();
            let got = cat.spectrum(r);
            assert_eq!(got.keys().collect::<Vec<_>>(), want.keys().collect::<Vec<_>>(), "r={r}");
            for (c, n) in &want {
                if (r, *c) == (6, 2) {
                    // existence only: the stored witness is a product on 24 vertices
                    assert!(got[c] > *n, "({r},{c})");
                } else {
                    assert_eq!(got[c], *n, "({r},{c})");
                }
            }
        }
    }
}
