use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::family::{check_range, derive_scaled, enumerate_family, parent_of, FamilyId};
use crate::error::{Error, Result};
use crate::exactalg::MultiPoly;

/// On-disk store of distribution polynomials: `<root>/<family>/<n>.poly`,
/// each file holding the canonical text form.
#[derive(Clone, Debug)]
pub struct DistributionCache {
    root: PathBuf,
}

impl DistributionCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DistributionCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, family: FamilyId, n: usize) -> PathBuf {
        self.root.join(family.name()).join(format!("{n}.poly"))
    }

    pub fn load(&self, family: FamilyId, n: usize) -> Result<Option<MultiPoly>> {
        let path = self.path(family, n);
        match fs::read_to_string(&path) {
            Ok(text) => text.trim().parse().map(Some).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store(&self, family: FamilyId, n: usize, poly: &MultiPoly) -> Result<()> {
        let path = self.path(family, n);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("poly.tmp{}", std::process::id()));
        fs::write(&tmp, format!("{poly}\n"))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Every cached entry as `(family, n, path)`.
    pub fn entries(&self) -> Result<Vec<(FamilyId, usize, PathBuf)>> {
        let mut out = Vec::new();
        for family in FamilyId::ALL {
            let dir = self.root.join(family.name());
            let Ok(read) = fs::read_dir(&dir) else { continue };
            for entry in read {
                let path = entry?.path();
                let n = path
                    .file_name()
                    .and_then(|s| s.to_str())
                    .and_then(|s| s.strip_suffix(".poly"))
                    .and_then(|s| s.parse::<usize>().ok());
                if let Some(n) = n {
                    out.push((family, n, path));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Per-run memo of distribution polynomials, optionally backed by a
/// [`DistributionCache`]. Safe to share between threads.
#[derive(Debug, Default)]
pub struct Distributions {
    memo: Mutex<HashMap<(FamilyId, usize), MultiPoly>>,
    disk: Option<DistributionCache>,
}

impl Distributions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: DistributionCache) -> Self {
        Distributions { memo: Mutex::default(), disk: Some(cache) }
    }

    pub fn get(&self, family: FamilyId, n: usize) -> Result<MultiPoly> {
        check_range(n, family)?;
        if let Some(p) = self.memo.lock().unwrap().get(&(family, n)) {
            return Ok(p.clone());
        }
        let poly = match &self.disk {
            Some(disk) => match disk.load(family, n)? {
                Some(p) => p,
                None => {
                    let p = self.compute(family, n)?;
                    disk.store(family, n, &p)?;
                    p
                }
            },
            None => self.compute(family, n)?,
        };
        self.memo.lock().unwrap().insert((family, n), poly.clone());
        Ok(poly)
    }

    fn compute(&self, family: FamilyId, n: usize) -> Result<MultiPoly> {
        match parent_of(family) {
            Some(parent) => derive_scaled(n, family, &self.get(parent, n)?),
            None => Ok(enumerate_family(n, family)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::distribution;

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DistributionCache::new(dir.path());
        let d = Distributions::with_cache(cache.clone());
        let b3 = d.get(FamilyId::B, 3).unwrap();
        assert_eq!(b3, distribution(3, FamilyId::B).unwrap());
        assert!(cache.path(FamilyId::B, 3).exists());
        assert_eq!(cache.load(FamilyId::B, 3).unwrap().unwrap(), b3);
        // a fresh context reads the file instead of enumerating
        let fresh = Distributions::with_cache(cache.clone());
        assert_eq!(fresh.get(FamilyId::B, 3).unwrap(), b3);
        assert_eq!(cache.entries().unwrap().len(), 1);
    }

    #[test]
    fn corrupt_cache_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DistributionCache::new(dir.path());
        fs::create_dir_all(dir.path().join("A")).unwrap();
        fs::write(cache.path(FamilyId::A, 2), "1 + garbage").unwrap();
        assert!(Distributions::with_cache(cache).get(FamilyId::A, 2).is_err());
    }
}
