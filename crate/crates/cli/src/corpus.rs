//! The shipped identity corpus, embedded at build time.

use rrbailey_core::dsl::{parse, IdentityDoc};
use rrbailey_core::Result;

/// `(file name, contents)` in manifest order.
pub const FILES: [(&str, &str); 9] = [
    ("rogers_ramanujan.ids", include_str!("../corpus/rogers_ramanujan.ids")),
    ("family_1_2_4.ids", include_str!("../corpus/family_1_2_4.ids")),
    ("family_1_2_3.ids", include_str!("../corpus/family_1_2_3.ids")),
    ("family_1_3_1.ids", include_str!("../corpus/family_1_3_1.ids")),
    ("family_1_4_1.ids", include_str!("../corpus/family_1_4_1.ids")),
    ("family_1_4_4.ids", include_str!("../corpus/family_1_4_4.ids")),
    ("family_2_2_2.ids", include_str!("../corpus/family_2_2_2.ids")),
    ("family_2_2_3.ids", include_str!("../corpus/family_2_2_3.ids")),
    ("family_2_2_4.ids", include_str!("../corpus/family_2_2_4.ids")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: &'static str,
    pub name: String,
    /// `(d, e, k, i)`.
    pub family: Option<(u32, u32, u32, u32)>,
    pub modulus: Option<u32>,
}

/// Every shipped document, in manifest order.
pub fn docs() -> Result<Vec<(&'static str, IdentityDoc)>> {
    let mut out = Vec::new();
    for (file, text) in FILES {
        out.extend(parse(text)?.into_iter().map(|d| (file, d)));
    }
    Ok(out)
}

pub fn manifest() -> Result<Vec<ManifestEntry>> {
    Ok(docs()?
        .into_iter()
        .map(|(file, d)| ManifestEntry {
            file,
            family: d.family.map(|t| (t.params.d, t.params.e, t.params.k, t.member)),
            modulus: d.modulus,
            name: d.name,
        })
        .collect())
}
