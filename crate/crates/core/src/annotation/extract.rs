//! `<script type="application/ld+json">` extraction.
//!
//! A small forward scanner rather than a full HTML parser: comments are
//! skipped, `<script>` start tags are tokenized for their attributes, and
//! the raw text up to the matching `</script` is returned.

use std::borrow::Cow;
use std::sync::OnceLock;

use encoding_rs::Encoding;
use regex::bytes::Regex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedBlock {
    pub raw: String,
    pub block_index: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub blocks: Vec<ExtractedBlock>,
    pub warnings: Vec<String>,
}

fn is_ldjson(type_attr: &str) -> bool {
    let mime = type_attr.split(';').next().unwrap_or("");
    mime.trim().eq_ignore_ascii_case("application/ld+json")
}

struct StartTag {
    type_attr: Option<String>,
    end: usize,
}

/// Tokenizes the attributes of a start tag whose name ends at `pos`.
/// Returns `None` when the tag never closes.
fn start_tag(html: &str, mut pos: usize) -> Option<StartTag> {
    let bytes = html.as_bytes();
    let mut type_attr = None;
    loop {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'/') {
            pos += 1;
        }
        if pos >= bytes.len() {
            return None;
        }
        if bytes[pos] == b'>' {
            return Some(StartTag {
                type_attr,
                end: pos + 1,
            });
        }
        let name_start = pos;
        while pos < bytes.len() && !matches!(bytes[pos], b'=' | b'>' | b'/') && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let name = &html[name_start..pos];
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let mut value = String::new();
        if pos < bytes.len() && bytes[pos] == b'=' {
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            match bytes.get(pos) {
                Some(&q) if q == b'"' || q == b'\'' => {
                    let close = html[pos + 1..].find(q as char)? + pos + 1;
                    value = html[pos + 1..close].to_string();
                    pos = close + 1;
                }
                Some(_) => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos] != b'>' && !bytes[pos].is_ascii_whitespace() {
                        pos += 1;
                    }
                    value = html[start..pos].to_string();
                }
                None => return None,
            }
        }
        if name.eq_ignore_ascii_case("type") && type_attr.is_none() {
            type_attr = Some(value);
        }
    }
}

fn find_ci(haystack: &str, from: usize, needle: &str) -> Option<usize> {
    let hay = haystack.as_bytes();
    let n = needle.as_bytes();
    if hay.len() < n.len() {
        return None;
    }
    (from..=hay.len() - n.len()).find(|&i| hay[i..i + n.len()].eq_ignore_ascii_case(n))
}

fn line_of(html: &str, pos: usize) -> usize {
    html[..pos].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Returns the text of every JSON-LD script element in document order.
/// Tag and attribute names match case-insensitively; other script types
/// are skipped. An unterminated JSON-LD script yields a warning and no
/// block.
pub fn extract_jsonld_blocks(html: &str) -> Extraction {
    let bytes = html.as_bytes();
    let mut out = Extraction::default();
    let mut pos = 0;
    while let Some(off) = html[pos..].find('<') {
        let lt = pos + off;
        if html[lt..].starts_with("<!--") {
            match html[lt + 4..].find("-->") {
                Some(end) => {
                    pos = lt + 4 + end + 3;
                    continue;
                }
                None => break,
            }
        }
        let after = lt + "<script".len();
        let is_script = bytes.len() >= after
            && bytes[lt..after].eq_ignore_ascii_case(b"<script")
            && bytes
                .get(after)
                .is_some_and(|&b| b.is_ascii_whitespace() || b == b'>' || b == b'/');
        if !is_script {
            pos = lt + 1;
            continue;
        }
        let Some(tag) = start_tag(html, after) else {
            out.warnings
                .push(format!("line {}: unterminated <script> start tag", line_of(html, lt)));
            break;
        };
        let wanted = tag.type_attr.as_deref().is_some_and(is_ldjson);
        let Some(close) = find_ci(html, tag.end, "</script") else {
            if wanted {
                out.warnings.push(format!(
                    "line {}: unterminated ld+json <script>; block skipped",
                    line_of(html, lt)
                ));
            }
            break;
        };
        if wanted {
            out.blocks.push(ExtractedBlock {
                raw: html[tag.end..close].to_string(),
                block_index: out.blocks.len(),
            });
        }
        pos = match html[close..].find('>') {
            Some(gt) => close + gt + 1,
            None => html.len(),
        };
    }
    out
}

fn meta_charset() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r#"(?i)<meta[^>]+charset\s*=\s*["']?\s*([A-Za-z0-9_:.\-]+)"#).expect("valid regex"))
}

/// Decodes page bytes: BOM first, then a `<meta charset>` declaration in
/// the first 1024 bytes, else UTF-8. Replacement characters produce a
/// warning.
pub fn decode_html(bytes: &[u8]) -> (String, Option<String>) {
    let encoding = Encoding::for_bom(bytes)
        .map(|(e, _)| e)
        .or_else(|| {
            let head = &bytes[..bytes.len().min(1024)];
            meta_charset().captures(head).and_then(|c| Encoding::for_label(&c[1]))
        })
        .unwrap_or(encoding_rs::UTF_8);
    let (text, used, had_errors): (Cow<str>, _, _) = encoding.decode(bytes);
    let warning = had_errors.then(|| format!("invalid {} byte sequences replaced", used.name()));
    (text.into_owned(), warning)
}
