use qlambert_wasm::{rank_table_text, series_text, verify_text};

const PAGE: &str = include_str!("../www/index.html");

fn between<'a>(s: &'a str, start: &str, end: &str) -> &'a str {
    let i = s.find(start).expect("start marker") + start.len();
    &s[i..i + s[i..].find(end).expect("end marker")]
}

#[test]
fn default_expression_expands() {
    let expr = between(PAGE, r#"id="expr" value=""#, "\"");
    let out = series_text(expr, 20).unwrap();
    assert_eq!(out.lines().count(), 21);
}

#[test]
fn default_script_verifies() {
    let script = between(PAGE, r#"<textarea id="script" rows="6">"#, "</textarea>");
    let out = verify_text(script).unwrap();
    assert!(out.ends_with("2 passed, 1 failed of 3\n"), "{out}");
}

#[test]
fn default_rank_table() {
    let out = rank_table_text(30).unwrap();
    assert_eq!(out.lines().count(), 32);
}

#[test]
fn page_imports_exports() {
    for name in ["series", "rank_table", "verify"] {
        assert!(PAGE.contains(&format!("{name}(")), "{name}");
    }
}
