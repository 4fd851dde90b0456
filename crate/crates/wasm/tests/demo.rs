use jkres_wasm::{inverse_laplace_text, jk_residue_text, normalize_text, parse_arrangement};

const A2: &str = "1,0; 0,1; 1,1";

#[test]
fn normalize_a2() {
    assert_eq!(normalize_text(A2, "1/(z1*z2*(z1+z2))").unwrap(), "1/(z1^2*z2) - 1/(z1^2*(z1 + z2))");
    assert_eq!(normalize_text(A2, "1/(z1*z2)").unwrap(), "1/(z1*z2)");
}

#[test]
fn residues_a2() {
    assert_eq!(jk_residue_text(A2, "1/(z2*(z1+z2))", 0).unwrap(), "((1,0),(0,1)): 1\n((1,0),(1,1)): -1\n");
    assert_eq!(jk_residue_text(A2, "1/(z1*z2*(z1+z2))", -1).unwrap(), "((1,0),(0,1)): -h1\n((1,0),(1,1)): h1 - h2\n");
}

#[test]
fn inverse_laplace_a2() {
    let t = inverse_laplace_text(A2, "1/(z1*z2*(z1+z2))", "2,1", false).unwrap();
    assert!(t.contains("h1 on chamber(1,2)\n"));
    assert!(t.contains("h2 on chamber(2,1)\n"));
    assert_eq!(t.lines().filter(|l| l.starts_with("0 on")).count(), 4);
    let svg = inverse_laplace_text(A2, "1/(z1*z2*(z1+z2))", "2,1", true).unwrap();
    assert!(svg.contains("<svg") && svg.contains(">h1<"));
}

#[test]
fn errors_are_messages() {
    assert!(jk_residue_text(A2, "1/z1", 2).is_err());
    assert!(parse_arrangement("1,0").unwrap_err().contains("span"));
    assert!(parse_arrangement("").is_err());
    assert!(normalize_text(A2, "1/(z1-z2)").unwrap_err().contains("parse"));
    assert!(inverse_laplace_text(A2, "1/(z1*z2)", "1,0", false).is_err());
    assert!(inverse_laplace_text("1,0,0; 0,1,0; 0,0,1", "1/(z1*z2*z3)", "1,1,1", true).is_err());
}
