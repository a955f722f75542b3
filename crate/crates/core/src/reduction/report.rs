use std::fmt::Write;

use super::{BranchClass, Certificate, CertificateNode};

fn branch_text(b: &BranchClass) -> String {
    match b {
        BranchClass::BaseCaseLeaf => "all roots simple: base-case leaf".into(),
        BranchClass::CaseA { r, beta } => format!("purely inseparable of degree {r} at beta = {beta:?}: recentre in place"),
        BranchClass::CaseB { factors } => {
            let fs: Vec<String> = factors.iter().map(|f| format!("({})^{}", f.text, f.mult)).collect();
            format!("repeated factors {}: extend and recentre", fs.join(", "))
        }
        BranchClass::OvertOnly => "no segment of positive slope after recentring: overt only".into(),
    }
}

fn node(out: &mut String, n: &CertificateNode, indent: usize) {
    let pad = "  ".repeat(indent);
    let via = n.via.as_ref().map(|v| format!(" via ({})", v.text)).unwrap_or_default();
    let _ = writeln!(
        out,
        "{pad}S = {:?}{via}, mu = {}, e_S = {}, c_S = {}  [F_{}^{}, e = {}]",
        n.sdata.s, n.sdata.mu, n.sdata.e_s, n.sdata.c_s, n.field.p, n.field.residue_degree, n.field.ramification
    );
    let fs: Vec<String> = n.factors.iter().map(|f| format!("({})^{}", f.text, f.mult)).collect();
    let _ = writeln!(out, "{pad}  residue polynomial {} = {}", n.respoly.text, fs.join(" * "));
    let _ = writeln!(out, "{pad}  {}; overt bound {}", branch_text(&n.branch), n.overt_bound);
    for c in &n.children {
        node(out, c, indent + 1);
    }
}

/// Plain-text narration of a certificate, one block per node.
pub fn render_report(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree {} over F_{}((s)), precision {}", cert.degree, cert.p, cert.precision);
    for r in &cert.roots {
        node(&mut out, r, 0);
    }
    let _ = writeln!(
        out,
        "total bound {}, covert leaves {}, depth {}",
        cert.total_bound, cert.covert_leaf_count, cert.depth
    );
    out
}
