use tropical_rating::document::parse_problem;
use tropical_rating::multicriteria::{ahp_solve, lca_solve, wgm_solve, SolveOptions};
use tropical_rating::pairwise::RECIPROCITY_TOLERANCE;
use tropical_rating::report::{classical_report, lca_reports, render_text, InputEcho, ReportDocument};

fn main() {
    let path = std::env::args().nth(1).expect("usage: school <problem.json>");
    let text = std::fs::read_to_string(path).expect("readable file");
    let problem = parse_problem(&text, RECIPROCITY_TOLERANCE).expect("valid problem");
    let opts = SolveOptions::default();
    let lca = lca_solve(&problem, &opts).expect("lca");
    println!("D =\n{:.4}", lca.criteria_generating.matrix());
    println!("P =\n{:.4}", lca.headline().weighted);
    println!("Q =\n{:.4}", lca.headline().generating.matrix());
    println!("R =\n{:.4}", lca.worst_stage.weighted);
    println!("S =\n{:.4}", lca.worst_stage.generating.matrix());
    let mut methods = lca_reports(&problem, &lca);
    methods.push(classical_report(&problem, &ahp_solve(&problem, &opts).expect("ahp")));
    methods.push(classical_report(&problem, &wgm_solve(&problem, &opts).expect("wgm")));
    let doc = ReportDocument::new(InputEcho::from_problem(&problem), methods);
    print!("{}", render_text(&doc, 4));
}
