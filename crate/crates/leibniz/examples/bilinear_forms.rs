use leibniz::bilinear::{congruence_canonical, congruent, extract_v_form};
use leibniz::catalogue::Catalogue;
use leibniz::field::parse_matrix;
use leibniz::linalg::Matrix;

fn main() {
    for text in ["[[0,0],[0,0]]", "[[0,1],[-1,0]]", "[[2,1],[1,0]]", "[[1,1],[1,1]]", "[[0,1],[-1,3]]", "[[0,2],[4,0]]", "[[1,3],[2,0]]"] {
        let m = Matrix::from_rows(parse_matrix(text).unwrap(), &()).unwrap();
        let c = congruence_canonical(&m);
        println!("{text:>16}  kind {}  Q = {}  checked {}", c.kind_string(), c.q_string(), c.verify(&m));
    }

    let m1 = Matrix::from_rows(parse_matrix("[[0,2],[4,0]]").unwrap(), &()).unwrap();
    for other in ["[[0,1],[2,0]]", "[[0,1],[8,0]]"] {
        let m2 = Matrix::from_rows(parse_matrix(other).unwrap(), &()).unwrap();
        println!("[[0,2],[4,0]] congruent to {other}: {}", congruent(&m1, &m2));
    }

    let cat = Catalogue::bundled();
    for spec in ["A_1", "A_5:alpha=2", "A_9"] {
        let (entry, params) = cat.point(spec).unwrap();
        let a = cat.instantiate(entry, &params).unwrap();
        match extract_v_form(&a) {
            Ok((form, basis)) => {
                let c = congruence_canonical(&form);
                println!("{spec}: form {form} on complement {:?} is kind {}", basis.complement, c.kind_string());
            }
            Err(e) => println!("{spec}: {e}"),
        }
    }
}
