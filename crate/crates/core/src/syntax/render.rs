use super::Expression;

const ALT: u8 = 1;
const PAR: u8 = 2;
const SEQ: u8 = 3;
const STAR: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expression) -> u8 {
    match e {
        Expression::Alt(..) => ALT,
        Expression::Par(..) => PAR,
        Expression::Seq(..) => SEQ,
        Expression::Star(_) => STAR,
        Expression::Deadlock | Expression::Empty | Expression::Act(_) | Expression::Encap(..) => {
            ATOM
        }
    }
}

/// Renders `e` with the fewest parentheses that make it parse back to the
/// same tree.
pub fn render_expression(e: &Expression) -> String {
    let mut out = String::new();
    write(e, 0, &mut out);
    out
}

fn write(e: &Expression, min: u8, out: &mut String) {
    let wrap = precedence(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expression::Deadlock => out.push('0'),
        Expression::Empty => out.push('1'),
        Expression::Act(a) => out.push_str(a.name()),
        Expression::Alt(p, q) => {
            write(p, ALT, out);
            out.push('+');
            write(q, ALT + 1, out);
        }
        Expression::Par(p, q) => {
            write(p, PAR, out);
            out.push_str(" || ");
            write(q, PAR + 1, out);
        }
        Expression::Seq(p, q) => {
            write(p, SEQ, out);
            out.push('.');
            write(q, SEQ + 1, out);
        }
        Expression::Star(p) => {
            write(p, STAR, out);
            out.push('*');
        }
        Expression::Encap(h, p) => {
            out.push_str("encap{");
            for (i, a) in h.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(a.name());
            }
            out.push_str("}(");
            write(p, 0, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}
