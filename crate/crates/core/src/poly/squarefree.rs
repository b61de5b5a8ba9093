use super::gcd::{content_in, gcd_unchecked};
use super::Polynomial;
use crate::error::{Error, Result};

/// Squarefree decomposition `f = c * prod factor_i^exponent_i`.
///
/// Works one variable at a time: Yun's algorithm on the primitive part in the
/// first variable present, then recursion on the content (which no longer
/// involves that variable). Factors are normalized, squarefree and pairwise
/// coprime. Output is sorted by exponent (descending), then by factor.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut out = Vec::new();
    decompose(f, &mut out);
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn decompose(f: &Polynomial, out: &mut Vec<(Polynomial, u32)>) {
    let Some(var) = (0..f.nvars()).find(|&v| f.degree_in(v).unwrap_or(0) > 0) else {
        return;
    };
    let content = content_in(f, var);
    let primitive = f.exact_div(&content).expect("content divides");
    yun(&primitive, var, out);
    if !content.is_constant() {
        decompose(&content, out);
    }
}

fn yun(f: &Polynomial, var: usize, out: &mut Vec<(Polynomial, u32)>) {
    let df = f.derivative(var);
    let a0 = gcd_unchecked(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(var);
    let mut i = 1;
    while b.degree_in(var).unwrap_or(0) > 0 {
        let a = gcd_unchecked(&b, &d);
        if !a.is_constant() {
            out.push((a.normalize(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative(var);
        i += 1;
    }
}

/// Product of the distinct squarefree factors: the reduced equation of `V(f)`.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    let parts = squarefree_decomposition(f)?;
    let mut acc = Polynomial::one(f.ring());
    for (p, _) in &parts {
        acc = &acc * p;
    }
    Ok(acc.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn ring() -> Ring {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, Some(&ring())).unwrap()
    }

    fn multiply_back(parts: &[(Polynomial, u32)]) -> Polynomial {
        parts
            .iter()
            .fold(Polynomial::one(&ring()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn monomial_times_linear_form() {
        let f = p("x^3*y^2*(x+y)");
        let parts = squarefree_decomposition(&f).unwrap();
        let mut got: Vec<(String, u32)> = parts.iter().map(|(g, e)| (g.to_string(), *e)).collect();
        got.sort();
        assert_eq!(
            got,
            vec![("x".into(), 3), ("x + y".into(), 1), ("y".into(), 2)]
        );
        assert_eq!(multiply_back(&parts).normalize(), f.normalize());
    }

    #[test]
    fn squarefree_input_is_its_own_decomposition() {
        let f = p("x^2 + y^2 - 1");
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn square_of_linear_form() {
        let f = p("(x+y)^2");
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts, vec![(p("x+y"), 2)]);
        // oracle: gcd with every partial derivative is x+y
        for v in 0..2 {
            assert_eq!(gcd_unchecked(&f, &f.derivative(v)), p("x+y"));
        }
    }

    #[test]
    fn constant_input_is_rejected() {
        assert_eq!(squarefree_decomposition(&p("7")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn squarefree_part_of_mixed_powers() {
        let f = p("3*(y - x^2)^3*(y + x^2)*z^2");
        assert_eq!(squarefree_part(&f).unwrap(), p("(y - x^2)*(y + x^2)*z").normalize());
    }

    mod props {
        use super::*;
        use crate::poly::{Monomial, Rational};
        use proptest::prelude::*;

        fn factor() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec(((0u32..2, 0u32..3, 0u32..2), -2i64..3), 1..4).prop_map(|ts| {
                Polynomial::from_terms(
                    &ring(),
                    ts.into_iter().map(|((a, b, c), k)| {
                        (Monomial::new(vec![a, b, c]), Rational::from_integer(k.into()))
                    }),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]
            #[test]
            fn multiplies_back_up_to_constant(
                fs in proptest::collection::vec((factor(), 1u32..4), 1..3)
            ) {
                let f = fs.iter().fold(Polynomial::one(&ring()), |acc, (g, e)| &acc * &g.pow(*e));
                prop_assume!(!f.is_constant());
                let parts = squarefree_decomposition(&f).unwrap();
                prop_assert_eq!(multiply_back(&parts).normalize(), f.normalize());
                for (i, (a, _)) in parts.iter().enumerate() {
                    for (b, _) in &parts[i + 1..] {
                        prop_assert!(gcd_unchecked(a, b).is_constant());
                    }
                }
            }
        }
    }
}
