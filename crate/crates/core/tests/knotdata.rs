use habiro_core::habiro::integrality_of;
use habiro_core::knotdata::{
    colored_jones_from_cyclotomic, cyclotomic_from_colored_jones, mirror_oracle, oracle_fig8,
    oracle_unknot, parse_knot_file, KnotFile,
};
use habiro_core::LaurentPoly;

#[test]
fn builtin_oracles_are_integral() {
    for o in [oracle_unknot(), oracle_fig8(), mirror_oracle(&oracle_fig8())] {
        for k in 0..=20 {
            assert!(integrality_of(&o.coeff(k).unwrap(), k as u32).strong, "{} k = {k}", o.name());
        }
    }
}

#[test]
fn inversion_round_trip() {
    for o in [oracle_unknot(), oracle_fig8(), mirror_oracle(&oracle_fig8())] {
        let jones = colored_jones_from_cyclotomic(&o, 15).unwrap();
        let back = cyclotomic_from_colored_jones("x", &jones).unwrap();
        assert_eq!(back.coeffs_upto(15).unwrap(), o.coeffs_upto(15).unwrap());
        assert_eq!(colored_jones_from_cyclotomic(&back, 15).unwrap(), jones);
    }
}

#[test]
fn figure_eight_colored_jones() {
    let jones = colored_jones_from_cyclotomic(&oracle_fig8(), 1).unwrap();
    assert!(jones[0].is_one());
    // J(V_1) = [2] (q^2 - q + 1 - q^-1 + q^-2) in this normalization's units
    let body = LaurentPoly::from_terms([(-8, 1), (-4, -1), (0, 1), (4, -1), (8, 1)]);
    let two = LaurentPoly::from_terms([(-2, 1), (2, 1)]);
    assert_eq!(jones[1], &two * &body);
}

#[test]
fn knot_files() {
    let f = KnotFile::from_oracle(&oracle_fig8(), 5).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let o = parse_knot_file(&text).unwrap();
    assert_eq!(o.max_k(), Some(5));
    assert_eq!(o.coeffs_upto(5).unwrap(), oracle_fig8().coeffs_upto(5).unwrap());
    assert!(o.coeff(6).is_err());
    let short = text.replace("\"max_index\":5", "\"max_index\":6");
    assert!(parse_knot_file(&short).is_err());
    let extra = text.replacen('{', "{\"extra\":1,", 1);
    assert!(parse_knot_file(&extra).is_err());
}
