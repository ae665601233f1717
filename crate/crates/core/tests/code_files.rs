use proptest::prelude::*;

use homds::codes::{parse_code, same_code, write_code};
use homds::constructions::{construct, ConstructionName, ConstructionParams};
use homds::fields::{parse_element, parse_field, write_field, Extension, FieldSpec};
use homds::mdscheck::is_mds_ell;

#[test]
fn constructed_codes_survive_the_file_format() {
    for name in ConstructionName::ALL {
        let mut params = ConstructionParams::new(name, 6);
        if name == ConstructionName::GeneralEll {
            params.ell = 2;
        }
        let c = construct(&params).unwrap();
        let text = write_code(&c.code, &c.header());
        let back = parse_code(&text).unwrap();
        assert_eq!(back, c.code, "{name}");
        assert!(same_code(&back, &c.code));
        for line in c.header() {
            assert!(text.contains(&format!("# {line}\n")));
        }
    }
}

#[test]
fn parsed_code_keeps_its_verdict() {
    let c = construct(&ConstructionParams::new(ConstructionName::K3N4, 7)).unwrap();
    let back = parse_code(&write_code(&c.code, &[])).unwrap();
    assert_eq!(is_mds_ell(&back, 3).verdict, is_mds_ell(&c.code, 3).verdict);
}

proptest! {
    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        use rand::SeedableRng;
        let field = FieldSpec::new(3, &[Extension::auto(2), Extension::auto(3)]).unwrap();
        let (parsed, _) = parse_field(write_field(&field).lines()).unwrap();
        prop_assert_eq!(&parsed, &field);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = field.random(&mut rng);
        prop_assert_eq!(parse_element(&field, &x.to_string()).unwrap(), x);
    }
}
