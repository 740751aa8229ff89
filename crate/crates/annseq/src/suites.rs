//! Built-in benchmark families.
//!
//! Random families are given by the monomials defining their staircase;
//! the fixed-value families ship as JSON fixtures.

use annseq_core::{Field, SequenceFamily};

use crate::gen::{parse_monomial_list, random_staircase_sequence, RandomScalar, DEFAULT_VARS};
use crate::io::{InputError, SequenceDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StaircaseFamily {
    pub name: &'static str,
    pub defining: &'static str,
    /// Published Hankel size.
    pub paper_s: usize,
}

pub const STAIRCASE_FAMILIES: [StaircaseFamily; 10] = [
    StaircaseFamily { name: "J1", defining: "x^20,x^19*y^3,y^4", paper_s: 79 },
    StaircaseFamily { name: "J2", defining: "x^50,x^20*y^3,y^4", paper_s: 170 },
    StaircaseFamily { name: "J3", defining: "x^50,x^49*y^3,y^4", paper_s: 199 },
    StaircaseFamily { name: "J4", defining: "x^2,y^5,z^4,y*z^2", paper_s: 24 },
    StaircaseFamily { name: "J5", defining: "x^2,y^5,z^4,y^3*z^2", paper_s: 32 },
    StaircaseFamily { name: "J6", defining: "x^4,y^5,z^4,y^4*z^3", paper_s: 76 },
    StaircaseFamily { name: "J9", defining: "x^5,y^5,z^4,y^3*z^2", paper_s: 80 },
    StaircaseFamily { name: "J10", defining: "x^8,y^5,z^4,x^5*z^2", paper_s: 130 },
    StaircaseFamily { name: "J11", defining: "x^13,y^5,z^4,x^5*z^2", paper_s: 180 },
    StaircaseFamily { name: "J12", defining: "x^13,y^5,z^4,x^12*z^2", paper_s: 250 },
];

impl StaircaseFamily {
    pub fn by_name(name: &str) -> Option<&'static StaircaseFamily> {
        STAIRCASE_FAMILIES.iter().find(|f| f.name == name)
    }

    pub fn instance<F: RandomScalar>(&self, field: &F, seed: u64) -> Result<SequenceFamily<F::Elem>, InputError> {
        let (n, defining) = parse_monomial_list(self.defining, &DEFAULT_VARS)?;
        Ok(SequenceFamily::single(random_staircase_sequence(field, n, &defining, seed)?)?)
    }

    pub fn var_names(&self) -> Vec<String> {
        let n = parse_monomial_list(self.defining, &DEFAULT_VARS).map_or(0, |(n, _)| n);
        DEFAULT_VARS[..n].iter().map(|s| s.to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
}

pub const FIXTURES: [Fixture; 7] = [
    Fixture { name: "example", json: include_str!("../fixtures/example.json") },
    Fixture { name: "l0", json: include_str!("../fixtures/l0.json") },
    Fixture { name: "l1", json: include_str!("../fixtures/l1.json") },
    Fixture { name: "l5", json: include_str!("../fixtures/l5.json") },
    Fixture { name: "l6", json: include_str!("../fixtures/l6.json") },
    Fixture { name: "l11", json: include_str!("../fixtures/l11.json") },
    Fixture { name: "corner_cut", json: include_str!("../fixtures/corner_cut.json") },
];

impl Fixture {
    pub fn by_name(name: &str) -> Option<&'static Fixture> {
        FIXTURES.iter().find(|f| f.name == name)
    }

    pub fn document(&self) -> SequenceDocument {
        SequenceDocument::from_json(self.json).expect("bundled fixture parses")
    }

    /// The fixture values read in `field`; every fixture holds integers only.
    pub fn family<F: Field>(&self, field: &F) -> SequenceFamily<F::Elem> {
        self.document().family(field).expect("bundled fixture is valid")
    }
}

/// Published values of `s - r`, for the families that report one.
pub const PAPER_DIMS: [(&str, usize); 8] =
    [("J12", 36), ("J3", 51), ("J1", 25), ("l6", 7), ("J11", 141), ("J9", 32), ("J4", 15), ("l5", 7)];

pub fn paper_dim(name: &str) -> Option<usize> {
    PAPER_DIMS.iter().find(|(n, _)| *n == name).map(|&(_, d)| d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use annseq_core::{PrimeField, Rationals};

    #[test]
    fn fixtures_load_in_both_fields() {
        for fx in FIXTURES {
            let q = fx.family(&Rationals);
            let p = fx.family(&PrimeField::default());
            assert_eq!(q.union_support(), p.union_support(), "{}", fx.name);
        }
        assert_eq!(Fixture::by_name("l5").unwrap().family(&Rationals).union_support().len(), 8);
        assert_eq!(Fixture::by_name("l6").unwrap().family(&Rationals).union_support().len(), 15);
    }

    #[test]
    fn family_lookup() {
        assert_eq!(StaircaseFamily::by_name("J6").unwrap().var_names(), ["x", "y", "z"]);
        assert!(StaircaseFamily::by_name("J7").is_none());
        assert_eq!(paper_dim("J1"), Some(25));
        assert_eq!(paper_dim("J2"), None);
    }
}
