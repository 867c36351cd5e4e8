//! Built-in identity suites, stored as source text and compiled on load.
//!
//! Non-multilinear defining laws (flexibility, alternativity, the Malcev
//! identity) are shipped in their full linearizations, which are equivalent
//! over a field of characteristic 0.

use super::{parse_identity, IdentityError, IdentitySuite};

const BOL: &[(&str, &str)] = &[
    ("B1", "x*y + y*x = 0"),
    ("B2", "{x,y,z} + {y,x,z} = 0"),
    ("B3", "cyc(x,y,z; {x,y,z}) = 0"),
    ("B4", "{x,y,u*v} = {x,y,u}*v + u*{x,y,v} + {u,v,x*y} - (u*v)*(x*y)"),
    ("B5", "{x,y,{u,v,w}} = {{x,y,u},v,w} + {u,{x,y,v},w} + {u,v,{x,y,w}}"),
];

const HOM_BOL: &[(&str, &str)] = &[
    ("HB1", "A(x*y) = A(x)*A(y)"),
    ("HB2", "A({x,y,z}) = {A(x),A(y),A(z)}"),
    ("HB3", "x*y + y*x = 0"),
    ("HB4", "{x,y,z} + {y,x,z} = 0"),
    ("HB5", "cyc(x,y,z; {x,y,z}) = 0"),
    (
        "HB6",
        "{A(x),A(y),u*v} = {x,y,u}*A^2(v) + A^2(u)*{x,y,v} + {A(u),A(v),x*y} - (A(u)*A(v))*(A(x)*A(y))",
    ),
    (
        "HB7",
        "{A^2(x),A^2(y),{u,v,w}} = {{x,y,u},A^2(v),A^2(w)} + {A^2(u),{x,y,v},A^2(w)} + {A^2(u),A^2(v),{x,y,w}}",
    ),
];

const HOM_AKIVIS: &[(&str, &str)] = &[
    ("HA1", "x*y + y*x = 0"),
    ("HA2", "cyc(x,y,z; (x*y)*A(z)) = cyc(x,y,z; {x,y,z}) - cyc(x,y,z; {y,x,z})"),
];

const HOM_LIE: &[(&str, &str)] = &[
    ("HL1", "x*y + y*x = 0"),
    ("HL2", "cyc(x,y,z; (x*y)*A(z)) = 0"),
];

const HOM_LIE_TRIPLE: &[(&str, &str)] = &[
    ("HT0", "A({x,y,z}) = {A(x),A(y),A(z)}"),
    ("HT1", "{u,v,w} + {v,u,w} = 0"),
    ("HT2", "cyc(u,v,w; {u,v,w}) = 0"),
    (
        "HT3",
        "{A(x),A(y),{u,v,w}} = {{x,y,u},A(v),A(w)} + {A(u),{x,y,v},A(w)} + {A(u),A(v),{x,y,w}}",
    ),
];

// {x,y,x} = 0, linearized
const HOM_FLEX: &[(&str, &str)] = &[("HF1", "{x,y,z} + {z,y,x} = 0")];

// alternating ternary: skew in slots (1,2) and (2,3)
const HOM_ALT: &[(&str, &str)] = &[
    ("HALT1", "{x,y,z} + {y,x,z} = 0"),
    ("HALT2", "{x,y,z} + {x,z,y} = 0"),
];

// J(x,y,x*z) = J(x,y,z)*x with J(a,b,c) = (a*b)*c + (b*c)*a + (c*a)*b,
// linearized in x (second copy renamed w). Untwisted.
const MALCEV: &[(&str, &str)] = &[
    ("M1", "x*y + y*x = 0"),
    (
        "M2",
        "(x*y)*(w*z) + (y*(w*z))*x + ((w*z)*x)*y + (w*y)*(x*z) + (y*(x*z))*w + ((x*z)*w)*y \
         = ((x*y)*z + (y*z)*x + (z*x)*y)*w + ((w*y)*z + (y*z)*w + (z*w)*y)*x",
    ),
];

const ALL: &[(&str, &[(&str, &str)])] = &[
    ("BOL", BOL),
    ("HOM_BOL", HOM_BOL),
    ("HOM_AKIVIS", HOM_AKIVIS),
    ("HOM_LIE", HOM_LIE),
    ("HOM_LIE_TRIPLE", HOM_LIE_TRIPLE),
    ("HOM_FLEX", HOM_FLEX),
    ("HOM_ALT", HOM_ALT),
    ("MALCEV", MALCEV),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    ALL.iter().map(|(n, _)| *n)
}

/// Compile a built-in suite by name (case-insensitive).
pub fn builtin(name: &str) -> Result<IdentitySuite, IdentityError> {
    let upper = name.to_ascii_uppercase();
    let (n, src) = ALL
        .iter()
        .find(|(n, _)| *n == upper)
        .ok_or_else(|| IdentityError::UnknownSuite(name.to_string()))?;
    let ids = src
        .iter()
        .map(|(id, text)| parse_identity(id, text))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdentitySuite::new(n, ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_compiles() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            assert!(!s.identities.is_empty(), "{name}");
        }
        assert!(builtin("hom_bol").is_ok());
        assert!(matches!(builtin("NOPE"), Err(IdentityError::UnknownSuite(_))));
    }

    #[test]
    fn hom_bol_variables() {
        let s = builtin("HOM_BOL").unwrap();
        let hb6 = &s.identities[5];
        assert_eq!(hb6.variables, vec!["x", "y", "u", "v"]);
        let hb7 = &s.identities[6];
        assert_eq!(hb7.variables, vec!["x", "y", "u", "v", "w"]);
    }
}
