//! The bundled example algebras. The JSON files shipped in `catalog/` are
//! the single source of truth; they are embedded here so library users and
//! tests resolve them without caring about working directories.

use crate::algebra::FiniteAlgebra;

macro_rules! bundled {
    ($(($fn_name:ident, $name:literal, $path:literal)),+ $(,)?) => {
        $(
            pub fn $fn_name() -> FiniteAlgebra {
                FiniteAlgebra::from_json(include_str!($path))
                    .expect(concat!("bundled algebra ", $name, " is valid"))
            }
        )+

        pub const NAMES: &[&str] = &[$($name),+];

        /// Raw JSON of every bundled algebra, keyed by name.
        pub fn sources() -> Vec<(&'static str, &'static str)> {
            vec![$(($name, include_str!($path))),+]
        }

        pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
            match name {
                $($name => Some($fn_name()),)+
                _ => None,
            }
        }

        pub fn all() -> Vec<FiniteAlgebra> {
            vec![$($fn_name()),+]
        }
    };
}

bundled!(
    (trivial1, "trivial1", "../../../catalog/trivial1.json"),
    (l2, "l2", "../../../catalog/l2.json"),
    (b2, "b2", "../../../catalog/b2.json"),
    (c3, "c3", "../../../catalog/c3.json"),
    (z2mal, "z2mal", "../../../catalog/z2mal.json"),
    (z2z2, "z2z2", "../../../catalog/z2z2.json"),
);
