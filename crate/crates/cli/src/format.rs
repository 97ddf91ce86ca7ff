//! Number formatting for tables and terminal output.

use cpn::Complex64;

/// Lossless CSV field: 17 significant digits in scientific notation.
pub fn csv_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` rounded to 12 significant digits in the shortest form that
/// reproduces the rounded value.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let mag = rounded.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Like [`sig12`], but values below `1e-12` in magnitude print as `0`; for
/// quantities of unit scale such as Bloch components.
pub fn sig12_unit(x: f64) -> String {
    if x.abs() < 1e-12 {
        "0".into()
    } else {
        sig12(x)
    }
}

pub fn complex(z: Complex64) -> String {
    let (re, im) = (sig12(z.re), sig12(z.im.abs()));
    match (z.re == 0.0 && z.im != 0.0, im.as_str()) {
        (_, "0") => re,
        (true, _) => format!("{}{im}i", if z.im < 0.0 { "-" } else { "" }),
        (false, _) => format!("{re}{}{im}i", if z.im < 0.0 { "-" } else { "+" }),
    }
}

pub fn coordinate_tuple(coords: &[Complex64]) -> String {
    let parts: Vec<String> = coords.iter().map(|&z| complex(z)).collect();
    format!("({})", parts.join(", "))
}
