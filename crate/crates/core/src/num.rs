//! Tolerance comparisons and fixed-precision number formatting.

/// Outcome of comparing a boundary quantity with zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    /// Within the tolerance; `marginal` when above a tenth of it.
    On { marginal: bool },
    Above,
}

pub fn side(q: f64, tol: f64) -> Side {
    if q.abs() <= tol {
        Side::On {
            marginal: q.abs() > tol / 10.0,
        }
    } else if q < 0.0 {
        Side::Below
    } else {
        Side::Above
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Formats with 12 significant digits, trailing zeros trimmed.
pub fn fmt12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = round12(x);
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt12(-0.0), "0");
        assert_eq!(fmt12(1.0), "1");
        assert_eq!(fmt12(-2.5), "-2.5");
        assert_eq!(fmt12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt12(0.1 + 0.2), "0.3");
        assert_eq!(fmt12(1e-9), "1e-9");
        assert_eq!(fmt12(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn sides() {
        assert_eq!(side(0.0, 1e-9), Side::On { marginal: false });
        assert_eq!(side(5e-10, 1e-9), Side::On { marginal: true });
        assert_eq!(side(-2e-9, 1e-9), Side::Below);
        assert_eq!(side(2e-9, 1e-9), Side::Above);
    }
}
