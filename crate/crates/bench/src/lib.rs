//! Fixtures shared by the benchmarks: per-`n` inputs built once, outside the
//! timed loops.

use telesum::catalog;
use telesum::partfrac::{build_family, Family};
use telesum::telescope::{kernel_ratio, wz_difference};
use telesum::RationalFunction;

/// Partial fraction family of `id` at `(n, j)`; `j` is ignored for 1 and 2.
pub fn family(id: u8, n: i64, j: i64) -> Family {
    let j = if id <= 2 { None } else { Some(j) };
    build_family(id, n, j).expect("valid family arguments")
}

/// Term ratio `h_n(j+1)/h_n(j)` of the certificate difference of `id`.
pub fn difference_ratio(id: u8, n: i64) -> RationalFunction {
    let pair = catalog::wz_pair(id).expect("identity with a WZ pair");
    let h = wz_difference(&pair.f, &(pair.relation)(n), n).expect("balanced kernels");
    kernel_ratio(&h).expect("nonzero difference")
}
