//! Kronecker symbol (d|n), the quadratic character attached to a
//! fundamental discriminant.

/// Kronecker symbol `(d|n)` for arbitrary `d` and `n >= 0`.
///
/// For a fundamental discriminant `d` this is the real primitive character
/// of modulus `|d|`: completely multiplicative in `n` and periodic with
/// period `|d|`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut sign = 1i32;
    // (d|2) per the mod-8 rule, once per factor of 2 in n.
    while n.is_multiple_of(2) {
        if d % 2 == 0 {
            return 0;
        }
        if matches!(d.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        n /= 2;
    }
    if n == 1 {
        return sign;
    }
    // Odd positive modulus: the symbol only depends on d mod n.
    let a = d.rem_euclid(n as i64) as u64;
    sign * jacobi(a, n)
}

/// Jacobi symbol `(a|n)` for odd `n > 0` and `0 <= a`.
fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    let mut sign = 1i32;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
