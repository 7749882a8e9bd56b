#include "crepant/core.hpp"

#include <limits>

namespace crepant {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = gcd64(a, b);
    std::int64_t out;
    if (__builtin_mul_overflow(a / g, b, &out)) throw BudgetError("lcm overflows 64-bit range");
    return out < 0 ? -out : out;
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t egcd64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t x, y;
    if (egcd64(mod64(a, m), m, x, y) != 1) throw ValidationError("element not invertible modulo " + std::to_string(m));
    return mod64(x, m);
}

Int binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::int64_t binomial64(std::int64_t n, std::int64_t k) {
    Int b = binomial(n, k);
    if (!b.fits_slong_p()) throw BudgetError("binomial coefficient exceeds 64-bit range");
    return b.get_si();
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational frac(std::int64_t a, std::int64_t b) {
    if (b == 0) throw Error("zero denominator");
    Rational q{Int(static_cast<long>(a)), Int(static_cast<long>(b))};
    q.canonicalize();
    return q;
}

}  // namespace crepant
