#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace crepant {

using Int = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<std::int64_t>;

// Error kinds map onto CLI exit codes (64 input, 65 non-Gorenstein, 70 budget/internal).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NotGorensteinError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// representative in [0, m)
std::int64_t mod64(std::int64_t a, std::int64_t m);
// returns g = gcd(a,b) >= 0 and sets x, y with a*x + b*y = g
std::int64_t egcd64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);
// inverse of a modulo m, throws if not invertible
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
Int binomial(std::int64_t n, std::int64_t k);  // zero when k < 0 or k > n, n >= 0
std::int64_t binomial64(std::int64_t n, std::int64_t k);

std::string to_string(const Rational& q);
// canonical a/b; b != 0
Rational frac(std::int64_t a, std::int64_t b);

// default enumeration budget for group elements
inline constexpr std::int64_t kDefaultElementBudget = 10'000'000;

}  // namespace crepant
