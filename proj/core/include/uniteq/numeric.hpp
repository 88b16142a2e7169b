#pragma once

// Exact integer kernel: valuations, extended multiplicative orders, integer
// roots, perfect-power decomposition, a lifting-the-exponent valuation, and
// the two integer sequences attached to the Gaussian integer 2+3i.
//
// Everything here is exact arbitrary-precision arithmetic; no floating point
// is used anywhere in this module.

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace uniteq::numeric {

// Least positive e with A^e == +1 or -1 (mod M), together with the sign that
// is attained at that exponent.  Requires M > 2 (mod 1 and mod 2 the sign
// would not be unique) and gcd(A, M) = 1.
struct ExtOrderResult {
    unsigned long order = 0;
    int sign = 0; // +1 or -1
    friend bool operator==(const ExtOrderResult&, const ExtOrderResult&) = default;
};

struct GaussianInt {
    mpz_class re;
    mpz_class im;
    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

GaussianInt gaussian_mul(const GaussianInt& u, const GaussianInt& v);
GaussianInt gaussian_pow(const GaussianInt& base, unsigned long n);

// Largest e >= 0 with m^e | a.  Requires m > 1 and a != 0.
unsigned long valuation(const mpz_class& m, const mpz_class& a);

// Trial-division factorization, pairs (prime, exponent) with increasing primes.
std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n);

// Euler phi via trial factorization.  Requires n >= 1.
mpz_class euler_phi(const mpz_class& n);

// Extended multiplicative order, see ExtOrderResult.
ExtOrderResult ext_mult_order(const mpz_class& m, const mpz_class& a);

// (floor(a^(1/n)), exact?).  Requires a >= 0 and n >= 1.
std::pair<mpz_class, bool> integer_nth_root(const mpz_class& a, unsigned long n);

// Decomposition a = base^exp with exp >= 2 maximal (equivalently base
// smallest), or nullopt when a is not a perfect power.  Requires a > 1.
std::optional<std::pair<mpz_class, unsigned long>> is_perfect_power(const mpz_class& a);

// v_p(u^n - v^n) = v_p(u - v) + v_p(n) under the usual hypotheses: p prime,
// p coprime to u and v, u == v (mod p) for odd p, u == v (mod 4) for p = 2,
// and u != v.  A violated hypothesis throws; there is no silent fallback.
unsigned long lte_valuation(const mpz_class& p, const mpz_class& u,
                            const mpz_class& v, unsigned long n);

// Lucas pair (U_n, V_n) for parameters P = 4, Q = 13:
// U_0 = 0, U_1 = 1, V_0 = 2, V_1 = 4, W_n = 4 W_{n-1} - 13 W_{n-2}.
std::pair<mpz_class, mpz_class> lucas_uv(unsigned long n);

// The coordinate pair (a(Z), b(Z)) determined by (2+3i)^Z: a(Z) is the odd
// and b(Z) the even member of {|re|, |im|}, so a(Z)^2 + b(Z)^2 = 13^Z.
// Computed by exact Gaussian binary exponentiation.  Requires Z >= 1.
std::pair<mpz_class, mpz_class> aZ_bZ(unsigned long z);

} // namespace uniteq::numeric
