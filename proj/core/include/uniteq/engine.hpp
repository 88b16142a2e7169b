#pragma once

// Exhaustive solvers for a^x + b^y = c^z and a^x - b^y = c within explicit
// bounds, the order-based base reduction, and the invariants attached to a
// pair of solutions of the same triple.
//
// All exponent bounds are enforced by exact big-integer comparison; no
// floating-point logarithm participates in a completeness claim.

#include "uniteq/numeric.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uniteq::engine {

// Pairwise coprime bases, all greater than 1.
struct EquationTriple {
    mpz_class a;
    mpz_class b;
    mpz_class c;
    friend bool operator==(const EquationTriple&, const EquationTriple&) = default;
};

struct Solution {
    unsigned long x = 0;
    unsigned long y = 0;
    unsigned long z = 0;
    friend auto operator<=>(const Solution&, const Solution&) = default;
};

// Invariants of a pair of solutions (x,y,z), (X,Y,Z) with z <= Z, taken
// modulo a divisor c1 of c: delta = |xY - Xy|, e = e_{c1}(a) = e_{c1}(b),
// delta_prime = gcd(delta / e, c1^z), d_modulus = c1^z / delta_prime, and
// n_prime with delta_prime = c1^n_prime whenever c1 is prime.
struct PairAnalysis {
    mpz_class delta;
    unsigned long e = 0;
    mpz_class delta_prime;
    std::optional<unsigned long> n_prime;
    mpz_class d_modulus;
    int sign_a = 0;
    int sign_b = 0;
};

// Base reduction A = a^(e_d(a)/g), B = b^(e_d(b)/g), g = gcd of the two
// extended orders; exponent_scale_* are the divisors e_d(a)/g, e_d(b)/g of
// the solution correspondence x = exponent_scale_a * X, y = exponent_scale_b * Y.
struct ReductionResult {
    mpz_class A;
    mpz_class B;
    unsigned long g = 0;
    unsigned long exponent_scale_a = 0;
    unsigned long exponent_scale_b = 0;
};

// Parity relation between two solutions: mixed_parity when the exponent
// parities disagree somewhere and neither solution is doubly even,
// double_even_first/second when one solution has both exponents even,
// exception when x == X and y == Y (mod 2), and not_applicable when the
// classification's hypothesis (c an odd prime) fails.
enum class ParityClass {
    mixed_parity,
    double_even_first,
    double_even_second,
    exception,
    not_applicable,
};

// Throws std::invalid_argument unless a, b, c > 1 and the triple is pairwise
// coprime (only gcd(a, b) = 1 when pillai_mode is set).
void validate_triple(const EquationTriple& t, bool pillai_mode = false);

// All solutions of a^x + b^y = c^z with z <= z_max, ordered by (z, x).
std::vector<Solution> enumerate_solutions(const EquationTriple& t, unsigned long z_max);

std::size_t count_solutions(const EquationTriple& t, unsigned long z_max);

// All (x, y) with a^x - b^y = c and x <= x_max, ordered by x.
// Requires a, b > 1 and c >= 1.
std::vector<std::pair<unsigned long, unsigned long>>
enumerate_pillai(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                 unsigned long x_max);

// Requires d | c, d > 2, gcd(a, d) = gcd(b, d) = 1.  The reduced bases must
// end up with equal extended orders modulo d; a violation throws
// falsification_error.
ReductionResult weak_form_reduce(const EquationTriple& t, const mpz_class& d);

// Requires s1 != s2, both solutions of t, s1.z <= s2.z, c1 | c with c1 > 2,
// gcd(c1, phi(c1)) = 1, and e_{c1}(a) = e_{c1}(b).  The three divisibility
// claims tied to the pair are re-checked; a failure throws
// falsification_error.  delta = 0 is rejected as degenerate.
PairAnalysis pair_analysis(const EquationTriple& t, const Solution& s1,
                           const Solution& s2, const mpz_class& c1);

ParityClass parity_class(const mpz_class& c, const Solution& s1, const Solution& s2);

// One solution as a single JSON line {"a":..,"b":..,"c":..,"x":..,"y":..,"z":..}.
std::string solution_json_line(const EquationTriple& t, const Solution& s);

} // namespace uniteq::engine
