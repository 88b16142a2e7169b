#include "uniteq/engine.hpp"

#include "uniteq/errors.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uniteq::engine {

namespace {

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class powmod(const mpz_class& base, const mpz_class& e, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r;
}

bool coprime(const mpz_class& u, const mpz_class& v) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    return g == 1;
}

// r = base^y for some y >= 1?  Exact repeated division.
std::optional<unsigned long> power_exponent(const mpz_class& base, const mpz_class& r) {
    if (r < base)
        return std::nullopt;
    mpz_class rest = r;
    unsigned long y = 0;
    mpz_class q, rem;
    while (rest > 1) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
        if (rem != 0)
            return std::nullopt;
        rest = q;
        ++y;
    }
    return y;
}

bool solves(const EquationTriple& t, const Solution& s) {
    return pow_mpz(t.a, s.x) + pow_mpz(t.b, s.y) == pow_mpz(t.c, s.z);
}

} // namespace

void validate_triple(const EquationTriple& t, bool pillai_mode) {
    if (t.a <= 1 || t.b <= 1 || t.c <= 1)
        throw std::invalid_argument("triple: bases must all exceed 1");
    if (!coprime(t.a, t.b))
        throw std::invalid_argument("triple: gcd(a, b) must be 1");
    if (!pillai_mode) {
        if (!coprime(t.a, t.c) || !coprime(t.b, t.c))
            throw std::invalid_argument("triple: bases must be pairwise coprime");
    }
}

std::vector<Solution> enumerate_solutions(const EquationTriple& t, unsigned long z_max) {
    validate_triple(t);
    if (z_max < 1)
        throw std::invalid_argument("enumerate_solutions: z_max must be positive");
    std::vector<Solution> out;
    mpz_class cz = 1;
    for (unsigned long z = 1; z <= z_max; ++z) {
        cz *= t.c;
        mpz_class ax = t.a;
        for (unsigned long x = 1; ax + t.b <= cz; ++x) {
            if (auto y = power_exponent(t.b, cz - ax))
                out.push_back(Solution{x, *y, z});
            ax *= t.a;
        }
    }
    return out; // loop order already yields (z, x) ordering
}

std::size_t count_solutions(const EquationTriple& t, unsigned long z_max) {
    return enumerate_solutions(t, z_max).size();
}

std::vector<std::pair<unsigned long, unsigned long>>
enumerate_pillai(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                 unsigned long x_max) {
    if (a <= 1 || b <= 1)
        throw std::invalid_argument("enumerate_pillai: bases must exceed 1");
    if (c < 1)
        throw std::invalid_argument("enumerate_pillai: difference must be positive");
    if (x_max < 1)
        throw std::invalid_argument("enumerate_pillai: x_max must be positive");
    std::vector<std::pair<unsigned long, unsigned long>> out;
    mpz_class ax = 1;
    for (unsigned long x = 1; x <= x_max; ++x) {
        ax *= a;
        if (ax <= c)
            continue;
        if (auto y = power_exponent(b, ax - c))
            out.emplace_back(x, *y);
    }
    return out;
}

ReductionResult weak_form_reduce(const EquationTriple& t, const mpz_class& d) {
    validate_triple(t);
    if (d <= 2 || t.c % d != 0)
        throw std::invalid_argument("weak_form_reduce: need a divisor of c exceeding 2");
    if (!coprime(t.a, d) || !coprime(t.b, d))
        throw std::invalid_argument("weak_form_reduce: bases must be coprime to the divisor");

    unsigned long ea = numeric::ext_mult_order(d, t.a).order;
    unsigned long eb = numeric::ext_mult_order(d, t.b).order;
    unsigned long g = std::gcd(ea, eb);
    ReductionResult r;
    r.g = g;
    r.exponent_scale_a = ea / g;
    r.exponent_scale_b = eb / g;
    r.A = pow_mpz(t.a, r.exponent_scale_a);
    r.B = pow_mpz(t.b, r.exponent_scale_b);

    unsigned long eA = numeric::ext_mult_order(d, r.A).order;
    unsigned long eB = numeric::ext_mult_order(d, r.B).order;
    if (eA != eB)
        throw falsification_error("weak_form_reduce: reduced bases have unequal orders");
    return r;
}

PairAnalysis pair_analysis(const EquationTriple& t, const Solution& s1,
                           const Solution& s2, const mpz_class& c1) {
    validate_triple(t);
    if (s1 == s2)
        throw std::invalid_argument("pair_analysis: solutions must differ");
    if (s1.z > s2.z)
        throw std::invalid_argument("pair_analysis: first solution must have the smaller z");
    if (!solves(t, s1) || !solves(t, s2))
        throw std::invalid_argument("pair_analysis: arguments do not solve the triple");
    if (c1 <= 2 || t.c % c1 != 0)
        throw std::invalid_argument("pair_analysis: need a divisor of c exceeding 2");
    if (!coprime(c1, numeric::euler_phi(c1)))
        throw std::invalid_argument("pair_analysis: divisor must be coprime to its totient");

    auto oa = numeric::ext_mult_order(c1, t.a);
    auto ob = numeric::ext_mult_order(c1, t.b);
    if (oa.order != ob.order)
        throw std::invalid_argument("pair_analysis: bases must share one extended order");

    PairAnalysis res;
    res.e = oa.order;
    res.sign_a = oa.sign;
    res.sign_b = ob.sign;

    mpz_class xY = mpz_class(s1.x) * s2.y;
    mpz_class Xy = mpz_class(s2.x) * s1.y;
    res.delta = abs(xY - Xy);
    if (res.delta == 0)
        throw std::invalid_argument("pair_analysis: degenerate pair, delta = 0");

    // Claim: the shared order divides delta.
    if (res.delta % res.e != 0)
        throw falsification_error("pair_analysis: order does not divide delta");

    mpz_class c1z = pow_mpz(c1, s1.z);
    mpz_class quotient = res.delta / res.e;
    mpz_gcd(res.delta_prime.get_mpz_t(), quotient.get_mpz_t(), c1z.get_mpz_t());
    res.d_modulus = c1z / res.delta_prime;

    if (mpz_probab_prime_p(c1.get_mpz_t(), 32) != 0) {
        unsigned long np = res.delta_prime == 1 ? 0 : numeric::valuation(c1, res.delta_prime);
        if (pow_mpz(c1, np) != res.delta_prime)
            throw falsification_error("pair_analysis: delta_prime is not a prime power");
        res.n_prime = np;
    }

    // Claim: h^delta == +-1 (mod c^z) with the sign fixed by the opposite
    // exponent parities.
    mpz_class cz = pow_mpz(t.c, s1.z);
    const mpz_class minus_one = cz - 1;
    mpz_class pa = powmod(t.a, res.delta, cz);
    mpz_class pb = powmod(t.b, res.delta, cz);
    bool eps_a_plus = (s1.y + s2.y) % 2 == 0;
    bool eps_b_plus = (s1.x + s2.x) % 2 == 0;
    if (pa != (eps_a_plus ? mpz_class(1) : minus_one))
        throw falsification_error("pair_analysis: power congruence fails for a");
    if (pb != (eps_b_plus ? mpz_class(1) : minus_one))
        throw falsification_error("pair_analysis: power congruence fails for b");

    // Claim: gcd(a^e - sign_a, b^e - sign_b) * delta / e == 0 (mod c1^z).
    mpz_class ta = pow_mpz(t.a, res.e) - res.sign_a;
    mpz_class tb = pow_mpz(t.b, res.e) - res.sign_b;
    mpz_class core;
    mpz_gcd(core.get_mpz_t(), ta.get_mpz_t(), tb.get_mpz_t());
    if ((core * quotient) % c1z != 0)
        throw falsification_error("pair_analysis: divisibility claim fails");

    // Claim: h^e == sign_h (mod d_modulus) for both bases.
    if (res.d_modulus > 1) {
        mpz_class ra = powmod(t.a, mpz_class(res.e), res.d_modulus);
        mpz_class rb = powmod(t.b, mpz_class(res.e), res.d_modulus);
        mpz_class want_a = res.sign_a == 1 ? mpz_class(1) : res.d_modulus - 1;
        mpz_class want_b = res.sign_b == 1 ? mpz_class(1) : res.d_modulus - 1;
        if (ra != want_a % res.d_modulus || rb != want_b % res.d_modulus)
            throw falsification_error("pair_analysis: residual-modulus congruence fails");
    }
    return res;
}

ParityClass parity_class(const mpz_class& c, const Solution& s1, const Solution& s2) {
    if (c % 2 == 0 || mpz_probab_prime_p(c.get_mpz_t(), 32) == 0)
        return ParityClass::not_applicable;
    bool same_x = (s1.x % 2) == (s2.x % 2);
    bool same_y = (s1.y % 2) == (s2.y % 2);
    if (same_x && same_y)
        return ParityClass::exception;
    if (s1.x % 2 == 0 && s1.y % 2 == 0)
        return ParityClass::double_even_first;
    if (s2.x % 2 == 0 && s2.y % 2 == 0)
        return ParityClass::double_even_second;
    return ParityClass::mixed_parity;
}

std::string solution_json_line(const EquationTriple& t, const Solution& s) {
    std::ostringstream os;
    os << "{\"a\":" << t.a << ",\"b\":" << t.b << ",\"c\":" << t.c
       << ",\"x\":" << s.x << ",\"y\":" << s.y << ",\"z\":" << s.z << "}";
    return os.str();
}

} // namespace uniteq::engine
