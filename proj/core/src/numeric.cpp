#include "uniteq/numeric.hpp"

#include <stdexcept>

namespace uniteq::numeric {

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

} // namespace

GaussianInt gaussian_mul(const GaussianInt& u, const GaussianInt& v) {
    return GaussianInt{u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re};
}

GaussianInt gaussian_pow(const GaussianInt& base, unsigned long n) {
    GaussianInt acc{1, 0};
    GaussianInt sq = base;
    while (n > 0) {
        if (n & 1UL)
            acc = gaussian_mul(acc, sq);
        n >>= 1UL;
        if (n > 0)
            sq = gaussian_mul(sq, sq);
    }
    return acc;
}

unsigned long valuation(const mpz_class& m, const mpz_class& a) {
    if (m <= 1)
        throw std::invalid_argument("valuation: modulus must exceed 1");
    if (a == 0)
        throw std::invalid_argument("valuation: argument must be nonzero");
    mpz_class rest = abs(a);
    unsigned long e = 0;
    mpz_class q, r;
    while (true) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), m.get_mpz_t());
        if (r != 0)
            return e;
        rest = q;
        ++e;
    }
}

std::vector<std::pair<mpz_class, unsigned long>> factorize(const mpz_class& n) {
    if (n < 1)
        throw std::invalid_argument("factorize: argument must be positive");
    std::vector<std::pair<mpz_class, unsigned long>> out;
    mpz_class rest = n;
    mpz_class d = 2;
    while (d * d <= rest) {
        if (rest % d == 0) {
            unsigned long e = 0;
            while (rest % d == 0) {
                rest /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (rest > 1)
        out.emplace_back(rest, 1UL);
    return out;
}

mpz_class euler_phi(const mpz_class& n) {
    mpz_class phi = 1;
    for (const auto& [p, e] : factorize(n))
        phi *= pow_mpz(p, e - 1) * (p - 1);
    return phi;
}

ExtOrderResult ext_mult_order(const mpz_class& m, const mpz_class& a) {
    if (m <= 2)
        throw std::invalid_argument("ext_mult_order: modulus must exceed 2 (sign not unique below 3)");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), a.get_mpz_t());
    if (g != 1)
        throw std::invalid_argument("ext_mult_order: arguments must be coprime");

    // Multiplicative order first: start from phi(m) and peel prime factors
    // while the power stays 1.
    mpz_class ord = euler_phi(m);
    for (const auto& [p, e] : factorize(ord)) {
        (void)e;
        while (ord % p == 0 && powmod(a, ord / p, m) == 1)
            ord /= p;
    }
    if (!ord.fits_ulong_p())
        throw std::overflow_error("ext_mult_order: order exceeds unsigned long range");
    // -1 can only be attained at half the order, never earlier.
    if (ord % 2 == 0 && powmod(a, ord / 2, m) == m - 1)
        return ExtOrderResult{ord.get_ui() / 2, -1};
    return ExtOrderResult{ord.get_ui(), +1};
}

std::pair<mpz_class, bool> integer_nth_root(const mpz_class& a, unsigned long n) {
    if (a < 0)
        throw std::invalid_argument("integer_nth_root: argument must be nonnegative");
    if (n < 1)
        throw std::invalid_argument("integer_nth_root: index must be positive");
    mpz_class root;
    int exact = mpz_root(root.get_mpz_t(), a.get_mpz_t(), n);
    return {root, exact != 0};
}

std::optional<std::pair<mpz_class, unsigned long>> is_perfect_power(const mpz_class& a) {
    if (a <= 1)
        throw std::invalid_argument("is_perfect_power: argument must exceed 1");
    unsigned long bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    // Scanning exponents downward yields the maximal exponent, hence the
    // smallest base, on the first hit.
    for (unsigned long k = bits; k >= 2; --k) {
        auto [root, exact] = integer_nth_root(a, k);
        if (exact && root > 1)
            return std::make_pair(root, k);
    }
    return std::nullopt;
}

unsigned long lte_valuation(const mpz_class& p, const mpz_class& u,
                            const mpz_class& v, unsigned long n) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw std::invalid_argument("lte_valuation: modulus must be prime");
    if (n < 1)
        throw std::invalid_argument("lte_valuation: exponent must be positive");
    if (u == v)
        throw std::invalid_argument("lte_valuation: bases must differ");
    if (u % p == 0 || v % p == 0)
        throw std::invalid_argument("lte_valuation: bases must be coprime to the prime");
    mpz_class diff = u - v;
    if (p == 2) {
        if (diff % 4 != 0)
            throw std::invalid_argument("lte_valuation: p = 2 requires u == v (mod 4)");
    } else {
        if (diff % p != 0)
            throw std::invalid_argument("lte_valuation: requires u == v (mod p)");
    }
    return valuation(p, diff) + valuation(p, mpz_class(n));
}

std::pair<mpz_class, mpz_class> lucas_uv(unsigned long n) {
    mpz_class u0 = 0, u1 = 1, v0 = 2, v1 = 4;
    if (n == 0)
        return {u0, v0};
    for (unsigned long i = 1; i < n; ++i) {
        mpz_class u2 = 4 * u1 - 13 * u0;
        mpz_class v2 = 4 * v1 - 13 * v0;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    return {u1, v1};
}

std::pair<mpz_class, mpz_class> aZ_bZ(unsigned long z) {
    if (z < 1)
        throw std::invalid_argument("aZ_bZ: exponent must be positive");
    GaussianInt p = gaussian_pow(GaussianInt{2, 3}, z);
    mpz_class re = abs(p.re), im = abs(p.im);
    // The odd coordinate is the imaginary part for odd Z, the real part for
    // even Z; a(Z) is always the odd member of the pair.
    if (z % 2 == 1)
        return {im, re};
    return {re, im};
}

} // namespace uniteq::numeric
