#include "uniteq/bounds.hpp"

#include "uniteq/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uniteq::bounds {

namespace {

constexpr mpfr_prec_t kPrec = 192;

// Minimal RAII wrapper; every arithmetic helper takes an explicit rounding
// mode so envelope directions stay visible at the call site.
class Real {
public:
    Real() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

Real from_long(long x) {
    Real r;
    mpfr_set_si(r.raw(), x, MPFR_RNDN); // exact at this precision
    return r;
}

Real from_str(const char* s, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_str(r.raw(), s, 10, rnd);
    return r;
}

Real from_mpz(const mpz_class& z) {
    Real r;
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN); // exact up to huge inputs
    return r;
}

Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real mul_long(const Real& a, long b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_mul_si(r.raw(), a.raw(), b, rnd);
    return r;
}

Real sqr(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sqr(r.raw(), a.raw(), rnd);
    return r;
}

Real rlog(const Real& a, mpfr_rnd_t rnd) {
    Real r;
    mpfr_log(r.raw(), a.raw(), rnd);
    return r;
}

Real rmax(const Real& a, const Real& b) {
    return mpfr_cmp(a.raw(), b.raw()) >= 0 ? a : b;
}

int cmp_long(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b); }

Real log_of_long(long x, mpfr_rnd_t rnd) {
    return rlog(from_long(x), rnd);
}

long floor_to_long(const Real& a) {
    Real f;
    mpfr_floor(f.raw(), a.raw());
    return mpfr_get_si(f.raw(), MPFR_RNDN);
}

long ceil_to_long(const Real& a) {
    Real f;
    mpfr_ceil(f.raw(), a.raw());
    return mpfr_get_si(f.raw(), MPFR_RNDN);
}

// floor of a positive expression, certified by agreeing one-sided envelopes.
long certified_floor(const std::function<Real(mpfr_rnd_t)>& build) {
    long lo = floor_to_long(build(MPFR_RNDD));
    long hi = floor_to_long(build(MPFR_RNDU));
    if (lo != hi)
        throw falsification_error("floor undetermined at working precision");
    return lo;
}

long certified_ceil(const std::function<Real(mpfr_rnd_t)>& build) {
    long lo = ceil_to_long(build(MPFR_RNDD));
    long hi = ceil_to_long(build(MPFR_RNDU));
    if (lo != hi)
        throw falsification_error("ceiling undetermined at working precision");
    return lo;
}

// Certified upper-envelope right-hand side of a T > rhs(T) inequality,
// paired with a fast double approximation used to skip clear-cut integers.
struct CertifiedRhs {
    std::function<double(double)> approx;
    std::function<Real(long)> upper; // every operation rounded outward
};

bool certified_pass(const CertifiedRhs& rhs, long t) {
    double d = rhs.approx(static_cast<double>(t));
    if (static_cast<double>(t) - d > 1.0)
        return true;
    if (d - static_cast<double>(t) > 1.0)
        return false;
    return cmp_long(rhs.upper(t), t) < 0;
}

// Smallest T_u >= t_floor with T > rhs(T) for all T >= t_u; requires rhs
// monotone nondecreasing and eventually dominated by T.
long solve_fixed_point(const CertifiedRhs& rhs, long t_floor) {
    long t = std::max(t_floor, 2L);
    int guard = 0;
    while (!certified_pass(rhs, t)) {
        if (++guard > 60 || t > (1L << 60))
            throw std::invalid_argument("fixed point: right-hand side never crossed");
        t *= 2;
    }
    // Widen until the margin is at least half of T, so the dyadic tail
    // certificate below can take over.
    while (cmp_long(mul_long(rhs.upper(t), 2, MPFR_RNDU), t) >= 0) {
        if (++guard > 120 || t > (1L << 60))
            throw std::invalid_argument("fixed point: margin never opened");
        t *= 2;
    }
    const long hi = t;
    // Tail: rhs(2w) < w rules out violators in (w, 2w]; iterate far beyond
    // any magnitude the callers can reach.
    long w = hi;
    for (int j = 0; j < 42 && w < (1L << 60); ++j) {
        if (cmp_long(rhs.upper(2 * w), w) >= 0)
            throw falsification_error("fixed point: dyadic tail certificate failed");
        w *= 2;
    }
    // Largest violator below the horizon decides the answer.
    for (long u = hi; u >= t_floor; --u) {
        if (!certified_pass(rhs, u))
            return u + 1;
    }
    return t_floor;
}

// Shared constants (computed on demand, both envelope directions).
Real log13(mpfr_rnd_t rnd) { return log_of_long(13, rnd); }

Real loglog13(mpfr_rnd_t rnd) { return rlog(log13(rnd), rnd); }

// K1-style right-hand side: f * (lead * 2E / log^4 13) * log^2 max{4 e^0.64 log^2 13 T, 13^4}.
CertifiedRhs make_k1_rhs(bool min_base_below_13, double lead_constant) {
    const double ld = std::log(13.0);
    const double fd = min_base_below_13 ? ld / std::log(3.0) : 1.0;
    const double coefd = fd * lead_constant * 6.0 / std::pow(ld, 4);
    const double argd = 4.0 * std::exp(0.64) * ld * ld;

    auto upper = [min_base_below_13, lead_constant](long t) {
        const mpfr_rnd_t up = MPFR_RNDU, dn = MPFR_RNDD;
        Real lead = from_str(std::to_string(lead_constant).c_str(), up);
        Real coef = div(mul_long(lead, 6, up), sqr(sqr(log13(dn), dn), dn), up);
        if (min_base_below_13)
            coef = mul(coef, div(log13(up), log_of_long(3, dn), up), up);
        Real e064;
        mpfr_exp(e064.raw(), from_str("0.64", up).raw(), up);
        Real arg = mul_long(mul(mul(e064, sqr(log13(up), up), up), from_long(t), up), 4, up);
        Real b = rlog(rmax(arg, from_long(28561)), up);
        return mul(coef, sqr(b, up), up);
    };
    auto approx = [coefd, argd](double t) {
        double a = std::max(argd * t, 28561.0);
        double lg = std::log(a);
        return coefd * lg * lg;
    };
    return CertifiedRhs{approx, upper};
}

// Square-exponent-case right-hand side in z1 for a given n':
// coef * max{log(z1/H2 + 1/log 13) + loglog 13 + 0.4, 4 log 13}^2
// with H2 = max{n', 1} log 13 and coef = 27.3 * 52 * max{n', 1} / log^2 13.
CertifiedRhs make_square_case_rhs(int n_prime) {
    const long mult = std::max(n_prime, 1);
    const double ld = std::log(13.0);
    const double coefd = 27.3 * 52.0 * static_cast<double>(mult) / (ld * ld);
    const double h2d = static_cast<double>(mult) * ld;

    auto upper = [mult](long z1) {
        const mpfr_rnd_t up = MPFR_RNDU, dn = MPFR_RNDD;
        Real coef = div(mul_long(from_str("27.3", up), 52 * mult, up), sqr(log13(dn), dn), up);
        Real h2_dn = mul_long(log13(dn), mult, dn);
        Real w = add(div(from_long(z1), h2_dn, up), div(from_long(1), log13(dn), up), up);
        Real branch1 = add(add(rlog(w, up), loglog13(up), up), from_str("0.4", up), up);
        Real branch2 = mul_long(log13(up), 4, up);
        return mul(coef, sqr(rmax(branch1, branch2), up), up);
    };
    auto approx = [coefd, h2d, ld](double z1) {
        double b = std::log(z1 / h2d + 1.0 / ld) + std::log(ld) + 0.4;
        b = std::max(b, 4.0 * ld);
        return coefd * b * b;
    };
    return CertifiedRhs{approx, upper};
}

// Two-decimal truncation of log 13 - log(K1/3 * log^2 13 * 9) / 9, the
// slope constant of the z >= 9 branch.
long zeta_centi(long k1_value) {
    Real arg = mul_long(sqr(log13(MPFR_RNDU), MPFR_RNDU), 3 * k1_value, MPFR_RNDU);
    Real v = sub(log13(MPFR_RNDD),
                 div(rlog(arg, MPFR_RNDU), from_long(9), MPFR_RNDU), MPFR_RNDD);
    return floor_to_long(mul_long(v, 100, MPFR_RNDD));
}

Real k2_value(double lead_constant, long zeta_centi_gt, mpfr_rnd_t rnd) {
    // lead * 2E * 16 * max{1/zeta^2, (2*9 / (9 zeta - log 2))^2} at zeta = 1.48.
    const mpfr_rnd_t inv = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
    // zeta enters only through 1/zeta^2 and the denominator below, so the
    // envelope direction for the quotient is the opposite of rnd.
    Real zeta = div(from_long(zeta_centi_gt), from_long(100), inv);
    Real denom = sub(mul_long(zeta, 9, inv), log_of_long(2, inv), inv);
    Real frac = sqr(div(from_long(18), denom, rnd), rnd);
    Real alt = sqr(div(from_long(1), zeta, rnd), rnd);
    Real lead = from_str(std::to_string(lead_constant).c_str(), rnd);
    return mul(mul_long(lead, 96, rnd), rmax(frac, alt), rnd);
}

} // namespace

BoundReport bugeaud_madic_bound(const MadicParams& p) {
    if (p.modulus <= 1 || p.g == 0 || p.b1 == 0 || p.b2 == 0)
        throw std::invalid_argument("madic bound: parameters must be positive, modulus above 1");
    const double logm = std::log(static_cast<double>(p.modulus));
    if (p.h1 < logm * (1 - 1e-9) || p.h2 < logm * (1 - 1e-9))
        throw std::invalid_argument("madic bound: heights must be at least log M");

    const double b_star = static_cast<double>(p.b1) / p.h2 + static_cast<double>(p.b2) / p.h1;
    const double branch1 = std::log(b_star) + std::log(logm) + 0.64;
    const double branch2 = 4.0 * logm;
    BoundReport r;
    r.dominated_branch = branch1 >= branch2 ? "log b*" : "4 log M";
    const double big = std::max(branch1, branch2);
    r.value = 53.6 * static_cast<double>(p.g) * p.h1 * p.h2 / std::pow(logm, 4) * big * big;
    return r;
}

BoundReport bugeaud_laurent_bound(const PadicFieldParams& p) {
    if (p.p <= 1 || p.d == 0 || p.f_pi == 0 || p.g == 0 || p.b1 == 0 || p.b2 == 0)
        throw std::invalid_argument("field bound: parameters must be positive");
    const double logp = std::log(static_cast<double>(p.p));
    if (p.h1 < logp * (1 - 1e-9) || p.h2 < logp * (1 - 1e-9))
        throw std::invalid_argument("field bound: heights must be at least log p");

    const double b_star = static_cast<double>(p.b1) / p.h2 + static_cast<double>(p.b2) / p.h1;
    const double branch1 = std::log(b_star) + std::log(logp) + 0.4;
    const double branch2 = 8.0 * static_cast<double>(p.f_pi) / p.d * logp;
    const double branch3 = 10.0;
    BoundReport r;
    double big = branch1;
    r.dominated_branch = "log b*";
    if (branch2 > big) {
        big = branch2;
        r.dominated_branch = "(8 f/D) log p";
    }
    if (branch3 > big) {
        big = branch3;
        r.dominated_branch = "10";
    }
    r.value = 27.3 * p.d * p.d * p.p * p.g * p.h1 * p.h2
              / (static_cast<double>(p.f_pi) * p.f_pi * (p.p - 1) * std::pow(logp, 4))
              * big * big;
    return r;
}

long fixed_point_bound(const std::function<double(double)>& rhs, long t_floor) {
    if (t_floor < 1)
        throw std::invalid_argument("fixed_point_bound: floor must be positive");
    auto passes = [&](long t) { return static_cast<double>(t) > rhs(static_cast<double>(t)); };
    long t = std::max(t_floor, 2L);
    int guard = 0;
    while (!passes(t)) {
        if (++guard > 60 || t > (1L << 60))
            throw std::invalid_argument("fixed_point_bound: right-hand side never crossed");
        t *= 2;
    }
    while (2.0 * rhs(static_cast<double>(t)) >= static_cast<double>(t)) {
        if (++guard > 120 || t > (1L << 60))
            throw std::invalid_argument("fixed_point_bound: margin never opened");
        t *= 2;
    }
    const long hi = t;
    long w = hi;
    for (int j = 0; j < 42 && w < (1L << 60); ++j) {
        if (rhs(static_cast<double>(2 * w)) >= static_cast<double>(w))
            throw std::invalid_argument("fixed_point_bound: tail certificate failed");
        w *= 2;
    }
    for (long u = hi; u >= t_floor; --u) {
        if (!passes(u))
            return u + 1;
    }
    return t_floor;
}

long k1(bool min_base_below_13, double lead_constant) {
    return solve_fixed_point(make_k1_rhs(min_base_below_13, lead_constant), 1);
}

long k2(double lead_constant) {
    const long centi_lt = zeta_centi(k1(true));
    const long centi_gt = zeta_centi(k1(false));
    if (centi_lt != 137 || centi_gt != 148)
        throw falsification_error("k2: slope constants moved away from 1.37 / 1.48");
    long value = certified_ceil(
        [&](mpfr_rnd_t rnd) { return k2_value(lead_constant, centi_gt, rnd); });
    // Downstream consistency: K2 log^2 13 stays below 68810.
    if (certified_floor([&](mpfr_rnd_t rnd) {
            return mul_long(sqr(log13(rnd), rnd), value, rnd);
        }) >= 68810)
        throw falsification_error("k2: delta cross-check failed");
    return value;
}

long k3(K3Case which) {
    switch (which) {
    case K3Case::m_lt_c_z_le_8:
        return delta_cap(k1(true), 5);
    case K3Case::m_gt_c_z_le_8:
        return delta_cap(k1(false), 8);
    case K3Case::z_ge_9:
        return delta_cap(k2(), 1);
    }
    throw std::invalid_argument("k3: unknown case");
}

long case_vi_z_bound(int n_prime) {
    if (n_prime < 0 || n_prime > n_prime_max())
        throw std::invalid_argument("case_vi_z_bound: n' must lie in 0..3");
    // The cap is the largest z1 still compatible with z1 <= rhs(z1), one
    // below the first certified all-pass point, shifted by n'.
    long z1 = solve_fixed_point(make_square_case_rhs(n_prime), 1);
    return z1 - 1 + n_prime;
}

long exponent_cap(long k, const mpz_class& base) {
    if (k < 1 || base < 2)
        throw std::invalid_argument("exponent_cap: need k >= 1 and base >= 2");
    return certified_floor([&](mpfr_rnd_t rnd) {
        return mul_long(mul(rlog(from_mpz(base), rnd), log13(rnd), rnd), k, rnd);
    });
}

long delta_cap(long k, unsigned long z) {
    if (k < 1 || z < 1)
        throw std::invalid_argument("delta_cap: need k >= 1 and z >= 1");
    return certified_floor([&](mpfr_rnd_t rnd) {
        return mul_long(sqr(log13(rnd), rnd), k * static_cast<long>(z), rnd);
    });
}

std::vector<ConstantCheck> reference_constant_checks() {
    std::vector<ConstantCheck> rows;
    auto tol = [](long computed, long reference) {
        return computed <= reference && 100 * computed >= 99 * reference;
    };

    {
        ConstantCheck c{"K1 (min base < 13)", k1(true), 2367, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent =
            cmp_long(make_k1_rhs(true, 53.6).upper(c.reference), c.reference) < 0;
        rows.push_back(c);
    }
    {
        ConstantCheck c{"K1 (min base > 13)", k1(false), 843, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent =
            cmp_long(make_k1_rhs(false, 53.6).upper(c.reference), c.reference) < 0;
        rows.push_back(c);
    }
    {
        ConstantCheck c{"K2", k2(), 10459, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent =
            cmp_long(k2_value(53.611, 148, MPFR_RNDU), c.reference) <= 0;
        rows.push_back(c);
    }
    {
        ConstantCheck c{"K3 (min base < 13, z <= 8)", k3(K3Case::m_lt_c_z_le_8), 77862, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent = c.reference >= c.computed;
        rows.push_back(c);
    }
    {
        ConstantCheck c{"K3 (min base > 13, z <= 8)", k3(K3Case::m_gt_c_z_le_8), 44368, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent = c.reference >= c.computed;
        rows.push_back(c);
    }
    {
        ConstantCheck c{"K3 (z >= 9)", k3(K3Case::z_ge_9), 68809, false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        c.reference_consistent = c.reference >= c.computed;
        rows.push_back(c);
    }
    const long vi_refs[4] = {23650, 23651, 47322, 70986};
    for (int np = 0; np <= 3; ++np) {
        ConstantCheck c{"square-exponent z cap (n' = " + std::to_string(np) + ")",
                        case_vi_z_bound(np), vi_refs[np], false, false};
        c.within_tolerance = tol(c.computed, c.reference);
        // A valid cap forces the very next z1 to violate z1 <= rhs(z1).
        const long probe = c.reference - np + 1;
        c.reference_consistent =
            cmp_long(make_square_case_rhs(np).upper(probe), probe) < 0;
        rows.push_back(c);
    }
    return rows;
}

} // namespace uniteq::bounds
