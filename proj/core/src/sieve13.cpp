#include "uniteq/sieve13.hpp"

#include "uniteq/bounds.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace uniteq::sieve13 {

namespace {

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

mpz_class pow13(unsigned long e) { return pow_mpz(13, e); }

mpz_class isqrt(const mpz_class& v) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

std::uint64_t modpow_u64(std::uint64_t base, unsigned long e, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (e) {
        if (e & 1)
            r = r * base % mod;
        base = base * base % mod;
        e >>= 1;
    }
    return r;
}

// Smallest prime factor table covering every admissible t (t_u < 3000).
const std::vector<int>& spf_table() {
    static const std::vector<int> table = [] {
        std::vector<int> t(3000, 0);
        for (int i = 2; i < 3000; ++i) {
            if (t[i])
                continue;
            for (int j = i; j < 3000; j += i)
                if (!t[j])
                    t[j] = i;
        }
        return t;
    }();
    return table;
}

bool t_admissible(unsigned long t) {
    if (t % 2 == 0 || t % 9 == 0)
        return false;
    unsigned long rest = t;
    while (rest > 1) {
        int p = spf_table()[rest];
        if (p % 3 == 2)
            return false;
        while (rest % static_cast<unsigned long>(p) == 0)
            rest /= static_cast<unsigned long>(p);
    }
    return true;
}

} // namespace

SieveCase SieveCase::v() {
    return SieveCase{CaseTag::v, 3, {9, 9, 9, 9}};
}

SieveCase SieveCase::vi() {
    return SieveCase{CaseTag::vi, 2, {23650, 23651, 47322, 70986}};
}

std::vector<unsigned> default_battery() {
    std::vector<unsigned> primes;
    for (unsigned n = 3; primes.size() < 48; n += 2) {
        if (n == 13)
            continue;
        bool prime = true;
        for (unsigned d = 3; d * d <= n; d += 2) {
            if (n % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime)
            primes.push_back(n);
    }
    return primes;
}

SquareFilter::SquareFilter(const std::vector<unsigned>& battery) : primes_(battery) {
    if (primes_.empty())
        throw std::invalid_argument("square filter: empty battery");
    residue_.reserve(primes_.size());
    for (unsigned p : primes_) {
        if (p < 3 || p % 2 == 0 || p % 13 == 0)
            throw std::invalid_argument("square filter: battery must hold odd primes coprime to 13");
        std::vector<std::uint8_t> sq(p, 0);
        for (unsigned j = 0; j < p; ++j)
            sq[static_cast<std::uint64_t>(j) * j % p] = 1;
        residue_.push_back(std::move(sq));
    }
}

SquareFilter::ZContext SquareFilter::context(unsigned long z, int n_prime) const {
    if (n_prime < 0 || z < static_cast<unsigned long>(n_prime))
        throw std::invalid_argument("square filter: need 0 <= n' <= z");
    ZContext ctx;
    ctx.coeff.reserve(primes_.size());
    for (unsigned p : primes_)
        ctx.coeff.push_back(static_cast<std::uint32_t>(
            4 * modpow_u64(13, z - static_cast<unsigned long>(n_prime), p) % p));
    return ctx;
}

bool SquareFilter::may_be_square(const ZContext& ctx, unsigned long t) const {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const unsigned p = primes_[i];
        const std::uint64_t v =
            (static_cast<std::uint64_t>(ctx.coeff[i]) * (t % p) + p - 3 % p) % p;
        if (!residue_[i][v])
            return false;
    }
    return true;
}

bool fast_square_filter(unsigned long t, unsigned long z, int n_prime,
                        const std::vector<unsigned>& battery) {
    SquareFilter f(battery);
    return f.may_be_square(f.context(z, n_prime), t);
}

mpz_class t_upper(unsigned long z, int n_prime) {
    if (n_prime < 0 || n_prime > 3 || z < 1)
        throw std::invalid_argument("t_upper: need z >= 1 and n' in 0..3");
    const mpz_class n = pow13(static_cast<unsigned long>(n_prime));
    if (z >= 7)
        return n; // the two fractional terms sum below 1 here
    const mpz_class d = pow13(z);
    const mpz_class p = n * (d + 1);
    const mpz_class s = isqrt(d);
    mpz_class q = (p + n * s) / d;
    for (;;) {
        const mpz_class diff = (q + 1) * d - p;
        if (diff > 0 && diff * diff > n * n * d)
            break;
        ++q;
    }
    return q;
}

mpz_class m_lower(unsigned long z, int n_prime) {
    if (n_prime < 0 || z < static_cast<unsigned long>(n_prime))
        throw std::invalid_argument("m_lower: need 0 <= n' <= z");
    const mpz_class d = pow13(z - static_cast<unsigned long>(n_prime));
    mpz_class s = isqrt(d / 2);
    while (2 * s * s < d)
        ++s;
    return std::max(mpz_class(3), s);
}

std::vector<Step1Record> step1_range(const SieveCase& c, int n_prime,
                                     unsigned long z_lo, unsigned long z_hi,
                                     const SquareFilter& filter) {
    if (n_prime < 0 || n_prime > 3)
        throw std::invalid_argument("step1: n' must lie in 0..3");
    std::vector<Step1Record> out;
    const unsigned long z_floor = std::max<unsigned long>(1, static_cast<unsigned long>(n_prime));
    for (unsigned long z = std::max(z_lo, z_floor); z <= z_hi; ++z) {
        const auto ctx = filter.context(z, n_prime);
        const unsigned long tu = t_upper(z, n_prime).get_ui();
        for (unsigned long t = 1; t <= tu; ++t) {
            if (!t_admissible(t))
                continue;
            if (!filter.may_be_square(ctx, t))
                continue;
            const mpz_class val =
                4 * t * pow13(z - static_cast<unsigned long>(n_prime)) - 3;
            const mpz_class root = isqrt(val);
            if (root * root == val)
                out.push_back(Step1Record{z, n_prime, t});
        }
    }
    return out;
}

std::vector<Step1Record> step1(const SieveCase& c, std::optional<unsigned long> z_max,
                               std::optional<int> n_prime_only) {
    static const SquareFilter filter;
    std::vector<Step1Record> out;
    for (int np = 0; np <= 3; ++np) {
        if (n_prime_only && *n_prime_only != np)
            continue;
        unsigned long hi = c.z_u[static_cast<std::size_t>(np)];
        if (z_max)
            hi = std::min(hi, *z_max);
        auto part = step1_range(c, np, 1, hi, filter);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool order3_mod13(const mpz_class& v) {
    const unsigned long r = mpz_fdiv_ui(v.get_mpz_t(), 13);
    return r == 3 || r == 4 || r == 9 || r == 10;
}

bool cube_pm1(const mpz_class& v, const mpz_class& mod) {
    if (mod == 1)
        return true;
    mpz_class c = (v * v * v) % mod;
    return c == 1 || c == mod - 1;
}

} // namespace

Step2Result step2(const std::vector<Step1Record>& list1, const SieveCase& c,
                  bool strong_mod13_filter) {
    Step2Result result;
    for (const auto& rec : list1) {
        const unsigned long zn = rec.z - static_cast<unsigned long>(rec.n_prime);
        const mpz_class d = pow13(zn);
        const mpz_class val = 4 * rec.t * d - 3;
        const mpz_class big_a = isqrt(val);
        if (big_a * big_a != val)
            throw falsification_error("step2: record lost its square witness");
        const mpz_class ml = m_lower(rec.z, rec.n_prime);
        const mpz_class cz = pow13(rec.z);

        Step2Survivor surv{rec, {}};
        for (const mpz_class& a : {mpz_class((big_a - 1) / 2), mpz_class((big_a + 1) / 2)}) {
            if (a < ml)
                continue;
            const mpz_class delta = big_a - 2 * a; // +-1 by construction
            if (a * a + delta * a + 1 != rec.t * d)
                throw falsification_error("step2: root fails its defining quadratic");
            surv.admissible_roots.push_back(a);

            mpz_class ax = pow_mpz(a, c.x_l);
            for (unsigned long x = c.x_l; ax < cz; ++x, ax *= a) {
                const mpz_class rest = cz - ax;
                for (unsigned long y = 1; y <= x; ++y) {
                    mpz_class b;
                    if (y == 1) {
                        b = rest;
                    } else {
                        auto [root, exact] = numeric::integer_nth_root(rest, y);
                        if (!exact)
                            continue;
                        b = root;
                    }
                    if (b < ml)
                        continue;
                    if (mpz_odd_p(a.get_mpz_t()) == mpz_odd_p(b.get_mpz_t()))
                        continue;
                    if (gcd(a, b) != 1)
                        continue;
                    if (!cube_pm1(b, d))
                        continue;
                    if (strong_mod13_filter && (!order3_mod13(a) || !order3_mod13(b)))
                        continue;
                    result.records.push_back(
                        Step2Record{a, b, x, y, rec.z, rec.n_prime});
                }
                if (c.case_tag == CaseTag::vi)
                    break; // this case fixes x at x_l
            }
        }
        if (!surv.admissible_roots.empty())
            result.survivors.push_back(std::move(surv));
    }
    return result;
}

StepThreeConstants StepThreeConstants::published() {
    return StepThreeConstants{2367, 843, 77862, 44368, 68809};
}

StepThreeConstants StepThreeConstants::from_bounds() {
    return StepThreeConstants{bounds::k1(true), bounds::k1(false),
                              bounds::k3(bounds::K3Case::m_lt_c_z_le_8),
                              bounds::k3(bounds::K3Case::m_gt_c_z_le_8),
                              bounds::k3(bounds::K3Case::z_ge_9)};
}

namespace {

// Residues attainable by powers of 13, plus per-base power cycles, for a
// quick rejection of a^X + b^Y = 13^Z candidates. Soundness only requires
// the allowed sets to contain every true 13-power residue.
struct PowerResidueScreen {
    struct PrimeData {
        std::uint32_t p;
        std::vector<std::uint8_t> allowed;
    };

    static const std::vector<PrimeData>& primes() {
        static const std::vector<PrimeData> data = [] {
            std::vector<PrimeData> d;
            for (std::uint32_t p : {30941u, 157u, 61u, 17u}) {
                PrimeData pd;
                pd.p = p;
                pd.allowed.assign(p, 0);
                std::uint64_t v = 13 % p;
                do {
                    pd.allowed[v] = 1;
                    v = v * 13 % p;
                } while (v != 13 % p);
                d.push_back(std::move(pd));
            }
            return d;
        }();
        return data;
    }

    struct BaseCycle {
        std::vector<std::uint32_t> pow; // pow[j] = base^j mod p, full cycle
    };

    std::vector<BaseCycle> a_cycles, b_cycles;

    static BaseCycle cycle_of(const mpz_class& base, std::uint32_t p) {
        BaseCycle c;
        const std::uint64_t b0 = mpz_fdiv_ui(base.get_mpz_t(), p);
        if (b0 == 0) {
            c.pow = {0}; // queried only at exponents >= 1
            return c;
        }
        std::uint64_t v = 1;
        do {
            c.pow.push_back(static_cast<std::uint32_t>(v));
            v = v * b0 % p;
        } while (v != 1);
        return c;
    }

    PowerResidueScreen(const mpz_class& a, const mpz_class& b) {
        for (const auto& pd : primes()) {
            a_cycles.push_back(cycle_of(a, pd.p));
            b_cycles.push_back(cycle_of(b, pd.p));
        }
    }

    bool admits(unsigned long X, unsigned long Y) const {
        const auto& ps = primes();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::uint32_t p = ps[i].p;
            std::uint64_t s = a_cycles[i].pow[X % a_cycles[i].pow.size()];
            s += b_cycles[i].pow[Y % b_cycles[i].pow.size()];
            if (s >= p)
                s -= p;
            if (!ps[i].allowed[s])
                return false;
        }
        return true;
    }
};

// Power-of-13 confirmation; returns Z or 0.
unsigned long power_of_13(const mpz_class& s) {
    if (s < 13)
        return 0;
    const unsigned long v = numeric::valuation(13, s);
    if (v >= 1 && pow13(v) == s)
        return v;
    return 0;
}

long mod_inverse(long a, long m) {
    long t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        const long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1)
        throw std::logic_error("mod_inverse: not coprime");
    return ((t % m) + m) % m;
}

} // namespace

std::vector<MatchRecord> step3(const std::vector<Step2Record>& list2,
                               const StepThreeConstants& constants,
                               bool relax_k_parity) {
    std::vector<MatchRecord> matches;
    for (const auto& rec : list2) {
        const bool below = std::min(rec.a, rec.b) < 13;
        const long K1 = below ? constants.k1_below : constants.k1_above;
        const long K3 = rec.z >= 9 ? constants.k3_z9
                                   : (below ? constants.k3_below_z8 : constants.k3_above_z8);
        const long x_cap = bounds::exponent_cap(K1, rec.b);
        const long y_cap = bounds::exponent_cap(K1, rec.a);
        const long delta_u = std::min(bounds::delta_cap(K1, rec.z), K3);
        const long stride = 3 * static_cast<long>(pow13(
            static_cast<unsigned long>(rec.n_prime)).get_ui());

        const PowerResidueScreen screen(rec.a, rec.b);
        const long x = static_cast<long>(rec.x);
        const long y = static_cast<long>(rec.y);
        const long g = std::gcd(y, x);
        const long step = x / g;

        for (long k = 1; k * stride <= delta_u; k += relax_k_parity ? 1 : 2) {
            const long delta = k * stride;
            // sign +1: x*Y = y*X + delta; sign -1: x*Y = y*X - delta.
            for (int sign : {+1, -1}) {
                const long target = sign > 0 ? ((x - delta % x) % x + x) % x
                                             : ((delta % x) + x) % x;
                if (target % g != 0)
                    continue;
                // Smallest positive X with y*X = target (mod x).
                long x0;
                if (x / g == 1) {
                    x0 = 1;
                } else {
                    const long m = x / g;
                    x0 = (target / g) % m * mod_inverse((y / g) % m, m) % m;
                    if (x0 == 0)
                        x0 = m;
                }
                // Y >= 1 forces y*X + sign*delta >= x.
                const long lo_val = static_cast<long>(x) - sign * delta;
                if (lo_val > 0 && x0 * y < lo_val)
                    x0 += (lo_val - x0 * y + y * step - 1) / (y * step) * step;
                // Y <= y_cap caps the usable X range.
                long hi = x_cap;
                const long hv = x * y_cap - sign * delta;
                if (hv < y * hi)
                    hi = hv / y;
                for (long X = x0; X <= hi; X += step) {
                    const long val = y * X + sign * delta;
                    if (val <= 0)
                        continue;
                    const long Y = val / x;
                    if (Y < 1 || Y > y_cap)
                        continue;
                    if (!screen.admits(static_cast<unsigned long>(X),
                                       static_cast<unsigned long>(Y)))
                        continue;
                    const mpz_class s = pow_mpz(rec.a, static_cast<unsigned long>(X)) +
                                        pow_mpz(rec.b, static_cast<unsigned long>(Y));
                    const unsigned long Z = power_of_13(s);
                    if (Z > 0)
                        matches.push_back(MatchRecord{rec.a, rec.b, rec.x, rec.y, rec.z,
                                                      static_cast<unsigned long>(X),
                                                      static_cast<unsigned long>(Y), Z});
                }
            }
        }
    }
    return matches;
}

std::vector<DeltaEvenRow> delta_even_table(unsigned long z_max) {
    if (z_max < 6)
        throw std::invalid_argument("delta_even_table: need Z_max >= 6");
    std::vector<DeltaEvenRow> rows;
    rows.reserve(z_max);
    for (unsigned long z = 1; z <= z_max; ++z) {
        const auto [a, b] = numeric::aZ_bZ(z);
        rows.push_back(DeltaEvenRow{z, numeric::ext_mult_order(13, a).order,
                                    numeric::ext_mult_order(13, b).order});
    }
    return rows;
}

std::vector<LemmaViiHit> lemma_vii_search(unsigned long z_cap, bool prune) {
    if (z_cap < 2)
        throw std::invalid_argument("lemma_vii_search: need cap >= 2");
    constexpr unsigned long y_cap = 77863; // one above the z <= 8 delta bound
    std::vector<LemmaViiHit> hits;
    for (unsigned long z = 1; z + 1 < z_cap; ++z) {
        const mpz_class cz = pow13(z);
        for (unsigned long Z = z + 1; Z < z_cap; ++Z) {
            if (prune && Z >= 7 && 47 * Z >= 200 * z)
                continue;
            const mpz_class n = pow13(Z) - cz;
            for (unsigned long y = 10; y <= y_cap; y += 6) {
                mpz_class low = 1;
                mpz_mul_2exp(low.get_mpz_t(), low.get_mpz_t(), y);
                if (low - 2 > n)
                    break; // even b = 2 already overshoots
                const auto [root, exact] = numeric::integer_nth_root(n, y);
                (void)exact;
                for (const mpz_class& b : {root, mpz_class(root + 1)}) {
                    if (b < 2 || b >= cz || gcd(b, 13) != 1)
                        continue;
                    if (pow_mpz(b, y) - b == n)
                        hits.push_back(LemmaViiHit{b, y, z, Z});
                }
            }
        }
    }
    return hits;
}

std::vector<std::pair<mpz_class, unsigned long>> y0_eq4_search(unsigned long c) {
    if (c < 7)
        throw std::invalid_argument("y0_eq4_search: need c >= 7");
    std::vector<std::pair<mpz_class, unsigned long>> hits;
    mpz_class cz = 1;
    for (unsigned long z = 1;; ++z) {
        cz *= c;
        if (cz >= 16)
            break;
        const mpz_class n = pow_mpz(cz, 3) - cz;
        const auto [root, exact] = numeric::integer_nth_root(n, 4);
        (void)exact;
        for (const mpz_class& b : {root, mpz_class(root + 1)}) {
            if (b >= 2 && pow_mpz(b, 4) - b == n)
                hits.emplace_back(b, z);
        }
    }
    return hits;
}

std::vector<BesiTuple> besi_search(unsigned long s_max, unsigned k_max, unsigned n_max) {
    if (s_max < 1 || k_max < 1 || n_max < 3)
        throw std::invalid_argument("besi_search: need positive bounds and n_max >= 3");
    if (s_max > 3000000000UL)
        throw std::invalid_argument("besi_search: box too large for 64-bit scan");
    const std::uint64_t cap = static_cast<std::uint64_t>(s_max) * s_max;

    // value -> every (T, n) with T^n = value inside the box
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> powers;
    for (unsigned n = 3; n <= n_max; ++n) {
        for (std::uint64_t t = 2;; ++t) {
            std::uint64_t v = 1;
            bool over = false;
            for (unsigned i = 0; i < n; ++i) {
                if (v > cap / t) {
                    over = true;
                    break;
                }
                v *= t;
            }
            if (over)
                break;
            powers[v].emplace_back(static_cast<std::uint32_t>(t), n);
        }
    }

    std::vector<std::uint64_t> p13{13};
    while (p13.size() < k_max && p13.back() <= cap / 13)
        p13.push_back(p13.back() * 13);

    std::vector<BesiTuple> out;
    for (unsigned long s = 2; s <= s_max; ++s) {
        if (s % 13 == 0)
            continue;
        const std::uint64_t s2 = static_cast<std::uint64_t>(s) * s;
        for (std::size_t i = 0; i < p13.size() && i < k_max; ++i) {
            if (p13[i] + 8 > s2)
                break;
            const auto it = powers.find(s2 - p13[i]);
            if (it == powers.end())
                continue;
            for (const auto& [t, n] : it->second)
                out.push_back(BesiTuple{s, t, static_cast<unsigned>(i + 1), n});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// 13^e at 1024-bit precision with directed rounding, e given in hundredths
// and negative for every caller here.
void pow13_centi(mpfr_t out, long exp_centi, mpfr_rnd_t rnd) {
    if (exp_centi >= 0)
        throw std::logic_error("pow13_centi: expects a negative exponent");
    const mpfr_rnd_t inv = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
    mpfr_t e, l;
    mpfr_init2(e, 1024);
    mpfr_init2(l, 1024);
    // exp(e/100 * ln 13) with e < 0: the quotient follows rnd, the positive
    // log factor goes the other way, so the product is a true rnd-bound.
    mpfr_set_si(e, exp_centi, MPFR_RNDN);
    mpfr_div_ui(e, e, 100, rnd);
    mpfr_log_ui(l, 13, inv);
    mpfr_mul(e, e, l, rnd);
    mpfr_exp(out, e, rnd);
    mpfr_clear(e);
    mpfr_clear(l);
}

} // namespace

std::vector<GapRow> sqrt13_gap_check(unsigned k_min, unsigned k_max) {
    if (k_min < 3 || k_max < k_min)
        throw std::invalid_argument("sqrt13_gap_check: need 3 <= k_min <= k_max");
    std::vector<GapRow> rows;
    mpfr_t den, gap_lo, gap_hi, thr, coarse, s13, tmp;
    for (auto* v : {&den, &gap_lo, &gap_hi, &thr, &coarse, &s13, &tmp})
        mpfr_init2(*v, 1024);

    for (unsigned k = k_min; k <= k_max; ++k) {
        const mpz_class n = pow13(2 * k + 1);
        const mpz_class s = isqrt(n);
        mpz_class p = s; // nearest of s, s+1 to sqrt(n)
        if (2 * n > s * s + (s + 1) * (s + 1))
            p = s + 1;
        const mpz_class diff = abs(n - p * p);
        const mpz_class q13k = pow13(k);

        // gap = |n - p^2| / (13^k (13^k sqrt13 + p)), bounded both ways.
        auto gap_bound = [&](mpfr_t out, mpfr_rnd_t rnd) {
            const mpfr_rnd_t inv = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
            mpfr_sqrt_ui(s13, 13, inv);
            mpfr_set_z(tmp, q13k.get_mpz_t(), MPFR_RNDN); // exact
            mpfr_mul(den, s13, tmp, inv);
            mpfr_add_z(den, den, p.get_mpz_t(), inv);
            mpfr_mul(den, den, tmp, inv);
            mpfr_set_z(out, diff.get_mpz_t(), MPFR_RNDN); // exact
            mpfr_div(out, out, den, rnd);
        };
        gap_bound(gap_lo, MPFR_RNDD);
        gap_bound(gap_hi, MPFR_RNDU);
        pow13_centi(thr, -153L * static_cast<long>(k), MPFR_RNDU);
        pow13_centi(coarse, -100L * static_cast<long>(k), MPFR_RNDD);

        GapRow row;
        row.k = k;
        row.gap = mpfr_get_d(gap_lo, MPFR_RNDN);
        row.threshold = mpfr_get_d(thr, MPFR_RNDN);
        row.pass = mpfr_cmp(gap_lo, thr) > 0;
        row.below_coarse = mpfr_cmp(gap_hi, coarse) < 0;
        rows.push_back(row);
    }
    for (auto* v : {&den, &gap_lo, &gap_hi, &thr, &coarse, &s13, &tmp})
        mpfr_clear(*v);
    return rows;
}

} // namespace uniteq::sieve13
