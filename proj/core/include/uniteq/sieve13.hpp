#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

// Three-step sieve for a^x + b^y = 13^z over the two exponent-parity cases,
// plus the finite searches that close the remaining small configurations.
namespace uniteq::sieve13 {

enum class CaseTag { v, vi };

struct SieveCase {
    CaseTag case_tag;
    unsigned x_l;                      // smallest x examined in step 2
    std::array<unsigned long, 4> z_u;  // z upper bound per n' in 0..3

    static SieveCase v();   // x_l = 3, z_u = 9 for every n'
    static SieveCase vi();  // x_l = 2, z_u = {23650, 23651, 47322, 70986}
};

struct Step1Record {
    unsigned long z = 0;
    int n_prime = 0;
    unsigned long t = 0;

    friend auto operator<=>(const Step1Record&, const Step1Record&) = default;
};

// A step-1 record together with the roots (A -+ 1)/2 of 4t*13^{z-n'} - 3 = A^2
// that clear the size floor m_l; step 2 keeps exactly the records with at
// least one such root.
struct Step2Survivor {
    Step1Record record;
    std::vector<mpz_class> admissible_roots;
};

struct Step2Record {
    mpz_class a;
    mpz_class b;
    unsigned long x = 0;
    unsigned long y = 0;
    unsigned long z = 0;
    int n_prime = 0;

    friend bool operator==(const Step2Record&, const Step2Record&) = default;
};

struct Step2Result {
    std::vector<Step2Survivor> survivors;  // 108 in case v
    std::vector<Step2Record> records;      // expanded equation hits, kept with multiplicity
};

struct MatchRecord {
    mpz_class a;
    mpz_class b;
    unsigned long x = 0, y = 0, z = 0;
    unsigned long X = 0, Y = 0, Z = 0;

    friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// 48 smallest odd primes coprime to 13.
std::vector<unsigned> default_battery();

// Quadratic-residue screen for 4t*13^{z-n'} - 3. Rejection is proof of
// non-squareness; acceptance still requires the exact square root.
class SquareFilter {
public:
    explicit SquareFilter(const std::vector<unsigned>& battery = default_battery());

    // Residues of 4*13^{z-n'} modulo every battery prime, reusable across t.
    struct ZContext {
        std::vector<std::uint32_t> coeff;
    };
    ZContext context(unsigned long z, int n_prime) const;
    bool may_be_square(const ZContext& ctx, unsigned long t) const;

private:
    std::vector<unsigned> primes_;
    std::vector<std::vector<std::uint8_t>> residue_;
};

// One-shot form of the screen; builds a context per call.
bool fast_square_filter(unsigned long t, unsigned long z, int n_prime,
                        const std::vector<unsigned>& battery = default_battery());

// Largest admissible t for given (z, n'), the floor of
// (1 + 13^{-z/2} + 13^{-z}) * 13^{n'}, computed in integers.
mpz_class t_upper(unsigned long z, int n_prime);

// Size floor for step-2 roots: max{3, smallest m with 2m^2 >= 13^{z-n'}}.
mpz_class m_lower(unsigned long z, int n_prime);

// Step 1 over one (n', z) range; records are emitted in (n', z, t) order.
std::vector<Step1Record> step1_range(const SieveCase& c, int n_prime,
                                     unsigned long z_lo, unsigned long z_hi,
                                     const SquareFilter& filter);

// Full step 1; n_prime_only restricts to a single n', z_max overrides the
// per-case ceiling (used for desk runs of the large case).
std::vector<Step1Record> step1(const SieveCase& c,
                               std::optional<unsigned long> z_max = std::nullopt,
                               std::optional<int> n_prime_only = std::nullopt);

// Step 2: root extraction, size floor, and the congruence filters. The
// strong flag additionally requires a, b = 3, 4, 9, 10 (mod 13); disabling
// it keeps only the literal b^3 = +-1 (mod 13^{z-n'}) condition.
Step2Result step2(const std::vector<Step1Record>& list1, const SieveCase& c,
                  bool strong_mod13_filter = true);

// Exponent caps used by step 3, split on min{a,b} vs 13 and on z.
struct StepThreeConstants {
    long k1_below;    // min base < 13
    long k1_above;    // min base > 13
    long k3_below_z8; // z <= 8, min base < 13
    long k3_above_z8; // z <= 8, min base > 13
    long k3_z9;       // z >= 9

    static StepThreeConstants published();       // published values
    static StepThreeConstants from_bounds(); // recomputed via the bounds module
};

// Step 3: delta loop over both sign cases, exponent recovery by
// divisibility, exact power-of-13 confirmation. relax_k_parity admits even
// k (self-test plumbing; the real sieve requires odd k).
std::vector<MatchRecord> step3(const std::vector<Step2Record>& list2,
                               const StepThreeConstants& constants = StepThreeConstants::published(),
                               bool relax_k_parity = false);

// Extended orders modulo 13 of the coefficient pair attached to each even-Z
// class; 6-periodic in Z.
struct DeltaEvenRow {
    unsigned long Z;
    unsigned long e_a;
    unsigned long e_b;

    friend bool operator==(const DeltaEvenRow&, const DeltaEvenRow&) = default;
};
std::vector<DeltaEvenRow> delta_even_table(unsigned long z_max);

// Exhaustive check that 13^Z - 13^z = b^Y - b has no admissible solution:
// z < Z < z_cap, Y = 4 (mod 6), 10 <= Y <= 77863, 13^z > b, gcd(b,13) = 1.
// Pruning drops pairs with Z >= 7 that violate 47 Z < 200 z.
struct LemmaViiHit {
    mpz_class b;
    unsigned long y;
    unsigned long z;
    unsigned long Z;

    friend bool operator==(const LemmaViiHit&, const LemmaViiHit&) = default;
};
std::vector<LemmaViiHit> lemma_vii_search(unsigned long z_cap = 90, bool prune = true);

// Solutions of c^{3z} - c^z = b^4 - b with c^z < 16 (empty for c in {7,13}).
std::vector<std::pair<mpz_class, unsigned long>> y0_eq4_search(unsigned long c);

// All S^2 - 13^k = T^n with S <= s_max coprime to 13, k <= k_max,
// 3 <= n <= n_max, T >= 2.
struct BesiTuple {
    unsigned long S;
    unsigned long T;
    unsigned k;
    unsigned n;

    friend auto operator<=>(const BesiTuple&, const BesiTuple&) = default;
};
std::vector<BesiTuple> besi_search(unsigned long s_max, unsigned k_max, unsigned n_max);

// Rational approximation quality of sqrt(13): for each k the distance from
// sqrt(13) to the nearest P/13^k must exceed 13^{-1.53 k} (and stay below
// 13^{-k}); both comparisons are certified with directed rounding.
struct GapRow {
    unsigned k;
    double gap;        // display approximation
    double threshold;  // display approximation of 13^{-1.53 k}
    bool pass;         // gap > threshold, certified
    bool below_coarse; // gap < 13^{-k}, certified
};
std::vector<GapRow> sqrt13_gap_check(unsigned k_min = 3, unsigned k_max = 60);

} // namespace uniteq::sieve13
