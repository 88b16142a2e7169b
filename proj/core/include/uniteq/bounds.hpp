#pragma once

// Evaluators for two explicit non-Archimedean linear-forms-in-logarithms
// bounds, and the concrete numeric constants they induce for base 13: the
// K1/K2/K3 family and the per-n' ceiling for the square-exponent case.
//
// Real arithmetic runs at 192-bit precision.  Wherever a result feeds a
// completeness claim the rounding is outward, so every returned bound is a
// true bound; floor/ceil extractions are certified by computing both a
// rounded-down and a rounded-up value and requiring them to agree.

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

namespace uniteq::bounds {

// Parameters for the power-residue bound on a composite modulus M.
struct MadicParams {
    unsigned long modulus = 0; // M > 1
    unsigned long g = 0;
    double h1 = 0; // >= log M
    double h2 = 0; // >= log M
    unsigned long b1 = 0;
    unsigned long b2 = 0;
};

// Parameters for the prime-power bound in a degree-D field.
struct PadicFieldParams {
    unsigned long p = 0;
    unsigned long d = 0;    // field degree
    unsigned long f_pi = 0; // residue degree of the chosen prime ideal
    unsigned long g = 0;
    double h1 = 0; // >= log p
    double h2 = 0; // >= log p
    unsigned long b1 = 0;
    unsigned long b2 = 0;
};

struct BoundReport {
    double value = 0;
    std::string dominated_branch; // which argument of the inner max won
};

// value = 53.6 g H1 H2 / log^4 M * max{log b* + loglog M + 0.64, 4 log M}^2
// with b* = b1/H2 + b2/H1.
BoundReport bugeaud_madic_bound(const MadicParams& p);

// value = 27.3 D^2 p g H1 H2 / (f_pi^2 (p-1) log^4 p)
//         * max{log b* + loglog p + 0.4, (8 f_pi / D) log p, 10}^2.
BoundReport bugeaud_laurent_bound(const PadicFieldParams& p);

// Smallest integer T_u >= t_floor such that T > rhs(T) for every T >= T_u.
// rhs must grow at most polylogarithmically; a non-crossing rhs throws.
// The search certifies a dyadic tail above its scan horizon, then scans down
// for the last integer violating T > rhs(T).
long fixed_point_bound(const std::function<double(double)>& rhs, long t_floor);

// The z < K1 log a log b constant; the flag selects whether min{a,b} is
// below or above 13.  Computed: 2367 (below), 843 (above).
long k1(bool min_base_below_13, double lead_constant = 53.6);

// The zZ <= K2 log a log b constant for z >= 9.  Computed: 10459.
long k2(double lead_constant = 53.611);

enum class K3Case { m_lt_c_z_le_8, m_gt_c_z_le_8, z_ge_9 };

// Cap on delta = |xY - Xy|: 77862 / 44368 / 68809 by case.
long k3(K3Case which);

constexpr int n_prime_max() { return 3; }

// Upper bound for z in the square-exponent case, per n' in 0..3.
// Computed: 23661, 23662, 47324, 70986.
long case_vi_z_bound(int n_prime);

// floor(k * log(base) * log 13), certified two-sided.  Requires base >= 2.
long exponent_cap(long k, const mpz_class& base);

// floor(k * log^2(13) * z), certified two-sided.
long delta_cap(long k, unsigned long z);

// One row of the constant-validation table: the freshly computed value, the
// reference value it is compared against, whether the computed value lies in
// [0.99 * reference, reference], and whether the reference value passes its
// own defining inequality when re-checked directly.
struct ConstantCheck {
    std::string name;
    long computed = 0;
    long reference = 0;
    bool within_tolerance = false;
    bool reference_consistent = false;
    bool pass() const { return within_tolerance && reference_consistent; }
};

// All ten named constants with their reference values.
std::vector<ConstantCheck> reference_constant_checks();

} // namespace uniteq::bounds
