#include "uniteq/campaign.hpp"

#include "uniteq/bounds.hpp"
#include "uniteq/engine.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace uniteq::campaign {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void add_check(CampaignReport& report, std::string name, std::string expected,
               std::string actual, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.expected = std::move(expected);
    c.actual = std::move(actual);
    c.detail = std::move(detail);
    c.passed = c.expected == c.actual;
    if (!c.passed)
        report.falsifications.push_back(c.name + ": expected " + c.expected + ", got " +
                                        c.actual);
    report.checks.push_back(std::move(c));
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

void write_file(const fs::path& path, const std::string& content) {
    if (!path.parent_path().empty())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    f << content;
    f.flush();
    if (!f.good())
        throw std::ios_base::failure("write failed for " + path.string());
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    write_file(tmp, content);
    fs::rename(tmp, path);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += '"';
    return out;
}

} // namespace

void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name},
             {"passed", c.passed},
             {"expected", c.expected},
             {"actual", c.actual},
             {"detail", c.detail}};
}

void from_json(const json& j, CheckResult& c) {
    j.at("name").get_to(c.name);
    j.at("passed").get_to(c.passed);
    j.at("expected").get_to(c.expected);
    j.at("actual").get_to(c.actual);
    j.at("detail").get_to(c.detail);
}

void to_json(json& j, const CampaignReport& r) {
    j = json{{"mode", r.mode},
             {"inputs", r.inputs},
             {"counts", r.counts},
             {"checks", r.checks},
             {"falsifications", r.falsifications},
             {"elapsed_seconds", r.elapsed_seconds}};
}

void from_json(const json& j, CampaignReport& r) {
    j.at("mode").get_to(r.mode);
    j.at("inputs").get_to(r.inputs);
    j.at("counts").get_to(r.counts);
    j.at("checks").get_to(r.checks);
    j.at("falsifications").get_to(r.falsifications);
    j.at("elapsed_seconds").get_to(r.elapsed_seconds);
}

std::string emit_report(const CampaignReport& report, const std::string& format) {
    if (format == "json") {
        json j = report;
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "name,passed,expected,actual,detail\n";
        for (const auto& c : report.checks) {
            out += csv_quote(c.name) + ',' + (c.passed ? "true" : "false") + ',' +
                   csv_quote(c.expected) + ',' + csv_quote(c.actual) + ',' +
                   csv_quote(c.detail) + '\n';
        }
        return out;
    }
    if (format == "text") {
        std::ostringstream out;
        out << "mode: " << report.mode << '\n';
        for (const auto& [k, v] : report.inputs)
            out << "input " << k << " = " << v << '\n';
        for (const auto& [k, v] : report.counts)
            out << "count " << k << " = " << v << '\n';
        std::size_t width = 0;
        for (const auto& c : report.checks)
            width = std::max(width, c.name.size());
        for (const auto& c : report.checks) {
            out << "check " << c.name << std::string(width - c.name.size(), ' ')
                << (c.passed ? "  ok      " : "  failed  ") << "expected " << c.expected
                << ", got " << c.actual;
            if (!c.detail.empty())
                out << "  [" << c.detail << "]";
            out << '\n';
        }
        for (const auto& f : report.falsifications)
            out << "falsification: " << f << '\n';
        out << "elapsed_seconds: " << report.elapsed_seconds << '\n';
        out << (report.passed() ? "PASS" : "FAIL") << '\n';
        return out.str();
    }
    throw std::invalid_argument("emit_report: unknown format " + format);
}

CampaignReport parse_report_json(const std::string& text) {
    return json::parse(text).get<CampaignReport>();
}

namespace {

struct AbcRow {
    long a, b, c;
    unsigned long x, y, z;
};

constexpr AbcRow kAbcRows[] = {
    {3, 5, 2, 1, 1, 3},      {3, 5, 2, 3, 1, 5},      {3, 5, 2, 1, 3, 7},
    {3, 13, 2, 1, 1, 4},     {3, 13, 2, 5, 1, 8},     {1, 2, 3, 1, 1, 1},
    {1, 2, 3, 1, 3, 2},      {2, 5, 3, 2, 1, 2},      {2, 5, 3, 1, 2, 3},
    {2, 7, 3, 1, 1, 2},      {2, 7, 3, 5, 2, 4},      {2, 3, 11, 3, 1, 1},
    {2, 3, 11, 1, 2, 1},     {3, 10, 13, 1, 1, 1},    {3, 10, 13, 7, 1, 3},
    {2, 3, 35, 5, 1, 1},     {2, 3, 35, 3, 3, 1},     {2, 89, 91, 1, 1, 1},
    {2, 89, 91, 13, 1, 2},   {2, 5, 133, 7, 1, 1},    {2, 5, 133, 3, 3, 1},
    {2, 3, 259, 8, 1, 1},    {2, 3, 259, 4, 5, 1},    {3, 13, 2200, 7, 1, 1},
    {3, 13, 2200, 1, 3, 1},  {2, 91, 8283, 13, 1, 1}, {2, 91, 8283, 1, 2, 1},
};

struct PillaiRow {
    long a, b, c;
    unsigned long x, y;
};

constexpr PillaiRow kPillaiRows[] = {
    {2, 3, 5, 3, 1},         {2, 3, 5, 5, 3},         {2, 3, 13, 4, 1},
    {2, 3, 13, 8, 5},        {2, 5, 3, 3, 1},         {2, 5, 3, 7, 3},
    {3, 2, 1, 1, 1},         {3, 2, 1, 2, 3},         {13, 3, 10, 1, 1},
    {13, 3, 10, 3, 7},       {91, 2, 89, 1, 1},       {91, 2, 89, 2, 13},
    {6, 2, 4, 1, 1},         {6, 2, 4, 2, 5},         {6, 3, 1215, 4, 4},
    {6, 3, 1215, 5, 8},      {15, 6, 9, 1, 1},        {15, 6, 9, 2, 3},
    {280, 5, 275, 1, 1},     {280, 5, 275, 2, 7},     {4930, 30, 4900, 1, 1},
    {4930, 30, 4900, 2, 5},
};

} // namespace

CampaignReport verify_exceptional_lists() {
    Stopwatch clock;
    CampaignReport report;
    report.mode = "exceptional-lists";

    for (const auto& r : kAbcRows) {
        std::ostringstream name;
        name << "sum " << r.a << '^' << r.x << " + " << r.b << '^' << r.y << " = " << r.c
             << '^' << r.z;
        const mpz_class lhs = pow_mpz(r.a, r.x) + pow_mpz(r.b, r.y);
        add_check(report, name.str(), pow_mpz(r.c, r.z).get_str(), lhs.get_str());
    }
    for (unsigned long r = 2; r <= 64; ++r) {
        const mpz_class b = pow_mpz(2, r) - 1;
        const mpz_class c = pow_mpz(2, r) + 1;
        const bool first = 2 + b == c;
        const bool second = pow_mpz(2, r + 2) + b * b == c * c;
        add_check(report, "sum family r=" + std::to_string(r), "both identities hold",
                  first && second ? "both identities hold" : "identity failed");
    }
    for (const auto& r : kPillaiRows) {
        std::ostringstream name;
        name << "difference " << r.a << '^' << r.x << " - " << r.b << '^' << r.y << " = "
             << r.c;
        const mpz_class lhs = pow_mpz(r.a, r.x) - pow_mpz(r.b, r.y);
        add_check(report, name.str(), std::to_string(r.c), lhs.get_str());
    }

    const struct {
        long a, b, c;
        long expected;
    } count_rows[] = {{3, 10, 13, 2}, {3, 5, 2, 3}, {2, 7, 3, 2}, {2, 5, 3, 2}};
    for (const auto& row : count_rows) {
        engine::EquationTriple t{row.a, row.b, row.c};
        const long n = static_cast<long>(engine::count_solutions(t, 20));
        std::ostringstream name;
        name << "solution count (" << row.a << ',' << row.b << ',' << row.c << ") z<=20";
        add_check(report, name.str(), std::to_string(row.expected), std::to_string(n));
    }

    report.counts["sum_identities"] = static_cast<long>(std::size(kAbcRows));
    report.counts["sum_parametric"] = 63;
    report.counts["difference_identities"] = static_cast<long>(std::size(kPillaiRows));
    report.counts["count_regressions"] = 4;
    report.elapsed_seconds = clock.seconds();
    return report;
}

CampaignReport bounds_report() {
    Stopwatch clock;
    CampaignReport report;
    report.mode = "bounds";

    long tol_failures = 0, recheck_failures = 0;
    for (const auto& row : bounds::reference_constant_checks()) {
        std::string detail = std::string("tolerance ") +
                             (row.within_tolerance ? "ok" : "violated") +
                             "; reference re-check " +
                             (row.reference_consistent ? "ok" : "violated");
        tol_failures += row.within_tolerance ? 0 : 1;
        recheck_failures += row.reference_consistent ? 0 : 1;
        add_check(report, row.name,
                  std::to_string(row.reference) + " consistent",
                  std::to_string(row.pass() ? row.reference : row.computed) +
                      (row.pass() ? " consistent" : " inconsistent"),
                  "computed " + std::to_string(row.computed) + "; " + detail);
    }
    report.counts["constants"] = 10;
    report.counts["tolerance_failures"] = tol_failures;
    report.counts["recheck_failures"] = recheck_failures;
    report.elapsed_seconds = clock.seconds();
    return report;
}

CampaignReport run_search(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          unsigned long z_max, const std::string& output_dir) {
    Stopwatch clock;
    CampaignReport report;
    report.mode = "search";
    report.inputs = {{"a", a.get_str()},
                     {"b", b.get_str()},
                     {"c", c.get_str()},
                     {"z_max", std::to_string(z_max)}};
    engine::EquationTriple t{a, b, c};
    const auto solutions = engine::enumerate_solutions(t, z_max);
    report.counts["solutions"] = static_cast<long>(solutions.size());
    if (!output_dir.empty()) {
        std::string lines;
        for (const auto& s : solutions)
            lines += engine::solution_json_line(t, s) + "\n";
        write_file(fs::path(output_dir) / "solutions.jsonl", lines);
    }
    report.elapsed_seconds = clock.seconds();
    return report;
}

CampaignReport run_pillai(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                          unsigned long x_max, const std::string& output_dir) {
    Stopwatch clock;
    CampaignReport report;
    report.mode = "pillai";
    report.inputs = {{"a", a.get_str()},
                     {"b", b.get_str()},
                     {"c", c.get_str()},
                     {"x_max", std::to_string(x_max)}};
    const auto solutions = engine::enumerate_pillai(a, b, c, x_max);
    report.counts["solutions"] = static_cast<long>(solutions.size());
    if (!output_dir.empty()) {
        std::string lines;
        for (const auto& [x, y] : solutions) {
            std::ostringstream line;
            line << "{\"a\":" << a << ",\"b\":" << b << ",\"c\":" << c << ",\"x\":" << x
                 << ",\"y\":" << y << "}\n";
            lines += line.str();
        }
        write_file(fs::path(output_dir) / "solutions.jsonl", lines);
    }
    report.elapsed_seconds = clock.seconds();
    return report;
}

CampaignReport run_closures(const ClosureConfig& config) {
    Stopwatch clock;
    CampaignReport report;
    report.mode = "closures";
    report.inputs = {{"besi_box", std::to_string(config.besi_s_max) + "," +
                                      std::to_string(config.besi_k_max) + "," +
                                      std::to_string(config.besi_n_max)},
                     {"sqrt13_k_max", std::to_string(config.sqrt13_k_max)},
                     {"z_max_vii", std::to_string(config.z_max_vii)}};

    const auto vii = sieve13::lemma_vii_search(config.z_max_vii, true);
    report.counts["vii_hits"] = static_cast<long>(vii.size());
    add_check(report, "power-gap search hits", "0", std::to_string(vii.size()));

    for (unsigned long c : {7UL, 13UL}) {
        const auto hits = sieve13::y0_eq4_search(c);
        add_check(report, "fourth-power gap hits c=" + std::to_string(c), "0",
                  std::to_string(hits.size()));
    }

    const auto besi = sieve13::besi_search(config.besi_s_max, config.besi_k_max,
                                           config.besi_n_max);
    report.counts["besi_tuples"] = static_cast<long>(besi.size());
    const std::vector<sieve13::BesiTuple> expected_besi = {
        {14, 3, 2, 3}, {16, 3, 1, 5}, {499, 12, 2, 5}};
    if (config.besi_s_max >= 499 && config.besi_k_max >= 2 && config.besi_n_max >= 5) {
        const bool canonical = config.besi_s_max == 100000 && config.besi_k_max == 10 &&
                               config.besi_n_max == 20;
        std::ostringstream actual;
        if (canonical) {
            actual << (besi == expected_besi ? "exactly the three known tuples"
                                             : "unexpected tuple set");
            add_check(report, "square minus 13-power box", "exactly the three known tuples",
                      actual.str());
        } else {
            const bool contains = std::includes(besi.begin(), besi.end(),
                                                expected_besi.begin(), expected_besi.end());
            add_check(report, "square minus 13-power box", "contains the three known tuples",
                      contains ? "contains the three known tuples" : "missing known tuples");
        }
    }

    const auto gaps = sieve13::sqrt13_gap_check(3, config.sqrt13_k_max);
    bool all_pass = true, all_coarse = true;
    for (const auto& row : gaps) {
        all_pass = all_pass && row.pass;
        all_coarse = all_coarse && row.below_coarse;
    }
    report.counts["sqrt13_rows"] = static_cast<long>(gaps.size());
    add_check(report, "sqrt13 approximation gaps", "all above threshold",
              all_pass ? "all above threshold" : "threshold violated");
    add_check(report, "sqrt13 coarse ceiling", "all below 13^-k",
              all_coarse ? "all below 13^-k" : "ceiling violated");

    const auto table = sieve13::delta_even_table(120);
    static constexpr std::array<std::array<unsigned long, 2>, 6> pattern = {
        {{6, 3}, {3, 6}, {2, 1}, {3, 6}, {6, 3}, {1, 2}}}; // indexed by Z mod 6
    bool table_ok = table.size() == 120;
    for (const auto& row : table) {
        const auto& want = pattern[row.Z % 6];
        table_ok = table_ok && row.e_a == want[0] && row.e_b == want[1];
    }
    add_check(report, "order table rows Z=1..120", "all rows match the residue pattern",
              table_ok ? "all rows match the residue pattern" : "row mismatch");

    bool sum_ok = true;
    for (unsigned long z = 1; z <= 60; ++z) {
        const auto [a, b] = numeric::aZ_bZ(z);
        sum_ok = sum_ok && a * a + b * b == pow_mpz(13, z);
    }
    add_check(report, "two-square decomposition Z=1..60", "all decompositions verify",
              sum_ok ? "all decompositions verify" : "decomposition failed");

    report.elapsed_seconds = clock.seconds();
    return report;
}

namespace {

struct ChunkKey {
    int n_prime;
    unsigned long z_lo, z_hi;

    friend auto operator<=>(const ChunkKey&, const ChunkKey&) = default;
};

std::string checkpoint_to_json(sieve13::CaseTag tag, const std::set<ChunkKey>& done,
                               const std::vector<sieve13::Step1Record>& records) {
    json j;
    j["case"] = tag == sieve13::CaseTag::v ? "v" : "vi";
    j["completed_chunks"] = json::array();
    for (const auto& c : done)
        j["completed_chunks"].push_back({c.n_prime, c.z_lo, c.z_hi});
    j["list1"] = json::array();
    std::vector<sieve13::Step1Record> sorted = records;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& r : sorted)
        j["list1"].push_back({r.z, r.n_prime, r.t});
    return j.dump() + "\n";
}

void checkpoint_from_json(const std::string& text, sieve13::CaseTag tag,
                          std::set<ChunkKey>& done,
                          std::vector<sieve13::Step1Record>& records) {
    const json j = json::parse(text);
    const std::string want = tag == sieve13::CaseTag::v ? "v" : "vi";
    if (j.at("case").get<std::string>() != want)
        throw std::invalid_argument("checkpoint belongs to the other sieve case");
    for (const auto& c : j.at("completed_chunks"))
        done.insert(ChunkKey{c.at(0).get<int>(), c.at(1).get<unsigned long>(),
                             c.at(2).get<unsigned long>()});
    for (const auto& r : j.at("list1"))
        records.push_back(sieve13::Step1Record{r.at(0).get<unsigned long>(),
                                               r.at(1).get<int>(),
                                               r.at(2).get<unsigned long>()});
}

} // namespace

CampaignReport run_sieve(const SieveRunConfig& config) {
    Stopwatch clock;
    const bool is_v = config.case_tag == sieve13::CaseTag::v;
    const sieve13::SieveCase c = is_v ? sieve13::SieveCase::v() : sieve13::SieveCase::vi();

    CampaignReport report;
    report.mode = is_v ? "sieve-v" : "sieve-vi";
    report.inputs = {
        {"case", is_v ? "v" : "vi"},
        {"chunk", std::to_string(config.chunk)},
        {"n_prime", config.n_prime_only ? std::to_string(*config.n_prime_only) : "all"},
        {"resume", config.resume ? "true" : "false"},
        {"workers", std::to_string(config.workers)},
        {"z_max", config.z_max ? std::to_string(*config.z_max) : "case default"},
    };
    if (config.workers < 1)
        throw std::invalid_argument("run_sieve: workers must be at least 1");
    if (config.chunk < 1)
        throw std::invalid_argument("run_sieve: chunk must be at least 1");

    std::set<ChunkKey> done;
    std::vector<sieve13::Step1Record> collected;
    if (config.resume) {
        if (config.checkpoint_path.empty())
            throw std::invalid_argument("run_sieve: resume needs a checkpoint path");
        std::ifstream in(config.checkpoint_path, std::ios::binary);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            checkpoint_from_json(buf.str(), config.case_tag, done, collected);
        }
    }

    std::vector<ChunkKey> pending;
    for (int np = 0; np <= 3; ++np) {
        if (config.n_prime_only && *config.n_prime_only != np)
            continue;
        const unsigned long z_floor = std::max<unsigned long>(1, static_cast<unsigned long>(np));
        unsigned long z_hi = c.z_u[static_cast<std::size_t>(np)];
        if (config.z_max)
            z_hi = std::min(z_hi, *config.z_max);
        for (unsigned long lo = z_floor; lo <= z_hi; lo += config.chunk) {
            const ChunkKey key{np, lo, std::min(lo + config.chunk - 1, z_hi)};
            if (!done.count(key))
                pending.push_back(key);
        }
    }

    const sieve13::SquareFilter filter;
    std::mutex state_mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size())
                return;
            try {
                const ChunkKey key = pending[i];
                auto part = sieve13::step1_range(c, key.n_prime, key.z_lo, key.z_hi, filter);
                std::lock_guard<std::mutex> lock(state_mutex);
                collected.insert(collected.end(), part.begin(), part.end());
                done.insert(key);
                if (!config.checkpoint_path.empty())
                    write_file_atomic(config.checkpoint_path,
                                      checkpoint_to_json(config.case_tag, done, collected));
            } catch (...) {
                std::lock_guard<std::mutex> lock(state_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    const unsigned nthreads =
        std::max(1u, std::min<unsigned>(config.workers,
                                        static_cast<unsigned>(pending.size())));
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < nthreads; ++i)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);

    std::sort(collected.begin(), collected.end());
    collected.erase(std::unique(collected.begin(), collected.end()), collected.end());

    const auto stage2 = sieve13::step2(collected, c, config.strong_mod13_filter);
    const auto matches = sieve13::step3(stage2.records);

    report.counts["list1"] = static_cast<long>(collected.size());
    report.counts["list2"] = static_cast<long>(stage2.survivors.size());
    report.counts["expanded_records"] = static_cast<long>(stage2.records.size());
    report.counts["matches"] = static_cast<long>(matches.size());

    const bool full_range = !config.n_prime_only &&
                            (!config.z_max || *config.z_max >= c.z_u[0]);
    if (is_v && full_range) {
        add_check(report, "list1 count", "114", std::to_string(collected.size()));
        add_check(report, "list2 count", "108", std::to_string(stage2.survivors.size()));
    }
    if (!is_v) {
        long late_squares = 0;
        for (const auto& r : collected)
            if (r.z >= 8)
                ++late_squares;
        add_check(report, "square values with z >= 8", "0", std::to_string(late_squares));
    }
    add_check(report, "match count", "0", std::to_string(matches.size()));

    if (!config.output_dir.empty()) {
        std::string l1;
        for (const auto& r : collected) {
            json j = {{"n_prime", r.n_prime}, {"t", r.t}, {"z", r.z}};
            l1 += j.dump() + "\n";
        }
        std::string l2;
        for (const auto& s : stage2.survivors) {
            json roots = json::array();
            for (const auto& r : s.admissible_roots)
                roots.push_back(r.get_str());
            json j = {{"n_prime", s.record.n_prime},
                      {"roots", roots},
                      {"t", s.record.t},
                      {"z", s.record.z}};
            l2 += j.dump() + "\n";
        }
        std::string l3;
        for (const auto& m : matches) {
            json j = {{"X", m.X},          {"Y", m.Y}, {"Z", m.Z}, {"a", m.a.get_str()},
                      {"b", m.b.get_str()}, {"x", m.x}, {"y", m.y}, {"z", m.z}};
            l3 += j.dump() + "\n";
        }
        write_file(fs::path(config.output_dir) / "list1.jsonl", l1);
        write_file(fs::path(config.output_dir) / "list2.jsonl", l2);
        write_file(fs::path(config.output_dir) / "matches.jsonl", l3);
    }

    report.elapsed_seconds = clock.seconds();
    return report;
}

namespace {

std::string param_or(const std::map<std::string, std::string>& params,
                     const std::string& key, const std::string& fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string require_param(const std::map<std::string, std::string>& params,
                          const std::string& key, const std::string& mode) {
    const auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("mode " + mode + " requires parameter " + key);
    return it->second;
}

unsigned long to_ulong(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
    }
}

} // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
    CampaignReport report;
    if (config.workers < 1)
        throw std::invalid_argument("run_campaign: workers must be at least 1");

    if (config.mode == "exceptional-lists") {
        report = verify_exceptional_lists();
    } else if (config.mode == "bounds") {
        report = bounds_report();
    } else if (config.mode == "sieve-v" || config.mode == "sieve-vi") {
        SieveRunConfig sc;
        sc.case_tag = config.mode == "sieve-v" ? sieve13::CaseTag::v : sieve13::CaseTag::vi;
        sc.workers = config.workers;
        sc.output_dir = config.output_path;
        const std::string zmax = param_or(config.parameters, "z-max", "");
        if (!zmax.empty())
            sc.z_max = to_ulong(zmax, "z-max");
        const std::string np = param_or(config.parameters, "n-prime", "");
        if (!np.empty())
            sc.n_prime_only = static_cast<int>(to_ulong(np, "n-prime"));
        sc.checkpoint_path = param_or(config.parameters, "checkpoint", "");
        sc.resume = param_or(config.parameters, "resume", "false") == "true";
        const std::string chunk = param_or(config.parameters, "chunk", "");
        if (!chunk.empty())
            sc.chunk = to_ulong(chunk, "chunk");
        report = run_sieve(sc);
    } else if (config.mode == "search") {
        report = run_search(mpz_class(require_param(config.parameters, "a", config.mode)),
                            mpz_class(require_param(config.parameters, "b", config.mode)),
                            mpz_class(require_param(config.parameters, "c", config.mode)),
                            to_ulong(require_param(config.parameters, "z-max", config.mode),
                                     "z-max"),
                            config.output_path);
    } else if (config.mode == "pillai") {
        report = run_pillai(mpz_class(require_param(config.parameters, "a", config.mode)),
                            mpz_class(require_param(config.parameters, "b", config.mode)),
                            mpz_class(require_param(config.parameters, "c", config.mode)),
                            to_ulong(require_param(config.parameters, "x-max", config.mode),
                                     "x-max"),
                            config.output_path);
    } else if (config.mode == "closures") {
        ClosureConfig cc;
        cc.z_max_vii = to_ulong(param_or(config.parameters, "z-max-vii", "90"), "z-max-vii");
        cc.sqrt13_k_max = static_cast<unsigned>(
            to_ulong(param_or(config.parameters, "sqrt13-kmax", "60"), "sqrt13-kmax"));
        const std::string box = param_or(config.parameters, "besi-box", "");
        if (!box.empty()) {
            std::istringstream in(box);
            std::string s, k, n;
            if (!std::getline(in, s, ',') || !std::getline(in, k, ',') ||
                !std::getline(in, n, ','))
                throw std::invalid_argument("besi-box must be S,K,N");
            cc.besi_s_max = to_ulong(s, "besi-box S");
            cc.besi_k_max = static_cast<unsigned>(to_ulong(k, "besi-box K"));
            cc.besi_n_max = static_cast<unsigned>(to_ulong(n, "besi-box N"));
        }
        report = run_closures(cc);
    } else {
        throw std::invalid_argument("unknown campaign mode " + config.mode);
    }

    if (!config.output_path.empty())
        write_file(fs::path(config.output_path) / "summary.json",
                   emit_report(report, "json"));
    return report;
}

} // namespace uniteq::campaign
