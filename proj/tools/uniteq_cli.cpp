// Command-line front end over the campaign runners.  Exit codes: 0 all checks
// pass, 1 a check was falsified, 2 usage error, 3 I/O failure.

#include "uniteq/campaign.hpp"
#include "uniteq/errors.hpp"
#include "uniteq/sieve13.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

int finish(const uniteq::campaign::CampaignReport& report, const std::string& out_dir = {}) {
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream f(std::filesystem::path(out_dir) / "summary.json",
                        std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::ios_base::failure("cannot write summary.json under " + out_dir);
        f << uniteq::campaign::emit_report(report, "json");
    }
    std::cout << uniteq::campaign::emit_report(report, "text");
    return report.passed() ? 0 : 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for unit equations a^x + b^y = c^z"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file; command-line flags win");

    auto* verify = app.add_subcommand("verify", "re-check published identity lists");
    verify->require_subcommand(1);
    auto* exceptional =
        verify->add_subcommand("exceptional-lists", "both exceptional solution lists");

    auto* sieve = app.add_subcommand("sieve", "three-step sieve for square cases");
    sieve->require_subcommand(1);
    auto* c13 = sieve->add_subcommand("c13", "the c = 13 sieve");
    std::string case_name;
    c13->add_option("--case", case_name, "sieve case, v or vi")
        ->required()
        ->check(CLI::IsMember({"v", "vi"}));
    std::optional<unsigned long> z_max;
    c13->add_option("--z-max", z_max, "cap the exponent z below the case bound");
    std::optional<int> n_prime;
    c13->add_option("--n-prime", n_prime, "restrict to one n' value")->check(CLI::Range(0, 3));
    unsigned workers = 1;
    c13->add_option("--workers", workers, "worker threads")
        ->check(CLI::Range(1, 512))
        ->envname("UNITEQ_WORKERS");
    std::string checkpoint;
    c13->add_option("--checkpoint", checkpoint, "checkpoint file updated after each chunk");
    bool resume = false;
    c13->add_flag("--resume", resume, "skip chunks recorded in the checkpoint");
    bool full = false;
    c13->add_flag("--full", full, "case vi: run to the proven z bound instead of z <= 2000");
    bool no_strong = false;
    c13->add_flag("--no-strong-filter", no_strong,
                  "drop the mod-13 residue filter, keep only the literal congruences");
    std::string sieve_out;
    c13->add_option("--out", sieve_out, "directory for list1/list2/matches artifacts");

    auto* bounds_cmd = app.add_subcommand("bounds", "effective constants");
    bool show = false;
    bounds_cmd->add_flag("--show", show, "print the constant table");

    auto* search = app.add_subcommand("search", "enumerate a^x + b^y = c^z");
    std::string sa, sb, sc;
    unsigned long search_z_max = 0;
    search->add_option("--a", sa)->required();
    search->add_option("--b", sb)->required();
    search->add_option("--c", sc)->required();
    search->add_option("--z-max", search_z_max)->required();
    std::string search_out;
    search->add_option("--out", search_out, "directory for solutions.jsonl");

    auto* pillai = app.add_subcommand("pillai", "enumerate a^x - b^y = c");
    std::string pa, pb, pc;
    unsigned long pillai_x_max = 0;
    pillai->add_option("--a", pa)->required();
    pillai->add_option("--b", pb)->required();
    pillai->add_option("--c", pc)->required();
    pillai->add_option("--x-max", pillai_x_max)->required();
    std::string pillai_out;
    pillai->add_option("--out", pillai_out, "directory for solutions.jsonl");

    auto* closures = app.add_subcommand("closures", "finite searches behind the emptiness claims");
    unsigned long z_max_vii = 90;
    closures->add_option("--z-max-vii", z_max_vii, "cap for the power-gap search");
    std::string besi_box;
    closures->add_option("--besi-box", besi_box, "S,K,N search box");
    unsigned sqrt13_kmax = 60;
    closures->add_option("--sqrt13-kmax", sqrt13_kmax, "largest k for the gap rows");

    auto* report_cmd = app.add_subcommand("report", "reformat a stored summary");
    std::string report_in, report_format = "text";
    report_cmd->add_option("--in", report_in, "summary.json produced by another run")->required();
    report_cmd->add_option("--format", report_format)
        ->check(CLI::IsMember({"json", "csv", "text"}));

    try {
        app.parse(argc, argv);

        if (exceptional->parsed())
            return finish(uniteq::campaign::verify_exceptional_lists());

        if (c13->parsed()) {
            uniteq::campaign::SieveRunConfig config;
            config.case_tag = case_name == "v" ? uniteq::sieve13::CaseTag::v
                                               : uniteq::sieve13::CaseTag::vi;
            config.z_max = z_max;
            if (case_name == "vi" && !full && !z_max)
                config.z_max = 2000;
            config.n_prime_only = n_prime;
            config.workers = workers;
            config.checkpoint_path = checkpoint;
            config.resume = resume;
            config.output_dir = sieve_out;
            config.strong_mod13_filter = !no_strong;
            return finish(uniteq::campaign::run_sieve(config), sieve_out);
        }

        if (bounds_cmd->parsed())
            return finish(uniteq::campaign::bounds_report());

        if (search->parsed())
            return finish(uniteq::campaign::run_search(mpz_class(sa), mpz_class(sb),
                                                       mpz_class(sc), search_z_max,
                                                       search_out),
                          search_out);

        if (pillai->parsed())
            return finish(uniteq::campaign::run_pillai(mpz_class(pa), mpz_class(pb),
                                                       mpz_class(pc), pillai_x_max,
                                                       pillai_out),
                          pillai_out);

        if (closures->parsed()) {
            uniteq::campaign::ClosureConfig config;
            config.z_max_vii = z_max_vii;
            config.sqrt13_k_max = sqrt13_kmax;
            if (!besi_box.empty()) {
                std::istringstream in(besi_box);
                std::string s, k, n;
                if (!std::getline(in, s, ',') || !std::getline(in, k, ',') ||
                    !std::getline(in, n, ','))
                    throw std::invalid_argument("--besi-box must be S,K,N");
                config.besi_s_max = std::stoul(s);
                config.besi_k_max = static_cast<unsigned>(std::stoul(k));
                config.besi_n_max = static_cast<unsigned>(std::stoul(n));
            }
            return finish(uniteq::campaign::run_closures(config));
        }

        if (report_cmd->parsed()) {
            const auto report = uniteq::campaign::parse_report_json(read_file(report_in));
            std::cout << uniteq::campaign::emit_report(report, report_format);
            return 0;
        }

        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const uniteq::falsification_error& e) {
        std::cerr << "falsified: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "i/o: " << e.what() << '\n';
        return 3;
    }
}
