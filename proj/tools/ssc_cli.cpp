// Command-line front end: single runs, sweeps and the Gauss-sum grid.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ssc/ssc.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "2,3,5", "1..4" or a mix such as "1..3,7"; "lo..hi" with lo > hi is empty.
std::vector<long long> parse_list(const std::string& text) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            try {
                const std::size_t dots = item.find("..");
                if (dots == std::string::npos) {
                    out.push_back(std::stoll(item));
                } else {
                    const long long lo = std::stoll(item.substr(0, dots)), hi = std::stoll(item.substr(dots + 2));
                    for (long long v = lo; v <= hi; ++v) out.push_back(v);
                }
            } catch (const std::logic_error&) {
                throw UsageError("cannot parse list item '" + item + "'");
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

template <class T>
std::vector<T> cast_list(const std::vector<long long>& v) {
    return std::vector<T>(v.begin(), v.end());
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character values of simple supercuspidal representations of SL(2) and SL(3) on the split torus"};
    app.set_config("--config", "", "key=value file; flags given on the command line take precedence");

    std::string group = "sl2", p_text = "3", r_text = "1", s_text, t_text, chi_text, mode = "compare", format = "json", out_path;
    long long q = 0, a_residue = 0;
    std::optional<long long> a, b;
    int precision = 0, bound = 0, gauss_radius = -1;
    unsigned long long budget = 200'000'000ULL;
    bool skip_oversize = false;

    app.add_option("--group", group, "sl2 or sl3")->check(CLI::IsMember({"sl2", "sl3"}));
    app.add_option("--p", p_text, "prime(s): 3, 2,3,5 or 2..5");
    app.add_option("--q", q, "residue field order for closed forms (default p)");
    app.add_option("--r", r_text, "depth r (list allowed)");
    app.add_option("--s", s_text, "SL3 depth s (default r)");
    app.add_option("--t", t_text, "SL3 depth t (default r)");
    app.add_option("--a", a, "SL2: the integer a; SL3: alpha");
    app.add_option("--b", b, "SL3: beta (gamma = 1/(alpha beta))");
    app.add_option("--a-residue", a_residue, "SL2: use a = this integer (a unit mod p)");
    app.add_option("--chi", chi_text, "character multipliers, e.g. 1,2 or 1,1,2, or 'all'");
    app.add_option("--mode", mode, "closed, oracle or compare")->check(CLI::IsMember({"closed", "oracle", "compare"}));
    app.add_option("--precision", precision, "p-adic precision N (default derived)");
    app.add_option("--bound", bound, "SL2 maximal length or SL3 bound (default derived)");
    app.add_option("--budget", budget, "oracle node budget");
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", out_path, "write the report to a file instead of stdout");
    app.add_option("--gauss-grid", gauss_radius, "compare closed and direct Gauss sums on the grid of radius R at each --p");
    app.add_flag("--skip-oversize", skip_oversize, "continue a sweep past a run that exceeds its budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open " << out_path << "\n";
            return 2;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    try {
        const auto ps = cast_list<ssc::i64>(parse_list(p_text));
        for (auto p : ps)
            if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");

        if (gauss_radius >= 0) {
            ssc::Json j = ssc::Json::array();
            bool clean = true;
            for (auto p : ps) {
                const auto g = ssc::gauss_grid(p, gauss_radius);
                clean = clean && g.gamma_mismatch == 0 && g.xi_mismatch == 0;
                j.push_back(ssc::to_json(g));
            }
            out << ssc::Json{{"gauss_grid", j}}.dump(2) << "\n";
            return clean ? 0 : 1;
        }

        ssc::RunConfig base;
        base.group = group == "sl2" ? ssc::Group::SL2 : ssc::Group::SL3;
        base.q = q;
        base.a = a;
        base.b = b;
        if (a_residue != 0) base.a = a_residue;
        base.mode = mode == "closed" ? ssc::Mode::Closed : (mode == "oracle" ? ssc::Mode::Oracle : ssc::Mode::Compare);
        base.precision = precision;
        base.bound = bound;
        base.budget = budget;

        ssc::SweepRanges ranges;
        ranges.ps = ps;
        ranges.rs = cast_list<int>(parse_list(r_text));
        ranges.ss = s_text.empty() ? ranges.rs : cast_list<int>(parse_list(s_text));
        ranges.ts = t_text.empty() ? ranges.rs : cast_list<int>(parse_list(t_text));
        if (base.a) {
            if (ps.size() != 1) throw UsageError("--a needs a single prime");
            if (ranges.rs.empty()) ranges.rs = {1};
            ranges.rs.resize(1); // derived from a
            ranges.ss = ranges.rs;
            ranges.ts = ranges.rs;
        }
        const std::size_t slots = base.group == ssc::Group::SL2 ? 2 : 3;
        if (chi_text == "all") {
            if (ps.size() != 1) throw UsageError("--chi all needs a single prime");
            std::vector<ssc::i64> cur(slots, 1);
            while (true) {
                ranges.chis.push_back(cur);
                std::size_t k = 0;
                while (k < slots && ++cur[k] == ps[0]) cur[k++] = 1;
                if (k == slots) break;
            }
        } else if (!chi_text.empty()) {
            base.chi = cast_list<ssc::i64>(parse_list(chi_text));
            if (base.chi.size() != slots) throw UsageError("--chi needs " + std::to_string(slots) + " multipliers");
            for (auto p : ps)
                for (auto c : base.chi)
                    if (c < 1 || c >= p) throw UsageError("multipliers must lie in [1, p-1]");
        }

        const auto reports = ssc::sweep(base, ranges, skip_oversize);
        const auto summary = ssc::summarize(reports);
        if (format == "csv") {
            out << ssc::to_csv(reports);
        } else if (format == "text") {
            for (const auto& r : reports) out << ssc::to_text(r);
            out << "runs " << summary.runs << ", match " << summary.matched << ", mismatch " << summary.mismatched << ", unattainable "
                << summary.unattainable << ", errors " << summary.errors << "\n";
        } else if (reports.size() == 1) {
            out << ssc::to_json(reports[0]).dump(2) << "\n";
        } else {
            ssc::Json j;
            ssc::Json arr = ssc::Json::array();
            for (const auto& r : reports) arr.push_back(ssc::to_json(r));
            j["reports"] = arr;
            j["summary"] = ssc::to_json(summary);
            out << j.dump(2) << "\n";
        }
        return ssc::exit_code(summary);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const ssc::Error& e) {
        std::cerr << e.qualified() << ": " << e.what() << "\n";
        if (e.code() == ssc::ErrorCode::InvalidArgument) return 2;
        return ssc::is_resource_error(e.code()) ? 3 : 1;
    }
}
