// ghp: command-line front end. Exit codes: 0 success, 1 assertion failure, 2 input error.
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghp/diagnostics.hpp"
#include "ghp/distances.hpp"
#include "ghp/error.hpp"
#include "ghp/ghp.hpp"
#include "ghp/io.hpp"
#include "ghp/suites.hpp"
#include "ghp/tree_coding.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kInput = 2;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ghp::InputError("not a number: \"" + item + "\"");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ghp::InputError("not a number: \"" + item + "\"");
        out.push_back(v);
    }
    return out;
}

ghp::Subset parse_indices(const std::string& csv) {
    ghp::Subset out;
    for (double v : parse_doubles(csv)) {
        if (v < 0 || v != std::floor(v)) throw ghp::InputError("not an index: " + ghp::format_double(v));
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

ghp::Measure measure_or_default(const ghp::Space& s, const std::string& csv) {
    ghp::Measure m = csv.empty() ? s.measure() : ghp::Measure{parse_doubles(csv)};
    ghp::check_measure(s, m);
    return m;
}

json pairs_json(const ghp::Correspondence& r) {
    json arr = json::array();
    for (const auto& [i, j] : r.pairs) arr.push_back({i, j});
    return arr;
}

json bound_json(const ghp::GhpBound& b) {
    return {{"lower", b.lower},
            {"upper", b.upper},
            {"certified", b.certified},
            {"gluing", b.wedge ? "wedge" : "correspondence"},
            {"witness", {{"pairs", pairs_json(b.witness)}, {"distortion", b.witness.distortion}}}};
}

void print_value(double v, bool as_json, const char* key) {
    if (as_json)
        std::cout << json{{key, v}}.dump() << "\n";
    else
        std::cout << ghp::format_double(v) << "\n";
}

struct Options {
    bool json = false;
    // dist
    std::string space_path, mu, nu, a, b;
    bool brute = false, witness = false;
    // ghp
    std::string left, right, csv_out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double exhaustive_budget = 2e4;
    std::size_t restarts = 64, iterations = 2000;
    // tree
    std::string f_path, g_path, out_path;
    // check
    std::vector<std::string> family;
    std::string eps_csv, r_csv;
    double max_defect = -1.0;
    // suite
    std::string suite_name;
    std::uint64_t suite_seed = 7;
};

ghp::SearchConfig search_from(const Options& o) {
    ghp::SearchConfig s;
    if (o.seed_given) s.seed = o.seed;
    s.exhaustive_budget = o.exhaustive_budget;
    s.restarts = o.restarts;
    s.iterations = o.iterations;
    s.certify_rel = ghp::load_tolerances().certify_rel;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distances between finite rooted measured metric spaces"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Emit JSON"); };

    // dist
    auto* dist = app.add_subcommand("dist", "Hausdorff and Prokhorov distances inside one space");
    dist->require_subcommand(1);
    auto* haus = dist->add_subcommand("hausdorff", "Hausdorff distance between two subsets");
    haus->add_option("space", o.space_path)->required();
    haus->add_option("--a", o.a, "Comma-separated indices")->required();
    haus->add_option("--b", o.b, "Comma-separated indices")->required();
    json_flag(haus);
    haus->callback([&] {
        action = [&] {
            const ghp::Space s = ghp::read_space(o.space_path);
            print_value(ghp::hausdorff(s, parse_indices(o.a), parse_indices(o.b)), o.json, "hausdorff");
            return kOk;
        };
    });
    auto* prok = dist->add_subcommand("prokhorov", "Prokhorov distance between two measures");
    prok->add_option("space", o.space_path)->required();
    prok->add_option("--mu", o.mu, "Comma-separated masses (default: the space's own)");
    prok->add_option("--nu", o.nu, "Comma-separated masses (default: the space's own)");
    prok->add_flag("--brute-force", o.brute, "Enumerate subsets instead of max-flow");
    prok->add_flag("--witness", o.witness, "Also print the binding subset as JSON");
    json_flag(prok);
    prok->callback([&] {
        action = [&] {
            const ghp::Space s = ghp::read_space(o.space_path);
            const ghp::Measure mu = measure_or_default(s, o.mu), nu = measure_or_default(s, o.nu);
            if (o.brute) {
                print_value(ghp::prokhorov_bruteforce(s, mu, nu), o.json, "prokhorov");
                return kOk;
            }
            const auto r = ghp::prokhorov_exact(s, mu, nu);
            if (!o.json && !o.witness) {
                print_value(r.value, false, "prokhorov");
                return kOk;
            }
            json out{{"prokhorov", r.value}};
            if (r.witness) {
                out["witness"] = *r.witness;
                out["direction"] = r.witness_direction == ghp::Direction::MuToNu ? "mu_to_nu" : "nu_to_mu";
            }
            if (o.json) {
                std::cout << out.dump() << "\n";
            } else {
                std::cout << ghp::format_double(r.value) << "\n";
                out.erase("prokhorov");
                std::cout << out.dump() << "\n";
            }
            return kOk;
        };
    });
    auto* gprok = dist->add_subcommand("gprokhorov", "Generalized Prokhorov distance over root balls");
    gprok->add_option("space", o.space_path)->required();
    gprok->add_option("--mu", o.mu);
    gprok->add_option("--nu", o.nu);
    json_flag(gprok);
    gprok->callback([&] {
        action = [&] {
            const ghp::Space s = ghp::read_space(o.space_path);
            print_value(ghp::generalized_prokhorov(s, measure_or_default(s, o.mu), measure_or_default(s, o.nu)), o.json,
                        "generalized_prokhorov");
            return kOk;
        };
    });

    // ghp
    auto* ghpcmd = app.add_subcommand("ghp", "GHP bounds between two spaces");
    ghpcmd->require_subcommand(1);
    auto search_opts = [&](CLI::App* sub) {
        sub->add_option("a", o.left)->required();
        sub->add_option("b", o.right)->required();
        sub->add_option("--seed", o.seed, "Local-search seed")->each([&](const std::string&) { o.seed_given = true; });
        sub->add_option("--exhaustive-budget", o.exhaustive_budget, "Largest enumeration of correspondences");
        sub->add_option("--restarts", o.restarts);
        sub->add_option("--iterations", o.iterations);
        json_flag(sub);
    };
    auto* compact = ghpcmd->add_subcommand("compact", "Certified interval for the compact GHP distance");
    search_opts(compact);
    compact->callback([&] {
        action = [&] {
            const auto b = ghp::ghp_compact(ghp::read_space(o.left), ghp::read_space(o.right), search_from(o));
            std::cout << bound_json(b).dump() << "\n";
            return kOk;
        };
    });
    auto* extended = ghpcmd->add_subcommand("extended", "Bounds on the extended GHP distance");
    search_opts(extended);
    extended->callback([&] {
        action = [&] {
            const auto e = ghp::ghp_extended(ghp::read_space(o.left), ghp::read_space(o.right), search_from(o));
            std::cout << json{{"lower", e.lower}, {"upper", e.upper}}.dump() << "\n";
            return kOk;
        };
    });
    auto* curve = ghpcmd->add_subcommand("curve", "Restriction curve r -> GHP bounds of the r-balls");
    search_opts(curve);
    curve->add_option("--csv", o.csv_out, "Write r_lo,r_hi,lower,upper rows here");
    curve->callback([&] {
        action = [&] {
            const auto c = ghp::restriction_curve(ghp::read_space(o.left), ghp::read_space(o.right), search_from(o));
            if (!o.csv_out.empty()) ghp::write_text(o.csv_out, ghp::curve_csv(c));
            if (o.json) {
                json arr = json::array();
                for (const auto& seg : c)
                    arr.push_back({{"r_lo", seg.r_lo},
                                   {"r_hi", std::isinf(seg.r_hi) ? json("inf") : json(seg.r_hi)},
                                   {"lower", seg.bound.lower},
                                   {"upper", seg.bound.upper}});
                std::cout << arr.dump() << "\n";
            } else if (o.csv_out.empty()) {
                std::cout << ghp::curve_csv(c);
            }
            return kOk;
        };
    });

    // tree
    auto* tree = app.add_subcommand("tree", "Trees coded by sampled excursions");
    tree->require_subcommand(1);
    auto* code = tree->add_subcommand("code", "Code a function into a measured tree");
    code->add_option("f", o.f_path)->required();
    code->add_option("-o,--output", o.out_path, "Write the tree here instead of stdout");
    json_flag(code);
    code->callback([&] {
        action = [&] {
            const auto t = ghp::code_tree(ghp::read_function(o.f_path), ghp::load_tolerances().quotient_rel);
            const std::string text = ghp::serialize_space(t.space);
            if (o.out_path.empty())
                std::cout << text;
            else
                ghp::write_text(o.out_path, text);
            return kOk;
        };
    });
    auto* cert = tree->add_subcommand("cert", "Stability certificate for two functions");
    cert->add_option("f", o.f_path)->required();
    cert->add_option("g", o.g_path)->required();
    json_flag(cert);
    cert->callback([&] {
        action = [&] {
            const auto r = ghp::prop33_certificate(ghp::read_function(o.f_path), ghp::read_function(o.g_path));
            std::cout << json{{"ub", r.ub}, {"rhs", r.rhs}, {"slack", r.slack}, {"ok", r.ok}, {"sup_diff", r.sup_diff},
                              {"step", r.step}, {"slope", r.slope}}
                             .dump()
                      << "\n";
            return r.ok ? kOk : kAssertion;
        };
    });

    // check
    auto* check = app.add_subcommand("check", "Structural diagnostics");
    check->require_subcommand(1);
    auto* fp = check->add_subcommand("four-point", "Four-point condition defect");
    fp->add_option("space", o.space_path)->required();
    fp->add_option("--max-defect", o.max_defect, "Exit 1 when the defect exceeds this");
    json_flag(fp);
    fp->callback([&] {
        action = [&] {
            const auto r = ghp::four_point(ghp::read_space(o.space_path));
            if (o.json)
                std::cout << json{{"defect", r.defect}, {"exhaustive", r.exhaustive}, {"samples", r.samples}}.dump() << "\n";
            else
                std::cout << ghp::format_double(r.defect) << "\n";
            return o.max_defect >= 0.0 && r.defect > o.max_defect ? kAssertion : kOk;
        };
    });
    auto* mp = check->add_subcommand("midpoint", "Mid-point (length space) defect");
    mp->add_option("space", o.space_path)->required();
    mp->add_option("--max-defect", o.max_defect, "Exit 1 when the defect exceeds this");
    json_flag(mp);
    mp->callback([&] {
        action = [&] {
            const double d = ghp::midpoint_defect(ghp::read_space(o.space_path));
            print_value(d, o.json, "defect");
            return o.max_defect >= 0.0 && d > o.max_defect ? kAssertion : kOk;
        };
    });
    auto* pc = check->add_subcommand("precompact", "Quantities bounded by the pre-compactness criteria");
    pc->add_option("--family", o.family, "Space files")->required();
    pc->add_option("--eps", o.eps_csv, "Comma-separated net radii")->required();
    pc->add_option("--r", o.r_csv, "Comma-separated ball radii")->required();
    json_flag(pc);
    pc->callback([&] {
        action = [&] {
            std::vector<ghp::Space> fam;
            for (const auto& p : o.family) fam.push_back(ghp::read_space(p));
            const auto rep = ghp::precompactness_report(fam, parse_doubles(o.eps_csv), parse_doubles(o.r_csv));
            json nets = json::array(), balls = json::array(), masses = json::array();
            for (std::size_t e = 0; e < rep.eps.size(); ++e) nets.push_back({{"eps", rep.eps[e]}, {"cardinal", rep.net_cardinals[e]}});
            for (std::size_t r = 0; r < rep.radii.size(); ++r) {
                masses.push_back({{"r", rep.radii[r]}, {"sup_mass", rep.sup_masses[r]}});
                for (std::size_t e = 0; e < rep.eps.size(); ++e)
                    balls.push_back({{"r", rep.radii[r]}, {"eps", rep.eps[e]}, {"cardinal", rep.ball_cardinals[r][e]}});
            }
            std::cout << json{{"family_size", rep.family_size},
                              {"sup_diameter", rep.sup_diameter},
                              {"sup_total_mass", rep.sup_total_mass},
                              {"net_cardinals", nets},
                              {"ball_net_cardinals", balls},
                              {"sup_masses", masses},
                              {"note", rep.note}}
                             .dump(2)
                      << "\n";
            return kOk;
        };
    });
    auto* sp = check->add_subcommand("space", "Validate a space file and list every violation");
    sp->add_option("space", o.space_path)->required();
    json_flag(sp);
    sp->callback([&] {
        action = [&] {
            const ghp::Space s = ghp::read_space(o.space_path);
            if (o.json)
                std::cout << json{{"valid", true}, {"points", s.size()}}.dump() << "\n";
            else
                std::cout << "valid: " << s.size() << " points\n";
            return kOk;
        };
    });

    // suite
    auto* suite = app.add_subcommand("suite", "Run an acceptance suite");
    std::string report_path;
    suite->add_option("name", o.suite_name)->required();
    suite->add_option("--seed", o.suite_seed);
    suite->add_option("--exhaustive-budget", o.exhaustive_budget);
    suite->add_option("--report", report_path, "Write the JSON report here");
    json_flag(suite);
    suite->callback([&] {
        action = [&] {
            ghp::RunConfig cfg;
            cfg.seed = o.suite_seed;
            cfg.exhaustive_budget = o.exhaustive_budget;
            cfg.tol = ghp::load_tolerances();
            const auto rep = ghp::run_suite(o.suite_name, cfg);
            if (!report_path.empty()) ghp::write_text(report_path, rep.to_json());
            if (o.json) {
                std::cout << rep.to_json();
            } else {
                for (const auto& c : rep.criteria)
                    std::cout << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << c.summary
                              << ", " << ghp::format_double(std::round(c.seconds * 100) / 100) << " s)\n";
            }
            return rep.pass() ? kOk : kAssertion;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    try {
        return action ? action() : kInput;
    } catch (const ghp::ValidationError& e) {
        if (o.json) {
            json v = json::array();
            for (const auto& entry : e.report().violations)
                v.push_back({{"kind", ghp::to_string(entry.kind)}, {"indices", entry.indices}, {"message", entry.message}});
            std::cout << json{{"valid", false}, {"violations", v}}.dump() << "\n";
        }
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ghp::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ghp::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
}
