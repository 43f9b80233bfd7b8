// Command-line front end: orbit classification, Hasse segments, LS path
// manipulation, crystal-graph exploration and the verification suites.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lscrystal/dot_export.hpp"
#include "lscrystal/json_io.hpp"
#include "lscrystal/verify.hpp"

namespace {

using namespace lscrystal;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::bad_cartan: return 2;
        case Errc::zero_weight:
        case Errc::not_star_orbit:
        case Errc::negative_orbit: return 3;
        case Errc::bad_order:
        case Errc::not_decreasing:
        case Errc::bad_sigmas:
        case Errc::chain_violation:
        case Errc::out_of_range:
        case Errc::shape_mismatch:
        case Errc::not_divisible:
        case Errc::form_violation:
        case Errc::not_applicable_form:
        case Errc::not_d2_shape: return 4;
        case Errc::internal_non_integral:
        case Errc::non_termination:
        case Errc::multiple_gaps: return 1;
        case Errc::bit_limit:
        case Errc::bad_config: return 5;
    }
    return 1;
}

struct WeightArgs {
    int a = 2, b = 3;
    std::string k = "1", l = "-1";

    CartanData cartan() const { return CartanData(a, b); }
    Weight lambda() const { return Weight{Integer(k), Integer(l)}; }
};

void add_weight_positionals(CLI::App* cmd, WeightArgs& args) {
    cmd->add_option("a", args.a, "Cartan entry a")->required();
    cmd->add_option("b", args.b, "Cartan entry b")->required();
    cmd->add_option("k", args.k, "coefficient of L1")->required();
    cmd->add_option("l", args.l, "coefficient of L2 (signed)")->required();
}

Json classification_report(const CartanData& cartan, const Weight& lambda) {
    Json j = classification_to_json(classify(cartan, lambda));
    j["connectedness"] = to_string(decide_connectedness(cartan, lambda));
    return j;
}

void print_classification_text(const Json& j) {
    std::cout << "orbit: " << j["kind"].get<std::string>() << "\n";
    std::cout << "witness_m: " << j["witness_m"] << "\n";
    if (!j["canonical"].is_null()) {
        std::cout << "canonical: [" << j["canonical"][0] << ", " << j["canonical"][1] << "] (form "
                  << j["form_tag"].get<std::string>()
                  << (j["negated"].get<bool>() ? ", for -lambda)" : ")") << "\n";
    }
    std::cout << "crystal graph: " << j["connectedness"].get<std::string>() << "\n";
}

LSPath load_path(const std::string& in) {
    Json j;
    if (in == "-") {
        j = Json::parse(std::cin);
    } else {
        std::ifstream f(in);
        if (!f) throw Error(Errc::bad_config, "cannot open " + in);
        j = Json::parse(f);
    }
    return path_from_json(j);
}

std::vector<std::pair<char, int>> parse_ops(const std::string& list) {
    std::vector<std::pair<char, int>> ops;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.size() != 2 || (tok[0] != 'e' && tok[0] != 'f') || (tok[1] != '1' && tok[1] != '2'))
            throw Error(Errc::bad_config, "operators look like e1, e2, f1, f2: got '" + tok + "'");
        ops.emplace_back(tok[0], tok[1] - '0');
    }
    if (ops.empty()) throw Error(Errc::bad_config, "empty operator list");
    return ops;
}

LSPath seed_from_spec(const CartanData& cartan, const Weight& lambda, const std::string& descriptor) {
    if (descriptor == "pi_lambda") return LSPath::straight(cartan, lambda);
    if (descriptor.rfind("pi_n:", 0) == 0) {
        const long n = std::stol(descriptor.substr(5));
        return pi_n(QSequence(cartan, lambda), n);
    }
    return load_path(descriptor);  // treated as a JSON file path
}

int run(int argc, char** argv) {
    CLI::App app{"Exact LS path crystals for rank-2 hyperbolic Cartan matrices"};
    app.require_subcommand(1);

    // classify
    WeightArgs cl_args;
    bool cl_json = false;
    auto* cmd_classify = app.add_subcommand("classify", "classify the Weyl orbit of a weight");
    add_weight_positionals(cmd_classify, cl_args);
    cmd_classify->add_flag("--json", cl_json, "emit JSON");

    // orbit
    WeightArgs orb_args;
    long orb_from = -3, orb_to = 3;
    bool orb_json = false, orb_dot = false;
    auto* cmd_orbit = app.add_subcommand("orbit", "table of x_m lambda with cover labels");
    add_weight_positionals(cmd_orbit, orb_args);
    cmd_orbit->add_option("--from", orb_from, "first orbit index");
    cmd_orbit->add_option("--to", orb_to, "last orbit index");
    cmd_orbit->add_flag("--json", orb_json, "emit JSON");
    cmd_orbit->add_flag("--dot", orb_dot, "emit the Hasse segment as DOT");

    // path
    auto* cmd_path = app.add_subcommand("path", "validate / apply / eval / weight on path JSON");
    cmd_path->require_subcommand(1);
    std::string path_in = "-", path_ops, path_t = "0";
    auto* p_validate = cmd_path->add_subcommand("validate", "canonicalize and check a path");
    auto* p_apply = cmd_path->add_subcommand("apply", "apply a comma list of root operators");
    auto* p_eval = cmd_path->add_subcommand("eval", "evaluate the path at t");
    auto* p_weight = cmd_path->add_subcommand("weight", "endpoint weight of the path");
    for (auto* sub : {p_validate, p_apply, p_eval, p_weight})
        sub->add_option("--in", path_in, "path JSON file, or - for stdin");
    p_apply->add_option("--ops", path_ops, "e.g. \"e2,f1,f1\"")->required();
    p_eval->add_option("--t", path_t, "evaluation point num/den")->required();

    // explore
    WeightArgs ex_args;
    std::string ex_seed = "pi_lambda", ex_dot_file;
    long ex_depth = 4;
    std::size_t ex_max_nodes = 200000;
    int ex_threads = 1;
    bool ex_json = false;
    auto* cmd_explore = app.add_subcommand("explore", "BFS over the crystal graph from a seed");
    add_weight_positionals(cmd_explore, ex_args);
    cmd_explore->add_option("--seed", ex_seed, "pi_lambda | pi_n:N | FILE.json");
    cmd_explore->add_option("--depth", ex_depth, "BFS depth limit");
    cmd_explore->add_option("--max-nodes", ex_max_nodes, "node budget");
    cmd_explore->add_option("--threads", ex_threads, "worker threads");
    cmd_explore->add_flag("--json", ex_json, "emit the report as JSON");
    cmd_explore->add_option("--dot", ex_dot_file, "write the explored subgraph as DOT");

    // verify
    std::string suite;
    WeightArgs vf_args;
    VerifyOptions vf_opt;
    auto* cmd_verify = app.add_subcommand("verify", "run a named verification suite");
    cmd_verify->add_option("suite", suite, "orbit | crystal | cmn | br | connect")->required();
    cmd_verify->add_option("--a", vf_args.a, "Cartan entry a")->required();
    cmd_verify->add_option("--b", vf_args.b, "Cartan entry b")->required();
    cmd_verify->add_option("--k", vf_args.k, "coefficient of L1")->required();
    cmd_verify->add_option("--l", vf_args.l, "coefficient of L2 (signed)")->required();
    cmd_verify->add_option("--n", vf_opt.n, "C(m, n) width");
    cmd_verify->add_option("--depth", vf_opt.depth, "BFS depth");
    cmd_verify->add_option("--threads", vf_opt.workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 5;
    }

    if (cmd_classify->parsed()) {
        const Json j = classification_report(cl_args.cartan(), cl_args.lambda());
        if (cl_json)
            std::cout << j.dump(2) << "\n";
        else
            print_classification_text(j);
        return 0;
    }

    if (cmd_orbit->parsed()) {
        const CartanData cartan = orb_args.cartan();
        PSequence seq(cartan, orb_args.lambda());
        if (orb_from > orb_to) std::swap(orb_from, orb_to);
        const bool star = classify(cartan, orb_args.lambda()).kind == OrbitKind::star;
        if (orb_dot && !star)
            throw Error(Errc::not_star_orbit, "Hasse output needs a star orbit");
        if (orb_dot) {
            std::cout << hasse_dot(seq, orb_from, orb_to);
            return 0;
        }
        Json rows = Json::array();
        for (long m = orb_from; m <= orb_to; ++m) {
            const Weight w = seq.xm_lambda(m);
            Json row;
            row["m"] = m;
            row["p_m"] = integer_to_json(seq.p(m));
            row["weight"] = Json::array({integer_to_json(w.c1), integer_to_json(w.c2)});
            if (star) row["cover_label"] = std::string("a") + std::to_string(down_label(m));
            rows.push_back(std::move(row));
        }
        if (orb_json) {
            std::cout << rows.dump(2) << "\n";
        } else {
            for (const auto& row : rows) {
                std::cout << "m=" << row["m"] << "  p_m=" << row["p_m"] << "  x_m*lambda=["
                          << row["weight"][0] << ", " << row["weight"][1] << "]";
                if (row.contains("cover_label"))
                    std::cout << "  cover " << row["cover_label"].get<std::string>();
                std::cout << "\n";
            }
        }
        return 0;
    }

    if (cmd_path->parsed()) {
        const LSPath path = load_path(path_in);
        if (p_validate->parsed()) {
            std::cout << path_to_json(path).dump(2) << "\n";
        } else if (p_weight->parsed()) {
            const Weight w = path.weight();
            std::cout << Json::array({integer_to_json(w.c1), integer_to_json(w.c2)}).dump() << "\n";
        } else if (p_eval->parsed()) {
            const RationalWeight w = path.evaluate(parse_fraction(path_t));
            std::cout << rational_weight_to_json(w).dump() << "\n";
        } else if (p_apply->parsed()) {
            std::optional<LSPath> cur = path;
            for (const auto& [op, i] : parse_ops(path_ops)) {
                cur = (op == 'e') ? cur->e(i) : cur->f(i);
                if (!cur) {
                    std::cout << "null\n";
                    break;
                }
                std::cout << path_to_json(*cur).dump() << "\n";
            }
        }
        return 0;
    }

    if (cmd_explore->parsed()) {
        const CartanData cartan = ex_args.cartan();
        const LSPath seed = seed_from_spec(cartan, ex_args.lambda(), ex_seed);
        ExploreLimits limits{ex_depth, ex_max_nodes, ex_threads};
        const ComponentReport rep = explore(seed, limits, {crystal_axioms_checker()}, {});
        if (!ex_dot_file.empty()) {
            std::ofstream f(ex_dot_file);
            if (!f) throw Error(Errc::bad_config, "cannot write " + ex_dot_file);
            f << crystal_dot(rep);
        }
        const Json j = report_to_json(rep);
        if (ex_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "visited " << rep.visited_count() << " nodes, " << rep.edge_count()
                      << " edges, depth " << rep.depth_reached
                      << (rep.frontier_exhausted ? " (frontier exhausted)" : " (limit reached)")
                      << "\n";
            for (const auto& [key, value] : rep.stats)
                std::cout << "  " << key << " = " << value << "\n";
        }
        return rep.clean() ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
        const CartanData cartan = vf_args.cartan();
        const Weight lambda = vf_args.lambda();
        SuiteResult result;
        if (suite == "orbit")
            result = verify_orbit(cartan, lambda, vf_opt);
        else if (suite == "crystal")
            result = verify_crystal(cartan, lambda, vf_opt);
        else if (suite == "cmn")
            result = verify_cmn(cartan, lambda, vf_opt);
        else if (suite == "br")
            result = verify_br(cartan, lambda, vf_opt);
        else if (suite == "connect")
            result = verify_connect(cartan, lambda, vf_opt);
        else
            throw Error(Errc::bad_config, "unknown suite '" + suite + "'");
        for (const auto& line : result.lines) std::cout << "  " << line << "\n";
        for (const auto& f : result.failures) std::cout << "  FAIL " << f << "\n";
        std::cout << "suite " << result.name << ": " << (result.pass() ? "pass" : "FAIL") << "\n";
        return result.pass() ? 0 : 1;
    }

    return 5;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
